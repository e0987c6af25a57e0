//! The symplectic space `H_Q` with basis `(α_1..α_g, β_1..β_g)`, its form `ω`
//! and the infinitesimal action of `sp_2g` on basis labels.
//!
//! Coordinates follow the block convention `Ω = [[0, I], [-I, 0]]`: coordinate
//! `i` is `α_i` and coordinate `g + i` is `β_i` (both 1-based). Every generator
//! action is read off from its elementary-matrix expression, never entered by hand.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::{Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Alpha,
    Beta,
}

/// `α_i` or `β_i`, with a 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisVector {
    pub kind: Kind,
    pub index: u8,
}

impl BasisVector {
    pub const fn alpha(index: u8) -> Self {
        BasisVector { kind: Kind::Alpha, index }
    }

    pub const fn beta(index: u8) -> Self {
        BasisVector { kind: Kind::Beta, index }
    }

    pub fn check(&self, genus: usize) -> Result<()> {
        if self.index == 0 || self.index as usize > genus {
            return Err(Error::GenusRange { label: self.to_string(), genus });
        }
        Ok(())
    }

    /// 1-based coordinate in `(α_1..α_g, β_1..β_g)`.
    pub fn coordinate(&self, genus: usize) -> usize {
        match self.kind {
            Kind::Alpha => self.index as usize,
            Kind::Beta => genus + self.index as usize,
        }
    }

    pub fn from_coordinate(coord: usize, genus: usize) -> Self {
        debug_assert!(coord >= 1 && coord <= 2 * genus);
        if coord <= genus {
            BasisVector::alpha(coord as u8)
        } else {
            BasisVector::beta((coord - genus) as u8)
        }
    }

    /// The `h`-weight: `α_i ↦ +L_i`, `β_i ↦ −L_i`.
    pub fn weight(&self, genus: usize) -> Vec<i32> {
        let mut w = vec![0; genus];
        if let Some(slot) = w.get_mut(self.index as usize - 1) {
            *slot = match self.kind {
                Kind::Alpha => 1,
                Kind::Beta => -1,
            };
        }
        w
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Alpha => write!(f, "a{}", self.index),
            Kind::Beta => write!(f, "b{}", self.index),
        }
    }
}

/// `α_1, …, α_g, β_1, …, β_g`.
pub fn basis(genus: usize) -> Vec<BasisVector> {
    (1..=2 * genus).map(|c| BasisVector::from_coordinate(c, genus)).collect()
}

/// `ω` on basis vectors; does not depend on the genus.
pub fn omega_basis(u: BasisVector, v: BasisVector) -> i32 {
    if u.index != v.index {
        return 0;
    }
    match (u.kind, v.kind) {
        (Kind::Alpha, Kind::Beta) => 1,
        (Kind::Beta, Kind::Alpha) => -1,
        _ => 0,
    }
}

/// A finitely supported vector of `H_Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HVector(BTreeMap<BasisVector, Q>);

impl HVector {
    pub fn zero() -> Self {
        HVector(BTreeMap::new())
    }

    pub fn basis(v: BasisVector) -> Self {
        HVector::term(v, Q::one())
    }

    pub fn term(v: BasisVector, c: Q) -> Self {
        let mut h = HVector::zero();
        h.add_term(v, c);
        h
    }

    pub fn add_term(&mut self, v: BasisVector, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(v).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&v);
        }
    }

    pub fn add(&self, other: &HVector) -> HVector {
        let mut out = self.clone();
        for (v, c) in &other.0 {
            out.add_term(*v, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> HVector {
        let mut out = HVector::zero();
        for (v, x) in &self.0 {
            out.add_term(*v, x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisVector, &Q)> {
        self.0.iter()
    }

    pub fn check(&self, genus: usize) -> Result<()> {
        self.0.keys().try_for_each(|v| v.check(genus))
    }
}

impl From<BasisVector> for HVector {
    fn from(v: BasisVector) -> Self {
        HVector::basis(v)
    }
}

/// `ω(u, v)`, bilinear and antisymmetric, `ω(α_i, β_j) = δ_ij`.
pub fn omega(u: &HVector, v: &HVector, genus: usize) -> Result<Q> {
    u.check(genus)?;
    v.check(genus)?;
    let mut total = Q::zero();
    for (x, cx) in u.iter() {
        for (y, cy) in v.iter() {
            let w = omega_basis(*x, *y);
            if w != 0 {
                total += cx * cy * Q::from_integer(w.into());
            }
        }
    }
    Ok(total)
}

/// The bivector `Σ_i α_i ∧ β_i` as the list of pairs `(α_i, β_i)`.
pub fn omega_bivector(genus: usize) -> Vec<(BasisVector, BasisVector)> {
    (1..=genus as u8).map(|i| (BasisVector::alpha(i), BasisVector::beta(i))).collect()
}

/// Root vectors and Cartan elements of `sp_2g`, indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpGenerator {
    /// `E_{i,j} − E_{g+j,g+i}`, `i ≠ j`.
    X(u8, u8),
    /// `E_{i,g+j} + E_{j,g+i}`, `i ≠ j`.
    Y(u8, u8),
    /// `E_{g+i,j} + E_{g+j,i}`, `i ≠ j`.
    Z(u8, u8),
    /// `E_{i,g+i}`.
    U(u8),
    /// `E_{g+i,i}`.
    V(u8),
    /// `E_{i,i} − E_{g+i,g+i}`.
    H(u8),
}

impl SpGenerator {
    pub fn check(&self, genus: usize) -> Result<()> {
        let ok = |i: u8| i >= 1 && i as usize <= genus;
        let valid = match *self {
            SpGenerator::X(i, j) | SpGenerator::Y(i, j) | SpGenerator::Z(i, j) => {
                ok(i) && ok(j) && i != j
            }
            SpGenerator::U(i) | SpGenerator::V(i) | SpGenerator::H(i) => ok(i),
        };
        if valid {
            Ok(())
        } else {
            Err(Error::GenusRange { label: format!("{self:?}"), genus })
        }
    }

    /// Nonzero entries `(row, col, value)` of the matrix, 1-based coordinates.
    pub fn matrix_entries(&self, genus: usize) -> Result<Vec<(usize, usize, i32)>> {
        self.check(genus)?;
        let g = genus;
        Ok(match *self {
            SpGenerator::X(i, j) => {
                let (i, j) = (i as usize, j as usize);
                vec![(i, j, 1), (g + j, g + i, -1)]
            }
            SpGenerator::Y(i, j) => {
                let (i, j) = (i as usize, j as usize);
                vec![(i, g + j, 1), (j, g + i, 1)]
            }
            SpGenerator::Z(i, j) => {
                let (i, j) = (i as usize, j as usize);
                vec![(g + i, j, 1), (g + j, i, 1)]
            }
            SpGenerator::U(i) => vec![(i as usize, g + i as usize, 1)],
            SpGenerator::V(i) => vec![(g + i as usize, i as usize, 1)],
            SpGenerator::H(i) => vec![(i as usize, i as usize, 1), (g + i as usize, g + i as usize, -1)],
        })
    }

    /// Image of a basis vector: `M e_c = Σ_r M[r][c] e_r`.
    pub fn act_basis(&self, v: BasisVector, genus: usize) -> Result<Vec<(BasisVector, i32)>> {
        v.check(genus)?;
        let c = v.coordinate(genus);
        Ok(self
            .matrix_entries(genus)?
            .into_iter()
            .filter(|&(_, col, _)| col == c)
            .map(|(row, _, val)| (BasisVector::from_coordinate(row, genus), val))
            .collect())
    }

    /// Every root vector and Cartan element.
    pub fn all(genus: usize) -> Vec<SpGenerator> {
        let mut out = Self::roots(genus);
        out.extend((1..=genus as u8).map(SpGenerator::H));
        out
    }

    /// Root vectors only.
    pub fn roots(genus: usize) -> Vec<SpGenerator> {
        let n = genus as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    out.push(SpGenerator::X(i, j));
                }
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(SpGenerator::Y(i, j));
                out.push(SpGenerator::Z(i, j));
            }
        }
        for i in 1..=n {
            out.push(SpGenerator::U(i));
            out.push(SpGenerator::V(i));
        }
        out
    }

    /// Positive root vectors for `R⁺ = {L_i + L_j | i ≤ j} ∪ {L_i − L_j | i < j}`.
    pub fn raising(genus: usize) -> Vec<SpGenerator> {
        let n = genus as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(SpGenerator::X(i, j));
                out.push(SpGenerator::Y(i, j));
            }
            out.push(SpGenerator::U(i));
        }
        out
    }
}

/// `gen · v` for the defining representation.
pub fn sp_act(gen: SpGenerator, v: &HVector, genus: usize) -> Result<HVector> {
    let mut out = HVector::zero();
    for (b, c) in v.iter() {
        for (image, val) in gen.act_basis(*b, genus)? {
            out.add_term(image, c * Q::from_integer(val.into()));
        }
    }
    Ok(out)
}

pub fn weight_of_label(v: BasisVector, genus: usize) -> Vec<i32> {
    v.weight(genus)
}
