//! Exact sparse linear algebra over `Q`.
//!
//! Vectors are sorted `(key, coefficient)` lists. [`Echelon`] keeps rows keyed
//! by their largest key with leading coefficient 1; reduction sweeps keys from
//! the top down, so the residual of a vector is unique regardless of how far
//! the stored rows have been inter-reduced.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::element::Element;
use crate::{Diagram, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<K> {
    entries: Vec<(K, Q)>,
}

impl<K: Ord + Clone> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(k: K) -> Self {
        SparseVec { entries: vec![(k, Q::one())] }
    }

    /// Builds from arbitrary pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, Q)>) -> Self {
        let mut m: BTreeMap<K, Q> = BTreeMap::new();
        for (k, c) in pairs {
            *m.entry(k).or_insert_with(Q::zero) += c;
        }
        SparseVec { entries: m.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_map(m: BTreeMap<K, Q>) -> Self {
        SparseVec { entries: m.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(K, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(K, Q)> {
        self.entries
    }

    pub fn leading(&self) -> Option<&(K, Q)> {
        self.entries.last()
    }

    pub fn get(&self, k: &K) -> Q {
        match self.entries.binary_search_by(|(x, _)| x.cmp(k)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    /// `self + s · other`.
    pub fn axpy(&self, s: &Q, other: &Self) -> Self {
        if s.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), &b[j].1 * s));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1 * s;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&Q::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-Q::one(), other)
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> SparseVec<L> {
        SparseVec::from_pairs(self.entries.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Scales so the leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }
}

impl SparseVec<Diagram> {
    pub fn from_element(e: &Element) -> Self {
        SparseVec { entries: e.iter().map(|(d, c)| (d.clone(), c.clone())).collect() }
    }

    pub fn to_element(&self) -> Element {
        let mut e = Element::zero();
        for (d, c) in &self.entries {
            e.add_canonical(d.clone(), c.clone());
        }
        e
    }
}

/// Semi-echelon basis of a subspace, rows keyed by their leading key.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    pub fn row(&self, pivot: &K) -> Option<&SparseVec<K>> {
        self.rows.get(pivot)
    }

    /// Residual of `v` modulo the span: no key of it is a pivot.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut acc: BTreeMap<K, Q> = v.entries.iter().cloned().collect();
        let mut upper: Option<K> = None;
        loop {
            let next = match &upper {
                None => acc.keys().next_back().cloned(),
                Some(u) => acc.range(..u.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = acc.remove(&k).unwrap();
                for (rk, rc) in row.entries.iter().rev().skip(1) {
                    let e = acc.entry(rk.clone()).or_insert_with(Q::zero);
                    *e -= &c * rc;
                    if e.is_zero() {
                        acc.remove(rk);
                    }
                }
            }
            upper = Some(k);
        }
        SparseVec::from_map(acc)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns the new normalized row if independent.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<SparseVec<K>> {
        let r = self.reduce(v);
        if r.is_zero() {
            return None;
        }
        let r = r.normalized();
        let lead = r.leading().unwrap().0.clone();
        self.rows.insert(lead, r.clone());
        Some(r)
    }

    /// True if both spans coincide.
    pub fn same_span(&self, other: &Echelon<K>) -> bool {
        self.rank() == other.rank() && other.rows().all(|r| self.contains(r))
    }

    pub fn contains_span(&self, other: &Echelon<K>) -> bool {
        other.rows().all(|r| self.contains(r))
    }
}

/// Keys of the augmented system used for kernels: domain coordinates sort
/// below codomain coordinates, so a row led by a domain key has zero image.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Aug<K> {
    Dom(usize),
    Cod(K),
}

/// Kernel and image of a linear map given by its columns.
pub struct MapAnalysis<K> {
    pub image: Echelon<K>,
    /// Kernel vectors as coordinate combinations of the domain basis.
    pub kernel: Vec<SparseVec<usize>>,
}

impl<K: Ord + Clone> MapAnalysis<K> {
    pub fn rank(&self) -> usize {
        self.image.rank()
    }
}

pub fn analyze_map<K: Ord + Clone>(columns: &[SparseVec<K>]) -> MapAnalysis<K> {
    let mut ech: Echelon<Aug<K>> = Echelon::new();
    let mut image = Echelon::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut pairs: Vec<(Aug<K>, Q)> = vec![(Aug::Dom(j), Q::one())];
        pairs.extend(col.entries().iter().map(|(k, c)| (Aug::Cod(k.clone()), c.clone())));
        let v = SparseVec { entries: pairs };
        if let Some(row) = ech.insert(&v) {
            match &row.leading().unwrap().0 {
                Aug::Cod(_) => {
                    image.insert(col);
                }
                Aug::Dom(_) => kernel.push(SparseVec::from_pairs(row.entries().iter().map(
                    |(k, c)| match k {
                        Aug::Dom(i) => (*i, c.clone()),
                        Aug::Cod(_) => unreachable!("domain-led rows have no image part"),
                    },
                ))),
            }
        }
    }
    MapAnalysis { image, kernel }
}

/// Dense-free solve: finds `x` with `Σ x_j · columns[j] = target`, if any.
pub fn solve<K: Ord + Clone>(columns: &[SparseVec<K>], target: &SparseVec<K>) -> Option<Vec<Q>> {
    let mut ech: Echelon<Aug<K>> = Echelon::new();
    for (j, col) in columns.iter().enumerate() {
        let mut pairs: Vec<(Aug<K>, Q)> = vec![(Aug::Dom(j), Q::one())];
        pairs.extend(col.entries().iter().map(|(k, c)| (Aug::Cod(k.clone()), c.clone())));
        ech.insert(&SparseVec { entries: pairs });
    }
    let t = SparseVec { entries: target.entries().iter().map(|(k, c)| (Aug::Cod(k.clone()), c.clone())).collect() };
    let r = ech.reduce(&t);
    if r.entries().iter().any(|(k, _)| matches!(k, Aug::Cod(_))) {
        return None;
    }
    // target − Σ r_j col_j... the residual records −x in domain coordinates
    let mut x = vec![Q::zero(); columns.len()];
    for (k, c) in r.entries() {
        if let Aug::Dom(j) = k {
            x[*j] = -c.clone();
        }
    }
    Some(x)
}
