//! Independent oracles shared by the integration tests. Nothing here calls the
//! library routine it is meant to check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use jacobi_core::diagram::{Diagram, Label};
use jacobi_core::element::Element;
use jacobi_core::enumerate::{enumerate, EnumOptions};
use jacobi_core::symplectic::{BasisVector, Kind};
use jacobi_core::{Caps, Q};
use num_bigint::BigInt;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn labels(genus: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for i in 1..=genus as u8 {
        out.push(Label::Basis(BasisVector::alpha(i)));
    }
    for i in 1..=genus as u8 {
        out.push(Label::Basis(BasisVector::beta(i)));
    }
    out
}

/// `ω(α_i, β_j) = δ_ij`, written out from the definition.
pub fn omega(x: Label, y: Label) -> i64 {
    match (x, y) {
        (Label::Basis(u), Label::Basis(v)) if u.index == v.index => match (u.kind, v.kind) {
            (Kind::Alpha, Kind::Beta) => 1,
            (Kind::Beta, Kind::Alpha) => -1,
            _ => 0,
        },
        _ => 0,
    }
}

pub fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Hook-content formula for `dim S_λ(C^n)`.
pub fn hook_content(lambda: &[u32], n: i64) -> BigInt {
    let conj: Vec<u32> = (0..lambda.first().copied().unwrap_or(0)).map(|j| lambda.iter().filter(|&&l| l > j).count() as u32).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row as usize {
            num *= BigInt::from(n + j as i64 - i as i64);
            let hook = (row as usize - j) + (conj[j] as usize - i) - 1;
            den *= BigInt::from(hook);
        }
    }
    num / den
}

/// Weyl dimension formula for `sp_2g` with highest weight `Σ λ_i L_i`.
pub fn weyl_sp(lambda_l: &[i64]) -> Q {
    let g = lambda_l.len();
    let rho: Vec<i64> = (0..g).map(|i| (g - i) as i64).collect();
    let l: Vec<i64> = (0..g).map(|i| lambda_l[i] + rho[i]).collect();
    let mut r = Q::one();
    for i in 0..g {
        r *= Q::new(l[i].into(), rho[i].into());
        for j in i + 1..g {
            r *= Q::new(((l[i] - l[j]) * (l[i] + l[j])).into(), ((rho[i] - rho[j]) * (rho[i] + rho[j])).into());
        }
    }
    r
}

/// Fundamental-weight coordinates to `L`-coordinates.
pub fn fundamentals_to_l(a: &[u32]) -> Vec<i64> {
    (0..a.len()).map(|i| a[i..].iter().map(|&x| x as i64).sum()).collect()
}

type Poly = BTreeMap<Vec<u32>, i64>;

/// Schur polynomial in `n` variables as a sum over semistandard tableaux.
pub fn schur_poly(shape: &[u32], n: usize) -> Poly {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j))).collect();
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = Poly::new();
    fn rec(k: usize, cells: &[(usize, usize)], n: usize, fill: &mut BTreeMap<(usize, usize), usize>, out: &mut Poly) {
        if k == cells.len() {
            let mut e = vec![0u32; n];
            for v in fill.values() {
                e[*v] += 1;
            }
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { fill[&(i, j - 1)] } else { 0 };
        let lo_col = if i > 0 { fill[&(i - 1, j)] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            fill.insert((i, j), v);
            rec(k + 1, cells, n, fill, out);
            fill.remove(&(i, j));
        }
    }
    rec(0, &cells, n, &mut fill, &mut out);
    out
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Expands a symmetric polynomial in Schur polynomials by peeling off the
/// lexicographically largest monomial.
pub fn schur_expand(mut p: Poly, n: usize) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    while let Some((e, c)) = p.iter().next_back().map(|(e, c)| (e.clone(), *c)) {
        let shape: Vec<u32> = e.iter().copied().filter(|&x| x > 0).collect();
        for (m, k) in schur_poly(&shape, n) {
            *p.entry(m).or_insert(0) -= c * k;
        }
        p.retain(|_, c| *c != 0);
        out.insert(shape, c);
    }
    out
}

pub fn connected(genus: usize, degree: usize) -> Vec<Diagram> {
    enumerate(genus, degree, EnumOptions::CONNECTED, &Caps::default()).unwrap()
}

pub fn all_diagrams(genus: usize, degree: usize) -> Vec<Diagram> {
    enumerate(genus, degree, EnumOptions::ALL, &Caps::default()).unwrap()
}

pub fn random_combination(pool: &[Diagram], terms: usize, rng: &mut StdRng) -> Element {
    let mut x = Element::zero();
    for _ in 0..terms {
        let d = &pool[rng.gen_range(0..pool.len())];
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            x.add_diagram(d, Q::from_integer(c.into()));
        }
    }
    x
}

/// The same diagram with two ports of one vertex exchanged.
pub fn flip_vertex(d: &Diagram, v: usize) -> Diagram {
    let n = d.num_ports();
    let sigma = |p: usize| {
        if p == 3 * v {
            3 * v + 1
        } else if p == 3 * v + 1 {
            3 * v
        } else {
            p
        }
    };
    let mut partner = vec![0u16; n];
    for p in 0..n {
        partner[sigma(p)] = sigma(d.partner_of(p)) as u16;
    }
    Diagram::from_parts(partner, d.legs().to_vec(), d.is_ordered()).unwrap()
}

/// Coefficient of θ, the only leg-free connected diagram of degree 2.
pub fn theta_coefficient(x: &Element) -> Q {
    x.coefficient(&Diagram::theta())
}
