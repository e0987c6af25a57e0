//! Partitions, Littlewood–Richardson coefficients, the branching
//! `GL_2g ↓ Sp_2g` and dimension formulas.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result, Q};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// Every part occurs an even number of times.
    pub fn has_even_multiplicities(&self) -> bool {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts.values().all(|c| c % 2 == 0)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(outer: &Partition, i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == outer.len() {
                out.push(Partition::new(cur.clone()));
                return;
            }
            for p in 0..=outer.part(i).min(max) {
                cur.push(p);
                rec(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, u32::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `Γ_{a_1 ω_1 + … + a_g ω_g}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepLabel(pub Vec<u32>);

impl IrrepLabel {
    /// The label of the highest weight `Σ μ_i L_i`, with `ℓ(μ) ≤ g`.
    pub fn from_partition(mu: &Partition, genus: usize) -> IrrepLabel {
        IrrepLabel((0..genus).map(|k| mu.part(k) - mu.part(k + 1)).collect())
    }

    pub fn to_partition(&self) -> Partition {
        let g = self.0.len();
        Partition::new((0..g).map(|k| self.0[k..].iter().sum()).collect())
    }

    pub fn trivial(genus: usize) -> Self {
        IrrepLabel(vec![0; genus])
    }

    /// `Σ_k a_k ω_k`, built from `(k, a_k)` pairs.
    pub fn from_fundamentals(genus: usize, terms: &[(usize, u32)]) -> Self {
        let mut a = vec![0; genus];
        for &(k, m) in terms {
            a[k - 1] += m;
        }
        IrrepLabel(a)
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(k, &a)| if a == 1 { format!("w{}", k + 1) } else { format!("{a}w{}", k + 1) })
            .collect();
        if terms.is_empty() {
            write!(f, "G[0]")
        } else {
            write!(f, "G[{}]", terms.join("+"))
        }
    }
}

/// `c^λ_{μν}` by counting Littlewood–Richardson fillings of `λ/μ` with content `ν`.
pub fn lr_coefficient(mu: &Partition, nu: &Partition, lambda: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    // cells of λ/μ in reading order: rows top to bottom, each right to left
    let mut cells = Vec::new();
    for r in 0..lambda.len() {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let rows = lambda.len();
    let width = lambda.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; rows];
    let mut counts = vec![0u32; nu.len() + 1];
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
        mu: &Partition,
        lambda: &Partition,
        nu: &Partition,
    ) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let mut total = 0;
        for v in 1..=nu.len() as u32 {
            if counts[v as usize] >= nu.part(v as usize - 1) {
                continue;
            }
            // lattice condition on the reverse reading word
            if v > 1 && counts[v as usize] + 1 > counts[v as usize - 1] {
                continue;
            }
            // row weakly increasing: right neighbor already filled
            if (c as u32 + 1) < lambda.part(r) && grid[r][c + 1] < v {
                continue;
            }
            // column strictly increasing: the cell above is filled or belongs to μ
            if r > 0 && (c as u32) >= mu.part(r - 1) && grid[r - 1][c] >= v {
                continue;
            }
            grid[r][c] = v;
            counts[v as usize] += 1;
            total += rec(i + 1, cells, grid, counts, mu, lambda, nu);
            counts[v as usize] -= 1;
            grid[r][c] = 0;
        }
        total
    }
    rec(0, &cells, &mut grid, &mut counts, mu, lambda, nu)
}

/// King's modification of a formal character `[μ]` with too many rows for
/// `Sp_2g`: returns `(sign, μ')` or `None` when it vanishes.
pub fn modify(mu: &Partition, genus: usize) -> Option<(i64, Partition)> {
    let mut mu = mu.clone();
    let mut sign = 1i64;
    while mu.len() > genus {
        let p = mu.len();
        let h = 2 * p - 2 * genus - 2;
        if h == 0 {
            return None;
        }
        let (rest, columns) = remove_rim_strip(&mu, h)?;
        if columns % 2 == 1 {
            sign = -sign;
        }
        mu = rest;
    }
    Some((sign, mu))
}

/// Removes the rim strip of `h` cells starting at the foot of the first
/// column; fails if the remainder is not a partition.
fn remove_rim_strip(mu: &Partition, h: usize) -> Option<(Partition, usize)> {
    let mut parts: Vec<u32> = mu.parts().to_vec();
    let mut r = parts.len() - 1;
    let mut c = 0u32;
    let mut cols = std::collections::BTreeSet::new();
    let mut removed = Vec::new();
    for step in 0..h {
        removed.push((r, c));
        cols.insert(c);
        if step + 1 == h {
            break;
        }
        // walk the rim: right if the cell to the right is on the rim, else up
        let below_right_exists = r + 1 < parts.len() && parts[r + 1] > c + 1;
        if c + 1 < parts[r] && !below_right_exists {
            c += 1;
        } else {
            if r == 0 {
                return None;
            }
            r -= 1;
        }
    }
    let mut per_row: BTreeMap<usize, u32> = BTreeMap::new();
    for (r, _) in &removed {
        *per_row.entry(*r).or_insert(0) += 1;
    }
    for (r, k) in per_row {
        parts[r] = parts[r].checked_sub(k)?;
    }
    let ok = parts.windows(2).all(|w| w[0] >= w[1]);
    // removed cells must sit at row ends
    let ends_ok = removed.iter().all(|&(r, c)| c >= parts[r]);
    if !ok || !ends_ok {
        return None;
    }
    Some((Partition::new(parts), cols.len()))
}

/// Multiplicities of `Γ_μ` in `S_λ C^{2g}`, by Littlewood's formula with King's
/// modification when `ℓ(λ) > g`. Multiplicities may cancel to zero.
pub fn littlewood_restriction(lambda: &Partition, genus: usize) -> Result<BTreeMap<IrrepLabel, i64>> {
    if lambda.len() > 2 * genus {
        return Ok(BTreeMap::new());
    }
    let mut out: BTreeMap<IrrepLabel, i64> = BTreeMap::new();
    for eta in lambda.subpartitions() {
        if !eta.has_even_multiplicities() {
            continue;
        }
        for mu in lambda.subpartitions() {
            if mu.size() + eta.size() != lambda.size() {
                continue;
            }
            let c = lr_coefficient(&eta, &mu, lambda) as i64;
            if c == 0 {
                continue;
            }
            if let Some((s, m)) = modify(&mu, genus) {
                *out.entry(IrrepLabel::from_partition(&m, genus)).or_insert(0) += s * c;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    if out.values().any(|&v| v < 0) {
        return Err(Error::Unsupported(format!("negative multiplicity restricting {lambda} to Sp({})", 2 * genus)));
    }
    Ok(out)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Weyl dimension formula for `Sp_2g`, `ρ = (g, …, 1)`.
pub fn sp_dim(label: &IrrepLabel) -> BigInt {
    let g = label.0.len();
    let lam = label.to_partition();
    let m: Vec<i64> = (0..g).map(|i| lam.part(i) as i64 + (g - i) as i64).collect();
    let rho: Vec<i64> = (0..g).map(|i| (g - i) as i64).collect();
    let mut num = Q::one();
    for i in 0..g {
        num *= Q::new(big(m[i]), big(rho[i]));
        for j in i + 1..g {
            num *= Q::new(big(m[i] * m[i] - m[j] * m[j]), big(rho[i] * rho[i] - rho[j] * rho[j]));
        }
    }
    debug_assert!(num.is_integer());
    num.to_integer()
}

/// Hook-content formula for `dim S_λ C^n`.
pub fn schur_dim(lambda: &Partition, n: usize) -> BigInt {
    let mut r = Q::one();
    let conj = conjugate(lambda);
    for i in 0..lambda.len() {
        for j in 0..lambda.part(i) as usize {
            let content = j as i64 - i as i64;
            let hook = (lambda.part(i) as i64 - j as i64) + (conj.part(j) as i64 - i as i64) - 1;
            r *= Q::new(big(n as i64 + content), big(hook));
        }
    }
    if r.is_negative() {
        return BigInt::zero();
    }
    r.to_integer()
}

pub fn conjugate(lambda: &Partition) -> Partition {
    let w = lambda.part(0);
    Partition::new((0..w).map(|j| lambda.parts().iter().filter(|&&p| p > j).count() as u32).collect())
}

/// Number of semistandard tableaux of shape `shape` and content `content`.
pub fn kostka(shape: &Partition, content: &[u32]) -> u64 {
    if shape.size() != content.iter().sum::<u32>() {
        return 0;
    }
    // fill values 1, 2, … as successive horizontal strips
    fn rec(shape: &Partition, content: &[u32], k: usize, cur: Partition) -> u64 {
        if k == content.len() {
            return (cur == *shape) as u64;
        }
        let mut total = 0;
        for next in horizontal_strips(&cur, content[k], shape) {
            total += rec(shape, content, k + 1, next);
        }
        total
    }
    rec(shape, content, 0, Partition::empty())
}

/// Partitions `ν ⊂ bound` with `ν / μ` a horizontal strip of `n` cells.
fn horizontal_strips(mu: &Partition, n: u32, bound: &Partition) -> Vec<Partition> {
    fn rec(mu: &Partition, bound: &Partition, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == bound.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()));
            }
            return;
        }
        let lo = mu.part(i);
        let hi = if i == 0 { bound.part(0) } else { bound.part(i).min(mu.part(i - 1)) };
        for v in lo..=hi.max(lo) {
            let add = v - lo;
            if add > left || v > bound.part(i) {
                break;
            }
            cur.push(v);
            rec(mu, bound, i + 1, left - add, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(mu, bound, 0, n, &mut Vec::new(), &mut out);
    out
}

/// `GL_n` decomposition of `Λ²(Λ³ C^n)` from its weight multiplicities,
/// peeling Schur characters off the dominant weights.
pub fn gl_decompose_l2l3(n: usize) -> BTreeMap<Partition, u64> {
    let subsets: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == 3).collect();
    let mut dominant: BTreeMap<Partition, i64> = BTreeMap::new();
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            let w: Vec<u32> = (0..n).map(|k| ((subsets[i] >> k) & 1) as u32 + ((subsets[j] >> k) & 1) as u32).collect();
            if w.windows(2).all(|p| p[0] >= p[1]) {
                *dominant.entry(Partition::new(w)).or_insert(0) += 1;
            }
        }
    }
    // partitions of 6 with ≤ n parts, largest in dominance first
    let shapes: Vec<Partition> = Partition::all_of(6).into_iter().filter(|p| p.len() <= n).collect();
    let mut out = BTreeMap::new();
    let mut remaining = dominant;
    for lam in &shapes {
        let m = remaining.get(lam).copied().unwrap_or(0);
        if m == 0 {
            continue;
        }
        out.insert(lam.clone(), m as u64);
        for mu in &shapes {
            let k = kostka(lam, mu.parts()) as i64;
            if k > 0 {
                *remaining.entry(mu.clone()).or_insert(0) -= m * k;
            }
        }
    }
    out
}

/// Expected `Λ²Λ³C^{2g}` decomposition, as stated for `g = 3, 4, 5` and `g ≥ 6`.
pub fn expected_l2l3(genus: usize) -> BTreeMap<IrrepLabel, i64> {
    let l = |terms: &[(usize, u32)]| IrrepLabel::from_fundamentals(genus, terms);
    let mut m = BTreeMap::new();
    m.insert(IrrepLabel::trivial(genus), 2);
    m.insert(l(&[(2, 2)]), 1);
    m.insert(l(&[(1, 1), (3, 1)]), 1);
    match genus {
        3 => {
            m.insert(l(&[(2, 1)]), 2);
        }
        4 => {
            m.insert(l(&[(2, 1)]), 3);
            m.insert(l(&[(4, 1)]), 1);
            m.insert(l(&[(2, 1), (4, 1)]), 1);
        }
        _ => {
            m.insert(l(&[(2, 1)]), 3);
            m.insert(l(&[(4, 1)]), 2);
            m.insert(l(&[(2, 1), (4, 1)]), 1);
            if genus >= 6 {
                m.insert(l(&[(6, 1)]), 1);
            }
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct L2L3Report {
    pub genus: usize,
    pub gl_parts: BTreeMap<Partition, u64>,
    pub computed: BTreeMap<IrrepLabel, i64>,
    pub expected: BTreeMap<IrrepLabel, i64>,
    pub total_dim: BigInt,
    pub expected_dim: BigInt,
}

impl L2L3Report {
    pub fn passed(&self) -> bool {
        self.computed == self.expected && self.total_dim == self.expected_dim
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn verify_l2l3(genus: usize) -> Result<L2L3Report> {
    if !(3..=8).contains(&genus) {
        return Err(Error::Unsupported(format!("l2l3 check is for genus 3..=8, got {genus}")));
    }
    let gl_parts = gl_decompose_l2l3(2 * genus);
    let mut computed: BTreeMap<IrrepLabel, i64> = BTreeMap::new();
    for (lam, mult) in &gl_parts {
        for (label, k) in littlewood_restriction(lam, genus)? {
            *computed.entry(label).or_insert(0) += k * *mult as i64;
        }
    }
    let total_dim = computed.iter().map(|(l, m)| sp_dim(l) * BigInt::from(*m)).sum();
    let n3 = binomial(2 * genus as u64, 3).to_u64().unwrap();
    Ok(L2L3Report { genus, gl_parts, computed, expected: expected_l2l3(genus), total_dim, expected_dim: binomial(n3, 2) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn pieri_cases() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
    }

    #[test]
    fn dims() {
        assert_eq!(sp_dim(&IrrepLabel::trivial(3)), BigInt::from(1));
        assert_eq!(sp_dim(&IrrepLabel::from_fundamentals(3, &[(1, 1)])), BigInt::from(6));
        assert_eq!(sp_dim(&IrrepLabel::from_fundamentals(3, &[(2, 1)])), BigInt::from(14));
        assert_eq!(sp_dim(&IrrepLabel::from_fundamentals(3, &[(2, 2)])), BigInt::from(90));
        assert_eq!(sp_dim(&IrrepLabel::from_fundamentals(3, &[(1, 1), (3, 1)])), BigInt::from(70));
        assert_eq!(schur_dim(&p(&[2, 2]), 6), BigInt::from(105));
        assert_eq!(schur_dim(&p(&[1, 1, 1]), 6), BigInt::from(20));
    }

    #[test]
    fn modification_examples() {
        assert_eq!(modify(&p(&[1, 1, 1]), 1), Some((-1, p(&[1]))));
        assert_eq!(modify(&p(&[1, 1]), 1), None);
        assert_eq!(modify(&p(&[2, 2, 1, 1]), 1), Some((1, p(&[2]))));
        assert_eq!(modify(&p(&[2, 2, 1]), 1), None);
    }

    #[test]
    fn kostka_small() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[2, 2, 1, 1]), &[1, 1, 1, 1, 1, 1]), 9);
    }
}
