//! Weight systems of metrized Lie algebras with values in the symmetric
//! algebra `S(g ⊗ H_Q)[t]` carrying the Moyal–Weyl product for `κ ⊗ ω`.
//!
//! Each internal vertex contributes `f_{abc} = κ([e_a, e_b], e_c)`, each edge the
//! inverse form `K = κ⁻¹`, and a leg labeled `h` attached to slot `b` the
//! linear form `Σ_a K^{ba} x_{(a,h)}`. The result is multiplied by `t^{degree}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::diagram::{Diagram, Label};
use crate::element::Element;
use crate::parse::parse_rational;
use crate::symplectic::{omega_basis, BasisVector};
use crate::{Error, Result, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct MetrizedLie {
    pub dim: usize,
    /// `structure[i][j][k]` is the `e_k`-coordinate of `[e_i, e_j]`.
    pub structure: Vec<Vec<Vec<Q>>>,
    pub form: Vec<Vec<Q>>,
}

fn zeros3(n: usize) -> Vec<Vec<Vec<Q>>> {
    vec![vec![vec![Q::zero(); n]; n]; n]
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl MetrizedLie {
    /// `sl_2` with basis `(e, f, h)` and the trace form of the defining representation.
    pub fn sl2() -> Self {
        let n = 3;
        let mut c = zeros3(n);
        let (e, f, h) = (0, 1, 2);
        let two = Q::from_integer(2.into());
        c[h][e][e] = two.clone();
        c[e][h][e] = -two.clone();
        c[h][f][f] = -two.clone();
        c[f][h][f] = two.clone();
        c[e][f][h] = Q::one();
        c[f][e][h] = -Q::one();
        let mut form = vec![vec![Q::zero(); n]; n];
        form[h][h] = two;
        form[e][f] = Q::one();
        form[f][e] = Q::one();
        MetrizedLie { dim: n, structure: c, form }
    }

    /// Abelian Lie algebra of the given dimension with the identity form.
    pub fn abelian(dim: usize) -> Self {
        let mut form = vec![vec![Q::zero(); dim]; dim];
        for (i, row) in form.iter_mut().enumerate() {
            row[i] = Q::one();
        }
        MetrizedLie { dim, structure: zeros3(dim), form }
    }

    /// Reads `{dim, brackets: [[i, j, [[k, "p/q"], …]], …], form: [[…], …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let bad = |m: &str| Error::InvalidLie(m.to_string());
        let dim = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let scalar = |x: &serde_json::Value| -> Result<Q> {
            match x {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => {
                    n.as_i64().map(|i| Q::from_integer(i.into())).ok_or_else(|| bad("non-integer number"))
                }
                _ => Err(bad("scalar must be a number or \"p/q\"")),
            }
        };
        let mut c = zeros3(dim);
        for entry in v["brackets"].as_array().ok_or_else(|| bad("missing brackets"))? {
            let arr = entry.as_array().ok_or_else(|| bad("bracket entry must be an array"))?;
            let idx = |k: usize| -> Result<usize> {
                let i = arr.get(k).and_then(|x| x.as_u64()).ok_or_else(|| bad("bad index"))? as usize;
                if i >= dim {
                    return Err(bad("index out of range"));
                }
                Ok(i)
            };
            let (i, j) = (idx(0)?, idx(1)?);
            for term in arr.get(2).and_then(|x| x.as_array()).ok_or_else(|| bad("bad bracket terms"))? {
                let t = term.as_array().ok_or_else(|| bad("bad bracket term"))?;
                let k = t.first().and_then(|x| x.as_u64()).ok_or_else(|| bad("bad index"))? as usize;
                if k >= dim {
                    return Err(bad("index out of range"));
                }
                let val = scalar(t.get(1).ok_or_else(|| bad("missing coefficient"))?)?;
                c[i][j][k] += val.clone();
                if i != j {
                    c[j][i][k] -= val;
                }
            }
        }
        let rows = v["form"].as_array().ok_or_else(|| bad("missing form"))?;
        if rows.len() != dim {
            return Err(bad("form has the wrong size"));
        }
        let mut form = Vec::with_capacity(dim);
        for r in rows {
            let r = r.as_array().ok_or_else(|| bad("form row must be an array"))?;
            if r.len() != dim {
                return Err(bad("form has the wrong size"));
            }
            form.push(r.iter().map(scalar).collect::<Result<Vec<Q>>>()?);
        }
        let lie = MetrizedLie { dim, structure: c, form };
        lie.validate()?;
        Ok(lie)
    }

    fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &x[i] * &y[j] * &self.structure[i][j][k];
                }
            }
        }
        out
    }

    fn form_vec(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += &x[i] * &y[j] * &self.form[i][j];
            }
        }
        s
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        (0..self.dim).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
    }

    /// Checks antisymmetry, Jacobi, symmetry, invariance and nondegeneracy.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let fail = |m: String| Err(Error::InvalidLie(m));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.structure[i][j][k] != -self.structure[j][i][k].clone() {
                        return fail(format!("bracket not antisymmetric at ({i},{j})"));
                    }
                }
                if self.form[i][j] != self.form[j][i] {
                    return fail(format!("form not symmetric at ({i},{j})"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = (self.unit(a), self.unit(b), self.unit(c));
                    let j1 = self.bracket_vec(&x, &self.bracket_vec(&y, &z));
                    let j2 = self.bracket_vec(&y, &self.bracket_vec(&z, &x));
                    let j3 = self.bracket_vec(&z, &self.bracket_vec(&x, &y));
                    if (0..n).any(|k| !(&j1[k] + &j2[k] + &j3[k]).is_zero()) {
                        return fail(format!("Jacobi identity fails at ({a},{b},{c})"));
                    }
                    let lhs = self.form_vec(&self.bracket_vec(&x, &y), &z);
                    let rhs = self.form_vec(&x, &self.bracket_vec(&y, &z));
                    if lhs != rhs {
                        return fail(format!("form not invariant at ({a},{b},{c})"));
                    }
                }
            }
        }
        if invert(&self.form).is_none() {
            return fail("form is degenerate".into());
        }
        Ok(())
    }

    /// `f_{abc} = κ([e_a, e_b], e_c)`.
    pub fn vertex_tensor(&self) -> Vec<Vec<Vec<Q>>> {
        let n = self.dim;
        let mut f = zeros3(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut s = Q::zero();
                    for l in 0..n {
                        s += &self.structure[a][b][l] * &self.form[l][c];
                    }
                    f[a][b][c] = s;
                }
            }
        }
        f
    }

    /// The Casimir tensor `K = κ⁻¹`.
    pub fn casimir(&self) -> Vec<Vec<Q>> {
        invert(&self.form).expect("validated form is nondegenerate")
    }
}

/// Variable `x_{(a, h)}` for `e_a ⊗ h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub lie: u16,
    pub label: BasisVector,
}

pub type Monomial = Vec<(Var, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<Var, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        *m.entry(*v).or_insert(0) += e;
    }
    m.into_iter().collect()
}

/// `∂/∂v` of a monomial: `(exponent, remaining monomial)`.
fn mono_diff(m: &Monomial, v: Var) -> Option<(u32, Monomial)> {
    let i = m.iter().position(|(x, _)| *x == v)?;
    let e = m[i].1;
    let mut out = m.clone();
    if e == 1 {
        out.remove(i);
    } else {
        out[i].1 -= 1;
    }
    Some((e, out))
}

/// An element of `S(g ⊗ H_Q)[t]`: `(t-degree, monomial) ↦ coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyTensor {
    terms: BTreeMap<(u32, Monomial), Q>,
}

impl PolyTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(0, Vec::new(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.add_term(0, vec![(v, 1)], Q::one());
        p
    }

    pub fn add_term(&mut self, t: u32, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let key = (t, m);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, Monomial), &Q)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &PolyTensor) -> PolyTensor {
        let mut out = self.clone();
        for ((t, m), c) in &other.terms {
            out.add_term(*t, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> PolyTensor {
        let mut out = PolyTensor::zero();
        for ((t, m), c) in &self.terms {
            out.add_term(*t, m.clone(), c * s);
        }
        out
    }

    pub fn sub(&self, other: &PolyTensor) -> PolyTensor {
        self.add(&other.scale(&-Q::one()))
    }

    /// Commutative product.
    pub fn mul(&self, other: &PolyTensor) -> PolyTensor {
        let mut out = PolyTensor::zero();
        for ((t1, m1), c1) in &self.terms {
            for ((t2, m2), c2) in &other.terms {
                out.add_term(t1 + t2, mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn shift_t(&self, k: u32) -> PolyTensor {
        let mut out = PolyTensor::zero();
        for ((t, m), c) in &self.terms {
            out.add_term(t + k, m.clone(), c.clone());
        }
        out
    }

    /// Applies a derivation given on variables.
    pub fn derive(&self, d: impl Fn(Var) -> PolyTensor) -> PolyTensor {
        let mut out = PolyTensor::zero();
        for ((t, m), c) in &self.terms {
            for &(v, _) in m {
                let (e, rest) = mono_diff(m, v).unwrap();
                let mut base = PolyTensor::zero();
                base.add_term(*t, rest, c * Q::from_integer(e.into()));
                out = out.add(&base.mul(&d(v)));
            }
        }
        out
    }
}

/// The symplectic form `s = κ ⊗ ω` on variables.
pub fn form_on_vars(lie: &MetrizedLie, a: Var, b: Var) -> Q {
    let w = omega_basis(a.label, b.label);
    if w == 0 {
        return Q::zero();
    }
    &lie.form[a.lie as usize][b.lie as usize] * Q::from_integer(w.into())
}

/// Moyal–Weyl product `Σ_l (1 / (2^l l!)) s^{⊗l}(∂^l p, ∂^l q)`.
pub fn moyal_product(p: &PolyTensor, q: &PolyTensor, form: impl Fn(Var, Var) -> Q) -> PolyTensor {
    type Bi = BTreeMap<((u32, Monomial), (u32, Monomial)), Q>;
    let mut cur: Bi = BTreeMap::new();
    for (k1, c1) in &p.terms {
        for (k2, c2) in &q.terms {
            cur.insert((k1.clone(), k2.clone()), c1 * c2);
        }
    }
    let mut out = PolyTensor::zero();
    let mut l: u64 = 0;
    let mut factor = Q::one();
    while !cur.is_empty() {
        for (((t1, m1), (t2, m2)), c) in &cur {
            out.add_term(t1 + t2, mono_mul(m1, m2), c * &factor);
        }
        let mut next: Bi = BTreeMap::new();
        for (((t1, m1), (t2, m2)), c) in &cur {
            for &(v1, _) in m1 {
                for &(v2, _) in m2 {
                    let s = form(v1, v2);
                    if s.is_zero() {
                        continue;
                    }
                    let (e1, r1) = mono_diff(m1, v1).unwrap();
                    let (e2, r2) = mono_diff(m2, v2).unwrap();
                    let key = ((*t1, r1), (*t2, r2));
                    let val = c * s * Q::from_integer((e1 * e2).into());
                    let entry = next.entry(key.clone()).or_insert_with(Q::zero);
                    *entry += val;
                    if entry.is_zero() {
                        next.remove(&key);
                    }
                }
            }
        }
        l += 1;
        factor = factor / Q::from_integer((2 * l).into());
        cur = next;
    }
    out
}

/// Moyal product for the form `κ ⊗ ω` of a metrized Lie algebra.
pub fn moyal(lie: &MetrizedLie, p: &PolyTensor, q: &PolyTensor) -> PolyTensor {
    moyal_product(p, q, |a, b| form_on_vars(lie, a, b))
}

/// Weight system of a single diagram.
pub fn weight_system(d: &Diagram, lie: &MetrizedLie, genus: usize) -> Result<PolyTensor> {
    d.check_genus(genus)?;
    if d.has_omega() {
        return Err(Error::OmegaLabel);
    }
    let comps = d.connected_components();
    let mut acc = PolyTensor::one();
    for c in &comps {
        acc = acc.mul(&weight_connected(c, lie));
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn leg_form(lie: &MetrizedLie, k: &[Vec<Q>], slot_index: usize, label: Label) -> PolyTensor {
    let Label::Basis(b) = label else { unreachable!("ω legs rejected earlier") };
    let mut p = PolyTensor::zero();
    for (a, kv) in k[slot_index].iter().enumerate().take(lie.dim) {
        p.add_term(0, vec![(Var { lie: a as u16, label: b }, 1)], kv.clone());
    }
    p
}

fn weight_connected(d: &Diagram, lie: &MetrizedLie) -> PolyTensor {
    let n = d.internal_degree();
    let k = lie.casimir();
    if n == 0 {
        // a strut: Σ K^{ab} x_{(a,h)} x_{(b,h')}
        let mut acc = PolyTensor::zero();
        for a in 0..lie.dim {
            acc = acc.add(&leg_form(lie, &k, a, d.legs()[1]).mul(&PolyTensor::var(Var {
                lie: a as u16,
                label: d.legs()[0].basis().unwrap(),
            })));
        }
        return acc;
    }
    let f = lie.vertex_tensor();
    let ports = 3 * n;
    let dim = lie.dim;
    // edges carry the sparse Casimir, leg ports range over all indices
    let nonzero_k: Vec<(usize, usize, Q)> = (0..dim)
        .flat_map(|a| (0..dim).map(move |b| (a, b)))
        .filter(|&(a, b)| !k[a][b].is_zero())
        .map(|(a, b)| (a, b, k[a][b].clone()))
        .collect();
    let mut edges = Vec::new();
    let mut leg_ports = Vec::new();
    for p in 0..ports {
        let q = d.partner_of(p);
        if q < ports {
            if p < q {
                edges.push((p, q));
            }
        } else {
            leg_ports.push(p);
        }
    }
    let leg_forms: BTreeMap<(usize, usize), PolyTensor> = leg_ports
        .iter()
        .flat_map(|&p| (0..dim).map(move |a| (p, a)))
        .map(|(p, a)| ((p, a), leg_form(lie, &k, a, d.legs()[d.port_leg(d.partner_of(p)).unwrap()])))
        .collect();
    if nonzero_k.is_empty() && !edges.is_empty() {
        return PolyTensor::zero();
    }
    let mut edge_choice = vec![0usize; edges.len()];
    let mut leg_choice = vec![0usize; leg_ports.len()];
    let mut idx = vec![0usize; ports];
    let mut acc = PolyTensor::zero();
    loop {
        let mut scalar = Q::one();
        for (e, &(p, q)) in edges.iter().enumerate() {
            let (a, b, ref c) = nonzero_k[edge_choice[e]];
            idx[p] = a;
            idx[q] = b;
            scalar *= c;
        }
        for (l, &p) in leg_ports.iter().enumerate() {
            idx[p] = leg_choice[l];
        }
        for v in 0..n {
            scalar *= &f[idx[3 * v]][idx[3 * v + 1]][idx[3 * v + 2]];
            if scalar.is_zero() {
                break;
            }
        }
        if !scalar.is_zero() {
            let mut term = PolyTensor::constant(scalar);
            for &p in &leg_ports {
                term = term.mul(&leg_forms[&(p, idx[p])]);
            }
            acc = acc.add(&term);
        }
        // odometer over edge choices then leg choices
        let mut advanced = false;
        for c in edge_choice.iter_mut() {
            *c += 1;
            if *c < nonzero_k.len() {
                advanced = true;
                break;
            }
            *c = 0;
        }
        if !advanced {
            for c in leg_choice.iter_mut() {
                *c += 1;
                if *c < dim {
                    advanced = true;
                    break;
                }
                *c = 0;
            }
        }
        if !advanced {
            return acc.shift_t(n as u32);
        }
    }
}

/// Weight system extended linearly.
pub fn weight_element(x: &Element, lie: &MetrizedLie, genus: usize) -> Result<PolyTensor> {
    let mut acc = PolyTensor::zero();
    for (d, c) in x.iter() {
        acc = acc.add(&weight_system(&d.with_ordered(false), lie, genus)?.scale(c));
    }
    Ok(acc)
}

/// Coadjoint derivation `x_{(a,h)} ↦ Σ_k c_{ca}^k x_{(k,h)}` of `e_c`.
pub fn coadjoint(lie: &MetrizedLie, c: usize, p: &PolyTensor) -> PolyTensor {
    p.derive(|v| {
        let mut out = PolyTensor::zero();
        for kk in 0..lie.dim {
            let s = &lie.structure[c][v.lie as usize][kk];
            if !s.is_zero() {
                out.add_term(0, vec![(Var { lie: kk as u16, label: v.label }, 1)], s.clone());
            }
        }
        out
    })
}

/// `true` if every coadjoint derivation kills `p`.
pub fn is_invariant(lie: &MetrizedLie, p: &PolyTensor) -> bool {
    (0..lie.dim).all(|c| coadjoint(lie, c, p).is_zero())
}

#[derive(Clone, Debug)]
pub struct SquareReport {
    pub samples: usize,
    pub failures: usize,
}

/// Checks `W(x ⋆ y) = W(x) ⋆ W(y)` on sample pairs.
pub fn verify_square(samples: &[(Element, Element)], lie: &MetrizedLie, genus: usize) -> Result<SquareReport> {
    let mut failures = 0;
    for (x, y) in samples {
        let lhs = weight_element(&crate::hopf::star(x, y), lie, genus)?;
        let rhs = moyal(lie, &weight_element(x, lie, genus)?, &weight_element(y, lie, genus)?);
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(SquareReport { samples: samples.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        MetrizedLie::sl2().validate().unwrap();
        MetrizedLie::abelian(1).validate().unwrap();
        let mut bad = MetrizedLie::sl2();
        bad.form = vec![vec![Q::zero(); 3]; 3];
        assert!(bad.validate().is_err());
    }

    #[test]
    fn moyal_defining_relation() {
        let lie = MetrizedLie::abelian(1);
        let x = PolyTensor::var(Var { lie: 0, label: BasisVector::alpha(1) });
        let y = PolyTensor::var(Var { lie: 0, label: BasisVector::beta(1) });
        let lhs = moyal(&lie, &x, &y).sub(&moyal(&lie, &y, &x));
        assert_eq!(lhs, PolyTensor::one());
        assert_eq!(moyal(&lie, &x, &PolyTensor::one()), x);
    }
}
