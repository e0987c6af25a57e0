//! The degree-1 and degree-2 parts of the Lie algebra generated by trivectors:
//! the map `Y: Λ³H_Q → A^c_1`, the bracket `b_2: Λ²Λ³H_Q → A^c_2`, the
//! quadratic relations `r_1, r_2` and the invariants `T_1, T_2`.
//!
//! `Lie_2(Λ³H_Q)` is identified with `Λ²Λ³H_Q` via `[x, y] ↔ x ∧ y`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diagram::{Diagram, Label};
use crate::element::Element;
use crate::hopf::bracket;
use crate::linalg::{analyze_map, solve, Echelon, SparseVec};
use crate::quotient::{normal_form, quotient_basis, sp_span};
use crate::symplectic::{basis, omega_basis, BasisVector, SpGenerator};
use crate::{qi, Caps, Error, Result, Q};

/// Strictly increasing basis triple `x < y < z`, standing for `x ∧ y ∧ z`.
pub type Triple = [BasisVector; 3];
/// Pair of triples `t1 < t2`, standing for `t1 ∧ t2`.
pub type Pair = (Triple, Triple);
pub type Trivector = SparseVec<Triple>;
pub type Wedge2 = SparseVec<Pair>;

fn alpha(i: u8) -> BasisVector {
    BasisVector::alpha(i)
}

fn beta(i: u8) -> BasisVector {
    BasisVector::beta(i)
}

/// Sorts three labels, returning the permutation sign, or `None` on repeats.
pub fn sort_triple(x: BasisVector, y: BasisVector, z: BasisVector) -> Option<(Triple, i64)> {
    let mut t = [x, y, z];
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (t[0] != t[1] && t[1] != t[2]).then_some((t, sign))
}

pub fn trivector(x: BasisVector, y: BasisVector, z: BasisVector) -> Trivector {
    match sort_triple(x, y, z) {
        Some((t, s)) => SparseVec::from_pairs([(t, qi(s))]),
        None => SparseVec::zero(),
    }
}

/// `h ∧ ω = Σ_i h ∧ α_i ∧ β_i`.
pub fn wedge_omega(h: BasisVector, genus: usize) -> Trivector {
    let mut acc = Trivector::zero();
    for i in 1..=genus as u8 {
        acc = acc.add(&trivector(h, alpha(i), beta(i)));
    }
    acc
}

/// `u ∧ v`.
pub fn wedge(u: &Trivector, v: &Trivector) -> Wedge2 {
    let mut pairs = Vec::new();
    for (a, ca) in u.entries() {
        for (b, cb) in v.entries() {
            match a.cmp(b) {
                std::cmp::Ordering::Less => pairs.push(((*a, *b), ca * cb)),
                std::cmp::Ordering::Greater => pairs.push(((*b, *a), -(ca * cb))),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

pub fn trivector_basis(genus: usize) -> Vec<Triple> {
    let b = basis(genus);
    let mut out = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            for k in j + 1..b.len() {
                let (t, _) = sort_triple(b[i], b[j], b[k]).unwrap();
                out.push(t);
            }
        }
    }
    out.sort();
    out
}

pub fn wedge2_basis(genus: usize) -> Vec<Pair> {
    let t = trivector_basis(genus);
    let mut out = Vec::new();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            out.push((t[i], t[j]));
        }
    }
    out
}

fn y_of(t: &Triple) -> Diagram {
    Diagram::y(Label::Basis(t[0]), Label::Basis(t[1]), Label::Basis(t[2]))
}

/// `x ∧ y ∧ z ↦ Y(x, y, z)`.
pub fn y_map(t: &Trivector) -> Element {
    let mut e = Element::zero();
    for (tr, c) in t.entries() {
        e.add_diagram(&y_of(tr), c.clone());
    }
    e
}

/// `b_2(t1 ∧ t2) = [Y(t1), Y(t2)]_⋆`, before normalization.
pub fn b2_raw(w: &Wedge2) -> Element {
    let mut e = Element::zero();
    for ((t1, t2), c) in w.entries() {
        let br = bracket(&Element::from_diagram(&y_of(t1)), &Element::from_diagram(&y_of(t2)));
        e.add_scaled(&br, c);
    }
    e
}

/// `b_2` in normal-form coordinates of `A^c_2`.
pub fn b2(w: &Wedge2) -> Element {
    normal_form(&b2_raw(w))
}

/// Columns of `b_2` over [`wedge2_basis`].
pub fn b2_columns(genus: usize, caps: &Caps) -> Result<(Vec<Pair>, Vec<SparseVec<Diagram>>)> {
    caps.check_genus(genus)?;
    let dom = wedge2_basis(genus);
    caps.check_rows(dom.len())?;
    let cols = dom
        .par_iter()
        .map(|p| SparseVec::from_element(&b2(&SparseVec::unit(*p))))
        .collect();
    Ok((dom, cols))
}

fn act_triple(gen: SpGenerator, t: &Triple, genus: usize) -> Trivector {
    let mut acc = Trivector::zero();
    for pos in 0..3 {
        for (img, val) in gen.act_basis(t[pos], genus).expect("labels within genus") {
            let mut u = *t;
            u[pos] = img;
            acc = acc.axpy(&qi(val.into()), &trivector(u[0], u[1], u[2]));
        }
    }
    acc
}

/// Derivation action on `Λ²Λ³H_Q`.
pub fn sp_act_wedge2(gen: SpGenerator, w: &Wedge2, genus: usize) -> Wedge2 {
    let mut acc = Wedge2::zero();
    for ((t1, t2), c) in w.entries() {
        let a = wedge(&act_triple(gen, t1, genus), &SparseVec::unit(*t2));
        let b = wedge(&SparseVec::unit(*t1), &act_triple(gen, t2, genus));
        acc = acc.axpy(c, &a.add(&b));
    }
    acc
}

/// `r_1 = [α1∧α2∧β2, α3∧α4∧β4]` (zero when `g = 3`) and
/// `r_2 = [α1∧α2∧β2, α_g∧ω]`.
pub fn relations(genus: usize) -> Result<(Wedge2, Wedge2)> {
    if genus < 3 {
        return Err(Error::Unsupported(format!("the relations need genus ≥ 3, got {genus}")));
    }
    let t = trivector(alpha(1), alpha(2), beta(2));
    let r1 = if genus >= 4 { wedge(&t, &trivector(alpha(3), alpha(4), beta(4))) } else { Wedge2::zero() };
    let r2 = wedge(&t, &wedge_omega(alpha(genus as u8), genus));
    Ok((r1, r2))
}

#[derive(Clone, Debug)]
pub struct KerReport {
    pub genus: usize,
    pub domain_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub span_dim: usize,
    pub r1_zero: bool,
    pub b2_r1_zero: bool,
    pub b2_r2_zero: bool,
    pub span_in_kernel: bool,
    pub equal: bool,
}

impl KerReport {
    pub fn passed(&self) -> bool {
        self.equal && self.b2_r1_zero && self.b2_r2_zero && self.kernel_dim == self.span_dim
    }
}

/// Compares `Ker(b_2)` with the `Sp`-module generated by `r_1, r_2`.
pub fn verify_ker_b2(genus: usize, caps: &Caps) -> Result<KerReport> {
    let (dom, cols) = b2_columns(genus, caps)?;
    let analysis = analyze_map(&cols);
    let mut kernel: Echelon<Pair> = Echelon::new();
    for k in &analysis.kernel {
        kernel.insert(&k.map_keys(|&i| dom[i]));
    }
    let (r1, r2) = relations(genus)?;
    let span = sp_span(&[r1.clone(), r2.clone()], genus, |g, v| sp_act_wedge2(g, v, genus));
    Ok(KerReport {
        genus,
        domain_dim: dom.len(),
        rank: analysis.rank(),
        kernel_dim: kernel.rank(),
        span_dim: span.rank(),
        r1_zero: r1.is_zero(),
        b2_r1_zero: b2(&r1).is_zero(),
        b2_r2_zero: b2(&r2).is_zero(),
        span_in_kernel: kernel.contains_span(&span),
        equal: kernel.same_span(&span),
    })
}

#[derive(Clone, Debug)]
pub struct ImReport {
    pub genus: usize,
    pub rank: usize,
    pub loop_dims: BTreeMap<usize, usize>,
    pub even_dim: usize,
    pub image_in_even: bool,
    pub equal: bool,
}

/// Compares `Im(b_2)` with the even-loop part of `A^c_2`.
pub fn verify_im_b2(genus: usize, caps: &Caps) -> Result<ImReport> {
    let (_, cols) = b2_columns(genus, caps)?;
    let analysis = analyze_map(&cols);
    let qb = quotient_basis(genus, 2, caps)?;
    let loop_dims = qb.loop_dimensions();
    let even: Vec<Diagram> = qb.standard_with_loop(|l| l % 2 == 0);
    let image_in_even = cols.iter().all(|c| c.entries().iter().all(|(d, _)| d.loop_degree() % 2 == 0));
    let rank = analysis.rank();
    Ok(ImReport {
        genus,
        rank,
        even_dim: even.len(),
        loop_dims,
        image_in_even,
        equal: image_in_even && rank == even.len(),
    })
}

/// `Σ_{i,j,k} Y(α_j, β_j, α_i) ∧ Y(α_k, β_k, β_i)`.
pub fn t1(genus: usize) -> Wedge2 {
    let g = genus as u8;
    let mut acc = Wedge2::zero();
    for i in 1..=g {
        for j in 1..=g {
            for k in 1..=g {
                let w = wedge(&trivector(alpha(j), beta(j), alpha(i)), &trivector(alpha(k), beta(k), beta(i)));
                acc = acc.add(&w);
            }
        }
    }
    acc
}

/// The θ-shaped invariant of `Λ²Λ³H_Q`.
pub fn t2(genus: usize) -> Wedge2 {
    let g = genus as u8;
    let mut acc = Wedge2::zero();
    for i in 1..=g {
        for j in 1..=g {
            for k in 1..=g {
                let terms = [
                    (1, trivector(alpha(j), alpha(k), alpha(i)), trivector(beta(j), beta(k), beta(i))),
                    (-1, trivector(alpha(j), beta(k), alpha(i)), trivector(beta(j), alpha(k), beta(i))),
                    (-1, trivector(alpha(k), beta(i), alpha(j)), trivector(beta(k), alpha(i), beta(j))),
                    (-1, trivector(alpha(i), beta(j), alpha(k)), trivector(beta(i), alpha(j), beta(k))),
                ];
                for (s, u, v) in terms {
                    acc = acc.axpy(&qi(s), &wedge(&u, &v));
                }
            }
        }
    }
    acc
}

/// Closed form of `[Y(x), Y(y)]_⋆`: a sum of `H` diagrams over the pairings
/// `ω(x_i, y_j)` minus `¼·det(ω(x_i, y_j))·θ`.
pub fn bracket_closed_form(x: [BasisVector; 3], y: [BasisVector; 3]) -> Element {
    let b = |v: BasisVector| Label::Basis(v);
    let w = |i: usize, j: usize| omega_basis(x[i], y[j]) as i64;
    let mut e = Element::zero();
    for i in 0..3 {
        for j in 0..3 {
            if w(i, j) != 0 {
                let h = Diagram::h(b(x[(i + 2) % 3]), b(y[(j + 1) % 3]), b(x[(i + 1) % 3]), b(y[(j + 2) % 3]));
                e.add_diagram(&h, qi(w(i, j)));
            }
        }
    }
    let det = w(0, 0) * (w(1, 1) * w(2, 2) - w(1, 2) * w(2, 1)) - w(0, 1) * (w(1, 0) * w(2, 2) - w(1, 2) * w(2, 0))
        + w(0, 2) * (w(1, 0) * w(2, 1) - w(1, 1) * w(2, 0));
    if det != 0 {
        e.add_diagram(&Diagram::theta(), qi(-det) / qi(4));
    }
    e
}

/// `S_ωω = Σ_{i,j} H[β_i, α_j; α_i, β_j]`.
pub fn s_omega_omega(genus: usize) -> Element {
    let g = genus as u8;
    let mut e = Element::zero();
    for i in 1..=g {
        for j in 1..=g {
            let h = Diagram::h(Label::beta(i), Label::alpha(j), Label::alpha(i), Label::beta(j));
            e.add_diagram(&h, Q::one());
        }
    }
    e
}

/// `Y(α_1, α_2, ω) := Σ_i H[α_2, α_i; α_1, β_i]`.
pub fn y_alpha1_alpha2_omega(genus: usize) -> Element {
    let mut e = Element::zero();
    for i in 1..=genus as u8 {
        e.add_diagram(&Diagram::h(Label::alpha(2), Label::alpha(i), Label::alpha(1), Label::beta(i)), Q::one());
    }
    e
}

/// Decomposes a normal form as `a · θ + s · S_ωω + rest`.
#[derive(Clone, Debug)]
pub struct ThetaSplit {
    pub theta: Q,
    /// `Some(s)` when the θ-free part equals `s · S_ωω`.
    pub s_omega: Option<Q>,
}

pub fn split_theta_somega(x: &Element, genus: usize) -> ThetaSplit {
    let nf = normal_form(x);
    let theta_nf = normal_form(&Element::from_diagram(&Diagram::theta()));
    let (td, tc) = theta_nf.iter().next().expect("θ is nonzero");
    let theta = nf.coefficient(td) / tc;
    let rest = nf.sub(&theta_nf.scale(&theta));
    let s = normal_form(&s_omega_omega(genus));
    let s_omega = if rest.is_zero() {
        Some(Q::zero())
    } else {
        let (d, c) = s.iter().next().expect("S_ωω is nonzero");
        let ratio = rest.coefficient(d) / c;
        (rest.sub(&s.scale(&ratio)).is_zero()).then_some(ratio)
    };
    ThetaSplit { theta, s_omega }
}

#[derive(Clone, Debug)]
pub struct T1T2Report {
    pub genus: usize,
    pub t1: ThetaSplit,
    pub t2: ThetaSplit,
    pub expected_theta: (Q, Q),
    pub expected_s: (Q, Q),
    pub determinant: Q,
    pub expected_determinant: Q,
}

impl T1T2Report {
    pub fn t1_ok(&self) -> bool {
        self.t1.theta == self.expected_theta.0 && self.t1.s_omega.as_ref() == Some(&self.expected_s.0)
    }

    pub fn t2_ok(&self) -> bool {
        self.t2.theta == self.expected_theta.1 && self.t2.s_omega.as_ref() == Some(&self.expected_s.1)
    }

    pub fn det_ok(&self) -> bool {
        self.determinant == self.expected_determinant && !self.determinant.is_zero()
    }
}

pub fn t1_t2(genus: usize) -> Result<T1T2Report> {
    if genus < 3 {
        return Err(Error::Unsupported("T1/T2 analysis needs genus ≥ 3".into()));
    }
    let g = genus as i64;
    let s1 = split_theta_somega(&b2_raw(&t1(genus)), genus);
    let s2 = split_theta_somega(&b2_raw(&t2(genus)), genus);
    let expected_theta = (qi(-g * (g - 1)) / qi(4), qi(-g * (g - 1) * (2 * g - 1)) / qi(2));
    let expected_s = (qi(g - 1), qi(6 * (g - 1)));
    // | −θ1  −θ2 ; −s1  −s2 | with the measured coefficients
    let determinant = match (&s1.s_omega, &s2.s_omega) {
        (Some(a), Some(b)) => (-s1.theta.clone()) * (-b.clone()) - (-s2.theta.clone()) * (-a.clone()),
        _ => Q::zero(),
    };
    Ok(T1T2Report {
        genus,
        t1: s1,
        t2: s2,
        expected_theta,
        expected_s,
        determinant,
        expected_determinant: qi(g * (g - 1) * (g - 1) * (g - 2)),
    })
}

/// `r_3 = a·T_1 + b·T_2` with `b_2(r_3) = θ`, solved from measured brackets.
pub fn r3_preimage(genus: usize) -> Result<(Wedge2, Q, Q)> {
    let rep = t1_t2(genus)?;
    let (Some(s1), Some(s2)) = (rep.t1.s_omega.clone(), rep.t2.s_omega.clone()) else {
        return Err(Error::Singular("[T1], [T2] are not in span(θ, S_ωω)".into()));
    };
    let cols = vec![
        SparseVec::from_pairs([(0u8, rep.t1.theta.clone()), (1u8, s1)]),
        SparseVec::from_pairs([(0u8, rep.t2.theta.clone()), (1u8, s2)]),
    ];
    let x = solve(&cols, &SparseVec::unit(0u8)).ok_or_else(|| Error::Singular("θ not reached".into()))?;
    let (a, b) = (x[0].clone(), x[1].clone());
    let r3 = t1(genus).scale(&a).add(&t2(genus).scale(&b));
    Ok((r3, a, b))
}

/// Dimensions of the Lie subalgebra generated by `A^c_1`, degrees `1..=max_degree`,
/// with the check that each degree lies in the even-loop part.
pub fn generated_subalgebra_dims(genus: usize, max_degree: usize, caps: &Caps) -> Result<Vec<(usize, usize, bool)>> {
    caps.check_degree(max_degree)?;
    let gens: Vec<Element> = trivector_basis(genus).iter().map(|t| normal_form(&Element::from_diagram(&y_of(t)))).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Element> = gens.clone();
    for degree in 1..=max_degree {
        if degree > 1 {
            let prev = layer.clone();
            let products: Vec<Element> = gens
                .par_iter()
                .flat_map_iter(|y| prev.iter().map(move |z| normal_form(&bracket(y, z))).collect::<Vec<_>>())
                .collect();
            layer = products;
        }
        let mut ech: Echelon<Diagram> = Echelon::new();
        let mut basis_layer = Vec::new();
        for e in &layer {
            if let Some(r) = ech.insert(&SparseVec::from_element(e)) {
                basis_layer.push(r.to_element());
            }
        }
        let even = basis_layer.iter().all(crate::quotient::in_even_part);
        out.push((degree, ech.rank(), even));
        layer = basis_layer;
    }
    Ok(out)
}

/// The highest weight vectors listed for `A^c_{2,0}` with their weights.
pub fn hwv_table(genus: usize) -> Vec<(&'static str, Element, Vec<i32>)> {
    let mut w2 = vec![0; genus];
    w2[0] = 2;
    w2[1] = 2;
    let mut w1 = vec![0; genus];
    w1[0] = 1;
    w1[1] = 1;
    vec![
        ("2w2", Element::from_diagram(&Diagram::h(Label::alpha(1), Label::alpha(2), Label::alpha(2), Label::alpha(1))), w2),
        ("w2", y_alpha1_alpha2_omega(genus), w1),
        ("0", s_omega_omega(genus), vec![0; genus]),
    ]
}

/// The two bracket identities showing `Γ_{2ω_2} + Γ_{ω_2} ⊂ Im(b_2)`:
/// returns `(lhs − rhs)` normal forms, both zero when they hold.
pub fn image_identities(genus: usize) -> (Element, Element) {
    let y = |a, b, c| Element::from_diagram(&Diagram::y(a, b, c));
    let first = bracket(
        &y(Label::alpha(1), Label::alpha(2), Label::beta(3)),
        &y(Label::alpha(2), Label::alpha(1), Label::alpha(3)),
    )
    .sub(&Element::from_diagram(&Diagram::h(Label::alpha(1), Label::alpha(2), Label::alpha(2), Label::alpha(1))));
    let mut second = Element::zero();
    for i in 2..=genus as u8 {
        second.add_assign(&bracket(
            &y(Label::alpha(1), Label::alpha(2), Label::beta(1)),
            &y(Label::beta(i), Label::alpha(i), Label::alpha(1)),
        ));
    }
    let second = second.sub(&y_alpha1_alpha2_omega(genus));
    (normal_form(&first), normal_form(&second))
}
