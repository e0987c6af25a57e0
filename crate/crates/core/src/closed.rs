//! Diagrams with `ω`-labeled legs, the ideal they span, and the degree-2
//! bracket modulo that ideal.
//!
//! An `ω` leg attached at a port stands for `Σ_i` of a new vertex
//! `(m, α_i, β_i)` joined to that port along `m`; in ordered diagrams `α_i`
//! comes right before `β_i`, at the position of the `ω` leg.

use num_traits::One;
use rayon::prelude::*;

use crate::diagram::{omega_label, Diagram, Label};
use crate::element::Element;
use crate::enumerate::{enumerate, EnumOptions};
use crate::hopf::{self, antipode, chi_inv, coproduct, ordered_product, star, Tensor};
use crate::linalg::{Echelon, SparseVec};
use crate::quotient::{in_even_part, normal_form, quotient_basis, sp_act_element, sp_module_span};
use crate::symplectic::basis;
use crate::torelli::{self, b2, sp_act_wedge2, wedge, wedge2_basis, wedge_omega, Pair, Wedge2};
use crate::{q, Caps, Error, Result, Q};

/// Port-level view of a diagram used for local surgery. Every id occurs once
/// as a vertex slot or leg end, and once in `matching`.
#[derive(Clone, Debug)]
struct Graph {
    next: usize,
    vertices: Vec<[usize; 3]>,
    legs: Vec<(usize, Label)>,
    matching: Vec<(usize, usize)>,
    ordered: bool,
}

impl Graph {
    fn from_diagram(d: &Diagram) -> Graph {
        let n = d.internal_degree();
        let vertices = (0..n).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
        let legs = d.legs().iter().enumerate().map(|(k, &l)| (3 * n + k, l)).collect();
        let matching = (0..d.num_ports())
            .filter_map(|p| {
                let q = d.partner_of(p);
                (p < q).then_some((p, q))
            })
            .collect();
        Graph { next: d.num_ports(), vertices, legs, matching, ordered: d.is_ordered() }
    }

    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// A new leg joined by an edge to a fresh id, which is returned.
    fn leg_stub(&mut self, label: Label) -> (usize, (usize, Label)) {
        let end = self.fresh();
        let slot = self.fresh();
        self.matching.push((slot, end));
        (slot, (end, label))
    }

    fn to_diagram(&self) -> Diagram {
        let nv = self.vertices.len();
        let mut pos = vec![usize::MAX; self.next];
        for (v, slots) in self.vertices.iter().enumerate() {
            for (s, &id) in slots.iter().enumerate() {
                pos[id] = 3 * v + s;
            }
        }
        for (k, (id, _)) in self.legs.iter().enumerate() {
            pos[*id] = 3 * nv + k;
        }
        let mut partner = vec![0u16; 3 * nv + self.legs.len()];
        for &(a, b) in &self.matching {
            partner[pos[a]] = pos[b] as u16;
            partner[pos[b]] = pos[a] as u16;
        }
        let labels = self.legs.iter().map(|l| l.1).collect();
        Diagram::from_parts(partner, labels, self.ordered).expect("surgery keeps the port involution")
    }
}

/// Closed degree: internal degree plus the number of `ω` legs.
pub fn closed_degree(d: &Diagram) -> usize {
    d.internal_degree() + d.legs().iter().filter(|l| **l == Label::Omega).count()
}

/// An ordered diagram whose first leg is `ω`.
pub fn is_omega_smallest(d: &Diagram) -> bool {
    d.is_ordered() && d.legs().first() == Some(&Label::Omega)
}

/// Replaces every `ω` leg by `Σ_i (m, α_i, β_i)`.
pub fn expand_omega(d: &Diagram, genus: usize) -> Element {
    let omegas: Vec<usize> = (0..d.num_legs()).filter(|&k| d.legs()[k] == Label::Omega).collect();
    if omegas.is_empty() {
        return Element::from_diagram(d);
    }
    let mut out = Element::zero();
    if genus == 0 {
        return out;
    }
    let mut choice = vec![1u8; omegas.len()];
    loop {
        let g0 = Graph::from_diagram(d);
        let mut g = g0.clone();
        let mut legs = Vec::with_capacity(d.num_legs() + omegas.len());
        let mut t = 0;
        for &(id, label) in &g0.legs {
            if label != Label::Omega {
                legs.push((id, label));
                continue;
            }
            let i = choice[t];
            t += 1;
            let (a, la) = g.leg_stub(Label::alpha(i));
            let (b, lb) = g.leg_stub(Label::beta(i));
            // the old leg end becomes the slot `m` of the new vertex
            g.vertices.push([id, a, b]);
            legs.push(la);
            legs.push(lb);
        }
        g.legs = legs;
        out.add_diagram(&g.to_diagram(), Q::one());
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return out;
            }
            choice[pos] += 1;
            if (choice[pos] as usize) <= genus {
                break;
            }
            choice[pos] = 1;
            pos += 1;
        }
    }
}

pub fn expand_element(x: &Element, genus: usize) -> Element {
    x.map_linear(|d| expand_omega(d, genus))
}

/// Removes legs `k, j, l` and joins their ends to a new vertex `(k, j, l)`.
fn merge_three(d: &Diagram, k: usize, j: usize, l: usize) -> Diagram {
    let mut g = Graph::from_diagram(d);
    let ids = [g.legs[k].0, g.legs[j].0, g.legs[l].0];
    g.legs.retain(|(id, _)| !ids.contains(id));
    g.vertices.push(ids);
    g.to_diagram()
}

/// Generator of `I` attached to a diagram with a single `ω` leg `k`:
/// `expand(D) − ¼ Σ_{j<l} ω(x_j, x_l) D⟨l, j, k⟩`, where `D⟨l, j, k⟩` joins the
/// three legs to a new vertex with that cyclic order. It is written below with
/// the reversed vertex `(k, j, l)` and the opposite sign.
pub fn i_generator(d: &Diagram, k: usize, genus: usize) -> Result<Element> {
    let legs = d.legs();
    if legs[k] != Label::Omega || legs.iter().filter(|l| **l == Label::Omega).count() != 1 {
        return Err(Error::Unsupported("generator needs exactly one ω leg".into()));
    }
    let d = d.with_ordered(false);
    let mut out = expand_omega(&d, genus);
    let others: Vec<usize> = (0..legs.len()).filter(|&x| x != k).collect();
    for (a, &j) in others.iter().enumerate() {
        for &l in &others[a + 1..] {
            let w = omega_label(legs[j], legs[l]);
            if w != 0 {
                out.add_diagram(&merge_three(&d, k, j, l), q(w as i64, 4));
            }
        }
    }
    Ok(out)
}

/// `Y(x, y, ω) − ¼ ω(x, y) θ` via [`i_generator`].
pub fn i_generator_degree2(x: Label, y: Label, genus: usize) -> Element {
    i_generator(&Diagram::y(x, y, Label::Omega), 2, genus).expect("one ω leg")
}

/// Connected generators of `I` in closed degree `degree`.
pub fn i_generators(genus: usize, degree: usize, caps: &Caps) -> Result<Vec<Element>> {
    caps.check_degree(degree)?;
    caps.check_genus(genus)?;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let shapes: Vec<Diagram> = if degree == 1 {
        basis(genus).into_iter().map(|b| Diagram::strut(Label::Omega, Label::Basis(b))).collect()
    } else {
        let base = enumerate(genus, degree - 1, EnumOptions::CONNECTED, caps)?;
        let mut out = Vec::new();
        for d in &base {
            for k in 0..d.num_legs() {
                out.push(d.with_label(k, Label::Omega));
            }
        }
        out
    };
    caps.check_rows(shapes.len())?;
    shapes
        .par_iter()
        .map(|d| {
            let k = d.legs().iter().position(|l| *l == Label::Omega).expect("one ω leg");
            i_generator(d, k, genus)
        })
        .collect()
}

/// Span of the connected generators of `I` in normal-form coordinates.
pub fn ic_span(genus: usize, degree: usize, caps: &Caps) -> Result<Echelon<Diagram>> {
    let gens = i_generators(genus, degree, caps)?;
    let rows: Vec<SparseVec<Diagram>> = gens.par_iter().map(|g| SparseVec::from_element(&normal_form(g))).collect();
    let mut ech = Echelon::new();
    for r in &rows {
        ech.insert(r);
    }
    Ok(ech)
}

/// `dim A^c_d / I^c_d`.
pub fn closed_dimension(genus: usize, degree: usize, caps: &Caps) -> Result<usize> {
    let a = quotient_basis(genus, degree, caps)?.dimension();
    Ok(a - ic_span(genus, degree, caps)?.rank())
}

/// Connected `ω`-smallest ordered diagrams of closed degree 1 or 2.
pub fn omega_smallest_connected(genus: usize, degree: usize) -> Result<Vec<Diagram>> {
    let b: Vec<Label> = basis(genus).into_iter().map(Label::Basis).collect();
    match degree {
        1 => Ok(b.iter().map(|&x| Diagram::strut(Label::Omega, x).with_ordered(true)).collect()),
        2 => {
            let mut out = vec![Diagram::strut(Label::Omega, Label::Omega).with_ordered(true)];
            for &x in &b {
                for &y in &b {
                    out.push(Diagram::y(Label::Omega, x, y).with_ordered(true));
                }
            }
            Ok(out)
        }
        _ => Err(Error::CapExceeded { what: "ordered ideal degree", value: degree, cap: 2 }),
    }
}

/// `χ⁻¹(I^{<,c}_d)` in normal-form coordinates of `A^c_d`, for `d ≤ 2`.
pub fn ilt_connected_span(genus: usize, degree: usize) -> Result<Echelon<Diagram>> {
    let ds = omega_smallest_connected(genus, degree)?;
    let rows: Vec<SparseVec<Diagram>> = ds
        .par_iter()
        .map(|d| SparseVec::from_element(&normal_form(&chi_inv(&expand_omega(d, genus)))))
        .collect();
    let mut ech = Echelon::new();
    for r in &rows {
        ech.insert(r);
    }
    Ok(ech)
}

/// Residual of the `ω`-swap identity at legs `k < k+1` of an ordered diagram:
/// `(x < ω) − (ω < x) − R`, where `R` replaces both legs by a vertex
/// `(m_ω, x, m_x)` carrying the leg `x`. Here `ω` sits at `k + 1` and `x` at
/// `k` may itself be `ω`. Returned as a normal form in `A`; zero when the
/// identity holds.
pub fn omega_swap_residual(d: &Diagram, k: usize, genus: usize) -> Result<Element> {
    if !d.is_ordered() {
        return Err(Error::NotOrdered);
    }
    if k + 1 >= d.num_legs() || d.legs()[k + 1] != Label::Omega {
        return Err(Error::Unsupported("the swap needs an ω leg right after position k".into()));
    }
    let n = d.num_legs();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(k, k + 1);
    let swapped = d.permute_legs(&perm);
    let mut g = Graph::from_diagram(d);
    let (id_x, label_x) = g.legs[k];
    let id_w = g.legs[k + 1].0;
    let (slot, stub) = g.leg_stub(label_x);
    g.vertices.push([id_w, slot, id_x]);
    g.legs.splice(k..k + 2, [stub]);
    let r = g.to_diagram();
    let mut x = expand_omega(d, genus);
    x.add_scaled(&expand_omega(&swapped, genus), &-Q::one());
    x.add_scaled(&expand_omega(&r, genus), &-Q::one());
    Ok(normal_form(&chi_inv(&x)))
}

/// Residual of moving the `ω` leg `k` of `c` across all legs of `e`:
/// `c[…, e, ω, …] − c[…, ω, e, …]` in normal-form coordinates of `A`.
pub fn commutation_residual(c: &Diagram, k: usize, e: &Diagram, genus: usize) -> Result<Element> {
    if c.legs().get(k) != Some(&Label::Omega) {
        return Err(Error::Unsupported("position k must hold an ω leg".into()));
    }
    let u = c.with_ordered(true).disjoint_union(&e.with_ordered(true));
    let (nc, ne) = (c.num_legs(), e.num_legs());
    let tail: Vec<usize> = (k + 1..nc).collect();
    let block: Vec<usize> = (nc..nc + ne).collect();
    let head: Vec<usize> = (0..k).collect();
    let before: Vec<usize> = head.iter().chain(&block).chain(&[k]).chain(&tail).cloned().collect();
    let after: Vec<usize> = head.iter().chain(&[k]).chain(&block).chain(&tail).cloned().collect();
    let mut x = expand_omega(&u.permute_legs(&before), genus);
    x.add_scaled(&expand_omega(&u.permute_legs(&after), genus), &-Q::one());
    Ok(normal_form(&chi_inv(&x)))
}

#[derive(Clone, Debug)]
pub struct OmegaLemmaReport {
    pub swap_checks: usize,
    pub swap_failures: usize,
    pub commutation_checks: usize,
    pub commutation_failures: usize,
}

impl OmegaLemmaReport {
    pub fn passed(&self) -> bool {
        self.swap_failures == 0 && self.commutation_failures == 0
    }
}

/// Checks the swap identity (including `x = ω`) and the commutation identity
/// in every context of closed degree at most 2.
pub fn verify_omega_lemmas(genus: usize) -> Result<OmegaLemmaReport> {
    let b: Vec<Label> = basis(genus).into_iter().map(Label::Basis).collect();
    let w = Label::Omega;
    let mut swaps: Vec<(Diagram, usize)> = Vec::new();
    for &x in &b {
        swaps.push((Diagram::strut(x, w).with_ordered(true), 0));
        for &y in &b {
            // x ω y, y x ω and the reversed cyclic orders via label order
            swaps.push((Diagram::y(x, w, y).with_ordered(true), 0));
            swaps.push((Diagram::y(y, x, w).with_ordered(true), 1));
        }
    }
    swaps.push((Diagram::strut(w, w).with_ordered(true), 0));
    let swap_res: Vec<bool> = swaps
        .par_iter()
        .map(|(d, k)| omega_swap_residual(d, *k, genus).map(|r| r.is_zero()))
        .collect::<Result<_>>()?;
    let mut comms: Vec<(Diagram, usize, Diagram)> = Vec::new();
    for &x in &b {
        let c = Diagram::strut(w, x);
        comms.push((c.clone(), 0, Diagram::y(b[0], b[1 % b.len()], x)));
        for &y in &b {
            comms.push((c.clone(), 0, Diagram::strut(w, y)));
            comms.push((c.clone(), 0, Diagram::y(x, y, b[0])));
            comms.push((Diagram::strut(x, w), 1, Diagram::strut(y, w)));
        }
    }
    let comm_res: Vec<bool> = comms
        .par_iter()
        .map(|(c, k, e)| commutation_residual(c, *k, e, genus).map(|r| r.is_zero()))
        .collect::<Result<_>>()?;
    Ok(OmegaLemmaReport {
        swap_checks: swap_res.len(),
        swap_failures: swap_res.iter().filter(|ok| !**ok).count(),
        commutation_checks: comm_res.len(),
        commutation_failures: comm_res.iter().filter(|ok| !**ok).count(),
    })
}

/// `I_1 ⊕ I_2` of `A` in normal-form coordinates: the connected generators
/// plus `⋆`-products `I^c_1 ⋆ A^c_1`.
pub struct LowIdeal {
    pub genus: usize,
    pub degree1: Echelon<Diagram>,
    pub degree2: Echelon<Diagram>,
}

impl LowIdeal {
    pub fn build(genus: usize, caps: &Caps) -> Result<LowIdeal> {
        let degree1 = ic_span(genus, 1, caps)?;
        let mut degree2 = ic_span(genus, 2, caps)?;
        let a1 = quotient_basis(genus, 1, caps)?;
        let i1: Vec<SparseVec<Diagram>> = degree1.rows().cloned().collect();
        let prods: Vec<SparseVec<Diagram>> = i1
            .par_iter()
            .flat_map_iter(|r| {
                let x = r.to_element();
                a1.standard
                    .iter()
                    .map(|d| SparseVec::from_element(&normal_form(&star(&x, &Element::from_diagram(d)))))
                    .collect::<Vec<_>>()
            })
            .collect();
        for p in &prods {
            degree2.insert(p);
        }
        Ok(LowIdeal { genus, degree1, degree2 })
    }

    /// Projection to `A/I` in degrees ≤ 2 (other degrees pass through).
    pub fn project(&self, x: &Element) -> Element {
        let nf = normal_form(x);
        let mut out = Element::zero();
        for deg in 0..=nf.max_degree() {
            let part = nf.filter(|d| d.internal_degree() == deg);
            let v = SparseVec::from_element(&part);
            let r = match deg {
                1 => self.degree1.reduce(&v),
                2 => self.degree2.reduce(&v),
                _ => v,
            };
            out.add_assign(&r.to_element());
        }
        out
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.project(x).is_zero()
    }

    /// `(π ⊗ π)(t)`.
    pub fn project_tensor(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for ((a, b), c) in t {
            let pa = self.project(&Element::from_diagram(a));
            let pb = self.project(&Element::from_diagram(b));
            for (da, ca) in pa.iter() {
                for (db, cb) in pb.iter() {
                    hopf::tensor_add_diagrams(&mut out, da, db, c * ca * cb);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct HopfIdealReport {
    pub samples: usize,
    pub membership_failures: usize,
    pub left_failures: usize,
    pub right_failures: usize,
    pub coproduct_failures: usize,
    pub antipode_failures: usize,
    pub sp_closed: bool,
    pub lie_ideal_failures: usize,
}

impl HopfIdealReport {
    pub fn passed(&self) -> bool {
        self.membership_failures == 0
            && self.left_failures == 0
            && self.right_failures == 0
            && self.coproduct_failures == 0
            && self.antipode_failures == 0
            && self.sp_closed
            && self.lie_ideal_failures == 0
    }
}

/// Ideal, coideal, antipode and `Sp` closure of `I` on `ω`-smallest samples
/// of closed degree ≤ 2, with multipliers `others` of degree ≤ 1.
pub fn verify_hopf_ideal(
    genus: usize,
    samples: &[Diagram],
    others: &[Diagram],
    caps: &Caps,
) -> Result<HopfIdealReport> {
    // membership is tested in strut-free coordinates
    if others.iter().any(|e| e.connected_components().iter().any(|c| c.internal_degree() == 0 && !c.has_omega())) {
        return Err(Error::Unsupported("multipliers must not contain struts without an ω leg".into()));
    }
    let ideal = LowIdeal::build(genus, caps)?;
    let mut rep = HopfIdealReport { samples: samples.len(), ..Default::default() };
    for d in samples {
        if !is_omega_smallest(d) || closed_degree(d) > 2 {
            return Err(Error::Unsupported("samples must be ω-smallest of closed degree ≤ 2".into()));
        }
        let x = chi_inv(&expand_omega(d, genus));
        if !ideal.contains(&x) {
            rep.membership_failures += 1;
        }
        if !ideal.project_tensor(&coproduct(&x)).is_empty() {
            rep.coproduct_failures += 1;
        }
        if !ideal.contains(&antipode(&x)) {
            rep.antipode_failures += 1;
        }
        let xd = Element::from_diagram(d);
        for e in others {
            if closed_degree(d) + closed_degree(e) > 2 {
                continue;
            }
            let ee = Element::from_diagram(&e.with_ordered(true));
            let right = chi_inv(&expand_element(&ordered_product(&xd, &ee), genus));
            let left = chi_inv(&expand_element(&ordered_product(&ee, &xd), genus));
            if !ideal.contains(&right) {
                rep.right_failures += 1;
            }
            if !ideal.contains(&left) {
                rep.left_failures += 1;
            }
        }
    }
    let i2: Vec<Element> = ideal.degree2.rows().map(|r| r.to_element()).collect();
    let span = sp_module_span(&i2, genus);
    rep.sp_closed = span.rank() == ideal.degree2.rank();
    // [I^c_1, A^c_1] ⊂ I^c_2
    let a1 = quotient_basis(genus, 1, caps)?;
    for r in ideal.degree1.rows() {
        for d in &a1.standard {
            let br = hopf::bracket(&r.to_element(), &Element::from_diagram(d));
            if !ideal.contains(&br) {
                rep.lie_ideal_failures += 1;
            }
        }
    }
    Ok(rep)
}

/// `true` when expansion commutes with the `sp_2g` action on every generator.
pub fn expansion_is_equivariant(d: &Diagram, genus: usize) -> Result<bool> {
    for g in crate::symplectic::SpGenerator::all(genus) {
        let a = expand_element(&sp_act_element(g, &Element::from_diagram(d), genus)?, genus);
        let b = sp_act_element(g, &expand_omega(d, genus), genus)?;
        if !normal_form(&a.sub(&b)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct C2Report {
    pub genus: usize,
    pub ic2_dim: usize,
    pub ilt_dim: usize,
    pub spans_agree: bool,
    pub ic2_in_even: bool,
    pub even_dim: usize,
    pub quotient_domain_dim: usize,
    pub well_defined: bool,
    pub rank: usize,
    pub kernel_dim: usize,
    pub r1_class_dim: usize,
    pub s_omega_omega_ok: bool,
    pub y_omega_preimage_ok: bool,
}

impl C2Report {
    pub fn passed(&self) -> bool {
        self.spans_agree
            && self.ic2_in_even
            && self.well_defined
            && self.s_omega_omega_ok
            && self.y_omega_preimage_ok
            && self.rank == self.even_dim - self.ic2_dim
            && self.kernel_dim == self.r1_class_dim
    }
}

/// `c_2 = [−,−]_⋆ : Λ²(Λ³H/H) → A^c_2 / I^c_2` by elimination.
pub fn c2_analysis(genus: usize, caps: &Caps) -> Result<C2Report> {
    let ic2 = ic_span(genus, 2, caps)?;
    let ilt = ilt_connected_span(genus, 2)?;
    let spans_agree = ic2.same_span(&ilt);
    let ic2_in_even = ic2.rows().all(|r| in_even_part(&r.to_element()));
    let qb = quotient_basis(genus, 2, caps)?;
    let even_dim = qb.standard_with_loop(|l| l % 2 == 0).len();

    // kernel of Λ²Λ³ → Λ²(Λ³/H): spanned by (h ∧ ω) ∧ t
    let triples = torelli::trivector_basis(genus);
    let mut k_h: Echelon<Pair> = Echelon::new();
    for h in basis(genus) {
        let hw = wedge_omega(h, genus);
        for t in &triples {
            k_h.insert(&wedge(&hw, &SparseVec::unit(*t)));
        }
    }
    let dom = wedge2_basis(genus);
    let quotient_domain_dim = dom.len() - k_h.rank();
    let project = |w: &Wedge2| ic2.reduce(&SparseVec::from_element(&b2(w)));
    let well_defined = k_h.rows().collect::<Vec<_>>().par_iter().all(|r| project(r).is_zero());
    let cols: Vec<SparseVec<Diagram>> = dom.par_iter().map(|p| project(&SparseVec::unit(*p))).collect();
    let mut image = Echelon::new();
    for c in &cols {
        image.insert(c);
    }
    let rank = image.rank();
    let kernel_dim = quotient_domain_dim - rank;
    // Sp-span of r_1, measured modulo K_H
    let r1 = if genus >= 3 { torelli::relations(genus)?.0 } else { Wedge2::zero() };
    let r1_span = crate::quotient::sp_span(&[r1], genus, |g, v| sp_act_wedge2(g, v, genus));
    let mut joint = k_h.clone();
    for r in r1_span.rows() {
        joint.insert(r);
    }
    let r1_class_dim = joint.rank() - k_h.rank();

    let s = normal_form(&torelli::s_omega_omega(genus));
    let theta = normal_form(&Element::from_diagram(&Diagram::theta())).scale(&q(genus as i64, 4));
    let s_omega_omega_ok = ic2.contains(&SparseVec::from_element(&s.sub(&theta)));
    // b_2(−Y(α1,α2,β1) ∧ (α1 ∧ ω)) = Y(α1, α2, ω)
    let y_omega_preimage_ok = genus >= 2 && {
        let w = wedge(
            &torelli::trivector(crate::BasisVector::alpha(1), crate::BasisVector::alpha(2), crate::BasisVector::beta(1)),
            &wedge_omega(crate::BasisVector::alpha(1), genus),
        );
        let target = expand_omega(&Diagram::y(Label::alpha(1), Label::alpha(2), Label::Omega), genus);
        normal_form(&b2(&w).scale(&-Q::one()).sub(&target)).is_zero()
    };
    Ok(C2Report {
        genus,
        ic2_dim: ic2.rank(),
        ilt_dim: ilt.rank(),
        spans_agree,
        ic2_in_even,
        even_dim,
        quotient_domain_dim,
        well_defined,
        rank,
        kernel_dim,
        r1_class_dim,
        s_omega_omega_ok,
        y_omega_preimage_ok,
    })
}

/// Degree-2 `ω`-smallest samples of every shape, for the ideal checks.
pub fn omega_smallest_samples(genus: usize) -> Vec<Diagram> {
    let b: Vec<Label> = basis(genus).into_iter().map(Label::Basis).collect();
    let w = Label::Omega;
    let mut out = Vec::new();
    for (i, &x) in b.iter().enumerate() {
        out.push(Diagram::strut(w, x).with_ordered(true));
        let y = b[(i + 1) % b.len()];
        let z = b[(i + 3) % b.len()];
        out.push(Diagram::y(w, x, y).with_ordered(true));
        let s = Diagram::strut(w, x).with_ordered(true);
        let t = Diagram::y(x, y, z).with_ordered(true);
        let u = s.disjoint_union(&t);
        // ω first, the other legs interleaved
        out.push(u.permute_legs(&[0, 2, 1, 3, 4]));
        out.push(u.permute_legs(&[0, 4, 3, 1, 2]));
        let v = s.disjoint_union(&Diagram::strut(w, y).with_ordered(true));
        out.push(v.permute_legs(&[0, 2, 1, 3]));
    }
    out.push(Diagram::strut(w, w).with_ordered(true));
    out
}
