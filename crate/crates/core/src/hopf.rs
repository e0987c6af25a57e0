//! Products, symmetrization and the coalgebra structure.
//!
//! `A^<` multiplies by ordered disjoint union. `A` carries the star product
//! computed directly from leg gluings weighted by `ω`; the symmetrization map
//! `χ` intertwines the two.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::diagram::{omega_label, Diagram};
use crate::element::Element;
use crate::enumerate::permutations;
use crate::quotient::Quotient;
use crate::{q, qi, Q};

/// Ordered disjoint union: legs of the right factor come last.
pub fn ordered_product(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (d, c) in x.iter() {
        for (e, k) in y.iter() {
            let u = d.with_ordered(true).disjoint_union(&e.with_ordered(true));
            out.add_diagram(&u, c * k);
        }
    }
    out
}

/// Every partial bijection between legs of `d` and `e` with nonzero `ω`
/// product, as `(pairs, ∏ ω)`.
fn leg_pairings(d: &Diagram, e: &Diagram) -> Vec<(Vec<(usize, usize)>, i64)> {
    fn rec(
        d: &Diagram,
        e: &Diagram,
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        w: i64,
        out: &mut Vec<(Vec<(usize, usize)>, i64)>,
    ) {
        if i == d.num_legs() {
            out.push((cur.clone(), w));
            return;
        }
        rec(d, e, i + 1, used, cur, w, out);
        for j in 0..e.num_legs() {
            if used[j] {
                continue;
            }
            let o = omega_label(d.legs()[i], e.legs()[j]) as i64;
            if o == 0 {
                continue;
            }
            used[j] = true;
            cur.push((i, j));
            rec(d, e, i + 1, used, cur, w * o, out);
            cur.pop();
            used[j] = false;
        }
    }
    let mut out = Vec::new();
    rec(d, e, 0, &mut vec![false; e.num_legs()], &mut Vec::new(), 1, &mut out);
    out
}

fn pow2_inv(k: usize) -> Q {
    q(1, 1i64 << k)
}

fn glue_sum(x: &Element, y: &Element, odd_only: bool) -> Element {
    let parts: Vec<Element> = x
        .terms()
        .par_iter()
        .map(|(d, c)| {
            let mut out = Element::zero();
            let d = d.with_ordered(false);
            for (e, k) in y.iter() {
                let e = e.with_ordered(false);
                for (pairs, w) in leg_pairings(&d, &e) {
                    let p = pairs.len();
                    if odd_only && p % 2 == 0 {
                        continue;
                    }
                    let scale = if odd_only { pow2_inv(p - 1) } else { pow2_inv(p) };
                    let Ok(g) = d.glue(&e, &pairs) else { continue };
                    out.add_diagram(&g, c * k * qi(w) * scale);
                }
            }
            out
        })
        .collect();
    let mut out = Element::zero();
    for p in parts {
        out.add_assign(&p);
    }
    out
}

/// Star product on `A`.
pub fn star(x: &Element, y: &Element) -> Element {
    glue_sum(x, y, false)
}

/// `[x, y]_⋆` summed over odd gluings.
pub fn bracket(x: &Element, y: &Element) -> Element {
    glue_sum(x, y, true)
}

/// Symmetrization `A → A^<`: average over all leg orders.
pub fn chi(x: &Element) -> Element {
    let mut out = Element::zero();
    for (d, c) in x.iter() {
        let e = d.num_legs();
        let perms = permutations(e);
        let w = c / Q::from_integer(perms.len().into());
        let base = d.with_ordered(true);
        for perm in perms {
            out.add_diagram(&base.permute_legs(&perm), w.clone());
        }
    }
    out
}

/// Partial matchings `{(i, j) : i < j}` of `0..labels.len()` with nonzero
/// `∏ ω(l_i, l_j)`.
fn ordered_matchings(d: &Diagram) -> Vec<(Vec<(usize, usize)>, i64)> {
    fn rec(
        d: &Diagram,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        w: i64,
        out: &mut Vec<(Vec<(usize, usize)>, i64)>,
    ) {
        let Some(i) = used.iter().position(|u| !u) else {
            out.push((cur.clone(), w));
            return;
        };
        used[i] = true;
        rec(d, used, cur, w, out);
        for j in i + 1..d.num_legs() {
            if used[j] {
                continue;
            }
            let o = omega_label(d.legs()[i], d.legs()[j]) as i64;
            if o == 0 {
                continue;
            }
            used[j] = true;
            cur.push((i, j));
            rec(d, used, cur, w * o, out);
            cur.pop();
            used[j] = false;
        }
        used[i] = false;
    }
    let mut out = Vec::new();
    rec(d, &mut vec![false; d.num_legs()], &mut Vec::new(), 1, &mut out);
    out
}

/// Inverse symmetrization `A^< → A`: sum over leg pairings `v < w`, each
/// pair fused with weight `ω(c(v), c(w)) / 2`. Unordered input passes through.
pub fn chi_inv(x: &Element) -> Element {
    let mut out = Element::zero();
    for (d, c) in x.iter() {
        if !d.is_ordered() {
            out.add_canonical(d.clone(), c.clone());
            continue;
        }
        for (pairs, w) in ordered_matchings(d) {
            if let Some(g) = d.fuse_legs(&pairs) {
                out.add_diagram(&g.with_ordered(false), c * qi(w) * pow2_inv(pairs.len()));
            }
        }
    }
    out
}

/// A formal sum of tensor products of diagrams.
pub type Tensor = BTreeMap<(Diagram, Diagram), Q>;

fn tensor_add(t: &mut Tensor, a: Diagram, b: Diagram, c: Q) {
    if c.is_zero() {
        return;
    }
    let key = (a, b);
    let e = t.entry(key.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// Adds `c · (a ⊗ b)` for arbitrary diagrams.
pub fn tensor_add_diagrams(t: &mut Tensor, a: &Diagram, b: &Diagram, c: Q) {
    let (ca, cb) = (a.canonicalize(), b.canonicalize());
    if ca.is_zero || cb.is_zero {
        return;
    }
    let s = (ca.sign * cb.sign) as i64;
    tensor_add(t, ca.diagram, cb.diagram, c * qi(s));
}

/// `(D', D'')` for every split of the components into two families.
fn splits(d: &Diagram) -> Vec<(Diagram, Diagram)> {
    let (comp, count) = d.component_ids();
    (0..1u64 << count)
        .map(|mask| {
            let left = d.sub_diagram(|p| mask >> comp[p] & 1 == 1);
            let right = d.sub_diagram(|p| mask >> comp[p] & 1 == 0);
            (left, right)
        })
        .collect()
}

/// `Δ(D) = Σ D' ⊗ D''` over splits of the components.
pub fn coproduct(x: &Element) -> Tensor {
    let mut t = Tensor::new();
    for (d, c) in x.iter() {
        for (a, b) in splits(d) {
            tensor_add_diagrams(&mut t, &a, &b, c.clone());
        }
    }
    t
}

/// Coefficient of the empty diagram.
pub fn counit(x: &Element) -> Q {
    x.iter().filter(|(d, _)| d.is_empty()).map(|(_, c)| c.clone()).fold(Q::zero(), |a, b| a + b)
}

/// The product matching the ordering of the input: `⊔^<` or `⋆`.
pub fn product(x: &Element, y: &Element) -> Element {
    if x.is_ordered() || y.is_ordered() {
        ordered_product(x, y)
    } else {
        star(x, y)
    }
}

/// Antipode from `m ∘ (S ⊗ id) ∘ Δ = η ∘ ε`, recursively over proper
/// sub-families of components.
pub fn antipode(x: &Element) -> Element {
    let mut memo: HashMap<Diagram, Element> = HashMap::new();
    let mut out = Element::zero();
    for (d, c) in x.iter() {
        out.add_scaled(&antipode_diagram(d, &mut memo), c);
    }
    out
}

fn antipode_diagram(d: &Diagram, memo: &mut HashMap<Diagram, Element>) -> Element {
    if let Some(s) = memo.get(d) {
        return s.clone();
    }
    let result = if d.is_empty() {
        Element::from_diagram(d)
    } else {
        let (comp, count) = d.component_ids();
        let full = (1u64 << count) - 1;
        let mut acc = Element::zero();
        for mask in 0..(1u64 << count) {
            if mask == full {
                continue;
            }
            let left = d.sub_diagram(|p| mask >> comp[p] & 1 == 1);
            let right = d.sub_diagram(|p| mask >> comp[p] & 1 == 0);
            let lc = left.canonicalize();
            let s_left = antipode_diagram(&lc.diagram, memo).scale(&qi(lc.sign as i64));
            acc.add_assign(&product(&s_left, &Element::from_diagram(&right)));
        }
        acc.neg()
    };
    memo.insert(d.clone(), result.clone());
    result
}

/// Normal form of each tensor factor in `A` (ordered factors go through `χ⁻¹`).
pub fn normalize_tensor(t: &Tensor) -> Tensor {
    let quot = Quotient::global();
    let mut out = Tensor::new();
    for ((a, b), c) in t {
        let na = quot.normal_form(&Element::from_diagram(a));
        let nb = quot.normal_form(&Element::from_diagram(b));
        for (x, cx) in na.iter() {
            for (y, cy) in nb.iter() {
                tensor_add(&mut out, x.clone(), y.clone(), c * cx * cy);
            }
        }
    }
    out
}

/// `Δ(x) = x ⊗ ∅ + ∅ ⊗ x` modulo relations.
pub fn is_primitive(x: &Element) -> bool {
    let empty = if x.is_ordered() { Diagram::empty_ordered() } else { Diagram::empty() };
    let mut t = coproduct(x);
    for (d, c) in x.iter() {
        tensor_add_diagrams(&mut t, d, &empty, -c.clone());
        tensor_add_diagrams(&mut t, &empty, d, -c.clone());
    }
    normalize_tensor(&t).is_empty()
}

/// Splits into the parts of even and odd loop degree.
pub fn loop_split(x: &Element) -> (Element, Element) {
    (x.filter(|d| d.loop_degree() % 2 == 0), x.filter(|d| d.loop_degree() % 2 == 1))
}

/// Image in the tree quotient: every term with a loop is dropped.
pub fn tree_reduce(x: &Element) -> Element {
    x.filter(|d| d.loop_degree() == 0)
}

/// Smallest loop degree among the terms.
pub fn min_loop_degree(x: &Element) -> Option<usize> {
    x.iter().map(|(d, _)| d.loop_degree()).min()
}

/// Tensor `Σ (S ⊗ id)` style helpers used by the Hopf tests.
pub fn tensor_map(t: &Tensor, f: impl Fn(&Diagram) -> Element, g: impl Fn(&Diagram) -> Element) -> Tensor {
    let mut out = Tensor::new();
    for ((a, b), c) in t {
        let fa = f(a);
        let gb = g(b);
        for (x, cx) in fa.iter() {
            for (y, cy) in gb.iter() {
                tensor_add(&mut out, x.clone(), y.clone(), c * cx * cy);
            }
        }
    }
    out
}

/// `m(t)` with the product of the ambient algebra.
pub fn multiply_tensor(t: &Tensor) -> Element {
    let mut out = Element::zero();
    for ((a, b), c) in t {
        out.add_scaled(&product(&Element::from_diagram(a), &Element::from_diagram(b)), c);
    }
    out
}

/// Expands `Δ ⊗ id` or `id ⊗ Δ` into triples for coassociativity checks.
pub type Tensor3 = BTreeMap<(Diagram, Diagram, Diagram), Q>;

pub fn coproduct_left(t: &Tensor) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((a, b), c) in t {
        for ((x, y), k) in coproduct(&Element::from_diagram(a)) {
            add3(&mut out, x, y, b.clone(), c * k);
        }
    }
    out
}

pub fn coproduct_right(t: &Tensor) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((a, b), c) in t {
        for ((x, y), k) in coproduct(&Element::from_diagram(b)) {
            add3(&mut out, a.clone(), x, y, c * k);
        }
    }
    out
}

fn add3(t: &mut Tensor3, a: Diagram, b: Diagram, c: Diagram, k: Q) {
    let key = (a, b, c);
    let e = t.entry(key.clone()).or_insert_with(Q::zero);
    *e += k;
    if e.is_zero() {
        t.remove(&key);
    }
}
