//! Relations (IHX, STU-like), normal forms and quotient bases.
//!
//! IHX preserves the number of components, the loop degree and the label
//! multiset of every component. For connected diagrams this makes the span of
//! IHX rows split into closed classes: a class is the set of diagrams reachable
//! through IHX rows. Each class is echelonized on its own, the pivot of a row
//! being its largest diagram; normal forms are supported on non-pivot
//! ("standard") diagrams. Since `A` is the symmetric algebra on its connected
//! part, a disconnected diagram normalizes component by component.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;
use rayon::prelude::*;

use crate::diagram::{omega_label, Diagram, Label};
use crate::element::Element;
use crate::enumerate::{enumerate, EnumOptions};
use crate::linalg::{Echelon, SparseVec};
use crate::symplectic::SpGenerator;
use crate::{hopf, qi, Caps, Error, Result, Q};

/// The diagram `u = (h1, h2, m)`, `v = (m, h3, h4)` obtained by reattaching the
/// four half-edges around the internal edge `p-q`.
fn reattach(d: &Diagram, p: usize, q: usize, hs: [usize; 4]) -> Diagram {
    let (u, v) = (p / 3, q / 3);
    let new_pos = |h: usize| -> usize {
        let i = hs.iter().position(|&x| x == h).unwrap();
        match i {
            0 => 3 * u,
            1 => 3 * u + 1,
            2 => 3 * v + 1,
            _ => 3 * v + 2,
        }
    };
    let mut partner = d.partner.clone();
    let moved = |x: usize| hs.contains(&x);
    for &h in &hs {
        let t = d.partner[h] as usize;
        let nh = new_pos(h);
        let nt = if moved(t) { new_pos(t) } else { t };
        partner[nh] = nt as u16;
        partner[nt] = nh as u16;
    }
    partner[3 * u + 2] = (3 * v) as u16;
    partner[3 * v] = (3 * u + 2) as u16;
    Diagram { partner, legs: d.legs.clone(), ordered: d.ordered }
}

/// One IHX row per internal edge joining two distinct vertices:
/// `D(a,b|c,d) − D(a,c|b,d) + D(b,c|a,d)`.
pub fn ihx_rows_of(d: &Diagram) -> Vec<Element> {
    let n = d.internal_degree();
    let mut rows = Vec::new();
    for p in 0..3 * n {
        let q = d.partner[p] as usize;
        if q >= 3 * n || q <= p || p / 3 == q / 3 {
            continue;
        }
        let (u, v) = (p / 3, q / 3);
        let a = 3 * u + (p % 3 + 1) % 3;
        let b = 3 * u + (p % 3 + 2) % 3;
        let c = 3 * v + (q % 3 + 1) % 3;
        let dd = 3 * v + (q % 3 + 2) % 3;
        let mut row = Element::zero();
        row.add_diagram(&reattach(d, p, q, [a, b, c, dd]), Q::one());
        row.add_diagram(&reattach(d, p, q, [a, c, b, dd]), -Q::one());
        row.add_diagram(&reattach(d, p, q, [b, c, a, dd]), Q::one());
        if !row.is_zero() {
            rows.push(row);
        }
    }
    rows
}

/// STU-like rows `D(..x<y..) − D(..y<x..) − ω(x,y)·D(x,y fused)` for every
/// adjacent pair of legs of an ordered diagram.
pub fn stu_rows_of(d: &Diagram) -> Result<Vec<Element>> {
    if !d.ordered {
        return Err(Error::NotOrdered);
    }
    let e = d.num_legs();
    let mut rows = Vec::new();
    for i in 0..e.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..e).collect();
        perm.swap(i, i + 1);
        let mut row = Element::zero();
        row.add_diagram(d, Q::one());
        row.add_diagram(&d.permute_legs(&perm), -Q::one());
        let w = omega_label(d.legs[i], d.legs[i + 1]);
        if w != 0 {
            if let Some(g) = d.fuse_legs(&[(i, i + 1)]) {
                row.add_diagram(&g, -qi(w.into()));
            }
        }
        if !row.is_zero() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// An IHX-closed set of connected diagrams with its relation echelon.
#[derive(Debug)]
pub struct Class {
    pub members: BTreeSet<Diagram>,
    pub echelon: Echelon<Diagram>,
}

impl Class {
    fn build(seed: &Diagram) -> Class {
        let mut members = BTreeSet::new();
        let mut queue = VecDeque::new();
        let mut echelon = Echelon::new();
        members.insert(seed.clone());
        queue.push_back(seed.clone());
        while let Some(d) = queue.pop_front() {
            for row in ihx_rows_of(&d) {
                for (t, _) in row.iter() {
                    if members.insert(t.clone()) {
                        queue.push_back(t.clone());
                    }
                }
                echelon.insert(&SparseVec::from_element(&row));
            }
        }
        Class { members, echelon }
    }

    pub fn dimension(&self) -> usize {
        self.members.len() - self.echelon.rank()
    }

    pub fn standard(&self) -> impl Iterator<Item = &Diagram> {
        self.members.iter().filter(|d| !self.echelon.is_pivot(d))
    }
}

/// Memoized normal forms in `A`.
#[derive(Default)]
pub struct Quotient {
    classes: RwLock<HashMap<Diagram, Arc<Class>>>,
}

impl Quotient {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance shared by all operations.
    pub fn global() -> &'static Quotient {
        static Q: OnceLock<Quotient> = OnceLock::new();
        Q.get_or_init(Quotient::new)
    }

    pub fn clear(&self) {
        self.classes.write().unwrap().clear();
    }

    /// The IHX class of a canonical connected diagram.
    pub fn class_of(&self, d: &Diagram) -> Arc<Class> {
        if let Some(c) = self.classes.read().unwrap().get(d) {
            return c.clone();
        }
        let class = Arc::new(Class::build(d));
        let mut map = self.classes.write().unwrap();
        if let Some(c) = map.get(d) {
            return c.clone();
        }
        for m in &class.members {
            map.insert(m.clone(), class.clone());
        }
        class
    }

    pub(crate) fn insert_class(&self, class: Class) {
        let class = Arc::new(class);
        let mut map = self.classes.write().unwrap();
        for m in &class.members {
            map.insert(m.clone(), class.clone());
        }
    }

    /// Normal form of a canonical connected unordered diagram.
    pub fn normal_form_connected(&self, d: &Diagram) -> Element {
        let class = self.class_of(d);
        class.echelon.reduce(&SparseVec::unit(d.clone())).to_element()
    }

    /// Normal form of one canonical diagram of `A`.
    pub fn normal_form_diagram(&self, d: &Diagram) -> Element {
        let comps = d.connected_components();
        if comps.len() <= 1 {
            return if d.is_empty() { Element::from_diagram(d) } else { self.normal_form_connected(d) };
        }
        let mut acc: Vec<(Diagram, Q)> = vec![(Diagram::empty(), Q::one())];
        for comp in comps {
            let can = comp.canonicalize();
            let sign = if can.sign < 0 { -Q::one() } else { Q::one() };
            let nf = self.normal_form_connected(&can.diagram);
            let mut next = Vec::with_capacity(acc.len() * nf.len());
            for (a, ca) in &acc {
                for (b, cb) in nf.iter() {
                    next.push((a.disjoint_union(b), ca * cb * &sign));
                }
            }
            acc = next;
            if acc.is_empty() {
                return Element::zero();
            }
        }
        acc.into_iter().collect()
    }

    /// Normal form in `A`; ordered diagrams are first sent through `χ⁻¹`.
    pub fn normal_form(&self, x: &Element) -> Element {
        let symmetrized;
        let x = if x.is_ordered() {
            symmetrized = hopf::chi_inv(x);
            &symmetrized
        } else {
            x
        };
        let mut out = Element::zero();
        for (d, c) in x.iter() {
            out.add_scaled(&self.normal_form_diagram(d), c);
        }
        out
    }

    /// Builds every class of a full enumeration (connected diagrams).
    pub fn build_classes(&self, diagrams: &[Diagram]) {
        let missing: Vec<&Diagram> = {
            let map = self.classes.read().unwrap();
            diagrams.iter().filter(|d| !map.contains_key(*d)).collect()
        };
        // seeds sharing a class are built once: group greedily in parallel chunks
        let built: Vec<Class> = {
            let mut seen: BTreeSet<Diagram> = BTreeSet::new();
            let mut seeds = Vec::new();
            for d in missing {
                if seen.contains(d) {
                    continue;
                }
                seeds.push(d.clone());
                seen.insert(d.clone());
            }
            let classes: Vec<Class> = seeds.par_iter().map(Class::build).collect();
            let mut uniq: BTreeMap<Diagram, Class> = BTreeMap::new();
            for c in classes {
                let first = c.members.iter().next().unwrap().clone();
                uniq.entry(first).or_insert(c);
            }
            uniq.into_values().collect()
        };
        for c in built {
            self.insert_class(c);
        }
    }
}

/// Normal form through the shared memo.
pub fn normal_form(x: &Element) -> Element {
    Quotient::global().normal_form(x)
}

/// Echelon data and dimension of a connected quotient `A^c_{degree}`.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub genus: usize,
    pub degree: usize,
    pub free: Vec<Diagram>,
    pub standard: Vec<Diagram>,
    pub rank: usize,
}

impl QuotientBasis {
    pub fn dimension(&self) -> usize {
        self.standard.len()
    }

    /// Dimensions of the loop-degree graded pieces.
    pub fn loop_dimensions(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for d in &self.standard {
            *m.entry(d.loop_degree()).or_insert(0) += 1;
        }
        m
    }

    pub fn standard_with_loop(&self, pred: impl Fn(usize) -> bool) -> Vec<Diagram> {
        self.standard.iter().filter(|d| pred(d.loop_degree())).cloned().collect()
    }
}

/// Quotient basis of the connected part of `A` in one degree.
pub fn quotient_basis(genus: usize, degree: usize, caps: &Caps) -> Result<QuotientBasis> {
    let free = enumerate(genus, degree, EnumOptions::CONNECTED, caps)?;
    caps.check_rows(free.len())?;
    let quot = Quotient::global();
    quot.build_classes(&free);
    let mut standard = Vec::new();
    let mut rank = 0;
    for d in &free {
        let class = quot.class_of(d);
        if class.echelon.is_pivot(d) {
            rank += 1;
        } else {
            standard.push(d.clone());
        }
    }
    Ok(QuotientBasis { genus, degree, free, standard, rank })
}

/// Connected part of `A^<` in one degree, echelonized over IHX and
/// STU-like rows of the full ordered enumeration.
pub struct OrderedQuotient {
    pub free: Vec<Diagram>,
    pub echelon: Echelon<Diagram>,
}

impl OrderedQuotient {
    pub fn build(genus: usize, degree: usize, caps: &Caps) -> Result<OrderedQuotient> {
        if degree > 2 || genus > 3 {
            return Err(Error::CapExceeded {
                what: "ordered quotient degree/genus",
                value: degree.max(genus),
                cap: 2,
            });
        }
        let free = enumerate(genus, degree, EnumOptions::ORDERED_CONNECTED, caps)?;
        caps.check_rows(free.len())?;
        let rows: Vec<Element> = free
            .par_iter()
            .flat_map_iter(|d| {
                let mut r = ihx_rows_of(d);
                r.extend(stu_rows_of(d).expect("ordered enumeration"));
                r
            })
            .collect();
        let mut echelon = Echelon::new();
        for r in &rows {
            echelon.insert(&SparseVec::from_element(r));
        }
        Ok(OrderedQuotient { free, echelon })
    }

    pub fn dimension(&self) -> usize {
        self.free.len() - self.echelon.rank()
    }

    pub fn normal_form(&self, x: &Element) -> Element {
        self.echelon.reduce(&SparseVec::from_element(x)).to_element()
    }
}

/// Derivation action of a generator on leg labels; `ω` legs are fixed.
pub fn sp_act_element(gen: SpGenerator, x: &Element, genus: usize) -> Result<Element> {
    let mut out = Element::zero();
    for (d, c) in x.iter() {
        for (k, l) in d.legs.iter().enumerate() {
            let Label::Basis(b) = *l else { continue };
            for (image, val) in gen.act_basis(b, genus)? {
                out.add_diagram(&d.with_label(k, Label::Basis(image)), c * qi(val.into()));
            }
        }
    }
    Ok(out)
}

/// Total weight of a diagram's basis labels.
pub fn diagram_weight(d: &Diagram, genus: usize) -> Vec<i32> {
    let mut w = vec![0; genus];
    for l in &d.legs {
        if let Label::Basis(b) = l {
            for (acc, x) in w.iter_mut().zip(b.weight(genus)) {
                *acc += x;
            }
        }
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub weight: Option<Vec<i32>>,
    pub highest: bool,
}

/// Weight (if homogeneous) and whether all raising operators kill the class.
pub fn weight_and_hwv_check(x: &Element, genus: usize) -> Result<WeightReport> {
    let weights: BTreeSet<Vec<i32>> = x.iter().map(|(d, _)| diagram_weight(d, genus)).collect();
    let weight = if weights.len() == 1 { weights.into_iter().next() } else { None };
    let mut highest = true;
    for gen in SpGenerator::raising(genus) {
        if !normal_form(&sp_act_element(gen, x, genus)?).is_zero() {
            highest = false;
            break;
        }
    }
    Ok(WeightReport { weight, highest })
}

/// Smallest generator-stable subspace containing the seeds, for any vector
/// space with an `sp_2g` action given on sparse vectors.
pub fn sp_span<K, F>(seeds: &[SparseVec<K>], genus: usize, act: F) -> Echelon<K>
where
    K: Ord + Clone + Send + Sync,
    F: Fn(SpGenerator, &SparseVec<K>) -> SparseVec<K> + Sync,
{
    let gens = SpGenerator::roots(genus);
    let mut ech = Echelon::new();
    let mut frontier: Vec<SparseVec<K>> = Vec::new();
    for s in seeds {
        if let Some(r) = ech.insert(s) {
            frontier.push(r);
        }
    }
    while !frontier.is_empty() {
        let images: Vec<SparseVec<K>> = frontier
            .par_iter()
            .flat_map_iter(|v| gens.iter().map(|&g| act(g, v)).collect::<Vec<_>>())
            .collect();
        frontier.clear();
        for w in images {
            if let Some(r) = ech.insert(&w) {
                frontier.push(r);
            }
        }
    }
    ech
}

/// `sp_span` in normal-form coordinates of `A`.
pub fn sp_module_span(seeds: &[Element], genus: usize) -> Echelon<Diagram> {
    let seeds: Vec<SparseVec<Diagram>> =
        seeds.iter().map(|e| SparseVec::from_element(&normal_form(e))).collect();
    sp_span(&seeds, genus, |g, v| {
        let x = sp_act_element(g, &v.to_element(), genus).expect("labels within genus");
        SparseVec::from_element(&normal_form(&x))
    })
}

/// Columns of a linear map in normal-form coordinates.
pub fn map_columns<T: Sync>(domain: &[T], f: impl Fn(&T) -> Element + Sync) -> Vec<SparseVec<Diagram>> {
    domain.par_iter().map(|t| SparseVec::from_element(&normal_form(&f(t)))).collect()
}

/// Loop-degree parity predicate helpers.
pub fn is_even_loop(d: &Diagram) -> bool {
    d.components_loop_degrees().iter().sum::<usize>() % 2 == 0
}

impl Diagram {
    pub(crate) fn components_loop_degrees(&self) -> Vec<usize> {
        self.connected_components().iter().map(|c| c.loop_degree()).collect()
    }
}

/// `true` if every diagram of the element has even loop degree.
pub fn in_even_part(x: &Element) -> bool {
    x.iter().all(|(d, _)| is_even_loop(d))
}

/// Zero test modulo relations.
pub fn is_zero_mod_relations(x: &Element) -> bool {
    normal_form(x).is_zero()
}
