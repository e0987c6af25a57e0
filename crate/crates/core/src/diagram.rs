//! Jacobi diagrams as half-edge structures.
//!
//! A diagram with `n` internal vertices and `e` legs has `3n + e` ports. Vertex
//! `v` owns ports `3v, 3v+1, 3v+2` in its cyclic order; leg `k` is port `3n + k`.
//! `partner` is a fixed-point-free involution on ports describing the edges.
//! Ordered diagrams read the leg order off the leg index.

use std::fmt;

use crate::symplectic::{omega_basis, BasisVector, Kind};
use crate::{Error, Result};

/// A leg label: a basis vector of `H_Q` or the formal symbol `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Basis(BasisVector),
    Omega,
}

impl Label {
    pub const fn alpha(i: u8) -> Self {
        Label::Basis(BasisVector::alpha(i))
    }

    pub const fn beta(i: u8) -> Self {
        Label::Basis(BasisVector::beta(i))
    }

    pub(crate) fn code(self) -> u32 {
        match self {
            Label::Basis(b) => match b.kind {
                Kind::Alpha => b.index as u32,
                Kind::Beta => 0x100 | b.index as u32,
            },
            Label::Omega => 0xFFFF,
        }
    }

    pub fn basis(self) -> Option<BasisVector> {
        match self {
            Label::Basis(b) => Some(b),
            Label::Omega => None,
        }
    }

    pub fn check(self, genus: usize) -> Result<()> {
        match self {
            Label::Basis(b) => b.check(genus),
            Label::Omega => Ok(()),
        }
    }
}

impl From<BasisVector> for Label {
    fn from(b: BasisVector) -> Self {
        Label::Basis(b)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Basis(b) => write!(f, "{b}"),
            Label::Omega => write!(f, "w"),
        }
    }
}

/// `ω` on labels; the formal symbol pairs to zero with everything.
pub fn omega_label(x: Label, y: Label) -> i32 {
    match (x, y) {
        (Label::Basis(a), Label::Basis(b)) => omega_basis(a, b),
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    pub(crate) partner: Vec<u16>,
    pub(crate) legs: Vec<Label>,
    pub(crate) ordered: bool,
}

impl Diagram {
    /// Builds a diagram from raw port data, validating the involution.
    pub fn from_parts(partner: Vec<u16>, legs: Vec<Label>, ordered: bool) -> Result<Self> {
        let ports = partner.len();
        if ports < legs.len() || (ports - legs.len()) % 3 != 0 {
            return Err(Error::Malformed(format!(
                "{ports} ports cannot hold {} legs and trivalent vertices",
                legs.len()
            )));
        }
        for (p, &q) in partner.iter().enumerate() {
            let q = q as usize;
            if q >= ports || q == p || partner[q] as usize != p {
                return Err(Error::Malformed(format!("port {p} is not matched consistently")));
            }
        }
        Ok(Diagram { partner, legs, ordered })
    }

    pub fn empty() -> Self {
        Diagram { partner: Vec::new(), legs: Vec::new(), ordered: false }
    }

    pub fn empty_ordered() -> Self {
        Diagram { partner: Vec::new(), legs: Vec::new(), ordered: true }
    }

    /// Single vertex with cyclic order `(x, y, z)`.
    pub fn y(x: Label, y: Label, z: Label) -> Self {
        Diagram { partner: vec![3, 4, 5, 0, 1, 2], legs: vec![x, y, z], ordered: false }
    }

    /// `u = (a, m, c)`, `v = (b, d, m)` joined along `m`.
    pub fn h(a: Label, b: Label, c: Label, d: Label) -> Self {
        // u: ports 0,1,2 = a, m, c ; v: ports 3,4,5 = b, d, m ; legs 6..9 = a, b, c, d
        let partner = vec![6, 5, 8, 7, 9, 1, 0, 3, 2, 4];
        Diagram { partner, legs: vec![a, b, c, d], ordered: false }
    }

    /// `u = (x, m1, m2)`, `v = (y, m2, m1)`.
    pub fn phi(x: Label, y: Label) -> Self {
        let partner = vec![6, 5, 4, 7, 2, 1, 0, 3];
        Diagram { partner, legs: vec![x, y], ordered: false }
    }

    /// The θ graph, `u = (e1, e2, e3)`, `v = (e3, e2, e1)`.
    pub fn theta() -> Self {
        Diagram { partner: vec![5, 4, 3, 2, 1, 0], legs: Vec::new(), ordered: false }
    }

    /// A strut: two legs joined by an edge. Only ω-diagrams may contain these.
    pub fn strut(x: Label, y: Label) -> Self {
        Diagram { partner: vec![1, 0], legs: vec![x, y], ordered: false }
    }

    pub fn internal_degree(&self) -> usize {
        (self.partner.len() - self.legs.len()) / 3
    }

    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn num_ports(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn legs(&self) -> &[Label] {
        &self.legs
    }

    pub fn leg_port(&self, k: usize) -> usize {
        3 * self.internal_degree() + k
    }

    pub fn partner_of(&self, port: usize) -> usize {
        self.partner[port] as usize
    }

    /// `Some(k)` when `port` is leg `k`.
    pub fn port_leg(&self, port: usize) -> Option<usize> {
        let base = 3 * self.internal_degree();
        (port >= base).then(|| port - base)
    }

    /// The port a leg is attached to.
    pub fn leg_attachment(&self, k: usize) -> usize {
        self.partner_of(self.leg_port(k))
    }

    pub fn with_ordered(&self, ordered: bool) -> Self {
        Diagram { ordered, ..self.clone() }
    }

    pub fn with_label(&self, k: usize, label: Label) -> Self {
        let mut d = self.clone();
        d.legs[k] = label;
        d
    }

    pub fn with_labels(&self, labels: Vec<Label>) -> Self {
        debug_assert_eq!(labels.len(), self.legs.len());
        Diagram { legs: labels, ..self.clone() }
    }

    pub fn has_omega(&self) -> bool {
        self.legs.contains(&Label::Omega)
    }

    pub fn check_genus(&self, genus: usize) -> Result<()> {
        self.legs.iter().try_for_each(|l| l.check(genus))
    }

    /// Reorders legs: the new leg `i` is the old leg `perm[i]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        let n3 = 3 * self.internal_degree();
        let e = self.legs.len();
        debug_assert_eq!(perm.len(), e);
        let mut new_pos = vec![0usize; e];
        for (i, &old) in perm.iter().enumerate() {
            new_pos[old] = i;
        }
        let map = |p: usize| if p < n3 { p } else { n3 + new_pos[p - n3] };
        let mut partner = vec![0u16; self.partner.len()];
        for (p, &q) in self.partner.iter().enumerate() {
            partner[map(p)] = map(q as usize) as u16;
        }
        let legs = perm.iter().map(|&k| self.legs[k]).collect();
        Diagram { partner, legs, ordered: self.ordered }
    }

    /// Disjoint union; legs of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let (n1, n2) = (self.internal_degree(), other.internal_degree());
        let (e1, e2) = (self.legs.len(), other.legs.len());
        let n = n1 + n2;
        let map1 = |p: usize| if p < 3 * n1 { p } else { 3 * n + (p - 3 * n1) };
        let map2 = |p: usize| if p < 3 * n2 { 3 * n1 + p } else { 3 * n + e1 + (p - 3 * n2) };
        let mut partner = vec![0u16; 3 * n + e1 + e2];
        for (p, &q) in self.partner.iter().enumerate() {
            partner[map1(p)] = map1(q as usize) as u16;
        }
        for (p, &q) in other.partner.iter().enumerate() {
            partner[map2(p)] = map2(q as usize) as u16;
        }
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        Diagram { partner, legs, ordered: self.ordered && other.ordered }
    }

    /// Which component every port belongs to, and the number of components.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let ports = self.partner.len();
        let n = self.internal_degree();
        let mut comp = vec![usize::MAX; ports];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..ports {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(p) = stack.pop() {
                let visit = |x: usize, comp: &mut Vec<usize>, stack: &mut Vec<usize>| {
                    if comp[x] == usize::MAX {
                        comp[x] = count;
                        stack.push(x);
                    }
                };
                visit(self.partner[p] as usize, &mut comp, &mut stack);
                if p < 3 * n {
                    let v = p / 3;
                    for s in 0..3 {
                        visit(3 * v + s, &mut comp, &mut stack);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn num_components(&self) -> usize {
        self.component_ids().1
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// Splits into components, each keeping the relative order of its legs.
    pub fn connected_components(&self) -> Vec<Diagram> {
        let (comp, count) = self.component_ids();
        (0..count).map(|c| self.sub_diagram(|p| comp[p] == c)).collect()
    }

    /// The sub-diagram made of the components whose ports satisfy `keep`.
    /// `keep` must be constant on components.
    pub(crate) fn sub_diagram(&self, keep: impl Fn(usize) -> bool) -> Diagram {
        let n = self.internal_degree();
        let verts: Vec<usize> = (0..n).filter(|&v| keep(3 * v)).collect();
        let legs: Vec<usize> = (0..self.legs.len()).filter(|&k| keep(3 * n + k)).collect();
        let nn = verts.len();
        let mut map = vec![usize::MAX; self.partner.len()];
        for (i, &v) in verts.iter().enumerate() {
            for s in 0..3 {
                map[3 * v + s] = 3 * i + s;
            }
        }
        for (i, &k) in legs.iter().enumerate() {
            map[3 * n + k] = 3 * nn + i;
        }
        let mut partner = vec![0u16; 3 * nn + legs.len()];
        for (p, &q) in self.partner.iter().enumerate() {
            if map[p] != usize::MAX {
                partner[map[p]] = map[q as usize] as u16;
            }
        }
        let labels = legs.iter().map(|&k| self.legs[k]).collect();
        Diagram { partner, legs: labels, ordered: self.ordered }
    }

    /// Number of components containing no internal vertex.
    pub fn num_struts(&self) -> usize {
        let n3 = 3 * self.internal_degree();
        (0..self.legs.len())
            .filter(|&k| {
                let p = n3 + k;
                let q = self.partner[p] as usize;
                q >= n3 && p < q
            })
            .count()
    }

    /// First Betti number of the underlying graph.
    pub fn loop_degree(&self) -> usize {
        let n = self.internal_degree();
        let e = self.legs.len();
        let edges = self.partner.len() / 2;
        edges + self.num_components() - n - e
    }

    /// Fuses each pair of legs into a single edge, removing both legs.
    /// Returns `None` if a strut would be closed into a vertex-free circle.
    pub fn fuse_legs(&self, pairs: &[(usize, usize)]) -> Option<Diagram> {
        let n3 = 3 * self.internal_degree();
        let e = self.legs.len();
        let mut partner: Vec<usize> = self.partner.iter().map(|&q| q as usize).collect();
        let mut removed = vec![false; e];
        for &(k1, k2) in pairs {
            debug_assert!(k1 != k2 && !removed[k1] && !removed[k2]);
            let (l1, l2) = (n3 + k1, n3 + k2);
            let (p1, p2) = (partner[l1], partner[l2]);
            if p1 == l2 {
                return None;
            }
            partner[p1] = p2;
            partner[p2] = p1;
            removed[k1] = true;
            removed[k2] = true;
        }
        let mut map = vec![usize::MAX; partner.len()];
        for (p, slot) in map.iter_mut().enumerate().take(n3) {
            *slot = p;
        }
        let mut next = n3;
        let mut legs = Vec::with_capacity(e);
        for k in 0..e {
            if !removed[k] {
                map[n3 + k] = next;
                next += 1;
                legs.push(self.legs[k]);
            }
        }
        let mut out = vec![0u16; next];
        for p in 0..partner.len() {
            if map[p] != usize::MAX {
                out[map[p]] = map[partner[p]] as u16;
            }
        }
        Some(Diagram { partner: out, legs, ordered: self.ordered })
    }

    /// Glues `self` and `other` along a partial bijection of legs
    /// (`(leg of self, leg of other)` pairs). Unpaired legs keep their labels,
    /// those of `self` first.
    pub fn glue(&self, other: &Diagram, pairing: &[(usize, usize)]) -> Result<Diagram> {
        let e1 = self.legs.len();
        let mut seen_a = vec![false; e1];
        let mut seen_b = vec![false; other.legs.len()];
        for &(a, b) in pairing {
            if a >= e1 || b >= other.legs.len() || seen_a[a] || seen_b[b] {
                return Err(Error::Malformed("pairing is not a partial bijection".into()));
            }
            seen_a[a] = true;
            seen_b[b] = true;
        }
        let pairs: Vec<(usize, usize)> = pairing.iter().map(|&(a, b)| (a, e1 + b)).collect();
        self.disjoint_union(other)
            .fuse_legs(&pairs)
            .map(|d| d.with_ordered(false))
            .ok_or_else(|| Error::Malformed("gluing closes a strut into a circle".into()))
    }
}

impl Default for Diagram {
    fn default() -> Self {
        Diagram::empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u8) -> Label {
        Label::alpha(i)
    }

    #[test]
    fn constructors_validate() {
        for d in [
            Diagram::y(a(1), a(2), a(3)),
            Diagram::h(a(1), a(2), a(3), a(1)),
            Diagram::phi(a(1), a(2)),
            Diagram::theta(),
            Diagram::strut(Label::Omega, Label::Omega),
        ] {
            Diagram::from_parts(d.partner.clone(), d.legs.clone(), false).unwrap();
        }
    }

    #[test]
    fn loop_degrees() {
        assert_eq!(Diagram::y(a(1), a(2), a(3)).loop_degree(), 0);
        assert_eq!(Diagram::h(a(1), a(2), a(3), a(1)).loop_degree(), 0);
        assert_eq!(Diagram::phi(a(1), a(2)).loop_degree(), 1);
        assert_eq!(Diagram::theta().loop_degree(), 2);
        let yy = Diagram::y(a(1), a(2), a(3)).disjoint_union(&Diagram::theta());
        assert_eq!(yy.loop_degree(), 2);
    }

    #[test]
    fn components() {
        let y = Diagram::y(a(1), a(2), a(3));
        assert_eq!(y.disjoint_union(&y).connected_components().len(), 2);
        assert_eq!(Diagram::theta().connected_components().len(), 1);
        assert!(Diagram::empty().connected_components().is_empty());
    }

    #[test]
    fn fusing() {
        let y = Diagram::y(a(1), a(2), a(3));
        let h = y.glue(&y, &[(2, 2)]).unwrap();
        assert_eq!(h.internal_degree(), 2);
        assert_eq!(h.num_legs(), 4);
        assert!(h.is_connected());
        assert!(Diagram::strut(a(1), a(2)).fuse_legs(&[(0, 1)]).is_none());
        assert!(y.glue(&y, &[(0, 0), (1, 0)]).is_err());
    }
}
