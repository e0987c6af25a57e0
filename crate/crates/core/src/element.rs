//! Rational linear combinations of canonical diagrams.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::Diagram;
use crate::Q;

/// A finite sum `Σ c_D · D` over canonical diagrams. Whether it lives in the
/// ordered or the symmetrized space is carried by the diagrams themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Diagram, Q>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    /// The empty diagram of `A`.
    pub fn one() -> Self {
        Element::from_diagram(&Diagram::empty())
    }

    /// The empty diagram of `A^<`.
    pub fn one_ordered() -> Self {
        Element::from_diagram(&Diagram::empty_ordered())
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        let mut e = Element::zero();
        e.add_diagram(d, Q::one());
        e
    }

    pub fn term(d: &Diagram, c: Q) -> Self {
        let mut e = Element::zero();
        e.add_diagram(d, c);
        e
    }

    /// Adds `c · d`, canonicalizing `d` first. AS-zero diagrams are dropped.
    pub fn add_diagram(&mut self, d: &Diagram, c: Q) {
        if c.is_zero() {
            return;
        }
        let can = d.canonicalize();
        if can.is_zero {
            return;
        }
        let c = if can.sign < 0 { -c } else { c };
        self.add_canonical(can.diagram, c);
    }

    /// Adds `c · d` for a diagram already in canonical form.
    pub fn add_canonical(&mut self, d: Diagram, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (d, c) in &other.terms {
            self.add_canonical(d.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Element, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (d, c) in &other.terms {
            self.add_canonical(d.clone(), c * s);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, s: &Q) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Diagram, &Q)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> &BTreeMap<Diagram, Q> {
        &self.terms
    }

    /// Coefficient of a diagram, canonicalized with its sign.
    pub fn coefficient(&self, d: &Diagram) -> Q {
        let can = d.canonicalize();
        if can.is_zero {
            return Q::zero();
        }
        let c = self.terms.get(&can.diagram).cloned().unwrap_or_else(Q::zero);
        if can.sign < 0 {
            -c
        } else {
            c
        }
    }

    /// Applies a linear map given on diagrams.
    pub fn map_linear(&self, mut f: impl FnMut(&Diagram) -> Element) -> Element {
        let mut out = Element::zero();
        for (d, c) in &self.terms {
            out.add_scaled(&f(d), c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&Diagram) -> bool) -> Element {
        Element {
            terms: self.terms.iter().filter(|(d, _)| keep(d)).map(|(d, c)| (d.clone(), c.clone())).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|d| d.internal_degree()).max().unwrap_or(0)
    }

    pub fn is_ordered(&self) -> bool {
        self.terms.keys().any(|d| d.is_ordered())
    }
}

impl FromIterator<(Diagram, Q)> for Element {
    fn from_iter<I: IntoIterator<Item = (Diagram, Q)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (d, c) in iter {
            e.add_diagram(&d, c);
        }
        e
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::print_element(self))
    }
}
