//! Signed canonical forms realizing the AS relation.
//!
//! Each component is traversed breadth-first from every admissible root and
//! in both orientations at every newly reached vertex. The traversal emits a
//! code; the lexicographically smallest code wins and its labeling defines the
//! canonical representative. Two minimal labelings differ by an automorphism,
//! so minimal labelings with different orientation signs mean the diagram is
//! zero modulo AS.

use crate::diagram::Diagram;

const LEG: u32 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Canonical {
    pub diagram: Diagram,
    /// `original = sign · canonical`.
    pub sign: i8,
    pub is_zero: bool,
}

impl Canonical {
    /// Deterministic byte encoding of the canonical representative.
    pub fn key(&self) -> Vec<u8> {
        encode(&self.diagram)
    }
}

pub fn encode(d: &Diagram) -> Vec<u8> {
    let mut out = Vec::with_capacity(3 + 2 * d.partner.len() + 2 * d.legs.len());
    out.push(d.ordered as u8);
    out.extend_from_slice(&(d.legs.len() as u16).to_be_bytes());
    for &p in &d.partner {
        out.extend_from_slice(&p.to_be_bytes());
    }
    for l in &d.legs {
        out.extend_from_slice(&(l.code() as u16).to_be_bytes());
    }
    out
}

#[derive(Clone)]
struct State {
    /// Original vertex → (new local index, original slot for each new slot).
    vmap: Vec<Option<(usize, [u8; 3])>>,
    order: Vec<usize>,
    legs: Vec<usize>,
    code: Vec<u32>,
    sign: i8,
    /// Vertex being processed and the next new slot to emit.
    cursor: usize,
    slot: usize,
    legless_root: bool,
}

struct Leaf {
    code: Vec<u32>,
    sign: i8,
    vmap: Vec<Option<(usize, [u8; 3])>>,
    order: Vec<usize>,
    legs: Vec<usize>,
}

struct Search<'a> {
    d: &'a Diagram,
    n: usize,
    best: Option<Vec<u32>>,
    signs: (bool, bool),
    leaf: Option<Leaf>,
}

impl<'a> Search<'a> {
    fn leg_token(&self, k: usize) -> u32 {
        if self.d.ordered {
            LEG | ((k as u32) << 16) | self.d.legs[k].code()
        } else {
            LEG | self.d.legs[k].code()
        }
    }

    /// True if `code` is already lexicographically worse than the best leaf.
    fn pruned(&self, code: &[u32]) -> bool {
        match &self.best {
            None => false,
            Some(best) => {
                let m = code.len().min(best.len());
                code[..m] > best[..m]
            }
        }
    }

    fn discover(&mut self, mut st: State, v: usize, entry_slot: usize) {
        let k = entry_slot as u8;
        let rot = [k, (k + 1) % 3, (k + 2) % 3];
        let refl = [k, (k + 2) % 3, (k + 1) % 3];
        let idx = st.order.len();
        st.order.push(v);
        let mut alt = st.clone();
        st.vmap[v] = Some((idx, rot));
        alt.vmap[v] = Some((idx, refl));
        alt.sign = -alt.sign;
        self.run(st);
        self.run(alt);
    }

    fn run(&mut self, mut st: State) {
        loop {
            if self.pruned(&st.code) {
                return;
            }
            if st.cursor >= st.order.len() {
                self.finish(st);
                return;
            }
            let v = st.order[st.cursor];
            let start = if st.cursor == 0 && st.legless_root { 0 } else { 1 };
            if st.slot < start {
                st.slot = start;
            }
            if st.slot >= 3 {
                st.cursor += 1;
                st.slot = 0;
                continue;
            }
            let (_, perm) = st.vmap[v].expect("processed vertex is mapped");
            let port = 3 * v + perm[st.slot] as usize;
            st.slot += 1;
            let q = self.d.partner[port] as usize;
            if q >= 3 * self.n {
                let k = q - 3 * self.n;
                st.code.push(self.leg_token(k));
                st.legs.push(k);
                continue;
            }
            let w = q / 3;
            match st.vmap[w] {
                Some((idx, perm_w)) => {
                    let t = perm_w.iter().position(|&s| s as usize == q % 3).unwrap();
                    st.code.push((3 * idx + t) as u32);
                }
                None => {
                    st.code.push((3 * st.order.len()) as u32);
                    self.discover(st, w, q % 3);
                    return;
                }
            }
        }
    }

    fn finish(&mut self, st: State) {
        let better = match &self.best {
            None => true,
            Some(best) => st.code < *best,
        };
        if better {
            self.best = Some(st.code.clone());
            self.signs = (false, false);
            self.leaf = Some(Leaf {
                code: st.code,
                sign: st.sign,
                vmap: st.vmap,
                order: st.order,
                legs: st.legs,
            });
            if st.sign > 0 {
                self.signs.0 = true;
            } else {
                self.signs.1 = true;
            }
        } else if self.best.as_deref() == Some(&st.code[..]) {
            if st.sign > 0 {
                self.signs.0 = true;
            } else {
                self.signs.1 = true;
            }
        }
    }
}

struct ComponentForm {
    leaf: Leaf,
    zero: bool,
}

fn canonical_component(d: &Diagram, comp: &[usize], c: usize) -> ComponentForm {
    let n = d.internal_degree();
    let e = d.legs.len();
    let mut search = Search { d, n, best: None, signs: (false, false), leaf: None };
    let fresh = State {
        vmap: vec![None; n],
        order: Vec::new(),
        legs: Vec::new(),
        code: Vec::new(),
        sign: 1,
        cursor: 0,
        slot: 0,
        legless_root: false,
    };
    let legs: Vec<usize> = (0..e).filter(|&k| comp[3 * n + k] == c).collect();
    if legs.is_empty() {
        let verts: Vec<usize> = (0..n).filter(|&v| comp[3 * v] == c).collect();
        for &v in &verts {
            for s in 0..3 {
                let mut st = fresh.clone();
                st.legless_root = true;
                search.discover(st, v, s);
            }
        }
    } else {
        let min_tok = legs.iter().map(|&k| search.leg_token(k)).min().unwrap();
        for &k in &legs {
            if search.leg_token(k) != min_tok {
                continue;
            }
            let mut st = fresh.clone();
            st.code.push(min_tok);
            st.legs.push(k);
            let q = d.partner[3 * n + k] as usize;
            if q >= 3 * n {
                let k2 = q - 3 * n;
                st.code.push(search.leg_token(k2));
                st.legs.push(k2);
                search.finish(st);
            } else {
                st.code.push(0);
                search.discover(st, q / 3, q % 3);
            }
        }
    }
    let zero = search.signs.0 && search.signs.1;
    ComponentForm { leaf: search.leaf.expect("component has a root"), zero }
}

impl Diagram {
    /// Signed canonical representative modulo AS and isomorphism.
    pub fn canonicalize(&self) -> Canonical {
        let d = self;
        let n = d.internal_degree();
        let e = d.legs.len();
        let (comp, count) = d.component_ids();
        let mut forms: Vec<ComponentForm> =
            (0..count).map(|c| canonical_component(d, &comp, c)).collect();
        let is_zero = forms.iter().any(|f| f.zero);
        let sign = forms.iter().map(|f| f.leaf.sign).product();
        forms.sort_by(|a, b| a.leaf.code.cmp(&b.leaf.code));

        let mut map = vec![0usize; d.partner.len()];
        let mut offset = 0;
        let mut next_leg = 0;
        for f in &forms {
            for &v in &f.leaf.order {
                let (idx, perm) = f.leaf.vmap[v].unwrap();
                for (s, &orig) in perm.iter().enumerate() {
                    map[3 * v + orig as usize] = 3 * (offset + idx) + s;
                }
            }
            offset += f.leaf.order.len();
            for &k in &f.leaf.legs {
                let new_k = if d.ordered { k } else { next_leg };
                map[3 * n + k] = 3 * n + new_k;
                next_leg += 1;
            }
        }
        debug_assert_eq!(offset, n);
        debug_assert_eq!(next_leg, e);
        let mut partner = vec![0u16; d.partner.len()];
        let mut legs = d.legs.clone();
        for (p, &q) in d.partner.iter().enumerate() {
            partner[map[p]] = map[q as usize] as u16;
        }
        for k in 0..e {
            legs[map[3 * n + k] - 3 * n] = d.legs[k];
        }
        Canonical { diagram: Diagram { partner, legs, ordered: d.ordered }, sign, is_zero }
    }

    /// True if this diagram is its own canonical representative.
    pub fn is_canonical(&self) -> bool {
        let c = self.canonicalize();
        c.sign == 1 && c.diagram == *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Label;

    fn a(i: u8) -> Label {
        Label::alpha(i)
    }

    #[test]
    fn tadpole_is_zero() {
        // vertex (leg, t, t)
        let d = Diagram::from_parts(vec![3, 2, 1, 0], vec![a(1)], false).unwrap();
        assert!(d.canonicalize().is_zero);
    }

    #[test]
    fn theta_is_nonzero() {
        let c = Diagram::theta().canonicalize();
        assert!(!c.is_zero);
    }

    #[test]
    fn y_rotation_and_reflection() {
        let y1 = Diagram::y(a(1), a(2), a(3)).canonicalize();
        let y2 = Diagram::y(a(2), a(3), a(1)).canonicalize();
        let y3 = Diagram::y(a(2), a(1), a(3)).canonicalize();
        assert_eq!(y1.diagram, y2.diagram);
        assert_eq!(y1.sign, y2.sign);
        assert_eq!(y1.diagram, y3.diagram);
        assert_eq!(y1.sign, -y3.sign);
        assert!(Diagram::y(a(1), a(1), a(2)).canonicalize().is_zero);
    }

    #[test]
    fn idempotent() {
        let h = Diagram::h(a(1), a(2), a(3), a(1));
        let c = h.canonicalize();
        let c2 = c.diagram.canonicalize();
        assert_eq!(c2.diagram, c.diagram);
        assert_eq!(c2.sign, 1);
    }
}
