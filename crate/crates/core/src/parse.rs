//! Text grammar for labels, diagrams and expressions, and the matching printer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-' term | [rational '*'] atom | rational
//! atom   := '(' expr ')' | Y[l,l,l] | H[l,l;l,l] | Phi[l,l] | Theta | Strut[l,l]
//!         | Empty | G{ ... } | func '(' expr [',' expr] ')'
//! label  := 'w' | hvector    (hvector: `3/2*a1 - b2`)
//! ```
//!
//! Diagram slots accept linear combinations of basis labels, expanded by
//! multilinearity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::{Diagram, Label};
use crate::element::Element;
use crate::hopf::{self, Tensor};
use crate::symplectic::{BasisVector, HVector};
use crate::{fmt_q, Error, Result, Q};

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let err = || Error::Parse { offset: 0, message: format!("bad rational {s:?}") };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

/// Evaluated expression: an element or a tensor (from `delta`).
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Element(Element),
    Tensor(Tensor),
}

impl Value {
    pub fn into_element(self) -> Result<Element> {
        match self {
            Value::Element(e) => Ok(e),
            Value::Tensor(_) => Err(Error::Unsupported("a tensor cannot be used here".into())),
        }
    }
}

/// A diagram slot label before multilinear expansion.
#[derive(Clone, Debug)]
enum SlotLabel {
    Omega,
    Vector(HVector),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    genus: Option<usize>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    /// An unsigned rational literal `p` or `p/q`.
    fn rational(&mut self) -> Result<Option<Q>> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let n = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if n == 0 {
            return Ok(None);
        }
        let start = self.pos;
        self.pos += n;
        let mut end = self.pos;
        let save = self.pos;
        if self.eat('/') {
            self.skip_ws();
            let rest = &self.src[self.pos..];
            let m = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            if m == 0 {
                self.pos = save;
                return self.err("expected denominator");
            }
            self.pos += m;
            end = self.pos;
        }
        let text: String = self.src[start..end].chars().filter(|c| !c.is_whitespace()).collect();
        parse_rational(&text).map(Some).or_else(|_| {
            self.pos = start;
            self.err("zero denominator")
        })
    }

    fn basis_label(&mut self, name: &str) -> Result<BasisVector> {
        let (kind, idx) = name.split_at(1);
        let idx: u8 = match idx.parse() {
            Ok(i) if i >= 1 => i,
            _ => return self.err(format!("unknown label {name:?}")),
        };
        let b = match kind {
            "a" => BasisVector::alpha(idx),
            "b" => BasisVector::beta(idx),
            _ => return self.err(format!("unknown label {name:?}")),
        };
        if let Some(g) = self.genus {
            if idx as usize > g {
                return Err(Error::GenusRange { label: name.to_string(), genus: g });
            }
        }
        Ok(b)
    }

    fn slot_label(&mut self) -> Result<SlotLabel> {
        let save = self.pos;
        if self.ident() == Some("w") {
            return Ok(SlotLabel::Omega);
        }
        self.pos = save;
        Ok(SlotLabel::Vector(self.hvector()?))
    }

    /// `3/2*a1 - b2` style linear combination.
    fn hvector(&mut self) -> Result<HVector> {
        let mut v = HVector::zero();
        let mut first = true;
        loop {
            let mut sign = Q::one();
            if self.eat('-') {
                sign = -sign;
            } else if !first && !self.eat('+') {
                break;
            }
            let c = match self.rational()? {
                Some(c) => {
                    self.expect('*')?;
                    c
                }
                None => Q::one(),
            };
            let Some(name) = self.ident() else { return self.err("expected a label") };
            let b = self.basis_label(name)?;
            v.add_term(b, sign * c);
            first = false;
            match self.peek() {
                Some('+') | Some('-') => {}
                _ => break,
            }
        }
        Ok(v)
    }

    fn slot_list(&mut self, open: char, close: char, seps: &[char]) -> Result<Vec<SlotLabel>> {
        self.expect(open)?;
        let mut out = vec![self.slot_label()?];
        for &s in seps {
            self.expect(s)?;
            out.push(self.slot_label()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = add_values(acc, self.term()?, Q::one())?;
            } else if self.peek() == Some('-') {
                self.pos += 1;
                acc = add_values(acc, self.term()?, -Q::one())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(scale_value(self.term()?, &-Q::one()));
        }
        if let Some(c) = self.rational()? {
            if self.eat('*') {
                return Ok(scale_value(self.atom()?, &c));
            }
            return Ok(Value::Element(Element::one().scale(&c)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Value> {
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(v);
        }
        let start = self.pos;
        let Some(name) = self.ident() else { return self.err("expected an expression") };
        let el = |e: Element| Ok(Value::Element(e));
        match name {
            "Y" => {
                let s = self.slot_list('[', ']', &[',', ','])?;
                el(expand(&Diagram::y(Label::Omega, Label::Omega, Label::Omega), &s))
            }
            "H" => {
                let s = self.slot_list('[', ']', &[',', ';', ','])?;
                el(expand(&Diagram::h(Label::Omega, Label::Omega, Label::Omega, Label::Omega), &s))
            }
            "Phi" => {
                let s = self.slot_list('[', ']', &[','])?;
                el(expand(&Diagram::phi(Label::Omega, Label::Omega), &s))
            }
            "Strut" => {
                let s = self.slot_list('[', ']', &[','])?;
                el(expand(&Diagram::strut(Label::Omega, Label::Omega), &s))
            }
            "Theta" => el(Element::from_diagram(&Diagram::theta())),
            "Empty" => el(Element::one()),
            "EmptyOrd" => el(Element::one_ordered()),
            "G" => self.general(),
            "star" | "bracket" | "chi" | "chiinv" | "delta" | "antipode" | "tree" => {
                self.expect('(')?;
                let a = self.expr()?;
                let b = if matches!(name, "star" | "bracket") {
                    self.expect(',')?;
                    Some(self.expr()?)
                } else {
                    None
                };
                self.expect(')')?;
                let a = a.into_element()?;
                let out = match (name, b) {
                    ("star", Some(b)) => Value::Element(hopf::star(&a, &b.into_element()?)),
                    ("bracket", Some(b)) => Value::Element(hopf::bracket(&a, &b.into_element()?)),
                    ("chi", _) => Value::Element(hopf::chi(&a)),
                    ("chiinv", _) => Value::Element(hopf::chi_inv(&a)),
                    ("delta", _) => Value::Tensor(hopf::coproduct(&a)),
                    ("antipode", _) => Value::Element(hopf::antipode(&a)),
                    ("tree", _) => Value::Element(hopf::tree_reduce(&a)),
                    _ => unreachable!(),
                };
                Ok(out)
            }
            _ => {
                self.pos = start;
                self.err(format!("unknown name {name:?}"))
            }
        }
    }

    /// `G{ iv (p1,p2,p3) ; edge p3-p4 ; leg p1=a1 ; strut s=a2,t=b2 ; order p1,p2,s,t }`.
    fn general(&mut self) -> Result<Value> {
        let at0 = self.pos;
        self.expect('{')?;
        let mut slot_of: HashMap<&'a str, usize> = HashMap::new();
        let mut names: Vec<(&'a str, usize)> = Vec::new();
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut legs: Vec<(usize, SlotLabel, usize)> = Vec::new();
        let mut order: Option<Vec<(usize, usize)>> = None;
        let mut nv = 0usize;
        let mut nstruts = 0usize;
        loop {
            if self.eat('}') {
                break;
            }
            let at = self.pos;
            let Some(kw) = self.ident() else { return self.err("expected iv, edge, leg, strut or order") };
            match kw {
                "iv" => {
                    self.expect('(')?;
                    for k in 0..3 {
                        if k > 0 {
                            self.expect(',')?;
                        }
                        let p_at = self.pos;
                        let Some(p) = self.ident() else { return self.err("expected a port name") };
                        if slot_of.insert(p, 3 * nv + k).is_some() {
                            self.pos = p_at;
                            return self.err(format!("port {p} declared twice"));
                        }
                        names.push((p, 3 * nv + k));
                    }
                    self.expect(')')?;
                    nv += 1;
                }
                "edge" => {
                    let a = self.port_ref(&slot_of)?;
                    self.expect('-')?;
                    let b = self.port_ref(&slot_of)?;
                    if a >= STRUT_END || b >= STRUT_END {
                        return Err(Error::Parse { offset: at, message: "strut ends cannot carry edges".into() });
                    }
                    edges.push((a, b, at));
                }
                "leg" => {
                    let a = self.port_ref(&slot_of)?;
                    if a >= STRUT_END {
                        return Err(Error::Parse { offset: at, message: "strut ends are labeled in the strut clause".into() });
                    }
                    self.expect('=')?;
                    legs.push((a, self.slot_label()?, at));
                }
                "strut" => {
                    for k in 0..2 {
                        if k > 0 {
                            self.expect(',')?;
                        }
                        let p_at = self.pos;
                        let Some(p) = self.ident() else { return self.err("expected a strut end name") };
                        let id = STRUT_END + 2 * nstruts + k;
                        if slot_of.insert(p, id).is_some() {
                            self.pos = p_at;
                            return self.err(format!("port {p} declared twice"));
                        }
                        self.expect('=')?;
                        legs.push((id, self.slot_label()?, p_at));
                    }
                    nstruts += 1;
                }
                "order" => {
                    // an empty list orders a legless diagram
                    let mut o = Vec::new();
                    if !matches!(self.peek(), Some(';' | '}')) {
                        o.push((self.port_ref(&slot_of)?, at));
                        while self.eat(',') {
                            o.push((self.port_ref(&slot_of)?, self.pos));
                        }
                    }
                    order = Some(o);
                }
                _ => {
                    self.pos = at;
                    return self.err(format!("unknown clause {kw:?}"));
                }
            }
            if !self.eat(';') {
                self.expect('}')?;
                break;
            }
        }
        let ports = 3 * nv;
        let total = ports + legs.len();
        let mut partner = vec![u16::MAX; total];
        let fail = |off: usize, m: String| Err(Error::Parse { offset: off, message: m });
        for &(a, b, at) in &edges {
            if a == b || partner[a] != u16::MAX || partner[b] != u16::MAX {
                return fail(at, "port used twice".into());
            }
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        // leg index follows `order` when given, else declaration order
        let leg_ports: Vec<usize> = match &order {
            Some(o) => {
                if o.len() != legs.len() {
                    return fail(o.first().map_or(at0, |x| x.1), "order must list every leg exactly once".into());
                }
                o.iter().map(|x| x.0).collect()
            }
            None => legs.iter().map(|l| l.0).collect(),
        };
        let leg_index: HashMap<usize, usize> = leg_ports.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut labels = Vec::with_capacity(legs.len());
        for (k, &p) in leg_ports.iter().enumerate() {
            let Some(l) = legs.iter().find(|l| l.0 == p) else {
                return fail(order.as_ref().map_or(0, |o| o[k].1), "order names a port without a leg".into());
            };
            if p >= STRUT_END {
                // the other end of the same strut
                let mate = leg_index[&(p ^ 1)];
                partner[ports + k] = (ports + mate) as u16;
            } else {
                if partner[p] != u16::MAX {
                    return fail(l.2, "port used twice".into());
                }
                partner[p] = (ports + k) as u16;
                partner[ports + k] = p as u16;
            }
            labels.push(l.1.clone());
        }
        if let Some((p, _)) = names.iter().find(|(_, s)| partner[*s] == u16::MAX) {
            return fail(self.pos, format!("port {p} is not connected"));
        }
        let shape = Diagram::from_parts(partner, vec![Label::Omega; labels.len()], order.is_some())?;
        Ok(Value::Element(expand(&shape, &labels)))
    }

    fn port_ref(&mut self, slots: &HashMap<&'a str, usize>) -> Result<usize> {
        let at = self.pos;
        let Some(p) = self.ident() else { return self.err("expected a port name") };
        match slots.get(p) {
            Some(&s) => Ok(s),
            None => {
                self.pos = at;
                self.err(format!("undeclared port {p}"))
            }
        }
    }
}

/// Slot ids at or above this name strut ends; `id ^ 1` is the other end.
const STRUT_END: usize = 1 << 20;

/// Multilinear expansion of slot labels into basis-labeled diagrams.
fn expand(shape: &Diagram, slots: &[SlotLabel]) -> Element {
    let mut partial: Vec<(Vec<Label>, Q)> = vec![(Vec::new(), Q::one())];
    for s in slots {
        let mut next = Vec::new();
        for (labels, c) in &partial {
            match s {
                SlotLabel::Omega => {
                    let mut l = labels.clone();
                    l.push(Label::Omega);
                    next.push((l, c.clone()));
                }
                SlotLabel::Vector(v) => {
                    for (b, k) in v.iter() {
                        let mut l = labels.clone();
                        l.push(Label::Basis(*b));
                        next.push((l, c * k));
                    }
                }
            }
        }
        partial = next;
    }
    let mut out = Element::zero();
    for (labels, c) in partial {
        out.add_diagram(&shape.with_labels(labels), c);
    }
    out
}

fn add_values(a: Value, b: Value, s: Q) -> Result<Value> {
    match (a, b) {
        (Value::Element(a), Value::Element(b)) => Ok(Value::Element(a.add(&b.scale(&s)))),
        (Value::Tensor(mut a), Value::Tensor(b)) => {
            for (k, c) in b {
                hopf::tensor_add_diagrams(&mut a, &k.0, &k.1, c * &s);
            }
            Ok(Value::Tensor(a))
        }
        _ => Err(Error::Unsupported("cannot add an element and a tensor".into())),
    }
}

fn scale_value(v: Value, s: &Q) -> Value {
    match v {
        Value::Element(e) => Value::Element(e.scale(s)),
        Value::Tensor(t) => Value::Tensor(t.into_iter().map(|(k, c)| (k, c * s)).filter(|(_, c)| !c.is_zero()).collect()),
    }
}

/// Parses and evaluates an expression; labels are checked against `genus` when given.
pub fn parse_value(text: &str, genus: Option<usize>) -> Result<Value> {
    let mut p = Parser { src: text, pos: 0, genus };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

pub fn parse_element(text: &str, genus: Option<usize>) -> Result<Element> {
    parse_value(text, genus)?.into_element()
}

/// Parses a single label: `a1`, `b3` or `w`.
pub fn parse_label(text: &str) -> Result<Label> {
    let mut p = Parser { src: text, pos: 0, genus: None };
    let l = match p.slot_label()? {
        SlotLabel::Omega => Label::Omega,
        SlotLabel::Vector(v) => {
            let mut it = v.iter();
            match (it.next(), it.next()) {
                (Some((b, c)), None) if c.is_one() => Label::Basis(*b),
                _ => return Err(Error::Parse { offset: 0, message: "expected a single basis label".into() }),
            }
        }
    };
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("unexpected trailing input");
    }
    Ok(l)
}

fn matches_shape(d: &Diagram, candidate: &Diagram) -> bool {
    let c = candidate.canonicalize();
    !c.is_zero && c.sign > 0 && &c.diagram == d
}

/// Prints a diagram using the named shapes when possible and `G{…}` otherwise.
pub fn print_diagram(d: &Diagram) -> String {
    if d.is_empty() {
        return if d.is_ordered() { "EmptyOrd".into() } else { "Empty".into() };
    }
    if !d.is_ordered() {
        let l = d.legs();
        let named = match (d.internal_degree(), l.len()) {
            (1, 3) => {
                let s: Vec<Label> = (0..3).map(|k| l[d.port_leg(d.partner_of(k)).unwrap_or(0)]).collect();
                Some((Diagram::y(s[0], s[1], s[2]), format!("Y[{},{},{}]", s[0], s[1], s[2])))
            }
            (2, 0) => Some((Diagram::theta(), "Theta".to_string())),
            (0, 2) => Some((Diagram::strut(l[0], l[1]), format!("Strut[{},{}]", l[0], l[1]))),
            _ => None,
        };
        if let Some((cand, text)) = named {
            if matches_shape(d, &cand) {
                return text;
            }
        }
        if d.internal_degree() == 2 && l.len() == 4 {
            for perm in crate::enumerate::permutations(4) {
                let cand = Diagram::h(l[perm[0]], l[perm[1]], l[perm[2]], l[perm[3]]);
                if matches_shape(d, &cand) {
                    return format!("H[{},{};{},{}]", l[perm[0]], l[perm[1]], l[perm[2]], l[perm[3]]);
                }
            }
        }
        if d.internal_degree() == 2 && l.len() == 2 {
            for (x, y) in [(l[0], l[1]), (l[1], l[0])] {
                if matches_shape(d, &Diagram::phi(x, y)) {
                    return format!("Phi[{x},{y}]");
                }
            }
        }
    }
    print_general(d)
}

fn print_general(d: &Diagram) -> String {
    let n = d.internal_degree();
    let mut parts = Vec::new();
    for v in 0..n {
        parts.push(format!("iv (p{},p{},p{})", 3 * v, 3 * v + 1, 3 * v + 2));
    }
    for p in 0..3 * n {
        let q = d.partner_of(p);
        if q < 3 * n && p < q {
            parts.push(format!("edge p{p}-p{q}"));
        }
    }
    let mut leg_names = Vec::new();
    for (k, l) in d.legs().iter().enumerate() {
        let slot = d.leg_attachment(k);
        if slot < 3 * n {
            leg_names.push(format!("p{slot}"));
            parts.push(format!("leg p{slot}={l}"));
        } else {
            let mate = slot - 3 * n;
            leg_names.push(format!("s{k}"));
            if k < mate {
                parts.push(format!("strut s{k}={l},s{mate}={}", d.legs()[mate]));
            }
        }
    }
    if d.is_ordered() {
        parts.push(format!("order {}", leg_names.join(",")));
    }
    format!("G{{ {} }}", parts.join(" ; "))
}

/// Prints `c1*D1 + c2*D2 - …` with every coefficient as `p/q`.
pub fn print_element(x: &Element) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (d, c)) in x.iter().enumerate() {
        let body = format!("{}*{}", fmt_q(&c.abs()), print_diagram(d));
        match (i, c.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}

/// Prints a tensor as `c*(D1 | D2) + …`.
pub fn print_tensor(t: &Tensor) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = t
        .iter()
        .map(|((a, b), c)| format!("{}*({} | {})", fmt_q(c), print_diagram(a), print_diagram(b)))
        .collect();
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn spec_style_examples() {
        let y = parse_element("Y[a1,a2,b3]", Some(3)).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(y.max_degree(), 1);
        let x = parse_element("3/2*Theta - H[a1,a2;a2,a1]", Some(3)).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.coefficient(&Diagram::theta()), q(3, 2));
        assert!(parse_element("bracket(Y[a1,a2,b3], Y[a2,a1,a3])", Some(3)).is_ok());
    }

    #[test]
    fn multilinear_slots() {
        let x = parse_element("Y[a1 + 2*b1, a2, b2]", None).unwrap();
        let y = parse_element("Y[a1,a2,b2] + 2*Y[b1,a2,b2]", None).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_element("Y[a1,a2,", None) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_element("Y[a1,a2,a4]", Some(3)), Err(Error::GenusRange { .. })));
        assert!(matches!(parse_element("Y[a1,a2,c1]", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn general_literal_matches_named() {
        let g = parse_element("G{ iv (p,q,r) ; leg p=a1 ; leg q=a2 ; leg r=b3 }", None).unwrap();
        assert_eq!(g, parse_element("Y[a1,a2,b3]", None).unwrap());
        let t = parse_element("G{ iv (x,y,z) ; iv (u,v,s) ; edge x-s ; edge y-v ; edge z-u }", None).unwrap();
        assert_eq!(t, parse_element("Theta", None).unwrap());
    }

    #[test]
    fn struts_in_general_literals() {
        let x = parse_element("G{ strut s=a1,t=b2 ; iv (p,q,r) ; leg p=a1 ; leg q=a2 ; leg r=a3 }", None).unwrap();
        let y = Diagram::strut(Label::alpha(1), Label::beta(2)).disjoint_union(&Diagram::y(Label::alpha(1), Label::alpha(2), Label::alpha(3)));
        assert_eq!(x, Element::from_diagram(&y));
        assert_eq!(parse_element(&print_element(&x), None).unwrap(), x);
        let o = Element::from_diagram(&y.with_ordered(true).permute_legs(&[2, 0, 4, 1, 3]));
        assert_eq!(parse_element(&print_element(&o), None).unwrap(), o);
    }

    #[test]
    fn ordered_round_trip() {
        let x = parse_element("G{ iv (p,q,r) ; leg p=a1 ; leg q=a2 ; leg r=b1 ; order q,p,r }", None).unwrap();
        assert!(x.is_ordered());
        assert_eq!(parse_element(&print_element(&x), None).unwrap(), x);
    }
}
