//! Exhaustive enumeration of canonical diagrams by (genus, internal degree).

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::diagram::{Diagram, Label};
use crate::symplectic::basis;
use crate::{Caps, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnumOptions {
    pub connected: bool,
    pub ordered: bool,
}

impl EnumOptions {
    pub const CONNECTED: EnumOptions = EnumOptions { connected: true, ordered: false };
    pub const ALL: EnumOptions = EnumOptions { connected: false, ordered: false };
    pub const ORDERED_CONNECTED: EnumOptions = EnumOptions { connected: true, ordered: true };
}

fn matchings(ports: usize, first_leg: usize, out: &mut Vec<Vec<u16>>) {
    fn rec(partner: &mut Vec<u16>, first_leg: usize, out: &mut Vec<Vec<u16>>) {
        let free = partner.iter().position(|&q| q == u16::MAX);
        let Some(p) = free else {
            out.push(partner.clone());
            return;
        };
        for q in p + 1..partner.len() {
            if partner[q] != u16::MAX {
                continue;
            }
            // no struts, no tadpoles
            if p >= first_leg && q >= first_leg {
                continue;
            }
            if q < first_leg && p / 3 == q / 3 {
                continue;
            }
            partner[p] = q as u16;
            partner[q] = p as u16;
            rec(partner, first_leg, out);
            partner[p] = u16::MAX;
            partner[q] = u16::MAX;
        }
    }
    let mut partner = vec![u16::MAX; ports];
    rec(&mut partner, first_leg, out);
}

/// Strut-free, tadpole-free diagram shapes with `legs` legs, all labeled by a
/// placeholder, one representative per isomorphism class (orientation ignored).
pub fn topologies(degree: usize, legs: usize, connected: bool) -> Vec<Diagram> {
    if (3 * degree + legs) % 2 != 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    matchings(3 * degree + legs, 3 * degree, &mut raw);
    let shapes: BTreeSet<Diagram> = raw
        .into_par_iter()
        .filter_map(|partner| {
            let d = Diagram { partner, legs: vec![Label::Omega; legs], ordered: false };
            if connected && !d.is_connected() {
                return None;
            }
            Some(d.canonicalize().diagram)
        })
        .collect();
    shapes.into_iter().collect()
}

/// Largest leg count a strut-free diagram of this degree can have.
pub fn max_legs(degree: usize, connected: bool) -> usize {
    if connected {
        degree + 2
    } else {
        3 * degree
    }
}

/// All nonzero canonical diagrams with basis labels, sorted.
pub fn enumerate(genus: usize, degree: usize, opts: EnumOptions, caps: &Caps) -> Result<Vec<Diagram>> {
    caps.check_degree(degree)?;
    caps.check_genus(genus)?;
    if degree == 0 {
        let d = if opts.ordered { Diagram::empty_ordered() } else { Diagram::empty() };
        return Ok(vec![d]);
    }
    let mut out = BTreeSet::new();
    for legs in 0..=max_legs(degree, opts.connected) {
        out.extend(enumerate_legs(genus, degree, legs, opts));
    }
    Ok(out.into_iter().collect())
}

/// Nonzero canonical diagrams with exactly `legs` legs.
pub fn enumerate_legs(genus: usize, degree: usize, legs: usize, opts: EnumOptions) -> Vec<Diagram> {
    let labels: Vec<Label> = basis(genus).into_iter().map(Label::Basis).collect();
    if legs > 0 && labels.is_empty() {
        return Vec::new();
    }
    let shapes = topologies(degree, legs, opts.connected);
    let unordered: BTreeSet<Diagram> = shapes
        .par_iter()
        .flat_map_iter(|shape| {
            let mut found = BTreeSet::new();
            let mut idx = vec![0usize; legs];
            loop {
                let d = shape.with_labels(idx.iter().map(|&i| labels[i]).collect());
                if opts.ordered {
                    // repeated labels can be AS-zero unordered yet nonzero once legs are ordered
                    found.insert(d);
                } else {
                    let can = d.canonicalize();
                    if !can.is_zero {
                        found.insert(can.diagram);
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == legs {
                        return found;
                    }
                    idx[pos] += 1;
                    if idx[pos] < labels.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        })
        .collect();
    if !opts.ordered {
        return unordered.into_iter().collect();
    }
    let ordered: BTreeSet<Diagram> = unordered
        .par_iter()
        .flat_map_iter(|d| {
            let base = d.with_ordered(true);
            let mut found = BTreeSet::new();
            for perm in permutations(legs) {
                let can = base.permute_legs(&perm).canonicalize();
                if !can.is_zero {
                    found.insert(can.diagram);
                }
            }
            found
        })
        .collect();
    ordered.into_iter().collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}
