//! Partial compositions of labeled graphs and the orientation morphism.

use crate::error::{Error, Result};
use crate::graph::{Edge, MultiDigraph, Signature};
use crate::vector::{GraphVector, OperadElement};
use crate::rational::Q;
use num_traits::One;

/// Calls `out` with the edge list of every reattachment term of `a ∘_i b`
/// (`i` is 0-based). Vertices of `b` occupy `i..i + |b|`, later vertices of `a`
/// shift up, edges of `a` come first and keep their order.
pub fn compose_raw(a: &MultiDigraph, i: usize, b: &MultiDigraph, mut out: impl FnMut(Vec<Edge>)) {
    let nb = b.num_vertices();
    let shift = |v: u8| -> usize {
        let v = v as usize;
        if v < i {
            v
        } else {
            v + nb - 1
        }
    };
    // positions of edge-ends sitting at vertex i: (edge index, is_head)
    let mut ends: Vec<(usize, bool)> = Vec::new();
    for (idx, e) in a.edges().iter().enumerate() {
        if e.tail as usize == i {
            ends.push((idx, false));
        }
        if e.head as usize == i {
            ends.push((idx, true));
        }
    }
    let base: Vec<Edge> = a
        .edges()
        .iter()
        .map(|e| Edge::new(shift(e.tail), shift(e.head), e.signs))
        .chain(b.edges().iter().map(|e| Edge::new(e.tail as usize + i, e.head as usize + i, e.signs)))
        .collect();
    let mut choice = vec![0usize; ends.len()];
    loop {
        let mut edges = base.clone();
        for (slot, &(idx, is_head)) in ends.iter().enumerate() {
            let target = (i + choice[slot]) as u8;
            if is_head {
                edges[idx].head = target;
            } else {
                edges[idx].tail = target;
            }
        }
        out(edges);
        // odometer
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return;
            }
            choice[pos] += 1;
            if choice[pos] < nb {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn check_pair(a: &OperadElement, b: &OperadElement) -> Result<()> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch("operad elements from different signatures".into()));
    }
    Ok(())
}

/// `a ∘_i b` with `i` 1-based, at the operad level (vertex labels kept).
pub fn partial_compose(a: &OperadElement, i: usize, b: &OperadElement) -> Result<OperadElement> {
    check_pair(a, b)?;
    if i == 0 || i > a.arity() {
        return Err(Error::IndexOutOfRange(format!("insertion at {i} into arity {}", a.arity())));
    }
    let n = a.arity() + b.arity() - 1;
    let mut out = OperadElement::zero(a.signature(), n);
    for (ga, xa) in a.terms() {
        for (gb, xb) in b.terms() {
            let c: Q = xa * xb;
            compose_raw(ga, i - 1, gb, |edges| {
                out.add_term(&MultiDigraph::from_parts(n, ga.colors(), edges), &c);
            });
        }
    }
    Ok(out)
}

/// `Σ_i a ∘_i b` at the operad level.
pub fn total_insertion(a: &OperadElement, b: &OperadElement) -> Result<OperadElement> {
    check_pair(a, b)?;
    let mut out = OperadElement::zero(a.signature(), a.arity() + b.arity() - 1);
    for i in 1..=a.arity() {
        out = out.add(&partial_compose(a, i, b)?);
    }
    Ok(out)
}

/// All `2^k` sign assignments of a new color appended after the existing ones.
pub fn orient_graph(g: &MultiDigraph) -> Vec<MultiDigraph> {
    let k = g.num_edges();
    let c = g.colors();
    (0u32..1 << k)
        .map(|mask| {
            let edges = g
                .edges()
                .iter()
                .enumerate()
                .map(|(j, e)| Edge { signs: e.signs | (((mask >> j & 1) as u8) << c), ..*e })
                .collect();
            MultiDigraph::from_parts(g.num_vertices(), c + 1, edges)
        })
        .collect()
}

fn oriented_signature(sig: Signature) -> Result<Signature> {
    Signature::new(sig.d, sig.colors() + 1, sig.oriented, sig.connected)
}

/// The orientation morphism on operad elements; the new color is not oriented.
pub fn orient(a: &OperadElement) -> Result<OperadElement> {
    let sig = oriented_signature(a.signature())?;
    let mut out = OperadElement::zero(sig, a.arity());
    for (g, x) in a.terms() {
        for h in orient_graph(g) {
            out.add_term(&h, x);
        }
    }
    Ok(out)
}

/// The orientation morphism on complex elements, landing in `c + 1` colors
/// with the same oriented directions.
pub fn orient_complex(a: &GraphVector) -> Result<GraphVector> {
    let sig = oriented_signature(a.signature())?;
    let mut out = GraphVector::zero(sig);
    for (g, x) in a.terms() {
        for h in orient_graph(g) {
            out.add_term(&h, x);
        }
    }
    Ok(out)
}

/// The labeled two-vertex generator `1→2 + (−1)^d 2→1` expanded over all colors.
pub fn upsilon_labeled(sig: Signature) -> OperadElement {
    let sig0 = Signature { colors: 0, oriented: 0, ..sig };
    let mut base = OperadElement::zero(sig0, 2);
    base.add_term(&MultiDigraph::from_parts(2, 0, vec![Edge::new(0, 1, 0)]), &Q::one());
    let s = if sig.d.is_multiple_of(2) { Q::one() } else { -Q::one() };
    base.add_term(&MultiDigraph::from_parts(2, 0, vec![Edge::new(1, 0, 0)]), &s);
    let mut cur = base;
    for _ in 0..sig.colors() {
        cur = orient(&cur).expect("color count within range");
    }
    let target = Signature { oriented: sig.oriented, connected: sig.connected, ..cur.signature() };
    cur.with_signature(target)
}
