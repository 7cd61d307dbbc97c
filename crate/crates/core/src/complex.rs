//! The dg Lie algebra of multi-oriented graphs.

use crate::canon::canonicalize;
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiDigraph, Parity, Signature};
use crate::operad::compose_raw;
use crate::rational::{q, Q};
use crate::vector::GraphVector;
use num_traits::Zero;
use std::collections::HashMap;

/// Canonical terms of the pre-Lie product of two graphs, with integer signs.
///
/// For odd vertices the insertion at (0-based) position `i` of a graph with
/// `n2` vertices carries `(−1)^{i (n2 − 1)}`; for odd edges the concatenated
/// edge order (first graph, then second) is the reference order.
pub fn pre_lie_graphs(g1: &MultiDigraph, g2: &MultiDigraph, parity: Parity, mut out: impl FnMut(MultiDigraph, i64)) {
    let n = g1.num_vertices() + g2.num_vertices() - 1;
    let colors = g1.colors();
    for i in 0..g1.num_vertices() {
        let pos_sign: i64 = if parity == Parity::VertexOdd && (i * (g2.num_vertices() - 1)) % 2 == 1 {
            -1
        } else {
            1
        };
        compose_raw(g1, i, g2, |edges| {
            let g = MultiDigraph::from_parts(n, colors, edges);
            if let Some((c, s)) = canonicalize(&g, parity) {
                out(c, pos_sign * s as i64);
            }
        });
    }
}

fn same_sig(a: &GraphVector, b: &GraphVector) -> Result<Signature> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch("elements from different complexes".into()));
    }
    Ok(a.signature())
}

/// `a • b = Σ_i a ∘_i b` on canonical representatives.
pub fn pre_lie(a: &GraphVector, b: &GraphVector) -> Result<GraphVector> {
    let sig = same_sig(a, b)?;
    let mut out = GraphVector::zero(sig);
    for (g1, x1) in a.terms() {
        for (g2, x2) in b.terms() {
            let c = x1 * x2;
            pre_lie_graphs(g1, g2, sig.parity(), |g, s| out.add_canonical(g, &c * q(s)));
        }
    }
    Ok(out)
}

fn homogeneous_degree(a: &GraphVector) -> Result<i64> {
    Ok(a.degree()?.unwrap_or(0))
}

/// `[a, b] = a • b − (−1)^{|a||b|} b • a`.
pub fn lie_bracket(a: &GraphVector, b: &GraphVector) -> Result<GraphVector> {
    same_sig(a, b)?;
    let da = homogeneous_degree(a)?;
    let db = homogeneous_degree(b)?;
    let ab = pre_lie(a, b)?;
    let ba = pre_lie(b, a)?;
    let s = if (da * db) % 2 == 0 { q(-1) } else { q(1) };
    Ok(ab.add(&ba.scale(&s)))
}

/// The Maurer–Cartan generator: `Σ_signs 2·(1→2)` after canonicalization.
pub fn upsilon_s(sig: Signature) -> GraphVector {
    let mut out = GraphVector::zero(sig);
    let lab = crate::operad::upsilon_labeled(sig);
    for (g, x) in lab.terms() {
        if sig.admits(g) {
            out.add_term(g, x);
        }
    }
    out
}

/// Integer terms of the generator for the fast differential.
pub fn upsilon_terms(sig: Signature) -> Vec<(MultiDigraph, i64)> {
    upsilon_s(sig)
        .terms()
        .map(|(g, x)| (g.clone(), x.to_integer().try_into().expect("small coefficient")))
        .collect()
}

/// `δa = [Υ_S, a]`.
pub fn differential(a: &GraphVector) -> Result<GraphVector> {
    lie_bracket(&upsilon_s(a.signature()), a)
}

/// `δ` of a single canonical graph with integer coefficients, merged.
pub fn differential_graph(g: &MultiDigraph, sig: Signature, ups: &[(MultiDigraph, i64)]) -> HashMap<MultiDigraph, i64> {
    let mut acc: HashMap<MultiDigraph, i64> = HashMap::new();
    let parity = sig.parity();
    let dg = g.degree(sig.d as i64);
    // [Υ, g] = Υ•g − (−1)^{|g|} g•Υ
    let back: i64 = if dg % 2 == 0 { -1 } else { 1 };
    for (u, cu) in ups {
        pre_lie_graphs(u, g, parity, |h, s| *acc.entry(h).or_insert(0) += cu * s);
        pre_lie_graphs(g, u, parity, |h, s| *acc.entry(h).or_insert(0) += back * cu * s);
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// Exact test of `[a, a] = 0`, returning the defect vector `[a, a]`.
pub fn is_maurer_cartan(a: &GraphVector) -> Result<(bool, GraphVector)> {
    if let Some(dg) = a.degree()? {
        if dg != 1 {
            return Err(Error::WrongDegree { expected: 1, found: dg });
        }
    }
    let defect = lie_bracket(a, a)?;
    Ok((defect.is_zero(), defect))
}

pub fn connected_projection(a: &GraphVector) -> GraphVector {
    let mut out = GraphVector::zero(a.signature());
    for (g, x) in a.terms() {
        if g.is_connected() {
            out.add_canonical(g.clone(), x.clone());
        }
    }
    out
}

/// The three-term cocycle of the oriented complex in `d = 2`, coefficients `1, −2, 1`.
pub fn theta2() -> GraphVector {
    let sig = Signature::new(2, 0, 1, true).expect("valid");
    let terms = [
        (1, "3>1 4>1 3>2 4>2 3>4"),
        (-2, "3>1 4>1 2>3 2>4 3>4"),
        (1, "1>3 1>4 2>3 2>4 4>3"),
    ];
    GraphVector::from_terms(
        sig,
        terms.iter().map(|(c, t)| (q(*c), MultiDigraph::from_notation(4, 0, t).expect("valid"))),
    )
    .expect("oriented")
}

/// Image of the undirected triangle in the directed complex for `d = 3`.
pub fn l3() -> GraphVector {
    let sig = Signature::new(3, 0, 0, true).expect("valid");
    let mut out = GraphVector::zero(sig);
    let base = [(0usize, 1usize), (1, 2), (2, 0)];
    for mask in 0u32..8 {
        let mut sign = 1i64;
        let edges = base
            .iter()
            .enumerate()
            .map(|(j, &(a, b))| {
                if mask >> j & 1 == 1 {
                    sign = -sign;
                    Edge::new(b, a, 0)
                } else {
                    Edge::new(a, b, 0)
                }
            })
            .collect();
        out.add_term(&MultiDigraph::from_parts(3, 0, edges), &q(sign));
    }
    out
}

/// Iterates `(N, k) ↦ (k + 1, 2k − N + 1)`.
pub fn ladder_bidegree(n: i64, k: i64, steps: usize) -> (i64, i64) {
    (0..steps).fold((n, k), |(n, k), _| (k + 1, 2 * k - n + 1))
}

/// Sum of the coefficient magnitudes; used in reports.
pub fn l1_norm(a: &GraphVector) -> Q {
    a.terms().fold(Q::zero(), |acc, (_, x)| acc + num_traits::Signed::abs(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upsilon_is_twice_the_edge() {
        for d in 1..=4 {
            for c in 0..=2 {
                let sig = Signature::new(d, c, 0, false).unwrap();
                let u = upsilon_s(sig);
                assert_eq!(u.len(), 1 << c);
                assert!(u.terms().all(|(_, x)| *x == q(2)));
                assert_eq!(u.degree().unwrap(), Some(1));
            }
        }
    }

    #[test]
    fn upsilon_squares_to_zero() {
        for d in 1..=4 {
            for c in 0..=2 {
                let sig = Signature::new(d, c, 0, false).unwrap();
                let (ok, defect) = is_maurer_cartan(&upsilon_s(sig)).unwrap();
                assert!(ok, "d={d} c={c}: {defect:?}");
            }
        }
    }

    #[test]
    fn theta2_shape() {
        let t = theta2();
        assert_eq!(t.len(), 3);
        // canonical representatives carry their own relabeling signs
        let mut cs: Vec<Q> = t.terms().map(|(_, x)| num_traits::Signed::abs(x)).collect();
        cs.sort();
        assert_eq!(cs, vec![q(1), q(1), q(2)]);
        assert_eq!(t.degree().unwrap(), Some(1));
        assert!(t.graphs().all(|g| g.betti().unwrap() == 2 && g.is_oriented_in(1)));
    }

    #[test]
    fn theta2_is_closed() {
        assert!(differential(&theta2()).unwrap().is_zero());
    }

    #[test]
    fn l3_is_closed_and_nonzero() {
        let l = l3();
        assert!(!l.is_zero());
        assert_eq!(l.degree().unwrap(), Some(0));
        assert!(differential(&l).unwrap().is_zero());
    }

    #[test]
    fn ladder() {
        assert_eq!(ladder_bidegree(2, 3, 1), (4, 5));
        assert_eq!(ladder_bidegree(4, 5, 1), (6, 7));
        assert_eq!(ladder_bidegree(5, 9, 0), (5, 9));
    }

    #[test]
    fn connected_part() {
        let sig = Signature::new(3, 0, 0, false).unwrap();
        let two = MultiDigraph::from_notation(4, 0, "1>2 3>4").unwrap();
        let path = MultiDigraph::from_notation(4, 0, "1>2 2>3 3>4").unwrap();
        let v = GraphVector::from_terms(sig, [(q(1), two.clone())]).unwrap();
        assert!(connected_projection(&v).is_zero());
        let w = GraphVector::from_terms(sig, [(q(1), two), (q(3), path.clone())]).unwrap();
        let p = connected_projection(&w);
        assert_eq!(p.len(), 1);
        assert_eq!(connected_projection(&p), p);
    }

    #[test]
    fn fast_differential_matches_bracket() {
        let sig = Signature::new(3, 1, 0b01, true).unwrap();
        let g = MultiDigraph::from_notation(3, 1, "1>2+ 2>3- 1>3-").unwrap();
        let v = GraphVector::from_terms(sig, [(q(1), g.clone())]).unwrap();
        let slow = differential(&v).unwrap();
        let (c, s) = canonicalize(&g, sig.parity()).unwrap();
        let fast = differential_graph(&c, sig, &upsilon_terms(sig));
        let mut w = GraphVector::zero(sig);
        for (h, x) in fast {
            w.add_canonical(h, q(x * s as i64));
        }
        assert_eq!(w, slow);
    }
}
