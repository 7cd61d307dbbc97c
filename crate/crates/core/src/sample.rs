//! Random graphs and random homogeneous elements for property checks.

use crate::graph::{Edge, MultiDigraph, Signature};
use crate::rational::q;
use crate::vector::{GraphVector, OperadElement};
use rand::seq::SliceRandom;
use rand::Rng;

/// A loop-free graph on `n` vertices and `k` edges, acyclic in every direction
/// of `oriented` (bit 0 black, bit `j + 1` color `j`). Other directions are random.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, k: usize, colors: usize, oriented: u16) -> MultiDigraph {
    let orders: Vec<Vec<usize>> = (0..=colors)
        .map(|_| {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(rng);
            let mut rank = vec![0; n];
            for (i, &v) in o.iter().enumerate() {
                rank[v] = i;
            }
            rank
        })
        .collect();
    let forward = |dir: usize, u: usize, v: usize, rng: &mut R| {
        if oriented >> dir & 1 == 1 {
            orders[dir][u] < orders[dir][v]
        } else {
            rng.gen_bool(0.5)
        }
    };
    let mut edges = Vec::with_capacity(k);
    for _ in 0..k {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let (t, h) = if forward(0, u, v, rng) { (u, v) } else { (v, u) };
        let mut signs = 0u8;
        for j in 0..colors {
            if !forward(j + 1, t, h, rng) {
                signs |= 1 << j;
            }
        }
        edges.push(Edge::new(t, h, signs));
    }
    MultiDigraph::new(n, colors, edges).expect("endpoints in range")
}

/// A random element of the complex at `(n, k)` with up to `terms` graphs;
/// may be zero when every draw cancels or is rejected by the signature.
pub fn random_element<R: Rng>(rng: &mut R, sig: Signature, n: usize, k: usize, terms: usize) -> GraphVector {
    let mut out = GraphVector::zero(sig);
    for _ in 0..terms {
        for _ in 0..20 {
            let g = random_graph(rng, n, k, sig.colors(), sig.oriented);
            if sig.admits(&g) {
                out.add_term(&g, &q(rng.gen_range(-3..=3)));
                break;
            }
        }
    }
    out
}

/// A random labeled operad element with `terms` graphs, oriented as the signature asks.
pub fn random_operad_element<R: Rng>(rng: &mut R, sig: Signature, n: usize, k: usize, terms: usize) -> OperadElement {
    let mut out = OperadElement::zero(sig, n);
    for _ in 0..terms {
        let g = if n == 1 {
            MultiDigraph::new(1, sig.colors(), Vec::new()).expect("one vertex")
        } else {
            random_graph(rng, n, k, sig.colors(), sig.oriented)
        };
        out.add_term(&g, &q(rng.gen_range(1..=3)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn orientation_is_respected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for mask in [0b01u16, 0b10, 0b11] {
            for _ in 0..100 {
                let g = random_graph(&mut rng, 4, 6, 1, mask);
                assert!(g.is_oriented_in(mask), "{g}");
                assert!(!g.has_loop());
            }
        }
    }
}
