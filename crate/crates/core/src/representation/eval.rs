//! Fast evaluation of a labeled graph on parity-homogeneous inputs.

use super::Flavor;
use crate::graph::{Edge, MultiDigraph};
use crate::superalgebra::{Chart, Deriv, SuperPolynomial};
use std::collections::HashMap;

/// The derivative pair of an edge as `(head derivative, tail derivative)` for index `i`.
pub(crate) fn edge_pair(e: &Edge, flavor: Flavor, i: u8) -> (Deriv, Deriv) {
    match flavor {
        Flavor::Point => (Deriv::Zeta(i), Deriv::Xi(i)),
        Flavor::Bialgebroid if e.signs & 1 == 0 => (Deriv::P(i), Deriv::X(i)),
        Flavor::Bialgebroid => (Deriv::Zeta(i), Deriv::Xi(i)),
    }
}

pub(crate) fn edge_range(e: &Edge, flavor: Flavor, chart: Chart) -> usize {
    match edge_pair(e, flavor, 0).0 {
        Deriv::P(_) => chart.m,
        _ => chart.n,
    }
}

/// `μ_N(∏_e Δ_e(f₁ ⊗ ⋯ ⊗ f_N))` for inputs of the given parities.
/// With `zeta_only`, every factor is first stripped of monomials containing `ξ` or `p`,
/// which yields exactly the pure-`ζ` part of the result.
pub(crate) fn eval_graph(
    g: &MultiDigraph,
    flavor: Flavor,
    chart: Chart,
    fs: &[SuperPolynomial],
    parities: &[u8],
    zeta_only: bool,
) -> SuperPolynomial {
    let n = g.num_vertices();
    let edges = g.edges();
    let ranges: Vec<usize> = edges.iter().map(|e| edge_range(e, flavor, chart)).collect();
    let mut out = SuperPolynomial::zero(chart);
    if ranges.contains(&0) {
        return out;
    }
    let mut cache: HashMap<(usize, Vec<Deriv>), SuperPolynomial> = HashMap::new();
    let mut idx = vec![0usize; edges.len()];
    'outer: loop {
        let mut seq: Vec<Vec<Deriv>> = vec![Vec::new(); n];
        let mut par = parities.to_vec();
        let mut neg = false;
        for (e, &i) in edges.iter().zip(&idx) {
            let (dh, dt) = edge_pair(e, flavor, i as u8);
            for (v, d) in [(e.head as usize, dh), (e.tail as usize, dt)] {
                if d.is_odd() {
                    if par[..v].iter().map(|&p| p as u32).sum::<u32>() % 2 == 1 {
                        neg = !neg;
                    }
                    par[v] ^= 1;
                }
                seq[v].push(d);
            }
        }
        let mut acc = SuperPolynomial::one(chart);
        let mut dead = false;
        for (v, ds) in seq.into_iter().enumerate() {
            let factor = cache
                .entry((v, ds))
                .or_insert_with_key(|(v, ds)| {
                    let f = ds.iter().fold(fs[*v].clone(), |f, &d| f.derive(d));
                    if zeta_only {
                        f.filter(|m| m.xi == 0 && !m.has_p())
                    } else {
                        f
                    }
                });
            if factor.is_zero() {
                dead = true;
                break;
            }
            acc = &acc * factor;
            if acc.is_zero() {
                dead = true;
                break;
            }
        }
        if !dead {
            out = if neg { &out - &acc } else { &out + &acc };
        }
        for pos in 0..idx.len() {
            idx[pos] += 1;
            if idx[pos] < ranges[pos] {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        return out;
    }
}
