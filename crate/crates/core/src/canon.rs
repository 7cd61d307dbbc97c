//! Canonical labeling with parity-correct signs.
//!
//! Encoding: a labeled graph is encoded by the pair (vertex invariants listed in
//! label order, sorted list of `(tail, head, signs)` triples). The vertex invariant
//! is the stable color of an iterated neighborhood refinement, which does not
//! depend on labels, so the minimal encoding over all relabelings only ever uses
//! relabelings listing the invariants in increasing order. The search therefore
//! runs over permutations inside refinement cells and is exhaustive there.

use crate::graph::{Edge, MultiDigraph, Parity};

/// Returns the canonical representative and the sign `s` with `[g] = s [canon]`,
/// or `None` when `g` has an automorphism acting by `-1`.
pub fn canonicalize(g: &MultiDigraph, parity: Parity) -> Option<(MultiDigraph, i8)> {
    let edges = g.edges();
    if parity == Parity::EdgeOdd && has_duplicates(edges) {
        return None;
    }
    let n = g.num_vertices();
    let colors = refine(n, edges, false);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let cells = cells(&order, &colors);

    let mut best: Vec<Edge> = Vec::new();
    let mut have_best = false;
    let mut best_sign = 1i8;
    let mut conflict = false;
    let mut inv = vec![0usize; n];
    let mut relabeled: Vec<Edge> = Vec::with_capacity(edges.len());
    let mut sorted: Vec<Edge> = Vec::with_capacity(edges.len());

    permute_cells(&mut order, &cells, 0, &mut |order| {
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        relabeled.clear();
        relabeled.extend(
            edges
                .iter()
                .map(|e| Edge::new(inv[e.tail as usize], inv[e.head as usize], e.signs)),
        );
        sorted.clear();
        sorted.extend_from_slice(&relabeled);
        sorted.sort_unstable();
        let ord = if have_best { sorted.as_slice().cmp(best.as_slice()) } else { std::cmp::Ordering::Less };
        if ord == std::cmp::Ordering::Greater {
            return;
        }
        let sign = match parity {
            Parity::VertexOdd => permutation_sign(order),
            Parity::EdgeOdd => inversion_sign(&relabeled),
        };
        if ord == std::cmp::Ordering::Less {
            best.clear();
            best.extend_from_slice(&sorted);
            have_best = true;
            best_sign = sign;
            conflict = false;
        } else if sign != best_sign {
            conflict = true;
        }
    });
    if conflict {
        None
    } else {
        Some((g.with_edges(best), best_sign))
    }
}

/// Canonical form of an undirected loop-permitting multigraph given by `(min, max)` pairs.
pub fn canonical_skeleton(n: usize, pairs: &[(u8, u8)]) -> Vec<(u8, u8)> {
    let edges: Vec<Edge> = pairs.iter().map(|&(a, b)| Edge::new(a as usize, b as usize, 0)).collect();
    let colors = refine(n, &edges, true);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let cells = cells(&order, &colors);
    let mut best: Option<Vec<(u8, u8)>> = None;
    let mut inv = vec![0usize; n];
    let mut buf: Vec<(u8, u8)> = Vec::with_capacity(pairs.len());
    permute_cells(&mut order, &cells, 0, &mut |order| {
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        buf.clear();
        buf.extend(pairs.iter().map(|&(a, b)| {
            let (x, y) = (inv[a as usize] as u8, inv[b as usize] as u8);
            (x.min(y), x.max(y))
        }));
        buf.sort_unstable();
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    });
    best.unwrap_or_default()
}

fn has_duplicates(edges: &[Edge]) -> bool {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges[i] == edges[j] {
                return true;
            }
        }
    }
    false
}

/// Iterated refinement of vertex colors by incident half-edge types and neighbor colors.
fn refine(n: usize, edges: &[Edge], undirected: bool) -> Vec<u32> {
    let mut color = vec![0u32; n];
    let mut classes = 1usize;
    let mut sigs: Vec<(u32, Vec<(u8, u8, u32)>)> = vec![(0, Vec::new()); n];
    loop {
        for (v, s) in sigs.iter_mut().enumerate() {
            s.0 = color[v];
            s.1.clear();
        }
        for e in edges {
            let (t, h) = (e.tail as usize, e.head as usize);
            if t == h {
                sigs[t].1.push((2, e.signs, color[t]));
            } else if undirected {
                sigs[t].1.push((0, 0, color[h]));
                sigs[h].1.push((0, 0, color[t]));
            } else {
                sigs[t].1.push((0, e.signs, color[h]));
                sigs[h].1.push((1, e.signs, color[t]));
            }
        }
        for s in sigs.iter_mut() {
            s.1.sort_unstable();
        }
        let mut distinct: Vec<&(u32, Vec<(u8, u8, u32)>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let new: Vec<u32> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present") as u32)
            .collect();
        let count = distinct.len();
        color = new;
        if count == classes || count == n {
            return color;
        }
        classes = count;
    }
}

fn cells(order: &[usize], colors: &[u32]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=order.len() {
        if i == order.len() || colors[order[i]] != colors[order[start]] {
            out.push((start, i));
            start = i;
        }
    }
    out
}

fn permute_cells(order: &mut [usize], cells: &[(usize, usize)], idx: usize, visit: &mut dyn FnMut(&[usize])) {
    if idx == cells.len() {
        visit(order);
        return;
    }
    let (s, e) = cells[idx];
    permute_range(order, s, e, cells, idx, visit);
}

fn permute_range(
    order: &mut [usize],
    pos: usize,
    end: usize,
    cells: &[(usize, usize)],
    idx: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if end - pos <= 1 {
        permute_cells(order, cells, idx + 1, visit);
        return;
    }
    for i in pos..end {
        order.swap(pos, i);
        permute_range(order, pos + 1, end, cells, idx, visit);
        order.swap(pos, i);
    }
}

pub(crate) fn permutation_sign(p: &[usize]) -> i8 {
    let mut seen = [false; 256];
    let mut sign = 1i8;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub(crate) fn inversion_sign<T: Ord>(xs: &[T]) -> i8 {
    let mut inv = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, c: usize, s: &str) -> MultiDigraph {
        MultiDigraph::from_notation(n, c, s).unwrap()
    }

    #[test]
    fn transposition_sign_for_odd_vertices() {
        let (c, s) = canonicalize(&g(2, 0, "2>1"), Parity::VertexOdd).unwrap();
        let (c0, s0) = canonicalize(&g(2, 0, "1>2"), Parity::VertexOdd).unwrap();
        assert_eq!(c, c0);
        assert_eq!(s * s0, -1);
    }

    #[test]
    fn equal_parallel_edges_vanish_for_odd_edges() {
        assert!(canonicalize(&g(2, 0, "1>2 1>2"), Parity::EdgeOdd).is_none());
        assert!(canonicalize(&g(2, 0, "1>2 1>2"), Parity::VertexOdd).is_some());
    }

    #[test]
    fn directed_three_cycle_survives() {
        assert!(canonicalize(&g(3, 0, "1>2 2>3 3>1"), Parity::VertexOdd).is_some());
    }

    #[test]
    fn two_cycle_vanishes() {
        // swapping the endpoints of 1>2, 2>1 is an odd vertex permutation and
        // also exchanges the two edges
        assert!(canonicalize(&g(2, 0, "1>2 2>1"), Parity::VertexOdd).is_none());
        assert!(canonicalize(&g(2, 0, "1>2 2>1"), Parity::EdgeOdd).is_none());
        assert!(canonicalize(&g(2, 0, "1>2 2>1 1>2"), Parity::VertexOdd).is_some());
    }

    #[test]
    fn skeleton_is_label_free() {
        let a = canonical_skeleton(3, &[(0, 1), (1, 2)]);
        let b = canonical_skeleton(3, &[(0, 2), (1, 2)]);
        assert_eq!(a, b);
        assert_ne!(a, canonical_skeleton(3, &[(0, 1), (0, 1)]));
    }

    #[test]
    fn signs_of_permutations() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(inversion_sign(&[3, 1, 2]), 1);
        assert_eq!(inversion_sign(&[2, 1]), -1);
    }
}
