//! Enumeration of canonical decorated graphs at a fixed bidegree.

use crate::canon::{canonical_skeleton, canonicalize};
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiDigraph, Signature};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashSet};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest number of graphs a single enumeration may produce.
    pub budget: usize,
    /// Whether tadpoles (loop edges) are generated.
    pub allow_loops: bool,
    /// Smallest vertex valence kept (0 keeps everything).
    pub min_valence: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        let budget = std::env::var("GRACHS_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        EnumOptions { budget, allow_loops: false, min_valence: 0 }
    }
}

impl EnumOptions {
    pub fn with_budget(budget: usize) -> EnumOptions {
        EnumOptions { budget, ..EnumOptions::default() }
    }

    pub fn with_min_valence(self, min_valence: usize) -> EnumOptions {
        EnumOptions { min_valence, ..self }
    }
}

/// Valence of every vertex of a skeleton; a loop counts twice.
pub fn valences(n: usize, pairs: &[(u8, u8)]) -> Vec<usize> {
    let mut v = vec![0; n];
    for &(a, b) in pairs {
        v[a as usize] += 1;
        v[b as usize] += 1;
    }
    v
}

/// Canonical undirected skeleton of a graph.
pub fn skeleton_of(g: &MultiDigraph) -> Vec<(u8, u8)> {
    canonical_skeleton(g.num_vertices(), &g.skeleton_pairs())
}

fn components(n: usize, pairs: &[(u8, u8)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = n;
    for &(a, b) in pairs {
        let (x, y) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if x != y {
            parent[x] = y;
            comps -= 1;
        }
    }
    comps
}

/// All undirected multigraph skeletons with `n` vertices and `k` edges up to isomorphism.
pub fn skeletons(n: usize, k: usize, connected: bool, opts: EnumOptions) -> Result<Vec<Vec<(u8, u8)>>> {
    if n == 0 {
        return Err(Error::MalformedGraph("no vertices".into()));
    }
    let mut level: HashSet<Vec<(u8, u8)>> = HashSet::new();
    level.insert(Vec::new());
    for j in 0..k {
        let remaining = k - j - 1;
        let cur: Vec<Vec<(u8, u8)>> = level.into_iter().collect();
        let next: Vec<Vec<Vec<(u8, u8)>>> = cur
            .par_iter()
            .map(|s| {
                let mut out = Vec::new();
                for a in 0..n {
                    for b in a..n {
                        if a == b && !opts.allow_loops {
                            continue;
                        }
                        let mut t = s.clone();
                        t.push((a as u8, b as u8));
                        if connected && components(n, &t) > remaining + 1 {
                            continue;
                        }
                        out.push(canonical_skeleton(n, &t));
                    }
                }
                out
            })
            .collect();
        level = next.into_iter().flatten().collect();
        if level.len() > opts.budget.saturating_mul(64).max(1 << 20) {
            return Err(Error::Budget { what: format!("skeletons at ({n},{k})"), budget: opts.budget });
        }
    }
    let mut out: Vec<Vec<(u8, u8)>> = level
        .into_iter()
        .filter(|s| !connected || components(n, s) == 1)
        .filter(|s| valences(n, s).into_iter().all(|x| x >= opts.min_valence))
        .collect();
    out.sort();
    Ok(out)
}

/// Every decoration of one labeled skeleton admitted by `sig`, canonicalized and
/// with zero graphs removed.
pub fn decorations(n: usize, pairs: &[(u8, u8)], sig: Signature) -> BTreeSet<MultiDigraph> {
    let c = sig.colors();
    let k = pairs.len();
    let bits = k * (c + 1);
    assert!(bits < 40, "too many decoration bits");
    let total: u64 = 1 << bits;
    let chunk: u64 = 1 << 12;
    let parts: Vec<HashSet<MultiDigraph>> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|ci| {
            let mut set = HashSet::new();
            let mut edges: Vec<Edge> = Vec::with_capacity(k);
            for mask in ci * chunk..((ci + 1) * chunk).min(total) {
                edges.clear();
                let mut skip = false;
                for (j, &(a, b)) in pairs.iter().enumerate() {
                    let field = (mask >> (j * (c + 1))) & ((1 << (c + 1)) - 1);
                    let flip = field & 1 == 1;
                    if a == b && flip {
                        skip = true;
                        break;
                    }
                    let signs = (field >> 1) as u8;
                    let (t, h) = if flip { (b, a) } else { (a, b) };
                    edges.push(Edge::new(t as usize, h as usize, signs));
                }
                if skip {
                    continue;
                }
                let g = MultiDigraph::from_parts(n, c, edges.clone());
                if !g.is_oriented_in(sig.oriented) {
                    continue;
                }
                if let Some((cg, _)) = canonicalize(&g, sig.parity()) {
                    set.insert(cg);
                }
            }
            set
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// All canonical graphs with `n` vertices and `k` edges in the complex `sig`,
/// each listed once in canonical order. With `shape` only decorations of that
/// undirected skeleton (0-based pairs) are produced.
pub fn enumerate_graphs(
    n: usize,
    k: usize,
    sig: Signature,
    shape: Option<&[(u8, u8)]>,
    opts: EnumOptions,
) -> Result<Vec<MultiDigraph>> {
    let skels = match shape {
        Some(s) => {
            if s.len() != k || s.iter().any(|&(a, b)| a as usize >= n || b as usize >= n) {
                return Err(Error::MalformedGraph("shape does not match the bidegree".into()));
            }
            if sig.connected && components(n, s) != 1 {
                return Ok(Vec::new());
            }
            if valences(n, s).into_iter().any(|x| x < opts.min_valence) {
                return Ok(Vec::new());
            }
            vec![s.to_vec()]
        }
        None => skeletons(n, k, sig.connected, opts)?,
    };
    let mut all: BTreeSet<MultiDigraph> = BTreeSet::new();
    for s in &skels {
        all.extend(decorations(n, s, sig));
        if all.len() > opts.budget {
            return Err(Error::Budget { what: format!("basis at ({n},{k})"), budget: opts.budget });
        }
    }
    Ok(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let sig = Signature::new(3, 0, 0, false).unwrap();
        let gs = enumerate_graphs(2, 1, sig, None, EnumOptions::default()).unwrap();
        assert_eq!(gs.len(), 1);
    }

    #[test]
    fn connected_skeleton_counts() {
        // connected loop-free multigraphs: trees on 4 vertices (2), theta skeleton (1)
        let o = EnumOptions::default();
        assert_eq!(skeletons(4, 3, true, o).unwrap().len(), 2);
        assert_eq!(skeletons(2, 3, true, o).unwrap().len(), 1);
        // two vertices, two edges: double edge only when connected; plus nothing else
        assert_eq!(skeletons(2, 2, true, o).unwrap().len(), 1);
        // three vertices two edges disconnected allowed: path, double edge + isolated
        assert_eq!(skeletons(3, 2, false, o).unwrap().len(), 2);
        // theta-shaped graphs on 4 vertices with 5 edges and no leaves
        let o2 = o.with_min_valence(2);
        assert!(skeletons(4, 5, true, o2).unwrap().iter().all(|s| valences(4, s).iter().all(|&x| x >= 2)));
        assert_eq!(skeletons(4, 3, true, o2).unwrap().len(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let sig = Signature::new(3, 1, 0, true).unwrap();
        let r = enumerate_graphs(4, 4, sig, None, EnumOptions { budget: 5, allow_loops: false, min_valence: 0 });
        assert!(matches!(r, Err(Error::Budget { .. })));
    }
}
