//! Bigraded cohomology of the graph complexes through exact sparse matrices.

use crate::complex::{differential_graph, upsilon_terms};
use crate::enumerate::{enumerate_graphs, EnumOptions};
use crate::error::{Error, Result};
use crate::graph::{MultiDigraph, Signature};
use crate::linalg::{self, ColumnSpace, Solution, SparseMatrix, SparseVec, PRIME};
use crate::rational::{q, Q};
use crate::vector::GraphVector;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Canonical graphs spanning one `(N, k)` component, in canonical order.
#[derive(Clone, Debug)]
pub struct BidegreeBasis {
    pub sig: Signature,
    pub n: usize,
    pub k: usize,
    graphs: Vec<MultiDigraph>,
    index: HashMap<MultiDigraph, usize>,
}

impl BidegreeBasis {
    pub fn new(sig: Signature, n: usize, k: usize, opts: EnumOptions) -> Result<BidegreeBasis> {
        let graphs = if n == 0 { Vec::new() } else { enumerate_graphs(n, k, sig, None, opts)? };
        Ok(BidegreeBasis::from_graphs(sig, n, k, graphs))
    }

    pub fn from_graphs(sig: Signature, n: usize, k: usize, graphs: Vec<MultiDigraph>) -> BidegreeBasis {
        let index = graphs.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        BidegreeBasis { sig, n, k, graphs, index }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[MultiDigraph] {
        &self.graphs
    }

    pub fn index_of(&self, g: &MultiDigraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn coordinates(&self, a: &GraphVector) -> Result<SparseVec<Q>> {
        let mut out: SparseVec<Q> = a
            .terms()
            .map(|(g, x)| {
                self.index_of(g)
                    .map(|i| (i, x.clone()))
                    .ok_or_else(|| Error::MalformedGraph(format!("{g} is not in the ({}, {}) basis", self.n, self.k)))
            })
            .collect::<Result<_>>()?;
        out.sort_by_key(|e| e.0);
        Ok(out)
    }

    pub fn vector(&self, coords: &BTreeMap<usize, Q>) -> GraphVector {
        let mut v = GraphVector::zero(self.sig);
        for (i, x) in coords {
            v.add_canonical(self.graphs[*i].clone(), x.clone());
        }
        v
    }
}

/// `δ` restricted to one bidegree; rows are indexed by the sorted image support.
#[derive(Clone, Debug)]
pub struct DeltaMatrix {
    pub source: BidegreeBasis,
    pub targets: Vec<MultiDigraph>,
    pub matrix: SparseMatrix,
}

/// Integer images `δ(g)` of canonical graphs, computed in parallel.
pub fn delta_columns(sig: Signature, graphs: &[MultiDigraph]) -> Vec<HashMap<MultiDigraph, i64>> {
    let ups = upsilon_terms(sig);
    graphs.par_iter().map(|g| differential_graph(g, sig, &ups)).collect()
}

fn assemble(source: BidegreeBasis, images: Vec<HashMap<MultiDigraph, i64>>, extra: &[MultiDigraph]) -> DeltaMatrix {
    let mut support: BTreeSet<MultiDigraph> = images.iter().flat_map(|m| m.keys().cloned()).collect();
    support.extend(extra.iter().cloned());
    let targets: Vec<MultiDigraph> = support.into_iter().collect();
    let row: HashMap<&MultiDigraph, usize> = targets.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let cols = images
        .iter()
        .map(|m| m.iter().map(|(g, x)| (row[g], *x)).collect::<Vec<_>>())
        .collect();
    let matrix = SparseMatrix::from_integer_columns(targets.len(), cols);
    DeltaMatrix { source, targets, matrix }
}

pub fn delta_matrix(sig: Signature, n: usize, k: usize, opts: EnumOptions) -> Result<DeltaMatrix> {
    let source = BidegreeBasis::new(sig, n, k, opts)?;
    let images = delta_columns(sig, source.graphs());
    Ok(assemble(source, images, &[]))
}

/// Matrix of `δ` from `source` into the coordinates of `target`.
pub fn delta_between(source: &BidegreeBasis, target: &BidegreeBasis) -> Result<SparseMatrix> {
    let images = delta_columns(source.sig, source.graphs());
    let cols = images
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|(g, x)| {
                    target
                        .index_of(&g)
                        .map(|i| (i, x))
                        .ok_or_else(|| Error::Verification(format!("δ left the target basis at {g}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_integer_columns(target.len(), cols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub sig: Signature,
    pub n: usize,
    pub k: usize,
    pub basis_size: usize,
    pub dim_kernel: usize,
    pub rank_image_in: usize,
    pub cohomology_dim: usize,
    /// Both ranks recomputed over `F_p`, `p = 2^61 − 1`, agree with the exact ones.
    pub modular_check: bool,
    /// A cocycle that is not a coboundary, when one was requested and exists.
    pub witness: Option<GraphVector>,
}

/// Dimension report for `H` at `(N, k)`: `dim ker δ|(N,k) − rank δ|(N−1,k−1)`.
pub fn cohomology(sig: Signature, n: usize, k: usize, opts: EnumOptions, want_witness: bool) -> Result<CohomologyReport> {
    let out = delta_matrix(sig, n, k, opts)?;
    let rank_out = linalg::rank(&out.matrix);
    let (rank_in, mod_in, inc) = if n >= 2 && k >= 1 {
        let inc_src = BidegreeBasis::new(sig, n - 1, k - 1, opts)?;
        let m = delta_between(&inc_src, &out.source)?;
        let r = linalg::rank(&m);
        (r, linalg::rank_mod_p(&m, PRIME), Some(m))
    } else {
        (0, 0, None)
    };
    let modular_check = rank_out == linalg::rank_mod_p(&out.matrix, PRIME) && mod_in == rank_in;
    let dim_kernel = out.source.len() - rank_out;
    let cohomology_dim = dim_kernel - rank_in;
    let mut witness = None;
    if want_witness && cohomology_dim > 0 {
        let kernel = linalg::kernel(&out.matrix);
        let space = inc.as_ref().map(ColumnSpace::of);
        for v in kernel {
            let coords: SparseVec<Q> = v.iter().map(|(i, x)| (*i, x.clone())).collect();
            if space.as_ref().is_none_or(|s| !s.contains(&coords)) {
                witness = Some(out.source.vector(&v));
                break;
            }
        }
    }
    Ok(CohomologyReport {
        sig,
        n,
        k,
        basis_size: out.source.len(),
        dim_kernel,
        rank_image_in: rank_in,
        cohomology_dim,
        modular_check,
        witness,
    })
}

pub fn cohomology_dim(sig: Signature, n: usize, k: usize, opts: EnumOptions) -> Result<usize> {
    Ok(cohomology(sig, n, k, opts, false)?.cohomology_dim)
}

/// `δ` through the integer fast path, merged into a complex element.
pub fn apply_delta(a: &GraphVector) -> GraphVector {
    let sig = a.signature();
    let graphs: Vec<MultiDigraph> = a.graphs().cloned().collect();
    let images = delta_columns(sig, &graphs);
    let mut out = GraphVector::zero(sig);
    for ((_, x), img) in a.terms().zip(images) {
        for (g, c) in img {
            out.add_canonical(g, x * q(c));
        }
    }
    out
}

/// A linear functional on graphs vanishing on every coboundary from the
/// relevant bidegree and taking the value 1 on the tested element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub functional: Vec<(MultiDigraph, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coboundary {
    /// `δ(witness) = a`.
    Exact { witness: GraphVector },
    /// No preimage exists; see the certificate.
    NotExact { certificate: Certificate },
}

/// Decides whether `a` is `δ` of something in the signature's `(N−1, k−1)` basis.
pub fn is_coboundary(a: &GraphVector, opts: EnumOptions) -> Result<Coboundary> {
    let sig = a.signature();
    let Some((n, k)) = a.bidegree()? else {
        return Ok(Coboundary::Exact { witness: GraphVector::zero(sig) });
    };
    if n < 2 || k < 1 {
        return Ok(Coboundary::NotExact { certificate: certificate_for(a) });
    }
    let source = BidegreeBasis::new(sig, n - 1, k - 1, opts)?;
    let images = delta_columns(sig, source.graphs());
    let extra: Vec<MultiDigraph> = a.graphs().cloned().collect();
    let d = assemble(source, images, &extra);
    let row: HashMap<&MultiDigraph, usize> = d.targets.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let b: SparseVec<Q> = a.terms().map(|(g, x)| (row[g], x.clone())).collect();
    match linalg::solve(&d.matrix, &b) {
        Solution::Feasible(x) => {
            let witness = d.source.vector(&x);
            if apply_delta(&witness) != *a {
                return Err(Error::Verification("δ(witness) differs from the input".into()));
            }
            Ok(Coboundary::Exact { witness })
        }
        Solution::Infeasible(y) => {
            let yd = linalg::to_dense(&y, d.matrix.nrows);
            if d.matrix.left_mul_vec(&yd).iter().any(|v| !v.is_zero()) {
                return Err(Error::Verification("certificate does not annihilate the image".into()));
            }
            let by: Q = b.iter().map(|(i, x)| x * &yd[*i]).sum();
            if !by.is_one() {
                return Err(Error::Verification("certificate does not detect the input".into()));
            }
            let functional = y.into_iter().map(|(i, v)| (d.targets[i].clone(), v)).collect();
            Ok(Coboundary::NotExact { certificate: Certificate { functional } })
        }
    }
}

fn certificate_for(a: &GraphVector) -> Certificate {
    let (g, x) = a.terms().next().expect("nonzero");
    Certificate { functional: vec![(g.clone(), Q::one() / x)] }
}

/// Evaluates a certificate functional on an element.
pub fn pair(c: &Certificate, a: &GraphVector) -> Q {
    c.functional.iter().map(|(g, y)| y * a.coefficient(g)).sum()
}
