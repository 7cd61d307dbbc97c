//! The pair `(Θ₃, ϑ₃)`: an exact solve over decorated shape graphs.

use crate::canon::canonical_skeleton;
use crate::enumerate::{enumerate_graphs, skeleton_of, EnumOptions};
use crate::error::{Error, Result};
use crate::graph::{MultiDigraph, Signature};
use crate::homology::{apply_delta, delta_columns, is_coboundary, Coboundary, Certificate};
use crate::linalg::{self, SparseMatrix, PRIME};
use crate::rational::Q;
use crate::vector::GraphVector;
use num_traits::One;
use std::collections::{BTreeSet, HashMap};

/// An undirected skeleton with 1-based vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeSkeleton {
    pub name: char,
    pub vertices: usize,
    pub edges: Vec<(u8, u8)>,
}

impl ShapeSkeleton {
    /// 0-based pairs as used by enumeration.
    pub fn pairs(&self) -> Vec<(u8, u8)> {
        self.edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
    }

    pub fn canonical(&self) -> Vec<(u8, u8)> {
        let p: Vec<(u8, u8)> = self.pairs().into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        canonical_skeleton(self.vertices, &p)
    }

    pub fn matches(&self, g: &MultiDigraph) -> bool {
        g.num_vertices() == self.vertices && skeleton_of(g) == self.canonical()
    }
}

pub fn shape_a() -> ShapeSkeleton {
    ShapeSkeleton { name: 'A', vertices: 5, edges: vec![(3, 5), (4, 2), (4, 5), (4, 1), (2, 1), (3, 2)] }
}

pub fn shape_b() -> ShapeSkeleton {
    ShapeSkeleton { name: 'B', vertices: 5, edges: vec![(3, 5), (4, 2), (4, 5), (4, 1), (3, 1), (3, 2)] }
}

pub fn shape_c() -> ShapeSkeleton {
    ShapeSkeleton { name: 'C', vertices: 6, edges: vec![(4, 1), (4, 2), (3, 4), (3, 6), (6, 1), (5, 2), (3, 5)] }
}

/// `d = 3`, one extra color, black oriented.
pub fn black_signature() -> Signature {
    Signature::new(3, 1, 0b01, true).expect("valid")
}

/// `d = 3`, one extra color, black and red oriented.
pub fn bioriented_signature() -> Signature {
    Signature::new(3, 1, 0b11, true).expect("valid")
}

const RED: u16 = 0b10;

/// Black-oriented decorations of shapes A and B with at least one red cycle, in canonical order.
pub fn candidate_basis() -> Result<Vec<MultiDigraph>> {
    let sig = black_signature();
    let opts = EnumOptions::with_budget(usize::MAX);
    let mut all: BTreeSet<MultiDigraph> = BTreeSet::new();
    for shape in [shape_a(), shape_b()] {
        let pairs = shape.pairs();
        for g in enumerate_graphs(shape.vertices, pairs.len(), sig, Some(&pairs), opts)? {
            if !g.is_oriented_in(RED) {
                all.insert(g);
            }
        }
    }
    Ok(all.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPair {
    pub vartheta3: GraphVector,
    pub theta3: GraphVector,
}

/// Bookkeeping from the solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub candidates: usize,
    pub constraints: usize,
    pub solution_dim: usize,
    /// The kernel recomputed over `F_p` and lifted agrees with the exact one.
    pub modular_check: bool,
    pub normalized_on: MultiDigraph,
}

/// Solves for `ϑ₃` so that `δϑ₃` only contains bi-oriented graphs of shape C,
/// then sets `Θ₃ = −δϑ₃`.
pub fn solve() -> Result<(ThetaPair, SolveReport)> {
    let sig = black_signature();
    let basis = candidate_basis()?;
    let images = delta_columns(sig, &basis);
    let c = shape_c();
    let mut killed: BTreeSet<&MultiDigraph> = BTreeSet::new();
    for img in &images {
        for g in img.keys() {
            if !(g.is_oriented_in(0b11) && c.matches(g)) {
                killed.insert(g);
            }
        }
    }
    let row: HashMap<&MultiDigraph, usize> = killed.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let cols = images
        .iter()
        .map(|img| img.iter().filter_map(|(g, x)| row.get(g).map(|i| (*i, *x))).collect())
        .collect();
    let m = SparseMatrix::from_integer_columns(row.len(), cols);
    let kernel = linalg::kernel(&m);
    let modular_check = linalg::kernel_mod_p(&m, PRIME).as_ref() == Some(&kernel);
    if kernel.len() != 1 {
        return Err(Error::SolutionDimension { dim: kernel.len() });
    }
    let v = &kernel[0];
    let (&lead, lead_val) = v.iter().next().expect("nonzero kernel vector");
    let scale = Q::one() / lead_val;
    let mut vartheta3 = GraphVector::zero(sig);
    for (i, x) in v {
        vartheta3.add_canonical(basis[*i].clone(), x * &scale);
    }
    let theta_black = apply_delta(&vartheta3).scale(&-Q::one());
    let bio = bioriented_signature();
    let mut theta3 = GraphVector::zero(bio);
    for (g, x) in theta_black.terms() {
        if !bio.admits(g) || !c.matches(g) {
            return Err(Error::Verification(format!("{g} survived outside bi-oriented shape C")));
        }
        theta3.add_canonical(g.clone(), x.clone());
    }
    let report = SolveReport {
        candidates: basis.len(),
        constraints: row.len(),
        solution_dim: kernel.len(),
        modular_check,
        normalized_on: basis[lead].clone(),
    };
    Ok((ThetaPair { vartheta3, theta3 }, report))
}

/// Support sizes split by shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCounts {
    pub vartheta3: usize,
    pub shape_a: usize,
    pub shape_b: usize,
    pub theta3: usize,
    pub theta3_shape_c: usize,
    pub theta3_bioriented: usize,
}

pub fn counts(pair: &ThetaPair) -> ThetaCounts {
    let (a, b, c) = (shape_a(), shape_b(), shape_c());
    ThetaCounts {
        vartheta3: pair.vartheta3.len(),
        shape_a: pair.vartheta3.graphs().filter(|g| a.matches(g)).count(),
        shape_b: pair.vartheta3.graphs().filter(|g| b.matches(g)).count(),
        theta3: pair.theta3.len(),
        theta3_shape_c: pair.theta3.graphs().filter(|g| c.matches(g)).count(),
        theta3_bioriented: pair.theta3.graphs().filter(|g| g.is_oriented_in(0b11)).count(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NontrivialityReport {
    pub closed: bool,
    /// `Θ₃ = δ(−ϑ₃)` in the black-oriented complex.
    pub exact_in_black: bool,
    /// Functional on bi-oriented `(6,7)` graphs killing `δ` of every bi-oriented
    /// `(5,6)` graph while pairing to 1 with `Θ₃`.
    pub certificate: Option<Certificate>,
}

/// Checks closedness, exactness in the black-oriented complex, and
/// non-exactness in the bi-oriented one.
pub fn verify_nontrivial(pair: &ThetaPair) -> Result<NontrivialityReport> {
    let closed = apply_delta(&pair.theta3).is_zero();
    let lifted = GraphVector::from_terms(black_signature(), pair.theta3.terms().map(|(g, x)| (x.clone(), g.clone())))?;
    let exact_in_black = apply_delta(&pair.vartheta3.scale(&-Q::one())) == lifted;
    let certificate = match is_coboundary(&pair.theta3, EnumOptions::with_budget(usize::MAX))? {
        Coboundary::Exact { .. } => None,
        Coboundary::NotExact { certificate } => Some(certificate),
    };
    Ok(NontrivialityReport { closed, exact_in_black, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_have_betti_two() {
        for s in [shape_a(), shape_b(), shape_c()] {
            let g = MultiDigraph::from_parts(
                s.vertices,
                0,
                s.pairs().into_iter().map(|(a, b)| crate::graph::Edge::new(a as usize, b as usize, 0)).collect(),
            );
            assert!(g.is_connected());
            assert_eq!(g.betti().unwrap(), 2);
        }
        assert_ne!(shape_a().canonical(), shape_b().canonical());
    }

    #[test]
    fn candidates_are_black_oriented_and_red_cyclic() {
        let b = candidate_basis().unwrap();
        assert!(!b.is_empty());
        for g in &b {
            assert_eq!((g.num_vertices(), g.num_edges()), (5, 6));
            assert_eq!(g.degree(3), 0);
            assert!(g.is_oriented_in(1));
            assert!(!g.is_oriented_in(0b11));
        }
    }
}
