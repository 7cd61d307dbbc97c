//! Formal rational combinations of graphs.

use crate::canon::{canonicalize, inversion_sign};
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiDigraph, Parity, Signature};
use crate::rational::{q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A complex element: coinvariant classes stored through canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVector {
    sig: Signature,
    terms: BTreeMap<MultiDigraph, Q>,
}

impl GraphVector {
    pub fn zero(sig: Signature) -> GraphVector {
        GraphVector { sig, terms: BTreeMap::new() }
    }

    /// Builds a vector from arbitrary labeled terms, checking each against the signature.
    pub fn from_terms<I>(sig: Signature, terms: I) -> Result<GraphVector>
    where
        I: IntoIterator<Item = (Q, MultiDigraph)>,
    {
        let mut v = GraphVector::zero(sig);
        for (c, g) in terms {
            sig.check(&g)?;
            v.add_term(&g, &c);
        }
        Ok(v)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Adds `coeff * g` after canonicalization; `g` must satisfy the signature.
    pub fn add_term(&mut self, g: &MultiDigraph, coeff: &Q) {
        debug_assert!(self.sig.admits(g), "{g} outside signature");
        if coeff.is_zero() {
            return;
        }
        if let Some((c, s)) = canonicalize(g, self.sig.parity()) {
            let val = if s < 0 { -coeff.clone() } else { coeff.clone() };
            self.add_canonical(c, val);
        }
    }

    /// Adds a term whose graph is already canonical.
    pub fn add_canonical(&mut self, g: MultiDigraph, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiDigraph, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &MultiDigraph) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> GraphVector {
        let mut out = GraphVector::zero(self.sig);
        if !c.is_zero() {
            for (g, x) in &self.terms {
                out.terms.insert(g.clone(), x * c);
            }
        }
        out
    }

    pub fn add(&self, other: &GraphVector) -> GraphVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &GraphVector) {
        for (g, x) in &other.terms {
            self.add_canonical(g.clone(), x.clone());
        }
    }

    pub fn sub(&self, other: &GraphVector) -> GraphVector {
        self.add(&other.scale(&-Q::one()))
    }

    /// Degree of the homogeneous element; `None` for zero.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for g in self.terms.keys() {
            let dg = g.degree(self.sig.d as i64);
            match deg {
                None => deg = Some(dg),
                Some(x) if x != dg => return Err(Error::Inhomogeneous(format!("degrees {x} and {dg}"))),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Common `(N, k)` of all terms; `None` for zero.
    pub fn bidegree(&self) -> Result<Option<(usize, usize)>> {
        let mut bd = None;
        for g in self.terms.keys() {
            let x = (g.num_vertices(), g.num_edges());
            match bd {
                None => bd = Some(x),
                Some(y) if y != x => return Err(Error::Inhomogeneous(format!("bidegrees {y:?} and {x:?}"))),
                _ => {}
            }
        }
        Ok(bd)
    }

    pub fn graphs(&self) -> impl Iterator<Item = &MultiDigraph> {
        self.terms.keys()
    }
}

/// Normalizes the edge order of a labeled graph, returning the sign for odd edges.
pub fn normalize_edges(g: &MultiDigraph, parity: Parity) -> Option<(MultiDigraph, i8)> {
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let sign = if parity == Parity::EdgeOdd {
        let s = inversion_sign(&edges);
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        s
    } else {
        edges.sort_unstable();
        1
    };
    Some((g.with_edges(edges), sign))
}

/// An operad element: labeled graphs of a fixed arity, edge order normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadElement {
    sig: Signature,
    arity: usize,
    terms: BTreeMap<MultiDigraph, Q>,
}

impl OperadElement {
    pub fn zero(sig: Signature, arity: usize) -> OperadElement {
        OperadElement { sig, arity, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(sig: Signature, arity: usize, terms: I) -> Result<OperadElement>
    where
        I: IntoIterator<Item = (Q, MultiDigraph)>,
    {
        let mut v = OperadElement::zero(sig, arity);
        for (c, g) in terms {
            if g.num_vertices() != arity {
                return Err(Error::MalformedGraph(format!("{g} has arity {} not {arity}", g.num_vertices())));
            }
            if g.colors() != sig.colors() {
                return Err(Error::MalformedGraph(format!("{g} has the wrong color arity")));
            }
            v.add_term(&g, &c);
        }
        Ok(v)
    }

    pub fn single(sig: Signature, g: &MultiDigraph) -> OperadElement {
        let mut v = OperadElement::zero(sig, g.num_vertices());
        v.add_term(g, &Q::one());
        v
    }

    /// The unit: one vertex, no edges.
    pub fn unit(sig: Signature) -> OperadElement {
        OperadElement::single(sig, &MultiDigraph::from_parts(1, sig.colors(), Vec::new()))
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, g: &MultiDigraph, coeff: &Q) {
        debug_assert_eq!(g.num_vertices(), self.arity);
        if coeff.is_zero() {
            return;
        }
        if let Some((h, s)) = normalize_edges(g, self.sig.parity()) {
            let val = if s < 0 { -coeff.clone() } else { coeff.clone() };
            match self.terms.entry(h) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(val);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += val;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiDigraph, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &MultiDigraph) -> Q {
        match normalize_edges(g, self.sig.parity()) {
            Some((h, s)) => self.terms.get(&h).map(|x| x * q(s as i64)).unwrap_or_else(Q::zero),
            None => Q::zero(),
        }
    }

    pub fn add(&self, other: &OperadElement) -> OperadElement {
        let mut out = self.clone();
        for (g, x) in &other.terms {
            out.add_term(g, x);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> OperadElement {
        let mut out = OperadElement::zero(self.sig, self.arity);
        if !c.is_zero() {
            for (g, x) in &self.terms {
                out.terms.insert(g.clone(), x * c);
            }
        }
        out
    }

    /// Relabels every graph by `perm` (old vertex to new vertex).
    pub fn relabeled(&self, perm: &[usize]) -> OperadElement {
        let mut out = OperadElement::zero(self.sig, self.arity);
        for (g, x) in &self.terms {
            out.add_term(&g.relabeled(perm), x);
        }
        out
    }

    /// The coinvariant class in the complex of the same signature.
    pub fn to_complex(&self) -> GraphVector {
        let mut out = GraphVector::zero(self.sig);
        for (g, x) in &self.terms {
            if self.sig.admits(g) {
                out.add_term(g, x);
            }
        }
        out
    }

    pub(crate) fn with_signature(mut self, sig: Signature) -> OperadElement {
        self.sig = sig;
        self
    }
}

impl GraphVector {
    /// Canonical representatives viewed as labeled operad elements of one arity.
    pub fn representatives(&self) -> Result<OperadElement> {
        let arity = match self.bidegree()? {
            Some((n, _)) => n,
            None => 1,
        };
        let mut out = OperadElement::zero(self.sig, arity);
        for (g, x) in &self.terms {
            out.add_term(g, x);
        }
        Ok(out)
    }
}
