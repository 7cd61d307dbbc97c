//! Graphs acting as multidifferential operators on super polynomials.
//!
//! A black edge `t → h` acts by `∂/∂x^μ` on factor `t` and `∂/∂p_μ` on factor
//! `h`; an edge whose red arrow points against the black one acts by
//! `∂/∂ξ^a` on factor `t` and `∂/∂ζ_a` on factor `h`. In the point flavor every
//! edge acts by the odd pair. Within an edge the head derivative is applied
//! first; an odd derivative on factor `j` picks up the parity of factors
//! `1..j` as they stand when it is applied.

mod eval;
pub mod graphops;
pub mod obstruction;
pub mod reference;

pub use crate::nr::{compose, nr_bracket, SymOp};
pub use graphops::{ce_differential, decalage_operator, q_operator, theta_bracket_6};
pub use obstruction::{obstruction_closed_form, obstruction_via_rep, ObstructionFit};
pub use reference::reference_apply;

use crate::error::{Error, Result};
use crate::graph::Parity;
use crate::operad::partial_compose;
use crate::superalgebra::{Chart, SuperPolynomial};
use crate::vector::{GraphVector, OperadElement};
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// One direction, acting on `(g ⊕ g*)[1]` by `∂ξ ∂ζ`.
    Point,
    /// Black and red directions on `T*[2]E[1]`.
    Bialgebroid,
}

impl Flavor {
    pub fn colors(self) -> usize {
        match self {
            Flavor::Point => 0,
            Flavor::Bialgebroid => 1,
        }
    }
}

pub(crate) fn check_element(element: &OperadElement, flavor: Flavor) -> Result<()> {
    let sig = element.signature();
    if sig.colors() != flavor.colors() {
        return Err(Error::SignatureMismatch(format!(
            "{flavor:?} flavor acts on graphs with {} extra colors, got {}",
            flavor.colors(),
            sig.colors()
        )));
    }
    if sig.parity() != Parity::VertexOdd {
        return Err(Error::SignatureMismatch(format!("graphs act only for odd d, got d={}", sig.d)));
    }
    Ok(())
}

type Eval = Arc<dyn Fn(&[SuperPolynomial]) -> SuperPolynomial + Send + Sync>;

#[derive(Clone)]
enum Body {
    Graphs(OperadElement, Flavor),
    Explicit(Eval),
}

/// A multilinear operator of fixed arity on one chart.
#[derive(Clone)]
pub struct MultiDiffOperator {
    arity: usize,
    chart: Chart,
    body: Body,
}

impl std::fmt::Debug for MultiDiffOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.body {
            Body::Graphs(e, fl) => write!(f, "MultiDiffOperator({} graphs, {fl:?}, arity {})", e.len(), self.arity),
            Body::Explicit(_) => write!(f, "MultiDiffOperator(explicit, arity {})", self.arity),
        }
    }
}

impl MultiDiffOperator {
    pub fn explicit(chart: Chart, arity: usize, eval: Eval) -> MultiDiffOperator {
        MultiDiffOperator { arity, chart, body: Body::Explicit(eval) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn apply(&self, fs: &[SuperPolynomial]) -> Result<SuperPolynomial> {
        self.run(fs, false)
    }

    /// The part of the value free of `ξ` and `p`.
    pub fn apply_zeta_part(&self, fs: &[SuperPolynomial]) -> Result<SuperPolynomial> {
        self.run(fs, true)
    }

    fn run(&self, fs: &[SuperPolynomial], zeta_only: bool) -> Result<SuperPolynomial> {
        if fs.len() != self.arity {
            return Err(Error::IndexOutOfRange(format!("{} inputs for arity {}", fs.len(), self.arity)));
        }
        if fs.iter().any(|f| f.chart() != self.chart) {
            return Err(Error::ChartMismatch);
        }
        match &self.body {
            Body::Explicit(e) if zeta_only => Ok(e(fs).filter(|m| m.xi == 0 && !m.has_p())),
            Body::Explicit(e) => Ok(e(fs)),
            Body::Graphs(element, flavor) => Ok(apply_graphs(element, *flavor, self.chart, fs, zeta_only)),
        }
    }
}

fn apply_graphs(element: &OperadElement, flavor: Flavor, chart: Chart, fs: &[SuperPolynomial], zeta_only: bool) -> SuperPolynomial {
    let parts: Vec<[SuperPolynomial; 2]> = fs.iter().map(|f| f.split_parity()).collect();
    let mut choices: Vec<Vec<u8>> = vec![Vec::new()];
    for p in &parts {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                (0u8..2).filter(|&k| !p[k as usize].is_zero()).map(move |k| {
                    let mut c = c.clone();
                    c.push(k);
                    c
                })
            })
            .collect();
    }
    let terms: Vec<_> = element.terms().collect();
    let mut jobs = Vec::new();
    for c in &choices {
        for t in &terms {
            jobs.push((c, *t));
        }
    }
    let pieces: Vec<SuperPolynomial> = jobs
        .par_iter()
        .map(|(c, (g, x))| {
            let args: Vec<SuperPolynomial> = c.iter().zip(&parts).map(|(&k, p)| p[k as usize].clone()).collect();
            eval::eval_graph(g, flavor, chart, &args, c, zeta_only).scale(x)
        })
        .collect();
    pieces.iter().fold(SuperPolynomial::zero(chart), |acc, p| &acc + p)
}

/// `Rep(γ)` for a labeled operad element.
pub fn rep(element: &OperadElement, chart: Chart, flavor: Flavor) -> Result<MultiDiffOperator> {
    check_element(element, flavor)?;
    Ok(MultiDiffOperator { arity: element.arity(), chart, body: Body::Graphs(element.clone(), flavor) })
}

/// `Rep` of the canonical representatives of a complex element.
pub fn rep_vector(v: &GraphVector, chart: Chart, flavor: Flavor) -> Result<MultiDiffOperator> {
    rep(&v.representatives()?, chart, flavor)
}

/// Compares `Rep(γ₁ ∘_i γ₂)` with `Rep(γ₁)` fed `Rep(γ₂)` in slot `i` (1-based).
/// Edge operators are even, so no Koszul sign enters.
pub fn operad_morphism_check(
    g1: &OperadElement,
    i: usize,
    g2: &OperadElement,
    chart: Chart,
    flavor: Flavor,
    fs: &[SuperPolynomial],
) -> Result<bool> {
    if i == 0 || i > g1.arity() || fs.len() != g1.arity() + g2.arity() - 1 {
        return Err(Error::IndexOutOfRange(format!("slot {i} and {} inputs for arities {} and {}", fs.len(), g1.arity(), g2.arity())));
    }
    let composite = partial_compose(g1, i, g2)?;
    let lhs = rep(&composite, chart, flavor)?.apply(fs)?;
    let n2 = g2.arity();
    let inner = rep(g2, chart, flavor)?.apply(&fs[i - 1..i - 1 + n2])?;
    let mut args: Vec<SuperPolynomial> = fs[..i - 1].to_vec();
    args.push(inner);
    args.extend_from_slice(&fs[i - 1 + n2..]);
    let rhs = rep(g1, chart, flavor)?.apply(&args)?;
    Ok(lhs == rhs)
}
