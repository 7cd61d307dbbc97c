//! Graph-backed symmetric operators, the Chevalley–Eilenberg differential and
//! the bracket `θ₆`.

use super::{rep, rep_vector, Flavor, MultiDiffOperator};
use crate::canon::permutation_sign;
use crate::error::{Error, Result};
use crate::nr::{nr_bracket, shifted_parity, SymOp};
use crate::rational::Q;
use crate::superalgebra::tensor::permutations;
use crate::superalgebra::{big_bracket, Chart, SuperPolynomial};
use crate::vector::{GraphVector, OperadElement};
use num_traits::One;
use std::sync::Arc;

/// `Σ_σ sign(σ) · σγ` over all vertex relabelings.
pub fn symmetrize_labels(element: &OperadElement) -> OperadElement {
    let mut out = OperadElement::zero(element.signature(), element.arity());
    for (perm, _) in permutations(element.arity()) {
        let s = permutation_sign(&perm);
        let term = element.relabeled(&perm);
        out = out.add(&if s < 0 { term.scale(&-Q::one()) } else { term });
    }
    out
}

/// `(−1)^{Σ_j (N−j)(|f_j|+1)}` with `j` 1-based.
fn decalage_sign(fs: &[SuperPolynomial]) -> bool {
    let n = fs.len();
    let mut odd = 0usize;
    for (j, f) in fs.iter().enumerate() {
        odd += (n - 1 - j) * shifted_parity(f, 1) as usize;
    }
    odd % 2 == 1
}

/// The graded symmetric operator on `A[1]` attached to a complex element:
/// the label-symmetrized representation, corrected by the décalage sign and by
/// `(−1)^{(N−1)(N−2)/2}`. Its parity is `N − 1`.
pub fn decalage_operator(v: &GraphVector, chart: Chart, flavor: Flavor) -> Result<SymOp> {
    let labeled = v.representatives()?;
    let n = labeled.arity();
    let mut sym = symmetrize_labels(&labeled);
    if (n.max(1) - 1) * (n.max(2) - 2) / 2 % 2 == 1 {
        sym = sym.scale(&-Q::one());
    }
    let op = rep(&sym, chart, flavor)?;
    Ok(SymOp::new(
        chart,
        n,
        ((n + 1) % 2) as u8,
        1,
        Arc::new(move |fs| {
            let val = op.apply(fs).expect("arity and chart fixed at construction");
            if decalage_sign(fs) {
                -&val
            } else {
                val
            }
        }),
    ))
}

/// The big bracket as an odd symmetric operator on `A[1]`: `(−1)^{|f|+1}{f, g}`.
pub fn bracket_operator(chart: Chart) -> SymOp {
    SymOp::new(
        chart,
        2,
        1,
        1,
        Arc::new(|fs| {
            let b = big_bracket(&fs[0], &fs[1]).expect("operands share the chart");
            if decalage_sign(fs) {
                -&b
            } else {
                b
            }
        }),
    )
}

/// `δ_S A = [b, A]` with `b` the big bracket operator.
pub fn ce_differential(a: &SymOp) -> SymOp {
    nr_bracket(&bracket_operator(a.chart()), a)
}

/// `Q = {ℋ, ·}`.
pub fn q_operator(h: &SuperPolynomial) -> MultiDiffOperator {
    let h = h.clone();
    MultiDiffOperator::explicit(h.chart(), 1, Arc::new(move |fs| big_bracket(&h, &fs[0]).expect("operands share the chart")))
}

/// `θ₆(ℋ, …, ℋ) = Rep(Θ₃)(ℋ^{⊗6})`.
pub fn theta_bracket_6(theta3: &GraphVector, h: &SuperPolynomial) -> Result<SuperPolynomial> {
    let n = theta3.bidegree()?.map_or(0, |(n, _)| n);
    if n != 6 {
        return Err(Error::WrongDegree { expected: 6, found: n as i64 });
    }
    rep_vector(theta3, h.chart(), Flavor::Bialgebroid)?.apply(&vec![h.clone(); 6])
}
