//! Graded symmetric multilinear operators and the Nijenhuis–Richardson bracket.
//!
//! An operator acts on a shifted copy `A[s]` of a function algebra: the parity
//! of an input `f` is `|f| + s`. Operators are graded symmetric in that parity.
//! Composition inserts the second operator into the first slot of the first,
//! summed over unshuffles with Koszul signs.

use crate::superalgebra::{Chart, SuperPolynomial};
use crate::rational::Q;
use num_traits::One;
use std::fmt;
use std::sync::Arc;

pub type Eval = Arc<dyn Fn(&[SuperPolynomial]) -> SuperPolynomial + Send + Sync>;

#[derive(Clone)]
pub struct SymOp {
    arity: usize,
    /// Degree of the operator on `A[s]`, mod 2.
    parity: u8,
    shift: u8,
    chart: Chart,
    eval: Eval,
}

impl fmt::Debug for SymOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymOp(arity {}, parity {}, shift {})", self.arity, self.parity, self.shift)
    }
}

/// Parity of a parity-homogeneous input on `A[s]`; zero counts as even.
pub fn shifted_parity(f: &SuperPolynomial, shift: u8) -> u8 {
    (f.parity().unwrap_or(0) + shift) % 2
}

impl SymOp {
    pub fn new(chart: Chart, arity: usize, parity: u8, shift: u8, eval: Eval) -> SymOp {
        SymOp { arity, parity: parity % 2, shift: shift % 2, chart, eval }
    }

    pub fn zero(chart: Chart, arity: usize, parity: u8, shift: u8) -> SymOp {
        SymOp::new(chart, arity, parity, shift, Arc::new(move |_| SuperPolynomial::zero(chart)))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn shift(&self) -> u8 {
        self.shift
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Evaluates on inputs; each input is split into parity parts first.
    pub fn apply(&self, inputs: &[SuperPolynomial]) -> SuperPolynomial {
        assert_eq!(inputs.len(), self.arity, "operator arity mismatch");
        let mut out = SuperPolynomial::zero(self.chart);
        let parts: Vec<[SuperPolynomial; 2]> = inputs.iter().map(|f| f.split_parity()).collect();
        let mut choice = vec![0usize; inputs.len()];
        loop {
            let args: Vec<SuperPolynomial> = choice.iter().zip(&parts).map(|(&c, p)| p[c].clone()).collect();
            if args.iter().all(|a| !a.is_zero()) || args.is_empty() {
                out = &out + &(self.eval)(&args);
            }
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return out;
                }
                choice[pos] += 1;
                if choice[pos] < 2 {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    pub fn scale(&self, c: &Q) -> SymOp {
        let inner = self.eval.clone();
        let c = c.clone();
        SymOp { eval: Arc::new(move |a| inner(a).scale(&c)), ..self.clone() }
    }

    pub fn add(&self, o: &SymOp) -> SymOp {
        assert_eq!((self.arity, self.shift), (o.arity, o.shift), "operators of different shape");
        let (a, b) = (self.eval.clone(), o.eval.clone());
        SymOp { eval: Arc::new(move |x| &a(x) + &b(x)), ..self.clone() }
    }
}

fn koszul_unshuffle(par: &[u8], first: &[usize], rest: &[usize]) -> bool {
    // moving the `first` block to the front past earlier `rest` elements
    let mut odd = 0u32;
    for &j in first {
        for &i in rest {
            if i < j && par[i] == 1 && par[j] == 1 {
                odd += 1;
            }
        }
    }
    odd % 2 == 1
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `(a ∘ b)(w) = Σ_unshuffles ε · a(b(w_S), w_rest)`.
pub fn compose(a: &SymOp, b: &SymOp) -> SymOp {
    assert_eq!(a.shift, b.shift, "operators on different shifts");
    assert!(a.arity >= 1, "cannot insert into an arity-zero operator");
    let n = a.arity + b.arity - 1;
    let (ea, eb, shift, k) = (a.eval.clone(), b.eval.clone(), a.shift, b.arity);
    let chart = a.chart;
    let sets = subsets(n, k);
    SymOp::new(
        chart,
        n,
        a.parity + b.parity,
        shift,
        Arc::new(move |w| {
            let par: Vec<u8> = w.iter().map(|f| shifted_parity(f, shift)).collect();
            let mut out = SuperPolynomial::zero(chart);
            for s in &sets {
                let rest: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
                let inner: Vec<SuperPolynomial> = s.iter().map(|&i| w[i].clone()).collect();
                let bv = eb(&inner);
                if bv.is_zero() {
                    continue;
                }
                let mut args = vec![bv];
                args.extend(rest.iter().map(|&i| w[i].clone()));
                let v = ea(&args);
                out = if koszul_unshuffle(&par, s, &rest) { &out - &v } else { &out + &v };
            }
            out
        }),
    )
}

/// `[a, b] = a ∘ b − (−1)^{|a||b|} b ∘ a`, with `∘` skipped on arity-zero hosts.
pub fn nr_bracket(a: &SymOp, b: &SymOp) -> SymOp {
    let n = a.arity + b.arity - 1;
    let chart = a.chart;
    let ab = if a.arity > 0 { compose(a, b) } else { SymOp::zero(chart, n, a.parity + b.parity, a.shift) };
    let ba = if b.arity > 0 { compose(b, a) } else { SymOp::zero(chart, n, a.parity + b.parity, a.shift) };
    let s = if a.parity * b.parity % 2 == 1 { Q::one() } else { -Q::one() };
    ab.add(&ba.scale(&s))
}
