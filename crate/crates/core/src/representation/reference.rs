//! A slow second evaluator that tracks every odd symbol of the concatenated
//! input word and recomputes signs by explicit transpositions.

use super::Flavor;
use super::eval::{edge_pair, edge_range};
use crate::error::{Error, Result};
use crate::graph::MultiDigraph;
use crate::rational::Q;
use crate::superalgebra::{Chart, Deriv, Monomial, SuperPolynomial, MAX_DIM};
use crate::vector::OperadElement;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    X(u8),
    P(u8),
    Xi(u8),
    Zeta(u8),
}

impl Sym {
    fn odd(self) -> bool {
        matches!(self, Sym::Xi(_) | Sym::Zeta(_))
    }

    /// Position in the normal order of odd symbols.
    fn rank(self) -> u32 {
        match self {
            Sym::Xi(a) => a as u32,
            Sym::Zeta(a) => 100 + a as u32,
            _ => unreachable!(),
        }
    }
}

fn spell(m: &Monomial) -> Vec<Sym> {
    let mut w = Vec::new();
    for i in 0..MAX_DIM {
        for _ in 0..m.x[i] {
            w.push(Sym::X(i as u8));
        }
        for _ in 0..m.p[i] {
            w.push(Sym::P(i as u8));
        }
    }
    for a in 0..16u8 {
        if m.xi >> a & 1 == 1 {
            w.push(Sym::Xi(a));
        }
    }
    for a in 0..16u8 {
        if m.zeta >> a & 1 == 1 {
            w.push(Sym::Zeta(a));
        }
    }
    w
}

fn target(d: Deriv) -> Sym {
    match d {
        Deriv::X(i) => Sym::X(i),
        Deriv::P(i) => Sym::P(i),
        Deriv::Xi(i) => Sym::Xi(i),
        Deriv::Zeta(i) => Sym::Zeta(i),
    }
}

/// Removes one occurrence of `d`'s symbol from segment `v`, returning the factor.
fn differentiate(word: &mut [Vec<Sym>], v: usize, d: Deriv) -> Option<Q> {
    let s = target(d);
    if s.odd() {
        let pos = word[v].iter().position(|&t| t == s)?;
        let before: usize = word[..v].iter().flatten().filter(|t| t.odd()).count()
            + word[v][..pos].iter().filter(|t| t.odd()).count();
        word[v].remove(pos);
        Some(if before.is_multiple_of(2) { Q::one() } else { -Q::one() })
    } else {
        let count = word[v].iter().filter(|&&t| t == s).count();
        let pos = word[v].iter().position(|&t| t == s)?;
        word[v].remove(pos);
        Some(Q::from_integer((count as i64).into()))
    }
}

fn normal_form(word: &[Vec<Sym>]) -> Option<(Monomial, bool)> {
    let mut m = Monomial::ONE;
    let mut odd: Vec<u32> = Vec::new();
    for &s in word.iter().flatten() {
        match s {
            Sym::X(i) => m.x[i as usize] += 1,
            Sym::P(i) => m.p[i as usize] += 1,
            Sym::Xi(a) => {
                if m.xi >> a & 1 == 1 {
                    return None;
                }
                m.xi |= 1 << a;
                odd.push(s.rank());
            }
            Sym::Zeta(a) => {
                if m.zeta >> a & 1 == 1 {
                    return None;
                }
                m.zeta |= 1 << a;
                odd.push(s.rank());
            }
        }
    }
    let mut inversions = 0usize;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if odd[i] > odd[j] {
                inversions += 1;
            }
        }
    }
    Some((m, inversions % 2 == 1))
}

fn walk(g: &MultiDigraph, flavor: Flavor, chart: Chart, e: usize, word: &mut Vec<Vec<Sym>>, coeff: Q, out: &mut SuperPolynomial) {
    if e == g.num_edges() {
        if let Some((m, neg)) = normal_form(word) {
            out.add_term(m, if neg { -coeff } else { coeff });
        }
        return;
    }
    let edge = g.edges()[e];
    for i in 0..edge_range(&edge, flavor, chart) {
        let (dh, dt) = edge_pair(&edge, flavor, i as u8);
        let mut w = word.clone();
        let Some(a) = differentiate(&mut w, edge.head as usize, dh) else { continue };
        let Some(b) = differentiate(&mut w, edge.tail as usize, dt) else { continue };
        walk(g, flavor, chart, e + 1, &mut w, &coeff * &a * &b, out);
    }
}

/// Evaluates a labeled element monomial by monomial.
pub fn reference_apply(element: &OperadElement, chart: Chart, flavor: Flavor, fs: &[SuperPolynomial]) -> Result<SuperPolynomial> {
    super::check_element(element, flavor)?;
    if fs.len() != element.arity() {
        return Err(Error::IndexOutOfRange(format!("{} inputs for arity {}", fs.len(), element.arity())));
    }
    let lists: Vec<Vec<(Monomial, Q)>> = fs.iter().map(|f| f.terms().map(|(m, c)| (*m, c.clone())).collect()).collect();
    let mut out = SuperPolynomial::zero(chart);
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(out);
    }
    for (g, x) in element.terms() {
        let mut choice = vec![0usize; lists.len()];
        loop {
            let mut coeff = x.clone();
            let mut word = Vec::with_capacity(lists.len());
            for (l, &c) in lists.iter().zip(&choice) {
                coeff *= &l[c].1;
                word.push(spell(&l[c].0));
            }
            if !coeff.is_zero() {
                walk(g, flavor, chart, 0, &mut word, coeff, &mut out);
            }
            let mut pos = 0;
            while pos < choice.len() {
                choice[pos] += 1;
                if choice[pos] < lists[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    Ok(out)
}
