//! Polynomials in `x^μ` (degree 0), `ξ^a`, `ζ_a` (degree 1) and `p_μ` (degree 2).
//!
//! Monomials are stored normal-ordered: the `ξ` block (increasing index) before
//! the `ζ` block (increasing index). Odd derivatives are left derivatives, so
//! `∂/∂ζ_b` first moves `ζ_b` past the whole `ξ` block.

use crate::error::{Error, Result};
use crate::rational::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest supported `m` and `n`.
pub const MAX_DIM: usize = 6;

pub type XExp = [u8; MAX_DIM];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chart {
    /// Base dimension, the range of `μ`.
    pub m: usize,
    /// Fiber rank, the range of `a`.
    pub n: usize,
}

impl Chart {
    pub fn new(m: usize, n: usize) -> Result<Chart> {
        if n == 0 || n > MAX_DIM || m > MAX_DIM {
            return Err(Error::InvalidComponents(format!("chart m={m} n={n} outside 0..={MAX_DIM} x 1..={MAX_DIM}")));
        }
        Ok(Chart { m, n })
    }

    /// The point chart `(g ⊕ g*)[1]`.
    pub fn point(n: usize) -> Result<Chart> {
        Chart::new(0, n)
    }
}

fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, Q>, k: K, v: Q) {
    if v.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A polynomial in the base coordinates only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XPoly {
    terms: BTreeMap<XExp, Q>,
}

impl XPoly {
    pub fn zero() -> XPoly {
        XPoly::default()
    }

    pub fn constant(c: Q) -> XPoly {
        let mut out = XPoly::zero();
        add_into(&mut out.terms, [0; MAX_DIM], c);
        out
    }

    pub fn one() -> XPoly {
        XPoly::constant(Q::one())
    }

    /// `x^μ`.
    pub fn var(mu: usize) -> XPoly {
        let mut e = [0; MAX_DIM];
        e[mu] = 1;
        XPoly::monomial(e, Q::one())
    }

    pub fn monomial(e: XExp, c: Q) -> XPoly {
        let mut out = XPoly::zero();
        add_into(&mut out.terms, e, c);
        out
    }

    pub fn add_term(&mut self, e: XExp, c: Q) {
        add_into(&mut self.terms, e, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XExp, &Q)> {
        self.terms.iter()
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

    pub fn scale(&self, c: &Q) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// `∂/∂x^μ`.
    pub fn deriv(&self, mu: usize) -> XPoly {
        let mut out = XPoly::zero();
        for (e, c) in &self.terms {
            if e[mu] > 0 {
                let mut f = *e;
                f[mu] -= 1;
                out.add_term(f, c * Q::from_integer(e[mu].into()));
            }
        }
        out
    }

    /// Highest variable index used plus one.
    pub fn span(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().rposition(|&k| k > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum()).max()
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, o: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, o: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, o: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for i in 0..MAX_DIM {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: XExp,
    pub p: XExp,
    /// Bit `a` set when `ξ^a` is present.
    pub xi: u16,
    /// Bit `a` set when `ζ_a` is present.
    pub zeta: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: [0; MAX_DIM], p: [0; MAX_DIM], xi: 0, zeta: 0 };

    pub fn degree(&self) -> u32 {
        self.xi.count_ones() + self.zeta.count_ones() + 2 * self.p.iter().map(|&k| k as u32).sum::<u32>()
    }

    pub fn parity(&self) -> u8 {
        ((self.xi.count_ones() + self.zeta.count_ones()) % 2) as u8
    }

    pub fn has_p(&self) -> bool {
        self.p.iter().any(|&k| k > 0)
    }

    pub fn p_degree(&self) -> u32 {
        self.p.iter().map(|&k| k as u32).sum()
    }

    /// Product with its reordering sign, or `None` when an odd variable repeats.
    pub fn mul(&self, o: &Monomial) -> Option<(Monomial, bool)> {
        if self.xi & o.xi != 0 || self.zeta & o.zeta != 0 {
            return None;
        }
        // ξa ζa ξb ζb → ξa ξb ζa ζb, then merge each block
        let mut odd = self.zeta.count_ones() * o.xi.count_ones();
        odd += merge_inversions(self.xi, o.xi);
        odd += merge_inversions(self.zeta, o.zeta);
        let mut x = self.x;
        let mut p = self.p;
        for i in 0..MAX_DIM {
            x[i] += o.x[i];
            p[i] += o.p[i];
        }
        Some((Monomial { x, p, xi: self.xi | o.xi, zeta: self.zeta | o.zeta }, odd % 2 == 1))
    }
}

/// Pairs `(i ∈ a, j ∈ b)` with `i > j`.
fn merge_inversions(a: u16, b: u16) -> u32 {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        count += (a >> (j + 1)).count_ones();
    }
    count
}

fn below(a: usize) -> u16 {
    ((1u32 << a) - 1) as u16
}

/// A single derivative, as used by the representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Deriv {
    X(u8),
    P(u8),
    Xi(u8),
    Zeta(u8),
}

impl Deriv {
    pub fn is_odd(&self) -> bool {
        matches!(self, Deriv::Xi(_) | Deriv::Zeta(_))
    }

    /// The derivative of one monomial: new monomial and integer factor.
    pub fn apply_monomial(&self, m: &Monomial) -> Option<(Monomial, i64)> {
        let mut out = *m;
        match *self {
            Deriv::X(mu) => {
                let k = m.x[mu as usize];
                if k == 0 {
                    return None;
                }
                out.x[mu as usize] -= 1;
                Some((out, k as i64))
            }
            Deriv::P(mu) => {
                let k = m.p[mu as usize];
                if k == 0 {
                    return None;
                }
                out.p[mu as usize] -= 1;
                Some((out, k as i64))
            }
            Deriv::Xi(a) => {
                let bit = 1u16 << a;
                if m.xi & bit == 0 {
                    return None;
                }
                out.xi &= !bit;
                let s = (m.xi & below(a as usize)).count_ones();
                Some((out, if s.is_multiple_of(2) { 1 } else { -1 }))
            }
            Deriv::Zeta(a) => {
                let bit = 1u16 << a;
                if m.zeta & bit == 0 {
                    return None;
                }
                out.zeta &= !bit;
                let s = m.xi.count_ones() + (m.zeta & below(a as usize)).count_ones();
                Some((out, if s.is_multiple_of(2) { 1 } else { -1 }))
            }
        }
    }
}

/// An exact polynomial function on a chart of `T*[2]E[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperPolynomial {
    chart: Chart,
    terms: BTreeMap<Monomial, Q>,
}

impl SuperPolynomial {
    pub fn zero(chart: Chart) -> SuperPolynomial {
        SuperPolynomial { chart, terms: BTreeMap::new() }
    }

    pub fn constant(chart: Chart, c: Q) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(chart);
        out.add_term(Monomial::ONE, c);
        out
    }

    pub fn one(chart: Chart) -> SuperPolynomial {
        SuperPolynomial::constant(chart, Q::one())
    }

    pub fn from_x(chart: Chart, f: &XPoly) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(chart);
        for (e, c) in f.terms() {
            out.add_term(Monomial { x: *e, ..Monomial::ONE }, c.clone());
        }
        out
    }

    fn generator(chart: Chart, m: Monomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(chart);
        out.add_term(m, Q::one());
        out
    }

    pub fn x(chart: Chart, mu: usize) -> SuperPolynomial {
        assert!(mu < chart.m, "x index out of chart");
        let mut m = Monomial::ONE;
        m.x[mu] = 1;
        SuperPolynomial::generator(chart, m)
    }

    pub fn p(chart: Chart, mu: usize) -> SuperPolynomial {
        assert!(mu < chart.m, "p index out of chart");
        let mut m = Monomial::ONE;
        m.p[mu] = 1;
        SuperPolynomial::generator(chart, m)
    }

    pub fn xi(chart: Chart, a: usize) -> SuperPolynomial {
        assert!(a < chart.n, "xi index out of chart");
        SuperPolynomial::generator(chart, Monomial { xi: 1 << a, ..Monomial::ONE })
    }

    pub fn zeta(chart: Chart, a: usize) -> SuperPolynomial {
        assert!(a < chart.n, "zeta index out of chart");
        SuperPolynomial::generator(chart, Monomial { zeta: 1 << a, ..Monomial::ONE })
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(chart: Chart, terms: I) -> Result<SuperPolynomial> {
        let mut out = SuperPolynomial::zero(chart);
        for (m, c) in terms {
            out.check_monomial(&m)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        let Chart { m: dm, n } = self.chart;
        let ok = m.x[dm..].iter().all(|&k| k == 0)
            && m.p[dm..].iter().all(|&k| k == 0)
            && (m.xi as u32) >> n == 0
            && (m.zeta as u32) >> n == 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidComponents(format!("monomial {m:?} outside chart")))
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        add_into(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
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

    /// The common degree of all monomials; `None` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::Inhomogeneous("super polynomial of mixed degree".into()))
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// Even and odd parts.
    pub fn split_parity(&self) -> [SuperPolynomial; 2] {
        let mut out = [SuperPolynomial::zero(self.chart), SuperPolynomial::zero(self.chart)];
        for (m, c) in &self.terms {
            out[m.parity() as usize].terms.insert(*m, c.clone());
        }
        out
    }

    /// The parity shared by every monomial; `None` for zero or mixed parity.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let p = it.next()?;
        it.all(|q| q == p).then_some(p)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> SuperPolynomial {
        SuperPolynomial {
            chart: self.chart,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> SuperPolynomial {
        if c.is_zero() {
            return SuperPolynomial::zero(self.chart);
        }
        SuperPolynomial { chart: self.chart, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_x(&self, f: &XPoly) -> SuperPolynomial {
        self * &SuperPolynomial::from_x(self.chart, f)
    }

    pub fn derive(&self, d: Deriv) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(self.chart);
        for (m, c) in &self.terms {
            if let Some((m2, k)) = d.apply_monomial(m) {
                out.add_term(m2, c * Q::from_integer(k.into()));
            }
        }
        out
    }

    pub fn d_x(&self, mu: usize) -> SuperPolynomial {
        self.derive(Deriv::X(mu as u8))
    }

    pub fn d_p(&self, mu: usize) -> SuperPolynomial {
        self.derive(Deriv::P(mu as u8))
    }

    /// Left derivative `∂/∂ξ^a`.
    pub fn d_xi(&self, a: usize) -> SuperPolynomial {
        self.derive(Deriv::Xi(a as u8))
    }

    /// Left derivative `∂/∂ζ_a`.
    pub fn d_zeta(&self, a: usize) -> SuperPolynomial {
        self.derive(Deriv::Zeta(a as u8))
    }

    /// The x-coefficient of a monomial pattern with trivial `x` part.
    pub fn x_coefficient(&self, pattern: &Monomial) -> XPoly {
        let mut out = XPoly::zero();
        for (m, c) in &self.terms {
            if m.p == pattern.p && m.xi == pattern.xi && m.zeta == pattern.zeta {
                out.add_term(m.x, c.clone());
            }
        }
        out
    }

    fn same_chart(&self, o: &SuperPolynomial) {
        assert_eq!(self.chart, o.chart, "super polynomials on different charts");
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, o: &SuperPolynomial) -> SuperPolynomial {
        self.same_chart(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, o: &SuperPolynomial) -> SuperPolynomial {
        self.same_chart(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&-Q::one())
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, o: &SuperPolynomial) -> SuperPolynomial {
        self.same_chart(o);
        let mut out = SuperPolynomial::zero(self.chart);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some((m, neg)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in m.x.iter().enumerate() {
                if k > 0 {
                    write!(f, "·x{}", i + 1)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            for a in 0..16 {
                if m.xi >> a & 1 == 1 {
                    write!(f, "·ξ{}", a + 1)?;
                }
            }
            for a in 0..16 {
                if m.zeta >> a & 1 == 1 {
                    write!(f, "·ζ{}", a + 1)?;
                }
            }
            for (i, &k) in m.p.iter().enumerate() {
                if k > 0 {
                    write!(f, "·p{}", i + 1)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `{f, g} = ∂_x f ∂_p g − ∂_p f ∂_x g + (−1)^{|f|}(∂_ξ f ∂_ζ g + ∂_ζ f ∂_ξ g)`,
/// applied termwise to the parity parts of `f`.
pub fn big_bracket(f: &SuperPolynomial, g: &SuperPolynomial) -> Result<SuperPolynomial> {
    if f.chart != g.chart {
        return Err(Error::ChartMismatch);
    }
    let chart = f.chart;
    let mut out = SuperPolynomial::zero(chart);
    for mu in 0..chart.m {
        out = &out + &(&f.d_x(mu) * &g.d_p(mu));
        out = &out - &(&f.d_p(mu) * &g.d_x(mu));
    }
    let [even, odd] = f.split_parity();
    for a in 0..chart.n {
        let dz = g.d_zeta(a);
        let dx = g.d_xi(a);
        out = &out + &(&even.d_xi(a) * &dz);
        out = &out + &(&even.d_zeta(a) * &dx);
        out = &out - &(&odd.d_xi(a) * &dz);
        out = &out - &(&odd.d_zeta(a) * &dx);
    }
    Ok(out)
}
