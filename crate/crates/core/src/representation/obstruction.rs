//! The first obstruction `Ob(ℋ)^{abc}`: a closed form in the components and
//! the pure-`ζ` part of `Rep(ϑ₃)(ℋ^{⊗5})`.

use super::{rep_vector, Flavor};
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::superalgebra::{hamiltonian, BialgebroidComponents, Monomial, Tensor, XPoly};
use crate::vector::GraphVector;
use num_traits::Zero;

struct Data<'a> {
    n: usize,
    m: usize,
    comp: &'a BialgebroidComponents,
    d_c: Tensor,
    dd_c: Tensor,
    d_r: Tensor,
    dd_r: Tensor,
}

impl<'a> Data<'a> {
    fn new(comp: &'a BialgebroidComponents) -> Data<'a> {
        let (m, n) = (comp.chart().m, comp.chart().n);
        let c = &comp.c;
        let r = &comp.r;
        Data {
            n,
            m,
            comp,
            d_c: Tensor::from_fn(&[n, n, n, m], |i| c.get(&i[..3]).deriv(i[3])),
            dd_c: Tensor::from_fn(&[n, n, n, m, m], |i| c.get(&i[..3]).deriv(i[3]).deriv(i[4])),
            d_r: Tensor::from_fn(&[n, m, m], |i| r.get(&i[..2]).deriv(i[2])),
            dd_r: Tensor::from_fn(&[n, m, m, m], |i| r.get(&i[..2]).deriv(i[2]).deriv(i[3])),
        }
    }

    fn rho(&self, a: usize, mu: usize) -> &XPoly {
        self.comp.rho.get(&[a, mu])
    }
    fn r(&self, a: usize, mu: usize) -> &XPoly {
        self.comp.r.get(&[a, mu])
    }
    fn f(&self, a: usize, b: usize, c: usize) -> &XPoly {
        self.comp.f.get(&[a, b, c])
    }
    /// `C_c^{ab}`
    fn c(&self, c: usize, a: usize, b: usize) -> &XPoly {
        self.comp.c.get(&[c, a, b])
    }
    /// `∂_μ C_c^{ab}`
    fn dc(&self, c: usize, a: usize, b: usize, mu: usize) -> &XPoly {
        self.d_c.get(&[c, a, b, mu])
    }
    fn ddc(&self, c: usize, a: usize, b: usize, mu: usize, nu: usize) -> &XPoly {
        self.dd_c.get(&[c, a, b, mu, nu])
    }
    /// `∂_ν R^{a|μ}`
    fn dr(&self, a: usize, mu: usize, nu: usize) -> &XPoly {
        self.d_r.get(&[a, mu, nu])
    }
    fn ddr(&self, a: usize, mu: usize, nu: usize, la: usize) -> &XPoly {
        self.dd_r.get(&[a, mu, nu, la])
    }

    /// The bracketed expression before antisymmetrization in `a, b, c`.
    fn raw(&self, a: usize, b: usize, c: usize) -> XPoly {
        let (n, m) = (self.n, self.m);
        let mut acc = XPoly::zero();
        let mut add = |w: i64, t: XPoly| {
            if !t.is_zero() {
                acc = &acc + &t.scale(&q(w));
            }
        };
        for d in 0..n {
            for e in 0..n {
                for mu in 0..m {
                    for nu in 0..m {
                        // R^{dμ} R^{eν} ( … )
                        let rr = self.r(d, mu) * self.r(e, nu);
                        if !rr.is_zero() {
                            let mut inner = XPoly::zero();
                            for f in 0..n {
                                for la in 0..m {
                                    inner = &inner + &(&(self.rho(f, la) * self.dc(e, a, f, mu)) * self.ddc(d, b, c, la, nu)).scale(&q(2));
                                    inner = &inner - &(&(self.rho(d, la) * self.dc(e, a, f, mu)) * self.ddc(f, b, c, la, nu));
                                    inner = &inner - &(&(self.dr(f, la, mu) * self.f(e, f, a)) * self.ddc(d, b, c, nu, la));
                                }
                                for g in 0..n {
                                    inner = &inner - &(&(self.f(d, f, a) * self.dc(e, b, g, mu)) * self.dc(g, c, f, nu)).scale(&q(2));
                                    inner = &inner + &(&(self.f(f, g, a) * self.dc(e, b, f, mu)) * self.dc(d, c, g, nu)).scale(&q(2));
                                }
                            }
                            for beta in 0..m {
                                for la in 0..m {
                                    inner = &inner - &(&(self.rho(d, beta) * self.ddr(a, la, beta, nu)) * self.ddc(e, b, c, mu, la));
                                }
                            }
                            add(1, &rr * &inner);
                        }
                        // R^{dμ} ∂_μ R^{eν} ( … )
                        let rdr = self.r(d, mu) * self.dr(e, nu, mu);
                        if !rdr.is_zero() {
                            let mut inner = XPoly::zero();
                            for f in 0..n {
                                for g in 0..n {
                                    inner = &inner + &(&(self.f(d, f, a) * self.c(e, f, g)) * self.dc(g, b, c, nu));
                                    inner = &inner - &(&(self.f(e, f, a) * self.c(d, f, g)) * self.dc(g, b, c, nu)).scale(&q(2));
                                }
                                for la in 0..m {
                                    inner = &inner + &(&(self.rho(d, la) * self.dc(e, a, f, la)) * self.dc(f, b, c, nu));
                                    inner = &inner - &(&(self.rho(e, la) * self.dc(d, a, f, la)) * self.dc(f, b, c, nu)).scale(&q(2));
                                    inner = &inner - &(&(self.rho(e, la) * self.dc(f, a, b, la)) * self.dc(d, c, f, nu));
                                }
                            }
                            add(1, &rdr * &inner);
                        }
                        for la in 0..m {
                            // ρ_d^β ∂_β R^{eν} R^{dμ} ∂_{μν} R^{aλ} ∂_λ C_e^{bc}
                            for beta in 0..m {
                                let t = &(&(self.rho(d, beta) * self.dr(e, nu, beta)) * self.r(d, mu)) * &(self.ddr(a, la, mu, nu) * self.dc(e, b, c, la));
                                add(1, t);
                            }
                            // 2 ρ_e^λ R^{dμ} ∂_{λμ} R^{aν} C_d^{ef} ∂_ν C_f^{bc}
                            for f in 0..n {
                                let t = &(&(self.rho(e, la) * self.r(d, mu)) * self.ddr(a, nu, la, mu)) * &(self.c(d, e, f) * self.dc(f, b, c, nu));
                                add(2, t);
                            }
                        }
                        // ρ_g^ν R^{dμ} C_d^{ef} ∂_ν C_e^{ab} ∂_μ C_f^{cg}
                        for f in 0..n {
                            for g in 0..n {
                                let t = &(&(self.rho(g, nu) * self.r(d, mu)) * self.c(d, e, f)) * &(self.dc(e, a, b, nu) * self.dc(f, c, g, mu));
                                add(1, t);
                            }
                        }
                    }
                }
            }
        }
        acc
    }
}

/// The displayed closed form, totally antisymmetrized in `a, b, c` with weight `1/6`.
pub fn obstruction_closed_form(comp: &BialgebroidComponents) -> Tensor {
    let data = Data::new(comp);
    let n = data.n;
    Tensor::from_fn(&[n, n, n], |i| data.raw(i[0], i[1], i[2])).antisymmetrize(&[0, 1, 2])
}

/// Coefficient tensor `T^{abc}` of the pure-`ζ` part `⅙ T^{abc} ζ_a ζ_b ζ_c` of `Rep(ϑ₃)(ℋ^{⊗5})`.
pub fn obstruction_via_rep(vartheta3: &GraphVector, comp: &BialgebroidComponents) -> Result<Tensor> {
    let n_vertices = vartheta3.bidegree()?.map_or(0, |(n, _)| n);
    if n_vertices != 5 {
        return Err(Error::WrongDegree { expected: 5, found: n_vertices as i64 });
    }
    let ch = comp.chart();
    let h = hamiltonian(comp);
    let val = rep_vector(vartheta3, ch, Flavor::Bialgebroid)?.apply_zeta_part(&vec![h; 5])?;
    let n = ch.n;
    let mut t = Tensor::zeros(&[n, n, n]);
    for (mono, coeff) in val.terms() {
        if mono.zeta.count_ones() != 3 || mono.xi != 0 || mono.has_p() {
            return Err(Error::Verification(format!("unexpected monomial {mono:?} in the zeta part")));
        }
        let idx: Vec<usize> = (0..n).filter(|&a| mono.zeta >> a & 1 == 1).collect();
        let base = Monomial { zeta: 0, ..*mono };
        let entry = XPoly::monomial(base.x, coeff.clone());
        for (perm, s) in crate::superalgebra::tensor::permutations(3) {
            let j = [idx[perm[0]], idx[perm[1]], idx[perm[2]]];
            let cur = t.get(&j).clone();
            t.set(&j, if s < 0 { &cur - &entry } else { &cur + &entry });
        }
    }
    Ok(t)
}

/// The rational `λ` with `a = λ b`, if one exists; `Some(None)` when both vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionFit {
    pub lambda: Option<Q>,
    pub proportional: bool,
}

impl ObstructionFit {
    pub fn fit(a: &Tensor, b: &Tensor) -> ObstructionFit {
        let mut lambda: Option<Q> = None;
        for ((_, x), (_, y)) in a.entries().zip(b.entries()) {
            if let Some((e, c)) = y.terms().next() {
                let ax = x.terms().find(|(f, _)| *f == e).map(|(_, v)| v.clone()).unwrap_or_else(Q::zero);
                lambda = Some(ax / c);
                break;
            }
        }
        match lambda {
            None => ObstructionFit { lambda: None, proportional: a.is_zero() },
            Some(l) => {
                let ok = b.scale(&l) == *a;
                ObstructionFit { lambda: Some(l), proportional: ok }
            }
        }
    }
}
