//! The curved homotopy Poisson brackets `l₀ … l₃` on functions of `(x, ζ)`.

use super::components::{constraint_polynomials, constraints, contract, kappa, BialgebroidComponents};
use super::poly::{big_bracket, Chart, SuperPolynomial};
use crate::error::{Error, Result};
use crate::nr::{nr_bracket, SymOp};
use crate::rational::{qf, Q};
use num_traits::One;
use std::sync::Arc;

pub fn in_zeta_sector(f: &SuperPolynomial) -> bool {
    f.terms().all(|(m, _)| m.xi == 0 && !m.has_p())
}

fn check(fs: &[&SuperPolynomial]) -> Result<()> {
    if fs.iter().all(|f| in_zeta_sector(f)) {
        Ok(())
    } else {
        Err(Error::NotZetaSector)
    }
}

fn sign(parity: u8) -> Q {
    if parity.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `l₀ = −⅙ φ^{abc} ζ_a ζ_b ζ_c`, the sign that makes `l` the derived brackets of `−ℋ`.
pub fn l0(comp: &BialgebroidComponents) -> SuperPolynomial {
    contract(comp.chart(), &comp.phi, "zzz", &[0, 1, 2]).scale(&qf(-1, 6))
}

/// `l₁(f) = R^{a|μ} ζ_a ∂f/∂x^μ − ½ C_c^{ab} ζ_a ζ_b ∂f/∂ζ_c`.
pub fn l1(comp: &BialgebroidComponents, f: &SuperPolynomial) -> Result<SuperPolynomial> {
    check(&[f])?;
    let ch = comp.chart();
    let mut out = SuperPolynomial::zero(ch);
    for a in 0..ch.n {
        let z = SuperPolynomial::zeta(ch, a);
        for mu in 0..ch.m {
            out = &out + &(&z * &f.d_x(mu)).mul_x(comp.r.get(&[a, mu]));
        }
        for b in 0..ch.n {
            let zz = &z * &SuperPolynomial::zeta(ch, b);
            for c in 0..ch.n {
                let w = comp.c.get(&[c, a, b]);
                if !w.is_zero() {
                    out = &out - &(&zz * &f.d_zeta(c)).mul_x(&w.scale(&qf(1, 2)));
                }
            }
        }
    }
    Ok(out)
}

/// `l₂(f,g) = −ρ_a^μ(∂f/∂ζ_a ∂g/∂x^μ + (−1)^{|f|} ∂f/∂x^μ ∂g/∂ζ_a)
///            + (−1)^{|f|} f_ab^c ζ_c ∂f/∂ζ_a ∂g/∂ζ_b`.
pub fn l2(comp: &BialgebroidComponents, f: &SuperPolynomial, g: &SuperPolynomial) -> Result<SuperPolynomial> {
    check(&[f, g])?;
    let ch = comp.chart();
    let mut out = SuperPolynomial::zero(ch);
    for (par, fp) in f.split_parity().iter().enumerate() {
        if fp.is_zero() {
            continue;
        }
        let s = sign(par as u8);
        for a in 0..ch.n {
            let dfa = fp.d_zeta(a);
            let dga = g.d_zeta(a);
            for mu in 0..ch.m {
                let w = comp.rho.get(&[a, mu]);
                if w.is_zero() {
                    continue;
                }
                let t = &(&dfa * &g.d_x(mu)) + &(&fp.d_x(mu) * &dga).scale(&s);
                out = &out - &t.mul_x(w);
            }
            for b in 0..ch.n {
                let prod = &dfa * &g.d_zeta(b);
                if prod.is_zero() {
                    continue;
                }
                for c in 0..ch.n {
                    let w = comp.f.get(&[a, b, c]);
                    if !w.is_zero() {
                        out = &out + &(&SuperPolynomial::zeta(ch, c) * &prod).mul_x(&w.scale(&s));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `l₃(f,g,h) = (−1)^{|g|} ψ_abc ∂f/∂ζ_a ∂g/∂ζ_b ∂h/∂ζ_c`.
pub fn l3(comp: &BialgebroidComponents, f: &SuperPolynomial, g: &SuperPolynomial, h: &SuperPolynomial) -> Result<SuperPolynomial> {
    check(&[f, g, h])?;
    let ch = comp.chart();
    let mut out = SuperPolynomial::zero(ch);
    for (par, gp) in g.split_parity().iter().enumerate() {
        if gp.is_zero() {
            continue;
        }
        let s = sign(par as u8);
        for a in 0..ch.n {
            let fa = f.d_zeta(a);
            if fa.is_zero() {
                continue;
            }
            for b in 0..ch.n {
                let fg = &fa * &gp.d_zeta(b);
                if fg.is_zero() {
                    continue;
                }
                for c in 0..ch.n {
                    let w = comp.psi.get(&[a, b, c]);
                    if !w.is_zero() {
                        out = &out + &(&fg * &h.d_zeta(c)).mul_x(&w.scale(&s));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `l₀ … l₃` as odd operators on the unshifted algebra.
pub fn operators(comp: &BialgebroidComponents) -> [SymOp; 4] {
    let ch = comp.chart();
    let (c0, c1, c2, c3) = (comp.clone(), comp.clone(), comp.clone(), comp.clone());
    [
        SymOp::new(ch, 0, 1, 0, Arc::new(move |_| l0(&c0))),
        SymOp::new(ch, 1, 1, 0, Arc::new(move |w| l1(&c1, &w[0]).expect("zeta-sector input"))),
        SymOp::new(ch, 2, 1, 0, Arc::new(move |w| l2(&c2, &w[0], &w[1]).expect("zeta-sector input"))),
        SymOp::new(ch, 3, 1, 0, Arc::new(move |w| l3(&c3, &w[0], &w[1], &w[2]).expect("zeta-sector input"))),
    ]
}

/// 1-based constraint labels governed by the homotopy identity of each arity.
pub const CONSTRAINT_GROUPS: [&[usize]; 5] = [&[8], &[3, 4], &[5, 6, 7], &[1, 2], &[9]];

/// The arity-`k` part of `½[l,l]`: `[l₀,l₁]`, `[l₀,l₂] + ½[l₁,l₁]`, `[l₀,l₃] + [l₁,l₂]`,
/// `[l₁,l₃] + ½[l₂,l₂]`, `[l₂,l₃]`.
pub fn homotopy_identity(comp: &BialgebroidComponents, k: usize) -> SymOp {
    let l = operators(comp);
    let half = qf(1, 2);
    match k {
        0 => nr_bracket(&l[0], &l[1]),
        1 => nr_bracket(&l[0], &l[2]).add(&nr_bracket(&l[1], &l[1]).scale(&half)),
        2 => nr_bracket(&l[0], &l[3]).add(&nr_bracket(&l[1], &l[2])),
        3 => nr_bracket(&l[1], &l[3]).add(&nr_bracket(&l[2], &l[2]).scale(&half)),
        4 => nr_bracket(&l[2], &l[3]),
        _ => panic!("homotopy identities stop at arity 4"),
    }
}

/// Drops every monomial containing `ξ` or `p`.
pub fn zeta_projection(f: &SuperPolynomial) -> SuperPolynomial {
    f.filter(|m| m.xi == 0 && !m.has_p())
}

/// `P{…{{Ψ, a₁}, a₂}…, a_k}`.
pub fn derived_bracket(psi: &SuperPolynomial, args: &[SuperPolynomial]) -> Result<SuperPolynomial> {
    let mut acc = psi.clone();
    for a in args {
        acc = big_bracket(&acc, a)?;
    }
    Ok(zeta_projection(&acc))
}

/// `Σ_{i ∈ group k} κ_i P_i`, the part of `{ℋ,ℋ}` seen by the arity-`k` identity.
pub fn constraint_group_polynomial(comp: &BialgebroidComponents, k: usize) -> SuperPolynomial {
    let ch: Chart = comp.chart();
    let polys = constraint_polynomials(ch, &constraints(comp));
    let w = kappa();
    CONSTRAINT_GROUPS[k]
        .iter()
        .fold(SuperPolynomial::zero(ch), |acc, &i| &acc + &polys[i - 1].scale(&w[i - 1]))
}

/// The generators `x^μ`, `ζ_a` of the function algebra.
pub fn generators(chart: Chart) -> Vec<SuperPolynomial> {
    (0..chart.m)
        .map(|mu| SuperPolynomial::x(chart, mu))
        .chain((0..chart.n).map(|a| SuperPolynomial::zeta(chart, a)))
        .collect()
}
