//! Component tensors of a degree-3 function, the Hamiltonian, and the
//! constraint tensors of its nilpotency.

use super::poly::{big_bracket, Chart, Monomial, SuperPolynomial, XExp, XPoly, MAX_DIM};
use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::rational::{q, qf, Q};
use num_traits::Zero;
use rand::Rng;

/// `ρ_a^μ`, `f_ab^c`, `R^{a|μ}`, `C_c^{ab}`, `φ^{abc}`, `ψ_abc`, stored with
/// index order as written here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebroidComponents {
    chart: Chart,
    pub rho: Tensor,
    pub f: Tensor,
    pub r: Tensor,
    pub c: Tensor,
    pub phi: Tensor,
    pub psi: Tensor,
}

fn sum(range: usize, mut f: impl FnMut(usize) -> XPoly) -> XPoly {
    (0..range).fold(XPoly::zero(), |acc, i| &acc + &f(i))
}

fn d(p: &XPoly, mu: usize) -> XPoly {
    p.deriv(mu)
}

impl BialgebroidComponents {
    pub fn zero(chart: Chart) -> BialgebroidComponents {
        let (m, n) = (chart.m, chart.n);
        BialgebroidComponents {
            chart,
            rho: Tensor::zeros(&[n, m]),
            f: Tensor::zeros(&[n, n, n]),
            r: Tensor::zeros(&[n, m]),
            c: Tensor::zeros(&[n, n, n]),
            phi: Tensor::zeros(&[n, n, n]),
            psi: Tensor::zeros(&[n, n, n]),
        }
    }

    /// Checks shapes, the symmetry of `f`, `C`, `φ`, `ψ`, and that entries only
    /// use the chart's base coordinates.
    pub fn new(chart: Chart, rho: Tensor, f: Tensor, r: Tensor, c: Tensor, phi: Tensor, psi: Tensor) -> Result<Self> {
        let out = BialgebroidComponents { chart, rho, f, r, c, phi, psi };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.chart.m, self.chart.n);
        let shapes: [(&str, &Tensor, Vec<usize>); 6] = [
            ("rho", &self.rho, vec![n, m]),
            ("f", &self.f, vec![n, n, n]),
            ("R", &self.r, vec![n, m]),
            ("C", &self.c, vec![n, n, n]),
            ("phi", &self.phi, vec![n, n, n]),
            ("psi", &self.psi, vec![n, n, n]),
        ];
        for (name, t, dims) in &shapes {
            if t.dims() != dims.as_slice() {
                return Err(Error::InvalidComponents(format!("{name} has shape {:?}, expected {dims:?}", t.dims())));
            }
            if let Some((idx, _)) = t.entries().find(|(_, p)| p.span() > m) {
                return Err(Error::InvalidComponents(format!("{name}{idx:?} depends on coordinates beyond m={m}")));
            }
        }
        let checks: [(&str, &Tensor, &[usize]); 4] = [
            ("f is not antisymmetric in its lower indices", &self.f, &[0, 1]),
            ("C is not antisymmetric in its upper indices", &self.c, &[1, 2]),
            ("phi is not totally antisymmetric", &self.phi, &[0, 1, 2]),
            ("psi is not totally antisymmetric", &self.psi, &[0, 1, 2]),
        ];
        for (msg, t, slots) in checks {
            if !t.is_antisymmetric(slots) {
                return Err(Error::InvalidComponents(msg.into()));
            }
        }
        Ok(())
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Components of the Lie-bialgebroid sector: `φ = ψ = 0`.
    pub fn without_phi_psi(&self) -> BialgebroidComponents {
        let n = self.chart.n;
        BialgebroidComponents { phi: Tensor::zeros(&[n, n, n]), psi: Tensor::zeros(&[n, n, n]), ..self.clone() }
    }

    pub fn with_r_zero(&self) -> BialgebroidComponents {
        BialgebroidComponents { r: Tensor::zeros(&[self.chart.n, self.chart.m]), ..self.clone() }
    }
}

fn gen(chart: Chart, kind: char, i: usize) -> SuperPolynomial {
    match kind {
        'x' => SuperPolynomial::xi(chart, i),
        'z' => SuperPolynomial::zeta(chart, i),
        'p' => SuperPolynomial::p(chart, i),
        _ => unreachable!(),
    }
}

/// Product of generators in the written order, e.g. `"zzx"` with `[a, b, c]` is `ζ_a ζ_b ξ^c`.
pub fn word(chart: Chart, kinds: &str, idx: &[usize]) -> SuperPolynomial {
    kinds
        .chars()
        .zip(idx)
        .fold(SuperPolynomial::one(chart), |acc, (k, &i)| &acc * &gen(chart, k, i))
}

/// `Σ T[idx] · word(idx)` over every multi-index of `T`.
pub fn contract(chart: Chart, t: &Tensor, kinds: &str, perm: &[usize]) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero(chart);
    for (idx, coeff) in t.entries() {
        if coeff.is_zero() {
            continue;
        }
        let w: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
        out = &out + &word(chart, kinds, &w).mul_x(coeff);
    }
    out
}

/// `ℋ = ρ ξp − ½ f ξξζ + R ζp − ½ C ζζξ + ⅙ φ ζζζ + ⅙ ψ ξξξ`.
pub fn hamiltonian(comp: &BialgebroidComponents) -> SuperPolynomial {
    let ch = comp.chart;
    let terms = [
        (q(1), contract(ch, &comp.rho, "xp", &[0, 1])),
        (qf(-1, 2), contract(ch, &comp.f, "xxz", &[0, 1, 2])),
        (q(1), contract(ch, &comp.r, "zp", &[0, 1])),
        // C_c^{ab} ζ_a ζ_b ξ^c
        (qf(-1, 2), contract(ch, &comp.c, "zzx", &[1, 2, 0])),
        (qf(1, 6), contract(ch, &comp.phi, "zzz", &[0, 1, 2])),
        (qf(1, 6), contract(ch, &comp.psi, "xxx", &[0, 1, 2])),
    ];
    terms.iter().fold(SuperPolynomial::zero(ch), |acc, (w, p)| &acc + &p.scale(w))
}

/// The nine constraint tensors, index order as in their names:
/// `C1[a,b,μ]`, `C2[a,b,c,d]`, `C3[a,b,μ]`, `C4[d,a,b,c]`, `C5[μ,ν]`,
/// `C6[a,b,μ]`, `C7[a,b,c,d]`, `C8[a,b,c,d]`, `C9[a,b,c,d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraints {
    pub tensors: [Tensor; 9],
}

impl Constraints {
    pub fn all_zero(&self) -> bool {
        self.tensors.iter().all(Tensor::is_zero)
    }

    /// 1-based labels of the nonzero constraints.
    pub fn violated(&self) -> Vec<usize> {
        (0..9).filter(|&i| !self.tensors[i].is_zero()).map(|i| i + 1).collect()
    }

    /// At `m = 0`: `D1..D5` are `C2, C4, C7, C8, C9`.
    pub fn bialgebra(&self) -> [&Tensor; 5] {
        [&self.tensors[1], &self.tensors[3], &self.tensors[6], &self.tensors[7], &self.tensors[8]]
    }
}

pub fn constraints(comp: &BialgebroidComponents) -> Constraints {
    let (m, n) = (comp.chart.m, comp.chart.n);
    let (rho, f, r, c, phi, psi) = (&comp.rho, &comp.f, &comp.r, &comp.c, &comp.phi, &comp.psi);
    let third = qf(1, 3);
    let half = qf(1, 2);

    // C1_ab^μ = 2ρ_[a^λ∂_λρ_b]^μ − ρ_c^μ f_ab^c + R^{c|μ}ψ_cab
    let c1 = {
        let t1 = Tensor::from_fn(&[n, n, m], |i| sum(m, |l| rho.get(&[i[0], l]) * &d(rho.get(&[i[1], i[2]]), l)))
            .antisymmetrize(&[0, 1])
            .scale(&q(2));
        let t2 = Tensor::from_fn(&[n, n, m], |i| {
            sum(n, |e| &(r.get(&[e, i[2]]) * psi.get(&[e, i[0], i[1]])) - &(rho.get(&[e, i[2]]) * f.get(&[i[0], i[1], e])))
        });
        t1.add(&t2)
    };

    // C2_abc^d = ρ_[a^λ∂_λ f_bc]^d − f_e[a^d f_bc]^e + ⅓R^{d|λ}∂_λψ_abc − ψ_e[ab C_c]^{ed}
    let c2 = {
        let t1 = Tensor::from_fn(&[n, n, n, n], |i| {
            &sum(m, |l| rho.get(&[i[0], l]) * &d(f.get(&[i[1], i[2], i[3]]), l))
                - &sum(n, |e| &(f.get(&[e, i[0], i[3]]) * f.get(&[i[1], i[2], e])) + &(psi.get(&[e, i[0], i[1]]) * c.get(&[i[2], e, i[3]])))
        })
        .antisymmetrize(&[0, 1, 2]);
        let t2 = Tensor::from_fn(&[n, n, n, n], |i| {
            sum(m, |l| r.get(&[i[3], l]) * &d(psi.get(&[i[0], i[1], i[2]]), l)).scale(&third)
        });
        t1.add(&t2)
    };

    // C3^{ab|μ} = 2R^{[a|λ}∂_λR^{b]|μ} − R^{c|μ}C_c^{ab} + ρ_c^μ φ^{cab}
    let c3 = {
        let t1 = Tensor::from_fn(&[n, n, m], |i| sum(m, |l| r.get(&[i[0], l]) * &d(r.get(&[i[1], i[2]]), l)))
            .antisymmetrize(&[0, 1])
            .scale(&q(2));
        let t2 = Tensor::from_fn(&[n, n, m], |i| {
            sum(n, |e| &(rho.get(&[e, i[2]]) * phi.get(&[e, i[0], i[1]])) - &(r.get(&[e, i[2]]) * c.get(&[e, i[0], i[1]])))
        });
        t1.add(&t2)
    };

    // C4_d^{abc} = R^{[a|λ}∂_λC_d^{bc]} − C_d^{e[a}C_e^{bc]} + ⅓ρ_d^λ∂_λφ^{abc} − φ^{e[ab}f_ed^{c]}
    let c4 = {
        let t1 = Tensor::from_fn(&[n, n, n, n], |i| {
            let (dd, a, b, cc) = (i[0], i[1], i[2], i[3]);
            &sum(m, |l| r.get(&[a, l]) * &d(c.get(&[dd, b, cc]), l))
                - &sum(n, |e| &(c.get(&[dd, e, a]) * c.get(&[e, b, cc])) + &(phi.get(&[e, a, b]) * f.get(&[e, dd, cc])))
        })
        .antisymmetrize(&[1, 2, 3]);
        let t2 = Tensor::from_fn(&[n, n, n, n], |i| {
            sum(m, |l| rho.get(&[i[0], l]) * &d(phi.get(&[i[1], i[2], i[3]]), l)).scale(&third)
        });
        t1.add(&t2)
    };

    // C5^{μν} = R^{a(μ}ρ_a^{ν)}
    let c5 = Tensor::from_fn(&[m, m], |i| sum(n, |a| r.get(&[a, i[0]]) * rho.get(&[a, i[1]]))).symmetrize(&[0, 1]);

    // C6_a^{b|μ} = ρ_a^λ∂_λR^{b|μ} − R^{b|λ}∂_λρ_a^μ − ρ_c^μ C_a^{bc} − R^{c|μ}f_ca^b
    let c6 = Tensor::from_fn(&[n, n, m], |i| {
        let (a, b, mu) = (i[0], i[1], i[2]);
        &(&sum(m, |l| rho.get(&[a, l]) * &d(r.get(&[b, mu]), l)) - &sum(m, |l| r.get(&[b, l]) * &d(rho.get(&[a, mu]), l)))
            - &sum(n, |e| &(rho.get(&[e, mu]) * c.get(&[a, b, e])) + &(r.get(&[e, mu]) * f.get(&[e, a, b])))
    });

    // C7_ab^{cd} = ρ_[a^λ∂_λC_b]^{cd} + R^{[c|λ}∂_λ f_ab^{d]} + 2f_e[a^{[c}C_b]^{d]e}
    //              − ½f_ab^e C_e^{cd} − ½ψ_eab φ^{ecd}
    let c7 = {
        let t1 = Tensor::from_fn(&[n, n, n, n], |i| sum(m, |l| rho.get(&[i[0], l]) * &d(c.get(&[i[1], i[2], i[3]]), l)))
            .antisymmetrize(&[0, 1]);
        let t2 = Tensor::from_fn(&[n, n, n, n], |i| sum(m, |l| r.get(&[i[2], l]) * &d(f.get(&[i[0], i[1], i[3]]), l)))
            .antisymmetrize(&[2, 3]);
        let t3 = Tensor::from_fn(&[n, n, n, n], |i| sum(n, |e| f.get(&[e, i[0], i[2]]) * c.get(&[i[1], i[3], e])))
            .antisymmetrize(&[0, 1])
            .antisymmetrize(&[2, 3])
            .scale(&q(2));
        let t4 = Tensor::from_fn(&[n, n, n, n], |i| {
            sum(n, |e| &(f.get(&[i[0], i[1], e]) * c.get(&[e, i[2], i[3]])) + &(psi.get(&[e, i[0], i[1]]) * phi.get(&[e, i[2], i[3]])))
                .scale(&-half.clone())
        });
        t1.add(&t2).add(&t3).add(&t4)
    };

    // C8^{abcd} = ⅓R^{[d|λ}∂_λφ^{abc]} + ½φ^{e[ab}C_e^{cd]}
    let c8 = {
        let t1 = Tensor::from_fn(&[n, n, n, n], |i| sum(m, |l| r.get(&[i[3], l]) * &d(phi.get(&[i[0], i[1], i[2]]), l)).scale(&third))
            .antisymmetrize(&[0, 1, 2, 3]);
        let t2 = Tensor::from_fn(&[n, n, n, n], |i| sum(n, |e| phi.get(&[e, i[0], i[1]]) * c.get(&[e, i[2], i[3]])).scale(&half))
            .antisymmetrize(&[0, 1, 2, 3]);
        t1.add(&t2)
    };

    // C9_abcd = ⅓ρ_[d^λ∂_λψ_abc] + ½ψ_e[ab f_cd]^e
    let c9 = {
        let t1 = Tensor::from_fn(&[n, n, n, n], |i| sum(m, |l| rho.get(&[i[3], l]) * &d(psi.get(&[i[0], i[1], i[2]]), l)).scale(&third))
            .antisymmetrize(&[0, 1, 2, 3]);
        let t2 = Tensor::from_fn(&[n, n, n, n], |i| sum(n, |e| psi.get(&[e, i[0], i[1]]) * f.get(&[i[2], i[3], e])).scale(&half))
            .antisymmetrize(&[0, 1, 2, 3]);
        t1.add(&t2)
    };

    Constraints { tensors: [c1, c2, c3, c4, c5, c6, c7, c8, c9] }
}

/// The degree-4 monomial type carried by each constraint, as
/// `(generator word, tensor slot feeding each letter)`.
pub const CONSTRAINT_WORDS: [(&str, &[usize]); 9] = [
    ("xxp", &[0, 1, 2]),
    ("xxxz", &[0, 1, 2, 3]),
    ("zzp", &[0, 1, 2]),
    ("xzzz", &[0, 1, 2, 3]),
    ("pp", &[0, 1]),
    ("xzp", &[0, 1, 2]),
    ("xxzz", &[0, 1, 2, 3]),
    ("zzzz", &[0, 1, 2, 3]),
    ("xxxx", &[0, 1, 2, 3]),
];

/// Weights `κ_i` in `{ℋ,ℋ} = Σ_i κ_i P_i`, where `P_i` contracts `C_i` with its monomial word.
pub fn kappa() -> [Q; 9] {
    [q(-1), q(1), q(-1), q(-1), q(-2), q(-2), q(1), q(1), q(1)]
}

/// `P_i = Σ C_i[idx] · word_i(idx)`.
pub fn constraint_polynomials(chart: Chart, cs: &Constraints) -> [SuperPolynomial; 9] {
    std::array::from_fn(|i| {
        let (w, perm) = CONSTRAINT_WORDS[i];
        contract(chart, &cs.tensors[i], w, perm)
    })
}

/// `{ℋ,ℋ}` assembled from the constraint tensors alone.
pub fn square_from_constraints(chart: Chart, cs: &Constraints) -> SuperPolynomial {
    let k = kappa();
    constraint_polynomials(chart, cs)
        .iter()
        .zip(k.iter())
        .fold(SuperPolynomial::zero(chart), |acc, (p, w)| &acc + &p.scale(w))
}

/// `{ℋ,ℋ}` computed with the big bracket.
pub fn hamiltonian_square(comp: &BialgebroidComponents) -> SuperPolynomial {
    let h = hamiltonian(comp);
    big_bracket(&h, &h).expect("same chart")
}

/// Subalgebra membership of a function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub lie_quasi: bool,
    pub quasi_lie: bool,
    pub lie: bool,
}

pub fn classify(f: &SuperPolynomial) -> Classification {
    let lie_quasi = f.terms().all(|(m, _)| m.has_p() || m.zeta != 0);
    let quasi_lie = f.terms().all(|(m, _)| m.has_p() || m.xi != 0);
    Classification { lie_quasi, quasi_lie, lie: lie_quasi && quasi_lie }
}

/// Which of proto, Lie-quasi, quasi-Lie, Lie the components describe.
pub fn structure_name(comp: &BialgebroidComponents) -> &'static str {
    let cs = constraints(comp);
    if !cs.all_zero() {
        return "none";
    }
    match (comp.phi.is_zero(), comp.psi.is_zero()) {
        (true, true) => "Lie",
        (false, true) => "Lie-quasi",
        (true, false) => "quasi-Lie",
        (false, false) => "proto-Lie",
    }
}

/// `{f,g} = R^{a[μ}ρ_a^{ν]} ∂_μ f ∂_ν g` on base functions.
pub fn base_poisson(comp: &BialgebroidComponents, f: &XPoly, g: &XPoly) -> XPoly {
    let (m, n) = (comp.chart.m, comp.chart.n);
    let pi = Tensor::from_fn(&[m, m], |i| sum(n, |a| comp.r.get(&[a, i[0]]) * comp.rho.get(&[a, i[1]]))).antisymmetrize(&[0, 1]);
    let mut out = XPoly::zero();
    for mu in 0..m {
        for nu in 0..m {
            out = &out + &(&(pi.get(&[mu, nu]) * &f.deriv(mu)) * &g.deriv(nu));
        }
    }
    out
}

fn delta(a: usize, b: usize) -> XPoly {
    if a == b {
        XPoly::one()
    } else {
        XPoly::zero()
    }
}

/// `E = Tℳ` with `ρ = id`, `f = 0`, `R^{a|μ} = π^{μa}`, `C_c^{ab} = −∂_c π^{ab}`,
/// so that the induced base bracket is `π`.
pub fn fixture_poisson(m: usize, pi: &Tensor) -> Result<BialgebroidComponents> {
    let chart = Chart::new(m, m)?;
    if pi.dims() != [m, m] || !pi.is_antisymmetric(&[0, 1]) {
        return Err(Error::InvalidComponents("pi must be an antisymmetric m x m tensor".into()));
    }
    let n = m;
    BialgebroidComponents::new(
        chart,
        Tensor::from_fn(&[n, m], |i| delta(i[0], i[1])),
        Tensor::zeros(&[n, n, n]),
        Tensor::from_fn(&[n, m], |i| pi.get(&[i[1], i[0]]).clone()),
        Tensor::from_fn(&[n, n, n], |i| -&pi.get(&[i[1], i[2]]).deriv(i[0])),
        Tensor::zeros(&[n, n, n]),
        Tensor::zeros(&[n, n, n]),
    )
}

/// `R^{a|μ} = ρ_b^μ Λ^{ba}`, `C_c^{ab} = −ρ_c^μ∂_μΛ^{ab} − 2Λ^{d[a}f_dc^{b]}`, `φ = ψ = 0`.
pub fn fixture_coboundary(chart: Chart, rho: &Tensor, f: &Tensor, lambda: &Tensor) -> Result<BialgebroidComponents> {
    let (m, n) = (chart.m, chart.n);
    if lambda.dims() != [n, n] || !lambda.is_antisymmetric(&[0, 1]) {
        return Err(Error::InvalidComponents("Lambda must be an antisymmetric n x n tensor".into()));
    }
    let r = Tensor::from_fn(&[n, m], |i| sum(n, |b| rho.get(&[b, i[1]]) * lambda.get(&[b, i[0]])));
    let raw = Tensor::from_fn(&[n, n, n], |i| sum(n, |dd| lambda.get(&[dd, i[1]]) * f.get(&[dd, i[0], i[2]])))
        .antisymmetrize(&[1, 2])
        .scale(&q(2));
    let c = Tensor::from_fn(&[n, n, n], |i| {
        &-&sum(m, |mu| rho.get(&[i[0], mu]) * &lambda.get(&[i[1], i[2]]).deriv(mu)) - raw.get(i)
    });
    BialgebroidComponents::new(chart, rho.clone(), f.clone(), r, c, Tensor::zeros(&[n, n, n]), Tensor::zeros(&[n, n, n]))
}

/// Point chart components from the bialgebra maps `f, C, φ, ψ`.
pub fn fixture_bialgebra(n: usize, f: Tensor, c: Tensor, phi: Tensor, psi: Tensor) -> Result<BialgebroidComponents> {
    let chart = Chart::point(n)?;
    BialgebroidComponents::new(chart, Tensor::zeros(&[n, 0]), f, Tensor::zeros(&[n, 0]), c, phi, psi)
}

/// The totally antisymmetric symbol on three indices.
pub fn epsilon3() -> Tensor {
    Tensor::from_fn(&[3, 3, 3], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        if a == b || b == c || a == c {
            return XPoly::zero();
        }
        let s = crate::canon::permutation_sign(&[a, b, c]);
        XPoly::constant(q(s as i64))
    })
}

/// Which component tensors a random draw fills in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sector {
    pub rho: bool,
    pub f: bool,
    pub r: bool,
    pub c: bool,
    pub phi: bool,
    pub psi: bool,
}

impl Sector {
    pub const ALL: Sector = Sector { rho: true, f: true, r: true, c: true, phi: true, psi: true };
    pub const LIE: Sector = Sector { phi: false, psi: false, ..Sector::ALL };
}

pub(crate) fn exponents(m: usize, max_deg: u32) -> Vec<XExp> {
    let mut out = vec![[0u8; MAX_DIM]];
    for _ in 0..max_deg {
        let mut next = out.clone();
        for e in &out {
            for mu in 0..m {
                let mut f = *e;
                f[mu] += 1;
                next.push(f);
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

/// Integer coefficients in `[−3, 3]` on every monomial of degree `≤ max_deg`.
pub fn random_xpoly<R: Rng>(rng: &mut R, m: usize, max_deg: u32) -> XPoly {
    let mut out = XPoly::zero();
    for e in exponents(m, max_deg) {
        out.add_term(e, q(rng.gen_range(-3..=3)));
    }
    out
}

/// A random tensor, antisymmetrized over `slots` by summing signed permutations.
pub fn random_tensor<R: Rng>(rng: &mut R, dims: &[usize], m: usize, max_deg: u32, slots: &[usize]) -> Tensor {
    let raw = Tensor::from_fn(dims, |_| random_xpoly(rng, m, max_deg));
    if slots.is_empty() {
        return raw;
    }
    let k: i64 = (1..=slots.len() as i64).product();
    raw.antisymmetrize(slots).scale(&q(k))
}

pub fn random_components<R: Rng>(rng: &mut R, chart: Chart, max_deg: u32, sector: Sector) -> BialgebroidComponents {
    let (m, n) = (chart.m, chart.n);
    let pick = |on: bool, t: Tensor| if on { t } else { t.scale(&Q::zero()) };
    let rho = pick(sector.rho, random_tensor(rng, &[n, m], m, max_deg, &[]));
    let f = pick(sector.f, random_tensor(rng, &[n, n, n], m, max_deg, &[0, 1]));
    let r = pick(sector.r, random_tensor(rng, &[n, m], m, max_deg, &[]));
    let c = pick(sector.c, random_tensor(rng, &[n, n, n], m, max_deg, &[1, 2]));
    let phi = pick(sector.phi, random_tensor(rng, &[n, n, n], m, max_deg, &[0, 1, 2]));
    let psi = pick(sector.psi, random_tensor(rng, &[n, n, n], m, max_deg, &[0, 1, 2]));
    BialgebroidComponents::new(chart, rho, f, r, c, phi, psi).expect("symmetric by construction")
}

/// A random homogeneous function of the given degree.
pub fn random_function<R: Rng>(rng: &mut R, chart: Chart, degree: u32, max_x_deg: u32, density: f64) -> SuperPolynomial {
    let (m, n) = (chart.m, chart.n);
    let mut out = SuperPolynomial::zero(chart);
    let xs = exponents(m, max_x_deg);
    let ps = exponents(m, degree / 2);
    for p in &ps {
        let pd: u32 = p.iter().map(|&k| k as u32).sum();
        if 2 * pd > degree {
            continue;
        }
        let odd = degree - 2 * pd;
        for mask in 0u32..1 << (2 * n) {
            if mask.count_ones() != odd {
                continue;
            }
            let xi = (mask & ((1 << n) - 1)) as u16;
            let zeta = (mask >> n) as u16;
            for x in &xs {
                if rng.gen_bool(density) {
                    let c = rng.gen_range(-3..=3);
                    out.add_term(Monomial { x: *x, p: *p, xi, zeta }, q(c));
                }
            }
        }
    }
    out
}

fn single(dims: &[usize], entries: &[(&[usize], XPoly)]) -> Tensor {
    let mut t = Tensor::zeros(dims);
    for (idx, v) in entries {
        t.set(idx, v.clone());
    }
    t
}

fn antisym_unit(n: usize, idx: [usize; 3]) -> Tensor {
    let mut t = Tensor::zeros(&[n, n, n]);
    for (p, s) in super::tensor::permutations(3) {
        t.set(&[idx[p[0]], idx[p[1]], idx[p[2]]], XPoly::constant(q(s)));
    }
    t
}

/// Nine component sets, the `i`-th violating exactly `C_{i+1}`.
pub fn single_constraint_probes<R: Rng>(rng: &mut R) -> Vec<BialgebroidComponents> {
    let one = XPoly::one;
    let x0 = || XPoly::var(0);
    let base = |m: usize, n: usize| BialgebroidComponents::zero(Chart::new(m, n).expect("small chart"));
    let mut out = Vec::with_capacity(9);

    let mut p = base(1, 2);
    p.rho = single(&[2, 1], &[(&[0, 0], one()), (&[1, 0], x0())]);
    out.push(p);

    let mut p = base(0, 3);
    p.f = random_tensor(rng, &[3, 3, 3], 0, 0, &[0, 1]);
    out.push(p);

    let mut p = base(1, 2);
    p.r = single(&[2, 1], &[(&[0, 0], one()), (&[1, 0], x0())]);
    out.push(p);

    let mut p = base(0, 3);
    p.c = random_tensor(rng, &[3, 3, 3], 0, 0, &[1, 2]);
    out.push(p);

    let mut p = base(1, 1);
    p.rho = single(&[1, 1], &[(&[0, 0], one())]);
    p.r = single(&[1, 1], &[(&[0, 0], one())]);
    out.push(p);

    let mut p = base(2, 2);
    p.rho = single(&[2, 2], &[(&[0, 0], one()), (&[1, 1], one())]);
    p.c = single(&[2, 2, 2], &[(&[0, 0, 1], one()), (&[0, 1, 0], -&one())]);
    out.push(p);

    let mut p = base(0, 3);
    p.phi = antisym_unit(3, [0, 1, 2]);
    p.psi = antisym_unit(3, [0, 1, 2]);
    out.push(p);

    let mut p = base(1, 4);
    p.phi = antisym_unit(4, [0, 1, 2]).map(|e| e * &x0());
    p.r = single(&[4, 1], &[(&[3, 0], one())]);
    out.push(p);

    let mut p = base(1, 4);
    p.psi = antisym_unit(4, [0, 1, 2]).map(|e| e * &x0());
    p.rho = single(&[4, 1], &[(&[3, 0], one())]);
    out.push(p);

    for p in &out {
        p.validate().expect("probe components are well formed");
    }
    out
}
