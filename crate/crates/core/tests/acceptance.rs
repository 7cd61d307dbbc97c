use grachs::complex::{lie_bracket, theta2};
use grachs::enumerate::EnumOptions;
use grachs::homology::{apply_delta, cohomology, is_coboundary, pair, Coboundary};
use grachs::operad::{orient_complex, upsilon_labeled};
use grachs::rational::{q, qf, Q};
use grachs::representation::graphops::theta_bracket_6;
use grachs::representation::obstruction::{obstruction_closed_form, obstruction_via_rep, ObstructionFit};
use grachs::representation::reference::reference_apply;
use grachs::representation::{operad_morphism_check, rep, Flavor};
use grachs::sample::{random_element, random_graph, random_operad_element};
use grachs::superalgebra::components::{
    classify, constraints, epsilon3, fixture_bialgebra, fixture_coboundary, fixture_poisson, hamiltonian,
    hamiltonian_square, random_components, random_function, random_tensor, single_constraint_probes,
    square_from_constraints, Sector,
};
use grachs::superalgebra::ideal::in_truncated_ideal;
use grachs::superalgebra::lbrackets::{
    constraint_group_polynomial, derived_bracket, generators, homotopy_identity, zeta_projection, CONSTRAINT_GROUPS,
};
use grachs::superalgebra::{big_bracket, BialgebroidComponents, Chart, Monomial, SuperPolynomial, Tensor, XPoly};
use grachs::theta::{self, ThetaPair};
use grachs::{GraphVector, MultiDigraph, OperadElement, Signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

const THETA2_LIMIT: Duration = Duration::from_secs(10);
const THETA3_LIMIT: Duration = Duration::from_secs(600);
const DG_LIMIT: Duration = Duration::from_secs(120);
const LADDER_LIMIT: Duration = Duration::from_secs(1800);
const LADDER_BUDGET: usize = 100_000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

static PAIR: OnceLock<(ThetaPair, Duration, usize)> = OnceLock::new();

fn theta_pair() -> &'static (ThetaPair, Duration, usize) {
    PAIR.get_or_init(|| {
        let t = Instant::now();
        let (pair, report) = theta::solve().expect("solve");
        (pair, t.elapsed(), report.solution_dim)
    })
}

fn theta2_criterion() -> Outcome {
    let t = Instant::now();
    let th = theta2();
    ensure(apply_delta(&th).is_zero(), "differential of Theta2 is nonzero")?;
    let cert = match is_coboundary(&th, EnumOptions::with_budget(usize::MAX)).map_err(|e| e.to_string())? {
        Coboundary::Exact { .. } => return Err("Theta2 reported exact".into()),
        Coboundary::NotExact { certificate } => certificate,
    };
    let value = pair(&cert, &th);
    ensure(value != Q::from_integer(0.into()), "certificate does not separate Theta2")?;
    let el = t.elapsed();
    ensure(el < THETA2_LIMIT, format!("took {el:?}"))?;
    Ok(format!("closed, not exact (certificate pairs to {value}), {el:.2?}"))
}

fn theta3_criterion() -> Outcome {
    let (pair3, took, dim) = theta_pair();
    ensure(*dim == 1, format!("solution space has dimension {dim}"))?;
    let c = theta::counts(pair3);
    let expect = (68, 48, 20, 288, 288, 288);
    let got = (c.vartheta3, c.shape_a, c.shape_b, c.theta3, c.theta3_shape_c, c.theta3_bioriented);
    ensure(got == expect, format!("counts {got:?}, expected {expect:?}"))?;
    let t = Instant::now();
    let r = theta::verify_nontrivial(pair3).map_err(|e| e.to_string())?;
    ensure(r.closed, "differential of Theta3 is nonzero")?;
    ensure(r.exact_in_black, "Theta3 differs from the coboundary of -vartheta3")?;
    let cert = r.certificate.ok_or("Theta3 is a coboundary over bi-oriented (5,6)-graphs")?;
    ensure(pair(&cert, &pair3.theta3) != Q::from_integer(0.into()), "certificate does not separate Theta3")?;
    let total = *took + t.elapsed();
    ensure(total < THETA3_LIMIT, format!("took {total:?}"))?;
    Ok(format!("dim 1, |vartheta3| = 68 (48 A + 20 B), |Theta3| = 288 shape C, closed, not exact, {total:.1?}"))
}

fn obstruction_criterion() -> Outcome {
    let (pair3, _, _) = theta_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let ch = Chart::new(2, 2).unwrap();
    let mut lambda: Option<Q> = None;
    let mut both_zero = 0;
    for i in 0..20 {
        let comp = random_components(&mut rng, ch, 2, Sector::ALL);
        let cf = obstruction_closed_form(&comp);
        let vr = obstruction_via_rep(&pair3.vartheta3, &comp).map_err(|e| e.to_string())?;
        let fit = ObstructionFit::fit(&vr, &cf);
        ensure(fit.proportional, format!("set {i}: not proportional"))?;
        match (fit.lambda, &lambda) {
            (None, _) => both_zero += 1,
            (Some(l), None) => lambda = Some(l),
            (Some(l), Some(prev)) => ensure(l == *prev, format!("set {i}: lambda {l} differs from {prev}"))?,
        }
    }
    match lambda {
        Some(l) => Ok(format!("lambda = {l} on all 20 sets")),
        None => Ok(format!(
            "vacuous: both sides vanish identically on {both_zero}/20 sets (a totally antisymmetric rank-3 tensor on 2 generators is zero), lambda unconstrained"
        )),
    }
}

/// Off the criterion's chart: at `n = 3` the two sides on random and on nilpotent data.
fn obstruction_diagnostic() -> String {
    let (pair3, _, _) = theta_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(302);
    let ch = Chart::new(1, 3).unwrap();
    let (mut proportional, mut fits) = (0, Vec::new());
    for _ in 0..3 {
        let comp = random_components(&mut rng, ch, 1, Sector::ALL);
        let cf = obstruction_closed_form(&comp);
        let vr = obstruction_via_rep(&pair3.vartheta3, &comp).unwrap();
        let fit = ObstructionFit::fit(&vr, &cf);
        proportional += fit.proportional as usize;
        fits.push(fit.lambda.map_or("-".to_string(), |l| l.to_string()));
    }
    let mut pi = Tensor::zeros(&[3, 3]);
    pi.set(&[0, 1], XPoly::var(0));
    pi.set(&[1, 0], -&XPoly::var(0));
    let poisson = fixture_poisson(3, &pi).unwrap();
    let on_shell = obstruction_via_rep(&pair3.vartheta3, &poisson).unwrap().is_zero()
        && obstruction_closed_form(&poisson).is_zero();
    format!(
        "n = 3 random off-shell sets: {proportional}/3 proportional (first-entry ratios {}); nilpotent Poisson m = n = 3: both zero = {on_shell}",
        fits.join(", ")
    )
}

fn vanishing_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let ch = Chart::new(2, 2).unwrap();
    for i in 0..10 {
        let comp = random_components(&mut rng, ch, 2, Sector::ALL).with_r_zero();
        ensure(obstruction_closed_form(&comp).is_zero(), format!("R = 0 set {i}: obstruction nonzero"))?;
    }
    let mut zero_sets = 0;
    for i in 0..10 {
        let (rho, f, lambda) = coboundary_data(&mut rng, ch);
        let comp = fixture_coboundary(ch, &rho, &f, &lambda).map_err(|e| e.to_string())?;
        let ob = obstruction_closed_form(&comp);
        zero_sets += ob.is_zero() as usize;
        let targets: Vec<XPoly> = ob.entries().map(|(_, p)| p.clone()).collect();
        let gens = c12_generators(&comp);
        ensure(in_truncated_ideal(&targets, &gens, ch.m, 2), format!("coboundary set {i}: not in the C1/C2 ideal"))?;
    }
    Ok(format!(
        "R = 0: 10/10 zero; coboundary: 10/10 in the C1/C2 ideal at multiplier degree 2 ({zero_sets}/10 already zero, rank-3 antisymmetry on 2 generators)"
    ))
}

fn coboundary_data(rng: &mut ChaCha8Rng, ch: Chart) -> (Tensor, Tensor, Tensor) {
    let (m, n) = (ch.m, ch.n);
    let rho = random_tensor(rng, &[n, m], m, 1, &[]);
    let f = random_tensor(rng, &[n, n, n], m, 1, &[0, 1]);
    let lambda = random_tensor(rng, &[n, n], m, 1, &[0, 1]);
    (rho, f, lambda)
}

fn c12_generators(comp: &BialgebroidComponents) -> Vec<XPoly> {
    let cs = constraints(comp);
    cs.tensors[..2].iter().flat_map(|t| t.entries().map(|(_, p)| p.clone()).collect::<Vec<_>>()).collect()
}

/// Smallest multiplier degree at which the `n = 3` closed form enters the C1/C2 ideal.
fn vanishing_diagnostic() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    let ch = Chart::new(2, 3).unwrap();
    let (rho, f, lambda) = coboundary_data(&mut rng, ch);
    let comp = fixture_coboundary(ch, &rho, &f, &lambda).unwrap();
    let ob = obstruction_closed_form(&comp);
    if ob.is_zero() {
        return "n = 3 coboundary sample: obstruction already zero".into();
    }
    let targets: Vec<XPoly> = ob.entries().map(|(_, p)| p.clone()).collect();
    let gens = c12_generators(&comp);
    let one = in_truncated_ideal(&[XPoly::one()], &gens, ch.m, 5);
    match (0..=5).find(|&d| in_truncated_ideal(&targets, &gens, ch.m, d)) {
        Some(d) => format!("n = 3 coboundary sample: member at multiplier degree {d}; 1 in the ideal by degree 5: {one}"),
        None => format!("n = 3 coboundary sample: not a member up to multiplier degree 5; 1 in the ideal: {one}"),
    }
}

fn constraint_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let charts = [(1, 2), (2, 2), (2, 3), (1, 3), (0, 3)];
    let mut nilpotent = 0;
    let check = |comp: &BialgebroidComponents, label: &str| -> Result<bool, String> {
        let cs = constraints(comp);
        let sq = hamiltonian_square(comp);
        ensure(sq == square_from_constraints(comp.chart(), &cs), format!("{label}: square differs from the weighted constraints"))?;
        ensure(sq.is_zero() == cs.all_zero(), format!("{label}: nilpotency and constraints disagree"))?;
        Ok(cs.all_zero())
    };
    for i in 0..50 {
        let (m, n) = charts[i % charts.len()];
        let sector = if i % 5 == 4 { Sector::LIE } else { Sector::ALL };
        let comp = random_components(&mut rng, Chart::new(m, n).unwrap(), 1, sector);
        nilpotent += check(&comp, &format!("random set {i}"))? as usize;
    }
    for (i, p) in single_constraint_probes(&mut rng).iter().enumerate() {
        ensure(constraints(p).violated() == vec![i + 1], format!("probe {} violates {:?}", i + 1, constraints(p).violated()))?;
        ensure(!check(p, &format!("probe {}", i + 1))?, format!("probe {} nilpotent", i + 1))?;
    }
    let mut pi = Tensor::zeros(&[2, 2]);
    pi.set(&[0, 1], XPoly::var(1));
    pi.set(&[1, 0], -&XPoly::var(1));
    ensure(check(&fixture_poisson(2, &pi).unwrap(), "Poisson fixture")?, "Poisson fixture not nilpotent")?;

    let mut bialgebra_nilpotent = 0;
    let d_zero = |comp: &BialgebroidComponents| constraints(comp).bialgebra().iter().all(|t| t.is_zero());
    for i in 0..20 {
        let n = 2 + i % 3;
        let comp = random_components(&mut rng, Chart::point(n).unwrap(), 0, Sector::ALL);
        let cs = constraints(&comp);
        let others = [0, 2, 4, 5].iter().all(|&j| cs.tensors[j].is_zero());
        ensure(others, format!("m = 0 set {i}: a constraint outside D1..D5 is nonzero"))?;
        let sq = hamiltonian_square(&comp).is_zero();
        ensure(sq == d_zero(&comp), format!("m = 0 set {i}: D-constraints and nilpotency disagree"))?;
    }
    let zero3 = || Tensor::zeros(&[3, 3, 3]);
    let fixtures = [
        fixture_bialgebra(3, epsilon3(), zero3(), zero3(), zero3()).unwrap(),
        fixture_bialgebra(3, zero3(), epsilon3(), zero3(), zero3()).unwrap(),
        fixture_bialgebra(3, zero3(), zero3(), epsilon3(), zero3()).unwrap(),
        fixture_bialgebra(3, epsilon3(), zero3(), zero3(), epsilon3()).unwrap(),
    ];
    for (i, comp) in fixtures.iter().enumerate() {
        let sq = hamiltonian_square(comp).is_zero();
        ensure(sq == d_zero(comp), format!("bialgebra fixture {i}: D-constraints and nilpotency disagree"))?;
        bialgebra_nilpotent += sq as usize;
    }
    Ok(format!(
        "50 random sets ({nilpotent} nilpotent) + 9 probes + Poisson fixture; m = 0: 20 random + 4 fixtures ({bialgebra_nilpotent} nilpotent)"
    ))
}

fn zeta_args(rng: &mut ChaCha8Rng, ch: Chart, k: usize) -> Vec<SuperPolynomial> {
    (0..k).map(|i| zeta_projection(&random_function(rng, ch, 1 + (i % 2) as u32, 1, 0.5))).collect()
}

/// Whether the arity-`k` identity vanishes on every nondecreasing tuple of generators.
fn identity_vanishes(comp: &BialgebroidComponents, k: usize) -> bool {
    let op = homotopy_identity(comp, k);
    let gens = generators(comp.chart());
    let mut idx = vec![0usize; k];
    loop {
        let args: Vec<SuperPolynomial> = idx.iter().map(|&i| gens[i].clone()).collect();
        if !op.apply(&args).is_zero() {
            return false;
        }
        let Some(pos) = (0..k).rev().find(|&p| idx[p] + 1 < gens.len()) else { return true };
        idx[pos] += 1;
        let v = idx[pos];
        idx[pos..].iter_mut().for_each(|x| *x = v);
    }
}

fn nr_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let ch = Chart::new(1, 3).unwrap();
    let half = qf(1, 2);
    for i in 0..20 {
        let comp = random_components(&mut rng, ch, 2, Sector::ALL);
        for k in 0..=4 {
            let args = zeta_args(&mut rng, ch, k);
            let lhs = homotopy_identity(&comp, k).apply(&args);
            let rhs = derived_bracket(&constraint_group_polynomial(&comp, k), &args).map_err(|e| e.to_string())?.scale(&half);
            ensure(lhs == rhs, format!("set {i}, arity {k}: identity differs from its constraint group"))?;
        }
    }
    let mut probes = single_constraint_probes(&mut rng);
    let mut pi = Tensor::zeros(&[2, 2]);
    pi.set(&[0, 1], XPoly::var(0));
    pi.set(&[1, 0], -&XPoly::var(0));
    probes.push(fixture_poisson(2, &pi).unwrap());
    for (i, comp) in probes.iter().enumerate() {
        let cs = constraints(comp);
        for (k, group) in CONSTRAINT_GROUPS.iter().enumerate() {
            let group_zero = group.iter().all(|&j| cs.tensors[j - 1].is_zero());
            ensure(identity_vanishes(comp, k) == group_zero, format!("probe {i}, arity {k}: vanishing disagrees"))?;
        }
    }
    Ok("20 random sets x 5 identities exact; vanishing matches C-groups on 9 probes + Poisson fixture".into())
}

const DG_SIGNATURES: [(u32, usize, usize); 5] = [(1, 0, 0), (2, 0, 1), (3, 0, 0), (3, 1, 1), (3, 1, 2)];

fn nonzero(rng: &mut ChaCha8Rng, sig: Signature, max_n: usize) -> GraphVector {
    loop {
        let n = rng.gen_range(2..=max_n);
        let k = n - 1 + rng.gen_range(0..=1);
        let v = random_element(rng, sig, n, k, 3);
        if !v.is_zero() {
            return v;
        }
    }
}

fn koszul(a: i64, b: i64) -> Q {
    q(if (a * b).rem_euclid(2) == 0 { 1 } else { -1 })
}

fn dg_criterion() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let deg = |v: &GraphVector| v.degree().unwrap().unwrap_or(0);
    let br = |x: &GraphVector, y: &GraphVector| lie_bracket(x, y).unwrap();
    for &(d, c, o) in &DG_SIGNATURES {
        let sig = Signature::with_first_oriented(d, c, o, true).unwrap();
        let tag = format!("(d,c,o) = ({d},{c},{o})");
        for _ in 0..50 {
            let a = nonzero(&mut rng, sig, 4);
            ensure(apply_delta(&apply_delta(&a)).is_zero(), format!("{tag}: delta^2 != 0"))?;
            ensure(
                orient_complex(&apply_delta(&a)).unwrap() == apply_delta(&orient_complex(&a).unwrap()),
                format!("{tag}: orientation morphism is not a chain map"),
            )?;
            let (a, b, cc) = (nonzero(&mut rng, sig, 3), nonzero(&mut rng, sig, 2), nonzero(&mut rng, sig, 2));
            let (da, db, dc) = (deg(&a), deg(&b), deg(&cc));
            ensure(br(&a, &b) == br(&b, &a).scale(&-koszul(da, db)), format!("{tag}: bracket not graded antisymmetric"))?;
            let jac = br(&a, &br(&b, &cc))
                .scale(&koszul(da, dc))
                .add(&br(&b, &br(&cc, &a)).scale(&koszul(db, da)))
                .add(&br(&cc, &br(&a, &b)).scale(&koszul(dc, db)));
            ensure(jac.is_zero(), format!("{tag}: Jacobi fails"))?;
            let lhs = apply_delta(&br(&a, &b));
            let rhs = br(&apply_delta(&a), &b).add(&br(&a, &apply_delta(&b)).scale(&koszul(da, 1)));
            ensure(lhs == rhs, format!("{tag}: delta is not a derivation"))?;
        }
    }
    let el = t.elapsed();
    ensure(el < DG_LIMIT, format!("took {el:?}"))?;
    Ok(format!("5 signatures x 50 samples x 5 properties, {el:.1?}"))
}

fn ladder_criterion() -> Outcome {
    let t = Instant::now();
    let cases = [((1, 0, 0), (2, 3)), ((2, 0, 1), (4, 5)), ((3, 0, 0), (3, 3)), ((3, 1, 2), (6, 7))];
    let opts = EnumOptions::with_budget(LADDER_BUDGET).with_min_valence(2);
    let mut parts = Vec::new();
    for ((d, c, o), (n, k)) in cases {
        let sig = Signature::with_first_oriented(d, c, o, true).unwrap();
        let r = cohomology(sig, n, k, opts, false).map_err(|e| e.to_string())?;
        ensure(r.cohomology_dim == 1, format!("({d},{c},{o}) at ({n},{k}): dim H = {}", r.cohomology_dim))?;
        ensure(r.basis_size <= LADDER_BUDGET, format!("basis {} over budget", r.basis_size))?;
        if n < 6 {
            let full = cohomology(sig, n, k, EnumOptions::with_budget(LADDER_BUDGET), false).map_err(|e| e.to_string())?;
            ensure(full.cohomology_dim == 1, format!("({d},{c},{o}) at ({n},{k}): full complex dim H = {}", full.cohomology_dim))?;
        }
        parts.push(format!("({d},{c},{o})@({n},{k}): 1 [{} graphs]", r.basis_size));
    }
    let el = t.elapsed();
    ensure(el < LADDER_LIMIT, format!("took {el:?}"))?;
    Ok(format!("valence >= 2 subcomplex, small cases also on the full complex; {}; {el:.1?}", parts.join("; ")))
}

fn rep_sig(oriented: u16) -> Signature {
    Signature::new(3, 1, oriented, false).unwrap()
}

fn rf(rng: &mut ChaCha8Rng, ch: Chart, lo: u32, hi: u32, density: f64) -> SuperPolynomial {
    let degree = rng.gen_range(lo..=hi);
    random_function(rng, ch, degree, 2, density)
}

fn member(rng: &mut ChaCha8Rng, ch: Chart, keep: fn(&Monomial) -> bool) -> SuperPolynomial {
    loop {
        let f = rf(rng, ch, 1, 4, 0.25).filter(keep);
        if !f.is_zero() {
            return f;
        }
    }
}

fn rep_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let ch = Chart::new(2, 2).unwrap();
    let (m, n) = (ch.m, ch.n);
    let op = rep(&upsilon_labeled(rep_sig(0)), ch, Flavor::Bialgebroid).map_err(|e| e.to_string())?;
    for i in 0..100 {
        let fs: Vec<_> = (0..2).map(|_| rf(&mut rng, ch, 1, 4, 0.2)).collect();
        ensure(op.apply(&fs).unwrap() == big_bracket(&fs[0], &fs[1]).unwrap(), format!("pair {i}: generator differs from the big bracket"))?;
    }

    let a1 = random_tensor(&mut rng, &[n, n], m, 2, &[]);
    let a2 = random_tensor(&mut rng, &[m, n, n], m, 2, &[1, 2]);
    let (xi, zeta, p) = (|a| SuperPolynomial::xi(ch, a), |a| SuperPolynomial::zeta(ch, a), |mu| SuperPolynomial::p(ch, mu));
    let (mut f1, mut f2, mut expected) = (SuperPolynomial::zero(ch), SuperPolynomial::zero(ch), SuperPolynomial::zero(ch));
    for a in 0..n {
        for b in 0..n {
            f1 = &f1 + &(&xi(a) * &zeta(b)).mul_x(a1.get(&[a, b]));
            for mu in 0..m {
                f2 = &f2 + &(&(&p(mu) * &zeta(a)) * &zeta(b)).mul_x(&a2.get(&[mu, a, b]).scale(&qf(1, 2)));
                for c in 0..n {
                    let coeff = a2.get(&[mu, c, a]) * &a1.get(&[c, b]).deriv(mu);
                    expected = &expected - &(&zeta(a) * &zeta(b)).mul_x(&coeff);
                }
            }
        }
    }
    let cycle = OperadElement::single(rep_sig(0), &MultiDigraph::from_notation(2, 1, "1>2+ 1>2-").unwrap());
    let out = rep(&cycle, ch, Flavor::Bialgebroid).unwrap().apply(&[f1.clone(), f2.clone()]).unwrap();
    ensure(out == expected, "two-cycle value differs from the displayed formula")?;
    ensure(classify(&f1).quasi_lie && classify(&f2).quasi_lie, "two-cycle inputs not quasi-Lie")?;
    ensure(!out.is_zero() && !classify(&out).quasi_lie, "two-cycle output stays quasi-Lie")?;

    type Keep = fn(&Monomial) -> bool;
    type Check = fn(&SuperPolynomial) -> bool;
    let sectors: [(u16, &str, Keep, Check); 3] = [
        (0b01, "Lie-quasi", |m| m.has_p() || m.zeta != 0, |f| classify(f).lie_quasi),
        (0b10, "quasi-Lie", |m| m.has_p() || m.xi != 0, |f| classify(f).quasi_lie),
        (0b11, "Lie", |m| m.has_p() || (m.xi != 0 && m.zeta != 0), |f| classify(f).lie),
    ];
    for (mask, name, keep, check) in sectors {
        for _ in 0..200 {
            let nv = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=4);
            let g = OperadElement::single(rep_sig(mask), &random_graph(&mut rng, nv, k, 1, mask));
            let fs: Vec<_> = (0..nv).map(|_| member(&mut rng, ch, keep)).collect();
            ensure(fs.iter().all(check), format!("{name}: sampler left the subalgebra"))?;
            let out = rep(&g, ch, Flavor::Bialgebroid).unwrap().apply(&fs).unwrap();
            ensure(check(&out), format!("{name}: {g:?} leaves the subalgebra"))?;
        }
    }

    let tri = OperadElement::single(rep_sig(0), &MultiDigraph::from_notation(3, 1, "1>2+ 2>3- 3>1+").unwrap());
    let red = OperadElement::single(rep_sig(0), &MultiDigraph::from_notation(2, 1, "1>2-").unwrap());
    let fs: Vec<_> = (0..4).map(|_| rf(&mut rng, ch, 1, 3, 0.2)).collect();
    ensure(operad_morphism_check(&tri, 2, &red, ch, Flavor::Bialgebroid, &fs).unwrap(), "triangle into red edge composition")?;
    for i in 0..50 {
        let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let k1 = if n1 == 1 { 0 } else { rng.gen_range(1..=3) };
        let k2 = if n2 == 1 { 0 } else { rng.gen_range(1..=3) };
        let g1 = random_operad_element(&mut rng, rep_sig(0), n1, k1, 1);
        let g2 = random_operad_element(&mut rng, rep_sig(0), n2, k2, 1);
        let slot = rng.gen_range(1..=n1);
        let fs: Vec<_> = (0..n1 + n2 - 1).map(|_| rf(&mut rng, ch, 1, 3, 0.15)).collect();
        ensure(operad_morphism_check(&g1, slot, &g2, ch, Flavor::Bialgebroid, &fs).unwrap(), format!("random pair {i}"))?;
    }
    Ok("100 bracket pairs, two-cycle formula, 3 x 200 orientation samples, triangle-into-edge + 50 compositions".into())
}

fn theta6_criterion() -> Outcome {
    let (pair3, _, _) = theta_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for n in [2usize, 3, 4] {
        let comp = random_components(&mut rng, Chart::point(n).unwrap(), 0, Sector::ALL);
        let h = hamiltonian(&comp);
        ensure(!h.is_zero(), "zero sample")?;
        ensure(theta_bracket_6(&pair3.theta3, &h).unwrap().is_zero(), format!("m = 0, n = {n}: theta6 nonzero"))?;
    }
    let element = pair3.theta3.representatives().map_err(|e| e.to_string())?;
    let mut pi = Tensor::zeros(&[2, 2]);
    pi.set(&[0, 1], XPoly::constant(q(2)));
    pi.set(&[1, 0], XPoly::constant(q(-2)));
    let h = hamiltonian(&fixture_poisson(2, &pi).unwrap());
    let fast = theta_bracket_6(&pair3.theta3, &h).unwrap();
    let slow = reference_apply(&element, h.chart(), Flavor::Bialgebroid, &vec![h.clone(); 6]).unwrap();
    ensure(fast == slow, "Poisson fixture: fast and reference evaluators differ")?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let full = hamiltonian(&random_components(&mut rng, Chart::new(1, 2).unwrap(), 1, Sector::LIE));
    let keep: HashSet<Monomial> = full.terms().filter(|_| rng.gen_bool(0.4)).map(|(m, _)| *m).collect();
    let sparse = full.filter(|m| keep.contains(m));
    let fast_s = theta_bracket_6(&pair3.theta3, &sparse).unwrap();
    let slow_s = reference_apply(&element, sparse.chart(), Flavor::Bialgebroid, &vec![sparse.clone(); 6]).unwrap();
    ensure(fast_s == slow_s, "sparse Hamiltonian: fast and reference evaluators differ")?;
    Ok(format!(
        "m = 0 vanishes for n = 2, 3, 4; reference agrees on the Poisson fixture ({} terms) and on a sparse Hamiltonian ({} terms)",
        fast.len(),
        fast_s.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Theta2 closed and not exact", theta2_criterion),
        ("Theta3/vartheta3 reconstruction", theta3_criterion),
        ("obstruction equivalence", obstruction_criterion),
        ("vanishing for R = 0 and coboundaries", vanishing_criterion),
        ("constraints <=> nilpotent Hamiltonian", constraint_criterion),
        ("homotopy identities <=> constraint groups", nr_criterion),
        ("dg-structure suite", dg_criterion),
        ("cohomology ladder", ladder_criterion),
        ("Rep correctness", rep_criterion),
        ("theta6 degenerations", theta6_criterion),
    ];
    let only: Vec<usize> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect()).unwrap_or_default();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let num = i + 1;
        if !only.is_empty() && !only.contains(&num) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {num:>2} PASS  {name}: {detail} [{:.1?}]", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {num:>2} FAIL  {name}: {detail} [{:.1?}]", t.elapsed());
            }
        }
        if num == 3 {
            println!("         info  {}", obstruction_diagnostic());
        }
        if num == 4 {
            println!("         info  {}", vanishing_diagnostic());
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
