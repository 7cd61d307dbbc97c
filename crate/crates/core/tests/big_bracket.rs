use grachs::superalgebra::components::random_function;
use grachs::superalgebra::{big_bracket, Chart, SuperPolynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample(seed: u64, chart: Chart, degrees: &[u32]) -> Vec<SuperPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees.iter().map(|&d| random_function(&mut rng, chart, d, 2, 0.2)).collect()
}

fn charts() -> impl Strategy<Value = Chart> {
    prop_oneof![Just(Chart::new(1, 2).unwrap()), Just(Chart::new(2, 2).unwrap()), Just(Chart::point(3).unwrap())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), chart in charts(), a in 1u32..5, b in 1u32..5) {
        let f = sample(seed, chart, &[a, b]);
        let fg = big_bracket(&f[0], &f[1]).unwrap();
        let gf = big_bracket(&f[1], &f[0]).unwrap();
        let expected = if (a * b) % 2 == 0 { -&gf } else { gf };
        prop_assert_eq!(fg, expected);
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>(), chart in charts(), a in 1u32..4, b in 1u32..4, c in 1u32..4) {
        let f = sample(seed, chart, &[a, b, c]);
        let br = |x: &SuperPolynomial, y: &SuperPolynomial| big_bracket(x, y).unwrap();
        let lhs = br(&f[0], &br(&f[1], &f[2]));
        let swap = br(&f[1], &br(&f[0], &f[2]));
        let rhs = &br(&br(&f[0], &f[1]), &f[2]) + &(if (a * b) % 2 == 0 { swap } else { -&swap });
        prop_assert_eq!(lhs, rhs);
    }
}
