use grachs::canon::canonicalize;
use grachs::complex::{differential, lie_bracket};
use grachs::homology::apply_delta;
use grachs::operad::orient_complex;
use grachs::rational::q;
use grachs::sample::{random_element, random_graph};
use grachs::superalgebra::tensor::permutations;
use grachs::{GraphVector, MultiDigraph, Parity, Signature};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIGNATURES: [(u32, usize, usize); 5] = [(1, 0, 0), (2, 0, 1), (3, 0, 0), (3, 1, 1), (3, 1, 2)];

fn signatures() -> Vec<Signature> {
    SIGNATURES.iter().map(|&(d, c, o)| Signature::with_first_oriented(d, c, o, true).unwrap()).collect()
}

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

fn deg(v: &GraphVector) -> i64 {
    v.degree().unwrap().unwrap_or(0)
}

fn koszul(a: i64, b: i64) -> i64 {
    if (a * b).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn differential_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for sig in signatures() {
        for _ in 0..50 {
            let a = nonzero(&mut rng, sig, 4);
            let da = apply_delta(&a);
            assert!(apply_delta(&da).is_zero(), "{sig:?}");
            assert_eq!(differential(&a).unwrap(), da);
        }
    }
}

#[test]
fn bracket_is_graded_antisymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for sig in signatures() {
        for _ in 0..50 {
            let (a, b) = (nonzero(&mut rng, sig, 3), nonzero(&mut rng, sig, 3));
            let ab = lie_bracket(&a, &b).unwrap();
            let ba = lie_bracket(&b, &a).unwrap();
            assert_eq!(ab, ba.scale(&q(-koszul(deg(&a), deg(&b)))));
        }
    }
}

#[test]
fn bracket_satisfies_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for sig in signatures() {
        for _ in 0..50 {
            let (a, b, c) = (nonzero(&mut rng, sig, 3), nonzero(&mut rng, sig, 2), nonzero(&mut rng, sig, 2));
            let (da, db, dc) = (deg(&a), deg(&b), deg(&c));
            let br = |x: &GraphVector, y: &GraphVector| lie_bracket(x, y).unwrap();
            let t1 = br(&a, &br(&b, &c)).scale(&q(koszul(da, dc)));
            let t2 = br(&b, &br(&c, &a)).scale(&q(koszul(db, da)));
            let t3 = br(&c, &br(&a, &b)).scale(&q(koszul(dc, db)));
            assert!(t1.add(&t2).add(&t3).is_zero(), "{sig:?}");
        }
    }
}

#[test]
fn differential_is_a_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for sig in signatures() {
        for _ in 0..50 {
            let (a, b) = (nonzero(&mut rng, sig, 3), nonzero(&mut rng, sig, 3));
            let lhs = apply_delta(&lie_bracket(&a, &b).unwrap());
            let rhs = lie_bracket(&apply_delta(&a), &b)
                .unwrap()
                .add(&lie_bracket(&a, &apply_delta(&b)).unwrap().scale(&q(koszul(deg(&a), 1))));
            assert_eq!(lhs, rhs, "{sig:?}");
        }
    }
}

#[test]
fn orientation_morphism_is_a_chain_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for sig in signatures() {
        for _ in 0..50 {
            let a = nonzero(&mut rng, sig, 4);
            assert_eq!(orient_complex(&apply_delta(&a)).unwrap(), apply_delta(&orient_complex(&a).unwrap()));
        }
    }
}

#[test]
fn differential_keeps_two_valent_graphs_two_valent() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let sig = Signature::new(3, 0, 0, true).unwrap();
    let mut checked = 0;
    while checked < 30 {
        let a = random_element(&mut rng, sig, 3, 4, 2);
        let two_valent = |g: &MultiDigraph| {
            let mut val = vec![0; g.num_vertices()];
            for e in g.edges() {
                val[e.tail as usize] += 1;
                val[e.head as usize] += 1;
            }
            val.iter().all(|&x| x >= 2)
        };
        if a.is_zero() || !a.graphs().all(two_valent) {
            continue;
        }
        assert!(apply_delta(&a).graphs().all(two_valent));
        checked += 1;
    }
}

/// Class key and sign from an exhaustive search over relabelings; `None` when an
/// automorphism acts by `−1`.
fn brute_force(g: &MultiDigraph, parity: Parity) -> Option<(Vec<(u8, u8, u8)>, i64)> {
    let mut best: Option<(Vec<(u8, u8, u8)>, i64)> = None;
    for (perm, psign) in permutations(g.num_vertices()) {
        let mut edges: Vec<(u8, u8, u8)> =
            g.edges().iter().map(|e| (perm[e.tail as usize] as u8, perm[e.head as usize] as u8, e.signs)).collect();
        let mut sign = if parity == Parity::VertexOdd { psign } else { 1 };
        if parity == Parity::EdgeOdd {
            let inversions = (0..edges.len())
                .flat_map(|i| (i + 1..edges.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| edges[i] > edges[j])
                .count();
            if inversions % 2 == 1 {
                sign = -sign;
            }
        }
        edges.sort();
        if parity == Parity::EdgeOdd && edges.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        match &best {
            Some((b, s)) if *b == edges => {
                if *s != sign {
                    return None;
                }
            }
            Some((b, _)) if *b < edges => {}
            _ => best = Some((edges, sign)),
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn canonical_labels_match_exhaustive_search(
        seed in any::<u64>(), n in 2usize..6, extra in 0usize..4, colors in 0usize..3, odd_vertices in any::<bool>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parity = if odd_vertices { Parity::VertexOdd } else { Parity::EdgeOdd };
        let g = random_graph(&mut rng, n, n - 1 + extra, colors, 0);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let h = g.relabeled(&perm);
        let (bg, bh) = (brute_force(&g, parity), brute_force(&h, parity));
        let (cg, ch) = (canonicalize(&g, parity), canonicalize(&h, parity));
        prop_assert_eq!(bg.is_none(), cg.is_none());
        prop_assert_eq!(bh.is_none(), ch.is_none());
        if let (Some((kg, sg)), Some((kh, sh)), Some((rg, tg)), Some((rh, th))) = (bg, bh, cg, ch) {
            prop_assert_eq!(&kg, &kh);
            prop_assert_eq!(&rg, &rh);
            prop_assert_eq!(sg * sh, (tg * th) as i64);
        }
    }
}
