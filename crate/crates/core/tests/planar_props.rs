use diskdepth::diametral::{diametral_count, diametral_pair, smallest_enclosing_disk};
use diskdepth::harness::{generate, profile_structure, GeneratorKind, GeneratorSpec};
use diskdepth::profile::{brute_force_c_pair, c_pair, weight_profile, Target};
use diskdepth::search::{
    all_pairs_stats, decide_k, maximize, random_pair_search, threshold_k, Chromatic, SearchConfig,
};
use proptest::prelude::*;

const KINDS: [GeneratorKind; 3] = [
    GeneratorKind::UniformSquare,
    GeneratorKind::ConvexChain,
    GeneratorKind::TwoCluster,
];

fn instance(kind: usize, n: usize, seed: u64) -> Vec<diskdepth::geometry::Point> {
    let kind = KINDS[kind % 3];
    let n = if kind == GeneratorKind::TwoCluster { n + n % 2 } else { n };
    generate(&GeneratorSpec::new(kind, n, seed)).unwrap().points
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sweep_equals_oracle(kind in 0usize..3, n in 4usize..16, seed in any::<u64>()) {
        let pts = instance(kind, n, seed);
        for p in 0..pts.len() {
            for q in p + 1..pts.len() {
                prop_assert_eq!(c_pair(&pts, p, q).unwrap(), brute_force_c_pair(&pts, p, q).unwrap());
            }
        }
    }

    #[test]
    fn profiles_are_well_formed(kind in 0usize..3, n in 3usize..30, seed in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let pts = instance(kind, n, seed);
        let n = pts.len();
        let (p, q) = (a % n, b % n);
        prop_assume!(p != q);
        let w = weight_profile(&pts, p, q).unwrap();
        prop_assert!(profile_structure(&w).is_ok(), "{:?}", profile_structure(&w));
        // swapping the pair mirrors the profile
        let r = weight_profile(&pts, q, p).unwrap();
        let mut back = r.weights.clone();
        back.reverse();
        prop_assert_eq!(w.weights, back);
    }

    #[test]
    fn depth_is_symmetric_and_bounded(seed in any::<u64>(), n in 3usize..25) {
        let pts = instance(0, n, seed);
        let m = all_pairs_stats(&pts).unwrap();
        for ((p, q), s) in m.iter() {
            prop_assert!(s.c_tilde <= s.c);
            prop_assert!(s.c <= n - 2);
            prop_assert_eq!(c_pair(&pts, q, p).unwrap(), s);
        }
    }

    #[test]
    fn decision_matches_maximum(seed in any::<u64>(), n in 4usize..18, tilde in any::<bool>()) {
        let n = n + n % 2;
        let pts = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, n, seed).bichromatic()).unwrap().points;
        let target = if tilde { Target::CTilde } else { Target::C };
        for chromatic in [Chromatic::Mono, Chromatic::Bichromatic] {
            let best = maximize(&pts, target, chromatic).unwrap().stats.get(target);
            prop_assert!(decide_k(&pts, best, target, chromatic).unwrap().is_some());
            if best < n - 2 {
                prop_assert!(decide_k(&pts, best + 1, target, chromatic).unwrap().is_none());
            }
        }
    }

    #[test]
    fn diametral_disks_cover(seed in any::<u64>(), n in 3usize..60, order in any::<u64>()) {
        let pts = instance(0, n, seed);
        let d = diametral_pair(&pts, order).unwrap();
        prop_assert_eq!(d.count, diametral_count(&pts, d.pair.0, d.pair.1));
        prop_assert!(3 * d.count >= n);
        let s = smallest_enclosing_disk(&pts, order).unwrap().support;
        let sides: Vec<(usize, usize)> = match s.as_slice() {
            [a, b] => vec![(*a, *b)],
            [a, b, c] => vec![(*a, *b), (*b, *c), (*a, *c)],
            other => panic!("support {other:?}"),
        };
        for x in 0..n {
            let inside = sides
                .iter()
                .filter(|&&(a, b)| diametral_count(&[pts[a], pts[b], pts[x]], 0, 1) == 3)
                .count();
            prop_assert!(inside >= 1, "point {} uncovered", x);
        }
    }

    #[test]
    fn search_is_reproducible(seed in any::<u64>(), alpha in 0.05f64..0.95) {
        let pts = instance(0, 30, seed);
        let cfg = SearchConfig { alpha, seed, ..SearchConfig::default() };
        let a = random_pair_search(&pts, &cfg).unwrap();
        prop_assert_eq!(a, random_pair_search(&pts, &cfg).unwrap());
        if a.accepted {
            prop_assert!(a.stats.c_tilde >= a.threshold_used);
        }
    }

    #[test]
    fn threshold_falls_with_alpha(n in 3usize..5000, a in 0.01f64..0.98, d in 0.0f64..0.5) {
        let b = (a + d).min(0.99);
        for target in [Target::C, Target::CTilde] {
            let lo = SearchConfig { alpha: a, target, ..SearchConfig::default() };
            let hi = SearchConfig { alpha: b, ..lo };
            prop_assert!(threshold_k(n, &hi).unwrap() <= threshold_k(n, &lo).unwrap());
        }
    }
}
