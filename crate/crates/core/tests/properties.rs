use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use pyramids::bijections::{
    compose_admissible, decode_pyramid_a2, encode_pyramid_a2, factorize_walk, is_positive, path_to_walk,
    right_pyramid_to_string, string_to_right_pyramid, string_to_walk, walk_to_path, walk_to_string, BitString,
    CompositionFactor, Step,
};
use pyramids::heap::{decompose, recompose};
use pyramids::lego::{growth_lower_bound, mc_estimate, FlatStructure, McMode};
use pyramids::series::{
    count_a, count_b, fixed_point_residual, series_a_recursive, series_b_bivariate, singularity_data,
    sum_over_compositions_b, sum_over_compositions_b_explicit,
};
use pyramids::{Heap, PieceLength, Pyramid};

fn pl(a: u32) -> PieceLength {
    PieceLength::new(a).unwrap()
}

/// Drops pieces one at a time, each somewhere over the current footprint,
/// so the result keeps a single bottom piece.
fn grow(a: u32, choices: &[u32]) -> Pyramid {
    let ai = a as i64;
    let mut heap = Heap::from_drops(pl(a), [0]);
    for &c in choices {
        let lo = heap.min_offset().unwrap() - (ai - 1);
        let hi = heap.max_offset().unwrap() + (ai - 1);
        let offset = lo + (c as i64).rem_euclid(hi - lo + 1);
        heap.drop_in_place(offset);
    }
    Pyramid::new(heap).unwrap()
}

fn pyramid() -> impl Strategy<Value = Pyramid> {
    (2u32..=5, prop::collection::vec(any::<u32>(), 0..10)).prop_map(|(a, c)| grow(a, &c))
}

/// Random string with `m` ones among `am` bits.
fn balanced(a: u32, m: usize, seed: &[u32]) -> BitString {
    let n = a as usize * m;
    let mut bits = vec![false; n];
    let mut slots: Vec<usize> = (0..n).collect();
    for (k, s) in seed.iter().take(m).enumerate() {
        let j = k + (*s as usize) % (n - k);
        slots.swap(k, j);
        bits[slots[k]] = true;
    }
    BitString::new(pl(a), bits)
}

/// The positive rotation given by the cycle lemma: append a left step, then
/// start just after the first visit to the lowest point.
fn positive_from(s: &BitString) -> BitString {
    let a = s.a.get() as i64;
    let mut bits = s.bits.clone();
    bits.push(false);
    let mut h = 0i64;
    let (mut low, mut at) = (i64::MAX, 0usize);
    for (i, &b) in bits.iter().enumerate() {
        h += if b { a - 1 } else { -1 };
        if h < low {
            low = h;
            at = i + 1;
        }
    }
    let n = bits.len();
    let rotated: Vec<bool> = (0..n).map(|k| bits[(at + k) % n]).collect();
    // the rotated sequence ends with its only visit to -1
    BitString::new(s.a, rotated[..n - 1].to_vec())
}

fn positive_string() -> impl Strategy<Value = BitString> {
    (2u32..=5, 1usize..=8, prop::collection::vec(any::<u32>(), 8))
        .prop_map(|(a, m, seed)| positive_from(&balanced(a, m, &seed)))
}

proptest! {
    #[test]
    fn grown_heaps_are_pyramids(p in pyramid()) {
        prop_assert!(p.heap().is_pyramid());
        let rebuilt = Heap::from_pieces(p.a(), p.pieces().iter().copied()).unwrap();
        prop_assert_eq!(&rebuilt, p.heap());
        let sorted = p.pieces().windows(2).all(|w| (w[0].level, w[0].offset) < (w[1].level, w[1].offset));
        prop_assert!(sorted);
    }

    #[test]
    fn decompose_then_recompose(p in pyramid()) {
        let p = p.normalized();
        let d = decompose(&p).unwrap();
        prop_assert!(d.validate().is_ok());
        prop_assert_eq!(d.total_size(), p.len());
        let back = recompose(&d).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(decompose(&back).unwrap(), d);
    }

    #[test]
    fn translation_commutes_with_normalizing(p in pyramid(), by in -20i64..20) {
        prop_assert_eq!(p.translate(by).normalized(), p.normalized());
    }

    #[test]
    fn reflection_is_an_involution(p in pyramid(), axis in -10i64..10) {
        let r = p.reflect(axis);
        prop_assert_eq!(r.len(), p.len());
        prop_assert_eq!(r.reflect(axis), p);
    }

    #[test]
    fn cycle_lemma_strings_are_positive(s in positive_string()) {
        let m = s.ones();
        prop_assert_eq!(s.len(), s.a.get() as usize * m);
        prop_assert!(is_positive(&s, m).unwrap());
    }

    #[test]
    fn right_pyramids_mirror_to_left(s in positive_string()) {
        let p = string_to_right_pyramid(&s).unwrap();
        prop_assert!(p.is_right_pyramid(0));
        let q = p.reflect(0);
        prop_assert!(q.is_left_pyramid(0));
        prop_assert_eq!(q.reflect(0), p);
    }

    #[test]
    fn string_and_right_pyramid_round_trip(s in positive_string()) {
        let p = string_to_right_pyramid(&s).unwrap();
        prop_assert_eq!(p.len(), s.ones());
        prop_assert_eq!(right_pyramid_to_string(&p).unwrap(), s);
    }

    #[test]
    fn positivity_transport(a in 2u32..=5, m in 1usize..=8, seed in prop::collection::vec(any::<u32>(), 8)) {
        let s = balanced(a, m, &seed);
        let w = string_to_walk(&s);
        let by_string = is_positive(&s, m).unwrap();
        let by_walk = w.heights().iter().all(|&h| h >= 0);
        let by_path = walk_to_path(&w).is_generalized_dyck();
        prop_assert_eq!(by_string, by_walk);
        prop_assert_eq!(by_walk, by_path);
        prop_assert_eq!(walk_to_string(&w), s.clone());
        prop_assert_eq!(walk_to_string(&path_to_walk(&walk_to_path(&w))), s);
    }

    #[test]
    fn a2_codec_round_trip(c in prop::collection::vec(any::<u32>(), 0..12)) {
        let p = grow(2, &c).normalized();
        let s = encode_pyramid_a2(&p).unwrap();
        prop_assert_eq!(s.len(), 2 * p.len());
        prop_assert_eq!(s.ones(), p.len());
        prop_assert!(s.bits[0]);
        prop_assert_eq!(decode_pyramid_a2(&s).unwrap(), p);
    }

    #[test]
    fn closed_walks_factor_and_recompose(a in 3u32..=5, m in 1usize..=5, seed in prop::collection::vec(any::<u32>(), 5)) {
        let s = balanced(a, m, &seed);
        let w = string_to_walk(&s);
        prop_assume!(w.steps[0] == Step::Right);
        let c = factorize_walk(&w).unwrap();
        prop_assert!(c.validate().is_ok());
        prop_assert_eq!(compose_admissible(&c).unwrap(), w);
        // the P and N sizes add up to m
        let sizes: usize = c.factors.iter().filter_map(CompositionFactor::size).sum();
        prop_assert_eq!(sizes, m);
    }

    #[test]
    fn pyramids_are_flat_structures(p in pyramid()) {
        let f = FlatStructure::new(p.a(), p.pieces().iter().copied()).unwrap();
        prop_assert!(f.is_pyramid());
        prop_assert_eq!(f.len(), p.len());
    }

    #[test]
    fn composition_sum_matches_explicit(a in 2u32..=6, m in 1usize..=12) {
        let fast = sum_over_compositions_b(pl(a), m);
        prop_assert_eq!(&fast, &sum_over_compositions_b_explicit(pl(a), m, 1 << 12).unwrap());
        prop_assert_eq!(fast, count_b(pl(a), m));
    }

    #[test]
    fn series_identities(a in 2u32..=7, order in 1usize..=40) {
        let rec = series_a_recursive(pl(a), order);
        prop_assert!(fixed_point_residual(&rec).iter().all(Zero::is_zero));
        let biv = series_b_bivariate(pl(a), order);
        for m in 1..=order {
            prop_assert_eq!(&rec.coeffs[m], &count_a(pl(a), m));
            prop_assert_eq!(biv.row_sum(m), count_b(pl(a), m));
        }
    }

    #[test]
    fn monte_carlo_is_reproducible(m in 1usize..=8, seed in any::<u64>()) {
        for mode in [McMode::Pyramid, McMode::Flat] {
            let x = mc_estimate(pl(2), m, 16, seed, mode).unwrap();
            let y = mc_estimate(pl(2), m, 16, seed, mode).unwrap();
            prop_assert_eq!(x, y);
        }
    }
}

#[test]
fn lower_bound_is_inverse_singularity() {
    for a in 2..=9 {
        let t0 = singularity_data(pl(a)).t0;
        assert_eq!(growth_lower_bound(pl(a)) * t0, BigRational::one());
    }
}

#[test]
fn small_counts_by_string_transport() {
    // positive (am, m)-strings are as many as right 0-pyramids
    for a in 2..=4 {
        for m in 1..=5 {
            let n = pyramids::bijections::positive_strings(pl(a), m).len();
            assert_eq!(BigUint::from(n), count_a(pl(a), m));
        }
    }
}
