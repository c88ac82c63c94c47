mod common;

use common::{brute_bias, brute_stability, builder_outputs, ratio};
use indist_core::cayley::{canonicalize_cayley, verify_cayley_bias, CayleyZFunction};
use indist_core::format::{parse_cayley, parse_cube, write_cayley, write_cube};
use indist_core::iso::{apply_automorphism, canonical_form, CubeAutomorphism};
use indist_core::scenery::SignWord;
use indist_core::walsh::{walsh_inverse, walsh_transform};
use indist_core::{is_locally_biased, is_locally_stable, CubeFunction, Rational};
use proptest::prelude::*;

fn cube_function(max_n: usize) -> impl Strategy<Value = CubeFunction> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, 1 << n).prop_map(move |bits| {
            CubeFunction::from_table(n, bits.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap()
        })
    })
}

fn automorphism(n: usize) -> impl Strategy<Value = CubeAutomorphism> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), 0..1u64 << n)
        .prop_map(|(perm, flips)| CubeAutomorphism::new(perm, flips).unwrap())
}

fn function_and_automorphism(max_n: usize) -> impl Strategy<Value = (CubeFunction, CubeAutomorphism)> {
    cube_function(max_n).prop_flat_map(|f| {
        let n = f.n();
        (Just(f), automorphism(n))
    })
}

fn builder() -> impl Strategy<Value = CubeFunction> {
    let all: Vec<CubeFunction> = builder_outputs(8).into_iter().map(|(_, f)| f).collect();
    prop::sample::select(all)
}

proptest! {
    #[test]
    fn walsh_round_trip_and_parseval(f in cube_function(10)) {
        let spec = walsh_transform(&f);
        prop_assert_eq!(walsh_inverse(&spec).unwrap(), f.clone());
        prop_assert_eq!(spec.parseval_sum(), 1u128 << (2 * f.n()));
    }

    #[test]
    fn verifiers_match_definition(f in cube_function(6)) {
        prop_assert_eq!(is_locally_biased(&f), brute_bias(f.n(), |v| f.eval(v)).map(ratio));
        prop_assert_eq!(is_locally_stable(&f), brute_stability(f.n(), |v| f.eval(v)).map(ratio));
    }

    #[test]
    fn negation_duality(f in builder()) {
        let dual = is_locally_biased(&f).map(|p| Rational::from_integer(1) - p);
        prop_assert_eq!(is_locally_biased(&f.negate()), dual);
        prop_assert_eq!(is_locally_stable(&f.negate()), is_locally_stable(&f));
    }

    #[test]
    fn verifiers_invariant_under_automorphisms((f, a) in builder().prop_flat_map(|f| {
        let n = f.n();
        (Just(f), automorphism(n))
    })) {
        let g = apply_automorphism(&f, &a).unwrap();
        prop_assert_eq!(is_locally_biased(&g), is_locally_biased(&f));
        prop_assert_eq!(is_locally_stable(&g), is_locally_stable(&f));
    }

    #[test]
    fn spectrum_moves_with_automorphism((f, a) in function_and_automorphism(6)) {
        let g = apply_automorphism(&f, &a).unwrap();
        let mut before: Vec<i64> = walsh_transform(&f).coeffs().iter().map(|c| c.abs()).collect();
        let mut after: Vec<i64> = walsh_transform(&g).coeffs().iter().map(|c| c.abs()).collect();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn action_composes((f, a) in function_and_automorphism(5), seed in any::<u64>()) {
        let n = f.n();
        let perm = {
            let mut p: Vec<usize> = (0..n).collect();
            p.rotate_left((seed as usize) % n);
            p
        };
        let b = CubeAutomorphism::new(perm, seed & ((1 << n) - 1)).unwrap();
        let two_steps = apply_automorphism(&apply_automorphism(&f, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(two_steps, apply_automorphism(&f, &a.compose(&b).unwrap()).unwrap());
        let back = apply_automorphism(&apply_automorphism(&f, &a).unwrap(), &a.inverse()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn canonical_form_is_orbit_invariant((f, a) in function_and_automorphism(4)) {
        let c = canonical_form(&f).unwrap();
        prop_assert_eq!(canonical_form(&apply_automorphism(&f, &a).unwrap()).unwrap(), c.clone());
        prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
        prop_assert!(c.table() <= f.table());
    }

    #[test]
    fn cube_file_round_trip(f in cube_function(8)) {
        prop_assert_eq!(parse_cube(&write_cube(&f)).unwrap(), f);
    }

    #[test]
    fn sign_word_text_round_trip(signs in prop::collection::vec(prop::bool::ANY, 0..=32)) {
        let signs: Vec<i8> = signs.into_iter().map(|b| if b { 1 } else { -1 }).collect();
        let w = SignWord::from_signs(&signs).unwrap();
        prop_assert_eq!(w.signs(), signs);
        prop_assert_eq!(w.to_string().parse::<SignWord>().unwrap(), w);
    }

    #[test]
    fn sign_word_order_is_string_order(
        a in prop::collection::vec(prop::bool::ANY, 6),
        b in prop::collection::vec(prop::bool::ANY, 6),
    ) {
        let to = |v: &[bool]| SignWord::from_signs(&v.iter().map(|&x| if x { 1 } else { -1 }).collect::<Vec<_>>()).unwrap();
        let (wa, wb) = (to(&a), to(&b));
        prop_assert_eq!(wa.cmp(&wb), wa.to_string().cmp(&wb.to_string()));
    }

    #[test]
    fn cayley_canonical_form_is_stable(
        bits in prop::collection::vec(prop::bool::ANY, 1..=12),
        shift in 0usize..12,
        copies in 1usize..=3,
    ) {
        let pattern: Vec<i8> = bits.iter().map(|&b| if b { 1 } else { -1 }).collect();
        let f = CayleyZFunction::new(&[2, 3], pattern.clone()).unwrap();
        let c = canonicalize_cayley(&f);
        prop_assert_eq!(canonicalize_cayley(&c), c.clone());

        let mut rotated = pattern.clone();
        rotated.rotate_left(shift % pattern.len());
        let mut reversed = rotated.clone();
        reversed.reverse();
        let repeated: Vec<i8> = reversed.iter().copied().cycle().take(reversed.len() * copies).collect();
        let g = CayleyZFunction::new(&[2, 3], repeated).unwrap();
        prop_assert_eq!(canonicalize_cayley(&g), c.clone());
        prop_assert_eq!(verify_cayley_bias(&g), verify_cayley_bias(&f));
        prop_assert_eq!(parse_cayley(&write_cayley(&f)).unwrap(), f);
    }
}
