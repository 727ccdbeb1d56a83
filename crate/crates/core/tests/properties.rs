use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cmreg::bounds::{cm_regularity_bound, ideal_bounds, multiplicity_bounds, BoundInputs};
use cmreg::format::{parse_file, serialize};
use cmreg::groebner::{buchberger, generator_degrees, normal_form, syzygies, FreeModule, ModuleElement};
use cmreg::invariants::{betti_table, hilbert_data, hilbert_numerator, regularity};
use cmreg::linalg::{map_nullity, span_dimension};
use cmreg::monomial::Monomial;
use cmreg::presentation::cyclic;
use cmreg::resolution::minimal_resolution;
use cmreg::verify::{random_module, RandomParams};
use cmreg::{GradedRing, Polynomial, PrimeField};

fn small_params() -> impl Strategy<Value = (u64, RandomParams)> {
    (any::<u64>(), 1usize..=3, 1usize..=3, 1usize..=4, 0i64..=1, 1i64..=2).prop_map(|(seed, p, n, m, max_a, extra)| {
        (
            seed,
            RandomParams {
                p_vars: p,
                characteristic: 101,
                n,
                m,
                max_a,
                max_b: max_a + extra,
                density: 0.75,
            },
        )
    })
}

fn descending(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

fn degree_tuples() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(c, n)| {
        (
            Just(c),
            prop::collection::vec(0i64..=6, n),
            prop::collection::vec(0i64..=6, c + n - 1),
        )
    })
}

fn dense_form(ring: &GradedRing, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = ring.field().characteristic();
    let terms = Monomial::all_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| (m, rng.gen_range(1..p)));
    Polynomial::from_terms(ring.nvars(), terms, ring.field())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sum_and_series_forms_agree((c, a, b) in degree_tuples(), deg in 1i64..=3) {
        let b = descending(b);
        let mb = multiplicity_bounds(&a, &b, c, deg).unwrap();
        prop_assert_eq!(mb.sum_form, mb.series_form);
    }

    #[test]
    fn binomial_form_dominates_sum((c, a, b) in degree_tuples()) {
        let top = *a.iter().max().unwrap();
        let b = descending(b.into_iter().map(|x| x + top).collect());
        let mb = multiplicity_bounds(&a, &b, c, 1).unwrap();
        prop_assert!(mb.binomial_form >= mb.sum_form);
        prop_assert!(mb.sum_form >= BigInt::from(0));
    }

    #[test]
    fn cm_bound_grows_with_b(
        a in prop::collection::vec(0i64..=3, 1..=3),
        extra in prop::collection::vec(1i64..=3, 0..=5),
        dim_r in 1usize..=4,
        codim in 0usize..=4,
        reg_r in 0i64..=2,
        deg_r in 1i64..=3,
    ) {
        prop_assume!(codim <= dim_r);
        let top = *a.iter().max().unwrap();
        let b: Vec<i64> = extra.iter().map(|e| top + e).collect();
        let inp = BoundInputs::new(&a, &b, dim_r, reg_r, deg_r, codim).unwrap();
        let big_b = inp.big_b();
        let lo = cm_regularity_bound(&inp.clone().with_b(big_b).unwrap()).unwrap();
        let hi = cm_regularity_bound(&inp.with_b(big_b + 1).unwrap()).unwrap();
        prop_assert!(lo <= hi);
    }

    #[test]
    fn refined_below_caviglia_sbarra(p in 4usize..=8, big_b in 2i64..=10) {
        let ib = ideal_bounds(p, big_b, None);
        prop_assert!(ib.refined.unwrap() <= ib.caviglia_sbarra.unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(x in 0u32..101, y in 0u32..101, z in 0u32..101, big in any::<bool>()) {
        let f = PrimeField::new(if big { 32003 } else { 101 }).unwrap();
        let (x, y, z) = (x % f.characteristic(), y * 317 % f.characteristic(), z * 7919 % f.characteristic());
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), 0);
        if x != 0 {
            prop_assert_eq!(f.mul(x, f.inv(x)), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariants_survive_permutation((seed, params) in small_params(), shuffle in any::<u64>()) {
        let m = random_module(seed, &params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle);
        let mut rows: Vec<usize> = (0..m.n()).collect();
        let mut cols: Vec<usize> = (0..m.m()).collect();
        use rand::seq::SliceRandom;
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let q = m.permuted(&rows, &cols);
        prop_assert_eq!(betti_table(&m).unwrap(), betti_table(&q).unwrap());
        prop_assert_eq!(hilbert_data(&m).unwrap(), hilbert_data(&q).unwrap());
    }

    #[test]
    fn validation_and_file_format_are_fixed_points((seed, params) in small_params()) {
        let m = random_module(seed, &params).unwrap();
        prop_assert_eq!(&m.revalidate().unwrap(), &m);
        let text = serialize(&m);
        let back = parse_file(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn hilbert_numerator_matches_resolution((seed, params) in small_params()) {
        let m = random_module(seed, &params).unwrap();
        let (_, betti) = minimal_resolution(&m).unwrap();
        prop_assert_eq!(betti.euler_numerator(), hilbert_numerator(&m).unwrap());
    }

    #[test]
    fn syzygy_ranks_match_dense_oracle((seed, params) in small_params()) {
        let m = random_module(seed, &params).unwrap();
        let ring = m.ring();
        let gens = m.column_elements();
        let module = m.free_module();
        let syz = syzygies(ring, &module, &gens).unwrap();
        let syz_degrees = generator_degrees(&FreeModule::new(m.column_degrees().to_vec()), &syz);
        let lo = m.column_degrees().iter().copied().min().unwrap_or(0);
        for d in lo..=lo + 4 {
            let from_syz = span_dimension(ring.field(), ring.nvars(), m.column_degrees(), &syz, &syz_degrees, d);
            let oracle = map_nullity(ring.field(), ring.nvars(), m.row_twists(), &gens, m.column_degrees(), d);
            prop_assert_eq!(from_syz, oracle, "degree {}", d);
        }
    }

    #[test]
    fn normal_form_is_idempotent((seed, params) in small_params(), pick in any::<u64>()) {
        let m = random_module(seed, &params).unwrap();
        let ring = m.ring();
        let gb = buchberger(ring, &m.free_module(), &m.column_elements()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(pick);
        let d = m.row_twists().iter().copied().max().unwrap() + 2;
        let f = ModuleElement::from_components((0..m.n()).map(|i| {
            let k = (d - m.row_twists()[i]) as u32;
            (i, dense_form(ring, k, &mut rng))
        }));
        let once = normal_form(&f, &gb).unwrap();
        let twice = normal_form(&once, &gb).unwrap();
        prop_assert_eq!(once, twice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complete_intersections_in_two_characteristics(
        seed in any::<u64>(),
        p_vars in 2usize..=4,
        degrees in prop::collection::vec(1u32..=3, 1..=3),
    ) {
        prop_assume!(degrees.len() <= p_vars);
        for ch in [101u64, 32003] {
            let ring = Arc::new(GradedRing::polynomial(ch, p_vars).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let forms: Vec<Polynomial> = degrees.iter().map(|&d| dense_form(&ring, d, &mut rng)).collect();
            let m = cyclic(ring, 0, forms).unwrap();
            let h = hilbert_data(&m).unwrap();
            // dense random forms of these degrees form a regular sequence unless unlucky
            prop_assume!(h.codimension == Some(degrees.len()));
            let expected_reg: i64 = degrees.iter().map(|&d| d as i64 - 1).sum();
            let expected_mult: i64 = degrees.iter().map(|&d| d as i64).product();
            prop_assert_eq!(regularity(&m).unwrap(), expected_reg);
            prop_assert_eq!(h.multiplicity, Some(expected_mult));
            let betti = betti_table(&m).unwrap();
            prop_assert_eq!(betti.projective_dimension(), Some(degrees.len()));
        }
    }
}
