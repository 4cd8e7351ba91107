use mlv_core::algebra::{parse_poly, print_poly, rat, Family, ParseOptions};
use mlv_core::eval::{shuffle_to_star, star_to_shuffle, EvalConfig, Evaluator};
use mlv_core::level::{map_j, map_j_inv, shuffle_n, stuffle_n};
use mlv_core::mlv::{map_i, map_i_inv, reg_shuffle, reg_star, shuffle, stuffle};
use mlv_core::{Alphabet, IndexVector, NCPoly, Rational};
use proptest::prelude::*;

fn index(level: u32, max_depth: usize, max_k: u32) -> impl Strategy<Value = IndexVector> {
    prop::collection::vec((1..=max_k, 0..level), 1..=max_depth)
        .prop_map(|pairs| IndexVector::from_pairs(&pairs).unwrap())
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n) / rat(d))
}

fn poly(alphabet: Alphabet, max_depth: usize, max_k: u32) -> impl Strategy<Value = NCPoly> {
    let n = alphabet.level();
    prop::collection::vec((index(n, max_depth, max_k), coeff()), 0..4).prop_map(move |terms| {
        let mut p = NCPoly::zero(alphabet);
        for (iv, c) in terms {
            let twists = iv.twists().iter().map(|&a| alphabet.reduce_twist(a as i64)).collect();
            let iv = IndexVector::new(iv.ks().to_vec(), twists).unwrap();
            p.add_scaled(&NCPoly::from_indices(alphabet, &iv), &c).unwrap();
        }
        p
    })
}

fn alphabet() -> impl Strategy<Value = Alphabet> {
    (1u32..=3, any::<bool>()).prop_map(|(n, mlv)| if mlv { Alphabet::Mlv(n) } else { Alphabet::Level(n) })
}

type Op = fn(&NCPoly, &NCPoly) -> Result<NCPoly, mlv_core::AlgebraError>;

fn products(a: Alphabet) -> [Op; 2] {
    if a.is_mlv() {
        [stuffle, shuffle]
    } else {
        [stuffle_n, shuffle_n]
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_commute((p, q) in alphabet().prop_flat_map(|a| (poly(a, 3, 3), poly(a, 3, 3)))) {
        for op in products(p.alphabet()) {
            prop_assert_eq!(op(&p, &q).unwrap(), op(&q, &p).unwrap());
        }
    }

    #[test]
    fn products_associate((p, q, r) in alphabet().prop_flat_map(|a| (poly(a, 2, 3), poly(a, 2, 2), poly(a, 2, 3)))) {
        for op in products(p.alphabet()) {
            let left = op(&op(&p, &q).unwrap(), &r).unwrap();
            let right = op(&p, &op(&q, &r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn products_distribute((p, q, r) in alphabet().prop_flat_map(|a| (poly(a, 2, 3), poly(a, 2, 3), poly(a, 2, 3)))) {
        for op in products(p.alphabet()) {
            let left = op(&p, &q.add(&r).unwrap()).unwrap();
            let right = op(&p, &q).unwrap().add(&op(&p, &r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn polynomials_form_a_vector_space((p, q, r) in alphabet().prop_flat_map(|a| (poly(a, 3, 4), poly(a, 3, 4), poly(a, 3, 4))), c in coeff(), d in coeff()) {
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert_eq!(p.add(&q).unwrap().add(&r).unwrap(), p.add(&q.add(&r).unwrap()).unwrap());
        prop_assert_eq!(p.add(&q).unwrap().scale(&c), p.scale(&c).add(&q.scale(&c)).unwrap());
        prop_assert_eq!(p.scale(&(c.clone() + d.clone())), p.scale(&c).add(&p.scale(&d)).unwrap());
        prop_assert!(p.sub(&p).unwrap().is_zero());
    }

    #[test]
    fn twist_maps_are_inverse(p in (1u32..=3).prop_flat_map(|n| poly(Alphabet::Mlv(n), 4, 4))) {
        prop_assert_eq!(map_i_inv(&map_i(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(map_i(&map_i_inv(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn level_maps_are_inverse(p in (1u32..=3).prop_flat_map(|n| poly(Alphabet::Level(n), 4, 4))) {
        prop_assert_eq!(map_j_inv(&map_j(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(map_j(&map_j_inv(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn regularization_reconstructs(p in (1u32..=3).prop_flat_map(|n| poly(Alphabet::Mlv(n), 4, 3))) {
        prop_assert_eq!(reg_star(&p).unwrap().reconstruct().unwrap(), p.clone());
        prop_assert_eq!(reg_shuffle(&p).unwrap().reconstruct().unwrap(), p);
    }

    #[test]
    fn shuffle_star_conversion_round_trips(iv in (1u32..=4).prop_flat_map(|n| index(n, 4, 5).prop_map(move |iv| (n, iv)))) {
        let (n, iv) = iv;
        let there = shuffle_to_star(&iv, n).unwrap();
        prop_assert_eq!(star_to_shuffle(&there, n).unwrap(), iv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse(p in alphabet().prop_flat_map(|a| poly(a, 3, 4))) {
        let family = if p.alphabet().is_mlv() { Family::Mlv } else { Family::Level };
        let opts = ParseOptions { level: Some(p.alphabet().level()), family: Some(family) };
        let text = print_poly(&p);
        prop_assert_eq!(parse_poly(&text, opts).unwrap(), p, "{}", text);
    }
}

fn convergent(level: u32, iv: &IndexVector, mlv: bool) -> bool {
    let (k, a) = (iv.ks()[0], iv.twists()[0]);
    k >= 2 || (mlv && level > 1 && a != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // L_∗ and ζ_N turn the stuffle product into multiplication
    #[test]
    fn stuffle_is_multiplicative(
        (level, u, v) in (1u32..=3).prop_flat_map(|n| (Just(n), index(n, 2, 3), index(n, 2, 3))),
        mlv in any::<bool>(),
    ) {
        let alphabet = if mlv { Alphabet::Mlv(level) } else { Alphabet::Level(level) };
        let twist = |iv: &IndexVector| IndexVector::new(
            iv.ks().to_vec(),
            iv.twists().iter().map(|&a| alphabet.reduce_twist(a as i64)).collect(),
        ).unwrap();
        let (u, v) = (twist(&u), twist(&v));
        prop_assume!(convergent(level, &u, mlv) && convergent(level, &v, mlv));
        let ev = Evaluator::new(EvalConfig::new(level)).unwrap();
        let (p, q) = (NCPoly::from_indices(alphabet, &u), NCPoly::from_indices(alphabet, &v));
        let (lhs, pv, qv) = if mlv {
            (ev.eval_poly(&stuffle(&p, &q).unwrap()).unwrap(), ev.eval_poly(&p).unwrap(), ev.eval_poly(&q).unwrap())
        } else {
            (ev.eval_zeta_poly(&stuffle_n(&p, &q).unwrap()).unwrap(), ev.eval_zeta_poly(&p).unwrap(), ev.eval_zeta_poly(&q).unwrap())
        };
        let rhs = pv.mul(&qv);
        let slack = 1e-12 * (1.0 + lhs.abs_upper() + rhs.abs_upper());
        prop_assert!((lhs.value() - rhs.value()).norm() <= lhs.err + rhs.err + slack, "{} vs {}", lhs, rhs);
    }
}
