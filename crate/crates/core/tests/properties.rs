use awdaha::daha::{basic_op, t1_decompose, DiffRefOp, OpName};
use awdaha::laurent::LaurentPoly;
use awdaha::params::{ParamMapName, ParamSet};
use awdaha::sampling::{exact_generic, exact_square, GENERIC_KMAX};
use awdaha::scalar::{rat, Rational};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly<Rational>> {
    prop::collection::vec((-4i64..=4, coeff()), 0..max_terms).prop_map(LaurentPoly::from_terms)
}

fn point() -> impl Strategy<Value = Rational> {
    (prop_oneof![-7i64..=-1, 1i64..=7], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn tuple() -> impl Strategy<Value = ParamSet<Rational>> {
    (0u64..1000, 0u64..8).prop_map(|(s, i)| exact_generic(s, i))
}

const GENERATORS: [OpName; 8] = [
    OpName::T1,
    OpName::T1Inv,
    OpName::T0,
    OpName::T0Inv,
    OpName::Z,
    OpName::ZInv,
    OpName::Y,
    OpName::D,
];

fn word(p: &ParamSet<Rational>, w: &[usize]) -> DiffRefOp<Rational> {
    let mut op = DiffRefOp::identity(&p.q);
    for &i in w {
        op = op.compose(&basic_op(GENERATORS[i], p).unwrap()).unwrap();
    }
    op
}

fn words() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..GENERATORS.len(), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(f in laurent(6), g in laurent(6), h in laurent(6)) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn laurent_evaluation_is_a_homomorphism(f in laurent(6), g in laurent(6), z in point()) {
        let fz = f.eval(&z).unwrap();
        let gz = g.eval(&z).unwrap();
        prop_assert_eq!(f.mul(&g).eval(&z).unwrap(), fz.clone() * &gz);
        prop_assert_eq!(f.add(&g).eval(&z).unwrap(), fz + &gz);
        prop_assert_eq!(f.invol().eval(&z).unwrap(), f.eval(&(rat(1, 1) / &z)).unwrap());
    }

    #[test]
    fn laurent_involution_and_shift(f in laurent(6), s in -3i64..=3) {
        prop_assert_eq!(f.invol().invol(), f.clone());
        prop_assert_eq!(f.shift(s).shift(-s), f.clone());
        prop_assert_eq!(f.add(&f.invol()).is_symmetric(0.0), true);
    }

    #[test]
    fn laurent_dense_round_trip(f in laurent(6)) {
        let (lo, v) = f.to_dense();
        prop_assert_eq!(LaurentPoly::from_dense(lo, &v), f.clone());
        prop_assert_eq!(LaurentPoly::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn laurent_exact_division(f in laurent(5), g in laurent(4)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!(f.mul(&g).div_exact(&g).unwrap(), Some(f));
    }

    #[test]
    fn composition_is_associative(p in tuple(), a in words(), b in words(), c in words()) {
        let (a, b, c) = (word(&p, &a), word(&p, &b), word(&p, &c));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left.residual_terms(&right).unwrap(), 0);
    }

    #[test]
    fn composition_matches_successive_application(p in tuple(), a in words(), b in words(), f in laurent(4)) {
        let (a, b) = (word(&p, &a), word(&p, &b));
        let direct = a.compose(&b).unwrap().apply(&f).unwrap();
        let inner = b.apply_laurent(&f).unwrap();
        let twice = a.apply(&inner).unwrap();
        prop_assert!(direct.sub(&twice).unwrap().is_zero());
    }

    #[test]
    fn t1_decomposition_is_linear(p in tuple(), f in laurent(5), g in laurent(5), s in coeff()) {
        let (f1, f2) = t1_decompose(&f, &p).unwrap();
        let (g1, g2) = t1_decompose(&g, &p).unwrap();
        let (h1, h2) = t1_decompose(&f.add(&g.scale(&s)), &p).unwrap();
        prop_assert_eq!(h1.to_laurent(), f1.to_laurent().add(&g1.to_laurent().scale(&s)));
        prop_assert_eq!(h2.to_laurent(), f2.to_laurent().add(&g2.to_laurent().scale(&s)));
    }

    #[test]
    fn sampled_tuples_are_generic(s in 0u64..10_000, i in 0u64..4) {
        prop_assert!(exact_generic(s, i).check_generic(GENERIC_KMAX, 0.0).all_pass());
        let sq = exact_square(s, i);
        prop_assert!(sq.check_generic(GENERIC_KMAX, 0.0).all_pass());
        // duality needs q^{-1}abcd to be a square; it is an involution
        prop_assert_eq!(sq.dual().unwrap().dual().unwrap(), sq);
    }

    #[test]
    fn orbit_is_closed(p in tuple()) {
        let gens = [ParamMapName::T0hat, ParamMapName::T2, ParamMapName::T3, ParamMapName::T4];
        let orbit = p.orbit(&gens, 10_000).unwrap();
        prop_assert_eq!(orbit.len(), 192);
        for x in orbit.iter().take(8) {
            for g in gens {
                prop_assert!(orbit.contains(&x.map(g).unwrap()));
            }
        }
    }
}
