use proptest::prelude::*;

use dahakit::analysis::{classify, criterion, det_fingerprint, find_intertwiner, l_matrix_all_routes};
use dahakit::modrep::{central_character, commutation_check, make_e, make_o, verify_relations, ModuleRep};
use dahakit::params::{canonical_orbit_rep, orbit_members, ParamQuadruple, TwistElement};
use dahakit::scalar::{Field, Rational};

fn small() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(n, d, neg)| {
        let r = Rational::new(n, d);
        if neg {
            -r
        } else {
            r
        }
    })
}

fn even_params() -> impl Strategy<Value = ParamQuadruple<Rational>> {
    (prop::sample::select(vec![1usize, 3]), any::<bool>(), small(), small(), small()).prop_map(
        |(d, neg, k1, k2, k3)| {
            let q = Rational::from(2);
            let k0 = q.pow(-(d as i64 + 1) / 2);
            let k0 = if neg { -k0 } else { k0 };
            ParamQuadruple::even(q, [k0, k1, k2, k3], d).unwrap()
        },
    )
}

fn odd_params() -> impl Strategy<Value = ParamQuadruple<Rational>> {
    (prop::sample::select(vec![0usize, 2]), small(), small(), small()).prop_map(|(d, k0, k1, k2)| {
        let q = Rational::from(3);
        let k3 = q.pow(-(d as i64) - 1) / (k0.clone() * k1.clone() * k2.clone());
        ParamQuadruple::odd(q, [k0, k1, k2, k3], d).unwrap()
    })
}

fn twist_of(e: u8) -> TwistElement {
    TwistElement::new(i64::from(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructed_modules_are_modules(p in even_params(), o in odd_params()) {
        for m in [make_e(&p).unwrap(), make_o(&o).unwrap()] {
            prop_assert!(verify_relations(&m).all_passed());
            prop_assert!(commutation_check(&m).all_passed());
        }
    }

    #[test]
    fn twists_compose(p in even_params(), a in 0u8..4, b in 0u8..4) {
        let m = make_e(&p).unwrap();
        let (ta, tb) = (twist_of(a), twist_of(b));
        prop_assert_eq!(m.twisted(ta).twisted(tb), m.twisted(ta.compose(tb)));
        prop_assert_eq!(m.twisted(ta).twisted(ta.inverse()), m);
    }

    #[test]
    fn character_rotates_with_twist(o in odd_params(), e in 0u8..4) {
        let m = make_o(&o).unwrap();
        let (chi, fp) = (central_character(&m).unwrap(), det_fingerprint(&m).unwrap());
        let mt = m.twisted(twist_of(e));
        let (chi_t, fp_t) = (central_character(&mt).unwrap(), det_fingerprint(&mt).unwrap());
        for i in 0..4 {
            let j = (i + e as usize) % 4;
            prop_assert_eq!(&chi_t[i], &chi[j]);
            prop_assert_eq!(&fp_t[i], &fp[j]);
        }
    }

    #[test]
    fn orbit_members_share_a_module(p in even_params()) {
        prop_assume!(criterion(&p).unwrap());
        let canon = canonical_orbit_rep(&p).unwrap();
        let a = make_e(&p).unwrap();
        for member in orbit_members(&p).unwrap() {
            prop_assert_eq!(&canonical_orbit_rep(&member).unwrap(), &canon);
            let b = make_e(&member).unwrap();
            prop_assert!(find_intertwiner(&a, &b).unwrap().found().is_some());
        }
    }

    #[test]
    fn classify_inverts_construct(p in even_params(), e in 0u8..4) {
        prop_assume!(criterion(&p).unwrap());
        let res = classify(&make_e(&p).unwrap().twisted(twist_of(e))).unwrap();
        prop_assert_eq!(res.twist, twist_of(e));
        prop_assert_eq!(res.params, canonical_orbit_rep(&p).unwrap());
    }

    #[test]
    fn l_routes_agree(p in even_params(), o in odd_params()) {
        prop_assert!(l_matrix_all_routes(&p).is_ok());
        prop_assert!(l_matrix_all_routes(&o).is_ok());
    }

    #[test]
    fn module_json_round_trips(p in even_params()) {
        let m = make_e(&p).unwrap().twisted(twist_of(1));
        let back: ModuleRep<Rational> = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn reducible_even_module_is_rejected_by_classify() {
    let q = Rational::from(2);
    let k = ["1/2", "2", "3", "1/6"].map(|s| s.parse::<Rational>().unwrap());
    let p = ParamQuadruple::even(q, k, 1).unwrap();
    assert!(!criterion(&p).unwrap());
    assert!(classify(&make_e(&p).unwrap()).is_err());
}
