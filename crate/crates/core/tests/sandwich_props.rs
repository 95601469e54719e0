use proptest::prelude::*;
use sl2lab::finring::parse_ring_spec;
use sl2lab::group::{FiniteGroup, GroupTable};
use sl2lab::quadfields::{delta_verdict, v_profile, DeltaVerdict, Splitting};
use sl2lab::sandwich::{is_radix, sandwich_check};
use sl2lab::Error;
use std::sync::OnceLock;

fn f7() -> &'static GroupTable {
    static G: OnceLock<GroupTable> = OnceLock::new();
    G.get_or_init(|| GroupTable::enumerate(&parse_ring_spec("F7").unwrap()).unwrap())
}

fn z9() -> &'static GroupTable {
    static G: OnceLock<GroupTable> = OnceLock::new();
    G.get_or_init(|| GroupTable::enumerate(&parse_ring_spec("Z/9").unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sandwich_chain_holds(which in 0usize..2, x in any::<u32>()) {
        let g = if which == 0 { f7() } else { z9() };
        let a = g.element(x % g.order() as u32);
        match sandwich_check(g, &a) {
            Ok(rep) => prop_assert!(rep.passed(), "{:?}", rep),
            Err(e) => {
                prop_assert_eq!(e, Error::LevelZero);
                prop_assert!(a.is_scalar(g.ring()));
            }
        }
    }

    #[test]
    fn ideals_are_radices(i in 0usize..4, x in 0u16..16) {
        let r = parse_ring_spec(["Z/4", "Z/8", "F2[T]/(T^2)", "Z/9"][i]).unwrap();
        let x = sl2lab::Elem(x % r.order() as u16);
        let members = r.principal_ideal(x).members(&r);
        let p = r.additive_closure(&members);
        prop_assert!(is_radix(&r, &p));
    }

    #[test]
    fn verdict_is_monotone(d in 2i64..2000, k1 in 1u32..5, k2 in 1u32..5) {
        prop_assume!(v_profile(d).is_ok());
        let (lo, hi) = (k1.min(k2), k1.max(k2));
        if delta_verdict(d, lo).unwrap() != DeltaVerdict::MinusInfinity {
            prop_assert_ne!(delta_verdict(d, hi).unwrap(), DeltaVerdict::MinusInfinity);
        }
    }

    #[test]
    fn small_v_needs_inert_two(d in 2i64..5000) {
        if let Ok(rep) = v_profile(d) {
            if rep.v <= 1 {
                prop_assert_eq!(rep.split2, Splitting::Inert);
                prop_assert_eq!(d % 8, 5);
            }
            prop_assert_eq!(rep.v, (2 * rep.r2 + rep.r1).max(rep.q));
        }
    }
}
