//! Property tests for the polynomial algebra: full expansion, equivalence,
//! and decomposition recombination.

use std::collections::BTreeMap;

use proptest::prelude::*;

use efg_core::poly::{cancels, equivalent, x_decomposition, Literals, MultilinearPoly};
use efg_core::{rat, Rational};

const VARS: [&str; 4] = ["w", "x", "y", "z"];

fn arb_poly() -> impl Strategy<Value = MultilinearPoly> {
    // Up to five terms; each variable appears plain, complemented, or not
    // at all.
    prop::collection::vec(
        (
            -9i64..=9,
            prop::collection::vec(0u8..3, VARS.len()),
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut f = MultilinearPoly::zero();
        for (coeff, shape) in terms {
            let mut lits = Literals::new();
            for (var, kind) in VARS.iter().zip(shape) {
                match kind {
                    0 => {
                        lits.insert(var.to_string(), true);
                    }
                    1 => {
                        lits.insert(var.to_string(), false);
                    }
                    _ => {}
                }
            }
            f.add_term(rat(coeff), lits);
        }
        f
    })
}

proptest! {
    #[test]
    fn full_expand_is_complement_free_and_equivalent(f in arb_poly()) {
        let h = f.full_expand();
        prop_assert!(h.is_complement_free());
        prop_assert!(equivalent(&f, &h));
        // Idempotent.
        prop_assert_eq!(h.full_expand(), h);
    }

    #[test]
    fn decomposition_recombines_to_the_source(f in arb_poly()) {
        for x in f.vars() {
            let d = x_decomposition(&f, &x);
            prop_assert!(equivalent(&d.recombine(), &f), "pivot {}", x);
            // Parts never mention the pivot.
            for part in [&d.f0, &d.f1, &d.f2] {
                prop_assert!(!part.vars().contains(&x));
            }
            if d.disconnected {
                let [v0, v1, v2] = d.part_vars();
                prop_assert!(v0.intersection(&v1).next().is_none());
                prop_assert!(v0.intersection(&v2).next().is_none());
                prop_assert!(v1.intersection(&v2).next().is_none());
            }
        }
    }

    #[test]
    fn cancellation_matches_expansion(f in arb_poly()) {
        let h = f.full_expand();
        for x in f.vars() {
            for y in f.vars() {
                if x == y {
                    continue;
                }
                for b in [false, true] {
                    prop_assert_eq!(
                        cancels(&f, &x, &y, b).unwrap(),
                        cancels(&h, &x, &y, b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn evaluation_respects_equivalence(f in arb_poly(), bits in 0u8..16) {
        let h = f.full_expand();
        let point: BTreeMap<String, Rational> = VARS
            .iter()
            .enumerate()
            .map(|(i, v)| (v.to_string(), rat(((bits >> i) & 1) as i64)))
            .collect();
        prop_assert_eq!(f.evaluate(&point).unwrap(), h.evaluate(&point).unwrap());
    }
}
