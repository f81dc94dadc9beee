//! Round-trip identities of the polynomial-game constructions: the payoff
//! of a constructed game agrees with the source polynomial at random
//! behavioural points, and the perfect-recall pipeline closes on itself.

mod common;

use std::collections::BTreeMap;

use common::{
    max_over_vertices, random_general_poly, random_perfect_recall_poly, random_unit_rational, rng,
};
use efg_core::game::{classify_recall, validate, BehaviouralStrategy, GameTree, Player, RecallClass};
use efg_core::poly::equivalent;
use efg_core::solvers::{estimate_maxmin_beh, solve_backward_induction, Value};
use efg_core::transforms::{game_to_poly, gap_chain_poly, poly_to_game, pr_poly_to_game};
use efg_core::{rat, Rational};

/// Behavioural strategy that plays `l` with the point's probability at
/// every variable infoset of a generated game.
fn strategy_at(game: &GameTree, point: &BTreeMap<String, Rational>) -> BehaviouralStrategy {
    let mut s = BehaviouralStrategy::new();
    for (id, info) in game.infosets() {
        let d = point.get(id).cloned().unwrap_or_else(|| rat(0));
        assert_eq!(info.moves, vec!["l".to_string(), "r".to_string()]);
        s.set(id, "l", d.clone());
        s.set(id, "r", rat(1) - d);
    }
    s
}

#[test]
fn constructed_game_payoff_equals_polynomial_value() {
    let mut rng = rng(0x1E44A);
    let empty = BehaviouralStrategy::new();
    for case in 0..40 {
        let nvars = 1 + common::pick(&mut rng, 4);
        let f = random_general_poly(&mut rng, nvars, 6, 3);
        if f.is_zero() {
            continue;
        }
        let game = poly_to_game(&f).unwrap();
        assert!(validate(&game).is_ok());
        for _ in 0..8 {
            let point: BTreeMap<String, Rational> = f
                .vars()
                .into_iter()
                .map(|v| (v, random_unit_rational(&mut rng)))
                .collect();
            let sigma = strategy_at(&game, &point);
            let lhs = efg_core::game::payoff(&game, &sigma, &empty).unwrap();
            let rhs = f.evaluate(&point).unwrap();
            assert_eq!(lhs, rhs, "case {case}: payoff mismatch at {point:?} for {f}");
        }
    }
}

#[test]
fn perfect_recall_pipeline_round_trips() {
    let mut rng = rng(0x1E44B);
    let empty = BehaviouralStrategy::new();
    for case in 0..30 {
        let k = 1 + common::pick(&mut rng, 5);
        let names: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
        let f = random_perfect_recall_poly(&mut rng, &names);
        let game = match pr_poly_to_game(&f) {
            Ok(g) => g,
            Err(e) => panic!("case {case}: constructed polynomial rejected: {e}"),
        };
        assert!(validate(&game).is_ok());
        assert_eq!(classify_recall(&game, Player::Max), RecallClass::PerfectRecall);

        // Payoff agreement at random points.
        for _ in 0..5 {
            let point: BTreeMap<String, Rational> = f
                .vars()
                .into_iter()
                .map(|v| (v, random_unit_rational(&mut rng)))
                .collect();
            let sigma = strategy_at(&game, &point);
            let lhs = efg_core::game::payoff(&game, &sigma, &empty).unwrap();
            let rhs = f.evaluate(&point).unwrap();
            assert_eq!(lhs, rhs, "case {case}");
        }

        // Extracting the payoff polynomial returns an equivalent one.
        if !game.infosets().is_empty() {
            let back = game_to_poly(&game, Player::Max).unwrap().to_multilinear().unwrap();
            assert!(equivalent(&back, &f), "case {case}: {back} differs from {f}");
        }

        // Backward induction equals the best hypercube vertex.
        let bi = solve_backward_induction(&game).unwrap();
        assert_eq!(bi.value, Value::Exact(max_over_vertices(&f)), "case {case}");
    }
}

#[test]
fn estimator_finds_sqrt_of_nine() {
    let game = efg_core::transforms::gadget_sqrt(9).unwrap();
    let r = estimate_maxmin_beh(&game, 3, 1e-4, 5).unwrap();
    let v = r.value.as_f64();
    assert!((v + 3.0).abs() < 1e-4, "value {v}");
    let witness = r.max_behavioural.unwrap();
    assert!((witness["I1"][0] - 0.25).abs() < 1e-3);
    assert!((witness["I2"][0] - 0.25).abs() < 1e-3);
}

#[test]
fn chain_game_optimum_sits_at_the_chain_point() {
    // The t = 1 chain: maximum 0 at y0 = 1/4, y1 = 1/2.
    let game = poly_to_game(&gap_chain_poly(1)).unwrap();
    let r = estimate_maxmin_beh(&game, 4, 1e-5, 3).unwrap();
    assert!(r.value.as_f64().abs() < 1e-6, "value {}", r.value.as_f64());
    let witness = r.max_behavioural.unwrap();
    assert!((witness["y0"][0] - 0.25).abs() < 1e-3, "y0 = {}", witness["y0"][0]);
    assert!((witness["y1"][0] - 0.5).abs() < 1e-3, "y1 = {}", witness["y1"][0]);
}
