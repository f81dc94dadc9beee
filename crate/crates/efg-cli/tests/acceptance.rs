//! Acceptance suite: each test checks one headline criterion end to end at
//! its stated tolerance and prints one PASS line. Exact statements use
//! rational equality; numeric statements use the tolerances baked into the
//! asserts.

use std::collections::BTreeMap;
use std::time::Instant;

use efg_core::bridge::{
    compile, play_out, solve_non_overbidding, solve_team_pure_maxmin, BidSequence, Seat,
    TeamSolveOptions,
};
use efg_core::fixtures::{
    absent_minded_game, signal_loss_game, six_secret_bidding_spec, two_secret_bidding_spec,
};
use efg_core::game::{
    chance_degree, classify_recall, payoff, validate, BehaviouralStrategy, Player, RecallClass,
};
use efg_core::poly::{equivalent, is_perfect_recall, x_decomposition};
use efg_core::solvers::{
    estimate_maxmin_beh, solve_backward_induction, solve_pure_maxmin, solve_pure_minmax,
    solve_pure_one_player, Value,
};
use efg_core::testgen::{
    brute_force_pure_optimum, max_over_vertices, oracle_perfect_recall, pick, random_general_poly,
    random_multilinear, random_one_player_game, random_perfect_recall_poly, random_unit_rational,
    rng, table_of_multilinear, GameGenParams,
};
use efg_core::transforms::{
    encode_maxmin_formula, gadget_sqrt, gadget_sqrtsum, payoff_polynomial, poly_to_game,
    pr_poly_to_game, Relation,
};
use efg_core::{rat, Rational};

fn exact(v: &Value) -> &Rational {
    match v {
        Value::Exact(q) => q,
        Value::Approx { .. } => panic!("expected exact value"),
    }
}

#[test]
fn criterion_01_pure_strategy_values() {
    let started = Instant::now();
    let g2 = signal_loss_game();
    let maxmin = solve_pure_maxmin(&g2).unwrap();
    assert_eq!(exact(&maxmin.value), &rat(1));
    let minmax = solve_pure_minmax(&g2).unwrap();
    assert_eq!(exact(&minmax.value), &rat(2));
    let g1 = absent_minded_game();
    let one = solve_pure_one_player(&g1).unwrap();
    assert_eq!(exact(&one.value), &rat(0));
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:?}, limit 0.1 s");
    println!("PASS criterion 1: pure values 1 / 2 / 0 exact in {elapsed:?}");
}

#[test]
fn criterion_02_sqrt_gadget_maxmin() {
    for n in [2u64, 4, 9, 16] {
        let started = Instant::now();
        let game = gadget_sqrt(n).unwrap();
        let result = estimate_maxmin_beh(&game, 6, 1e-4, 1).unwrap();
        let value = result.value.as_f64();
        let target = -(n as f64).sqrt();
        assert!(
            (value - target).abs() < 1e-4,
            "n = {n}: value {value} vs {target}"
        );
        let optimum = ((n as f64).sqrt() - 1.0) / (n as f64 - 1.0);
        let witness = result.max_behavioural.unwrap();
        let x = witness["I1"][0];
        let y = witness["I2"][0];
        assert!((x - optimum).abs() < 1e-3, "n = {n}: x = {x} vs {optimum}");
        assert!((y - optimum).abs() < 1e-3, "n = {n}: y = {y} vs {optimum}");
        let elapsed = started.elapsed();
        assert!(elapsed.as_secs_f64() < 5.0, "n = {n} took {elapsed:?}, limit 5 s");
        println!("PASS criterion 2 (n = {n}): maxmin {value:.6} at x = y = {x:.5} in {elapsed:?}");
    }
}

#[test]
fn criterion_03_sqrtsum_gadget() {
    let near_zero = estimate_maxmin_beh(&gadget_sqrtsum(&[4, 9], 5).unwrap(), 6, 1e-4, 1)
        .unwrap()
        .value
        .as_f64();
    assert!(near_zero.abs() <= 1e-3, "a = (4,9), p = 5: {near_zero}");

    let negative = estimate_maxmin_beh(&gadget_sqrtsum(&[2, 3], 3).unwrap(), 6, 1e-4, 1)
        .unwrap()
        .value
        .as_f64();
    assert!(negative <= -0.04, "a = (2,3), p = 3: {negative}");

    let positive = estimate_maxmin_beh(&gadget_sqrtsum(&[4], 3).unwrap(), 6, 1e-4, 1)
        .unwrap()
        .value
        .as_f64();
    assert!(positive >= 0.3, "a = (4,), p = 3: {positive}");
    println!(
        "PASS criterion 3: sqrtsum maxmin {near_zero:.5} / {negative:.5} / {positive:.5}"
    );
}

#[test]
fn criterion_04_polynomial_game_payoff_identity() {
    let mut rng = rng(0xACC4);
    let empty = BehaviouralStrategy::new();
    let mut checked = 0u32;
    for _ in 0..100 {
        let vars = 1 + pick(&mut rng, 4);
        let f = random_general_poly(&mut rng, vars, 6, 3);
        if f.is_zero() {
            continue;
        }
        let game = poly_to_game(&f).unwrap();
        for _ in 0..20 {
            let point: BTreeMap<String, Rational> = f
                .vars()
                .into_iter()
                .map(|v| (v, random_unit_rational(&mut rng)))
                .collect();
            let mut sigma = BehaviouralStrategy::new();
            for (id, _) in game.infosets() {
                let d = point[id].clone();
                sigma.set(id, "l", d.clone());
                sigma.set(id, "r", rat(1) - d);
            }
            let lhs = payoff(&game, &sigma, &empty).unwrap();
            let rhs = f.evaluate(&point).unwrap();
            assert_eq!(lhs, rhs, "payoff differs from {f} at {point:?}");
            checked += 1;
        }
    }
    println!("PASS criterion 4: payoff identity exact on {checked} random (poly, point) pairs");
}

#[test]
fn criterion_05_perfect_recall_detection_soundness() {
    let mut rng = rng(0xACC5);
    let mut perfect = 0u32;
    for case in 0..200 {
        // Half arbitrary multilinear polynomials, half built by the
        // perfect-recall recursion so both verdicts get coverage.
        let f = if case % 2 == 0 {
            let vars = 1 + pick(&mut rng, 5);
            random_multilinear(&mut rng, vars, 6)
        } else {
            let vars = 2 + pick(&mut rng, 4);
            let names: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
            random_perfect_recall_poly(&mut rng, &names)
        };
        let vars: Vec<String> = f.vars().into_iter().collect();
        let expected = oracle_perfect_recall(&table_of_multilinear(&f, &vars));
        let verdict = is_perfect_recall(&f).is_perfect();
        assert_eq!(verdict, expected, "case {case}: {f}");
        if verdict {
            perfect += 1;
            // Every disconnected decomposition has perfect-recall parts.
            for x in &f.vars() {
                let d = x_decomposition(&f, x);
                if d.disconnected {
                    for part in [&d.f0, &d.f1, &d.f2] {
                        assert!(
                            is_perfect_recall(part).is_perfect(),
                            "case {case}: pivot {x} part {part}"
                        );
                    }
                }
            }
        }
    }
    println!("PASS criterion 5: detection matches brute force on 200 instances ({perfect} perfect recall)");
}

#[test]
fn criterion_06_perfect_recall_game_round_trip() {
    let mut rng = rng(0xACC6);
    for case in 0..50 {
        let vars = 1 + pick(&mut rng, 6);
        let names: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
        let f = random_perfect_recall_poly(&mut rng, &names);
        let game = pr_poly_to_game(&f).unwrap();
        assert!(validate(&game).is_ok(), "case {case}");
        assert_eq!(
            classify_recall(&game, Player::Max),
            RecallClass::PerfectRecall,
            "case {case}"
        );
        let bi = solve_backward_induction(&game).unwrap();
        let vertex_best = max_over_vertices(&f.full_expand());
        assert_eq!(exact(&bi.value), &vertex_best, "case {case}: {f}");
    }
    println!("PASS criterion 6: 50 perfect-recall round trips match vertex enumeration exactly");
}

#[test]
fn criterion_07_bag_solver_oracle_equivalence() {
    let mut rng = rng(0xACC7);
    let params = GameGenParams::default();
    for case in 0..200 {
        let game = random_one_player_game(&mut rng, &params);
        let expected = brute_force_pure_optimum(&game, Player::Max);
        let result = solve_pure_one_player(&game).unwrap();
        assert_eq!(exact(&result.value), &expected, "case {case}");
        let n = game.node_count() as u64;
        let k = chance_degree(&game) as u32;
        assert!(
            result.stats.candidates <= n.saturating_pow(k),
            "case {case}: {} candidates over n^K = {}^{}",
            result.stats.candidates,
            n,
            k
        );
    }
    println!("PASS criterion 7: bag solver equals exhaustive enumeration on 200 games within n^K");
}

#[test]
fn criterion_08_chance_degree_fixtures() {
    assert_eq!(chance_degree(&signal_loss_game()), 1);
    for n in [2u64, 4, 9, 16] {
        assert_eq!(chance_degree(&gadget_sqrt(n).unwrap()), 2);
    }
    let compiled = compile(&two_secret_bidding_spec()).unwrap();
    assert_eq!(chance_degree(&compiled), 4);
    println!("PASS criterion 8: chance degrees 1 / 2 / 4");
}

#[test]
fn criterion_09_bridge_semantics_and_solvers() {
    let started = Instant::now();
    let spec5 = two_secret_bidding_spec();
    let spade = spec5.secrets[0].iter().position(|s| s == "spade").unwrap();
    let diamond = spec5.secrets[0].iter().position(|s| s == "diamond").unwrap();

    let out = play_out(&spec5, &[spade, 0, spade, 0], &BidSequence(vec![0, 1, 0, 2, 4, 0, 0, 0])).unwrap();
    assert_eq!((out.declarer, out.contract, out.tmax_payoff), (Some(Seat::North), 4, 4));
    let out = play_out(&spec5, &[spade, 0, diamond, 0], &BidSequence(vec![2, 3, 0, 0, 0])).unwrap();
    assert_eq!((out.declarer, out.contract, out.tmax_payoff), (Some(Seat::East), 3, 3));

    let options = TeamSolveOptions::default();
    let spec6 = six_secret_bidding_spec();
    let nob6 = solve_non_overbidding(&spec6, options).unwrap();
    let full6 = solve_team_pure_maxmin(&spec6, options).unwrap();
    assert_eq!(nob6.value, full6.value, "restricted and full maxmin must agree here");

    let nob5 = solve_non_overbidding(&spec5, options).unwrap();
    let full5 = solve_team_pure_maxmin(&spec5, options).unwrap();
    assert!(nob5.value < full5.value, "restriction must cost value here");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, limit 60 s");
    println!(
        "PASS criterion 9: playouts 4 / 3; maxmin {} = {} and {} < {} in {elapsed:?}",
        nob6.value, full6.value, nob5.value, full5.value
    );
}

#[test]
fn criterion_10_formula_emission() {
    let g2 = signal_loss_game();
    let formula = encode_maxmin_formula(&g2, rat(0), Relation::Ge).unwrap();
    let text = formula.to_string();
    assert_eq!(
        text,
        "exists x y z. forall w. (0 <= w & w <= 1) -> (~w*~y + 2*~w*y*~z + 2*w*~x*z + w*x >= 0)"
    );
    // The matrix is the symbolic payoff of the game.
    let matrix = formula.matrix.to_multilinear().unwrap();
    let payoff_poly = payoff_polynomial(&g2).unwrap().to_multilinear().unwrap();
    assert!(equivalent(&matrix, &payoff_poly));
    // The emitted text parses back to an equivalent formula.
    let parsed = efg_cli::formats::parse_formula(&text).unwrap();
    assert_eq!(parsed.exists, formula.exists);
    assert_eq!(parsed.forall, formula.forall);
    assert!(equivalent(
        &parsed.matrix.to_multilinear().unwrap(),
        &matrix
    ));
    println!("PASS criterion 10: quantified formula reproduced and parsed back");
}
