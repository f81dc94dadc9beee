//! Round-trip properties of every grammar: parsing a canonical print
//! reproduces the value exactly.

use proptest::prelude::*;

use efg_cli::formats::{
    parse_bridge_spec, parse_game, parse_multilinear_poly, parse_poly, print_bridge_spec,
    print_game,
};
use efg_core::poly::{Literals, MultilinearPoly};
use efg_core::rat;
use efg_core::testgen::{random_one_player_game, rng, GameGenParams};

const VARS: [&str; 4] = ["a", "b.c", "x:1", "y"];

fn arb_multilinear() -> impl Strategy<Value = MultilinearPoly> {
    prop::collection::vec((-9i64..=9, prop::collection::vec(0u8..3, VARS.len())), 0..5).prop_map(
        |terms| {
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
        },
    )
}

proptest! {
    #[test]
    fn multilinear_poly_round_trips(f in arb_multilinear()) {
        let text = f.to_string();
        let back = parse_multilinear_poly(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn literal_poly_round_trips(f in arb_multilinear()) {
        let p = efg_core::poly::LiteralPoly::from_multilinear(&f);
        let text = p.to_string();
        let back = parse_poly(&text).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn random_games_round_trip_bit_exactly() {
    let mut rng = rng(0xF0F0);
    let params = GameGenParams::default();
    for _ in 0..60 {
        let game = random_one_player_game(&mut rng, &params);
        let text = print_game(&game);
        let parsed = parse_game(&text).unwrap();
        assert_eq!(print_game(&parsed), text);
    }
}

#[test]
fn fixture_games_and_specs_round_trip() {
    for game in [
        efg_core::fixtures::absent_minded_game(),
        efg_core::fixtures::signal_loss_game(),
        efg_core::transforms::gadget_sqrt(4).unwrap(),
        efg_core::transforms::gadget_sqrtsum(&[2, 3], 3).unwrap(),
        efg_core::bridge::compile(&efg_core::fixtures::two_secret_bidding_spec()).unwrap(),
    ] {
        let text = print_game(&game);
        assert_eq!(print_game(&parse_game(&text).unwrap()), text);
    }
    for spec in [
        efg_core::fixtures::two_secret_bidding_spec(),
        efg_core::fixtures::six_secret_bidding_spec(),
    ] {
        let text = print_bridge_spec(&spec);
        assert_eq!(print_bridge_spec(&parse_bridge_spec(&text).unwrap()), text);
    }
}
