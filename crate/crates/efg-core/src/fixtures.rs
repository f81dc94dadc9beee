//! Small example games used throughout the documentation and tests.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bridge::{Bid, BridgeSpec, Profile};
use crate::game::{GameBuilder, GameTree, Player};
use crate::{rat, ratio};

/// One-player game where Max is absent-minded: the root and its left child
/// share one information set `x` with moves `a`/`b`. Playing `a` twice
/// reaches a 0-leaf, `a` then `b` reaches the only 1-leaf, and `b` at the
/// root reaches a 0-leaf. The behavioural payoff is x(1-x); no pure
/// strategy earns more than 0.
pub fn absent_minded_game() -> GameTree {
    let mut b = GameBuilder::new();
    let r = b.root_control(Player::Max, "x");
    let u = b.control(r, "a", Player::Max, "x");
    b.leaf(u, "a", rat(0));
    b.leaf(u, "b", rat(1));
    b.leaf(r, "b", rat(0));
    b.finish()
}

/// Two-player game where Max has signal loss: Min moves first (infoset
/// `w`, moves `A`/`B`), Max then acts at `x` or `y`, and the infoset `z`
/// merges one node from each branch so Max forgets which signal she saw.
/// Pure maxmin is 1, pure minmax is 2.
pub fn signal_loss_game() -> GameTree {
    let mut b = GameBuilder::new();
    let r = b.root_control(Player::Min, "w");
    let u1 = b.control(r, "A", Player::Max, "x");
    b.leaf(u1, "a", rat(1));
    let u3 = b.control(u1, "b", Player::Max, "z");
    b.leaf(u3, "a", rat(2));
    b.leaf(u3, "b", rat(0));
    let u2 = b.control(r, "B", Player::Max, "y");
    let u4 = b.control(u2, "a", Player::Max, "z");
    b.leaf(u4, "a", rat(0));
    b.leaf(u4, "b", rat(2));
    b.leaf(u2, "b", rat(1));
    b.finish()
}

/// Bidding game where North and South each hold a spade or a diamond
/// (uniform over the four deals) and East/West hold nothing. North makes
/// 2 with a spade opposite a diamond and 4 with spades on both sides;
/// South makes 2 whenever she holds a spade. Ceiling 5, table bound 4.
/// Signalling the partner's suit pays here, so restricting to
/// non-overbidding strategies loses value.
pub fn two_secret_bidding_spec() -> BridgeSpec {
    let ns: Vec<String> = vec!["diamond".into(), "spade".into()];
    let trivial: Vec<String> = vec!["none".into()];
    let profiles: [Profile; 4] = [[0, 0, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0], [1, 0, 1, 0]];
    let dist: BTreeMap<Profile, _> = profiles.iter().map(|&p| (p, ratio(1, 4))).collect();
    let theta_n: BTreeMap<Profile, Bid> =
        BTreeMap::from([([0, 0, 0, 0], 0), ([0, 0, 1, 0], 0), ([1, 0, 0, 0], 2), ([1, 0, 1, 0], 4)]);
    let theta_s: BTreeMap<Profile, Bid> =
        BTreeMap::from([([0, 0, 0, 0], 0), ([0, 0, 1, 0], 2), ([1, 0, 0, 0], 0), ([1, 0, 1, 0], 2)]);
    BridgeSpec {
        secrets: [ns.clone(), trivial.clone(), ns, trivial],
        dist,
        theta: [theta_n, BTreeMap::new(), theta_s, BTreeMap::new()],
        n: 5,
        m: 4,
    }
}

/// Bidding game where only North holds a secret, one of six hands dealt
/// uniformly. North makes 3/4/5 on the first three hands; South makes
/// 3/4/5 on the last three; East makes various smaller contracts. Here
/// North can announce her hand with her opening bid and South can read it,
/// so non-overbidding strategies already achieve the pure maxmin.
pub fn six_secret_bidding_spec() -> BridgeSpec {
    let hands: Vec<String> = (1..=6).map(|i| alloc::format!("h{i}")).collect();
    let trivial: Vec<String> = vec!["x".into()];
    let dist: BTreeMap<Profile, _> = (0..6).map(|i| ([i, 0, 0, 0], ratio(1, 6))).collect();
    let n_vals = [3, 4, 5, 0, 0, 0];
    let e_vals = [1, 3, 2, 2, 2, 4];
    let s_vals = [0, 0, 0, 3, 4, 5];
    let table = |vals: [Bid; 6]| -> BTreeMap<Profile, Bid> {
        (0..6).map(|i| ([i, 0, 0, 0], vals[i])).collect()
    };
    BridgeSpec {
        secrets: [hands, trivial.clone(), trivial.clone(), trivial],
        dist,
        theta: [table(n_vals), table(e_vals), table(s_vals), BTreeMap::new()],
        n: 5,
        m: 5,
    }
}
