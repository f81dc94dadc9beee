//! Seeded random generators for games and polynomials, plus independent
//! brute-force oracles (exhaustive strategy enumeration, vertex
//! enumeration, interpolation-based expansion). Test support only, behind
//! the `testgen` feature; the oracles deliberately avoid the library's own
//! algorithms so tests can compare against them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::game::{
    enumerate_pure, payoff_pure, EdgeLabel, GameBuilder, GameTree, NodeId, NodeKind, Player,
    PureStrategy,
};
use crate::poly::{GeneralPoly, Literals, MultilinearPoly};
use crate::{rat, ratio, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pick(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    (rng.next_u64() % bound as u64) as usize
}

/// Uniform rational in [0, 1] with denominator up to 8.
pub fn random_unit_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = 1 + pick(rng, 8) as i64;
    let n = pick(rng, d as usize + 1) as i64;
    ratio(n, d)
}

/// Nonzero integer coefficient in [-9, 9].
pub fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = pick(rng, 19) as i64 - 9;
        if c != 0 {
            return rat(c);
        }
    }
}

// -------------------------------------------------------------------
// Random games.

pub struct GameGenParams {
    pub max_depth: usize,
    pub max_infosets: usize,
    pub max_nodes: usize,
    pub max_chance_degree: u64,
    pub max_pure_strategies: u128,
}

impl Default for GameGenParams {
    fn default() -> Self {
        GameGenParams {
            max_depth: 5,
            max_infosets: 12,
            max_nodes: 40,
            max_chance_degree: 3,
            max_pure_strategies: 2048,
        }
    }
}

/// Random one-player (Max) game within the given bounds. Repeatedly
/// samples until the structural bounds hold, so the distribution is
/// whatever survives the filter; that is fine for oracle comparisons.
pub fn random_one_player_game(rng: &mut ChaCha8Rng, params: &GameGenParams) -> GameTree {
    loop {
        // Pre-draw infoset move counts: mostly binary, occasionally 3.
        let infoset_count = 1 + pick(rng, params.max_infosets);
        let moves_of: Vec<usize> = (0..infoset_count).map(|_| if pick(rng, 5) == 0 { 3 } else { 2 }).collect();
        let mut b = GameBuilder::new();

        fn grow(
            rng: &mut ChaCha8Rng,
            b: &mut GameBuilder,
            moves_of: &[usize],
            parent: Option<(NodeId, EdgeLabel)>,
            depth: usize,
            max_depth: usize,
        ) {
            let roll = pick(rng, 10);
            let leafy = depth >= max_depth || roll < 3;
            if leafy {
                let u = rat(pick(rng, 19) as i64 - 9);
                match parent {
                    None => {
                        b.root_leaf(u);
                    }
                    Some((p, e)) => {
                        b.leaf(p, e, u);
                    }
                };
                return;
            }
            if roll < 6 {
                // Chance node with 2 or 3 children, random positive probs.
                let node = match parent {
                    None => b.root_chance(),
                    Some((p, e)) => b.chance(p, e),
                };
                let k = 2 + pick(rng, 2);
                let weights: Vec<i64> = (0..k).map(|_| 1 + pick(rng, 4) as i64).collect();
                let total: i64 = weights.iter().sum();
                for w in weights {
                    grow(rng, b, moves_of, Some((node, ratio(w, total).into())), depth + 1, max_depth);
                }
            } else {
                let infoset = pick(rng, moves_of.len());
                let id = format!("i{infoset}");
                let node = match parent {
                    None => b.root_control(Player::Max, &id),
                    Some((p, e)) => b.control(p, e, Player::Max, &id),
                };
                for m in 0..moves_of[infoset] {
                    let action = format!("m{m}");
                    grow(rng, b, moves_of, Some((node, action.as_str().into())), depth + 1, max_depth);
                }
            }
        }
        grow(rng, &mut b, &moves_of, None, 0, params.max_depth);
        let game = b.finish();
        if game.node_count() <= params.max_nodes
            && game.infosets().len() <= params.max_infosets
            && crate::game::chance_degree(&game) <= params.max_chance_degree
            && crate::game::pure_strategy_count(&game, Player::Max) <= params.max_pure_strategies
            && crate::game::validate(&game).is_ok()
        {
            return game;
        }
    }
}

/// Random two-player game within the same bounds; both players' strategy
/// spaces stay small enough for exhaustive maxmin.
pub fn random_two_player_game(rng: &mut ChaCha8Rng, params: &GameGenParams) -> GameTree {
    loop {
        let infoset_count = 1 + pick(rng, params.max_infosets);
        let shapes: Vec<(Player, usize)> = (0..infoset_count)
            .map(|_| {
                let player = if pick(rng, 2) == 0 { Player::Max } else { Player::Min };
                let moves = if pick(rng, 5) == 0 { 3 } else { 2 };
                (player, moves)
            })
            .collect();
        let mut b = GameBuilder::new();

        fn grow(
            rng: &mut ChaCha8Rng,
            b: &mut GameBuilder,
            shapes: &[(Player, usize)],
            parent: Option<(NodeId, EdgeLabel)>,
            depth: usize,
            max_depth: usize,
        ) {
            let roll = pick(rng, 10);
            if depth >= max_depth || roll < 3 {
                let u = rat(pick(rng, 19) as i64 - 9);
                match parent {
                    None => {
                        b.root_leaf(u);
                    }
                    Some((p, e)) => {
                        b.leaf(p, e, u);
                    }
                };
                return;
            }
            if roll < 5 {
                let node = match parent {
                    None => b.root_chance(),
                    Some((p, e)) => b.chance(p, e),
                };
                let k = 2 + pick(rng, 2);
                let weights: Vec<i64> = (0..k).map(|_| 1 + pick(rng, 4) as i64).collect();
                let total: i64 = weights.iter().sum();
                for w in weights {
                    grow(rng, b, shapes, Some((node, ratio(w, total).into())), depth + 1, max_depth);
                }
            } else {
                let slot = pick(rng, shapes.len());
                let (player, moves) = shapes[slot];
                let id = format!("i{slot}");
                let node = match parent {
                    None => b.root_control(player, &id),
                    Some((p, e)) => b.control(p, e, player, &id),
                };
                for m in 0..moves {
                    let action = format!("m{m}");
                    grow(rng, b, shapes, Some((node, action.as_str().into())), depth + 1, max_depth);
                }
            }
        }
        grow(rng, &mut b, &shapes, None, 0, params.max_depth);
        let game = b.finish();
        if game.node_count() <= params.max_nodes
            && game.infosets().len() <= params.max_infosets
            && crate::game::chance_degree(&game) <= params.max_chance_degree
            && crate::game::pure_strategy_count(&game, Player::Max) <= params.max_pure_strategies
            && crate::game::pure_strategy_count(&game, Player::Min) <= params.max_pure_strategies
            && crate::game::validate(&game).is_ok()
        {
            return game;
        }
    }
}

/// Exhaustive pure optimum by full enumeration; the independent oracle for
/// the bag solver.
pub fn brute_force_pure_optimum(game: &GameTree, player: Player) -> Rational {
    let empty = PureStrategy::new();
    let mut best: Option<Rational> = None;
    for s in enumerate_pure(game, player) {
        let v = match player {
            Player::Max => payoff_pure(game, &s, &empty).unwrap(),
            Player::Min => payoff_pure(game, &empty, &s).unwrap(),
        };
        best = Some(match best {
            None => v,
            Some(b) => {
                if player == Player::Max {
                    b.max(v)
                } else {
                    b.min(v)
                }
            }
        });
    }
    best.expect("player enumerates at least one strategy")
}

/// Leaves reached with positive probability under a pure strategy of the
/// single player.
pub fn reached_leaves(game: &GameTree, strategy: &PureStrategy) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut stack = vec![game.root()];
    while let Some(id) = stack.pop() {
        match &game.node(id).kind {
            NodeKind::Leaf { .. } => out.push(id),
            NodeKind::Chance => stack.extend(game.node(id).children.iter().copied()),
            NodeKind::Control { infoset, .. } => {
                let action = &strategy[infoset];
                for (edge, child) in game.edges(id) {
                    if let EdgeLabel::Action(a) = edge {
                        if a == action {
                            stack.push(child);
                        }
                    }
                }
            }
        }
    }
    out
}

// -------------------------------------------------------------------
// Random polynomials.

/// Random plain polynomial: up to `max_terms` distinct monomials over the
/// first `vars` letters, per-term total degree at most `max_degree`.
pub fn random_general_poly(
    rng: &mut ChaCha8Rng,
    vars: usize,
    max_terms: usize,
    max_degree: u32,
) -> GeneralPoly {
    let names: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
    let mut f = GeneralPoly::zero();
    let terms = 1 + pick(rng, max_terms);
    for _ in 0..terms {
        let degree = pick(rng, max_degree as usize + 1) as u32;
        let mut mono: BTreeMap<String, u32> = BTreeMap::new();
        for _ in 0..degree {
            let v = names[pick(rng, names.len())].clone();
            *mono.entry(v).or_insert(0) += 1;
        }
        f.add_term(random_coeff(rng), mono);
    }
    f
}

/// Random multilinear polynomial over up to `vars` variables.
pub fn random_multilinear(rng: &mut ChaCha8Rng, vars: usize, max_terms: usize) -> MultilinearPoly {
    let names: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
    let mut f = MultilinearPoly::zero();
    let terms = 1 + pick(rng, max_terms);
    for _ in 0..terms {
        let mut lits = Literals::new();
        for name in &names {
            match pick(rng, 3) {
                0 => {
                    lits.insert(name.clone(), true);
                }
                1 => {
                    lits.insert(name.clone(), false);
                }
                _ => {}
            }
        }
        f.add_term(random_coeff(rng), lits);
    }
    f
}

/// Random perfect-recall polynomial built by the defining recursion:
/// disjoint variable sets, a pivot, and recursive parts.
pub fn random_perfect_recall_poly(rng: &mut ChaCha8Rng, vars: &[String]) -> MultilinearPoly {
    match vars.len() {
        0 => MultilinearPoly::constant(rat(pick(rng, 19) as i64 - 9)),
        1 => {
            let mut f = MultilinearPoly::zero();
            f.add_term(random_coeff(rng), Literals::from([(vars[0].clone(), true)]));
            f.add_term(random_coeff(rng), Literals::from([(vars[0].clone(), false)]));
            f
        }
        _ => {
            let pivot = vars[pick(rng, vars.len())].clone();
            let rest: Vec<String> = vars.iter().filter(|v| **v != pivot).cloned().collect();
            let mut parts: [Vec<String>; 3] = [Vec::new(), Vec::new(), Vec::new()];
            for v in rest {
                parts[pick(rng, 3)].push(v);
            }
            let f0 = random_perfect_recall_poly(rng, &parts[0]);
            let f1 = random_perfect_recall_poly(rng, &parts[1]);
            let f2 = random_perfect_recall_poly(rng, &parts[2]);
            let mut out = MultilinearPoly::zero();
            for (lits, c) in f0.terms() {
                let mut l = lits.clone();
                l.insert(pivot.clone(), true);
                out.add_term(c.clone(), l);
            }
            for (lits, c) in f1.terms() {
                let mut l = lits.clone();
                l.insert(pivot.clone(), false);
                out.add_term(c.clone(), l);
            }
            out = out.add(&f2);
            out
        }
    }
}

/// Exact maximum of a multilinear polynomial over the hypercube vertices,
/// by direct enumeration.
pub fn max_over_vertices(f: &MultilinearPoly) -> Rational {
    let vars: Vec<String> = f.vars().into_iter().collect();
    let mut best: Option<Rational> = None;
    for mask in 0u64..(1u64 << vars.len()) {
        let point: BTreeMap<String, Rational> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), rat(((mask >> i) & 1) as i64)))
            .collect();
        let v = f.evaluate(&point).unwrap();
        best = Some(match best {
            None => v,
            Some(b) => b.max(v),
        });
    }
    best.expect("vertex set nonempty")
}

// -------------------------------------------------------------------
// Interpolation-based perfect-recall oracle.
//
// Represents the complement-free expansion as a table monomial-mask ->
// coefficient, recovered from the 2^k vertex evaluations by inclusion-
// exclusion. Detection then brute-forces every pivot and every
// 3-coloring of the other variables, with no shortcut: a table is
// perfect recall iff it has at most one live variable or some pivot
// admits a disconnected split whose three parts are recursively perfect
// recall.

pub type CoeffTable = BTreeMap<u32, Rational>;

/// Coefficients of the multilinear extension from vertex values:
/// c_S = sum over T subset of S of (-1)^{|S|-|T|} f(T).
pub fn table_from_evals(vertex_value: &dyn Fn(u32) -> Rational, k: usize) -> CoeffTable {
    let mut table = CoeffTable::new();
    for s in 0u32..(1 << k) {
        let mut c = Rational::new(BigInt::from(0), BigInt::from(1));
        let mut t = s;
        loop {
            let sign = if (s ^ t).count_ones() % 2 == 0 { 1 } else { -1 };
            c += vertex_value(t) * rat(sign);
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        if !num_traits::Zero::is_zero(&c) {
            table.insert(s, c);
        }
    }
    table
}

pub fn table_of_multilinear(f: &MultilinearPoly, names: &[String]) -> CoeffTable {
    let eval = |mask: u32| -> Rational {
        let point: BTreeMap<String, Rational> = names
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), rat(((mask >> i) & 1) as i64)))
            .collect();
        f.evaluate(&point).unwrap()
    };
    table_from_evals(&eval, names.len())
}

fn live_vars(table: &CoeffTable) -> u32 {
    table.keys().fold(0, |acc, m| acc | m)
}

fn restrict(table: &CoeffTable, keep: impl Fn(u32) -> bool) -> CoeffTable {
    table.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect()
}

/// Brute-force perfect recall on coefficient tables: every pivot, every
/// coloring, full recursion.
pub fn oracle_perfect_recall(table: &CoeffTable) -> bool {
    let live = live_vars(table);
    if live.count_ones() <= 1 {
        return true;
    }
    let vars: Vec<usize> = (0..32).filter(|i| live & (1 << i) != 0).collect();
    for &x in &vars {
        let bit = 1u32 << x;
        // h = x*A + B on the table level.
        let a: CoeffTable = table
            .iter()
            .filter(|(m, _)| **m & bit != 0)
            .map(|(m, c)| (m & !bit, c.clone()))
            .collect();
        let b: CoeffTable = restrict(table, |m| m & bit == 0);
        let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != x).collect();
        // Try every 3-coloring of the remaining variables.
        let colorings = 3u64.pow(rest.len() as u32);
        'coloring: for code in 0..colorings {
            let mut x0 = 0u32;
            let mut x1 = 0u32;
            let mut code_left = code;
            for &v in &rest {
                match code_left % 3 {
                    0 => x0 |= 1 << v,
                    1 => x1 |= 1 << v,
                    _ => {}
                }
                code_left /= 3;
            }
            // Classify A-terms into X0 / X1 / constant, B-terms into
            // X1 / X2 / constant.
            let x2 = live & !bit & !x0 & !x1;
            for m in a.keys() {
                let ok = *m == 0 || (m & !x0) == 0 || (m & !x1) == 0;
                if !ok {
                    continue 'coloring;
                }
            }
            for m in b.keys() {
                let ok = *m == 0 || (m & !x1) == 0 || (m & !x2) == 0;
                if !ok {
                    continue 'coloring;
                }
            }
            // Nonconstant X1 parts must cancel between A and B.
            let a1 = restrict(&a, |m| m != 0 && (m & !x1) == 0);
            let b1 = restrict(&b, |m| m != 0 && (m & !x1) == 0);
            let cancels = a1.len() == b1.len()
                && a1.iter().all(|(m, c)| b1.get(m).map(|d| *c == -d.clone()).unwrap_or(false));
            if !cancels {
                continue 'coloring;
            }
            let f0 = restrict(&a, |m| m != 0 && (m & !x0) == 0);
            let f1 = b1;
            let f2 = restrict(&b, |m| m != 0 && (m & !x2) == 0);
            if oracle_perfect_recall(&f0) && oracle_perfect_recall(&f1) && oracle_perfect_recall(&f2) {
                return true;
            }
        }
    }
    false
}
