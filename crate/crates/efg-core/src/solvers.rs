//! Exact pure-strategy solvers, backward induction for perfect-information
//! one-player games, and a numeric multi-start estimator for behavioural
//! maxmin values.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};

use crate::game::{
    classify_recall, enumerate_pure, fix_player, fix_player_pure, pure_strategy_count,
    BehaviouralStrategy, EdgeLabel, GameError, GameTree, NodeId, NodeKind, Player, PureStrategy,
    RecallClass,
};
use crate::{rat, Rational};

/// Errors raised by the solvers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveError {
    /// A one-player solver saw control nodes of both players.
    TwoActivePlayers,
    /// Backward induction needs singleton infosets.
    NotPerfectInformation { infoset: String },
    /// The behavioural estimator needs Min free of absent-mindedness so
    /// the inner minimization reduces to pure responses.
    InnerNotPure,
    Game(GameError),
}

impl From<GameError> for SolveError {
    fn from(e: GameError) -> Self {
        SolveError::Game(e)
    }
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::TwoActivePlayers => write!(f, "two active players; this solver needs one"),
            SolveError::NotPerfectInformation { infoset } => {
                write!(f, "not perfect information: infoset {infoset:?} has several members")
            }
            SolveError::InnerNotPure => {
                write!(f, "inner minimization not pure-reducible: Min is absent-minded")
            }
            SolveError::Game(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SolveError {}

/// Computed value: exact rational for pure-strategy solvers, floating
/// point with a stated tolerance for the behavioural estimator.
#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Exact(Rational),
    Approx { value: f64, tol: f64 },
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Approx { value, .. } => *value,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Work counters for a solver run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SolveStats {
    pub nodes_visited: u64,
    /// Complete strategy candidates (tuples, profiles, or evaluations).
    pub candidates: u64,
}

/// A solver outcome: the value, strategy witnesses that reproduce it, a
/// method tag, and work statistics.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub value: Value,
    pub max_pure: Option<PureStrategy>,
    pub min_pure: Option<PureStrategy>,
    /// Behavioural witness of the estimator: infoset -> per-move
    /// probabilities aligned with the infoset move list.
    pub max_behavioural: Option<BTreeMap<String, Vec<f64>>>,
    pub method: &'static str,
    pub stats: SolveStats,
}

impl SolveResult {
    fn exact(value: Rational, method: &'static str) -> Self {
        SolveResult {
            value: Value::Exact(value),
            max_pure: None,
            min_pure: None,
            max_behavioural: None,
            method,
            stats: SolveStats::default(),
        }
    }
}

/// Partition of the leaves such that leaves reached by different moves of
/// a common chance node land in different bags. Built by first-fit over
/// leaves in depth-first order; the bag count equals the chance degree.
#[derive(Clone, Debug)]
pub struct BagPartition {
    pub bags: Vec<Vec<NodeId>>,
}

/// The first-fit bag partition: each leaf goes into the first bag where no
/// occupant shares a longest common path prefix ending at a chance node.
pub fn bag_partition(game: &GameTree) -> BagPartition {
    let leaves = game.leaves();
    let paths: BTreeMap<NodeId, Vec<NodeId>> = leaves.iter().map(|&l| (l, game.path_to(l))).collect();
    let lca_is_chance = |a: NodeId, b: NodeId| -> bool {
        let (pa, pb) = (&paths[&a], &paths[&b]);
        let mut lca = pa[0];
        for (x, y) in pa.iter().zip(pb.iter()) {
            if x != y {
                break;
            }
            lca = *x;
        }
        matches!(game.node(lca).kind, NodeKind::Chance)
    };
    let mut bags: Vec<Vec<NodeId>> = Vec::new();
    for &leaf in &leaves {
        let slot = bags
            .iter()
            .position(|bag| bag.iter().all(|&v| !lca_is_chance(leaf, v)));
        match slot {
            Some(i) => bags[i].push(leaf),
            None => bags.push(vec![leaf]),
        }
    }
    BagPartition { bags }
}

/// The single player controlling the game, if any. Errors when both
/// players own nodes.
fn single_player(game: &GameTree) -> Result<Option<Player>, SolveError> {
    match (game.has_player(Player::Max), game.has_player(Player::Min)) {
        (true, true) => Err(SolveError::TwoActivePlayers),
        (true, false) => Ok(Some(Player::Max)),
        (false, true) => Ok(Some(Player::Min)),
        (false, false) => Ok(None),
    }
}

/// Expected utility of a game without control nodes.
fn chance_expectation(game: &GameTree) -> Rational {
    let mut total = Rational::zero();
    let mut stack = vec![(game.root(), rat(1))];
    while let Some((id, reach)) = stack.pop() {
        match &game.node(id).kind {
            NodeKind::Leaf { utility } => total += utility * &reach,
            _ => {
                for (edge, child) in game.edges(id) {
                    if let EdgeLabel::Chance(p) = edge {
                        stack.push((child, &reach * p));
                    }
                }
            }
        }
    }
    total
}

struct LeafInfo {
    weight: Rational,
    constraints: Vec<(String, String)>,
    path_nodes: BTreeSet<NodeId>,
    chance_ancestors: Vec<NodeId>,
}

struct TupleSearch<'a> {
    game: &'a GameTree,
    player: Player,
    maximize: bool,
    bags: &'a [Vec<NodeId>],
    info: &'a BTreeMap<NodeId, LeafInfo>,
    best: Option<(Rational, PureStrategy)>,
    candidates: u64,
}

impl TupleSearch<'_> {
    fn evaluate(&mut self, chosen: &[NodeId], assignment: &BTreeMap<String, String>) {
        if chosen.is_empty() {
            return;
        }
        // Every chance node above a chosen leaf must send a chosen leaf
        // down each of its moves.
        let ancestors: BTreeSet<NodeId> = chosen
            .iter()
            .flat_map(|l| self.info[l].chance_ancestors.iter().copied())
            .collect();
        let covered = ancestors.into_iter().all(|c| {
            self.game
                .node(c)
                .children
                .iter()
                .all(|child| chosen.iter().any(|l| self.info[l].path_nodes.contains(child)))
        });
        if !covered {
            return;
        }
        self.candidates += 1;
        let value: Rational = chosen.iter().map(|l| self.info[l].weight.clone()).sum();
        let mut strategy = assignment.clone();
        for (id, infoset) in self.game.infosets() {
            if infoset.player == self.player && !strategy.contains_key(id) {
                strategy.insert(id.clone(), infoset.moves[0].clone());
            }
        }
        let better = match &self.best {
            None => true,
            Some((v, s)) => {
                (if self.maximize { value > *v } else { value < *v }) || (value == *v && strategy < *s)
            }
        };
        if better {
            self.best = Some((value, strategy));
        }
    }

    fn descend(&mut self, bag: usize, chosen: &mut Vec<NodeId>, assignment: &mut BTreeMap<String, String>) {
        if bag == self.bags.len() {
            self.evaluate(chosen, assignment);
            return;
        }
        // Skip this bag entirely.
        self.descend(bag + 1, chosen, assignment);
        'leaves: for &leaf in &self.bags[bag] {
            let mut added: Vec<String> = Vec::new();
            for (infoset, action) in &self.info[&leaf].constraints {
                match assignment.get(infoset) {
                    Some(a) if a == action => {}
                    Some(_) => {
                        for k in added {
                            assignment.remove(&k);
                        }
                        continue 'leaves;
                    }
                    None => {
                        assignment.insert(infoset.clone(), action.clone());
                        added.push(infoset.clone());
                    }
                }
            }
            chosen.push(leaf);
            self.descend(bag + 1, chosen, assignment);
            chosen.pop();
            for k in added {
                assignment.remove(&k);
            }
        }
    }
}

/// Exact optimum over pure strategies of a one-player game via the bag
/// partition: enumerates consistent leaf tuples — at most one leaf per
/// bag, no conflicting actions at shared infosets, every chance ancestor
/// covered on all its moves — and optimizes the chance-weighted utility
/// sum. The candidate count stays within `n^K` for chance degree `K`.
pub fn solve_pure_one_player(game: &GameTree) -> Result<SolveResult, SolveError> {
    let player = match single_player(game)? {
        Some(p) => p,
        None => {
            let mut r = SolveResult::exact(chance_expectation(game), "bag-enumeration");
            r.stats.nodes_visited = game.node_count() as u64;
            r.stats.candidates = 1;
            r.max_pure = Some(PureStrategy::new());
            r.min_pure = Some(PureStrategy::new());
            return Ok(r);
        }
    };
    let maximize = player == Player::Max;
    let bags = bag_partition(game).bags;

    let mut info: BTreeMap<NodeId, LeafInfo> = BTreeMap::new();
    for &leaf in &game.leaves() {
        let path = game.path_to(leaf);
        let mut weight = game.utility(leaf).expect("leaf").clone();
        let mut constraints = Vec::new();
        let mut chance_ancestors = Vec::new();
        for pair in path.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            match (&game.node(u).kind, game.node(v).incoming.as_ref()) {
                (NodeKind::Chance, Some(EdgeLabel::Chance(p))) => {
                    weight *= p;
                    chance_ancestors.push(u);
                }
                (NodeKind::Control { infoset, .. }, Some(EdgeLabel::Action(a))) => {
                    constraints.push((infoset.clone(), a.clone()));
                }
                _ => {}
            }
        }
        info.insert(leaf, LeafInfo { weight, constraints, path_nodes: path.into_iter().collect(), chance_ancestors });
    }

    let mut search = TupleSearch {
        game,
        player,
        maximize,
        bags: &bags,
        info: &info,
        best: None,
        candidates: 0,
    };
    search.descend(0, &mut Vec::new(), &mut BTreeMap::new());
    let (value, strategy) = search.best.expect("some pure strategy reaches a leaf");
    let mut result = SolveResult::exact(value, "bag-enumeration");
    result.stats.nodes_visited = game.node_count() as u64;
    result.stats.candidates = search.candidates;
    if maximize {
        result.max_pure = Some(strategy);
        result.min_pure = Some(PureStrategy::new());
    } else {
        result.min_pure = Some(strategy);
        result.max_pure = Some(PureStrategy::new());
    }
    Ok(result)
}

fn pure_outer_inner(game: &GameTree, outer: Player) -> Result<SolveResult, SolveError> {
    let maximize = outer == Player::Max;
    let mut best: Option<(Rational, PureStrategy, PureStrategy)> = None;
    let mut candidates = 0u64;
    for outer_strategy in enumerate_pure(game, outer) {
        let fixed = fix_player_pure(game, outer, &outer_strategy)?;
        let inner = solve_pure_one_player(&fixed)?;
        candidates += 1 + inner.stats.candidates;
        let value = match inner.value {
            Value::Exact(q) => q,
            Value::Approx { .. } => unreachable!("pure solver is exact"),
        };
        let inner_strategy = if maximize { inner.min_pure } else { inner.max_pure }
            .unwrap_or_default();
        let better = match &best {
            None => true,
            Some((v, s, _)) => {
                (if maximize { value > *v } else { value < *v }) || (value == *v && outer_strategy < *s)
            }
        };
        if better {
            best = Some((value, outer_strategy, inner_strategy));
        }
    }
    let (value, outer_strategy, inner_strategy) = best.expect("outer player has at least one strategy");
    // The inner witness only covers infosets that survive fixing the
    // outer strategy; complete it so replay through the full game works.
    let mut inner_strategy = inner_strategy;
    for (id, infoset) in game.infosets() {
        if infoset.player == outer.opponent() && !inner_strategy.contains_key(id) {
            inner_strategy.insert(id.clone(), infoset.moves[0].clone());
        }
    }
    let mut result = SolveResult::exact(value, if maximize { "pure-maxmin" } else { "pure-minmax" });
    result.stats.nodes_visited = game.node_count() as u64;
    result.stats.candidates = candidates;
    let (max_s, min_s) = if maximize { (outer_strategy, inner_strategy) } else { (inner_strategy, outer_strategy) };
    result.max_pure = Some(max_s);
    result.min_pure = Some(min_s);
    Ok(result)
}

/// Exact maxmin over pure strategies: for every pure strategy of Max, fix
/// it (Max's nodes become forced chance moves) and let Min respond through
/// the one-player bag solver; the maximum of those minima is returned with
/// a lexicographically least witness.
pub fn solve_pure_maxmin(game: &GameTree) -> Result<SolveResult, SolveError> {
    pure_outer_inner(game, Player::Max)
}

/// Exact minmax over pure strategies: Min commits first, Max responds.
pub fn solve_pure_minmax(game: &GameTree) -> Result<SolveResult, SolveError> {
    pure_outer_inner(game, Player::Min)
}

/// Bottom-up exact value of a perfect-information one-player game: leaves
/// give their utility, chance nodes average, control nodes pick the best
/// child (ties broken by lexicographically least action). Linear time.
pub fn solve_backward_induction(game: &GameTree) -> Result<SolveResult, SolveError> {
    let player = single_player(game)?;
    if let Some(p) = player {
        for (id, infoset) in game.infosets() {
            if infoset.player == p && infoset.members.len() != 1 {
                return Err(SolveError::NotPerfectInformation { infoset: id.clone() });
            }
        }
    }
    let maximize = player != Some(Player::Min);
    fn value_of(
        game: &GameTree,
        id: NodeId,
        maximize: bool,
        strategy: &mut PureStrategy,
    ) -> Rational {
        let node = game.node(id);
        match &node.kind {
            NodeKind::Leaf { utility } => utility.clone(),
            NodeKind::Chance => {
                let mut total = Rational::zero();
                for (edge, child) in game.edges(id) {
                    if let EdgeLabel::Chance(p) = edge {
                        total += value_of(game, child, maximize, strategy) * p;
                    }
                }
                total
            }
            NodeKind::Control { infoset, .. } => {
                let mut best: Option<(Rational, String)> = None;
                for (edge, child) in game.edges(id) {
                    if let EdgeLabel::Action(a) = edge {
                        let v = value_of(game, child, maximize, strategy);
                        let better = match &best {
                            None => true,
                            Some((bv, ba)) => {
                                (if maximize { v > *bv } else { v < *bv }) || (v == *bv && *a < *ba)
                            }
                        };
                        if better {
                            best = Some((v, a.clone()));
                        }
                    }
                }
                let (v, a) = best.expect("control node has children");
                strategy.insert(infoset.clone(), a);
                v
            }
        }
    }
    let mut strategy = PureStrategy::new();
    let value = value_of(game, game.root(), maximize, &mut strategy);
    let mut result = SolveResult::exact(value, "backward-induction");
    result.stats.nodes_visited = game.node_count() as u64;
    result.stats.candidates = 1;
    match player {
        Some(Player::Min) => result.min_pure = Some(strategy),
        _ => result.max_pure = Some(strategy),
    }
    Ok(result)
}

// ---------------------------------------------------------------------
// Behavioural maxmin estimation.

type Point = Vec<Vec<f64>>;

struct Estimator<'a> {
    game: &'a GameTree,
    /// Max infosets in canonical order with their move lists.
    layout: Vec<(String, Vec<String>)>,
    /// Pure Min responses, pre-collected when few; None means the inner
    /// minimization goes through the exact one-player solver.
    min_responses: Option<Vec<PureStrategy>>,
    evals: u64,
}

/// Direct enumeration threshold for Min's pure responses.
const MIN_RESPONSE_LIMIT: u128 = 4096;

impl Estimator<'_> {
    fn payoff_f64(&self, point: &Point, min_pure: &PureStrategy) -> f64 {
        let index: BTreeMap<&str, usize> = self
            .layout
            .iter()
            .enumerate()
            .map(|(i, (id, _))| (id.as_str(), i))
            .collect();
        let mut total = 0.0;
        let mut stack: Vec<(NodeId, f64)> = vec![(self.game.root(), 1.0)];
        while let Some((id, reach)) = stack.pop() {
            if reach == 0.0 {
                continue;
            }
            let node = self.game.node(id);
            match &node.kind {
                NodeKind::Leaf { utility } => total += reach * utility.to_f64().unwrap_or(f64::NAN),
                NodeKind::Chance => {
                    for (edge, child) in self.game.edges(id) {
                        if let EdgeLabel::Chance(p) = edge {
                            stack.push((child, reach * p.to_f64().unwrap_or(f64::NAN)));
                        }
                    }
                }
                NodeKind::Control { player: Player::Max, infoset } => {
                    let slot = index[infoset.as_str()];
                    let moves = &self.layout[slot].1;
                    for (edge, child) in self.game.edges(id) {
                        if let EdgeLabel::Action(a) = edge {
                            let m = moves.iter().position(|x| x == a).expect("move listed");
                            stack.push((child, reach * point[slot][m]));
                        }
                    }
                }
                NodeKind::Control { player: Player::Min, infoset } => {
                    let pick = &min_pure[infoset];
                    for (edge, child) in self.game.edges(id) {
                        if let EdgeLabel::Action(a) = edge {
                            if a == pick {
                                stack.push((child, reach));
                            }
                        }
                    }
                }
            }
        }
        total
    }

    /// Exact min over Min's pure responses at a fixed Max point, and the
    /// best response found.
    fn evaluate(&mut self, point: &Point) -> (f64, PureStrategy) {
        self.evals += 1;
        match &self.min_responses {
            Some(list) => {
                let mut best = f64::INFINITY;
                let mut who = PureStrategy::new();
                for response in list {
                    let v = self.payoff_f64(point, response);
                    if v < best {
                        best = v;
                        who = response.clone();
                    }
                }
                if list.is_empty() {
                    best = self.payoff_f64(point, &PureStrategy::new());
                }
                (best, who)
            }
            None => {
                // Too many responses to enumerate: fix Max exactly and run
                // the bag solver on the residual one-player game.
                let mut sigma = BehaviouralStrategy::new();
                for (slot, (id, moves)) in self.layout.iter().enumerate() {
                    for (m, action) in moves.iter().enumerate() {
                        let q = Rational::from_float(point[slot][m]).unwrap_or_else(Rational::zero);
                        sigma.set(id, action, q);
                    }
                }
                // Normalize exactly: adjust the first move so the sum is 1.
                for (id, moves) in &self.layout {
                    let total: Rational = moves
                        .iter()
                        .map(|a| sigma.prob(id, a).cloned().unwrap_or_else(Rational::zero))
                        .sum();
                    let first = sigma.prob(id, &moves[0]).cloned().unwrap_or_else(Rational::zero);
                    sigma.set(id, &moves[0], first + (rat(1) - total));
                }
                let fixed = fix_player(self.game, Player::Max, &sigma).expect("complete strategy");
                let inner = solve_pure_one_player(&fixed).expect("one-player residual");
                let v = inner.value.as_f64();
                (v, inner.min_pure.unwrap_or_default())
            }
        }
    }
}

fn shifted(dist: &[f64], m: usize, delta: f64) -> Option<Vec<f64>> {
    let mut v = dist.to_vec();
    let new = (v[m] + delta).clamp(0.0, 1.0);
    if (new - v[m]).abs() < 1e-15 {
        return None;
    }
    let others = 1.0 - v[m];
    v[m] = new;
    let k = v.len();
    if others <= 1e-15 {
        let share = (1.0 - new) / (k - 1) as f64;
        for (j, x) in v.iter_mut().enumerate() {
            if j != m {
                *x = share;
            }
        }
    } else {
        let scale = (1.0 - new) / others;
        for (j, x) in v.iter_mut().enumerate() {
            if j != m {
                *x *= scale;
            }
        }
    }
    Some(v)
}

fn uniform01(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Estimates the behavioural maxmin by multi-start projected pattern
/// search over Max's behavioural hypercube. The inner evaluation is the
/// exact minimum over Min's pure responses, which is the best response
/// whenever Min is not absent-minded. Probes move one coordinate or a
/// coordinate pair, with the step halving from 0.25 down to `tol/10`.
/// Runs `starts` seeded random restarts plus the uniform centroid start;
/// the result is deterministic for a fixed seed.
pub fn estimate_maxmin_beh(
    game: &GameTree,
    starts: u32,
    tol: f64,
    seed: u64,
) -> Result<SolveResult, SolveError> {
    if game.has_player(Player::Min) {
        if let RecallClass::AbsentMinded { .. } = classify_recall(game, Player::Min) {
            return Err(SolveError::InnerNotPure);
        }
    }
    let layout: Vec<(String, Vec<String>)> = game
        .infosets()
        .iter()
        .filter(|(_, i)| i.player == Player::Max)
        .map(|(id, i)| (id.clone(), i.moves.clone()))
        .collect();
    let min_responses = if pure_strategy_count(game, Player::Min) <= MIN_RESPONSE_LIMIT {
        Some(enumerate_pure(game, Player::Min).collect::<Vec<_>>())
    } else {
        None
    };
    let mut estimator = Estimator { game, layout, min_responses, evals: 0 };

    let centroid: Point = estimator
        .layout
        .iter()
        .map(|(_, moves)| vec![1.0 / moves.len() as f64; moves.len()])
        .collect();

    if estimator.layout.is_empty() {
        // Nothing to optimize: a single evaluation settles it.
        let (value, response) = estimator.evaluate(&centroid);
        let mut result = SolveResult {
            value: Value::Approx { value, tol },
            max_pure: None,
            min_pure: Some(response),
            max_behavioural: Some(BTreeMap::new()),
            method: "pattern-search",
            stats: SolveStats { nodes_visited: game.node_count() as u64, candidates: estimator.evals },
        };
        result.max_pure = None;
        return Ok(result);
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut start_points: Vec<Point> = vec![centroid];
    for _ in 0..starts {
        let p: Point = estimator
            .layout
            .iter()
            .map(|(_, moves)| {
                let raw: Vec<f64> = moves.iter().map(|_| uniform01(&mut rng) + 1e-9).collect();
                let sum: f64 = raw.iter().sum();
                raw.into_iter().map(|x| x / sum).collect()
            })
            .collect();
        start_points.push(p);
    }

    // All (infoset slot, move index) coordinates.
    let coords: Vec<(usize, usize)> = estimator
        .layout
        .iter()
        .enumerate()
        .flat_map(|(slot, (_, moves))| (0..moves.len()).map(move |m| (slot, m)))
        .collect();

    let min_step = (tol / 10.0).max(1e-12);
    let mut best: Option<(f64, Point, PureStrategy)> = None;
    for start in start_points {
        let mut point = start;
        let (mut value, mut response) = estimator.evaluate(&point);
        let mut step = 0.25;
        while step >= min_step {
            // One sweep: best single-coordinate or coordinate-pair move.
            let mut improved: Option<(f64, Point, PureStrategy)> = None;
            let consider = |est: &mut Estimator, cand: Point, cur: f64, acc: &mut Option<(f64, Point, PureStrategy)>| {
                let (v, r) = est.evaluate(&cand);
                if v > cur + 1e-15 && acc.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
                    *acc = Some((v, cand, r));
                }
            };
            for &(slot, m) in &coords {
                for sign in [1.0, -1.0] {
                    if let Some(dist) = shifted(&point[slot], m, sign * step) {
                        let mut cand = point.clone();
                        cand[slot] = dist;
                        consider(&mut estimator, cand, value, &mut improved);
                    }
                }
            }
            for i in 0..coords.len() {
                for j in i + 1..coords.len() {
                    let (s1, m1) = coords[i];
                    let (s2, m2) = coords[j];
                    if s1 == s2 {
                        continue;
                    }
                    for (sign1, sign2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        let d1 = match shifted(&point[s1], m1, sign1 * step) {
                            Some(d) => d,
                            None => continue,
                        };
                        let d2 = match shifted(&point[s2], m2, sign2 * step) {
                            Some(d) => d,
                            None => continue,
                        };
                        let mut cand = point.clone();
                        cand[s1] = d1;
                        cand[s2] = d2;
                        consider(&mut estimator, cand, value, &mut improved);
                    }
                }
            }
            match improved {
                Some((v, p, r)) => {
                    value = v;
                    point = p;
                    response = r;
                }
                None => step /= 2.0,
            }
        }
        if best.as_ref().is_none_or(|(bv, _, _)| value > *bv) {
            best = Some((value, point, response));
        }
    }

    let (value, point, response) = best.expect("at least the centroid start ran");
    let witness: BTreeMap<String, Vec<f64>> = estimator
        .layout
        .iter()
        .zip(point.iter())
        .map(|((id, _), dist)| (id.clone(), dist.clone()))
        .collect();
    Ok(SolveResult {
        value: Value::Approx { value, tol },
        max_pure: None,
        min_pure: Some(response),
        max_behavioural: Some(witness),
        method: "pattern-search",
        stats: SolveStats { nodes_visited: game.node_count() as u64, candidates: estimator.evals },
    })
}
