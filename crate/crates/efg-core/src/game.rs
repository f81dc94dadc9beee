//! The extensive-form game data model: trees with control, chance and leaf
//! nodes, information sets, validation, player histories, recall
//! classification, chance degree, and exact expected payoff.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::{rat, Rational};

/// The two strategic players of a zero-sum game. Chance is not a player.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Max => write!(f, "Max"),
            Player::Min => write!(f, "Min"),
        }
    }
}

/// Index of a node inside its [`GameTree`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// What a node is: a decision point of a player, a chance move, or a
/// terminal node carrying a utility.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NodeKind {
    Control { player: Player, infoset: String },
    Chance,
    Leaf { utility: Rational },
}

/// Label on the edge entering a node: an action when the parent is a
/// control node, a probability when the parent is a chance node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EdgeLabel {
    Action(String),
    Chance(Rational),
}

impl From<&str> for EdgeLabel {
    fn from(a: &str) -> Self {
        EdgeLabel::Action(a.to_owned())
    }
}

impl From<String> for EdgeLabel {
    fn from(a: String) -> Self {
        EdgeLabel::Action(a)
    }
}

impl From<Rational> for EdgeLabel {
    fn from(p: Rational) -> Self {
        EdgeLabel::Chance(p)
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub kind: NodeKind,
    pub parent: Option<NodeId>,
    /// Label of the edge from `parent`; `None` exactly at the root.
    pub incoming: Option<EdgeLabel>,
    pub children: Vec<NodeId>,
}

/// An information set: the owning player, the ordered move list shared by
/// its members, and the member nodes in declaration order.
#[derive(Clone, Debug)]
pub struct Infoset {
    pub player: Player,
    pub moves: Vec<String>,
    pub members: Vec<NodeId>,
}

/// A finite rooted game tree. Immutable after construction; all operations
/// are pure functions, so concurrent read-only use is safe.
#[derive(Clone, Debug)]
pub struct GameTree {
    nodes: Vec<Node>,
    root: NodeId,
    infosets: BTreeMap<String, Infoset>,
}

/// Incremental constructor for [`GameTree`]. The builder is permissive:
/// structurally broken games (bad probability sums, duplicate actions,
/// inconsistent infosets) can be built and are reported by
/// [`validate`], not rejected here.
pub struct GameBuilder {
    nodes: Vec<Node>,
    root: Option<NodeId>,
}

impl GameBuilder {
    pub fn new() -> Self {
        GameBuilder { nodes: Vec::new(), root: None }
    }

    fn push(&mut self, kind: NodeKind, parent: Option<NodeId>, incoming: Option<EdgeLabel>) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node { kind, parent, incoming, children: Vec::new() });
        if let Some(p) = parent {
            self.nodes[p.0].children.push(id);
        } else {
            assert!(self.root.is_none(), "root already set");
            self.root = Some(id);
        }
        id
    }

    pub fn root_control(&mut self, player: Player, infoset: &str) -> NodeId {
        self.push(NodeKind::Control { player, infoset: infoset.to_owned() }, None, None)
    }

    pub fn root_chance(&mut self) -> NodeId {
        self.push(NodeKind::Chance, None, None)
    }

    pub fn root_leaf(&mut self, utility: Rational) -> NodeId {
        self.push(NodeKind::Leaf { utility }, None, None)
    }

    pub fn control(&mut self, parent: NodeId, edge: impl Into<EdgeLabel>, player: Player, infoset: &str) -> NodeId {
        self.push(
            NodeKind::Control { player, infoset: infoset.to_owned() },
            Some(parent),
            Some(edge.into()),
        )
    }

    pub fn chance(&mut self, parent: NodeId, edge: impl Into<EdgeLabel>) -> NodeId {
        self.push(NodeKind::Chance, Some(parent), Some(edge.into()))
    }

    pub fn leaf(&mut self, parent: NodeId, edge: impl Into<EdgeLabel>, utility: Rational) -> NodeId {
        self.push(NodeKind::Leaf { utility }, Some(parent), Some(edge.into()))
    }

    /// Copies `subtree` below `parent`, hanging its root on `edge`.
    /// Returns the id of the copied root.
    pub fn graft(&mut self, parent: NodeId, edge: impl Into<EdgeLabel>, subtree: &GameTree) -> NodeId {
        let mut map: BTreeMap<NodeId, NodeId> = BTreeMap::new();
        let mut edge = Some(edge.into());
        // Preorder copy keeps child declaration order.
        for old in subtree.preorder() {
            let node = subtree.node(old);
            let (parent_new, incoming) = match node.parent {
                None => (parent, edge.take().expect("root visited once")),
                Some(p) => (map[&p], node.incoming.clone().expect("non-root has incoming edge")),
            };
            let new = self.push(node.kind.clone(), Some(parent_new), Some(incoming));
            map.insert(old, new);
        }
        map[&subtree.root()]
    }

    /// Finishes the tree. Infosets are collected from control nodes: the
    /// first member of each infoset declares the owning player and the
    /// ordered move list.
    pub fn finish(self) -> GameTree {
        let root = self.root.expect("empty game");
        let mut infosets: BTreeMap<String, Infoset> = BTreeMap::new();
        for (idx, node) in self.nodes.iter().enumerate() {
            if let NodeKind::Control { player, infoset } = &node.kind {
                let moves: Vec<String> = node
                    .children
                    .iter()
                    .filter_map(|c| match &self.nodes[c.0].incoming {
                        Some(EdgeLabel::Action(a)) => Some(a.clone()),
                        _ => None,
                    })
                    .collect();
                infosets
                    .entry(infoset.clone())
                    .or_insert_with(|| Infoset { player: *player, moves, members: Vec::new() })
                    .members
                    .push(NodeId(idx));
            }
        }
        GameTree { nodes: self.nodes, root, infosets }
    }
}

impl Default for GameBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl GameTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn infosets(&self) -> &BTreeMap<String, Infoset> {
        &self.infosets
    }

    pub fn infoset(&self, id: &str) -> Option<&Infoset> {
        self.infosets.get(id)
    }

    /// Infoset ids of one player, in canonical (lexicographic) order.
    pub fn player_infosets(&self, player: Player) -> Vec<&str> {
        self.infosets
            .iter()
            .filter(|(_, i)| i.player == player)
            .map(|(id, _)| id.as_str())
            .collect()
    }

    pub fn has_player(&self, player: Player) -> bool {
        self.infosets.values().any(|i| i.player == player)
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        matches!(self.node(id).kind, NodeKind::Leaf { .. })
    }

    pub fn utility(&self, id: NodeId) -> Option<&Rational> {
        match &self.node(id).kind {
            NodeKind::Leaf { utility } => Some(utility),
            _ => None,
        }
    }

    /// Children of `id` together with the labels of the connecting edges.
    pub fn edges(&self, id: NodeId) -> impl Iterator<Item = (&EdgeLabel, NodeId)> {
        self.node(id).children.iter().map(move |c| {
            (
                self.node(*c).incoming.as_ref().expect("non-root has incoming edge"),
                *c,
            )
        })
    }

    /// Nodes in preorder, children in declaration order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            out.push(id);
            for c in self.node(id).children.iter().rev() {
                stack.push(*c);
            }
        }
        out
    }

    /// Leaves in depth-first left-to-right order.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.preorder().into_iter().filter(|id| self.is_leaf(*id)).collect()
    }

    /// Path from the root to `id`, both endpoints included.
    pub fn path_to(&self, id: NodeId) -> Vec<NodeId> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.node(cur).parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Returns a copy with every leaf utility multiplied by `factor`.
    pub fn scale_utilities(&self, factor: &Rational) -> GameTree {
        let mut out = self.clone();
        for node in &mut out.nodes {
            if let NodeKind::Leaf { utility } = &mut node.kind {
                *utility = &*utility * factor;
            }
        }
        out
    }
}

/// Errors raised by game operations with hard preconditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GameError {
    /// `history` was asked about a leaf or chance node.
    NoHistoryOwner(NodeId),
    /// A strategy does not cover some infoset of the player.
    IncompleteStrategy { player: Player, infoset: String },
    /// A strategy assigns probabilities that are negative or do not sum to 1.
    MalformedStrategy { infoset: String },
    /// An operation that needs a single active player saw two.
    TwoActivePlayers,
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::NoHistoryOwner(n) => write!(f, "node {n} has no history owner (leaf or chance node)"),
            GameError::IncompleteStrategy { player, infoset } => {
                write!(f, "incomplete strategy: {player} infoset {infoset:?} not covered")
            }
            GameError::MalformedStrategy { infoset } => {
                write!(f, "malformed strategy at infoset {infoset:?}: probabilities must be nonnegative and sum to 1")
            }
            GameError::TwoActivePlayers => write!(f, "fix one side first: game has two active players"),
        }
    }
}

impl core::error::Error for GameError {}

/// A structural invariant violated by a game tree, with the nodes involved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Chance probabilities out of `node` do not sum to exactly 1.
    ChanceProbSum { node: NodeId, sum: Rational },
    /// A chance edge carries a probability that is zero or negative.
    NonPositiveProb { node: NodeId, child: NodeId },
    /// Two outgoing edges of a control node carry the same action.
    DuplicateAction { node: NodeId, action: String },
    /// An edge label kind does not match the parent node kind, or a leaf
    /// has children.
    EdgeKindMismatch { node: NodeId, child: NodeId },
    /// A non-leaf node has no children.
    NoChildren { node: NodeId },
    /// A member of an infoset is controlled by a different player than the
    /// infoset owner.
    InfosetPlayerMismatch { infoset: String, node: NodeId },
    /// A member of an infoset offers a different move set than the infoset.
    InfosetMoveMismatch { infoset: String, node: NodeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ChanceProbSum { node, sum } => {
                write!(f, "chance probabilities sum != 1 at {node} (sum {sum})")
            }
            Violation::NonPositiveProb { node, child } => {
                write!(f, "non-positive chance probability on edge {node} -> {child}")
            }
            Violation::DuplicateAction { node, action } => {
                write!(f, "duplicate action {action:?} out of {node}")
            }
            Violation::EdgeKindMismatch { node, child } => {
                write!(f, "edge label kind does not match parent kind on {node} -> {child}")
            }
            Violation::NoChildren { node } => write!(f, "non-leaf node {node} has no children"),
            Violation::InfosetPlayerMismatch { infoset, node } => {
                write!(f, "infoset {infoset:?}: member {node} owned by a different player")
            }
            Violation::InfosetMoveMismatch { infoset, node } => {
                write!(f, "infoset {infoset:?}: member {node} has a different move set")
            }
        }
    }
}

/// Result of [`validate`]: empty iff every structural invariant holds.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant of the game tree and reports all
/// violations. The tree property itself (single parent, no cycles, no edge
/// into the root) is guaranteed by construction and needs no check.
pub fn validate(game: &GameTree) -> ValidationReport {
    let mut violations = Vec::new();
    for id in game.preorder() {
        let node = game.node(id);
        match &node.kind {
            NodeKind::Leaf { .. } => {
                for c in &node.children {
                    violations.push(Violation::EdgeKindMismatch { node: id, child: *c });
                }
            }
            NodeKind::Chance => {
                if node.children.is_empty() {
                    violations.push(Violation::NoChildren { node: id });
                    continue;
                }
                let mut sum = Rational::zero();
                let mut all_probs = true;
                for (edge, child) in game.edges(id) {
                    match edge {
                        EdgeLabel::Chance(p) => {
                            if !p.is_positive() {
                                violations.push(Violation::NonPositiveProb { node: id, child });
                            }
                            sum += p;
                        }
                        EdgeLabel::Action(_) => {
                            violations.push(Violation::EdgeKindMismatch { node: id, child });
                            all_probs = false;
                        }
                    }
                }
                if all_probs && !sum.is_one() {
                    violations.push(Violation::ChanceProbSum { node: id, sum });
                }
            }
            NodeKind::Control { player, infoset } => {
                if node.children.is_empty() {
                    violations.push(Violation::NoChildren { node: id });
                }
                let mut seen: BTreeSet<&str> = BTreeSet::new();
                let mut moves: BTreeSet<&str> = BTreeSet::new();
                for (edge, child) in game.edges(id) {
                    match edge {
                        EdgeLabel::Action(a) => {
                            if !seen.insert(a.as_str()) {
                                violations.push(Violation::DuplicateAction { node: id, action: a.clone() });
                            }
                            moves.insert(a.as_str());
                        }
                        EdgeLabel::Chance(_) => {
                            violations.push(Violation::EdgeKindMismatch { node: id, child });
                        }
                    }
                }
                let info = game.infoset(infoset).expect("infoset collected at build time");
                if info.player != *player {
                    violations.push(Violation::InfosetPlayerMismatch { infoset: infoset.clone(), node: id });
                }
                let declared: BTreeSet<&str> = info.moves.iter().map(|m| m.as_str()).collect();
                if declared != moves {
                    violations.push(Violation::InfosetMoveMismatch { infoset: infoset.clone(), node: id });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// The sequence of signals and own actions a player saw along the path to
/// one of her nodes; ends with the node's own infoset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct History {
    /// Earlier (infoset, action taken) steps of the owning player.
    pub steps: Vec<(String, String)>,
    /// Infoset of the queried node.
    pub current: String,
}

impl History {
    /// The history flattened to `signal, action, signal, ..., signal`.
    pub fn linearize(&self) -> Vec<&str> {
        let mut out = Vec::with_capacity(2 * self.steps.len() + 1);
        for (signal, action) in &self.steps {
            out.push(signal.as_str());
            out.push(action.as_str());
        }
        out.push(self.current.as_str());
        out
    }
}

impl fmt::Display for History {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (signal, action) in &self.steps {
            write!(f, "{{{signal}}} {action} ")?;
        }
        write!(f, "{{{}}}", self.current)
    }
}

/// The player-`i` subsequence of signals and actions along the unique root
/// path of a control node, ending with the node's own infoset.
pub fn history(game: &GameTree, node: NodeId) -> Result<History, GameError> {
    let owner = match &game.node(node).kind {
        NodeKind::Control { player, .. } => *player,
        _ => return Err(GameError::NoHistoryOwner(node)),
    };
    let path = game.path_to(node);
    let mut steps = Vec::new();
    for pair in path.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        if let NodeKind::Control { player, infoset } = &game.node(u).kind {
            if *player == owner {
                let action = match game.node(v).incoming.as_ref() {
                    Some(EdgeLabel::Action(a)) => a.clone(),
                    _ => String::new(),
                };
                steps.push((infoset.clone(), action));
            }
        }
    }
    let current = match &game.node(node).kind {
        NodeKind::Control { infoset, .. } => infoset.clone(),
        _ => unreachable!(),
    };
    Ok(History { steps, current })
}

/// How much a player forgets: the recall classes, ordered from full memory
/// to forgetting even the number of own moves. Non-perfect classes carry a
/// witnessing node pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RecallClass {
    PerfectRecall,
    /// Every same-infoset history pair first diverges at the player's own
    /// action; the witness is one such pair.
    ALoss { witness: (NodeId, NodeId) },
    /// Some same-infoset history pair first diverges at a received signal.
    SignalLoss { witness: (NodeId, NodeId) },
    /// An infoset contains a node and one of its descendants.
    AbsentMinded { witness: (NodeId, NodeId) },
}

enum Divergence {
    None,
    AtAction,
    AtSignal,
}

fn first_divergence(a: &History, b: &History) -> Divergence {
    let la = a.linearize();
    let lb = b.linearize();
    let shorter = la.len().min(lb.len());
    for i in 0..shorter {
        if la[i] != lb[i] {
            // Even positions are signals, odd positions are actions.
            return if i % 2 == 1 { Divergence::AtAction } else { Divergence::AtSignal };
        }
    }
    if la.len() == lb.len() {
        Divergence::None
    } else {
        // One history is a proper prefix of the other; this does not match
        // the action-divergence pattern.
        Divergence::AtSignal
    }
}

/// Classifies the recall of `player`: absent-mindedness is checked first,
/// then perfect recall, then A-loss (all divergences at own actions),
/// otherwise signal loss.
pub fn classify_recall(game: &GameTree, player: Player) -> RecallClass {
    // Absent-mindedness: an infoset containing an ancestor-descendant pair.
    for info in game.infosets.values().filter(|i| i.player == player) {
        let members: BTreeSet<NodeId> = info.members.iter().copied().collect();
        for &v in &info.members {
            let path = game.path_to(v);
            for &u in &path[..path.len() - 1] {
                if members.contains(&u) {
                    return RecallClass::AbsentMinded { witness: (u, v) };
                }
            }
        }
    }

    let mut action_witness: Option<(NodeId, NodeId)> = None;
    for info in game.infosets.values().filter(|i| i.player == player) {
        let hists: Vec<(NodeId, History)> = info
            .members
            .iter()
            .map(|&n| (n, history(game, n).expect("member is a control node")))
            .collect();
        for i in 0..hists.len() {
            for j in i + 1..hists.len() {
                match first_divergence(&hists[i].1, &hists[j].1) {
                    Divergence::None => {}
                    Divergence::AtAction => {
                        action_witness.get_or_insert((hists[i].0, hists[j].0));
                    }
                    Divergence::AtSignal => {
                        return RecallClass::SignalLoss { witness: (hists[i].0, hists[j].0) };
                    }
                }
            }
        }
    }
    match action_witness {
        None => RecallClass::PerfectRecall,
        Some(witness) => RecallClass::ALoss { witness },
    }
}

/// The chance degree: 1 at leaves, sum over children at chance nodes, max
/// over children at control nodes. Equals the largest number of leaves
/// reachable with positive probability under pure play.
pub fn chance_degree(game: &GameTree) -> u64 {
    fn go(game: &GameTree, id: NodeId) -> u64 {
        let node = game.node(id);
        match &node.kind {
            NodeKind::Leaf { .. } => 1,
            NodeKind::Chance => node.children.iter().map(|c| go(game, *c)).sum(),
            NodeKind::Control { .. } => node.children.iter().map(|c| go(game, *c)).max().unwrap_or(1),
        }
    }
    go(game, game.root())
}

/// A deterministic move choice per infoset.
pub type PureStrategy = BTreeMap<String, String>;

/// A probability distribution over moves at each infoset of one player.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BehaviouralStrategy {
    /// infoset id -> action -> probability
    pub probs: BTreeMap<String, BTreeMap<String, Rational>>,
}

impl BehaviouralStrategy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, infoset: &str, action: &str, p: Rational) {
        self.probs
            .entry(infoset.to_owned())
            .or_default()
            .insert(action.to_owned(), p);
    }

    pub fn prob(&self, infoset: &str, action: &str) -> Option<&Rational> {
        self.probs.get(infoset)?.get(action)
    }

    pub fn from_pure(pure: &PureStrategy) -> Self {
        let mut s = Self::new();
        for (infoset, action) in pure {
            s.set(infoset, action, rat(1));
        }
        s
    }
}

fn check_coverage(game: &GameTree, player: Player, strategy: &BehaviouralStrategy) -> Result<(), GameError> {
    for (id, info) in game.infosets.iter().filter(|(_, i)| i.player == player) {
        let dist = strategy
            .probs
            .get(id)
            .ok_or_else(|| GameError::IncompleteStrategy { player, infoset: id.clone() })?;
        let mut sum = Rational::zero();
        for (action, p) in dist {
            if p.is_negative() || !info.moves.iter().any(|m| m == action) {
                return Err(GameError::MalformedStrategy { infoset: id.clone() });
            }
            sum += p;
        }
        if !sum.is_one() {
            return Err(GameError::MalformedStrategy { infoset: id.clone() });
        }
    }
    Ok(())
}

/// Exact expected payoff of the strategy profile: the sum over leaves of
/// utility times the product of chance probabilities and both players'
/// move probabilities along the root path.
pub fn payoff(
    game: &GameTree,
    sigma: &BehaviouralStrategy,
    tau: &BehaviouralStrategy,
) -> Result<Rational, GameError> {
    check_coverage(game, Player::Max, sigma)?;
    check_coverage(game, Player::Min, tau)?;
    let mut total = Rational::zero();
    // DFS carrying the accumulated reach probability.
    let mut stack: Vec<(NodeId, Rational)> = vec![(game.root(), rat(1))];
    while let Some((id, reach)) = stack.pop() {
        if reach.is_zero() {
            continue;
        }
        let node = game.node(id);
        match &node.kind {
            NodeKind::Leaf { utility } => total += utility * &reach,
            NodeKind::Chance => {
                for (edge, child) in game.edges(id) {
                    if let EdgeLabel::Chance(p) = edge {
                        stack.push((child, &reach * p));
                    }
                }
            }
            NodeKind::Control { player, infoset } => {
                let strategy = if *player == Player::Max { sigma } else { tau };
                for (edge, child) in game.edges(id) {
                    if let EdgeLabel::Action(a) = edge {
                        let p = strategy.prob(infoset, a).cloned().unwrap_or_else(Rational::zero);
                        stack.push((child, &reach * p));
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Exact payoff of a pure strategy profile.
pub fn payoff_pure(game: &GameTree, sigma: &PureStrategy, tau: &PureStrategy) -> Result<Rational, GameError> {
    payoff(
        game,
        &BehaviouralStrategy::from_pure(sigma),
        &BehaviouralStrategy::from_pure(tau),
    )
}

/// Iterator over every pure strategy of one player, lexicographic over
/// infoset id then move index.
pub struct PureStrategyIter {
    infosets: Vec<(String, Vec<String>)>,
    // Odometer over move indices; None once exhausted.
    state: Option<Vec<usize>>,
}

impl Iterator for PureStrategyIter {
    type Item = PureStrategy;

    fn next(&mut self) -> Option<PureStrategy> {
        let state = self.state.as_mut()?;
        let item: PureStrategy = self
            .infosets
            .iter()
            .zip(state.iter())
            .map(|((id, moves), &k)| (id.clone(), moves[k].clone()))
            .collect();
        // Advance the least significant (last) position.
        let mut pos = self.infosets.len();
        loop {
            if pos == 0 {
                self.state = None;
                break;
            }
            pos -= 1;
            state[pos] += 1;
            if state[pos] < self.infosets[pos].1.len() {
                break;
            }
            state[pos] = 0;
        }
        Some(item)
    }
}

/// Yields every map infoset -> move for the player, in a fixed
/// deterministic order. A player with no infosets has exactly one (empty)
/// pure strategy.
pub fn enumerate_pure(game: &GameTree, player: Player) -> PureStrategyIter {
    let infosets: Vec<(String, Vec<String>)> = game
        .infosets
        .iter()
        .filter(|(_, i)| i.player == player)
        .map(|(id, i)| (id.clone(), i.moves.clone()))
        .collect();
    let state = if infosets.iter().any(|(_, moves)| moves.is_empty()) {
        None
    } else {
        Some(vec![0; infosets.len()])
    };
    PureStrategyIter { infosets, state }
}

/// Number of pure strategies of the player (product of move counts).
pub fn pure_strategy_count(game: &GameTree, player: Player) -> u128 {
    game.infosets
        .values()
        .filter(|i| i.player == player)
        .map(|i| i.moves.len() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b))
}

/// Fixes one player's behavioural strategy into the tree: that player's
/// control nodes become chance nodes over their positive-probability moves
/// (zero-probability subtrees are dropped). The other player's infosets
/// are preserved on the surviving nodes.
pub fn fix_player(
    game: &GameTree,
    player: Player,
    strategy: &BehaviouralStrategy,
) -> Result<GameTree, GameError> {
    check_coverage(game, player, strategy)?;
    let mut b = GameBuilder::new();
    // Rebuild by explicit recursion over the old tree to keep child order.
    fn copy(
        b: &mut GameBuilder,
        game: &GameTree,
        player: Player,
        strategy: &BehaviouralStrategy,
        old: NodeId,
        parent: Option<(NodeId, EdgeLabel)>,
    ) {
        let node = game.node(old);
        let new = match (&node.kind, &parent) {
            (NodeKind::Leaf { utility }, None) => b.root_leaf(utility.clone()),
            (NodeKind::Leaf { utility }, Some((p, e))) => b.leaf(*p, e.clone(), utility.clone()),
            (NodeKind::Chance, None) => b.root_chance(),
            (NodeKind::Chance, Some((p, e))) => b.chance(*p, e.clone()),
            (NodeKind::Control { player: q, infoset }, _) if *q != player => match &parent {
                None => b.root_control(*q, infoset),
                Some((p, e)) => b.control(*p, e.clone(), *q, infoset),
            },
            // The fixed player's node: becomes a chance node.
            (NodeKind::Control { .. }, None) => b.root_chance(),
            (NodeKind::Control { .. }, Some((p, e))) => b.chance(*p, e.clone()),
        };
        let fixed_here = match &node.kind {
            NodeKind::Control { player: q, infoset } if *q == player => Some(infoset.clone()),
            _ => None,
        };
        for (edge, child) in game.edges(old) {
            let new_edge = match (&fixed_here, edge) {
                (Some(infoset), EdgeLabel::Action(a)) => {
                    let p = strategy.prob(infoset, a).cloned().unwrap_or_else(Rational::zero);
                    if p.is_zero() {
                        continue;
                    }
                    EdgeLabel::Chance(p)
                }
                _ => edge.clone(),
            };
            copy(b, game, player, strategy, child, Some((new, new_edge)));
        }
    }
    copy(&mut b, game, player, strategy, game.root(), None);
    Ok(b.finish())
}

/// Fixes one player's pure strategy; off-strategy subtrees disappear and
/// the chosen edges become probability-1 chance edges.
pub fn fix_player_pure(game: &GameTree, player: Player, pure: &PureStrategy) -> Result<GameTree, GameError> {
    fix_player(game, player, &BehaviouralStrategy::from_pure(pure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{absent_minded_game, signal_loss_game};
    use crate::{rat, ratio};

    fn g1_strategy(x: Rational) -> BehaviouralStrategy {
        let mut s = BehaviouralStrategy::new();
        s.set("x", "a", x.clone());
        s.set("x", "b", rat(1) - x);
        s
    }

    #[test]
    fn validate_accepts_the_running_examples() {
        assert!(validate(&absent_minded_game()).is_ok());
        assert!(validate(&signal_loss_game()).is_ok());
    }

    #[test]
    fn validate_accepts_single_leaf() {
        let mut b = GameBuilder::new();
        b.root_leaf(rat(7));
        assert!(validate(&b.finish()).is_ok());
    }

    #[test]
    fn validate_reports_bad_chance_sum() {
        let mut b = GameBuilder::new();
        let r = b.root_chance();
        b.leaf(r, ratio(1, 2), rat(0));
        b.leaf(r, ratio(1, 3), rat(1));
        let report = validate(&b.finish());
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::ChanceProbSum { .. }));
    }

    #[test]
    fn validate_reports_duplicate_actions_and_infoset_mismatches() {
        let mut b = GameBuilder::new();
        let r = b.root_control(Player::Max, "i");
        b.leaf(r, "a", rat(0));
        b.leaf(r, "a", rat(1));
        let u = b.control(r, "b", Player::Min, "i");
        b.leaf(u, "c", rat(0));
        let report = validate(&b.finish());
        assert!(report.violations.iter().any(|v| matches!(v, Violation::DuplicateAction { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::InfosetPlayerMismatch { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::InfosetMoveMismatch { .. })));
    }

    #[test]
    fn history_of_signal_loss_game_nodes() {
        let g = signal_loss_game();
        // u3 is the control node reached by r -A-> u1 -b-> u3.
        let u3 = g
            .infoset("z")
            .unwrap()
            .members
            .iter()
            .copied()
            .find(|&n| {
                let path = g.path_to(n);
                matches!(
                    &g.node(path[1]).kind,
                    NodeKind::Control { infoset, .. } if infoset == "x"
                )
            })
            .unwrap();
        let h = history(&g, u3).unwrap();
        assert_eq!(h.steps, vec![("x".into(), "b".into())]);
        assert_eq!(h.current, "z");

        let u4 = g
            .infoset("z")
            .unwrap()
            .members
            .iter()
            .copied()
            .find(|&n| n != u3)
            .unwrap();
        let h = history(&g, u4).unwrap();
        assert_eq!(h.steps, vec![("y".into(), "a".into())]);

        // Root control node: empty path prefix.
        let h = history(&g, g.root()).unwrap();
        assert!(h.steps.is_empty());
        assert_eq!(h.current, "w");
    }

    #[test]
    fn history_rejects_non_control_nodes() {
        let g = signal_loss_game();
        let leaf = g.leaves()[0];
        assert_eq!(history(&g, leaf), Err(GameError::NoHistoryOwner(leaf)));
    }

    #[test]
    fn recall_classes_of_the_running_examples() {
        let g1 = absent_minded_game();
        match classify_recall(&g1, Player::Max) {
            RecallClass::AbsentMinded { witness: (u, v) } => {
                assert_eq!(u, g1.root());
                let path = g1.path_to(v);
                assert!(path.contains(&g1.root()) && v != g1.root());
            }
            other => panic!("expected absent-mindedness, got {other:?}"),
        }

        let g2 = signal_loss_game();
        match classify_recall(&g2, Player::Max) {
            RecallClass::SignalLoss { witness: (u, v) } => {
                let zu = &g2.node(u).kind;
                let zv = &g2.node(v).kind;
                for k in [zu, zv] {
                    assert!(matches!(k, NodeKind::Control { infoset, .. } if infoset == "z"));
                }
            }
            other => panic!("expected signal loss, got {other:?}"),
        }
        // Min has a single information set: trivially perfect recall.
        assert_eq!(classify_recall(&g2, Player::Min), RecallClass::PerfectRecall);
    }

    #[test]
    fn chance_degree_examples() {
        assert_eq!(chance_degree(&signal_loss_game()), 1);
        let mut b = GameBuilder::new();
        b.root_leaf(rat(0));
        assert_eq!(chance_degree(&b.finish()), 1);
    }

    #[test]
    fn perfect_recall_means_identical_histories() {
        // Min in the square-root gadget: one four-member infoset, all with
        // the same (empty-prefix) history.
        let g = crate::transforms::gadget_sqrt(4).unwrap();
        assert_eq!(classify_recall(&g, Player::Min), RecallClass::PerfectRecall);
        for info in g.infosets().values().filter(|i| i.player == Player::Min) {
            let hists: Vec<History> = info
                .members
                .iter()
                .map(|&n| history(&g, n).unwrap())
                .collect();
            assert!(hists.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn payoff_on_absent_minded_game() {
        let g = absent_minded_game();
        let empty = BehaviouralStrategy::new();
        // Pure a reaches the zero leaf.
        let mut pure = PureStrategy::new();
        pure.insert("x".into(), "a".into());
        assert_eq!(payoff(&g, &BehaviouralStrategy::from_pure(&pure), &empty).unwrap(), rat(0));
        // x(1-x) at x = 1/2.
        assert_eq!(payoff(&g, &g1_strategy(ratio(1, 2)), &empty).unwrap(), ratio(1, 4));
    }

    #[test]
    fn payoff_on_signal_loss_game_all_left() {
        let g = signal_loss_game();
        let mut sigma = PureStrategy::new();
        sigma.insert("x".into(), "a".into());
        sigma.insert("y".into(), "a".into());
        sigma.insert("z".into(), "a".into());
        let mut tau = PureStrategy::new();
        tau.insert("w".into(), "A".into());
        assert_eq!(payoff_pure(&g, &sigma, &tau).unwrap(), rat(1));
    }

    #[test]
    fn payoff_requires_complete_strategies() {
        let g = signal_loss_game();
        let err = payoff(&g, &BehaviouralStrategy::new(), &BehaviouralStrategy::new()).unwrap_err();
        assert!(matches!(err, GameError::IncompleteStrategy { player: Player::Max, .. }));
    }

    #[test]
    fn enumerate_pure_counts() {
        let g1 = absent_minded_game();
        let strategies: Vec<_> = enumerate_pure(&g1, Player::Max).collect();
        assert_eq!(strategies.len(), 2);
        assert_eq!(strategies[0]["x"], "a");
        assert_eq!(strategies[1]["x"], "b");

        let g2 = signal_loss_game();
        assert_eq!(enumerate_pure(&g2, Player::Max).count(), 8);
        assert_eq!(enumerate_pure(&g2, Player::Min).count(), 2);
    }

    #[test]
    fn payoff_is_affine_in_a_single_probability() {
        // Three-point collinearity in the signal-loss game, which has no
        // absent-mindedness: fix all but one coordinate and check that the
        // payoff at 1/2 is the average of the payoffs at 0 and 1.
        let g = signal_loss_game();
        let mut tau = BehaviouralStrategy::new();
        tau.set("w", "A", ratio(1, 3));
        tau.set("w", "B", ratio(2, 3));
        let eval = |z: Rational| {
            let mut sigma = BehaviouralStrategy::new();
            sigma.set("x", "a", ratio(1, 5));
            sigma.set("x", "b", ratio(4, 5));
            sigma.set("y", "a", ratio(2, 7));
            sigma.set("y", "b", ratio(5, 7));
            sigma.set("z", "a", z.clone());
            sigma.set("z", "b", rat(1) - z);
            payoff(&g, &sigma, &tau).unwrap()
        };
        let at0 = eval(rat(0));
        let at1 = eval(rat(1));
        let mid = eval(ratio(1, 2));
        assert_eq!(mid, (at0 + at1) / rat(2));
    }

    #[test]
    fn scaling_utilities_scales_payoff() {
        let g = signal_loss_game();
        let scaled = g.scale_utilities(&ratio(3, 2));
        let mut sigma = PureStrategy::new();
        sigma.insert("x".into(), "b".into());
        sigma.insert("y".into(), "a".into());
        sigma.insert("z".into(), "a".into());
        let mut tau = PureStrategy::new();
        tau.insert("w".into(), "A".into());
        let v = payoff_pure(&g, &sigma, &tau).unwrap();
        let w = payoff_pure(&scaled, &sigma, &tau).unwrap();
        assert_eq!(w, v * ratio(3, 2));
    }

    #[test]
    fn fix_player_turns_control_into_chance() {
        let g = signal_loss_game();
        let mut tau = PureStrategy::new();
        tau.insert("w".into(), "A".into());
        let fixed = fix_player_pure(&g, Player::Min, &tau).unwrap();
        assert!(!fixed.has_player(Player::Min));
        assert!(fixed.has_player(Player::Max));
        // Root became a single-edge chance node.
        assert!(matches!(fixed.node(fixed.root()).kind, NodeKind::Chance));
        assert_eq!(fixed.node(fixed.root()).children.len(), 1);
        assert!(validate(&fixed).is_ok());
    }
}
