//! Constructions connecting polynomials and one-player games, the
//! quantified-formula encoding of maxmin questions, and the hardness
//! gadget generators (square-root games, square-root-sum games, and the
//! strict-positivity gap construction).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use alloc::collections::BTreeSet;

use crate::game::{EdgeLabel, GameBuilder, GameTree, NodeKind, Player};
use crate::poly::{
    is_perfect_recall, DecompositionTree, GeneralPoly, LiteralPoly, MultilinearPoly, PerfectRecall,
};
use crate::{rat, ratio, Rational};

/// Errors raised by the transform constructions.
#[derive(Clone, PartialEq, Debug)]
pub enum TransformError {
    /// The zero polynomial has no game.
    EmptyPolynomial,
    /// Perfect-recall construction on a polynomial that is not perfect
    /// recall; carries the failing sub-polynomial.
    NotPerfectRecall { failing: MultilinearPoly },
    /// Payoff extraction needs the other player absent.
    ActiveOpponent,
    /// Payoff extraction is defined for binary move sets only.
    NonBinaryInfoset { infoset: String },
    /// Square-root gadget parameter must be at least 2.
    DegenerateGadget { n: u64 },
    /// The square-root-sum gadget needs at least one subgame.
    EmptyInput,
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::EmptyPolynomial => write!(f, "empty polynomial"),
            TransformError::NotPerfectRecall { failing } => {
                write!(f, "polynomial is not perfect recall (failing part: {failing})")
            }
            TransformError::ActiveOpponent => write!(f, "fix one side first: opponent is active"),
            TransformError::NonBinaryInfoset { infoset } => {
                write!(f, "infoset {infoset:?} does not have exactly two moves")
            }
            TransformError::DegenerateGadget { n } => write!(f, "degenerate gadget: n = {n} < 2"),
            TransformError::EmptyInput => write!(f, "square-root-sum gadget needs at least one term"),
        }
    }
}

impl core::error::Error for TransformError {}

/// Builds the one-player game whose behavioural payoff at the point
/// `(d_1, ..., d_n)` equals `F(d_1, ..., d_n)`.
///
/// The chance root branches to one subtree per term with probability
/// `1/k`; under it a path visits one control node per degree unit of the
/// term (variables in canonical order, repetitions consecutive), ending at
/// a leaf with utility `k * c_i`. Moves are `l` to continue and `r` to an
/// exit leaf of utility 0; all nodes of one variable share an infoset
/// named after it. Constant terms become direct leaf children of the root.
pub fn poly_to_game(f: &GeneralPoly) -> Result<GameTree, TransformError> {
    if f.is_zero() {
        return Err(TransformError::EmptyPolynomial);
    }
    let k = f.term_count() as i64;
    let p = ratio(1, k);
    let mut b = GameBuilder::new();
    let root = b.root_chance();
    for (monomial, c) in f.terms() {
        let utility = c * rat(k);
        if monomial.is_empty() {
            b.leaf(root, p.clone(), utility);
            continue;
        }
        // The on-path chain first, then the exit leaves, so each exit is
        // the second child of its node.
        let mut chain = Vec::new();
        let mut parent = root;
        let mut edge: EdgeLabel = p.clone().into();
        for (var, degree) in monomial {
            for _ in 0..*degree {
                let node = b.control(parent, edge.clone(), Player::Max, var);
                chain.push(node);
                parent = node;
                edge = "l".into();
            }
        }
        b.leaf(parent, "l", utility);
        for node in chain {
            b.leaf(node, "r", rat(0));
        }
    }
    Ok(b.finish())
}

fn build_pr_game(tree: &DecompositionTree) -> GameTree {
    match tree {
        DecompositionTree::Leaf(p) => {
            let h = p.full_expand();
            let vars = h.vars();
            let mut b = GameBuilder::new();
            match vars.iter().next() {
                None => {
                    b.root_leaf(h.constant_term());
                }
                Some(x) => {
                    let r = b.root_control(Player::Max, x);
                    b.leaf(r, "l", h.substitute(x, true).constant_term());
                    b.leaf(r, "r", h.substitute(x, false).constant_term());
                }
            }
            b.finish()
        }
        DecompositionTree::Split { decomposition, parts } => {
            let g0 = build_pr_game(&parts[0]);
            let g1 = build_pr_game(&parts[1]);
            let g2 = build_pr_game(&parts[2]);
            let mut b = GameBuilder::new();
            let root = b.root_chance();
            let pivot = b.control(root, ratio(1, 2), Player::Max, &decomposition.pivot);
            b.graft(pivot, "l", &g0);
            b.graft(pivot, "r", &g1);
            b.graft(root, ratio(1, 2), &g2);
            // Halved twice by the chance root, so double every payoff.
            b.finish().scale_utilities(&rat(2))
        }
    }
}

/// Builds a one-player perfect-information game whose payoff polynomial is
/// equivalent to the perfect-recall polynomial `f`: single-variable pieces
/// become one control node with the endpoint values as leaves, and each
/// disconnected decomposition becomes a half/half chance node over the
/// pivot split and the remainder, with all leaf payoffs doubled.
pub fn pr_poly_to_game(f: &MultilinearPoly) -> Result<GameTree, TransformError> {
    match is_perfect_recall(f) {
        PerfectRecall::Yes(witness) => Ok(build_pr_game(&witness)),
        PerfectRecall::No { failing } => Err(TransformError::NotPerfectRecall { failing }),
    }
}

/// Same construction from an already-computed witness tree.
pub fn pr_game_from_witness(witness: &DecompositionTree) -> GameTree {
    build_pr_game(witness)
}

/// The symbolic expected payoff of a game with every control choice kept
/// symbolic: for each leaf, utility times the chance product times one
/// literal per traversed control edge — the infoset variable for the first
/// move, its complement for the second. Requires binary move sets.
pub fn payoff_polynomial(game: &GameTree) -> Result<LiteralPoly, TransformError> {
    for (id, info) in game.infosets() {
        if info.moves.len() != 2 {
            return Err(TransformError::NonBinaryInfoset { infoset: id.clone() });
        }
    }
    let mut out = LiteralPoly::zero();
    for leaf in game.leaves() {
        let utility = game.utility(leaf).expect("leaf").clone();
        let mut coeff = utility;
        let mut literals: Vec<(String, bool)> = Vec::new();
        let path = game.path_to(leaf);
        for pair in path.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            match (&game.node(u).kind, game.node(v).incoming.as_ref()) {
                (NodeKind::Chance, Some(EdgeLabel::Chance(p))) => coeff *= p,
                (NodeKind::Control { infoset, .. }, Some(EdgeLabel::Action(a))) => {
                    let info = game.infoset(infoset).expect("infoset exists");
                    let positive = info.moves[0] == *a;
                    literals.push((infoset.clone(), positive));
                }
                _ => {}
            }
        }
        out.add_term(coeff, literals);
    }
    Ok(out)
}

/// Payoff polynomial of a game where only `player` is active. For games
/// without absent-mindedness the result folds into a multilinear
/// polynomial; for perfect-recall games it is a perfect-recall polynomial.
pub fn game_to_poly(game: &GameTree, player: Player) -> Result<LiteralPoly, TransformError> {
    if game.has_player(player.opponent()) {
        return Err(TransformError::ActiveOpponent);
    }
    payoff_polynomial(game)
}

/// Comparison relation in an emitted formula.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Ge,
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Ge => write!(f, ">="),
            Relation::Gt => write!(f, ">"),
        }
    }
}

/// A sentence of the first-order theory of the reals expressing a maxmin
/// threshold question: existential block over Max's infoset variables,
/// universal block over Min's, and a payoff inequality as the matrix.
#[derive(Clone, Debug)]
pub struct FormulaText {
    pub exists: Vec<String>,
    pub forall: Vec<String>,
    pub matrix: LiteralPoly,
    pub relation: Relation,
    pub threshold: Rational,
}

fn write_domain(f: &mut fmt::Formatter<'_>, vars: &[String]) -> fmt::Result {
    write!(f, "(")?;
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            write!(f, " & ")?;
        }
        write!(f, "0 <= {v} & {v} <= 1")?;
    }
    write!(f, ")")
}

impl fmt::Display for FormulaText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.exists.is_empty() {
            write!(f, "exists")?;
            for v in &self.exists {
                write!(f, " {v}")?;
            }
            write!(f, ". ")?;
        }
        if !self.forall.is_empty() {
            write!(f, "forall")?;
            for v in &self.forall {
                write!(f, " {v}")?;
            }
            write!(f, ". ")?;
            write_domain(f, &self.forall)?;
            write!(f, " -> ")?;
        } else if !self.exists.is_empty() {
            write_domain(f, &self.exists)?;
            write!(f, " & ")?;
        }
        write!(f, "({} {} {})", self.matrix, self.relation, self.threshold)
    }
}

/// Encodes "the maxmin value of the game relates to the threshold" as a
/// quantified real-arithmetic sentence: `exists` over Max's variables,
/// `forall` over Min's (with unit-interval domains), matrix equal to the
/// symbolic payoff compared against the threshold. A game with only one
/// active player gets a single quantifier block with the domains attached
/// conjunctively.
pub fn encode_maxmin_formula(
    game: &GameTree,
    threshold: Rational,
    relation: Relation,
) -> Result<FormulaText, TransformError> {
    let matrix = payoff_polynomial(game)?;
    let exists: Vec<String> = game.player_infosets(Player::Max).iter().map(|s| String::from(*s)).collect();
    let forall: Vec<String> = game.player_infosets(Player::Min).iter().map(|s| String::from(*s)).collect();
    Ok(FormulaText { exists, forall, matrix, relation, threshold })
}

fn gadget_sqrt_named(n: u64, suffix: &str) -> Result<GameTree, TransformError> {
    if n < 2 {
        return Err(TransformError::DegenerateGadget { n });
    }
    let i1 = format!("I1{suffix}");
    let i2 = format!("I2{suffix}");
    let j = format!("J{suffix}");
    let n = n as i64;
    let big = rat((n - 1) * (n - 1));
    let small = ratio((n - 1) * (n - 1), n);
    let half = ratio(1, 2);

    let mut b = GameBuilder::new();
    let root = b.root_chance();
    let s_e = b.control(root, half.clone(), Player::Max, &i1);
    let s0 = b.control(s_e, "l", Player::Max, &i2);
    let s00 = b.control(s0, "l", Player::Min, &j);
    b.leaf(s00, "l", big);
    b.leaf(s00, "r", rat(0));
    let s01 = b.control(s0, "r", Player::Min, &j);
    b.leaf(s01, "l", rat(0));
    b.leaf(s01, "r", rat(0));
    let s1 = b.control(s_e, "r", Player::Max, &i2);
    let s10 = b.control(s1, "l", Player::Min, &j);
    b.leaf(s10, "l", rat(0));
    b.leaf(s10, "r", rat(0));
    let s11 = b.control(s1, "r", Player::Min, &j);
    b.leaf(s11, "l", rat(0));
    b.leaf(s11, "r", small);
    b.leaf(root, half, rat(-(n + 1)));
    Ok(b.finish())
}

/// The two-player square-root gadget: a half/half chance between a scaled
/// three-level subtree and a `-(n+1)` leaf. Max has A-loss recall (one
/// infoset spans both middle nodes), Min has perfect recall, and the
/// behavioural maxmin value is exactly `-sqrt(n)`, attained at
/// `x = y = (sqrt(n)-1)/(n-1)`.
pub fn gadget_sqrt(n: u64) -> Result<GameTree, TransformError> {
    gadget_sqrt_named(n, "")
}

/// The square-root-sum gadget: chance root moving with probability
/// `1/(m+1)` to each square-root gadget and to a trivial leaf of payoff
/// `p`. The behavioural maxmin is nonnegative iff the square roots of the
/// `a_i` sum to at most `p`.
pub fn gadget_sqrtsum(a: &[u64], p: u64) -> Result<GameTree, TransformError> {
    if a.is_empty() {
        return Err(TransformError::EmptyInput);
    }
    let m = a.len() as i64;
    let share = ratio(1, m + 1);
    let mut b = GameBuilder::new();
    let root = b.root_chance();
    for (i, &n) in a.iter().enumerate() {
        let sub = gadget_sqrt_named(n, &format!("_{}", i + 1))?;
        b.graft(root, share.clone(), &sub);
    }
    b.leaf(root, share, rat(p as i64));
    Ok(b.finish())
}

/// The chain polynomial with `t+1` variables `y0..yt`: the negated sum of
/// squares of `y_{i-1} - y_i^2` for `i = 1..t` and of `y_t - 1/2`. Its
/// maximum over the unit hypercube is 0, attained only at `y_t = 1/2`,
/// `y_{i-1} = y_i^2`, which pins `y0` to a doubly exponentially small
/// value.
pub fn gap_chain_poly(t: u64) -> GeneralPoly {
    gap_chain_poly_named(t, &(0..=t).map(|i| format!("y{i}")).collect::<Vec<_>>())
}

fn gap_chain_poly_named(t: u64, names: &[String]) -> GeneralPoly {
    debug_assert_eq!(names.len() as u64, t + 1);
    let mut total = GeneralPoly::zero();
    for i in 1..=t as usize {
        // y_{i-1} - y_i^2
        let yi = GeneralPoly::var(&names[i]);
        let f = GeneralPoly::var(&names[i - 1]).sub(&yi.mul(&yi));
        total = total.add(&f.mul(&f));
    }
    let last = GeneralPoly::var(&names[t as usize]).sub(&GeneralPoly::constant(ratio(1, 2)));
    total = total.add(&last.mul(&last));
    total.neg()
}

/// The strict-positivity gap construction: a chance root with three
/// probability-1/3 children — the input game, the game of the chain
/// polynomial over `t+1 = l+6` fresh variables, and a single control node
/// in the first chain variable's infoset with leaves 0 and 1. The optimal
/// payoff exceeds one third of the input's optimum by a doubly
/// exponentially small positive margin.
///
/// `l` is the declared complexity parameter of the input game; callers
/// serialize the game to measure it.
pub fn build_gap_game(game: &GameTree, l: u64) -> Result<GameTree, TransformError> {
    let t = l + 5;
    let used: BTreeSet<&String> = game.infosets().keys().collect();
    let mut prefix = String::new();
    let names: Vec<String> = loop {
        let candidate: Vec<String> = (0..=t).map(|i| format!("{prefix}y{i}")).collect();
        if candidate.iter().all(|c| !used.contains(c)) {
            break candidate;
        }
        prefix.push('g');
    };
    let chain = poly_to_game(&gap_chain_poly_named(t, &names))?;
    let third = ratio(1, 3);
    let mut b = GameBuilder::new();
    let root = b.root_chance();
    b.graft(root, third.clone(), game);
    b.graft(root, third.clone(), &chain);
    let pick = b.control(root, third, Player::Max, &names[0]);
    b.leaf(pick, "l", rat(0));
    b.leaf(pick, "r", rat(1));
    Ok(b.finish())
}
