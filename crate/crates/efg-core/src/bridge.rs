//! A model of the bidding phase of Bridge: four seats in two teams bid
//! numbers under a strictly-increasing rule, secrets are dealt by chance,
//! and the declarer's table decides who collects the contract. The module
//! compiles the model to an extensive-form team game and solves the
//! pure-strategy maxmin exactly, both over unrestricted team strategies
//! and over the non-overbidding restriction (bid only on your first turn,
//! pass afterwards).
//!
//! Both solvers run on the public bid tree annotated with the set of
//! secret profiles still consistent with play. A bidder's choice is an
//! assignment from her distinct secrets to legal bids; distinct bids split
//! the profile set. Every (secret, bid-sequence) context occurs at most
//! once along realized play, so optimizing assignments locally computes
//! the committed-strategy maxmin exactly.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::game::{GameBuilder, GameTree, Player, PureStrategy};
use crate::solvers::SolveStats;
use crate::{rat, Rational};

/// A bid: 0 passes, anything else must exceed the last nonzero bid.
pub type Bid = u32;

/// The four seats in turn order. North and South form the Max team, East
/// and West the Min team.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Seat {
    North,
    East,
    South,
    West,
}

pub const SEATS: [Seat; 4] = [Seat::North, Seat::East, Seat::South, Seat::West];

impl Seat {
    pub fn index(self) -> usize {
        match self {
            Seat::North => 0,
            Seat::East => 1,
            Seat::South => 2,
            Seat::West => 3,
        }
    }

    pub fn team(self) -> Player {
        match self {
            Seat::North | Seat::South => Player::Max,
            Seat::East | Seat::West => Player::Min,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Seat::North => 'N',
            Seat::East => 'E',
            Seat::South => 'S',
            Seat::West => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Seat> {
        match c {
            'N' => Some(Seat::North),
            'E' => Some(Seat::East),
            'S' => Some(Seat::South),
            'W' => Some(Seat::West),
            _ => None,
        }
    }
}

impl fmt::Display for Seat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Errors raised by the bidding model.
#[derive(Clone, PartialEq, Debug)]
pub enum BridgeError {
    /// The declarer-evaluation bound must satisfy `m <= n`.
    BoundOutOfRange { m: Bid, n: Bid },
    /// A table value exceeds `m`.
    ThetaAboveBound { seat: Seat, value: Bid },
    /// Probabilities must be nonnegative and sum to exactly 1.
    BadDistribution,
    /// A profile refers to a secret index outside a seat's secret set.
    UnknownSecret { seat: Seat, index: usize },
    /// A bid breaks the strictly-increasing rule (or exceeds `n`).
    IllegalBid { position: usize },
    /// Bids continue after the sequence already ended.
    AfterEnd { position: usize },
    /// The sequence stops before any ending rule fires.
    NonTerminal { position: usize },
    /// The team solvers track profile sets in a 64-bit mask.
    TooManyProfiles { count: usize },
    /// The solver refused or aborted: the enumeration is over budget.
    BudgetExceeded { size: String, budget: u64 },
    /// Scaled integer arithmetic overflowed; the distribution is too fine.
    Overflow,
}

impl fmt::Display for BridgeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BridgeError::BoundOutOfRange { m, n } => write!(f, "need m <= n, got m = {m}, n = {n}"),
            BridgeError::ThetaAboveBound { seat, value } => {
                write!(f, "theta value {value} for {seat} exceeds m")
            }
            BridgeError::BadDistribution => write!(f, "probabilities must be nonnegative and sum to 1"),
            BridgeError::UnknownSecret { seat, index } => {
                write!(f, "profile refers to secret #{index} of {seat}, which does not exist")
            }
            BridgeError::IllegalBid { position } => write!(f, "illegal bid at position {position}"),
            BridgeError::AfterEnd { position } => write!(f, "bid at position {position} after the game ended"),
            BridgeError::NonTerminal { position } => {
                write!(f, "sequence ends at position {position} before the game is over")
            }
            BridgeError::TooManyProfiles { count } => {
                write!(f, "{count} secret profiles exceed the 64-profile solver limit")
            }
            BridgeError::BudgetExceeded { size, budget } => {
                write!(f, "enumeration size {size} exceeds budget {budget}")
            }
            BridgeError::Overflow => write!(f, "scaled integer overflow; use coarser probabilities"),
        }
    }
}

impl core::error::Error for BridgeError {}

/// A secret profile: one secret index per seat.
pub type Profile = [usize; 4];

/// Specification of a bidding game: secret sets per seat, a joint
/// distribution over profiles, per-seat declarer tables, the bid ceiling
/// `n`, and the table bound `m <= n`.
#[derive(Clone, Debug)]
pub struct BridgeSpec {
    /// Secret names per seat, indexed by [`Seat::index`].
    pub secrets: [Vec<String>; 4],
    /// Joint distribution over profiles; omitted profiles have
    /// probability 0.
    pub dist: BTreeMap<Profile, Rational>,
    /// Declarer tables: for each seat, profile -> optimal bid. Omitted
    /// profiles default to 0.
    pub theta: [BTreeMap<Profile, Bid>; 4],
    pub n: Bid,
    pub m: Bid,
}

impl BridgeSpec {
    /// All secret profiles in lexicographic index order.
    pub fn profiles(&self) -> Vec<Profile> {
        let mut out = vec![[0usize; 4]];
        for seat in (0..4).rev() {
            let k = self.secrets[seat].len();
            out = (0..k)
                .flat_map(|i| {
                    out.iter().map(move |p| {
                        let mut q = *p;
                        q[seat] = i;
                        q
                    })
                })
                .collect();
            // Rebuild in lexicographic order.
        }
        let mut all = Vec::new();
        let dims: Vec<usize> = (0..4).map(|s| self.secrets[s].len()).collect();
        let mut p = [0usize; 4];
        loop {
            all.push(p);
            let mut k = 4;
            loop {
                if k == 0 {
                    return all;
                }
                k -= 1;
                p[k] += 1;
                if p[k] < dims[k] {
                    break;
                }
                p[k] = 0;
            }
        }
    }

    /// Number of secret profiles, `|H|`.
    pub fn profile_count(&self) -> usize {
        self.secrets.iter().map(|s| s.len()).product()
    }

    pub fn theta_of(&self, seat: Seat, profile: &Profile) -> Bid {
        self.theta[seat.index()].get(profile).copied().unwrap_or(0)
    }

    pub fn prob_of(&self, profile: &Profile) -> Rational {
        self.dist.get(profile).cloned().unwrap_or_else(Rational::zero)
    }

    /// Checks the structural invariants of the specification.
    pub fn validate(&self) -> Result<(), BridgeError> {
        if self.m > self.n {
            return Err(BridgeError::BoundOutOfRange { m: self.m, n: self.n });
        }
        if self.secrets.iter().any(|s| s.is_empty()) {
            return Err(BridgeError::BadDistribution);
        }
        let check_profile = |p: &Profile| -> Result<(), BridgeError> {
            for seat in SEATS {
                if p[seat.index()] >= self.secrets[seat.index()].len() {
                    return Err(BridgeError::UnknownSecret { seat, index: p[seat.index()] });
                }
            }
            Ok(())
        };
        let mut total = Rational::zero();
        for (p, q) in &self.dist {
            check_profile(p)?;
            if q.is_negative() {
                return Err(BridgeError::BadDistribution);
            }
            total += q;
        }
        if !total.is_one() {
            return Err(BridgeError::BadDistribution);
        }
        for seat in SEATS {
            for (p, &v) in &self.theta[seat.index()] {
                check_profile(p)?;
                if v > self.m {
                    return Err(BridgeError::ThetaAboveBound { seat, value: v });
                }
            }
        }
        Ok(())
    }
}

/// A sequence of bids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct BidSequence(pub Vec<Bid>);

impl fmt::Display for BidSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

fn last_nonzero(seq: &[Bid]) -> Option<(usize, Bid)> {
    seq.iter().enumerate().rev().find(|(_, &b)| b != 0).map(|(i, &b)| (i, b))
}

/// Is a legal sequence over: all four opening bids were passes, three
/// players passed in a row after some bid, or someone bid the ceiling.
pub fn is_terminal(seq: &[Bid], n: Bid) -> bool {
    if seq.len() == 4 && seq.iter().all(|&b| b == 0) {
        return true;
    }
    if seq.last() == Some(&n) && n > 0 {
        return true;
    }
    match last_nonzero(seq) {
        Some((i, _)) => seq.len() - i > 3,
        None => false,
    }
}

/// Legal continuations of a non-terminal sequence: pass, or anything
/// strictly above the last nonzero bid up to `n`.
pub fn legal_bids(seq: &[Bid], n: Bid) -> Vec<Bid> {
    let floor = last_nonzero(seq).map(|(_, b)| b).unwrap_or(0);
    let mut out = vec![0];
    out.extend(floor + 1..=n);
    out
}

/// Checks that `seq` is a legal, complete play: every bid follows the
/// rules and the ending rules fire exactly at the last bid.
pub fn check_sequence(seq: &[Bid], n: Bid) -> Result<(), BridgeError> {
    for i in 0..seq.len() {
        if is_terminal(&seq[..i], n) {
            return Err(BridgeError::AfterEnd { position: i });
        }
        let b = seq[i];
        if b != 0 {
            let floor = last_nonzero(&seq[..i]).map(|(_, x)| x).unwrap_or(0);
            if b <= floor || b > n {
                return Err(BridgeError::IllegalBid { position: i });
            }
        }
    }
    if !is_terminal(seq, n) {
        return Err(BridgeError::NonTerminal { position: seq.len() });
    }
    Ok(())
}

/// Outcome of a completed play.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PlayOutcome {
    pub declarer: Option<Seat>,
    pub contract: Bid,
    /// Payoff to the Max team (North/South); Min receives the negation.
    pub tmax_payoff: i64,
}

/// Plays out a complete bid sequence under a secret profile: the last
/// nonzero bidder declares the contract, her table decides whether her
/// team collects it, and an all-pass opening is worth 0.
pub fn play_out(spec: &BridgeSpec, profile: &Profile, bids: &BidSequence) -> Result<PlayOutcome, BridgeError> {
    check_sequence(&bids.0, spec.n)?;
    let (declarer, contract) = match last_nonzero(&bids.0) {
        None => {
            return Ok(PlayOutcome { declarer: None, contract: 0, tmax_payoff: 0 });
        }
        Some((i, b)) => (SEATS[i % 4], b),
    };
    let makes = spec.theta_of(declarer, profile) >= contract;
    let declarer_side = i64::from(contract) * if makes { 1 } else { -1 };
    let tmax_payoff = match declarer.team() {
        Player::Max => declarer_side,
        Player::Min => -declarer_side,
    };
    Ok(PlayOutcome { declarer: Some(declarer), contract, tmax_payoff })
}

/// Deterministic rollout of intended opening bids: on her first turn each
/// seat bids her intended number if it is legal and passes otherwise; from
/// the second turn on everyone passes. Returns the terminal sequence.
pub fn realized_sequence(n: Bid, intended: [Bid; 4]) -> BidSequence {
    let mut seq: Vec<Bid> = Vec::new();
    while !is_terminal(&seq, n) {
        let turn = seq.len();
        let bid = if turn < 4 {
            let want = intended[turn];
            let floor = last_nonzero(&seq).map(|(_, b)| b).unwrap_or(0);
            if want != 0 && want > floor && want <= n {
                want
            } else {
                0
            }
        } else {
            0
        };
        seq.push(bid);
    }
    BidSequence(seq)
}

/// Phase-1 outcome table: the Max-team payoff of every intended-bid
/// quadruple under every secret profile, `|H| * (n+1)^4` entries.
#[derive(Clone, Debug)]
pub struct OutcomeTable {
    pub n: Bid,
    pub profiles: Vec<Profile>,
    data: Vec<i64>,
}

impl OutcomeTable {
    pub fn entry_count(&self) -> u64 {
        self.data.len() as u64
    }

    pub fn payoff(&self, profile_index: usize, intended: [Bid; 4]) -> i64 {
        let w = self.n as usize + 1;
        let mut idx = profile_index;
        for b in intended {
            idx = idx * w + b as usize;
        }
        self.data[idx]
    }
}

/// Builds the outcome table by rolling out every intended-bid quadruple
/// under every profile.
pub fn outcome_table(spec: &BridgeSpec) -> Result<OutcomeTable, BridgeError> {
    spec.validate()?;
    let profiles = spec.profiles();
    let w = spec.n as usize + 1;
    let mut data = Vec::with_capacity(profiles.len() * w * w * w * w);
    for profile in &profiles {
        let mut intended = [0 as Bid; 4];
        loop {
            let seq = realized_sequence(spec.n, intended);
            let outcome = play_out(spec, profile, &seq)?;
            data.push(outcome.tmax_payoff);
            let mut k = 4;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                intended[k] += 1;
                if intended[k] <= spec.n {
                    break;
                }
                intended[k] = 0;
            }
            if intended == [0, 0, 0, 0] {
                break;
            }
        }
    }
    Ok(OutcomeTable { n: spec.n, profiles, data })
}

fn infoset_id(seat: Seat, secret: &str, seq: &[Bid]) -> String {
    let mut id = format!("{}:{}:", seat.letter(), secret);
    for (i, b) in seq.iter().enumerate() {
        if i > 0 {
            id.push('.');
        }
        id.push_str(&b.to_string());
    }
    id
}

/// Splits a compiled infoset id back into seat, secret and bid prefix.
pub fn parse_infoset_id(id: &str) -> Option<(Seat, &str, Vec<Bid>)> {
    let mut parts = id.splitn(3, ':');
    let seat = Seat::from_letter(parts.next()?.chars().next()?)?;
    let secret = parts.next()?;
    let seq_str = parts.next()?;
    let seq = if seq_str.is_empty() {
        Vec::new()
    } else {
        seq_str.split('.').map(|s| s.parse().ok()).collect::<Option<Vec<Bid>>>()?
    };
    Some((seat, secret, seq))
}

/// Compiles the bidding game to extensive form: a chance root deals each
/// positive-probability profile, below it the turn-taking bid tree, leaves
/// carry the Max-team payoff, and a seat's nodes share an infoset exactly
/// when her own secret and the public bid sequence agree. The two teams
/// are the game's two players.
pub fn compile(spec: &BridgeSpec) -> Result<GameTree, BridgeError> {
    spec.validate()?;
    let mut b = GameBuilder::new();
    let root = b.root_chance();
    for profile in spec.profiles() {
        let p = spec.prob_of(&profile);
        if p.is_zero() {
            continue;
        }
        // Iterative preorder expansion of the bid tree for this deal.
        let deal_root_seq: Vec<Bid> = Vec::new();
        let mut stack = vec![(deal_root_seq, None::<(crate::game::NodeId, Bid)>)];
        while let Some((seq, parent)) = stack.pop() {
            let (attach, edge): (crate::game::NodeId, crate::game::EdgeLabel) = match parent {
                None => (root, p.clone().into()),
                Some((node, bid)) => (node, bid.to_string().as_str().into()),
            };
            if is_terminal(&seq, spec.n) {
                let outcome = play_out(spec, &profile, &BidSequence(seq.clone()))?;
                b.leaf(attach, edge, rat(outcome.tmax_payoff));
                continue;
            }
            let seat = SEATS[seq.len() % 4];
            let secret = &spec.secrets[seat.index()][profile[seat.index()]];
            let id = infoset_id(seat, secret, &seq);
            let node = b.control(attach, edge, seat.team(), &id);
            // Push in reverse so children come out in ascending bid order.
            for &bid in legal_bids(&seq, spec.n).iter().rev() {
                let mut next = seq.clone();
                next.push(bid);
                stack.push((next, Some((node, bid))));
            }
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------
// Team solvers on the public bid tree.

/// Options for the team solvers.
#[derive(Clone, Copy, Debug)]
pub struct TeamSolveOptions {
    /// Ceiling on assignment enumeration work (and on the declared
    /// non-overbidding function space).
    pub budget: u64,
}

impl Default for TeamSolveOptions {
    fn default() -> Self {
        TeamSolveOptions { budget: 1_000_000_000 }
    }
}

/// Result of a team solver: the exact maxmin value and the bids chosen at
/// every reached (seat, secret, sequence) context.
#[derive(Clone, Debug)]
pub struct TeamSolveResult {
    pub value: Rational,
    /// Chosen bid per reached context of the Max team.
    pub max_bids: BTreeMap<(Seat, String, Vec<Bid>), Bid>,
    /// Min's best-response bids at reached contexts.
    pub min_bids: BTreeMap<(Seat, String, Vec<Bid>), Bid>,
    /// The declared non-overbidding function-pair space
    /// `(n+1)^(|H_N|+|H_S|) * (n+1)^(|H_E|+|H_W|)` in decimal; `None` for
    /// the unrestricted solver.
    pub enumeration_size: Option<String>,
    pub stats: SolveStats,
}

struct TeamDp<'a> {
    spec: &'a BridgeSpec,
    profiles: Vec<Profile>,
    weights: Vec<i128>,
    non_overbidding: bool,
    memo: BTreeMap<(Vec<Bid>, u64), i128>,
    work: u64,
    budget: u64,
}

impl TeamDp<'_> {
    fn terminal_value(&self, seq: &[Bid], support: u64) -> Result<i128, BridgeError> {
        let mut total: i128 = 0;
        for (i, profile) in self.profiles.iter().enumerate() {
            if support & (1 << i) == 0 {
                continue;
            }
            let outcome = play_out(self.spec, profile, &BidSequence(seq.to_vec()))?;
            let contrib = self.weights[i]
                .checked_mul(outcome.tmax_payoff as i128)
                .ok_or(BridgeError::Overflow)?;
            total = total.checked_add(contrib).ok_or(BridgeError::Overflow)?;
        }
        Ok(total)
    }

    /// Distinct secret indices of `seat` among live profiles.
    fn live_secrets(&self, seat: Seat, support: u64) -> Vec<usize> {
        let mut set = BTreeSet::new();
        for (i, profile) in self.profiles.iter().enumerate() {
            if support & (1 << i) != 0 {
                set.insert(profile[seat.index()]);
            }
        }
        set.into_iter().collect()
    }

    fn value(&mut self, seq: &[Bid], support: u64) -> Result<i128, BridgeError> {
        if support == 0 {
            return Ok(0);
        }
        if is_terminal(seq, self.spec.n) {
            return self.terminal_value(seq, support);
        }
        let key = (seq.to_vec(), support);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let seat = SEATS[seq.len() % 4];
        let first_turn = seq.len() < 4;
        let v = if self.non_overbidding && !first_turn {
            // Forced pass from the second turn on.
            let mut next = seq.to_vec();
            next.push(0);
            self.value(&next, support)?
        } else {
            let maximize = seat.team() == Player::Max;
            let secrets = self.live_secrets(seat, support);
            let bids = legal_bids(seq, self.spec.n);
            let mut best: Option<i128> = None;
            // Odometer over assignments secret -> bid, lexicographic.
            let mut pick = vec![0usize; secrets.len()];
            loop {
                self.work += 1;
                if self.work > self.budget {
                    return Err(BridgeError::BudgetExceeded {
                        size: self.work.to_string(),
                        budget: self.budget,
                    });
                }
                // Partition the support by the assigned bid.
                let mut parts: BTreeMap<Bid, u64> = BTreeMap::new();
                for (i, profile) in self.profiles.iter().enumerate() {
                    if support & (1 << i) == 0 {
                        continue;
                    }
                    let slot = secrets
                        .iter()
                        .position(|&s| s == profile[seat.index()])
                        .expect("live secret");
                    let bid = bids[pick[slot]];
                    *parts.entry(bid).or_insert(0) |= 1 << i;
                }
                let mut total: i128 = 0;
                for (bid, sub) in parts {
                    let mut next = seq.to_vec();
                    next.push(bid);
                    total = total
                        .checked_add(self.value(&next, sub)?)
                        .ok_or(BridgeError::Overflow)?;
                }
                let better = match best {
                    None => true,
                    Some(b) => {
                        if maximize {
                            total > b
                        } else {
                            total < b
                        }
                    }
                };
                if better {
                    best = Some(total);
                }
                // Advance the odometer.
                let mut k = secrets.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] < bids.len() {
                        break;
                    }
                    pick[k] = 0;
                }
                if pick.iter().all(|&x| x == 0) {
                    break;
                }
            }
            best.expect("at least the all-pass assignment")
        };
        self.memo.insert(key, v);
        Ok(v)
    }

    /// Replays the optimal play, recording the chosen bids per context.
    fn collect_witness(
        &mut self,
        seq: &[Bid],
        support: u64,
        max_bids: &mut BTreeMap<(Seat, String, Vec<Bid>), Bid>,
        min_bids: &mut BTreeMap<(Seat, String, Vec<Bid>), Bid>,
    ) -> Result<(), BridgeError> {
        if support == 0 || is_terminal(seq, self.spec.n) {
            return Ok(());
        }
        let seat = SEATS[seq.len() % 4];
        let first_turn = seq.len() < 4;
        let target = self.value(seq, support)?;
        let secrets = self.live_secrets(seat, support);
        let bids: Vec<Bid> = if self.non_overbidding && !first_turn {
            vec![0]
        } else {
            legal_bids(seq, self.spec.n)
        };
        // Find the lexicographically first assignment achieving the value.
        let mut pick = vec![0usize; secrets.len()];
        loop {
            let mut parts: BTreeMap<Bid, u64> = BTreeMap::new();
            for (i, profile) in self.profiles.iter().enumerate() {
                if support & (1 << i) == 0 {
                    continue;
                }
                let slot = secrets.iter().position(|&s| s == profile[seat.index()]).expect("live");
                *parts.entry(bids[pick[slot]]).or_insert(0) |= 1 << i;
            }
            let mut total: i128 = 0;
            for (bid, sub) in &parts {
                let mut next = seq.to_vec();
                next.push(*bid);
                total = total.checked_add(self.value(&next, *sub)?).ok_or(BridgeError::Overflow)?;
            }
            if total == target {
                let book = if seat.team() == Player::Max { &mut *max_bids } else { &mut *min_bids };
                for (slot, &secret) in secrets.iter().enumerate() {
                    let name = self.spec.secrets[seat.index()][secret].clone();
                    book.insert((seat, name, seq.to_vec()), bids[pick[slot]]);
                }
                for (bid, sub) in parts {
                    let mut next = seq.to_vec();
                    next.push(bid);
                    self.collect_witness(&next, sub, max_bids, min_bids)?;
                }
                return Ok(());
            }
            let mut k = secrets.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < bids.len() {
                    break;
                }
                pick[k] = 0;
            }
            if pick.iter().all(|&x| x == 0) {
                break;
            }
        }
        unreachable!("optimal assignment exists");
    }
}

fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    use num_bigint::Sign;
    fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }
    let g = gcd(a.clone(), b.clone());
    let l = (a / &g) * b;
    match l.sign() {
        Sign::Minus => -l,
        _ => l,
    }
}

fn team_solve(spec: &BridgeSpec, options: TeamSolveOptions, non_overbidding: bool) -> Result<TeamSolveResult, BridgeError> {
    spec.validate()?;
    let (profiles, probs): (Vec<Profile>, Vec<Rational>) = spec
        .profiles()
        .into_iter()
        .filter_map(|p| {
            let q = spec.prob_of(&p);
            (!q.is_zero()).then_some((p, q))
        })
        .unzip();
    if profiles.len() > 64 {
        return Err(BridgeError::TooManyProfiles { count: profiles.len() });
    }

    // Declared size of the non-overbidding function-pair enumeration.
    let secrets_total: u32 = spec.secrets.iter().map(|s| s.len() as u32).sum();
    let declared_size = BigInt::from(spec.n as u64 + 1).pow(secrets_total);
    if non_overbidding && declared_size > BigInt::from(options.budget) {
        return Err(BridgeError::BudgetExceeded {
            size: declared_size.to_string(),
            budget: options.budget,
        });
    }

    let denom = probs
        .iter()
        .fold(BigInt::one(), |acc, q| lcm_bigint(&acc, q.denom()));
    let weights: Vec<i128> = probs
        .iter()
        .map(|q| {
            let w = q.numer() * (&denom / q.denom());
            w.to_i128().ok_or(BridgeError::Overflow)
        })
        .collect::<Result<_, _>>()?;

    let mut dp = TeamDp {
        spec,
        profiles,
        weights,
        non_overbidding,
        memo: BTreeMap::new(),
        work: 0,
        budget: options.budget,
    };
    let full: u64 = if dp.profiles.len() == 64 { u64::MAX } else { (1u64 << dp.profiles.len()) - 1 };
    let scaled = dp.value(&[], full)?;
    let mut max_bids = BTreeMap::new();
    let mut min_bids = BTreeMap::new();
    dp.collect_witness(&[], full, &mut max_bids, &mut min_bids)?;
    let value = Rational::new(BigInt::from(scaled), denom);
    Ok(TeamSolveResult {
        value,
        max_bids,
        min_bids,
        enumeration_size: non_overbidding.then(|| declared_size.to_string()),
        stats: SolveStats { nodes_visited: dp.memo.len() as u64, candidates: dp.work },
    })
}

/// Exact maxmin over non-overbidding pure team strategies: every seat may
/// bid only on her first turn (as a function of her secret and the bids
/// seen so far) and must pass afterwards, on both teams. Computed by
/// support-partition dynamic programming over the public bid tree; the
/// declared function-space size is reported and checked against the
/// budget.
pub fn solve_non_overbidding(spec: &BridgeSpec, options: TeamSolveOptions) -> Result<TeamSolveResult, BridgeError> {
    team_solve(spec, options, true)
}

/// Exact maxmin over unrestricted pure team strategies of the compiled
/// game, computed by the same support-partition dynamic programming with
/// assignments at every turn.
pub fn solve_team_pure_maxmin(spec: &BridgeSpec, options: TeamSolveOptions) -> Result<TeamSolveResult, BridgeError> {
    team_solve(spec, options, false)
}

/// Extends a team solver witness to full pure strategies on the compiled
/// game: recorded contexts play their recorded bid, everything else
/// passes. Replaying them through the exact payoff reproduces the solver
/// value.
pub fn team_strategies(compiled: &GameTree, result: &TeamSolveResult) -> (PureStrategy, PureStrategy) {
    let mut max_strategy = PureStrategy::new();
    let mut min_strategy = PureStrategy::new();
    for (id, info) in compiled.infosets() {
        let (seat, secret, seq) = parse_infoset_id(id).expect("compiled infoset id");
        let book = if info.player == Player::Max { &result.max_bids } else { &result.min_bids };
        let bid = book
            .get(&(seat, secret.to_string(), seq))
            .copied()
            .unwrap_or(0);
        let target = if info.player == Player::Max { &mut max_strategy } else { &mut min_strategy };
        target.insert(id.clone(), bid.to_string());
    }
    (max_strategy, min_strategy)
}
