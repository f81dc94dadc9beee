//! Parsers and canonical printers for the text formats: game trees,
//! polynomials, quantified formulas, and bidding-game specifications.
//! Every parser round-trips bit-exactly through its canonical printer.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use efg_core::bridge::{Bid, BridgeSpec, Profile, Seat, SEATS};
use efg_core::game::{EdgeLabel, GameBuilder, GameTree, NodeKind, Player};
use efg_core::poly::{GeneralPoly, LiteralPoly, MultilinearPoly};
use efg_core::transforms::{FormulaText, Relation};
use efg_core::Rational;

/// A parse failure with its input position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError { line, message: message.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn parse_rational(s: &str, line: usize) -> Result<Rational, FormatError> {
    Rational::from_str(s).map_err(|_| FormatError::new(line, format!("bad rational {s:?}")))
}

// -------------------------------------------------------------------
// Game trees: one node per line, two-space indentation by depth.
// Node kinds: `C` (chance), `P1 I=<id>` / `P2 I=<id>` (control),
// `L u=<rational>` (leaf). Non-root lines carry the incoming edge:
// `p=<rational>` below a chance node, `a=<action>` below a control node.

/// Canonical text of a game tree.
pub fn print_game(game: &GameTree) -> String {
    let mut out = String::new();
    let mut stack = vec![(game.root(), 0usize)];
    while let Some((id, depth)) = stack.pop() {
        let node = game.node(id);
        out.push_str(&"  ".repeat(depth));
        match &node.kind {
            NodeKind::Chance => out.push('C'),
            NodeKind::Control { player, infoset } => {
                let tag = if *player == Player::Max { "P1" } else { "P2" };
                out.push_str(&format!("{tag} I={infoset}"));
            }
            NodeKind::Leaf { utility } => out.push_str(&format!("L u={utility}")),
        }
        match &node.incoming {
            None => {}
            Some(EdgeLabel::Chance(p)) => out.push_str(&format!(" p={p}")),
            Some(EdgeLabel::Action(a)) => out.push_str(&format!(" a={a}")),
        }
        out.push('\n');
        for child in node.children.iter().rev() {
            stack.push((*child, depth + 1));
        }
    }
    out
}

/// Parses the line-oriented game format.
pub fn parse_game(text: &str) -> Result<GameTree, FormatError> {
    let mut builder = GameBuilder::new();
    // Stack of (depth, node) along the current root path.
    let mut path: Vec<(usize, efg_core::game::NodeId)> = Vec::new();
    let mut saw_root = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let stripped = raw.trim_start_matches(' ');
        let spaces = raw.len() - stripped.len();
        if spaces % 2 != 0 {
            return Err(FormatError::new(line_no, "odd indentation"));
        }
        let depth = spaces / 2;
        let mut kind: Option<&str> = None;
        let mut infoset: Option<&str> = None;
        let mut utility: Option<Rational> = None;
        let mut edge: Option<EdgeLabel> = None;
        for token in stripped.split_whitespace() {
            match token {
                "C" | "P1" | "P2" | "L" => {
                    if kind.replace(token).is_some() {
                        return Err(FormatError::new(line_no, "two node kinds on one line"));
                    }
                }
                _ => {
                    let (key, value) = token
                        .split_once('=')
                        .ok_or_else(|| FormatError::new(line_no, format!("bad token {token:?}")))?;
                    match key {
                        "I" => infoset = Some(value),
                        "u" => utility = Some(parse_rational(value, line_no)?),
                        "p" => {
                            if edge.replace(EdgeLabel::Chance(parse_rational(value, line_no)?)).is_some() {
                                return Err(FormatError::new(line_no, "two edge annotations"));
                            }
                        }
                        "a" => {
                            if edge.replace(EdgeLabel::Action(value.to_string())).is_some() {
                                return Err(FormatError::new(line_no, "two edge annotations"));
                            }
                        }
                        _ => return Err(FormatError::new(line_no, format!("unknown key {key:?}"))),
                    }
                }
            }
        }
        let kind = kind.ok_or_else(|| FormatError::new(line_no, "missing node kind"))?;

        if depth == 0 {
            if saw_root {
                return Err(FormatError::new(line_no, "second root"));
            }
            if edge.is_some() {
                return Err(FormatError::new(line_no, "root cannot carry an edge annotation"));
            }
            saw_root = true;
        } else {
            if !saw_root {
                return Err(FormatError::new(line_no, "first line must be the unindented root"));
            }
            while let Some((d, _)) = path.last() {
                if *d >= depth {
                    path.pop();
                } else {
                    break;
                }
            }
            match path.last() {
                Some((d, _)) if *d == depth - 1 => {}
                _ => return Err(FormatError::new(line_no, "indentation skips a level")),
            }
            if edge.is_none() {
                return Err(FormatError::new(line_no, "non-root line needs p= or a="));
            }
        }
        let parent = path.last().map(|(_, id)| *id);
        let node = match (kind, parent, edge) {
            ("C", None, _) => builder.root_chance(),
            ("C", Some(p), Some(e)) => builder.chance(p, e),
            ("L", None, _) => {
                let u = utility.ok_or_else(|| FormatError::new(line_no, "leaf needs u="))?;
                builder.root_leaf(u)
            }
            ("L", Some(p), Some(e)) => {
                let u = utility.ok_or_else(|| FormatError::new(line_no, "leaf needs u="))?;
                builder.leaf(p, e, u)
            }
            ("P1", parent, edge) | ("P2", parent, edge) => {
                let player = if kind == "P1" { Player::Max } else { Player::Min };
                let id = infoset.ok_or_else(|| FormatError::new(line_no, "control node needs I="))?;
                match (parent, edge) {
                    (None, _) => builder.root_control(player, id),
                    (Some(p), Some(e)) => builder.control(p, e, player, id),
                    _ => unreachable!("non-root edge checked above"),
                }
            }
            _ => unreachable!("edge presence checked above"),
        };
        path.push((depth, node));
    }
    if !saw_root {
        return Err(FormatError::new(1, "empty game"));
    }
    Ok(builder.finish())
}

// -------------------------------------------------------------------
// Polynomials: `3*x^2 + 5*x*y - 8*y^2 - 1` with complements written
// `~x`. Parsed into a literal polynomial with repetitions, which projects
// onto the general or multilinear forms.

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | ':' | '|' | '-')
}

struct PolyLexer<'a> {
    rest: &'a str,
}

impl<'a> PolyLexer<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.rest.chars().next()?;
        self.rest = &self.rest[c.len_utf8()..];
        Some(c)
    }

    fn number(&mut self) -> Option<String> {
        self.skip_ws();
        let end = self
            .rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit() && *c != '/')
            .map(|(i, _)| i)
            .unwrap_or(self.rest.len());
        if end == 0 {
            return None;
        }
        let (tok, rest) = self.rest.split_at(end);
        self.rest = rest;
        Some(tok.to_string())
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let first = self.rest.chars().next()?;
        if !first.is_ascii_alphabetic() && first != '_' {
            return None;
        }
        let end = self
            .rest
            .char_indices()
            .find(|(_, c)| !is_ident_char(*c))
            .map(|(i, _)| i)
            .unwrap_or(self.rest.len());
        let (tok, rest) = self.rest.split_at(end);
        self.rest = rest;
        Some(tok.to_string())
    }
}

/// Parses the polynomial grammar into a literal polynomial; exponents
/// become repeated literals.
pub fn parse_poly(text: &str) -> Result<LiteralPoly, FormatError> {
    let mut lex = PolyLexer { rest: text };
    let mut out = LiteralPoly::zero();
    let mut sign = match lex.peek() {
        Some('-') => {
            lex.bump();
            -1i64
        }
        Some('+') => {
            lex.bump();
            1
        }
        _ => 1,
    };
    let err = |lex: &PolyLexer, msg: &str| FormatError::new(1, format!("{msg} near {:?}", lex.rest.chars().take(12).collect::<String>()));
    loop {
        // One term: factors joined by '*'.
        let mut coeff = efg_core::rat(sign);
        let mut literals: Vec<(String, bool)> = Vec::new();
        loop {
            match lex.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let tok = lex.number().unwrap();
                    coeff *= parse_rational(&tok, 1)?;
                }
                Some('~') => {
                    lex.bump();
                    let name = lex.ident().ok_or_else(|| err(&lex, "expected variable after ~"))?;
                    let reps = exponent(&mut lex)?;
                    for _ in 0..reps {
                        literals.push((name.clone(), false));
                    }
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = lex.ident().unwrap();
                    let reps = exponent(&mut lex)?;
                    for _ in 0..reps {
                        literals.push((name.clone(), true));
                    }
                }
                _ => return Err(err(&lex, "expected a factor")),
            }
            match lex.peek() {
                Some('*') => {
                    lex.bump();
                }
                _ => break,
            }
        }
        out.add_term(coeff, literals);
        match lex.peek() {
            None => return Ok(out),
            Some('+') => {
                lex.bump();
                sign = 1;
            }
            Some('-') => {
                lex.bump();
                sign = -1;
            }
            _ => return Err(err(&lex, "expected + or -")),
        }
    }
}

fn exponent(lex: &mut PolyLexer) -> Result<u32, FormatError> {
    if lex.peek() == Some('^') {
        lex.bump();
        let tok = lex
            .number()
            .ok_or_else(|| FormatError::new(1, "expected exponent after ^"))?;
        tok.parse::<u32>()
            .map_err(|_| FormatError::new(1, format!("bad exponent {tok:?}")))
    } else {
        Ok(1)
    }
}

/// Parses a polynomial and projects it onto the plain (exponent) form.
pub fn parse_general_poly(text: &str) -> Result<GeneralPoly, FormatError> {
    Ok(parse_poly(text)?.expand())
}

/// Parses a polynomial and projects it onto the multilinear form; terms
/// that repeat a variable are rejected.
pub fn parse_multilinear_poly(text: &str) -> Result<MultilinearPoly, FormatError> {
    parse_poly(text)?
        .to_multilinear()
        .map_err(|e| FormatError::new(1, e.to_string()))
}

// -------------------------------------------------------------------
// Quantified formulas, e.g.
// `exists x y z. forall w. (0 <= w & w <= 1) -> (w*x >= 0)`
// `exists x. (0 <= x & x <= 1) & (x*~x >= 0)`

/// Parses the formula grammar back into its structured form.
pub fn parse_formula(text: &str) -> Result<FormulaText, FormatError> {
    let fail = |msg: &str| FormatError::new(1, msg.to_string());
    let mut rest = text.trim();
    let mut exists: Vec<String> = Vec::new();
    let mut forall: Vec<String> = Vec::new();
    if let Some(r) = rest.strip_prefix("exists ") {
        let (vars, tail) = r.split_once('.').ok_or_else(|| fail("missing '.' after exists block"))?;
        exists = vars.split_whitespace().map(|s| s.to_string()).collect();
        rest = tail.trim_start();
    }
    if let Some(r) = rest.strip_prefix("forall ") {
        let (vars, tail) = r.split_once('.').ok_or_else(|| fail("missing '.' after forall block"))?;
        forall = vars.split_whitespace().map(|s| s.to_string()).collect();
        rest = tail.trim_start();
    }
    // Domain block, when quantifiers are present.
    if !exists.is_empty() || !forall.is_empty() {
        let close = rest.find(')').ok_or_else(|| fail("missing domain block"))?;
        let domain = &rest[..close + 1];
        let expected: Vec<&String> = if forall.is_empty() { exists.iter().collect() } else { forall.iter().collect() };
        let mut constraints = domain
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split('&')
            .map(|s| s.trim());
        for v in expected {
            let lo = constraints.next().ok_or_else(|| fail("missing lower bound"))?;
            let hi = constraints.next().ok_or_else(|| fail("missing upper bound"))?;
            if lo != format!("0 <= {v}") || hi != format!("{v} <= 1") {
                return Err(fail(&format!("bad domain constraint for {v}")));
            }
        }
        rest = rest[close + 1..].trim_start();
        let connective = if forall.is_empty() { "&" } else { "->" };
        rest = rest
            .strip_prefix(connective)
            .ok_or_else(|| fail("domain must be followed by the connective"))?
            .trim_start();
    }
    let body = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| fail("matrix must be parenthesized"))?;
    let (relation, split_at) = if let Some(i) = body.find(">=") {
        (Relation::Ge, i)
    } else if let Some(i) = body.find('>') {
        (Relation::Gt, i)
    } else {
        return Err(fail("missing relation"));
    };
    let matrix = parse_poly(body[..split_at].trim())?;
    let threshold_str = body[split_at..].trim_start_matches(['>', '=']).trim();
    let threshold = parse_rational(threshold_str, 1)?;
    Ok(FormulaText { exists, forall, matrix, relation, threshold })
}

// -------------------------------------------------------------------
// Bidding-game specifications.

/// Canonical text of a bidding-game specification: header, secret lists,
/// positive probabilities, and nonzero table entries, all in seat and
/// profile order.
pub fn print_bridge_spec(spec: &BridgeSpec) -> String {
    let mut out = format!("n={} m={}\n", spec.n, spec.m);
    for seat in SEATS {
        out.push_str(&format!("secrets {seat}:"));
        for s in &spec.secrets[seat.index()] {
            out.push_str(&format!(" {s}"));
        }
        out.push('\n');
    }
    let profile_names = |p: &Profile| -> String {
        SEATS
            .iter()
            .map(|s| spec.secrets[s.index()][p[s.index()]].clone())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for profile in spec.profiles() {
        let q = spec.prob_of(&profile);
        if !num_traits::Zero::is_zero(&q) {
            out.push_str(&format!("prob {} = {}\n", profile_names(&profile), q));
        }
    }
    for seat in SEATS {
        for profile in spec.profiles() {
            let v = spec.theta_of(seat, &profile);
            if v != 0 {
                out.push_str(&format!("theta {seat} {} = {}\n", profile_names(&profile), v));
            }
        }
    }
    out
}

/// Parses the bidding-game specification format.
pub fn parse_bridge_spec(text: &str) -> Result<BridgeSpec, FormatError> {
    let mut n: Option<Bid> = None;
    let mut m: Option<Bid> = None;
    let mut secrets: [Vec<String>; 4] = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    let mut dist: BTreeMap<Profile, Rational> = BTreeMap::new();
    let mut theta: [BTreeMap<Profile, Bid>; 4] = [BTreeMap::new(), BTreeMap::new(), BTreeMap::new(), BTreeMap::new()];

    let seat_of = |tok: &str, line: usize| -> Result<Seat, FormatError> {
        tok.chars()
            .next()
            .and_then(Seat::from_letter)
            .filter(|_| tok.len() == 1)
            .ok_or_else(|| FormatError::new(line, format!("bad seat {tok:?}")))
    };

    let lookup_profile = |secrets: &[Vec<String>; 4], names: &[&str], line: usize| -> Result<Profile, FormatError> {
        if names.len() != 4 {
            return Err(FormatError::new(line, "expected four secret names"));
        }
        let mut profile = [0usize; 4];
        for (i, name) in names.iter().enumerate() {
            profile[i] = secrets[i]
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| FormatError::new(line, format!("unknown secret {name:?} for {}", SEATS[i])))?;
        }
        Ok(profile)
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("n=") {
            for part in line.split_whitespace() {
                if let Some(v) = part.strip_prefix("n=") {
                    n = Some(v.parse().map_err(|_| FormatError::new(line_no, "bad n"))?);
                } else if let Some(v) = part.strip_prefix("m=") {
                    m = Some(v.parse().map_err(|_| FormatError::new(line_no, "bad m"))?);
                } else {
                    return Err(FormatError::new(line_no, format!("unexpected token {part:?}")));
                }
            }
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("secrets") => {
                let seat_tok = words.next().ok_or_else(|| FormatError::new(line_no, "missing seat"))?;
                let seat = seat_of(seat_tok.trim_end_matches(':'), line_no)?;
                secrets[seat.index()] = words.map(|w| w.to_string()).collect();
                if secrets[seat.index()].is_empty() {
                    return Err(FormatError::new(line_no, "empty secret list"));
                }
            }
            Some("prob") => {
                let rest: Vec<&str> = words.collect();
                let eq = rest
                    .iter()
                    .position(|w| *w == "=")
                    .ok_or_else(|| FormatError::new(line_no, "missing '='"))?;
                let profile = lookup_profile(&secrets, &rest[..eq], line_no)?;
                let value = rest
                    .get(eq + 1)
                    .ok_or_else(|| FormatError::new(line_no, "missing probability"))?;
                dist.insert(profile, parse_rational(value, line_no)?);
            }
            Some("theta") => {
                let rest: Vec<&str> = words.collect();
                if rest.is_empty() {
                    return Err(FormatError::new(line_no, "missing seat"));
                }
                let seat = seat_of(rest[0], line_no)?;
                let eq = rest
                    .iter()
                    .position(|w| *w == "=")
                    .ok_or_else(|| FormatError::new(line_no, "missing '='"))?;
                let profile = lookup_profile(&secrets, &rest[1..eq], line_no)?;
                let value: Bid = rest
                    .get(eq + 1)
                    .ok_or_else(|| FormatError::new(line_no, "missing value"))?
                    .parse()
                    .map_err(|_| FormatError::new(line_no, "bad table value"))?;
                theta[seat.index()].insert(profile, value);
            }
            Some(other) => return Err(FormatError::new(line_no, format!("unknown directive {other:?}"))),
            None => {}
        }
    }
    let n = n.ok_or_else(|| FormatError::new(1, "missing n="))?;
    let m = m.ok_or_else(|| FormatError::new(1, "missing m="))?;
    Ok(BridgeSpec { secrets, dist, theta, n, m })
}
