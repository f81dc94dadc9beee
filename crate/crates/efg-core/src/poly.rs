//! Multilinear polynomials over variables and their complements, the
//! equivalence by full expansion, cancellation analysis, disconnected
//! x-decompositions, and polynomial-time perfect-recall detection.
//!
//! Three polynomial carriers live here:
//!
//! * [`MultilinearPoly`] — terms over literals `x` / `~x`, at most one
//!   literal per variable and never a variable with its complement.
//! * [`GeneralPoly`] — plain multivariate polynomials with exponents;
//!   input to the polynomial-to-game construction.
//! * [`LiteralPoly`] — sums of products of literals with repetition
//!   allowed; the raw shape of a game's payoff polynomial.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Errors raised by polynomial operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolyError {
    /// `cancels(f, x, x, b)` is undefined.
    SelfCancellation(String),
    /// An evaluation point misses a variable.
    MissingAssignment(String),
    /// A literal polynomial is not multilinear: some term repeats `var`
    /// or mixes it with its complement.
    NotMultilinear { var: String },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::SelfCancellation(x) => write!(f, "self-cancellation undefined for variable {x:?}"),
            PolyError::MissingAssignment(x) => write!(f, "evaluation point misses variable {x:?}"),
            PolyError::NotMultilinear { var } => {
                write!(f, "not multilinear: variable {var:?} repeated within a term")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// Literal set of a multilinear term: variable -> `true` for the plain
/// variable, `false` for its complement.
pub type Literals = BTreeMap<String, bool>;

/// A multilinear polynomial over variables and their complements. Kept in
/// canonical form: distinct literal sets, no zero coefficients, terms
/// ordered by literal set.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultilinearPoly {
    terms: BTreeMap<Literals, Rational>,
}

impl MultilinearPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(c, Literals::new());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Literals)>) -> Self {
        let mut p = Self::zero();
        for (c, lits) in terms {
            p.add_term(c, lits);
        }
        p
    }

    /// Adds `c * lits`, collecting like terms and dropping zeros.
    pub fn add_term(&mut self, c: Rational, lits: Literals) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lits).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-borrow to remove; keys are small.
            let dead: Vec<Literals> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Literals, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient (term with empty literal set).
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Literals::new()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Variables occurring in some term.
    pub fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|lits| lits.keys().cloned()).collect()
    }

    pub fn is_complement_free(&self) -> bool {
        self.terms.keys().all(|lits| lits.values().all(|&pos| pos))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (lits, c) in &other.terms {
            out.add_term(c.clone(), lits.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Rewrites every complement literal via `~x = 1 - x` and collects like
    /// terms; the result is complement-free and canonical.
    pub fn full_expand(&self) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero();
        for (lits, c) in &self.terms {
            let pos: Vec<&String> = lits.iter().filter(|(_, p)| **p).map(|(v, _)| v).collect();
            let neg: Vec<&String> = lits.iter().filter(|(_, p)| !**p).map(|(v, _)| v).collect();
            // prod(x in pos) * prod((1 - y) for y in neg): expand over the
            // subsets of neg that contribute the -y factor.
            for mask in 0u64..(1u64 << neg.len()) {
                let mut term: Literals = pos.iter().map(|v| ((*v).clone(), true)).collect();
                let mut coeff = c.clone();
                for (i, y) in neg.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        coeff = -coeff;
                        term.insert((*y).clone(), true);
                    }
                }
                out.add_term(coeff, term);
            }
        }
        out
    }

    /// Substitutes `x := b` (and `~x := 1-b`); the result no longer
    /// mentions `x`.
    pub fn substitute(&self, x: &str, b: bool) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero();
        for (lits, c) in &self.terms {
            match lits.get(x) {
                None => out.add_term(c.clone(), lits.clone()),
                Some(&positive) => {
                    // Literal value: x = b, ~x = !b.
                    if positive == b {
                        let mut rest = lits.clone();
                        rest.remove(x);
                        out.add_term(c.clone(), rest);
                    }
                    // A false literal kills the term.
                }
            }
        }
        out
    }

    /// Value at a point, complements read as `1 - x`. Exact.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (lits, c) in &self.terms {
            let mut prod = c.clone();
            for (v, positive) in lits {
                let x = point.get(v).ok_or_else(|| PolyError::MissingAssignment(v.clone()))?;
                prod *= if *positive { x.clone() } else { Rational::one() - x };
            }
            total += prod;
        }
        Ok(total)
    }
}

/// `f ≡ g`: eliminating complements from both gives the same full
/// expansion.
pub fn equivalent(f: &MultilinearPoly, g: &MultilinearPoly) -> bool {
    f.full_expand() == g.full_expand()
}

/// Does substituting `x = b` in `f` remove every `y`-term? Works on the
/// full expansion, which the cancellation relation is invariant under.
pub fn cancels(f: &MultilinearPoly, x: &str, y: &str, b: bool) -> Result<bool, PolyError> {
    if x == y {
        return Err(PolyError::SelfCancellation(x.to_owned()));
    }
    Ok(!f.full_expand().substitute(x, b).vars().contains(y))
}

/// A rewriting of `f` as `x*f0 + ~x*f1 + f2` with `x` absent from all
/// parts. `disconnected` iff the parts' variable sets are pairwise
/// disjoint; in that case the variable sets equal the cancellation sets of
/// the pivot.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pivot: String,
    pub f0: MultilinearPoly,
    pub f1: MultilinearPoly,
    pub f2: MultilinearPoly,
    pub disconnected: bool,
    /// For a connected result: which variable blocks the split.
    pub diagnostic: Option<String>,
}

impl Decomposition {
    /// `x*f0 + ~x*f1 + f2`, as a polynomial.
    pub fn recombine(&self) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero();
        for (lits, c) in self.f0.terms() {
            let mut l = lits.clone();
            l.insert(self.pivot.clone(), true);
            out.add_term(c.clone(), l);
        }
        for (lits, c) in self.f1.terms() {
            let mut l = lits.clone();
            l.insert(self.pivot.clone(), false);
            out.add_term(c.clone(), l);
        }
        out = out.add(&self.f2);
        out
    }

    pub fn part_vars(&self) -> [BTreeSet<String>; 3] {
        [self.f0.vars(), self.f1.vars(), self.f2.vars()]
    }
}

/// Builds the candidate disconnected x-decomposition of `f`: the variable
/// sets are the cancellation sets of the pivot, and the terms of the full
/// expansion are grouped accordingly. When grouping is infeasible the flag
/// is false and the returned parts are the syntactic grouping of `f`'s own
/// terms by their `x` / `~x` literal.
pub fn x_decomposition(f: &MultilinearPoly, x: &str) -> Decomposition {
    let h = f.full_expand();
    let others: BTreeSet<String> = {
        let mut v = h.vars();
        v.remove(x);
        v
    };

    if others.is_empty() {
        // Single-variable (or constant) polynomial: split by endpoint
        // values, matching the base game construction.
        return Decomposition {
            pivot: x.to_owned(),
            f0: MultilinearPoly::constant(h.substitute(x, true).constant_term()),
            f1: MultilinearPoly::constant(h.substitute(x, false).constant_term()),
            f2: MultilinearPoly::zero(),
            disconnected: true,
            diagnostic: None,
        };
    }

    // h = x*A + B with A, B complement-free and x-free.
    let mut a = MultilinearPoly::zero();
    let mut b = MultilinearPoly::zero();
    for (lits, c) in h.terms() {
        if lits.contains_key(x) {
            let mut rest = lits.clone();
            rest.remove(x);
            a.add_term(c.clone(), rest);
        } else {
            b.add_term(c.clone(), lits.clone());
        }
    }

    let c0: BTreeSet<String> = others.difference(&b.vars()).cloned().collect();
    let c1: BTreeSet<String> = others.difference(&a.add(&b).vars()).cloned().collect();

    let infeasible = |diag: String| {
        // Fall back to the syntactic grouping of f's own terms.
        let mut f0 = MultilinearPoly::zero();
        let mut f1 = MultilinearPoly::zero();
        let mut f2 = MultilinearPoly::zero();
        for (lits, c) in f.terms() {
            match lits.get(x) {
                Some(true) => {
                    let mut rest = lits.clone();
                    rest.remove(x);
                    f0.add_term(c.clone(), rest);
                }
                Some(false) => {
                    let mut rest = lits.clone();
                    rest.remove(x);
                    f1.add_term(c.clone(), rest);
                }
                None => f2.add_term(c.clone(), lits.clone()),
            }
        }
        Decomposition {
            pivot: x.to_owned(),
            f0,
            f1,
            f2,
            disconnected: false,
            diagnostic: Some(diag),
        }
    };

    // Group: A-terms over c0 (or constant) go to f0, A-terms over c1 are
    // the negated f1, everything left in B outside c1 is f2.
    let mut f0 = MultilinearPoly::zero();
    let mut f1 = MultilinearPoly::zero();
    let mut f2 = MultilinearPoly::zero();
    for (lits, c) in a.terms() {
        let vars: BTreeSet<&String> = lits.keys().collect();
        if vars.is_empty() || vars.iter().all(|v| c0.contains(*v)) {
            f0.add_term(c.clone(), lits.clone());
        } else if vars.iter().all(|v| c1.contains(*v)) {
            f1.add_term(-c.clone(), lits.clone());
        } else {
            let blocker = vars
                .iter()
                .find(|v| !c0.contains(**v) && !c1.contains(**v))
                .map(|v| (*v).clone())
                .unwrap_or_else(|| (*vars.iter().next().unwrap()).clone());
            return infeasible(format!("not disconnected due to variable {blocker}"));
        }
    }
    for (lits, c) in b.terms() {
        let vars: BTreeSet<&String> = lits.keys().collect();
        if !vars.is_empty() && vars.iter().all(|v| c1.contains(*v)) {
            // Paired against -x * (same term); consumed by f1 above.
            continue;
        }
        if vars.iter().any(|v| c1.contains(*v)) {
            let blocker = vars.iter().find(|v| !c1.contains(**v)).unwrap();
            return infeasible(format!("not disconnected due to variable {blocker}"));
        }
        f2.add_term(c.clone(), lits.clone());
    }
    debug_assert!(
        {
            let d = Decomposition {
                pivot: x.to_owned(),
                f0: f0.clone(),
                f1: f1.clone(),
                f2: f2.clone(),
                disconnected: true,
                diagnostic: None,
            };
            equivalent(&d.recombine(), f)
        },
        "grouped decomposition must recombine to f"
    );
    Decomposition {
        pivot: x.to_owned(),
        f0,
        f1,
        f2,
        disconnected: true,
        diagnostic: None,
    }
}

/// Witness tree of a perfect-recall polynomial: a disconnected
/// decomposition at each level down to single-variable pieces.
#[derive(Clone, Debug)]
pub enum DecompositionTree {
    /// At most one variable: perfect recall by definition.
    Leaf(MultilinearPoly),
    Split {
        decomposition: Decomposition,
        parts: alloc::boxed::Box<[DecompositionTree; 3]>,
    },
}

/// Outcome of perfect-recall detection.
#[derive(Clone, Debug)]
pub enum PerfectRecall {
    Yes(DecompositionTree),
    /// The first sub-polynomial admitting no disconnected decomposition.
    No { failing: MultilinearPoly },
}

impl PerfectRecall {
    pub fn is_perfect(&self) -> bool {
        matches!(self, PerfectRecall::Yes(_))
    }
}

fn detect(h: &MultilinearPoly) -> PerfectRecall {
    let vars = h.vars();
    if vars.len() <= 1 {
        return PerfectRecall::Yes(DecompositionTree::Leaf(h.clone()));
    }
    // First disconnected decomposition in canonical variable order
    // suffices: every disconnected decomposition of a perfect-recall
    // polynomial has perfect-recall parts.
    for x in &vars {
        let d = x_decomposition(h, x);
        if !d.disconnected {
            continue;
        }
        let mut parts = Vec::with_capacity(3);
        for part in [&d.f0, &d.f1, &d.f2] {
            match detect(&part.full_expand()) {
                PerfectRecall::Yes(t) => parts.push(t),
                no @ PerfectRecall::No { .. } => return no,
            }
        }
        let parts: [DecompositionTree; 3] = match parts.try_into() {
            Ok(p) => p,
            Err(_) => unreachable!(),
        };
        return PerfectRecall::Yes(DecompositionTree::Split {
            decomposition: d,
            parts: alloc::boxed::Box::new(parts),
        });
    }
    PerfectRecall::No { failing: h.clone() }
}

/// Decides whether `f` has perfect recall: polynomials over at most one
/// variable do; otherwise some pivot must admit a disconnected
/// decomposition whose three parts all have perfect recall. Runs in time
/// polynomial in term count and the square of the variable count.
pub fn is_perfect_recall(f: &MultilinearPoly) -> PerfectRecall {
    detect(&f.full_expand())
}

/// A plain multivariate polynomial: terms map monomials (variable ->
/// positive exponent) to coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GeneralPoly {
    terms: BTreeMap<BTreeMap<String, u32>, Rational>,
}

impl GeneralPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(c, BTreeMap::new());
        p
    }

    pub fn var(x: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(Rational::one(), BTreeMap::from([(x.to_owned(), 1)]));
        p
    }

    pub fn add_term(&mut self, c: Rational, monomial: BTreeMap<String, u32>) {
        if c.is_zero() {
            return;
        }
        debug_assert!(monomial.values().all(|&e| e > 0));
        let entry = self.terms.entry(monomial).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            let dead: Vec<_> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BTreeMap<String, u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    /// Largest total degree over the terms.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.values().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(c1 * c2, m);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for (v, e) in m {
                let x = point.get(v).ok_or_else(|| PolyError::MissingAssignment(v.clone()))?;
                for _ in 0..*e {
                    prod *= x;
                }
            }
            total += prod;
        }
        Ok(total)
    }
}

/// One literal: a variable or its complement.
pub type Literal = (String, bool);

/// A sum of coefficient-scaled products of literals where a variable may
/// repeat within a term (for example `x*~x`). This is the raw payoff
/// polynomial of a game; multilinear and general forms are projections.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LiteralPoly {
    /// Sorted literal multiset -> coefficient.
    terms: BTreeMap<Vec<Literal>, Rational>,
}

impl LiteralPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, c: Rational, mut literals: Vec<Literal>) {
        if c.is_zero() {
            return;
        }
        // Canonical order inside a term: by variable, plain before complement.
        literals.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let entry = self.terms.entry(literals).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            let dead: Vec<_> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Literal>, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|t| t.iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn from_multilinear(f: &MultilinearPoly) -> Self {
        let mut out = Self::zero();
        for (lits, c) in f.terms() {
            out.add_term(c.clone(), lits.iter().map(|(v, p)| (v.clone(), *p)).collect());
        }
        out
    }

    /// Reads the terms as multilinear literal sets; fails if any term
    /// repeats a variable (with or without complement).
    pub fn to_multilinear(&self) -> Result<MultilinearPoly, PolyError> {
        let mut out = MultilinearPoly::zero();
        for (term, c) in &self.terms {
            let mut lits = Literals::new();
            for (v, p) in term {
                if lits.insert(v.clone(), *p).is_some() {
                    return Err(PolyError::NotMultilinear { var: v.clone() });
                }
            }
            out.add_term(c.clone(), lits);
        }
        Ok(out)
    }

    /// Expands every complement as `1 - x` into a plain polynomial with
    /// exponents.
    pub fn expand(&self) -> GeneralPoly {
        let mut out = GeneralPoly::zero();
        for (term, c) in &self.terms {
            let neg_count = term.iter().filter(|(_, p)| !p).count();
            let negs: Vec<&String> = term.iter().filter(|(_, p)| !p).map(|(v, _)| v).collect();
            let pos: Vec<&String> = term.iter().filter(|(_, p)| *p).map(|(v, _)| v).collect();
            debug_assert!(neg_count <= 63);
            for mask in 0u64..(1u64 << negs.len()) {
                let mut mono: BTreeMap<String, u32> = BTreeMap::new();
                for v in &pos {
                    *mono.entry((*v).clone()).or_insert(0) += 1;
                }
                let mut coeff = c.clone();
                for (i, v) in negs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        coeff = -coeff;
                        *mono.entry((*v).clone()).or_insert(0) += 1;
                    }
                }
                out.add_term(coeff, mono);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (term, c) in &self.terms {
            let mut prod = c.clone();
            for (v, positive) in term {
                let x = point.get(v).ok_or_else(|| PolyError::MissingAssignment(v.clone()))?;
                prod *= if *positive { x.clone() } else { Rational::one() - x };
            }
            total += prod;
        }
        Ok(total)
    }
}

fn fmt_coefficient(f: &mut fmt::Formatter<'_>, c: &Rational, leading: bool, has_factors: bool) -> fmt::Result {
    let abs = c.abs();
    if leading {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if !abs.is_one() || !has_factors {
        write!(f, "{abs}")?;
        if has_factors {
            write!(f, "*")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lits, c)) in self.terms.iter().enumerate() {
            fmt_coefficient(f, c, i == 0, !lits.is_empty())?;
            for (j, (v, positive)) in lits.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                if !positive {
                    write!(f, "~")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            fmt_coefficient(f, c, i == 0, !mono.is_empty())?;
            for (j, (v, e)) in mono.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{v}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LiteralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (term, c)) in self.terms.iter().enumerate() {
            fmt_coefficient(f, c, i == 0, !term.is_empty())?;
            for (j, (v, positive)) in term.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                if !positive {
                    write!(f, "~")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::testutil::ml;
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn full_expand_rewrites_complements() {
        assert_eq!(ml("y*~x").full_expand(), ml("y - y*x"));
        assert_eq!(ml("y*~x + x").full_expand(), ml("y + x*~y").full_expand());
        assert_eq!(ml("x").full_expand(), ml("x"));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&ml("y - y*x"), &ml("y*~x")));
        let f = ml("3*x*y - 2*~z");
        assert!(equivalent(&f, &f));
        assert!(!equivalent(&ml("x"), &ml("~x")));
    }

    #[test]
    fn cancellation_examples() {
        let f = ml("x*y");
        assert!(cancels(&f, "x", "y", false).unwrap());
        assert!(!cancels(&f, "x", "y", true).unwrap());

        let g = ml("x*y + ~x*~y");
        assert!(!cancels(&g, "x", "y", false).unwrap());
        assert!(!cancels(&g, "x", "y", true).unwrap());

        let h = ml("x*y*z + 4*~x*y + 5*~w");
        assert!(cancels(&h, "x", "z", false).unwrap());
        assert!(!cancels(&h, "x", "z", true).unwrap());

        assert_eq!(
            cancels(&f, "x", "x", false),
            Err(PolyError::SelfCancellation("x".into()))
        );
    }

    #[test]
    fn cancellation_is_invariant_under_expansion() {
        let f = ml("x*y*z + 4*~x*y + 5*~w");
        let g = f.full_expand();
        for x in ["x", "y", "z", "w"] {
            for y in ["x", "y", "z", "w"] {
                if x == y {
                    continue;
                }
                for b in [false, true] {
                    assert_eq!(cancels(&f, x, y, b).unwrap(), cancels(&g, x, y, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn decomposition_blocked_by_shared_variable() {
        // Full expansion of x*y*z + 4*~x*y + 5*~w.
        let f = ml("x*y*z + 4*y - 4*x*y + 5 - 5*w");
        let d = x_decomposition(&f, "x");
        assert!(!d.disconnected);
        assert!(d.diagnostic.as_deref().unwrap().contains('y'));
        // The fallback grouping is still a valid x-decomposition.
        assert!(equivalent(&d.recombine(), &f));
    }

    #[test]
    fn decomposition_by_cancellation_sets() {
        let f = ml("x*y*z + 4*y - 4*x*y + 5 - 5*w");
        let d = x_decomposition(&f, "y");
        assert!(d.disconnected);
        let [v0, v1, v2] = d.part_vars();
        assert_eq!(v0, BTreeSet::from(["x".to_string(), "z".to_string()]));
        assert!(v1.is_empty());
        assert_eq!(v2, BTreeSet::from(["w".to_string()]));
        assert!(equivalent(&d.f0, &ml("x*z + 4*~x")));
        assert!(d.f1.is_zero());
        assert!(equivalent(&d.f2, &ml("5*~w")));
        assert!(equivalent(&d.recombine(), &f));
    }

    #[test]
    fn decomposition_of_single_variable_poly() {
        let f = ml("3*x + 7*~x");
        let d = x_decomposition(&f, "x");
        assert!(d.disconnected);
        assert_eq!(d.f0, MultilinearPoly::constant(rat(3)));
        assert_eq!(d.f1, MultilinearPoly::constant(rat(7)));
        assert!(d.f2.is_zero());
        assert!(equivalent(&d.recombine(), &f));
    }

    #[test]
    fn perfect_recall_examples() {
        assert!(!is_perfect_recall(&ml("x*y + ~x*~y")).is_perfect());
        assert!(is_perfect_recall(&ml("x*y*z + 4*~x*y + 5*~w")).is_perfect());
        assert!(is_perfect_recall(&ml("3*x + 7*~x")).is_perfect());
        assert!(is_perfect_recall(&MultilinearPoly::zero()).is_perfect());
        assert!(is_perfect_recall(&MultilinearPoly::constant(rat(5))).is_perfect());
    }

    #[test]
    fn perfect_recall_witness_recombines() {
        let f = ml("x*y*z + 4*~x*y + 5*~w");
        match is_perfect_recall(&f) {
            PerfectRecall::Yes(DecompositionTree::Split { decomposition, .. }) => {
                assert!(decomposition.disconnected);
                assert!(equivalent(&decomposition.recombine(), &f));
            }
            other => panic!("expected split witness, got {other:?}"),
        }
    }

    #[test]
    fn equivalent_polys_agree_on_perfect_recall() {
        let f = ml("y*~x + x");
        let g = ml("y + x*~y");
        assert!(equivalent(&f, &g));
        assert_eq!(is_perfect_recall(&f).is_perfect(), is_perfect_recall(&g).is_perfect());
    }

    #[test]
    fn evaluate_general_poly() {
        let mut f = GeneralPoly::zero();
        f.add_term(rat(3), BTreeMap::from([("x".into(), 2)]));
        f.add_term(rat(5), BTreeMap::from([("x".into(), 1), ("y".into(), 1)]));
        f.add_term(rat(-8), BTreeMap::from([("y".into(), 2)]));
        f.add_term(rat(-1), BTreeMap::new());
        let point = BTreeMap::from([("x".into(), rat(1)), ("y".into(), rat(0))]);
        assert_eq!(f.evaluate(&point).unwrap(), rat(2));
    }

    #[test]
    fn evaluate_multilinear_poly() {
        let f = ml("x");
        assert_eq!(
            f.evaluate(&BTreeMap::from([("x".into(), rat(0))])).unwrap(),
            rat(0)
        );
        let g = ml("y*~x");
        let point = BTreeMap::from([("x".into(), rat(1)), ("y".into(), rat(1))]);
        assert_eq!(g.evaluate(&point).unwrap(), rat(0));
        let err = g.evaluate(&BTreeMap::new()).unwrap_err();
        assert!(matches!(err, PolyError::MissingAssignment(_)));
    }

    #[test]
    fn literal_poly_handles_repeated_variables() {
        let mut p = LiteralPoly::zero();
        p.add_term(rat(1), alloc::vec![("x".into(), true), ("x".into(), false)]);
        // x*(1-x) = x - x^2
        let g = p.expand();
        assert_eq!(g.total_degree(), 2);
        let point = BTreeMap::from([("x".into(), ratio(1, 2))]);
        assert_eq!(p.evaluate(&point).unwrap(), ratio(1, 4));
        assert_eq!(g.evaluate(&point).unwrap(), ratio(1, 4));
        assert!(matches!(p.to_multilinear(), Err(PolyError::NotMultilinear { .. })));
    }

    #[test]
    fn printing_is_canonical() {
        use alloc::string::ToString;
        assert_eq!(ml("x*y + 4*~x*y + 5*~w - 3").to_string(), "-3 + 5*~w + 4*~x*y + x*y");
        assert_eq!(MultilinearPoly::zero().to_string(), "0");
        assert_eq!(ml("3/2*x - y").to_string(), "3/2*x - y");
    }
}
