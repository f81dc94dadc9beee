//! Text formats and report rendering for the imperfect-recall game
//! toolkit: the line-oriented game-tree format, the polynomial and
//! quantified-formula grammars, and the bidding-game specification format.
//! The `efg` binary in this crate wires them to the solvers.

pub mod formats;
pub mod report;
