//! Zero-sum extensive-form games with imperfect recall.
//!
//! This crate models finite extensive-form games played on trees between
//! `Max` and `Min` with chance moves and information sets, and implements
//! the machinery that connects them to multivariate polynomials:
//!
//! * [`game`] — the game tree, validation, player histories, recall
//!   classification, chance degree, and exact expected payoff.
//! * [`poly`] — multilinear polynomials over variables and their
//!   complements, cancellation analysis, disconnected decompositions, and
//!   polynomial-time perfect-recall detection.
//! * [`transforms`] — polynomial ↔ game constructions, quantified-formula
//!   encoding of maxmin questions, and hardness gadget generators.
//! * [`solvers`] — exact pure-strategy solvers (including the bounded
//!   chance-degree bag algorithm), backward induction, and a numeric
//!   behavioural maxmin estimator.
//! * [`bridge`] — a model of the bidding phase of Bridge as a team game,
//!   its extensive-form compilation, and solvers over restricted
//!   (non-overbidding) and unrestricted pure team strategies.
//!
//! The crate is `no_std` + `alloc`: all arithmetic on game data is exact
//! rational arithmetic, and only the behavioural estimator uses floating
//! point. IO, text formats, and the command-line front end live in the
//! companion crate `efg-cli`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bridge;
pub mod fixtures;
pub mod game;
pub mod poly;
mod rational;
pub mod solvers;
#[cfg(feature = "testgen")]
pub mod testgen;
pub mod transforms;

pub use rational::{rat, ratio, Rational};
