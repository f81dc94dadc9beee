//! Test-side alias for the shared generators and oracles.
#![allow(unused_imports)]

pub use efg_core::testgen::*;
