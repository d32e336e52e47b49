//! The chapters of the `book/` guide, one module each, so that
//! `cargo test --doc -p fieldmind-guide` runs every snippet in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/ball-motion.md")]
pub mod ball_motion {}

#[doc = include_str!("../../../book/src/fuzzy.md")]
pub mod fuzzy {}

#[doc = include_str!("../../../book/src/decision-makers.md")]
pub mod decision_makers {}

#[doc = include_str!("../../../book/src/team.md")]
pub mod team {}

#[doc = include_str!("../../../book/src/simulator.md")]
pub mod simulator {}

#[doc = include_str!("../../../book/src/configuration.md")]
pub mod configuration {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
