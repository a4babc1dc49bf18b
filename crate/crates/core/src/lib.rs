//! Finitely generated marked groups as step-budgeted computations.
//!
//! A group description here is a resumable computation with an explicit
//! step budget: recursively enumerable descriptions accept the words that
//! are trivial, word-problem descriptions decide triviality, and quotient
//! descriptions accept the marked groups that are quotients of a fixed one.
//! Those pieces compose: finite presentations can be extracted from an
//! enumeration together with a quotient algorithm, residually finite groups
//! get a word problem solver from their finite quotients, and so on.

pub mod engine;
pub mod error;
pub mod gadgets;
pub mod oracles;
pub mod presentations;
pub mod quotients;
pub mod recognition;
pub mod words;

pub use error::{Error, Result};
