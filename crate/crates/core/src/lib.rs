//! Exact simulation of the point-picking games that characterise Baire
//! class 1 functions, equi-Baire 1 families and measurable functions.
//!
//! Points live in Q(√2) ∩ [0,1] or are eventually periodic points of Cantor
//! space, so every rule check and every verdict is decided without floating
//! point.

pub mod error;
pub mod arena;
pub mod catalog;
pub mod exactnum;
pub mod harness;
pub mod setalgebra;
pub mod strategies;

pub use error::{Error, Result};
