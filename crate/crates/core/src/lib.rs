//! Rail knotoid diagrams: combinatorial model, rail moves, companion loops and
//! polynomial invariants.

pub mod acceptance;
pub mod cli;
pub mod closure;
pub mod diagram;
pub mod invariants;
pub mod moves;
pub mod poly;
