//! Synthesis of n-qutrit unitaries into single-qutrit rotations and
//! generalized controlled-X / controlled-increment gates.
//!
//! Qutrit 0 is the leftmost (most significant) tensor factor throughout.
//! Circuits list gates in application order.

pub mod circuit_ir;
pub mod kak;
pub mod numkernel;
pub mod synth;
pub mod trit_algebra;
