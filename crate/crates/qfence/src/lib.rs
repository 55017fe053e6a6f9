//! Exact rank polynomials of fence posets and their circular closures,
//! q-rationals from continued fractions, and q-deformed Markov numbers —
//! all computed two independent ways: a brute-force order-ideal oracle and
//! 2x2 (and 2^t x 2^s) transfer matrices over Laurent polynomials.
//!
//! The crate is organized bottom-up:
//!
//! * [`qpoly`] — Laurent polynomials over big integers, and formal fractions;
//! * [`poset`] — finite posets, compositions, fences, the ideal oracle;
//! * [`oriented`] — posets with a marked left/right node and their 2x2 rank
//!   matrices;
//! * [`fence`] — transfer-matrix calculus for fence compositions, circular
//!   rank polynomials, and the rank-polynomial identities;
//! * [`qrational`] — continued fractions, q-rationals, trace theorems, and
//!   the non-unimodality counterexamples;
//! * [`markov`] — Christoffel words, the Markov tree, q-Markov numbers;
//! * [`genoriented`] — the multi-interface generalization with 2^t x 2^s
//!   matrices;
//! * [`verify`] — randomized and exhaustive verification sweeps shared by
//!   the test suite, the benchmarks, and the CLI.

pub mod error;
pub mod fence;
pub mod genoriented;
pub mod markov;
pub mod oriented;
mod par;
pub mod poset;
pub mod qpoly;
pub mod qrational;
pub mod verify;

pub use error::{Error, Result};
