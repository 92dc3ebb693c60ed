//! Exact generating functions for zero-dimensional field theories.
//!
//! A model is a family of generalised line amplitudes `L_m` (lines with `m`
//! ends) and vertex amplitudes `V_n`. Its partition function
//!
//! ```text
//! Z = exp(Σ L_m/m! ∂^m) exp(Σ V_n x^n/n!) |_{x=0}
//! ```
//!
//! is the sum over all vacuum diagrams weighted by their symmetry numbers;
//! `ln Z` keeps only the connected ones. Everything is computed with exact
//! rationals.
//!
//! The crate is split into:
//!
//! * [`series`]: truncated formal power series over a generic coefficient ring.
//! * [`qft`]: models, the partition function and the connected generating function.
//! * [`combinatorics`]: Stirling, Bell and integer-partition ground truth.
//! * [`wick`]: brute-force vacuum diagram enumeration with automorphism counting.
//! * [`order`]: exhaustive enumeration of finite topologies (preorders) and posets.

pub mod combinatorics;
pub mod order;
pub mod qft;
pub mod series;
pub mod wick;

pub use combinatorics::{SequenceRecord, StirlingTable};
pub use order::{QuotientResult, Relation};
pub use qft::{ModelSpec, PartitionSeries};
pub use series::{BiPoly, Coefficient, Rational, TruncSeries};
pub use wick::{Diagram, SymmetryDatum};
