//! Constructive measure and integration over finite ground sets.
//!
//! The crate builds, bottom-up:
//!
//! - [`modulated_reals`]: reals as rational Cauchy sequences with explicit
//!   moduli, series and double-series rearrangement;
//! - [`complemented_sets`]: complemented subsets of a finite ground set and
//!   their characteristic functions;
//! - [`premeasure`]: pre-measure spaces (Dirac, weighted counting) and a
//!   brute-force axiom checker;
//! - [`simple_functions`]: simple functions over a pre-measure space, their
//!   disjoint representation and integral;
//! - [`completion`]: integrable representations (absolutely summable series
//!   of simple functions), the 1-norm, Lebesgue's series theorem and limits
//!   of Cauchy sequences.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod complemented_sets;
pub mod completion;
pub mod modulated_reals;
pub mod premeasure;
pub mod rational;
pub mod report;
pub mod simple_functions;

pub use modulated_reals::{ModulatedReal, Modulus};
pub use rational::{parse_rational, Rational};
