//! Exact rational arithmetic: Pochhammer symbols, harmonic numbers,
//! Bernoulli numbers and rational functions with symbolic differentiation.

mod bernoulli;
mod harmonic;
mod ratfun;
mod rational;

pub use bernoulli::{bernoulli, bernoulli_cached};
pub use harmonic::{harmonic_sum, shifted_harmonic, HarmonicRef, HarmonicState};
pub use ratfun::{Poly, RationalFunction, Var};
pub use rational::{binomial, factorial, int, parse_rational, pochhammer, pochhammer_ratio, rat, Rational};
