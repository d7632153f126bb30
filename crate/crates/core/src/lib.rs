//! State-vector simulation of order finding on two registers.
//!
//! The crate builds `(1/√q) Σ_a |a⟩|x^a mod n⟩` with one controlled
//! multiplication stage per register-1 qubit, applies the Fourier transform to
//! register-1, samples outcomes by the Born rule and recovers the order with
//! continued fractions. Every stochastic step takes an explicit seeded
//! generator.
//!
//! Each quantity that matters has two independent routes, so they can be
//! checked against each other:
//!
//! - [`modexp::modexp_circuit`] (staged controlled permutations) against
//!   [`modexp::modexp_oracle`] (direct enumeration);
//! - [`qft::QftMode::Dense`] against [`qft::QftMode::Fast`];
//! - [`spectrum::simulated_distribution`] against the closed-form
//!   [`spectrum::analytic_distribution`].
//!
//! [`pipeline`] ties the pieces into end-to-end factoring runs, the register
//! width audit of published demonstrations, and success-rate sweeps. [`cli`]
//! is the command-line surface over the same report types.

pub mod cfrac;
pub mod cli;
pub mod error;
pub mod gates;
pub mod modexp;
pub mod pipeline;
pub mod qft;
pub mod spectrum;
pub mod state;

pub use error::{Error, Result};
pub use gates::CircuitStats;
pub use state::{Register, RegisterLayout, StateVector};
