//! Numerical laboratory for radial and divisorial reductions of complex
//! Monge-Ampere functionals.
//!
//! A radial potential chi(log|z|) on the unit ball of C^n is determined by
//! its convex nondecreasing weight chi. This crate evaluates the classical
//! functionals of such potentials as one-dimensional improper integrals --
//! entropy of the Monge-Ampere density, weighted energies, exponential
//! moments, Moser-Trudinger-type integrals, capacities and volumes of
//! sublevel sets -- and classifies each integral as finite, divergent, or
//! numerically undecidable from the fitted decay of its tail. On top of the
//! verdict machinery sit discrete convex envelopes with contact-set
//! extraction and a battery of inequality checkers with structured
//! pass/fail reports.
//!
//! Entry points:
//! - [`weights::Weight`] for the weight families and their calculus,
//! - [`radial::RadialPotential`] for the functionals of a radial potential,
//! - [`divisorial`] for the transverse-slice integrals,
//! - [`envelope`] for convex nondecreasing minorants,
//! - [`inequalities`] for the individual checkers,
//! - [`scenarios::run_scenario`] for the named verification sweeps,
//! - [`report`] for deterministic CSV/JSON emission.

// guards of the form `!(x > 0.0)` are deliberate: they reject NaN along
// with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod divisorial;
pub mod envelope;
pub mod error;
pub mod grid;
pub mod inequalities;
pub mod quad;
pub mod radial;
pub mod report;
pub mod scenarios;
pub mod weights;

pub use error::{Error, Result};
pub use grid::GridFunction;
pub use quad::{IntegralVerdict, QuadConfig, VerdictKind};
pub use radial::{Model, RadialPotential};
pub use weights::Weight;
