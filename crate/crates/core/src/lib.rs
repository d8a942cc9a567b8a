//! Symbolic workbench for simple linearly compact Lie superalgebras.
//!
//! The crate is organized around a small exact-arithmetic kernel:
//!
//! * [`superpoly`] — truncated polynomial algebras with `m` commuting and
//!   `n` anticommuting generators over exact rationals, with a text
//!   grammar for parsing and canonical printing;
//! * [`wfields`] — super vector fields on those algebras: brackets,
//!   divergence, Euler operators, membership tests for the classical
//!   series, and finite-dimensional subalgebra analysis (derived
//!   subalgebras, simplicity, filtered deformations);
//! * [`forms`] — the differential-form module: exterior derivative,
//!   wedge, contraction, Lie derivative, distinguished-form memberships,
//!   twisted actions, and the field ↔ top-minus-one-form identification;
//! * [`exceptional`] — the three exceptional algebras built from
//!   divergence-free fields and closed/twisted forms, with their
//!   weighted gradings;
//! * [`cartanm`] — contragredient superalgebras from generalized Cartan
//!   matrices with a chosen odd index set, built degree by degree with a
//!   radical quotient, plus dual Coxeter numbers from root data;
//! * [`qseries`] / [`characters`] — a two-sided truncated q-series engine
//!   (half-integer exponents, multivariable Laurent coefficients) and the
//!   character-theoretic operations built on it: Appell sums, denominator
//!   quotients, product identities, admissibility tests, modular action;
//! * [`wred`] — matrix superalgebra models with sl2-triple completion,
//!   reduction field content and symbolic central charges;
//! * [`e36`] — the degree-(−1,−1), (−2,0)/(0,−2) and (−1,−3) complexes on
//!   induced modules of the rank-(3,2) algebra, charge spectra, and the
//!   particle-multiplet table report.
//!
//! All arithmetic is exact (arbitrary-precision rationals, or univariate
//! rational functions where a parameter is involved). Truncated objects
//! carry an "exact-through" watermark so that every boolean the crate
//! returns is a statement about degrees where nothing was lost.

pub mod cartanm;
pub mod characters;
pub mod cli;
pub mod e36;
pub mod error;
pub mod exceptional;
pub mod forms;
pub mod linalg;
pub mod qseries;
pub mod rat;
pub mod ratfun;
pub mod sample;
pub mod suites;
pub mod superpoly;
pub mod wfields;
pub mod wred;

pub use error::{Error, Result};
pub use rat::Rat;
