//! Arithmetic of plane bipartite trees (dessins d'enfants).
//!
//! The crate decides passport decomposability, enumerates plane trees by
//! passport, computes exact Shabat polynomials for the diameter-4
//! black-centered family, and reads coordinate valuations off p-adic Newton
//! polygons of exact eliminants. Everything downstream of the multiprecision
//! kernels is exact rational arithmetic; floating point never enters a
//! verdict.
//!
//! Module map:
//! - [`algebra`]: rationals, univariate/multivariate polynomials, resultants,
//!   factorization over Q, multiprecision complex root finding.
//! - [`passport`]: degree multisets, prime-power splits, subset-sum
//!   decomposability.
//! - [`trees`]: plane embeddings, canonical codes, enumeration, mirrors.
//! - [`shabat`]: polynomial systems for the black-centered family, eliminants,
//!   rational and numeric models.
//! - [`padic`]: valuations, Newton polygons, predicted valuations and degree
//!   bounds.
//! - [`orbits`]: Galois-orbit structure reports.
//! - [`verify`]: the built-in verification suite run by `dessin verify-paper`.

pub mod algebra;
pub mod orbits;
pub mod padic;
pub mod passport;
pub mod shabat;
pub mod trees;
pub mod verify;

pub use algebra::rat::Rat;
pub use passport::{Color, Passport, PrimeSplit};
pub use trees::PlaneTree;
