//! Gaussian cubature on compact simple Lie groups.
//!
//! Every compact simple Lie group `G` of rank `n` carries a family of
//! multivariate Chebyshev-like orthogonal polynomials: the irreducible
//! characters of `G`, written as polynomials in the `n` fundamental
//! characters `X_1, ..., X_n`. This crate constructs the associated
//! Gaussian cubature rules, whose interpolation points are the regular
//! elements of finite adjoint order `M + h` inside the fundamental domain
//! (`h` the Coxeter number) and whose weights are values of
//! `K = |S_rho|^2`, the squared modulus of the Weyl denominator.
//!
//! The crate is organized along the pipeline:
//!
//! - [`rootsys`] — Cartan matrices, marks/comarks, positive roots and
//!   signed Weyl orbits for all simple types `A`–`G`,
//! - [`lattice`] — elements of finite order as exact rational lattice
//!   points, enumerated through their Kac coordinates,
//! - [`orbitfn`] — numerical evaluation of `S`-functions, characters,
//!   the weight function `K` and the Steinberg Jacobian at those points,
//! - [`cubature`] — rule construction, discrete orthogonality, exact-degree
//!   integration over the domain `Omega`, and an independent grid oracle,
//! - [`approx`] — character expansions and best `L^2_K` approximation.
//!
//! All lattice arithmetic is exact: weights and roots are integer vectors
//! in the fundamental-weight and simple-root bases, points are rationals
//! with denominators dividing `c_G * N`, and every exponential evaluated
//! at such a point is a root of unity looked up from a phase table.
//!
//! ```
//! use liecube::rootsys::{LieType, RootSystem};
//! use liecube::cubature::build_rule;
//!
//! let rs = RootSystem::new("G2".parse::<LieType>().unwrap()).unwrap();
//! let rule = build_rule(&rs, 8).unwrap();
//! assert_eq!(rule.nodes().len(), 10);
//! ```

pub mod approx;
pub mod cubature;
pub mod lattice;
pub mod orbitfn;
pub mod rootsys;

pub use rootsys::{LieFamily, LieType, RootSystem, Weight};

/// Default ceiling on `|W| * rank`, the memory footprint (in machine words)
/// of a materialized signed Weyl orbit. E7 and E8 exceed it; everything of
/// rank at most 6 fits comfortably.
pub const DEFAULT_ORBIT_GUARD: u128 = 10_000_000;

/// Errors produced by rule construction and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Rank outside the classification bounds of the requested family.
    #[error("invalid rank {rank} for family {family}: expected {expected}")]
    InvalidRank {
        family: char,
        rank: usize,
        expected: &'static str,
    },
    /// A Weyl orbit would exceed the configured size guard.
    #[error(
        "Weyl orbit of {lie_type} needs {required} words (|W|*n), above the guard of {guard}; \
         raise it with --allow-large-orbits or LIECUBE_ORBIT_GUARD"
    )]
    OrbitTooLarge {
        lie_type: String,
        required: u128,
        guard: u128,
    },
    /// Characters are quotients by `S_rho`, which vanishes on the boundary.
    #[error("evaluation requires an interior point (all Kac coordinates positive)")]
    BoundaryPoint,
    /// Grid oracle resolution below the minimum.
    #[error("grid resolution must be at least 2, got {0}")]
    ResolutionTooSmall(usize),
    /// Operation restricted to small ranks for combinatorial cost.
    #[error("rank {rank} unsupported for {what} (maximum {max})")]
    RankTooLarge {
        what: &'static str,
        rank: usize,
        max: usize,
    },
    /// Malformed serialized rule or polynomial.
    #[error("invalid file: {0}")]
    InvalidFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
