//! Shared error type for every fallible operation in the library.
//!
//! Errors are deliberately loud and structured: quadrature failure, contour
//! pinching, and proximity to a pole/zero lattice point each carry the data a
//! caller needs to re-deform a contour or reject a parameter set.

use num_complex::Complex64;
use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Adaptive refinement exhausted its budget with the error estimate still
    /// above the requested tolerance.
    #[error("quadrature did not converge: error estimate {estimate:.3e} > tolerance {tol:.3e}")]
    NonConvergence { estimate: f64, tol: f64 },

    /// The integrand returned a non-finite value on the path, which signals a
    /// pole hit; the caller must re-deform the contour.
    #[error("non-finite integrand value at z = {at}; contour passes through or too near a pole")]
    PoleHit { at: Complex64 },

    /// The argument lies within the configured clearance of a pole or zero of
    /// the lattice; `n`, `m` identify the offending lattice point.
    #[error("argument {x} within clearance of lattice point (n={n}, m={m}), distance {distance:.3e}")]
    PoleOrZeroProximity {
        x: Complex64,
        n: u32,
        m: u32,
        distance: f64,
    },

    /// Pole families from opposite sides of the contour collide, leaving no
    /// admissible placement.
    #[error("contour pinch: left pole family reaches Re = {left:.6}, right pole family reaches Re = {right:.6}")]
    ContourPinch { left: f64, right: f64 },

    /// A domain precondition of the requested operation failed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The estimated tail mass beyond the truncation point exceeds what the
    /// requested accuracy allows.
    #[error("truncation insufficient: tail estimate {tail:.3e} > allowed {allowed:.3e}")]
    TruncationInsufficient { tail: f64, allowed: f64 },
}
