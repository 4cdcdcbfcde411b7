//! Exact arithmetic for congruent numbers on right trapezoids.
//!
//! Three notions are covered:
//!
//! * **i-congruent**: `n` is the area of a right trapezoid with integer sides
//!   `a > d >= 0`, height `b`, slant `c`, `(a-d)^2 + b^2 = c^2`, `gcd(b, c) = 1`
//!   ([`icong`]).
//! * **k-congruent**: rational sides with `a = k d`, witnessed by points on
//!   `y^2 = x^3 - ((k^2-1) n)^2 x` ([`kcong`]).
//! * **d-congruent**: rational sides with `a^2 + b^2 = c^2` and area
//!   `(a + 2d) b / 2`, witnessed by points on a family of curves with
//!   non-constant j-invariant ([`dcong`]).
//!
//! Everything is exact: integers are arbitrary precision where they can grow,
//! rationals are kept in lowest terms. [`verify`] assembles the reproduction
//! report that compares each published list, table and example against what
//! the library computes.

pub mod arith;
pub mod classic;
pub mod dcong;
pub mod ecq;
pub mod exec;
pub mod icong;
pub mod kcong;
pub mod model;
pub mod report;
pub mod verify;

pub use arith::{Int, Rat};
pub use ecq::{Curve, Point};
pub use exec::Strategy;
pub use model::{TrapezoidD, TrapezoidI, TrapezoidK, Violation};
pub use report::{Report, Status};

/// Errors raised by constructions and validators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("singular curve: 4A^3 + 27B^2 = 0")]
    SingularCurve,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("validation failed: {}", display_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("construction failed: {0}")]
    Construction(String),
}

fn display_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
