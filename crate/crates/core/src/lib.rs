//! Bounds on Hilbert functions and graded Betti numbers of fat point schemes
//! in the projective plane, computed from multiplicities and collinearity
//! data, together with an exact linear-algebra oracle to check them against.

pub mod betti;
pub mod bounds;
pub mod configs;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod scheme;
pub mod sequence;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use betti::{betti_table, BettiBounds, BettiError, Interval};
pub use bounds::{lower_bound, upper_bound, BoundsError, StandardConfiguration};
pub use matrix::ExactMatrix;
pub use scalar::{FieldScalar, Fp, Scalar};
pub use scheme::{
    FatPointScheme, FieldSpec, NamedLine, Point, PointId, ReductionTrace, ReductionVector,
    SchemeError, Violation,
};
pub use sequence::HilbertSequence;

pub type IntegerMatrix = ExactMatrix<BigInt>;
pub type RationalMatrix = ExactMatrix<BigRational>;
pub type PrimeFieldMatrix = ExactMatrix<Fp>;
