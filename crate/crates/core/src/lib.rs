//! Exact-arithmetic toolkit for translational tilings of cyclic groups,
//! cross tilings, and multiplicative tilings of the real line.
//!
//! Everything that decides anything works over exact integers and rationals:
//! character sums are tested for vanishing through cyclotomic polynomial
//! divisibility, torus points carry formal symbols for their irrational
//! parts, and piecewise-constant level functions are evaluated on exact
//! rational refinements. Floating point appears only in explicitly
//! diagnostic helpers.
//!
//! Module map:
//!
//! - [`zn`] — subsets and integer-weighted vectors on `Z_N`, cyclic
//!   convolution, exact Fourier-zero detection.
//! - [`tiling`] — level-`l` tiling verification, the Fourier tiling
//!   criterion, complement enumeration.
//! - [`cross`] — cross-tiling verification in its equivalent forms,
//!   triviality classification, the product-group embedding, example
//!   generators, exhaustive search.
//! - [`torus`] — exact torus points with formal irrational parts, rational
//!   equivalence classes, rational-frequency exponential polynomials,
//!   piecewise-constant tiling checks on the circle.
//! - [`realline`] — multiplicative tilings of the real line in log
//!   coordinates and their reduction to per-coset cross tilings.

pub mod cross;
pub mod realline;
pub mod tiling;
pub mod torus;
pub mod zn;

/// Compiles the README's code example as a doctest.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;

pub use cross::CrossTilingInstance;
pub use realline::{IntervalUnion, MultTilingInstance, PeriodicTranslateSet};
pub use tiling::TilingReport;
pub use torus::{TorusPoint, WeightedPeriodicPointSet};
pub use zn::{CyclicSet, WeightedCyclicVector};
