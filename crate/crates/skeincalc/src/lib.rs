//! Link-diagram invariants from transfer-matrix skein calculus.
//!
//! The crate evaluates invariants of oriented link diagrams by resolving
//! every crossing into a flat passage or a smoothing with coupling-derived
//! coefficients, and by the exact polynomial state sums those resolutions
//! assemble into:
//!
//! - [`diagram`]: the combinatorial diagram model, PD-code parsing,
//!   writhe/linking queries, Reidemeister rewriting and braid closures;
//! - [`laurent`]: exact Laurent-polynomial arithmetic in one and two
//!   variables;
//! - [`coupling`]: the scalar and matrix data derived from the coupling
//!   (transfer matrices, their exponentials, skein coefficients, framing
//!   factors, HOMFLY parameters);
//! - [`expectation`]: the oriented state-sum engine for U(1), SU(2), GL(n)
//!   and U(n) evaluations at trivial background;
//! - [`bracket`]: the Kauffman bracket, its writhe-corrected normalization,
//!   the SU(2) resolution pipeline reproducing it, and a skein-tree HOMFLY
//!   evaluator;
//! - [`goldman`]: the Goldman bracket of curves on an oriented surface with
//!   a flat-torus oracle;
//! - [`verify`]: seed-reproducible invariance suites over random braid
//!   closures.
//!
//! The companion book under `book/` walks through the same material with
//! runnable snippets; `cargo test --workspace` keeps those in sync.

pub mod bracket;
pub mod coupling;
pub mod diagram;
pub mod error;
pub mod expectation;
pub mod goldman;
pub mod laurent;
pub mod verify;

pub use coupling::{Coupling, Mat2, SkeinCoeffs};
pub use diagram::{ArcId, Crossing, LinkDiagram, Resolution, Sign, Smoothing, Violation};
pub use error::{DiagramError, EvalError};
pub use expectation::{GaugeSpec, Group};
pub use goldman::{CurveSystem, CyclicWord, FormalSum, Intersection, Letter, TorusCurve};
pub use laurent::{LaurentPoly, LaurentPoly2};
