//! Exact-arithmetic weights and truncated formal characters of highest-weight
//! modules over Kac-Moody algebras.
//!
//! The crate takes a generalized Cartan matrix, a highest weight given by its
//! coroot pairings, and an integrability set, and computes — always over exact
//! rationals and always up to an explicit height cutoff —
//!
//! * positive roots with multiplicities ([`cartan`]),
//! * Weyl-group machinery: reflections, dominance raising, orbits, bounded
//!   group enumeration, coset representatives, and the dot action ([`weyl`]),
//! * weight sets of parabolic Verma and simple modules by several independent
//!   routes ([`weights`]),
//! * truncated formal characters, Freudenthal multiplicities, and classical
//!   character identities run as exact checks ([`characters`]),
//! * convex-hull presentations of weight sets with exact membership tests
//!   ([`hull`]).
//!
//! The routes intentionally overlap: the same set or series is computable by
//! structurally different algorithms, and the test suite (plus the `check`
//! subcommands of the CLI) insists that they agree band-exactly.

pub mod cartan;
pub mod characters;
pub mod error;
pub mod hull;
mod lp;
pub mod rational;
pub mod series;
pub mod weights;
pub mod weyl;

pub use cartan::{Gcm, InvariantForm, RootDatum, RootInfo, SubdiagramClass, Symmetrizer};
pub use characters::DenominatorReport;
pub use error::{Error, Result};
pub use hull::HullPresentation;
pub use rational::Q;
pub use series::{FormalSeries, LaurentPoly};
pub use weights::{ModuleSpec, ModuleWeights, PartialSumReport, SlicePiece, WeightSet};
pub use weyl::{EnumerationMode, GroupElement, OrbitSlice, Weight, WeylWord};
