//! Exact signed enumeration of Gelfand-Tsetlin type objects.
//!
//! Every family in this crate is counted with a sign, and every signed count
//! is checked against the product
//!
//! ```text
//!   prod_{1 <= i < j <= n} (k_j - k_i + j - i) / (j - i)
//! ```
//!
//! or, for monotone triangles, against the polynomial extension `alpha(n; k)`.
//!
//! * [`trees`]: directed `n`-trees, tree sequences, tree signs and the local
//!   moves (edge reversal, edge sliding) that connect all `n`-trees.
//! * [`labelings`]: admissible labelings and the signed count `L_n(T, k)`,
//!   plus the restricted counts used to interpret difference operators.
//! * [`patterns`]: generalized Gelfand-Tsetlin patterns, their tableau and
//!   tree-sequence bijections, and the four-set split of shift-antisymmetry.
//! * [`operators`]: the product formula, the binomial determinant, extended
//!   summation and a shift-operator algebra acting on lattice functions.
//! * [`monotone`]: `alpha(n; k)`, its four signed extensions, operator
//!   formulas, and refined alternating sign matrix numbers.
//! * [`paths`]: signed lattice path families.
//! * [`intervals`]: generalized intervals `[x, y]` with inversion semantics.
//! * [`verify`]: grid-based verification suites producing JSON reports.
//!
//! All counts are [`BigInt`]s; labels are `i64`.

mod bigjson;
pub mod error;
pub mod grid;
pub mod intervals;
pub mod labelings;
pub mod monotone;
pub mod operators;
pub mod paths;
pub mod patterns;
pub mod perm;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use intervals::GeneralizedInterval;
pub use labelings::{AdmissibleLabeling, GTTreeSequence, RestrictionSpec, ShiftedLabels, WeakAdmissibleWitness};
pub use monotone::{ExtTriangle, Extension, RefinedCounts};
pub use num_bigint::BigInt;
pub use operators::{LatticeFunction, OperatorExpression};
pub use paths::{PathFamily, PathVariant};
pub use patterns::{GTPattern, Ssyt};
pub use trees::{NTree, TreeSequence, TreeSignData};
pub use verify::{VerificationReport, Violation};
