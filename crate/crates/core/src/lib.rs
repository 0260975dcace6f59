//! The quotient rig `ℕ[x]/(x ≈ 1 + x + x²)`: its word problem, a strongly
//! normalising rewrite system, checkable unfold/fold derivations, and the
//! compilation of derivations into bijections between tuples of Motzkin trees.

pub mod polynomial;
pub mod quotient;
pub mod rewrite;
pub mod derivation;
pub mod motzkin;
pub mod cli;

pub use polynomial::{GaussInt, IntPoly, NatPoly, ParsePolyError};
pub use quotient::{canon, decide_equal, embed_gauss, RigElement};
