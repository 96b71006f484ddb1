//! Exact verification toolkit for two 2-generated subgroups of `SL(3, ℤ)`
//! whose intersection is not finitely generated, and for the families
//! `H_q`, `K_q` of rank 4 whose intersections have rank at least `q + 1`.
//!
//! Everything lives in the parabolic subgroup `ℤ² ⋊ SL(2, ℤ)`:
//!
//! * [`word`]: reduced words over `U`, `V` and their inverses.
//! * [`linear`]: exact matrices, affine elements, word evaluation and the cocycle `c`.
//! * [`action`]: the affine action `α`, `β` on `ℤ²`, witness words and loop checks.
//! * [`graph`]: orbital Schreier graphs, Stallings cores and Schreier generators.
//! * [`rank`]: indices, Nielsen–Schreier ranks, Smith normal form, abelianizations.
//! * [`verify`]: the `verify-paper` report.

pub mod action;
pub mod error;
pub mod graph;
pub mod linear;
pub mod rank;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use graph::{CoreKind, CoreReport, OrbitalGraph};
pub use linear::{AffineElement, Mat2, Vec2};
pub use word::{Generator, Letter, Word};
