//! A symbolic kernel for Grothendieck ∞-groupoids.
//!
//! Free globular extensions are represented by cellular towers of named
//! liftings over Θ₀, with terms kept in a canonical normal form. On top of
//! that sit finite models, their homotopy groups and weak equivalences, and a
//! realization of the fundamental ∞-groupoid of a finite groupoid.

// Multiplication tables and cell tables read most clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod coherator;
pub mod error;
pub mod globe;
pub mod gpdmodel;
pub mod group;
pub mod homotopy;
pub mod model;
pub mod theta0;

pub use coherator::{GenId, Morph, PregroupoidBundle, Term, Tower};
pub use error::{Error, Result};
pub use globe::{GlobularSet, Side, SumRealization, Table, Word};
pub use group::FiniteGroup;
pub use homotopy::{pi_groupoid, pi_n, weak_equiv, PiGroupoid};
pub use model::{build_strict, Model, ModelMorphism, StrictKind};
pub use theta0::Theta0Morphism;
