//! Free globular extensions over Θ₀ presented by cellular towers.

pub mod bundle;
pub mod dsl;
pub mod expr;
pub mod functor;
pub mod stdlib;
pub mod term;
pub mod tower;

pub use bundle::{PregroupoidBundle, Role};
pub use dsl::{load_script, print_morph, print_term, print_tower, DslError, DslErrorKind};
pub use expr::{Expr, Strategy};
pub use functor::TowerFunctor;
pub use stdlib::{stdlib, stdlib_script, Coherences, Stdlib};
pub use term::{GenId, Morph, Term};
pub use tower::{LiftGenerator, Tower, Verdict};

#[cfg(test)]
mod tests;
