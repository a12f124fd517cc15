//! The fundamental ∞-groupoid of a finite groupoid.
//!
//! Groupoids carry the folk model structure (cofibrations are injective on
//! objects, weak equivalences are equivalences, everything is fibrant). The
//! globe diagram sends `D(0)` to the point and every higher disk to the
//! codiscrete groupoid on two objects, which makes every globular sum thin,
//! every lifting unique, and every homotopical statement decidable.

mod compare;
mod diagram;
mod groupoid;
mod interp;
mod quillen;

pub use compare::{
    check_composition, check_naturality, compare, corpus, functor_suite, fundamental_morphism, Comparison, ObjectComparison, SuiteFunctor,
};
pub use diagram::{disk_graph, globe_diagram, sum_groupoid, validate_diagram, word_map, GlobeDiagram, Graph, GraphMap, SumGroupoid};
pub use groupoid::{FiniteGroupoid, GroupoidFile, GroupoidFunctor};
pub use interp::{
    all_fillers, composite_through, functor_arrow, fundamental, fundamental_carrier, interpret_term, interpret_tower, lifting_oracle,
    sample_admissible_pairs, DiskMap, Fundamental,
};
pub use quillen::{loop_object, path_object, quillen_pi, quillen_pi1, BasedGroupoid, PathObject, QuillenPi1};

#[cfg(test)]
mod tests;
