//! Conjugacy classes of maps `Z^h → A ≀ Σ_n`.
//!
//! Such a map is the same as an action of `Z^h ⊕ A` on `A × [n]` extending
//! the free action of `A`. Orbits are classified by their types, and a class
//! is a multiset of types whose orbits cover `n |A|` points.

mod brute;
mod classes;
mod types;

pub use brute::{brute_force_class_count, brute_force_transitive_class_count, MAX_BRUTE_DEGREE, MAX_BRUTE_RANK};
pub use classes::{
    decompose_permutations, enumerate_action_classes, enumerate_action_classes_filtered,
    ActionClass, CentralizerShape, OrderFilter, PermutationModel,
};
pub use types::{enumerate_types, enumerate_types_of_index, TypeClass};
