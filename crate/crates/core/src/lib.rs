//! Exact computations with the finite shadows of transchromatic character
//! theory: centralizers of commuting tuples in wreath products, subgroup
//! enumeration in torsion abelian groups, class functions and transfer ideals
//! of `A ≀ Σ_n`, and truncated Honda formal group arithmetic over `F_p`.
//!
//! Everything is exact. Integer linear algebra is generic over
//! [`num_integer::Integer`] scalars and field linear algebra over the
//! [`Field`] trait; the aliases below fix the concrete types used throughout.
//!
//! ```
//! use strickland_lab::actions::enumerate_action_classes;
//! use strickland_lab::{FiniteAbelianGroup, QzSubgroup, WreathProduct};
//!
//! let a = FiniteAbelianGroup::from_cyclic_factors(&[2]);
//! let classes = enumerate_action_classes(&a, 1, 3);
//! assert_eq!(QzSubgroup::all_of_order(2, 4).len(), 7);
//! let g = WreathProduct::new(a, 3)?;
//! assert_eq!(g.order(), 48);
//! assert!(!classes.is_empty());
//! # Ok::<(), strickland_lab::Error>(())
//! ```

pub mod abelian;
pub mod actions;
pub mod divisors;
mod error;
pub mod honda;
pub mod linalg;
pub mod perm;
mod scalar;
pub mod wreath;

pub use error::{Error, Result};
pub use scalar::{Field, Fp};

/// Arbitrary precision integer used by the Smith normal form.
pub type Int = num_bigint::BigInt;
/// Exact rationals used for class functions.
pub type Rational = num_rational::BigRational;
/// Integer matrix over arbitrary precision integers.
pub type ZMatrix = linalg::IntegerMatrix<Int>;
/// Smith decomposition over arbitrary precision integers.
pub type ZSmith = linalg::SmithDecomposition<Int>;

pub use abelian::{FiniteAbelianGroup, QzSubgroup, Subgroup};
pub use actions::{ActionClass, CentralizerShape, TypeClass};
pub use wreath::{ClassFunction, ConjClassLabel, WreathElement, WreathProduct};
