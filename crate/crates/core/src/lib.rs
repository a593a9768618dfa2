//! Free commutative modified Rota-Baxter algebras over `ℚ`.
//!
//! [`MrbContext`] multiplies tensor words with the recursive product `⋄`;
//! [`stuffle`] gives the same product as an explicit sum over injection
//! pairs. [`HopfContext`] adds the coproduct, counit and antipode when the
//! weight is `−λ²`. [`operators`] checks operator identities on arbitrary
//! carriers.

pub mod algebra;
pub mod base;
pub mod error;
mod fmt;
pub mod hopf;
pub mod linear;
pub mod operators;
pub mod product;
pub mod random;
pub mod rational;
pub mod stuffle;
pub mod tensor;
pub mod verify;

pub use algebra::{Algebra, BaseAlgebra, FreeMrbAlgebra};
pub use base::{BaseElement, BaseInstance, Monomial};
pub use error::{Error, Result};
pub use hopf::{CheckOutcome, HopfContext};
pub use linear::LinComb;
pub use operators::{LinearOperator, MrbOperatorInstance, OperatorInstance};
pub use product::{operator_p, BaseMap, Lift, MrbContext};
pub use rational::Rational;
pub use stuffle::{Engine, InjectionPair};
pub use tensor::{MrbElement, MrbSquare, TensorWord};
