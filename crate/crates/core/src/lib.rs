//! Characteristic Sturmian words and the conjugates of their fixed-point
//! morphisms.
//!
//! * [`word`]: finite words, lazily generated infinite words, and the
//!   prefix/suffix/conjugate calculus on them.
//! * [`cf`]: periodic continued fractions, convergents, Sturm numbers and
//!   exact quadratic-surd values.
//! * [`morphism`]: morphisms on `{a, b}`, standard-morphism certificates and
//!   right conjugation.
//! * [`generator`]: standard sequences, characteristic words `c_α`, the
//!   mechanical-word oracle and the morphisms `σ`, `σ̂` fixing `c_α` and `c_{1−α}`.
//! * [`singular`]: singular and adjoining singular words, Melançon's
//!   factorization and the decomposition of every conjugate of `c_α` and
//!   `c_{1−α}` for `α = [0; 2, (r)]`.

pub mod cf;
pub mod generator;
pub mod morphism;
pub mod singular;
pub mod word;

pub use cf::{CfError, Convergent, PeriodicCf, QuadraticSurd, SturmType, TypeIForm};
pub use morphism::{BinaryMorphism, Certificate, ConjugateIndex, Generator, MorphismError};
pub use word::{Letter, Word, WordError, WordStream};
