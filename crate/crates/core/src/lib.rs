//! Exact double-shuffle algebras of multiple L-values and level-N multiple
//! zeta values, together with a floating-point evaluator that serves as the
//! numerical oracle for every identity the crate can generate.
//!
//! * [`algebra`]: words, rational polynomials, the text grammar.
//! * [`mlv`]: the algebra `A = ℚ⟨x, y_a⟩` with `∗`, `⧢`, `I`, and the
//!   regularizations.
//! * [`level`]: the algebra `U = ℚ⟨x_0,…,x_N⟩` with its stuffle, shuffle
//!   and the maps `J`, `J⁻¹`.
//! * [`eval`]: `L_∗`, `L_⧢`, `ζ_N` and the auxiliary level-3 series.
//! * [`formulas`]: generators for sum and weighted-sum identities and the
//!   verification driver.

pub mod algebra;
pub mod cyclotomic;
pub mod error;
pub mod eval;
pub mod formulas;
pub mod level;
pub mod mlv;

pub use algebra::{Alphabet, IndexVector, Letter, NCPoly, Rational, Word};
pub use error::{AlgebraError, EvalError, ParseError};
