//! Exact symbolic engine for the Toeplitz algebra viewed as a compact quantum
//! semigroup, paired with an independent truncated-matrix numerical oracle.
//!
//! The symbolic side works over the dense unital *-subalgebra spanned by the
//! monomials `T(n,m) = Tⁿ T*ᵐ` in the unilateral shift, with Gaussian-rational
//! coefficients, so every algebraic law (inverse-semigroup multiplication,
//! grading, comultiplication, antipode, convolution of functionals, measure
//! correspondence) is checked with exact equality. The numerics side realizes
//! elements as N×N matrix truncations and re-derives products, norms,
//! compactness, and graded components by independent floating-point routes.

pub mod element;
pub mod error;
pub mod expr;
pub mod functional;
pub mod measure;
pub mod monomial;
pub mod numerics;
pub mod parse;
pub mod sampling;
pub mod scalar;
pub mod tensor;
pub mod trig;
pub mod value;
pub mod verify;

pub use element::{DiagonalNorm, Element, Vector};
pub use error::{Error, Result};
pub use expr::{EvalValue, Expr};
pub use functional::Functional;
pub use measure::{CircleMeasure, TurnAngle};
pub use monomial::Monomial;
pub use numerics::{NumericElement, TruncatedMatrix};
pub use scalar::GaussianRational;
pub use tensor::{TensorElement, TensorVector, WitnessReport};
pub use trig::TrigPolynomial;
pub use value::Value;

use num::{Signed, Zero};

/// Display-sign convention for a scalar coefficient: negative when the real
/// part is negative, or when the real part vanishes and the imaginary part is
/// negative. Returns the sign and the correspondingly negated magnitude.
pub(crate) fn scalar_sign_split(c: &GaussianRational) -> (bool, GaussianRational) {
    let neg = c.re().is_negative() || (c.re().is_zero() && c.im().is_negative());
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// Renders a scalar for use as a multiplicative prefix; values with both real
/// and imaginary parts are parenthesized so the printed form parses back.
pub(crate) fn scalar_atom_string(c: &GaussianRational) -> String {
    if !c.re().is_zero() && !c.im().is_zero() {
        format!("({c})")
    } else {
        format!("{c}")
    }
}
