//! Two-tier scalars for functionals and measures: exact Gaussian rationals
//! where the arithmetic permits (quarter-turn characters, rational weights),
//! double-precision complex values elsewhere. Arithmetic promotes to the
//! floating tier as soon as either operand is floating.

use std::fmt;

use num::complex::Complex64;

use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(GaussianRational),
    Approx(Complex64),
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(GaussianRational::zero())
    }

    pub fn one() -> Self {
        Value::Exact(GaussianRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Value::Exact(GaussianRational::from_int(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            Value::Exact(g) => Some(g),
            Value::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(g) => g.is_zero(),
            Value::Approx(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Value::Exact(g) => g.to_c64(),
            Value::Approx(c) => *c,
        }
    }

    pub fn add(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.to_c64() + rhs.to_c64()),
        }
    }

    pub fn sub(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a - b),
            _ => Value::Approx(self.to_c64() - rhs.to_c64()),
        }
    }

    pub fn mul(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Approx(self.to_c64() * rhs.to_c64()),
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(-a),
            Value::Approx(c) => Value::Approx(-c),
        }
    }

    pub fn powu(&self, exp: u64) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(a.powu(exp)),
            Value::Approx(c) => {
                let mut base = *c;
                let mut acc = Complex64::new(1.0, 0.0);
                let mut e = exp;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base *= base;
                    }
                }
                Value::Approx(acc)
            }
        }
    }

    pub fn abs(&self) -> f64 {
        match self {
            Value::Exact(a) => a.abs(),
            Value::Approx(c) => c.norm(),
        }
    }

    /// Equality across tiers: exact when both operands are exact, within
    /// `tol` in modulus otherwise.
    pub fn approx_eq(&self, rhs: &Value, tol: f64) -> bool {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => (self.to_c64() - rhs.to_c64()).norm() <= tol,
        }
    }
}

impl From<GaussianRational> for Value {
    fn from(g: GaussianRational) -> Self {
        Value::Exact(g)
    }
}

impl From<Complex64> for Value {
    fn from(c: Complex64) -> Self {
        Value::Approx(c)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(g) => write!(f, "{g}"),
            Value::Approx(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", c.re)
                } else if c.re == 0.0 {
                    write!(f, "{}i", c.im)
                } else if c.im < 0.0 {
                    write!(f, "{}-{}i", c.re, -c.im)
                } else {
                    write!(f, "{}+{}i", c.re, c.im)
                }
            }
        }
    }
}
