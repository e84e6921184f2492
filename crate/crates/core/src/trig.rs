//! Trigonometric polynomials on the circle, written as Laurent polynomials in
//! `z = e^{iθ}`. These are the values of the symbol map and the exact density
//! parts of circle measures.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::GaussianRational;

/// Finite Laurent polynomial `Σ c_k z^k` with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigPolynomial {
    coeffs: BTreeMap<i64, GaussianRational>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, GaussianRational::one())
    }

    pub fn term(k: i64, c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.insert(k, c);
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, GaussianRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            p.insert(k, c);
        }
        p
    }

    /// Adds `c` into the coefficient at `k`, dropping it if the sum is zero.
    pub fn insert(&mut self, k: i64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(GaussianRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> GaussianRational {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (j, a) in &self.coeffs {
            for (k, b) in &rhs.coeffs {
                out.insert(j + k, a * b);
            }
        }
        out
    }
}

impl fmt::Display for TrigPolynomial {
    /// `z = e^{iθ}`: `2*z`, `z^-3 + 1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (pos, (k, c)) in self.coeffs.iter().enumerate() {
            let (neg, mag) = crate::scalar_sign_split(c);
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let base = match *k {
                0 => None,
                1 => Some("z".to_string()),
                k => Some(format!("z^{k}")),
            };
            match base {
                None => write!(f, "{}", crate::scalar_atom_string(&mag))?,
                Some(base) => {
                    if mag.is_one() {
                        write!(f, "{base}")?;
                    } else {
                        write!(f, "{}*{base}", crate::scalar_atom_string(&mag))?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_product() {
        let p = TrigPolynomial::from_coeffs([
            (1, GaussianRational::from_int(2)),
            (0, GaussianRational::one()),
        ]);
        let q = TrigPolynomial::from_coeffs([
            (-1, GaussianRational::one()),
            (2, GaussianRational::from_int(3)),
        ]);
        let pq = p.mul(&q);
        assert_eq!(pq.coeff(0), GaussianRational::from_int(2));
        assert_eq!(pq.coeff(-1), GaussianRational::one());
        assert_eq!(pq.coeff(3), GaussianRational::from_int(6));
        assert_eq!(pq.coeff(2), GaussianRational::from_int(3));
    }

    #[test]
    fn cancellation_empties() {
        let p = TrigPolynomial::term(2, GaussianRational::one());
        let q = TrigPolynomial::term(2, -GaussianRational::one());
        assert!(p.add(&q).is_zero());
    }

    #[test]
    fn display() {
        let p = TrigPolynomial::from_coeffs([
            (-3, -GaussianRational::one()),
            (0, GaussianRational::one()),
            (1, GaussianRational::from_int(2)),
        ]);
        assert_eq!(p.to_string(), "-z^-3 + 1 + 2*z");
        assert_eq!(TrigPolynomial::zero().to_string(), "0");
    }
}
