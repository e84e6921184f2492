//! Measures on the circle restricted to finite atomic parts plus
//! trigonometric-polynomial densities: closed under convolution, with exact
//! arithmetic whenever the characters involved are Gaussian-rational
//! (quarter-turn angles). These realize the functionals that vanish on
//! compact operators.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

use crate::functional::Functional;
use crate::scalar::GaussianRational;
use crate::value::Value;

/// Angle on the circle stored as an exact fraction of a full turn, reduced to
/// `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TurnAngle(BigRational);

impl TurnAngle {
    pub fn new(turns: BigRational) -> Self {
        Self(reduce_mod_one(turns))
    }

    /// `p/q` of a full turn.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn fraction(&self) -> &BigRational {
        &self.0
    }

    pub fn add(&self, rhs: &TurnAngle) -> TurnAngle {
        TurnAngle::new(&self.0 + &rhs.0)
    }

    /// The conjugated character `e^{−2πi·k·t}`: exact at quarter-turn
    /// multiples (values 1, −i, −1, i), double-precision otherwise.
    pub fn character_conj(&self, k: i64) -> Value {
        let s = reduce_mod_one(&self.0 * BigRational::from_integer(BigInt::from(k)));
        let quarter = &s * BigRational::from_integer(BigInt::from(4));
        if quarter.is_integer() {
            let q = quarter.to_integer() % BigInt::from(4);
            let g = match q.to_i64().unwrap() {
                0 => GaussianRational::one(),
                1 => -GaussianRational::i(),
                2 => -GaussianRational::one(),
                3 => GaussianRational::i(),
                _ => unreachable!(),
            };
            Value::Exact(g)
        } else {
            let phase = -2.0 * std::f64::consts::PI * s.to_f64().unwrap_or(f64::NAN);
            Value::Approx(Complex64::new(phase.cos(), phase.sin()))
        }
    }
}

fn reduce_mod_one(t: BigRational) -> BigRational {
    let floor = t.floor();
    t - floor
}

impl fmt::Display for TurnAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Measure with finitely many atoms plus a trig-polynomial density against
/// normalized arc length. The density is stored by its Fourier coefficients:
/// `density[k]` is the coefficient of `e^{ikθ}`, which is also the measure's
/// k-th Fourier coefficient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircleMeasure {
    atoms: BTreeMap<TurnAngle, Value>,
    density: BTreeMap<i64, Value>,
}

impl CircleMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Unit point mass at the given angle.
    pub fn dirac(angle: TurnAngle) -> Self {
        let mut m = Self::zero();
        m.add_atom(angle, Value::one());
        m
    }

    /// Normalized arc length: density identically 1.
    pub fn haar() -> Self {
        let mut m = Self::zero();
        m.add_density(0, Value::one());
        m
    }

    pub fn from_density<I: IntoIterator<Item = (i64, Value)>>(coeffs: I) -> Self {
        let mut m = Self::zero();
        for (k, c) in coeffs {
            m.add_density(k, c);
        }
        m
    }

    pub fn add_atom(&mut self, angle: TurnAngle, weight: Value) {
        if weight.is_zero() {
            return;
        }
        match self.atoms.get_mut(&angle) {
            Some(w) => {
                *w = w.add(&weight);
                if w.is_zero() {
                    self.atoms.remove(&angle);
                }
            }
            None => {
                self.atoms.insert(angle, weight);
            }
        }
    }

    pub fn add_density(&mut self, k: i64, coeff: Value) {
        if coeff.is_zero() {
            return;
        }
        match self.density.get_mut(&k) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.density.remove(&k);
                }
            }
            None => {
                self.density.insert(k, coeff);
            }
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&TurnAngle, &Value)> {
        self.atoms.iter()
    }

    pub fn density(&self) -> impl Iterator<Item = (&i64, &Value)> {
        self.density.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.density.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (t, w) in &rhs.atoms {
            out.add_atom(t.clone(), w.clone());
        }
        for (k, c) in &rhs.density {
            out.add_density(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Value) -> Self {
        let mut out = Self::zero();
        for (t, w) in &self.atoms {
            out.add_atom(t.clone(), w.mul(c));
        }
        for (k, d) in &self.density {
            out.add_density(*k, d.mul(c));
        }
        out
    }

    /// Convolution: atoms add their angles and multiply their weights; an atom
    /// against a density rotates the density, multiplying coefficient `k` by
    /// `weight·e^{−2πik·angle}` so that the Fourier coefficients multiply;
    /// densities convolve by pointwise coefficient product.
    pub fn convolve(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (t1, w1) in &self.atoms {
            for (t2, w2) in &rhs.atoms {
                out.add_atom(t1.add(t2), w1.mul(w2));
            }
        }
        for (t, w) in &self.atoms {
            for (k, c) in &rhs.density {
                out.add_density(*k, c.mul(w).mul(&t.character_conj(*k)));
            }
        }
        for (t, w) in &rhs.atoms {
            for (k, c) in &self.density {
                out.add_density(*k, c.mul(w).mul(&t.character_conj(*k)));
            }
        }
        for (k, c) in &self.density {
            if let Some(d) = rhs.density.get(k) {
                out.add_density(*k, c.mul(d));
            }
        }
        out
    }

    /// `μ̂(k) = Σ weight·e^{−2πik·angle} + density coefficient at k`.
    pub fn fourier(&self, k: i64) -> Value {
        let mut acc = self.density.get(&k).cloned().unwrap_or_else(Value::zero);
        for (t, w) in &self.atoms {
            acc = acc.add(&w.mul(&t.character_conj(k)));
        }
        acc
    }

    /// The functional on the algebra induced by integrating the symbol:
    /// its value on `T(n,m)` is `μ̂(n−m)`, so it depends only on the index and
    /// vanishes on compact operators.
    pub fn to_functional(&self) -> Functional {
        Functional::from_measure(self.clone())
    }
}

impl fmt::Display for CircleMeasure {
    /// Literal syntax accepted by the parser (for exact weights):
    /// `dirac(1/4) * (1/2+i) + density{-2: 3/4, 0: 1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, w) in &self.atoms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "dirac({t})")?;
            if !matches!(w, Value::Exact(g) if g.is_one()) {
                // Bare form only for plain nonnegative rationals and the
                // lone `i`; anything else is parenthesized so the literal
                // parses back as one factor.
                let bare = match w {
                    Value::Exact(g) => {
                        (g.im().is_zero() && !g.re().is_negative()) || *g == GaussianRational::i()
                    }
                    Value::Approx(_) => false,
                };
                if bare {
                    write!(f, " * {w}")?;
                } else {
                    write!(f, " * ({w})")?;
                }
            }
        }
        if !self.density.is_empty() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "density{{")?;
            for (pos, (k, c)) in self.density.iter().enumerate() {
                if pos > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{k}: {c}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turn_characters_are_exact() {
        let t = TurnAngle::ratio(1, 4);
        assert_eq!(t.character_conj(0), Value::one());
        assert_eq!(t.character_conj(1), Value::Exact(-GaussianRational::i()));
        assert_eq!(t.character_conj(2), Value::from_int(-1));
        assert_eq!(t.character_conj(3), Value::Exact(GaussianRational::i()));
        assert_eq!(t.character_conj(4), Value::one());
        assert_eq!(t.character_conj(-1), Value::Exact(GaussianRational::i()));
    }

    #[test]
    fn general_characters_float() {
        let t = TurnAngle::ratio(1, 3);
        let c = t.character_conj(1);
        assert!(!c.is_exact());
        let expected = Complex64::new(-0.5, -(3.0f64).sqrt() / 2.0);
        assert!((c.to_c64() - expected).norm() < 1e-14);
    }

    #[test]
    fn atom_group_law() {
        let a = CircleMeasure::dirac(TurnAngle::ratio(1, 4));
        let aa = a.convolve(&a);
        assert_eq!(aa, CircleMeasure::dirac(TurnAngle::ratio(1, 2)));
        let id = CircleMeasure::dirac(TurnAngle::zero());
        let h = CircleMeasure::haar();
        assert_eq!(id.convolve(&h), h);
        assert_eq!(id.convolve(&a), a);
    }

    #[test]
    fn haar_absorbs_atoms() {
        let h = CircleMeasure::haar();
        let d = CircleMeasure::dirac(TurnAngle::ratio(1, 4));
        assert_eq!(h.convolve(&d), h);
        let d3 = CircleMeasure::dirac(TurnAngle::ratio(1, 3));
        let hd = h.convolve(&d3);
        assert_eq!(hd.fourier(0), Value::one());
        for k in [-3i64, -1, 1, 2, 5] {
            assert!(hd.fourier(k).is_zero());
        }
    }

    #[test]
    fn fourier_values() {
        let h = CircleMeasure::haar();
        assert_eq!(h.fourier(0), Value::one());
        assert_eq!(h.fourier(3), Value::zero());
        let half = CircleMeasure::dirac(TurnAngle::ratio(1, 2));
        assert_eq!(half.fourier(1), Value::from_int(-1));
    }

    #[test]
    fn convolution_theorem_exact_case() {
        let a = CircleMeasure::dirac(TurnAngle::ratio(1, 4))
            .add(&CircleMeasure::from_density([(1, Value::from_int(2))]));
        let b = CircleMeasure::dirac(TurnAngle::ratio(1, 2)).add(&CircleMeasure::from_density([
            (1, Value::Exact(GaussianRational::i())),
            (-2, Value::one()),
        ]));
        let ab = a.convolve(&b);
        for k in -5..=5 {
            let lhs = ab.fourier(k);
            let rhs = a.fourier(k).mul(&b.fourier(k));
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn display_literals() {
        let mut m = CircleMeasure::dirac(TurnAngle::ratio(1, 4));
        m.add_density(-2, Value::Exact(GaussianRational::ratio(3, 4)));
        m.add_density(0, Value::one());
        assert_eq!(m.to_string(), "dirac(1/4) + density{-2: 3/4, 0: 1}");
        let w = CircleMeasure::zero();
        assert_eq!(w.to_string(), "0");
        let mut s = CircleMeasure::zero();
        s.add_atom(
            TurnAngle::zero(),
            Value::Exact(GaussianRational::ratio(-1, 2)),
        );
        assert_eq!(s.to_string(), "dirac(0) * (-1/2)");
    }
}
