//! Finite linear combinations of monomials: the dense unital *-subalgebra on
//! which every identity of the engine is exact. Terms are kept canonical
//! (sorted, no zero coefficients) so structural equality is algebra equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::GaussianRational;
use crate::trig::TrigPolynomial;
use crate::{scalar_atom_string, scalar_sign_split};

/// Element of the dense subalgebra: a canonical finite sum `Σ c · T(n,m)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, GaussianRational>,
}

/// Exact diagonal norm: the maximum of `|Â(m)|²` as a rational, plus its
/// floating square root.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalNorm {
    pub squared: BigRational,
    pub value: f64,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(Monomial::IDENTITY)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut e = Self::zero();
        e.insert(m, c);
        e
    }

    /// Scalar multiple of the identity.
    pub fn scalar(c: GaussianRational) -> Self {
        Self::term(Monomial::IDENTITY, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(iter: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in iter {
            e.insert(m, c);
        }
        e
    }

    /// Adds `c·m` into the sum, dropping the term if the coefficient cancels.
    pub fn insert(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> GaussianRational {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// If the element is a scalar multiple of the identity, that scalar.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        if self.terms.is_empty() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::IDENTITY) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Conjugate-linear involution: coefficients conjugated, monomials swapped.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.swap(), c.conj())))
    }

    /// Linear antihomomorphism: monomials swapped, coefficients untouched.
    pub fn antipode(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.swap(), c.clone())))
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut acc = Self::identity();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Sub-sum of terms whose monomial index equals `k`.
    pub fn graded_component(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.index() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficient sums grouped by index; the element is compact exactly when
    /// every sum cancels.
    pub fn diagonal_sums(&self) -> BTreeMap<i64, GaussianRational> {
        let mut sums: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let entry = sums.entry(m.index()).or_insert_with(GaussianRational::zero);
            *entry += c;
        }
        sums.retain(|_, c| !c.is_zero());
        sums
    }

    /// Image in the quotient by the compacts: `T(n,m) ↦ z^(m−n)`.
    pub fn symbol(&self) -> TrigPolynomial {
        TrigPolynomial::from_coeffs(self.diagonal_sums())
    }

    pub fn is_compact(&self) -> bool {
        self.diagonal_sums().is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|m| m.is_diagonal())
    }

    /// Smallest and largest index over the terms; `(0, 0)` for the zero
    /// element.
    pub fn index_range(&self) -> (i64, i64) {
        let mut it = self.terms.keys().map(|m| m.index());
        match it.next() {
            None => (0, 0),
            Some(first) => it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))),
        }
    }

    /// Largest shift power appearing in any term.
    pub fn max_entry(&self) -> u64 {
        self.terms.keys().map(|m| m.max_entry()).max().unwrap_or(0)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, cv) in &v.coords {
            for (m, ca) in &self.terms {
                if let Some(i) = m.apply(*j) {
                    out.insert(i, ca * cv);
                }
            }
        }
        out
    }

    /// Gelfand transform of a diagonal element at the point `m`: the
    /// eigenvalue `Â(m) = Σ_{k ≤ m} β_k` of the action on `e_m`.
    pub fn gelfand(&self, point: u64) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (mono, c) in &self.terms {
            if !mono.is_diagonal() {
                return Err(Error::NotDiagonal {
                    term: mono.to_string(),
                    index: mono.index(),
                });
            }
            if mono.n <= point {
                acc += c;
            }
        }
        Ok(acc)
    }

    /// Rebuilds a diagonal element from its eigenvalue sequence
    /// `α_0, …, α_K` (constant beyond `K`): `β_0 = α_0`,
    /// `β_{k+1} = α_{k+1} − α_k`.
    pub fn diagonal_from_eigenvalues(alphas: &[GaussianRational]) -> Self {
        let mut e = Self::zero();
        let mut prev = GaussianRational::zero();
        for (k, a) in alphas.iter().enumerate() {
            e.insert(Monomial::new(k as u64, k as u64), a - &prev);
            prev = a.clone();
        }
        e
    }

    /// Exact sup-norm of a diagonal element: `sup_m |Â(m)|` attained on the
    /// finite support since `Â` is eventually constant.
    pub fn norm_t0(&self) -> Result<DiagonalNorm> {
        let support = self.max_entry();
        let mut best = BigRational::zero();
        for m in 0..=support {
            let sq = self.gelfand(m)?.norm_sqr();
            if sq > best {
                best = sq;
            }
        }
        let value = num::ToPrimitive::to_f64(&best).unwrap_or(f64::NAN).sqrt();
        Ok(DiagonalNorm {
            squared: best,
            value,
        })
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, -c);
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Element {
    /// Canonical sum, parseable back: `T(1,1) - 2*T(2,2) + (1/2+i)*T(3,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = scalar_sign_split(c);
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", scalar_atom_string(&mag))?;
            }
        }
        Ok(())
    }
}

/// Finite combination of basis vectors `e_j` of one-sided sequence space.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vector {
    coords: BTreeMap<u64, GaussianRational>,
}

impl Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(j: u64) -> Self {
        let mut v = Self::zero();
        v.insert(j, GaussianRational::one());
        v
    }

    pub fn insert(&mut self, j: u64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coords.entry(j).or_insert_with(GaussianRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coords.remove(&j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, j: u64) -> GaussianRational {
        self.coords.get(&j).cloned().unwrap_or_default()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&u64, &GaussianRational)> {
        self.coords.iter()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (pos, (j, c)) in self.coords.iter().enumerate() {
            let (neg, mag) = scalar_sign_split(c);
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "e_{j}")?;
            } else {
                write!(f, "{}*e_{j}", scalar_atom_string(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u64, m: u64) -> Element {
        Element::monomial(Monomial::new(n, m))
    }

    fn int(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn bilinear_product() {
        // (I + T(1,1))·T(1,0) = 2·T(1,0)
        let a = &Element::identity() + &t(1, 1);
        let prod = &a * &t(1, 0);
        assert_eq!(prod, t(1, 0).scale(&int(2)));

        // Cross terms collapse: (T(1,0) − T(2,1))·(T(0,1) − T(1,2)) = T(1,1) − T(2,2)
        let p = &(&t(1, 0) - &t(2, 1)) * &(&t(0, 1) - &t(1, 2));
        let expected = Element::from_terms([
            (Monomial::new(1, 1), int(1)),
            (Monomial::new(2, 2), int(-1)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn adjoint_is_conjugate_linear_antihomomorphism() {
        let one_plus_i = GaussianRational::new(
            num::BigRational::from_integer(1.into()),
            num::BigRational::from_integer(1.into()),
        );
        let a = t(1, 0).scale(&one_plus_i);
        assert_eq!(a.adjoint(), t(0, 1).scale(&one_plus_i.conj()));

        let b = &t(2, 1) + &t(0, 3).scale(&int(-2));
        let c = &t(1, 1) + &t(4, 0);
        assert_eq!((&b * &c).adjoint(), &c.adjoint() * &b.adjoint());
        assert_eq!(b.adjoint().adjoint(), b);
    }

    #[test]
    fn antipode_is_antimultiplicative() {
        let a = &t(0, 1) * &t(1, 0);
        assert_eq!(a, Element::identity());
        let s = |e: &Element| e.antipode();
        let b = &t(2, 1) + &t(1, 3);
        let c = &t(0, 2) + &t(5, 0).scale(&int(3));
        assert_eq!(s(&(&b * &c)), &s(&c) * &s(&b));
        assert_eq!(s(&s(&b)), b);
    }

    #[test]
    fn grading_and_symbol() {
        let a = Element::from_terms([
            (Monomial::new(0, 0), int(1)),
            (Monomial::new(0, 1), int(2)),
            (Monomial::new(1, 1), int(3)),
        ]);
        assert_eq!(
            a.graded_component(0),
            &Element::identity() + &t(1, 1).scale(&int(3))
        );
        assert_eq!(a.graded_component(1), t(0, 1).scale(&int(2)));
        assert!(a.graded_component(5).is_zero());

        let sym = (&t(0, 1) + &t(1, 2)).symbol();
        assert_eq!(sym, TrigPolynomial::term(1, int(2)));
        assert!((&t(0, 0) - &t(1, 1)).symbol().is_zero());
    }

    #[test]
    fn compactness_by_diagonal_sums() {
        assert!((&t(0, 0) - &t(1, 1)).is_compact());
        assert!(!t(0, 0).is_compact());
        assert!((&t(0, 1) - &t(1, 2)).is_compact());
    }

    #[test]
    fn basis_application() {
        assert!(t(0, 1).apply(&Vector::basis(0)).is_zero());
        assert_eq!(t(1, 0).apply(&Vector::basis(3)), Vector::basis(4));
        assert!((&t(0, 0) - &t(2, 2)).apply(&Vector::basis(5)).is_zero());
    }

    #[test]
    fn gelfand_and_norm() {
        let a = &Element::identity() - &t(1, 1).scale(&int(2));
        assert_eq!(a.gelfand(0).unwrap(), int(1));
        assert_eq!(a.gelfand(1).unwrap(), int(-1));
        assert_eq!(a.gelfand(7).unwrap(), int(-1));
        let n = a.norm_t0().unwrap();
        assert_eq!(n.squared, BigRational::from_integer(1.into()));
        assert_eq!(n.value, 1.0);

        assert_eq!(t(3, 3).gelfand(2).unwrap(), int(0));
        assert_eq!(t(3, 3).gelfand(3).unwrap(), int(1));

        assert!(matches!(t(0, 1).gelfand(0), Err(Error::NotDiagonal { .. })));

        let three = Element::identity().scale(&int(3));
        assert_eq!(three.norm_t0().unwrap().value, 3.0);
    }

    #[test]
    fn eigenvalue_round_trip() {
        let alphas = [int(1), int(-1), int(-1), int(4)];
        let a = Element::diagonal_from_eigenvalues(&alphas);
        for (m, alpha) in alphas.iter().enumerate() {
            assert_eq!(&a.gelfand(m as u64).unwrap(), alpha);
        }
        assert_eq!(a.gelfand(9).unwrap(), int(4));
    }

    #[test]
    fn display_round_trip_forms() {
        let a = Element::from_terms([
            (Monomial::new(1, 1), int(1)),
            (Monomial::new(2, 2), int(-2)),
            (Monomial::new(3, 3), int(1)),
        ]);
        assert_eq!(a.to_string(), "T(1,1) - 2*T(2,2) + T(3,3)");
        assert_eq!(Element::zero().to_string(), "0");
        let b = Element::term(
            Monomial::new(0, 1),
            GaussianRational::new(
                BigRational::new(1.into(), 2.into()),
                BigRational::from_integer(1.into()),
            ),
        );
        assert_eq!(b.to_string(), "(1/2+i)*T(0,1)");
        let c = Element::term(Monomial::new(0, 1), -GaussianRational::i());
        assert_eq!(c.to_string(), "-i*T(0,1)");
    }
}
