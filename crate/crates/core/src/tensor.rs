//! Tensor squares and cubes of the dense subalgebra, the comultiplication
//! `Δ(T(n,m)) = T(n,m) ⊗ T(n,m)`, the flip, the multiplication map μ, the
//! weak-Hopf axioms, and the witness showing the span {(a⊗I)Δ(b)} cannot
//! approximate T(1,0) ⊗ T(0,1), so the comultiplication is not a quantum-group
//! one.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::sampling;
use crate::scalar::GaussianRational;
use crate::{scalar_atom_string, scalar_sign_split};

/// Canonical element of the degree-2 or degree-3 tensor power: a finite sum of
/// monomial tuples with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    degree: u8,
    terms: BTreeMap<Vec<Monomial>, GaussianRational>,
}

impl TensorElement {
    pub fn zero(degree: u8) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(degree: u8) -> Self {
        let mut t = Self::zero(degree);
        t.insert(
            vec![Monomial::IDENTITY; degree as usize],
            GaussianRational::one(),
        );
        t
    }

    /// Elementary tensor of the given factors.
    pub fn from_factors(factors: &[&Element]) -> Self {
        let mut t = Self::zero(factors.len() as u8);
        let mut stack: Vec<(Vec<Monomial>, GaussianRational)> =
            vec![(Vec::new(), GaussianRational::one())];
        for f in factors {
            let mut next = Vec::new();
            for (tuple, c) in &stack {
                for (m, cf) in f.terms() {
                    let mut tuple = tuple.clone();
                    tuple.push(*m);
                    next.push((tuple, c * cf));
                }
            }
            stack = next;
        }
        for (tuple, c) in stack {
            t.insert(tuple, c);
        }
        t
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn insert(&mut self, tuple: Vec<Monomial>, c: GaussianRational) {
        debug_assert_eq!(tuple.len(), self.degree as usize);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&tuple) {
            Some(entry) => {
                *entry += &c;
                if entry.is_zero() {
                    self.terms.remove(&tuple);
                }
            }
            None => {
                self.terms.insert(tuple, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let mut out = self.clone();
        for (tuple, c) in &rhs.terms {
            out.insert(tuple.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let mut out = self.clone();
        for (tuple, c) in &rhs.terms {
            out.insert(tuple.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }

    fn check_degree(&self, rhs: &Self) -> Result<()> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: rhs.degree,
            });
        }
        Ok(())
    }

    /// Componentwise product: slotwise monomial multiplication, coefficient
    /// product.
    pub fn tensor_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let mut out = Self::zero(self.degree);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &rhs.terms {
                let tuple: Vec<Monomial> = ta.iter().zip(tb).map(|(a, b)| a.mul(*b)).collect();
                out.insert(tuple, ca * cb);
            }
        }
        Ok(out)
    }

    /// Swaps the two factors of a degree-2 tensor.
    pub fn flip(&self) -> Result<Self> {
        if self.degree != 2 {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: 2,
            });
        }
        let mut out = Self::zero(2);
        for (t, c) in &self.terms {
            out.insert(vec![t[1], t[0]], c.clone());
        }
        Ok(out)
    }

    /// Componentwise adjoint with conjugated coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for (t, c) in &self.terms {
            out.insert(t.iter().map(|m| m.swap()).collect(), c.conj());
        }
        out
    }

    /// Multiplies the factors of every term left to right.
    pub fn mu(&self) -> Element {
        let mut out = Element::zero();
        for (t, c) in &self.terms {
            let prod = t
                .iter()
                .copied()
                .reduce(|a, b| a.mul(b))
                .unwrap_or(Monomial::IDENTITY);
            out.insert(prod, c.clone());
        }
        out
    }

    /// Applies a monomial map to one tensor slot (used to place the antipode
    /// inside the weak-Hopf composites).
    pub fn map_slot(&self, slot: usize, f: impl Fn(Monomial) -> Monomial) -> Self {
        let mut out = Self::zero(self.degree);
        for (t, c) in &self.terms {
            let mut tuple = t.clone();
            tuple[slot] = f(tuple[slot]);
            out.insert(tuple, c.clone());
        }
        out
    }

    /// Replaces slot `slot` of each term, a monomial μ, by μ⊗μ, raising the
    /// degree by one. Composing with `delta` yields (Δ⊗id)Δ and (id⊗Δ)Δ.
    pub fn expand_slot(&self, slot: usize) -> Self {
        let mut out = Self::zero(self.degree + 1);
        for (t, c) in &self.terms {
            let mut tuple = t.clone();
            tuple.insert(slot, t[slot]);
            out.insert(tuple, c.clone());
        }
        out
    }

    /// Action of a degree-2 tensor on combinations of `e_i ⊗ e_j`.
    pub fn apply2(&self, v: &TensorVector) -> Result<TensorVector> {
        if self.degree != 2 {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: 2,
            });
        }
        let mut out = TensorVector::zero();
        for ((i, j), cv) in &v.coords {
            for (t, ct) in &self.terms {
                if let (Some(a), Some(b)) = (t[0].apply(*i), t[1].apply(*j)) {
                    out.insert((a, b), ct * cv);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    /// Canonical sum of slotwise tuples: `T(1,0) (x) T(1,0) + 2*T(1,1) (x) I`
    /// prints with explicit monomials, `T(0,0)` included.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (t, c)) in self.terms.iter().enumerate() {
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
            if !mag.is_one() {
                write!(f, "{}*", scalar_atom_string(&mag))?;
            }
            for (slot, m) in t.iter().enumerate() {
                if slot > 0 {
                    write!(f, " (x) ")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Finite combination of the basis vectors `e_i ⊗ e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    coords: BTreeMap<(u64, u64), GaussianRational>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: u64, j: u64) -> Self {
        let mut v = Self::zero();
        v.insert((i, j), GaussianRational::one());
        v
    }

    pub fn insert(&mut self, key: (u64, u64), c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .coords
            .entry(key)
            .or_insert_with(GaussianRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coords.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, i: u64, j: u64) -> GaussianRational {
        self.coords.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&(u64, u64), &GaussianRational)> {
        self.coords.iter()
    }
}

/// `Δ(a)`: the linear extension of `T(n,m) ↦ T(n,m) ⊗ T(n,m)`.
pub fn delta(a: &Element) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for (m, c) in a.terms() {
        out.insert(vec![*m, *m], c.clone());
    }
    out
}

/// `Δ²(a) = (Δ⊗id)Δ(a)`: the diagonal triple.
pub fn delta2(a: &Element) -> TensorElement {
    let mut out = TensorElement::zero(3);
    for (m, c) in a.terms() {
        out.insert(vec![*m, *m, *m], c.clone());
    }
    out
}

/// Checks both weak-antipode axioms exactly on `a`:
/// `μ(id⊗S⊗id)Δ²(a) = a` and `μ(S⊗id⊗S)Δ²(a) = S(a)`.
pub fn weak_hopf_check(a: &Element) -> bool {
    let d2 = delta2(a);
    let first = d2.map_slot(1, Monomial::swap).mu() == *a;
    let second = d2
        .map_slot(0, Monomial::swap)
        .map_slot(2, Monomial::swap)
        .mu()
        == a.antipode();
    first && second
}

/// Outcome of the quantum-group witness: every sampled member of the span
/// {(a ⊗ I)·Δ(b)} keeps the second tensor leg of `B(e_0 ⊗ e_1)` away from
/// `e_0`, so no member comes closer than distance 1 to `T(1,0) ⊗ T(0,1)`.
/// The mirror span {(I ⊗ a)·Δ(b)} is checked symmetrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub samples: usize,
    pub seed: u64,
    pub primary_failures: usize,
    pub mirror_failures: usize,
}

impl WitnessReport {
    pub fn certified(&self) -> bool {
        self.primary_failures == 0 && self.mirror_failures == 0
    }

    /// The certified distance bound when no failure occurred.
    pub fn lower_bound(&self) -> f64 {
        1.0
    }
}

/// Samples `samples` random combinations from each span and verifies the
/// orthogonality that forces the distance bound.
pub fn cqg_witness(samples: usize, seed: u64) -> WitnessReport {
    let mut rng = sampling::rng(seed);
    let x = TensorVector::basis(0, 1);
    let x_mirror = TensorVector::basis(1, 0);
    let a_op = TensorElement::from_factors(&[
        &Element::monomial(Monomial::new(1, 0)),
        &Element::monomial(Monomial::new(0, 1)),
    ]);
    debug_assert_eq!(a_op.apply2(&x).unwrap(), TensorVector::basis(1, 0));

    let mut primary_failures = 0;
    let mut mirror_failures = 0;
    for _ in 0..samples {
        let num_terms = rng.gen_range(1..=5);
        let mut b = TensorElement::zero(2);
        let mut b_mirror = TensorElement::zero(2);
        for _ in 0..num_terms {
            let outer = Element::monomial(sampling::sample_monomial(&mut rng, 6));
            let inner = Element::monomial(sampling::sample_monomial(&mut rng, 6));
            let coeff = Element::scalar(sampling::sample_coeff(&mut rng));
            let left = TensorElement::from_factors(&[&(&outer * &coeff), &Element::identity()]);
            let right = TensorElement::from_factors(&[&Element::identity(), &(&outer * &coeff)]);
            let d = delta(&inner);
            b = b.add(&left.tensor_mul(&d).unwrap()).unwrap();
            b_mirror = b_mirror.add(&right.tensor_mul(&d).unwrap()).unwrap();
        }
        let bx = b.apply2(&x).unwrap();
        if bx.coords().any(|((_, j), _)| *j == 0) {
            primary_failures += 1;
        }
        let bx_mirror = b_mirror.apply2(&x_mirror).unwrap();
        if bx_mirror.coords().any(|((i, _), _)| *i == 0) {
            mirror_failures += 1;
        }
    }
    WitnessReport {
        samples,
        seed,
        primary_failures,
        mirror_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u64, m: u64) -> Element {
        Element::monomial(Monomial::new(n, m))
    }

    #[test]
    fn delta_is_multiplicative() {
        let a = &t(1, 0) + &t(2, 1).scale(&GaussianRational::from_int(2));
        let b = &t(0, 1) - &t(1, 1);
        assert_eq!(delta(&(&a * &b)), delta(&a).tensor_mul(&delta(&b)).unwrap());
        assert_eq!(delta(&Element::identity()), TensorElement::identity(2));
    }

    #[test]
    fn coassociativity_via_slot_expansion() {
        let a = &t(2, 1) + &t(0, 3).scale(&GaussianRational::i());
        let d = delta(&a);
        assert_eq!(d.expand_slot(0), delta2(&a));
        assert_eq!(d.expand_slot(1), delta2(&a));
    }

    #[test]
    fn cocommutativity() {
        let a = &t(1, 2) + &t(4, 0);
        let d = delta(&a);
        assert_eq!(d.flip().unwrap(), d);
    }

    #[test]
    fn mu_collapses() {
        let x = TensorElement::from_factors(&[&t(1, 0), &t(0, 1)]);
        assert_eq!(x.mu(), t(1, 1));
        let y = TensorElement::from_factors(&[&t(2, 1), &t(1, 2), &t(2, 1)]);
        assert_eq!(y.mu(), t(2, 1));
        let z = TensorElement::from_factors(&[&Element::identity(), &t(3, 2)]);
        assert_eq!(z.mu(), t(3, 2));
    }

    #[test]
    fn tensor_mul_componentwise() {
        let tt = TensorElement::from_factors(&[&t(1, 0), &t(1, 0)]);
        let ss = TensorElement::from_factors(&[&t(0, 1), &t(0, 1)]);
        assert_eq!(
            tt.tensor_mul(&ss).unwrap(),
            TensorElement::from_factors(&[&t(1, 1), &t(1, 1)])
        );
        let deg3 = TensorElement::identity(3);
        assert!(matches!(
            tt.tensor_mul(&deg3),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn weak_hopf_axioms() {
        assert!(weak_hopf_check(&t(2, 1)));
        assert!(weak_hopf_check(&Element::zero()));
        let mixed = &(&t(1, 0) - &t(0, 2).scale(&GaussianRational::ratio(3, 4)))
            + &t(5, 5).scale(&GaussianRational::i());
        assert!(weak_hopf_check(&mixed));
    }

    #[test]
    fn witness_hand_cases() {
        let x = TensorVector::basis(0, 1);
        // B = (T(1,0) ⊗ I)·Δ(T(1,0)): Bx = e_2 ⊗ e_2.
        let b = TensorElement::from_factors(&[&t(1, 0), &Element::identity()])
            .tensor_mul(&delta(&t(1, 0)))
            .unwrap();
        assert_eq!(b.apply2(&x).unwrap(), TensorVector::basis(2, 2));
        // Δ(T(0,1))x = 0: the first leg annihilates e_0.
        assert!(delta(&t(0, 1)).apply2(&x).unwrap().is_zero());
        // Ax = e_1 ⊗ e_0.
        let a = TensorElement::from_factors(&[&t(1, 0), &t(0, 1)]);
        assert_eq!(a.apply2(&x).unwrap(), TensorVector::basis(1, 0));
    }

    #[test]
    fn witness_sampling_certifies() {
        let report = cqg_witness(25, 7);
        assert!(report.certified());
        assert_eq!(report.samples, 25);
    }
}
