//! Independent floating-point oracle: elements realized as N×N matrix
//! truncations (compressions to span{e_0,…,e_{N−1}}), with spectral-norm
//! estimation by power iteration, a finite-rank compactness oracle, and
//! discrete rotation averaging that re-derives graded components from
//! floating phases.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;

use crate::element::{Element, Vector};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

const MAX_POWER_ITERATIONS: usize = 500_000;

/// Compression `P_N A P_N`: entry `(i, j) = ⟨A e_j, e_i⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedMatrix {
    mat: DMatrix<Complex64>,
}

impl TruncatedMatrix {
    pub fn new(a: &Element, n: usize) -> Self {
        let mut mat = DMatrix::zeros(n, n);
        for (mono, c) in a.terms() {
            let c = c.to_c64();
            for j in 0..n as u64 {
                if let Some(i) = mono.apply(j) {
                    if (i as usize) < n {
                        mat[(i as usize, j as usize)] += c;
                    }
                }
            }
        }
        Self { mat }
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn product(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat * &rhs.mat,
        }
    }

    /// Largest singular value by power iteration on the Gram operator,
    /// deterministic all-ones start vector. Converged when the Gram residual
    /// `‖Gv − λv‖` drops within `tol·λ` of the Rayleigh quotient `λ`: near
    /// spectral degeneracy the iteration stalls, but there the residual
    /// bounds the Rayleigh error by the same margin, so the stall is
    /// harmless.
    pub fn op_norm(&self, tol: f64) -> Result<f64> {
        self.op_norm_details(tol).map(|(sigma, _)| sigma)
    }

    /// `op_norm` plus the unit vector attaining the returned estimate:
    /// the result is exactly `(‖A·v‖, v)` with `‖v‖ = 1`, so the first
    /// component is a certified lower bound for the true norm.
    pub fn op_norm_details(&self, tol: f64) -> Result<(f64, DVector<Complex64>)> {
        self.op_norm_budget(tol, MAX_POWER_ITERATIONS)
    }

    pub(crate) fn op_norm_budget(
        &self,
        tol: f64,
        max_iter: usize,
    ) -> Result<(f64, DVector<Complex64>)> {
        if tol <= 0.0 {
            return Err(Error::Domain(format!(
                "power iteration tolerance must be positive, got {tol}"
            )));
        }
        let n = self.size();
        if n == 0 {
            return Ok((0.0, DVector::zeros(0)));
        }
        let scale = 1.0 / (n as f64).sqrt();
        let mut v = DVector::from_element(n, Complex64::new(scale, 0.0));
        for _ in 0..max_iter {
            let av = &self.mat * &v;
            let lambda = av.norm_squared();
            let w = self.mat.adjoint() * av;
            let residual = (&w - &v * Complex64::new(lambda, 0.0)).norm();
            if residual <= tol * lambda {
                return Ok((lambda.sqrt(), v));
            }
            let scale = w.norm();
            v = w * Complex64::new(1.0 / scale, 0.0);
        }
        Err(Error::NoConvergence { max_iter, tol })
    }

    /// Row-major dump: first line `N N`, then N² lines `re im`.
    pub fn dump(&self) -> String {
        let n = self.size();
        let mut out = format!("{n} {n}\n");
        for i in 0..n {
            for j in 0..n {
                let e = self.mat[(i, j)];
                out.push_str(&format!("{} {}\n", e.re, e.im));
            }
        }
        out
    }
}

impl fmt::Display for TruncatedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

pub fn truncate(a: &Element, n: usize) -> TruncatedMatrix {
    TruncatedMatrix::new(a, n)
}

/// Compares the compression of `a·b` against the product of compressions on
/// the corner block of rows and columns below `N − d`, where `d` is the
/// largest shift power across `a`, `b`, and `a·b`. On that corner the two
/// agree exactly, because no contribution escapes the truncation window.
pub fn corner_product_check(a: &Element, b: &Element, n: usize) -> Result<bool> {
    let ab = a * b;
    let d = a.max_entry().max(b.max_entry()).max(ab.max_entry()) as usize;
    if n <= 2 * d {
        return Err(Error::GuardBandTooSmall {
            size: n,
            max_entry: d,
        });
    }
    let direct = truncate(&ab, n);
    let product = truncate(a, n).product(&truncate(b, n));
    let corner = n - d;
    let mut max_dev = 0.0f64;
    for i in 0..corner {
        for j in 0..corner {
            let dev = (direct.entry(i, j) - product.entry(i, j)).norm();
            if dev > max_dev {
                max_dev = dev;
            }
        }
    }
    Ok(max_dev <= 1e-12)
}

/// Compactness oracle independent of coefficient bookkeeping: a finite
/// combination is compact exactly when it annihilates every basis vector
/// beyond its shift window, so the oracle applies the element to
/// `e_{j₀}, …, e_{j₀+spread}` with `j₀ = 1 + max shift power` and tests for
/// exact zero.
pub fn finite_rank_oracle(a: &Element) -> bool {
    let j0 = 1 + a.max_entry();
    let (lo, hi) = a.index_range();
    let spread = (hi - lo) as u64;
    (j0..=j0 + spread).all(|j| a.apply(&Vector::basis(j)).is_zero())
}

/// Element with floating coefficients, as produced by the discrete rotation
/// average.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NumericElement {
    coeffs: BTreeMap<Monomial, Complex64>,
}

impl NumericElement {
    pub fn coeffs(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.coeffs.iter()
    }

    /// Largest coefficient deviation from an exact element, over the union
    /// of supports.
    pub fn max_deviation_from(&self, exact: &Element) -> f64 {
        let mut max_dev = 0.0f64;
        for (m, c) in &self.coeffs {
            let dev = (c - exact.coeff(*m).to_c64()).norm();
            if dev > max_dev {
                max_dev = dev;
            }
        }
        for (m, c) in exact.terms() {
            if !self.coeffs.contains_key(m) {
                let dev = c.to_c64().norm();
                if dev > max_dev {
                    max_dev = dev;
                }
            }
        }
        max_dev
    }
}

impl fmt::Display for NumericElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.coeffs.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({}{}{}i)*{m}",
                c.re,
                if c.im < 0.0 { "" } else { "+" },
                c.im
            )?;
        }
        Ok(())
    }
}

/// Discrete rotation average `(1/M) Σ_j e^{−2πijk/M} α_{2πj/M}(a)` over the
/// M-th roots of unity, where the rotation action multiplies each term by
/// `e^{i·index·θ}`. With `M` exceeding twice the largest index magnitude the
/// roots-of-unity sum isolates the index-k component exactly, up to floating
/// phase error.
pub fn rotation_average(a: &Element, k: i64, points: usize) -> Result<NumericElement> {
    let (lo, hi) = a.index_range();
    let spread = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    if points <= 2 * spread {
        return Err(Error::SpreadTooLarge { points, spread });
    }
    let mut coeffs: BTreeMap<Monomial, Complex64> = BTreeMap::new();
    let step = 2.0 * std::f64::consts::PI / points as f64;
    for j in 0..points {
        let theta = step * j as f64;
        let weight = Complex64::from_polar(1.0, -theta * k as f64);
        for (m, c) in a.terms() {
            let phase = Complex64::from_polar(1.0, theta * m.index() as f64);
            *coeffs.entry(*m).or_insert(Complex64::new(0.0, 0.0)) += weight * phase * c.to_c64();
        }
    }
    let inv = Complex64::new(1.0 / points as f64, 0.0);
    let mut out = NumericElement::default();
    for (m, c) in coeffs {
        let v = c * inv;
        if v.norm() > 1e-14 {
            out.coeffs.insert(m, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn t(n: u64, m: u64) -> Element {
        Element::monomial(Monomial::new(n, m))
    }

    #[test]
    fn truncation_patterns() {
        let shift = truncate(&t(1, 0), 3);
        assert_eq!(shift.entry(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(shift.entry(2, 1), Complex64::new(1.0, 0.0));
        assert_eq!(shift.entry(0, 0), Complex64::new(0.0, 0.0));

        let id = truncate(&Element::identity(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(id.entry(i, j), Complex64::new(want, 0.0));
            }
        }

        let p0 = truncate(&(&t(0, 0) - &t(1, 1)), 5);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(p0.entry(i, j), Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn corner_check_high_powers() {
        // T*⁵·T⁵ = I: the full-block comparison would fail near the edge,
        // the guard band keeps the agreement exact.
        let a = t(0, 5);
        let b = t(5, 0);
        assert!(corner_product_check(&a, &b, 16).unwrap());
        assert!(matches!(
            corner_product_check(&a, &b, 10),
            Err(Error::GuardBandTooSmall {
                size: 10,
                max_entry: 5
            })
        ));
        assert!(corner_product_check(&Element::identity(), &Element::identity(), 1).unwrap());
    }

    #[test]
    fn operator_norms() {
        let shift = truncate(&t(1, 0), 16);
        assert!((shift.op_norm(1e-12).unwrap() - 1.0).abs() < 1e-10);

        let three = truncate(
            &Element::identity().scale(&GaussianRational::from_int(3)),
            8,
        );
        assert!((three.op_norm(1e-12).unwrap() - 3.0).abs() < 1e-10);

        let diag = truncate(
            &(&t(0, 0) - &t(1, 1).scale(&GaussianRational::from_int(2))),
            8,
        );
        assert!((diag.op_norm(1e-12).unwrap() - 1.0).abs() < 1e-10);

        let zero = truncate(&Element::zero(), 8);
        assert_eq!(zero.op_norm(1e-12).unwrap(), 0.0);
    }

    #[test]
    fn finite_rank_detection() {
        assert!(finite_rank_oracle(&(&t(0, 1) - &t(1, 2))));
        assert!(!finite_rank_oracle(&t(2, 2)));
        assert!(finite_rank_oracle(&Element::zero()));
        assert!(finite_rank_oracle(&(&t(0, 0) - &t(3, 3))));
        assert!(!finite_rank_oracle(
            &(&t(0, 0) - &t(1, 1).scale(&GaussianRational::from_int(2)))
        ));
    }

    #[test]
    fn rotation_average_isolates_components() {
        let a = &t(0, 0) + &t(0, 1).scale(&GaussianRational::from_int(2));
        let avg = rotation_average(&a, 1, 8).unwrap();
        assert!(avg.max_deviation_from(&a.graded_component(1)) < 1e-12);
        let avg0 = rotation_average(&a, 0, 8).unwrap();
        assert!(avg0.max_deviation_from(&a.graded_component(0)) < 1e-12);
        let off = rotation_average(&a, 5, 16).unwrap();
        assert!(off.max_deviation_from(&Element::zero()) < 1e-12);

        let wide = &t(3, 0) + &t(0, 3);
        assert!(matches!(
            rotation_average(&wide, 0, 6),
            Err(Error::SpreadTooLarge {
                points: 6,
                spread: 3
            })
        ));
    }
}
