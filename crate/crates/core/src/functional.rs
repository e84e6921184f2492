//! The commutative convolution algebra of functionals on the algebra,
//! represented by their generator rules: a functional is determined by its
//! values on the monomials, and since the comultiplication is diagonal on
//! monomials, convolution is the pointwise product of rules.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::measure::CircleMeasure;
use crate::monomial::Monomial;
use crate::scalar::GaussianRational;
use crate::value::Value;

/// Tolerance used when a rule identity must be compared across the floating
/// tier; exact-tier comparisons never use it.
const RULE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
enum Kind {
    Counit,
    Haar,
    Haar0,
    DiagonalState(BigRational),
    Table(BTreeMap<Monomial, GaussianRational>),
    Measure(CircleMeasure),
    Product(Box<Functional>, Box<Functional>),
}

/// A functional given by its generator rule `Monomial → Value`, with an
/// optional structural certificate of membership in the annihilator of the
/// compacts (rule depends only on the index).
#[derive(Debug, Clone)]
pub struct Functional {
    kind: Kind,
    k_perp: Option<bool>,
}

impl Functional {
    /// `ε`: identically 1 on monomials; the unit of convolution.
    pub fn counit() -> Self {
        Self {
            kind: Kind::Counit,
            k_perp: Some(true),
        }
    }

    /// `h`: 1 at the identity monomial, 0 elsewhere; the Haar functional.
    pub fn haar() -> Self {
        Self {
            kind: Kind::Haar,
            k_perp: Some(false),
        }
    }

    /// `h₀`: the indicator of the diagonal monomials; Haar within the
    /// annihilator of the compacts.
    pub fn haar0() -> Self {
        Self {
            kind: Kind::Haar0,
            k_perp: Some(true),
        }
    }

    /// The faithful state `A ↦ Σ_k (1−q)q^k ⟨Ae_k, e_k⟩`, whose rule is
    /// `q^n` on diagonal monomials and 0 off the diagonal.
    pub fn diagonal_state(q: BigRational) -> Result<Self> {
        if q <= BigRational::zero() || q >= BigRational::one() {
            return Err(Error::Domain(format!(
                "diagonal state weight must lie strictly between 0 and 1, got {q}"
            )));
        }
        Ok(Self {
            kind: Kind::DiagonalState(q),
            k_perp: Some(false),
        })
    }

    /// Finite table of exact values; zero outside the table.
    pub fn from_table<I: IntoIterator<Item = (Monomial, GaussianRational)>>(entries: I) -> Self {
        let mut table = BTreeMap::new();
        for (m, v) in entries {
            if !v.is_zero() {
                table.insert(m, v);
            }
        }
        Self {
            kind: Kind::Table(table),
            k_perp: None,
        }
    }

    /// The functional induced by a circle measure: `T(n,m) ↦ μ̂(n−m)`.
    pub fn from_measure(m: CircleMeasure) -> Self {
        Self {
            kind: Kind::Measure(m),
            k_perp: Some(true),
        }
    }

    /// Generator rule.
    pub fn rule(&self, m: Monomial) -> Value {
        match &self.kind {
            Kind::Counit => Value::one(),
            Kind::Haar => {
                if m == Monomial::IDENTITY {
                    Value::one()
                } else {
                    Value::zero()
                }
            }
            Kind::Haar0 => {
                if m.is_diagonal() {
                    Value::one()
                } else {
                    Value::zero()
                }
            }
            Kind::DiagonalState(q) => {
                if m.is_diagonal() {
                    Value::Exact(GaussianRational::from_rational(q.clone()).powu(m.n))
                } else {
                    Value::zero()
                }
            }
            Kind::Table(t) => t
                .get(&m)
                .map(|v| Value::Exact(v.clone()))
                .unwrap_or_else(Value::zero),
            Kind::Measure(mu) => mu.fourier(m.n as i64 - m.m as i64),
            Kind::Product(f, g) => f.rule(m).mul(&g.rule(m)),
        }
    }

    /// Linear extension of the rule over the terms of an element.
    pub fn evaluate(&self, a: &Element) -> Value {
        let mut acc = Value::zero();
        for (m, c) in a.terms() {
            acc = acc.add(&Value::Exact(c.clone()).mul(&self.rule(*m)));
        }
        acc
    }

    /// Convolution `(f∗g)(A) = (f⊗g)(Δ(A))`; since Δ is diagonal on
    /// monomials this is the pointwise product of rules.
    pub fn convolve(&self, g: &Functional) -> Functional {
        let k_perp = match (self.k_perp, g.k_perp) {
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        Functional {
            kind: Kind::Product(Box::new(self.clone()), Box::new(g.clone())),
            k_perp,
        }
    }

    /// Structural certificate, when known at construction, that the rule
    /// depends only on the index.
    pub fn k_perp_hint(&self) -> Option<bool> {
        self.k_perp
    }

    /// Finite certificate that the rule depends only on the index `m − n`,
    /// over all monomials with entries up to `depth`.
    pub fn in_k_perp(&self, depth: u64) -> bool {
        for n in 0..=depth {
            for m in 0..=depth {
                let mono = Monomial::new(n, m);
                let k = mono.index();
                let rep = if k >= 0 {
                    Monomial::new(0, k as u64)
                } else {
                    Monomial::new((-k) as u64, 0)
                };
                if !self.rule(mono).approx_eq(&self.rule(rep), RULE_TOL) {
                    return false;
                }
            }
        }
        true
    }

    /// Finite shadow of the Haar characterization: the rule is the indicator
    /// of the identity monomial up to `depth`, and `f∗ρ = ρ(I)·f` rule-wise
    /// against every probe.
    pub fn is_haar(&self, probes: &[Functional], depth: u64) -> bool {
        if !self
            .rule(Monomial::IDENTITY)
            .approx_eq(&Value::one(), RULE_TOL)
        {
            return false;
        }
        for n in 0..=depth {
            for m in 0..=depth {
                if n == 0 && m == 0 {
                    continue;
                }
                if !self.rule(Monomial::new(n, m)).is_zero() {
                    return false;
                }
            }
        }
        for probe in probes {
            let lambda = probe.rule(Monomial::IDENTITY);
            let conv = self.convolve(probe);
            for n in 0..=depth {
                for m in 0..=depth {
                    let mono = Monomial::new(n, m);
                    let lhs = conv.rule(mono);
                    let rhs = lambda.mul(&self.rule(mono));
                    if !lhs.approx_eq(&rhs, RULE_TOL) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Cesàro means of convolution powers: `ρ_n = (1/n) Σ_{k=1}^n ρ^{∗k}`,
    /// evaluated on all monomials with entries up to `probe_depth`. Since
    /// convolution is the pointwise rule product, `ρ^{∗k}` is the pointwise
    /// k-th power.
    pub fn cesaro_iterate(&self, steps: u64, probe_depth: u64) -> Result<CesaroTable> {
        if steps == 0 {
            return Err(Error::Domain(
                "cesaro iteration needs at least one step".into(),
            ));
        }
        if !self
            .rule(Monomial::IDENTITY)
            .approx_eq(&Value::one(), RULE_TOL)
        {
            return Err(Error::Domain(
                "cesaro iteration requires a state: rule at the identity must be 1".into(),
            ));
        }
        let inv_n = Value::Exact(GaussianRational::from_rational(BigRational::new(
            1.into(),
            steps.into(),
        )));
        let haar = Functional::haar();
        let mut entries = BTreeMap::new();
        let mut max_deviation = 0.0f64;
        for n in 0..=probe_depth {
            for m in 0..=probe_depth {
                let mono = Monomial::new(n, m);
                let r = self.rule(mono);
                let mut sum = Value::zero();
                let mut power = Value::one();
                for _ in 0..steps {
                    power = power.mul(&r);
                    sum = sum.add(&power);
                }
                let mean = sum.mul(&inv_n);
                let dev = mean.sub(&haar.rule(mono)).abs();
                if dev > max_deviation {
                    max_deviation = dev;
                }
                entries.insert(mono, mean);
            }
        }
        Ok(CesaroTable {
            steps,
            depth: probe_depth,
            entries,
            max_deviation,
        })
    }
}

/// Values of a Cesàro mean on the probe grid, with its distance from the
/// Haar rule.
#[derive(Debug, Clone)]
pub struct CesaroTable {
    pub steps: u64,
    pub depth: u64,
    pub entries: BTreeMap<Monomial, Value>,
    pub max_deviation: f64,
}

impl fmt::Display for CesaroTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "steps={} depth={}", self.steps, self.depth)?;
        for (m, v) in &self.entries {
            writeln!(f, "{m} -> {v}")?;
        }
        write!(f, "max deviation from Haar: {:e}", self.max_deviation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u64, m: u64) -> Monomial {
        Monomial::new(n, m)
    }

    fn el(terms: &[(u64, u64, i64)]) -> Element {
        Element::from_terms(
            terms
                .iter()
                .map(|&(n, m, c)| (Monomial::new(n, m), GaussianRational::from_int(c))),
        )
    }

    #[test]
    fn named_rules() {
        assert_eq!(Functional::counit().rule(t(5, 2)), Value::one());
        assert_eq!(Functional::haar().rule(t(1, 1)), Value::zero());
        assert_eq!(Functional::haar().rule(t(0, 0)), Value::one());
        assert_eq!(Functional::haar0().rule(t(4, 4)), Value::one());
        assert_eq!(Functional::haar0().rule(t(4, 3)), Value::zero());
    }

    #[test]
    fn evaluation_is_linear() {
        let h = Functional::haar();
        assert_eq!(h.evaluate(&el(&[(0, 0, 1), (2, 2, 5)])), Value::one());
        let eps = Functional::counit();
        assert_eq!(eps.evaluate(&el(&[(3, 1, 1), (1, 3, -1)])), Value::zero());
        let h0 = Functional::haar0();
        assert_eq!(h0.evaluate(&el(&[(2, 2, 1), (0, 1, 1)])), Value::one());
    }

    #[test]
    fn diagonal_state_rule() {
        let rho = Functional::diagonal_state(BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(
            rho.rule(t(1, 1)),
            Value::Exact(GaussianRational::ratio(1, 2))
        );
        assert_eq!(rho.rule(t(0, 0)), Value::one());
        assert_eq!(rho.rule(t(2, 5)), Value::zero());
        assert!(Functional::diagonal_state(BigRational::from_integer(1.into())).is_err());
        assert!(Functional::diagonal_state(BigRational::new((-1).into(), 2.into())).is_err());
    }

    #[test]
    fn convolution_is_pointwise() {
        let rho = Functional::diagonal_state(BigRational::new(1.into(), 2.into())).unwrap();
        let phi = Functional::diagonal_state(BigRational::new(1.into(), 3.into())).unwrap();
        let conv = rho.convolve(&phi);
        assert_eq!(
            conv.rule(t(2, 2)),
            Value::Exact(GaussianRational::ratio(1, 36))
        );
        // Counit is the unit.
        let eps = Functional::counit();
        for n in 0..5 {
            for m in 0..5 {
                assert_eq!(eps.convolve(&rho).rule(t(n, m)), rho.rule(t(n, m)));
            }
        }
        // Haar is idempotent.
        let h = Functional::haar();
        for n in 0..5 {
            for m in 0..5 {
                assert_eq!(h.convolve(&h).rule(t(n, m)), h.rule(t(n, m)));
            }
        }
    }

    #[test]
    fn haar_detection() {
        let rho = Functional::diagonal_state(BigRational::new(1.into(), 2.into())).unwrap();
        let probes = vec![rho, Functional::counit(), Functional::haar0()];
        assert!(Functional::haar().is_haar(&probes, 8));
        assert!(!Functional::counit().is_haar(&probes, 8));
        assert!(!Functional::haar0().is_haar(&probes, 8));
    }

    #[test]
    fn k_perp_membership() {
        assert!(Functional::haar0().in_k_perp(8));
        assert!(Functional::counit().in_k_perp(8));
        assert!(!Functional::haar().in_k_perp(8));
        let rho = Functional::diagonal_state(BigRational::new(1.into(), 2.into())).unwrap();
        assert!(!rho.in_k_perp(8));
        // Closure under convolution for certified members.
        let f = Functional::haar0().convolve(&Functional::counit());
        assert_eq!(f.k_perp_hint(), Some(true));
        assert!(f.in_k_perp(8));
    }

    #[test]
    fn cesaro_exact_value() {
        let rho = Functional::diagonal_state(BigRational::new(1.into(), 2.into())).unwrap();
        let table = rho.cesaro_iterate(4, 2).unwrap();
        // (1/4)(1/2 + 1/4 + 1/8 + 1/16) = 15/64.
        assert_eq!(
            table.entries[&t(1, 1)],
            Value::Exact(GaussianRational::ratio(15, 64))
        );
        assert_eq!(table.entries[&t(0, 0)], Value::one());
        assert_eq!(table.entries[&t(0, 1)], Value::zero());
    }
}
