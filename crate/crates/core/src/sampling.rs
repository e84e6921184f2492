//! Seeded random generators for property checks: monomials, elements,
//! functionals, measures, and expression trees. All distributions are fixed
//! so a given seed reproduces the same case list everywhere.

use num::{BigInt, BigRational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::expr::Expr;
use crate::functional::Functional;
use crate::measure::{CircleMeasure, TurnAngle};
use crate::monomial::Monomial;
use crate::scalar::GaussianRational;
use crate::value::Value;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform monomial with entries in `[0, max_entry]`.
pub fn sample_monomial(rng: &mut ChaCha8Rng, max_entry: u64) -> Monomial {
    Monomial::new(rng.gen_range(0..=max_entry), rng.gen_range(0..=max_entry))
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-3i64..=3)),
        BigInt::from(rng.gen_range(1i64..=4)),
    )
}

/// Nonzero Gaussian rational with numerators in `[−3, 3]` and denominators in
/// `[1, 4]`; imaginary part present in a third of the samples.
pub fn sample_coeff(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let re = small_rational(rng);
        let im = if rng.gen_range(0..3) == 0 {
            small_rational(rng)
        } else {
            BigRational::from_integer(0.into())
        };
        let c = GaussianRational::new(re, im);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Element with up to `max_terms` random terms and entries up to `max_entry`.
/// Coefficient collisions may cancel, so fewer terms (or zero) can result.
pub fn sample_element(rng: &mut ChaCha8Rng, max_terms: usize, max_entry: u64) -> Element {
    let terms = rng.gen_range(1..=max_terms);
    let mut e = Element::zero();
    for _ in 0..terms {
        e.insert(sample_monomial(rng, max_entry), sample_coeff(rng));
    }
    e
}

/// Compact element: a random element whose diagonal coefficient sums are then
/// cancelled by fresh monomials of the same index placed beyond the original
/// support.
pub fn sample_compact_element(rng: &mut ChaCha8Rng) -> Element {
    let mut e = sample_element(rng, 5, 6);
    let base = e.max_entry() + 1;
    for (k, sum) in e.diagonal_sums() {
        let mono = if k >= 0 {
            Monomial::new(base, base + k as u64)
        } else {
            Monomial::new(base + (-k) as u64, base)
        };
        e.insert(mono, -&sum);
    }
    e
}

/// Element with small nonzero integer coefficients: its truncations have
/// integer Gram matrices, whose top singular-value gaps stay generic enough
/// for power iteration to converge quickly.
pub fn sample_int_element(rng: &mut ChaCha8Rng, max_terms: usize, max_entry: u64) -> Element {
    let terms = rng.gen_range(1..=max_terms);
    let mut e = Element::zero();
    for _ in 0..terms {
        let c = loop {
            let v = rng.gen_range(-3i64..=3);
            if v != 0 {
                break v;
            }
        };
        e.insert(
            sample_monomial(rng, max_entry),
            GaussianRational::from_int(c),
        );
    }
    e
}

/// Diagonal element with small integer coefficients, so the truncated
/// matrix's squared singular values stay well separated for power iteration.
pub fn sample_diagonal_element(rng: &mut ChaCha8Rng, max_entry: u64) -> Element {
    let terms = rng.gen_range(1..=5);
    let mut e = Element::zero();
    for _ in 0..terms {
        let k = rng.gen_range(0..=max_entry);
        e.insert(
            Monomial::new(k, k),
            GaussianRational::from_int(rng.gen_range(-3i64..=3)),
        );
    }
    e
}

/// Finite-table functional with exact values on monomials with entries up
/// to 4.
pub fn sample_table_functional(rng: &mut ChaCha8Rng) -> Functional {
    let entries = rng.gen_range(2..=8);
    Functional::from_table((0..entries).map(|_| (sample_monomial(rng, 4), sample_coeff(rng))))
}

/// Atomic measure supported on quarter turns with exact Gaussian-rational
/// weights; every character it meets stays exact.
pub fn sample_quarter_measure(rng: &mut ChaCha8Rng) -> CircleMeasure {
    let atoms = rng.gen_range(1..=3);
    let mut m = CircleMeasure::zero();
    for _ in 0..atoms {
        let q = rng.gen_range(0i64..4);
        m.add_atom(TurnAngle::ratio(q, 4), Value::Exact(sample_coeff(rng)));
    }
    m
}

/// Measure with rational-turn atoms (denominators up to 12) and an optional
/// short density; characters may fall in the floating tier.
pub fn sample_rational_turn_measure(rng: &mut ChaCha8Rng) -> CircleMeasure {
    let atoms = rng.gen_range(1..=3);
    let mut m = CircleMeasure::zero();
    for _ in 0..atoms {
        let den = rng.gen_range(1i64..=12);
        let num = rng.gen_range(0..den.max(1));
        m.add_atom(TurnAngle::ratio(num, den), Value::Exact(sample_coeff(rng)));
    }
    if rng.gen_bool(0.5) {
        let coeffs = rng.gen_range(1..=3);
        for _ in 0..coeffs {
            let k = rng.gen_range(-3i64..=3);
            m.add_density(k, Value::Exact(sample_coeff(rng)));
        }
    }
    m
}

/// Random expression tree of the given depth. The tree is structurally valid
/// but may be semantically mixed-degree, which evaluation reports as an
/// error; the printer and parser must round-trip it regardless.
pub fn sample_expression(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..6) {
            0 => Expr::Mono(rng.gen_range(0..=6), rng.gen_range(0..=6)),
            1 => Expr::ShiftT,
            2 => Expr::ShiftTStar,
            3 => Expr::Identity,
            4 => Expr::ImagUnit,
            _ => Expr::Rational(BigRational::new(
                BigInt::from(rng.gen_range(0i64..=4)),
                BigInt::from(rng.gen_range(1i64..=4)),
            )),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(sample_expression(rng, depth - 1));
    match rng.gen_range(0..8) {
        0 => Expr::Add(sub(rng), sub(rng)),
        1 => Expr::Sub(sub(rng), sub(rng)),
        2 => Expr::Mul(sub(rng), sub(rng)),
        3 => Expr::Tensor(sub(rng), sub(rng)),
        4 => Expr::Pow(sub(rng), rng.gen_range(0..=4)),
        5 => Expr::Adjoint(sub(rng)),
        6 => Expr::Neg(sub(rng)),
        _ => sample_expression(rng, 0),
    }
}

/// Expression that evaluates to a plain element: tensor-free by
/// construction.
pub fn sample_element_expression(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    if depth == 0 {
        return sample_expression(rng, 0);
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(sample_element_expression(rng, depth - 1));
    match rng.gen_range(0..7) {
        0 => Expr::Add(sub(rng), sub(rng)),
        1 => Expr::Sub(sub(rng), sub(rng)),
        2 => Expr::Mul(sub(rng), sub(rng)),
        3 => Expr::Pow(sub(rng), rng.gen_range(0..=3)),
        4 => Expr::Adjoint(sub(rng)),
        5 => Expr::Neg(sub(rng)),
        _ => sample_expression(rng, 0),
    }
}
