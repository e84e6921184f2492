//! Expression AST shared by the parser, the pretty-printer, and the
//! evaluator. Precedence, loosest to tightest: `+ -`, `(x)`, `*` (and
//! juxtaposition), `^`, postfix `'`. The printer keeps spaces around binary
//! operators so `T * T` never collapses to `T*T`, which the lexer would read
//! as the adjoint shift followed by `T`.

use std::fmt;

use num::BigRational;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::GaussianRational;
use crate::tensor::TensorElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Monomial literal `T(n,m)`.
    Mono(u64, u64),
    /// The shift `T = T(1,0)`.
    ShiftT,
    /// The adjoint shift `T* = T(0,1)`.
    ShiftTStar,
    /// The identity `I = T(0,0)`.
    Identity,
    /// The imaginary unit `i`.
    ImagUnit,
    /// Nonnegative rational literal `p/q`; negative values appear as `Neg`.
    Rational(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Tensor product `a (x) b`.
    Tensor(Box<Expr>, Box<Expr>),
    /// Natural power `a^k`.
    Pow(Box<Expr>, u64),
    /// Postfix adjoint `a'`.
    Adjoint(Box<Expr>),
}

/// Result of evaluation: a plain element or a tensor element of degree 2
/// or 3.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalValue {
    El(Element),
    Tensor(TensorElement),
}

impl EvalValue {
    pub fn degree(&self) -> u8 {
        match self {
            EvalValue::El(_) => 1,
            EvalValue::Tensor(t) => t.degree(),
        }
    }

    pub fn into_element(self) -> Result<Element> {
        match self {
            EvalValue::El(e) => Ok(e),
            EvalValue::Tensor(t) => Err(Error::DegreeMismatch {
                left: t.degree(),
                right: 1,
            }),
        }
    }

    fn as_scalar(&self) -> Option<GaussianRational> {
        match self {
            EvalValue::El(e) => e.as_scalar(),
            EvalValue::Tensor(_) => None,
        }
    }

    /// Widens a scalar multiple of the identity to the identity of a higher
    /// tensor degree, for mixed-degree sums and products.
    fn coerce_degree(&self, degree: u8) -> Option<EvalValue> {
        if self.degree() == degree {
            return Some(self.clone());
        }
        let c = self.as_scalar()?;
        Some(match degree {
            1 => EvalValue::El(Element::scalar(c)),
            d => EvalValue::Tensor(TensorElement::identity(d).scale(&c)),
        })
    }
}

impl Expr {
    pub fn eval(&self) -> Result<EvalValue> {
        match self {
            Expr::Mono(n, m) => Ok(EvalValue::El(Element::monomial(Monomial::new(*n, *m)))),
            Expr::ShiftT => Ok(EvalValue::El(Element::monomial(Monomial::new(1, 0)))),
            Expr::ShiftTStar => Ok(EvalValue::El(Element::monomial(Monomial::new(0, 1)))),
            Expr::Identity => Ok(EvalValue::El(Element::identity())),
            Expr::ImagUnit => Ok(EvalValue::El(Element::scalar(GaussianRational::i()))),
            Expr::Rational(r) => Ok(EvalValue::El(Element::scalar(
                GaussianRational::from_rational(r.clone()),
            ))),
            Expr::Neg(e) => Ok(match e.eval()? {
                EvalValue::El(e) => EvalValue::El(-&e),
                EvalValue::Tensor(t) => EvalValue::Tensor(t.scale(&(-GaussianRational::one()))),
            }),
            Expr::Add(a, b) => combine_linear(a.eval()?, b.eval()?, false),
            Expr::Sub(a, b) => combine_linear(a.eval()?, b.eval()?, true),
            Expr::Mul(a, b) => combine_mul(a.eval()?, b.eval()?),
            Expr::Tensor(a, b) => combine_tensor(a.eval()?, b.eval()?),
            Expr::Pow(a, k) => match a.eval()? {
                EvalValue::El(e) => Ok(EvalValue::El(e.pow(*k))),
                EvalValue::Tensor(t) => {
                    let mut acc = TensorElement::identity(t.degree());
                    for _ in 0..*k {
                        acc = acc.tensor_mul(&t)?;
                    }
                    Ok(EvalValue::Tensor(acc))
                }
            },
            Expr::Adjoint(a) => Ok(match a.eval()? {
                EvalValue::El(e) => EvalValue::El(e.adjoint()),
                EvalValue::Tensor(t) => EvalValue::Tensor(t.adjoint()),
            }),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..) => 0,
            Expr::Tensor(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Adjoint(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Mono(n, m) => write!(f, "T({n},{m})")?,
            Expr::ShiftT => write!(f, "T")?,
            Expr::ShiftTStar => write!(f, "T*")?,
            Expr::Identity => write!(f, "I")?,
            Expr::ImagUnit => write!(f, "i")?,
            Expr::Rational(r) => write!(f, "{r}")?,
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 1)?;
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 1)?;
            }
            Expr::Tensor(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " (x) ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Pow(a, k) => {
                a.fmt_prec(f, 4)?;
                write!(f, "^{k}")?;
            }
            Expr::Adjoint(a) => {
                a.fmt_prec(f, 4)?;
                write!(f, "'")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn combine_linear(a: EvalValue, b: EvalValue, subtract: bool) -> Result<EvalValue> {
    let degree = a.degree().max(b.degree());
    let a = a.coerce_degree(degree).ok_or(Error::DegreeMismatch {
        left: 1,
        right: degree,
    })?;
    let b = b.coerce_degree(degree).ok_or(Error::DegreeMismatch {
        left: degree,
        right: 1,
    })?;
    match (a, b) {
        (EvalValue::El(x), EvalValue::El(y)) => {
            Ok(EvalValue::El(if subtract { &x - &y } else { &x + &y }))
        }
        (EvalValue::Tensor(x), EvalValue::Tensor(y)) => Ok(EvalValue::Tensor(if subtract {
            x.sub(&y)?
        } else {
            x.add(&y)?
        })),
        _ => unreachable!("coerced to equal degrees"),
    }
}

fn combine_mul(a: EvalValue, b: EvalValue) -> Result<EvalValue> {
    // A scalar factor scales the other side regardless of degree.
    if let Some(c) = a.as_scalar() {
        return Ok(match b {
            EvalValue::El(e) => EvalValue::El(e.scale(&c)),
            EvalValue::Tensor(t) => EvalValue::Tensor(t.scale(&c)),
        });
    }
    if let Some(c) = b.as_scalar() {
        return Ok(match a {
            EvalValue::El(e) => EvalValue::El(e.scale(&c)),
            EvalValue::Tensor(t) => EvalValue::Tensor(t.scale(&c)),
        });
    }
    match (a, b) {
        (EvalValue::El(x), EvalValue::El(y)) => Ok(EvalValue::El(&x * &y)),
        (EvalValue::Tensor(x), EvalValue::Tensor(y)) => Ok(EvalValue::Tensor(x.tensor_mul(&y)?)),
        (a, b) => Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        }),
    }
}

fn combine_tensor(a: EvalValue, b: EvalValue) -> Result<EvalValue> {
    let degree = a.degree() + b.degree();
    if degree > 3 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let mut out = TensorElement::zero(degree);
    for (ta, ca) in tuples(&a) {
        for (tb, cb) in tuples(&b) {
            let mut tuple = ta.clone();
            tuple.extend_from_slice(&tb);
            out.insert(tuple, &ca * &cb);
        }
    }
    Ok(EvalValue::Tensor(out))
}

fn tuples(v: &EvalValue) -> Vec<(Vec<Monomial>, GaussianRational)> {
    match v {
        EvalValue::El(e) => e.terms().map(|(m, c)| (vec![*m], c.clone())).collect(),
        EvalValue::Tensor(t) => t.terms().map(|(tu, c)| (tu.clone(), c.clone())).collect(),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
