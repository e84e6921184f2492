//! Lexer and recursive-descent parser for expressions and measure literals.
//!
//! Lexing is greedy around `T`: `T` immediately followed by `*` is the
//! adjoint-shift token `T*`, and `T` immediately followed by `(` opens a
//! monomial literal `T(n,m)`. Whitespace breaks the fusion, which pins down
//! the three documented cases: `T*T` is (T*)·T = I, `T * T` is T·T, and
//! `T'*T` is T*·T = I. Everything else is whitespace-insensitive.
//! Juxtaposition of factors multiplies: `2T(1,0)` equals `2 * T(1,0)`.

use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::{EvalValue, Expr};
use crate::measure::{CircleMeasure, TurnAngle};
use crate::scalar::GaussianRational;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Mono(u64, u64),
    ShiftT,
    ShiftTStar,
    IdentityI,
    ImagI,
    Number {
        value: BigRational,
        natural: Option<u64>,
    },
    Plus,
    Minus,
    Star,
    Caret,
    Prime,
    LParen,
    RParen,
    TensorOp,
    Dirac,
    Density,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Mono(n, m) => write!(f, "T({n},{m})"),
            Tok::ShiftT => write!(f, "T"),
            Tok::ShiftTStar => write!(f, "T*"),
            Tok::IdentityI => write!(f, "I"),
            Tok::ImagI => write!(f, "i"),
            Tok::Number { value, .. } => write!(f, "{value}"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::Prime => write!(f, "'''"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::TensorOp => write!(f, "'(x)'"),
            Tok::Dirac => write!(f, "dirac"),
            Tok::Density => write!(f, "density"),
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::Comma => write!(f, "','"),
            Tok::Colon => write!(f, "':'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, offset: usize, expected: &str) -> Error {
        let found = match self.bytes.get(offset) {
            Some(b) => format!("'{}'", *b as char),
            None => "end of input".to_string(),
        };
        Error::Syntax {
            offset,
            expected: expected.to_string(),
            found,
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn read_natural(&mut self) -> Result<(BigInt, usize)> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(start, "a digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok((text.parse::<BigInt>().unwrap(), start))
    }

    fn read_small_natural(&mut self, what: &str) -> Result<u64> {
        let (big, start) = self.read_natural()?;
        big.to_u64().ok_or_else(|| Error::Syntax {
            offset: start,
            expected: format!("{what} that fits in 64 bits"),
            found: big.to_string(),
        })
    }

    /// `T(` has been consumed; reads `n,m)`.
    fn finish_monomial(&mut self) -> Result<Tok> {
        self.skip_ws();
        let n = self.read_small_natural("a monomial entry")?;
        self.skip_ws();
        if self.peek() != Some(b',') {
            return Err(self.err(self.pos, "','"));
        }
        self.pos += 1;
        self.skip_ws();
        let m = self.read_small_natural("a monomial entry")?;
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.err(self.pos, "')'"));
        }
        self.pos += 1;
        Ok(Tok::Mono(n, m))
    }

    fn next_token(&mut self) -> Result<Token> {
        self.skip_ws();
        let offset = self.pos;
        let Some(b) = self.peek() else {
            return Ok(Token {
                tok: Tok::Eof,
                offset,
            });
        };
        let tok = match b {
            b'T' => {
                self.pos += 1;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        Tok::ShiftTStar
                    }
                    Some(b'(') => {
                        self.pos += 1;
                        self.finish_monomial()?
                    }
                    _ => Tok::ShiftT,
                }
            }
            b'I' => {
                self.pos += 1;
                Tok::IdentityI
            }
            b'(' => {
                if self.bytes.get(self.pos + 1) == Some(&b'x')
                    && self.bytes.get(self.pos + 2) == Some(&b')')
                {
                    self.pos += 3;
                    Tok::TensorOp
                } else {
                    self.pos += 1;
                    Tok::LParen
                }
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'\'' => {
                self.pos += 1;
                Tok::Prime
            }
            b'{' => {
                self.pos += 1;
                Tok::LBrace
            }
            b'}' => {
                self.pos += 1;
                Tok::RBrace
            }
            b',' => {
                self.pos += 1;
                Tok::Comma
            }
            b':' => {
                self.pos += 1;
                Tok::Colon
            }
            b if b.is_ascii_digit() => {
                let (numer, _) = self.read_natural()?;
                if self.peek() == Some(b'/')
                    && matches!(self.bytes.get(self.pos + 1), Some(d) if d.is_ascii_digit())
                {
                    self.pos += 1;
                    let (denom, dstart) = self.read_natural()?;
                    if denom.is_zero() {
                        return Err(Error::Syntax {
                            offset: dstart,
                            expected: "a nonzero denominator".to_string(),
                            found: "0".to_string(),
                        });
                    }
                    Tok::Number {
                        value: BigRational::new(numer, denom),
                        natural: None,
                    }
                } else {
                    Tok::Number {
                        natural: numer.to_u64(),
                        value: BigRational::from_integer(numer),
                    }
                }
            }
            b if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                match word {
                    "i" => Tok::ImagI,
                    "dirac" => Tok::Dirac,
                    "density" => Tok::Density,
                    other => {
                        return Err(Error::Syntax {
                            offset: start,
                            expected: "T, T*, T(n,m), I, i, dirac, or density".to_string(),
                            found: format!("'{other}'"),
                        })
                    }
                }
            }
            _ => return Err(self.err(offset, "an expression token")),
        };
        Ok(Token { tok, offset })
    }

    fn tokenize(mut self) -> Result<Vec<Token>> {
        let mut out = Vec::new();
        loop {
            let t = self.next_token()?;
            let eof = t.tok == Tok::Eof;
            out.push(t);
            if eof {
                return Ok(out);
            }
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Self {
            tokens: Lexer::new(text).tokenize()?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].offset
    }

    fn advance(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<()> {
        if *self.peek() == want {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn unexpected(&self, expected: &str) -> Error {
        Error::Syntax {
            offset: self.offset(),
            expected: expected.to_string(),
            found: self.peek().to_string(),
        }
    }

    fn at_atom_start(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Mono(..)
                | Tok::ShiftT
                | Tok::ShiftTStar
                | Tok::IdentityI
                | Tok::ImagI
                | Tok::Number { .. }
                | Tok::LParen
        )
    }

    /// sum := ['-'] tensor (('+'|'-') tensor)*
    fn sum(&mut self) -> Result<Expr> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.advance();
            Expr::Neg(Box::new(self.tensor()?))
        } else {
            self.tensor()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc = Expr::Add(Box::new(acc), Box::new(self.tensor()?));
                }
                Tok::Minus => {
                    self.advance();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.tensor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    /// tensor := product ('(x)' product)*
    fn tensor(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        while *self.peek() == Tok::TensorOp {
            self.advance();
            acc = Expr::Tensor(Box::new(acc), Box::new(self.product()?));
        }
        Ok(acc)
    }

    /// product := factor (('*' factor) | factor)* — juxtaposition multiplies.
    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.advance();
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.at_atom_start() {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    /// factor := atom (''' | '^' natural)*
    fn factor(&mut self) -> Result<Expr> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Tok::Prime => {
                    self.advance();
                    acc = Expr::Adjoint(Box::new(acc));
                }
                Tok::Caret => {
                    self.advance();
                    match self.peek().clone() {
                        Tok::Number {
                            natural: Some(k), ..
                        } => {
                            self.advance();
                            acc = Expr::Pow(Box::new(acc), k);
                        }
                        _ => return Err(self.unexpected("a natural exponent")),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Mono(n, m) => {
                self.advance();
                Ok(Expr::Mono(n, m))
            }
            Tok::ShiftT => {
                self.advance();
                Ok(Expr::ShiftT)
            }
            Tok::ShiftTStar => {
                self.advance();
                Ok(Expr::ShiftTStar)
            }
            Tok::IdentityI => {
                self.advance();
                Ok(Expr::Identity)
            }
            Tok::ImagI => {
                self.advance();
                Ok(Expr::ImagUnit)
            }
            Tok::Number { value, .. } => {
                self.advance();
                Ok(Expr::Rational(value))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("an expression atom")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn eval_scalar(&self, expr: Expr, offset: usize) -> Result<GaussianRational> {
        match expr.eval()? {
            EvalValue::El(e) => e.as_scalar().ok_or(Error::Syntax {
                offset,
                expected: "a scalar value".to_string(),
                found: "a non-scalar element".to_string(),
            }),
            EvalValue::Tensor(_) => Err(Error::Syntax {
                offset,
                expected: "a scalar value".to_string(),
                found: "a tensor".to_string(),
            }),
        }
    }

    /// One scalar factor: `3/4`, `3/4i`, `i`, or a parenthesized expression.
    /// The additive chain is deliberately excluded so a bare `+` between
    /// measure terms is never captured by a weight.
    fn scalar_factor(&mut self) -> Result<GaussianRational> {
        let offset = self.offset();
        let expr = self.scalar_expr_atom()?;
        self.eval_scalar(expr, offset)
    }

    /// Scalar with an additive chain and optional leading sign:
    /// `1/2+3/4i`, `-i`, `1-i`. Used where a delimiter follows (density
    /// entries), so the chain cannot swallow a term separator.
    fn scalar_entry(&mut self) -> Result<GaussianRational> {
        let offset = self.offset();
        let mut acc = if *self.peek() == Tok::Minus {
            self.advance();
            Expr::Neg(Box::new(self.scalar_expr_atom()?))
        } else {
            self.scalar_expr_atom()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc = Expr::Add(Box::new(acc), Box::new(self.scalar_expr_atom()?));
                }
                Tok::Minus => {
                    self.advance();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.scalar_expr_atom()?));
                }
                _ => break,
            }
        }
        self.eval_scalar(acc, offset)
    }

    fn scalar_expr_atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Number { value, .. } => {
                self.advance();
                let mut acc = Expr::Rational(value);
                // Tight form `3/4i`.
                if *self.peek() == Tok::ImagI {
                    self.advance();
                    acc = Expr::Mul(Box::new(acc), Box::new(Expr::ImagUnit));
                }
                Ok(acc)
            }
            Tok::ImagI => {
                self.advance();
                Ok(Expr::ImagUnit)
            }
            Tok::LParen => {
                self.advance();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a scalar")),
        }
    }

    /// measure := ['-'] mterm (('+'|'-') mterm)*
    fn measure(&mut self) -> Result<CircleMeasure> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.advance();
            self.measure_term()?
                .scale(&Value::Exact(-GaussianRational::one()))
        } else {
            self.measure_term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc = acc.add(&self.measure_term()?);
                }
                Tok::Minus => {
                    self.advance();
                    acc = acc.add(
                        &self
                            .measure_term()?
                            .scale(&Value::Exact(-GaussianRational::one())),
                    );
                }
                _ => return Ok(acc),
            }
        }
    }

    /// mterm := mfactor ('*' mfactor)* — at most one measure factor, scalars
    /// scale it. A bare scalar denotes a measure only when it is zero.
    fn measure_term(&mut self) -> Result<CircleMeasure> {
        let mut measure: Option<CircleMeasure> = None;
        let mut coeff = GaussianRational::one();
        loop {
            let offset = self.offset();
            match self.peek() {
                Tok::Dirac => {
                    self.advance();
                    let m = self.dirac_body()?;
                    if measure.is_some() {
                        return Err(Error::Syntax {
                            offset,
                            expected: "a scalar factor (one measure per term)".to_string(),
                            found: "dirac".to_string(),
                        });
                    }
                    measure = Some(m);
                }
                Tok::Density => {
                    self.advance();
                    let m = self.density_body()?;
                    if measure.is_some() {
                        return Err(Error::Syntax {
                            offset,
                            expected: "a scalar factor (one measure per term)".to_string(),
                            found: "density".to_string(),
                        });
                    }
                    measure = Some(m);
                }
                Tok::Number { .. } | Tok::ImagI | Tok::LParen => {
                    let c = self.scalar_factor()?;
                    coeff = &coeff * &c;
                }
                _ => return Err(self.unexpected("dirac, density, or a scalar")),
            }
            if *self.peek() == Tok::Star {
                self.advance();
            } else {
                break;
            }
        }
        match measure {
            Some(m) => Ok(m.scale(&Value::Exact(coeff))),
            None if coeff.is_zero() => Ok(CircleMeasure::zero()),
            None => Err(Error::Syntax {
                offset: self.offset(),
                expected: "a measure factor (dirac or density)".to_string(),
                found: self.peek().to_string(),
            }),
        }
    }

    /// `dirac` consumed; reads `(turn)`.
    fn dirac_body(&mut self) -> Result<CircleMeasure> {
        self.expect(Tok::LParen, "'('")?;
        let negate = if *self.peek() == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let turn = match self.peek().clone() {
            Tok::Number { value, .. } => {
                self.advance();
                value
            }
            _ => return Err(self.unexpected("a rational turn angle")),
        };
        self.expect(Tok::RParen, "')'")?;
        let turn = if negate { -turn } else { turn };
        Ok(CircleMeasure::dirac(TurnAngle::new(turn)))
    }

    /// `density` consumed; reads `{k: c, ...}`.
    fn density_body(&mut self) -> Result<CircleMeasure> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut m = CircleMeasure::zero();
        if *self.peek() == Tok::RBrace {
            self.advance();
            return Ok(m);
        }
        loop {
            let negate = if *self.peek() == Tok::Minus {
                self.advance();
                true
            } else {
                false
            };
            let k = match self.peek().clone() {
                Tok::Number {
                    natural: Some(k), ..
                } => {
                    self.advance();
                    let k = k as i64;
                    if negate {
                        -k
                    } else {
                        k
                    }
                }
                _ => return Err(self.unexpected("an integer frequency")),
            };
            self.expect(Tok::Colon, "':'")?;
            let c = self.scalar_entry()?;
            m.add_density(k, Value::Exact(c));
            match self.advance() {
                Tok::Comma => continue,
                Tok::RBrace => return Ok(m),
                _ => {
                    return Err(Error::Syntax {
                        offset: self.tokens[self.pos.saturating_sub(1)].offset,
                        expected: "',' or '}'".to_string(),
                        found: self.tokens[self.pos.saturating_sub(1)].tok.to_string(),
                    })
                }
            }
        }
    }
}

/// Parses an expression to its AST.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.sum()?;
    p.finish()?;
    Ok(e)
}

/// Parses and evaluates, yielding an element or a tensor element.
pub fn parse_eval(text: &str) -> Result<EvalValue> {
    parse_expression(text)?.eval()
}

/// Parses and evaluates, requiring a plain (non-tensor) element.
pub fn parse_element(text: &str) -> Result<Element> {
    parse_eval(text)?.into_element()
}

/// Parses a measure literal: `dirac(p/q) * w + density{k: c, ...}`.
pub fn parse_measure(text: &str) -> Result<CircleMeasure> {
    let mut p = Parser::new(text)?;
    let m = p.measure()?;
    p.finish()?;
    Ok(m)
}
