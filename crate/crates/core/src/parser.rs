//! Text grammar for rational functions over the Gaussian rationals
//! (`ratdec-expr v1`) and the canonical formatter.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | power)*      -- juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' uint)?
//! atom   := VAR | 'i' | uint | '(' expr ')'
//! ```
//!
//! `*` and `/` share a precedence level and associate to the left, so
//! `3/2x` is `(3/2) x`. Floating-point literals are rejected.

use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::poly::Poly;
use crate::ratfun::RatFun;

pub const EXPR_GRAMMAR: &str = "ratdec-expr v1";

const MAX_EXPONENT: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Inline,
    File(PathBuf),
}

/// Expression text plus where it came from, for diagnostics.
#[derive(Clone, Debug)]
pub struct ExprSource {
    pub text: String,
    pub origin: Origin,
}

impl ExprSource {
    pub fn inline(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            origin: Origin::Inline,
        }
    }

    pub fn file(path: impl Into<PathBuf>) -> std::io::Result<Self> {
        let path = path.into();
        let text = std::fs::read_to_string(&path)?;
        Ok(Self {
            text,
            origin: Origin::File(path),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub message: String,
    /// Byte offset into the input; never exceeds the input length.
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub origin: Option<PathBuf>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.origin {
            Some(p) => write!(f, "{}:", p.display())?,
            None => write!(f, "<inline>:")?,
        }
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Word(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str, variables: &[&str]) -> std::result::Result<Vec<Token>, (String, usize)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit()) {
                    return Err(("floating-point literals are not supported; use a/b".into(), i));
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push(Token { tok: Tok::Num(n), offset: start });
                continue;
            }
            '.' => return Err(("floating-point literals are not supported; use a/b".into(), i)),
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &text[start..i];
                if word == "i" || variables.contains(&word) {
                    out.push(Token { tok: Tok::Word(word.to_string()), offset: start });
                } else {
                    // Split runs like "xi" or "ix" into single-letter atoms.
                    for (k, ch) in word.char_indices() {
                        let s = ch.to_string();
                        if s == "i" || variables.contains(&s.as_str()) {
                            out.push(Token { tok: Tok::Word(s), offset: start + k });
                        } else {
                            return Err((format!("unknown identifier '{}'", word), start));
                        }
                    }
                }
                continue;
            }
            other => return Err((format!("unexpected character '{}'", other), i)),
        };
        // Multi-byte minus sign.
        i += c.len_utf8();
        out.push(Token { tok, offset: start });
    }
    out.push(Token { tok: Tok::End, offset: text.len() });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    variables: &'a [&'a str],
    seen_var: Option<String>,
}

type PResult<T> = std::result::Result<T, (String, usize)>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> PResult<RatFun> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<RatFun> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|_| ("division by zero".to_string(), at))?;
                }
                Tok::Num(_) | Tok::Word(_) | Tok::LParen => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<RatFun> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<RatFun> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump().tok {
            Tok::Num(n) => {
                let e: u64 = n
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| (format!("exponent must be at most {}", MAX_EXPONENT), at))?;
                Ok(base.pow(e as u32))
            }
            _ => Err(("expected a non-negative integer exponent after '^'".into(), at)),
        }
    }

    fn atom(&mut self) -> PResult<RatFun> {
        let at = self.offset();
        match self.bump().tok {
            Tok::Num(n) => Ok(RatFun::constant(GaussianRational::from_rational(
                BigRational::from_integer(n),
            ))),
            Tok::Word(w) if w == "i" => Ok(RatFun::constant(GaussianRational::i())),
            Tok::Word(w) => {
                debug_assert!(self.variables.contains(&w.as_str()));
                match &self.seen_var {
                    Some(prev) if *prev != w => {
                        return Err((
                            format!("mixed base symbols '{}' and '{}' in one expression", prev, w),
                            at,
                        ))
                    }
                    _ => self.seen_var = Some(w),
                }
                Ok(RatFun::x())
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump().tok {
                    Tok::RParen => Ok(inner),
                    _ => Err(("expected ')'".into(), close)),
                }
            }
            Tok::End => Err(("unexpected end of input".into(), at)),
            other => Err((format!("unexpected token {}", describe(&other)), at)),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("'{}'", n),
        Tok::Word(w) => format!("'{}'", w),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses with a set of accepted variable names, all of which stand for the
/// single indeterminate. Returns the expression and the variable name used,
/// if any. At most one distinct variable name may occur.
pub fn parse_with_variables(
    src: &ExprSource,
    variables: &[&str],
) -> Result<(RatFun, Option<String>), ParseError> {
    let make_err = |(message, offset): (String, usize)| {
        let offset = offset.min(src.text.len());
        let (line, column) = position(&src.text, offset);
        ParseError {
            message,
            offset,
            line,
            column,
            origin: match &src.origin {
                Origin::File(p) => Some(p.clone()),
                Origin::Inline => None,
            },
        }
    };
    let toks = lex(&src.text, variables).map_err(make_err)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        variables,
        seen_var: None,
    };
    let value = parser.expr().map_err(make_err)?;
    if *parser.peek() != Tok::End {
        let at = parser.offset();
        let what = describe(parser.peek());
        return Err(make_err((format!("unexpected {} after expression", what), at)));
    }
    Ok((value, parser.seen_var))
}

/// Parses a rational function in the variable `x`.
pub fn parse_ratfun(src: &ExprSource) -> Result<RatFun> {
    Ok(parse_with_variables(src, &["x"])?.0)
}

/// Convenience wrapper for inline text.
pub fn parse_str(text: &str) -> Result<RatFun> {
    parse_ratfun(&ExprSource::inline(text))
}

/// Parses an expression that must evaluate to a constant.
pub fn parse_constant(text: &str) -> Result<GaussianRational> {
    let f = parse_ratfun(&ExprSource::inline(text))?;
    if !f.is_constant() {
        return Err(Error::Inapplicable(format!("'{}' is not a constant", text)));
    }
    Ok(f.numer().coeff(0))
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficient rendering: `(negative, text, needs_star_before_monomial)`.
fn fmt_coeff(c: &GaussianRational) -> (bool, String, bool) {
    let (re, im) = (c.re(), c.im());
    if im.is_zero() {
        let text = fmt_rational(&re.abs());
        let star = !re.abs().denom().is_one();
        return (re.is_negative(), text, star);
    }
    if re.is_zero() {
        let a = im.abs();
        let text = if a.is_one() {
            "i".to_string()
        } else if a.denom().is_one() {
            format!("{}i", a.numer())
        } else {
            format!("{}*i", fmt_rational(&a))
        };
        return (im.is_negative(), text, true);
    }
    let imag = {
        let a = im.abs();
        if a.is_one() {
            "i".to_string()
        } else if a.denom().is_one() {
            format!("{}i", a.numer())
        } else {
            format!("{}*i", fmt_rational(&a))
        }
    };
    let text = format!(
        "({}{} {} {})",
        if re.is_negative() { "-" } else { "" },
        fmt_rational(&re.abs()),
        if im.is_negative() { "-" } else { "+" },
        imag
    );
    (false, text, true)
}

/// Canonical text of a polynomial in the variable `var`, descending powers.
pub fn format_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, text, star) = fmt_coeff(c);
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, k),
        };
        let unit = text == "1";
        let body = if mono.is_empty() {
            text
        } else if unit {
            mono
        } else if star {
            format!("{}*{}", text, mono)
        } else {
            format!("{}{}", text, mono)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Canonical text of a rational function: `"num"` for polynomials,
/// `"(num)/(den)"` otherwise.
pub fn format_ratfun(f: &RatFun) -> String {
    if f.is_polynomial() {
        // The denominator is the monic constant 1.
        format_poly(f.numer(), "x")
    } else {
        format!("({})/({})", format_poly(f.numer(), "x"), format_poly(f.denom(), "x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn parse_examples() {
        let f = parse_str("(x^2-1)/x^2").unwrap();
        assert_eq!(f, RatFun::reduce(p(&[-1, 0, 1]), p(&[0, 0, 1])).unwrap());
        assert_eq!(parse_str("x").unwrap(), RatFun::x());
        let g = parse_str("(x^3+1)/(x+2)").unwrap();
        assert_eq!(g.numer(), &p(&[1, 0, 0, 1]));
        assert_eq!(g.denom(), &p(&[2, 1]));
    }

    #[test]
    fn implicit_multiplication_and_precedence() {
        assert_eq!(parse_str("2x").unwrap(), RatFun::from_poly(p(&[0, 2])));
        assert_eq!(parse_str("-x^2").unwrap(), RatFun::from_poly(p(&[0, 0, -1])));
        assert_eq!(parse_str("(x+1)(x-1)").unwrap(), RatFun::from_poly(p(&[-1, 0, 1])));
        let half_x = parse_str("1/2x").unwrap();
        assert_eq!(half_x.numer().coeff(1), GaussianRational::from_ratio(1, 2));
        assert_eq!(parse_str("2i").unwrap().numer().coeff(0).im(), &BigRational::from_integer(2.into()));
        assert_eq!(parse_str("xi").unwrap(), parse_str("x*i").unwrap());
    }

    #[test]
    fn format_examples() {
        let f = RatFun::reduce(p(&[-1, 0, 1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(format_ratfun(&f), "(x^2 - 1)/(x^2)");
        assert_eq!(format_ratfun(&RatFun::x()), "x");
        assert_eq!(format_ratfun(&RatFun::constant(GaussianRational::from_ratio(3, 2))), "3/2");
        let c = RatFun::from_poly(Poly::new(vec![
            GaussianRational::from_ratio(-1, 3),
            GaussianRational::new(BigRational::from_integer(1.into()), BigRational::new((-2).into(), 3.into())),
            GaussianRational::i(),
        ]));
        let text = format_ratfun(&c);
        assert_eq!(text, "i*x^2 + (1 - 2/3*i)*x - 1/3");
        assert_eq!(parse_str(&text).unwrap(), c);
    }

    #[test]
    fn errors_carry_positions() {
        for bad in ["", "x +", "(x", "x^", "2.5x", "y", "x/0", "x)", "x^-1", "3 $"] {
            let err = match parse_str(bad) {
                Err(Error::Parse(e)) => e,
                other => panic!("expected parse error for {:?}, got {:?}", bad, other),
            };
            assert!(err.offset <= bad.len(), "{:?}: {}", bad, err);
            assert_eq!(err.line, 1);
        }
    }

    #[test]
    fn multiline_position() {
        let err = match parse_str("x +\n  (x") {
            Err(Error::Parse(e)) => e,
            _ => unreachable!(),
        };
        assert_eq!(err.line, 2);
    }

    #[test]
    fn base_words() {
        let src = ExprSource::inline("((sin)^2 - 1)/((sin)^2)");
        let (f, base) = parse_with_variables(&src, &["x", "exp", "sin", "cos", "tan"]).unwrap();
        assert_eq!(base.as_deref(), Some("sin"));
        assert_eq!(f.degree(), 2);
        let mixed = ExprSource::inline("sin + cos");
        assert!(parse_with_variables(&mixed, &["sin", "cos"]).is_err());
    }

    #[test]
    fn zero_denominator_after_reduction() {
        assert!(parse_str("1/(x - x)").is_err());
    }
}
