//! Text format for recurrences and renderings of rational functions.
//!
//! ```text
//! spec      := rec-line sep init-line { sep init-line }
//! rec-line  := "a(n)" "=" term { ("+" | "-") term }
//! term      := [ coeff "*" ] "a(n-" posint ")"
//! init-line := "a(" nonneg ")" "=" coeff
//! coeff     := [ "-" ] digits [ "/" digits ]
//! sep       := ";" | newline
//! ```
//!
//! Whitespace other than newlines is insignificant. The order is the largest
//! lag mentioned; lags that do not appear get coefficient 0. Repeated lags
//! accumulate left to right.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::poly::{Poly, Rational};
use crate::ratfun::RatFun;
use crate::recurrence::RecurrenceSpec;

/// Upper bound on the inferred order, to keep a typo from allocating a huge system.
pub const MAX_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("lag must be at least 1")]
    ZeroLag,
    #[error("negative lag: a(n+k) refers to a later term")]
    NegativeLag,
    #[error("lag exceeds the supported maximum order {MAX_ORDER}")]
    LagTooLarge,
    #[error("initial value a({0}) given more than once")]
    DuplicateInitial(usize),
    #[error("missing initial value a({0})")]
    MissingInitial(usize),
    #[error("initial value a({index}) out of range for a recurrence of order {order}")]
    InitialOutOfRange { index: usize, order: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    A,
    N,
    LParen,
    RParen,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Sep,
    Int(BigInt),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::A => f.write_str("`a`"),
            Tok::N => f.write_str("`n`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Sep => f.write_str("separator"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(ch) = chars.next() {
        let (l, c) = (line, column);
        column += 1;
        let tok = match ch {
            '\n' => {
                line += 1;
                column = 1;
                Tok::Sep
            }
            ';' => Tok::Sep,
            c if c.is_whitespace() => continue,
            'a' => Tok::A,
            'n' => Tok::N,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            d if d.is_ascii_digit() => {
                let mut digits = String::from(d);
                while let Some(&next) = chars.peek() {
                    if !next.is_ascii_digit() {
                        break;
                    }
                    digits.push(next);
                    chars.next();
                    column += 1;
                }
                Tok::Int(digits.parse().expect("ascii digits"))
            }
            other => {
                return Err(ParseError {
                    line: l,
                    column: c,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        // identifiers must be exactly `a` or `n`
        if matches!(tok, Tok::A | Tok::N) {
            if let Some(&next) = chars.peek() {
                if next.is_alphanumeric() || next == '_' {
                    return Err(ParseError {
                        line,
                        column,
                        kind: ParseErrorKind::UnexpectedChar(next),
                    });
                }
            }
        }
        out.push(Spanned {
            tok,
            line: l,
            column: c,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<Spanned, ParseError> {
        let t = self.bump();
        if t.tok == want {
            Ok(t)
        } else {
            Err(Parser::error_at(
                &t,
                ParseErrorKind::Unexpected {
                    expected,
                    found: t.tok.to_string(),
                },
            ))
        }
    }

    fn expect_int(&mut self, expected: &'static str) -> Result<(BigInt, Spanned), ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(i) => Ok((i.clone(), t)),
            other => Err(Parser::error_at(
                &t,
                ParseErrorKind::Unexpected {
                    expected,
                    found: other.to_string(),
                },
            )),
        }
    }

    fn skip_seps(&mut self) -> bool {
        let mut any = false;
        while self.peek().tok == Tok::Sep {
            self.bump();
            any = true;
        }
        any
    }

    /// digits [ "/" digits ], sign handled by the caller
    fn unsigned_rational(&mut self) -> Result<Rational, ParseError> {
        let (num, _) = self.expect_int("a number")?;
        if self.peek().tok != Tok::Slash {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        let (den, den_tok) = self.expect_int("a denominator")?;
        if den.is_zero() {
            return Err(Parser::error_at(&den_tok, ParseErrorKind::ZeroDenominator));
        }
        Ok(Rational::new(num, den))
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let r = self.unsigned_rational()?;
        Ok(if negative { -r } else { r })
    }

    /// `[coeff "*"] "a" "(" "n" "-" posint ")"`, returning (coefficient, lag).
    fn term(&mut self) -> Result<(Rational, usize), ParseError> {
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut coeff = Rational::one();
        if matches!(self.peek().tok, Tok::Int(_)) {
            coeff = self.unsigned_rational()?;
            self.expect(Tok::Star, "`*`")?;
        }
        if negative {
            coeff = -coeff;
        }
        self.expect(Tok::A, "`a`")?;
        self.expect(Tok::LParen, "`(`")?;
        self.expect(Tok::N, "`n`")?;
        let sign = self.bump();
        match &sign.tok {
            Tok::Minus => {}
            Tok::Plus => return Err(Parser::error_at(&sign, ParseErrorKind::NegativeLag)),
            Tok::RParen => return Err(Parser::error_at(&sign, ParseErrorKind::ZeroLag)),
            other => {
                return Err(Parser::error_at(
                    &sign,
                    ParseErrorKind::Unexpected {
                        expected: "`-`",
                        found: other.to_string(),
                    },
                ))
            }
        }
        let (lag, lag_tok) = self.expect_int("a lag")?;
        if lag.is_zero() {
            return Err(Parser::error_at(&lag_tok, ParseErrorKind::ZeroLag));
        }
        let lag = usize::try_from(&lag)
            .ok()
            .filter(|&l| l <= MAX_ORDER)
            .ok_or_else(|| Parser::error_at(&lag_tok, ParseErrorKind::LagTooLarge))?;
        self.expect(Tok::RParen, "`)`")?;
        Ok((coeff, lag))
    }

    fn spec(&mut self) -> Result<RecurrenceSpec, ParseError> {
        self.skip_seps();
        let head = self.expect(Tok::A, "`a(n) = ...`")?;
        self.expect(Tok::LParen, "`(`")?;
        self.expect(Tok::N, "`n`")?;
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::Eq, "`=`")?;

        let mut terms = vec![self.term()?];
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    let (c, lag) = self.term()?;
                    terms.push((-c, lag));
                }
                _ => break,
            }
        }
        let order = terms
            .iter()
            .map(|&(_, lag)| lag)
            .max()
            .expect("at least one term");
        let mut coeffs = vec![Rational::zero(); order];
        for (c, lag) in terms {
            coeffs[lag - 1] += c;
        }

        let mut initials: Vec<Option<Rational>> = vec![None; order];
        loop {
            let had_sep = self.skip_seps();
            if self.peek().tok == Tok::Eof {
                break;
            }
            if !had_sep {
                let t = self.bump();
                return Err(Parser::error_at(
                    &t,
                    ParseErrorKind::Unexpected {
                        expected: "`;`, newline or `+`/`-`",
                        found: t.tok.to_string(),
                    },
                ));
            }
            self.expect(Tok::A, "`a(k) = value`")?;
            self.expect(Tok::LParen, "`(`")?;
            let (index, index_tok) = self.expect_int("an initial index")?;
            let index = usize::try_from(&index)
                .ok()
                .filter(|&i| i < order)
                .ok_or_else(|| {
                    Parser::error_at(
                        &index_tok,
                        ParseErrorKind::InitialOutOfRange {
                            index: usize::try_from(&index).unwrap_or(usize::MAX),
                            order,
                        },
                    )
                })?;
            self.expect(Tok::RParen, "`)`")?;
            self.expect(Tok::Eq, "`=`")?;
            let value = self.coeff()?;
            if initials[index].is_some() {
                return Err(Parser::error_at(
                    &index_tok,
                    ParseErrorKind::DuplicateInitial(index),
                ));
            }
            initials[index] = Some(value);
        }

        let initials = initials
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Parser::error_at(&head, ParseErrorKind::MissingInitial(i)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RecurrenceSpec::new(coeffs, initials).expect("order >= 1 and lengths match"))
    }
}

pub fn parse_spec(src: &str) -> Result<RecurrenceSpec, ParseError> {
    let mut parser = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    parser.spec()
}

/// Canonical one-line rendering; [`parse_spec`] inverts it exactly.
pub fn format_spec(spec: &RecurrenceSpec) -> String {
    let order = spec.order();
    let mut out = String::from("a(n) =");
    let mut first = true;
    for (idx, c) in spec.coeffs().iter().enumerate() {
        let lag = idx + 1;
        // the top lag is always written so the order survives a round trip
        if c.is_zero() && lag != order {
            continue;
        }
        let mag = c.abs();
        let body = if mag.is_one() {
            format!("a(n-{lag})")
        } else {
            format!("{mag}*a(n-{lag})")
        };
        match (first, c.is_negative()) {
            (true, false) => out.push_str(&format!(" {body}")),
            (true, true) => out.push_str(&format!(" -{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
        first = false;
    }
    for (i, c) in spec.initials().iter().enumerate() {
        out.push_str(&format!("; a({i}) = {c}"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Latex,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(OutputFormat::Plain),
            "latex" => Ok(OutputFormat::Latex),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

pub fn format_ratfun(r: &RatFun, style: OutputFormat) -> String {
    match style {
        OutputFormat::Plain => r.to_string(),
        OutputFormat::Latex => format!(
            "\\frac{{{}}}{{{}}}",
            latex_poly(r.numerator()),
            latex_poly(r.denominator())
        ),
        OutputFormat::Json => json!({
            "numerator": json_coeffs(r.numerator()),
            "denominator": json_coeffs(r.denominator()),
            "variable": "x",
        })
        .to_string(),
    }
}

fn json_coeffs(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mag = c.abs();
        if i == 0 || !mag.is_one() {
            out.push_str(&latex_rational(&mag));
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{{{i}}}")),
        }
    }
    out
}

/// Inverse of the JSON rendering.
pub fn ratfun_from_json(text: &str) -> Result<RatFun, ParseError> {
    let bad = |msg: String| ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Json(msg),
    };
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        kind: ParseErrorKind::Json(e.to_string()),
    })?;
    let poly = |key: &str| -> Result<Poly, ParseError> {
        let arr = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("missing array `{key}`")))?;
        arr.iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| bad(format!("`{key}` entries must be strings")))
                    .and_then(|s| {
                        parse_rational(s).ok_or_else(|| bad(format!("bad rational `{s}`")))
                    })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Poly::from_coeffs)
    };
    let (num, den) = (poly("numerator")?, poly("denominator")?);
    RatFun::new(num, den).map_err(|e| bad(e.to_string()))
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!d.is_zero()).then(|| Rational::new(n, d))
}
