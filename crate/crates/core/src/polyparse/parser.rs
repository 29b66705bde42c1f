//! Recursive-descent parser for the mixed-polynomial grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' natural)?
//! base   := 'z' K | 'zb' K | 'conj' '(' expr ')' | '(' expr ')' | coefficient
//! coefficient := rational | rational 'i' | 'i'
//! rational    := integer ('/' positive-integer)?
//! ```
//!
//! A complex literal `(a + b i)` is just a parenthesised expression. Every
//! sub-expression is reduced to a collected [`MixedPolynomial`] as soon as it
//! is parsed, so `conj(...)` never survives past the parser.

use num::{BigInt, BigRational, ToPrimitive, Zero};

use super::{GaussianRational, MixedPolynomial, PolyError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal,
    Z(u64),
    Zb(u64),
    Conj,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(source: &str) -> Result<(Vec<Spanned>, (usize, usize)), PolyError> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let mut advance = |i: &mut usize, to: usize| {
            while *i < to {
                if chars[*i] == '\n' {
                    line += 1;
                    column = 1;
                } else {
                    column += 1;
                }
                *i += 1;
            }
        };
        if c.is_whitespace() {
            let next = i + 1;
            advance(&mut i, next);
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        let tok = if let Some(tok) = single {
            let next = i + 1;
            advance(&mut i, next);
            tok
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let mut tok = Tok::Int(digits.parse().expect("ascii digits"));
            if j < chars.len() && chars[j] == '.' {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                tok = Tok::Decimal;
            }
            advance(&mut i, j);
            tok
        } else if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_alphabetic() {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let mut k = j;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let index: Option<u64> = if k > j {
                let digits: String = chars[j..k].iter().collect();
                Some(digits.parse().map_err(|_| {
                    syntax(start_line, start_col, format!("variable index {digits} too large"))
                })?)
            } else {
                None
            };
            let tok = match (word.as_str(), index) {
                ("z", Some(idx)) => Tok::Z(idx),
                ("zb", Some(idx)) => Tok::Zb(idx),
                ("conj", None) => Tok::Conj,
                ("i", None) => Tok::I,
                _ => {
                    let text: String = chars[i..k].iter().collect();
                    return Err(syntax(start_line, start_col, format!("unknown identifier `{text}`")));
                }
            };
            advance(&mut i, k);
            tok
        } else {
            return Err(syntax(start_line, start_col, format!("unexpected character `{c}`")));
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    Ok((out, (line, column)))
}

/// Parses a polynomial, taking `n` to be the largest variable index used
/// (at least 1).
pub fn parse(source: &str) -> Result<MixedPolynomial, PolyError> {
    parse_inner(source, None)
}

/// Parses a polynomial in exactly `n` variables; larger indices are errors.
pub fn parse_with_vars(source: &str, n: usize) -> Result<MixedPolynomial, PolyError> {
    parse_inner(source, Some(n))
}

fn parse_inner(source: &str, declared: Option<usize>) -> Result<MixedPolynomial, PolyError> {
    let (tokens, eof) = lex(source)?;
    let mut max_index = 0u64;
    for t in &tokens {
        if let Tok::Z(k) | Tok::Zb(k) = t.tok {
            let out_of_range = k == 0 || declared.is_some_and(|n| k > n as u64);
            if out_of_range {
                return Err(PolyError::VariableIndex {
                    index: k,
                    n: declared.unwrap_or(0),
                    line: t.line,
                    column: t.column,
                });
            }
            max_index = max_index.max(k);
        }
    }
    let n = match declared {
        Some(n) => n,
        None => usize::try_from(max_index.max(1)).map_err(|_| PolyError::ExponentOverflow)?,
    };
    let mut parser = Parser {
        tokens,
        pos: 0,
        n,
        eof,
    };
    let poly = parser.expr()?;
    if let Some(t) = parser.peek_spanned() {
        return Err(syntax(t.line, t.column, "expected an operator"));
    }
    Ok(poly)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    n: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_spanned(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek_spanned().map_or(self.eof, |t| (t.line, t.column))
    }

    fn error(&self, message: &str) -> PolyError {
        let (line, column) = self.here();
        let found = match self.peek() {
            Some(t) => format!("{t:?}"),
            None => "end of input".to_string(),
        };
        syntax(line, column, format!("{message}, found {found}"))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), PolyError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<MixedPolynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MixedPolynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.multiply(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MixedPolynomial, PolyError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let (line, column) = self.here();
        let exp = match self.bump() {
            Some(Tok::Int(k)) => k,
            Some(Tok::Decimal) | Some(Tok::Minus) => {
                return Err(PolyError::NonIntegerExponent { line, column })
            }
            _ => {
                self.pos -= 1;
                return Err(self.error("expected an exponent"));
            }
        };
        if self.peek() == Some(&Tok::Slash) {
            return Err(PolyError::NonIntegerExponent { line, column });
        }
        let exp = exp.to_u32().ok_or(PolyError::ExponentOverflow)?;
        base.pow(exp)
    }

    fn base(&mut self) -> Result<MixedPolynomial, PolyError> {
        let n = self.n;
        match self.peek().cloned() {
            Some(Tok::Z(k)) => {
                self.pos += 1;
                MixedPolynomial::variable(n, k as usize)
            }
            Some(Tok::Zb(k)) => {
                self.pos += 1;
                MixedPolynomial::conj_variable(n, k as usize)
            }
            Some(Tok::Conj) => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(` after conj")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner.conjugate())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::I) => {
                self.pos += 1;
                Ok(MixedPolynomial::constant(n, GaussianRational::i()))
            }
            Some(Tok::Int(num)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(den)) if !den.is_zero() => {
                            value /= BigRational::from_integer(den);
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("expected a positive denominator"));
                        }
                    }
                }
                let c = if self.peek() == Some(&Tok::I) {
                    self.pos += 1;
                    GaussianRational::imaginary(value)
                } else {
                    GaussianRational::real(value)
                };
                Ok(MixedPolynomial::constant(n, c))
            }
            Some(Tok::Decimal) => Err(self.error("decimal literals are not supported; use p/q")),
            _ => Err(self.error("expected a variable, coefficient or `(`")),
        }
    }
}
