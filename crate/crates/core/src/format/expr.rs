use std::collections::HashMap;

use num_bigint::BigInt;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, Letter, NCPoly, TensorPoly, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Gen(Letter),
    Param(&'static str),
    Ref(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

const PARAMS: [&str; 2] = ["q", "eta"];

/// Where an expression sits in its source file, for error positions.
#[derive(Copy, Clone, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl Span {
    pub fn new(line: usize, column: usize) -> Self {
        Span { line, column }
    }
}

fn syntax(span: Span, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: span.line.max(1),
        column: span.column + col,
        message: message.into(),
    }
}

fn lex(text: &str, alphabet: &Alphabet, span: Span) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut names: Vec<(&'static str, Option<Letter>)> = alphabet
        .generators()
        .iter()
        .map(|g| (g.name(), Some(g.letter)))
        .collect();
    names.extend(PARAMS.iter().map(|p| (*p, None)));
    names.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));

    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (byte, c) = chars[i];
        let col = i + 1;
        let rest = &text[byte..];
        let simple = match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            ')' => Some(Tok::RParen),
            '(' if rest.starts_with("(x)") => {
                out.push(Token { tok: Tok::Tensor, col });
                i += 3;
                continue;
            }
            '(' => Some(Tok::LParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, col });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let n: BigInt = rest[..len].parse().expect("digits parse");
            out.push(Token { tok: Tok::Num(n), col });
            i += len;
            continue;
        }
        if c == '@' {
            let len = rest[1..]
                .chars()
                .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                .count();
            if len == 0 {
                return Err(syntax(span, col, "expected a name after `@`"));
            }
            out.push(Token {
                tok: Tok::Ref(rest[1..1 + len].to_string()),
                col,
            });
            i += 1 + len;
            continue;
        }
        if c.is_alphabetic() {
            if let Some((name, letter)) = names.iter().find(|(n, _)| rest.starts_with(n)) {
                let tok = match letter {
                    Some(l) => Tok::Gen(*l),
                    None => Tok::Param(name),
                };
                out.push(Token { tok, col });
                i += name.chars().count();
                continue;
            }
            let word: String = rest
                .chars()
                .take_while(|c| c.is_alphanumeric() || *c == '_')
                .collect();
            return Err(Error::UnknownGenerator(word));
        }
        return Err(syntax(span, col, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    span: Span,
    end_col: usize,
    env: &'a HashMap<String, NCPoly>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.span, self.col(), msg)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<NCPoly> {
        let mut acc = NCPoly::zero();
        let mut sign = if self.eat(&Tok::Minus) {
            -1
        } else {
            self.eat(&Tok::Plus);
            1
        };
        loop {
            let t = self.product()?;
            acc.add_scaled(&t, &Scalar::from_int(sign));
            if self.eat(&Tok::Plus) {
                sign = 1;
            } else if self.eat(&Tok::Minus) {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Gen(_) | Tok::Param(_) | Tok::Ref(_) | Tok::LParen)
        )
    }

    fn product(&mut self) -> Result<NCPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.power()?);
            } else if self.eat(&Tok::Slash) {
                let col = self.col();
                let d = self.power()?;
                let s = d
                    .as_scalar()
                    .ok_or_else(|| syntax(self.span, col, "only scalars may divide"))?;
                let inv = s.inv().map_err(|_| syntax(self.span, col, "division by zero"))?;
                acc = acc.scale(&inv);
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Tok::Minus);
        let col = self.col();
        let n = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return Err(self.err("expected an integer exponent")),
        };
        self.pos += 1;
        let n: i32 = n
            .try_into()
            .map_err(|_| syntax(self.span, col, "exponent too large"))?;
        let n = if negative { -n } else { n };
        if let Some(s) = base.as_scalar() {
            let v = s
                .pow(n)
                .map_err(|_| syntax(self.span, col, "negative power of zero"))?;
            return Ok(NCPoly::scalar(v));
        }
        if n < 0 {
            return Err(syntax(
                self.span,
                col,
                "negative powers are only allowed on scalars",
            ));
        }
        let mut out = NCPoly::one();
        for _ in 0..n {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let col = self.col();
        let tok = self
            .toks
            .get(self.pos)
            .map(|t| t.tok.clone())
            .ok_or_else(|| self.err("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(NCPoly::scalar(Scalar::from_bigint(n))),
            Tok::Param("q") => Ok(NCPoly::scalar(Scalar::q())),
            Tok::Param(_) => Ok(NCPoly::scalar(Scalar::eta())),
            Tok::Gen(l) => Ok(NCPoly::letter(l)),
            Tok::Ref(name) => self
                .env
                .get(&name)
                .cloned()
                .ok_or_else(|| syntax(self.span, col, format!("undefined reference `@{name}`"))),
            Tok::LParen => {
                let inner = self.sum()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            other => Err(syntax(self.span, col, format!("unexpected token {other:?}"))),
        }
    }

    fn tensor_sum(&mut self) -> Result<TensorPoly> {
        let mut acc = TensorPoly::zero();
        let mut sign = if self.eat(&Tok::Minus) {
            -1
        } else {
            self.eat(&Tok::Plus);
            1
        };
        loop {
            let left = self.product()?;
            if !self.eat(&Tok::Tensor) {
                return Err(self.err("expected `(x)`"));
            }
            let right = self.product()?;
            acc.add_scaled(
                &TensorPoly::from_factors([&left, &right]),
                &Scalar::from_int(sign),
            );
            if self.eat(&Tok::Plus) {
                sign = 1;
            } else if self.eat(&Tok::Minus) {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(())
    }
}

fn parser<'a>(
    text: &str,
    alphabet: &Alphabet,
    env: &'a HashMap<String, NCPoly>,
    span: Span,
) -> Result<Parser<'a>> {
    let toks = lex(text, alphabet, span)?;
    Ok(Parser {
        toks,
        pos: 0,
        span,
        end_col: text.chars().count() + 1,
        env,
    })
}

/// Parses an expression with `@name` references resolved from `env`.
pub fn parse_expr_in(
    text: &str,
    alphabet: &Alphabet,
    env: &HashMap<String, NCPoly>,
    span: Span,
) -> Result<NCPoly> {
    let mut p = parser(text, alphabet, env, span)?;
    if p.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let e = p.sum()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<NCPoly> {
    parse_expr_in(text, alphabet, &HashMap::new(), Span::new(1, 0))
}

pub fn parse_tensor(text: &str, alphabet: &Alphabet, span: Span) -> Result<TensorPoly> {
    let env = HashMap::new();
    let mut p = parser(text, alphabet, &env, span)?;
    let t = p.tensor_sum()?;
    p.finish()?;
    Ok(t)
}

/// Parses a scalar literal such as `(1-q^-1)` or `q/(1-q)`.
pub fn parse_scalar(text: &str, span: Span) -> Result<Scalar> {
    let e = parse_expr_in(text, &Alphabet::default(), &HashMap::new(), span)?;
    e.as_scalar()
        .ok_or_else(|| syntax(span, 1, "expected a scalar"))
}

/// Parses a bare word: generator names with optional `^n` repetition.
pub fn parse_word(text: &str, alphabet: &Alphabet, span: Span) -> Result<Word> {
    let e = parse_expr_in(text, alphabet, &HashMap::new(), span)?;
    match e.as_monomial() {
        Some((w, c)) if c.is_one() && !w.is_unit() => Ok(w.clone()),
        _ => Err(syntax(span, 1, format!("`{text}` is not a word"))),
    }
}
