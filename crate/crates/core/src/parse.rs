//! Text grammar for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number ('/' number)? | variable | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication: `2X` and `X Y` are syntax errors.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::AlgebraError;
use crate::poly::{MultiPoly, Var, NVARS};
use crate::scalar::{Field, Scalar};

/// Maps input names to variable slots and slots to printed names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<(String, Var)>,
    print: [String; NVARS],
}

impl SymbolTable {
    /// `X Y Z T W U V`.
    pub fn standard() -> Self {
        SymbolTable {
            names: Var::ALL.iter().map(|v| (v.name().to_string(), *v)).collect(),
            print: Var::ALL.map(|v| v.name().to_string()),
        }
    }

    pub(crate) fn standard_ref() -> &'static SymbolTable {
        static TABLE: OnceLock<SymbolTable> = OnceLock::new();
        TABLE.get_or_init(SymbolTable::standard)
    }

    /// Ring elements: accepts `x y z t w` as aliases and prints them lowercase.
    pub fn element() -> Self {
        let mut table = SymbolTable::standard();
        for v in [Var::X, Var::Y, Var::Z, Var::T, Var::W] {
            let lower = v.name().to_lowercase();
            table.names.push((lower.clone(), v));
            table.print[v.index()] = lower;
        }
        table
    }

    /// Generators `x, f, g, h, v` of a stable-isomorphism target, stored in the
    /// slots `X, Z, Y, T, W` so that they satisfy the target surface's relations.
    /// Prints capitals and accepts both cases.
    pub fn witness() -> Self {
        let pairs = [
            ("X", Var::X),
            ("F", Var::Z),
            ("G", Var::Y),
            ("H", Var::T),
            ("V", Var::W),
        ];
        let mut print = Var::ALL.map(|v| format!("_{}", v.name()));
        for (n, v) in pairs {
            print[v.index()] = n.to_string();
        }
        let names = pairs
            .iter()
            .flat_map(|(n, v)| [(n.to_string(), *v), (n.to_lowercase(), *v)])
            .collect();
        SymbolTable { names, print }
    }

    /// Keeps only names that resolve to `allowed`.
    pub fn restrict(&self, allowed: &[Var]) -> Self {
        SymbolTable {
            names: self
                .names
                .iter()
                .filter(|(_, v)| allowed.contains(v))
                .cloned()
                .collect(),
            print: self.print.clone(),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.names.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn print_name(&self, v: Var) -> &str {
        &self.print[v.index()]
    }
}

/// Parses with the standard uppercase variable names.
pub fn parse_poly(text: &str, field: Field) -> Result<MultiPoly, AlgebraError> {
    parse_with(text, SymbolTable::standard_ref(), field)
}

/// Parses, rejecting any variable outside `allowed`.
pub fn poly_parse(text: &str, allowed: &[Var], field: Field) -> Result<MultiPoly, AlgebraError> {
    parse_with(text, &SymbolTable::standard().restrict(allowed), field)
}

pub fn parse_with(text: &str, symbols: &SymbolTable, field: Field) -> Result<MultiPoly, AlgebraError> {
    let tokens = tokenize(text, symbols)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        field,
        end: text.len(),
    };
    let p = parser.expr()?;
    if let Some(tok) = parser.tokens.get(parser.pos) {
        return Err(AlgebraError::Syntax {
            pos: tok.pos,
            msg: format!("unexpected {} (use `*` for products)", tok.kind.describe()),
        });
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
enum TokenKind {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("number `{n}`"),
            TokenKind::Var(v) => format!("variable `{v}`"),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn tokenize(text: &str, symbols: &SymbolTable) -> Result<Vec<Token>, AlgebraError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let kind = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '^' => TokenKind::Caret,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push(Token {
                    kind: TokenKind::Int(digits.parse().expect("digits")),
                    pos,
                });
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|(_, c)| c).collect();
                match symbols.lookup(&name) {
                    Some(v) => out.push(Token {
                        kind: TokenKind::Var(v),
                        pos,
                    }),
                    None => return Err(AlgebraError::UnknownVariable { name, pos }),
                }
                continue;
            }
            other => {
                return Err(AlgebraError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token { kind, pos });
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: Field,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.pos).unwrap_or(self.end)
    }

    fn error<T>(&self, msg: &str) -> Result<T, AlgebraError> {
        Err(AlgebraError::Syntax {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(TokenKind::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(TokenKind::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(TokenKind::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, AlgebraError> {
        if let Some(TokenKind::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, AlgebraError> {
        let base = self.atom()?;
        if let Some(TokenKind::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(TokenKind::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .or_else(|_| self.error("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return self.error("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgebraError> {
        match self.peek().cloned() {
            Some(TokenKind::Int(num)) => {
                self.pos += 1;
                let den = if let Some(TokenKind::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(TokenKind::Int(d)) => {
                            self.pos += 1;
                            d
                        }
                        _ => return self.error("expected a denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                if den == BigInt::from(0) {
                    return Err(AlgebraError::DivisionByZero);
                }
                Ok(MultiPoly::constant(Scalar::from_ratio(self.field, &num, &den)?))
            }
            Some(TokenKind::Var(v)) => {
                self.pos += 1;
                Ok(MultiPoly::var(self.field, v))
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(TokenKind::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.error("expected `)`"),
                }
            }
            Some(other) => self.error(&format!("unexpected {}", other.describe())),
            None => self.error("unexpected end of input"),
        }
    }
}
