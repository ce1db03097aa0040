//! Parser for a human-writable Laurent polynomial syntax.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-' term | factor (['*'] factor)*
//! factor := atom ('^' signed_int)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//! Implicit multiplication is accepted exactly when a `)` or a variable is
//! followed by a `(` or a variable, e.g. `(t1-1)(t2-1)` or `t1 t2`.
//! `^` binds tighter than unary minus and its exponent must be an integer
//! literal, optionally negated. Negative exponents apply only to subtrees
//! that evaluate to a single monomial with a unit coefficient, since other
//! inverses leave the Laurent polynomial ring.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::poly::{ExponentVector, LaurentPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {position}")]
    Lexical { position: usize, found: char },
    #[error("unexpected {found} at byte {position}, expected {expected}")]
    Syntax {
        position: usize,
        found: String,
        expected: String,
    },
    #[error("undeclared variable {name:?} at byte {position}")]
    UndeclaredVariable { position: usize, name: String },
    #[error("negative power of a non-monomial at byte {position}")]
    NegativePowerOfNonMonomial { position: usize },
    #[error("negative power of a monomial with non-unit coefficient at byte {position}")]
    NegativePowerOfNonUnit { position: usize },
    #[error("exponent magnitude too large at byte {position}")]
    ExponentTooLarge { position: usize },
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Integer(BigInt),
    Variable(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// The source slice the token was read from.
    pub lexeme: String,
    pub position: usize,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Integer(n) => format!("integer {n}"),
            TokenKind::Variable(v) => format!("variable {v:?}"),
            TokenKind::Plus => "'+'".to_string(),
            TokenKind::Minus => "'-'".to_string(),
            TokenKind::Star => "'*'".to_string(),
            TokenKind::Caret => "'^'".to_string(),
            TokenKind::LParen => "'('".to_string(),
            TokenKind::RParen => "')'".to_string(),
            TokenKind::End => "end of input".to_string(),
        }
    }
}

/// Maximal-munch tokenizer; whitespace separates tokens and is skipped.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match b {
            b'+' => {
                i += 1;
                TokenKind::Plus
            }
            b'-' => {
                i += 1;
                TokenKind::Minus
            }
            b'*' => {
                i += 1;
                TokenKind::Star
            }
            b'^' => {
                i += 1;
                TokenKind::Caret
            }
            b'(' => {
                i += 1;
                TokenKind::LParen
            }
            b')' => {
                i += 1;
                TokenKind::RParen
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                TokenKind::Integer(source[start..i].parse().expect("digits"))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                TokenKind::Variable(source[start..i].to_string())
            }
            _ => {
                let found = source[start..].chars().next().unwrap();
                return Err(ParseError::Lexical {
                    position: start,
                    found,
                });
            }
        };
        tokens.push(Token {
            kind,
            lexeme: source[start..i].to_string(),
            position: start,
        });
    }
    tokens.push(Token {
        kind: TokenKind::End,
        lexeme: String::new(),
        position: bytes.len(),
    });
    Ok(tokens)
}

/// Collect the distinct identifiers of a source string in lexicographic
/// order; used when no variable universe is declared.
pub fn infer_variables(source: &str) -> Result<Vec<String>, ParseError> {
    let tokens = tokenize(source)?;
    let mut vars: Vec<String> = tokens
        .iter()
        .filter_map(|t| match &t.kind {
            TokenKind::Variable(v) => Some(v.clone()),
            _ => None,
        })
        .collect();
    vars.sort();
    vars.dedup();
    Ok(vars)
}

/// Syntax tree of a polynomial expression. Variables are resolved to
/// indices into the declared universe at parse time; the monomial
/// restriction on negative powers is checked at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseTree {
    Constant(BigInt),
    Variable(usize),
    Negate(Box<ParseTree>),
    Add(Box<ParseTree>, Box<ParseTree>),
    Multiply(Box<ParseTree>, Box<ParseTree>),
    /// Base, integer exponent (possibly negative), byte offset of the '^'.
    Power(Box<ParseTree>, BigInt, usize),
}

impl ParseTree {
    pub fn evaluate(&self, num_vars: usize) -> Result<LaurentPolynomial, ParseError> {
        match self {
            ParseTree::Constant(n) => Ok(LaurentPolynomial::constant(num_vars, n.clone())),
            ParseTree::Variable(index) => Ok(LaurentPolynomial::variable(num_vars, *index)),
            ParseTree::Negate(inner) => Ok(inner.evaluate(num_vars)?.neg()),
            ParseTree::Add(a, b) => Ok(a.evaluate(num_vars)?.add(&b.evaluate(num_vars)?)),
            ParseTree::Multiply(a, b) => {
                Ok(a.evaluate(num_vars)?.multiply(&b.evaluate(num_vars)?))
            }
            ParseTree::Power(base, exponent, position) => {
                let base = base.evaluate(num_vars)?;
                let position = *position;
                let magnitude = exponent
                    .abs()
                    .to_u32()
                    .ok_or(ParseError::ExponentTooLarge { position })?;
                if exponent.is_negative() {
                    if !base.is_monomial() {
                        return Err(ParseError::NegativePowerOfNonMonomial { position });
                    }
                    let (e, c) = base.terms().next().unwrap();
                    if !c.abs().is_one() {
                        return Err(ParseError::NegativePowerOfNonUnit { position });
                    }
                    let inv = LaurentPolynomial::monomial(
                        num_vars,
                        ExponentVector(e.0.iter().map(|x| -x).collect()),
                        c.clone(),
                    );
                    Ok(inv.power(magnitude))
                } else {
                    Ok(base.power(magnitude))
                }
            }
        }
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            position: t.position,
            found: t.kind.describe(),
            expected: expected.to_string(),
        }
    }

    fn parse_expr(&mut self) -> Result<ParseTree, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    acc = ParseTree::Add(Box::new(acc), Box::new(self.parse_term()?));
                }
                TokenKind::Minus => {
                    self.bump();
                    let rhs = ParseTree::Negate(Box::new(self.parse_term()?));
                    acc = ParseTree::Add(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<ParseTree, ParseError> {
        if matches!(self.peek().kind, TokenKind::Minus) {
            self.bump();
            return Ok(ParseTree::Negate(Box::new(self.parse_term()?)));
        }
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    acc = ParseTree::Multiply(Box::new(acc), Box::new(self.parse_factor()?));
                }
                // Implicit multiplication: a ')' or variable followed by a
                // '(' or variable.
                TokenKind::LParen | TokenKind::Variable(_)
                    if matches!(
                        self.tokens[self.pos - 1].kind,
                        TokenKind::RParen | TokenKind::Variable(_)
                    ) =>
                {
                    acc = ParseTree::Multiply(Box::new(acc), Box::new(self.parse_factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<ParseTree, ParseError> {
        let base = self.parse_atom()?;
        if !matches!(self.peek().kind, TokenKind::Caret) {
            return Ok(base);
        }
        let caret_pos = self.bump().position;
        let negate = if matches!(self.peek().kind, TokenKind::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let TokenKind::Integer(mag) = self.bump().kind else {
            return Err(ParseError::Syntax {
                position: self.tokens[self.pos - 1].position,
                found: self.tokens[self.pos - 1].kind.describe(),
                expected: "integer exponent after '^'".to_string(),
            });
        };
        let exponent = if negate { -mag } else { mag };
        Ok(ParseTree::Power(Box::new(base), exponent, caret_pos))
    }

    fn parse_atom(&mut self) -> Result<ParseTree, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Integer(n) => {
                self.bump();
                Ok(ParseTree::Constant(n))
            }
            TokenKind::Variable(name) => {
                let position = self.bump().position;
                match self.vars.iter().position(|v| v == &name) {
                    Some(index) => Ok(ParseTree::Variable(index)),
                    None => Err(ParseError::UndeclaredVariable { position, name }),
                }
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.parse_expr()?;
                if !matches!(self.peek().kind, TokenKind::RParen) {
                    return Err(self.error_here("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error_here("integer, variable or '('")),
        }
    }
}

/// Parse a source string into a syntax tree against a declared variable
/// universe.
pub fn parse_tree(source: &str, vars: &[String]) -> Result<ParseTree, ParseError> {
    let tokens = tokenize(source)?;
    if tokens.len() == 1 {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let tree = parser.parse_expr()?;
    if !matches!(parser.peek().kind, TokenKind::End) {
        return Err(parser.error_here("end of input"));
    }
    Ok(tree)
}

/// Parse a polynomial expression. When `vars` is given it declares the
/// ordered variable universe and every identifier in the source must occur
/// in it; otherwise the universe is inferred as the lexicographically
/// sorted set of identifiers appearing in the source.
///
/// Returns the polynomial together with the variable universe used.
pub fn parse(
    source: &str,
    vars: Option<&[&str]>,
) -> Result<(LaurentPolynomial, Vec<String>), ParseError> {
    let universe: Vec<String> = match vars {
        Some(v) => v.iter().map(|s| s.to_string()).collect(),
        None => infer_variables(source)?,
    };
    let tree = parse_tree(source, &universe)?;
    let poly = tree.evaluate(universe.len())?;
    Ok((poly, universe))
}
