//! Tokenizer and parser for the script language.
//!
//! ```text
//! ring (x,y,z) local;
//! poly f = x*y*z;
//! ideal I = f, y - z;
//! vdim(I);
//! ```

pub mod ast;
mod grammar;
pub mod lexer;

use std::fmt;

use serde::Serialize;

pub use ast::{Arg, Expr, OrderSpec, ScriptAst, Statement, StatementKind};
pub use grammar::{DeclKind, MAX_EXPONENT};
pub use lexer::{tokenize, Token, TokenKind};

use crate::ring::{Coefficient, Polynomial, Ring};
use grammar::Parser;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedCharacter,
    UnexpectedToken,
    UnexpectedEof,
    UnbalancedParentheses,
    MalformedExponent,
    UndeclaredIdentifier,
    UnknownCommand,
    UnknownFunction,
    DuplicateRing,
    DuplicateDeclaration,
    MissingRing,
    ReservedName,
    InvalidMatrixShape,
    NestingTooDeep,
    /// A well-formed expression used where a different kind of value is needed.
    TypeError,
    InvalidArgument,
    DivisionByNonConstant,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::UnexpectedCharacter => "unexpected_character",
            ParseErrorKind::UnexpectedToken => "unexpected_token",
            ParseErrorKind::UnexpectedEof => "unexpected_eof",
            ParseErrorKind::UnbalancedParentheses => "unbalanced_parentheses",
            ParseErrorKind::MalformedExponent => "malformed_exponent",
            ParseErrorKind::UndeclaredIdentifier => "undeclared_identifier",
            ParseErrorKind::UnknownCommand => "unknown_command",
            ParseErrorKind::UnknownFunction => "unknown_function",
            ParseErrorKind::DuplicateRing => "duplicate_ring",
            ParseErrorKind::DuplicateDeclaration => "duplicate_declaration",
            ParseErrorKind::MissingRing => "missing_ring",
            ParseErrorKind::ReservedName => "reserved_name",
            ParseErrorKind::InvalidMatrixShape => "invalid_matrix_shape",
            ParseErrorKind::NestingTooDeep => "nesting_too_deep",
            ParseErrorKind::TypeError => "type_error",
            ParseErrorKind::InvalidArgument => "invalid_argument",
            ParseErrorKind::DivisionByNonConstant => "division_by_non_constant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: Option<Span>,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, message: impl Into<String>, span: Option<Span>) -> Self {
        ParseError { kind, message: message.into(), span }
    }

    pub fn kind(&self) -> &'static str {
        self.kind.as_str()
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            Some(s) => write!(f, "{s}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parse a whole script. Identifiers must be declared before use.
pub fn parse_script(src: &str) -> Result<ScriptAst, ParseError> {
    let tokens = tokenize(src)?;
    Parser::new(tokens, src).script()
}

/// Parse a comma-separated list of expressions in the scope of `ring` plus
/// `names`. Placeholders `l1`, `l2`, ... are accepted as well. A trailing `;`
/// is allowed.
pub fn parse_expr_list(src: &str, ring: &Ring, names: &[(String, DeclKind)]) -> Result<Vec<Expr>, ParseError> {
    let mut tokens = tokenize(src)?;
    if tokens.last().is_some_and(|t| t.is_symbol(";")) {
        tokens.pop();
    }
    let mut p = Parser::new(tokens, src);
    for v in ring.variable_names() {
        p.declare(v, DeclKind::Variable);
    }
    for (n, k) in names {
        p.declare(n, *k);
    }
    p.set_allow_placeholders(true);
    let items = p.expr_list()?;
    p.finish()?;
    Ok(items)
}

/// Parse a polynomial over `ring`; only ring variables may appear.
pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser::new(tokens, src);
    for v in ring.variable_names() {
        p.declare(v, DeclKind::Variable);
    }
    let e = p.expr()?;
    p.finish()?;
    lower_polynomial(&e, ring, &|_| None)
}

/// Evaluate an arithmetic expression to a polynomial. `lookup` resolves names
/// that are not ring variables.
pub fn lower_polynomial(
    e: &Expr,
    ring: &Ring,
    lookup: &dyn Fn(&str) -> Option<Polynomial>,
) -> Result<Polynomial, ParseError> {
    Ok(match e {
        Expr::Int(n, _) => Polynomial::constant(ring, Coefficient::from_bigint(n.clone())),
        Expr::Ident(name, span) => match ring.index_of(name) {
            Some(i) => Polynomial::var(ring, i).expect("index in range"),
            None => lookup(name).ok_or_else(|| {
                ParseError::new(
                    ParseErrorKind::TypeError,
                    format!("'{name}' is not a polynomial"),
                    Some(*span),
                )
            })?,
        },
        Expr::Neg(a, _) => -&lower_polynomial(a, ring, lookup)?,
        Expr::Add(a, b) => &lower_polynomial(a, ring, lookup)? + &lower_polynomial(b, ring, lookup)?,
        Expr::Sub(a, b) => &lower_polynomial(a, ring, lookup)? - &lower_polynomial(b, ring, lookup)?,
        Expr::Mul(a, b) => &lower_polynomial(a, ring, lookup)? * &lower_polynomial(b, ring, lookup)?,
        Expr::Div(a, b) => {
            let num = lower_polynomial(a, ring, lookup)?;
            let den = lower_polynomial(b, ring, lookup)?;
            let c = if den.is_constant() { den.constant_term().inv() } else { None };
            match c {
                Some(inv) => num.scale(&inv),
                None => {
                    return Err(ParseError::new(
                        ParseErrorKind::DivisionByNonConstant,
                        "division is only allowed by nonzero constants",
                        Some(b.span()),
                    ))
                }
            }
        }
        Expr::Pow(a, k) => lower_polynomial(a, ring, lookup)?.pow(*k),
        Expr::Tuple(_, span) => {
            return Err(ParseError::new(ParseErrorKind::TypeError, "a list is not a polynomial", Some(*span)))
        }
        Expr::Call(name, _, span) => {
            return Err(ParseError::new(
                ParseErrorKind::TypeError,
                format!("'{name}(...)' is not a polynomial"),
                Some(*span),
            ))
        }
    })
}
