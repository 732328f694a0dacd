use std::collections::HashMap;

use num_bigint::BigInt;

use super::ast::{is_form_placeholder, Arg, Expr, OrderSpec, ScriptAst, Statement, StatementKind, COMMANDS, DEFERRED_ARG, FUNCTIONS};
use super::lexer::{Token, TokenKind};
use super::{ParseError, ParseErrorKind, Span};

const MAX_DEPTH: usize = 128;
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Variable,
    Poly,
    Ideal,
    Matrix,
}

pub struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: Span,
    pub(crate) names: HashMap<String, DeclKind>,
    pub(crate) ring_declared: bool,
    allow_placeholders: bool,
    depth: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(tokens: Vec<Token>, src: &str) -> Self {
        let line = src.lines().count().max(1);
        let column = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Parser {
            tokens,
            pos: 0,
            end: Span { line, column },
            names: HashMap::new(),
            ring_declared: false,
            allow_placeholders: false,
            depth: 0,
        }
    }

    pub fn declare(&mut self, name: &str, kind: DeclKind) {
        self.names.insert(name.to_string(), kind);
    }

    pub fn set_allow_placeholders(&mut self, on: bool) {
        self.allow_placeholders = on;
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    /// Error unless all input has been consumed.
    pub fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) if t.is_symbol(")") => Err(ParseError::new(
                ParseErrorKind::UnbalancedParentheses,
                "unmatched ')'",
                Some(t.span),
            )),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.tokens.get(self.pos + k)
    }

    fn here(&self) -> Span {
        self.peek().map_or(self.end, |t| t.span)
    }

    fn next(&mut self) -> PResult<Token> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::new(ParseErrorKind::UnexpectedEof, "unexpected end of input", Some(self.end))),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(
                ParseErrorKind::UnexpectedToken,
                format!("expected {wanted}, found '{}'", t.text),
                Some(t.span),
            ),
            None => ParseError::new(
                ParseErrorKind::UnexpectedEof,
                format!("expected {wanted}, found end of input"),
                Some(self.end),
            ),
        }
    }

    fn eat_symbol(&mut self, s: &str) -> bool {
        if self.peek().is_some_and(|t| t.is_symbol(s)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_symbol(&mut self, s: &str) -> PResult<Span> {
        match self.peek() {
            Some(t) if t.is_symbol(s) => {
                let span = t.span;
                self.pos += 1;
                Ok(span)
            }
            _ => Err(self.unexpected(&format!("'{s}'"))),
        }
    }

    fn expect_ident(&mut self) -> PResult<(String, Span)> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                let out = (t.text.clone(), t.span);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn expect_usize(&mut self) -> PResult<usize> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Integer => {
                let span = t.span;
                let v = t.text.parse::<usize>().ok().filter(|&v| v > 0 && v <= 64);
                self.pos += 1;
                v.ok_or_else(|| ParseError::new(ParseErrorKind::InvalidMatrixShape, "matrix sizes must lie in 1..=64", Some(span)))
            }
            _ => Err(self.unexpected("a matrix size")),
        }
    }

    fn declare_new(&mut self, name: &str, span: Span, kind: DeclKind) -> PResult<()> {
        if self.names.contains_key(name) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateDeclaration,
                format!("'{name}' is already declared"),
                Some(span),
            ));
        }
        self.names.insert(name.to_string(), kind);
        Ok(())
    }

    fn require_ring(&self, span: Span) -> PResult<()> {
        if self.ring_declared {
            Ok(())
        } else {
            Err(ParseError::new(ParseErrorKind::MissingRing, "no ring has been declared", Some(span)))
        }
    }

    pub fn script(&mut self) -> PResult<ScriptAst> {
        let mut statements = Vec::new();
        while !self.at_end() {
            statements.push(self.statement()?);
        }
        Ok(ScriptAst { statements })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let tok = self.next()?;
        let span = tok.span;
        let kind = if tok.is_keyword("ring") {
            if self.ring_declared {
                return Err(ParseError::new(ParseErrorKind::DuplicateRing, "a ring is already declared", Some(span)));
            }
            self.expect_symbol("(")?;
            let mut names = Vec::new();
            loop {
                let (n, s) = self.expect_ident()?;
                if is_form_placeholder(&n) {
                    return Err(ParseError::new(
                        ParseErrorKind::ReservedName,
                        format!("'{n}' is reserved for sampled linear forms"),
                        Some(s),
                    ));
                }
                self.declare_new(&n, s, DeclKind::Variable)?;
                names.push(n);
                if !self.eat_symbol(",") {
                    break;
                }
            }
            self.expect_symbol(")")?;
            let order = match self.peek() {
                Some(t) if t.is_keyword("local") => OrderSpec::Local,
                Some(t) if t.is_keyword("global") => OrderSpec::Global,
                _ => return Err(self.unexpected("'local' or 'global'")),
            };
            self.pos += 1;
            self.ring_declared = true;
            StatementKind::RingDecl { names, order }
        } else if tok.is_keyword("poly") {
            self.require_ring(span)?;
            let (name, nspan) = self.expect_ident()?;
            self.expect_symbol("=")?;
            let expr = self.expr()?;
            self.declare_new(&name, nspan, DeclKind::Poly)?;
            StatementKind::PolyDecl { name, expr }
        } else if tok.is_keyword("ideal") {
            self.require_ring(span)?;
            let (name, nspan) = self.expect_ident()?;
            self.expect_symbol("=")?;
            let items = self.expr_list()?;
            self.declare_new(&name, nspan, DeclKind::Ideal)?;
            StatementKind::IdealDecl { name, items }
        } else if tok.is_keyword("matrix") {
            self.require_ring(span)?;
            let (name, nspan) = self.expect_ident()?;
            self.expect_symbol("[")?;
            let rows = self.expect_usize()?;
            self.expect_symbol("]")?;
            self.expect_symbol("[")?;
            let cols = self.expect_usize()?;
            self.expect_symbol("]")?;
            self.expect_symbol("=")?;
            let entries = self.expr_list()?;
            if entries.len() != rows * cols {
                return Err(ParseError::new(
                    ParseErrorKind::InvalidMatrixShape,
                    format!("{} entries given for a {rows}x{cols} matrix", entries.len()),
                    Some(span),
                ));
            }
            self.declare_new(&name, nspan, DeclKind::Matrix)?;
            StatementKind::MatrixDecl { name, rows, cols, entries }
        } else if tok.kind == TokenKind::Ident {
            if !self.peek().is_some_and(|t| t.is_symbol("(")) {
                self.pos -= 1;
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    format!("expected a declaration or command, found '{}'", tok.text),
                    Some(span),
                ));
            }
            if !COMMANDS.contains(&tok.text.as_str()) {
                return Err(ParseError::new(
                    ParseErrorKind::UnknownCommand,
                    format!("unknown command '{}'", tok.text),
                    Some(span),
                ));
            }
            self.require_ring(span)?;
            self.expect_symbol("(")?;
            let args = self.args()?;
            StatementKind::Command { name: tok.text, args }
        } else {
            self.pos -= 1;
            return Err(self.unexpected("a declaration or command"));
        };
        self.expect_symbol(";")?;
        Ok(Statement { kind, span })
    }

    /// Comma-separated expressions, at least one.
    pub fn expr_list(&mut self) -> PResult<Vec<Expr>> {
        let mut items = vec![self.expr()?];
        while self.eat_symbol(",") {
            items.push(self.expr()?);
        }
        Ok(items)
    }

    /// Arguments after an opening parenthesis, consuming the closing one.
    fn args(&mut self) -> PResult<Vec<Arg>> {
        let mut args = Vec::new();
        if self.eat_symbol(")") {
            return Ok(args);
        }
        loop {
            let named = matches!(
                (self.peek(), self.peek_at(1)),
                (Some(a), Some(b)) if a.kind == TokenKind::Ident && b.is_symbol("=")
            );
            if named {
                let (key, _) = self.expect_ident()?;
                self.expect_symbol("=")?;
                let saved = self.allow_placeholders;
                if key == DEFERRED_ARG {
                    self.allow_placeholders = true;
                }
                let e = self.expr();
                self.allow_placeholders = saved;
                args.push(Arg::Named(key, e?));
            } else {
                args.push(Arg::Positional(self.expr()?));
            }
            if self.eat_symbol(")") {
                return Ok(args);
            }
            if !self.eat_symbol(",") {
                return Err(self.unbalanced_or("',' or ')'"));
            }
        }
    }

    fn unbalanced_or(&self, wanted: &str) -> ParseError {
        if self.at_end() || self.peek().is_some_and(|t| t.is_symbol(";")) {
            ParseError::new(ParseErrorKind::UnbalancedParentheses, "missing ')'", Some(self.here()))
        } else {
            self.unexpected(wanted)
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(ParseErrorKind::NestingTooDeep, "expression nested too deeply", Some(self.here())));
        }
        Ok(())
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let r = self.sum();
        self.depth -= 1;
        r
    }

    fn sum(&mut self) -> PResult<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat_symbol("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat_symbol("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_symbol("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_symbol("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        let span = self.here();
        if self.eat_symbol("-") {
            self.enter()?;
            let inner = self.unary();
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner?), span));
        }
        if self.eat_symbol("+") {
            self.enter()?;
            let inner = self.unary();
            self.depth -= 1;
            return inner;
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if !self.eat_symbol("^") {
            return Ok(base);
        }
        let tok = self.peek().cloned();
        match tok {
            Some(t) if t.kind == TokenKind::Integer => {
                self.pos += 1;
                let e = t.text.parse::<u32>().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
                    ParseError::new(
                        ParseErrorKind::MalformedExponent,
                        format!("exponent must be an integer in 0..={MAX_EXPONENT}"),
                        Some(t.span),
                    )
                })?;
                if self.peek().is_some_and(|t| t.is_symbol("^")) {
                    return Err(ParseError::new(
                        ParseErrorKind::MalformedExponent,
                        "chained exponents need parentheses",
                        Some(self.here()),
                    ));
                }
                Ok(Expr::Pow(Box::new(base), e))
            }
            Some(t) => Err(ParseError::new(
                ParseErrorKind::MalformedExponent,
                format!("exponent must be a non-negative integer literal, found '{}'", t.text),
                Some(t.span),
            )),
            None => Err(ParseError::new(ParseErrorKind::MalformedExponent, "missing exponent", Some(self.end))),
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.unexpected("an expression")),
        };
        match tok.kind {
            TokenKind::Integer => {
                self.pos += 1;
                let n: BigInt = tok.text.parse().expect("digits");
                Ok(Expr::Int(n, tok.span))
            }
            TokenKind::Ident => {
                self.pos += 1;
                if self.peek().is_some_and(|t| t.is_symbol("(")) {
                    if !FUNCTIONS.contains(&tok.text.as_str()) {
                        return Err(ParseError::new(
                            ParseErrorKind::UnknownFunction,
                            format!("unknown function '{}'", tok.text),
                            Some(tok.span),
                        ));
                    }
                    self.pos += 1;
                    let args = self.args()?;
                    return Ok(Expr::Call(tok.text, args, tok.span));
                }
                let known = self.names.contains_key(&tok.text)
                    || (self.allow_placeholders && is_form_placeholder(&tok.text));
                if !known {
                    return Err(ParseError::new(
                        ParseErrorKind::UndeclaredIdentifier,
                        format!("'{}' is not declared", tok.text),
                        Some(tok.span),
                    ));
                }
                Ok(Expr::Ident(tok.text, tok.span))
            }
            TokenKind::Symbol if tok.text == "(" => {
                self.pos += 1;
                let items = self.expr_list()?;
                if !self.eat_symbol(")") {
                    return Err(self.unbalanced_or("')'"));
                }
                if items.len() == 1 {
                    Ok(items.into_iter().next().unwrap())
                } else {
                    Ok(Expr::Tuple(items, tok.span))
                }
            }
            TokenKind::Symbol if tok.text == ")" => Err(ParseError::new(
                ParseErrorKind::UnbalancedParentheses,
                "unmatched ')'",
                Some(tok.span),
            )),
            _ => Err(self.unexpected("an expression")),
        }
    }
}
