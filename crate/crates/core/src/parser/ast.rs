use std::fmt;

use num_bigint::BigInt;

use super::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Local,
    Global,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt, Span),
    Ident(String, Span),
    Neg(Box<Expr>, Span),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// Parenthesised comma list, used as an inline ideal.
    Tuple(Vec<Expr>, Span),
    Call(String, Vec<Arg>, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Int(_, s) | Expr::Ident(_, s) | Expr::Neg(_, s) | Expr::Tuple(_, s) | Expr::Call(_, _, s) => *s,
            Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Div(a, _) | Expr::Pow(a, _) => a.span(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Positional(Expr),
    Named(String, Expr),
}

impl Arg {
    pub fn expr(&self) -> &Expr {
        match self {
            Arg::Positional(e) | Arg::Named(_, e) => e,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    RingDecl { names: Vec<String>, order: OrderSpec },
    PolyDecl { name: String, expr: Expr },
    IdealDecl { name: String, items: Vec<Expr> },
    MatrixDecl { name: String, rows: usize, cols: usize, entries: Vec<Expr> },
    Command { name: String, args: Vec<Arg> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScriptAst {
    pub statements: Vec<Statement>,
}

/// Statement-level commands.
pub const COMMANDS: &[&str] = &[
    "std",
    "vdim",
    "dim",
    "mult",
    "saturate",
    "intersect",
    "contains",
    "equal",
    "print",
    "euler_diff",
    "chi",
    "icis",
    "curve_mu",
    "ids",
    "gorenstein_mu",
    "pfaffian",
    "isolated",
];

/// Functions usable inside expressions.
pub const FUNCTIONS: &[&str] = &[
    "intersect",
    "colon",
    "sat",
    "minors",
    "pfaffians",
    "jacobian",
    "jacobian_ideal",
    "diff",
    "squarefree",
    "std",
    "eliminate",
];

/// Named argument whose expression may mention the sampled linear forms `l1`, `l2`, ...
pub const DEFERRED_ARG: &str = "reduced_slice";

/// Whether `name` has the shape `l<k>` with `k >= 1`.
pub fn is_form_placeholder(name: &str) -> bool {
    name.len() > 1
        && name.starts_with('l')
        && name[1..].bytes().all(|b| b.is_ascii_digit())
        && !name[1..].starts_with('0')
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

struct Wrapped<'a>(&'a Expr, u8);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if prec(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n, _) => write!(f, "{n}"),
            Expr::Ident(s, _) => write!(f, "{s}"),
            Expr::Neg(a, _) => write!(f, "-{}", Wrapped(a, 4)),
            Expr::Add(a, b) => write!(f, "{} + {}", Wrapped(a, 1), Wrapped(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Wrapped(a, 1), Wrapped(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Wrapped(a, 2), Wrapped(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", Wrapped(a, 2), Wrapped(b, 3)),
            Expr::Pow(a, e) => write!(f, "{}^{e}", Wrapped(a, 5)),
            Expr::Tuple(items, _) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
            Expr::Call(name, args, _) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    match a {
                        Arg::Positional(e) => write!(f, "{e}")?,
                        Arg::Named(k, e) => write!(f, "{k}={e}")?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |items: &[Expr]| items.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
        match &self.kind {
            StatementKind::RingDecl { names, order } => {
                let o = match order {
                    OrderSpec::Local => "local",
                    OrderSpec::Global => "global",
                };
                write!(f, "ring ({}) {o};", names.join(","))
            }
            StatementKind::PolyDecl { name, expr } => write!(f, "poly {name} = {expr};"),
            StatementKind::IdealDecl { name, items } => write!(f, "ideal {name} = {};", list(items)),
            StatementKind::MatrixDecl { name, rows, cols, entries } => {
                write!(f, "matrix {name}[{rows}][{cols}] = {};", list(entries))
            }
            StatementKind::Command { name, args } => {
                let call = Expr::Call(name.clone(), args.clone(), self.span);
                write!(f, "{call};")
            }
        }
    }
}

impl fmt::Display for ScriptAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
