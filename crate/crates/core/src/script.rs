//! Interpreter for parsed scripts.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::Error;
use crate::ideal::{
    eliminate, hilbert_multiplicity, ideal_colon, ideal_intersect, ideal_saturate, krull_dim, squarefree_part, vdim, Vdim,
};
use crate::legreuel::{
    chi_fiber, curve_invariants, euler_diff, gorenstein_mu, icis_legreuel, ids_invariants, isolated_singularity_check,
    jacobian_ideal, pfaffians, ComputationReport, GenericityConfig, LinearForm, SliceOverride, VarietyPresentation,
};
use crate::parser::ast::{is_form_placeholder, DEFERRED_ARG};
use crate::parser::{
    parse_expr_list, parse_script, Arg, DeclKind, Expr, OrderSpec, ParseError, ParseErrorKind, ScriptAst, Span,
    StatementKind,
};
use crate::ring::{jacobian, Polynomial, PolyMatrix, Ring, RingSpec};
use crate::stdbasis::Ideal;

/// A runtime value bound to a name.
#[derive(Clone, Debug)]
pub enum Value {
    Poly(Polynomial),
    Ideal(Ideal),
    Matrix(PolyMatrix),
}

impl Value {
    fn kind(&self) -> DeclKind {
        match self {
            Value::Poly(_) => DeclKind::Poly,
            Value::Ideal(_) => DeclKind::Ideal,
            Value::Matrix(_) => DeclKind::Matrix,
        }
    }
}

/// An error with the position of the statement that raised it.
#[derive(Clone, Debug)]
pub struct ScriptError {
    pub error: Error,
    pub span: Option<Span>,
}

impl ScriptError {
    pub fn kind(&self) -> &'static str {
        self.error.kind()
    }
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.error, self.span) {
            (Error::Parse(_), _) | (_, None) => write!(f, "{}", self.error),
            (e, Some(s)) => write!(f, "{s}: {e}"),
        }
    }
}

impl std::error::Error for ScriptError {}

impl From<ParseError> for ScriptError {
    fn from(e: ParseError) -> Self {
        let span = e.span;
        ScriptError { error: Error::Parse(e), span }
    }
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandResult {
    Integer(i64),
    Text(String),
    Bool(bool),
    List(Vec<String>),
    Record(Vec<(String, CommandResult)>),
}

impl Serialize for CommandResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CommandResult::Integer(v) => s.serialize_i64(*v),
            CommandResult::Text(t) => s.serialize_str(t),
            CommandResult::Bool(b) => s.serialize_bool(*b),
            CommandResult::List(items) => items.serialize(s),
            CommandResult::Record(fields) => {
                let mut m = s.serialize_map(Some(fields.len()))?;
                for (k, v) in fields {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
    }
}

impl fmt::Display for CommandResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandResult::Integer(v) => write!(f, "{v}"),
            CommandResult::Text(t) => write!(f, "{t}"),
            CommandResult::Bool(b) => write!(f, "{b}"),
            CommandResult::List(items) => write!(f, "({})", items.join(", ")),
            CommandResult::Record(fields) => {
                let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                write!(f, "{}", parts.join(", "))
            }
        }
    }
}

/// Outcome of a command statement.
#[derive(Clone, Debug, Serialize)]
pub struct CommandOutcome {
    pub command: String,
    /// Canonical text of the statement.
    pub echo: String,
    pub result: CommandResult,
    pub report: Option<ComputationReport>,
}

type Bindings = HashMap<String, Value>;

struct Scope<'a> {
    ring: &'a Ring,
    vars: &'a Bindings,
    forms: &'a [Polynomial],
}

type SResult<T> = Result<T, Error>;

fn err_at(kind: ParseErrorKind, msg: impl Into<String>, span: Span) -> Error {
    Error::Parse(ParseError::new(kind, msg, Some(span)))
}

fn type_error(msg: impl Into<String>, span: Span) -> Error {
    err_at(ParseErrorKind::TypeError, msg, span)
}

fn invalid(msg: impl Into<String>, span: Span) -> Error {
    err_at(ParseErrorKind::InvalidArgument, msg, span)
}

impl Scope<'_> {
    fn eval(&self, e: &Expr) -> SResult<Value> {
        match e {
            Expr::Int(n, _) => Ok(Value::Poly(Polynomial::constant(self.ring, crate::ring::Coefficient::from_bigint(n.clone())))),
            Expr::Ident(name, span) => self.lookup(name, *span),
            Expr::Neg(a, _) => Ok(Value::Poly(-&self.poly(a)?)),
            Expr::Add(a, b) => Ok(Value::Poly(&self.poly(a)? + &self.poly(b)?)),
            Expr::Sub(a, b) => Ok(Value::Poly(&self.poly(a)? - &self.poly(b)?)),
            Expr::Mul(a, b) => Ok(Value::Poly(&self.poly(a)? * &self.poly(b)?)),
            Expr::Div(a, b) => {
                let num = self.poly(a)?;
                let den = self.poly(b)?;
                match den.is_constant().then(|| den.constant_term().inv()).flatten() {
                    Some(inv) => Ok(Value::Poly(num.scale(&inv))),
                    None => Err(err_at(
                        ParseErrorKind::DivisionByNonConstant,
                        "division is only allowed by nonzero constants",
                        b.span(),
                    )),
                }
            }
            Expr::Pow(a, k) => Ok(Value::Poly(self.poly(a)?.pow(*k))),
            Expr::Tuple(items, _) => {
                let mut gens = Vec::new();
                for it in items {
                    gens.extend(self.generators(it)?);
                }
                Ok(Value::Ideal(Ideal::new(self.ring, gens)?))
            }
            Expr::Call(name, args, span) => self.call(name, args, *span),
        }
    }

    fn lookup(&self, name: &str, span: Span) -> SResult<Value> {
        if let Some(i) = self.ring.index_of(name) {
            return Ok(Value::Poly(Polynomial::var(self.ring, i)?));
        }
        if let Some(v) = self.vars.get(name) {
            return Ok(v.clone());
        }
        if is_form_placeholder(name) {
            let k: usize = name[1..].parse().unwrap_or(usize::MAX);
            return match self.forms.get(k.wrapping_sub(1)) {
                Some(p) => Ok(Value::Poly(p.clone())),
                None => Err(invalid(format!("'{name}' is not available: {} linear forms in use", self.forms.len()), span)),
            };
        }
        Err(err_at(ParseErrorKind::UndeclaredIdentifier, format!("undeclared identifier '{name}'"), span))
    }

    fn poly(&self, e: &Expr) -> SResult<Polynomial> {
        match self.eval(e)? {
            Value::Poly(p) => Ok(p),
            _ => Err(type_error(format!("'{e}' is not a polynomial"), e.span())),
        }
    }

    fn ideal(&self, e: &Expr) -> SResult<Ideal> {
        match self.eval(e)? {
            Value::Poly(p) => Ok(Ideal::new(self.ring, [p])?),
            Value::Ideal(i) => Ok(i),
            Value::Matrix(_) => Err(type_error(format!("'{e}' is a matrix, not an ideal"), e.span())),
        }
    }

    fn generators(&self, e: &Expr) -> SResult<Vec<Polynomial>> {
        match self.eval(e)? {
            Value::Poly(p) => Ok(vec![p]),
            Value::Ideal(i) => Ok(i.generators().to_vec()),
            Value::Matrix(_) => Err(type_error(format!("'{e}' is a matrix"), e.span())),
        }
    }

    fn matrix(&self, e: &Expr) -> SResult<PolyMatrix> {
        match self.eval(e)? {
            Value::Matrix(m) => Ok(m),
            _ => Err(type_error(format!("'{e}' is not a matrix"), e.span())),
        }
    }

    fn integer(&self, e: &Expr) -> SResult<usize> {
        let p = self.poly(e)?;
        let c = p.constant_term();
        match (p.is_constant(), c.as_small()) {
            (true, Some(v)) if c.is_integer() && v >= 0 => Ok(v as usize),
            _ => Err(invalid(format!("'{e}' is not a non-negative integer"), e.span())),
        }
    }

    fn variable(&self, e: &Expr) -> SResult<usize> {
        match e {
            Expr::Ident(name, _) => {
                self.ring.index_of(name).ok_or_else(|| invalid(format!("'{name}' is not a ring variable"), e.span()))
            }
            _ => Err(invalid(format!("'{e}' is not a ring variable"), e.span())),
        }
    }

    fn variety(&self, e: &Expr, dim: Option<&Expr>) -> SResult<VarietyPresentation> {
        let ideal = self.ideal(e)?;
        let d = match dim {
            Some(d) => self.integer(d)?,
            None => {
                let d = krull_dim(&ideal);
                if d < 0 {
                    return Err(Error::Hypothesis(format!("'{e}' defines the empty germ")));
                }
                d as usize
            }
        };
        VarietyPresentation::new(ideal, d, true)
    }

    fn call(&self, name: &str, args: &[Arg], span: Span) -> SResult<Value> {
        let a = Args::new(name, args, span, &[])?;
        Ok(match name {
            "intersect" => {
                a.at_least(2)?;
                let mut acc = self.ideal(a.pos(0)?)?;
                for e in &a.positional[1..] {
                    acc = ideal_intersect(&acc, &self.ideal(e)?)?;
                }
                Value::Ideal(acc)
            }
            "colon" => {
                a.exactly(2)?;
                Value::Ideal(ideal_colon(&self.ideal(a.pos(0)?)?, &self.poly(a.pos(1)?)?)?)
            }
            "sat" => {
                a.exactly(2)?;
                Value::Ideal(ideal_saturate(&self.ideal(a.pos(0)?)?, &self.poly(a.pos(1)?)?)?.0)
            }
            "minors" => {
                a.exactly(2)?;
                let m = self.matrix(a.pos(0)?)?;
                Value::Ideal(Ideal::new(self.ring, m.minors(self.integer(a.pos(1)?)?)?)?)
            }
            "pfaffians" => {
                a.exactly(1)?;
                Value::Ideal(Ideal::new(self.ring, pfaffians(&self.matrix(a.pos(0)?)?)?)?)
            }
            "jacobian" => {
                a.at_least(1)?;
                let mut fs = Vec::new();
                for e in &a.positional {
                    fs.extend(self.generators(e)?);
                }
                Value::Matrix(jacobian(&fs)?)
            }
            "jacobian_ideal" => {
                a.at_least(2)?;
                let x = self.variety(a.pos(0)?, None)?;
                let fs = a.positional[1..].iter().map(|e| self.poly(e)).collect::<SResult<Vec<_>>>()?;
                Value::Ideal(jacobian_ideal(&x, &fs)?)
            }
            "diff" => {
                a.exactly(2)?;
                Value::Poly(self.poly(a.pos(0)?)?.derivative(self.variable(a.pos(1)?)?)?)
            }
            "squarefree" => {
                a.exactly(1)?;
                Value::Poly(squarefree_part(&self.poly(a.pos(0)?)?)?)
            }
            "std" => {
                a.exactly(1)?;
                let i = self.ideal(a.pos(0)?)?;
                let basis = i.std();
                Value::Ideal(Ideal::new(self.ring, basis.elements().to_vec())?)
            }
            "eliminate" => {
                a.at_least(2)?;
                let vars = a.positional[1..].iter().map(|e| self.variable(e)).collect::<SResult<Vec<_>>>()?;
                Value::Ideal(eliminate(&self.ideal(a.pos(0)?)?, &vars)?)
            }
            other => return Err(err_at(ParseErrorKind::UnknownFunction, format!("unknown function '{other}'"), span)),
        })
    }
}

/// Argument list split into positional and named parts.
struct Args<'a> {
    name: &'a str,
    span: Span,
    positional: Vec<&'a Expr>,
    named: Vec<(&'a str, &'a Expr)>,
}

impl<'a> Args<'a> {
    fn new(name: &'a str, args: &'a [Arg], span: Span, allowed: &[&str]) -> SResult<Self> {
        let mut positional = Vec::new();
        let mut named = Vec::new();
        for a in args {
            match a {
                Arg::Positional(e) => positional.push(e),
                Arg::Named(k, e) => {
                    if !allowed.contains(&k.as_str()) {
                        return Err(invalid(format!("'{name}' takes no argument named '{k}'"), e.span()));
                    }
                    if named.iter().any(|(n, _)| n == k) {
                        return Err(invalid(format!("argument '{k}' given twice"), e.span()));
                    }
                    named.push((k.as_str(), e));
                }
            }
        }
        Ok(Args { name, span, positional, named })
    }

    fn pos(&self, i: usize) -> SResult<&'a Expr> {
        self.positional
            .get(i)
            .copied()
            .ok_or_else(|| invalid(format!("'{}' needs at least {} arguments", self.name, i + 1), self.span))
    }

    fn opt(&self, i: usize, key: &str) -> Option<&'a Expr> {
        self.positional.get(i).copied().or_else(|| self.named(key))
    }

    fn named(&self, key: &str) -> Option<&'a Expr> {
        self.named.iter().find(|(k, _)| *k == key).map(|(_, e)| *e)
    }

    fn exactly(&self, n: usize) -> SResult<()> {
        if self.positional.len() == n {
            Ok(())
        } else {
            Err(invalid(format!("'{}' takes {n} arguments, {} given", self.name, self.positional.len()), self.span))
        }
    }

    fn at_least(&self, n: usize) -> SResult<()> {
        if self.positional.len() >= n {
            Ok(())
        } else {
            Err(invalid(format!("'{}' takes at least {n} arguments, {} given", self.name, self.positional.len()), self.span))
        }
    }

    fn at_most(&self, n: usize) -> SResult<()> {
        if self.positional.len() <= n {
            Ok(())
        } else {
            Err(invalid(format!("'{}' takes at most {n} arguments, {} given", self.name, self.positional.len()), self.span))
        }
    }
}

fn vdim_result(v: Vdim) -> CommandResult {
    match v {
        Vdim::Finite(n) => CommandResult::Integer(n as i64),
        Vdim::Infinite => CommandResult::Text("infinite".into()),
    }
}

fn ideal_result(i: &Ideal) -> CommandResult {
    CommandResult::List(i.canonical_generators())
}

/// Executes scripts statement by statement.
pub struct Session {
    ring: Option<Ring>,
    vars: Bindings,
    cfg: GenericityConfig,
    slice_source: Option<String>,
}

impl Session {
    pub fn new(cfg: GenericityConfig) -> Self {
        Session { ring: None, vars: HashMap::new(), cfg, slice_source: None }
    }

    /// Default reduced slice for `chi`: an expression list that may use the
    /// sampled forms `l1, l2, ...`.
    pub fn set_reduced_slice(&mut self, src: impl Into<String>) {
        self.slice_source = Some(src.into());
    }

    pub fn ring(&self) -> Option<&Ring> {
        self.ring.as_ref()
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.vars.get(name)
    }

    /// Run every statement. With `only`, declarations are evaluated but only
    /// commands of that name are executed.
    pub fn run(&mut self, ast: &ScriptAst, only: Option<&str>) -> Result<Vec<CommandOutcome>, ScriptError> {
        let mut out = Vec::new();
        for st in &ast.statements {
            let at = |error: Error| {
                let span = match &error {
                    Error::Parse(p) => p.span.or(Some(st.span)),
                    _ => Some(st.span),
                };
                ScriptError { error, span }
            };
            match &st.kind {
                StatementKind::RingDecl { names, order } => {
                    let ring = match order {
                        OrderSpec::Local => RingSpec::local(names.clone()),
                        OrderSpec::Global => RingSpec::global(names.clone()),
                    }
                    .map_err(at)?;
                    self.ring = Some(ring);
                }
                StatementKind::Command { name, args } => {
                    if only.is_some_and(|o| o != name) {
                        continue;
                    }
                    let (result, report) = self.command(name, args, st.span).map_err(at)?;
                    out.push(CommandOutcome { command: name.clone(), echo: st.to_string(), result, report });
                }
                kind => {
                    let (name, value) = self.declaration(kind, st.span).map_err(at)?;
                    self.vars.insert(name, value);
                }
            }
        }
        Ok(out)
    }

    fn ring_or(&self, span: Span) -> SResult<Ring> {
        self.ring.clone().ok_or_else(|| err_at(ParseErrorKind::MissingRing, "no ring declared", span))
    }

    fn declaration(&self, kind: &StatementKind, span: Span) -> SResult<(String, Value)> {
        let ring = self.ring_or(span)?;
        let scope = Scope { ring: &ring, vars: &self.vars, forms: &[] };
        Ok(match kind {
            StatementKind::PolyDecl { name, expr } => (name.clone(), Value::Poly(scope.poly(expr)?)),
            StatementKind::IdealDecl { name, items } => {
                let mut gens = Vec::new();
                for it in items {
                    gens.extend(scope.generators(it)?);
                }
                (name.clone(), Value::Ideal(Ideal::new(&ring, gens)?))
            }
            StatementKind::MatrixDecl { name, rows, cols, entries } => {
                let es = entries.iter().map(|e| scope.poly(e)).collect::<SResult<Vec<_>>>()?;
                (name.clone(), Value::Matrix(PolyMatrix::new(&ring, *rows, *cols, es)?))
            }
            _ => unreachable!("handled by the caller"),
        })
    }

    fn config(&self, scope: &Scope<'_>, a: &Args<'_>) -> SResult<GenericityConfig> {
        let mut cfg = self.cfg.clone();
        if let Some(e) = a.named("forms") {
            let forms = match e {
                Expr::Tuple(items, _) => items.iter().map(|it| scope.poly(it)).collect::<SResult<Vec<_>>>()?,
                other => vec![scope.poly(other)?],
            };
            let forms = forms.iter().map(LinearForm::from_polynomial).collect::<SResult<Vec<_>>>()?;
            cfg.fixed_forms = Some(forms);
        }
        Ok(cfg)
    }

    fn slice_override(&self, ring: &Ring, arg: Option<&Expr>) -> SResult<Option<SliceOverride>> {
        let items: Vec<Expr> = match (arg, &self.slice_source) {
            (Some(e), _) => vec![e.clone()],
            (None, Some(src)) => {
                let names: Vec<(String, DeclKind)> = self.vars.iter().map(|(k, v)| (k.clone(), v.kind())).collect();
                parse_expr_list(src, ring, &names)?
            }
            (None, None) => return Ok(None),
        };
        let ring = ring.clone();
        let vars = Arc::new(self.vars.clone());
        Ok(Some(SliceOverride::Deferred(Arc::new(move |forms: &[Polynomial]| {
            let scope = Scope { ring: &ring, vars: &vars, forms };
            let mut gens = Vec::new();
            for it in &items {
                gens.extend(scope.generators(it)?);
            }
            Ideal::new(&ring, gens)
        }))))
    }

    fn command(&self, name: &str, args: &[Arg], span: Span) -> SResult<(CommandResult, Option<ComputationReport>)> {
        let ring = self.ring_or(span)?;
        let scope = Scope { ring: &ring, vars: &self.vars, forms: &[] };
        let allowed: &[&str] = match name {
            "euler_diff" | "isolated" => &["dim"],
            "chi" => &["dim", "forms", DEFERRED_ARG],
            "curve_mu" | "gorenstein_mu" => &["dim", "forms"],
            "ids" => &["f", "forms"],
            _ => &[],
        };
        let a = Args::new(name, args, span, allowed)?;
        let int = |v: i64| CommandResult::Integer(v);
        Ok(match name {
            "std" => {
                a.exactly(1)?;
                let i = scope.ideal(a.pos(0)?)?;
                let basis = i.std();
                let mut gens: Vec<String> = basis.elements().iter().map(|p| p.to_string()).collect();
                gens.sort();
                (CommandResult::List(gens), None)
            }
            "vdim" => {
                a.exactly(1)?;
                (vdim_result(vdim(&scope.ideal(a.pos(0)?)?)), None)
            }
            "dim" => {
                a.exactly(1)?;
                (int(krull_dim(&scope.ideal(a.pos(0)?)?)), None)
            }
            "mult" => {
                a.exactly(1)?;
                let m = hilbert_multiplicity(&scope.ideal(a.pos(0)?)?)?;
                (m.to_i64().map_or_else(|| CommandResult::Text(m.to_string()), int), None)
            }
            "saturate" => {
                a.exactly(2)?;
                let (s, k) = ideal_saturate(&scope.ideal(a.pos(0)?)?, &scope.poly(a.pos(1)?)?)?;
                (CommandResult::Record(vec![("ideal".into(), ideal_result(&s)), ("exponent".into(), int(k as i64))]), None)
            }
            "intersect" => {
                let v = scope.call("intersect", args, span)?;
                match v {
                    Value::Ideal(i) => (ideal_result(&i), None),
                    _ => unreachable!("intersect yields an ideal"),
                }
            }
            "contains" => {
                a.exactly(2)?;
                let i = scope.ideal(a.pos(0)?)?;
                let mut all = true;
                for p in scope.generators(a.pos(1)?)? {
                    all &= i.contains(&p)?;
                }
                (CommandResult::Bool(all), None)
            }
            "equal" => {
                a.exactly(2)?;
                (CommandResult::Bool(scope.ideal(a.pos(0)?)?.equals(&scope.ideal(a.pos(1)?)?)?), None)
            }
            "print" => {
                a.exactly(1)?;
                let r = match scope.eval(a.pos(0)?)? {
                    Value::Poly(p) => CommandResult::Text(p.to_string()),
                    Value::Ideal(i) => ideal_result(&i),
                    Value::Matrix(m) => CommandResult::List(
                        (0..m.rows())
                            .map(|r| format!("[{}]", m.row(r).iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
                            .collect(),
                    ),
                };
                (r, None)
            }
            "euler_diff" => {
                a.exactly(3)?;
                let x = scope.variety(a.pos(0)?, a.named("dim"))?;
                let rep = euler_diff(&x, &scope.poly(a.pos(1)?)?, &scope.poly(a.pos(2)?)?)?;
                (int(rep.value), Some(rep))
            }
            "chi" => {
                a.exactly(2)?;
                let x = scope.variety(a.pos(0)?, a.named("dim"))?;
                let cfg = self.config(&scope, &a)?;
                let slice = self.slice_override(&ring, a.named(DEFERRED_ARG))?;
                let rep = chi_fiber(&x, &scope.poly(a.pos(1)?)?, &cfg, slice.as_ref())?;
                (int(rep.value), Some(rep))
            }
            "icis" => {
                a.at_least(1)?;
                let mut fs = Vec::new();
                for e in &a.positional {
                    fs.extend(scope.generators(e)?);
                }
                (int(icis_legreuel(&fs)? as i64), None)
            }
            "curve_mu" => {
                a.exactly(3)?;
                let x = scope.variety(a.pos(0)?, a.named("dim"))?;
                let cfg = self.config(&scope, &a)?;
                let c = curve_invariants(&x, &scope.poly(a.pos(1)?)?, &scope.poly(a.pos(2)?)?, &cfg)?;
                let r = CommandResult::Record(vec![
                    ("mu_f".into(), int(c.mu_f as i64)),
                    ("mu_x".into(), int(c.mu_x)),
                    ("deg_f".into(), int(c.deg_f as i64)),
                ]);
                (r, Some(c.report))
            }
            "ids" => {
                a.at_least(3)?;
                a.at_most(4)?;
                let f = scope.matrix(a.pos(0)?)?;
                let am = scope.matrix(a.pos(1)?)?;
                let s = scope.integer(a.pos(2)?)?;
                let fbar = a.opt(3, "f").map(|e| scope.poly(e)).transpose()?;
                let cfg = self.config(&scope, &a)?;
                let out = ids_invariants(&f, &am, s, fbar.as_ref(), &cfg)?;
                let mut fields = vec![("nu_x".into(), int(out.nu_x))];
                if let (Some(mu), Some(nu)) = (out.mu_f, out.nu_slice) {
                    fields.push(("mu_f".into(), int(mu as i64)));
                    fields.push(("nu_slice".into(), int(nu)));
                }
                (CommandResult::Record(fields), Some(out.report))
            }
            "gorenstein_mu" => {
                a.exactly(2)?;
                let x = scope.variety(a.pos(0)?, a.named("dim"))?;
                let cfg = self.config(&scope, &a)?;
                let rep = gorenstein_mu(&x, &scope.poly(a.pos(1)?)?, &cfg)?;
                (int(rep.value), Some(rep))
            }
            "pfaffian" => {
                a.exactly(1)?;
                let ps = pfaffians(&scope.matrix(a.pos(0)?)?)?;
                (CommandResult::List(ps.iter().map(|p| p.to_string()).collect()), None)
            }
            "isolated" => {
                a.exactly(1)?;
                let x = scope.variety(a.pos(0)?, a.named("dim"))?;
                (vdim_result(isolated_singularity_check(&x)?), None)
            }
            other => return Err(err_at(ParseErrorKind::UnknownCommand, format!("unknown command '{other}'"), span)),
        })
    }
}

/// Parse and run `src` in a fresh session.
pub fn run_script(src: &str, cfg: GenericityConfig) -> Result<Vec<CommandOutcome>, ScriptError> {
    let ast = parse_script(src)?;
    Session::new(cfg).run(&ast, None)
}
