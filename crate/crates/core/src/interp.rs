//! The statement evaluator: values, the global environment, builtins and
//! method dispatch.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::convert::{expr_to_poly, infer_ring};
use crate::error::{Diagnostic, Error, Pos, Result};
use crate::expr::{Expr, Sym};
use crate::groebner::{buchberger_with_stats, Ideal};
use crate::lexer::tokenize;
use crate::number::{BinOp, Number, NumberType};
use crate::parser::{self, Ast, AstKind, Stmt, StmtKind};
use crate::poly::{MonomialOrder, Polynomial, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Symbols,
    Groebner,
    Ideal,
    PolynomialRing,
    Polynomial,
}

impl Builtin {
    fn name(self) -> &'static str {
        match self {
            Builtin::Symbols => "symbols",
            Builtin::Groebner => "groebner",
            Builtin::Ideal => "ideal",
            Builtin::PolynomialRing => "PolynomialRing",
            Builtin::Polynomial => "Polynomial",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(Number),
    Sym(Sym),
    Expr(Expr),
    Poly(Polynomial),
    Ring(Arc<Ring>),
    Ideal(Ideal),
    List(Vec<Value>),
    Order(MonomialOrder),
    Domain(NumberType),
    Str(String),
    Builtin(Builtin),
}

impl Value {
    /// Wraps an expression, unwrapping the degenerate number and symbol cases.
    pub fn from_expr(e: Expr) -> Value {
        match e {
            Expr::Num(n) => Value::Number(n),
            Expr::Sym(s) => Value::Sym(s),
            e => Value::Expr(e),
        }
    }

    /// The value as an expression tree, when it is one.
    pub fn as_expr(&self) -> Option<Expr> {
        match self {
            Value::Number(n) => Some(Expr::Num(n.clone())),
            Value::Sym(s) => Some(Expr::Sym(s.clone())),
            Value::Expr(e) => Some(e.clone()),
            _ => None,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Sym(_) => "symbol",
            Value::Expr(_) => "expression",
            Value::Poly(_) => "polynomial",
            Value::Ring(_) => "ring",
            Value::Ideal(_) => "ideal",
            Value::List(_) => "list",
            Value::Order(_) => "order",
            Value::Domain(_) => "domain",
            Value::Str(_) => "string",
            Value::Builtin(_) => "builtin function",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(n) => write!(f, "{n}"),
            Value::Sym(s) => write!(f, "{s}"),
            Value::Expr(e) => write!(f, "{e}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Ring(r) => write!(f, "{r}"),
            Value::Ideal(i) => write!(f, "{i}"),
            Value::List(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Order(o) => write!(f, "{o}"),
            Value::Domain(d) => write!(f, "{d}"),
            Value::Str(s) => write!(f, "'{s}'"),
            Value::Builtin(b) => write!(f, "<builtin {}>", b.name()),
        }
    }
}

/// Session flags, fixed for the lifetime of an interpreter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Unbound identifiers evaluate to symbols of the same name.
    pub auto_symbols: bool,
    /// Juxtaposition multiplies.
    pub implicit_mul: bool,
    /// Record Buchberger pair statistics as notes.
    pub debug_gb: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            auto_symbols: true,
            implicit_mul: false,
            debug_gb: false,
        }
    }
}

pub struct Interpreter {
    config: Config,
    globals: HashMap<String, Value>,
    notes: Vec<String>,
}

impl Default for Interpreter {
    fn default() -> Self {
        Interpreter::new(Config::default())
    }
}

fn type_error<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Type(msg.into()))
}

impl Interpreter {
    pub fn new(config: Config) -> Self {
        let mut globals = HashMap::new();
        for b in [
            Builtin::Symbols,
            Builtin::Groebner,
            Builtin::Ideal,
            Builtin::PolynomialRing,
            Builtin::Polynomial,
        ] {
            globals.insert(b.name().to_string(), Value::Builtin(b));
        }
        globals.insert("lex".into(), Value::Order(MonomialOrder::Lex));
        globals.insert("graded".into(), Value::Order(MonomialOrder::Graded));
        globals.insert("Q".into(), Value::Domain(NumberType::Rat));
        globals.insert("Z".into(), Value::Domain(NumberType::Int));
        Interpreter {
            config,
            globals,
            notes: Vec::new(),
        }
    }

    pub fn config(&self) -> Config {
        self.config
    }

    /// Debug notes produced since the last call.
    pub fn take_notes(&mut self) -> Vec<String> {
        std::mem::take(&mut self.notes)
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.globals.get(name)
    }

    /// Parses `src` under this session's flags.
    pub fn parse(&self, src: &str) -> Result<Vec<Stmt>> {
        let tokens = tokenize(src)?;
        if self.config.implicit_mul {
            let callable = |name: &str| matches!(self.globals.get(name), Some(Value::Builtin(_)));
            parser::parse_with_implicit_mul(&tokens, &callable)
        } else {
            parser::parse(&tokens)
        }
    }

    /// Runs every statement in `src`, handing echoed values to `echo`.
    /// Line numbers in diagnostics are offset so that `src` starts on
    /// `first_line`. Stops at the first error.
    pub fn execute(
        &mut self,
        src: &str,
        first_line: usize,
        echo: &mut dyn FnMut(&Value),
    ) -> Result<(), Diagnostic> {
        let shift = |mut d: Diagnostic| {
            d.pos.line += first_line.saturating_sub(1);
            d
        };
        let stmts = self
            .parse(src)
            .map_err(|e| shift(Diagnostic::new(Pos::new(1, 1), e)))?;
        for stmt in &stmts {
            let v = self.eval_stmt(stmt).map_err(shift)?;
            if stmt.echo {
                echo(&v);
            }
        }
        Ok(())
    }

    /// Evaluates a single expression given as text.
    pub fn eval_expr_str(&mut self, src: &str) -> Result<Value> {
        let stmts = self.parse(src)?;
        match stmts.as_slice() {
            [s] => self.eval_stmt(s).map_err(|d| d.error),
            _ => Err(Error::Parse {
                pos: Pos::new(1, 1),
                message: "expected exactly one statement".into(),
            }),
        }
    }

    pub fn eval_stmt(&mut self, stmt: &Stmt) -> Result<Value, Diagnostic> {
        match &stmt.kind {
            StmtKind::Expr(e) => self.eval(e),
            StmtKind::Assign(name, e) => {
                let v = self.eval(e)?;
                self.globals.insert(name.clone(), v.clone());
                Ok(v)
            }
            StmtKind::AssignMany(names, e) => {
                let v = self.eval(e)?;
                let items = match &v {
                    Value::List(items) if items.len() == names.len() => items,
                    other => {
                        let found = match other {
                            Value::List(items) => format!("a list of {}", items.len()),
                            other => format!("a {}", other.type_name()),
                        };
                        return Err(Diagnostic::new(
                            stmt.pos,
                            Error::Type(format!(
                                "cannot unpack {found} into {} names",
                                names.len()
                            )),
                        ));
                    }
                };
                for (name, item) in names.iter().zip(items) {
                    self.globals.insert(name.clone(), item.clone());
                }
                Ok(v)
            }
        }
    }

    /// Bound value, else a fresh symbol when auto-symbols are on. Fresh
    /// symbols are not stored, so a later assignment is a plain rebinding.
    pub fn resolve_identifier(&self, name: &str) -> Result<Value> {
        if let Some(v) = self.globals.get(name) {
            return Ok(v.clone());
        }
        if self.config.auto_symbols {
            return Sym::new(name).map(Value::Sym);
        }
        Err(Error::Name(name.to_string()))
    }

    fn eval(&mut self, ast: &Ast) -> Result<Value, Diagnostic> {
        let at = |e: Error| Diagnostic::new(ast.pos, e);
        match &ast.kind {
            AstKind::Int(n) => Ok(Value::Number(Number::Int(n.clone()))),
            AstKind::Str(s) => Ok(Value::Str(s.clone())),
            AstKind::Ident(name) => self.resolve_identifier(name).map_err(at),
            AstKind::Neg(inner) => {
                let v = self.eval(inner)?;
                negate(v).map_err(at)
            }
            AstKind::BinOp(op, l, r) => {
                let a = self.eval(l)?;
                let b = self.eval(r)?;
                binop(*op, a, b).map_err(at)
            }
            AstKind::List(items) => Ok(Value::List(self.eval_all(items)?)),
            AstKind::Call(name, args) => {
                let args = self.eval_all(args)?;
                self.call(name, args).map_err(at)
            }
            AstKind::Method(recv, name, args) => {
                let recv = self.eval(recv)?;
                let args = self.eval_all(args)?;
                self.method(recv, name, args).map_err(at)
            }
            AstKind::Index(recv, idx) => {
                let recv = self.eval(recv)?;
                let idx = self.eval(idx)?;
                index(recv, idx).map_err(at)
            }
        }
    }

    fn eval_all(&mut self, items: &[Ast]) -> Result<Vec<Value>, Diagnostic> {
        items.iter().map(|a| self.eval(a)).collect()
    }

    fn call(&mut self, name: &str, args: Vec<Value>) -> Result<Value> {
        match self.globals.get(name) {
            Some(Value::Builtin(b)) => {
                let b = *b;
                self.call_builtin(b, args)
            }
            Some(other) => type_error(format!("{name} is a {}, not a function", other.type_name())),
            None if self.config.auto_symbols => {
                let args = args
                    .iter()
                    .map(|a| {
                        a.as_expr().ok_or_else(|| {
                            Error::Type(format!(
                                "symbolic function {name} cannot take a {}",
                                a.type_name()
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Expr::call(name, args).map(Value::from_expr)
            }
            None => Err(Error::Name(name.to_string())),
        }
    }

    fn call_builtin(&mut self, b: Builtin, args: Vec<Value>) -> Result<Value> {
        match b {
            Builtin::Symbols => builtin_symbols(&args),
            Builtin::Groebner => self.builtin_groebner(args),
            Builtin::Ideal => builtin_ideal(args),
            Builtin::PolynomialRing => builtin_polynomial_ring(args),
            Builtin::Polynomial => builtin_polynomial(args),
        }
    }

    fn note_stats(&mut self, what: &str, stats: crate::groebner::GbStats) {
        if self.config.debug_gb {
            self.notes.push(format!("{what}: {stats}"));
        }
    }

    fn builtin_groebner(&mut self, args: Vec<Value>) -> Result<Value> {
        let (items, order) = match args.as_slice() {
            [Value::List(items)] => (items, None),
            [Value::List(items), Value::Order(o)] => (items, Some(*o)),
            _ => return type_error("usage: groebner(list, order)"),
        };
        if items.is_empty() {
            return Err(Error::EmptyInput("groebner".into()));
        }
        let order = order.unwrap_or_else(|| default_order(items));
        let ring = common_ring(items, order)?.with_domain(NumberType::Rat);
        let polys = to_polys(&Arc::new(ring), items)?;
        let (gb, stats) = buchberger_with_stats(&polys, order)?;
        self.note_stats("groebner", stats);
        Ok(Value::List(gb.into_iter().map(Value::Poly).collect()))
    }

    fn method(&mut self, recv: Value, name: &str, args: Vec<Value>) -> Result<Value> {
        match (&recv, name, args.as_slice()) {
            (Value::Ideal(i), "GB", []) => {
                let gb = i.to_gb();
                self.note_stats("GB", gb.gb_stats());
                Ok(Value::Ideal(gb))
            }
            (Value::Ideal(i), "intersect", [Value::Ideal(j)]) => {
                let k = i.intersect(j)?;
                self.note_stats("intersect", k.gb_stats());
                Ok(Value::Ideal(k))
            }
            (Value::Ideal(_), "intersect", [other]) => {
                type_error(format!("cannot intersect an ideal with a {}", other.type_name()))
            }
            (Value::Ideal(i), "contains", [v]) => {
                let own = common_ring(std::slice::from_ref(v), i.ring().order())?;
                let joint = i.ring().join(&own).with_domain(NumberType::Rat);
                let p = value_to_poly(&Arc::new(joint.clone()), v)?;
                let member = if joint == **i.ring() {
                    i.contains(&p)?
                } else {
                    i.embed(&joint)?.contains(&p)?
                };
                Ok(Value::Number(Number::from(i64::from(member))))
            }
            (Value::Ideal(i), "gens", []) => Ok(Value::List(
                i.generators().iter().cloned().map(Value::Poly).collect(),
            )),
            (Value::Ring(r), "valueOf", [v]) => value_to_poly(r, v).map(Value::Poly),
            (Value::Ring(r), "gens", []) => Ok(Value::List(
                r.vars()
                    .iter()
                    .map(|v| Value::Poly(Polynomial::var(r, v).expect("ring variable")))
                    .collect(),
            )),
            (Value::Poly(p), "ring", []) => Ok(Value::Ring(p.ring().clone())),
            (Value::List(items), "len", []) => Ok(Value::Number(Number::from(items.len() as i64))),
            _ => type_error(format!(
                "{} has no method {name} taking {} argument(s)",
                recv.type_name(),
                args.len()
            )),
        }
    }
}

fn default_order(items: &[Value]) -> MonomialOrder {
    items
        .iter()
        .find_map(|v| match v {
            Value::Poly(p) => Some(p.ring().order()),
            _ => None,
        })
        .unwrap_or(MonomialOrder::Graded)
}

/// The ring all items fit in: polynomial rings joined first (keeping their
/// variable order when one contains the rest), then whatever the
/// expressions need.
fn common_ring(items: &[Value], order: MonomialOrder) -> Result<Ring> {
    let mut ring: Option<Ring> = None;
    let mut exprs = Vec::new();
    for v in items {
        match v {
            Value::Poly(p) => {
                ring = Some(match ring {
                    None => (**p.ring()).clone(),
                    Some(r) => r.join(p.ring()),
                })
            }
            other => match other.as_expr() {
                Some(e) => exprs.push(e),
                None => {
                    return type_error(format!(
                        "a {} cannot be read as a polynomial",
                        other.type_name()
                    ))
                }
            },
        }
    }
    let ring = match (ring, exprs.is_empty()) {
        (Some(r), true) => r,
        (Some(r), false) => r.join(&infer_ring(&exprs, order)?),
        (None, _) => infer_ring(&exprs, order)?,
    };
    Ok(ring.with_order(order))
}

fn to_polys(ring: &Arc<Ring>, items: &[Value]) -> Result<Vec<Polynomial>> {
    items.iter().map(|v| value_to_poly(ring, v)).collect()
}

/// `ring.valueOf(v)`.
pub fn value_to_poly(ring: &Arc<Ring>, v: &Value) -> Result<Polynomial> {
    match v {
        Value::Poly(p) => p.embed(ring),
        other => match other.as_expr() {
            Some(e) => expr_to_poly(ring, &e),
            None => Err(Error::Conversion(format!(
                "a {} cannot be read as a polynomial",
                other.type_name()
            ))),
        },
    }
}

fn builtin_symbols(args: &[Value]) -> Result<Value> {
    let mut out = Vec::new();
    for a in args {
        let Value::Str(spec) = a else {
            return type_error(format!("symbols expects strings, got a {}", a.type_name()));
        };
        let names: Vec<&str> = spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if names.is_empty() {
            return Err(Error::BadSymbolName(spec.clone()));
        }
        for n in names {
            out.push(Value::Sym(Sym::new(n)?));
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyInput("symbols".into()));
    }
    Ok(Value::List(out))
}

fn builtin_ideal(args: Vec<Value>) -> Result<Value> {
    let items = match args.as_slice() {
        [Value::List(items)] => items.clone(),
        _ => args,
    };
    if items.is_empty() {
        return Err(Error::EmptyInput("ideal".into()));
    }
    let ring = common_ring(&items, default_order(&items))?.with_domain(NumberType::Rat);
    let polys = to_polys(&Arc::new(ring.clone()), &items)?;
    Ideal::new(&ring, &polys).map(Value::Ideal)
}

fn builtin_polynomial_ring(args: Vec<Value>) -> Result<Value> {
    let (head, order) = match args.as_slice() {
        [head @ .., Value::Order(o)] => (head, *o),
        all => (all, MonomialOrder::Graded),
    };
    let ring = match head {
        [Value::Domain(d), Value::Str(vars)] => {
            let names: Vec<String> = vars
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            Ring::new(*d, names, order)?
        }
        [Value::List(items)] => {
            if items.is_empty() {
                return Err(Error::EmptyInput("PolynomialRing".into()));
            }
            common_ring(items, order)?
        }
        _ => {
            return type_error(
                "usage: PolynomialRing(Q, 'x,y') or PolynomialRing([expr, ...]), optionally followed by an order",
            )
        }
    };
    Ok(Value::Ring(Arc::new(ring)))
}

fn builtin_polynomial(args: Vec<Value>) -> Result<Value> {
    let (v, order) = match args.as_slice() {
        [v] => (v, MonomialOrder::Graded),
        [v, Value::Order(o)] => (v, *o),
        _ => return type_error("usage: Polynomial(expr) or Polynomial(expr, order)"),
    };
    let ring = Arc::new(common_ring(std::slice::from_ref(v), order)?);
    value_to_poly(&ring, v).map(Value::Poly)
}

fn negate(v: Value) -> Result<Value> {
    match v {
        Value::Poly(p) => Ok(Value::Poly(p.neg())),
        other => match other.as_expr() {
            Some(e) => Ok(Value::from_expr(Expr::neg(e))),
            None => type_error(format!("cannot negate a {}", other.type_name())),
        },
    }
}

/// Operator dispatch. Expression operands build trees (folding numbers);
/// as soon as a polynomial is involved the other side is coerced into its
/// ring.
pub fn binop(op: BinOp, a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => {
            if op == BinOp::Pow {
                return type_error("polynomial exponents are not supported");
            }
            let ring = if p.ring() == q.ring() {
                p.ring().clone()
            } else {
                Arc::new(p.ring().join(q.ring()))
            };
            poly_op(op, p.embed(&ring)?, q.embed(&ring)?)
        }
        (Value::Poly(p), other) => {
            let Some(e) = other.as_expr() else {
                return unsupported(op, "polynomial", other.type_name());
            };
            match op {
                BinOp::Pow => match e {
                    Expr::Num(n) => Ok(Value::Poly(p.pow(n.to_exponent()?))),
                    _ => type_error("polynomial exponents must be numbers"),
                },
                BinOp::Div => match e {
                    Expr::Num(n) => divide_by_number(&p, &n),
                    _ => Err(Error::Conversion(format!("symbolic denominator {e}"))),
                },
                _ => {
                    let q = expr_to_poly(p.ring(), &e)?;
                    poly_op(op, p, q)
                }
            }
        }
        (other, Value::Poly(q)) => {
            let Some(e) = other.as_expr() else {
                return unsupported(op, other.type_name(), "polynomial");
            };
            if op == BinOp::Pow {
                return type_error("polynomial exponents are not supported");
            }
            let p = expr_to_poly(q.ring(), &e)?;
            poly_op(op, p, q)
        }
        (a, b) => match (a.as_expr(), b.as_expr()) {
            (Some(x), Some(y)) => Expr::binop(op, x, y).map(Value::from_expr),
            _ => unsupported(op, a.type_name(), b.type_name()),
        },
    }
}

fn unsupported<T>(op: BinOp, a: &str, b: &str) -> Result<T> {
    type_error(format!("unsupported operand types for {op}: {a} and {b}"))
}

fn divide_by_number(p: &Polynomial, n: &Number) -> Result<Value> {
    if n.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = Arc::new(p.ring().with_domain(NumberType::Rat));
    Ok(Value::Poly(p.embed(&ring)?.scale(&n.to_rational().recip())))
}

fn poly_op(op: BinOp, p: Polynomial, q: Polynomial) -> Result<Value> {
    match op {
        BinOp::Add => p.add(&q).map(Value::Poly),
        BinOp::Sub => p.sub(&q).map(Value::Poly),
        BinOp::Mul => p.mul(&q).map(Value::Poly),
        BinOp::Div => match q.as_constant() {
            Some(n) => divide_by_number(&p, &n),
            None => type_error(format!("cannot divide by the non-constant polynomial {q}")),
        },
        BinOp::Pow => type_error("polynomial exponents are not supported"),
    }
}

fn index(recv: Value, idx: Value) -> Result<Value> {
    let Value::List(items) = recv else {
        return type_error(format!("a {} cannot be indexed", recv.type_name()));
    };
    let Value::Number(Number::Int(n)) = &idx else {
        return type_error(format!("list index must be an integer, not a {}", idx.type_name()));
    };
    let len = items.len();
    usize::try_from(n)
        .ok()
        .and_then(|i| items.into_iter().nth(i))
        .ok_or_else(|| Error::Type(format!("index {n} out of range for a list of {len}")))
}
