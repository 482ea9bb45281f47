//! Evaluation of parsed expressions against a session configuration.

use std::fmt;

use num_traits::{Signed, ToPrimitive};
use starprod::algebra::{Metric, Multivector, ScalarH};
use starprod::calculus::{projector_split, star_eigencheck, star_exp_truncated, ProjectorSplit};
use starprod::mechanics::poisson_bracket;
use starprod::star::{ProductKind, StarKind};

use crate::json::to_json_value;
use crate::parse::{parse_at, ParseError};
use crate::syntax::{Bracket, Expr, ExprKind, Func, Pos, Product};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub metric: Metric,
    /// Product used by `comm`, `acomm`, `exp`, `split` and `eigencheck`
    /// when no kind is given.
    pub product: StarKind,
    /// Truncation order of `exp`.
    pub order: usize,
    pub format: Format,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self { metric: Metric::Nonstandard, product: StarKind::Moyal4, order: 8, format: Format::Text }
    }
}

impl SessionConfig {
    fn kind(&self, k: Option<StarKind>) -> ProductKind {
        ProductKind::new(k.unwrap_or(self.product), self.metric)
    }
}

/// Result of evaluating one expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Multivector(Multivector),
    Split(ProjectorSplit),
    Bool(bool),
}

impl Value {
    pub fn into_multivector(self) -> Option<Multivector> {
        match self {
            Value::Multivector(m) => Some(m),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Multivector(m) => to_json_value(m),
            Value::Split(s) => serde_json::json!({
                "eigenvalue": to_json_value(&Multivector::scalar(s.eigenvalue.clone())),
                "pi_plus": to_json_value(&s.pi_plus),
                "pi_minus": to_json_value(&s.pi_minus),
            }),
            Value::Bool(b) => serde_json::json!({ "holds": b }),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_string(),
            Format::Json => self.to_json().to_string(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Multivector(m) => write!(f, "{m}"),
            Value::Split(s) => write!(
                f,
                "eigenvalue = {}\npi+ = {}\npi- = {}",
                s.eigenvalue, s.pi_plus, s.pi_minus
            ),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "evaluation error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for EvalError {}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn fail<T>(pos: Pos, message: impl fmt::Display) -> Result<T, EvalError> {
    Err(EvalError { pos, message: message.to_string() })
}

fn multivector(e: &Expr, cfg: &SessionConfig) -> Result<Multivector, EvalError> {
    match eval(e, cfg)? {
        Value::Multivector(m) => Ok(m),
        other => fail(e.pos, format!("expected a multivector, got {}", kind_name(&other))),
    }
}

fn kind_name(v: &Value) -> &'static str {
    match v {
        Value::Multivector(_) => "a multivector",
        Value::Split(_) => "a projector split",
        Value::Bool(_) => "a boolean",
    }
}

fn constant(e: &Expr, cfg: &SessionConfig) -> Result<ScalarH, EvalError> {
    let m = multivector(e, cfg)?;
    m.as_scalar_constant()
        .ok_or_else(|| EvalError { pos: e.pos, message: format!("expected a constant scalar, got {m}") })
}

pub fn eval(e: &Expr, cfg: &SessionConfig) -> Result<Value, EvalError> {
    let pos = e.pos;
    let lift = |r: starprod::error::Result<Multivector>| {
        r.map(Value::Multivector).map_err(|err| EvalError { pos, message: err.to_string() })
    };
    let mv = |m: Multivector| Ok(Value::Multivector(m));
    match &e.kind {
        ExprKind::Rational(r) => mv(Multivector::from_rational(r.clone())),
        ExprKind::I => mv(Multivector::scalar(ScalarH::i())),
        ExprKind::Hbar => mv(Multivector::scalar(ScalarH::hbar())),
        ExprKind::Var(v) => mv(Multivector::var(*v)),
        ExprKind::Blade(b) => mv(Multivector::blade(*b)),
        ExprKind::Neg(a) => mv(-multivector(a, cfg)?),
        ExprKind::Add(a, b) => mv(&multivector(a, cfg)? + &multivector(b, cfg)?),
        ExprKind::Sub(a, b) => mv(&multivector(a, cfg)? - &multivector(b, cfg)?),
        ExprKind::Mul(p, a, b) => {
            let (x, y) = (multivector(a, cfg)?, multivector(b, cfg)?);
            mv(match p {
                Product::Plain => &x * &y,
                Product::Star(k) => cfg.kind(Some(*k)).star(&x, &y),
            })
        }
        ExprKind::Pow(a, n) => {
            if *n < 0 {
                if !matches!(a.kind, ExprKind::Hbar) {
                    return fail(pos, "negative exponents are only allowed on hb");
                }
                return mv(Multivector::scalar(ScalarH::hbar_pow(*n)));
            }
            let base = multivector(a, cfg)?;
            let mut acc = Multivector::one();
            for _ in 0..*n {
                acc = &acc * &base;
            }
            mv(acc)
        }
        ExprKind::Bracket(br, k, a, b) => {
            let (x, y) = (multivector(a, cfg)?, multivector(b, cfg)?);
            let kind = cfg.kind(*k);
            mv(match br {
                Bracket::Comm => kind.commutator(&x, &y),
                Bracket::Acomm => kind.anticommutator(&x, &y),
            })
        }
        ExprKind::Poisson(a, b) => {
            let (x, y) = (multivector(a, cfg)?, multivector(b, cfg)?);
            for (m, arg) in [(&x, a), (&y, b)] {
                if !m.is_zero() && !m.is_grade(0) {
                    return fail(arg.pos, format!("pb needs grade-0 arguments, got {m}"));
                }
            }
            mv(Multivector::from_poly(poisson_bracket(&x.scalar_part(), &y.scalar_part())))
        }
        ExprKind::Call(func, k, args) => match func {
            Func::Grade => {
                let n = constant(&args[1], cfg)?
                    .as_rational()
                    .filter(|r| r.is_integer() && !r.is_negative())
                    .and_then(|r| r.to_integer().to_u32())
                    .ok_or_else(|| EvalError { pos: args[1].pos, message: "grade must be a non-negative integer".into() })?;
                lift(multivector(&args[0], cfg)?.grade_project(n))
            }
            Func::Exp => {
                let x = multivector(&args[0], cfg)?;
                mv(star_exp_truncated(&x, cfg.order, cfg.kind(*k)).series())
            }
            Func::Split => {
                let x = multivector(&args[0], cfg)?;
                projector_split(&x, cfg.kind(*k))
                    .map(Value::Split)
                    .map_err(|err| EvalError { pos, message: err.to_string() })
            }
            Func::Eigencheck => {
                let h = multivector(&args[0], cfg)?;
                let w = multivector(&args[1], cfg)?;
                let lambda = constant(&args[2], cfg)?;
                Ok(Value::Bool(star_eigencheck(&h, &w, &lambda, cfg.kind(*k))))
            }
        },
    }
}

/// Parses and evaluates one expression.
pub fn eval_str(src: &str, cfg: &SessionConfig) -> Result<Value, CliError> {
    eval_line(src, 1, cfg)
}

pub fn eval_line(src: &str, line: usize, cfg: &SessionConfig) -> Result<Value, CliError> {
    let e = parse_at(src, line)?;
    Ok(eval(&e, cfg)?)
}
