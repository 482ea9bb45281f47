//! Abstract syntax of the expression language and its printer.

use std::fmt;

use starprod::algebra::{Blade, Rational, Var};
use starprod::star::StarKind;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    /// `*`, the pointwise (Grassmann) product.
    Plain,
    Star(StarKind),
}

impl Product {
    pub fn symbol(self) -> String {
        match self {
            Product::Plain => "*".to_string(),
            Product::Star(k) => format!("*{}", k.tag()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bracket {
    Comm,
    Acomm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Grade,
    Exp,
    Split,
    Eigencheck,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Grade => "grade",
            Func::Exp => "exp",
            Func::Split => "split",
            Func::Eigencheck => "eigencheck",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "grade" => Func::Grade,
            "exp" => Func::Exp,
            "split" => Func::Split,
            "eigencheck" => Func::Eigencheck,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Rational(Rational),
    I,
    Hbar,
    Var(Var),
    Blade(Blade),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Product, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Bracket(Bracket, Option<StarKind>, Box<Expr>, Box<Expr>),
    Poisson(Box<Expr>, Box<Expr>),
    Call(Func, Option<StarKind>, Vec<Expr>),
}

/// An expression node with the position of its first token.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Self { kind, pos }
    }
}

// Structural equality ignores positions.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Rational(a), Rational(b)) => a == b,
            (I, I) | (Hbar, Hbar) => true,
            (Var(a), Var(b)) => a == b,
            (Blade(a), Blade(b)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Poisson(a, b), Poisson(c, d)) => a == c && b == d,
            (Mul(p, a, b), Mul(q, c, d)) => p == q && a == c && b == d,
            (Pow(a, n), Pow(b, m)) => a == b && n == m,
            (Bracket(k, s, a, b), Bracket(l, t, c, d)) => k == l && s == t && a == c && b == d,
            (Call(f, s, a), Call(g, t, b)) => f == g && s == t && a == b,
            _ => false,
        }
    }
}

// Binding strength used by the printer: additive < product < unary < power < atom.
fn precedence(e: &Expr) -> u8 {
    match e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(..) => 4,
        _ => 5,
    }
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn kind_prefix(k: &Option<StarKind>) -> String {
    k.map(|k| format!("{}; ", k.tag())).unwrap_or_default()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        match &self.kind {
            Rational(r) => write!(f, "{r}"),
            I => f.write_str("i"),
            Hbar => f.write_str("hb"),
            Var(v) => write!(f, "{v}"),
            Blade(b) => write!(f, "{b}"),
            Neg(a) => write!(f, "-{}", Wrapped(a, precedence(a) < 3)),
            Add(a, b) => write!(f, "{} + {}", a, Wrapped(b, precedence(b) <= 1)),
            Sub(a, b) => write!(f, "{} - {}", a, Wrapped(b, precedence(b) <= 1)),
            Mul(p, a, b) => {
                let sep = match p {
                    Product::Plain => "*".to_string(),
                    Product::Star(_) => format!(" {} ", p.symbol()),
                };
                write!(f, "{}{sep}{}", Wrapped(a, precedence(a) < 2), Wrapped(b, precedence(b) <= 2))
            }
            Pow(a, n) => write!(f, "{}^{n}", Wrapped(a, precedence(a) < 5)),
            Bracket(k, kind, a, b) => {
                let name = match k {
                    self::Bracket::Comm => "comm",
                    self::Bracket::Acomm => "acomm",
                };
                write!(f, "{name}({}{a}, {b})", kind_prefix(kind))
            }
            Poisson(a, b) => write!(f, "pb({a}, {b})"),
            Call(func, kind, args) => {
                write!(f, "{}({}", func.name(), kind_prefix(kind))?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
