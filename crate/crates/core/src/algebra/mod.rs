//! Exact scalars, commuting polynomials, and the Grassmann algebra of γ₀..γ₃.

pub mod blade;
pub mod metric;
pub mod multivector;
pub mod poly;
pub mod scalar;

pub use blade::Blade;
pub use metric::Metric;
pub use multivector::Multivector;
pub use poly::{Monomial, PhasePoly, Var, NVARS};
pub use scalar::{int, rat, ComplexRational, Rational, ScalarH};

/// Splits a printed term `c*rest` into its sign and unsigned body.
pub(crate) fn format_term(c: &ScalarH, rest: &str) -> (bool, String) {
    let text = c.to_string();
    if !c.is_atomic() {
        return if rest == "1" {
            (false, format!("({text})"))
        } else {
            (false, format!("({text})*{rest}"))
        };
    }
    let (neg, mag) = match text.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, text),
    };
    let body = match (mag.as_str(), rest) {
        (m, "1") => m.to_string(),
        ("1", r) => r.to_string(),
        (m, r) => format!("{m}*{r}"),
    };
    (neg, body)
}
