//! Lexer and recursive-descent parser.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'*C'|'*M3'|'*M4'|'*MC'|'*M3C') factor)*
//! factor := '-' factor | atom ('^' nat)?
//! atom   := rational | 'i' | 'hb' | var | blade | call | '(' expr ')'
//! ```
//!
//! `hb` alone also accepts a negative exponent, `hb^-2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use starprod::algebra::{Blade, Rational, Var};
use starprod::star::StarKind;

use crate::syntax::{Bracket, Expr, ExprKind, Func, Pos, Product};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: ", self.pos)?;
        if let Some(m) = &self.message {
            return write!(f, "{m}");
        }
        match self.expected.as_slice() {
            [one] => write!(f, "expected {one}, found {}", self.found),
            many => write!(f, "expected one of {}, found {}", many.join(", "), self.found),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Op(Product),
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number '{r}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Op(p) => format!("'{}'", p.symbol()),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn err(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError { pos, expected: Vec::new(), found: String::new(), message: Some(message.into()) }
}

fn lex(src: &str, first_line: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, first_line, 1);
    let ident_at = |start: usize| {
        let mut j = start;
        while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
            j += 1;
        }
        j
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            ';' => {
                i += 1;
                Tok::Semi
            }
            '*' => {
                i += 1;
                let end = ident_at(i);
                let word: String = chars[i..end].iter().collect();
                match StarKind::from_str(&word) {
                    Ok(k) if !word.is_empty() => {
                        i = end;
                        Tok::Op(Product::Star(k))
                    }
                    _ => Tok::Op(Product::Plain),
                }
            }
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                let mut value = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    let d0 = i + 1;
                    i = d0;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: BigInt = chars[d0..i].iter().collect::<String>().parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(err(pos, "zero denominator in rational literal"));
                    }
                    value /= Rational::from_integer(den);
                }
                Tok::Num(value)
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                i = ident_at(i);
                Tok::Ident(chars[start..i].iter().collect())
            }
            other => return Err(err(pos, format!("unexpected character '{other}'"))),
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// `g0g1g3` → blade; `None` if the word is not a blade literal.
fn blade_literal(word: &str, pos: Pos) -> Option<Result<Blade, ParseError>> {
    let bytes = word.as_bytes();
    if bytes.is_empty() || !bytes.len().is_multiple_of(2) {
        return None;
    }
    let mut idx = Vec::new();
    for pair in bytes.chunks(2) {
        match pair {
            [b'g', d @ b'0'..=b'3'] => idx.push((d - b'0') as usize),
            _ => return None,
        }
    }
    Some(Blade::from_indices(&idx).map_err(|_| {
        err(
            pos,
            format!("blade literal '{word}' must list distinct indices in ascending order; write products explicitly"),
        )
    }))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
            message: None,
        })
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&[name])
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let make: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek() {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::new(make(Box::new(lhs), Box::new(rhs)), pos);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Tok::Op(p) = *self.peek() {
            let pos = self.pos();
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::new(ExprKind::Mul(p, Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.bump();
            let inner = self.factor()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), pos));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, pos) = self.bump();
        let negative = if *self.peek() == Tok::Minus {
            if !matches!(base.kind, ExprKind::Hbar) {
                return Err(err(self.pos(), "negative exponents are only allowed on hb"));
            }
            self.bump();
            true
        } else {
            false
        };
        let n = match self.peek() {
            Tok::Num(r) if r.is_integer() => {
                let n: i32 = r
                    .to_integer()
                    .try_into()
                    .map_err(|_| err(self.pos(), "exponent too large"))?;
                n
            }
            _ => return self.unexpected(&["natural exponent"]),
        };
        self.bump();
        Ok(Expr::new(ExprKind::Pow(Box::new(base), if negative { -n } else { n }), pos))
    }

    fn kind_prefix(&mut self) -> Result<Option<StarKind>, ParseError> {
        if let (Tok::Ident(w), Tok::Semi) = (self.peek(), &self.toks[(self.at + 1).min(self.toks.len() - 1)].0) {
            let k = StarKind::from_str(w)
                .map_err(|_| err(self.pos(), format!("unknown product kind '{w}' (expected C, M3, M4, MC or M3C)")))?;
            self.bump();
            self.bump();
            return Ok(Some(k));
        }
        Ok(None)
    }

    fn args(&mut self, n: usize) -> Result<Vec<Expr>, ParseError> {
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                self.expect(Tok::Comma, "','")?;
            }
            out.push(self.expr()?);
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Expr::new(ExprKind::Rational(r), pos))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(word) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    return self.call(&word, pos);
                }
                let kind = match word.as_str() {
                    "i" => ExprKind::I,
                    "hb" => ExprKind::Hbar,
                    w => {
                        if let Ok(v) = Var::from_str(w) {
                            ExprKind::Var(v)
                        } else if let Some(b) = blade_literal(w, pos) {
                            ExprKind::Blade(b?)
                        } else {
                            return Err(ParseError {
                                pos,
                                expected: vec!["number".into(), "i".into(), "hb".into(), "variable".into(), "blade".into(), "'('".into()],
                                found: format!("unknown name '{w}'"),
                                message: None,
                            });
                        }
                    }
                };
                Ok(Expr::new(kind, pos))
            }
            _ => self.unexpected(&["number", "i", "hb", "variable", "blade", "function call", "'('"]),
        }
    }

    fn call(&mut self, name: &str, pos: Pos) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let kind = match name {
            "comm" | "acomm" => {
                let k = self.kind_prefix()?;
                let mut a = self.args(2)?;
                let b = a.pop().expect("two args");
                let a = a.pop().expect("two args");
                let br = if name == "comm" { Bracket::Comm } else { Bracket::Acomm };
                ExprKind::Bracket(br, k, Box::new(a), Box::new(b))
            }
            "pb" => {
                let mut a = self.args(2)?;
                let b = a.pop().expect("two args");
                let a = a.pop().expect("two args");
                ExprKind::Poisson(Box::new(a), Box::new(b))
            }
            other => {
                let func = Func::from_name(other).ok_or_else(|| {
                    err(pos, format!("unknown function '{other}' (known: comm, acomm, pb, grade, exp, split, eigencheck)"))
                })?;
                let k = if func == Func::Grade { None } else { self.kind_prefix()? };
                let arity = match func {
                    Func::Grade => 2,
                    Func::Exp | Func::Split => 1,
                    Func::Eigencheck => 3,
                };
                ExprKind::Call(func, k, self.args(arity)?)
            }
        };
        Ok(Expr::new(kind, pos))
    }
}

/// Parses one expression starting at line 1.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    parse_at(src, 1)
}

/// Parses one expression whose first line is `line` in its file.
pub fn parse_at(src: &str, line: usize) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src, line)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected(&["operator", "end of input"]);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(src: &str) {
        let e = parse(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = e.to_string();
        let again = parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(e, again, "{src} -> {printed}");
        assert_eq!(printed, again.to_string());
    }

    #[test]
    fn shapes() {
        let e = parse("g0 *C g0").unwrap();
        assert!(matches!(e.kind, ExprKind::Mul(Product::Star(StarKind::Clifford), _, _)));
        let e = parse("comm(M4; q0, p0)").unwrap();
        assert!(matches!(e.kind, ExprKind::Bracket(Bracket::Comm, Some(StarKind::Moyal4), _, _)));
        let e = parse("q1^2 * p0 * g0g1").unwrap();
        match e.kind {
            ExprKind::Mul(Product::Plain, lhs, rhs) => {
                assert!(matches!(rhs.kind, ExprKind::Blade(b) if b == Blade::from_indices(&[0, 1]).unwrap()));
                assert!(matches!(lhs.kind, ExprKind::Mul(..)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        // ^ binds tighter than unary minus, which binds tighter than products
        assert_eq!(parse("-q0^2").unwrap(), parse("-(q0^2)").unwrap());
        assert_eq!(parse("-q0*p0").unwrap(), parse("(-q0)*p0").unwrap());
        assert!(parse("a").is_err());
        assert_eq!(parse("q0 + p0 *C g1").unwrap(), parse("q0 + (p0 *C g1)").unwrap());
        assert_eq!(parse("q0 *C p0 *M4 g1").unwrap(), parse("(q0 *C p0) *M4 g1").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("q0 + * p0").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 6 });
        let e = parse("g1g0").unwrap_err();
        assert!(e.to_string().contains("ascending"));
        let e = parse_at("(q0 + p0", 7).unwrap_err();
        assert_eq!(e.pos.line, 7);
        assert!(e.expected.contains(&"')'".to_string()));
        assert!(parse("q0^-1").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("foo(q0)").is_err());
        assert!(parse("comm(X; q0, p0)").is_err());
        assert!(parse("q0 $").is_err());
        assert!(parse("grade(q0)").is_err());
    }

    #[test]
    fn round_trips() {
        for src in [
            "1/2*i*hb^2 + 3/2",
            "(1/2*i*hb^2 + 3/2)*q1^2*p0*g0g1",
            "-2 + g0",
            "hb^-2 - q0",
            "-(q0 + p1)*g2",
            "q0 - (p0 - q1)",
            "comm(M4; q0, p0)",
            "acomm(C; g1, g2) + comm(q1, p1)",
            "pb(q0^2, p0)",
            "grade(1 + g0g1, 0)",
            "exp(MC; p0*g0)",
            "split(g0)",
            "eigencheck(C; g0, 1/2 + 1/2*g0, 1)",
            "(q0 *M4 p0)^3",
            "q0*(p0 *C g1)",
            "-(-q0)",
            "q0*-p0",
        ] {
            round_trip(src);
        }
    }
}
