//! Expression front-end: a small grammar over the atoms `r<i>` (the radical
//! `√p_i`), `x<i>`, `t<i>` (the central `x_i²`), `a` (the element `α`,
//! R-mode and series mode) and `s` (`α_n`, R-mode), with `+ - * ^` and
//! implicit multiplication between adjacent atoms.
//!
//! Evaluation is mode-dependent: `crossed-l` and `crossed-r` produce exact
//! normal-form elements, `series` produces finite twisted sums where
//! inversion is budgeted and reports an exactness frontier.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational};
use serde_json::json;

use crate::crossed::CrossedElement;
use crate::error::{Error, Result};
use crate::grp::GroupElement;
use crate::numfield::{FieldElement, PrimeBasis, Rational};
use crate::series::{alpha_prefix, SeriesElement, TruncationLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    CrossedL,
    CrossedR,
    Series,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::CrossedL => "crossed-l",
            Mode::CrossedR => "crossed-r",
            Mode::Series => "series",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "crossed-l" | "crossed" | "l" => Ok(Mode::CrossedL),
            "crossed-r" | "r" => Ok(Mode::CrossedR),
            "series" => Ok(Mode::Series),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

/// Per-invocation evaluation context.
#[derive(Debug, Clone)]
pub struct Session {
    pub mode: Mode,
    pub basis: Arc<PrimeBasis>,
    /// Iteration budget for series inversion.
    pub budget: u32,
    pub seed: u64,
}

impl Session {
    pub fn new(mode: Mode, basis: Arc<PrimeBasis>, budget: u32, seed: u64) -> Result<Self> {
        if basis.level() < 1 {
            return Err(Error::Config("level must be at least 1".into()));
        }
        if budget < 1 {
            return Err(Error::Config("budget must be at least 1".into()));
        }
        Ok(Self {
            mode,
            basis,
            budget,
            seed,
        })
    }

    pub fn level(&self) -> u32 {
        self.basis.level()
    }

    fn with_s(&self) -> bool {
        self.mode == Mode::CrossedR
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Number(Rational),
    Radical(u32),
    Generator(u32),
    CentralT(u32),
    Alpha,
    AlphaTail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Ident(char, Option<u32>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(text: &'a str) -> Result<Vec<(usize, Token)>> {
        let mut lx = Lexer {
            text: text.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.text.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.text[self.pos];
        let token = match c {
            b'+' => {
                self.pos += 1;
                Token::Plus
            }
            b'-' => {
                self.pos += 1;
                Token::Minus
            }
            b'*' => {
                self.pos += 1;
                Token::Star
            }
            b'^' => {
                self.pos += 1;
                Token::Caret
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'0'..=b'9' => {
                let num = self.read_integer();
                // a '/' directly followed by digits is a rational literal
                if self.pos + 1 < self.text.len()
                    && self.text[self.pos] == b'/'
                    && self.text[self.pos + 1].is_ascii_digit()
                {
                    self.pos += 1;
                    let den = self.read_integer();
                    Token::Number(BigRational::new(num, den))
                } else {
                    Token::Number(BigRational::from(num))
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                self.pos += 1;
                let index = if self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    let n = self.read_integer();
                    let n: u32 = n.to_string().parse().map_err(|_| Error::Parse {
                        offset: start,
                        message: "index too large".into(),
                    })?;
                    Some(n)
                } else {
                    None
                };
                Token::Ident(c as char, index)
            }
            other => {
                return Err(Error::Parse {
                    offset: start,
                    message: format!("unexpected character '{}'", other as char),
                })
            }
        };
        Ok(Some((start, token)))
    }

    fn read_integer(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .expect("digits parse as an integer")
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                // implicit multiplication before any atom or parenthesis
                Some(Token::Number(_)) | Some(Token::Ident(_, _)) | Some(Token::LParen) => {
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.primary()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let negative = if let Some(Token::Minus) = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            match self.bump() {
                Some(Token::Number(n)) if n.is_integer() => {
                    let mag: i64 = n.to_integer().to_string().parse().map_err(|_| {
                        self.error("exponent out of range")
                    })?;
                    let exp = if negative { -mag } else { mag };
                    return Ok(Expr::Pow(Box::new(base), exp));
                }
                _ => return Err(self.error("expected an integer exponent after '^'")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Token::Number(n)) => Ok(Expr::Atom(Atom::Number(n))),
            Some(Token::Ident(name, index)) => match (name, index) {
                ('r', Some(i)) => Ok(Expr::Atom(Atom::Radical(i))),
                ('x', Some(i)) => Ok(Expr::Atom(Atom::Generator(i))),
                ('t', Some(i)) => Ok(Expr::Atom(Atom::CentralT(i))),
                ('a', None) => Ok(Expr::Atom(Atom::Alpha)),
                ('s', None) => Ok(Expr::Atom(Atom::AlphaTail)),
                _ => {
                    self.pos -= 1;
                    Err(self.error(format!(
                        "unknown atom '{name}{}'",
                        index.map(|i| i.to_string()).unwrap_or_default()
                    )))
                }
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.error("expected ')'"))
                    }
                }
            }
            _ => {
                if self.pos > 0 {
                    self.pos -= 1;
                }
                Err(self.error("expected an atom or '('"))
            }
        }
    }
}

/// Parses an expression, reporting syntax errors with a character offset.
pub fn parse(text: &str) -> Result<Expr> {
    let tokens = Lexer::tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

/// A mode-dependent evaluation result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Crossed(CrossedElement),
    Series {
        body: SeriesElement,
        /// Terms lex-below this frontier are exact; `None` means fully exact.
        exact_below: Option<GroupElement>,
    },
}

impl Value {
    fn exact_series(body: SeriesElement) -> Self {
        Value::Series {
            body,
            exact_below: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Crossed(c) => c.is_zero(),
            Value::Series { body, .. } => body.is_zero(),
        }
    }

    fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Value::Crossed(a), Value::Crossed(b)) => Ok(Value::Crossed(a.add(b)?)),
            (
                Value::Series {
                    body: a,
                    exact_below: fa,
                },
                Value::Series {
                    body: b,
                    exact_below: fb,
                },
            ) => Ok(Value::Series {
                body: a.add(b)?,
                exact_below: min_frontier(fa.clone(), fb.clone()),
            }),
            _ => Err(Error::LevelMismatch),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Value::Crossed(a) => Value::Crossed(a.neg()),
            Value::Series { body, exact_below } => Value::Series {
                body: body.neg(),
                exact_below: exact_below.clone(),
            },
        }
    }

    fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Value::Crossed(a), Value::Crossed(b)) => Ok(Value::Crossed(a.mul(b)?)),
            (
                Value::Series {
                    body: a,
                    exact_below: fa,
                },
                Value::Series {
                    body: b,
                    exact_below: fb,
                },
            ) => {
                let mut frontier: Option<GroupElement> = None;
                // error terms: a·eb, ea·b, ea·eb — each bounded below by the
                // composed frontiers
                if let (Some(f), Some(min)) = (fb, a.lex_min()) {
                    frontier = min_frontier(frontier, Some(min.compose(f)));
                }
                if let (Some(f), Some(min)) = (fa, b.lex_min()) {
                    frontier = min_frontier(frontier, Some(f.compose(min)));
                }
                if let (Some(f1), Some(f2)) = (fa, fb) {
                    frontier = min_frontier(frontier, Some(f1.compose(f2)));
                }
                Ok(Value::Series {
                    body: a.mul(b)?,
                    exact_below: frontier,
                })
            }
            _ => Err(Error::LevelMismatch),
        }
    }

    fn inv(&self, session: &Session) -> Result<Self> {
        match self {
            Value::Crossed(a) => Ok(Value::Crossed(a.inv()?)),
            Value::Series { body, exact_below } => {
                if exact_below.is_some() {
                    return Err(Error::NotInvertible(
                        "cannot invert a truncated series value".into(),
                    ));
                }
                let t = body.inv_truncated(session.budget, &TruncationLimits::unbounded())?;
                Ok(Value::Series {
                    body: t.body,
                    exact_below: t.exact_below,
                })
            }
        }
    }

    fn pow(&self, exp: i64, session: &Session) -> Result<Self> {
        let base = if exp < 0 { self.inv(session)? } else { self.clone() };
        let one = match &base {
            Value::Crossed(c) => Value::Crossed(CrossedElement::one(c.basis(), c.with_s())),
            Value::Series { body, .. } => Value::exact_series(SeriesElement::one(body.basis())),
        };
        let mut acc = one;
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

fn min_frontier(a: Option<GroupElement>, b: Option<GroupElement>) -> Option<GroupElement> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x <= y { x } else { y }),
        (Some(x), None) => Some(x),
        (None, y) => y,
    }
}

fn check_index(session: &Session, i: u32) -> Result<()> {
    if i < 1 || i > session.level() {
        Err(Error::IndexOutOfRange {
            index: i,
            level: session.level(),
        })
    } else {
        Ok(())
    }
}

fn eval_atom(atom: &Atom, session: &Session) -> Result<Value> {
    let basis = &session.basis;
    match session.mode {
        Mode::CrossedL | Mode::CrossedR => {
            let with_s = session.with_s();
            match atom {
                Atom::Number(n) => Ok(Value::Crossed(CrossedElement::from_rational(
                    basis,
                    with_s,
                    n.clone(),
                ))),
                Atom::Radical(i) => {
                    check_index(session, *i)?;
                    Ok(Value::Crossed(CrossedElement::radical(basis, with_s, *i)?))
                }
                Atom::Generator(i) => {
                    check_index(session, *i)?;
                    Ok(Value::Crossed(CrossedElement::generator(basis, with_s, *i)?))
                }
                Atom::CentralT(i) => {
                    check_index(session, *i)?;
                    Ok(Value::Crossed(CrossedElement::central_t(basis, with_s, *i)?))
                }
                Atom::Alpha => {
                    if with_s {
                        Ok(Value::Crossed(CrossedElement::alpha(basis)?))
                    } else {
                        Err(Error::Config("the atom 'a' needs crossed-r or series mode".into()))
                    }
                }
                Atom::AlphaTail => {
                    if with_s {
                        Ok(Value::Crossed(CrossedElement::central_s(basis)))
                    } else {
                        Err(Error::Config("the atom 's' needs crossed-r mode".into()))
                    }
                }
            }
        }
        Mode::Series => match atom {
            Atom::Number(n) => Ok(Value::exact_series(SeriesElement::scalar(
                FieldElement::from_rational(basis, n.clone()),
            ))),
            Atom::Radical(i) => {
                check_index(session, *i)?;
                Ok(Value::exact_series(SeriesElement::scalar(
                    FieldElement::radical(basis, *i)?,
                )))
            }
            Atom::Generator(i) => {
                check_index(session, *i)?;
                Ok(Value::exact_series(SeriesElement::generator(basis, *i)))
            }
            Atom::CentralT(i) => {
                check_index(session, *i)?;
                let x = SeriesElement::generator(basis, *i);
                Ok(Value::exact_series(x.mul(&x)?))
            }
            Atom::Alpha => {
                let t = alpha_prefix(basis, session.level(), session.level())?;
                Ok(Value::Series {
                    body: t.body,
                    exact_below: t.exact_below,
                })
            }
            Atom::AlphaTail => Err(Error::Config("the atom 's' needs crossed-r mode".into())),
        },
    }
}

/// Evaluates a parsed expression in the given session.
pub fn eval(expr: &Expr, session: &Session) -> Result<Value> {
    match expr {
        Expr::Atom(atom) => eval_atom(atom, session),
        Expr::Neg(e) => Ok(eval(e, session)?.neg()),
        Expr::Add(a, b) => eval(a, session)?.add(&eval(b, session)?),
        Expr::Sub(a, b) => eval(a, session)?.sub(&eval(b, session)?),
        Expr::Mul(a, b) => eval(a, session)?.mul(&eval(b, session)?),
        Expr::Pow(e, exp) => eval(e, session)?.pow(*exp, session),
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, session: &Session) -> Result<Value> {
    eval(&parse(text)?, session)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Crossed(c) => write!(f, "{c}"),
            Value::Series { body, .. } => write!(f, "{body}"),
        }
    }
}

fn big_pair(r: &Rational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

/// Structured (JSON) form of a value: one top-level record with the session
/// parameters and a term array; big integers are decimal strings.
pub fn to_structured(value: &Value, session: &Session) -> serde_json::Value {
    let level = session.level();
    let base = |terms: serde_json::Value, frontier: Option<&GroupElement>| {
        let mut obj = json!({
            "mode": session.mode.as_str(),
            "level": level,
            "primes": session.basis.primes(),
            "terms": terms,
        });
        if let Some(f) = frontier {
            obj["exact_below"] = json!(f.iter().map(|(i, n)| json!([i, n])).collect::<Vec<_>>());
        }
        obj
    };
    match value {
        Value::Crossed(c) => {
            let poly = |p: &crate::crossed::LaurentPoly| {
                p.terms()
                    .map(|(exps, q)| {
                        let (num, den) = big_pair(q);
                        json!({"exponents": exps, "num": num, "den": den})
                    })
                    .collect::<Vec<_>>()
            };
            let terms = c
                .terms()
                .map(|(mono, frac)| {
                    let eps: Vec<u32> = (0..level).map(|i| (mono.eps >> i) & 1).collect();
                    let mu: Vec<u32> = (0..level).map(|i| (mono.mu >> i) & 1).collect();
                    json!({
                        "epsilon": eps,
                        "mu": mu,
                        "coefficient": {"num": poly(frac.num()), "den": poly(frac.den())},
                    })
                })
                .collect::<Vec<_>>();
            base(json!(terms), None)
        }
        Value::Series { body, exact_below } => {
            let terms = body
                .terms()
                .map(|(g, c)| {
                    let group: Vec<serde_json::Value> =
                        g.iter().map(|(i, n)| json!([i, n])).collect();
                    let coeff: Vec<serde_json::Value> = c
                        .terms()
                        .map(|(mask, q)| {
                            let eps: Vec<u32> = (0..level).map(|i| (mask >> i) & 1).collect();
                            let (num, den) = big_pair(q);
                            json!({"epsilon": eps, "num": num, "den": den})
                        })
                        .collect();
                    json!({"group": group, "coefficient": coeff})
                })
                .collect::<Vec<_>>();
            base(json!(terms), exact_below.as_ref())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;
    use num::Zero;

    fn session(mode: Mode, level: u32) -> Session {
        Session::new(mode, PrimeBasis::first_primes(level), 8, 0).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(matches!(parse("r1*x1 + 2").unwrap(), Expr::Add(_, _)));
        assert!(matches!(parse("(1 - x1)^-1").unwrap(), Expr::Pow(_, -1)));
        match parse("r9 + )").unwrap_err() {
            Error::Parse { .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
        // index checks happen at eval time with a clean diagnostic
        let s = session(Mode::CrossedL, 3);
        assert_eq!(
            eval_str("r9", &s).unwrap_err(),
            Error::IndexOutOfRange { index: 9, level: 3 }
        );
    }

    #[test]
    fn eval_commutator_and_relations() {
        let s = session(Mode::CrossedL, 2);
        // r1 x1 r1^-1 x1^-1 = -1
        let v = eval_str("r1 x1 r1^-1 x1^-1", &s).unwrap();
        let minus_one =
            Value::Crossed(CrossedElement::from_rational(&s.basis, false, rat(-1, 1)));
        assert_eq!(v, minus_one);
        // x1^2 = t1 in crossed mode
        assert_eq!(eval_str("x1^2", &s).unwrap(), eval_str("t1", &s).unwrap());
        // in series mode the same commutator also gives -1
        let ss = session(Mode::Series, 2);
        let v = eval_str("r1 x1 r1^-1 x1^-1", &ss).unwrap();
        match v {
            Value::Series { body, exact_below } => {
                assert!(exact_below.is_none());
                assert_eq!(
                    body,
                    SeriesElement::scalar(FieldElement::from_rational(&ss.basis, rat(-1, 1)))
                );
            }
            _ => panic!("expected a series value"),
        }
    }

    #[test]
    fn alpha_decomposition_in_r_mode() {
        let s = session(Mode::CrossedR, 2);
        let v = eval_str("a - (x1^-1 + x2^-1)", &s).unwrap();
        assert_eq!(v, eval_str("s", &s).unwrap());
        // 'a' and 's' are rejected outside their modes
        let l = session(Mode::CrossedL, 2);
        assert!(eval_str("a", &l).is_err());
        assert!(eval_str("s", &l).is_err());
    }

    #[test]
    fn series_inversion_budget_and_frontier() {
        let s = session(Mode::Series, 2);
        let v = eval_str("(1 - x1)^-1", &s).unwrap();
        match v {
            Value::Series { body, exact_below } => {
                assert_eq!(body.len(), 9); // budget 8 keeps 1 + x1 + ... + x1^8
                assert_eq!(
                    exact_below,
                    Some(GroupElement::from_exponents([(1, 9)]))
                );
            }
            _ => panic!("expected a series value"),
        }
        // truncated values refuse further inversion
        assert!(matches!(
            eval_str("((1 - x1)^-1)^-1", &s),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn print_parse_round_trip_random() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let s = session(Mode::CrossedL, 2);
        for _ in 0..100 {
            let e = crate::verify::random_crossed(&mut rng, &s.basis, false, 3, 2, 1);
            let printed = Value::Crossed(e.clone()).to_string();
            let back = eval_str(&printed, &s).unwrap();
            assert_eq!(back, Value::Crossed(e), "round trip failed for '{printed}'");
        }
        let ss = session(Mode::Series, 2);
        for _ in 0..100 {
            let e = crate::verify::random_series(&mut rng, &ss.basis, 4);
            let printed = Value::exact_series(e.clone()).to_string();
            let back = eval_str(&printed, &ss).unwrap();
            assert_eq!(back, Value::exact_series(e), "round trip failed for '{printed}'");
        }
    }

    #[test]
    fn structured_output_is_stable() {
        let s = session(Mode::CrossedL, 2);
        let v = eval_str("r1 x1 + 1/2 t1", &s).unwrap();
        let a = serde_json::to_string(&to_structured(&v, &s)).unwrap();
        let b = serde_json::to_string(&to_structured(&v, &s)).unwrap();
        assert_eq!(a, b);
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["mode"], "crossed-l");
        assert_eq!(parsed["level"], 2);
    }

    #[test]
    fn division_by_zero_is_a_math_error() {
        let s = session(Mode::CrossedL, 1);
        assert_eq!(eval_str("(r1 - r1)^-1", &s).unwrap_err(), Error::DivisionByZero);
        let z = eval_str("0", &s).unwrap();
        assert!(z.is_zero());
        assert!(rat(0, 5).is_zero());
    }
}
