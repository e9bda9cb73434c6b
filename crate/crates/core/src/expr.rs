//! Univariate expressions in `t`: a small recursive-descent parser, an
//! evaluator with explicit domain errors, and a renderer whose output parses
//! back to the same tree.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := NUMBER | "t" | IDENT "(" expr ("," expr)? ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-t^2`
//! is `-(t^2)` and `2^-1` is `0.5`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func1 {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func2 {
    Min,
    Max,
    Pow,
}

impl Func1 {
    fn name(self) -> &'static str {
        match self {
            Func1::Exp => "exp",
            Func1::Log => "log",
            Func1::Sin => "sin",
            Func1::Cos => "cos",
            Func1::Sqrt => "sqrt",
            Func1::Abs => "abs",
        }
    }
}

impl Func2 {
    fn name(self) -> &'static str {
        match self {
            Func2::Min => "min",
            Func2::Max => "max",
            Func2::Pow => "pow",
        }
    }
}

enum Callee {
    Unary(Func1),
    Binary(Func2),
}

fn lookup(name: &str) -> Option<Callee> {
    Some(match name {
        "exp" => Callee::Unary(Func1::Exp),
        "log" => Callee::Unary(Func1::Log),
        "sin" => Callee::Unary(Func1::Sin),
        "cos" => Callee::Unary(Func1::Cos),
        "sqrt" => Callee::Unary(Func1::Sqrt),
        "abs" => Callee::Unary(Func1::Abs),
        "min" => Callee::Binary(Func2::Min),
        "max" => Callee::Binary(Func2::Max),
        "pow" => Callee::Binary(Func2::Pow),
        _ => return None,
    })
}

/// Expression tree over the single variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call1(Func1, Box<Expr>),
    Call2(Func2, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("`{name}` at {pos} takes {expected} argument(s), got {found}")]
    Arity {
        pos: usize,
        name: String,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    DivisionByZero,
    LogOfNonPositive,
    SqrtOfNegative,
    FractionalPowerOfNegative,
    NonFinite,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainKind::DivisionByZero => "division by zero",
            DomainKind::LogOfNonPositive => "log of non-positive value",
            DomainKind::SqrtOfNegative => "sqrt of negative value",
            DomainKind::FractionalPowerOfNegative => "fractional power of negative base",
            DomainKind::NonFinite => "non-finite result",
        })
    }
}

/// Evaluation failure, naming the offending subexpression.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} in `{expr}` at t = {t}")]
pub struct EvalError {
    pub kind: DomainKind,
    pub expr: String,
    pub t: f64,
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0, len: text.len() };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some((pos, tok)) => Err(ParseError::Syntax {
                pos,
                message: format!("unexpected {tok}"),
            }),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        let err = |kind| EvalError {
            kind,
            expr: self.to_string(),
            t,
        };
        let v = match self {
            Expr::Num(x) => *x,
            Expr::Var => t,
            Expr::Neg(e) => -e.eval(t)?,
            Expr::Binary(op, l, r) => {
                let (x, y) = (l.eval(t)?, r.eval(t)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(err(DomainKind::DivisionByZero));
                        }
                        x / y
                    }
                    BinOp::Pow => power(x, y).map_err(err)?,
                }
            }
            Expr::Call1(f, e) => {
                let x = e.eval(t)?;
                match f {
                    Func1::Exp => x.exp(),
                    Func1::Log => {
                        if x <= 0.0 {
                            return Err(err(DomainKind::LogOfNonPositive));
                        }
                        x.ln()
                    }
                    Func1::Sin => x.sin(),
                    Func1::Cos => x.cos(),
                    Func1::Sqrt => {
                        if x < 0.0 {
                            return Err(err(DomainKind::SqrtOfNegative));
                        }
                        x.sqrt()
                    }
                    Func1::Abs => x.abs(),
                }
            }
            Expr::Call2(f, l, r) => {
                let (x, y) = (l.eval(t)?, r.eval(t)?);
                match f {
                    Func2::Min => x.min(y),
                    Func2::Max => x.max(y),
                    Func2::Pow => power(x, y).map_err(err)?,
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(err(DomainKind::NonFinite))
        }
    }
}

fn power(base: f64, exponent: f64) -> Result<f64, DomainKind> {
    if base < 0.0 && exponent.fract() != 0.0 {
        return Err(DomainKind::FractionalPowerOfNegative);
    }
    if base == 0.0 && exponent < 0.0 {
        return Err(DomainKind::DivisionByZero);
    }
    Ok(base.powf(exponent))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) if *x < 0.0 => write!(f, "(-{:?})", -x),
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::Var => f.write_str("t"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call1(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Call2(func, l, r) => write!(f, "{}({l}, {r})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(x) => write!(f, "number {x}"),
            Token::Ident(s) => write!(f, "identifier `{s}`"),
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Star => f.write_str("`*`"),
            Token::Slash => f.write_str("`/`"),
            Token::Caret => f.write_str("`^`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Comma => f.write_str("`,`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b',' => Token::Comma,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent part, only when followed by a digit (optionally signed)
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let value = lit.parse::<f64>().map_err(|_| ParseError::Syntax {
                    pos: start,
                    message: format!("malformed number `{lit}`"),
                })?;
                out.push((start, Token::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, &Token)> {
        self.tokens.get(self.pos).map(|(p, t)| (*p, t))
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        tok
    }

    fn eat(&mut self, want: &Token) -> bool {
        if matches!(self.peek(), Some((_, t)) if t == want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: Token) -> Result<(), ParseError> {
        match self.next() {
            Some((_, t)) if t == want => Ok(()),
            Some((pos, t)) => Err(ParseError::Syntax {
                pos,
                message: format!("expected {want}, found {t}"),
            }),
            None => Err(ParseError::Syntax {
                pos: self.len,
                message: format!("expected {want}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(&Token::Plus) {
                BinOp::Add
            } else if self.eat(&Token::Minus) {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(&Token::Star) {
                BinOp::Mul
            } else if self.eat(&Token::Slash) {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Token::Minus) {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(&Token::Caret) {
            let exponent = self.unary()?;
            Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            Some((_, Token::Num(x))) => Ok(Expr::Num(x)),
            Some((_, Token::LParen)) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some((pos, Token::Ident(name))) => {
                if name == "t" {
                    return Ok(Expr::Var);
                }
                let callee = lookup(&name).ok_or_else(|| ParseError::UnknownIdentifier {
                    pos,
                    name: name.clone(),
                })?;
                self.expect(Token::LParen)?;
                let mut args = vec![self.expr()?];
                while self.eat(&Token::Comma) {
                    args.push(self.expr()?);
                }
                self.expect(Token::RParen)?;
                let arity_err = |expected| ParseError::Arity {
                    pos,
                    name: name.clone(),
                    expected,
                    found: args.len(),
                };
                match callee {
                    Callee::Unary(f) => {
                        if args.len() != 1 {
                            return Err(arity_err(1));
                        }
                        Ok(Expr::Call1(f, Box::new(args.remove(0))))
                    }
                    Callee::Binary(f) => {
                        if args.len() != 2 {
                            return Err(arity_err(2));
                        }
                        let r = args.pop().unwrap();
                        let l = args.pop().unwrap();
                        Ok(Expr::Call2(f, Box::new(l), Box::new(r)))
                    }
                }
            }
            Some((pos, tok)) => Err(ParseError::Syntax {
                pos,
                message: format!("unexpected {tok}"),
            }),
            None => Err(ParseError::Syntax {
                pos: self.len,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eval(text: &str, t: f64) -> Result<f64, EvalError> {
        Expr::parse(text).unwrap().eval(t)
    }

    #[test]
    fn square() {
        let e = Expr::parse("t^2").unwrap();
        assert_eq!(
            e,
            Expr::Binary(BinOp::Pow, Box::new(Expr::Var), Box::new(Expr::Num(2.0)))
        );
        assert_eq!(e.eval(3.0).unwrap(), 9.0);
    }

    #[test]
    fn negated_log() {
        let e = Expr::parse("-log(t)").unwrap();
        assert!(matches!(e, Expr::Neg(_)));
        assert_eq!(e.eval(1.0).unwrap(), 0.0);
    }

    #[test]
    fn mixed_call() {
        assert_eq!(eval("2*t + max(t, 1)", 0.25).unwrap(), 1.5);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("-t^2", 3.0).unwrap(), -9.0);
        assert_eq!(eval("2^3^2", 0.0).unwrap(), 512.0);
        assert_eq!(eval("2^-1", 0.0).unwrap(), 0.5);
        assert_eq!(eval("1 - 2 - 3", 0.0).unwrap(), -4.0);
        assert_eq!(eval("8 / 4 / 2", 0.0).unwrap(), 1.0);
        assert_eq!(eval("1 + 2 * 3", 0.0).unwrap(), 7.0);
        assert_eq!(eval("(1 + 2) * 3", 0.0).unwrap(), 9.0);
        assert_eq!(eval("--t", 2.0).unwrap(), 2.0);
        assert_eq!(eval("1.5e1 + 2E-1", 0.0).unwrap(), 15.2);
    }

    #[test]
    fn builtins() {
        assert_eq!(eval("exp(0)", 0.0).unwrap(), 1.0);
        assert_eq!(eval("t^(1/2)", 9.0).unwrap(), 3.0);
        assert_eq!(eval("pow(t, 3)", 2.0).unwrap(), 8.0);
        assert_eq!(eval("min(t, 1) + abs(-2) + sqrt(4)", 5.0).unwrap(), 5.0);
        assert_eq!(eval("sin(0) + cos(0)", 0.0).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        let e = eval("1/t", 0.0).unwrap_err();
        assert_eq!(e.kind, DomainKind::DivisionByZero);
        assert_eq!(e.expr, "(1.0 / t)");
        assert_eq!(eval("log(t)", 0.0).unwrap_err().kind, DomainKind::LogOfNonPositive);
        assert_eq!(eval("log(t)", -1.0).unwrap_err().kind, DomainKind::LogOfNonPositive);
        assert_eq!(eval("sqrt(t)", -1.0).unwrap_err().kind, DomainKind::SqrtOfNegative);
        assert_eq!(
            eval("t^0.5", -4.0).unwrap_err().kind,
            DomainKind::FractionalPowerOfNegative
        );
        assert_eq!(eval("t^2", -4.0).unwrap(), 16.0);
        assert_eq!(eval("exp(t)", 1000.0).unwrap_err().kind, DomainKind::NonFinite);
        // the error names the innermost failing node, not the whole tree
        assert_eq!(eval("1 + log(t - 1)", 1.0).unwrap_err().expr, "log((t - 1.0))");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Expr::parse("2t"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(Expr::parse("x + 1"), Err(ParseError::UnknownIdentifier { pos: 0, .. })));
        assert!(matches!(
            Expr::parse("max(t)"),
            Err(ParseError::Arity { expected: 2, found: 1, .. })
        ));
        assert!(matches!(
            Expr::parse("sin(t, 2)"),
            Err(ParseError::Arity { expected: 1, found: 2, .. })
        ));
        assert!(matches!(Expr::parse("(t + 1"), Err(ParseError::Syntax { pos: 6, .. })));
        assert!(matches!(Expr::parse(""), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(Expr::parse("t $ 1"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(Expr::parse("1..2"), Err(ParseError::Syntax { pos: 0, .. })));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            Just(Expr::Var),
            (0.0f64..100.0).prop_map(Expr::Num),
            (0u32..20).prop_map(|k| Expr::Num(k as f64)),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            let op = prop_oneof![
                Just(BinOp::Add),
                Just(BinOp::Sub),
                Just(BinOp::Mul),
                Just(BinOp::Div),
                Just(BinOp::Pow),
            ];
            let f1 = prop_oneof![
                Just(Func1::Exp),
                Just(Func1::Log),
                Just(Func1::Sin),
                Just(Func1::Cos),
                Just(Func1::Sqrt),
                Just(Func1::Abs),
            ];
            let f2 = prop_oneof![Just(Func2::Min), Just(Func2::Max), Just(Func2::Pow)];
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (op, inner.clone(), inner.clone())
                    .prop_map(|(o, l, r)| Expr::Binary(o, Box::new(l), Box::new(r))),
                (f1, inner.clone()).prop_map(|(f, e)| Expr::Call1(f, Box::new(e))),
                (f2, inner.clone(), inner)
                    .prop_map(|(f, l, r)| Expr::Call2(f, Box::new(l), Box::new(r))),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(Expr::parse(&text).unwrap(), e);
        }

        #[test]
        fn literal_arithmetic_matches_direct(x in -1e3f64..1e3, y in 0.5f64..1e3, z in -50.0f64..50.0) {
            let text = format!("({x:?}) * ({y:?}) + ({z:?}) / ({y:?}) - ({x:?})");
            let got = Expr::parse(&text).unwrap().eval(0.0).unwrap();
            let want = x * y + z / y - x;
            let scale = (x * y).abs() + (z / y).abs() + x.abs();
            prop_assert!((got - want).abs() <= 4.0 * f64::EPSILON * scale);
        }
    }
}
