//! The small arithmetic language of weight-table cells.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' expo)?
//! atom  := q | u | INT | '(' expr ')' | '{' iexpr '}'
//! expo  := INT | SYM | '-' expo | '(' iexpr ')'
//! ```
//!
//! `iexpr` is integer arithmetic (`+ - *`, unary minus, parentheses) over the
//! color symbols `i j k I J K`. `{n}` is `x^n - x^-n` in the record's variable.

use std::fmt;

use num_bigint::BigInt;

use crate::laurent::{qnum, LaurentPoly, Var};

const SYMBOLS: &str = "ijkIJK";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IExpr {
    Int(i64),
    Sym(char),
    Neg(Box<IExpr>),
    Add(Box<IExpr>, Box<IExpr>),
    Sub(Box<IExpr>, Box<IExpr>),
    Mul(Box<IExpr>, Box<IExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(Var),
    Bracket(IExpr),
    Pow(Box<Expr>, IExpr),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

/// Values of the color symbols for one lookup.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Binding([Option<i64>; 6]);

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: char, v: i64) -> Self {
        self.set(sym, v);
        self
    }

    pub fn set(&mut self, sym: char, v: i64) {
        let at = SYMBOLS.find(sym).expect("known color symbol");
        self.0[at] = Some(v);
    }

    pub fn get(&self, sym: char) -> Option<i64> {
        SYMBOLS.find(sym).and_then(|at| self.0[at])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("symbol `{0}` is not bound here")]
    Unbound(char),
    #[error("variable `{found}` in a `{expected}` record")]
    WrongVariable { expected: Var, found: Var },
    #[error("negative power of a non-monomial")]
    NegativePower,
    #[error("inexact division")]
    InexactDivision,
    #[error("integer overflow in a color expression")]
    Overflow,
}

struct Parser<'a> {
    src: &'a [u8],
    at: usize,
    var: Var,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { col: self.at + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.at).is_some_and(|c| c.is_ascii_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.at).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.at;
        while self.src.get(self.at).is_some_and(u8::is_ascii_digit) {
            self.at += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.at]).unwrap();
        s.parse().or_else(|_| {
            self.at = start;
            self.err("expected an integer")
        })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Pow(Box::new(base), self.expo()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'{') => {
                self.at += 1;
                let e = self.iexpr()?;
                self.expect(b'}')?;
                Ok(Expr::Bracket(e))
            }
            Some(c @ (b'q' | b'u')) => {
                let found = if c == b'q' { Var::Q } else { Var::U };
                if found != self.var {
                    return Err(ExprError::WrongVariable { expected: self.var, found });
                }
                self.at += 1;
                Ok(Expr::Var(found))
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.int()?)),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of expression"),
        }
    }

    fn expo(&mut self) -> Result<IExpr, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.at += 1;
                Ok(IExpr::Neg(Box::new(self.expo()?)))
            }
            Some(b'(') => {
                self.at += 1;
                let e = self.iexpr()?;
                self.expect(b')')?;
                Ok(e)
            }
            _ => self.ifactor_plain(),
        }
    }

    fn iexpr(&mut self) -> Result<IExpr, ExprError> {
        let mut lhs = self.iterm()?;
        loop {
            if self.eat(b'+') {
                lhs = IExpr::Add(Box::new(lhs), Box::new(self.iterm()?));
            } else if self.eat(b'-') {
                lhs = IExpr::Sub(Box::new(lhs), Box::new(self.iterm()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn iterm(&mut self) -> Result<IExpr, ExprError> {
        let mut lhs = self.ifactor()?;
        while self.eat(b'*') {
            lhs = IExpr::Mul(Box::new(lhs), Box::new(self.ifactor()?));
        }
        Ok(lhs)
    }

    fn ifactor(&mut self) -> Result<IExpr, ExprError> {
        if self.eat(b'-') {
            return Ok(IExpr::Neg(Box::new(self.ifactor()?)));
        }
        if self.eat(b'(') {
            let e = self.iexpr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        self.ifactor_plain()
    }

    fn ifactor_plain(&mut self) -> Result<IExpr, ExprError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(IExpr::Int(self.int()?)),
            Some(c) if SYMBOLS.as_bytes().contains(&c) => {
                self.at += 1;
                Ok(IExpr::Sym(c as char))
            }
            Some(c) => self.err(format!("expected a color symbol or integer, found `{}`", c as char)),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses a cell expression whose formal variable must be `var`.
pub fn parse_expr(text: &str, var: Var) -> Result<Expr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), at: 0, var };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl IExpr {
    pub fn eval(&self, b: &Binding) -> Result<i64, ExprError> {
        let ov = |r: Option<i64>| r.ok_or(ExprError::Overflow);
        match self {
            IExpr::Int(n) => Ok(*n),
            IExpr::Sym(s) => b.get(*s).ok_or(ExprError::Unbound(*s)),
            IExpr::Neg(a) => ov(a.eval(b)?.checked_neg()),
            IExpr::Add(x, y) => ov(x.eval(b)?.checked_add(y.eval(b)?)),
            IExpr::Sub(x, y) => ov(x.eval(b)?.checked_sub(y.eval(b)?)),
            IExpr::Mul(x, y) => ov(x.eval(b)?.checked_mul(y.eval(b)?)),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            IExpr::Add(..) | IExpr::Sub(..) => 0,
            IExpr::Mul(..) => 1,
            _ => 2,
        }
    }
}

impl Expr {
    pub fn eval(&self, var: Var, b: &Binding) -> Result<LaurentPoly, ExprError> {
        Ok(match self {
            Expr::Int(n) => LaurentPoly::constant(var, *n),
            Expr::Var(_) => LaurentPoly::power(var, 1),
            Expr::Bracket(e) => qnum(e.eval(b)?, var),
            Expr::Pow(base, e) => {
                let n = e.eval(b)?;
                if let Expr::Var(_) = **base {
                    return Ok(LaurentPoly::power(var, n));
                }
                let p = base.eval(var, b)?;
                if n >= 0 {
                    p.pow(u32::try_from(n).map_err(|_| ExprError::Overflow)?)
                } else {
                    match p.as_monomial() {
                        Some((c, k)) if *c == BigInt::from(1) || *c == BigInt::from(-1) => {
                            let sign = if n % 2 != 0 { c.clone() } else { BigInt::from(1) };
                            LaurentPoly::monomial(var, sign, -k * n.abs())
                        }
                        _ => return Err(ExprError::NegativePower),
                    }
                }
            }
            Expr::Neg(a) => -a.eval(var, b)?,
            Expr::Add(x, y) => x.eval(var, b)? + y.eval(var, b)?,
            Expr::Sub(x, y) => x.eval(var, b)? - y.eval(var, b)?,
            Expr::Mul(x, y) => x.eval(var, b)? * y.eval(var, b)?,
            Expr::Div(x, y) => {
                x.eval(var, b)?.try_div_exact(&y.eval(var, b)?).map_err(|_| ExprError::InexactDivision)?
            }
        })
    }

    /// `self + x`, the shape used by the mutation controls.
    pub fn plus_variable(self, var: Var) -> Expr {
        Expr::Add(Box::new(self), Box::new(Expr::Var(var)))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(..) => 2,
            _ => 3,
        }
    }
}

fn wrap<T: fmt::Display>(f: &mut fmt::Formatter<'_>, e: &T, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for IExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IExpr::Int(n) => write!(f, "{n}"),
            IExpr::Sym(s) => write!(f, "{s}"),
            IExpr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, a.prec() < 2)
            }
            IExpr::Add(x, y) | IExpr::Sub(x, y) => {
                let op = if matches!(self, IExpr::Add(..)) { "+" } else { "-" };
                write!(f, "{x}{op}")?;
                wrap(f, y, y.prec() == 0)
            }
            IExpr::Mul(x, y) => {
                wrap(f, x, x.prec() == 0)?;
                write!(f, "*")?;
                wrap(f, y, y.prec() == 0)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{}", v.symbol()),
            Expr::Bracket(e) => write!(f, "{{{e}}}"),
            Expr::Pow(base, e) => {
                wrap(f, base, base.prec() < 3)?;
                write!(f, "^({e})")
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, a.prec() < 2)
            }
            Expr::Add(x, y) | Expr::Sub(x, y) => {
                let op = if matches!(self, Expr::Add(..)) { "+" } else { "-" };
                write!(f, "{x}{op}")?;
                wrap(f, y, y.prec() == 0)
            }
            Expr::Mul(x, y) | Expr::Div(x, y) => {
                let op = if matches!(self, Expr::Mul(..)) { "*" } else { "/" };
                wrap(f, x, x.prec() == 0)?;
                write!(f, "{op}")?;
                wrap(f, y, y.prec() <= 1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, b: Binding) -> LaurentPoly {
        parse_expr(s, Var::Q).unwrap().eval(Var::Q, &b).unwrap()
    }

    #[test]
    fn brackets_and_powers() {
        let b = Binding::new().with('i', 1).with('j', 2).with('J', 1).with('I', 1);
        assert_eq!(ev("{2*j}", b), qnum(4, Var::Q));
        assert_eq!(ev("-q^(2*j)", b), -LaurentPoly::power(Var::Q, 4));
        assert_eq!(ev("q^-2", b), LaurentPoly::power(Var::Q, -2));
        assert_eq!(ev("-{2*i}*q^(2*j)", b), -(qnum(2, Var::Q) * LaurentPoly::power(Var::Q, 4)));
        assert_eq!(ev("(q^(4*i)-1)/q^(i*J+j*I+i+j)", b).to_string(), "-q^-6 + q^-2");
        assert_eq!(ev("(q-q^-1)^2", b).to_string(), "q^-2 - 2 + q^2");
        assert_eq!(ev("(-q)^-3", b), -LaurentPoly::power(Var::Q, -3));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_expr("u^2", Var::Q), Err(ExprError::WrongVariable { expected: Var::Q, found: Var::U }));
        assert!(matches!(parse_expr("q^", Var::Q), Err(ExprError::Syntax { col: 3, .. })));
        assert!(matches!(parse_expr("{2*x}", Var::Q), Err(ExprError::Syntax { .. })));
        let e = parse_expr("{k}", Var::Q).unwrap();
        assert_eq!(e.eval(Var::Q, &Binding::new()), Err(ExprError::Unbound('k')));
        let e = parse_expr("1/(q+1)", Var::Q).unwrap();
        assert_eq!(e.eval(Var::Q, &Binding::new()), Err(ExprError::InexactDivision));
    }

    #[test]
    fn display_round_trips() {
        for s in ["q^(-i*J-j*I)*q^(i+j)", "(1-q^(4*j))/q^(-i*J-j*I+i+j)", "-{2*i}*q^(2*j)", "{i+j}*u^(-i)"] {
            let var = if s.contains('u') { Var::U } else { Var::Q };
            let e = parse_expr(s, var).unwrap();
            assert_eq!(parse_expr(&e.to_string(), var).unwrap(), e, "{s}");
        }
    }
}
