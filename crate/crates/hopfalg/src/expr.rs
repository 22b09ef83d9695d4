//! Expression front-end: lexer, parser, printer and typed evaluator.
//!
//! The grammar is LL with precedence climbing. Involution is the postfix
//! quote (`z1'` is the conjugate generator), `**` is the deformed product,
//! `***` the family product, `/\` the wedge, `(x)` the tensor pairing and
//! `d(...)` the differential. `w2(i,j)` names the 2-form basis. Scalar
//! literals are integers or fractions `p/q`; the units are `u`, `w`, `i`.

use crate::algebra::{AlgebraElement, HopfElement, Product};
use crate::error::{Error, Result};
use crate::kahler::{differential, differential1, form_action, form_action2, wedge, OneForm, Side, TwoForm};
use crate::scalar::{GaussianRational, Scalar};
use crate::tensor::TensorElement;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    Z1,
    Z2,
    Z1s,
    Z2s,
    T,
    Z,
    Zs,
    X,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Unit {
    U,
    W,
    I,
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Gen(Gen),
    Unit(Unit),
    Num { num: i64, den: i64 },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    StarMul(Box<Expr>, Box<Expr>),
    FamilyMul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Invol(Box<Expr>),
    Diff(Box<Expr>),
    TwoFormBasis(u8, u8),
}

/// Expression node with its source position (line, column), used in
/// evaluator diagnostics. Equality ignores positions.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: (usize, usize),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Gen(a), Gen(b)) => a == b,
            (Unit(a), Unit(b)) => a == b,
            (Num { num: n1, den: d1 }, Num { num: n2, den: d2 }) => n1 == n2 && d1 == d2,
            (Neg(a), Neg(b)) | (Invol(a), Invol(b)) | (Diff(a), Diff(b)) => a == b,
            (Add(a1, b1), Add(a2, b2))
            | (Sub(a1, b1), Sub(a2, b2))
            | (Mul(a1, b1), Mul(a2, b2))
            | (StarMul(a1, b1), StarMul(a2, b2))
            | (FamilyMul(a1, b1), FamilyMul(a2, b2))
            | (Wedge(a1, b1), Wedge(a2, b2))
            | (Tensor(a1, b1), Tensor(a2, b2)) => a1 == a2 && b1 == b2,
            (Pow(a, k1), Pow(b, k2)) => a == b && k1 == k2,
            (TwoFormBasis(i1, j1), TwoFormBasis(i2, j2)) => i1 == i2 && j1 == j2,
            _ => false,
        }
    }
}

impl Eq for Expr {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    StarStar,
    StarStarStar,
    WedgeOp,
    TensorOp,
    Slash,
    Caret,
    Quote,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::StarStar => write!(f, "**"),
            Tok::StarStarStar => write!(f, "***"),
            Tok::WedgeOp => write!(f, "/\\"),
            Tok::TensorOp => write!(f, "(x)"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::Quote => write!(f, "'"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Comma => write!(f, ","),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

fn parse_err(line: usize, col: usize, message: impl Into<String>, expected: &str) -> Error {
    Error::Parse { line, col, message: message.into(), expected: expected.to_string() }
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        if let Some(c) = c {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        c
    }

    fn tokens(mut self) -> Result<Vec<(Tok, (usize, usize))>> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let pos = (self.line, self.col);
            let Some(&c) = self.chars.peek() else { break };
            match c {
                '+' => {
                    self.bump();
                    out.push((Tok::Plus, pos));
                }
                '-' => {
                    self.bump();
                    out.push((Tok::Minus, pos));
                }
                '*' => {
                    self.bump();
                    let mut count = 1;
                    while matches!(self.chars.peek(), Some('*')) && count < 3 {
                        self.bump();
                        count += 1;
                    }
                    out.push((
                        match count {
                            1 => Tok::Star,
                            2 => Tok::StarStar,
                            _ => Tok::StarStarStar,
                        },
                        pos,
                    ));
                }
                '/' => {
                    self.bump();
                    if matches!(self.chars.peek(), Some('\\')) {
                        self.bump();
                        out.push((Tok::WedgeOp, pos));
                    } else {
                        out.push((Tok::Slash, pos));
                    }
                }
                '^' => {
                    self.bump();
                    out.push((Tok::Caret, pos));
                }
                '\'' => {
                    self.bump();
                    out.push((Tok::Quote, pos));
                }
                '(' => {
                    // The exact three-character sequence `(x)` is the tensor
                    // pairing; `( x )` with spaces is a parenthesized x.
                    let mut clone = self.chars.clone();
                    clone.next();
                    if clone.next() == Some('x') && clone.next() == Some(')') {
                        self.bump();
                        self.bump();
                        self.bump();
                        out.push((Tok::TensorOp, pos));
                    } else {
                        self.bump();
                        out.push((Tok::LParen, pos));
                    }
                }
                ')' => {
                    self.bump();
                    out.push((Tok::RParen, pos));
                }
                ',' => {
                    self.bump();
                    out.push((Tok::Comma, pos));
                }
                c if c.is_ascii_digit() => {
                    let mut value: i64 = 0;
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_digit()) {
                        let d = self.bump().unwrap();
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add((d as u8 - b'0') as i64))
                            .ok_or_else(|| {
                                parse_err(pos.0, pos.1, "integer literal overflows", "smaller integer")
                            })?;
                    }
                    out.push((Tok::Int(value), pos));
                }
                c if c.is_ascii_alphabetic() => {
                    let mut name = String::new();
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_alphanumeric()) {
                        name.push(self.bump().unwrap());
                    }
                    out.push((Tok::Ident(name), pos));
                }
                other => {
                    return Err(parse_err(
                        pos.0,
                        pos.1,
                        format!("unexpected character `{other}`"),
                        "an operator, identifier or literal",
                    ));
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(Tok, (usize, usize))>,
    at: usize,
}

const BP_ADD: u8 = 10;
const BP_TENSOR: u8 = 20;
const BP_WEDGE: u8 = 30;
const BP_MUL: u8 = 40;
const BP_NEG: u8 = 15;
const BP_POSTFIX: u8 = 60;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> (usize, usize) {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map(|&(_, p)| p)
            .unwrap_or((1, 1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            Some(t) => Err(parse_err(pos.0, pos.1, format!("found `{t}`"), &format!("`{tok}`"))),
            None => Err(parse_err(pos.0, pos.1, "unexpected end of input", &format!("`{tok}`"))),
        }
    }

    fn parse_integer(&mut self) -> Result<i64> {
        let pos = self.pos();
        let negative = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(n)) => Ok(if negative { -n } else { n }),
            Some(t) => Err(parse_err(pos.0, pos.1, format!("found `{t}`"), "an integer")),
            None => Err(parse_err(pos.0, pos.1, "unexpected end of input", "an integer")),
        }
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(num)) => {
                let mut den = 1;
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) if d != 0 => den = d,
                        Some(Tok::Int(_)) => {
                            return Err(parse_err(dpos.0, dpos.1, "zero denominator", "a nonzero integer"));
                        }
                        other => {
                            return Err(parse_err(
                                dpos.0,
                                dpos.1,
                                format!("found `{}`", other.map(|t| t.to_string()).unwrap_or_else(|| "end of input".into())),
                                "an integer denominator",
                            ));
                        }
                    }
                }
                Ok(Expr { kind: ExprKind::Num { num, den }, pos })
            }
            Some(Tok::Minus) => {
                let inner = self.parse_expr(BP_NEG)?;
                Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), pos })
            }
            Some(Tok::LParen) => {
                let inner = self.parse_expr(0)?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            // `(x)` in operand position is a parenthesized generator x.
            Some(Tok::TensorOp) => Ok(Expr { kind: ExprKind::Gen(Gen::X), pos }),
            Some(Tok::Ident(name)) => match name.as_str() {
                "z1" => Ok(Expr { kind: ExprKind::Gen(Gen::Z1), pos }),
                "z2" => Ok(Expr { kind: ExprKind::Gen(Gen::Z2), pos }),
                "z1s" => Ok(Expr { kind: ExprKind::Gen(Gen::Z1s), pos }),
                "z2s" => Ok(Expr { kind: ExprKind::Gen(Gen::Z2s), pos }),
                "t" => Ok(Expr { kind: ExprKind::Gen(Gen::T), pos }),
                "z" => Ok(Expr { kind: ExprKind::Gen(Gen::Z), pos }),
                "zs" => Ok(Expr { kind: ExprKind::Gen(Gen::Zs), pos }),
                "x" => Ok(Expr { kind: ExprKind::Gen(Gen::X), pos }),
                "u" => Ok(Expr { kind: ExprKind::Unit(Unit::U), pos }),
                "w" => Ok(Expr { kind: ExprKind::Unit(Unit::W), pos }),
                "i" => Ok(Expr { kind: ExprKind::Unit(Unit::I), pos }),
                "d" => {
                    // `d(x)` lexes as `d` followed by the tensor token.
                    if matches!(self.peek(), Some(Tok::TensorOp)) {
                        let xpos = self.pos();
                        self.bump();
                        let inner = Expr { kind: ExprKind::Gen(Gen::X), pos: xpos };
                        return Ok(Expr { kind: ExprKind::Diff(Box::new(inner)), pos });
                    }
                    self.expect(Tok::LParen)?;
                    let inner = self.parse_expr(0)?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr { kind: ExprKind::Diff(Box::new(inner)), pos })
                }
                "w2" => {
                    self.expect(Tok::LParen)?;
                    let i = self.parse_integer()?;
                    self.expect(Tok::Comma)?;
                    let j = self.parse_integer()?;
                    self.expect(Tok::RParen)?;
                    if !(1..=4).contains(&i) || !(1..=4).contains(&j) || i == j {
                        return Err(parse_err(
                            pos.0,
                            pos.1,
                            "2-form basis indices must be distinct and in 1..=4",
                            "w2(i,j) with 1 <= i < j <= 4",
                        ));
                    }
                    Ok(Expr { kind: ExprKind::TwoFormBasis(i as u8, j as u8), pos })
                }
                other => Err(parse_err(
                    pos.0,
                    pos.1,
                    format!("unknown identifier `{other}`"),
                    "one of z1, z2, z1s, z2s, t, z, zs, x, u, w, i, d(...), w2(i,j)",
                )),
            },
            Some(t) => Err(parse_err(pos.0, pos.1, format!("found `{t}`"), "an expression")),
            None => Err(parse_err(pos.0, pos.1, "unexpected end of input", "an expression")),
        }
    }

    fn parse_expr(&mut self, min_bp: u8) -> Result<Expr> {
        let mut lhs = self.parse_atom()?;
        loop {
            // Postfix operators bind tightest.
            match self.peek() {
                Some(Tok::Quote) => {
                    if BP_POSTFIX < min_bp {
                        break;
                    }
                    let pos = lhs.pos;
                    self.bump();
                    lhs = Expr { kind: ExprKind::Invol(Box::new(lhs)), pos };
                    continue;
                }
                Some(Tok::Caret) => {
                    if BP_POSTFIX < min_bp {
                        break;
                    }
                    let pos = lhs.pos;
                    self.bump();
                    let k = self.parse_integer()?;
                    lhs = Expr { kind: ExprKind::Pow(Box::new(lhs), k), pos };
                    continue;
                }
                _ => {}
            }
            let (bp, tok) = match self.peek() {
                Some(Tok::Plus) => (BP_ADD, Tok::Plus),
                Some(Tok::Minus) => (BP_ADD, Tok::Minus),
                Some(Tok::TensorOp) => (BP_TENSOR, Tok::TensorOp),
                Some(Tok::WedgeOp) => (BP_WEDGE, Tok::WedgeOp),
                Some(Tok::Star) => (BP_MUL, Tok::Star),
                Some(Tok::StarStar) => (BP_MUL, Tok::StarStar),
                Some(Tok::StarStarStar) => (BP_MUL, Tok::StarStarStar),
                _ => break,
            };
            if bp <= min_bp {
                break;
            }
            let pos = lhs.pos;
            self.bump();
            let rhs = self.parse_expr(bp)?;
            let kind = match tok {
                Tok::Plus => ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                Tok::Minus => ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
                Tok::TensorOp => ExprKind::Tensor(Box::new(lhs), Box::new(rhs)),
                Tok::WedgeOp => ExprKind::Wedge(Box::new(lhs), Box::new(rhs)),
                Tok::Star => ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                Tok::StarStar => ExprKind::StarMul(Box::new(lhs), Box::new(rhs)),
                Tok::StarStarStar => ExprKind::FamilyMul(Box::new(lhs), Box::new(rhs)),
                _ => unreachable!(),
            };
            lhs = Expr { kind, pos };
        }
        Ok(lhs)
    }
}

/// Parse an expression string.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, at: 0 };
    let e = p.parse_expr(0)?;
    if p.at != p.toks.len() {
        let pos = p.pos();
        let t = p.peek().cloned();
        return Err(parse_err(
            pos.0,
            pos.1,
            format!("trailing input `{}`", t.map(|t| t.to_string()).unwrap_or_default()),
            "end of input or an operator",
        ));
    }
    Ok(e)
}

impl Expr {
    fn prec(&self) -> u8 {
        match &self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => BP_ADD,
            ExprKind::Neg(..) => BP_NEG,
            ExprKind::Tensor(..) => BP_TENSOR,
            ExprKind::Wedge(..) => BP_WEDGE,
            ExprKind::Mul(..) | ExprKind::StarMul(..) | ExprKind::FamilyMul(..) => BP_MUL,
            ExprKind::Pow(..) | ExprKind::Invol(..) => BP_POSTFIX,
            _ => u8::MAX,
        }
    }
}

fn print_child(child: &Expr, parent_prec: u8, right_side: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let needs = child.prec() < parent_prec || (right_side && child.prec() == parent_prec);
    if needs {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Gen(g) => {
                let s = match g {
                    Gen::Z1 => "z1",
                    Gen::Z2 => "z2",
                    Gen::Z1s => "z1s",
                    Gen::Z2s => "z2s",
                    Gen::T => "t",
                    Gen::Z => "z",
                    Gen::Zs => "zs",
                    Gen::X => "x",
                };
                write!(f, "{s}")
            }
            ExprKind::Unit(u) => write!(
                f,
                "{}",
                match u {
                    Unit::U => "u",
                    Unit::W => "w",
                    Unit::I => "i",
                }
            ),
            ExprKind::Num { num, den } => {
                if *den == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
            ExprKind::Neg(e) => {
                write!(f, "-")?;
                print_child(e, BP_NEG, true, f)
            }
            ExprKind::Add(a, b) => {
                print_child(a, BP_ADD, false, f)?;
                write!(f, " + ")?;
                print_child(b, BP_ADD, true, f)
            }
            ExprKind::Sub(a, b) => {
                print_child(a, BP_ADD, false, f)?;
                write!(f, " - ")?;
                print_child(b, BP_ADD, true, f)
            }
            ExprKind::Mul(a, b) => {
                print_child(a, BP_MUL, false, f)?;
                write!(f, "*")?;
                print_child(b, BP_MUL, true, f)
            }
            ExprKind::StarMul(a, b) => {
                print_child(a, BP_MUL, false, f)?;
                write!(f, " ** ")?;
                print_child(b, BP_MUL, true, f)
            }
            ExprKind::FamilyMul(a, b) => {
                print_child(a, BP_MUL, false, f)?;
                write!(f, " *** ")?;
                print_child(b, BP_MUL, true, f)
            }
            ExprKind::Wedge(a, b) => {
                print_child(a, BP_WEDGE, false, f)?;
                write!(f, " /\\ ")?;
                print_child(b, BP_WEDGE, true, f)
            }
            ExprKind::Tensor(a, b) => {
                print_child(a, BP_TENSOR, false, f)?;
                write!(f, " (x) ")?;
                print_child(b, BP_TENSOR, true, f)
            }
            ExprKind::Pow(e, k) => {
                print_child(e, BP_POSTFIX, false, f)?;
                if *k < 0 {
                    write!(f, "^-{}", -k)
                } else {
                    write!(f, "^{k}")
                }
            }
            ExprKind::Invol(e) => {
                print_child(e, BP_POSTFIX, false, f)?;
                write!(f, "'")
            }
            ExprKind::Diff(e) => write!(f, "d({e})"),
            ExprKind::TwoFormBasis(i, j) => write!(f, "w2({i},{j})"),
        }
    }
}

/// A typed evaluation result.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Elem(AlgebraElement),
    One(OneForm),
    Two(TwoForm),
    Tensor(TensorElement),
    Hopf(HopfElement),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Elem(_) => "algebra element",
            Value::One(_) => "1-form",
            Value::Two(_) => "2-form",
            Value::Tensor(_) => "tensor",
            Value::Hopf(_) => "Hopf element",
        }
    }

    /// The scalar content when the value is a multiple of the unit.
    fn as_scalar(&self) -> Option<Scalar> {
        if let Value::Elem(a) = self {
            if a.is_zero() {
                return Some(Scalar::zero());
            }
            let mut it = a.terms();
            let (m, c) = it.next().unwrap();
            if it.next().is_none() && m.degree() == 0 {
                return Some(c.clone());
            }
        }
        None
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(a) => write!(f, "{a}"),
            Value::One(o) => write!(f, "{o}"),
            Value::Two(t) => write!(f, "{t}"),
            Value::Tensor(t) => write!(f, "{t}"),
            Value::Hopf(h) => write!(f, "{h}"),
        }
    }
}

fn eval_err(e: &Expr, message: impl Into<String>) -> Error {
    Error::Eval {
        location: format!("line {}, column {}", e.pos.0, e.pos.1),
        message: message.into(),
    }
}

fn binary_product(node: &Expr, a: Value, b: Value, prod: Product) -> Result<Value> {
    // Scalar multiples of the unit scale anything.
    if let Some(s) = a.as_scalar() {
        return Ok(match b {
            Value::Elem(x) => Value::Elem(x.scale(&s)),
            Value::One(x) => Value::One(x.scale(&s)),
            Value::Two(x) => Value::Two(x.scale(&s)),
            Value::Tensor(x) => Value::Tensor(x.scale(&s)),
            Value::Hopf(x) => {
                let mut out = HopfElement::zero();
                for (&n, c) in &x.terms {
                    out.add_term(n, c * &s);
                }
                Value::Hopf(out)
            }
        });
    }
    if let Some(s) = b.as_scalar() {
        return binary_product(node, Value::Elem(AlgebraElement::from_scalar(s)), a, prod);
    }
    match (a, b) {
        (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(x.product(&y, prod))),
        (Value::Elem(x), Value::One(o)) => Ok(Value::One(form_action(&x, &o, Side::Left, prod))),
        (Value::One(o), Value::Elem(x)) => Ok(Value::One(form_action(&x, &o, Side::Right, prod))),
        (Value::Elem(x), Value::Two(o)) => Ok(Value::Two(form_action2(&x, &o, Side::Left, prod))),
        (Value::Two(o), Value::Elem(x)) => Ok(Value::Two(form_action2(&x, &o, Side::Right, prod))),
        (Value::Tensor(x), Value::Tensor(y)) => Ok(Value::Tensor(x.mul_factorwise(&y, prod))),
        (Value::Hopf(x), Value::Hopf(y)) => Ok(Value::Hopf(x.mul(&y))),
        (a, b) => Err(eval_err(
            node,
            format!("cannot multiply {} with {}", a.kind_name(), b.kind_name()),
        )),
    }
}

/// Evaluate a parsed expression to a typed value.
pub fn eval(e: &Expr) -> Result<Value> {
    match &e.kind {
        ExprKind::Gen(g) => Ok(match g {
            Gen::Z1 => Value::Elem(AlgebraElement::z1()),
            Gen::Z2 => Value::Elem(AlgebraElement::z2()),
            Gen::Z1s => Value::Elem(AlgebraElement::z1s()),
            Gen::Z2s => Value::Elem(AlgebraElement::z2s()),
            Gen::T => Value::Hopf(HopfElement::t_pow(1)),
            Gen::Z => Value::Elem(AlgebraElement::gen_z()),
            Gen::Zs => Value::Elem(AlgebraElement::gen_zs()),
            Gen::X => Value::Elem(AlgebraElement::gen_x()),
        }),
        ExprKind::Unit(u) => Ok(Value::Elem(AlgebraElement::from_scalar(match u {
            Unit::U => Scalar::u_pow(1),
            Unit::W => Scalar::w_pow(1),
            Unit::I => Scalar::from_gaussian(GaussianRational::i()),
        }))),
        ExprKind::Num { num, den } => {
            Ok(Value::Elem(AlgebraElement::from_scalar(Scalar::from_ratio(*num, *den))))
        }
        ExprKind::Neg(inner) => Ok(match eval(inner)? {
            Value::Elem(x) => Value::Elem(x.neg()),
            Value::One(x) => Value::One(x.neg()),
            Value::Two(x) => Value::Two(x.neg()),
            Value::Tensor(x) => Value::Tensor(x.neg()),
            Value::Hopf(x) => Value::Hopf(x.neg()),
        }),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let mut rhs = eval(b)?;
            if matches!(e.kind, ExprKind::Sub(..)) {
                rhs = match rhs {
                    Value::Elem(x) => Value::Elem(x.neg()),
                    Value::One(x) => Value::One(x.neg()),
                    Value::Two(x) => Value::Two(x.neg()),
                    Value::Tensor(x) => Value::Tensor(x.neg()),
                    Value::Hopf(x) => Value::Hopf(x.neg()),
                };
            }
            let lhs = eval(a)?;
            // Scalar elements promote into Hopf sums (e.g. t - 1).
            match (lhs, rhs) {
                (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(x.add(&y))),
                (Value::One(x), Value::One(y)) => Ok(Value::One(x.add(&y))),
                (Value::Two(x), Value::Two(y)) => Ok(Value::Two(x.add(&y))),
                (Value::Tensor(x), Value::Tensor(y)) => Ok(Value::Tensor(x.add(&y))),
                (Value::Hopf(x), Value::Hopf(y)) => Ok(Value::Hopf(x.add(&y))),
                (Value::Hopf(x), ref v @ Value::Elem(_)) | (ref v @ Value::Elem(_), Value::Hopf(x)) => {
                    if let Some(s) = v.as_scalar() {
                        let mut out = x.clone();
                        out.add_term(0, s);
                        Ok(Value::Hopf(out))
                    } else {
                        Err(eval_err(e, "cannot add an algebra element to a Hopf element"))
                    }
                }
                (a, b) => Err(eval_err(
                    e,
                    format!("cannot add {} and {}", a.kind_name(), b.kind_name()),
                )),
            }
        }
        ExprKind::Mul(a, b) => binary_product(e, eval(a)?, eval(b)?, Product::Mul),
        ExprKind::StarMul(a, b) => binary_product(e, eval(a)?, eval(b)?, Product::Star),
        ExprKind::FamilyMul(a, b) => binary_product(e, eval(a)?, eval(b)?, Product::StarW),
        ExprKind::Wedge(a, b) => match (eval(a)?, eval(b)?) {
            (Value::One(x), Value::One(y)) => Ok(Value::Two(wedge(&x, &y, Product::Mul))),
            (a, b) => Err(eval_err(
                e,
                format!(
                    "wedge needs two 1-forms, got {} and {} (use `*` for module actions)",
                    a.kind_name(),
                    b.kind_name()
                ),
            )),
        },
        ExprKind::Tensor(a, b) => match (eval(a)?, eval(b)?) {
            (Value::Elem(x), Value::Elem(y)) => Ok(Value::Tensor(TensorElement::simple(&x, &y))),
            (a, b) => Err(eval_err(
                e,
                format!("tensor needs two algebra elements, got {} and {}", a.kind_name(), b.kind_name()),
            )),
        },
        ExprKind::Pow(inner, k) => {
            let v = eval(inner)?;
            match v {
                Value::Hopf(h) => {
                    if h.terms.len() == 1 {
                        let (&n, c) = h.terms.iter().next().unwrap();
                        let mut out = HopfElement::zero();
                        let mut coeff = Scalar::one();
                        let reps = k.unsigned_abs();
                        for _ in 0..reps {
                            coeff = &coeff * c;
                        }
                        if *k < 0 {
                            coeff = coeff.inverse().ok_or_else(|| {
                                eval_err(e, "cannot invert a non-unit coefficient")
                            })?;
                        }
                        out.add_term(n * k, coeff);
                        Ok(Value::Hopf(out))
                    } else {
                        if *k < 0 {
                            return Err(eval_err(e, "negative power of a Hopf sum"));
                        }
                        let mut out = HopfElement::one();
                        for _ in 0..*k {
                            out = out.mul(&h);
                        }
                        Ok(Value::Hopf(out))
                    }
                }
                Value::Elem(x) => {
                    if *k >= 0 {
                        let mut out = AlgebraElement::one();
                        for _ in 0..*k {
                            out = out.mul(&x);
                        }
                        Ok(Value::Elem(out))
                    } else if let Some(s) = Value::Elem(x.clone()).as_scalar() {
                        let inv = s.inverse().ok_or_else(|| {
                            eval_err(e, "negative power needs a single-term scalar")
                        })?;
                        let mut out = Scalar::one();
                        for _ in 0..k.unsigned_abs() {
                            out = &out * &inv;
                        }
                        Ok(Value::Elem(AlgebraElement::from_scalar(out)))
                    } else {
                        Err(eval_err(e, "negative power of a non-scalar algebra element"))
                    }
                }
                v => Err(eval_err(e, format!("cannot raise a {} to a power", v.kind_name()))),
            }
        }
        ExprKind::Invol(inner) => match eval(inner)? {
            Value::Elem(x) => Ok(Value::Elem(x.involution())),
            Value::Hopf(h) => Ok(Value::Hopf(h.involution())),
            Value::Tensor(t) => {
                let mut out = TensorElement::zero();
                for (&(l, r), c) in t.terms() {
                    out.add_term((l.star_swap(), r.star_swap()), c.involute());
                }
                // Legs may need re-reduction after the swap.
                let mut reduced = TensorElement::zero();
                for (&(l, r), c) in out.terms() {
                    let piece = TensorElement::simple(
                        &AlgebraElement::from_monomial(l),
                        &AlgebraElement::from_monomial(r),
                    )
                    .scale(c);
                    reduced = reduced.add(&piece);
                }
                Ok(Value::Tensor(reduced))
            }
            Value::One(o) => {
                // (a dz_i)* = a* dz_i-conjugate.
                let c = o.coeffs();
                Ok(Value::One(OneForm::new([
                    c[2].involution(),
                    c[3].involution(),
                    c[0].involution(),
                    c[1].involution(),
                ])))
            }
            v => Err(eval_err(e, format!("involution not defined on a {}", v.kind_name()))),
        },
        ExprKind::Diff(inner) => match eval(inner)? {
            Value::Elem(x) => Ok(Value::One(differential(&x))),
            Value::One(o) => Ok(Value::Two(differential1(&o))),
            v => Err(eval_err(e, format!("d(...) is not defined on a {}", v.kind_name()))),
        },
        ExprKind::TwoFormBasis(i, j) => {
            Ok(Value::Two(TwoForm::basis((*i - 1) as usize, (*j - 1) as usize)))
        }
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(text: &str) -> Result<Value> {
    eval(&parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        for text in [
            "z1*z2' + 1/2*u^2*x",
            "z1 ** z2",
            "d(z1) /\\ d(z2')",
            "z1 (x) z2 - z1*z2 (x) 1",
            "-3/2*i*u^-1*w^2*z1^2*z2s",
            "(z1 + z2)'*d(x)",
            "w2(1,3) + x*w2(2,4)",
            "z1 *** z2",
        ] {
            let ast = parse(text).unwrap();
            let printed = format!("{ast}");
            let reparsed = parse(&printed).unwrap();
            assert_eq!(ast, reparsed, "round trip failed for `{text}` -> `{printed}`");
        }
    }

    #[test]
    fn tensor_vs_parenthesized_x() {
        // Prefix position: parenthesized generator.
        let a = parse("(x)*z1").unwrap();
        let b = parse("x*z1").unwrap();
        assert_eq!(a, b);
        // Infix position: tensor pairing.
        let t = eval_str("z1 (x) z2").unwrap();
        assert!(matches!(t, Value::Tensor(_)));
    }

    #[test]
    fn sphere_relation_evaluates_to_one() {
        let v = eval_str("z1'*z1 + z2'*z2").unwrap();
        match v {
            Value::Elem(a) => assert!(a.is_one()),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn connes_landi_relation_evaluates_to_zero() {
        let v = eval_str("z1 ** z2 - u^2 * (z2 ** z1)").unwrap();
        match v {
            Value::Elem(a) => assert!(a.is_zero(), "{a}"),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn relation_differential_is_zero_form() {
        let v = eval_str("d(z1'*z1 + z2'*z2)").unwrap();
        match v {
            Value::One(o) => assert!(o.is_zero()),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn error_positions() {
        let err = parse("z1 + $").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 6);
            }
            other => panic!("unexpected error {other}"),
        }
        let err = eval_str("d(z1) /\\ z2").unwrap_err();
        assert!(matches!(err, Error::Eval { .. }));
    }

    #[test]
    fn hopf_values() {
        let v = eval_str("t^-2").unwrap();
        assert_eq!(v, Value::Hopf(HopfElement::t_pow(-2)));
        let v2 = eval_str("t - 1").unwrap();
        match v2 {
            Value::Hopf(h) => assert_eq!(h.terms.len(), 2),
            _ => panic!("wrong kind"),
        }
    }
}
