//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' NAT)?
//! atom   := VAR | INT | '(' expr ')' | '[' expr ',' expr ']'
//! VAR    := <prefix> NAT
//! ```
//!
//! Whitespace is ignored. The same grammar reads free-algebra expressions
//! (prefix `x`) and Grassmann expressions (prefix `e`). Integer literals are
//! scalars: they may scale anything, but a nonzero scalar summand needs a unit.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::grassmann::GrassmannElement;
use crate::poly::{Mode, Polynomial};

/// Algebras the parser can build values in.
pub trait Parseable: Sized + Clone {
    fn zero(&self) -> Self;
    fn unit(&self) -> Option<Self>;
    fn generator(&self, index: u32) -> Result<Self>;
    fn add(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: u32) -> Self;
}

impl Parseable for Polynomial {
    fn zero(&self) -> Self {
        Polynomial::zero(self.field(), self.mode())
    }
    fn unit(&self) -> Option<Self> {
        (self.mode() == Mode::Unitary).then(|| Polynomial::one(self.field()))
    }
    fn generator(&self, index: u32) -> Result<Self> {
        Ok(Polynomial::var(self.field(), self.mode(), index))
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn scale(&self, c: u32) -> Self {
        Polynomial::scale(self, c)
    }
}

impl Parseable for GrassmannElement {
    fn zero(&self) -> Self {
        GrassmannElement::zero(self.field(), self.rank(), self.mode())
            .expect("rank already checked")
    }
    fn unit(&self) -> Option<Self> {
        (self.mode() == Mode::Unitary).then(|| {
            GrassmannElement::one(self.field(), self.rank()).expect("rank already checked")
        })
    }
    fn generator(&self, index: u32) -> Result<Self> {
        GrassmannElement::generator(self.field(), self.rank(), self.mode(), index)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn scale(&self, c: u32) -> Self {
        GrassmannElement::scale(self, c)
    }
}

/// A parsed subexpression: either a bare scalar or an algebra element.
#[derive(Clone)]
enum Value<A> {
    Scalar(u32),
    Elem(A),
}

struct Parser<'a, A> {
    src: &'a [u8],
    pos: usize,
    prefix: u8,
    field: Field,
    proto: &'a A,
}

impl<'a, A: Parseable> Parser<'a, A> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn to_elem(&self, v: Value<A>) -> Result<A> {
        match v {
            Value::Elem(a) => Ok(a),
            Value::Scalar(0) => Ok(self.proto.zero()),
            Value::Scalar(c) => match self.proto.unit() {
                Some(one) => Ok(one.scale(c)),
                None => Err(AlgebraError::UnitInNonunitary),
            },
        }
    }

    fn add(&self, a: Value<A>, b: Value<A>) -> Result<Value<A>> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(self.field.add(x, y))),
            (a, b) => Ok(Value::Elem(self.to_elem(a)?.add(&self.to_elem(b)?)?)),
        }
    }

    fn mul(&self, a: Value<A>, b: Value<A>) -> Result<Value<A>> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(self.field.mul(x, y)),
            (Value::Scalar(c), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(c)) => {
                Value::Elem(e.scale(c))
            }
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.mul(&y)?),
        })
    }

    fn neg(&self, a: Value<A>) -> Value<A> {
        match a {
            Value::Scalar(x) => Value::Scalar(self.field.neg(x)),
            Value::Elem(e) => Value::Elem(e.scale(self.field.p() - 1)),
        }
    }

    fn expr(&mut self) -> Result<Value<A>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(acc, t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(acc, self.neg(t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value<A>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.mul(acc, f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value<A>> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let n = self.nat()?;
        match base {
            Value::Scalar(c) => Ok(Value::Scalar(self.field.pow(c, n))),
            Value::Elem(e) => {
                if n == 0 {
                    return match e.unit() {
                        Some(one) => Ok(Value::Elem(one)),
                        None => Err(AlgebraError::UnitInNonunitary),
                    };
                }
                if n > 4096 {
                    self.pos = at;
                    return self.err("exponent too large");
                }
                let mut acc = e.clone();
                for _ in 1..n {
                    acc = acc.mul(&e)?;
                }
                Ok(Value::Elem(acc))
            }
        }
    }

    fn atom(&mut self) -> Result<Value<A>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                match (a, b) {
                    (Value::Elem(a), Value::Elem(b)) => {
                        let ab = a.mul(&b)?;
                        let ba = b.mul(&a)?;
                        Ok(Value::Elem(ab.add(&ba.scale(self.field.p() - 1))?))
                    }
                    _ => Ok(Value::Scalar(0)),
                }
            }
            Some(c) if c == self.prefix => {
                self.pos += 1;
                let at = self.pos;
                let k = self.nat()?;
                let k = u32::try_from(k).or_else(|_| {
                    self.pos = at;
                    self.err("variable index too large")
                })?;
                Ok(Value::Elem(self.proto.generator(k)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Ok(Value::Scalar((n % u64::from(self.field.p())) as u32))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_with<A: Parseable>(text: &str, prefix: u8, field: Field, proto: &A) -> Result<A> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        prefix,
        field,
        proto,
    };
    let v = parser.expr()?;
    if parser.peek().is_some() {
        return parser.err("trailing input");
    }
    parser.to_elem(v)
}

/// Parses a free-algebra expression in variables `x<k>`.
pub fn parse(text: &str, field: Field, mode: Mode) -> Result<Polynomial> {
    parse_with(text, b'x', field, &Polynomial::zero(field, mode))
}

/// Parses a Grassmann expression in generators `e<k>`, `1 <= k <= rank`.
pub fn parse_grassmann(
    text: &str,
    field: Field,
    rank: u32,
    mode: Mode,
) -> Result<GrassmannElement> {
    parse_with(
        text,
        b'e',
        field,
        &GrassmannElement::zero(field, rank, mode)?,
    )
}

/// Canonical rendering; `parse(print(f)) == f`.
pub fn print(f: &Polynomial) -> String {
    f.to_string()
}
