use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Q;
use super::ratfunc::{GradedFraction, RationalFunction};
use crate::error::{Error, Result};

/// Variable naming context: affine coordinates `x1..xn` or Cox
/// coordinates `z0..z{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    homogeneous: bool,
}

/// Result of parsing against a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Affine(RationalFunction),
    Graded(GradedFraction),
}

impl Expr {
    pub fn into_value(self) -> RationalFunction {
        match self {
            Expr::Affine(f) => f,
            Expr::Graded(g) => g.value,
        }
    }
}

impl Ring {
    pub fn affine(n: usize) -> Self {
        Ring { names: (1..=n).map(|i| format!("x{i}")).collect(), homogeneous: false }
    }

    /// Cox ring with `nvars` variables `z0..`.
    pub fn cox(nvars: usize) -> Self {
        Ring { names: (0..nvars).map(|i| format!("z{i}")).collect(), homogeneous: true }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn render(&self, f: &RationalFunction) -> String {
        f.render(&self.names)
    }

    pub fn parse(&self, src: &str) -> Result<RationalFunction> {
        let f = Parser { src: src.as_bytes(), pos: 0, ring: self }.parse_all()?;
        if self.homogeneous {
            GradedFraction::new(f.clone())?;
        }
        Ok(f)
    }

    pub fn parse_expression(&self, src: &str) -> Result<Expr> {
        let f = Parser { src: src.as_bytes(), pos: 0, ring: self }.parse_all()?;
        if self.homogeneous {
            Ok(Expr::Graded(GradedFraction::new(f)?))
        } else {
            Ok(Expr::Affine(f))
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn err<T>(&self, pos: usize, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos, msg: msg.to_string() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<RationalFunction> {
        let f = self.expr()?;
        if let Some(c) = self.peek() {
            return self.err(self.pos, &format!("unexpected `{}`", c as char));
        }
        Ok(f)
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                if d.is_zero() {
                    return self.err(at, "division by zero");
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let Some(e) = self.integer()? else {
            return self.err(self.pos, "expected integer exponent");
        };
        if paren && !self.eat(b')') {
            return self.err(self.pos, "expected `)`");
        }
        let e: i32 = match i32::try_from(e) {
            Ok(v) if v <= 10_000 => v,
            _ => return self.err(at, "exponent too large"),
        };
        let e = if neg { -e } else { e };
        if e < 0 && base.is_zero() {
            return self.err(at, "division by zero");
        }
        base.pow(e)
    }

    fn integer(&mut self) -> Result<Option<BigInt>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(Some(s.parse().unwrap()))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let n = self.ring.nvars();
        match self.peek() {
            None => self.err(self.pos, "expected operand"),
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(b')') {
                    return self.err(self.pos, "expected `)`");
                }
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?.unwrap();
                if v.is_zero() {
                    Ok(RationalFunction::zero(n))
                } else {
                    Ok(RationalFunction::constant(n, Q::from_integer(v)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.names.iter().position(|s| s == name) {
                    Some(i) => Ok(RationalFunction::var(n, i)),
                    None => self.err(start, &format!("unknown variable `{name}`")),
                }
            }
            Some(c) => self.err(self.pos, &format!("unexpected `{}`", c as char)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sum_of_fractions() {
        let r = Ring::affine(3);
        let f = r.parse("1/(x2*x3)+1/x1").unwrap();
        let g = r.parse("(x2*x3 + x1)/(x1*x2*x3)").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn reports_position() {
        let r = Ring::affine(3);
        match r.parse("x1+") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        match r.parse("x1 * y") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graded_parse() {
        let r = Ring::cox(5);
        match r.parse_expression("z0*z2/(z3*z4)").unwrap() {
            Expr::Graded(g) => assert_eq!(g.degree, 0),
            e => panic!("{e:?}"),
        }
        assert!(matches!(r.parse("z0 + 1"), Err(Error::InhomogeneousProjectiveInput(_))));
    }

    #[test]
    fn negative_exponents() {
        let r = Ring::affine(2);
        assert_eq!(r.parse("x1^-2").unwrap(), r.parse("1/x1^2").unwrap());
        assert_eq!(r.parse("x1^(-2)*x2").unwrap(), r.parse("x2/(x1*x1)").unwrap());
    }

    #[test]
    fn render_roundtrip() {
        let r = Ring::affine(3);
        for s in ["1/(x2*x3)+1/x1", "-3/2*x1^2 + x2 - 7", "(x1 - x2)/(x3^2 + 1)", "x1^(-2)*x2"] {
            let f = r.parse(s).unwrap();
            let text = r.render(&f);
            assert_eq!(r.parse(&text).unwrap(), f, "{s} -> {text}");
        }
    }
}
