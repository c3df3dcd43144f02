use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::{Polynomial, Q};
use crate::error::{Error, Result};

/// Quotient of two polynomials, lazily normalized.
///
/// Normal form: zero is `0/1`; the common monomial content of numerator and
/// denominator is cancelled; a constant denominator is folded into the
/// numerator; the denominator is monic. No polynomial gcd is taken, so two
/// equal functions may be stored differently. Equality cross-multiplies.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Polynomial::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Polynomial::var(nvars, i))
    }

    /// The Laurent monomial `c * x^e`, exponents of any sign.
    pub fn laurent_monomial(e: &Monomial, c: Q) -> Self {
        let (plus, minus) = e.split_signs();
        let num = Polynomial::monomial(plus, c);
        let den = Polynomial::monomial(minus, Q::one());
        Self::normalized(num, den)
    }

    fn normalized(mut num: Polynomial, mut den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let g = num.monomial_content().unwrap().gcd(&den.monomial_content().unwrap());
        if !g.is_one() {
            num = num.div_monomial(&g);
            den = den.div_monomial(&g);
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction { num: num.scale(&c.recip()), den: Polynomial::one(n) };
        }
        if !den.is_monomial() {
            if let Ok(qt) = num.exact_divide(&den) {
                return RationalFunction { num: qt, den: Polynomial::one(n) };
            }
            if !num.is_monomial() && num.len() <= den.len() {
                if let Ok(qt) = den.exact_divide(&num) {
                    let lc = qt.leading_coeff();
                    return RationalFunction {
                        num: Polynomial::constant(n, lc.recip()),
                        den: qt.scale(&lc.recip()),
                    };
                }
            }
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(Self::normalized(self.num.pow(e), self.den.pow(e)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Exact equality by cross-multiplication.
    pub fn ratfunc_eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    /// Writes `self = x^alpha * a / b` with `a` and `b` free of monomial
    /// factors and `b` monic (or `1`).
    pub fn laurent_split(&self) -> Result<(Monomial, Polynomial, Polynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let cn = self.num.monomial_content().unwrap();
        let cd = self.den.monomial_content().unwrap();
        let a = self.num.div_monomial(&cn);
        let b = self.den.div_monomial(&cd);
        let alpha = cn.div(&cd);
        let lc = b.leading_coeff();
        Ok((alpha, a.scale(&lc.recip()), b.scale(&lc.recip())))
    }

    /// Substitutes each variable by a rational function of another ring.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<RationalFunction> {
        let n = images.first().map(|r| r.nvars()).unwrap_or(0);
        let eval = |p: &Polynomial| -> Result<RationalFunction> {
            let mut acc = RationalFunction::zero(n);
            for (m, c) in p.terms() {
                let mut t = RationalFunction::constant(n, c.clone());
                for (i, &e) in m.exps().iter().enumerate() {
                    if e != 0 {
                        t = &t * &images[i].pow(e)?;
                    }
                }
                acc = &acc + &t;
            }
            Ok(acc)
        };
        eval(&self.num)?.checked_div(&eval(&self.den)?)
    }

    /// Evaluates at a point where the denominator does not vanish.
    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        let multi = self.num.len() > 1;
        if self.den.is_one() {
            self.num.write_with(names, &mut s).unwrap();
            return s;
        }
        if multi {
            s.push('(');
        }
        self.num.write_with(names, &mut s).unwrap();
        if multi {
            s.push(')');
        }
        s.push_str("/(");
        self.den.write_with(names, &mut s).unwrap();
        s.push(')');
        s
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ratfunc_eq(other)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_monomial() && self.den.is_monomial() {
            let l = self.den.terms()[0].0.lcm(&rhs.den.terms()[0].0);
            let a = self.num.mul_monomial(&l.div(&self.den.terms()[0].0));
            let b = rhs.num.mul_monomial(&l.div(&rhs.den.terms()[0].0));
            let den = Polynomial::monomial(l, Q::one());
            return RationalFunction::normalized(&a + &b, den);
        }
        if let Ok(k) = rhs.den.exact_divide(&self.den) {
            return RationalFunction::normalized(&(&self.num * &k) + &rhs.num, rhs.den.clone());
        }
        if let Ok(k) = self.den.exact_divide(&rhs.den) {
            return RationalFunction::normalized(&self.num + &(&rhs.num * &k), self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.nvars());
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// A quotient of homogeneous polynomials in Cox coordinates.
///
/// `degree` is `deg(num) - deg(den)`; degree-zero fractions are the rational
/// functions of the projective variety, degree `l` ones are sections of
/// `O(l)` over the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFraction {
    pub value: RationalFunction,
    pub degree: i64,
}

impl GradedFraction {
    pub fn new(value: RationalFunction) -> Result<Self> {
        let (num, den) = (value.numer(), value.denom());
        if !num.is_homogeneous() {
            return Err(Error::InhomogeneousProjectiveInput("numerator".into()));
        }
        if !den.is_homogeneous() {
            return Err(Error::InhomogeneousProjectiveInput("denominator".into()));
        }
        let degree = match num.total_degree() {
            Some(d) => d - den.total_degree().unwrap(),
            None => 0,
        };
        Ok(GradedFraction { value, degree })
    }

    pub fn is_degree_zero(&self) -> bool {
        self.degree == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> RationalFunction {
        RationalFunction::var(n, i)
    }

    #[test]
    fn ratfunc_eq_examples() {
        let one = RationalFunction::one(2);
        let xx = x(2, 0);
        let a = (&(&xx * &xx) - &one).checked_div(&(&xx - &one)).unwrap();
        assert!(a.ratfunc_eq(&(&xx + &one)));
        let y = x(2, 1);
        assert!(!(&xx / &y).ratfunc_eq(&(&y / &xx)));
        let z = RationalFunction::new(Polynomial::zero(2), (&xx + &one).numer().clone()).unwrap();
        assert!(z.ratfunc_eq(&RationalFunction::zero(2)));
    }

    #[test]
    fn laurent_split_examples() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let f = (&(&x1 * &x1) + &(&x1 * &x2)) / (&(&x1 * &x1) * &(&x1 * &x2));
        let (alpha, a, b) = f.laurent_split().unwrap();
        assert_eq!(alpha.0, vec![-2, -1]);
        assert_eq!(a, (&x1 + &x2).numer().clone());
        assert!(b.is_one());

        let (alpha, a, b) = x1.laurent_split().unwrap();
        assert_eq!(alpha.0, vec![1, 0]);
        assert!(a.is_one() && b.is_one());

        let one = RationalFunction::one(2);
        let g = (&x1 + &one) / (&x2 + &one);
        let (alpha, a, b) = g.laurent_split().unwrap();
        assert_eq!(alpha.0, vec![0, 0]);
        assert_eq!(a, (&x1 + &one).numer().clone());
        assert_eq!(b, (&x2 + &one).numer().clone());

        assert_eq!(RationalFunction::zero(2).laurent_split(), Err(Error::ZeroInput));
    }

    #[test]
    fn graded_degree() {
        let z = |i| x(5, i);
        let f = (&z(0) * &z(2)) / (&z(3) * &z(4));
        assert_eq!(GradedFraction::new(f).unwrap().degree, 0);
        let g = &z(0) + &RationalFunction::one(5);
        assert!(GradedFraction::new(g).is_err());
    }
}
