use rayon::prelude::*;
use serde::Serialize;

use super::UData;
use crate::arith::{Polynomial, RationalFunction};
use crate::decorations::hm_coeff;
use crate::divisors::{Coeff, PrimeDivisor};
use crate::error::{Error, Result};
use crate::gb::{unit_vector, Submodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hull,
    Intersection,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Hull => "hull",
            Method::Intersection => "intersection",
        }
    }
}

/// Generators of `HM(u)` on affine `n`-space, stored as the polynomial
/// module `p * HM(u)` with `p = x1 ... xn`.
#[derive(Clone, Debug)]
pub struct HMGenerators {
    pub n: usize,
    pub p: Polynomial,
    pub cleared: Submodule,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorsJson {
    pub p: String,
    pub gens: Vec<[String; 2]>,
    pub method: String,
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn boundary(n: usize) -> Polynomial {
    (0..n).fold(Polynomial::one(n), |acc, i| &acc * &Polynomial::var(n, i))
}

impl HMGenerators {
    /// The generators with the prefactor `1/p` reattached.
    pub fn generators(&self) -> Vec<(RationalFunction, RationalFunction)> {
        self.cleared
            .generators()
            .iter()
            .map(|v| {
                let f = RationalFunction::new(v[0].clone(), self.p.clone()).expect("p is nonzero");
                let g = RationalFunction::new(v[1].clone(), self.p.clone()).expect("p is nonzero");
                (f, g)
            })
            .collect()
    }

    pub fn to_json(&self) -> GeneratorsJson {
        let nm = names(self.n);
        GeneratorsJson {
            p: self.p.render(&nm),
            gens: self.generators().iter().map(|(f, g)| [f.render(&nm), g.render(&nm)]).collect(),
            method: self.method.name().into(),
        }
    }

    pub fn equal_modules(&self, other: &HMGenerators) -> Result<bool> {
        self.cleared.equal_modules(&other.cleared)
    }
}

/// `(1/x_i) (x^{u+(i)}, x^{u-(i)})` for the ray `i` (0-based).
pub fn local_generators(u: &UData, i: usize) -> Result<(RationalFunction, RationalFunction)> {
    let n = u.require_affine()?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, nvars: n });
    }
    let (plus, minus) = u.split_row(i);
    let xi = Polynomial::var(n, i);
    let f = RationalFunction::new(Polynomial::monomial(plus, crate::arith::q(1)), xi.clone())?;
    let g = RationalFunction::new(Polynomial::monomial(minus, crate::arith::q(1)), xi)?;
    Ok((f, g))
}

fn special(u: &UData, i: usize) -> Vec<Polynomial> {
    let (plus, minus) = u.split_row(i);
    let one = crate::arith::q(1);
    vec![Polynomial::monomial(plus, one.clone()), Polynomial::monomial(minus, one)]
}

/// `p M_i(u) = <(x^{u+(i)}, x^{u-(i)}), (x_i, 0), (0, x_i)>`.
fn chart_module(u: &UData, i: usize, n: usize) -> Result<Submodule> {
    let xi = Polynomial::var(n, i);
    Submodule::new(n, 2, vec![special(u, i), unit_vector(n, 2, 0, xi.clone()), unit_vector(n, 2, 1, xi)])
}

pub fn hm_via_intersection(u: &UData) -> Result<HMGenerators> {
    let n = u.require_affine()?;
    if n == 0 {
        return Err(Error::InvalidU("affine space of dimension zero".into()));
    }
    let charts = (0..n).into_par_iter().map(|i| chart_module(u, i, n)).collect::<Result<Vec<_>>>()?;
    let mut acc = charts[0].clone();
    for m in &charts[1..] {
        acc = acc.intersect(m)?.reduced();
    }
    Ok(HMGenerators { n, p: boundary(n), cleared: acc.minimized()?, method: Method::Intersection })
}

/// The known module `HM'(u) = <local generators> + R^2`, cleared by `p`.
fn known_module(u: &UData, n: usize) -> Result<Submodule> {
    let p = boundary(n);
    let mut gens = Vec::with_capacity(n + 2);
    for i in 0..n {
        let pi = p.exact_divide(&Polynomial::var(n, i))?;
        gens.push(special(u, i).iter().map(|c| c * &pi).collect());
    }
    gens.push(unit_vector(n, 2, 0, p.clone()));
    gens.push(unit_vector(n, 2, 1, p));
    Submodule::new(n, 2, gens)
}

pub fn hm_via_hull(u: &UData) -> Result<HMGenerators> {
    let n = u.require_affine()?;
    if n == 0 {
        return Err(Error::InvalidU("affine space of dimension zero".into()));
    }
    let p = boundary(n);
    let known = known_module(u, n)?;
    let sats = (0..n)
        .into_par_iter()
        .map(|i| known.saturate(&p.exact_divide(&Polynomial::var(n, i))?))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = sats[0].clone();
    for m in &sats[1..] {
        acc = acc.intersect(m)?.reduced();
    }
    Ok(HMGenerators { n, p, cleared: acc.minimized()?, method: Method::Hull })
}

pub fn hm_generators(u: &UData, method: Method) -> Result<HMGenerators> {
    match method {
        Method::Hull => hm_via_hull(u),
        Method::Intersection => hm_via_intersection(u),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// No poles off the coordinate hyperplanes.
    pub torus_regular: bool,
    /// `(prime name, coefficient)` at every toric prime.
    pub coefficients: Vec<(String, Coeff)>,
}

/// Decides `(f, g) in HM(u)` from the decoration: no poles on the torus and
/// nonnegative coefficient at every coordinate hyperplane.
pub fn membership_oracle(u: &UData, f: &RationalFunction, g: &RationalFunction) -> Result<Membership> {
    let n = u.require_affine()?;
    if f.nvars() != n || g.nvars() != n {
        return Err(Error::CoordinateMismatch(format!("expected functions of {n} variables")));
    }
    let mut torus_regular = true;
    for h in [f, g] {
        if !h.is_zero() {
            let (_, _, b) = h.laurent_split()?;
            torus_regular &= b.is_constant();
        }
    }
    let fan = u.fan();
    let mut coefficients = Vec::with_capacity(n);
    let mut nonneg = true;
    for rho in 0..fan.nrays() {
        let p = PrimeDivisor::Toric(rho);
        let c = hm_coeff(u, f, g, &p, fan)?;
        nonneg &= c >= Coeff::Fin(0);
        coefficients.push((p.name(fan), c));
    }
    Ok(Membership { member: torus_regular && nonneg, torus_regular, coefficients })
}

/// Membership by normal form: `p f` and `p g` must be polynomials in the
/// cleared module.
pub fn gb_membership(gens: &HMGenerators, f: &RationalFunction, g: &RationalFunction) -> Result<bool> {
    let p = RationalFunction::from_poly(gens.p.clone());
    let mut v = Vec::with_capacity(2);
    for h in [f, g] {
        let c = &p * h;
        if !c.is_polynomial() {
            return Ok(false);
        }
        v.push(c.numer().clone());
    }
    gens.cleared.contains(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, Ring};
    use crate::toric::affine;

    fn worked_u() -> UData {
        UData::new(&affine(3), vec![vec![0, 1, 0], vec![1, 0, -1], vec![0, -1, 0]]).unwrap()
    }

    fn pair(a: &str, b: &str) -> (RationalFunction, RationalFunction) {
        let r = Ring::affine(3);
        (r.parse(a).unwrap(), r.parse(b).unwrap())
    }

    #[test]
    fn local_generator_examples() {
        let u = worked_u();
        assert_eq!(local_generators(&u, 0).unwrap(), pair("x2/x1", "1/x1"));
        assert_eq!(local_generators(&u, 1).unwrap(), pair("x1/x2", "x3/x2"));
        let z = UData::zero(&affine(2));
        let r = Ring::affine(2);
        assert_eq!(local_generators(&z, 1).unwrap(), (r.parse("1/x2").unwrap(), r.parse("1/x2").unwrap()));
    }

    #[test]
    fn worked_example() {
        let u = worked_u();
        let a = hm_via_intersection(&u).unwrap();
        let b = hm_via_hull(&u).unwrap();
        assert!(a.equal_modules(&b).unwrap());
        let p = Ring::affine(3).parse("x1*x2*x3").unwrap();
        let vs = [
            pair("1/(x2*x3) + 1/x1", "1/x3 + 1/(x1*x2)"),
            pair("1/x2 + x3/x1", "x3/(x1*x2)"),
            pair("x2/x1", "1/x1"),
        ];
        let cleared: Vec<Vec<Polynomial>> =
            vs.iter().map(|(f, g)| vec![(&p * f).numer().clone(), (&p * g).numer().clone()]).collect();
        let expected = Submodule::new(3, 2, cleared.clone()).unwrap();
        assert!(a.cleared.equal_modules(&expected).unwrap());
        for (f, g) in &vs {
            assert!(membership_oracle(&u, f, g).unwrap().member);
            assert!(gb_membership(&a, f, g).unwrap());
        }
        let (f, g) = pair("1/x1^2", "1/x1^2");
        assert!(!membership_oracle(&u, &f, &g).unwrap().member);
        assert!(!gb_membership(&a, &f, &g).unwrap());
        let pres = expected.syzygies();
        let probe = pres.local_freeness_probe(&[q(0), q(1), q(0)]).unwrap();
        assert_eq!(probe.evaluated_rank, 0);
        assert!(probe.not_locally_free);
    }

    #[test]
    fn zero_u_is_free() {
        for n in 1..=3 {
            let u = UData::zero(&affine(n));
            let m = hm_via_intersection(&u).unwrap();
            let p = boundary(n);
            let basis = Submodule::new(n, 2, vec![unit_vector(n, 2, 0, p.clone()), vec![Polynomial::one(n), Polynomial::one(n)]]).unwrap();
            assert!(m.cleared.equal_modules(&basis).unwrap(), "n = {n}");
            assert!(basis.syzygies().syzygies.is_empty());
            assert!(m.equal_modules(&hm_via_hull(&u).unwrap()).unwrap());
        }
    }
}
