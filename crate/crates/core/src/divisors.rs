//! Prime divisors, Weil divisors, orders of vanishing and the residue test.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{Polynomial, RationalFunction, Ring};
use crate::error::{Error, Result};
use crate::toric::Fan;

/// A coefficient in `Z ∪ {+inf}`. The derived order puts `Inf` last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coeff {
    Fin(i64),
    Inf,
}

impl Coeff {
    pub fn is_inf(self) -> bool {
        self == Coeff::Inf
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Coeff::Fin(v) => Some(v),
            Coeff::Inf => None,
        }
    }

    pub fn plus(self, k: i64) -> Coeff {
        match self {
            Coeff::Fin(v) => Coeff::Fin(v + k),
            Coeff::Inf => Coeff::Inf,
        }
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Fin(a), Coeff::Fin(b)) => Coeff::Fin(a + b),
            _ => Coeff::Inf,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Fin(v) => write!(f, "{v}"),
            Coeff::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coeff::Fin(v) => s.serialize_i64(*v),
            Coeff::Inf => s.serialize_str("inf"),
        }
    }
}

/// A prime divisor: torus-invariant (by ray id) or a hypersurface meeting the
/// torus. Irreducibility of hypersurfaces is the caller's responsibility.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeDivisor {
    Toric(usize),
    AffineHypersurface(Polynomial),
    ProjectiveHypersurface(Polynomial),
}

fn check_hypersurface(p: &Polynomial) -> Result<Polynomial> {
    if p.is_constant() {
        return Err(Error::Invalid("hypersurface polynomial is constant".into()));
    }
    if !p.monomial_content().unwrap().is_one() {
        return Err(Error::Invalid(
            "hypersurface polynomial is divisible by a coordinate; use the toric divisor".into(),
        ));
    }
    Ok(p.primitive())
}

impl PrimeDivisor {
    pub fn affine_hypersurface(p: &Polynomial) -> Result<Self> {
        Ok(PrimeDivisor::AffineHypersurface(check_hypersurface(p)?))
    }

    pub fn projective_hypersurface(p: &Polynomial) -> Result<Self> {
        if !p.is_homogeneous() {
            return Err(Error::InhomogeneousProjectiveInput("hypersurface".into()));
        }
        Ok(PrimeDivisor::ProjectiveHypersurface(check_hypersurface(p)?))
    }

    pub fn is_toric(&self) -> bool {
        matches!(self, PrimeDivisor::Toric(_))
    }

    pub fn ray(&self) -> Option<usize> {
        match self {
            PrimeDivisor::Toric(r) => Some(*r),
            _ => None,
        }
    }

    /// Resolves a ray name such as `H1`, or parses a hypersurface equation in
    /// the coordinates of the fan.
    pub fn parse(s: &str, fan: &Fan) -> Result<Self> {
        let s = s.trim();
        if let Some(r) = fan.ray_by_name(s) {
            return Ok(PrimeDivisor::Toric(r));
        }
        if fan.is_projective_space() {
            let f = Ring::cox(fan.nrays()).parse(s)?;
            if !f.is_polynomial() {
                return Err(Error::Invalid(format!("`{s}` is not a polynomial")));
            }
            PrimeDivisor::projective_hypersurface(f.numer())
        } else if fan.nrays() == fan.dim() {
            let f = Ring::affine(fan.dim()).parse(s)?;
            if !f.is_polynomial() {
                return Err(Error::Invalid(format!("`{s}` is not a polynomial")));
            }
            PrimeDivisor::affine_hypersurface(f.numer())
        } else {
            Err(Error::UnknownName(s.to_string()))
        }
    }

    pub fn name(&self, fan: &Fan) -> String {
        match self {
            PrimeDivisor::Toric(r) => fan.ray(*r).name.clone(),
            PrimeDivisor::AffineHypersurface(p) => format!("{{{} = 0}}", p.render(Ring::affine(p.nvars()).names())),
            PrimeDivisor::ProjectiveHypersurface(p) => format!("{{{} = 0}}", p.render(Ring::cox(p.nvars()).names())),
        }
    }

    pub fn to_json(&self, fan: &Fan) -> PrimeJson {
        match self {
            PrimeDivisor::Toric(r) => PrimeJson { kind: "toric".into(), data: fan.ray(*r).name.clone() },
            PrimeDivisor::AffineHypersurface(p) => {
                PrimeJson { kind: "affine_hypersurface".into(), data: p.render(Ring::affine(p.nvars()).names()) }
            }
            PrimeDivisor::ProjectiveHypersurface(p) => {
                PrimeJson { kind: "projective_hypersurface".into(), data: p.render(Ring::cox(p.nvars()).names()) }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub kind: String,
    pub data: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorEntry {
    pub prime: PrimeJson,
    pub coeff: i64,
}

/// Finitely supported integer combination of prime divisors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeilDivisor {
    coeffs: BTreeMap<PrimeDivisor, i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeetJoin {
    Meet,
    Join,
}

impl WeilDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn prime(p: PrimeDivisor) -> Self {
        Self::from_pairs([(p, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (PrimeDivisor, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (p, c) in pairs {
            *coeffs.entry(p).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        WeilDivisor { coeffs }
    }

    pub fn coeff(&self, p: &PrimeDivisor) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeDivisor, &i64)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<PrimeDivisor> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_pairs(self.coeffs.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    pub fn meet_join(&self, other: &Self, mode: MeetJoin) -> Self {
        let mut keys: Vec<&PrimeDivisor> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort();
        keys.dedup();
        Self::from_pairs(keys.into_iter().map(|p| {
            let (a, b) = (self.coeff(p), other.coeff(p));
            (p.clone(), if mode == MeetJoin::Meet { a.min(b) } else { a.max(b) })
        }))
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.meet_join(other, MeetJoin::Meet)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.meet_join(other, MeetJoin::Join)
    }

    pub fn render(&self, fan: &Fan) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (p, &c)) in self.coeffs.iter().enumerate() {
            let name = p.name(fan);
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                s.push_str(&format!("{}*", c.abs()));
            }
            s.push_str(&name);
        }
        s
    }

    pub fn to_entries(&self, fan: &Fan) -> Vec<DivisorEntry> {
        self.coeffs.iter().map(|(p, &c)| DivisorEntry { prime: p.to_json(fan), coeff: c }).collect()
    }
}

impl Add for &WeilDivisor {
    type Output = WeilDivisor;
    fn add(self, rhs: &WeilDivisor) -> WeilDivisor {
        WeilDivisor::from_pairs(self.coeffs.iter().chain(rhs.coeffs.iter()).map(|(p, c)| (p.clone(), *c)))
    }
}

impl Neg for &WeilDivisor {
    type Output = WeilDivisor;
    fn neg(self) -> WeilDivisor {
        self.scale(-1)
    }
}

impl Sub for &WeilDivisor {
    type Output = WeilDivisor;
    fn sub(self, rhs: &WeilDivisor) -> WeilDivisor {
        self + &(-rhs)
    }
}

fn multiplicity(f: &Polynomial, p: &Polynomial) -> i64 {
    let mut k = 0;
    let mut cur = f.clone();
    while let Ok(q) = cur.exact_divide(p) {
        cur = q;
        k += 1;
    }
    k
}

/// The valuation `ord_P(f)`.
///
/// `f` is read in Cox coordinates when it has one variable per ray, and in
/// torus coordinates when it has one variable per lattice direction (on
/// affine spaces the two agree). For a toric prime in torus coordinates the
/// order is the minimum of `<m, rho>` over the support: distinct characters
/// restrict to distinct characters of the divisor torus, so the initial form
/// never cancels.
pub fn ord_at(f: &RationalFunction, p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    if f.is_zero() {
        return Ok(Coeff::Inf);
    }
    match p {
        PrimeDivisor::Toric(r) => {
            if *r >= fan.nrays() {
                return Err(Error::UnknownName(format!("ray {r}")));
            }
            if f.nvars() == fan.nrays() {
                let a = f.numer().var_multiplicity(*r).unwrap() as i64;
                let b = f.denom().var_multiplicity(*r).unwrap() as i64;
                Ok(Coeff::Fin(a - b))
            } else if f.nvars() == fan.dim() {
                let v = &fan.ray(*r).vector;
                Ok(Coeff::Fin(f.numer().min_pairing(v).unwrap() - f.denom().min_pairing(v).unwrap()))
            } else {
                Err(Error::CoordinateMismatch(format!(
                    "{} variables for a fan with {} rays in dimension {}",
                    f.nvars(),
                    fan.nrays(),
                    fan.dim()
                )))
            }
        }
        PrimeDivisor::AffineHypersurface(h) | PrimeDivisor::ProjectiveHypersurface(h) => {
            if matches!(p, PrimeDivisor::ProjectiveHypersurface(_)) && !fan.is_projective_space() {
                return Err(Error::CoordinateMismatch("projective hypersurface on a non-projective fan".into()));
            }
            if matches!(p, PrimeDivisor::AffineHypersurface(_)) && fan.nrays() != fan.dim() {
                return Err(Error::CoordinateMismatch("affine hypersurface on a non-affine fan".into()));
            }
            let conv;
            let g = if f.nvars() == h.nvars() {
                f
            } else if f.nvars() == fan.dim() && h.nvars() == fan.nrays() {
                conv = fan.torus_to_cox(f)?;
                &conv
            } else {
                return Err(Error::CoordinateMismatch("hypersurface and function live in different rings".into()));
            };
            Ok(Coeff::Fin(multiplicity(g.numer(), h) - multiplicity(g.denom(), h)))
        }
    }
}

pub fn principal_divisor_on_support(f: &RationalFunction, support: &[PrimeDivisor], fan: &Fan) -> Result<WeilDivisor> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut pairs = Vec::with_capacity(support.len());
    for p in support {
        let c = ord_at(f, p, fan)?.finite().expect("nonzero function has finite order");
        pairs.push((p.clone(), c));
    }
    Ok(WeilDivisor::from_pairs(pairs))
}

/// Decides `(f/g)(P) = h(P)` in the residue field by orders alone:
/// `ord f = ord g < inf` and `ord(f - h g) > ord g`.
pub fn ratio_residue_matches(
    f: &RationalFunction,
    g: &RationalFunction,
    h: &RationalFunction,
    p: &PrimeDivisor,
    fan: &Fan,
) -> Result<bool> {
    match ord_at(h, p, fan)? {
        Coeff::Fin(0) => {}
        Coeff::Fin(k) => return Err(Error::HNotUnit(k)),
        Coeff::Inf => return Err(Error::ZeroInput),
    }
    let og = ord_at(g, p, fan)?;
    if og.is_inf() || ord_at(f, p, fan)? != og {
        return Ok(false);
    }
    Ok(ord_at(&(f - &(h * g)), p, fan)? > og)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{affine, projective};

    #[test]
    fn ord_examples() {
        let a3 = affine(3);
        let r = Ring::affine(3);
        let h1 = PrimeDivisor::Toric(0);
        assert_eq!(ord_at(&r.parse("x1^2/(x2*x3)").unwrap(), &h1, &a3).unwrap(), Coeff::Fin(2));
        assert_eq!(ord_at(&r.parse("1/(x2*x3) + 1/x1").unwrap(), &h1, &a3).unwrap(), Coeff::Fin(-1));
        let p = PrimeDivisor::affine_hypersurface(r.parse("x1+x2").unwrap().numer()).unwrap();
        assert_eq!(ord_at(&r.parse("(x1+x2)^2*x3").unwrap(), &p, &a3).unwrap(), Coeff::Fin(2));
        assert_eq!(ord_at(&RationalFunction::zero(3), &p, &a3).unwrap(), Coeff::Inf);
    }

    #[test]
    fn principal_divisors() {
        let p4 = projective(4);
        let f = Ring::cox(5).parse("z0*z2/(z3*z4)").unwrap();
        let d = principal_divisor_on_support(&f, &p4.toric_primes(), &p4).unwrap();
        assert_eq!(d.render(&p4), "H0 + H2 - H3 - H4");
        let a3 = affine(3);
        let d = principal_divisor_on_support(&Ring::affine(3).parse("x1/x2").unwrap(), &a3.toric_primes()[..2], &a3)
            .unwrap();
        assert_eq!(d.render(&a3), "H1 - H2");
    }

    #[test]
    fn residue_examples() {
        let a3 = affine(3);
        let r = Ring::affine(3);
        let h1 = PrimeDivisor::Toric(0);
        let p = |s: &str| r.parse(s).unwrap();
        assert!(ratio_residue_matches(&p("x2*x3 + x1"), &p("1"), &p("x2*x3"), &h1, &a3).unwrap());
        assert!(!ratio_residue_matches(&p("1"), &p("1"), &p("x2"), &h1, &a3).unwrap());
        assert!(ratio_residue_matches(&p("1/(x2*x3)+1/x1"), &p("1/x3+1/(x1*x2)"), &p("x2"), &h1, &a3).unwrap());
        assert_eq!(ratio_residue_matches(&p("1"), &p("1"), &p("x1"), &h1, &a3), Err(Error::HNotUnit(1)));
    }

    #[test]
    fn meet_join_examples() {
        let p4 = projective(4);
        let h = |i| WeilDivisor::prime(PrimeDivisor::Toric(i));
        let d = &h(0).scale(2) - &h(1);
        assert_eq!(d.meet(&h(0)).render(&p4), "H0 - H1");
        assert_eq!(d.meet(&d), d);
        assert_eq!(h(0).join(&h(1)).render(&p4), "H0 + H1");
    }
}
