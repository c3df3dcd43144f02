use super::formulas::{tangent_cone, tangent_coeff_in};
use super::{Decoration, Element, Evaluator};
use crate::arith::{q, RationalFunction};
use crate::divisors::{ord_at, Coeff, PrimeDivisor};
use crate::error::{Error, Result};
use crate::toric::Fan;

/// The lift `a(sigma)` of `a` to `K^{Sigma(1)}`: `<rho^_sigma, a>` on the
/// rays of `sigma`, zero elsewhere.
pub fn lift_at_cone(a: &[RationalFunction], sigma: usize, fan: &Fan) -> Result<Vec<RationalFunction>> {
    if a.len() != fan.dim() {
        return Err(Error::DimensionMismatch { expected: fan.dim(), got: a.len() });
    }
    let n = a.first().map_or(fan.dim(), RationalFunction::nvars);
    let mut lift = vec![RationalFunction::zero(n); fan.nrays()];
    for d in fan.dual_basis(sigma)? {
        let mut acc = RationalFunction::zero(n);
        for (mi, ai) in d.m.iter().zip(a) {
            if *mi != 0 {
                acc = &acc + &ai.scale(&q(*mi));
            }
        }
        lift[d.rho] = acc;
    }
    Ok(lift)
}

/// `min over rho` of `ord_P lift_rho + delta`, a lower bound for the
/// tangent coefficient of the image `a` of the lift.
pub fn tangent_lift_bound(a: &[RationalFunction], lift: &[RationalFunction], p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    if lift.len() != fan.nrays() {
        return Err(Error::DimensionMismatch { expected: fan.nrays(), got: lift.len() });
    }
    if a.len() != fan.dim() {
        return Err(Error::DimensionMismatch { expected: fan.dim(), got: a.len() });
    }
    let n = a.first().map_or(fan.dim(), RationalFunction::nvars);
    for (i, ai) in a.iter().enumerate() {
        let mut image = RationalFunction::zero(n);
        for (l, ray) in lift.iter().zip(fan.rays()) {
            if ray.vector[i] != 0 {
                image = &image + &l.scale(&q(ray.vector[i]));
            }
        }
        if image != *ai {
            return Err(Error::NotALift);
        }
    }
    let mut best = Coeff::Inf;
    for (rho, l) in lift.iter().enumerate() {
        let bump = i64::from(*p == PrimeDivisor::Toric(rho));
        best = best.min(ord_at(l, p, fan)?.plus(bump));
    }
    Ok(best)
}

/// The natural pairing of `phi` with `v`, component by component.
pub fn pairing(phi: &Element, v: &Element) -> Result<RationalFunction> {
    let (a, b) = (phi.flatten(), v.flatten());
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: b.len(), got: a.len() });
    }
    let n = b.first().map_or(0, RationalFunction::nvars);
    Ok(a.iter().zip(&b).fold(RationalFunction::zero(n), |acc, (x, y)| &acc + &(x * y)))
}

/// `ord_P(phi(v)) - W(v)_P`, an upper bound for the dual coefficient of `phi`.
pub fn dual_bound(d: &Decoration, phi: &Element, v: &Element, p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    let pv = pairing(phi, v)?;
    let w = d.coeff(fan, v, p)?;
    match (ord_at(&pv, p, fan)?, w) {
        (_, Coeff::Inf) | (Coeff::Inf, _) => Ok(Coeff::Inf),
        (Coeff::Fin(o), Coeff::Fin(c)) => Ok(Coeff::Fin(o - c)),
    }
}

/// The dual-basis character `rho^*_sigma` attaining the tangent coefficient
/// of `a` at `P`.
pub fn omega_witness(a: &[RationalFunction], p: &PrimeDivisor, fan: &Fan) -> Result<Vec<i64>> {
    let sigma = tangent_cone(p, fan)?;
    let target = tangent_coeff_in(a, p, fan, sigma)?;
    let n = a.first().map_or(fan.dim(), RationalFunction::nvars);
    for d in fan.dual_basis(sigma)? {
        let mut s = RationalFunction::zero(n);
        for (mi, ai) in d.m.iter().zip(a) {
            if *mi != 0 {
                s = &s + &ai.scale(&q(*mi));
            }
        }
        let bump = i64::from(*p == PrimeDivisor::Toric(d.rho));
        if ord_at(&s, p, fan)?.plus(bump) == target {
            return Ok(d.m);
        }
    }
    Err(Error::ZeroInput)
}
