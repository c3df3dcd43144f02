use crate::arith::{q, RationalFunction};
use crate::divisors::{ord_at, ratio_residue_matches, Coeff, PrimeDivisor};
use crate::error::{Error, Result};
use crate::hm::UData;
use crate::toric::Fan;

/// Index pairs of the basis `[12],[13],[14],[23],[24],[34]` of the second
/// exterior power on P4.
pub const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&p| p == (i, j)).expect("i < j in 1..=4")
}

fn delta(p: &PrimeDivisor, rho: usize) -> i64 {
    i64::from(*p == PrimeDivisor::Toric(rho))
}

/// `sum_i c_i f_i` for an integer vector `c`.
fn int_combination(c: &[i64], f: &[RationalFunction]) -> RationalFunction {
    let n = f.first().map_or(0, RationalFunction::nvars);
    let mut acc = RationalFunction::zero(n);
    for (ci, fi) in c.iter().zip(f) {
        if *ci != 0 {
            acc = &acc + &fi.scale(&q(*ci));
        }
    }
    acc
}

fn check_len(v: &[RationalFunction], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    Ok(())
}

/// `min(ord f, ord g)`, plus one when `(f/g)(P) = h(P)` with `h(P)` a unit.
/// A function `h` vanishing at `P` gives the plain minimum.
pub fn seminorm_phi(h: &RationalFunction, p: &PrimeDivisor, f: &RationalFunction, g: &RationalFunction, fan: &Fan) -> Result<Coeff> {
    let m = ord_at(f, p, fan)?.min(ord_at(g, p, fan)?);
    if h.is_zero() {
        return Ok(m);
    }
    match ord_at(h, p, fan)? {
        Coeff::Fin(k) if k < 0 => Err(Error::HNotUnit(k)),
        Coeff::Fin(0) => Ok(if ratio_residue_matches(f, g, h, p, fan)? { m.plus(1) } else { m }),
        _ => Ok(m),
    }
}

fn first_bad_cone(fan: &Fan) -> Option<usize> {
    (0..fan.cones().len()).find(|&s| !fan.cone_is_smooth(s))
}

/// Coefficient of the Euler-sequence decoration of the cotangent sheaf, or of
/// its logarithmic version.
pub fn omega_coeff(m: &[RationalFunction], p: &PrimeDivisor, fan: &Fan, log: bool) -> Result<Coeff> {
    if let Some(s) = first_bad_cone(fan) {
        return Err(Error::NotSmooth(s));
    }
    check_len(m, fan.dim())?;
    let mut best = Coeff::Inf;
    for (rho, ray) in fan.rays().iter().enumerate() {
        let o = ord_at(&int_combination(&ray.vector, m), p, fan)?;
        let c = if log { o } else { o.plus(-delta(p, rho)) };
        best = best.min(c);
    }
    Ok(best)
}

/// A maximal cone whose affine chart meets `P`.
pub fn tangent_cone(p: &PrimeDivisor, fan: &Fan) -> Result<usize> {
    match p {
        PrimeDivisor::Toric(rho) => fan.cones_containing(*rho).first().copied().ok_or(Error::NoContainingCone),
        _ if fan.cones().is_empty() => Err(Error::NoContainingCone),
        _ => Ok(0),
    }
}

/// `min over rho in sigma(1)` of `ord_P <rho^_sigma, a> + delta`.
pub fn tangent_coeff_in(a: &[RationalFunction], p: &PrimeDivisor, fan: &Fan, sigma: usize) -> Result<Coeff> {
    check_len(a, fan.dim())?;
    let cone = fan.cones().get(sigma).ok_or(Error::NoContainingCone)?;
    if let PrimeDivisor::Toric(rho) = p {
        if !cone.contains(rho) {
            return Err(Error::NoContainingCone);
        }
    }
    let mut best = Coeff::Inf;
    for d in fan.dual_basis(sigma)? {
        let o = ord_at(&int_combination(&d.m, a), p, fan)?;
        best = best.min(o.plus(delta(p, d.rho)));
    }
    Ok(best)
}

pub fn tangent_coeff(a: &[RationalFunction], p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    if let Some(s) = first_bad_cone(fan) {
        return Err(Error::NotSmooth(s));
    }
    tangent_coeff_in(a, p, fan, tangent_cone(p, fan)?)
}

/// Coefficient of the decoration of the second exterior power of the tangent
/// bundle of P4, in the basis `[ij] = a_i ^ a_j` with `a_0 = -sum a_i`.
pub fn lambda2t_coeff(w: &[RationalFunction], p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    if !(fan.is_projective_space() && fan.dim() == 4) {
        return Err(Error::UnsupportedKind("the exterior square decoration lives on P4".into()));
    }
    check_len(w, 6)?;
    let f = |i: usize, j: usize| &w[pair_index(i, j)];
    let mut best = Coeff::Inf;
    match p {
        PrimeDivisor::Toric(0) => {
            for l in 2..=4 {
                best = best.min(ord_at(f(1, l), p, fan)?.plus(1));
            }
            for i in 1..=4 {
                for j in i + 1..=4 {
                    for k in j + 1..=4 {
                        let c = &(f(i, j) - f(i, k)) + f(j, k);
                        best = best.min(ord_at(&c, p, fan)?);
                    }
                }
            }
        }
        PrimeDivisor::Toric(k) => {
            for (idx, &(i, j)) in PAIRS.iter().enumerate() {
                let bump = i64::from(i == *k || j == *k);
                best = best.min(ord_at(&w[idx], p, fan)?.plus(bump));
            }
        }
        _ => {
            for x in w {
                best = best.min(ord_at(x, p, fan)?);
            }
        }
    }
    Ok(best)
}

/// The decoration of `HM(u)`: the semi-norm with `h = x^{u_rho}` at `D_rho`,
/// the plain minimum at every other prime.
pub fn hm_coeff(u: &UData, f: &RationalFunction, g: &RationalFunction, p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    if u.fan().nrays() != fan.nrays() || u.fan().dim() != fan.dim() {
        return Err(Error::InvalidU("u belongs to a different fan".into()));
    }
    match p {
        PrimeDivisor::Toric(rho) => seminorm_phi(&u.h(*rho, f.nvars())?, p, f, g, fan),
        _ => Ok(ord_at(f, p, fan)?.min(ord_at(g, p, fan)?)),
    }
}
