use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::formulas::{hm_coeff, omega_coeff, tangent_coeff};
use super::Decoration;
use crate::arith::{q, RationalFunction, Q};
use crate::divisors::{Coeff, PrimeDivisor};
use crate::error::{Error, Result};
use crate::hm::UData;
use crate::linalg;
use crate::toric::Fan;

/// Decorations whose toric slice has a closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceKind {
    Omega,
    Tangent,
    HM(UData),
}

impl SliceKind {
    pub fn from_decoration(d: &Decoration) -> Result<Self> {
        match d {
            Decoration::Omega => Ok(SliceKind::Omega),
            Decoration::Tangent => Ok(SliceKind::Tangent),
            Decoration::HM(u) => Ok(SliceKind::HM(u.clone())),
            other => Err(Error::UnsupportedKind(format!("no toric slice for {}", other.name()))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SliceKind::Omega => "omega",
            SliceKind::Tangent => "tangent",
            SliceKind::HM(_) => "hm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceRow {
    pub element: Vec<i64>,
    pub ray: usize,
    pub coeff: Coeff,
}

/// Values `b_rho(e)` of a decoration on a toric slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceTable {
    pub kind: String,
    pub fan: String,
    pub basis: String,
    pub dim: usize,
    pub rows: Vec<SliceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLevel {
    pub level: i64,
    pub basis: Vec<Vec<i64>>,
}

fn box_points(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out.retain(|p| p.iter().any(|&c| c != 0));
    out
}

fn constants(v: &[i64], nvars: usize) -> Vec<RationalFunction> {
    v.iter().map(|&c| RationalFunction::constant(nvars, q(c))).collect()
}

/// Tabulates `b_rho(e)` for all nonzero lattice points (or constant pairs) `e`
/// with entries in `[-radius, radius]`.
pub fn toric_slice_table(kind: &SliceKind, fan: &Fan, radius: i64) -> Result<SliceTable> {
    let n = fan.dim();
    let (dim, basis) = match kind {
        SliceKind::Omega => (n, format!("lattice points of M in [-{radius},{radius}]^{n}")),
        SliceKind::Tangent => (n, format!("lattice points of N in [-{radius},{radius}]^{n}")),
        SliceKind::HM(_) => (2, format!("constant pairs in [-{radius},{radius}]^2")),
    };
    let mut rows = Vec::new();
    for e in box_points(dim, radius) {
        let v = constants(&e, n);
        for rho in 0..fan.nrays() {
            let p = PrimeDivisor::Toric(rho);
            let coeff = match kind {
                SliceKind::Omega => omega_coeff(&v, &p, fan, false)?,
                SliceKind::Tangent => tangent_coeff(&v, &p, fan)?,
                SliceKind::HM(u) => hm_coeff(u, &v[0], &v[1], &p, fan)?,
            };
            rows.push(SliceRow { element: e.clone(), ray: rho, coeff });
        }
    }
    Ok(SliceTable { kind: kind.name().into(), fan: fan.label().into(), basis, dim, rows })
}

fn primitive_integer(v: &[Q]) -> Vec<i64> {
    let lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            let y = if sign { -y } else { y };
            y.to_i64().expect("small entries")
        })
        .collect()
}

/// The descending filtration `E^l = span{e : b_rho(e) >= l}` read off a
/// slice table, from the lowest occurring level to one past the highest.
pub fn klyachko_filtration(table: &SliceTable, rho: usize) -> Result<Vec<FiltrationLevel>> {
    let rows: Vec<&SliceRow> = table.rows.iter().filter(|r| r.ray == rho).collect();
    if rows.is_empty() {
        return Err(Error::UnknownName(format!("ray {rho}")));
    }
    let finite: Vec<i64> = rows.iter().filter_map(|r| r.coeff.finite()).collect();
    let (lo, hi) = match (finite.iter().min(), finite.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::UnsupportedKind("slice has no finite values".into())),
    };
    let mut out = Vec::new();
    for level in lo..=hi + 1 {
        let span: Vec<Vec<Q>> = rows
            .iter()
            .filter(|r| r.coeff >= Coeff::Fin(level))
            .map(|r| r.element.iter().map(|&c| q(c)).collect())
            .collect();
        let basis = linalg::row_space(&span).iter().map(|v| primitive_integer(v)).collect();
        out.push(FiltrationLevel { level, basis });
    }
    Ok(out)
}
