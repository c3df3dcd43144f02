//! Fans, rays, characters and dual bases.

use serde::{Deserialize, Serialize};

use crate::arith::{Monomial, Polynomial, RationalFunction, Q};
use crate::divisors::{PrimeDivisor, WeilDivisor};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub id: usize,
    pub vector: Vec<i64>,
    pub name: String,
}

/// A fan of smooth simplicial cones, given by its rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Ray>,
    cones: Vec<Vec<usize>>,
    label: String,
}

/// Serialized form of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// `m` with `<m, rho'> = delta(rho, rho')` on the rays of a maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCovector {
    pub sigma: usize,
    pub rho: usize,
    pub m: Vec<i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Fan {
    /// Builds a fan without validating it; see [`validate_fan`].
    pub fn from_spec(spec: &FanSpec) -> Fan {
        let rays = spec
            .rays
            .iter()
            .enumerate()
            .map(|(id, v)| Ray { id, vector: v.clone(), name: format!("D{id}") })
            .collect();
        Fan { dim: spec.dim, rays, cones: spec.cones.clone(), label: "custom".into() }
    }

    /// Builds and validates a fan.
    pub fn new(spec: &FanSpec) -> Result<Fan> {
        let fan = Fan::from_spec(spec);
        let report = validate_fan(&fan);
        if !report.ok {
            return Err(Error::Invalid(report.violations.join("; ")));
        }
        Ok(fan)
    }

    pub fn spec(&self) -> FanSpec {
        FanSpec {
            dim: self.dim,
            rays: self.rays.iter().map(|r| r.vector.clone()).collect(),
            cones: self.cones.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, id: usize) -> &Ray {
        &self.rays[id]
    }

    pub fn nrays(&self) -> usize {
        self.rays.len()
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ray_by_name(&self, name: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.name == name)
    }

    pub fn is_projective_space(&self) -> bool {
        self.label.starts_with("projective(")
    }

    pub fn is_affine_space(&self) -> bool {
        self.label.starts_with("affine(")
    }

    pub fn toric_primes(&self) -> Vec<PrimeDivisor> {
        (0..self.nrays()).map(PrimeDivisor::Toric).collect()
    }

    /// Maximal cones containing the given ray.
    pub fn cones_containing(&self, ray: usize) -> Vec<usize> {
        (0..self.cones.len()).filter(|&s| self.cones[s].contains(&ray)).collect()
    }

    pub fn cone_is_smooth(&self, sigma: usize) -> bool {
        let m: Vec<Vec<i64>> = self.cones[sigma].iter().map(|&r| self.rays[r].vector.clone()).collect();
        m.len() == self.dim && linalg::det_i64(&m).abs() == 1
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.cones.len()).all(|s| self.cone_is_smooth(s))
    }

    /// `iota(m)`: the pairings `<m, rho>` for all rays.
    pub fn pairings(&self, m: &[i64]) -> Result<Vec<i64>> {
        if m.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: m.len() });
        }
        Ok(self.rays.iter().map(|r| r.vector.iter().zip(m).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn character_divisor(&self, m: &[i64]) -> Result<WeilDivisor> {
        let p = self.pairings(m)?;
        Ok(WeilDivisor::from_pairs(p.into_iter().enumerate().map(|(i, c)| (PrimeDivisor::Toric(i), c))))
    }

    pub fn dual_basis(&self, sigma: usize) -> Result<Vec<DualCovector>> {
        let cone = self.cones.get(sigma).ok_or_else(|| Error::UnknownName(format!("cone {sigma}")))?;
        let m: Vec<Vec<i64>> = cone.iter().map(|&r| self.rays[r].vector.clone()).collect();
        if m.len() != self.dim {
            return Err(Error::NotSmooth(sigma));
        }
        // rows of the ray matrix R; the duals are the columns of R^{-1}
        let inv = linalg::inverse_i64(&m).ok_or(Error::NotSmooth(sigma))?;
        if linalg::det_i64(&m).abs() != 1 {
            return Err(Error::NotSmooth(sigma));
        }
        Ok(cone
            .iter()
            .enumerate()
            .map(|(k, &rho)| DualCovector { sigma, rho, m: (0..self.dim).map(|i| inv[i][k]).collect() })
            .collect())
    }

    /// Torus coordinates `x1..xn` to Cox coordinates: `x^m` becomes the
    /// Laurent monomial `z^iota(m)`.
    pub fn torus_to_cox(&self, f: &RationalFunction) -> Result<RationalFunction> {
        if f.nvars() != self.dim {
            return Err(Error::CoordinateMismatch(format!(
                "expected {} torus variables, got {}",
                self.dim,
                f.nvars()
            )));
        }
        let conv = |p: &Polynomial| -> Result<RationalFunction> {
            let mut acc = RationalFunction::zero(self.nrays());
            for (m, c) in p.terms() {
                let e: Vec<i32> = self.pairings(&m.exps().iter().map(|&v| v as i64).collect::<Vec<_>>())?
                    .into_iter()
                    .map(|v| v as i32)
                    .collect();
                acc = &acc + &RationalFunction::laurent_monomial(&Monomial(e), c.clone());
            }
            Ok(acc)
        };
        conv(f.numer())?.checked_div(&conv(f.denom())?)
    }

    /// Laurent monomial `x^m` in torus coordinates.
    pub fn character(&self, m: &[i64]) -> RationalFunction {
        RationalFunction::laurent_monomial(&Monomial(m.iter().map(|&v| v as i32).collect()), Q::from_integer(1.into()))
    }

    /// Laurent monomial `z^iota(m)` in Cox coordinates.
    pub fn cox_character(&self, m: &[i64]) -> Result<RationalFunction> {
        let e = self.pairings(m)?;
        Ok(RationalFunction::laurent_monomial(&Monomial(e.iter().map(|&v| v as i32).collect()), Q::from_integer(1.into())))
    }
}

pub fn validate_fan(fan: &Fan) -> FanReport {
    let mut v = Vec::new();
    for r in &fan.rays {
        if r.vector.len() != fan.dim {
            v.push(format!("ray {} has length {}, expected {}", r.id, r.vector.len(), fan.dim));
            continue;
        }
        let g = r.vector.iter().fold(0, |a, &b| gcd(a, b));
        if g == 0 {
            v.push(format!("ray {} is zero", r.id));
        } else if g != 1 {
            v.push(format!("ray {} is not primitive", r.id));
        }
    }
    for i in 0..fan.rays.len() {
        for j in i + 1..fan.rays.len() {
            if fan.rays[i].vector == fan.rays[j].vector {
                v.push(format!("rays {i} and {j} coincide"));
            }
        }
    }
    if !v.is_empty() {
        return FanReport { ok: false, violations: v };
    }
    let rows = linalg::from_ints(&fan.rays.iter().map(|r| r.vector.clone()).collect::<Vec<_>>());
    if linalg::rank(&rows) < fan.dim {
        v.push("rays do not span".into());
    }
    for (s, cone) in fan.cones.iter().enumerate() {
        if let Some(&bad) = cone.iter().find(|&&r| r >= fan.rays.len()) {
            v.push(format!("cone {s} refers to unknown ray {bad}"));
            continue;
        }
        if cone.len() != fan.dim {
            v.push(format!("cone {s} has {} rays, expected {}", cone.len(), fan.dim));
            continue;
        }
        let m: Vec<Vec<i64>> = cone.iter().map(|&r| fan.rays[r].vector.clone()).collect();
        let d = linalg::det_i64(&m).abs();
        if d != 1 {
            v.push(format!("cone {s} is not smooth: |det| = {d}"));
        }
    }
    for r in 0..fan.rays.len() {
        if !fan.cones.iter().any(|c| c.contains(&r)) {
            v.push(format!("ray {r} lies in no maximal cone"));
        }
    }
    FanReport { ok: v.is_empty(), violations: v }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn affine(n: usize) -> Fan {
    let rays = (0..n).map(|i| Ray { id: i, vector: unit(n, i), name: format!("H{}", i + 1) }).collect();
    Fan { dim: n, rays, cones: vec![(0..n).collect()], label: format!("affine({n})") }
}

/// Projective space; ray 0 is `-(e1+..+en)` so that ray `i` matches `z_i`.
pub fn projective(n: usize) -> Fan {
    let mut rays = vec![Ray { id: 0, vector: vec![-1; n], name: "H0".into() }];
    rays.extend((1..=n).map(|i| Ray { id: i, vector: unit(n, i - 1), name: format!("H{i}") }));
    let cones = (0..=n).map(|skip| (0..=n).filter(|&r| r != skip).collect()).collect();
    Fan { dim: n, rays, cones, label: format!("projective({n})") }
}

/// Product of `n` projective lines; rays `+e_i`, `-e_i` in that order.
pub fn p1_power(n: usize) -> Fan {
    let mut rays = Vec::new();
    for i in 0..n {
        let e = unit(n, i);
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        rays.push(Ray { id: 2 * i, vector: e, name: format!("D{}", 2 * i) });
        rays.push(Ray { id: 2 * i + 1, vector: neg, name: format!("D{}", 2 * i + 1) });
    }
    let cones = (0..1usize << n)
        .map(|mask| (0..n).map(|i| 2 * i + ((mask >> i) & 1)).collect())
        .collect();
    Fan { dim: n, rays, cones, label: format!("p1_power({n})") }
}

pub fn builtin_fan(name: &str) -> Result<Fan> {
    let name = name.trim();
    let arg = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_suffix(')')?.trim().parse().ok().filter(|&n| n >= 1)
    };
    let short = |prefix: char| -> Option<usize> {
        name.strip_prefix(prefix)?.parse().ok().filter(|&n: &usize| n >= 1)
    };
    if let Some(n) = arg("affine(").or_else(|| short('A')) {
        return Ok(affine(n));
    }
    if let Some(n) = arg("projective(").or_else(|| short('P')) {
        return Ok(projective(n));
    }
    if let Some(n) = arg("p1_power(") {
        return Ok(p1_power(n));
    }
    match name {
        "P1xP1" | "P1^2" => Ok(p1_power(2)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for name in ["A3", "P2", "P4", "P1xP1", "affine(5)", "projective(3)"] {
            let f = builtin_fan(name).unwrap();
            assert!(validate_fan(&f).ok, "{name}");
        }
        let p4 = builtin_fan("projective(4)").unwrap();
        assert_eq!((p4.nrays(), p4.cones().len()), (5, 5));
        let a3 = builtin_fan("affine(3)").unwrap();
        assert_eq!((a3.nrays(), a3.cones().len()), (3, 1));
        let pp = builtin_fan("P1xP1").unwrap();
        assert_eq!((pp.nrays(), pp.cones().len()), (4, 4));
        assert!(builtin_fan("Q7").is_err());
    }

    #[test]
    fn validation_failures() {
        let f = Fan::from_spec(&FanSpec { dim: 2, rays: vec![vec![1, 0]], cones: vec![] });
        assert!(validate_fan(&f).violations.iter().any(|v| v.contains("span")));
        let f = Fan::from_spec(&FanSpec { dim: 2, rays: vec![vec![0, 1], vec![2, -1]], cones: vec![vec![0, 1]] });
        let r = validate_fan(&f);
        assert!(!r.ok && r.violations.iter().any(|v| v.contains("|det| = 2")));
    }

    #[test]
    fn dual_basis_examples() {
        let f = Fan::new(&FanSpec { dim: 2, rays: vec![vec![1, 0], vec![1, 1]], cones: vec![vec![0, 1]] }).unwrap();
        let d = f.dual_basis(0).unwrap();
        assert_eq!(d[0].m, vec![1, -1]);
        assert_eq!(d[1].m, vec![0, 1]);
    }
}
