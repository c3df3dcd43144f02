use serde::{Deserialize, Serialize};

use crate::arith::{Monomial, RationalFunction};
use crate::error::{Error, Result};
use crate::toric::{affine, builtin_fan, projective, Fan};

/// The matrix of the classical Horrocks–Mumford bundle on P4.
pub const CLASSICAL: [[i64; 5]; 5] = [
    [0, 1, -1, -1, 1],
    [1, 0, 1, -1, -1],
    [-1, 1, 0, 1, -1],
    [-1, -1, 1, 0, 1],
    [1, -1, -1, 1, 0],
];

/// One character `u_rho` per ray with `<u_rho, rho> = 0`.
///
/// `matrix` row `rho` holds `iota(u_rho)` in the basis of toric divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UData {
    fan: Fan,
    matrix: Vec<Vec<i64>>,
    chars: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UReport {
    pub ok: bool,
    pub violations: Vec<String>,
    /// Recorded for information only.
    pub symmetric: bool,
}

/// JSON form: `{"fan": "...", "matrix": [[...]]}` or `{"fan": "...", "assignments": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UInput {
    pub fan: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignments: Option<Vec<Vec<i64>>>,
}

/// Solves `iota(m) = row`, if possible.
fn character_of_row(fan: &Fan, row: &[i64]) -> Option<Vec<i64>> {
    let sigma = (0..fan.cones().len()).find(|&s| fan.cone_is_smooth(s))?;
    let duals = fan.dual_basis(sigma).ok()?;
    let mut m = vec![0; fan.dim()];
    for d in &duals {
        for (mi, di) in m.iter_mut().zip(&d.m) {
            *mi += row[d.rho] * di;
        }
    }
    (fan.pairings(&m).ok()? == row).then_some(m)
}

pub fn validate_u(fan: &Fan, matrix: &[Vec<i64>]) -> UReport {
    let n = fan.nrays();
    let mut v = Vec::new();
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        v.push(format!("matrix must be {n}x{n}"));
        return UReport { ok: false, violations: v, symmetric: false };
    }
    for (r, row) in matrix.iter().enumerate() {
        if row[r] != 0 {
            v.push(format!("diagonal entry ({r},{r}) is {}, must vanish", row[r]));
        }
        if character_of_row(fan, row).is_none() {
            if fan.is_projective_space() {
                v.push(format!("row {r} does not sum to zero"));
            } else {
                v.push(format!("row {r} is not the divisor of a character"));
            }
        }
    }
    let symmetric = (0..n).all(|i| (0..n).all(|j| matrix[i][j] == matrix[j][i]));
    UReport { ok: v.is_empty(), violations: v, symmetric }
}

impl UData {
    pub fn new(fan: &Fan, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let report = validate_u(fan, &matrix);
        if !report.ok {
            return Err(Error::InvalidU(report.violations.join("; ")));
        }
        let chars = matrix.iter().map(|r| character_of_row(fan, r).unwrap()).collect();
        Ok(UData { fan: fan.clone(), matrix, chars })
    }

    pub fn from_assignments(fan: &Fan, chars: Vec<Vec<i64>>) -> Result<Self> {
        if chars.len() != fan.nrays() {
            return Err(Error::InvalidU(format!("expected {} characters, got {}", fan.nrays(), chars.len())));
        }
        let matrix = chars.iter().map(|m| fan.pairings(m)).collect::<Result<Vec<_>>>()?;
        Self::new(fan, matrix)
    }

    pub fn from_input(input: &UInput) -> Result<Self> {
        let fan = builtin_fan(&input.fan)?;
        match (&input.matrix, &input.assignments) {
            (Some(m), None) => Self::new(&fan, m.clone()),
            (None, Some(a)) => Self::from_assignments(&fan, a.clone()),
            _ => Err(Error::InvalidU("give exactly one of `matrix` and `assignments`".into())),
        }
    }

    pub fn zero(fan: &Fan) -> Self {
        let n = fan.nrays();
        UData { fan: fan.clone(), matrix: vec![vec![0; n]; n], chars: vec![vec![0; fan.dim()]; n] }
    }

    pub fn classical() -> Self {
        Self::new(&projective(4), CLASSICAL.iter().map(|r| r.to_vec()).collect()).expect("classical matrix is valid")
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `u_rho` as a lattice vector.
    pub fn character(&self, rho: usize) -> &[i64] {
        &self.chars[rho]
    }

    pub fn is_zero_at(&self, rho: usize) -> bool {
        self.matrix[rho].iter().all(|&c| c == 0)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.len()).all(|r| self.is_zero_at(r))
    }

    pub fn is_symmetric(&self) -> bool {
        validate_u(&self.fan, &self.matrix).symmetric
    }

    /// `x^{u_rho}` in the coordinates of a function with `nvars` variables.
    pub fn h(&self, rho: usize, nvars: usize) -> Result<RationalFunction> {
        if nvars == self.fan.nrays() {
            self.fan.cox_character(&self.chars[rho])
        } else if nvars == self.fan.dim() {
            Ok(self.fan.character(&self.chars[rho]))
        } else {
            Err(Error::CoordinateMismatch(format!("{nvars} variables")))
        }
    }

    /// Positive and negative parts of row `i` on affine space.
    pub fn split_row(&self, i: usize) -> (Monomial, Monomial) {
        Monomial(self.matrix[i].iter().map(|&v| v as i32).collect()).split_signs()
    }

    /// Restriction to the chart `z_nu != 0` of projective space: delete row
    /// and column `nu`.
    pub fn chart(&self, nu: usize) -> Result<UData> {
        if !self.fan.is_projective_space() {
            return Err(Error::UnsupportedKind("chart restriction needs projective space".into()));
        }
        let n = self.fan.dim();
        let m: Vec<Vec<i64>> = (0..=n)
            .filter(|&r| r != nu)
            .map(|r| (0..=n).filter(|&c| c != nu).map(|c| self.matrix[r][c]).collect())
            .collect();
        UData::new(&affine(n), m)
    }

    pub fn require_affine(&self) -> Result<usize> {
        if self.fan.is_affine_space() {
            Ok(self.fan.dim())
        } else {
            Err(Error::InvalidU("an affine-space matrix is required".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let r = validate_u(&projective(4), &CLASSICAL.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        assert!(r.ok && r.symmetric);
        let a3 = affine(3);
        assert!(validate_u(&a3, &[vec![0, 1, 0], vec![1, 0, -1], vec![0, -1, 0]]).ok);
        let r = validate_u(&a3, &[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        assert!(!r.ok && r.violations[0].contains("diagonal"));
        let r = validate_u(&projective(2), &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        assert!(r.violations.iter().any(|v| v.contains("sum to zero")));
    }

    #[test]
    fn chart_deletes_row_and_column() {
        let c = UData::classical().chart(0).unwrap();
        assert_eq!(c.matrix(), &[vec![0, 1, -1, -1], vec![1, 0, 1, -1], vec![-1, 1, 0, 1], vec![-1, -1, 1, 0]]);
    }

    #[test]
    fn classical_h() {
        let u = UData::classical();
        let h1 = u.h(1, 5).unwrap();
        let expected = crate::arith::Ring::cox(5).parse("z0*z2/(z3*z4)").unwrap();
        assert_eq!(h1, expected);
    }
}
