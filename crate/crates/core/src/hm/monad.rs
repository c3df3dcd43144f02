use rand::Rng;
use serde::Serialize;

use super::UData;
use crate::arith::{q, Ring, RationalFunction, Q};
use crate::decorations::{hm_coeff, lambda2t_coeff, seminorm_phi};
use crate::divisors::{ord_at, Coeff, PrimeDivisor};
use crate::error::Result;
use crate::linalg::{self, Matrix};
use crate::random::KSampler;
use crate::toric::{projective, Fan};

const A0: [[i64; 5]; 6] = [
    [0, 0, 0, 1, 1],
    [0, 0, 0, 1, 0],
    [0, 0, 1, 1, 0],
    [1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 1, 1, 0, 0],
];

const B0: [[i64; 5]; 6] = [
    [0, 1, 0, 0, 0],
    [0, 0, -1, 0, -1],
    [1, 0, 0, 0, 0],
    [0, -1, 0, 0, -1],
    [0, -1, 0, -1, 0],
    [0, 0, 0, 0, 1],
];

const PHI_DIAG: [i64; 6] = [1, -1, 1, 1, -1, 1];
const ALPHA_PLUS: [i64; 6] = [0, 1, 0, 1, 1, 0];
const ALPHA_MINUS: [i64; 6] = [1, 0, 1, 0, 0, 1];
const D_A: [&str; 5] = ["z0^2/(z2*z3)", "z1^2/(z3*z4)", "z2^2/(z0*z4)", "z3^2/(z0*z1)", "z4^2/(z1*z2)"];
const D_B: [&str; 5] = ["z0^2/(z1*z4)", "z1^2/(z0*z2)", "z2^2/(z1*z3)", "z3^2/(z2*z4)", "z4^2/(z0*z3)"];

type FMatrix = Vec<Vec<RationalFunction>>;

/// The matrices of the classical monad on P4, in the basis
/// `[12],[13],[14],[23],[24],[34]` of the second exterior power.
#[derive(Clone, Debug)]
pub struct MonadData {
    pub a0: Vec<Vec<i64>>,
    pub b0: Vec<Vec<i64>>,
    pub phi: Vec<Vec<i64>>,
    pub d_a: Vec<RationalFunction>,
    pub d_b: Vec<RationalFunction>,
    pub alpha_plus: Vec<i64>,
    pub alpha_minus: Vec<i64>,
    pub a: FMatrix,
    pub b: FMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadReport {
    pub ok: bool,
    pub checks: Vec<MonadCheck>,
}

fn constant(c: i64) -> RationalFunction {
    RationalFunction::constant(5, q(c))
}

fn scaled_columns(m: &[[i64; 5]; 6], d: &[RationalFunction]) -> FMatrix {
    m.iter().map(|row| row.iter().zip(d).map(|(&c, dc)| dc.scale(&q(c))).collect()).collect()
}

pub fn classical_matrices() -> MonadData {
    let ring = Ring::cox(5);
    let parse = |s: &&str| ring.parse(s).expect("fixed expression");
    let d_a: Vec<RationalFunction> = D_A.iter().map(parse).collect();
    let d_b: Vec<RationalFunction> = D_B.iter().map(parse).collect();
    let phi = (0..6).map(|i| (0..6).map(|j| if i + j == 5 { PHI_DIAG[i] } else { 0 }).collect()).collect();
    MonadData {
        a0: A0.iter().map(|r| r.to_vec()).collect(),
        b0: B0.iter().map(|r| r.to_vec()).collect(),
        phi,
        a: scaled_columns(&A0, &d_a),
        b: scaled_columns(&B0, &d_b),
        d_a,
        d_b,
        alpha_plus: ALPHA_PLUS.to_vec(),
        alpha_minus: ALPHA_MINUS.to_vec(),
    }
}

fn ftranspose(m: &FMatrix) -> FMatrix {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn fmul(a: &FMatrix, b: &FMatrix) -> FMatrix {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    row.iter().zip(b).fold(RationalFunction::zero(5), |acc, (x, brow)| {
                        if x.is_zero() || brow[j].is_zero() {
                            acc
                        } else {
                            &acc + &(x * &brow[j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn lift_ints(m: &[Vec<i64>]) -> FMatrix {
    m.iter().map(|r| r.iter().map(|&c| constant(c)).collect()).collect()
}

impl MonadData {
    /// `S = [[A, 0, alpha-], [B, -alpha+, 0]]`, a 12 x 7 matrix.
    pub fn s_matrix(&self) -> FMatrix {
        let mut s = Vec::with_capacity(12);
        for (r, row) in self.a.iter().enumerate() {
            let mut v = row.clone();
            v.push(constant(0));
            v.push(constant(self.alpha_minus[r]));
            s.push(v);
        }
        for (r, row) in self.b.iter().enumerate() {
            let mut v = row.clone();
            v.push(constant(-self.alpha_plus[r]));
            v.push(constant(0));
            s.push(v);
        }
        s
    }

    /// The pair `(A h + f alpha-, B h - g alpha+)` of exterior-square vectors.
    pub fn lift(&self, h: &[RationalFunction], f: &RationalFunction, g: &RationalFunction) -> (Vec<RationalFunction>, Vec<RationalFunction>) {
        let apply = |m: &FMatrix, alpha: &[i64], c: &RationalFunction, sign: i64| -> Vec<RationalFunction> {
            m.iter()
                .zip(alpha)
                .map(|(row, &al)| {
                    let mut acc = row.iter().zip(h).fold(RationalFunction::zero(5), |acc, (x, y)| {
                        if x.is_zero() || y.is_zero() {
                            acc
                        } else {
                            &acc + &(x * y)
                        }
                    });
                    if al != 0 {
                        acc = &acc + &c.scale(&q(sign * al));
                    }
                    acc
                })
                .collect()
        };
        (apply(&self.a, &self.alpha_minus, f, 1), apply(&self.b, &self.alpha_plus, g, -1))
    }
}

fn check(name: &str, passed: bool, detail: String) -> MonadCheck {
    MonadCheck { name: name.into(), passed, detail }
}

/// Verifies the monad identities exactly.
pub fn monad_verify() -> MonadReport {
    let m = classical_matrices();
    let phi = linalg::from_ints(&m.phi);
    let (a0, b0) = (linalg::from_ints(&m.a0), linalg::from_ints(&m.b0));
    let mut checks = Vec::new();

    let prod = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&b0), &phi), &a0);
    checks.push(check("B0^T Phi A0 = Id5", prod == linalg::identity(5), "constant 5x5 product".into()));

    let phif = lift_ints(&m.phi);
    let upper = fmul(&fmul(&ftranspose(&m.b), &phif), &m.a);
    let lower = fmul(&fmul(&ftranspose(&m.a), &phif), &m.b);
    let ring = Ring::cox(5);
    let diag: Vec<RationalFunction> =
        (0..5).map(|i| ring.parse(&format!("z{i}^5/(z0*z1*z2*z3*z4)")).expect("fixed expression")).collect();
    let is_d = |x: &FMatrix| (0..5).all(|i| (0..5).all(|j| if i == j { x[i][j] == diag[i] } else { x[i][j].is_zero() }));
    let names = ring.names().to_vec();
    checks.push(check(
        "B^T Phi A = A^T Phi B = D",
        is_d(&upper) && is_d(&lower),
        format!("D[0][0] = {}", upper[0][0].render(&names)),
    ));

    let kernel_ok = |c: &Matrix, alpha: &[i64]| {
        let k = linalg::kernel(&linalg::mat_mul(&linalg::transpose(c), &phi), 6);
        k.len() == 1 && linalg::rank(&vec![k[0].clone(), alpha.iter().map(|&v| q(v)).collect()]) == 1
    };
    let kp = kernel_ok(&a0, &m.alpha_plus);
    let km = kernel_ok(&b0, &m.alpha_minus);
    checks.push(check(
        "ker A0^T Phi = <alpha+>, ker B0^T Phi = <alpha->",
        kp && km,
        "alpha+ = [13]+[23]+[24], alpha- = [12]+[14]+[34]".into(),
    ));

    let s = m.s_matrix();
    let point: Vec<Q> = [2, 3, 5, 7, 11].iter().map(|&v| q(v)).collect();
    let eval: Matrix = s.iter().map(|r| r.iter().map(|x| x.eval(&point).expect("no poles at the point")).collect()).collect();
    let r = linalg::rank(&eval);
    checks.push(check("rank S = 7", r == 7, format!("rank at (2,3,5,7,11) is {r}")));

    MonadReport { ok: checks.iter().all(|c| c.passed), checks }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotReport {
    pub samples: usize,
    pub closed_form_checks: usize,
    pub lift_checks: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

/// `h_nu = z_{nu+1} z_{nu-1} / (z_{nu+2} z_{nu-2})`, indices mod 5.
pub fn classical_h(nu: usize) -> RationalFunction {
    let z = |k: usize| RationalFunction::var(5, k % 5);
    &(&z(nu + 1) * &z(nu + 4)) / &(&z(nu + 2) * &z(nu + 3))
}

fn lifted_value(m: &MonadData, h: &[RationalFunction], f: &RationalFunction, g: &RationalFunction, p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    let (top, bottom) = m.lift(h, f, g);
    Ok(lambda2t_coeff(&top, p, fan)?.min(lambda2t_coeff(&bottom, p, fan)?))
}

/// Compares the closed-form decoration of the classical bundle with the
/// case formula, and checks that lifts through the monad never exceed it.
pub fn classical_decoration_spotcheck(samples: usize, seed: u64) -> Result<SpotReport> {
    let fan = projective(4);
    let u = UData::classical();
    let m = classical_matrices();
    let ring = Ring::cox(5);
    let hyper = PrimeDivisor::projective_hypersurface(ring.parse("z0+z1+z2+z3+z4").expect("fixed").numer())?;
    let mut primes = fan.toric_primes();
    primes.push(hyper);
    let mut s = KSampler::new(&fan, &primes, seed);
    let mut failure = None;
    let (mut closed, mut lifts) = (0, 0);
    for nu in 0..5 {
        if u.h(nu, 5)? != classical_h(nu) {
            failure = Some(format!("h_{nu} differs from the matrix character"));
        }
    }
    let one = RationalFunction::one(5);
    'outer: for i in 0..samples {
        let (f, g) = match i % 4 {
            0 => (s.nonzero(), s.nonzero()),
            1 => {
                let g = s.nonzero();
                (&classical_h(i / 4 % 5) * &g, g)
            }
            2 => (one.clone(), one.clone()),
            _ => {
                let g = s.laurent();
                (s.laurent(), g)
            }
        };
        let h: Vec<RationalFunction> = (0..5)
            .map(|_| if s.rng().gen_bool(0.5) { s.laurent() } else { s.maybe_zero(0.3) })
            .collect();
        for p in &primes {
            let w = hm_coeff(&u, &f, &g, p, &fan)?;
            let case = match p {
                PrimeDivisor::Toric(nu) => seminorm_phi(&classical_h(*nu), p, &f, &g, &fan)?,
                _ => ord_at(&f, p, &fan)?.min(ord_at(&g, p, &fan)?),
            };
            closed += 1;
            if w != case {
                failure = Some(format!("sample {i} at {}: closed form {w}, case formula {case}", p.name(&fan)));
                break 'outer;
            }
            let zero = vec![RationalFunction::zero(5); 5];
            let base = lifted_value(&m, &zero, &f, &g, p, &fan)?;
            let plain = ord_at(&f, p, &fan)?.min(ord_at(&g, p, &fan)?);
            let lifted = lifted_value(&m, &h, &f, &g, p, &fan)?;
            lifts += 2;
            if base != plain {
                failure = Some(format!("sample {i} at {}: zero lift gives {base}, expected {plain}", p.name(&fan)));
                break 'outer;
            }
            if lifted > w {
                failure = Some(format!("sample {i} at {}: lift gives {lifted} > {w}", p.name(&fan)));
                break 'outer;
            }
        }
    }
    Ok(SpotReport { samples, closed_form_checks: closed, lift_checks: lifts, passed: failure.is_none(), failure })
}
