use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Decoration, Element, Evaluator, Shape};
use crate::arith::RationalFunction;
use crate::divisors::{ord_at, Coeff, PrimeDivisor};
use crate::error::{Error, Result};
use crate::linalg;
use crate::random::KSampler;
use crate::toric::Fan;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 500, seed: 42 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub axiom: String,
    pub sample: usize,
    pub prime: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub primes: Vec<String>,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub samples: usize,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// Functions `h` for which `(f/g)(P) = h(P)` is worth hitting on purpose.
pub(super) fn hints(d: &Decoration, nvars: usize) -> Vec<RationalFunction> {
    match d {
        Decoration::Phi(hs) => hs.iter().map(|(_, h)| h.clone()).filter(|h| h.nvars() == nvars).collect(),
        Decoration::HM(u) => (0..u.fan().nrays()).filter_map(|r| u.h(r, nvars).ok()).collect(),
        Decoration::DirectSum(parts) => parts.iter().flat_map(|p| hints(p, nvars)).collect(),
        _ => Vec::new(),
    }
}

fn random_component(s: &mut KSampler) -> RationalFunction {
    s.maybe_zero(0.15)
}

fn random_element(s: &mut KSampler, shape: &Shape, hs: &[RationalFunction]) -> Element {
    let mut flat: Vec<RationalFunction> = (0..shape.len()).map(|_| random_component(s)).collect();
    if flat.iter().all(RationalFunction::is_zero) {
        flat[0] = s.nonzero();
    }
    // pairs whose ratio has a prescribed residue somewhere
    if matches!(shape, Shape::Pair) && !hs.is_empty() && s.rng().gen_bool(0.4) {
        let h = hs[s.rng().gen_range(0..hs.len())].clone();
        let g = s.nonzero();
        let mut f = &h * &g;
        if s.rng().gen_bool(0.5) {
            let t = s.small();
            let c = s.constant();
            f = &f + &(&(&g * &t) * &c);
        }
        flat = vec![f, g];
    }
    shape.unflatten(&flat).expect("shape length")
}

/// A second element that often cancels against `v` in some components.
fn companion(s: &mut KSampler, v: &Element, hs: &[RationalFunction]) -> Element {
    let shape = v.shape();
    match s.rng().gen_range(0..3) {
        0 => random_element(s, &shape, hs),
        _ => {
            let flat: Vec<RationalFunction> = v
                .flatten()
                .iter()
                .map(|c| match s.rng().gen_range(0..4) {
                    0 => random_component(s),
                    1 => c.clone(),
                    _ => {
                        let t = s.small();
                        let k = s.constant();
                        -&(c * &(&RationalFunction::one(c.nvars()) + &(&t * &k)))
                    }
                })
                .collect();
            let e = shape.unflatten(&flat).unwrap();
            if e.is_zero() {
                random_element(s, &shape, hs)
            } else {
                e
            }
        }
    }
}

fn render(v: &Element, fan: &Fan) -> String {
    let names: Vec<String> = if v.nvars() == fan.nrays() && fan.is_projective_space() {
        (0..v.nvars()).map(|i| format!("z{i}")).collect()
    } else {
        (1..=v.nvars()).map(|i| format!("x{i}")).collect()
    };
    let parts: Vec<String> = v.flatten().iter().map(|f| f.render(&names)).collect();
    format!("[{}]", parts.join(", "))
}

fn first_failure(results: Vec<Result<Option<Counterexample>>>) -> Result<Option<Counterexample>> {
    for r in results {
        if let Some(c) = r? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Random falsification test of the decoration axioms at the listed primes.
///
/// Samples are drawn sequentially from the seed, then evaluated in parallel;
/// the report is independent of scheduling.
pub fn axioms_check(d: &dyn Evaluator, fan: &Fan, primes: &[PrimeDivisor], config: SampleConfig) -> Result<AxiomReport> {
    let mut s = KSampler::new(fan, primes, config.seed);
    let shape = d.shape(fan);
    let hs = d.hints(s.nvars());
    let samples: Vec<(Element, Element, RationalFunction)> = (0..config.samples)
        .map(|_| {
            let v = random_element(&mut s, &shape, &hs);
            let w = companion(&mut s, &v, &hs);
            let f = s.multiplier();
            (v, w, f)
        })
        .collect();
    let zero = samples.first().map(|x| x.0.zero_like());
    let results: Vec<Result<Option<Counterexample>>> = samples
        .par_iter()
        .enumerate()
        .map(|(i, (v, w, f))| {
            for p in primes {
                let fail = |axiom: &str, detail: String| {
                    Ok(Some(Counterexample { axiom: axiom.into(), sample: i, prime: p.name(fan), detail }))
                };
                let cv = d.coeff(fan, v, p)?;
                if cv.is_inf() != v.is_zero() {
                    return fail("W0", format!("W(v) = {cv} for v = {}", render(v, fan)));
                }
                let cfv = d.coeff(fan, &v.scale(f), p)?;
                let expected = match (ord_at(f, p, fan)?, cv) {
                    (Coeff::Fin(a), c) => c.plus(a),
                    (Coeff::Inf, _) => Coeff::Inf,
                };
                if cfv != expected {
                    return fail("W1", format!("W(f v) = {cfv}, expected {expected}, v = {}", render(v, fan)));
                }
                let cw = d.coeff(fan, w, p)?;
                let sum = v.add(w)?;
                let cs = d.coeff(fan, &sum, p)?;
                if cs < cv.min(cw) {
                    return fail(
                        "W2",
                        format!("W(v + v') = {cs} < min({cv}, {cw}), v = {}, v' = {}", render(v, fan), render(w, fan)),
                    );
                }
            }
            Ok(None)
        })
        .collect();
    let mut counterexample = first_failure(results)?;
    if counterexample.is_none() {
        if let Some(z) = zero {
            for p in primes {
                let c = d.coeff(fan, &z, p)?;
                if !c.is_inf() {
                    counterexample =
                        Some(Counterexample { axiom: "W0".into(), sample: 0, prime: p.name(fan), detail: format!("W(0) = {c}") });
                    break;
                }
            }
        }
    }
    Ok(AxiomReport {
        samples: config.samples,
        primes: primes.iter().map(|p| p.name(fan)).collect(),
        checks: config.samples * primes.len() * 3,
        passed: counterexample.is_none(),
        counterexample,
    })
}

fn apply(mu: &[Vec<RationalFunction>], v: &[RationalFunction]) -> Vec<RationalFunction> {
    let n = v.first().map_or(0, RationalFunction::nvars);
    mu.iter()
        .map(|row| row.iter().zip(v).fold(RationalFunction::zero(n), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

/// Checks `W(v) <= W'(mu v)` on random samples.
pub fn morphism_check(
    mu: &[Vec<RationalFunction>],
    d: &Decoration,
    d2: &Decoration,
    fan: &Fan,
    primes: &[PrimeDivisor],
    config: SampleConfig,
) -> Result<CheckReport> {
    let (src, dst) = (d.shape(fan), d2.shape(fan));
    if mu.len() != dst.len() {
        return Err(Error::DimensionMismatch { expected: dst.len(), got: mu.len() });
    }
    if let Some(row) = mu.iter().find(|r| r.len() != src.len()) {
        return Err(Error::DimensionMismatch { expected: src.len(), got: row.len() });
    }
    let mut s = KSampler::new(fan, primes, config.seed);
    let hs = hints(d, s.nvars());
    let samples: Vec<Element> = (0..config.samples).map(|_| random_element(&mut s, &src, &hs)).collect();
    let results: Vec<Result<Option<Counterexample>>> = samples
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let image = dst.unflatten(&apply(mu, &v.flatten()))?;
            for p in primes {
                let (a, b) = (d.coeff(fan, v, p)?, d2.coeff(fan, &image, p)?);
                if a > b {
                    return Ok(Some(Counterexample {
                        axiom: "morphism".into(),
                        sample: i,
                        prime: p.name(fan),
                        detail: format!("W(v) = {a} > W'(mu v) = {b}, v = {}", render(v, fan)),
                    }));
                }
            }
            Ok(None)
        })
        .collect();
    let counterexample = first_failure(results)?;
    Ok(CheckReport { samples: config.samples, checks: config.samples * primes.len(), passed: counterexample.is_none(), counterexample })
}

fn independent(basis: &[Element], s: &mut KSampler) -> bool {
    let n = s.nvars();
    let mut tries = 0;
    while tries < 8 {
        let point = s.int_point(n);
        let rows: Option<Vec<Vec<_>>> =
            basis.iter().map(|b| b.flatten().iter().map(|f| f.eval(&point).ok()).collect()).collect();
        if let Some(rows) = rows {
            if linalg::rank(&rows) == basis.len() {
                return true;
            }
            tries += 1;
        }
    }
    false
}

/// Falsification test of `P`-orthogonality:
/// `W(sum f_i v_i)_P = min(ord_P f_i + W(v_i)_P)` on random and directed
/// coefficient vectors.
pub fn orthogonality_check(basis: &[Element], d: &Decoration, fan: &Fan, p: &PrimeDivisor, config: SampleConfig) -> Result<CheckReport> {
    let mut s = KSampler::new(fan, std::slice::from_ref(p), config.seed);
    let shape = d.shape(fan);
    if basis.is_empty() || basis.iter().any(|b| b.shape() != shape) {
        return Err(Error::KindMismatch("basis elements must match the decoration".into()));
    }
    if !independent(basis, &mut s) {
        return Err(Error::LinearlyDependent);
    }
    let mut hs = hints(d, s.nvars());
    hs.push(RationalFunction::one(s.nvars()));
    let k = basis.len();
    let samples: Vec<Vec<RationalFunction>> = (0..config.samples)
        .map(|_| {
            let mut fs: Vec<RationalFunction> = (0..k)
                .map(|_| match s.rng().gen_range(0..3) {
                    0 => s.constant(),
                    1 => s.multiplier(),
                    _ => s.maybe_zero(0.2),
                })
                .collect();
            if k > 1 && s.rng().gen_bool(0.5) {
                let i = s.rng().gen_range(0..k);
                let j = (i + s.rng().gen_range(1..k)) % k;
                let h = hs[s.rng().gen_range(0..hs.len())].clone();
                let sign = if s.rng().gen_bool(0.5) { h.clone() } else { -&h };
                fs[i] = &fs[j] * &sign;
            }
            if fs.iter().all(RationalFunction::is_zero) {
                fs[0] = RationalFunction::one(s.nvars());
            }
            fs
        })
        .collect();
    let base: Vec<Coeff> = basis.iter().map(|b| d.coeff(fan, b, p)).collect::<Result<_>>()?;
    let results: Vec<Result<Option<Counterexample>>> = samples
        .par_iter()
        .enumerate()
        .map(|(i, fs)| {
            let mut v = basis[0].zero_like();
            let mut expected = Coeff::Inf;
            for ((f, b), c) in fs.iter().zip(basis).zip(&base) {
                v = v.add(&b.scale(f))?;
                if let Coeff::Fin(o) = ord_at(f, p, fan)? {
                    expected = expected.min(c.plus(o));
                }
            }
            let got = d.coeff(fan, &v, p)?;
            if got != expected {
                return Ok(Some(Counterexample {
                    axiom: "orthogonality".into(),
                    sample: i,
                    prime: p.name(fan),
                    detail: format!("W(v) = {got}, min = {expected}, v = {}", render(&v, fan)),
                }));
            }
            Ok(None)
        })
        .collect();
    let counterexample = first_failure(results)?;
    Ok(CheckReport { samples: config.samples, checks: config.samples, passed: counterexample.is_none(), counterexample })
}
