//! Seeded random elements of the function field.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{q, Monomial, Polynomial, RationalFunction, Q};
use crate::divisors::PrimeDivisor;
use crate::toric::Fan;

const COEFFS: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (1, 2), (-1, 3), (5, 1)];

/// Draws Laurent polynomials times powers of uniformizers.
///
/// On projective space functions are written in Cox coordinates as degree-0
/// fractions, elsewhere in torus coordinates.
pub struct KSampler {
    rng: ChaCha8Rng,
    fan: Fan,
    cox: bool,
    uniformizers: Vec<RationalFunction>,
}

impl KSampler {
    pub fn new(fan: &Fan, primes: &[PrimeDivisor], seed: u64) -> Self {
        let cox = fan.is_projective_space();
        let mut s = KSampler { rng: ChaCha8Rng::seed_from_u64(seed), fan: fan.clone(), cox, uniformizers: Vec::new() };
        let mut us: Vec<RationalFunction> = Vec::new();
        for p in primes {
            if let Some(t) = s.uniformizer(p) {
                if !us.contains(&t) {
                    us.push(t);
                }
            }
        }
        s.uniformizers = us;
        s
    }

    pub fn nvars(&self) -> usize {
        if self.cox {
            self.fan.nrays()
        } else {
            self.fan.dim()
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniformizers(&self) -> &[RationalFunction] {
        &self.uniformizers
    }

    /// A function of order one along `p`, if one is easy to write down.
    pub fn uniformizer(&self, p: &PrimeDivisor) -> Option<RationalFunction> {
        let n = self.nvars();
        match p {
            PrimeDivisor::Toric(rho) if self.cox => {
                let other = (rho + 1) % self.fan.nrays();
                Some(&RationalFunction::var(n, *rho) / &RationalFunction::var(n, other))
            }
            PrimeDivisor::Toric(rho) => {
                let sigma = *self.fan.cones_containing(*rho).first()?;
                let duals = self.fan.dual_basis(sigma).ok()?;
                let d = duals.iter().find(|d| d.rho == *rho)?;
                Some(self.fan.character(&d.m))
            }
            PrimeDivisor::AffineHypersurface(h) if !self.cox && h.nvars() == n => Some(RationalFunction::from_poly(h.clone())),
            PrimeDivisor::ProjectiveHypersurface(h) if self.cox && h.nvars() == n => {
                let d = h.total_degree().unwrap_or(0) as u32;
                let z0 = Polynomial::var(n, 0).pow(d);
                RationalFunction::new(h.clone(), z0).ok()
            }
            _ => None,
        }
    }

    pub fn coefficient(&mut self) -> Q {
        let (a, b) = *COEFFS.choose(&mut self.rng).unwrap();
        Q::new(a.into(), b.into())
    }

    /// `x^m` for a lattice vector `m`, in the sampler's coordinates.
    pub fn character(&self, m: &[i64]) -> RationalFunction {
        if self.cox {
            self.fan.cox_character(m).expect("dimension matches")
        } else {
            self.fan.character(m)
        }
    }

    pub fn random_character(&mut self, radius: i64) -> Vec<i64> {
        (0..self.fan.dim()).map(|_| self.rng.gen_range(-radius..=radius)).collect()
    }

    /// A Laurent polynomial with one to three terms.
    pub fn laurent(&mut self) -> RationalFunction {
        let terms = self.rng.gen_range(1..=3);
        let mut acc = RationalFunction::zero(self.nvars());
        for _ in 0..terms {
            let m = self.random_character(2);
            let c = self.coefficient();
            acc = &acc + &self.character(&m).scale(&c);
        }
        if acc.is_zero() {
            RationalFunction::constant(self.nvars(), self.coefficient())
        } else {
            acc
        }
    }

    /// A nonzero function: a Laurent polynomial times random powers of the
    /// uniformizers.
    pub fn nonzero(&mut self) -> RationalFunction {
        let mut f = self.laurent();
        for k in 0..self.uniformizers.len() {
            if self.rng.gen_bool(0.4) {
                let e = self.rng.gen_range(-2..=2);
                f = &f * &self.uniformizers[k].pow(e).expect("nonzero");
            }
        }
        f
    }

    /// A monomial times a constant, or a general nonzero function.
    pub fn multiplier(&mut self) -> RationalFunction {
        if self.rng.gen_bool(0.5) {
            let m = self.random_character(3);
            let c = self.coefficient();
            self.character(&m).scale(&c)
        } else {
            self.nonzero()
        }
    }

    /// Mostly nonzero, sometimes zero.
    pub fn maybe_zero(&mut self, p_zero: f64) -> RationalFunction {
        if self.rng.gen_bool(p_zero) {
            RationalFunction::zero(self.nvars())
        } else {
            self.nonzero()
        }
    }

    /// A random uniformizer, or a random monomial if none is known.
    pub fn small(&mut self) -> RationalFunction {
        match self.uniformizers.choose(&mut self.rng) {
            Some(t) => t.clone(),
            None => {
                let m = self.random_character(1);
                self.character(&m)
            }
        }
    }

    pub fn constant(&mut self) -> RationalFunction {
        RationalFunction::constant(self.nvars(), self.coefficient())
    }

    pub fn int_point(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| q(self.rng.gen_range(2..=29))).collect()
    }

    pub fn laurent_monomial(&self, e: &[i32]) -> RationalFunction {
        RationalFunction::laurent_monomial(&Monomial(e.to_vec()), q(1))
    }
}
