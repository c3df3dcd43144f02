use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::buchberger::{cmp_vectors, Groebner};
use super::order::{ModuleOrder, Position};
use crate::arith::{Polynomial, Q};
use crate::error::{Error, Result};
use crate::linalg;

/// Default iteration bound for [`Submodule::saturate`].
pub const SATURATION_CAP: usize = 64;

/// A submodule of `R^rank`, `R = Q[x1..xn]`, given by generators. The
/// Gröbner basis for the default order is computed on first use.
#[derive(Clone, Debug)]
pub struct Submodule {
    nvars: usize,
    rank: usize,
    gens: Vec<Vec<Polynomial>>,
    gb: OnceLock<Arc<Groebner>>,
}

/// Generators together with a generating set of their relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub nvars: usize,
    pub generators: Vec<Vec<Polynomial>>,
    /// Each relation has one entry per generator.
    pub syzygies: Vec<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessProbe {
    pub generators: usize,
    pub generic_rank: usize,
    pub evaluated_rank: usize,
    /// True when the fibre dimension at the point exceeds the generic rank.
    pub not_locally_free: bool,
}

fn check_rank(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::RankMismatch(a, b))
    } else {
        Ok(())
    }
}

impl Submodule {
    pub fn new(nvars: usize, rank: usize, gens: Vec<Vec<Polynomial>>) -> Result<Self> {
        for g in &gens {
            check_rank(rank, g.len())?;
            if let Some(p) = g.iter().find(|p| p.nvars() != nvars) {
                return Err(Error::DimensionMismatch { expected: nvars, got: p.nvars() });
            }
        }
        Ok(Submodule { nvars, rank, gens, gb: OnceLock::new() })
    }

    /// The whole free module `R^rank`.
    pub fn free(nvars: usize, rank: usize) -> Self {
        let gens = (0..rank).map(|i| unit_vector(nvars, rank, i, Polynomial::one(nvars))).collect();
        Submodule { nvars, rank, gens, gb: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    pub fn default_order(&self) -> ModuleOrder {
        ModuleOrder::pot(self.rank)
    }

    pub fn groebner(&self) -> Arc<Groebner> {
        self.gb
            .get_or_init(|| {
                Arc::new(
                    Groebner::compute(self.nvars, self.rank, &self.gens, &self.default_order())
                        .expect("generators were checked on construction"),
                )
            })
            .clone()
    }

    pub fn groebner_with(&self, order: &ModuleOrder) -> Result<Groebner> {
        Groebner::compute(self.nvars, self.rank, &self.gens, order)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(|p| p.is_zero()))
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        self.groebner().contains(v)
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.groebner().normal_form(v)
    }

    pub fn contains_module(&self, other: &Submodule) -> Result<bool> {
        check_rank(self.rank, other.rank)?;
        let gb = self.groebner();
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mutual membership of generators.
    pub fn equal_modules(&self, other: &Submodule) -> Result<bool> {
        Ok(self.contains_module(other)? && other.contains_module(self)?)
    }

    /// The submodule generated by the reduced Gröbner basis.
    pub fn reduced(&self) -> Submodule {
        let gb = self.groebner();
        let sub = Submodule { nvars: self.nvars, rank: self.rank, gens: gb.elements(), gb: OnceLock::new() };
        let _ = sub.gb.set(gb);
        sub
    }

    /// All relations among the generators, computed by elimination in
    /// `R^rank ⊕ R^s` with the original block dominant.
    pub fn syzygies(&self) -> Presentation {
        let s = self.gens.len();
        let ext: Vec<Vec<Polynomial>> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = g.clone();
                v.extend(unit_vector(self.nvars, s, i, Polynomial::one(self.nvars)));
                v
            })
            .collect();
        let order = ModuleOrder::elimination(self.rank, s, Position::Pot);
        let gb = Groebner::compute(self.nvars, self.rank + s, &ext, &order).expect("ranks agree");
        let syz = gb
            .basis
            .iter()
            .filter(|v| v.lead().unwrap().0 >= self.rank)
            .map(|v| v.to_components(self.rank + s, self.nvars)[self.rank..].to_vec())
            .collect();
        Presentation { nvars: self.nvars, generators: self.gens.clone(), syzygies: syz }
    }

    /// `M ∩ N`, read off from the elimination of `(m, m)` and `(n, 0)`.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        check_rank(self.rank, other.rank)?;
        let g = self.rank;
        let zero = vec![Polynomial::zero(self.nvars); g];
        let mut ext = Vec::new();
        for m in &self.gens {
            let mut v = m.clone();
            v.extend(m.iter().cloned());
            ext.push(v);
        }
        for n in &other.gens {
            let mut v = n.clone();
            v.extend(zero.iter().cloned());
            ext.push(v);
        }
        let order = ModuleOrder::elimination(g, g, Position::Pot);
        let gb = Groebner::compute(self.nvars, 2 * g, &ext, &order)?;
        let gens = gb
            .basis
            .iter()
            .filter(|v| v.lead().unwrap().0 >= g)
            .map(|v| v.to_components(2 * g, self.nvars)[g..].to_vec())
            .collect();
        Submodule::new(self.nvars, g, gens)
    }

    /// `(M : f) = {v : f v ∈ M}`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Submodule> {
        if f.is_zero() {
            return Err(Error::ZeroDivisorInput);
        }
        let fr = Submodule::new(
            self.nvars,
            self.rank,
            (0..self.rank).map(|i| unit_vector(self.nvars, self.rank, i, f.clone())).collect(),
        )?;
        let cap = self.intersect(&fr)?;
        let gens = cap
            .gens
            .iter()
            .map(|v| v.iter().map(|p| p.exact_divide(f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(self.nvars, self.rank, gens)
    }

    pub fn saturate(&self, f: &Polynomial) -> Result<Submodule> {
        self.saturate_capped(f, SATURATION_CAP)
    }

    /// `(M : f^∞)` by iterated quotients until two steps agree.
    pub fn saturate_capped(&self, f: &Polynomial, cap: usize) -> Result<Submodule> {
        if f.is_zero() {
            return Err(Error::ZeroDivisorInput);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let mut cur = self.reduced();
        for _ in 0..cap {
            let next = cur.quotient(f)?.reduced();
            // next ⊇ cur always holds, so one inclusion decides equality
            if cur.contains_module(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::IterationCap(cap))
    }

    /// Drops generators that lie in the span of the others, scanning from
    /// the last one, and returns the survivors in canonical form.
    pub fn minimized(&self) -> Result<Submodule> {
        let order = self.default_order();
        let mut gens: Vec<Vec<Polynomial>> = self
            .gens
            .iter()
            .filter(|g| g.iter().any(|p| !p.is_zero()))
            .map(|g| canonical_vector(g))
            .collect();
        gens.sort_by(|a, b| cmp_vectors(a, b, &order));
        gens.dedup();
        let mut i = gens.len();
        while i > 0 {
            i -= 1;
            let rest: Vec<_> = gens.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
            let sub = Submodule::new(self.nvars, self.rank, rest.clone())?;
            if sub.contains(&gens[i])? {
                gens = rest;
            }
        }
        Submodule::new(self.nvars, self.rank, gens)
    }
}

/// Scales a vector so its first nonzero component is primitive with
/// positive leading coefficient.
pub fn canonical_vector(v: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = v.iter().find(|p| !p.is_zero()) else {
        return v.to_vec();
    };
    let prim = first.primitive();
    let factor = prim.leading_coeff() / first.leading_coeff();
    let scaled: Vec<Polynomial> = v.iter().map(|p| p.scale(&factor)).collect();
    // make the whole vector integral with coprime coefficients
    let mut den = num_bigint::BigInt::from(1);
    let mut num = num_bigint::BigInt::from(0);
    for p in &scaled {
        for (_, c) in p.terms() {
            den = num_integer::Integer::lcm(&den, c.denom());
            num = num_integer::Integer::gcd(&num, c.numer());
        }
    }
    let adj = Q::new(den, num);
    scaled.iter().map(|p| p.scale(&adj)).collect()
}

pub fn unit_vector(nvars: usize, rank: usize, i: usize, entry: Polynomial) -> Vec<Polynomial> {
    (0..rank).map(|k| if k == i { entry.clone() } else { Polynomial::zero(nvars) }).collect()
}

/// Kernel of a polynomial matrix, given row by row.
pub fn kernel_of_matrix(nvars: usize, rows: &[Vec<Polynomial>]) -> Result<Submodule> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if let Some(bad) = rows.iter().find(|row| row.len() != c) {
        return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
    }
    let cols: Vec<Vec<Polynomial>> = (0..c).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
    let syz = Submodule::new(nvars, r, cols)?.syzygies();
    Submodule::new(nvars, c, syz.syzygies)
}

impl Presentation {
    /// Generic rank of the generated module, estimated as the maximal rank of
    /// the generator matrix over a handful of fixed points.
    pub fn generic_rank(&self) -> usize {
        let points = sample_points(self.nvars);
        points
            .iter()
            .map(|pt| {
                let m: linalg::Matrix = self
                    .generators
                    .iter()
                    .map(|g| g.iter().map(|p| p.eval(pt).unwrap()).collect())
                    .collect();
                linalg::rank(&m)
            })
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the relation matrix at `point`. If the fibre dimension
    /// `s - rank` exceeds the generic rank the module is not locally free there.
    pub fn local_freeness_probe(&self, point: &[Q]) -> Result<FreenessProbe> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        let s = self.generators.len();
        let m: linalg::Matrix = self
            .syzygies
            .iter()
            .map(|col| col.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let evaluated_rank = if m.is_empty() { 0 } else { linalg::rank(&m) };
        let generic_rank = self.generic_rank();
        Ok(FreenessProbe {
            generators: s,
            generic_rank,
            evaluated_rank,
            not_locally_free: s - evaluated_rank > generic_rank,
        })
    }

    /// Checks that every relation really is one.
    pub fn relations_hold(&self) -> bool {
        let rank = self.generators.first().map_or(0, |g| g.len());
        self.syzygies.iter().all(|a| {
            (0..rank).all(|k| {
                let mut acc = Polynomial::zero(self.nvars);
                for (ai, g) in a.iter().zip(&self.generators) {
                    acc = &acc + &(ai * &g[k]);
                }
                acc.is_zero()
            })
        })
    }
}

fn sample_points(n: usize) -> Vec<Vec<Q>> {
    const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    (0..3)
        .map(|k| (0..n).map(|i| crate::arith::q(PRIMES[(i + 5 * k) % 12] * if (i + k) % 2 == 0 { 1 } else { -1 })).collect())
        .collect()
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.rank == other.rank && self.gens == other.gens
    }
}
