//! Weil-decoration evaluators and the checks built on top of them.

mod bounds;
mod formulas;
mod harness;
mod slices;

pub use bounds::{dual_bound, lift_at_cone, omega_witness, pairing, tangent_lift_bound};
pub use formulas::{hm_coeff, lambda2t_coeff, omega_coeff, seminorm_phi, tangent_coeff, tangent_coeff_in, tangent_cone, PAIRS};
pub use harness::{axioms_check, morphism_check, orthogonality_check, AxiomReport, CheckReport, SampleConfig};
pub use slices::{klyachko_filtration, toric_slice_table, FiltrationLevel, SliceKind, SliceRow, SliceTable};

use crate::arith::RationalFunction;
use crate::divisors::{ord_at, Coeff, PrimeDivisor, WeilDivisor};
use crate::error::{Error, Result};
use crate::hm::UData;
use crate::toric::Fan;

/// An element of the generic stalk, shaped for a decoration kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Single(RationalFunction),
    Pair(RationalFunction, RationalFunction),
    /// `m = sum f_i m_i` in `M_K`.
    CharacterK(Vec<RationalFunction>),
    /// `a = sum f_i e_i` in `N_K`.
    CovectorK(Vec<RationalFunction>),
    /// Coefficients of `[12],[13],[14],[23],[24],[34]`.
    Antisym(Vec<RationalFunction>),
    Tuple(Vec<Element>),
}

/// Shape of the elements a decoration accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Single,
    Pair,
    CharacterK(usize),
    CovectorK(usize),
    Antisym,
    Tuple(Vec<Shape>),
}

impl Shape {
    pub fn len(&self) -> usize {
        match self {
            Shape::Single => 1,
            Shape::Pair => 2,
            Shape::CharacterK(n) | Shape::CovectorK(n) => *n,
            Shape::Antisym => 6,
            Shape::Tuple(parts) => parts.iter().map(Shape::len).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rebuilds an element from its flat coordinate vector.
    pub fn unflatten(&self, flat: &[RationalFunction]) -> Result<Element> {
        if flat.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: flat.len() });
        }
        Ok(match self {
            Shape::Single => Element::Single(flat[0].clone()),
            Shape::Pair => Element::Pair(flat[0].clone(), flat[1].clone()),
            Shape::CharacterK(_) => Element::CharacterK(flat.to_vec()),
            Shape::CovectorK(_) => Element::CovectorK(flat.to_vec()),
            Shape::Antisym => Element::Antisym(flat.to_vec()),
            Shape::Tuple(parts) => {
                let mut out = Vec::with_capacity(parts.len());
                let mut at = 0;
                for s in parts {
                    out.push(s.unflatten(&flat[at..at + s.len()])?);
                    at += s.len();
                }
                Element::Tuple(out)
            }
        })
    }
}

impl Element {
    pub fn shape(&self) -> Shape {
        match self {
            Element::Single(_) => Shape::Single,
            Element::Pair(..) => Shape::Pair,
            Element::CharacterK(v) => Shape::CharacterK(v.len()),
            Element::CovectorK(v) => Shape::CovectorK(v.len()),
            Element::Antisym(_) => Shape::Antisym,
            Element::Tuple(parts) => Shape::Tuple(parts.iter().map(Element::shape).collect()),
        }
    }

    pub fn flatten(&self) -> Vec<RationalFunction> {
        match self {
            Element::Single(f) => vec![f.clone()],
            Element::Pair(f, g) => vec![f.clone(), g.clone()],
            Element::CharacterK(v) | Element::CovectorK(v) | Element::Antisym(v) => v.clone(),
            Element::Tuple(parts) => parts.iter().flat_map(Element::flatten).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.flatten().iter().all(RationalFunction::is_zero)
    }

    pub fn nvars(&self) -> usize {
        self.flatten().first().map_or(0, RationalFunction::nvars)
    }

    pub fn scale(&self, f: &RationalFunction) -> Element {
        let flat: Vec<_> = self.flatten().iter().map(|c| f * c).collect();
        self.shape().unflatten(&flat).expect("same shape")
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        let shape = self.shape();
        if shape != other.shape() {
            return Err(Error::KindMismatch("summands have different shapes".into()));
        }
        let flat: Vec<_> = self.flatten().iter().zip(other.flatten()).map(|(a, b)| a + &b).collect();
        shape.unflatten(&flat)
    }

    pub fn zero_like(&self) -> Element {
        let n = self.nvars();
        let flat = vec![RationalFunction::zero(n); self.shape().len()];
        self.shape().unflatten(&flat).unwrap()
    }
}

/// Anything that assigns a coefficient `W(v)_P`.
pub trait Evaluator: Sync {
    fn coeff(&self, fan: &Fan, v: &Element, p: &PrimeDivisor) -> Result<Coeff>;
    fn shape(&self, fan: &Fan) -> Shape;

    /// Functions `h` whose residue the sampler should hit on purpose.
    fn hints(&self, _nvars: usize) -> Vec<RationalFunction> {
        Vec::new()
    }
}

/// The decoration kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoration {
    RankOne(WeilDivisor),
    DirectSum(Vec<Decoration>),
    /// Residue targets `h_P` for finitely many primes; plain minimum elsewhere.
    Phi(Vec<(PrimeDivisor, RationalFunction)>),
    Omega,
    LogOmega,
    Tangent,
    Lambda2T,
    HM(UData),
}

impl Decoration {
    pub fn name(&self) -> &'static str {
        match self {
            Decoration::RankOne(_) => "rank_one",
            Decoration::DirectSum(_) => "direct_sum",
            Decoration::Phi(_) => "phi",
            Decoration::Omega => "omega",
            Decoration::LogOmega => "log_omega",
            Decoration::Tangent => "tangent",
            Decoration::Lambda2T => "lambda2t",
            Decoration::HM(_) => "hm",
        }
    }
}

fn rank_one_coeff(d: &WeilDivisor, f: &RationalFunction, p: &PrimeDivisor, fan: &Fan) -> Result<Coeff> {
    if f.is_zero() {
        return Ok(Coeff::Inf);
    }
    let mut ord = ord_at(f, p, fan)?;
    // a degree-l element of the Cox ring is read through O(l) = K * z0^l
    if fan.is_projective_space() && f.nvars() == fan.nrays() {
        let deg = crate::arith::GradedFraction::new(f.clone())?.degree;
        if deg != 0 && *p == PrimeDivisor::Toric(0) {
            ord = ord.plus(-deg);
        }
    }
    Ok(ord.plus(d.coeff(p)))
}

impl Evaluator for Decoration {
    fn coeff(&self, fan: &Fan, v: &Element, p: &PrimeDivisor) -> Result<Coeff> {
        let mismatch = || Error::KindMismatch(format!("{} does not accept {:?}", self.name(), v.shape()));
        match (self, v) {
            (Decoration::RankOne(d), Element::Single(f)) => rank_one_coeff(d, f, p, fan),
            (Decoration::DirectSum(parts), Element::Tuple(vs)) => {
                if parts.len() != vs.len() {
                    return Err(mismatch());
                }
                let mut m = Coeff::Inf;
                for (d, x) in parts.iter().zip(vs) {
                    m = m.min(d.coeff(fan, x, p)?);
                }
                Ok(m)
            }
            (Decoration::Phi(hs), Element::Pair(f, g)) => match hs.iter().find(|(q, _)| q == p) {
                Some((_, h)) => seminorm_phi(h, p, f, g, fan),
                None => Ok(ord_at(f, p, fan)?.min(ord_at(g, p, fan)?)),
            },
            (Decoration::Omega, Element::CharacterK(m)) => omega_coeff(m, p, fan, false),
            (Decoration::LogOmega, Element::CharacterK(m)) => omega_coeff(m, p, fan, true),
            (Decoration::Tangent, Element::CovectorK(a)) => tangent_coeff(a, p, fan),
            (Decoration::Lambda2T, Element::Antisym(w)) => lambda2t_coeff(w, p, fan),
            (Decoration::HM(u), Element::Pair(f, g)) => hm_coeff(u, f, g, p, fan),
            _ => Err(mismatch()),
        }
    }

    fn shape(&self, fan: &Fan) -> Shape {
        match self {
            Decoration::RankOne(_) => Shape::Single,
            Decoration::DirectSum(parts) => Shape::Tuple(parts.iter().map(|d| d.shape(fan)).collect()),
            Decoration::Phi(_) | Decoration::HM(_) => Shape::Pair,
            Decoration::Omega | Decoration::LogOmega => Shape::CharacterK(fan.dim()),
            Decoration::Tangent => Shape::CovectorK(fan.dim()),
            Decoration::Lambda2T => Shape::Antisym,
        }
    }

    fn hints(&self, nvars: usize) -> Vec<RationalFunction> {
        harness::hints(self, nvars)
    }
}

/// `W(v)_P` for a decoration.
pub fn coeff(d: &Decoration, fan: &Fan, v: &Element, p: &PrimeDivisor) -> Result<Coeff> {
    d.coeff(fan, v, p)
}

#[cfg(test)]
mod tests;
