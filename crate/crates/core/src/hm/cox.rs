use super::generators::{hm_generators, HMGenerators, Method};
use super::UData;
use crate::arith::{GradedFraction, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::gb::Submodule;
use crate::toric::affine;

/// The graded module `M(u)` over `k[z0..zn]` whose sheaf is `HM(u)` on
/// projective space.
#[derive(Clone, Debug)]
pub struct CoxModule {
    pub u: UData,
    pub affine: HMGenerators,
    pub generators: Vec<(GradedFraction, GradedFraction)>,
}

pub fn cox_module(u: &UData, method: Method) -> Result<CoxModule> {
    if !u.fan().is_projective_space() {
        return Err(Error::InvalidU("a projective-space matrix is required".into()));
    }
    let n1 = u.fan().nrays();
    let lifted = UData::new(&affine(n1), u.matrix().to_vec())?;
    let gens = hm_generators(&lifted, method)?;
    let generators = gens
        .generators()
        .into_iter()
        .map(|(f, g)| Ok((GradedFraction::new(f)?, GradedFraction::new(g)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoxModule { u: u.clone(), affine: gens, generators })
}

impl CoxModule {
    /// Homogeneous localization at `z_nu`, written in the affine coordinates
    /// of the chart and cleared by the chart's boundary monomial.
    pub fn chart(&self, nu: usize) -> Result<Submodule> {
        let n1 = self.affine.n;
        if nu >= n1 {
            return Err(Error::IndexOutOfRange { index: nu, nvars: n1 });
        }
        let map: Vec<usize> = (0..n1).map(|j| if j < nu { j } else { j.saturating_sub(1) }).collect();
        let restrict = |p: &Polynomial| p.dehomogenize(&[nu]).remap(n1 - 1, &map);
        let gens = self.affine.cleared.generators().iter().map(|v| v.iter().map(restrict).collect()).collect();
        Submodule::new(n1 - 1, 2, gens)
    }

    /// Compares every chart with the module computed from the restricted
    /// matrix directly.
    pub fn charts_agree(&self, method: Method) -> Result<Vec<bool>> {
        (0..self.affine.n)
            .map(|nu| {
                let direct = hm_generators(&self.u.chart(nu)?, method)?;
                self.chart(nu)?.equal_modules(&direct.cleared)
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.generators.iter().map(|(f, g)| if f.value.is_zero() { g.degree } else { f.degree }).collect()
    }

    pub fn graded_pairs(&self) -> Vec<(RationalFunction, RationalFunction)> {
        self.generators.iter().map(|(f, g)| (f.value.clone(), g.value.clone())).collect()
    }
}
