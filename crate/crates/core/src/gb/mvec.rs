use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::ModuleOrder;
use crate::arith::{Monomial, Polynomial, Q};

/// A vector of `R^g` stored as one term list, sorted descending under a
/// module order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVec {
    pub terms: Vec<(usize, Monomial, Q)>,
}

impl MVec {
    pub fn from_components(comps: &[Polynomial], order: &ModuleOrder) -> Self {
        let mut terms: Vec<_> = comps
            .iter()
            .enumerate()
            .flat_map(|(c, p)| p.terms().iter().map(move |(m, q)| (c, m.clone(), q.clone())))
            .collect();
        terms.sort_by(|a, b| order.cmp(b.0, &b.1, a.0, &a.1));
        MVec { terms }
    }

    pub fn to_components(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); rank];
        for (c, m, q) in &self.terms {
            parts[*c].push((m.clone(), q.clone()));
        }
        parts.into_iter().map(|t| Polynomial::from_terms(nvars, t)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(usize, Monomial, Q)> {
        self.terms.first()
    }

    pub fn make_monic(&mut self) {
        if let Some((_, _, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.2 *= &inv;
                }
            }
        }
    }

    /// Terms of `a - c * x^mono * b`.
    pub fn sub_mul(a: &[(usize, Monomial, Q)], c: &Q, mono: &Monomial, b: &MVec, order: &ModuleOrder) -> Vec<(usize, Monomial, Q)> {
        let mut out = Vec::with_capacity(a.len() + b.terms.len());
        let shifted = b.terms.iter().map(|(k, m, q)| (*k, m.mul(mono), q * c));
        let mut i = 0;
        for (k, m, q) in shifted {
            while i < a.len() && order.cmp(a[i].0, &a[i].1, k, &m) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].0 == k && a[i].1 == m {
                let s = &a[i].2 - &q;
                if !s.is_zero() {
                    out.push((k, m, s));
                }
                i += 1;
            } else {
                out.push((k, m, -q));
            }
        }
        out.extend_from_slice(&a[i..]);
        out
    }
}
