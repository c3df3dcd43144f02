use std::cmp::Ordering;

use super::mvec::MVec;
use super::order::ModuleOrder;
use crate::arith::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// A reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groebner {
    pub nvars: usize,
    pub rank: usize,
    pub order: ModuleOrder,
    pub basis: Vec<MVec>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

fn find_reducer<'a>(basis: &'a [MVec], active: &[bool], comp: usize, m: &Monomial) -> Option<&'a MVec> {
    basis.iter().zip(active).find_map(|(g, &a)| {
        let (c, lm, _) = g.lead()?;
        (a && *c == comp && lm.divides(m)).then_some(g)
    })
}

/// Reduces `v` until its leading term is not divisible by any active leading term.
fn top_reduce(mut v: MVec, basis: &[MVec], active: &[bool], order: &ModuleOrder) -> MVec {
    while let Some((c, m, q)) = v.terms.first().cloned() {
        match find_reducer(basis, active, c, &m) {
            Some(g) => {
                let (_, lm, lc) = g.lead().unwrap();
                let coef = &q / lc;
                v.terms = MVec::sub_mul(&v.terms, &coef, &m.div(lm), g, order);
            }
            None => break,
        }
    }
    v
}

/// Full reduction: no term of the result is divisible by an active leading term.
fn full_reduce(v: MVec, basis: &[MVec], active: &[bool], order: &ModuleOrder) -> MVec {
    let mut rest = v.terms;
    let mut done = Vec::new();
    let mut pos = 0;
    while pos < rest.len() {
        let (c, m, q) = rest[pos].clone();
        match find_reducer(basis, active, c, &m) {
            Some(g) => {
                let (_, lm, lc) = g.lead().unwrap();
                let coef = &q / lc;
                rest = MVec::sub_mul(&rest[pos..], &coef, &m.div(lm), g, order);
                pos = 0;
            }
            None => {
                done.push(rest[pos].clone());
                pos += 1;
            }
        }
    }
    MVec { terms: done }
}

fn s_vector(a: &MVec, b: &MVec, lcm: &Monomial, order: &ModuleOrder) -> MVec {
    let (_, la, ca) = a.lead().unwrap();
    let (_, lb, cb) = b.lead().unwrap();
    let left = MVec { terms: a.terms.iter().map(|(k, m, q)| (*k, m.mul(&lcm.div(la)), q / ca)).collect() };
    let coef = cb.recip();
    MVec { terms: MVec::sub_mul(&left.terms, &coef, &lcm.div(lb), b, order) }
}

/// Gebauer–Möller update of the pair set and active basis after adding `h`.
fn update(pairs: &mut Vec<Pair>, basis: &[MVec], active: &mut [bool], h: usize) {
    let (hc, hm, _) = basis[h].lead().unwrap().clone();
    let mut cands: Vec<Pair> = (0..h)
        .filter(|&g| active[g] && basis[g].lead().unwrap().0 == hc)
        .map(|g| Pair { i: g, j: h, comp: hc, lcm: hm.lcm(&basis[g].lead().unwrap().1) })
        .collect();
    // drop candidates whose lcm is a multiple of another candidate's lcm
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = cands.pop() {
        let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if !dominated {
            kept.push(p);
        }
    }
    pairs.retain(|p| {
        if p.comp != hc || !hm.divides(&p.lcm) {
            return true;
        }
        let li = hm.lcm(&basis[p.i].lead().unwrap().1);
        let lj = hm.lcm(&basis[p.j].lead().unwrap().1);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(kept);
    for g in 0..h {
        if active[g] {
            let (gc, gm, _) = basis[g].lead().unwrap();
            if *gc == hc && hm.divides(gm) {
                active[g] = false;
            }
        }
    }
}

impl Groebner {
    /// Buchberger completion followed by interreduction. The result is
    /// reduced, monic and sorted by descending leading term.
    pub fn compute(nvars: usize, rank: usize, gens: &[Vec<Polynomial>], order: &ModuleOrder) -> Result<Groebner> {
        if order.rank() != rank {
            return Err(Error::OrderMismatch);
        }
        let mut basis: Vec<MVec> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let add = |v: MVec, basis: &mut Vec<MVec>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
            let mut v = v;
            v.make_monic();
            basis.push(v);
            active.push(true);
            let h = basis.len() - 1;
            update(pairs, basis, active, h);
        };
        for g in gens {
            if g.len() != rank {
                return Err(Error::RankMismatch(rank, g.len()));
            }
            let v = top_reduce(MVec::from_components(g, order), &basis, &active, order);
            if !v.is_zero() {
                add(v, &mut basis, &mut active, &mut pairs);
            }
        }
        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    order
                        .cmp(pa.comp, &pa.lcm, pb.comp, &pb.lcm)
                        .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
                })
                .unwrap();
            let p = pairs.swap_remove(best);
            let s = s_vector(&basis[p.i], &basis[p.j], &p.lcm, order);
            let r = top_reduce(s, &basis, &active, order);
            if !r.is_zero() {
                add(r, &mut basis, &mut active, &mut pairs);
            }
        }
        let mut min: Vec<MVec> = basis.into_iter().zip(active).filter_map(|(g, a)| a.then_some(g)).collect();
        // drop elements whose leading term is divisible by another's
        let mut keep = vec![true; min.len()];
        for i in 0..min.len() {
            let (ci, mi, _) = min[i].lead().unwrap();
            for j in 0..min.len() {
                if i != j && keep[j] {
                    let (cj, mj, _) = min[j].lead().unwrap();
                    if ci == cj && mj.divides(mi) && (mj != mi || j < i) {
                        keep[i] = false;
                        break;
                    }
                }
            }
        }
        min = min.into_iter().zip(&keep).filter_map(|(g, &k)| k.then_some(g)).collect();
        let all = vec![true; min.len()];
        let mut reduced = Vec::with_capacity(min.len());
        for i in 0..min.len() {
            let mut mask = all.clone();
            mask[i] = false;
            let head = MVec { terms: min[i].terms[..1].to_vec() };
            let tail = MVec { terms: min[i].terms[1..].to_vec() };
            let mut t = full_reduce(tail, &min, &mask, order);
            let mut terms = head.terms;
            terms.append(&mut t.terms);
            let mut v = MVec { terms };
            v.make_monic();
            reduced.push(v);
        }
        reduced.sort_by(|a, b| {
            let (ca, ma, _) = a.lead().unwrap();
            let (cb, mb, _) = b.lead().unwrap();
            order.cmp(*cb, mb, *ca, ma)
        });
        Ok(Groebner { nvars, rank, order: order.clone(), basis: reduced })
    }

    pub fn normal_form_mvec(&self, v: MVec) -> MVec {
        let active = vec![true; self.basis.len()];
        full_reduce(v, &self.basis, &active, &self.order)
    }

    /// Remainder of `v` under this basis, checking the order agrees.
    pub fn normal_form_with(&self, v: &[Polynomial], order: &ModuleOrder) -> Result<Vec<Polynomial>> {
        if *order != self.order {
            return Err(Error::OrderMismatch);
        }
        self.normal_form(v)
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch(self.rank, v.len()));
        }
        let r = self.normal_form_mvec(MVec::from_components(v, &self.order));
        Ok(r.to_components(self.rank, self.nvars))
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch(self.rank, v.len()));
        }
        Ok(self.normal_form_mvec(MVec::from_components(v, &self.order)).is_zero())
    }

    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.basis.iter().map(|g| g.to_components(self.rank, self.nvars)).collect()
    }

    /// Checks that every S-vector reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let active = vec![true; self.basis.len()];
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let (ci, mi, _) = self.basis[i].lead().unwrap();
                let (cj, mj, _) = self.basis[j].lead().unwrap();
                if ci != cj {
                    continue;
                }
                let s = s_vector(&self.basis[i], &self.basis[j], &mi.lcm(mj), &self.order);
                if !full_reduce(s, &self.basis, &active, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.basis.iter().map(|g| (g.lead().unwrap().0, g.lead().unwrap().1.clone())).collect()
    }
}

pub(crate) fn cmp_vectors(a: &[Polynomial], b: &[Polynomial], order: &ModuleOrder) -> Ordering {
    let (va, vb) = (MVec::from_components(a, order), MVec::from_components(b, order));
    for (x, y) in va.terms.iter().zip(&vb.terms) {
        let o = order.cmp(x.0, &x.1, y.0, &y.1).then_with(|| x.2.cmp(&y.2));
        if o != Ordering::Equal {
            return o;
        }
    }
    va.terms.len().cmp(&vb.terms.len())
}
