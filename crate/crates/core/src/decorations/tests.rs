use super::*;
use crate::arith::{q, Ring};
use crate::divisors::MeetJoin;
use crate::toric::{affine, projective};

fn cox(s: &str) -> RationalFunction {
    Ring::cox(5).parse(s).unwrap()
}

fn consts(n: usize, v: &[i64]) -> Vec<RationalFunction> {
    v.iter().map(|&c| RationalFunction::constant(n, q(c))).collect()
}

#[test]
fn rank_one_and_direct_sum() {
    let p4 = projective(4);
    let h0 = PrimeDivisor::Toric(0);
    let d = Decoration::RankOne(WeilDivisor::from_pairs([(h0.clone(), 3)]));
    let v = Element::Single(cox("z0^3"));
    assert_eq!(coeff(&d, &p4, &v, &h0).unwrap(), Coeff::Fin(3));
    let e = Decoration::RankOne(WeilDivisor::zero());
    let sum = Decoration::DirectSum(vec![d.clone(), e.clone()]);
    let w = Element::Tuple(vec![Element::Single(cox("z1/z0")), Element::Single(cox("z0/z1"))]);
    let c1 = coeff(&d, &p4, &Element::Single(cox("z1/z0")), &h0).unwrap();
    let c2 = coeff(&e, &p4, &Element::Single(cox("z0/z1")), &h0).unwrap();
    assert_eq!(coeff(&sum, &p4, &w, &h0).unwrap(), c1.min(c2));
    assert_eq!(coeff(&d, &p4, &Element::Single(RationalFunction::zero(5)), &h0).unwrap(), Coeff::Inf);
    assert!(matches!(coeff(&d, &p4, &w, &h0), Err(Error::KindMismatch(_))));
    let _ = MeetJoin::Meet;
}

#[test]
fn seminorm_examples() {
    let p4 = projective(4);
    let h = cox("z0*z2/(z3*z4)");
    let h1 = PrimeDivisor::Toric(1);
    assert_eq!(seminorm_phi(&h, &h1, &h, &cox("1"), &p4).unwrap(), Coeff::Fin(1));
    assert_eq!(seminorm_phi(&h, &h1, &cox("1"), &cox("1"), &p4).unwrap(), Coeff::Fin(0));
    let g = cox("z1/z0");
    assert_eq!(seminorm_phi(&h, &h1, &RationalFunction::zero(5), &g, &p4).unwrap(), Coeff::Fin(1));
}

#[test]
fn omega_examples() {
    let p2 = projective(2);
    let m = consts(2, &[1, 0]);
    let e1 = PrimeDivisor::Toric(1);
    assert_eq!(omega_coeff(&m, &e1, &p2, false).unwrap(), Coeff::Fin(-1));
    assert_eq!(omega_coeff(&m, &e1, &p2, true).unwrap(), Coeff::Fin(0));
    for rho in 0..3 {
        let c = omega_coeff(&m, &PrimeDivisor::Toric(rho), &p2, false).unwrap();
        let pairing = p2.pairings(&[1, 0]).unwrap()[rho];
        assert_eq!(c, Coeff::Fin(if pairing != 0 { -1 } else { 0 }));
    }
}

#[test]
fn tangent_examples() {
    let p2 = projective(2);
    let a = consts(2, &[1, 0]);
    assert_eq!(tangent_coeff(&a, &PrimeDivisor::Toric(1), &p2).unwrap(), Coeff::Fin(1));
    assert_eq!(tangent_coeff(&a, &PrimeDivisor::Toric(2), &p2).unwrap(), Coeff::Fin(0));
    assert_eq!(tangent_coeff(&consts(2, &[0, 0]), &PrimeDivisor::Toric(2), &p2).unwrap(), Coeff::Inf);
}

#[test]
fn tangent_is_cone_independent() {
    let p3 = projective(3);
    let r = Ring::cox(4);
    let a = vec![r.parse("z1/z0 + 1").unwrap(), r.parse("z2^2/(z0*z3)").unwrap(), r.parse("3").unwrap()];
    for rho in 0..4 {
        let p = PrimeDivisor::Toric(rho);
        let vals: Vec<Coeff> = p3.cones_containing(rho).iter().map(|&s| tangent_coeff_in(&a, &p, &p3, s).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]), "{vals:?}");
    }
}

#[test]
fn lambda2t_examples() {
    let p4 = projective(4);
    let mut w = vec![RationalFunction::zero(5); 6];
    w[0] = RationalFunction::one(5);
    let torus = PrimeDivisor::projective_hypersurface(Ring::cox(5).parse("z0+z1").unwrap().numer()).unwrap();
    assert_eq!(lambda2t_coeff(&w, &torus, &p4).unwrap(), Coeff::Fin(0));
    assert_eq!(lambda2t_coeff(&w, &PrimeDivisor::Toric(1), &p4).unwrap(), Coeff::Fin(1));
    let mut w = vec![RationalFunction::zero(5); 6];
    w[3] = RationalFunction::one(5);
    assert_eq!(lambda2t_coeff(&w, &PrimeDivisor::Toric(1), &p4).unwrap(), Coeff::Fin(0));
}

/// At `H0` the formula is the `H1` formula after swapping the roles of
/// `a_0` and `a_1`.
#[test]
fn lambda2t_at_h0_matches_relabelling() {
    let p4 = projective(4);
    let mut s = crate::random::KSampler::new(&p4, &p4.toric_primes(), 3);
    let idx = |i: usize, j: usize| PAIRS.iter().position(|&p| p == (i, j)).unwrap();
    for _ in 0..200 {
        let w: Vec<RationalFunction> = (0..6).map(|_| s.maybe_zero(0.3)).collect();
        let f = |i: usize, j: usize| w[idx(i, j)].clone();
        // coefficients in the basis a_0, a_2, a_3, a_4; a_0 takes the slot of a_1
        let mut g = vec![RationalFunction::zero(5); 6];
        for j in 2..=4 {
            g[idx(1, j)] = -&f(1, j);
        }
        for i in 2..=4 {
            for j in i + 1..=4 {
                g[idx(i, j)] = &(&f(i, j) - &f(1, j)) + &f(1, i);
            }
        }
        let mut best = Coeff::Inf;
        for (k, &(i, _)) in PAIRS.iter().enumerate() {
            let o = crate::divisors::ord_at(&g[k], &PrimeDivisor::Toric(0), &p4).unwrap();
            best = best.min(o.plus(i64::from(i == 1)));
        }
        assert_eq!(lambda2t_coeff(&w, &PrimeDivisor::Toric(0), &p4).unwrap(), best);
    }
}

#[test]
fn hm_examples() {
    let p4 = projective(4);
    let u = UData::classical();
    let f = cox("z0*z2/(z3*z4)");
    let one = cox("1");
    assert_eq!(hm_coeff(&u, &f, &one, &PrimeDivisor::Toric(1), &p4).unwrap(), Coeff::Fin(1));
    assert_eq!(hm_coeff(&u, &f, &one, &PrimeDivisor::Toric(2), &p4).unwrap(), Coeff::Fin(0));
    let z = UData::zero(&affine(3));
    let a = RationalFunction::constant(3, q(5));
    for rho in 0..3 {
        assert_eq!(hm_coeff(&z, &a, &a, &PrimeDivisor::Toric(rho), &affine(3)).unwrap(), Coeff::Fin(1));
    }
}

#[test]
fn lift_bounds() {
    let p2 = projective(2);
    let a = consts(2, &[1, 0]);
    let p = PrimeDivisor::Toric(1);
    let t = tangent_coeff(&a, &p, &p2).unwrap();
    let sigma = tangent_cone(&p, &p2).unwrap();
    let lift = lift_at_cone(&a, sigma, &p2).unwrap();
    assert_eq!(tangent_lift_bound(&a, &lift, &p, &p2).unwrap(), t);
    for other in 0..p2.cones().len() {
        let l = lift_at_cone(&a, other, &p2).unwrap();
        assert!(tangent_lift_bound(&a, &l, &p, &p2).unwrap() <= t);
    }
    let mut bad = lift.clone();
    bad[0] = &bad[0] + &RationalFunction::one(2);
    assert!(matches!(tangent_lift_bound(&a, &bad, &p, &p2), Err(Error::NotALift)));
}

#[test]
fn dual_bound_examples() {
    let p2 = projective(2);
    let a = consts(2, &[1, 0]);
    for rho in 0..3 {
        let p = PrimeDivisor::Toric(rho);
        let t = tangent_coeff(&a, &p, &p2).unwrap();
        let m = omega_witness(&a, &p, &p2).unwrap();
        let v = Element::CharacterK(consts(2, &m));
        let phi = Element::CovectorK(a.clone());
        assert_eq!(dual_bound(&Decoration::Omega, &phi, &v, &p, &p2).unwrap(), t);
    }
    let d = Decoration::RankOne(WeilDivisor::from_pairs([(PrimeDivisor::Toric(0), 2)]));
    let one = Element::Single(RationalFunction::one(2));
    assert_eq!(dual_bound(&d, &one, &one, &PrimeDivisor::Toric(0), &p2).unwrap(), Coeff::Fin(-2));
}

#[test]
fn slices_and_filtrations() {
    let p2 = projective(2);
    let t = toric_slice_table(&SliceKind::Omega, &p2, 2).unwrap();
    let row = |e: &[i64], rho| t.rows.iter().find(|r| r.element == e && r.ray == rho).unwrap().coeff;
    assert_eq!([row(&[1, 0], 0), row(&[1, 0], 1), row(&[1, 0], 2)], [Coeff::Fin(-1), Coeff::Fin(-1), Coeff::Fin(0)]);
    let f = klyachko_filtration(&t, 1).unwrap();
    let dims: Vec<(i64, usize)> = f.iter().map(|l| (l.level, l.basis.len())).collect();
    assert_eq!(dims, vec![(-1, 2), (0, 1), (1, 0)]);
    assert_eq!(f[1].basis, vec![vec![0, 1]]);

    let u0 = UData::zero(&affine(2));
    let f = klyachko_filtration(&toric_slice_table(&SliceKind::HM(u0), &affine(2), 2).unwrap(), 0).unwrap();
    assert_eq!(f.iter().map(|l| l.basis.clone()).collect::<Vec<_>>(), vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1]], vec![]]);
    let u = UData::new(&affine(2), vec![vec![0, 1], vec![0, 0]]).unwrap();
    let f = klyachko_filtration(&toric_slice_table(&SliceKind::HM(u), &affine(2), 2).unwrap(), 0).unwrap();
    assert_eq!(f.iter().map(|l| l.basis.len()).collect::<Vec<_>>(), vec![2, 0]);
    assert!(SliceKind::from_decoration(&Decoration::Lambda2T).is_err());
}

struct CorruptPhi(RationalFunction);

impl Evaluator for CorruptPhi {
    fn coeff(&self, fan: &Fan, v: &Element, p: &PrimeDivisor) -> Result<Coeff> {
        let Element::Pair(f, g) = v else { return Err(Error::KindMismatch("pair".into())) };
        let (a, b) = (ord_at(f, p, fan)?, ord_at(g, p, fan)?);
        Ok(if a == b && !a.is_inf() { a.plus(1) } else { a.min(b) })
    }

    fn shape(&self, _fan: &Fan) -> Shape {
        Shape::Pair
    }

    fn hints(&self, _nvars: usize) -> Vec<RationalFunction> {
        vec![self.0.clone()]
    }
}

#[test]
fn harness_separates_good_and_corrupt() {
    let a3 = affine(3);
    let r = Ring::affine(3);
    let h = r.parse("x2*x3").unwrap();
    let hyper = PrimeDivisor::affine_hypersurface(r.parse("x1+x2+1").unwrap().numer()).unwrap();
    let primes = vec![PrimeDivisor::Toric(0), PrimeDivisor::Toric(1), hyper];
    let good = Decoration::Phi(vec![(PrimeDivisor::Toric(0), h.clone())]);
    let cfg = SampleConfig { samples: 200, seed: 42 };
    let rep = axioms_check(&good, &a3, &primes, cfg).unwrap();
    assert!(rep.passed, "{:?}", rep.counterexample);
    let bad = CorruptPhi(h);
    let rep = axioms_check(&bad, &a3, &primes, cfg).unwrap();
    assert_eq!(rep.counterexample.map(|c| c.axiom), Some("W2".to_string()));
}

#[test]
fn morphism_examples() {
    let a2 = affine(2);
    let d = WeilDivisor::from_pairs([(PrimeDivisor::Toric(0), 1)]);
    let id = vec![vec![RationalFunction::one(2)]];
    let cfg = SampleConfig { samples: 50, seed: 1 };
    let primes = a2.toric_primes();
    let neg = Decoration::RankOne(-&d);
    let zero = Decoration::RankOne(WeilDivisor::zero());
    assert!(morphism_check(&id, &neg, &zero, &a2, &primes, cfg).unwrap().passed);
    assert!(!morphism_check(&id, &zero, &neg, &a2, &primes, cfg).unwrap().passed);
    let bad = vec![vec![RationalFunction::one(2); 2]];
    assert!(matches!(morphism_check(&bad, &neg, &zero, &a2, &primes, cfg), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn orthogonality_examples() {
    let a3 = affine(3);
    let u = UData::new(&a3, vec![vec![0, 1, 0], vec![1, 0, -1], vec![0, -1, 0]]).unwrap();
    let hm = Decoration::HM(u.clone());
    let cfg = SampleConfig { samples: 100, seed: 5 };
    let e1 = Element::Pair(RationalFunction::one(3), RationalFunction::zero(3));
    let e2 = Element::Pair(RationalFunction::zero(3), RationalFunction::one(3));
    let h1 = PrimeDivisor::Toric(0);
    let rep = orthogonality_check(&[e1.clone(), e2.clone()], &hm, &a3, &h1, cfg).unwrap();
    assert!(!rep.passed);
    let (f, g) = crate::hm::local_generators(&u, 0).unwrap();
    let rep = orthogonality_check(&[Element::Pair(f, g), e1.clone()], &hm, &a3, &h1, cfg).unwrap();
    assert!(rep.passed, "{:?}", rep.counterexample);
    let triv = Decoration::DirectSum(vec![Decoration::RankOne(WeilDivisor::zero()); 2]);
    let t1 = Element::Tuple(vec![Element::Single(RationalFunction::one(3)), Element::Single(RationalFunction::zero(3))]);
    let t2 = Element::Tuple(vec![Element::Single(RationalFunction::zero(3)), Element::Single(RationalFunction::one(3))]);
    assert!(orthogonality_check(&[t1.clone(), t2], &triv, &a3, &h1, cfg).unwrap().passed);
    assert!(matches!(orthogonality_check(&[t1.clone(), t1], &triv, &a3, &h1, cfg), Err(Error::LinearlyDependent)));
}
