use proptest::prelude::*;

use weildeco::arith::{q, Monomial, Polynomial, RationalFunction};
use weildeco::decorations::{coeff, hm_coeff, omega_coeff, tangent_coeff_in, Decoration, Element};
use weildeco::divisors::{ord_at, Coeff, PrimeDivisor, WeilDivisor};
use weildeco::gb::{unit_vector, Submodule};
use weildeco::hm::UData;
use weildeco::toric::{affine, p1_power, projective, Fan};

fn poly(n: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0i32..3, n), -3i64..=3), 0..=max_terms)
        .prop_map(move |ts| Polynomial::from_terms(n, ts.into_iter().map(|(e, c)| (Monomial(e), q(c)))))
}

fn nonzero_poly(n: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn laurent_monomial(n: usize) -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(-2i32..=2, n), 1i64..=3).prop_map(|(e, c)| RationalFunction::laurent_monomial(&Monomial(e), q(c)))
}

fn ratfunc(n: usize) -> impl Strategy<Value = RationalFunction> {
    (poly(n, 3), nonzero_poly(n, 2)).prop_map(|(a, b)| RationalFunction::new(a, b).unwrap())
}

fn nonzero_ratfunc(n: usize) -> impl Strategy<Value = RationalFunction> {
    (nonzero_poly(n, 3), nonzero_poly(n, 2)).prop_map(|(a, b)| RationalFunction::new(a, b).unwrap())
}

fn laurent(n: usize) -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec(laurent_monomial(n), 1..=3)
        .prop_map(move |ms| ms.iter().fold(RationalFunction::zero(n), |acc, m| &acc + m))
}

fn vector(n: usize, rank: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(poly(n, 2), rank)
}

fn module(n: usize, rank: usize, gens: usize) -> impl Strategy<Value = Submodule> {
    prop::collection::vec(vector(n, rank), 1..=gens).prop_map(move |g| Submodule::new(n, rank, g).unwrap())
}

fn small_fan() -> impl Strategy<Value = Fan> {
    prop_oneof![Just(projective(2)), Just(p1_power(2)), Just(affine(2))]
}

fn combine(a: &[Polynomial], b: &[Polynomial], c: &Polynomial) -> Vec<Polynomial> {
    a.iter().zip(b).map(|(x, y)| x + &(c * y)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(3, 4), b in poly(3, 4), c in poly(3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_divide_inverts_multiplication(a in poly(3, 4), b in nonzero_poly(3, 3)) {
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn ratfunc_field_axioms(f in ratfunc(2), g in ratfunc(2), h in nonzero_ratfunc(2)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &h) / &h, f.clone());
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        prop_assert!((&h * &h.inv().unwrap()).ratfunc_eq(&RationalFunction::one(2)));
    }

    #[test]
    fn ratfunc_equality_is_a_congruence(f in ratfunc(2), g in ratfunc(2), k in nonzero_poly(2, 2)) {
        // the same function written with a common factor
        let kf = RationalFunction::new(f.numer() * &k, f.denom() * &k).unwrap();
        prop_assert!(f.ratfunc_eq(&kf) && kf.ratfunc_eq(&f));
        prop_assert!(f.ratfunc_eq(&f));
        prop_assert_eq!(&kf + &g, &f + &g);
        prop_assert_eq!(&kf * &g, &f * &g);
    }

    #[test]
    fn laurent_split_round_trips(f in laurent(3)) {
        let (m, a, b) = f.laurent_split().unwrap();
        prop_assert!(b.is_constant());
        let back = &RationalFunction::laurent_monomial(&m, q(1)) * &RationalFunction::new(a, b).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn valuation_is_a_valuation(fan in small_fan(), f in nonzero_ratfunc(2), g in nonzero_ratfunc(2), c in 1i64..5) {
        for p in fan.toric_primes() {
            let of = ord_at(&f, &p, &fan).unwrap();
            let og = ord_at(&g, &p, &fan).unwrap();
            let (a, b) = (of.finite().unwrap(), og.finite().unwrap());
            prop_assert_eq!(ord_at(&(&f * &g), &p, &fan).unwrap(), Coeff::Fin(a + b));
            prop_assert!(ord_at(&(&f + &g), &p, &fan).unwrap() >= of.min(og));
            prop_assert_eq!(ord_at(&f.scale(&q(c)), &p, &fan).unwrap(), of);
            prop_assert_eq!(ord_at(&f.inv().unwrap(), &p, &fan).unwrap(), Coeff::Fin(-a));
        }
    }

    #[test]
    fn hypersurface_valuation_counts_factors(f in nonzero_poly(2, 3), k in 0u32..3) {
        let fan = affine(2);
        let h = &Polynomial::var(2, 0) + &(&Polynomial::var(2, 1) * &Polynomial::var(2, 1));
        let h = &h + &Polynomial::one(2);
        let p = PrimeDivisor::affine_hypersurface(&h).unwrap();
        let base = ord_at(&RationalFunction::from_poly(f.clone()), &p, &fan).unwrap().finite().unwrap();
        let g = RationalFunction::from_poly(&f * &h.pow(k));
        prop_assert_eq!(ord_at(&g, &p, &fan).unwrap(), Coeff::Fin(base + i64::from(k)));
    }

    #[test]
    fn divisor_meet_and_join(a in prop::collection::vec(-3i64..=3, 3), b in prop::collection::vec(-3i64..=3, 3)) {
        let d = |v: &[i64]| WeilDivisor::from_pairs(v.iter().enumerate().map(|(i, &c)| (PrimeDivisor::Toric(i), c)));
        let (x, y) = (d(&a), d(&b));
        let meet = x.meet(&y);
        let join = x.join(&y);
        prop_assert_eq!(&meet + &join, &x + &y);
        prop_assert_eq!(x.meet(&join), x.clone());
        prop_assert_eq!(x.join(&meet), x.clone());
        prop_assert_eq!(meet, y.meet(&x));
    }

    #[test]
    fn character_divisor_is_linear(m in prop::collection::vec(-3i64..=3, 3), m2 in prop::collection::vec(-3i64..=3, 3)) {
        let fan = projective(3);
        let sum: Vec<i64> = m.iter().zip(&m2).map(|(a, b)| a + b).collect();
        let lhs = fan.character_divisor(&sum).unwrap();
        let rhs = &fan.character_divisor(&m).unwrap() + &fan.character_divisor(&m2).unwrap();
        prop_assert_eq!(lhs, rhs);
        // principal divisors on projective space have degree zero
        prop_assert_eq!(fan.pairings(&m).unwrap().iter().sum::<i64>(), 0);
        let chi = fan.character(&m);
        for (rho, p) in fan.toric_primes().iter().enumerate() {
            prop_assert_eq!(ord_at(&chi, p, &fan).unwrap(), Coeff::Fin(fan.pairings(&m).unwrap()[rho]));
        }
    }

    #[test]
    fn seminorm_is_homogeneous(f in laurent(3), g in laurent(3), t in laurent_monomial(3)) {
        let fan = affine(3);
        let u = UData::new(&fan, vec![vec![0, 1, 0], vec![1, 0, -1], vec![0, -1, 0]]).unwrap();
        let (tf, tg) = (&t * &f, &t * &g);
        for p in fan.toric_primes() {
            let shift = ord_at(&t, &p, &fan).unwrap().finite().unwrap();
            prop_assert_eq!(hm_coeff(&u, &tf, &tg, &p, &fan).unwrap(), hm_coeff(&u, &f, &g, &p, &fan).unwrap().plus(shift));
        }
    }

    #[test]
    fn hm_decoration_scales_by_constants(f in laurent(3), g in laurent(3), c in 1i64..7) {
        let fan = affine(3);
        let u = UData::new(&fan, vec![vec![0, 2, -1], vec![1, 0, 0], vec![-1, 1, 0]]).unwrap();
        for p in fan.toric_primes() {
            let a = hm_coeff(&u, &f.scale(&q(c)), &g.scale(&q(c)), &p, &fan).unwrap();
            prop_assert_eq!(a, hm_coeff(&u, &f, &g, &p, &fan).unwrap());
        }
    }

    #[test]
    fn omega_is_restricted_from_the_euler_sequence(m in prop::collection::vec(laurent(2), 2)) {
        let fan = projective(2);
        let iota: Vec<Element> = fan
            .rays()
            .iter()
            .map(|r| {
                let mut acc = RationalFunction::zero(2);
                for (c, f) in r.vector.iter().zip(&m) {
                    acc = &acc + &f.scale(&q(*c));
                }
                Element::Single(acc)
            })
            .collect();
        let sum = Decoration::DirectSum(
            (0..fan.nrays()).map(|rho| Decoration::RankOne(WeilDivisor::from_pairs([(PrimeDivisor::Toric(rho), -1)]))).collect(),
        );
        for p in fan.toric_primes() {
            prop_assert_eq!(omega_coeff(&m, &p, &fan, false).unwrap(), coeff(&sum, &fan, &Element::Tuple(iota.clone()), &p).unwrap());
        }
    }

    #[test]
    fn tangent_does_not_depend_on_the_cone(a in prop::collection::vec(laurent(3), 3)) {
        let fan = projective(3);
        for (rho, p) in fan.toric_primes().iter().enumerate() {
            let values: Vec<Coeff> = fan.cones_containing(rho).iter().map(|&s| tangent_coeff_in(&a, p, &fan, s).unwrap()).collect();
            prop_assert!(values.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn dual_basis_pairs_to_delta(sigma in 0usize..4) {
        let fan = projective(3);
        for d in fan.dual_basis(sigma).unwrap() {
            for &r in &fan.cones()[sigma] {
                let pairing: i64 = d.m.iter().zip(&fan.ray(r).vector).map(|(a, b)| a * b).sum();
                prop_assert_eq!(pairing, i64::from(r == d.rho));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_idempotent_and_sound(m in module(2, 2, 3), v in vector(2, 2)) {
        let r = m.normal_form(&v).unwrap();
        prop_assert_eq!(m.normal_form(&r).unwrap(), r.clone());
        let diff: Vec<Polynomial> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        prop_assert!(m.contains(&diff).unwrap());
    }

    #[test]
    fn groebner_basis_closes_s_pairs(m in module(3, 2, 3)) {
        prop_assert!(m.groebner().is_groebner());
    }

    #[test]
    fn membership_of_combinations(m in module(2, 2, 3), cs in prop::collection::vec(poly(2, 2), 3)) {
        let mut v = vec![Polynomial::zero(2); 2];
        for (g, c) in m.generators().iter().zip(&cs) {
            v = combine(&v, g, c);
        }
        prop_assert!(m.contains(&v).unwrap());
    }

    #[test]
    fn syzygies_are_relations(m in module(2, 2, 3)) {
        let pres = m.syzygies();
        prop_assert!(pres.relations_hold());
    }

    #[test]
    fn intersection_lies_in_both(a in module(2, 2, 2), b in module(2, 2, 2)) {
        let i = a.intersect(&b).unwrap();
        prop_assert!(a.contains_module(&i).unwrap());
        prop_assert!(b.contains_module(&i).unwrap());
        // an element of both is found in the intersection
        let x = &Polynomial::var(2, 0) * &Polynomial::var(2, 1);
        let both: Vec<Vec<Polynomial>> = a.generators().iter().map(|g| g.iter().map(|p| p * &x).collect()).collect();
        let doubled = Submodule::new(2, 2, both).unwrap();
        prop_assert!(a.intersect(&doubled).unwrap().equal_modules(&doubled).unwrap());
    }

    #[test]
    fn saturation_contains_the_module(m in module(2, 2, 2), k in 1u32..3) {
        let x = Polynomial::var(2, 0);
        let s = m.saturate(&x).unwrap();
        prop_assert!(s.contains_module(&m).unwrap());
        // x^k v in M forces v into the saturation
        for g in m.generators() {
            let v: Vec<Polynomial> = g.iter().map(|p| p * &x.pow(k)).collect();
            let scaled = Submodule::new(2, 2, vec![v]).unwrap();
            let sat = scaled.saturate(&x).unwrap();
            prop_assert!(sat.contains(g).unwrap());
        }
        prop_assert!(s.saturate(&x).unwrap().equal_modules(&s).unwrap());
    }

    #[test]
    fn module_operations_are_deterministic(a in module(2, 2, 3), b in module(2, 2, 2)) {
        let x = a.intersect(&b).unwrap().minimized().unwrap();
        let y = a.intersect(&b).unwrap().minimized().unwrap();
        prop_assert_eq!(x.generators(), y.generators());
        prop_assert_eq!(a.syzygies().syzygies, a.syzygies().syzygies);
    }

    #[test]
    fn free_module_contains_units(i in 0usize..2, p in poly(2, 3)) {
        prop_assert!(Submodule::free(2, 2).contains(&unit_vector(2, 2, i, p)).unwrap());
    }
}
