use super::*;
use crate::arith::{q, Polynomial, Ring};

fn poly(n: usize, s: &str) -> Polynomial {
    let f = Ring::affine(n).parse(s).unwrap();
    assert!(f.is_polynomial(), "{s}");
    f.numer().clone()
}

fn vecs(n: usize, rows: &[&[&str]]) -> Vec<Vec<Polynomial>> {
    rows.iter().map(|r| r.iter().map(|s| poly(n, s)).collect()).collect()
}

fn module(n: usize, rank: usize, rows: &[&[&str]]) -> Submodule {
    Submodule::new(n, rank, vecs(n, rows)).unwrap()
}

#[test]
fn normal_form_examples() {
    let m = module(2, 1, &[&["x1 - x2"]]);
    assert_eq!(m.normal_form(&[poly(2, "x1^2")]).unwrap(), vec![poly(2, "x2^2")]);
    let m = module(1, 2, &[&["x1", "0"], &["0", "x1"]]);
    assert!(m.contains(&vecs(1, &[&["x1", "0"]])[0]).unwrap());
    assert_eq!(m.normal_form(&vecs(1, &[&["1", "0"]])[0]).unwrap(), vecs(1, &[&["1", "0"]])[0]);
}

#[test]
fn order_mismatch_is_reported() {
    let m = module(2, 1, &[&["x1 - x2"]]);
    let lex = ModuleOrder::new(1, BaseOrder::Lex, Position::Pot);
    assert!(matches!(
        m.groebner().normal_form_with(&[poly(2, "x1")], &lex),
        Err(crate::Error::OrderMismatch)
    ));
}

#[test]
fn buchberger_examples() {
    let m = module(2, 1, &[&["x1 + x2"], &["x1"]]);
    let gb = m.groebner();
    assert!(gb.elements().iter().any(|v| v[0] == poly(2, "x2")));
    assert!(gb.is_groebner());
    let m = module(2, 2, &[&["x1", "x2"]]);
    assert_eq!(m.groebner().elements(), vecs(2, &[&["x1", "x2"]]));
}

#[test]
fn syzygy_examples() {
    let p = module(2, 1, &[&["x1"], &["x2"]]).syzygies();
    assert_eq!(p.syzygies.len(), 1);
    let expected = module(2, 2, &[&["x2", "-x1"]]);
    assert!(Submodule::new(2, 2, p.syzygies.clone()).unwrap().equal_modules(&expected).unwrap());
    let p = Submodule::free(2, 2).syzygies();
    assert!(p.syzygies.is_empty());
}

#[test]
fn kernel_examples() {
    let k = kernel_of_matrix(2, &vecs(2, &[&["x1", "x2"]])).unwrap();
    assert!(k.equal_modules(&module(2, 2, &[&["x2", "-x1"]])).unwrap());
    let k = kernel_of_matrix(2, &vecs(2, &[&["1", "0"], &["0", "1"]])).unwrap();
    assert!(k.is_zero());
}

#[test]
fn intersection_examples() {
    let m = module(2, 1, &[&["x1"]]);
    let n = module(2, 1, &[&["x2"]]);
    assert!(m.intersect(&n).unwrap().equal_modules(&module(2, 1, &[&["x1*x2"]])).unwrap());
    assert!(m.intersect(&m).unwrap().equal_modules(&m).unwrap());
    let a = module(2, 2, &[&["1", "1"], &["x1", "0"], &["0", "x1"]]);
    let b = module(2, 2, &[&["1", "1"], &["x2", "0"], &["0", "x2"]]);
    let c = module(2, 2, &[&["1", "1"], &["x1*x2", "0"], &["0", "x1*x2"]]);
    assert!(a.intersect(&b).unwrap().equal_modules(&c).unwrap());
    assert!(matches!(a.intersect(&m), Err(crate::Error::RankMismatch(2, 1))));
}

#[test]
fn saturation_examples() {
    let x = poly(2, "x1");
    let m = module(2, 1, &[&["x1^2*x2"]]);
    assert!(m.saturate(&x).unwrap().equal_modules(&module(2, 1, &[&["x2"]])).unwrap());
    let m = module(2, 2, &[&["x1*x2", "0"], &["0", "x1"]]);
    let s = m.saturate(&x).unwrap();
    assert!(s.equal_modules(&module(2, 2, &[&["x2", "0"], &["0", "1"]])).unwrap());
    assert!(m.saturate(&Polynomial::one(2)).unwrap().equal_modules(&m).unwrap());
    assert!(matches!(m.saturate(&Polynomial::zero(2)), Err(crate::Error::ZeroDivisorInput)));
}

#[test]
fn equal_modules_examples() {
    let a = module(2, 1, &[&["x1"], &["x2"]]);
    let b = module(2, 1, &[&["x2"], &["x1"], &["x1 + x2"]]);
    assert!(a.equal_modules(&b).unwrap());
    assert!(!module(2, 1, &[&["x1"]]).equal_modules(&module(2, 1, &[&["x1^2"]])).unwrap());
}

#[test]
fn freeness_probe_examples() {
    let gens = vecs(
        3,
        &[&["x1 + x2*x3", "x1*x2 + x3"], &["x1*x3 + x2*x3^2", "x3^2"], &["x2^2*x3", "x2*x3"]],
    );
    let pres = Presentation { nvars: 3, generators: gens, syzygies: vecs(3, &[&["x3", "x2^2 - 1", "-x1 - x2*x3"]]) };
    assert!(pres.relations_hold());
    let at = |v: [i64; 3]| pres.local_freeness_probe(&v.map(q)).unwrap();
    let p = at([0, 1, 0]);
    assert_eq!((p.evaluated_rank, p.generic_rank, p.not_locally_free), (0, 2, true));
    let p = at([1, 1, 1]);
    assert_eq!((p.evaluated_rank, p.not_locally_free), (1, false));
    let free = Presentation { nvars: 2, generators: vecs(2, &[&["1", "0"], &["0", "1"]]), syzygies: vec![] };
    assert!(!free.local_freeness_probe(&[q(0), q(0)]).unwrap().not_locally_free);
    assert!(free.local_freeness_probe(&[q(0)]).is_err());
}

#[test]
fn minimized_drops_redundant() {
    let m = module(2, 1, &[&["x1"], &["x2"], &["x1 + x2"], &["x1*x2"]]);
    let r = m.minimized().unwrap();
    assert_eq!(r.generators().len(), 2);
    assert!(r.equal_modules(&m).unwrap());
}
