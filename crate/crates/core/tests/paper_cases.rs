use std::collections::{BTreeMap, BTreeSet};

use nilsol::algebra::{parse_nice_algebra, NiceLieAlgebra};
use nilsol::exactnum::{rat, Rational};
use nilsol::geometry::{einstein_extension, verify_nilsoliton};
use nilsol::nilsoliton::{
    classify, condition_k, fmt_scaled_vector, fmt_signature_set, riemannian_exists, signatures, Obstruction, Signature,
};

fn alg(s: &str) -> NiceLieAlgebra {
    parse_nice_algebra(s, &BTreeMap::new()).unwrap()
}

fn with_a(s: &str, a: Rational) -> NiceLieAlgebra {
    parse_nice_algebra(s, &BTreeMap::from([("a".to_string(), a)])).unwrap()
}

fn set(items: &str) -> BTreeSet<Signature> {
    items.split(',').map(|s| Signature::parse(s).unwrap()).collect()
}

const A7421_9: &str = "(0,0,0,-e^{12},e^{13},e^{14}+e^{23},e^{16}+e^{34})";

#[test]
fn lorentzian_example() {
    let g = alg(A7421_9);
    let r = classify(&g).unwrap();
    assert_eq!(r.nikolayevsky.display(), "2/19(3,5,6,8,9,11,14)");
    assert_eq!(r.solutions.len(), 1);
    assert_eq!(r.solutions[0].to_string(), "1/19(5,-1,4,4,5,4)");
    assert_eq!(r.signatures, set("5,126,147,24567"));
    assert!(r.riemannian_signatures.is_empty());
    let (_, metric) = r.metrics.iter().find(|(d, _)| *d == Signature::parse("5").unwrap()).unwrap();
    assert_eq!(metric.to_string(), "(1,1,5/19,5/19,-5/361,20/361,100/6859)");
    let ext = einstein_extension(&g, metric).unwrap();
    assert_eq!(ext.e0_coefficient, rat(224, 19));
}

#[test]
fn sign_obstruction() {
    for s in [
        "(0,0,0,e^{12},e^{14},e^{13}+e^{24},e^{15},e^{17}+e^{23})",
        "(0,0,0,e^{12},-e^{14},e^{13}+e^{24},e^{15},e^{17}+e^{23})",
    ] {
        let g = alg(s);
        let fam = condition_k(&g.root_matrix()).unwrap();
        assert_eq!(fam.corank(), 0);
        assert_eq!(fmt_scaled_vector(&fam.x0), "1/22(3,5,-2,5,7,4,4)");
        let r = classify(&g).unwrap();
        assert_eq!(r.obstruction, Some(Obstruction::L));
        assert!(r.signatures.is_empty());
    }
}

#[test]
fn two_branches() {
    let g = alg("(0,0,e^{12},e^{13},e^{23},e^{15}+e^{24},e^{16}+e^{34})");
    let r = classify(&g).unwrap();
    assert_eq!(r.solutions.len(), 2);
    let mut seen = Vec::new();
    for x in &r.solutions {
        let v = x.exact_values().unwrap();
        assert_eq!(v[2], v[3]);
        seen.push((v[2].clone(), fmt_signature_set(&signatures(&g, x))));
    }
    seen.sort();
    assert_eq!(
        seen,
        vec![
            (rat(1, 5), "{∅,12457,1357,234}".to_string()),
            (rat(6, 5), "{125,1345,237,47}".to_string())
        ]
    );
}

#[test]
fn family_741_6() {
    let s = "(0,0,0,(a-1)e^{12},ae^{13},e^{23},e^{16}+e^{25}+e^{34})";
    let rows = [
        (rat(-1, 1), "12357,126,13456,147,234,24567,367,5,∅,1237,1256,1346,1457,2345,2467,3567,12367,125,134,14567,23456,247,357,6"),
        (rat(1, 2), "∅,1237,1256,1346,1457,2345,2467,3567,12357,126,13456,147,234,24567,367,5,12347,12456,136,157,235,267,34567,4"),
        (rat(2, 1), "12347,12456,136,157,235,267,34567,4,12367,125,134,14567,23456,247,357,6,∅,1237,1256,1346,1457,2345,2467,3567"),
    ];
    for (a, expected) in rows {
        let r = classify(&with_a(s, a)).unwrap();
        assert_eq!(r.signatures, set(expected));
        assert_eq!(r.signatures.len(), 24);
        assert_eq!(r.solutions.len(), 3);
    }
}

#[test]
fn family_754321_9() {
    let s = "(0,0,(1-a)e^{12},e^{13},ae^{14}+e^{23},e^{15}+e^{24},e^{16}+e^{25}+e^{34})";
    let r = classify(&with_a(s, rat(3, 4))).unwrap();
    assert_eq!(r.signatures, set("∅,123467,12457,125,1357,146,234,237,2456,34567"));
    assert_eq!(r.riemannian_signatures, set("∅,1357"));
    assert!(r.complete);
}

#[test]
fn dimension_eight_samples() {
    let f46 = "(0,0,0,e^{12},ae^{13},e^{14},e^{15}+e^{23},e^{24}+e^{16})";
    assert_eq!(classify(&with_a(f46, rat(1, 1))).unwrap().signatures, set("∅,13478,1458,357"));
    assert_eq!(
        classify(&with_a(f46, rat(40, 1))).unwrap().signatures,
        set("∅,123678,12568,13478,1458,234567,246,357")
    );
    let f88 = "(0,0,0,0,ae^{12},e^{13},e^{34}+e^{25}+e^{16},e^{24}+e^{36}+e^{15})";
    assert_eq!(classify(&with_a(f88, rat(1, 1))).unwrap().signatures, set("∅,12378"));
}

#[test]
fn monomial_obstruction() {
    let r = classify(&alg("(0,0,0,-e^{12},e^{14}+e^{23},e^{13}+e^{24},e^{34}+e^{15})")).unwrap();
    assert_eq!(r.nikolayevsky.display(), "4/11(1,1,2,2,3,3,4)");
    assert_eq!(r.obstruction, Some(Obstruction::P));
    assert!(r.signatures.is_empty());
}

#[test]
fn riemannian_existence() {
    assert!(riemannian_exists(&alg("(0,0,e^{12})")));
    assert!(riemannian_exists(&alg("(0,0,e^{12},e^{13})")));
    assert!(riemannian_exists(&alg("(0,0,0,e^{12},e^{13},e^{35}+e^{24})")));
    assert!(!riemannian_exists(&alg(A7421_9)));
}

#[test]
fn reported_metrics_verify() {
    let g = alg("(0,0,0,e^{12},e^{13},e^{14})");
    let r = classify(&g).unwrap();
    assert_eq!(r.metrics.len(), r.signatures.len());
    for (d, metric) in &r.metrics {
        assert_eq!(&metric.signature(), d);
        verify_nilsoliton(&g, metric).unwrap();
    }
}
