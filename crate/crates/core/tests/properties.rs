use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nilsol::algebra::NiceLieAlgebra;
use nilsol::catalog::{builtin, run_suite};
use nilsol::exactnum::{integer_kernel, kernel_rational, Rational};
use nilsol::geometry::{ricci_koszul_in, ricci_nice_diagonal_in, verify_nilsoliton, wick_rotate, DiagonalMetric};
use nilsol::nilsoliton::nikolayevsky;

fn catalog_algebras() -> Vec<NiceLieAlgebra> {
    builtin()
        .iter()
        .flat_map(|e| e.runs().into_iter().map(move |(p, _)| e.algebra(&p).unwrap()))
        .collect()
}

fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.3) { -1 } else { 1 };
            Rational::new(num.into(), rng.gen_range(1i64..=7).into())
        })
        .collect()
}

#[test]
fn koszul_matches_nice_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for alg in catalog_algebras().iter().filter(|a| a.dim() <= 7) {
        for _ in 0..5 {
            let g = random_metric(&mut rng, alg.dim());
            let oracle = ricci_koszul_in(alg.dim(), alg.brackets(), &g).unwrap();
            let nice = ricci_nice_diagonal_in(alg, &g).unwrap();
            assert!(oracle.is_diagonal(), "{}", alg.name());
            assert_eq!(oracle.diagonal(), nice.diagonal(), "{}", alg.name());
        }
    }
}

#[test]
fn root_matrix_identities() {
    for alg in catalog_algebras() {
        let m = alg.root_matrix();
        let ones = vec![Rational::one(); alg.dim()];
        assert!(m.matrix.mul_rat_vec(&ones).iter().all(|x| *x == -Rational::one()), "{}", alg.name());
        let k = integer_kernel(&m.matrix.transpose());
        for c in 0..k.cols() {
            let s = k.column(c).into_iter().fold(num_bigint::BigInt::zero(), |a, b| a + b);
            assert!(s.is_zero(), "{}", alg.name());
        }
        let nik = nikolayevsky(&m).unwrap();
        for d in kernel_rational(&m.matrix.to_rational()) {
            let tr_nd: Rational = nik.v.iter().zip(&d).map(|(a, b)| a * b).sum();
            let tr_d: Rational = d.iter().sum();
            assert_eq!(tr_nd, tr_d, "{}", alg.name());
            for b in alg.brackets() {
                assert_eq!(&d[b.k], &(&d[b.i] + &d[b.j]));
            }
        }
    }
}

#[test]
fn wick_preserves_nilsolitons() {
    let entries: Vec<_> = builtin().into_iter().filter(|e| e.dim <= 6).collect();
    for run in run_suite(&entries, &BTreeMap::new()) {
        let report = run.report.unwrap();
        let alg = entries.iter().find(|e| e.name == run.entry).unwrap().algebra(&run.params).unwrap();
        let m = alg.root_matrix();
        for (_, g) in &report.metrics {
            verify_nilsoliton(&alg, g).unwrap();
            for w in m.mod2.kernel_basis() {
                let w: Vec<i64> = w.to_bools().iter().map(|&b| b as i64).collect();
                let (rot, gw) = wick_rotate(&alg, &w, g).unwrap();
                verify_nilsoliton(&rot, &gw).unwrap();
                let (back, gb) = wick_rotate(&rot, &w, &gw).unwrap();
                assert_eq!(back.brackets(), alg.brackets());
                assert_eq!(&gb, g);
            }
        }
    }
}

#[test]
fn wick_requires_closed_vector() {
    let alg = nilsol::algebra::parse_nice_algebra("(0,0,e^{12})", &BTreeMap::new()).unwrap();
    let g = DiagonalMetric::riemannian(3);
    assert!(wick_rotate(&alg, &[1, 0, 0], &g).is_err());
    assert!(wick_rotate(&alg, &[1, 1, 0], &g).is_ok());
}
