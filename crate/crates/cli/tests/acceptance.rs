//! One PASS/FAIL line per acceptance criterion. Criteria listed in
//! `UNATTAINABLE` are expected to fail; the run errors if they pass or if any
//! other criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nilsol::algebra::{parse_nice_algebra, NiceLieAlgebra};
use nilsol::catalog::{builtin, run_suite, CatalogEntry, SuiteRun};
use nilsol::exactnum::{integer_kernel, kernel_rational, rat, GF2Vector, Rational};
use nilsol::geometry::{einstein_extension, ricci_koszul_in, ricci_nice_diagonal_in, verify_nilsoliton, wick_rotate};
use nilsol::nilsoliton::{
    classify, condition_k, fmt_scaled_vector, fmt_signature_set, nikolayevsky, riemannian_exists, signatures, Obstruction,
    Signature,
};

/// 74321:7 is named but its structure equations are not given anywhere in the source material.
const UNATTAINABLE: &[u32] = &[8];

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alg(s: &str) -> NiceLieAlgebra {
    parse_nice_algebra(s, &BTreeMap::new()).unwrap()
}

fn set(items: &str) -> BTreeSet<Signature> {
    items.split(',').map(|s| Signature::parse(s).unwrap()).collect()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_nilsol"))
        .args(["classify", "--dim", "6", "--golden-diff"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || format!("exit {:?}: {stdout}", out.status.code()))?;
    let last = stdout.lines().last().unwrap_or_default().to_string();
    ensure(last == "34 runs, 0 diffs", || format!("summary {last:?}"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{last} in {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let g = alg("(0,0,0,-e^{12},e^{13},e^{14}+e^{23},e^{16}+e^{34})");
    let r = classify(&g).map_err(|e| e.to_string())?;
    let n = r.nikolayevsky.display();
    ensure(n == "2/19(3,5,6,8,9,11,14)", || format!("N = {n}"))?;
    ensure(r.solutions.len() == 1, || format!("{} solutions", r.solutions.len()))?;
    let x = r.solutions[0].to_string();
    ensure(x == "1/19(5,-1,4,4,5,4)", || format!("X = {x}"))?;
    ensure(r.signatures == set("5,126,147,24567"), || format!("S = {}", fmt_signature_set(&r.signatures)))?;
    let five = Signature::parse("5").unwrap();
    let metric = &r.metrics.iter().find(|(d, _)| *d == five).ok_or("no metric for signature 5")?.1;
    ensure(metric.to_string() == "(1,1,5/19,5/19,-5/361,20/361,100/6859)", || format!("metric {metric}"))?;
    let ext = einstein_extension(&g, metric).map_err(|e| e.to_string())?;
    ensure(ext.e0_coefficient == rat(224, 19), || format!("e0 coefficient {}", ext.e0_coefficient))?;
    Ok(format!("N, X, S, metric {metric}, e0 coefficient 224/19, Ric = -1/2 id"))
}

fn criterion_3(runs: &[SuiteRun]) -> Check {
    for s in [
        "(0,0,0,e^{12},e^{14},e^{13}+e^{24},e^{15},e^{17}+e^{23})",
        "(0,0,0,e^{12},-e^{14},e^{13}+e^{24},e^{15},e^{17}+e^{23})",
    ] {
        let g = alg(s);
        let fam = condition_k(&g.root_matrix()).map_err(|e| e.to_string())?;
        let x = fmt_scaled_vector(&fam.x0);
        ensure(fam.corank() == 0 && x == "1/22(3,5,-2,5,7,4,4)", || format!("X = {x}"))?;
        let r = classify(&g).map_err(|e| e.to_string())?;
        ensure(r.obstruction == Some(Obstruction::L), || format!("obstruction {:?}", r.obstruction))?;
    }
    let obstructed: Vec<&SuiteRun> = runs.iter().filter(|r| group_of(&r.entry) == "obstructed").collect();
    ensure(obstructed.len() == 16, || format!("{} obstructed entries", obstructed.len()))?;
    for run in &obstructed {
        ensure(run.diffs.is_empty(), || format!("{:?}", run.diffs))?;
        let rep = run.report.as_ref().map_err(|e| e.clone())?;
        ensure(rep.signatures.is_empty(), || format!("{} has signatures", run.entry))?;
    }
    Ok("85421:4a/b fail at L with X = 1/22(3,5,-2,5,7,4,4); 16 obstructed algebras match".into())
}

fn group_of(name: &str) -> String {
    builtin().into_iter().find(|e| e.name == name).and_then(|e| e.group).unwrap_or_default()
}

fn criterion_4(runs: &[SuiteRun]) -> Check {
    let g = alg("(0,0,e^{12},e^{13},e^{23},e^{15}+e^{24},e^{16}+e^{34})");
    let r = classify(&g).map_err(|e| e.to_string())?;
    let mut branches: Vec<(Rational, String)> = r
        .solutions
        .iter()
        .map(|x| {
            let v = x.exact_values().unwrap_or_default();
            (v.get(2).cloned().unwrap_or_default(), fmt_signature_set(&signatures(&g, x)))
        })
        .collect();
    branches.sort();
    let want = vec![
        (rat(1, 5), "{∅,12457,1357,234}".to_string()),
        (rat(6, 5), "{125,1345,237,47}".to_string()),
    ];
    ensure(branches == want, || format!("75421:4 branches {branches:?}"))?;
    let sampled: Vec<&SuiteRun> = runs
        .iter()
        .filter(|r| {
            let label = r.label();
            label == "754321:9[a=3/4]" || label.starts_with("741:6[")
        })
        .collect();
    ensure(sampled.len() == 4, || format!("{} sampled runs", sampled.len()))?;
    for run in sampled {
        ensure(run.diffs.is_empty(), || format!("{:?}", run.diffs))?;
    }
    Ok("75421:4 branches 1/5 and 6/5; 754321:9 at a=3/4; 741:6 at a=-1,1/2,2".into())
}

fn catalog_algebras(entries: &[CatalogEntry]) -> Vec<NiceLieAlgebra> {
    entries
        .iter()
        .flat_map(|e| e.runs().into_iter().map(move |(p, _)| e.algebra(&p).unwrap()))
        .collect()
}

fn criterion_5(entries: &[CatalogEntry]) -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let algebras: Vec<NiceLieAlgebra> = catalog_algebras(entries).into_iter().filter(|a| a.dim() <= 7).collect();
    let mut count = 0;
    for a in &algebras {
        for _ in 0..20 {
            let g: Vec<Rational> = (0..a.dim())
                .map(|_| {
                    let num: i64 = rng.gen_range(-12i64..=12);
                    let num = if num == 0 { 1 } else { num };
                    Rational::new(num.into(), rng.gen_range(1i64..=9).into())
                })
                .collect();
            let oracle = ricci_koszul_in(a.dim(), a.brackets(), &g).map_err(|e| e.to_string())?;
            let nice = ricci_nice_diagonal_in(a, &g).map_err(|e| e.to_string())?;
            ensure(oracle.is_diagonal(), || format!("{}: off-diagonal Ricci", a.name()))?;
            ensure(oracle.diagonal() == nice.diagonal(), || format!("{}: Ricci mismatch for {g:?}", a.name()))?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{count} metrics on {} algebras in {:.2}s", algebras.len(), elapsed.as_secs_f64()))
}

fn criterion_6(entries: &[CatalogEntry], runs: &[SuiteRun]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for a in catalog_algebras(entries) {
        let m = a.root_matrix();
        let ones = vec![Rational::from_integer(1.into()); a.dim()];
        ensure(m.matrix.mul_rat_vec(&ones).iter().all(|x| *x == rat(-1, 1)), || format!("{}: M·1", a.name()))?;
        let k = integer_kernel(&m.matrix.transpose());
        for c in 0..k.cols() {
            let s: num_bigint::BigInt = k.column(c).into_iter().sum();
            ensure(s == 0.into(), || format!("{}: kernel vector sum {s}", a.name()))?;
        }
        let nik = nikolayevsky(&m).map_err(|e| e.to_string())?;
        for d in kernel_rational(&m.matrix.to_rational()) {
            let tr_nd: Rational = nik.v.iter().zip(&d).map(|(x, y)| x * y).sum();
            let tr_d: Rational = d.iter().sum();
            ensure(tr_nd == tr_d, || format!("{}: Tr(N D) != Tr D", a.name()))?;
        }
    }
    let mut metrics = 0;
    let mut rotations = 0;
    for run in runs {
        let Ok(report) = &run.report else { continue };
        let entry = entries.iter().find(|e| e.name == run.entry).unwrap();
        let a = entry.algebra(&run.params).unwrap();
        let basis = a.root_matrix().mod2.kernel_basis();
        for (_, g) in &report.metrics {
            verify_nilsoliton(&a, g).map_err(|e| format!("{}: {e}", run.label()))?;
            metrics += 1;
            if basis.is_empty() {
                continue;
            }
            let mut w = GF2Vector::zeros(a.dim());
            for b in &basis {
                if rng.gen_bool(0.5) {
                    w.xor_assign(b);
                }
            }
            let w: Vec<i64> = w.to_bools().iter().map(|&b| b as i64 + 2 * rng.gen_range(0..2)).collect();
            let (rot, gw) = wick_rotate(&a, &w, g).map_err(|e| e.to_string())?;
            verify_nilsoliton(&rot, &gw).map_err(|e| format!("{} rotated by {w:?}: {e}", run.label()))?;
            let (back, gb) = wick_rotate(&rot, &w, &gw).map_err(|e| e.to_string())?;
            ensure(back.brackets() == a.brackets() && &gb == g, || format!("{}: double Wick", run.label()))?;
            rotations += 1;
        }
    }
    Ok(format!("{metrics} reported metrics verified, {rotations} random Wick rotations"))
}

fn criterion_7(runs: &[SuiteRun]) -> Check {
    let wanted = ["8531:46[a=1]", "8531:46[a=40]", "842:88[a=1]"];
    for label in wanted {
        let run = runs.iter().find(|r| r.label() == label).ok_or_else(|| format!("{label} not run"))?;
        ensure(run.diffs.is_empty(), || format!("{:?}", run.diffs))?;
    }
    Ok("8531:46 at a=1 and a=40, 842:88 at a=1".into())
}

fn criterion_8() -> Check {
    let positive = [
        ("31:1", "(0,0,e^{12})"),
        ("421:1", "(0,0,e^{12},e^{13})"),
        ("631:5a", "(0,0,0,e^{12},e^{13},e^{35}+e^{24})"),
    ];
    for (name, s) in positive {
        ensure(riemannian_exists(&alg(s)), || format!("{name} has no Riemannian nilsoliton"))?;
    }
    ensure(!riemannian_exists(&alg("(0,0,0,-e^{12},e^{13},e^{14}+e^{23},e^{16}+e^{34})")), || {
        "7421:9 has a Riemannian nilsoliton".into()
    })?;
    ensure(builtin().iter().any(|e| e.name == "74321:7"), || {
        "31:1, 421:1, 631:5a, 7421:9 agree; 74321:7 cannot be checked: its structure equations are unavailable".into()
    })?;
    Ok("all five agree".into())
}

fn main() -> ExitCode {
    let entries = builtin();
    let runs = run_suite(&entries, &BTreeMap::new());
    let results: Vec<(u32, Check)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3(&runs)),
        (4, criterion_4(&runs)),
        (5, criterion_5(&entries)),
        (6, criterion_6(&entries, &runs)),
        (7, criterion_7(&runs)),
        (8, criterion_8()),
    ];
    let mut unexpected = 0;
    for (n, r) in &results {
        let expected_fail = UNATTAINABLE.contains(n);
        match r {
            Ok(msg) => println!("criterion {n}: PASS  {msg}"),
            Err(msg) => println!("criterion {n}: FAIL  {msg}"),
        }
        if r.is_ok() == expected_fail {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria differ from the expected outcome");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
