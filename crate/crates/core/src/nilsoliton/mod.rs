//! Diagonal nilsoliton metrics: the Nikolayevsky derivation, the affine,
//! nonvanishing, sign and monomial conditions (K, H, L, P), signature sets
//! and exact metric reconstruction. λ is normalized to −½ throughout.

mod krawczyk;
mod solve;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{parse_nice_algebra, AlgebraError, NiceLieAlgebra, RootMatrix};
use crate::exactnum::fm::{fm_feasible, Constraint};
use crate::exactnum::gf2::{gf2_affine_solutions, span, GF2Vector};
use crate::exactnum::interval::Interval;
use crate::exactnum::intkernel::integer_kernel;
use crate::exactnum::linalg::{dot, echelon_with_order, kernel_rational, solve_rational, RatMatrix};
use crate::exactnum::mpoly::MPoly;
use crate::exactnum::powerproduct::PowerProduct;
use crate::exactnum::rational::{fmt_rational, int, primitive_scaling, rat, to_f64, Rational, Sign};
use crate::exactnum::roots::RootError;
use crate::geometry::{verify_nilsoliton, DiagonalMetric};

pub use solve::{seed_grid, set_seed_grid, Affine};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NilsolitonError {
    #[error("no pre-Einstein solution: [1] is not in the image of M·ᵗM")]
    NoPreEinstein,
    #[error("condition K has no solution")]
    NoSolutionK,
    #[error("Nikolayevsky check failed: {0}")]
    NikolayevskyCheck(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("X is not exactly representable (numeric solution)")]
    NotExact,
    #[error("X has a zero entry")]
    ZeroEntry,
    #[error("signature {0} does not satisfy logsign X = M₂δ")]
    SignatureMismatch(Signature),
    #[error("X does not satisfy condition P: {0}")]
    Inconsistent(String),
    #[error("metric verification failed for signature {0}: {1}")]
    Verification(Signature, String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Set of indices `i` with `g_i < 0`, 0-based internally and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    indices: Vec<usize>,
}

impl Signature {
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        Signature { indices }
    }

    pub fn riemannian() -> Self {
        Signature { indices: Vec::new() }
    }

    pub fn from_gf2(v: &GF2Vector) -> Self {
        Signature { indices: v.support() }
    }

    pub fn to_gf2(&self, n: usize) -> GF2Vector {
        GF2Vector::from_support(n, &self.indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Parses "∅" (or an empty string) and digit strings such as "135".
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Some(Signature::riemannian());
        }
        let idx: Option<Vec<usize>> = s
            .chars()
            .map(|c| c.to_digit(10).filter(|&d| d >= 1).map(|d| d as usize - 1))
            .collect();
        idx.map(Signature::from_indices)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return f.write_str("∅");
        }
        for i in &self.indices {
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

/// Renders a signature set as `{∅,12,13}`.
pub fn fmt_signature_set(set: &BTreeSet<Signature>) -> String {
    let parts: Vec<String> = set.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NikolayevskyData {
    pub b: Vec<Rational>,
    pub v: Vec<Rational>,
}

impl NikolayevskyData {
    pub fn is_zero(&self) -> bool {
        self.v.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> Rational {
        self.v.iter().sum()
    }

    /// `2/3(1,1,2)`; the scalar is omitted when it is one.
    pub fn display(&self) -> String {
        fmt_scaled_vector(&self.v)
    }
}

pub fn fmt_scaled_vector(v: &[Rational]) -> String {
    match primitive_scaling(v) {
        None => format!("({})", vec!["0"; v.len()].join(",")),
        Some((scale, ints)) => {
            let body: Vec<String> = ints.iter().map(|x| x.to_string()).collect();
            if scale.is_one() {
                format!("({})", body.join(","))
            } else {
                format!("{}({})", fmt_rational(&scale), body.join(","))
            }
        }
    }
}

fn gram(m: &RootMatrix) -> RatMatrix {
    let a = m.matrix.to_rational();
    a.mul(&a.transpose())
}

/// `b` of minimum norm with `M ᵗM b = [1]`, and `v = ᵗM b + [1]`.
pub fn nikolayevsky(m: &RootMatrix) -> Result<NikolayevskyData, NilsolitonError> {
    let n = m.matrix.cols();
    let rows = m.len();
    if rows == 0 {
        return Ok(NikolayevskyData {
            b: Vec::new(),
            v: vec![Rational::one(); n],
        });
    }
    let g = gram(m);
    let ones = vec![Rational::one(); rows];
    let b0 = solve_rational(&g, &ones).ok_or(NilsolitonError::NoPreEinstein)?;
    let kernel = kernel_rational(&g);
    let b = if kernel.is_empty() {
        b0
    } else {
        let k = RatMatrix::from_rows(kernel.clone()).transpose();
        let kt = k.transpose();
        let y = solve_rational(&kt.mul(&k), &kt.mul_vec(&b0)).expect("Gram matrix of a basis is invertible");
        let proj = k.mul_vec(&y);
        b0.iter().zip(&proj).map(|(x, p)| x - p).collect()
    };
    let mt = m.matrix.transpose().to_rational();
    let v: Vec<Rational> = mt.mul_vec(&b).into_iter().map(|x| x + Rational::one()).collect();
    for d in kernel_rational(&m.matrix.to_rational()) {
        let lhs = dot(&v, &d);
        let rhs: Rational = d.iter().sum();
        if lhs != rhs {
            return Err(NilsolitonError::NikolayevskyCheck(format!(
                "Tr(N·D) = {} but Tr D = {}",
                fmt_rational(&lhs),
                fmt_rational(&rhs)
            )));
        }
    }
    Ok(NikolayevskyData { b, v })
}

/// Solutions `X0 + Σ t_i α_i` of `M ᵗM X = [1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFamily {
    pub x0: Vec<Rational>,
    /// Integer basis of `ker ᵗM`, each vector of length `m`.
    pub kernel: Vec<Vec<i64>>,
}

impl AffineFamily {
    pub fn corank(&self) -> usize {
        self.kernel.len()
    }

    /// `X_h(t)` as affine forms in the kernel coordinates.
    pub fn forms(&self) -> Vec<Affine> {
        self.x0
            .iter()
            .enumerate()
            .map(|(h, x)| Affine {
                coeffs: self.kernel.iter().map(|a| int(a[h])).collect(),
                constant: x.clone(),
            })
            .collect()
    }

    /// Indices of entries that vanish identically on the family.
    pub fn zero_entries(&self) -> Vec<usize> {
        self.forms()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_zero())
            .map(|(h, _)| h)
            .collect()
    }

    pub fn at(&self, t: &[Rational]) -> Vec<Rational> {
        self.forms().iter().map(|f| f.eval(t)).collect()
    }
}

pub fn condition_k(m: &RootMatrix) -> Result<AffineFamily, NilsolitonError> {
    let rows = m.len();
    if rows == 0 {
        return Ok(AffineFamily {
            x0: Vec::new(),
            kernel: Vec::new(),
        });
    }
    let x0 = solve_rational(&gram(m), &vec![Rational::one(); rows]).ok_or(NilsolitonError::NoSolutionK)?;
    let kernel = integer_kernel(&m.matrix.transpose())
        .columns()
        .into_iter()
        .map(|c| c.iter().map(|x| x.to_i64().expect("small kernel entry")).collect())
        .collect();
    Ok(AffineFamily { x0, kernel })
}

/// The cleared monomial equations of condition P over an affine family.
#[derive(Clone, Debug)]
pub struct PSystem {
    pub alphas: Vec<Vec<i64>>,
    /// `c_h²` in bracket order.
    pub c_squared: Vec<Rational>,
    /// One polynomial per kernel vector, in the kernel coordinates.
    pub equations: Vec<MPoly>,
    /// Entries of X that are not constant on the family; their zero sets are excluded.
    pub zero_loci: Vec<Affine>,
    /// For a one-parameter family, the parameter values where some entry vanishes.
    pub excluded_values: Vec<Rational>,
}

pub fn build_p(alg: &NiceLieAlgebra, family: &AffineFamily) -> PSystem {
    let c_squared: Vec<Rational> = alg.constants().iter().map(|c| c * c).collect();
    let forms = family.forms();
    let k = family.corank();
    let solver = solve::Solver::new(&family.kernel, &c_squared);
    let equations = if k == 0 { Vec::new() } else { solver.equations(&forms, k) };
    let zero_loci: Vec<Affine> = forms.iter().filter(|f| !f.is_constant()).cloned().collect();
    let mut excluded_values: Vec<Rational> = if k == 1 {
        zero_loci.iter().map(|f| -&f.constant / &f.coeffs[0]).collect()
    } else {
        Vec::new()
    };
    excluded_values.sort();
    excluded_values.dedup();
    PSystem {
        alphas: family.kernel.clone(),
        c_squared,
        equations,
        zero_loci,
        excluded_values,
    }
}

/// One entry of a solved X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XEntry {
    Exact(Rational),
    /// Irrational value certified to lie in the interval.
    Enclosed(Interval),
}

impl XEntry {
    pub fn approx(&self) -> f64 {
        match self {
            XEntry::Exact(q) => to_f64(q),
            XEntry::Enclosed(i) => to_f64(&i.mid()),
        }
    }
}

impl fmt::Display for XEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XEntry::Exact(q) => f.write_str(&fmt_rational(q)),
            XEntry::Enclosed(_) => write!(f, "≈{:.10}", self.approx()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedX {
    pub entries: Vec<XEntry>,
    pub signs: Vec<Sign>,
    /// Set only for solutions found by the numeric fallback.
    pub numeric_flag: bool,
    /// The solution is a sample point of a positive-dimensional solution set.
    pub on_continuum: bool,
}

impl SolvedX {
    pub fn exact_values(&self) -> Option<Vec<Rational>> {
        self.entries
            .iter()
            .map(|e| match e {
                XEntry::Exact(q) => Some(q.clone()),
                XEntry::Enclosed(_) => None,
            })
            .collect()
    }

    pub fn logsign(&self) -> GF2Vector {
        GF2Vector::from_bools(&self.signs.iter().map(|s| s.logsign()).collect::<Vec<_>>())
    }

    fn same_point(&self, other: &SolvedX) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| match (a, b) {
            (XEntry::Exact(x), XEntry::Exact(y)) => x == y,
            (XEntry::Exact(x), XEntry::Enclosed(i)) | (XEntry::Enclosed(i), XEntry::Exact(x)) => i.contains(x),
            (XEntry::Enclosed(i), XEntry::Enclosed(j)) => i.intersects(j),
        })
    }
}

impl fmt::Display for SolvedX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(values) = self.exact_values() {
            return f.write_str(&fmt_scaled_vector(&values));
        }
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Solutions of condition P on the family, with solver diagnostics.
#[derive(Clone, Debug)]
pub struct PSolutions {
    pub solutions: Vec<SolvedX>,
    pub warnings: Vec<String>,
    /// False when a numeric search was used or a candidate was dropped.
    pub complete: bool,
}

pub fn solve_p(system: &PSystem, family: &AffineFamily) -> Result<PSolutions, NilsolitonError> {
    let mut solver = solve::Solver::new(&system.alphas, &system.c_squared);
    solver.solve(family.forms(), family.corank())?;
    let mut solutions: Vec<SolvedX> = Vec::new();
    for x in solver.found {
        if !solutions.iter().any(|y| y.same_point(&x)) {
            solutions.push(x);
        }
    }
    Ok(PSolutions {
        solutions,
        warnings: solver.warnings,
        complete: solver.complete,
    })
}

/// All δ with `M₂ δ = logsign X`.
pub fn signatures(alg: &NiceLieAlgebra, x: &SolvedX) -> BTreeSet<Signature> {
    let m = alg.root_matrix();
    gf2_affine_solutions(&m.mod2, &x.logsign())
        .map(|sol| sol.iter().map(|v| Signature::from_gf2(&v)).collect())
        .unwrap_or_default()
}

/// The metric `g` with signs `(−1)^δ` and `e^{M}(|g|)·c² = |X|`; free
/// coordinates of the leftmost columns are set to one.
pub fn reconstruct_metric(alg: &NiceLieAlgebra, x: &SolvedX, delta: &Signature) -> Result<DiagonalMetric, NilsolitonError> {
    let values = x.exact_values().ok_or(NilsolitonError::NotExact)?;
    let m = alg.root_matrix();
    let n = alg.dim();
    if m.mod2.mul_vec(&delta.to_gf2(n)) != x.logsign() {
        return Err(NilsolitonError::SignatureMismatch(delta.clone()));
    }
    let w: Vec<PowerProduct> = values
        .iter()
        .zip(alg.constants())
        .map(|(xv, c)| PowerProduct::from_rational(&(xv.abs() / (&c * &c))).ok_or(NilsolitonError::ZeroEntry))
        .collect::<Result<_, _>>()?;
    let order: Vec<usize> = (0..n).rev().collect();
    let e = echelon_with_order(&m.matrix.to_rational(), &order);
    let combine = |r: usize| -> PowerProduct {
        let mut acc = PowerProduct::one();
        for (h, wh) in w.iter().enumerate() {
            let t = e.transform.get(r, h);
            if !t.is_zero() {
                acc = acc.mul(&wh.pow(t).expect("positive base"));
            }
        }
        acc
    };
    for r in e.rank()..m.len() {
        if combine(r) != PowerProduct::one() {
            return Err(NilsolitonError::Inconsistent(format!("relation {} of the root matrix", r + 1)));
        }
    }
    let mut g = vec![PowerProduct::one(); n];
    for (r, &col) in e.pivots.iter().enumerate() {
        g[col] = combine(r);
    }
    for i in delta.indices() {
        g[*i] = g[*i].neg();
    }
    Ok(DiagonalMetric::new(g))
}

/// Sign patterns reachable by some X satisfying K and H, and the δ they induce.
pub fn feasible_signatures(alg: &NiceLieAlgebra) -> BTreeSet<Signature> {
    let m = alg.root_matrix();
    let Ok(family) = condition_k(&m) else {
        return BTreeSet::new();
    };
    if !family.zero_entries().is_empty() {
        return BTreeSet::new();
    }
    let forms = family.forms();
    let k = family.corank();
    let mut out = BTreeSet::new();
    for s in span(m.len(), &m.mod2.image_basis()) {
        let constraints: Vec<Constraint> = forms
            .iter()
            .enumerate()
            .map(|(h, f)| {
                let sign = if s.get(h) { -Rational::one() } else { Rational::one() };
                Constraint::new(f.coeffs.iter().map(|c| c * &sign).collect(), &f.constant * &sign, true)
            })
            .collect();
        if fm_feasible(&constraints, k) {
            if let Some(sol) = gf2_affine_solutions(&m.mod2, &s) {
                out.extend(sol.iter().map(|v| Signature::from_gf2(&v)));
            }
        }
    }
    out
}

/// Whether condition K has a solution with every entry positive.
pub fn riemannian_exists(alg: &NiceLieAlgebra) -> bool {
    let Ok(family) = condition_k(&alg.root_matrix()) else {
        return false;
    };
    let constraints: Vec<Constraint> = family
        .forms()
        .into_iter()
        .map(|f| Constraint::new(f.coeffs, f.constant, true))
        .collect();
    fm_feasible(&constraints, family.corank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obstruction {
    NZero,
    K,
    H,
    L,
    P,
}

impl Obstruction {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.trim().trim_matches(|c| c == '(' || c == ')') {
            "K" => Obstruction::K,
            "H" => Obstruction::H,
            "L" => Obstruction::L,
            "P" => Obstruction::P,
            "N=0" => Obstruction::NZero,
            _ => return None,
        })
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::NZero => "N=0",
            Obstruction::K => "K",
            Obstruction::H => "H",
            Obstruction::L => "L",
            Obstruction::P => "P",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub name: String,
    pub algebra: String,
    pub nikolayevsky: NikolayevskyData,
    pub corank: usize,
    pub family: Option<AffineFamily>,
    pub solutions: Vec<SolvedX>,
    /// S: every signature of a diagonal nilsoliton metric.
    pub signatures: BTreeSet<Signature>,
    /// S₀: signatures reachable from a Riemannian one by `ker M₂` sign flips.
    pub riemannian_signatures: BTreeSet<Signature>,
    /// Signatures allowed by K, H and L alone.
    pub feasible: BTreeSet<Signature>,
    pub obstruction: Option<Obstruction>,
    pub failing_stages: Vec<Obstruction>,
    pub metrics: Vec<(Signature, DiagonalMetric)>,
    pub warnings: Vec<String>,
    pub complete: bool,
}

/// Runs the full pipeline; every reported metric is checked with
/// [`verify_nilsoliton`] before it is included.
pub fn classify(alg: &NiceLieAlgebra) -> Result<ClassificationReport, NilsolitonError> {
    let m = alg.root_matrix();
    let nik = nikolayevsky(&m)?;
    let mut report = ClassificationReport {
        name: alg.name().to_string(),
        algebra: alg.to_notation(),
        nikolayevsky: nik.clone(),
        corank: 0,
        family: None,
        solutions: Vec::new(),
        signatures: BTreeSet::new(),
        riemannian_signatures: BTreeSet::new(),
        feasible: BTreeSet::new(),
        obstruction: None,
        failing_stages: Vec::new(),
        metrics: Vec::new(),
        warnings: Vec::new(),
        complete: true,
    };
    if nik.is_zero() {
        report.failing_stages.push(Obstruction::NZero);
        report.obstruction = Some(Obstruction::NZero);
        return Ok(report);
    }
    let family = match condition_k(&m) {
        Ok(f) => f,
        Err(NilsolitonError::NoSolutionK) => {
            report.failing_stages.push(Obstruction::K);
            report.obstruction = Some(Obstruction::K);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.corank = family.corank();
    report.family = Some(family.clone());
    if !family.zero_entries().is_empty() {
        report.failing_stages.push(Obstruction::H);
    }
    report.feasible = feasible_signatures(alg);
    if report.feasible.is_empty() && report.failing_stages.is_empty() {
        report.failing_stages.push(Obstruction::L);
    }
    if riemannian_exists(alg) {
        report.riemannian_signatures = span(alg.dim(), &m.mod2.kernel_basis())
            .iter()
            .map(Signature::from_gf2)
            .collect();
    }
    if !report.failing_stages.is_empty() {
        report.obstruction = report.failing_stages.first().copied();
        return Ok(report);
    }
    let system = build_p(alg, &family);
    let solved = solve_p(&system, &family)?;
    report.warnings.extend(solved.warnings);
    report.complete = solved.complete;
    for x in &solved.solutions {
        let sigs = signatures(alg, x);
        if x.exact_values().is_some() {
            for delta in &sigs {
                let g = reconstruct_metric(alg, x, delta)?;
                verify_nilsoliton(alg, &g).map_err(|e| NilsolitonError::Verification(delta.clone(), e.to_string()))?;
                report.metrics.push((delta.clone(), g));
            }
        }
        report.signatures.extend(sigs);
    }
    report.solutions = solved.solutions;
    if report.signatures.is_empty() {
        report.failing_stages.push(if report.solutions.is_empty() { Obstruction::P } else { Obstruction::L });
        report.obstruction = Some(Obstruction::P);
    }
    if !report.signatures.is_subset(&report.feasible) {
        report.warnings.push("S is not contained in the K/H/L-feasible set".into());
    }
    if !report.riemannian_signatures.is_subset(&report.signatures) && report.complete {
        report.warnings.push("S₀ is not contained in S".into());
    }
    Ok(report)
}

/// Default sample values for a one-parameter family.
pub fn default_samples() -> Vec<Rational> {
    vec![int(-2), rat(-1, 2), rat(1, 4), rat(1, 2), rat(3, 4), int(2), int(5)]
}

/// Classifies a parametric family at each sample value; values that make a
/// structure constant vanish or break validation are reported as errors.
pub fn sweep(
    differential: &str,
    symbol: &str,
    samples: &[Rational],
) -> Vec<(Rational, Result<ClassificationReport, NilsolitonError>)> {
    samples
        .iter()
        .map(|a| {
            let params = BTreeMap::from([(symbol.to_string(), a.clone())]);
            let result = parse_nice_algebra(differential, &params)
                .map_err(NilsolitonError::from)
                .and_then(|alg| classify(&alg));
            (a.clone(), result)
        })
        .collect()
}

/// `(g, λ) ↦ (s·g, λ/s)` for a positive scale `s`.
pub fn rescale(g: &DiagonalMetric, lambda: &Rational, s: &Rational) -> Option<(DiagonalMetric, Rational)> {
    if !s.is_positive() {
        return None;
    }
    let f = PowerProduct::from_rational(s)?;
    Some((
        DiagonalMetric::new(g.coefficients.iter().map(|c| c.mul(&f)).collect()),
        lambda / s,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> NiceLieAlgebra {
        parse_nice_algebra(s, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn heisenberg() {
        let h = alg("(0,0,e^{12})");
        let nik = nikolayevsky(&h.root_matrix()).unwrap();
        assert_eq!(nik.display(), "2/3(1,1,2)");
        let r = classify(&h).unwrap();
        assert_eq!(fmt_signature_set(&r.signatures), "{∅,12,13,23}");
        assert_eq!(r.riemannian_signatures, r.signatures);
        let g = &r.metrics.iter().find(|(d, _)| d.indices().is_empty()).unwrap().1;
        assert_eq!(g.to_string(), "(1,1,1/3)");
    }

    #[test]
    fn signature_order_and_parse() {
        let a = Signature::parse("∅").unwrap();
        let b = Signature::parse("12457").unwrap();
        let c = Signature::parse("1357").unwrap();
        assert!(a < b && b < c);
        assert_eq!(c.to_string(), "1357");
        assert!(Signature::parse("1a").is_none());
    }
}
