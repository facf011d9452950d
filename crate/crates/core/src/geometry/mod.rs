//! Ricci curvature of diagonal left-invariant metrics, nilsoliton checks,
//! Wick rotations and rank-one Einstein extensions.

mod scalar;

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraError, Bracket, NiceLieAlgebra};
use crate::exactnum::powerproduct::{PowerProduct, Radical};
use crate::exactnum::rational::{int, rat, Rational, Sign};
use crate::nilsoliton::{nikolayevsky, NilsolitonError, Signature};

pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("metric has {0} coefficients but the algebra has dimension {1}")]
    DimensionMismatch(usize, usize),
    #[error("degenerate metric: coefficient {0} is zero")]
    Degenerate(usize),
    #[error("not a nilsoliton with λ = -1/2; defect {}", fmt_defect(.0))]
    NotNilsoliton(Vec<Radical>),
    #[error("Ricci operator is a multiple of the identity (Einstein or Ricci-flat), not Nil4")]
    NotNil4,
    #[error("W mod 2 is not in the kernel of the mod 2 root matrix; the rotated span is not closed under the bracket")]
    NotClosed,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Nikolayevsky(#[from] NilsolitonError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn fmt_defect(d: &[Radical]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `g_1 e^1⊗e^1 + … + g_n e^n⊗e^n`; each coefficient carries its own sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalMetric {
    pub coefficients: Vec<PowerProduct>,
}

impl DiagonalMetric {
    pub fn new(coefficients: Vec<PowerProduct>) -> Self {
        DiagonalMetric { coefficients }
    }

    /// `None` if some entry is zero.
    pub fn from_rationals(values: &[Rational]) -> Option<Self> {
        values
            .iter()
            .map(PowerProduct::from_rational)
            .collect::<Option<Vec<_>>>()
            .map(DiagonalMetric::new)
    }

    pub fn riemannian(n: usize) -> Self {
        DiagonalMetric::new(vec![PowerProduct::one(); n])
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coefficients.iter().map(|c| c.to_rational()).collect()
    }

    pub fn to_radicals(&self) -> Vec<Radical> {
        self.coefficients.iter().map(Radical::from_power_product).collect()
    }

    pub fn signature(&self) -> Signature {
        Signature::from_indices(
            self.coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| c.sign() == Sign::Negative)
                .map(|(i, _)| i),
        )
    }
}

impl fmt::Display for DiagonalMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ricci operator as a full matrix, `operator[j][i]` being the `e_j`
/// component of `Ric(e_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciResult<S> {
    pub operator: Vec<Vec<S>>,
    pub scalar: S,
}

impl<S: Scalar> RicciResult<S> {
    fn from_diagonal(d: Vec<S>) -> Self {
        let n = d.len();
        let scalar = d.iter().fold(S::zero(), |acc, x| acc.add(x));
        let mut operator = vec![vec![S::zero(); n]; n];
        for (i, x) in d.into_iter().enumerate() {
            operator[i][i] = x;
        }
        RicciResult { operator, scalar }
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.operator.len()).map(|i| self.operator[i][i].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.operator
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }
}

/// Metric Lie algebra with arbitrary structure constants and a diagonal metric.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricLieAlgebra {
    pub dim: usize,
    /// `[e_i, e_j] = Σ c·e_k` entries with `i < j`, 0-based.
    pub brackets: Vec<Bracket>,
    pub metric: DiagonalMetric,
}

impl MetricLieAlgebra {
    pub fn new(dim: usize, brackets: Vec<Bracket>, metric: DiagonalMetric) -> Result<Self, GeometryError> {
        if metric.dim() != dim {
            return Err(GeometryError::DimensionMismatch(metric.dim(), dim));
        }
        let mla = MetricLieAlgebra { dim, brackets, metric };
        let bad = jacobi_violations(&mla.structure_constants());
        if !bad.is_empty() {
            return Err(AlgebraError::Jacobi(bad).into());
        }
        Ok(mla)
    }

    pub fn from_nice(alg: &NiceLieAlgebra, metric: DiagonalMetric) -> Result<Self, GeometryError> {
        MetricLieAlgebra::new(alg.dim(), alg.brackets().to_vec(), metric)
    }

    /// Dense antisymmetric `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rational>>> {
        dense_constants(self.dim, &self.brackets)
    }
}

fn dense_constants(n: usize, brackets: &[Bracket]) -> Vec<Vec<Vec<Rational>>> {
    let mut c = vec![vec![vec![<Rational as Zero>::zero(); n]; n]; n];
    for b in brackets {
        c[b.i][b.j][b.k] += &b.c;
        c[b.j][b.i][b.k] -= &b.c;
    }
    c
}

fn jacobi_violations(c: &[Vec<Vec<Rational>>]) -> Vec<(usize, usize, usize)> {
    let n = c.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let ok = (0..n).all(|m| {
                    let mut s = <Rational as Zero>::zero();
                    for l in 0..n {
                        s += &c[i][j][l] * &c[l][k][m] + &c[j][k][l] * &c[l][i][m] + &c[k][i][l] * &c[l][j][m];
                    }
                    Zero::is_zero(&s)
                });
                if !ok {
                    out.push((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    out
}

fn check_metric<S: Scalar>(g: &[S], n: usize) -> Result<Vec<S>, GeometryError> {
    if g.len() != n {
        return Err(GeometryError::DimensionMismatch(g.len(), n));
    }
    g.iter()
        .enumerate()
        .map(|(i, x)| x.recip().ok_or(GeometryError::Degenerate(i + 1)))
        .collect()
}

/// `Ric = ½ ᵗM X` with `X_h = c_h² g_k / (g_i g_j)`.
pub fn ricci_nice_diagonal_in<S: Scalar>(alg: &NiceLieAlgebra, g: &[S]) -> Result<RicciResult<S>, GeometryError> {
    let ginv = check_metric(g, alg.dim())?;
    let half = S::from_rational(&rat(1, 2));
    let mut ric = vec![S::zero(); alg.dim()];
    for b in alg.brackets() {
        let x = g[b.k]
            .mul(&ginv[b.i])
            .mul(&ginv[b.j])
            .mul(&S::from_rational(&(&b.c * &b.c)))
            .mul(&half);
        ric[b.k] = ric[b.k].add(&x);
        ric[b.i] = ric[b.i].sub(&x);
        ric[b.j] = ric[b.j].sub(&x);
    }
    Ok(RicciResult::from_diagonal(ric))
}

pub fn ricci_nice_diagonal(alg: &NiceLieAlgebra, g: &DiagonalMetric) -> Result<RicciResult<Radical>, GeometryError> {
    ricci_nice_diagonal_in(alg, &g.to_radicals())
}

/// Levi-Civita connection from the Koszul formula, then the Ricci tensor
/// `Ric(y, z) = tr(x ↦ R(x, y)z)` raised with the inverse metric.
pub fn ricci_koszul_in<S: Scalar>(n: usize, brackets: &[Bracket], g: &[S]) -> Result<RicciResult<S>, GeometryError> {
    let ginv = check_metric(g, n)?;
    let c = dense_constants(n, brackets);
    let cs: Vec<Vec<Vec<Option<S>>>> = c
        .iter()
        .map(|a| {
            a.iter()
                .map(|b| b.iter().map(|x| (!Zero::is_zero(x)).then(|| S::from_rational(x))).collect())
                .collect()
        })
        .collect();
    let half = S::from_rational(&rat(1, 2));
    // gamma[i][j][k]: e_k component of ∇_{e_i} e_j
    let mut gamma = vec![vec![vec![S::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = S::zero();
                if let Some(x) = &cs[i][j][k] {
                    s = s.add(&x.mul(&g[k]));
                }
                if let Some(x) = &cs[j][k][i] {
                    s = s.sub(&x.mul(&g[i]));
                }
                if let Some(x) = &cs[k][i][j] {
                    s = s.add(&x.mul(&g[j]));
                }
                if !s.is_zero() {
                    gamma[i][j][k] = s.mul(&ginv[k]).mul(&half);
                }
            }
        }
    }
    let mut ric = vec![vec![S::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut s = S::zero();
            for l in 0..n {
                for p in 0..n {
                    if !gamma[a][b][p].is_zero() && !gamma[l][p][l].is_zero() {
                        s = s.add(&gamma[a][b][p].mul(&gamma[l][p][l]));
                    }
                    if !gamma[l][b][p].is_zero() && !gamma[a][p][l].is_zero() {
                        s = s.sub(&gamma[l][b][p].mul(&gamma[a][p][l]));
                    }
                }
                for r in 0..n {
                    if let Some(x) = &cs[l][a][r] {
                        if !gamma[r][b][l].is_zero() {
                            s = s.sub(&x.mul(&gamma[r][b][l]));
                        }
                    }
                }
            }
            ric[a][b] = s;
        }
    }
    let mut operator = vec![vec![S::zero(); n]; n];
    let mut scalar = S::zero();
    for i in 0..n {
        for j in 0..n {
            operator[j][i] = ric[i][j].mul(&ginv[j]);
        }
        scalar = scalar.add(&operator[i][i]);
    }
    Ok(RicciResult { operator, scalar })
}

pub fn ricci_koszul(mla: &MetricLieAlgebra) -> Result<RicciResult<Radical>, GeometryError> {
    ricci_koszul_in(mla.dim, &mla.brackets, &mla.metric.to_radicals())
}

/// Outcome of a successful nilsoliton check: `Ric = λ·id + D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilsolitonCheck {
    pub lambda: Rational,
    pub derivation: Vec<Rational>,
}

/// Checks `Ric = -½(id - N)` entrywise and that `D = Ric + ½ id` is a nonzero derivation.
pub fn verify_nilsoliton(alg: &NiceLieAlgebra, g: &DiagonalMetric) -> Result<NilsolitonCheck, GeometryError> {
    let ric = ricci_nice_diagonal(alg, g)?;
    let nik = nikolayevsky(&alg.root_matrix())?;
    let half = rat(1, 2);
    let mut defect = Vec::with_capacity(alg.dim());
    let mut derivation = Vec::with_capacity(alg.dim());
    for (r, v) in ric.diagonal().iter().zip(&nik.v) {
        let expected = -(Rational::one() - v) * &half;
        let d = r.sub(&Radical::from_rational(&expected));
        derivation.push(v * &half);
        defect.push(d);
    }
    if defect.iter().any(|d| !d.is_zero()) {
        return Err(GeometryError::NotNilsoliton(defect));
    }
    for b in alg.brackets() {
        if derivation[b.k] != &derivation[b.i] + &derivation[b.j] {
            return Err(GeometryError::Verification(format!(
                "D fails the Leibniz rule on [e_{}, e_{}]",
                b.i + 1,
                b.j + 1
            )));
        }
    }
    if derivation.iter().all(Zero::is_zero) {
        return Err(GeometryError::NotNil4);
    }
    Ok(NilsolitonCheck { lambda: -half, derivation })
}

/// Rotates `e_i ↦ i^{W_i} e_i`; requires `W mod 2 ∈ ker M_{Δ,2}`.
pub fn wick_rotate(alg: &NiceLieAlgebra, w: &[i64], g: &DiagonalMetric) -> Result<(NiceLieAlgebra, DiagonalMetric), GeometryError> {
    let n = alg.dim();
    if w.len() != n {
        return Err(GeometryError::DimensionMismatch(w.len(), n));
    }
    if g.dim() != n {
        return Err(GeometryError::DimensionMismatch(g.dim(), n));
    }
    let mut brackets = Vec::with_capacity(alg.brackets().len());
    for b in alg.brackets() {
        let e = w[b.i] + w[b.j] - w[b.k];
        if e.rem_euclid(2) != 0 {
            return Err(GeometryError::NotClosed);
        }
        let c = if (e / 2).rem_euclid(2) == 1 { -b.c.clone() } else { b.c.clone() };
        brackets.push(Bracket { c, ..b.clone() });
    }
    let rotated = NiceLieAlgebra::new(alg.name(), n, brackets)?;
    let coefficients = g
        .coefficients
        .iter()
        .zip(w)
        .map(|(c, wi)| if wi.rem_euclid(2) == 1 { c.neg() } else { c.clone() })
        .collect();
    Ok((rotated, DiagonalMetric::new(coefficients)))
}

/// Rank-one extension by `e_0` acting as the Nikolayevsky derivation.
#[derive(Clone, Debug)]
pub struct EinsteinExtension {
    /// `e_0` is stored last (index `n`).
    pub algebra: MetricLieAlgebra,
    pub e0_coefficient: Rational,
    pub ricci: RicciResult<Radical>,
}

impl EinsteinExtension {
    /// The metric with `e_0` listed first.
    pub fn metric_e0_first(&self) -> DiagonalMetric {
        let mut c = self.algebra.metric.coefficients.clone();
        c.rotate_right(1);
        DiagonalMetric::new(c)
    }
}

pub fn einstein_extension(alg: &NiceLieAlgebra, g: &DiagonalMetric) -> Result<EinsteinExtension, GeometryError> {
    verify_nilsoliton(alg, g)?;
    let nik = nikolayevsky(&alg.root_matrix())?;
    let n = alg.dim();
    let trace: Rational = nik.v.iter().sum();
    let e0_coefficient = trace * int(2);
    let mut brackets = alg.brackets().to_vec();
    for (i, v) in nik.v.iter().enumerate() {
        if !Zero::is_zero(v) {
            // [e_0, e_i] = v_i e_i with e_0 at index n, stored as [e_i, e_0] = -v_i e_i
            brackets.push(Bracket { i, j: n, k: i, c: -v.clone() });
        }
    }
    let mut coefficients = g.coefficients.clone();
    coefficients.push(PowerProduct::from_rational(&e0_coefficient).ok_or(GeometryError::NotNil4)?);
    let algebra = MetricLieAlgebra::new(n + 1, brackets, DiagonalMetric::new(coefficients))?;
    let ricci = ricci_koszul(&algebra)?;
    let minus_half = Radical::from_rational(&rat(-1, 2));
    for (i, row) in ricci.operator.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expected = if i == j { minus_half.clone() } else { Radical::zero() };
            if *x != expected {
                return Err(GeometryError::Verification(format!(
                    "extension Ricci entry ({}, {}) is {x}, expected {expected}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(EinsteinExtension {
        algebra,
        e0_coefficient,
        ricci,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_nice_algebra;
    use std::collections::BTreeMap;

    fn alg(s: &str) -> NiceLieAlgebra {
        parse_nice_algebra(s, &BTreeMap::new()).unwrap()
    }

    fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn heisenberg_ricci() {
        let h = alg("(0,0,e^{12})");
        let g = rats(&[(1, 1), (1, 1), (1, 3)]);
        let nice = ricci_nice_diagonal_in(&h, &g).unwrap();
        assert_eq!(nice.diagonal(), rats(&[(-1, 6), (-1, 6), (1, 6)]));
        let kos = ricci_koszul_in(3, h.brackets(), &g).unwrap();
        assert_eq!(kos, nice);
        let unit = ricci_nice_diagonal_in(&h, &[int(1), int(1), int(1)]).unwrap();
        assert_eq!(unit.diagonal(), rats(&[(-1, 2), (-1, 2), (1, 2)]));
    }

    #[test]
    fn nilsoliton_check_and_defect() {
        let h = alg("(0,0,e^{12})");
        let good = DiagonalMetric::from_rationals(&rats(&[(1, 1), (1, 1), (1, 3)])).unwrap();
        let check = verify_nilsoliton(&h, &good).unwrap();
        assert_eq!(check.lambda, rat(-1, 2));
        assert_eq!(check.derivation, rats(&[(1, 3), (1, 3), (2, 3)]));
        let bad = DiagonalMetric::from_rationals(&rats(&[(1, 1), (1, 1), (2, 1)])).unwrap();
        assert!(matches!(verify_nilsoliton(&h, &bad), Err(GeometryError::NotNilsoliton(_))));
    }

    #[test]
    fn heisenberg_extension() {
        let h = alg("(0,0,e^{12})");
        let g = DiagonalMetric::from_rationals(&rats(&[(1, 1), (1, 1), (1, 3)])).unwrap();
        let ext = einstein_extension(&h, &g).unwrap();
        assert_eq!(ext.e0_coefficient, rat(16, 3));
        assert_eq!(ext.ricci.scalar, Radical::from_rational(&int(-2)));
    }

    #[test]
    fn wick_requires_kernel_vector() {
        let h = alg("(0,0,e^{12})");
        let g = DiagonalMetric::riemannian(3);
        assert_eq!(wick_rotate(&h, &[1, 0, 0], &g).unwrap_err(), GeometryError::NotClosed);
        let (h2, g2) = wick_rotate(&h, &[1, 1, 0], &g).unwrap();
        assert_eq!(h2.brackets()[0].c, int(1));
        assert_eq!(g2.signature().to_string(), "12");
        let (h3, g3) = wick_rotate(&h2, &[1, 1, 0], &g2).unwrap();
        assert_eq!((h3, g3), (h, g));
    }
}
