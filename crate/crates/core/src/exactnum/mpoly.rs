//! Sparse multivariate polynomials over ℚ, with interval evaluation and
//! resultants by evaluation and interpolation.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::interval::Interval;
use super::linalg::{determinant, RatMatrix};
use super::poly::UnivariatePolynomial;
use super::rational::{fmt_rational, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// `constant + Σ coeffs[i]·xᵢ`.
    pub fn affine(coeffs: &[Rational], constant: &Rational) -> Self {
        let n = coeffs.len();
        let mut p = MPoly::constant(n, constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Variables that occur with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc + t
        })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = to_f64(c);
                for (xi, &k) in x.iter().zip(e) {
                    t *= xi.powi(k as i32);
                }
                t
            })
            .sum()
    }

    pub fn eval_interval(&self, x: &[Interval]) -> Interval {
        self.terms.iter().fold(Interval::zero(), |acc, (e, c)| {
            let mut t = Interval::point(c.clone());
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = &t * &xi.pow(k);
                }
            }
            &acc + &t
        })
    }

    pub fn partial(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[var] -= 1;
            out.add_term(f, c * Rational::from_integer(e[var].into()));
        }
        out
    }

    /// Replaces variable `i` by `subs[i]`; all substitutes share a variable count.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars);
        let n = subs.first().map_or(0, MPoly::nvars);
        let mut out = MPoly::zero(n);
        let mut cache: BTreeMap<(usize, u32), MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache.entry((i, k)).or_insert_with(|| subs[i].pow(k));
                t = t.mul(p);
            }
            out = out.add(&t);
        }
        out
    }

    /// Fixes variable `var` to `value`, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &Rational) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[var] = 0;
            let mut t = c.clone();
            for _ in 0..e[var] {
                t *= value;
            }
            out.add_term(f, t);
        }
        out
    }

    /// The polynomial in `var` alone, if no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UnivariatePolynomial> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            coeffs[e[var] as usize] += c;
        }
        Some(UnivariatePolynomial::new(coeffs))
    }

    /// Coefficients with respect to `var`, lowest degree first.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(self.nvars); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[var] = 0;
            out[e[var] as usize].add_term(f, c.clone());
        }
        out
    }

    /// Primitive form: scaled so the coefficient of the greatest term is one.
    pub fn normalized(&self) -> MPoly {
        match self.terms.values().next_back() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

/// Resultant of two bivariate polynomials with respect to `var`, as a
/// polynomial in the other variable.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> UnivariatePolynomial {
    assert_eq!(f.nvars(), 2);
    assert_eq!(g.nvars(), 2);
    let other = 1 - var;
    let (df, dg) = (f.degree_in(var) as usize, g.degree_in(var) as usize);
    let bound = df * g.degree_in(other) as usize + dg * f.degree_in(other) as usize;
    let cf = f.coefficients_in(var);
    let cg = g.coefficients_in(var);
    let points: Vec<Rational> = (0..=bound).map(|i| Rational::from_integer((i as i64).into())).collect();
    let values: Vec<Rational> = points
        .iter()
        .map(|u| {
            let mut x = vec![Rational::zero(); 2];
            x[other] = u.clone();
            let a: Vec<Rational> = cf.iter().map(|c| c.eval(&x)).collect();
            let b: Vec<Rational> = cg.iter().map(|c| c.eval(&x)).collect();
            sylvester_determinant(&a, &b)
        })
        .collect();
    interpolate(&points, &values)
}

/// Determinant of the Sylvester matrix built with the formal degrees
/// `a.len() - 1` and `b.len() - 1`.
fn sylvester_determinant(a: &[Rational], b: &[Rational]) -> Rational {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    if size == 0 {
        return Rational::one();
    }
    let mut m = RatMatrix::zeros(size, size);
    for r in 0..db {
        for (i, c) in a.iter().rev().enumerate() {
            m.set(r, r + i, c.clone());
        }
    }
    for r in 0..da {
        for (i, c) in b.iter().rev().enumerate() {
            m.set(db + r, r + i, c.clone());
        }
    }
    determinant(&m)
}

/// Lagrange interpolation through distinct points.
pub fn interpolate(points: &[Rational], values: &[Rational]) -> UnivariatePolynomial {
    let mut out = UnivariatePolynomial::zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UnivariatePolynomial::constant(Rational::one());
        let mut denom = Rational::one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = &basis * &UnivariatePolynomial::linear(-xj, Rational::one());
            denom *= xi - xj;
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("t{i}") } else { format!("t{i}^{k}") })
                    .collect();
                if vars.is_empty() {
                    fmt_rational(c)
                } else {
                    format!("{}*{}", fmt_rational(c), vars.join("*"))
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    #[test]
    fn resultant_eliminates_a_variable() {
        // x^2 + y^2 - 1 and x - y: resultant in x is 2x^2 - 1 up to sign.
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = x.mul(&x).add(&y.mul(&y)).sub(&MPoly::constant(2, int(1)));
        let g = x.sub(&y);
        let r = resultant(&f, &g, 1);
        assert_eq!(r.monic(), UnivariatePolynomial::new(vec![Rational::new((-1).into(), 2.into()), int(0), int(1)]));
    }

    #[test]
    fn compose_and_evaluate() {
        let x = MPoly::var(1, 0);
        let p = x.mul(&x).add(&MPoly::constant(1, int(1)));
        let sub = MPoly::affine(&[int(2), int(1)], &int(0));
        let q = p.compose(&[sub]);
        assert_eq!(q.eval(&[int(1), int(1)]), int(10));
        assert_eq!(q.partial(0).eval(&[int(1), int(0)]), int(8));
        let iv = p.eval_interval(&[Interval::new(int(-1), int(2))]);
        assert_eq!(iv, Interval::new(int(1), int(5)));
    }
}
