//! Solving condition P over the affine family of condition K.
//!
//! The state is a list of affine forms `L_h(s)`, one per bracket, in the
//! remaining free variables `s`. Lattice relations among the monomial
//! equations that involve only one or two proportionality classes of forms
//! give linear substitutions `L_p = ρ` or `L_p = ρ·L_q`; these are applied
//! first. What remains is handled by dimension: exact check, univariate root
//! isolation, bivariate resultants, or a verified numeric search.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::krawczyk::{krawczyk, newton_candidates, Krawczyk};
use super::{NilsolitonError, SolvedX, XEntry};
use crate::exactnum::fm::{fm_feasible, fm_witness, Constraint};
use crate::exactnum::intkernel::integer_kernel;
use crate::exactnum::interval::Interval;
use crate::exactnum::linalg::IntMatrix;
use crate::exactnum::mpoly::{resultant, MPoly};
use crate::exactnum::poly::UnivariatePolynomial;
use crate::exactnum::rational::{from_f64_dyadic, rational_root, Rational, Sign};
use crate::exactnum::roots::{isolate_real_roots, max_refine, IsolatedRoot};

static SEED_GRID: AtomicUsize = AtomicUsize::new(0);

/// Seeds per axis for the numeric fallback; 0 selects `2·degree + 1`.
pub fn set_seed_grid(per_axis: usize) {
    SEED_GRID.store(per_axis, Ordering::Relaxed);
}

pub fn seed_grid() -> usize {
    SEED_GRID.load(Ordering::Relaxed)
}

/// `coeffs · s + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn constant(nvars: usize, c: Rational) -> Self {
        Affine {
            coeffs: vec![Rational::zero(); nvars],
            constant: c,
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    pub fn eval(&self, s: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(s)
            .fold(self.constant.clone(), |acc, (a, x)| acc + a * x)
    }

    pub fn eval_interval(&self, s: &[Interval]) -> Interval {
        self.coeffs
            .iter()
            .zip(s)
            .fold(Interval::point(self.constant.clone()), |acc, (a, x)| &acc + &x.scale(a))
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::affine(&self.coeffs, &self.constant)
    }

    fn scale(&self, s: &Rational) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            constant: &self.constant * s,
        }
    }

    fn sub(&self, other: &Affine) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            constant: &self.constant - &other.constant,
        }
    }

    /// Replaces variable `var` by `expr`, an affine form in the other variables.
    fn eliminate(&self, var: usize, expr: &Affine) -> Affine {
        let a = &self.coeffs[var];
        let mut coeffs: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != var)
            .map(|(_, c)| c.clone())
            .collect();
        for (c, e) in coeffs.iter_mut().zip(&expr.coeffs) {
            *c += a * e;
        }
        Affine {
            coeffs,
            constant: &self.constant + a * &expr.constant,
        }
    }

    fn leading(&self) -> Option<&Rational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }
}

/// Substitutes the solution of `eq = 0` for its last variable with a nonzero
/// coefficient. `eq` must be nonconstant.
fn substitute(forms: &[Affine], eq: &Affine) -> Vec<Affine> {
    let var = (0..eq.nvars()).rev().find(|&i| !eq.coeffs[i].is_zero()).expect("nonconstant");
    let inv = -eq.coeffs[var].recip();
    let expr = Affine {
        coeffs: eq
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != var)
            .map(|(_, c)| c * &inv)
            .collect(),
        constant: &eq.constant * &inv,
    };
    forms.iter().map(|f| f.eliminate(var, &expr)).collect()
}

fn fix_variable(forms: &[Affine], var: usize, value: &Rational) -> Vec<Affine> {
    let expr = Affine::constant(forms[0].nvars() - 1, value.clone());
    forms.iter().map(|f| f.eliminate(var, &expr)).collect()
}

fn pow_i(r: &Rational, e: i64) -> Rational {
    r.pow(e as i32)
}

fn lattice_basis(rows: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..k)
            .map(|j| (0..k).map(|i| i64::from(i == j)).collect())
            .collect();
    }
    let m = IntMatrix::from_rows(rows);
    integer_kernel(&m)
        .columns()
        .into_iter()
        .map(|c| c.iter().map(|x| x.to_i64().expect("small kernel entry")).collect())
        .collect()
}

/// Smallest positive value of `target·γ` over integer `γ` with `rows·γ = 0`,
/// together with a `γ` attaining it.
fn lattice_min(rows: &[Vec<i64>], target: &[i64]) -> Option<(i64, Vec<i64>)> {
    let k = target.len();
    let mut best: Option<(i64, Vec<i64>)> = None;
    for gamma in lattice_basis(rows, k) {
        let v: i64 = gamma.iter().zip(target).map(|(a, b)| a * b).sum();
        if v == 0 {
            continue;
        }
        best = Some(match best {
            None => (v, gamma),
            Some((d, g)) => {
                let e = BigInt::from(d).extended_gcd(&BigInt::from(v));
                let (x, y) = (e.x.to_i64().unwrap(), e.y.to_i64().unwrap());
                let combined = g.iter().zip(&gamma).map(|(a, b)| x * a + y * b).collect();
                (e.gcd.to_i64().unwrap(), combined)
            }
        });
    }
    best.map(|(d, g)| if d < 0 { (-d, g.iter().map(|x| -x).collect()) } else { (d, g) })
}

/// Real rational `d`-th roots of `c`; `Err` when a real root exists but is irrational.
fn real_roots(c: &Rational, d: i64) -> Result<Vec<Rational>, ()> {
    let even = d % 2 == 0;
    if even && c.is_negative() {
        return Ok(Vec::new());
    }
    let r = rational_root(&c.abs(), d as u32).ok_or(())?;
    Ok(if even {
        vec![r.clone(), -r]
    } else if c.is_negative() {
        vec![-r]
    } else {
        vec![r]
    })
}

enum Reduction {
    Dead,
    Branches(Vec<Affine>),
    Stuck,
}

pub(crate) struct Solver<'a> {
    alphas: &'a [Vec<i64>],
    csq: &'a [Rational],
    pub found: Vec<SolvedX>,
    pub warnings: Vec<String>,
    pub complete: bool,
}

impl<'a> Solver<'a> {
    pub fn new(alphas: &'a [Vec<i64>], csq: &'a [Rational]) -> Self {
        Solver {
            alphas,
            csq,
            found: Vec::new(),
            warnings: Vec::new(),
            complete: true,
        }
    }

    /// Cleared monomial equations `∏_{α>0} L^α c^{-2α⁻} − ∏_{α<0} L^{-α} c^{2α⁺}` in `nv` variables.
    pub fn equations(&self, forms: &[Affine], nv: usize) -> Vec<MPoly> {
        self.alphas
            .iter()
            .map(|a| {
                let mut lhs = MPoly::constant(nv, Rational::one());
                let mut rhs = MPoly::constant(nv, Rational::one());
                for (h, &e) in a.iter().enumerate() {
                    if e > 0 {
                        lhs = lhs.mul(&forms[h].to_mpoly().pow(e as u32));
                        rhs = rhs.scale(&pow_i(&self.csq[h], e));
                    } else if e < 0 {
                        rhs = rhs.mul(&forms[h].to_mpoly().pow((-e) as u32));
                        lhs = lhs.scale(&pow_i(&self.csq[h], -e));
                    }
                }
                lhs.sub(&rhs)
            })
            .collect()
    }

    pub fn solve(&mut self, forms: Vec<Affine>, nv: usize) -> Result<(), NilsolitonError> {
        match self.reduce(&forms) {
            Reduction::Dead => return Ok(()),
            Reduction::Branches(eqs) => {
                for eq in eqs {
                    self.solve(substitute(&forms, &eq), nv - 1)?;
                }
                return Ok(());
            }
            Reduction::Stuck => {}
        }
        match nv {
            0 => {
                self.finish_exact(&forms, false);
                Ok(())
            }
            1 => self.solve_univariate(&forms),
            2 => self.solve_bivariate(&forms),
            _ => self.solve_numeric(&forms, nv),
        }
    }

    fn reduce(&self, forms: &[Affine]) -> Reduction {
        let k = self.alphas.len();
        // (representative, normalized key, members); lambda[h] relates L_h to its representative.
        let mut classes: Vec<(usize, Affine, Vec<usize>)> = Vec::new();
        let mut lambda: Vec<Option<Rational>> = vec![None; forms.len()];
        for (h, f) in forms.iter().enumerate() {
            let Some(lead) = f.leading().cloned() else {
                if f.constant.is_zero() {
                    return Reduction::Dead;
                }
                continue;
            };
            let key = f.scale(&lead.recip());
            match classes.iter_mut().find(|(_, k, _)| *k == key) {
                Some((rep, _, members)) => {
                    lambda[h] = Some(lead / forms[*rep].leading().unwrap());
                    members.push(h);
                }
                None => {
                    lambda[h] = Some(Rational::one());
                    classes.push((h, key, vec![h]));
                }
            }
        }
        let e: Vec<Vec<i64>> = classes
            .iter()
            .map(|(_, _, members)| (0..k).map(|j| members.iter().map(|&h| self.alphas[j][h]).sum()).collect())
            .collect();
        let constant_factor = |gamma: &[i64]| -> Rational {
            let mut c = Rational::one();
            for h in 0..forms.len() {
                let beta: i64 = gamma.iter().zip(self.alphas).map(|(g, a)| g * a[h]).sum();
                if beta == 0 {
                    continue;
                }
                c *= pow_i(&self.csq[h], beta);
                match &lambda[h] {
                    Some(l) => c /= pow_i(l, beta),
                    None => c /= pow_i(&forms[h].constant, beta),
                }
            }
            c
        };

        // Relations in which every class cancels are plain consistency checks.
        for gamma in lattice_basis(&e, k) {
            if !constant_factor(&gamma).is_one() {
                return Reduction::Dead;
            }
        }

        let ncls = classes.len();
        let mut candidates: Vec<(usize, Option<usize>)> = (0..ncls).map(|p| (p, None)).collect();
        for p in 0..ncls {
            for q in p + 1..ncls {
                candidates.push((p, Some(q)));
            }
        }
        for (p, q) in candidates {
            let mut rows: Vec<Vec<i64>> = (0..ncls)
                .filter(|&r| r != p && Some(r) != q)
                .map(|r| e[r].clone())
                .collect();
            if let Some(q) = q {
                rows.push(e[p].iter().zip(&e[q]).map(|(a, b)| a + b).collect());
            }
            let Some((d, gamma)) = lattice_min(&rows, &e[p]) else {
                continue;
            };
            let c = constant_factor(&gamma);
            let Ok(roots) = real_roots(&c, d) else {
                continue;
            };
            let lp = &forms[classes[p].0];
            let mut eqs = Vec::new();
            let mut useful = true;
            for rho in roots {
                let eq = match q {
                    None => lp.sub(&Affine::constant(lp.nvars(), rho)),
                    Some(q) => lp.sub(&forms[classes[q].0].scale(&rho)),
                };
                if eq.is_zero() {
                    useful = false;
                } else if !eq.is_constant() {
                    eqs.push(eq);
                }
            }
            if useful {
                return Reduction::Branches(eqs);
            }
        }
        Reduction::Stuck
    }

    fn finish_exact(&mut self, forms: &[Affine], on_continuum: bool) {
        let values: Vec<Rational> = forms.iter().map(|f| f.constant.clone()).collect();
        if values.iter().any(|v| v.is_zero()) {
            return;
        }
        let consts: Vec<Affine> = values.iter().map(|v| Affine::constant(0, v.clone())).collect();
        if self.equations(&consts, 0).iter().any(|f| !f.is_zero()) {
            return;
        }
        let signs = values.iter().map(|v| Sign::of(v).unwrap()).collect();
        self.found.push(SolvedX {
            entries: values.into_iter().map(XEntry::Exact).collect(),
            signs,
            numeric_flag: false,
            on_continuum,
        });
    }

    /// Every form is nonzero on the whole family: sample one point per sign cell.
    fn sample_cells(&mut self, forms: &[Affine], nv: usize) {
        let mut constraints = Vec::new();
        self.cells(forms, nv, 0, &mut constraints);
    }

    fn cells(&mut self, forms: &[Affine], nv: usize, h: usize, constraints: &mut Vec<Constraint>) {
        if h == forms.len() {
            if let Some(point) = fm_witness(constraints, nv) {
                let fixed: Vec<Affine> = forms.iter().map(|f| Affine::constant(0, f.eval(&point))).collect();
                self.finish_exact(&fixed, true);
            }
            return;
        }
        let f = &forms[h];
        if f.is_constant() {
            self.cells(forms, nv, h + 1, constraints);
            return;
        }
        for sign in [Rational::one(), -Rational::one()] {
            constraints.push(Constraint::new(
                f.coeffs.iter().map(|c| c * &sign).collect(),
                &f.constant * &sign,
                true,
            ));
            if fm_feasible(constraints, nv) {
                self.cells(forms, nv, h + 1, constraints);
            }
            constraints.pop();
        }
    }

    fn solve_univariate(&mut self, forms: &[Affine]) -> Result<(), NilsolitonError> {
        let polys: Vec<UnivariatePolynomial> = self
            .equations(forms, 1)
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.to_univariate(0).expect("univariate"))
            .collect();
        if polys.is_empty() {
            self.sample_cells(forms, 1);
            return Ok(());
        }
        let g = polys[1..].iter().fold(polys[0].clone(), |acc, p| acc.gcd(p));
        if g.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
        let excluded: Vec<Rational> = forms
            .iter()
            .filter(|f| !f.is_constant())
            .map(|f| -&f.constant / &f.coeffs[0])
            .collect();
        for root in isolate_real_roots(&g, &excluded)? {
            match root.exact() {
                Some(x) => self.finish_exact(&fix_variable(forms, 0, x), false),
                None => self.push_algebraic(forms, root)?,
            }
        }
        Ok(())
    }

    fn push_algebraic(&mut self, forms: &[Affine], mut root: IsolatedRoot) -> Result<(), NilsolitonError> {
        let mut signs = Vec::with_capacity(forms.len());
        for f in forms {
            match root.sign_of_affine(&f.constant, &f.coeffs[0])? {
                Some(s) => signs.push(s),
                None => return Ok(()),
            }
        }
        root.refine_below(&tiny());
        let e = root.enclosure();
        self.found.push(SolvedX {
            entries: forms.iter().map(|f| XEntry::Enclosed(f.eval_interval(std::slice::from_ref(&e)))).collect(),
            signs,
            numeric_flag: false,
            on_continuum: false,
        });
        Ok(())
    }

    fn solve_bivariate(&mut self, forms: &[Affine]) -> Result<(), NilsolitonError> {
        let eqs: Vec<MPoly> = self.equations(forms, 2).into_iter().filter(|f| !f.is_zero()).collect();
        if eqs.is_empty() {
            self.sample_cells(forms, 2);
            return Ok(());
        }
        let elim = |var: usize| -> Option<UnivariatePolynomial> {
            let mut g: Option<UnivariatePolynomial> = None;
            for a in 0..eqs.len() {
                for b in a + 1..eqs.len() {
                    let r = resultant(&eqs[a], &eqs[b], var);
                    if !r.is_zero() {
                        g = Some(match g {
                            None => r,
                            Some(g) => g.gcd(&r),
                        });
                    }
                }
            }
            g
        };
        let (Some(gu), Some(gv)) = (elim(1), elim(0)) else {
            self.warnings
                .push("condition P leaves a curve of solutions in a two-parameter family; not analysed".into());
            self.complete = false;
            return Ok(());
        };
        let excluded = |var: usize| -> Vec<Rational> {
            forms
                .iter()
                .filter(|f| !f.coeffs[var].is_zero() && f.coeffs[1 - var].is_zero())
                .map(|f| -&f.constant / &f.coeffs[var])
                .collect()
        };
        let roots_u = isolate_real_roots(&gu, &excluded(0))?;
        let roots_v = isolate_real_roots(&gv, &excluded(1))?;
        for r in &roots_u {
            if let Some(x) = r.exact() {
                self.solve(fix_variable(forms, 0, x), 1)?;
            }
        }
        for r in &roots_v {
            if let Some(y) = r.exact() {
                self.solve(fix_variable(forms, 1, y), 1)?;
            }
        }
        for ru in roots_u.iter().filter(|r| r.exact().is_none()) {
            for rv in roots_v.iter().filter(|r| r.exact().is_none()) {
                self.verify_pair(forms, &eqs, ru.clone(), rv.clone())?;
            }
        }
        Ok(())
    }

    /// Decides whether the pair of irrational coordinates is a common root,
    /// certifying existence with a Krawczyk test on two of the equations.
    fn verify_pair(
        &mut self,
        forms: &[Affine],
        eqs: &[MPoly],
        mut ru: IsolatedRoot,
        mut rv: IsolatedRoot,
    ) -> Result<(), NilsolitonError> {
        let jac: Vec<Vec<MPoly>> = eqs.iter().map(|f| vec![f.partial(0), f.partial(1)]).collect();
        let mut certified = false;
        'refine: for _ in 0..max_refine() {
            let bx = [ru.enclosure(), rv.enclosure()];
            if eqs.iter().any(|f| !f.eval_interval(&bx).contains_zero()) {
                return Ok(());
            }
            for a in 0..eqs.len() {
                for b in a + 1..eqs.len() {
                    let fs = [eqs[a].clone(), eqs[b].clone()];
                    let js = [jac[a].clone(), jac[b].clone()];
                    match krawczyk(&fs, &js, &bx) {
                        Krawczyk::Unique(_) => {
                            certified = true;
                            break 'refine;
                        }
                        Krawczyk::NoRoot => return Ok(()),
                        Krawczyk::Unknown => {}
                    }
                }
            }
            ru.bisect();
            rv.bisect();
        }
        if !certified {
            self.warnings.push(format!(
                "candidate near ({:.6}, {:.6}) could not be certified and was dropped",
                ru.approx(),
                rv.approx()
            ));
            self.complete = false;
            return Ok(());
        }
        // The remaining equations must vanish too; a false pair is excluded by refinement.
        let width = tiny();
        while ru.enclosure().width() >= width || rv.enclosure().width() >= width {
            ru.bisect();
            rv.bisect();
            let bx = [ru.enclosure(), rv.enclosure()];
            if eqs.iter().any(|f| !f.eval_interval(&bx).contains_zero()) {
                return Ok(());
            }
        }
        for f in forms {
            if self.form_vanishes(f, &ru, &rv)? {
                return Ok(());
            }
        }
        let mut signs = None;
        for _ in 0..max_refine() {
            let bx = [ru.enclosure(), rv.enclosure()];
            let vals: Vec<Interval> = forms.iter().map(|f| f.eval_interval(&bx)).collect();
            if vals.iter().all(|v| !v.contains_zero()) {
                signs = Some((vals.iter().map(|v| Sign::of(&v.mid()).unwrap()).collect(), vals));
                break;
            }
            ru.bisect();
            rv.bisect();
        }
        let Some((signs, vals)) = signs else {
            return Err(NilsolitonError::Root(crate::exactnum::roots::RootError::SignUndetermined(max_refine())));
        };
        self.found.push(SolvedX {
            entries: vals.into_iter().map(XEntry::Enclosed).collect(),
            signs,
            numeric_flag: true,
            on_continuum: false,
        });
        Ok(())
    }

    /// Exact test for `a·u + b·v + c = 0` at a pair of irrational roots.
    fn form_vanishes(&self, f: &Affine, ru: &IsolatedRoot, rv: &IsolatedRoot) -> Result<bool, NilsolitonError> {
        let (a, b, c) = (&f.coeffs[0], &f.coeffs[1], &f.constant);
        if a.is_zero() && b.is_zero() {
            return Ok(c.is_zero());
        }
        if b.is_zero() {
            return Ok(ru.sign_of_affine(c, a)?.is_none());
        }
        if a.is_zero() {
            return Ok(rv.sign_of_affine(c, b)?.is_none());
        }
        let IsolatedRoot::Interval { poly: pv, lo, hi, .. } = rv else {
            return Ok(false);
        };
        // v = -(a·u + c)/b must be a root of pv lying in the isolating interval of rv.
        let composed = pv.compose_linear(&(-c / b), &(-a / b));
        if ru.sign_of(&composed)?.is_some() {
            return Ok(false);
        }
        let mut ru = ru.clone();
        ru.refine_below(&tiny());
        let image = ru.enclosure().scale(&(-a / b));
        let image = &image + &Interval::point(-c / b);
        Ok(image.lo > *lo && image.hi < *hi)
    }

    fn solve_numeric(&mut self, forms: &[Affine], nv: usize) -> Result<(), NilsolitonError> {
        let eqs: Vec<MPoly> = self.equations(forms, nv).into_iter().filter(|f| !f.is_zero()).collect();
        if eqs.is_empty() {
            self.sample_cells(forms, nv);
            return Ok(());
        }
        self.complete = false;
        self.warnings.push(format!(
            "condition P solved by numeric search in {nv} variables; completeness is not certified"
        ));
        let degree = eqs.iter().map(|f| f.total_degree()).max().unwrap_or(1) as usize;
        let per_axis = match seed_grid() {
            0 => (2 * degree + 1).min(9),
            n => n,
        };
        let bound = forms
            .iter()
            .map(|f| crate::exactnum::rational::to_f64(&f.constant.abs()))
            .fold(1.0, f64::max)
            * 2.0;
        for point in newton_candidates(&eqs, nv, per_axis, bound) {
            if let Some(exact) = rational_recovery(&point) {
                let fixed: Vec<Affine> = forms.iter().map(|f| Affine::constant(0, f.eval(&exact))).collect();
                let before = self.found.len();
                self.finish_exact(&fixed, false);
                if self.found.len() > before {
                    continue;
                }
            }
            self.certify_numeric(forms, &eqs, &point, nv);
        }
        Ok(())
    }

    fn certify_numeric(&mut self, forms: &[Affine], eqs: &[MPoly], point: &[f64], nv: usize) {
        let jac: Vec<Vec<MPoly>> = eqs.iter().map(|f| (0..nv).map(|v| f.partial(v)).collect()).collect();
        let radius = from_f64_dyadic(1e-8, 60);
        let start: Vec<Interval> = point
            .iter()
            .map(|x| {
                let c = from_f64_dyadic(*x, 60);
                Interval::new(&c - &radius, &c + &radius)
            })
            .collect();
        for subset in combinations(eqs.len(), nv) {
            let fs: Vec<MPoly> = subset.iter().map(|&i| eqs[i].clone()).collect();
            let js: Vec<Vec<MPoly>> = subset.iter().map(|&i| jac[i].clone()).collect();
            let Krawczyk::Unique(mut bx) = krawczyk(&fs, &js, &start) else {
                continue;
            };
            for _ in 0..8 {
                match krawczyk(&fs, &js, &bx) {
                    Krawczyk::Unique(next) => bx = next,
                    _ => break,
                }
            }
            if eqs.iter().any(|f| !f.eval_interval(&bx).contains_zero()) {
                return;
            }
            let vals: Vec<Interval> = forms.iter().map(|f| f.eval_interval(&bx)).collect();
            if vals.iter().any(|v| v.contains_zero()) {
                self.warnings
                    .push("numeric candidate with an undetermined sign was dropped".into());
                return;
            }
            let signs = vals.iter().map(|v| Sign::of(&v.mid()).unwrap()).collect();
            self.found.push(SolvedX {
                entries: vals.into_iter().map(XEntry::Enclosed).collect(),
                signs,
                numeric_flag: true,
                on_continuum: false,
            });
            return;
        }
        self.warnings.push(format!("numeric candidate {point:?} could not be verified and was dropped"));
    }
}

fn tiny() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 80)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Continued-fraction approximation with denominator at most 10⁴, if one lies within 1e-11.
fn rational_recovery(point: &[f64]) -> Option<Vec<Rational>> {
    point
        .iter()
        .map(|&x| {
            let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
            let mut r = x;
            for _ in 0..30 {
                if r.abs() > 1e9 {
                    return None;
                }
                let a = r.floor() as i64;
                (h0, h1) = (h1, a * h1 + h0);
                (k0, k1) = (k1, a * k1 + k0);
                if k1 > 10_000 {
                    return None;
                }
                if (h1 as f64 / k1 as f64 - x).abs() < 1e-11 {
                    return Some(Rational::new(h1.into(), k1.into()));
                }
                r = 1.0 / (r - a as f64);
            }
            None
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn lattice_min_combines_generators() {
        // γ ∈ Z², no constraints, target (4, 6) → gcd 2.
        let (d, g) = lattice_min(&[], &[4, 6]).unwrap();
        assert_eq!(d, 2);
        assert_eq!(4 * g[0] + 6 * g[1], 2);
        assert!(lattice_min(&[vec![1, 0], vec![0, 1]], &[1, 1]).is_none());
    }

    #[test]
    fn real_roots_by_parity() {
        assert_eq!(real_roots(&rat(4, 9), 2), Ok(vec![rat(2, 3), rat(-2, 3)]));
        assert_eq!(real_roots(&rat(-8, 1), 3), Ok(vec![int(-2)]));
        assert_eq!(real_roots(&rat(-1, 1), 2), Ok(vec![]));
        assert!(real_roots(&rat(2, 1), 2).is_err());
    }

    #[test]
    fn recovery() {
        assert_eq!(rational_recovery(&[0.2, -1.0 / 19.0]), Some(vec![rat(1, 5), rat(-1, 19)]));
        assert_eq!(rational_recovery(&[std::f64::consts::SQRT_2]), None);
    }
}
