//! Real root isolation by Sturm sequences and bisection.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::UnivariatePolynomial;
use super::rational::{to_f64, Rational, Sign};

static MAX_REFINE: AtomicUsize = AtomicUsize::new(256);

/// Maximum number of bisections spent on any single sign decision.
pub fn max_refine() -> usize {
    MAX_REFINE.load(AtomicOrdering::Relaxed)
}

pub fn set_max_refine(depth: usize) {
    MAX_REFINE.store(depth.max(1), AtomicOrdering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("cannot isolate the roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("sign undetermined after {0} refinements")]
    SignUndetermined(usize),
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<UnivariatePolynomial>,
}

impl SturmSequence {
    pub fn new(p: &UnivariatePolynomial) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = -&seq[n - 2].rem(&seq[n - 1]);
            seq.push(r);
        }
        seq.pop();
        SturmSequence { seq }
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs = self.seq.iter().map(|p| p.eval(x)).filter(|v| !v.is_zero()).map(|v| v.is_positive());
        count_changes(signs)
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs = self.seq.iter().map(|p| {
            let lead = p.leading().is_positive();
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if positive || !odd {
                lead
            } else {
                !lead
            }
        });
        count_changes(signs)
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn count_changes(signs: impl Iterator<Item = bool>) -> usize {
    let mut last = None;
    let mut changes = 0;
    for s in signs {
        if last.is_some_and(|l| l != s) {
            changes += 1;
        }
        last = Some(s);
    }
    changes
}

/// A real root, either known exactly or bracketed by an open interval
/// `(lo, hi)` containing exactly one root of a squarefree polynomial with a
/// sign change across it.
#[derive(Clone, Debug)]
pub enum IsolatedRoot {
    Exact {
        value: Rational,
        multiplicity: usize,
    },
    Interval {
        poly: UnivariatePolynomial,
        lo: Rational,
        hi: Rational,
        multiplicity: usize,
    },
}

impl IsolatedRoot {
    pub fn multiplicity(&self) -> usize {
        match self {
            IsolatedRoot::Exact { multiplicity, .. } | IsolatedRoot::Interval { multiplicity, .. } => *multiplicity,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            IsolatedRoot::Exact { value, .. } => Some(value),
            IsolatedRoot::Interval { .. } => None,
        }
    }

    pub fn enclosure(&self) -> Interval {
        match self {
            IsolatedRoot::Exact { value, .. } => Interval::point(value.clone()),
            IsolatedRoot::Interval { lo, hi, .. } => Interval::new(lo.clone(), hi.clone()),
        }
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.enclosure().mid())
    }

    /// Halves the bracketing interval; exact roots are unchanged.
    pub fn bisect(&mut self) {
        if let IsolatedRoot::Interval { poly, lo, hi, .. } = self {
            let mid = (&*lo + &*hi) / Rational::from_integer(2.into());
            let fm = poly.eval(&mid);
            if fm.is_zero() {
                // Cannot happen for an irrational root; kept for safety.
                *lo = mid.clone();
                *hi = mid;
                return;
            }
            if fm.is_positive() == poly.eval(lo).is_positive() {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
    }

    pub fn refine_below(&mut self, width: &Rational) {
        while self.enclosure().width() >= *width && self.exact().is_none() {
            self.bisect();
        }
    }

    /// Sign of `q` at this root; `None` when `q` vanishes there.
    pub fn sign_of(&self, q: &UnivariatePolynomial) -> Result<Option<Sign>, RootError> {
        match self {
            IsolatedRoot::Exact { value, .. } => Ok(Sign::of(&q.eval(value))),
            IsolatedRoot::Interval { poly, lo, hi, .. } => {
                if q.is_zero() {
                    return Ok(None);
                }
                let g = poly.gcd(q);
                if g.degree().unwrap_or(0) > 0 {
                    let (gl, gh) = (g.eval(lo), g.eval(hi));
                    if gl.is_positive() != gh.is_positive() {
                        return Ok(None);
                    }
                }
                let sq = q.squarefree_part();
                let sturm = SturmSequence::new(&sq);
                let mut root = self.clone();
                for _ in 0..max_refine() {
                    let e = root.enclosure();
                    if sturm.count(&e.lo, &e.hi) == 0 && !q.eval(&e.lo).is_zero() {
                        return Ok(Sign::of(&q.eval(&e.mid())));
                    }
                    root.bisect();
                }
                Err(RootError::SignUndetermined(max_refine()))
            }
        }
    }

    /// Sign of `a + b·root`.
    pub fn sign_of_affine(&self, a: &Rational, b: &Rational) -> Result<Option<Sign>, RootError> {
        self.sign_of(&UnivariatePolynomial::linear(a.clone(), b.clone()))
    }

    /// Strict comparison with a rational; refines a copy as needed.
    pub fn cmp_rational(&self, x: &Rational) -> Result<Ordering, RootError> {
        let s = self.sign_of_affine(&-x, &Rational::one())?;
        Ok(match s {
            None => Ordering::Equal,
            Some(Sign::Positive) => Ordering::Greater,
            Some(Sign::Negative) => Ordering::Less,
        })
    }
}

/// All distinct real roots of `p` except those equal to an excluded value,
/// sorted increasingly. Rational roots are reported exactly.
pub fn isolate_real_roots(p: &UnivariatePolynomial, excluded: &[Rational]) -> Result<Vec<IsolatedRoot>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    for (factor, multiplicity) in p.squarefree_decomposition() {
        for root in isolate_squarefree(&factor, multiplicity) {
            if let IsolatedRoot::Exact { value, .. } = &root {
                if excluded.contains(value) {
                    continue;
                }
            }
            roots.push(root);
        }
    }
    separate(&mut roots);
    roots.sort_by(|a, b| a.enclosure().lo.cmp(&b.enclosure().lo));
    Ok(roots)
}

fn isolate_squarefree(f: &UnivariatePolynomial, multiplicity: usize) -> Vec<IsolatedRoot> {
    let sturm = SturmSequence::new(f);
    let bound = f.cauchy_bound();
    let mut pending = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        pending.push((mid.clone(), hi));
        pending.push((lo, mid));
    }
    // Any rational root of a primitive integer polynomial is j / a_n.
    let lead = f.primitive_integer().last().cloned().unwrap_or_else(BigInt::one).abs();
    let grid = Rational::new(BigInt::one(), lead.clone());
    isolated
        .into_iter()
        .map(|(mut lo, mut hi)| {
            if f.eval(&hi).is_zero() {
                return IsolatedRoot::Exact { value: hi, multiplicity };
            }
            while &hi - &lo >= grid {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                if f.eval(&mid).is_zero() {
                    return IsolatedRoot::Exact { value: mid, multiplicity };
                }
                if sturm.count(&lo, &mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let scaled_lo = (&lo * Rational::from_integer(lead.clone())).floor().to_integer();
            for j in [scaled_lo.clone(), scaled_lo + 1] {
                let c = Rational::new(j, lead.clone());
                if lo < c && c < hi && f.eval(&c).is_zero() {
                    return IsolatedRoot::Exact { value: c, multiplicity };
                }
            }
            // The only root in (lo, hi] is irrational, so lo is not a root
            // of this factor unless it is a different rational root; step
            // past it so the sign change is strict.
            while f.eval(&lo).is_zero() {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                if sturm.count(&lo, &mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            IsolatedRoot::Interval {
                poly: f.clone(),
                lo,
                hi,
                multiplicity,
            }
        })
        .collect()
}

/// Refines interval roots until no two enclosures overlap.
fn separate(roots: &mut [IsolatedRoot]) {
    loop {
        let mut clash = None;
        'outer: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if overlaps(&roots[i], &roots[j]) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { return };
        roots[i].bisect();
        roots[j].bisect();
    }
}

fn overlaps(a: &IsolatedRoot, b: &IsolatedRoot) -> bool {
    let (ea, eb) = (a.enclosure(), b.enclosure());
    match (a.exact(), b.exact()) {
        (Some(_), Some(_)) => false,
        (Some(v), None) => eb.lo < *v && *v < eb.hi,
        (None, Some(v)) => ea.lo < *v && *v < ea.hi,
        (None, None) => ea.lo < eb.hi && eb.lo < ea.hi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn no_real_roots() {
        let p = UnivariatePolynomial::from_i64(&[1, 0, 1]);
        assert!(isolate_real_roots(&p, &[]).unwrap().is_empty());
        assert_eq!(isolate_real_roots(&UnivariatePolynomial::zero(), &[]).unwrap_err(), RootError::ZeroPolynomial);
    }

    #[test]
    fn sqrt_two_is_bracketed() {
        let p = UnivariatePolynomial::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &[]).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.exact().is_none()));
        let pos = &roots[1];
        assert_eq!(pos.cmp_rational(&rat(141, 100)).unwrap(), Ordering::Greater);
        assert_eq!(pos.cmp_rational(&rat(142, 100)).unwrap(), Ordering::Less);
        // x^2 - 2 vanishes at the root, x - 1 is positive there.
        assert_eq!(pos.sign_of(&p).unwrap(), None);
        assert_eq!(pos.sign_of_affine(&int(-1), &int(1)).unwrap(), Some(Sign::Positive));
    }

    #[test]
    fn multiplicities_and_exclusion() {
        // (x - 1/2)^2 (x + 3)
        let a = UnivariatePolynomial::linear(rat(-1, 2), int(1));
        let b = UnivariatePolynomial::linear(int(3), int(1));
        let p = &(&a * &a) * &b;
        let roots = isolate_real_roots(&p, &[]).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact(), Some(&int(-3)));
        assert_eq!(roots[1].exact(), Some(&rat(1, 2)));
        assert_eq!(roots[1].multiplicity(), 2);
        let roots = isolate_real_roots(&p, &[int(-3)]).unwrap();
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn sturm_counts_all_roots() {
        let p = UnivariatePolynomial::from_i64(&[0, -1, 0, 1]);
        let s = SturmSequence::new(&p);
        assert_eq!(s.count_all(), 3);
    }
}
