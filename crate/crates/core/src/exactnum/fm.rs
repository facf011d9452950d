//! Exact Fourier–Motzkin elimination for systems of strict and non-strict
//! affine inequalities.

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// `coeffs · t + constant > 0` (strict) or `≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, constant: Rational, strict: bool) -> Self {
        Constraint { coeffs, constant, strict }
    }

    pub fn eval(&self, t: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(t)
            .fold(self.constant.clone(), |acc, (a, x)| acc + a * x)
    }

    pub fn holds(&self, t: &[Rational]) -> bool {
        let v = self.eval(t);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    /// Scaled so the first nonzero coefficient (or the constant) has absolute value one.
    fn normalized(&self) -> Constraint {
        let pivot = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .unwrap_or(&self.constant)
            .abs();
        if pivot.is_zero() {
            return self.clone();
        }
        let inv = pivot.recip();
        Constraint {
            coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
            constant: &self.constant * &inv,
            strict: self.strict,
        }
    }
}

pub fn fm_feasible(constraints: &[Constraint], nvars: usize) -> bool {
    fm_witness(constraints, nvars).is_some()
}

/// A rational point satisfying every constraint, or `None` if the set is empty.
pub fn fm_witness(constraints: &[Constraint], nvars: usize) -> Option<Vec<Rational>> {
    assert!(constraints.iter().all(|c| c.coeffs.len() == nvars), "constraint arity mismatch");
    // levels[k] holds the system over the first k variables.
    let mut levels: Vec<Vec<Constraint>> = vec![Vec::new(); nvars + 1];
    levels[nvars] = dedup(constraints.to_vec());
    for k in (0..nvars).rev() {
        let current = &levels[k + 1];
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            let a = &c.coeffs[k];
            if a.is_positive() {
                lower.push(c);
            } else if a.is_negative() {
                upper.push(c);
            } else {
                rest.push(truncate(c, k));
            }
        }
        for l in &lower {
            for u in &upper {
                // a_l t_k + r_l (>) 0 with a_l > 0 and a_u t_k + r_u (>) 0 with a_u < 0
                // combine to (-a_u) r_l + a_l r_u (>) 0.
                let (al, au) = (&l.coeffs[k], -&u.coeffs[k]);
                let coeffs = (0..k).map(|i| &au * &l.coeffs[i] + al * &u.coeffs[i]).collect();
                let constant = &au * &l.constant + al * &u.constant;
                rest.push(Constraint::new(coeffs, constant, l.strict || u.strict));
            }
        }
        levels[k] = dedup(rest);
    }
    if !levels[0].iter().all(|c| c.holds(&[])) {
        return None;
    }
    let mut point: Vec<Rational> = Vec::with_capacity(nvars);
    for k in 0..nvars {
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for c in &levels[k + 1] {
            let a = &c.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let rest = c.coeffs[..k]
                .iter()
                .zip(&point)
                .fold(c.constant.clone(), |acc, (x, y)| acc + x * y);
            let bound = -rest / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && c.strict && !s)) {
                    lo = Some((bound, c.strict));
                }
            } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && c.strict && !s)) {
                hi = Some((bound, c.strict));
            }
        }
        let value = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some((l, _)), None) => l.floor() + Rational::one(),
            (None, Some((h, _))) => h.ceil() - Rational::one(),
            (Some((l, ls)), Some((h, hs))) => {
                if l == h {
                    debug_assert!(!ls && !hs);
                    l
                } else {
                    simplest_between(&l, &h)
                }
            }
        };
        point.push(value);
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&point)));
    Some(point)
}

/// A rational with small denominator strictly inside `(lo, hi)`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    let mut den = Rational::one();
    loop {
        let candidate = (lo * &den).floor() + Rational::one();
        let value = candidate / &den;
        if &value < hi && &value > lo {
            return value;
        }
        if den > Rational::from_integer(1_000_000.into()) {
            return (lo + hi) / two;
        }
        den *= &two;
    }
}

fn truncate(c: &Constraint, k: usize) -> Constraint {
    Constraint::new(c.coeffs[..k].to_vec(), c.constant.clone(), c.strict)
}

fn dedup(constraints: Vec<Constraint>) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = Vec::new();
    for c in constraints {
        let n = c.normalized();
        if n.coeffs.iter().all(Zero::is_zero) {
            // Constant constraints are kept only when they fail.
            if !n.holds(&[]) && !out.iter().any(|o| o == &n) {
                out.push(n);
            }
            continue;
        }
        if let Some(existing) = out.iter_mut().find(|o| o.coeffs == n.coeffs && o.constant == n.constant) {
            existing.strict |= n.strict;
        } else {
            out.push(n);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn constant_constraints() {
        assert!(fm_feasible(&[Constraint::new(vec![], rat(1, 3), true)], 0));
        assert!(!fm_feasible(&[Constraint::new(vec![], rat(-1, 11), true)], 0));
    }

    #[test]
    fn open_interval_feasibility() {
        // x > 0 and 8/19 - x > 0
        let cs = vec![
            Constraint::new(vec![int(1)], int(0), true),
            Constraint::new(vec![int(-1)], rat(8, 19), true),
        ];
        let w = fm_witness(&cs, 1).unwrap();
        assert!(cs.iter().all(|c| c.holds(&w)));
        // x > 0 and -x >= 0 is empty, x >= 0 and -x >= 0 is a point.
        let strict = vec![Constraint::new(vec![int(1)], int(0), true), Constraint::new(vec![int(-1)], int(0), false)];
        assert!(!fm_feasible(&strict, 1));
        let closed = vec![Constraint::new(vec![int(1)], int(0), false), Constraint::new(vec![int(-1)], int(0), false)];
        assert_eq!(fm_witness(&closed, 1).unwrap(), vec![int(0)]);
    }

    #[test]
    fn two_variables() {
        // x > 0, y > 0, x + y < 1, x - y > 1/2
        let cs = vec![
            Constraint::new(vec![int(1), int(0)], int(0), true),
            Constraint::new(vec![int(0), int(1)], int(0), true),
            Constraint::new(vec![int(-1), int(-1)], int(1), true),
            Constraint::new(vec![int(1), int(-1)], rat(-1, 2), true),
        ];
        let w = fm_witness(&cs, 2).unwrap();
        assert!(cs.iter().all(|c| c.holds(&w)));
        let mut infeasible = cs.clone();
        infeasible.push(Constraint::new(vec![int(-1), int(0)], rat(1, 2), false));
        assert!(!fm_feasible(&infeasible, 2));
    }
}
