//! Interval verification of approximate roots and the multi-start Newton
//! search that produces them.

use num_traits::Zero;

use crate::exactnum::interval::Interval;
use crate::exactnum::mpoly::MPoly;
use crate::exactnum::rational::{from_f64_dyadic, to_f64, Rational};

pub(crate) enum Krawczyk {
    /// The operator maps the box strictly inside itself: exactly one root, contained in the image.
    Unique(Vec<Interval>),
    NoRoot,
    Unknown,
}

fn invert_f64(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[p][col].abs() < 1e-300 {
            return None;
        }
        m.swap(p, col);
        let piv = m[col][col];
        for v in m[col].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for c in 0..2 * n {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    let inv: Vec<Vec<f64>> = m.into_iter().map(|r| r[n..].to_vec()).collect();
    inv.iter().flatten().all(|x| x.is_finite()).then_some(inv)
}

/// `K(X) = y − Y f(y) + (I − Y J(X))(X − y)` for a square system.
pub(crate) fn krawczyk(fs: &[MPoly], jac: &[Vec<MPoly>], x: &[Interval]) -> Krawczyk {
    let n = fs.len();
    let y: Vec<Rational> = x.iter().map(|i| i.mid()).collect();
    let jy: Vec<Vec<f64>> = jac
        .iter()
        .map(|row| row.iter().map(|p| to_f64(&p.eval(&y))).collect())
        .collect();
    let Some(yinv) = invert_f64(&jy) else {
        return Krawczyk::Unknown;
    };
    let ym: Vec<Vec<Rational>> = yinv
        .iter()
        .map(|row| row.iter().map(|v| from_f64_dyadic(*v, 60)).collect())
        .collect();
    let fy: Vec<Rational> = fs.iter().map(|f| f.eval(&y)).collect();
    let jx: Vec<Vec<Interval>> = jac
        .iter()
        .map(|row| row.iter().map(|p| p.eval_interval(x)).collect())
        .collect();
    let dx: Vec<Interval> = x.iter().zip(&y).map(|(i, c)| i - &Interval::point(c.clone())).collect();
    let mut image = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = y[i].clone();
        for j in 0..n {
            c -= &ym[i][j] * &fy[j];
        }
        let mut k = Interval::point(c);
        for j in 0..n {
            let mut entry = Interval::point(if i == j { Rational::from_integer(1.into()) } else { Rational::zero() });
            for l in 0..n {
                entry = &entry - &jx[l][j].scale(&ym[i][l]);
            }
            k = &k + &(&entry * &dx[j]);
        }
        image.push(k);
    }
    if image.iter().zip(x).any(|(k, b)| !k.intersects(b)) {
        Krawczyk::NoRoot
    } else if image.iter().zip(x).all(|(k, b)| b.strictly_contains(k)) {
        Krawczyk::Unique(image)
    } else {
        Krawczyk::Unknown
    }
}

struct F64Poly {
    terms: Vec<(Vec<i32>, f64)>,
}

impl F64Poly {
    fn new(p: &MPoly) -> Self {
        F64Poly {
            terms: p
                .terms()
                .map(|(e, c)| (e.iter().map(|&x| x as i32).collect(), to_f64(c)))
                .collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (k, v)| acc * v.powi(*k)))
            .sum()
    }
}

/// Damped Gauss–Newton from every point of a `per_axis^nv` grid on `[-bound, bound]^nv`;
/// converged points deduplicated within `1e-8`.
pub(crate) fn newton_candidates(eqs: &[MPoly], nv: usize, per_axis: usize, bound: f64) -> Vec<Vec<f64>> {
    let fs: Vec<F64Poly> = eqs.iter().map(F64Poly::new).collect();
    let js: Vec<Vec<F64Poly>> = eqs
        .iter()
        .map(|f| (0..nv).map(|v| F64Poly::new(&f.partial(v))).collect())
        .collect();
    let residual = |x: &[f64]| fs.iter().map(|f| f.eval(x).powi(2)).sum::<f64>();
    let mut out: Vec<Vec<f64>> = Vec::new();
    let total = per_axis.pow(nv as u32);
    for idx in 0..total {
        let mut x: Vec<f64> = (0..nv)
            .map(|d| {
                let i = idx / per_axis.pow(d as u32) % per_axis;
                let t = if per_axis == 1 { 0.5 } else { i as f64 / (per_axis - 1) as f64 };
                // Slightly off the symmetric grid to avoid degenerate starts.
                -bound + 2.0 * bound * t + 1e-3 * (d + 1) as f64
            })
            .collect();
        let mut r = residual(&x);
        for _ in 0..200 {
            if r < 1e-26 {
                break;
            }
            let f: Vec<f64> = fs.iter().map(|p| p.eval(&x)).collect();
            let j: Vec<Vec<f64>> = js.iter().map(|row| row.iter().map(|p| p.eval(&x)).collect()).collect();
            let mut jtj = vec![vec![0.0; nv]; nv];
            let mut jtf = vec![0.0; nv];
            for (row, fv) in j.iter().zip(&f) {
                for a in 0..nv {
                    jtf[a] += row[a] * fv;
                    for b in 0..nv {
                        jtj[a][b] += row[a] * row[b];
                    }
                }
            }
            for (a, row) in jtj.iter_mut().enumerate() {
                row[a] += 1e-14;
            }
            let Some(inv) = invert_f64(&jtj) else {
                break;
            };
            let step: Vec<f64> = (0..nv).map(|a| -(0..nv).map(|b| inv[a][b] * jtf[b]).sum::<f64>()).collect();
            let mut t = 1.0;
            let mut improved = false;
            for _ in 0..30 {
                let trial: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + t * s).collect();
                let rt = residual(&trial);
                if rt < r {
                    x = trial;
                    r = rt;
                    improved = true;
                    break;
                }
                t /= 2.0;
            }
            if !improved {
                break;
            }
        }
        if r < 1e-20 && x.iter().all(|v| v.is_finite()) && !out.iter().any(|p| dist(p, &x) < 1e-8) {
            out.push(x);
        }
    }
    out
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn certifies_sqrt_two() {
        // x² − 2 = 0 on [1.4, 1.5]
        let x = MPoly::var(1, 0);
        let f = x.mul(&x).sub(&MPoly::constant(1, int(2)));
        let j = f.partial(0);
        let bx = [Interval::new(rat(14, 10), rat(15, 10))];
        assert!(matches!(krawczyk(std::slice::from_ref(&f), &[vec![j.clone()]], &bx), Krawczyk::Unique(_)));
        let away = [Interval::new(rat(2, 1), rat(3, 1))];
        assert!(matches!(krawczyk(&[f], &[vec![j]], &away), Krawczyk::NoRoot));
    }

    #[test]
    fn newton_finds_both_roots() {
        let x = MPoly::var(1, 0);
        let f = x.mul(&x).sub(&MPoly::constant(1, int(2)));
        let mut roots = newton_candidates(&[f], 1, 5, 3.0);
        roots.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert_eq!(roots.len(), 2);
        assert!((roots[1][0] - std::f64::consts::SQRT_2).abs() < 1e-10);
    }
}
