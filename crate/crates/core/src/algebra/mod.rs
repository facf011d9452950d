//! Nice nilpotent Lie algebras: parsing, validation, root matrices.

mod parse;
mod rootmatrix;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::rational::{fmt_rational, Rational};

pub use parse::{parse_differential, DifferentialTerm};
pub use rootmatrix::{root_matrix, RootMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("repeated index in e^{{{index}{index}}} at byte {pos}")]
    RepeatedIndex { pos: usize, index: usize },
    #[error("the form e^{{i,j}} at byte {pos} is reserved for indices above 9")]
    ReservedSyntax { pos: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate term e^{{{i}{j}}} in de^{k} at byte {pos}")]
    DuplicateTerm { pos: usize, k: usize, i: usize, j: usize },
    #[error("unbound parameter {0:?}")]
    UnboundParameter(String),
    #[error("coefficient of e^{{{i}{j}}} in de^{k} evaluates to zero")]
    ZeroCoefficient { k: usize, i: usize, j: usize },
    #[error("basis is not nice: {0}")]
    NotNice(String),
    #[error("Jacobi identity fails on triples {0:?}")]
    Jacobi(Vec<(usize, usize, usize)>),
    #[error("not nilpotent: lower central series stabilizes at span of e_{0:?}")]
    NotNilpotent(Vec<usize>),
}

/// `[e_i, e_j] = c·e_k`, indices 0-based with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceLieAlgebra {
    name: String,
    dim: usize,
    brackets: Vec<Bracket>,
    params: BTreeMap<String, Rational>,
}

impl NiceLieAlgebra {
    /// Validates niceness, the Jacobi identity and nilpotency.
    pub fn new(name: impl Into<String>, dim: usize, brackets: Vec<Bracket>) -> Result<Self, AlgebraError> {
        let alg = NiceLieAlgebra {
            name: name.into(),
            dim,
            brackets,
            params: BTreeMap::new(),
        };
        alg.check_nice()?;
        let violations = alg.check_jacobi();
        if !violations.is_empty() {
            return Err(AlgebraError::Jacobi(violations));
        }
        alg.check_nilpotent()?;
        Ok(alg)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    pub fn params(&self) -> &BTreeMap<String, Rational> {
        &self.params
    }

    /// Structure constants `c_h` in bracket order.
    pub fn constants(&self) -> Vec<Rational> {
        self.brackets.iter().map(|b| b.c.clone()).collect()
    }

    /// `[e_a, e_b]` as `(k, c)`, with antisymmetry applied.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, Rational)> {
        self.brackets.iter().find_map(|br| {
            if br.i == a && br.j == b {
                Some((br.k, br.c.clone()))
            } else if br.i == b && br.j == a {
                Some((br.k, -br.c.clone()))
            } else {
                None
            }
        })
    }

    fn check_nice(&self) -> Result<(), AlgebraError> {
        for (h, b) in self.brackets.iter().enumerate() {
            if b.i >= b.j || b.j >= self.dim || b.k >= self.dim {
                return Err(AlgebraError::NotNice(format!("malformed bracket ({}, {}, {})", b.i + 1, b.j + 1, b.k + 1)));
            }
            if b.c.is_zero() {
                return Err(AlgebraError::ZeroCoefficient {
                    k: b.k + 1,
                    i: b.i + 1,
                    j: b.j + 1,
                });
            }
            for other in &self.brackets[..h] {
                if other.i == b.i && other.j == b.j {
                    return Err(AlgebraError::NotNice(format!(
                        "[e_{}, e_{}] has components along e_{} and e_{}",
                        b.i + 1,
                        b.j + 1,
                        other.k + 1,
                        b.k + 1
                    )));
                }
                for x in [b.i, b.j] {
                    if other.k == b.k && (other.i == x || other.j == x) {
                        return Err(AlgebraError::NotNice(format!(
                            "e_{} ⨼ de^{} is not a multiple of a single element",
                            x + 1,
                            b.k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Triples `(i, j, k)`, 1-based with `i < j < k`, where the Jacobi identity fails.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        if let Some((l, c1)) = self.bracket(a, b) {
                            if let Some((m, c2)) = self.bracket(l, c) {
                                *sum.entry(m).or_insert_with(Rational::zero) += c1 * c2;
                            }
                        }
                    }
                    if sum.values().any(|v| !v.is_zero()) {
                        out.push((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        out
    }

    /// Dimensions of the nonzero terms of the lower central series.
    pub fn lower_central_dims(&self) -> Result<Vec<usize>, AlgebraError> {
        let mut current: Vec<bool> = vec![true; self.dim];
        let mut dims = Vec::new();
        loop {
            let d = current.iter().filter(|&&x| x).count();
            if d == 0 {
                return Ok(dims);
            }
            dims.push(d);
            let mut next = vec![false; self.dim];
            for b in &self.brackets {
                if current[b.i] || current[b.j] {
                    next[b.k] = true;
                }
            }
            if next == current {
                let ideal = (0..self.dim).filter(|&x| current[x]).map(|x| x + 1).collect();
                return Err(AlgebraError::NotNilpotent(ideal));
            }
            current = next;
        }
    }

    /// Nilpotency step: the number of nonzero terms `g ⊋ [g,g] ⊋ … ⊋ 0`.
    pub fn check_nilpotent(&self) -> Result<usize, AlgebraError> {
        self.lower_central_dims().map(|d| d.len())
    }

    pub fn root_matrix(&self) -> RootMatrix {
        root_matrix(self)
    }

    /// Basis indices (0-based) grouped into the connected pieces of the nice diagram.
    pub fn irreducible_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.dim).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for b in &self.brackets {
            for (x, y) in [(b.i, b.j), (b.i, b.k)] {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.dim {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// Structure equations in the input notation; reparsing yields the same brackets.
    pub fn to_notation(&self) -> String {
        let mut entries = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let terms: Vec<&Bracket> = self.brackets.iter().filter(|b| b.k == k).collect();
            if terms.is_empty() {
                entries.push("0".to_string());
                continue;
            }
            let mut s = String::new();
            for (n, b) in terms.iter().enumerate() {
                let a = -b.c.clone();
                let negative = a < Rational::zero();
                let mag = if negative { -a } else { a };
                if negative {
                    s.push('-');
                } else if n > 0 {
                    s.push('+');
                }
                if !mag.is_one() {
                    if mag.is_integer() {
                        s.push_str(&fmt_rational(&mag));
                    } else {
                        s.push_str(&format!("({})", fmt_rational(&mag)));
                    }
                }
                s.push_str(&format!("e^{{{}{}}}", b.i + 1, b.j + 1));
            }
            entries.push(s);
        }
        format!("({})", entries.join(","))
    }
}

impl fmt::Display for NiceLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.name.is_empty() {
            f.write_str(&self.to_notation())
        } else {
            write!(f, "{} {}", self.name, self.to_notation())
        }
    }
}

/// Parses and validates structure equations, evaluating parameters eagerly.
pub fn parse_nice_algebra(text: &str, params: &BTreeMap<String, Rational>) -> Result<NiceLieAlgebra, AlgebraError> {
    let (dim, terms) = parse_differential(text, params)?;
    let brackets = terms
        .into_iter()
        .map(|t| Bracket {
            i: t.i - 1,
            j: t.j - 1,
            k: t.k - 1,
            c: -t.coeff,
        })
        .collect();
    let mut alg = NiceLieAlgebra::new("", dim, brackets)?;
    alg.params = params.clone();
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    fn parse(s: &str) -> Result<NiceLieAlgebra, AlgebraError> {
        parse_nice_algebra(s, &BTreeMap::new())
    }

    #[test]
    fn sign_convention() {
        let h = parse("(0,0,e^{12})").unwrap();
        assert_eq!(h.brackets(), &[Bracket { i: 0, j: 1, k: 2, c: int(-1) }]);
        assert_eq!(h.bracket(1, 0), Some((2, int(1))));
        assert_eq!(h.check_nilpotent(), Ok(2));
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let err = parse("(0,0,e^{12},e^{13},e^{24})").unwrap_err();
        assert_eq!(err, AlgebraError::Jacobi(vec![(1, 2, 3)]));
    }

    #[test]
    fn nilpotency_failure() {
        assert_eq!(parse("(0,e^{12})").unwrap_err(), AlgebraError::NotNilpotent(vec![2]));
    }

    #[test]
    fn non_nice_rejected() {
        assert!(matches!(parse("(0,0,e^{12},e^{12})"), Err(AlgebraError::NotNice(_))));
    }

    #[test]
    fn lower_central_series_of_7421_9() {
        let g = parse("(0,0,0,-e^{12},e^{13},e^{14}+e^{23},e^{16}+e^{34})").unwrap();
        assert_eq!(g.lower_central_dims().unwrap(), vec![7, 4, 2, 1]);
        assert_eq!(g.check_nilpotent().unwrap(), 4);
        assert_eq!(g.irreducible_components(), vec![(0..7).collect::<Vec<_>>()]);
    }

    #[test]
    fn components_of_direct_sum() {
        let g = parse("(0,0,e^{12},0,0,e^{45})").unwrap();
        assert_eq!(g.irreducible_components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(parse("(0,0)").unwrap().irreducible_components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn notation_round_trip() {
        let g = parse("(0,0,0,-e^{12},(1/2)e^{13},2e^{14}-e^{23})").unwrap();
        let again = parse(&g.to_notation()).unwrap();
        assert_eq!(g.brackets(), again.brackets());
    }
}
