//! Linear algebra over GF(2) with bit-packed rows.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    len: usize,
    words: Vec<u64>,
}

impl GF2Vector {
    pub fn zeros(len: usize) -> Self {
        GF2Vector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = GF2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of '0'/'1' characters.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| GF2Vector::from_bools(&b))
    }

    /// Vector with ones exactly at the given 0-based positions.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = GF2Vector::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &GF2Vector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &GF2Vector) -> GF2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn dot(&self, other: &GF2Vector) -> bool {
        assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// 0-based positions of the set bits.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Vector({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    cols: usize,
    rows: Vec<GF2Vector>,
}

impl GF2Matrix {
    pub fn new(cols: usize, rows: Vec<GF2Vector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length must equal cols");
        GF2Matrix { cols, rows }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &GF2Vector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn mul_vec(&self, v: &GF2Vector) -> GF2Vector {
        let bits: Vec<bool> = self.rows.iter().map(|r| r.dot(v)).collect();
        GF2Vector::from_bools(&bits)
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = vec![GF2Vector::zeros(self.rows()); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.support() {
                t[j].set(i, true);
            }
        }
        GF2Matrix::new(self.rows(), t)
    }

    /// Basis of the column space, i.e. the image of the map.
    pub fn image_basis(&self) -> Vec<GF2Vector> {
        let mut t = self.transpose();
        let (rank, _) = reduce(&mut t.rows, self.rows(), None);
        t.rows.truncate(rank);
        t.rows
    }

    pub fn kernel_basis(&self) -> Vec<GF2Vector> {
        gf2_affine_solutions(self, &GF2Vector::zeros(self.rows()))
            .map(|s| s.kernel)
            .unwrap_or_default()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        reduce(&mut rows, self.cols, None).0
    }
}

/// Gauss–Jordan over GF(2); the optional right-hand side is carried along.
/// Returns the rank and the pivot columns in row order.
fn reduce(rows: &mut [GF2Vector], cols: usize, mut rhs: Option<&mut GF2Vector>) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(s) = rhs.as_deref_mut() {
            let (a, b) = (s.get(r), s.get(p));
            s.set(r, b);
            s.set(p, a);
        }
        let pivot_row = rows[r].clone();
        for i in 0..rows.len() {
            if i != r && rows[i].get(c) {
                rows[i].xor_assign(&pivot_row);
                if let Some(s) = rhs.as_deref_mut() {
                    let bit = s.get(i) ^ s.get(r);
                    s.set(i, bit);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

/// Solution set `particular + span(kernel)` of `A x = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutions {
    pub particular: GF2Vector,
    pub kernel: Vec<GF2Vector>,
}

impl AffineSolutions {
    pub fn count(&self) -> u128 {
        1u128 << self.kernel.len()
    }

    /// All solutions, in the order of the binary counter over the kernel basis.
    pub fn iter(&self) -> impl Iterator<Item = GF2Vector> + '_ {
        let k = self.kernel.len();
        assert!(k < 64, "too many solutions to enumerate");
        (0u64..1 << k).map(move |mask| {
            let mut v = self.particular.clone();
            for (b, kv) in self.kernel.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v.xor_assign(kv);
                }
            }
            v
        })
    }
}

pub fn gf2_affine_solutions(a: &GF2Matrix, s: &GF2Vector) -> Option<AffineSolutions> {
    assert_eq!(a.rows(), s.len(), "right-hand side length must match row count");
    let n = a.cols();
    let mut rows = a.rows.clone();
    let mut rhs = s.clone();
    let (rank, pivots) = reduce(&mut rows, n, Some(&mut rhs));
    if (rank..rows.len()).any(|i| rhs.get(i)) {
        return None;
    }
    let mut particular = GF2Vector::zeros(n);
    for (r, &c) in pivots.iter().enumerate() {
        particular.set(c, rhs.get(r));
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = GF2Vector::zeros(n);
            v.set(f, true);
            for (r, &c) in pivots.iter().enumerate() {
                if rows[r].get(f) {
                    v.set(c, true);
                }
            }
            v
        })
        .collect();
    Some(AffineSolutions { particular, kernel })
}

/// Every element of the span of `basis`.
pub fn span(len: usize, basis: &[GF2Vector]) -> Vec<GF2Vector> {
    AffineSolutions {
        particular: GF2Vector::zeros(len),
        kernel: basis.to_vec(),
    }
    .iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> GF2Matrix {
        let rows: Vec<GF2Vector> = rows.iter().map(|r| GF2Vector::from_bit_str(r).unwrap()).collect();
        GF2Matrix::new(rows[0].len(), rows)
    }

    #[test]
    fn heisenberg_kernel_has_four_elements() {
        let a = m(&["111"]);
        let sols = gf2_affine_solutions(&a, &GF2Vector::zeros(1)).unwrap();
        assert_eq!(sols.count(), 4);
        let mut all: Vec<String> = sols.iter().map(|v| v.to_string()).collect();
        all.sort();
        assert_eq!(all, vec!["000", "011", "101", "110"]);
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&["110", "110"]);
        let s = GF2Vector::from_bit_str("10").unwrap();
        assert!(gf2_affine_solutions(&a, &s).is_none());
    }

    #[test]
    fn image_and_kernel_dimensions_add_up() {
        let a = m(&["1100", "0110", "1010"]);
        assert_eq!(a.image_basis().len() + a.kernel_basis().len(), 4);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn words_beyond_64_bits() {
        let mut v = GF2Vector::zeros(130);
        v.set(129, true);
        v.set(3, true);
        assert_eq!(v.support(), vec![3, 129]);
        assert!(v.dot(&GF2Vector::from_support(130, &[129])));
        assert!(!v.dot(&GF2Vector::from_support(130, &[3, 129])));
    }
}
