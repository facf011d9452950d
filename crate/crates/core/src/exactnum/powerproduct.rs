//! Signed products of rational powers of primes, and ℚ-linear combinations
//! of them.
//!
//! A `PowerProduct` is `±∏ pᵉᵖ` with `eₚ ∈ ℚ`. A `Radical` is a finite sum
//! `Σ qᵢ·∏ p^{fᵢ,ₚ}` with every `fᵢ,ₚ ∈ (0, 1)`; by linear independence of
//! such radicals over ℚ this representation is canonical, so equality is
//! structural.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_prime::nt_funcs::factorize;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, to_f64, Rational, Sign};

type Exponents = BTreeMap<BigUint, Rational>;

fn factor_into(n: &BigInt, sign: i64, out: &mut Exponents) {
    let n = n.magnitude();
    if n.is_one() {
        return;
    }
    for (p, e) in factorize(n.clone()) {
        let entry = out.entry(p).or_insert_with(Rational::zero);
        *entry += Rational::from_integer(BigInt::from(sign * e as i64));
    }
    out.retain(|_, e| !e.is_zero());
}

fn pow_big(base: &BigUint, e: &BigInt) -> Rational {
    let mag: u32 = e.magnitude().try_into().expect("exponent too large");
    let v = Rational::from_integer(BigInt::from_biguint(BigSign::Plus, num_traits::pow(base.clone(), mag as usize)));
    if e.is_negative() {
        v.recip()
    } else {
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerProduct {
    sign: Sign,
    factors: Exponents,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct {
            sign: Sign::Positive,
            factors: BTreeMap::new(),
        }
    }

    /// `None` for zero.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let sign = Sign::of(q)?;
        let mut factors = BTreeMap::new();
        factor_into(q.numer(), 1, &mut factors);
        factor_into(q.denom(), -1, &mut factors);
        Some(PowerProduct { sign, factors })
    }

    pub fn from_i64(v: i64) -> Self {
        PowerProduct::from_rational(&Rational::from_integer(v.into())).expect("nonzero")
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, Rational> {
        &self.factors
    }

    pub fn abs(&self) -> Self {
        PowerProduct {
            sign: Sign::Positive,
            factors: self.factors.clone(),
        }
    }

    pub fn with_sign(&self, sign: Sign) -> Self {
        PowerProduct {
            sign,
            factors: self.factors.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.with_sign(self.sign.flip())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            *factors.entry(p.clone()).or_insert_with(Rational::zero) += e;
        }
        factors.retain(|_, e| !e.is_zero());
        PowerProduct {
            sign: self.sign.times(other.sign),
            factors,
        }
    }

    pub fn inv(&self) -> Self {
        PowerProduct {
            sign: self.sign,
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// `self^e`. Non-integer exponents are only defined for positive values.
    pub fn pow(&self, e: &Rational) -> Option<Self> {
        let sign = if e.is_integer() {
            if e.to_integer().is_odd_int() {
                self.sign
            } else {
                Sign::Positive
            }
        } else if self.sign == Sign::Negative {
            return None;
        } else {
            Sign::Positive
        };
        let mut factors: Exponents = self.factors.iter().map(|(p, x)| (p.clone(), x * e)).collect();
        factors.retain(|_, x| !x.is_zero());
        Some(PowerProduct { sign, factors })
    }

    pub fn is_rational(&self) -> bool {
        self.factors.values().all(Rational::is_integer)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        let mut v = Rational::one();
        for (p, e) in &self.factors {
            v *= pow_big(p, &e.to_integer());
        }
        if self.sign == Sign::Negative {
            v = -v;
        }
        Some(v)
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = 1.0f64;
        for (p, e) in &self.factors {
            let pf = to_f64(&Rational::from_integer(BigInt::from_biguint(BigSign::Plus, p.clone())));
            v *= pf.powf(to_f64(e));
        }
        if self.sign == Sign::Negative {
            -v
        } else {
            v
        }
    }
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int_part: Exponents = self
            .factors
            .iter()
            .map(|(p, e)| (p.clone(), Rational::from_integer(e.floor().to_integer())))
            .filter(|(_, e)| !e.is_zero())
            .collect();
        let rational = PowerProduct {
            sign: self.sign,
            factors: int_part,
        }
        .to_rational()
        .expect("integer exponents");
        let radicals: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, e)| !e.is_integer())
            .map(|(p, e)| format!("{p}^({})", fmt_rational(&e.fract())))
            .collect();
        if radicals.is_empty() {
            f.write_str(&fmt_rational(&rational))
        } else {
            write!(f, "{}*{}", fmt_rational(&rational), radicals.join("*"))
        }
    }
}

/// Canonical ℚ-linear combination of prime radicals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radical {
    terms: BTreeMap<Vec<(BigUint, Rational)>, Rational>,
}

impl Radical {
    pub fn zero() -> Self {
        Radical { terms: BTreeMap::new() }
    }

    pub fn from_rational(q: &Rational) -> Self {
        let mut r = Radical::zero();
        if !q.is_zero() {
            r.terms.insert(Vec::new(), q.clone());
        }
        r
    }

    pub fn from_power_product(pp: &PowerProduct) -> Self {
        let mut coeff = Rational::one();
        let mut key = Vec::new();
        for (p, e) in &pp.factors {
            let floor = e.floor();
            coeff *= pow_big(p, &floor.to_integer());
            let frac = e - floor;
            if !frac.is_zero() {
                key.push((p.clone(), frac));
            }
        }
        if pp.sign == Sign::Negative {
            coeff = -coeff;
        }
        let mut r = Radical::zero();
        r.terms.insert(key, coeff);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// The single term as a power product, if there is exactly one.
    pub fn to_power_product(&self) -> Option<PowerProduct> {
        if self.terms.len() != 1 {
            return None;
        }
        let (key, c) = self.terms.iter().next().unwrap();
        let mut pp = PowerProduct::from_rational(c)?;
        for (p, e) in key {
            pp = pp.mul(&PowerProduct {
                sign: Sign::Positive,
                factors: BTreeMap::from([(p.clone(), e.clone())]),
            });
        }
        Some(pp)
    }

    fn add_term(&mut self, key: Vec<(BigUint, Rational)>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Radical) -> Radical {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Radical {
        Radical {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Radical) -> Radical {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Radical) -> Radical {
        let mut out = Radical::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut factors: Exponents = ka.iter().cloned().collect();
                for (p, e) in kb {
                    *factors.entry(p.clone()).or_insert_with(Rational::zero) += e;
                }
                factors.retain(|_, e| !e.is_zero());
                let pp = PowerProduct {
                    sign: Sign::Positive,
                    factors,
                };
                let term = Radical::from_power_product(&pp);
                for (k, c) in term.terms {
                    out.add_term(k, c * ca * cb);
                }
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Radical {
        self.mul(&Radical::from_rational(q))
    }

    /// Reciprocal; only single-term values are invertible in this representation.
    pub fn inv(&self) -> Option<Radical> {
        self.to_power_product().map(|pp| Radical::from_power_product(&pp.inv()))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut v = to_f64(c);
                for (p, e) in k {
                    let pf = to_f64(&Rational::from_integer(BigInt::from_biguint(BigSign::Plus, p.clone())));
                    v *= pf.powf(to_f64(e));
                }
                v
            })
            .sum()
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                if k.is_empty() {
                    fmt_rational(c)
                } else {
                    let rad: Vec<String> = k.iter().map(|(p, e)| format!("{p}^({})", fmt_rational(e))).collect();
                    format!("{}*{}", fmt_rational(c), rad.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn rational_round_trip() {
        let q = rat(-100, 6859);
        let pp = PowerProduct::from_rational(&q).unwrap();
        assert_eq!(pp.to_rational(), Some(q));
        assert_eq!(pp.to_string(), "-100/6859");
        assert!(PowerProduct::from_rational(&int(0)).is_none());
        assert_eq!(PowerProduct::from_rational(&int(1)).unwrap(), PowerProduct::one());
    }

    #[test]
    fn fractional_powers() {
        let two = PowerProduct::from_i64(2);
        let root = two.pow(&rat(1, 2)).unwrap();
        assert!(!root.is_rational());
        assert_eq!(root.mul(&root).to_rational(), Some(int(2)));
        assert!(PowerProduct::from_i64(-2).pow(&rat(1, 2)).is_none());
        assert_eq!(PowerProduct::from_i64(-2).pow(&int(3)).unwrap().to_rational(), Some(int(-8)));
    }

    #[test]
    fn radical_sums_are_canonical() {
        let s2 = Radical::from_power_product(&PowerProduct::from_i64(2).pow(&rat(1, 2)).unwrap());
        let eight = Radical::from_power_product(&PowerProduct::from_i64(8).pow(&rat(1, 2)).unwrap());
        // sqrt(8) = 2 sqrt(2)
        assert_eq!(eight, s2.scale(&int(2)));
        let sum = s2.add(&Radical::from_rational(&int(1)));
        assert_eq!(sum.to_rational(), None);
        assert_eq!(sum.sub(&s2).to_rational(), Some(int(1)));
        assert_eq!(s2.mul(&s2).to_rational(), Some(int(2)));
        assert_eq!(s2.inv().unwrap().mul(&s2).to_rational(), Some(int(1)));
    }
}
