//! Exact scalar fields.
//!
//! Every computation in the crate is generic over a [`Field`], which acts as
//! the arithmetic context for its element type. Two fields are provided:
//! [`PrimeField`] (residues modulo a runtime prime `p < 2^32`) and
//! [`RationalField`] (arbitrary precision fractions in lowest terms).
//! Neither ever rounds.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus: the Mersenne prime 2^31 - 1.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

/// Default half-width of the integer range sampled in rational mode.
pub const DEFAULT_RATIONAL_BOUND: i64 = 1 << 12;

/// Arithmetic mode of a field, as reported in outputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum Mode {
    PrimeField { p: u64 },
    Rational,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::PrimeField { p } => write!(f, "prime-field({p})"),
            Mode::Rational => f.write_str("rational"),
        }
    }
}

/// An exact field acting as arithmetic context for its elements.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn mode(&self) -> Mode;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Whether `a` is a valid, normalized element of this field.
    fn is_canonical(&self, a: &Self::Elem) -> bool;

    /// Inclusive integer range drawn from when sampling a generic scalar.
    fn sample_range(&self) -> (i64, i64);

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `dst += factor * src`, element-wise.
    fn axpy(&self, dst: &mut [Self::Elem], factor: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.add(d, &self.mul(factor, s));
            }
        }
    }

    fn scale(&self, v: &mut [Self::Elem], factor: &Self::Elem) {
        for x in v.iter_mut() {
            *x = self.mul(x, factor);
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Rank of the matrix whose rows are given. Consumes its scratch copy.
    fn rank_of(&self, rows: Vec<Vec<Self::Elem>>, cols: usize) -> usize {
        crate::matrix::incremental_rank(self, rows, cols)
    }

    fn render(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// The prime field `F_p` with `p < 2^32`, elements stored as canonical
/// residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 32)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_MODULUS }
    }
}

/// Deterministic trial division; moduli are below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn mode(&self) -> Mode {
        Mode::PrimeField { p: self.p }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let e = (*a as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(e.gcd, 1);
        Some(self.from_i64(e.x))
    }

    fn is_canonical(&self, a: &u64) -> bool {
        *a < self.p
    }

    fn sample_range(&self) -> (i64, i64) {
        (0, self.p as i64 - 1)
    }

    #[inline]
    fn axpy(&self, dst: &mut [u64], factor: &u64, src: &[u64]) {
        // p < 2^32, so factor * s + d < 2^64.
        let p = self.p;
        let f = *factor;
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = (*d + f * s) % p;
        }
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The rational numbers. Elements are kept in lowest terms with a positive
/// denominator by `num-rational`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalField {
    sample_bound: i64,
}

impl RationalField {
    /// `sample_bound` is the half-width of the integer range used when
    /// sampling generic scalars.
    pub fn new(sample_bound: i64) -> Self {
        RationalField {
            sample_bound: sample_bound.max(1),
        }
    }
}

impl Default for RationalField {
    fn default() -> Self {
        RationalField::new(DEFAULT_RATIONAL_BOUND)
    }
}

impl Field for RationalField {
    type Elem = BigRational;

    fn mode(&self) -> Mode {
        Mode::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_canonical(&self, a: &BigRational) -> bool {
        a.denom().is_positive() && a.numer().gcd(a.denom()).is_one()
    }

    fn sample_range(&self) -> (i64, i64) {
        (-self.sample_bound, self.sample_bound)
    }

    fn rank_of(&self, rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
        let ints = rows.into_iter().map(clear_denominators).collect();
        bareiss_rank(ints, cols)
    }

    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Scales a rational row to a primitive-free integer row with the same span.
fn clear_denominators(row: Vec<BigRational>) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.into_iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Fraction-free (Bareiss) elimination over the integers. Every division is
/// exact, so intermediate entries stay bounded by minors of the input.
pub(crate) fn bareiss_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[col];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col..cols {
                let v = &row[j] * pv - &factor * &prow[j];
                row[j] = v / &prev;
            }
        }
        prev = pv.clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites_and_large_moduli() {
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert!(matches!(
            PrimeField::new(15),
            Err(Error::InvalidModulus(15))
        ));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new((1u64 << 32) + 15).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&2), Some(4));
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        let big = PrimeField::default();
        for a in [1u64, 2, 12345, DEFAULT_MODULUS - 1] {
            assert_eq!(big.mul(&a, &big.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn prime_field_from_negative() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.from_i64(-10), 0);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.neg(&0), 0);
    }

    #[test]
    fn rationals_stay_canonical() {
        let q = RationalField::default();
        let a = q.from_i64(6);
        let b = q.inv(&q.from_i64(-4)).unwrap();
        let c = q.mul(&a, &b);
        assert!(q.is_canonical(&c));
        assert_eq!(q.render(&c), "-3/2");
        let bad = BigRational::new_raw(BigInt::from(2), BigInt::from(4));
        assert!(!q.is_canonical(&bad));
    }

    #[test]
    fn bareiss_matches_known_ranks() {
        let m = |v: &[&[i64]]| -> Vec<Vec<BigInt>> {
            v.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(bareiss_rank(m(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]]), 3), 2);
        assert_eq!(
            bareiss_rank(m(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]]), 3),
            3
        );
        assert_eq!(bareiss_rank(vec![], 4), 0);
    }
}
