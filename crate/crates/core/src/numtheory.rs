//! Sums of squares, differences of squares and factorization by trial division.

use std::fmt;

use num_integer::Roots;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub negative: bool,
    /// `(prime, exponent)` with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> i128 {
        let mag: i128 = self.factors.iter().map(|&(p, e)| (p as i128).pow(e)).product();
        if self.negative {
            -mag
        } else {
            mag
        }
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|f| f.0 == p).map_or(0, |f| f.1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-1")?;
            if !self.factors.is_empty() {
                write!(f, " * ")?;
            }
        } else if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::FactorZero);
    }
    let mut m = n.unsigned_abs();
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { negative: n < 0, factors })
}

pub fn is_perfect_square(k: i64) -> Option<i64> {
    if k < 0 {
        return None;
    }
    let r = k.sqrt();
    (r * r == k).then_some(r)
}

/// Every prime `≡ 3 (mod 4)` divides `k` to an even power.
pub fn is_sum_of_two_squares(k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if k == 0 {
        return true;
    }
    let f = factorize(k).expect("nonzero");
    f.factors.iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0)
}

/// `k ≥ 0` and `k` is not of the form `4^p (8q + 7)`.
pub fn is_sum_of_three_squares(k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if k == 0 {
        return true;
    }
    let mut m = k;
    while m % 4 == 0 {
        m /= 4;
    }
    m % 8 != 7
}

pub fn sum_two_squares(k: i64) -> Option<(i64, i64)> {
    if !is_sum_of_two_squares(k) {
        return None;
    }
    let mut u = 0;
    while 2 * u * u <= k {
        if let Some(v) = is_perfect_square(k - u * u) {
            return Some((u, v));
        }
        u += 1;
    }
    unreachable!("criterion guarantees a decomposition of {k}")
}

pub fn sum_three_squares(k: i64) -> Option<(i64, i64, i64)> {
    if !is_sum_of_three_squares(k) {
        return None;
    }
    let mut u = 0;
    while 3 * u * u <= k {
        if let Some((v, w)) = two_squares_from(k - u * u, u) {
            return Some((u, v, w));
        }
        u += 1;
    }
    unreachable!("criterion guarantees a decomposition of {k}")
}

pub fn sum_four_squares(k: i64) -> Option<(i64, i64, i64, i64)> {
    if k < 0 {
        return None;
    }
    let mut u = 0;
    while 4 * u * u <= k {
        let rest = k - u * u;
        let mut v = u;
        while 3 * v * v <= rest {
            if let Some((w, x)) = two_squares_from(rest - v * v, v) {
                return Some((u, v, w, x));
            }
            v += 1;
        }
        u += 1;
    }
    unreachable!("every non-negative integer is a sum of four squares")
}

/// `k = m² − n²`, which fails exactly for `k ≡ 2 (mod 4)`.
pub fn diff_two_squares(k: i64) -> Option<(i64, i64)> {
    match k.rem_euclid(4) {
        1 | 3 => Some(((k + 1) / 2, (k - 1) / 2)),
        0 => {
            let t = k / 4;
            Some((t + 1, t - 1))
        }
        _ => None,
    }
}

/// Smallest `(v, w)` with `lo ≤ v ≤ w` and `v² + w² = k`.
fn two_squares_from(k: i64, lo: i64) -> Option<(i64, i64)> {
    let mut v = lo;
    while 2 * v * v <= k {
        if let Some(w) = is_perfect_square(k - v * v) {
            return Some((v, w));
        }
        v += 1;
    }
    None
}
