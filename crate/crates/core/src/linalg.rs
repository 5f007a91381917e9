//! Exact matrix rank over `Q` and over `F_p`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Entries that support one fraction-free elimination step.
trait Exact: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `(a·d − b·c) / p`, where the division is known to be exact.
    fn bareiss(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        i128::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn bareiss(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?.checked_div(*p)
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn bareiss(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        Some((a * d - b * c) / p)
    }
}

/// Fraction-free (Bareiss) elimination; `None` if an entry overflowed.
fn bareiss_rank<T: Exact>(rows: &[Vec<i64>], ncols: usize) -> Option<usize> {
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
        .collect();
    let nrows = a.len();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..ncols {
                row[j] = T::bareiss(&pivot_row[col], &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Rank over the rationals.
pub fn rank_rational(rows: &[Vec<i64>], ncols: usize) -> usize {
    bareiss_rank::<i128>(rows, ncols)
        .or_else(|| bareiss_rank::<BigInt>(rows, ncols))
        .expect("big-integer elimination cannot overflow")
}

/// Rank over `F_p`; `p` must be prime and below `2^31`.
pub fn rank_mod_p(rows: &[Vec<i64>], ncols: usize, p: u32) -> usize {
    let p = u64::from(p);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
        .collect();
    let nrows = a.len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for j in col..ncols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..ncols {
                row[j] = (row[j] + p - f * pivot_row[j] % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
