//! Exact scalar fields used by the rank oracle: a word-sized prime field and
//! the rationals, behind one small trait so the matrix builders are shared.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2^31 − 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Field over which an oracle computation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("prime:")
            .ok_or_else(|| Error::domain("field", format!("expected `rational` or `prime:<p>`, got `{s}`")))?
            .parse::<u64>()
            .map_err(|e| Error::domain("field", format!("bad prime `{s}`: {e}")))?;
        Field::prime(p)
    }
}

impl Field {
    /// A prime field; `p` must be prime and below `2^32` so products fit a word.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::domain("field", format!("{p} is not below 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::domain("field", format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Rejects prime fields too small for derivative conditions up to `degree`.
    pub fn check_degree(&self, degree: i64) -> Result<()> {
        match *self {
            Field::Prime(p) if (p as i64) <= degree => {
                Err(Error::Field(format!("characteristic {p} does not exceed degree {degree}")))
            }
            _ => Ok(()),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic the matrix code needs.
pub trait Scalars: Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn from_u128(&self, v: u128) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Rank of the matrix whose rows are given; rows must share one length.
    fn rank(&self, rows: Vec<Vec<Self::E>>) -> usize;

    fn one(&self) -> Self::E {
        self.from_i64(1)
    }
}

/// Integers mod a prime below `2^32`.
#[derive(Debug, Clone, Copy)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 32);
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Scalars for Zp {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_u128(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a % self.p != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn rank(&self, rows: Vec<Vec<u64>>) -> usize {
        rank_mod_p(rows, self.p)
    }
}

/// Gaussian elimination mod `p`. Stops early once every column has a pivot.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = Zp::new(p).inv(&rows[rank][col]).expect("nonzero pivot");
        for v in rows[rank][col..].iter_mut() {
            *v = *v * inv % p;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = p - f;
            for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = (*x + f * y) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// The rationals. Rank clears denominators row by row and runs fraction-free
/// (Bareiss) elimination over the integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Scalars for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn from_u128(&self, v: u128) -> BigRational {
        BigRational::from_integer(v.into())
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn rank(&self, rows: Vec<Vec<BigRational>>) -> usize {
        let int_rows = rows
            .into_iter()
            .map(|row| {
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.into_iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect()
            })
            .collect();
        rank_bareiss(int_rows)
    }
}

/// Fraction-free elimination over the integers; every division is exact.
pub fn rank_bareiss(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[col].clone();
        for row in tail.iter_mut() {
            let f = row[col].clone();
            for c in col..ncols {
                let v = (&pv * &row[c] - &f * &pivot[c]) / &prev;
                row[c] = v;
            }
        }
        prev = pv.abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        rank += 1;
    }
    rank
}

/// Solves `M x = b` for square invertible `M`; `None` if singular.
pub fn solve<S: Scalars>(s: &S, m: &[Vec<S::E>], b: &[S::E]) -> Option<Vec<S::E>> {
    let n = m.len();
    let mut a: Vec<Vec<S::E>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !s.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        let inv = s.inv(&a[col][col])?;
        for v in a[col].iter_mut() {
            *v = s.mul(v, &inv);
        }
        for r in 0..n {
            if r == col || s.is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let t = s.mul(&f, &a[col][c]);
                a[r][c] = s.sub(&a[r][c], &t);
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("prime:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("prime:100".parse::<Field>().is_err());
        assert!("prime:4294967311".parse::<Field>().is_err());
        assert!("real".parse::<Field>().is_err());
        assert_eq!(Field::default().to_string(), "prime:2147483647");
        assert!(Field::Prime(7).check_degree(7).is_err());
        assert!(Field::Prime(7).check_degree(6).is_ok());
    }

    #[test]
    fn ranks_agree_across_fields() {
        let m: Vec<Vec<i64>> = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0], vec![1, 3, 4, 4]];
        let zp = Zp::new(DEFAULT_PRIME);
        let q = Rationals;
        let rz = zp.rank(m.iter().map(|r| r.iter().map(|&v| zp.from_i64(v)).collect()).collect());
        let rq = q.rank(m.iter().map(|r| r.iter().map(|&v| q.from_i64(v)).collect()).collect());
        assert_eq!((rz, rq), (2, 2));
        // Rank drops mod 5 but not over Q.
        let m2 = [vec![1i64, 2], vec![3, 1]];
        assert_eq!(Zp::new(5).rank(m2.iter().map(|r| r.iter().map(|&v| Zp::new(5).from_i64(v)).collect()).collect()), 1);
        assert_eq!(q.rank(m2.iter().map(|r| r.iter().map(|&v| q.from_i64(v)).collect()).collect()), 2);
    }

    #[test]
    fn solves_small_system() {
        let q = Rationals;
        let m = vec![vec![q.from_i64(2), q.from_i64(1)], vec![q.from_i64(1), q.from_i64(3)]];
        let x = solve(&q, &m, &[q.from_i64(3), q.from_i64(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        let sing = vec![vec![q.from_i64(1), q.from_i64(1)], vec![q.from_i64(1), q.from_i64(1)]];
        assert!(solve(&q, &sing, &[q.from_i64(1), q.from_i64(2)]).is_none());
    }
}
