//! Big-integer combinatorics: binomials with the vanishing convention,
//! Eulerian numbers and their differences, plus the scanners built on them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Binomial coefficient with the convention `binom(a, b) = 0` whenever
/// `a < b` or `b < 0`. Negative `a` therefore always gives zero.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let k = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `binom` for callers that already hold machine integers and know the
/// value fits.
pub fn binom_u128(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let k = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn eulerian_row_formula(i: u32) -> Vec<BigInt> {
    let n = i as i64;
    (0..n)
        .map(|j| {
            let mut acc = BigInt::zero();
            for k in 0..=j + 1 {
                let term = binom(n + 1, k) * BigInt::from(j + 1 - k).pow(i);
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}

fn row_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Row `[A(i,0), …, A(i,i−1)]` computed from the alternating closed form and
/// memoized process-wide.
pub fn eulerian_row(i: u32) -> Result<Arc<Vec<BigInt>>> {
    if i < 1 {
        return Err(Error::pre("eulerian", "i must be at least 1"));
    }
    if let Some(row) = row_cache().read().expect("eulerian cache poisoned").get(&i) {
        return Ok(Arc::clone(row));
    }
    let row = Arc::new(eulerian_row_formula(i));
    let mut cache = row_cache().write().expect("eulerian cache poisoned");
    Ok(Arc::clone(cache.entry(i).or_insert(row)))
}

/// Eulerian number `A(i, j)`: permutations of `i` letters with exactly `j`
/// ascents. Zero for `j < 0` or `j ≥ i`.
pub fn eulerian(i: i64, j: i64) -> Result<BigInt> {
    if i < 1 {
        return Err(Error::pre("eulerian", format!("i = {i} < 1")));
    }
    if j < 0 || j >= i {
        return Ok(BigInt::zero());
    }
    let row = eulerian_row(u32::try_from(i).map_err(|_| Error::domain("eulerian", "i too large"))?)?;
    Ok(row[j as usize].clone())
}

/// Largest permutation size accepted by [`eulerian_brute`].
pub const BRUTE_MAX: i64 = 12;

fn ascent_distribution(i: usize) -> Vec<u64> {
    // Heap's algorithm, iterative form.
    let mut perm: Vec<u8> = (0..i as u8).collect();
    let mut counts = vec![0u64; i.max(1)];
    let ascents = |p: &[u8]| p.windows(2).filter(|w| w[0] < w[1]).count();
    counts[ascents(&perm)] += 1;
    let mut c = vec![0usize; i];
    let mut k = 1;
    while k < i {
        if c[k] < k {
            if k % 2 == 0 {
                perm.swap(0, k);
            } else {
                perm.swap(c[k], k);
            }
            counts[ascents(&perm)] += 1;
            c[k] += 1;
            k = 1;
        } else {
            c[k] = 0;
            k += 1;
        }
    }
    counts
}

/// Counts permutations of `{1, …, i}` with exactly `j` ascents by listing
/// all of them. Independent of [`eulerian`]; meant as its oracle.
pub fn eulerian_brute(i: i64, j: i64) -> Result<BigInt> {
    if i < 1 {
        return Err(Error::pre("eulerian_brute", format!("i = {i} < 1")));
    }
    if i > BRUTE_MAX {
        return Err(Error::ResourceLimit {
            op: "eulerian_brute",
            msg: format!("i = {i} exceeds {BRUTE_MAX} ({i}! permutations)"),
        });
    }
    static DIST: OnceLock<RwLock<HashMap<i64, Arc<Vec<u64>>>>> = OnceLock::new();
    let cache = DIST.get_or_init(Default::default);
    let hit = cache.read().expect("brute cache poisoned").get(&i).cloned();
    let dist = match hit {
        Some(d) => d,
        None => {
            let d = Arc::new(ascent_distribution(i as usize));
            cache.write().expect("brute cache poisoned").insert(i, Arc::clone(&d));
            d
        }
    };
    if j < 0 || j >= i {
        return Ok(BigInt::zero());
    }
    Ok(BigInt::from(dist[j as usize]))
}

/// `D(n, k) = A(n, k) − A(n, k − 1)`.
pub fn eulerian_diff(n: i64, k: i64) -> Result<BigInt> {
    Ok(eulerian(n, k)? - eulerian(n, k - 1)?)
}

/// `A(2m−1, m−1) − 2·A(2m−1, m−2) + A(2m−1, m−3)`, the discrete second
/// difference of the odd Eulerian row at its peak.
pub fn peak_second_difference(m: i64) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::pre("peak_second_difference", format!("m = {m} < 2")));
    }
    let n = 2 * m - 1;
    Ok(eulerian(n, m - 1)? - 2 * eulerian(n, m - 2)? + eulerian(n, m - 3)?)
}

/// `Σ_{k=0}^{m} (−1)^k binom(2m+2, k) [2m(m+1) − k(2m+1)]^{2m−1}`, i.e.
/// `(2m−1)!` times the leading coefficient of the witness polynomial.
pub fn leading_coeff_sum(m: i64) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::pre("leading_coeff_sum", format!("m = {m} < 2")));
    }
    let exp = u32::try_from(2 * m - 1).map_err(|_| Error::domain("leading_coeff_sum", "m too large"))?;
    let mut acc = BigInt::zero();
    for k in 0..=m {
        let base = BigInt::from(2 * m * (m + 1) - k * (2 * m + 1));
        let term = binom(2 * m + 2, k) * base.pow(exp);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// One row of the leading-coefficient scan.
#[derive(Debug, Clone, Serialize)]
pub struct LeadingCoeffRow {
    pub m: i64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub value: BigInt,
}

/// Scan of [`leading_coeff_sum`] over `2..=m_max`. The observed monotonicity
/// and sign are reported, never assumed.
#[derive(Debug, Clone, Serialize)]
pub struct LeadingCoeffScan {
    pub rows: Vec<LeadingCoeffRow>,
    pub all_nonzero: bool,
    pub all_negative: bool,
    pub strictly_decreasing: bool,
}

pub fn scan_leading_coeff(m_max: i64) -> Result<LeadingCoeffScan> {
    let rows = (2..=m_max)
        .map(|m| Ok(LeadingCoeffRow { m, value: leading_coeff_sum(m)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(LeadingCoeffScan {
        all_nonzero: rows.iter().all(|r| !r.value.is_zero()),
        all_negative: rows.iter().all(|r| r.value.is_negative()),
        strictly_decreasing: rows.windows(2).all(|w| w[1].value < w[0].value),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffShape {
    StrictlyIncreasing,
    /// Strictly increasing from index 1 up to the second-to-last entry, then
    /// a drop to a still positive last entry.
    IncreasingThenFinalDrop,
    Other,
}

/// Shape of `D(n, ·)` on `[0, ⌊(n−1)/2⌋]` for one `n`.
#[derive(Debug, Clone, Serialize)]
pub struct DiffPatternRow {
    pub n: i64,
    #[serde(serialize_with = "crate::serde_big::ints")]
    pub diffs: Vec<BigInt>,
    pub shape: DiffShape,
    pub expected: DiffShape,
    pub conforms: bool,
}

pub fn classify_diffs(v: &[BigInt]) -> DiffShape {
    let increasing = |s: &[BigInt]| s.windows(2).all(|w| w[0] < w[1]);
    if increasing(v) {
        return DiffShape::StrictlyIncreasing;
    }
    let len = v.len();
    if len >= 3 {
        let last = &v[len - 1];
        let prev = &v[len - 2];
        if increasing(&v[1..len - 1]) && prev > last && last.is_positive() {
            return DiffShape::IncreasingThenFinalDrop;
        }
    }
    DiffShape::Other
}

/// The pattern conjectured for `D(n, ·)`: strictly increasing for even `n` and
/// for `n ∈ {3, 5, 7}`, a final drop for odd `n ≥ 9`.
pub fn expected_diff_shape(n: i64) -> DiffShape {
    if n % 2 == 0 || n <= 7 {
        DiffShape::StrictlyIncreasing
    } else {
        DiffShape::IncreasingThenFinalDrop
    }
}

pub fn scan_conjecture_71(n_max: i64) -> Result<Vec<DiffPatternRow>> {
    if n_max < 3 {
        return Err(Error::pre("scan_conjecture_71", format!("n_max = {n_max} < 3")));
    }
    (3..=n_max)
        .map(|n| {
            let top = (n - 1) / 2;
            let diffs = (0..=top).map(|k| eulerian_diff(n, k)).collect::<Result<Vec<_>>>()?;
            let shape = classify_diffs(&diffs);
            let expected = expected_diff_shape(n);
            Ok(DiffPatternRow { n, conforms: shape == expected, diffs, shape, expected })
        })
        .collect()
}

/// Immutable table of Eulerian rows `1..=max_i`.
#[derive(Debug, Clone)]
pub struct EulerianTable {
    rows: Vec<Arc<Vec<BigInt>>>,
}

impl EulerianTable {
    pub fn new(max_i: u32) -> Result<Self> {
        let rows = (1..=max_i).map(eulerian_row).collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    pub fn max_i(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn row(&self, i: u32) -> Option<&[BigInt]> {
        i.checked_sub(1).and_then(|k| self.rows.get(k as usize)).map(|r| r.as_slice())
    }

    /// `A(i, j)` with zero outside `0 ≤ j < i`; `None` if row `i` is not stored.
    pub fn get(&self, i: u32, j: i64) -> Option<BigInt> {
        let row = self.row(i)?;
        if j < 0 || j as usize >= row.len() {
            return Some(BigInt::zero());
        }
        Some(row[j as usize].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(5, 2), big(10));
        assert_eq!(binom(3, 5), big(0));
        assert_eq!(binom(7, 0), big(1));
        assert_eq!(binom(-3, 2), big(0));
        assert_eq!(binom(4, -1), big(0));
        assert_eq!(binom(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
        assert_eq!(binom_u128(60, 30), 118264581564861424);
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian(3, 1).unwrap(), big(4));
        assert_eq!(eulerian(5, 2).unwrap(), big(66));
        assert_eq!(eulerian(4, 4).unwrap(), big(0));
        assert_eq!(eulerian(4, -1).unwrap(), big(0));
        assert!(eulerian(0, 0).is_err());
    }

    #[test]
    fn brute_examples() {
        assert_eq!(eulerian_brute(3, 1).unwrap(), big(4));
        assert_eq!(eulerian_brute(2, 0).unwrap(), big(1));
        assert_eq!(eulerian_brute(4, 1).unwrap(), big(11));
        assert_eq!(eulerian_brute(1, 0).unwrap(), big(1));
        assert!(matches!(eulerian_brute(13, 2), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn formula_matches_enumeration() {
        for i in 1..=9 {
            for j in 0..i {
                assert_eq!(eulerian(i, j).unwrap(), eulerian_brute(i, j).unwrap(), "A({i},{j})");
            }
        }
    }

    #[test]
    fn rows_symmetric_and_sum_to_factorial() {
        for i in 1..=30u32 {
            let row = eulerian_row(i).unwrap();
            assert_eq!(row.len(), i as usize);
            assert!(row.iter().all(|v| v.is_positive()));
            for k in 0..row.len() {
                assert_eq!(row[k], row[row.len() - 1 - k]);
            }
            let sum: BigInt = row.iter().sum();
            assert_eq!(sum, factorial(i as u64));
        }
    }

    #[test]
    fn differences() {
        assert_eq!(eulerian_diff(4, 1).unwrap(), big(10));
        assert_eq!(eulerian_diff(3, 2).unwrap(), big(-3));
        assert_eq!(eulerian_diff(5, 0).unwrap(), big(1));
    }

    #[test]
    fn difference_positive_exactly_on_lower_half() {
        for n in 1..=30i64 {
            for k in -2..n + 2 {
                let positive = eulerian_diff(n, k).unwrap().is_positive();
                assert_eq!(positive, (0..=(n - 1) / 2).contains(&k), "D({n},{k})");
            }
        }
    }

    #[test]
    fn peak_second_difference_values() {
        assert_eq!(peak_second_difference(3).unwrap(), big(15));
        assert_eq!(peak_second_difference(4).unwrap(), big(154));
        assert_eq!(peak_second_difference(5).unwrap(), big(-5670));
        assert!(peak_second_difference(1).is_err());
        for m in 2..=40 {
            let n = 2 * m - 1;
            let via_diffs = eulerian_diff(n, m - 1).unwrap() - eulerian_diff(n, m - 2).unwrap();
            assert_eq!(peak_second_difference(m).unwrap(), via_diffs);
        }
    }

    #[test]
    fn leading_coeff_m2_and_reverse_sum() {
        assert_eq!(leading_coeff_sum(2).unwrap(), big(-210));
        for m in 2..=25i64 {
            let mut rev = BigInt::zero();
            for k in (0..=m).rev() {
                let t = binom(2 * m + 2, k) * BigInt::from(2 * m * (m + 1) - k * (2 * m + 1)).pow((2 * m - 1) as u32);
                rev += if k % 2 == 0 { t } else { -t };
            }
            assert_eq!(leading_coeff_sum(m).unwrap(), rev);
        }
    }

    #[test]
    fn conjecture_scan_small_cases() {
        let rows = scan_conjecture_71(9).unwrap();
        let n4 = rows.iter().find(|r| r.n == 4).unwrap();
        assert_eq!(n4.diffs, vec![big(1), big(10)]);
        assert_eq!(n4.shape, DiffShape::StrictlyIncreasing);
        let n3 = rows.iter().find(|r| r.n == 3).unwrap();
        assert_eq!(n3.shape, DiffShape::StrictlyIncreasing);
        let n9 = rows.iter().find(|r| r.n == 9).unwrap();
        assert!(n9.diffs[3] > n9.diffs[4] && n9.diffs[4].is_positive());
        assert_eq!(n9.shape, DiffShape::IncreasingThenFinalDrop);
        assert!(rows.iter().all(|r| r.conforms));
        assert!(scan_conjecture_71(2).is_err());
    }

    #[test]
    fn table_lookup() {
        let t = EulerianTable::new(6).unwrap();
        assert_eq!(t.get(5, 2), Some(big(66)));
        assert_eq!(t.get(5, 7), Some(big(0)));
        assert_eq!(t.get(7, 0), None);
        assert_eq!(t.row(3).unwrap(), &[big(1), big(4), big(1)]);
    }
}
