//! Hilbert functions of monomial complete intersections
//! `K[y_1..y_v]/(y_1^{a_1}, …, y_s^{a_s})`, finite differences and shape checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::combinatorics::binom;
use crate::error::{Error, Result};

/// Exact values of a Hilbert function (or of one of its finite differences)
/// on the window `[0, values.len() − 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    #[serde(serialize_with = "crate::serde_big::ints")]
    pub values: Vec<BigInt>,
    pub num_vars: usize,
    pub exponents: Vec<u64>,
    /// Number of times the difference operator has been applied.
    pub diff_order: u32,
}

/// A read from a [`HilbertTable`]; reads outside the window give zero with
/// `inside == false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowRead {
    pub value: BigInt,
    pub inside: bool,
}

impl HilbertTable {
    pub fn read(&self, j: i64) -> WindowRead {
        if j < 0 || j as usize >= self.values.len() {
            WindowRead { value: BigInt::zero(), inside: false }
        } else {
            WindowRead { value: self.values[j as usize].clone(), inside: true }
        }
    }

    /// Value at `j`, zero outside the window.
    pub fn at(&self, j: i64) -> BigInt {
        self.read(j).value
    }

    pub fn j_max(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    fn uniform_exponent(&self) -> Option<u64> {
        let first = *self.exponents.first()?;
        self.exponents.iter().all(|&a| a == first).then_some(first)
    }
}

fn validate(op: &'static str, num_vars: usize, exponents: &[u64]) -> Result<()> {
    if num_vars < 1 {
        return Err(Error::pre(op, "need at least one variable"));
    }
    if exponents.len() > num_vars {
        return Err(Error::pre(
            op,
            format!("{} exponents exceed {num_vars} variables (not a complete intersection)", exponents.len()),
        ));
    }
    if exponents.iter().any(|&a| a < 1) {
        return Err(Error::pre(op, "exponents must be positive"));
    }
    if exponents.len() > 24 {
        return Err(Error::ResourceLimit { op, msg: "more than 24 generators".into() });
    }
    Ok(())
}

/// `Σ (a_i − 1)`: the top nonzero degree when `s = v`.
pub fn ci_regularity(num_vars: usize, exponents: &[u64]) -> Result<i64> {
    validate("ci_regularity", num_vars, exponents)?;
    Ok(exponents.iter().map(|&a| a as i64 - 1).sum())
}

/// Hilbert function on `[0, reg + 1]`, so the window always ends in a zero
/// when `s = v`. For `s < v` the function never vanishes and the same window
/// is a truncation.
pub fn ci_hilbert(num_vars: usize, exponents: &[u64]) -> Result<HilbertTable> {
    let reg = ci_regularity(num_vars, exponents)?;
    ci_hilbert_window(num_vars, exponents, reg + 1)
}

/// Hilbert function on `[0, j_max]`, by Koszul inclusion–exclusion.
pub fn ci_hilbert_window(num_vars: usize, exponents: &[u64], j_max: i64) -> Result<HilbertTable> {
    validate("ci_hilbert", num_vars, exponents)?;
    let v = num_vars as i64;
    let s = exponents.len();
    // (total degree shift, signed multiplicity) of each Koszul term.
    let shifts: Vec<(i64, BigInt)> = match exponents.first() {
        // Uniform exponents: the subset sum only depends on |T|.
        Some(&d) if exponents.iter().all(|&a| a == d) => (0..=s as i64)
            .map(|k| {
                let b = binom(s as i64, k);
                (k * d as i64, if k % 2 == 0 { b } else { -b })
            })
            .collect(),
        _ => {
            let mut by_shift = std::collections::BTreeMap::<i64, i64>::new();
            for mask in 0u32..1 << s {
                let sum: i64 = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| exponents[i] as i64).sum();
                *by_shift.entry(sum).or_default() += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            }
            by_shift.into_iter().map(|(k, c)| (k, BigInt::from(c))).collect()
        }
    };
    let values = (0..=j_max.max(-1))
        .map(|j| {
            shifts
                .iter()
                .filter(|(shift, c)| !c.is_zero() && j - shift >= 0)
                .map(|(shift, c)| c * binom(v - 1 + j - shift, v - 1))
                .sum()
        })
        .collect();
    Ok(HilbertTable { values, num_vars, exponents: exponents.to_vec(), diff_order: 0 })
}

/// `Δ^k` with `Δh(j) = h(j) − h(j−1)` and zero to the left of the window.
/// The window grows by `k` on the right so that the tail is captured.
pub fn diff(table: &HilbertTable, order: u32) -> Result<HilbertTable> {
    if order == 0 {
        return Err(Error::pre("diff", "order must be at least 1"));
    }
    let mut values = table.values.clone();
    for _ in 0..order {
        values.push(BigInt::zero());
        for j in (1..values.len()).rev() {
            let prev = values[j - 1].clone();
            values[j] -= prev;
        }
    }
    Ok(HilbertTable {
        values,
        num_vars: table.num_vars,
        exponents: table.exponents.clone(),
        diff_order: table.diff_order + order,
    })
}

/// Result of [`check_shape`].
#[derive(Debug, Clone, Serialize)]
pub struct ShapeReport {
    pub regularity: i64,
    pub symmetric: bool,
    /// Only meaningful for uniform exponents `d ≥ 2`; `None` otherwise.
    pub strictly_increasing_to_middle: Option<bool>,
    pub peaks: Vec<i64>,
    pub expected_peaks: Option<Vec<i64>>,
    pub violations: Vec<String>,
}

impl ShapeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Symmetry about `reg/2`, strict increase on `[0, ⌊reg/2⌋]` and the peak
/// location for a complete intersection with uniform exponent `d ≥ 2` in at
/// least two variables (one variable gives a flat table).
pub fn check_shape(table: &HilbertTable) -> Result<ShapeReport> {
    let reg = ci_regularity(table.num_vars, &table.exponents)?;
    let mut violations = Vec::new();
    if table.diff_order != 0 {
        violations.push("table is a difference table, not a Hilbert function".into());
    }
    if table.exponents.len() != table.num_vars {
        violations.push("quotient is not Artinian (fewer generators than variables)".into());
    }
    if table.j_max() < reg {
        violations.push(format!("window ends at {} before regularity {reg}", table.j_max()));
    }
    let symmetric = (0..=reg).all(|j| table.at(j) == table.at(reg - j));
    if !symmetric {
        violations.push(format!("not symmetric about {reg}/2"));
    }
    if table.at(reg).is_zero() || !table.at(reg + 1).is_zero() {
        violations.push(format!("last nonzero degree is not {reg}"));
    }
    let max = (0..=reg).map(|j| table.at(j)).max().unwrap_or_default();
    let peaks: Vec<i64> = (0..=reg).filter(|&j| table.at(j) == max).collect();

    let (strict, expected_peaks) = match table.uniform_exponent() {
        Some(d) if d >= 2 && table.num_vars >= 2 => {
            let half = reg / 2;
            let strict = (1..=half).all(|j| table.at(j - 1) < table.at(j));
            if !strict {
                violations.push(format!("not strictly increasing on [0, {half}]"));
            }
            let expected = if reg % 2 == 0 { vec![half] } else { vec![half, half + 1] };
            if peaks != expected {
                violations.push(format!("peaks at {peaks:?}, expected {expected:?}"));
            }
            (Some(strict), Some(expected))
        }
        _ => (None, None),
    };
    Ok(ShapeReport {
        regularity: reg,
        symmetric,
        strictly_increasing_to_middle: strict,
        peaks,
        expected_peaks,
        violations,
    })
}

/// Result of [`koszul_top_difference_check`].
#[derive(Debug, Clone, Serialize)]
pub struct KoszulReport {
    pub m: u64,
    pub d: u64,
    /// `(j, Δ^{2m+2} h_B(j))` for every nonzero entry.
    #[serde(serialize_with = "crate::serde_big::indexed")]
    pub nonzeros: Vec<(i64, BigInt)>,
    pub matches_expected: bool,
    pub sign_alternations: usize,
}

/// For `B = K[y_0..y_{2m+1}]/(y_i^d)`, `Δ^{2m+2} h_B` is the coefficient list
/// of `(1 − z^d)^{2m+2}`: `(−1)^i binom(2m+2, i)` at `j = d·i`, zero elsewhere.
pub fn koszul_top_difference_check(m: u64, d: u64) -> Result<KoszulReport> {
    if m < 1 || d < 1 {
        return Err(Error::pre("koszul_top_difference_check", "need m ≥ 1 and d ≥ 1"));
    }
    let vars = (2 * m + 2) as usize;
    let h = ci_hilbert(vars, &vec![d; vars])?;
    let top = diff(&h, vars as u32)?;
    let nonzeros: Vec<(i64, BigInt)> = top
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j as i64, v.clone()))
        .collect();
    let expected: Vec<(i64, BigInt)> = (0..=vars as i64)
        .map(|i| {
            let b = binom(vars as i64, i);
            (i * d as i64, if i % 2 == 0 { b } else { -b })
        })
        .collect();
    // The window must reach j = (2m+2)d for the comparison to be complete.
    let covered = top.j_max() >= (vars as i64) * d as i64;
    let sign_alternations = nonzeros.windows(2).filter(|w| w[0].1.is_positive() != w[1].1.is_positive()).count();
    Ok(KoszulReport { m, d, matches_expected: covered && nonzeros == expected, nonzeros, sign_alternations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Coefficients of Π(1 − z^{a_i}) / (1 − z)^v up to degree j_max, by
    /// plain polynomial multiplication.
    fn series_oracle(v: usize, exps: &[u64], j_max: usize) -> Vec<BigInt> {
        let mut num = vec![BigInt::from(1)];
        for &a in exps {
            let mut next = vec![BigInt::zero(); num.len() + a as usize];
            for (i, c) in num.iter().enumerate() {
                next[i] += c;
                next[i + a as usize] -= c;
            }
            num = next;
        }
        num.resize(j_max + 1, BigInt::zero());
        num.truncate(j_max + 1);
        // Divide by (1 − z) v times: running prefix sums.
        for _ in 0..v {
            for j in 1..num.len() {
                let prev = num[j - 1].clone();
                num[j] += prev;
            }
        }
        num
    }

    #[test]
    fn examples() {
        let t = ci_hilbert(4, &[2, 2, 2, 2]).unwrap();
        assert_eq!(t.values, ints(&[1, 4, 6, 4, 1, 0]));
        let t = ci_hilbert(1, &[5]).unwrap();
        assert_eq!(t.values, ints(&[1, 1, 1, 1, 1, 0]));
        let t = ci_hilbert(3, &[3, 3, 3]).unwrap();
        assert_eq!(t.at(6), BigInt::from(1));
        assert_eq!(t.at(7), BigInt::zero());
        assert!(ci_hilbert(2, &[2, 2, 2]).is_err());
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(ci_regularity(3, &[3, 3, 3]).unwrap(), 6);
        assert_eq!(ci_regularity(2, &[2, 5]).unwrap(), 5);
        assert_eq!(ci_regularity(4, &[1, 1, 1, 1]).unwrap(), 0);
        let t = ci_hilbert(2, &[2, 5]).unwrap();
        assert_eq!(t.values, ints(&[1, 2, 2, 2, 2, 1, 0]));
    }

    #[test]
    fn differences() {
        let t = ci_hilbert_window(4, &[2, 2, 2, 2], 4).unwrap();
        assert_eq!(diff(&t, 1).unwrap().values, ints(&[1, 3, 2, -2, -3, -1]));
        let six = ci_hilbert(6, &[2; 6]).unwrap();
        assert_eq!(diff(&six, 2).unwrap().at(2), BigInt::from(4));
        assert!(diff(&six, 0).is_err());
        let r = six.read(-1);
        assert!(!r.inside && r.value.is_zero());
    }

    #[test]
    fn matches_series_oracle() {
        for v in 1..=6usize {
            for s in 0..=v {
                // A handful of exponent patterns per (v, s).
                for seed in 0..4u64 {
                    let exps: Vec<u64> = (0..s as u64).map(|i| 1 + (i * 7 + seed * 3 + v as u64) % 6).collect();
                    let t = ci_hilbert_window(v, &exps, 20).unwrap();
                    assert_eq!(t.values, series_oracle(v, &exps, 20), "v={v} exps={exps:?}");
                }
            }
        }
    }

    #[test]
    fn total_dimension_is_product() {
        for exps in [vec![2u64, 3, 4], vec![5, 5], vec![1, 6, 2, 3], vec![3; 5]] {
            let t = ci_hilbert(exps.len(), &exps).unwrap();
            let total: BigInt = t.values.iter().sum();
            assert_eq!(total, BigInt::from(exps.iter().product::<u64>()));
        }
    }

    #[test]
    fn repeated_difference_composes() {
        let t = ci_hilbert(5, &[3, 2, 4, 2, 3]).unwrap();
        let once_twice = diff(&diff(&t, 1).unwrap(), 1).unwrap();
        assert_eq!(once_twice.values, diff(&t, 2).unwrap().values);
    }

    #[test]
    fn shape_reports() {
        let r = check_shape(&ci_hilbert(4, &[2; 4]).unwrap()).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert_eq!(r.peaks, vec![2]);
        let r = check_shape(&ci_hilbert(3, &[2; 3]).unwrap()).unwrap();
        assert_eq!(r.peaks, vec![1, 2]);
        assert!(r.ok());
        let t = ci_hilbert(2, &[5, 5]).unwrap();
        assert_eq!(t.values, ints(&[1, 2, 3, 4, 5, 4, 3, 2, 1, 0]));
        let r = check_shape(&t).unwrap();
        assert!(r.ok() && r.peaks == vec![4]);
        for v in 1..=6 {
            for d in 2..=6 {
                let r = check_shape(&ci_hilbert(v, &vec![d; v]).unwrap()).unwrap();
                assert!(r.ok(), "v={v} d={d}: {:?}", r.violations);
            }
        }
    }

    #[test]
    fn koszul_checks() {
        let r = koszul_top_difference_check(1, 2).unwrap();
        assert!(r.matches_expected);
        assert_eq!(
            r.nonzeros,
            vec![(0, 1.into()), (2, (-4).into()), (4, 6.into()), (6, (-4).into()), (8, 1.into())]
        );
        let r = koszul_top_difference_check(2, 1).unwrap();
        assert!(r.matches_expected);
        assert_eq!(r.nonzeros.iter().map(|(j, _)| *j).collect::<Vec<_>>(), (0..=6).collect::<Vec<_>>());
        let r = koszul_top_difference_check(2, 3).unwrap();
        assert!(r.matches_expected);
        assert_eq!(r.nonzeros.len(), 7);
        assert_eq!(r.sign_alternations, 6);
    }

    #[test]
    fn second_difference_symmetry() {
        for m in 1..=4u64 {
            for d in 1..=6u64 {
                let vars = (2 * m + 2) as usize;
                let d2 = diff(&ci_hilbert(vars, &vec![d; vars]).unwrap(), 2).unwrap();
                let span = 2 * (m + 1) as i64 * (d as i64 - 1) + 2;
                for j in 0..=span {
                    assert_eq!(d2.at(j), d2.at(span - j), "m={m} d={d} j={j}");
                }
            }
        }
    }
}
