//! Failure witnesses for the weak Lefschetz property of
//! `A = K[x_0..x_n]/(x_0^d, …, x_n^d, L^d)` with `n = 2m` even.
//!
//! Multiplication by a general linear form `[A]_{r−1} → [A]_r` must be
//! injective to have maximal rank at the degree `r` where `A/ℓA` still has
//! its last nonzero piece. So `Δh_A(r) ≤ 0` rules the property out whenever
//! that degree is known to be the top degree of `A/ℓA`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binom, factorial};
use crate::error::{Error, Result};
use crate::hilbert::{ci_hilbert_window, diff};

fn check_mqt(op: &'static str, m: i64, q: i64, t: i64) -> Result<()> {
    if m < 2 {
        return Err(Error::domain(op, format!("m = {m} < 2")));
    }
    if !(0..=2 * m).contains(&q) {
        return Err(Error::domain(op, format!("q = {q} outside [0, {}]", 2 * m)));
    }
    if t < 0 {
        return Err(Error::domain(op, format!("t = {t} < 0")));
    }
    Ok(())
}

/// `P_{m,q}(t) = Σ_{k=0}^m (−1)^k C(2m+2,k) C(m−1+⌊mq/(2m+1)⌋+(q+1)(m−k)+t[2m(m+1)−k(2m+1)], 2m−1)`.
pub fn p_poly(m: i64, q: i64, t: i64) -> Result<BigInt> {
    check_mqt("p_poly", m, q, t)?;
    let base = m - 1 + m * q / (2 * m + 1);
    Ok((0..=m)
        .map(|k| {
            let top = base + (q + 1) * (m - k) + t * (2 * m * (m + 1) - k * (2 * m + 1));
            let term = binom(2 * m + 2, k) * binom(top, 2 * m - 1);
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum())
}

/// `r = 2m(m+1)t + mq + ⌊mq/(2m+1)⌋`, the degree examined for `d − 1 = t(2m+1) + q`.
pub fn r_from_decomposition(m: i64, q: i64, t: i64) -> i64 {
    2 * m * (m + 1) * t + m * q + m * q / (2 * m + 1)
}

/// The same number as [`p_poly`] reached through the Hilbert function of
/// `B = K[y_0..y_{2m+1}]/(y_i^d)`: `Δ²h_B(r)`.
pub fn p_poly_via_hilbert(m: i64, q: i64, t: i64) -> Result<BigInt> {
    check_mqt("p_poly_via_hilbert", m, q, t)?;
    let d = t * (2 * m + 1) + q + 1;
    let r = r_from_decomposition(m, q, t);
    let vars = (2 * m + 2) as usize;
    let table = ci_hilbert_window(vars, &vec![d as u64; vars], r)?;
    Ok(diff(&table, 2)?.at(r))
}

/// `⌊(n+1)(n+3)(d−1) / (2(n+2))⌋`, the top degree of `n + 3` general
/// `d`-th powers in `n + 1` variables when the formula is exact.
pub fn r_degree(n: i64, d: i64) -> Result<i64> {
    if n < 2 || d < 1 {
        return Err(Error::domain("r_degree", format!("need n ≥ 2 and d ≥ 1, got n = {n}, d = {d}")));
    }
    Ok(((n + 1) * (n + 3) * (d - 1)).div_euclid(2 * (n + 2)))
}

/// Degree used for the witness at `n = 2m`: `A/ℓA` has `n` variables and
/// `n + 2` forms, so its top degree is [`r_degree`] at `n − 1`,
/// i.e. `⌊2m(m+1)(d−1)/(2m+1)⌋`.
pub fn witness_degree(n: i64, d: i64) -> Result<i64> {
    if n % 2 != 0 || n < 4 {
        return Err(Error::domain("witness_degree", format!("n = {n} must be even and ≥ 4")));
    }
    r_degree(n - 1, d)
}

/// Result of comparing the degree formulas over a range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeIdentityReport {
    pub cases: usize,
    /// `(n, d)` where the decomposition disagrees with [`witness_degree`]; should be empty.
    pub decomposition_mismatches: Vec<(i64, i64)>,
    /// `(n, d, literal, used)` where the floor formula read at `n` itself
    /// disagrees with the degree the argument needs.
    pub literal_mismatches: Vec<(i64, i64, i64, i64)>,
}

pub fn degree_identity_scan(n_max: i64, d_max: i64) -> Result<DegreeIdentityReport> {
    let mut report = DegreeIdentityReport { cases: 0, decomposition_mismatches: Vec::new(), literal_mismatches: Vec::new() };
    for n in (4..=n_max).step_by(2) {
        let m = n / 2;
        for d in 1..=d_max {
            report.cases += 1;
            let used = witness_degree(n, d)?;
            let (t, q) = ((d - 1).div_euclid(2 * m + 1), (d - 1).rem_euclid(2 * m + 1));
            if r_from_decomposition(m, q, t) != used {
                report.decomposition_mismatches.push((n, d));
            }
            let literal = r_degree(n, d)?;
            if literal != used {
                report.literal_mismatches.push((n, d, literal, used));
            }
        }
    }
    Ok(report)
}

/// Closed form `(2m+2)!/(m!(m+4)!)·(12−2m)` and the direct second difference
/// `C(2m+2,m) − 2C(2m+2,m−1) + C(2m+2,m−2)` for `q = 1, t = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem63Value {
    pub m: i64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub closed_form: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub direct: BigInt,
    pub agree: bool,
}

pub fn theorem63_value(m: i64) -> Result<Theorem63Value> {
    if m < 2 {
        return Err(Error::domain("theorem63_value", format!("m = {m} < 2")));
    }
    let mu = m as u64;
    let ratio = BigRational::new(factorial(2 * mu + 2), factorial(mu) * factorial(mu + 4));
    let closed = ratio * BigRational::from_integer(BigInt::from(12 - 2 * m));
    if !closed.is_integer() {
        return Err(Error::Invariant(format!("closed form {closed} is not an integer at m = {m}")));
    }
    let closed_form = closed.to_integer();
    let direct = binom(2 * m + 2, m) - 2 * binom(2 * m + 2, m - 1) + binom(2 * m + 2, m - 2);
    Ok(Theorem63Value { m, agree: closed_form == direct, closed_form, direct })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Fails,
    Unknown,
}

/// Which part of the argument a failure rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `(n+1) | d−1` (so `q = 0`).
    Divisible,
    /// `d − 2` divisible by `n + 1` and `d ≥ n² − n + 2` (`q = 1`).
    ShiftedDivisibleLargeD,
    /// `d ≥ n² − n + 2` with any other `q`.
    LargeD,
    /// Neither condition holds, so `[A/ℓA]_r` may vanish.
    NotApplicable,
    /// Applicable but the witness is positive.
    PositiveWitness,
}

impl Clause {
    pub fn as_str(&self) -> &'static str {
        match self {
            Clause::Divisible => "divisible",
            Clause::ShiftedDivisibleLargeD => "shifted-divisible-large-d",
            Clause::LargeD => "large-d",
            Clause::NotApplicable => "not-applicable",
            Clause::PositiveWitness => "positive-witness",
        }
    }
}

/// One `(n, d)` cell of a failure scan; also the CSV row schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WlpVerdict {
    pub n: i64,
    pub d: i64,
    pub m: i64,
    pub q: i64,
    pub t: i64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub witness: BigInt,
    pub applicable: bool,
    pub verdict: Verdict,
    pub clause: Clause,
}

/// `(n+1) | d−1` or `d ≥ n² − n + 2`: then `[A/ℓA]_r ≠ 0`.
pub fn applicable(n: i64, d: i64) -> bool {
    (d - 1) % (n + 1) == 0 || d >= n * n - n + 2
}

/// Witness `Δh_A(r) = P_{m,q}(t)` and the one-sided verdict, for even `n ≥ 4`.
/// Small `n` is allowed here for cross-checks; [`wlp_failure_witness`]
/// enforces the range the question is open for.
pub fn witness_cell(n: i64, d: i64) -> Result<WlpVerdict> {
    if n % 2 != 0 || n < 4 {
        return Err(Error::domain("wlp", format!("n = {n} must be even and ≥ 4")));
    }
    if d < 1 {
        return Err(Error::domain("wlp", format!("d = {d} < 1")));
    }
    let m = n / 2;
    let (t, q) = ((d - 1).div_euclid(2 * m + 1), (d - 1).rem_euclid(2 * m + 1));
    let witness = p_poly(m, q, t)?;
    let applicable = applicable(n, d);
    let (verdict, clause) = if !applicable {
        (Verdict::Unknown, Clause::NotApplicable)
    } else if witness.is_positive() {
        (Verdict::Unknown, Clause::PositiveWitness)
    } else if q == 0 {
        (Verdict::Fails, Clause::Divisible)
    } else if q == 1 {
        (Verdict::Fails, Clause::ShiftedDivisibleLargeD)
    } else {
        (Verdict::Fails, Clause::LargeD)
    };
    Ok(WlpVerdict { n, d, m, q, t, witness, applicable, verdict, clause })
}

/// Verdict for even `n ≥ 8`, `d ≥ 2`. Never claims the property holds.
pub fn wlp_failure_witness(n: i64, d: i64) -> Result<WlpVerdict> {
    if n % 2 != 0 {
        return Err(Error::domain("wlp_failure_witness", format!("n = {n} is odd; see literature_verdict")));
    }
    if n < 8 {
        return Err(Error::domain("wlp_failure_witness", format!("n = {n} < 8; see literature_verdict")));
    }
    if d < 2 {
        return Err(Error::domain("wlp_failure_witness", format!("d = {d} < 2")));
    }
    witness_cell(n, d)
}

/// Published answers for the cases outside the computed range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteratureVerdict {
    pub n: i64,
    pub d: i64,
    /// `None` when the case is open.
    pub has_wlp: Option<bool>,
    pub note: &'static str,
}

pub fn literature_verdict(n: i64, d: i64) -> Result<LiteratureVerdict> {
    if n < 1 || d < 1 {
        return Err(Error::domain("literature_verdict", "need n ≥ 1 and d ≥ 1"));
    }
    let (has_wlp, note) = match n {
        1 | 2 => (Some(true), "literature: WLP for every d when n ≤ 2"),
        3 => (Some(d <= 2), "literature: n = 3 has WLP iff d ≤ 2"),
        4 => (Some(d <= 3), "literature: n = 4 has WLP iff d ≤ 3"),
        6 => (Some(d <= 2), "literature: n = 6 has WLP iff d ≤ 2"),
        _ if n % 2 == 1 => (Some(d == 1), "literature: odd n ≥ 5 has WLP iff d = 1"),
        _ if d == 1 => (Some(true), "d = 1: the quotient is the base field"),
        _ if d == 2 => (Some(false), "literature: fails for d = 2"),
        _ => (None, "open: conjectured to fail for every d ≥ 2"),
    };
    Ok(LiteratureVerdict { n, d, has_wlp, note })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub n: i64,
    pub d_max: i64,
    /// Least applicable `d₀` with every applicable `d ∈ [d₀, d_max]` failing.
    pub d0: Option<i64>,
    pub applicable_cells: usize,
    pub failing_cells: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<WlpVerdict>,
    pub thresholds: Vec<Threshold>,
}

/// Scans every even `n` in `n_range` against `d_range`, in parallel.
pub fn scan_failure(n_range: std::ops::RangeInclusive<i64>, d_range: std::ops::RangeInclusive<i64>) -> Result<ScanReport> {
    let ns: Vec<i64> = n_range.filter(|n| n % 2 == 0).collect();
    if ns.is_empty() {
        return Err(Error::domain("scan_failure", "no even n in range"));
    }
    let cells: Vec<(i64, i64)> = ns.iter().flat_map(|&n| d_range.clone().map(move |d| (n, d))).collect();
    let rows = cells.par_iter().map(|&(n, d)| witness_cell(n, d)).collect::<Result<Vec<_>>>()?;
    let d_max = *d_range.end();
    let thresholds = ns
        .iter()
        .map(|&n| {
            let app: Vec<&WlpVerdict> = rows.iter().filter(|r| r.n == n && r.applicable).collect();
            let mut d0 = None;
            for r in app.iter().rev() {
                if r.verdict != Verdict::Fails {
                    break;
                }
                d0 = Some(r.d);
            }
            Threshold {
                n,
                d_max,
                d0,
                applicable_cells: app.len(),
                failing_cells: app.iter().filter(|r| r.verdict == Verdict::Fails).count(),
            }
        })
        .collect();
    Ok(ScanReport { rows, thresholds })
}

/// Checks that `Δ²h_B` for `B = K[y_0..y_{2m+1}]/(y_i^d)` first weakly
/// increases, then weakly decreases down to a local minimum at
/// `c = (m+1)(d−1) + 1`.
pub fn second_diff_shape(m: i64, d: i64) -> Result<bool> {
    if m < 1 || d < 1 {
        return Err(Error::domain("second_diff_shape", "need m ≥ 1 and d ≥ 1"));
    }
    let vars = (2 * m + 2) as usize;
    let c = (m + 1) * (d - 1) + 1;
    let t = diff(&ci_hilbert_window(vars, &vec![d as u64; vars], c + 1)?, 2)?;
    let vals: Vec<BigInt> = (0..=c + 1).map(|j| t.at(j)).collect();
    let c = c as usize;
    let mut i = 0;
    while i < c && vals[i] <= vals[i + 1] {
        i += 1;
    }
    while i < c && vals[i] >= vals[i + 1] {
        i += 1;
    }
    Ok(i == c && vals[c] <= vals[c + 1] && !vals.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn p_poly_examples() {
        assert_eq!(p_poly(2, 0, 0).unwrap(), big(1));
        assert_eq!(p_poly(2, 1, 0).unwrap(), big(4));
        assert_eq!(p_poly(7, 1, 0).unwrap(), big(-208));
        assert!(p_poly(2, 5, 0).is_err());
        assert!(p_poly(1, 0, 0).is_err());
    }

    #[test]
    fn hilbert_route_agrees() {
        assert_eq!(p_poly_via_hilbert(2, 1, 0).unwrap(), big(4));
        for (m, q, t) in [(2, 0, 1), (3, 2, 1), (4, 7, 2)] {
            assert_eq!(p_poly(m, q, t).unwrap(), p_poly_via_hilbert(m, q, t).unwrap(), "({m},{q},{t})");
        }
    }

    #[test]
    fn degree_formulas() {
        assert_eq!(r_degree(4, 3).unwrap(), 5);
        assert_eq!(r_degree(3, 6).unwrap(), 12);
        assert_eq!(r_degree(2, 1).unwrap(), 0);
        assert_eq!(witness_degree(4, 3).unwrap(), 4);
        let rep = degree_identity_scan(20, 60).unwrap();
        assert!(rep.decomposition_mismatches.is_empty());
        assert!(rep.literal_mismatches.contains(&(4, 3, 5, 4)));
    }

    #[test]
    fn theorem63_examples() {
        let v = theorem63_value(4).unwrap();
        assert_eq!((v.closed_form.clone(), v.agree), (big(15), true));
        assert_eq!(theorem63_value(6).unwrap().direct, big(0));
        assert_eq!(theorem63_value(7).unwrap().closed_form, big(-208));
    }

    #[test]
    fn verdict_examples() {
        let v = wlp_failure_witness(14, 2).unwrap();
        assert_eq!((v.witness.clone(), v.verdict, v.clause), (big(-208), Verdict::Unknown, Clause::NotApplicable));
        let v = wlp_failure_witness(8, 2).unwrap();
        assert_eq!((v.witness.clone(), v.verdict), (big(15), Verdict::Unknown));
        let v = wlp_failure_witness(12, 14).unwrap();
        assert_eq!((v.q, v.t, v.applicable), (0, 1, true));
        assert!(wlp_failure_witness(9, 3).is_err());
        assert!(wlp_failure_witness(6, 3).is_err());
        for s in 1..=10 {
            let v = wlp_failure_witness(14, 2 + 15 * s).unwrap();
            assert!(v.witness.is_negative(), "s={s}");
        }
    }

    #[test]
    fn literature_lookup() {
        assert_eq!(literature_verdict(4, 3).unwrap().has_wlp, Some(true));
        assert_eq!(literature_verdict(4, 4).unwrap().has_wlp, Some(false));
        assert_eq!(literature_verdict(7, 1).unwrap().has_wlp, Some(true));
        assert_eq!(literature_verdict(10, 5).unwrap().has_wlp, None);
    }

    #[test]
    fn shape_claim_holds_for_small_cases() {
        for m in 1..=6 {
            for d in 1..=8 {
                assert!(second_diff_shape(m, d).unwrap(), "m={m} d={d}");
            }
        }
    }

    #[test]
    fn scan_for_twelve() {
        let rep = scan_failure(12..=12, 2..=400).unwrap();
        for r in rep.rows.iter().filter(|r| (r.d - 1) % 13 == 0) {
            assert_eq!(r.verdict, Verdict::Fails, "d={}", r.d);
        }
    }
}
