//! Closed formulas for point sets of size at most `n + 3` spanning `P^n`:
//! initial degrees of symbolic powers, regularity of the dual power ideals,
//! Waldschmidt constants and the containment-type inequalities built on them.
//!
//! Every value comes back as a [`ClosedFormResult`] carrying whether it is
//! exact or only a bound, and which formula produced it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binom;
use crate::error::{Error, Result};

/// Position class of a spanning point configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum ConfigClass {
    /// Any points contained in a hyperplane.
    Hyperplane { n: u32 },
    /// `n + 1` points spanning `P^n`.
    SpanningN1 { n: u32 },
    /// `n + 2` points spanning `P^n`; `dep_t` is the least `u` such that some
    /// `u + 2` of them are linearly dependent.
    SpanningN2 { n: u32, dep_t: u32 },
    /// `n + 3` points in linearly general position.
    LgpN3 { n: u32 },
}

impl ConfigClass {
    pub fn n(&self) -> u32 {
        match *self {
            ConfigClass::Hyperplane { n }
            | ConfigClass::SpanningN1 { n }
            | ConfigClass::SpanningN2 { n, .. }
            | ConfigClass::LgpN3 { n } => n,
        }
    }

    /// Number of points the class fixes (`None` for hyperplane sets).
    pub fn num_points(&self) -> Option<usize> {
        let n = self.n() as usize;
        match self {
            ConfigClass::Hyperplane { .. } => None,
            ConfigClass::SpanningN1 { .. } => Some(n + 1),
            ConfigClass::SpanningN2 { .. } => Some(n + 2),
            ConfigClass::LgpN3 { .. } => Some(n + 3),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ConfigClass::Hyperplane { n } | ConfigClass::SpanningN1 { n } if n < 1 => {
                Err(Error::InvalidConfig(format!("{self}: need n ≥ 1")))
            }
            ConfigClass::SpanningN2 { n, dep_t } => {
                if n < 2 {
                    Err(Error::InvalidConfig(format!("{self}: need n ≥ 2")))
                } else if dep_t < 1 || dep_t > n {
                    Err(Error::InvalidConfig(format!("{self}: need 1 ≤ dep_t ≤ n")))
                } else {
                    Ok(())
                }
            }
            ConfigClass::LgpN3 { n } if n < 2 => Err(Error::InvalidConfig(format!("{self}: need n ≥ 2"))),
            _ => Ok(()),
        }
    }

    /// Parses the short class names used on the command line:
    /// `hyperplane`, `n1`, `n2` (needs `dep_t`), `n3`.
    pub fn from_parts(tag: &str, n: u32, dep_t: Option<u32>) -> Result<Self> {
        let class = match tag {
            "hyperplane" => ConfigClass::Hyperplane { n },
            "n1" => ConfigClass::SpanningN1 { n },
            "n2" => ConfigClass::SpanningN2 {
                n,
                dep_t: dep_t.ok_or_else(|| Error::InvalidConfig("class n2 needs --dept".into()))?,
            },
            "n3" => ConfigClass::LgpN3 { n },
            other => return Err(Error::InvalidConfig(format!("unknown class `{other}`"))),
        };
        class.validate()?;
        Ok(class)
    }
}

impl fmt::Display for ConfigClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigClass::Hyperplane { n } => write!(f, "hyperplane(n={n})"),
            ConfigClass::SpanningN1 { n } => write!(f, "n+1 spanning(n={n})"),
            ConfigClass::SpanningN2 { n, dep_t } => write!(f, "n+2 spanning(n={n}, dep_t={dep_t})"),
            ConfigClass::LgpN3 { n } => write!(f, "n+3 general(n={n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    UpperBound,
    LowerBound,
}

/// Which formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    HyperplaneSupport,
    CompleteIntersection,
    NPlusTwoPoints,
    NPlusThreeEven,
    NPlusThreeOdd,
    NPlusThreeOddBound,
    TopSocleEven,
    TopSocleOdd,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// A value together with its exactness and provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormResult {
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub value: BigRational,
    pub status: Status,
    pub source: Source,
}

impl ClosedFormResult {
    fn int(v: i128, status: Status, source: Source) -> Self {
        Self { value: BigRational::from_integer(BigInt::from(v)), status, source }
    }

    /// Integer value; panics on a non-integral rational.
    pub fn as_int(&self) -> i64 {
        assert!(self.value.is_integer(), "non-integral closed form {}", self.value);
        i64::try_from(self.value.to_integer()).expect("closed form fits i64")
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn require_positive(op: &'static str, name: &str, v: i64) -> Result<i128> {
    if v < 1 {
        return Err(Error::pre(op, format!("{name} = {v} must be ≥ 1")));
    }
    Ok(v as i128)
}

/// Threshold on `k` past which the odd `n + 3` initial-degree formula is
/// known to be exact: `k ≥ (n²+n+1)(n²+2n−1) / (2(n+2))`.
pub fn odd_alpha_threshold_reached(n: u32, k: i64) -> bool {
    let n = n as i128;
    2 * (n + 2) * k as i128 >= (n * n + n + 1) * (n * n + 2 * n - 1)
}

/// Initial degree `α(I_Z^(k))` of the `k`-th symbolic power.
pub fn alpha_symbolic(cfg: &ConfigClass, k: i64) -> Result<ClosedFormResult> {
    cfg.validate()?;
    let k = require_positive("alpha_symbolic", "k", k)?;
    let n = cfg.n() as i128;
    Ok(match *cfg {
        ConfigClass::Hyperplane { .. } => ClosedFormResult::int(k, Status::Exact, Source::HyperplaneSupport),
        ConfigClass::SpanningN1 { .. } => {
            ClosedFormResult::int(ceil_div((n + 1) * k, n), Status::Exact, Source::CompleteIntersection)
        }
        ConfigClass::SpanningN2 { dep_t, .. } => {
            let t = dep_t as i128;
            ClosedFormResult::int(ceil_div((2 * n + 2 - t) * k, 2 * n - t), Status::Exact, Source::NPlusTwoPoints)
        }
        ConfigClass::LgpN3 { .. } if n % 2 == 0 => {
            ClosedFormResult::int(ceil_div((n + 2) * k, n), Status::Exact, Source::NPlusThreeEven)
        }
        ConfigClass::LgpN3 { n: n32 } => {
            let den = n * n + 2 * n - 1;
            let value = ceil_div((n + 1) * (n + 3) * k, den);
            let exact = k % (den / 2) == 0 || odd_alpha_threshold_reached(n32, k as i64);
            if exact {
                ClosedFormResult::int(value, Status::Exact, Source::NPlusThreeOdd)
            } else {
                ClosedFormResult::int(value, Status::LowerBound, Source::NPlusThreeOddBound)
            }
        }
    })
}

/// `reg R/(ℓ_1^d, …, ℓ_s^d)` for the forms dual to a configuration of class `cfg`.
pub fn regularity_powers(cfg: &ConfigClass, d: i64) -> Result<ClosedFormResult> {
    cfg.validate()?;
    let d = require_positive("regularity_powers", "d", d)?;
    let n = cfg.n() as i128;
    Ok(match *cfg {
        ConfigClass::Hyperplane { .. } => {
            return Err(Error::InvalidConfig(
                "hyperplane configurations give a non-Artinian quotient; regularity is not a top degree".into(),
            ))
        }
        ConfigClass::SpanningN1 { .. } => {
            ClosedFormResult::int((n + 1) * (d - 1), Status::Exact, Source::CompleteIntersection)
        }
        ConfigClass::SpanningN2 { dep_t, .. } => {
            let t = dep_t as i128;
            ClosedFormResult::int(floor_div((2 * n + 2 - t) * (d - 1), 2), Status::Exact, Source::NPlusTwoPoints)
        }
        ConfigClass::LgpN3 { .. } if n % 2 == 0 => {
            ClosedFormResult::int((n + 2) * (d - 1) / 2, Status::Exact, Source::NPlusThreeEven)
        }
        ConfigClass::LgpN3 { .. } => {
            let value = floor_div((n + 1) * (n + 3) * (d - 1), 2 * (n + 2));
            if odd_regularity_exact(n, d) {
                ClosedFormResult::int(value, Status::Exact, Source::NPlusThreeOdd)
            } else {
                ClosedFormResult::int(value, Status::UpperBound, Source::NPlusThreeOddBound)
            }
        }
    })
}

fn odd_regularity_exact(n: i128, d: i128) -> bool {
    (d - 1) % (n + 2) == 0 || d >= n * n + n + 2
}

/// `(r, ρ)` with `r = ⌊(n+1)(n+3)(d−1) / (2(n+2))⌋` and
/// `ρ = (n+1)(n+3)(d−1)/2 − (n+2) r`, for odd `n ≥ 3`.
pub fn rho_param(n: u32, d: i64) -> Result<(i64, i64)> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::domain("rho_param", format!("n = {n} must be odd and ≥ 3")));
    }
    let d = require_positive("rho_param", "d", d)?;
    let n = n as i128;
    let r = floor_div((n + 1) * (n + 3) * (d - 1), 2 * (n + 2));
    let rho = (n + 1) * (n + 3) * (d - 1) / 2 - (n + 2) * r;
    if !(0..=n + 1).contains(&rho) {
        return Err(Error::Invariant(format!("rho = {rho} outside [0, {}]", n + 1)));
    }
    Ok((r as i64, rho as i64))
}

/// Dimension of `R/(ℓ_1^d, …, ℓ_{n+3}^d)` in its top degree `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopSocle {
    pub degree: i64,
    pub rho: Option<i64>,
    #[serde(flatten)]
    pub result: ClosedFormResult,
}

/// For even `n` the top piece is one-dimensional. For odd `n` it is
/// `binom(n+ρ, n)` when `(n+2) | d−1` or `d ≥ n²+n+2`; outside those cases
/// the same number is reported as an upper bound.
pub fn top_socle_dim(n: u32, d: i64) -> Result<TopSocle> {
    if n < 2 {
        return Err(Error::pre("top_socle_dim", format!("n = {n} < 2")));
    }
    let d128 = require_positive("top_socle_dim", "d", d)?;
    if n % 2 == 0 {
        let degree = (n as i64 + 2) * (d - 1) / 2;
        return Ok(TopSocle { degree, rho: None, result: ClosedFormResult::int(1, Status::Exact, Source::TopSocleEven) });
    }
    let (r, rho) = rho_param(n, d)?;
    let value = binom(n as i64 + rho, n as i64);
    let status = if odd_regularity_exact(n as i128, d128) { Status::Exact } else { Status::UpperBound };
    Ok(TopSocle {
        degree: r,
        rho: Some(rho),
        result: ClosedFormResult { value: BigRational::from_integer(value), status, source: Source::TopSocleOdd },
    })
}

fn ratio(a: i128, b: i128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Waldschmidt constant `lim α(I^(k))/k`, as an exact rational.
pub fn waldschmidt(cfg: &ConfigClass) -> Result<BigRational> {
    cfg.validate()?;
    let n = cfg.n() as i128;
    Ok(match *cfg {
        ConfigClass::Hyperplane { .. } => BigRational::one(),
        ConfigClass::SpanningN1 { .. } => ratio(n + 1, n),
        ConfigClass::SpanningN2 { dep_t, .. } => {
            let t = dep_t as i128;
            ratio(2 * n + 2 - t, 2 * n - t)
        }
        ConfigClass::LgpN3 { .. } if n % 2 == 0 => ratio(n + 2, n),
        ConfigClass::LgpN3 { .. } => ratio((n + 1) * (n + 3), n * n + 2 * n - 1),
    })
}

/// Three-valued outcome for checks that may rest on a one-sided bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Holds,
    Fails,
    Undecided,
}

/// `α̂(I_Z) ≥ (α(I_Z) + n − 1)/n`. For odd `n + 3` sets the `k = 1` value is
/// only a lower bound, but `α(I_Z) = 2` there anyway.
pub fn chudnovsky_check(cfg: &ConfigClass) -> Result<bool> {
    let n = cfg.n() as i64;
    let alpha = alpha_symbolic(cfg, 1)?.value;
    let rhs = (alpha + BigRational::from_integer((n - 1).into())) / BigRational::from_integer(n.into());
    Ok(waldschmidt(cfg)? >= rhs)
}

/// `α̂(I_Z) ≥ (α(I_Z^(k)) + n − 1)/(n + k − 1)`. A lower bound on `α` can only
/// refute the inequality, so when no exact value is available the outcome is
/// `Undecided` unless the bound already breaks it.
pub fn demailly_check(cfg: &ConfigClass, k: i64) -> Result<Decision> {
    let alpha = alpha_symbolic(cfg, k)?;
    let n = cfg.n() as i64;
    let rhs = (alpha.value.clone() + BigRational::from_integer((n - 1).into()))
        / BigRational::from_integer((n + k - 1).into());
    let holds = waldschmidt(cfg)? >= rhs;
    Ok(match (alpha.status, holds) {
        (Status::Exact, true) => Decision::Holds,
        (_, false) => Decision::Fails,
        _ => Decision::Undecided,
    })
}

/// Largest degree of a minimal generator of `I_Z`, as cited for the classes
/// where the containment inequality is used.
pub fn max_generator_degree(cfg: &ConfigClass) -> Result<i64> {
    cfg.validate()?;
    match *cfg {
        ConfigClass::SpanningN1 { .. } => Ok(2),
        ConfigClass::SpanningN2 { dep_t, .. } if dep_t >= 2 => Ok(2),
        ConfigClass::LgpN3 { n } => Ok(if n == 2 { 3 } else { 2 }),
        _ => Err(Error::InvalidConfig(format!(
            "{cfg}: generator degree only known for n+1 spanning, n+2 with no three collinear, n+3 general"
        ))),
    }
}

/// `α(I_Z^(nk)) ≥ k·e⁺(I_Z) + k(n − 1)`, which implies
/// `I_Z^(nk) ⊆ m^{(n−1)k} I_Z^k`. A lower bound on `α` is enough here.
pub fn containment_inequality_check(cfg: &ConfigClass, k: i64) -> Result<bool> {
    let e_plus = max_generator_degree(cfg)?;
    let k = require_positive("containment_inequality_check", "k", k)? as i64;
    let n = cfg.n() as i64;
    let alpha = alpha_symbolic(cfg, n * k)?;
    debug_assert!(alpha.status != Status::UpperBound);
    Ok(alpha.value >= BigRational::from_integer((k * e_plus + k * (n - 1)).into()))
}

/// Resurgence `ρ(I_Z) = ρ_a(I_Z) = 2/α̂(I_Z)`.
pub fn resurgence(cfg: &ConfigClass) -> Result<BigRational> {
    max_generator_degree(cfg)?;
    Ok(BigRational::from_integer(2.into()) / waldschmidt(cfg)?)
}

/// Outcome of the trigonometric sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerlindeValue {
    pub raw: f64,
    pub rounded: i64,
    /// `|raw − rounded| ≤ 1e−6`.
    pub near_integer: bool,
}

pub const VERLINDE_TOLERANCE: f64 = 1e-6;

/// `(1/(2j+1)) Σ_{k=0}^{2j} (−1)^{(n+1)k} sin((2k+1)π/(4j+2))^{−n−1}`, with
/// `j = two_j / 2`. Half-integral `j` is allowed only for odd `n`.
pub fn verlinde(n: u32, two_j: u32) -> Result<VerlindeValue> {
    if n % 2 == 0 && two_j % 2 == 1 {
        return Err(Error::domain("verlinde", format!("j = {two_j}/2 must be an integer for even n = {n}")));
    }
    let terms = two_j as f64 + 1.0;
    let sum: f64 = (0..=two_j)
        .map(|k| {
            let angle = (2 * k + 1) as f64 * std::f64::consts::PI / (2.0 * terms);
            let sign = if (n as u64 + 1) * k as u64 % 2 == 0 { 1.0 } else { -1.0 };
            sign * angle.sin().powi(-(n as i32) - 1)
        })
        .sum();
    let raw = sum / terms;
    if !raw.is_finite() || raw.abs() > 9.0e15 {
        return Err(Error::ResourceLimit { op: "verlinde", msg: format!("sum overflows double precision (n = {n})") });
    }
    let rounded = raw.round();
    Ok(VerlindeValue { raw, rounded: rounded as i64, near_integer: (raw - rounded).abs() <= VERLINDE_TOLERANCE })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2(n: u32, dep_t: u32) -> ConfigClass {
        ConfigClass::SpanningN2 { n, dep_t }
    }
    fn n3(n: u32) -> ConfigClass {
        ConfigClass::LgpN3 { n }
    }
    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn alpha_examples() {
        let r = alpha_symbolic(&n2(2, 2), 2).unwrap();
        assert_eq!((r.as_int(), r.status), (4, Status::Exact));
        let r = alpha_symbolic(&n2(3, 1), 5).unwrap();
        assert_eq!((r.as_int(), r.status), (7, Status::Exact));
        let r = alpha_symbolic(&n3(3), 7).unwrap();
        assert_eq!((r.as_int(), r.status), (12, Status::Exact));
        let r = alpha_symbolic(&n3(3), 2).unwrap();
        assert_eq!(r.status, Status::LowerBound);
        // Threshold for n = 3: 2·5·k ≥ 13·14 = 182, i.e. k ≥ 19.
        assert_eq!(alpha_symbolic(&n3(3), 18).unwrap().status, Status::LowerBound);
        assert_eq!(alpha_symbolic(&n3(3), 19).unwrap().status, Status::Exact);
        assert_eq!(alpha_symbolic(&ConfigClass::Hyperplane { n: 4 }, 9).unwrap().as_int(), 9);
        assert!(alpha_symbolic(&n2(3, 4), 1).is_err());
        assert!(alpha_symbolic(&n2(3, 1), 0).is_err());
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(regularity_powers(&n2(2, 2), 3).unwrap().as_int(), 4);
        let r = regularity_powers(&n3(2), 3).unwrap();
        assert_eq!((r.as_int(), r.status), (4, Status::Exact));
        let r = regularity_powers(&n3(3), 6).unwrap();
        assert_eq!((r.as_int(), r.status), (12, Status::Exact));
        assert_eq!(regularity_powers(&n3(3), 3).unwrap().status, Status::UpperBound);
        assert_eq!(regularity_powers(&n3(3), 14).unwrap().status, Status::Exact);
        assert_eq!(regularity_powers(&ConfigClass::SpanningN1 { n: 3 }, 2).unwrap().as_int(), 4);
        assert!(regularity_powers(&ConfigClass::Hyperplane { n: 3 }, 2).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_param(3, 6).unwrap(), (12, 0));
        assert_eq!(rho_param(3, 2).unwrap(), (2, 2));
        assert_eq!(rho_param(5, 1).unwrap(), (0, 0));
        assert!(rho_param(4, 2).is_err());
        for n in (3..=21).step_by(2) {
            for d in 1..=60 {
                let (_, rho) = rho_param(n, d).unwrap();
                assert!((0..=n as i64 + 1).contains(&rho));
            }
        }
    }

    #[test]
    fn top_socle_examples() {
        let t = top_socle_dim(2, 3).unwrap();
        assert_eq!((t.degree, t.result.as_int(), t.result.status), (4, 1, Status::Exact));
        let t = top_socle_dim(3, 6).unwrap();
        assert_eq!((t.degree, t.result.as_int(), t.result.status), (12, 1, Status::Exact));
        let t = top_socle_dim(2, 2).unwrap();
        assert_eq!((t.degree, t.result.as_int()), (2, 1));
        assert_eq!(top_socle_dim(3, 2).unwrap().result.status, Status::UpperBound);
    }

    #[test]
    fn waldschmidt_examples() {
        assert_eq!(waldschmidt(&n2(3, 3)).unwrap(), q(5, 3));
        assert_eq!(waldschmidt(&n3(3)).unwrap(), q(12, 7));
        assert_eq!(waldschmidt(&ConfigClass::Hyperplane { n: 5 }).unwrap(), q(1, 1));
        assert_eq!(waldschmidt(&n3(4)).unwrap(), q(3, 2));
    }

    #[test]
    fn chudnovsky_and_demailly() {
        assert!(chudnovsky_check(&n2(2, 2)).unwrap());
        assert!(chudnovsky_check(&n3(3)).unwrap());
        assert!(chudnovsky_check(&ConfigClass::SpanningN1 { n: 5 }).unwrap());
        assert_eq!(demailly_check(&n3(2), 2).unwrap(), Decision::Holds);
        assert_eq!(demailly_check(&n3(3), 7).unwrap(), Decision::Holds);
        assert_eq!(demailly_check(&n3(5), 2).unwrap(), Decision::Undecided);
    }

    #[test]
    fn containment_and_resurgence() {
        assert!(containment_inequality_check(&n2(2, 2), 1).unwrap());
        assert!(containment_inequality_check(&ConfigClass::SpanningN1 { n: 3 }, 2).unwrap());
        assert_eq!(alpha_symbolic(&ConfigClass::SpanningN1 { n: 3 }, 6).unwrap().as_int(), 8);
        assert!(containment_inequality_check(&n3(2), 1).unwrap());
        assert!(containment_inequality_check(&n2(3, 1), 1).is_err());
        assert_eq!(resurgence(&n2(2, 2)).unwrap(), q(1, 1));
        assert_eq!(resurgence(&n3(3)).unwrap(), q(7, 6));
        assert_eq!(resurgence(&n2(4, 4)).unwrap(), q(4, 3));
        assert!(resurgence(&n2(4, 1)).is_err());
    }

    #[test]
    fn verlinde_examples() {
        let v = verlinde(2, 2).unwrap();
        assert!(v.near_integer && v.rounded == 5 && (v.raw - 5.0).abs() < 1e-9);
        assert_eq!(verlinde(2, 0).unwrap().rounded, 1);
        assert_eq!(verlinde(3, 1).unwrap().rounded, 4);
        assert!(verlinde(2, 1).is_err());
        assert!(verlinde(4, 2).unwrap().near_integer);
    }

    #[test]
    fn n2_formula_at_full_dep_t_reduces_to_general_case() {
        for n in 2..=10u32 {
            for k in 1..=20 {
                let general = (n as i64 + 2) * k;
                let expected = general.div_euclid(n as i64) + i64::from(general % n as i64 != 0);
                assert_eq!(alpha_symbolic(&n2(n, n), k).unwrap().as_int(), expected);
            }
            for d in 1..=20 {
                let expected = (n as i64 + 2) * (d - 1) / 2;
                assert_eq!(regularity_powers(&n2(n, n), d).unwrap().as_int(), expected);
            }
        }
    }

    #[test]
    fn alpha_over_k_dominates_waldschmidt() {
        let classes = [
            ConfigClass::Hyperplane { n: 3 },
            ConfigClass::SpanningN1 { n: 4 },
            n2(3, 1),
            n2(5, 3),
            n3(2),
            n3(3),
            n3(5),
        ];
        for cfg in classes {
            let w = waldschmidt(&cfg).unwrap();
            for k in 1..=60 {
                let a = alpha_symbolic(&cfg, k).unwrap().value / BigRational::from_integer(k.into());
                assert!(a >= w, "{cfg} k={k}");
                // Ceiling error is below one unit.
                assert!(a - &w < q(1, k), "{cfg} k={k}");
            }
        }
    }

    #[test]
    fn subadditivity_for_odd_n_plus_three() {
        for n in [3u32, 5, 7] {
            let p = ((n * n + 2 * n - 1) / 2) as i64;
            for t in 1..=6 {
                let big = alpha_symbolic(&n3(n), t * p).unwrap();
                let small = alpha_symbolic(&n3(n), t).unwrap();
                assert_eq!(big.status, Status::Exact);
                assert!(big.as_int() <= p * small.as_int());
            }
        }
    }
}
