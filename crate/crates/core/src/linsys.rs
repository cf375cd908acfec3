//! Rewriting of fat-point linear systems `L_n(j; b_1, …, b_s)`.
//!
//! Each rule maps a system to one of the same dimension (for points in
//! linearly general position); [`reduce`] chains them until a base case
//! gives the dimension outright.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::binom;
use crate::error::{Error, Result};

/// `L_n(j; b_1, …, b_s)` with multiplicities sorted descending, zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearSystemSpec {
    pub n: u32,
    pub j: i64,
    pub mults: Vec<u32>,
}

impl LinearSystemSpec {
    pub fn new(n: u32, j: i64, mut mults: Vec<u32>) -> Result<Self> {
        if j < 0 {
            return Err(Error::pre("LinearSystemSpec", format!("degree j = {j} is negative")));
        }
        mults.retain(|&b| b > 0);
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { n, j, mults })
    }

    pub fn s(&self) -> usize {
        self.mults.len()
    }

    fn top_sum(&self, k: usize) -> i64 {
        self.mults.iter().take(k).map(|&b| b as i64).sum()
    }

    /// Cremona shift `t = (n−1)j − (b_1 + … + b_{n+1})`.
    pub fn cremona_shift(&self) -> i64 {
        (self.n as i64 - 1) * self.j - self.top_sum(self.n as usize + 1)
    }
}

impl fmt::Display for LinearSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return write!(f, "L_{}({}; ∅)", self.n, self.j);
        }
        let ms: Vec<String> = self.mults.iter().map(u32::to_string).collect();
        write!(f, "L_{}({}; {})", self.n, self.j, ms.join(","))
    }
}

/// Parses a multiplicity list such as `2,2,1`, `2^4,1` or the empty string.
pub fn parse_mults(s: &str) -> Result<Vec<u32>> {
    let bad = |piece: &str| Error::domain("mults", format!("cannot read `{piece}`"));
    let mut out = Vec::new();
    for piece in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match piece.split_once('^') {
            Some((b, k)) => {
                let b: u32 = b.trim().parse().map_err(|_| bad(piece))?;
                let k: usize = k.trim().parse().map_err(|_| bad(piece))?;
                out.extend(std::iter::repeat(b).take(k));
            }
            None => out.push(piece.parse().map_err(|_| bad(piece))?),
        }
    }
    Ok(out)
}

impl FromStr for LinearSystemSpec {
    type Err = Error;

    /// Reads `L_n(j; b…)` as printed by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain("LinearSystemSpec", format!("cannot parse `{s}`"));
        let rest = s.trim().strip_prefix("L_").ok_or_else(bad)?;
        let (n, rest) = rest.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let (j, mults) = inner.split_once(';').unwrap_or((inner, ""));
        let mults = mults.trim();
        let mults = if mults == "∅" { Vec::new() } else { parse_mults(mults)? };
        LinearSystemSpec::new(n.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?, mults)
    }
}

/// Applies the Cremona map at the points with indices `idx`, without
/// normalizing. Returns the new degree and multiplicities.
pub(crate) fn cremona_raw(n: u32, j: i64, mults: &[i64], idx: &[usize]) -> (i64, Vec<i64>, i64) {
    let t = (n as i64 - 1) * j - idx.iter().map(|&i| mults[i]).sum::<i64>();
    let mut out = mults.to_vec();
    for &i in idx {
        out[i] += t;
    }
    (j + t, out, t)
}

/// Cremona transformation at the `n + 1` points of largest multiplicity.
pub fn cremona_step(spec: &LinearSystemSpec) -> Result<LinearSystemSpec> {
    let n = spec.n as usize;
    if spec.n < 2 {
        return Err(Error::pre("cremona_step", format!("n = {} < 2", spec.n)));
    }
    if spec.s() < n + 1 {
        return Err(Error::pre("cremona_step", format!("{} points, need at least n+1 = {}", spec.s(), n + 1)));
    }
    let t = spec.cremona_shift();
    if let Some(i) = (0..=n).find(|&i| spec.mults[i] as i64 + t < 0) {
        return Err(Error::pre(
            "cremona_step",
            format!("b_{} + t = {} + {t} < 0 at index {}", i + 1, spec.mults[i], i + 1),
        ));
    }
    let mults: Vec<i64> = spec.mults.iter().map(|&b| b as i64).collect();
    let idx: Vec<usize> = (0..=n).collect();
    let (j, mults, _) = cremona_raw(spec.n, spec.j, &mults, &idx);
    if j < 0 {
        return Err(Error::pre("cremona_step", format!("new degree j + t = {j} < 0")));
    }
    LinearSystemSpec::new(spec.n, j, mults.into_iter().map(|b| b as u32).collect())
}

/// Splits off the hyperplane through the `n` points of largest
/// multiplicity, which is a fixed component when `b_1 + … + b_n > (n−1)j`.
pub fn bezout_step(spec: &LinearSystemSpec) -> Result<LinearSystemSpec> {
    let n = spec.n as usize;
    if spec.n < 2 {
        return Err(Error::pre("bezout_step", format!("n = {} < 2", spec.n)));
    }
    if spec.j < 1 {
        return Err(Error::pre("bezout_step", "degree must be ≥ 1"));
    }
    if spec.s() < n {
        return Err(Error::pre("bezout_step", format!("{} points, need at least n = {n}", spec.s())));
    }
    let sum = spec.top_sum(n);
    let bound = (spec.n as i64 - 1) * spec.j;
    if sum <= bound {
        return Err(Error::pre("bezout_step", format!("b_1 + … + b_n = {sum} ≤ (n−1)j = {bound}")));
    }
    let mut mults = spec.mults.clone();
    for b in mults.iter_mut().take(n) {
        *b -= 1;
    }
    LinearSystemSpec::new(spec.n, spec.j - 1, mults)
}

/// Forms singular to order `j` at a point are cones over it, so that point
/// can be projected away: `L_n(j; j, rest) = L_{n−1}(j; rest)`.
pub fn cone_step(spec: &LinearSystemSpec) -> Result<LinearSystemSpec> {
    if spec.n < 1 {
        return Err(Error::pre("cone_step", "n must be ≥ 1"));
    }
    if spec.j < 1 {
        return Err(Error::pre("cone_step", "degree must be ≥ 1"));
    }
    let pos = spec
        .mults
        .iter()
        .position(|&b| b as i64 == spec.j)
        .ok_or_else(|| Error::pre("cone_step", format!("no multiplicity equals j = {}", spec.j)))?;
    let mut mults = spec.mults.clone();
    mults.remove(pos);
    LinearSystemSpec::new(spec.n - 1, spec.j, mults)
}

/// Which base case resolved a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseCase {
    NoPoints,
    SinglePoint,
    MultiplicityAboveDegree,
    ConstantsWithPoints,
    Line,
    PointSpace,
}

/// Dimension of a system that needs no rewriting, or `None`.
pub fn base_dimension(spec: &LinearSystemSpec) -> Option<(BigInt, BaseCase)> {
    let (n, j) = (spec.n as i64, spec.j);
    if n == 0 {
        // Degree-j forms on P^0 are the multiples of x_0^j, which vanish nowhere.
        let dim = if spec.mults.is_empty() { 1 } else { 0 };
        return Some((BigInt::from(dim), BaseCase::PointSpace));
    }
    if spec.mults.is_empty() {
        return Some((binom(n + j, n), BaseCase::NoPoints));
    }
    if spec.mults.iter().any(|&b| b as i64 > j) {
        return Some((BigInt::zero(), BaseCase::MultiplicityAboveDegree));
    }
    if j == 0 {
        return Some((BigInt::zero(), BaseCase::ConstantsWithPoints));
    }
    if let [b] = spec.mults[..] {
        let b = b as i64;
        let conditions: BigInt = (0..=(b - 1).min(j)).map(|e| binom(n - 1 + e, n - 1)).sum();
        return Some((binom(n + j, n) - conditions, BaseCase::SinglePoint));
    }
    if n == 1 {
        // Binary forms: conditions at distinct points are independent.
        let free = j + 1 - spec.mults.iter().map(|&b| b as i64).sum::<i64>();
        return Some((BigInt::from(free.max(0)), BaseCase::Line));
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    Base,
    Cone,
    Bezout,
    Cremona,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Base => "BASE",
            Rule::Cone => "CONE",
            Rule::Bezout => "BEZOUT",
            Rule::Cremona => "CREMONA",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub before: LinearSystemSpec,
    /// `None` for the closing base case.
    pub after: Option<LinearSystemSpec>,
    pub shift: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_case: Option<BaseCase>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  {} -> ", self.rule, self.before)?;
        match &self.after {
            Some(a) => write!(f, "{a}")?,
            None => write!(f, "{}", base_dimension(&self.before).map(|(d, _)| d).unwrap_or_default())?,
        }
        if let Some(t) = self.shift {
            write!(f, "  [t={t}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Outcome {
    Resolved {
        #[serde(serialize_with = "crate::serde_big::int")]
        dimension: BigInt,
    },
    /// No rule applies.
    Irreducible { spec: LinearSystemSpec },
    /// The step budget ran out first.
    StepLimit { spec: LinearSystemSpec },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub start: LinearSystemSpec,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
}

impl ReductionTrace {
    pub fn dimension(&self) -> Option<&BigInt> {
        match &self.outcome {
            Outcome::Resolved { dimension } => Some(dimension),
            _ => None,
        }
    }

    /// One line per step, then the outcome.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&step.to_string());
            out.push('\n');
        }
        match &self.outcome {
            Outcome::Resolved { dimension } => out.push_str(&format!("dim {} = {dimension}\n", self.start)),
            Outcome::Irreducible { spec } => out.push_str(&format!("irreducible at {spec}\n")),
            Outcome::StepLimit { spec } => out.push_str(&format!("step limit reached at {spec}\n")),
        }
        out
    }

    /// Re-checks that every rewrite step is what its rule produces.
    pub fn replay(&self) -> Result<()> {
        let mut cur = self.start.clone();
        for step in &self.steps {
            if step.before != cur {
                return Err(Error::Invariant(format!("trace breaks at {}", step.before)));
            }
            let redo = match step.rule {
                Rule::Base => None,
                Rule::Cone => Some(cone_step(&cur)?),
                Rule::Bezout => Some(bezout_step(&cur)?),
                Rule::Cremona => Some(cremona_step(&cur)?),
            };
            if redo != step.after {
                return Err(Error::Invariant(format!("{} does not reproduce its step", step.rule)));
            }
            if let Some(next) = redo {
                cur = next;
            }
        }
        Ok(())
    }
}

/// Rewrites until a base case resolves the system. Priority: base case,
/// Bézout, cone, then Cremona with strictly negative shift (a Cremona map
/// with `t ≥ 0` is never applied automatically).
pub fn reduce(spec: &LinearSystemSpec, max_steps: usize) -> Result<ReductionTrace> {
    if max_steps < 1 {
        return Err(Error::pre("reduce", "max_steps must be ≥ 1"));
    }
    let mut cur = spec.clone();
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        if let Some((dimension, case)) = base_dimension(&cur) {
            steps.push(Step { rule: Rule::Base, before: cur, after: None, shift: None, base_case: Some(case) });
            return Ok(ReductionTrace { start: spec.clone(), steps, outcome: Outcome::Resolved { dimension } });
        }
        let (rule, next, shift) = if let Ok(next) = bezout_step(&cur) {
            (Rule::Bezout, next, None)
        } else if let Ok(next) = cone_step(&cur) {
            (Rule::Cone, next, None)
        } else if cur.cremona_shift() < 0 && cur.s() > cur.n as usize {
            match cremona_step(&cur) {
                Ok(next) => (Rule::Cremona, next, Some(cur.cremona_shift())),
                Err(_) => break,
            }
        } else {
            break;
        };
        steps.push(Step { rule, before: cur.clone(), after: Some(next.clone()), shift, base_case: None });
        cur = next;
    }
    let outcome = if steps.len() >= max_steps {
        Outcome::StepLimit { spec: cur }
    } else {
        Outcome::Irreducible { spec: cur }
    };
    Ok(ReductionTrace { start: spec.clone(), steps, outcome })
}

/// Generous default budget: every rewrite lowers `j` or `n`.
pub fn default_max_steps(spec: &LinearSystemSpec) -> usize {
    (spec.j as usize + 1) * (spec.n as usize + 2) + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(n: u32, j: i64, m: &[u32]) -> LinearSystemSpec {
        LinearSystemSpec::new(n, j, m.to_vec()).unwrap()
    }

    #[test]
    fn normalization_and_parsing() {
        let s = l(2, 1, &[0, 1, 0, 0]);
        assert_eq!(s, l(2, 1, &[1]));
        assert_eq!(s.to_string(), "L_2(1; 1)");
        assert_eq!(l(2, 0, &[]).to_string(), "L_2(0; ∅)");
        assert_eq!("L_2(3; 2^4)".parse::<LinearSystemSpec>().unwrap(), l(2, 3, &[2; 4]));
        assert_eq!("L_2(0; ∅)".parse::<LinearSystemSpec>().unwrap(), l(2, 0, &[]));
        assert_eq!(parse_mults("3, 1^2,2").unwrap(), vec![3, 1, 1, 2]);
        assert!(parse_mults("x").is_err());
        assert!(LinearSystemSpec::new(2, -1, vec![]).is_err());
    }

    #[test]
    fn cremona_examples() {
        assert_eq!(cremona_step(&l(2, 2, &[1; 4])).unwrap(), l(2, 1, &[1]));
        let err = cremona_step(&l(2, 3, &[2; 4])).unwrap_err().to_string();
        assert!(err.contains("index 1"), "{err}");
        assert!(cremona_step(&l(3, 4, &[3, 3, 3, 3, 2])).is_err());
        let fixed = l(3, 6, &[3, 3, 3, 3, 2]);
        assert_eq!(fixed.cremona_shift(), 0);
        assert_eq!(cremona_step(&fixed).unwrap(), fixed);
        // Shift flips sign on the second application.
        let a = l(2, 8, &[4, 3, 3]);
        let b = cremona_step(&a).unwrap();
        assert_eq!((b.clone(), b.cremona_shift()), (l(2, 6, &[2, 1, 1]), 2));
        assert_eq!(cremona_step(&b).unwrap(), a);
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_step(&l(2, 3, &[2; 4])).unwrap(), l(2, 2, &[2, 2, 1, 1]));
        assert_eq!(bezout_step(&l(2, 2, &[2, 2, 1, 1])).unwrap(), l(2, 1, &[1; 4]));
        assert!(bezout_step(&l(2, 4, &[1; 3])).is_err());
    }

    #[test]
    fn cone_examples() {
        let a = cone_step(&l(4, 3, &[3, 3, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(a, l(3, 3, &[3, 1, 1, 1, 1, 1]));
        assert_eq!(cone_step(&a).unwrap(), l(2, 3, &[1; 5]));
        assert_eq!(cone_step(&l(2, 2, &[2, 1])).unwrap(), l(1, 2, &[1]));
        assert!(cone_step(&l(2, 3, &[2])).is_err());
    }

    #[test]
    fn base_examples() {
        assert_eq!(base_dimension(&l(2, 1, &[1])).unwrap().0, BigInt::from(2));
        assert_eq!(base_dimension(&l(3, 2, &[3])).unwrap().0, BigInt::from(0));
        assert_eq!(base_dimension(&l(2, 0, &[])).unwrap().0, BigInt::from(1));
        assert_eq!(base_dimension(&l(1, 5, &[2, 2])).unwrap(), (BigInt::from(2), BaseCase::Line));
        assert_eq!(base_dimension(&l(0, 3, &[1])).unwrap().0, BigInt::from(0));
        assert!(base_dimension(&l(2, 3, &[1, 1])).is_none());
    }

    #[test]
    fn reduce_examples() {
        let t = reduce(&l(2, 3, &[2; 4]), 20).unwrap();
        assert_eq!(t.dimension(), Some(&BigInt::from(0)));
        let last = t.steps.last().unwrap();
        assert_eq!(last.before, l(2, 0, &[1, 1]));
        let rendered = t.render();
        assert!(rendered.contains("BEZOUT  L_2(3; 2,2,2,2) -> L_2(2; 2,2,1,1)"), "{rendered}");
        assert_eq!(reduce(&l(2, 4, &[2; 5]), 20).unwrap().dimension(), Some(&BigInt::from(1)));
        assert_eq!(reduce(&l(2, 1, &[1; 3]), 20).unwrap().dimension(), Some(&BigInt::from(0)));
        let cremona = reduce(&l(2, 4, &[2; 5]), 20).unwrap();
        assert!(cremona.render().contains("[t=-2]"));
        let stuck = reduce(&l(2, 3, &[1; 5]), 20).unwrap();
        assert_eq!(stuck.outcome, Outcome::Irreducible { spec: l(2, 3, &[1; 5]) });
        assert!(matches!(reduce(&l(2, 6, &[3; 4]), 1).unwrap().outcome, Outcome::StepLimit { .. }));
    }

    #[test]
    fn four_fold_points_chain_resolves_to_zero() {
        for d in 1..=6u32 {
            let start = l(2, 2 * d as i64 - 1, &[d; 4]);
            let t = reduce(&start, 50).unwrap();
            assert_eq!(t.dimension(), Some(&BigInt::zero()), "d={d}\n{}", t.render());
            t.replay().unwrap();
            if d >= 2 {
                // Passes through L_2(2d−2; d², (d−1)²) and L_2(2d−3; (d−1)⁴).
                assert_eq!(t.steps[0].after, Some(l(2, 2 * d as i64 - 2, &[d, d, d - 1, d - 1])));
                assert_eq!(t.steps[1].after, Some(l(2, 2 * d as i64 - 3, &[d - 1; 4])));
            }
        }
    }

    proptest! {
        #[test]
        fn cremona_raw_is_an_involution(
            n in 2u32..5, j in 0i64..20, mults in proptest::collection::vec(0i64..10, 6)
        ) {
            let idx: Vec<usize> = (0..=n as usize).collect();
            let (j1, m1, t1) = cremona_raw(n, j, &mults, &idx);
            let (j2, m2, t2) = cremona_raw(n, j1, &m1, &idx);
            prop_assert_eq!(t2, -t1);
            prop_assert_eq!(j2, j);
            prop_assert_eq!(m2, mults);
        }

        #[test]
        fn reduce_traces_replay_and_shrink(
            n in 1u32..5, j in 0i64..10, mults in proptest::collection::vec(0u32..8, 0..8)
        ) {
            let spec = LinearSystemSpec::new(n, j, mults).unwrap();
            let t = reduce(&spec, default_max_steps(&spec)).unwrap();
            prop_assert!(t.replay().is_ok());
            let limited = matches!(t.outcome, Outcome::StepLimit { .. });
            prop_assert!(!limited);
            for step in &t.steps {
                if let Some(a) = &step.after {
                    prop_assert!(a.j < step.before.j || a.n < step.before.n);
                }
            }
        }
    }
}
