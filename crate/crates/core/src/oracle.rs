//! Brute-force ground truth. Every number here comes from the rank of an
//! explicit matrix: columns are the degree-`j` monomials (graded lex), rows
//! are either generators of a power ideal or derivative conditions at points.
//!
//! Two strategies compute the same ranks:
//!
//! * [`Strategy::Naive`] builds the matrix exactly as the definitions say.
//! * [`Strategy::Reduced`] first moves `n + 1` independent points (or forms)
//!   to coordinate position, which turns their conditions into monomial
//!   conditions and leaves a much smaller matrix. It is the default, and the
//!   naive route is kept as a cross-check.

use std::collections::HashMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_forms::ConfigClass;
use crate::combinatorics::{binom, binom_u128};
use crate::error::{Error, Result};
use crate::field::{solve, Field, Rationals, Scalars, Zp};

/// Attempts before [`random_config`] gives up.
pub const SAMPLING_BUDGET: usize = 200;

/// Coordinate range for rational draws: entries are uniform in `[-R, R]`.
pub const RATIONAL_RANGE: i64 = 50;

/// `s` points of `P^n` with integer coordinates (residues for a prime field).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointConfiguration {
    pub n: usize,
    pub points: Vec<Vec<i64>>,
    pub field: Field,
    pub seed: u64,
    pub class_hint: Option<ConfigClass>,
    /// Size of the smallest linearly dependent subset, `None` if the points
    /// are independent. Always recomputed, never trusted from the caller.
    pub min_dependent: Option<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    Reduced,
    Naive,
}

fn lift<S: Scalars>(s: &S, pts: &[Vec<i64>]) -> Vec<Vec<S::E>> {
    pts.iter().map(|p| p.iter().map(|&c| s.from_i64(c)).collect()).collect()
}

/// Calls `f` on each `k`-subset of `0..s` in lex order; stops when `f` says so.
fn for_each_subset(s: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > s {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < s - k + i) else {
            return;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

fn min_dependent_in<S: Scalars>(s: &S, pts: &[Vec<S::E>]) -> Option<usize> {
    let dim = pts.first().map_or(0, Vec::len);
    for k in 2..=pts.len().min(dim + 1) {
        let mut found = false;
        for_each_subset(pts.len(), k, |idx| {
            found = s.rank(idx.iter().map(|&i| pts[i].clone()).collect()) < k;
            found
        });
        if found {
            return Some(k);
        }
    }
    None
}

/// Smallest size of a linearly dependent subset of the given vectors.
pub fn min_dependent_size(field: Field, pts: &[Vec<i64>]) -> Option<usize> {
    match field {
        Field::Prime(p) => {
            let s = Zp::new(p);
            min_dependent_in(&s, &lift(&s, pts))
        }
        Field::Rational => min_dependent_in(&Rationals, &lift(&Rationals, pts)),
    }
}

/// Rank of the matrix whose rows are the given vectors.
pub fn point_rank(field: Field, pts: &[Vec<i64>]) -> usize {
    if pts.is_empty() {
        return 0;
    }
    match field {
        Field::Prime(p) => {
            let s = Zp::new(p);
            s.rank(lift(&s, pts))
        }
        Field::Rational => Rationals.rank(lift(&Rationals, pts)),
    }
}

impl PointConfiguration {
    /// Wraps explicit coordinates, computing the dependency certificate and
    /// checking it against `class_hint`.
    pub fn new(n: usize, points: Vec<Vec<i64>>, field: Field, class_hint: Option<ConfigClass>) -> Result<Self> {
        let points: Vec<Vec<i64>> = match field {
            Field::Prime(p) => points.into_iter().map(|v| v.into_iter().map(|c| c.rem_euclid(p as i64)).collect()).collect(),
            Field::Rational => points,
        };
        if points.is_empty() {
            return Err(Error::InvalidConfig("need at least one point".into()));
        }
        if let Some(bad) = points.iter().find(|p| p.len() != n + 1) {
            return Err(Error::InvalidConfig(format!("point {bad:?} does not have {} coordinates", n + 1)));
        }
        if points.iter().any(|p| p.iter().all(|&c| c == 0)) {
            return Err(Error::InvalidConfig("the zero vector is not a projective point".into()));
        }
        let cfg = PointConfiguration {
            n,
            min_dependent: min_dependent_size(field, &points),
            rank: point_rank(field, &points),
            points,
            field,
            seed: 0,
            class_hint,
        };
        cfg.certify()?;
        Ok(cfg)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when the points span `P^n`.
    pub fn spans(&self) -> bool {
        self.rank == self.n + 1
    }

    /// Checks distinctness and the certificate of the class hint (general
    /// position when there is no hint).
    pub fn certify(&self) -> Result<()> {
        let s = self.len();
        let n = self.n;
        let fail = |why: String| Err(Error::InvalidConfig(why));
        if self.min_dependent == Some(2) {
            return fail("two points coincide projectively".into());
        }
        match self.class_hint {
            None => {
                if self.min_dependent.is_some_and(|k| k <= n + 1) {
                    return fail(format!("a subset of {} points is dependent", self.min_dependent.unwrap_or(0)));
                }
            }
            Some(class) => {
                class.validate()?;
                if class.n() as usize != n {
                    return fail(format!("class {class} does not live in P^{n}"));
                }
                if let Some(expected) = class.num_points() {
                    if expected != s {
                        return fail(format!("class {class} needs {expected} points, got {s}"));
                    }
                }
                match class {
                    ConfigClass::Hyperplane { .. } => {
                        if self.rank > n {
                            return fail("points span P^n, not a hyperplane".into());
                        }
                    }
                    ConfigClass::SpanningN1 { .. } => {
                        if !self.spans() {
                            return fail("n+1 points do not span".into());
                        }
                    }
                    ConfigClass::SpanningN2 { dep_t, .. } => {
                        if !self.spans() || self.min_dependent != Some(dep_t as usize + 2) {
                            return fail(format!(
                                "least dependent subset has size {:?}, need {}",
                                self.min_dependent,
                                dep_t + 2
                            ));
                        }
                    }
                    ConfigClass::LgpN3 { .. } => {
                        if self.min_dependent != Some(n + 2) {
                            return fail("some n+1 of the points are dependent".into());
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn draw_coord(rng: &mut ChaCha8Rng, field: Field) -> i64 {
    match field {
        Field::Prime(p) => rng.gen_range(0..p) as i64,
        Field::Rational => rng.gen_range(-RATIONAL_RANGE..=RATIONAL_RANGE),
    }
}

/// Rejection-samples `s` points of `P^n` whose certificate matches
/// `class_hint`; no hint means linearly general position.
///
/// For `n + 2` points with parameter `dep_t`, the first `dep_t + 2` points
/// are drawn inside the coordinate subspace `x_{dep_t+1} = … = x_n = 0`.
pub fn random_config(
    n: usize,
    s: usize,
    class_hint: Option<ConfigClass>,
    seed: u64,
    field: Field,
) -> Result<PointConfiguration> {
    if s == 0 {
        return Err(Error::pre("random_config", "need s ≥ 1"));
    }
    if let Some(class) = class_hint {
        class.validate()?;
        if class.n() as usize != n {
            return Err(Error::InvalidConfig(format!("class {class} does not live in P^{n}")));
        }
        if class.num_points().is_some_and(|k| k != s) {
            return Err(Error::InvalidConfig(format!("class {class} needs {:?} points", class.num_points())));
        }
        if matches!(class, ConfigClass::Hyperplane { .. }) && n == 1 && s > 1 {
            return Err(Error::InvalidConfig("a hyperplane of P^1 holds a single point".into()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLING_BUDGET {
        let points: Vec<Vec<i64>> = (0..s)
            .map(|i| {
                (0..=n)
                    .map(|c| {
                        let zeroed = match class_hint {
                            Some(ConfigClass::Hyperplane { .. }) => c == n,
                            Some(ConfigClass::SpanningN2 { dep_t, .. }) => i < dep_t as usize + 2 && c > dep_t as usize,
                            _ => false,
                        };
                        if zeroed {
                            0
                        } else {
                            draw_coord(&mut rng, field)
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(mut cfg) = PointConfiguration::new(n, points, field, class_hint) {
            cfg.seed = seed;
            return Ok(cfg);
        }
    }
    Err(Error::SamplingExhausted { attempts: SAMPLING_BUDGET, seed })
}

/// `k` seeds derived deterministically from `base`.
pub fn seed_stream(base: u64, k: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    (0..k).map(|_| rng.next_u64()).collect()
}

/// Exponent vectors of degree `degree` in `nvars` variables with
/// `β_i ≤ upper[i]`, in graded lex order (`x_0` largest).
pub fn monomials(nvars: usize, degree: u32, upper: Option<&[u32]>) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, nvars: usize, upper: Option<&[u32]>, out: &mut Vec<Vec<u32>>) {
        let cap = upper.map_or(u32::MAX, |u| u[i]);
        if i + 1 == nvars {
            if left <= cap {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for e in (0..=left.min(cap)).rev() {
            cur.push(e);
            rec(i + 1, left - e, cur, nvars, upper, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(0, degree, &mut Vec::with_capacity(nvars), nvars, upper, &mut out);
    }
    out
}

/// Falling factorials `β(β−1)…(β−α+1)` for `0 ≤ α, β ≤ j`, in the field.
fn falling_table<S: Scalars>(s: &S, j: u32) -> Vec<Vec<S::E>> {
    (0..=j)
        .map(|beta| {
            let mut row = Vec::with_capacity(j as usize + 1);
            let mut acc = s.one();
            for alpha in 0..=j {
                row.push(acc.clone());
                acc = s.mul(&acc, &s.from_i64(beta as i64 - alpha as i64));
            }
            row
        })
        .collect()
}

fn power_table<S: Scalars>(s: &S, c: &[S::E], j: u32) -> Vec<Vec<S::E>> {
    c.iter()
        .map(|x| {
            let mut row = vec![s.one()];
            for e in 1..=j as usize {
                let next = s.mul(&row[e - 1], x);
                row.push(next);
            }
            row
        })
        .collect()
}

/// Rows `∂^α F (P)` for every `α` with `|α|` in `orders`, applied to `cols`.
fn derivative_rows<S: Scalars>(
    s: &S,
    point: &[S::E],
    orders: impl Iterator<Item = u32>,
    cols: &[Vec<u32>],
    j: u32,
    ff: &[Vec<S::E>],
) -> Vec<Vec<S::E>> {
    let pows = power_table(s, point, j);
    let v = point.len();
    let mut rows = Vec::new();
    for order in orders {
        for alpha in monomials(v, order, None) {
            let row = cols
                .iter()
                .map(|beta| {
                    let mut acc = s.one();
                    for i in 0..v {
                        if beta[i] < alpha[i] {
                            return s.zero();
                        }
                        acc = s.mul(&acc, &ff[beta[i] as usize][alpha[i] as usize]);
                        acc = s.mul(&acc, &pows[i][(beta[i] - alpha[i]) as usize]);
                    }
                    acc
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Greedily picks up to `limit` independent vectors, visiting `order`.
fn independent_subset<S: Scalars>(s: &S, vecs: &[Vec<S::E>], order: &[usize], limit: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for &i in order {
        if chosen.len() == limit {
            break;
        }
        let mut trial: Vec<Vec<S::E>> = chosen.iter().map(|&c| vecs[c].clone()).collect();
        trial.push(vecs[i].clone());
        if s.rank(trial) == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    chosen
}

fn fat_point_dim_in<S: Scalars>(s: &S, pts: &[Vec<S::E>], orders: &[u32], j: u32, strategy: Strategy) -> usize {
    let v = pts[0].len();
    // Order b > j + 1 forces the same vanishing as b = j + 1 (all j-th
    // partials, which are constants).
    let mut active: Vec<(usize, u32)> =
        orders.iter().enumerate().filter(|(_, &b)| b > 0).map(|(i, &b)| (i, b.min(j + 1))).collect();
    let ff = falling_table(s, j);
    if strategy == Strategy::Naive {
        let cols = monomials(v, j, None);
        let rows: Vec<Vec<S::E>> =
            active.iter().flat_map(|&(i, b)| derivative_rows(s, &pts[i], 0..b, &cols, j, &ff)).collect();
        return cols.len() - if rows.is_empty() { 0 } else { s.rank(rows) };
    }
    active.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let order: Vec<usize> = active.iter().map(|&(i, _)| i).collect();
    let chosen = independent_subset(s, pts, &order, v);
    let (cols, others): (Vec<Vec<u32>>, Vec<(Vec<S::E>, u32)>) = if chosen.len() == v {
        let b_of = |i: usize| active.iter().find(|a| a.0 == i).map_or(0, |a| a.1);
        if chosen.iter().any(|&c| b_of(c) > j) {
            return 0;
        }
        let upper: Vec<u32> = chosen.iter().map(|&c| j - b_of(c)).collect();
        // Columns of q are the chosen points; other points get coordinates
        // y with q·y = P, and the chosen ones become coordinate points.
        let q: Vec<Vec<S::E>> = (0..v).map(|r| chosen.iter().map(|&c| pts[c][r].clone()).collect()).collect();
        let others = active
            .iter()
            .filter(|a| !chosen.contains(&a.0))
            .map(|&(i, b)| (solve(s, &q, &pts[i]).expect("chosen points are independent"), b))
            .collect();
        (monomials(v, j, Some(&upper)), others)
    } else {
        (monomials(v, j, None), active.iter().map(|&(i, b)| (pts[i].clone(), b)).collect())
    };
    if cols.is_empty() {
        return 0;
    }
    // By Euler's formula the order-(b−1) partials already imply the lower
    // ones when the characteristic exceeds j.
    let rows: Vec<Vec<S::E>> =
        others.iter().flat_map(|(p, b)| derivative_rows(s, p, std::iter::once(b - 1), &cols, j, &ff)).collect();
    cols.len() - if rows.is_empty() { 0 } else { s.rank(rows) }
}

/// `(δ, multinomial(a; δ) Π c_i^{δ_i})` for the nonzero terms of `ℓ^a`,
/// keeping only `δ ≤ upper`.
fn expand_power<S: Scalars>(s: &S, c: &[S::E], a: u32, upper: Option<&[u32]>) -> Vec<(Vec<u32>, S::E)> {
    let pows = power_table(s, c, a);
    monomials(c.len(), a, upper)
        .into_iter()
        .filter_map(|delta| {
            let mut left = a as u64;
            let mut acc = s.one();
            for (i, &e) in delta.iter().enumerate() {
                acc = s.mul(&acc, &s.from_u128(binom_u128(left, e as u64)));
                acc = s.mul(&acc, &pows[i][e as usize]);
                left -= e as u64;
            }
            (!s.is_zero(&acc)).then_some((delta, acc))
        })
        .collect()
}

fn power_ideal_dim_in<S: Scalars>(s: &S, forms: &[Vec<S::E>], exps: &[u32], j: u32, strategy: Strategy) -> usize {
    let v = forms[0].len();
    let mut active: Vec<(usize, u32)> = exps.iter().copied().enumerate().filter(|&(_, a)| a <= j).collect();
    let (cols, upper, others): (Vec<Vec<u32>>, Option<Vec<u32>>, Vec<(Vec<S::E>, u32)>) = {
        active.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
        let order: Vec<usize> = active.iter().map(|&(i, _)| i).collect();
        let chosen =
            if strategy == Strategy::Reduced { independent_subset(s, forms, &order, v) } else { Vec::new() };
        if chosen.len() == v {
            // New variables y_k = L_k(x); another form c becomes c' with
            // Lᵀ c' = c. The chosen powers are then the monomials y_k^{a_k}.
            let lt: Vec<Vec<S::E>> = (0..v).map(|r| chosen.iter().map(|&c| forms[c][r].clone()).collect()).collect();
            let a_of = |i: usize| active.iter().find(|x| x.0 == i).map_or(0, |x| x.1);
            let upper: Vec<u32> = chosen.iter().map(|&c| a_of(c) - 1).collect();
            let others = active
                .iter()
                .filter(|x| !chosen.contains(&x.0))
                .map(|&(i, a)| (solve(s, &lt, &forms[i]).expect("chosen forms are independent"), a))
                .collect();
            (monomials(v, j, Some(&upper)), Some(upper), others)
        } else {
            (monomials(v, j, None), None, active.iter().map(|&(i, a)| (forms[i].clone(), a)).collect())
        }
    };
    if cols.is_empty() {
        return 0;
    }
    let index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
    let upper = upper.as_deref();
    let mut rows = Vec::new();
    for (c, a) in &others {
        let terms = expand_power(s, c, *a, upper);
        for gamma in monomials(v, j - a, upper) {
            let mut row = vec![s.zero(); cols.len()];
            let mut beta = vec![0u32; v];
            for (delta, coeff) in &terms {
                for i in 0..v {
                    beta[i] = delta[i] + gamma[i];
                }
                if let Some(&k) = index.get(beta.as_slice()) {
                    row[k] = s.add(&row[k], coeff);
                }
            }
            rows.push(row);
        }
    }
    cols.len() - if rows.is_empty() { 0 } else { s.rank(rows) }
}

fn check_query(cfg: &PointConfiguration, per_point: &[u32], what: &str, j: i64) -> Result<()> {
    if per_point.len() != cfg.len() {
        return Err(Error::pre("oracle", format!("{} {what} for {} points", per_point.len(), cfg.len())));
    }
    cfg.field.check_degree(j)
}

/// `dim_K [∩ 𝔭_i^{b_i}]_j`: degree-`j` forms vanishing to order `b_i` at
/// point `i` (order 0 imposes nothing).
pub fn fat_point_dim_with(cfg: &PointConfiguration, orders: &[u32], j: i64, strategy: Strategy) -> Result<usize> {
    check_query(cfg, orders, "orders", j)?;
    if j < 0 {
        return Ok(0);
    }
    let j = j as u32;
    Ok(match cfg.field {
        Field::Prime(p) => {
            let s = Zp::new(p);
            fat_point_dim_in(&s, &lift(&s, &cfg.points), orders, j, strategy)
        }
        Field::Rational => fat_point_dim_in(&Rationals, &lift(&Rationals, &cfg.points), orders, j, strategy),
    })
}

pub fn fat_point_dim(cfg: &PointConfiguration, orders: &[u32], j: i64) -> Result<usize> {
    fat_point_dim_with(cfg, orders, j, Strategy::Reduced)
}

/// `dim_K [I_Z^(k)]_j`.
pub fn symbolic_power_dim(cfg: &PointConfiguration, k: u32, j: i64) -> Result<usize> {
    if k < 1 {
        return Err(Error::pre("symbolic_power_dim", "k must be ≥ 1"));
    }
    fat_point_dim(cfg, &vec![k; cfg.len()], j)
}

/// `dim_K [R/(ℓ_1^{a_1}, …, ℓ_s^{a_s})]_j` where `ℓ_i` has the coordinates
/// of point `i` as coefficients.
pub fn power_ideal_dim_with(cfg: &PointConfiguration, exps: &[u32], j: i64, strategy: Strategy) -> Result<usize> {
    check_query(cfg, exps, "exponents", j)?;
    if exps.contains(&0) {
        return Err(Error::pre("power_ideal_dim", "exponents must be ≥ 1"));
    }
    if j < 0 {
        return Ok(0);
    }
    let j = j as u32;
    Ok(match cfg.field {
        Field::Prime(p) => {
            let s = Zp::new(p);
            power_ideal_dim_in(&s, &lift(&s, &cfg.points), exps, j, strategy)
        }
        Field::Rational => power_ideal_dim_in(&Rationals, &lift(&Rationals, &cfg.points), exps, j, strategy),
    })
}

pub fn power_ideal_dim(cfg: &PointConfiguration, exps: &[u32], j: i64) -> Result<usize> {
    power_ideal_dim_with(cfg, exps, j, Strategy::Reduced)
}

/// Dimension of all degree-`j` forms in `n + 1` variables.
pub fn ambient_dim(n: usize, j: i64) -> usize {
    usize::try_from(binom(n as i64 + j, n as i64)).expect("ambient dimension fits usize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome", content = "degree")]
pub enum AlphaOutcome {
    Found(i64),
    ExceededCap(i64),
}

/// Least `j ≤ j_cap` with `[I_Z^(k)]_j ≠ 0`.
pub fn alpha_oracle(cfg: &PointConfiguration, k: u32, j_cap: i64) -> Result<AlphaOutcome> {
    for j in 0..=j_cap {
        if symbolic_power_dim(cfg, k, j)? > 0 {
            return Ok(AlphaOutcome::Found(j));
        }
    }
    Ok(AlphaOutcome::ExceededCap(j_cap))
}

/// `reg R/(ℓ_1^d, …, ℓ_s^d)`: the last degree with a nonzero piece.
pub fn regularity_oracle(cfg: &PointConfiguration, d: u32) -> Result<i64> {
    if d < 1 {
        return Err(Error::pre("regularity_oracle", "d must be ≥ 1"));
    }
    if !cfg.spans() {
        return Err(Error::pre("regularity_oracle", "points do not span P^n, the quotient is not Artinian"));
    }
    let exps = vec![d; cfg.len()];
    // The complete intersection on n+1 of the forms already vanishes past
    // (n+1)(d−1), so the scan stops by then.
    let bound = (cfg.n as i64 + 1) * (d as i64 - 1) + 1;
    for j in 0..=bound {
        if power_ideal_dim(cfg, &exps, j)? == 0 {
            return Ok(j - 1);
        }
    }
    Err(Error::Invariant(format!("quotient nonzero in degree {bound}, past the complete intersection bound")))
}

/// Both sides of the duality between powers of linear forms and fat points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub j: i64,
    pub exponents: Vec<u32>,
    /// `j − a_i + 1`, or 0 for points with `a_i > j`.
    pub orders: Vec<u32>,
    pub power_side: usize,
    pub fat_point_side: usize,
    pub equal: bool,
}

/// `dim [R/(ℓ_i^{a_i})]_j = dim [∩ 𝔭_i^{j−a_i+1}]_j`, valid for
/// `j ≥ max a_i − 1`.
pub fn duality_check(cfg: &PointConfiguration, exps: &[u32], j: i64) -> Result<DualityReport> {
    let max_a = exps.iter().copied().max().unwrap_or(0) as i64;
    if j < max_a - 1 {
        return Err(Error::pre("duality_check", format!("j = {j} below max exponent − 1 = {}", max_a - 1)));
    }
    let orders: Vec<u32> = exps.iter().map(|&a| (j - a as i64 + 1).max(0) as u32).collect();
    let power_side = power_ideal_dim(cfg, exps, j)?;
    let fat_point_side = fat_point_dim(cfg, &orders, j)?;
    Ok(DualityReport {
        j,
        exponents: exps.to_vec(),
        orders,
        power_side,
        fat_point_side,
        equal: power_side == fat_point_side,
    })
}

/// Agreement of one computation across several random draws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "consensus")]
pub enum Consensus<T> {
    Unanimous { value: T },
    /// Draws disagree; the per-seed values are kept for the report.
    Flagged { values: Vec<(u64, T)> },
}

impl<T> Consensus<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Consensus::Unanimous { value } => Some(value),
            Consensus::Flagged { .. } => None,
        }
    }
}

/// Runs `f` once per seed; anything but unanimous agreement is flagged.
pub fn consensus<T: PartialEq + Clone>(seeds: &[u64], f: impl Fn(u64) -> Result<T>) -> Result<Consensus<T>> {
    let values = seeds.iter().map(|&s| Ok((s, f(s)?))).collect::<Result<Vec<_>>>()?;
    match values.first() {
        Some((_, first)) if values.iter().all(|(_, v)| v == first) => {
            Ok(Consensus::Unanimous { value: first.clone() })
        }
        _ => Ok(Consensus::Flagged { values }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    const P: Field = Field::Prime(DEFAULT_PRIME);

    fn general(n: usize, s: usize, seed: u64) -> PointConfiguration {
        random_config(n, s, None, seed, P).unwrap()
    }

    #[test]
    fn monomial_order_and_counts() {
        let m = monomials(3, 2, None);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
        assert_eq!(monomials(3, 4, Some(&[1, 1, 1])).len(), 0);
        assert_eq!(monomials(4, 4, Some(&[1, 1, 1, 1])).len(), 1);
        for v in 1..=5 {
            for d in 0..=6 {
                assert_eq!(monomials(v, d, None).len(), ambient_dim(v - 1, d as i64));
            }
        }
    }

    #[test]
    fn subsets_enumerate_binomially() {
        let mut count = 0;
        for_each_subset(7, 3, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 35);
    }

    #[test]
    fn configurations_carry_certificates() {
        let c = general(2, 5, 1);
        assert_eq!(c.min_dependent, Some(4));
        let c = random_config(3, 5, Some(ConfigClass::SpanningN2 { n: 3, dep_t: 1 }), 9, P).unwrap();
        assert_eq!(c.min_dependent, Some(3));
        // Exactly one collinear triple.
        let mut triples = 0;
        for_each_subset(5, 3, |idx| {
            let rows: Vec<Vec<i64>> = idx.iter().map(|&i| c.points[i].clone()).collect();
            triples += usize::from(point_rank(P, &rows) < 3);
            false
        });
        assert_eq!(triples, 1);
        let c = random_config(3, 4, Some(ConfigClass::Hyperplane { n: 3 }), 2, P).unwrap();
        assert!(!c.spans());
        assert!(PointConfiguration::new(1, vec![vec![1, 2], vec![2, 4]], Field::Rational, None).is_err());
        assert!(random_config(2, 4, Some(ConfigClass::LgpN3 { n: 2 }), 0, P).is_err());
    }

    #[test]
    fn power_ideal_examples() {
        let c5 = general(2, 5, 3);
        assert_eq!(power_ideal_dim(&c5, &[3; 5], 3).unwrap(), 5);
        let c4 = general(2, 4, 3);
        assert_eq!(power_ideal_dim(&c4, &[2; 4], 3).unwrap(), 0);
        assert_eq!(power_ideal_dim(&c4, &[3; 4], 2).unwrap(), 6);
        assert_eq!(power_ideal_dim(&c4, &[2; 4], 1).unwrap(), 3);
    }

    #[test]
    fn fat_point_examples() {
        let c4 = general(2, 4, 5);
        assert_eq!(symbolic_power_dim(&c4, 1, 1).unwrap(), 0);
        assert_eq!(symbolic_power_dim(&c4, 2, 4).unwrap(), 3);
        let c5 = general(2, 5, 5);
        assert_eq!(symbolic_power_dim(&c5, 2, 4).unwrap(), 1);
        assert_eq!(alpha_oracle(&c5, 1, 10).unwrap(), AlphaOutcome::Found(2));
        assert_eq!(alpha_oracle(&c5, 2, 10).unwrap(), AlphaOutcome::Found(4));
        assert_eq!(alpha_oracle(&c5, 2, 3).unwrap(), AlphaOutcome::ExceededCap(3));
        let n2 = random_config(3, 5, Some(ConfigClass::SpanningN2 { n: 3, dep_t: 1 }), 4, P).unwrap();
        assert_eq!(alpha_oracle(&n2, 1, 10).unwrap(), AlphaOutcome::Found(2));
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(regularity_oracle(&general(2, 4, 7), 2).unwrap(), 2);
        assert_eq!(regularity_oracle(&general(2, 5, 7), 3).unwrap(), 4);
        let coords: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|c| i64::from(c == i)).collect()).collect();
        let ci = PointConfiguration::new(3, coords, P, None).unwrap();
        assert_eq!(regularity_oracle(&ci, 2).unwrap(), 4);
        let flat = random_config(3, 4, Some(ConfigClass::Hyperplane { n: 3 }), 1, P).unwrap();
        assert!(regularity_oracle(&flat, 2).is_err());
    }

    #[test]
    fn duality_examples() {
        let c4 = general(2, 4, 11);
        let r = duality_check(&c4, &[2; 4], 3).unwrap();
        assert_eq!((r.power_side, r.fat_point_side), (0, 0));
        let c5 = general(2, 5, 11);
        let r = duality_check(&c5, &[3; 5], 4).unwrap();
        assert_eq!((r.power_side, r.fat_point_side), (1, 1));
        assert!(duality_check(&c4, &[2; 4], 0).is_err());
    }

    #[test]
    fn reduced_and_naive_agree() {
        for (n, s) in [(1, 3), (2, 2), (2, 5), (3, 4), (3, 6), (4, 5)] {
            let cfg = general(n, s, 100 + s as u64);
            for j in 0..=5i64 {
                for b in 1..=3u32 {
                    let orders: Vec<u32> = (0..s as u32).map(|i| (b + i) % 4).collect();
                    assert_eq!(
                        fat_point_dim_with(&cfg, &orders, j, Strategy::Reduced).unwrap(),
                        fat_point_dim_with(&cfg, &orders, j, Strategy::Naive).unwrap(),
                        "fat n={n} s={s} j={j} {orders:?}"
                    );
                    let exps: Vec<u32> = (0..s as u32).map(|i| 1 + (b + i) % 3).collect();
                    assert_eq!(
                        power_ideal_dim_with(&cfg, &exps, j, Strategy::Reduced).unwrap(),
                        power_ideal_dim_with(&cfg, &exps, j, Strategy::Naive).unwrap(),
                        "power n={n} s={s} j={j} {exps:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn rational_and_prime_fields_agree() {
        let q = random_config(2, 5, None, 17, Field::Rational).unwrap();
        let p = random_config(2, 5, None, 17, P).unwrap();
        for j in 0..=5 {
            assert_eq!(power_ideal_dim(&q, &[3; 5], j).unwrap(), power_ideal_dim(&p, &[3; 5], j).unwrap());
            assert_eq!(symbolic_power_dim(&q, 2, j).unwrap(), symbolic_power_dim(&p, 2, j).unwrap());
        }
    }

    #[test]
    fn small_prime_is_rejected_for_high_degree() {
        let cfg = random_config(2, 4, None, 1, Field::Prime(7)).unwrap();
        assert!(matches!(power_ideal_dim(&cfg, &[2; 4], 7), Err(Error::Field(_))));
        assert!(power_ideal_dim(&cfg, &[2; 4], 3).is_ok());
    }

    #[test]
    fn consensus_flags_disagreement() {
        let c = consensus(&[1, 2, 3], |_| Ok(5)).unwrap();
        assert_eq!(c.value(), Some(&5));
        let c = consensus(&[1, 2], |s| Ok(s)).unwrap();
        assert!(c.value().is_none());
    }
}
