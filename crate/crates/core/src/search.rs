//! The finite searches that close the argument: small solutions of
//! `P^±_n(X) = T_m`, the sweep over `X_1 = T_{m_1}`, and the assembled report
//! of every X-coordinate sequence that meets the Tribonacci numbers twice.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::contfrac::expand_until_q_exceeds;
use crate::error::{Error, Result};
use crate::factor::{sqfree_decompose, FactoringEffort};
use crate::lfl_bounds::{derive_lemma_jb0, DerivedBounds};
use crate::pell::{delta_from_x1, p_minus, p_plus, x_sequence, PellSign};
use crate::realnum::{parse_decimal, CertifiedReal, PrecisionPolicy};
use crate::reduction::{reduce_with_fallback, ReductionInstance, ReductionMethod, ReductionOutcome};
use crate::serde_util::{biguint_str, biguint_vec_str};
use crate::tribonacci::{BinetConstants, TribCache};

/// The base `B` in the reduction inequality `|...| < A B^-k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionBase {
    /// A decimal or fraction such as `2.4`.
    Fixed(String),
    /// `alpha^(3/2)`, the exact decay rate of the linear form.
    AlphaThreeHalves,
}

impl ReductionBase {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "alpha^(3/2)" | "alpha^1.5" | "alpha32" => Ok(ReductionBase::AlphaThreeHalves),
            _ => {
                parse_decimal(s)?;
                Ok(ReductionBase::Fixed(s.to_string()))
            }
        }
    }

    pub fn value(&self, consts: &BinetConstants) -> Result<CertifiedReal> {
        match self {
            ReductionBase::Fixed(s) => Ok(CertifiedReal::from_rational(parse_decimal(s)?)
                .with_policy(consts.alpha.policy())),
            ReductionBase::AlphaThreeHalves => consts.alpha.powi(3).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub m1_max: u64,
    pub n1_max: u64,
    pub m2_check_max: u64,
    #[serde(with = "biguint_str")]
    pub m_reduction: BigUint,
    pub a: String,
    pub b: ReductionBase,
    pub convergent_budget: usize,
    pub jobs: usize,
    pub factoring: FactoringEffort,
    pub policy: PrecisionPolicy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            m1_max: 100,
            n1_max: 69,
            m2_check_max: 100,
            m_reduction: BigUint::from(10u64.pow(16)),
            a: "14.8".into(),
            b: ReductionBase::Fixed("2.4".into()),
            convergent_budget: 8,
            jobs: 1,
            factoring: FactoringEffort::default(),
            policy: PrecisionPolicy::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m1_max == 0 || self.n1_max == 0 || self.m2_check_max == 0 {
            return Err(Error::InvalidInput("search ranges must be positive".into()));
        }
        if self.m_reduction.is_zero() || self.convergent_budget == 0 {
            return Err(Error::InvalidInput("M and the convergent budget must be positive".into()));
        }
        let a = parse_decimal(&self.a)?;
        if a <= BigRational::zero() {
            return Err(Error::InvalidInput(format!("A = {} must be positive", self.a)));
        }
        Ok(())
    }

    /// `kappa = log delta / log alpha`, `mu = chi`, with this config's `M`,
    /// `A` and `B`.
    pub fn reduction_instance(&self, consts: &BinetConstants, delta: &CertifiedReal) -> Result<ReductionInstance> {
        Ok(ReductionInstance {
            kappa: delta.log()?.div(&consts.log_alpha)?,
            mu: consts.chi.clone(),
            m_bound: self.m_reduction.clone(),
            a: CertifiedReal::from_rational(parse_decimal(&self.a)?).with_policy(self.policy),
            b: self.b.value(consts)?,
        })
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
    }
}

/// A solution of `P^epsilon_{n1}(X1) = T_{m1}` with `n1 >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SmallSolution {
    pub epsilon: PellSign,
    pub n1: u64,
    pub m1: u64,
    #[serde(with = "biguint_str")]
    pub x1: BigUint,
}

fn p_eval(sign: PellSign, n: u64, x: &BigUint) -> BigInt {
    match sign {
        PellSign::Plus => BigInt::from(p_plus(n, x)),
        PellSign::Minus => p_minus(n, x),
    }
}

/// The `X >= 1` with `P^sign_n(X) = target`, if any. Both polynomials are
/// strictly increasing on `X >= 1` (for `n >= 1`).
pub fn integer_root(sign: PellSign, n: u64, target: &BigUint) -> Option<BigUint> {
    let t = BigInt::from(target.clone());
    let mut lo = BigUint::one();
    // P_n(X) >= X^n / 2, so X <= (2T)^(1/n)
    let mut hi = (target * 2u32).nth_root(n as u32) + 2u32;
    if p_eval(sign, n, &lo) > t || p_eval(sign, n, &hi) < t {
        return None;
    }
    while lo <= hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        match p_eval(sign, n, &mid).cmp(&t) {
            std::cmp::Ordering::Equal => return Some(mid),
            std::cmp::Ordering::Less => lo = mid + 1u32,
            std::cmp::Ordering::Greater => {
                if mid.is_zero() {
                    return None;
                }
                hi = mid - 1u32;
            }
        }
    }
    None
}

/// Every `(epsilon, n1, m1, X1)` with `2 <= n1 <= n1_max`,
/// `n1 < m1 <= m1_max` and `P^epsilon_{n1}(X1) = T_{m1}`.
pub fn solve_small(config: &SearchConfig) -> Vec<SmallSolution> {
    let cache = TribCache::new(config.m1_max as usize);
    let mut out = Vec::new();
    for sign in [PellSign::Plus, PellSign::Minus] {
        for n1 in 2..=config.n1_max {
            for m1 in (n1 + 1)..=config.m1_max {
                let t = &cache.values()[m1 as usize];
                if let Some(x1) = integer_root(sign, n1, t) {
                    out.push(SmallSolution { epsilon: sign, n1, m1, x1 });
                }
            }
        }
    }
    out.sort();
    out
}

/// Pairs `(n, m)` with `X_n = T_m`, `n >= 1`, `1 <= m <= m_max`, for the
/// sequence seeded by `X1` and `epsilon`. Exact integer arithmetic only.
pub fn membership_pairs(x1: &BigUint, epsilon: PellSign, cache: &TribCache) -> Vec<(u64, u64)> {
    let index = cache.index();
    let top = &cache.values()[cache.max_index()];
    let mut pairs = Vec::new();
    let mut prev = BigUint::zero();
    for (n, x) in x_sequence(x1, epsilon).enumerate().skip(1) {
        if &x > top || (n > 1 && x <= prev) {
            break;
        }
        if let Some(ms) = index.get(&x) {
            pairs.extend(ms.iter().map(|&m| (n as u64, m as u64)));
        }
        prev = x;
    }
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    /// The reduction excludes every `m2 > m2_check_max` and the window was
    /// searched exhaustively.
    Verified,
    /// No convergent within the budget gave a positive `xi`.
    ReductionIncomplete,
    /// The reduction succeeded but its bound exceeds `m2_check_max`.
    ReductionInsufficient,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionSummary {
    pub method: ReductionMethod,
    pub index: usize,
    pub q: String,
    pub xi_lower: f64,
    pub log_ratio: f64,
    pub k_bound: u64,
    /// Largest `m2` not excluded.
    pub m2_max: u64,
    pub tried: usize,
}

impl From<&ReductionOutcome> for ReductionSummary {
    fn from(o: &ReductionOutcome) -> Self {
        ReductionSummary {
            method: o.method,
            index: o.index,
            q: o.q.to_string(),
            xi_lower: o.xi_lower,
            log_ratio: o.log_ratio,
            k_bound: o.k_bound,
            m2_max: o.k_bound.saturating_sub(1),
            tried: o.tried.len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionRecord {
    pub epsilon: PellSign,
    #[serde(with = "biguint_str")]
    pub x1: BigUint,
    /// Squarefree `d` with `X1^2 - epsilon = d Y1^2`; `None` when factoring
    /// did not finish.
    #[serde(serialize_with = "opt_big")]
    pub d: Option<BigUint>,
    #[serde(serialize_with = "opt_big")]
    pub y1: Option<BigUint>,
    /// Pairs `(n, m)` with `X_n = T_m`; `n` is non-decreasing and `m`
    /// strictly increasing (`X_1 = 1 = T_1 = T_2` repeats `n`).
    pub pairs: Vec<(u64, u64)>,
    pub reduction: Option<ReductionSummary>,
    pub status: RecordStatus,
}

fn opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.serialize_some(&n.to_string()),
        None => s.serialize_str("unresolved"),
    }
}

impl SolutionRecord {
    pub fn is_exceptional(&self) -> bool {
        self.pairs.len() >= 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedInstance {
    pub epsilon: PellSign,
    pub m1: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    /// Number of `(epsilon, m1)` instances considered.
    pub instances: usize,
    pub records: Vec<SolutionRecord>,
    pub skipped: Vec<SkippedInstance>,
}

impl SweepReport {
    pub fn all_verified(&self) -> bool {
        self.records.iter().all(|r| r.status == RecordStatus::Verified)
    }
}

/// Builds the record for the sequence with first term `x1`: membership
/// pairs, the reduction bounding `m2`, and `d` when factoring completes.
pub fn build_record(
    epsilon: PellSign,
    x1: &BigUint,
    consts: &BinetConstants,
    config: &SearchConfig,
    cache: &TribCache,
) -> Result<SolutionRecord> {
    let disc = BigInt::from(x1 * x1) - BigInt::from(epsilon.value());
    let disc = disc
        .to_biguint()
        .filter(|v| !v.is_zero())
        .ok_or_else(|| Error::InvalidInput(format!("{x1}^2 - ({epsilon}) is not positive")))?;
    let delta = delta_from_x1(x1, epsilon, config.policy)?;
    let instance = config.reduction_instance(consts, &delta)?;
    // A second solution has n2 > n1 >= 1, so the homogeneous form applies
    // whenever the standard one cannot decide.
    let outcome = reduce_with_fallback(&instance, config.convergent_budget);
    let (reduction, status) = match outcome {
        Ok(out) => {
            let summary = ReductionSummary::from(&out);
            let status = if summary.m2_max <= config.m2_check_max {
                RecordStatus::Verified
            } else {
                RecordStatus::ReductionInsufficient
            };
            (Some(summary), status)
        }
        Err(Error::ReductionFailed { .. }) => (None, RecordStatus::ReductionIncomplete),
        Err(e) => return Err(e),
    };
    let dec = sqfree_decompose(&disc, config.factoring);
    let (d, y1) = if dec.complete { (Some(dec.d), Some(dec.y)) } else { (None, None) };
    Ok(SolutionRecord {
        epsilon,
        x1: x1.clone(),
        d,
        y1,
        pairs: membership_pairs(x1, epsilon, cache),
        reduction,
        status,
    })
}

fn sweep_candidates(
    config: &SearchConfig,
    cache: &TribCache,
    extra: &[(PellSign, BigUint)],
) -> (usize, Vec<(PellSign, BigUint)>, Vec<SkippedInstance>) {
    let mut seen: BTreeMap<(PellSign, BigUint), ()> = BTreeMap::new();
    let mut order = Vec::new();
    let mut skipped = Vec::new();
    let mut instances = 0;
    for sign in [PellSign::Plus, PellSign::Minus] {
        for m1 in 1..=config.m1_max {
            instances += 1;
            let t = cache.values()[m1 as usize].clone();
            let disc = BigInt::from(&t * &t) - BigInt::from(sign.value());
            if disc <= BigInt::zero() {
                skipped.push(SkippedInstance {
                    epsilon: sign,
                    m1,
                    reason: format!("T_{m1}^2 - ({sign}) = {disc} admits no Pell equation"),
                });
                continue;
            }
            let disc = disc.to_biguint().expect("positive");
            let r = disc.sqrt();
            if &r * &r == disc {
                skipped.push(SkippedInstance {
                    epsilon: sign,
                    m1,
                    reason: format!("T_{m1}^2 - ({sign}) = {disc} is a perfect square"),
                });
                continue;
            }
            if seen.insert((sign, t.clone()), ()).is_none() {
                order.push((sign, t));
            }
        }
    }
    for (sign, x1) in extra {
        if seen.insert((*sign, x1.clone()), ()).is_none() {
            order.push((*sign, x1.clone()));
        }
    }
    (instances, order, skipped)
}

fn run_records(
    candidates: &[(PellSign, BigUint)],
    consts: &BinetConstants,
    config: &SearchConfig,
    cache: &TribCache,
) -> Result<Vec<SolutionRecord>> {
    config.pool()?.install(|| {
        candidates
            .par_iter()
            .map(|(sign, x1)| build_record(*sign, x1, consts, config, cache))
            .collect()
    })
}

/// The sweep over `n1 = 1`, `X1 = T_{m1}` for both signs and
/// `1 <= m1 <= m1_max`. Instances sharing `X1` (as `T_1 = T_2`) share one
/// record. The report order is deterministic regardless of `jobs`.
pub fn trivial_case_sweep(config: &SearchConfig, consts: &BinetConstants) -> Result<SweepReport> {
    config.validate()?;
    let cache = TribCache::new(config.m1_max.max(config.m2_check_max) as usize);
    let (instances, candidates, skipped) = sweep_candidates(config, &cache, &[]);
    let check_cache = TribCache::new(config.m2_check_max as usize);
    let records = run_records(&candidates, consts, config, &check_cache)?;
    Ok(SweepReport { instances, records, skipped })
}

/// `floor(m1 log alpha / log delta)`, the largest `n1` compatible with
/// `n c_1 log delta <= m`.
pub fn n1_bound_from_m1(m1: u64, delta: &CertifiedReal, consts: &BinetConstants) -> Result<u64> {
    let v = consts.log_alpha.mul_int(m1).div(&delta.log()?)?;
    v.floor()?
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("n1 bound out of range".into()))
}

#[derive(Debug, Clone, Serialize)]
pub struct M1Cutoff {
    pub a_max: u64,
    pub a_max_index: usize,
    /// `(a_max + 2) * 18`, so that `alpha^(3 m1 / 2) < K n2^2 / log alpha`.
    pub k_factor: u64,
    /// Upper estimate of the real cutoff.
    pub cutoff_real: f64,
    pub cutoff: u64,
    /// `alpha^150 > 6e33`, which makes the convergent criterion applicable
    /// for every `m1 > 100`.
    pub aux_inequality: bool,
}

/// Combines `|x chi - y| > 1 / ((a_max + 2) x)` for `x < 10^16` with the
/// upper bound `18 n2 / (alpha^(3 m1 / 2) log alpha)`. `a_max_override`
/// replaces the observed maximal partial quotient.
pub fn m1_cutoff_via_cf(
    consts: &BinetConstants,
    n2_max: &BigRational,
    a_max_override: Option<u64>,
) -> Result<M1Cutoff> {
    let policy = consts.alpha.policy();
    let x_max = n2_max.ceil().to_integer();
    let cf = expand_until_q_exceeds(&consts.chi, &x_max)?;
    let k = cf.first_index_with_q_above(&x_max).expect("expanded past x_max");
    let (a_obs, idx) = cf.max_partial_quotient(k)?;
    let c = cf.approx_lower_bound(&x_max)?;
    let a_from_c = (c.recip().to_integer() - 2u32).to_u64().unwrap_or(u64::MAX);
    let a_max = a_max_override.unwrap_or(a_from_c);
    let k_factor = (a_max + 2) * 18;
    // m1 < (2/3) log(K n2^2 / log alpha) / log alpha
    let n2 = CertifiedReal::from_rational(n2_max.clone()).with_policy(policy);
    let rhs = CertifiedReal::from_int(k_factor)
        .with_policy(policy)
        .mul(&n2.powi(2))
        .div(&consts.log_alpha)?
        .log()?
        .mul(&CertifiedReal::from_ratio(2, 3))
        .div(&consts.log_alpha)?;
    let cutoff = rhs.floor()?.to_u64().unwrap_or(u64::MAX);
    let aux = consts
        .alpha
        .powi(150)
        .gt_rational(&parse_decimal("6e33")?)?;
    Ok(M1Cutoff {
        a_max: if a_max_override.is_some() { a_max } else { a_obs.to_u64().unwrap_or(u64::MAX) },
        a_max_index: idx,
        k_factor,
        cutoff_real: rhs.upper().to_f64().unwrap_or(f64::NAN),
        cutoff,
        aux_inequality: aux,
    })
}

/// One sequence meeting the Tribonacci numbers at least twice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExceptionalSet {
    pub epsilon: PellSign,
    #[serde(with = "biguint_str")]
    pub d: BigUint,
    pub pairs: Vec<(u64, u64)>,
}

/// The exceptional sequences: `d = 3` with `(1,3), (2,5)` and `d = 2` with
/// `(1,1), (1,2), (3,5)`.
pub fn expected_exceptions() -> Vec<ExceptionalSet> {
    let mut v = vec![
        ExceptionalSet {
            epsilon: PellSign::Plus,
            d: BigUint::from(3u32),
            pairs: vec![(1, 3), (2, 5)],
        },
        ExceptionalSet {
            epsilon: PellSign::Minus,
            d: BigUint::from(2u32),
            pairs: vec![(1, 1), (1, 2), (3, 5)],
        },
    ];
    v.sort();
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub label: String,
    pub epsilon: PellSign,
    #[serde(with = "biguint_str")]
    pub x1: BigUint,
    pub reduction: ReductionSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cutoffs {
    pub m1: M1Cutoff,
    /// Largest `n1` allowed by `m1 <= m1_max` and `delta >= 1 + sqrt 2`.
    pub n1_bound: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub config: SearchConfig,
    pub bounds: DerivedBounds,
    pub cutoffs: Cutoffs,
    pub nontrivial: Vec<SmallSolution>,
    pub records: Vec<SolutionRecord>,
    pub skipped: Vec<SkippedInstance>,
    pub instances: usize,
    pub certificates: Vec<Certificate>,
    pub exceptional: Vec<ExceptionalSet>,
    pub assumptions: Vec<String>,
    pub matches_theorem: bool,
    #[serde(serialize_with = "biguint_vec_str::serialize")]
    pub checked_tribonacci_window: Vec<BigUint>,
}

/// Runs every stage: the bound chain, the `m1` and `n1` cutoffs, the small
/// search, the sweep, and the reductions for the nontrivial sequences.
pub fn verify_theorem(config: &SearchConfig) -> Result<TheoremReport> {
    config.validate()?;
    let consts = BinetConstants::new(config.policy)?;
    let bounds = derive_lemma_jb0(&consts, config.policy)?;
    bounds.ensure_certified()?;

    let m1 = m1_cutoff_via_cf(&consts, &bounds.n2_final_value()?, None)?;
    if m1.cutoff >= config.m1_max || !m1.aux_inequality {
        return Err(Error::Discrepancy(format!(
            "m1 cutoff {} does not fall below m1_max = {}",
            m1.cutoff, config.m1_max
        )));
    }
    let one = CertifiedReal::from_int(1).with_policy(config.policy);
    let delta_min = CertifiedReal::from_int(2).with_policy(config.policy).sqrt()?.add(&one);
    let n1_bound = n1_bound_from_m1(config.m1_max, &delta_min, &consts)?;
    if n1_bound > config.n1_max {
        return Err(Error::Discrepancy(format!(
            "n1 bound {n1_bound} exceeds n1_max = {}",
            config.n1_max
        )));
    }

    let nontrivial = solve_small(config);
    let cache = TribCache::new(config.m1_max.max(config.m2_check_max) as usize);
    let extra: Vec<_> = nontrivial.iter().map(|s| (s.epsilon, s.x1.clone())).collect();
    let (instances, candidates, skipped) = sweep_candidates(config, &cache, &extra);
    let check_cache = TribCache::new(config.m2_check_max as usize);
    let records = run_records(&candidates, &consts, config, &check_cache)?;

    let mut certificates = Vec::new();
    for s in &nontrivial {
        let rec = records
            .iter()
            .find(|r| r.epsilon == s.epsilon && r.x1 == s.x1)
            .expect("every nontrivial X1 has a record");
        let reduction = rec.reduction.clone().ok_or_else(|| {
            Error::Discrepancy(format!("no reduction certificate for X1 = {}", s.x1))
        })?;
        certificates.push(Certificate {
            label: format!("P^{}_{}(X1) = T_{}", s.epsilon, s.n1, s.m1),
            epsilon: s.epsilon,
            x1: s.x1.clone(),
            reduction,
        });
    }

    let mut exceptional: Vec<ExceptionalSet> = records
        .iter()
        .filter(|r| r.is_exceptional())
        .map(|r| ExceptionalSet {
            epsilon: r.epsilon,
            d: r.d.clone().unwrap_or_default(),
            pairs: r.pairs.clone(),
        })
        .collect();
    exceptional.sort();
    let matches_theorem = exceptional == expected_exceptions()
        && records.iter().all(|r| r.status == RecordStatus::Verified);

    Ok(TheoremReport {
        config: config.clone(),
        bounds,
        cutoffs: Cutoffs { m1, n1_bound },
        nontrivial,
        records,
        skipped,
        instances,
        certificates,
        exceptional,
        assumptions: vec![
            "X1 = T_m1 is taken as the fundamental solution, so delta = T_m1 + sqrt(T_m1^2 - epsilon)".into(),
            "a second solution with m2 > m2_check_max obeys the linear-form bound with A and B as configured".into(),
        ],
        matches_theorem,
        checked_tribonacci_window: vec![
            check_cache.values()[1].clone(),
            check_cache.values()[check_cache.max_index()].clone(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(e: PellSign, n1: u64, m1: u64, x1: u32) -> SmallSolution {
        SmallSolution { epsilon: e, n1, m1, x1: BigUint::from(x1) }
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(PellSign::Plus, 2, &BigUint::from(7u32)), Some(BigUint::from(2u32)));
        assert_eq!(integer_root(PellSign::Plus, 2, &BigUint::from(2u32)), None);
        assert_eq!(integer_root(PellSign::Minus, 3, &BigUint::from(7u32)), Some(BigUint::one()));
    }

    #[test]
    fn small_search_defaults() {
        let hits = solve_small(&SearchConfig::default());
        let mut expected = vec![small(PellSign::Plus, 2, 5, 2), small(PellSign::Minus, 3, 5, 1)];
        expected.sort();
        assert_eq!(hits, expected);
    }

    #[test]
    fn membership_for_exceptional_sequences() {
        let cache = TribCache::new(100);
        assert_eq!(membership_pairs(&BigUint::one(), PellSign::Minus, &cache), vec![(1, 1), (1, 2), (3, 5)]);
        assert_eq!(membership_pairs(&BigUint::from(2u32), PellSign::Plus, &cache), vec![(1, 3), (2, 5)]);
        assert_eq!(membership_pairs(&BigUint::from(10609u32), PellSign::Plus, &cache), vec![(1, 17)]);
    }

    #[test]
    fn n1_bounds() {
        let consts = BinetConstants::new(PrecisionPolicy::default()).unwrap();
        let d2 = CertifiedReal::from_int(2).sqrt().unwrap().add(&CertifiedReal::from_int(1));
        let d1 = CertifiedReal::from_int(3).sqrt().unwrap().add(&CertifiedReal::from_int(2));
        assert_eq!(n1_bound_from_m1(100, &d2, &consts).unwrap(), 69);
        assert!(n1_bound_from_m1(100, &d1, &consts).unwrap() < 69);
        // (n, m) = (3, 5) sits inside n c1 log delta <= m <= n c1 log delta + 2
        let lower = d2.log().unwrap().mul_int(3).div(&consts.log_alpha).unwrap();
        assert!(lower.to_f64() <= 5.0 && 5.0 <= lower.to_f64() + 2.0);
    }

    #[test]
    fn m1_cutoff() {
        let consts = BinetConstants::new(PrecisionPolicy::default()).unwrap();
        let n2 = parse_decimal("1e16").unwrap();
        let c = m1_cutoff_via_cf(&consts, &n2, None).unwrap();
        assert_eq!((c.a_max, c.a_max_index, c.k_factor), (22, 7, 432));
        assert_eq!(c.cutoff, 87);
        assert!((c.cutoff_real - 87.8).abs() < 0.05);
        assert!(c.aux_inequality);
        let weak = m1_cutoff_via_cf(&consts, &n2, Some(100)).unwrap();
        assert!(weak.cutoff > c.cutoff && weak.cutoff < 100);
    }
}
