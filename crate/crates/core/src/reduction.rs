//! Baker-Davenport reduction.
//!
//! For a convergent denominator `Q > 6M` of `kappa` with
//! `xi = ||mu Q|| - M ||kappa Q|| > 0`, the inequality
//! `0 < |m kappa - n + mu| < A B^-k` has no solution in positive integers
//! with `m <= M` and `k >= log(A Q / xi) / log B`.
//!
//! When `mu` is within a tiny `eta` of `-kappa` modulo 1 every such `xi` is
//! negative. [`reduce_homogeneous`] handles that case: the form becomes
//! `(m - 1) kappa - n' + eta`, and for `0 < x < q_j` the best-approximation
//! property gives `||x kappa|| >= ||q_{j-1} kappa||`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::contfrac::CFExpansion;
use crate::error::{Error, Result};
use crate::realnum::CertifiedReal;
use crate::serde_util::{bigint_str, biguint_str};

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub kappa: CertifiedReal,
    pub mu: CertifiedReal,
    /// Bound `M` on `m`.
    pub m_bound: BigUint,
    pub a: CertifiedReal,
    pub b: CertifiedReal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XiStatus {
    Positive,
    NonPositive,
    /// The sign could not be decided before the precision cap.
    Undecided,
}

/// A convergent that was tried, with the enclosure of `xi` found for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriedConvergent {
    pub index: usize,
    #[serde(with = "bigint_str")]
    pub q: BigInt,
    pub xi_lower: f64,
    pub xi_upper: f64,
    pub status: XiStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionMethod {
    /// `xi = ||mu Q|| - M ||kappa Q|| > 0`.
    Inhomogeneous,
    /// `||q kappa|| - ||kappa + mu|| > 0`, valid for `2 <= m <= M`.
    Homogeneous,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionOutcome {
    pub method: ReductionMethod,
    /// Index of the convergent used.
    pub index: usize,
    #[serde(with = "bigint_str")]
    pub q: BigInt,
    #[serde(skip)]
    pub xi: CertifiedReal,
    /// Certified lower bound for `xi`.
    pub xi_lower: f64,
    /// `log(A Q / xi) / log B`, an upper estimate.
    pub log_ratio: f64,
    /// Smallest integer `k` that is excluded; every `k >= k_bound` is.
    pub k_bound: u64,
    pub tried: Vec<TriedConvergent>,
}

/// The claim established by a successful reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionStatement {
    #[serde(with = "biguint_str")]
    pub m_max: BigUint,
    pub k_min: u64,
    pub a: String,
    pub b: String,
    pub text: String,
}

impl ReductionInstance {
    fn validate(&self) -> Result<()> {
        if self.m_bound < BigUint::one() {
            return Err(Error::InvalidInput("M must be at least 1".into()));
        }
        if self.a.sign()? != Ordering::Greater {
            return Err(Error::InvalidInput(format!("A = {} must be positive", self.a)));
        }
        if !self.b.gt_rational(&BigRational::one())? {
            return Err(Error::InvalidInput(format!("B = {} must exceed 1", self.b)));
        }
        if self.kappa.sign()? == Ordering::Equal {
            return Err(Error::InvalidInput("kappa must be nonzero".into()));
        }
        Ok(())
    }

    /// `||mu Q|| - M ||kappa Q||` as a refinable real.
    pub fn xi(&self, q: &BigInt) -> CertifiedReal {
        let m = BigInt::from(self.m_bound.clone());
        self.mu
            .mul_int(q.clone())
            .dist_to_nearest_integer()
            .sub(&self.kappa.mul_int(q.clone()).dist_to_nearest_integer().mul_int(m))
    }
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Certifies the sign of `xi`; on success also tightens it so that its
/// error is at most a tenth of its magnitude.
fn classify(xi: &CertifiedReal) -> (XiStatus, CertifiedReal) {
    match xi.sign() {
        Ok(Ordering::Greater) => {
            let tenth = xi.lower() / BigRational::from_integer(BigInt::from(10));
            let tight = xi.refine(&tenth).unwrap_or_else(|_| xi.clone());
            (XiStatus::Positive, tight)
        }
        Ok(_) => (XiStatus::NonPositive, xi.clone()),
        Err(_) => (XiStatus::Undecided, xi.clone()),
    }
}

/// Runs the reduction on successive convergents with `Q > 6M`, trying at
/// most `max_convergents_tried` of them.
pub fn reduce(instance: &ReductionInstance, max_convergents_tried: usize) -> Result<ReductionOutcome> {
    instance.validate()?;
    let six_m = BigInt::from(&instance.m_bound * 6u32);
    let mut cf = CFExpansion::new(instance.kappa.clone());
    cf.extend_until_q_exceeds(&six_m)?;
    let start = cf
        .first_index_with_q_above(&six_m)
        .expect("expansion reaches 6M");
    let mut tried = Vec::new();
    for index in start..start + max_convergents_tried {
        if cf.len() <= index {
            cf.extend_terms(index + 1)?;
        }
        let q = cf.convergent(index).expect("extended").q.clone();
        let (status, xi) = classify(&instance.xi(&q));
        tried.push(TriedConvergent {
            index,
            q: q.clone(),
            xi_lower: to_f64(&xi.lower()),
            xi_upper: to_f64(&xi.upper()),
            status,
        });
        if status != XiStatus::Positive {
            continue;
        }
        let (ratio, k_bound) = k_bound(&instance.a.mul_int(q.clone()).div(&xi)?, &instance.b)?;
        return Ok(ReductionOutcome {
            method: ReductionMethod::Inhomogeneous,
            index,
            q,
            xi_lower: to_f64(&xi.lower()),
            xi,
            log_ratio: to_f64(&ratio.upper()),
            k_bound,
            tried,
        });
    }
    Err(Error::ReductionFailed { tried })
}

/// `log(x) / log(b)` and the smallest integer above it.
fn k_bound(x: &CertifiedReal, b: &CertifiedReal) -> Result<(CertifiedReal, u64)> {
    let ratio = x.log()?.div(&b.log()?)?.refine_bits(40)?;
    let k = ratio
        .upper()
        .ceil()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("k bound does not fit in u64".into()))?;
    Ok((ratio, k))
}

/// Reduction for `2 <= m <= M` when `eta = ||kappa + mu||` is smaller than
/// `||q_{j-1} kappa||`, where `q_j` is the first denominator above `M`.
/// Then `||q_{j-1} kappa|| - eta < A B^-k`, which bounds `k`.
pub fn reduce_homogeneous(instance: &ReductionInstance) -> Result<ReductionOutcome> {
    instance.validate()?;
    let m = BigInt::from(instance.m_bound.clone());
    let mut cf = CFExpansion::new(instance.kappa.clone());
    cf.extend_until_q_exceeds(&m)?;
    let j = cf.first_index_with_q_above(&m).expect("expansion reaches M");
    let index = j.saturating_sub(1);
    let q = cf.convergent(index).expect("extended").q.clone();
    let eta = instance.kappa.add(&instance.mu).dist_to_nearest_integer();
    let gap = instance.kappa.mul_int(q.clone()).dist_to_nearest_integer().sub(&eta);
    let (status, gap) = classify(&gap);
    let attempt = TriedConvergent {
        index,
        q: q.clone(),
        xi_lower: to_f64(&gap.lower()),
        xi_upper: to_f64(&gap.upper()),
        status,
    };
    if status != XiStatus::Positive {
        return Err(Error::ReductionFailed { tried: vec![attempt] });
    }
    let (ratio, k_bound) = k_bound(&instance.a.div(&gap)?, &instance.b)?;
    Ok(ReductionOutcome {
        method: ReductionMethod::Homogeneous,
        index,
        q,
        xi_lower: to_f64(&gap.lower()),
        xi: gap,
        log_ratio: to_f64(&ratio.upper()),
        k_bound,
        tried: vec![attempt],
    })
}

/// [`reduce`], then [`reduce_homogeneous`] if no convergent gave `xi > 0`.
/// Only valid when `m >= 2` is known. The returned `tried` lists both passes.
pub fn reduce_with_fallback(instance: &ReductionInstance, max_convergents_tried: usize) -> Result<ReductionOutcome> {
    match reduce(instance, max_convergents_tried) {
        Err(Error::ReductionFailed { mut tried }) => match reduce_homogeneous(instance) {
            Ok(mut out) => {
                tried.append(&mut out.tried);
                out.tried = tried;
                Ok(out)
            }
            Err(Error::ReductionFailed { tried: mut more }) => {
                tried.append(&mut more);
                Err(Error::ReductionFailed { tried })
            }
            Err(e) => Err(e),
        },
        other => other,
    }
}

/// The exclusion claim proved by `outcome`.
pub fn exclusion_statement(outcome: &ReductionOutcome, instance: &ReductionInstance) -> ExclusionStatement {
    let a = instance.a.to_decimal(6).unwrap_or_else(|_| instance.a.to_string());
    let b = instance.b.to_decimal(6).unwrap_or_else(|_| instance.b.to_string());
    let m_min = match outcome.method {
        ReductionMethod::Inhomogeneous => 1,
        ReductionMethod::Homogeneous => 2,
    };
    let text = format!(
        "no positive integers (m, n, k) with {} <= m <= {} and k >= {} satisfy 0 < |m*kappa - n + mu| < {} * {}^(-k)",
        m_min, instance.m_bound, outcome.k_bound, a, b
    );
    ExclusionStatement {
        m_max: instance.m_bound.clone(),
        k_min: outcome.k_bound,
        a,
        b,
        text,
    }
}
