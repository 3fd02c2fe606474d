//! Certified continued fractions of irrational reals.
//!
//! Both endpoints of the target's enclosure are expanded in lockstep and a
//! partial quotient is accepted only when the two floors coincide. When they
//! disagree the target is refined and the expansion resumes; quotients once
//! accepted never change.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::realnum::CertifiedReal;
use crate::serde_util::bigint_str;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Convergent {
    #[serde(with = "bigint_str")]
    pub p: BigInt,
    #[serde(with = "bigint_str")]
    pub q: BigInt,
}

#[derive(Debug, Clone)]
pub struct CFExpansion {
    target: CertifiedReal,
    quotients: Vec<BigInt>,
    convergents: Vec<Convergent>,
}

/// Expands the interval `[lo, hi]` until the floors of the complete
/// quotients disagree, an endpoint becomes an integer, or `limit` quotients
/// have been produced.
fn interval_quotients(lo: &BigRational, hi: &BigRational, limit: usize) -> Vec<BigInt> {
    // endpoints as unreduced fractions n / d with d > 0
    let mut a = (lo.numer().clone(), lo.denom().clone());
    let mut b = (hi.numer().clone(), hi.denom().clone());
    let mut out = Vec::new();
    while out.len() < limit {
        let (fa, ra) = a.0.div_mod_floor(&a.1);
        let (fb, rb) = b.0.div_mod_floor(&b.1);
        if fa != fb || ra.is_zero() || rb.is_zero() {
            break;
        }
        out.push(fa);
        a = (std::mem::take(&mut a.1), ra);
        b = (std::mem::take(&mut b.1), rb);
    }
    out
}

impl CFExpansion {
    /// Empty expansion of `target`; quotients are added by the `extend_*`
    /// methods.
    pub fn new(target: CertifiedReal) -> Self {
        CFExpansion {
            target,
            quotients: Vec::new(),
            convergents: Vec::new(),
        }
    }

    pub fn target(&self) -> &CertifiedReal {
        &self.target
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    pub fn convergents(&self) -> &[Convergent] {
        &self.convergents
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn convergent(&self, k: usize) -> Option<&Convergent> {
        self.convergents.get(k)
    }

    fn push(&mut self, a: BigInt) {
        let k = self.convergents.len();
        let (p, q) = match k {
            0 => (a.clone(), BigInt::one()),
            1 => {
                let c0 = &self.convergents[0];
                (&a * &c0.p + 1, a.clone())
            }
            _ => {
                let (c1, c2) = (&self.convergents[k - 1], &self.convergents[k - 2]);
                (&a * &c1.p + &c2.p, &a * &c1.q + &c2.q)
            }
        };
        self.quotients.push(a);
        self.convergents.push(Convergent { p, q });
    }

    /// Adds quotients until `done` holds, refining the target whenever the
    /// current enclosure cannot decide the next floor.
    fn extend_while(&mut self, done: impl Fn(&Self) -> bool) -> Result<()> {
        while !done(self) {
            if self.target.is_exact() {
                return Err(Error::InsufficientPrecision {
                    op: "cf quotient (target is rational)",
                    bits: self.target.bits(),
                });
            }
            let fresh = interval_quotients(&self.target.lower(), &self.target.upper(), usize::MAX);
            let known = self.quotients.len();
            if fresh.len() > known {
                if fresh[..known] != self.quotients[..] {
                    return Err(Error::Discrepancy(
                        "refined enclosure changed an accepted partial quotient".into(),
                    ));
                }
                for a in fresh.into_iter().skip(known) {
                    if done(self) {
                        return Ok(());
                    }
                    self.push(a);
                }
                continue;
            }
            let bits = self.target.bits();
            let goal = self.target.err() / BigRational::from_integer(BigInt::one() << bits.max(64));
            self.target = self
                .target
                .refine(&goal)
                .map_err(|_| Error::InsufficientPrecision { op: "cf quotient", bits })?;
        }
        Ok(())
    }

    /// Extends until at least `n` quotients are known.
    pub fn extend_terms(&mut self, n: usize) -> Result<()> {
        self.extend_while(|e| e.len() >= n)
    }

    /// Extends until the last denominator exceeds `q_min`.
    pub fn extend_until_q_exceeds(&mut self, q_min: &BigInt) -> Result<()> {
        self.extend_while(|e| e.convergents.last().is_some_and(|c| &c.q > q_min))
    }

    /// Smallest index whose denominator exceeds `q`, if computed.
    pub fn first_index_with_q_above(&self, q: &BigInt) -> Option<usize> {
        self.convergents.iter().position(|c| &c.q > q)
    }

    /// Largest `a_i` over `0 <= i <= k_max` and the first index attaining it.
    pub fn max_partial_quotient(&self, k_max: usize) -> Result<(BigInt, usize)> {
        if self.quotients.len() <= k_max {
            return Err(Error::ExpansionTooShort(format!(
                "need {} quotients, have {}",
                k_max + 1,
                self.quotients.len()
            )));
        }
        let mut best = (self.quotients[0].clone(), 0);
        for (i, a) in self.quotients.iter().enumerate().take(k_max + 1) {
            if a > &best.0 {
                best = (a.clone(), i);
            }
        }
        Ok(best)
    }

    /// `c = 1 / (a_max + 2)` such that `|x theta - y| > c / x` for every
    /// `1 <= x <= x_max` and every integer `y`. The maximum runs over
    /// `a_1..=a_K` where `q_K` is the first denominator above `x_max`.
    pub fn approx_lower_bound(&self, x_max: &BigInt) -> Result<BigRational> {
        if !x_max.is_positive() {
            return Err(Error::InvalidInput("x_max must be positive".into()));
        }
        let k = self.first_index_with_q_above(x_max).ok_or_else(|| {
            Error::ExpansionTooShort(format!("no computed denominator exceeds {x_max}"))
        })?;
        let a_max = self.quotients[1..=k.max(1).min(self.quotients.len() - 1)]
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigInt::one);
        Ok(BigRational::new(BigInt::one(), a_max + 2))
    }

    /// Whether `y / x` in lowest terms is one of the computed convergents.
    pub fn legendre_check(&self, x: &BigInt, y: &BigInt) -> bool {
        if !x.is_positive() {
            return false;
        }
        let g = x.gcd(y);
        let (x, y) = (x / &g, y / &g);
        self.convergents.iter().any(|c| c.q == x && c.p == y)
    }

    /// Certifies `|target - p_k / q_k| < 1 / q_k^2`.
    pub fn certify_convergent(&self, k: usize) -> Result<bool> {
        let c = self
            .convergent(k)
            .ok_or_else(|| Error::ExpansionTooShort(format!("no convergent {k}")))?;
        let approx = CertifiedReal::from_rational(BigRational::new(c.p.clone(), c.q.clone()));
        let diff = self.target.sub(&approx);
        let bound = BigRational::new(BigInt::one(), &c.q * &c.q);
        let abs = match diff.sign()? {
            std::cmp::Ordering::Less => diff.neg(),
            _ => diff,
        };
        abs.lt_rational(&bound)
    }
}

/// Expansion of `target` whose final denominator exceeds `q_min`.
pub fn expand_until_q_exceeds(target: &CertifiedReal, q_min: &BigInt) -> Result<CFExpansion> {
    let mut e = CFExpansion::new(target.clone());
    e.extend_until_q_exceeds(q_min)?;
    Ok(e)
}

/// First `n` partial quotients of `target`.
pub fn expand_terms(target: &CertifiedReal, n: usize) -> Result<CFExpansion> {
    let mut e = CFExpansion::new(target.clone());
    e.extend_terms(n)?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realnum::PrecisionPolicy;

    fn sqrt(n: i64) -> CertifiedReal {
        CertifiedReal::from_int(n).sqrt().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classical_quadratic_expansions() {
        let e = expand_terms(&sqrt(2), 25).unwrap();
        assert_eq!(e.quotients()[..5], ints(&[1, 2, 2, 2, 2])[..]);
        assert!(e.quotients()[1..25].iter().all(|a| a == &BigInt::from(2)));
        let e = expand_terms(&sqrt(7), 21).unwrap();
        assert_eq!(e.quotients()[..9], ints(&[2, 1, 1, 1, 4, 1, 1, 1, 4])[..]);
        assert_eq!(e.max_partial_quotient(0).unwrap(), (BigInt::from(2), 0));
    }

    #[test]
    fn sqrt2_max_quotient() {
        let e = expand_terms(&sqrt(2), 11).unwrap();
        assert_eq!(e.max_partial_quotient(10).unwrap(), (BigInt::from(2), 1));
        assert!(e.max_partial_quotient(11).is_err());
    }

    #[test]
    fn golden_ratio_bound() {
        let phi = sqrt(5).add(&CertifiedReal::from_int(1)).div(&CertifiedReal::from_int(2)).unwrap();
        let e = expand_until_q_exceeds(&phi, &BigInt::from(10_000)).unwrap();
        assert_eq!(
            e.approx_lower_bound(&BigInt::from(5000)).unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(3))
        );
        assert!(e.approx_lower_bound(&BigInt::from(10i64.pow(9))).is_err());
    }

    #[test]
    fn convergent_law_and_legendre() {
        let e = expand_until_q_exceeds(&sqrt(3), &BigInt::from(10i64.pow(12))).unwrap();
        for k in 0..e.len() {
            assert!(e.certify_convergent(k).unwrap());
            let c = e.convergent(k).unwrap();
            assert!(c.p.gcd(&c.q).is_one());
            assert!(e.legendre_check(&c.q, &c.p));
            assert!(e.legendre_check(&(&c.q * 3), &(&c.p * 3)));
        }
        let c = e.convergent(10).unwrap();
        assert!(!e.legendre_check(&(&c.q + 1), &c.p));
    }

    #[test]
    fn rational_target_is_rejected() {
        let r = expand_terms(&CertifiedReal::from_ratio(7, 3), 5);
        assert!(matches!(r, Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn stable_under_stricter_policy() {
        let tight = PrecisionPolicy::new(1024, 8192, 2).unwrap();
        let a = expand_terms(&sqrt(11), 30).unwrap();
        let b = expand_terms(&CertifiedReal::from_int(11).with_policy(tight).sqrt().unwrap(), 30).unwrap();
        assert_eq!(a.quotients()[..30], b.quotients()[..30]);
    }

    fn log_ratio(delta: CertifiedReal, consts: &crate::tribonacci::BinetConstants) -> CertifiedReal {
        delta.log().unwrap().div(&consts.log_alpha).unwrap()
    }

    #[test]
    fn published_denominators() {
        let consts = crate::tribonacci::BinetConstants::new(PrecisionPolicy::default()).unwrap();
        let e = expand_until_q_exceeds(&consts.chi, &BigInt::from(10u64.pow(16))).unwrap();
        assert_eq!(e.quotients()[..10], ints(&[1, 1, 1, 1, 6, 1, 1, 22, 1, 9])[..]);
        assert_eq!(e.convergent(33).unwrap().q, BigInt::from(4_999_601_640_630_812u64));
        assert_eq!(e.convergent(34).unwrap().q, BigInt::from(24_351_826_693_265_967u64));
        assert_eq!(e.len(), 35);
        assert_eq!(e.max_partial_quotient(34).unwrap(), (BigInt::from(22), 7));
        assert_eq!(
            e.approx_lower_bound(&BigInt::from(10u64.pow(16))).unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(24))
        );

        let q_min = BigInt::from(6 * 10u64.pow(16));
        let d1 = sqrt(3).add(&CertifiedReal::from_int(2));
        let e = expand_until_q_exceeds(&log_ratio(d1, &consts), &q_min).unwrap();
        assert_eq!(e.convergent(31).unwrap().q, BigInt::from(156_827_205_418_169_727u64));
        let d2 = sqrt(2).add(&CertifiedReal::from_int(1));
        let e = expand_until_q_exceeds(&log_ratio(d2, &consts), &q_min).unwrap();
        assert_eq!(e.convergent(28).unwrap().q, BigInt::from(98_827_474_195_551_603u64));
    }

    #[test]
    fn chi_bound_brute_force() {
        // min over x <= 10^4 of x * ||x chi|| stays above 1/24
        let consts = crate::tribonacci::BinetConstants::new(PrecisionPolicy::default()).unwrap();
        let chi = consts.chi.to_f64();
        let worst = (1..=10_000)
            .map(|x| {
                let v = x as f64 * chi;
                x as f64 * (v - v.round()).abs()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(worst > 1.0 / 24.0, "{worst}");
    }
}
