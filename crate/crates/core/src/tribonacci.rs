//! Tribonacci numbers and the certified constants of their Binet formula.
//!
//! `T_0 = 0, T_1 = T_2 = 1, T_{m+3} = T_{m+2} + T_{m+1} + T_m`. The dominant
//! root `alpha` of `x^3 - x^2 - x - 1` and the coefficient `a` of `alpha^m`
//! drive every estimate downstream. The complex roots are never built; only
//! their common modulus `alpha^(-1/2)` is needed.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::realnum::{CertifiedReal, PrecisionPolicy};

/// Exact `T_m`.
pub fn trib(m: usize) -> BigUint {
    let (mut x, mut y, mut z) = (BigUint::zero(), BigUint::one(), BigUint::one());
    for _ in 0..m {
        let next = &x + &y + &z;
        x = std::mem::replace(&mut y, std::mem::replace(&mut z, next));
    }
    x
}

/// Append-only table `T_0..=T_max`.
#[derive(Debug, Clone)]
pub struct TribCache {
    values: Vec<BigUint>,
}

impl TribCache {
    pub fn new(max: usize) -> Self {
        let mut cache = TribCache {
            values: vec![BigUint::zero(), BigUint::one(), BigUint::one()],
        };
        cache.extend_to(max);
        cache
    }

    pub fn extend_to(&mut self, max: usize) {
        while self.values.len() <= max {
            let n = self.values.len();
            let next = &self.values[n - 1] + &self.values[n - 2] + &self.values[n - 3];
            self.values.push(next);
        }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, m: usize) -> Option<&BigUint> {
        self.values.get(m)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Map from value to every index `m >= 1` with `T_m` equal to it.
    pub fn index(&self) -> HashMap<BigUint, Vec<usize>> {
        let mut map: HashMap<BigUint, Vec<usize>> = HashMap::new();
        for (m, v) in self.values.iter().enumerate().skip(1) {
            map.entry(v.clone()).or_default().push(m);
        }
        map
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Debug, Clone)]
pub struct BinetConstants {
    pub alpha: CertifiedReal,
    /// |beta| = |gamma| = alpha^(-1/2).
    pub beta_abs: CertifiedReal,
    pub a: CertifiedReal,
    pub b_abs: CertifiedReal,
    pub omega1: CertifiedReal,
    pub omega2: CertifiedReal,
    /// -log(2a) / log(alpha).
    pub chi: CertifiedReal,
    /// 1 / log(alpha).
    pub c1: CertifiedReal,
    pub log_alpha: CertifiedReal,
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Discrepancy(format!("binet constants: {what}")))
    }
}

/// Certifies that two enclosures of supposedly equal values overlap.
fn overlap(x: &CertifiedReal, y: &CertifiedReal, bits: u32) -> Result<bool> {
    let d = x.sub(y).refine_bits(bits)?;
    Ok(d.lower() <= BigRational::zero() && BigRational::zero() <= d.upper())
}

impl BinetConstants {
    pub fn new(policy: PrecisionPolicy) -> Result<Self> {
        // Newton on x^3 - x^2 - x - 1 inside the (1.83, 1.84) bracket.
        let alpha = CertifiedReal::polynomial_root(&[-1, -1, -1, 1], rat(183, 100), rat(184, 100), policy)?;
        let int = |n: i64| CertifiedReal::from_int(n).with_policy(policy);

        // Closed form (1 + omega1 + omega2) / 3 as an independent route.
        let s33 = int(33).sqrt()?.mul_int(3);
        let omega1 = int(19).add(&s33).cbrt();
        let omega2 = int(19).sub(&s33).cbrt();
        let alpha_radical = int(1).add(&omega1).add(&omega2).div(&int(3))?;
        check(
            overlap(&alpha, &alpha_radical, policy.initial_bits)?,
            "Newton root and radical closed form disagree",
        )?;

        // a = 1 / f'(alpha) with f' = 3x^2 - 2x - 1; |b|^2 = f'(alpha) / 44
        // since f'(alpha) f'(beta) f'(gamma) = -disc = 44.
        let alpha2 = alpha.powi(2);
        let fprime = alpha2.mul_int(3).sub(&alpha.mul_int(2)).sub(&int(1));
        let a = fprime.recip()?;
        let a_alt = alpha.div(&alpha2.add(&alpha.mul_int(2)).add(&int(3)))?;
        check(
            overlap(&a, &a_alt, policy.initial_bits)?,
            "a differs from alpha / (alpha^2 + 2 alpha + 3)",
        )?;
        let b_abs = fprime.div(&int(44))?.sqrt()?;
        let beta_abs = alpha.sqrt()?.recip()?;

        let log_alpha = alpha.log()?;
        let chi = a.mul_int(2).log()?.neg().div(&log_alpha)?;
        let c1 = log_alpha.recip()?;

        let constants = BinetConstants {
            alpha,
            beta_abs,
            a,
            b_abs,
            omega1,
            omega2,
            chi,
            c1,
            log_alpha,
        };
        constants.check_brackets()?;
        Ok(constants)
    }

    /// The numeric brackets `1.83 < alpha < 1.84`, `0.73 < |beta| < 0.74`,
    /// `0.18 < a < 0.19`, `0.35 < |b| < 0.36`.
    pub fn check_brackets(&self) -> Result<()> {
        let brackets = [
            ("alpha", &self.alpha, 183, 184),
            ("|beta|", &self.beta_abs, 73, 74),
            ("a", &self.a, 18, 19),
            ("|b|", &self.b_abs, 35, 36),
        ];
        for (name, x, lo, hi) in brackets {
            let inside = x.gt_rational(&rat(lo, 100))? && x.lt_rational(&rat(hi, 100))?;
            check(inside, &format!("{name} outside its bracket"))?;
        }
        Ok(())
    }

    /// `|alpha^3 - alpha^2 - alpha - 1|`, an enclosure of zero.
    pub fn alpha_residual(&self) -> CertifiedReal {
        let a = &self.alpha;
        a.powi(3).sub(&a.powi(2)).sub(a).sub(&CertifiedReal::from_int(1))
    }

    /// `11 (2a)^3 + 4 (2a) - 2`, which vanishes since `2a` is a root.
    pub fn two_a_residual(&self) -> CertifiedReal {
        let t = self.a.mul_int(2);
        t.powi(3).mul_int(11).add(&t.mul_int(4)).sub(&CertifiedReal::from_int(2))
    }

    /// Dominant Binet term of `T_m`. With `a = 1 / f'(alpha)` and the
    /// normalization `T_0 = 0, T_1 = T_2 = 1`, the sum over the three roots of
    /// `r^k / f'(r)` is `T_{k-1}`, so the term carries `alpha^(m+1)`.
    pub fn dominant_term(&self, m: u32) -> CertifiedReal {
        self.a.mul(&self.alpha.powi(m + 1))
    }

    /// `|T_m - a alpha^(m+1)|`, certified.
    pub fn binet_residual(&self, m: u32) -> Result<CertifiedReal> {
        let t = CertifiedReal::from_int(BigInt::from(trib(m as usize)));
        let r = t.sub(&self.dominant_term(m));
        match r.sign()? {
            std::cmp::Ordering::Less => Ok(r.neg()),
            _ => Ok(r),
        }
    }

    /// Nearest integer to the dominant term, which is `T_m` for `m >= 0`.
    pub fn binet_round(&self, m: u32) -> Result<BigInt> {
        self.dominant_term(m).round()
    }

    /// Certifies `alpha^(m-2) <= T_m <= alpha^(m-1)` for `2 <= m <= m_max`.
    pub fn check_growth_bounds(&self, m_max: u32) -> Result<GrowthReport> {
        if m_max < 2 {
            return Err(Error::InvalidInput("m_max must be at least 2".into()));
        }
        let cache = TribCache::new(m_max as usize);
        for m in 2..=m_max {
            let tm = CertifiedReal::from_int(BigInt::from(cache.values()[m as usize].clone()));
            let lower = self.alpha.powi(m - 2);
            let upper = self.alpha.powi(m - 1);
            if !lower.le(&tm)? || !tm.le(&upper)? {
                return Err(Error::Discrepancy(format!(
                    "alpha^(m-2) <= T_m <= alpha^(m-1) fails at m = {m}"
                )));
            }
        }
        Ok(GrowthReport {
            m_min: 2,
            m_max,
            verified: true,
        })
    }

    /// Decimal expansions of every constant, `digits` places each.
    pub fn to_decimal_map(&self, digits: u32) -> Result<Vec<(&'static str, String)>> {
        let entries = [
            ("alpha", &self.alpha),
            ("beta_abs", &self.beta_abs),
            ("a", &self.a),
            ("b_abs", &self.b_abs),
            ("omega1", &self.omega1),
            ("omega2", &self.omega2),
            ("chi", &self.chi),
            ("c1", &self.c1),
            ("log_alpha", &self.log_alpha),
        ];
        entries
            .into_iter()
            .map(|(k, v)| Ok((k, v.to_decimal(digits)?)))
            .collect()
    }
}

pub fn binet_constants(policy: PrecisionPolicy) -> Result<BinetConstants> {
    BinetConstants::new(policy)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GrowthReport {
    pub m_min: u32,
    pub m_max: u32,
    pub verified: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> BinetConstants {
        BinetConstants::new(PrecisionPolicy::default()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(trib(0), BigUint::zero());
        assert_eq!(trib(1), BigUint::one());
        assert_eq!(trib(2), BigUint::one());
        assert_eq!(trib(5), BigUint::from(7u32));
        assert_eq!(trib(17), BigUint::from(10609u32));
    }

    #[test]
    fn cache_matches_direct() {
        let cache = TribCache::new(60);
        for m in 0..=60 {
            assert_eq!(cache.get(m).unwrap(), &trib(m));
        }
        let idx = cache.index();
        assert_eq!(idx[&BigUint::one()], vec![1, 2]);
        assert_eq!(idx[&BigUint::from(7u32)], vec![5]);
    }

    #[test]
    fn alpha_is_a_root() {
        let c = consts();
        let r = c.alpha_residual().refine_bits(150).unwrap();
        assert!(r.lower() <= BigRational::zero() && BigRational::zero() <= r.upper());
        assert!(c.alpha.to_f64() > 1.839 && c.alpha.to_f64() < 1.8394);
    }

    #[test]
    fn chi_and_log_alpha() {
        let c = consts();
        assert!((c.chi.to_f64() - 1.6503).abs() < 1e-3, "{}", c.chi);
        assert!((c.log_alpha.to_f64() - 0.6093).abs() < 1e-4);
        // exponentiating log(alpha) recovers alpha
        let back = c.log_alpha.exp();
        let d = back.sub(&c.alpha).refine_bits(150).unwrap();
        assert!(d.lower() <= BigRational::zero() && BigRational::zero() <= d.upper());
    }

    #[test]
    fn binet_residuals() {
        let c = consts();
        assert!(c.binet_residual(2).unwrap().lt_rational(&BigRational::one()).unwrap());
        assert!(c.binet_residual(17).unwrap().lt_rational(&BigRational::one()).unwrap());
        // |T_100 - a alpha^101| <= 2 |b| |beta|^101 < 2 * 0.36 * 0.74^100
        let bound = CertifiedReal::from_ratio(72, 100).mul(&CertifiedReal::from_ratio(74, 100).powi(100));
        assert!(c.binet_residual(100).unwrap().lt(&bound).unwrap());
    }

    #[test]
    fn binet_round_recovers_sequence() {
        let c = consts();
        for m in 0..=120u32 {
            assert_eq!(c.binet_round(m).unwrap(), BigInt::from(trib(m as usize)), "m = {m}");
        }
        // a alpha^17 is T_16, not T_17
        assert_eq!(c.a.mul(&c.alpha.powi(17)).round().unwrap(), BigInt::from(trib(16)));
    }

    #[test]
    fn growth_bounds_small() {
        let c = consts();
        // alpha^3 ~ 6.2 <= T_5 = 7 <= alpha^4 ~ 11.4
        assert!(c.alpha.powi(3).lt_rational(&rat(7, 1)).unwrap());
        assert!(c.alpha.powi(4).gt_rational(&rat(7, 1)).unwrap());
        assert!(c.check_growth_bounds(40).unwrap().verified);
        assert!(c.check_growth_bounds(1).is_err());
    }
}
