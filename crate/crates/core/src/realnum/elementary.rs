//! Elementary functions evaluated at exact dyadic points.
//!
//! Each routine returns a ball at the requested precision that encloses the
//! exact function value at the point `n / 2^scale`. Interval extensions are
//! built on top of these by evaluating at both endpoints (all functions here
//! are monotone).

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::ball::Ball;

const GUARD: u32 = 32;

/// Number of odd terms of the atanh series needed for `|t| <= 1/3`.
fn atanh_terms(prec: u32) -> u32 {
    // (1/3)^(2N+3) <= 2^-prec needs N >= prec / (2 log2 3)
    prec * 10 / 31 + 2
}

/// atanh(t) for `|t| <= 1/3`, with the series tail folded into the radius.
fn atanh_small(t: &Ball) -> Ball {
    let prec = t.prec();
    let t2 = t.mul(t);
    let mut term = t.clone();
    let mut sum = t.clone();
    for j in 1..=atanh_terms(prec) {
        term = term.mul(&t2);
        sum = sum.add(&term.div_int(&BigInt::from(2 * j + 1)));
    }
    sum.rad += 1;
    sum
}

/// ln 2 = 2 atanh(1/3).
pub(crate) fn ln2(prec: u32) -> Ball {
    let w = prec + GUARD;
    let t = Ball::from_ratio(&BigInt::one(), &BigInt::from(3), w);
    atanh_small(&t).mul_int(&BigInt::from(2)).round_to(prec)
}

/// ln(n / 2^scale) for `n > 0`.
pub(crate) fn log_point(n: &BigInt, scale: u32, prec: u32) -> Ball {
    debug_assert!(n.is_positive());
    let bits = n.bits() as i64;
    // n / 2^scale = y * 2^k with y = n / 2^(bits - 1) in [1, 2)
    let k = bits - 1 - scale as i64;
    let w = prec + GUARD + (64 - k.unsigned_abs().leading_zeros());
    let half = BigInt::one() << (bits - 1) as u32;
    let t = Ball::from_ratio(&(n - &half), &(n + &half), w);
    let log_y = atanh_small(&t).mul_int(&BigInt::from(2));
    let total = if k == 0 {
        log_y
    } else {
        ln2(w).mul_int(&BigInt::from(k)).add(&log_y)
    };
    total.round_to(prec)
}

/// exp(n / 2^scale).
pub(crate) fn exp_point(n: &BigInt, scale: u32, prec: u32) -> Ball {
    if n.is_zero() {
        return Ball::one(prec);
    }
    // |x| < 2^(int_bits); halve until |r| < 2^-10
    let int_bits = n.bits() as i64 - scale as i64;
    let halvings = (int_bits + 10).max(0) as u32;
    let result_bits = if n.is_positive() {
        // log2(e^x) <= 1.4427 x < 2^(int_bits + 1)
        if int_bits >= 0 {
            (3i64 << int_bits.min(40)) as u32
        } else {
            2
        }
    } else {
        0
    };
    let w = prec + GUARD + halvings + result_bits;
    let r = Ball::from_ratio(n, &(BigInt::one() << (scale + halvings)), w);
    let terms = w / 10 + 2;
    let mut term = Ball::one(w);
    let mut sum = Ball::one(w);
    for k in 1..=terms {
        term = term.mul(&r).div_int(&BigInt::from(k));
        sum = sum.add(&term);
    }
    // remainder <= 2 |r|^(N+1) / (N+1)! < 2^-w
    sum.rad += 1;
    for _ in 0..halvings {
        sum = sum.mul(&sum);
    }
    sum.round_to(prec)
}

/// Floor and ceiling of `sqrt(n / 2^scale) * 2^scale` for `n >= 0`.
pub(crate) fn sqrt_point(n: &BigInt, scale: u32) -> (BigInt, BigInt) {
    debug_assert!(!n.is_negative());
    let m: BigInt = n << scale;
    let lo = m.sqrt();
    let hi = if &lo * &lo == m { lo.clone() } else { &lo + 1 };
    (lo, hi)
}

/// Floor and ceiling of `cbrt(n / 2^scale) * 2^scale`.
pub(crate) fn cbrt_point(n: &BigInt, scale: u32) -> (BigInt, BigInt) {
    let m: BigInt = n.abs() << (2 * scale);
    let lo = m.cbrt();
    let hi = if &lo * &lo * &lo == m { lo.clone() } else { &lo + 1 };
    if n.sign() == Sign::Minus {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(b: &Ball, v: f64, tol: f64) -> bool {
        (b.to_f64() - v).abs() < tol
    }

    #[test]
    fn ln2_matches_f64() {
        let b = ln2(128);
        assert!(close(&b, std::f64::consts::LN_2, 1e-15));
        assert!(b.rad <= BigInt::from(4));
    }

    #[test]
    fn log_of_one_is_zero() {
        let b = log_point(&BigInt::one(), 0, 64);
        assert!(b.lower_num() <= BigInt::zero() && b.upper_num() >= BigInt::zero());
    }

    #[test]
    fn log_and_exp_agree() {
        let b = log_point(&BigInt::from(10), 0, 100);
        assert!(close(&b, 10f64.ln(), 1e-14));
        let e = exp_point(&BigInt::from(5), 1, 100);
        assert!(close(&e, 2.5f64.exp(), 1e-12));
        let e = exp_point(&BigInt::from(-3), 0, 100);
        assert!(close(&e, (-3f64).exp(), 1e-15));
    }

    #[test]
    fn roots_bracket_the_value() {
        let (lo, hi) = sqrt_point(&BigInt::from(4), 0);
        assert_eq!((lo, hi), (BigInt::from(2), BigInt::from(2)));
        let (lo, hi) = cbrt_point(&BigInt::from(-16), 1);
        // cbrt(-8) = -2 at scale 2
        assert_eq!((lo, hi), (BigInt::from(-4), BigInt::from(-4)));
    }
}
