//! Fixed-point balls with outward rounding.
//!
//! A [`Ball`] at precision `p` encloses every real in
//! `[(mid - rad) / 2^p, (mid + rad) / 2^p]`. Every operation rounds the
//! midpoint to the nearest representable value below and widens the radius
//! to cover the discarded part, so enclosures are never lost.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub(crate) mid: BigInt,
    pub(crate) rad: BigInt,
    pub(crate) prec: u32,
}

/// `ceil(n / 2^s)` for `n >= 0`.
fn shr_ceil(n: &BigInt, s: u32) -> BigInt {
    let q: BigInt = n >> s;
    if &(&q << s) == n {
        q
    } else {
        q + 1
    }
}

/// `ceil(a / b)` for `a >= 0`, `b > 0`.
fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

impl Ball {
    pub fn exact(mid: BigInt, prec: u32) -> Self {
        Ball {
            mid,
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Ball::exact(BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Ball::exact(BigInt::one() << prec, prec)
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Ball::exact(n << prec, prec)
    }

    /// Encloses `num / den` (`den != 0`).
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let (q, r) = (num << prec).div_mod_floor(&den);
        let rad = if r.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { mid: q, rad, prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Ball::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Smallest ball at `prec` containing `[lo, hi] / 2^prec`.
    pub fn from_bounds(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        let rad = &hi - &mid;
        Ball { mid, rad, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lower_num(&self) -> BigInt {
        &self.mid - &self.rad
    }

    pub fn upper_num(&self) -> BigInt {
        &self.mid + &self.rad
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lower_num(), BigInt::one() << self.prec)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.upper_num(), BigInt::one() << self.prec)
    }

    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(self.mid.clone(), BigInt::one() << self.prec)
    }

    pub fn rad_rational(&self) -> BigRational {
        BigRational::new(self.rad.clone(), BigInt::one() << self.prec)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.lower_num().sign() != Sign::Plus && self.upper_num().sign() != Sign::Minus
    }

    /// Sign of every enclosed value, if it is the same throughout.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lower_num().is_positive() {
            Some(Ordering::Greater)
        } else if self.upper_num().is_negative() {
            Some(Ordering::Less)
        } else if self.mid.is_zero() && self.rad.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Upper bound on `log2 |x|`; `None` for the exact zero ball.
    pub fn mag_upper(&self) -> Option<i64> {
        let m = self.mid.abs() + &self.rad;
        if m.is_zero() {
            None
        } else {
            Some(m.bits() as i64 - self.prec as i64)
        }
    }

    /// Lower bound on `log2 |x|`; `None` when the ball touches zero.
    pub fn mag_lower(&self) -> Option<i64> {
        let m = self.mid.abs() - &self.rad;
        if m.is_positive() {
            Some(m.bits() as i64 - 1 - self.prec as i64)
        } else {
            None
        }
    }

    /// Re-express at another precision, widening to keep the enclosure.
    pub fn round_to(&self, prec: u32) -> Ball {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                Ball {
                    mid: &self.mid << s,
                    rad: &self.rad << s,
                    prec,
                }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                let mid: BigInt = &self.mid >> s;
                let lost = self.mid != (&mid << s);
                let mut rad = shr_ceil(&self.rad, s);
                if lost {
                    rad += 1;
                }
                Ball { mid, rad, prec }
            }
        }
    }

    fn aligned<'a>(&'a self, other: &'a Ball) -> (Ball, Ball) {
        let p = self.prec.max(other.prec);
        (self.round_to(p), other.round_to(p))
    }

    /// Enclosure of `max(x, y)` for `x` in self and `y` in other.
    pub fn max(&self, other: &Ball) -> Ball {
        let (a, b) = self.aligned(other);
        let lo = a.lower_num().max(b.lower_num());
        let hi = a.upper_num().max(b.upper_num());
        Ball::from_bounds(lo, hi, a.prec)
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let (a, b) = self.aligned(other);
        Ball {
            mid: a.mid + b.mid,
            rad: a.rad + b.rad,
            prec: a.prec,
        }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let (a, b) = self.aligned(other);
        let p = a.prec;
        let prod = &a.mid * &b.mid;
        let err = a.mid.abs() * &b.rad + b.mid.abs() * &a.rad + &a.rad * &b.rad;
        let mid: BigInt = &prod >> p;
        let mut rad = shr_ceil(&err, p);
        if prod != (&mid << p) {
            rad += 1;
        }
        Ball { mid, rad, prec: p }
    }

    /// `None` when the divisor ball touches zero.
    pub fn div(&self, other: &Ball) -> Option<Ball> {
        let (a, b) = self.aligned(other);
        let p = a.prec;
        let bm = b.mid.abs();
        let denom_lo = &bm - &b.rad;
        if !denom_lo.is_positive() {
            return None;
        }
        let scaled = &a.mid << p;
        let (mid, r) = scaled.div_mod_floor(&b.mid);
        // |a/b - a.mid/b.mid| <= (a.rad |b.mid| + |a.mid| b.rad) / (|b.mid| (|b.mid| - b.rad))
        let num = (&a.rad * &bm + a.mid.abs() * &b.rad) << p;
        let den = &bm * &denom_lo;
        let mut rad = div_ceil(&num, &den);
        if !r.is_zero() {
            rad += 1;
        }
        Some(Ball { mid, rad, prec: p })
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball {
            mid: &self.mid * k,
            rad: &self.rad * k.abs(),
            prec: self.prec,
        }
    }

    /// Divide by a nonzero integer.
    pub fn div_int(&self, k: &BigInt) -> Ball {
        debug_assert!(!k.is_zero());
        let (mid, r) = self.mid.div_mod_floor(k);
        let mut rad = div_ceil(&self.rad, &k.abs());
        if !r.is_zero() {
            rad += 1;
        }
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    /// Integer power by repeated squaring; `x^0` is exactly one.
    pub fn powi(&self, n: u32) -> Ball {
        let mut result = Ball::one(self.prec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Intersection of two enclosures of the same value.
    pub fn intersect(&self, other: &Ball) -> Ball {
        let (a, b) = self.aligned(other);
        let lo = a.lower_num().max(b.lower_num());
        let hi = a.upper_num().min(b.upper_num());
        if lo > hi {
            // Disjoint enclosures cannot both hold; keep the tighter input.
            return if self.rad_rational() <= other.rad_rational() {
                self.clone()
            } else {
                other.clone()
            };
        }
        Ball::from_bounds(lo, hi, a.prec)
    }

    pub fn to_f64(&self) -> f64 {
        let shift = (self.mid.bits() as i64 - 60).max(0) as u32;
        let m: BigInt = &self.mid >> shift;
        let m = i64::try_from(m).unwrap_or(0) as f64;
        m * 2f64.powi(shift as i32 - self.prec as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn encloses(b: &Ball, q: &BigRational) -> bool {
        &b.lower() <= q && q <= &b.upper()
    }

    #[test]
    fn ratio_is_enclosed() {
        let b = Ball::from_ratio(&1.into(), &3.into(), 64);
        assert!(encloses(&b, &r(1, 3)));
        assert!(b.rad_rational() <= BigRational::new(1.into(), BigInt::one() << 64));
    }

    #[test]
    fn round_to_keeps_enclosure() {
        let b = Ball::from_ratio(&(-7).into(), &11.into(), 200);
        let c = b.round_to(50);
        assert!(encloses(&c, &r(-7, 11)));
        assert_eq!(c.prec(), 50);
    }

    #[test]
    fn division_by_zero_ball_is_refused() {
        let one = Ball::one(64);
        let z = Ball {
            mid: BigInt::zero(),
            rad: BigInt::one(),
            prec: 64,
        };
        assert!(one.div(&z).is_none());
    }

    #[test]
    fn powi_zero_is_exact_one() {
        let b = Ball::from_ratio(&5.into(), &3.into(), 64);
        assert_eq!(b.powi(0), Ball::one(64));
    }

    #[test]
    fn from_bounds_covers_both_ends() {
        let b = Ball::from_bounds(BigInt::from(-3), BigInt::from(4), 0);
        assert!(b.lower_num() <= BigInt::from(-3));
        assert!(b.upper_num() >= BigInt::from(4));
    }
}
