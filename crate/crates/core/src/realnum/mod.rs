//! Certified arbitrary-precision reals.
//!
//! A [`CertifiedReal`] pairs a current enclosure (a [`Ball`]) with the
//! expression that produced it. Refining re-evaluates the expression at a
//! higher working precision; the enclosure never widens. Comparisons and
//! floors refine automatically until the answer is decided or the
//! [`PrecisionPolicy`] cap is reached, at which point they fail with
//! [`Error::InsufficientPrecision`].

mod ball;
mod elementary;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use ball::Ball;

use crate::error::{Error, Result};

/// Extra bits carried by every intermediate evaluation.
const GUARD: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub initial_bits: u32,
    pub max_bits: u32,
    pub growth_factor: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            initial_bits: 192,
            max_bits: 8192,
            growth_factor: 2,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(initial_bits: u32, max_bits: u32, growth_factor: u32) -> Result<Self> {
        if initial_bits < 64 {
            return Err(Error::InvalidInput(format!(
                "initial_bits must be at least 64, got {initial_bits}"
            )));
        }
        if max_bits < initial_bits {
            return Err(Error::InvalidInput(format!(
                "max_bits ({max_bits}) below initial_bits ({initial_bits})"
            )));
        }
        if growth_factor < 2 {
            return Err(Error::InvalidInput(
                "growth_factor must be at least 2".into(),
            ));
        }
        Ok(PrecisionPolicy {
            initial_bits,
            max_bits,
            growth_factor,
        })
    }

    fn merge(self, other: PrecisionPolicy) -> PrecisionPolicy {
        PrecisionPolicy {
            initial_bits: self.initial_bits.max(other.initial_bits),
            max_bits: self.max_bits.max(other.max_bits),
            growth_factor: self.growth_factor.max(other.growth_factor),
        }
    }

    fn next_bits(self, bits: u32) -> Option<u32> {
        if bits >= self.max_bits {
            None
        } else {
            Some(bits.saturating_mul(self.growth_factor).clamp(self.initial_bits, self.max_bits))
        }
    }
}

#[derive(Debug)]
enum Op {
    Exact(BigRational),
    Neg(Arc<Node>),
    Add(Arc<Node>, Arc<Node>),
    Sub(Arc<Node>, Arc<Node>),
    Mul(Arc<Node>, Arc<Node>),
    /// Divisor certified nonzero at the given precision.
    Div(Arc<Node>, Arc<Node>, u32),
    /// Argument certified nonnegative at the given precision.
    Sqrt(Arc<Node>, u32),
    Cbrt(Arc<Node>),
    /// Argument certified positive at the given precision.
    Log(Arc<Node>, u32),
    Exp(Arc<Node>),
    Pow(Arc<Node>, u32),
    Max(Arc<Node>, Arc<Node>),
    DistNearestInt(Arc<Node>),
    /// Simple root of an integer polynomial (coefficients low to high) in
    /// an isolating interval where the polynomial has sign `sign_lo` at `lo`.
    Root {
        coeffs: Vec<BigInt>,
        lo: BigRational,
        hi: BigRational,
        sign_lo: Sign,
    },
}

#[derive(Debug)]
struct Node {
    op: Op,
    /// Upper bound on log2 |x|.
    mag_hi: Option<i64>,
    /// Lower bound on log2 |x| (None when zero is not excluded).
    mag_lo: Option<i64>,
}

fn extra(m: Option<i64>) -> u32 {
    m.unwrap_or(0).clamp(0, 1 << 20) as u32
}

fn insufficient(op: &'static str, bits: u32) -> Error {
    Error::InsufficientPrecision { op, bits }
}

fn eval(node: &Node, p: u32) -> Result<Ball> {
    match &node.op {
        Op::Exact(q) => Ok(Ball::from_rational(q, p)),
        Op::Neg(a) => Ok(eval(a, p)?.neg()),
        Op::Add(a, b) => Ok(eval(a, p + 2)?.add(&eval(b, p + 2)?).round_to(p)),
        Op::Sub(a, b) => Ok(eval(a, p + 2)?.sub(&eval(b, p + 2)?).round_to(p)),
        Op::Mul(a, b) => {
            let x = eval(a, p + GUARD + extra(b.mag_hi))?;
            let y = eval(b, p + GUARD + extra(a.mag_hi))?;
            Ok(x.mul(&y).round_to(p))
        }
        Op::Div(a, b, min_bits) => {
            let ylo = b.mag_lo.unwrap_or(0);
            let pa = p + GUARD + extra(Some(-ylo));
            let pb = (p + GUARD + extra(Some(a.mag_hi.unwrap_or(0) - 2 * ylo + 1))).max(*min_bits);
            let x = eval(a, pa)?;
            let y = eval(b, pb)?;
            x.div(&y)
                .map(|q| q.round_to(p))
                .ok_or_else(|| insufficient("div", p))
        }
        Op::Sqrt(a, min_bits) => {
            let pa = match a.mag_lo {
                Some(l) => p + GUARD + extra(Some(-l / 2 + 1)),
                None => 2 * p + GUARD,
            }
            .max(*min_bits);
            apply_sqrt(&eval(a, pa)?, true).map(|b| b.round_to(p))
        }
        Op::Cbrt(a) => {
            let pa = match a.mag_lo {
                Some(l) => p + GUARD + extra(Some(-2 * l / 3 + 1)),
                None => 3 * p + GUARD,
            };
            Ok(apply_cbrt(&eval(a, pa)?).round_to(p))
        }
        Op::Log(a, min_bits) => {
            let pa = (p + GUARD + extra(a.mag_lo.map(|l| -l + 1))).max(*min_bits);
            apply_log(&eval(a, pa)?, p)
        }
        Op::Exp(a) => {
            let pa = p + GUARD + exp_result_bits(a.mag_hi);
            Ok(apply_exp(&eval(a, pa)?, p))
        }
        Op::Pow(a, n) => {
            if *n == 0 {
                return Ok(Ball::one(p));
            }
            let n_bits = 32 - n.leading_zeros();
            let pa = p + GUARD + n_bits + (n - 1).saturating_mul(extra(a.mag_hi));
            Ok(eval(a, pa)?.powi(*n).round_to(p))
        }
        Op::Max(a, b) => Ok(eval(a, p)?.max(&eval(b, p)?)),
        Op::DistNearestInt(a) => Ok(apply_dist(&eval(a, p + 2)?).round_to(p)),
        Op::Root {
            coeffs,
            lo,
            hi,
            sign_lo,
        } => eval_root(coeffs, lo, hi, *sign_lo, p),
    }
}

fn exp_result_bits(mag_hi: Option<i64>) -> u32 {
    match mag_hi {
        Some(m) if m >= 0 => 3u32 << m.min(24),
        _ => 2,
    }
}

fn interval_string(x: &Ball) -> String {
    format!("[{:e}, {:e}]", ratio_to_f64(&x.lower()), ratio_to_f64(&x.upper()))
}

fn apply_sqrt(x: &Ball, known_nonneg: bool) -> Result<Ball> {
    let (mut lo, hi) = (x.lower_num(), x.upper_num());
    if hi.is_negative() {
        return Err(Error::Domain {
            op: "sqrt",
            interval: interval_string(x),
        });
    }
    if lo.is_negative() {
        if !known_nonneg {
            return Err(insufficient("sqrt", x.prec()));
        }
        lo = BigInt::zero();
    }
    let (l, _) = elementary::sqrt_point(&lo, x.prec());
    let (_, h) = elementary::sqrt_point(&hi, x.prec());
    Ok(Ball::from_bounds(l, h, x.prec()))
}

fn apply_cbrt(x: &Ball) -> Ball {
    let (l, _) = elementary::cbrt_point(&x.lower_num(), x.prec());
    let (_, h) = elementary::cbrt_point(&x.upper_num(), x.prec());
    Ball::from_bounds(l, h, x.prec())
}

fn apply_log(x: &Ball, p: u32) -> Result<Ball> {
    let (lo, hi) = (x.lower_num(), x.upper_num());
    if !hi.is_positive() {
        return Err(Error::Domain {
            op: "log",
            interval: interval_string(x),
        });
    }
    if !lo.is_positive() {
        return Err(insufficient("log", x.prec()));
    }
    let w = p + GUARD;
    let l = elementary::log_point(&lo, x.prec(), w).lower_num();
    let h = elementary::log_point(&hi, x.prec(), w).upper_num();
    Ok(Ball::from_bounds(l, h, w).round_to(p))
}

fn apply_exp(x: &Ball, p: u32) -> Ball {
    let w = p + GUARD;
    let l = elementary::exp_point(&x.lower_num(), x.prec(), w).lower_num();
    let h = elementary::exp_point(&x.upper_num(), x.prec(), w).upper_num();
    Ball::from_bounds(l, h, w).round_to(p)
}

/// Exact image of `[lo, hi]` under the distance to the nearest integer.
fn apply_dist(x: &Ball) -> Ball {
    let prec = x.prec();
    let one = BigInt::one() << prec;
    let half = BigInt::one() << (prec.max(1) - 1);
    let (lo, hi) = (x.lower_num(), x.upper_num());
    if &hi - &lo >= one || prec == 0 {
        return Ball::from_bounds(BigInt::zero(), half, prec);
    }
    let dist = |v: &BigInt| -> BigInt {
        let r = v.mod_floor(&one);
        let s = &one - &r;
        r.min(s)
    };
    let contains_int = {
        let k = lo.div_ceil(&one);
        k * &one <= hi
    };
    let contains_half = {
        // smallest (k + 1/2) >= lo
        let k = (&lo - &half).div_ceil(&one);
        k * &one + &half <= hi
    };
    let (dl, dh) = (dist(&lo), dist(&hi));
    let min = if contains_int {
        BigInt::zero()
    } else {
        dl.clone().min(dh.clone())
    };
    let max = if contains_half { half } else { dl.max(dh) };
    Ball::from_bounds(min, max, prec)
}

/// `f(x / 2^w) * 2^(w deg)` by Horner.
fn poly_scaled(coeffs: &[BigInt], x: &BigInt, w: u32) -> BigInt {
    let deg = coeffs.len() - 1;
    let mut acc = coeffs[deg].clone();
    for i in (0..deg).rev() {
        acc = acc * x + (&coeffs[i] << (w as usize * (deg - i)));
    }
    acc
}

fn poly_sign_rational(coeffs: &[BigInt], r: &BigRational) -> Sign {
    let deg = coeffs.len() - 1;
    let (n, d) = (r.numer(), r.denom());
    let mut acc = BigInt::zero();
    for (i, c) in coeffs.iter().enumerate() {
        acc += c * Pow::pow(n, i) * Pow::pow(d, deg - i);
    }
    acc.sign()
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
        Sign::NoSign => Sign::NoSign,
    }
}

fn eval_root(coeffs: &[BigInt], lo: &BigRational, hi: &BigRational, s_lo: Sign, p: u32) -> Result<Ball> {
    let w = p + GUARD;
    let scale = BigRational::from_integer(BigInt::one() << w);
    let mut l = (lo * &scale).ceil().to_integer();
    let mut h = (hi * &scale).floor().to_integer();
    let f = |x: &BigInt| poly_scaled(coeffs, x, w).sign();
    let (fl, fh) = (f(&l), f(&h));
    if fl == Sign::NoSign {
        return Ok(Ball::exact(l, w).round_to(p));
    }
    if fh == Sign::NoSign {
        return Ok(Ball::exact(h, w).round_to(p));
    }
    if fl != s_lo || fh != flip(s_lo) {
        return Err(insufficient("polynomial root", p));
    }
    let two = BigInt::from(2);
    for _ in 0..64 {
        if &h - &l <= BigInt::one() {
            break;
        }
        let m: BigInt = (&l + &h).div_floor(&two);
        match f(&m) {
            Sign::NoSign => return Ok(Ball::exact(m, w).round_to(p)),
            s if s == s_lo => l = m,
            _ => h = m,
        }
    }
    // Newton in fixed point: x <- x - F(x) / D(x), where F and D carry the
    // scalings 2^(w deg) and 2^(w (deg - 1)).
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut x: BigInt = (&l + &h).div_floor(&two);
    if !deriv.is_empty() {
        for _ in 0..(2 * (32 - w.leading_zeros()) + 8) {
            let dx = poly_scaled(&deriv, &x, w);
            if dx.is_zero() {
                break;
            }
            let step = poly_scaled(coeffs, &x, w) / dx;
            x -= &step;
            if step.abs() <= BigInt::one() {
                break;
            }
        }
    }
    for delta in [2u32, 16, 256] {
        let a = &x - delta;
        let b = &x + delta;
        if a >= l && b <= h && f(&a) == s_lo && f(&b) == flip(s_lo) {
            return Ok(Ball::from_bounds(a, b, w).round_to(p));
        }
    }
    // Newton did not certify; plain bisection always does.
    while &h - &l > BigInt::one() {
        let m: BigInt = (&l + &h).div_floor(&two);
        match f(&m) {
            Sign::NoSign => return Ok(Ball::exact(m, w).round_to(p)),
            s if s == s_lo => l = m,
            _ => h = m,
        }
    }
    Ok(Ball::from_bounds(l, h, w).round_to(p))
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A real number with a rigorous enclosure that can be tightened on demand.
#[derive(Clone)]
pub struct CertifiedReal {
    node: Arc<Node>,
    ball: Ball,
    policy: PrecisionPolicy,
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CertifiedReal({:e} ± {:e} @{} bits)",
            self.to_f64(),
            ratio_to_f64(&self.err()),
            self.bits()
        )
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.to_f64(), ratio_to_f64(&self.err()))
    }
}

impl CertifiedReal {
    fn from_parts(op: Op, ball: Ball, policy: PrecisionPolicy) -> Self {
        let node = Node {
            op,
            mag_hi: ball.mag_upper(),
            mag_lo: ball.mag_lower(),
        };
        CertifiedReal {
            node: Arc::new(node),
            ball,
            policy,
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let policy = PrecisionPolicy::default();
        let ball = Ball::from_rational(&q, policy.initial_bits);
        CertifiedReal::from_parts(Op::Exact(q), ball, policy)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        CertifiedReal::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        CertifiedReal::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// Simple real root of the integer polynomial `coeffs` (low to high
    /// degree) inside `[lo, hi]`. The polynomial must change sign across the
    /// interval and have no other root in it.
    pub fn polynomial_root(
        coeffs: &[i64],
        lo: BigRational,
        hi: BigRational,
        policy: PrecisionPolicy,
    ) -> Result<Self> {
        let coeffs: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        if coeffs.len() < 2 || coeffs.last().is_some_and(Zero::is_zero) || lo >= hi {
            return Err(Error::InvalidInput("degenerate polynomial root request".into()));
        }
        let s_lo = poly_sign_rational(&coeffs, &lo);
        let s_hi = poly_sign_rational(&coeffs, &hi);
        if s_lo == Sign::NoSign || s_hi != flip(s_lo) {
            return Err(Error::InvalidInput(
                "bracket does not show a sign change".into(),
            ));
        }
        let op = Op::Root {
            coeffs,
            lo,
            hi,
            sign_lo: s_lo,
        };
        let tmp = Node {
            op,
            mag_hi: None,
            mag_lo: None,
        };
        let ball = eval(&tmp, policy.initial_bits)?;
        Ok(CertifiedReal::from_parts(tmp.op, ball, policy))
    }

    pub fn with_policy(mut self, policy: PrecisionPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.policy
    }

    /// Current working precision of the enclosure.
    pub fn bits(&self) -> u32 {
        self.ball.prec()
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn approx(&self) -> BigRational {
        self.ball.mid_rational()
    }

    pub fn err(&self) -> BigRational {
        self.ball.rad_rational()
    }

    pub fn lower(&self) -> BigRational {
        self.ball.lower()
    }

    pub fn upper(&self) -> BigRational {
        self.ball.upper()
    }

    pub fn to_f64(&self) -> f64 {
        self.ball.to_f64()
    }

    pub fn is_exact(&self) -> bool {
        self.ball.is_exact()
    }

    /// One step up the precision ladder.
    fn refine_step(&self, op: &'static str) -> Result<Self> {
        let mut bits = self.bits();
        loop {
            let next = self
                .policy
                .next_bits(bits)
                .ok_or_else(|| insufficient(op, bits))?;
            match eval(&self.node, next) {
                Ok(b) => {
                    return Ok(CertifiedReal {
                        node: Arc::clone(&self.node),
                        ball: self.ball.intersect(&b),
                        policy: self.policy,
                    })
                }
                Err(Error::InsufficientPrecision { .. }) => bits = next,
                Err(e) => return Err(e),
            }
        }
    }

    /// Tighten until the error bound is at most `target_err`.
    pub fn refine(&self, target_err: &BigRational) -> Result<Self> {
        let mut cur = self.clone();
        while &cur.err() > target_err {
            cur = cur.refine_step("refine")?;
        }
        Ok(cur)
    }

    /// Tighten until the error bound is at most `2^-bits`.
    pub fn refine_bits(&self, bits: u32) -> Result<Self> {
        self.refine(&BigRational::new(BigInt::one(), BigInt::one() << bits))
    }

    fn refine_until(&self, op: &'static str, done: impl Fn(&Ball) -> bool) -> Result<Self> {
        let mut cur = self.clone();
        while !done(&cur.ball) {
            cur = cur.refine_step(op)?;
        }
        Ok(cur)
    }

    fn binary(&self, other: &Self, make: fn(Arc<Node>, Arc<Node>) -> Op, ball: Ball) -> Self {
        CertifiedReal::from_parts(
            make(Arc::clone(&self.node), Arc::clone(&other.node)),
            ball,
            self.policy.merge(other.policy),
        )
    }

    fn exact_value(&self) -> Option<&BigRational> {
        match &self.node.op {
            Op::Exact(q) => Some(q),
            _ => None,
        }
    }

    fn exact_with(q: BigRational, policy: PrecisionPolicy) -> Self {
        let ball = Ball::from_rational(&q, policy.initial_bits);
        CertifiedReal::from_parts(Op::Exact(q), ball, policy)
    }

    /// Rational operands are combined exactly, so that e.g. `x - x` is an
    /// exact zero whose sign is decidable.
    fn fold(&self, other: &Self, f: fn(&BigRational, &BigRational) -> BigRational) -> Option<Self> {
        let (a, b) = (self.exact_value()?, other.exact_value()?);
        Some(CertifiedReal::exact_with(f(a, b), self.policy.merge(other.policy)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.fold(other, |a, b| a + b)
            .unwrap_or_else(|| self.binary(other, Op::Add, self.ball.add(&other.ball)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.fold(other, |a, b| a - b)
            .unwrap_or_else(|| self.binary(other, Op::Sub, self.ball.sub(&other.ball)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.fold(other, |a, b| a * b)
            .unwrap_or_else(|| self.binary(other, Op::Mul, self.ball.mul(&other.ball)))
    }

    pub fn neg(&self) -> Self {
        if let Some(q) = self.exact_value() {
            return CertifiedReal::exact_with(-q, self.policy);
        }
        CertifiedReal::from_parts(Op::Neg(Arc::clone(&self.node)), self.ball.neg(), self.policy)
    }

    /// Division; the divisor is refined until it excludes zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if let (Some(_), Some(b)) = (self.exact_value(), other.exact_value()) {
            if !b.is_zero() {
                return Ok(self.fold(other, |a, b| a / b).expect("both exact"));
            }
        }
        let y = other.refine_until("div", |b| !b.contains_zero())?;
        let ball = self
            .ball
            .div(&y.ball)
            .ok_or_else(|| insufficient("div", y.bits()))?;
        Ok(CertifiedReal::from_parts(
            Op::Div(Arc::clone(&self.node), Arc::clone(&y.node), y.bits()),
            ball,
            self.policy.merge(other.policy),
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        CertifiedReal::from_int(1).with_policy(self.policy).div(self)
    }

    pub fn sqrt(&self) -> Result<Self> {
        let x = self.refine_until("sqrt", |b| {
            !b.lower_num().is_negative() || b.upper_num().is_negative()
        })?;
        let ball = apply_sqrt(&x.ball, false)?;
        Ok(CertifiedReal::from_parts(
            Op::Sqrt(Arc::clone(&x.node), x.bits()),
            ball,
            self.policy,
        ))
    }

    pub fn cbrt(&self) -> Self {
        CertifiedReal::from_parts(Op::Cbrt(Arc::clone(&self.node)), apply_cbrt(&self.ball), self.policy)
    }

    pub fn log(&self) -> Result<Self> {
        let x = self.refine_until("log", |b| {
            b.lower_num().is_positive() || !b.upper_num().is_positive()
        })?;
        let ball = apply_log(&x.ball, x.bits())?;
        Ok(CertifiedReal::from_parts(
            Op::Log(Arc::clone(&x.node), x.bits()),
            ball,
            self.policy,
        ))
    }

    pub fn exp(&self) -> Self {
        let ball = apply_exp(&self.ball, self.bits());
        CertifiedReal::from_parts(Op::Exp(Arc::clone(&self.node)), ball, self.policy)
    }

    pub fn powi(&self, n: u32) -> Self {
        let ball = if n == 0 {
            Ball::one(self.bits())
        } else {
            self.ball.powi(n)
        };
        CertifiedReal::from_parts(Op::Pow(Arc::clone(&self.node), n), ball, self.policy)
    }

    pub fn max(&self, other: &Self) -> Self {
        if let Some(r) = self.fold(other, |a, b| a.max(b).clone()) {
            return r;
        }
        self.binary(other, Op::Max, self.ball.max(&other.ball))
    }

    /// ‖x‖, the distance from x to the nearest integer.
    pub fn dist_to_nearest_integer(&self) -> Self {
        CertifiedReal::from_parts(
            Op::DistNearestInt(Arc::clone(&self.node)),
            apply_dist(&self.ball),
            self.policy,
        )
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        self.mul(&CertifiedReal::from_int(k).with_policy(self.policy))
    }

    /// Certified sign, refining as needed. An exactly-zero value reports
    /// `Equal`; a nonzero value whose sign cannot be decided at the cap fails.
    pub fn sign(&self) -> Result<Ordering> {
        let mut cur = self.clone();
        loop {
            if let Some(s) = cur.ball.sign() {
                return Ok(s);
            }
            cur = cur.refine_step("sign")?;
        }
    }

    pub fn cmp_real(&self, other: &Self) -> Result<Ordering> {
        self.sub(other).sign()
    }

    /// Certifies `self < other`; `Ok(false)` means certified `self >= other`.
    pub fn lt(&self, other: &Self) -> Result<bool> {
        Ok(self.cmp_real(other)? == Ordering::Less)
    }

    /// Certifies `self <= other`.
    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(self.cmp_real(other)? != Ordering::Greater)
    }

    /// `true` only when `self < other` is certified. Values that cannot be
    /// separated before the precision cap count as not less.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        matches!(self.cmp_real(other), Ok(Ordering::Less))
    }

    pub fn lt_rational(&self, q: &BigRational) -> Result<bool> {
        self.lt(&CertifiedReal::from_rational(q.clone()).with_policy(self.policy))
    }

    pub fn gt_rational(&self, q: &BigRational) -> Result<bool> {
        CertifiedReal::from_rational(q.clone())
            .with_policy(self.policy)
            .lt(self)
    }

    pub fn floor(&self) -> Result<BigInt> {
        let x = self.refine_until("floor", |b| {
            let l = b.lower().floor();
            let u = b.upper().floor();
            l == u && (b.is_exact() || !b.upper().is_integer())
        })?;
        Ok(x.lower().floor().to_integer())
    }

    /// Nearest integer (ties cannot occur for irrational values).
    pub fn round(&self) -> Result<BigInt> {
        self.add(&CertifiedReal::from_ratio(1, 2).with_policy(self.policy))
            .floor()
    }

    /// Decimal string with `digits` fractional digits; correct to within one
    /// unit in the last place.
    pub fn to_decimal(&self, digits: u32) -> Result<String> {
        let ten_pow = BigInt::from(10).pow(digits);
        let target = BigRational::new(BigInt::one(), &ten_pow * 4);
        let x = self.refine(&target)?;
        let scaled = (x.approx() * BigRational::from_integer(ten_pow.clone())).round().to_integer();
        Ok(format_scaled(&scaled, digits as usize))
    }
}

/// Formats `n / 10^digits` as a decimal string.
pub fn format_scaled(n: &BigInt, digits: usize) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Parses decimal and scientific literals such as `14.8`, `1e16` or
/// `1.6e22` into exact rationals.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a decimal number: {s:?}"));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{int}{frac}0")).map_err(|_| bad())? / 10;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

impl From<i64> for CertifiedReal {
    fn from(n: i64) -> Self {
        CertifiedReal::from_int(n)
    }
}

impl From<BigRational> for CertifiedReal {
    fn from(q: BigRational) -> Self {
        CertifiedReal::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn two_pow_neg(bits: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << bits)
    }

    #[test]
    fn exact_integer_addition() {
        let s = CertifiedReal::from_int(1).add(&CertifiedReal::from_int(1));
        assert_eq!(s.approx(), q(2, 1));
        assert!(s.err().is_zero());
    }

    #[test]
    fn multiplication_by_exact_zero_is_exact_zero() {
        let x = CertifiedReal::from_int(2).sqrt().unwrap();
        let z = x.mul(&CertifiedReal::from_int(0));
        assert!(z.approx().is_zero());
        assert!(z.err().is_zero());
    }

    #[test]
    fn one_third() {
        let x = CertifiedReal::from_int(1)
            .div(&CertifiedReal::from_int(3))
            .unwrap();
        assert!(x.err() <= two_pow_neg(64));
        assert!(x.lower() <= q(1, 3) && q(1, 3) <= x.upper());
    }

    #[test]
    fn division_by_zero_fails_at_cap() {
        let zero = CertifiedReal::from_int(2)
            .sqrt()
            .unwrap()
            .powi(2)
            .sub(&CertifiedReal::from_int(2))
            .with_policy(PrecisionPolicy::new(64, 256, 2).unwrap());
        let err = CertifiedReal::from_int(1).div(&zero).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision { .. }));
    }

    #[test]
    fn log_one_and_sqrt_four() {
        let l = CertifiedReal::from_int(1).log().unwrap();
        assert!(l.lower() <= q(0, 1) && q(0, 1) <= l.upper());
        assert!(l.err() <= two_pow_neg(64));
        let s = CertifiedReal::from_int(4).sqrt().unwrap();
        assert!(s.lower() <= q(2, 1) && q(2, 1) <= s.upper());
        assert!(s.err() <= two_pow_neg(64));
    }

    #[test]
    fn domain_errors_name_the_operation() {
        match CertifiedReal::from_int(-2).log() {
            Err(Error::Domain { op, .. }) => assert_eq!(op, "log"),
            other => panic!("expected domain error, got {other:?}"),
        }
        match CertifiedReal::from_int(-2).sqrt() {
            Err(Error::Domain { op, .. }) => assert_eq!(op, "sqrt"),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn refine_reaches_target_and_never_widens() {
        let x = CertifiedReal::from_int(10).log().unwrap().mul(&CertifiedReal::from_int(3).sqrt().unwrap());
        let target = two_pow_neg(1000);
        let y = x.refine(&target).unwrap();
        assert!(y.err() <= target);
        assert!(y.err() <= x.err());
        let z = y.refine(&two_pow_neg(10)).unwrap();
        assert_eq!(z.err(), y.err());
    }

    #[test]
    fn exp_inverts_log() {
        let x = CertifiedReal::from_ratio(184, 100);
        let back = x.log().unwrap().exp().refine_bits(150).unwrap();
        assert!(back.lower() <= q(184, 100) && q(184, 100) <= back.upper());
    }

    #[test]
    fn cbrt_of_cube() {
        let c = CertifiedReal::from_int(-27).cbrt();
        assert!(c.lower() <= q(-3, 1) && q(-3, 1) <= c.upper());
    }

    #[test]
    fn nearest_integer_distance() {
        let x = CertifiedReal::from_rational(q(5, 2) - BigRational::new(1.into(), BigInt::from(10).pow(9u32)));
        let d = x.dist_to_nearest_integer();
        let expect = q(1, 2) - BigRational::new(1.into(), BigInt::from(10).pow(9u32));
        assert!(d.lower() <= expect && expect <= d.upper());
        assert!(d.err() < BigRational::new(1.into(), BigInt::from(10).pow(30u32)));

        let d = CertifiedReal::from_int(7).dist_to_nearest_integer();
        assert!(d.approx().is_zero() && d.err().is_zero());
    }

    #[test]
    fn comparisons_and_floor() {
        let s2 = CertifiedReal::from_int(2).sqrt().unwrap();
        assert!(s2.lt_rational(&q(1415, 1000)).unwrap());
        assert!(s2.gt_rational(&q(1414, 1000)).unwrap());
        assert_eq!(s2.floor().unwrap(), BigInt::from(1));
        assert_eq!(s2.mul_int(1000).round().unwrap(), BigInt::from(1414));
        let one = CertifiedReal::from_int(1);
        assert!(one.le(&one.powi(0)).unwrap());
    }

    #[test]
    fn polynomial_root_of_two() {
        let r = CertifiedReal::polynomial_root(&[-2, 0, 1], q(1, 1), q(2, 1), PrecisionPolicy::default()).unwrap();
        let s = CertifiedReal::from_int(2).sqrt().unwrap();
        let d = r.sub(&s).refine_bits(180).unwrap();
        assert!(d.lower() <= q(0, 1) && q(0, 1) <= d.upper());
    }

    #[test]
    fn decimal_round_trip() {
        assert_eq!(parse_decimal("14.8").unwrap(), q(148, 10));
        assert_eq!(parse_decimal("1e16").unwrap(), BigRational::from_integer(BigInt::from(10).pow(16u32)));
        assert_eq!(parse_decimal("1.6e22").unwrap(), BigRational::from_integer(BigInt::from(16) * BigInt::from(10).pow(21u32)));
        assert_eq!(parse_decimal("-0.25").unwrap(), q(-1, 4));
        assert!(parse_decimal("abc").is_err());
        let third = CertifiedReal::from_ratio(1, 3);
        assert_eq!(third.to_decimal(5).unwrap(), "0.33333");
    }

    #[test]
    fn deterministic_evaluation() {
        let a = CertifiedReal::from_int(7).log().unwrap().refine_bits(500).unwrap();
        let b = CertifiedReal::from_int(7).log().unwrap().refine_bits(500).unwrap();
        assert_eq!(a.ball(), b.ball());
    }
}
