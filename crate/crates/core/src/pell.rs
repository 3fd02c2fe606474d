//! Pell equations `X^2 - dY^2 = ±1`: fundamental solutions, the sequence of
//! X-coordinates, and the polynomials `P^±_n`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::realnum::{CertifiedReal, PrecisionPolicy};
use crate::serde_util::biguint_str;
use crate::tribonacci::BinetConstants;

pub use crate::factor::{sqfree_decompose, FactoringEffort, SqfreeDecomposition};

/// The right-hand side `±1` of a Pell equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PellSign {
    Minus,
    Plus,
}

impl PellSign {
    pub fn value(self) -> i32 {
        match self {
            PellSign::Plus => 1,
            PellSign::Minus => -1,
        }
    }

    pub fn from_i32(v: i32) -> Result<Self> {
        match v {
            1 => Ok(PellSign::Plus),
            -1 => Ok(PellSign::Minus),
            _ => Err(Error::InvalidInput(format!("epsilon must be +1 or -1, got {v}"))),
        }
    }

    /// `epsilon^n`.
    pub fn pow(self, n: u64) -> PellSign {
        if self == PellSign::Minus && n % 2 == 1 {
            PellSign::Minus
        } else {
            PellSign::Plus
        }
    }
}

impl fmt::Display for PellSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PellSign::Plus => "+1",
            PellSign::Minus => "-1",
        })
    }
}

impl Serialize for PellSign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

fn serialize_real<S: Serializer>(x: &CertifiedReal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_decimal(30).map_err(serde::ser::Error::custom)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct FundamentalSolution {
    #[serde(with = "biguint_str")]
    pub d: BigUint,
    #[serde(with = "biguint_str")]
    pub x1: BigUint,
    #[serde(with = "biguint_str")]
    pub y1: BigUint,
    pub epsilon: PellSign,
    /// `X1 + Y1 sqrt(d)`.
    #[serde(serialize_with = "serialize_real")]
    pub delta: CertifiedReal,
}

impl FundamentalSolution {
    /// Builds the solution from a known `(X1, Y1)`, checking the Pell identity.
    pub fn from_parts(d: BigUint, x1: BigUint, y1: BigUint, policy: PrecisionPolicy) -> Result<Self> {
        let lhs = BigInt::from(&x1 * &x1) - BigInt::from(&d * &y1 * &y1);
        let epsilon = if lhs.is_one() {
            PellSign::Plus
        } else if lhs == -BigInt::one() {
            PellSign::Minus
        } else {
            return Err(Error::InvalidInput(format!(
                "{x1}^2 - {d}*{y1}^2 = {lhs} is not ±1"
            )));
        };
        let delta = CertifiedReal::from_int(BigInt::from(d.clone()))
            .with_policy(policy)
            .sqrt()?
            .mul_int(BigInt::from(y1.clone()))
            .add(&CertifiedReal::from_int(BigInt::from(x1.clone())));
        Ok(FundamentalSolution { d, x1, y1, epsilon, delta })
    }

    /// `eta = X1 - Y1 sqrt(d) = epsilon / delta`.
    pub fn eta(&self) -> Result<CertifiedReal> {
        let r = self.delta.recip()?;
        Ok(match self.epsilon {
            PellSign::Plus => r,
            PellSign::Minus => r.neg(),
        })
    }

    /// Iterator over `(n, X_n, Y_n)` starting at `n = 0`.
    pub fn solutions(&self) -> PellSolutions {
        PellSolutions {
            x1: BigInt::from(self.x1.clone()),
            eps: self.epsilon.value(),
            n: 0,
            x: (BigInt::one(), BigInt::from(self.x1.clone())),
            y: (BigInt::zero(), BigInt::from(self.y1.clone())),
        }
    }
}

/// Companion recurrences `Z_{n+1} = 2 X1 Z_n - epsilon Z_{n-1}` for both
/// coordinates.
#[derive(Debug, Clone)]
pub struct PellSolutions {
    x1: BigInt,
    eps: i32,
    n: u64,
    x: (BigInt, BigInt),
    y: (BigInt, BigInt),
}

impl Iterator for PellSolutions {
    type Item = (u64, BigUint, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        let item = (
            self.n,
            self.x.0.magnitude().clone(),
            self.y.0.magnitude().clone(),
        );
        let step = |(a, b): &(BigInt, BigInt)| {
            let c = BigInt::from(2) * &self.x1 * b - BigInt::from(self.eps) * a;
            (b.clone(), c)
        };
        self.x = step(&self.x);
        self.y = step(&self.y);
        self.n += 1;
        Some(item)
    }
}

/// X-coordinates `X_0 = 1, X_1, X_2, ...` generated from `X1` and `epsilon`
/// alone; `d` is never needed.
pub fn x_sequence(x1: &BigUint, epsilon: PellSign) -> impl Iterator<Item = BigUint> {
    let x1 = BigInt::from(x1.clone());
    let eps = BigInt::from(epsilon.value());
    let mut state = (BigInt::one(), x1.clone());
    std::iter::from_fn(move || {
        let out = state.0.magnitude().clone();
        let next = BigInt::from(2) * &x1 * &state.1 - &eps * &state.0;
        state = (std::mem::take(&mut state.1), next);
        Some(out)
    })
}

/// `delta = X1 + sqrt(X1^2 - epsilon)`, for `X1` given without `d`.
pub fn delta_from_x1(x1: &BigUint, epsilon: PellSign, policy: PrecisionPolicy) -> Result<CertifiedReal> {
    let disc = BigInt::from(x1 * x1) - BigInt::from(epsilon.value());
    if !disc.is_positive() {
        return Err(Error::InvalidInput(format!("{x1}^2 - ({epsilon}) is not positive")));
    }
    let root = disc.sqrt();
    if &root * &root == disc {
        return Err(Error::InvalidInput(format!("{x1}^2 - ({epsilon}) is a perfect square")));
    }
    Ok(CertifiedReal::from_int(disc)
        .with_policy(policy)
        .sqrt()?
        .add(&CertifiedReal::from_int(BigInt::from(x1.clone()))))
}

/// Smallest positive solution of `X^2 - dY^2 = ±1`, read off the periodic
/// continued fraction of `sqrt(d)`.
pub fn fundamental(d: &BigUint, policy: PrecisionPolicy) -> Result<FundamentalSolution> {
    let a0 = d.sqrt();
    if &a0 * &a0 == *d {
        return Err(Error::Domain {
            op: "fundamental",
            interval: format!("d = {d} is a perfect square"),
        });
    }
    let dd = BigInt::from(d.clone());
    let a0 = BigInt::from(a0);
    // sqrt(d) = [a0; a1, a2, ...] via (m_k + sqrt d) / q_k
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut s_prev, mut s) = (BigInt::zero(), BigInt::one());
    loop {
        let norm = &p * &p - &dd * &s * &s;
        if norm.abs().is_one() {
            return FundamentalSolution::from_parts(
                d.clone(),
                p.magnitude().clone(),
                s.magnitude().clone(),
                policy,
            );
        }
        m = &q * &a - &m;
        q = (&dd - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let p_next = &a * &p + &p_prev;
        let s_next = &a * &s + &s_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        s_prev = std::mem::replace(&mut s, s_next);
    }
}

/// `X_n` for the given fundamental solution.
pub fn x_coordinate(fund: &FundamentalSolution, n: u64) -> BigUint {
    x_sequence(&fund.x1, fund.epsilon)
        .nth(n as usize)
        .expect("x_sequence is infinite")
}

/// `Y_n` for the given fundamental solution.
pub fn y_coordinate(fund: &FundamentalSolution, n: u64) -> BigUint {
    fund.solutions().nth(n as usize).expect("infinite").2
}

fn p_poly(n: u64, x: &BigUint, sign: i32) -> BigInt {
    let x = BigInt::from(x.clone());
    let (mut u0, mut u1) = (BigInt::one(), x.clone());
    if n == 0 {
        return u0;
    }
    for _ in 1..n {
        let u2 = BigInt::from(2) * &x * &u1 - sign * &u0;
        u0 = std::mem::replace(&mut u1, u2);
    }
    u1
}

/// `P^+_n(x) = ((x + sqrt(x^2-1))^n + (x - sqrt(x^2-1))^n) / 2`.
pub fn p_plus(n: u64, x: &BigUint) -> BigUint {
    // nonnegative for x >= 1; x = 0 gives cos(n pi / 2) which may be negative
    p_poly(n, x, 1).magnitude().clone()
}

/// `P^-_n(x) = ((x + sqrt(x^2+1))^n + (x - sqrt(x^2+1))^n) / 2`.
pub fn p_minus(n: u64, x: &BigUint) -> BigInt {
    p_poly(n, x, -1)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DeltaBoundEntry {
    pub n: u64,
    /// `delta^n / alpha <= X_n`.
    pub lower_holds: bool,
    /// `X_n < delta^n`.
    pub upper_holds: bool,
    /// `delta^n / alpha^2 <= X_n`, the weaker bound that always holds.
    pub weak_lower_holds: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DeltaBoundsReport {
    pub entries: Vec<DeltaBoundEntry>,
    /// Indices where `delta^n / alpha <= X_n` fails.
    pub lower_deviations: Vec<u64>,
    pub upper_violations: Vec<u64>,
    pub weak_lower_violations: Vec<u64>,
}

impl DeltaBoundsReport {
    /// The bounds used downstream (upper, and the weak lower one) hold.
    pub fn sound(&self) -> bool {
        self.upper_violations.is_empty() && self.weak_lower_violations.is_empty()
    }
}

/// Evaluates `delta^n / alpha <= X_n < delta^n` for `1 <= n <= n_max`.
/// Deviations are reported rather than raised.
pub fn delta_bounds_check(
    fund: &FundamentalSolution,
    consts: &BinetConstants,
    n_max: u64,
) -> Result<DeltaBoundsReport> {
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut report = DeltaBoundsReport {
        entries: Vec::new(),
        lower_deviations: Vec::new(),
        upper_violations: Vec::new(),
        weak_lower_violations: Vec::new(),
    };
    let alpha = &consts.alpha;
    let alpha2 = alpha.powi(2);
    for (n, xn) in x_sequence(&fund.x1, fund.epsilon).enumerate().skip(1).take(n_max as usize) {
        let n = n as u64;
        let xn = CertifiedReal::from_int(BigInt::from(xn));
        let dn = fund.delta.powi(n as u32);
        let entry = DeltaBoundEntry {
            n,
            lower_holds: dn.div(alpha)?.le(&xn)?,
            upper_holds: xn.lt(&dn)?,
            weak_lower_holds: dn.div(&alpha2)?.le(&xn)?,
        };
        if !entry.lower_holds {
            report.lower_deviations.push(n);
        }
        if !entry.upper_holds {
            report.upper_violations.push(n);
        }
        if !entry.weak_lower_holds {
            report.weak_lower_violations.push(n);
        }
        report.entries.push(entry);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Roots;

    fn fund(d: u32) -> FundamentalSolution {
        fundamental(&BigUint::from(d), PrecisionPolicy::default()).unwrap()
    }

    fn triple(f: &FundamentalSolution) -> (u64, u64, i32) {
        (
            f.x1.to_string().parse().unwrap(),
            f.y1.to_string().parse().unwrap(),
            f.epsilon.value(),
        )
    }

    #[test]
    fn small_fundamentals() {
        assert_eq!(triple(&fund(2)), (1, 1, -1));
        assert_eq!(triple(&fund(3)), (2, 1, 1));
        assert_eq!(triple(&fund(7)), (8, 3, 1));
        assert_eq!(triple(&fund(5)), (2, 1, -1));
        assert_eq!(triple(&fund(61)), (29718, 3805, -1));
        assert!(fundamental(&BigUint::from(49u32), PrecisionPolicy::default()).is_err());
    }

    #[test]
    fn brute_force_minimality() {
        for d in 2u64..60 {
            let r = d.sqrt();
            if r * r == d {
                continue;
            }
            let f = fund(d as u32);
            let (x1, _, _) = triple(&f);
            let brute = (1u64..)
                .find(|&y| {
                    let v = d * y * y;
                    [v - 1, v + 1].iter().any(|&t| t.sqrt().pow(2) == t)
                })
                .map(|y| {
                    let v = d * y * y;
                    if (v - 1).sqrt().pow(2) == v - 1 { (v - 1).sqrt() } else { (v + 1).sqrt() }
                })
                .unwrap();
            assert_eq!(x1, brute, "d = {d}");
        }
    }

    #[test]
    fn x_coordinates() {
        assert_eq!(x_coordinate(&fund(2), 3), BigUint::from(7u32));
        assert_eq!(x_coordinate(&fund(3), 2), BigUint::from(7u32));
        assert_eq!(x_coordinate(&fund(2), 2), BigUint::from(3u32));
        assert_eq!(y_coordinate(&fund(2), 2), BigUint::from(2u32));
    }

    #[test]
    fn p_polynomials() {
        assert_eq!(p_plus(2, &BigUint::from(2u32)), BigUint::from(7u32));
        assert_eq!(p_minus(3, &BigUint::one()), BigInt::from(7));
        for x in 1u32..20 {
            assert_eq!(p_plus(1, &BigUint::from(x)), BigUint::from(x));
        }
    }

    #[test]
    fn delta_bounds_report_deviations() {
        let consts = BinetConstants::new(PrecisionPolicy::default()).unwrap();
        for d in [2u32, 3] {
            let r = delta_bounds_check(&fund(d), &consts, 12).unwrap();
            assert!(r.sound());
            assert!(!r.lower_deviations.is_empty());
        }
    }
}
