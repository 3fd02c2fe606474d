//! Squarefree decomposition `n = d * y^2`.
//!
//! Trial division removes every prime below the trial limit; the remaining
//! cofactor is handled by primality and square tests, then Pollard-Brent rho
//! under an iteration budget. When the budget runs out the decomposition is
//! returned with `complete = false` and the unsplit part left inside `d`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::serde_util::biguint_str;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoringEffort {
    /// Primes below this bound are removed by trial division.
    pub trial_limit: u32,
    /// Total Pollard rho iterations allowed per input.
    pub rho_iterations: u64,
}

impl Default for FactoringEffort {
    fn default() -> Self {
        FactoringEffort {
            trial_limit: 1_000_000,
            rho_iterations: 200_000,
        }
    }
}

/// Accepts `default`, `trial-only`, or `TRIAL:RHO` such as `100000:50000`.
impl std::str::FromStr for FactoringEffort {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("factoring effort '{s}': expected default, trial-only or TRIAL:RHO with 2 <= TRIAL <= 1000000"));
        match s {
            "default" => Ok(FactoringEffort::default()),
            "trial-only" => Ok(FactoringEffort::trial_only(FactoringEffort::default().trial_limit)),
            _ => {
                let (t, r) = s.split_once(':').ok_or_else(bad)?;
                let trial_limit: u32 = t.parse().map_err(|_| bad())?;
                if !(2..=1_000_000).contains(&trial_limit) {
                    return Err(bad());
                }
                Ok(FactoringEffort { trial_limit, rho_iterations: r.parse().map_err(|_| bad())? })
            }
        }
    }
}

impl FactoringEffort {
    /// Trial division only, no rho.
    pub fn trial_only(trial_limit: u32) -> Self {
        FactoringEffort {
            trial_limit,
            rho_iterations: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqfreeDecomposition {
    #[serde(with = "biguint_str")]
    pub n: BigUint,
    /// Squarefree part (exactly the squarefree kernel when `complete`).
    #[serde(with = "biguint_str")]
    pub d: BigUint,
    #[serde(with = "biguint_str")]
    pub y: BigUint,
    pub complete: bool,
}

fn small_primes(limit: u32) -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    const SIEVE_MAX: u32 = 1_000_000;
    let all = PRIMES.get_or_init(|| {
        let n = SIEVE_MAX as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    });
    let end = all.partition_point(|&p| p < limit.min(SIEVE_MAX + 1));
    &all[..end]
}

fn pow_mod(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    base.modpow(exp, m)
}

/// Miller-Rabin over the first twenty prime bases; deterministic below
/// 3.3e24 and a strong probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &BASES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(&BigUint::from(a), &d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// once `budget` iterations are used up. The polynomial constants are fixed
/// so results are reproducible.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    const BATCH: u64 = 128;
    for c in 1u32.. {
        if *budget == 0 {
            return None;
        }
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigUint::one();
        let mut q = BigUint::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x.clone_from(&y);
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys.clone_from(&y);
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                *budget = budget.saturating_sub(steps);
                g = q.gcd(n);
                k += steps;
                if *budget == 0 && g.is_one() {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // batch overshot; step back one at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Decompose `n = d * y^2` with `d` squarefree when `complete`.
pub fn sqfree_decompose(n: &BigUint, effort: FactoringEffort) -> SqfreeDecomposition {
    if n.is_zero() {
        return SqfreeDecomposition {
            n: n.clone(),
            d: BigUint::zero(),
            y: BigUint::one(),
            complete: false,
        };
    }
    let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();
    let primes = small_primes(effort.trial_limit);
    for &p in primes {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            factors.insert(pb, e);
        }
    }
    let limit = BigUint::from(primes.last().copied().unwrap_or(1));
    let mut leftover: Vec<BigUint> = Vec::new();
    let mut work = vec![(rest, 1u32)];
    let mut budget = effort.rho_iterations;
    while let Some((m, mult)) = work.pop() {
        if m.is_one() {
            continue;
        }
        if &limit * &limit >= m || is_probable_prime(&m) {
            // below limit^2 with no factor under limit means m is prime
            *factors.entry(m).or_insert(0) += mult;
            continue;
        }
        if let Some(r) = perfect_square_root(&m) {
            work.push((r, 2 * mult));
            continue;
        }
        if &limit * &limit * &limit > m {
            // two distinct primes above the limit
            *factors.entry(m).or_insert(0) += mult;
            continue;
        }
        match pollard_brent(&m, &mut budget) {
            Some(f) => {
                let g = &m / &f;
                work.push((f, mult));
                work.push((g, mult));
            }
            None => leftover.push(m.pow(mult)),
        }
    }
    // Leftover composites might still share a prime found elsewhere.
    let mut unsplit = BigUint::one();
    for mut m in leftover {
        let known: Vec<BigUint> = factors.keys().cloned().collect();
        for p in known {
            while (&m % &p).is_zero() {
                m /= &p;
                *factors.get_mut(&p).unwrap() += 1;
            }
        }
        unsplit *= m;
    }
    let mut d = BigUint::one();
    let mut y = BigUint::one();
    for (p, e) in &factors {
        if e % 2 == 1 {
            d *= p;
        }
        y *= p.pow(e / 2);
    }
    let complete = unsplit.is_one();
    // unsplit has no prime below the trial limit, but may hide squares
    d *= unsplit;
    SqfreeDecomposition {
        n: n.clone(),
        d,
        y,
        complete,
    }
}

/// Trial-division squarefree test, for checking small results.
pub fn is_squarefree_by_trial(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        if m.is_multiple_of(p) {
            m /= p;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(n: u64) -> SqfreeDecomposition {
        sqfree_decompose(&BigUint::from(n), FactoringEffort::default())
    }

    #[test]
    fn worked_examples() {
        let r = dec(112_550_880);
        assert_eq!((r.d, r.y, r.complete), (BigUint::from(7_034_430u32), BigUint::from(4u32), true));
        let r = dec(1);
        assert_eq!((r.d, r.y, r.complete), (BigUint::one(), BigUint::one(), true));
        let r = dec(48);
        assert_eq!((r.d, r.y), (BigUint::from(3u32), BigUint::from(4u32)));
    }

    #[test]
    fn large_prime_square_cofactor() {
        // (1_000_003)^2 * 2
        let p = BigUint::from(1_000_003u64);
        let n = &p * &p * 2u32;
        let r = sqfree_decompose(&n, FactoringEffort::default());
        assert_eq!((r.d, r.y, r.complete), (BigUint::from(2u32), p, true));
    }

    #[test]
    fn rho_splits_semiprime_square() {
        // p^2 q with p, q near 2^40 needs rho (or the square test) beyond trial division
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_627_817u64);
        let n = &p * &p * &q * &q * &q;
        let r = sqfree_decompose(&n, FactoringEffort::default());
        assert!(r.complete);
        assert_eq!(r.d, q.clone());
        assert_eq!(r.y, &p * &q);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_627_817u64);
        let s = BigUint::from(1_099_511_627_837u64);
        let n = &p * &q * &s;
        let r = sqfree_decompose(&n, FactoringEffort::trial_only(1000));
        assert!(!r.complete);
        assert_eq!(&r.d * &r.y * &r.y, n);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(1_000_003u64)));
        assert!(!is_probable_prime(&BigUint::from(1_000_001u64)));
        assert!(!is_probable_prime(&BigUint::from(3_215_031_751u64)));
        assert!(is_squarefree_by_trial(7_034_430));
        assert!(!is_squarefree_by_trial(48));
    }

    #[test]
    fn effort_parsing() {
        assert_eq!("default".parse::<FactoringEffort>().unwrap(), FactoringEffort::default());
        assert_eq!("trial-only".parse::<FactoringEffort>().unwrap().rho_iterations, 0);
        let e: FactoringEffort = "1000:50".parse().unwrap();
        assert_eq!((e.trial_limit, e.rho_iterations), (1000, 50));
        for bad in ["", "lots", "1:5", "2000000:1", "10:x"] {
            assert!(matches!(bad.parse::<FactoringEffort>(), Err(Error::InvalidInput(_))), "{bad}");
        }
    }
}
