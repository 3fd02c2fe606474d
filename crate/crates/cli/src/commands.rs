use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde_json::json;

use pelltrib::contfrac::{expand_terms, expand_until_q_exceeds, CFExpansion};
use pelltrib::factor::sqfree_decompose;
use pelltrib::lfl_bounds::{derive_lemma_jb0, lmn_bound, lmn_max_term, matveev_bound, LMNInput, MatveevInput};
use pelltrib::pell::{delta_from_x1, fundamental, x_coordinate, y_coordinate, PellSign};
use pelltrib::realnum::parse_decimal;
use pelltrib::reduction::{exclusion_statement, reduce, reduce_homogeneous, reduce_with_fallback};
use pelltrib::search::{solve_small, trivial_case_sweep, verify_theorem, ReductionBase, SearchConfig, SweepReport};
use pelltrib::tribonacci::{BinetConstants, TribCache};
use pelltrib::{CertifiedReal, Error, PrecisionPolicy, Result};

use crate::args::{Cli, Command, GlobalArgs, Method, SearchArgs, Sign};
use crate::{render_json, to_json, Report};

fn policy(g: &GlobalArgs) -> Result<PrecisionPolicy> {
    PrecisionPolicy::new(g.precision_bits, g.max_bits, 2)
}

fn biguint(s: &str, what: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("{what} must be a nonnegative integer, got '{s}'")))
}

/// A positive integer written either plainly or as a decimal like `1e16`.
fn integer_like(s: &str, what: &str) -> Result<BigUint> {
    let q = parse_decimal(s)?;
    if !q.is_integer() || !q.is_positive() {
        return Err(Error::InvalidInput(format!("{what} must be a positive integer, got '{s}'")));
    }
    Ok(q.to_integer().to_biguint().expect("positive"))
}

fn real(s: &str, policy: PrecisionPolicy) -> Result<CertifiedReal> {
    Ok(CertifiedReal::from_rational(parse_decimal(s)?).with_policy(policy))
}

fn sign(s: Sign) -> PellSign {
    match s {
        Sign::Plus => PellSign::Plus,
        Sign::Minus => PellSign::Minus,
    }
}

fn decimal(x: &CertifiedReal, digits: u32) -> Result<String> {
    x.to_decimal(digits)
}

fn search_config(g: &GlobalArgs, s: &SearchArgs) -> Result<SearchConfig> {
    let config = SearchConfig {
        m1_max: s.m1_max,
        n1_max: s.n1_max,
        m2_check_max: s.m2_check_max,
        b: ReductionBase::parse(&s.b)?,
        convergent_budget: g.convergent_budget as usize,
        jobs: g.jobs as usize,
        factoring: g.factoring_effort,
        policy: policy(g)?,
        ..SearchConfig::default()
    };
    config.validate()?;
    Ok(config)
}

pub fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Trib { m, to } => trib(*m, *to),
        Command::Constants { digits } => constants(g, *digits),
        Command::PellFundamental { d } => pell_fundamental(g, d),
        Command::PellX { d, n } => pell_x(g, d, *n),
        Command::Sqfree { n } => sqfree(g, n),
        Command::Cf { target, terms, q_above } => cf(g, target, *terms, q_above.as_deref()),
        Command::Matveev { d_l, big_d, heights } => matveev(g, *d_l, big_d, heights),
        Command::Lmn { d_l, log_b1, log_b2, b_prime } => lmn(g, *d_l, log_b1, log_b2, b_prime),
        Command::DeriveBounds => derive_bounds(g),
        Command::Reduce { x1, epsilon, d, m_bound, a, b, method } => {
            reduce_cmd(g, x1.as_deref(), *epsilon, d.as_deref(), m_bound, a, b, *method)
        }
        Command::SolveSmall { search } => solve_small_cmd(g, search),
        Command::TrivialSweep { search } => sweep_cmd(g, search),
        Command::VerifyTheorem { search, json } => verify_cmd(g, search, json.as_deref()),
    }
}

fn trib(m: usize, to: Option<usize>) -> Result<Report> {
    let hi = to.unwrap_or(m);
    if hi < m {
        return Err(Error::InvalidInput(format!("--to {hi} is below m = {m}")));
    }
    let cache = TribCache::new(hi);
    let values: Vec<String> = cache.values()[m..=hi].iter().map(|v| v.to_string()).collect();
    if to.is_none() {
        return Ok(Report::ok(json!({ "m": m, "value": values[0] }), values[0].clone()));
    }
    let text = values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("T_{} = {v}", m + i))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::ok(json!({ "from": m, "to": hi, "values": values }), text))
}

fn constants(g: &GlobalArgs, digits: u32) -> Result<Report> {
    let k = BinetConstants::new(policy(g)?)?;
    let map = k.to_decimal_map(digits)?;
    let growth = k.check_growth_bounds(1000)?;
    let mut text = String::new();
    for (name, v) in &map {
        writeln!(text, "{name:<10} {v}").unwrap();
    }
    writeln!(text, "brackets: 1.83 < alpha < 1.84, 0.73 < |beta| < 0.74, 0.18 < a < 0.19, 0.35 < |b| < 0.36 certified").unwrap();
    writeln!(text, "alpha^(m-2) <= T_m <= alpha^(m-1) certified for 2 <= m <= {}", growth.m_max).unwrap();
    let values: serde_json::Map<String, serde_json::Value> =
        map.into_iter().map(|(k, v)| (k.to_string(), v.into())).collect();
    Ok(Report::ok(json!({ "constants": values, "brackets_certified": true, "growth": to_json(&growth) }), text))
}

fn pell_fundamental(g: &GlobalArgs, d: &str) -> Result<Report> {
    let f = fundamental(&biguint(d, "d")?, policy(g)?)?;
    let text = format!(
        "d = {}\nX1 = {}\nY1 = {}\nepsilon = {}\ndelta = {}",
        f.d,
        f.x1,
        f.y1,
        f.epsilon,
        decimal(&f.delta, 30)?
    );
    Ok(Report::ok(to_json(&f), text))
}

fn pell_x(g: &GlobalArgs, d: &str, n: u64) -> Result<Report> {
    let f = fundamental(&biguint(d, "d")?, policy(g)?)?;
    let x = x_coordinate(&f, n);
    let y = y_coordinate(&f, n);
    let norm = f.epsilon.pow(n);
    let text = format!("X_{n} = {x}\nY_{n} = {y}\nX_{n}^2 - {} Y_{n}^2 = {norm}", f.d);
    Ok(Report::ok(
        json!({ "d": f.d.to_string(), "n": n, "x": x.to_string(), "y": y.to_string(), "norm": norm.value() }),
        text,
    ))
}

fn sqfree(g: &GlobalArgs, n: &str) -> Result<Report> {
    let n = biguint(n, "n")?;
    if n == BigUint::from(0u32) {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let dec = sqfree_decompose(&n, g.factoring_effort);
    let mut text = format!("{} = {} * {}^2", dec.n, dec.d, dec.y);
    if !dec.complete {
        text.push_str("\n(factoring budget exhausted; d may not be squarefree)");
    }
    Ok(Report::ok(to_json(&dec), text))
}

fn cf_target(target: &str, policy: PrecisionPolicy) -> Result<CertifiedReal> {
    let bad = || Error::InvalidInput(format!("unknown target '{target}': use chi, sqrt:N, kappa:X1:EPS or kappa-d:D"));
    let parts: Vec<&str> = target.split(':').collect();
    match parts.as_slice() {
        ["chi"] => Ok(BinetConstants::new(policy)?.chi),
        ["sqrt", n] => {
            let n = biguint(n, "N")?;
            if n.sqrt().pow(2) == n {
                return Err(Error::InvalidInput(format!("sqrt({n}) is rational")));
            }
            CertifiedReal::from_int(BigInt::from(n)).with_policy(policy).sqrt()
        }
        ["kappa", x1, eps] => {
            let eps = PellSign::from_i32(eps.parse().map_err(|_| bad())?)?;
            let delta = delta_from_x1(&biguint(x1, "X1")?, eps, policy)?;
            delta.log()?.div(&BinetConstants::new(policy)?.log_alpha)
        }
        ["kappa-d", d] => {
            let f = fundamental(&biguint(d, "d")?, policy)?;
            f.delta.log()?.div(&BinetConstants::new(policy)?.log_alpha)
        }
        _ => Err(bad()),
    }
}

fn cf(g: &GlobalArgs, target: &str, terms: Option<usize>, q_above: Option<&str>) -> Result<Report> {
    let x = cf_target(target, policy(g)?)?;
    let e: CFExpansion = match (terms, q_above) {
        (_, Some(q)) => expand_until_q_exceeds(&x, &BigInt::from(integer_like(q, "--q-above")?))?,
        (Some(n), None) => expand_terms(&x, n)?,
        (None, None) => expand_terms(&x, 20)?,
    };
    let quotients: Vec<String> = e.quotients().iter().map(|a| a.to_string()).collect();
    let mut text = format!("{target} = [{}]\n", quotients.join(", "));
    for (k, c) in e.convergents().iter().enumerate() {
        writeln!(text, "p_{k}/q_{k} = {}/{}", c.p, c.q).unwrap();
    }
    Ok(Report::ok(
        json!({
            "target": target,
            "value": decimal(&x, 40)?,
            "quotients": quotients,
            "convergents": to_json(&e.convergents()),
        }),
        text,
    ))
}

fn matveev(g: &GlobalArgs, d_l: u32, big_d: &str, heights: &[String]) -> Result<Report> {
    let p = policy(g)?;
    let heights = heights.iter().map(|h| real(h, p)).collect::<Result<Vec<_>>>()?;
    let input = MatveevInput { l: heights.len() as u32, d_l, big_d: real(big_d, p)?, heights };
    let bound = matveev_bound(&input)?;
    let v = decimal(&bound, 6)?;
    Ok(Report::ok(
        json!({ "l": input.l, "d_l": d_l, "log_abs_lambda_lower_bound": v, "approx": bound.to_f64() }),
        format!("log |Lambda| > {v}  (~ {:.6e})", bound.to_f64()),
    ))
}

fn lmn(g: &GlobalArgs, d_l: u32, log_b1: &str, log_b2: &str, b_prime: &str) -> Result<Report> {
    let p = policy(g)?;
    let input = LMNInput { d_l, log_b1: real(log_b1, p)?, log_b2: real(log_b2, p)?, b_prime: real(b_prime, p)? };
    let bound = lmn_bound(&input)?;
    let max_term = lmn_max_term(&input)?;
    let v = decimal(&bound, 6)?;
    Ok(Report::ok(
        json!({ "d_l": d_l, "max_term": decimal(&max_term, 6)?, "log_abs_lambda_lower_bound": v }),
        format!("max term = {}\nlog |Lambda| > {v}", decimal(&max_term, 6)?),
    ))
}

fn derive_bounds(g: &GlobalArgs) -> Result<Report> {
    let p = policy(g)?;
    let bounds = derive_lemma_jb0(&BinetConstants::new(p)?, p)?;
    let mut text = String::new();
    for s in &bounds.steps {
        let tag = if s.certified { "ok  " } else { "FAIL" };
        writeln!(text, "{tag} {:<20} {}  [recomputed {}]", s.name, s.claim, s.recomputed).unwrap();
    }
    writeln!(
        text,
        "m1 <= {}, n2 <= {}, m2 <= {} (certified {}, {}, {})",
        bounds.m1_final, bounds.n2_final, bounds.m2_final, bounds.m1_computed, bounds.n2_computed, bounds.m2_computed
    )
    .unwrap();
    Ok(Report { ok: bounds.all_certified(), json: to_json(&bounds), text })
}

#[allow(clippy::too_many_arguments)]
fn reduce_cmd(
    g: &GlobalArgs,
    x1: Option<&str>,
    epsilon: Sign,
    d: Option<&str>,
    m_bound: &str,
    a: &str,
    b: &str,
    method: Method,
) -> Result<Report> {
    let p = policy(g)?;
    let (x1, eps) = match (x1, d) {
        (Some(x), None) => (biguint(x, "X1")?, sign(epsilon)),
        (None, Some(d)) => {
            let f = fundamental(&biguint(d, "d")?, p)?;
            (f.x1, f.epsilon)
        }
        _ => return Err(Error::InvalidInput("give exactly one of --x1 or --d".into())),
    };
    let config = SearchConfig {
        m_reduction: integer_like(m_bound, "--m-bound")?,
        a: a.to_string(),
        b: ReductionBase::parse(b)?,
        policy: p,
        ..SearchConfig::default()
    };
    config.validate()?;
    let consts = BinetConstants::new(p)?;
    let instance = config.reduction_instance(&consts, &delta_from_x1(&x1, eps, p)?)?;
    let budget = g.convergent_budget as usize;
    let outcome = match method {
        Method::Standard => reduce(&instance, budget)?,
        Method::Homogeneous => reduce_homogeneous(&instance)?,
        Method::Auto => reduce_with_fallback(&instance, budget)?,
    };
    let claim = exclusion_statement(&outcome, &instance);
    let mut text = String::new();
    for t in &outcome.tried {
        writeln!(text, "q_{} = {}: xi in [{:.6}, {:.6}] ({:?})", t.index, t.q, t.xi_lower, t.xi_upper, t.status).unwrap();
    }
    writeln!(text, "{:?} reduction at q_{} = {}", outcome.method, outcome.index, outcome.q).unwrap();
    writeln!(text, "log(A Q / xi) / log B <= {:.4}, so m2 <= {}", outcome.log_ratio, outcome.k_bound - 1).unwrap();
    writeln!(text, "{}", claim.text).unwrap();
    Ok(Report::ok(
        json!({
            "x1": x1.to_string(),
            "epsilon": eps.value(),
            "outcome": to_json(&outcome),
            "claim": to_json(&claim),
        }),
        text,
    ))
}

fn solve_small_cmd(g: &GlobalArgs, s: &SearchArgs) -> Result<Report> {
    let config = search_config(g, s)?;
    let hits = solve_small(&config);
    let mut text = format!("{} solutions with 2 <= n1 <= {}, n1 < m1 <= {}\n", hits.len(), config.n1_max, config.m1_max);
    for h in &hits {
        writeln!(text, "P^{}_{}({}) = T_{}", h.epsilon, h.n1, h.x1, h.m1).unwrap();
    }
    Ok(Report::ok(json!({ "solutions": to_json(&hits) }), text))
}

fn sweep_text(report: &SweepReport) -> String {
    let mut text = String::new();
    for s in &report.skipped {
        writeln!(text, "skip epsilon = {}, m1 = {}: {}", s.epsilon, s.m1, s.reason).unwrap();
    }
    for r in &report.records {
        let d = r.d.as_ref().map_or("unresolved".to_string(), |d| d.to_string());
        let red = r.reduction.as_ref().map_or("none".to_string(), |x| {
            format!("{:?} at q_{}, m2 <= {}", x.method, x.index, x.m2_max)
        });
        writeln!(text, "epsilon = {:>2} X1 = {} d = {} pairs {:?} reduction {} [{:?}]", r.epsilon, r.x1, d, r.pairs, red, r.status).unwrap();
    }
    text
}

fn sweep_cmd(g: &GlobalArgs, s: &SearchArgs) -> Result<Report> {
    let config = search_config(g, s)?;
    let report = trivial_case_sweep(&config, &BinetConstants::new(config.policy)?)?;
    let mut text = sweep_text(&report);
    writeln!(text, "{} instances, {} records, all verified: {}", report.instances, report.records.len(), report.all_verified()).unwrap();
    Ok(Report { ok: report.all_verified(), json: to_json(&report), text })
}

fn verify_cmd(g: &GlobalArgs, s: &SearchArgs, out: Option<&std::path::Path>) -> Result<Report> {
    let config = search_config(g, s)?;
    let report = verify_theorem(&config)?;
    let json = to_json(&report);
    if let Some(path) = out {
        std::fs::write(path, render_json(&json) + "\n")
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut text = String::new();
    writeln!(text, "bound chain certified: m1 <= {}, n2 <= {}, m2 <= {}", report.bounds.m1_final, report.bounds.n2_final, report.bounds.m2_final).unwrap();
    let c = &report.cutoffs;
    writeln!(
        text,
        "chi: max partial quotient {} at index {}, m1 <= {} (real cutoff {:.3}); n1 <= {}",
        c.m1.a_max, c.m1.a_max_index, c.m1.cutoff, c.m1.cutoff_real, c.n1_bound
    )
    .unwrap();
    for h in &report.nontrivial {
        writeln!(text, "nontrivial: P^{}_{}({}) = T_{}", h.epsilon, h.n1, h.x1, h.m1).unwrap();
    }
    for cert in &report.certificates {
        writeln!(text, "certificate {}: q_{} = {}, xi > {:.4}, m2 <= {}", cert.label, cert.reduction.index, cert.reduction.q, cert.reduction.xi_lower, cert.reduction.m2_max).unwrap();
    }
    let verified = report.records.iter().filter(|r| r.status == pelltrib::search::RecordStatus::Verified).count();
    writeln!(text, "{} instances, {} records, {} verified, {} skipped", report.instances, report.records.len(), verified, report.skipped.len()).unwrap();
    for e in &report.exceptional {
        writeln!(text, "exceptional: epsilon = {}, d = {}, (n, m) in {:?}", e.epsilon, e.d, e.pairs).unwrap();
    }
    for a in &report.assumptions {
        writeln!(text, "assumption: {a}").unwrap();
    }
    writeln!(text, "{}", if report.matches_theorem { "MATCH" } else { "MISMATCH" }).unwrap();
    Ok(Report { ok: report.matches_theorem, json, text })
}
