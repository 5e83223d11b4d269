//! Suite runners: each maps a subcommand onto engine operations and
//! collects per-check records.

use edaha::freealgebra::{certificate_check, certificates_matching, RelatorId};
use edaha::freegroup::{words_of_length, words_up_to_length, FreeWord};
use edaha::laumon;
use edaha::numeric::{NumericPolicy, Tier};
use edaha::operators;
use edaha::report::{CheckRecord, PolicyEcho, SuiteReport};
use edaha::representation::{self, RepCache};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn record(id: String, pass: bool, tier: Tier, residual: f64, ms: u128) -> CheckRecord {
    match tier {
        Tier::Symbolic => CheckRecord { id, tier: "symbolic".into(), residual: 0.0, pass, ms },
        Tier::Numeric => CheckRecord { id, tier: "numeric".into(), residual, pass, ms },
    }
}

pub fn sl2z(policy: &NumericPolicy) -> SuiteReport {
    let mut report = SuiteReport::new("sl2z", PolicyEcho::from(policy));
    let t = std::time::Instant::now();
    match operators::check_braid(policy) {
        Ok(out) => {
            report.push(record(
                "braid: DA DB DA = kappa DB DA DB".to_string(),
                out.entries.is_zero && out.kappa_ps_free && out.shift_match,
                out.entries.tier,
                out.entries.max_residual,
                t.elapsed().as_millis(),
            ));
        }
        Err(e) => {
            report.push(CheckRecord::symbolic(format!("braid: {:?}", e), false, t.elapsed().as_millis()));
        }
    }
    let t = std::time::Instant::now();
    let residual = operators::braid_numeric_residual(policy, 3).unwrap_or(f64::INFINITY);
    report.push(CheckRecord::numeric(
        "braid numeric certification (3 points)",
        residual,
        residual < 1e-25,
        t.elapsed().as_millis(),
    ));
    let t = std::time::Instant::now();
    let s2 = operators::check_s_squared().is_ok();
    report.push(CheckRecord::symbolic("S-hat squared matches the diagonal form", s2, t.elapsed().as_millis()));
    let t = std::time::Instant::now();
    let s4 = operators::check_s_fourth();
    report.push(CheckRecord::symbolic("S-hat fourth power = 16 Q^-16 Id", s4, t.elapsed().as_millis()));
    report
}

fn tuples(arity: usize, total: u64) -> Vec<Vec<FreeWord>> {
    fn rec(arity: usize, total: u64) -> Vec<Vec<FreeWord>> {
        if arity == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for l in 0..=total {
            for w in words_of_length(l) {
                for mut rest in rec(arity - 1, total - l) {
                    rest.insert(0, w.clone());
                    out.push(rest);
                }
            }
        }
        out
    }
    (0..=total).flat_map(|t| rec(arity, t)).collect()
}

pub fn relations(policy: &NumericPolicy, max_total_len: u64, random: u32) -> SuiteReport {
    let mut report = SuiteReport::new("relations", PolicyEcho::from(policy));
    let mut cache = RepCache::new();
    for id in RelatorId::all() {
        let t = std::time::Instant::now();
        let mut pass = true;
        let mut tier = Tier::Symbolic;
        let mut residual = 0.0f64;
        let mut count = 0usize;
        for words in tuples(id.arity(), max_total_len) {
            match representation::verify_relator_instance(id, &words, &mut cache, policy) {
                Ok(out) => {
                    pass &= out.zero.is_zero;
                    if out.zero.tier == Tier::Numeric {
                        tier = Tier::Numeric;
                        residual = residual.max(out.zero.max_residual);
                    }
                }
                Err(e) => {
                    report.push(CheckRecord::symbolic(format!("{}: {:?}", id.name(), e), false, 0));
                    pass = false;
                }
            }
            count += 1;
        }
        report.push(record(
            format!("{}: {} instances, total length <= {}", id.name(), count, max_total_len),
            pass,
            tier,
            residual,
            t.elapsed().as_millis(),
        ));
    }
    // Seeded random tuples of total length <= 4.
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let all_ids = RelatorId::all();
    let t = std::time::Instant::now();
    let mut pass = true;
    let mut tier = Tier::Symbolic;
    let mut residual = 0.0f64;
    for _ in 0..random {
        let id = all_ids[rng.gen_range(0..all_ids.len())];
        let total = rng.gen_range(3..=4u64);
        let mut words = Vec::new();
        let mut left = total;
        for k in 0..id.arity() {
            let take = if k + 1 == id.arity() { left } else { rng.gen_range(0..=left) };
            left -= take;
            let opts = words_of_length(take);
            words.push(opts[rng.gen_range(0..opts.len())].clone());
        }
        match representation::verify_relator_instance(id, &words, &mut cache, policy) {
            Ok(out) => {
                pass &= out.zero.is_zero;
                if out.zero.tier == Tier::Numeric {
                    tier = Tier::Numeric;
                    residual = residual.max(out.zero.max_residual);
                }
            }
            Err(_) => pass = false,
        }
    }
    report.push(record(
        format!("{} seeded random tuples, total length <= 4", random),
        pass,
        tier,
        residual,
        t.elapsed().as_millis(),
    ));
    report
}

pub fn shifts(policy: &NumericPolicy, max_word_len: u64, max_b_len: u64) -> SuiteReport {
    let mut report = SuiteReport::new("shifts", PolicyEcho::from(policy));
    let mut cache = RepCache::new();
    let t = std::time::Instant::now();
    let mut pass = true;
    for g in words_up_to_length(max_word_len) {
        pass &= representation::verify_shift_a(&g, &mut cache);
    }
    report.push(CheckRecord::symbolic(
        format!("a-shift O_X^(ga)(p,s) = O_X^(g)(ps,s), |g| <= {}", max_word_len),
        pass,
        t.elapsed().as_millis(),
    ));
    let t = std::time::Instant::now();
    let mut pass = true;
    let mut tier = Tier::Symbolic;
    let mut residual = 0.0f64;
    for g in words_up_to_length(max_b_len) {
        match representation::verify_shift_b(&g, &mut cache, policy) {
            Ok(rep) => {
                pass &= rep.is_zero;
                if rep.tier == Tier::Numeric {
                    tier = Tier::Numeric;
                    residual = residual.max(rep.max_residual);
                }
            }
            Err(_) => pass = false,
        }
    }
    report.push(record(
        format!("b-shift cross-multiplied identity, |g| <= {}", max_b_len),
        pass,
        tier,
        residual,
        t.elapsed().as_millis(),
    ));
    report
}

pub fn equivariance(policy: &NumericPolicy, max_word_len: u64) -> SuiteReport {
    let mut report = SuiteReport::new("equivariance", PolicyEcho::from(policy));
    let mut cache = RepCache::new();
    for (name, f) in [
        (
            "Dehn-twist equivariance (both lines)",
            representation::verify_equivariance_a
                as fn(&FreeWord, &mut RepCache, &NumericPolicy) -> _,
        ),
        ("S-hat conjugation flips the families", representation::verify_s_conjugation),
    ] {
        let t = std::time::Instant::now();
        let mut pass = true;
        let mut tier = Tier::Symbolic;
        let mut residual = 0.0f64;
        for g in words_up_to_length(max_word_len) {
            match f(&g, &mut cache, policy) {
                Ok(rep) => {
                    pass &= rep.is_zero;
                    if rep.tier == Tier::Numeric {
                        tier = Tier::Numeric;
                        residual = residual.max(rep.max_residual);
                    }
                }
                Err(_) => pass = false,
            }
        }
        report.push(record(
            format!("{}, |g| <= {}", name, max_word_len),
            pass,
            tier,
            residual,
            t.elapsed().as_millis(),
        ));
    }
    report
}

pub fn appendix(policy: &NumericPolicy, family: Option<&str>) -> SuiteReport {
    let mut report = SuiteReport::new("appendix", PolicyEcho::from(policy));
    let prefix = match family {
        Some(f) if f.starts_with('R') => format!("a_{}", f),
        Some(f) => f.to_string(),
        None => String::new(),
    };
    for cert in certificates_matching(&prefix) {
        let t = std::time::Instant::now();
        let pass = certificate_check(&cert).is_ok();
        report.push(CheckRecord::symbolic(cert.name.clone(), pass, t.elapsed().as_millis()));
    }
    if report.checks.is_empty() {
        report.push(CheckRecord::symbolic(
            format!("no certificates match `{}`", prefix),
            false,
            0,
        ));
    }
    report
}

pub fn casimir(policy: &NumericPolicy) -> SuiteReport {
    let mut report = SuiteReport::new("casimir", PolicyEcho::from(policy));
    for cert in certificates_matching("casimir_") {
        let t = std::time::Instant::now();
        let pass = certificate_check(&cert).is_ok();
        report.push(CheckRecord::symbolic(cert.name.clone(), pass, t.elapsed().as_millis()));
    }
    report
}

pub fn psi0(policy: &NumericPolicy) -> SuiteReport {
    let mut report = SuiteReport::new("psi0", PolicyEcho::from(policy));
    let t = std::time::Instant::now();
    report.push(CheckRecord::symbolic(
        "Psi0 satisfies the quotient defining relations",
        representation::psi0_relations_hold(),
        t.elapsed().as_millis(),
    ));
    let t = std::time::Instant::now();
    let rank = representation::psi0_spanning_rank();
    report.push(CheckRecord::symbolic(
        format!("nine spanning elements have rank {} (want 9)", rank),
        rank == 9,
        t.elapsed().as_millis(),
    ));
    let t = std::time::Instant::now();
    let limit_ok = representation::ob1_p_to_zero_limit()
        .sub(&representation::psi0_ob())
        .is_zero_symbolic();
    report.push(CheckRecord::symbolic(
        "p -> 0 limit of O_B^(1) equals Psi0(O_B)",
        limit_ok,
        t.elapsed().as_millis(),
    ));
    report
}

pub fn laumon_check(policy: &NumericPolicy, i: usize, j: usize) -> SuiteReport {
    let mut report = SuiteReport::new("laumon-check", PolicyEcho::from(policy));
    let t = std::time::Instant::now();
    let out = laumon::conjecture_check(i, j, policy, policy.tol);
    report.push(CheckRecord::numeric(
        format!(
            "|f-specialization - psi_{}{}| (stabilization drift {:.1e})",
            i, j, out.drift
        ),
        out.residual,
        out.pass,
        t.elapsed().as_millis(),
    ));
    report
}

pub fn laumon_eigen(policy: &NumericPolicy, k: Option<usize>) -> SuiteReport {
    let mut report = SuiteReport::new("laumon-eigen", PolicyEcho::from(policy));
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => vec![1, 2, 3],
    };
    for k in ks {
        let t = std::time::Instant::now();
        match laumon::eigen_relation_check(k, policy) {
            Ok(rows) => {
                for (i, rep) in rows.iter().enumerate() {
                    report.push(record(
                        format!("eigen-relation k={} row {}", k, i + 1),
                        rep.is_zero,
                        rep.tier,
                        rep.max_residual,
                        t.elapsed().as_millis(),
                    ));
                }
            }
            Err(e) => {
                report.push(CheckRecord::symbolic(
                    format!("eigen-relation k={}: {:?}", k, e),
                    false,
                    t.elapsed().as_millis(),
                ));
            }
        }
    }
    report
}
