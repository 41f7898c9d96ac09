//! Acceptance gate: one line per criterion, then a single hard assertion.

use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use fmhs_core::exact::{rat, Scalar, Series, TPoly};
use fmhs_core::genfun::closed::{eval_constant_index, g_sum_kl, kpow_generating, sum_formula, xi_ones_coeff, SumForm};
use fmhs_core::genfun::identity::{verify_phi_system, IdentityReport, Params, Status};
use fmhs_core::genfun::psi::psi_from_u;
use fmhs_core::genfun::psi_bruteforce;
use fmhs_core::indices::MultiIndex;
use fmhs_core::qseries::{z_t_float, Evaluator, SeriesParams};
use fmhs_core::suite::{run_suite, SuiteConfig, SuiteSummary};

const PRODUCT_BUDGET: Duration = Duration::from_secs(30);
const SUITE_BUDGET: Duration = Duration::from_secs(120);
const MEMORY_BUDGET_KIB: u64 = 9 * 1024 * 1024;
const XI_REL_TOL: f64 = 0.1;
const XI_N_SMALL: u32 = 50;
const XI_N_LARGE: u32 = 400;

/// Bypasses the harness capture so the gate lines show on every run.
fn say(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

struct Gate {
    results: Vec<(u32, bool)>,
}

impl Gate {
    fn record(&mut self, id: u32, ok: bool, what: &str, detail: String) {
        say(&format!("criterion {id:>2}: {}  {what} [{detail}]", if ok { "PASS" } else { "FAIL" }));
        self.results.push((id, ok));
    }
}

fn suite(ids: &[&str], n: Option<(u32, u32)>, r: Option<&[u32]>, q: Option<&[&str]>, cap: Option<i32>) -> SuiteSummary {
    let cfg = SuiteConfig {
        ids: ids.iter().map(|s| s.to_string()).collect(),
        n: n.map(|(a, b)| a..=b),
        r: r.map(<[u32]>::to_vec),
        q: q.map(|qs| qs.iter().map(|s| s.to_string()).collect()),
        max_cap: cap,
        ..Default::default()
    };
    run_suite(&cfg).expect("suite config is valid")
}

fn first_failure(reports: &[IdentityReport]) -> String {
    reports
        .iter()
        .find(|r| r.status == Status::Fail)
        .map_or_else(String::new, |r| format!("; first failure {} {} {:?}", r.identity, r.params, r.mismatch))
}

fn all_pass(s: &SuiteSummary) -> (bool, String) {
    let ok = s.failed == 0 && s.skipped == 0 && s.passed > 0;
    (ok, format!("{}{}", s.line(), first_failure(&s.reports)))
}

fn rational_poly(p: &TPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_rational().is_some())
}

fn rational_series(s: &Series<TPoly>) -> bool {
    s.terms().all(|(_, c)| rational_poly(c))
}

fn zeta(n: u32) -> Evaluator {
    Evaluator::new(SeriesParams::zeta(n).unwrap())
}

fn t_eval(p: &TPoly, t: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * t + c.is_rational().expect("rational").to_f64().unwrap())
}

fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

#[test]
fn acceptance() {
    let mut gate = Gate { results: Vec::new() };

    // 1
    let start = Instant::now();
    let s = suite(&["thm1_1"], Some((2, 5)), Some(&[1, 2]), Some(&["zeta", "1/2", "2", "-3", "5/7"]), Some(4));
    let took = start.elapsed();
    let (ok, detail) = all_pass(&s);
    gate.record(
        1,
        ok && s.passed == 40 && took < PRODUCT_BUDGET,
        "product formula equals brute force, r 1..2, n 2..5, five q, cap 4",
        format!("{detail}; {:.2}s of {}s", took.as_secs_f64(), PRODUCT_BUDGET.as_secs()),
    );

    // 2
    let s = suite(&["thm1_3"], Some((2, 6)), None, None, Some(5));
    let (ok, detail) = all_pass(&s);
    gate.record(2, ok && s.passed == 5, "U ratio equals brute force, r 1, n 2..6, cap 5", detail);

    // 3
    let s = suite(&["cor1_4_triple"], Some((2, 6)), None, None, None);
    let (ok, detail) = all_pass(&s);
    let third = Scalar::from(rat(1, 3));
    let spot = TPoly::from_coeffs(vec![third.clone(), third]);
    let ev3 = zeta(3);
    let spot_ok = g_sum_kl(&ev3, 2, 2).unwrap() == spot
        && sum_formula(&ev3, 2, 2, SumForm::Binomial).unwrap() == spot
        && sum_formula(&ev3, 2, 2, SumForm::DepthOne).unwrap() == spot;
    gate.record(
        3,
        ok && s.passed == 35 && spot_ok,
        "two sum formulas equal the G-sum, n 2..6, k 0..6, all l; G_3(2,2) = (1+t)/3",
        format!("{detail}; spot {spot_ok}"),
    );

    // 4
    let s = suite(&["eq1_2_equiv"], Some((2, 7)), None, None, None);
    let (ok, detail) = all_pass(&s);
    let m23 = TPoly::constant(Scalar::from(rat(-2, 3)));
    let spot_ok = sum_formula(&ev3, 2, 1, SumForm::TZero).unwrap() == m23
        && sum_formula(&ev3, 2, 1, SumForm::TZeroRearranged).unwrap() == m23;
    gate.record(
        4,
        ok && s.passed == 42 && spot_ok,
        "t = 0 sum formula equals its rearranged form, n 2..7, k 1..7; value -2/3 at (3,2,1)",
        format!("{detail}; spot {spot_ok}"),
    );

    // 5
    let s = suite(&["cor1_5"], Some((2, 6)), None, None, None);
    let (ok, detail) = all_pass(&s);
    gate.record(
        5,
        ok && s.passed == 15,
        "constant-index closed forms equal z-bar-t and the generating function, k 1..3, l 0..4, n 2..6",
        detail,
    );

    // 6
    let mut produced = 0usize;
    let mut irrational = Vec::new();
    let mut note = |ok: bool, what: String| {
        produced += 1;
        if !ok {
            irrational.push(what);
        }
    };
    for r in 1..=2 {
        for n in 2..=5 {
            let psi = psi_bruteforce(&zeta(n), r, 4).unwrap();
            note(rational_series(&psi), format!("psi r={r} n={n}"));
        }
    }
    for n in 2..=6 {
        note(rational_series(&psi_from_u(n, 5).unwrap()), format!("U ratio n={n}"));
        let ev = zeta(n);
        for k in 0..=6 {
            for l in 0..=k {
                note(rational_poly(&g_sum_kl(&ev, k, l).unwrap()), format!("G n={n} k={k} l={l}"));
            }
        }
        for k in 1..=3 {
            for l in 0..=4 {
                note(rational_poly(&eval_constant_index(k, l, n).unwrap()), format!("closed n={n} k={k} l={l}"));
            }
            note(kpow_generating(k, n, 4).is_ok(), format!("generating n={n} k={k}"));
        }
    }
    for n in 2..=7 {
        let ev = zeta(n);
        for k in 1..=7 {
            for l in 1..=k {
                note(
                    rational_poly(&sum_formula(&ev, k, l, SumForm::TZero).unwrap()),
                    format!("t=0 sum n={n} k={k} l={l}"),
                );
            }
        }
    }
    gate.record(
        6,
        irrational.is_empty(),
        "every value from criteria 1-5 at q = zeta_n is rational",
        format!("{produced} values, irrational: {irrational:?}"),
    );

    // 7
    let mut reports = Vec::new();
    for r in [1, 2] {
        for n in 2..=5 {
            for q in ["zeta", "1/2"] {
                let p = Params { n: Some(n), r: Some(r), q: Some(q.into()), cap: Some(3), ..Default::default() };
                reports.push(verify_phi_system(&p).unwrap());
            }
        }
    }
    let failed = reports.iter().filter(|r| r.status != Status::Pass).count();
    gate.record(
        7,
        failed == 0 && reports.len() == 16,
        "difference system for Phi, r 1..2, n 2..5, q in {zeta, 1/2}, cap 3",
        format!("{} systems, {failed} failed{}", reports.len(), first_failure(&reports)),
    );

    // 8
    let s = suite(&["lemma3_1"], Some((2, 5)), None, Some(&["zeta", "1/2"]), None);
    let (ok, detail) = all_pass(&s);
    gate.record(8, ok && s.passed == 8, "L at z = 1 as a finite sum, weight <= 5, n 2..5", detail);

    // 9
    let s = suite(&["lemma3_2_roundtrip"], None, Some(&[1, 2, 3]), None, Some(5));
    let (ok, detail) = all_pass(&s);
    gate.record(9, ok && s.passed == 3, "u -> x -> u round trip to cap 5, r 1..3; Pascal inverse r <= 5", detail);

    // 10
    let s = suite(&["lemma4_1", "pt_special"], None, Some(&[1, 2, 3, 4]), None, None);
    let (ok, detail) = all_pass(&s);
    gate.record(10, ok && s.passed == 8, "x at u_1 = .. = u_{r+1} = 0 and the P^t specialization, r 1..4", detail);

    // 11
    let s = suite(&["reflection", "half_t_self_dual"], Some((2, 5)), Some(&[1, 2]), None, Some(4));
    let (ok, detail) = all_pass(&s);
    gate.record(11, ok && s.passed == 16, "reflection and t = 1/2 self-duality, r 1..2, n 2..5, cap 4", detail);

    // 12
    let mut worst = 0.0f64;
    let mut shrinks = true;
    for l in 1..=3u32 {
        let coeff = xi_ones_coeff(l);
        let k = MultiIndex::new(vec![1; l as usize]).unwrap();
        for t in [0.0, 0.5, 1.0] {
            let target = Complex64::new(0.0, -2.0 * std::f64::consts::PI).powu(l) * t_eval(&coeff, t);
            let err = |n| (z_t_float(&k, n, t) - target).norm();
            let (small, large) = (err(XI_N_SMALL), err(XI_N_LARGE));
            shrinks &= large < small;
            worst = worst.max(large / target.norm().max(1.0));
        }
    }
    gate.record(
        12,
        shrinks && worst < XI_REL_TOL,
        "float z^t({1}^l) approaches its limit, l 1..3, t in {0, 1/2, 1}, n 50 vs 400",
        format!("error shrinks: {shrinks}; worst relative error at n=400 {worst:.4} < {XI_REL_TOL}"),
    );

    // 13
    let s = suite(&["remark_qhs"], Some((2, 6)), None, Some(&["zeta", "1/2"]), None);
    let ok = s.failed == 0 && (s.passed == 10 || (s.passed == 0 && s.skipped == 10));
    let how = if s.passed == 10 { "pinned witness (-1, -1, 4/49, t = 2) holds exactly" } else { "skipped" };
    gate.record(
        13,
        ok,
        "3phi2 representation of Phi_0 at a split rational point, n 2..6",
        format!("{}; {how}", s.line()),
    );

    // 14
    let start = Instant::now();
    let s = run_suite(&SuiteConfig::default()).unwrap();
    let took = start.elapsed();
    let rss = peak_rss_kib();
    let mem_ok = rss.is_none_or(|k| k < MEMORY_BUDGET_KIB);
    gate.record(
        14,
        s.failed == 0 && took < SUITE_BUDGET && mem_ok,
        "whole default suite within time and memory budgets",
        format!(
            "{}{}; {:.2}s of {}s; peak RSS {}",
            s.line(),
            first_failure(&s.reports),
            took.as_secs_f64(),
            SUITE_BUDGET.as_secs(),
            rss.map_or("unknown".into(), |k| format!("{} MiB", k / 1024))
        ),
    );

    let failed: Vec<u32> = gate.results.iter().filter(|(_, ok)| !ok).map(|(id, _)| *id).collect();
    say(&format!("acceptance: {}/{} criteria pass", gate.results.len() - failed.len(), gate.results.len()));
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
