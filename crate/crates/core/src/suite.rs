//! Parameter grids for the registered identities and an order-preserving runner.

use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::genfun::identity::{check_identity, IdentityReport, Params, Status, IDENTITIES};

/// Caps above this need `allow_large_cap`.
pub const CAP_GUARD: i32 = 8;

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    /// Identity ids; empty or `["all"]` selects every registered id.
    pub ids: Vec<String>,
    pub n: Option<RangeInclusive<u32>>,
    pub r: Option<Vec<u32>>,
    pub k: Option<RangeInclusive<u32>>,
    pub l: Option<u32>,
    pub q: Option<Vec<String>>,
    pub max_cap: Option<i32>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub allow_large_cap: bool,
}

struct Grid {
    n: Vec<u32>,
    r: Vec<u32>,
    q: &'static [&'static str],
    cap: Option<i32>,
    k: Vec<u32>,
    l: Option<u32>,
}

const ZETA: &[&str] = &["zeta"];
const ZETA_HALF: &[&str] = &["zeta", "1/2"];
const ALL_Q: &[&str] = &["zeta", "1/2", "2", "-3", "5/7"];

fn grid(id: &str) -> Grid {
    let g = |n: Option<RangeInclusive<u32>>, r: &[u32], q, cap, k: Option<RangeInclusive<u32>>, l| Grid {
        n: n.into_iter().flatten().collect(),
        r: r.to_vec(),
        q,
        cap,
        k: k.into_iter().flatten().collect(),
        l,
    };
    match id {
        "thm1_1" => g(Some(2..=5), &[1, 2], ALL_Q, Some(4), None, None),
        "reflection" | "half_t_self_dual" => g(Some(2..=5), &[1, 2], ZETA, Some(4), None, None),
        "thm1_3" => g(Some(2..=6), &[], ZETA, Some(5), None, None),
        "cor1_4_triple" => g(Some(2..=6), &[], ZETA, None, Some(0..=6), None),
        "eq1_2_equiv" => g(Some(2..=7), &[], ZETA, None, Some(1..=7), None),
        "cor1_5" => g(Some(2..=6), &[], ZETA, None, Some(1..=3), Some(4)),
        "kpow_rationality" => g(Some(2..=6), &[], ZETA, None, Some(1..=4), Some(4)),
        "k3_closed" => g(Some(2..=5), &[], ZETA, None, None, Some(3)),
        "lemma2_1" => g(Some(2..=5), &[1, 2], ZETA_HALF, None, None, None),
        "prop2_2" | "cor2_3" | "thm2_4" | "c_i" => g(Some(2..=5), &[1, 2], ZETA_HALF, Some(3), None, None),
        "lemma3_1" => g(Some(2..=5), &[], ZETA_HALF, None, Some(5..=5), None),
        "lemma3_2_roundtrip" => g(None, &[1, 2, 3], &[], Some(5), None, None),
        "lemma4_1" | "pt_special" => g(None, &[1, 2, 3, 4], &[], Some(4), None, None),
        "chu_vandermonde" => g(Some(1..=8), &[], &[], None, None, None),
        "btt_3_13" => g(Some(2..=6), &[], ZETA, Some(6), None, None),
        "remark_qhs" => g(Some(2..=6), &[], ZETA_HALF, None, None, None),
        "z_zbar_scaling" => g(None, &[], &[], None, None, None),
        _ => unreachable!("grid for registered id"),
    }
}

impl SuiteConfig {
    pub fn selected_ids(&self) -> Result<Vec<&'static str>> {
        if self.ids.is_empty() || self.ids.iter().any(|s| s == "all") {
            return Ok(IDENTITIES.to_vec());
        }
        self.ids
            .iter()
            .map(|id| IDENTITIES.iter().copied().find(|k| k == id).ok_or_else(|| Error::UnknownIdentity(id.clone())))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let empty = |r: &Option<RangeInclusive<u32>>| r.as_ref().is_some_and(|r| r.is_empty());
        if empty(&self.n) || empty(&self.k) {
            return Err(Error::InvalidParams("empty range".into()));
        }
        if self.r.as_ref().is_some_and(Vec::is_empty) || self.q.as_ref().is_some_and(Vec::is_empty) {
            return Err(Error::InvalidParams("empty list".into()));
        }
        if let Some(c) = self.max_cap {
            if c < 0 {
                return Err(Error::InvalidParams(format!("max cap {c} is negative")));
            }
            if c > CAP_GUARD && !self.allow_large_cap {
                return Err(Error::InvalidParams(format!("max cap {c} exceeds {CAP_GUARD}; pass the override flag")));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidParams("jobs must be positive".into()));
        }
        Ok(())
    }

    /// Every `(identity, params)` instance, in a fixed order.
    pub fn instances(&self) -> Result<Vec<(&'static str, Params)>> {
        self.validate()?;
        let mut out = Vec::new();
        for id in self.selected_ids()? {
            let g = grid(id);
            let pick = |default: Vec<u32>, over: Option<Vec<u32>>| -> Vec<Option<u32>> {
                if default.is_empty() {
                    vec![None]
                } else {
                    over.unwrap_or(default).into_iter().map(Some).collect()
                }
            };
            let ns = pick(g.n, self.n.clone().map(Iterator::collect));
            let rs = pick(g.r, self.r.clone());
            let ks = pick(g.k, self.k.clone().map(Iterator::collect));
            let qs: Vec<Option<String>> = if g.q.is_empty() {
                vec![None]
            } else if let (Some(over), false) = (&self.q, g.q == ZETA) {
                over.iter().cloned().map(Some).collect()
            } else {
                g.q.iter().map(|s| Some(s.to_string())).collect()
            };
            let cap = g.cap.map(|c| self.max_cap.map_or(c, |m| c.min(m)));
            let l = g.l.map(|d| self.l.unwrap_or(d));
            for r in &rs {
                for n in &ns {
                    for q in &qs {
                        for k in &ks {
                            out.push((id, Params { n: *n, r: *r, q: q.clone(), cap, k: *k, l, seed: None }));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteSummary {
    pub reports: Vec<IdentityReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn line(&self) -> String {
        format!("passed {} / failed {} / skipped {}", self.passed, self.failed, self.skipped)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "reports": self.reports.iter().map(IdentityReport::to_json).collect::<Vec<_>>(),
        })
    }
}

fn run_one((id, p): &(&'static str, Params)) -> Result<IdentityReport> {
    check_identity(id, p)
}

#[cfg(feature = "parallel")]
fn run_all(items: &[(&'static str, Params)], jobs: Option<usize>) -> Result<Vec<IdentityReport>> {
    use rayon::prelude::*;
    let go = || items.par_iter().map(run_one).collect::<Result<Vec<_>>>();
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?
            .install(go),
        None => go(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_all(items: &[(&'static str, Params)], _jobs: Option<usize>) -> Result<Vec<IdentityReport>> {
    items.iter().map(run_one).collect()
}

/// Runs every instance; reports keep instance order regardless of scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let items = cfg.instances()?;
    let reports = run_all(&items, cfg.jobs)?;
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    Ok(SuiteSummary { passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skip), reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_guard() {
        let cfg = SuiteConfig { ids: vec!["thm1_3".into()], n: Some(2..=3), max_cap: Some(2), ..Default::default() };
        let inst = cfg.instances().unwrap();
        assert_eq!(inst.len(), 2);
        assert!(inst.iter().all(|(_, p)| p.cap == Some(2) && p.q.as_deref() == Some("zeta")));
        let big = SuiteConfig { max_cap: Some(9), ..Default::default() };
        assert!(big.instances().is_err());
        assert!(SuiteConfig { allow_large_cap: true, ..big }.instances().is_ok());
        let bad = SuiteConfig { ids: vec!["nope".into()], ..Default::default() };
        assert!(matches!(bad.instances(), Err(Error::UnknownIdentity(_))));
    }
}
