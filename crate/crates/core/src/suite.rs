//! The acceptance table behind `ltqdiag verify-all`: every check runs through
//! the library's public operations and cross-checks independent routes where
//! the library offers two.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagnosability::{
    check_witness, enumerate_gng_sets, tg_bruteforce, tg_formula, witness_pair, CheckStatus,
};
use crate::diagnose::{diagnose, Diagnosis};
use crate::error::Result;
use crate::fault::{kappa_g, verify_min_subgraph_order};
use crate::graph::LtqGraph;
use crate::model::model;
use crate::search::SearchConfig;
use crate::syndrome::{FaultyUnitPolicy, PolicyKind};
use crate::vertex_set::{VertexId, VertexSet};

pub const SUITE_SEED: u64 = 20240001;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Check = fn(&SearchConfig) -> Result<(bool, String)>;

const CRITERIA: [(u32, &str, Check); 11] = [
    (1, "recursive and rule-based edge sets agree, n = 2..10", edges_agree),
    (2, "n-regular, triangle-free, <= 2 common neighbors, n = 2..10", structure),
    (3, "kappa^g = 2^g(n-g) by exhaustive search", kappa_values),
    (4, "no subgraph of min degree g below 2^g vertices, n = 4", min_order),
    (5, "exhaustive PMC t_g at n = 4 matches the closed form", pmc_exact),
    (6, "witness pairs for n = 5..8 under both models", witnesses),
    (7, "lower-bound ingredients, witnesses, monotone t_g", monotone),
    (8, "structural and per-test distinguishability agree", semantics),
    (9, "diagnoser recovers injected faults at n = 4, g = 1", diagnoser),
    (10, "MM* t_1 at n = 4 by exhaustive search", mm_n4),
    (11, "generated syndromes are consistent with their faults", round_trip),
];

/// Criteria whose results criterion 7 builds on.
const INGREDIENTS: [u32; 3] = [3, 4, 6];

/// Runs every criterion. Searches use `workers` threads and an unlimited
/// candidate budget.
pub fn run_suite(workers: usize) -> Vec<CriterionOutcome> {
    let cfg = SearchConfig {
        budget: u64::MAX,
        workers,
    };
    let mut outcomes: Vec<CriterionOutcome> = CRITERIA
        .iter()
        .map(|&(id, title, check)| {
            let started = Instant::now();
            let (passed, detail) = match check(&cfg) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CriterionOutcome {
                id,
                title,
                passed,
                detail,
                elapsed: started.elapsed(),
            }
        })
        .collect();
    let failed: Vec<u32> = outcomes
        .iter()
        .filter(|o| INGREDIENTS.contains(&o.id) && !o.passed)
        .map(|o| o.id)
        .collect();
    if let Some(seven) = outcomes.iter_mut().find(|o| o.id == 7) {
        if !failed.is_empty() {
            seven.passed = false;
            seven.detail = format!("{}; criteria {failed:?} failed", seven.detail);
        }
    }
    outcomes
}

fn edges_agree(_: &SearchConfig) -> Result<(bool, String)> {
    for n in 2..=10 {
        let g = LtqGraph::build(n)?;
        for v in g.vertices() {
            if g.neighbors(v)? != g.neighbors_recursive(v)? {
                return Ok((false, format!("n = {n}: vertex {} differs", g.label(v))));
            }
        }
    }
    Ok((true, "identical for n = 2..10".into()))
}

fn structure(_: &SearchConfig) -> Result<(bool, String)> {
    for n in 2..=10 {
        let g = LtqGraph::build(n)?;
        if g.vertex_count() != 1 << n {
            return Ok((false, format!("n = {n}: {} vertices", g.vertex_count())));
        }
        for v in g.vertices() {
            if g.neighbors(v)?.len() != n as usize {
                return Ok((false, format!("n = {n}: {} not {n}-regular", g.label(v))));
            }
        }
        if g.has_triangle() {
            return Ok((false, format!("n = {n}: triangle")));
        }
        let mut common: HashMap<(u32, u32), u32> = HashMap::new();
        for w in g.vertices() {
            let nb: Vec<u32> = g.neighbor_iter(w).map(|v| v.label()).collect();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    *common.entry((a.min(b), a.max(b))).or_default() += 1;
                }
            }
        }
        if let Some((&(a, b), &c)) = common.iter().find(|(_, &c)| c > 2) {
            return Ok((false, format!("n = {n}: {a} and {b} share {c} neighbors")));
        }
    }
    Ok((true, "holds for n = 2..10".into()))
}

fn kappa_values(cfg: &SearchConfig) -> Result<(bool, String)> {
    let mut found = Vec::new();
    let mut ok = true;
    for (n, g) in [(4, 0), (4, 1), (4, 2), (5, 1), (5, 2)] {
        let graph = LtqGraph::build(n)?;
        let target = (1usize << g) * (n - g) as usize;
        let size = kappa_g(&graph, g, target + 1, cfg)?.map(|c| c.size);
        ok &= size == Some(target);
        found.push(format!("({n},{g})={}", size.map_or("none".into(), |s| s.to_string())));
    }
    Ok((ok, found.join(" ")))
}

fn min_order(cfg: &SearchConfig) -> Result<(bool, String)> {
    let graph = LtqGraph::build(4)?;
    for g in 1..=3 {
        if !verify_min_subgraph_order(&graph, g, 1 << g, cfg)? {
            return Ok((false, format!("g = {g}: smaller subgraph found")));
        }
    }
    Ok((true, "g = 1, 2, 3".into()))
}

fn pmc_exact(cfg: &SearchConfig) -> Result<(bool, String)> {
    let graph = LtqGraph::build(4)?;
    let pmc = model("pmc")?;
    let mut ok = true;
    let mut found = Vec::new();
    for g in 1..=3 {
        let r = tg_bruteforce(&graph, g, pmc.as_ref(), 8, cfg)?;
        let f = tg_formula(4, g, pmc.as_ref())?;
        ok &= r.exact && r.value == f;
        found.push(format!("g={g}: {} (formula {f})", r.value));
    }
    Ok((ok, found.join(", ")))
}

fn witnesses(_: &SearchConfig) -> Result<(bool, String)> {
    let mut count = 0;
    for n in 5..=8 {
        let graph = LtqGraph::build(n)?;
        for g in 1..n {
            for name in ["pmc", "mm*"] {
                let m = model(name)?;
                let check = check_witness(&graph, g, m.as_ref())?;
                if check.status != CheckStatus::Passed {
                    return Ok((false, format!("n = {n}, g = {g}, {name}: {:?}", check.status)));
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} (n, g, model) cases")))
}

fn monotone(cfg: &SearchConfig) -> Result<(bool, String)> {
    let graph = LtqGraph::build(4)?;
    for name in ["pmc", "mm*"] {
        let m = model(name)?;
        let values = (0..=3)
            .map(|g| tg_bruteforce(&graph, g, m.as_ref(), 8, cfg).map(|r| r.value))
            .collect::<Result<Vec<_>>>()?;
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Ok((false, format!("n = 4 {name}: {values:?}")));
        }
    }
    for n in 5..=8 {
        let graph = LtqGraph::build(n)?;
        let values = (1..n)
            .map(|g| witness_pair(&graph, g).map(|(a, b)| a.len().max(b.len()) - 1))
            .collect::<Result<Vec<_>>>()?;
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Ok((false, format!("n = {n} witness bounds: {values:?}")));
        }
    }
    Ok((true, "non-decreasing in g for n = 4..8".into()))
}

/// Random set with a per-pair density so both sparse and dense pairs occur.
fn random_set(rng: &mut ChaCha8Rng, n: u32, density: f64) -> VertexSet {
    VertexSet::from_labels(n, (0..1u32 << n).filter(|_| rng.gen_bool(density)))
}

/// A second set near `f`: a few random flips, so indistinguishable pairs occur.
fn perturb(rng: &mut ChaCha8Rng, f: &VertexSet) -> VertexSet {
    let mut out = f.clone();
    let order = f.universe() as u32;
    for _ in 0..rng.gen_range(1..=3) {
        let v = VertexId(rng.gen_range(0..order));
        if out.contains(v) {
            out.remove(v);
        } else {
            out.insert(v);
        }
    }
    out
}

fn semantics(_: &SearchConfig) -> Result<(bool, String)> {
    let mut checked = 0u64;
    for name in ["pmc", "mm*"] {
        let m = model(name)?;
        for n in [2, 3] {
            let graph = LtqGraph::build(n)?;
            let order = 1u64 << (1 << n);
            for a in 0..order {
                let fa = VertexSet::from_mask(n, a);
                for b in 0..order {
                    if a == b {
                        continue;
                    }
                    let fb = VertexSet::from_mask(n, b);
                    if m.distinguishable(&graph, &fa, &fb)? == m.jointly_consistent(&graph, &fa, &fb)? {
                        return Ok((false, format!("{name}: {fa} / {fb}")));
                    }
                    checked += 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
        for n in [4, 5] {
            let graph = LtqGraph::build(n)?;
            let mut done = 0;
            while done < 10_000 {
                let density = rng.gen_range(0.05..0.6);
                let fa = random_set(&mut rng, n, density);
                let fb = if done % 2 == 0 {
                    perturb(&mut rng, &fa)
                } else {
                    random_set(&mut rng, n, density)
                };
                if fa == fb {
                    continue;
                }
                if m.distinguishable(&graph, &fa, &fb)? == m.jointly_consistent(&graph, &fa, &fb)? {
                    return Ok((false, format!("{name}: {fa} / {fb}")));
                }
                done += 1;
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} pairs agree")))
}

fn diagnoser(cfg: &SearchConfig) -> Result<(bool, String)> {
    let graph = LtqGraph::build(4)?;
    let mm_t = mm_value(cfg)? as usize;
    let mut trials = 0;
    for (name, t) in [("pmc", 7usize), ("mm*", mm_t)] {
        let m = model(name)?;
        let pool: Vec<VertexSet> = enumerate_gng_sets(&graph, 1, t, cfg)?
            .iter()
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
        for trial in 0..200 {
            let f = &pool[rng.gen_range(0..pool.len())];
            for kind in PolicyKind::ALL {
                let policy = FaultyUnitPolicy::new(kind, SUITE_SEED + trial);
                let s = m.generate(&graph, f, &policy);
                let d = diagnose(&graph, m.as_ref(), &s, 1, t, cfg)?;
                if d != Diagnosis::Unique(f.clone()) {
                    return Ok((false, format!("{name}, {kind:?}: injected {f}, got {:?}", d)));
                }
                trials += 1;
            }
        }
    }
    Ok((true, format!("{trials} trials (MM* with t = {mm_t})")))
}

fn mm_value(cfg: &SearchConfig) -> Result<u64> {
    let graph = LtqGraph::build(4)?;
    let r = tg_bruteforce(&graph, 1, model("mm*")?.as_ref(), 8, cfg)?;
    Ok(r.value)
}

fn mm_n4(cfg: &SearchConfig) -> Result<(bool, String)> {
    let graph = LtqGraph::build(4)?;
    let r = tg_bruteforce(&graph, 1, model("mm*")?.as_ref(), 8, cfg)?;
    let sizes = r
        .witness
        .as_ref()
        .map(|(a, b)| format!(" witness sizes ({}, {})", a.len(), b.len()))
        .unwrap_or_default();
    Ok((r.exact, format!("t_1 = {} exact = {}{sizes}", r.value, r.exact)))
}

fn round_trip(_: &SearchConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut samples = 0;
    for name in ["pmc", "mm*"] {
        let m = model(name)?;
        for n in [4, 5] {
            let graph = LtqGraph::build(n)?;
            for i in 0..1000 {
                let density = rng.gen_range(0.0..0.5);
                let f = random_set(&mut rng, n, density);
                let kind = PolicyKind::ALL[i % 3];
                let policy = FaultyUnitPolicy::new(kind, rng.gen());
                let s = m.generate(&graph, &f, &policy);
                if !m.is_consistent(&graph, &f, &s)? {
                    return Ok((false, format!("{name}, n = {n}: {f} with {kind:?}")));
                }
                samples += 1;
            }
        }
    }
    Ok((true, format!("{samples} samples")))
}

