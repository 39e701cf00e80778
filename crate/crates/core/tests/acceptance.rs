//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Numeric tolerances are zero throughout;
//! each criterion also has a wall-clock limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{label, normalized, recursive_edges, MaskOracle, Oracle};
use ltq_diag::diagnosability::{tg_bruteforce, witness_pair};
use ltq_diag::{
    diagnose, kappa_g, model, verify_min_subgraph_order, Diagnosis, FaultyUnitPolicy, LtqGraph,
    PolicyKind, SearchConfig, VertexSet,
};

const SEED: u64 = 20240001;
const MODELS: [&str; 2] = ["pmc", "mm*"];

type Verdict = Result<String, String>;

fn unlimited() -> SearchConfig {
    SearchConfig::with_budget(u64::MAX)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: ltq_diag::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

/// Closed form computed here from the statement, for comparison only.
fn closed_form(n: u32, g: u32) -> u64 {
    if g + 3 <= n {
        (1u64 << g) * (n - g + 1) as u64 - 1
    } else {
        (1u64 << (n - 1)) - 1
    }
}

fn to_bools(set: &VertexSet) -> Vec<bool> {
    let mut v = vec![false; set.universe()];
    for x in set.iter() {
        v[x.label() as usize] = true;
    }
    v
}

fn to_mask(bools: &[bool]) -> u64 {
    bools
        .iter()
        .enumerate()
        .fold(0, |m, (i, &b)| if b { m | 1 << i } else { m })
}

/// Subsets of `[0, order)` of size `k`, via Gosper's hack.
fn subsets(order: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = 1u128 << order;
    let mut cur: u128 = if k == 0 { 0 } else { (1u128 << k) - 1 };
    let mut done = false;
    std::iter::from_fn(move || {
        if done || cur >= limit {
            return None;
        }
        let out = cur as u64;
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
        }
        Some(out)
    })
}

/// Smallest `max(|A|, |B|)` over indistinguishable pairs of distinct
/// g-good-neighbor sets with both sizes at most `bound`, by plain enumeration.
fn oracle_min_pair(o: &MaskOracle, model: &str, g: u32, bound: u32) -> Option<u32> {
    let sets = o.good_sets(g, bound);
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); bound as usize + 1];
    for s in sets {
        by_size[s.count_ones() as usize].push(s);
    }
    let joint = |a: u64, b: u64| match model {
        "pmc" => o.pmc_joint(a, b),
        _ => o.mm_joint(a, b),
    };
    for m in 0..=bound as usize {
        for (i, &b) in by_size[m].iter().enumerate() {
            let smaller = by_size[..m].iter().flatten();
            let same = by_size[m][..i].iter();
            if smaller.chain(same).any(|&a| joint(a, b)) {
                return Some(m as u32);
            }
        }
    }
    None
}

fn c1_edges() -> Verdict {
    for n in 2..=10 {
        let graph = lib(LtqGraph::build(n))?;
        let rule: Vec<(u32, u32)> = graph.edges().iter().map(|(a, b)| (a.0, b.0)).collect();
        let rec = normalized(recursive_edges(n));
        ensure(rule == rec, || format!("n = {n}: edge sets differ"))?;
    }
    Ok("edge sets identical for n = 2..10".into())
}

fn c2_structure() -> Verdict {
    for n in 2..=10 {
        let o = Oracle::new(n);
        ensure(o.order() == 1 << n, || format!("n = {n}: {} vertices", o.order()))?;
        ensure(o.adj.iter().all(|l| l.len() == n as usize), || {
            format!("n = {n}: not regular")
        })?;
        let graph = lib(LtqGraph::build(n))?;
        ensure(!graph.has_triangle(), || format!("n = {n}: library reports a triangle"))?;
        let words = o.order().div_ceil(64);
        let rows: Vec<Vec<u64>> = o
            .adj
            .iter()
            .map(|l| {
                let mut r = vec![0u64; words];
                for &v in l {
                    r[v as usize / 64] |= 1 << (v % 64);
                }
                r
            })
            .collect();
        let common = |u: usize, v: usize| -> u32 {
            rows[u].iter().zip(&rows[v]).map(|(a, b)| (a & b).count_ones()).sum()
        };
        for u in 0..o.order() {
            for &v in &o.adj[u] {
                ensure(common(u, v as usize) == 0, || {
                    format!("n = {n}: triangle on edge {} {}", label(u as u32, n), label(v, n))
                })?;
            }
            for v in u + 1..o.order() {
                let c = common(u, v);
                ensure(c <= 2, || format!("n = {n}: {u} and {v} share {c} neighbors"))?;
            }
        }
    }
    Ok("2^n vertices, n-regular, triangle-free, <= 2 common neighbors for n = 2..10".into())
}

/// Smallest g-good-neighbor cut size up to `max`, by plain subset filtering.
fn oracle_kappa(o: &MaskOracle, g: u32, max: u32) -> Option<u32> {
    (0..=max).find(|&k| subsets(o.order, k).any(|m| o.is_good(m, g) && o.disconnects(m)))
}

fn c3_kappa() -> Verdict {
    let mut out = Vec::new();
    for (n, g) in [(4u32, 0u32), (4, 1), (4, 2), (5, 1), (5, 2)] {
        let target = (1u32 << g) * (n - g);
        let graph = lib(LtqGraph::build(n))?;
        let cut = lib(kappa_g(&graph, g, target as usize + 1, &unlimited()))?
            .ok_or_else(|| format!("({n},{g}): no cut within {}", target + 1))?;
        ensure(cut.size == target as usize, || {
            format!("({n},{g}): library gives {}, expected {target}", cut.size)
        })?;
        let o = MaskOracle::new(&Oracle::new(n));
        let mask = cut.cut.to_mask();
        ensure(o.is_good(mask, g) && o.disconnects(mask), || {
            format!("({n},{g}): returned cut fails the oracle")
        })?;
        let smallest = oracle_kappa(&o, g, target);
        ensure(smallest == Some(target), || {
            format!("({n},{g}): oracle smallest cut {smallest:?}, expected {target}")
        })?;
        out.push(format!("({n},{g})={target}"));
    }
    Ok(format!("{} [library and oracle agree]", out.join(" ")))
}

fn c4_min_order() -> Verdict {
    let graph = lib(LtqGraph::build(4))?;
    let o = MaskOracle::new(&Oracle::new(4));
    for g in 1..=3u32 {
        ensure(lib(verify_min_subgraph_order(&graph, g, 1 << g, &unlimited()))?, || {
            format!("g = {g}: library found a smaller subgraph")
        })?;
        let small = (1..1u32 << g)
            .flat_map(|k| subsets(16, k))
            .find(|&s| o.min_degree_at_least(s, g));
        ensure(small.is_none(), || format!("g = {g}: oracle found {small:?}"))?;
        let at = subsets(16, 1 << g).any(|s| o.min_degree_at_least(s, g));
        ensure(at, || format!("g = {g}: no subgraph of order 2^g either"))?;
    }
    Ok("g = 1, 2, 3: none below 2^g, one at 2^g".into())
}

fn c5_pmc_exact() -> Verdict {
    let graph = lib(LtqGraph::build(4))?;
    let pmc = lib(model("pmc"))?;
    let o = MaskOracle::new(&Oracle::new(4));
    let mut out = Vec::new();
    for g in 1..=3 {
        let r = lib(tg_bruteforce(&graph, g, pmc.as_ref(), 8, &unlimited()))?;
        let expected = closed_form(4, g);
        ensure(r.exact && r.value == expected, || {
            format!("g = {g}: library {} (exact {}), expected {expected}", r.value, r.exact)
        })?;
        let oracle = oracle_min_pair(&o, "pmc", g, 8).map(|m| m as u64 - 1);
        ensure(oracle == Some(expected), || {
            format!("g = {g}: oracle {oracle:?}, expected {expected}")
        })?;
        out.push(format!("g={g}: {} ({} pairs)", r.value, r.pairs_checked));
    }
    Ok(out.join(", "))
}

fn c6_witnesses() -> Verdict {
    let mut cases = 0;
    for n in 5..=8u32 {
        let o = Oracle::new(n);
        let graph = lib(LtqGraph::build(n))?;
        for g in 1..n {
            let (f1, f2) = lib(witness_pair(&graph, g))?;
            let expected = if g + 3 <= n {
                ((1usize << g) * (n - g) as usize, (1usize << g) * (n - g + 1) as usize)
            } else {
                (1 << (n - 1), 1 << (n - 1))
            };
            ensure((f1.len(), f2.len()) == expected, || {
                format!("n = {n}, g = {g}: sizes ({}, {})", f1.len(), f2.len())
            })?;
            let (a, b) = (to_bools(&f1), to_bools(&f2));
            ensure(a != b && o.is_good(&a, g as usize) && o.is_good(&b, g as usize), || {
                format!("n = {n}, g = {g}: not g-good-neighbor")
            })?;
            for name in MODELS {
                ensure(o.joint(name, &a, &b), || {
                    format!("n = {n}, g = {g}: distinguishable under {name}")
                })?;
                let m = lib(model(name))?;
                ensure(!lib(m.distinguishable(&graph, &f1, &f2))?, || {
                    format!("n = {n}, g = {g}: library calls the pair distinguishable ({name})")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, g, model) cases"))
}

fn c7_monotone(prior: &[(u32, bool)]) -> Verdict {
    for id in [3, 4, 6] {
        let ok = prior.iter().any(|&(i, p)| i == id && p);
        ensure(ok, || format!("criterion {id} did not pass"))?;
    }
    let graph = lib(LtqGraph::build(4))?;
    let mut out = Vec::new();
    for name in MODELS {
        let m = lib(model(name))?;
        let mut values = Vec::new();
        for g in 0..=3 {
            let r = lib(tg_bruteforce(&graph, g, m.as_ref(), 8, &unlimited()))?;
            ensure(r.exact, || format!("{name} g = {g}: not exact"))?;
            values.push(r.value);
        }
        ensure(values.windows(2).all(|w| w[0] <= w[1]), || {
            format!("n = 4 {name}: {values:?}")
        })?;
        out.push(format!("n=4 {name} {values:?}"));
    }
    for n in 5..=8 {
        let graph = lib(LtqGraph::build(n))?;
        let bounds: Vec<usize> = (1..n)
            .map(|g| witness_pair(&graph, g).map(|(a, b)| a.len().max(b.len()) - 1))
            .collect::<ltq_diag::Result<_>>()
            .map_err(|e| e.to_string())?;
        ensure(bounds.windows(2).all(|w| w[0] <= w[1]), || {
            format!("n = {n}: witness bounds {bounds:?}")
        })?;
    }
    Ok(format!("{}; witness bounds non-decreasing for n = 5..8", out.join(", ")))
}

/// Brute-force existence of a syndrome consistent with both sets (LTQ_2 only).
fn exists_common_syndrome(o: &Oracle, name: &str, a: &[bool], b: &[bool]) -> bool {
    let mut tests: Vec<(usize, Vec<usize>)> = Vec::new();
    for w in 0..o.order() {
        let nb: Vec<usize> = o.adj[w].iter().map(|&v| v as usize).collect();
        if name == "pmc" {
            tests.extend(nb.iter().map(|&v| (w, vec![v])));
        } else {
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    tests.push((w, vec![nb[i], nb[j]]));
                }
            }
        }
    }
    let fits = |f: &[bool], bits: u64| {
        tests.iter().enumerate().all(|(i, (w, units))| {
            f[*w] || (bits >> i & 1 == 1) == units.iter().any(|&u| f[u])
        })
    };
    (0..1u64 << tests.len()).any(|s| fits(a, s) && fits(b, s))
}

fn c8_semantics() -> Verdict {
    let mut checked = 0u64;
    for name in MODELS {
        let m = lib(model(name))?;
        for n in [2u32, 3] {
            let graph = lib(LtqGraph::build(n))?;
            let o = Oracle::new(n);
            let count = 1u64 << o.order();
            for x in 0..count {
                let fx = VertexSet::from_mask(n, x);
                let bx: Vec<bool> = (0..o.order()).map(|i| x >> i & 1 == 1).collect();
                for y in 0..count {
                    if x == y {
                        continue;
                    }
                    let fy = VertexSet::from_mask(n, y);
                    let by: Vec<bool> = (0..o.order()).map(|i| y >> i & 1 == 1).collect();
                    let dist = lib(m.distinguishable(&graph, &fx, &fy))?;
                    let joint = lib(m.jointly_consistent(&graph, &fx, &fy))?;
                    let reference = if n == 2 {
                        exists_common_syndrome(&o, name, &bx, &by)
                    } else {
                        o.joint(name, &bx, &by)
                    };
                    ensure(dist != joint && joint == reference, || {
                        format!("{name} n = {n}: {fx} / {fy}: {dist} {joint} {reference}")
                    })?;
                    checked += 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for n in [4u32, 5] {
            let graph = lib(LtqGraph::build(n))?;
            let o = Oracle::new(n);
            let mut done = 0;
            while done < 10_000 {
                let p = rng.gen_range(0.05..0.6);
                let a: Vec<bool> = (0..o.order()).map(|_| rng.gen_bool(p)).collect();
                let b: Vec<bool> = if done % 2 == 0 {
                    let mut b = a.clone();
                    for _ in 0..rng.gen_range(1..=3) {
                        let i = rng.gen_range(0..o.order());
                        b[i] = !b[i];
                    }
                    b
                } else {
                    (0..o.order()).map(|_| rng.gen_bool(p)).collect()
                };
                if a == b {
                    continue;
                }
                let fa = VertexSet::from_mask(n, to_mask(&a));
                let fb = VertexSet::from_mask(n, to_mask(&b));
                let dist = lib(m.distinguishable(&graph, &fa, &fb))?;
                let joint = lib(m.jointly_consistent(&graph, &fa, &fb))?;
                ensure(dist != joint && joint == o.joint(name, &a, &b), || {
                    format!("{name} n = {n}: {fa} / {fb}")
                })?;
                done += 1;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs, 100% agreement"))
}

fn c9_diagnoser() -> Verdict {
    let graph = lib(LtqGraph::build(4))?;
    let o = Oracle::new(4);
    let mo = MaskOracle::new(&o);
    let mm_t = lib(tg_bruteforce(&graph, 1, lib(model("mm*"))?.as_ref(), 8, &unlimited()))?;
    ensure(mm_t.exact, || "MM* t_1 at n = 4 is not exact".into())?;
    let mut trials = 0;
    for (name, t) in [("pmc", 7u32), ("mm*", mm_t.value as u32)] {
        let m = lib(model(name))?;
        let pool = mo.good_sets(1, t);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for trial in 0..200u64 {
            let mask = pool[rng.gen_range(0..pool.len())];
            let f = VertexSet::from_mask(4, mask);
            for kind in PolicyKind::ALL {
                let policy = FaultyUnitPolicy::new(kind, SEED ^ trial);
                let s = m.generate(&graph, &f, &policy);
                ensure(o.syndrome_fits(&s.to_file(&graph), &to_bools(&f)), || {
                    format!("{name}: generated syndrome does not fit {f}")
                })?;
                let d = lib(diagnose(&graph, m.as_ref(), &s, 1, t as usize, &SearchConfig::default()))?;
                ensure(d == Diagnosis::Unique(f.clone()), || {
                    format!("{name} {kind:?}: injected {f}, diagnosed {d:?}")
                })?;
                trials += 1;
            }
        }
    }
    Ok(format!("{trials} trials exact (pmc t = 7, mm* t = {})", mm_t.value))
}

fn c10_mm_n4() -> Verdict {
    let graph = lib(LtqGraph::build(4))?;
    let mm = lib(model("mm*"))?;
    let r = lib(tg_bruteforce(&graph, 1, mm.as_ref(), 8, &unlimited()))?;
    ensure(r.exact, || format!("no indistinguishable pair within 8 (value {})", r.value))?;
    let o = MaskOracle::new(&Oracle::new(4));
    let oracle = oracle_min_pair(&o, "mm*", 1, 8).map(|m| m as u64 - 1);
    ensure(oracle == Some(r.value), || {
        format!("library {}, oracle {oracle:?}", r.value)
    })?;
    let (a, b) = r.witness.clone().ok_or("no witness")?;
    ensure(
        o.mm_joint(a.to_mask(), b.to_mask()) && o.is_good(a.to_mask(), 1) && o.is_good(b.to_mask(), 1),
        || "witness fails the oracle".into(),
    )?;
    Ok(format!(
        "t_1(LTQ_4) under MM* = {} (derived; sizes {} and {}, {} pairs)",
        r.value,
        a.len(),
        b.len(),
        r.pairs_checked
    ))
}

fn c11_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut samples = 0;
    for name in MODELS {
        let m = lib(model(name))?;
        for n in [4u32, 5] {
            let graph = lib(LtqGraph::build(n))?;
            let o = Oracle::new(n);
            for i in 0..1000 {
                let p = rng.gen_range(0.0..0.5);
                let f: Vec<bool> = (0..o.order()).map(|_| rng.gen_bool(p)).collect();
                let set = VertexSet::from_mask(n, to_mask(&f));
                let policy = FaultyUnitPolicy::new(PolicyKind::ALL[i % 3], rng.gen());
                let s = m.generate(&graph, &set, &policy);
                ensure(lib(m.is_consistent(&graph, &set, &s))?, || {
                    format!("{name} n = {n}: library rejects its own syndrome for {set}")
                })?;
                ensure(o.syndrome_fits(&s.to_file(&graph), &f), || {
                    format!("{name} n = {n}: oracle rejects the syndrome for {set}")
                })?;
                samples += 1;
            }
        }
    }
    Ok(format!("{samples} samples consistent"))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let table = [
        Criterion { id: 1, title: "recursive and rule-based definitions agree", limit: secs(30) },
        Criterion { id: 2, title: "structural invariants", limit: secs(60) },
        Criterion { id: 3, title: "kappa^g = 2^g(n-g)", limit: secs(600) },
        Criterion { id: 4, title: "min-degree subgraph order >= 2^g", limit: secs(60) },
        Criterion { id: 5, title: "PMC t_g exact at n = 4", limit: secs(300) },
        Criterion { id: 6, title: "witness pairs for n = 5..8", limit: secs(60) },
        Criterion { id: 7, title: "ingredients and monotonicity", limit: secs(300) },
        Criterion { id: 8, title: "distinguishability semantics", limit: secs(120) },
        Criterion { id: 9, title: "diagnoser soundness", limit: secs(300) },
        Criterion { id: 10, title: "MM* t_1 at n = 4", limit: secs(300) },
        Criterion { id: 11, title: "syndrome round trip", limit: secs(60) },
    ];
    let mut results: Vec<(u32, bool)> = Vec::new();
    for c in &table {
        let started = Instant::now();
        let verdict = match c.id {
            1 => c1_edges(),
            2 => c2_structure(),
            3 => c3_kappa(),
            4 => c4_min_order(),
            5 => c5_pmc_exact(),
            6 => c6_witnesses(),
            7 => c7_monotone(&results),
            8 => c8_semantics(),
            9 => c9_diagnoser(),
            10 => c10_mm_n4(),
            11 => c11_round_trip(),
            _ => unreachable!(),
        };
        let elapsed = started.elapsed();
        let (pass, detail) = match verdict {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        println!(
            "criterion {:>2} {}  {} [tolerance 0, {:.1}s of {}s]: {}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
        results.push((c.id, pass));
    }
    let passed = results.iter().filter(|r| r.1).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
