//! `t_g` computation strategies, selected by name.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::model::TestModel;
use crate::search::SearchConfig;

use super::brute::tg_bruteforce;
use super::report::{DiagReport, Method};
use super::verify::{check_witness, verify_theorem, CheckStatus, IngredientCheck};
use super::witness::{tg_formula, witness_pair};

pub const OUTSIDE_THEOREM_RANGE: &str = "outside-theorem-range";

pub struct TgRequest {
    pub n: u32,
    pub g: u32,
    pub model: Arc<dyn TestModel>,
    /// Size bound for exhaustive searches; defaults to `2^{n-1}`.
    pub bound: Option<usize>,
    pub search: SearchConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The result matches the closed form.
    Matches,
    Mismatch,
    /// `(n, g, model)` is outside the closed form's hypotheses.
    NoFormula,
}

#[derive(Debug, Clone)]
pub struct TgOutcome {
    pub report: DiagReport,
    pub formula: Option<u64>,
    pub verdict: Verdict,
    pub checks: Vec<IngredientCheck>,
    pub note: Option<String>,
}

impl TgOutcome {
    fn judged(report: DiagReport, formula: Result<u64>, certified: bool) -> Result<Self> {
        match formula {
            Ok(f) => Ok(TgOutcome {
                verdict: if certified && report.value == f {
                    Verdict::Matches
                } else {
                    Verdict::Mismatch
                },
                formula: Some(f),
                report,
                checks: Vec::new(),
                note: None,
            }),
            Err(Error::OutOfTheoremRange { .. }) => Ok(TgOutcome {
                report,
                formula: None,
                verdict: Verdict::NoFormula,
                checks: Vec::new(),
                note: Some(OUTSIDE_THEOREM_RANGE.to_string()),
            }),
            Err(e) => Err(e),
        }
    }
}

pub trait TgMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, request: &TgRequest) -> Result<TgOutcome>;
}

pub struct FormulaMethod;
pub struct WitnessMethod;
pub struct BruteForceMethod;
pub struct VerifyMethod;

impl TgMethod for FormulaMethod {
    fn name(&self) -> &'static str {
        "formula"
    }

    fn run(&self, req: &TgRequest) -> Result<TgOutcome> {
        let started = Instant::now();
        let value = tg_formula(req.n, req.g, req.model.as_ref())?;
        let report = DiagReport {
            n: req.n,
            g: req.g,
            model: req.model.name().to_string(),
            method: Method::Formula,
            value,
            witness: None,
            pairs_checked: 0,
            elapsed: started.elapsed(),
            exact: false,
        };
        TgOutcome::judged(report, Ok(value), true)
    }
}

impl TgMethod for WitnessMethod {
    fn name(&self) -> &'static str {
        "witness"
    }

    fn run(&self, req: &TgRequest) -> Result<TgOutcome> {
        let started = Instant::now();
        let graph = LtqGraph::build(req.n)?;
        let check = check_witness(&graph, req.g, req.model.as_ref())?;
        let (f1, f2) = witness_pair(&graph, req.g)?;
        let report = DiagReport {
            n: req.n,
            g: req.g,
            model: req.model.name().to_string(),
            method: Method::Witness,
            value: f1.len().max(f2.len()) as u64 - 1,
            witness: Some((f1, f2)),
            pairs_checked: 1,
            elapsed: started.elapsed(),
            exact: false,
        };
        let certified = check.status == CheckStatus::Passed;
        let mut out = TgOutcome::judged(
            report,
            tg_formula(req.n, req.g, req.model.as_ref()),
            certified,
        )?;
        out.checks.push(check);
        Ok(out)
    }
}

impl TgMethod for BruteForceMethod {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn run(&self, req: &TgRequest) -> Result<TgOutcome> {
        let graph = LtqGraph::build(req.n)?;
        let bound = req.bound.unwrap_or(graph.vertex_count() / 2);
        let report = tg_bruteforce(&graph, req.g, req.model.as_ref(), bound, &req.search)?;
        let exact = report.exact;
        TgOutcome::judged(report, tg_formula(req.n, req.g, req.model.as_ref()), exact)
    }
}

impl TgMethod for VerifyMethod {
    fn name(&self) -> &'static str {
        "verify"
    }

    fn run(&self, req: &TgRequest) -> Result<TgOutcome> {
        let check = verify_theorem(req.n, req.g, req.model.as_ref(), &req.search)?;
        let verdict = if check.holds() {
            Verdict::Matches
        } else {
            Verdict::Mismatch
        };
        let note = (!check.complete()).then(|| "some ingredients skipped".to_string());
        Ok(TgOutcome {
            report: check.report,
            formula: Some(check.formula),
            verdict,
            checks: check.checks,
            note,
        })
    }
}

struct Entry {
    aliases: Vec<&'static str>,
    method: Arc<dyn TgMethod>,
}

#[derive(Default)]
pub struct MethodRegistry {
    entries: Vec<Entry>,
}

impl MethodRegistry {
    pub fn standard() -> Self {
        let mut r = MethodRegistry::default();
        r.register(&[], Arc::new(FormulaMethod));
        r.register(&[], Arc::new(WitnessMethod));
        r.register(&["brute_force", "brute-force"], Arc::new(BruteForceMethod));
        r.register(&["theorem"], Arc::new(VerifyMethod));
        r
    }

    pub fn register(&mut self, aliases: &[&'static str], method: Arc<dyn TgMethod>) {
        let mut all = vec![method.name()];
        all.extend_from_slice(aliases);
        self.entries.push(Entry {
            aliases: all,
            method,
        });
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn TgMethod>> {
        self.entries
            .iter()
            .find(|e| e.aliases.contains(&name))
            .map(|e| Arc::clone(&e.method))
            .ok_or_else(|| Error::Unknown {
                kind: "method",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.method.name()).collect()
    }
}

pub fn methods() -> &'static MethodRegistry {
    static REGISTRY: OnceLock<MethodRegistry> = OnceLock::new();
    REGISTRY.get_or_init(MethodRegistry::standard)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::model;

    fn request(n: u32, g: u32, m: &str) -> TgRequest {
        TgRequest {
            n,
            g,
            model: model(m).unwrap(),
            bound: None,
            search: SearchConfig::default(),
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(methods().names(), vec!["formula", "witness", "brute", "verify"]);
        assert_eq!(methods().get("brute_force").unwrap().name(), "brute");
        assert!(methods().get("sat").is_err());
    }

    #[test]
    fn witness_certifies_upper_bound() {
        let out = methods().get("witness").unwrap().run(&request(5, 2, "mm*")).unwrap();
        assert_eq!(out.report.value, 15);
        assert_eq!(out.verdict, Verdict::Matches);
    }

    #[test]
    fn brute_outside_range_is_reported_without_formula() {
        let out = methods().get("brute").unwrap().run(&request(4, 1, "mm*")).unwrap();
        assert_eq!(out.verdict, Verdict::NoFormula);
        assert_eq!(out.note.as_deref(), Some(OUTSIDE_THEOREM_RANGE));
        assert!(out.report.exact);
    }
}
