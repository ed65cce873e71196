//! The `verify` suites over small 3-graphs.

use anyhow::Result;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};
use turankit::relations::{
    check_em_rows, check_square_intermediate, check_telescoping, dyadic_grid, lemma_sweep,
    s_bound_violations, theorem_grid,
};
use turankit::{Catalog, ClassFilter, EpsilonMode, Exec, Hypergraph};

const K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Main lemma on every 4- and 5-vertex 3-graph over an x grid.
    Lemma,
    /// Square estimate and expectation identities.
    Claims,
    /// Rows E_m in both epsilon modes and the telescoping identity.
    Rows,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub passed: bool,
    pub failures: Vec<Value>,
    pub warnings: Vec<Value>,
}

pub fn run(suite: Suite, samples: usize, seed: u64) -> Result<SuiteReport> {
    match suite {
        Suite::Lemma => lemma(),
        Suite::Claims => claims(samples, seed),
        Suite::Rows => rows(),
    }
}

fn report(suite: &str, checks: usize, failures: Vec<Value>, warnings: Vec<Value>) -> SuiteReport {
    SuiteReport {
        suite: suite.to_string(),
        checks,
        passed: failures.is_empty(),
        failures,
        warnings,
    }
}

fn lemma() -> Result<SuiteReport> {
    let h4 = Catalog::new(4, K, ClassFilter::None)?;
    let h5 = Catalog::new(5, K, ClassFilter::None)?;
    let mut grid = dyadic_grid();
    grid.extend(theorem_grid(K as u32, 5..=8)?);
    grid.sort();
    grid.dedup();
    let sweep = lemma_sweep(Exec::default(), &[&h4, &h5], &grid)?;
    let failures = sweep
        .failures
        .iter()
        .map(serde_json::to_value)
        .collect::<serde_json::Result<_>>()?;
    Ok(report("lemma", sweep.checked, failures, Vec::new()))
}

fn random_graph(rng: &mut StdRng, n: usize) -> Result<Hypergraph> {
    let slots = Hypergraph::empty(n, K)?.slots();
    let mask = rng.random::<u128>() & ((1u128 << slots) - 1);
    Ok(Hypergraph::from_mask(n, K, mask)?)
}

fn claims(samples: usize, seed: u64) -> Result<SuiteReport> {
    let h5 = Catalog::new(5, K, ClassFilter::None)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut hosts: Vec<Hypergraph> = h5.graphs().to_vec();
    for _ in 0..samples {
        hosts.push(random_graph(&mut rng, 6)?);
    }
    let mut checks = 0;
    let mut failures = Vec::new();
    for g in &hosts {
        for m in 3..=4 {
            let c = check_square_intermediate(g, m)?;
            checks += 1;
            if !c.holds() {
                failures.push(serde_json::to_value(&c)?);
            }
        }
    }
    for code in s_bound_violations(&h5) {
        failures.push(json!({ "sBoundViolation": code }));
    }
    checks += h5.len();
    Ok(report("claims", checks, failures, Vec::new()))
}

fn rows() -> Result<SuiteReport> {
    let h6 = Catalog::new(6, K, ClassFilter::None)?;
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    for g in h6.graphs() {
        for r in 4..6u32 {
            for mode in [EpsilonMode::Corrected, EpsilonMode::PaperLiteral] {
                let rows = check_em_rows(g, r, mode)?;
                checks += 1;
                if !rows.all_nonpositive() {
                    let entry = serde_json::to_value(&rows)?;
                    match mode {
                        EpsilonMode::Corrected => failures.push(entry),
                        EpsilonMode::PaperLiteral => warnings.push(entry),
                    }
                }
                for target in K as u32..r {
                    let t = check_telescoping(g, target, r, mode)?;
                    checks += 1;
                    if !t.holds() {
                        failures.push(json!({
                            "telescoping": t,
                            "graph": g.canonical(),
                            "g": target,
                            "r": r,
                            "mode": mode,
                        }));
                    }
                }
            }
        }
    }
    Ok(report("rows", checks, failures, warnings))
}
