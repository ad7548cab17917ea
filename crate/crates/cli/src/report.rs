//! Running plans and aggregating reports.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use flagdescent::Error;

use crate::checks;
use crate::plan::{VerificationPlan, SCHEMA_VERSION};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Error,
    SkippedBudget,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::SkippedBudget => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub module: String,
    pub operation: String,
    pub params: Value,
    pub status: Status,
    pub counts: BTreeMap<String, Value>,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub skipped_budget: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub plan: VerificationPlan,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// 0 all pass, 1 any failure or error, 3 budget skips without failures.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed + self.summary.errors > 0 {
            1
        } else if self.summary.skipped_budget > 0 {
            3
        } else {
            0
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<5} {} {} ({} ms)\n", c.status.label(), c.id, c.params, c.elapsed_ms));
            for w in &c.witnesses {
                out.push_str(&format!("      {w}\n"));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} errors, {} skipped (budget)\n",
            s.total, s.passed, s.failed, s.errors, s.skipped_budget
        ));
        out
    }
}

fn run_one(d: &crate::plan::CheckDescriptor, plan: &VerificationPlan) -> CheckResult {
    let id = d.id();
    let start = Instant::now();
    let spec = checks::find(&id).expect("plan validated");
    let (status, counts, witnesses) = match spec.run(&d.params, &plan.budget) {
        Ok(o) => (if o.passed { Status::Pass } else { Status::Fail }, o.counts, o.witnesses),
        Err(e @ Error::BudgetExceeded { .. }) => (Status::SkippedBudget, BTreeMap::new(), vec![e.to_string()]),
        Err(e) => (Status::Error, BTreeMap::new(), vec![e.to_string()]),
    };
    CheckResult {
        id,
        module: d.module.clone(),
        operation: d.operation.clone(),
        params: d.params.clone(),
        status,
        counts,
        witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every check in a pool of `plan.threads` workers; results keep plan order.
pub fn run(plan: &VerificationPlan) -> Result<Report, CliError> {
    plan.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let checks: Vec<CheckResult> = pool.install(|| plan.checks.par_iter().map(|d| run_one(d, plan)).collect());
    let mut summary = Summary { total: checks.len(), ..Default::default() };
    for c in &checks {
        match c.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Error => summary.errors += 1,
            Status::SkippedBudget => summary.skipped_budget += 1,
        }
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool: Tool { name: "flagdescent", version: env!("CARGO_PKG_VERSION") },
        plan: plan.clone(),
        summary,
        checks,
    })
}
