//! The `validate` command: randomized validity suite over exact
//! oracles.

use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use serde_json::json;

use unionbound::validate::{run_validity_suite, ValidityConfig};

use crate::report::{emit, CliReport};
use crate::ValidateArgs;

pub fn run(args: ValidateArgs, json_out: bool, out: Option<&Path>) -> Result<u8> {
    let started = Instant::now();
    let cfg =
        ValidityConfig::new(args.models, args.n_max, args.seed)?.with_corruption(args.corrupt);
    let outcome = run_validity_suite(&cfg)?;

    let mut human = format!(
        "validity suite: {} models (N <= {}), seed {}\n\
         checks: {}\nviolations: {}\ntightest gap: {:.3e} at {}\n",
        outcome.models,
        args.n_max,
        args.seed,
        outcome.checks,
        outcome.violations.len(),
        outcome.tightest_gap,
        outcome.tightest_check,
    );
    for v in &outcome.violations {
        human.push_str(&format!(
            "VIOLATION model {} (N={}): {} gave {:.12} above exact {:.12}\n  counterexample: {}\n",
            v.model_index, v.n, v.check, v.bound, v.reference, v.model
        ));
    }
    if outcome.passed() {
        human.push_str("all bounds stayed below the exact union probabilities\n");
    }

    let inputs = json!({
        "models": args.models,
        "n_max": args.n_max,
        "seed": args.seed,
        "corrupt": args.corrupt,
    });
    let references = Some(serde_json::to_value(&outcome)?);
    let report = CliReport::new(&inputs, Vec::new(), references, started);
    emit(&report, &human, json_out, out)?;
    Ok(if outcome.passed() { 0 } else { 1 })
}
