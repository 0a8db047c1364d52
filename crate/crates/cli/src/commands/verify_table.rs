//! Recomputes the built-in two-state chain reference table from first
//! principles and compares every cell with the expected rounded value.

use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use serde_json::json;

use unionbound::bounds::{geom_phi_bound, phi_optimize};
use unionbound::{CoefficientFamily, Markov2, Profile};

use crate::report::{emit, CliReport};

struct RowSpec {
    a: f64,
    b: f64,
    n: usize,
    exact: f64,
    exact_decimals: i32,
    l0: usize,
    geom: f64,
    l_opt: usize,
    b_opt: f64,
}

const ROWS: [RowSpec; 2] = [
    RowSpec {
        a: 0.20,
        b: 0.30,
        n: 50,
        exact: 0.99999,
        exact_decimals: 5,
        l0: 2,
        geom: 0.964,
        l_opt: 2,
        b_opt: 0.990,
    },
    RowSpec {
        a: 0.05,
        b: 0.15,
        n: 100,
        exact: 0.995,
        exact_decimals: 3,
        l0: 9,
        geom: 0.713,
        l_opt: 11,
        b_opt: 0.779,
    },
];

fn round_half_even(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round_ties_even() / scale
}

struct Cell {
    name: &'static str,
    computed: f64,
    rounded: f64,
    expected: f64,
    ok: bool,
}

fn numeric_cell(name: &'static str, computed: f64, expected: f64, decimals: i32) -> Cell {
    let rounded = round_half_even(computed, decimals);
    Cell {
        name,
        computed,
        rounded,
        expected,
        ok: (rounded - expected).abs() < 1e-9,
    }
}

fn integer_cell(name: &'static str, computed: usize, expected: usize) -> Cell {
    Cell {
        name,
        computed: computed as f64,
        rounded: computed as f64,
        expected: expected as f64,
        ok: computed == expected,
    }
}

pub fn run(json_out: bool, out: Option<&Path>) -> Result<u8> {
    let started = Instant::now();
    let mut human = String::from("reference table verification\n");
    let mut rows_json = Vec::new();
    let mut mismatches = Vec::new();

    for spec in &ROWS {
        let chain = Markov2::new(spec.a, spec.b, spec.n)?;
        let rho = chain.lambda().abs();
        let marginals = chain.marginals();
        let geom = geom_phi_bound(&marginals, 1.0, rho)?;
        let profile = Profile::geometric(1.0, rho, CoefficientFamily::Phi)?;
        let opt = phi_optimize(&marginals, &profile)?;

        let cells = [
            numeric_cell(
                "exact",
                chain.exact_union(),
                spec.exact,
                spec.exact_decimals,
            ),
            integer_cell("L0", geom.spacing.unwrap_or(usize::MAX), spec.l0),
            numeric_cell("geom-phi", geom.bound, spec.geom, 3),
            integer_cell("L_opt", opt.spacing.unwrap_or(usize::MAX), spec.l_opt),
            numeric_cell("B_opt", opt.bound, spec.b_opt, 3),
        ];

        human.push_str(&format!(
            "row (a={:.2}, b={:.2}, N={}):\n",
            spec.a, spec.b, spec.n
        ));
        let mut cells_json = Vec::new();
        for cell in &cells {
            let verdict = if cell.ok { "ok" } else { "MISMATCH" };
            human.push_str(&format!(
                "  {:<8} computed {:<12.7} rounded {:<8} expected {:<8} {}\n",
                cell.name, cell.computed, cell.rounded, cell.expected, verdict
            ));
            cells_json.push(json!({
                "name": cell.name,
                "computed": cell.computed,
                "rounded": cell.rounded,
                "expected": cell.expected,
                "ok": cell.ok,
            }));
            if !cell.ok {
                mismatches.push(format!(
                    "(a={}, b={}, N={}) {}: computed {} expected {}",
                    spec.a, spec.b, spec.n, cell.name, cell.rounded, cell.expected
                ));
            }
        }
        rows_json.push(json!({
            "a": spec.a, "b": spec.b, "N": spec.n, "cells": cells_json,
        }));
    }

    let all_ok = mismatches.is_empty();
    if all_ok {
        human.push_str("all cells match\n");
    } else {
        human.push_str("mismatched cells:\n");
        for m in &mismatches {
            human.push_str(&format!("  {m}\n"));
        }
    }

    let inputs = json!({ "builtin": "two-state-chain-reference-table" });
    let references = json!({ "rows": rows_json, "all_ok": all_ok });
    let report = CliReport::new(&inputs, Vec::new(), Some(references), started);
    emit(&report, &human, json_out, out)?;
    Ok(if all_ok { 0 } else { 1 })
}
