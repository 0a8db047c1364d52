//! Randomized validity suite: every implemented bound, evaluated with
//! exact restricted coefficients on random joint tables, must stay
//! below the exact union probability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    alpha_bound, alpha_lower_mass_bound, chung_erdos_bound, phi_bound, phi_optimize,
    second_order_bound, window_bound,
};
use crate::error::{Error, Result};
use crate::models::{exact_restricted_coefficient, JointTableModel, DEFAULT_MAX_PAST};
use crate::profile::{CoefficientFamily, MixingProfile};
use crate::report::BoundReport;

/// Largest `N` the suite accepts; keeps coefficient enumeration exact
/// and fast.
pub const VALIDATE_N_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityConfig {
    pub models: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Atom-bit budget for the strong-mixing enumeration.
    pub max_past: usize,
    /// Slack added to the exact union before comparing.
    pub tolerance: f64,
    /// Fault-injection offset added to every bound (testing hook).
    pub corrupt: f64,
}

impl ValidityConfig {
    pub fn new(models: usize, n_max: usize, seed: u64) -> Result<Self> {
        if models < 1 {
            return Err(Error::invalid("need at least one model"));
        }
        if !(1..=VALIDATE_N_CAP).contains(&n_max) {
            return Err(Error::invalid(format!(
                "N_max must lie in 1..={VALIDATE_N_CAP}"
            )));
        }
        Ok(ValidityConfig {
            models,
            n_max,
            seed,
            max_past: DEFAULT_MAX_PAST,
            tolerance: 1e-12,
            corrupt: 0.0,
        })
    }

    pub fn with_corruption(mut self, corrupt: f64) -> Self {
        self.corrupt = corrupt;
        self
    }
}

/// A bound that exceeded its reference union probability.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidityViolation {
    pub model_index: usize,
    pub n: usize,
    pub check: String,
    pub bound: f64,
    pub reference: f64,
    /// Full counterexample table, serialized as `{"N":..,"weights":[..]}`.
    pub model: String,
}

/// Aggregate result of a suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidityOutcome {
    pub models: usize,
    pub checks: usize,
    pub violations: Vec<ValidityViolation>,
    /// Smallest observed `reference - bound` over all checks.
    pub tightest_gap: f64,
    pub tightest_check: String,
}

impl ValidityOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct SuiteState {
    tolerance: f64,
    corrupt: f64,
    checks: usize,
    violations: Vec<ValidityViolation>,
    tightest_gap: f64,
    tightest_check: String,
}

impl SuiteState {
    fn record(
        &mut self,
        model_index: usize,
        table: &JointTableModel<f64>,
        check: String,
        report: &BoundReport<f64>,
        reference: f64,
    ) {
        let bound = report.bound + self.corrupt;
        self.checks += 1;
        let gap = reference - bound;
        if gap < self.tightest_gap {
            self.tightest_gap = gap;
            self.tightest_check = check.clone();
        }
        if bound > reference + self.tolerance {
            self.violations.push(ValidityViolation {
                model_index,
                n: table.n(),
                check,
                bound,
                reference,
                model: table.to_json_string().unwrap_or_default(),
            });
        }
    }
}

/// Single-lag envelope carrying an exact coefficient value.
fn constant_profile(value: f64, family: CoefficientFamily) -> MixingProfile<f64> {
    MixingProfile::tabulated(vec![value], family).expect("constant table is monotone")
}

/// Runs the suite; see [`ValidityConfig`].
pub fn run_validity_suite(cfg: &ValidityConfig) -> Result<ValidityOutcome> {
    if cfg.n_max > VALIDATE_N_CAP {
        return Err(Error::invalid(format!(
            "N_max must lie in 1..={VALIDATE_N_CAP}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state = SuiteState {
        tolerance: cfg.tolerance,
        corrupt: cfg.corrupt,
        checks: 0,
        violations: Vec::new(),
        tightest_gap: f64::INFINITY,
        tightest_check: String::new(),
    };

    for model_index in 0..cfg.models {
        let n = rng.random_range(1..=cfg.n_max);
        let table = JointTableModel::<f64>::random_dirichlet(n, &mut rng)?;
        check_table(&table, model_index, cfg.max_past, &mut state)?;
    }

    Ok(ValidityOutcome {
        models: cfg.models,
        checks: state.checks,
        violations: state.violations,
        tightest_gap: state.tightest_gap,
        tightest_check: state.tightest_check,
    })
}

/// Evaluates every implemented bound on one table against the exact
/// union probabilities, at every spacing whose coefficient is
/// computable within the `max_past` budget.
fn check_table(
    table: &JointTableModel<f64>,
    model_index: usize,
    max_past: usize,
    state: &mut SuiteState,
) -> Result<()> {
    let n = table.n();
    let marginals = table.marginals();
    let full: Vec<usize> = (1..=n).collect();
    let exact_union = table.union_probability(&full)?;
    let band = table.pairwise_intersections()?;
    let p_min = marginals.min_prob();

    // exact coefficients per lag; alpha may be refused by the budget
    let mut phi_at = vec![0.0f64; n + 2];
    let mut alpha_at = vec![None::<f64>; n + 2];
    for lag in 1..=(n + 1) {
        phi_at[lag] = exact_restricted_coefficient(table, CoefficientFamily::Phi, lag, max_past)?;
        alpha_at[lag] =
            match exact_restricted_coefficient(table, CoefficientFamily::Alpha, lag, max_past) {
                Ok(v) => Some(v),
                Err(Error::PastTooLarge { .. }) => None,
                Err(e) => return Err(e),
            };
    }

    for spacing in 0..n {
        let lag = spacing + 1;
        let phi_profile = constant_profile(phi_at[lag], CoefficientFamily::Phi);
        let r = phi_bound(&marginals, &phi_profile, spacing)?;
        state.record(
            model_index,
            table,
            format!("phi_bound L={spacing}"),
            &r,
            exact_union,
        );

        if let Some(alpha) = alpha_at[lag] {
            let alpha_profile = constant_profile(alpha, CoefficientFamily::Alpha);
            let r = alpha_bound(&marginals, &alpha_profile, spacing)?;
            state.record(
                model_index,
                table,
                format!("alpha_bound L={spacing}"),
                &r,
                exact_union,
            );
            if p_min > 0.0 {
                let r = alpha_lower_mass_bound(&marginals, &alpha_profile, spacing)?;
                state.record(
                    model_index,
                    table,
                    format!("alpha_lower_mass_bound L={spacing}"),
                    &r,
                    exact_union,
                );
            }
        }
    }

    // optimiser over the full exact profile (right-max pass absorbs the
    // per-lag enumeration dust; the repaired value stays an upper bound)
    {
        let mut values: Vec<f64> = if n == 1 {
            vec![0.0]
        } else {
            (1..n).map(|lag| phi_at[lag]).collect()
        };
        for i in (0..values.len().saturating_sub(1)).rev() {
            values[i] = values[i].max(values[i + 1]);
        }
        let profile = MixingProfile::tabulated(values, CoefficientFamily::Phi)?.restricted(n)?;
        let r = phi_optimize(&marginals, &profile)?;
        state.record(model_index, table, "phi_optimize".into(), &r, exact_union);
    }

    for spacing in 2..=n {
        let phi_profile = constant_profile(phi_at[spacing + 1], CoefficientFamily::Phi);
        for weighted in [false, true] {
            let r = second_order_bound(&marginals, &band, &phi_profile, spacing, weighted)?;
            state.record(
                model_index,
                table,
                format!("second_order_bound L={spacing} weighted={weighted}"),
                &r,
                exact_union,
            );
        }
    }

    let r = chung_erdos_bound(&marginals, &band)?;
    state.record(
        model_index,
        table,
        "chung_erdos_bound".into(),
        &r,
        exact_union,
    );

    // window bounds compare against the union over the window itself
    for shift in 0..=2usize {
        for mass in 1..=2usize {
            let window =
                match crate::marginals::WindowSpec::from_marginals(&marginals, shift, mass, None) {
                    Ok(w) => w,
                    Err(Error::InsufficientMass { .. }) => continue,
                    Err(e) => return Err(e),
                };
            let indices: Vec<usize> = (shift + 1..=window.phi_at).collect();
            let window_union = table.union_probability(&indices)?;
            for spacing in 0..n {
                let lag = spacing + 1;
                let phi_profile = constant_profile(phi_at[lag], CoefficientFamily::Phi);
                let r = window_bound(&marginals, &phi_profile, shift, mass, spacing, None)?;
                state.record(
                    model_index,
                    table,
                    format!("window_bound[phi] i={shift} n={mass} L={spacing}"),
                    &r,
                    window_union,
                );
                if let Some(alpha) = alpha_at[lag] {
                    let alpha_profile = constant_profile(alpha, CoefficientFamily::Alpha);
                    let r = window_bound(&marginals, &alpha_profile, shift, mass, spacing, None)?;
                    state.record(
                        model_index,
                        table,
                        format!("window_bound[alpha] i={shift} n={mass} L={spacing}"),
                        &r,
                        window_union,
                    );
                }
            }
        }
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = ValidityConfig::new(25, 6, 42).unwrap();
        let outcome = run_validity_suite(&cfg).unwrap();
        assert!(outcome.passed(), "violations: {:#?}", outcome.violations);
        assert!(outcome.checks > 100);
        assert!(outcome.tightest_gap >= -1e-12);
    }

    #[test]
    fn corruption_is_detected() {
        let cfg = ValidityConfig::new(5, 5, 42).unwrap().with_corruption(0.1);
        let outcome = run_validity_suite(&cfg).unwrap();
        assert!(!outcome.passed());
        let v = &outcome.violations[0];
        assert!(v.bound > v.reference);
        assert!(v.model.contains("weights"));
    }

    #[test]
    fn n_max_is_capped() {
        assert!(ValidityConfig::new(1, 12, 0).is_err());
        assert!(ValidityConfig::new(1, 10, 0).is_ok());
    }
}
