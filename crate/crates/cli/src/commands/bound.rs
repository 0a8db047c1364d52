//! The `bound <kind>` dispatch.

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde_json::json;

use unionbound::bounds::{
    alpha_bound, alpha_lower_mass_bound, chung_erdos_bound, geom_phi_bound, phi_bound,
    phi_optimize, poly_alpha_bound, poly_alpha_bound_from_marginals, second_order_bound,
    window_bound,
};

use unionbound::CoefficientFamily;

use crate::inputs::{file_for_digest, load_band, load_marginals, load_profile};
use crate::report::{describe_bounds, emit, CliReport};
use crate::BoundKind;

/// Loads a profile and pins the family the subcommand stands for, so
/// the diagnostic names the offending file.
fn load_profile_expecting(
    path: &std::path::Path,
    family: CoefficientFamily,
) -> Result<unionbound::Profile> {
    let profile = load_profile(path)?;
    profile
        .expect_family(family)
        .with_context(|| format!("profile file {}", path.display()))?;
    Ok(profile)
}

pub fn run(kind: BoundKind, json: bool, out: Option<&Path>) -> Result<u8> {
    let started = Instant::now();
    let (report, inputs) = compute(kind)?;
    let human = describe_bounds(std::slice::from_ref(&report));
    let cli_report = CliReport::new(&inputs, vec![report], None, started);
    emit(&cli_report, &human, json, out)?;
    Ok(0)
}

fn compute(kind: BoundKind) -> Result<(unionbound::Report, serde_json::Value)> {
    Ok(match kind {
        BoundKind::Phi {
            marginals,
            profile,
            spacing,
        } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "profile": file_for_digest(&profile.profile)?,
                "L": spacing,
            });
            let m = load_marginals(&marginals.marginals)?;
            let p = load_profile_expecting(&profile.profile, CoefficientFamily::Phi)?;
            (phi_bound(&m, &p, spacing)?, inputs)
        }
        BoundKind::PhiOpt { marginals, profile } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "profile": file_for_digest(&profile.profile)?,
            });
            let m = load_marginals(&marginals.marginals)?;
            let p = load_profile_expecting(&profile.profile, CoefficientFamily::Phi)?;
            (phi_optimize(&m, &p)?, inputs)
        }
        BoundKind::Alpha {
            marginals,
            profile,
            spacing,
        } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "profile": file_for_digest(&profile.profile)?,
                "L": spacing,
            });
            let m = load_marginals(&marginals.marginals)?;
            let p = load_profile_expecting(&profile.profile, CoefficientFamily::Alpha)?;
            (alpha_bound(&m, &p, spacing)?, inputs)
        }
        BoundKind::AlphaLowerMass {
            marginals,
            profile,
            spacing,
        } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "profile": file_for_digest(&profile.profile)?,
                "L": spacing,
            });
            let m = load_marginals(&marginals.marginals)?;
            let p = load_profile_expecting(&profile.profile, CoefficientFamily::Alpha)?;
            (alpha_lower_mass_bound(&m, &p, spacing)?, inputs)
        }
        BoundKind::WindowPhi {
            marginals,
            profile,
            shift,
            mass,
            spacing,
            phi_override,
        } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "profile": file_for_digest(&profile.profile)?,
                "i": shift,
                "n": mass,
                "L": spacing,
                "phi_override": phi_override,
            });
            let m = load_marginals(&marginals.marginals)?;
            let p = load_profile_expecting(&profile.profile, CoefficientFamily::Phi)?;
            (
                window_bound(&m, &p, shift, mass, spacing, phi_override)?,
                inputs,
            )
        }
        BoundKind::WindowAlpha {
            marginals,
            profile,
            shift,
            mass,
            spacing,
            phi_override,
        } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "profile": file_for_digest(&profile.profile)?,
                "i": shift,
                "n": mass,
                "L": spacing,
                "phi_override": phi_override,
            });
            let m = load_marginals(&marginals.marginals)?;
            let p = load_profile_expecting(&profile.profile, CoefficientFamily::Alpha)?;
            (
                window_bound(&m, &p, shift, mass, spacing, phi_override)?,
                inputs,
            )
        }
        BoundKind::SecondOrder {
            marginals,
            band,
            profile,
            spacing,
            weighted,
        } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "band": file_for_digest(&band.band)?,
                "profile": file_for_digest(&profile.profile)?,
                "L": spacing,
                "weighted": weighted,
            });
            let m = load_marginals(&marginals.marginals)?;
            let b = load_band(&band.band)?.attached_to(&m)?;
            let p = load_profile_expecting(&profile.profile, CoefficientFamily::Phi)?;
            (second_order_bound(&m, &b, &p, spacing, weighted)?, inputs)
        }
        BoundKind::ChungErdos { marginals, band } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "band": file_for_digest(&band.band)?,
            });
            let m = load_marginals(&marginals.marginals)?;
            let b = load_band(&band.band)?.attached_to(&m)?;
            (chung_erdos_bound(&m, &b)?, inputs)
        }
        BoundKind::GeomPhi { marginals, c, rho } => {
            let inputs = json!({
                "marginals": file_for_digest(&marginals.marginals)?,
                "C": c,
                "rho": rho,
            });
            let m = load_marginals(&marginals.marginals)?;
            (geom_phi_bound(&m, c, rho)?, inputs)
        }
        BoundKind::PolyAlpha {
            sn,
            n,
            marginals,
            c,
            gamma,
            theta,
        } => match (sn, n, marginals) {
            (Some(sn), Some(n), None) => {
                let inputs = json!({
                    "SN": sn, "N": n, "C": c, "gamma": gamma, "theta": theta,
                });
                let theta = theta.unwrap_or_else(|| unionbound::bounds::default_poly_theta(gamma));
                (poly_alpha_bound(sn, n, c, gamma, theta)?, inputs)
            }
            (None, None, Some(path)) => {
                let inputs = json!({
                    "marginals": file_for_digest(&path)?,
                    "C": c, "gamma": gamma, "theta": theta,
                });
                let m = load_marginals(&path)?;
                (
                    poly_alpha_bound_from_marginals(&m, c, gamma, theta)?,
                    inputs,
                )
            }
            _ => anyhow::bail!("poly-alpha needs either --SN together with --N, or --marginals"),
        },
    })
}
