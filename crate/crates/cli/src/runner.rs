//! Executes scenarios and renders deterministic reports.

use std::collections::BTreeMap;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use milnor_core::assembler::solve_scenario;
use milnor_core::curves::kulikov_e2;
use milnor_core::diagram::{render_ascii, to_hodge_deligne};
use milnor_core::rational::parse_rational;
use milnor_core::spectrum::WeightedSpectrum;
use milnor_core::sss::{
    jk_spectrum, jk_summary, slc_catalog, sss_slc, sss_weighted, BranchData, SssProblem,
};
use milnor_core::symanzik::doublebox_report;

use crate::scenario::{Scenario, ScenarioKind};

/// Result of one scenario run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub name: String,
    pub kind: String,
    pub json: Value,
    pub ascii: String,
    /// False when the computation itself flags an inconsistency (distinct
    /// from an input error).
    pub consistent: bool,
}

fn spectrum_section(label: &str, s: &WeightedSpectrum) -> Result<(Value, String)> {
    let mut text = format!("{label}: {s}\n");
    let diagram = if s.is_effective() {
        let d = to_hodge_deligne(s)?;
        text.push_str(&render_ascii(&d));
        Some(d)
    } else {
        text.push_str("  (virtual spectrum; no diagram)\n");
        None
    };
    Ok((
        json!({
            "spectrum": s,
            "diagram": diagram,
        }),
        text,
    ))
}

/// Runs one scenario; `seed_override` replaces any seed the scenario states.
pub fn run_scenario(sc: &Scenario, seed_override: Option<u64>) -> Result<RunOutput> {
    let (kind, json, ascii, consistent) = match &sc.kind {
        ScenarioKind::Spectrum { weighted } => {
            let s = weighted.resolve()?;
            let (sec, mut text) = spectrum_section("spectrum", &s)?;
            let mut body = json!({
                "total_multiplicity": s.total_multiplicity(),
                "effective": s.is_effective(),
                "f_level": s.f_level(),
            });
            merge(&mut body, "input", sec);
            if s.is_effective() {
                let d = to_hodge_deligne(&s)?;
                body["pq_symmetric"] = json!(d.check_pq_symmetry());
                text.push_str(&format!("pq symmetric: {}\n", d.check_pq_symmetry()));
            }
            ("spectrum", body, text, true)
        }
        ScenarioKind::Sss {
            n,
            branches,
            r,
            r_threshold,
            yomdin,
            sigma_lower,
        } => {
            let problem = SssProblem {
                n: *n,
                branches: branches
                    .iter()
                    .map(|b| {
                        Ok(BranchData {
                            mu: b.mu,
                            entries: b.entries.resolve()?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                yomdin: yomdin.resolve()?,
                r: *r,
                r_threshold: parse_rational(r_threshold)?,
                sigma_lower: sigma_lower.as_ref().map(|s| s.resolve()).transpose()?,
            };
            let out = sss_weighted(&problem)?;
            let (_, mut text) = spectrum_section("difference", &out.difference)?;
            if let Some(upper) = &out.sigma_upper {
                let (_, t) = spectrum_section("upper spectrum", upper)?;
                text.push_str(&t);
            }
            let consistent = out.effective;
            ("sss", json!({ "outcome": out }), text, consistent)
        }
        ScenarioKind::Slc { family, r, yomdin } => {
            let row = slc_catalog(family)?;
            let out = sss_slc(&row.sigma1, &yomdin.resolve()?, *r, &row.betas)?;
            let matches = out.sigma2 == row.sigma2;
            let clean = out.uncancelled_fractional.is_empty();
            let (_, mut text) = spectrum_section("sigma2", &out.sigma2)?;
            text.push_str(&format!("matches catalog: {matches}\n"));
            (
                "slc",
                json!({
                    "catalog": row,
                    "sigma2": out.sigma2,
                    "uncancelled_fractional": out.uncancelled_fractional,
                    "matches_catalog": matches,
                }),
                text,
                matches && clean,
            )
        }
        ScenarioKind::SlcTable { rows } => {
            let mut out = Vec::new();
            let mut text = String::new();
            let mut ok = true;
            for t in rows {
                let row = slc_catalog(t)?;
                text.push_str(&format!(
                    "{:<24} sigma1 = {:<24} sigma2 = {}\n",
                    row.local_form,
                    row.sigma1.to_string(),
                    row.sigma2
                ));
                if !row.sigma2.is_empty() {
                    let d = to_hodge_deligne(&row.sigma2)?;
                    ok &= d.check_pq_symmetry();
                }
                out.push(json!({ "family": t, "row": row }));
            }
            ("slc_table", json!({ "rows": out }), text, ok)
        }
        ScenarioKind::Jk { kappa } => {
            let s = jk_spectrum(*kappa)?;
            let summary = jk_summary(*kappa)?;
            let (sec, mut text) = spectrum_section("spectrum", &s)?;
            let total_ok = s.total_multiplicity() == 3 * *kappa as i64 - 2;
            text.push_str(&format!(
                "h20 = {}, h22 = {}, order = {}\n",
                summary.h20, summary.h22, summary.tss_order
            ));
            let mut body = json!({ "kappa": kappa, "summary": summary });
            merge(&mut body, "result", sec);
            ("jk", body, text, total_ok)
        }
        ScenarioKind::Kulikov {
            faces,
            edges,
            vertices,
        } => {
            let report = kulikov_e2(*faces, *edges, *vertices)?;
            let text = format!(
                "faces {faces}, edges {edges}, vertices {vertices}\n\
                 d2 rank = {}\nh2(special fiber) = {}\nmiddle vanishing: {}\n",
                report.d2_rank, report.h2_x0, report.h2_van_extension
            );
            ("kulikov", json!(report), text, true)
        }
        ScenarioKind::Assemble { scenario } => {
            let sol = solve_scenario(scenario)?;
            let mut text = String::new();
            text.push_str(&format!("scenario: {}\n", scenario.name));
            text.push_str(&format!("d2: {:?}\n", sol.solved.d2_rank));
            if let Some(t) = sol.tables.degeneration_type {
                text.push_str(&format!("degeneration type: {t:?}\n"));
            }
            if sol.tables.unknowns.is_empty() {
                let tables = sol.tables.evaluate(&BTreeMap::new())?;
                for (label, per_k) in &tables {
                    for (k, d) in per_k {
                        if d.is_empty() {
                            continue;
                        }
                        text.push_str(&format!("{label}[{k}]:\n{}", render_ascii(d)));
                    }
                }
            } else {
                text.push_str(&format!("solution family in: {:?}\n", sol.tables.unknowns));
            }
            text.push_str(&format!(
                "discrepancies: rho_a = {}, rho_b = {}, bound = {}\n",
                sol.discrepancy.rho_a, sol.discrepancy.rho_b, sol.discrepancy.bound
            ));
            let ok = sol.genus_bound_ok;
            ("assemble", json!(sol), text, ok)
        }
        ScenarioKind::Doublebox { case, seed } => {
            let seed = seed_override.or(*seed).unwrap_or(1);
            let report = doublebox_report(*case, seed)?;
            let mut text = format!(
                "case {:?}, seed {} (attempts {})\n\
                 ker(ev) = {}, coker(ev) = a = {}\n\
                 b = {}, h22 = {}, h32 = {}, rank V = {}, f-level = {}\n",
                report.case,
                report.effective_seed,
                report.resample_attempts,
                report.ev.dim_ker_ev,
                report.ev.a,
                report.hodge.b,
                report.hodge.h22_h5_x0,
                report.hodge.h32_h5_x0,
                report.hodge.rank_v,
                report.hodge.f_level,
            );
            text.push_str("middle cohomology of the special fiber:\n");
            text.push_str(&render_ascii(&report.hodge.h5_x0));
            let ok = report.singular_locus.conic_restriction_ok
                && report.ev.checks.euler_identity
                && report.ev.checks.u_in_kernel;
            ("doublebox", json!(report), text, ok)
        }
    };
    Ok(RunOutput {
        name: sc.name.clone(),
        kind: kind.to_string(),
        json: json!({ "name": sc.name, "kind": kind, "report": json }),
        ascii: format!("== {} ({kind}) ==\n{ascii}", sc.name),
        consistent,
    })
}

fn merge(body: &mut Value, key: &str, section: Value) {
    body[key] = section;
}

/// Parses and runs a scenario file's text.
pub fn run_scenario_text(text: &str, seed_override: Option<u64>) -> Result<RunOutput> {
    let sc = crate::scenario::parse_scenario(text).context("scenario file is malformed")?;
    run_scenario(&sc, seed_override)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn run_fixture(name: &str) -> RunOutput {
        let v = fixtures::value(name).unwrap();
        let sc: Scenario = serde_json::from_value(v).unwrap();
        run_scenario(&sc, None).unwrap()
    }

    #[test]
    fn jk_scenario_runs() {
        let out = run_fixture("scenario_jk_4");
        assert!(out.consistent);
        assert!(out.ascii.contains("h20 = 1"));
        assert_eq!(out.json["report"]["summary"]["tss_order"], 12);
    }

    #[test]
    fn kulikov_scenario_runs() {
        let out = run_fixture("scenario_kulikov_tetrahedron");
        assert_eq!(out.json["report"]["h2_x0"], 23);
    }

    #[test]
    fn assemble_scenario_runs() {
        let out = run_fixture("scenario_pinch_quartic_case_a");
        assert!(out.consistent);
        assert!(out.ascii.contains("degeneration type: II"));
    }

    #[test]
    fn sss_scenario_runs() {
        let out = run_fixture("scenario_quadruple_point_sss");
        // the difference is virtual, which is expected and consistent
        assert!(out.json["report"]["outcome"]["difference"].is_array());
    }
}
