//! The embedded golden suite: every printed value the engine is expected to
//! reproduce, run end to end against the fixture registry.

use std::collections::BTreeMap;

use milnor_core::assembler::{solve_scenario, DegenerationType};
use milnor_core::curves::kulikov_e2;
use milnor_core::diagram::to_hodge_deligne;
use milnor_core::local::brieskorn_pham;
use milnor_core::rational::{parse_rational, rat, Rational};
use milnor_core::spectrum::{convolve_paired, vertical_spectrum, EigenEntry, WeightedSpectrum};
use milnor_core::sss::{jk_spectrum, jk_summary, slc_catalog, sss_slc, SlcType};
use milnor_core::symanzik::{doublebox_report, KinematicCase};

use crate::fixtures;
use crate::runner::run_scenario;
use crate::scenario::Scenario;

type CheckResult = Result<(), String>;

/// Outcome of one golden case.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Whole-suite outcome.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GoldenSummary {
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
}

impl GoldenSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!(
                "{:<44} {}\n",
                c.name,
                if c.passed { "pass" } else { "FAIL" }
            ));
            if let Some(d) = &c.detail {
                out.push_str(&format!("    {d}\n"));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> CheckResult {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got:?}, want {want:?}"))
    }
}

fn expect_spectra(label: &str, got: &WeightedSpectrum, want: &WeightedSpectrum) -> CheckResult {
    if got == want {
        return Ok(());
    }
    let extra = got - want;
    Err(format!("{label}: differs from expected by {extra}"))
}

/// Checks one catalog row: the specialized formula applied to the given
/// isolating-deformation spectrum must land exactly on the closed form.
pub fn check_catalog_row(t: &SlcType, r: u64, yomdin: &WeightedSpectrum) -> CheckResult {
    let row = slc_catalog(t).map_err(|e| e.to_string())?;
    let out = sss_slc(&row.sigma1, yomdin, r, &row.betas).map_err(|e| e.to_string())?;
    if !out.uncancelled_fractional.is_empty() {
        return Err(format!(
            "uncancelled fractional terms: {}",
            out.uncancelled_fractional
        ));
    }
    expect_spectra("sigma2", &out.sigma2, &row.sigma2)?;
    if !row.sigma2.is_empty() {
        let d = to_hodge_deligne(&row.sigma2).map_err(|e| e.to_string())?;
        if !d.check_pq_symmetry() {
            return Err("catalog sigma2 diagram is not p/q symmetric".into());
        }
    }
    Ok(())
}

fn table1_fixture_rows() -> Vec<(&'static str, SlcType, u64, &'static str)> {
    vec![
        ("table1_d_inf", SlcType::DInf, 4, "yomdin_d_inf_r4"),
        (
            "table1_t2_inf_inf",
            SlcType::T2InfInf,
            5,
            "yomdin_t_2_inf_inf_r5",
        ),
        (
            "table1_t2_3_inf",
            SlcType::T2QInf { q: 3 },
            7,
            "yomdin_t_2_3_inf_r7",
        ),
        (
            "table1_t2_4_inf",
            SlcType::T2QInf { q: 4 },
            5,
            "yomdin_t_2_4_inf_r5",
        ),
        (
            "table1_t2_5_inf",
            SlcType::T2QInf { q: 5 },
            4,
            "yomdin_t_2_5_inf_r4",
        ),
        (
            "table1_t_inf_inf_inf",
            SlcType::TInfInfInf,
            4,
            "yomdin_t_inf_inf_inf_r4",
        ),
        (
            "table1_t3_inf_inf",
            SlcType::TPInfInf { p: 3 },
            4,
            "yomdin_t_3_inf_inf_r4",
        ),
        (
            "table1_t4_inf_inf",
            SlcType::TPInfInf { p: 4 },
            3,
            "yomdin_t_4_inf_inf_r3",
        ),
        (
            "table1_t33_inf",
            SlcType::TPQInf { p: 3, q: 3 },
            4,
            "yomdin_t_3_3_inf_r4",
        ),
        (
            "table1_t34_inf",
            SlcType::TPQInf { p: 3, q: 4 },
            3,
            "yomdin_t_3_4_inf_r3",
        ),
        (
            "table1_t45_inf",
            SlcType::TPQInf { p: 4, q: 5 },
            2,
            "yomdin_t_4_5_inf_r2",
        ),
    ]
}

fn check_a_inf_all_r() -> CheckResult {
    for r in 1..=6u64 {
        let yomdin = if r >= 2 {
            brieskorn_pham(&[2, 2, r as u32]).map_err(|e| e.to_string())?
        } else {
            WeightedSpectrum::new()
        };
        check_catalog_row(&SlcType::AInf, r, &yomdin).map_err(|e| format!("r = {r}: {e}"))?;
    }
    Ok(())
}

fn quadruple_point_data() -> Result<(Vec<EigenEntry>, Vec<EigenEntry>, WeightedSpectrum), String> {
    let limit =
        fixtures::eigen_entries("quadruple_point#limit_entries").map_err(|e| e.to_string())?;
    let naive =
        fixtures::eigen_entries("quadruple_point#naive_entries").map_err(|e| e.to_string())?;
    let yomdin =
        fixtures::weighted_spectrum("quadruple_point#yomdin").map_err(|e| e.to_string())?;
    Ok((limit, naive, yomdin))
}

fn check_quadruple_point_convolution() -> CheckResult {
    let (limit, _, _) = quadruple_point_data()?;
    let expected = fixtures::weighted_spectrum("quadruple_point#expected_convolution")
        .map_err(|e| e.to_string())?;
    let terms = vertical_spectrum(&limit, 1, 7).map_err(|e| e.to_string())?;
    expect_spectra("convolution", &convolve_paired(&terms), &expected)
}

fn check_quadruple_point_difference() -> CheckResult {
    let (limit, _, yomdin) = quadruple_point_data()?;
    let expected = fixtures::weighted_spectrum("quadruple_point#expected_difference")
        .map_err(|e| e.to_string())?;
    let terms = vertical_spectrum(&limit, 1, 7).map_err(|e| e.to_string())?;
    let difference = &yomdin - &convolve_paired(&terms);
    expect_spectra("difference", &difference, &expected)
}

fn check_quadruple_point_negative_control() -> CheckResult {
    let (limit, naive, _) = quadruple_point_data()?;
    let expected_naive = fixtures::weighted_spectrum("quadruple_point#expected_naive_convolution")
        .map_err(|e| e.to_string())?;
    let conv_limit = convolve_paired(&vertical_spectrum(&limit, 1, 7).map_err(|e| e.to_string())?);
    let conv_naive = convolve_paired(&vertical_spectrum(&naive, 1, 7).map_err(|e| e.to_string())?);
    expect_spectra("naive convolution", &conv_naive, &expected_naive)?;
    if conv_naive == conv_limit {
        return Err("naive data gave the correct weights; control is vacuous".into());
    }
    // the two convolutions differ only in weights
    expect_eq(
        "underlying plain convolutions",
        conv_naive.forget_weights(),
        conv_limit.forget_weights(),
    )
}

fn check_jk_series() -> CheckResult {
    for kappa in 1..=8u64 {
        let s = jk_spectrum(kappa).map_err(|e| e.to_string())?;
        let summary = jk_summary(kappa).map_err(|e| e.to_string())?;
        expect_eq(
            &format!("kappa = {kappa} total"),
            s.total_multiplicity(),
            3 * kappa as i64 - 2,
        )?;
        let d = to_hodge_deligne(&s).map_err(|e| e.to_string())?;
        let h20: u64 = d
            .iter()
            .filter(|(&(p, q, _), _)| (p, q) == (2, 0))
            .map(|(_, &m)| m)
            .sum();
        let h22: u64 = d
            .iter()
            .filter(|(&(p, q, _), _)| (p, q) == (2, 2))
            .map(|(_, &m)| m)
            .sum();
        expect_eq(&format!("kappa = {kappa} h20"), h20, summary.h20)?;
        expect_eq(&format!("kappa = {kappa} h22"), h22, summary.h22)?;
        if !d.check_pq_symmetry() {
            return Err(format!("kappa = {kappa}: diagram not p/q symmetric"));
        }
    }
    Ok(())
}

fn check_jk_cross_validation() -> CheckResult {
    // the series spectra recomputed through the formula with a plain-join
    // deformation spectrum
    for kappa in 1..=4u64 {
        let r = 3 * kappa;
        let beta = if kappa % 2 == 1 { rat(1, 2) } else { rat(0, 1) };
        let yomdin = brieskorn_pham(&[2, 3, r as u32]).map_err(|e| e.to_string())?;
        let out =
            sss_slc(&WeightedSpectrum::new(), &yomdin, r, &[beta]).map_err(|e| e.to_string())?;
        let jk = jk_spectrum(kappa).map_err(|e| e.to_string())?;
        expect_spectra(&format!("kappa = {kappa} weighted"), &out.sigma2, &jk)?;
        expect_eq(
            &format!("kappa = {kappa} plain"),
            out.sigma2.forget_weights(),
            jk.forget_weights(),
        )?;
    }
    Ok(())
}

fn check_kulikov() -> CheckResult {
    let r = kulikov_e2(4, 6, 4).map_err(|e| e.to_string())?;
    expect_eq("tetrahedral h2", r.h2_x0, 23)?;
    expect_eq("tetrahedral h1_van", r.h1_van.total_multiplicity(), 3)?;
    expect_eq("tetrahedral d2", r.d2_rank, 3)?;
    // identity h2 = 19 + F over a spread of triangulations
    for (f, v) in [
        (4u64, 4u64),
        (6, 5),
        (8, 12),
        (10, 7),
        (14, 9),
        (20, 12),
        (20, 30),
    ] {
        let e = v + f - 2;
        let r = kulikov_e2(f, e, v).map_err(|e| e.to_string())?;
        expect_eq(&format!("F = {f}, V = {v}: h2"), r.h2_x0, 19 + f)?;
        expect_eq(
            &format!("F = {f}, V = {v}: h1_van"),
            r.h1_van.total_multiplicity(),
            f - 1,
        )?;
    }
    Ok(())
}

fn scenario(name: &str) -> Result<Scenario, String> {
    let v = fixtures::value(name).map_err(|e| e.to_string())?;
    serde_json::from_value(v).map_err(|e| format!("{name}: {e}"))
}

fn check_pinch_quartic_cases() -> CheckResult {
    let sc = scenario("scenario_pinch_quartic_case_a")?;
    let out = run_scenario(&sc, None).map_err(|e| e.to_string())?;
    if !out.consistent {
        return Err("case a run flagged inconsistency".into());
    }
    let report = &out.json["report"];
    expect_eq(
        "case a type",
        report["tables"]["degeneration_type"].as_str(),
        Some("II"),
    )?;
    // second page: four classes at eigenvalue -1 over one weight-one pair
    let e2 = &report["e2"];
    expect_eq(
        "s0 cell",
        e2["s0_cell"].clone(),
        serde_json::json!([{"p": 1, "q": 1, "eig": "1/2", "mult": 4}]),
    )?;
    expect_eq(
        "curve cell",
        e2["curve_cells"][1].clone(),
        serde_json::json!([
            {"p": 1, "q": 2, "eig": "0", "mult": 1},
            {"p": 2, "q": 1, "eig": "0", "mult": 1}
        ]),
    )?;

    let sc_b = scenario("scenario_pinch_quartic_case_b")?;
    let out_b = run_scenario(&sc_b, None).map_err(|e| e.to_string())?;
    expect_eq(
        "case b type",
        out_b.json["report"]["tables"]["degeneration_type"].as_str(),
        Some("I"),
    )
}

fn check_collision_cases() -> CheckResult {
    let expected = [
        ("scenario_collide_ii", DegenerationType::III),
        ("scenario_collide_iii", DegenerationType::I),
        ("scenario_collide_iii_prime", DegenerationType::III),
        ("scenario_collide_iv", DegenerationType::I),
    ];
    for (name, want) in expected {
        let sc = scenario(name)?;
        let out = run_scenario(&sc, None).map_err(|e| e.to_string())?;
        let got = out.json["report"]["tables"]["degeneration_type"]
            .as_str()
            .map(str::to_string);
        expect_eq(name, got, Some(format!("{want:?}")))?;
    }
    // the bad points' local diagrams in the collision cases
    for (kappa, h20, h22) in [(2u64, 0u64, 1u64), (3, 1, 0), (4, 1, 1)] {
        let d = to_hodge_deligne(&jk_spectrum(kappa).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let got20: u64 = d
            .iter()
            .filter(|(&(p, q, _), _)| (p, q) == (2, 0))
            .map(|(_, &m)| m)
            .sum();
        let got22: u64 = d
            .iter()
            .filter(|(&(p, q, _), _)| (p, q) == (2, 2))
            .map(|(_, &m)| m)
            .sum();
        expect_eq(&format!("J_{kappa} (2,0)"), got20, h20)?;
        expect_eq(&format!("J_{kappa} (2,2)"), got22, h22)?;
    }
    // eigenvalue classes on the J_3 corner classes
    let d3 =
        to_hodge_deligne(&jk_spectrum(3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    expect_eq("J_3 corner", d3.multiplicity(2, 0, rat(1, 18)), 1)?;
    expect_eq("J_3 mirror", d3.multiplicity(0, 2, rat(17, 18)), 1)
}

fn check_nodal_conic() -> CheckResult {
    let sc = scenario("scenario_nodal_conic")?;
    let v = match &sc.kind {
        crate::scenario::ScenarioKind::Assemble { scenario } => scenario.clone(),
        _ => return Err("wrong kind".into()),
    };
    let sol = solve_scenario(&v).map_err(|e| e.to_string())?;
    expect_eq(
        "unknowns",
        sol.tables.unknowns.clone(),
        vec!["rho_b".to_string()],
    )?;
    expect_eq("equality case", sol.discrepancy.equality_case, true)?;
    expect_eq(
        "rho_a + rho_b",
        sol.discrepancy.middle_rank.as_constant(),
        Some(8),
    )?;
    // vanishing cohomology grew by the node count
    let h2v = sol.tables.h_van[&2]
        .total()
        .as_constant()
        .ok_or("h2_van not constant")?;
    expect_eq("h2_van growth", h2v, 6 + 8)?;

    let sc = scenario("scenario_nodal_conic_resolved")?;
    let v = match &sc.kind {
        crate::scenario::ScenarioKind::Assemble { scenario } => scenario.clone(),
        _ => return Err("wrong kind".into()),
    };
    let sol = solve_scenario(&v).map_err(|e| e.to_string())?;
    expect_eq(
        "rho_b resolved",
        sol.discrepancy.rho_b.as_constant(),
        Some(0),
    )?;
    expect_eq(
        "rho_a resolved",
        sol.discrepancy.rho_a.as_constant(),
        Some(8),
    )?;
    let tables = sol
        .tables
        .evaluate(&BTreeMap::new())
        .map_err(|e| e.to_string())?;
    let h2 = &tables["h_x0"][&2];
    expect_eq("h2(special fiber) rank", h2.total_multiplicity(), 8)?;
    expect_eq(
        "type",
        sol.tables.degeneration_type,
        Some(DegenerationType::II),
    )
}

fn check_doublebox(case: KinematicCase, seed: u64) -> CheckResult {
    let report = doublebox_report(case, seed).map_err(|e| e.to_string())?;
    let (a, ker, h22, h32, b, rho_d) = match case {
        KinematicCase::DGt4 => (3usize, 9usize, 9u64, 2u64, 2i64, 0usize),
        KinematicCase::DEq4 => (4, 8, 10, 1, 1, 2),
    };
    expect_eq("a", report.ev.a, a)?;
    expect_eq("ker(ev)", report.ev.dim_ker_ev, ker)?;
    expect_eq(
        "dims",
        (report.ev.dim_0123sq, report.ev.dim_3456sq, report.ev.dim_jf),
        (10, 10, 7),
    )?;
    expect_eq(
        "pairwise intersection",
        report.ev.dim_pairwise_intersection,
        1,
    )?;
    expect_eq("h22", report.hodge.h22_h5_x0, h22)?;
    expect_eq("h32", report.hodge.h32_h5_x0, h32)?;
    expect_eq("h23", report.hodge.h23_h5_x0, h32)?;
    expect_eq("b", report.hodge.b, b)?;
    expect_eq("rank V", report.hodge.rank_v, 20)?;
    expect_eq("f-level", report.hodge.f_level, 1)?;
    expect_eq("nodes", report.singular_locus.nodes.len(), rho_d)?;
    for n in &report.singular_locus.nodes {
        if !(n.jacobian_vanishes && n.first_polynomial_vanishes && n.z3_nonzero) {
            return Err(format!("node verification failed: {n:?}"));
        }
    }
    if !report.ev.checks.euler_identity
        || !report.ev.checks.u_in_kernel
        || !report.ev.checks.pairwise_intersection_is_z3sq
    {
        return Err(format!("structural checks failed: {:?}", report.ev.checks));
    }
    Ok(())
}

fn check_catalog_threshold_column() -> CheckResult {
    // the threshold and branch-count columns of the catalog
    let rows: Vec<(SlcType, &str, u64)> = vec![
        (SlcType::AInf, "0", 1),
        (SlcType::DInf, "3", 1),
        (SlcType::T2InfInf, "4", 2),
        (SlcType::T2QInf { q: 3 }, "6", 1),
        (SlcType::TInfInfInf, "3", 3),
        (SlcType::TPInfInf { p: 3 }, "3", 2),
        (SlcType::TPQInf { p: 3, q: 3 }, "3", 1),
        (SlcType::JKappaInf { kappa: 3 }, "9", 1),
    ];
    for (t, threshold, branches) in rows {
        let row = slc_catalog(&t).map_err(|e| e.to_string())?;
        let want: Rational = parse_rational(threshold).map_err(|e| e.to_string())?;
        expect_eq(&format!("{t:?} threshold"), row.r_threshold, want)?;
        expect_eq(&format!("{t:?} branches"), row.branch_count, branches)?;
    }
    Ok(())
}

/// Runs the whole golden suite.
pub fn run_all() -> GoldenSummary {
    let mut cases: Vec<(String, CheckResult)> = Vec::new();
    cases.push(("table1_a_inf_r1_to_r6".into(), check_a_inf_all_r()));
    for (name, t, r, fixture) in table1_fixture_rows() {
        let result = fixtures::weighted_spectrum(fixture)
            .map_err(|e| e.to_string())
            .and_then(|y| check_catalog_row(&t, r, &y));
        cases.push((name.into(), result));
    }
    cases.push((
        "catalog_threshold_column".into(),
        check_catalog_threshold_column(),
    ));
    cases.push((
        "quadruple_point_convolution".into(),
        check_quadruple_point_convolution(),
    ));
    cases.push((
        "quadruple_point_difference".into(),
        check_quadruple_point_difference(),
    ));
    cases.push((
        "quadruple_point_negative_control".into(),
        check_quadruple_point_negative_control(),
    ));
    cases.push(("jk_series_invariants".into(), check_jk_series()));
    cases.push(("jk_cross_validation".into(), check_jk_cross_validation()));
    cases.push(("kulikov_bookkeeping".into(), check_kulikov()));
    cases.push(("pinch_quartic_cases".into(), check_pinch_quartic_cases()));
    cases.push(("pinch_collisions".into(), check_collision_cases()));
    cases.push(("nodal_conic_discrepancies".into(), check_nodal_conic()));
    cases.push((
        "doublebox_generic".into(),
        check_doublebox(KinematicCase::DGt4, 1),
    ));
    cases.push((
        "doublebox_four_dimensional".into(),
        check_doublebox(KinematicCase::DEq4, 1),
    ));

    let results: Vec<CaseResult> = cases
        .into_iter()
        .map(|(name, r)| CaseResult {
            name,
            passed: r.is_ok(),
            detail: r.err(),
        })
        .collect();
    let passed = results.iter().filter(|c| c.passed).count();
    let failed = results.len() - passed;
    GoldenSummary {
        cases: results,
        passed,
        failed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_suite_is_green() {
        let summary = run_all();
        assert!(summary.all_passed(), "{}", summary.render());
    }

    #[test]
    fn perturbed_fixture_fails_with_named_diff() {
        let mut yomdin = fixtures::weighted_spectrum("yomdin_d_inf_r4").unwrap();
        yomdin.add_entry((rat(9, 8), 2), 1);
        let err = check_catalog_row(&SlcType::DInf, 4, &yomdin).unwrap_err();
        assert!(err.contains("sigma2"), "diff message was {err:?}");
        assert!(err.contains("9/8"), "diff message was {err:?}");
    }
}
