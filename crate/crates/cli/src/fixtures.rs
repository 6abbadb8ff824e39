//! Embedded fixture registry. Fixtures live as JSON data files under
//! `fixtures/` so their content is reviewable; each carries a `note` field
//! describing exactly which local computation it records.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use milnor_core::spectrum::{EigenEntry, WeightedSpectrum};

macro_rules! fixture_list {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*]
    };
}

/// Every embedded fixture, by name.
pub const FIXTURES: &[(&str, &str)] = fixture_list![
    "quadruple_point",
    "yomdin_d_inf_r4",
    "yomdin_t_2_3_inf_r7",
    "yomdin_t_2_4_inf_r5",
    "yomdin_t_2_5_inf_r4",
    "yomdin_t_2_inf_inf_r5",
    "yomdin_t_3_3_inf_r4",
    "yomdin_t_3_4_inf_r3",
    "yomdin_t_3_inf_inf_r4",
    "yomdin_t_4_5_inf_r2",
    "yomdin_t_4_inf_inf_r3",
    "yomdin_t_inf_inf_inf_r4",
    "scenario_collide_ii",
    "scenario_collide_iii",
    "scenario_collide_iii_prime",
    "scenario_collide_iv",
    "scenario_doublebox_deq4",
    "scenario_doublebox_dgt4",
    "scenario_jk_4",
    "scenario_kulikov_tetrahedron",
    "scenario_nodal_conic",
    "scenario_nodal_conic_resolved",
    "scenario_pinch_quartic_case_a",
    "scenario_pinch_quartic_case_b",
    "scenario_quadruple_point_sss",
    "scenario_slc_table",
];

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

/// Parses a whole fixture file.
pub fn value(name: &str) -> Result<Value> {
    let (_, raw) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| anyhow!("unknown fixture {name:?}"))?;
    serde_json::from_str(raw).with_context(|| format!("fixture {name} is not valid JSON"))
}

/// Resolves `name` or `name#field` to a JSON value.
pub fn field(spec: &str) -> Result<Value> {
    let (name, field) = match spec.split_once('#') {
        Some((n, f)) => (n, Some(f)),
        None => (spec, None),
    };
    let v = value(name)?;
    match field {
        None => Ok(v),
        Some(f) => v
            .get(f)
            .cloned()
            .ok_or_else(|| anyhow!("fixture {name} has no field {f:?}")),
    }
}

/// A weighted spectrum from `name`, `name#field`, or the fixture's
/// `spectrum` field by default.
pub fn weighted_spectrum(spec: &str) -> Result<WeightedSpectrum> {
    let v = if spec.contains('#') {
        field(spec)?
    } else {
        field(&format!("{spec}#spectrum"))?
    };
    Ok(serde_json::from_value(v)?)
}

/// Eigen-entry lists referenced as `name#field`.
pub fn eigen_entries(spec: &str) -> Result<Vec<EigenEntry>> {
    let v = field(spec)?;
    Ok(serde_json::from_value(v)?)
}

/// Round-trips every embedded fixture through the parser.
pub fn validate_all() -> Result<()> {
    for (name, _) in FIXTURES {
        let v = value(name)?;
        if v.get("note")
            .and_then(Value::as_str)
            .unwrap_or("")
            .is_empty()
        {
            bail!("fixture {name} is missing its provenance note");
        }
    }
    Ok(())
}
