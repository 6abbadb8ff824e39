//! Scenario file schema. A scenario is one JSON object with a `name`, a
//! `kind` tag, and kind-specific inputs; rationals are `p/q` strings
//! throughout.

use anyhow::Result;
use serde::{Deserialize, Serialize};

use milnor_core::assembler::DegenerationScenario;
use milnor_core::spectrum::{EigenEntry, WeightedSpectrum};
use milnor_core::sss::SlcType;
use milnor_core::symanzik::KinematicCase;

use crate::fixtures;

/// Either inline data or a reference into the fixture registry.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumRef {
    Fixture { fixture: String },
    Inline(WeightedSpectrum),
}

impl SpectrumRef {
    pub fn resolve(&self) -> Result<WeightedSpectrum> {
        match self {
            SpectrumRef::Fixture { fixture } => fixtures::weighted_spectrum(fixture),
            SpectrumRef::Inline(s) => Ok(s.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntriesRef {
    Fixture { fixture: String },
    Inline(Vec<EigenEntry>),
}

impl EntriesRef {
    pub fn resolve(&self) -> Result<Vec<EigenEntry>> {
        match self {
            EntriesRef::Fixture { fixture } => fixtures::eigen_entries(fixture),
            EntriesRef::Inline(e) => Ok(e.clone()),
        }
    }
}

/// Branch input of a spectrum-formula scenario.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchInput {
    pub mu: u64,
    pub entries: EntriesRef,
}

/// One scenario.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(flatten)]
    pub kind: ScenarioKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioKind {
    /// Inspect a weighted spectrum: diagram, symmetry, filtration level.
    Spectrum { weighted: SpectrumRef },
    /// The weighted spectrum formula at one bad point.
    Sss {
        n: i64,
        branches: Vec<BranchInput>,
        r: u64,
        r_threshold: String,
        yomdin: SpectrumRef,
        #[serde(default)]
        sigma_lower: Option<SpectrumRef>,
    },
    /// One catalog family against a supplied isolating-deformation spectrum.
    Slc {
        #[serde(flatten)]
        family: SlcType,
        r: u64,
        yomdin: SpectrumRef,
    },
    /// Catalog rows in closed form.
    SlcTable { rows: Vec<SlcType> },
    /// The `J_{kappa,infinity}` series.
    Jk { kappa: u64 },
    /// Triangulation bookkeeping for a normal-crossing surface degeneration.
    Kulikov {
        faces: u64,
        edges: u64,
        vertices: u64,
    },
    /// Full vanishing-cohomology assembly for a degeneration scenario.
    Assemble { scenario: DegenerationScenario },
    /// The double-box graph hypersurface.
    Doublebox {
        case: KinematicCase,
        #[serde(default)]
        seed: Option<u64>,
    },
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    Ok(serde_json::from_str(text)?)
}
