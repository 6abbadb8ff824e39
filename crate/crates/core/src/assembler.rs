//! Assembly of global vanishing cohomology from stratification data via the
//! two-row hypercohomology spectral sequence, rank-constraint solving of its
//! only differential, propagation through the vanishing-cycle sequence, and
//! the discrepancy accounting for nodal total spaces.
//!
//! The solvers work at the level of Hodge-Deligne diagrams plus semisimple
//! monodromy data; under-determined scenarios come back as solution families
//! in named unknowns rather than being silently resolved.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curves::{assemble_h_sheaf, CurveStratumConfig, PunctureKind};
use crate::diagram::{Arrow, HodgeDeligneDiagram, Position};
use crate::error::{Error, Result};
use crate::expr::LinExpr;
use crate::rational::{rat, rational_string, Rational};
use crate::spectrum::WeightedSpectrum;
use crate::sss::{slc_catalog, SlcType};

/// Diagram with affine-expression multiplicities: a family of diagrams
/// parametrized by the unknowns appearing in the entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagramExpr {
    entries: BTreeMap<Position, LinExpr>,
    arrows: Vec<Arrow>,
}

impl DiagramExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_diagram(d: &HodgeDeligneDiagram) -> Self {
        let mut out = Self::new();
        for (&(p, q, e), &m) in d.iter() {
            out.add(p, q, e, LinExpr::constant(m as i64));
        }
        out.arrows = d.arrows().to_vec();
        out
    }

    pub fn add(&mut self, p: i64, q: i64, eig: Rational, mult: LinExpr) {
        if mult.as_constant() == Some(0) {
            return;
        }
        let slot = self.entries.entry((p, q, eig)).or_default();
        *slot = &*slot + &mult;
        if slot.as_constant() == Some(0) {
            self.entries.remove(&(p, q, eig));
        }
    }

    pub fn add_arrow(&mut self, from: (i64, i64), to: (i64, i64), eig: Rational) {
        self.arrows.push(Arrow { from, to, eig });
    }

    pub fn get(&self, p: i64, q: i64, eig: Rational) -> LinExpr {
        self.entries.get(&(p, q, eig)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Position, &LinExpr)> {
        self.entries.iter()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> LinExpr {
        self.entries
            .values()
            .fold(LinExpr::default(), |acc, e| &acc + e)
    }

    /// Concrete diagram under the assignment; fails on negative counts.
    pub fn eval(&self, env: &BTreeMap<String, i64>) -> Result<HodgeDeligneDiagram> {
        let mut d = HodgeDeligneDiagram::new();
        for (&(p, q, e), expr) in &self.entries {
            let m = expr.eval(env)?;
            if m < 0 {
                return Err(Error::inconsistent(format!(
                    "entry ({p},{q}) evaluates to negative multiplicity {m}"
                )));
            }
            d.add(p, q, e, m as u64);
        }
        for a in &self.arrows {
            d.add_arrow(a.from, a.to, a.eig)?;
        }
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramExprRecord {
    p: i64,
    q: i64,
    #[serde(with = "rational_string")]
    eig: Rational,
    mult: LinExpr,
}

#[derive(Serialize, Deserialize)]
struct DiagramExprRepr {
    entries: Vec<DiagramExprRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    arrows: Vec<Arrow>,
}

impl Serialize for DiagramExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramExprRepr {
            entries: self
                .iter()
                .map(|(&(p, q, eig), mult)| DiagramExprRecord {
                    p,
                    q,
                    eig,
                    mult: mult.clone(),
                })
                .collect(),
            arrows: self.arrows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagramExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DiagramExprRepr::deserialize(d)?;
        let mut out = DiagramExpr::new();
        for r in repr.entries {
            out.add(r.p, r.q, r.eig, r.mult);
        }
        out.arrows = repr.arrows;
        Ok(out)
    }
}

/// A bad point of the singular locus, carrying its top local cohomology.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum S0Point {
    /// Looked up in the closed-form catalog.
    Catalog { slc: SlcType },
    /// Supplied directly as a weighted spectrum.
    Explicit {
        label: String,
        spectrum: WeightedSpectrum,
    },
}

impl S0Point {
    pub fn spectrum(&self) -> Result<WeightedSpectrum> {
        match self {
            S0Point::Catalog { slc } => Ok(slc_catalog(slc)?.sigma2),
            S0Point::Explicit { spectrum, .. } => Ok(spectrum.clone()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            S0Point::Catalog { slc } => format!("{slc:?}"),
            S0Point::Explicit { label, .. } => label.clone(),
        }
    }
}

/// One stratum of the scenario: puncture kinds plus the number of
/// total-space nodes sitting on it (applied by the enrichment pass).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSpec {
    #[serde(default)]
    pub genus: u64,
    pub punctures: Vec<PunctureKind>,
    /// Nodes of the total space on this stratum, not yet turned into
    /// punctures.
    #[serde(default)]
    pub total_space_nodes: u64,
}

/// Hodge numbers of the nearby smooth fiber relevant to the solve: the
/// middle cohomology `H^n` and the part of `H^{n+1}` the sequence touches.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiberHodge {
    pub middle: BTreeMap<(i64, i64), u64>,
    pub above: BTreeMap<(i64, i64), u64>,
}

impl FiberHodge {
    pub fn surface(h20: u64, h11: u64) -> Self {
        let mut middle = BTreeMap::new();
        middle.insert((2, 0), h20);
        middle.insert((1, 1), h11);
        middle.insert((0, 2), h20);
        FiberHodge {
            middle,
            above: BTreeMap::new(),
        }
    }

    /// Generic cubic 5-fold: `h^{3,2} = h^{2,3} = 21` and `h^6 = 1`.
    pub fn cubic_fivefold() -> Self {
        let mut middle = BTreeMap::new();
        middle.insert((3, 2), 21);
        middle.insert((2, 3), 21);
        let mut above = BTreeMap::new();
        above.insert((3, 3), 1);
        FiberHodge { middle, above }
    }

    pub fn h(&self, p: i64, q: i64) -> u64 {
        self.middle.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn middle_rank(&self) -> u64 {
        self.middle.values().sum()
    }
}

#[derive(Serialize, Deserialize)]
struct FiberRecord {
    p: i64,
    q: i64,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct FiberRepr {
    middle: Vec<FiberRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    above: Vec<FiberRecord>,
}

impl Serialize for FiberHodge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rec = |m: &BTreeMap<(i64, i64), u64>| {
            m.iter()
                .map(|(&(p, q), &mult)| FiberRecord { p, q, mult })
                .collect()
        };
        FiberRepr {
            middle: rec(&self.middle),
            above: rec(&self.above),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiberHodge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FiberRepr::deserialize(d)?;
        let mut out = FiberHodge::default();
        for r in repr.middle {
            *out.middle.entry((r.p, r.q)).or_insert(0) += r.mult;
        }
        for r in repr.above {
            *out.above.entry((r.p, r.q)).or_insert(0) += r.mult;
        }
        Ok(out)
    }
}

/// Solver constraints supplied by a scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Constraint {
    /// Pin the differential rank directly.
    ExplicitD2Rank { rank: u64 },
    /// Cancel invariant top-type classes until `Gr_F^2` of the middle
    /// vanishing cohomology fits under the fiber's `h^{2,0}`.
    FiberCap,
    /// The cohomology of the special fiber one degree above the middle
    /// vanishes; forces the connecting map image (and `rho_b`) to zero.
    H3Vanishes,
    /// The pure weight-one part of the middle vanishing cohomology maps onto
    /// the degree-above cohomology instead of lifting (the alternative
    /// branch of the sequence).
    WeightOneToH3,
    /// Pin the discrepancy `rho_b` directly.
    RhoB { value: u64 },
}

/// A full degeneration scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerationScenario {
    pub name: String,
    /// Fiber dimension.
    pub n: i64,
    pub strata: Vec<StratumSpec>,
    #[serde(default)]
    pub s0_points: Vec<S0Point>,
    pub fiber: FiberHodge,
    /// Number of components of the special fiber.
    #[serde(default = "one")]
    pub components: u64,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
}

fn one() -> u64 {
    1
}

impl DegenerationScenario {
    /// Total node count of the total space.
    pub fn rho_ka(&self) -> u64 {
        self.strata.iter().map(|s| s.total_space_nodes).sum()
    }
}

/// Turns every total-space node into a puncture of its stratum's local
/// system (monodromy `(-1)^n`). Idempotent: applied node counts are kept for
/// the discrepancy bookkeeping but not re-applied.
pub fn node_puncture_enrichment(scenario: &DegenerationScenario) -> DegenerationScenario {
    let mut out = scenario.clone();
    for stratum in &mut out.strata {
        let already = stratum
            .punctures
            .iter()
            .filter(|k| matches!(k, PunctureKind::TotalSpaceNode))
            .count() as u64;
        for _ in already..stratum.total_space_nodes {
            stratum.punctures.push(PunctureKind::TotalSpaceNode);
        }
    }
    out
}

/// The four possibly nonzero cells of the two-row spectral sequence, plus
/// the unresolved differential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E2Table {
    pub n: i64,
    /// Cell `(0, n)`: skyscraper contributions of the bad points.
    pub s0_cell: HodgeDeligneDiagram,
    /// Cells `(i, n-1)` for `i = 0, 1, 2`: curve-sheaf cohomology.
    pub curve_cells: [HodgeDeligneDiagram; 3],
    pub d2_rank: D2Rank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum D2Rank {
    Unknown,
    Solved(u64),
    /// Under-determined; any rank in the closed interval is admissible.
    Free {
        min: u64,
        max: u64,
    },
}

/// Builds the second page from a scenario (node enrichment included).
pub fn assemble_e2(scenario: &DegenerationScenario) -> Result<E2Table> {
    let enriched = node_puncture_enrichment(scenario);
    let strata: Vec<CurveStratumConfig> = enriched
        .strata
        .iter()
        .map(|s| CurveStratumConfig::for_fiber_dimension(s.genus, &s.punctures, enriched.n))
        .collect();
    let mut s0 = Vec::new();
    for p in &enriched.s0_points {
        s0.push((p.label(), p.spectrum()?));
    }
    let sheaf = assemble_h_sheaf(&strata, &s0, enriched.n)?;
    let curve_cells = sheaf.curve_cohomology()?;
    let s0_cell = sheaf.point_diagram()?;
    Ok(E2Table {
        n: enriched.n,
        s0_cell,
        curve_cells,
        d2_rank: D2Rank::Unknown,
    })
}

/// The page with its differential resolved and the vanishing cohomology read
/// off per total degree (`n-1`, `n`, `n+1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolvedE2 {
    pub n: i64,
    pub d2_rank: D2Rank,
    pub h_van: BTreeMap<i64, DiagramExpr>,
}

fn compatible_rank(s0: &HodgeDeligneDiagram, target: &HodgeDeligneDiagram) -> u64 {
    s0.iter()
        .map(|(&(p, q, e), &m)| m.min(target.multiplicity(p, q, e)))
        .sum()
}

/// Resolves the differential `(0, n) -> (2, n-1)` under the given
/// constraints. Cancellation only pairs classes of equal bidegree and
/// eigenvalue.
pub fn solve_d2(
    table: &E2Table,
    constraints: &[Constraint],
    fiber: &FiberHodge,
) -> Result<SolvedE2> {
    let [curve0, curve1, curve2] = &table.curve_cells;
    let max_rank = compatible_rank(&table.s0_cell, curve2);
    let mut rank: Option<u64> = None;
    for c in constraints {
        match c {
            Constraint::ExplicitD2Rank { rank: r } => {
                if *r > max_rank {
                    return Err(Error::inconsistent(format!(
                        "differential rank {r} exceeds the compatible maximum {max_rank}"
                    )));
                }
                rank = Some(*r);
            }
            Constraint::FiberCap => {
                if table.n != 2 {
                    return Err(Error::unsupported(
                        "fiber cap constraint only applies to surfaces",
                    ));
                }
                // the curve row can only hold type (2,2) in its last cell, so
                // cancellation drains Gr_F^2 of the middle vanishing cohomology
                let cap = fiber.h(2, 0);
                let grf_top: u64 = table.s0_cell.grade_f(2) + curve1.grade_f(2);
                let needed = grf_top.saturating_sub(cap);
                if needed > max_rank {
                    return Err(Error::inconsistent(format!(
                        "fiber cap needs rank {needed} but only {max_rank} can cancel"
                    )));
                }
                rank = Some(rank.map_or(needed, |r| r.max(needed)));
            }
            _ => {}
        }
    }
    let d2_rank = match rank {
        Some(r) => D2Rank::Solved(r),
        None if max_rank == 0 => D2Rank::Solved(0),
        None => D2Rank::Free {
            min: 0,
            max: max_rank,
        },
    };
    let r = match d2_rank {
        D2Rank::Solved(r) => r,
        D2Rank::Free { .. } => {
            return Err(Error::unsupported(
                "differential rank is under-determined; add a constraint to pin it",
            ))
        }
        D2Rank::Unknown => unreachable!(),
    };
    // subtract the cancelled classes pairwise, in entry order
    let mut s0_left = DiagramExpr::from_diagram(&table.s0_cell);
    let mut curve2_left = DiagramExpr::from_diagram(curve2);
    let mut remaining = r;
    for (&(p, q, e), &m) in table.s0_cell.iter() {
        if remaining == 0 {
            break;
        }
        let avail = m.min(curve2.multiplicity(p, q, e)).min(remaining);
        if avail > 0 {
            s0_left.add(p, q, e, LinExpr::constant(-(avail as i64)));
            curve2_left.add(p, q, e, LinExpr::constant(-(avail as i64)));
            remaining -= avail;
        }
    }
    if remaining > 0 {
        return Err(Error::inconsistent(
            "differential rank exceeds compatible classes",
        ));
    }
    let mut h_van = BTreeMap::new();
    h_van.insert(table.n - 1, DiagramExpr::from_diagram(curve0));
    let mut middle = s0_left;
    for (&(p, q, e), &m) in curve1.iter() {
        middle.add(p, q, e, LinExpr::constant(m as i64));
    }
    h_van.insert(table.n, middle);
    h_van.insert(table.n + 1, curve2_left);
    Ok(SolvedE2 {
        n: table.n,
        d2_rank,
        h_van,
    })
}

/// Degeneration type read off the limit mixed Hodge structure of a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegenerationType {
    I,
    II,
    III,
}

/// Everything the vanishing-cycle sequence determines, possibly as a family
/// in named unknowns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSolution {
    pub h_van: BTreeMap<i64, DiagramExpr>,
    pub h_lim: BTreeMap<i64, DiagramExpr>,
    pub h_x0: BTreeMap<i64, DiagramExpr>,
    pub degeneration_type: Option<DegenerationType>,
    pub unknowns: Vec<String>,
    pub relations: BTreeMap<String, LinExpr>,
}

impl TableSolution {
    /// Instantiates every diagram at the given unknown assignment.
    pub fn evaluate(
        &self,
        env: &BTreeMap<String, i64>,
    ) -> Result<BTreeMap<String, BTreeMap<i64, HodgeDeligneDiagram>>> {
        let mut out = BTreeMap::new();
        for (label, family) in [
            ("h_van", &self.h_van),
            ("h_lim", &self.h_lim),
            ("h_x0", &self.h_x0),
        ] {
            let mut tables = BTreeMap::new();
            for (&k, d) in family {
                tables.insert(k, d.eval(env)?);
            }
            out.insert(label.to_string(), tables);
        }
        Ok(out)
    }
}

/// How the connecting map out of the middle vanishing cohomology is pinned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RhoBSpec {
    Known(u64),
    Unknown,
}

/// Solves the vanishing-cycle sequence for a surface scenario (`n = 2`) with
/// `b_1 = b_3 = 0` fiber, e.g. a quartic surface degeneration.
pub fn solve_surface(
    h_van: &BTreeMap<i64, DiagramExpr>,
    fiber: &FiberHodge,
    rho_ka: u64,
    constraints: &[Constraint],
) -> Result<TableSolution> {
    let h20 = fiber.h(2, 0) as i64;
    let h11 = fiber.h(1, 1) as i64;
    if fiber.h(2, 0) != fiber.h(0, 2) || !fiber.above.is_empty() {
        return Err(Error::unsupported(
            "surface solver expects a fiber with b3 = 0",
        ));
    }
    let zero = rat(0, 1);
    let van1 = h_van.get(&1).cloned().unwrap_or_default();
    let van2 = h_van.get(&2).cloned().unwrap_or_default();
    let van3 = h_van.get(&3).cloned().unwrap_or_default();
    if !van3.is_empty() {
        return Err(Error::unsupported(
            "nonzero vanishing cohomology above the middle degree",
        ));
    }
    let constant = |e: &LinExpr, what: &str| -> Result<i64> {
        e.as_constant().ok_or_else(|| {
            Error::unsupported(format!("{what} must be constant before the sequence solve"))
        })
    };

    let mut case_b = false;
    let mut rho_b = if rho_ka == 0 {
        RhoBSpec::Known(0)
    } else {
        RhoBSpec::Unknown
    };
    for c in constraints {
        match c {
            Constraint::WeightOneToH3 => case_b = true,
            Constraint::H3Vanishes => rho_b = RhoBSpec::Known(0),
            Constraint::RhoB { value } => rho_b = RhoBSpec::Known(*value),
            _ => {}
        }
    }
    if case_b && rho_b == RhoBSpec::Unknown {
        return Err(Error::unsupported(
            "weight-one transfer with open rho_b is not modelled",
        ));
    }

    let mut unknowns = Vec::new();
    let rho_b_expr = match rho_b {
        RhoBSpec::Known(v) => {
            if v > rho_ka {
                return Err(Error::inconsistent(format!(
                    "rho_b = {v} exceeds the node bound {rho_ka}"
                )));
            }
            LinExpr::constant(v as i64)
        }
        RhoBSpec::Unknown => {
            unknowns.push("rho_b".to_string());
            LinExpr::var("rho_b")
        }
    };

    // image of the connecting map: rho_b invariant (1,1)-classes, plus the
    // full pure weight-one part in the alternative branch
    let mut delta = DiagramExpr::new();
    if rho_b_expr.as_constant() != Some(0) {
        delta.add(1, 1, zero, rho_b_expr.clone());
    }
    if case_b {
        delta.add(2, 1, zero, van2.get(2, 1, zero));
        delta.add(1, 2, zero, van2.get(1, 2, zero));
    }

    // what the limit still has to surject onto
    let mut surviving = van2.clone();
    for (&(p, q, e), m) in delta.iter() {
        surviving.add(p, q, e, -m);
    }

    let s22 = constant(&surviving.get(2, 2, zero), "surviving (2,2) mass")?;
    let s21 = constant(&surviving.get(2, 1, zero), "surviving (2,1) mass")?;
    let s12 = constant(&surviving.get(1, 2, zero), "surviving (1,2) mass")?;
    if s22 < 0 || s21 < 0 || s12 < 0 {
        return Err(Error::inconsistent(
            "connecting map removes more than is there",
        ));
    }
    let degeneration_type = if s22 > 0 {
        DegenerationType::III
    } else if s21 + s12 > 0 {
        DegenerationType::II
    } else {
        DegenerationType::I
    };

    // assemble the limit: strings for the surviving heavy classes, the
    // non-invariant part verbatim, pure fill for the rest of the budgets
    let mut lim = DiagramExpr::new();
    for (&(p, q, e), m) in surviving.iter() {
        if e != zero {
            if p + q != 2 {
                return Err(Error::unsupported(
                    "non-invariant vanishing class off the middle weight",
                ));
            }
            lim.add(p, q, e, m.clone());
        }
    }
    for _ in 0..s22 {
        lim.add(2, 2, zero, LinExpr::constant(1));
        lim.add(1, 1, zero, LinExpr::constant(1));
        lim.add(0, 0, zero, LinExpr::constant(1));
    }
    if s22 > 0 {
        lim.add_arrow((2, 2), (1, 1), zero);
        lim.add_arrow((1, 1), (0, 0), zero);
    }
    for _ in 0..s21 {
        lim.add(2, 1, zero, LinExpr::constant(1));
        lim.add(1, 0, zero, LinExpr::constant(1));
    }
    if s21 > 0 {
        lim.add_arrow((2, 1), (1, 0), zero);
    }
    for _ in 0..s12 {
        lim.add(1, 2, zero, LinExpr::constant(1));
        lim.add(0, 1, zero, LinExpr::constant(1));
    }
    if s12 > 0 {
        lim.add_arrow((1, 2), (0, 1), zero);
    }
    // invariant classes of pure type (2,0)/(0,2) pass through unchanged
    let v20 = constant(&surviving.get(2, 0, zero), "surviving (2,0) mass")?;
    let v02 = constant(&surviving.get(0, 2, zero), "surviving (0,2) mass")?;
    lim.add(2, 0, zero, LinExpr::constant(v20));
    lim.add(0, 2, zero, LinExpr::constant(v02));

    let p_budget = |p: i64| -> i64 {
        if p == 1 {
            h11
        } else {
            h20
        }
    };
    for p in [2, 1, 0] {
        let used = lim
            .iter()
            .filter(|(&(pp, _, _), _)| pp == p)
            .fold(LinExpr::default(), |acc, (_, m)| &acc + m);
        let used = constant(&used, "limit column mass")?;
        let left = p_budget(p) - used;
        if left < 0 {
            return Err(Error::inconsistent(format!(
                "limit column p = {p} overflows the fiber Hodge numbers"
            )));
        }
        let fill_q = match p {
            2 => 0,
            1 => 1,
            _ => 2,
        };
        lim.add(p, fill_q, zero, LinExpr::constant(left));
    }

    // kernel of the specialization: limit minus what maps onto the survivors
    let mut ker = lim.clone();
    for (&(p, q, e), m) in surviving.iter() {
        ker.add(p, q, e, -m);
    }
    // the special fiber also receives the connecting image of the lower row
    let mut h2_x0 = ker;
    h2_x0.arrows.clear();
    for (&(p, q, e), m) in van1.iter() {
        h2_x0.add(p, q, e, m.clone());
    }

    let mut h_lim = BTreeMap::new();
    h_lim.insert(1, DiagramExpr::new());
    h_lim.insert(2, lim);
    h_lim.insert(3, DiagramExpr::new());
    let mut h_x0 = BTreeMap::new();
    h_x0.insert(2, h2_x0.clone());
    h_x0.insert(3, delta.clone());

    let mut relations = BTreeMap::new();
    relations.insert("h2_x0_rank".to_string(), h2_x0.total());
    relations.insert("h3_x0_rank".to_string(), delta.total());
    relations.insert("rho_b".to_string(), rho_b_expr);

    Ok(TableSolution {
        h_van: h_van.clone(),
        h_lim,
        h_x0,
        degeneration_type: Some(degeneration_type),
        unknowns,
        relations,
    })
}

/// Solves the middle-degree sequence for the nodal-total-space 5-fold shape:
/// middle vanishing cohomology `V(-2)_- + Q(-3)^{s}` with the connecting
/// rank `a` left as an unknown.
pub fn solve_fivefold(
    h_van: &BTreeMap<i64, DiagramExpr>,
    fiber: &FiberHodge,
) -> Result<TableSolution> {
    let zero = rat(0, 1);
    let half = rat(1, 2);
    let van5 = h_van.get(&5).cloned().unwrap_or_default();
    for (&k, d) in h_van {
        if k != 5 && !d.is_empty() {
            return Err(Error::unsupported(
                "5-fold solver expects vanishing cohomology in degree 5 only",
            ));
        }
    }
    let s0 = van5
        .get(3, 3, zero)
        .as_constant()
        .ok_or_else(|| Error::unsupported("skyscraper mass must be constant"))?;
    let r32 = van5.get(3, 2, half).as_constant().unwrap_or(0);
    let r23 = van5.get(2, 3, half).as_constant().unwrap_or(0);
    if r32 != r23 {
        return Err(Error::inconsistent(
            "non-invariant part is not p/q symmetric",
        ));
    }
    let h32 = fiber.h(3, 2) as i64;
    if fiber.h(2, 3) as i64 != h32 || fiber.above.get(&(3, 3)).copied().unwrap_or(0) != 1 {
        return Err(Error::unsupported(
            "5-fold solver expects a cubic-5-fold-shaped fiber",
        ));
    }

    let a = LinExpr::var("a");
    let w4 = &LinExpr::constant(s0) - &a; // rank of the string part
    let b = &(&LinExpr::constant(h32 - r32) - &LinExpr::constant(s0)) + &a;

    let mut lim5 = DiagramExpr::new();
    lim5.add(3, 3, zero, w4.clone());
    lim5.add(2, 2, zero, w4.clone());
    lim5.add_arrow((3, 3), (2, 2), zero);
    lim5.add(3, 2, half, LinExpr::constant(r32));
    lim5.add(2, 3, half, LinExpr::constant(r23));
    lim5.add(3, 2, zero, b.clone());
    lim5.add(2, 3, zero, b.clone());

    let mut x0_5 = DiagramExpr::new();
    x0_5.add(2, 2, zero, w4.clone());
    x0_5.add(3, 2, zero, b.clone());
    x0_5.add(2, 3, zero, b.clone());

    let mut x0_6 = DiagramExpr::new();
    x0_6.add(3, 3, zero, &a + &LinExpr::constant(1));
    let mut lim6 = DiagramExpr::new();
    lim6.add(3, 3, zero, LinExpr::constant(1));

    let mut h_lim = BTreeMap::new();
    h_lim.insert(5, lim5);
    h_lim.insert(6, lim6);
    let mut h_x0 = BTreeMap::new();
    h_x0.insert(5, x0_5);
    h_x0.insert(6, x0_6);

    let mut relations = BTreeMap::new();
    relations.insert("b".to_string(), b);
    relations.insert("rank_N".to_string(), w4.clone());
    relations.insert("w4_h5_x0_rank".to_string(), w4);
    relations.insert("a_min".to_string(), LinExpr::constant(s0 + r32 - h32));
    relations.insert("a_max".to_string(), LinExpr::constant(s0));

    Ok(TableSolution {
        h_van: h_van.clone(),
        h_lim,
        h_x0,
        degeneration_type: None,
        unknowns: vec!["a".to_string()],
        relations,
    })
}

/// Dispatches the vanishing-cycle sequence solve on the scenario shape.
pub fn vanishing_sequence_solve(
    solved: &SolvedE2,
    fiber: &FiberHodge,
    rho_ka: u64,
    constraints: &[Constraint],
) -> Result<TableSolution> {
    if solved.h_van.values().all(|d| d.is_empty()) {
        // no vanishing cohomology: the special fiber carries the pure fiber
        // structure in the middle degree
        let mut pure = DiagramExpr::new();
        for (&(p, q), &m) in &fiber.middle {
            pure.add(p, q, rat(0, 1), LinExpr::constant(m as i64));
        }
        let mut h_lim = BTreeMap::new();
        h_lim.insert(solved.n, pure.clone());
        let mut h_x0 = BTreeMap::new();
        h_x0.insert(solved.n, pure);
        return Ok(TableSolution {
            h_van: solved.h_van.clone(),
            h_lim,
            h_x0,
            degeneration_type: Some(DegenerationType::I),
            unknowns: vec![],
            relations: BTreeMap::new(),
        });
    }
    match solved.n {
        2 => solve_surface(&solved.h_van, fiber, rho_ka, constraints),
        5 => solve_fivefold(&solved.h_van, fiber),
        n => Err(Error::unsupported(format!(
            "no sequence solver for fiber dimension {n}"
        ))),
    }
}

/// Clemens-Schmid discrepancy accounting for a nodal total space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub rho_a: LinExpr,
    pub rho_b: LinExpr,
    /// Node count; upper bound for `rho_a + rho_b` in the even case.
    pub bound: u64,
    /// Whether the solved case forces `rho_a + rho_b` to meet the bound.
    pub equality_case: bool,
    /// Rank of the obstruction term in the invariant-cycle sequence.
    pub middle_rank: LinExpr,
}

/// Discrepancies of a total space with `rho_ka` nodes. In odd fiber
/// dimension both vanish; in even dimension their sum is bounded by the node
/// count, with equality for an irreducible surface fiber.
pub fn cs_discrepancy(
    n: i64,
    rho_ka: u64,
    rho_g: u64,
    rho_b: Option<u64>,
) -> Result<DiscrepancyReport> {
    if n % 2 == 1 || rho_ka == 0 {
        return Ok(DiscrepancyReport {
            rho_a: LinExpr::constant(0),
            rho_b: LinExpr::constant(0),
            bound: rho_ka,
            equality_case: false,
            middle_rank: LinExpr::constant(0),
        });
    }
    let equality_case = n == 2 && rho_g == 1;
    let rho_b_expr = match rho_b {
        Some(v) => {
            if v > rho_ka {
                return Err(Error::inconsistent(format!(
                    "rho_b = {v} violates the node bound {rho_ka}"
                )));
            }
            LinExpr::constant(v as i64)
        }
        None => LinExpr::var("rho_b"),
    };
    let rho_a = if equality_case {
        &LinExpr::constant(rho_ka as i64) - &rho_b_expr
    } else {
        LinExpr::var("rho_a")
    };
    let middle_rank = &rho_a + &rho_b_expr;
    Ok(DiscrepancyReport {
        rho_a,
        rho_b: rho_b_expr,
        bound: rho_ka,
        equality_case,
        middle_rank,
    })
}

/// Checks the geometric-genus bound: the total `(2,0)` mass of the bad
/// points' local cohomology cannot exceed the fiber's `h^{2,0}`, because the
/// curve row can only cancel classes of type `(2,2)`.
pub fn genus_bound_check(scenario: &DegenerationScenario) -> Result<bool> {
    let mut demand = 0u64;
    for p in &scenario.s0_points {
        let d = crate::diagram::to_hodge_deligne(&p.spectrum()?)?;
        demand += d
            .iter()
            .filter(|(&(p, q, _), _)| p == 2 && q == 0)
            .map(|(_, &m)| m)
            .sum::<u64>();
    }
    Ok(demand <= scenario.fiber.h(2, 0))
}

/// Full pipeline result for a scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSolution {
    pub e2: E2Table,
    pub solved: SolvedE2,
    pub tables: TableSolution,
    pub discrepancy: DiscrepancyReport,
    pub genus_bound_ok: bool,
}

/// Runs enrichment, page assembly, the differential solve, the sequence
/// solve and the discrepancy accounting in order.
pub fn solve_scenario(scenario: &DegenerationScenario) -> Result<ScenarioSolution> {
    let enriched = node_puncture_enrichment(scenario);
    let mut table = assemble_e2(&enriched)?;
    let solved = solve_d2(&table, &enriched.constraints, &enriched.fiber)?;
    table.d2_rank = solved.d2_rank.clone();
    let tables = vanishing_sequence_solve(
        &solved,
        &enriched.fiber,
        enriched.rho_ka(),
        &enriched.constraints,
    )?;
    let rho_b = tables
        .relations
        .get("rho_b")
        .and_then(|e| e.as_constant())
        .map(|v| v as u64);
    let discrepancy = cs_discrepancy(enriched.n, enriched.rho_ka(), enriched.components, rho_b)?;
    let genus_bound_ok = genus_bound_check(&enriched)?;
    Ok(ScenarioSolution {
        e2: table,
        solved,
        tables,
        discrepancy,
        genus_bound_ok,
    })
}

/// Euler-characteristic conservation across a solved page: the signed cell
/// ranks match the signed vanishing-cohomology ranks by construction; this
/// recomputes both sides independently for a consistency check.
pub fn euler_conservation(table: &E2Table, solved: &SolvedE2) -> Result<bool> {
    let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    let mut cells = 0i64;
    cells += sign(table.n) * table.s0_cell.total_multiplicity() as i64;
    for (i, cell) in table.curve_cells.iter().enumerate() {
        cells += sign(i as i64 + table.n - 1) * cell.total_multiplicity() as i64;
    }
    let mut vans = 0i64;
    for (&k, d) in &solved.h_van {
        let t = d
            .total()
            .as_constant()
            .ok_or_else(|| Error::unsupported("symbolic table in Euler check"))?;
        vans += sign(k) * t;
    }
    Ok(cells == vans)
}
