//! Cohomology of the vanishing-cycle sheaf along a one-dimensional singular
//! locus: rank-one local systems with monodromies of -1 on punctured rational
//! curves, extension-by-zero cohomology, branched double covers, and the
//! combinatorial normal-crossing-of-surfaces case.

use serde::{Deserialize, Serialize};

use crate::diagram::HodgeDeligneDiagram;
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::spectrum::WeightedSpectrum;

/// Sign of a local monodromy or a semisimple-monodromy action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(k: i64) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Eigenvalue class as an exponent: 0 for +1, 1/2 for -1.
    pub fn eigenvalue(self) -> Rational {
        match self {
            Sign::Plus => rat(0, 1),
            Sign::Minus => rat(1, 2),
        }
    }
}

/// What sits at a special point of the closed curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PunctureKind {
    /// Pinch point: zero stalk, local monodromy -1.
    Pinch,
    /// Node of the total space on the generic locus: zero stalk, local
    /// monodromy `(-1)^n`.
    TotalSpaceNode,
    /// A `J_{kappa,infinity}` point: zero stalk, monodromy -1 iff kappa odd.
    JKappa { kappa: u64 },
    /// Nonzero stalk gluing to a constant sheaf across the point; not an
    /// actual puncture of the extension-by-zero.
    Gluing,
}

impl PunctureKind {
    pub fn local_monodromy(self, n: i64) -> Sign {
        match self {
            PunctureKind::Pinch => Sign::Minus,
            PunctureKind::TotalSpaceNode => Sign::from_parity(n),
            PunctureKind::JKappa { kappa } => Sign::from_parity(kappa as i64),
            PunctureKind::Gluing => Sign::Plus,
        }
    }
}

/// A special point together with its local monodromy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Puncture {
    pub kind: PunctureKind,
    pub local_monodromy: Sign,
}

/// One stratum of the singular locus: a punctured rational curve carrying a
/// rank-one local system, Tate-twisted by `-floor(n/2)`, with the semisimple
/// monodromy acting by `(-1)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveStratumConfig {
    /// Genus of the normalized closed curve (0 in every supported case).
    pub component_genus: u64,
    pub punctures: Vec<Puncture>,
    /// Tate twist level `floor(n/2)`.
    pub twist: i64,
    pub tss_sign: Sign,
}

impl CurveStratumConfig {
    /// Builds the stratum for fiber dimension `n`, deriving monodromies and
    /// twist from the puncture kinds.
    pub fn for_fiber_dimension(genus: u64, kinds: &[PunctureKind], n: i64) -> Self {
        CurveStratumConfig {
            component_genus: genus,
            punctures: kinds
                .iter()
                .map(|&kind| Puncture {
                    kind,
                    local_monodromy: kind.local_monodromy(n),
                })
                .collect(),
            twist: n.div_euclid(2),
            tss_sign: Sign::from_parity(n),
        }
    }

    /// Actual punctures of the extension-by-zero (gluing points glue, so they
    /// do not puncture).
    pub fn effective_punctures(&self) -> impl Iterator<Item = &Puncture> {
        self.punctures
            .iter()
            .filter(|p| p.kind != PunctureKind::Gluing)
    }
}

/// Cohomology `(h^0, h^1, h^2)` of the extension by zero of the rank-one
/// system across its punctures, on the closed genus-0 curve.
pub fn shriek_cohomology(config: &CurveStratumConfig) -> Result<(u64, u64, u64)> {
    Ok(shriek_hodge(config)?.h)
}

/// Cohomology with its Hodge-theoretic splitting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCohomology {
    pub h: (u64, u64, u64),
    /// Pure weight-one pairs in `h^1` (each pair is a `(1,0) + (0,1)` block
    /// of the branched double cover).
    pub h1_pure_pairs: u64,
    /// Tate classes in `h^1` contributed by monodromy-trivial punctures.
    pub h1_tate: u64,
    pub twist: i64,
    pub tss_sign: Sign,
}

pub fn shriek_hodge(config: &CurveStratumConfig) -> Result<CurveCohomology> {
    if config.component_genus > 0 {
        return Err(Error::unsupported(
            "only genus-0 strata are modelled; no positive-genus instance exists here",
        ));
    }
    let punctures: Vec<&Puncture> = config.effective_punctures().collect();
    let m = punctures.len() as u64;
    let m_minus = punctures
        .iter()
        .filter(|p| p.local_monodromy == Sign::Minus)
        .count() as u64;
    if !m_minus.is_multiple_of(2) {
        return Err(Error::invalid(
            "monodromy product is -1: no such representation on a genus-0 curve",
        ));
    }
    let (h, pure_pairs, tate) = if m == 0 {
        ((1, 0, 1), 0, 0)
    } else {
        let h2 = if m_minus == 0 { 1 } else { 0 };
        let h1 = h2 + m - 2;
        let (pure_pairs, tate) = if m_minus == 0 {
            (0, m - 1)
        } else {
            // weight-1 part = H^1 of the double cover branched at the
            // -1 punctures; the rest come from +1 punctures, one each
            ((m_minus - 2) / 2, m - m_minus)
        };
        ((0, h1, h2), pure_pairs, tate)
    };
    debug_assert_eq!(h.1, 2 * pure_pairs + tate);
    Ok(CurveCohomology {
        h,
        h1_pure_pairs: pure_pairs,
        h1_tate: tate,
        twist: config.twist,
        tss_sign: config.tss_sign,
    })
}

impl CurveCohomology {
    pub fn h0_diagram(&self) -> HodgeDeligneDiagram {
        let mut d = HodgeDeligneDiagram::new();
        d.add(self.twist, self.twist, self.tss_sign.eigenvalue(), self.h.0);
        d
    }

    pub fn h1_diagram(&self) -> HodgeDeligneDiagram {
        let mut d = HodgeDeligneDiagram::new();
        let e = self.tss_sign.eigenvalue();
        d.add(self.twist + 1, self.twist, e, self.h1_pure_pairs);
        d.add(self.twist, self.twist + 1, e, self.h1_pure_pairs);
        d.add(self.twist, self.twist, e, self.h1_tate);
        d
    }

    pub fn h2_diagram(&self) -> HodgeDeligneDiagram {
        let mut d = HodgeDeligneDiagram::new();
        d.add(
            self.twist + 1,
            self.twist + 1,
            self.tss_sign.eigenvalue(),
            self.h.2,
        );
        d
    }
}

/// Genus of the double cover of a genus-`g` curve branched at `b` points.
pub fn branched_cover_genus(g: u64, branch_points: u64) -> Result<u64> {
    if !branch_points.is_multiple_of(2) {
        return Err(Error::invalid(
            "a double cover needs an even branch divisor",
        ));
    }
    if g == 0 && branch_points == 0 {
        return Err(Error::invalid(
            "unbranched double cover of a rational curve disconnects",
        ));
    }
    Ok(2 * g + branch_points / 2 - 1)
}

/// One summand of the vanishing-cycle sheaf description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "support")]
pub enum SheafPiece {
    /// Extension by zero of the rank-one system on a punctured stratum.
    Stratum { config: CurveStratumConfig },
    /// The punctures all glue: constant sheaf on the closed curve.
    ConstantStratum { twist: i64, tss_sign: Sign },
    /// Skyscraper at a bad point carrying its top local spectrum.
    Point {
        label: String,
        spectrum: WeightedSpectrum,
    },
}

/// Assembled description of the vanishing-cycle cohomology sheaves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheafDescription {
    pub pieces: Vec<SheafPiece>,
}

/// Assembles the sheaf description from stratification data: each stratum
/// contributes an extension-by-zero (or a constant sheaf when everything
/// glues), each bad point a skyscraper.
pub fn assemble_h_sheaf(
    strata: &[CurveStratumConfig],
    s0_points: &[(String, WeightedSpectrum)],
    _n: i64,
) -> Result<SheafDescription> {
    let mut pieces = Vec::new();
    for config in strata {
        // validate the representation up front
        shriek_hodge(config)?;
        if config.effective_punctures().next().is_none() {
            pieces.push(SheafPiece::ConstantStratum {
                twist: config.twist,
                tss_sign: config.tss_sign,
            });
        } else {
            pieces.push(SheafPiece::Stratum {
                config: config.clone(),
            });
        }
    }
    for (label, spectrum) in s0_points {
        pieces.push(SheafPiece::Point {
            label: label.clone(),
            spectrum: spectrum.clone(),
        });
    }
    Ok(SheafDescription { pieces })
}

impl SheafDescription {
    /// Total `H^i` diagrams of the curve-supported part, `i = 0, 1, 2`.
    pub fn curve_cohomology(&self) -> Result<[HodgeDeligneDiagram; 3]> {
        let mut out = [
            HodgeDeligneDiagram::new(),
            HodgeDeligneDiagram::new(),
            HodgeDeligneDiagram::new(),
        ];
        for piece in &self.pieces {
            let coh = match piece {
                SheafPiece::Stratum { config } => shriek_hodge(config)?,
                SheafPiece::ConstantStratum { twist, tss_sign } => CurveCohomology {
                    h: (1, 0, 1),
                    h1_pure_pairs: 0,
                    h1_tate: 0,
                    twist: *twist,
                    tss_sign: *tss_sign,
                },
                SheafPiece::Point { .. } => continue,
            };
            out[0] = out[0].merge(&coh.h0_diagram());
            out[1] = out[1].merge(&coh.h1_diagram());
            out[2] = out[2].merge(&coh.h2_diagram());
        }
        Ok(out)
    }

    /// Diagram of the skyscraper part (the stalkwise top cohomology).
    pub fn point_diagram(&self) -> Result<HodgeDeligneDiagram> {
        let mut out = HodgeDeligneDiagram::new();
        for piece in &self.pieces {
            if let SheafPiece::Point { spectrum, .. } = piece {
                out = out.merge(&crate::diagram::to_hodge_deligne(spectrum)?);
            }
        }
        Ok(out)
    }
}

/// Combinatorial invariants of a normal-crossing degeneration of surfaces
/// whose dual complex triangulates the two-sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KulikovReport {
    pub faces: u64,
    pub edges: u64,
    pub vertices: u64,
    /// The four possibly nonzero second-page cells, indexed `(i, j)`.
    pub e2_01: HodgeDeligneDiagram,
    pub e2_11: HodgeDeligneDiagram,
    pub e2_21: HodgeDeligneDiagram,
    pub e2_02: HodgeDeligneDiagram,
    pub d2_rank: u64,
    pub h1_van: HodgeDeligneDiagram,
    pub h2_van: HodgeDeligneDiagram,
    /// The two pieces of `h2_van` do not split as a direct sum of pure Tate
    /// classes; recorded in the form the computation produces.
    pub h2_van_extension: String,
    pub h3_van: HodgeDeligneDiagram,
    pub h2_x0: u64,
    pub h2_x0_description: String,
}

/// Second-page bookkeeping for a triangulation with `F` faces, `E` edges and
/// `V` triple points, solved for the only differential.
pub fn kulikov_e2(faces: u64, edges: u64, vertices: u64) -> Result<KulikovReport> {
    if vertices as i64 - edges as i64 + faces as i64 != 2 {
        return Err(Error::invalid(format!(
            "V - E + F = {} is not an Euler characteristic of the sphere",
            vertices as i64 - edges as i64 + faces as i64
        )));
    }
    if faces < 4 || vertices < 4 || edges < 6 {
        return Err(Error::invalid(
            "no triangulation of the sphere is this small (the minimum is the tetrahedron)",
        ));
    }
    let zero = rat(0, 1);
    let tate = |p: i64, m: u64| {
        let mut d = HodgeDeligneDiagram::new();
        d.add(p, p, zero, m);
        d
    };
    let e2_01 = tate(1, faces - 1);
    let e2_11 = tate(1, 1);
    let e2_21 = tate(2, edges);
    let e2_02 = tate(2, vertices);
    // H^3_van has rank F - 1, which pins the differential at V - 1
    let d2_rank = vertices - 1;
    let h1_van = e2_01.clone();
    let h2_van = e2_11.merge(&tate(2, vertices - d2_rank));
    let h3_van = tate(2, edges - d2_rank);
    let h2_x0 = 19 + faces;
    Ok(KulikovReport {
        faces,
        edges,
        vertices,
        e2_01,
        e2_11,
        e2_21,
        e2_02,
        d2_rank,
        h1_van,
        h2_van,
        h2_van_extension: "extension of Q(-2) by Q(-1)".into(),
        h3_van,
        h2_x0,
        h2_x0_description: format!("extension of Q(-1)^{} by Q(0)", 18 + faces),
    })
}
