//! The spectrum formula for one-dimensional singular loci, its specialization
//! to semi-log-canonical surface germs, the closed-form catalog of those
//! germs, and the `J_{kappa,infinity}` series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, Rational};
use crate::spectrum::{convolve_paired, vertical_spectrum, EigenEntry, Spectrum, WeightedSpectrum};

/// Limit data of one branch of the singular locus through the bad point:
/// the finite degree `mu` of the chosen linear form on the branch, and the
/// simultaneous eigenbasis entries `(alpha_ij, w_ij, beta_ij)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchData {
    pub mu: u64,
    pub entries: Vec<EigenEntry>,
}

/// All inputs of the spectrum formula at one bad point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SssProblem {
    /// Fiber dimension `n`.
    pub n: i64,
    pub branches: Vec<BranchData>,
    /// Weighted spectrum of the isolating deformation `f + g^r` at the point.
    pub yomdin: WeightedSpectrum,
    pub r: u64,
    /// Puiseux threshold for `r`; the weighted statement needs `r` strictly
    /// above it.
    #[serde(with = "crate::rational::rational_string")]
    pub r_threshold: Rational,
    /// Optional lower spectrum (degree `n - 1`); when present the upper
    /// spectrum is returned as well.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_lower: Option<WeightedSpectrum>,
}

/// Result of a weighted run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SssOutcome {
    /// `sigma^n - sigma^{n-1}` as a virtual weighted spectrum.
    pub difference: WeightedSpectrum,
    /// `sigma^n` when the lower spectrum was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_upper: Option<WeightedSpectrum>,
    /// False when the reconstructed upper spectrum has negative entries,
    /// signalling inconsistent inputs.
    pub effective: bool,
    /// Set when the run used `r` equal to the threshold (plain mode only).
    pub threshold_warning: bool,
}

/// Plain-variant result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SssPlainOutcome {
    pub difference: Spectrum,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_upper: Option<Spectrum>,
    pub effective: bool,
    pub threshold_warning: bool,
}

fn branch_convolutions(problem: &SssProblem) -> Result<WeightedSpectrum> {
    let mut total = WeightedSpectrum::new();
    for branch in &problem.branches {
        let terms = vertical_spectrum(&branch.entries, branch.mu, problem.r)?;
        total = &total + &convolve_paired(&terms);
    }
    Ok(total)
}

/// Weighted spectrum formula: `yomdin - sum_i (limit_i convolved with its
/// vertical companion)`, each horizontal entry paired with exponents built
/// from its own vertical eigenvalue. Requires `r` strictly above the
/// threshold.
pub fn sss_weighted(problem: &SssProblem) -> Result<SssOutcome> {
    let r = Rational::from(problem.r as i64);
    if r <= problem.r_threshold {
        return Err(Error::precondition(format!(
            "weighted run needs r > threshold ({} <= {})",
            problem.r,
            format_rational(problem.r_threshold)
        )));
    }
    let difference = &problem.yomdin - &branch_convolutions(problem)?;
    let sigma_upper = problem
        .sigma_lower
        .as_ref()
        .map(|lower| &difference + lower);
    let effective = sigma_upper
        .as_ref()
        .map(|s| s.is_effective())
        .unwrap_or(true);
    Ok(SssOutcome {
        difference,
        sigma_upper,
        effective,
        threshold_warning: false,
    })
}

/// Plain variant on underlying spectra; `r` equal to the threshold is
/// admitted with a warning flag.
pub fn sss_plain(problem: &SssProblem) -> Result<SssPlainOutcome> {
    let r = Rational::from(problem.r as i64);
    if r < problem.r_threshold {
        return Err(Error::precondition(format!(
            "r = {} below threshold {}",
            problem.r,
            format_rational(problem.r_threshold)
        )));
    }
    let weighted = &problem.yomdin - &branch_convolutions(problem)?;
    let difference = weighted.forget_weights();
    let sigma_upper = problem
        .sigma_lower
        .as_ref()
        .map(|lower| &difference + &lower.forget_weights());
    let effective = sigma_upper
        .as_ref()
        .map(|s| s.is_effective())
        .unwrap_or(true);
    Ok(SssPlainOutcome {
        difference,
        sigma_upper,
        effective,
        threshold_warning: r == problem.r_threshold,
    })
}

/// Result of the slc specialization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlcOutcome {
    pub sigma2: WeightedSpectrum,
    /// Negative non-integral leftovers; nonempty flags inconsistent inputs.
    pub uncancelled_fractional: WeightedSpectrum,
}

/// Specialized formula for surface germs whose generic transverse type is a
/// node: `sigma^2 = sigma^1 + yomdin - sum_i sum_k [(1 + (beta_i + k)/r, 2)]`
/// with one `beta` in `{0, 1/2}` per branch.
pub fn sss_slc(
    sigma1: &WeightedSpectrum,
    yomdin: &WeightedSpectrum,
    r: u64,
    betas: &[Rational],
) -> Result<SlcOutcome> {
    if r == 0 {
        return Err(Error::invalid("r must be >= 1"));
    }
    if betas.is_empty() {
        return Err(Error::invalid("need one beta per branch"));
    }
    for &b in betas {
        if b != rat(0, 1) && b != rat(1, 2) {
            return Err(Error::precondition(format!(
                "branch beta must be 0 or 1/2, got {}",
                format_rational(b)
            )));
        }
    }
    let mut minus = WeightedSpectrum::new();
    for &beta in betas {
        for k in 0..r as i64 {
            minus.add_entry(
                (
                    Rational::from(1) + (beta + Rational::from(k)) / Rational::from(r as i64),
                    2,
                ),
                1,
            );
        }
    }
    let sigma2 = &(sigma1 + yomdin) - &minus;
    let uncancelled_fractional = sigma2.filtered(|&(alpha, _), m| m < 0 && !alpha.is_integer());
    Ok(SlcOutcome {
        sigma2,
        uncancelled_fractional,
    })
}

/// Inference of the slc outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlcInference {
    /// Minimal effective lower spectrum cancelling the raw negatives.
    pub sigma1: WeightedSpectrum,
    pub sigma2: WeightedSpectrum,
}

/// Solve mode: infers the minimal `sigma^1` making the slc result effective
/// (the negatives of the raw difference, negated), and returns the
/// corresponding `sigma^2`.
pub fn sss_slc_infer(
    yomdin: &WeightedSpectrum,
    r: u64,
    betas: &[Rational],
) -> Result<SlcInference> {
    let raw = sss_slc(&WeightedSpectrum::new(), yomdin, r, betas)?;
    let negatives = raw.sigma2.filtered(|_, m| m < 0);
    let sigma1 = -&negatives;
    let sigma2 = &raw.sigma2 + &sigma1;
    Ok(SlcInference { sigma1, sigma2 })
}

/// Weighted spectrum of the `J_{kappa,infinity}` germ
/// `x^2 + y^3 + y^2 z^kappa` (degree 2), in closed form.
pub fn jk_spectrum(kappa: u64) -> Result<WeightedSpectrum> {
    if kappa == 0 {
        return Err(Error::invalid("kappa must be >= 1"));
    }
    let k = kappa as i64;
    let mut out = WeightedSpectrum::new();
    if kappa % 2 == 1 {
        for m in 1..=(k - 1) / 2 {
            out.add_entry((rat(5 * k + 2 * m, 6 * k), 2), 1);
            out.add_entry((rat(13 * k - 2 * m, 6 * k), 2), 1);
        }
        for m in 1..=(2 * k - 1) {
            out.add_entry((rat(7 * k + 2 * m, 6 * k), 2), 1);
        }
    } else {
        for m in 1..=(k / 2 - 1) {
            out.add_entry((rat(5 * k / 2 + m, 3 * k), 2), 1);
            out.add_entry((rat(13 * k / 2 - m, 3 * k), 2), 1);
        }
        for m in 1..=(2 * k - 1) {
            out.add_entry((rat(7 * k / 2 + m, 3 * k), 2), 1);
        }
        out.add_entry((rat(2, 1), 4), 1);
    }
    Ok(out)
}

/// Headline invariants of the `J_{kappa,infinity}` spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JkSummary {
    /// `h^{2,0} = floor((kappa - 1)/2)`.
    pub h20: u64,
    /// `h^{2,2}`: 1 for even kappa, else 0.
    pub h22: u64,
    /// Order of the semisimple monodromy: `6 kappa` (odd) resp. `3 kappa`.
    pub tss_order: u64,
    /// The monodromy logarithm is trivial on this cohomology.
    pub n_trivial: bool,
}

pub fn jk_summary(kappa: u64) -> Result<JkSummary> {
    if kappa == 0 {
        return Err(Error::invalid("kappa must be >= 1"));
    }
    Ok(JkSummary {
        h20: (kappa - 1) / 2,
        h22: if kappa.is_multiple_of(2) { 1 } else { 0 },
        tss_order: if kappa % 2 == 1 { 6 * kappa } else { 3 * kappa },
        n_trivial: true,
    })
}

/// Catalog families of non-isolated slc surface germs, plus the
/// `J_{kappa,infinity}` series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum SlcType {
    /// `x^2 + y^2`
    AInf,
    /// `x^2 + y^2 z`
    DInf,
    /// `x^2 + y^2 z^2`
    T2InfInf,
    /// `x^2 + y^2 z^2 + y^q`, `q >= 3`
    T2QInf { q: u64 },
    /// `x y z`
    TInfInfInf,
    /// `x y z + x^p`, `p >= 3`
    TPInfInf { p: u64 },
    /// `x y z + x^p + y^q`, `q >= p >= 3`
    TPQInf { p: u64, q: u64 },
    /// `x^2 + y^3 + y^2 z^kappa`, `kappa >= 1`
    JKappaInf { kappa: u64 },
}

/// One catalog row: both spectra, the isolating linear form, the Puiseux
/// threshold, branch count, and the branch betas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub local_form: String,
    pub g_choice: String,
    pub sigma1: WeightedSpectrum,
    pub sigma2: WeightedSpectrum,
    #[serde(with = "crate::rational::rational_string")]
    pub r_threshold: Rational,
    pub branch_count: u64,
    #[serde(with = "crate::rational::rational_string_vec")]
    pub betas: Vec<Rational>,
}

fn ladder(denominator: u64) -> WeightedSpectrum {
    // sum_{l=1}^{d-1} [(1 + l/d, 2)]
    WeightedSpectrum::from_entries(
        (1..denominator as i64).map(|l| ((Rational::from(1) + rat(l, denominator as i64), 2), 1)),
    )
}

pub fn slc_catalog(t: &SlcType) -> Result<CatalogRow> {
    let one_two = WeightedSpectrum::singleton(rat(1, 1), 2);
    let three_half = WeightedSpectrum::singleton(rat(3, 2), 2);
    let two_four = WeightedSpectrum::singleton(rat(2, 1), 4);
    let row = match *t {
        SlcType::AInf => CatalogRow {
            local_form: "x^2 + y^2".into(),
            g_choice: "z".into(),
            sigma1: one_two,
            sigma2: WeightedSpectrum::new(),
            r_threshold: rat(0, 1),
            branch_count: 1,
            betas: vec![rat(0, 1)],
        },
        SlcType::DInf => CatalogRow {
            local_form: "x^2 + y^2 z".into(),
            g_choice: "z - y".into(),
            sigma1: WeightedSpectrum::new(),
            sigma2: three_half,
            r_threshold: rat(3, 1),
            branch_count: 1,
            betas: vec![rat(1, 2)],
        },
        SlcType::T2InfInf => CatalogRow {
            local_form: "x^2 + y^2 z^2".into(),
            g_choice: "z - y".into(),
            sigma1: one_two,
            sigma2: &three_half + &two_four,
            r_threshold: rat(4, 1),
            branch_count: 2,
            betas: vec![rat(0, 1), rat(0, 1)],
        },
        SlcType::T2QInf { q } => {
            if q < 3 {
                return Err(Error::invalid("T_{2,q,inf} needs q >= 3"));
            }
            CatalogRow {
                local_form: format!("x^2 + y^2 z^2 + y^{q}"),
                g_choice: "z".into(),
                sigma1: WeightedSpectrum::new(),
                sigma2: &(&three_half + &two_four) + &ladder(q),
                r_threshold: rat(2 * q as i64, q as i64 - 2),
                branch_count: 1,
                betas: vec![rat(0, 1)],
            }
        }
        SlcType::TInfInfInf => CatalogRow {
            local_form: "x y z".into(),
            g_choice: "x + y + z".into(),
            sigma1: WeightedSpectrum::from_entries([((rat(1, 1), 2), 2)]),
            sigma2: two_four,
            r_threshold: rat(3, 1),
            branch_count: 3,
            betas: vec![rat(0, 1); 3],
        },
        SlcType::TPInfInf { p } => {
            if p < 3 {
                return Err(Error::invalid("T_{p,inf,inf} needs p >= 3"));
            }
            CatalogRow {
                local_form: format!("x y z + x^{p}"),
                g_choice: "y + z".into(),
                sigma1: one_two,
                sigma2: &ladder(p) + &two_four,
                r_threshold: rat(2 * p as i64, p as i64 - 1),
                branch_count: 2,
                betas: vec![rat(0, 1); 2],
            }
        }
        SlcType::TPQInf { p, q } => {
            if p < 3 || q < p {
                return Err(Error::invalid("T_{p,q,inf} needs q >= p >= 3"));
            }
            CatalogRow {
                local_form: format!("x y z + x^{p} + y^{q}"),
                g_choice: "z".into(),
                sigma1: WeightedSpectrum::new(),
                sigma2: &(&ladder(p) + &two_four) + &ladder(q),
                r_threshold: rat((p * q) as i64, (p * q) as i64 - p as i64 - q as i64),
                branch_count: 1,
                betas: vec![rat(0, 1)],
            }
        }
        SlcType::JKappaInf { kappa } => {
            if kappa == 0 {
                return Err(Error::invalid("J_{kappa,inf} needs kappa >= 1"));
            }
            CatalogRow {
                local_form: format!("x^2 + y^3 + y^2 z^{kappa}"),
                g_choice: "z".into(),
                sigma1: WeightedSpectrum::new(),
                sigma2: jk_spectrum(kappa)?,
                r_threshold: rat(3 * kappa as i64, 1),
                branch_count: 1,
                betas: vec![if kappa % 2 == 1 { rat(1, 2) } else { rat(0, 1) }],
            }
        }
    };
    Ok(row)
}

/// Lower bound on the geometric genus of the nearby fiber from the
/// `J_{kappa,infinity}` points on the special fiber.
pub fn genus_bound(kappas: &[u64]) -> u64 {
    kappas.iter().map(|&k| k.saturating_sub(1) / 2).sum()
}

/// Lower spectrum of a suspension germ whose transverse Milnor fiber is
/// connected: nothing survives in the lower degree.
pub fn sigma_lower_connected_suspension() -> WeightedSpectrum {
    WeightedSpectrum::new()
}

/// Lower spectrum carried by `k` independent weight-two torus classes
/// (germs whose lower Milnor cohomology is `k` Tate classes).
pub fn sigma_lower_torus_classes(k: u64) -> WeightedSpectrum {
    WeightedSpectrum::from_entries([((rat(1, 1), 2), k as i64)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::brieskorn_pham;
    use crate::rational::rat;
    use crate::spectrum::EigenEntry;

    fn ws(entries: &[(i64, i64, i64, i64)]) -> WeightedSpectrum {
        WeightedSpectrum::from_entries(entries.iter().map(|&(n, d, w, m)| ((rat(n, d), w), m)))
    }

    fn entry(a: (i64, i64), w: i64, b: (i64, i64), m: u64) -> EigenEntry {
        EigenEntry::new(rat(a.0, a.1), w, rat(b.0, b.1), m).unwrap()
    }

    #[test]
    fn a_inf_r_independence() {
        // one branch (1,2,0); yomdin = x^2 + y^2 + z^r
        for r in 1..=6u64 {
            let yomdin = if r >= 2 {
                brieskorn_pham(&[2, 2, r as u32]).unwrap()
            } else {
                // r = 1: smooth deformation, empty spectrum
                WeightedSpectrum::new()
            };
            let problem = SssProblem {
                n: 2,
                branches: vec![BranchData {
                    mu: 1,
                    entries: vec![entry((1, 1), 2, (0, 1), 1)],
                }],
                yomdin,
                r,
                r_threshold: rat(0, 1),
                sigma_lower: Some(ws(&[(1, 1, 2, 1)])),
            };
            let out = sss_weighted(&problem).unwrap();
            assert_eq!(out.difference, ws(&[(1, 1, 2, -1)]), "r = {r}");
            assert_eq!(out.sigma_upper.unwrap(), WeightedSpectrum::new());
            assert!(out.effective);
        }
    }

    #[test]
    fn pinch_point_with_five_term_yomdin() {
        // branch (1,2,1/2), r=4, yomdin = suspension of the plane quartic-cusp chain
        let yomdin = ws(&[
            (9, 8, 2, 1),
            (11, 8, 2, 1),
            (3, 2, 2, 1),
            (13, 8, 2, 1),
            (15, 8, 2, 1),
        ]);
        let problem = SssProblem {
            n: 2,
            branches: vec![BranchData {
                mu: 1,
                entries: vec![entry((1, 1), 2, (1, 2), 1)],
            }],
            yomdin,
            r: 4,
            r_threshold: rat(3, 1),
            sigma_lower: Some(WeightedSpectrum::new()),
        };
        let out = sss_weighted(&problem).unwrap();
        assert_eq!(out.sigma_upper.unwrap(), ws(&[(3, 2, 2, 1)]));
    }

    #[test]
    fn weighted_needs_r_above_threshold() {
        let problem = SssProblem {
            n: 2,
            branches: vec![],
            yomdin: WeightedSpectrum::new(),
            r: 3,
            r_threshold: rat(3, 1),
            sigma_lower: None,
        };
        assert!(sss_weighted(&problem).is_err());
        let plain = sss_plain(&problem).unwrap();
        assert!(plain.threshold_warning);
        let mut below = problem;
        below.r = 2;
        assert!(sss_plain(&below).is_err());
    }

    #[test]
    fn slc_d_inf() {
        let yomdin = ws(&[
            (9, 8, 2, 1),
            (11, 8, 2, 1),
            (3, 2, 2, 1),
            (13, 8, 2, 1),
            (15, 8, 2, 1),
        ]);
        let out = sss_slc(&WeightedSpectrum::new(), &yomdin, 4, &[rat(1, 2)]).unwrap();
        assert_eq!(out.sigma2, ws(&[(3, 2, 2, 1)]));
        assert!(out.uncancelled_fractional.is_empty());
    }

    #[test]
    fn slc_t_inf3_and_degenerate_r1() {
        // T_{inf,inf,inf}: sigma1 = 2[(1,2)], 3 branches beta=0, r=4
        let yomdin = ws(&[
            (1, 1, 2, 1),
            (5, 4, 2, 3),
            (3, 2, 2, 3),
            (7, 4, 2, 3),
            (2, 1, 4, 1),
        ]);
        let out = sss_slc(&ws(&[(1, 1, 2, 2)]), &yomdin, 4, &[rat(0, 1); 3]).unwrap();
        assert_eq!(out.sigma2, ws(&[(2, 1, 4, 1)]));

        // r = 1: single bookkeeping term per branch
        let yomdin = ws(&[(2, 1, 4, 1), (1, 1, 2, 1)]);
        let out = sss_slc(&WeightedSpectrum::new(), &yomdin, 1, &[rat(0, 1)]).unwrap();
        assert_eq!(out.sigma2, ws(&[(2, 1, 4, 1)]));
    }

    #[test]
    fn slc_rejects_general_betas() {
        assert!(sss_slc(
            &WeightedSpectrum::new(),
            &WeightedSpectrum::new(),
            2,
            &[rat(1, 3)]
        )
        .is_err());
    }

    #[test]
    fn slc_inference_recovers_lower_spectrum() {
        // T_{2,inf,inf} with r = 5: the raw difference needs a -[(1,2)] cancelled
        let yomdin = ws(&[
            (1, 1, 2, 1),
            (6, 5, 2, 2),
            (7, 5, 2, 2),
            (3, 2, 2, 1),
            (8, 5, 2, 2),
            (9, 5, 2, 2),
            (2, 1, 4, 1),
        ]);
        let inf = sss_slc_infer(&yomdin, 5, &[rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(inf.sigma1, ws(&[(1, 1, 2, 1)]));
        assert_eq!(inf.sigma2, ws(&[(3, 2, 2, 1), (2, 1, 4, 1)]));
    }

    #[test]
    fn jk_small_cases() {
        assert_eq!(jk_spectrum(1).unwrap(), ws(&[(3, 2, 2, 1)]));
        assert_eq!(
            jk_spectrum(2).unwrap(),
            ws(&[(4, 3, 2, 1), (3, 2, 2, 1), (5, 3, 2, 1), (2, 1, 4, 1)])
        );
        assert_eq!(
            jk_spectrum(3).unwrap(),
            ws(&[
                (17, 18, 2, 1),
                (23, 18, 2, 1),
                (25, 18, 2, 1),
                (3, 2, 2, 1),
                (29, 18, 2, 1),
                (31, 18, 2, 1),
                (37, 18, 2, 1),
            ])
        );
        assert!(jk_spectrum(0).is_err());
    }

    #[test]
    fn jk_total_multiplicity_against_enumeration() {
        for kappa in 1..=12u64 {
            let s = jk_spectrum(kappa).unwrap();
            // enumeration oracle: count the index ranges of the closed form
            let expected: i64 = if kappa % 2 == 1 {
                2 * ((kappa as i64 - 1) / 2) + (2 * kappa as i64 - 1)
            } else {
                2 * (kappa as i64 / 2 - 1) + (2 * kappa as i64 - 1) + 1
            };
            assert_eq!(s.total_multiplicity(), expected);
            assert_eq!(expected, 3 * kappa as i64 - 2);
        }
    }

    #[test]
    fn jk_matches_catalog_overlaps() {
        let d_inf = slc_catalog(&SlcType::DInf).unwrap();
        assert_eq!(jk_spectrum(1).unwrap(), d_inf.sigma2);
        let t23 = slc_catalog(&SlcType::T2QInf { q: 3 }).unwrap();
        assert_eq!(jk_spectrum(2).unwrap(), t23.sigma2);
    }

    #[test]
    fn jk_summary_examples() {
        let s = jk_summary(3).unwrap();
        assert_eq!((s.h20, s.h22, s.tss_order), (1, 0, 18));
        let s = jk_summary(4).unwrap();
        assert_eq!((s.h20, s.h22, s.tss_order), (1, 1, 12));
        let s = jk_summary(1).unwrap();
        assert_eq!((s.h20, s.h22, s.tss_order), (0, 0, 6));
    }

    #[test]
    fn catalog_rows() {
        let t2 = slc_catalog(&SlcType::T2InfInf).unwrap();
        assert_eq!(t2.sigma1, ws(&[(1, 1, 2, 1)]));
        assert_eq!(t2.sigma2, ws(&[(3, 2, 2, 1), (2, 1, 4, 1)]));
        assert_eq!(t2.r_threshold, rat(4, 1));
        assert_eq!(t2.branch_count, 2);

        let a = slc_catalog(&SlcType::AInf).unwrap();
        assert!(a.sigma2.is_empty());
        assert_eq!(a.r_threshold, rat(0, 1));

        let t34 = slc_catalog(&SlcType::TPQInf { p: 3, q: 4 }).unwrap();
        assert_eq!(
            t34.sigma2,
            ws(&[
                (4, 3, 2, 1),
                (5, 3, 2, 1),
                (2, 1, 4, 1),
                (5, 4, 2, 1),
                (3, 2, 2, 1),
                (7, 4, 2, 1),
            ])
        );
        assert!(slc_catalog(&SlcType::T2QInf { q: 2 }).is_err());
        assert!(slc_catalog(&SlcType::TPQInf { p: 4, q: 3 }).is_err());
    }

    #[test]
    fn catalog_forgets_match() {
        let d = slc_catalog(&SlcType::DInf).unwrap();
        assert_eq!(
            d.sigma2.forget_weights(),
            crate::spectrum::Spectrum::singleton(rat(3, 2))
        );
        assert_eq!(sigma_lower_connected_suspension(), WeightedSpectrum::new());
        assert_eq!(
            sigma_lower_torus_classes(2),
            slc_catalog(&SlcType::TInfInfInf).unwrap().sigma1
        );
    }

    #[test]
    fn genus_bound_examples() {
        assert_eq!(genus_bound(&[4]), 1);
        assert_eq!(genus_bound(&[1, 1, 1, 1]), 0);
        assert_eq!(genus_bound(&[3, 5]), 3);
    }
}
