//! Closed-form spectra and invariants of standard local models:
//! Brieskorn-Pham forms, joins, normal-crossing Milnor fibers,
//! monodromy-order bounds and torsion exponents.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{frac, rat, Rational};
use crate::spectrum::{Spectrum, WeightedSpectrum};

/// Spectrum of one Brieskorn-Pham factor `z^a`: `{k/a : k = 1..a-1}`.
fn power_factor(a: u32) -> Spectrum {
    Spectrum::from_entries((1..a as i64).map(|k| (rat(k, a as i64), 1)))
}

/// Plain join of spectra: bilinear sum of exponents.
///
/// Rank is multiplicative: `rank(join(A, B)) = rank(A) * rank(B)`.
pub fn join(a: &Spectrum, b: &Spectrum) -> Spectrum {
    a.convolve(b)
}

/// Weighted spectrum of `x_1^{a_1} + ... + x_{n+1}^{a_{n+1}}` where
/// `n + 1 = exponents.len()`.
///
/// The plain part is the iterated join of the factors. The weighted lift
/// assigns `w = n` to non-integral exponents and `w = 2 * alpha` to integral
/// ones; the integral rule is the symmetric assignment under
/// `(alpha, w) -> (n + 1 - alpha, 2n + 2 - w)` and is what every
/// isolated-model instance used here requires.
pub fn brieskorn_pham(exponents: &[u32]) -> Result<WeightedSpectrum> {
    if exponents.is_empty() {
        return Err(Error::invalid("empty exponent list"));
    }
    if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
        return Err(Error::invalid(format!("Brieskorn-Pham exponent {a} < 2")));
    }
    let n = exponents.len() as i64 - 1;
    let mut plain = power_factor(exponents[0]);
    for &a in &exponents[1..] {
        plain = join(&plain, &power_factor(a));
    }
    let mut out = WeightedSpectrum::new();
    for (&alpha, &m) in plain.iter() {
        let w = if alpha.is_integer() {
            2 * alpha.to_integer()
        } else {
            n
        };
        out.add_entry((alpha, w), m);
    }
    Ok(out)
}

/// Normal-crossing local form `z_1^{a_1} ... z_r^{a_r}` on an `n`-dimensional
/// fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcLocalForm {
    /// Ambient fiber dimension.
    pub n: u32,
    /// Branch multiplicities `a_1..a_r`, `r <= n + 1`.
    pub multiplicities: Vec<u64>,
}

impl NcLocalForm {
    pub fn new(n: u32, multiplicities: Vec<u64>) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::invalid("normal-crossing form needs r >= 1 branches"));
        }
        if multiplicities.len() as u32 > n + 1 {
            return Err(Error::invalid("more branches than ambient coordinates"));
        }
        if multiplicities.contains(&0) {
            return Err(Error::invalid("branch multiplicity must be >= 1"));
        }
        Ok(NcLocalForm { n, multiplicities })
    }
}

/// Milnor-fiber cohomology of a normal-crossing local form: `gcd{a_i}`
/// connected components, each with the rational cohomology of an
/// `(r-1)`-torus, `h^k` carrying a Tate twist of weight `2k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcMilnorReport {
    /// Number of connected components, cyclically permuted by the monodromy.
    pub components: u64,
    /// Torus dimension `r - 1` of each component.
    pub torus_dim: u32,
    /// `h^k` per component, `k = 0..=torus_dim` (binomials).
    pub h_per_component: Vec<u64>,
}

impl NcMilnorReport {
    /// Weighted spectrum of reduced `H^k`: each component contributes Tate
    /// classes `(k, 2k)`, refined by the component-permutation eigenvalues
    /// `l/N`; the trivial-eigenvalue copy of `H^0` is removed by reduction.
    pub fn weighted_spectrum(&self, k: u32) -> WeightedSpectrum {
        let mut out = WeightedSpectrum::new();
        let Some(&h) = self.h_per_component.get(k as usize) else {
            return out;
        };
        let n = self.components as i64;
        for l in 0..n {
            let mult = if k == 0 && l == 0 {
                h as i64 - 1
            } else {
                h as i64
            };
            out.add_entry((Rational::from(k as i64) + rat(l, n), 2 * k as i64), mult);
        }
        out
    }
}

pub fn nc_milnor(form: &NcLocalForm) -> NcMilnorReport {
    let components = form.multiplicities.iter().fold(0u64, |g, &a| g.gcd(&a));
    let r = form.multiplicities.len() as u32;
    let torus_dim = r - 1;
    let h_per_component = (0..=torus_dim as u64)
        .map(|k| binomial(torus_dim as u64, k))
        .collect();
    NcMilnorReport {
        components,
        torus_dim,
        h_per_component,
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The order of the semisimple monodromy divides `lcm{a_i}`.
pub fn monodromy_order_bound(multiplicities: &[u64]) -> Result<u64> {
    if multiplicities.is_empty() || multiplicities.contains(&0) {
        return Err(Error::invalid("multiplicities must be positive"));
    }
    Ok(multiplicities.iter().fold(1u64, |l, &a| l.lcm(&a)))
}

/// Multiset of positive torsion exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    /// Sorted positive exponents `l_j` (zeros dropped).
    pub exponents: Vec<u64>,
}

/// Torsion exponents of an order-`l` base change from limit eigenvalue data:
/// each class `alpha` in `[0, 1)` of multiplicity `m` contributes `m` copies
/// of `floor(l * alpha)`; zero exponents contribute nothing.
pub fn torsion_exponents(limit_data: &[(Rational, u64)], l: u64) -> Result<TorsionReport> {
    if l == 0 {
        return Err(Error::invalid("base-change order must be >= 1"));
    }
    let mut exponents = Vec::new();
    for &(alpha, mult) in limit_data {
        if alpha < Rational::from(0) || alpha >= Rational::from(1) {
            return Err(Error::invalid("limit eigenvalue exponent outside [0,1)"));
        }
        let e = (alpha * Rational::from(l as i64)).floor().to_integer();
        if e > 0 {
            exponents.extend(std::iter::repeat_n(e as u64, mult as usize));
        }
    }
    exponents.sort_unstable();
    Ok(TorsionReport { exponents })
}

/// Hodge-refined variant for an isolated-singularity spectrum: entries `beta`
/// with `floor(beta) = p` and `beta` non-integral contribute `l * {-beta}`,
/// which must be integral (semistable base change).
pub fn torsion_exponents_refined(spectrum: &Spectrum, level: i64, l: u64) -> Result<TorsionReport> {
    if l == 0 {
        return Err(Error::invalid("base-change order must be >= 1"));
    }
    let mut exponents = Vec::new();
    for (&beta, &mult) in spectrum.iter() {
        if beta.is_integer() || beta.floor().to_integer() != level {
            continue;
        }
        if mult < 0 {
            return Err(Error::invalid("virtual spectrum has no torsion exponents"));
        }
        let e = frac(-beta) * Rational::from(l as i64);
        if !e.is_integer() {
            return Err(Error::inconsistent(format!(
                "l * {{-beta}} = {e} not integral; base change is not semistable"
            )));
        }
        let e = e.to_integer();
        if e > 0 {
            exponents.extend(std::iter::repeat_n(e as u64, mult as usize));
        }
    }
    exponents.sort_unstable();
    Ok(TorsionReport { exponents })
}
