//! Spectra and weighted spectra: integer-multiplicity multisets over `Q`
//! resp. `Q x Z`, with the star product and spectral convolutions.
//!
//! Multiplicities are signed so that virtual differences (the left-hand side
//! of the main spectrum formula before cancellation) are first-class values;
//! `is_effective` is the validator asserting an honest spectrum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, frac, rational_string, Rational};

/// Multiset over `Q` with signed integer multiplicities; zero entries are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spectrum {
    entries: BTreeMap<Rational, i64>,
}

/// Multiset over `Q x Z` (exponent, weight) with signed multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedSpectrum {
    entries: BTreeMap<(Rational, i64), i64>,
}

/// One simultaneous-eigenbasis datum: horizontal exponent `alpha` with weight
/// `w`, plus the vertical-monodromy eigenvalue exponent `beta` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenEntry {
    #[serde(with = "rational_string")]
    pub alpha: Rational,
    #[serde(rename = "w")]
    pub weight: i64,
    #[serde(with = "rational_string")]
    pub beta: Rational,
    #[serde(rename = "mult")]
    pub multiplicity: u64,
}

impl EigenEntry {
    pub fn new(alpha: Rational, weight: i64, beta: Rational, multiplicity: u64) -> Result<Self> {
        if beta < Rational::from(0) || beta >= Rational::from(1) {
            return Err(Error::invalid(format!(
                "vertical eigenvalue exponent {} outside [0,1)",
                format_rational(beta)
            )));
        }
        if multiplicity == 0 {
            return Err(Error::invalid("eigen entry with zero multiplicity"));
        }
        Ok(EigenEntry {
            alpha,
            weight,
            beta,
            multiplicity,
        })
    }
}

/// The pairing index `<alpha|beta>` of the star product.
pub fn pairing_index(alpha: Rational, beta: Rational) -> u8 {
    let a_int = alpha.is_integer();
    let b_int = beta.is_integer();
    if a_int || b_int {
        0
    } else if (alpha + beta).is_integer() {
        2
    } else {
        1
    }
}

/// `(alpha, w) * (beta, omega) = (alpha + beta, w + omega + <alpha|beta>)`.
pub fn star(e1: (Rational, i64), e2: (Rational, i64)) -> (Rational, i64) {
    (e1.0 + e2.0, e1.1 + e2.1 + pairing_index(e1.0, e2.0) as i64)
}

macro_rules! multiset_common {
    ($ty:ty, $key:ty) => {
        impl $ty {
            pub fn new() -> Self {
                Self::default()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            /// Adds `mult` copies of `key`, pruning the entry when it cancels.
            pub fn add_entry(&mut self, key: $key, mult: i64) {
                if mult == 0 {
                    return;
                }
                let slot = self.entries.entry(key).or_insert(0);
                *slot += mult;
                if *slot == 0 {
                    self.entries.remove(&key);
                }
            }

            pub fn multiplicity(&self, key: &$key) -> i64 {
                self.entries.get(key).copied().unwrap_or(0)
            }

            /// Signed total multiplicity.
            pub fn total_multiplicity(&self) -> i64 {
                self.entries.values().sum()
            }

            /// True when every multiplicity is non-negative.
            pub fn is_effective(&self) -> bool {
                self.entries.values().all(|&m| m >= 0)
            }

            pub fn iter(&self) -> impl Iterator<Item = (&$key, &i64)> {
                self.entries.iter()
            }

            /// Keeps only entries selected by the predicate.
            pub fn filtered(&self, mut pred: impl FnMut(&$key, i64) -> bool) -> Self {
                let mut out = Self::new();
                for (k, &m) in self.entries.iter() {
                    if pred(k, m) {
                        out.add_entry(k.clone(), m);
                    }
                }
                out
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, &m) in rhs.entries.iter() {
                    out.add_entry(k.clone(), m);
                }
                out
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, &m) in rhs.entries.iter() {
                    out.add_entry(k.clone(), -m);
                }
                out
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                let mut out = <$ty>::new();
                for (k, &m) in self.entries.iter() {
                    out.add_entry(k.clone(), -m);
                }
                out
            }
        }
    };
}

multiset_common!(Spectrum, Rational);
multiset_common!(WeightedSpectrum, (Rational, i64));

/// Entrywise sum (`sign = +1`) or difference (`sign = -1`).
pub fn combine<T>(a: &T, b: &T, sign: i8) -> T
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    if sign >= 0 {
        a + b
    } else {
        a - b
    }
}

impl Spectrum {
    pub fn from_entries(entries: impl IntoIterator<Item = (Rational, i64)>) -> Self {
        let mut s = Spectrum::new();
        for (a, m) in entries {
            s.add_entry(a, m);
        }
        s
    }

    pub fn singleton(alpha: Rational) -> Self {
        Spectrum::from_entries([(alpha, 1)])
    }

    /// Plain spectral convolution: bilinear extension of exponent addition.
    pub fn convolve(&self, other: &Spectrum) -> Spectrum {
        let mut out = Spectrum::new();
        for (&a, &ma) in self.iter() {
            for (&b, &mb) in other.iter() {
                out.add_entry(a + b, ma * mb);
            }
        }
        out
    }
}

impl WeightedSpectrum {
    pub fn from_entries(entries: impl IntoIterator<Item = ((Rational, i64), i64)>) -> Self {
        let mut s = WeightedSpectrum::new();
        for (k, m) in entries {
            s.add_entry(k, m);
        }
        s
    }

    pub fn singleton(alpha: Rational, w: i64) -> Self {
        WeightedSpectrum::from_entries([((alpha, w), 1)])
    }

    /// Weighted spectral convolution: bilinear extension of the star product.
    pub fn convolve(&self, other: &WeightedSpectrum) -> WeightedSpectrum {
        let mut out = WeightedSpectrum::new();
        for (&ka, &ma) in self.iter() {
            for (&kb, &mb) in other.iter() {
                out.add_entry(star(ka, kb), ma * mb);
            }
        }
        out
    }

    /// Projection `Q x Z -> Q`, summing multiplicities over the weight.
    pub fn forget_weights(&self) -> Spectrum {
        let mut out = Spectrum::new();
        for (&(a, _), &m) in self.iter() {
            out.add_entry(a, m);
        }
        out
    }

    /// Largest `k` such that all entries have `floor(alpha) >= k + 1`, i.e.
    /// the Hodge-filtration level forced by the spectrum. `None` on empty
    /// input (no constraint).
    pub fn f_level(&self) -> Option<i64> {
        self.iter()
            .map(|(&(a, _), _)| a.floor().to_integer())
            .min()
            .map(|min_floor| min_floor - 1)
    }

    /// Entries whose eigenvalue class (fractional part of alpha) is zero.
    pub fn invariant_part(&self) -> WeightedSpectrum {
        self.filtered(|&(a, _), _| a.is_integer())
    }
}

/// One term of a vertical limit pairing: the horizontal datum `(alpha, w)`
/// tied to a single vertical exponent derived from its own `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedTerm {
    pub alpha: Rational,
    pub weight: i64,
    pub vertical: Rational,
    pub multiplicity: i64,
}

/// Expands eigen entries into the paired vertical terms
/// `((alpha_j, w_j), (beta_j + k) / (mu r))` for `k = 0 .. mu r - 1`.
///
/// Each horizontal entry is paired with exponents built from its own `beta`;
/// the pairing is what distinguishes this from a product of independent
/// spectra.
pub fn vertical_spectrum(entries: &[EigenEntry], mu: u64, r: u64) -> Result<Vec<PairedTerm>> {
    if mu == 0 || r == 0 {
        return Err(Error::invalid("vertical spectrum requires mu, r >= 1"));
    }
    let period = (mu * r) as i64;
    let mut out = Vec::with_capacity(entries.len() * period as usize);
    for e in entries {
        if e.beta < Rational::from(0) || e.beta >= Rational::from(1) {
            return Err(Error::invalid("eigen entry beta outside [0,1)"));
        }
        for k in 0..period {
            out.push(PairedTerm {
                alpha: e.alpha,
                weight: e.weight,
                vertical: (e.beta + Rational::from(k)) / Rational::from(period),
                multiplicity: e.multiplicity as i64,
            });
        }
    }
    Ok(out)
}

/// Applies the star product along the pairing and sums the results; this is
/// the convolution of a limit spectrum with its vertical companion.
pub fn convolve_paired(terms: &[PairedTerm]) -> WeightedSpectrum {
    let mut out = WeightedSpectrum::new();
    for t in terms {
        out.add_entry(star((t.alpha, t.weight), (t.vertical, 0)), t.multiplicity);
    }
    out
}

/// The unpaired vertical multiset `sum_j sum_k [((beta_j + k)/(mu r), 0)]`.
pub fn vertical_weighted_spectrum(terms: &[PairedTerm]) -> WeightedSpectrum {
    let mut out = WeightedSpectrum::new();
    for t in terms {
        out.add_entry((t.vertical, 0), t.multiplicity);
    }
    out
}

/// The weighted spectrum carried by a list of eigen entries, forgetting betas.
pub fn horizontal_weighted_spectrum(entries: &[EigenEntry]) -> WeightedSpectrum {
    let mut out = WeightedSpectrum::new();
    for e in entries {
        out.add_entry((e.alpha, e.weight), e.multiplicity as i64);
    }
    out
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(&a, &m)| {
                if m == 1 {
                    format!("[{}]", format_rational(a))
                } else {
                    format!("{}[{}]", m, format_rational(a))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for WeightedSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(&(a, w), &m)| {
                if m == 1 {
                    format!("[({},{})]", format_rational(a), w)
                } else {
                    format!("{}[({},{})]", m, format_rational(a), w)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct PlainRecord {
    #[serde(with = "rational_string")]
    alpha: Rational,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct WeightedRecord {
    #[serde(with = "rational_string")]
    alpha: Rational,
    w: i64,
    mult: i64,
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<PlainRecord> = self
            .iter()
            .map(|(&alpha, &mult)| PlainRecord { alpha, mult })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<PlainRecord>::deserialize(d)?;
        Ok(Spectrum::from_entries(
            records.into_iter().map(|r| (r.alpha, r.mult)),
        ))
    }
}

impl Serialize for WeightedSpectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<WeightedRecord> = self
            .iter()
            .map(|(&(alpha, w), &mult)| WeightedRecord { alpha, w, mult })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedSpectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<WeightedRecord>::deserialize(d)?;
        Ok(WeightedSpectrum::from_entries(
            records.into_iter().map(|r| ((r.alpha, r.w), r.mult)),
        ))
    }
}

/// Eigenvalue coherence: the eigenvalue class of every entry is the
/// fractional part of its exponent (by construction, exposed for callers
/// that track eigenvalues separately).
///
/// Exponents are stored unsigned; whether a consumer reads the class as
/// `exp(2 pi i alpha)` or its inverse is that consumer's stated convention
/// (limit-lattice bookkeeping uses the inverse), and nothing here unifies
/// the two silently.
pub fn eigenvalue_class(alpha: Rational) -> Rational {
    frac(alpha)
}
