//! Hodge-Deligne diagrams: multiplicities over `(p, q, eigenvalue class)`,
//! optionally annotated with N-string arrows, plus the structural validators
//! (p/q symmetry, support ranges for du Bois and rational singular fibers).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, frac, rational_string, Rational};
use crate::spectrum::WeightedSpectrum;

/// A diagram position: Deligne bidegree plus eigenvalue class in `[0, 1)`.
pub type Position = (i64, i64, Rational);

/// An N-arrow from `(p, q)` down to `(p - k, q - k)` within one eigenvalue
/// class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: (i64, i64),
    pub to: (i64, i64),
    #[serde(with = "rational_string")]
    pub eig: Rational,
}

/// Non-negative multiplicities over `(p, q, eig)` with optional N-arrows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeDeligneDiagram {
    entries: BTreeMap<Position, u64>,
    arrows: Vec<Arrow>,
}

impl HodgeDeligneDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Position, u64)>) -> Self {
        let mut d = Self::new();
        for ((p, q, e), m) in entries {
            d.add(p, q, e, m);
        }
        d
    }

    pub fn add(&mut self, p: i64, q: i64, eig: Rational, mult: u64) {
        if mult == 0 {
            return;
        }
        debug_assert!(eig >= Rational::from(0) && eig < Rational::from(1));
        *self.entries.entry((p, q, frac(eig))).or_insert(0) += mult;
    }

    /// Records an N-string link; the target must sit `k >= 1` steps down the
    /// diagonal in the same eigenvalue class.
    pub fn add_arrow(&mut self, from: (i64, i64), to: (i64, i64), eig: Rational) -> Result<()> {
        let k = from.0 - to.0;
        if k < 1 || from.1 - to.1 != k {
            return Err(Error::invalid(format!(
                "N-arrow ({},{})->({},{}) is not a diagonal drop",
                from.0, from.1, to.0, to.1
            )));
        }
        self.arrows.push(Arrow {
            from,
            to,
            eig: frac(eig),
        });
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, p: i64, q: i64, eig: Rational) -> u64 {
        self.entries.get(&(p, q, frac(eig))).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Position, &u64)> {
        self.entries.iter()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Rank of `Gr_F^p`: total multiplicity in column `p`.
    pub fn grade_f(&self, p: i64) -> u64 {
        self.iter()
            .filter(|((pp, _, _), _)| *pp == p)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Entrywise sum, concatenating arrows.
    pub fn merge(&self, other: &HodgeDeligneDiagram) -> HodgeDeligneDiagram {
        let mut out = self.clone();
        for (&(p, q, e), &m) in other.iter() {
            out.add(p, q, e, m);
        }
        out.arrows.extend(other.arrows.iter().cloned());
        out
    }

    /// True iff `mult(p, q, eig) == mult(q, p, -eig mod 1)` everywhere.
    pub fn check_pq_symmetry(&self) -> bool {
        self.iter().all(|(&(p, q, e), &m)| {
            let conj = frac(Rational::from(0) - e);
            self.multiplicity(q, p, conj) == m
        })
    }
}

/// Singularity class of the central fiber for support-range checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityClass {
    DuBois,
    Rational,
}

/// Which monodromy part of the vanishing cohomology is being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonodromyPart {
    /// Unipotent (eigenvalue-1) part.
    U,
    /// Non-unipotent part.
    N,
}

/// The `[lo, hi]^2` support square for vanishing cohomology `H^k` of an
/// `n`-fold, by singularity class and monodromy part.
pub fn support_range(
    k: i64,
    n: i64,
    class: SingularityClass,
    part: MonodromyPart,
) -> Result<(i64, i64)> {
    if n < 1 || k < 0 || k > 2 * n {
        return Err(Error::invalid(format!("invalid degree k={k} for n={n}")));
    }
    Ok(match (class, part) {
        (SingularityClass::DuBois, MonodromyPart::U) => (1.max(k - n + 1), k.min(n)),
        (SingularityClass::Rational, MonodromyPart::U) => (2.max(k - n + 2), (k - 1).min(n - 1)),
        (_, MonodromyPart::N) => (1.max(k - n + 1), (k - 1).min(n - 1)),
    })
}

/// True iff all support of `d` lies in the square range for `(k, n, class,
/// part)`.
pub fn range_check(
    d: &HodgeDeligneDiagram,
    k: i64,
    n: i64,
    class: SingularityClass,
    part: MonodromyPart,
) -> Result<bool> {
    let (lo, hi) = support_range(k, n, class, part)?;
    Ok(d.iter()
        .all(|(&(p, q, _), _)| p >= lo && p <= hi && q >= lo && q <= hi))
}

/// Converts a weighted spectrum into its diagram:
/// `[(alpha, w)] -> (floor(alpha), w - floor(alpha), alpha mod 1)`.
///
/// Fails on virtual (negative) multiplicities, which have no diagram.
pub fn to_hodge_deligne(s: &WeightedSpectrum) -> Result<HodgeDeligneDiagram> {
    let mut d = HodgeDeligneDiagram::new();
    for (&(alpha, w), &m) in s.iter() {
        if m < 0 {
            return Err(Error::inconsistent(format!(
                "entry ({}, {w}) has negative multiplicity {m}",
                format_rational(alpha)
            )));
        }
        let p = alpha.floor().to_integer();
        d.add(p, w - p, frac(alpha), m as u64);
    }
    Ok(d)
}

/// Inverse of `to_hodge_deligne`: the column `p` fixes `floor(alpha)`, so
/// `alpha = p + eig` and `w = p + q`.
pub fn from_hodge_deligne(d: &HodgeDeligneDiagram) -> WeightedSpectrum {
    let mut s = WeightedSpectrum::new();
    for (&(p, q, e), &m) in d.iter() {
        s.add_entry((Rational::from(p) + e, p + q), m as i64);
    }
    s
}

impl fmt::Display for HodgeDeligneDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_ascii(self))
    }
}

/// ASCII rendering in the style of the axis figures: p horizontal, q
/// vertical, multiplicity labels, non-trivial eigenvalue classes flagged in
/// parentheses.
pub fn render_ascii(d: &HodgeDeligneDiagram) -> String {
    if d.is_empty() {
        return "  (empty diagram)\n".to_string();
    }
    let pmin = d.iter().map(|(&(p, _, _), _)| p).min().unwrap().min(0);
    let pmax = d.iter().map(|(&(p, _, _), _)| p).max().unwrap().max(0);
    let qmin = d.iter().map(|(&(_, q, _), _)| q).min().unwrap().min(0);
    let qmax = d.iter().map(|(&(_, q, _), _)| q).max().unwrap().max(0);

    // cell text per (p, q): "m" for invariants, "m(e)" per eigenvalue class
    let mut cells: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
    for (&(p, q, e), &m) in d.iter() {
        let txt = if e == Rational::from(0) {
            format!("{m}")
        } else {
            format!("{m}({})", format_rational(e))
        };
        cells.entry((p, q)).or_default().push(txt);
    }
    let width = cells
        .values()
        .map(|v| v.join(",").len())
        .chain([1])
        .max()
        .unwrap()
        .max(pmax.to_string().len())
        + 1;

    let mut out = String::new();
    for q in (qmin..=qmax).rev() {
        out.push_str(&format!("{q:>3} |"));
        for p in pmin..=pmax {
            let txt = cells
                .get(&(p, q))
                .map(|v| v.join(","))
                .unwrap_or_else(|| ".".into());
            out.push_str(&format!("{txt:>width$}"));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "    +{}\n",
        "-".repeat(((pmax - pmin + 1) as usize) * width)
    ));
    out.push_str("     ");
    for p in pmin..=pmax {
        out.push_str(&format!("{p:>width$}"));
    }
    out.push_str("  (p ->, q ^)\n");
    for a in d.arrows() {
        out.push_str(&format!(
            "    N: ({},{}) -> ({},{})  eig {}\n",
            a.from.0,
            a.from.1,
            a.to.0,
            a.to.1,
            format_rational(a.eig)
        ));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct DiagramRecord {
    p: i64,
    q: i64,
    #[serde(with = "rational_string")]
    eig: Rational,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct DiagramWithArrows {
    entries: Vec<DiagramRecord>,
    arrows: Vec<Arrow>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DiagramRepr {
    Plain(Vec<DiagramRecord>),
    WithArrows(DiagramWithArrows),
}

// A diagram is the stated array of records; the object form appears only
// when N-arrows annotate it.
impl Serialize for HodgeDeligneDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<DiagramRecord> = self
            .iter()
            .map(|(&(p, q, eig), &mult)| DiagramRecord { p, q, eig, mult })
            .collect();
        if self.arrows.is_empty() {
            entries.serialize(s)
        } else {
            DiagramWithArrows {
                entries,
                arrows: self.arrows.clone(),
            }
            .serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for HodgeDeligneDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (entries, arrows) = match DiagramRepr::deserialize(d)? {
            DiagramRepr::Plain(entries) => (entries, Vec::new()),
            DiagramRepr::WithArrows(w) => (w.entries, w.arrows),
        };
        let mut out = HodgeDeligneDiagram::from_entries(
            entries.into_iter().map(|r| ((r.p, r.q, r.eig), r.mult)),
        );
        for a in arrows {
            out.add_arrow(a.from, a.to, a.eig)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::spectrum::WeightedSpectrum;

    fn ws(entries: &[(i64, i64, i64, i64)]) -> WeightedSpectrum {
        WeightedSpectrum::from_entries(entries.iter().map(|&(n, d, w, m)| ((rat(n, d), w), m)))
    }

    #[test]
    fn conversion_examples() {
        let d = to_hodge_deligne(&ws(&[(3, 2, 2, 1)])).unwrap();
        assert_eq!(d.multiplicity(1, 1, rat(1, 2)), 1);
        let d = to_hodge_deligne(&ws(&[(1, 1, 2, 1)])).unwrap();
        assert_eq!(d.multiplicity(1, 1, rat(0, 1)), 1);
        let d = to_hodge_deligne(&ws(&[(37, 18, 2, 1)])).unwrap();
        assert_eq!(d.multiplicity(2, 0, rat(1, 18)), 1);
    }

    #[test]
    fn conversion_rejects_virtual_spectra() {
        let s = ws(&[(1, 2, 0, -1)]);
        assert!(to_hodge_deligne(&s).is_err());
    }

    #[test]
    fn round_trip_preserves_everything() {
        let s = ws(&[(3, 2, 2, 4), (1, 1, 2, 2), (37, 18, 2, 1), (17, 18, 2, 1)]);
        let d = to_hodge_deligne(&s).unwrap();
        assert_eq!(d.total_multiplicity(), 8);
        assert_eq!(from_hodge_deligne(&d), s);
    }

    #[test]
    fn pq_symmetry_examples() {
        // all entries on (1,1) with conjugate eigenvalue pairs
        let mut d = HodgeDeligneDiagram::new();
        d.add(1, 1, rat(1, 5), 2);
        d.add(1, 1, rat(4, 5), 2);
        d.add(1, 1, rat(0, 1), 1);
        assert!(d.check_pq_symmetry());
        let mut bad = HodgeDeligneDiagram::new();
        bad.add(2, 0, rat(0, 1), 1);
        assert!(!bad.check_pq_symmetry());
        // conjugate-eigenvalue mirror: (2,0,1/18) pairs with (0,2,17/18)
        let d = to_hodge_deligne(&ws(&[(37, 18, 2, 1), (17, 18, 2, 1)])).unwrap();
        assert!(d.check_pq_symmetry());
    }

    #[test]
    fn range_check_examples() {
        // double-box vanishing cohomology entries (2,3),(3,2),(3,3) in [2,4]^2
        let mut d = HodgeDeligneDiagram::new();
        d.add(2, 3, rat(1, 2), 10);
        d.add(3, 2, rat(1, 2), 10);
        d.add(3, 3, rat(0, 1), 12);
        assert!(range_check(&d, 5, 5, SingularityClass::Rational, MonodromyPart::U).unwrap());

        let mut z = HodgeDeligneDiagram::new();
        z.add(0, 0, rat(0, 1), 1);
        assert!(!range_check(&z, 2, 2, SingularityClass::DuBois, MonodromyPart::U).unwrap());

        let mut k = HodgeDeligneDiagram::new();
        k.add(1, 1, rat(0, 1), 1);
        k.add(2, 2, rat(0, 1), 1);
        assert!(range_check(&k, 2, 2, SingularityClass::DuBois, MonodromyPart::U).unwrap());

        assert!(range_check(&d, 5, 0, SingularityClass::DuBois, MonodromyPart::U).is_err());
        assert!(range_check(&d, -1, 5, SingularityClass::DuBois, MonodromyPart::U).is_err());
    }

    #[test]
    fn arrows_validate_diagonal_drop() {
        let mut d = HodgeDeligneDiagram::new();
        d.add(2, 2, rat(0, 1), 1);
        d.add(1, 1, rat(0, 1), 1);
        assert!(d.add_arrow((2, 2), (1, 1), rat(0, 1)).is_ok());
        assert!(d.add_arrow((2, 2), (2, 1), rat(0, 1)).is_err());
        assert!(d.add_arrow((1, 1), (2, 2), rat(0, 1)).is_err());
    }

    #[test]
    fn serde_forms() {
        let mut d = HodgeDeligneDiagram::new();
        d.add(1, 1, rat(1, 2), 4);
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(js, r#"[{"p":1,"q":1,"eig":"1/2","mult":4}]"#);
        assert_eq!(serde_json::from_str::<HodgeDeligneDiagram>(&js).unwrap(), d);

        d.add(2, 2, rat(0, 1), 1);
        d.add(1, 1, rat(0, 1), 1);
        d.add_arrow((2, 2), (1, 1), rat(0, 1)).unwrap();
        let js = serde_json::to_string(&d).unwrap();
        assert!(js.starts_with(r#"{"entries""#));
        assert_eq!(serde_json::from_str::<HodgeDeligneDiagram>(&js).unwrap(), d);
    }

    #[test]
    fn ascii_render_mentions_eigenvalues() {
        let mut d = HodgeDeligneDiagram::new();
        d.add(1, 1, rat(1, 2), 4);
        d.add(2, 1, rat(0, 1), 1);
        let txt = render_ascii(&d);
        assert!(txt.contains("4(1/2)"));
        assert!(txt.contains("(p ->"));
    }
}
