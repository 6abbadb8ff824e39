//! Arithmetic in the quadratic extension `Q(sqrt(d))`, represented as pairs
//! `a + b sqrt(d)` with exact rational parts. Only ring operations are
//! needed; ranks over the extension are taken via the regular-representation
//! embedding into 2x2 rational blocks.

use num_rational::BigRational;
use num_traits::Zero;

/// `a + b * sqrt(d)`; all elements of one computation share the same `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigRational,
}

impl QuadExt {
    pub fn rational(a: BigRational, d: BigRational) -> Self {
        QuadExt {
            a,
            b: BigRational::zero(),
            d,
        }
    }

    pub fn sqrt_part(d: BigRational) -> Self {
        QuadExt {
            a: BigRational::zero(),
            b: BigRational::from_integer(1.into()),
            d,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.d, rhs.d);
        QuadExt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.d, rhs.d);
        QuadExt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.d, rhs.d);
        QuadExt {
            a: &self.a * &rhs.a + &(&self.b * &rhs.b) * &self.d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadExt {
            a: &self.a * k,
            b: &self.b * k,
            d: self.d.clone(),
        }
    }
}

/// Rank of a matrix over `Q(sqrt(d))` (given as rows), computed by embedding
/// each entry as the 2x2 rational block `[[a, d b], [b, a]]`; the rational
/// rank is exactly twice the extension rank.
pub fn quadext_rank(rows: &[Vec<QuadExt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut big = Vec::with_capacity(rows.len() * 2);
    for row in rows {
        let mut top = Vec::with_capacity(cols * 2);
        let mut bot = Vec::with_capacity(cols * 2);
        for e in row {
            top.push(e.a.clone());
            top.push(&e.d * &e.b);
            bot.push(e.b.clone());
            bot.push(e.a.clone());
        }
        big.push(top);
        big.push(bot);
    }
    let r = crate::linalg::RatMatrix::from_rows(big).rank();
    debug_assert_eq!(r % 2, 0);
    r / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn field_identities() {
        let d = q(5, 1);
        let x = QuadExt {
            a: q(1, 2),
            b: q(3, 1),
            d: d.clone(),
        };
        let y = QuadExt {
            a: q(-2, 1),
            b: q(1, 3),
            d: d.clone(),
        };
        let lhs = x.mul(&y);
        // (a1 + b1 s)(a2 + b2 s) with s^2 = 5
        assert_eq!(lhs.a, q(1, 2) * q(-2, 1) + q(3, 1) * q(1, 3) * q(5, 1));
        assert_eq!(lhs.b, q(1, 2) * q(1, 3) + q(3, 1) * q(-2, 1));
        // norm via conjugate is rational
        let norm = x.mul(&x.conj());
        assert!(norm.b.is_zero());
    }

    #[test]
    fn rank_over_extension() {
        let d = q(2, 1);
        let s = QuadExt::sqrt_part(d.clone());
        let one = QuadExt::rational(q(1, 1), d.clone());
        // rows (1, s) and (s, 2): second = s * first, rank 1
        let two = QuadExt::rational(q(2, 1), d.clone());
        let rows = vec![vec![one.clone(), s.clone()], vec![s.clone(), two]];
        assert_eq!(quadext_rank(&rows), 1);
        // (1, 0), (0, 1): rank 2
        let zero = QuadExt::rational(q(0, 1), d.clone());
        let rows = vec![vec![one.clone(), zero.clone()], vec![zero, one]];
        assert_eq!(quadext_rank(&rows), 2);
    }
}
