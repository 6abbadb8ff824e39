//! Sparse polynomials in the seven projective coordinates `Z_0..Z_6` with
//! exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::quadext::QuadExt;

pub const VARS: usize = 7;

/// Exponent vector, one slot per coordinate.
pub type Mono = [u8; VARS];

/// Sparse polynomial over `Q`; zero coefficients are pruned.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparsePoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl SparsePoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::new();
        p.add_term([0; VARS], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0u8; VARS];
        m[i] = 1;
        let mut p = Self::new();
        p.add_term(m, BigRational::from_integer(1.into()));
        p
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> SparsePoly {
        let mut out = SparsePoly::new();
        for (m, c) in self.terms() {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn mul(&self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::new();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                let mut m = *ma;
                for i in 0..VARS {
                    m[i] += mb[i];
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn diff(&self, i: usize) -> SparsePoly {
        let mut out = SparsePoly::new();
        for (m, c) in self.terms() {
            if m[i] == 0 {
                continue;
            }
            let mut dm = *m;
            dm[i] -= 1;
            out.add_term(dm, c * BigRational::from_integer((m[i] as i64).into()));
        }
        out
    }

    /// Substitutes zero for the listed variables.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> SparsePoly {
        let mut out = SparsePoly::new();
        'terms: for (m, c) in self.terms() {
            for &v in vars {
                if m[v] > 0 {
                    continue 'terms;
                }
            }
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Evaluates at a point with coordinates in `Q(sqrt(d))`.
    pub fn eval_quadext(&self, point: &[QuadExt; VARS]) -> QuadExt {
        let d = point[0].d.clone();
        let mut acc = QuadExt::rational(BigRational::zero(), d.clone());
        for (m, c) in self.terms() {
            let mut t = QuadExt::rational(c.clone(), d.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// True iff `other` divides into `self` as a scalar multiple
    /// (`self = lambda * other`); returns the scalar.
    pub fn scalar_multiple_of(&self, other: &SparsePoly) -> Option<BigRational> {
        if other.is_zero() {
            return self.is_zero().then(BigRational::zero);
        }
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let (m0, c0) = other.terms().next().unwrap();
        let lambda = self.coeff(m0) / c0;
        (self == &other.scale(&lambda)).then_some(lambda)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*Z{i}")?,
                    _ => write!(f, "*Z{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Sum of a set of variables, e.g. `Z_0 + z_1 + z_2`.
pub fn var_sum(vars: &[usize]) -> SparsePoly {
    let mut p = SparsePoly::new();
    for &v in vars {
        p = p.add(&SparsePoly::var(v));
    }
    p
}

/// The 28 degree-two monomials in lexicographic order.
pub fn quadratic_monomials() -> Vec<Mono> {
    let mut out = Vec::with_capacity(28);
    for i in 0..VARS {
        for j in i..VARS {
            let mut m = [0u8; VARS];
            m[i] += 1;
            m[j] += 1;
            out.push(m);
        }
    }
    out
}

/// Coordinates of a quadric in the 28-monomial basis.
pub fn quadric_to_vec(p: &SparsePoly, basis: &[Mono]) -> Vec<BigRational> {
    debug_assert!(p.total_degree() <= 2);
    basis.iter().map(|m| p.coeff(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn ring_operations() {
        let z0 = SparsePoly::var(0);
        let z1 = SparsePoly::var(1);
        let p = z0.add(&z1).mul(&z0.sub(&z1));
        // (z0 + z1)(z0 - z1) = z0^2 - z1^2
        let mut expected = SparsePoly::new();
        expected.add_term([2, 0, 0, 0, 0, 0, 0], q(1));
        expected.add_term([0, 2, 0, 0, 0, 0, 0], q(-1));
        assert_eq!(p, expected);
        assert_eq!(p.diff(0), z0.scale(&q(2)));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn restriction_and_scalar_test() {
        let z0 = SparsePoly::var(0);
        let z4 = SparsePoly::var(4);
        let p = z0.mul(&z4).add(&z4.mul(&z4).scale(&q(3)));
        let r = p.restrict_to_zero(&[0]);
        assert_eq!(r, z4.mul(&z4).scale(&q(3)));
        assert_eq!(r.scalar_multiple_of(&z4.mul(&z4)), Some(q(3)));
        assert_eq!(r.scalar_multiple_of(&z0), None);
    }

    #[test]
    fn quadratic_basis_has_28_monomials() {
        let basis = quadratic_monomials();
        assert_eq!(basis.len(), 28);
        let z3sq = SparsePoly::var(3).mul(&SparsePoly::var(3));
        let v = quadric_to_vec(&z3sq, &basis);
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 1);
    }
}
