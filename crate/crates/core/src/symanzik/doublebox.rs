//! The double-box graph hypersurface: second graph polynomial, singular
//! locus, evaluation-map ranks and the resulting Hodge/monodromy summary.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::kinematics::{sample_kinematics, KinematicCase, KinematicData};
use super::poly::{quadratic_monomials, quadric_to_vec, var_sum, Mono, SparsePoly, VARS};
use super::quadext::{quadext_rank, QuadExt};
use crate::assembler::{solve_scenario, DegenerationScenario, FiberHodge, S0Point, StratumSpec};
use crate::curves::PunctureKind;
use crate::diagram::{from_hodge_deligne, HodgeDeligneDiagram};
use crate::error::{Error, Result};
use crate::linalg::{intersect_spans, span_dim, sum_dim, RatMatrix};
use crate::rational::{rat, rational_sqrt};
use crate::spectrum::WeightedSpectrum;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The graph polynomials of the double box.
#[derive(Clone, Debug)]
pub struct SymanzikSystem {
    /// Second graph polynomial (the cubic).
    pub f: SparsePoly,
    /// First graph polynomial.
    pub u: SparsePoly,
    /// Quadric cutting the conic in `{Z_4, Z_5, Z_6}`.
    pub q: SparsePoly,
    /// Quadric cutting the conic in `{Z_0, Z_1, Z_2}`.
    pub q_prime: SparsePoly,
    /// The mixed part multiplying `Z_3`.
    pub p: SparsePoly,
}

/// Builds the exact graph polynomials from sampled kinematics.
pub fn build_symanzik(kin: &KinematicData) -> SymanzikSystem {
    let z = |i: usize| SparsePoly::var(i);
    let z012 = var_sum(&[0, 1, 2]);
    let z456 = var_sum(&[4, 5, 6]);
    let z0123 = var_sum(&[0, 1, 2, 3]);
    let z3456 = var_sum(&[3, 4, 5, 6]);
    let z012456 = var_sum(&[0, 1, 2, 4, 5, 6]);

    let u = z012.mul(&z456).add(&z(3).mul(&z012456));

    let mass_form = |range: std::ops::RangeInclusive<usize>, kin: &KinematicData| {
        let mut p = SparsePoly::new();
        for i in range {
            p = p.add(&z(i).scale(&kin.mass_sq(i)));
        }
        p
    };

    let q_prime = z(0)
        .mul(&z(1))
        .scale(&big(kin.dot(2, 2)))
        .add(&z(0).mul(&z(2)).scale(&big(kin.dot_sum2(2, 3))))
        .add(&z(1).mul(&z(2)).scale(&big(kin.dot(3, 3))))
        .add(&z012.mul(&mass_form(0..=2, kin)));
    let q = z(4)
        .mul(&z(5))
        .scale(&big(kin.dot(6, 6)))
        .add(&z(4).mul(&z(6)).scale(&big(kin.dot_sum2(5, 6))))
        .add(&z(5).mul(&z(6)).scale(&big(kin.dot(5, 5))))
        .add(&z456.mul(&mass_form(4..=6, kin)));

    let mut p = SparsePoly::new();
    for i in 0..=2usize {
        for j in 4..=6usize {
            // (sum_{k=i+2}^{10-j} p_k)^2
            let lo = i + 2;
            let hi = 10 - j;
            let mut sq = 0i64;
            for k1 in lo..=hi {
                for k2 in lo..=hi {
                    sq += kin.dot(k1, k2);
                }
            }
            p = p.add(&z(i).mul(&z(j)).scale(&big(sq)));
        }
    }
    p = p
        .add(&z012.mul(&mass_form(4..=6, kin)))
        .add(&z456.mul(&mass_form(0..=2, kin)))
        .add(&u.scale(&kin.mass_sq(3)));

    let f = z0123.mul(&q).add(&z3456.mul(&q_prime)).add(&z(3).mul(&p));
    SymanzikSystem {
        f,
        u,
        q,
        q_prime,
        p,
    }
}

/// One verified extra singular point (present only in the four-dimensional
/// regime).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub jacobian_vanishes: bool,
    pub first_polynomial_vanishes: bool,
    pub z3_nonzero: bool,
    /// Hessian rank 6 at the point: an ordinary double point.
    pub ordinary_double_point: bool,
}

/// Singular-locus verification summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocusReport {
    /// All partials restrict to multiples of the defining quadric on each
    /// conic (exact ideal membership).
    pub conic_restriction_ok: bool,
    /// Both conics are smooth (their symmetric matrices have full rank).
    pub conics_smooth: bool,
    /// Hessian rank at a generic conic point (corank-1 transverse quadric
    /// expects 5).
    pub hessian_rank_at_generic_point: usize,
    /// Degree count of the degenerate quadric-bundle fibers per conic:
    /// conic (degree 2) against the discriminant cubic.
    pub pinch_count_per_curve: u64,
    /// Extra nodes off the conics, verified exactly; empty unless the
    /// momenta satisfy the four-dimensional relation.
    pub nodes: Vec<NodeReport>,
}

/// Structural identities verified alongside the rank computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvChecks {
    /// `sum Z_i dF/dZ_i = 3F`.
    pub euler_identity: bool,
    /// The distinguished Jacobian element has no mixed-block terms.
    pub delta_f_cross_term_free: bool,
    /// `d'F - U` lies in `(3456)^2 + <Z_3^2>`.
    pub g_membership: bool,
    /// `dF - U` lies in `(0123)^2 + <Z_3^2>`.
    pub g_prime_membership: bool,
    /// `(0123)^2` meets `(3456)^2` exactly in `<Z_3^2>`.
    pub pairwise_intersection_is_z3sq: bool,
    /// `U` lies in the kernel of the evaluation map.
    pub u_in_kernel: bool,
    /// `U` vanishes at every extra node.
    pub u_vanishes_at_nodes: bool,
    /// `Z_3^2` does not vanish at the extra nodes.
    pub z3sq_nonzero_at_nodes: bool,
}

/// Dimensions of the evaluation-map computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvReport {
    pub dim_s2: usize,
    pub dim_0123sq: usize,
    pub dim_3456sq: usize,
    pub dim_jf: usize,
    pub dim_0123_plus_jf: usize,
    pub dim_3456_plus_jf: usize,
    pub dim_pairwise_intersection: usize,
    pub dim_ker_ev: usize,
    pub codomain_dim: usize,
    /// Corank of the evaluation map; the connecting rank of the sequence.
    pub a: usize,
    pub checks: EvChecks,
}

#[derive(Clone, Debug)]
struct NodeData {
    coords: [QuadExt; VARS],
    disc: BigRational,
}

/// A fully built double-box instance.
pub struct DoubleBox {
    pub kin: KinematicData,
    pub sys: SymanzikSystem,
    nodes: Vec<NodeData>,
}

fn degenerate(msg: &str) -> Error {
    Error::precondition(format!("degenerate sample: {msg}"))
}

impl DoubleBox {
    pub fn new(kin: KinematicData) -> Result<Self> {
        let sys = build_symanzik(&kin);
        let nodes = match kin.case {
            KinematicCase::DGt4 => Vec::new(),
            KinematicCase::DEq4 => compute_nodes(&kin, &sys)?,
        };
        Ok(DoubleBox { kin, sys, nodes })
    }

    pub fn verify_singular_locus(&self) -> Result<SingularLocusReport> {
        let partials: Vec<SparsePoly> = (0..VARS).map(|i| self.sys.f.diff(i)).collect();
        let mut conic_restriction_ok = true;
        for (dead, quadric) in [
            (&[0usize, 1, 2, 3][..], &self.sys.q),
            (&[3usize, 4, 5, 6][..], &self.sys.q_prime),
        ] {
            for dfi in &partials {
                let r = dfi.restrict_to_zero(dead);
                if r.scalar_multiple_of(quadric).is_none() {
                    conic_restriction_ok = false;
                }
            }
        }

        let conics_smooth = conic_rank(&self.sys.q, [4, 5, 6]) == 3
            && conic_rank(&self.sys.q_prime, [0, 1, 2]) == 3;
        if !conics_smooth {
            return Err(degenerate("a defining conic is singular"));
        }

        let point = conic_point(&self.sys.q)?;
        let hessian_rank_at_generic_point = hessian_rank_at(&self.sys.f, &point);

        let mut nodes = Vec::new();
        for node in &self.nodes {
            let jac = partials
                .iter()
                .all(|df| df.eval_quadext(&node.coords).is_zero());
            let u0 = self.sys.u.eval_quadext(&node.coords).is_zero();
            let z3 = !node.coords[3].is_zero();
            let hess = hessian_rank_at(&self.sys.f, &node.coords);
            nodes.push(NodeReport {
                jacobian_vanishes: jac,
                first_polynomial_vanishes: u0,
                z3_nonzero: z3,
                ordinary_double_point: hess == 6,
            });
        }
        if nodes.iter().any(|n| !n.jacobian_vanishes) {
            return Err(degenerate("node candidate fails the Jacobian check"));
        }

        Ok(SingularLocusReport {
            conic_restriction_ok,
            conics_smooth,
            hessian_rank_at_generic_point,
            pinch_count_per_curve: 6,
            nodes,
        })
    }

    pub fn evaluation_map_rank(&self) -> Result<EvReport> {
        let basis = quadratic_monomials();
        let vec_of = |p: &SparsePoly| quadric_to_vec(p, &basis);

        let mut a0123: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..=3usize {
            for j in i..=3 {
                a0123.push(vec_of(&SparsePoly::var(i).mul(&SparsePoly::var(j))));
            }
        }
        let mut b3456: Vec<Vec<BigRational>> = Vec::new();
        for i in 3..=6usize {
            for j in i..=6 {
                b3456.push(vec_of(&SparsePoly::var(i).mul(&SparsePoly::var(j))));
            }
        }
        let partials: Vec<SparsePoly> = (0..VARS).map(|i| self.sys.f.diff(i)).collect();
        let jf: Vec<Vec<BigRational>> = partials.iter().map(vec_of).collect();

        let dim_0123sq = span_dim(&a0123);
        let dim_3456sq = span_dim(&b3456);
        let dim_jf = span_dim(&jf);
        if dim_jf != VARS {
            return Err(degenerate("the Jacobian span dropped rank"));
        }

        let pairwise = intersect_spans(&a0123, &b3456);
        let z3sq = vec_of(&SparsePoly::var(3).mul(&SparsePoly::var(3)));
        let pairwise_is_z3sq =
            pairwise.len() == 1 && span_dim(&[pairwise[0].clone(), z3sq.clone()]) == 1;

        let mut aj = a0123.clone();
        aj.extend(jf.iter().cloned());
        let mut bj = b3456.clone();
        bj.extend(jf.iter().cloned());
        let dim_aj = sum_dim(&a0123, &jf);
        let dim_bj = sum_dim(&b3456, &jf);
        let inter = intersect_spans(&aj, &bj);

        // Euler identity as a polynomial self-test of the construction
        let mut euler = SparsePoly::new();
        for (i, df) in partials.iter().enumerate() {
            euler = euler.add(&SparsePoly::var(i).mul(df));
        }
        let euler_identity = euler == self.sys.f.scale(&big(3));

        // the distinguished cross-term-free Jacobian element
        let c012 = solve_gradient_combination(&self.sys.q_prime, [0, 1, 2])?;
        let c456 = solve_gradient_combination(&self.sys.q, [4, 5, 6])?;
        let mut d_prime_f = SparsePoly::new();
        for (k, i) in [0usize, 1, 2].into_iter().enumerate() {
            d_prime_f = d_prime_f.add(&partials[i].scale(&c012[k]));
        }
        let mut d_f = SparsePoly::new();
        for (k, i) in [4usize, 5, 6].into_iter().enumerate() {
            d_f = d_f.add(&partials[i].scale(&c456[k]));
        }
        let delta_f = d_prime_f.sub(&d_f);
        let delta_f_cross_term_free = delta_f.terms().all(|(m, _)| !is_cross_term(m));

        let member = |space: &[Vec<BigRational>], v: &Vec<BigRational>| -> bool {
            let mut all = space.to_vec();
            all.push(v.clone());
            span_dim(&all) == span_dim(space)
        };
        let mut b_plus_z3 = b3456.clone();
        b_plus_z3.push(z3sq.clone());
        let mut a_plus_z3 = a0123.clone();
        a_plus_z3.push(z3sq.clone());
        let g_membership = member(&b_plus_z3, &vec_of(&d_prime_f.sub(&self.sys.u)));
        let g_prime_membership = member(&a_plus_z3, &vec_of(&d_f.sub(&self.sys.u)));
        let u_vec = vec_of(&self.sys.u);
        let u_in_kernel = member(&inter, &u_vec);

        // node-evaluation conditions cut the kernel further in the
        // four-dimensional regime
        let (dim_ker_ev, codomain_dim, u_nodes, z3_nodes) = if self.nodes.is_empty() {
            ((inter.len()), (28 - dim_aj) + (28 - dim_bj), true, true)
        } else {
            let rows = node_condition_rows(&self.nodes, &basis);
            let cond: Vec<Vec<BigRational>> = rows;
            // rank of the conditions restricted to the kernel span
            let mut mat = Vec::new();
            for v in &inter {
                let mut row = Vec::new();
                for c in &cond {
                    row.push(v.iter().zip(c.iter()).map(|(x, y)| x * y).sum());
                }
                mat.push(row);
            }
            let rank = if mat.is_empty() {
                0
            } else {
                RatMatrix::from_rows(mat).rank()
            };
            let eval_zero = |v: &Vec<BigRational>| {
                cond.iter().all(|c| {
                    v.iter()
                        .zip(c.iter())
                        .map(|(x, y)| x * y)
                        .sum::<BigRational>()
                        .is_zero()
                })
            };
            let u_nodes = eval_zero(&u_vec);
            let z3_nodes = !eval_zero(&z3sq);
            (
                inter.len() - rank,
                (28 - dim_aj) + (28 - dim_bj) + 2,
                u_nodes,
                z3_nodes,
            )
        };
        let a = codomain_dim - (28 - dim_ker_ev);

        Ok(EvReport {
            dim_s2: 28,
            dim_0123sq,
            dim_3456sq,
            dim_jf,
            dim_0123_plus_jf: dim_aj,
            dim_3456_plus_jf: dim_bj,
            dim_pairwise_intersection: pairwise.len(),
            dim_ker_ev,
            codomain_dim,
            a,
            checks: EvChecks {
                euler_identity,
                delta_f_cross_term_free,
                g_membership,
                g_prime_membership,
                pairwise_intersection_is_z3sq: pairwise_is_z3sq,
                u_in_kernel,
                u_vanishes_at_nodes: u_nodes,
                z3sq_nonzero_at_nodes: z3_nodes,
            },
        })
    }
}

fn is_cross_term(m: &Mono) -> bool {
    let left = m[0] + m[1] + m[2];
    let right = m[4] + m[5] + m[6];
    left > 0 && right > 0
}

/// Rank of the symmetric matrix of a quadric in three chosen variables.
fn conic_rank(q: &SparsePoly, vars: [usize; 3]) -> usize {
    let mut rows = Vec::new();
    for &vi in &vars {
        let mut row = Vec::new();
        for &vj in &vars {
            let mut m = [0u8; VARS];
            m[vi] += 1;
            m[vj] += 1;
            let c = q.coeff(&m);
            row.push(if vi == vj { c * big(2) } else { c });
        }
        rows.push(row);
    }
    RatMatrix::from_rows(rows).rank()
}

/// Solves `sum_k c_k dQ/dZ_{vars[k]} = Z_{vars[0]} + Z_{vars[1]} + Z_{vars[2]}`.
fn solve_gradient_combination(q: &SparsePoly, vars: [usize; 3]) -> Result<Vec<BigRational>> {
    let grads: Vec<SparsePoly> = vars.iter().map(|&i| q.diff(i)).collect();
    let mut rows = Vec::new();
    for &vj in &vars {
        let mut m = [0u8; VARS];
        m[vj] = 1;
        let mut row: Vec<BigRational> = grads.iter().map(|g| g.coeff(&m)).collect();
        row.push(BigRational::one());
        rows.push(row);
    }
    let mut mat = RatMatrix::from_rows(rows);
    let pivots = mat.rref();
    if pivots.len() != 3 || pivots.contains(&3) {
        return Err(degenerate(
            "gradient system for the distinguished element is singular",
        ));
    }
    Ok((0..3).map(|r| mat.at(r, 3).clone()).collect())
}

/// A point of the conic `{Q = 0}` in the `{Z_4, Z_5, Z_6}` plane over a
/// quadratic extension, embedded in the seven coordinates.
fn conic_point(q: &SparsePoly) -> Result<[QuadExt; VARS]> {
    for t in 1..40i64 {
        // substitute Z4 = 1, Z5 = t, solve the quadratic in Z6
        let sub = |z6_pow: u8| -> BigRational {
            let mut acc = BigRational::zero();
            for (m, c) in q.terms() {
                if m[6] != z6_pow {
                    continue;
                }
                let mut v = c.clone();
                for _ in 0..m[5] {
                    v *= big(t);
                }
                acc += v;
            }
            acc
        };
        let (c2, c1, c0) = (sub(2), sub(1), sub(0));
        if c2.is_zero() {
            continue;
        }
        let disc = &c1 * &c1 - big(4) * &c2 * &c0;
        if disc.is_zero() {
            continue;
        }
        let half = (big(2) * &c2).recip();
        let z6 = QuadExt {
            a: -&c1 * &half,
            b: half,
            d: disc.clone(),
        };
        let zero = QuadExt::rational(BigRational::zero(), disc.clone());
        let one = QuadExt::rational(BigRational::one(), disc.clone());
        let tq = QuadExt::rational(big(t), disc.clone());
        return Ok([zero.clone(), zero.clone(), zero.clone(), zero, one, tq, z6]);
    }
    Err(degenerate("no usable conic chart found"))
}

fn hessian_rank_at(f: &SparsePoly, point: &[QuadExt; VARS]) -> usize {
    let mut rows = Vec::new();
    for i in 0..VARS {
        let mut row = Vec::new();
        for j in 0..VARS {
            row.push(f.diff(i).diff(j).eval_quadext(point));
        }
        rows.push(row);
    }
    quadext_rank(&rows)
}

/// Closed form for the two extra singular points forced by the
/// four-dimensional momentum relation. The quadratic below is the printed
/// one; its mass terms pair each direction coefficient with the matching
/// squared mass.
fn compute_nodes(kin: &KinematicData, sys: &SymanzikSystem) -> Result<Vec<NodeData>> {
    let [a2, a3, a5, a6] = kin
        .alphas
        .ok_or_else(|| Error::invalid("node computation needs the momentum relation"))?;
    let m2 = &kin.masses_sq;
    let np = a2 * (1 + a2) * kin.dot(2, 2)
        + 2 * a2 * (1 + a3) * kin.dot(2, 3)
        + a3 * (1 + a3) * kin.dot(3, 3);
    let nn = a5 * (1 + a5) * kin.dot(5, 5)
        + 2 * a6 * (1 + a5) * kin.dot(5, 6)
        + a6 * (1 + a6) * kin.dot(6, 6);
    let mp = -a2 * m2[0] + (a2 - a3) * m2[1] + (1 + a3) * m2[2];
    let mn = -a6 * m2[4] + (a6 - a5) * m2[5] + (1 + a5) * m2[6];

    let qa = big(np - mp);
    let qc = big(nn - mn);
    let qb = &qa + &qc + kin.mass_sq(3);
    if qa.is_zero() {
        return Err(degenerate("node quadratic degenerates to a line"));
    }
    let disc = &qb * &qb - big(4) * &qa * &qc;
    if disc.is_zero() {
        return Err(degenerate("the two nodes collide"));
    }

    let mut nodes = Vec::new();
    for sign in [1i64, -1] {
        let half = (big(2) * &qa).recip();
        let rho = QuadExt {
            a: -&qb * &half,
            b: big(sign) * &half,
            d: disc.clone(),
        };
        let w = rho
            .scale(&qa)
            .add(&QuadExt::rational(qc.clone(), disc.clone()))
            .scale(&kin.mass_sq(3).recip());
        let c = |x: i64| QuadExt::rational(big(x), disc.clone());
        let coords = [
            rho.scale(&big(-a2)),
            rho.scale(&big(a2 - a3)),
            rho.scale(&big(1 + a3)),
            w,
            c(-a6),
            c(a6 - a5),
            c(1 + a5),
        ];
        // the closed form must put the point on the hypersurface
        if !sys.f.eval_quadext(&coords).is_zero() {
            return Err(degenerate("node closed form left the hypersurface"));
        }
        nodes.push(NodeData {
            coords,
            disc: disc.clone(),
        });
    }
    Ok(nodes)
}

/// Two rational linear conditions expressing vanishing at both (conjugate)
/// nodes; when the discriminant is a perfect square the nodes are rational
/// and the conditions are the two honest evaluations.
fn node_condition_rows(nodes: &[NodeData], basis: &[Mono]) -> Vec<Vec<BigRational>> {
    let disc = &nodes[0].disc;
    match rational_sqrt(disc) {
        Some(s) => nodes
            .iter()
            .map(|node| {
                basis
                    .iter()
                    .map(|m| {
                        let v = eval_mono(&node.coords, m);
                        &v.a + &s * &v.b
                    })
                    .collect()
            })
            .collect(),
        None => {
            let node = &nodes[0];
            let vals: Vec<QuadExt> = basis.iter().map(|m| eval_mono(&node.coords, m)).collect();
            vec![
                vals.iter().map(|v| v.a.clone()).collect(),
                vals.iter().map(|v| v.b.clone()).collect(),
            ]
        }
    }
}

fn eval_mono(coords: &[QuadExt; VARS], m: &Mono) -> QuadExt {
    let mut acc = QuadExt::rational(BigRational::one(), coords[0].d.clone());
    for (i, &e) in m.iter().enumerate() {
        for _ in 0..e {
            acc = acc.mul(&coords[i]);
        }
    }
    acc
}

/// Hodge-theoretic summary of the degeneration, evaluated at the computed
/// connecting rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HodgeSummary {
    pub rho_d: u64,
    pub a: usize,
    pub b: i64,
    pub h22_h5_x0: u64,
    pub h32_h5_x0: u64,
    pub h23_h5_x0: u64,
    pub rank_v: u64,
    pub rank_n: i64,
    pub w4_rank: i64,
    /// The semisimple monodromy acts by -1 on this part of the weight-5
    /// graded of the limit.
    pub tss_minus_rank: u64,
    pub f_level: i64,
    pub h5_van: HodgeDeligneDiagram,
    pub h5_lim: HodgeDeligneDiagram,
    pub h5_x0: HodgeDeligneDiagram,
    pub h6_x0: HodgeDeligneDiagram,
}

/// Full report for one case and seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleBoxReport {
    pub case: KinematicCase,
    pub requested_seed: u64,
    pub effective_seed: u64,
    pub resample_attempts: u64,
    pub kinematics: KinematicData,
    pub singular_locus: SingularLocusReport,
    pub ev: EvReport,
    pub hodge: HodgeSummary,
    /// Monodromy-logarithm rank of the one-parameter momentum
    /// specialization joining the two regimes (the family in which the
    /// hypersurface acquires its two extra nodes). Recorded constant; that
    /// family is not the one computed here.
    pub momentum_specialization_rank_n: u64,
}

const MAX_RESAMPLE: u64 = 8;

/// Runs the whole pipeline, resampling degenerate kinematics with
/// incremented seeds (reported).
pub fn doublebox_report(case: KinematicCase, seed: u64) -> Result<DoubleBoxReport> {
    let mut last_err = None;
    for attempt in 0..MAX_RESAMPLE {
        let effective = seed + attempt;
        match doublebox_attempt(case, effective) {
            Ok(mut report) => {
                report.requested_seed = seed;
                report.resample_attempts = attempt;
                return Ok(report);
            }
            Err(e @ Error::Precondition(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::inconsistent("resampling failed")))
}

fn doublebox_attempt(case: KinematicCase, seed: u64) -> Result<DoubleBoxReport> {
    let kin = sample_kinematics(seed, case)?;
    let dbx = DoubleBox::new(kin.clone())?;
    let singular_locus = dbx.verify_singular_locus()?;
    let ev = dbx.evaluation_map_rank()?;

    let rho_d = singular_locus.nodes.len() as u64;
    let pinch_spectrum = WeightedSpectrum::singleton(rat(3, 1), 6);
    let mut s0_points: Vec<S0Point> = (0..12)
        .map(|i| S0Point::Explicit {
            label: format!("pinch_{i}"),
            spectrum: pinch_spectrum.clone(),
        })
        .collect();
    for i in 0..rho_d {
        s0_points.push(S0Point::Explicit {
            label: format!("node_{i}"),
            spectrum: pinch_spectrum.clone(),
        });
    }
    let stratum = StratumSpec {
        genus: 0,
        punctures: vec![PunctureKind::Pinch; 6],
        total_space_nodes: 6,
    };
    let scenario = DegenerationScenario {
        name: format!("double box ({case:?})"),
        n: 5,
        strata: vec![stratum.clone(), stratum],
        s0_points,
        fiber: FiberHodge::cubic_fivefold(),
        components: 1,
        constraints: vec![],
    };
    let solution = solve_scenario(&scenario)?;

    let mut env = BTreeMap::new();
    env.insert("a".to_string(), ev.a as i64);
    let tables = solution.tables.evaluate(&env)?;
    let h5_van = tables["h_van"][&5].clone();
    let h5_lim = tables["h_lim"][&5].clone();
    let h5_x0 = tables["h_x0"][&5].clone();
    let h6_x0 = tables["h_x0"][&6].clone();

    let b = solution.tables.relations["b"].eval(&env)?;
    let rank_n = solution.tables.relations["rank_N"].eval(&env)?;
    let rank_v = h5_van.multiplicity(3, 2, rat(1, 2)) + h5_van.multiplicity(2, 3, rat(1, 2));
    let f_level = from_hodge_deligne(&h5_van)
        .f_level()
        .ok_or_else(|| Error::inconsistent("empty vanishing cohomology"))?;

    let hodge = HodgeSummary {
        rho_d,
        a: ev.a,
        b,
        h22_h5_x0: h5_x0.multiplicity(2, 2, rat(0, 1)),
        h32_h5_x0: h5_x0.multiplicity(3, 2, rat(0, 1)),
        h23_h5_x0: h5_x0.multiplicity(2, 3, rat(0, 1)),
        rank_v,
        rank_n,
        w4_rank: solution.tables.relations["w4_h5_x0_rank"].eval(&env)?,
        tss_minus_rank: rank_v,
        f_level,
        h5_van,
        h5_lim,
        h5_x0,
        h6_x0,
    };
    Ok(DoubleBoxReport {
        case,
        requested_seed: seed,
        effective_seed: seed,
        resample_attempts: 0,
        kinematics: kin,
        singular_locus,
        ev,
        hodge,
        momentum_specialization_rank_n: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_shapes() {
        let kin = sample_kinematics(1, KinematicCase::DGt4).unwrap();
        let sys = build_symanzik(&kin);
        assert_eq!(sys.u.num_terms(), 15);
        assert_eq!(sys.f.total_degree(), 3);
        // P has no Z3^2 term
        let mut z3sq = [0u8; VARS];
        z3sq[3] = 2;
        assert!(sys.p.coeff(&z3sq).is_zero());
        // Q' matches its displayed form coefficientwise
        let mut z0z1 = [0u8; VARS];
        z0z1[0] = 1;
        z0z1[1] = 1;
        let expected = big(kin.dot(2, 2) + kin.masses_sq[0] + kin.masses_sq[1]);
        assert_eq!(sys.q_prime.coeff(&z0z1), expected);
    }

    #[test]
    fn euler_identity_holds() {
        let kin = sample_kinematics(3, KinematicCase::DGt4).unwrap();
        let sys = build_symanzik(&kin);
        let mut euler = SparsePoly::new();
        for i in 0..VARS {
            euler = euler.add(&SparsePoly::var(i).mul(&sys.f.diff(i)));
        }
        assert_eq!(euler, sys.f.scale(&big(3)));
    }

    #[test]
    fn generic_case_ranks() {
        let kin = sample_kinematics(1, KinematicCase::DGt4).unwrap();
        let dbx = DoubleBox::new(kin).unwrap();
        let loc = dbx.verify_singular_locus().unwrap();
        assert!(loc.conic_restriction_ok);
        assert_eq!(loc.hessian_rank_at_generic_point, 5);
        assert!(loc.nodes.is_empty());
        let ev = dbx.evaluation_map_rank().unwrap();
        assert_eq!((ev.dim_0123sq, ev.dim_3456sq, ev.dim_jf), (10, 10, 7));
        assert_eq!(ev.dim_pairwise_intersection, 1);
        assert!(ev.checks.pairwise_intersection_is_z3sq);
        assert_eq!(ev.dim_ker_ev, 9);
        assert_eq!(ev.dim_ker_ev, ev.dim_jf + 2);
        assert_eq!(ev.a, 3);
        assert!(ev.checks.euler_identity);
        assert!(ev.checks.delta_f_cross_term_free);
        assert!(ev.checks.g_membership && ev.checks.g_prime_membership);
        assert!(ev.checks.u_in_kernel);
    }

    #[test]
    fn four_dimensional_case_finds_two_nodes() {
        let report = doublebox_report(KinematicCase::DEq4, 1).unwrap();
        assert_eq!(report.singular_locus.nodes.len(), 2);
        for n in &report.singular_locus.nodes {
            assert!(n.jacobian_vanishes);
            assert!(n.first_polynomial_vanishes);
            assert!(n.z3_nonzero);
            assert!(n.ordinary_double_point);
        }
        assert_eq!(report.ev.dim_ker_ev, 8);
        assert_eq!(report.ev.a, 4);
        assert_eq!(report.hodge.h22_h5_x0, 10);
        assert_eq!(report.hodge.h32_h5_x0, 1);
        assert_eq!(report.hodge.b, 1);
        assert_eq!(report.hodge.rank_v, 20);
        assert_eq!(report.hodge.f_level, 1);
    }

    #[test]
    fn generic_report_values() {
        let report = doublebox_report(KinematicCase::DGt4, 1).unwrap();
        assert_eq!(report.hodge.a, 3);
        assert_eq!(report.hodge.b, 2);
        assert_eq!(report.hodge.h22_h5_x0, 9);
        assert_eq!(report.hodge.h32_h5_x0, 2);
        assert_eq!(report.hodge.rank_n, 9);
        assert_eq!(report.hodge.rank_v, 20);
        assert_eq!(report.hodge.f_level, 1);
        assert_eq!(report.hodge.h6_x0.total_multiplicity(), 4);
    }
}
