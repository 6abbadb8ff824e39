//! Deterministic sampling of generic rational kinematics: six momenta
//! summing to zero and seven squared masses. Only pairwise dot products
//! enter the construction, so the standard dot product stands in for the
//! Minkowski pairing without affecting any rank over `Q`.

use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which kinematic regime to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KinematicCase {
    /// Momenta span five dimensions; no linear relation beyond the sum.
    DGt4,
    /// Four-dimensional momenta with the forced relation
    /// `p4 = a2 p2 + a3 p3 + a5 p5 + a6 p6`.
    DEq4,
}

/// Sampled momenta and masses. Momenta are indexed 1..=6; slot 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KinematicData {
    pub case: KinematicCase,
    pub seed: u64,
    pub momenta: Vec<Vec<i64>>,
    pub masses_sq: [i64; 7],
    /// `(a2, a3, a5, a6)` of the four-dimensional relation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<[i64; 4]>,
}

impl KinematicData {
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.momenta[i]
            .iter()
            .zip(self.momenta[j].iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `(p_i + p_j)^2`.
    pub fn dot_sum2(&self, i: usize, j: usize) -> i64 {
        self.dot(i, i) + 2 * self.dot(i, j) + self.dot(j, j)
    }

    pub fn mass_sq(&self, i: usize) -> BigRational {
        BigRational::from_integer(self.masses_sq[i].into())
    }

    pub fn momentum_sum_is_zero(&self) -> bool {
        let dim = self.momenta[1].len();
        (0..dim).all(|k| (1..=6).map(|i| self.momenta[i][k]).sum::<i64>() == 0)
    }
}

/// Draws reproducible small-integer kinematics from the seed.
pub fn sample_kinematics(seed: u64, case: KinematicCase) -> Result<KinematicData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = match case {
        KinematicCase::DGt4 => 5,
        KinematicCase::DEq4 => 4,
    };
    let vec =
        |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..dim).map(|_| rng.gen_range(-9..=9)).collect() };
    let mut momenta = vec![Vec::new(); 7];
    let alphas = match case {
        KinematicCase::DGt4 => {
            for i in 2..=6 {
                momenta[i] = vec(&mut rng);
            }
            None
        }
        KinematicCase::DEq4 => {
            for i in [2, 3, 5, 6] {
                momenta[i] = vec(&mut rng);
            }
            let mut alpha = [0i64; 4];
            for a in alpha.iter_mut() {
                *a = loop {
                    let v = rng.gen_range(-4..=4);
                    if v != 0 {
                        break v;
                    }
                };
            }
            let [a2, a3, a5, a6] = alpha;
            momenta[4] = (0..dim)
                .map(|k| {
                    a2 * momenta[2][k]
                        + a3 * momenta[3][k]
                        + a5 * momenta[5][k]
                        + a6 * momenta[6][k]
                })
                .collect();
            Some(alpha)
        }
    };
    momenta[1] = (0..dim)
        .map(|k| -(2..=6).map(|i| momenta[i][k]).sum::<i64>())
        .collect();
    let mut masses_sq = [0i64; 7];
    for m in masses_sq.iter_mut() {
        *m = rng.gen_range(1..=19);
    }
    let data = KinematicData {
        case,
        seed,
        momenta,
        masses_sq,
        alphas,
    };
    if !data.momentum_sum_is_zero() {
        return Err(Error::inconsistent(
            "momentum conservation failed in sampling",
        ));
    }
    Ok(data)
}
