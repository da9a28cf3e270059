//! Reproducible random point configurations in P^3 over F_p.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::Field;
use super::matrix::{determinant, rank};
use crate::error::{Error, Result};

const ATTEMPTS: u32 = 100;

/// Eight points of P^3 over F_p in general position (no two equal, no three
/// collinear, no four coplanar), deterministic in `(p, seed)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    field: Field,
    seed: u64,
    points: [[u64; 4]; 8],
}

impl PointConfiguration {
    pub fn new(p: u64, seed: u64) -> Result<Self> {
        let field = Field::new(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ATTEMPTS {
            let points: [[u64; 4]; 8] = std::array::from_fn(|_| sample_point(&field, &mut rng));
            if in_general_position(&field, &points) {
                return Ok(PointConfiguration {
                    field,
                    seed,
                    points,
                });
            }
        }
        Err(Error::DegenerateConfiguration(ATTEMPTS))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.prime()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> &[[u64; 4]; 8] {
        &self.points
    }

    /// The point at 1-based label `i`.
    pub fn point(&self, i: usize) -> [u64; 4] {
        self.points[i - 1]
    }

    /// A configuration with the same field and seed but the given points
    /// (used when transporting a configuration through coordinate maps).
    pub(crate) fn with_points(&self, points: [[u64; 4]; 8]) -> Result<Self> {
        if !in_general_position(&self.field, &points) {
            return Err(Error::DegenerateConfiguration(1));
        }
        Ok(PointConfiguration {
            field: self.field,
            seed: self.seed,
            points,
        })
    }

    /// A deterministic stream of randomness for an oracle operation,
    /// decoupled from the stream that produced the points.
    pub(crate) fn derived_rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15)
    }
}

pub(crate) fn sample_point(field: &Field, rng: &mut impl Rng) -> [u64; 4] {
    std::array::from_fn(|_| rng.gen_range(0..field.prime()))
}

/// Projective normalization: scale so the first nonzero coordinate is 1.
pub(crate) fn normalize_point(field: &Field, pt: [u64; 4]) -> [u64; 4] {
    match pt.iter().find(|&&c| c != 0) {
        None => pt,
        Some(&lead) => {
            let inv = field.inv(lead);
            pt.map(|c| field.mul(c, inv))
        }
    }
}

pub(crate) fn in_general_position(field: &Field, points: &[[u64; 4]; 8]) -> bool {
    if points.iter().any(|pt| pt.iter().all(|&c| c == 0)) {
        return false;
    }
    for a in 0..8 {
        for b in (a + 1)..8 {
            let rows = vec![points[a].to_vec(), points[b].to_vec()];
            if rank(field, rows) < 2 {
                return false;
            }
            for c in (b + 1)..8 {
                let rows = vec![points[a].to_vec(), points[b].to_vec(), points[c].to_vec()];
                if rank(field, rows) < 3 {
                    return false;
                }
                for d in (c + 1)..8 {
                    let m = vec![
                        points[a].to_vec(),
                        points[b].to_vec(),
                        points[c].to_vec(),
                        points[d].to_vec(),
                    ];
                    if determinant(field, m) == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_from_prime_and_seed() {
        let a = PointConfiguration::new(2_147_483_647, 42).unwrap();
        let b = PointConfiguration::new(2_147_483_647, 42).unwrap();
        assert_eq!(a, b);
        let c = PointConfiguration::new(2_147_483_647, 43).unwrap();
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn rejects_small_or_composite_primes() {
        assert!(matches!(
            PointConfiguration::new(101, 1),
            Err(Error::PrimeTooSmall(101))
        ));
        assert!(matches!(
            PointConfiguration::new(1 << 31, 1),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn general_position_detects_degeneracy() {
        let field = Field::new(2_147_483_647).unwrap();
        let cfg = PointConfiguration::new(2_147_483_647, 42).unwrap();
        assert!(in_general_position(&field, cfg.points()));
        // Duplicate a point (up to scale).
        let mut pts = *cfg.points();
        pts[7] = pts[0].map(|c| field.mul(c, 5));
        assert!(!in_general_position(&field, &pts));
        // Put a point on the plane of three others.
        let mut pts = *cfg.points();
        pts[3] = std::array::from_fn(|k| {
            field.add(pts[0][k], field.add(pts[1][k], pts[2][k]))
        });
        assert!(!in_general_position(&field, &pts));
    }

    #[test]
    fn normalization() {
        let field = Field::new(2_147_483_647).unwrap();
        let pt = [0, 6, 3, 9];
        let n = normalize_point(&field, pt);
        assert_eq!(n[0], 0);
        assert_eq!(n[1], 1);
        assert_eq!(n[2], field.div(3, 6));
    }
}
