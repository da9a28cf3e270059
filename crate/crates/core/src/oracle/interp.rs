//! Hermite interpolation over F_p: the vanishing-conditions matrix for fat
//! points and the kernel (the space of degree-d forms through them).
//!
//! Vanishing to order m at a point imposes one row per partial derivative of
//! order < m taken in the three affine directions of a chart where the point
//! has a nonzero coordinate: binom(m+2, 3) rows.

use rand::Rng;

use super::config::PointConfiguration;
use super::fp::Field;
use super::matrix::{nullspace, rank};
use crate::error::{Error, Result};

/// Exponent vectors of the degree-d monomials in 4 variables, graded-lex
/// (lexicographic within the fixed degree).
pub fn monomials(d: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            for e2 in (0..=d - e0 - e1).rev() {
                out.push([e0, e1, e2, d - e0 - e1 - e2]);
            }
        }
    }
    out
}

pub fn monomial_count(d: u64) -> usize {
    ((d + 1) * (d + 2) * (d + 3) / 6) as usize
}

fn eval_power(field: &Field, base: u64, exp: u64) -> u64 {
    if exp == 0 {
        1
    } else {
        field.pow(base, exp)
    }
}

/// (e choose-falling a) = e (e-1) ... (e-a+1) mod p; 0 when a > e.
fn falling(field: &Field, e: u64, a: u64) -> u64 {
    if a > e {
        return 0;
    }
    (0..a).fold(1u64, |acc, k| field.mul(acc, field.reduce(e - k)))
}

/// The row of the conditions matrix for the derivative `alpha` (which must
/// be zero in the chart coordinate) evaluated at `pt`.
fn derivative_row(field: &Field, exps: &[[u64; 4]], alpha: [u64; 4], pt: [u64; 4]) -> Vec<u64> {
    exps.iter()
        .map(|e| {
            let mut v = 1u64;
            for i in 0..4 {
                if alpha[i] > e[i] {
                    return 0;
                }
                v = field.mul(v, falling(field, e[i], alpha[i]));
                v = field.mul(v, eval_power(field, pt[i], e[i] - alpha[i]));
            }
            v
        })
        .collect()
}

/// All derivative multi-indices of order < m supported on the three
/// coordinates other than `chart`.
fn derivative_orders(m: u64, chart: usize) -> Vec<[u64; 4]> {
    let free: Vec<usize> = (0..4).filter(|&i| i != chart).collect();
    let mut out = Vec::new();
    for total in 0..m {
        for a0 in (0..=total).rev() {
            for a1 in (0..=total - a0).rev() {
                let mut alpha = [0u64; 4];
                alpha[free[0]] = a0;
                alpha[free[1]] = a1;
                alpha[free[2]] = total - a0 - a1;
                out.push(alpha);
            }
        }
    }
    out
}

/// The full vanishing-conditions matrix: binom(m_i+2, 3) rows per point,
/// one column per degree-d monomial.
pub fn conditions_matrix(
    d: u64,
    mults: &[u64],
    cfg: &PointConfiguration,
) -> Result<Vec<Vec<u64>>> {
    if mults.len() > 8 {
        return Err(Error::TooManyPoints(mults.len()));
    }
    let field = cfg.field();
    if field.prime() <= d {
        return Err(Error::PrimeNotAboveDegree {
            p: field.prime(),
            d,
        });
    }
    let exps = monomials(d);
    let mut rows = Vec::new();
    for (idx, &m) in mults.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let pt = cfg.point(idx + 1);
        let chart = pt
            .iter()
            .position(|&c| c != 0)
            .expect("configuration points are nonzero");
        for alpha in derivative_orders(m, chart) {
            rows.push(derivative_row(field, &exps, alpha, pt));
        }
    }
    Ok(rows)
}

/// Dimension of the space of degree-d forms vanishing to order `m_i` at the
/// configuration points: binom(d+3, 3) minus the rank of the conditions.
pub fn h0_interpolation(d: u64, mults: &[u64], cfg: &PointConfiguration) -> Result<u64> {
    let rows = conditions_matrix(d, mults, cfg)?;
    let r = rank(cfg.field(), rows);
    Ok((monomial_count(d) - r) as u64)
}

/// A basis of the space of degree-d forms through the fat points, as
/// coefficient vectors over the degree-d monomials in graded-lex order.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    degree: u64,
    basis: Vec<Vec<u64>>,
}

impl KernelBasis {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Evaluates the form with the given coefficients at a point.
    pub fn evaluate(&self, field: &Field, coeffs: &[u64], pt: [u64; 4]) -> u64 {
        evaluate_form(field, self.degree, coeffs, pt)
    }

    /// True when every basis member vanishes at the point.
    pub fn all_vanish_at(&self, field: &Field, pt: [u64; 4]) -> bool {
        self.basis
            .iter()
            .all(|c| self.evaluate(field, c, pt) == 0)
    }

    /// A random field combination of the basis members.
    pub fn random_member(&self, field: &Field, rng: &mut impl Rng) -> Vec<u64> {
        let n = monomial_count(self.degree);
        let mut out = vec![0u64; n];
        for b in &self.basis {
            let c = rng.gen_range(1..field.prime());
            for (o, &x) in out.iter_mut().zip(b) {
                *o = field.add(*o, field.mul(c, x));
            }
        }
        out
    }
}

/// Evaluates a degree-d coefficient vector at a point of P^3.
pub fn evaluate_form(field: &Field, d: u64, coeffs: &[u64], pt: [u64; 4]) -> u64 {
    monomials(d)
        .iter()
        .zip(coeffs)
        .fold(0u64, |acc, (e, &c)| {
            if c == 0 {
                return acc;
            }
            let v = e
                .iter()
                .zip(&pt)
                .fold(c, |v, (&exp, &x)| field.mul(v, eval_power(field, x, exp)));
            field.add(acc, v)
        })
}

pub fn kernel_basis(d: u64, mults: &[u64], cfg: &PointConfiguration) -> Result<KernelBasis> {
    let rows = conditions_matrix(d, mults, cfg)?;
    let ncols = monomial_count(d);
    let basis = if rows.is_empty() {
        // No conditions: the identity basis.
        (0..ncols)
            .map(|i| {
                let mut v = vec![0u64; ncols];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        nullspace(cfg.field(), rows, ncols)
    };
    Ok(KernelBasis { degree: d, basis })
}
