//! Dense univariate polynomials over F_p: arithmetic, gcd, Lagrange
//! interpolation and root finding (gcd with `x^p - x`, then random
//! equal-degree splitting).

use rand::Rng;

use super::fp::Field;

/// Coefficients in ascending degree order; empty means the zero polynomial,
/// otherwise the last entry is nonzero.
pub type Poly = Vec<u64>;

pub fn normalize(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn eval(field: &Field, p: &Poly, x: u64) -> u64 {
    p.iter()
        .rev()
        .fold(0u64, |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn add(field: &Field, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = field.add(x, y);
    }
    normalize(out)
}

pub fn sub(field: &Field, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = field.sub(x, y);
    }
    normalize(out)
}

pub fn mul(field: &Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    normalize(out)
}

pub fn scale(field: &Field, a: &Poly, c: u64) -> Poly {
    normalize(a.iter().map(|&x| field.mul(x, c)).collect())
}

/// Remainder of `a` modulo `b` (`b` nonzero).
pub fn rem(field: &Field, a: &Poly, b: &Poly) -> Poly {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.clone();
    let lead_inv = field.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let factor = field.mul(*r.last().unwrap(), lead_inv);
        if factor != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[k + i] = field.sub(r[k + i], field.mul(factor, c));
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() < b.len() {
            break;
        }
    }
    r
}

pub fn monic(field: &Field, a: &Poly) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => scale(field, a, field.inv(lead)),
    }
}

pub fn gcd(field: &Field, a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

/// Exact quotient `a / b` when `b` divides `a`.
pub fn div_exact(field: &Field, a: &Poly, b: &Poly) -> Poly {
    assert!(!b.is_empty());
    let mut r = a.clone();
    let mut q = vec![0u64; a.len().saturating_sub(b.len()) + 1];
    let lead_inv = field.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let factor = field.mul(*r.last().unwrap(), lead_inv);
        q[k] = factor;
        for (i, &c) in b.iter().enumerate() {
            r[k + i] = field.sub(r[k + i], field.mul(factor, c));
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() < b.len() {
            break;
        }
    }
    debug_assert!(r.is_empty(), "div_exact called with a non-divisor");
    normalize(q)
}

/// `base^exp mod f` by square-and-multiply.
pub fn pow_mod(field: &Field, base: &Poly, mut exp: u64, f: &Poly) -> Poly {
    let mut acc = vec![1u64];
    let mut base = rem(field, base, f);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &base), f);
        }
        base = rem(field, &mul(field, &base, &base), f);
        exp >>= 1;
    }
    acc
}

/// The unique polynomial of degree `< points.len()` through the given
/// (x, y) points (x values distinct).
pub fn lagrange(field: &Field, points: &[(u64, u64)]) -> Poly {
    let mut acc: Poly = Vec::new();
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // numerator prod_{j != i} (x - x_j), denominator prod (x_i - x_j)
        let mut num: Poly = vec![1];
        let mut den = 1u64;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            num = mul(field, &num, &vec![field.neg(xj), 1]);
            den = field.mul(den, field.sub(xi, xj));
        }
        acc = add(field, &acc, &scale(field, &num, field.div(yi, den)));
    }
    acc
}

/// All roots of `f` in F_p, sorted, each listed once.
pub fn roots(field: &Field, f: &Poly, rng: &mut impl Rng) -> Vec<u64> {
    let f = monic(field, &normalize(f.clone()));
    if f.len() <= 1 {
        return Vec::new();
    }
    // Split off the product of distinct linear factors: gcd(f, x^p - x).
    let xp = pow_mod(field, &vec![0, 1], field.prime(), &f);
    let lin = gcd(field, &sub(field, &xp, &vec![0, 1]), &f);
    let mut out = Vec::new();
    split_linear(field, &lin, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(field: &Field, g: &Poly, rng: &mut impl Rng, out: &mut Vec<u64>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => {
            // g = c1 x + c0, root = -c0 / c1
            out.push(field.div(field.neg(g[0]), g[1]));
        }
        Some(_) => loop {
            let a = rng.gen_range(0..field.prime());
            let probe = pow_mod(field, &vec![a, 1], (field.prime() - 1) / 2, g);
            let h = gcd(field, &sub(field, &probe, &vec![1]), g);
            let dh = h.len();
            if dh > 1 && dh < g.len() {
                split_linear(field, &h, rng, out);
                split_linear(field, &div_exact(field, g, &h), rng, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> Field {
        Field::new(2_147_483_647).unwrap()
    }

    #[test]
    fn rem_and_gcd() {
        let f = field();
        // (x - 2)(x - 5) and (x - 2)(x - 7)
        let a = mul(&f, &vec![f.neg(2), 1], &vec![f.neg(5), 1]);
        let b = mul(&f, &vec![f.neg(2), 1], &vec![f.neg(7), 1]);
        let g = gcd(&f, &a, &b);
        assert_eq!(g, vec![f.neg(2), 1]);
        assert!(rem(&f, &a, &g).is_empty());
        assert_eq!(div_exact(&f, &a, &g), vec![f.neg(5), 1]);
    }

    #[test]
    fn lagrange_recovers_a_polynomial() {
        let f = field();
        let p: Poly = vec![3, 0, 7, 1]; // x^3 + 7x^2 + 3
        let pts: Vec<(u64, u64)> = (0..4).map(|x| (x, eval(&f, &p, x))).collect();
        assert_eq!(lagrange(&f, &pts), p);
    }

    #[test]
    fn roots_of_a_product_of_linear_factors() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut p: Poly = vec![1];
        for r in [3u64, 17, 1_000_000_007 % f.prime(), 42] {
            p = mul(&f, &p, &vec![f.neg(r), 1]);
        }
        // Multiply in an irreducible quadratic so not everything splits.
        // x^2 + 1 is irreducible mod p = 3 (mod 4).
        p = mul(&f, &p, &vec![1, 0, 1]);
        let rs = roots(&f, &p, &mut rng);
        assert_eq!(rs, {
            let mut v = vec![3u64, 17, 42, 1_000_000_007 % f.prime()];
            v.sort_unstable();
            v
        });
    }
}
