//! Divisor and curve classes on the blow-up of P^3 at up to 8 general
//! points, together with the integer pairing between them.
//!
//! A divisor class is written `L3(d; m_1,...,m_8)` (degree-d surfaces with
//! multiplicity at least m_i at the i-th point); a curve class is
//! `l3(delta; mu_1,...,mu_8)`. Systems with fewer than 8 points are padded
//! with trailing zeros. Point indices are 1-based everywhere in the public
//! API, matching the usual notation.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{add, binom3, mul, sub, Int};

/// A divisor class `d*H - sum m_i E_i`.
///
/// User-facing classes have `d >= 0` and `m_i >= 0`; classes produced
/// mid-reduction may violate both (see [`is_user_facing`](Self::is_user_facing)).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor<T> {
    degree: T,
    mults: [T; 8],
}

/// A curve class `delta*h - sum mu_i e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve<T> {
    degree: T,
    mults: [T; 8],
}

/// Identifier of a (-1)-curve class `C_a^{b,c}`: the Cremona orbit of a
/// line through two of the points, at level `a >= 0` with distinguished
/// pair `{b, c}`. `C_0^{b,c}` is the line through points b and c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinusOneCurveId {
    a: u64,
    b: u8,
    c: u8,
}

fn check_index(i: usize) -> Result<()> {
    if (1..=8).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(i))
    }
}

impl<T: Int> Divisor<T> {
    /// Builds a class from a degree and up to 8 multiplicities, padding
    /// with trailing zeros.
    pub fn new(degree: T, mults: &[T]) -> Result<Self> {
        if mults.len() > 8 {
            return Err(Error::TooManyPoints(mults.len()));
        }
        let mults = std::array::from_fn(|i| mults.get(i).cloned().unwrap_or_else(T::zero));
        Ok(Divisor { degree, mults })
    }

    pub fn from_parts(degree: T, mults: [T; 8]) -> Self {
        Divisor { degree, mults }
    }

    /// The zero class `L3(0)`.
    pub fn zero() -> Self {
        Divisor {
            degree: T::zero(),
            mults: std::array::from_fn(|_| T::zero()),
        }
    }

    /// The quadric class `S_i = L3(2; 1^i)` through the first `i` points.
    pub fn quadric_through(i: usize) -> Result<Self> {
        check_index(i)?;
        let mults = std::array::from_fn(|j| if j < i { T::one() } else { T::zero() });
        Ok(Divisor { degree: T::from_int(2), mults })
    }

    /// The class of the exceptional divisor over point `i`, `-E_i`, i.e.
    /// `L3(0; 0,...,-1,...,0)`. This is what gets transported back through
    /// a reduction trace to name a fixed component.
    pub fn exceptional(i: usize) -> Result<Self> {
        check_index(i)?;
        let mults =
            std::array::from_fn(|j| if j + 1 == i { -T::one() } else { T::zero() });
        Ok(Divisor { degree: T::zero(), mults })
    }

    pub fn degree(&self) -> &T {
        &self.degree
    }

    /// Multiplicity at point `i` (1-based). Panics on an out-of-range index.
    pub fn mult(&self, i: usize) -> &T {
        assert!((1..=8).contains(&i), "point index {i} out of range 1..=8");
        &self.mults[i - 1]
    }

    pub fn mults(&self) -> &[T; 8] {
        &self.mults
    }

    /// True when `d >= 0` and all multiplicities are non-negative.
    /// Classes failing this are `internal` (mid-reduction) classes.
    pub fn is_user_facing(&self) -> bool {
        !self.degree.is_negative() && self.mults.iter().all(|m| !m.is_negative())
    }

    /// The pairing `L . C = d*delta - sum m_i mu_i`.
    pub fn intersect(&self, curve: &Curve<T>) -> T {
        let mut acc = mul(&self.degree, &curve.degree);
        for (m, mu) in self.mults.iter().zip(curve.mults.iter()) {
            acc = sub(&acc, &mul(m, mu));
        }
        acc
    }

    /// `K = 4d - sum m_i`, the degree against the anticanonical curve
    /// `D_Q8`; invariant under the cubic Cremona transformation.
    pub fn anticanonical_degree(&self) -> T {
        let mut acc = mul(&T::from_int(4), &self.degree);
        for m in &self.mults {
            acc = sub(&acc, m);
        }
        acc
    }

    /// `t_{i,j} = m_i + m_j - d`: the excess of the pair `{i, j}` over the
    /// degree. Positive values are base-line multiplicities for classes in
    /// standard form.
    pub fn pair_excess(&self, i: usize, j: usize) -> Result<T> {
        check_index(i)?;
        check_index(j)?;
        if i == j {
            return Err(Error::EqualIndices);
        }
        Ok(sub(&add(&self.mults[i - 1], &self.mults[j - 1]), &self.degree))
    }

    /// Standard form: multiplicities non-increasing and non-negative, and
    /// `2d >= m_1 + m_2 + m_3 + m_4`.
    pub fn is_standard_form(&self) -> bool {
        if self.mults.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        if self.mults[7].is_negative() {
            return false;
        }
        let top4 = self.mults[..4].iter().fold(T::zero(), |s, m| add(&s, m));
        add(&self.degree, &self.degree) >= top4
    }

    /// Splits a standard-form class as `S + sum_{i=4..8} c_i S_i` with
    /// `S = L3(d - 2 m_4; m_1 - m_4, m_2 - m_4, m_3 - m_4)` and
    /// `S_i = L3(2; 1^i)`.
    pub fn decompose_standard(&self) -> Result<StandardDecomposition<T>> {
        if !self.is_standard_form() {
            return Err(Error::NotStandardForm);
        }
        let m4 = self.mults[3].clone();
        let simple = Divisor::new(
            sub(&self.degree, &add(&m4, &m4)),
            &[
                sub(&self.mults[0], &m4),
                sub(&self.mults[1], &m4),
                sub(&self.mults[2], &m4),
            ],
        )?;
        // Telescoping: c_i = m_i - m_{i+1} for i = 4..7, c_8 = m_8.
        let cone_coeffs = std::array::from_fn(|k| {
            if k < 4 {
                sub(&self.mults[3 + k], &self.mults[4 + k])
            } else {
                self.mults[7].clone()
            }
        });
        Ok(StandardDecomposition { simple, cone_coeffs })
    }

    /// Euler characteristic `chi = C(d+3,3) - sum C(m_i+2,3)` of the
    /// associated sheaf. Only meaningful for classes with non-negative
    /// entries.
    pub fn euler_characteristic(&self) -> T {
        let mut acc = binom3(&add(&self.degree, &T::from_int(3)));
        for m in &self.mults {
            acc = sub(&acc, &binom3(&add(m, &T::from_int(2))));
        }
        acc
    }

    /// Componentwise `self - mult * other`.
    pub fn subtract_scaled(&self, other: &Self, mult: &T) -> Self {
        Divisor {
            degree: sub(&self.degree, &mul(mult, &other.degree)),
            mults: std::array::from_fn(|k| {
                sub(&self.mults[k], &mul(mult, &other.mults[k]))
            }),
        }
    }
}

/// Result of [`Divisor::decompose_standard`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardDecomposition<T> {
    /// The class `S = L3(d - 2m_4; (m_1 - m_4), (m_2 - m_4), (m_3 - m_4))`.
    pub simple: Divisor<T>,
    /// Coefficients `c_4..c_8` of the quadric classes `S_4..S_8`.
    pub cone_coeffs: [T; 5],
}

impl<T: Int> StandardDecomposition<T> {
    /// Reassembles `S + sum c_i S_i`; the identity on standard-form input.
    pub fn recompose(&self) -> Divisor<T> {
        let mut out = self.simple.clone();
        for (k, c) in self.cone_coeffs.iter().enumerate() {
            let s_i = Divisor::quadric_through(k + 4).expect("index in range");
            out = out.subtract_scaled(&s_i, &-c.clone());
        }
        out
    }
}

impl<T: Int> Curve<T> {
    pub fn new(degree: T, mults: &[T]) -> Result<Self> {
        if mults.len() > 8 {
            return Err(Error::TooManyPoints(mults.len()));
        }
        let mults = std::array::from_fn(|i| mults.get(i).cloned().unwrap_or_else(T::zero));
        Ok(Curve { degree, mults })
    }

    pub fn from_parts(degree: T, mults: [T; 8]) -> Self {
        Curve { degree, mults }
    }

    /// The line `l_{i,j}` through points i and j, i.e. `l3(1; 1,1)` in the
    /// slots i and j.
    pub fn line(i: usize, j: usize) -> Result<Self> {
        check_index(i)?;
        check_index(j)?;
        if i == j {
            return Err(Error::EqualIndices);
        }
        let mults = std::array::from_fn(|k| {
            if k + 1 == i || k + 1 == j {
                T::one()
            } else {
                T::zero()
            }
        });
        Ok(Curve { degree: T::one(), mults })
    }

    /// `D_Q8 = l3(4; 1^8)`: the anticanonical curve of the quadric through
    /// all 8 points; fixed by every cubic Cremona transformation.
    pub fn anticanonical() -> Self {
        Curve {
            degree: T::from_int(4),
            mults: std::array::from_fn(|_| T::one()),
        }
    }

    pub fn degree(&self) -> &T {
        &self.degree
    }

    pub fn mult(&self, i: usize) -> &T {
        assert!((1..=8).contains(&i), "point index {i} out of range 1..=8");
        &self.mults[i - 1]
    }

    pub fn mults(&self) -> &[T; 8] {
        &self.mults
    }
}

impl MinusOneCurveId {
    /// Level `a >= 0` and a pair of distinct indices in 1..=8 (stored with
    /// `b < c`).
    pub fn new(a: u64, b: usize, c: usize) -> Result<Self> {
        check_index(b)?;
        check_index(c)?;
        if b == c {
            return Err(Error::EqualIndices);
        }
        let (b, c) = if b < c { (b, c) } else { (c, b) };
        Ok(MinusOneCurveId { a, b: b as u8, c: c as u8 })
    }

    pub fn level(&self) -> u64 {
        self.a
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.b as usize, self.c as usize)
    }

    /// Expands to the curve class: degree `2a+1`, and for even `a`
    /// `mu_i = a/2 + [i in {b,c}]`, for odd `a` `mu_i = (a+1)/2 - [i in {b,c}]`.
    pub fn curve_class<T: Int>(&self) -> Curve<T> {
        let a = self.a as i64;
        let (base, delta) = if a % 2 == 0 { (a / 2, 1) } else { ((a + 1) / 2, -1) };
        let mults = std::array::from_fn(|k| {
            let i = (k + 1) as u8;
            let v = if i == self.b || i == self.c { base + delta } else { base };
            T::from_int(v)
        });
        Curve::from_parts(T::from_int(2 * a + 1), mults)
    }
}

impl<T: Int> fmt::Display for Divisor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.mults.iter().rposition(|m| !m.is_zero());
        match last {
            None => write!(f, "L3({})", self.degree),
            Some(last) => {
                write!(f, "L3({};", self.degree)?;
                for (k, m) in self.mults[..=last].iter().enumerate() {
                    write!(f, "{}{}", if k == 0 { "" } else { "," }, m)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl<T: Int> fmt::Display for Curve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.mults.iter().rposition(|m| !m.is_zero());
        match last {
            None => write!(f, "l3({})", self.degree),
            Some(last) => {
                write!(f, "l3({};", self.degree)?;
                for (k, m) in self.mults[..=last].iter().enumerate() {
                    write!(f, "{}{}", if k == 0 { "" } else { "," }, m)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for MinusOneCurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}^{{{},{}}}", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = Divisor<i64>;
    type C = Curve<i64>;

    fn div(d: i64, m: &[i64]) -> D {
        D::new(d, m).unwrap()
    }

    #[test]
    fn make_divisor_pads_and_validates() {
        let l = div(15, &[13, 10, 9, 7, 6, 3, 3, 2]);
        assert!(l.is_user_facing());
        assert_eq!(*l.mult(1), 13);

        let plane = div(1, &[]);
        assert_eq!(plane.mults(), &[0; 8]);
        assert!(plane.is_user_facing());

        assert!(matches!(
            D::new(2, &[1; 9]),
            Err(Error::TooManyPoints(9))
        ));
    }

    #[test]
    fn pairing_fixtures_from_the_worked_example() {
        let residual = div(5, &[4, 3, 3, 3, 2, 1, 1, 1]);
        let c167 = MinusOneCurveId::new(1, 6, 7).unwrap().curve_class::<i64>();
        assert_eq!(residual.intersect(&c167), -1);

        let plane = div(1, &[]);
        assert_eq!(plane.intersect(&C::line(1, 2).unwrap()), 1);

        let l = div(2, &[2, 2, 2]);
        assert_eq!(l.intersect(&C::line(1, 2).unwrap()), -2);
        assert_eq!(l.intersect(&C::line(1, 2).unwrap()), -l.pair_excess(1, 2).unwrap());
    }

    #[test]
    fn minus_one_curve_expansion() {
        let l12 = MinusOneCurveId::new(0, 1, 2).unwrap().curve_class::<i64>();
        assert_eq!(l12, C::new(1, &[1, 1]).unwrap());

        let c178 = MinusOneCurveId::new(1, 7, 8).unwrap().curve_class::<i64>();
        assert_eq!(c178, C::new(3, &[1, 1, 1, 1, 1, 1, 0, 0]).unwrap());

        let c212 = MinusOneCurveId::new(2, 1, 2).unwrap().curve_class::<i64>();
        assert_eq!(c212, C::new(5, &[2, 2, 1, 1, 1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn minus_one_curve_degree_and_total_multiplicity() {
        for a in 0..6u64 {
            for b in 1..=8 {
                for c in (b + 1)..=8 {
                    let cl = MinusOneCurveId::new(a, b, c).unwrap().curve_class::<i64>();
                    assert_eq!(*cl.degree(), 2 * a as i64 + 1);
                    let total: i64 = cl.mults().iter().sum();
                    assert_eq!(total, 4 * a as i64 + 2);
                }
            }
        }
    }

    #[test]
    fn anticanonical_degree_cases() {
        for m in 1..5 {
            assert_eq!(div(2 * m, &[m; 8]).anticanonical_degree(), 0);
            let mut ms = [m; 8];
            ms[7] = m - 1;
            assert_eq!(div(2 * m, &ms).anticanonical_degree(), 1);
        }
        let residual = div(5, &[4, 3, 3, 3, 2, 1, 1, 1]);
        assert_eq!(residual.anticanonical_degree(), 2);
        // K equals the pairing against D_Q8.
        assert_eq!(
            residual.anticanonical_degree(),
            residual.intersect(&C::anticanonical())
        );
    }

    #[test]
    fn standard_form_checks() {
        assert!(!div(15, &[13, 10, 9, 7, 6, 3, 3, 2]).is_standard_form());
        assert!(div(4, &[2; 8]).is_standard_form());
        assert!(!div(5, &[4, 3, 3, 3, 2, 1, 1, 1]).is_standard_form());
        // unsorted
        assert!(!div(10, &[1, 2]).is_standard_form());
        // negative entry
        assert!(!D::new(2, &[1, 0, 0, 0, 0, 0, 0, -1]).unwrap().is_standard_form());
    }

    #[test]
    fn decompose_standard_examples() {
        let l = div(6, &[3; 8]);
        let dec = l.decompose_standard().unwrap();
        assert_eq!(dec.simple, D::zero());
        assert_eq!(dec.cone_coeffs, [0, 0, 0, 0, 3]);
        assert_eq!(dec.recompose(), l);

        let l = div(4, &[2, 2, 2, 2, 1, 0, 0, 0]);
        let dec = l.decompose_standard().unwrap();
        assert_eq!(dec.simple, D::zero());
        assert_eq!(dec.cone_coeffs, [1, 1, 0, 0, 0]);
        assert_eq!(dec.recompose(), l);

        let l = div(3, &[3, 3]);
        let dec = l.decompose_standard().unwrap();
        assert_eq!(dec.simple, l);
        assert_eq!(dec.cone_coeffs, [0; 5]);
        assert_eq!(dec.recompose(), l);

        assert!(matches!(
            div(2, &[2, 2, 2]).decompose_standard(),
            Err(Error::NotStandardForm)
        ));
    }

    #[test]
    fn pair_excess_examples() {
        assert_eq!(div(2, &[2, 2, 2]).pair_excess(1, 2).unwrap(), 2);
        assert_eq!(
            div(5, &[4, 3, 3, 3, 2, 1, 1, 1]).pair_excess(1, 2).unwrap(),
            2
        );
        assert_eq!(div(7, &[]).pair_excess(3, 8).unwrap(), -7);
        assert!(matches!(div(1, &[]).pair_excess(2, 2), Err(Error::EqualIndices)));
        assert!(matches!(div(1, &[]).pair_excess(0, 2), Err(Error::IndexOutOfRange(0))));
    }

    #[test]
    fn display_notation() {
        assert_eq!(div(2, &[2, 1, 0, 1]).to_string(), "L3(2;2,1,0,1)");
        assert_eq!(div(3, &[]).to_string(), "L3(3)");
        assert_eq!(MinusOneCurveId::new(1, 7, 8).unwrap().to_string(), "C_1^{7,8}");
    }
}
