//! Assembly of the complete base locus: fixed surfaces, base curves with
//! multiplicities, the anticanonical-curve term and the isolated fat point.
//!
//! For a standard-form class the base locus is read off directly (base
//! point free, `m*D_Q8`, `m*P`, or excess lines `t_{i,j} l_{i,j}`). A class
//! without fixed components that is not in standard form carries the
//! (-1)-curves `C_a^{b,c}` with `t_a^{b,c} = -L.C_a^{b,c} > 0`, plus an
//! isolated point when `L.D_Q8 = 1`.

use crate::cremona::sort_descending;
use crate::error::{Error, Result};
use crate::lattice::{Divisor, MinusOneCurveId};
use crate::reduction::{dimension, fixed_components, reduce_to_standard, FixedPart};
use crate::scalar::Int;

/// The seven points carrying the full multiplicity in the `L3(2m; m^7, m-1)`
/// case; the isolated base point is the unique eighth base point of the net
/// of quadrics through those seven points, and lies on `D_Q8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpec {
    seven: [usize; 7],
}

impl PointSpec {
    pub fn new(mut seven: [usize; 7]) -> Result<Self> {
        seven.sort_unstable();
        if seven[0] < 1 || seven[6] > 8 || seven.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedIndexSet);
        }
        Ok(PointSpec { seven })
    }

    /// The seven point labels, sorted ascending.
    pub fn seven(&self) -> [usize; 7] {
        self.seven
    }
}

/// The complete base locus of a linear system, as a formal sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocusResult<T> {
    /// Fixed surfaces with multiplicities.
    pub fixed: FixedPart<T>,
    /// Base curves `C_a^{b,c}` with multiplicities, sorted by (a, b, c).
    pub curves: Vec<(MinusOneCurveId, T)>,
    /// Coefficient of the anticanonical curve `D_Q8`.
    pub dq8_mult: T,
    /// Isolated fat base point, when present: (multiplicity, spec).
    pub point: Option<(T, PointSpec)>,
    /// The movable residual left after stripping the fixed part.
    pub residual: Divisor<T>,
    /// Number of Cremona steps in the reduction of the input.
    pub trace_len: usize,
}

fn empty_result<T: Int>(residual: Divisor<T>, trace_len: usize) -> BaseLocusResult<T> {
    BaseLocusResult {
        fixed: FixedPart { items: Vec::new() },
        curves: Vec::new(),
        dq8_mult: T::zero(),
        point: None,
        residual,
        trace_len,
    }
}

/// Matches `L3(2m; m^8)` with `m >= 1` on a sorted class; returns `m`.
fn match_dq8_family<T: Int>(sorted: &Divisor<T>) -> Option<T> {
    let m = sorted.mults()[0].clone();
    if m >= T::one()
        && *sorted.degree() == crate::scalar::add(&m, &m)
        && sorted.mults().iter().all(|x| *x == m)
    {
        Some(m)
    } else {
        None
    }
}

/// Matches `L3(2m; m^7, m-1)` with `m >= 1` on a sorted class; returns `m`.
fn match_point_family<T: Int>(sorted: &Divisor<T>) -> Option<T> {
    let m = sorted.mults()[0].clone();
    if m >= T::one()
        && *sorted.degree() == crate::scalar::add(&m, &m)
        && sorted.mults()[..7].iter().all(|x| *x == m)
        && sorted.mults()[7] == crate::scalar::sub(&m, &T::one())
    {
        Some(m)
    } else {
        None
    }
}

/// Labels of the seven slots holding the full multiplicity `m` (the class
/// must match the point family up to relabeling).
fn full_multiplicity_slots<T: Int>(l: &Divisor<T>, m: &T) -> Result<PointSpec> {
    let mut seven = [0usize; 7];
    let mut n = 0;
    for (k, x) in l.mults().iter().enumerate() {
        if x == m {
            if n == 7 {
                return Err(Error::Internal(format!(
                    "more than seven slots of full multiplicity in {l}"
                )));
            }
            seven[n] = k + 1;
            n += 1;
        }
    }
    if n != 7 {
        return Err(Error::Internal(format!(
            "expected seven slots of full multiplicity in {l}, found {n}"
        )));
    }
    PointSpec::new(seven)
}

/// Base locus of a non-empty standard-form class with non-negative entries.
pub fn base_locus_standard<T: Int>(l: &Divisor<T>) -> Result<BaseLocusResult<T>> {
    if !l.is_standard_form() {
        return Err(Error::NotStandardForm);
    }
    if dimension(l).is_zero() {
        return Err(Error::EmptySystem);
    }
    let (sorted, _) = sort_descending(l);
    let mut out = empty_result(l.clone(), 0);
    if let Some(m) = match_dq8_family(&sorted) {
        out.dq8_mult = m;
    } else if let Some(m) = match_point_family(&sorted) {
        let spec = full_multiplicity_slots(l, &m)?;
        out.point = Some((m, spec));
    } else if *sorted.degree() < crate::scalar::add(&sorted.mults()[0], &sorted.mults()[1]) {
        for i in 1..=8 {
            for j in (i + 1)..=8 {
                let t = l.pair_excess(i, j)?;
                if t.is_positive() {
                    out.curves.push((MinusOneCurveId::new(0, i, j)?, t));
                }
            }
        }
        out.curves.sort_by_key(|(id, _)| *id);
    }
    Ok(out)
}

/// All `C_a^{b,c}` with `t_a^{b,c} = -L.C_a^{b,c} > 0`, for a class without
/// fixed components, sorted by (a, b, c).
///
/// Enumeration runs over `0 <= a <= 4d`; since `K = L.D_Q8 >= 1` on
/// fixed-free non-standard classes and `t` decreases linearly in `a` with
/// slope `-K` (per parity), every positive value occurs below the bound. A
/// trailing window is asserted non-positive to guard the derivation.
pub fn enumerate_base_curves<T: Int>(l: &Divisor<T>) -> Result<Vec<(MinusOneCurveId, T)>> {
    let k = l.anticanonical_degree();
    if !l.is_standard_form() && !k.is_positive() {
        return Err(Error::Internal(format!(
            "fixed-free non-standard class {l} with K = {k} <= 0"
        )));
    }
    let d = l
        .degree()
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("degree of {l} out of range")))?;
    let a_max = 4 * d;
    let mut curves = Vec::new();
    for a in 0..=a_max {
        for b in 1..=8 {
            for c in (b + 1)..=8 {
                let id = MinusOneCurveId::new(a, b, c)?;
                let t = -l.intersect(&id.curve_class());
                if t.is_positive() {
                    if a + 4 > a_max {
                        return Err(Error::Internal(format!(
                            "positive t_{a}^{{{b},{c}}} inside the guard window of {l}"
                        )));
                    }
                    curves.push((id, t));
                }
            }
        }
    }
    curves.sort_by_key(|(id, _)| *id);
    Ok(curves)
}

/// The complete base locus of a non-empty user-facing class.
pub fn base_locus<T: Int>(l: &Divisor<T>) -> Result<BaseLocusResult<T>> {
    let (fixed, residual) = fixed_components(l)?;
    let trace_len = reduce_to_standard(l).trace.len();
    let mut out = if residual.is_standard_form() {
        base_locus_standard(&residual)?
    } else {
        let curves = enumerate_base_curves(&residual)?;
        let mut out = empty_result(residual.clone(), 0);
        out.curves = curves;
        let k = residual.anticanonical_degree();
        if k.is_zero() {
            // K = 0 fixed-free classes are the Cremona-fixed L3(2m; m^8),
            // which is standard; reaching here contradicts K-invariance.
            return Err(Error::Internal(format!(
                "non-standard fixed-free residual {residual} with K = 0"
            )));
        }
        if k == T::one() {
            let red = reduce_to_standard(&residual);
            let (sorted, _) = red.sorted_end();
            let m = match_point_family(&sorted).ok_or_else(|| {
                Error::Internal(format!(
                    "K = 1 residual {residual} did not reduce to L3(2m; m^7, m-1)"
                ))
            })?;
            let spec = full_multiplicity_slots(&red.end, &m)?;
            out.point = Some((m, spec));
        }
        out
    };
    out.fixed = fixed;
    out.residual = residual;
    out.trace_len = trace_len;
    Ok(out)
}

/// Cross-check of the base-curve computation along the Cremona reduction.
///
/// Starting from the excess lines of the standard end class, the multiset
/// is carried backward one step at a time. A step based at `B` moves every
/// identifier by the (-1)-curve action with its multiplicity unchanged (the
/// pairing is invariant there), except for the six edge lines of `B`, which
/// the transformation surgers: their excess shifts by the step's degree
/// shift `k`, so they are re-read from the class at that level. The final
/// multiset must reproduce [`enumerate_base_curves`] exactly. Input must be
/// free of fixed components.
pub fn transport_cross_check<T: Int>(l: &Divisor<T>) -> Result<bool> {
    let red = reduce_to_standard(l);
    if red.degree_went_negative || !red.stripped.is_empty() {
        return Err(Error::Internal(format!(
            "transport_cross_check requires a fixed-component-free class, got {l}"
        )));
    }
    // The class before each step, in order.
    let mut levels = vec![l.clone()];
    for step in &red.trace.steps {
        let next = step.apply_divisor(levels.last().expect("nonempty"));
        levels.push(next);
    }

    let mut multiset: Vec<(MinusOneCurveId, T)> = Vec::new();
    for i in 1..=8 {
        for j in (i + 1)..=8 {
            let t = red.end.pair_excess(i, j)?;
            if t.is_positive() {
                multiset.push((MinusOneCurveId::new(0, i, j)?, t));
            }
        }
    }
    for (k, step) in red.trace.steps.iter().enumerate().rev() {
        let below = &levels[k];
        let base = step.base();
        let is_edge = |id: &MinusOneCurveId| {
            let (b, c) = id.pair();
            id.level() == 0 && base.contains(&b) && base.contains(&c)
        };
        let mut next: Vec<(MinusOneCurveId, T)> = multiset
            .iter()
            .filter(|(id, _)| !is_edge(id))
            .map(|(id, t)| (step.apply_minus_one(*id), t.clone()))
            .collect();
        for (x, &b) in base.iter().enumerate() {
            for &c in &base[(x + 1)..] {
                let t = below.pair_excess(b, c)?;
                if t.is_positive() {
                    next.push((MinusOneCurveId::new(0, b, c)?, t));
                }
            }
        }
        multiset = next;
    }
    multiset.sort_by_key(|(id, _)| *id);
    let direct = enumerate_base_curves(l)?;
    Ok(multiset == direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Curve;

    type D = Divisor<i64>;

    fn div(d: i64, m: &[i64]) -> D {
        D::new(d, m).unwrap()
    }

    fn id(a: u64, b: usize, c: usize) -> MinusOneCurveId {
        MinusOneCurveId::new(a, b, c).unwrap()
    }

    #[test]
    fn standard_dq8_family() {
        for m in 1..=5 {
            let out = base_locus_standard(&div(2 * m, &[m; 8])).unwrap();
            assert_eq!(out.dq8_mult, m);
            assert!(out.curves.is_empty());
            assert!(out.point.is_none());
        }
    }

    #[test]
    fn standard_excess_lines() {
        let out = base_locus_standard(&div(3, &[3, 3])).unwrap();
        assert_eq!(out.curves, vec![(id(0, 1, 2), 3)]);
        assert_eq!(out.dq8_mult, 0);
    }

    #[test]
    fn standard_base_point_free() {
        let out = base_locus_standard(&div(4, &[2, 2, 2, 2, 2, 2, 1, 1])).unwrap();
        assert!(out.fixed.is_empty());
        assert!(out.curves.is_empty());
        assert_eq!(out.dq8_mult, 0);
        assert!(out.point.is_none());
    }

    #[test]
    fn quartics_with_eight_double_points_are_the_dq8_square() {
        // L3(4;2^8) is the m = 2 member of the D_Q8 family (spanned by the
        // products of the two quadrics through the points), not base point
        // free.
        let out = base_locus_standard(&div(4, &[2; 8])).unwrap();
        assert_eq!(out.dq8_mult, 2);
        assert!(out.curves.is_empty());
    }

    #[test]
    fn standard_point_family() {
        for m in 1..=3 {
            let mut ms = [m; 8];
            ms[7] = m - 1;
            let out = base_locus_standard(&div(2 * m, &ms)).unwrap();
            let (mult, spec) = out.point.unwrap();
            assert_eq!(mult, m);
            assert_eq!(spec.seven(), [1, 2, 3, 4, 5, 6, 7]);
        }
    }

    #[test]
    fn enumerate_matches_the_worked_example() {
        let residual = div(5, &[4, 3, 3, 3, 2, 1, 1, 1]);
        let curves = enumerate_base_curves(&residual).unwrap();
        assert_eq!(
            curves,
            vec![
                (id(0, 1, 2), 2),
                (id(0, 1, 3), 2),
                (id(0, 1, 4), 2),
                (id(0, 1, 5), 1),
                (id(0, 2, 3), 1),
                (id(0, 2, 4), 1),
                (id(0, 3, 4), 1),
                (id(1, 6, 7), 1),
                (id(1, 6, 8), 1),
                (id(1, 7, 8), 1),
            ]
        );
    }

    #[test]
    fn enumerate_on_standard_classes_only_yields_lines() {
        let curves = enumerate_base_curves(&div(3, &[3, 3])).unwrap();
        assert!(curves.iter().all(|(id, _)| id.level() == 0));
        assert_eq!(curves, vec![(id(0, 1, 2), 3)]);
    }

    #[test]
    fn full_base_locus_of_the_worked_example() {
        let l = div(15, &[13, 10, 9, 7, 6, 3, 3, 2]);
        let out = base_locus(&l).unwrap();
        assert_eq!(out.fixed.items.len(), 4);
        assert_eq!(out.curves.len(), 10);
        assert_eq!(out.dq8_mult, 0);
        assert!(out.point.is_none());
        assert_eq!(out.residual, div(5, &[4, 3, 3, 3, 2, 1, 1, 1]));
        assert_eq!(out.trace_len, 3);
        // Every reported multiplicity matches the pairing exactly.
        for (id, mult) in &out.curves {
            assert_eq!(out.residual.intersect(&id.curve_class()), -mult);
        }
    }

    #[test]
    fn full_base_locus_double_plane() {
        let out = base_locus(&div(2, &[2, 2, 2])).unwrap();
        assert_eq!(out.fixed.items, vec![(div(1, &[1, 1, 1]), 2)]);
        assert!(out.curves.is_empty());
        assert_eq!(out.dq8_mult, 0);
        assert!(out.point.is_none());
    }

    #[test]
    fn full_base_locus_point_family() {
        for m in 1..=2 {
            let mut ms = [m; 8];
            ms[7] = m - 1;
            let out = base_locus(&div(2 * m, &ms)).unwrap();
            let (mult, _) = out.point.unwrap();
            assert_eq!(mult, m);
            assert!(out.curves.is_empty());
        }
    }

    #[test]
    fn point_term_on_a_nonstandard_k1_class() {
        // Cremona image of L3(2; 1^7): still fixed-free with K = 1.
        let base = div(2, &[1, 1, 1, 1, 1, 1, 1, 0]);
        let step = crate::cremona::CremonaStep::new([5, 6, 7, 8]).unwrap();
        let l = step.apply_divisor(&base);
        assert_eq!(l, div(3, &[1, 1, 1, 1, 2, 2, 2, 1]));
        assert!(!l.is_standard_form());
        let out = base_locus(&l).unwrap();
        let (mult, _) = out.point.unwrap();
        assert_eq!(mult, 1);
        assert_eq!(l.anticanonical_degree(), 1);
    }

    #[test]
    fn transport_cross_check_examples() {
        assert!(transport_cross_check(&div(5, &[4, 3, 3, 3, 2, 1, 1, 1])).unwrap());
        assert!(transport_cross_check(&div(4, &[2; 8])).unwrap());
        assert!(transport_cross_check(&div(3, &[3, 3])).unwrap());
    }

    #[test]
    fn dq8_case_has_k_zero() {
        for m in 1..=5 {
            let l = div(2 * m, &[m; 8]);
            let out = base_locus(&l).unwrap();
            assert_eq!(out.dq8_mult, m);
            assert_eq!(out.residual.anticanonical_degree(), 0);
        }
        // Sanity: D_Q8 really is the pairing witness for K.
        let l = div(6, &[3; 8]);
        assert_eq!(l.intersect(&Curve::anticanonical()), 0);
    }
}
