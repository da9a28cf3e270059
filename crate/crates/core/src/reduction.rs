//! Reduction to standard form, fixed components and dimension.
//!
//! The algorithm: repeatedly take the four largest multiplicities; while
//! their sum exceeds `2d`, apply the cubic Cremona transformation based at
//! those four points. Each applied step strictly decreases the degree, so
//! the loop terminates in at most `d` steps. Negative multiplicities at the
//! end name fixed components, which are transported back through the trace
//! to recover their classes in the original labels.

use crate::cremona::{sort_descending, top_four_slots, CremonaStep, ReductionTrace};
use crate::error::{Error, Result};
use crate::lattice::Divisor;
use crate::scalar::{add, binom3, Int};

/// Outcome of [`reduce_to_standard`].
#[derive(Debug, Clone)]
pub struct ReductionResult<T> {
    /// The end class, in the original point labels (entries may be
    /// negative; they mark fixed exceptional divisors).
    pub end: Divisor<T>,
    /// The steps applied, in order.
    pub trace: ReductionTrace,
    /// Negative end multiplicities: (point label, multiplicity stripped).
    pub stripped: Vec<(usize, T)>,
    /// True when the degree went negative during the loop; the system is
    /// empty and `end` is the class at the moment of detection.
    pub degree_went_negative: bool,
}

impl<T: Int> ReductionResult<T> {
    /// The end class with multiplicities sorted descending, plus the
    /// witnessing permutation (1-based original labels).
    pub fn sorted_end(&self) -> (Divisor<T>, [usize; 8]) {
        sort_descending(&self.end)
    }
}

/// The fixed surfaces of a linear system, each with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPart<T> {
    pub items: Vec<(Divisor<T>, T)>,
}

impl<T: Int> FixedPart<T> {
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Reduces a class to standard form (up to sorting) by Cremona steps on the
/// four largest multiplicities.
pub fn reduce_to_standard<T: Int>(l: &Divisor<T>) -> ReductionResult<T> {
    let mut cur = l.clone();
    let mut trace = ReductionTrace::default();
    loop {
        if cur.degree().is_negative() {
            return ReductionResult {
                end: cur,
                trace,
                stripped: Vec::new(),
                degree_went_negative: true,
            };
        }
        let top = top_four_slots(&cur);
        let step = CremonaStep::new(top).expect("top slots are distinct labels");
        if step.divisor_shift(&cur).is_negative() {
            cur = step.apply_divisor(&cur);
            trace.steps.push(step);
        } else {
            break;
        }
    }
    let stripped = cur
        .mults()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_negative())
        .map(|(k, m)| (k + 1, -m.clone()))
        .collect();
    ReductionResult {
        end: cur,
        trace,
        stripped,
        degree_went_negative: false,
    }
}

/// Transports a divisor class backward through a trace (steps reversed;
/// each step is an involution).
pub fn transport_divisor_back<T: Int>(c: &Divisor<T>, trace: &ReductionTrace) -> Divisor<T> {
    trace.transport_back(c)
}

/// The class with negative multiplicities clamped to zero.
fn clamp_negatives<T: Int>(l: &Divisor<T>) -> Divisor<T> {
    Divisor::from_parts(
        l.degree().clone(),
        std::array::from_fn(|k| {
            let m = &l.mults()[k];
            if m.is_negative() {
                T::zero()
            } else {
                m.clone()
            }
        }),
    )
}

/// Extracts the fixed components of a non-empty user-facing class and the
/// residual system left after subtracting them.
///
/// Stripping a negative end multiplicity can itself unlock further Cremona
/// steps, so reduction and stripping alternate until the stripped class is
/// standard; each stripped exceptional divisor is transported back through
/// all steps applied before it.
pub fn fixed_components<T: Int>(l: &Divisor<T>) -> Result<(FixedPart<T>, Divisor<T>)> {
    if dimension(l).is_zero() {
        return Err(Error::EmptySystem);
    }
    let mut items: Vec<(Divisor<T>, T)> = Vec::new();
    let mut all_steps = ReductionTrace::default();
    let mut cur = l.clone();
    loop {
        let red = reduce_to_standard(&cur);
        if red.degree_went_negative {
            return Err(Error::Internal(format!(
                "non-empty class {l} ran to negative degree while peeling"
            )));
        }
        all_steps.steps.extend(red.trace.steps.iter().copied());
        for (slot, mult) in &red.stripped {
            let class = transport_divisor_back(
                &Divisor::exceptional(*slot).expect("slot is a valid label"),
                &all_steps,
            );
            if !class.is_user_facing() {
                return Err(Error::Internal(format!(
                    "back-transported fixed component {class} is not effective"
                )));
            }
            match items.iter_mut().find(|(c, _)| *c == class) {
                Some((_, m)) => *m = add(m, mult),
                None => items.push((class, mult.clone())),
            }
        }
        let clamped = clamp_negatives(&red.end);
        let (sorted, _) = sort_descending(&clamped);
        if sorted.is_standard_form() {
            break;
        }
        cur = clamped;
    }
    let mut residual = l.clone();
    for (class, mult) in &items {
        residual = residual.subtract_scaled(class, mult);
    }
    if !residual.is_user_facing() {
        return Err(Error::Internal(format!(
            "residual {residual} has a negative entry"
        )));
    }
    Ok((FixedPart { items }, residual))
}

/// `h^1` of a standard-form class with `0 <= m_1 <= d`:
/// the sum over pairs with excess `t_{i,j} >= 2` of `C(t_{i,j}+1, 3)`.
pub fn h1_standard<T: Int>(l: &Divisor<T>) -> Result<T> {
    if !l.is_standard_form() || l.mults()[0] > *l.degree() {
        return Err(Error::NotStandardForm);
    }
    let two = T::from_int(2);
    let mut acc = T::zero();
    for i in 1..=8 {
        for j in (i + 1)..=8 {
            let t = l.pair_excess(i, j)?;
            if t >= two {
                acc = add(&acc, &binom3(&add(&t, &T::one())));
            }
        }
    }
    Ok(acc)
}

/// `h^0` of a user-facing class (vector-space dimension; 0 means empty).
///
/// Reduce to standard form; a negative end degree means empty. Negative end
/// multiplicities are clamped to zero (stripping a fixed exceptional
/// divisor does not change `h^0`). A clamped class with `m_1 > d` is empty;
/// otherwise `h^0 = chi + h^1`.
pub fn dimension<T: Int>(l: &Divisor<T>) -> T {
    let mut cur = l.clone();
    loop {
        let red = reduce_to_standard(&cur);
        if red.degree_went_negative || red.end.degree().is_negative() {
            return T::zero();
        }
        let clamped = clamp_negatives(&red.end);
        let (sorted, _) = sort_descending(&clamped);
        if !sorted.is_standard_form() {
            // Stripping the negative entries can unlock further steps.
            cur = clamped;
            continue;
        }
        if sorted.mults()[0] > *sorted.degree() {
            return T::zero();
        }
        let h1 = h1_standard(&sorted).expect("sorted class was checked standard");
        return add(&sorted.euler_characteristic(), &h1);
    }
}
