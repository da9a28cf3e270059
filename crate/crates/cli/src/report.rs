//! The JSON report emitted by every subcommand under `--json`.
//!
//! One schema for all commands; sections a command does not compute are
//! `null`. Field order is fixed by the struct, and curve lists are sorted,
//! so output is stable under re-run.

use fatpoints::{BaseLocusResult, DivisorClass};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassJson {
    pub d: i64,
    pub m: [i64; 8],
}

impl From<&DivisorClass> for ClassJson {
    fn from(l: &DivisorClass) -> Self {
        ClassJson { d: *l.degree(), m: *l.mults() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedJson {
    pub class: ClassJson,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveJson {
    pub a: u64,
    pub b: usize,
    pub c: usize,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointJson {
    pub mult: i64,
    pub seven: [usize; 7],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub system: ClassJson,
    pub h0: Option<i64>,
    pub fixed: Option<Vec<FixedJson>>,
    pub curves: Option<Vec<CurveJson>>,
    pub dq8_mult: Option<i64>,
    pub point: Option<PointJson>,
    pub trace_len: Option<usize>,
}

impl Report {
    pub fn new(system: &DivisorClass) -> Self {
        Report {
            system: system.into(),
            h0: None,
            fixed: None,
            curves: None,
            dq8_mult: None,
            point: None,
            trace_len: None,
        }
    }

    /// The full report for a base-locus computation.
    pub fn from_base_locus(system: &DivisorClass, h0: i64, out: &BaseLocusResult<i64>) -> Self {
        let fixed = out
            .fixed
            .items
            .iter()
            .map(|(class, mult)| FixedJson { class: class.into(), mult: *mult })
            .collect();
        let mut curves: Vec<CurveJson> = out
            .curves
            .iter()
            .map(|(id, mult)| {
                let (b, c) = id.pair();
                CurveJson { a: id.level(), b, c, mult: *mult }
            })
            .collect();
        curves.sort_by_key(|e| (e.a, e.b, e.c));
        Report {
            system: system.into(),
            h0: Some(h0),
            fixed: Some(fixed),
            curves: Some(curves),
            dq8_mult: Some(out.dq8_mult),
            point: out.point.as_ref().map(|(mult, spec)| PointJson {
                mult: *mult,
                seven: spec.seven(),
            }),
            trace_len: Some(out.trace_len),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
