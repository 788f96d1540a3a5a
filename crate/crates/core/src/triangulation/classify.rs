use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{dihedral_classes, reduce_with_shears};
use crate::arrangement::{canonical_form, CanonicalForm, TriangleArrangement};
use crate::error::{Error, Result};
use crate::prehomog::RankConfig;
use crate::records::ClassificationRecord;

/// Expected `(n, A, B, C)` counts.
pub const REFERENCE_ROWS: [(usize, usize, usize, usize); 7] = [
    (6, 3, 3, 2),
    (7, 4, 2, 2),
    (8, 12, 7, 4),
    (9, 27, 7, 3),
    (10, 82, 26, 9),
    (11, 228, 37, 7),
    (12, 733, 137, 23),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TableRow {
    pub n: usize,
    /// Dihedral classes of triangulations.
    pub count_a: usize,
    /// Isomorphism classes of reduced arrangements.
    pub count_b: usize,
    /// Classes whose `g[p]` is prehomogeneous.
    pub count_c: usize,
}

impl TableRow {
    pub const CSV_HEADER: &'static str = "n,count_a,count_b,count_c";

    pub fn reference(n: usize) -> Option<TableRow> {
        REFERENCE_ROWS
            .iter()
            .find(|r| r.0 == n)
            .map(|&(n, count_a, count_b, count_c)| TableRow {
                n,
                count_a,
                count_b,
                count_c,
            })
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.n, self.count_a, self.count_b, self.count_c)
    }
}

/// One isomorphism class of reduced arrangements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub key: String,
    /// Dihedral representatives reducing into this class.
    pub members: usize,
    /// Reduction of the first such representative.
    pub example: TriangleArrangement,
    pub record: ClassificationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub expected: TableRow,
    pub got: TableRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub row: TableRow,
    pub classes: Vec<ClassReport>,
    /// Whether every reduction replayed correctly.
    pub reductions_sound: bool,
    /// Present when the row differs from the reference; `classes` then
    /// lists every class with its verdict.
    pub discrepancy: Option<Discrepancy>,
}

/// Reduces every dihedral representative, groups by canonical form and
/// tests each class on its canonical arrangement. Task ids follow the
/// canonical order, so the result does not depend on scheduling.
pub fn classify(n: usize, cfg: &RankConfig) -> Result<Classification> {
    if n < 3 {
        return Err(Error::SizeOutOfRange { kind: "polygon", n });
    }
    let reps = dihedral_classes(n)?;
    let reduced: Vec<(CanonicalForm, TriangleArrangement, bool)> = reps
        .par_iter()
        .map(|t| {
            let r = reduce_with_shears(t);
            let sound = r.is_sound();
            Ok((canonical_form(&r.arrangement)?, r.arrangement, sound))
        })
        .collect::<Result<_>>()?;
    let reductions_sound = reduced.iter().all(|r| r.2);

    let mut groups: BTreeMap<CanonicalForm, (usize, TriangleArrangement)> = BTreeMap::new();
    for (cf, a, _) in reduced {
        groups.entry(cf).or_insert((0, a)).0 += 1;
    }
    let classes: Vec<ClassReport> = groups
        .into_iter()
        .enumerate()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, (cf, (members, example)))| {
            let source = format!("triangulation:{n}:{i}");
            let record = ClassificationRecord::analyze(&cf.to_arrangement(), &cfg.for_task(i as u64), source)?;
            Ok(ClassReport {
                key: cf.key(),
                members,
                example,
                record,
            })
        })
        .collect::<Result<_>>()?;

    let row = TableRow {
        n,
        count_a: reps.len(),
        count_b: classes.len(),
        count_c: classes.iter().filter(|c| c.record.is_pv()).count(),
    };
    let discrepancy = TableRow::reference(n)
        .filter(|e| *e != row)
        .map(|expected| Discrepancy { expected, got: row });
    Ok(Classification {
        row,
        classes,
        reductions_sound,
        discrepancy,
    })
}
