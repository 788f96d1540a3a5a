//! Gluing two arrangements at a vertex, with a checker for the hypotheses
//! under which the result is prehomogeneous.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::{attach, canonical_form, Triangle, TriangleArrangement};
use crate::error::{Error, Result};
use crate::exactla::{Rational, RationalMatrix, SparseMatrix};
use crate::liealg::{bracket_closure_check, g_basis, BasisLabel, MatrixBasis};
use crate::poly::{cubic_of, SparsePolynomial};
use crate::prehomog::{is_prehomogeneous, RankConfig};
use crate::records::ClassificationRecord;

/// One linear relation `Σ c · M[i][j] = 0`, positions 1-based.
pub type EntryRelation = Vec<((usize, usize), Rational)>;

/// Linear constraints cutting a subalgebra `h` out of `g[p]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubalgebraSpec {
    /// Entries forced to zero.
    pub zeros: Vec<(usize, usize)>,
    pub relations: Vec<EntryRelation>,
}

impl SubalgebraSpec {
    /// No constraints: `h = g[p]`.
    pub fn full() -> Self {
        Self::default()
    }

    pub fn zeros(entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        SubalgebraSpec {
            zeros: entries.into_iter().collect(),
            relations: Vec::new(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.zeros.is_empty() && self.relations.is_empty()
    }

    /// Parses `"i,j;i,j"`; the empty string is the full algebra.
    pub fn parse_zeros(s: &str) -> Result<Self> {
        let mut zeros = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (i, j) = part
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected i,j in {part:?}")))?;
            let num = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            };
            zeros.push((num(i)?, num(j)?));
        }
        Ok(Self::zeros(zeros))
    }

    fn all_relations(&self) -> impl Iterator<Item = EntryRelation> + '_ {
        self.zeros
            .iter()
            .map(|&pos| vec![(pos, Rational::one())])
            .chain(self.relations.iter().cloned())
    }
}

impl fmt::Display for SubalgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.write_str("g");
        }
        let mut parts: Vec<String> = self.zeros.iter().map(|(i, j)| format!("M{i},{j}=0")).collect();
        for r in &self.relations {
            let terms: Vec<String> = r.iter().map(|((i, j), c)| format!("{c}*M{i},{j}")).collect();
            parts.push(format!("{}=0", terms.join("+")));
        }
        write!(f, "h[{}]", parts.join("; "))
    }
}

/// Basis of `{M ∈ g[p] : spec holds}`.
pub fn subalgebra_basis(p: &SparsePolynomial, spec: &SubalgebraSpec) -> Result<MatrixBasis> {
    let g = g_basis(p)?;
    if spec.is_full() {
        return Ok(g);
    }
    let n = g.n();
    let mut rows = Vec::new();
    for rel in spec.all_relations() {
        let mut row = vec![Rational::zero(); g.dim()];
        for ((i, j), c) in &rel {
            for v in [*i, *j] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            for (k, e) in g.elements().iter().enumerate() {
                row[k] += c * e.get(i - 1, j - 1);
            }
        }
        rows.push(row);
    }
    let kernel = SparseMatrix::from_dense(&RationalMatrix::from_rows(rows)?).nullspace();
    let elements = kernel
        .iter()
        .map(|c| {
            let mut m = RationalMatrix::zeros(n, n);
            for (k, e) in g.elements().iter().enumerate() {
                if c.0[k].is_zero() {
                    continue;
                }
                for (r, s, v) in e.nonzero_entries() {
                    m.add_at(r, s, &(v * &c.0[k]));
                }
            }
            m
        })
        .collect();
    let h = MatrixBasis::new(n, elements, BasisLabel::Sub(spec.to_string()))?;
    if !bracket_closure_check(&h) {
        return Err(Error::NotClosed);
    }
    Ok(h)
}

/// A triangle `{v, a, ā}` with `a` isolated and `x_ā` invariant under `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QualifyingTriangle {
    pub triangle: Triangle,
    pub isolated: usize,
    pub partner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub vertex: usize,
    pub subalgebra: String,
    pub dim_h: usize,
    /// `h` acts prehomogeneously.
    pub cond1: bool,
    /// `x_v` is a relative invariant of `h`.
    pub cond2: bool,
    pub cond3: Vec<QualifyingTriangle>,
    pub no_edge_sharing: bool,
}

impl SideReport {
    pub fn passes(&self) -> bool {
        self.cond1 && self.cond2 && !self.cond3.is_empty() && self.no_edge_sharing
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub sides: [SideReport; 2],
    /// Every condition holds on both sides.
    pub applies: bool,
}

fn side_report(a: &TriangleArrangement, v: usize, spec: &SubalgebraSpec, cfg: &RankConfig) -> Result<SideReport> {
    let star = a.star(v)?;
    let h = subalgebra_basis(&cubic_of(a), spec)?;
    let deg = a.degrees();
    let mut cond3 = Vec::new();
    for t in &star.triangles {
        let rest: Vec<usize> = t.iter().copied().filter(|&u| u != v).collect();
        for (x, y) in [(rest[0], rest[1]), (rest[1], rest[0])] {
            if deg[x - 1] == 1 && h.row_is_diagonal(y - 1) {
                cond3.push(QualifyingTriangle {
                    triangle: *t,
                    isolated: x,
                    partner: y,
                });
            }
        }
    }
    Ok(SideReport {
        vertex: v,
        subalgebra: spec.to_string(),
        dim_h: h.dim(),
        cond1: h.dim() > 0 && is_prehomogeneous(&h, cfg)?.is_pv(),
        cond2: h.row_is_diagonal(v - 1),
        cond3,
        no_edge_sharing: !a.has_edge_sharing(),
    })
}

pub fn check_hypotheses(
    a1: &TriangleArrangement,
    v1: usize,
    spec1: &SubalgebraSpec,
    a2: &TriangleArrangement,
    v2: usize,
    spec2: &SubalgebraSpec,
    cfg: &RankConfig,
) -> Result<HypothesisReport> {
    let s1 = side_report(a1, v1, spec1, &cfg.for_task(1))?;
    let s2 = side_report(a2, v2, spec2, &cfg.for_task(2))?;
    let applies = s1.passes() && s2.passes();
    Ok(HypothesisReport { sides: [s1, s2], applies })
}

/// Entry checks on `g` of the glued arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossBlockCheck {
    /// Pairs `(i, a)` from the two stars at the glued vertex.
    pub pairs: usize,
    /// `M[i][ā] + M[a][ī] = 0` for every pair and every element.
    pub pairing_ok: bool,
    /// Entries linking the two sides sit only between neighbours of the
    /// glued vertex.
    pub support_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttachOutcome {
    pub hypotheses: HypothesisReport,
    pub record: ClassificationRecord,
    /// `None` when either input has edge sharing.
    pub cross_block: Option<CrossBlockCheck>,
    /// False only if the hypotheses hold and the verdict is not PV.
    pub consistent: bool,
}

fn cross_block_check(t: &TriangleArrangement, n1: usize, v: usize, g: &MatrixBasis) -> Result<CrossBlockCheck> {
    let side = |u: usize| if u == v { 0 } else if u <= n1 { 1 } else { 2 };
    let star = t.star(v)?;
    let ordered = |s: u8| -> Vec<(usize, usize)> {
        star.triangles
            .iter()
            .filter(|tr| tr.iter().any(|&u| side(u) == s))
            .flat_map(|tr| {
                let r: Vec<usize> = tr.iter().copied().filter(|&u| u != v).collect();
                [(r[0], r[1]), (r[1], r[0])]
            })
            .collect()
    };
    let (left, right) = (ordered(1), ordered(2));
    let mut pairing_ok = true;
    for &(i, ib) in &left {
        for &(a, ab) in &right {
            pairing_ok &= g
                .elements()
                .iter()
                .all(|e| (e.get(i - 1, ab - 1) + e.get(a - 1, ib - 1)).is_zero());
        }
    }
    let dist = t.distances_from(v)?;
    let support_ok = g.support().into_iter().all(|(r, c)| {
        let (r, c) = (r + 1, c + 1);
        let (sr, sc) = (side(r), side(c));
        sr == 0 || sc == 0 || sr == sc || (dist[r] == Some(1) && dist[c] == Some(1))
    });
    Ok(CrossBlockCheck {
        pairs: left.len() * right.len(),
        pairing_ok,
        support_ok,
    })
}

/// Glues the two arrangements, checks the hypotheses and decides the result.
pub fn attach_and_verify(
    a1: &TriangleArrangement,
    v1: usize,
    spec1: &SubalgebraSpec,
    a2: &TriangleArrangement,
    v2: usize,
    spec2: &SubalgebraSpec,
    cfg: &RankConfig,
) -> Result<AttachOutcome> {
    let hypotheses = check_hypotheses(a1, v1, spec1, a2, v2, spec2, cfg)?;
    let t = attach(a1, v1, a2, v2)?;
    let source = format!("attach:{}@{}+{}@{}", canonical_form(a1)?.key(), v1, canonical_form(a2)?.key(), v2);
    let record = ClassificationRecord::analyze(&t, &cfg.for_task(0), source)?;
    let cross_block = if a1.has_edge_sharing() || a2.has_edge_sharing() {
        None
    } else {
        Some(cross_block_check(&t, a1.n(), v1, &g_basis(&cubic_of(&t))?)?)
    };
    let consistent = !hypotheses.applies || record.is_pv();
    Ok(AttachOutcome {
        hypotheses,
        record,
        cross_block,
        consistent,
    })
}

#[cfg(test)]
mod tests;
