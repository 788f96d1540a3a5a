//! Entry constraints on `g[p]` for arrangements without edge sharing.

use num_traits::Zero;
use serde::Serialize;

use super::MatrixBasis;
use crate::arrangement::TriangleArrangement;
use crate::error::Result;
use crate::exactla::Rational;

/// `M[i][a] + M[b][k] = 0`, positions 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KeyRelation {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// Relations forced by a monomial `x_a x_j x_k` that arises only from the
/// isolated vertices `i` (triangle `{i, j, k}`) and `b` (triangle `{j, a, b}`).
/// Returns nothing when the arrangement has edge sharing.
pub fn key_relations(t: &TriangleArrangement) -> Vec<KeyRelation> {
    if t.has_edge_sharing() {
        return Vec::new();
    }
    let deg = t.degrees();
    let isolated = |v: usize| deg[v - 1] == 1;
    let covers = |u: usize, v: usize| t.triangles().iter().any(|tr| tr.contains(&u) && tr.contains(&v));
    let mut out = Vec::new();
    for tr in t.triangles() {
        for (pos, &i) in tr.iter().enumerate() {
            if !isolated(i) {
                continue;
            }
            let others = [tr[(pos + 1) % 3], tr[(pos + 2) % 3]];
            for (j, k) in [(others[0], others[1]), (others[1], others[0])] {
                for u in t.triangles().iter().filter(|u| u.contains(&j) && *u != tr) {
                    let rest: Vec<usize> = u.iter().copied().filter(|&v| v != j).collect();
                    for (a, b) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                        // a triangle on {a, k} would be a third source of the monomial
                        if isolated(b) && !covers(a, k) {
                            out.push(KeyRelation {
                                first: (i, a),
                                second: (b, k),
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// Every support entry `(i, a)` off black-circle rows has
    /// `d(i, a) ∈ {0, 2}`; `None` under edge sharing.
    pub support_ok: Option<bool>,
    /// `M_ii + M_jj + M_kk` is the same for every triangle.
    pub trace_ok: bool,
    pub key_relations: usize,
    pub key_relations_ok: bool,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.support_ok != Some(false) && self.trace_ok && self.key_relations_ok
    }
}

/// Checks the support, trace and key-relation constraints on a basis of
/// `g[p]`. Rows of black circles are unconstrained and skipped.
pub fn structure_check(t: &TriangleArrangement, b: &MatrixBasis) -> Result<StructureReport> {
    let n = t.n();
    let deg = t.degrees();
    let dist: Vec<Vec<Option<usize>>> = (1..=n).map(|i| t.distances_from(i)).collect::<Result<_>>()?;
    let support_ok = (!t.has_edge_sharing()).then(|| {
        b.support()
            .into_iter()
            .all(|(i, a)| deg[i] == 0 || (deg[a] > 0 && matches!(dist[i][a + 1], Some(0) | Some(2))))
    });
    let trace_ok = b.elements().iter().all(|e| {
        let mut sums = t
            .triangles()
            .iter()
            .map(|tr| tr.iter().map(|&v| e.get(v - 1, v - 1).clone()).sum::<Rational>());
        match sums.next() {
            Some(first) => sums.all(|s| s == first),
            None => true,
        }
    });
    let rel = key_relations(t);
    let key_relations_ok = b.elements().iter().all(|e| {
        rel.iter().all(|r| {
            let x = e.get(r.first.0 - 1, r.first.1 - 1) + e.get(r.second.0 - 1, r.second.1 - 1);
            x.is_zero()
        })
    });
    Ok(StructureReport {
        support_ok,
        trace_ok,
        key_relations: rel.len(),
        key_relations_ok,
    })
}
