use serde::Serialize;

use super::{
    check_determinant, expected_basis_pattern, expected_dimension, expected_dual_pv, expected_invariants,
    expected_solvable, make, DeterminantCheck, FamilyKind, Side,
};
use crate::error::Result;
use crate::exactla::RationalMatrix;
use crate::liealg::{g_basis, is_solvable, structure_check, SpanReducer, StructureReport};
use crate::poly::cubic_of;
use crate::prehomog::{is_dual_prehomogeneous, is_prehomogeneous, relative_invariant_character, transposed, RankConfig, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub side: Side,
    pub degree: u32,
    pub polynomial: String,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub kind: FamilyKind,
    pub vertices: usize,
    pub triangles: usize,
    pub dim_g: usize,
    pub expected_dim: usize,
    pub pv: Verdict,
    pub error_bound: Option<String>,
    pub dual_pv: Verdict,
    pub expected_dual_pv: Option<bool>,
    pub invariants: Vec<InvariantCheck>,
    /// Span equality with the displayed generators; `None` without a pattern.
    pub pattern_matches: Option<bool>,
    pub structure: Option<StructureReport>,
    pub solvable: bool,
    pub expected_solvable: Option<bool>,
    pub determinant: Option<DeterminantCheck>,
    pub passed: bool,
}

impl FamilyReport {
    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut f = Vec::new();
        if self.dim_g != self.expected_dim {
            f.push("dimension");
        }
        if !self.pv.is_pv() {
            f.push("pv");
        }
        if self.expected_dual_pv.is_some_and(|e| e != self.dual_pv.is_pv()) {
            f.push("dual_pv");
        }
        if !self.invariants.iter().all(|i| i.passes) {
            f.push("invariants");
        }
        if self.pattern_matches == Some(false) {
            f.push("pattern");
        }
        if self.structure.as_ref().is_some_and(|s| !s.ok()) {
            f.push("structure");
        }
        if self.expected_solvable.is_some_and(|e| e != self.solvable) {
            f.push("solvable");
        }
        if self.determinant.as_ref().is_some_and(|d| !d.holds) {
            f.push("determinant");
        }
        f
    }
}

/// Whether two lists of matrices span the same space.
fn same_span(a: &[RationalMatrix], b: &[RationalMatrix], n: usize) -> bool {
    let ra = SpanReducer::new(n * n, a.iter().map(|m| m.as_flat().to_vec()));
    let rb = SpanReducer::new(n * n, b.iter().map(|m| m.as_flat().to_vec()));
    ra.rank() == rb.rank() && b.iter().all(|m| ra.contains(m.as_flat())) && a.iter().all(|m| rb.contains(m.as_flat()))
}

/// Runs every oracle for one family instance.
pub fn verify_family(kind: &FamilyKind, cfg: &RankConfig) -> Result<FamilyReport> {
    let a = make(kind)?;
    let p = cubic_of(&a);
    let g = g_basis(&p)?;
    let gt = transposed(&g);
    let v = is_prehomogeneous(&g, cfg)?;
    let d = is_dual_prehomogeneous(&g, cfg)?;

    let invariants = expected_invariants(kind)?
        .into_iter()
        .map(|inv| {
            let basis = match inv.side {
                Side::Primal => &g,
                Side::Dual => &gt,
            };
            let r = relative_invariant_character(&inv.polynomial, basis)?;
            Ok(InvariantCheck {
                name: inv.name,
                side: inv.side,
                degree: inv.polynomial.degree().unwrap_or(0),
                polynomial: inv.polynomial.to_string(),
                passes: r.is_relative_invariant,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pattern_matches = expected_basis_pattern(kind)?.map(|pat| same_span(&pat.generators, g.elements(), g.n()));
    let structure = if a.has_edge_sharing() {
        None
    } else {
        Some(structure_check(&a, &g)?)
    };
    let determinant = check_determinant(kind, cfg, cfg.samples.max(1))?;

    let mut report = FamilyReport {
        kind: *kind,
        vertices: a.n(),
        triangles: a.triangle_count(),
        dim_g: g.dim(),
        expected_dim: expected_dimension(kind)?,
        pv: v.verdict,
        error_bound: v.error_bound_text(),
        dual_pv: d.verdict,
        expected_dual_pv: expected_dual_pv(kind),
        invariants,
        pattern_matches,
        structure,
        solvable: is_solvable(&g),
        expected_solvable: expected_solvable(kind),
        determinant,
        passed: false,
    };
    report.passed = report.failures().is_empty();
    Ok(report)
}
