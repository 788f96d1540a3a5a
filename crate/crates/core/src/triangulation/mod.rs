//! Triangulations of convex polygons and their reduction to arrangements.

mod classify;
mod reduce;

pub use classify::{classify, ClassReport, Classification, Discrepancy, TableRow, REFERENCE_ROWS};
pub use reduce::{reduce, reduce_arrangement, reduce_with_shears, reduction_soundness_check, Reduction, Shear};

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Triangle, TriangleArrangement};
use crate::error::{Error, Result};

/// Largest polygon whose triangulation count fits in a `u64`.
pub const MAX_POLYGON: usize = 38;

/// A triangulation of the convex polygon with vertices `1..=n` in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PolygonTriangulation {
    n: usize,
    triangles: Vec<Triangle>,
}

fn is_side(n: usize, a: usize, b: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    b - a == 1 || (a == 1 && b == n)
}

fn crosses(d: [usize; 2], e: [usize; 2]) -> bool {
    let ([a, b], [c, f]) = (d, e);
    (a < c && c < b && b < f) || (c < a && a < f && f < b)
}

impl PolygonTriangulation {
    /// Validates `n − 2` triangles with pairwise non-crossing diagonals
    /// covering every side.
    pub fn new(n: usize, triangles: impl IntoIterator<Item = Triangle>) -> Result<Self> {
        if n < 3 {
            return Err(Error::SizeOutOfRange { kind: "polygon", n });
        }
        let a = TriangleArrangement::new(n, triangles)?;
        let triangles = a.triangles().to_vec();
        let bad = |m: &str| Err(Error::Parse(format!("not a triangulation of the {n}-gon: {m}")));
        if triangles.len() != n - 2 {
            return bad("wrong triangle count");
        }
        let t = PolygonTriangulation { n, triangles };
        let diags = t.diagonals();
        for (i, d) in diags.iter().enumerate() {
            if diags[i + 1..].iter().any(|e| crosses(*d, *e)) {
                return bad("crossing diagonals");
            }
        }
        let sides: BTreeSet<[usize; 2]> = t
            .edges()
            .filter(|&[a, b]| is_side(n, a, b))
            .collect();
        if sides.len() != n {
            return bad("uncovered side");
        }
        Ok(t)
    }

    /// The triangulation whose diagonals are `diagonals`.
    pub fn from_diagonals(n: usize, diagonals: &[[usize; 2]]) -> Result<Self> {
        let edge: BTreeSet<[usize; 2]> = diagonals
            .iter()
            .map(|&[a, b]| [a.min(b), a.max(b)])
            .chain((1..=n).map(|i| {
                let j = i % n + 1;
                [i.min(j), i.max(j)]
            }))
            .collect();
        let has = |a: usize, b: usize| edge.contains(&[a, b]);
        let mut tris = Vec::new();
        for &[a, b] in &edge {
            for c in b + 1..=n {
                if has(a, c) && has(b, c) {
                    tris.push([a, b, c]);
                }
            }
        }
        Self::new(n, tris)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    fn edges(&self) -> impl Iterator<Item = [usize; 2]> + '_ {
        self.triangles
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [b, c], [a, c]])
    }

    /// Sorted diagonals `[a, b]` with `a < b`.
    pub fn diagonals(&self) -> Vec<[usize; 2]> {
        let set: BTreeSet<[usize; 2]> = self.edges().filter(|&[a, b]| !is_side(self.n, a, b)).collect();
        set.into_iter().collect()
    }

    pub fn to_arrangement(&self) -> TriangleArrangement {
        TriangleArrangement::new(self.n, self.triangles.iter().copied()).expect("validated")
    }

    /// Image under `v ↦ v + r` (mod n), followed by `v ↦ −v` when `reflect`.
    pub fn transformed(&self, r: usize, reflect: bool) -> Self {
        let n = self.n;
        let f = |v: usize| {
            let w = (v - 1 + r) % n;
            let w = if reflect { (n - w) % n } else { w };
            w + 1
        };
        let mut triangles: Vec<Triangle> = self
            .triangles
            .iter()
            .map(|t| {
                let mut u = t.map(f);
                u.sort_unstable();
                u
            })
            .collect();
        triangles.sort_unstable();
        PolygonTriangulation { n, triangles }
    }

    /// Least diagonal set over the dihedral orbit.
    pub fn dihedral_key(&self) -> Vec<[usize; 2]> {
        (0..self.n)
            .flat_map(|r| [false, true].map(|s| self.transformed(r, s).diagonals()))
            .min()
            .expect("orbit is nonempty")
    }
}

fn catalan_table() -> Vec<u64> {
    let mut c = vec![1u64];
    for k in 1..=(MAX_POLYGON - 2) {
        let next: u128 = (0..k).map(|i| c[i] as u128 * c[k - 1 - i] as u128).sum();
        c.push(u64::try_from(next).expect("table fits in u64"));
    }
    c
}

/// `C_k` for `k ≤ MAX_POLYGON − 2`.
pub fn catalan(k: usize) -> Option<u64> {
    catalan_table().get(k).copied()
}

fn check_polygon(n: usize) -> Result<()> {
    if (3..=MAX_POLYGON).contains(&n) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange { kind: "polygon", n })
    }
}

/// Builds the `idx`-th triangulation of the polygon on `verts`; the triangle
/// on the side `(first, last)` is chosen first.
fn unrank(c: &[u64], verts: &[usize], mut idx: u64, out: &mut Vec<Triangle>) {
    let m = verts.len();
    if m < 3 {
        return;
    }
    let (a, b) = (verts[0], verts[m - 1]);
    for k in 1..m - 1 {
        let right = c[m - k - 2];
        let count = c[k - 1] * right;
        if idx < count {
            unrank(c, &verts[..=k], idx / right, out);
            unrank(c, &verts[k..], idx % right, out);
            out.push([a, verts[k], b]);
            return;
        }
        idx -= count;
    }
    unreachable!("index below the Catalan number");
}

/// The `idx`-th triangulation in enumeration order.
pub fn triangulation_at(n: usize, idx: u64) -> Result<PolygonTriangulation> {
    check_polygon(n)?;
    let c = catalan_table();
    if idx >= c[n - 2] {
        return Err(Error::SizeOutOfRange { kind: "triangulation index", n: idx as usize });
    }
    let verts: Vec<usize> = (1..=n).collect();
    let mut tris = Vec::with_capacity(n - 2);
    unrank(&c, &verts, idx, &mut tris);
    for t in &mut tris {
        t.sort_unstable();
    }
    tris.sort_unstable();
    Ok(PolygonTriangulation { n, triangles: tris })
}

/// All `C_{n−2}` triangulations, generated lazily.
pub fn enumerate_triangulations(n: usize) -> Result<impl Iterator<Item = PolygonTriangulation>> {
    check_polygon(n)?;
    let total = catalan(n - 2).expect("checked");
    Ok((0..total).map(move |i| triangulation_at(n, i).expect("index in range")))
}

/// One representative per dihedral orbit, ordered by dihedral key. Each
/// representative is the orbit member whose diagonals form the key.
pub fn dihedral_classes(n: usize) -> Result<Vec<PolygonTriangulation>> {
    check_polygon(n)?;
    let total = catalan(n - 2).expect("checked");
    let keys: BTreeSet<Vec<[usize; 2]>> = (0..total)
        .into_par_iter()
        .map(|i| triangulation_at(n, i).expect("index in range").dihedral_key())
        .collect();
    keys.iter().map(|k| PolygonTriangulation::from_diagonals(n, k)).collect()
}

#[cfg(test)]
mod tests;
