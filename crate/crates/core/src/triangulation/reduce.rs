use std::collections::BTreeSet;

use serde::Serialize;

use super::PolygonTriangulation;
use crate::arrangement::{Triangle, TriangleArrangement};
use crate::exactla::{Rational, RationalMatrix};
use crate::poly::{cubic_of, substitute_linear};

/// One rule application: `kept = {i, j, apex}` with `apex` in no other
/// triangle absorbs `removed = {i, j, absorbed}` under `x_apex = z_apex − z_absorbed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shear {
    pub removed: Triangle,
    pub kept: Triangle,
    pub apex: usize,
    pub absorbed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub input: TriangleArrangement,
    pub arrangement: TriangleArrangement,
    pub steps: Vec<Shear>,
    /// Product of the step matrices; `cubic_of(arrangement) = p(S z)`.
    pub substitution: RationalMatrix,
}

impl Reduction {
    /// Replays the substitution on the input cubic.
    pub fn is_sound(&self) -> bool {
        let p = cubic_of(&self.input);
        match substitute_linear(&p, &self.substitution) {
            Ok(q) => q == cubic_of(&self.arrangement),
            Err(_) => false,
        }
    }
}

fn next_step(tris: &BTreeSet<Triangle>) -> Option<Shear> {
    let count = |v: usize| tris.iter().filter(|t| t.contains(&v)).count();
    let mut best: Option<Shear> = None;
    for &t1 in tris {
        for &k in &t1 {
            if count(k) != 1 {
                continue;
            }
            let [i, j] = {
                let mut o = t1.iter().copied().filter(|&v| v != k);
                [o.next().expect("three vertices"), o.next().expect("three vertices")]
            };
            for &t2 in tris {
                if t2 == t1 || !t2.contains(&i) || !t2.contains(&j) {
                    continue;
                }
                let l = t2.iter().copied().find(|&v| v != i && v != j).expect("three vertices");
                let s = Shear {
                    removed: t2,
                    kept: t1,
                    apex: k,
                    absorbed: l,
                };
                if best.is_none_or(|b| (s.removed, s.kept, s.apex) < (b.removed, b.kept, b.apex)) {
                    best = Some(s);
                }
            }
        }
    }
    best
}

/// Applies the rule to a fixed point, least `(removed, kept, apex)` first.
pub fn reduce_arrangement(a: &TriangleArrangement) -> Reduction {
    let n = a.n();
    let mut tris: BTreeSet<Triangle> = a.triangles().iter().copied().collect();
    let mut s = RationalMatrix::identity(n);
    let mut steps = Vec::new();
    while let Some(step) = next_step(&tris) {
        tris.remove(&step.removed);
        // S ← S (I − E_{k l}): column l loses column k
        let (k, l) = (step.apex - 1, step.absorbed - 1);
        for r in 0..n {
            let v: Rational = s.get(r, l) - s.get(r, k);
            s.set(r, l, v);
        }
        steps.push(step);
    }
    Reduction {
        input: a.clone(),
        arrangement: TriangleArrangement::new(n, tris).expect("subset of valid triangles"),
        steps,
        substitution: s,
    }
}

pub fn reduce_with_shears(t: &PolygonTriangulation) -> Reduction {
    reduce_arrangement(&t.to_arrangement())
}

/// The reduced arrangement; vertices left in no triangle are black circles.
pub fn reduce(t: &PolygonTriangulation) -> TriangleArrangement {
    reduce_with_shears(t).arrangement
}

pub fn reduction_soundness_check(t: &PolygonTriangulation) -> bool {
    reduce_with_shears(t).is_sound()
}
