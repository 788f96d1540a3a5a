//! Canonical labeling by color refinement and individualization.
//!
//! The search tree is built from label-invariant choices only, so the
//! lexicographically least leaf is itself invariant.

use serde::{Deserialize, Serialize};

use super::{Triangle, TriangleArrangement};
use crate::error::{Error, Result};

/// Default bound on search-tree nodes.
pub const DEFAULT_NODE_CAP: usize = 10_000_000;

/// Relabeling-invariant key of an arrangement. Vertices in triangles are
/// relabeled `1..=vertices`; black circles are only counted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vertices: usize,
    pub triangles: Vec<Triangle>,
    pub black_circles: usize,
}

impl CanonicalForm {
    /// The canonical representative, black circles labeled last.
    pub fn to_arrangement(&self) -> TriangleArrangement {
        TriangleArrangement::new(
            (self.vertices + self.black_circles).max(1),
            self.triangles.iter().copied(),
        )
        .expect("canonical labels are in range")
    }

    /// Compact text key, e.g. `5:123,145+1`.
    pub fn key(&self) -> String {
        let t: Vec<String> = self
            .triangles
            .iter()
            .map(|t| format!("{}.{}.{}", t[0], t[1], t[2]))
            .collect();
        format!("{}:{}+{}", self.vertices, t.join(","), self.black_circles)
    }
}

pub fn canonical_form(a: &TriangleArrangement) -> Result<CanonicalForm> {
    canonical_form_with_cap(a, DEFAULT_NODE_CAP)
}

struct Search {
    // triangles over compact vertex indices 0..m
    tris: Vec<[usize; 3]>,
    // for each vertex, the other two vertices of each incident triangle
    inc: Vec<Vec<(usize, usize)>>,
    best: Option<Vec<Triangle>>,
    nodes: usize,
    cap: usize,
}

/// Replaces colors by the rank of `key` among distinct keys.
fn rerank<K: Ord + Clone>(keys: &[K]) -> (Vec<usize>, usize) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let colors = keys
        .iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect();
    (colors, sorted.len())
}

impl Search {
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut count = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..colors.len())
                .map(|v| {
                    let mut s: Vec<(usize, usize)> = self.inc[v]
                        .iter()
                        .map(|&(a, b)| {
                            let (x, y) = (colors[a], colors[b]);
                            (x.min(y), x.max(y))
                        })
                        .collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let (next, c) = rerank(&sigs);
            colors = next;
            if c == count {
                return colors;
            }
            count = c;
        }
    }

    fn leaf(&mut self, colors: &[usize]) {
        let mut t: Vec<Triangle> = self
            .tris
            .iter()
            .map(|t| {
                let mut r = t.map(|v| colors[v] + 1);
                r.sort_unstable();
                r
            })
            .collect();
        t.sort_unstable();
        if self.best.as_ref().is_none_or(|b| t < *b) {
            self.best = Some(t);
        }
    }

    fn descend(&mut self, colors: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::TooLarge {
                what: "canonical labeling search",
                cap: self.cap,
            });
        }
        let m = colors.len();
        let mut size = vec![0usize; m];
        for &c in &colors {
            size[c] += 1;
        }
        // first non-singleton cell in color order
        let Some(target) = (0..m).find(|&c| size[c] > 1) else {
            self.leaf(&colors);
            return Ok(());
        };
        let members: Vec<usize> = (0..m).filter(|&v| colors[v] == target).collect();
        for v in members {
            let keys: Vec<(usize, bool)> = (0..m).map(|u| (colors[u], u != v)).collect();
            let (split, _) = rerank(&keys);
            let refined = self.refine(split);
            self.descend(refined)?;
        }
        Ok(())
    }
}

/// As [`canonical_form`] with an explicit bound on explored search nodes.
pub fn canonical_form_with_cap(a: &TriangleArrangement, cap: usize) -> Result<CanonicalForm> {
    let deg = a.degrees();
    let mut compact = vec![usize::MAX; a.n() + 1];
    let mut m = 0;
    for v in 1..=a.n() {
        if deg[v - 1] > 0 {
            compact[v] = m;
            m += 1;
        }
    }
    let black_circles = a.n() - m;
    let tris: Vec<[usize; 3]> = a.triangles().iter().map(|t| t.map(|v| compact[v])).collect();
    let mut inc = vec![Vec::new(); m];
    for t in &tris {
        inc[t[0]].push((t[1], t[2]));
        inc[t[1]].push((t[0], t[2]));
        inc[t[2]].push((t[0], t[1]));
    }
    let mut search = Search {
        tris,
        inc,
        best: None,
        nodes: 0,
        cap,
    };
    if m > 0 {
        let start = search.refine(vec![0; m]);
        search.descend(start)?;
    }
    Ok(CanonicalForm {
        vertices: m,
        triangles: search.best.unwrap_or_default(),
        black_circles,
    })
}
