//! Triangle arrangements as 3-uniform hypergraphs on labeled vertices.
//!
//! Vertices are 1-based. A vertex in no triangle is a *black circle*: it
//! still carries a coordinate of the ambient space.

mod canonical;

pub use canonical::{canonical_form, canonical_form_with_cap, CanonicalForm, DEFAULT_NODE_CAP};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Triangle = [usize; 3];

/// A set of triangles on the vertex set `{1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArrangement")]
pub struct TriangleArrangement {
    n: usize,
    triangles: Vec<Triangle>,
}

#[derive(Deserialize)]
struct RawArrangement {
    n: usize,
    triangles: Vec<Triangle>,
}

impl TryFrom<RawArrangement> for TriangleArrangement {
    type Error = Error;
    fn try_from(raw: RawArrangement) -> Result<Self> {
        TriangleArrangement::new(raw.n, raw.triangles)
    }
}

/// The triangles containing one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStar {
    pub vertex: usize,
    pub triangles: Vec<Triangle>,
}

/// A connected component of the triangle-edge graph. Black circles are
/// reported as singleton components with `black` set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub black: bool,
}

impl TriangleArrangement {
    /// Validates and normalizes: each triple is sorted, the list is sorted
    /// and deduplicated.
    pub fn new(n: usize, triangles: impl IntoIterator<Item = Triangle>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let mut out = Vec::new();
        for mut t in triangles {
            for &v in &t {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::DegenerateTriangle(t));
            }
            out.push(t);
        }
        out.sort_unstable();
        out.dedup();
        Ok(TriangleArrangement { n, triangles: out })
    }

    /// `n` black circles and no triangles.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    fn check(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn star(&self, i: usize) -> Result<VertexStar> {
        self.check(i)?;
        Ok(VertexStar {
            vertex: i,
            triangles: self.triangles.iter().filter(|t| t.contains(&i)).copied().collect(),
        })
    }

    /// Number of triangles through each vertex, indexed `0..n` for
    /// vertices `1..=n`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for t in &self.triangles {
            for &v in t {
                d[v - 1] += 1;
            }
        }
        d
    }

    /// Vertices lying in exactly one triangle.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn black_circles(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn has_edge_sharing(&self) -> bool {
        let mut edges: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
            .collect();
        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        edges.len() != before
    }

    /// Adjacency lists of the graph formed by all triangle edges.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    /// BFS distances from `i`; entry `j` (1-based) is `None` if unreachable.
    pub fn distances_from(&self, i: usize) -> Result<Vec<Option<usize>>> {
        self.check(i)?;
        let adj = self.adjacency();
        let mut dist = vec![None; self.n + 1];
        dist[i] = Some(0);
        let mut queue = VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn graph_distance(&self, i: usize, j: usize) -> Result<Option<usize>> {
        self.check(j)?;
        Ok(self.distances_from(i)?[j])
    }

    pub fn connected_components(&self) -> Vec<Component> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                for &w in &adj[comp[k]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            let black = adj[s].is_empty();
            out.push(Component { vertices: comp, black });
        }
        out
    }

    /// Applies a relabeling: vertex `v` becomes `map[v - 1]`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        if map.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: map.len(),
            });
        }
        let mut seen = vec![false; self.n + 1];
        for &v in map {
            self.check(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse(format!("relabeling repeats vertex {v}")));
            }
        }
        Self::new(
            self.n,
            self.triangles.iter().map(|t| t.map(|v| map[v - 1])),
        )
    }

    /// Disjoint union; the second arrangement's vertices are shifted by `self.n`.
    pub fn disjoint_union(&self, other: &TriangleArrangement) -> Self {
        let shift = self.n;
        Self::new(
            self.n + other.n,
            self.triangles
                .iter()
                .copied()
                .chain(other.triangles.iter().map(|t| t.map(|v| v + shift))),
        )
        .expect("shifted labels stay in range")
    }

    /// Appends `k` black circles with labels `n+1, …, n+k`.
    pub fn with_black_circles(&self, k: usize) -> Self {
        TriangleArrangement {
            n: self.n + k,
            triangles: self.triangles.clone(),
        }
    }

    /// Deletes vertex `v`, which must be a black circle; higher labels
    /// shift down by one.
    pub fn remove_black_circle(&self, v: usize) -> Result<Self> {
        self.check(v)?;
        if self.triangles.iter().any(|t| t.contains(&v)) || self.n == 1 {
            return Err(Error::NoBlackCircle);
        }
        Self::new(
            self.n - 1,
            self.triangles
                .iter()
                .map(|t| t.map(|u| if u > v { u - 1 } else { u })),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("arrangement serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Debug for TriangleArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(n={}; {:?})", self.n, self.triangles)
    }
}

/// Glues `a2` onto `a1` by identifying `v2` with `v1`. Vertices of `a1` keep
/// their labels; the others of `a2` follow as `n₁+1, …` in increasing order.
pub fn attach(
    a1: &TriangleArrangement,
    v1: usize,
    a2: &TriangleArrangement,
    v2: usize,
) -> Result<TriangleArrangement> {
    a1.check(v1)?;
    a2.check(v2)?;
    let map = attach_map(a1.n, v1, a2.n, v2);
    TriangleArrangement::new(
        a1.n + a2.n - 1,
        a1.triangles
            .iter()
            .copied()
            .chain(a2.triangles.iter().map(|t| t.map(|v| map[v - 1]))),
    )
}

/// Image of each vertex of the second arrangement under [`attach`].
pub fn attach_map(n1: usize, v1: usize, n2: usize, v2: usize) -> Vec<usize> {
    let mut next = n1;
    (1..=n2)
        .map(|v| {
            if v == v2 {
                v1
            } else {
                next += 1;
                next
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_a() -> TriangleArrangement {
        TriangleArrangement::new(7, [[1, 4, 5], [2, 5, 6], [3, 6, 7]]).unwrap()
    }

    fn t_c() -> TriangleArrangement {
        TriangleArrangement::new(5, [[1, 2, 3], [2, 3, 4], [3, 4, 5]]).unwrap()
    }

    fn hexagon_reduced() -> TriangleArrangement {
        TriangleArrangement::new(6, [[1, 2, 3], [1, 5, 6]]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(
            TriangleArrangement::new(3, [[1, 1, 2]]),
            Err(Error::DegenerateTriangle(_))
        ));
        assert!(matches!(
            TriangleArrangement::new(3, [[1, 2, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(TriangleArrangement::empty(0), Err(Error::EmptyVertexSet)));
        let six = TriangleArrangement::empty(6).unwrap();
        assert_eq!(six.black_circles(), vec![1, 2, 3, 4, 5, 6]);
        let a = TriangleArrangement::new(4, [[3, 2, 1], [1, 2, 3], [4, 1, 2]]).unwrap();
        assert_eq!(a.triangles(), &[[1, 2, 3], [1, 2, 4]]);
    }

    #[test]
    fn stars_and_isolated_vertices() {
        let a = t_a();
        assert_eq!(a.star(5).unwrap().triangles, vec![[1, 4, 5], [2, 5, 6]]);
        assert_eq!(a.star(4).unwrap().triangles, vec![[1, 4, 5]]);
        assert!(hexagon_reduced().star(4).unwrap().triangles.is_empty());
        assert_eq!(a.isolated_vertices(), vec![1, 2, 3, 4, 7]);
        assert!(a.star(8).is_err());
    }

    #[test]
    fn edge_sharing() {
        assert!(!t_a().has_edge_sharing());
        assert!(t_c().has_edge_sharing());
    }

    #[test]
    fn distances() {
        let a = t_a();
        assert_eq!(a.graph_distance(4, 7).unwrap(), Some(3));
        assert_eq!(a.graph_distance(6, 6).unwrap(), Some(0));
        let two = TriangleArrangement::new(6, [[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(two.graph_distance(1, 5).unwrap(), None);
        assert_eq!(hexagon_reduced().graph_distance(4, 1).unwrap(), None);
    }

    #[test]
    fn components() {
        let c = hexagon_reduced().connected_components();
        assert_eq!(
            c,
            vec![
                Component { vertices: vec![1, 2, 3, 5, 6], black: false },
                Component { vertices: vec![4], black: true },
            ]
        );
        assert_eq!(t_a().connected_components().len(), 1);
    }

    #[test]
    fn attach_relabels_deterministically() {
        let tri = TriangleArrangement::new(3, [[1, 2, 3]]).unwrap();
        let d = attach(&tri, 1, &tri, 1).unwrap();
        assert_eq!(d.n(), 5);
        assert_eq!(d.triangles(), &[[1, 2, 3], [1, 4, 5]]);

        let t_d = TriangleArrangement::new(5, [[1, 2, 3], [2, 4, 5]]).unwrap();
        let at = attach(&t_a(), 5, &t_d, 2).unwrap();
        assert_eq!(at.n(), 11);
        assert_eq!(
            at.triangles(),
            &[[1, 4, 5], [2, 5, 6], [3, 6, 7], [5, 8, 9], [5, 10, 11]]
        );
    }

    #[test]
    fn json_round_trip_and_format() {
        let a = t_a();
        let s = a.to_json();
        assert_eq!(s, r#"{"n":7,"triangles":[[1,4,5],[2,5,6],[3,6,7]]}"#);
        assert_eq!(TriangleArrangement::from_json(&s).unwrap(), a);
        assert!(TriangleArrangement::from_json(r#"{"n":2,"triangles":[[1,2,3]]}"#).is_err());
    }

    #[test]
    fn black_circle_editing() {
        let h = hexagon_reduced();
        let r = h.remove_black_circle(4).unwrap();
        assert_eq!(r.triangles(), &[[1, 2, 3], [1, 4, 5]]);
        assert!(matches!(h.remove_black_circle(1), Err(Error::NoBlackCircle)));
        assert_eq!(t_a().with_black_circles(1).black_circles(), vec![8]);
    }
}
