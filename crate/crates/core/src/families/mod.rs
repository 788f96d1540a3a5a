//! The daisy, chain, circular and edge-gluing arrangements with their
//! closed-form oracles.

mod invariants;
mod patterns;
mod verify;

pub use invariants::{expected_invariants, FamilyInvariant, Side};
pub use patterns::{
    check_determinant, determinant_recipe, expected_basis_pattern, BasisPattern, DeterminantCheck,
    DeterminantRecipe,
};
pub use verify::{verify_family, FamilyReport, InvariantCheck};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Triangle, TriangleArrangement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Daisy,
    Chain,
    Circular,
    EdgeGluing,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Daisy, Family::Chain, Family::Circular, Family::EdgeGluing];

    pub fn name(self) -> &'static str {
        match self {
            Family::Daisy => "daisy",
            Family::Chain => "chain",
            Family::Circular => "circular",
            Family::EdgeGluing => "edge_gluing",
        }
    }

    pub fn min_size(self) -> usize {
        match self {
            Family::Circular => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "daisy" => Ok(Family::Daisy),
            "chain" => Ok(Family::Chain),
            "circular" => Ok(Family::Circular),
            "edge_gluing" | "edgegluing" => Ok(Family::EdgeGluing),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// A family together with its size parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilyKind {
    pub family: Family,
    pub n: usize,
}

impl FamilyKind {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_size() {
            return Err(Error::SizeOutOfRange { kind: family.name(), n });
        }
        Ok(FamilyKind { family, n })
    }

    pub fn daisy(n: usize) -> Result<Self> {
        Self::new(Family::Daisy, n)
    }

    pub fn chain(n: usize) -> Result<Self> {
        Self::new(Family::Chain, n)
    }

    pub fn circular(n: usize) -> Result<Self> {
        Self::new(Family::Circular, n)
    }

    pub fn edge_gluing(n: usize) -> Result<Self> {
        Self::new(Family::EdgeGluing, n)
    }

    fn checked(&self) -> Result<Self> {
        Self::new(self.family, self.n)
    }

    pub fn vertex_count(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::Daisy | Family::Chain => 2 * n + 1,
            Family::Circular => 2 * n,
            Family::EdgeGluing => 4 * n + 2,
        }
    }

    /// Source tag used in records, e.g. `family:chain:3`.
    pub fn tag(&self) -> String {
        format!("family:{}:{}", self.family, self.n)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}

/// `φ_n(k)`: `k` reduced into `1..=n`.
pub fn phi(n: usize, k: usize) -> usize {
    (k + n - 1) % n + 1
}

/// 1-based labels of the edge-gluing coordinates, ordered `x, w, y, z`.
#[derive(Clone, Copy, Debug)]
pub struct EdgeGluingLabels {
    pub n: usize,
}

impl EdgeGluingLabels {
    /// `x_i`, `i = 0..=n`.
    pub fn x(&self, i: usize) -> usize {
        i + 1
    }

    /// `w_i`, `i = 1..=n`.
    pub fn w(&self, i: usize) -> usize {
        self.n + 1 + i
    }

    /// `y_i`, `i = 0..=n`.
    pub fn y(&self, i: usize) -> usize {
        2 * self.n + 2 + i
    }

    /// `z_i`, `i = 1..=n`.
    pub fn z(&self, i: usize) -> usize {
        3 * self.n + 2 + i
    }
}

pub fn make(kind: &FamilyKind) -> Result<TriangleArrangement> {
    let k = kind.checked()?;
    let n = k.n;
    let tris: Vec<Triangle> = match k.family {
        Family::Daisy => (1..=n).map(|i| [2 * i - 1, 2 * i, 2 * n + 1]).collect(),
        Family::Chain => (1..=n).map(|i| [i, n + i, n + i + 1]).collect(),
        Family::Circular => (1..=n).map(|i| [i, n + i, n + phi(n, i + 1)]).collect(),
        Family::EdgeGluing => {
            let l = EdgeGluingLabels { n };
            (1..=n)
                .flat_map(|i| {
                    [
                        [l.x(i - 1), l.x(i), l.z(i)],
                        [l.x(i - 1), l.y(i - 1), l.w(i)],
                        [l.x(i), l.y(i), l.w(i)],
                    ]
                })
                .collect()
        }
    };
    TriangleArrangement::new(k.vertex_count(), tris)
}

/// Closed-form `dim g[p]`.
pub fn expected_dimension(kind: &FamilyKind) -> Result<usize> {
    let k = kind.checked()?;
    let n = k.n;
    Ok(match (k.family, n) {
        (Family::Daisy, _) => 2 * n * n - n + 2,
        (Family::Chain, 2) => 8,
        (Family::Chain, _) => 2 * n + 3,
        (Family::Circular, 3) => 6,
        (Family::Circular, 4) => 13,
        (Family::Circular, _) => 2 * n + 1,
        (Family::EdgeGluing, _) => 5 * n + 1,
    })
}

/// Expected verdict of the transposed action, where one is known.
pub fn expected_dual_pv(kind: &FamilyKind) -> Option<bool> {
    match (kind.family, kind.n) {
        (Family::Circular, 4) => Some(true),
        (Family::Circular, n) if n >= 5 => Some(n % 2 == 1),
        _ => None,
    }
}

/// Whether `g[p]` is expected to be solvable.
pub fn expected_solvable(kind: &FamilyKind) -> Option<bool> {
    match kind.family {
        Family::Daisy => Some(false),
        Family::Chain if kind.n >= 3 => Some(true),
        Family::Circular if kind.n >= 5 => Some(true),
        Family::EdgeGluing => Some(true),
        _ => None,
    }
}
