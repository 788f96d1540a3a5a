use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{make, phi, EdgeGluingLabels, Family, FamilyKind};
use crate::error::Result;
use crate::exactla::{det_fraction_free, int, Rational, RationalMatrix, RationalVector};
use crate::poly::{cubic_of, SparsePolynomial};
use crate::prehomog::RankConfig;
use crate::rng::coordinate;

/// Generators of the displayed general element, one per free parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPattern {
    pub n: usize,
    pub names: Vec<String>,
    pub generators: Vec<RationalMatrix>,
}

/// Sparse matrix builder over 1-based positions.
struct Builder {
    n: usize,
    names: Vec<String>,
    generators: Vec<RationalMatrix>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            names: Vec::new(),
            generators: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, entries: &[(usize, usize, i64)]) {
        let mut m = RationalMatrix::zeros(self.n, self.n);
        for &(i, j, v) in entries {
            m.add_at(i - 1, j - 1, &int(v));
        }
        self.names.push(name.into());
        self.generators.push(m);
    }

    fn finish(self) -> BasisPattern {
        BasisPattern {
            n: self.n,
            names: self.names,
            generators: self.generators,
        }
    }
}

fn daisy(n: usize) -> BasisPattern {
    let m = 2 * n + 1;
    let mut b = Builder::new(m);
    b.push("t", &(1..=2 * n).map(|i| (i, i, 1)).collect::<Vec<_>>());
    b.push("s", &[(m, m, 1)]);
    // J = diag(J', …, J') swaps 2i−1 and 2i; M' = J (E_ab − E_ba)
    let j = |r: usize| if r % 2 == 1 { r + 1 } else { r - 1 };
    for a in 1..=2 * n {
        for c in a + 1..=2 * n {
            b.push(format!("so_{a}_{c}"), &[(j(a), c, 1), (j(c), a, -1)]);
        }
    }
    b.finish()
}

fn chain(n: usize) -> BasisPattern {
    let mut b = Builder::new(2 * n + 1);
    b.push("t", &(1..=n).map(|i| (i, i, 1)).collect::<Vec<_>>());
    for i in 1..n {
        b.push(format!("a_{i}"), &[(i + 1, n + i, 1), (i, n + i + 2, -1)]);
    }
    for i in 1..=n + 1 {
        let mut e = vec![(n + i, n + i, 1)];
        if i <= n {
            e.push((i, i, -1));
        }
        if i >= 2 {
            e.push((i - 1, i - 1, -1));
        }
        b.push(format!("t_{i}"), &e);
    }
    b.push("b", &[(2, 1, 1), (n + 1, n + 3, -1)]);
    b.push("c", &[(n - 1, n, 1), (2 * n + 1, 2 * n - 1, -1)]);
    b.finish()
}

fn circular(n: usize) -> BasisPattern {
    let mut b = Builder::new(2 * n);
    b.push("t_0", &(1..=n).map(|i| (i, i, 1)).collect::<Vec<_>>());
    for i in std::iter::once(n).chain(1..n) {
        b.push(
            format!("X_{i}"),
            &[(phi(n, i + 1), n + i, 1), (i, n + phi(n, i + 2), -1)],
        );
    }
    for j in 1..=n {
        b.push(
            format!("t_{j}"),
            &[(n + j, n + j, 1), (j, j, -1), (phi(n, j + n - 1), phi(n, j + n - 1), -1)],
        );
    }
    b.finish()
}

fn edge_gluing(n: usize) -> BasisPattern {
    let l = EdgeGluingLabels { n };
    let mut b = Builder::new(4 * n + 2);
    for i in 0..=n {
        let mut e = vec![(l.x(i), l.x(i), 1), (l.y(i), l.y(i), -1)];
        for j in [i, i + 1] {
            if (1..=n).contains(&j) {
                e.push((l.z(j), l.z(j), -1));
            }
        }
        if i == 0 {
            e.extend((1..=n).map(|j| (l.w(j), l.w(j), -1)));
            e.extend((0..=n).map(|j| (l.y(j), l.y(j), 1)));
        }
        b.push(format!("Mx_{i}"), &e);
    }
    let mut e: Vec<(usize, usize, i64)> = (1..=n).map(|j| (l.w(j), l.w(j), -1)).collect();
    e.extend((0..=n).map(|j| (l.y(j), l.y(j), 1)));
    b.push("My", &e);
    let mut e: Vec<(usize, usize, i64)> = (1..=n).map(|j| (l.w(j), l.w(j), 1)).collect();
    e.extend((1..=n).map(|j| (l.z(j), l.z(j), 1)));
    b.push("t", &e);
    for i in 1..n {
        b.push(
            format!("d_{i}"),
            &[
                (l.w(i), l.x(i), 1),
                (l.w(i + 1), l.x(i), -1),
                (l.z(i), l.y(i - 1), -1),
                (l.z(i + 1), l.y(i + 1), 1),
            ],
        );
    }
    for j in 0..n {
        let mut e = vec![(l.y(j), l.x(j + 1), 1), (l.z(j + 1), l.w(j + 1), -1)];
        if j >= 1 {
            e.push((l.z(j + 1), l.w(j), -1));
        }
        b.push(format!("b_{j}"), &e);
    }
    for j in 0..n {
        let mut e = vec![(l.y(j + 1), l.x(j), 1), (l.z(j + 1), l.w(j + 1), -1)];
        if j + 2 <= n {
            e.push((l.z(j + 1), l.w(j + 2), -1));
        }
        b.push(format!("c_{j}"), &e);
    }
    for i in 1..n {
        b.push(format!("a_{i}"), &[(l.z(i), l.x(i + 1), 1), (l.z(i + 1), l.x(i - 1), -1)]);
    }
    b.finish()
}

/// Generators spanning the expected `g[p]`, or `None` for sizes without a
/// closed-form pattern (chain 2, circular 3 and 4).
pub fn expected_basis_pattern(kind: &FamilyKind) -> Result<Option<BasisPattern>> {
    let k = FamilyKind::new(kind.family, kind.n)?;
    let n = k.n;
    Ok(match k.family {
        Family::Daisy => Some(daisy(n)),
        Family::Chain if n >= 3 => Some(chain(n)),
        Family::Circular if n >= 5 => Some(circular(n)),
        Family::EdgeGluing => Some(edge_gluing(n)),
        _ => None,
    })
}

/// Square submatrix of `A(x)` and its expected determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantRecipe {
    /// Pattern generators kept, in column order.
    pub columns: Vec<usize>,
    pub expected: SparsePolynomial,
    pub up_to_sign: bool,
}

fn monomial(nvars: usize, factors: &[(usize, u32)]) -> SparsePolynomial {
    let mut m = SparsePolynomial::constant(nvars, Rational::one());
    for &(v, e) in factors {
        m = &m * &SparsePolynomial::var(nvars, v - 1).pow(e);
    }
    m
}

pub fn determinant_recipe(kind: &FamilyKind) -> Result<Option<DeterminantRecipe>> {
    let k = FamilyKind::new(kind.family, kind.n)?;
    let n = k.n;
    let nv = k.vertex_count();
    let p = cubic_of(&make(&k)?);
    Ok(match k.family {
        Family::Chain if n >= 3 => {
            let mut f = vec![(n + 1, 1), (n + 2, 1), (2 * n, 1), (2 * n + 1, 1)];
            f.extend((n + 3..=2 * n - 1).map(|v| (v, 2)));
            Some(DeterminantRecipe {
                columns: (0..2 * n + 1).collect(),
                expected: &monomial(nv, &f) * &p,
                up_to_sign: false,
            })
        }
        Family::Circular if n >= 5 => {
            let mut f = vec![(n + 1, 1), (n + 2, 1), (2 * n, 1)];
            f.extend((3..=n - 1).map(|i| (n + i, 2)));
            Some(DeterminantRecipe {
                columns: std::iter::once(0).chain(2..2 * n + 1).collect(),
                expected: &monomial(nv, &f) * &p,
                up_to_sign: false,
            })
        }
        Family::EdgeGluing => {
            let l = EdgeGluingLabels { n };
            let mut f = vec![(l.x(0), 1), (l.x(1), 3), (l.x(n), 2)];
            f.extend((2..n).map(|i| (l.x(i), 4)));
            let wsum = (1..=n).fold(SparsePolynomial::zero(nv), |s, j| &s + &SparsePolynomial::var(nv, l.w(j) - 1));
            let expected = &(&monomial(nv, &f) * &wsum) * &p;
            // columns: Mx_0..Mx_n, My, t, d (n−1), b (n), c (n), a (n−1)
            let c0 = (n + 1) + 2 + (n - 1) + n;
            let dropped = c0..c0 + (n - 1);
            Some(DeterminantRecipe {
                columns: (0..5 * n + 1).filter(|c| !dropped.contains(c)).collect(),
                expected: -&expected,
                up_to_sign: true,
            })
        }
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantCheck {
    pub points: usize,
    /// Exact equality at every point.
    pub exact: bool,
    /// Equality up to one global sign at every point.
    pub up_to_sign: bool,
    pub holds: bool,
}

/// Random rational point with numerators in `[1, bound]` and denominators
/// in `[1, 1000]`.
fn rational_point(rng: &mut crate::rng::TaskRng, n: usize, bound: u64) -> RationalVector {
    RationalVector(
        (0..n)
            .map(|_| {
                let num = BigInt::from(coordinate(rng, bound));
                let den = BigInt::from(coordinate(rng, 1000));
                Rational::new(num, den)
            })
            .collect(),
    )
}

/// Evaluates the recipe at `points` seeded random rational points.
pub fn check_determinant(kind: &FamilyKind, cfg: &RankConfig, points: usize) -> Result<Option<DeterminantCheck>> {
    let (Some(recipe), Some(pattern)) = (determinant_recipe(kind)?, expected_basis_pattern(kind)?) else {
        return Ok(None);
    };
    let nv = pattern.n;
    let mut rng = cfg.rng(3);
    let mut exact = true;
    let mut sign: Option<bool> = None;
    let mut signed = true;
    for _ in 0..points {
        let x = rational_point(&mut rng, nv, cfg.coord_bound);
        let cols: Vec<RationalVector> = recipe
            .columns
            .iter()
            .map(|&c| pattern.generators[c].mul_vec(&x))
            .collect::<Result<_>>()?;
        let d = det_fraction_free(&RationalMatrix::from_columns(nv, &cols))?;
        let e = recipe.expected.eval(&x)?;
        exact &= d == e;
        let flipped = d == -&e && !e.is_zero();
        let same = d == e;
        match (same, flipped, sign) {
            (true, _, None) => sign = Some(true),
            (false, true, None) => sign = Some(false),
            (true, _, Some(true)) | (false, true, Some(false)) => {}
            _ => signed = false,
        }
    }
    let holds = if recipe.up_to_sign { signed } else { exact };
    Ok(Some(DeterminantCheck {
        points,
        exact,
        up_to_sign: signed,
        holds,
    }))
}
