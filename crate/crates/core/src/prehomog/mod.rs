//! Prehomogeneity by generic rank.
//!
//! `(g, V)` has an open orbit iff the map `A(x): M ↦ Mx` has rank `dim V`
//! for generic `x`. The rank is probed at random integer points; a point
//! reaching full rank is an exact certificate, while failure at every point
//! is reported with its Schwartz–Zippel error bound.

mod invariants;
mod symbolic;

pub use invariants::{
    coordinate_invariants, is_linear_invariant, linear_invariants, log_hessian_nondegenerate,
    relative_invariant_character, InvariantReport, LinearInvariant, RegularityProbe,
};
pub use symbolic::{poly_action_matrix, rank_over_function_field};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, rank, rank_mod_p, Rational, RationalMatrix, RationalVector, MERSENNE_61};
use crate::liealg::{BasisLabel, MatrixBasis};
use crate::rng::{coordinate, task_rng, TaskRng};

/// Largest `dim V` for which symbolic mode is attempted.
pub const SYMBOLIC_MAX_DIM: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Randomized,
    Symbolic,
}

/// Sampling parameters for rank probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankConfig {
    pub mode: RankMode,
    pub samples: usize,
    pub coord_bound: u64,
    pub seed: u64,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            mode: RankMode::Randomized,
            samples: 8,
            coord_bound: 1 << 31,
            seed: 0,
        }
    }
}

impl RankConfig {
    pub fn with_seed(seed: u64) -> Self {
        RankConfig {
            seed,
            ..Self::default()
        }
    }

    /// The configuration whose stream belongs to task `task`.
    pub fn for_task(&self, task: u64) -> Self {
        let mut r = task_rng(self.seed, task);
        RankConfig {
            seed: rand::Rng::random(&mut r),
            ..*self
        }
    }

    pub(crate) fn rng(&self, stream: u64) -> TaskRng {
        task_rng(self.seed, stream)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PV")]
    Pv,
    #[serde(rename = "NotPV")]
    NotPv,
}

impl Verdict {
    pub fn is_pv(self) -> bool {
        self == Verdict::Pv
    }
}

/// Outcome of a generic-rank test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankVerdict {
    pub verdict: Verdict,
    pub generic_rank_lower_bound: usize,
    pub witness: Option<RationalVector>,
    pub samples_used: usize,
    /// Upper bound on the probability that a `NotPV` answer is wrong.
    pub error_bound: Option<Rational>,
    pub mode: RankMode,
}

impl RankVerdict {
    pub fn is_pv(&self) -> bool {
        self.verdict.is_pv()
    }

    pub fn error_bound_text(&self) -> Option<String> {
        self.error_bound.as_ref().map(format_rational)
    }
}

/// `n × dim g` matrix whose `k`-th column is `Bₖ x`.
pub fn action_matrix(b: &MatrixBasis, x: &RationalVector) -> Result<RationalMatrix> {
    let cols: Result<Vec<RationalVector>> = b.elements().iter().map(|e| e.mul_vec(x)).collect();
    Ok(RationalMatrix::from_columns(b.n(), &cols?))
}

/// Columns `ᵗBₖ x`: the contragredient action up to sign.
pub fn dual_action_matrix(b: &MatrixBasis, x: &RationalVector) -> Result<RationalMatrix> {
    action_matrix(&transposed(b), x)
}

/// The basis `{ᵗBₖ}`.
pub fn transposed(b: &MatrixBasis) -> MatrixBasis {
    let label = match b.label() {
        BasisLabel::Sub(s) => BasisLabel::Sub(format!("{s}^t")),
        other => BasisLabel::Sub(format!("{other}^t")),
    };
    MatrixBasis::new(b.n(), b.elements().iter().map(RationalMatrix::transpose).collect(), label)
        .expect("transpose preserves independence")
}

/// Random point with coordinates uniform in `[1, bound]`.
pub fn random_point(rng: &mut TaskRng, n: usize, bound: u64) -> RationalVector {
    RationalVector(
        (0..n)
            .map(|_| Rational::from_integer(BigInt::from(coordinate(rng, bound))))
            .collect(),
    )
}

/// Rank of `A(x)` with a fast lower bound mod a large prime before the
/// exact computation.
pub fn rank_at(b: &MatrixBasis, x: &RationalVector) -> Result<usize> {
    let a = action_matrix(b, x)?;
    Ok(checked_rank(&a))
}

fn checked_rank(a: &RationalMatrix) -> usize {
    let target = a.rows().min(a.cols());
    match rank_mod_p(a, MERSENNE_61) {
        Ok(r) if r == target => {
            let exact = rank(a);
            assert_eq!(exact, r, "modular rank exceeds rational rank");
            exact
        }
        _ => rank(a),
    }
}

/// `(n/S)^k`: chance that `k` independent points all miss a nonzero minor
/// of degree at most `n`.
pub fn schwartz_zippel_bound(degree: usize, coord_bound: u64, samples: usize) -> Rational {
    let base = Rational::new(BigInt::from(degree), BigInt::from(coord_bound));
    let mut r = Rational::one();
    for _ in 0..samples {
        r *= &base;
    }
    r.min(Rational::one())
}

fn randomized(b: &MatrixBasis, cfg: &RankConfig, stream: u64) -> Result<RankVerdict> {
    let n = b.n();
    let mut rng = cfg.rng(stream);
    let mut best = 0;
    let samples = cfg.samples.max(1);
    for s in 0..samples {
        let x = random_point(&mut rng, n, cfg.coord_bound);
        let a = action_matrix(b, &x)?;
        let r = checked_rank(&a);
        best = best.max(r);
        if r == n {
            return Ok(RankVerdict {
                verdict: Verdict::Pv,
                generic_rank_lower_bound: n,
                witness: Some(x),
                samples_used: s + 1,
                error_bound: None,
                mode: RankMode::Randomized,
            });
        }
    }
    let bound = if b.dim() < n {
        Rational::zero()
    } else {
        schwartz_zippel_bound(n, cfg.coord_bound, samples)
    };
    Ok(RankVerdict {
        verdict: Verdict::NotPv,
        generic_rank_lower_bound: best,
        witness: None,
        samples_used: samples,
        error_bound: Some(bound),
        mode: RankMode::Randomized,
    })
}

fn symbolic(b: &MatrixBasis, cfg: &RankConfig, stream: u64) -> Result<RankVerdict> {
    let n = b.n();
    let r = rank_over_function_field(&poly_action_matrix(b)?);
    if r < n {
        return Ok(RankVerdict {
            verdict: Verdict::NotPv,
            generic_rank_lower_bound: r,
            witness: None,
            samples_used: 0,
            error_bound: Some(Rational::zero()),
            mode: RankMode::Symbolic,
        });
    }
    // a nonzero maximal minor exists; find a point where it does not vanish
    let mut rng = cfg.rng(stream);
    for s in 0.. {
        let x = random_point(&mut rng, n, cfg.coord_bound);
        if checked_rank(&action_matrix(b, &x)?) == n {
            return Ok(RankVerdict {
                verdict: Verdict::Pv,
                generic_rank_lower_bound: n,
                witness: Some(x),
                samples_used: s + 1,
                error_bound: None,
                mode: RankMode::Symbolic,
            });
        }
    }
    unreachable!()
}

fn decide(b: &MatrixBasis, cfg: &RankConfig, stream: u64) -> Result<RankVerdict> {
    if b.n() == 0 {
        return Err(Error::EmptyVertexSet);
    }
    match cfg.mode {
        RankMode::Symbolic if b.n() <= SYMBOLIC_MAX_DIM => symbolic(b, cfg, stream),
        _ => randomized(b, cfg, stream),
    }
}

/// Generic-rank test of `A(x)`.
pub fn is_prehomogeneous(b: &MatrixBasis, cfg: &RankConfig) -> Result<RankVerdict> {
    decide(b, cfg, 0)
}

/// Generic-rank test of the transposed action.
pub fn is_dual_prehomogeneous(b: &MatrixBasis, cfg: &RankConfig) -> Result<RankVerdict> {
    decide(&transposed(b), cfg, 1)
}
