//! Fixtures shared by the criterion benches.

use triarr::arrangement::TriangleArrangement;
use triarr::exactla::{int, RationalMatrix};
use triarr::families::{make, FamilyKind};
use triarr::liealg::{constraint_system, g_basis, MatrixBasis};
use triarr::poly::cubic_of;

/// Dense `rows × cols` integer matrix with small pseudo-random entries.
pub fn dense_matrix(rows: usize, cols: usize, seed: u64) -> RationalMatrix {
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let data = (0..rows * cols)
        .map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            int(((s >> 33) % 19) as i64 - 9)
        })
        .collect();
    RationalMatrix::from_flat(rows, cols, data).expect("shape matches")
}

/// Constraint matrix of a family instance, as a dense matrix.
pub fn constraint_matrix(kind: &FamilyKind) -> RationalMatrix {
    let p = cubic_of(&make(kind).expect("valid family"));
    constraint_system(&p).expect("cubic").to_sparse().to_dense()
}

pub fn family_basis(kind: &FamilyKind) -> MatrixBasis {
    g_basis(&cubic_of(&make(kind).expect("valid family"))).expect("cubic")
}

/// A family instance with its vertices shuffled by a fixed stride.
pub fn scrambled(kind: &FamilyKind) -> TriangleArrangement {
    let a = make(kind).expect("valid family");
    let n = a.n();
    let stride = (2..n).find(|s| gcd(*s, n) == 1).unwrap_or(1);
    let map: Vec<usize> = (0..n).map(|i| (i * stride) % n + 1).collect();
    a.relabel(&map).expect("permutation")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
