//! Exhaustive census of Chern tuples on `CP^4`, cross-checking the generic
//! realizability test against the closed-form congruences for `CP^4`.
//!
//! On `CP^4` write `u_k = a_k t^k`. A rank-4 bundle exists iff
//!
//! ```text
//! 2a4 = a2^2 + a2 + a1(a1 a2 - a3)  mod 3
//! 2a4 = a2^2 + a2 + a1 a2 - a3      mod 4
//! ```
//!
//! and a rank-3 bundle exists iff both right-hand sides vanish.

use rayon::prelude::*;

use crate::builtins::builtin;
use crate::classify::{check_rank3, check_rank4, BundleRank};
use crate::cohomology::{ChernTuple, ManifoldData};
use crate::error::{Error, Result};

fn rhs_mod3(a1: i128, a2: i128, a3: i128) -> i128 {
    (a2 * a2 + a2 + a1 * (a1 * a2 - a3)).rem_euclid(3)
}

fn rhs_mod4(a1: i128, a2: i128, a3: i128) -> i128 {
    (a2 * a2 + a2 + a1 * a2 - a3).rem_euclid(4)
}

/// Closed-form rank-4 test on `CP^4`.
pub fn cp4_rank4_congruences(a: [i64; 4]) -> bool {
    let [a1, a2, a3, a4] = a.map(i128::from);
    (2 * a4).rem_euclid(3) == rhs_mod3(a1, a2, a3) && (2 * a4).rem_euclid(4) == rhs_mod4(a1, a2, a3)
}

/// Closed-form rank-3 test on `CP^4`.
pub fn cp4_rank3_congruences(a: [i64; 3]) -> bool {
    let [a1, a2, a3] = a.map(i128::from);
    rhs_mod3(a1, a2, a3) == 0 && rhs_mod4(a1, a2, a3) == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    /// `(a1, a2, a3, a4)` for rank 4, `(a1, a2, a3)` for rank 3.
    pub coeffs: Vec<i64>,
    pub closed_form: bool,
    pub generic: bool,
}

impl CensusRow {
    pub fn agrees(&self) -> bool {
        self.closed_form == self.generic
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub bound: u32,
    pub rank: BundleRank,
    /// Every tuple in lexicographic order.
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn realizable(&self) -> impl Iterator<Item = &CensusRow> {
        self.rows.iter().filter(|r| r.generic)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &CensusRow> {
        self.rows.iter().filter(|r| !r.agrees())
    }

    pub fn disagreement_count(&self) -> usize {
        self.disagreements().count()
    }

    /// Realizable rank-3 triples violating `a1 a2 = a3 mod 2`; empty for rank 4.
    pub fn parity_violations(&self) -> Vec<&CensusRow> {
        if self.rank != BundleRank::Three {
            return Vec::new();
        }
        self.realizable()
            .filter(|r| (r.coeffs[0] * r.coeffs[1] - r.coeffs[2]).rem_euclid(2) != 0)
            .collect()
    }
}

/// All integer vectors of length `len` with entries in `[-bound, bound]`,
/// in lexicographic order.
pub fn lattice_box(bound: u32, len: usize) -> Vec<Vec<i64>> {
    let b = i64::from(bound);
    let side = (2 * b + 1) as usize;
    let total = side.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0i64; len];
            for slot in v.iter_mut().rev() {
                *slot = (idx % side) as i64 - b;
                idx /= side;
            }
            v
        })
        .collect()
}

fn generic_verdict(data: &ManifoldData, rank: BundleRank, a: &[i64]) -> Result<bool> {
    let verdict = match rank {
        BundleRank::Four => {
            let u = ChernTuple::from_i64(data, [&a[0..1], &a[1..2], &a[2..3], &a[3..4]])?;
            check_rank4(data, &u)?
        }
        BundleRank::Three => check_rank3(
            data,
            &data.integral_class_i64(2, &a[0..1])?,
            &data.integral_class_i64(4, &a[1..2])?,
            &data.integral_class_i64(6, &a[2..3])?,
        )?,
    };
    Ok(verdict.realizable)
}

fn row(data: &ManifoldData, rank: BundleRank, coeffs: Vec<i64>) -> Result<CensusRow> {
    let closed_form = match rank {
        BundleRank::Four => cp4_rank4_congruences([coeffs[0], coeffs[1], coeffs[2], coeffs[3]]),
        BundleRank::Three => cp4_rank3_congruences([coeffs[0], coeffs[1], coeffs[2]]),
    };
    let generic = generic_verdict(data, rank, &coeffs)?;
    Ok(CensusRow {
        coeffs,
        closed_form,
        generic,
    })
}

/// Runs the census on `builtin("cp4")` over `|a_i| <= bound`.
///
/// `jobs = Some(n)` evaluates on a pool of `n` workers; rows come back in
/// lexicographic order regardless.
pub fn enumerate_cp4(bound: u32, rank: BundleRank, jobs: Option<usize>) -> Result<CensusReport> {
    let data = builtin("cp4")?;
    let len = match rank {
        BundleRank::Four => 4,
        BundleRank::Three => 3,
    };
    let tuples = lattice_box(bound, len);
    let rows = match jobs {
        None | Some(1) => tuples
            .into_iter()
            .map(|t| row(&data, rank, t))
            .collect::<Result<Vec<_>>>()?,
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InternalInconsistency(format!("worker pool: {e}")))?;
            pool.install(|| {
                tuples
                    .into_par_iter()
                    .map(|t| row(&data, rank, t))
                    .collect::<Result<Vec<_>>>()
            })?
        }
    };
    Ok(CensusReport { bound, rank, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_box_is_lexicographic() {
        let v = lattice_box(1, 2);
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], vec![-1, -1]);
        assert_eq!(v[1], vec![-1, 0]);
        assert_eq!(v[8], vec![1, 1]);
        let mut sorted = v.clone();
        sorted.sort();
        assert_eq!(v, sorted);
    }

    #[test]
    fn bound_zero_rank4() {
        let r = enumerate_cp4(0, BundleRank::Four, None).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.realizable().count(), 1);
        assert_eq!(r.disagreement_count(), 0);
    }

    #[test]
    fn trivial_bundle_passes_closed_form() {
        assert!(cp4_rank4_congruences([0, 0, 0, 0]));
        assert!(cp4_rank3_congruences([0, 0, 0]));
        // O(1) plus a trivial C^3
        assert!(cp4_rank4_congruences([1, 0, 0, 0]));
        assert!(!cp4_rank4_congruences([0, 0, 0, 1]));
    }

    #[test]
    fn small_census_is_worker_independent() {
        let a = enumerate_cp4(2, BundleRank::Four, None).unwrap();
        let b = enumerate_cp4(2, BundleRank::Four, Some(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.disagreement_count(), 0);
    }
}
