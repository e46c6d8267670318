//! Conditions-count upper bounds and the sufficiency check they feed.
//!
//! Vanishing to order `m` at `r` general points imposes `r * C(m+N-1, N)`
//! conditions on degree-`d` forms in `N+1` variables; the first degree with
//! more coefficients than conditions carries a hypersurface through the
//! points, so it bounds the single-multiplicity minimal degree from above.
//! Dividing by `m + N - 1` turns that into the threshold a Waldschmidt lower
//! bound must reach.

use std::sync::Arc;

use num::{One, Zero};
use rayon::prelude::*;

use crate::numerics::{binom, nat, nat_to_rat, Nat, Rat};
use crate::recursion::{best_bound, BoundCertificate, SearchContext};

/// Smallest degree `d` whose form space exceeds the vanishing conditions:
/// `C(d+N, N) > points * C(mult+N-1, N)`.
pub fn conditions_count_alpha_upper(dim: u32, points: &Nat, mult: u32) -> Nat {
    assert!(dim >= 1, "dimension must be at least 1");
    assert!(!points.is_zero(), "need at least one point");
    assert!(mult >= 1, "multiplicity must be at least 1");
    let n = nat(dim as u64);
    let conditions = points * binom(&nat(mult as u64 + dim as u64 - 1), &n);
    let exceeds = |d: &Nat| binom(&(d + &n), &n) > conditions;
    let mut hi = Nat::one();
    while !exceeds(&hi) {
        hi = &hi * 2u32;
    }
    let mut lo = Nat::zero();
    // Invariant: lo fails, hi exceeds.
    while &lo + 1u32 < hi {
        let mid = (&lo + &hi) / 2u32;
        if exceeds(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Outcome of one sufficiency check: does the certified lower bound reach
/// the conditions-count threshold `(alpha_upper + dim - 1) / (mult + dim - 1)`?
///
/// `sufficient: false` means this lower bound is inconclusive, not that the
/// inequality fails.
#[derive(Debug, Clone)]
pub struct DemaillyReport {
    pub dim: u32,
    pub mult: u32,
    pub points: Nat,
    pub alpha_upper: Nat,
    pub lower: Arc<BoundCertificate>,
    pub rhs: Rat,
    pub sufficient: bool,
}

/// Runs the sufficiency check for one point count.
pub fn demailly_sufficient(
    ctx: &SearchContext,
    dim: u32,
    mult: u32,
    points: &Nat,
) -> DemaillyReport {
    assert!(dim >= 2, "dimension must be at least 2");
    let alpha_upper = conditions_count_alpha_upper(dim, points, mult);
    let rhs = nat_to_rat(&(&alpha_upper + nat(dim as u64 - 1)))
        / nat_to_rat(&nat(mult as u64 + dim as u64 - 1));
    let lower = best_bound(ctx, dim, points);
    let sufficient = lower.result >= rhs;
    DemaillyReport {
        dim,
        mult,
        points: points.clone(),
        alpha_upper,
        lower,
        rhs,
        sufficient,
    }
}

/// Sufficiency checks for every point count in `[from, to]`, in order.
/// `jobs > 1` distributes the checks over that many threads.
pub fn scan_demailly(
    ctx: &SearchContext,
    dim: u32,
    mult: u32,
    from: &Nat,
    to: &Nat,
    jobs: usize,
) -> Vec<DemaillyReport> {
    let mut counts = Vec::new();
    let mut r = from.clone();
    while r <= *to {
        counts.push(r.clone());
        r += 1u32;
    }
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| {
            counts
                .par_iter()
                .map(|points| demailly_sufficient(ctx, dim, mult, points))
                .collect()
        })
    } else {
        counts
            .iter()
            .map(|points| demailly_sufficient(ctx, dim, mult, points))
            .collect()
    }
}

/// Single-point coefficient comparison behind the uniform sufficiency
/// argument: `C(mult*(mult+dim-1) + 1, dim) > C(mult+dim-1, dim) * (mult+1)^dim`.
pub fn verify_lemma52(dim: u32, mult: u32) -> bool {
    assert!(dim >= 1 && mult >= 1);
    let n = nat(dim as u64);
    let m = mult as u64;
    let lhs = binom(&nat(m * (m + dim as u64 - 1) + 1), &n);
    let rhs = binom(&nat(m + dim as u64 - 1), &n) * nat(m as u64 + 1).pow(dim);
    lhs > rhs
}

/// Coefficient comparison for the doubled-degree case at multiplicity 2:
/// `C(2*dim + 3, dim) >= 3^dim * (dim + 1)`.
pub fn verify_case3_binomial(dim: u32) -> bool {
    assert!(dim >= 1);
    let n = nat(dim as u64);
    binom(&nat(2 * dim as u64 + 3), &n) >= nat(3).pow(dim) * nat(dim as u64 + 1)
}
