//! Accuracy of the three-space lower bounds against the trivial upper
//! envelope r^(1/3).  The gap near cubes collapses to zero because the
//! floor-root bound is sharp there.

use num::Zero;
use waldschmidt::numerics::{decimal_string, nat, nth_root_approx, Rat};
use waldschmidt::{best_bound, BaseTable, SearchContext};

fn main() {
    let ctx = SearchContext::with_defaults(BaseTable::builtin(), 3);

    println!(
        "{:>4}  {:>10}  {:>8}  {:>7}",
        "r", "lower", "upper", "delta"
    );
    let mut worst: Option<(u64, Rat)> = None;
    for r in 1..=40u64 {
        let points = nat(r);
        let cert = best_bound(&ctx, 3, &points);
        let upper = nth_root_approx(&points, 3);
        let delta = &upper - &cert.result;
        assert!(delta >= Rat::zero(), "lower bound crossed the envelope");
        if r >= 8 && worst.as_ref().map_or(true, |(_, d)| delta > *d) {
            worst = Some((r, delta.clone()));
        }
        println!(
            "{r:>4}  {:>10}  {:>8}  {:>7}",
            cert.result.to_string(),
            decimal_string(&upper, 4),
            decimal_string(&delta, 4)
        );
    }

    let (r, delta) = worst.expect("rows past r = 8 exist");
    println!(
        "widest gap for r in [8, 40]: {} at r = {r}",
        decimal_string(&delta, 4)
    );
}
