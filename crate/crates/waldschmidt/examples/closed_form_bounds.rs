//! Closed-form lower bounds that need no search at all: the floor of the
//! real root, the quotient rule, and the hyperplane distribution rule.
//! All three evaluate instantly even for very large point counts.

use waldschmidt::base_bounds::{distribution_bound, floor_root_bound, quotient_bound};
use waldschmidt::numerics::{decimal_string, nat};

fn main() {
    println!("five-space, around the fourth power 4^5 = 1024 and up:");
    for r in [1024u64, 1649, 2018, 2387, 2756, 3123, 3124] {
        let points = nat(r);
        let floor = floor_root_bound(5, &points);
        let quotient = quotient_bound(5, &points);
        let distribution = distribution_bound(5, &points);
        let best = [&floor, &quotient, &distribution]
            .into_iter()
            .max_by(|x, y| x.value.cmp(&y.value))
            .unwrap();
        println!(
            "  r = {r:>4}: floor {} | quotient {} | distribution {} -> best {} ({}, ~{})",
            floor.value,
            quotient.value,
            distribution.value,
            best.value,
            best.provenance.label(),
            decimal_string(&best.value, 4)
        );
    }

    println!();
    println!("the quotient rule approaches the next integer from below:");
    for r in [3121u64, 3122, 3123, 3124, 3125] {
        let bound = quotient_bound(5, &nat(r));
        println!(
            "  r = {r}: {} (~{})",
            bound.value,
            decimal_string(&bound.value, 4)
        );
    }
}
