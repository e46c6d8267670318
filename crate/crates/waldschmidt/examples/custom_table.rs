//! Supplying a richer plane table sharpens every bound built on top of it.
//! The shipped file `data/p2_harbourne_roe.table` adds three plane entries;
//! merged over the builtin table they lift the exhaustive four-space bound
//! for 180 points from 360/103 to 430502824/123159135.

use std::collections::BTreeSet;
use std::path::Path;

use waldschmidt::numerics::{decimal_string, nat};
use waldschmidt::{best_bound, BaseTable, SearchContext, Strategy};

fn main() {
    let path = Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/p2_harbourne_roe.table"
    ));
    let extra = BaseTable::load(path).expect("shipped table parses");
    println!(
        "loaded {} extra plane entries from {}",
        extra.len(),
        path.display()
    );

    let mut merged = BaseTable::builtin();
    merged.merge_max(extra);

    let plain = SearchContext::new(BaseTable::builtin(), BTreeSet::from([Strategy::Exhaustive]));
    let rich = SearchContext::new(merged, BTreeSet::from([Strategy::Exhaustive]));

    for (name, ctx) in [("builtin table", plain), ("merged table", rich)] {
        let cert = best_bound(&ctx, 4, &nat(180));
        let parts: Vec<String> = cert
            .partition
            .as_ref()
            .map(|p| p.parts.iter().map(|n| n.to_string()).collect())
            .unwrap_or_default();
        println!(
            "{name}: alpha-hat(P^4; 180) >= {} (~{}) via parts ({})",
            cert.result,
            decimal_string(&cert.result, 4),
            parts.join(", ")
        );
    }
}
