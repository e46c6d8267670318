//! Sufficiency scan for double points in three-space: for each point count
//! the conditions count gives an upper bound on the initial degree of the
//! doubled ideal, and the question is whether our lower bound on the
//! Waldschmidt constant clears the resulting threshold.

use waldschmidt::numerics::{decimal_string, nat};
use waldschmidt::{scan_demailly, BaseTable, SearchContext};

fn main() {
    let ctx = SearchContext::with_defaults(BaseTable::builtin(), 3);
    let reports = scan_demailly(&ctx, 3, 2, &nat(8), &nat(26), 1);

    println!("dim 3, multiplicity 2:");
    let mut sufficient = 0usize;
    for report in &reports {
        if report.sufficient {
            sufficient += 1;
        }
        println!(
            "  r = {:>2}: alpha_upper {} -> threshold {} (~{}), lower {} (~{}) => {}",
            report.points,
            report.alpha_upper,
            report.rhs,
            decimal_string(&report.rhs, 4),
            report.lower.result,
            decimal_string(&report.lower.result, 4),
            if report.sufficient {
                "sufficient"
            } else {
                "inconclusive"
            }
        );
    }
    println!(
        "{sufficient} of {} point counts are certified sufficient",
        reports.len()
    );
}
