//! Exhaustive search for a lower bound on twenty very general points in
//! three-space, printing the full derivation and replaying it afterwards.

use std::collections::BTreeSet;

use waldschmidt::numerics::{decimal_string, nat};
use waldschmidt::{best_bound, replay, BaseTable, BoundCertificate, SearchContext, Strategy};

fn print_tree(cert: &BoundCertificate, indent: usize) {
    let pad = "  ".repeat(indent);
    let mut line = format!(
        "{pad}[dim {}] {} points: {} via {}",
        cert.dim,
        cert.points,
        cert.result,
        cert.method_label()
    );
    if let Some(partition) = &cert.partition {
        let parts: Vec<String> = partition.parts.iter().map(|p| p.to_string()).collect();
        line.push_str(&format!(", parts ({})", parts.join(", ")));
    }
    println!("{line}");
    for child in &cert.children {
        print_tree(child, indent + 1);
    }
}

fn main() {
    let table = BaseTable::builtin();
    let ctx = SearchContext::new(table.clone(), BTreeSet::from([Strategy::Exhaustive]));
    let cert = best_bound(&ctx, 3, &nat(20));

    println!(
        "alpha-hat(P^3; 20) >= {} (~{})",
        cert.result,
        decimal_string(&cert.result, 4)
    );
    print_tree(&cert, 0);

    let replayed = replay(&cert, &table).expect("certificate replays");
    assert_eq!(replayed, cert.result);
    println!("replay recomputed every step and agreed: {replayed}");
}
