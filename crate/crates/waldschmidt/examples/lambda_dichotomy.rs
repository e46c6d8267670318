//! The linear system behind a combined bound, solved exactly, and the grid
//! feasibility check that flips within a sixteenth of the combined value.
//!
//! The tuple (48/17, 48/17, 2) is the set of plane sub-bounds behind the
//! twenty-point bound 31/12 in three-space.

use waldschmidt::numerics::{decimal_string, rat, Rat};
use waldschmidt::{
    bezout_feasible, bezout_min_lambda_sum, combine, solve_lambda_system, BezoutSystem,
    CombineInput, LambdaSystem,
};

fn main() {
    let bounds = vec![rat(48, 17), rat(48, 17), rat(2, 1)];
    let q = combine(&CombineInput::new(bounds.clone()).expect("valid tuple"));
    println!(
        "combine(48/17, 48/17, 2) = {q} (~{})",
        decimal_string(&q, 4)
    );

    let solution = solve_lambda_system(&LambdaSystem {
        target: q.clone(),
        coefficients: bounds[..bounds.len() - 1].to_vec(),
    })
    .expect("leading reciprocals stay below one");
    let lambdas: Vec<String> = solution.lambdas.iter().map(Rat::to_string).collect();
    println!(
        "leading system: lambdas ({}), total y = {}",
        lambdas.join(", "),
        solution.y
    );

    let system = BezoutSystem {
        candidate: q.clone(),
        bounds: bounds.clone(),
    };
    let min_sum = bezout_min_lambda_sum(&system).expect("nonsingular");
    println!(
        "minimal lambda total at the combined value: {min_sum}, residual degree {}",
        &q - &min_sum
    );

    let step = rat(1, 64);
    let margin = rat(1, 16);
    for (name, candidate) in [
        ("q - 1/16", &q - &margin),
        ("q", q.clone()),
        ("q + 1/16", &q + &margin),
    ] {
        let probe = BezoutSystem {
            candidate,
            bounds: bounds.clone(),
        };
        println!(
            "  {name:>8}: {}",
            if bezout_feasible(&probe, &step) {
                "feasible"
            } else {
                "infeasible"
            }
        );
    }
}
