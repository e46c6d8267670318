//! Full-pipeline checks over the shipped tables, searches, scans, and
//! solvers.  Each test prints one `<label>: PASS` (or `FAIL`/`SKIP`) line,
//! so a `--nocapture` run reads as a one-line verdict per claim.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use waldschmidt::base_bounds::{distribution_bound, quotient_bound};
use waldschmidt::cli::{cmd_figure, RunConfig};
use waldschmidt::demailly::{verify_case3_binomial, verify_lemma52};
use waldschmidt::numerics::{nat, nat_to_rat, rat, rat_inv, rat_pow, Nat, Rat};
use waldschmidt::{
    best_bound, bezout_feasible, bezout_min_lambda_sum, combine, evaluate_partition, scan_demailly,
    BaseTable, BezoutSystem, CombineInput, LambdaSystem, SearchContext, Strategy,
};
use waldschmidt::{solve_lambda_system, LambdaSolution};

fn only(strategy: Strategy) -> BTreeSet<Strategy> {
    BTreeSet::from([strategy])
}

fn parts(values: &[u64]) -> Vec<Nat> {
    values.iter().copied().map(nat).collect()
}

/// Builtin table plus the shipped plane entries.
fn shipped_plane_table() -> BaseTable {
    let mut table = BaseTable::builtin();
    let path = Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/p2_harbourne_roe.table"
    ));
    table.merge_max(BaseTable::load(path).expect("shipped plane table parses"));
    table
}

#[test]
fn exhaustive_search_recovers_the_twenty_point_space_bound() {
    let started = Instant::now();
    let ctx = SearchContext::new(BaseTable::builtin(), only(Strategy::Exhaustive));
    let cert = best_bound(&ctx, 3, &nat(20));
    assert_eq!(cert.result, rat(31, 12));
    assert_eq!(
        cert.partition.as_ref().expect("combined node").parts,
        parts(&[8, 8, 4])
    );
    assert_eq!(cert.a_values, vec![rat(48, 17), rat(48, 17), rat(2, 1)]);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("twenty-point exhaustive space bound: PASS");
}

#[test]
fn heuristic_chain_recovers_the_one_hundred_eighty_point_bound() {
    let started = Instant::now();
    let ctx = SearchContext::new(BaseTable::builtin(), only(Strategy::Heuristic));
    let cert = best_bound(&ctx, 4, &nat(180));
    assert_eq!(cert.result, rat(360, 103));
    assert_eq!(
        cert.partition.as_ref().expect("combined node").parts,
        parts(&[51, 51, 51, 27])
    );
    let sub = cert
        .children
        .iter()
        .find(|child| child.points == nat(51))
        .expect("51-point subquery");
    assert_eq!(sub.result, rat(309, 86));
    assert_eq!(
        sub.partition.as_ref().expect("combined subnode").parts,
        parts(&[14, 14, 14, 9])
    );
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("heuristic chain for 180 points: PASS");
}

#[test]
fn pure_power_distribution_reaches_ten_thirds() {
    let q = combine(
        &CombineInput::new(vec![rat(4, 1), rat(4, 1), rat(3, 1), rat(2, 1)]).expect("valid tuple"),
    );
    assert_eq!(q, rat(10, 3));

    let ctx = SearchContext::new(BaseTable::builtin(), only(Strategy::PurePower));
    let explicit = evaluate_partition(&ctx, 4, &nat(180), &parts(&[64, 64, 27, 8]))
        .expect("pure-power distribution is admissible");
    assert_eq!(explicit.result, rat(10, 3));

    let cert = best_bound(&ctx, 4, &nat(180));
    assert!(
        cert.result >= rat(10, 3),
        "search stopped at {}",
        cert.result
    );
    println!("pure-power weak chain reaches 10/3: PASS");
}

#[test]
fn plane_data_unlocks_the_sharper_one_hundred_eighty_point_bound() {
    let target = rat(430502824, 123159135);

    // Table-free arithmetic identity for the claimed optimum.
    let tuple = vec![
        rat(17457, 4816),
        rat(17457, 4816),
        rat(63495, 17974),
        rat(3, 1),
    ];
    let q = combine(&CombineInput::new(tuple).expect("valid tuple"));
    assert_eq!(q, target);

    let started = Instant::now();
    let ctx = SearchContext::new(shipped_plane_table(), only(Strategy::Exhaustive));
    let cert = best_bound(&ctx, 4, &nat(180));
    assert!(cert.result >= target, "search stopped at {}", cert.result);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(900), "took {elapsed:?}");
    println!(
        "plane data unlocks the sharper 180-point bound: PASS (search value {}, {elapsed:?})",
        cert.result
    );
}

#[test]
fn closed_form_bounds_hit_the_five_space_values() {
    let started = Instant::now();
    for (points, num) in [(1649u64, 21i64), (2018, 22), (2387, 23), (2756, 24)] {
        assert_eq!(distribution_bound(5, &nat(points)).value, rat(num, 5));
    }
    assert_eq!(quotient_bound(5, &nat(3124)).value, rat(3124, 625));
    assert_eq!(quotient_bound(5, &nat(3123)).value, rat(3123, 625));
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("closed-form five-space values: PASS");
}

fn max_delta_trailer(text: &str) -> Option<f64> {
    let line = text.lines().find(|line| line.starts_with("# max delta"))?;
    line.rsplit(": ").next()?.trim().parse().ok()
}

/// Optional richer plane table for the sharp accuracy figure.
fn full_plane_table() -> Option<PathBuf> {
    if let Ok(path) = std::env::var("WC_HR_FULL_TABLE") {
        let path = PathBuf::from(path);
        if path.exists() {
            return Some(path);
        }
    }
    let shipped = Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/p2_harbourne_roe_full.table"
    ));
    shipped.exists().then(|| shipped.to_path_buf())
}

#[test]
fn accuracy_figure_stays_inside_the_envelope() {
    let started = Instant::now();
    let config = RunConfig::default();
    let mut out = Vec::new();
    cmd_figure(&config, 3, &nat(125), &mut out).expect("figure renders");
    let text = String::from_utf8(out).expect("utf-8 output");
    let delta = max_delta_trailer(&text).expect("trailer present");
    assert!(
        delta > 0.0 && delta <= 0.35,
        "default-table max delta {delta}"
    );
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("accuracy figure, default table: PASS (max delta {delta})");

    match full_plane_table() {
        Some(path) => {
            // The sharp 0.289 gap belongs to the single-candidate searches;
            // exhaustive enumeration over a full table undercuts it.
            let config = RunConfig {
                base_table: Some(path.clone()),
                strategies: Some(BTreeSet::from([Strategy::Heuristic, Strategy::PurePower])),
                ..RunConfig::default()
            };
            let mut out = Vec::new();
            cmd_figure(&config, 3, &nat(125), &mut out).expect("figure renders");
            let text = String::from_utf8(out).expect("utf-8 output");
            let delta = max_delta_trailer(&text).expect("trailer present");
            assert!(
                (delta - 0.289).abs() <= 0.005,
                "supplemented max delta {delta} from {}",
                path.display()
            );
            println!("accuracy figure, supplemented table: PASS (max delta {delta})");
        }
        None => println!(
            "accuracy figure, supplemented table: SKIP (no full plane table; \
             point WC_HR_FULL_TABLE at one to check the sharp 0.289 gap)"
        ),
    }
}

#[test]
fn desk_scale_sufficiency_scans_certify_every_count() {
    let started = Instant::now();
    let plane_ctx = SearchContext::with_defaults(BaseTable::builtin(), 2);
    // A small enumeration budget keeps the thousand-point sweep quick: the
    // exhaustive strategy still handles the delicate small counts and falls
    // back to the heuristic where the envelope margin is wide anyway.
    let space_ctx =
        SearchContext::with_defaults(BaseTable::builtin(), 3).with_max_partitions(10_000);
    let mut inconclusive: Vec<(u32, u32, Nat)> = Vec::new();
    for (dim, mult) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        let ctx = if dim == 2 { &plane_ctx } else { &space_ctx };
        for report in scan_demailly(ctx, dim, mult, &nat(1), &nat(1000), 4) {
            if !report.sufficient {
                inconclusive.push((dim, mult, report.points.clone()));
            }
        }
    }
    let elapsed = started.elapsed();
    if inconclusive.is_empty() {
        println!("desk-scale sufficiency scans: PASS ({elapsed:?})");
    } else {
        let listing: Vec<String> = inconclusive
            .iter()
            .map(|(dim, mult, points)| format!("(dim {dim}, mult {mult}, r {points})"))
            .collect();
        println!(
            "desk-scale sufficiency scans: FAIL ({} inconclusive: {})",
            inconclusive.len(),
            listing.join(", ")
        );
    }
    assert!(
        inconclusive.is_empty(),
        "inconclusive cases remain: {inconclusive:?}"
    );
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
}

#[test]
fn binomial_verification_suite_holds() {
    let started = Instant::now();
    for dim in 4..=20 {
        for mult in 3..=20 {
            assert!(
                verify_lemma52(dim, mult),
                "gap closes at dim {dim}, mult {mult}"
            );
        }
    }
    for dim in 4..=40 {
        assert_eq!(
            verify_case3_binomial(dim),
            dim >= 7,
            "threshold off at dim {dim}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("binomial verification suite: PASS");
}

fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den_max: i64) -> Rat {
    let den = rng.gen_range(1..=den_max);
    let num = rng.gen_range(lo * den..=hi * den);
    rat(num, den)
}

fn recip_sum(values: &[Rat]) -> Rat {
    values.iter().map(rat_inv).sum()
}

/// Nonincreasing tuple whose combined value exists: the leading entries sit
/// above `s - 1`, the tail stays between 1 and the reciprocal defect.
fn random_valid_bounds(rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let s = rng.gen_range(2usize..=4);
    let mut a: Vec<Rat> = (0..s - 1)
        .map(|_| {
            let bump = random_rat(rng, 0, 2, 12) + rat(1, 24);
            rat(s as i64 - 1, 1) * (Rat::one() + bump)
        })
        .collect();
    a.sort_by(|x, y| y.cmp(x));
    let r = recip_sum(&a);
    let upper = rat_inv(&(Rat::one() - r)).min(a.last().unwrap().clone());
    let num = rng.gen_range(0i64..=24);
    a.push(Rat::one() + rat(num, 24) * (upper - Rat::one()));
    a
}

/// Gauss-Jordan elimination on an augmented matrix, exact arithmetic.
fn gaussian_solve(mut m: Vec<Vec<Rat>>) -> Option<Vec<Rat>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&row| m[row][col] != Rat::zero())?;
        m.swap(col, pivot);
        let inv = rat_inv(&m[col][col]);
        for entry in &mut m[col] {
            *entry = &*entry * &inv;
        }
        for row in 0..n {
            if row != col && m[row][col] != Rat::zero() {
                let factor = m[row][col].clone();
                for j in col..=n {
                    let delta = &m[col][j] * &factor;
                    m[row][j] = &m[row][j] - &delta;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Rows `a_k x_k - y = a_k - C` and `sum x - y = 0`, unknowns x then y.
fn system_matrix(system: &LambdaSystem) -> Vec<Vec<Rat>> {
    let t = system.coefficients.len() + 1;
    let mut m = vec![vec![Rat::zero(); t + 1]; t];
    for (k, a) in system.coefficients.iter().enumerate() {
        m[k][k] = a.clone();
        m[k][t - 1] = rat(-1, 1);
        m[k][t] = a - &system.target;
    }
    for col in 0..t - 1 {
        m[t - 1][col] = Rat::one();
    }
    m[t - 1][t - 1] = rat(-1, 1);
    m
}

#[test]
fn lambda_solver_matches_gaussian_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut solved = 0;
    while solved < 1000 {
        let t = rng.gen_range(2usize..=8);
        let coefficients: Vec<Rat> = (0..t - 1).map(|_| random_rat(&mut rng, 1, 8, 6)).collect();
        let target = random_rat(&mut rng, 1, 8, 6);
        let system = LambdaSystem {
            target,
            coefficients,
        };
        let Ok(solution) = solve_lambda_system(&system) else {
            continue;
        };
        let LambdaSolution { lambdas, y } = solution;
        let eliminated = gaussian_solve(system_matrix(&system)).expect("nonsingular");
        assert_eq!(eliminated[t - 1], y);
        assert_eq!(&eliminated[..t - 1], &lambdas[..]);
        solved += 1;
    }

    let mut minimized = 0;
    while minimized < 200 {
        let bounds = random_valid_bounds(&mut rng);
        let candidate = random_rat(&mut rng, 1, 8, 6);
        let system = BezoutSystem {
            candidate: candidate.clone(),
            bounds: bounds.clone(),
        };
        let Ok(min_sum) = bezout_min_lambda_sum(&system) else {
            continue;
        };
        let leading = LambdaSystem {
            target: candidate,
            coefficients: bounds[..bounds.len() - 1].to_vec(),
        };
        let eliminated = gaussian_solve(system_matrix(&leading)).expect("nonsingular");
        assert_eq!(*eliminated.last().unwrap(), min_sum);
        minimized += 1;
    }
    println!("lambda solver vs elimination: PASS");
}

#[test]
fn grid_feasibility_brackets_every_combined_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    let step = rat(1, 64);
    let margin = rat(1, 16);
    for round in 0..100 {
        let bounds = random_valid_bounds(&mut rng);
        let q = combine(&CombineInput::new(bounds.clone()).expect("valid tuple"));
        let above = BezoutSystem {
            candidate: &q + &margin,
            bounds: bounds.clone(),
        };
        let below = BezoutSystem {
            candidate: &q - &margin,
            bounds: bounds.clone(),
        };
        assert!(
            bezout_feasible(&above, &step),
            "round {round}: {q} + 1/16 should be feasible for {bounds:?}"
        );
        assert!(
            !bezout_feasible(&below, &step),
            "round {round}: {q} - 1/16 should be infeasible for {bounds:?}"
        );
    }
    println!("grid feasibility dichotomy: PASS");
}

#[test]
fn global_envelope_and_monotonicity_hold() {
    let started = Instant::now();
    let strategies = BTreeSet::from([Strategy::Heuristic, Strategy::PurePower]);
    for dim in 2..=5u32 {
        let ctx = SearchContext::new(BaseTable::builtin(), strategies.clone());
        let mut previous = Rat::zero();
        for r in 1..=1300u64 {
            let points = nat(r);
            let cert = best_bound(&ctx, dim, &points);
            assert!(
                rat_pow(&cert.result, dim) <= nat_to_rat(&points),
                "envelope violated at dim {dim}, r {r}: {}",
                cert.result
            );
            assert!(
                cert.result >= previous,
                "bound dropped at dim {dim}, r {r}: {} < {previous}",
                cert.result
            );
            previous = cert.result.clone();
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("global envelope and monotonicity: PASS ({elapsed:?})");
}
