//! Exact linear algebra behind the combine formula's Bezout argument.
//!
//! Lifting a bound through a distribution charges each group a multiplicity
//! discount `lambda_i`. The discounts that make every group tight solve a
//! small linear system; its distinguished coordinate `y` is the minimal total
//! discount, and the lifted bound is exactly the candidate at which that
//! minimum hits zero slack. [`bezout_feasible`] checks the same feasibility
//! on a finite grid instead.

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::numerics::{nat, nat_to_rat, rat_inv, Rat};

/// Tight-discount system for a target value `C` and positive coefficients
/// `a_1, ..., a_{t-1}`: the `t` unknowns are the discounts `x_k` and the
/// total `y`, subject to `a_k x_k - y = a_k - C` and `sum(x_k) - y = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSystem {
    pub target: Rat,
    pub coefficients: Vec<Rat>,
}

/// Solution of a [`LambdaSystem`]: per-coefficient discounts and their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSolution {
    pub lambdas: Vec<Rat>,
    pub y: Rat,
}

/// The system degenerates exactly when the coefficient reciprocals sum to 1.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("the coefficient reciprocals sum to 1, the system is singular")]
pub struct SingularSystem;

/// Solves a [`LambdaSystem`] in closed form.
///
/// With `S = sum(1/a_k)` the solution is `y = (C*S - (t-1)) / (S - 1)` and
/// `x_k = 1 - (C - y)/a_k`; the system is singular exactly when `S = 1`.
pub fn solve_lambda_system(system: &LambdaSystem) -> Result<LambdaSolution, SingularSystem> {
    assert!(
        !system.coefficients.is_empty(),
        "need at least one coefficient"
    );
    for a in &system.coefficients {
        assert!(*a > Rat::zero(), "coefficients must be positive");
    }
    let s = recip_sum(&system.coefficients);
    if s == Rat::one() {
        return Err(SingularSystem);
    }
    let count = nat_to_rat(&nat(system.coefficients.len() as u64));
    let y = (&system.target * &s - &count) / (&s - Rat::one());
    let lambdas = system
        .coefficients
        .iter()
        .map(|a| Rat::one() - (&system.target - &y) / a)
        .collect();
    Ok(LambdaSolution { lambdas, y })
}

fn recip_sum(values: &[Rat]) -> Rat {
    values.iter().fold(Rat::zero(), |acc, v| acc + rat_inv(v))
}

/// Feasibility instance for a candidate value `p` against sub-bounds
/// `a_1, ..., a_s` (at least two). In [`bezout_min_lambda_sum`] the last
/// bound plays the undischarged tail role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutSystem {
    pub candidate: Rat,
    pub bounds: Vec<Rat>,
}

impl BezoutSystem {
    fn validate(&self) {
        assert!(self.bounds.len() >= 2, "need at least two bounds");
        for a in &self.bounds {
            assert!(*a >= Rat::one(), "bounds must be at least 1");
        }
    }
}

/// Minimal total discount that makes every leading bound tight, in closed
/// form: `(p*R - (s-1)) / (R - 1)` with `R = sum(1/a_j, j < s)`. This equals
/// the `y` coordinate of [`solve_lambda_system`] over the leading bounds.
pub fn bezout_min_lambda_sum(system: &BezoutSystem) -> Result<Rat, SingularSystem> {
    system.validate();
    let leading = &system.bounds[..system.bounds.len() - 1];
    let r = recip_sum(leading);
    if r == Rat::one() {
        return Err(SingularSystem);
    }
    let count = nat_to_rat(&nat(leading.len() as u64));
    Ok((&system.candidate * &r - &count) / (&r - Rat::one()))
}

fn floor_grid(value: &Rat, step: &Rat) -> Rat {
    (value / step).floor() * step
}

fn ceil_grid(value: &Rat, step: &Rat) -> Rat {
    (value / step).ceil() * step
}

/// Whether discounts restricted to multiples of `step` can certify the
/// candidate: some grid total `T` must cover every per-bound minimal
/// discount `max(0, 1 - (p - T)/a_i)` rounded up to the grid, with each
/// discount capped at `max(1, p)` rounded down.
///
/// Scanning totals is exhaustive: for a fixed `T` the per-bound minima are
/// forced, and topping coordinates up one grid step at a time reaches any
/// total up to the capped maximum.
pub fn bezout_feasible(system: &BezoutSystem, step: &Rat) -> bool {
    system.validate();
    assert!(*step > Rat::zero(), "grid step must be positive");
    let p = &system.candidate;
    let cap = floor_grid(&Rat::one().max(p.clone()), step);
    let cap_units = (&cap / step).to_integer();
    let unit_count = BigInt::from(system.bounds.len() as u64) * &cap_units;
    let mut units = BigInt::zero();
    while units <= unit_count {
        let total = Rat::from_integer(units.clone()) * step;
        let mut needed = Rat::zero();
        let mut within_caps = true;
        for a in &system.bounds {
            let raw = Rat::one() - (p - &total) / a;
            let lower = if raw.is_positive() {
                ceil_grid(&raw, step)
            } else {
                Rat::zero()
            };
            if lower > cap {
                within_caps = false;
                break;
            }
            needed += lower;
        }
        if within_caps && needed <= total {
            return true;
        }
        units += 1;
    }
    false
}
