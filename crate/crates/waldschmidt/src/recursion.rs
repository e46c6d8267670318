//! Recursive lifting of lower bounds across dimensions.
//!
//! A bound for `r` points in dimension `dim` is obtained by distributing the
//! points into `k+1` groups, bounding each group one dimension lower, and
//! combining the clamped group bounds. The searches differ only in which
//! distributions they try; every result is floored at [`best_base_bound`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num::{One, Zero};
use thiserror::Error;

use crate::base_bounds::{best_base_bound, BaseTable, Provenance};
use crate::numerics::{int_root_floor, nat, nat_pow, nat_to_rat, nat_to_u64, rat_inv, Nat, Rat};

/// Default enumeration budget, counted in evaluated distributions.
pub const DEFAULT_MAX_PARTITIONS: u64 = 2_000_000;

/// Hard cap on the number of groups a search will materialize.
const MAX_GROUPS: u64 = 16_384;

/// How a search picks candidate distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// Every nonincreasing distribution at the query's group count.
    Exhaustive,
    /// One equalized distribution per choice of the trailing group.
    Heuristic,
    /// Equalized leading groups, trailing group a pure power.
    PurePower,
    /// Closed-form bounds only, no recursion.
    ClosedForm,
}

impl Strategy {
    pub const fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Heuristic => "heuristic",
            Strategy::PurePower => "purepower",
            Strategy::ClosedForm => "closed-form",
        }
    }

    pub fn parse(text: &str) -> Option<Strategy> {
        match text {
            "exhaustive" => Some(Strategy::Exhaustive),
            "heuristic" => Some(Strategy::Heuristic),
            "purepower" => Some(Strategy::PurePower),
            "closed-form" => Some(Strategy::ClosedForm),
            _ => None,
        }
    }

    /// Default set: heuristic and purepower, plus exhaustive in dimension 3
    /// where full enumeration stays cheap.
    pub fn defaults_for_dim(dim: u32) -> BTreeSet<Strategy> {
        let mut set = BTreeSet::from([Strategy::Heuristic, Strategy::PurePower]);
        if dim == 3 {
            set.insert(Strategy::Exhaustive);
        }
        set
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A distribution of points into `k+1` nonincreasing groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub k: u64,
    pub parts: Vec<Nat>,
}

/// Replayable derivation record for one lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub dim: u32,
    pub points: Nat,
    /// Which rule produced `result`.
    pub method: Provenance,
    /// The search that found a combined node, if any.
    pub strategy: Option<Strategy>,
    /// The winning distribution, for combined nodes.
    pub partition: Option<Partition>,
    /// Sub-bound derivations aligned with `partition.parts`.
    pub children: Vec<Arc<BoundCertificate>>,
    /// Clamped child values, sorted nonincreasing, aligned with `children`.
    pub a_values: Vec<Rat>,
    pub result: Rat,
    /// Budget or range remarks; `None` for clean runs.
    pub note: Option<String>,
}

impl BoundCertificate {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Label such as `floor-root` or `stepback(exhaustive)`.
    pub fn method_label(&self) -> String {
        match (&self.method, self.strategy) {
            (Provenance::Stepback, Some(s)) => format!("stepback({s})"),
            (m, _) => m.label(),
        }
    }
}

/// Validated nonincreasing tuple for the combine formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombineInput {
    a: Vec<Rat>,
}

/// Rejected inputs for [`CombineInput::new`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombineError {
    #[error("need at least two values, got {0}")]
    TooFewValues(usize),
    #[error("all values must be at least 1, got {0}")]
    ValueBelowOne(Rat),
    #[error("reciprocals of the leading values reach 1; 1 - sum(1/a_j, j < s) must stay positive")]
    LeadingReciprocalsReachOne,
    #[error("reciprocals of all values stay below 1; sum(1/a_j, j <= s) must reach 1")]
    TotalReciprocalsBelowOne,
}

impl CombineInput {
    /// Sorts the values nonincreasing and checks the two reciprocal-sum
    /// hypotheses.
    pub fn new(mut a: Vec<Rat>) -> Result<CombineInput, CombineError> {
        if a.len() < 2 {
            return Err(CombineError::TooFewValues(a.len()));
        }
        a.sort_by(|x, y| y.cmp(x));
        if let Some(v) = a.iter().find(|v| **v < Rat::one()) {
            return Err(CombineError::ValueBelowOne(v.clone()));
        }
        let lead = recip_sum(&a[..a.len() - 1]);
        if lead >= Rat::one() {
            return Err(CombineError::LeadingReciprocalsReachOne);
        }
        if &lead + rat_inv(a.last().unwrap()) < Rat::one() {
            return Err(CombineError::TotalReciprocalsBelowOne);
        }
        Ok(CombineInput { a })
    }

    pub fn values(&self) -> &[Rat] {
        &self.a
    }
}

fn recip_sum(values: &[Rat]) -> Rat {
    values.iter().fold(Rat::zero(), |acc, v| acc + rat_inv(v))
}

/// The lifted bound `(1 - sum(1/a_j, j < s)) * a_s + (s - 1)`.
pub fn combine(input: &CombineInput) -> Rat {
    let a = input.values();
    let s = a.len();
    let lead = recip_sum(&a[..s - 1]);
    (Rat::one() - lead) * a.last().unwrap() + nat_to_rat(&nat((s - 1) as u64))
}

/// Rejected inputs for [`stepback_combine`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepbackError {
    #[error("need exactly {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("values must be sorted nonincreasing")]
    NotSorted,
    #[error("the leading value {value} must exceed the full group count {k}")]
    LeadTooSmall { value: Rat, k: u64 },
    #[error("value {value} at position {position} must lie between {k} and {}", k + 1)]
    ValueOutsideGroupRange { position: usize, value: Rat, k: u64 },
    #[error("the trailing value {value} must lie between 1 and {}", k + 1)]
    TailOutOfRange { value: Rat, k: u64 },
}

/// Lifted bound for `k` full groups plus one trailing group:
/// `(1 - sum(1/a_j, j <= k)) * a_{k+1} + k`.
///
/// Requires `a` sorted nonincreasing with `a_1 > k`, every other full-group
/// value in `[k, k+1]`, and the trailing value in `[1, k+1]` (clamp values
/// before calling). The result always lies in `(k, k+1]`.
pub fn stepback_combine(k: u64, a: &[Rat]) -> Result<Rat, StepbackError> {
    assert!(k >= 1, "need at least one full group");
    let expected = usize::try_from(k + 1).expect("group count fits in memory");
    if a.len() != expected {
        return Err(StepbackError::WrongLength {
            expected,
            got: a.len(),
        });
    }
    if !a.windows(2).all(|w| w[0] >= w[1]) {
        return Err(StepbackError::NotSorted);
    }
    let k_rat = nat_to_rat(&nat(k));
    let cap = &k_rat + Rat::one();
    for (idx, value) in a[..expected - 1].iter().enumerate() {
        if idx == 0 && *value <= k_rat {
            return Err(StepbackError::LeadTooSmall {
                value: value.clone(),
                k,
            });
        }
        if *value < k_rat || *value > cap {
            return Err(StepbackError::ValueOutsideGroupRange {
                position: idx + 1,
                value: value.clone(),
                k,
            });
        }
    }
    let tail = a.last().unwrap();
    if *tail < Rat::one() || *tail > cap {
        return Err(StepbackError::TailOutOfRange {
            value: tail.clone(),
            k,
        });
    }
    let input =
        CombineInput::new(a.to_vec()).expect("the group hypotheses imply the combine hypotheses");
    let q = combine(&input);
    debug_assert!(q > k_rat && q <= cap);
    Ok(q)
}

/// Shared configuration and memo cache for the recursive searches.
#[derive(Debug)]
pub struct SearchContext {
    table: BaseTable,
    strategies: BTreeSet<Strategy>,
    max_partitions: u64,
    depth_cap: Option<u32>,
    memo_enabled: bool,
    memo: Mutex<HashMap<(u32, Nat, u32), Arc<BoundCertificate>>>,
}

impl SearchContext {
    pub fn new(table: BaseTable, strategies: BTreeSet<Strategy>) -> SearchContext {
        assert!(!strategies.is_empty(), "need at least one strategy");
        SearchContext {
            table,
            strategies,
            max_partitions: DEFAULT_MAX_PARTITIONS,
            depth_cap: None,
            memo_enabled: true,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Context with [`Strategy::defaults_for_dim`] for queries in dimension
    /// `dim`.
    pub fn with_defaults(table: BaseTable, dim: u32) -> SearchContext {
        SearchContext::new(table, Strategy::defaults_for_dim(dim))
    }

    pub fn with_max_partitions(mut self, budget: u64) -> SearchContext {
        self.max_partitions = budget;
        self
    }

    pub fn with_depth_cap(mut self, cap: Option<u32>) -> SearchContext {
        self.depth_cap = cap;
        self
    }

    pub fn with_memo(mut self, enabled: bool) -> SearchContext {
        self.memo_enabled = enabled;
        self
    }

    pub fn table(&self) -> &BaseTable {
        &self.table
    }

    pub fn strategies(&self) -> &BTreeSet<Strategy> {
        &self.strategies
    }

    pub fn max_partitions(&self) -> u64 {
        self.max_partitions
    }

    pub fn depth_cap(&self) -> Option<u32> {
        self.depth_cap
    }
}

/// Remaining recursion levels for a query in dimension `dim`.
fn effective_depth(ctx: &SearchContext, dim: u32) -> u32 {
    let natural = dim.saturating_sub(2);
    ctx.depth_cap.map_or(natural, |cap| cap.min(natural))
}

/// Best certified bound for the query under the context's strategy set.
///
/// Dimension 2 and depth-capped queries return the base bound; perfect
/// `dim`-th powers short-circuit to the (sharp) floor-root bound.
pub fn best_bound(ctx: &SearchContext, dim: u32, points: &Nat) -> Arc<BoundCertificate> {
    assert!(dim >= 2, "dimension must be at least 2");
    assert!(!points.is_zero(), "need at least one point");
    best_bound_at(ctx, dim, points, effective_depth(ctx, dim))
}

fn best_bound_at(ctx: &SearchContext, dim: u32, points: &Nat, depth: u32) -> Arc<BoundCertificate> {
    let depth = depth.min(dim.saturating_sub(2));
    if !ctx.memo_enabled {
        return compute_best(ctx, dim, points, depth);
    }
    let key = (dim, points.clone(), depth);
    if let Some(hit) = ctx.memo.lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let cert = compute_best(ctx, dim, points, depth);
    ctx.memo.lock().unwrap().insert(key, Arc::clone(&cert));
    cert
}

fn compute_best(ctx: &SearchContext, dim: u32, points: &Nat, depth: u32) -> Arc<BoundCertificate> {
    let base = base_certificate(ctx, dim, points);
    if dim == 2 || depth == 0 || points.is_one() {
        return base;
    }
    let k = int_root_floor(&(points - 1u32), dim);
    if nat_pow(&(&k + 1u32), dim) == *points {
        // Perfect power: the floor-root bound is sharp, no search can beat it.
        return base;
    }
    let has_search = ctx.strategies.iter().any(|s| *s != Strategy::ClosedForm);
    if has_search && Domain::new(dim, points).is_none() {
        return annotate(base, NOTE_RANGE);
    }
    let mut best = base;
    for strategy in ctx.strategies.iter().copied() {
        let cand = match strategy {
            Strategy::Exhaustive => search_exhaustive_at(ctx, dim, points, depth),
            Strategy::Heuristic => search_heuristic_at(ctx, dim, points, depth),
            Strategy::PurePower => search_purepower_at(ctx, dim, points, depth),
            Strategy::ClosedForm => continue,
        };
        best = prefer(best, cand);
    }
    best
}

fn base_certificate(ctx: &SearchContext, dim: u32, points: &Nat) -> Arc<BoundCertificate> {
    let bound = best_base_bound(dim, points, &ctx.table);
    Arc::new(BoundCertificate {
        dim,
        points: points.clone(),
        method: bound.provenance,
        strategy: None,
        partition: None,
        children: Vec::new(),
        a_values: Vec::new(),
        result: bound.value,
        note: None,
    })
}

/// Ties keep the base bound over a search result, then the lexicographically
/// smallest partition, then the earliest strategy.
fn prefer(current: Arc<BoundCertificate>, cand: Arc<BoundCertificate>) -> Arc<BoundCertificate> {
    fn rank(cert: &BoundCertificate) -> (u8, &[Nat], u8) {
        let search = u8::from(cert.strategy.is_some());
        let parts: &[Nat] = cert.partition.as_ref().map_or(&[], |p| &p.parts);
        let strat = match cert.strategy {
            None => 0,
            Some(Strategy::Exhaustive) => 1,
            Some(Strategy::Heuristic) => 2,
            Some(Strategy::PurePower) => 3,
            Some(Strategy::ClosedForm) => 4,
        };
        (search, parts, strat)
    }
    match cand.result.cmp(&current.result) {
        Ordering::Greater => cand,
        Ordering::Less => current,
        Ordering::Equal => {
            if rank(&cand) < rank(&current) {
                cand
            } else {
                current
            }
        }
    }
}

fn annotate(cert: Arc<BoundCertificate>, note: &str) -> Arc<BoundCertificate> {
    let mut inner = (*cert).clone();
    inner.note = Some(match inner.note.take() {
        Some(old) => format!("{old}; {note}"),
        None => note.to_string(),
    });
    Arc::new(inner)
}

/// u64 view of a query, with the group geometry derived from it.
struct Domain {
    r: u64,
    k: u64,
    /// Largest admissible group size, `(k+1)^(dim-1)` capped at `r`.
    cap: u64,
    /// `k^(dim-1)`, the group size needed to certify a full group.
    kpow: u64,
    /// Group total for exhaustive enumeration, `min(r, (k+1)^dim)`.
    total: u64,
}

impl Domain {
    fn new(dim: u32, points: &Nat) -> Option<Domain> {
        let r = nat_to_u64(points)?;
        if r < 2 {
            return None;
        }
        let k = nat_to_u64(&int_root_floor(&nat(r - 1), dim)).expect("root fits in u64");
        let cap = pow_sat(k + 1, dim - 1).min(r as u128) as u64;
        let kpow = pow_sat(k, dim - 1).min(r as u128) as u64;
        let total = pow_sat(k + 1, dim).min(r as u128) as u64;
        Some(Domain {
            r,
            k,
            cap,
            kpow,
            total,
        })
    }
}

fn pow_sat(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base as u128) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}

const NOTE_RANGE: &str = "point count exceeds the searchable integer range";
const NOTE_GROUPS: &str = "group count exceeds the searchable range";

/// Clamped sub-bound lookup shared by the candidate evaluations of one search.
struct SubBounds<'a> {
    ctx: &'a SearchContext,
    dim: u32,
    depth: u32,
    cap_value: Rat,
    cache: HashMap<u64, Rat>,
}

impl<'a> SubBounds<'a> {
    fn new(ctx: &'a SearchContext, dim: u32, depth: u32, k: u64) -> SubBounds<'a> {
        SubBounds {
            ctx,
            dim,
            depth,
            cap_value: nat_to_rat(&nat(k + 1)),
            cache: HashMap::new(),
        }
    }

    fn clamped(&mut self, part: u64) -> Rat {
        if let Some(v) = self.cache.get(&part) {
            return v.clone();
        }
        let value = best_bound_at(self.ctx, self.dim - 1, &nat(part), self.depth - 1)
            .result
            .clone()
            .min(self.cap_value.clone());
        self.cache.insert(part, value.clone());
        value
    }

    fn candidate_value(&mut self, k: u64, parts: &[u64]) -> Option<Rat> {
        let mut a: Vec<Rat> = parts.iter().map(|p| self.clamped(*p)).collect();
        a.sort_by(|l, r| r.cmp(l));
        stepback_combine(k, &a).ok()
    }
}

/// Running winner among evaluated distributions: larger value first, then
/// lexicographically smaller sorted parts.
#[derive(Default)]
struct BestCandidate {
    found: Option<(Rat, Vec<u64>)>,
}

impl BestCandidate {
    fn offer(&mut self, value: Rat, parts: &[u64]) {
        let mut sorted = parts.to_vec();
        sorted.sort_unstable_by(|l, r| r.cmp(l));
        match &self.found {
            Some((best_value, best_parts))
                if value < *best_value || (value == *best_value && sorted >= *best_parts) => {}
            _ => self.found = Some((value, sorted)),
        }
    }
}

/// Evaluates an explicit distribution into a combined certificate.
fn evaluate_parts(
    ctx: &SearchContext,
    dim: u32,
    points: &Nat,
    k: u64,
    parts: Vec<Nat>,
    depth: u32,
    strategy: Option<Strategy>,
) -> Result<Arc<BoundCertificate>, StepbackError> {
    let cap_value = nat_to_rat(&nat(k + 1));
    let mut rows: Vec<(Rat, Nat, Arc<BoundCertificate>)> = parts
        .into_iter()
        .map(|part| {
            let child = best_bound_at(ctx, dim - 1, &part, depth - 1);
            let a = child.result.clone().min(cap_value.clone());
            (a, part, child)
        })
        .collect();
    rows.sort_by(|l, r| r.0.cmp(&l.0).then_with(|| r.1.cmp(&l.1)));
    let a_values: Vec<Rat> = rows.iter().map(|row| row.0.clone()).collect();
    let result = stepback_combine(k, &a_values)?;
    let mut sorted_parts = Vec::with_capacity(rows.len());
    let mut children = Vec::with_capacity(rows.len());
    for (_, part, child) in rows {
        sorted_parts.push(part);
        children.push(child);
    }
    Ok(Arc::new(BoundCertificate {
        dim,
        points: points.clone(),
        method: Provenance::Stepback,
        strategy,
        partition: Some(Partition {
            k,
            parts: sorted_parts,
        }),
        children,
        a_values,
        result,
        note: None,
    }))
}

/// Evaluates one caller-chosen distribution for the query `(dim, points)`.
///
/// The parts need not be sorted; they must consist of `k+1` entries in
/// `[1, (k+1)^(dim-1)]` summing to at most `points`, where `k` is the
/// query's group count. Hypothesis failures come back as errors.
pub fn evaluate_partition(
    ctx: &SearchContext,
    dim: u32,
    points: &Nat,
    parts: &[Nat],
) -> Result<Arc<BoundCertificate>, StepbackError> {
    assert!(dim >= 3, "dimension must be at least 3");
    assert!(*points >= nat(2), "need at least two points");
    let k_nat = int_root_floor(&(points - 1u32), dim);
    let k = nat_to_u64(&k_nat).expect("group count fits in u64");
    let expected = usize::try_from(k + 1).expect("group count fits in memory");
    assert_eq!(parts.len(), expected, "need exactly k+1 = {expected} parts");
    let sum: Nat = parts.iter().sum();
    assert!(sum <= *points, "parts must not exceed the point count");
    let cap = nat_pow(&(&k_nat + 1u32), dim - 1);
    for part in parts {
        assert!(!part.is_zero() && *part <= cap, "part out of range");
    }
    let depth = effective_depth(ctx, dim);
    assert!(depth >= 1, "the depth cap forbids recursion here");
    evaluate_parts(ctx, dim, points, k, parts.to_vec(), depth, None)
}

/// Builds the winning certificate for a search, falling back to the base
/// certificate when no distribution was valid.
fn finish_search(
    ctx: &SearchContext,
    dim: u32,
    points: &Nat,
    k: u64,
    depth: u32,
    strategy: Strategy,
    best: BestCandidate,
    base: Arc<BoundCertificate>,
) -> Arc<BoundCertificate> {
    match best.found {
        None => base,
        Some((_, parts)) => {
            let parts: Vec<Nat> = parts.into_iter().map(nat).collect();
            let cert = evaluate_parts(ctx, dim, points, k, parts, depth, Some(strategy))
                .expect("winning distribution revalidates");
            prefer(base, cert)
        }
    }
}

/// Full enumeration of the nonincreasing distributions with group total
/// `min(points, (k+1)^dim)`, leading groups at least `k^(dim-1)` (the first
/// strictly larger). Falls back to [`search_heuristic`] with a note when the
/// budget runs out.
pub fn search_exhaustive(ctx: &SearchContext, dim: u32, points: &Nat) -> Arc<BoundCertificate> {
    assert!(dim >= 3, "dimension must be at least 3");
    assert!(!points.is_zero(), "need at least one point");
    search_exhaustive_at(ctx, dim, points, effective_depth(ctx, dim))
}

fn search_exhaustive_at(
    ctx: &SearchContext,
    dim: u32,
    points: &Nat,
    depth: u32,
) -> Arc<BoundCertificate> {
    let base = base_certificate(ctx, dim, points);
    if depth == 0 {
        return base;
    }
    let Some(dom) = Domain::new(dim, points) else {
        return annotate(base, NOTE_RANGE);
    };
    if dom.k == 0 {
        return base;
    }
    if dom.k + 1 > MAX_GROUPS {
        let fb = search_heuristic_at(ctx, dim, points, depth);
        return annotate(fb, NOTE_GROUPS);
    }
    let slots = (dom.k + 1) as usize;
    let mut minima = vec![dom.kpow; slots];
    minima[0] = dom.kpow + 1;
    minima[slots - 1] = 1;
    let mut suffix = vec![0u64; slots + 1];
    for idx in (0..slots).rev() {
        suffix[idx] = suffix[idx + 1].saturating_add(minima[idx]);
    }
    let mut subs = SubBounds::new(ctx, dim, depth, dom.k);
    let mut best = BestCandidate::default();
    let mut state = EnumState {
        minima: &minima,
        suffix: &suffix,
        budget: ctx.max_partitions,
        exhausted: false,
    };
    let mut buf = Vec::with_capacity(slots);
    enumerate_rec(&mut state, &mut buf, dom.total, dom.cap, &mut |parts| {
        if let Some(value) = subs.candidate_value(dom.k, parts) {
            best.offer(value, parts);
        }
    });
    if state.exhausted {
        let fb = search_heuristic_at(ctx, dim, points, depth);
        let note = format!(
            "enumeration budget of {} distributions exhausted; heuristic fallback",
            ctx.max_partitions
        );
        return annotate(fb, &note);
    }
    finish_search(
        ctx,
        dim,
        points,
        dom.k,
        depth,
        Strategy::Exhaustive,
        best,
        base,
    )
}

struct EnumState<'a> {
    minima: &'a [u64],
    suffix: &'a [u64],
    budget: u64,
    exhausted: bool,
}

/// Emits every nonincreasing tuple with the given remaining sum, per-slot
/// minima, and running upper bound `prev`.
fn enumerate_rec(
    state: &mut EnumState<'_>,
    buf: &mut Vec<u64>,
    remaining: u64,
    prev: u64,
    emit: &mut dyn FnMut(&[u64]),
) {
    if state.exhausted {
        return;
    }
    let idx = buf.len();
    let slots = state.minima.len();
    if idx == slots - 1 {
        if remaining >= state.minima[idx] && remaining <= prev {
            if state.budget == 0 {
                state.exhausted = true;
                return;
            }
            state.budget -= 1;
            buf.push(remaining);
            emit(buf);
            buf.pop();
        }
        return;
    }
    let tail_min = state.suffix[idx + 1];
    let hi = prev.min(remaining.saturating_sub(tail_min));
    let lo = state.minima[idx].max(remaining.div_ceil((slots - idx) as u64));
    let mut value = hi;
    while value >= lo {
        buf.push(value);
        enumerate_rec(state, buf, remaining - value, value, emit);
        buf.pop();
        if state.exhausted {
            return;
        }
        if value == lo {
            break;
        }
        value -= 1;
    }
}

/// One equalized distribution per trailing group `l^(dim-1)`, `l <= k+1`:
/// the `k` leading groups take `floor((points - l^(dim-1)) / k)` each,
/// capped at the group maximum.
pub fn search_heuristic(ctx: &SearchContext, dim: u32, points: &Nat) -> Arc<BoundCertificate> {
    assert!(dim >= 3, "dimension must be at least 3");
    assert!(!points.is_zero(), "need at least one point");
    search_heuristic_at(ctx, dim, points, effective_depth(ctx, dim))
}

fn search_heuristic_at(
    ctx: &SearchContext,
    dim: u32,
    points: &Nat,
    depth: u32,
) -> Arc<BoundCertificate> {
    let base = base_certificate(ctx, dim, points);
    if depth == 0 {
        return base;
    }
    let Some(dom) = Domain::new(dim, points) else {
        return annotate(base, NOTE_RANGE);
    };
    if dom.k == 0 {
        return base;
    }
    if dom.k + 1 > MAX_GROUPS {
        return annotate(base, NOTE_GROUPS);
    }
    let mut subs = SubBounds::new(ctx, dim, depth, dom.k);
    let mut best = BestCandidate::default();
    for l in 1..=dom.k + 1 {
        let tail = pow_sat(l, dim - 1);
        if tail > (dom.r - dom.k) as u128 {
            break;
        }
        let tail = tail as u64;
        let lead = ((dom.r - tail) / dom.k).min(dom.cap);
        if lead == 0 {
            continue;
        }
        let mut parts = vec![lead; dom.k as usize];
        parts.push(tail);
        if let Some(value) = subs.candidate_value(dom.k, &parts) {
            best.offer(value, &parts);
        }
    }
    finish_search(
        ctx,
        dim,
        points,
        dom.k,
        depth,
        Strategy::Heuristic,
        best,
        base,
    )
}

/// Every pair `(lead, l)` with `k*lead + l^(dim-1) <= points`: `k` equal
/// leading groups of size `lead` and a pure-power trailing group. Falls back
/// to [`search_heuristic`] with a note when the budget runs out.
pub fn search_purepower(ctx: &SearchContext, dim: u32, points: &Nat) -> Arc<BoundCertificate> {
    assert!(dim >= 3, "dimension must be at least 3");
    assert!(!points.is_zero(), "need at least one point");
    search_purepower_at(ctx, dim, points, effective_depth(ctx, dim))
}

fn search_purepower_at(
    ctx: &SearchContext,
    dim: u32,
    points: &Nat,
    depth: u32,
) -> Arc<BoundCertificate> {
    let base = base_certificate(ctx, dim, points);
    if depth == 0 {
        return base;
    }
    let Some(dom) = Domain::new(dim, points) else {
        return annotate(base, NOTE_RANGE);
    };
    if dom.k == 0 {
        return base;
    }
    if dom.k + 1 > MAX_GROUPS {
        return annotate(base, NOTE_GROUPS);
    }
    let mut subs = SubBounds::new(ctx, dim, depth, dom.k);
    let mut best = BestCandidate::default();
    let mut budget = ctx.max_partitions;
    let mut parts = vec![0u64; dom.k as usize + 1];
    for l in 1..=dom.k + 1 {
        let tail = pow_sat(l, dim - 1);
        if tail > (dom.r - dom.k) as u128 {
            break;
        }
        let tail = tail as u64;
        let hi = ((dom.r - tail) / dom.k).min(dom.cap);
        // A full group below k^(dim-1) can never certify its hypothesis.
        let lo = dom.kpow + u64::from(l != dom.k + 1);
        let mut lead = hi;
        while lead >= lo {
            if budget == 0 {
                let fb = search_heuristic_at(ctx, dim, points, depth);
                let note = format!(
                    "enumeration budget of {} distributions exhausted; heuristic fallback",
                    ctx.max_partitions
                );
                return annotate(fb, &note);
            }
            budget -= 1;
            parts[..dom.k as usize].fill(lead);
            parts[dom.k as usize] = tail;
            if let Some(value) = subs.candidate_value(dom.k, &parts) {
                best.offer(value, &parts);
            }
            if lead == lo {
                break;
            }
            lead -= 1;
        }
    }
    finish_search(
        ctx,
        dim,
        points,
        dom.k,
        depth,
        Strategy::PurePower,
        best,
        base,
    )
}

/// Errors from re-deriving a certificate.
#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("dimension {dim}, {points} points: stored result {stored} differs from recomputed {computed}")]
    ResultMismatch {
        dim: u32,
        points: Nat,
        stored: Rat,
        computed: Rat,
    },
    #[error(
        "dimension {dim}, {points} points: stored a-values differ from the clamped child results"
    )]
    AValuesMismatch { dim: u32, points: Nat },
    #[error("dimension {dim}, {points} points: combined node carries no partition")]
    MissingPartition { dim: u32, points: Nat },
    #[error("dimension {dim}, {points} points: {source}")]
    BadHypotheses {
        dim: u32,
        points: Nat,
        source: StepbackError,
    },
}

/// Recomputes every node of `cert` bottom-up against `table` and returns the
/// reproduced value. Leaves are rechecked against [`best_base_bound`],
/// combined nodes against [`stepback_combine`] of their replayed children.
pub fn replay(cert: &BoundCertificate, table: &BaseTable) -> Result<Rat, ReplayError> {
    if cert.children.is_empty() {
        let fresh = best_base_bound(cert.dim, &cert.points, table).value;
        if fresh != cert.result {
            return Err(ReplayError::ResultMismatch {
                dim: cert.dim,
                points: cert.points.clone(),
                stored: cert.result.clone(),
                computed: fresh,
            });
        }
        return Ok(fresh);
    }
    let partition = cert
        .partition
        .as_ref()
        .ok_or_else(|| ReplayError::MissingPartition {
            dim: cert.dim,
            points: cert.points.clone(),
        })?;
    let cap = nat_to_rat(&nat(partition.k + 1));
    let mut a_values = Vec::with_capacity(cert.children.len());
    for child in &cert.children {
        let value = replay(child, table)?;
        a_values.push(value.min(cap.clone()));
    }
    if a_values != cert.a_values {
        return Err(ReplayError::AValuesMismatch {
            dim: cert.dim,
            points: cert.points.clone(),
        });
    }
    let computed =
        stepback_combine(partition.k, &a_values).map_err(|source| ReplayError::BadHypotheses {
            dim: cert.dim,
            points: cert.points.clone(),
            source,
        })?;
    if computed != cert.result {
        return Err(ReplayError::ResultMismatch {
            dim: cert.dim,
            points: cert.points.clone(),
            stored: cert.result.clone(),
            computed,
        });
    }
    Ok(computed)
}
