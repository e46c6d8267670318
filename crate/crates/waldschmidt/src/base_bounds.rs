//! Non-recursive lower bounds: closed-form formulas and the lookup table.
//!
//! All bounds here are valid for any number of very general points at least
//! as large as the stated one, so [`best_base_bound`] is nondecreasing in the
//! point count by construction (the quotient formula is combined with the
//! floor-root formula, which restores monotonicity at root steps; the table
//! is queried through a prefix maximum).

use std::collections::BTreeMap;
use std::path::Path;

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::numerics::{int_root_floor, nat_pow, nat_to_rat, rat_pow, Nat, Rat};

/// How a base bound was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Integer part of the dim-th root of the point count.
    FloorRoot,
    /// Point count divided by `(k+1)^(dim-1)` for the smallest admissible `k`.
    Quotient,
    /// Points spread over `k+1` hyperplane groups, `s` of them filled.
    Distribution,
    /// Table entry, possibly taken at a smaller point count when the
    /// monotone envelope wins.
    Table { source: String, at_points: Nat },
    /// Lifted from lower-dimensional bounds by the recursive combiner.
    Stepback,
}

impl Provenance {
    /// Short label used by the text and CSV renderers.
    pub fn label(&self) -> String {
        match self {
            Provenance::FloorRoot => "floor-root".into(),
            Provenance::Quotient => "quotient".into(),
            Provenance::Distribution => "distribution".into(),
            Provenance::Table { source, at_points } => format!("table({source}@{at_points})"),
            Provenance::Stepback => "stepback".into(),
        }
    }
}

/// A certified lower bound for the Waldschmidt constant of `points` very
/// general points in projective space of dimension `dim`.
///
/// Invariant: `1 <= value` and `value^dim <= points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub dim: u32,
    pub points: Nat,
    pub value: Rat,
    pub provenance: Provenance,
}

/// `floor(points^(1/dim))`.
///
/// Panics if `dim == 0` or `points == 0`.
pub fn floor_root_bound(dim: u32, points: &Nat) -> Bound {
    assert!(dim >= 1, "dimension must be at least 1");
    assert!(!points.is_zero(), "need at least one point");
    Bound {
        dim,
        points: points.clone(),
        value: nat_to_rat(&int_root_floor(points, dim)),
        provenance: Provenance::FloorRoot,
    }
}

/// `points / (k+1)^(dim-1)` with `k` minimal such that `points <= (k+1)^dim`,
/// clamped below at 1.
///
/// Panics if `dim == 0` or `points == 0`.
pub fn quotient_bound(dim: u32, points: &Nat) -> Bound {
    assert!(dim >= 1, "dimension must be at least 1");
    assert!(!points.is_zero(), "need at least one point");
    let k = if points.is_one() {
        Nat::zero()
    } else {
        int_root_floor(&(points - 1u32), dim)
    };
    let denom = nat_pow(&(&k + 1u32), dim - 1);
    let raw = Rat::new(BigInt::from(points.clone()), BigInt::from(denom));
    Bound {
        dim,
        points: points.clone(),
        value: raw.max(Rat::one()),
        provenance: Provenance::Quotient,
    }
}

/// Best value `k + s/(k+1)` over integer pairs `k >= 1`, `1 <= s <= k` whose
/// threshold `s*(k+1)^(dim-1) + (k+1-s)*k^(dim-1)` is at most `points`;
/// 1 when no pair qualifies.
///
/// Panics if `dim < 2` or `points == 0`.
pub fn distribution_bound(dim: u32, points: &Nat) -> Bound {
    assert!(dim >= 2, "dimension must be at least 2");
    assert!(!points.is_zero(), "need at least one point");
    let mut best = Rat::one();
    let k_max = int_root_floor(points, dim);
    let mut k = Nat::one();
    while k <= k_max {
        let full = nat_pow(&(&k + 1u32), dim - 1);
        let slack = nat_pow(&k, dim - 1);
        // threshold(s) = (k+1)*slack + s*(full - slack), increasing in s.
        let floor_cost = (&k + 1u32) * &slack;
        if floor_cost <= *points {
            let gap = &full - &slack;
            let s = ((points - &floor_cost) / &gap).min(k.clone());
            if !s.is_zero() {
                let cand = nat_to_rat(&k) + Rat::new(BigInt::from(s), BigInt::from(&k + 1u32));
                best = best.max(cand);
            }
        }
        k += 1u32;
    }
    Bound {
        dim,
        points: points.clone(),
        value: best,
        provenance: Provenance::Distribution,
    }
}

/// The exact table entry at `(dim, points)`, if present.
pub fn table_bound(dim: u32, points: &Nat, table: &BaseTable) -> Option<Bound> {
    table.get(dim, points).map(|entry| Bound {
        dim,
        points: points.clone(),
        value: entry.value.clone(),
        provenance: Provenance::Table {
            source: entry.source.clone(),
            at_points: points.clone(),
        },
    })
}

/// Exact maximum of the closed-form bounds and the table entries at any point
/// count up to `points`. Ties keep the earlier provenance in the order
/// floor-root, quotient, distribution, table.
pub fn best_base_bound(dim: u32, points: &Nat, table: &BaseTable) -> Bound {
    let mut best = floor_root_bound(dim, points);
    let mut consider = |cand: Bound| {
        if cand.value > best.value {
            best = cand;
        }
    };
    consider(quotient_bound(dim, points));
    if dim >= 2 {
        consider(distribution_bound(dim, points));
    }
    if let Some(cand) = table.prefix_max(dim, points) {
        consider(cand);
    }
    best
}

/// One validated table entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub value: Rat,
    pub source: String,
}

/// Externally known lower bounds, keyed by `(dimension, point count)`.
///
/// Every stored value `b` satisfies `1 <= b` and `b^dim <= points`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BaseTable {
    entries: BTreeMap<(u32, Nat), TableEntry>,
}

/// Errors raised while reading or validating a table file.
#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: expected `dim points value source-tag`, found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: {field} is not a valid positive number")]
    BadNumber { line: usize, field: &'static str },
    #[error("line {line}: duplicate entry for dimension {dim}, {points} points")]
    Duplicate { line: usize, dim: u32, points: Nat },
    #[error("line {line}: bound {value} is below 1")]
    BelowOne { line: usize, value: Rat },
    #[error(
        "line {line}: bound {value} breaks the root envelope for dimension {dim}, {points} points"
    )]
    AboveEnvelope {
        line: usize,
        value: Rat,
        dim: u32,
        points: Nat,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl BaseTable {
    /// Table with no entries.
    pub fn empty() -> BaseTable {
        BaseTable::default()
    }

    /// The shipped defaults: dimension-2 bounds for up to 9 points from the
    /// classical literature plus the Harbourne-Roe value for 14 points.
    pub fn builtin() -> BaseTable {
        let mut table = BaseTable::default();
        let literature: [(u64, i64, i64); 9] = [
            (1, 1, 1),
            (2, 1, 1),
            (3, 3, 2),
            (4, 2, 1),
            (5, 2, 1),
            (6, 12, 5),
            (7, 21, 8),
            (8, 48, 17),
            (9, 3, 1),
        ];
        for (points, num, den) in literature {
            table.insert(
                2,
                Nat::from(points),
                crate::numerics::rat(num, den),
                "literature",
            );
        }
        table.insert(
            2,
            Nat::from(14u32),
            crate::numerics::rat(86, 23),
            "harbourne-roe",
        );
        table
    }

    fn insert(&mut self, dim: u32, points: Nat, value: Rat, source: &str) {
        debug_assert!(value >= Rat::one());
        debug_assert!(rat_pow(&value, dim) <= nat_to_rat(&points));
        self.entries.insert(
            (dim, points),
            TableEntry {
                value,
                source: source.to_string(),
            },
        );
    }

    /// Parses the text format: one `dim points value source-tag` entry per
    /// line, `#` comments, values written as `NUM/DEN` or a bare integer.
    pub fn parse(text: &str) -> Result<BaseTable, TableError> {
        let mut table = BaseTable::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(TableError::Malformed {
                    line,
                    found: content.to_string(),
                });
            }
            let dim: u32 =
                fields[0]
                    .parse()
                    .ok()
                    .filter(|d| *d >= 1)
                    .ok_or(TableError::BadNumber {
                        line,
                        field: "dimension",
                    })?;
            let points: Nat = fields[1]
                .parse()
                .ok()
                .filter(|p: &Nat| !p.is_zero())
                .ok_or(TableError::BadNumber {
                    line,
                    field: "point count",
                })?;
            let value = parse_value(fields[2]).ok_or(TableError::BadNumber {
                line,
                field: "value",
            })?;
            if value < Rat::one() {
                return Err(TableError::BelowOne { line, value });
            }
            if rat_pow(&value, dim) > nat_to_rat(&points) {
                return Err(TableError::AboveEnvelope {
                    line,
                    value,
                    dim,
                    points,
                });
            }
            let key = (dim, points);
            if table.entries.contains_key(&key) {
                return Err(TableError::Duplicate {
                    line,
                    dim: key.0,
                    points: key.1,
                });
            }
            table.entries.insert(
                key,
                TableEntry {
                    value,
                    source: fields[3].to_string(),
                },
            );
        }
        Ok(table)
    }

    /// Reads and parses a table file.
    pub fn load(path: &Path) -> Result<BaseTable, TableError> {
        let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
            path: path.display().to_string(),
            source,
        })?;
        BaseTable::parse(&text)
    }

    /// Merges `other` in, keeping the larger value per key (existing entries
    /// win ties).
    pub fn merge_max(&mut self, other: BaseTable) {
        for (key, entry) in other.entries {
            match self.entries.get(&key) {
                Some(existing) if existing.value >= entry.value => {}
                _ => {
                    self.entries.insert(key, entry);
                }
            }
        }
    }

    /// Exact lookup.
    pub fn get(&self, dim: u32, points: &Nat) -> Option<&TableEntry> {
        self.entries.get(&(dim, points.clone()))
    }

    /// Best entry in dimension `dim` at any point count up to `points`
    /// (monotone envelope over the table). Ties keep the smallest count.
    pub fn prefix_max(&self, dim: u32, points: &Nat) -> Option<Bound> {
        let mut best: Option<Bound> = None;
        let range = (dim, Nat::zero())..=(dim, points.clone());
        for ((_, at), entry) in self.entries.range(range) {
            if best.as_ref().is_none_or(|b| entry.value > b.value) {
                best = Some(Bound {
                    dim,
                    points: points.clone(),
                    value: entry.value.clone(),
                    provenance: Provenance::Table {
                        source: entry.source.clone(),
                        at_points: at.clone(),
                    },
                });
            }
        }
        best
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, Nat), &TableEntry)> {
        self.entries.iter()
    }
}

fn parse_value(field: &str) -> Option<Rat> {
    let (num, den) = match field.split_once('/') {
        Some((n, d)) => (n, d),
        None => (field, "1"),
    };
    let num: Nat = num.parse().ok()?;
    let den: Nat = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(BigInt::from(num), BigInt::from(den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{nat, rat};

    #[test]
    fn floor_root_examples() {
        assert_eq!(floor_root_bound(3, &nat(27)).value, rat(3, 1));
        assert_eq!(floor_root_bound(3, &nat(8)).value, rat(2, 1));
        assert_eq!(floor_root_bound(5, &nat(1024)).value, rat(4, 1));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_bound(5, &nat(3124)).value, rat(3124, 625));
        assert_eq!(quotient_bound(5, &nat(3123)).value, rat(3123, 625));
        assert_eq!(quotient_bound(3, &nat(20)).value, rat(20, 9));
    }

    #[test]
    fn quotient_is_clamped_at_one() {
        assert_eq!(quotient_bound(3, &nat(3)).value, rat(1, 1));
        assert_eq!(quotient_bound(4, &nat(1)).value, rat(1, 1));
    }

    #[test]
    fn quotient_boundary_matches_floor_root() {
        for k in 1u64..=10 {
            for dim in 1u32..=6 {
                let r = nat_pow(&nat(k + 1), dim);
                assert_eq!(quotient_bound(dim, &r).value, rat((k + 1) as i64, 1));
                assert_eq!(floor_root_bound(dim, &r).value, rat((k + 1) as i64, 1));
            }
        }
    }

    #[test]
    fn distribution_examples() {
        assert_eq!(distribution_bound(5, &nat(1649)).value, rat(21, 5));
        assert_eq!(distribution_bound(5, &nat(2018)).value, rat(22, 5));
        assert_eq!(distribution_bound(5, &nat(2387)).value, rat(23, 5));
        assert_eq!(distribution_bound(5, &nat(2756)).value, rat(24, 5));
    }

    #[test]
    fn distribution_returns_one_when_nothing_qualifies() {
        assert_eq!(distribution_bound(3, &nat(4)).value, rat(1, 1));
        assert_eq!(distribution_bound(2, &nat(2)).value, rat(1, 1));
    }

    #[test]
    fn distribution_stays_below_next_integer() {
        for dim in 2u32..=4 {
            for k in 1u64..=6 {
                let full = nat_pow(&nat(k + 1), dim - 1);
                let slack = nat_pow(&nat(k), dim - 1);
                let r = &full * nat(k) + slack;
                let value = distribution_bound(dim, &r).value;
                assert_eq!(value, rat(k as i64, 1) + rat(k as i64, (k + 1) as i64));
                assert!(value < rat((k + 1) as i64, 1));
            }
        }
    }

    #[test]
    fn builtin_table_entries() {
        let table = BaseTable::builtin();
        let expect: [(u64, i64, i64, &str); 10] = [
            (1, 1, 1, "literature"),
            (2, 1, 1, "literature"),
            (3, 3, 2, "literature"),
            (4, 2, 1, "literature"),
            (5, 2, 1, "literature"),
            (6, 12, 5, "literature"),
            (7, 21, 8, "literature"),
            (8, 48, 17, "literature"),
            (9, 3, 1, "literature"),
            (14, 86, 23, "harbourne-roe"),
        ];
        assert_eq!(table.len(), expect.len());
        for (points, num, den, source) in expect {
            let entry = table.get(2, &nat(points)).unwrap();
            assert_eq!(entry.value, rat(num, den));
            assert_eq!(entry.source, source);
        }
    }

    #[test]
    fn table_bound_examples() {
        let table = BaseTable::builtin();
        assert_eq!(table_bound(2, &nat(14), &table).unwrap().value, rat(86, 23));
        assert_eq!(table_bound(2, &nat(8), &table).unwrap().value, rat(48, 17));
        assert_eq!(table_bound(2, &nat(4), &table).unwrap().value, rat(2, 1));
        assert!(table_bound(2, &nat(10), &table).is_none());
        assert!(table_bound(3, &nat(14), &table).is_none());
    }

    #[test]
    fn best_base_bound_examples() {
        let table = BaseTable::builtin();
        let b9 = best_base_bound(2, &nat(9), &table);
        assert_eq!(b9.value, rat(3, 1));
        assert_eq!(b9.provenance, Provenance::FloorRoot);

        let b1649 = best_base_bound(5, &nat(1649), &table);
        assert_eq!(b1649.value, rat(21, 5));
        assert_eq!(b1649.provenance, Provenance::Distribution);

        let b14 = best_base_bound(2, &nat(14), &table);
        assert_eq!(b14.value, rat(86, 23));
        assert!(matches!(b14.provenance, Provenance::Table { .. }));
    }

    #[test]
    fn best_base_bound_small_plane_values() {
        let table = BaseTable::builtin();
        let expect: [(u64, i64, i64); 7] = [
            (10, 3, 1),
            (11, 3, 1),
            (12, 3, 1),
            (13, 13, 4),
            (14, 86, 23),
            (15, 15, 4),
            (16, 4, 1),
        ];
        for (points, num, den) in expect {
            assert_eq!(
                best_base_bound(2, &nat(points), &table).value,
                rat(num, den)
            );
        }
    }

    #[test]
    fn best_base_bound_envelope_and_monotone() {
        let table = BaseTable::builtin();
        for dim in 2u32..=6 {
            let mut prev = Rat::zero();
            for r in 1u64..=5000 {
                let points = nat(r);
                let value = best_base_bound(dim, &points, &table).value;
                assert!(
                    rat_pow(&value, dim) <= nat_to_rat(&points),
                    "dim {dim}, r {r}"
                );
                assert!(value >= prev, "dim {dim}, r {r}");
                prev = value;
            }
        }
    }

    #[test]
    fn prefix_max_uses_smaller_counts() {
        let table = BaseTable::builtin();
        let b = table.prefix_max(2, &nat(20)).unwrap();
        assert_eq!(b.value, rat(86, 23));
        match b.provenance {
            Provenance::Table { at_points, .. } => assert_eq!(at_points, nat(14)),
            other => panic!("unexpected provenance {other:?}"),
        }
        assert!(table.prefix_max(3, &nat(20)).is_none());
    }

    #[test]
    fn parse_accepts_comments_and_bare_integers() {
        let text = "\n# comment\n2 30 5 literature # trailing note\n\n3 100 9/2 custom\n";
        let table = BaseTable::parse(text).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table.get(2, &nat(30)).unwrap().value, rat(5, 1));
        let entry = table.get(3, &nat(100)).unwrap();
        assert_eq!(entry.value, rat(9, 2));
        assert_eq!(entry.source, "custom");
    }

    #[test]
    fn parse_rejects_duplicates_with_line_number() {
        let text = "2 5 2 a\n2 6 2 a\n2 5 2 b\n";
        match BaseTable::parse(text) {
            Err(TableError::Duplicate { line, dim, points }) => {
                assert_eq!(line, 3);
                assert_eq!(dim, 2);
                assert_eq!(points, nat(5));
            }
            other => panic!("expected duplicate error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_invalid_bounds() {
        match BaseTable::parse("2 5 1/2 a\n") {
            Err(TableError::BelowOne { line: 1, .. }) => {}
            other => panic!("expected below-one error, got {other:?}"),
        }
        match BaseTable::parse("2 5 5/2 a\n") {
            Err(TableError::AboveEnvelope { line: 1, .. }) => {}
            other => panic!("expected envelope error, got {other:?}"),
        }
        match BaseTable::parse("2 5 2\n") {
            Err(TableError::Malformed { line: 1, .. }) => {}
            other => panic!("expected malformed error, got {other:?}"),
        }
        match BaseTable::parse("2 0 1 a\n") {
            Err(TableError::BadNumber { line: 1, field }) => assert_eq!(field, "point count"),
            other => panic!("expected bad-number error, got {other:?}"),
        }
    }

    #[test]
    fn load_reports_missing_file() {
        match BaseTable::load(Path::new("/nonexistent/table.txt")) {
            Err(TableError::Io { .. }) => {}
            other => panic!("expected io error, got {other:?}"),
        }
    }

    #[test]
    fn merge_max_keeps_larger_values() {
        let mut table = BaseTable::builtin();
        let user = BaseTable::parse("2 14 7/2 weaker\n2 10 177/56 harbourne-roe\n").unwrap();
        table.merge_max(user);
        assert_eq!(table.get(2, &nat(14)).unwrap().value, rat(86, 23));
        assert_eq!(table.get(2, &nat(14)).unwrap().source, "harbourne-roe");
        assert_eq!(table.get(2, &nat(10)).unwrap().value, rat(177, 56));
    }
}
