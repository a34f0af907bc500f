//! Machine checks of the bad-string tables and the closed forms.
//!
//! Every check regenerates children and parents from the flip primitives and
//! classifies them afresh, and the sweeps compare the closed forms against
//! exhaustive distance tables.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::oracle::{DistanceTable, Goal};
use crate::string::{NormalizedString, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub string: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub population: usize,
    pub failures: Vec<Failure>,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Grouping,
    Sorting,
}

/// States allowed in the exhaustive tables behind the sweeps.
pub const SWEEP_STATES: u64 = 50_000_000;

fn failure(s: &impl ToString, expected: impl ToString, actual: impl ToString) -> Failure {
    Failure {
        string: s.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn finish(name: &str, population: usize, failures: Vec<Failure>, start: Instant) -> VerificationReport {
    VerificationReport {
        name: name.to_string(),
        population,
        failures,
        elapsed: start.elapsed(),
    }
}

fn strings(table: &[Vec<Symbol>]) -> impl Iterator<Item = NormalizedString> + '_ {
    table
        .iter()
        .map(|v| NormalizedString::new(v.clone()).expect("table entries are normalized"))
}

fn describe<T: ToString, E: ToString>(r: std::result::Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {}", e.to_string()),
    }
}

/// Every 1-flip child of every `X_i` is grouping-bad.
pub fn check_grouping_children_with(c: &Classifier) -> VerificationReport {
    let start = Instant::now();
    let mut population = 0;
    let mut failures = Vec::new();
    for x in strings(c.grouping_exceptions()) {
        for (flip, child) in x.one_flip_children() {
            population += 1;
            let class = c.grouping_class(&child);
            if !class.as_ref().is_ok_and(|k| k.is_bad()) {
                failures.push(failure(&format!("{x} -> f{flip}: {child}"), "bad", describe(class)));
            }
        }
    }
    finish("grouping-children", population, failures, start)
}

/// Has a 1-flip to a good string under `good`.
fn has_good_child(s: &NormalizedString, good: impl Fn(&NormalizedString) -> bool) -> bool {
    s.one_flip_children().iter().any(|(_, child)| good(child))
}

/// Every parent of every `X_i` is grouping-bad or has a 1-flip to a good string.
pub fn check_grouping_parents_with(c: &Classifier) -> VerificationReport {
    let start = Instant::now();
    let mut population = 0;
    let mut failures = Vec::new();
    let good = |s: &NormalizedString| c.grouping_class(s).is_ok_and(|k| !k.is_bad());
    for x in strings(c.grouping_exceptions()) {
        for parent in x.parents() {
            population += 1;
            let bad = c.grouping_class(&parent).is_ok_and(|k| k.is_bad());
            if !bad && !has_good_child(&parent, good) {
                failures.push(failure(&format!("{x} <- {parent}"), "bad or good 1-flip", "neither"));
            }
        }
    }
    finish("grouping-parents", population, failures, start)
}

/// For every `Y_i`: all 1-flip children are sorting-bad, and every parent is
/// sorting-bad or has a 1-flip to a sorting-good string.
pub fn check_sorting_table_with(c: &Classifier) -> VerificationReport {
    let start = Instant::now();
    let mut population = 0;
    let mut failures = Vec::new();
    let good = |s: &NormalizedString| c.sorting_class(s).is_ok_and(|k| !k.is_bad());
    for y in strings(c.sorting_exceptions()) {
        for (flip, child) in y.one_flip_children() {
            population += 1;
            let class = c.sorting_class(&child);
            if !class.as_ref().is_ok_and(|k| k.is_bad()) {
                failures.push(failure(&format!("{y} -> f{flip}: {child}"), "bad", describe(class)));
            }
        }
        for parent in y.parents() {
            population += 1;
            let bad = c.sorting_class(&parent).is_ok_and(|k| k.is_bad());
            if !bad && !has_good_child(&parent, good) {
                failures.push(failure(&format!("{y} <- {parent}"), "bad or good 1-flip", "neither"));
            }
        }
    }
    finish("sorting-table", population, failures, start)
}

/// Oracle distances of every `X_i` (grouping) and `Y_i` (sorting) equal `n - 2`.
pub fn check_bad_lists_with(c: &Classifier) -> Result<VerificationReport> {
    let start = Instant::now();
    let longest = |t: &[Vec<Symbol>]| t.iter().map(Vec::len).max().unwrap_or(3).max(3);
    let grouping = DistanceTable::build(3, longest(c.grouping_exceptions()), Goal::Grouping, SWEEP_STATES)?;
    let sorting = DistanceTable::build(3, longest(c.sorting_exceptions()), Goal::Sorting, SWEEP_STATES)?;
    let mut population = 0;
    let mut failures = Vec::new();
    for (list, table) in [(c.grouping_exceptions(), &grouping), (c.sorting_exceptions(), &sorting)] {
        for s in strings(list) {
            population += 1;
            let expected = s.len() - 2;
            match table.distance(&s) {
                Some(d) if d == expected => {}
                d => failures.push(failure(
                    &s,
                    expected,
                    d.map_or("not fully ternary".into(), |d| d.to_string()),
                )),
            }
        }
    }
    Ok(finish("bad-lists", population, failures, start))
}

/// Sweeps every fully ternary normalized string of length `3..=n_max`
/// (ending in 2 for sorting): closed form against the exhaustive table, and
/// every good string longer than 3 has a 1-flip to a good string.
pub fn check_characterization_with(c: &Classifier, kind: CheckKind, n_max: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let goal = match kind {
        CheckKind::Grouping => Goal::Grouping,
        CheckKind::Sorting => Goal::Sorting,
    };
    let table = DistanceTable::build(3, n_max.max(3), goal, SWEEP_STATES)?;
    let closed = |s: &NormalizedString| match kind {
        CheckKind::Grouping => c.grouping_distance(s),
        CheckKind::Sorting => c.sorting_distance(s),
    };
    let is_good = |s: &NormalizedString| closed(s).is_ok_and(|d| d + 3 == s.len());
    let mut population = 0;
    let mut failures = Vec::new();
    for len in 3..=n_max {
        let layer: Vec<(NormalizedString, usize)> = table
            .strings(len)
            .filter(|(s, _)| kind == CheckKind::Grouping || s.last() == Some(2))
            .collect();
        population += layer.len();
        let found: Vec<Failure> = layer
            .par_iter()
            .filter_map(|(s, oracle)| {
                let d = closed(s);
                if d.as_ref().ok() != Some(oracle) {
                    return Some(failure(s, oracle, describe(d)));
                }
                if len > 3 && is_good(s) && !has_good_child(s, is_good) {
                    return Some(failure(s, "1-flip to a good string", "none"));
                }
                None
            })
            .collect();
        failures.extend(found);
    }
    let name = match kind {
        CheckKind::Grouping => "grouping-characterization",
        CheckKind::Sorting => "sorting-characterization",
    };
    Ok(finish(name, population, failures, start))
}

/// Binary closed forms against the exhaustive tables, lengths `2..=n_max`.
pub fn check_binary(n_max: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let n_max = n_max.max(2);
    let sorting = DistanceTable::build(2, n_max, Goal::Sorting, SWEEP_STATES)?;
    let grouping = DistanceTable::build(2, n_max, Goal::Grouping, SWEEP_STATES)?;
    let c = Classifier::standard();
    let mut population = 0;
    let mut failures = Vec::new();
    for len in 2..=n_max {
        for ((s, ds), (_, dg)) in sorting.strings(len).zip(grouping.strings(len)) {
            population += 1;
            let closed_s = c.sorting_distance(&s);
            if closed_s.as_ref().ok() != Some(&ds) {
                failures.push(failure(&format!("sort {s}"), ds, describe(closed_s)));
            }
            let closed_g = c.grouping_distance(&s);
            if closed_g.as_ref().ok() != Some(&dg) {
                failures.push(failure(&format!("group {s}"), dg, describe(closed_g)));
            }
        }
    }
    Ok(finish("binary", population, failures, start))
}

pub fn check_grouping_children() -> VerificationReport {
    check_grouping_children_with(Classifier::standard())
}

pub fn check_grouping_parents() -> VerificationReport {
    check_grouping_parents_with(Classifier::standard())
}

pub fn check_sorting_table() -> VerificationReport {
    check_sorting_table_with(Classifier::standard())
}

pub fn check_bad_lists() -> Result<VerificationReport> {
    check_bad_lists_with(Classifier::standard())
}

pub fn check_characterization(kind: CheckKind, n_max: usize) -> Result<VerificationReport> {
    if n_max > 20 {
        return Err(Error::BudgetExceeded(format!("characterization sweep to n={n_max}")));
    }
    check_characterization_with(Classifier::standard(), kind, n_max)
}
