//! Every sampled change to a bad-string table or a generic family must make
//! at least one verification check fail.

use flipstr::classify::Classifier;
use flipstr::verify::{
    check_bad_lists_with, check_characterization_with, check_grouping_children_with, check_grouping_parents_with,
    check_sorting_table_with, CheckKind,
};
use flipstr::Symbol;

fn caught(c: &Classifier) -> bool {
    let reports = [
        check_grouping_children_with(c),
        check_grouping_parents_with(c),
        check_sorting_table_with(c),
        check_bad_lists_with(c).unwrap(),
        check_characterization_with(c, CheckKind::Grouping, 12).unwrap(),
        check_characterization_with(c, CheckKind::Sorting, 12).unwrap(),
    ];
    reports.iter().any(|r| !r.passed())
}

/// Changes one symbol so the entry stays normalized and fully ternary.
fn point_mutation(s: &[Symbol], pos: usize) -> Option<Vec<Symbol>> {
    (0..3u8).find_map(|c| {
        let mut v = s.to_vec();
        if v[pos] == c {
            return None;
        }
        v[pos] = c;
        let normalized = v.windows(2).all(|w| w[0] != w[1]);
        let ternary = (0..3).all(|x| v.contains(&x));
        (normalized && ternary).then_some(v)
    })
}

fn mutated_tables() -> Vec<(String, Classifier)> {
    let std = Classifier::standard();
    let xs = std.grouping_exceptions().to_vec();
    let ys = std.sorting_exceptions().to_vec();
    let mut out = Vec::new();
    for i in [0, 4, 7] {
        let mut t = xs.clone();
        t.remove(i);
        out.push((format!("drop X{}", i + 1), Classifier::new(t, ys.clone())));
    }
    for i in [0, 30, 60, 76] {
        let mut t = ys.clone();
        t.remove(i);
        out.push((format!("drop Y{}", i + 1), Classifier::new(xs.clone(), t)));
    }
    for (i, pos) in [(2usize, 3usize), (40, 5)] {
        let mut t = ys.clone();
        let Some(v) = (pos..t[i].len()).find_map(|p| point_mutation(&t[i], p)) else {
            continue;
        };
        t[i] = v;
        out.push((format!("edit Y{}", i + 1), Classifier::new(xs.clone(), t)));
    }
    out
}

#[test]
fn twenty_mutations_are_caught() {
    let mut mutants = mutated_tables();
    for t in 1..=3 {
        mutants.push((
            format!("grouping type {t} off"),
            Classifier::standard().clone().without_grouping_type(t),
        ));
    }
    for t in 1..=8 {
        mutants.push((
            format!("sorting type {t} off"),
            Classifier::standard().clone().without_sorting_type(t),
        ));
    }
    assert_eq!(mutants.len(), 20);
    let missed: Vec<&str> = mutants
        .iter()
        .filter(|(_, c)| !caught(c))
        .map(|(name, _)| name.as_str())
        .collect();
    assert!(missed.is_empty(), "mutations not caught: {missed:?}");
}

#[test]
fn standard_tables_pass_everything() {
    assert!(!caught(Classifier::standard()));
}
