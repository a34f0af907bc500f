//! Prefix-reversal diameter of fully k-ary strings.
//!
//! The strings of one frequency class form a connected graph under flips.
//! Relabeling symbols maps classes onto classes while preserving distances,
//! so only classes whose frequencies are non-increasing in the symbol are
//! searched; every other class inherits eccentricity and witness through the
//! relabeling. Within a class the states are listed in lexicographic order,
//! packed, and connected by a precomputed adjacency array; all-source BFS
//! then runs over plain indices.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::packed::Packing;
use super::SearchBudget;
use crate::error::{Error, Result};
use crate::string::{RawString, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEccentricity {
    pub freq: Vec<usize>,
    pub ecc: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterReport {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub witness: (RawString, RawString),
    pub classes: Vec<ClassEccentricity>,
    pub states_explored: u64,
}

/// Emitted after each searched class.
#[derive(Clone, Debug)]
pub struct ClassProgress<'a> {
    pub freq: &'a [usize],
    pub size: usize,
    pub ecc: usize,
    pub done: usize,
    pub total: usize,
}

/// Compositions of `n` into `k` positive parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 1..=n - (k - 1) {
            prefix.push(a);
            go(n - a, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= k {
        go(n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn multiset_permutations(freq: &[usize]) -> Vec<Vec<Symbol>> {
    let mut current: Vec<Symbol> = freq
        .iter()
        .enumerate()
        .flat_map(|(s, &c)| std::iter::repeat_n(s as Symbol, c))
        .collect();
    let mut out = vec![current.clone()];
    while let Some(i) = (0..current.len().saturating_sub(1))
        .rev()
        .find(|&i| current[i] < current[i + 1])
    {
        let j = (i + 1..current.len()).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
    out
}

fn class_size(freq: &[usize]) -> u64 {
    let mut size: u128 = 1;
    let mut placed: u128 = 0;
    for &c in freq {
        for j in 1..=c as u128 {
            placed += 1;
            size = size * placed / j;
        }
    }
    size.min(u128::from(u64::MAX)) as u64
}

struct ClassResult {
    ecc: usize,
    witness: (Vec<Symbol>, Vec<Symbol>),
}

fn search_class(freq: &[usize], n: usize, budget: &SearchBudget, start: Instant) -> Result<ClassResult> {
    let packing = Packing::new(freq.len(), n)
        .ok_or_else(|| Error::BudgetExceeded(format!("length {n} does not fit a packed state")))?;
    let states = multiset_permutations(freq);
    let m = states.len();
    let packed: Vec<u64> = states.iter().map(|s| packing.pack(s).word).collect();
    let index: HashMap<u64, u32> = packed.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
    let degree = n - 1;
    let mut adjacency = vec![0u32; m * degree];
    for (idx, &word) in packed.iter().enumerate() {
        let state = super::packed::PackedState { word, len: n as u8 };
        for (slot, prefix) in (2..=n).enumerate() {
            adjacency[idx * degree + slot] = index[&packing.flip(state, prefix).word];
        }
    }

    let deadline = budget.time_limit.map(|limit| start + limit);
    let per_source = (0..m as u32)
        .into_par_iter()
        .map_init(
            || (vec![u8::MAX; m], Vec::with_capacity(m)),
            |(dist, queue), source| {
                if deadline.is_some_and(|d| Instant::now() > d) {
                    return None;
                }
                dist.fill(u8::MAX);
                queue.clear();
                dist[source as usize] = 0;
                queue.push(source);
                let mut head = 0;
                let mut far = (0u8, source);
                while head < queue.len() {
                    let v = queue[head] as usize;
                    head += 1;
                    let dv = dist[v];
                    for &w in &adjacency[v * degree..(v + 1) * degree] {
                        if dist[w as usize] == u8::MAX {
                            dist[w as usize] = dv + 1;
                            queue.push(w);
                            if dv + 1 > far.0 || (dv + 1 == far.0 && w < far.1) {
                                far = (dv + 1, w);
                            }
                        }
                    }
                }
                Some((far.0, source, far.1))
            },
        )
        .collect::<Vec<_>>();

    let mut best: Option<(u8, u32, u32)> = None;
    for r in per_source {
        let (ecc, s, t) = r.ok_or_else(|| Error::BudgetExceeded("diameter time limit reached".into()))?;
        if best.is_none_or(|(e, bs, bt)| ecc > e || (ecc == e && (s, t) < (bs, bt))) {
            best = Some((ecc, s, t));
        }
    }
    let (ecc, s, t) = best.expect("classes are nonempty");
    Ok(ClassResult {
        ecc: usize::from(ecc),
        witness: (states[s as usize].clone(), states[t as usize].clone()),
    })
}

/// Canonical class of `freq` plus the symbol map from canonical to actual
/// labels: actual symbols ordered by decreasing count, ties by symbol.
fn canonical(freq: &[usize]) -> (Vec<usize>, Vec<Symbol>) {
    let mut order: Vec<usize> = (0..freq.len()).collect();
    order.sort_by(|&a, &b| freq[b].cmp(&freq[a]).then(a.cmp(&b)));
    let canon = order.iter().map(|&s| freq[s]).collect();
    let map = order.iter().map(|&s| s as Symbol).collect();
    (canon, map)
}

pub fn diameter(n: usize, k: usize, budget: &SearchBudget) -> Result<DiameterReport> {
    diameter_with_progress(n, k, budget, |_| {})
}

pub fn diameter_with_progress<F>(n: usize, k: usize, budget: &SearchBudget, mut progress: F) -> Result<DiameterReport>
where
    F: FnMut(&ClassProgress<'_>),
{
    if k < 2 || n < k {
        return Err(Error::InvalidArgument(format!(
            "diameter needs 2 <= k <= n, got n={n}, k={k}"
        )));
    }
    if Packing::new(k, n).is_none() {
        return Err(Error::BudgetExceeded(format!(
            "n={n}, k={k} does not fit a packed state"
        )));
    }
    if n - 1 > usize::from(u8::MAX - 1) {
        return Err(Error::BudgetExceeded("distances exceed 8-bit counters".into()));
    }
    let classes = compositions(n, k);
    let mut canonical_classes: Vec<Vec<usize>> = classes.iter().map(|c| canonical(c).0).collect();
    canonical_classes.sort();
    canonical_classes.dedup();

    let visits: u64 = canonical_classes
        .iter()
        .map(|c| class_size(c).saturating_mul(class_size(c)))
        .fold(0u64, u64::saturating_add);
    if visits > budget.max_visits {
        return Err(Error::BudgetExceeded(format!(
            "diameter n={n}, k={k} needs {visits} BFS visits (limit {})",
            budget.max_visits
        )));
    }
    if canonical_classes.iter().any(|c| class_size(c) > u64::from(u32::MAX)) {
        return Err(Error::BudgetExceeded("class too large to index".into()));
    }

    let start = Instant::now();
    let mut searched: HashMap<Vec<usize>, ClassResult> = HashMap::new();
    let total = canonical_classes.len();
    for (done, class) in canonical_classes.iter().enumerate() {
        let result = search_class(class, n, budget, start)?;
        progress(&ClassProgress {
            freq: class,
            size: class_size(class) as usize,
            ecc: result.ecc,
            done: done + 1,
            total,
        });
        searched.insert(class.clone(), result);
    }

    let mut report_classes = Vec::with_capacity(classes.len());
    let mut best: Option<(usize, Vec<Symbol>, Vec<Symbol>)> = None;
    for freq in &classes {
        let (canon, map) = canonical(freq);
        let result = &searched[&canon];
        let relabel = |s: &[Symbol]| -> Vec<Symbol> { s.iter().map(|&c| map[usize::from(c)]).collect() };
        let (s, t) = (relabel(&result.witness.0), relabel(&result.witness.1));
        report_classes.push(ClassEccentricity {
            freq: freq.clone(),
            ecc: result.ecc,
        });
        let better = match &best {
            None => true,
            Some((e, bs, bt)) => result.ecc > *e || (result.ecc == *e && (&s, &t) < (bs, bt)),
        };
        if better {
            best = Some((result.ecc, s, t));
        }
    }
    let (delta, s, t) = best.expect("at least one class");
    Ok(DiameterReport {
        n,
        k,
        delta,
        witness: (RawString::new(s), RawString::new(t)),
        classes: report_classes,
        states_explored: visits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_are_ordered() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(5, 3).len(), 6);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn multiset_permutations_enumerate_class() {
        let perms = multiset_permutations(&[2, 1]);
        assert_eq!(perms, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(multiset_permutations(&[2, 2, 1]).len() as u64, class_size(&[2, 2, 1]));
    }

    #[test]
    fn canonical_orders_by_count() {
        assert_eq!(canonical(&[1, 3, 2]), (vec![3, 2, 1], vec![1, 2, 0]));
        assert_eq!(canonical(&[2, 2]), (vec![2, 2], vec![0, 1]));
    }

    #[test]
    fn smallest_cases() {
        let budget = SearchBudget::default();
        let r = diameter(3, 3, &budget).unwrap();
        assert_eq!(r.delta, 3);
        assert_eq!(r.classes.len(), 1);
        assert_eq!(diameter(6, 2, &budget).unwrap().delta, 5);
        assert!(diameter(2, 3, &budget).is_err());
        let tight = SearchBudget {
            max_visits: 1000,
            ..budget
        };
        assert!(matches!(diameter(8, 3, &tight), Err(Error::BudgetExceeded(_))));
    }
}
