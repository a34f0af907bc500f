//! Brute-force ground truth: breadth-first search over normalized strings for
//! sorting and grouping distances, bidirectional search over raw strings for
//! pairwise distance, and the all-pairs diameter.

pub mod diameter;
pub mod packed;
pub mod search;
pub mod table;

use std::collections::{HashMap, HashSet};
use std::time::Duration;

use crate::classify;
use crate::error::{Error, Result};
use crate::string::{compatible, identity_string, Flip, FlipSequence, NormalizedString, RawString, Symbol};

pub use diameter::{compositions, diameter, diameter_with_progress, ClassEccentricity, ClassProgress, DiameterReport};
pub use packed::{PackedState, Packing};
pub use search::shortest_path;
pub use table::{DistanceTable, Goal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// States held in memory by a single search.
    pub max_states: u64,
    /// Total BFS visits of an all-pairs diameter run.
    pub max_visits: u64,
    pub max_depth: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: 20_000_000,
            max_visits: 1_000_000_000,
            max_depth: 64,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    /// No state or depth cap; used for hours-scale runs.
    pub fn extended() -> Self {
        SearchBudget {
            max_states: u64::MAX,
            max_visits: u64::MAX,
            max_depth: usize::MAX,
            time_limit: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_states == 0
            || self.max_visits == 0
            || self.max_depth == 0
            || self.time_limit.is_some_and(|t| t.is_zero())
        {
            return Err(Error::InvalidArgument("search budget limits must be positive".into()));
        }
        Ok(())
    }
}

fn bfs_normalized<F>(s: &NormalizedString, is_goal: F, budget: &SearchBudget) -> Result<(usize, FlipSequence)>
where
    F: Fn(&[Symbol]) -> bool,
{
    budget.validate()?;
    // arena of (state, parent, flip)
    let mut arena: Vec<(Vec<Symbol>, usize, usize)> = vec![(s.symbols().to_vec(), usize::MAX, 0)];
    let mut seen: HashSet<Vec<Symbol>> = HashSet::new();
    seen.insert(s.symbols().to_vec());
    let mut layer_start = 0;
    let mut depth = 0;
    let found = loop {
        let layer_end = arena.len();
        if let Some(hit) = (layer_start..layer_end).find(|&i| is_goal(&arena[i].0)) {
            break hit;
        }
        if layer_start == layer_end {
            return Err(Error::InvalidArgument("goal unreachable".into()));
        }
        if depth >= budget.max_depth {
            return Err(Error::BudgetExceeded(format!("depth {depth} reached")));
        }
        for idx in layer_start..layer_end {
            let n = arena[idx].0.len();
            for i in 2..=n {
                let cur = &arena[idx].0;
                let mut child: Vec<Symbol> = cur[..i].iter().rev().copied().collect();
                if i < n && cur[0] == cur[i] {
                    child.extend_from_slice(&cur[i + 1..]);
                } else {
                    child.extend_from_slice(&cur[i..]);
                }
                if seen.insert(child.clone()) {
                    arena.push((child, idx, i));
                    if arena.len() as u64 > budget.max_states {
                        return Err(Error::BudgetExceeded(format!("{} states stored", arena.len())));
                    }
                }
            }
        }
        layer_start = layer_end;
        depth += 1;
    };
    let mut flips = Vec::new();
    let mut at = found;
    while arena[at].1 != usize::MAX {
        flips.push(Flip::new(arena[at].2)?);
        at = arena[at].1;
    }
    flips.reverse();
    Ok((flips.len(), flips.into_iter().collect()))
}

/// Exact sorting distance of a normalized string with a witness sequence.
pub fn sorting_distance_bfs(s: &NormalizedString, budget: &SearchBudget) -> Result<(usize, FlipSequence)> {
    let mut target: Vec<Symbol> = s.symbols().to_vec();
    target.sort_unstable();
    target.dedup();
    bfs_normalized(s, |t| t == target.as_slice(), budget)
}

/// Exact grouping distance: fewest flips to a string of length equal to the arity.
pub fn grouping_distance_bfs(s: &NormalizedString, budget: &SearchBudget) -> Result<(usize, FlipSequence)> {
    let arity = s.arity();
    bfs_normalized(s, |t| t.len() == arity, budget)
}

fn raw_neighbors(s: &[Symbol]) -> impl Iterator<Item = Vec<Symbol>> + '_ {
    (2..=s.len()).map(move |i| {
        let mut v = s.to_vec();
        v[..i].reverse();
        v
    })
}

/// Exact flip distance between compatible raw strings by bidirectional BFS.
pub fn pair_distance_bfs(s: &RawString, t: &RawString, budget: &SearchBudget) -> Result<usize> {
    budget.validate()?;
    if !compatible(s, t) {
        return Err(Error::Incompatible);
    }
    if s == t {
        return Ok(0);
    }
    let mut seen = [HashMap::new(), HashMap::new()];
    let mut frontier = [vec![s.symbols().to_vec()], vec![t.symbols().to_vec()]];
    let mut depth = [0usize; 2];
    seen[0].insert(s.symbols().to_vec(), 0usize);
    seen[1].insert(t.symbols().to_vec(), 0usize);
    loop {
        if depth[0] + depth[1] >= budget.max_depth {
            return Err(Error::BudgetExceeded(format!("depth {} reached", depth[0] + depth[1])));
        }
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for state in &frontier[side] {
            for child in raw_neighbors(state) {
                if seen[side].contains_key(&child) {
                    continue;
                }
                if let Some(&d) = seen[other].get(&child) {
                    let total = depth[side] + 1 + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                seen[side].insert(child.clone(), depth[side] + 1);
                next.push(child);
            }
        }
        if let Some(d) = best {
            return Ok(d);
        }
        if (seen[0].len() + seen[1].len()) as u64 > budget.max_states {
            return Err(Error::BudgetExceeded(format!(
                "{} states stored",
                seen[0].len() + seen[1].len()
            )));
        }
        if next.is_empty() {
            return Err(Error::InvalidArgument("target unreachable".into()));
        }
        frontier[side] = next;
        depth[side] += 1;
    }
}

/// A pair `(s, I(s))` at distance `n - 1`.
pub fn diameter_witness(n: usize, k: usize) -> Result<(RawString, RawString)> {
    let s: Vec<Symbol> = match k {
        2 if n >= 2 => {
            if n.is_multiple_of(2) {
                [1, 0].repeat(n / 2)
            } else {
                [vec![0], [1, 0].repeat((n - 1) / 2)].concat()
            }
        }
        3 if n >= 4 => {
            if n % 2 == 1 {
                [vec![2], [0, 1].repeat((n - 1) / 2)].concat()
            } else {
                [vec![0, 1], [2, 1].repeat(n / 2 - 1)].concat()
            }
        }
        2 | 3 => return Err(Error::InvalidArgument(format!("no witness family for n={n}, k={k}"))),
        _ => return Err(Error::UnsupportedArity(k)),
    };
    let s = RawString::new(s);
    if k == 3 {
        let extended = RawString::new([s.symbols(), &[2]].concat()).normalize();
        if !classify::sorting_class(&extended)?.is_bad() {
            return Err(Error::InvalidArgument(format!("witness {s} is not certified")));
        }
    }
    let t = identity_string(&s.frequencies());
    Ok((s, t))
}
