//! Constructive solvers: optimal sorting and grouping for arity at most 3,
//! greedy grouping for any arity, the two pairwise transformation bounds,
//! and the approximation schemes for larger alphabets.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::classify;
use crate::error::{Error, Result};
use crate::oracle::{shortest_path, DistanceTable, Goal, SearchBudget};
use crate::string::{compatible, flip_norm, Flip, FlipSequence, NormalizedString, RawString, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    #[serde(rename = "flips")]
    pub sequence: FlipSequence,
    #[serde(skip)]
    pub achieved_length: usize,
    pub optimal: bool,
}

impl SolveResult {
    fn new(sequence: FlipSequence, optimal: bool) -> Self {
        SolveResult {
            achieved_length: sequence.len(),
            sequence,
            optimal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Epsilon(f64);

impl Epsilon {
    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Epsilon(eps))
        } else {
            Err(Error::InvalidEpsilon(eps))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `(k-2)/ε + k`
    pub fn grouping_threshold(self, k: usize) -> f64 {
        (k as f64 - 2.0) / self.0 + k as f64
    }

    /// `(3k-2)/ε + k`
    pub fn sorting_threshold(self, k: usize) -> f64 {
        (3.0 * k as f64 - 2.0) / self.0 + k as f64
    }
}

fn push(seq: &mut FlipSequence, prefix: usize) {
    seq.push(Flip::new(prefix).expect("solver flips are nonempty"));
}

fn sorted_distinct(s: &NormalizedString) -> Vec<Symbol> {
    let mut t = s.symbols().to_vec();
    t.sort_unstable();
    t.dedup();
    t
}

/// Repeatedly takes the smallest flip that lowers `dist` by one.
fn descend<F>(s: &NormalizedString, dist: F) -> Result<FlipSequence>
where
    F: Fn(&NormalizedString) -> Result<usize>,
{
    let arity = s.arity();
    let mut cur = s.clone();
    let mut d = dist(&cur)?;
    let mut seq = FlipSequence::new();
    while d > 0 {
        let n = cur.len();
        let mut next = None;
        for i in 2..=n {
            let (child, _) = flip_norm(&cur, Flip::new(i)?)?;
            if child.len().saturating_sub(arity) > d - 1 {
                continue;
            }
            if dist(&child)? == d - 1 {
                next = Some((i, child));
                break;
            }
        }
        let (i, child) =
            next.ok_or_else(|| Error::InvalidArgument(format!("no distance-decreasing flip from {cur}")))?;
        push(&mut seq, i);
        cur = child;
        d -= 1;
    }
    Ok(seq)
}

fn require_ternary(s: &NormalizedString) -> Result<()> {
    match s.arity() {
        0..=3 => Ok(()),
        k => Err(Error::UnsupportedArity(k)),
    }
}

pub fn sort_optimal(s: &NormalizedString) -> Result<SolveResult> {
    require_ternary(s)?;
    if s.arity() == 2 {
        return sort_binary(s);
    }
    Ok(SolveResult::new(descend(s, classify::sorting_distance)?, true))
}

pub fn sort_binary(s: &NormalizedString) -> Result<SolveResult> {
    if s.arity() != 2 {
        return Err(Error::UnsupportedArity(s.arity()));
    }
    let mut seq = FlipSequence::new();
    let mut cur = s.clone();
    while cur.len() > 2 {
        push(&mut seq, 2);
        cur = flip_norm(&cur, Flip::new(2)?)?.0;
    }
    if cur.symbols()[0] > cur.symbols()[1] {
        push(&mut seq, 2);
    }
    Ok(SolveResult::new(seq, true))
}

pub fn group_optimal(s: &NormalizedString) -> Result<SolveResult> {
    require_ternary(s)?;
    if s.arity() == 3 && classify::grouping_class(&s.compact())?.is_bad() {
        let mut r = group_greedy(s);
        r.optimal = true;
        return Ok(r);
    }
    Ok(SolveResult::new(descend(s, classify::grouping_distance)?, true))
}

/// Grouping in at most `n - 2` flips for any arity: 1-flips whenever the
/// leading symbol recurs, otherwise a 0-flip parking it in front of the
/// suffix of symbols that occur once.
pub fn group_greedy(s: &NormalizedString) -> SolveResult {
    let k = s.arity();
    let mut cur = s.symbols().to_vec();
    let mut seq = FlipSequence::new();
    while cur.len() > k {
        let n = cur.len();
        let prefix = match (1..n).find(|&i| cur[i] == cur[0]) {
            Some(i) => i,
            None => {
                let mut counts = HashMap::new();
                for &c in &cur {
                    *counts.entry(c).or_insert(0usize) += 1;
                }
                let unique = cur.iter().rev().take_while(|c| counts[c] == 1).count();
                n - unique
            }
        };
        push(&mut seq, prefix);
        cur[..prefix].reverse();
        if prefix < cur.len() && cur[prefix - 1] == cur[prefix] {
            cur.remove(prefix);
        }
    }
    SolveResult::new(seq, false)
}

/// At most `2(n - α)` flips from `s` to `t`, `α` the multiplicity of the most
/// frequent symbol of `s`.
pub fn transform_towards(s: &RawString, t: &RawString) -> Result<SolveResult> {
    if !compatible(s, t) {
        return Err(Error::Incompatible);
    }
    let Some(a) = s.frequencies().most_frequent() else {
        return Ok(SolveResult::new(FlipSequence::new(), true));
    };
    let mut sides = [s.symbols().to_vec(), t.symbols().to_vec()];
    let mut seqs = [FlipSequence::new(), FlipSequence::new()];
    let mut p = s.len();
    while p > 0 {
        if sides[0][p - 1] == sides[1][p - 1] {
            p -= 1;
            continue;
        }
        // move onto side `mover` the symbol the other side ends with; it is never `a`
        let mover = usize::from(sides[1][p - 1] == a);
        let want = sides[1 - mover][p - 1];
        let w = &mut sides[mover];
        let j = w[..p].iter().position(|&c| c == want).expect("compatible prefixes");
        if j > 0 {
            w[..=j].reverse();
            push(&mut seqs[mover], j + 1);
        }
        w[..p].reverse();
        push(&mut seqs[mover], p);
        p -= 1;
    }
    let [mut seq, back] = seqs;
    seq.extend(&back.reversed());
    Ok(SolveResult::new(seq, false))
}

/// At most `n - 1` flips between compatible binary strings.
pub fn transform_binary(s: &RawString, t: &RawString) -> Result<SolveResult> {
    if !compatible(s, t) {
        return Err(Error::Incompatible);
    }
    let symbols = sorted_distinct(&s.normalize());
    if symbols.len() > 2 {
        return Err(Error::NotBinary);
    }
    if symbols.len() < 2 {
        return Ok(SolveResult::new(FlipSequence::new(), false));
    }
    let (lo, hi) = (symbols[0], symbols[1]);
    let mut sides = [s.symbols().to_vec(), t.symbols().to_vec()];
    let mut seqs = [FlipSequence::new(), FlipSequence::new()];
    let mut p = s.len();

    fn apply(side: &mut [Symbol], seq: &mut FlipSequence, prefix: usize) {
        side[..prefix].reverse();
        push(seq, prefix);
    }
    fn find_pair(w: &[Symbol], x: Symbol, y: Symbol) -> Option<usize> {
        w.windows(2).position(|p| p[0] == x && p[1] == y)
    }

    while p >= 2 {
        if sides[0][p - 1] == sides[1][p - 1] {
            p -= 1;
            continue;
        }
        // `a` ends in lo, `b` in hi
        let a = usize::from(sides[0][p - 1] == hi);
        let b = 1 - a;
        if sides[b][0] == lo {
            apply(&mut sides[b], &mut seqs[b], p);
            p -= 1;
        } else if sides[a][0] == hi {
            apply(&mut sides[a], &mut seqs[a], p);
            p -= 1;
        } else {
            // both ends of `a` are lo, both ends of `b` are hi
            let (side, x, y) = if sides[b][p - 2] == lo {
                (a, lo, hi)
            } else if sides[a][p - 2] == hi {
                (b, hi, lo)
            } else if find_pair(&sides[a][..p], hi, hi).is_some() {
                (a, hi, hi)
            } else {
                (b, lo, lo)
            };
            let j = find_pair(&sides[side][..p], x, y).expect("pair exists by counting");
            apply(&mut sides[side], &mut seqs[side], j + 2);
            apply(&mut sides[side], &mut seqs[side], p);
            p -= 2;
        }
    }
    let [mut seq, back] = seqs;
    seq.extend(&back.reversed());
    Ok(SolveResult::new(seq, false))
}

/// Maps flips on the normalized form of `raw` to flips on `raw` itself.
pub fn lift_to_raw(raw: &RawString, normalized: &FlipSequence) -> Result<FlipSequence> {
    let mut runs: Vec<(Symbol, usize)> = Vec::new();
    for &c in raw.symbols() {
        match runs.last_mut() {
            Some((sym, len)) if *sym == c => *len += 1,
            _ => runs.push((c, 1)),
        }
    }
    let mut out = FlipSequence::new();
    for flip in normalized.flips() {
        let i = flip.prefix();
        if i > runs.len() {
            return Err(Error::PrefixTooLong {
                prefix: i,
                len: runs.len(),
            });
        }
        push(&mut out, runs[..i].iter().map(|r| r.1).sum());
        runs[..i].reverse();
        if i < runs.len() && runs[i - 1].0 == runs[i].0 {
            runs[i - 1].1 += runs[i].1;
            runs.remove(i);
        }
    }
    Ok(out)
}

/// Entries kept per cached exact-distance table.
const TABLE_STATES: u64 = 4_000_000;

type TableCache = Mutex<HashMap<(usize, Goal), DistanceTable>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Optimal sequence for a compact, fully k-ary string: descent over a cached
/// exhaustive table when it fits, A* otherwise.
fn exact(s: &NormalizedString, goal: Goal) -> Result<FlipSequence> {
    let k = s.arity();
    let mut cache = table_cache().lock().unwrap_or_else(|e| e.into_inner());
    let table = match cache.entry((k, goal)) {
        std::collections::hash_map::Entry::Occupied(e) => Some(e.into_mut()),
        std::collections::hash_map::Entry::Vacant(e) => {
            DistanceTable::build(k, k, goal, TABLE_STATES).ok().map(|t| e.insert(t))
        }
    };
    if let Some(table) = table {
        if table.extend(s.len(), TABLE_STATES).is_ok() {
            let table = &*table;
            return descend(s, |x| {
                table
                    .distance(x)
                    .ok_or_else(|| Error::InvalidArgument(format!("{x} outside distance table")))
            });
        }
    }
    drop(cache);
    Ok(shortest_path(s, goal, &SearchBudget::default())?.1)
}

pub fn group_ptas(s: &RawString, eps: Epsilon) -> Result<SolveResult> {
    let norm = s.normalize().compact();
    let k = norm.arity();
    let (seq, optimal) = if k <= 3 {
        (group_optimal(&norm)?.sequence, true)
    } else if norm.len() as f64 >= eps.grouping_threshold(k) {
        (group_greedy(&norm).sequence, false)
    } else {
        (exact(&norm, Goal::Grouping)?, true)
    };
    Ok(SolveResult::new(lift_to_raw(s, &seq)?, optimal))
}

pub fn sort_ptas(s: &RawString, eps: Epsilon) -> Result<SolveResult> {
    let norm = s.normalize().compact();
    let k = norm.arity();
    let (seq, optimal) = if k <= 3 {
        (sort_optimal(&norm)?.sequence, true)
    } else if norm.len() as f64 >= eps.sorting_threshold(k) {
        let mut seq = group_greedy(&norm).sequence;
        let grouped = norm.apply(&seq)?;
        seq.extend(&pancake(grouped.symbols()));
        (seq, false)
    } else {
        (exact(&norm, Goal::Sorting)?, true)
    };
    Ok(SolveResult::new(lift_to_raw(s, &seq)?, optimal))
}

/// Sorts a permutation of distinct symbols: bring the greatest misplaced
/// symbol to the front, then into place.
fn pancake(perm: &[Symbol]) -> FlipSequence {
    let mut cur = perm.to_vec();
    let mut target = cur.clone();
    target.sort_unstable();
    let mut seq = FlipSequence::new();
    for place in (1..cur.len()).rev() {
        if cur[place] == target[place] {
            continue;
        }
        let j = cur.iter().position(|&c| c == target[place]).expect("permutation");
        if j > 0 {
            cur[..=j].reverse();
            push(&mut seq, j + 1);
        }
        cur[..=place].reverse();
        push(&mut seq, place + 1);
    }
    seq
}
