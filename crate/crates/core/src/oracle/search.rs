//! A* over normalized strings for arities without a closed form.
//!
//! Every flip shortens a normalized string by at most one, so `len - k`
//! bounds the remaining grouping distance. For sorting, a string whose last
//! symbol is not the largest still needs a full-length flip, which never
//! shortens it; that adds one. Both bounds are consistent, so the first goal
//! popped is optimal.
//!
//! States are packed four bits per symbol (symbol plus one, so a zero nibble
//! ends the string), limiting the search to 15 symbols and length 32.

use std::collections::HashMap;
use std::time::Instant;

use super::table::Goal;
use super::SearchBudget;
use crate::error::{Error, Result};
use crate::string::{Flip, FlipSequence, NormalizedString, Symbol};

const MAX_LEN: usize = 32;

fn pack(v: &[Symbol]) -> u128 {
    v.iter()
        .enumerate()
        .fold(0u128, |w, (j, &c)| w | (u128::from(c + 1) << (4 * j)))
}

fn unpack(mut w: u128, out: &mut [Symbol; MAX_LEN]) -> usize {
    let mut len = 0;
    while w != 0 {
        out[len] = (w & 0xf) as Symbol - 1;
        w >>= 4;
        len += 1;
    }
    len
}

struct Node {
    key: u128,
    parent: u32,
    flip: u8,
    g: u8,
}

pub fn shortest_path(s: &NormalizedString, goal: Goal, budget: &SearchBudget) -> Result<(usize, FlipSequence)> {
    budget.validate()?;
    if s.len() > MAX_LEN || s.symbols().iter().any(|&c| c >= 15) {
        return Err(Error::BudgetExceeded(format!(
            "search needs length <= {MAX_LEN} over at most 15 symbols"
        )));
    }
    let k = s.arity();
    let mut target: Vec<Symbol> = s.symbols().to_vec();
    target.sort_unstable();
    target.dedup();
    let top = target.last().copied();
    let target = pack(&target);
    let h = |v: &[Symbol]| -> usize {
        let base = v.len() - k;
        match goal {
            Goal::Grouping => base,
            Goal::Sorting => base + usize::from(v.last().copied() != top),
        }
    };

    let start = Instant::now();
    let root = pack(s.symbols());
    let mut nodes = vec![Node {
        key: root,
        parent: u32::MAX,
        flip: 0,
        g: 0,
    }];
    let mut best_g: HashMap<u128, u8> = HashMap::new();
    best_g.insert(root, 0);
    let h0 = h(s.symbols());
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); h0 + 1];
    buckets[h0].push(0);
    let mut f = h0;
    let mut cur = [0 as Symbol; MAX_LEN];
    let mut child = [0 as Symbol; MAX_LEN];
    let found = loop {
        while f < buckets.len() && buckets[f].is_empty() {
            f += 1;
        }
        if f >= buckets.len() {
            return Err(Error::InvalidArgument("goal unreachable".into()));
        }
        if f > budget.max_depth {
            return Err(Error::BudgetExceeded(format!("depth {f} reached")));
        }
        // LIFO inside a bucket dives towards the goal first
        let idx = buckets[f].pop().expect("nonempty bucket") as usize;
        let (key, g) = (nodes[idx].key, nodes[idx].g);
        if best_g[&key] < g {
            continue;
        }
        let n = unpack(key, &mut cur);
        let done = match goal {
            Goal::Grouping => n == k,
            Goal::Sorting => key == target,
        };
        if done {
            break idx;
        }
        if budget.time_limit.is_some_and(|t| start.elapsed() > t) {
            return Err(Error::BudgetExceeded("search time limit reached".into()));
        }
        for i in 2..=n {
            for j in 0..i {
                child[j] = cur[i - 1 - j];
            }
            let len = if i < n && cur[0] == cur[i] {
                child[i..n - 1].copy_from_slice(&cur[i + 1..n]);
                n - 1
            } else {
                child[i..n].copy_from_slice(&cur[i..n]);
                n
            };
            let ckey = pack(&child[..len]);
            if best_g.get(&ckey).is_some_and(|&b| b <= g + 1) {
                continue;
            }
            let fc = usize::from(g) + 1 + h(&child[..len]);
            best_g.insert(ckey, g + 1);
            nodes.push(Node {
                key: ckey,
                parent: idx as u32,
                flip: i as u8,
                g: g + 1,
            });
            if buckets.len() <= fc {
                buckets.resize(fc + 1, Vec::new());
            }
            buckets[fc].push((nodes.len() - 1) as u32);
            if nodes.len() as u64 > budget.max_states.min(u64::from(u32::MAX)) {
                return Err(Error::BudgetExceeded(format!("{} states stored", nodes.len())));
            }
        }
    };
    let mut flips = Vec::new();
    let mut at = found;
    while nodes[at].parent != u32::MAX {
        flips.push(Flip::new(usize::from(nodes[at].flip))?);
        at = nodes[at].parent as usize;
    }
    flips.reverse();
    Ok((flips.len(), flips.into_iter().collect()))
}
