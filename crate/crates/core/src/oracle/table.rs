//! Exhaustive distance tables over all fully k-ary normalized strings up to
//! a given length, computed layer by layer.
//!
//! A normalized string over `k` symbols of length `L` is ranked as a mixed
//! radix number: the first symbol in base `k`, every later one in base `k-1`
//! (its value with the previous symbol skipped). Layer `L` only depends on
//! layer `L-1` through 1-flips; inside a layer the 0-flips form an
//! undirected graph, relaxed with a bucket queue.

use crate::error::{Error, Result};
use crate::string::{NormalizedString, Symbol};

pub const UNREACHED: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    /// Reach `0 1 … k-1`.
    Sorting,
    /// Reach any string of length `k`.
    Grouping,
}

#[derive(Clone, Debug)]
pub struct DistanceTable {
    arity: usize,
    max_len: usize,
    goal: Goal,
    /// `layers[L]` holds distances for length `L`; `UNREACHED` marks strings
    /// that are not fully k-ary.
    layers: Vec<Vec<u8>>,
}

fn layer_size(arity: usize, len: usize) -> usize {
    if len == 0 {
        return 1;
    }
    arity * (arity - 1).pow(len as u32 - 1)
}

impl DistanceTable {
    /// Refuses tables with more than `max_states` entries.
    pub fn build(arity: usize, max_len: usize, goal: Goal, max_states: u64) -> Result<DistanceTable> {
        if !(2..=10).contains(&arity) {
            return Err(Error::UnsupportedArity(arity));
        }
        let total: u64 = (arity..=max_len).map(|l| layer_size(arity, l) as u64).sum();
        if total > max_states {
            return Err(Error::BudgetExceeded(format!(
                "distance table for k={arity}, n<={max_len} needs {total} states (limit {max_states})"
            )));
        }
        let mut table = DistanceTable {
            arity,
            max_len,
            goal,
            layers: vec![Vec::new(); max_len.max(arity) + 1],
        };
        for len in arity..=max_len {
            let layer = table.build_layer(len);
            table.layers[len] = layer;
        }
        Ok(table)
    }

    /// Adds layers up to `max_len`, under the same state limit as [`build`](Self::build).
    pub fn extend(&mut self, max_len: usize, max_states: u64) -> Result<()> {
        if max_len <= self.max_len {
            return Ok(());
        }
        let total: u64 = (self.arity..=max_len).map(|l| layer_size(self.arity, l) as u64).sum();
        if total > max_states {
            return Err(Error::BudgetExceeded(format!(
                "distance table for k={}, n<={max_len} needs {total} states (limit {max_states})",
                self.arity
            )));
        }
        self.layers.resize(max_len + 1, Vec::new());
        for len in (self.max_len + 1).max(self.arity)..=max_len {
            let layer = self.build_layer(len);
            self.layers[len] = layer;
        }
        self.max_len = max_len;
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn goal(&self) -> Goal {
        self.goal
    }

    pub fn rank(&self, s: &[Symbol]) -> usize {
        let base = self.arity - 1;
        let mut r = usize::from(s[0]);
        for w in s.windows(2) {
            let digit = usize::from(w[1]) - usize::from(w[1] > w[0]);
            r = r * base + digit;
        }
        r
    }

    pub fn unrank(&self, len: usize, mut r: usize) -> Vec<Symbol> {
        let base = self.arity - 1;
        let mut digits = vec![0usize; len];
        for j in (1..len).rev() {
            digits[j] = r % base;
            r /= base;
        }
        digits[0] = r;
        let mut out = Vec::with_capacity(len);
        out.push(digits[0] as Symbol);
        for j in 1..len {
            let prev = usize::from(out[j - 1]);
            let d = digits[j];
            out.push((if d >= prev { d + 1 } else { d }) as Symbol);
        }
        out
    }

    fn is_fully(&self, s: &[Symbol]) -> bool {
        let mut seen = 0u32;
        for &c in s {
            if usize::from(c) >= self.arity {
                return false;
            }
            seen |= 1 << c;
        }
        seen == (1u32 << self.arity) - 1
    }

    fn build_layer(&self, len: usize) -> Vec<u8> {
        let size = layer_size(self.arity, len);
        let mut dist = vec![UNREACHED; size];
        let mut buckets: Vec<Vec<usize>> = Vec::new();
        let push = |buckets: &mut Vec<Vec<usize>>, d: usize, idx: usize| {
            if buckets.len() <= d {
                buckets.resize(d + 1, Vec::new());
            }
            buckets[d].push(idx);
        };
        let mut scratch = Vec::with_capacity(len);
        for idx in 0..size {
            let s = self.unrank(len, idx);
            if !self.is_fully(&s) {
                continue;
            }
            let d = if len == self.arity {
                match self.goal {
                    Goal::Grouping => Some(0),
                    Goal::Sorting => s.iter().enumerate().all(|(j, &c)| usize::from(c) == j).then_some(0),
                }
            } else {
                let below = &self.layers[len - 1];
                (1..len)
                    .filter(|&i| s[i] == s[0])
                    .filter_map(|i| {
                        scratch.clear();
                        scratch.extend(s[..i].iter().rev());
                        scratch.extend_from_slice(&s[i + 1..]);
                        let d = below[self.rank(&scratch)];
                        (d != UNREACHED).then_some(usize::from(d) + 1)
                    })
                    .min()
            };
            if let Some(d) = d {
                dist[idx] = d as u8;
                push(&mut buckets, d, idx);
            }
        }
        let mut d = 0;
        while d < buckets.len() {
            let bucket = std::mem::take(&mut buckets[d]);
            for idx in bucket {
                if usize::from(dist[idx]) != d {
                    continue;
                }
                let s = self.unrank(len, idx);
                for i in 2..=len {
                    if i < len && s[i] == s[0] {
                        continue;
                    }
                    scratch.clear();
                    scratch.extend(s[..i].iter().rev());
                    scratch.extend_from_slice(&s[i..]);
                    let j = self.rank(&scratch);
                    if dist[j] == UNREACHED || usize::from(dist[j]) > d + 1 {
                        dist[j] = (d + 1) as u8;
                        push(&mut buckets, d + 1, j);
                    }
                }
            }
            d += 1;
        }
        dist
    }

    /// Exact distance, or `None` for strings outside the table.
    pub fn distance(&self, s: &NormalizedString) -> Option<usize> {
        let symbols = s.symbols();
        let len = symbols.len();
        if len < self.arity || len > self.max_len || !self.is_fully(symbols) {
            return None;
        }
        let d = self.layers[len][self.rank(symbols)];
        (d != UNREACHED).then_some(usize::from(d))
    }

    /// Every fully k-ary normalized string of length `len`, in rank order.
    pub fn strings(&self, len: usize) -> impl Iterator<Item = (NormalizedString, usize)> + '_ {
        let layer: &[u8] = self.layers.get(len).map(Vec::as_slice).unwrap_or(&[]);
        layer.iter().enumerate().filter_map(move |(idx, &d)| {
            (d != UNREACHED).then(|| {
                (
                    NormalizedString::from_vec_unchecked(self.unrank(len, idx)),
                    usize::from(d),
                )
            })
        })
    }
}
