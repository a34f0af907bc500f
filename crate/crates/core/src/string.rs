//! Raw and normalized strings, prefix reversals and the 1-flip/0-flip split.
//!
//! A raw string is any sequence of small non-negative symbols. Collapsing
//! runs of equal symbols gives its normalized representative, on which all
//! grouping and sorting theory operates: a flip either merges two equal
//! symbols (a 1-flip, shortening the string by one) or leaves the length
//! unchanged (a 0-flip).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u8;

fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: &[Symbol]) -> fmt::Result {
    for &s in symbols {
        if s < 10 {
            write!(f, "{}", (b'0' + s) as char)?;
        } else {
            write!(f, "[{s}]")?;
        }
    }
    Ok(())
}

fn parse_digits(text: &str) -> Result<Vec<Symbol>> {
    let text = text.trim();
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(text.to_string()));
    }
    Ok(text.bytes().map(|b| b - b'0').collect())
}

pub(crate) fn reverse_prefix(symbols: &mut [Symbol], prefix: usize) -> Result<()> {
    if prefix == 0 {
        return Err(Error::EmptyFlip);
    }
    if prefix > symbols.len() {
        return Err(Error::PrefixTooLong {
            prefix,
            len: symbols.len(),
        });
    }
    symbols[..prefix].reverse();
    Ok(())
}

fn distinct(symbols: &[Symbol]) -> BTreeSet<Symbol> {
    symbols.iter().copied().collect()
}

/// Bitmask of occurring symbols, or `None` if some symbol is 64 or more.
fn symbol_mask(symbols: &[Symbol]) -> Option<u64> {
    symbols.iter().try_fold(0u64, |m, &s| (s < 64).then(|| m | (1u64 << s)))
}

fn count_distinct(symbols: &[Symbol]) -> usize {
    match symbol_mask(symbols) {
        Some(mask) => mask.count_ones() as usize,
        None => distinct(symbols).len(),
    }
}

fn fully_kary(symbols: &[Symbol]) -> bool {
    match symbol_mask(symbols) {
        Some(mask) => mask & mask.wrapping_add(1) == 0,
        None => false,
    }
}

/// A prefix reversal `f^(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Flip(usize);

impl Flip {
    pub fn new(prefix: usize) -> Result<Self> {
        if prefix == 0 {
            return Err(Error::EmptyFlip);
        }
        Ok(Flip(prefix))
    }

    pub fn prefix(self) -> usize {
        self.0
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlipKind {
    ZeroFlip,
    OneFlip,
}

/// Ordered prefix lengths; serialized as `"4,2,2"` in text and `[4,2,2]` in JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlipSequence(Vec<Flip>);

impl FlipSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_prefixes<I: IntoIterator<Item = usize>>(prefixes: I) -> Result<Self> {
        prefixes
            .into_iter()
            .map(Flip::new)
            .collect::<Result<Vec<_>>>()
            .map(FlipSequence)
    }

    pub fn push(&mut self, flip: Flip) {
        self.0.push(flip);
    }

    pub fn extend(&mut self, other: &FlipSequence) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flips(&self) -> &[Flip] {
        &self.0
    }

    pub fn prefixes(&self) -> Vec<usize> {
        self.0.iter().map(|f| f.0).collect()
    }

    /// The same flips in reverse order; since every flip is an involution this
    /// undoes the sequence.
    pub fn reversed(&self) -> FlipSequence {
        FlipSequence(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for FlipSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, flip) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{flip}")?;
        }
        Ok(())
    }
}

impl FromStr for FlipSequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(FlipSequence::new());
        }
        text.split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(text.to_string()))
                    .and_then(Flip::new)
            })
            .collect::<Result<Vec<_>>>()
            .map(FlipSequence)
    }
}

impl FromIterator<Flip> for FlipSequence {
    fn from_iter<T: IntoIterator<Item = Flip>>(iter: T) -> Self {
        FlipSequence(iter.into_iter().collect())
    }
}

/// Symbol counts, indexed by symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrequencyVector(Vec<usize>);

impl FrequencyVector {
    pub fn of(symbols: &[Symbol]) -> Self {
        let width = symbols.iter().map(|&s| usize::from(s) + 1).max().unwrap_or(0);
        let mut counts = vec![0; width];
        for &s in symbols {
            counts[usize::from(s)] += 1;
        }
        FrequencyVector(counts)
    }

    pub fn from_counts(counts: Vec<usize>) -> Self {
        let mut counts = counts;
        while counts.last() == Some(&0) {
            counts.pop();
        }
        FrequencyVector(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Multiplicity of the most frequent symbol.
    pub fn alpha(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Smallest symbol attaining [`alpha`](Self::alpha).
    pub fn most_frequent(&self) -> Option<Symbol> {
        let alpha = self.alpha();
        if alpha == 0 {
            return None;
        }
        self.0.iter().position(|&c| c == alpha).map(|p| p as Symbol)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawString(Vec<Symbol>);

impl RawString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        RawString(symbols)
    }

    /// Parses a digit string and rejects symbols `>= arity`.
    pub fn parse_with_arity(text: &str, arity: usize) -> Result<Self> {
        let s: RawString = text.parse()?;
        if s.0.iter().any(|&c| usize::from(c) >= arity) {
            return Err(Error::Parse(text.to_string()));
        }
        Ok(s)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct symbols.
    pub fn arity(&self) -> usize {
        count_distinct(&self.0)
    }

    pub fn is_fully_kary(&self) -> bool {
        fully_kary(&self.0)
    }

    pub fn frequencies(&self) -> FrequencyVector {
        FrequencyVector::of(&self.0)
    }

    pub fn normalize(&self) -> NormalizedString {
        normalize(self)
    }

    pub fn flip(&self, flip: Flip) -> Result<RawString> {
        flip_raw(self, flip)
    }

    pub fn apply(&self, sequence: &FlipSequence) -> Result<RawString> {
        let mut symbols = self.0.clone();
        for flip in sequence.flips() {
            reverse_prefix(&mut symbols, flip.prefix())?;
        }
        Ok(RawString(symbols))
    }
}

impl fmt::Display for RawString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

impl FromStr for RawString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_digits(text).map(RawString)
    }
}

impl From<&NormalizedString> for RawString {
    fn from(s: &NormalizedString) -> Self {
        RawString(s.0.clone())
    }
}

impl Serialize for RawString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A string in which adjacent symbols always differ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalizedString(Vec<Symbol>);

impl NormalizedString {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(pos) = symbols.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::NotNormalized(pos + 1));
        }
        Ok(NormalizedString(symbols))
    }

    pub(crate) fn from_vec_unchecked(symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.windows(2).all(|w| w[0] != w[1]));
        NormalizedString(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn arity(&self) -> usize {
        count_distinct(&self.0)
    }

    pub fn is_fully_kary(&self) -> bool {
        fully_kary(&self.0)
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    pub fn flip(&self, flip: Flip) -> Result<(NormalizedString, FlipKind)> {
        flip_norm(self, flip)
    }

    /// Replays `sequence`, normalizing after every flip.
    pub fn apply(&self, sequence: &FlipSequence) -> Result<NormalizedString> {
        let mut current = self.clone();
        for &flip in sequence.flips() {
            current = flip_norm(&current, flip)?.0;
        }
        Ok(current)
    }

    pub fn one_flip_children(&self) -> Vec<(Flip, NormalizedString)> {
        one_flip_children(self)
    }

    pub fn parents(&self) -> Vec<NormalizedString> {
        parents(self)
    }

    /// Applies a symbol map (used for alphabet relabelings).
    pub fn relabel(&self, map: &[Symbol]) -> NormalizedString {
        NormalizedString(self.0.iter().map(|&s| map[usize::from(s)]).collect())
    }

    /// Order-preserving relabeling onto `0..arity`.
    pub fn compact(&self) -> NormalizedString {
        if fully_kary(&self.0) {
            return self.clone();
        }
        let set: Vec<Symbol> = distinct(&self.0).into_iter().collect();
        NormalizedString(self.0.iter().map(|s| set.binary_search(s).unwrap() as Symbol).collect())
    }
}

impl fmt::Display for NormalizedString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

/// Parsing normalizes, so `"1022"` reads as `102`.
impl FromStr for NormalizedString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Ok(normalize(&text.parse::<RawString>()?))
    }
}

impl Serialize for NormalizedString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn normalize(s: &RawString) -> NormalizedString {
    let mut out = s.0.clone();
    out.dedup();
    NormalizedString(out)
}

pub fn flip_raw(s: &RawString, flip: Flip) -> Result<RawString> {
    let mut symbols = s.0.clone();
    reverse_prefix(&mut symbols, flip.prefix())?;
    Ok(RawString(symbols))
}

pub fn flip_norm(s: &NormalizedString, flip: Flip) -> Result<(NormalizedString, FlipKind)> {
    let i = flip.prefix();
    let n = s.len();
    if i > n {
        return Err(Error::PrefixTooLong { prefix: i, len: n });
    }
    let symbols = &s.0;
    let merges = i < n && symbols[0] == symbols[i];
    let mut out = Vec::with_capacity(n);
    out.extend(symbols[..i].iter().rev());
    if merges {
        out.extend_from_slice(&symbols[i + 1..]);
        Ok((NormalizedString(out), FlipKind::OneFlip))
    } else {
        out.extend_from_slice(&symbols[i..]);
        Ok((NormalizedString(out), FlipKind::ZeroFlip))
    }
}

/// All flips with `s_1 = s_{i+1}`, each paired with its child.
pub fn one_flip_children(s: &NormalizedString) -> Vec<(Flip, NormalizedString)> {
    let symbols = &s.0;
    let n = symbols.len();
    (1..n)
        .filter(|&i| symbols[i] == symbols[0])
        .map(|i| {
            let mut out = Vec::with_capacity(n - 1);
            out.extend(symbols[..i].iter().rev());
            out.extend_from_slice(&symbols[i + 1..]);
            (Flip(i), NormalizedString(out))
        })
        .collect()
}

/// Strings one symbol longer having a 1-flip to `s`: for each position `i`
/// with `s_i != s_1`, double `s_i` and reverse the length-`i` prefix.
pub fn parents(s: &NormalizedString) -> Vec<NormalizedString> {
    let symbols = &s.0;
    let mut out: Vec<NormalizedString> = Vec::new();
    for i in 2..=symbols.len() {
        if symbols[i - 1] == symbols[0] {
            continue;
        }
        let mut p = Vec::with_capacity(symbols.len() + 1);
        p.extend_from_slice(&symbols[..i]);
        p.push(symbols[i - 1]);
        p.extend_from_slice(&symbols[i..]);
        p[..i].reverse();
        if p.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let p = NormalizedString(p);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// `I(s)` for the given symbol counts.
pub fn identity_string(freq: &FrequencyVector) -> RawString {
    let mut out = Vec::with_capacity(freq.total());
    for (symbol, &count) in freq.counts().iter().enumerate() {
        out.extend(std::iter::repeat_n(symbol as Symbol, count));
    }
    RawString(out)
}

pub fn compatible(s: &RawString, t: &RawString) -> bool {
    s.frequencies() == t.frequencies()
}
