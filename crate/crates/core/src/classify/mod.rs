//! Closed-form classification of binary and ternary strings and the
//! resulting grouping and sorting distances.
//!
//! Grouping classes are relabel-invariant: a string is matched against the
//! generic families under all six permutations of `{0,1,2}`. Sorting classes
//! are literal and apply to fully ternary strings ending in `2`; any other
//! fully ternary string is classified through `s·2`, which has the same
//! sorting distance.

mod patterns;
pub mod tables;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::string::{NormalizedString, Symbol};

pub use tables::{GROUPING_EXCEPTIONS, SORTING_EXCEPTIONS};

const RELABELINGS: [[Symbol; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

const EXCEPTIONAL: [Symbol; 4] = [0, 2, 1, 2];

const ROMAN: [&str; 9] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupingClass {
    Good,
    BadTypeI,
    BadTypeII,
    BadTypeIII,
    /// Index into `X_1..X_8` (1-based).
    BadTypeIV(u8),
}

impl GroupingClass {
    pub fn is_bad(self) -> bool {
        self != GroupingClass::Good
    }

    /// Generically bad: types I to III.
    pub fn is_generic_bad(self) -> bool {
        matches!(
            self,
            GroupingClass::BadTypeI | GroupingClass::BadTypeII | GroupingClass::BadTypeIII
        )
    }

    pub fn tag(self) -> String {
        match self {
            GroupingClass::Good => "good".into(),
            GroupingClass::BadTypeI => "bad:I".into(),
            GroupingClass::BadTypeII => "bad:II".into(),
            GroupingClass::BadTypeIII => "bad:III".into(),
            GroupingClass::BadTypeIV(i) => format!("bad:IV:{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SortingClass {
    Good,
    /// Generic family I to VIII.
    BadType(u8),
    /// Index into `Y_1..Y_77` (1-based).
    BadTypeIX(u8),
    Exceptional0212,
}

impl SortingClass {
    pub fn is_bad(self) -> bool {
        self != SortingClass::Good
    }

    pub fn is_generic_bad(self) -> bool {
        matches!(self, SortingClass::BadType(_) | SortingClass::Exceptional0212)
    }

    pub fn tag(self) -> String {
        match self {
            SortingClass::Good => "good".into(),
            SortingClass::BadType(t) => format!("bad:{}", ROMAN[usize::from(t) - 1]),
            SortingClass::BadTypeIX(i) => format!("bad:IX:{i}"),
            SortingClass::Exceptional0212 => "bad:0212".into(),
        }
    }
}

macro_rules! tag_display {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.tag())
            }
        }

        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serializer.serialize_str(&self.tag())
            }
        }
    };
}

tag_display!(GroupingClass);
tag_display!(SortingClass);

fn digits(s: &str) -> Vec<Symbol> {
    s.bytes().map(|b| b - b'0').collect()
}

/// Classifier over a pair of exception tables.
///
/// [`Classifier::standard`] holds the published tables; other tables are
/// only useful for checking that the verification suite notices changes.
#[derive(Clone, Debug)]
pub struct Classifier {
    grouping_exceptions: Vec<Vec<Symbol>>,
    sorting_exceptions: Vec<Vec<Symbol>>,
    grouping_index: HashMap<Vec<Symbol>, u8>,
    sorting_index: HashMap<Vec<Symbol>, u8>,
    /// Bit `t - 1` switches generic family `t` off.
    disabled_grouping: u16,
    disabled_sorting: u16,
}

impl Classifier {
    pub fn new(grouping_exceptions: Vec<Vec<Symbol>>, sorting_exceptions: Vec<Vec<Symbol>>) -> Self {
        let index = |table: &[Vec<Symbol>]| {
            let mut map = HashMap::new();
            for (i, s) in table.iter().enumerate() {
                map.entry(s.clone()).or_insert(i as u8 + 1);
            }
            map
        };
        Classifier {
            grouping_index: index(&grouping_exceptions),
            sorting_index: index(&sorting_exceptions),
            grouping_exceptions,
            sorting_exceptions,
            disabled_grouping: 0,
            disabled_sorting: 0,
        }
    }

    /// Ignores generic grouping type `t` (1 to 3).
    pub fn without_grouping_type(mut self, t: u8) -> Self {
        self.disabled_grouping |= 1 << (t - 1);
        self
    }

    /// Ignores generic sorting type `t` (1 to 8).
    pub fn without_sorting_type(mut self, t: u8) -> Self {
        self.disabled_sorting |= 1 << (t - 1);
        self
    }

    pub fn standard() -> &'static Classifier {
        static STANDARD: OnceLock<Classifier> = OnceLock::new();
        STANDARD.get_or_init(|| {
            Classifier::new(
                GROUPING_EXCEPTIONS.iter().map(|s| digits(s)).collect(),
                SORTING_EXCEPTIONS.iter().map(|s| digits(s)).collect(),
            )
        })
    }

    pub fn grouping_exceptions(&self) -> &[Vec<Symbol>] {
        &self.grouping_exceptions
    }

    pub fn sorting_exceptions(&self) -> &[Vec<Symbol>] {
        &self.sorting_exceptions
    }

    pub fn grouping_class(&self, s: &NormalizedString) -> Result<GroupingClass> {
        if s.arity() != 3 || !s.is_fully_kary() {
            return Err(Error::NotFullyTernary);
        }
        let relabeled: Vec<Vec<Symbol>> = RELABELINGS
            .iter()
            .map(|map| s.symbols().iter().map(|&c| map[usize::from(c)]).collect())
            .collect();
        let any = |t: u8, pred: fn(&[Symbol]) -> bool| {
            self.disabled_grouping & (1 << (t - 1)) == 0 && relabeled.iter().any(|v| pred(v))
        };
        if s.len() > 3 && any(1, patterns::grouping::type_i) {
            return Ok(GroupingClass::BadTypeI);
        }
        if any(2, patterns::grouping::type_ii) {
            return Ok(GroupingClass::BadTypeII);
        }
        if any(3, patterns::grouping::type_iii) {
            return Ok(GroupingClass::BadTypeIII);
        }
        let exception = relabeled
            .iter()
            .filter_map(|t| self.grouping_index.get(t).copied())
            .min();
        Ok(exception.map_or(GroupingClass::Good, GroupingClass::BadTypeIV))
    }

    pub fn sorting_class(&self, s: &NormalizedString) -> Result<SortingClass> {
        if s.arity() != 3 || !s.is_fully_kary() {
            return Err(Error::NotFullyTernary);
        }
        let extended;
        let t: &[Symbol] = if s.last() == Some(2) {
            s.symbols()
        } else {
            extended = [s.symbols(), &[2]].concat();
            &extended
        };
        if t == EXCEPTIONAL {
            return Ok(SortingClass::Exceptional0212);
        }
        use patterns::sorting::*;
        let families: [fn(&[Symbol]) -> bool; 8] =
            [type_i, type_ii, type_iii, type_iv, type_v, type_vi, type_vii, type_viii];
        let enabled = |p: usize| self.disabled_sorting & (1 << p) == 0;
        if let Some(p) = (0..families.len()).find(|&p| enabled(p) && families[p](t)) {
            return Ok(SortingClass::BadType(p as u8 + 1));
        }
        Ok(self
            .sorting_index
            .get(t)
            .map_or(SortingClass::Good, |&i| SortingClass::BadTypeIX(i)))
    }

    pub fn grouping_distance(&self, s: &NormalizedString) -> Result<usize> {
        let n = s.len();
        match s.arity() {
            0 | 1 => Ok(0),
            2 => Ok(n - 2),
            3 => {
                let s = s.compact();
                Ok(if self.grouping_class(&s)?.is_bad() {
                    n - 2
                } else {
                    n - 3
                })
            }
            k => Err(Error::UnsupportedArity(k)),
        }
    }

    pub fn sorting_distance(&self, s: &NormalizedString) -> Result<usize> {
        let n = s.len();
        match s.arity() {
            0 | 1 => Ok(0),
            2 => {
                let s = s.compact();
                Ok(if s.last() == Some(1) { n - 2 } else { n - 1 })
            }
            3 => {
                let s = s.compact();
                let len = if s.last() == Some(2) { n } else { n + 1 };
                Ok(match self.sorting_class(&s)? {
                    SortingClass::Exceptional0212 => 3,
                    c if c.is_bad() => len - 2,
                    _ => len - 3,
                })
            }
            k => Err(Error::UnsupportedArity(k)),
        }
    }
}

pub fn grouping_class(s: &NormalizedString) -> Result<GroupingClass> {
    Classifier::standard().grouping_class(s)
}

pub fn sorting_class(s: &NormalizedString) -> Result<SortingClass> {
    Classifier::standard().sorting_class(s)
}

/// Minimum number of flips reducing `s` to length equal to its arity.
pub fn grouping_distance(s: &NormalizedString) -> Result<usize> {
    Classifier::standard().grouping_distance(s)
}

/// Minimum number of flips taking `s` to its sorted form.
pub fn sorting_distance(s: &NormalizedString) -> Result<usize> {
    Classifier::standard().sorting_distance(s)
}
