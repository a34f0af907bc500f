//! Literal predicates for the generic bad-string families.
//!
//! Every family is a concatenation of literals and repeated two-symbol units
//! whose positions are either bracket classes like `{0,1}` or single
//! symbols. Each predicate strips its literals and checks the remaining
//! pieces with [`repeats`]; where two repetition blocks are separated by a
//! literal, the separator is the only occurrence of its symbol in that
//! stretch, so the split point is found by a scan.

use crate::string::Symbol;

/// Bitmask of allowed symbols at one position.
#[derive(Clone, Copy)]
pub(crate) struct Class(u8);

pub(crate) const fn one(s: Symbol) -> Class {
    Class(1 << s)
}

pub(crate) const fn either(a: Symbol, b: Symbol) -> Class {
    Class((1 << a) | (1 << b))
}

impl Class {
    fn accepts(self, s: Symbol) -> bool {
        s < 8 && self.0 & (1 << s) != 0
    }
}

/// `s` is exactly `unit^m` with `m >= min`.
pub(crate) fn repeats(s: &[Symbol], unit: [Class; 2], min: usize) -> bool {
    s.len().is_multiple_of(2)
        && s.len() / 2 >= min
        && s.chunks_exact(2)
            .all(|pair| unit[0].accepts(pair[0]) && unit[1].accepts(pair[1]))
}

fn strip<'a>(s: &'a [Symbol], prefix: &[Symbol], suffix: &[Symbol]) -> Option<&'a [Symbol]> {
    if s.len() < prefix.len() + suffix.len() {
        return None;
    }
    let rest = s.strip_prefix(prefix)?;
    rest.strip_suffix(suffix)
}

/// `middle` is `A sep B` with `A = unit^{>=min_a}`, `B = unit^{>=min_b}`,
/// splitting at the first occurrence of `sep`.
fn split_repeats(middle: &[Symbol], unit: [Class; 2], sep: Symbol, min_a: usize, min_b: usize) -> bool {
    match middle.iter().position(|&c| c == sep) {
        Some(p) => repeats(&middle[..p], unit, min_a) && repeats(&middle[p + 1..], unit, min_b),
        None => false,
    }
}

fn count(s: &[Symbol], sym: Symbol) -> usize {
    s.iter().filter(|&&c| c == sym).count()
}

pub(crate) mod grouping {
    use super::*;

    /// `0(12)^{>=2}` or `02(12)^+`.
    pub(crate) fn type_i(s: &[Symbol]) -> bool {
        let unit = [one(1), one(2)];
        strip(s, &[0], &[]).is_some_and(|r| repeats(r, unit, 2))
            || strip(s, &[0, 2], &[]).is_some_and(|r| repeats(r, unit, 1))
    }

    /// `({0,1}2)^+` or `(2{0,1})^+2`.
    pub(crate) fn type_ii(s: &[Symbol]) -> bool {
        repeats(s, [either(0, 1), one(2)], 1)
            || strip(s, &[], &[2]).is_some_and(|r| repeats(r, [one(2), either(0, 1)], 1))
    }

    /// `0(21)^+02(12)^*`.
    pub(crate) fn type_iii(s: &[Symbol]) -> bool {
        let Some(rest) = strip(s, &[0], &[]) else {
            return false;
        };
        let Some(p) = rest.iter().position(|&c| c == 0) else {
            return false;
        };
        repeats(&rest[..p], [one(2), one(1)], 1)
            && rest[p + 1..].first() == Some(&2)
            && repeats(&rest[p + 2..], [one(1), one(2)], 0)
    }
}

pub(crate) mod sorting {
    use super::*;

    /// `0(12)^{>=2}`.
    pub(crate) fn type_i(s: &[Symbol]) -> bool {
        strip(s, &[0], &[]).is_some_and(|r| repeats(r, [one(1), one(2)], 2))
    }

    /// `({0,1}2)^+` or `2({0,1}2)^+`.
    pub(crate) fn type_ii(s: &[Symbol]) -> bool {
        let unit = [either(0, 1), one(2)];
        repeats(s, unit, 1) || strip(s, &[2], &[]).is_some_and(|r| repeats(r, unit, 1))
    }

    /// `({1,2}0)^+2` or `0({1,2}0)^+2`.
    pub(crate) fn type_iii(s: &[Symbol]) -> bool {
        let unit = [either(1, 2), one(0)];
        strip(s, &[], &[2]).is_some_and(|r| repeats(r, unit, 1))
            || strip(s, &[0], &[2]).is_some_and(|r| repeats(r, unit, 1))
    }

    /// `({1,2}0)^+12` or `(0{1,2})^+012`, with at least two 2s.
    pub(crate) fn type_iv(s: &[Symbol]) -> bool {
        count(s, 2) >= 2
            && (strip(s, &[], &[1, 2]).is_some_and(|r| repeats(r, [either(1, 2), one(0)], 1))
                || strip(s, &[], &[0, 1, 2]).is_some_and(|r| repeats(r, [one(0), either(1, 2)], 1)))
    }

    /// `(01)^*0212` or `(10)^+212`.
    pub(crate) fn type_v(s: &[Symbol]) -> bool {
        strip(s, &[], &[0, 2, 1, 2]).is_some_and(|r| repeats(r, [one(0), one(1)], 0))
            || strip(s, &[], &[2, 1, 2]).is_some_and(|r| repeats(r, [one(1), one(0)], 1))
    }

    /// `1(20)^+1(20)^*2` or `0(21)^+0(21)^*2`.
    pub(crate) fn type_vi(s: &[Symbol]) -> bool {
        strip(s, &[1], &[2]).is_some_and(|m| split_repeats(m, [one(2), one(0)], 1, 1, 0))
            || strip(s, &[0], &[2]).is_some_and(|m| split_repeats(m, [one(2), one(1)], 0, 1, 0))
    }

    /// `1(02)^+1(02)^+`.
    pub(crate) fn type_vii(s: &[Symbol]) -> bool {
        strip(s, &[1], &[]).is_some_and(|m| split_repeats(m, [one(0), one(2)], 1, 1, 1))
    }

    /// `1(02)^+12`.
    pub(crate) fn type_viii(s: &[Symbol]) -> bool {
        strip(s, &[1], &[1, 2]).is_some_and(|m| repeats(m, [one(0), one(2)], 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn repeats_counts_units() {
        let unit = [one(1), one(2)];
        assert!(repeats(&v(""), unit, 0));
        assert!(!repeats(&v(""), unit, 1));
        assert!(repeats(&v("1212"), unit, 2));
        assert!(!repeats(&v("121"), unit, 1));
        assert!(!repeats(&v("1221"), unit, 1));
        assert!(repeats(&v("0212"), [either(0, 1), one(2)], 2));
    }

    #[test]
    fn grouping_families() {
        use grouping::*;
        assert!(type_i(&v("01212")));
        assert!(type_i(&v("0212")));
        assert!(type_i(&v("021212")));
        assert!(!type_i(&v("012")));
        assert!(!type_i(&v("0121")));

        assert!(type_ii(&v("0212")));
        assert!(type_ii(&v("1202")));
        assert!(type_ii(&v("20212")));
        assert!(!type_ii(&v("2012")));

        assert!(type_iii(&v("0210212")));
        assert!(type_iii(&v("021021212")));
        assert!(type_iii(&v("021210212")));
        assert!(type_iii(&v("02102")));
        assert!(!type_iii(&v("021012")));
        assert!(!type_iii(&v("0212")));
    }

    #[test]
    fn sorting_families() {
        use sorting::*;
        assert!(type_i(&v("01212")));
        assert!(!type_i(&v("0212")));

        assert!(type_ii(&v("0212")));
        assert!(type_ii(&v("21202")));
        assert!(!type_ii(&v("2102")));

        assert!(type_iii(&v("102")));
        assert!(type_iii(&v("20102")));
        assert!(type_iii(&v("0102")));
        assert!(type_iii(&v("010202")));
        assert!(!type_iii(&v("012")));

        assert!(type_iv(&v("2012")));
        assert!(type_iv(&v("201012")));
        assert!(type_iv(&v("02012")));
        assert!(!type_iv(&v("1012")));
        assert!(!type_iv(&v("01012")));

        assert!(type_v(&v("0212")));
        assert!(type_v(&v("010212")));
        assert!(type_v(&v("10212")));
        assert!(!type_v(&v("212")));

        assert!(type_vi(&v("12012")));
        assert!(type_vi(&v("1201202")));
        assert!(type_vi(&v("02102")));
        assert!(type_vi(&v("0210212")));
        assert!(!type_vi(&v("1202")));

        assert!(type_vii(&v("102102")));
        assert!(type_vii(&v("10202102")));
        assert!(!type_vii(&v("10210")));

        assert!(type_viii(&v("10212")));
        assert!(type_viii(&v("1020212")));
        assert!(!type_viii(&v("112")));
    }
}
