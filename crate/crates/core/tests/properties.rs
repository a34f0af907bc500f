use flipstr::classify::{self, Classifier};
use flipstr::oracle::{pair_distance_bfs, sorting_distance_bfs, SearchBudget};
use flipstr::{flip_norm, flip_raw, parents, Flip, NormalizedString, RawString, Symbol};
use proptest::prelude::*;

const PERMUTATIONS: [[Symbol; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn normalized(k: u8, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = NormalizedString> {
    (proptest::collection::vec(0..k, len), 0..k).prop_map(move |(steps, first)| {
        let mut v = vec![first];
        for step in steps.into_iter().skip(1) {
            let prev = *v.last().unwrap();
            v.push((prev + 1 + step % (k - 1)) % k);
        }
        NormalizedString::new(v).unwrap()
    })
}

fn ternary(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = NormalizedString> {
    normalized(3, len).prop_filter("fully ternary", |s| s.is_fully_kary() && s.arity() == 3)
}

fn raw(k: u8, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RawString> {
    proptest::collection::vec(0..k, len).prop_map(RawString::new)
}

proptest! {
    #[test]
    fn raw_flip_is_an_involution(s in raw(4, 1..=20), i in 1usize..=20) {
        let i = 1 + (i - 1) % s.len();
        let f = Flip::new(i).unwrap();
        prop_assert_eq!(flip_raw(&flip_raw(&s, f).unwrap(), f).unwrap(), s);
    }

    #[test]
    fn normalized_flip_commutes_with_normalization(s in raw(4, 1..=20), i in 1usize..=20) {
        let n = s.normalize();
        let i = 1 + (i - 1) % n.len();
        let f = Flip::new(i).unwrap();
        let lifted: usize = {
            // raw prefix covering the first i runs
            let mut runs = 0;
            let mut len = 0;
            for (j, &c) in s.symbols().iter().enumerate() {
                if j == 0 || c != s.symbols()[j - 1] {
                    runs += 1;
                    if runs > i {
                        break;
                    }
                }
                len += 1;
            }
            len
        };
        let (child, _) = flip_norm(&n, f).unwrap();
        prop_assert_eq!(child, flip_raw(&s, Flip::new(lifted).unwrap()).unwrap().normalize());
    }

    #[test]
    fn parents_and_children_are_dual(s in normalized(3, 1..=8)) {
        for p in parents(&s) {
            prop_assert!(p.one_flip_children().iter().any(|(_, c)| *c == s), "{} not a child of {}", s, p);
        }
        for (_, c) in s.one_flip_children() {
            prop_assert!(parents(&c).contains(&s), "{} not a parent of {}", s, c);
        }
    }

    #[test]
    fn grouping_is_relabel_invariant(s in ternary(3..=30)) {
        let class = classify::grouping_class(&s).unwrap();
        for map in PERMUTATIONS {
            let t = s.relabel(&map);
            prop_assert_eq!(classify::grouping_class(&t).unwrap(), class, "{} vs {}", s, t);
        }
    }

    #[test]
    fn appending_two_keeps_sorting_distance(s in ternary(3..=30)) {
        prop_assume!(s.last() != Some(2));
        let extended = NormalizedString::new([s.symbols(), &[2]].concat()).unwrap();
        prop_assert_eq!(
            classify::sorting_distance(&s).unwrap(),
            classify::sorting_distance(&extended).unwrap()
        );
    }

    #[test]
    fn appending_two_matches_oracle(s in ternary(3..=9)) {
        prop_assume!(s.last() != Some(2));
        let budget = SearchBudget::default();
        let extended = NormalizedString::new([s.symbols(), &[2]].concat()).unwrap();
        prop_assert_eq!(
            sorting_distance_bfs(&s, &budget).unwrap().0,
            sorting_distance_bfs(&extended, &budget).unwrap().0
        );
    }

    #[test]
    fn exception_index_is_the_relabel_minimum(i in 0usize..8, map in 0usize..6) {
        let c = Classifier::standard();
        let x = NormalizedString::new(c.grouping_exceptions()[i].clone()).unwrap();
        let relabeled = x.relabel(&PERMUTATIONS[map]);
        let class = classify::grouping_class(&relabeled).unwrap();
        let expected = (0..8)
            .find(|&j| {
                let y = NormalizedString::new(c.grouping_exceptions()[j].clone()).unwrap();
                PERMUTATIONS.iter().any(|m| y.relabel(m) == relabeled)
            })
            .unwrap();
        prop_assert_eq!(class, classify::GroupingClass::BadTypeIV(expected as u8 + 1));
    }

    #[test]
    fn closed_forms_sit_between_bounds(s in ternary(3..=40)) {
        let n = s.len();
        let dg = classify::grouping_distance(&s).unwrap();
        let ds = classify::sorting_distance(&s).unwrap();
        prop_assert!(dg + 3 == n || dg + 2 == n);
        prop_assert!(ds >= dg);
        prop_assert!(ds <= n);
    }
}

fn compatible_triple() -> impl Strategy<Value = (RawString, RawString, RawString)> {
    raw(3, 2..=7).prop_flat_map(|s| {
        let v = s.symbols().to_vec();
        (Just(s), Just(v.clone()).prop_shuffle(), Just(v).prop_shuffle())
            .prop_map(|(s, t, u)| (s, RawString::new(t), RawString::new(u)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pair_distance_is_a_metric((s, t, u) in compatible_triple()) {
        let b = SearchBudget::default();
        let st = pair_distance_bfs(&s, &t, &b).unwrap();
        prop_assert_eq!(st, pair_distance_bfs(&t, &s, &b).unwrap());
        let tu = pair_distance_bfs(&t, &u, &b).unwrap();
        let su = pair_distance_bfs(&s, &u, &b).unwrap();
        prop_assert!(su <= st + tu);
        prop_assert_eq!(st == 0, s == t);
    }
}
