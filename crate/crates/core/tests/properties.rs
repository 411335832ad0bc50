//! Randomized checks on small presentations.

use flipcount::counting::{count_levels, Count};
use flipcount::krieger::{ChainKind, DEFAULT_MONOID_CAP};
use flipcount::oracle::{signed_subset_check, oracle_flip_fixed, oracle_periodic};
use flipcount::presentations::{periodic_word_test, Edge, FlipSpec, LabeledGraph};
use flipcount::signed_subsets::Levels;
use flipcount::system::System;
use flipcount::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn graph(n: usize, edges: &[(usize, usize, usize)]) -> Result<LabeledGraph, Error> {
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    edges.dedup();
    let edges = edges.iter().map(|&(source, label, target)| Edge { source, label, target }).collect();
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    LabeledGraph::from_parts(vertices, vec!["0".into(), "1".into()], edges)?.trim_essential()
}

/// Random edges on top of a cycle through every vertex, so the shift is
/// never empty.
fn edges(n: usize) -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    (prop::collection::vec(0..2usize, n), prop::collection::vec((0..n, 0..2usize, 0..n), 0..=2 * n)).prop_map(
        move |(cycle, mut extra)| {
            extra.extend(cycle.iter().enumerate().map(|(i, &a)| (i, a, (i + 1) % n)));
            extra
        },
    )
}

fn words(len: usize) -> Vec<Vec<usize>> {
    (0..1usize << len).map(|bits| (0..len).map(|i| bits >> i & 1).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factor_dfa_accepts_exactly_path_labels(e in edges(3)) {
        let g = graph(3, &e).unwrap();
        let dfa = g.factor_dfa();
        for len in 0..=6 {
            for w in words(len) {
                let has_path = g.image_word(&g.full_set(), &w).count_ones(..) > 0;
                prop_assert_eq!(dfa.accepts(&w), has_path, "{:?}", w);
            }
        }
    }

    #[test]
    fn periodic_words_are_bounded_powers(e in edges(3)) {
        let g = graph(3, &e).unwrap();
        let dfa = g.factor_dfa();
        for len in 1..=4 {
            for w in words(len) {
                let power: Vec<usize> = w.iter().copied().cycle().take(w.len() << g.num_vertices()).collect();
                prop_assert_eq!(periodic_word_test(&g, &w).unwrap(), dfa.accepts(&power));
            }
        }
    }

    #[test]
    fn symmetric_presentations_match_the_oracle(e in edges(3)) {
        // G together with its reversal carries the reversal flip
        let mut both = e.clone();
        both.extend(e.iter().map(|&(s, a, t)| (t, a, s)));
        let g = graph(3, &both).unwrap();
        let sys = System { name: "random".into(), flip: FlipSpec::identity(2), graph: g, sft: None };
        let chain = sys.build_chain(ChainKind::Joint, DEFAULT_MONOID_CAP).unwrap();
        // level k ranges over k-subsets of a fiber
        prop_assume!(chain.fiber_sizes().into_iter().max().unwrap() <= 10);
        let levels = Levels::build(&chain);
        for n in 1..=6 {
            prop_assert_eq!(
                count_levels(&levels, Count::Periodic(n)).unwrap(),
                BigInt::from(oracle_periodic(&sys.graph, n))
            );
            for delta in 0..=1u8 {
                prop_assert_eq!(
                    count_levels(&levels, Count::FlipFixed { period: n, delta }).unwrap(),
                    BigInt::from(oracle_flip_fixed(&sys, n, delta as i64))
                );
            }
        }
    }

    #[test]
    fn lemma_holds_for_any_seed(seed in any::<u64>()) {
        prop_assert!(signed_subset_check(20, 8, seed).unwrap());
    }
}

