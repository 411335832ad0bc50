//! Matrix-formula counts against brute-force enumeration.

use std::collections::BTreeMap;

use flipcount::counting::{count_sft, count_levels, reduce_index, Count, CountTable};
use flipcount::krieger::{build_joint_chain, ChainKind, DEFAULT_MONOID_CAP};
use flipcount::oracle::{
    is_flip_fixed, lift_flip_fixed, oracle_flip_fixed, oracle_periodic, periodic_words, CorpusSystem,
};
use flipcount::presentations::{one_block_recode, FlipSpec};
use flipcount::signed_subsets::Levels;
use flipcount::system::System;
use num_bigint::BigInt;

fn levels_of(sys: &System) -> Levels {
    Levels::build(&sys.build_chain(ChainKind::Joint, DEFAULT_MONOID_CAP).unwrap())
}

#[test]
fn level_counts_match_oracle_on_corpus() {
    for c in CorpusSystem::ALL {
        let sys = c.system();
        let levels = levels_of(&sys);
        for n in 1..=8 {
            let p = count_levels(&levels, Count::Periodic(n)).unwrap();
            assert_eq!(p, BigInt::from(oracle_periodic(&sys.graph, n)), "{c:?} p_{n}");
            for delta in 0..=1u8 {
                let got = count_levels(&levels, Count::FlipFixed { period: n, delta }).unwrap();
                let want = oracle_flip_fixed(&sys, n, delta as i64);
                assert_eq!(got, BigInt::from(want), "{c:?} p_{{{n},{delta}}}");
            }
        }
    }
}

#[test]
fn sft_counts_match_level_counts() {
    for c in [CorpusSystem::Golden, CorpusSystem::Full2Swap, CorpusSystem::Full1] {
        let sys = c.system();
        let a = sys.sft.as_ref().unwrap().entries().map(|&x| BigInt::from(x));
        let j = sys.sft_flip_matrix().unwrap().map(|&x| BigInt::from(x));
        let levels = levels_of(&sys);
        assert_eq!(
            CountTable::from_sft(&a, &j, 8).unwrap().rows,
            CountTable::from_levels(&levels, 8).unwrap().rows,
            "{c:?}"
        );
        for n in 1..=8 {
            let odd_or_even = Count::FlipFixed { period: n, delta: 1 };
            assert_eq!(count_sft(&a, &j, odd_or_even).unwrap(), count_levels(&levels, odd_or_even).unwrap());
        }
    }
}

#[test]
fn counts_are_non_negative_and_parity_reduced() {
    for c in CorpusSystem::ALL {
        let levels = levels_of(&c.system());
        for m in 1..=6usize {
            for n in -4i64..=4 {
                let (period, delta) = reduce_index(m, n);
                let v = count_levels(&levels, Count::FlipFixed { period, delta }).unwrap();
                assert!(v >= BigInt::from(0));
            }
        }
    }
}

/// Golden-mean shift with the flip `φ = σ ∘ reversal`, given by a window.
fn golden_shifted_reversal() -> System {
    let mut sys = CorpusSystem::Golden.system();
    let table: BTreeMap<Vec<usize>, usize> =
        sys.graph.factor_dfa().blocks(3).into_iter().map(|w| (w.clone(), w[2])).collect();
    sys.flip = FlipSpec::SlidingBlock { radius: 1, table };
    sys
}

/// Full 2-shift with the flip `φ(x)_i = 1 - x_{-i}`, given by a window of
/// radius 0.
fn full2_complement() -> System {
    let mut sys = CorpusSystem::Full2Swap.system();
    sys.flip = FlipSpec::SlidingBlock { radius: 0, table: [(vec![0], 1), (vec![1], 0)].into() };
    sys
}

#[test]
fn sliding_block_flips_through_recoding() {
    for sys in [golden_shifted_reversal(), full2_complement()] {
        let levels = levels_of(&sys);
        for n in 1..=6 {
            assert_eq!(
                count_levels(&levels, Count::Periodic(n)).unwrap(),
                BigInt::from(oracle_periodic(&sys.graph, n))
            );
            for delta in 0..=1u8 {
                assert_eq!(
                    count_levels(&levels, Count::FlipFixed { period: n, delta }).unwrap(),
                    BigInt::from(oracle_flip_fixed(&sys, n, delta as i64)),
                    "{} N={n} δ={delta}",
                    sys.name
                );
            }
        }
    }
}

#[test]
fn recoding_preserves_oracle_counts() {
    for sys in [golden_shifted_reversal(), full2_complement()] {
        let r = one_block_recode(&sys.graph, &sys.flip).unwrap();
        let recoded = System {
            name: format!("{}-recoded", sys.name),
            graph: r.graph,
            flip: FlipSpec::OneBlock { tau: r.tau },
            sft: None,
        };
        for n in 1..=6 {
            assert_eq!(oracle_periodic(&sys.graph, n), oracle_periodic(&recoded.graph, n));
            for delta in 0..=1 {
                assert_eq!(oracle_flip_fixed(&sys, n, delta), oracle_flip_fixed(&recoded, n, delta));
            }
        }
    }
}

#[test]
fn one_block_recode_of_corpus_keeps_counts() {
    for c in CorpusSystem::ALL {
        let sys = c.system();
        let r = one_block_recode(&sys.graph, &sys.flip).unwrap();
        let recoded = System {
            name: sys.name.clone(),
            graph: r.graph,
            flip: FlipSpec::OneBlock { tau: r.tau },
            sft: None,
        };
        for n in 1..=6 {
            assert_eq!(oracle_periodic(&sys.graph, n), oracle_periodic(&recoded.graph, n));
            for delta in 0..=1 {
                assert_eq!(oracle_flip_fixed(&sys, n, delta), oracle_flip_fixed(&recoded, n, delta));
            }
        }
    }
}

#[test]
fn flip_fixed_points_lift_to_the_joint_chain() {
    for c in CorpusSystem::ALL {
        let sys = c.system();
        let FlipSpec::OneBlock { tau } = &sys.flip else { unreachable!() };
        let chain = build_joint_chain(&sys.graph, tau).unwrap();
        for n in 1..=6 {
            for delta in 0..=1i64 {
                for w in periodic_words(&sys.graph, n) {
                    if !is_flip_fixed(&sys.flip, &w, delta) {
                        continue;
                    }
                    let y = lift_flip_fixed(&chain.labels, &chain.a, &chain.star, &w, delta);
                    let y = y.unwrap_or_else(|| panic!("{c:?}: no lift of {w:?} at δ={delta}"));
                    let labels: Vec<usize> = y.iter().map(|&s| chain.labels[s]).collect();
                    assert_eq!(labels, w.iter().copied().cycle().take(y.len()).collect::<Vec<_>>());
                }
            }
        }
    }
}
