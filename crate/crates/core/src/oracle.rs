//! Brute-force ground truth.
//!
//! Nothing here touches the joint state chain or the level matrices: counts
//! come from enumerating periodic words directly on the presentation, so
//! they can be compared against [`crate::counting`] as an independent route.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use fixedbitset::FixedBitSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentations::{periodic_word_test, FlipSpec, LabeledGraph, SftMatrix};
use crate::system::System;
use crate::Word;

/// Built-in flip systems used throughout the test suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusSystem {
    /// Even shift, `τ = id`.
    Even,
    /// Golden-mean vertex shift labeled by source vertex, `τ = id`.
    Golden,
    /// Full 2-shift, `τ` swapping `0 ↔ 1`.
    Full2Swap,
    /// One self-loop, `τ = id`.
    Full1,
}

impl CorpusSystem {
    pub const ALL: [CorpusSystem; 4] =
        [CorpusSystem::Even, CorpusSystem::Golden, CorpusSystem::Full2Swap, CorpusSystem::Full1];

    pub fn name(self) -> &'static str {
        match self {
            CorpusSystem::Even => "even",
            CorpusSystem::Golden => "golden",
            CorpusSystem::Full2Swap => "full2swap",
            CorpusSystem::Full1 => "full1",
        }
    }

    pub fn system(self) -> System {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let (graph, tau) = match self {
            CorpusSystem::Even => (
                LabeledGraph::new(
                    s(&["p", "q"]),
                    s(&["0", "1"]),
                    &[("p", "1", "p"), ("p", "0", "q"), ("q", "0", "p")],
                ),
                vec![0, 1],
            ),
            CorpusSystem::Golden => (
                LabeledGraph::new(
                    s(&["a", "b"]),
                    s(&["a", "b"]),
                    &[("a", "a", "a"), ("a", "a", "b"), ("b", "b", "a")],
                ),
                vec![0, 1],
            ),
            CorpusSystem::Full2Swap => (
                LabeledGraph::new(s(&["v"]), s(&["0", "1"]), &[("v", "0", "v"), ("v", "1", "v")]),
                vec![1, 0],
            ),
            CorpusSystem::Full1 => {
                (LabeledGraph::new(s(&["v"]), s(&["0"]), &[("v", "0", "v")]), vec![0])
            }
        };
        System {
            name: self.name().to_string(),
            graph: graph.expect("corpus graph is valid"),
            flip: FlipSpec::OneBlock { tau },
            sft: self.sft(),
        }
    }

    /// The defining matrix, for the systems that are vertex shifts.
    pub fn sft(self) -> Option<SftMatrix> {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let (states, rows) = match self {
            CorpusSystem::Golden => (s(&["a", "b"]), vec![vec![1, 1], vec![1, 0]]),
            CorpusSystem::Full2Swap => (s(&["0", "1"]), vec![vec![1, 1], vec![1, 1]]),
            CorpusSystem::Full1 => (s(&["0"]), vec![vec![1]]),
            CorpusSystem::Even => return None,
        };
        Some(SftMatrix::new(states, Matrix::from_rows(rows)).expect("corpus matrix is valid"))
    }
}

/// Length-`m` blocks `w` with `w^∞ ∈ X`: the points fixed by `σ^m`.
pub fn periodic_words(graph: &LabeledGraph, m: usize) -> Vec<Word> {
    assert!(m >= 1);
    graph
        .factor_dfa()
        .blocks(m)
        .into_iter()
        .filter(|w| periodic_word_test(graph, w).expect("blocks use alphabet symbols"))
        .collect()
}

/// `p_m(σ_X)` by enumeration.
pub fn oracle_periodic(graph: &LabeledGraph, m: usize) -> u64 {
    periodic_words(graph, m).len() as u64
}

/// Whether `x = w^∞` satisfies `σ^δ φ(x) = x`, i.e. `x_i = φ(x)_{i+δ}`.
pub fn is_flip_fixed(flip: &FlipSpec, w: &[usize], delta: i64) -> bool {
    let n = w.len() as i64;
    match flip.apply_periodic(w) {
        Some(image) => {
            (0..n).all(|i| w[i as usize] == image[(i + delta).rem_euclid(n) as usize])
        }
        None => false,
    }
}

/// `p_{N,δ}(σ_X, φ)` by enumeration of period-`N` words.
pub fn oracle_flip_fixed(system: &System, period: usize, delta: i64) -> u64 {
    periodic_words(&system.graph, period)
        .iter()
        .filter(|w| is_flip_fixed(&system.flip, w, delta))
        .count() as u64
}

/// Period-`n` points of the vertex shift `X_A`, as state words.
pub fn vertex_shift_cycles(a: &Matrix<i64>, n: usize) -> Vec<Word> {
    fn extend(a: &Matrix<i64>, n: usize, y: &mut Word, out: &mut Vec<Word>) {
        if y.len() == n {
            if a[(y[n - 1], y[0])] != 0 {
                out.push(y.clone());
            }
            return;
        }
        let states: Vec<usize> = match y.last() {
            None => (0..a.rows()).collect(),
            Some(&s) => (0..a.rows()).filter(|&t| a[(s, t)] != 0).collect(),
        };
        for t in states {
            y.push(t);
            extend(a, n, y, out);
            y.pop();
        }
    }
    let mut out = Vec::new();
    extend(a, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Points `y` of `X_A` with `σ^n(y) = y` and `σ^δ φ_J(y) = y`, where
/// `φ_J(y)_i = star(y_{-i})`.
pub fn vertex_shift_flip_fixed(a: &Matrix<i64>, star: &[usize], n: usize, delta: i64) -> u64 {
    let len = n as i64;
    vertex_shift_cycles(a, n)
        .iter()
        .filter(|y| (0..len).all(|i| y[i as usize] == star[y[(-i - delta).rem_euclid(len) as usize]]))
        .count() as u64
}

/// Searches the fiber of `w^∞` in the vertex-labeled chain `(labels, A)` for
/// a point `y` with `σ^δ φ_J(y) = y`. Returns one period of `y`.
pub fn lift_flip_fixed(
    labels: &[usize],
    a: &Matrix<i64>,
    star: &[usize],
    w: &[usize],
    delta: i64,
) -> Option<Word> {
    let n = w.len();
    let states = labels.len();
    // one labeled path of length n from s to each reachable s'
    let mut step: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    for s in (0..states).filter(|&s| labels[s] == w[0]) {
        let mut stack = vec![vec![s]];
        while let Some(p) = stack.pop() {
            let last = *p.last().unwrap();
            let want = w[p.len() % n];
            for t in (0..states).filter(|&t| a[(last, t)] != 0 && labels[t] == want) {
                if p.len() == n {
                    step.entry((s, t)).or_insert_with(|| p.clone());
                } else {
                    let mut q = p.clone();
                    q.push(t);
                    stack.push(q);
                }
            }
        }
    }
    let succ = |s: usize| step.range((s, 0)..(s + 1, 0)).map(|(&(_, t), _)| t).collect::<Vec<_>>();
    // simple cycles of the step relation through each start
    for s in 0..states {
        let mut stack: Vec<Vec<usize>> = vec![vec![s]];
        while let Some(cycle) = stack.pop() {
            for t in succ(*cycle.last().unwrap()) {
                if t == s {
                    let y: Word = cycle
                        .iter()
                        .zip(cycle.iter().skip(1).chain(std::iter::once(&s)))
                        .flat_map(|(&u, &v)| step[&(u, v)].clone())
                        .collect();
                    let len = y.len() as i64;
                    if (0..len)
                        .all(|i| y[i as usize] == star[y[(-i - delta).rem_euclid(len) as usize]])
                    {
                        return Some(y);
                    }
                } else if !cycle.contains(&t) && t > s {
                    let mut c = cycle.clone();
                    c.push(t);
                    stack.push(c);
                }
            }
        }
    }
    None
}

/// Follower languages of the eventually periodic left rays `···ccc·u` with
/// `1 ≤ |c| ≤ max_cycle` and `|u| ≤ max_tail`.
///
/// On small presentations this recovers every future, independently of the
/// relation-monoid construction.
pub fn sampled_future_languages(
    graph: &LabeledGraph,
    max_cycle: usize,
    max_tail: usize,
) -> HashSet<Dfa> {
    let words = |max: usize, min: usize| {
        let mut all = Vec::new();
        let mut layer: Vec<Word> = vec![Vec::new()];
        for len in 0..=max {
            if len >= min {
                all.extend(layer.iter().cloned());
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..graph.num_symbols()).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        all
    };
    let mut stable_sets: HashSet<FixedBitSet> = HashSet::new();
    for c in words(max_cycle, 1) {
        let mut set = graph.full_set();
        loop {
            let next = graph.image_word(&set, &c);
            if next == set {
                break;
            }
            set = next;
        }
        if !set.is_clear() {
            stable_sets.insert(set);
        }
    }
    let mut reached: HashSet<FixedBitSet> = HashSet::new();
    for set in &stable_sets {
        for u in words(max_tail, 0) {
            let end = graph.image_word(set, &u);
            if !end.is_clear() {
                reached.insert(end);
            }
        }
    }
    reached.iter().map(|s| graph.follower_dfa(s)).collect()
}

/// Sign of a permutation given as an image vector, restricted to `set`
/// (which must be invariant).
fn restricted_sign(perm: &[usize], set: u64) -> i64 {
    let mut seen = 0u64;
    let mut sign = 1;
    for start in 0..perm.len() {
        if set >> start & 1 == 0 || seen >> start & 1 == 1 {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while seen >> x & 1 == 0 {
            seen |= 1 << x;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `Σ_{E ∈ family, E ≠ ∅} (-1)^{|E|+1} sgn(π|_E)` over subsets given as
/// bit masks.
pub fn lemma_signed_sum(perm: &[usize], family: &BTreeSet<u64>) -> i64 {
    family
        .iter()
        .filter(|&&e| e != 0)
        .map(|&e| {
            let size = e.count_ones() as i64;
            let parity = if size % 2 == 1 { 1 } else { -1 };
            parity * restricted_sign(perm, e)
        })
        .sum()
}

fn is_invariant(perm: &[usize], set: u64) -> bool {
    (0..perm.len()).all(|x| set >> x & 1 == 0 || set >> perm[x] & 1 == 1)
}

/// Closes a family of sets under union and difference.
fn close_family(mut family: BTreeSet<u64>) -> BTreeSet<u64> {
    loop {
        let items: Vec<u64> = family.iter().copied().collect();
        let before = family.len();
        for &x in &items {
            for &y in &items {
                family.insert(x | y);
                family.insert(x & !y);
            }
        }
        if family.len() == before {
            return family;
        }
    }
}

/// One random instance: permutation, family and distinguished set `G`.
#[derive(Clone, Debug)]
pub struct LemmaInstance {
    pub perm: Vec<usize>,
    pub family: BTreeSet<u64>,
    pub g: u64,
}

impl LemmaInstance {
    /// Draws a permutation of at most `max_size` points, a nonempty union of
    /// its orbits as `G`, and the union/difference closure of all invariant
    /// subsets of `G` together with a few random invariant sets.
    pub fn random(rng: &mut impl Rng, max_size: usize) -> LemmaInstance {
        assert!((1..=63).contains(&max_size));
        let n = rng.gen_range(1..=max_size);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let orbits = orbits(&perm);
        let mut g = 0u64;
        while g == 0 {
            g = orbits.iter().filter(|_| rng.gen_bool(0.5)).fold(0, |acc, &o| acc | o);
        }
        let mut family: BTreeSet<u64> = subsets_of_orbits(&orbits, g);
        for _ in 0..rng.gen_range(0..=3) {
            let extra = orbits.iter().filter(|_| rng.gen_bool(0.5)).fold(0, |acc, &o| acc | o);
            family.insert(extra);
        }
        LemmaInstance { perm, family: close_family(family), g }
    }

    /// Checks the four hypotheses of the signed-sum identity.
    pub fn check_hypotheses(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::HypothesisConstructionFailure(what.to_string()));
        if !self.family.iter().all(|&e| is_invariant(&self.perm, e)) {
            return fail("family member not invariant");
        }
        for &x in &self.family {
            for &y in &self.family {
                if !self.family.contains(&(x | y)) || !self.family.contains(&(x & !y)) {
                    return fail("family not closed under union and difference");
                }
            }
        }
        if self.g == 0 || !is_invariant(&self.perm, self.g) {
            return fail("G empty or not invariant");
        }
        let g = self.g;
        let mut sub = g;
        loop {
            if is_invariant(&self.perm, sub) && !self.family.contains(&sub) {
                return fail("invariant subset of G missing from the family");
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & g;
        }
        Ok(())
    }

    pub fn signed_sum(&self) -> i64 {
        lemma_signed_sum(&self.perm, &self.family)
    }
}

fn orbits(perm: &[usize]) -> Vec<u64> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut orbit = 0u64;
        let mut x = start;
        while orbit >> x & 1 == 0 {
            orbit |= 1 << x;
            x = perm[x];
        }
        seen |= orbit;
        out.push(orbit);
    }
    out
}

fn subsets_of_orbits(orbits: &[u64], within: u64) -> BTreeSet<u64> {
    let inside: Vec<u64> = orbits.iter().copied().filter(|&o| o & within == o).collect();
    (0u64..1 << inside.len())
        .map(|mask| {
            inside.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |a, (_, &o)| a | o)
        })
        .collect()
}

/// Runs `trials` seeded random instances and checks that every signed sum is
/// exactly 1.
pub fn signed_subset_check(trials: usize, max_size: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let inst = LemmaInstance::random(&mut rng, max_size);
        inst.check_hypotheses()?;
        if inst.signed_sum() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(c: CorpusSystem) -> LabeledGraph {
        c.system().graph
    }

    #[test]
    fn even_periodic_examples() {
        let g = graph(CorpusSystem::Even);
        assert_eq!(oracle_periodic(&g, 1), 2);
        assert_eq!(oracle_periodic(&g, 3), 5);
        for m in 1..6 {
            assert_eq!(oracle_periodic(&graph(CorpusSystem::Full1), m), 1);
        }
    }

    #[test]
    fn even_periodic_counts_are_lucas_plus_sign() {
        let g = graph(CorpusSystem::Even);
        let (mut l0, mut l1) = (2i64, 1i64);
        for m in 1..=8 {
            let lucas = l1;
            (l0, l1) = (l1, l0 + l1);
            let sign = if m % 2 == 1 { 1 } else { -1 };
            assert_eq!(oracle_periodic(&g, m) as i64, lucas + sign, "m = {m}");
        }
    }

    #[test]
    fn flip_fixed_examples() {
        let even = CorpusSystem::Even.system();
        assert_eq!(oracle_flip_fixed(&even, 1, 0), 2);
        assert_eq!(oracle_flip_fixed(&even, 3, 0), 3);
        let swap = CorpusSystem::Full2Swap.system();
        assert_eq!(oracle_flip_fixed(&swap, 2, 1), 2);
    }

    #[test]
    fn flip_fixed_depends_only_on_reduced_index() {
        for c in CorpusSystem::ALL {
            let sys = c.system();
            for m in 1..=6usize {
                for n in -4i64..=4 {
                    let reduced = if m % 2 == 1 { 0 } else { n.rem_euclid(2) };
                    assert_eq!(
                        oracle_flip_fixed(&sys, m, n),
                        oracle_flip_fixed(&sys, m, reduced),
                        "{c:?} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn lemma_single_point() {
        let family: BTreeSet<u64> = [0, 1].into();
        assert_eq!(lemma_signed_sum(&[0], &family), 1);
    }

    #[test]
    fn lemma_transposition() {
        // only invariant subsets of {0,1} under the swap are ∅ and {0,1}
        let family: BTreeSet<u64> = [0, 0b11].into();
        assert_eq!(lemma_signed_sum(&[1, 0], &family), 1);
    }

    #[test]
    fn lemma_all_invariant_subsets() {
        let perm = [1, 2, 0, 4, 3, 5];
        let all = subsets_of_orbits(&orbits(&perm), 0b111111);
        assert_eq!(lemma_signed_sum(&perm, &all), 1);
    }

    #[test]
    fn random_instances_satisfy_hypotheses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            LemmaInstance::random(&mut rng, 8).check_hypotheses().unwrap();
        }
    }

    #[test]
    fn lemma_needs_nonempty_g() {
        // without G the sum over an invariant family can be 0: {∅, {0}, {1}, {0,1}}
        // under the identity gives 1 + 1 - 1 = 1, but {∅, {0,1}} under a swap
        // restricted to an outside family of just two fixed points differs
        let family: BTreeSet<u64> = [0, 0b01, 0b10, 0b11].into();
        assert_eq!(lemma_signed_sum(&[0, 1], &family), 1);
        let lonely: BTreeSet<u64> = [0].into();
        assert_eq!(lemma_signed_sum(&[0], &lonely), 0);
    }

    #[test]
    fn thousand_trials() {
        assert!(signed_subset_check(1000, 8, 2024).unwrap());
    }
}
