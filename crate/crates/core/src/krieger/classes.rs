//! Futures `Ξ₊` and pasts `Ξ₋` of a presented sofic shift.
//!
//! The future of a left ray `λ` is the follower language of the stabilized
//! vertex set reached by `λ`. Every such set has the form `e(V)·u`, where
//! `e` is an idempotent of the boolean relation monoid generated by the
//! per-symbol edge relations, so the futures are found by closing the
//! monoid, collecting idempotent images and closing forward under single
//! symbols. Sets are then identified by their (canonical, minimal) follower
//! automata.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::presentations::LabeledGraph;
use crate::Word;

/// Default bound on the size of the relation monoid.
pub const DEFAULT_MONOID_CAP: usize = 1_000_000;

/// A left ray `···ccc·u` (or, for pasts, the mirror right ray read on the
/// reversed presentation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayWitness {
    pub cycle: Word,
    pub tail: Word,
}

/// One future (on the presentation) or past (on the reversed presentation).
#[derive(Clone, Debug)]
pub struct FollowerClass {
    pub id: usize,
    /// Vertices of the presentation the class was computed on.
    pub rep: FixedBitSet,
    /// Follower automaton of `rep`, read in the direction of computation.
    pub follower: Dfa,
    /// The language in natural left-to-right order: equal to `follower`
    /// for futures, its reversal for pasts.
    pub language: Dfa,
    pub witness: RayWitness,
}

pub type FutureClass = FollowerClass;
pub type PastClass = FollowerClass;

/// A boolean relation on vertices: row `i` is the set of images of `i`.
type Relation = Vec<FixedBitSet>;

fn compose(r: &Relation, s: &Relation) -> Relation {
    r.iter()
        .map(|row| {
            let mut out = FixedBitSet::with_capacity(s.len());
            for j in row.ones() {
                out.union_with(&s[j]);
            }
            out
        })
        .collect()
}

fn image_of_all(r: &Relation, n: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n);
    for row in r {
        out.union_with(row);
    }
    out
}

fn symbol_relations(graph: &LabeledGraph) -> Vec<Relation> {
    let n = graph.num_vertices();
    let mut rel = vec![vec![FixedBitSet::with_capacity(n); n]; graph.num_symbols()];
    for e in graph.edges() {
        rel[e.label][e.source].insert(e.target);
    }
    rel
}

/// Futures of the shift presented by `graph` (essential), in discovery
/// order. Pasts are the futures of `graph.reversed()`.
pub fn compute_future_classes(graph: &LabeledGraph, cap: usize) -> Result<Vec<FutureClass>> {
    let n = graph.num_vertices();
    let generators = symbol_relations(graph);

    // breadth-first closure of the monoid, remembering a shortest word
    let mut index: HashMap<Relation, usize> = HashMap::new();
    let mut elements: Vec<(Relation, Word)> = Vec::new();
    let mut queue = VecDeque::new();
    for (a, g) in generators.iter().enumerate() {
        if !index.contains_key(g) {
            index.insert(g.clone(), elements.len());
            elements.push((g.clone(), vec![a]));
            queue.push_back(elements.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for (a, g) in generators.iter().enumerate() {
            let next = compose(&elements[i].0, g);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::MonoidBlowup { cap });
            }
            let mut word = elements[i].1.clone();
            word.push(a);
            index.insert(next.clone(), elements.len());
            elements.push((next, word));
            queue.push_back(elements.len() - 1);
        }
    }

    // Λ: nonempty images of idempotents, then the forward closure
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    let mut sets: Vec<(FixedBitSet, RayWitness)> = Vec::new();
    for (e, word) in &elements {
        if compose(e, e) == *e {
            let img = image_of_all(e, n);
            if !img.is_clear() && seen.insert(img.clone(), ()).is_none() {
                sets.push((img, RayWitness { cycle: word.clone(), tail: Vec::new() }));
            }
        }
    }
    let mut i = 0;
    while i < sets.len() {
        for a in 0..graph.num_symbols() {
            let next = graph.image(&sets[i].0, a);
            if !next.is_clear() && seen.insert(next.clone(), ()).is_none() {
                let mut w = sets[i].1.clone();
                w.tail.push(a);
                sets.push((next, w));
            }
        }
        i += 1;
    }

    // deduplicate by language
    let mut by_language: HashMap<Dfa, usize> = HashMap::new();
    let mut classes = Vec::new();
    for (rep, witness) in sets {
        let follower = graph.follower_dfa(&rep);
        if by_language.contains_key(&follower) {
            continue;
        }
        by_language.insert(follower.clone(), classes.len());
        classes.push(FollowerClass {
            id: classes.len(),
            rep,
            language: follower.clone(),
            follower,
            witness,
        });
    }
    Ok(classes)
}

/// Pasts, computed as futures of the reversed presentation.
pub fn compute_past_classes(graph: &LabeledGraph, cap: usize) -> Result<Vec<PastClass>> {
    let mut classes = compute_future_classes(&graph.reversed(), cap)?;
    for c in &mut classes {
        c.language = c.follower.reverse();
    }
    Ok(classes)
}

/// Vertex set reached from all vertices by following `witness`, i.e. the
/// stabilized `c`-image of the full set followed by `u`. Empty when the ray
/// does not occur.
pub fn witness_set(graph: &LabeledGraph, witness: &RayWitness) -> FixedBitSet {
    let mut set = graph.full_set();
    loop {
        let next = graph.image_word(&set, &witness.cycle);
        if next == set {
            break;
        }
        set = next;
    }
    graph.image_word(&set, &witness.tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::CorpusSystem;

    fn names(g: &LabeledGraph, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|v| g.vertices()[v].clone()).collect()
    }

    #[test]
    fn even_shift_has_three_futures() {
        let g = CorpusSystem::Even.system().graph;
        let futures = compute_future_classes(&g, DEFAULT_MONOID_CAP).unwrap();
        let mut reps: Vec<Vec<String>> = futures.iter().map(|c| names(&g, &c.rep)).collect();
        reps.sort();
        assert_eq!(reps, vec![vec!["p".to_string()], vec!["p".into(), "q".into()], vec!["q".into()]]);
        assert_eq!(compute_past_classes(&g, DEFAULT_MONOID_CAP).unwrap().len(), 3);
    }

    #[test]
    fn small_corpus_class_counts() {
        let count = |c: CorpusSystem| {
            let g = c.system().graph;
            (
                compute_future_classes(&g, DEFAULT_MONOID_CAP).unwrap().len(),
                compute_past_classes(&g, DEFAULT_MONOID_CAP).unwrap().len(),
            )
        };
        assert_eq!(count(CorpusSystem::Full1), (1, 1));
        assert_eq!(count(CorpusSystem::Golden), (2, 2));
        assert_eq!(count(CorpusSystem::Full2Swap), (1, 1));
    }

    #[test]
    fn witnesses_realize_their_class() {
        for sys in CorpusSystem::ALL {
            let g = sys.system().graph;
            for (graph, classes) in [
                (g.clone(), compute_future_classes(&g, DEFAULT_MONOID_CAP).unwrap()),
                (g.reversed(), compute_past_classes(&g, DEFAULT_MONOID_CAP).unwrap()),
            ] {
                for c in classes {
                    let mut stable = graph.full_set();
                    loop {
                        let next = graph.image_word(&stable, &c.witness.cycle);
                        if next == stable {
                            break;
                        }
                        stable = next;
                    }
                    assert!(!stable.is_clear());
                    assert_eq!(graph.image_word(&stable, &c.witness.cycle), stable);
                    let set = witness_set(&graph, &c.witness);
                    assert_eq!(graph.follower_dfa(&set), c.follower, "{sys:?}");
                }
            }
        }
    }

    #[test]
    fn monoid_cap_is_enforced() {
        let g = CorpusSystem::Even.system().graph;
        assert_eq!(compute_future_classes(&g, 2).unwrap_err(), Error::MonoidBlowup { cap: 2 });
    }
}
