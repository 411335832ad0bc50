//! Complete deterministic automata over symbol indices `0..symbols`.
//!
//! Minimization renumbers states in breadth-first order from the initial
//! state (symbols visited in index order), so two minimized automata accept
//! the same language exactly when they are structurally equal. Every
//! language comparison in the crate goes through that identity.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    symbols: usize,
    delta: Vec<usize>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(symbols: usize, delta: Vec<usize>, initial: usize, accepting: Vec<bool>) -> Self {
        let n = accepting.len();
        assert_eq!(delta.len(), n * symbols, "transition table has the wrong size");
        assert!(initial < n && delta.iter().all(|&q| q < n), "state out of range");
        Dfa { symbols, delta, initial, accepting }
    }

    /// Subset construction. `step` maps a set of underlying states and a
    /// symbol to the successor set; `accept` decides acceptance of a set.
    /// Returns the automaton together with the set behind each state.
    pub fn determinize(
        symbols: usize,
        start: FixedBitSet,
        step: impl Fn(&FixedBitSet, usize) -> FixedBitSet,
        accept: impl Fn(&FixedBitSet) -> bool,
    ) -> (Dfa, Vec<FixedBitSet>) {
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for a in 0..symbols {
                let next = step(&sets[i], a);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        index.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = sets.iter().map(&accept).collect();
        (Dfa { symbols, delta, initial: 0, accepting }, sets)
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.symbols + a]
    }

    pub fn run_from(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run_from(self.initial, word)]
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> FixedBitSet {
        let n = self.num_states();
        let mut live = FixedBitSet::with_capacity(n);
        for q in 0..n {
            if self.accepting[q] {
                live.insert(q);
            }
        }
        loop {
            let mut changed = false;
            for q in 0..n {
                if !live.contains(q) && (0..self.symbols).any(|a| live.contains(self.step(q, a))) {
                    live.insert(q);
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// The same transition structure started elsewhere.
    pub fn with_initial(&self, q: usize) -> Dfa {
        Dfa { initial: q, ..self.clone() }
    }

    /// Minimal automaton in canonical numbering.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable_order();
        let n = reach.len();
        let pos: HashMap<usize, usize> = reach.iter().enumerate().map(|(i, &q)| (q, i)).collect();

        // Moore refinement on the reachable part
        let mut class: Vec<usize> = reach.iter().map(|&q| usize::from(self.accepting[q])).collect();
        let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for (i, &q) in reach.iter().enumerate() {
                let succ: Vec<usize> =
                    (0..self.symbols).map(|a| class[pos[&self.step(q, a)]]).collect();
                let fresh = sigs.len();
                next.push(*sigs.entry((class[i], succ)).or_insert(fresh));
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // quotient, then canonical breadth-first renumbering
        let rep: Vec<usize> = {
            let mut rep = vec![usize::MAX; count];
            for (i, &c) in class.iter().enumerate() {
                if rep[c] == usize::MAX {
                    rep[c] = reach[i];
                }
            }
            rep
        };
        let start = class[pos[&self.initial]];
        let mut order = vec![start];
        let mut new_id = vec![usize::MAX; count];
        new_id[start] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for a in 0..self.symbols {
                let d = class[pos[&self.step(rep[c], a)]];
                if new_id[d] == usize::MAX {
                    new_id[d] = order.len();
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(order.len() * self.symbols);
        let mut accepting = Vec::with_capacity(order.len());
        for &c in &order {
            for a in 0..self.symbols {
                delta.push(new_id[class[pos[&self.step(rep[c], a)]]]);
            }
            accepting.push(self.accepting[rep[c]]);
        }
        Dfa { symbols: self.symbols, delta, initial: 0, accepting }
    }

    fn reachable_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            for a in 0..self.symbols {
                let d = self.step(order[i], a);
                if !seen[d] {
                    seen[d] = true;
                    order.push(d);
                }
            }
            i += 1;
        }
        order
    }

    /// Minimal automaton of the reversed language.
    pub fn reverse(&self) -> Dfa {
        let n = self.num_states();
        let mut start = FixedBitSet::with_capacity(n);
        for q in 0..n {
            if self.accepting[q] {
                start.insert(q);
            }
        }
        let (dfa, _) = Dfa::determinize(
            self.symbols,
            start,
            |set, a| {
                let mut out = FixedBitSet::with_capacity(n);
                for p in 0..n {
                    if set.contains(self.step(p, a)) {
                        out.insert(p);
                    }
                }
                out
            },
            |set| set.contains(self.initial),
        );
        dfa.minimize()
    }

    /// Minimal automaton of the image language under the symbol bijection
    /// `a ↦ perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Dfa {
        assert_eq!(perm.len(), self.symbols);
        let mut delta = vec![0; self.delta.len()];
        for q in 0..self.num_states() {
            for a in 0..self.symbols {
                delta[q * self.symbols + perm[a]] = self.step(q, a);
            }
        }
        Dfa { delta, ..self.clone() }.minimize()
    }

    /// A shortest word accepted by exactly one of the two automata.
    pub fn distinguishing_word(&self, other: &Dfa) -> Option<Vec<usize>> {
        assert_eq!(self.symbols, other.symbols);
        let mut prev: HashMap<(usize, usize), Option<((usize, usize), usize)>> = HashMap::new();
        let start = (self.initial, other.initial);
        prev.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.accepting[p] != other.accepting[q] {
                let mut word = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((from, a))) = prev.get(&cur) {
                    word.push(*a);
                    cur = *from;
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..self.symbols {
                let next = (self.step(p, a), other.step(q, a));
                if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(next) {
                    e.insert(Some(((p, q), a)));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Words of length `len` accepted, in lexicographic symbol order. The
    /// walk is pruned at states that cannot reach acceptance.
    pub fn accepted_words(&self, len: usize) -> Vec<Vec<usize>> {
        let live = self.live_states();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(len);
        self.collect_words(self.initial, len, &live, &mut word, &mut out);
        out
    }

    fn collect_words(
        &self,
        q: usize,
        len: usize,
        live: &FixedBitSet,
        word: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if word.len() == len {
            if self.accepting[q] {
                out.push(word.clone());
            }
            return;
        }
        for a in 0..self.symbols {
            let d = self.step(q, a);
            if live.contains(d) {
                word.push(a);
                self.collect_words(d, len, live, word, out);
                word.pop();
            }
        }
    }
}
