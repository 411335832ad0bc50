use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::classes::{compute_future_classes, compute_past_classes, FollowerClass, DEFAULT_MONOID_CAP};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentations::{Edge, FactorDfa, LabeledGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointState {
    pub future: usize,
    pub symbol: usize,
    pub past: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// All joint states `Ω`.
    Joint,
    /// `Ω⁰`: futures and pasts of intrinsically synchronizing blocks.
    Finitary,
    /// `Ω′`: states `(𝔽(w₁), a, ℙ(w₂))` of `Ω⁰` with `w₁aw₂` a block.
    Component,
}

impl ChainKind {
    pub fn name(self) -> &'static str {
        match self {
            ChainKind::Joint => "joint",
            ChainKind::Finitary => "finitary",
            ChainKind::Component => "component",
        }
    }
}

/// Futures, pasts and their step and star maps, shared by every chain built
/// from one presentation.
#[derive(Debug)]
pub struct Cover {
    pub graph: LabeledGraph,
    pub tau: Vec<usize>,
    pub futures: Vec<FollowerClass>,
    pub pasts: Vec<FollowerClass>,
    /// `F(a)`, when `a` can follow `F`.
    future_step: Vec<Vec<Option<usize>>>,
    /// `P(a)`, when `a` can precede `P`.
    past_step: Vec<Vec<Option<usize>>>,
    /// `P ↦ P*` as a future.
    past_star: Vec<usize>,
    /// `F ↦ F*` as a past.
    future_star: Vec<usize>,
}

impl Cover {
    fn new(graph: &LabeledGraph, tau: &[usize], cap: usize) -> Result<Cover> {
        let futures = compute_future_classes(graph, cap)?;
        let pasts = compute_past_classes(graph, cap)?;
        let rev = graph.reversed();
        let future_step = step_table(graph, &futures)?;
        let past_step = step_table(&rev, &pasts)?;
        let find = |classes: &[FollowerClass], dfa: &Dfa, what: &str| {
            classes
                .iter()
                .position(|c| c.follower == *dfa)
                .ok_or_else(|| Error::StarMismatch(what.to_string()))
        };
        let past_star = pasts
            .iter()
            .map(|p| find(&futures, &p.follower.relabel(tau), &format!("P#{}*", p.id)))
            .collect::<Result<Vec<_>>>()?;
        let future_star = futures
            .iter()
            .map(|f| find(&pasts, &f.follower.relabel(tau), &format!("F#{}*", f.id)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cover {
            graph: graph.clone(),
            tau: tau.to_vec(),
            futures,
            pasts,
            future_step,
            past_step,
            past_star,
            future_star,
        })
    }

    fn star(&self, s: &JointState) -> JointState {
        JointState {
            future: self.past_star[s.past],
            symbol: self.tau[s.symbol],
            past: self.future_star[s.future],
        }
    }

    /// Future classes of the synchronizing blocks.
    fn finitary_futures(&self) -> BTreeSet<usize> {
        finitary_classes(&self.graph, &self.futures)
    }

    fn finitary_pasts(&self) -> BTreeSet<usize> {
        finitary_classes(&self.graph.reversed(), &self.pasts)
    }
}

fn step_table(graph: &LabeledGraph, classes: &[FollowerClass]) -> Result<Vec<Vec<Option<usize>>>> {
    let index: HashMap<&Dfa, usize> = classes.iter().map(|c| (&c.follower, c.id)).collect();
    classes
        .iter()
        .map(|c| {
            (0..graph.num_symbols())
                .map(|a| {
                    let next = graph.image(&c.rep, a);
                    if next.is_clear() {
                        return Ok(None);
                    }
                    let dfa = graph.follower_dfa(&next);
                    index.get(&dfa).copied().map(Some).ok_or_else(|| {
                        Error::StarMismatch(format!("class {} step {} left the class list", c.id, a))
                    })
                })
                .collect()
        })
        .collect()
}

/// The class of each factor-automaton state, matched by right language.
fn dfa_state_classes(dfa: &FactorDfa, classes: &[FollowerClass]) -> Vec<Option<usize>> {
    let index: HashMap<&Dfa, usize> = classes.iter().map(|c| (&c.follower, c.id)).collect();
    (0..dfa.dfa().num_states())
        .map(|q| {
            if dfa.is_live(q) {
                index.get(&dfa.dfa().with_initial(q).minimize()).copied()
            } else {
                None
            }
        })
        .collect()
}

/// Subsets of live factor-automaton states reachable as images `Q·w` of the
/// full live set, each with its live part.
fn image_subsets(dfa: &FactorDfa) -> Vec<FixedBitSet> {
    let n = dfa.dfa().num_states();
    let mut start = FixedBitSet::with_capacity(n);
    for q in dfa.live_states() {
        start.insert(q);
    }
    let (_, sets) = Dfa::determinize(
        dfa.dfa().symbols(),
        start,
        |set, a| {
            let mut out = FixedBitSet::with_capacity(n);
            for q in set.ones() {
                let d = dfa.dfa().step(q, a);
                if dfa.is_live(d) {
                    out.insert(d);
                }
            }
            out
        },
        |_| true,
    );
    sets
}

fn finitary_classes(graph: &LabeledGraph, classes: &[FollowerClass]) -> BTreeSet<usize> {
    let dfa = graph.factor_dfa();
    let class_of = dfa_state_classes(&dfa, classes);
    image_subsets(&dfa)
        .iter()
        .filter(|s| s.count_ones(..) == 1)
        .filter_map(|s| class_of[s.ones().next().unwrap()])
        .collect()
}

/// Whether every live run of `w` through the factor automaton ends in one
/// and the same live state, so that `uw, wv ∈ 𝓑` imply `uwv ∈ 𝓑`.
pub fn is_intrinsically_synchronizing(dfa: &FactorDfa, w: &[usize]) -> Result<bool> {
    if !dfa.accepts(w) {
        return Err(Error::NotABlock(format!("{w:?}")));
    }
    let ends: HashSet<usize> = dfa
        .live_states()
        .into_iter()
        .map(|q| dfa.dfa().run_from(q, w))
        .filter(|&q| dfa.is_live(q))
        .collect();
    Ok(ends.len() == 1)
}

/// A chain of joint states with its labeling, transition matrix and flip.
#[derive(Clone, Debug)]
pub struct JointStateChain {
    pub kind: ChainKind,
    pub cover: Arc<Cover>,
    pub states: Vec<JointState>,
    /// `𝓛`: the symbol of each state.
    pub labels: Vec<usize>,
    pub a: Matrix<i64>,
    pub j: Matrix<i64>,
    /// `s ↦ s*` as state indices; `J` is its permutation matrix.
    pub star: Vec<usize>,
    /// Whether the label language of bi-infinite paths is `𝓑(X)`.
    pub factoring: bool,
}

/// Builds `Ω` with the default monoid cap.
pub fn build_joint_chain(graph: &LabeledGraph, tau: &[usize]) -> Result<JointStateChain> {
    build_joint_chain_with_cap(graph, tau, DEFAULT_MONOID_CAP)
}

pub fn build_joint_chain_with_cap(
    graph: &LabeledGraph,
    tau: &[usize],
    cap: usize,
) -> Result<JointStateChain> {
    let cover = Arc::new(Cover::new(graph, tau, cap)?);
    let mut states = Vec::new();
    for f in 0..cover.futures.len() {
        for a in 0..graph.num_symbols() {
            for p in 0..cover.pasts.len() {
                if cover.future_step[f][a].is_some() && cover.past_step[p][a].is_some() {
                    states.push(JointState { future: f, symbol: a, past: p });
                }
            }
        }
    }
    let n = states.len();
    let mut a = Matrix::zeros(n, n);
    for (i, s) in states.iter().enumerate() {
        for (k, t) in states.iter().enumerate() {
            if cover.future_step[s.future][s.symbol] == Some(t.future)
                && cover.past_step[t.past][t.symbol] == Some(s.past)
            {
                a[(i, k)] = 1;
            }
        }
    }
    let index: HashMap<JointState, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let star = states
        .iter()
        .map(|s| {
            index.get(&cover.star(s)).copied().ok_or_else(|| {
                Error::StarMismatch(format!("(F#{}, {}, P#{})", s.future, s.symbol, s.past))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = states.iter().map(|s| s.symbol).collect();
    let chain = JointStateChain {
        kind: ChainKind::Joint,
        cover,
        states,
        labels,
        a,
        j: permutation_matrix(&star),
        star,
        factoring: true,
    };
    chain.assert_invariants();
    assert!(chain.path_language_matches(), "joint chain does not factor onto X");
    Ok(chain)
}

fn permutation_matrix(perm: &[usize]) -> Matrix<i64> {
    let mut j = Matrix::zeros(perm.len(), perm.len());
    for (i, &p) in perm.iter().enumerate() {
        j[(i, p)] = 1;
    }
    j
}

/// Restricts `Ω` to `Ω⁰`. For irreducible presentations the result is
/// asserted to factor onto `X`; otherwise the property is only reported.
pub fn build_finitary_chain(chain: &JointStateChain) -> JointStateChain {
    let futures = chain.cover.finitary_futures();
    let pasts = chain.cover.finitary_pasts();
    let keep: Vec<usize> = (0..chain.states.len())
        .filter(|&i| {
            let s = chain.states[i];
            futures.contains(&s.future) && pasts.contains(&s.past)
        })
        .collect();
    let out = chain.restrict(&keep, ChainKind::Finitary);
    if chain.cover.graph.is_irreducible() {
        assert!(out.factoring, "finitary chain of an irreducible shift must factor onto X");
    }
    out
}

/// Restricts `Ω⁰` to `Ω′`: `(F, a, P)` is kept when some synchronizing `w₂`
/// with `ℙ(w₂) = P` has `a·w₂` in the language of `F`.
pub fn build_irreducible_component(finitary: &JointStateChain) -> Result<JointStateChain> {
    let cover = &finitary.cover;
    if !cover.graph.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let rev_dfa = cover.graph.reversed().factor_dfa();
    let past_of = dfa_state_classes(&rev_dfa, &cover.pasts);
    let n = rev_dfa.dfa().num_states();
    let mut start = FixedBitSet::with_capacity(n);
    for q in rev_dfa.live_states() {
        start.insert(q);
    }
    let keep: Vec<usize> = (0..finitary.states.len())
        .filter(|&i| {
            let s = finitary.states[i];
            let f = &cover.futures[s.future].follower;
            let after = f.step(f.initial(), s.symbol);
            // acceptor of reverse(a⁻¹ L(F))
            let tail = f.with_initial(after).reverse();
            // breadth-first search over (image subset, tail state) reading reverse(w₂)
            let mut seen = HashSet::new();
            let mut queue = VecDeque::from([(start.clone(), tail.initial())]);
            seen.insert((start.clone(), tail.initial()));
            while let Some((set, r)) = queue.pop_front() {
                if set.count_ones(..) == 1
                    && past_of[set.ones().next().unwrap()] == Some(s.past)
                    && tail.is_accepting(r)
                {
                    return true;
                }
                for b in 0..rev_dfa.dfa().symbols() {
                    let mut next = FixedBitSet::with_capacity(n);
                    for q in set.ones() {
                        let d = rev_dfa.dfa().step(q, b);
                        if rev_dfa.is_live(d) {
                            next.insert(d);
                        }
                    }
                    if next.is_clear() {
                        continue;
                    }
                    let key = (next, tail.step(r, b));
                    if seen.insert(key.clone()) {
                        queue.push_back(key);
                    }
                }
            }
            false
        })
        .collect();
    Ok(finitary.restrict(&keep, ChainKind::Component))
}

impl JointStateChain {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Sizes of the label fibers `𝓛⁻¹(a)`, indexed by symbol.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cover.graph.num_symbols()];
        for &a in &self.labels {
            sizes[a] += 1;
        }
        sizes
    }

    fn restrict(&self, keep: &[usize], kind: ChainKind) -> JointStateChain {
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &s) in keep.iter().enumerate() {
            new_id[s] = i;
        }
        let star: Vec<usize> = keep
            .iter()
            .map(|&s| {
                let t = new_id[self.star[s]];
                assert!(t != usize::MAX, "star map leaves the restricted chain");
                t
            })
            .collect();
        let mut chain = JointStateChain {
            kind,
            cover: Arc::clone(&self.cover),
            states: keep.iter().map(|&s| self.states[s]).collect(),
            labels: keep.iter().map(|&s| self.labels[s]).collect(),
            a: self.a.principal(keep),
            j: permutation_matrix(&star),
            star,
            factoring: false,
        };
        chain.assert_invariants();
        chain.factoring = chain.path_language_matches();
        chain
    }

    /// The chain as a labeled graph: an edge `s → t` labeled `𝓛(s)` for
    /// each `A(s, t) = 1`.
    pub fn to_labeled_graph(&self) -> Result<LabeledGraph> {
        let mut edges = Vec::new();
        for s in 0..self.len() {
            for t in 0..self.len() {
                if self.a[(s, t)] != 0 {
                    edges.push(Edge { source: s, label: self.labels[s], target: t });
                }
            }
        }
        LabeledGraph::from_parts(
            (0..self.len()).map(|i| self.state_name(i)).collect(),
            self.cover.graph.alphabet().to_vec(),
            edges,
        )
    }

    /// Whether the chain, read through its labels, presents the same shift.
    pub fn path_language_matches(&self) -> bool {
        match self.to_labeled_graph().and_then(|g| g.trim_essential()) {
            Ok(g) => g.factor_dfa() == self.cover.graph.factor_dfa(),
            Err(_) => false,
        }
    }

    /// `F#i/a/P#j`.
    pub fn state_name(&self, i: usize) -> String {
        let s = self.states[i];
        format!("F#{}/{}/P#{}", s.future, self.cover.graph.alphabet()[s.symbol], s.past)
    }

    /// Checks the structural identities; panics with the failing one.
    pub fn assert_invariants(&self) {
        if let Err(msg) = self.check_invariants() {
            panic!("{} chain invariant violated: {msg}", self.kind.name());
        }
    }

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.len();
        if (0..n).any(|i| self.star[self.star[i]] != i) {
            return Err("star is not an involution".into());
        }
        if (0..n).any(|i| self.labels[self.star[i]] != self.cover.tau[self.labels[i]]) {
            return Err("star does not cover tau".into());
        }
        if &self.j * &self.j != Matrix::identity(n) {
            return Err("J² ≠ I".into());
        }
        if self.j != self.j.transpose() {
            return Err("J is not symmetric".into());
        }
        if &self.j * &self.a != &self.a.transpose() * &self.j {
            return Err("JA ≠ AᵀJ".into());
        }
        for s in 0..n {
            for t in 0..n {
                if self.a[(s, t)] != self.a[(self.star[t], self.star[s])] {
                    return Err("A(s,t) ≠ A(t*,s*)".into());
                }
            }
        }
        if !diamond_free_check(self) {
            return Err("graph diamond".into());
        }
        Ok(())
    }

    /// Graphviz rendering: `A`-edges solid, `J`-pairs dashed and undirected.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {} {{", self.kind.name()).unwrap();
        for i in 0..self.len() {
            writeln!(out, "  n{i} [label=\"{}\"];", self.state_name(i)).unwrap();
        }
        for s in 0..self.len() {
            for t in 0..self.len() {
                if self.a[(s, t)] != 0 {
                    writeln!(out, "  n{s} -> n{t};").unwrap();
                }
            }
        }
        for s in 0..self.len() {
            let t = self.star[s];
            if s <= t {
                writeln!(out, "  n{s} -> n{t} [style=dashed, dir=none];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Whether no two distinct equally labeled paths share both endpoints.
///
/// Searches the graph of label-synchronized state pairs for a path leaving
/// the diagonal and returning to it.
pub fn diamond_free(labels: &[usize], a: &Matrix<i64>) -> bool {
    let n = labels.len();
    let succ: Vec<Vec<usize>> = (0..n).map(|s| (0..n).filter(|&t| a[(s, t)] != 0).collect()).collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        for (i, &u) in succ[s].iter().enumerate() {
            for &v in &succ[s][i + 1..] {
                if labels[u] == labels[v] && seen.insert((u, v)) {
                    queue.push_back((u, v));
                }
            }
        }
    }
    while let Some((u, v)) = queue.pop_front() {
        for &x in &succ[u] {
            for &y in &succ[v] {
                if labels[x] != labels[y] {
                    continue;
                }
                if x == y {
                    return false;
                }
                let pair = (x.min(y), x.max(y));
                if seen.insert(pair) {
                    queue.push_back(pair);
                }
            }
        }
    }
    true
}

pub fn diamond_free_check(chain: &JointStateChain) -> bool {
    diamond_free(&chain.labels, &chain.a)
}
