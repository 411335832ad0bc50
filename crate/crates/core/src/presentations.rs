//! Labeled-graph presentations of sofic shifts, SFT matrices, and flips.
//!
//! A [`LabeledGraph`] presents the sofic shift of all label sequences of
//! bi-infinite paths. Presentations need not be right-resolving or
//! irreducible. Iteration order everywhere is the input order of vertices,
//! symbols and edges, so every construction is a deterministic function of
//! the input.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    alphabet: Vec<String>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    /// Builds a graph from named vertices, symbols and `(source, label,
    /// target)` triples.
    pub fn new(
        vertices: Vec<String>,
        alphabet: Vec<String>,
        edges: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let vindex: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let aindex: HashMap<&str, usize> =
            alphabet.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
        let vertex = |v: &str| {
            vindex.get(v).copied().ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {v:?}")))
        };
        let mut out = Vec::with_capacity(edges.len());
        for &(s, a, t) in edges {
            let label = *aindex.get(a).ok_or_else(|| Error::BadSymbol(a.to_string()))?;
            out.push(Edge { source: vertex(s)?, label, target: vertex(t)? });
        }
        Self::from_parts(vertices, alphabet, out)
    }

    pub fn from_parts(vertices: Vec<String>, alphabet: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.iter().collect::<BTreeSet<_>>().len() != vertices.len() {
            return Err(Error::InvalidGraph("duplicate vertex id".into()));
        }
        if alphabet.iter().collect::<BTreeSet<_>>().len() != alphabet.len() {
            return Err(Error::InvalidGraph("duplicate alphabet symbol".into()));
        }
        if alphabet.is_empty() {
            return Err(Error::InvalidGraph("empty alphabet".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.source >= vertices.len() || e.target >= vertices.len() {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            if e.label >= alphabet.len() {
                return Err(Error::InvalidGraph("edge label out of range".into()));
            }
            if !seen.insert(*e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {} -{}-> {}",
                    vertices[e.source], alphabet[e.label], vertices[e.target]
                )));
            }
        }
        Ok(LabeledGraph { vertices, alphabet, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn symbol_index(&self, name: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::BadSymbol(name.to_string()))
    }

    /// Parses a word: whitespace-separated symbols, or one character per
    /// symbol when every symbol is a single character.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.split_whitespace().count() > 1 || !self.single_char_symbols() {
            text.split_whitespace().map(|s| self.symbol_index(s)).collect()
        } else {
            text.trim().chars().map(|c| self.symbol_index(&c.to_string())).collect()
        }
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        let sep = if self.single_char_symbols() { "" } else { " " };
        word.iter().map(|&a| self.alphabet[a].as_str()).collect::<Vec<_>>().join(sep)
    }

    fn single_char_symbols(&self) -> bool {
        self.alphabet.iter().all(|a| a.chars().count() == 1)
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.num_vertices());
        s.insert_range(..);
        s
    }

    /// Targets of `a`-labeled edges leaving `set`.
    pub fn image(&self, set: &FixedBitSet, a: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.num_vertices());
        for e in &self.edges {
            if e.label == a && set.contains(e.source) {
                out.insert(e.target);
            }
        }
        out
    }

    pub fn image_word(&self, set: &FixedBitSet, word: &[usize]) -> FixedBitSet {
        word.iter().fold(set.clone(), |s, &a| self.image(&s, a))
    }

    /// The same shift read backwards: every edge reversed.
    pub fn reversed(&self) -> LabeledGraph {
        LabeledGraph {
            vertices: self.vertices.clone(),
            alphabet: self.alphabet.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { source: e.target, label: e.label, target: e.source })
                .collect(),
        }
    }

    fn degrees(&self, alive: &[bool]) -> (Vec<usize>, Vec<usize>) {
        let mut indeg = vec![0; self.num_vertices()];
        let mut outdeg = vec![0; self.num_vertices()];
        for e in &self.edges {
            if alive[e.source] && alive[e.target] {
                outdeg[e.source] += 1;
                indeg[e.target] += 1;
            }
        }
        (indeg, outdeg)
    }

    pub fn is_essential(&self) -> bool {
        let (indeg, outdeg) = self.degrees(&vec![true; self.num_vertices()]);
        !self.vertices.is_empty() && indeg.iter().chain(&outdeg).all(|&d| d > 0)
    }

    /// Largest subgraph in which every vertex lies on a bi-infinite path.
    pub fn trim_essential(&self) -> Result<LabeledGraph> {
        let mut alive = vec![true; self.num_vertices()];
        loop {
            let (indeg, outdeg) = self.degrees(&alive);
            let mut changed = false;
            for v in 0..self.num_vertices() {
                if alive[v] && (indeg[v] == 0 || outdeg[v] == 0) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.iter().any(|&x| x) {
            return Err(Error::EmptyShift);
        }
        Ok(self.restrict(&alive))
    }

    fn restrict(&self, alive: &[bool]) -> LabeledGraph {
        let mut new_id = vec![usize::MAX; self.num_vertices()];
        let mut vertices = Vec::new();
        for (v, name) in self.vertices.iter().enumerate() {
            if alive[v] {
                new_id[v] = vertices.len();
                vertices.push(name.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| alive[e.source] && alive[e.target])
            .map(|e| Edge { source: new_id[e.source], label: e.label, target: new_id[e.target] })
            .collect();
        LabeledGraph { vertices, alphabet: self.alphabet.clone(), edges }
    }

    /// Strongly connected (and nonempty).
    pub fn is_irreducible(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.num_vertices()).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(nodes[e.source], nodes[e.target], ());
        }
        tarjan_scc(&g).len() == 1
    }

    /// Minimal automaton of `{w : some path labeled w starts in set}`.
    pub fn follower_dfa(&self, set: &FixedBitSet) -> Dfa {
        let (dfa, _) = Dfa::determinize(
            self.num_symbols(),
            set.clone(),
            |s, a| self.image(s, a),
            |s| !s.is_clear(),
        );
        dfa.minimize()
    }

    /// Minimal complete acceptor of the block language `𝓑(X)`; the graph
    /// must be essential.
    pub fn factor_dfa(&self) -> FactorDfa {
        debug_assert!(self.is_essential());
        FactorDfa::from_dfa(self.follower_dfa(&self.full_set()))
    }

    /// Merges vertices with identical outgoing (or incoming) edge sets until
    /// none remain; the label sequences of bi-infinite paths do not change.
    pub fn merge_equivalent_vertices(&self) -> LabeledGraph {
        let mut g = self.clone();
        loop {
            let before = g.num_vertices();
            g = g.merge_once(false).merge_once(true);
            if g.num_vertices() == before {
                return g;
            }
        }
    }

    fn merge_once(&self, incoming: bool) -> LabeledGraph {
        let mut key: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); self.num_vertices()];
        for e in &self.edges {
            if incoming {
                key[e.target].insert((e.label, e.source));
            } else {
                key[e.source].insert((e.label, e.target));
            }
        }
        let mut class_of: HashMap<&BTreeSet<(usize, usize)>, usize> = HashMap::new();
        let mut new_id = vec![0; self.num_vertices()];
        let mut vertices = Vec::new();
        for v in 0..self.num_vertices() {
            new_id[v] = *class_of.entry(&key[v]).or_insert_with(|| {
                vertices.push(self.vertices[v].clone());
                vertices.len() - 1
            });
        }
        let mut seen = BTreeSet::new();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { source: new_id[e.source], label: e.label, target: new_id[e.target] })
            .filter(|e| seen.insert(*e))
            .collect();
        LabeledGraph { vertices, alphabet: self.alphabet.clone(), edges }
    }

    /// Edge paths of length `len`, in lexicographic edge order.
    fn edge_paths(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.source].push(i);
        }
        let mut paths: Vec<Vec<usize>> = (0..self.edges.len()).map(|i| vec![i]).collect();
        for _ in 1..len {
            paths = paths
                .into_iter()
                .flat_map(|p| {
                    let last = self.edges[*p.last().unwrap()].target;
                    out_edges[last].iter().map(move |&e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
        }
        paths
    }

    /// Presentation of the image of this shift under the sliding-block code
    /// with memory and anticipation `radius` and local rule `rule` (applied
    /// to label windows of length `2 radius + 1`). Edges whose window the
    /// rule rejects are dropped.
    pub fn sliding_block_image(
        &self,
        radius: usize,
        alphabet: Vec<String>,
        rule: impl Fn(&[usize]) -> Option<usize>,
    ) -> LabeledGraph {
        if radius == 0 {
            let mut seen = BTreeSet::new();
            let edges = self
                .edges
                .iter()
                .filter_map(|e| {
                    rule(&[e.label]).map(|b| Edge { source: e.source, label: b, target: e.target })
                })
                .filter(|e| seen.insert(*e))
                .collect();
            return LabeledGraph { vertices: self.vertices.clone(), alphabet, edges };
        }
        let window = 2 * radius + 1;
        let mut vindex: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut vertices = Vec::new();
        for p in self.edge_paths(window - 1) {
            vindex.insert(p.clone(), vertices.len());
            vertices.push(p.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("."));
        }
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for p in self.edge_paths(window) {
            let labels: Vec<usize> = p.iter().map(|&e| self.edges[e].label).collect();
            if let Some(b) = rule(&labels) {
                let e = Edge {
                    source: vindex[&p[..window - 1]],
                    label: b,
                    target: vindex[&p[1..]],
                };
                if seen.insert(e) {
                    edges.push(e);
                }
            }
        }
        LabeledGraph { vertices, alphabet, edges }
    }
}

/// Minimal complete DFA of a block language. Every state other than the
/// dead state accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDfa {
    dfa: Dfa,
    dead: Option<usize>,
}

impl FactorDfa {
    fn from_dfa(dfa: Dfa) -> Self {
        let dead = (0..dfa.num_states()).find(|&q| !dfa.is_accepting(q));
        debug_assert!((0..dfa.num_states()).filter(|&q| !dfa.is_accepting(q)).count() <= 1);
        FactorDfa { dfa, dead }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn dead(&self) -> Option<usize> {
        self.dead
    }

    pub fn is_live(&self, q: usize) -> bool {
        Some(q) != self.dead
    }

    pub fn live_states(&self) -> Vec<usize> {
        (0..self.dfa.num_states()).filter(|&q| self.is_live(q)).collect()
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.dfa.accepts(word)
    }

    /// Blocks of length `len` in lexicographic order.
    pub fn blocks(&self, len: usize) -> Vec<Word> {
        self.dfa.accepted_words(len)
    }

    /// Acceptor of the reversed block language.
    pub fn reverse(&self) -> FactorDfa {
        FactorDfa::from_dfa(self.dfa.reverse())
    }
}

/// Vertex shift of a zero-one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftMatrix {
    states: Vec<String>,
    entries: Matrix<i64>,
}

impl SftMatrix {
    pub fn new(states: Vec<String>, entries: Matrix<i64>) -> Result<Self> {
        if !entries.is_square() || entries.rows() != states.len() {
            return Err(Error::InvalidGraph("SFT matrix must be square over the states".into()));
        }
        for i in 0..entries.rows() {
            if entries.row(i).iter().any(|&x| x != 0 && x != 1) {
                return Err(Error::InvalidGraph("SFT matrix entries must be 0 or 1".into()));
            }
        }
        if states.iter().collect::<BTreeSet<_>>().len() != states.len() {
            return Err(Error::InvalidGraph("duplicate SFT state".into()));
        }
        Ok(SftMatrix { states, entries })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn entries(&self) -> &Matrix<i64> {
        &self.entries
    }

    /// The vertex shift as a labeled graph: an edge `i → j` for each entry 1,
    /// labeled by its source state, so label sequences are state sequences.
    pub fn to_labeled_graph(&self) -> Result<LabeledGraph> {
        let n = self.states.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.entries[(i, j)] == 1 {
                    edges.push(Edge { source: i, label: i, target: j });
                }
            }
        }
        LabeledGraph::from_parts(self.states.clone(), self.states.clone(), edges)?.trim_essential()
    }
}

/// A flip of a shift space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipSpec {
    /// `φ(x)_i = τ(x_{-i})` for a symbol map `τ`.
    OneBlock { tau: Vec<usize> },
    /// `φ(x)_0 = table(x_{[-radius, radius]})`; since `φσ = σ⁻¹φ`, this fixes
    /// `φ(x)_i = table(x_{[-i-radius, -i+radius]})`.
    SlidingBlock { radius: usize, table: BTreeMap<Word, usize> },
}

impl FlipSpec {
    pub fn identity(symbols: usize) -> FlipSpec {
        FlipSpec::OneBlock { tau: (0..symbols).collect() }
    }

    pub fn radius(&self) -> usize {
        match self {
            FlipSpec::OneBlock { .. } => 0,
            FlipSpec::SlidingBlock { radius, .. } => *radius,
        }
    }

    /// Local rule on a window of length `2 radius + 1`.
    pub fn local_rule(&self, window: &[usize]) -> Option<usize> {
        match self {
            FlipSpec::OneBlock { tau } => tau.get(window[0]).copied(),
            FlipSpec::SlidingBlock { table, .. } => table.get(window).copied(),
        }
    }

    /// `φ(x)` over one period, for the periodic point `w^∞` (`x_i = w[i mod n]`).
    pub fn apply_periodic(&self, w: &[usize]) -> Option<Word> {
        let n = w.len() as isize;
        let r = self.radius() as isize;
        (0..n)
            .map(|i| {
                let window: Vec<usize> =
                    (-i - r..=-i + r).map(|k| w[k.rem_euclid(n) as usize]).collect();
                self.local_rule(&window)
            })
            .collect()
    }
}

/// True iff `𝓑(X)` is closed under `w ↦ τ(reverse(w))`, i.e. `φ_τ(X) = X`.
pub fn reversal_flip_check(dfa: &FactorDfa, tau: &[usize]) -> bool {
    transformed_language(dfa, tau) == *dfa.dfa()
}

fn transformed_language(dfa: &FactorDfa, tau: &[usize]) -> Dfa {
    dfa.dfa().reverse().relabel(tau)
}

/// Whether `w^∞` lies in the shift.
///
/// Iterates `S ↦ S·w` from the full vertex set; the sets decrease after the
/// first step and stabilize within `|V|` rounds.
pub fn periodic_word_test(graph: &LabeledGraph, w: &[usize]) -> Result<bool> {
    if let Some(&bad) = w.iter().find(|&&a| a >= graph.num_symbols()) {
        return Err(Error::BadSymbol(format!("#{bad}")));
    }
    assert!(!w.is_empty(), "periodic word must be nonempty");
    let mut set = graph.full_set();
    for _ in 0..=graph.num_vertices() {
        let next = graph.image_word(&set, w);
        if next == set {
            break;
        }
        set = next;
    }
    Ok(!set.is_clear())
}

/// Checks `φ² = id` and that `φ` is a reversal of `X` onto itself.
///
/// For one-block flips this is `τ² = id` plus [`reversal_flip_check`]. For
/// sliding-block flips, totality of the table is checked on `𝓑_{2N+1}(X)`,
/// the image `φ(X)` is compared with `X` through the reversed image
/// presentation, and `φ²` is evaluated at the center of every block of
/// length `4N+1`. All three are exact.
pub fn flip_axiom_check(graph: &LabeledGraph, flip: &FlipSpec) -> Result<()> {
    let dfa = graph.factor_dfa();
    match flip {
        FlipSpec::OneBlock { tau } => {
            if tau.len() != graph.num_symbols() || tau.iter().any(|&b| b >= graph.num_symbols()) {
                return Err(Error::InvalidGraph("symbol map must cover the alphabet".into()));
            }
            if let Some(a) = (0..tau.len()).find(|&a| tau[tau[a]] != a) {
                return Err(Error::NotInvolution { witness: graph.alphabet()[a].clone() });
            }
            let image = transformed_language(&dfa, tau);
            if let Some(w) = image.distinguishing_word(dfa.dfa()) {
                return Err(Error::NotReversing { witness: graph.format_word(&w) });
            }
            Ok(())
        }
        FlipSpec::SlidingBlock { radius, table } => {
            let n = *radius;
            for block in dfa.blocks(2 * n + 1) {
                if !table.contains_key(&block) {
                    return Err(Error::IncompleteFlipTable(graph.format_word(&block)));
                }
            }
            let image = graph
                .sliding_block_image(n, graph.alphabet().to_vec(), |w| table.get(w).copied())
                .reversed()
                .trim_essential()?
                .factor_dfa();
            if let Some(w) = image.dfa().distinguishing_word(dfa.dfa()) {
                return Err(Error::NotReversing { witness: graph.format_word(&w) });
            }
            for u in dfa.blocks(4 * n + 1) {
                // y_r = φ(x)_{r-N} for x_{[-2N,2N]} = u
                let y: Option<Word> =
                    (0..=2 * n).map(|r| table.get(&u[2 * n - r..4 * n - r + 1]).copied()).collect();
                let back = y.as_ref().and_then(|y| table.get(y));
                if back != Some(&u[2 * n]) {
                    return Err(Error::NotInvolution { witness: graph.format_word(&u) });
                }
            }
            Ok(())
        }
    }
}

/// Result of recoding a flip system so that its flip is one-block.
#[derive(Clone, Debug)]
pub struct OneBlockRecoding {
    pub graph: LabeledGraph,
    /// Symbol map `(a, b) ↦ (b, a)` of the recoded flip.
    pub tau: Vec<usize>,
    /// `Φ(a, b) = a`, indices into the original alphabet.
    pub projection: Vec<usize>,
}

/// Recodes `(X, σ, φ)` through `θ(x)_i = (x_i, φ(x)_{-i})`.
///
/// The new alphabet is the set of pairs `(a, b)` that occur, sorted by the
/// original symbol order; the flip on the recoded shift is the one-block flip
/// swapping the pair. `Φ(a, b) = a` is a conjugacy back to the input system.
pub fn one_block_recode(graph: &LabeledGraph, flip: &FlipSpec) -> Result<OneBlockRecoding> {
    flip_axiom_check(graph, flip)?;
    let n = flip.radius();
    let window = 2 * n + 1;
    // θ(x)_i = (x_i, φ(x)_{-i}) and φ(x)_{-i} = rule(x_{[i-N, i+N]})
    let pairs: BTreeSet<(usize, usize)> = graph
        .factor_dfa()
        .blocks(window)
        .iter()
        .map(|w| (w[n], flip.local_rule(w).expect("table is total after the axiom check")))
        .collect();
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let names = graph.alphabet();
    let alphabet: Vec<String> =
        pairs.iter().map(|&(a, b)| format!("({},{})", names[a], names[b])).collect();
    let recoded = graph
        .sliding_block_image(n, alphabet, |w| {
            flip.local_rule(w).map(|b| index[&(w[n], b)])
        })
        .trim_essential()?
        .merge_equivalent_vertices();
    let tau = pairs
        .iter()
        .map(|&(a, b)| {
            index.get(&(b, a)).copied().ok_or_else(|| Error::NotReversing {
                witness: format!("({},{})", names[a], names[b]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let projection = pairs.iter().map(|&(a, _)| a).collect();
    Ok(OneBlockRecoding { graph: recoded, tau, projection })
}
