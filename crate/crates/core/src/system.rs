//! The JSON system file and the parsed flip system.
//!
//! ```json
//! {
//!   "name": "even",
//!   "kind": "sofic",
//!   "alphabet": ["0", "1"],
//!   "graph": {"vertices": ["p", "q"], "edges": [["p", "1", "p"], ["p", "0", "q"], ["q", "0", "p"]]},
//!   "flip": {"tau": {"0": "0", "1": "1"}}
//! }
//! ```
//!
//! `kind: "sft"` replaces `graph` by `states` and a zero-one `matrix`; the
//! shift is the vertex shift and its alphabet is the state list. A flip is
//! either `{"tau": {symbol: symbol}}` (symbols left out are fixed) or
//! `{"window": {"radius": N, "table": {block: symbol}}}`, where the table
//! gives `φ(x)_0` from `x_{[-N, N]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::krieger::{
    build_finitary_chain, build_irreducible_component, build_joint_chain_with_cap, ChainKind,
    JointStateChain,
};
use crate::presentations::{flip_axiom_check, one_block_recode, FlipSpec, LabeledGraph, SftMatrix};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub name: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    pub flip: FlipSection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sofic,
    Sft,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FlipSection {
    Tau { tau: BTreeMap<String, String> },
    Window { window: WindowSection },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    pub radius: usize,
    pub table: BTreeMap<String, String>,
}

/// A parsed flip system: essential presentation plus flip.
#[derive(Clone, Debug)]
pub struct System {
    pub name: String,
    pub graph: LabeledGraph,
    pub flip: FlipSpec,
    /// The defining matrix when the file is of kind `sft`.
    pub sft: Option<SftMatrix>,
}

impl System {
    pub fn from_json(text: &str) -> Result<System> {
        let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        file.into_system()
    }

    /// Zero-one `J` of the SFT's one-block flip, when there is one.
    pub fn sft_flip_matrix(&self) -> Option<Matrix<i64>> {
        let FlipSpec::OneBlock { tau } = &self.flip else {
            return None;
        };
        let sft = self.sft.as_ref()?;
        let n = sft.states().len();
        let mut j = Matrix::zeros(n, n);
        for (a, &b) in tau.iter().enumerate() {
            j[(a, b)] = 1;
        }
        Some(j)
    }

    /// Checks the flip axioms and returns a presentation whose flip is
    /// one-block, conjugate to this system (recoding sliding-block flips).
    pub fn one_block_form(&self) -> Result<(LabeledGraph, Vec<usize>)> {
        match &self.flip {
            FlipSpec::OneBlock { tau } => {
                flip_axiom_check(&self.graph, &self.flip)?;
                Ok((self.graph.clone(), tau.clone()))
            }
            FlipSpec::SlidingBlock { .. } => {
                let r = one_block_recode(&self.graph, &self.flip)?;
                Ok((r.graph, r.tau))
            }
        }
    }

    /// The requested chain of the one-block form.
    pub fn build_chain(&self, kind: ChainKind, monoid_cap: usize) -> Result<JointStateChain> {
        let (graph, tau) = self.one_block_form()?;
        let joint = build_joint_chain_with_cap(&graph, &tau, monoid_cap)?;
        Ok(match kind {
            ChainKind::Joint => joint,
            ChainKind::Finitary => build_finitary_chain(&joint),
            ChainKind::Component => build_irreducible_component(&build_finitary_chain(&joint))?,
        })
    }
}

impl SystemFile {
    pub fn into_system(self) -> Result<System> {
        let (graph, sft) = match self.kind {
            Kind::Sofic => {
                let section = self
                    .graph
                    .ok_or_else(|| Error::Schema("sofic system needs a \"graph\"".into()))?;
                if self.matrix.is_some() || self.states.is_some() {
                    return Err(Error::Schema("sofic system takes no \"matrix\"/\"states\"".into()));
                }
                let alphabet = self
                    .alphabet
                    .ok_or_else(|| Error::Schema("sofic system needs an \"alphabet\"".into()))?;
                let edges: Vec<(&str, &str, &str)> = section
                    .edges
                    .iter()
                    .map(|(s, a, t)| (s.as_str(), a.as_str(), t.as_str()))
                    .collect();
                let g = LabeledGraph::new(section.vertices, alphabet, &edges)?;
                (g.trim_essential()?, None)
            }
            Kind::Sft => {
                if self.graph.is_some() {
                    return Err(Error::Schema("sft system takes no \"graph\"".into()));
                }
                let states = self
                    .states
                    .ok_or_else(|| Error::Schema("sft system needs \"states\"".into()))?;
                if let Some(alpha) = &self.alphabet {
                    if alpha != &states {
                        return Err(Error::Schema("sft alphabet must equal the state list".into()));
                    }
                }
                let rows = self
                    .matrix
                    .ok_or_else(|| Error::Schema("sft system needs a \"matrix\"".into()))?;
                if rows.len() != states.len() || rows.iter().any(|r| r.len() != states.len()) {
                    return Err(Error::Schema("matrix must be square over the states".into()));
                }
                let sft = SftMatrix::new(states, Matrix::from_rows(rows))?;
                (sft.to_labeled_graph()?, Some(sft))
            }
        };
        let flip = match self.flip {
            FlipSection::Tau { tau } => {
                let mut map: Vec<usize> = (0..graph.num_symbols()).collect();
                for (a, b) in &tau {
                    map[graph.symbol_index(a)?] = graph.symbol_index(b)?;
                }
                FlipSpec::OneBlock { tau: map }
            }
            FlipSection::Window { window } => {
                let mut table = BTreeMap::new();
                for (block, b) in &window.table {
                    let w = graph.parse_word(block)?;
                    if w.len() != 2 * window.radius + 1 {
                        return Err(Error::Schema(format!(
                            "window block {block:?} must have length {}",
                            2 * window.radius + 1
                        )));
                    }
                    table.insert(w, graph.symbol_index(b)?);
                }
                FlipSpec::SlidingBlock { radius: window.radius, table }
            }
        };
        Ok(System { name: self.name, graph, flip, sft })
    }
}
