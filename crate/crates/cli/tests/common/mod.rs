//! Helpers shared by the command-line test targets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use flipcount::linalg::Matrix;
use flipcount::presentations::LabeledGraph;
use flipcount::{QPoly, QRationalFunction};
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn system(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("systems").join(format!("{name}.json"))
}

pub fn flipcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flipcount")).args(args).output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

pub fn poly(coeffs: &[i64]) -> QPoly {
    QPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

/// Reads the `NAME.num` / `NAME.den` coefficient lines of `zeta --closed-form`.
pub fn closed_form(text: &str, name: &str) -> QRationalFunction {
    let line = |suffix: &str| {
        let key = format!("{name}.{suffix}\t");
        let rest = text.lines().find_map(|l| l.strip_prefix(key.as_str())).expect("coefficient line");
        QPoly::new(rest.split(' ').map(|c| c.parse::<BigRational>().expect("rational")).collect())
    };
    QRationalFunction::new(line("num"), line("den"))
}

/// The labeled graph of a chain written by `export`: each state carries its
/// symbol, so edge `s -> t` is labeled by the symbol of `s`.
pub fn graph_from_dot(dot: &str, alphabet: &[&str]) -> LabeledGraph {
    let mut vertices = Vec::new();
    let mut symbols = Vec::new();
    let mut edges = Vec::new();
    for line in dot.lines().map(str::trim) {
        if let Some((id, rest)) = line.split_once(" [label=\"") {
            vertices.push(id.to_string());
            let name = rest.trim_end_matches("\"];");
            symbols.push(name.split('/').nth(1).expect("F/a/P state name").to_string());
        } else if let Some((s, t)) =
            line.strip_suffix(';').filter(|l| !l.contains('[')).and_then(|l| l.split_once(" -> "))
        {
            edges.push((s.to_string(), t.to_string()));
        }
    }
    let index = |v: &str| vertices.iter().position(|x| x == v).expect("declared node");
    let triples: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(s, t)| (s.as_str(), symbols[index(s)].as_str(), t.as_str()))
        .collect();
    let alphabet = alphabet.iter().map(|a| a.to_string()).collect();
    LabeledGraph::new(vertices.clone(), alphabet, &triples).expect("valid chain graph")
}

/// The `(k, J_k)` pairs of a matrix dump.
pub fn dumped_j(text: &str) -> Vec<(usize, Matrix<i64>)> {
    let mut out = Vec::new();
    let mut lines = text.lines().peekable();
    while let Some(header) = lines.next() {
        let k: usize = header
            .strip_prefix("level ")
            .and_then(|h| h.split(' ').next())
            .and_then(|k| k.parse().ok())
            .expect("level header");
        let mut blocks: Vec<Vec<Vec<i64>>> = Vec::new();
        while let Some(l) = lines.peek() {
            if l.starts_with("level ") {
                break;
            }
            let l = lines.next().unwrap();
            if matches!(l, "A" | "B" | "J") {
                blocks.push(Vec::new());
            } else if !l.is_empty() {
                blocks.last_mut().unwrap().push(l.split(' ').map(|x| x.parse().unwrap()).collect());
            }
        }
        out.push((k, Matrix::from_rows(blocks.pop().expect("J block"))));
    }
    out
}
