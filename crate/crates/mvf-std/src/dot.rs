//! Graphviz output.

use std::fmt::Write;

use mvf_core::duality::{MvSpace, PointMap};
use mvf_core::fraisse::Chain;
use mvf_core::hom::{count_homs, HomMode};
use mvf_core::FiniteMvAlgebra;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per algebra and an edge `A → B` labeled with the number of
/// embeddings whenever there is at least one. Self-loops are omitted.
pub fn embedding_graph(algebras: &[FiniteMvAlgebra]) -> String {
    let mut out = String::from("digraph embeddings {\n");
    for (i, a) in algebras.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(&a.to_string())).unwrap();
    }
    for (i, a) in algebras.iter().enumerate() {
        for (j, b) in algebras.iter().enumerate() {
            if i == j {
                continue;
            }
            let count = count_homs(a, b, HomMode::Embeddings);
            if count > 0 {
                writeln!(out, "  n{i} -> n{j} [label=\"{count}\"];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn chain_graph(chain: &Chain) -> String {
    let mut out = String::from("digraph chain {\n  rankdir=LR;\n");
    for (i, s) in chain.stages().iter().enumerate() {
        writeln!(
            out,
            "  s{i} [label={}];",
            quote(&format!("{i}: {}", s.chains().len()))
        )
        .unwrap();
    }
    for (i, link) in chain.links().iter().enumerate() {
        writeln!(
            out,
            "  s{i} -> s{} [label={}];",
            i + 1,
            quote(&format!("{:?}", link.sigma()))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Points of both spaces with their labels, and the map between them.
pub fn space_map_graph(f: &PointMap) -> String {
    let mut out = String::from("digraph dual {\n  rankdir=LR;\n");
    let points = |out: &mut String, tag: &str, s: &MvSpace| {
        for x in 0..s.point_count() {
            writeln!(out, "  {tag}{x} [label=\"{x} ({})\"];", s.label(x)).unwrap();
        }
    };
    points(&mut out, "y", &f.source);
    points(&mut out, "x", &f.target);
    for (y, &x) in f.map.iter().enumerate() {
        writeln!(out, "  y{y} -> x{x};").unwrap();
    }
    out.push_str("}\n");
    out
}
