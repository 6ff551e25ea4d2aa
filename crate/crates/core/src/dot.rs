//! Graphviz export of Hasse diagrams.

use std::fmt::Write as _;

use crate::lattice::FiniteDistLattice;
use crate::spectrum::{BitopSpace, PointLabel, Specialization};

/// Cover pairs `(a, b)` of a partial order given as a matrix, `a` below `b`.
pub fn hasse_edges(order: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = order.len();
    let lt = |a: usize, b: usize| a != b && order[a][b];
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A digraph with one node per label and an edge from each element to its
/// upper covers.
pub fn hasse_dot(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    let _ = writeln!(out, "  rankdir=BT;");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

pub fn lattice_dot(name: &str, l: &FiniteDistLattice) -> String {
    hasse_dot(name, l.names(), &l.covers())
}

/// The specialization order of a spectrum, points labelled by their ideals
/// written in `element_names`.
pub fn specialization_dot(name: &str, space: &BitopSpace, spec: &Specialization, element_names: &[String]) -> String {
    let labels: Vec<String> = space
        .labels()
        .iter()
        .map(|l| match l {
            PointLabel::Ideal(p) => {
                let members: Vec<&str> = p.iter().map(|x| element_names[x].as_str()).collect();
                format!("{{{}}}", members.join(", "))
            }
            PointLabel::Name(s) => s.clone(),
        })
        .collect();
    hasse_dot(name, &labels, &hasse_edges(&spec.order))
}
