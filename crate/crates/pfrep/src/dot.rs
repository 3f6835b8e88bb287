//! Graphviz rendering of networks. One-way only; the JSON formats are the
//! round-trippable representation.

use std::fmt::Write;

use crate::algebra::FiniteAlgebra;
use crate::network::Network;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders a network as a dot digraph. Each vertex shows its reflexive
/// label under its name; non-reflexive edges carry their label as text.
pub fn network_to_dot(net: &Network, alg: &FiniteAlgebra) -> String {
    let mut out = String::from("digraph network {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=ellipse];\n");
    for v in 0..net.n_vertices() {
        let name = &net.vertex_names()[v];
        let refl = alg.name(net.reflexive_label(v));
        writeln!(
            out,
            "  v{v} [label=\"{}\\n{}\"];",
            escape(name),
            escape(refl)
        )
        .unwrap();
    }
    for ((x, y), l) in net.edges() {
        if x == y {
            continue;
        }
        writeln!(out, "  v{x} -> v{y} [label=\"{}\"];", escape(alg.name(l))).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::z2;
    use crate::network::from_concrete;

    fn z2_network() -> (FiniteAlgebra, Network) {
        let (alg, rep) = z2();
        let net = from_concrete(&alg, &rep).unwrap();
        (alg, net)
    }

    #[test]
    fn dot_output_lists_every_vertex_and_nonreflexive_edge() {
        let (alg, net) = z2_network();
        let dot = network_to_dot(&net, &alg);
        assert!(dot.starts_with("digraph network {"), "got: {dot}");
        assert!(dot.contains("v0 [label=\"e\\ne\"];"), "got: {dot}");
        assert!(dot.contains("v0 -> v1 [label=\"a\"];"), "got: {dot}");
        assert!(dot.contains("v1 -> v0 [label=\"a\"];"), "got: {dot}");
        assert!(
            !dot.contains("v0 -> v0"),
            "reflexive labels belong on the node, got: {dot}"
        );
    }

    #[test]
    fn dot_output_is_deterministic() {
        let (alg, net) = z2_network();
        assert_eq!(network_to_dot(&net, &alg), network_to_dot(&net, &alg));
    }

    #[test]
    fn quotes_in_names_are_escaped() {
        let dot_name = escape("say \"hi\"");
        assert_eq!(dot_name, "say \\\"hi\\\"");
    }
}
