use std::fmt::Write;

use super::{BoolFn, Engine, FALSE, TRUE};

impl Engine {
    /// Graphviz rendering of the diagram rooted at `f`; low edges are dashed.
    pub fn to_dot(&self, f: BoolFn) -> String {
        let root = self.own_panic(f);
        let mut nodes = self.reachable_nodes(root);
        nodes.sort_unstable();
        let mut out = String::from("digraph bdd {\n");
        for &n in &nodes {
            match n {
                FALSE => out.push_str("  n0 [shape=box,label=\"0\"];\n"),
                TRUE => out.push_str("  n1 [shape=box,label=\"1\"];\n"),
                _ => {
                    let node = self.nodes[n as usize];
                    let name = &self.names[node.var as usize];
                    let _ = writeln!(out, "  n{n} [label=\"{name}\"];");
                    let _ = writeln!(out, "  n{n} -> n{} [style=dashed];", node.lo);
                    let _ = writeln!(out, "  n{n} -> n{};", node.hi);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
