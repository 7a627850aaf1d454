//! Graphviz export of Hasse diagrams, bottom first.

use crate::lattice::Lattice;
use crate::poset::Poset;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A `digraph` with one node per element, one edge per cover pair pointing
/// upwards, and elements of equal height on the same rank.
pub fn poset_to_dot(p: &Poset, name: &str) -> String {
    let n = p.len();
    let mut height = vec![0usize; n];
    for x in p.linear_extension() {
        height[x] = p
            .lower_covers(x)
            .iter()
            .map(|&y| height[y] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut out = format!(
        "digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=circle];\n",
        escape(name)
    );
    for x in 0..n {
        out.push_str(&format!("  n{x} [label=\"{}\"];\n", escape(&p.name(x))));
    }
    for (lo, hi) in p.covers() {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    let levels = height.iter().copied().max().map_or(0, |h| h + 1);
    for h in 0..levels {
        let nodes: Vec<String> = (0..n)
            .filter(|&x| height[x] == h)
            .map(|x| format!("n{x}"))
            .collect();
        out.push_str(&format!("  {{ rank=same; {}; }}\n", nodes.join("; ")));
    }
    out.push_str("}\n");
    out
}

pub fn lattice_to_dot(l: &Lattice, name: &str) -> String {
    poset_to_dot(l.order(), name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square() {
        let dot = lattice_to_dot(&Lattice::boolean(2), "B2");
        assert_eq!(dot.matches("label=").count(), 4);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("{ rank=same; n0; }"));
        assert!(dot.contains("{ rank=same; n1; n2; }"));
    }

    #[test]
    fn quotes_are_escaped() {
        let p = Poset::chain(1).with_labels(vec![Some("a\"b".into())]);
        assert!(poset_to_dot(&p, "x").contains("label=\"a\\\"b\""));
    }
}
