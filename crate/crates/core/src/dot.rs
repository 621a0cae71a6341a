//! Full listing of the final DAG for small n, and Graphviz output.

use std::collections::HashMap;
use std::error::Error;
use std::fmt;
use std::io::{self, Write};

use crate::dag::{final_dag_children, BitNode, EdgeType};
use crate::input::InputSet;
use crate::subset::BitPattern;

/// Largest n accepted by [`dag_listing`] and [`write_dot`].
pub const DOT_MAX_N: usize = 10;

#[derive(Debug)]
pub enum DotError {
    TooLarge { n: usize },
    Empty,
    Io(io::Error),
}

impl fmt::Display for DotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DotError::TooLarge { n } => {
                write!(f, "graph export needs 1 <= n <= {DOT_MAX_N}, got {n}")
            }
            DotError::Empty => write!(f, "graph export needs n >= 1"),
            DotError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl Error for DotError {}

impl From<io::Error> for DotError {
    fn from(e: io::Error) -> Self {
        DotError::Io(e)
    }
}

/// Every node reachable from the root and every edge produced on the way.
///
/// A node reached twice is expanded once, but both edges are kept, so a
/// multi-parent node would show up as in-degree above one.
#[derive(Clone, Debug)]
pub struct DagListing {
    pub n: usize,
    /// `nodes[0]` is the root.
    pub nodes: Vec<BitPattern>,
    /// (parent index, child index, rule)
    pub edges: Vec<(usize, usize, EdgeType)>,
}

impl DagListing {
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(_, c, _) in &self.edges {
            deg[c] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(p, _, _) in &self.edges {
            deg[p] += 1;
        }
        deg
    }
}

/// Walks the DAG over positions `1..=n`. Cost grows as 2^n.
pub fn dag_listing(n: usize) -> Result<DagListing, DotError> {
    if n == 0 {
        return Err(DotError::Empty);
    }
    if n > DOT_MAX_N {
        return Err(DotError::TooLarge { n });
    }
    Ok(walk(n))
}

pub(crate) fn walk(n: usize) -> DagListing {
    let input = InputSet::new((1..=n as i64).collect()).expect("small positive values");
    let root = BitNode::root(&input);
    let mut index = HashMap::from([(root.bits.clone(), 0usize)]);
    let mut nodes = vec![root.bits.clone()];
    let mut edges = Vec::new();
    let mut stack = vec![(0usize, root)];
    while let Some((i, node)) = stack.pop() {
        for (child, edge) in final_dag_children(&node, &input) {
            let j = match index.get(&child.bits) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    index.insert(child.bits.clone(), j);
                    nodes.push(child.bits.clone());
                    stack.push((j, child));
                    j
                }
            };
            edges.push((i, j, edge));
        }
    }
    DagListing { n, nodes, edges }
}

/// Writes the DAG for `n` in DOT syntax. Nodes are labeled by bit pattern,
/// edges by rule. Returns (node count, edge count).
pub fn write_dot<W: Write>(n: usize, mut out: W) -> Result<(usize, usize), DotError> {
    let listing = dag_listing(n)?;
    writeln!(out, "digraph final_dag {{")?;
    writeln!(out, "  node [shape=box, fontname=monospace];")?;
    for (i, bits) in listing.nodes.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{bits}\"];")?;
    }
    for &(p, c, edge) in &listing.edges {
        writeln!(out, "  v{p} -> v{c} [label=\"{edge}\"];")?;
    }
    writeln!(out, "}}")?;
    Ok((listing.nodes.len(), listing.edges.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_is_a_tree_over_all_subsets() {
        for n in 1..=DOT_MAX_N {
            let l = dag_listing(n).unwrap();
            assert_eq!(l.nodes.len(), (1 << n) - 1);
            assert_eq!(l.edges.len(), (1 << n) - 2);
            let indeg = l.in_degrees();
            assert_eq!(indeg[0], 0);
            assert!(indeg[1..].iter().all(|&d| d == 1));
            assert!(l.out_degrees().iter().all(|&d| d <= 2));
        }
    }

    #[test]
    fn dot_for_three() {
        let mut buf = Vec::new();
        let (nodes, edges) = write_dot(3, &mut buf).unwrap();
        assert_eq!((nodes, edges), (7, 6));
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("digraph final_dag {"));
        assert!(text.contains("v0 [label=\"100\"]"));
        assert!(text.contains("[label=\"Type2\"]"));
        assert!(text.contains("[label=\"Incr\"]"));
        assert_eq!(text.matches("->").count(), 6);
    }

    #[test]
    fn rejects_large_n() {
        assert!(matches!(dag_listing(11), Err(DotError::TooLarge { n: 11 })));
        assert!(matches!(dag_listing(0), Err(DotError::Empty)));
    }
}
