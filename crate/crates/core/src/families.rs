//! Deterministic enumeration of stars, rooted forests and oriented cycles.
//!
//! Vertices are named `x1, x2, …`. Sources get weight 1; every other vertex
//! ranges over the supplied weight set.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::graph::WeightedOrientedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarKind {
    /// Every edge leaves the center.
    Out,
    /// Every edge enters the center.
    In,
    /// One edge enters the center, the rest leave it.
    InOut,
}

impl StarKind {
    pub const ALL: [StarKind; 3] = [StarKind::Out, StarKind::In, StarKind::InOut];
}

fn build(weights: &[u32], edges: &[(usize, usize)]) -> Result<WeightedOrientedGraph> {
    let names: Vec<String> = (1..=weights.len()).map(|i| format!("x{i}")).collect();
    WeightedOrientedGraph::new(
        names.iter().cloned().zip(weights.iter().map(|&w| i64::from(w))),
        edges
            .iter()
            .map(|&(a, b)| (names[a].clone(), names[b].clone())),
    )
}

/// All vectors of length `n` over `set`, last coordinate varying fastest.
fn words(set: &[u32], n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                set.iter().map(move |&s| {
                    let mut next = w.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    out
}

/// The oriented cycle `x1 → x2 → … → xn → x1`.
pub fn cycle(weights: &[u32]) -> Result<WeightedOrientedGraph> {
    let n = weights.len();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(weights, &edges)
}

pub fn cycles(n: usize, weight_set: &[u32]) -> Result<Vec<WeightedOrientedGraph>> {
    words(weight_set, n).iter().map(|w| cycle(w)).collect()
}

/// A star with center `x1` and leaves `x2..xn`. For [`StarKind::InOut`] the
/// entering edge comes from `x2`. `weights` lists every vertex.
pub fn star(kind: StarKind, weights: &[u32]) -> Result<WeightedOrientedGraph> {
    let n = weights.len();
    let edges: Vec<_> = (1..n)
        .map(|leaf| match kind {
            StarKind::Out => (0, leaf),
            StarKind::In => (leaf, 0),
            StarKind::InOut if leaf == 1 => (1, 0),
            StarKind::InOut => (0, leaf),
        })
        .collect();
    build(weights, &edges)
}

/// All stars of one orientation on `n` vertices with sources of weight 1.
pub fn stars(kind: StarKind, n: usize, weight_set: &[u32]) -> Result<Vec<WeightedOrientedGraph>> {
    let shapes: Vec<Vec<u32>> = match kind {
        StarKind::Out => words(weight_set, n - 1)
            .into_iter()
            .map(|w| [vec![1], w].concat())
            .collect(),
        StarKind::In => weight_set
            .iter()
            .map(|&c| [vec![c], vec![1; n - 1]].concat())
            .collect(),
        StarKind::InOut => words(weight_set, n - 2)
            .into_iter()
            .flat_map(|w| {
                weight_set
                    .iter()
                    .map(move |&c| [vec![c, 1], w.clone()].concat())
            })
            .collect(),
    };
    shapes.iter().map(|w| star(kind, w)).collect()
}

/// Children lists of a rooted tree, root at index 0.
type Tree = Vec<Vec<usize>>;

fn canonical(tree: &Tree, v: usize) -> String {
    let mut kids: Vec<String> = tree[v].iter().map(|&c| canonical(tree, c)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn parse_canonical(s: &str) -> Tree {
    let mut tree: Tree = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for b in s.bytes() {
        if b == b'(' {
            let id = tree.len();
            tree.push(Vec::new());
            if let Some(&p) = stack.last() {
                tree[p].push(id);
            }
            stack.push(id);
        } else {
            stack.pop();
        }
    }
    tree
}

/// Canonical strings of the unlabeled rooted trees on `size` vertices.
fn rooted_trees(size: usize) -> Vec<String> {
    let mut level: BTreeSet<String> = BTreeSet::from(["()".to_owned()]);
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for s in &level {
            let tree = parse_canonical(s);
            for v in 0..tree.len() {
                let mut t = tree.clone();
                t.push(Vec::new());
                let leaf = t.len() - 1;
                t[v].push(leaf);
                next.insert(canonical(&t, 0));
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Unlabeled rooted forests with `edges` edges and no isolated vertex, as
/// lists of canonical tree strings (nonincreasing in size).
fn forest_shapes(edges: usize) -> Vec<Vec<String>> {
    fn go(
        left: usize,
        max_part: usize,
        min_index: usize,
        cache: &[Vec<String>],
        acc: &mut Vec<String>,
        out: &mut Vec<Vec<String>>,
    ) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=left.min(max_part)).rev() {
            let trees = cache[part].clone();
            let start = if part == max_part { min_index } else { 0 };
            for (idx, t) in trees.iter().enumerate().skip(start) {
                acc.push(t.clone());
                go(left - part, part, idx, cache, acc, out);
                acc.pop();
            }
        }
    }
    let cache: Vec<Vec<String>> = (0..=edges).map(|e| rooted_trees(e + 1)).collect();
    let mut out = Vec::new();
    go(edges, edges, 0, &cache, &mut Vec::new(), &mut out);
    out
}

/// One labeled representative per shape: trees in order, vertices numbered
/// breadth-first, edges oriented parent → child. Returns the edges and the
/// root flags.
fn label_forest(shape: &[String]) -> (Vec<(usize, usize)>, Vec<bool>) {
    let mut edges = Vec::new();
    let mut is_root = Vec::new();
    for s in shape {
        let tree = parse_canonical(s);
        let base = is_root.len();
        let mut order = vec![0usize];
        let mut label = vec![0usize; tree.len()];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            label[v] = head;
            order.extend(tree[v].iter().copied());
            head += 1;
        }
        for v in 0..tree.len() {
            for &c in &tree[v] {
                edges.push((base + label[v], base + label[c]));
            }
        }
        is_root.push(true);
        is_root.extend(std::iter::repeat_n(false, tree.len() - 1));
    }
    edges.sort_unstable();
    (edges, is_root)
}

/// Number of unlabeled rooted-forest shapes with `edges` edges.
pub fn forest_shape_count(edges: usize) -> usize {
    forest_shapes(edges).len()
}

/// Every rooted forest with exactly `edges` edges (one per shape) under
/// every assignment of `weight_set` to the non-root vertices.
pub fn forests(edges: usize, weight_set: &[u32]) -> Result<Vec<WeightedOrientedGraph>> {
    let mut out = Vec::new();
    for shape in forest_shapes(edges) {
        let (e, is_root) = label_forest(&shape);
        for w in words(weight_set, edges) {
            let mut it = w.into_iter();
            let weights: Vec<u32> = is_root
                .iter()
                .map(|&r| if r { 1 } else { it.next().unwrap() })
                .collect();
            out.push(build(&weights, &e)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{classify, FamilyTag};

    #[test]
    fn rooted_tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| rooted_trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn forest_shape_counts() {
        // forests without isolated vertices, by edge count
        let counts: Vec<usize> = (1..=5).map(forest_shape_count).collect();
        assert_eq!(counts, [1, 3, 7, 19, 47]);
    }

    #[test]
    fn forests_classify_as_forests() {
        for d in forests(4, &[2]).unwrap() {
            assert!(classify(&d).unwrap().forest.is_some(), "{}", d.to_edge_list());
        }
    }

    #[test]
    fn cycle_and_star_shapes() {
        let c = cycles(4, &[2, 3]).unwrap();
        assert_eq!(c.len(), 16);
        assert_eq!(classify(&c[0]).unwrap().tag, FamilyTag::OrientedCycle);
        assert_eq!(stars(StarKind::Out, 4, &[2, 3, 4]).unwrap().len(), 27);
        assert_eq!(stars(StarKind::In, 4, &[2, 3, 4]).unwrap().len(), 3);
        assert_eq!(stars(StarKind::InOut, 4, &[2, 3, 4]).unwrap().len(), 27);
        for kind in StarKind::ALL {
            let d = &stars(kind, 5, &[2]).unwrap()[0];
            assert!(classify(d).unwrap().tag.is_star());
        }
    }
}
