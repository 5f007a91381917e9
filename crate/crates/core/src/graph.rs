//! Vertex-weighted oriented graphs and their edge ideals.
//!
//! Two input formats are accepted:
//!
//! * JSON: `{"vertices":[{"id":"x1","w":1},…],"edges":[["x1","x2"],…]}`
//! * edge list: one statement per line (or several separated by `;`), where
//!   a statement is `u -> v`, `w(v)=k`, or a bare vertex name. Undeclared
//!   vertices get weight 1, `#` starts a comment.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{is_identifier, Monomial, MonomialIdeal, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub w: u32,
}

#[derive(Clone, Debug)]
pub struct WeightedOrientedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

impl PartialEq for WeightedOrientedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for WeightedOrientedGraph {}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: String,
    w: i64,
}

/// Non-fatal observations made while preparing a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphWarning {
    SourceWeightReset { vertex: String, from: u32 },
    IsolatedVertex { vertex: String },
    GeneratorAbsorbed { from: String, to: String },
}

impl fmt::Display for GraphWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphWarning::SourceWeightReset { vertex, from } => write!(
                f,
                "source vertex {vertex} had weight {from}; its weight never enters the edge ideal and is set to 1"
            ),
            GraphWarning::IsolatedVertex { vertex } => write!(
                f,
                "vertex {vertex} is isolated; it stays in the polynomial ring and raises the depth"
            ),
            GraphWarning::GeneratorAbsorbed { from, to } => write!(
                f,
                "generator of edge {from} -> {to} is divisible by another generator and was dropped"
            ),
        }
    }
}

impl WeightedOrientedGraph {
    /// Validates and builds a graph; vertex order is kept as given.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = (String, i64)>,
        E: IntoIterator<Item = (String, String)>,
    {
        let mut verts = Vec::new();
        let mut index = HashMap::new();
        for (id, w) in vertices {
            if !is_identifier(&id) {
                return Err(Error::InvalidVertexName(id));
            }
            if w < 1 || w > i64::from(u32::MAX) {
                return Err(Error::NonPositiveWeight { vertex: id, weight: w });
            }
            if index.insert(id.clone(), verts.len()).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
            verts.push(Vertex { id, w: w as u32 });
        }
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        let mut edge_list = Vec::new();
        for (u, v) in edges {
            let a = *index.get(&u).ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let b = *index.get(&v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            if a == b {
                return Err(Error::Loop(u));
            }
            if seen.contains_key(&(a, b)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            if seen.contains_key(&(b, a)) {
                return Err(Error::Bidirected(u, v));
            }
            seen.insert((a, b), ());
            edge_list.push((a, b));
        }
        Ok(WeightedOrientedGraph {
            vertices: verts,
            edges: edge_list,
            index,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_parts(vertices: &[(&str, i64)], edges: &[(&str, &str)]) -> Result<Self> {
        WeightedOrientedGraph::new(
            vertices.iter().map(|&(v, w)| (v.to_owned(), w)),
            edges.iter().map(|&(u, v)| (u.to_owned(), v.to_owned())),
        )
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.vertices[v].w
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, b)| b == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, _)| a == v).count()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_degree(v) == 0
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.edges.iter().all(|&(a, b)| a != v && b != v)
    }

    /// Weight with sources counted as 1.
    pub fn normalized_weight(&self, v: usize) -> u32 {
        if self.is_source(v) {
            1
        } else {
            self.vertices[v].w
        }
    }

    /// Non-source vertices whose weight is below 2.
    pub fn hypothesis_violations(&self) -> Vec<String> {
        (0..self.num_vertices())
            .filter(|&v| !self.is_source(v) && self.weight(v) < 2)
            .map(|v| self.name(v).to_owned())
            .collect()
    }

    /// Sources declared with a weight other than 1.
    pub fn weighted_sources(&self) -> Vec<String> {
        (0..self.num_vertices())
            .filter(|&v| self.is_source(v) && self.weight(v) != 1)
            .map(|v| self.name(v).to_owned())
            .collect()
    }

    /// Weakly connected components, each sorted, in order of least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            let k = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(v);
        }
        groups
    }

    /// Induced subgraph on `keep`, preserving vertex order.
    pub fn induced(&self, keep: &[usize]) -> WeightedOrientedGraph {
        let inside: Vec<bool> = (0..self.num_vertices()).map(|v| keep.contains(&v)).collect();
        WeightedOrientedGraph::new(
            (0..self.num_vertices())
                .filter(|&v| inside[v])
                .map(|v| (self.name(v).to_owned(), i64::from(self.weight(v)))),
            self.edges
                .iter()
                .filter(|&&(a, b)| inside[a] && inside[b])
                .map(|&(a, b)| (self.name(a).to_owned(), self.name(b).to_owned())),
        )
        .expect("induced subgraph of a valid graph is valid")
    }

    /// Same graph with new weights, in vertex order.
    pub fn with_weights(&self, weights: &[u32]) -> Result<WeightedOrientedGraph> {
        WeightedOrientedGraph::new(
            self.vertices
                .iter()
                .zip(weights)
                .map(|(v, &w)| (v.id.clone(), i64::from(w))),
            self.edges
                .iter()
                .map(|&(a, b)| (self.name(a).to_owned(), self.name(b).to_owned())),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        WeightedOrientedGraph::new(
            raw.vertices.into_iter().map(|v| (v.id, v.w)),
            raw.edges,
        )
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    w: i64::from(v.w),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.name(a).to_owned(), self.name(b).to_owned()))
                .collect(),
        };
        serde_json::to_string(&raw).expect("graph serializes")
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut order: Vec<String> = Vec::new();
        let mut weights: HashMap<String, i64> = HashMap::new();
        let mut edges = Vec::new();

        let declare = |name: &str, order: &mut Vec<String>| {
            if !order.iter().any(|n| n == name) {
                order.push(name.to_owned());
            }
        };

        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let content = line.split('#').next().unwrap_or("");
            let mut col = 0;
            for stmt in content.split(';') {
                let lead = stmt.len() - stmt.trim_start().len();
                let column = col + lead + 1;
                col += stmt.len() + 1;
                let stmt = stmt.trim();
                if stmt.is_empty() {
                    continue;
                }
                let syntax = |message: String| Error::Syntax {
                    line: line_no,
                    column,
                    message,
                };
                if let Some(rest) = stmt.strip_prefix("w(") {
                    let (name, value) = rest
                        .split_once(')')
                        .ok_or_else(|| syntax("expected `)` in weight statement".into()))?;
                    let name = name.trim();
                    let value = value
                        .trim()
                        .strip_prefix('=')
                        .ok_or_else(|| syntax("expected `=` in weight statement".into()))?
                        .trim();
                    let w: i64 = value
                        .parse()
                        .map_err(|_| syntax(format!("`{value}` is not an integer weight")))?;
                    check_name(name, &syntax)?;
                    if let Some(prev) = weights.insert(name.to_owned(), w) {
                        if prev != w {
                            return Err(syntax(format!("conflicting weights for `{name}`")));
                        }
                    }
                    declare(name, &mut order);
                } else if let Some((u, v)) = stmt.split_once("->") {
                    let (u, v) = (u.trim(), v.trim());
                    check_name(u, &syntax)?;
                    check_name(v, &syntax)?;
                    declare(u, &mut order);
                    declare(v, &mut order);
                    edges.push((u.to_owned(), v.to_owned()));
                } else {
                    check_name(stmt, &syntax)?;
                    declare(stmt, &mut order);
                }
            }
        }
        WeightedOrientedGraph::new(
            order.into_iter().map(|n| {
                let w = weights.get(&n).copied().unwrap_or(1);
                (n, w)
            }),
            edges,
        )
    }

    /// Edge-list text that parses back to an equal graph.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("w({})={}\n", v.id, v.w));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} -> {}\n", self.name(a), self.name(b)));
        }
        out
    }

    /// Polynomial ring of the edge ideal: one variable per vertex.
    pub fn variables(&self) -> Result<VarSet> {
        VarSet::new(self.vertices.iter().map(|v| v.id.clone()))
    }
}

fn check_name(name: &str, syntax: &impl Fn(String) -> Error) -> Result<()> {
    if is_identifier(name) {
        Ok(())
    } else {
        Err(syntax(format!("`{name}` is not a valid vertex name")))
    }
}

/// Reads JSON when the input starts with `{`, the edge-list format otherwise.
pub fn parse_graph(input: &str) -> Result<WeightedOrientedGraph> {
    if input.trim_start().starts_with('{') {
        WeightedOrientedGraph::from_json(input)
    } else {
        WeightedOrientedGraph::from_edge_list(input)
    }
}

/// Component count and roots of a rooted forest; isolated vertices count
/// as one-vertex trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestShape {
    pub components: usize,
    pub roots: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyTag {
    /// All edges leave the center.
    Star1 { center: String },
    /// All edges enter the center.
    Star2 { center: String },
    /// One edge enters the center, the others leave it.
    Star3 { center: String },
    RootedForest(ForestShape),
    OrientedCycle,
    Other,
}

impl FamilyTag {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyTag::Star1 { .. } => "star-out",
            FamilyTag::Star2 { .. } => "star-in",
            FamilyTag::Star3 { .. } => "star-in-out",
            FamilyTag::RootedForest(_) => "rooted-forest",
            FamilyTag::OrientedCycle => "oriented-cycle",
            FamilyTag::Other => "other",
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(
            self,
            FamilyTag::Star1 { .. } | FamilyTag::Star2 { .. } | FamilyTag::Star3 { .. }
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Star1 { center } | FamilyTag::Star2 { center } | FamilyTag::Star3 { center } => {
                write!(f, "{} (center {center})", self.label())
            }
            FamilyTag::RootedForest(shape) => write!(
                f,
                "rooted-forest ({} component{}, roots {})",
                shape.components,
                if shape.components == 1 { "" } else { "s" },
                shape.roots.join(",")
            ),
            _ => f.write_str(self.label()),
        }
    }
}

/// Family tag plus the forest shape whenever the graph is also a rooted
/// forest (out-stars and in-out stars are).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub tag: FamilyTag,
    pub forest: Option<ForestShape>,
}

/// Classifies with precedence cycle > star > forest > other. Isolated
/// vertices are ignored for the cycle and star patterns.
pub fn classify(d: &WeightedOrientedGraph) -> Result<Classification> {
    if d.num_edges() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let n = d.num_vertices();
    let indeg: Vec<usize> = (0..n).map(|v| d.in_degree(v)).collect();
    let outdeg: Vec<usize> = (0..n).map(|v| d.out_degree(v)).collect();
    let active: Vec<usize> = (0..n).filter(|&v| indeg[v] + outdeg[v] > 0).collect();
    let components = d.components();
    let active_components = components
        .iter()
        .filter(|c| c.iter().any(|&v| indeg[v] + outdeg[v] > 0))
        .count();
    let e = d.num_edges();

    let forest = (e + components.len() == n && indeg.iter().all(|&k| k <= 1)).then(|| {
        ForestShape {
            components: components.len(),
            roots: (0..n)
                .filter(|&v| indeg[v] == 0)
                .map(|v| d.name(v).to_owned())
                .collect(),
        }
    });

    let is_cycle = active_components == 1
        && e == active.len()
        && active.iter().all(|&v| indeg[v] == 1 && outdeg[v] == 1);
    if is_cycle {
        return Ok(Classification {
            tag: FamilyTag::OrientedCycle,
            forest,
        });
    }

    if active_components == 1 && e >= 2 && e + 1 == active.len() {
        if let Some(&c) = active.iter().find(|&&v| indeg[v] + outdeg[v] == e) {
            let center = d.name(c).to_owned();
            let tag = match (indeg[c], outdeg[c]) {
                (0, _) => Some(FamilyTag::Star1 { center }),
                (_, 0) => Some(FamilyTag::Star2 { center }),
                (1, _) => Some(FamilyTag::Star3 { center }),
                _ => None,
            };
            if let Some(tag) = tag {
                return Ok(Classification { tag, forest });
            }
        }
    }

    let tag = match &forest {
        Some(shape) => FamilyTag::RootedForest(shape.clone()),
        None => FamilyTag::Other,
    };
    Ok(Classification { tag, forest })
}

/// Sets every source weight to 1, reporting each change.
pub fn normalize_source_weights(
    d: &WeightedOrientedGraph,
) -> (WeightedOrientedGraph, Vec<GraphWarning>) {
    let mut out = d.clone();
    let mut warnings = Vec::new();
    for v in 0..d.num_vertices() {
        if d.is_source(v) && d.weight(v) != 1 {
            warnings.push(GraphWarning::SourceWeightReset {
                vertex: d.name(v).to_owned(),
                from: d.weight(v),
            });
            out.vertices[v].w = 1;
        }
    }
    (out, warnings)
}

/// `I(D) = (x_u x_v^{w(v)} : (u, v) ∈ E)` over one variable per vertex.
pub fn edge_ideal(d: &WeightedOrientedGraph) -> Result<MonomialIdeal> {
    edge_ideal_with_warnings(d).map(|(i, _)| i)
}

/// [`edge_ideal`] plus warnings for isolated vertices and for generators
/// lost to minimalization.
pub fn edge_ideal_with_warnings(
    d: &WeightedOrientedGraph,
) -> Result<(MonomialIdeal, Vec<GraphWarning>)> {
    if d.num_edges() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let vars = d.variables()?;
    let gens = d
        .edges
        .iter()
        .map(|&(a, b)| {
            let mut exps = vec![0u32; vars.len()];
            exps[a] = 1;
            exps[b] = d.weight(b);
            Monomial::new(&vars, exps)
        })
        .collect::<Result<Vec<_>>>()?;
    let ideal = MonomialIdeal::new(&vars, gens.iter().cloned())?;

    let mut warnings: Vec<GraphWarning> = (0..d.num_vertices())
        .filter(|&v| d.is_isolated(v))
        .map(|v| GraphWarning::IsolatedVertex {
            vertex: d.name(v).to_owned(),
        })
        .collect();
    for (g, &(a, b)) in gens.iter().zip(&d.edges) {
        if !ideal.generators().contains(g) {
            warnings.push(GraphWarning::GeneratorAbsorbed {
                from: d.name(a).to_owned(),
                to: d.name(b).to_owned(),
            });
        }
    }
    Ok((ideal, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(v: &[(&str, i64)], e: &[(&str, &str)]) -> WeightedOrientedGraph {
        WeightedOrientedGraph::from_parts(v, e).unwrap()
    }

    fn numbered(weights: &[i64], edges: &[(usize, usize)]) -> WeightedOrientedGraph {
        WeightedOrientedGraph::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, &w)| (format!("x{}", i + 1), w)),
            edges
                .iter()
                .map(|&(a, b)| (format!("x{a}"), format!("x{b}"))),
        )
        .unwrap()
    }

    #[test]
    fn parses_json() {
        let d = parse_graph(
            r#"{"vertices":[{"id":"x1","w":1},{"id":"x2","w":2}],"edges":[["x1","x2"]]}"#,
        )
        .unwrap();
        assert_eq!(d, graph(&[("x1", 1), ("x2", 2)], &[("x1", "x2")]));
    }

    #[test]
    fn json_syntax_errors_have_positions() {
        let err = parse_graph("{\"vertices\": [\n  {\"id\": \"x1\", \"w\": }]}").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn parses_edge_list() {
        let d = parse_graph("x1 -> x2 ; w(x2)=3\n").unwrap();
        assert_eq!(d, graph(&[("x1", 1), ("x2", 3)], &[("x1", "x2")]));
        assert_eq!(parse_graph(&d.to_edge_list()).unwrap(), d);

        let d = parse_graph("# path\nx1 -> x2  # first\nx2->x3\nw(x3) = 2\nx9\n").unwrap();
        assert_eq!(d.num_vertices(), 4);
        assert_eq!(d.weight(2), 2);
        assert!(d.is_isolated(3));
    }

    #[test]
    fn edge_list_errors_have_positions() {
        assert_eq!(
            parse_graph("x1 -> x2\nw(x2=3\n").unwrap_err(),
            Error::Syntax {
                line: 2,
                column: 1,
                message: "expected `)` in weight statement".into()
            }
        );
        assert!(matches!(
            parse_graph("x1 -> x2; w(x2)=two").unwrap_err(),
            Error::Syntax { line: 1, column: 11, .. }
        ));
        assert!(matches!(
            parse_graph("x1 -> 2x").unwrap_err(),
            Error::Syntax { line: 1, .. }
        ));
    }

    #[test]
    fn validation() {
        assert_eq!(parse_graph("x1 -> x1").unwrap_err(), Error::Loop("x1".into()));
        assert_eq!(
            parse_graph("x1 -> x2\nx1 -> x2").unwrap_err(),
            Error::DuplicateEdge("x1".into(), "x2".into())
        );
        assert_eq!(
            parse_graph("x1 -> x2\nx2 -> x1").unwrap_err(),
            Error::Bidirected("x2".into(), "x1".into())
        );
        assert_eq!(
            parse_graph("x1 -> x2; w(x2)=0").unwrap_err(),
            Error::NonPositiveWeight {
                vertex: "x2".into(),
                weight: 0
            }
        );
        assert_eq!(
            parse_graph(r#"{"vertices":[{"id":"a","w":1}],"edges":[["a","b"]]}"#).unwrap_err(),
            Error::UnknownVertex("b".into())
        );
    }

    #[test]
    fn classifies_stars() {
        let c = classify(&numbered(&[1, 2, 2, 2], &[(1, 2), (1, 3), (1, 4)])).unwrap();
        assert_eq!(c.tag, FamilyTag::Star1 { center: "x1".into() });
        assert_eq!(c.forest.as_ref().map(|f| f.components), Some(1));

        let c = classify(&numbered(&[2, 1, 1], &[(2, 1), (3, 1)])).unwrap();
        assert_eq!(c.tag, FamilyTag::Star2 { center: "x1".into() });
        assert!(c.forest.is_none());

        let c = classify(&numbered(&[1, 2, 2, 2], &[(1, 2), (2, 3), (2, 4)])).unwrap();
        assert_eq!(c.tag, FamilyTag::Star3 { center: "x2".into() });
        assert!(c.forest.is_some());

        // two in-edges, one out-edge: neither a star pattern nor a forest
        let c = classify(&numbered(&[1, 2, 1, 2], &[(1, 2), (3, 2), (2, 4)])).unwrap();
        assert_eq!(c.tag, FamilyTag::Other);
    }

    #[test]
    fn in_star_takes_precedence() {
        let c = classify(&numbered(&[1, 2, 1], &[(1, 2), (3, 2)])).unwrap();
        assert_eq!(c.tag, FamilyTag::Star2 { center: "x2".into() });
    }

    #[test]
    fn classifies_cycles_and_forests() {
        let c = classify(&numbered(&[2, 2, 2], &[(1, 2), (2, 3), (3, 1)])).unwrap();
        assert_eq!(c.tag, FamilyTag::OrientedCycle);

        // a triangle that is not oriented cyclically
        let c = classify(&numbered(&[2, 2, 2], &[(1, 2), (2, 3), (1, 3)])).unwrap();
        assert_eq!(c.tag, FamilyTag::Other);

        let c = classify(&numbered(&[1, 2], &[(1, 2)])).unwrap();
        assert_eq!(
            c.tag,
            FamilyTag::RootedForest(ForestShape {
                components: 1,
                roots: vec!["x1".into()]
            })
        );

        let c = classify(&numbered(&[1, 2, 1, 2], &[(1, 2), (3, 4)])).unwrap();
        assert_eq!(
            c.tag,
            FamilyTag::RootedForest(ForestShape {
                components: 2,
                roots: vec!["x1".into(), "x3".into()]
            })
        );

        // path oriented towards its end: in-degree ≤ 1 but rooted at x4
        let c = classify(&numbered(&[2, 2, 2, 1], &[(2, 1), (3, 2), (4, 3)])).unwrap();
        assert!(matches!(c.tag, FamilyTag::RootedForest(_)));

        // toward-root tree with a vertex of in-degree 2 that is not a star
        let c = classify(&numbered(&[2, 1, 1, 1, 2], &[(2, 1), (3, 1), (4, 3), (1, 5)]))
            .unwrap();
        assert_eq!(c.tag, FamilyTag::Other);
    }

    #[test]
    fn edgeless_graph_is_rejected() {
        let d = numbered(&[1, 1], &[]);
        assert_eq!(classify(&d), Err(Error::EdgelessGraph));
        assert_eq!(edge_ideal(&d), Err(Error::EdgelessGraph));
    }

    #[test]
    fn normalizes_sources() {
        let d = numbered(&[2, 2, 2], &[(1, 2), (1, 3)]);
        let (n, warnings) = normalize_source_weights(&d);
        assert_eq!(n.weight(0), 1);
        assert_eq!(n.weight(1), 2);
        assert_eq!(
            warnings,
            [GraphWarning::SourceWeightReset {
                vertex: "x1".into(),
                from: 2
            }]
        );
        assert_eq!(edge_ideal(&n).unwrap(), edge_ideal(&d).unwrap());

        let cycle = numbered(&[2, 3, 2], &[(1, 2), (2, 3), (3, 1)]);
        let (same, warnings) = normalize_source_weights(&cycle);
        assert_eq!(same, cycle);
        assert!(warnings.is_empty());

        let (again, warnings) = normalize_source_weights(&n);
        assert_eq!(again, n);
        assert!(warnings.is_empty());
    }

    #[test]
    fn edge_ideals() {
        let path = numbered(&[1, 3, 1, 2, 5], &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(
            edge_ideal(&path).unwrap().to_string(),
            "(x2*x3, x3*x4^2, x1*x2^3, x4*x5^5)"
        );
        assert_eq!(
            edge_ideal(&numbered(&[1, 3], &[(1, 2)])).unwrap().to_string(),
            "(x1*x2^3)"
        );
        assert_eq!(
            edge_ideal(&numbered(&[2, 2, 2], &[(1, 2), (2, 3), (3, 1)]))
                .unwrap()
                .to_string(),
            "(x1^2*x3, x1*x2^2, x2*x3^2)"
        );
    }

    #[test]
    fn isolated_vertices_stay_in_the_ring() {
        let d = numbered(&[1, 2, 1], &[(1, 2)]);
        let (i, warnings) = edge_ideal_with_warnings(&d).unwrap();
        assert_eq!(i.vars().len(), 3);
        assert_eq!(
            warnings,
            [GraphWarning::IsolatedVertex {
                vertex: "x3".into()
            }]
        );
    }
}
