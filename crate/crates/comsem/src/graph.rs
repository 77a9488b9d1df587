use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::{LEFT_TAG, RIGHT_TAG};

/// A finite simple graph with labeled vertices. Adjacency lists are kept
/// sorted; edges are unordered and loops are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

/// JSON shape: `{"vertices": [...], "edges": [[i, j], ...]}` with `i < j`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            edges: g.edges().iter().map(|&(i, j)| [i, j]).collect(),
            vertices: g.labels,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Graph> {
        let mut g = Graph::new(repr.vertices)?;
        for [i, j] in repr.edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }
}

impl Graph {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Graph> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Precondition("empty vertex label".into()));
            }
            if labels[..i].contains(l) {
                return Err(Error::Precondition(format!("duplicate vertex label {l:?}")));
            }
        }
        let adj = vec![Vec::new(); labels.len()];
        Ok(Graph { labels, adj })
    }

    /// Graph on `n` vertices labeled `v1..vn`.
    pub fn with_order(n: usize) -> Graph {
        Graph::new((1..=n).map(|i| format!("v{i}")).collect::<Vec<_>>())
            .expect("generated labels are distinct")
    }

    /// Convenience constructor used all over the tests.
    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::with_order(n);
        for &(i, j) in edges {
            g.add_edge(i, j).expect("edge in range");
        }
        g
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::Precondition(format!("vertex index out of range in edge {u} {v}")));
        }
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {:?}", self.labels[u])));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    /// Edges as `(i, j)` pairs with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Parse the graph file format: one `vertices:` line, then `edge:`
    /// lines referring to labels. `#` comments and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        let mut line_count = 0;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            line_count = line_no;
            let without_comment = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let line = without_comment.trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(line_no, format!("expected `key: ...`, got {line:?}")))?;
            match key.trim() {
                "vertices" => {
                    if graph.is_some() {
                        return Err(parse_err(line_no, "duplicate `vertices:` line".into()));
                    }
                    let labels: Vec<&str> = rest.split_whitespace().collect();
                    graph = Some(Graph::new(labels).map_err(|e| lift(line_no, e))?);
                }
                "edge" => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| parse_err(line_no, "`edge:` before `vertices:`".into()))?;
                    let ends: Vec<&str> = rest.split_whitespace().collect();
                    if ends.len() != 2 {
                        return Err(parse_err(line_no, "edge wants exactly two labels".into()));
                    }
                    let u = g
                        .index_of(ends[0])
                        .ok_or_else(|| parse_err(line_no, format!("unknown vertex {:?}", ends[0])))?;
                    let v = g
                        .index_of(ends[1])
                        .ok_or_else(|| parse_err(line_no, format!("unknown vertex {:?}", ends[1])))?;
                    g.add_edge(u, v).map_err(|e| lift(line_no, e))?;
                }
                other => return Err(parse_err(line_no, format!("unknown directive {other:?}"))),
            }
        }
        graph.ok_or_else(|| parse_err(line_count.max(1), "missing `vertices:` declaration".into()))
    }

    /// Same format that `parse` accepts.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.labels.join(" "));
        for (i, j) in self.edges() {
            out.push_str(&format!("edge: {} {}\n", self.labels[i], self.labels[j]));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\\\""));
        let mut out = String::from("graph {\n");
        for l in &self.labels {
            out.push_str(&format!("  {};\n", quote(l)));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  {} -- {};\n", quote(&self.labels[i]), quote(&self.labels[j])));
        }
        out.push_str("}\n");
        out
    }

    /// Join: disjoint union plus all edges across. Labels get `L:`/`R:`
    /// prefixes, matching the element names of a null union.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut labels = Vec::with_capacity(self.order() + other.order());
        labels.extend(self.labels.iter().map(|l| format!("{LEFT_TAG}{l}")));
        labels.extend(other.labels.iter().map(|l| format!("{RIGHT_TAG}{l}")));
        let mut g = Graph::new(labels).expect("prefixed labels stay distinct");
        for (i, j) in self.edges() {
            g.add_edge(i, j).unwrap();
        }
        let off = self.order();
        for (i, j) in other.edges() {
            g.add_edge(off + i, off + j).unwrap();
        }
        for i in 0..self.order() {
            for j in 0..other.order() {
                g.add_edge(i, off + j).unwrap();
            }
        }
        g
    }
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

fn lift(line: usize, e: Error) -> Error {
    match e {
        Error::Precondition(msg) => Error::Parse { line, msg },
        other => other,
    }
}

/// The commuting graph: vertices are the non-central elements, edges join
/// distinct elements that commute. Labels are the element names.
pub fn commuting_graph(s: &FiniteSemigroup) -> Graph {
    let center = s.center();
    let vertices: Vec<usize> = (0..s.order()).filter(|&x| !center.contains(x)).collect();
    let labels: Vec<String> = vertices
        .iter()
        .map(|&x| s.element_name(x).to_string())
        .collect();
    let mut g = Graph::new(labels).expect("element names are distinct");
    for (i, &x) in vertices.iter().enumerate() {
        for (j, &y) in vertices.iter().enumerate().skip(i + 1) {
            if s.commutes(x, y) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}
