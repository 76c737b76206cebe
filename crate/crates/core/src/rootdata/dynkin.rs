use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::CartanData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    /// `○`
    Even,
    /// `⊗`
    Isotropic,
    /// `●`
    OddNonIsotropic,
}

impl NodeKind {
    fn glyph(self) -> &'static str {
        match self {
            NodeKind::Even => "o",
            NodeKind::Isotropic => "(x)",
            NodeKind::OddNonIsotropic => "*",
        }
    }
}

/// An edge between positions `i < j`. `arrow_to` names the endpoint the
/// arrow points at, if the two Cartan entries differ in size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinEdge {
    pub i: usize,
    pub j: usize,
    pub multiplicity: i64,
    pub arrow_to: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub labels: Vec<usize>,
    pub kinds: Vec<NodeKind>,
    pub edges: Vec<DynkinEdge>,
}

impl DynkinDiagram {
    pub fn new(c: &CartanData) -> Self {
        let kinds = (0..c.len())
            .map(|i| match (c.odd[i], c.isotropic(i)) {
                (false, _) => NodeKind::Even,
                (true, true) => NodeKind::Isotropic,
                (true, false) => NodeKind::OddNonIsotropic,
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let (x, y) = (c.a[i][j].abs(), c.a[j][i].abs());
                if x == 0 && y == 0 {
                    continue;
                }
                // the arrow points at the node whose row carries the larger entry
                let arrow_to = match x.cmp(&y) {
                    std::cmp::Ordering::Less => Some(j),
                    std::cmp::Ordering::Greater => Some(i),
                    std::cmp::Ordering::Equal => None,
                };
                edges.push(DynkinEdge { i, j, multiplicity: x.max(y), arrow_to });
            }
        }
        DynkinDiagram { labels: c.labels.clone(), kinds, edges }
    }

    fn edge(&self, i: usize, j: usize) -> Option<&DynkinEdge> {
        self.edges.iter().find(|e| (e.i, e.j) == (i.min(j), i.max(j)))
    }

    /// Chain rendering when the diagram is a path in position order,
    /// otherwise a node list followed by an edge list.
    pub fn to_ascii(&self) -> String {
        let n = self.labels.len();
        let is_chain = self.edges.len() + 1 == n && self.edges.iter().all(|e| e.j == e.i + 1);
        let mut out = String::new();
        if is_chain {
            let mut top = String::new();
            let mut bottom = String::new();
            for p in 0..n {
                let g = self.kinds[p].glyph();
                let lab = self.labels[p].to_string();
                let w = g.len().max(lab.len());
                let _ = write!(top, "{g:^w$}");
                let _ = write!(bottom, "{lab:^w$}");
                if p + 1 < n {
                    let link = self.link(self.edge(p, p + 1).expect("chain edge"), p);
                    top.push_str(&link);
                    bottom.push_str(&" ".repeat(link.len()));
                }
            }
            out.push_str(top.trim_end());
            out.push('\n');
            out.push_str(bottom.trim_end());
            out.push('\n');
        } else {
            for p in 0..n {
                let _ = writeln!(out, "{} {}", self.labels[p], self.kinds[p].glyph());
            }
            for e in &self.edges {
                let _ = writeln!(out, "{} {} {}", self.labels[e.i], self.link(e, e.i), self.labels[e.j]);
            }
        }
        out
    }

    fn link(&self, e: &DynkinEdge, from: usize) -> String {
        let bar = match e.multiplicity {
            1 => "-",
            2 => "=",
            _ => "#",
        };
        let body = bar.repeat(3);
        match e.arrow_to {
            None => body,
            Some(t) if t == from => format!("<{}", &body[1..]),
            Some(_) => format!("{}>", &body[1..]),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dynkin {\n  rankdir=LR;\n");
        for p in 0..self.labels.len() {
            let (shape, style) = match self.kinds[p] {
                NodeKind::Even => ("circle", ""),
                NodeKind::Isotropic => ("circle", ", label=\"X\""),
                NodeKind::OddNonIsotropic => ("circle", ", style=filled, fillcolor=black, fontcolor=white"),
            };
            let label = if self.kinds[p] == NodeKind::Isotropic {
                String::new()
            } else {
                format!(", label=\"{}\"", self.labels[p])
            };
            let _ = writeln!(
                out,
                "  n{} [shape={shape}{label}{style}, xlabel=\"{}\"];",
                self.labels[p], self.labels[p]
            );
        }
        for e in &self.edges {
            let dir = match e.arrow_to {
                None => String::new(),
                Some(t) if t == e.j => ", dir=forward".into(),
                Some(_) => ", dir=back".into(),
            };
            let _ = writeln!(
                out,
                "  n{} -- n{} [penwidth={}{dir}];",
                self.labels[e.i], self.labels[e.j], e.multiplicity
            );
        }
        out.push_str("}\n");
        out
    }
}
