//! The whitespace-free graph spec language shared by the library and CLI.
//!
//! ```text
//! graph   := K<n> | E<n> | C<n> | P<n> | W<n>
//!          | KP:<m1>,<m2>,...           complete multipartite
//!          | J:(<graph>,<graph>,...)    join
//!          | EL:n=<n>;<i>-<j>,...       edge list, 1-based labels
//!          | cone:<graph>               <graph> + K1
//! bipart  := D:<graph>                  bipartite double
//!          | EL2:p=<p>,q=<q>;<i>-<j>,.. explicit bipartite edges, 1-based per side
//!          | <graph>                    must be bipartite; side of vertex 1 is V1
//! ```
//!
//! Number lists inside `KP:` and `EL:` are read greedily, so inside a join a
//! trailing number belongs to the preceding `KP:` list.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{as_bipartite, bipartite_double, join, make_graph, BipartiteGraph, Family, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Family(Family),
    Join(Vec<GraphSpec>),
    Cone(Box<GraphSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteSpec {
    Double(GraphSpec),
    EdgeList { p: usize, q: usize, edges: Vec<(usize, usize)> },
    Plain(GraphSpec),
}

impl GraphSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.graph()?;
        p.finish()?;
        Ok(spec)
    }

    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Family(f) => make_graph(f),
            GraphSpec::Join(parts) => {
                let graphs = parts.iter().map(GraphSpec::build).collect::<Result<Vec<_>>>()?;
                join(&graphs)
            }
            GraphSpec::Cone(inner) => join(&[inner.build()?, Graph::complete(1)]),
        }
    }

    /// If this spec denotes `H + K_1` syntactically, the spec of `H`.
    ///
    /// Wheels count (`W_n = C_n + K_1`), as do joins whose last part is `K1`.
    pub fn cone_base(&self) -> Option<GraphSpec> {
        match self {
            GraphSpec::Cone(inner) => Some((**inner).clone()),
            GraphSpec::Family(Family::Wheel(n)) => Some(GraphSpec::Family(Family::Cycle(*n))),
            GraphSpec::Join(parts) if parts.len() >= 2 => {
                let last = parts.last().unwrap();
                if matches!(last, GraphSpec::Family(Family::Complete(1))) {
                    let rest = &parts[..parts.len() - 1];
                    Some(if rest.len() == 1 {
                        rest[0].clone()
                    } else {
                        GraphSpec::Join(rest.to_vec())
                    })
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl BipartiteSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = if p.eat("D:") {
            BipartiteSpec::Double(p.graph()?)
        } else if p.eat("EL2:") {
            p.expect("p=")?;
            let np = p.number()?;
            p.expect(",q=")?;
            let nq = p.number()?;
            p.expect(";")?;
            let edges = p.edge_list()?;
            BipartiteSpec::EdgeList { p: np, q: nq, edges }
        } else {
            BipartiteSpec::Plain(p.graph()?)
        };
        p.finish()?;
        Ok(spec)
    }

    pub fn build(&self) -> Result<BipartiteGraph> {
        match self {
            BipartiteSpec::Double(g) => Ok(bipartite_double(&g.build()?)),
            BipartiteSpec::EdgeList { p, q, edges } => {
                let mut zero_based = Vec::with_capacity(edges.len());
                for &(i, j) in edges {
                    if i == 0 || i > *p || j == 0 || j > *q {
                        return Err(Error::InvalidGraph(format!(
                            "bipartite edge {i}-{j} outside 1..{p} x 1..{q}"
                        )));
                    }
                    zero_based.push((i - 1, j - 1));
                }
                BipartiteGraph::new(*p, *q, zero_based)
            }
            BipartiteSpec::Plain(g) => as_bipartite(&g.build()?),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Family(fam) => match fam {
                Family::Complete(n) => write!(f, "K{n}"),
                Family::Empty(n) => write!(f, "E{n}"),
                Family::Cycle(n) => write!(f, "C{n}"),
                Family::Path(n) => write!(f, "P{n}"),
                Family::Wheel(n) => write!(f, "W{n}"),
                Family::CompleteMultipartite(parts) => write!(f, "KP:{}", join_display(parts, ",")),
                Family::EdgeList { n, edges } => write!(f, "EL:n={n};{}", edges_display(edges)),
            },
            GraphSpec::Join(parts) => write!(f, "J:({})", join_display(parts, ",")),
            GraphSpec::Cone(inner) => write!(f, "cone:{inner}"),
        }
    }
}

impl fmt::Display for BipartiteSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BipartiteSpec::Double(g) => write!(f, "D:{g}"),
            BipartiteSpec::EdgeList { p, q, edges } => {
                write!(f, "EL2:p={p},q={q};{}", edges_display(edges))
            }
            BipartiteSpec::Plain(g) => write!(f, "{g}"),
        }
    }
}

fn join_display<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn edges_display(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",")
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    /// The token starting at the cursor, up to the next delimiter.
    fn token(&self) -> String {
        let rest = self.rest();
        if rest.is_empty() {
            return "<end of input>".into();
        }
        let end = rest[1..]
            .find([',', ';', '(', ')'])
            .map_or(rest.len(), |i| i + 1);
        rest[..end].to_string()
    }

    fn err<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::Parse { token: self.token(), reason: reason.into() })
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    fn peek_number(&self) -> bool {
        self.rest().starts_with(|c: char| c.is_ascii_digit())
    }

    fn number(&mut self) -> Result<usize> {
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a number");
        }
        match self.rest()[..len].parse() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.err("number out of range"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn graph(&mut self) -> Result<GraphSpec> {
        if self.eat("KP:") {
            let mut parts = vec![self.number()?];
            while self.rest().starts_with(',') && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
                parts.push(self.number()?);
            }
            return Ok(GraphSpec::Family(Family::CompleteMultipartite(parts)));
        }
        if self.eat("J:") {
            self.expect("(")?;
            let mut parts = vec![self.graph()?];
            while self.eat(",") {
                parts.push(self.graph()?);
            }
            self.expect(")")?;
            return Ok(GraphSpec::Join(parts));
        }
        if self.eat("EL:") {
            self.expect("n=")?;
            let n = self.number()?;
            self.expect(";")?;
            let edges = self.edge_list()?;
            return Ok(GraphSpec::Family(Family::EdgeList { n, edges }));
        }
        if self.eat("cone:") {
            return Ok(GraphSpec::Cone(Box::new(self.graph()?)));
        }
        let start = self.pos;
        let family: fn(usize) -> Family = match self.rest().chars().next() {
            Some('K') => Family::Complete,
            Some('E') => Family::Empty,
            Some('C') => Family::Cycle,
            Some('P') => Family::Path,
            Some('W') => Family::Wheel,
            _ => return self.err("unknown graph family"),
        };
        self.pos += 1;
        if !self.peek_number() {
            self.pos = start;
            return self.err("family letter must be followed by a vertex count");
        }
        Ok(GraphSpec::Family(family(self.number()?)))
    }

    fn edge_list(&mut self) -> Result<Vec<(usize, usize)>> {
        let mut edges = Vec::new();
        if !self.peek_number() {
            return Ok(edges);
        }
        loop {
            let a = self.number()?;
            self.expect("-")?;
            let b = self.number()?;
            edges.push((a, b));
            let more = self.rest().starts_with(',')
                && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit());
            if !more {
                break;
            }
            self.pos += 1;
        }
        Ok(edges)
    }
}
