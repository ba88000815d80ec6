//! Small undirected graphs for the vertex-cover reduction.
//!
//! Text format, vertices are integers `0..n`:
//!
//! ```text
//! # comment
//! vertices 4        optional, for isolated vertices
//! 0 1
//! 1 2
//! 2 3
//! 3 0
//! matching:         optional designated perfect matching
//! 0 1
//! 2 3
//! ```

use crate::error::{Error, Result};

/// Largest graph the brute-force routines accept.
pub const MAX_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    matching: Option<Vec<(usize, usize)>>,
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "bad edge ({u}, {v}) for {n} vertices"
                )));
            }
            out.push(norm(u, v));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate edge".into()));
        }
        Ok(Graph {
            n,
            edges: out,
            matching: None,
        })
    }

    /// Attaches a designated perfect matching.
    pub fn with_matching(mut self, matching: &[(usize, usize)]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        let mut fm = Vec::with_capacity(matching.len());
        for &(u, v) in matching {
            let e = norm(u, v);
            if self.edges.binary_search(&e).is_err() || seen[e.0] || seen[e.1] {
                return Err(Error::NoPerfectMatching);
            }
            seen[e.0] = true;
            seen[e.1] = true;
            fm.push(e);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NoPerfectMatching);
        }
        fm.sort_unstable();
        self.matching = Some(fm);
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn designated_matching(&self) -> Option<&[(usize, usize)]> {
        self.matching.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&norm(u, v)).is_ok()
    }

    pub fn is_cover(&self, cover: &[bool]) -> bool {
        self.uncovered_edge(cover).is_none()
    }

    pub(crate) fn uncovered_edge(&self, cover: &[bool]) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&(u, v)| !cover[u] && !cover[v])
    }

    /// The designated matching, or one found by backtracking.
    pub fn perfect_matching(&self) -> Result<Vec<(usize, usize)>> {
        if let Some(m) = &self.matching {
            return Ok(m.clone());
        }
        if self.n > MAX_VERTICES {
            return Err(Error::BudgetExceeded {
                required: self.n as u128,
                limit: MAX_VERTICES as u128,
            });
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        fn go(
            adj: &[Vec<usize>],
            mate: &mut [Option<usize>],
            out: &mut Vec<(usize, usize)>,
        ) -> bool {
            let Some(u) = mate.iter().position(Option::is_none) else {
                return true;
            };
            for &v in &adj[u] {
                if mate[v].is_none() {
                    mate[u] = Some(v);
                    mate[v] = Some(u);
                    out.push(norm(u, v));
                    if go(adj, mate, out) {
                        return true;
                    }
                    out.pop();
                    mate[u] = None;
                    mate[v] = None;
                }
            }
            false
        }
        let mut mate = vec![None; self.n];
        let mut out = Vec::new();
        if go(&adj, &mut mate, &mut out) {
            out.sort_unstable();
            Ok(out)
        } else {
            Err(Error::NoPerfectMatching)
        }
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut matching: Option<Vec<(usize, usize)>> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::MalformedInput {
                line: lineno + 1,
                column: 1,
                message,
            };
            if line == "matching:" {
                matching = Some(Vec::new());
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "vertices" {
                let count = tokens
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("expected `vertices N`".into()))?;
                n = Some(count);
                continue;
            }
            let [a, b] = tokens[..] else {
                return Err(err(format!("expected `u v`, got `{line}`")));
            };
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| err(format!("bad vertex `{t}`")))
            };
            let e = (parse(a)?, parse(b)?);
            match matching.as_mut() {
                Some(m) => m.push(e),
                None => edges.push(e),
            }
        }
        let max = edges
            .iter()
            .flat_map(|&(u, v)| [u + 1, v + 1])
            .max()
            .unwrap_or(0);
        let g = Graph::new(n.unwrap_or(max).max(max), &edges)?;
        match matching {
            Some(m) => g.with_matching(&m),
            None => Ok(g),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        if let Some(m) = &self.matching {
            s.push_str("matching:\n");
            for (u, v) in m {
                s.push_str(&format!("{u} {v}\n"));
            }
        }
        s
    }

    /// Single edge.
    pub fn k2() -> Graph {
        Graph::new(2, &[(0, 1)]).expect("valid")
    }

    /// Path 0-1-2-3 with matching {01, 23}.
    pub fn p4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3)])
            .and_then(|g| g.with_matching(&[(0, 1), (2, 3)]))
            .expect("valid")
    }

    /// Cycle 0-1-2-3-0 with matching {01, 23}.
    pub fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
            .and_then(|g| g.with_matching(&[(0, 1), (2, 3)]))
            .expect("valid")
    }
}

/// A minimum vertex cover by enumerating all vertex subsets; the smallest
/// subset in (size, bitmask) order.
pub fn min_vertex_cover(g: &Graph) -> Result<Vec<usize>> {
    if g.n > MAX_VERTICES {
        return Err(Error::BudgetExceeded {
            required: 1u128 << g.n.min(127),
            limit: 1u128 << MAX_VERTICES,
        });
    }
    let masks: Vec<u32> = g
        .edges
        .iter()
        .map(|&(u, v)| (1u32 << u) | (1u32 << v))
        .collect();
    let best = (0u32..(1u32 << g.n))
        .filter(|&s| masks.iter().all(|&e| s & e != 0))
        .min_by_key(|&s| (s.count_ones(), s))
        .expect("full set covers");
    Ok((0..g.n).filter(|&v| best & (1 << v) != 0).collect())
}

/// Minimum vertex cover size.
pub fn tau_bruteforce(g: &Graph) -> Result<usize> {
    min_vertex_cover(g).map(|c| c.len())
}
