//! Multi-directed graphs with color decorations and their complex signatures.
//!
//! Vertices are stored 0-based; the textual notation and JSON use 1-based labels.
//! Color `j` of an edge is recorded in bit `j` of [`Edge::signs`]: a set bit means
//! the colored arrow points against the black arrow.

use crate::error::{Error, Result};
use std::fmt;

/// Largest number of colors an edge may carry.
pub const MAX_COLORS: usize = 7;
/// Largest vertex count accepted by the canonical labeling.
pub const MAX_VERTICES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: u8,
    pub head: u8,
    pub signs: u8,
}

impl Edge {
    pub fn new(tail: usize, head: usize, signs: u8) -> Edge {
        Edge { tail: tail as u8, head: head as u8, signs }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// Sign (+1 or -1) of color `j` relative to the black arrow.
    pub fn color_sign(&self, j: usize) -> i8 {
        if self.signs >> j & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// The arc (from, to) drawn by direction `dir`: 0 is black, `j + 1` is color `j`.
    pub fn arc(&self, dir: usize) -> (u8, u8) {
        if dir == 0 || self.signs >> (dir - 1) & 1 == 0 {
            (self.tail, self.head)
        } else {
            (self.head, self.tail)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDigraph {
    n: u8,
    colors: u8,
    edges: Vec<Edge>,
}

impl MultiDigraph {
    pub fn new(n: usize, colors: usize, edges: Vec<Edge>) -> Result<MultiDigraph> {
        if n == 0 || n > 255 {
            return Err(Error::MalformedGraph(format!("vertex count {n} out of range")));
        }
        if colors > MAX_COLORS {
            return Err(Error::MalformedGraph(format!("at most {MAX_COLORS} colors supported")));
        }
        for e in &edges {
            if e.tail as usize >= n || e.head as usize >= n {
                return Err(Error::MalformedGraph(format!(
                    "edge {}>{} outside 1..{n}",
                    e.tail as usize + 1,
                    e.head as usize + 1
                )));
            }
            if (e.signs as u32) >> colors != 0 {
                return Err(Error::MalformedGraph("color sign beyond color arity".into()));
            }
        }
        Ok(MultiDigraph { n: n as u8, colors: colors as u8, edges })
    }

    pub(crate) fn from_parts(n: usize, colors: usize, edges: Vec<Edge>) -> MultiDigraph {
        debug_assert!(edges.iter().all(|e| (e.tail as usize) < n && (e.head as usize) < n));
        MultiDigraph { n: n as u8, colors: colors as u8, edges }
    }

    /// Parses the compact notation `"1>2+ 2>3-"`: one token per edge, 1-based
    /// tail and head, followed by one `+`/`-` per color.
    pub fn from_notation(n: usize, colors: usize, text: &str) -> Result<MultiDigraph> {
        let mut edges = Vec::new();
        for tok in text.split_whitespace() {
            let (t, rest) = tok
                .split_once('>')
                .ok_or_else(|| Error::MalformedGraph(format!("bad edge token {tok:?}")))?;
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            let marks = &rest[digits.len()..];
            let t: usize = t.parse().map_err(|_| Error::MalformedGraph(format!("bad tail in {tok:?}")))?;
            let h: usize =
                digits.parse().map_err(|_| Error::MalformedGraph(format!("bad head in {tok:?}")))?;
            if marks.chars().count() != colors {
                return Err(Error::MalformedGraph(format!("{tok:?} needs {colors} color marks")));
            }
            let mut signs = 0u8;
            for (j, c) in marks.chars().enumerate() {
                match c {
                    '+' => {}
                    '-' => signs |= 1 << j,
                    _ => return Err(Error::MalformedGraph(format!("bad color mark in {tok:?}"))),
                }
            }
            if t == 0 || h == 0 {
                return Err(Error::MalformedGraph("vertex labels start at 1".into()));
            }
            edges.push(Edge::new(t - 1, h - 1, signs));
        }
        MultiDigraph::new(n, colors, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.n as usize
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> usize {
        self.colors as usize
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for e in &self.edges {
            let a = find(&mut parent, e.tail as usize);
            let b = find(&mut parent, e.head as usize);
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Black and color directions, acyclic check per direction bit (bit 0 black).
    pub fn is_oriented_in(&self, directions: u16) -> bool {
        (0..=self.colors()).all(|dir| directions >> dir & 1 == 0 || self.direction_acyclic(dir))
    }

    pub fn direction_acyclic(&self, dir: usize) -> bool {
        let n = self.num_vertices();
        let mut indeg = [0u8; 256];
        let mut adj: Vec<Vec<u8>> = vec![Vec::new(); n];
        for e in &self.edges {
            if e.is_loop() {
                return false;
            }
            let (a, b) = e.arc(dir);
            adj[a as usize].push(b);
            indeg[b as usize] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &adj[v] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    stack.push(w as usize);
                }
            }
        }
        seen == n
    }

    pub fn degree(&self, d: i64) -> i64 {
        degree_of(self.num_vertices(), self.num_edges(), d)
    }

    pub fn betti(&self) -> Result<i64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.num_edges() as i64 - self.num_vertices() as i64 + 1)
    }

    /// The undirected edge list `(min, max)`, unsorted.
    pub fn skeleton_pairs(&self) -> Vec<(u8, u8)> {
        self.edges.iter().map(|e| (e.tail.min(e.head), e.tail.max(e.head))).collect()
    }

    pub fn relabeled(&self, perm: &[usize]) -> MultiDigraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.tail as usize], perm[e.head as usize], e.signs))
            .collect();
        MultiDigraph::from_parts(self.num_vertices(), self.colors(), edges)
    }

    pub fn with_edges(&self, edges: Vec<Edge>) -> MultiDigraph {
        MultiDigraph::from_parts(self.num_vertices(), self.colors(), edges)
    }
}

pub fn degree_of(n: usize, k: usize, d: i64) -> i64 {
    d * (n as i64 - 1) + k as i64 * (1 - d)
}

impl fmt::Display for MultiDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.n)?;
        for e in &self.edges {
            write!(f, " {}>{}", e.tail + 1, e.head + 1)?;
            for j in 0..self.colors() {
                f.write_str(if e.color_sign(j) < 0 { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

/// Which symmetry carries a sign in the coinvariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    VertexOdd,
    EdgeOdd,
}

/// Selects the complex: dimension, color count, oriented directions, connectedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub d: u32,
    pub colors: u8,
    /// Bit 0 is black, bit `j + 1` is color `j`.
    pub oriented: u16,
    pub connected: bool,
}

impl Signature {
    pub fn new(d: u32, colors: usize, oriented: u16, connected: bool) -> Result<Signature> {
        if d == 0 {
            return Err(Error::SignatureMismatch("d must be at least 1".into()));
        }
        if colors > MAX_COLORS {
            return Err(Error::SignatureMismatch(format!("at most {MAX_COLORS} colors")));
        }
        if (oriented as u32) >> (colors + 1) != 0 {
            return Err(Error::SignatureMismatch("oriented direction beyond color count".into()));
        }
        Ok(Signature { d, colors: colors as u8, oriented, connected })
    }

    /// Shorthand: the first `o` directions (black, then colors in order) are oriented.
    pub fn with_first_oriented(d: u32, colors: usize, o: usize, connected: bool) -> Result<Signature> {
        if o > colors + 1 {
            return Err(Error::SignatureMismatch("more oriented directions than directions".into()));
        }
        Signature::new(d, colors, ((1u32 << o) - 1) as u16, connected)
    }

    pub fn parity(&self) -> Parity {
        if self.d % 2 == 1 {
            Parity::VertexOdd
        } else {
            Parity::EdgeOdd
        }
    }

    pub fn colors(&self) -> usize {
        self.colors as usize
    }

    pub fn num_oriented(&self) -> u32 {
        self.oriented.count_ones()
    }

    pub fn admits(&self, g: &MultiDigraph) -> bool {
        g.colors() == self.colors()
            && g.is_oriented_in(self.oriented)
            && (!self.connected || g.is_connected())
    }

    pub fn check(&self, g: &MultiDigraph) -> Result<()> {
        if g.colors() != self.colors() {
            return Err(Error::MalformedGraph(format!(
                "graph has {} colors, signature {}",
                g.colors(),
                self.colors
            )));
        }
        if !g.is_oriented_in(self.oriented) {
            return Err(Error::SignatureMismatch(format!("{g} is not oriented as required")));
        }
        if self.connected && !g.is_connected() {
            return Err(Error::SignatureMismatch(format!("{g} is disconnected")));
        }
        Ok(())
    }

    /// Direction names in the JSON form: `black`, `c1`, `c2`, ...
    pub fn oriented_names(&self) -> Vec<String> {
        (0..=self.colors())
            .filter(|&j| self.oriented >> j & 1 == 1)
            .map(|j| if j == 0 { "black".to_string() } else { format!("c{j}") })
            .collect()
    }

    pub fn parse_oriented(names: &[&str], colors: usize) -> Result<u16> {
        let mut mask = 0u16;
        for name in names {
            let name = name.trim();
            if name.is_empty() {
                continue;
            }
            let j = match name {
                "black" => 0,
                "red" => 1,
                _ => name
                    .strip_prefix('c')
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&j| j >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown direction {name:?}")))?,
            };
            if j > colors {
                return Err(Error::SignatureMismatch(format!("direction {name} beyond {colors} colors")));
            }
            mask |= 1 << j;
        }
        Ok(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_round_trip() {
        let g = MultiDigraph::from_notation(3, 1, "1>2+ 2>3- 3>1+").unwrap();
        assert_eq!(g.to_string(), "[3] 1>2+ 2>3- 3>1+");
        assert!(MultiDigraph::from_notation(2, 1, "1>3+").is_err());
        assert!(MultiDigraph::from_notation(2, 1, "1>2").is_err());
    }

    #[test]
    fn orientation_examples() {
        let tri = MultiDigraph::from_notation(3, 0, "1>2 1>3 2>3").unwrap();
        assert!(tri.is_oriented_in(1));
        let mixed = MultiDigraph::from_notation(2, 1, "1>2+ 1>2-").unwrap();
        assert!(!mixed.is_oriented_in(0b10));
        assert!(mixed.is_oriented_in(0b01));
        let same = MultiDigraph::from_notation(2, 1, "1>2+ 1>2+").unwrap();
        assert!(same.is_oriented_in(0b11));
        let two_cycle = MultiDigraph::from_notation(2, 0, "1>2 2>1").unwrap();
        assert!(!two_cycle.is_oriented_in(1));
        let lp = MultiDigraph::from_notation(1, 1, "1>1+").unwrap();
        assert!(!lp.is_oriented_in(0b01) && !lp.is_oriented_in(0b10) && lp.is_oriented_in(0));
    }

    #[test]
    fn degree_and_betti() {
        let theta = MultiDigraph::from_notation(2, 0, "1>2 1>2 1>2").unwrap();
        assert_eq!(theta.degree(1), 1);
        assert_eq!(theta.betti().unwrap(), 2);
        assert_eq!(degree_of(2, 1, 7), 1);
        assert_eq!(degree_of(4, 5, 2), 1);
        assert_eq!(degree_of(6, 7, 3), 1);
        let tree = MultiDigraph::from_notation(5, 0, "1>2 2>3 3>4 4>5").unwrap();
        assert_eq!(tree.betti().unwrap(), 0);
        let split = MultiDigraph::from_notation(4, 0, "1>2 3>4").unwrap();
        assert_eq!(split.betti(), Err(Error::Disconnected));
    }

    #[test]
    fn oriented_names() {
        let mask = Signature::parse_oriented(&["black", "c1"], 1).unwrap();
        let sig = Signature::new(3, 1, mask, true).unwrap();
        assert_eq!(sig.oriented_names(), vec!["black", "c1"]);
        assert!(Signature::parse_oriented(&["c2"], 1).is_err());
    }
}
