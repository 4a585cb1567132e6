//! Simple graphs, the edge-list file format, and the gadget constructions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Loop-free undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> SimpleGraph {
        SimpleGraph {
            n,
            adj: vec![false; n * n],
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph> {
        let mut g = SimpleGraph::empty(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(u, v)
                .map_err(|msg| Error::Graph { line: i + 2, msg })?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::empty(n);
        for u in 1..n {
            g.insert(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::path(n);
        if n >= 3 {
            g.insert(0, n - 1);
        }
        g
    }

    /// `K_{a,b}` with the first `a` vertices on one side.
    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        let mut g = SimpleGraph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert(u, v);
            }
        }
        g
    }

    /// Adds `{u, v}`; rejects loops, duplicates and out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) -> std::result::Result<(), String> {
        if u >= self.n || v >= self.n {
            return Err(format!(
                "vertex out of range in edge {u} {v} (n = {})",
                self.n
            ));
        }
        if u == v {
            return Err(format!("self-loop at vertex {u}"));
        }
        if self.has_edge(u, v) {
            return Err(format!("duplicate edge {u} {v}"));
        }
        self.insert(u, v);
        Ok(())
    }

    fn insert(&mut self, u: usize, v: usize) {
        let n = self.n;
        self.adj[u * n + v] = true;
        self.adj[v * n + u] = true;
        self.edges.insert((u.min(v), u.max(v)));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count()
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + self.n, v + self.n);
        }
        g
    }

    /// Disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.insert(u, self.n + v);
            }
        }
        g
    }

    /// `G + x`: one new isolated vertex, numbered `n`.
    pub fn with_isolated_vertex(&self) -> SimpleGraph {
        self.disjoint_union(&SimpleGraph::empty(1))
    }

    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if self.has_edge(u, v) && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Some proper 2-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for v in 0..self.n {
                    if !self.has_edge(u, v) {
                        continue;
                    }
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Bipartition {
            in_u: side.into_iter().map(|s| s == Some(false)).collect(),
        })
    }

    /// Text in the edge-list format read by [`FromStr`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Edge-list format: a header line `n m`, then `m` lines `u v`. Blank lines
/// and lines starting with `#` are ignored.
impl FromStr for SimpleGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<SimpleGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Graph {
            line: 1,
            msg: "missing header line \"n m\"".into(),
        })?;
        let nums = parse_numbers(hline, header, 2)?;
        let (n, m) = (nums[0], nums[1]);
        let mut g = SimpleGraph::empty(n);
        let mut count = 0;
        for (line, l) in lines {
            let e = parse_numbers(line, l, 2)?;
            let (u, v) = (e[0], e[1]);
            if u >= v {
                return Err(Error::Graph {
                    line,
                    msg: if u == v {
                        format!("self-loop at vertex {u}")
                    } else {
                        format!("edge {u} {v} must be written with u < v")
                    },
                });
            }
            g.add_edge(u, v).map_err(|msg| Error::Graph { line, msg })?;
            count += 1;
        }
        if count != m {
            return Err(Error::Graph {
                line: hline,
                msg: format!("header declares {m} edges but {count} were given"),
            });
        }
        Ok(g)
    }
}

fn parse_numbers(line: usize, text: &str, want: usize) -> Result<Vec<usize>> {
    let nums: std::result::Result<Vec<usize>, _> =
        text.split_whitespace().map(str::parse).collect();
    match nums {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(Error::Graph {
            line,
            msg: format!("expected {want} non-negative integers, found {text:?}"),
        }),
    }
}

/// A split of the vertices into `U` and `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    in_u: Vec<bool>,
}

impl Bipartition {
    pub fn from_u(n: usize, u: &[usize]) -> Result<Bipartition> {
        let mut in_u = vec![false; n];
        for &x in u {
            if x >= n {
                return Err(Error::Graph {
                    line: 1,
                    msg: format!("vertex {x} out of range (n = {n})"),
                });
            }
            in_u[x] = true;
        }
        Ok(Bipartition { in_u })
    }

    /// One line listing the `U` vertices.
    pub fn parse(text: &str, n: usize) -> Result<Bipartition> {
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .unwrap_or("");
        let u: std::result::Result<Vec<usize>, _> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect();
        let u = u.map_err(|_| Error::Graph {
            line: 1,
            msg: format!("expected vertex numbers, found {line:?}"),
        })?;
        Bipartition::from_u(n, &u)
    }

    pub fn n(&self) -> usize {
        self.in_u.len()
    }

    pub fn in_u(&self, x: usize) -> bool {
        self.in_u[x]
    }

    pub fn u(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.in_u[x]).collect()
    }

    pub fn v(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| !self.in_u[x]).collect()
    }

    /// Errors unless every edge of `g` crosses between `U` and `V`.
    pub fn check(&self, g: &SimpleGraph) -> Result<()> {
        if g.n() != self.n() {
            return Err(Error::NotBipartite(format!(
                "bipartition covers {} vertices, graph has {}",
                self.n(),
                g.n()
            )));
        }
        match g.edges().find(|&(u, v)| self.in_u[u] == self.in_u[v]) {
            Some((u, v)) => Err(Error::NotBipartite(format!(
                "edge {u} {v} lies inside one side"
            ))),
            None => Ok(()),
        }
    }
}

/// `Γ^τ_k`: `K_k` when `tau`, else `k` isolated vertices.
pub fn build_gadget(tau: bool, k: usize) -> SimpleGraph {
    if tau {
        SimpleGraph::complete(k)
    } else {
        SimpleGraph::empty(k)
    }
}

/// `J^{π,τ}(k, G)`: `G` on vertices `0..n`, the gadget on `n..n+k`, joined
/// completely when `pi`.
pub fn build_j(pi: bool, tau: bool, k: usize, g: &SimpleGraph) -> SimpleGraph {
    let gadget = build_gadget(tau, k);
    if pi {
        g.join(&gadget)
    } else {
        g.disjoint_union(&gadget)
    }
}

/// `G` plus a `k`-clique `W` (vertices `n..n+k`) joined completely to `V`.
pub fn build_lemma7_gk(g: &SimpleGraph, bip: &Bipartition, k: usize) -> Result<SimpleGraph> {
    bip.check(g)?;
    let mut h = g.disjoint_union(&SimpleGraph::complete(k));
    let n = g.n();
    for v in bip.v() {
        for w in n..n + k {
            h.insert(v, w);
        }
    }
    Ok(h)
}

/// [`build_lemma7_gk`] with `V` also made a clique. Without those edges no
/// two vertices of `V` fit in parts `c, d` together, so the coefficient the
/// reduction reads off vanishes once `|V| ≥ 2`.
pub fn build_lemma7_gk_v_clique(
    g: &SimpleGraph,
    bip: &Bipartition,
    k: usize,
) -> Result<SimpleGraph> {
    let mut h = build_lemma7_gk(g, bip, k)?;
    let v = bip.v();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            h.insert(a, b);
        }
    }
    Ok(h)
}

/// Vertex layout of the graph built by [`build_hand3_gk`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hand3Layout {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub x_c: usize,
    pub x_d: usize,
}

/// The graph on `U ∪ V ∪ W ∪ {x_c, x_d}` with `W` independent: `x_c, x_d`
/// adjacent to all of `V ∪ W`; `V × W` complete; `V` a clique; `x_c`
/// adjacent to `U`; and the bipartite complement of `G` between `U` and `V`.
/// Vertices of `G` keep their numbers, `W` is `n..n+k`, then `x_c`, `x_d`.
pub fn build_hand3_gk(
    g: &SimpleGraph,
    bip: &Bipartition,
    k: usize,
) -> Result<(SimpleGraph, Hand3Layout)> {
    bip.check(g)?;
    let n = g.n();
    let layout = Hand3Layout {
        u: bip.u(),
        v: bip.v(),
        w: (n..n + k).collect(),
        x_c: n + k,
        x_d: n + k + 1,
    };
    let mut h = SimpleGraph::empty(n + k + 2);
    for &x in &[layout.x_c, layout.x_d] {
        for &y in layout.v.iter().chain(&layout.w) {
            h.insert(x, y);
        }
    }
    for &v in &layout.v {
        for &w in &layout.w {
            h.insert(v, w);
        }
    }
    for (i, &v) in layout.v.iter().enumerate() {
        for &v2 in &layout.v[i + 1..] {
            h.insert(v, v2);
        }
    }
    for &u in &layout.u {
        h.insert(layout.x_c, u);
        for &v in &layout.v {
            if !g.has_edge(u, v) {
                h.insert(u, v);
            }
        }
    }
    Ok((h, layout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g: SimpleGraph = "3 2\n0 1\n1 2\n".parse().unwrap();
        assert_eq!(g, SimpleGraph::path(3));
        assert_eq!(g.to_text().parse::<SimpleGraph>().unwrap(), g);
        let e = "3 2\n0 1\n0 1\n".parse::<SimpleGraph>().unwrap_err();
        assert!(matches!(e, Error::Graph { line: 3, .. }), "{e}");
        let e = "3 1\n2 2\n".parse::<SimpleGraph>().unwrap_err();
        assert!(matches!(e, Error::Graph { line: 2, .. }), "{e}");
        assert!("3 2\n0 1\n".parse::<SimpleGraph>().is_err());
        assert!("2 1\n0 5\n".parse::<SimpleGraph>().is_err());
        assert!("x".parse::<SimpleGraph>().is_err());
    }

    #[test]
    fn gadgets() {
        assert_eq!(build_gadget(true, 3).edge_count(), 3);
        assert_eq!(build_gadget(false, 3).edge_count(), 0);
        assert_eq!(build_gadget(true, 0).n(), 0);
        let g = SimpleGraph::path(3);
        let j = build_j(false, false, 4, &g);
        assert_eq!((j.n(), j.edge_count()), (7, 2));
        assert_eq!(
            build_j(true, true, 2, &SimpleGraph::empty(1)),
            SimpleGraph::complete(3)
        );
        for tau in [false, true] {
            let j = build_j(true, tau, 5, &g);
            assert_eq!(
                j.edge_count(),
                g.edge_count() + build_gadget(tau, 5).edge_count() + 3 * 5
            );
        }
    }

    #[test]
    fn lemma7_construction() {
        let g = SimpleGraph::complete(2);
        let bip = Bipartition::from_u(2, &[0]).unwrap();
        let h = build_lemma7_gk(&g, &bip, 2).unwrap();
        assert_eq!((h.n(), h.edge_count()), (4, 4));
        assert!(h.has_edge(1, 2) && h.has_edge(1, 3) && h.has_edge(2, 3));
        assert_eq!(build_lemma7_gk(&g, &bip, 0).unwrap(), g);
        let tri = SimpleGraph::complete(3);
        let bad = Bipartition::from_u(3, &[0]).unwrap();
        assert!(matches!(
            build_lemma7_gk(&tri, &bad, 1),
            Err(Error::NotBipartite(_))
        ));
    }

    #[test]
    fn hand3_construction() {
        let g = SimpleGraph::path(3);
        let bip = g.bipartition().unwrap();
        let k = 5;
        let (h, l) = build_hand3_gk(&g, &bip, k).unwrap();
        assert_eq!(h.degree(l.x_d), l.v.len() + k);
        let cross = l.u.iter().flat_map(|&u| l.v.iter().map(move |&v| (u, v)));
        let uv = cross.filter(|&(u, v)| h.has_edge(u, v)).count();
        assert_eq!(uv, l.u.len() * l.v.len() - g.edge_count());
        for &a in &l.w {
            for &b in &l.w {
                assert!(!h.has_edge(a, b));
            }
        }
        assert!(!h.has_edge(l.x_c, l.x_d));
    }

    #[test]
    fn complement_and_bipartition() {
        let c4 = SimpleGraph::cycle(4);
        assert_eq!(c4.complement().edge_count(), 2);
        assert_eq!(c4.complement().complement(), c4);
        assert!(c4.bipartition().is_some());
        assert!(SimpleGraph::complete(3).bipartition().is_none());
        let bip = Bipartition::parse("0, 2\n", 4).unwrap();
        assert_eq!(bip.u(), vec![0, 2]);
        assert!(bip.check(&c4).is_ok());
        assert_eq!(SimpleGraph::complete(2).with_isolated_vertex().n(), 3);
    }
}
