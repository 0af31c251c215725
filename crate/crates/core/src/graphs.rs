//! Multigraphs, their edge-set flats, and chromatic polynomials.
//!
//! A flat of a graph is a set of edges closed under paths: whenever the
//! endpoints of an edge are joined by a path inside the set, that edge
//! belongs to the set. Restriction keeps all vertices and a subset of edges;
//! contraction by an edge set replaces vertices by the connected components
//! of the restriction. The chromatic polynomial is computed by the recursion
//! `P(q) = q^V - sum over nonempty flats F of P of the contraction by F`,
//! which terminates because contractions strictly drop the edge count.

use crate::matroid::{self, Matroid, MatroidError};
use crate::unipoly::UniPoly;
use crate::Rational;
use num::One;
use std::collections::{BTreeSet, HashSet, VecDeque};

/// Edge subsets are bitsets over edge indices, capping edges at 64 wherever
/// matroid structure is involved.
pub type EdgeSet = u64;

pub const DEFAULT_COLORING_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid graph input: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// A multigraph with labeled edges. Loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Graph {
    /// Panics if an endpoint is out of range; parsing goes through
    /// [`parse_edge_list`] which reports errors instead.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Graph {
        for &(a, b) in &edges {
            assert!(a < vertices && b < vertices, "edge endpoint out of range");
        }
        Graph { vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    fn component_ids_for(&self, edge_set: Option<EdgeSet>) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.vertices);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let keep = match edge_set {
                None => true,
                Some(s) => s >> i & 1 == 1,
            };
            if keep {
                uf.union(a, b);
            }
        }
        // Component ids ordered by smallest contained vertex.
        let mut id = vec![usize::MAX; self.vertices];
        let mut next = 0;
        for v in 0..self.vertices {
            let r = uf.find(v);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            id[v] = id[r];
        }
        (next, id)
    }

    pub fn component_count(&self) -> usize {
        self.component_ids_for(None).0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Restriction: all vertices, edges of `set` relabeled in ascending
    /// order of their original index.
    pub fn restriction(&self, set: EdgeSet) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| set >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph {
            vertices: self.vertices,
            edges,
        }
    }

    /// Contraction: vertices become the components of the restriction to
    /// `set` (numbered by smallest original vertex), surviving edges keep
    /// their ascending order.
    pub fn contraction(&self, set: EdgeSet) -> Graph {
        let (count, id) = self.component_ids_for(Some(set));
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| set >> i & 1 == 0)
            .map(|(_, &(a, b))| (id[a], id[b]))
            .collect();
        Graph {
            vertices: count,
            edges,
        }
    }

    /// Smallest flat containing `set`: add every edge whose endpoints are
    /// joined by a path inside `set`.
    pub fn closure(&self, set: EdgeSet) -> EdgeSet {
        let (_, id) = self.component_ids_for(Some(set));
        let mut out = 0;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if id[a] == id[b] {
                out |= 1u64 << i;
            }
        }
        out
    }

    /// All flats, discovered breadth-first from the closure of the empty
    /// set by closing single-edge extensions.
    pub fn flats(&self) -> Result<Vec<EdgeSet>, GraphError> {
        if self.edges.len() > 64 {
            return Err(GraphError::SizeCapExceeded(format!(
                "{} edges exceed the 64-edge bitset cap",
                self.edges.len()
            )));
        }
        let bottom = self.closure(0);
        let mut seen: HashSet<EdgeSet> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(bottom);
        queue.push_back(bottom);
        while let Some(f) = queue.pop_front() {
            for i in 0..self.edges.len() {
                if f >> i & 1 == 0 {
                    let g = self.closure(f | (1u64 << i));
                    if seen.insert(g) {
                        if seen.len() > matroid::MAX_FLATS_HARD {
                            return Err(GraphError::SizeCapExceeded(
                                "flat enumeration exceeds the hard cap".to_string(),
                            ));
                        }
                        queue.push_back(g);
                    }
                }
            }
        }
        let mut flats: Vec<EdgeSet> = seen.into_iter().collect();
        flats.sort_by(|&a, &b| matroid::flat_order(a, b));
        Ok(flats)
    }

    /// Count proper colorings with `q` colors by enumerating all `q^V`
    /// assignments; zero when the graph has a loop.
    pub fn coloring_count(&self, q: u64) -> Result<u64, GraphError> {
        self.coloring_count_with_budget(q, DEFAULT_COLORING_BUDGET)
    }

    pub fn coloring_count_with_budget(&self, q: u64, budget: u64) -> Result<u64, GraphError> {
        if self.has_loop() {
            return Ok(0);
        }
        if q == 0 {
            return Ok(if self.vertices == 0 { 1 } else { 0 });
        }
        let mut total: u128 = 1;
        for _ in 0..self.vertices {
            total = total.saturating_mul(q as u128);
            if total > budget as u128 {
                return Err(GraphError::BudgetExceeded(format!(
                    "{q}^{} assignments exceed budget {budget}",
                    self.vertices
                )));
            }
        }
        let mut coloring = vec![0u64; self.vertices];
        let mut count = 0u64;
        loop {
            if self.edges.iter().all(|&(a, b)| coloring[a] != coloring[b]) {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == self.vertices {
                    return Ok(count);
                }
                coloring[pos] += 1;
                if coloring[pos] < q {
                    break;
                }
                coloring[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Exact chromatic polynomial via the flat recursion. The zero
    /// polynomial when the graph has a loop.
    pub fn chromatic_polynomial(&self) -> Result<UniPoly, GraphError> {
        if self.has_loop() {
            return Ok(UniPoly::zero());
        }
        let mut p = UniPoly::monomial(Rational::one(), self.vertices);
        for f in self.flats()? {
            if f != 0 {
                p = p.sub(&self.contraction(f).chromatic_polynomial()?);
            }
        }
        Ok(p)
    }

    /// Normalized simple edge set: unordered endpoint pairs, multiplicity
    /// collapsed, loops as `(v, v)`.
    pub fn simple_edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect()
    }
}

/// Matroid of a graph on its edge set: flats are the path-closed edge sets.
pub fn graphic_matroid(g: &Graph) -> Result<Matroid, GraphError> {
    let flats = g.flats()?;
    Ok(matroid::validate_flats(g.edge_count(), &flats)?)
}

/// Disjoint union of the parts plus all edges between distinct parts.
/// Vertices are numbered part by part; cross edges follow the parts' order.
pub fn join(parts: &[Graph]) -> Graph {
    let total: usize = parts.iter().map(|g| g.vertices).sum();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for g in parts {
        offsets.push(acc);
        acc += g.vertices;
    }
    let mut edges = Vec::new();
    for (k, g) in parts.iter().enumerate() {
        for &(a, b) in &g.edges {
            edges.push((a + offsets[k], b + offsets[k]));
        }
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for a in 0..parts[i].vertices {
                for b in 0..parts[j].vertices {
                    edges.push((a + offsets[i], b + offsets[j]));
                }
            }
        }
    }
    Graph {
        vertices: total,
        edges,
    }
}

/// Complete graph on `n` vertices, edges in lexicographic order.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    Graph::new(n, edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    let edges = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::new(n, edges)
}

/// Parse the edge-list format: first line `V E`, then `E` lines `tail head`
/// with 0-based vertex indices.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GraphError::InvalidParameters("empty input".into()))?;
    let mut it = header.split_whitespace();
    let v: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| GraphError::InvalidParameters("header must be 'V E'".into()))?;
    let e: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| GraphError::InvalidParameters("header must be 'V E'".into()))?;
    if it.next().is_some() {
        return Err(GraphError::InvalidParameters(
            "header must be exactly 'V E'".into(),
        ));
    }
    let mut edges = Vec::with_capacity(e);
    for line in lines {
        let mut it = line.split_whitespace();
        let a: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::InvalidParameters(format!("bad edge line '{line}'")))?;
        let b: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::InvalidParameters(format!("bad edge line '{line}'")))?;
        if it.next().is_some() {
            return Err(GraphError::InvalidParameters(format!(
                "edge line '{line}' has trailing tokens"
            )));
        }
        if a >= v {
            return Err(GraphError::ElementOutOfRange(a));
        }
        if b >= v {
            return Err(GraphError::ElementOutOfRange(b));
        }
        edges.push((a, b));
    }
    if edges.len() != e {
        return Err(GraphError::InvalidParameters(format!(
            "expected {e} edges, found {}",
            edges.len()
        )));
    }
    Ok(Graph { vertices: v, edges })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertices, g.edges.len());
    for &(a, b) in &g.edges {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;
    use crate::unipoly::UniPoly;
    use num::BigInt;

    fn falling(q: i64, k: i64) -> i64 {
        (0..k).map(|j| q - j).product()
    }

    #[test]
    fn chromatic_matches_brute_force_on_small_graphs() {
        let cases = [
            complete(3),
            complete(4),
            cycle(4),
            cycle(5),
            Graph::new(3, vec![(0, 1), (1, 2)]),
            Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            Graph::new(2, vec![(0, 1), (0, 1)]),
            Graph::new(3, vec![]),
        ];
        for g in cases {
            let p = g.chromatic_polynomial().unwrap();
            assert!(p.is_integer());
            for q in 0..=g.vertex_count() as u64 + 1 {
                let brute = g.coloring_count(q).unwrap();
                assert_eq!(
                    p.eval(&rat_int(q as i64)),
                    rat_int(brute as i64),
                    "mismatch at q={q} for {g:?}"
                );
            }
        }
    }

    #[test]
    fn interpolation_oracle_recovers_chromatic_polynomial() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let pts: Vec<_> = (1..=g.vertex_count() as i64 + 1)
            .map(|q| {
                let c = g.coloring_count(q as u64).unwrap();
                (rat_int(q), rat_int(c as i64))
            })
            .collect();
        let interp = UniPoly::lagrange(&pts);
        assert_eq!(interp, g.chromatic_polynomial().unwrap());
    }

    #[test]
    fn complete_graph_chromatic_is_falling_factorial() {
        for n in 2..=4 {
            let p = complete(n).chromatic_polynomial().unwrap();
            for q in 0..=6 {
                assert_eq!(p.eval(&rat_int(q)), rat_int(falling(q, n as i64)));
            }
        }
        assert_eq!(
            complete(4).chromatic_polynomial().unwrap(),
            UniPoly::from_int_coeffs(&[0, -6, 11, -6, 1])
        );
    }

    #[test]
    fn cycle_chromatic_closed_form() {
        // (q-1)^n + (-1)^n (q-1)
        for n in 3..=5 {
            let p = cycle(n).chromatic_polynomial().unwrap();
            let qm1 = UniPoly::from_int_coeffs(&[-1, 1]);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expect = qm1.pow(n).add(&qm1.scale(&rat_int(sign)));
            assert_eq!(p, expect);
        }
    }

    #[test]
    fn loops_kill_colorings() {
        let g = Graph::new(2, vec![(0, 0), (0, 1)]);
        assert_eq!(g.coloring_count(5).unwrap(), 0);
        assert!(g.chromatic_polynomial().unwrap().is_zero());
    }

    #[test]
    fn coloring_budget_is_enforced() {
        let g = complete(12);
        match g.coloring_count(10) {
            Err(GraphError::BudgetExceeded(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn contraction_preserves_component_count() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (3, 4), (2, 0), (1, 3)]);
        for s in 0u64..(1 << 5) {
            let contracted = g.contraction(s);
            assert_eq!(contracted.component_count(), g.component_count());
            assert_eq!(
                contracted.vertex_count(),
                g.restriction(s).component_count()
            );
        }
    }

    #[test]
    fn triangle_flats_form_uniform_matroid() {
        let m = graphic_matroid(&complete(3)).unwrap();
        assert_eq!(m, crate::matroid::uniform(2, 3).unwrap());
        let c4 = graphic_matroid(&cycle(4)).unwrap();
        assert_eq!(c4, crate::matroid::uniform(3, 4).unwrap());
    }

    #[test]
    fn flat_rank_counts_merged_vertices() {
        let g = complete(4);
        let m = graphic_matroid(&g).unwrap();
        for id in 0..m.num_flats() {
            let f = m.flat(id);
            let rank = m.rank_of_flat(id);
            let kappa = g.restriction(f).component_count();
            assert_eq!(rank, g.vertex_count() - kappa);
        }
    }

    #[test]
    fn graph_minors_match_matroid_minors() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let m = graphic_matroid(&g).unwrap();
        for lo in 0..m.num_flats() {
            for hi in 0..m.num_flats() {
                if !m.leq(lo, hi) {
                    continue;
                }
                let (minor, _) = crate::matroid::interval_minor(&m, lo, hi).unwrap();
                let graph_minor = g.restriction(m.flat(hi)).contraction(
                    // Edges of `lo` relabeled inside the restriction to `hi`.
                    {
                        let hi_edges = crate::matroid::members(m.flat(hi));
                        let mut s: EdgeSet = 0;
                        for (new, &old) in hi_edges.iter().enumerate() {
                            if m.flat(lo) >> old & 1 == 1 {
                                s |= 1 << new;
                            }
                        }
                        s
                    },
                );
                assert_eq!(graphic_matroid(&graph_minor).unwrap(), minor);
            }
        }
    }

    #[test]
    fn join_of_singletons_is_complete() {
        let k1 = Graph::new(1, vec![]);
        let j = join(&[k1.clone(), k1.clone(), k1]);
        assert_eq!(j.simple_edge_set(), complete(3).simple_edge_set());
        let j2 = join(&[complete(2), complete(2)]);
        assert_eq!(j2.simple_edge_set(), complete(4).simple_edge_set());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert!(parse_edge_list("2 1\n0 5\n").is_err());
        assert!(parse_edge_list("2 2\n0 1\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn flat_count_sums_chromatic_evaluations() {
        // q^V = sum over flats of P of the contraction, exercised at q = 3.
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let q = rat_int(3);
        let mut total = num::BigRational::from_integer(BigInt::from(0));
        for f in g.flats().unwrap() {
            total += g.contraction(f).chromatic_polynomial().unwrap().eval(&q);
        }
        assert_eq!(total, rat_int(81));
    }
}
