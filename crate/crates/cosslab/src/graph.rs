//! Coface graphs `G_{s,k}`: vertices are composable coface paths encoded as
//! integer tuples, edges are expanded coherers, and (in the enhanced case
//! `s = 1`) expansions of the extra 2-isomorphism `phi`.
//!
//! A tuple `(i_0, ..., i_k)` with `i_j` in `0..=s+j` stands for the composite
//! coface path applied bottom-up. A coherer edge of laterality `n` rewrites
//! adjacent entries `(..., i, j, ...)` at positions `(n-1, n)` with `i < j`
//! into `(..., j-1, i, ...)`; a phi edge flips a leading entry 1 to 0.

use crate::{Error, Result, DEFAULT_VERTEX_BUDGET};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// A coface path from degree `s-1` to degree `s+k`, as the tuple of indices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceTuple {
    pub s: usize,
    pub entries: Vec<usize>,
}

impl fmt::Debug for FaceTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for FaceTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FaceTuple {
    pub fn new(s: usize, entries: Vec<usize>) -> Result<Self> {
        if s == 0 || entries.is_empty() {
            return Err(Error::InvalidArgument("need s >= 1 and a nonempty tuple".into()));
        }
        for (j, &e) in entries.iter().enumerate() {
            if e > s + j {
                return Err(Error::InvalidArgument(format!(
                    "entry {e} at position {j} exceeds bound {}",
                    s + j
                )));
            }
        }
        Ok(FaceTuple { s, entries })
    }

    pub fn k(&self) -> usize {
        self.entries.len() - 1
    }

    /// Sum of the entries.
    pub fn height(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Number of strict ascents, which equals the number of outgoing coherer
    /// edges.
    pub fn rank(&self) -> usize {
        self.entries.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn is_out_vertex(&self) -> bool {
        self.rank() == self.k()
    }

    pub fn is_in_vertex(&self) -> bool {
        self.rank() == 0
    }

    /// Apply the coherer move at laterality `n` (positions `n-1`, `n`).
    pub fn coherer_move(&self, n: usize) -> Option<FaceTuple> {
        if n == 0 || n > self.k() {
            return None;
        }
        let (a, b) = (self.entries[n - 1], self.entries[n]);
        if a >= b {
            return None;
        }
        let mut e = self.entries.clone();
        e[n - 1] = b - 1;
        e[n] = a;
        Some(FaceTuple { s: self.s, entries: e })
    }

    /// Apply the phi move: flip a leading entry 1 to 0 (requires `s = 1`).
    pub fn phi_move(&self) -> Option<FaceTuple> {
        if self.s != 1 || self.entries[0] != 1 {
            return None;
        }
        let mut e = self.entries.clone();
        e[0] = 0;
        Some(FaceTuple { s: self.s, entries: e })
    }

    /// The composite injection `{0..s-1} -> {0..s+k}` determined by the path,
    /// returned as the image of each point. Two tuples lie in the same
    /// component of `G_{s,k}` exactly when these images agree.
    pub fn injection_image(&self) -> Vec<usize> {
        let mut points: Vec<usize> = (0..self.s).collect();
        for &i in &self.entries {
            for p in points.iter_mut() {
                if *p >= i {
                    *p += 1;
                }
            }
        }
        points
    }

    /// The out-vertex of this tuple's component: the increasing enumeration of
    /// the complement of the injection image.
    pub fn component_out_vertex(&self) -> FaceTuple {
        let image = self.injection_image();
        let k = self.k();
        let mut missed = Vec::with_capacity(k + 1);
        for v in 0..=self.s + k {
            if !image.contains(&v) {
                missed.push(v);
            }
        }
        FaceTuple { s: self.s, entries: missed }
    }
}

/// The move an edge performs, together with the data identifying the coherer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeKind {
    /// Expanded coherer at laterality `n`, rewriting indices `(i, j)` with
    /// `i < j`. The underlying coherer lives at level `s + n - 1`.
    Coherer { laterality: usize, i: usize, j: usize },
    /// Expansion of phi, flipping the leading entry 1 to 0.
    Phi,
}

/// A directed edge of the coface graph (coherer edges decrease height by one;
/// phi edges point from leading 1 to leading 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoherenceEdge {
    pub kind: EdgeKind,
    pub source: FaceTuple,
    pub target: FaceTuple,
}

impl CoherenceEdge {
    pub fn coherer(source: &FaceTuple, laterality: usize) -> Option<CoherenceEdge> {
        let target = source.coherer_move(laterality)?;
        let (i, j) = (source.entries[laterality - 1], source.entries[laterality]);
        Some(CoherenceEdge {
            kind: EdgeKind::Coherer { laterality, i, j },
            source: source.clone(),
            target,
        })
    }

    pub fn phi(source: &FaceTuple) -> Option<CoherenceEdge> {
        let target = source.phi_move()?;
        Some(CoherenceEdge { kind: EdgeKind::Phi, source: source.clone(), target })
    }

    /// Laterality for ordering purposes; phi sorts before laterality 1.
    pub fn move_order(&self) -> usize {
        match self.kind {
            EdgeKind::Coherer { laterality, .. } => laterality,
            EdgeKind::Phi => 0,
        }
    }
}

/// All forward edges out of a vertex: the coherer edges at each ascent, plus
/// the phi edge when enhanced.
pub fn forward_edges(v: &FaceTuple, enhanced: bool) -> Vec<CoherenceEdge> {
    let mut out = Vec::new();
    if enhanced {
        if let Some(e) = CoherenceEdge::phi(v) {
            out.push(e);
        }
    }
    for n in 1..=v.k() {
        if let Some(e) = CoherenceEdge::coherer(v, n) {
            out.push(e);
        }
    }
    out
}

/// The graph `G_{s,k}` (or `G^phi_{1,k}` when `enhanced`).
#[derive(Clone, Debug)]
pub struct CofaceGraph {
    pub s: usize,
    pub k: usize,
    pub enhanced: bool,
    /// Vertices in lexicographic order of their tuples.
    pub vertices: Vec<FaceTuple>,
    index: HashMap<Vec<usize>, usize>,
    /// Directed edges, sorted by (source, move order).
    pub edges: Vec<CoherenceEdge>,
    /// Component id per vertex; ids ordered by smallest contained vertex.
    pub component: Vec<usize>,
    pub component_count: usize,
}

impl CofaceGraph {
    pub fn vertex_id(&self, v: &FaceTuple) -> Option<usize> {
        if v.s != self.s || v.k() != self.k {
            return None;
        }
        self.index.get(&v.entries).copied()
    }

    pub fn contains(&self, v: &FaceTuple) -> bool {
        self.vertex_id(v).is_some()
    }

    pub fn coherer_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| matches!(e.kind, EdgeKind::Coherer { .. })).count()
    }

    pub fn phi_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| matches!(e.kind, EdgeKind::Phi)).count()
    }

    pub fn component_of(&self, v: &FaceTuple) -> Option<usize> {
        self.vertex_id(v).map(|id| self.component[id])
    }

    /// Vertex ids of one component.
    pub fn component_vertices(&self, comp: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.component[i] == comp).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }
}

/// Build `G_{s,k}` (or the enhanced graph). `budget` bounds the vertex count.
pub fn build_graph(s: usize, k: usize, enhanced: bool, budget: usize) -> Result<CofaceGraph> {
    if s < 1 || k < 1 {
        return Err(Error::InvalidArgument("need s >= 1 and k >= 1".into()));
    }
    if enhanced && s != 1 {
        return Err(Error::InvalidArgument("enhanced graphs require s = 1".into()));
    }
    let mut count: usize = 1;
    for j in 0..=k {
        count = count.saturating_mul(s + j + 1);
        if count > budget {
            return Err(Error::BudgetExceeded { needed: count, budget });
        }
    }

    // vertices in lexicographic order
    let mut vertices = Vec::with_capacity(count);
    let mut entries = vec![0usize; k + 1];
    loop {
        vertices.push(FaceTuple { s, entries: entries.clone() });
        // odometer increment with position-dependent bounds
        let mut pos = k + 1;
        while pos > 0 {
            let j = pos - 1;
            if entries[j] < s + j {
                entries[j] += 1;
                break;
            }
            entries[j] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    debug_assert_eq!(vertices.len(), count);

    let index: HashMap<Vec<usize>, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v.entries.clone(), i)).collect();

    let mut edges = Vec::new();
    for v in &vertices {
        edges.extend(forward_edges(v, enhanced));
    }

    // union-find over edges
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in &edges {
        let a = index[&e.source.entries];
        let b = index[&e.target.entries];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut component = vec![usize::MAX; vertices.len()];
    let mut component_count = 0;
    for i in 0..vertices.len() {
        let r = find(&mut parent, i);
        if component[r] == usize::MAX {
            component[r] = component_count;
            component_count += 1;
        }
        component[i] = component[r];
    }

    Ok(CofaceGraph { s, k, enhanced, vertices, index, edges, component, component_count })
}

/// Out/in vertices of one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub component: usize,
    pub out_vertices: Vec<FaceTuple>,
    pub in_vertices: Vec<FaceTuple>,
}

/// Classify every component by its out- and in-vertices with respect to the
/// coherer edges (phi edges are ignored for this classification).
pub fn classify_vertices(g: &CofaceGraph) -> Vec<ComponentClass> {
    let mut classes: Vec<ComponentClass> = (0..g.component_count)
        .map(|component| ComponentClass {
            component,
            out_vertices: Vec::new(),
            in_vertices: Vec::new(),
        })
        .collect();
    for (i, v) in g.vertices.iter().enumerate() {
        let c = g.component[i];
        if v.is_out_vertex() {
            classes[c].out_vertices.push(v.clone());
        }
        if v.is_in_vertex() {
            classes[c].in_vertices.push(v.clone());
        }
    }
    classes
}

/// Enumerate directed (forward coherer only) paths from `from` to `to`, up to
/// `limit` paths. Each path is a sequence of edges.
pub fn directed_paths(
    g: &CofaceGraph,
    from: &FaceTuple,
    to: &FaceTuple,
    limit: usize,
) -> Vec<Vec<CoherenceEdge>> {
    let mut found = Vec::new();
    if !g.contains(from) || !g.contains(to) {
        return found;
    }
    let mut stack: Vec<CoherenceEdge> = Vec::new();
    fn dfs(
        current: &FaceTuple,
        to: &FaceTuple,
        stack: &mut Vec<CoherenceEdge>,
        found: &mut Vec<Vec<CoherenceEdge>>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        if current == to {
            found.push(stack.clone());
            return;
        }
        if current.height() <= to.height() {
            return;
        }
        for n in 1..=current.k() {
            if let Some(e) = CoherenceEdge::coherer(current, n) {
                stack.push(e.clone());
                dfs(&e.target, to, stack, found, limit);
                stack.pop();
            }
        }
    }
    dfs(from, to, &mut stack, &mut found, limit);
    found
}

/// The greedy forward step used by canonical descents: the forward edge with
/// the least move order (coherer of least laterality; phi only at in-vertices,
/// where no coherer applies).
pub fn greedy_step(v: &FaceTuple, enhanced: bool) -> Option<CoherenceEdge> {
    for n in 1..=v.k() {
        if let Some(e) = CoherenceEdge::coherer(v, n) {
            return Some(e);
        }
    }
    if enhanced {
        return CoherenceEdge::phi(v);
    }
    None
}

/// Greedy descent to the canonical sink: the in-vertex of the component, or
/// the all-zero tuple in the enhanced case.
pub fn greedy_descent(v: &FaceTuple, enhanced: bool) -> Vec<CoherenceEdge> {
    let mut path = Vec::new();
    let mut cur = v.clone();
    while let Some(e) = greedy_step(&cur, enhanced) {
        cur = e.target.clone();
        path.push(e);
    }
    path
}

/// Path in the enhanced graph from `from` to `to`, realized by descending each
/// endpoint to the all-zero tuple (descend to the in-vertex, flip the leading
/// 1 by a phi expansion, descend again, and so on) and joining there. Edges of
/// the second half are traversed backwards; the flag marks forward traversal.
pub fn phi_connect(
    g: &CofaceGraph,
    from: &FaceTuple,
    to: &FaceTuple,
) -> Result<Vec<(CoherenceEdge, bool)>> {
    if !g.enhanced {
        return Err(Error::InvalidArgument("phi_connect requires an enhanced graph".into()));
    }
    if !g.contains(from) || !g.contains(to) {
        return Err(Error::InvalidArgument("vertex not in graph".into()));
    }
    let down_from = greedy_descent(from, true);
    let down_to = greedy_descent(to, true);
    let mut path: Vec<(CoherenceEdge, bool)> =
        down_from.into_iter().map(|e| (e, true)).collect();
    path.extend(down_to.into_iter().rev().map(|e| (e, false)));
    Ok(path)
}

/// Binomial coefficient, exact in usize range.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// JSON report of a built graph.
pub fn graph_json(g: &CofaceGraph) -> serde_json::Value {
    serde_json::json!({
        "s": g.s,
        "k": g.k,
        "enhanced": g.enhanced,
        "vertex_count": g.vertices.len(),
        "edge_count": g.edges.len(),
        "coherer_edge_count": g.coherer_edge_count(),
        "phi_edge_count": g.phi_edge_count(),
        "component_count": g.component_count,
        "vertices": g.vertices.iter().map(|v| v.entries.clone()).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|e| serde_json::json!({
            "kind": match e.kind { EdgeKind::Coherer{..} => "coherer", EdgeKind::Phi => "phi" },
            "laterality": match e.kind { EdgeKind::Coherer{laterality, ..} => Some(laterality), EdgeKind::Phi => None },
            "indices": match e.kind { EdgeKind::Coherer{i, j, ..} => Some([i, j]), EdgeKind::Phi => None },
            "source": e.source.entries,
            "target": e.target.entries,
        })).collect::<Vec<_>>(),
        "components": g.component,
    })
}

/// DOT export: one color per component, out-vertices double-circled,
/// in-vertices filled, phi edges dashed. Output is stable-sorted.
pub fn graph_dot(g: &CofaceGraph) -> String {
    const PALETTE: [&str; 10] = [
        "blue", "red", "forestgreen", "darkorange", "purple", "brown", "deeppink", "teal",
        "goldenrod", "gray40",
    ];
    let mut out = String::new();
    out.push_str(&format!(
        "digraph G_{}_{}{} {{\n",
        g.s,
        g.k,
        if g.enhanced { "_phi" } else { "" }
    ));
    for (i, v) in g.vertices.iter().enumerate() {
        let color = PALETTE[g.component[i] % PALETTE.len()];
        let mut attrs = vec![format!("label=\"{v:?}\""), format!("color={color}")];
        if v.is_out_vertex() {
            attrs.push("peripheries=2".to_string());
        }
        if v.is_in_vertex() {
            attrs.push("style=filled".to_string());
            attrs.push(format!("fillcolor={color}"));
            attrs.push("fontcolor=white".to_string());
        }
        out.push_str(&format!("  v{} [{}];\n", i, attrs.join(", ")));
    }
    for e in &g.edges {
        let a = g.vertex_id(&e.source).unwrap();
        let b = g.vertex_id(&e.target).unwrap();
        match e.kind {
            EdgeKind::Coherer { laterality, .. } => {
                out.push_str(&format!("  v{a} -> v{b} [label=\"{laterality}\"];\n"));
            }
            EdgeKind::Phi => {
                out.push_str(&format!("  v{a} -> v{b} [style=dashed, label=\"phi\"];\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Convenience: build with the default budget.
pub fn build(s: usize, k: usize, enhanced: bool) -> Result<CofaceGraph> {
    build_graph(s, k, enhanced, DEFAULT_VERTEX_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ft(s: usize, entries: &[usize]) -> FaceTuple {
        FaceTuple::new(s, entries.to_vec()).unwrap()
    }

    #[test]
    fn height_and_rank_examples() {
        assert_eq!(ft(1, &[1, 1, 1, 0]).height(), 3);
        assert_eq!(ft(1, &[0, 0, 0]).height(), 0);
        assert_eq!(ft(1, &[0, 2, 3, 4]).height(), 9);
        assert_eq!(ft(1, &[1, 2, 3, 2, 4]).rank(), 3);
        assert_eq!(ft(1, &[1, 1, 2, 3]).rank(), 2);
        assert_eq!(ft(3, &[3, 2, 1, 0]).rank(), 0);
        assert!(ft(3, &[3, 2, 1, 0]).is_in_vertex());
    }

    #[test]
    fn tuple_bounds_enforced() {
        assert!(FaceTuple::new(1, vec![2, 0]).is_err());
        assert!(FaceTuple::new(1, vec![1, 2, 3]).is_ok());
        assert!(FaceTuple::new(1, vec![1, 2, 4]).is_err());
    }

    #[test]
    fn g12_statistics() {
        let g = build(1, 2, false).unwrap();
        assert_eq!(g.vertices.len(), 24);
        assert_eq!(g.edges.len(), 24);
        assert_eq!(g.component_count, 4);
    }

    #[test]
    fn g11_exhaustive_oracle() {
        // Enumerate all pairs (i_0, i_1) with i_0 in {0,1}, i_1 in {0,1,2} by
        // hand and count edges: an edge exists exactly at strict ascents.
        let mut expect_edges = 0;
        for i0 in 0..=1usize {
            for i1 in 0..=2usize {
                if i0 < i1 {
                    expect_edges += 1;
                }
            }
        }
        let g = build(1, 1, false).unwrap();
        assert_eq!(g.vertices.len(), 6);
        assert_eq!(g.edges.len(), 3);
        assert_eq!(expect_edges, 3);
        assert_eq!(g.component_count, 3);
        // every component is a single edge: 2 vertices each, except... 6
        // vertices, 3 components, 3 edges means each component is one edge.
        for c in 0..3 {
            assert_eq!(g.component_vertices(c).len(), 2);
        }
    }

    #[test]
    fn g12_enhanced_statistics() {
        let g = build(1, 2, true).unwrap();
        assert_eq!(g.vertices.len(), 24);
        assert_eq!(g.coherer_edge_count(), 24);
        assert_eq!(g.phi_edge_count(), 12);
        assert_eq!(g.edges.len(), 36);
        assert!(g.is_connected());
    }

    #[test]
    fn vertex_and_edge_formulas() {
        for s in 1..=3 {
            for k in 1..=3 {
                let g = build(s, k, false).unwrap();
                let expect_v: usize = (0..=k).map(|j| s + j + 1).product();
                assert_eq!(g.vertices.len(), expect_v, "s={s} k={k}");
                assert_eq!(2 * g.edges.len(), k * expect_v, "s={s} k={k}");
                assert_eq!(g.component_count, binomial(s + k + 1, k + 1), "s={s} k={k}");
            }
        }
    }

    #[test]
    fn components_match_injection_oracle() {
        let g = build(2, 2, false).unwrap();
        for (i, v) in g.vertices.iter().enumerate() {
            for (j, w) in g.vertices.iter().enumerate() {
                let same_component = g.component[i] == g.component[j];
                let same_image = v.injection_image() == w.injection_image();
                assert_eq!(same_component, same_image, "{v:?} vs {w:?}");
            }
        }
    }

    #[test]
    fn one_out_one_in_per_component() {
        for (s, k) in [(1, 2), (2, 2), (1, 3)] {
            let g = build(s, k, false).unwrap();
            for class in classify_vertices(&g) {
                assert_eq!(class.out_vertices.len(), 1, "s={s} k={k}");
                assert_eq!(class.in_vertices.len(), 1, "s={s} k={k}");
                assert!(class.out_vertices[0].is_out_vertex());
            }
        }
    }

    #[test]
    fn component_of_fig2_example() {
        // The component of the out-vertex (0,2,3,4) in G_{1,3} has in-vertex
        // (1,1,1,0).
        let g = build(1, 3, false).unwrap();
        let out = ft(1, &[0, 2, 3, 4]);
        let comp = g.component_of(&out).unwrap();
        let class = &classify_vertices(&g)[comp];
        assert_eq!(class.out_vertices, vec![out]);
        assert_eq!(class.in_vertices, vec![ft(1, &[1, 1, 1, 0])]);
    }

    #[test]
    fn directed_paths_have_canonical_length() {
        let g = build(1, 3, false).unwrap();
        let from = ft(1, &[0, 2, 3, 4]);
        let to = ft(1, &[1, 1, 1, 0]);
        let paths = directed_paths(&g, &from, &to, 10_000);
        assert!(!paths.is_empty());
        for p in &paths {
            assert_eq!(p.len(), 3 * 4 / 2);
        }
    }

    #[test]
    fn g11_single_direct_path() {
        let g = build(1, 1, false).unwrap();
        let paths = directed_paths(&g, &ft(1, &[0, 1]), &ft(1, &[0, 0]), 100);
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 1);
    }

    #[test]
    fn hexagon_component_paths_by_brute_force() {
        // In G_{1,2} each component is a hexagon; from the out-vertex to the
        // in-vertex there are exactly 2 directed boundary paths of length 3.
        let g = build(1, 2, false).unwrap();
        for class in classify_vertices(&g) {
            let paths =
                directed_paths(&g, &class.out_vertices[0], &class.in_vertices[0], 10_000);
            assert_eq!(paths.len(), 2);
            assert!(paths.iter().all(|p| p.len() == 3));
        }
    }

    #[test]
    fn directed_edges_decrease_height_by_one() {
        let g = build(2, 3, false).unwrap();
        for e in &g.edges {
            assert_eq!(e.source.height(), e.target.height() + 1);
        }
    }

    #[test]
    fn rank_counts_outgoing_edges() {
        let g = build(2, 3, false).unwrap();
        for v in &g.vertices {
            let outgoing = g.edges.iter().filter(|e| &e.source == v).count();
            assert_eq!(v.rank(), outgoing);
        }
    }

    #[test]
    fn phi_connect_reaches_zero() {
        let g = build(1, 3, true).unwrap();
        let zero = ft(1, &[0, 0, 0, 0]);
        // BFS-free check: every vertex descends to (0,...,0)
        for v in &g.vertices {
            let d = greedy_descent(v, true);
            let end = d.last().map(|e| e.target.clone()).unwrap_or_else(|| v.clone());
            assert_eq!(end, zero, "descent from {v:?}");
        }
        let p = phi_connect(&g, &ft(1, &[1, 1, 0, 0]), &zero).unwrap();
        assert!(!p.is_empty());
        let p2 = phi_connect(&g, &zero, &zero).unwrap();
        assert!(p2.is_empty());
    }

    #[test]
    fn enhanced_graphs_connected() {
        for k in 2..=4 {
            let g = build(1, k, true).unwrap();
            assert!(g.is_connected(), "k={k}");
        }
    }

    #[test]
    fn budget_and_argument_errors() {
        assert!(matches!(build_graph(1, 3, false, 10), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(build_graph(2, 2, true, 1000), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn dot_export_is_stable() {
        let g = build(1, 1, true).unwrap();
        let a = graph_dot(&g);
        let b = graph_dot(&build(1, 1, true).unwrap());
        assert_eq!(a, b);
        assert!(a.contains("style=dashed"));
        assert!(a.contains("peripheries=2"));
    }
}
