//! Permutohedron combinatorics: the Cayley graph of the symmetric group on
//! adjacent transpositions (the 1-skeleton of `P_k`), the face lattice via
//! ordered set partitions, and the explicit vertex map from coface-graph
//! components onto the Cayley graph.

use crate::graph::{CofaceGraph, EdgeKind, FaceTuple};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Permutation of `{1, ..., n}` in one-line notation: `images[i]` is the image
/// of `i + 1`. Composition is right-to-left: `(a * b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.images.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!("not a permutation: {images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self * other`, applying `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// The adjacent transposition `(i, i+1)`, `1 <= i < n`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Permutation {
        assert!(i >= 1 && i < n);
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Right-multiply by `(i, i+1)`: swaps positions `i`, `i+1` of the one-line
    /// form.
    pub fn right_adjacent(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }
}

/// All permutations of `{1..=n}` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Cayley graph of `S_{k+1}` on the adjacent transpositions; the 1-skeleton of
/// the permutohedron `P_k`.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub k: usize,
    pub vertices: Vec<Permutation>,
    index: HashMap<Vec<usize>, usize>,
    /// Undirected edges `(a, b, label)` with `a < b`; label is the generator
    /// index `i` of `(i, i+1)`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CayleyGraph {
    pub fn new(k: usize) -> Self {
        let n = k + 1;
        let vertices = all_permutations(n);
        let index: HashMap<Vec<usize>, usize> =
            vertices.iter().enumerate().map(|(i, p)| (p.images.clone(), i)).collect();
        let mut edges = Vec::new();
        for (a, p) in vertices.iter().enumerate() {
            for i in 1..n {
                let q = p.right_adjacent(i);
                let b = index[&q.images];
                if a < b {
                    edges.push((a, b, i));
                }
            }
        }
        edges.sort();
        CayleyGraph { k, vertices, index, edges }
    }

    pub fn vertex_id(&self, p: &Permutation) -> Option<usize> {
        self.index.get(&p.images).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().any(|&(x, y, _)| (x, y) == (a, b))
    }
}

/// Ordered tuple `(A_1, ..., A_r)` of disjoint nonempty blocks covering
/// `{1..=n}`; labels a face of codimension... of dimension `k + 1 - r` of `P_k`
/// with `n = k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut total = 0;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &x in b {
                if x < 1 || x > n || seen[x] {
                    return Err(Error::InvalidArgument(format!("bad block element {x}")));
                }
                seen[x] = true;
                total += 1;
            }
        }
        if total != n {
            return Err(Error::InvalidArgument("blocks do not cover the ground set".into()));
        }
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort();
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    /// A permutation lies on this face iff it maps the `j`-th consecutive
    /// block of positions onto the set `A_j`.
    pub fn contains_vertex(&self, sigma: &Permutation) -> bool {
        let mut pos = 0;
        for block in &self.blocks {
            let mut image: Vec<usize> =
                (pos..pos + block.len()).map(|p| sigma.images[p]).collect();
            image.sort();
            if &image != block {
                return false;
            }
            pos += block.len();
        }
        true
    }
}

/// Enumerate all ordered partitions of `{1..=n}` into exactly `r` blocks, in a
/// deterministic order.
pub fn ordered_partitions(n: usize, r: usize) -> Vec<OrderedPartition> {
    // assign each element 1..=n to a block 0..r, keeping all blocks nonempty
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    fn rec(n: usize, r: usize, pos: usize, assignment: &mut Vec<usize>, out: &mut Vec<OrderedPartition>) {
        if pos == n {
            let mut blocks = vec![Vec::new(); r];
            for (i, &b) in assignment.iter().enumerate() {
                blocks[b].push(i + 1);
            }
            if blocks.iter().all(|b| !b.is_empty()) {
                out.push(OrderedPartition { blocks });
            }
            return;
        }
        for b in 0..r {
            assignment[pos] = b;
            rec(n, r, pos + 1, assignment, out);
        }
    }
    rec(n, r, 0, &mut assignment, &mut out);
    out
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, r: usize) -> usize {
    if r == 0 {
        return usize::from(n == 0);
    }
    if r > n {
        return 0;
    }
    let mut row = vec![0usize; r + 1];
    row[0] = 1; // S(0,0)
    for _ in 1..=n {
        for j in (1..=r).rev() {
            row[j] = j * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[r]
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The permutohedron `P_k`: Cayley graph plus the full face lattice.
#[derive(Clone, Debug)]
pub struct Permutohedron {
    pub k: usize,
    pub skeleton: CayleyGraph,
    /// `faces[r - 1]` lists the faces with `r` blocks (dimension `k + 1 - r`).
    pub faces: Vec<Vec<OrderedPartition>>,
}

pub fn build_permutohedron(k: usize, budget: usize) -> Result<Permutohedron> {
    let n = k + 1;
    if factorial(n) > budget {
        return Err(Error::BudgetExceeded { needed: factorial(n), budget });
    }
    let skeleton = CayleyGraph::new(k);
    let faces = (1..=n).map(|r| ordered_partitions(n, r)).collect();
    Ok(Permutohedron { k, skeleton, faces })
}

/// Edge face of `P_k` for the pair `(sigma, (i, i+1))`: the ordered partition
/// obtained by applying `sigma` to the consecutive blocks
/// `({1}, ..., {i, i+1}, ..., {k+1})`.
pub fn edge_face(sigma: &Permutation, i: usize) -> OrderedPartition {
    let n = sigma.n();
    assert!(i >= 1 && i < n);
    let mut blocks = Vec::new();
    let mut x = 1;
    while x <= n {
        if x == i {
            let mut b = vec![sigma.apply(i), sigma.apply(i + 1)];
            b.sort();
            blocks.push(b);
            x += 2;
        } else {
            blocks.push(vec![sigma.apply(x)]);
            x += 1;
        }
    }
    OrderedPartition { blocks }
}

/// The explicit vertex map from a component of `G_{1,k}` to `S_{k+1}`: the
/// product of adjacent transpositions `(n_1, n_1+1) ... (n_r, n_r+1)` over the
/// lateralities along any path from the out-vertex, appended on the right as
/// the path is traversed.
///
/// Returns the bijection, having verified edge-by-edge consistency (which
/// makes the value path-independent) and injectivity.
pub struct ComponentIso {
    pub out_vertex: FaceTuple,
    pub map: HashMap<Vec<usize>, Permutation>,
}

pub fn phi_map(g: &CofaceGraph, component: usize) -> Result<ComponentIso> {
    if g.enhanced {
        return Err(Error::InvalidArgument("phi_map expects a graph without phi edges".into()));
    }
    let ids = g.component_vertices(component);
    if ids.is_empty() {
        return Err(Error::InvalidArgument(format!("no such component {component}")));
    }
    let n = g.k + 1;
    let out_vertex = g.vertices[ids[0]].component_out_vertex();

    // BFS assignment from the out-vertex, multiplying by (lat, lat+1) on the
    // right along each crossed edge.
    let mut map: HashMap<Vec<usize>, Permutation> = HashMap::new();
    map.insert(out_vertex.entries.clone(), Permutation::identity(n));
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(out_vertex.clone());
    while let Some(v) = queue.pop_front() {
        let sigma = map[&v.entries].clone();
        for e in crate::graph::forward_edges(&v, false) {
            let EdgeKind::Coherer { laterality, .. } = e.kind else { unreachable!() };
            let next = sigma.right_adjacent(laterality);
            if let Some(existing) = map.get(&e.target.entries) {
                if existing != &next {
                    return Err(Error::Invalid(format!(
                        "laterality word not path-independent at {:?}",
                        e.target
                    )));
                }
            } else {
                map.insert(e.target.entries.clone(), next);
                queue.push_back(e.target.clone());
            }
        }
        // also walk edges backwards so the BFS covers the whole component
        for w_id in &ids {
            let w = &g.vertices[*w_id];
            for e in crate::graph::forward_edges(w, false) {
                if e.target == v && !map.contains_key(&w.entries) {
                    let EdgeKind::Coherer { laterality, .. } = e.kind else { unreachable!() };
                    map.insert(w.entries.clone(), sigma.right_adjacent(laterality));
                    queue.push_back(w.clone());
                }
            }
        }
    }

    if map.len() != ids.len() {
        return Err(Error::Invalid("component not covered by the laterality walk".into()));
    }
    // full edge-consistency check: makes the assignment path-independent
    for id in &ids {
        let v = &g.vertices[*id];
        for e in crate::graph::forward_edges(v, false) {
            let EdgeKind::Coherer { laterality, .. } = e.kind else { unreachable!() };
            let lhs = map[&v.entries].right_adjacent(laterality);
            if lhs != map[&e.target.entries] {
                return Err(Error::Invalid(format!("edge inconsistency at {v:?}")));
            }
        }
    }
    // injectivity
    let mut seen = std::collections::HashSet::new();
    for p in map.values() {
        if !seen.insert(p.images.clone()) {
            return Err(Error::Invalid("laterality map not injective".into()));
        }
    }
    Ok(ComponentIso { out_vertex, map })
}

/// Verify that `phi_map` of a component is a graph isomorphism onto the Cayley
/// graph: bijective on vertices and edge-preserving with labels equal to the
/// lateralities.
pub fn verify_component_is_permutohedron(g: &CofaceGraph, component: usize) -> Result<ComponentIso> {
    let iso = phi_map(g, component)?;
    let cayley = CayleyGraph::new(g.k);
    if iso.map.len() != cayley.vertices.len() {
        return Err(Error::Invalid(format!(
            "component has {} vertices, Cayley graph has {}",
            iso.map.len(),
            cayley.vertices.len()
        )));
    }
    let ids = g.component_vertices(component);
    let mut mapped_edges = 0usize;
    for id in &ids {
        let v = &g.vertices[*id];
        for e in crate::graph::forward_edges(v, false) {
            let a = cayley.vertex_id(&iso.map[&v.entries]).unwrap();
            let b = cayley.vertex_id(&iso.map[&e.target.entries]).unwrap();
            if !cayley.has_edge(a, b) {
                return Err(Error::Invalid("edge not preserved".into()));
            }
            mapped_edges += 1;
        }
    }
    if mapped_edges != cayley.edges.len() {
        return Err(Error::Invalid("edge counts differ".into()));
    }
    Ok(iso)
}

/// Explicit isomorphism between two undirected graphs given as adjacency
/// lists, by invariant refinement plus backtracking; `None` when the graphs
/// are not isomorphic. Suited to the small vertex-transitive graphs here.
pub fn graph_isomorphism(
    adj_a: &[Vec<usize>],
    adj_b: &[Vec<usize>],
) -> Option<Vec<usize>> {
    let n = adj_a.len();
    if n != adj_b.len() {
        return None;
    }
    let mut deg_a: Vec<usize> = adj_a.iter().map(|v| v.len()).collect();
    let mut deg_b: Vec<usize> = adj_b.iter().map(|v| v.len()).collect();
    deg_a.sort();
    deg_b.sort();
    if deg_a != deg_b {
        return None;
    }

    // distance profile from a vertex, used as a refinement invariant
    fn bfs_layers(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; adj.len()];
        dist[start] = 0;
        let mut q = std::collections::VecDeque::from([start]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }

    let dist_a0 = bfs_layers(adj_a, 0);
    // try mapping vertex 0 of A to each candidate in B (vertex-transitive
    // targets make the first candidate succeed in practice)
    for b0 in 0..n {
        if adj_b[b0].len() != adj_a[0].len() {
            continue;
        }
        let dist_b0 = bfs_layers(adj_b, b0);
        let mut hist_a = std::collections::HashMap::new();
        let mut hist_b = std::collections::HashMap::new();
        for i in 0..n {
            *hist_a.entry(dist_a0[i]).or_insert(0usize) += 1;
            *hist_b.entry(dist_b0[i]).or_insert(0usize) += 1;
        }
        if hist_a != hist_b {
            continue;
        }
        // order A's vertices by BFS from 0 so each new vertex has a mapped neighbor
        let mut order = Vec::with_capacity(n);
        {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut q = std::collections::VecDeque::from([0usize]);
            while let Some(x) = q.pop_front() {
                order.push(x);
                for &y in &adj_a[x] {
                    if !seen[y] {
                        seen[y] = true;
                        q.push_back(y);
                    }
                }
            }
            if order.len() != n {
                // disconnected: fall back to plain order
                for v in 0..n {
                    if !seen[v] {
                        order.push(v);
                    }
                }
            }
        }
        let mut mapping = vec![usize::MAX; n];
        let mut used = vec![false; n];
        mapping[0] = b0;
        used[b0] = true;
        let adj_set_b: Vec<std::collections::HashSet<usize>> =
            adj_b.iter().map(|v| v.iter().copied().collect()).collect();

        fn backtrack(
            pos: usize,
            order: &[usize],
            adj_a: &[Vec<usize>],
            adj_set_b: &[std::collections::HashSet<usize>],
            dist_a0: &[usize],
            dist_b0: &[usize],
            mapping: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let v = order[pos];
            if mapping[v] != usize::MAX {
                return backtrack(pos + 1, order, adj_a, adj_set_b, dist_a0, dist_b0, mapping, used);
            }
            // candidates: unused vertices of B at the same BFS distance whose
            // adjacency matches all already-mapped neighbors of v
            let n = mapping.len();
            'cand: for c in 0..n {
                if used[c] || dist_b0[c] != dist_a0[v] || adj_set_b[c].len() != adj_a[v].len() {
                    continue;
                }
                for &w in &adj_a[v] {
                    if mapping[w] != usize::MAX && !adj_set_b[c].contains(&mapping[w]) {
                        continue 'cand;
                    }
                }
                mapping[v] = c;
                used[c] = true;
                if backtrack(pos + 1, order, adj_a, adj_set_b, dist_a0, dist_b0, mapping, used) {
                    return true;
                }
                mapping[v] = usize::MAX;
                used[c] = false;
            }
            false
        }

        if backtrack(1, &order, adj_a, &adj_set_b, &dist_a0, &dist_b0, &mut mapping, &mut used) {
            // final verification: mapping preserves adjacency both ways
            let mut edge_count_a = 0;
            let mut ok = true;
            for v in 0..n {
                for &w in &adj_a[v] {
                    edge_count_a += 1;
                    if !adj_set_b[mapping[v]].contains(&mapping[w]) {
                        ok = false;
                    }
                }
            }
            let edge_count_b: usize = adj_b.iter().map(|v| v.len()).sum();
            if ok && edge_count_a == edge_count_b {
                return Some(mapping);
            }
        }
    }
    None
}

/// Undirected adjacency lists of a coface graph (both edge kinds).
pub fn coface_adjacency(g: &CofaceGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertices.len()];
    for e in &g.edges {
        let a = g.vertex_id(&e.source).unwrap();
        let b = g.vertex_id(&e.target).unwrap();
        adj[a].push(b);
        adj[b].push(a);
    }
    for v in adj.iter_mut() {
        v.sort();
    }
    adj
}

/// Undirected adjacency lists of one component, vertices renumbered.
pub fn component_adjacency(g: &CofaceGraph, component: usize) -> Vec<Vec<usize>> {
    let ids = g.component_vertices(component);
    let renumber: HashMap<usize, usize> =
        ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let full = coface_adjacency(g);
    ids.iter().map(|&old| full[old].iter().map(|x| renumber[x]).collect()).collect()
}

/// Undirected adjacency lists of a Cayley graph.
pub fn cayley_adjacency(c: &CayleyGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); c.vertices.len()];
    for &(a, b, _) in &c.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for v in adj.iter_mut() {
        v.sort();
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{binomial, build};

    #[test]
    fn composition_convention() {
        // (a * b)(i) = a(b(i))
        let a = Permutation::new(vec![2, 1, 3]).unwrap();
        let b = Permutation::new(vec![1, 3, 2]).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.apply(2), a.apply(b.apply(2)));
        assert_eq!(ab.images, vec![2, 3, 1]);
    }

    #[test]
    fn cayley_graph_shape() {
        let c = CayleyGraph::new(2);
        assert_eq!(c.vertices.len(), 6);
        assert_eq!(c.edges.len(), 6);
        let c3 = CayleyGraph::new(3);
        assert_eq!(c3.vertices.len(), 24);
        assert_eq!(c3.edges.len(), 36);
    }

    #[test]
    fn face_counts_k2() {
        let p = build_permutohedron(2, 10_000).unwrap();
        // r = 3: 6 vertices, r = 2: 6 edges, r = 1: the hexagon itself
        assert_eq!(p.faces[2].len(), 6);
        assert_eq!(p.faces[1].len(), 6);
        assert_eq!(p.faces[0].len(), 1);
    }

    #[test]
    fn face_counts_match_stirling() {
        for k in 1..=4 {
            let p = build_permutohedron(k, 10_000_000).unwrap();
            for r in 1..=k + 1 {
                assert_eq!(
                    p.faces[r - 1].len(),
                    factorial(r) * stirling2(k + 1, r),
                    "k={k} r={r}"
                );
            }
        }
    }

    #[test]
    fn fourteen_two_faces_for_k3() {
        let p = build_permutohedron(3, 10_000).unwrap();
        assert_eq!(p.faces[1].len(), 14);
        assert_eq!(p.skeleton.vertices.len(), 24);
        assert_eq!(p.skeleton.edges.len(), 36);
    }

    #[test]
    fn worked_edge_face_examples() {
        // cycle (123) is one-line [2,3,1,4]; with (34) the edge is ({2},{3},{1,4})
        let sigma = Permutation::new(vec![2, 3, 1, 4]).unwrap();
        let f = edge_face(&sigma, 3);
        assert_eq!(f.blocks, vec![vec![2], vec![3], vec![1, 4]]);
        // cycle (14) is one-line [4,2,3,1]; with (12) the edge is ({4,2},{3},{1})
        let sigma = Permutation::new(vec![4, 2, 3, 1]).unwrap();
        let f = edge_face(&sigma, 1);
        assert_eq!(f.blocks, vec![vec![2, 4], vec![3], vec![1]]);
        // both one-line forms lie on their edge
        assert!(f.contains_vertex(&Permutation::new(vec![4, 2, 3, 1]).unwrap()));
        assert!(f.contains_vertex(&Permutation::new(vec![2, 4, 3, 1]).unwrap()));
    }

    #[test]
    fn vertices_on_face_iff_blockwise_image() {
        let p = build_permutohedron(2, 10_000).unwrap();
        // each edge face contains exactly 2 vertices; the big face contains 6
        for f in &p.faces[1] {
            let count =
                p.skeleton.vertices.iter().filter(|v| f.contains_vertex(v)).count();
            assert_eq!(count, 2, "{f:?}");
        }
        assert_eq!(
            p.skeleton.vertices.iter().filter(|v| p.faces[0][0].contains_vertex(v)).count(),
            6
        );
    }

    #[test]
    fn phi_map_out_vertex_is_identity() {
        let g = build(1, 2, false).unwrap();
        let iso = phi_map(&g, 0).unwrap();
        assert_eq!(iso.map[&iso.out_vertex.entries], Permutation::identity(3));
    }

    #[test]
    fn hexagon_component_maps_onto_cayley_s3() {
        let g = build(1, 2, false).unwrap();
        for comp in 0..g.component_count {
            verify_component_is_permutohedron(&g, comp).unwrap();
        }
    }

    #[test]
    fn components_isomorphic_to_skeleton_for_k_up_to_3() {
        for k in 1..=3 {
            let g = build(1, k, false).unwrap();
            for comp in 0..g.component_count {
                verify_component_is_permutohedron(&g, comp).unwrap();
            }
            // and across s: components of G_{2,k} are the same graphs
            let g2 = build(2, k, false).unwrap();
            let a = component_adjacency(&g2, 0);
            let b = cayley_adjacency(&CayleyGraph::new(k));
            assert!(graph_isomorphism(&a, &b).is_some(), "k={k}");
        }
    }

    #[test]
    fn iso_checker_hexagon_cases() {
        // hexagon vs 6-cycle: isomorphic
        let hexagon = vec![vec![1, 5], vec![0, 2], vec![1, 3], vec![2, 4], vec![3, 5], vec![0, 4]];
        let g = build(1, 2, false).unwrap();
        let comp = component_adjacency(&g, 0);
        assert!(graph_isomorphism(&comp, &hexagon).is_some());
        // hexagon vs two triangles: not isomorphic
        let two_triangles =
            vec![vec![1, 2], vec![0, 2], vec![0, 1], vec![4, 5], vec![3, 5], vec![3, 4]];
        assert!(graph_isomorphism(&hexagon, &two_triangles).is_none());
    }

    #[test]
    fn stirling_small_table() {
        assert_eq!(stirling2(3, 2), 3);
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(5, 3), 25);
        assert_eq!(binomial(5, 3), 10);
    }
}
