//! Combinatorial invariants of spanning subgraphs `H` of a marked graph `G`
//! in a fixed host surface.
//!
//! Everything here is integer bookkeeping on the rotation system: component
//! counts by union–find, boundary circles of the neighbourhood of `H` by
//! tracing faces of the induced rotation, and the complement surface through
//! its Euler characteristic and component count. `k` and `l` then follow from
//! `s + s_perp + 2l = 2g` and `k + l + s = n`.

use thiserror::Error;

use crate::map::{CombinatorialMap, EmbeddedSubgraph, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("edge index {0} is not an edge of the marked graph")]
    NotSpanning(usize),
    #[error("the marked graph is not the whole cellulation")]
    NotCellulation,
    #[error("{0} graph edges exceed the limit of {1}")]
    TooManyEdges(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubgraphInvariants {
    pub c: i64,
    pub v: i64,
    pub e: i64,
    pub n: i64,
    pub bc: i64,
    pub s: i64,
    pub s_perp: i64,
    pub k: i64,
    pub l: i64,
}

/// Precomputed data for evaluating invariants of many subgraphs of one `G`.
///
/// Subgraphs are given as bitmasks over [`graph_edges`](Self::graph_edges):
/// bit `i` selects the `i`-th marked edge.
#[derive(Debug, Clone)]
pub struct InvariantContext<'a> {
    graph: &'a EmbeddedSubgraph,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    rotations: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    graph_edges: Vec<usize>,
    num_vertices: usize,
    num_orbit_vertices: usize,
    genus: i64,
    chi: i64,
    c_graph: i64,
    v_graph: i64,
}

impl<'a> InvariantContext<'a> {
    pub fn new(graph: &'a EmbeddedSubgraph) -> Self {
        let host = graph.host();
        let rotations = host.vertex_orbits();
        Self {
            graph,
            vertex_of: host.vertex_index(),
            edge_of: host.edge_index(),
            num_orbit_vertices: rotations.len(),
            rotations,
            faces: host.faces(),
            graph_edges: graph.graph_edges(),
            num_vertices: host.num_vertices(),
            genus: host.genus() as i64,
            chi: host.euler_characteristic(),
            c_graph: graph.graph_components() as i64,
            v_graph: graph.num_graph_vertices() as i64,
        }
    }

    pub fn graph(&self) -> &EmbeddedSubgraph {
        self.graph
    }

    pub fn host(&self) -> &CombinatorialMap {
        self.graph.host()
    }

    /// Host edge indices of the marked edges; bit `i` of a mask is `graph_edges()[i]`.
    pub fn graph_edges(&self) -> &[usize] {
        &self.graph_edges
    }

    pub fn num_graph_edges(&self) -> usize {
        self.graph_edges.len()
    }

    /// Total genus of the host surface.
    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// `c(G)`.
    pub fn graph_components(&self) -> i64 {
        self.c_graph
    }

    /// `v(G)`.
    pub fn graph_vertices(&self) -> i64 {
        self.v_graph
    }

    /// Membership of every host edge in `H`.
    pub fn host_edge_marks(&self, mask: u64) -> Vec<bool> {
        let mut in_h = vec![false; self.host().num_edges()];
        for (i, &e) in self.graph_edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                in_h[e] = true;
            }
        }
        in_h
    }

    /// Converts a list of host edge indices into a mask.
    pub fn mask_of(&self, h_edges: &[usize]) -> Result<u64, InvariantError> {
        let mut mask = 0u64;
        for &e in h_edges {
            let pos = self
                .graph_edges
                .iter()
                .position(|&g| g == e)
                .ok_or(InvariantError::NotSpanning(e))?;
            mask |= 1 << pos;
        }
        Ok(mask)
    }

    pub fn invariants(&self, mask: u64) -> SubgraphInvariants {
        let host = self.host();
        let in_h = self.host_edge_marks(mask);
        let g_vertex = self.graph.vertex_marks();

        let e = mask.count_ones() as i64;
        let v = self.v_graph;

        let mut uf = UnionFind::new(self.num_vertices);
        for (i, &h) in in_h.iter().enumerate() {
            if h {
                let d = host.edges()[i];
                uf.union(self.vertex_of[d], self.vertex_of[host.alpha(d)]);
            }
        }
        let mut roots = vec![false; self.num_vertices];
        let mut c = 0;
        for vtx in 0..self.num_vertices {
            if g_vertex[vtx] {
                let r = uf.find(vtx);
                if !roots[r] {
                    roots[r] = true;
                    c += 1;
                }
            }
        }

        let bc = self.boundary_circles(&in_h);
        let c_perp = self.complement_components(&in_h);
        let chi_perp = self.chi - (v - e);
        let n = e - v + c;
        let s = 2 * c - v + e - bc;
        let s_perp = 2 * c_perp - chi_perp - bc;
        let g = self.genus;
        debug_assert!(s >= 0 && s % 2 == 0, "s = {s}");
        debug_assert!(s_perp >= 0 && s_perp % 2 == 0, "s_perp = {s_perp}");
        let k = n - g + (s_perp - s) / 2;
        let l = (2 * g - s - s_perp) / 2;
        debug_assert!(k >= 0 && l >= 0);
        SubgraphInvariants { c, v, e, n, bc, s, s_perp, k, l }
    }

    /// Boundary circles of the neighbourhood of `H`: faces of the induced
    /// rotation, plus one circle per marked vertex that `H` leaves bare.
    fn boundary_circles(&self, in_h: &[bool]) -> i64 {
        let host = self.host();
        let nd = host.num_darts();
        let mut sigma_h = vec![usize::MAX; nd];
        let mut bare = 0;
        for (vi, rot) in self.rotations.iter().enumerate() {
            let kept: Vec<usize> = rot.iter().copied().filter(|&d| in_h[self.edge_of[d]]).collect();
            if kept.is_empty() {
                if self.graph.vertex_marks()[vi] {
                    bare += 1;
                }
                continue;
            }
            for (i, &d) in kept.iter().enumerate() {
                sigma_h[d] = kept[(i + 1) % kept.len()];
            }
        }
        for i in self.num_orbit_vertices..self.num_vertices {
            if self.graph.vertex_marks()[i] {
                bare += 1;
            }
        }
        let mut seen = vec![false; nd];
        let mut orbits = 0;
        for start in 0..nd {
            if sigma_h[start] == usize::MAX || seen[start] {
                continue;
            }
            orbits += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = sigma_h[host.alpha(d)];
            }
        }
        orbits + bare
    }

    /// Components of the surface left after removing a neighbourhood of `H`.
    fn complement_components(&self, in_h: &[bool]) -> i64 {
        let host = self.host();
        let nf = self.faces.len();
        let iso = host.isolated();
        let ne = host.num_edges();
        let nv = self.num_vertices;
        // elements: faces, isolated-vertex faces, edges, vertices
        let face_base = 0;
        let iso_base = nf;
        let edge_base = nf + iso;
        let vert_base = edge_base + ne;
        let mut uf = UnionFind::new(vert_base + nv);
        let g_vertex = self.graph.vertex_marks();
        for (fi, face) in self.faces.iter().enumerate() {
            for &d in face {
                let e = self.edge_of[d];
                if !in_h[e] {
                    uf.union(face_base + fi, edge_base + e);
                }
                let vtx = self.vertex_of[d];
                if !g_vertex[vtx] {
                    uf.union(face_base + fi, vert_base + vtx);
                }
            }
        }
        for i in 0..iso {
            let vtx = self.num_orbit_vertices + i;
            if !g_vertex[vtx] {
                uf.union(iso_base + i, vert_base + vtx);
            }
        }
        let mut roots: Vec<usize> = (0..nf + iso).map(|f| uf.find(f)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len() as i64
    }
}

/// Invariants of the spanning subgraph of `graph` with edge set `h_edges`
/// (host edge indices).
pub fn invariants(graph: &EmbeddedSubgraph, h_edges: &[usize]) -> Result<SubgraphInvariants, InvariantError> {
    let ctx = InvariantContext::new(graph);
    let mask = ctx.mask_of(h_edges)?;
    Ok(ctx.invariants(mask))
}

/// Edge indices of `H*` in `m.dual()`: the duals of the edges not in `H`.
/// Edge indices are shared between a map and its dual.
pub fn dual_subgraph(graph: &EmbeddedSubgraph, h_edges: &[usize]) -> Result<Vec<usize>, InvariantError> {
    if !graph.is_cellulation() {
        return Err(InvariantError::NotCellulation);
    }
    let m = graph.host().num_edges();
    if let Some(&bad) = h_edges.iter().find(|&&e| e >= m) {
        return Err(InvariantError::NotSpanning(bad));
    }
    Ok((0..m).filter(|e| !h_edges.contains(e)).collect())
}

/// Mask of `H*` inside the dual cellulation, for masks over all edges.
pub fn dual_mask(num_edges: usize, mask: u64) -> u64 {
    let all = if num_edges == 64 { u64::MAX } else { (1u64 << num_edges) - 1 };
    !mask & all
}
