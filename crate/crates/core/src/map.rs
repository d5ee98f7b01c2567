//! Oriented combinatorial maps (ribbon graphs) and graphs marked inside them.
//!
//! Darts are `0..2m` internally and `1..=2m` in every text format. `sigma`
//! is the counterclockwise successor of a dart around its vertex, `alpha`
//! pairs the two darts of an edge and faces are the orbits of
//! `phi = sigma ∘ alpha`, i.e. `phi(d) = sigma(alpha(d))`. Walking a face
//! along `phi` keeps the face on the right, so the counterclockwise order of
//! darts around a face centre is the `phi^-1` order.
//!
//! Vertices are numbered by the minimum dart of their `sigma`-orbit, followed
//! by the isolated vertices. Edges are numbered by their minimum dart and are
//! oriented from the vertex of that dart towards the other end.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Dart = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("sigma is not a permutation of the darts: {0}")]
    MalformedPermutation(String),
    #[error("alpha is not a fixed-point-free involution: {0}")]
    AlphaNotInvolution(String),
    #[error("dart {0} appears in only one of sigma and alpha")]
    DanglingDart(usize),
    #[error("malformed map text: {0}")]
    Syntax(String),
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(usize),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("graph edge {0} has an endpoint outside the graph vertices")]
    EdgeOutsideVertices(usize),
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
}

/// Orbits of a permutation, each starting at its minimum element, sorted by that minimum.
pub fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            orbit.push(d);
            d = perm[d];
        }
        out.push(orbit);
    }
    out
}

/// Simple union–find over `0..n`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    sigma: Vec<Dart>,
    alpha: Vec<Dart>,
    isolated: usize,
}

impl CombinatorialMap {
    pub fn new(sigma: Vec<Dart>, alpha: Vec<Dart>, isolated: usize) -> Result<Self, MapError> {
        let n = sigma.len();
        if alpha.len() != n {
            return Err(MapError::DanglingDart(n.min(alpha.len()) + 1));
        }
        let mut hit = vec![false; n];
        for &s in &sigma {
            if s >= n || hit[s] {
                return Err(MapError::MalformedPermutation(format!(
                    "dart {} has two preimages or is out of range",
                    s + 1
                )));
            }
            hit[s] = true;
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n || a == d || alpha[a] != d {
                return Err(MapError::AlphaNotInvolution(format!("at dart {}", d + 1)));
            }
        }
        Ok(Self { sigma, alpha, isolated })
    }

    /// Map with `alpha = (1 2)(3 4)...` and the given rotation.
    pub fn from_sigma(sigma: Vec<Dart>) -> Result<Self, MapError> {
        let alpha = (0..sigma.len()).map(|d| d ^ 1).collect();
        Self::new(sigma, alpha, 0)
    }

    /// Builds a map from disjoint-cycle lists over 1-based darts.
    pub fn from_cycles(sigma: &[Vec<usize>], alpha: &[Vec<usize>], isolated: usize) -> Result<Self, MapError> {
        let s = perm_from_cycles(sigma, "sigma")?;
        let a = perm_from_cycles(alpha, "alpha")?;
        let n = s.len().max(a.len());
        let s = pad_perm(s, n)?;
        let a = pad_perm(a, n)?;
        Self::new(s, a, isolated)
    }

    pub fn empty() -> Self {
        Self { sigma: Vec::new(), alpha: Vec::new(), isolated: 0 }
    }

    pub fn isolated_point() -> Self {
        Self { sigma: Vec::new(), alpha: Vec::new(), isolated: 1 }
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn isolated(&self) -> usize {
        self.isolated
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }

    pub fn sigma_perm(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn alpha_perm(&self) -> &[Dart] {
        &self.alpha
    }

    pub fn sigma_inv(&self) -> Vec<Dart> {
        invert(&self.sigma)
    }

    pub fn phi_perm(&self) -> Vec<Dart> {
        (0..self.num_darts()).map(|d| self.phi(d)).collect()
    }

    /// Vertex rotations (sigma-orbits); isolated vertices are not listed.
    pub fn vertex_orbits(&self) -> Vec<Vec<Dart>> {
        orbits(&self.sigma)
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        orbits(&self.phi_perm())
    }

    /// Minimum darts of the edges, ascending. The position in this list is the edge index.
    pub fn edges(&self) -> Vec<Dart> {
        (0..self.num_darts()).filter(|&d| d < self.alpha[d]).collect()
    }

    /// Number of vertices including isolated ones.
    pub fn num_vertices(&self) -> usize {
        self.vertex_orbits().len() + self.isolated
    }

    pub fn num_faces(&self) -> usize {
        self.faces().len() + self.isolated
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// Dart → index of its vertex (in `vertex_orbits` order).
    pub fn vertex_index(&self) -> Vec<usize> {
        index_of_orbits(&self.vertex_orbits(), self.num_darts())
    }

    /// Dart → index of its face (in `faces` order).
    pub fn face_index(&self) -> Vec<usize> {
        index_of_orbits(&self.faces(), self.num_darts())
    }

    /// Dart → index of its edge (in `edges` order).
    pub fn edge_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.num_darts()];
        for (i, d) in self.edges().into_iter().enumerate() {
            idx[d] = i;
            idx[self.alpha[d]] = i;
        }
        idx
    }

    /// Connected components as dart sets (isolated vertices excluded).
    pub fn dart_components(&self) -> Vec<Vec<Dart>> {
        let n = self.num_darts();
        let mut uf = UnionFind::new(n);
        for d in 0..n {
            uf.union(d, self.sigma[d]);
            uf.union(d, self.alpha[d]);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Dart>> = Default::default();
        for d in 0..n {
            groups.entry(uf.find(d)).or_default().push(d);
        }
        groups.into_values().collect()
    }

    pub fn num_components(&self) -> usize {
        self.dart_components().len() + self.isolated
    }

    /// Genus of each component (dart components first, then one zero per isolated vertex).
    pub fn component_genera(&self) -> Vec<usize> {
        let sigma_orbits = self.vertex_orbits();
        let faces = self.faces();
        let comps = self.dart_components();
        let mut comp_of = vec![0; self.num_darts()];
        for (i, c) in comps.iter().enumerate() {
            for &d in c {
                comp_of[d] = i;
            }
        }
        let mut chi = vec![0i64; comps.len()];
        for o in &sigma_orbits {
            chi[comp_of[o[0]]] += 1;
        }
        for f in &faces {
            chi[comp_of[f[0]]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            chi[i] -= (c.len() / 2) as i64;
        }
        let mut out: Vec<usize> = chi
            .into_iter()
            .map(|x| {
                let twice = 2 - x;
                assert!(
                    twice >= 0 && twice % 2 == 0,
                    "odd Euler characteristic on a validated map"
                );
                (twice / 2) as usize
            })
            .collect();
        out.extend(std::iter::repeat_n(0, self.isolated));
        out
    }

    pub fn genus(&self) -> usize {
        self.component_genera().iter().sum()
    }

    /// The dual cellulation on the same oriented surface: vertices are the faces
    /// of `self`, and dart `d` of the dual sits in the face containing `d`,
    /// crossing the edge of `d`. Edge ids are shared between `e` and `e*`.
    pub fn dual(&self) -> Self {
        let phi = self.phi_perm();
        Self {
            sigma: invert(&phi),
            alpha: self.alpha.clone(),
            isolated: self.isolated,
        }
    }

    /// Renumbers darts by `perm` (old dart → new dart).
    pub fn relabel(&self, perm: &[Dart]) -> Self {
        let n = self.num_darts();
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for d in 0..n {
            sigma[perm[d]] = perm[self.sigma[d]];
            alpha[perm[d]] = perm[self.alpha[d]];
        }
        Self { sigma, alpha, isolated: self.isolated }
    }

    /// Disjoint union; darts of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let k = self.num_darts();
        let mut sigma = self.sigma.clone();
        let mut alpha = self.alpha.clone();
        sigma.extend(other.sigma.iter().map(|d| d + k));
        alpha.extend(other.alpha.iter().map(|d| d + k));
        Self { sigma, alpha, isolated: self.isolated + other.isolated }
    }

    /// Contracts the non-loop edge containing dart `x`, splicing the two
    /// rotations. Returns the new map and the old → new dart relabelling
    /// (`None` for the two removed darts). Contracting the only edge of a
    /// component leaves an isolated vertex.
    pub fn contract(&self, x: Dart) -> Result<(Self, Vec<Option<Dart>>), MapError> {
        let y = self.alpha[x];
        let vidx = self.vertex_index();
        if vidx[x] == vidx[y] {
            return Err(MapError::LoopContraction(x.min(y) + 1));
        }
        let n = self.num_darts();
        let mut sigma = self.sigma.clone();
        let mut merged = Vec::new();
        for start in [x, y] {
            let mut d = self.sigma[start];
            while d != start {
                merged.push(d);
                d = self.sigma[d];
            }
        }
        for (i, &d) in merged.iter().enumerate() {
            sigma[d] = merged[(i + 1) % merged.len()];
        }
        let mut relabel = vec![None; n];
        let mut next = 0;
        for (d, slot) in relabel.iter_mut().enumerate() {
            if d != x && d != y {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut new_sigma = vec![0; n - 2];
        let mut new_alpha = vec![0; n - 2];
        for d in 0..n {
            if let Some(nd) = relabel[d] {
                new_sigma[nd] = relabel[sigma[d]].unwrap();
                new_alpha[nd] = relabel[self.alpha[d]].unwrap();
            }
        }
        let isolated = self.isolated + usize::from(merged.is_empty());
        Ok((Self { sigma: new_sigma, alpha: new_alpha, isolated }, relabel))
    }

    /// Removes the edge of dart `x` from the map itself (not just from a
    /// marked subgraph). A vertex left without darts becomes isolated.
    pub fn delete(&self, x: Dart) -> (Self, Vec<Option<Dart>>) {
        let y = self.alpha[x];
        let n = self.num_darts();
        let mut filtered = vec![0; n];
        let mut isolated = self.isolated;
        for orbit in self.vertex_orbits() {
            let kept: Vec<Dart> = orbit.iter().copied().filter(|&d| d != x && d != y).collect();
            if kept.is_empty() {
                isolated += 1;
            }
            for (i, &d) in kept.iter().enumerate() {
                filtered[d] = kept[(i + 1) % kept.len()];
            }
        }
        let mut relabel = vec![None; n];
        let mut next = 0;
        for (d, slot) in relabel.iter_mut().enumerate() {
            if d != x && d != y {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut new_sigma = vec![0; n - 2];
        let mut new_alpha = vec![0; n - 2];
        for d in 0..n {
            if let Some(nd) = relabel[d] {
                new_sigma[nd] = relabel[filtered[d]].unwrap();
                new_alpha[nd] = relabel[self.alpha[d]].unwrap();
            }
        }
        (Self { sigma: new_sigma, alpha: new_alpha, isolated }, relabel)
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn index_of_orbits(orbits: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, o) in orbits.iter().enumerate() {
        for &d in o {
            idx[d] = i;
        }
    }
    idx
}

fn perm_from_cycles(cycles: &[Vec<usize>], what: &str) -> Result<Vec<Option<usize>>, MapError> {
    let max = cycles.iter().flatten().copied().max().unwrap_or(0);
    let mut p: Vec<Option<usize>> = vec![None; max];
    for cycle in cycles {
        for (i, &d) in cycle.iter().enumerate() {
            if d == 0 {
                return Err(MapError::Syntax(format!("dart ids start at 1 in {what}")));
            }
            let next = cycle[(i + 1) % cycle.len()];
            if p[d - 1].is_some() {
                let err = format!("dart {d} repeated in {what}");
                return Err(if what == "sigma" {
                    MapError::MalformedPermutation(err)
                } else {
                    MapError::AlphaNotInvolution(err)
                });
            }
            p[d - 1] = Some(next - 1);
        }
    }
    Ok(p)
}

fn pad_perm(p: Vec<Option<usize>>, n: usize) -> Result<Vec<usize>, MapError> {
    let mut out = Vec::with_capacity(n);
    for d in 0..n {
        match p.get(d).copied().flatten() {
            Some(x) => out.push(x),
            None => return Err(MapError::DanglingDart(d + 1)),
        }
    }
    Ok(out)
}

/// Disjoint-cycle notation over 1-based darts, cycles starting at their minimum,
/// sorted by that minimum. Fixed points are written explicitly.
pub fn format_cycles(perm: &[usize]) -> String {
    orbits(perm)
        .iter()
        .map(|o| {
            let inner: Vec<String> = o.iter().map(|d| (d + 1).to_string()).collect();
            format!("({})", inner.join(" "))
        })
        .collect()
}

/// Parses `(1 2 3)(4 5)` into 1-based cycles.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, MapError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(MapError::Syntax(format!("expected '(' at `{rest}`")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| MapError::Syntax("unclosed cycle".into()))?;
        let inner = &rest[1..close];
        let cycle = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| MapError::Syntax(format!("bad dart `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if cycle.is_empty() {
            return Err(MapError::Syntax("empty cycle".into()));
        }
        out.push(cycle);
        rest = rest[close + 1..].trim_start();
    }
    Ok(out)
}

impl fmt::Debug for CombinatorialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Map(sigma: {}, alpha: {}, isolated: {})",
            format_cycles(&self.sigma),
            format_cycles(&self.alpha),
            self.isolated
        )
    }
}

/// A graph `G` marked inside a host cellulation of the surface.
///
/// `vertices` is indexed like [`CombinatorialMap::num_vertices`] (sigma-orbits
/// then isolated vertices); `edges` like [`CombinatorialMap::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedSubgraph {
    host: CombinatorialMap,
    vertices: Vec<bool>,
    edges: Vec<bool>,
}

impl EmbeddedSubgraph {
    pub fn new(host: CombinatorialMap, vertices: Vec<bool>, edges: Vec<bool>) -> Result<Self, MapError> {
        assert_eq!(vertices.len(), host.num_vertices());
        assert_eq!(edges.len(), host.num_edges());
        let vidx = host.vertex_index();
        for (i, d) in host.edges().into_iter().enumerate() {
            if edges[i] && !(vertices[vidx[d]] && vertices[vidx[host.alpha(d)]]) {
                return Err(MapError::EdgeOutsideVertices(d + 1));
            }
        }
        Ok(Self { host, vertices, edges })
    }

    /// The whole cellulation as the marked graph (ribbon-graph mode).
    pub fn full(host: CombinatorialMap) -> Self {
        let v = host.num_vertices();
        let e = host.num_edges();
        Self { host, vertices: vec![true; v], edges: vec![true; e] }
    }

    /// Marks the given edges (by index) and their endpoints.
    pub fn from_edge_indices(host: CombinatorialMap, edges: &[usize]) -> Self {
        let vidx = host.vertex_index();
        let all = host.edges();
        let mut vs = vec![false; host.num_vertices()];
        let mut es = vec![false; host.num_edges()];
        for &i in edges {
            es[i] = true;
            vs[vidx[all[i]]] = true;
            vs[vidx[host.alpha(all[i])]] = true;
        }
        Self { host, vertices: vs, edges: es }
    }

    pub fn host(&self) -> &CombinatorialMap {
        &self.host
    }

    pub fn vertex_marks(&self) -> &[bool] {
        &self.vertices
    }

    pub fn edge_marks(&self) -> &[bool] {
        &self.edges
    }

    pub fn is_cellulation(&self) -> bool {
        self.vertices.iter().all(|&b| b) && self.edges.iter().all(|&b| b)
    }

    /// Indices (into `host.edges()`) of the marked edges, ascending.
    pub fn graph_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i]).collect()
    }

    pub fn num_graph_vertices(&self) -> usize {
        self.vertices.iter().filter(|&&b| b).count()
    }

    pub fn num_graph_edges(&self) -> usize {
        self.edges.iter().filter(|&&b| b).count()
    }

    fn edge_index_by_id(&self, edge_id: Dart) -> Result<usize, MapError> {
        self.host
            .edges()
            .iter()
            .position(|&d| d == edge_id)
            .ok_or(MapError::UnknownEdge(edge_id + 1))
    }

    /// Removes edge `edge` (index) from the marked graph; the host is unchanged.
    pub fn delete_edge(&self, edge: usize) -> Result<Self, MapError> {
        if !self.edges.get(edge).copied().unwrap_or(false) {
            return Err(MapError::EdgeNotInGraph(edge));
        }
        let mut out = self.clone();
        out.edges[edge] = false;
        Ok(out)
    }

    /// Same as [`delete_edge`](Self::delete_edge) but addressed by 0-based edge id (minimum dart).
    pub fn delete_edge_id(&self, edge_id: Dart) -> Result<Self, MapError> {
        self.delete_edge(self.edge_index_by_id(edge_id)?)
    }

    /// Contracts the non-loop marked edge `edge` (index) in both graph and host.
    pub fn contract_edge(&self, edge: usize) -> Result<Self, MapError> {
        if !self.edges.get(edge).copied().unwrap_or(false) {
            return Err(MapError::EdgeNotInGraph(edge));
        }
        let x = self.host.edges()[edge];
        let (host, relabel) = self.host.contract(x)?;
        Ok(self.transport(host, &relabel, true))
    }

    pub fn contract_edge_id(&self, edge_id: Dart) -> Result<Self, MapError> {
        self.contract_edge(self.edge_index_by_id(edge_id)?)
    }

    /// Carries marks across a host modification given by a dart relabelling.
    fn transport(&self, host: CombinatorialMap, relabel: &[Option<Dart>], merged_in_graph: bool) -> Self {
        let old_vidx = self.host.vertex_index();
        let old_eidx = self.host.edge_index();
        let new_vidx = host.vertex_index();
        let new_eidx = host.edge_index();
        let mut vertices = vec![false; host.num_vertices()];
        let mut edges = vec![false; host.num_edges()];
        for (d, nd) in relabel.iter().enumerate() {
            if let Some(nd) = *nd {
                if self.vertices[old_vidx[d]] {
                    vertices[new_vidx[nd]] = true;
                }
                if self.edges[old_eidx[d]] {
                    edges[new_eidx[nd]] = true;
                }
            }
        }
        // isolated vertices: the old ones keep their marks, new ones come from the contraction
        let old_orbits = self.host.num_vertices() - self.host.isolated();
        let new_orbits = host.num_vertices() - host.isolated();
        let mut slot = new_orbits;
        for i in 0..self.host.isolated() {
            vertices[slot] = self.vertices[old_orbits + i];
            slot += 1;
        }
        while slot < vertices.len() {
            vertices[slot] = merged_in_graph;
            slot += 1;
        }
        Self { host, vertices, edges }
    }

    /// Disjoint union of marked graphs in disjoint hosts.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let host = self.host.disjoint_union(&other.host);
        let a_orb = self.host.num_vertices() - self.host.isolated();
        let b_orb = other.host.num_vertices() - other.host.isolated();
        let mut vertices = Vec::new();
        vertices.extend_from_slice(&self.vertices[..a_orb]);
        vertices.extend_from_slice(&other.vertices[..b_orb]);
        vertices.extend_from_slice(&self.vertices[a_orb..]);
        vertices.extend_from_slice(&other.vertices[b_orb..]);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Self { host, vertices, edges }
    }

    /// Number of connected components of the marked graph.
    pub fn graph_components(&self) -> usize {
        let nv = self.host.num_vertices();
        let vidx = self.host.vertex_index();
        let mut uf = UnionFind::new(nv);
        for (i, d) in self.host.edges().into_iter().enumerate() {
            if self.edges[i] {
                uf.union(vidx[d], vidx[self.host.alpha(d)]);
            }
        }
        let mut roots = BTreeSet::new();
        for v in 0..nv {
            if self.vertices[v] {
                roots.insert(uf.find(v));
            }
        }
        roots.len()
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let d = self.host.edges()[edge];
        let vidx = self.host.vertex_index();
        vidx[d] == vidx[self.host.alpha(d)]
    }

    /// A marked edge whose removal disconnects its component of the marked graph.
    pub fn is_bridge(&self, edge: usize) -> bool {
        if !self.edges[edge] || self.is_loop(edge) {
            return false;
        }
        let before = self.graph_components();
        let mut g = self.clone();
        g.edges[edge] = false;
        g.graph_components() > before
    }

    /// Canonical isomorphism code of host + marks: equal codes iff an
    /// orientation-preserving map isomorphism carries one onto the other.
    pub fn canonical_code(&self) -> Vec<u8> {
        let host = &self.host;
        let vidx = host.vertex_index();
        let eidx = host.edge_index();
        let mut comp_codes: Vec<Vec<u32>> = host
            .dart_components()
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|&root| self.trace_from(root, &vidx, &eidx))
                    .min()
                    .unwrap()
            })
            .collect();
        comp_codes.sort();
        let orbit_count = host.num_vertices() - host.isolated();
        let iso_marked = self.vertices[orbit_count..].iter().filter(|&&b| b).count();
        let iso_unmarked = host.isolated() - iso_marked;
        let mut out: Vec<u8> = Vec::new();
        push_u32(&mut out, iso_marked as u32);
        push_u32(&mut out, iso_unmarked as u32);
        push_u32(&mut out, comp_codes.len() as u32);
        for c in comp_codes {
            push_u32(&mut out, c.len() as u32);
            for x in c {
                push_u32(&mut out, x);
            }
        }
        out
    }

    fn trace_from(&self, root: Dart, vidx: &[usize], eidx: &[usize]) -> Vec<u32> {
        let host = &self.host;
        let n = host.num_darts();
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::new();
        label[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for next in [host.sigma(d), host.alpha(d)] {
                if label[next] == u32::MAX {
                    label[next] = order.len() as u32;
                    order.push(next);
                }
            }
        }
        let mut code = Vec::with_capacity(order.len() * 3);
        for &d in &order {
            code.push(label[host.sigma(d)]);
            code.push(label[host.alpha(d)]);
            let marks = u32::from(self.vertices[vidx[d]]) | (u32::from(self.edges[eidx[d]]) << 1);
            code.push(marks);
        }
        code
    }
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

/// Canonical code of a bare map (every vertex and edge marked).
pub fn canonical_code(m: &CombinatorialMap) -> Vec<u8> {
    EmbeddedSubgraph::full(m.clone()).canonical_code()
}

/// Parses the `.map` text format.
///
/// ```text
/// # comment
/// sigma: (1 3 2 4)
/// alpha: (1 2)(3 4)
/// isolated: 0
/// graph_vertices: *
/// graph_edges: *
/// ```
///
/// Keys may also share a line (`sigma:(1 2) alpha:(1 2)`). `isolated`,
/// `graph_vertices` and `graph_edges` are optional and default to `0`, `*`, `*`.
/// Vertex and edge ids are the minimum dart of the orbit; isolated vertices
/// are addressed as `iso1`, `iso2`, ...
pub fn parse_map(text: &str) -> Result<EmbeddedSubgraph, MapError> {
    let fields = parse_fields(text, &["sigma", "alpha", "isolated", "graph_vertices", "graph_edges"])?;
    let get = |k: &str| fields.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
    let sigma = parse_cycles(get("sigma").ok_or_else(|| MapError::Syntax("missing sigma".into()))?)?;
    let alpha = parse_cycles(get("alpha").ok_or_else(|| MapError::Syntax("missing alpha".into()))?)?;
    let isolated = match get("isolated") {
        Some(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| MapError::Syntax(format!("bad isolated count `{s}`")))?,
        None => 0,
    };
    check_darts(&sigma, &alpha)?;
    let host = CombinatorialMap::from_cycles(&sigma, &alpha, isolated)?;
    let orbits = host.vertex_orbits();
    let vertices = match get("graph_vertices").map(str::trim) {
        None | Some("*") => vec![true; host.num_vertices()],
        Some(list) => {
            let mut marks = vec![false; host.num_vertices()];
            for tok in list.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                if let Some(k) = tok.strip_prefix("iso") {
                    let k: usize = k.parse().map_err(|_| MapError::Syntax(format!("bad vertex `{tok}`")))?;
                    if k == 0 || k > isolated {
                        return Err(MapError::Syntax(format!("no isolated vertex `{tok}`")));
                    }
                    marks[orbits.len() + k - 1] = true;
                    continue;
                }
                let id: usize = tok.parse().map_err(|_| MapError::Syntax(format!("bad vertex `{tok}`")))?;
                let pos = orbits
                    .iter()
                    .position(|o| o[0] + 1 == id)
                    .ok_or(MapError::UnknownVertex(id))?;
                marks[pos] = true;
            }
            marks
        }
    };
    let edge_ids = host.edges();
    let edges = match get("graph_edges").map(str::trim) {
        None | Some("*") => vec![true; host.num_edges()],
        Some(list) => {
            let mut marks = vec![false; host.num_edges()];
            for tok in list.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                let id: usize = tok.parse().map_err(|_| MapError::Syntax(format!("bad edge `{tok}`")))?;
                let pos = edge_ids
                    .iter()
                    .position(|&d| d + 1 == id)
                    .ok_or(MapError::UnknownEdge(id))?;
                marks[pos] = true;
            }
            marks
        }
    };
    EmbeddedSubgraph::new(host, vertices, edges)
}

fn check_darts(sigma: &[Vec<usize>], alpha: &[Vec<usize>]) -> Result<(), MapError> {
    let s: BTreeSet<usize> = sigma.iter().flatten().copied().collect();
    let a: BTreeSet<usize> = alpha.iter().flatten().copied().collect();
    if let Some(&d) = s.symmetric_difference(&a).next() {
        return Err(MapError::DanglingDart(d));
    }
    let n = s.len();
    if let Some(d) = (1..=n).find(|d| !s.contains(d)) {
        return Err(MapError::DanglingDart(d));
    }
    if alpha.iter().any(|c| c.len() != 2) {
        return Err(MapError::AlphaNotInvolution("alpha cycles must be pairs".into()));
    }
    Ok(())
}

/// Splits `key: value` fields; a new field starts wherever a known key followed
/// by `:` appears. Comments start with `#`.
pub(crate) fn parse_fields(text: &str, keys: &[&str]) -> Result<Vec<(String, String)>, MapError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut positions: Vec<(usize, &str)> = Vec::new();
        for &k in keys {
            let pat = format!("{k}:");
            let mut from = 0;
            while let Some(p) = line[from..].find(&pat) {
                let at = from + p;
                let boundary = at == 0
                    || !line[..at]
                        .chars()
                        .last()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_');
                if boundary {
                    positions.push((at, k));
                }
                from = at + pat.len();
            }
        }
        positions.sort();
        if positions.first().map(|p| p.0) != Some(0) {
            return Err(MapError::Syntax(format!("unrecognised line `{line}`")));
        }
        for (i, &(at, k)) in positions.iter().enumerate() {
            let end = positions.get(i + 1).map(|p| p.0).unwrap_or(line.len());
            let value = line[at + k.len() + 1..end].trim().to_string();
            if out.iter().any(|(key, _)| key == k) {
                return Err(MapError::Syntax(format!("duplicate key `{k}`")));
            }
            out.push((k.to_string(), value));
        }
    }
    Ok(out)
}

/// Serializes in the `.map` format. Marks are written explicitly unless the
/// graph is the whole cellulation.
pub fn serialize_map(g: &EmbeddedSubgraph) -> String {
    let host = g.host();
    let mut out = String::new();
    out.push_str(&format!("sigma: {}\n", format_cycles(host.sigma_perm())));
    out.push_str(&format!("alpha: {}\n", format_cycles(host.alpha_perm())));
    out.push_str(&format!("isolated: {}\n", host.isolated()));
    let orbits = host.vertex_orbits();
    if g.vertex_marks().iter().all(|&b| b) {
        out.push_str("graph_vertices: *\n");
    } else {
        let mut ids: Vec<String> = Vec::new();
        for (i, &m) in g.vertex_marks().iter().enumerate() {
            if m {
                if i < orbits.len() {
                    ids.push((orbits[i][0] + 1).to_string());
                } else {
                    ids.push(format!("iso{}", i - orbits.len() + 1));
                }
            }
        }
        out.push_str(&format!("graph_vertices: {}\n", ids.join(" ")));
    }
    if g.edge_marks().iter().all(|&b| b) {
        out.push_str("graph_edges: *\n");
    } else {
        let ids: Vec<String> = host
            .edges()
            .iter()
            .zip(g.edge_marks())
            .filter(|(_, &m)| m)
            .map(|(d, _)| (d + 1).to_string())
            .collect();
        out.push_str(&format!("graph_edges: {}\n", ids.join(" ")));
    }
    out
}
