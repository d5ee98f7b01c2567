//! First homology of the host surface over the rationals, the intersection
//! form, and the subspaces that cycles of a subgraph span in it.
//!
//! Chains live in edge space: coordinate `i` belongs to host edge `i`,
//! oriented from the vertex of its minimum dart. A dart therefore
//! contributes `+e` when it is the minimum dart of its edge and `-e`
//! otherwise.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::invariants::{InvariantContext, SubgraphInvariants};
use crate::linalg::{axpy, dot, intersect, q, vec_mat, zeros, Rref, Q};
use crate::map::{CombinatorialMap, Dart, EmbeddedSubgraph, MapError};
use crate::poly::LaurentPolynomial;
use crate::report::{PolynomialReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("a face boundary pairs nontrivially with a cycle")]
    RadicalNotBoundaries,
    #[error("intersection form is degenerate on homology")]
    Degenerate,
    #[error("subspace lives in dimension {found}, form in dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} edges exceed the limit of {1}")]
    TooManyEdges(usize, usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Sign of dart `d` relative to its edge's orientation.
pub fn dart_sign(m: &CombinatorialMap, d: Dart) -> i64 {
    if d < m.alpha(d) {
        1
    } else {
        -1
    }
}

/// Chain traversed by a sequence of darts, each leaving its own vertex.
pub fn chain_of_darts(m: &CombinatorialMap, darts: &[Dart]) -> Vec<Q> {
    let edge_of = m.edge_index();
    let mut c = zeros(m.num_edges());
    for &d in darts {
        c[edge_of[d]] += q(dart_sign(m, d));
    }
    c
}

/// Fundamental cycles of the subgraph with edge set `in_sub` (one per
/// non-forest edge of a BFS spanning forest).
pub fn fundamental_cycles(m: &CombinatorialMap, in_sub: &[bool]) -> Vec<Vec<Q>> {
    let ne = m.num_edges();
    let vidx = m.vertex_index();
    let eidx = m.edge_index();
    let rotations = m.vertex_orbits();
    let nv = rotations.len();
    // path chain from each vertex up to its BFS root
    let mut to_root: Vec<Option<Vec<Q>>> = vec![None; nv];
    let mut tree_edge = vec![false; ne];
    for root in 0..nv {
        if to_root[root].is_some() {
            continue;
        }
        to_root[root] = Some(zeros(ne));
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &d in &rotations[u] {
                let e = eidx[d];
                if !in_sub[e] {
                    continue;
                }
                let w = vidx[m.alpha(d)];
                if to_root[w].is_none() {
                    tree_edge[e] = true;
                    // w -> u along alpha(d), then u -> root
                    let mut path = to_root[u].clone().unwrap();
                    path[e] += q(dart_sign(m, m.alpha(d)));
                    to_root[w] = Some(path);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for (e, &d) in m.edges().iter().enumerate() {
        if !in_sub[e] || tree_edge[e] {
            continue;
        }
        let u = vidx[d];
        let w = vidx[m.alpha(d)];
        let mut c = zeros(ne);
        c[e] = Q::one();
        axpy(&mut c, &Q::one(), to_root[w].as_ref().unwrap());
        axpy(&mut c, &-Q::one(), to_root[u].as_ref().unwrap());
        cycles.push(c);
    }
    cycles
}

/// `H_1` of a map: cycles modulo face boundaries, with a fixed basis of
/// representative cycles.
#[derive(Debug, Clone)]
pub struct Homology {
    num_edges: usize,
    boundaries: Rref,
    classes: Rref,
}

impl Homology {
    pub fn new(m: &CombinatorialMap) -> Self {
        let ne = m.num_edges();
        let faces: Vec<Vec<Q>> = m.faces().iter().map(|f| chain_of_darts(m, f)).collect();
        let boundaries = Rref::new(faces, ne);
        let all = vec![true; ne];
        let reduced: Vec<Vec<Q>> =
            fundamental_cycles(m, &all).iter().map(|z| boundaries.reduce(z)).collect();
        let classes = Rref::new(reduced, ne);
        Self { num_edges: ne, boundaries, classes }
    }

    pub fn dim(&self) -> usize {
        self.classes.rank()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Representative cycles of the basis classes.
    pub fn basis(&self) -> &[Vec<Q>] {
        self.classes.rows()
    }

    pub fn boundaries(&self) -> &Rref {
        &self.boundaries
    }

    /// Coordinates of the class of a cycle.
    pub fn coordinates(&self, cycle: &[Q]) -> Vec<Q> {
        let r = self.boundaries.reduce(cycle);
        debug_assert!(self.classes.contains(&r), "chain is not a cycle");
        self.classes.coordinates(&r)
    }

    pub fn span(&self, cycles: &[Vec<Q>]) -> Subspace {
        Subspace::span(self.dim(), cycles.iter().map(|z| self.coordinates(z)).collect())
    }
}

pub fn h1(m: &CombinatorialMap) -> Homology {
    Homology::new(m)
}

/// A subspace of `Q^n`, stored as its reduced row-echelon basis so that
/// equality of subspaces is equality of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace(Rref);

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Self {
        Subspace(Rref::new(vectors, ambient))
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient)
                .map(|i| {
                    let mut v = zeros(ambient);
                    v[i] = Q::one();
                    v
                })
                .collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.0.ncols()
    }

    pub fn dim(&self) -> usize {
        self.0.rank()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        self.0.rows()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.0.contains(v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        Subspace(intersect(&self.0, &other.0))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis().to_vec();
        rows.extend_from_slice(other.basis());
        Self::span(self.ambient(), rows)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim={} basis=[", self.dim())?;
        for (i, row) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", entries.join(","))?;
        }
        write!(f, "]")
    }
}

/// The intersection form on `H_1`, in the basis of a [`Homology`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    omega: Vec<Vec<Q>>,
}

impl SymplecticSpace {
    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.omega
    }

    pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
        dot(&vec_mat(a, &self.omega), b)
    }

    pub fn orthogonal_complement(&self, v: &Subspace) -> Result<Subspace, HomologyError> {
        if v.ambient() != self.dim() {
            return Err(HomologyError::DimensionMismatch { expected: self.dim(), found: v.ambient() });
        }
        let rows: Vec<Vec<Q>> = v.basis().iter().map(|b| vec_mat(b, &self.omega)).collect();
        let null = Rref::new(rows, self.dim()).nullspace();
        Ok(Subspace::span(self.dim(), null))
    }

    /// `(s, s_perp, l)` of a subspace: ranks of the form on `V` and on `V^perp`,
    /// and the dimension of `V ∩ V^perp`.
    pub fn ranks(&self, v: &Subspace) -> Result<(usize, usize, usize), HomologyError> {
        let perp = self.orthogonal_complement(v)?;
        let l = v.intersect(&perp).dim();
        Ok((v.dim() - l, perp.dim() - l, l))
    }
}

/// Cyclic "strictly inside the counterclockwise arc from `from` to `to`".
fn in_arc(p: usize, from: usize, to: usize, len: usize) -> bool {
    let off = (p + len - from) % len;
    off != 0 && off < (to + len - from) % len
}

/// Pairing of edge-space cycles: contract a spanning forest until every
/// component has one vertex, then count signed interleavings of the
/// remaining chords. The returned matrix is indexed by host edges; forest
/// edges have zero rows and columns.
pub fn chord_pairing(m: &CombinatorialMap) -> Result<Vec<Vec<Q>>, HomologyError> {
    let mut cur = m.clone();
    let mut orig: Vec<Dart> = (0..m.num_darts()).collect();
    loop {
        let vidx = cur.vertex_index();
        let Some(x) = (0..cur.num_darts()).find(|&d| vidx[d] != vidx[cur.alpha(d)]) else {
            break;
        };
        let (next, relabel) = cur.contract(x)?;
        let mut new_orig = vec![0; next.num_darts()];
        for (d, r) in relabel.iter().enumerate() {
            if let Some(nd) = r {
                new_orig[*nd] = orig[d];
            }
        }
        cur = next;
        orig = new_orig;
    }
    let ne = m.num_edges();
    let eidx = m.edge_index();
    let mut omega = vec![zeros(ne); ne];
    for rot in cur.vertex_orbits() {
        let len = rot.len();
        let mut pos = vec![usize::MAX; cur.num_darts()];
        for (i, &d) in rot.iter().enumerate() {
            pos[d] = i;
        }
        // (edge, position of outgoing end, position of incoming end)
        let chords: Vec<(usize, usize, usize)> = rot
            .iter()
            .filter(|&&d| orig[d] < m.alpha(orig[d]))
            .map(|&d| (eidx[orig[d]], pos[d], pos[cur.alpha(d)]))
            .collect();
        for &(a, a_out, a_in) in &chords {
            for &(b, b_out, b_in) in &chords {
                if a == b {
                    continue;
                }
                let bi = in_arc(b_in, a_in, a_out, len);
                let bo = in_arc(b_out, a_in, a_out, len);
                if bi != bo {
                    omega[a][b] = q(if bi { 1 } else { -1 });
                }
            }
        }
    }
    Ok(omega)
}

pub fn intersection_form(m: &CombinatorialMap, hom: &Homology) -> Result<SymplecticSpace, HomologyError> {
    let chord = chord_pairing(m)?;
    for b in hom.boundaries().rows() {
        if vec_mat(b, &chord).iter().any(|x| !x.is_zero()) {
            return Err(HomologyError::RadicalNotBoundaries);
        }
    }
    let basis = hom.basis();
    let omega: Vec<Vec<Q>> = basis
        .iter()
        .map(|a| {
            let row = vec_mat(a, &chord);
            basis.iter().map(|b| dot(&row, b)).collect()
        })
        .collect();
    if Rref::new(omega.clone(), omega.len()).rank() != omega.len() {
        return Err(HomologyError::Degenerate);
    }
    Ok(SymplecticSpace { omega })
}

/// Homology invariants of one spanning subgraph computed by linear algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearInvariants {
    pub space: Subspace,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub s_perp: usize,
    pub l: usize,
}

/// Host homology and intersection form, reused across many subgraphs.
#[derive(Debug, Clone)]
pub struct SurfaceHomology {
    map: CombinatorialMap,
    hom: Homology,
    form: SymplecticSpace,
}

impl SurfaceHomology {
    pub fn new(m: &CombinatorialMap) -> Result<Self, HomologyError> {
        let hom = Homology::new(m);
        let form = intersection_form(m, &hom)?;
        Ok(Self { map: m.clone(), hom, form })
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn homology(&self) -> &Homology {
        &self.hom
    }

    pub fn form(&self) -> &SymplecticSpace {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    /// `V(H)` and the nullity of `H`, for an edge set given per host edge.
    pub fn image_subspace(&self, in_sub: &[bool]) -> (Subspace, usize) {
        let cycles = fundamental_cycles(&self.map, in_sub);
        (self.hom.span(&cycles), cycles.len())
    }

    pub fn linear_invariants(&self, in_sub: &[bool]) -> LinearInvariants {
        let (space, n) = self.image_subspace(in_sub);
        let (s, s_perp, l) = self.form.ranks(&space).expect("same ambient");
        LinearInvariants { k: n - space.dim(), space, n, s, s_perp, l }
    }
}

/// `V(H)` and `k(H)` for the spanning subgraph of `graph` with edges `h_edges`.
pub fn image_subspace(graph: &EmbeddedSubgraph, h_edges: &[usize]) -> Result<(Subspace, usize), HomologyError> {
    let sh = SurfaceHomology::new(graph.host())?;
    let mut in_sub = vec![false; graph.host().num_edges()];
    for &e in h_edges {
        in_sub[e] = true;
    }
    let (v, n) = sh.image_subspace(&in_sub);
    let k = n - v.dim();
    Ok((v, k))
}

/// The polynomial whose coefficients are subspaces of `H_1`: terms are
/// grouped by `V(H)`, each carrying `sum X^(c(H)-c(G)) Y^k(H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePolynomial {
    pub terms: Vec<(Subspace, LaurentPolynomial)>,
}

impl SubspacePolynomial {
    /// Replaces every coefficient `[V]` by `A^(s/2) B^(s_perp/2)`.
    pub fn specialize(&self, form: &SymplecticSpace) -> Result<LaurentPolynomial, HomologyError> {
        let mut out = LaurentPolynomial::zero();
        for (v, p) in &self.terms {
            let (s, sp, _) = form.ranks(v)?;
            out += &(p * &LaurentPolynomial::monomial(1, &[("A", s as i64 / 2), ("B", sp as i64 / 2)]));
        }
        Ok(out)
    }
}

impl fmt::Display for SubspacePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v} : {p}")?;
        }
        Ok(())
    }
}

pub fn tilde_p(graph: &EmbeddedSubgraph, cap: usize) -> Result<SubspacePolynomial, HomologyError> {
    let ctx = InvariantContext::new(graph);
    let ne = ctx.num_graph_edges();
    if ne > cap {
        return Err(HomologyError::TooManyEdges(ne, cap));
    }
    let sh = SurfaceHomology::new(graph.host())?;
    let c_g = ctx.graph_components();
    let mut groups: std::collections::BTreeMap<Subspace, LaurentPolynomial> = Default::default();
    for mask in 0..1u64 << ne {
        let in_sub = ctx.host_edge_marks(mask);
        let (v, n) = sh.image_subspace(&in_sub);
        let inv = ctx.invariants(mask);
        let k = n as i64 - v.dim() as i64;
        let term = LaurentPolynomial::monomial(1, &[("X", inv.c - c_g), ("Y", k)]);
        *groups.entry(v).or_insert_with(LaurentPolynomial::zero) += &term;
    }
    Ok(SubspacePolynomial { terms: groups.into_iter().collect() })
}

/// The radial map: one vertex per vertex and per face of `m`, one edge per
/// dart (joining the dart's vertex to its face), one quadrilateral per edge.
/// Radial darts `2c` and `2c+1` are the vertex and face ends of the edge for dart `c`.
pub fn radial_map(m: &CombinatorialMap) -> CombinatorialMap {
    let n = m.num_darts();
    let phi_inv = {
        let phi = m.phi_perm();
        let mut inv = vec![0; n];
        for (i, &x) in phi.iter().enumerate() {
            inv[x] = i;
        }
        inv
    };
    let mut sigma = vec![0; 2 * n];
    let mut alpha = vec![0; 2 * n];
    for c in 0..n {
        sigma[2 * c] = 2 * m.sigma(c);
        sigma[2 * c + 1] = 2 * phi_inv[c] + 1;
        alpha[2 * c] = 2 * c + 1;
        alpha[2 * c + 1] = 2 * c;
    }
    CombinatorialMap::new(sigma, alpha, 2 * m.isolated()).expect("radial map is well formed")
}

/// Pushes an edge-space chain of `m` into the radial map, sending each edge
/// to the path tail, adjacent face, head.
pub fn primal_to_radial(m: &CombinatorialMap, r: &CombinatorialMap, chain: &[Q]) -> Vec<Q> {
    let ridx = r.edge_index();
    let mut out = zeros(r.num_edges());
    for (e, &d) in m.edges().iter().enumerate() {
        let x = &chain[e];
        if x.is_zero() {
            continue;
        }
        out[ridx[2 * m.sigma(d)]] += x;
        out[ridx[2 * m.alpha(d)]] -= x;
    }
    out
}

/// Pushes an edge-space chain of `m.dual()` into the radial map, sending each
/// dual edge to the path tail face, vertex, head face.
pub fn dual_to_radial(m: &CombinatorialMap, r: &CombinatorialMap, chain: &[Q]) -> Vec<Q> {
    let ridx = r.edge_index();
    let mut out = zeros(r.num_edges());
    for (e, &d) in m.edges().iter().enumerate() {
        let x = &chain[e];
        if x.is_zero() {
            continue;
        }
        out[ridx[2 * d]] -= x;
        out[ridx[2 * m.sigma(d)]] += x;
    }
    out
}

/// Checks `V(H*) = V(H)^perp` inside `H_1` of the radial map for every
/// spanning subgraph `H` of the cellulation `m`, together with the exponent
/// swap `c(H*) - c(G*) = k(H)`.
pub fn verify_subgroup_duality(m: &CombinatorialMap, cap: usize) -> Result<PolynomialReport, HomologyError> {
    let ne = m.num_edges();
    if ne > cap {
        return Err(HomologyError::TooManyEdges(ne, cap));
    }
    let dual = m.dual();
    let r = radial_map(m);
    let rh = SurfaceHomology::new(&r)?;
    let primal = EmbeddedSubgraph::full(m.clone());
    let dual_g = EmbeddedSubgraph::full(dual.clone());
    let pctx = InvariantContext::new(&primal);
    let dctx = InvariantContext::new(&dual_g);
    let host_text = crate::map::serialize_map(&primal);
    let mut report = PolynomialReport::new(format!("subgroup duality on {ne} edges"));
    let all = if ne == 64 { u64::MAX } else { (1u64 << ne) - 1 };
    for mask in 0..=all {
        let in_h = pctx.host_edge_marks(mask);
        let in_hs: Vec<bool> = in_h.iter().map(|b| !b).collect();
        let cyc: Vec<Vec<Q>> =
            fundamental_cycles(m, &in_h).iter().map(|z| primal_to_radial(m, &r, z)).collect();
        let dcyc: Vec<Vec<Q>> =
            fundamental_cycles(&dual, &in_hs).iter().map(|z| dual_to_radial(m, &r, z)).collect();
        let v = rh.homology().span(&cyc);
        let vs = rh.homology().span(&dcyc);
        let perp = rh.form().orthogonal_complement(&v)?;
        let pi: SubgraphInvariants = pctx.invariants(mask);
        let di: SubgraphInvariants = dctx.invariants(!mask & all);
        let swap = di.c - dctx.graph_components() == pi.k && pi.c - pctx.graph_components() == di.k;
        let ok = vs == perp && swap;
        report.check(format!("mask={mask:#b} V(H*) = V(H)^perp"), ok, || Witness {
            host: host_text.clone(),
            mask,
            detail: format!("V(H) {v}; V(H*) {vs}; V(H)^perp {perp}; k(H)={} c(H*)-c(G*)={}", pi.k, di.c - dctx.graph_components()),
        });
    }
    Ok(report)
}

/// Integer Gram matrix, when every entry is integral.
pub fn integral_gram(sp: &SymplecticSpace) -> Option<Vec<Vec<i64>>> {
    sp.gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() && x.abs() < q(i64::MAX) {
                        x.to_integer().try_into().ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::parse_map;

    fn host(text: &str) -> CombinatorialMap {
        parse_map(text).unwrap().host().clone()
    }

    const TB2: &str = "sigma:(1 3 2 4) alpha:(1 2)(3 4)";
    const OCTAGON: &str = "sigma:(1 3 2 4 5 7 6 8) alpha:(1 2)(3 4)(5 6)(7 8)";

    #[test]
    fn h1_dimensions() {
        assert_eq!(h1(&host(TB2)).dim(), 2);
        assert_eq!(h1(&host("sigma:(1 2) alpha:(1 2)")).dim(), 0);
        assert_eq!(h1(&host(OCTAGON)).dim(), 4);
    }

    #[test]
    fn torus_form() {
        let m = host(TB2);
        let sh = SurfaceHomology::new(&m).unwrap();
        let g = integral_gram(sh.form()).unwrap();
        assert_eq!(g[0][0], 0);
        assert_eq!(g[0][1].abs(), 1);
        assert_eq!(g[0][1], -g[1][0]);
    }

    #[test]
    fn genus_two_form_nondegenerate() {
        let sh = SurfaceHomology::new(&host(OCTAGON)).unwrap();
        assert_eq!(sh.form().dim(), 4);
        let g = integral_gram(sh.form()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g[i][j], -g[j][i]);
            }
        }
    }

    #[test]
    fn essential_and_trivial_loops() {
        let g = parse_map(TB2).unwrap();
        let (v, k) = image_subspace(&g, &[0]).unwrap();
        assert_eq!((v.dim(), k), (1, 0));
        let sl = parse_map("sigma:(1 2) alpha:(1 2)").unwrap();
        let (v, k) = image_subspace(&sl, &[0]).unwrap();
        assert_eq!((v.dim(), k), (0, 1));
    }

    #[test]
    fn complement_of_isotropic_line() {
        let sh = SurfaceHomology::new(&host(TB2)).unwrap();
        let (v, _) = sh.image_subspace(&[true, false]);
        let perp = sh.form().orthogonal_complement(&v).unwrap();
        assert_eq!(perp, v);
        let zero = Subspace::zero(2);
        assert_eq!(sh.form().orthogonal_complement(&zero).unwrap(), Subspace::full(2));
        assert_eq!(
            sh.form().orthogonal_complement(&Subspace::zero(3)),
            Err(HomologyError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn tilde_p_torus_bouquet() {
        let g = parse_map(TB2).unwrap();
        let t = tilde_p(&g, 20).unwrap();
        assert_eq!(t.terms.len(), 4);
        let sh = SurfaceHomology::new(g.host()).unwrap();
        assert_eq!(t.specialize(sh.form()).unwrap().to_string(), "2 + A + B");
    }

    #[test]
    fn tilde_p_distinguishes_loop_embeddings() {
        let trivial = parse_map("sigma:(1 2 3 5 4 6) alpha:(1 2)(3 4)(5 6)\ngraph_edges: 1").unwrap();
        let essential = parse_map("sigma:(1 3 2 4) alpha:(1 2)(3 4)\ngraph_edges: 1").unwrap();
        assert_eq!(trivial.host().genus(), 1);
        let a = tilde_p(&trivial, 20).unwrap();
        let b = tilde_p(&essential, 20).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn radial_faces_are_quadrilaterals() {
        for text in [TB2, OCTAGON, "sigma:(1 3 5)(2 6 4) alpha:(1 2)(3 4)(5 6)"] {
            let m = host(text);
            let r = radial_map(&m);
            assert!(r.faces().iter().all(|f| f.len() == 4));
            assert_eq!(r.genus(), m.genus());
            assert_eq!(r.num_vertices(), m.num_vertices() + m.num_faces());
        }
    }

    #[test]
    fn subgroup_duality_small() {
        for text in [TB2, OCTAGON, "sigma:(1 3 5)(2 6 4) alpha:(1 2)(3 4)(5 6)"] {
            let rep = verify_subgroup_duality(&host(text), 20).unwrap();
            assert!(rep.all_passed(), "{rep}");
        }
    }
}
