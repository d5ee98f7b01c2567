//! Link diagrams drawn on closed oriented surfaces.
//!
//! A diagram is a 4-valent map whose vertices are crossings. Each crossing
//! stores its darts counterclockwise as `[d0, d1, d2, d3]` with `d0, d2` on
//! the over-strand. The A-smoothing opens a channel between the corners
//! `(d0, d1)` and `(d2, d3)` (the regions swept counterclockwise by the
//! over-strand), so its arcs join `d1` with `d2` and `d3` with `d0`.
//!
//! Closed curves that meet no crossing are kept as free loops: either a
//! contractible circle, or a closed walk along darts of the surface map that
//! fixes the curve's homology class.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::homology::{chain_of_darts, primal_to_radial, radial_map, Homology, Subspace, SurfaceHomology};
use crate::invariants::InvariantContext;
use crate::linalg::{zeros, Q};
use crate::map::{format_cycles, parse_cycles, CombinatorialMap, Dart, EmbeddedSubgraph, MapError, UnionFind};
use crate::poly::LaurentPolynomial as Poly;
use crate::report::{PolynomialReport, Witness};
use crate::tutte::{full_mask, p_bruteforce};

pub const DEFAULT_CROSSING_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("crossing {0} does not have exactly four darts")]
    NotFourValent(usize),
    #[error("over pair of crossing {0} is not an opposite pair of its darts")]
    OverPairNotOpposite(usize),
    #[error("dart {0} belongs to no crossing or to several")]
    DartNotInCrossing(usize),
    #[error("free loop walk is not closed at dart {0}")]
    OpenWalk(usize),
    #[error("{0} crossings exceed the limit of {1}")]
    TooManyCrossings(usize, usize),
    #[error("diagram has no orientation for every strand")]
    MissingOrientation,
    #[error("orientation dart {0} repeats a strand component")]
    BadOrientation(usize),
    #[error("faces of the diagram cannot be two-coloured")]
    NotCheckerboardColorable,
    #[error("diagram is not alternating for its checkerboard colouring")]
    NotAlternating,
    #[error("diagram has free loops, so its faces are not all disks")]
    HasFreeLoops,
    #[error("link file line {0}: {1}")]
    Syntax(usize, String),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FreeLoop {
    /// A circle bounding a disk.
    Trivial,
    /// A closed walk of darts in the surface map.
    Walk(Vec<Dart>),
}

/// Which checkerboard colour class the Tait graph lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shading {
    /// Regions at the A-corners; edges of `H` get the A-smoothing.
    A,
    /// Regions at the B-corners; edges of `H` get the B-smoothing.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    map: CombinatorialMap,
    crossings: Vec<[Dart; 4]>,
    crossing_ids: Vec<usize>,
    free_loops: Vec<FreeLoop>,
    orientation: Option<Vec<Dart>>,
}

impl LinkDiagram {
    /// Builds a diagram from normalized crossings over `map`, whose vertices
    /// must be exactly the crossings.
    pub fn new(
        map: CombinatorialMap,
        crossings: Vec<[Dart; 4]>,
        free_loops: Vec<FreeLoop>,
        orientation: Option<Vec<Dart>>,
    ) -> Result<Self, LinkError> {
        let ids = (1..=crossings.len()).collect();
        let d = Self { map, crossings, crossing_ids: ids, free_loops, orientation };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), LinkError> {
        let n = self.map.num_darts();
        let mut seen = vec![false; n];
        for (i, c) in self.crossings.iter().enumerate() {
            for k in 0..4 {
                if self.map.sigma(c[k]) != c[(k + 1) % 4] {
                    return Err(LinkError::NotFourValent(self.crossing_ids[i]));
                }
                if std::mem::replace(&mut seen[c[k]], true) {
                    return Err(LinkError::DartNotInCrossing(c[k] + 1));
                }
            }
        }
        if !self.crossings.is_empty() {
            if let Some(d) = seen.iter().position(|s| !s) {
                return Err(LinkError::DartNotInCrossing(d + 1));
            }
        }
        let vidx = self.map.vertex_index();
        for f in &self.free_loops {
            if let FreeLoop::Walk(w) = f {
                for (i, &x) in w.iter().enumerate() {
                    let next = w[(i + 1) % w.len()];
                    if x >= n || next >= n || vidx[self.map.alpha(x)] != vidx[next] {
                        return Err(LinkError::OpenWalk(x + 1));
                    }
                }
            }
        }
        if let Some(o) = &self.orientation {
            self.outgoing_from(o)?;
        }
        Ok(())
    }

    /// A crossingless diagram of free loops on the surface of `surface`.
    pub fn free(surface: CombinatorialMap, loops: Vec<FreeLoop>) -> Result<Self, LinkError> {
        Self::new(surface, Vec::new(), loops, Some(Vec::new()))
    }

    /// From planar-diagram codes `X[i,j,k,l]`: labels listed counterclockwise
    /// from the incoming under-strand, so `i -> k` is the under-strand and
    /// `j, l` the over-strand. Labels follow the orientation of each component.
    pub fn from_pd(codes: &[[u32; 4]]) -> Result<Self, LinkError> {
        let n = codes.len();
        let mut sigma = vec![0; 4 * n];
        let mut by_label: HashMap<u32, Vec<Dart>> = HashMap::new();
        let mut crossings = Vec::with_capacity(n);
        let mut orientation = Vec::new();
        for (c, x) in codes.iter().enumerate() {
            for p in 0..4 {
                sigma[4 * c + p] = 4 * c + (p + 1) % 4;
                by_label.entry(x[p]).or_default().push(4 * c + p);
            }
            // over darts first
            crossings.push([4 * c + 1, 4 * c + 2, 4 * c + 3, 4 * c]);
            let (j, l) = (x[1] as i64, x[3] as i64);
            let over_out = if j == l + 1 || l - j > 1 { 4 * c + 1 } else { 4 * c + 3 };
            orientation.push(4 * c + 2);
            orientation.push(over_out);
        }
        let mut alpha = vec![usize::MAX; 4 * n];
        for (label, darts) in &by_label {
            if darts.len() != 2 {
                return Err(LinkError::Syntax(0, format!("PD label {label} must occur exactly twice")));
            }
            alpha[darts[0]] = darts[1];
            alpha[darts[1]] = darts[0];
        }
        let map = CombinatorialMap::new(sigma, alpha, 0)?;
        let mut d = Self::new(map, crossings, Vec::new(), None)?;
        // one leading dart per component, taken from the outgoing set
        let comps = d.strand_components();
        let mut lead = Vec::new();
        let mut done = vec![false; comps.len()];
        let comp_of = d.component_of_dart(&comps);
        for &x in &orientation {
            if !done[comp_of[x]] {
                done[comp_of[x]] = true;
                lead.push(x);
            }
        }
        d.orientation = Some(lead);
        d.validate()?;
        Ok(d)
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn crossings(&self) -> &[[Dart; 4]] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> &[FreeLoop] {
        &self.free_loops
    }

    pub fn orientation(&self) -> Option<&[Dart]> {
        self.orientation.as_deref()
    }

    pub fn with_orientation(mut self, lead: Vec<Dart>) -> Result<Self, LinkError> {
        self.orientation = Some(lead);
        self.validate()?;
        Ok(self)
    }

    /// Orients every strand component along its lowest dart.
    pub fn with_default_orientation(self) -> Self {
        let lead = self.strand_components().iter().map(|(a, b)| a[0].min(b[0])).collect();
        self.with_orientation(lead).expect("one dart per component")
    }

    /// Genus of the capped surface.
    pub fn genus(&self) -> usize {
        self.map.genus()
    }

    /// Strand components as orbits of "continue straight through the crossing".
    fn strand_orbits(&self) -> Vec<Vec<Dart>> {
        let n = self.map.num_darts();
        let next: Vec<Dart> = (0..n).map(|x| self.straight(self.map.alpha(x))).collect();
        crate::map::orbits(&next)
    }

    fn straight(&self, x: Dart) -> Dart {
        self.map.sigma(self.map.sigma(x))
    }

    /// Unoriented strand components, each as a pair of opposite dart orbits.
    fn strand_components(&self) -> Vec<(Vec<Dart>, Vec<Dart>)> {
        if self.crossings.is_empty() {
            return Vec::new();
        }
        let orbits = self.strand_orbits();
        let mut orbit_of = vec![0; self.map.num_darts()];
        for (i, o) in orbits.iter().enumerate() {
            for &d in o {
                orbit_of[d] = i;
            }
        }
        let mut used = vec![false; orbits.len()];
        let mut out = Vec::new();
        for (i, o) in orbits.iter().enumerate() {
            if used[i] {
                continue;
            }
            let j = orbit_of[self.map.alpha(o[0])];
            used[i] = true;
            used[j] = true;
            out.push((o.clone(), orbits[j].clone()));
        }
        out
    }

    fn component_of_dart(&self, comps: &[(Vec<Dart>, Vec<Dart>)]) -> Vec<usize> {
        let mut of = vec![usize::MAX; self.map.num_darts()];
        for (i, (a, b)) in comps.iter().enumerate() {
            for &d in a.iter().chain(b) {
                of[d] = i;
            }
        }
        of
    }

    fn outgoing_from(&self, lead: &[Dart]) -> Result<Vec<bool>, LinkError> {
        let comps = self.strand_components();
        let comp_of = self.component_of_dart(&comps);
        let mut out = vec![false; self.map.num_darts()];
        let mut done = vec![false; comps.len()];
        for &x in lead {
            let c = *comp_of.get(x).ok_or(LinkError::BadOrientation(x + 1))?;
            if c == usize::MAX || std::mem::replace(&mut done[c], true) {
                return Err(LinkError::BadOrientation(x + 1));
            }
            let (a, b) = &comps[c];
            let orbit = if a.contains(&x) { a } else { b };
            for &d in orbit {
                out[d] = true;
            }
        }
        if done.iter().any(|d| !d) {
            return Err(LinkError::MissingOrientation);
        }
        Ok(out)
    }

    /// Signed crossing count of the oriented diagram.
    pub fn writhe(&self) -> Result<i64, LinkError> {
        let lead = self.orientation.as_ref().ok_or(LinkError::MissingOrientation)?;
        let out = self.outgoing_from(lead)?;
        Ok(self
            .crossings
            .iter()
            .map(|c| {
                let over = if out[c[0]] { c[0] } else { c[2] };
                let under = if out[c[1]] { c[1] } else { c[3] };
                if self.map.sigma(over) == under {
                    1
                } else {
                    -1
                }
            })
            .sum())
    }

    /// Smoothing partner of every dart under `choice` (bit set = A-smoothing).
    fn partners(&self, choice: u64) -> Vec<Dart> {
        let mut p = vec![0; self.map.num_darts()];
        for (i, c) in self.crossings.iter().enumerate() {
            let pairs = if choice >> i & 1 == 1 {
                [(c[0], c[3]), (c[1], c[2])]
            } else {
                [(c[0], c[1]), (c[2], c[3])]
            };
            for (a, b) in pairs {
                p[a] = b;
                p[b] = a;
            }
        }
        p
    }

    /// Closed curves of a state as dart sequences (each dart is left along its edge).
    pub fn state_curves(&self, choice: u64) -> Vec<Vec<Dart>> {
        if self.crossings.is_empty() {
            return Vec::new();
        }
        let p = self.partners(choice);
        let n = self.map.num_darts();
        let next: Vec<Dart> = (0..n).map(|x| p[self.map.alpha(x)]).collect();
        let orbits = crate::map::orbits(&next);
        let mut taken = vec![false; n];
        let mut curves = Vec::new();
        for o in orbits {
            if taken[o[0]] {
                continue;
            }
            for &d in &o {
                taken[d] = true;
                // the reverse traversal leaves along alpha(d)
                taken[self.map.alpha(d)] = true;
            }
            curves.push(o);
        }
        curves
    }

    /// One resolution state, with homology ranks measured by `hom`.
    pub fn state(&self, choice: u64, hom: &Homology) -> ResolutionState {
        let curves = self.state_curves(choice);
        let mut chains: Vec<Vec<Q>> = curves.iter().map(|c| chain_of_darts(&self.map, c)).collect();
        let mut c = curves.len();
        for f in &self.free_loops {
            c += 1;
            if let FreeLoop::Walk(w) = f {
                chains.push(chain_of_darts(&self.map, w));
            }
        }
        let space = hom.span(&chains);
        let r = space.dim();
        let n = self.crossings.len();
        let alpha_count = (choice & full_mask(n)).count_ones() as usize;
        ResolutionState {
            choice,
            curves,
            alpha_count,
            beta_count: n - alpha_count,
            c,
            r,
            k: c - r,
            space,
        }
    }

    /// All `2^n` states in choice order.
    pub fn states(&self, cap: usize) -> Result<Vec<ResolutionState>, LinkError> {
        let n = self.crossings.len();
        if n > cap {
            return Err(LinkError::TooManyCrossings(n, cap));
        }
        let hom = Homology::new(&self.map);
        Ok((0..1u64 << n).into_par_iter().map(|ch| self.state(ch, &hom)).collect())
    }

    /// Serializes in the `.vlk` format.
    pub fn to_vlk(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.crossings.iter().enumerate() {
            out.push_str(&format!(
                "crossing {}: darts ({} {} {} {}) over ({} {})\n",
                self.crossing_ids[i],
                c[0] + 1,
                c[1] + 1,
                c[2] + 1,
                c[3] + 1,
                c[0] + 1,
                c[2] + 1
            ));
        }
        if self.crossings.is_empty() {
            if self.map.num_darts() > 0 {
                out.push_str(&format!("surface_sigma: {}\n", format_cycles(self.map.sigma_perm())));
                out.push_str(&format!("surface_alpha: {}\n", format_cycles(self.map.alpha_perm())));
            }
        } else {
            out.push_str(&format!("alpha: {}\n", format_cycles(self.map.alpha_perm())));
        }
        if let Some(o) = &self.orientation {
            if !o.is_empty() {
                let ids: Vec<String> = o.iter().map(|d| (d + 1).to_string()).collect();
                out.push_str(&format!("orient: {}\n", ids.join(" ")));
            }
        }
        for f in &self.free_loops {
            match f {
                FreeLoop::Trivial => out.push_str("free: *\n"),
                FreeLoop::Walk(w) => {
                    let ids: Vec<String> = w.iter().map(|d| (d + 1).to_string()).collect();
                    out.push_str(&format!("free: {}\n", ids.join(" ")));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionState {
    pub choice: u64,
    pub curves: Vec<Vec<Dart>>,
    pub alpha_count: usize,
    pub beta_count: usize,
    pub c: usize,
    pub r: usize,
    pub k: usize,
    /// Image of the curves' homology in the surface.
    pub space: Subspace,
}

fn parse_paren_list(s: &str, line: usize) -> Result<(Vec<usize>, &str), LinkError> {
    let err = || LinkError::Syntax(line, format!("expected a parenthesised dart list in `{s}`"));
    let s = s.trim_start();
    let rest = s.strip_prefix('(').ok_or_else(err)?;
    let end = rest.find(')').ok_or_else(err)?;
    let items = rest[..end]
        .split_whitespace()
        .map(|t| t.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(err))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((items, &rest[end + 1..]))
}

fn parse_dart_list(s: &str, line: usize) -> Result<Vec<usize>, LinkError> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .map(|d| d - 1)
                .ok_or_else(|| LinkError::Syntax(line, format!("bad dart `{t}`")))
        })
        .collect()
}

/// Parses the `.vlk` format:
///
/// ```text
/// crossing 1: darts (1 2 3 4) over (1 3)
/// alpha: (1 6)(2 7)...
/// orient: 1 5
/// free: *
/// free: 3 7
/// surface_sigma: (...)
/// surface_alpha: (...)
/// ```
///
/// Darts of a crossing are listed counterclockwise. `free: *` is a circle
/// bounding a disk; `free: d1 d2 ...` is a closed walk in the surface map.
/// `surface_sigma` / `surface_alpha` give the surface of a crossingless
/// diagram (the sphere when omitted).
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, LinkError> {
    let mut crossings: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut alpha_cycles: Vec<Vec<usize>> = Vec::new();
    let mut surface_sigma = None;
    let mut surface_alpha = None;
    let mut orient = None;
    let mut free = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| LinkError::Syntax(ln, line.to_string()))?;
        let key = key.trim();
        let value = value.trim();
        if let Some(id) = key.strip_prefix("crossing") {
            let id: usize = id.trim().parse().map_err(|_| LinkError::Syntax(ln, format!("bad crossing id in `{line}`")))?;
            let rest = value
                .strip_prefix("darts")
                .ok_or_else(|| LinkError::Syntax(ln, "expected `darts`".into()))?;
            let (darts, rest) = parse_paren_list(rest, ln)?;
            let rest = rest
                .trim_start()
                .strip_prefix("over")
                .ok_or_else(|| LinkError::Syntax(ln, "expected `over`".into()))?;
            let (over, rest) = parse_paren_list(rest, ln)?;
            if !rest.trim().is_empty() {
                return Err(LinkError::Syntax(ln, format!("trailing text `{}`", rest.trim())));
            }
            crossings.push((id, darts, over));
            continue;
        }
        match key {
            "alpha" => alpha_cycles.extend(parse_cycles(value)?),
            "surface_sigma" => surface_sigma = Some(parse_cycles(value)?),
            "surface_alpha" => surface_alpha = Some(parse_cycles(value)?),
            "orient" => orient = Some(parse_dart_list(value, ln)?),
            "free" => free.push(if value == "*" {
                FreeLoop::Trivial
            } else {
                FreeLoop::Walk(parse_dart_list(value, ln)?)
            }),
            _ => return Err(LinkError::Syntax(ln, format!("unknown key `{key}`"))),
        }
    }
    let mut normalized = Vec::new();
    let mut ids = Vec::new();
    for (id, darts, over) in &crossings {
        if darts.len() != 4 {
            return Err(LinkError::NotFourValent(*id));
        }
        if over.len() != 2 {
            return Err(LinkError::OverPairNotOpposite(*id));
        }
        let pos = |d: usize| darts.iter().position(|&x| x == d);
        let (Some(a), Some(b)) = (pos(over[0]), pos(over[1])) else {
            return Err(LinkError::OverPairNotOpposite(*id));
        };
        if (a + 2) % 4 != b {
            return Err(LinkError::OverPairNotOpposite(*id));
        }
        let s = a.min(b);
        normalized.push([darts[s] - 1, darts[(s + 1) % 4] - 1, darts[(s + 2) % 4] - 1, darts[(s + 3) % 4] - 1]);
        ids.push(*id);
    }
    let map = if crossings.is_empty() {
        match (surface_sigma, surface_alpha) {
            (Some(s), Some(a)) => CombinatorialMap::from_cycles(&s, &a, 0)?,
            (None, None) => CombinatorialMap::empty(),
            _ => return Err(LinkError::Syntax(0, "surface_sigma and surface_alpha go together".into())),
        }
    } else {
        let sigma: Vec<Vec<usize>> = crossings.iter().map(|(_, d, _)| d.clone()).collect();
        CombinatorialMap::from_cycles(&sigma, &alpha_cycles, 0)?
    };
    let orientation = if crossings.is_empty() { Some(orient.unwrap_or_default()) } else { orient };
    let d = LinkDiagram { map, crossings: normalized, crossing_ids: ids, free_loops: free, orientation };
    d.validate()?;
    Ok(d)
}

/// `K = sum_S A^alpha(S) B^beta(S) d^k(S) Z^r(S)`.
pub fn kauffman(d: &LinkDiagram, cap: usize) -> Result<Poly, LinkError> {
    let states = d.states(cap)?;
    let mut counts: HashMap<Vec<i64>, u64> = HashMap::new();
    for s in &states {
        *counts.entry(vec![s.alpha_count as i64, s.beta_count as i64, s.k as i64, s.r as i64]).or_insert(0) += 1;
    }
    Ok(crate::tutte::counts_to_poly(&["A", "B", "d", "Z"], counts))
}

/// States grouped by the subspace their curves span; each group carries
/// `sum A^alpha B^beta d^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBracket {
    pub terms: Vec<(Subspace, Poly)>,
}

impl SubspaceBracket {
    /// `[V] -> Z^dim V`.
    pub fn specialize(&self) -> Poly {
        self.terms
            .iter()
            .map(|(v, p)| p * &Poly::monomial(1, &[("Z", v.dim() as i64)]))
            .sum()
    }
}

impl fmt::Display for SubspaceBracket {
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

pub fn tilde_kauffman(d: &LinkDiagram, cap: usize) -> Result<SubspaceBracket, LinkError> {
    let states = d.states(cap)?;
    let mut groups: std::collections::BTreeMap<Subspace, Poly> = Default::default();
    for s in states {
        let m = Poly::monomial(1, &[("A", s.alpha_count as i64), ("B", s.beta_count as i64), ("d", s.k as i64)]);
        *groups.entry(s.space).or_insert_with(Poly::zero) += &m;
    }
    Ok(SubspaceBracket { terms: groups.into_iter().collect() })
}

fn jones_bindings() -> [(&'static str, Poly); 3] {
    let u = |e: i64| Poly::monomial(1, &[("u", e)]);
    [("A", u(-1)), ("B", u(1)), ("d", -(u(2) + u(-2)))]
}

fn writhe_factor(w: i64) -> Poly {
    Poly::monomial(if w % 2 == 0 { 1 } else { -1 }, &[("u", 3 * w)])
}

/// `(-1)^w u^(3w) K(1/u, u, -u^2-u^-2, Z)` with `t = u^4`. Not divided by the
/// unknot value, so a contractible circle alone gives `-u^2 - u^-2`.
pub fn jones(d: &LinkDiagram, cap: usize) -> Result<Poly, LinkError> {
    let w = d.writhe()?;
    let k = kauffman(d, cap)?;
    Ok(&writhe_factor(w) * &k.subs(&jones_bindings()).expect("monomial and polynomial bindings"))
}

/// The usual Jones polynomial in `u = t^(1/4)`: `Z = d`, divided by `d`, then
/// normalized as in [`jones`]. The unknot gives 1.
pub fn classical_jones(d: &LinkDiagram, cap: usize) -> Result<Poly, LinkError> {
    let w = d.writhe()?;
    let bracket = classical_bracket(d, cap)?;
    Ok(&writhe_factor(w) * &bracket.subs(&jones_bindings()).expect("bindings"))
}

/// `d^-1 K(A, B, d, d)`.
pub fn classical_bracket(d: &LinkDiagram, cap: usize) -> Result<Poly, LinkError> {
    let k = kauffman(d, cap)?;
    let merged = k.subs(&[("Z", Poly::var("d"))]).expect("monomial binding");
    Ok(&merged * &Poly::monomial(1, &[("d", -1)]))
}

/// The subspace bracket with the Jones normalization applied to every coefficient.
pub fn tilde_jones(d: &LinkDiagram, cap: usize) -> Result<Vec<(Subspace, Poly)>, LinkError> {
    let w = d.writhe()?;
    let t = tilde_kauffman(d, cap)?;
    Ok(t.terms
        .into_iter()
        .map(|(v, p)| (v, &writhe_factor(w) * &p.subs(&jones_bindings()).expect("bindings")))
        .collect())
}

/// Face colouring: `true` for faces containing the A-corners.
pub fn checkerboard(d: &LinkDiagram) -> Result<Vec<bool>, LinkError> {
    if !d.free_loops.is_empty() {
        return Err(LinkError::HasFreeLoops);
    }
    let m = &d.map;
    let fidx = m.face_index();
    let nf = m.num_faces();
    let mut colour: Vec<Option<bool>> = vec![None; nf];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for x in 0..m.num_darts() {
        adj[fidx[x]].push(fidx[m.alpha(x)]);
    }
    for start in 0..nf {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(true);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            let cf = colour[f].unwrap();
            for &g in &adj[f] {
                match colour[g] {
                    None => {
                        colour[g] = Some(!cf);
                        stack.push(g);
                    }
                    Some(cg) if cg == cf => return Err(LinkError::NotCheckerboardColorable),
                    _ => {}
                }
            }
        }
    }
    // orient each component's colouring by its A-corners
    let colour: Vec<bool> = colour.into_iter().map(Option::unwrap).collect();
    let mut flip = vec![None; nf];
    let mut uf = UnionFind::new(nf);
    for x in 0..m.num_darts() {
        uf.union(fidx[x], fidx[m.alpha(x)]);
        uf.union(fidx[x], fidx[m.sigma(x)]);
    }
    let mut out = colour.clone();
    for c in &d.crossings {
        for &x in &[c[1], c[3]] {
            let f = fidx[x];
            let root = uf.find(f);
            let want = !colour[f];
            match flip[root] {
                None => flip[root] = Some(want),
                Some(prev) if prev != want => return Err(LinkError::NotAlternating),
                _ => {}
            }
        }
    }
    for f in 0..nf {
        if let Some(true) = flip[uf.find(f)] {
            out[f] = !colour[f];
        }
    }
    Ok(out)
}

/// Tait graph of a checkerboard-coloured alternating diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaitGraph {
    pub graph: EmbeddedSubgraph,
    pub shading: Shading,
    /// Crossing index of each Tait edge (by edge index).
    pub crossing_of_edge: Vec<usize>,
    /// Diagram dart of each Tait dart.
    pub diagram_dart: Vec<Dart>,
}

/// Vertices are the shaded faces, one edge per crossing, rotations read
/// counterclockwise around each shaded face.
pub fn tait_graph(d: &LinkDiagram, shading: Shading) -> Result<TaitGraph, LinkError> {
    checkerboard(d)?;
    let m = &d.map;
    // Tait darts: the crossing darts lying in shaded faces
    let mut diagram_dart = Vec::new();
    let mut crossing_of = Vec::new();
    for (i, c) in d.crossings.iter().enumerate() {
        let (a, b) = match shading {
            Shading::A => (c[1], c[3]),
            Shading::B => (c[0], c[2]),
        };
        diagram_dart.push(a);
        diagram_dart.push(b);
        crossing_of.push(i);
    }
    let mut tait_of = vec![usize::MAX; m.num_darts()];
    for (t, &x) in diagram_dart.iter().enumerate() {
        tait_of[x] = t;
    }
    let phi = m.phi_perm();
    let mut phi_inv = vec![0; phi.len()];
    for (i, &x) in phi.iter().enumerate() {
        phi_inv[x] = i;
    }
    let nt = diagram_dart.len();
    let mut sigma = vec![0; nt];
    let mut alpha = vec![0; nt];
    for (t, &x) in diagram_dart.iter().enumerate() {
        let mut y = phi_inv[x];
        while tait_of[y] == usize::MAX {
            y = phi_inv[y];
        }
        sigma[t] = tait_of[y];
        alpha[t] = tait_of[m.sigma(m.sigma(x))];
    }
    let isolated = if d.crossings.is_empty() { 1 } else { 0 };
    let host = CombinatorialMap::new(sigma, alpha, isolated)?;
    let edges = host.edges();
    let crossing_of_edge = edges.iter().map(|&t| crossing_of[t / 2]).collect();
    Ok(TaitGraph { graph: EmbeddedSubgraph::full(host), shading, crossing_of_edge, diagram_dart })
}

/// The alternating diagram whose A-shaded Tait graph is `g`: crossings at
/// the edge midpoints, A-regions around the vertices of `g`.
pub fn medial_diagram(g: &CombinatorialMap) -> LinkDiagram {
    let r = radial_map(g);
    let m = r.dual();
    let mut crossings = Vec::new();
    for rot in m.vertex_orbits() {
        assert_eq!(rot.len(), 4, "radial faces are quadrilaterals");
        // vertex regions hold the odd radial darts; put one at position 1
        let s = rot.iter().position(|&x| x % 2 == 1).unwrap();
        let start = (s + 3) % 4;
        crossings.push([rot[start], rot[(start + 1) % 4], rot[(start + 2) % 4], rot[(start + 3) % 4]]);
    }
    LinkDiagram::new(m, crossings, Vec::new(), None).expect("medial map is 4-valent")
}

/// `A^(g+v-c) B^(n-g) d^c Z^g P_G(Bd/A, Ad/B, A/(BZ), B/(AZ))`, with `A`
/// and `B` exchanged for the B-shading.
pub fn bracket_from_p(p: &Poly, genus: i64, tait: &EmbeddedSubgraph, shading: Shading) -> Poly {
    let v = tait.num_graph_vertices() as i64;
    let c = tait.graph_components() as i64;
    let e = tait.num_graph_edges() as i64;
    let n = e - v + c;
    let (a, b) = match shading {
        Shading::A => ("A", "B"),
        Shading::B => ("B", "A"),
    };
    let mono = |pw: &[(&str, i64)]| Poly::monomial(1, pw);
    let sub = p
        .subs(&[
            ("X", mono(&[(b, 1), ("d", 1), (a, -1)])),
            ("Y", mono(&[(a, 1), ("d", 1), (b, -1)])),
            ("A", mono(&[(a, 1), (b, -1), ("Z", -1)])),
            ("B", mono(&[(b, 1), (a, -1), ("Z", -1)])),
        ])
        .expect("monomial bindings");
    &mono(&[(a, genus + v - c), (b, n - genus), ("d", c), ("Z", genus)]) * &sub
}

/// Checks `K_D` against the Tait-graph specialization of `P`, state by state
/// correspondences `alpha(S) = e(H)`, `k(S) = c(H) + k(H)`, `r(S) = l(H)`,
/// and that each state's subspace is `V(H) ∩ V(H)^perp`.
pub fn verify_thistlethwaite(d: &LinkDiagram, shading: Shading, cap: usize) -> Result<PolynomialReport, LinkError> {
    let n = d.num_crossings();
    if n > cap {
        return Err(LinkError::TooManyCrossings(n, cap));
    }
    let tait = tait_graph(d, shading)?;
    let genus = d.genus() as i64;
    let k = kauffman(d, cap)?;
    let p = p_bruteforce(&tait.graph, cap).map_err(|_| LinkError::TooManyCrossings(n, cap))?;
    let rhs = bracket_from_p(&p, genus, &tait.graph, shading);
    let text = d.to_vlk();
    let mut report = PolynomialReport::new(format!("{n}-crossing diagram, genus {genus}, shading {shading:?}"));
    let tag = match shading {
        Shading::A => "A-shading",
        Shading::B => "B-shading",
    };
    report.check(format!("K_D = Tait specialization of P_G ({tag})"), k == rhs, || Witness {
        host: text.clone(),
        mask: 0,
        detail: format!("{k} vs {rhs}"),
    });

    // subgraphs of the Tait graph against states
    let ctx = InvariantContext::new(&tait.graph);
    let hom = Homology::new(&d.map);
    let rad = radial_map(&d.map);
    let rh = SurfaceHomology::new(&rad).map_err(|_| LinkError::NotCheckerboardColorable)?;
    let tmap = tait.graph.host();
    let ne = tmap.num_edges();
    let mut bad: Option<(u64, String)> = None;
    for mask in 0..1u64 << ne {
        let mut choice = 0u64;
        for e in 0..ne {
            let in_h = mask >> e & 1 == 1;
            let a_smoothing = match shading {
                Shading::A => in_h,
                Shading::B => !in_h,
            };
            if a_smoothing {
                choice |= 1 << tait.crossing_of_edge[e];
            }
        }
        let s = d.state(choice, &hom);
        let inv = ctx.invariants(mask);
        let type_one = match shading {
            Shading::A => s.alpha_count,
            Shading::B => s.beta_count,
        } as i64;
        let ok_counts = type_one == inv.e && s.k as i64 == inv.c + inv.k && s.r as i64 == inv.l;
        // Tait cycles and state curves in the radial map of the diagram
        let in_sub = ctx.host_edge_marks(mask);
        let tcycles = crate::homology::fundamental_cycles(tmap, &in_sub);
        let pushed: Vec<Vec<Q>> = tcycles.iter().map(|z| tait_to_radial(&tait, &rad, z)).collect();
        let v = rh.homology().span(&pushed);
        let perp = rh.form().orthogonal_complement(&v).expect("same ambient");
        let meet = v.intersect(&perp);
        let curves: Vec<Vec<Q>> =
            s.curves.iter().map(|c| primal_to_radial(&d.map, &rad, &chain_of_darts(&d.map, c))).collect();
        let vs = rh.homology().span(&curves);
        if !ok_counts || vs != meet {
            bad = Some((
                mask,
                format!(
                    "state alpha={} beta={} k={} r={} vs e(H)={} c(H)+k(H)={} l(H)={}; curve space {vs} vs {meet}",
                    s.alpha_count,
                    s.beta_count,
                    s.k,
                    s.r,
                    inv.e,
                    inv.c + inv.k,
                    inv.l
                ),
            ));
            break;
        }
    }
    match bad {
        None => report.pass(format!("per-state correspondences with Tait subgraphs ({tag})")),
        Some((mask, detail)) => report.fail(
            format!("per-state correspondences with Tait subgraphs ({tag})"),
            Witness { host: text, mask, detail },
        ),
    }
    report.polynomial("K", k);
    report.polynomial(format!("P(Tait, {tag})"), p);
    Ok(report)
}

/// A Tait edge runs shaded face -> crossing -> shaded face; in the radial map
/// of the diagram that is a path of two radial edges.
fn tait_to_radial(tait: &TaitGraph, rad: &CombinatorialMap, chain: &[Q]) -> Vec<Q> {
    let tmap = tait.graph.host();
    let ridx = rad.edge_index();
    let mut out = zeros(rad.num_edges());
    for (e, &t) in tmap.edges().iter().enumerate() {
        let x = &chain[e];
        if num_traits::Zero::is_zero(x) {
            continue;
        }
        let from = tait.diagram_dart[t];
        let to = tait.diagram_dart[tmap.alpha(t)];
        out[ridx[2 * from]] -= x;
        out[ridx[2 * to]] += x;
    }
    out
}

/// The Tait graph for the other shading is the dual of this one.
pub fn dual_tait_consistent(d: &LinkDiagram) -> Result<bool, LinkError> {
    let a = tait_graph(d, Shading::A)?;
    let b = tait_graph(d, Shading::B)?;
    Ok(a.graph.host().dual().num_edges() == b.graph.host().num_edges()
        && crate::map::canonical_code(&a.graph.host().dual()) == crate::map::canonical_code(b.graph.host()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::parse_map;

    const TREFOIL: [[u32; 4]; 3] = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];

    fn host(text: &str) -> CombinatorialMap {
        parse_map(text).unwrap().host().clone()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn mirror(codes: &[[u32; 4]]) -> Vec<[u32; 4]> {
        // rotating each code by one position exchanges over and under
        codes.iter().map(|x| [x[1], x[2], x[3], x[0]]).collect()
    }

    #[test]
    fn trefoil_from_pd_is_planar() {
        let d = LinkDiagram::from_pd(&TREFOIL).unwrap();
        let m = d.map();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (3, 6, 5));
        assert_eq!(d.genus(), 0);
        assert_eq!(d.orientation().unwrap().len(), 1);
        assert_eq!(d.writhe().unwrap().abs(), 3);
    }

    #[test]
    fn trefoil_states_match_classical_counts() {
        let d = LinkDiagram::from_pd(&TREFOIL).unwrap();
        let states = d.states(DEFAULT_CROSSING_CAP).unwrap();
        assert_eq!(states.len(), 8);
        for s in &states {
            assert_eq!(s.r, 0);
            assert_eq!(s.k, s.c);
        }
        let k = kauffman(&d, DEFAULT_CROSSING_CAP).unwrap();
        assert!(!k.vars().iter().any(|v| v == "Z"));
    }

    #[test]
    fn trefoil_jones_pair() {
        let right = p("-u^-16 + u^-12 + u^-4");
        let left = p("-u^16 + u^12 + u^4");
        let a = classical_jones(&LinkDiagram::from_pd(&TREFOIL).unwrap(), 20).unwrap();
        let b = classical_jones(&LinkDiagram::from_pd(&mirror(&TREFOIL)).unwrap(), 20).unwrap();
        assert!((a == right && b == left) || (a == left && b == right), "{a} / {b}");
    }

    #[test]
    fn round_trip_text() {
        let d = LinkDiagram::from_pd(&TREFOIL).unwrap();
        let again = parse_diagram(&d.to_vlk()).unwrap();
        assert_eq!(again.to_vlk(), d.to_vlk());
        assert_eq!(kauffman(&again, 20).unwrap(), kauffman(&d, 20).unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_diagram("crossing 1: darts (1 2 3) over (1 3)\nalpha: (1 2)(3 3)"),
            Err(LinkError::NotFourValent(1)) | Err(LinkError::Map(_))
        ));
        assert!(matches!(
            parse_diagram("crossing 7: darts (1 2 3 4) over (1 2)\nalpha: (1 2)(3 4)"),
            Err(LinkError::OverPairNotOpposite(7))
        ));
        assert!(matches!(parse_diagram("bogus: 1"), Err(LinkError::Syntax(1, _))));
    }

    #[test]
    fn free_loops() {
        let unknot = parse_diagram("free: *").unwrap();
        assert_eq!(unknot.genus(), 0);
        assert_eq!(kauffman(&unknot, 20).unwrap(), p("d"));
        assert_eq!(classical_jones(&unknot, 20).unwrap(), p("1"));
        assert_eq!(jones(&unknot, 20).unwrap(), p("-u^2 - u^-2"));

        let torus = parse_diagram("surface_sigma: (1 3 2 4)\nsurface_alpha: (1 2)(3 4)\nfree: 1").unwrap();
        assert_eq!(torus.genus(), 1);
        let s = torus.states(20).unwrap();
        assert_eq!((s[0].c, s[0].r, s[0].k), (1, 1, 0));
        assert_eq!(kauffman(&torus, 20).unwrap(), p("Z"));
        assert_eq!(jones(&torus, 20).unwrap(), p("Z"));
        let t = tilde_kauffman(&torus, 20).unwrap();
        assert_eq!(t.terms.len(), 1);
        assert_eq!(t.terms[0].0.dim(), 1);
    }

    #[test]
    fn trefoil_tait_graphs() {
        let d = LinkDiagram::from_pd(&TREFOIL).unwrap();
        let a = tait_graph(&d, Shading::A).unwrap();
        let b = tait_graph(&d, Shading::B).unwrap();
        let shape = |t: &TaitGraph| (t.graph.host().num_vertices(), t.graph.host().num_edges(), t.graph.host().genus());
        let mut shapes = [shape(&a), shape(&b)];
        shapes.sort();
        assert_eq!(shapes, [(2, 3, 0), (3, 3, 0)]);
        assert!(dual_tait_consistent(&d).unwrap());
    }

    #[test]
    fn one_crossing_tait_graphs() {
        let d = parse_diagram("crossing 1: darts (1 2 3 4) over (1 3)\nalpha: (1 2)(3 4)\norient: 1").unwrap();
        let a = tait_graph(&d, Shading::A).unwrap();
        let b = tait_graph(&d, Shading::B).unwrap();
        let mut got = [p_bruteforce(&a.graph, 20).unwrap().to_string(), p_bruteforce(&b.graph, 20).unwrap().to_string()];
        got.sort();
        assert_eq!(got, ["1 + X", "1 + Y"]);
        for s in [Shading::A, Shading::B] {
            assert!(verify_thistlethwaite(&d, s, 20).unwrap().all_passed());
        }
    }

    #[test]
    fn medial_inverts_tait() {
        for text in [
            "sigma:(1 3 2 4) alpha:(1 2)(3 4)",
            "sigma:(1 3 5)(2 6 4) alpha:(1 2)(3 4)(5 6)",
            "sigma:(5 1 8 2)(7 3 6 4) alpha:(1 2)(3 4)(5 6)(7 8)",
            "sigma:(1 2) alpha:(1 2)",
        ] {
            let g = host(text);
            let d = medial_diagram(&g);
            assert_eq!(d.genus(), g.genus());
            let t = tait_graph(&d, Shading::A).unwrap();
            assert_eq!(crate::map::canonical_code(t.graph.host()), crate::map::canonical_code(&g), "{text}");
        }
    }

    #[test]
    fn thistlethwaite_small_cases() {
        let d = LinkDiagram::from_pd(&TREFOIL).unwrap();
        for s in [Shading::A, Shading::B] {
            let r = verify_thistlethwaite(&d, s, 20).unwrap();
            assert!(r.all_passed(), "{r}");
        }
        for text in ["sigma:(1 3 2 4) alpha:(1 2)(3 4)", "sigma:(5 1 8 2)(7 3 6 4) alpha:(1 2)(3 4)(5 6)(7 8)"] {
            let d = medial_diagram(&host(text));
            for s in [Shading::A, Shading::B] {
                let r = verify_thistlethwaite(&d, s, 20).unwrap();
                assert!(r.all_passed(), "{r}");
            }
        }
    }
}
