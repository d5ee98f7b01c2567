//! The four-variable surface polynomial `P`, its Tutte, Bollobás–Riordan and
//! doubled-exponent (`P'`) relatives, and checkers for the identities that
//! tie them together.
//!
//! Subgraphs are enumerated as bitmasks over the marked edges; see
//! [`InvariantContext`].

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::homology::{fundamental_cycles, HomologyError, SurfaceHomology};
use crate::invariants::{InvariantContext, SubgraphInvariants};
use crate::map::{serialize_map, CombinatorialMap, EmbeddedSubgraph, UnionFind};
use crate::poly::LaurentPolynomial as Poly;
use crate::report::{PolynomialReport, Witness};

pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TutteError {
    #[error("{edges} edges exceed the brute-force cap of {cap}; use the recursive evaluator or raise the cap")]
    TooManyEdges { edges: usize, cap: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

fn check_cap(edges: usize, cap: usize) -> Result<(), TutteError> {
    if edges > cap {
        Err(TutteError::TooManyEdges { edges, cap })
    } else {
        Ok(())
    }
}

/// Sums `f(mask)` exponent vectors over all `2^n` masks, counting repeats.
/// Work is split into fixed mask ranges so the merged result does not depend
/// on scheduling.
pub fn state_sum<F>(n: usize, f: F) -> HashMap<Vec<i64>, u64>
where
    F: Fn(u64) -> Vec<i64> + Sync,
{
    assert!(n < 64);
    let total = 1u64 << n;
    let chunk = (total / 256).max(1);
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut local: HashMap<Vec<i64>, u64> = HashMap::new();
            for mask in ci * chunk..((ci + 1) * chunk).min(total) {
                *local.entry(f(mask)).or_insert(0) += 1;
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

pub fn counts_to_poly(vars: &[&str], counts: HashMap<Vec<i64>, u64>) -> Poly {
    Poly::from_terms(vars, counts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

/// The monomial of one subgraph in `P`.
pub fn p_term(ctx: &InvariantContext, inv: &SubgraphInvariants) -> [i64; 4] {
    [inv.c - ctx.graph_components(), inv.k, inv.s / 2, inv.s_perp / 2]
}

fn p_term_poly(ctx: &InvariantContext, mask: u64) -> Poly {
    let t = p_term(ctx, &ctx.invariants(mask));
    Poly::from_terms(&["X", "Y", "A", "B"], [(t.to_vec(), BigInt::from(1))])
}

/// `P` by summing over all spanning subgraphs.
pub fn p_bruteforce(graph: &EmbeddedSubgraph, cap: usize) -> Result<Poly, TutteError> {
    let ctx = InvariantContext::new(graph);
    check_cap(ctx.num_graph_edges(), cap)?;
    Ok(p_of_context(&ctx))
}

fn p_of_context(ctx: &InvariantContext) -> Poly {
    let counts = state_sum(ctx.num_graph_edges(), |mask| p_term(ctx, &ctx.invariants(mask)).to_vec());
    counts_to_poly(&["X", "Y", "A", "B"], counts)
}

/// `P` by deletion–contraction with memoization on canonical codes.
///
/// Non-loop non-bridge edges split into delete + contract, bridges are
/// contracted with a factor `1 + X`, and whatever loops remain are summed
/// directly. The host surface is never simplified.
pub fn p_recursive(graph: &EmbeddedSubgraph) -> Poly {
    let mut memo = HashMap::new();
    recurse(graph, &mut memo)
}

fn recurse(g: &EmbeddedSubgraph, memo: &mut HashMap<Vec<u8>, Poly>) -> Poly {
    let key = g.canonical_code();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let edges = g.graph_edges();
    let mut bridge = None;
    let mut split = None;
    for &e in &edges {
        if g.is_loop(e) {
            continue;
        }
        if g.is_bridge(e) {
            bridge.get_or_insert(e);
        } else {
            split = Some(e);
            break;
        }
    }
    let p = if let Some(e) = split {
        let del = g.delete_edge(e).expect("marked edge");
        let con = g.contract_edge(e).expect("non-loop marked edge");
        &recurse(&del, memo) + &recurse(&con, memo)
    } else if let Some(e) = bridge {
        let con = g.contract_edge(e).expect("non-loop marked edge");
        &(Poly::one() + Poly::var("X")) * &recurse(&con, memo)
    } else {
        p_of_context(&InvariantContext::new(g))
    };
    memo.insert(key, p.clone());
    p
}

/// An abstract multigraph: loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    /// The abstract graph underlying the marked graph.
    pub fn of(graph: &EmbeddedSubgraph) -> Self {
        let host = graph.host();
        let vidx = host.vertex_index();
        let mut renumber = vec![usize::MAX; host.num_vertices()];
        let mut num_vertices = 0;
        for (v, &marked) in graph.vertex_marks().iter().enumerate() {
            if marked {
                renumber[v] = num_vertices;
                num_vertices += 1;
            }
        }
        let all = host.edges();
        let edges = graph
            .graph_edges()
            .into_iter()
            .map(|e| (renumber[vidx[all[e]]], renumber[vidx[host.alpha(all[e])]]))
            .collect();
        Self { num_vertices, edges }
    }

    fn components(&self, mask: u64) -> i64 {
        let mut uf = UnionFind::new(self.num_vertices);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                uf.union(a, b);
            }
        }
        uf.components() as i64
    }
}

/// `T = sum X^(c(H)-c(G)) Y^n(H)`, the rank-normalized Tutte polynomial.
pub fn tutte(g: &Multigraph, cap: usize) -> Result<Poly, TutteError> {
    let ne = g.edges.len();
    check_cap(ne, cap)?;
    let cg = g.components(if ne == 0 { 0 } else { u64::MAX >> (64 - ne) });
    let nv = g.num_vertices as i64;
    let counts = state_sum(ne, |mask| {
        let c = g.components(mask);
        vec![c - cg, mask.count_ones() as i64 - nv + c]
    });
    Ok(counts_to_poly(&["X", "Y"], counts))
}

/// `BR = sum (X-1)^(c(H)-c(G)) Y^n(H) Z^s(H)` of a ribbon graph.
pub fn bollobas_riordan(m: &CombinatorialMap, cap: usize) -> Result<Poly, TutteError> {
    let g = EmbeddedSubgraph::full(m.clone());
    let ctx = InvariantContext::new(&g);
    check_cap(ctx.num_graph_edges(), cap)?;
    let cg = ctx.graph_components();
    let counts = state_sum(ctx.num_graph_edges(), |mask| {
        let i = ctx.invariants(mask);
        vec![i.c - cg, i.n, i.s]
    });
    let raw = counts_to_poly(&["X", "Y", "Z"], counts);
    Ok(raw.subs(&[("X", Poly::var("X") - Poly::one())]).expect("polynomial binding of a nonnegative power"))
}

/// `P' = sum X^(c(H)-c(G)) Y^n(H) A^s(H) B^s(H*)` on a cellulation.
pub fn p_prime(m: &CombinatorialMap, cap: usize) -> Result<Poly, TutteError> {
    let g = EmbeddedSubgraph::full(m.clone());
    let dual = EmbeddedSubgraph::full(m.dual());
    let ctx = InvariantContext::new(&g);
    let dctx = InvariantContext::new(&dual);
    let ne = ctx.num_graph_edges();
    check_cap(ne, cap)?;
    let all = full_mask(ne);
    let cg = ctx.graph_components();
    let counts = state_sum(ne, |mask| {
        let i = ctx.invariants(mask);
        let d = dctx.invariants(!mask & all);
        vec![i.c - cg, i.n, i.s, d.s]
    });
    Ok(counts_to_poly(&["X", "Y", "A", "B"], counts))
}

pub fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

fn y_pow(e: i64) -> Poly {
    Poly::monomial(1, &[("Y", e)])
}

fn var(v: &str) -> Poly {
    Poly::var(v)
}

fn mono(powers: &[(&str, i64)]) -> Poly {
    Poly::monomial(1, powers)
}

/// `P(X,Y,A,B) -> P(Y,X,B,A)`.
pub fn swap_duality(p: &Poly) -> Poly {
    p.rename(&[("X", "Y"), ("Y", "X"), ("A", "B"), ("B", "A")])
}

/// `Y^g P(X, Y, Y, Y^-1)`.
pub fn tutte_from_p(p: &Poly, genus: i64) -> Poly {
    &y_pow(genus) * &p.subs(&[("A", var("Y")), ("B", y_pow(-1))]).expect("monomial bindings")
}

/// `Y^g P(X-1, Y, Y Z^2, Y^-1)`.
pub fn br_from_p(p: &Poly, genus: i64) -> Poly {
    let q = p
        .subs(&[("X", var("X") - Poly::one()), ("A", mono(&[("Y", 1), ("Z", 2)])), ("B", y_pow(-1))])
        .expect("X has nonnegative exponents");
    &y_pow(genus) * &q
}

/// `Y^g P(X, Y, A^2 Y, B^2 Y^-1)`.
pub fn p_prime_from_p(p: &Poly, genus: i64) -> Poly {
    let q = p
        .subs(&[("A", mono(&[("A", 2), ("Y", 1)])), ("B", mono(&[("B", 2), ("Y", -1)]))])
        .expect("monomial bindings");
    &y_pow(genus) * &q
}

/// `BR(1+t, t, 1/t)`.
pub fn br_self_dual_point(br: &Poly) -> Poly {
    br.subs(&[("X", Poly::one() + var("t")), ("Y", var("t")), ("Z", mono(&[("t", -1)]))])
        .expect("monomial binding for Z")
}

/// `BR(1+X, Y, (XY)^(-1/2))`; the Z-exponents are even for ribbon graphs.
pub fn br_two_variable(br: &Poly) -> Poly {
    br.divide_exponents("Z", 2)
        .expect("Z-exponents of BR are even")
        .subs(&[("X", Poly::one() + var("X")), ("Z", mono(&[("X", -1), ("Y", -1)]))])
        .expect("monomial binding for Z")
}

/// First mask whose per-subgraph terms differ.
fn term_witness<F, G>(ctx: &InvariantContext, lhs: F, rhs: G, what: &str) -> Witness
where
    F: Fn(u64) -> Poly,
    G: Fn(u64) -> Poly,
{
    let host = serialize_map(ctx.graph());
    for mask in 0..1u64 << ctx.num_graph_edges() {
        let (a, b) = (lhs(mask), rhs(mask));
        if a != b {
            return Witness { host, mask, detail: format!("{what}: term {a} vs {b}") };
        }
    }
    Witness { host, mask: 0, detail: format!("{what}: totals differ although every term matches") }
}

fn poly_witness(g: &EmbeddedSubgraph, detail: String) -> Witness {
    Witness { host: serialize_map(g), mask: 0, detail }
}

/// Checks `P_G(X,Y,A,B) = P_{G*}(Y,X,B,A)` with both sides computed independently.
pub fn verify_duality(m: &CombinatorialMap, cap: usize) -> Result<PolynomialReport, TutteError> {
    let g = EmbeddedSubgraph::full(m.clone());
    let gd = EmbeddedSubgraph::full(m.dual());
    let p = p_bruteforce(&g, cap)?;
    let pd = p_bruteforce(&gd, cap)?;
    let mut report = PolynomialReport::new(format!("duality on a map with {} edges", m.num_edges()));
    let rhs = swap_duality(&pd);
    let ok = p == rhs;
    report.polynomial("P(G)", p);
    report.polynomial("P(G*)", pd);
    report.check("P(G)(X,Y,A,B) = P(G*)(Y,X,B,A)", ok, || {
        let ctx = InvariantContext::new(&g);
        let dctx = InvariantContext::new(&gd);
        let all = full_mask(ctx.num_graph_edges());
        term_witness(&ctx, |mask| p_term_poly(&ctx, mask), |mask| swap_duality(&p_term_poly(&dctx, !mask & all)), "H vs H*")
    });
    Ok(report)
}

/// Splits a map into its connected components (isolated vertices included).
pub fn components(m: &CombinatorialMap) -> Vec<CombinatorialMap> {
    let mut out = Vec::new();
    for comp in m.dart_components() {
        let mut new_id = vec![usize::MAX; m.num_darts()];
        for (i, &d) in comp.iter().enumerate() {
            new_id[d] = i;
        }
        let sigma = comp.iter().map(|&d| new_id[m.sigma(d)]).collect();
        let alpha = comp.iter().map(|&d| new_id[m.alpha(d)]).collect();
        out.push(CombinatorialMap::new(sigma, alpha, 0).expect("component of a valid map"));
    }
    for _ in 0..m.isolated() {
        out.push(CombinatorialMap::isolated_point());
    }
    out
}

/// Tutte, Bollobás–Riordan, `P'` and the two partial-duality corollaries,
/// plus ribbon multiplicativity over the components of `m`.
pub fn verify_specializations(m: &CombinatorialMap, cap: usize) -> Result<PolynomialReport, TutteError> {
    let g = EmbeddedSubgraph::full(m.clone());
    let genus = m.genus() as i64;
    let p = p_bruteforce(&g, cap)?;
    let t = tutte(&Multigraph::of(&g), cap)?;
    let br = bollobas_riordan(m, cap)?;
    let brd = bollobas_riordan(&m.dual(), cap)?;
    let pp = p_prime(m, cap)?;
    let ctx = InvariantContext::new(&g);
    let cg = ctx.graph_components();
    let mut report = PolynomialReport::new(format!("specializations on a map with {} edges, genus {genus}", m.num_edges()));

    let t_rhs = tutte_from_p(&p, genus);
    report.check("T = Y^g P(X,Y,Y,1/Y)", t == t_rhs, || {
        term_witness(
            &ctx,
            |mask| {
                let i = ctx.invariants(mask);
                mono(&[("X", i.c - cg), ("Y", i.n)])
            },
            |mask| tutte_from_p(&p_term_poly(&ctx, mask), genus),
            "Tutte",
        )
    });

    let br_rhs = br_from_p(&p, genus);
    report.check("BR = Y^g P(X-1,Y,YZ^2,1/Y)", br == br_rhs, || {
        term_witness(
            &ctx,
            |mask| {
                let i = ctx.invariants(mask);
                mono(&[("X", i.c - cg), ("Y", i.n), ("Z", i.s)])
            },
            |mask| {
                let t = p_term(&ctx, &ctx.invariants(mask));
                mono(&[("X", t[0]), ("Y", genus + t[1] + t[2] - t[3]), ("Z", 2 * t[2])])
            },
            "BR with X shifted back",
        )
    });

    let pp_rhs = p_prime_from_p(&p, genus);
    report.check("P' = Y^g P(X,Y,A^2 Y,B^2/Y)", pp == pp_rhs, || {
        poly_witness(&g, format!("P' = {pp}, converted P = {pp_rhs}"))
    });

    // partial dualities, directly from BR of the dual map
    let lhs1 = br_self_dual_point(&br);
    let rhs1 = br_self_dual_point(&brd);
    report.check("BR(G)(1+t,t,1/t) = BR(G*)(1+t,t,1/t)", lhs1 == rhs1, || {
        poly_witness(&g, format!("{lhs1} vs {rhs1}"))
    });
    let lhs2 = br_two_variable(&br);
    let rhs2 = &mono(&[("X", -genus), ("Y", genus)])
        * &br_two_variable(&brd).rename(&[("X", "Y"), ("Y", "X")]);
    report.check("BR(G)(1+X,Y,(XY)^-1/2) = (Y/X)^g BR(G*)(1+Y,X,(XY)^-1/2)", lhs2 == rhs2, || {
        poly_witness(&g, format!("{lhs2} vs {rhs2}"))
    });

    // the same corollaries routed through the main duality: BR(G*) from P(G)
    let brd_via = br_from_p(&swap_duality(&p), genus);
    report.check("BR(G*) = Y^g P(G)(Y,X-1,1/Y,YZ^2)", brd_via == brd, || {
        poly_witness(&g, format!("{brd_via} vs {brd}"))
    });

    let comps = components(m);
    if comps.len() > 1 {
        let mut prod = Poly::one();
        for c in &comps {
            prod = &prod * &p_bruteforce(&EmbeddedSubgraph::full(c.clone()), cap)?;
        }
        report.check("P(G1 + G2) = P(G1) P(G2) over components", prod == p, || {
            poly_witness(&g, format!("product {prod} vs {p}"))
        });
    }

    report.polynomial("P", p);
    report.polynomial("T", t);
    report.polynomial("BR", br);
    report.polynomial("P'", pp);
    Ok(report)
}

/// `P(G1 ⊔ G2) = P(G1) P(G2)` for ribbon graphs on separate surfaces.
pub fn verify_multiplicativity(a: &CombinatorialMap, b: &CombinatorialMap, cap: usize) -> Result<PolynomialReport, TutteError> {
    let u = a.disjoint_union(b);
    let gu = EmbeddedSubgraph::full(u);
    let pu = p_bruteforce(&gu, cap)?;
    let pa = p_bruteforce(&EmbeddedSubgraph::full(a.clone()), cap)?;
    let pb = p_bruteforce(&EmbeddedSubgraph::full(b.clone()), cap)?;
    let prod = &pa * &pb;
    let mut report = PolynomialReport::new("ribbon multiplicativity");
    report.check("P(G1 + G2) = P(G1) P(G2)", pu == prod, || poly_witness(&gu, format!("{pu} vs {prod}")));
    report.polynomial("P(G1 + G2)", pu);
    Ok(report)
}

/// The deletion–contraction rules, checked on every applicable marked edge:
/// split for ordinary edges, `(1+X)` for bridges, `(1+Y)` for loops that
/// bound in the surface.
pub fn verify_lemma_properties(graph: &EmbeddedSubgraph, cap: usize) -> Result<PolynomialReport, TutteError> {
    let p = p_bruteforce(graph, cap)?;
    let sh = SurfaceHomology::new(graph.host())?;
    let host = serialize_map(graph);
    let mut report = PolynomialReport::new("deletion-contraction rules");
    for (pos, e) in graph.graph_edges().into_iter().enumerate() {
        let witness = |detail: String| Witness { host: host.clone(), mask: 1 << pos, detail };
        if graph.is_loop(e) {
            let mut only = vec![false; graph.host().num_edges()];
            only[e] = true;
            let cyc = fundamental_cycles(graph.host(), &only);
            let trivial = sh.homology().span(&cyc).dim() == 0;
            if trivial {
                let rhs = &(Poly::one() + var("Y")) * &p_bruteforce(&graph.delete_edge(e).unwrap(), cap)?;
                report.check(format!("edge {pos}: trivial loop rule"), p == rhs, || witness(format!("{p} vs {rhs}")));
            }
        } else if graph.is_bridge(e) {
            let rhs = &(Poly::one() + var("X")) * &p_bruteforce(&graph.contract_edge(e).unwrap(), cap)?;
            report.check(format!("edge {pos}: bridge rule"), p == rhs, || witness(format!("{p} vs {rhs}")));
        } else {
            let rhs = &p_bruteforce(&graph.delete_edge(e).unwrap(), cap)?
                + &p_bruteforce(&graph.contract_edge(e).unwrap(), cap)?;
            report.check(format!("edge {pos}: deletion-contraction"), p == rhs, || witness(format!("{p} vs {rhs}")));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::parse_map;

    const TB2: &str = "sigma:(1 3 2 4) alpha:(1 2)(3 4)";
    const THETA: &str = "sigma:(1 3 5)(2 6 4) alpha:(1 2)(3 4)(5 6)";

    fn p(text: &str) -> String {
        p_bruteforce(&parse_map(text).unwrap(), DEFAULT_CAP).unwrap().to_string()
    }

    fn host(text: &str) -> CombinatorialMap {
        parse_map(text).unwrap().host().clone()
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(p(TB2), "2 + A + B");
        assert_eq!(p("sigma:(1 3 2 4) alpha:(1 2)(3 4)\ngraph_edges: 1"), "1 + B");
        assert_eq!(p("sigma:(1 2) alpha:(1 2)"), "1 + Y");
        assert_eq!(p("sigma:(1)(2) alpha:(1 2)"), "1 + X");
    }

    #[test]
    fn recursive_matches() {
        for text in [TB2, THETA, "sigma:(1 2) alpha:(1 2)", "sigma:(1)(2) alpha:(1 2)", "sigma:(1 3 2 4) alpha:(1 2)(3 4)\ngraph_edges: 1"] {
            let g = parse_map(text).unwrap();
            assert_eq!(p_recursive(&g), p_bruteforce(&g, DEFAULT_CAP).unwrap(), "{text}");
        }
    }

    #[test]
    fn cap_enforced() {
        let g = parse_map(THETA).unwrap();
        assert_eq!(p_bruteforce(&g, 2), Err(TutteError::TooManyEdges { edges: 3, cap: 2 }));
    }

    #[test]
    fn tutte_examples() {
        let bouquet = Multigraph { num_vertices: 1, edges: vec![(0, 0), (0, 0)] };
        assert_eq!(tutte(&bouquet, 20).unwrap().to_string(), "1 + 2*Y + Y^2");
        let bridge = Multigraph { num_vertices: 2, edges: vec![(0, 1)] };
        assert_eq!(tutte(&bridge, 20).unwrap().to_string(), "1 + X");
        let tri = Multigraph::of(&EmbeddedSubgraph::full(host(THETA).dual()));
        assert_eq!(tri.num_vertices, 3);
        let t = tutte(&tri, 20).unwrap();
        let pt = p_bruteforce(&EmbeddedSubgraph::full(host(THETA).dual()), 20).unwrap();
        assert_eq!(t, tutte_from_p(&pt, 0));
    }

    #[test]
    fn br_examples() {
        assert_eq!(bollobas_riordan(&host(TB2), 20).unwrap().to_string(), "1 + 2*Y + Y^2*Z^2");
        assert_eq!(bollobas_riordan(&host("sigma:(1 2) alpha:(1 2)"), 20).unwrap().to_string(), "1 + Y");
        assert_eq!(bollobas_riordan(&host("sigma:(1)(2) alpha:(1 2)"), 20).unwrap().to_string(), "X");
    }

    #[test]
    fn p_prime_examples() {
        assert_eq!(p_prime(&host(TB2), 20).unwrap().to_string(), "2*Y + B^2 + A^2*Y^2");
        assert_eq!(p_prime(&host("sigma:(1 2) alpha:(1 2)"), 20).unwrap().to_string(), "1 + Y");
    }

    #[test]
    fn duality_and_specializations_pass() {
        for text in [TB2, THETA, "sigma:(1 3 2 4 5 7 6 8) alpha:(1 2)(3 4)(5 6)(7 8)"] {
            let m = host(text);
            let d = verify_duality(&m, 20).unwrap();
            assert!(d.all_passed(), "{d}");
            let s = verify_specializations(&m, 20).unwrap();
            assert!(s.all_passed(), "{s}");
        }
    }

    #[test]
    fn theta_triangle_duality() {
        let theta = p(THETA);
        let tri = p_bruteforce(&EmbeddedSubgraph::full(host(THETA).dual()), 20).unwrap();
        assert_eq!(swap_duality(&tri).to_string(), theta);
    }

    #[test]
    fn multiplicative_over_components() {
        let u = host(TB2).disjoint_union(&host("sigma:(1 2) alpha:(1 2)"));
        let pu = p_bruteforce(&EmbeddedSubgraph::full(u.clone()), 20).unwrap();
        let expected: Poly = "2 + A + B".parse::<Poly>().unwrap()
            * "1 + Y".parse::<Poly>().unwrap();
        assert_eq!(pu, expected);
        assert_eq!(components(&u).len(), 2);
        assert!(verify_specializations(&u, 20).unwrap().all_passed());
    }

    #[test]
    fn lemma_rules() {
        for text in [TB2, THETA, "sigma:(1 2 3 5 4 6) alpha:(1 2)(3 4)(5 6)", "sigma:(1)(2) alpha:(1 2)"] {
            let r = verify_lemma_properties(&parse_map(text).unwrap(), 20).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn failing_identity_carries_witness() {
        let g = parse_map(TB2).unwrap();
        let ctx = InvariantContext::new(&g);
        let w = term_witness(&ctx, |m| p_term_poly(&ctx, m), |m| if m == 2 { Poly::zero() } else { p_term_poly(&ctx, m) }, "test");
        assert_eq!(w.mask, 2);
        assert!(w.host.contains("sigma"));
    }
}
