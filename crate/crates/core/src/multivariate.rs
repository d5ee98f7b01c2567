//! The edge-weighted polynomial `P̄ = sum q^c(H) A^(s/2) B^(s_perp/2) prod_{e in H} w_e`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::invariants::InvariantContext;
use crate::map::{serialize_map, CombinatorialMap, EmbeddedSubgraph};
use crate::poly::{LaurentPolynomial as Poly, PolyError};
use crate::report::{PolynomialReport, Witness};
use crate::tutte::full_mask;

pub const RESERVED: [&str; 8] = ["q", "A", "B", "X", "Y", "Z", "d", "u"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("{0} edges exceed the limit of {1}")]
    TooManyEdges(usize, usize),
    #[error("weight of edge {0} is not a Laurent monomial")]
    NotMonomial(usize),
    #[error("weight of edge {0} uses the reserved variable {1}")]
    ReservedName(usize, String),
    #[error("edge {0} is not an edge of the graph")]
    UnknownEdge(usize),
    #[error("weight of edge {0} must have coefficient 1 or -1 to be inverted")]
    NonUnitWeight(usize),
    #[error("weights line {0}: {1}")]
    Syntax(usize, String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One Laurent monomial per host edge; only marked edges are ever used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    weights: Vec<Poly>,
}

impl EdgeWeighting {
    /// `v<id>` for every edge, `id` being the 1-based minimum dart.
    pub fn symbolic(host: &CombinatorialMap) -> Self {
        let weights = host.edges().iter().map(|d| Poly::var(&format!("v{}", d + 1))).collect();
        Self { weights }
    }

    /// Starts from [`symbolic`](Self::symbolic) and applies `edge <id> = <monomial>` lines.
    pub fn parse(host: &CombinatorialMap, text: &str) -> Result<Self, WeightError> {
        let mut w = Self::symbolic(host);
        let ids = host.edges();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let syntax = || WeightError::Syntax(ln + 1, raw.to_string());
            let rest = line.strip_prefix("edge").ok_or_else(syntax)?;
            let (id, value) = rest.split_once('=').ok_or_else(syntax)?;
            let id: usize = id.trim().parse().map_err(|_| syntax())?;
            let idx = ids.iter().position(|&d| d + 1 == id).ok_or(WeightError::UnknownEdge(id))?;
            let p: Poly = value.trim().parse()?;
            w.set(idx, p, id)?;
        }
        Ok(w)
    }

    fn set(&mut self, idx: usize, p: Poly, id: usize) -> Result<(), WeightError> {
        if !p.is_monomial() {
            return Err(WeightError::NotMonomial(id));
        }
        if let Some(v) = p.vars().iter().find(|v| RESERVED.contains(&v.as_str())) {
            return Err(WeightError::ReservedName(id, v.clone()));
        }
        self.weights[idx] = p;
        Ok(())
    }

    pub fn from_weights(weights: Vec<Poly>) -> Self {
        Self { weights }
    }

    pub fn weight(&self, edge: usize) -> &Poly {
        &self.weights[edge]
    }

    pub fn weights(&self) -> &[Poly] {
        &self.weights
    }

    /// Every weight replaced by `q / w_e`. Needs unit coefficients.
    pub fn reciprocal_times_q(&self) -> Self {
        let weights = self
            .weights
            .iter()
            .map(|w| &Poly::var("q") * &w.inverse_monomial().expect("unit monomial weight"))
            .collect();
        Self { weights }
    }

    pub fn product(&self, edges: &[usize]) -> Poly {
        edges.iter().fold(Poly::one(), |acc, &e| &acc * &self.weights[e])
    }

    /// Every weight has coefficient ±1.
    pub fn is_unit(&self) -> bool {
        self.weights.iter().all(|w| w.is_unit_monomial())
    }

    /// Text form in weights-file syntax (edge ids 1-based minimum darts).
    pub fn to_text(&self, host: &CombinatorialMap) -> String {
        host.edges()
            .iter()
            .zip(&self.weights)
            .map(|(d, w)| format!("edge {} = {}\n", d + 1, w))
            .collect()
    }
}

/// Monomials are kept as (coefficient, exponent vector over `vars`).
struct Flat {
    vars: Vec<String>,
    weights: Vec<(BigInt, Vec<i64>)>,
}

impl Flat {
    fn new(w: &EdgeWeighting, edges: &[usize]) -> Self {
        let mut vars: Vec<String> = vec!["q".into(), "A".into(), "B".into()];
        for &e in edges {
            for v in w.weight(e).vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        let weights = edges
            .iter()
            .map(|&e| {
                let p = w.weight(e);
                let (c, exps) = p.as_monomial().expect("weights are monomials");
                let mut full = vec![0; vars.len()];
                for (name, x) in p.vars().iter().zip(exps) {
                    full[vars.iter().position(|v| v == name).unwrap()] += x;
                }
                (c.clone(), full)
            })
            .collect();
        Self { vars, weights }
    }
}

/// `P̄` of the marked graph with the given weights.
pub fn p_bar(graph: &EmbeddedSubgraph, w: &EdgeWeighting, cap: usize) -> Result<Poly, WeightError> {
    let ctx = InvariantContext::new(graph);
    let ne = ctx.num_graph_edges();
    if ne > cap {
        return Err(WeightError::TooManyEdges(ne, cap));
    }
    let flat = Flat::new(w, ctx.graph_edges());
    let nvars = flat.vars.len();
    let terms: Vec<(Vec<i64>, BigInt)> = (0..1u64 << ne)
        .into_par_iter()
        .map(|mask| {
            let inv = ctx.invariants(mask);
            let mut exp = vec![0; nvars];
            exp[0] = inv.c;
            exp[1] = inv.s / 2;
            exp[2] = inv.s_perp / 2;
            let mut coeff = BigInt::one();
            for (i, (c, e)) in flat.weights.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    coeff *= c;
                    for (x, y) in exp.iter_mut().zip(e) {
                        *x += y;
                    }
                }
            }
            (exp, coeff)
        })
        .collect();
    let names: Vec<&str> = flat.vars.iter().map(String::as_str).collect();
    Ok(Poly::from_terms(&names, terms))
}

/// `Z_G(q, w) = P̄(q, w, 1, 1)`.
pub fn multivariate_tutte(graph: &EmbeddedSubgraph, w: &EdgeWeighting, cap: usize) -> Result<Poly, WeightError> {
    Ok(p_bar(graph, w, cap)?.subs(&[("A", Poly::one()), ("B", Poly::one())])?)
}

/// `X^-c(G) Y^(-g-v(G)) P̄(XY, Y, A/Y, BY)`, which recovers `P` when every weight is `v_e`.
pub fn p_from_p_bar(graph: &EmbeddedSubgraph, pbar: &Poly, w: &EdgeWeighting) -> Result<Poly, WeightError> {
    let mut bindings: Vec<(String, Poly)> = vec![
        ("q".into(), Poly::monomial(1, &[("X", 1), ("Y", 1)])),
        ("A".into(), Poly::monomial(1, &[("A", 1), ("Y", -1)])),
        ("B".into(), Poly::monomial(1, &[("B", 1), ("Y", 1)])),
    ];
    for e in graph.graph_edges() {
        for v in w.weight(e).vars() {
            if !bindings.iter().any(|(n, _)| n == v) {
                bindings.push((v.clone(), Poly::var("Y")));
            }
        }
    }
    let refs: Vec<(&str, Poly)> = bindings.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let c = graph.graph_components() as i64;
    let g = graph.host().genus() as i64;
    let v = graph.num_graph_vertices() as i64;
    Ok(&Poly::monomial(1, &[("X", -c), ("Y", -g - v)]) * &pbar.subs(&refs)?)
}

fn cellulation_witness(m: &CombinatorialMap, w: &EdgeWeighting, detail: String) -> Witness {
    Witness {
        host: format!("{}{}", serialize_map(&EmbeddedSubgraph::full(m.clone())), w.to_text(m)),
        mask: 0,
        detail,
    }
}

/// Finds a subgraph whose term on the primal side does not match its dual partner.
fn term_witness(m: &CombinatorialMap, w: &EdgeWeighting, detail: String) -> Witness {
    let g = EmbeddedSubgraph::full(m.clone());
    let gd = EmbeddedSubgraph::full(m.dual());
    let ctx = InvariantContext::new(&g);
    let dctx = InvariantContext::new(&gd);
    let ne = m.num_edges();
    let all = full_mask(ne);
    let genus = m.genus() as i64;
    let cgd = gd.graph_components() as i64;
    let vg = g.num_graph_vertices() as i64;
    let wq = w.reciprocal_times_q();
    for mask in 0..=all {
        let pi = ctx.invariants(mask);
        let di = dctx.invariants(!mask & all);
        let h: Vec<usize> = (0..ne).filter(|i| mask >> i & 1 == 1).collect();
        let hs: Vec<usize> = (0..ne).filter(|i| mask >> i & 1 == 0).collect();
        let lhs = &Poly::monomial(1, &[("q", di.c), ("A", di.s / 2), ("B", di.s_perp / 2)]) * &w.product(&hs);
        let rhs_term = &Poly::monomial(1, &[("q", pi.c - pi.s / 2 + pi.s_perp / 2 - genus + cgd - vg), ("A", pi.s_perp / 2), ("B", pi.s / 2)])
            * &(&wq.product(&h) * &w.product(&(0..ne).collect::<Vec<_>>()));
        if lhs != rhs_term {
            let mut wit = cellulation_witness(m, w, format!("{detail}; H* term {lhs} vs H term {rhs_term}"));
            wit.mask = mask;
            return wit;
        }
    }
    cellulation_witness(m, w, detail)
}

/// Checks the weighted duality
/// `P̄_{G*}(q,w,A,B) = q^(-g+c(G*)-v(G)) (prod w_e) P̄_G(q, q/w, B/q, Aq)`,
/// the specializations to `Z_G` and `P`, and on planar maps the classical
/// relation `Z_{G*}(q,w) = q^(c(G*)-v(G)) (prod w_e) Z_G(q, q/w)`.
pub fn verify_multivariate_duality(m: &CombinatorialMap, w: &EdgeWeighting, cap: usize) -> Result<PolynomialReport, WeightError> {
    if let Some(e) = (0..m.num_edges()).find(|&e| !w.weight(e).is_unit_monomial()) {
        return Err(WeightError::NonUnitWeight(m.edges()[e] + 1));
    }
    let g = EmbeddedSubgraph::full(m.clone());
    let gd = EmbeddedSubgraph::full(m.dual());
    let genus = m.genus() as i64;
    let c_dual = gd.graph_components() as i64;
    let v_g = g.num_graph_vertices() as i64;
    let all_edges: Vec<usize> = (0..m.num_edges()).collect();
    let prod = w.product(&all_edges);
    let wq = w.reciprocal_times_q();

    let lhs = p_bar(&gd, w, cap)?;
    let inner = p_bar(&g, &wq, cap)?.subs(&[
        ("A", Poly::monomial(1, &[("B", 1), ("q", -1)])),
        ("B", Poly::monomial(1, &[("A", 1), ("q", 1)])),
    ])?;
    let rhs = &(&Poly::monomial(1, &[("q", -genus + c_dual - v_g)]) * &prod) * &inner;

    let mut report = PolynomialReport::new(format!("multivariate duality on a map with {} edges", m.num_edges()));
    let ok = lhs == rhs;
    report.check("Pbar(G*)(q,w,A,B) = q^(-g+c(G*)-v(G)) prod(w) Pbar(G)(q,q/w,B/q,Aq)", ok, || {
        term_witness(m, w, format!("{lhs} vs {rhs}"))
    });

    let pbar_g = p_bar(&g, w, cap)?;
    let z_direct = pbar_g.subs(&[("A", Poly::one()), ("B", Poly::one())])?;
    let z = multivariate_tutte(&g, w, cap)?;
    report.check("Z = Pbar(q,w,1,1)", z == z_direct, || cellulation_witness(m, w, String::new()));

    let symbolic = EdgeWeighting::symbolic(m);
    let p_sym = p_from_p_bar(&g, &p_bar(&g, &symbolic, cap)?, &symbolic)?;
    let p = crate::tutte::p_bruteforce(&g, cap).map_err(|_| WeightError::TooManyEdges(m.num_edges(), cap))?;
    report.check("P = X^-c(G) Y^(-g-v(G)) Pbar(XY,Y,A/Y,BY)", p == p_sym, || {
        cellulation_witness(m, w, format!("{p} vs {p_sym}"))
    });

    if genus == 0 {
        let zd = multivariate_tutte(&gd, w, cap)?;
        let zq = multivariate_tutte(&g, &wq, cap)?;
        let planar = &(&Poly::monomial(1, &[("q", c_dual - v_g)]) * &prod) * &zq;
        report.check("planar: Z(G*)(q,w) = q^(c(G*)-v(G)) prod(w) Z(G)(q,q/w)", zd == planar, || {
            cellulation_witness(m, w, format!("{zd} vs {planar}"))
        });
        // the relation is the A = B = 1 image of the surface one
        let specialized = rhs.subs(&[("A", Poly::one()), ("B", Poly::one())])?;
        report.check("planar relation is the A=B=1 specialization", specialized == planar, || {
            cellulation_witness(m, w, format!("{specialized} vs {planar}"))
        });
    }
    report.polynomial("Pbar(G)", pbar_g);
    report.polynomial("Pbar(G*)", lhs);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::parse_map;

    const TB2: &str = "sigma:(1 3 2 4) alpha:(1 2)(3 4)";
    const THETA: &str = "sigma:(1 3 5)(2 6 4) alpha:(1 2)(3 4)(5 6)";

    fn host(text: &str) -> CombinatorialMap {
        parse_map(text).unwrap().host().clone()
    }

    #[test]
    fn single_loop() {
        let m = host("sigma:(1 2) alpha:(1 2)");
        let w = EdgeWeighting::symbolic(&m);
        let p = p_bar(&EmbeddedSubgraph::full(m), &w, 20).unwrap();
        assert_eq!(p.to_string(), "q + q*v1");
    }

    #[test]
    fn torus_bouquet() {
        let m = host(TB2);
        let w = EdgeWeighting::symbolic(&m);
        let p = p_bar(&EmbeddedSubgraph::full(m), &w, 20).unwrap();
        let expected: Poly = "B*q + q*v1 + q*v3 + A*q*v1*v3".parse().unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn duality_small_maps() {
        for text in [TB2, THETA, "sigma:(1 2) alpha:(1 2)", "sigma:(1)(2) alpha:(1 2)"] {
            let m = host(text);
            let r = verify_multivariate_duality(&m, &EdgeWeighting::symbolic(&m), 20).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn planar_theta_relation_connected() {
        let m = host(THETA);
        let r = verify_multivariate_duality(&m, &EdgeWeighting::symbolic(&m), 20).unwrap();
        assert!(r.verdicts.iter().any(|v| v.name.starts_with("planar")));
    }

    #[test]
    fn weights_file() {
        let m = host(THETA);
        let w = EdgeWeighting::parse(&m, "# weights\nedge 1 = 2*t\nedge 5 = s^-1\n").unwrap();
        assert_eq!(w.weight(0).to_string(), "2*t");
        assert_eq!(w.weight(1).to_string(), "v3");
        assert_eq!(w.weight(2).to_string(), "s^-1");
        assert_eq!(EdgeWeighting::parse(&m, "edge 2 = t"), Err(WeightError::UnknownEdge(2)));
        assert_eq!(EdgeWeighting::parse(&m, "edge 1 = 1 + t"), Err(WeightError::NotMonomial(1)));
        assert!(matches!(EdgeWeighting::parse(&m, "edge 1 = q"), Err(WeightError::ReservedName(1, _))));
        assert!(matches!(EdgeWeighting::parse(&m, "edges 1 = t"), Err(WeightError::Syntax(1, _))));
    }

    #[test]
    fn numeric_weights_specialize() {
        let m = host(THETA);
        let g = EmbeddedSubgraph::full(m.clone());
        let w = EdgeWeighting::parse(&m, "edge 1 = 2\nedge 3 = 2\nedge 5 = 2\n").unwrap();
        let z = multivariate_tutte(&g, &w, 20).unwrap();
        let sym = multivariate_tutte(&g, &EdgeWeighting::symbolic(&m), 20).unwrap();
        let two = Poly::constant(2);
        assert_eq!(z, sym.subs(&[("v1", two.clone()), ("v3", two.clone()), ("v5", two)]).unwrap());
    }
}
