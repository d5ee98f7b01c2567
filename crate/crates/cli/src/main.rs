use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use surface_tutte::corpus;
use surface_tutte::homology::{tilde_p, verify_subgroup_duality};
use surface_tutte::invariants::InvariantContext;
use surface_tutte::links::{
    classical_jones, jones, kauffman, parse_diagram, tait_graph, tilde_kauffman, verify_thistlethwaite, LinkDiagram,
    Shading,
};
use surface_tutte::map::{parse_map, serialize_map, CombinatorialMap, EmbeddedSubgraph};
use surface_tutte::multivariate::{multivariate_tutte, p_bar, verify_multivariate_duality, EdgeWeighting};
use surface_tutte::poly::LaurentPolynomial as Poly;
use surface_tutte::report::PolynomialReport;
use surface_tutte::tutte::{
    bollobas_riordan, p_bruteforce, p_prime, p_recursive, tutte, verify_duality, verify_lemma_properties,
    verify_specializations, Multigraph,
};

const AFTER_HELP: &str = "\
MAP FILES (.map)
  sigma: (1 3 2 4)          vertex rotations, counterclockwise, darts numbered from 1
  alpha: (1 2)(3 4)         edge pairing, every cycle of length two
  isolated: 0               optional count of vertices without darts
  graph_vertices: *         optional: marked vertices by minimum dart, iso1.. for isolated ones
  graph_edges: 1 3          optional: marked edges by minimum dart (default *)
  '#' starts a comment; several keys may share a line.

LINK FILES (.vlk)
  crossing 1: darts (1 2 3 4) over (1 3)   darts counterclockwise, over pair opposite
  alpha: (1 6)(2 7)...                     darts joined along strands
  orient: 1 5                              optional, one outgoing dart per component
  free: *                                  a circle bounding a disk
  free: 3 7                                a closed walk in the surface map
  surface_sigma: / surface_alpha:          surface of a diagram without crossings

WEIGHT FILES
  edge 3 = x^2*y                           Laurent monomial per edge; default v<edge id>

POLYNOMIALS
  Terms sorted by total degree then variable exponents; e.g. 2 + A + B, -u^-16 + u^-12 + u^-4.

EXIT CODES
  0 success, 1 verification failure, 2 input error";

#[derive(Parser)]
#[command(name = "surftutte", version, about = "Tutte-type polynomials of graphs on surfaces", after_help = AFTER_HELP)]
struct Cli {
    /// Maximum edge or crossing count for state sums
    #[arg(long, global = true, default_value_t = 20)]
    cap: usize,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// P(X,Y,A,B) of the marked graph
    Poly {
        file: PathBuf,
        #[arg(long, conflicts_with = "bruteforce")]
        recursive: bool,
        #[arg(long)]
        bruteforce: bool,
    },
    /// Tutte polynomial of the underlying abstract graph
    Tutte { file: PathBuf },
    /// Bollobas-Riordan polynomial of the map
    Br { file: PathBuf },
    /// P'(X,Y,A,B) of the map
    Pprime { file: PathBuf },
    /// Edge-weighted polynomial in q, A, B and the edge weights
    Pbar {
        file: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Print the multivariate Tutte polynomial (A = B = 1) instead
        #[arg(long)]
        potts: bool,
    },
    /// Polynomial with homology-subspace coefficients
    Tildep { file: PathBuf },
    /// Invariants c, v, e, n, bc, s, s_perp, k, l of a spanning subgraph
    Invariants {
        file: PathBuf,
        /// Edge ids of the subgraph (default: all graph edges)
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        edges: Option<Vec<usize>>,
    },
    /// Dual map
    Dual { file: PathBuf },
    /// Canonical isomorphism code, hex encoded
    Canon { file: PathBuf },
    /// Surface Kauffman bracket K(A,B,d,Z)
    Bracket {
        file: PathBuf,
        /// Group states by homology subspace instead
        #[arg(long)]
        tilde: bool,
    },
    /// Jones polynomial in u = t^(1/4)
    Jones {
        file: PathBuf,
        /// Classical normalization: Z = d, unknot = 1
        #[arg(long)]
        classical: bool,
    },
    /// Tait graph of an alternating diagram, as a map file
    Tait {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ShadingArg::A)]
        shading: ShadingArg,
    },
    /// Check identities
    Verify {
        #[arg(value_enum)]
        what: Check,
        file: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Seed for the random part of `verify all`
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generate map or diagram corpora
    Corpus {
        #[arg(value_enum)]
        kind: CorpusKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Largest edge (or crossing) count
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Surface genus for cellulations and diagrams
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShadingArg {
    A,
    B,
}

impl From<ShadingArg> for Shading {
    fn from(s: ShadingArg) -> Self {
        match s {
            ShadingArg::A => Shading::A,
            ShadingArg::B => Shading::B,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Duality,
    Special,
    Lemma,
    Mduality,
    SubgroupDuality,
    Thistlethwaite,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusKind {
    /// Every map up to isomorphism
    Exhaustive,
    /// Uniformly random rotations
    Random,
    /// Connected maps of one genus
    Cellulations,
    /// Alternating diagrams from cellulations
    Diagrams,
}

/// Errors in the input, reported with exit code 2.
struct InputError(String);

impl<E: Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

const BUNDLED_MAPS: [(&str, &str); 5] = [
    ("tb2.map", include_str!("../../../data/tb2.map")),
    ("sl.map", include_str!("../../../data/sl.map")),
    ("sb.map", include_str!("../../../data/sb.map")),
    ("theta.map", include_str!("../../../data/theta.map")),
    ("fig2.map", include_str!("../../../data/fig2.map")),
];

const BUNDLED_DIAGRAMS: [(&str, &str); 3] = [
    ("trefoil.vlk", include_str!("../../../data/trefoil.vlk")),
    ("vtrefoil.vlk", include_str!("../../../data/vtrefoil.vlk")),
    ("torus-alt.vlk", include_str!("../../../data/torus-alt.vlk")),
];

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<EmbeddedSubgraph, InputError> {
    parse_map(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<LinkDiagram, InputError> {
    parse_diagram(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn cellulation(g: &EmbeddedSubgraph) -> Result<&CombinatorialMap, InputError> {
    if g.is_cellulation() {
        Ok(g.host())
    } else {
        Err(InputError("this command needs the graph to be the whole map (every vertex and edge marked)".into()))
    }
}

fn weighting(host: &CombinatorialMap, path: Option<&Path>) -> Result<EdgeWeighting, InputError> {
    match path {
        None => Ok(EdgeWeighting::symbolic(host)),
        Some(p) => Ok(EdgeWeighting::parse(host, &read(p)?)?),
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn poly(&self, name: &str, p: &Poly) -> Outcome {
        if self.json {
            println!("{}", json!({ name: p.to_string() }));
        } else {
            println!("{p}");
        }
        Ok(true)
    }

    fn text(&self, key: &str, text: &str) -> Outcome {
        if self.json {
            println!("{}", json!({ key: text }));
        } else {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
        Ok(true)
    }

    fn terms(&self, terms: &[(String, Poly)]) -> Outcome {
        if self.json {
            let items: Vec<Value> =
                terms.iter().map(|(v, p)| json!({ "subspace": v, "polynomial": p.to_string() })).collect();
            println!("{}", Value::Array(items));
        } else {
            for (v, p) in terms {
                println!("[{v}] : {p}");
            }
        }
        Ok(true)
    }

    fn reports(&self, reports: &[PolynomialReport]) -> Outcome {
        let ok = reports.iter().all(PolynomialReport::all_passed);
        if self.json {
            let items: Vec<Value> = reports.iter().map(report_json).collect();
            println!("{}", json!({ "passed": ok, "reports": items }));
        } else {
            for (i, r) in reports.iter().enumerate() {
                if reports.len() > 1 {
                    if i > 0 {
                        println!();
                    }
                    println!("== {}", r.input);
                }
                println!("{r}");
            }
            if reports.len() > 1 {
                println!("\n{}", if ok { "PASS" } else { "FAIL" });
            }
        }
        Ok(ok)
    }
}

fn report_json(r: &PolynomialReport) -> Value {
    let polys: serde_json::Map<String, Value> =
        r.polynomials.iter().map(|(n, p)| (n.clone(), Value::String(p.to_string()))).collect();
    let verdicts: Vec<Value> = r
        .verdicts
        .iter()
        .map(|v| {
            let witness = v
                .witness
                .as_ref()
                .map(|w| json!({ "mask": w.mask, "detail": w.detail, "host": w.host }));
            json!({ "name": v.name, "passed": v.passed, "witness": witness })
        })
        .collect();
    json!({ "input": r.input, "polynomials": polys, "verdicts": verdicts, "passed": r.all_passed() })
}

fn compute_p(g: &EmbeddedSubgraph, cap: usize, recursive: bool, bruteforce: bool) -> Result<Poly, InputError> {
    let use_recursive = recursive || (!bruteforce && g.num_graph_edges() > cap);
    if use_recursive {
        Ok(p_recursive(g))
    } else {
        Ok(p_bruteforce(g, cap)?)
    }
}

fn check_map(what: Check, name: &str, g: &EmbeddedSubgraph, w: Option<&Path>, cap: usize) -> Result<PolynomialReport, InputError> {
    let mut r = match what {
        Check::Duality => verify_duality(cellulation(g)?, cap)?,
        Check::Special => verify_specializations(cellulation(g)?, cap)?,
        Check::Lemma => verify_lemma_properties(g, cap)?,
        Check::Mduality => {
            let m = cellulation(g)?;
            verify_multivariate_duality(m, &weighting(m, w)?, cap)?
        }
        Check::SubgroupDuality => {
            let full = verify_subgroup_duality(cellulation(g)?, cap)?;
            summarize_masks(full)
        }
        Check::Thistlethwaite | Check::All => unreachable!("handled by the caller"),
    };
    r.input = name.to_string();
    Ok(r)
}

/// Folds the one-verdict-per-subgraph report into a single verdict.
fn summarize_masks(r: PolynomialReport) -> PolynomialReport {
    let count = r.verdicts.len();
    let mut out = PolynomialReport::new(r.input.clone());
    out.polynomials = r.polynomials.clone();
    let name = format!("V(H*) = V(H)^perp for all {count} spanning subgraphs");
    match r.failures().next() {
        None => out.pass(name),
        Some(v) => out.fail(name, v.witness.clone().expect("failures carry witnesses")),
    }
    out
}

fn check_diagram(name: &str, d: &LinkDiagram, cap: usize) -> Result<PolynomialReport, InputError> {
    let mut r = verify_thistlethwaite(d, Shading::A, cap)?;
    let mut other = verify_thistlethwaite(d, Shading::B, cap)?;
    other.polynomials.retain(|(n, _)| n != "K");
    r.merge(other);
    r.input = name.to_string();
    Ok(r)
}

fn verify_all(seed: u64, cap: usize) -> Result<Vec<PolynomialReport>, InputError> {
    let mut reports = Vec::new();
    let map_checks = [Check::Duality, Check::Special, Check::Lemma, Check::Mduality, Check::SubgroupDuality];
    for (name, text) in BUNDLED_MAPS {
        let g = parse_map(text)?;
        let host = EmbeddedSubgraph::full(g.host().clone());
        let mut r = PolynomialReport::new(name);
        for what in map_checks {
            r.merge(check_map(what, name, &host, None, cap)?);
        }
        if g.is_cellulation() {
            r.polynomial("P", p_bruteforce(&g, cap)?);
        } else {
            let p = p_bruteforce(&g, cap)?;
            r.merge(verify_lemma_properties(&g, cap)?);
            r.polynomial("P(marked graph)", p);
        }
        if name == "fig2.map" {
            let p = p_bruteforce(&g, cap)?;
            r.check("two parallel loops give 2 + B + Y", p.to_string() == "2 + B + Y", || {
                surface_tutte::report::Witness { host: text.to_string(), mask: 0, detail: p.to_string() }
            });
        }
        reports.push(r);
    }
    for (name, text) in BUNDLED_DIAGRAMS {
        let d = parse_diagram(text)?;
        if name == "vtrefoil.vlk" {
            // not checkerboard colourable, so only the bracket is reported
            let mut r = PolynomialReport::new(name);
            r.polynomial("K", kauffman(&d, cap)?);
            r.polynomial("J", classical_jones(&d, cap)?);
            reports.push(r);
        } else {
            reports.push(check_diagram(name, &d, cap)?);
        }
    }
    let mut random = PolynomialReport::new(format!("random corpus, seed {seed}"));
    for m in corpus::random_maps(seed, 50, 1..=8) {
        let g = EmbeddedSubgraph::full(m);
        for what in map_checks {
            let r = check_map(what, "", &g, None, cap)?;
            random.verdicts.extend(r.verdicts.into_iter().filter(|v| !v.passed));
        }
    }
    for genus in 1..=2 {
        for d in corpus::alternating_diagrams(seed, 10, genus, 2 * genus..=5) {
            let r = check_diagram("", &d, cap)?;
            random.verdicts.extend(r.verdicts.into_iter().filter(|v| !v.passed));
        }
    }
    if random.all_passed() {
        random.pass("50 random maps and 20 alternating diagrams");
    }
    reports.push(random);
    Ok(reports)
}

fn corpus_text(kind: CorpusKind, count: usize, max_edges: usize, genus: usize, seed: u64) -> Result<Vec<String>, InputError> {
    let maps = match kind {
        CorpusKind::Exhaustive => {
            if max_edges > 5 {
                return Err(InputError("exhaustive corpora are limited to 5 edges".into()));
            }
            corpus::exhaustive(max_edges)
        }
        CorpusKind::Random => corpus::random_maps(seed, count, 1..=max_edges.max(1)),
        CorpusKind::Cellulations | CorpusKind::Diagrams => {
            if max_edges < 2 * genus.max(1) {
                return Err(InputError(format!("genus {genus} needs at least {} edges", 2 * genus.max(1))));
            }
            corpus::random_cellulations(seed, count, genus, 1..=max_edges)
        }
    };
    Ok(match kind {
        CorpusKind::Diagrams => maps
            .iter()
            .map(|m| surface_tutte::links::medial_diagram(m).with_default_orientation().to_vlk())
            .collect(),
        _ => maps.into_iter().map(|m| serialize_map(&EmbeddedSubgraph::full(m))).collect(),
    })
}

fn run(cli: Cli) -> Outcome {
    let out = Output { json: cli.json };
    let cap = cli.cap;
    match cli.command {
        Command::Poly { file, recursive, bruteforce } => {
            out.poly("P", &compute_p(&load_map(&file)?, cap, recursive, bruteforce)?)
        }
        Command::Tutte { file } => out.poly("T", &tutte(&Multigraph::of(&load_map(&file)?), cap)?),
        Command::Br { file } => out.poly("BR", &bollobas_riordan(cellulation(&load_map(&file)?)?, cap)?),
        Command::Pprime { file } => out.poly("P'", &p_prime(cellulation(&load_map(&file)?)?, cap)?),
        Command::Pbar { file, weights, potts } => {
            let g = load_map(&file)?;
            let w = weighting(g.host(), weights.as_deref())?;
            if potts {
                out.poly("Z", &multivariate_tutte(&g, &w, cap)?)
            } else {
                out.poly("Pbar", &p_bar(&g, &w, cap)?)
            }
        }
        Command::Tildep { file } => {
            let t = tilde_p(&load_map(&file)?, cap)?;
            out.terms(&t.terms.iter().map(|(v, p)| (v.to_string(), p.clone())).collect::<Vec<_>>())
        }
        Command::Invariants { file, edges } => {
            let g = load_map(&file)?;
            let ctx = InvariantContext::new(&g);
            let mask = match edges {
                None => surface_tutte::tutte::full_mask(ctx.num_graph_edges()),
                Some(ids) => {
                    let all = g.host().edges();
                    let idx = ids
                        .iter()
                        .map(|&id| {
                            all.iter()
                                .position(|&d| d + 1 == id)
                                .ok_or_else(|| InputError(format!("no edge {id}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    ctx.mask_of(&idx)?
                }
            };
            let i = ctx.invariants(mask);
            if out.json {
                println!(
                    "{}",
                    json!({ "c": i.c, "v": i.v, "e": i.e, "n": i.n, "bc": i.bc, "s": i.s, "s_perp": i.s_perp, "k": i.k, "l": i.l })
                );
            } else {
                println!(
                    "c = {}\nv = {}\ne = {}\nn = {}\nbc = {}\ns = {}\ns_perp = {}\nk = {}\nl = {}",
                    i.c, i.v, i.e, i.n, i.bc, i.s, i.s_perp, i.k, i.l
                );
            }
            Ok(true)
        }
        Command::Dual { file } => {
            let g = load_map(&file)?;
            out.text("map", &serialize_map(&EmbeddedSubgraph::full(g.host().dual())))
        }
        Command::Canon { file } => {
            let code = load_map(&file)?.canonical_code();
            let hex: String = code.iter().map(|b| format!("{b:02x}")).collect();
            out.text("code", &hex)
        }
        Command::Bracket { file, tilde } => {
            let d = load_diagram(&file)?;
            if tilde {
                let t = tilde_kauffman(&d, cap)?;
                out.terms(&t.terms.iter().map(|(v, p)| (v.to_string(), p.clone())).collect::<Vec<_>>())
            } else {
                out.poly("K", &kauffman(&d, cap)?)
            }
        }
        Command::Jones { file, classical } => {
            let d = load_diagram(&file)?;
            if classical {
                out.poly("V", &classical_jones(&d, cap)?)
            } else {
                out.poly("J", &jones(&d, cap)?)
            }
        }
        Command::Tait { file, shading } => {
            let t = tait_graph(&load_diagram(&file)?, shading.into())?;
            out.text("map", &serialize_map(&t.graph))
        }
        Command::Verify { what, file, weights, seed } => {
            if what == Check::All {
                if file.is_some() {
                    return Err(InputError("`verify all` takes no file".into()));
                }
                return out.reports(&verify_all(seed, cap)?);
            }
            let file = file.ok_or_else(|| InputError("missing input file".into()))?;
            let name = file.display().to_string();
            let report = if what == Check::Thistlethwaite {
                check_diagram(&name, &load_diagram(&file)?, cap)?
            } else {
                check_map(what, &name, &load_map(&file)?, weights.as_deref(), cap)?
            };
            out.reports(&[report])
        }
        Command::Corpus { kind, count, max_edges, genus, seed } => {
            let items = corpus_text(kind, count, max_edges, genus, seed)?;
            if out.json {
                println!("{}", Value::from(items));
            } else {
                println!("{}", items.join("---\n").trim_end());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(exit_status(run(cli)))
}

fn exit_status(outcome: Outcome) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use surface_tutte::report::Witness;

    #[test]
    fn failed_report_exits_1() {
        let mut r = PolynomialReport::new("x");
        r.fail("identity", Witness { host: String::new(), mask: 0, detail: String::new() });
        let out = Output { json: true };
        assert_eq!(exit_status(out.reports(&[r])), 1);
        assert_eq!(exit_status(Ok(true)), 0);
        assert_eq!(exit_status(Err(InputError("bad".into()))), 2);
    }
}
