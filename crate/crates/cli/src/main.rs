//! `jones` — certifying feedback-vertex-set vs cycle-packing solver for based
//! planar graphs.
//!
//! Exit codes are stable API: 0 ok, 1 parse or bad flags, 2 precondition
//! violated, 3 internal invariant violated (dump written), 4 certificate
//! invalid.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Display;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jones_core::embedding::{PlanarEmbeddedGraph, VertexId};
use jones_core::format::{
    parse_certificate, parse_graph, serialize_certificate, serialize_graph,
};
use jones_core::generators::{generate, Family, GenSpec};
use jones_core::oracle::{oracle_all, oracle_cp, oracle_fvs, OracleConfig};
use jones_core::recognition::{find_base_faces, is_based_planar, is_halin, AdjacencyMode};
use jones_core::solver::{solve_with_mode, verify_certificate, SolveError, Verdict, Violation};
use jones_core::triangles::{all_good_triangles, claim1_find_good_triangle, find_good_triangle};

const EXIT_OK: u8 = 0;
const EXIT_PARSE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_INVARIANT: u8 = 3;
const EXIT_INVALID_CERT: u8 = 4;

#[derive(Parser)]
#[command(name = "jones", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Adjacency {
    Edge,
    Vertex,
}

impl From<Adjacency> for AdjacencyMode {
    fn from(a: Adjacency) -> Self {
        match a {
            Adjacency::Edge => AdjacencyMode::EdgeSharing,
            Adjacency::Vertex => AdjacencyMode::VertexSharing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Halin,
    Wheel,
    Fan,
    Outerplanar,
    RandomBased,
    RandomBasedMin3,
    /// Hamiltonian planar stress family; based planar only for n = 3.
    Prism,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Halin => Family::Halin,
            FamilyArg::Wheel => Family::Wheel,
            FamilyArg::Fan => Family::Fan,
            FamilyArg::Outerplanar => Family::Outerplanar,
            FamilyArg::RandomBased => Family::RandomBased,
            FamilyArg::RandomBasedMin3 => Family::RandomBasedMin3,
            FamilyArg::Prism => Family::Prism,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve: emit a certificate (F, C) with |F| <= 2|C| on stdout.
    Solve {
        path: PathBuf,
        /// Face adjacency used by the based-planarity precondition.
        #[arg(long, value_enum, default_value = "edge")]
        adjacency: Adjacency,
        /// Suppress progress notes on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Verify a certificate file against a graph file.
    Verify { graph: PathBuf, cert: PathBuf },
    /// Report recognition results: validity, base faces, Halin witness.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "edge")]
        adjacency: Adjacency,
    },
    /// Exact minimum fvs / maximum cp / maximum fp (small graphs only;
    /// JONES_ORACLE_LIMIT overrides the vertex cap).
    Oracle {
        path: PathBuf,
        /// Allow the outer face boundary in packings.
        #[arg(long)]
        include_outer: bool,
    },
    /// Generate a corpus graph to stdout or a file.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Size parameter: internal nodes for halin, rim/path/cycle size
        /// otherwise.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Debug listing of good triangles.
    Triangles {
        path: PathBuf,
        /// Report the smallest good triangle avoiding this vertex.
        #[arg(long)]
        avoid: Option<u32>,
        /// Also run the constructive longest-path search and cross-check it.
        #[arg(long)]
        claim1: bool,
    },
    /// Generate a corpus and run solve + verify + oracle cross-checks.
    Stress {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendering but our exit-code contract (1, not 2).
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { EXIT_OK });
        }
    };
    ExitCode::from(run(cli.command))
}

fn fail(code: u8, msg: impl Display) -> u8 {
    eprintln!("error: {msg}");
    code
}

fn read_graph(path: &Path) -> Result<PlanarEmbeddedGraph, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Writes an invariant-violation dump next to the working directory and
/// returns its path.
fn write_dump(dump: &str) -> PathBuf {
    let mut hasher = DefaultHasher::new();
    dump.hash(&mut hasher);
    let path = PathBuf::from(format!("jones_dump_{:016x}.txt", hasher.finish()));
    let _ = std::fs::write(&path, dump);
    path
}

fn run(cmd: Command) -> u8 {
    match cmd {
        Command::Solve {
            path,
            adjacency,
            quiet,
        } => cmd_solve(&path, adjacency.into(), quiet),
        Command::Verify { graph, cert } => cmd_verify(&graph, &cert),
        Command::Check { path, adjacency } => cmd_check(&path, adjacency.into()),
        Command::Oracle {
            path,
            include_outer,
        } => cmd_oracle(&path, include_outer),
        Command::Gen {
            family,
            n,
            seed,
            out,
        } => cmd_gen(family.into(), n, seed, out.as_deref()),
        Command::Triangles {
            path,
            avoid,
            claim1,
        } => cmd_triangles(&path, avoid.map(VertexId), claim1),
        Command::Stress {
            family,
            n_max,
            iters,
            seed,
        } => cmd_stress(family, n_max, iters, seed),
    }
}

fn cmd_solve(path: &Path, mode: AdjacencyMode, quiet: bool) -> u8 {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match solve_with_mode(&g, mode) {
        Ok(cert) => {
            print!("{}", serialize_certificate(&cert));
            if !quiet {
                eprintln!(
                    "ok: |F| = {} <= 2|C| = {}",
                    cert.fvs.len(),
                    2 * cert.packing.len()
                );
            }
            EXIT_OK
        }
        Err(SolveError::NotBasedPlanar) => fail(
            EXIT_PRECONDITION,
            "input is not based planar with the outer face as base face",
        ),
        Err(SolveError::InvariantViolation { message, dump }) => {
            let dump_path = write_dump(&dump);
            fail(
                EXIT_INVARIANT,
                format!("{message} (dump: {})", dump_path.display()),
            )
        }
        Err(e) => fail(EXIT_PRECONDITION, e),
    }
}

fn cmd_verify(graph: &Path, cert: &Path) -> u8 {
    let g = match read_graph(graph) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let text = match std::fs::read_to_string(cert) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", cert.display())),
    };
    let parsed = match parse_certificate(&text) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", cert.display())),
    };
    let mut violations: Vec<String> = Vec::new();
    if parsed.stated_fvs_size != parsed.cert.fvs.len()
        || parsed.stated_packing_size != parsed.cert.packing.len()
    {
        violations.push(format!(
            "bound line claims {} <= 2*{}, lists have {} and {}",
            parsed.stated_fvs_size,
            parsed.stated_packing_size,
            parsed.cert.fvs.len(),
            parsed.cert.packing.len()
        ));
    }
    match verify_certificate(&g, &parsed.cert) {
        Verdict::Valid if violations.is_empty() => {
            println!("valid");
            EXIT_OK
        }
        verdict => {
            for v in verdict.violations() {
                violations.push(v.to_string());
            }
            for v in &violations {
                eprintln!("violation: {v}");
            }
            EXIT_INVALID_CERT
        }
    }
}

fn cmd_check(path: &Path, mode: AdjacencyMode) -> u8 {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let faces = g.trace_faces().expect("parsed graph is valid");
    println!(
        "vertices: {}  edges: {}  faces: {}",
        g.vertex_count(),
        g.edge_count(),
        faces.len()
    );
    let base = find_base_faces(&faces, mode);
    println!("base faces: {base:?}");
    let based = is_based_planar(&g, mode).expect("valid graph");
    println!("based planar (outer face is base): {based}");
    match is_halin(&g).expect("valid graph") {
        Some(w) => {
            let cycle: Vec<u32> = w.cycle.iter().map(|v| v.0).collect();
            println!("halin: true  leaf cycle: {cycle:?}");
        }
        None => println!("halin: false"),
    }
    EXIT_OK
}

fn cmd_oracle(path: &Path, include_outer: bool) -> u8 {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let cfg = OracleConfig::from_env();
    match oracle_all(&g, !include_outer, &cfg) {
        Ok(res) if res.n_limit_hit => fail(
            EXIT_PRECONDITION,
            format!(
                "graph has {} vertices, oracle limit is {} (JONES_ORACLE_LIMIT)",
                g.vertex_count(),
                cfg.vertex_limit
            ),
        ),
        Ok(res) => {
            let (fvs, fvs_w) = res.fvs_min.expect("within limit");
            let (cp, cp_w) = res.cp_max.expect("within limit");
            let (fp, fp_w) = res.fp_max.expect("within limit");
            let ids: Vec<u32> = fvs_w.iter().map(|v| v.0).collect();
            println!("fvs: {fvs}  witness: {ids:?}");
            println!("cp: {cp}  witness: {:?}", cycles_as_ids(&cp_w));
            println!("fp: {fp}  witness: {:?}", cycles_as_ids(&fp_w));
            println!("fvs <= 2*cp: {}", fvs <= 2 * cp);
            EXIT_OK
        }
        Err(e) => fail(EXIT_PRECONDITION, e),
    }
}

fn cycles_as_ids(cycles: &[Vec<VertexId>]) -> Vec<Vec<u32>> {
    cycles
        .iter()
        .map(|c| c.iter().map(|v| v.0).collect())
        .collect()
}

fn cmd_gen(family: Family, n: usize, seed: u64, out: Option<&Path>) -> u8 {
    let spec = GenSpec { family, n, seed };
    match generate(&spec) {
        Ok(g) => {
            let text = serialize_graph(&g);
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        return fail(EXIT_PARSE, format!("{}: {e}", path.display()));
                    }
                }
                None => print!("{text}"),
            }
            EXIT_OK
        }
        Err(e) => fail(EXIT_PRECONDITION, e),
    }
}

fn cmd_triangles(path: &Path, avoid: Option<VertexId>, claim1: bool) -> u8 {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let all = match all_good_triangles(&g) {
        Ok(all) => all,
        Err(e) => return fail(EXIT_PRECONDITION, e),
    };
    println!("good triangles: {}", all.len());
    for t in &all {
        println!("  ({}, {}, {})", t.x, t.y, t.z);
    }
    match find_good_triangle(&g, avoid) {
        Ok(t) => {
            let label = avoid.map(|u| u.to_string()).unwrap_or_else(|| "-".into());
            println!("smallest (avoiding {label}): ({}, {}, {})", t.x, t.y, t.z);
        }
        Err(e) => return fail(EXIT_PRECONDITION, format!("{e}")),
    }
    if claim1 {
        match claim1_find_good_triangle(&g, avoid) {
            Ok(t) => {
                let agrees = all.contains(&t);
                println!(
                    "constructive: ({}, {}, {})  in scan: {agrees}",
                    t.x, t.y, t.z
                );
                if !agrees {
                    return fail(EXIT_INVARIANT, "constructive result not in exhaustive scan");
                }
            }
            Err(e) => return fail(EXIT_PRECONDITION, e),
        }
    }
    EXIT_OK
}

struct StressReport {
    generated: usize,
    solved: usize,
    oracle_checked: usize,
    oracle_skipped: usize,
    failures: Vec<String>,
}

fn cmd_stress(family: FamilyArg, n_max: usize, iters: usize, seed: u64) -> u8 {
    let fam: Family = family.into();
    let mut report = StressReport {
        generated: 0,
        solved: 0,
        oracle_checked: 0,
        oracle_skipped: 0,
        failures: Vec::new(),
    };
    let cfg = OracleConfig::from_env();
    let sandwich_cap = cfg.vertex_limit.min(14);

    for i in 0..iters {
        let n = stress_size(fam, n_max, i);
        let spec = GenSpec {
            family: fam,
            n,
            seed: seed.wrapping_mul(1_000_003).wrapping_add(i as u64),
        };
        let g = match generate(&spec) {
            Ok(g) => g,
            Err(e) => {
                report.failures.push(format!("gen {spec:?}: {e}"));
                continue;
            }
        };
        report.generated += 1;
        if let Err(e) = g.validate() {
            report
                .failures
                .push(dump_failure(&g, &format!("validator: {e}")));
            continue;
        }
        let based = is_based_planar(&g, AdjacencyMode::EdgeSharing).expect("valid graph");
        if based {
            match solve_with_mode(&g, AdjacencyMode::EdgeSharing) {
                Ok(cert) => {
                    report.solved += 1;
                    let verdict = verify_certificate(&g, &cert);
                    if let Verdict::Invalid(vs) = &verdict {
                        report.failures.push(dump_failure(
                            &g,
                            &format!("verify: {}", join_violations(vs)),
                        ));
                        continue;
                    }
                    if g.vertex_count() <= sandwich_cap {
                        match sandwich_check(&g, cert.fvs.len(), cert.packing.len(), &cfg) {
                            Ok(()) => report.oracle_checked += 1,
                            Err(msg) => report.failures.push(dump_failure(&g, &msg)),
                        }
                    } else {
                        report.oracle_skipped += 1;
                    }
                }
                Err(e) => {
                    report.failures.push(dump_failure(&g, &format!("solve: {e}")));
                }
            }
        } else if g.vertex_count() <= sandwich_cap {
            // Experimental families: probe the inequality with oracles only.
            match sandwich_check(&g, 0, 0, &cfg) {
                Ok(()) => report.oracle_checked += 1,
                Err(msg) => report.failures.push(dump_failure(&g, &msg)),
            }
        } else {
            report.oracle_skipped += 1;
        }
    }

    println!(
        "stress: generated {}  solved {}  oracle-checked {}  oracle-skipped {}  failures {}",
        report.generated,
        report.solved,
        report.oracle_checked,
        report.oracle_skipped,
        report.failures.len()
    );
    for f in &report.failures {
        eprintln!("failure: {f}");
    }
    if report.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    }
}

fn stress_size(family: Family, n_max: usize, i: usize) -> usize {
    match family {
        Family::Halin => 1 + i % (n_max / 4).max(1),
        Family::Fan => 2 + i % (n_max - 1).max(1),
        _ => 3 + i % (n_max.saturating_sub(2)).max(1),
    }
}

/// Checks fvs* <= solver_fvs <= 2*solver_cp <= 2*cp* (solver sizes of 0 mean
/// oracle-only: just the conjecture instance fvs* <= 2*cp*).
fn sandwich_check(
    g: &PlanarEmbeddedGraph,
    solver_fvs: usize,
    solver_cp: usize,
    cfg: &OracleConfig,
) -> Result<(), String> {
    let (fvs_exact, _) = oracle_fvs(g, cfg).map_err(|e| e.to_string())?;
    let (cp_exact, _) = oracle_cp(g, true, cfg).map_err(|e| e.to_string())?;
    if solver_cp > 0 {
        if fvs_exact > solver_fvs {
            return Err(format!("solver fvs {solver_fvs} below exact {fvs_exact}"));
        }
        if solver_fvs > 2 * solver_cp {
            return Err(format!("bound violated: {solver_fvs} > 2*{solver_cp}"));
        }
        if solver_cp > cp_exact {
            return Err(format!("solver packing {solver_cp} above exact {cp_exact}"));
        }
    }
    if fvs_exact > 2 * cp_exact {
        return Err(format!(
            "conjecture violated: fvs {fvs_exact} > 2*cp {cp_exact}"
        ));
    }
    Ok(())
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn dump_failure(g: &PlanarEmbeddedGraph, msg: &str) -> String {
    let path = write_dump(&serialize_graph(g));
    format!("{msg} (dump: {})", path.display())
}
