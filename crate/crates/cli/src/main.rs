use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hamtet::ccplab::{
    blow_up, find_ham_cycle, find_ham_path, gadget38, k4_counterexample, lower_bound_family,
    pulling_tetrahedralization, EmbeddedCubic, HamSearch, Pulling,
};
use hamtet::corpus;
use hamtet::format::{parse_mesh, parse_points, write_mesh, write_points};
use hamtet::graph::{is_three_connected, parse_graph_text, trace_faces, write_graph_text};
use hamtet::pipeline::hamiltonian_tetrahedralization;
use hamtet::verify::{verify_certificate, verify_mesh, verify_mesh_with_oracle, VerifyReport};
use hamtet::{Error, Point3, TetMesh};

#[derive(Parser)]
#[command(
    name = "hamtet",
    version,
    about = "Hamiltonian tetrahedralizations and cubic planar graph tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    Off,
    Fast,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Hamiltonian tetrahedralization of a point file.
    Tetra {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "fast")]
        verify: VerifyLevel,
    },
    /// Check a mesh file against its point file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        verify: VerifyLevel,
    },
    /// Pulling tetrahedralization with a Hamiltonian path, for points in convex position.
    Pulling {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "fast")]
        verify: VerifyLevel,
    },
    /// Cubic planar graph operations.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Write a seeded point set.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Ball,
    Sphere,
    Octahedron,
    Icosahedron,
    /// Icosahedron plus degree-3 vertices and interior points, `n` of each.
    Forced,
}

#[derive(Subcommand)]
enum GraphOp {
    /// Replace vertex `vertex` of one graph by a copy of another.
    Blowup {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "with")]
        with: PathBuf,
        #[arg(long)]
        vertex: usize,
        /// Vertex of the inserted graph that is removed.
        #[arg(long, default_value_t = 0)]
        at: usize,
        /// Rotation slot of the first attachment neighbour.
        #[arg(long, default_value_t = 0)]
        face: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// K4 with every vertex blown up by the bundled 38-vertex gadget (or `--gadget`).
    Counterexample {
        #[arg(long)]
        gadget: Option<PathBuf>,
        /// Blow up this graph instead of K4.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a Hamiltonian cycle (or path).
    Hamsearch {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        path: bool,
    },
    /// List the faces traced from the rotation system.
    Faces {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check that a graph is cubic, 3-connected and planar.
    Check3ccp {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_rejection() { 2 } else { 1 },
            msg: e.to_string(),
        }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| fail(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn in_context(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.msg = format!("{}: {}", path.display(), f.msg);
    f
}

fn read_points(path: &Path) -> Result<Vec<Point3>, Failure> {
    parse_points(&read(path)?).map_err(|e| in_context(path, e))
}

fn read_graph(path: &Path) -> Result<EmbeddedCubic, Failure> {
    let file = parse_graph_text(&read(path)?).map_err(|e| in_context(path, e))?;
    let mut g = EmbeddedCubic::new(file.graph).map_err(|e| in_context(path, e))?;
    if let Some(c) = file.copies {
        g.copies = c.into_iter().map(Some).collect();
    }
    Ok(g)
}

fn check(
    points: &[Point3],
    mesh: &TetMesh,
    cert: Option<&hamtet::pipeline::HamCertificate>,
    level: VerifyLevel,
) -> Option<VerifyReport> {
    let report = match level {
        VerifyLevel::Off => return None,
        VerifyLevel::Fast => verify_mesh(points, mesh),
        VerifyLevel::Oracle => verify_mesh_with_oracle(points, mesh),
    };
    Some(match cert {
        Some(c) => report.with_certificate(&verify_certificate(mesh, c)),
        None => report,
    })
}

fn require_ok(report: Option<VerifyReport>) -> CmdResult {
    match report {
        Some(r) if !r.all_ok() => Err(fail(1, format!("verification failed\n{r}"))),
        _ => Ok(()),
    }
}

fn cmd_tetra(input: &Path, out: Option<&Path>, level: VerifyLevel) -> CmdResult {
    let points = read_points(input)?;
    let t = hamiltonian_tetrahedralization(&points)?;
    require_ok(check(&points, &t.mesh, Some(&t.certificate), level))?;
    emit(out, &write_mesh(&t.mesh, Some(&t.certificate), Some(&t.stats)))?;
    if out.is_some() {
        let s = &t.stats;
        println!(
            "tets {} steiner_count {} bound {} m {} m_prime {} certificate {}",
            t.mesh.num_live(),
            s.steiner_count,
            s.steiner_bound(),
            s.m,
            s.m_prime,
            t.certificate.kind.as_str()
        );
    }
    Ok(())
}

fn cmd_verify(input: &Path, mesh_path: &Path, level: VerifyLevel) -> CmdResult {
    let points = read_points(input)?;
    let file = parse_mesh(&read(mesh_path)?).map_err(|e| in_context(mesh_path, e))?;
    let level = if level == VerifyLevel::Off {
        VerifyLevel::Fast
    } else {
        level
    };
    let report = check(&points, &file.mesh, file.certificate.as_ref(), level).unwrap();
    print!("{report}");
    if report.all_ok() {
        Ok(())
    } else {
        Err(fail(1, "verification failed"))
    }
}

fn cmd_pulling(input: &Path, out: Option<&Path>, budget: u64, level: VerifyLevel) -> CmdResult {
    let points = read_points(input)?;
    match pulling_tetrahedralization(&points, budget)? {
        Pulling::Success {
            mesh,
            certificate,
            apex,
        } => {
            require_ok(check(&points, &mesh, Some(&certificate), level))?;
            emit(out, &write_mesh(&mesh, Some(&certificate), None))?;
            if out.is_some() {
                println!("apex {apex} tets {} certificate path", mesh.num_live());
            }
            Ok(())
        }
        Pulling::NoCycle(HamSearch::BudgetExhausted) => Err(fail(1, "hull dual search: budget-exhausted")),
        Pulling::NoCycle(_) => Err(fail(1, "hull dual search: none (exhaustive)")),
    }
}

fn summarize(g: &EmbeddedCubic) -> Result<String, Failure> {
    let faces = trace_faces(&g.rot)?.len();
    Ok(format!(
        "vertices {} edges {} faces {faces} euler {}",
        g.num_vertices(),
        g.graph().num_edges(),
        g.rot.euler_characteristic()?
    ))
}

fn emit_graph(g: &EmbeddedCubic, out: Option<&Path>) -> CmdResult {
    let labels = g.copy_labels();
    emit(out, &write_graph_text(&g.rot, labels.as_deref()))?;
    if out.is_some() {
        println!("{}", summarize(g)?);
    }
    Ok(())
}

fn cmd_graph(op: &GraphOp) -> CmdResult {
    match op {
        GraphOp::Blowup {
            input,
            with,
            vertex,
            at,
            face,
            out,
        } => {
            let g = read_graph(input)?;
            let h = read_graph(with)?;
            let copy = g.copies.iter().flatten().max().map_or(0, |c| c + 1);
            emit_graph(&blow_up(&g, *vertex, &h, *at, *face, copy)?, out.as_deref())
        }
        GraphOp::Counterexample { gadget, base, out } => {
            let h = match gadget {
                Some(p) => read_graph(p)?,
                None => gadget38(),
            };
            let g = match base {
                Some(p) => lower_bound_family(&read_graph(p)?, &h)?,
                None => k4_counterexample(&h)?,
            };
            emit_graph(&g, out.as_deref())
        }
        GraphOp::Hamsearch { input, budget, path } => {
            let g = match input {
                Some(p) => read_graph(p)?,
                None => gadget38(),
            };
            let result = if *path {
                find_ham_path(g.graph(), *budget)
            } else {
                find_ham_cycle(g.graph(), *budget)
            };
            match result {
                HamSearch::Found(c) => {
                    let ids: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    println!("{}: {}", if *path { "path" } else { "cycle" }, ids.join(" "));
                }
                HamSearch::Absent => println!("none (exhaustive)"),
                HamSearch::BudgetExhausted => println!("budget-exhausted"),
            }
            Ok(())
        }
        GraphOp::Faces { input } => {
            let g = read_graph(input)?;
            let faces = trace_faces(&g.rot)?;
            println!("faces {}", faces.len());
            for f in faces {
                let ids: Vec<String> = f.iter().map(|x| x.to_string()).collect();
                println!("{}", ids.join(" "));
            }
            Ok(())
        }
        GraphOp::Check3ccp { input } => {
            let file = parse_graph_text(&read(input)?).map_err(|e| in_context(input, e))?;
            let g = file.graph.graph();
            let cubic = g.is_cubic();
            let connected = is_three_connected(g);
            let euler = file.graph.euler_characteristic().ok();
            let mark = |b: bool| if b { "yes" } else { "no" };
            println!("cubic: {}", mark(cubic));
            println!("3-connected: {}", mark(connected));
            match euler {
                Some(e) => println!("euler: {} ({e})", mark(e == 2)),
                None => println!("euler: no (rotation system does not close)"),
            }
            if cubic && connected && euler == Some(2) {
                Ok(())
            } else {
                Err(fail(1, "not a 3-connected cubic planar graph"))
            }
        }
    }
}

fn cmd_gen(kind: GenKind, n: usize, seed: u64, out: Option<&Path>) -> CmdResult {
    let points = match kind {
        GenKind::Ball => corpus::ball_points(n, seed),
        GenKind::Sphere => corpus::sphere_points(n, seed),
        GenKind::Octahedron => corpus::octahedron(),
        GenKind::Icosahedron => corpus::icosahedron(seed),
        GenKind::Forced => corpus::forced_instance(seed, n, n)?,
    };
    emit(out, &write_points(&points))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Tetra { input, out, verify } => cmd_tetra(&input, out.as_deref(), verify),
        Command::Verify { input, mesh, verify } => cmd_verify(&input, &mesh, verify),
        Command::Pulling {
            input,
            out,
            budget,
            verify,
        } => cmd_pulling(&input, out.as_deref(), budget, verify),
        Command::Graph { op } => cmd_graph(&op),
        Command::Gen { kind, n, seed, out } => cmd_gen(kind, n, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
