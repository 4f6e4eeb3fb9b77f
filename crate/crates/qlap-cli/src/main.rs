//! `qlap`: spectra, orbits, equivalence brackets, and gap bounds for
//! finite simple graphs.
//!
//! Exit codes: 0 success, 1 input or budget errors, 2 disconnected input
//! where connectivity is required, 3 eigensolver non-convergence,
//! 4 vertex transitivity required but absent.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlap_cli::report;
use qlap_core::{
    automorphism_group_with_budget, bracket, build_laplacian, edge_orbits, eigen_decompose,
    evaluate_bounds, lambda1, load_graph, merge_orientations, vertex_orbits, Closure, Convention,
    Error, Graph, PassOrder, PermutationGroup,
};
use report::{
    EquivReport, FullReport, Meta, OrbitsReport, Output, Payload, SpectrumReport, WitnessReport,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qlap",
    version,
    about = "Normalized Laplacian spectra and symmetry-based gap bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sorted eigenvalues of the normalized Laplacian
    Spectrum(CommonArgs),
    /// Automorphism group order, orbits, and transitivity flags
    Orbits(CommonArgs),
    /// Certified bracket of the k-equivalence classes on paths
    Equiv(CommonArgs),
    /// Classical and improved spectral gap bounds
    Bounds(CommonArgs),
    /// Combined report of all analyses
    Report(CommonArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Directed,
    Unordered,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Directed => Convention::Directed,
            ConventionArg::Unordered => Convention::Unordered,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Graph file: edge list or 0/1 adjacency matrix
    input: PathBuf,

    /// Subgroup index of the equivalence relation
    #[arg(long, default_value_t = 1)]
    k: usize,

    /// Path length for the equivalence bracket
    #[arg(long, default_value_t = 1)]
    alpha: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Eigensolver tolerance on the off-diagonal mass
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,

    /// Root vertex for the shortest-path family
    #[arg(long, default_value_t = 0)]
    root: usize,

    /// Edge-class counting convention
    #[arg(long, value_enum, default_value_t = ConventionArg::Directed)]
    convention: ConventionArg,

    /// Cap on enumerated paths per length
    #[arg(long, default_value_t = 1_000_000)]
    path_cap: usize,

    /// Node budget of the automorphism search (QLAP_BUDGET overrides)
    #[arg(long, default_value_t = 10_000_000)]
    budget: usize,

    /// Cap on the automorphism group order
    #[arg(long, default_value_t = 1_000_000)]
    group_limit: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Spectrum(a) => ("spectrum", a),
        Command::Orbits(a) => ("orbits", a),
        Command::Equiv(a) => ("equiv", a),
        Command::Bounds(a) => ("bounds", a),
        Command::Report(a) => ("report", a),
    };
    match run(name, args) {
        Ok(output) => {
            let rendered = match args.format {
                Format::Text => output.render_text(),
                Format::Json => output.render_json(),
            };
            print!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qlap: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Disconnected { .. } => 2,
        Error::Convergence { .. } => 3,
        Error::NotVertexTransitive => 4,
        _ => 1,
    }
}

fn run(name: &str, args: &CommonArgs) -> Result<Output, Error> {
    let invalid = |message: String| Error::Parse { line: 0, message };
    if args.k == 0 {
        return Err(invalid("k must be at least 1".into()));
    }
    if args.alpha > 2 * args.k + 1 {
        return Err(invalid(format!(
            "alpha {} exceeds the transitivity window 2k+1 = {}",
            args.alpha,
            2 * args.k + 1
        )));
    }
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(invalid("tol must be positive".into()));
    }
    if args.path_cap == 0 || args.budget == 0 || args.group_limit == 0 {
        return Err(invalid("caps and budgets must be positive".into()));
    }
    let budget = match std::env::var("QLAP_BUDGET") {
        Ok(s) => s.parse().map_err(|_| Error::Parse {
            line: 0,
            message: format!("QLAP_BUDGET must be an integer, got {s:?}"),
        })?,
        Err(_) => args.budget,
    };
    let source = std::fs::read_to_string(&args.input).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", args.input.display()),
    })?;
    let g = load_graph(&source)?;

    let meta = Meta {
        tool: "qlap".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: name.into(),
        input: args.input.display().to_string(),
        k: args.k,
        alpha: args.alpha,
        tol: args.tol,
        root: args.root,
        convention: args.convention.into(),
        path_cap: args.path_cap,
        budget,
        group_limit: args.group_limit,
    };

    let payload = match name {
        "spectrum" => Payload::Spectrum(spectrum_report(&g, args.tol)?),
        "orbits" => Payload::Orbits(orbits_report(&g, budget, args.group_limit)?),
        "equiv" => {
            let group = automorphism_group_with_budget(&g, args.group_limit, budget)?;
            Payload::Equiv(equiv_report(&g, &group, args.k, args.alpha, args.path_cap)?)
        }
        "bounds" => {
            let group = automorphism_group_with_budget(&g, args.group_limit, budget)?;
            let spectral = spectrum_of(&g, args.tol)?;
            Payload::Bounds(Box::new(evaluate_bounds(
                &g,
                &group,
                args.k,
                &spectral,
                args.root,
                args.convention.into(),
                args.path_cap,
            )?))
        }
        _ => {
            let spectrum = spectrum_report(&g, args.tol)?;
            let group = automorphism_group_with_budget(&g, args.group_limit, budget)?;
            let orbits = orbits_report(&g, budget, args.group_limit)?;
            let equiv = equiv_report(&g, &group, args.k, args.alpha, args.path_cap)?;
            let bounds = if vertex_orbits(&group).block_count() == 1 {
                let spectral = spectrum_of(&g, args.tol)?;
                Some(evaluate_bounds(
                    &g,
                    &group,
                    args.k,
                    &spectral,
                    args.root,
                    args.convention.into(),
                    args.path_cap,
                )?)
            } else {
                None
            };
            Payload::Report(Box::new(FullReport {
                spectrum,
                orbits,
                equiv,
                bounds,
            }))
        }
    };

    Ok(Output { meta, payload })
}

fn spectrum_of(g: &Graph, tol: f64) -> Result<qlap_core::SpectralResult, Error> {
    if !g.is_connected() {
        let unreachable = g
            .bfs_distances(0)
            .iter()
            .position(Option::is_none)
            .unwrap_or(0);
        return Err(Error::Disconnected {
            from: 0,
            unreachable,
        });
    }
    eigen_decompose(&build_laplacian(g)?, tol)
}

fn spectrum_report(g: &Graph, tol: f64) -> Result<SpectrumReport, Error> {
    let s = spectrum_of(g, tol)?;
    let gap = lambda1(&s);
    if gap < 10.0 * tol {
        // Connectivity is checked up front, so this flags numerical trouble.
        eprintln!("qlap: warning: lambda1 = {gap:e} is within tolerance of zero");
    }
    Ok(SpectrumReport {
        n: s.n,
        lambda1: gap,
        eigenvalues: s.eigenvalues,
        residual: s.residual,
    })
}

fn orbits_report(g: &Graph, budget: usize, group_limit: usize) -> Result<OrbitsReport, Error> {
    let group = automorphism_group_with_budget(g, group_limit, budget)?;
    let vertices = vertex_orbits(&group);
    let directed = g.enumerate_paths(1, usize::MAX)?;
    let arcs = edge_orbits(g, &group)?;
    let merged = merge_orientations(&directed, &arcs);
    let edge_orbit_blocks = merged
        .blocks
        .iter()
        .map(|block| {
            let mut edges: Vec<[usize; 2]> = block
                .iter()
                .filter_map(|&i| {
                    let v = directed[i].vertices();
                    (v[0] < v[1]).then(|| [v[0], v[1]])
                })
                .collect();
            edges.sort_unstable();
            edges
        })
        .collect();
    Ok(OrbitsReport {
        aut_order: group.order(),
        generator_count: group.generators.len(),
        vertex_transitive: vertices.block_count() == 1,
        edge_transitive: merged.block_count() == 1,
        vertex_orbits: vertices.blocks,
        directed_edge_classes: arcs.block_count(),
        edge_classes: merged.block_count(),
        edge_orbit_blocks,
    })
}

fn render_path(p: &qlap_core::Path) -> String {
    p.vertices()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("-")
}

fn equiv_report(
    g: &Graph,
    group: &PermutationGroup,
    k: usize,
    alpha: usize,
    cap: usize,
) -> Result<EquivReport, Error> {
    let b = bracket(g, group, k, alpha, cap)?;
    let closure = Closure::compute(g, k, alpha, cap, PassOrder::Forward)?;
    let blocks_as_strings = |p: &qlap_core::Partition| -> Vec<Vec<String>> {
        p.blocks
            .iter()
            .map(|block| block.iter().map(|&i| render_path(&b.paths[i])).collect())
            .collect()
    };

    // One witness per pair of distinct upper blocks, capped for readability.
    let mut witnesses = Vec::new();
    let reps: Vec<usize> = b.upper.blocks.iter().map(|block| block[0]).collect();
    'outer: for (bi, &i) in reps.iter().enumerate() {
        for &j in reps.iter().skip(bi + 1) {
            if witnesses.len() == 20 {
                break 'outer;
            }
            if b.paths[i].len() != b.paths[j].len() {
                continue;
            }
            let w = closure.witness(g, &b.lower, alpha, i, j);
            witnesses.push(WitnessReport {
                p: render_path(&w.p),
                q: render_path(&w.q),
                status: w.status,
                killing_rule: w.killing_rule,
            });
        }
    }

    Ok(EquivReport {
        k,
        alpha,
        ground_size: b.paths.len(),
        exact: b.exact,
        lower_classes: b.lower.block_count(),
        upper_classes: b.upper.block_count(),
        lower_blocks: blocks_as_strings(&b.lower),
        upper_blocks: blocks_as_strings(&b.upper),
        witnesses,
    })
}
