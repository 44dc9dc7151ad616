//! Command-line surface over the graphspace toolkit: graph algebra, norms
//! and distances, pattern indicators, derivatives, and density tools, with
//! deterministic machine-readable output. Rationals are printed exactly;
//! `--float` adds a decimal approximation column.

mod spec;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphspace::calculus::{
    critical_point_check, derivative, distance_derivative, probes_beyond_twist,
    translated_derivative, twisted_derivative, DerivativeConfig, DerivativeStatus, GraphFn,
    LabelTwist, ProbeFamily,
};
use graphspace::density::{
    accumulation_set, construct_oscillating, construct_target, limiting_hom_density, trajectory,
    DensityTrajectory,
};
use graphspace::graph::{complement, intersect, sym_diff, Graph, GraphClass};
use graphspace::homind::{
    interpolate, lipschitz_constant, mobius_expand, t_ind, t_inj, ExpandDirection, IndicatorFn,
};
use graphspace::json;
use graphspace::labeling::EdgeLabeling;
use graphspace::metrics::{dist, mixed_dist, phase_check, truncate, weak_norm, LabelSet};
use graphspace::rat::{rat_to_f64, DyadicInterval, Rat};
use serde_json::{json as jval, Value};
use spec::{
    parse_fn_spec, parse_graph_spec, parse_labels_csv, parse_pattern_spec, parse_rat_arg,
    parse_twist, parse_weight_spec, parse_zeta_spec, CliError,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "graphspace",
    version,
    about = "exact arithmetic on countable labelled graph space"
)]
struct Cli {
    /// Output format; density subcommands also honor --csv
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Evaluation depth for oracle scans and interval tails
    #[arg(long, global = true, env = "GRAPHSPACE_DEPTH", default_value_t = 64)]
    depth: u64,
    /// Edge-labelling twist as disjoint label cycles, e.g. "(1 2)(5 7 9)"
    #[arg(long, global = true)]
    twist: Option<String>,
    /// Append decimal approximations to exact rationals
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, classify, and combine graphs
    Graph(GraphCmd),
    /// Weak norm ||G||_a
    Norm(NormCmd),
    /// Weighted distance between two graphs
    Dist(DistCmd),
    /// Truncate a graph to a finite approximant with certified residual
    Truncate(TruncateCmd),
    /// Injectivity/collision analysis of the weak norm at a base
    Phase(PhaseCmd),
    /// Pattern indicators, lattice expansions, interpolation
    Hom(HomCmd),
    /// Difference-quotient derivatives and their reports
    Derive(DeriveCmd),
    /// Edge-density trajectories and constructions
    Density(DensityCmd),
}

#[derive(Args)]
struct GraphCmd {
    #[command(subcommand)]
    action: GraphAction,
}

#[derive(Subcommand)]
enum GraphAction {
    /// Normalize a graph spec to canonical JSON
    Parse {
        #[arg(long)]
        graph: String,
    },
    /// Combine two graphs
    Op {
        #[arg(long, value_enum)]
        op: GraphOp,
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphOp {
    Symdiff,
    Intersect,
    Complement,
}

#[derive(Args)]
struct NormCmd {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value = "2")]
    a: String,
}

#[derive(Args)]
struct DistCmd {
    #[arg(long)]
    g1: String,
    #[arg(long)]
    g2: String,
    #[arg(long, default_value = "geom2")]
    phi: String,
    /// Mixed norm: labels carrying the summable weight (the complement
    /// carries the locally constant norm)
    #[arg(long)]
    i0: Option<String>,
    /// Mixed norm with a cofinite weight part: labels excluded from it
    #[arg(long, conflicts_with = "i0")]
    i0_missing: Option<String>,
    /// Locally constant norm for the complement part of a mixed norm
    #[arg(long, default_value = "zeta2")]
    zeta: String,
}

#[derive(Args)]
struct TruncateCmd {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value = "2")]
    a: String,
    #[arg(long)]
    epsilon: String,
}

#[derive(Args)]
struct PhaseCmd {
    #[arg(long)]
    a: String,
    #[arg(long, default_value_t = 10)]
    trials: u32,
}

#[derive(Args)]
struct HomCmd {
    #[command(subcommand)]
    action: HomAction,
}

#[derive(Subcommand)]
enum HomAction {
    /// Subgraph indicator t_inj(H, G)
    Inj {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: String,
    },
    /// Induced-subgraph indicator t_ind(H, G)
    Ind {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: String,
    },
    /// Expand one indicator flavor into the other over the supergraph lattice
    Mobius {
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value_t = Direction::IndFromInj)]
        direction: Direction,
    },
    /// Sharp Lipschitz constant of a two-sided indicator
    Lipschitz {
        #[arg(long, default_value = "")]
        i0: String,
        #[arg(long, default_value = "")]
        i1: String,
        #[arg(long, default_value = "geom2")]
        phi: String,
    },
    /// Indicator combination through prescribed (graph, value) points
    Interpolate {
        /// JSON array of {"graph": ..., "value": "p/q"}
        #[arg(long)]
        points: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    IndFromInj,
    InjFromInd,
}

#[derive(Args)]
struct DeriveCmd {
    /// Function spec: `encode | dist:<graph>:<weight> | zeta<p> | indicator:<i0>;<i1>`
    #[arg(long = "fn")]
    function: String,
    /// Query graph
    #[arg(long)]
    at: String,
    #[arg(long, default_value = "1/1048576")]
    tol: String,
    #[arg(long, default_value_t = 5)]
    window: usize,
    #[arg(long, default_value_t = 40)]
    max_depth: usize,
    /// Twist the encoding by disjoint label cycles
    #[arg(long)]
    twist_cycles: Option<String>,
    /// Twist the encoding by the symbolic tail shift n -> n + offset
    #[arg(long)]
    shift: Option<u32>,
    /// Report the first/second derivative tests instead of the plain verdict
    #[arg(long)]
    critical: bool,
    /// Probe the translate X -> f(X xor G0) at (query xor G0)
    #[arg(long)]
    translate: Option<String>,
    /// Also print the closed-form slope of a distance function
    #[arg(long)]
    closed_form: bool,
}

#[derive(Args)]
struct DensityCmd {
    #[command(subcommand)]
    action: DensityAction,
}

#[derive(Subcommand)]
enum DensityAction {
    /// Prefix edge densities of a graph
    Trajectory {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 30)]
        n: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Build a graph whose prefix densities converge to the target
    Construct {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 30)]
        n: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Build a graph whose prefix densities sweep several targets
    Oscillate {
        /// Comma-separated strictly increasing targets, e.g. 1/4,3/4
        #[arg(long)]
        targets: String,
        #[arg(long, default_value_t = 3)]
        rounds: u32,
        #[arg(long)]
        csv: bool,
        /// Write the marked indices as sidecar JSON to this path
        #[arg(long)]
        marks_out: Option<String>,
    },
    /// Estimate the accumulation interval of the density trajectory
    Accum {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 40)]
        n: u64,
        #[arg(long, default_value_t = 10)]
        window: u64,
    },
    /// Induced hom-density sequence of a pattern
    Hom {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 20)]
        n: u64,
        #[arg(long)]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let obj = jval!({"error": {"kind": e.kind, "message": e.message}});
            eprintln!("{obj}");
            ExitCode::FAILURE
        }
    }
}

struct Ctx {
    labeling: EdgeLabeling,
    format: Format,
    depth: u64,
    float: bool,
}

impl Ctx {
    fn fmt_rat(&self, r: &Rat) -> String {
        if self.float {
            format!("{} (~{:.6})", r, rat_to_f64(r))
        } else {
            r.to_string()
        }
    }

    fn fmt_interval(&self, iv: &DyadicInterval) -> String {
        if iv.is_exact() {
            format!("{} exact", self.fmt_rat(iv.lo()))
        } else {
            format!(
                "[{}, {}] width {}",
                self.fmt_rat(iv.lo()),
                self.fmt_rat(iv.hi()),
                self.fmt_rat(&iv.width())
            )
        }
    }

    fn interval_value(&self, iv: &DyadicInterval) -> Value {
        jval!({
            "exact": iv.is_exact(),
            "lo": iv.lo().to_string(),
            "hi": iv.hi().to_string(),
            "value": iv.is_exact().then(|| iv.lo().to_string()),
        })
    }

    fn emit_interval(&self, iv: &DyadicInterval) {
        match self.format {
            Format::Json => println!("{}", self.interval_value(iv)),
            _ => println!("{}", self.fmt_interval(iv)),
        }
    }
}

fn class_name(c: Option<GraphClass>) -> &'static str {
    match c {
        Some(GraphClass::Finite) => "finite",
        Some(GraphClass::Cofinite) => "cofinite",
        Some(GraphClass::Proper) => "proper",
        None => "unknown",
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let labeling = match &cli.twist {
        Some(s) => EdgeLabeling::with_twist(parse_twist(s)?),
        None => EdgeLabeling::canonical(),
    };
    let ctx = Ctx {
        labeling,
        format: cli.format,
        depth: cli.depth.max(1),
        float: cli.float,
    };
    match &cli.command {
        Command::Graph(cmd) => run_graph(&ctx, cmd),
        Command::Norm(cmd) => run_norm(&ctx, cmd),
        Command::Dist(cmd) => run_dist(&ctx, cmd),
        Command::Truncate(cmd) => run_truncate(&ctx, cmd),
        Command::Phase(cmd) => run_phase(&ctx, cmd),
        Command::Hom(cmd) => run_hom(&ctx, cmd),
        Command::Derive(cmd) => run_derive(&ctx, cmd),
        Command::Density(cmd) => run_density(&ctx, cmd),
    }
}

fn run_graph(ctx: &Ctx, cmd: &GraphCmd) -> Result<(), CliError> {
    let emit = |g: &Graph| -> Result<(), CliError> {
        let value = json::graph_to_value(g)?;
        match ctx.format {
            Format::Json => println!(
                "{}",
                jval!({"graph": value, "class": class_name(g.classification())})
            ),
            _ => {
                println!("{value}");
                println!("class: {}", class_name(g.classification()));
            }
        }
        Ok(())
    };
    match &cmd.action {
        GraphAction::Parse { graph } => {
            let g = parse_graph_spec(graph, &ctx.labeling)?;
            emit(&g)
        }
        GraphAction::Op { op, g1, g2 } => {
            let a = parse_graph_spec(g1, &ctx.labeling)?;
            let result = match op {
                GraphOp::Complement => complement(&a)?,
                _ => {
                    let g2 = g2
                        .as_ref()
                        .ok_or_else(|| CliError::spec("this operation needs --g2"))?;
                    let b = parse_graph_spec(g2, &ctx.labeling)?;
                    match op {
                        GraphOp::Symdiff => sym_diff(&a, &b)?,
                        GraphOp::Intersect => intersect(&a, &b)?,
                        GraphOp::Complement => unreachable!(),
                    }
                }
            };
            emit(&result)
        }
    }
}

fn run_norm(ctx: &Ctx, cmd: &NormCmd) -> Result<(), CliError> {
    let g = parse_graph_spec(&cmd.graph, &ctx.labeling)?;
    let a = parse_rat_arg(&cmd.a)?;
    let iv = weak_norm(&g, &a, ctx.depth)?;
    ctx.emit_interval(&iv);
    Ok(())
}

fn run_dist(ctx: &Ctx, cmd: &DistCmd) -> Result<(), CliError> {
    let g1 = parse_graph_spec(&cmd.g1, &ctx.labeling)?;
    let g2 = parse_graph_spec(&cmd.g2, &ctx.labeling)?;
    let phi = parse_weight_spec(&cmd.phi)?;
    let i0 = match (&cmd.i0, &cmd.i0_missing) {
        (Some(csv), _) => Some(LabelSet::Finite(parse_labels_csv(csv)?)),
        (None, Some(csv)) => Some(LabelSet::Cofinite(parse_labels_csv(csv)?)),
        (None, None) => None,
    };
    let iv = match i0 {
        Some(i0) => {
            let zeta = parse_zeta_spec(&cmd.zeta)?;
            mixed_dist(&g1, &g2, &i0, &phi, &zeta, ctx.depth)?
        }
        None => dist(&g1, &g2, &phi, ctx.depth),
    };
    ctx.emit_interval(&iv);
    Ok(())
}

fn run_truncate(ctx: &Ctx, cmd: &TruncateCmd) -> Result<(), CliError> {
    let g = parse_graph_spec(&cmd.graph, &ctx.labeling)?;
    let a = parse_rat_arg(&cmd.a)?;
    let eps = parse_rat_arg(&cmd.epsilon)?;
    let (kept, bound) = truncate(&g, &a, &eps)?;
    match ctx.format {
        Format::Json => println!(
            "{}",
            jval!({"bound": bound, "graph": json::graph_to_value(&kept)?})
        ),
        _ => {
            println!("bound: {bound}");
            println!("{}", json::graph_to_string(&kept)?);
        }
    }
    Ok(())
}

fn run_phase(ctx: &Ctx, cmd: &PhaseCmd) -> Result<(), CliError> {
    let a = parse_rat_arg(&cmd.a)?;
    let report = phase_check(&a, cmd.trials)?;
    match ctx.format {
        Format::Json => {
            let collisions: Vec<Value> = report
                .collisions
                .iter()
                .map(|(x, y)| jval!([x, y]))
                .collect();
            println!(
                "{}",
                jval!({
                    "a": report.a.to_string(),
                    "trials": report.trials,
                    "injective_on_sample": report.injective_on_sample(),
                    "collisions": collisions,
                    "canonical_pairs": report.canonical_pairs.len(),
                })
            );
        }
        _ => {
            println!(
                "a = {}, trials = {}: {} collisions, {} canonical pairs verified",
                report.a,
                report.trials,
                report.collisions.len(),
                report.canonical_pairs.len()
            );
        }
    }
    Ok(())
}

fn run_hom(ctx: &Ctx, cmd: &HomCmd) -> Result<(), CliError> {
    match &cmd.action {
        HomAction::Inj { pattern, graph } | HomAction::Ind { pattern, graph } => {
            let h = parse_pattern_spec(pattern)?;
            let g = parse_graph_spec(graph, &ctx.labeling)?;
            let hit = match cmd.action {
                HomAction::Inj { .. } => t_inj(&h, &g, &ctx.labeling),
                _ => t_ind(&h, &g, &ctx.labeling),
            };
            match ctx.format {
                Format::Json => println!("{}", jval!({"value": hit as u8})),
                _ => println!("{}", hit as u8),
            }
            Ok(())
        }
        HomAction::Mobius { pattern, direction } => {
            let h = parse_pattern_spec(pattern)?;
            let dir = match direction {
                Direction::IndFromInj => ExpandDirection::IndFromInj,
                Direction::InjFromInd => ExpandDirection::InjFromInd,
            };
            let combo = mobius_expand(&h, dir)?;
            println!("{}", json::combo_to_value(&combo));
            Ok(())
        }
        HomAction::Lipschitz { i0, i1, phi } => {
            let f = IndicatorFn::finite(parse_labels_csv(i0)?, parse_labels_csv(i1)?)?;
            let phi = parse_weight_spec(phi)?;
            let constant = lipschitz_constant(&f, &phi)?;
            match ctx.format {
                Format::Json => println!("{}", jval!({"constant": constant.to_string()})),
                _ => println!("{}", ctx.fmt_rat(&constant)),
            }
            Ok(())
        }
        HomAction::Interpolate { points } => {
            let raw: Value =
                serde_json::from_str(points).map_err(|e| CliError::spec(e.to_string()))?;
            let arr = raw
                .as_array()
                .ok_or_else(|| CliError::spec("points must be a JSON array"))?;
            let mut parsed = Vec::new();
            for item in arr {
                let graph_value = item
                    .get("graph")
                    .ok_or_else(|| CliError::spec("each point needs a \"graph\""))?;
                let g = json::graph_from_value(graph_value, &ctx.labeling)?;
                let v = item
                    .get("value")
                    .and_then(Value::as_str)
                    .ok_or_else(|| CliError::spec("each point needs a \"value\" string"))?;
                parsed.push((g, parse_rat_arg(v)?));
            }
            let combo = interpolate(&parsed, ctx.depth.max(64), &ctx.labeling)?;
            println!("{}", json::combo_to_value(&combo));
            Ok(())
        }
    }
}

fn run_derive(ctx: &Ctx, cmd: &DeriveCmd) -> Result<(), CliError> {
    let f = parse_fn_spec(&cmd.function, &ctx.labeling)?;
    let g = parse_graph_spec(&cmd.at, &ctx.labeling)?;
    let cfg = DerivativeConfig {
        tol: parse_rat_arg(&cmd.tol)?,
        window: cmd.window.max(2),
        max_depth: cmd.max_depth.max(cmd.window + 1),
    };

    if cmd.closed_form {
        if let GraphFn::Distance { base, phi } = &f {
            let closed = distance_derivative(base, phi, &g)?;
            match ctx.format {
                Format::Json => println!(
                    "{}",
                    jval!({
                        "value": closed.value.to_string(),
                        "c": closed.c.to_string(),
                        "case": format!("{:?}", closed.case),
                    })
                ),
                _ => println!(
                    "closed form {} (c = {}, case {:?})",
                    ctx.fmt_rat(&closed.value),
                    ctx.fmt_rat(&closed.c),
                    closed.case
                ),
            }
            return Ok(());
        }
        return Err(CliError::spec(
            "--closed-form applies to distance functions only",
        ));
    }

    if let Some(g0_spec) = &cmd.translate {
        let g0 = parse_graph_spec(g0_spec, &ctx.labeling)?;
        let report = translated_derivative(&f, &g, &g0, &cfg)?;
        match ctx.format {
            Format::Json => {
                let ratios: Vec<Vec<String>> = report
                    .step_ratios
                    .iter()
                    .map(|v| v.iter().map(Rat::to_string).collect())
                    .collect();
                println!(
                    "{}",
                    jval!({
                        "verdict": json::verdict_to_value(&report.verdict),
                        "step_ratios": ratios,
                    })
                );
            }
            _ => {
                println!("{}", verdict_line(ctx, &report.verdict.status));
                for (idx, ratios) in report.step_ratios.iter().enumerate() {
                    let display: Vec<String> = ratios.iter().map(Rat::to_string).collect();
                    println!("family {idx} step ratios: {}", display.join(", "));
                }
            }
        }
        return Ok(());
    }

    let twist = match (&cmd.twist_cycles, cmd.shift) {
        (Some(_), Some(_)) => {
            return Err(CliError::spec("choose one of --twist-cycles and --shift"))
        }
        (Some(s), None) => Some(LabelTwist::Permutation(parse_twist(s)?)),
        (None, Some(offset)) => Some(LabelTwist::TailShift { offset }),
        (None, None) => None,
    };

    if cmd.critical {
        let probes = ProbeFamily::defaults_for(&g)?;
        let report = critical_point_check(&f, &g, &probes, &cfg)?;
        match ctx.format {
            Format::Json => println!(
                "{}",
                jval!({
                    "derivative": json::verdict_to_value(&report.derivative),
                    "critical": report.critical,
                    "second": report.second.as_ref().map(|iv| ctx.interval_value(iv)),
                    "extremum": format!("{:?}", report.extremum),
                })
            ),
            _ => {
                println!("{}", verdict_line(ctx, &report.derivative.status));
                match report.critical {
                    Some(true) => println!("critical: yes"),
                    Some(false) => println!("critical: no"),
                    None => println!("critical: undetermined"),
                }
                if let Some(iv) = &report.second {
                    println!("second derivative estimate: {}", ctx.fmt_interval(iv));
                }
                println!("extremum: {:?}", report.extremum);
            }
        }
        return Ok(());
    }

    let verdict = match &twist {
        Some(t) => {
            let probes = probes_beyond_twist(&g, t)?;
            twisted_derivative(&f, &g, t, &probes, &cfg)?
        }
        None => {
            let probes = ProbeFamily::defaults_for(&g)?;
            derivative(&f, &g, &probes, &cfg)?
        }
    };
    match ctx.format {
        Format::Json => println!("{}", json::verdict_to_value(&verdict)),
        _ => println!("{}", verdict_line(ctx, &verdict.status)),
    }
    Ok(())
}

fn verdict_line(ctx: &Ctx, status: &DerivativeStatus) -> String {
    match status {
        DerivativeStatus::Converged(iv) => {
            if iv.is_exact() {
                format!("Converged {}", ctx.fmt_rat(iv.lo()))
            } else {
                format!("Converged {}", ctx.fmt_interval(iv))
            }
        }
        DerivativeStatus::Diverged => "Diverged".to_string(),
        DerivativeStatus::Oscillating {
            family_a,
            family_b,
            limit_a,
            limit_b,
        } => format!(
            "Oscillating: family {family_a} -> {}, family {family_b} -> {}",
            ctx.fmt_rat(limit_a),
            ctx.fmt_rat(limit_b)
        ),
        DerivativeStatus::Inconclusive => "Inconclusive".to_string(),
    }
}

fn emit_trajectory(ctx: &Ctx, traj: &DensityTrajectory, csv: bool, extra: Option<Value>) {
    if csv || ctx.format == Format::Csv {
        print!("{}", traj.to_csv());
        return;
    }
    let rows: Vec<Value> = traj
        .rows
        .iter()
        .map(|r| {
            jval!({
                "n": r.n,
                "edges": r.edges,
                "density": r.density.to_string(),
            })
        })
        .collect();
    let mut obj = jval!({ "rows": rows });
    if let Some(extra) = extra {
        for (k, v) in extra.as_object().into_iter().flatten() {
            obj[k] = v.clone();
        }
    }
    match ctx.format {
        Format::Text => {
            for r in &traj.rows {
                println!(
                    "n={} edges={} density={}",
                    r.n,
                    r.edges,
                    ctx.fmt_rat(&r.density)
                );
            }
        }
        _ => println!("{obj}"),
    }
}

fn run_density(ctx: &Ctx, cmd: &DensityCmd) -> Result<(), CliError> {
    match &cmd.action {
        DensityAction::Trajectory { graph, n, csv } => {
            let g = parse_graph_spec(graph, &ctx.labeling)?;
            let traj = trajectory(&g, (*n).max(2))?;
            emit_trajectory(ctx, &traj, *csv, None);
            Ok(())
        }
        DensityAction::Construct { target, n, csv } => {
            let e = parse_rat_arg(target)?;
            let built = construct_target(&e, (*n).max(2))?;
            let extra = jval!({
                "target": e.to_string(),
                "graph": json::graph_to_value(&built.graph)?,
            });
            emit_trajectory(ctx, &built.trajectory, *csv, Some(extra));
            Ok(())
        }
        DensityAction::Oscillate {
            targets,
            rounds,
            csv,
            marks_out,
        } => {
            let mut parsed = Vec::new();
            for part in targets.split(',').filter(|p| !p.trim().is_empty()) {
                parsed.push(parse_rat_arg(part)?);
            }
            let built = construct_oscillating(&parsed, (*rounds).max(1))?;
            let marks = json::marks_to_value(&built.marks);
            if let Some(path) = marks_out {
                std::fs::write(path, format!("{marks}\n"))?;
            }
            let extra = jval!({
                "marks": marks,
                "settled_from": built.settled_from,
            });
            emit_trajectory(ctx, &built.trajectory, *csv, Some(extra));
            Ok(())
        }
        DensityAction::Accum { graph, n, window } => {
            let g = parse_graph_spec(graph, &ctx.labeling)?;
            let report = accumulation_set(&g, (*n).max(2), (*window).clamp(2, (*n).max(2)))?;
            match ctx.format {
                Format::Json => {
                    let clusters: Vec<String> =
                        report.clusters.iter().map(Rat::to_string).collect();
                    println!(
                        "{}",
                        jval!({
                            "lo": report.lo.to_string(),
                            "hi": report.hi.to_string(),
                            "clusters": clusters,
                            "window_start_n": report.window_start_n,
                        })
                    );
                }
                _ => {
                    println!(
                        "interval [{}, {}] from n >= {}",
                        ctx.fmt_rat(&report.lo),
                        ctx.fmt_rat(&report.hi),
                        report.window_start_n
                    );
                    for c in &report.clusters {
                        println!("cluster near {}", ctx.fmt_rat(c));
                    }
                }
            }
            Ok(())
        }
        DensityAction::Hom {
            pattern,
            graph,
            n,
            csv,
        } => {
            let h = parse_pattern_spec(pattern)?;
            let g = parse_graph_spec(graph, &ctx.labeling)?;
            let hd = limiting_hom_density(&h, &g, (*n).max(2), &ctx.labeling)?;
            if *csv || ctx.format == Format::Csv {
                println!("n,density_num,density_den");
                for (n, t) in &hd.values {
                    println!("{},{},{}", n, t.numer(), t.denom());
                }
            } else {
                match ctx.format {
                    Format::Json => {
                        let values: Vec<Value> = hd
                            .values
                            .iter()
                            .map(|(n, t)| jval!({"n": n, "value": t.to_string()}))
                            .collect();
                        println!(
                            "{}",
                            jval!({
                                "pattern": json::pattern_to_value(&hd.pattern),
                                "values": values,
                            })
                        );
                    }
                    _ => {
                        for (n, t) in &hd.values {
                            println!("n={} t={}", n, ctx.fmt_rat(t));
                        }
                    }
                }
            }
            Ok(())
        }
    }
}
