//! Command-line runner for the Jacobi-group geometry verification suites.
//! stdout carries the report, stderr the diagnostics; exit code 0 means every
//! check passed, 1 means a check failed, 2 means the invocation was invalid.

use clap::{Args, Parser, Subcommand};
use jacobi_geometry::actions::{fvf_closed_form, FvfVariant, Space};
use jacobi_geometry::algebra::{frame_brackets, jacobi_identity_audit, FrameAlgebra};
use jacobi_geometry::charts::Chart;
use jacobi_geometry::geodesics::{
    geodesic_condition, r3, table1_members, table2_members, FamilyMember, SpaceSpec,
};
use jacobi_geometry::geometry::{geodesic, killing_residual, orbit_geodesic_residual};
use jacobi_geometry::metrics::MetricSpec;
use jacobi_geometry::sample::{random_s_coords, random_xypq, random_xypqk, rng_from_seed};
use jacobi_geometry::verify::{
    determinism_check, report_json, verify_all, Check, Params, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "jacobi-verify",
    version,
    about = "Numeric checks for the real Jacobi group, its invariant metrics and geodesic vectors"
)]
struct Cli {
    /// RNG seed; fully determines every sampled check
    #[arg(long, global = true, default_value_t = 20_251)]
    seed: u64,

    /// Override the per-check sample counts (0 keeps the defaults)
    #[arg(long, global = true, default_value_t = 0)]
    samples: usize,

    /// Scale factor applied to every tolerance
    #[arg(long, global = true, default_value_t = 1.0)]
    tol: f64,

    /// Output format
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv", "text"])]
    format: String,

    /// Metric parameters, e.g. --params c1=2,alpha=0.5
    #[arg(long, global = true, value_name = "K=V,...")]
    params: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification suite
    VerifyAll,
    /// Killing-equation residuals of the six fundamental fields
    Killing(KillingArgs),
    /// Emit the geodesic-vector tables with verification flags
    Tables(TablesArgs),
    /// Integrate a geodesic and dump the trajectory as CSV
    Geodesic(GeodesicArgs),
    /// Dump the frame bracket tables (printed/derived) and their diff
    Brackets(BracketsArgs),
}

#[derive(Args)]
struct KillingArgs {
    /// Metric name: xj1_xypq | xj1ext | gj1
    #[arg(long)]
    metric: String,
    /// Chart name (must be the metric's chart)
    #[arg(long)]
    chart: Option<String>,
}

#[derive(Args)]
struct TablesArgs {
    /// Space name: xj1 | xj1ext
    #[arg(long)]
    space: String,
    /// Frame ratio r = sqrt(alpha/beta); defaults to the value from --params
    #[arg(long)]
    r: Option<f64>,
}

#[derive(Args)]
struct GeodesicArgs {
    /// Metric name
    #[arg(long)]
    metric: String,
    /// Start coordinates, comma separated
    #[arg(long)]
    start: String,
    /// Initial velocity, comma separated
    #[arg(long)]
    velocity: String,
    #[arg(long, default_value_t = 1.0)]
    t1: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
}

#[derive(Args)]
struct BracketsArgs {
    /// printed | derived | both
    #[arg(long, default_value = "both", value_parser = ["printed", "derived", "both"])]
    mode: String,
}

fn parse_params(spec: &Option<String>) -> Result<Params, String> {
    let mut params = Params::default();
    if let Some(s) = spec {
        for pair in s.split(',') {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| format!("malformed parameter '{pair}', expected key=value"))?;
            let value: f64 = v.trim().parse().map_err(|_| format!("bad number in '{pair}'"))?;
            params.set(k.trim(), value).map_err(|e| e.to_string())?;
        }
    }
    Ok(params)
}

fn parse_metric(name: &str, p: &Params) -> Result<MetricSpec, String> {
    Ok(match name {
        "disk_kahler" => MetricSpec::DiskKahler { k: p.k, nu: p.nu },
        "xj1_tz" => MetricSpec::Xj1Tz { c1: p.c1, c2: p.c2 },
        "xj1_xypq" => MetricSpec::Xj1Xypq { c1: p.c1, c2: p.c2 },
        "xj1_xyxr" => MetricSpec::Xj1Xyxr { c1: p.c1, c2: p.c2 },
        "xj1_xycp" => MetricSpec::Xj1Xycp { c1: p.c1, c2: p.c2 },
        "xj1ext" => MetricSpec::Xj1Ext { alpha: p.alpha, gamma: p.gamma, delta: p.delta },
        "gj1" => {
            MetricSpec::Gj1 { alpha: p.alpha, beta: p.beta, gamma: p.gamma, delta: p.delta }
        }
        other => return Err(format!("unknown metric '{other}'")),
    })
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_checks(cfg: &RunConfig, checks: &[Check], format: &str) {
    match format {
        "json" => println!("{}", report_json(cfg, checks)),
        "csv" => {
            println!("check,reference,max_residual,tolerance,must_exceed,pass");
            for c in checks {
                println!(
                    "{},{},{:e},{:e},{},{}",
                    csv_quote(&c.check),
                    csv_quote(&c.reference),
                    c.max_residual,
                    c.tolerance,
                    c.must_exceed,
                    c.pass
                );
            }
        }
        _ => {
            println!("r = {}", cfg.params.r());
            for c in checks {
                println!(
                    "[{}] {:<36} residual {:>12.4e} {} {:.1e}  ({})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.check,
                    c.max_residual,
                    if c.must_exceed { "> " } else { "<=" },
                    c.tolerance,
                    c.reference
                );
            }
        }
    }
}

fn exit_for(checks: &[Check]) -> i32 {
    if checks.iter().all(|c| c.pass) {
        0
    } else {
        1
    }
}

fn cmd_verify_all(cfg: &RunConfig, format: &str) -> i32 {
    let mut checks = verify_all(cfg);
    checks.push(determinism_check(&RunConfig { samples: 25, ..cfg.clone() }));
    emit_checks(cfg, &checks, format);
    exit_for(&checks)
}

fn cmd_killing(cfg: &RunConfig, args: &KillingArgs, format: &str) -> Result<i32, String> {
    let spec = parse_metric(&args.metric, &cfg.params)?;
    if let Some(chart) = &args.chart {
        let c = Chart::parse(chart).map_err(|e| e.to_string())?;
        if c != spec.chart() {
            return Err(format!(
                "metric {} lives on chart {}, not {}",
                args.metric,
                spec.chart().name(),
                chart
            ));
        }
    }
    type Sampler = fn(&mut jacobi_geometry::sample::SeededRng) -> Vec<f64>;
    let (space, sampler): (Space, Sampler) = match spec {
        MetricSpec::Xj1Xypq { .. } => (Space::Xj1, |r| random_xypq(r).to_vec()),
        MetricSpec::Xj1Ext { .. } => (Space::Xj1Ext, |r| random_xypqk(r).to_vec()),
        MetricSpec::Gj1 { .. } => (Space::Group, |r| random_s_coords(r).to_vec()),
        _ => {
            return Err(format!("no fundamental-field suite for metric '{}'", args.metric));
        }
    };
    let mut rng = rng_from_seed(cfg.seed ^ 0x6b);
    let n = if cfg.samples == 0 { 200 } else { cfg.samples };
    let points: Vec<Vec<f64>> = (0..n).map(|_| sampler(&mut rng)).collect();
    let mut checks = Vec::new();
    for gen in jacobi_geometry::algebra::GENERATORS {
        let field = fvf_closed_form(space, spec.chart(), gen, FvfVariant::Definitional)
            .map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for pt in &points {
            worst = worst.max(killing_residual(&spec, &field, pt).map_err(|e| e.to_string())?);
        }
        checks.push(Check {
            check: format!("killing.{}.{gen:?}", spec.name()),
            reference: "fundamental field solves the Killing equation".into(),
            max_residual: worst,
            tolerance: 1e-9 * cfg.tol_scale,
            must_exceed: false,
            pass: worst <= 1e-9 * cfg.tol_scale,
        });
    }
    if matches!(spec, MetricSpec::Gj1 { .. }) {
        // the published self-action G* (missing the p-drift) is not Killing;
        // keep that visible as a separation check
        let field = fvf_closed_form(
            space,
            spec.chart(),
            jacobi_geometry::algebra::Generator::G,
            FvfVariant::Printed,
        )
        .map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for pt in &points {
            worst = worst.max(killing_residual(&spec, &field, pt).map_err(|e| e.to_string())?);
        }
        checks.push(Check {
            check: "killing.gj1.G_printed_variant_fails".into(),
            reference: "the printed self-action G* (without the p-drift) violates the equation"
                .into(),
            max_residual: worst,
            tolerance: 1e-2 * cfg.tol_scale,
            must_exceed: true,
            pass: worst > 1e-2 * cfg.tol_scale,
        });
    }
    emit_checks(cfg, &checks, format);
    Ok(exit_for(&checks))
}

#[derive(serde::Serialize)]
struct TableRow {
    family: u8,
    signs: Vec<i8>,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
    printed_residual: f64,
    derived_residual: f64,
    ode_residual: Option<f64>,
    verified: bool,
}

fn table_rows(
    space: &SpaceSpec,
    members: &[FamilyMember],
    cfg: &RunConfig,
    with_ode: bool,
) -> Vec<TableRow> {
    let frame = cfg.params.frame();
    let printed = FrameAlgebra::printed(frame);
    let derived = FrameAlgebra::derived(frame);
    let metric = MetricSpec::Xj1Ext {
        alpha: cfg.params.alpha,
        gamma: cfg.params.gamma,
        delta: cfg.params.delta,
    };
    let grid: Vec<f64> = (-4..=4).map(|k| 0.1 * k as f64).collect();
    members
        .iter()
        .map(|m| {
            let worst = |alg: &FrameAlgebra| {
                geodesic_condition(space, alg, &m.x)
                    .map(|r| r.iter().fold(0.0f64, |a, v| a.max(v.abs())))
                    .unwrap_or(f64::NAN)
            };
            let pr = worst(&printed);
            let dr = worst(&derived);
            let ode = if with_ode {
                let unit = m.x.scale(1.0 / m.x.norm());
                orbit_geodesic_residual(
                    Space::Xj1Ext,
                    &metric,
                    &unit.to_algebra(frame),
                    &[0.0, 1.0, 0.0, 0.0, 0.0],
                    &grid,
                )
                .ok()
            } else {
                None
            };
            let [a, b, c, d, e, f] = m.x.c;
            TableRow {
                family: m.family,
                signs: m.signs.clone(),
                a,
                b,
                c,
                d,
                e,
                f,
                printed_residual: pr,
                derived_residual: dr,
                ode_residual: ode,
                verified: pr <= 1e-12,
            }
        })
        .collect()
}

fn cmd_tables(cfg: &RunConfig, args: &TablesArgs, format: &str) -> Result<i32, String> {
    let r = args.r.unwrap_or_else(|| cfg.params.r());
    if r <= 0.0 {
        return Err(format!("r must be positive, got {r}"));
    }
    // rebuild the frame so that sqrt(alpha/beta) matches the requested r
    let mut cfg = cfg.clone();
    cfg.params.alpha = r * r * cfg.params.beta;
    let free = [1.0, 1.0];
    let (space, members, note) = match args.space.as_str() {
        "xj1" => (
            SpaceSpec::xj1(),
            table1_members(r, &free, 1.0),
            "m = <L1,L2,L4,L5>, h = <L3,L6> (the proofs' split)".to_string(),
        ),
        "xj1ext" => {
            if r <= r3() {
                return Err(format!("space xj1ext requires r > {:.4} for family 1", r3()));
            }
            (
                SpaceSpec::xj1ext(),
                table2_members(r, &free, 1.0).map_err(|e| e.to_string())?,
                "m = <L1..L5>, h = <L6> as in the proofs; the isotropy of the 5-space is \
                 the L3 direction, so solving these systems does not by itself make the \
                 orbit a geodesic of the invariant metric (see ode_residual)"
                    .to_string(),
            )
        }
        other => return Err(format!("unknown space '{other}'")),
    };
    let with_ode = space.name == jacobi_geometry::geodesics::SpaceName::Xj1Ext;
    let rows = table_rows(&space, &members, &cfg, with_ode);
    match format {
        "json" => {
            let body = serde_json::json!({
                "space": args.space,
                "r": r,
                "note": note,
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
        }
        "csv" => {
            println!(
                "family,signs,a,b,c,d,e,f,printed_residual,derived_residual,ode_residual,verified"
            );
            for row in &rows {
                let signs = row
                    .signs
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                println!(
                    "{},{},{},{},{},{},{},{},{:e},{:e},{},{}",
                    row.family,
                    csv_quote(&signs),
                    row.a,
                    row.b,
                    row.c,
                    row.d,
                    row.e,
                    row.f,
                    row.printed_residual,
                    row.derived_residual,
                    row.ode_residual.map_or(String::new(), |v| format!("{v:e}")),
                    row.verified
                );
            }
        }
        _ => {
            println!("space {}  r = {r}", args.space);
            println!("{note}");
            for row in &rows {
                println!(
                    "family {} signs {:?}: ({:+.4}, {:+.4}, {:+.4}, {:+.4}, {:+.4}, {:+.4})  printed {:.2e}  derived {:.2e}  ode {}  {}",
                    row.family,
                    row.signs,
                    row.a,
                    row.b,
                    row.c,
                    row.d,
                    row.e,
                    row.f,
                    row.printed_residual,
                    row.derived_residual,
                    row.ode_residual.map_or("-".to_string(), |v| format!("{v:.2e}")),
                    if row.verified { "ok" } else { "FAIL" }
                );
            }
        }
    }
    Ok(if rows.iter().all(|r| r.verified) { 0 } else { 1 })
}

fn parse_coords(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("bad coordinate '{v}'")))
        .collect()
}

fn cmd_geodesic(cfg: &RunConfig, args: &GeodesicArgs) -> Result<i32, String> {
    let spec = parse_metric(&args.metric, &cfg.params)?;
    let start = parse_coords(&args.start)?;
    let velocity = parse_coords(&args.velocity)?;
    if start.len() != spec.dim() || velocity.len() != spec.dim() {
        return Err(format!("metric {} needs {} coordinates", args.metric, spec.dim()));
    }
    if args.steps == 0 {
        return Err("steps must be >= 1".into());
    }
    let traj =
        geodesic(&spec, &start, &velocity, args.t1, args.steps).map_err(|e| e.to_string())?;
    let order = spec.order().join(",");
    println!("t,{order},energy");
    for s in &traj {
        let coords =
            s.position.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(",");
        println!("{},{},{}", s.t, coords, s.energy);
    }
    Ok(0)
}

fn cmd_brackets(cfg: &RunConfig, args: &BracketsArgs, format: &str) -> i32 {
    let cmp = frame_brackets(cfg.params.frame());
    let audit_printed = jacobi_identity_audit(&cmp.printed.sc);
    let audit_derived = jacobi_identity_audit(&cmp.derived.sc);
    let body = match args.mode.as_str() {
        "printed" => serde_json::json!({
            "mode": "printed",
            "structure_constants": cmp.printed.sc.to_json(),
            "jacobi_violations": audit_printed,
        }),
        "derived" => serde_json::json!({
            "mode": "derived",
            "structure_constants": cmp.derived.sc.to_json(),
            "jacobi_violations": audit_derived,
        }),
        _ => serde_json::json!({
            "mode": "both",
            "printed": cmp.printed.sc.to_json(),
            "derived": cmp.derived.sc.to_json(),
            "diffs": cmp.diffs,
            "jacobi_violations_printed": audit_printed,
            "jacobi_violations_derived": audit_derived,
        }),
    };
    match format {
        "text" => {
            println!(
                "frame bracket tables at alpha={}, beta={}, gamma={}, delta={}",
                cfg.params.alpha, cfg.params.beta, cfg.params.gamma, cfg.params.delta
            );
            if cmp.diffs.is_empty() {
                println!("printed and derived tables agree");
            }
            for d in &cmp.diffs {
                println!(
                    "[L{},L{}]: printed {:?} vs derived {:?}",
                    d.i + 1,
                    d.j + 1,
                    d.printed,
                    d.derived
                );
            }
            println!("jacobi violations (printed): {audit_printed:?}");
            println!("jacobi violations (derived): {audit_derived:?}");
        }
        _ => println!("{}", serde_json::to_string_pretty(&body).expect("serializable")),
    }
    0
}

fn main() {
    let cli = Cli::parse();
    let params = match parse_params(&cli.params) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let cfg = RunConfig { seed: cli.seed, samples: cli.samples, tol_scale: cli.tol, params };
    let code = match &cli.command {
        Command::VerifyAll => cmd_verify_all(&cfg, &cli.format),
        Command::Killing(args) => match cmd_killing(&cfg, args, &cli.format) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Tables(args) => match cmd_tables(&cfg, args, &cli.format) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Geodesic(args) => match cmd_geodesic(&cfg, args) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Brackets(args) => cmd_brackets(&cfg, args, &cli.format),
    };
    std::process::exit(code);
}
