//! Command-line front end for reproducible scan experiments.
//!
//! Every subcommand writes plain CSV (or PGM) to `--out`, defaulting to
//! standard output; report-style subcommands close with one `# key=value`
//! summary line. Identical arguments and seeds produce byte-identical
//! output. Exit codes: 0 success, 1 usage or settings error, 2 numeric or
//! domain error.

mod config;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use config::RunConfig;
use sfcscan::analysis::{table1_experiment, table1_reference, AutocorrMode};
use sfcscan::dipole::{
    corner_dipoles, sample_field_map, simulate_resonance_scan, FieldComponent, FieldConfig,
    ResonanceModel,
};
use sfcscan::export::{
    search_summary, tour_summary, write_field_map_csv, write_field_map_pgm, write_matrix_csv,
    write_resonance_csv, write_search_trace_csv, write_table1_csv, write_tour_csv,
    write_trajectory_csv, FloatFormat,
};
use sfcscan::pulse::{
    compose_sequence, control_scan_search, PulseSpec, PulseTrain, ScanSearchParams,
};
use sfcscan::sfc::{generate_trajectory, CurveOrder, ScanKind};
use sfcscan::tour::{brute_force_tsp, hilbert_order_tour, PointSet, Region};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "sfcscan",
    version,
    about = "Scan-order experiments: trajectories, field maps, autocorrelation \
             tables, resonance readouts, point tours, pulse propagators and \
             threshold searches, all emitted as plain CSV/PGM."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a scan trajectory as `step,x,y` rows.
    Trajectory(TrajectoryArgs),
    /// Sample the corner-source field over the window, as CSV or PGM.
    Fieldmap(FieldmapArgs),
    /// Compare two scan families' autocorrelation columns against the
    /// bundled reference table.
    Table1(Table1Args),
    /// Drive the resonance readout over every cell along a scan.
    Resonance(ResonanceArgs),
    /// Closed-tour experiment over seeded points (or a fixed preset).
    Tour(TourArgs),
    /// Compose a pulse train into its 2x2 propagator.
    Pulse(PulseArgs),
    /// Walk a drive-amplitude lattice recording transfer probabilities.
    ScanSearch(ScanSearchArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Write the emission to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Float cells: sig6 (6 significant digits, default) or full
    /// (shortest round-trip digits).
    #[arg(long, value_name = "FMT")]
    precision: Option<FloatFormat>,

    /// Flat `key = value` settings file; flags override its values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GeometryArgs {
    /// Side of the sampling window centered inside the source square.
    /// Defaults to 1.
    #[arg(long, value_name = "LEN", allow_negative_numbers = true)]
    window_side: Option<f64>,

    /// Height z of the observation plane. Defaults to 0.
    #[arg(long, value_name = "Z", allow_negative_numbers = true)]
    plane_z: Option<f64>,

    /// Moment shared by the four corner sources, as `mx,my,mz`.
    /// Defaults to the in-plane diagonal unit moment.
    #[arg(long, value_name = "MX,MY,MZ", value_parser = parse_triple, allow_hyphen_values = true)]
    moment: Option<[f64; 3]>,
}

impl GeometryArgs {
    fn is_empty(&self) -> bool {
        self.window_side.is_none() && self.plane_z.is_none() && self.moment.is_none()
    }
}

#[derive(Args, Debug)]
struct TrajectoryArgs {
    /// Scan family: raster | serpentine | hilbert | random.
    #[arg(long, value_name = "KIND")]
    kind: Option<ScanKind>,

    /// Curve order m; the grid is 2^m x 2^m. Defaults to 5.
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u32).range(1..=16))]
    order: Option<u32>,

    /// Seed for the random family (required there, ignored elsewhere).
    #[arg(long)]
    seed: Option<u64>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct FieldmapArgs {
    /// Grid order m; 2^m cells per side. Defaults to 5 (32 x 32).
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u32).range(1..=16))]
    grid_order: Option<u32>,

    #[command(flatten)]
    geometry: GeometryArgs,

    /// Emit a plain PGM image of this component (x|y|z) instead of CSV.
    #[arg(long, value_name = "COMPONENT")]
    pgm: Option<FieldComponent>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// Run a single-grid experiment at order m instead of the benchmark
    /// comparison (raster on 32, hilbert on 64 cells per side).
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u32).range(1..=16))]
    order: Option<u32>,

    /// Autocorrelation estimator: pearson | raw. Defaults to pearson.
    #[arg(long, value_name = "MODE")]
    mode: Option<AutocorrMode>,

    /// Largest lag in the table. Defaults to 10.
    #[arg(long, value_name = "K")]
    k_max: Option<usize>,

    /// Scan family for the `linear` column (single-grid runs only).
    /// Defaults to raster.
    #[arg(long, value_name = "KIND")]
    scan_a: Option<ScanKind>,

    /// Scan family for the `hilbert` column (single-grid runs only).
    /// Defaults to hilbert.
    #[arg(long, value_name = "KIND")]
    scan_b: Option<ScanKind>,

    #[command(flatten)]
    geometry: GeometryArgs,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct ResonanceArgs {
    /// Scan family driving the readout. Defaults to hilbert.
    #[arg(long, value_name = "KIND")]
    kind: Option<ScanKind>,

    /// Grid order m; 2^m cells per side. Defaults to 5 (32 x 32).
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u32).range(1..=16))]
    grid_order: Option<u32>,

    #[command(flatten)]
    geometry: GeometryArgs,

    /// Ratio between line frequency and total field. Defaults to 1.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,

    /// Bias field added twice to each cell's z sample. Defaults to 1.
    #[arg(long, allow_negative_numbers = true)]
    strip_field: Option<f64>,

    /// Lorentzian linewidth. Defaults to the covering model's choice.
    #[arg(long, allow_negative_numbers = true)]
    linewidth: Option<f64>,

    /// Sweep window lower edge. Defaults to the covering model's choice.
    #[arg(long, allow_negative_numbers = true)]
    sweep_min: Option<f64>,

    /// Sweep window upper edge. Defaults to the covering model's choice.
    #[arg(long, allow_negative_numbers = true)]
    sweep_max: Option<f64>,

    /// Sweep increment. Defaults to the covering model's choice.
    #[arg(long, allow_negative_numbers = true)]
    sweep_step: Option<f64>,

    /// Seed for the random family (required there, ignored elsewhere).
    #[arg(long)]
    seed: Option<u64>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct TourArgs {
    /// Number of uniform points to draw (needs --seed).
    #[arg(long)]
    n: Option<usize>,

    /// Seed for the point draw.
    #[arg(long)]
    seed: Option<u64>,

    /// Region the points live in: square | disc. Defaults to square.
    #[arg(long, value_name = "REGION")]
    region: Option<Region>,

    /// Curve order used to sort the points. Defaults to 10.
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u32).range(1..=16))]
    order: Option<u32>,

    /// Fixed instance instead of seeded points; `corners` is the unit
    /// square's four corners. `--n`, if also given, must match its size.
    #[arg(long, value_name = "NAME", conflicts_with_all = ["seed", "region"])]
    preset: Option<String>,

    /// Also solve the instance exactly (at most 10 points) and report the
    /// optimum next to the heuristic.
    #[arg(long)]
    brute: bool,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct PulseArgs {
    /// One pulse as `C,PHI` (action and phase); repeat the flag for a
    /// train, first pulse applied first.
    #[arg(long = "pulse", value_name = "C,PHI", value_parser = parse_pulse, allow_hyphen_values = true, required = true)]
    pulses: Vec<PulseSpec>,

    /// Global phase of the composed propagator. Defaults to 0.
    #[arg(long, value_name = "PHASE", allow_negative_numbers = true)]
    gamma_phase: Option<f64>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct ScanSearchArgs {
    /// Grid order m; the amplitude lattice is 2^m x 2^m. Defaults to 5.
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u32).range(1..=16))]
    order: Option<u32>,

    /// Lower edge of both amplitude axes. Defaults to 0.
    #[arg(long, allow_negative_numbers = true)]
    e_min: Option<f64>,

    /// Upper edge of both amplitude axes. Defaults to 4.
    #[arg(long, allow_negative_numbers = true)]
    e_max: Option<f64>,

    /// Coupling direction as `mux,muy`. Defaults to 1,0.
    #[arg(long, value_name = "MUX,MUY", value_parser = parse_pair, allow_hyphen_values = true)]
    mu: Option<[f64; 2]>,

    /// Drive time per cell. Defaults to 1.
    #[arg(long, allow_negative_numbers = true)]
    duration: Option<f64>,

    /// Drive phase. Defaults to pi/4, the full-transfer phase.
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,

    /// Initial state `a,b`, normalized internally. Defaults to 1,0.
    #[arg(long, value_name = "A,B", value_parser = parse_pair, allow_hyphen_values = true)]
    initial: Option<[f64; 2]>,

    /// Target state `a,b`, normalized internally. Defaults to 0,1.
    #[arg(long, value_name = "A,B", value_parser = parse_pair, allow_hyphen_values = true)]
    target: Option<[f64; 2]>,

    /// Transfer probability that counts as a hit. Defaults to 0.9.
    #[arg(long, allow_negative_numbers = true)]
    threshold: Option<f64>,

    /// Scan family walking the lattice. Defaults to hilbert.
    #[arg(long, value_name = "KIND")]
    kind: Option<ScanKind>,

    /// Seed for the lattice offset (and the random family's order).
    /// Always required: every search is a seeded instance.
    #[arg(long)]
    seed: Option<u64>,

    #[command(flatten)]
    common: CommonArgs,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Runtime(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

struct Context {
    cfg: RunConfig,
    fmt: FloatFormat,
    out: Option<PathBuf>,
}

impl Context {
    fn new(common: &CommonArgs) -> Result<Self, Failure> {
        let cfg = match &common.config {
            Some(path) => RunConfig::load(path).map_err(Failure::Usage)?,
            None => RunConfig::default(),
        };
        Ok(Self {
            cfg,
            fmt: common.precision.unwrap_or_default(),
            out: common.out.clone(),
        })
    }

    fn emit<F>(&self, f: F) -> Result<(), Failure>
    where
        F: FnOnce(&mut dyn Write, FloatFormat) -> std::io::Result<()>,
    {
        let result = match &self.out {
            Some(path) => {
                let file = std::fs::File::create(path).map_err(|e| {
                    Failure::Runtime(format!("cannot create {}: {e}", path.display()))
                })?;
                let mut w = std::io::BufWriter::new(file);
                f(&mut w, self.fmt).and_then(|()| w.flush())
            }
            None => {
                let stdout = std::io::stdout();
                let mut w = stdout.lock();
                f(&mut w, self.fmt).and_then(|()| w.flush())
            }
        };
        match result {
            Ok(()) => Ok(()),
            // A closed consumer (e.g. `| head`) is a clean stop, not an error.
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            Err(e) => Err(Failure::Runtime(format!("write failed: {e}"))),
        }
    }
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers"));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{e} in {part:?}"))?;
    }
    Ok(out)
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    parse_list::<2>(s)
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    parse_list::<3>(s)
}

fn parse_pulse(s: &str) -> Result<PulseSpec, String> {
    let [coupling, phase] = parse_list::<2>(s)?;
    Ok(PulseSpec { coupling, phase })
}

fn resolve_order(
    flag: Option<u32>,
    cfg_value: Option<u32>,
    default: u32,
) -> Result<CurveOrder, Failure> {
    CurveOrder::new(flag.or(cfg_value).unwrap_or(default)).map_err(usage)
}

fn resolve_seed(flag: Option<u64>, cfg: &RunConfig, required: bool) -> Result<u64, Failure> {
    let seed = flag.or(cfg.seed);
    if required && seed.is_none() {
        return Err(Failure::Usage(
            "this run is randomized; pass an explicit --seed (flag or settings file)".into(),
        ));
    }
    Ok(seed.unwrap_or(0))
}

fn field_config(
    cfg: &RunConfig,
    geo: &GeometryArgs,
    order: CurveOrder,
) -> Result<FieldConfig, Failure> {
    let side = geo.window_side.or(cfg.window_side).unwrap_or(1.0);
    let z = geo.plane_z.or(cfg.plane_z).unwrap_or(0.0);
    let moment = geo.moment.unwrap_or([
        cfg.moment_x.unwrap_or(FRAC_1_SQRT_2),
        cfg.moment_y.unwrap_or(FRAC_1_SQRT_2),
        cfg.moment_z.unwrap_or(0.0),
    ]);
    FieldConfig::new(corner_dipoles(moment), [0.0, 0.0], side, order.side(), z).map_err(runtime)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Trajectory(args) => run_trajectory(args),
        Command::Fieldmap(args) => run_fieldmap(args),
        Command::Table1(args) => run_table1(args),
        Command::Resonance(args) => run_resonance(args),
        Command::Tour(args) => run_tour(args),
        Command::Pulse(args) => run_pulse(args),
        Command::ScanSearch(args) => run_scan_search(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run_trajectory(args: &TrajectoryArgs) -> Result<(), Failure> {
    let ctx = Context::new(&args.common)?;
    let kind = args.kind.or(ctx.cfg.kind).ok_or_else(|| {
        Failure::Usage("missing --kind (raster|serpentine|hilbert|random)".into())
    })?;
    let order = resolve_order(args.order, ctx.cfg.grid_order, 5)?;
    let seed = resolve_seed(args.seed, &ctx.cfg, kind == ScanKind::Random)?;
    let trajectory = generate_trajectory(kind, order, seed);
    ctx.emit(|w, _| write_trajectory_csv(w, &trajectory))
}

fn run_fieldmap(args: &FieldmapArgs) -> Result<(), Failure> {
    let ctx = Context::new(&args.common)?;
    let order = resolve_order(args.grid_order, ctx.cfg.grid_order, 5)?;
    let config = field_config(&ctx.cfg, &args.geometry, order)?;
    let map = sample_field_map(&config).map_err(runtime)?;
    match args.pgm {
        Some(component) => ctx.emit(|w, _| write_field_map_pgm(w, &map, component)),
        None => ctx.emit(|w, fmt| write_field_map_csv(w, &map, fmt)),
    }
}

fn run_table1(args: &Table1Args) -> Result<(), Failure> {
    let ctx = Context::new(&args.common)?;
    let mode = args.mode.or(ctx.cfg.mode).unwrap_or(AutocorrMode::Pearson);
    let k_max = args.k_max.or(ctx.cfg.k_max).unwrap_or(10);
    let report = match args.order {
        None => {
            if args.scan_a.is_some() || args.scan_b.is_some() || !args.geometry.is_empty() {
                return Err(Failure::Usage(
                    "--scan-a, --scan-b and geometry flags apply to single-grid runs; \
                     pass --order as well"
                        .into(),
                ));
            }
            table1_reference(k_max, mode).map_err(runtime)?
        }
        Some(m) => {
            let order = resolve_order(Some(m), None, 5)?;
            let scan_a = args.scan_a.or(ctx.cfg.scan_a).unwrap_or(ScanKind::Raster);
            let scan_b = args.scan_b.or(ctx.cfg.scan_b).unwrap_or(ScanKind::Hilbert);
            for kind in [scan_a, scan_b] {
                if !kind.is_deterministic() {
                    return Err(Failure::Usage(format!(
                        "the comparison runs deterministic scan families only, got {kind}"
                    )));
                }
            }
            let config = field_config(&ctx.cfg, &args.geometry, order)?;
            table1_experiment(&config, scan_a, scan_b, k_max, mode).map_err(runtime)?
        }
    };
    let summary = format!(
        "# mean_abs_delta_linear={:?} mean_abs_delta_hilbert={:?} \
         max_abs_delta_linear={:?} max_abs_delta_hilbert={:?}",
        report.mean_abs_delta_linear(),
        report.mean_abs_delta_hilbert(),
        report.max_abs_delta_linear(),
        report.max_abs_delta_hilbert(),
    );
    ctx.emit(|w, fmt| {
        write_table1_csv(w, &report, fmt)?;
        writeln!(w, "{summary}")
    })
}

fn run_resonance(args: &ResonanceArgs) -> Result<(), Failure> {
    let ctx = Context::new(&args.common)?;
    let kind = args.kind.or(ctx.cfg.kind).unwrap_or(ScanKind::Hilbert);
    let order = resolve_order(args.grid_order, ctx.cfg.grid_order, 5)?;
    let seed = resolve_seed(args.seed, &ctx.cfg, kind == ScanKind::Random)?;
    let config = field_config(&ctx.cfg, &args.geometry, order)?;
    let gamma = args.gamma.or(ctx.cfg.gamma).unwrap_or(1.0);
    let strip_field = args.strip_field.or(ctx.cfg.strip_field).unwrap_or(1.0);

    let map = sample_field_map(&config).map_err(runtime)?;
    let base = ResonanceModel::covering(&map, gamma, strip_field).map_err(runtime)?;
    let model = ResonanceModel::new(
        gamma,
        args.linewidth.or(ctx.cfg.linewidth).unwrap_or(base.linewidth),
        args.sweep_min.or(ctx.cfg.sweep_min).unwrap_or(base.sweep_min),
        args.sweep_max.or(ctx.cfg.sweep_max).unwrap_or(base.sweep_max),
        args.sweep_step.or(ctx.cfg.sweep_step).unwrap_or(base.sweep_step),
        strip_field,
    )
    .map_err(runtime)?;

    let trajectory = generate_trajectory(kind, order, seed);
    let scan = simulate_resonance_scan(&config, &model, &trajectory).map_err(runtime)?;
    let max_err = match scan.max_abs_error_unflagged() {
        Some(e) => format!("{e:?}"),
        None => "undefined".into(),
    };
    let summary = format!(
        "# flagged={} max_abs_err={max_err} linewidth={:?} sweep_min={:?} \
         sweep_max={:?} sweep_step={:?}",
        scan.flagged_count(),
        model.linewidth,
        model.sweep_min,
        model.sweep_max,
        model.sweep_step,
    );
    ctx.emit(|w, fmt| {
        write_resonance_csv(w, &scan, fmt)?;
        writeln!(w, "{summary}")
    })
}

fn run_tour(args: &TourArgs) -> Result<(), Failure> {
    let ctx = Context::new(&args.common)?;
    let order = resolve_order(args.order, None, 10)?;
    let point_set = match args.preset.as_deref() {
        Some("corners") => {
            let ps = PointSet::new(
                vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
                Region::UnitSquare,
            )
            .map_err(runtime)?;
            if args.n.is_some_and(|n| n != ps.len()) {
                return Err(Failure::Usage(format!(
                    "preset corners has {} points; drop --n or pass --n {}",
                    ps.len(),
                    ps.len()
                )));
            }
            ps
        }
        Some(other) => {
            return Err(Failure::Usage(format!(
                "unknown preset {other:?}; available: corners"
            )))
        }
        None => {
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("pass --n with --seed, or --preset corners".into()))?;
            let seed = resolve_seed(args.seed, &ctx.cfg, true)?;
            let region = args.region.unwrap_or(Region::UnitSquare);
            PointSet::uniform_random(n, region, seed).map_err(runtime)?
        }
    };
    let tour = hilbert_order_tour(&point_set, order).map_err(runtime)?;
    let brute_line = if args.brute {
        let optimal = brute_force_tsp(&point_set).map_err(runtime)?;
        Some(format!(
            "# optimal_L={:?} heuristic_over_optimal={:?}",
            optimal.length(),
            tour.length() / optimal.length(),
        ))
    } else {
        None
    };
    let summary = format!("# {}", tour_summary(&point_set, &tour));
    ctx.emit(|w, fmt| {
        write_tour_csv(w, &point_set, &tour, fmt)?;
        writeln!(w, "{summary}")?;
        if let Some(line) = &brute_line {
            writeln!(w, "{line}")?;
        }
        Ok(())
    })
}

fn run_pulse(args: &PulseArgs) -> Result<(), Failure> {
    let ctx = Context::new(&args.common)?;
    let train =
        PulseTrain::new(args.pulses.clone(), args.gamma_phase.unwrap_or(0.0)).map_err(runtime)?;
    let propagator = compose_sequence(&train);
    ctx.emit(|w, fmt| write_matrix_csv(w, &propagator, fmt))
}

fn run_scan_search(args: &ScanSearchArgs) -> Result<(), Failure> {
    let ctx = Context::new(&args.common)?;
    let kind = args.kind.or(ctx.cfg.kind).unwrap_or(ScanKind::Hilbert);
    let seed = resolve_seed(args.seed, &ctx.cfg, true)?;
    let params = ScanSearchParams {
        e_min: args.e_min.unwrap_or(0.0),
        e_max: args.e_max.unwrap_or(4.0),
        order: resolve_order(args.order, None, 5)?,
        mu: args.mu.unwrap_or([1.0, 0.0]),
        duration: args.duration.unwrap_or(1.0),
        phi: args.phi.unwrap_or(FRAC_PI_4),
        initial: args.initial.unwrap_or([1.0, 0.0]),
        target: args.target.unwrap_or([0.0, 1.0]),
        threshold: args.threshold.unwrap_or(0.9),
        kind,
        seed,
    };
    let trace = control_scan_search(&params).map_err(runtime)?;
    let summary = format!("# {}", search_summary(&trace));
    ctx.emit(|w, fmt| {
        write_search_trace_csv(w, &trace, fmt)?;
        writeln!(w, "{summary}")
    })
}
