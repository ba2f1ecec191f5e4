//! The `physec` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use physec_core::channel::capacity_sum;
use physec_core::codes::ghw_exact;
use physec_core::sweep::{evaluate, select_best, simulate_mc, sweep};
use physec_core::{
    BlockMapping, CapacityMode, ChannelGrid, Error as CoreError, Limits, Location, Point, RegionMap, RmRole,
    SweepPoint, WiretapCode, Word,
};

use crate::codespec::{self, CodeDescriptor};
use crate::fixtures;
use crate::formats::{self, fmt_num};
use crate::manifest::{FileRecord, Manifest};
use crate::sounding::{self, CaptureMeta};
use crate::synth::{synth_grid, EnvironmentConfig};

#[derive(Debug, Parser)]
#[command(
    name = "physec",
    version,
    about = "Wiretap code selection from channel-sounding data"
)]
pub struct Cli {
    /// Directory for output files.
    #[arg(long, global = true, env = "PHYSEC_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,

    /// Seed for every random draw; recorded in the manifest.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Estimate per-subcarrier SNR from a raw I/Q capture.
    Sound(SoundArgs),
    /// Generate a synthetic SNR grid from an environment description.
    Synth(SynthArgs),
    /// Map of subcarriers at or above a threshold at each location.
    Heatmap(HeatmapArgs),
    /// Map of sum capacity at each location.
    Capacity(CapacityArgs),
    /// Map of secrecy capacity against Bob's best location.
    Secrecy(SecrecyArgs),
    /// Equivocation matrix of a code.
    Eqmatrix(EqmatrixArgs),
    /// Generalized Hamming weights of a code and its dual.
    Ghw(GhwArgs),
    /// Throughput and equivocation of codes across thresholds; picks the best.
    Sweep(SweepArgs),
    /// Monte Carlo check of reliability and leakage.
    Simulate(SimulateArgs),
    /// Encode/decode walkthrough of a small code.
    Demo(DemoArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GridArg {
    /// Grid CSV; the bundled office grid when omitted.
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct RegionArgs {
    #[arg(long, default_value = fixtures::BOB_REGION)]
    pub bob_region: String,
    /// Eavesdropper region; repeat for several.
    #[arg(long = "eve-region")]
    pub eve_regions: Vec<String>,
    /// Region that is neither Bob's nor a potential eavesdropper's.
    #[arg(long = "exclude")]
    pub excluded: Vec<String>,
    /// Every region other than Bob's and the excluded ones is an eavesdropper region.
    #[arg(long)]
    pub all_other_regions: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// Raw SNRs.
    Raw,
    /// Subcarriers below --tau contribute nothing.
    Gate,
    /// Every SNR shifted by --offset-db.
    Offset,
}

#[derive(Debug, Args, Serialize)]
pub struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Raw)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 27.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub offset_db: f64,
}

impl ModeArgs {
    fn mode(&self) -> CapacityMode {
        match self.mode {
            ModeArg::Raw => CapacityMode::Raw,
            ModeArg::Gate => CapacityMode::Gate { tau_db: self.tau },
            ModeArg::Offset => CapacityMode::PowerOffset { db: self.offset_db },
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SoundArgs {
    /// Raw capture (interleaved little-endian f32 I/Q).
    #[arg(long, required_unless_present = "synthetic_snr_db")]
    pub iq: Option<PathBuf>,
    /// Sidecar JSON; defaults to the capture path with a .json extension.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Write a synthetic capture at this uniform SNR to the output directory and process it.
    #[arg(long, conflicts_with = "iq")]
    pub synthetic_snr_db: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub y: f64,
    #[arg(long, default_value = "unlabeled")]
    pub region: String,
    #[arg(long, default_value = "sound.csv")]
    pub output: String,
}

#[derive(Debug, Args, Serialize)]
pub struct SynthArgs {
    /// Environment JSON; the bundled office when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides the configured transmit-power offset.
    #[arg(long, allow_hyphen_values = true)]
    pub tx_power_offset_db: Option<f64>,
    #[arg(long, default_value = "grid.csv")]
    pub output: String,
}

#[derive(Debug, Args, Serialize)]
pub struct HeatmapArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArg,
    #[arg(long, default_value_t = 25.0)]
    pub tau: f64,
    #[arg(long, default_value = "heatmap")]
    pub output: String,
    #[arg(long)]
    pub no_svg: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CapacityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub mode: ModeArgs,
    #[arg(long, default_value = "capacity")]
    pub output: String,
    #[arg(long)]
    pub no_svg: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SecrecyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub regions: RegionArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub mode: ModeArgs,
    #[arg(long, default_value = "secrecy")]
    pub output: String,
    #[arg(long)]
    pub no_svg: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct EqmatrixArgs {
    /// table1, rm:U,M, rm-dual:U,M or a JSON descriptor.
    #[arg(long, default_value = "table1")]
    pub code: String,
    /// Largest blocklength to enumerate erasure patterns for.
    #[arg(long, default_value_t = Limits::default().enumeration)]
    pub enum_cap: usize,
    #[arg(long, default_value = "eqmatrix.csv")]
    pub output: String,
}

#[derive(Debug, Args, Serialize)]
pub struct GhwArgs {
    #[arg(long, default_value = "table1")]
    pub code: String,
    /// Largest blocklength for exact search.
    #[arg(long, default_value_t = Limits::default().ghw_exact)]
    pub ghw_cap: usize,
    #[arg(long, default_value = "ghw.csv")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RolesArg {
    Both,
    Code,
    Dual,
}

impl RolesArg {
    fn roles(self) -> Vec<RmRole> {
        match self {
            RolesArg::Both => vec![RmRole::Code, RmRole::Dual],
            RolesArg::Code => vec![RmRole::Code],
            RolesArg::Dual => vec![RmRole::Dual],
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MappingArg {
    Adversarial,
    RoundRobin,
}

impl From<MappingArg> for BlockMapping {
    fn from(m: MappingArg) -> Self {
        match m {
            MappingArg::Adversarial => BlockMapping::Adversarial,
            MappingArg::RoundRobin => BlockMapping::RoundRobin,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub regions: RegionArgs,
    /// Code or family; repeat for several.
    #[arg(long = "code", default_value = "rm-family:5")]
    pub codes: Vec<String>,
    /// Which RM orientations a family expands to.
    #[arg(long, value_enum, default_value_t = RolesArg::Both)]
    pub roles: RolesArg,
    /// Thresholds in dB, comma separated.
    #[arg(long = "tau", value_delimiter = ',', default_values_t = fixtures::TAUS_DB)]
    pub taus: Vec<f64>,
    #[arg(long, value_enum, default_value_t = MappingArg::Adversarial)]
    pub mapping: MappingArg,
    /// Select the best point without requiring full equivocation.
    #[arg(long)]
    pub allow_leakage: bool,
    #[arg(long, default_value = "frontier")]
    pub output: String,
    #[arg(long)]
    pub no_svg: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub regions: RegionArgs,
    #[arg(long, default_value = "rm-dual:1,2")]
    pub code: String,
    #[arg(long, default_value_t = 27.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Largest blocklength for the brute-force posterior.
    #[arg(long, default_value_t = Limits::default().oracle)]
    pub oracle_cap: usize,
    /// Reliability target: largest acceptable Bob error rate.
    #[arg(long, default_value_t = 0.0)]
    pub delta_r: f64,
    /// Security target: largest acceptable mean leakage in bits.
    #[arg(long, default_value_t = 0.0)]
    pub delta_s: f64,
    #[arg(long, default_value = "simulate.json")]
    pub output: String,
}

#[derive(Debug, Args, Serialize)]
pub struct DemoArgs {
    #[arg(long, default_value = "table1")]
    pub code: String,
    #[arg(long, default_value = "demo.csv")]
    pub output: String,
}

/// Files and manifest for one run.
struct Run {
    dir: PathBuf,
    manifest: Manifest,
}

impl Run {
    fn new(cli: &Cli, args: Vec<String>, name: &str) -> anyhow::Result<Self> {
        fs::create_dir_all(&cli.out_dir).with_context(|| format!("creating {}", cli.out_dir.display()))?;
        let config = serde_json::to_value(&cli.command)?;
        let config = config.get(name).cloned().unwrap_or(config);
        Ok(Self {
            dir: cli.out_dir.clone(),
            manifest: Manifest::new(name, args, cli.seed, config),
        })
    }

    fn input(&mut self, name: &str, contents: &[u8]) {
        self.manifest.inputs.push(FileRecord::new(name, contents));
    }

    fn output(&mut self, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
        let path = self.dir.join(name);
        formats::write_text(&path, contents)?;
        self.manifest.outputs.push(FileRecord::new(name, contents.as_bytes()));
        Ok(path)
    }

    fn finish(self) -> anyhow::Result<()> {
        self.manifest.write(&self.dir)?;
        Ok(())
    }
}

fn load_grid(arg: &GridArg, run: &mut Run) -> anyhow::Result<ChannelGrid> {
    match &arg.grid {
        Some(path) => {
            let text = formats::read_text(path)?;
            run.input(&path.display().to_string(), text.as_bytes());
            Ok(formats::parse_grid(&text, path)?)
        }
        None => {
            run.input(fixtures::GRID_NAME, fixtures::GRID_CSV.as_bytes());
            Ok(fixtures::grid())
        }
    }
}

fn region_map(args: &RegionArgs, grid: &ChannelGrid) -> anyhow::Result<RegionMap> {
    let mut eves = args.eve_regions.clone();
    if args.all_other_regions {
        eves.extend(
            grid.regions()
                .into_iter()
                .filter(|r| *r != args.bob_region && !args.excluded.iter().any(|e| e == r))
                .map(String::from),
        );
    }
    let map = RegionMap::new(args.bob_region.clone(), eves).excluding(args.excluded.clone());
    match map.eve_locations(grid) {
        Ok(_) => Ok(map),
        Err(CoreError::NoEveRegions) => bail!(
            "no eavesdropper regions: pass --eve-region NAME (repeatable) or --all-other-regions; grid regions are {:?}",
            grid.regions()
        ),
        Err(e) => Err(e).context(format!("region map against grid regions {:?}", grid.regions())),
    }
}

fn code_input(run: &mut Run, spec: &str) {
    let path = Path::new(spec);
    if path.extension().is_some_and(|e| e == "json") {
        if let Ok(bytes) = fs::read(path) {
            run.input(spec, &bytes);
        }
    }
}

fn maps(run: &mut Run, grid: &ChannelGrid, values: &[f64], base: &str, title: &str, svg: bool) -> anyhow::Result<()> {
    run.output(&format!("{base}.csv"), &formats::heatmap_csv(grid, values))?;
    if svg {
        run.output(&format!("{base}.svg"), &formats::heatmap_svg(grid, values, title))?;
    }
    Ok(())
}

fn summary(values: &[f64]) -> (f64, f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (min, values.iter().sum::<f64>() / values.len() as f64, max)
}

fn cmd_sound(cli: &Cli, a: &SoundArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    let iq_path = match (&a.iq, a.synthetic_snr_db) {
        (Some(p), _) => p.clone(),
        (None, Some(db)) => {
            let cap = sounding::synthesize_capture(&[Some(db); 64], CaptureMeta::default(), true, cli.seed);
            let p = run.dir.join("capture.iq");
            sounding::write_capture(&p, &cap)?;
            writeln!(out, "wrote synthetic capture {} at {} dB", p.display(), fmt_num(db))?;
            p
        }
        (None, None) => bail!("--iq or --synthetic-snr-db is required"),
    };
    let cap = sounding::read_capture(&iq_path, a.sidecar.as_deref())?;
    if a.iq.is_some() {
        let side = a.sidecar.clone().unwrap_or_else(|| sounding::sidecar_path(&iq_path));
        run.input(&iq_path.display().to_string(), &fs::read(&iq_path)?);
        run.input(&side.display().to_string(), &fs::read(&side)?);
    }
    let snr = sounding::snr_estimate(&cap)?;
    let loc = Location {
        x: a.x,
        y: a.y,
        region: a.region.clone(),
    };
    let grid = ChannelGrid::from_rows(vec![loc], vec![snr.clone()], Point { x: 0.0, y: 0.0 }, 0.0)?;
    run.output(&a.output, &formats::grid_to_csv(&grid))?;
    let (lo, mean, hi) = summary(&snr);
    writeln!(
        out,
        "{} segments, subcarrier SNR min {} / mean {} / max {} dB, capacity {} bits per channel use",
        (cap.iq.len() / sounding::FFT_LEN).min(cap.meta.periods),
        fmt_num(lo),
        fmt_num(mean),
        fmt_num(hi),
        fmt_num(capacity_sum(&snr))
    )?;
    Ok(())
}

fn cmd_synth(cli: &Cli, a: &SynthArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    let mut cfg: EnvironmentConfig = match &a.config {
        Some(path) => {
            let text = formats::read_text(path)?;
            run.input(&path.display().to_string(), text.as_bytes());
            serde_json::from_str(&text).map_err(|e| crate::Error::json(path, e))?
        }
        None => {
            run.input("bundled:office.json", fixtures::ENVIRONMENT_JSON.as_bytes());
            fixtures::environment()
        }
    };
    if let Some(db) = a.tx_power_offset_db {
        cfg.tx_power_offset_db = db;
    }
    let grid = synth_grid(&cfg, cli.seed)?;
    run.output(&a.output, &formats::grid_to_csv(&grid))?;
    writeln!(out, "{} locations in regions {:?}", grid.len(), grid.regions())?;
    Ok(())
}

fn cmd_heatmap(a: &HeatmapArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    let grid = load_grid(&a.grid, run)?;
    let counts: Vec<f64> = grid.reliable_map(a.tau).into_iter().map(|c| c as f64).collect();
    let title = format!("subcarriers with SNR >= {} dB", fmt_num(a.tau));
    maps(run, &grid, &counts, &a.output, &title, !a.no_svg)?;
    let (lo, mean, hi) = summary(&counts);
    writeln!(
        out,
        "reliable subcarriers at {} dB: min {} / mean {} / max {}",
        fmt_num(a.tau),
        lo,
        fmt_num(mean),
        hi
    )?;
    Ok(())
}

fn cmd_capacity(a: &CapacityArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    let grid = load_grid(&a.grid, run)?;
    let cap = grid.capacity_map(a.mode.mode());
    maps(
        run,
        &grid,
        &cap,
        &a.output,
        "capacity (bits per channel use)",
        !a.no_svg,
    )?;
    let (lo, mean, hi) = summary(&cap);
    writeln!(
        out,
        "capacity: min {} / mean {} / max {}",
        fmt_num(lo),
        fmt_num(mean),
        fmt_num(hi)
    )?;
    Ok(())
}

fn cmd_secrecy(a: &SecrecyArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    let grid = load_grid(&a.grid, run)?;
    let bob = grid.best_location(&a.regions.bob_region)?;
    let sec = grid.secrecy_map(bob, a.mode.mode());
    maps(
        run,
        &grid,
        &sec,
        &a.output,
        "secrecy capacity (bits per channel use)",
        !a.no_svg,
    )?;
    let b = grid.location(bob);
    writeln!(out, "Bob at location {bob} ({}, {})", fmt_num(b.x), fmt_num(b.y))?;
    if !a.regions.eve_regions.is_empty() || a.regions.all_other_regions {
        let map = region_map(&a.regions, &grid)?;
        let eves = map.eve_locations(&grid)?;
        let (worst, value) =
            eves.iter().map(|&i| (i, sec[i])).fold(
                (usize::MAX, f64::INFINITY),
                |acc, (i, v)| if v < acc.1 { (i, v) } else { acc },
            );
        writeln!(
            out,
            "minimum secrecy capacity over eavesdropper locations: {} at location {worst}",
            fmt_num(value)
        )?;
    }
    Ok(())
}

fn cmd_eqmatrix(a: &EqmatrixArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    code_input(run, &a.code);
    let w = codespec::resolve_one(&a.code)?;
    let m = w.equivocation_matrix(a.enum_cap)?;
    let csv = formats::eqmatrix_csv(&m);
    run.output(&a.output, &csv)?;
    writeln!(out, "{} (n={}, k={})", w.label(), w.n(), w.k())?;
    out.push_str(&csv);
    Ok(())
}

fn cmd_ghw(a: &GhwArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    code_input(run, &a.code);
    let w = codespec::resolve_one(&a.code)?;
    let base = if w.n() <= a.ghw_cap {
        Some(ghw_exact(w.base_code(), a.ghw_cap)?)
    } else {
        None
    };
    let (dual, source) = w.dual_ghw().ok_or(CoreError::GhwUnavailable)?;
    let mut csv = String::from("code,r,d_r\n");
    if let Some(p) = &base {
        for (r, d) in p.weights().iter().enumerate() {
            writeln!(csv, "base,{},{d}", r + 1)?;
        }
    }
    for (r, d) in dual.weights().iter().enumerate() {
        writeln!(csv, "dual,{},{d}", r + 1)?;
    }
    run.output(&a.output, &csv)?;
    writeln!(out, "{} (n={}, k={})", w.label(), w.n(), w.k())?;
    if let Some(p) = &base {
        writeln!(out, "base code GHWs: {:?}", p.weights())?;
    }
    writeln!(out, "dual code GHWs: {:?} ({source:?})", dual.weights())?;
    let leak: Vec<usize> = (0..=w.n())
        .map(|mu| w.worst_case_leakage(mu))
        .collect::<Result<_, _>>()?;
    writeln!(out, "worst-case leakage by revealed bits 0..={}: {leak:?}", w.n())?;
    Ok(())
}

fn point_line(p: &SweepPoint) -> String {
    format!(
        "{} (n={}, k={}) at tau {} dB: {} active subcarriers, throughput {} bits per channel use, equivocation {}%",
        p.code_label,
        p.n,
        p.k,
        fmt_num(p.tau_db),
        p.active_carriers,
        fmt_num(p.throughput),
        fmt_num(p.min_equivocation_pct)
    )
}

fn cmd_sweep(a: &SweepArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    let grid = load_grid(&a.grid, run)?;
    let regions = region_map(&a.regions, &grid)?;
    if a.taus.is_empty() {
        bail!("no thresholds given");
    }
    let mut codes: Vec<WiretapCode> = Vec::new();
    for spec in &a.codes {
        code_input(run, spec);
        codes.extend(codespec::resolve(spec, &a.roles.roles())?);
    }
    let mut points = Vec::new();
    for (i, r) in sweep(&codes, &grid, &regions, &a.taus, a.mapping.into())?
        .into_iter()
        .enumerate()
    {
        match r {
            Ok(p) => points.push(p),
            Err(e) => {
                let (c, t) = (i / a.taus.len(), i % a.taus.len());
                writeln!(out, "skipped {} at tau {}: {e}", codes[c].label(), fmt_num(a.taus[t]))?;
            }
        }
    }
    run.output(&format!("{}.csv", a.output), &formats::frontier_csv(&points))?;
    if !a.no_svg {
        run.output(&format!("{}.svg", a.output), &formats::frontier_svg(&points))?;
    }
    let require_full = !a.allow_leakage;
    let best = select_best(&points, require_full);
    let report = match &best {
        Ok(p) => {
            writeln!(out, "best: {}", point_line(p))?;
            let bob = grid.best_location(&regions.bob_region)?;
            let cs = regions
                .eve_locations(&grid)?
                .into_iter()
                .map(|i| grid.secrecy_map(bob, CapacityMode::Raw)[i])
                .fold(f64::INFINITY, f64::min);
            writeln!(
                out,
                "minimum secrecy capacity over eavesdropper locations: {} bits per channel use (reported alongside, not reconciled)",
                fmt_num(cs)
            )?;
            serde_json::json!({
                "status": "ok",
                "require_full_equivocation": require_full,
                "code_label": p.code_label,
                "n": p.n,
                "k": p.k,
                "tau_db": fmt_num(p.tau_db),
                "active_carriers": p.active_carriers,
                "throughput": fmt_num(p.throughput),
                "min_equivocation_pct": fmt_num(p.min_equivocation_pct),
                "worst_eve_location": p.worst_eve_location,
                "min_secrecy_capacity": fmt_num(cs),
            })
        }
        Err(CoreError::NoSecurePoint) => {
            writeln!(
                out,
                "no secure operating point: no code reaches full equivocation at any threshold"
            )?;
            serde_json::json!({ "status": "no-secure-point", "require_full_equivocation": require_full })
        }
        Err(e) => return Err(e.clone().into()),
    };
    run.output(
        &format!("{}-best.json", a.output),
        &(serde_json::to_string_pretty(&report)? + "\n"),
    )?;
    writeln!(out, "{} points written", points.len())?;
    Ok(())
}

fn cmd_simulate(cli: &Cli, a: &SimulateArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    let grid = load_grid(&a.grid, run)?;
    let regions = region_map(&a.regions, &grid)?;
    code_input(run, &a.code);
    let w = codespec::resolve_one(&a.code)?;
    let point = evaluate(&w, &grid, &regions, a.tau, BlockMapping::Adversarial)?;
    let r = simulate_mc(&w, &grid, &regions, a.tau, a.trials, cli.seed, a.oracle_cap)?;
    let reliable = r.bob_error_rate <= a.delta_r;
    let secure = r.eve_leakage_bits_mean <= a.delta_s;
    let report = serde_json::json!({
        "code_label": w.label(),
        "n": w.n(),
        "k": w.k(),
        "tau_db": fmt_num(a.tau),
        "trials": r.trials,
        "bob_errors": r.bob_errors,
        "bob_error_rate": fmt_num(r.bob_error_rate),
        "eve_leakage_bits_mean": fmt_num(r.eve_leakage_bits_mean),
        "eve_leakage_bits_max": fmt_num(r.eve_leakage_bits_max),
        "mu_star": r.mu_star,
        "worst_case_leakage": r.worst_case_bound,
        "throughput": fmt_num(point.throughput),
        "delta_r": fmt_num(a.delta_r),
        "delta_s": fmt_num(a.delta_s),
        "reliability_met": reliable,
        "security_met": secure,
    });
    run.output(&a.output, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    writeln!(
        out,
        "{}: Bob error rate {}, Eve leakage mean {} / max {} bits (bound {} at mu* = {}); reliability {}, security {}",
        w.label(),
        fmt_num(r.bob_error_rate),
        fmt_num(r.eve_leakage_bits_mean),
        fmt_num(r.eve_leakage_bits_max),
        r.worst_case_bound,
        r.mu_star,
        if reliable { "met" } else { "missed" },
        if secure { "met" } else { "missed" },
    )?;
    Ok(())
}

/// Largest blocklength the demo will tabulate.
const DEMO_MAX_N: usize = 10;

fn cmd_demo(a: &DemoArgs, run: &mut Run, out: &mut String) -> anyhow::Result<()> {
    code_input(run, &a.code);
    let w = codespec::resolve_one(&a.code)?;
    if w.n() > DEMO_MAX_N {
        bail!(
            "demo tabulates codes with n <= {DEMO_MAX_N}; {} has n = {}",
            w.label(),
            w.n()
        );
    }
    let (n, k) = (w.n(), w.k());
    let d = CodeDescriptor::of(&w);
    writeln!(out, "{} (n={n}, k={k})", w.label())?;
    writeln!(out, "G  = {:?}", d.generator)?;
    writeln!(out, "G' = {:?}", w.gprime().to_bitstrings())?;
    writeln!(out, "H  = {:?}", w.parity_check().to_bitstrings())?;
    writeln!(out, "syndrome equals message: {}", w.syndrome_is_message())?;
    writeln!(out)?;

    let aux_count = 1u64 << (n - k);
    let mut header = format!("{:>width$} |", "m\\m'", width = k.max(4));
    for a in 0..aux_count {
        write!(
            header,
            " {:>width$}",
            Word::from_msb_value(n - k, a).to_string(),
            width = n
        )?;
    }
    writeln!(out, "{header}")?;
    let mut csv = String::from("m,m_prime,codeword,syndrome,decoded\n");
    let mut failures = 0;
    for m in 0..1u64 << k {
        let mw = Word::from_msb_value(k, m);
        let mut line = format!("{:>width$} |", mw.to_string(), width = k.max(4));
        for a in 0..aux_count {
            let aw = Word::from_msb_value(n - k, a);
            let x = w.encode(&mw, &aw)?;
            let decoded = w.decode(&x)?;
            failures += usize::from(decoded != mw);
            write!(line, " {x}")?;
            writeln!(csv, "{mw},{aw},{x},{},{decoded}", w.syndrome(&x)?)?;
        }
        writeln!(out, "{line}")?;
    }
    writeln!(
        out,
        "\ndecoded {} of {} codewords correctly",
        (1u64 << n) - failures as u64,
        1u64 << n
    )?;
    writeln!(
        out,
        "\nequivocation matrix (rows: equivocation bits, columns: revealed bits)"
    )?;
    out.push_str(&formats::eqmatrix_csv(
        &w.equivocation_matrix(Limits::default().enumeration)?,
    ));
    run.output(&a.output, &csv)?;
    if failures > 0 {
        bail!("{failures} codewords decoded to the wrong message");
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Sound(_) => "sound",
        Command::Synth(_) => "synth",
        Command::Heatmap(_) => "heatmap",
        Command::Capacity(_) => "capacity",
        Command::Secrecy(_) => "secrecy",
        Command::Eqmatrix(_) => "eqmatrix",
        Command::Ghw(_) => "ghw",
        Command::Sweep(_) => "sweep",
        Command::Simulate(_) => "simulate",
        Command::Demo(_) => "demo",
    }
}

/// Runs a parsed command; returns the text report.
pub fn execute(cli: &Cli, args: Vec<String>) -> anyhow::Result<String> {
    let name = command_name(&cli.command);
    let mut run = Run::new(cli, args, name)?;
    let mut out = String::new();
    match &cli.command {
        Command::Sound(a) => cmd_sound(cli, a, &mut run, &mut out)?,
        Command::Synth(a) => cmd_synth(cli, a, &mut run, &mut out)?,
        Command::Heatmap(a) => cmd_heatmap(a, &mut run, &mut out)?,
        Command::Capacity(a) => cmd_capacity(a, &mut run, &mut out)?,
        Command::Secrecy(a) => cmd_secrecy(a, &mut run, &mut out)?,
        Command::Eqmatrix(a) => cmd_eqmatrix(a, &mut run, &mut out)?,
        Command::Ghw(a) => cmd_ghw(a, &mut run, &mut out)?,
        Command::Sweep(a) => cmd_sweep(a, &mut run, &mut out)?,
        Command::Simulate(a) => cmd_simulate(cli, a, &mut run, &mut out)?,
        Command::Demo(a) => cmd_demo(a, &mut run, &mut out)?,
    }
    run.finish()?;
    Ok(out)
}

/// Parses `argv` (program name first) and runs it.
pub fn run<I, T>(argv: I) -> anyhow::Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv)?;
    let recorded = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    execute(&cli, recorded)
}

pub fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let recorded = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, recorded) {
        Ok(report) => {
            let _ = std::io::stdout().write_all(report.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
