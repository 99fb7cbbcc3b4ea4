//! Command-line front end for `onebit-core`: constellation dumps, single
//! channel capacity queries, ergodic sweeps and training simulations.
//!
//! Every CSV file is written with a `<file>.manifest.json` next to it that
//! records the resolved parameters; rerunning with them reproduces the data
//! rows byte for byte.

pub mod output;
pub mod parse;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use onebit_core::capacity::codebook_size;
use onebit_core::montecarlo::{ergodic_sweep, SweepConfig, Variant};
use onebit_core::training::{ergodic_training_sweep, TrainingSweepConfig};
use onebit_core::{
    capacity_full_power, enumerate_constellation, miso_capacity, realify, siso_capacity, Complex64, ComplexChannel,
    FeedbackCodebook, FeedbackMode, PowerBudget,
};

use output::{fmt_sig, RunManifest, Table};
use parse::{parse_channel, parse_snr_grid};

#[derive(Debug, Parser)]
#[command(name = "onebit", version, about = "Capacity of MISO channels with one-bit DACs and ADCs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the subset look-up table as CSV.
    Constellation(ConstellationArgs),
    /// Capacity of one fixed channel.
    Capacity(CapacityArgs),
    /// Ergodic capacity over Rayleigh fading.
    Sweep(SweepArgs),
    /// Achieved rate of learned subset selection with finite-rate feedback.
    Train(TrainArgs),
}

#[derive(Debug, Args)]
pub struct ConstellationArgs {
    /// Transmit antennas (1..=8).
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    /// Channel entries, e.g. "1+0.5j, -0.2-1j".
    #[arg(long, value_parser = channel_arg, allow_hyphen_values = true)]
    pub h: ChannelArg,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma2: f64,
    /// Power budget in [1, 2M]; defaults to 2M.
    #[arg(long, allow_hyphen_values = true)]
    pub pt: Option<f64>,
    /// Also write the optimal support as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parsed channel plus the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelArg {
    pub text: String,
    pub entries: Vec<Complex64>,
}

fn channel_arg(s: &str) -> Result<ChannelArg, String> {
    Ok(ChannelArg { text: s.to_string(), entries: parse_channel(s)? })
}

/// Parsed SNR grid plus the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrGrid {
    pub text: String,
    pub db: Vec<f64>,
}

fn snr_arg(s: &str) -> Result<SnrGrid, String> {
    Ok(SnrGrid { text: s.to_string(), db: parse_snr_grid(s)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(alias = "onebit_both_csit")]
    Onebit,
    #[value(alias = "onebit_adc_inf_dac")]
    InfDac,
    #[value(alias = "siso_csir_only")]
    Csir,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Onebit => Variant::OneBitBoth,
            VariantArg::InfDac => Variant::OneBitAdcInfDac,
            VariantArg::Csir => Variant::SisoCsirOnly,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "M")]
    pub m: usize,
    /// SNR grid in dB as start:step:stop.
    #[arg(long, value_parser = snr_arg, default_value = "-10:2:20", allow_hyphen_values = true)]
    pub snr: SnrGrid,
    /// Channel draws per SNR point.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "onebit,inf-dac")]
    pub variants: Vec<VariantArg>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Dominant,
}

impl From<ModeArg> for FeedbackMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => FeedbackMode::Full,
            ModeArg::Dominant => FeedbackMode::Dominant,
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "dominant")]
    pub mode: Vec<ModeArg>,
    /// Repetitions per training vector; comma-separated for several.
    #[arg(long = "L", value_delimiter = ',', default_value = "10,20")]
    pub l: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_parser = snr_arg, default_value = "-10:2:20", allow_hyphen_values = true)]
    pub snr: SnrGrid,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Constellation(a) => cmd_constellation(&a, stdout),
        Command::Capacity(a) => cmd_capacity(&a, stdout),
        Command::Sweep(a) => cmd_sweep(&a, stdout),
        Command::Train(a) => cmd_train(&a, stdout),
    }
}

fn finish(table: &Table, manifest: RunManifest, out: &Path, stdout: &mut dyn Write) -> Result<()> {
    table.write(out)?;
    let m = manifest.write()?;
    writeln!(stdout, "wrote {} rows to {} (manifest {})", table.len(), out.display(), m.display())?;
    Ok(())
}

pub fn constellation_table(m: usize) -> Result<Table> {
    let cons = enumerate_constellation(m)?;
    let mut header = vec!["u".to_string(), "k".to_string()];
    header.extend((1..=2 * m).map(|i| format!("x{i}")));
    header.push("members".into());
    let mut table = Table::new(header);
    for (_, id, rep) in cons.iter() {
        let mut row = vec![id.u.to_string(), id.k.to_string()];
        row.extend(rep.iter().map(i8::to_string));
        row.push("4".into());
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_constellation(a: &ConstellationArgs, stdout: &mut dyn Write) -> Result<()> {
    let table = constellation_table(a.m)?;
    let manifest = RunManifest::new("constellation", json!({ "M": a.m }), None, &a.out);
    finish(&table, manifest, &a.out, stdout)
}

pub fn cmd_capacity(a: &CapacityArgs, stdout: &mut dyn Write) -> Result<()> {
    let h = ComplexChannel::new(a.h.entries.clone())?;
    let m = h.antennas();
    let pt = a.pt.unwrap_or(2.0 * m as f64);
    if !(1.0..=2.0 * m as f64).contains(&pt) {
        bail!("power budget {pt} outside [1, {}]", 2 * m);
    }
    let budget = PowerBudget::new(pt, m)?;
    let cons = enumerate_constellation(m)?;
    let hr = realify(&h);
    let result =
        if m == 1 { siso_capacity(&h, a.sigma2, budget)? } else { miso_capacity(&hr, a.sigma2, budget, &cons)? };
    let (_, best) = capacity_full_power(&hr, a.sigma2, &cons)?;
    let codebook = FeedbackCodebook::new(m, FeedbackMode::Full)?;
    let word = codebook.encode(&cons, best)?;

    writeln!(stdout, "capacity_bits: {}", fmt_sig(result.capacity_bits))?;
    writeln!(stdout, "case: {}", result.regime.as_str())?;
    writeln!(stdout, "support:")?;
    let entropies = hr.entropy_profile(&cons, a.sigma2)?;
    let mut table = Table::new(["u", "k", "probability", "entropy_bits", "capacity_bits", "case"]);
    for &(id, p) in result.distribution.masses() {
        if p <= 0.0 {
            continue;
        }
        let e = entropies[cons.index_of(id)?];
        writeln!(stdout, "  {id} p={} H={}", fmt_sig(p), fmt_sig(e))?;
        table.push(vec![
            id.u.to_string(),
            id.k.to_string(),
            fmt_sig(p),
            fmt_sig(e),
            fmt_sig(result.capacity_bits),
            result.regime.as_str().into(),
        ]);
    }
    writeln!(
        stdout,
        "best_subset: {best} feedback_index: {word} ({} bits of {} subsets)",
        codebook.bits(),
        codebook_size(m, FeedbackMode::Full)
    )?;
    if let Some(path) = &a.csv {
        let params = json!({ "h": a.h.text, "sigma2": a.sigma2, "pt": pt });
        finish(&table, RunManifest::new("capacity", params, None, path), path, stdout)?;
    }
    Ok(())
}

pub fn sweep_table(cfg: &SweepConfig) -> Result<Table> {
    let result = ergodic_sweep(cfg)?;
    let mut table = Table::new(["variant", "snr_db", "mean_bits", "stderr_bits", "num_channels", "seed"]);
    for curve in &result.curves {
        for p in &curve.points {
            table.push(vec![
                curve.variant.as_str().into(),
                fmt_sig(p.snr_db),
                fmt_sig(p.mean),
                fmt_sig(p.stderr),
                result.num_channels.to_string(),
                result.seed.to_string(),
            ]);
        }
    }
    Ok(table)
}

pub fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<()> {
    let cfg = SweepConfig {
        antennas: a.m,
        snr_grid_db: a.snr.db.clone(),
        num_channels: a.n,
        seed: a.seed,
        variants: a.variants.iter().map(|&v| v.into()).collect(),
    };
    let table = sweep_table(&cfg)?;
    let variants: Vec<&str> = cfg.variants.iter().map(|v| v.as_str()).collect();
    let params = json!({
        "M": a.m, "snr": a.snr.text, "snr_grid_db": a.snr.db, "n": a.n, "variants": variants,
    });
    finish(&table, RunManifest::new("sweep", params, Some(a.seed), &a.out), &a.out, stdout)
}

pub fn train_table(cfg: &TrainingSweepConfig) -> Result<Table> {
    let points = ergodic_training_sweep(cfg)?;
    let mut table = Table::new([
        "mode",
        "L",
        "snr_db",
        "mean_rate_bits",
        "capacity_bits",
        "gap_bits",
        "training_length",
        "feedback_bits",
        "seed",
    ]);
    for p in points {
        table.push(vec![
            p.mode.as_str().into(),
            p.repetitions.to_string(),
            fmt_sig(p.snr_db),
            fmt_sig(p.mean_rate),
            fmt_sig(p.capacity),
            fmt_sig(p.gap),
            p.training_length.to_string(),
            fmt_sig(p.feedback_bits),
            cfg.seed.to_string(),
        ]);
    }
    Ok(table)
}

pub fn cmd_train(a: &TrainArgs, stdout: &mut dyn Write) -> Result<()> {
    let cfg = TrainingSweepConfig {
        antennas: a.m,
        snr_grid_db: a.snr.db.clone(),
        num_channels: a.n,
        seed: a.seed,
        modes: a.mode.iter().map(|&m| m.into()).collect(),
        repetitions: a.l.clone(),
    };
    let table = train_table(&cfg)?;
    let modes: Vec<&str> = cfg.modes.iter().map(|m| m.as_str()).collect();
    let params = json!({
        "M": a.m, "mode": modes, "L": a.l, "n": a.n, "snr": a.snr.text, "snr_grid_db": a.snr.db,
    });
    finish(&table, RunManifest::new("train", params, Some(a.seed), &a.out), &a.out, stdout)
}
