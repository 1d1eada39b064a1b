use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use mdmimo_core::economics::reference_ratios;
use mdmimo_core::{
    build_scenario, CostRatios, Evaluator, NumeratorMode, ReferenceCosts, Scenario,
    TransportVariant,
};

use crate::config::RunConfig;
use crate::dump::ScenarioDump;
use crate::error::CliError;
use crate::output::{self, ReferenceEcho, SweepMetadata};
use crate::report::OptimizeRecord;
use crate::sweep::run_sweep_parallel;
use crate::{TOOL_NAME, TOOL_VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "mdmimo",
    version,
    about = "Cost-optimal antennas, spectrum and PON transport for distributed MIMO"
)]
pub struct Cli {
    /// TOML configuration file; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Overrides scenario.rng_seed.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Transport model(s): fronthaul-overlay, fronthaul-shared, split-phy-shared.
    #[arg(long = "model", global = true, value_name = "NAME")]
    pub models: Vec<String>,
    /// Output file (scenario dump or sweep CSV).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Rate numerator: corrected (bit/s) or literal (no bandwidth factor).
    #[arg(long, global = true, value_name = "MODE")]
    pub numerator: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the seeded scenario and write its dump.
    GenerateScenario,
    /// Exhaustive search for one cost point.
    Optimize {
        /// Spectrum-to-wavelength price ratio; defaults to the reference ratio.
        #[arg(long)]
        r_wb: Option<f64>,
        /// Wavelength-to-antenna price ratio; defaults to the reference ratio.
        #[arg(long)]
        r_bm: Option<f64>,
        /// Also write every evaluated grid point to this CSV.
        #[arg(long, value_name = "PATH")]
        dump_grid: Option<PathBuf>,
    },
    /// Optimize over the configured ratio grid and write CSV plus metadata.
    Sweep {
        /// Worker threads; 1 runs serially.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Derive the reference prices and ratios from the configured lease figures.
    RefCosts,
    /// Print the default configuration.
    DefaultConfig,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load_or_default(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.scenario.rng_seed = seed;
    }
    if let Some(mode) = &cli.numerator {
        cfg.numerator = mode.parse::<NumeratorMode>().map_err(|_| {
            CliError::Usage(format!(
                "unknown numerator mode `{mode}` (corrected|literal)"
            ))
        })?;
    }
    if let Some(out) = &cli.out {
        cfg.output = out.clone();
    }
    if !cli.models.is_empty() {
        let mut models = parse_models(&cli.models)?;
        models.sort();
        models.dedup();
        cfg.sweep.models = models;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_models(names: &[String]) -> Result<Vec<TransportVariant>, CliError> {
    names
        .iter()
        .map(|n| {
            n.parse::<TransportVariant>()
                .map_err(|_| CliError::Usage(format!("unknown model `{n}`")))
        })
        .collect()
}

fn reference(cfg: &RunConfig) -> Result<ReferenceCosts, CliError> {
    reference_ratios(&cfg.economics.reference).map_err(CliError::Model)
}

fn scenario(cfg: &RunConfig) -> Result<Scenario, CliError> {
    build_scenario(&cfg.scenario).map_err(CliError::Model)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if let Command::DefaultConfig = cli.command {
        return out
            .write_all(RunConfig::reference_toml().as_bytes())
            .map_err(|e| CliError::io("<stdout>", e));
    }
    let cfg = resolve_config(cli)?;
    match &cli.command {
        Command::GenerateScenario => generate_scenario(&cfg, cli.out.as_deref(), out),
        Command::Optimize {
            r_wb,
            r_bm,
            dump_grid,
        } => optimize(&cfg, *r_wb, *r_bm, dump_grid.as_deref(), out),
        Command::Sweep { jobs } => sweep(&cfg, *jobs, out),
        Command::RefCosts => ref_costs(&cfg, out),
        Command::DefaultConfig => unreachable!(),
    }
}

fn generate_scenario(
    cfg: &RunConfig,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let s = scenario(cfg)?;
    let dump = ScenarioDump::new(&cfg.scenario, &s);
    match path {
        Some(p) => {
            output::write_atomic(p, dump.to_json().as_bytes())?;
            writeln!(
                out,
                "wrote {}: {} users, {} antennas, {} PONs (seed {})",
                p.display(),
                s.num_users(),
                s.num_antennas(),
                s.num_pons(),
                cfg.scenario.rng_seed
            )
        }
        None => out.write_all(dump.to_json().as_bytes()),
    }
    .map_err(|e| CliError::io("<stdout>", e))
}

fn optimize(
    cfg: &RunConfig,
    r_wb: Option<f64>,
    r_bm: Option<f64>,
    dump_grid: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let s = scenario(cfg)?;
    let refs = reference(cfg)?.ratios;
    let ratios = CostRatios::new(
        r_wb.unwrap_or(refs.spectrum_to_wavelength),
        r_bm.unwrap_or(refs.wavelength_to_antenna),
    )
    .map_err(|_| CliError::Usage("cost ratios must be positive".into()))?;
    let cp = ratios
        .to_cost_point(cfg.sweep.normalization)
        .map_err(CliError::Model)?;
    let mut grid_rows = Vec::new();
    for &variant in &cfg.sweep.models {
        let t = cfg.transport.model(variant).map_err(CliError::Model)?;
        let ev = Evaluator::new(&s, &t, cp, cfg.numerator).map_err(CliError::Model)?;
        let opt = ev
            .optimize(cfg.max_bandwidth_mhz)
            .map_err(CliError::Runtime)?;
        let rec = OptimizeRecord::new(&t, &cp, cfg.numerator, &opt);
        write!(out, "{}", rec.to_text())
            .and_then(|_| writeln!(out, "{}", rec.to_json_line()))
            .map_err(|e| CliError::io("<stdout>", e))?;
        if dump_grid.is_some() {
            for e in ev.grid(cfg.max_bandwidth_mhz).map_err(CliError::Runtime)? {
                grid_rows.push([
                    variant.name().to_string(),
                    e.bandwidth_mhz().to_string(),
                    e.num_antennas().to_string(),
                    output::fmt_float(e.sum_rate),
                    e.n_wavelengths.to_string(),
                    output::fmt_float(e.cost.total),
                    output::fmt_float(e.eta),
                ]);
            }
        }
    }
    if let Some(path) = dump_grid {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        w.write_record([
            "model",
            "w",
            "m",
            "sum_rate",
            "n_wavelengths",
            "cost_total",
            "eta",
        ])
        .map_err(fail)?;
        for row in &grid_rows {
            w.write_record(row).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| fail(e.into_error().into()))?;
        output::write_atomic(path, &bytes)?;
    }
    Ok(())
}

fn sweep(cfg: &RunConfig, jobs: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let s = scenario(cfg)?;
    let refs = reference(cfg)?;
    let records = run_sweep_parallel(
        &s,
        &cfg.transport,
        &cfg.sweep,
        cfg.max_bandwidth_mhz,
        cfg.numerator,
        jobs,
    )
    .map_err(CliError::Runtime)?;
    let meta = SweepMetadata {
        tool: TOOL_NAME.into(),
        tool_version: TOOL_VERSION.into(),
        seed: cfg.scenario.rng_seed,
        config_hash: cfg.hash(),
        numerator_mode: cfg.numerator.name().into(),
        max_bandwidth_mhz: cfg.max_bandwidth_mhz,
        records: records.len(),
        num_users: s.num_users(),
        num_antennas: s.num_antennas(),
        num_pons: s.num_pons(),
        shaded_region: cfg.sweep.shaded_region,
        normalization: cfg.sweep.normalization,
        reference: ReferenceEcho {
            c_w: refs.prices.spectrum_per_mhz,
            c_m: refs.prices.antenna,
            c_b: refs.prices.wavelength,
            r_wb: refs.ratios.spectrum_to_wavelength,
            r_bm: refs.ratios.wavelength_to_antenna,
        },
    };
    output::write_sweep(&cfg.output, &records, &meta)?;
    writeln!(
        out,
        "wrote {} records to {} ({} numerator, config {})",
        records.len(),
        cfg.output.display(),
        cfg.numerator,
        &meta.config_hash[..12]
    )
    .map_err(|e| CliError::io("<stdout>", e))
}

fn ref_costs(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let inputs = &cfg.economics.reference;
    let refs = reference(cfg)?;
    let p = refs.prices;
    let r = refs.ratios;
    let mut text = String::new();
    use std::fmt::Write as _;
    let _ = writeln!(
        text,
        "c_w = {} GBP/MHz/habitant x {} habitants / {} years x {} USD/GBP = {:.6} USD/MHz/year",
        inputs.spectrum_price_gbp,
        inputs.habitants,
        inputs.lease_years,
        inputs.fx_gbp_usd,
        p.spectrum_per_mhz
    );
    let _ = writeln!(
        text,
        "c_m = {} USD/month x 12 = {:.2} USD/antenna/year",
        inputs.site_monthly_usd, p.antenna
    );
    let _ = writeln!(text, "c_b = {:.2} USD/wavelength/year", p.wavelength);
    let _ = writeln!(text, "R_wb = c_w / c_b = {:.6}", r.spectrum_to_wavelength);
    let _ = writeln!(text, "R_bm = c_b / c_m = {:.6}", r.wavelength_to_antenna);
    let mut json = serde_json::json!({
        "c_w": p.spectrum_per_mhz,
        "c_m": p.antenna,
        "c_b": p.wavelength,
        "R_wb": r.spectrum_to_wavelength,
        "R_bm": r.wavelength_to_antenna,
    });
    if let Some(dcf) = &cfg.economics.wavelength_dcf {
        let annual = dcf.annual().map_err(CliError::Model)?;
        let _ = writeln!(
            text,
            "wavelength DCF: capex {} at WACC {} over {} years, ROI {}, OPEX {} -> {:.2} per year",
            dcf.capex, dcf.wacc, dcf.horizon_years, dcf.roi, dcf.opex_fraction, annual
        );
        json["wavelength_dcf_annual"] = annual.into();
    }
    let _ = writeln!(text, "{json}");
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}
