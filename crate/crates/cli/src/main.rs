//! Command-line front end: evaluates single functionals, runs inequality
//! suites and full verification scenarios, and emits one CSV/JSON row per
//! result. Exit status: 0 when everything holds, 1 on any violated check,
//! 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use radma::config::FileConfig;
use radma::envelope::{self, EnvelopeGrid};
use radma::inequalities::{self as ineq, num, params, Verdict};
use radma::report::{self, Row};
use radma::scenarios::{self, ScenarioOpts};
use radma::{QuadConfig, RadialPotential, Weight};

#[derive(Parser)]
#[command(
    name = "radma",
    version,
    about = "Radial Monge-Ampere laboratory: finiteness verdicts, envelopes, inequality checks",
    after_help = "Defaults: rel-tol 1e-8, t-floor -1e6, tail-window -1e5,-1e2, delta-margin 0.05, \
                  max-subdivisions 4000, format csv, seed 42. A TOML config supplying the same \
                  keys may be passed with --config or the RADMA_CONFIG environment variable; \
                  explicit flags win over the file."
)]
struct Cli {
    /// TOML config file with `[quad]` and `[output]` sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Lower truncation standing in for -infinity.
    #[arg(long, global = true, allow_hyphen_values = true)]
    t_floor: Option<f64>,

    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    /// Tail-fit window as `lo,hi` (both negative).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    tail_window: Option<Vec<f64>>,

    /// Half-width of the undecidable band around tail exponent -1.
    #[arg(long, global = true)]
    delta_margin: Option<f64>,

    /// Panel subdivision budget.
    #[arg(long, global = true)]
    max_subdivisions: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized sweeps; recorded in the output.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct PotentialArgs {
    /// Weight spec: power:A, divpower:R, exp, softplus, linear, zero,
    /// `ts:<base>:<eps>:<shift>`.
    #[arg(long)]
    weight: Option<String>,

    /// Shorthand for `--weight power:<alpha>`.
    #[arg(long)]
    alpha: Option<f64>,

    /// Complex dimension (default 2; scenarios sweep their own set when omitted).
    #[arg(long)]
    n: Option<u32>,
}

impl PotentialArgs {
    fn weight(&self, t_floor: Option<f64>) -> anyhow::Result<Weight> {
        let mut w = match (&self.weight, self.alpha) {
            (Some(spec), _) => spec.parse::<Weight>()?,
            (None, Some(a)) => Weight::power(a)?,
            (None, None) => {
                return Err(radma::Error::InvalidInput("provide --weight or --alpha".into()).into())
            }
        };
        if let Some(f) = t_floor {
            w = w.with_t_floor(f)?;
        }
        Ok(w)
    }

    fn dim(&self) -> u32 {
        self.n.unwrap_or(2)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Entropy verdict (exact and criterion integrals).
    Entropy(PotentialArgs),
    /// Weighted energy verdict at exponent p.
    Energy {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        p: f64,
    },
    /// Critical energy exponent.
    CriticalP(PotentialArgs),
    /// Energy-normalized exponential integral at constant c.
    Mt {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        c: f64,
    },
    /// Exponential moment at order k.
    ExpMoment {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        k: f64,
    },
    /// Capacity (and volume) of the sublevel set at depth s.
    Capacity {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        s: f64,
    },
    /// Energy-distance proxy between two potentials.
    DpProxy {
        #[command(flatten)]
        pot: PotentialArgs,
        /// Second weight spec.
        #[arg(long)]
        weight2: String,
        #[arg(long)]
        p: f64,
    },
    /// Transverse-slice entropy verdict.
    DivEntropy {
        #[arg(long)]
        weight: String,
    },
    /// Transverse-slice energy verdict at exponent p.
    DivEnergy {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        p: f64,
    },
    /// Convex nondecreasing minorant of -(-chi)^q with contact data.
    Envelope {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        q: f64,
        /// Grid spec `tmin:tmax:count`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Inequality suites.
    Check {
        #[arg(long, value_parser = ["young", "mt", "aubin", "capacity", "volume", "noncompact", "thmA", "all"])]
        suite: String,
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Named verification scenarios.
    Scenario {
        /// One of the scenario names, or `all`.
        name: String,
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        p: Option<f64>,
    },
    /// List available scenarios.
    Scenarios,
}

fn quad_config(cli: &Cli) -> anyhow::Result<QuadConfig> {
    let file = match &cli.config {
        Some(p) => Some(FileConfig::load(p)?),
        None => match std::env::var_os("RADMA_CONFIG") {
            Some(p) => Some(FileConfig::load(std::path::Path::new(&p))?),
            None => None,
        },
    };
    let mut cfg = match &file {
        Some(f) => f.quad_config()?,
        None => QuadConfig::default(),
    };
    if let Some(v) = cli.rel_tol {
        cfg.rel_tol = v;
    }
    if let Some(v) = cli.t_floor {
        cfg.t_floor = v;
    }
    if let Some(w) = &cli.tail_window {
        if w.len() != 2 {
            return Err(radma::Error::Config(format!(
                "--tail-window takes exactly two values, got {}",
                w.len()
            ))
            .into());
        }
        cfg.tail_window = (w[0], w[1]);
    }
    if let Some(v) = cli.delta_margin {
        cfg.delta_margin = v;
    }
    if let Some(v) = cli.max_subdivisions {
        cfg.max_subdivisions = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn output_settings(cli: &Cli) -> anyhow::Result<(report::Format, Option<PathBuf>, u64)> {
    let file = match &cli.config {
        Some(p) => Some(FileConfig::load(p)?),
        None => match std::env::var_os("RADMA_CONFIG") {
            Some(p) => Some(FileConfig::load(std::path::Path::new(&p))?),
            None => None,
        },
    };
    let mut format = report::Format::Csv;
    let mut out = None;
    let mut seed = 42u64;
    if let Some(f) = &file {
        if let Some(fmt) = &f.output.format {
            format = fmt.parse()?;
        }
        if let Some(p) = &f.output.out {
            out = Some(PathBuf::from(p));
        }
        if let Some(s) = f.output.seed {
            seed = s;
        }
    }
    if let Some(fmt) = cli.format {
        format = match fmt {
            FormatArg::Csv => report::Format::Csv,
            FormatArg::Json => report::Format::Json,
        };
    }
    if let Some(p) = &cli.out {
        out = Some(p.clone());
    }
    if let Some(s) = cli.seed {
        seed = s;
    }
    Ok((format, out, seed))
}

fn emit(rows: &[Row], format: report::Format, out: Option<&PathBuf>) -> anyhow::Result<()> {
    let text = report::to_string(rows, format)?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn rows_ok(rows: &[Row]) -> bool {
    rows.iter().all(|r| r.verdict != "Violated")
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = quad_config(cli)?;
    let (format, out, seed) = output_settings(cli)?;
    let floor = cli.t_floor;

    let (rows, ok) = match &cli.cmd {
        Cmd::Entropy(pot) => {
            let rp = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let ev = rp.entropy(&cfg)?;
            let mut row = Row::from_verdict("op", "entropy", &ev.exact);
            row.params = params(&[
                ("weight", serde_param(&rp.weight().to_string())),
                ("n", num(pot.dim() as f64)),
                ("criterion_verdict", serde_param(ev.criterion.kind_name())),
            ]);
            row.tail_exponent = ev.criterion_exponent();
            (vec![row], true)
        }
        Cmd::Energy { pot, p } => {
            let rp = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let v = rp.energy(*p, &cfg)?;
            let mut row = Row::from_verdict("op", "energy", &v);
            row.params = params(&[
                ("weight", serde_param(&rp.weight().to_string())),
                ("n", num(pot.dim() as f64)),
                ("p", num(*p)),
            ]);
            (vec![row], true)
        }
        Cmd::CriticalP(pot) => {
            let rp = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let pc = rp.critical_p(&cfg)?;
            let mut row = Row::new("op", "critical-p");
            row.params = params(&[
                ("weight", serde_param(&rp.weight().to_string())),
                ("n", num(pot.dim() as f64)),
            ]);
            row.verdict = "Finite".into();
            row.value = Some(pc);
            (vec![row], true)
        }
        Cmd::Mt { pot, p, c } => {
            let rp = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let v = rp.mt_integral(*p, *c, &cfg)?;
            let mut row = Row::from_verdict("op", "mt", &v);
            row.params = params(&[
                ("weight", serde_param(&rp.weight().to_string())),
                ("n", num(pot.dim() as f64)),
                ("p", num(*p)),
                ("c", num(*c)),
            ]);
            (vec![row], true)
        }
        Cmd::ExpMoment { pot, k } => {
            let rp = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let v = rp.exp_moment(*k, &cfg)?;
            let mut row = Row::from_verdict("op", "exp-moment", &v);
            row.params = params(&[
                ("weight", serde_param(&rp.weight().to_string())),
                ("n", num(pot.dim() as f64)),
                ("k", num(*k)),
            ]);
            (vec![row], true)
        }
        Cmd::Capacity { pot, s } => {
            let rp = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let cap = rp.capacity_sublevel(*s)?;
            let vol = rp.volume_sublevel(*s)?;
            let mut row = Row::new("op", "capacity");
            row.params = params(&[
                ("weight", serde_param(&rp.weight().to_string())),
                ("n", num(pot.dim() as f64)),
                ("s", num(*s)),
                ("volume", num(vol)),
            ]);
            row.verdict = "Finite".into();
            row.value = Some(cap);
            (vec![row], true)
        }
        Cmd::DpProxy { pot, weight2, p } => {
            let rp1 = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let mut w2: Weight = weight2.parse()?;
            if let Some(f) = floor {
                w2 = w2.with_t_floor(f)?;
            }
            let rp2 = RadialPotential::ball(w2, pot.dim())?;
            let d = rp1.dp_proxy(&rp2, *p, &cfg)?;
            let mut row = Row::new("op", "dp-proxy");
            row.params = params(&[
                ("weight", serde_param(&rp1.weight().to_string())),
                ("weight2", serde_param(&rp2.weight().to_string())),
                ("n", num(pot.dim() as f64)),
                ("p", num(*p)),
            ]);
            row.verdict = "Finite".into();
            row.value = Some(d);
            (vec![row], true)
        }
        Cmd::DivEntropy { weight } => {
            let mut w: Weight = weight.parse()?;
            if let Some(f) = floor {
                w = w.with_t_floor(f)?;
            }
            let v = radma::divisorial::div_entropy(&w, &cfg)?;
            let mut row = Row::from_verdict("op", "div-entropy", &v);
            row.params = params(&[("weight", serde_param(weight))]);
            (vec![row], true)
        }
        Cmd::DivEnergy { weight, p } => {
            let mut w: Weight = weight.parse()?;
            if let Some(f) = floor {
                w = w.with_t_floor(f)?;
            }
            let v = radma::divisorial::div_energy(&w, *p, &cfg)?;
            let mut row = Row::from_verdict("op", "div-energy", &v);
            row.params = params(&[("weight", serde_param(weight)), ("p", num(*p))]);
            (vec![row], true)
        }
        Cmd::Envelope { pot, q, grid } => {
            let rp = RadialPotential::ball(pot.weight(floor)?, pot.dim())?;
            let spec = match grid {
                Some(g) => parse_grid_spec(g)?,
                None => EnvelopeGrid::default(),
            };
            let pe = envelope::envelope_power(&rp, *q, &spec)?;
            let mut rows = Vec::with_capacity(pe.result.env.len() + 1);
            let mut head = Row::new("envelope", "full-mass");
            head.params = params(&[
                ("weight", serde_param(&rp.weight().to_string())),
                ("n", num(pot.dim() as f64)),
                ("q", num(*q)),
                ("left_slope", num(pe.left_slope)),
            ]);
            head.verdict = pe.full_mass.to_string();
            rows.push(head);
            for (i, (t, v)) in pe
                .result
                .env
                .ts()
                .iter()
                .zip(pe.result.env.vals())
                .enumerate()
            {
                let mut row = Row::new("envelope", "node");
                row.params = params(&[("t", num(*t))]);
                row.verdict = if pe.result.contact[i] {
                    "contact"
                } else {
                    "free"
                }
                .into();
                row.value = Some(*v);
                rows.push(row);
            }
            (rows, true)
        }
        Cmd::Check { suite, pot, p } => run_check(suite, pot, *p, &cfg, floor)?,
        Cmd::Scenario { name, pot, p } => {
            let opts = ScenarioOpts {
                quad: cfg.clone(),
                n: pot.n,
                p: *p,
                alpha: pot.alpha,
                weight: match (&pot.weight, pot.alpha) {
                    (Some(spec), _) => Some(spec.parse()?),
                    _ => None,
                },
                seed,
            };
            let outcome = scenarios::run_scenario(name, &opts)?;
            (outcome.rows, outcome.ok)
        }
        Cmd::Scenarios => {
            let rows = scenarios::SCENARIOS
                .iter()
                .map(|s| {
                    let mut row = Row::new("meta", "scenario");
                    row.verdict = (*s).to_string();
                    row
                })
                .collect();
            (rows, true)
        }
    };

    let all_ok = ok && rows_ok(&rows);
    emit(&rows, format, out.as_ref())?;
    Ok(all_ok)
}

fn serde_param(s: &str) -> serde_json::Value {
    serde_json::Value::String(s.to_string())
}

fn parse_grid_spec(s: &str) -> anyhow::Result<EnvelopeGrid> {
    let bad = || radma::Error::Parse(format!("grid spec must be tmin:tmax:count, got `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad().into());
    }
    Ok(EnvelopeGrid {
        t_min: parts[0].parse().map_err(|_| bad())?,
        t_max: parts[1].parse().map_err(|_| bad())?,
        nodes: parts[2].parse().map_err(|_| bad())?,
    })
}

fn run_check(
    suite: &str,
    pot: &PotentialArgs,
    p: Option<f64>,
    cfg: &QuadConfig,
    floor: Option<f64>,
) -> anyhow::Result<(Vec<Row>, bool)> {
    let weight = match (&pot.weight, pot.alpha) {
        (Some(spec), _) => {
            let mut w: Weight = spec.parse()?;
            if let Some(f) = floor {
                w = w.with_t_floor(f)?;
            }
            w
        }
        (None, Some(a)) => Weight::power(a)?,
        (None, None) => Weight::power(0.45)?,
    };
    let n = pot.dim();
    let nf = n as f64;
    let p = p.unwrap_or(1.0);
    let s_list: Vec<f64> = (1..=9).map(|i| i as f64 * 0.1).collect();

    let mut reports: Vec<ineq::InequalityReport> = Vec::new();
    let mut rows: Vec<Row> = Vec::new();
    match suite {
        "young" => {
            reports.push(ineq::young_grid_worst(100, 1e-3, 20.0));
            reports.extend(ineq::young_equality_probes(20));
        }
        "mt" => {
            let rp = RadialPotential::ball(weight, n)?;
            let gamma_max = 2.0 * nf * (nf + 1.0) / (nf + p);
            let c_grid = radma::grid::lin_spaced(0.15 * gamma_max, 0.9 * gamma_max, 6);
            reports.extend(ineq::check_mt(&rp, p, &c_grid, cfg)?.reports);
        }
        "aubin" => {
            let rp = RadialPotential::ball(weight, n)?;
            reports.extend(ineq::check_aubin(&rp, p, &[1.0, 2.0, 4.0, 8.0, 16.0], cfg)?);
        }
        "capacity" => {
            let rp = RadialPotential::ball(weight, n)?;
            reports.extend(ineq::check_capacity_energy(&rp, p, &s_list, cfg)?);
        }
        "volume" => {
            let rp = RadialPotential::ball(weight, n)?;
            for beta in [1.0, 2.0, 3.0, 0.95 * 2.0 * nf] {
                reports.push(ineq::check_volume_capacity(&rp, beta, &s_list)?);
            }
        }
        "noncompact" => {
            let js: Vec<u32> = (4..=9).collect();
            reports.extend(ineq::noncompact_scaling(n, p, &js, cfg)?);
        }
        "thmA" => {
            let rp = RadialPotential::ball(weight, n)?;
            reports.extend(ineq::check_thm_a(&rp, cfg)?);
        }
        "all" => {
            for s in [
                "young",
                "mt",
                "aubin",
                "capacity",
                "volume",
                "noncompact",
                "thmA",
            ] {
                let (r, _) = run_check(s, pot, Some(p), cfg, floor)?;
                rows.extend(r);
            }
        }
        other => anyhow::bail!("unknown suite `{other}`"),
    }
    rows.extend(reports.iter().map(|r| Row::from_inequality("check", r)));
    let ok = reports
        .iter()
        .all(|r| r.holds() || matches!(r.verdict, Verdict::Skipped(_)))
        && rows_ok(&rows);
    Ok((rows, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            // malformed specs, unknown names and bad configs are usage errors
            let usage = matches!(
                e.downcast_ref::<radma::Error>(),
                Some(radma::Error::Parse(_))
                    | Some(radma::Error::InvalidInput(_))
                    | Some(radma::Error::Config(_))
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
