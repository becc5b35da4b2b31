//! Command-line front end: scheme selection, deterministic seeding,
//! direction dumps, Monte Carlo sweeps, Khintchine–Groshev scans, and the
//! three-user standard-form reduction. Emits plot-ready CSV plus a JSON run
//! manifest.

mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use realign::analysis::{dof_sweep, kg_scan, SweepConfig, CSV_HEADER};
use realign::channel::{standard_form_3user, ChannelRealization, GainDistribution};
use realign::scheme::{build_scheme, SchemeConfig};
use realign::{Error, Result};

use config::Kv;

#[derive(Parser)]
#[command(name = "realign", version, about = "Real interference alignment simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate a scheme's direction sets and verify alignment symbolically.
    Directions(DirectionsArgs),
    /// Run a seeded Monte Carlo sweep over a geometric power grid.
    Sweep(SweepArgs),
    /// Scan for small integer combinations of sampled real vectors.
    Kg(KgArgs),
    /// Print the standard-form invariants G0..G3 of a three-user channel.
    StandardForm(StandardFormArgs),
}

#[derive(Args)]
struct CommonDims {
    /// Flat key=value config file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scheme name: gic, uplink, x, three-user, mac, two-user-x.
    #[arg(long)]
    scheme: Option<String>,
    /// Users / cells / transmitters.
    #[arg(short = 'K', long)]
    k: Option<usize>,
    /// Users per cell (uplink), receivers (X), users (MAC).
    #[arg(short = 'M', long)]
    m: Option<usize>,
    /// Direction order of the monomial construction.
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// Enumeration cap for direction-set generation.
    #[arg(long)]
    cap: Option<u64>,
}

impl CommonDims {
    fn resolve(&self) -> Result<(String, SchemeConfig)> {
        let kv = Kv::load(self.config.as_deref())?;
        let scheme = config::pick(self.scheme.clone(), &kv, "scheme", "gic".to_string())?;
        let dims = SchemeConfig {
            k: config::pick(self.k, &kv, "k", 2)?,
            m: config::pick(self.m, &kv, "m", 1)?,
            n: config::pick(self.n, &kv, "n", 1)?,
            cap: config::pick(self.cap, &kv, "cap", SchemeConfig::default().cap)?,
        };
        Ok((scheme, dims))
    }
}

#[derive(Args)]
struct DirectionsArgs {
    #[command(flatten)]
    dims: CommonDims,
    /// Also write every transmit direction, one per line, to this file.
    #[arg(long)]
    dump_directions: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    dims: CommonDims,
    /// Constellation shape parameter.
    #[arg(long)]
    gamma: Option<f64>,
    /// Khintchine–Groshev margin in the Q exponent.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Noise standard deviation.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    p_start: Option<f64>,
    #[arg(long)]
    p_stop: Option<f64>,
    #[arg(long)]
    p_points: Option<usize>,
    /// Monte Carlo trials per power point.
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed for channel, symbols and noise.
    #[arg(long)]
    seed: Option<u64>,
    /// Gain distribution: "lo,hi", "signed:lo,hi" or "log:lo,hi".
    #[arg(long)]
    gain_dist: Option<String>,
    /// Fixed channel realization file (skips sampling).
    #[arg(long)]
    channel_file: Option<PathBuf>,
    /// Cap on received-constellation size per receiver.
    #[arg(long)]
    point_cap: Option<u64>,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON run-manifest path.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct KgArgs {
    /// Flat key=value config file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of sampled vectors.
    #[arg(long)]
    samples: Option<usize>,
    /// Vector length m.
    #[arg(long)]
    kg_m: Option<usize>,
    /// Exponent margin.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Integer box radius N.
    #[arg(long)]
    n_range: Option<i64>,
    /// Scan cap on (2N+1)^m.
    #[arg(long)]
    cap: Option<u64>,
    /// Sampling seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Gain distribution the vectors are drawn from.
    #[arg(long)]
    gain_dist: Option<String>,
    /// Extra comma-separated vector scanned before the samples.
    #[arg(long)]
    inject: Option<String>,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StandardFormArgs {
    /// Three-user channel realization file.
    #[arg(long)]
    channel_file: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Directions(a) => cmd_directions(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Kg(a) => cmd_kg(a),
        Cmd::StandardForm(a) => cmd_standard_form(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // Bad dimensions or parameters are usage errors.
                Error::InvalidDims(_) | Error::InvalidSpec(_) | Error::InvalidDistribution(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn cmd_directions(args: DirectionsArgs) -> Result<ExitCode> {
    let (name, dims) = args.dims.resolve()?;
    let scheme = build_scheme(&name, &dims)?;
    let report = scheme.directions_report()?;
    println!(
        "scheme {} K={} M={} n={}",
        scheme.name(),
        dims.k,
        dims.m,
        dims.n
    );
    for r in &report.roles {
        match r.closed_form {
            Some(cf) => println!("role {}: count={} closed_form={}", r.label, r.count, cf),
            None => println!("role {}: count={}", r.label, r.count),
        }
    }
    for (label, ok) in &report.containment {
        println!("containment {label}: {}", if *ok { "PASS" } else { "FAIL" });
    }
    for (label, ok) in &report.separability {
        println!("separability {label}: {}", if *ok { "PASS" } else { "FAIL" });
    }
    let all = report.all_pass();
    println!("verdict: {}", if all { "PASS" } else { "FAIL" });

    if let Some(path) = &args.dump_directions {
        let mut text = String::new();
        for s in scheme.streams()? {
            text.push_str(&format!(
                "{} tx={} rx={} {}\n",
                s.id,
                s.tx,
                s.rx,
                s.direction.to_token_string()
            ));
        }
        fs::write(path, text)?;
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let kv = Kv::load(args.dims.config.as_deref())?;
    let (scheme, dims) = args.dims.resolve()?;
    let defaults = SweepConfig::default();
    let gain_dist = match config::pick_opt(args.gain_dist.clone(), &kv, "gain-dist")? {
        Some(s) => GainDistribution::parse(&s)?,
        None => defaults.gain_dist,
    };
    let channel_file = match args.channel_file.clone() {
        Some(p) => Some(p),
        None => config::pick_opt::<String>(None, &kv, "channel-file")?.map(PathBuf::from),
    };
    let channel = match &channel_file {
        Some(path) => Some(ChannelRealization::parse_text(&fs::read_to_string(path)?)?),
        None => None,
    };
    let cfg = SweepConfig {
        scheme,
        dims,
        gamma: config::pick(args.gamma, &kv, "gamma", defaults.gamma)?,
        epsilon: config::pick(args.epsilon, &kv, "epsilon", defaults.epsilon)?,
        sigma: config::pick(args.sigma, &kv, "sigma", defaults.sigma)?,
        p_start: config::pick(args.p_start, &kv, "p-start", defaults.p_start)?,
        p_stop: config::pick(args.p_stop, &kv, "p-stop", defaults.p_stop)?,
        p_points: config::pick(args.p_points, &kv, "p-points", defaults.p_points)?,
        trials: config::pick(args.trials, &kv, "trials", defaults.trials)?,
        seed: config::pick(args.seed, &kv, "seed", defaults.seed)?,
        gain_dist,
        channel,
        point_cap: config::pick(args.point_cap, &kv, "point-cap", defaults.point_cap)?,
    };

    let started = Instant::now();
    let result = dof_sweep(&cfg)?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &result.records {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    match &args.out {
        Some(path) => fs::write(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(slope) = result.slope {
        eprintln!("slope {slope}");
    }

    if let Some(path) = &args.manifest {
        let manifest = serde_json::json!({
            "command": "sweep",
            "version": env!("CARGO_PKG_VERSION"),
            "config": {
                "scheme": cfg.scheme,
                "k": cfg.dims.k,
                "m": cfg.dims.m,
                "n": cfg.dims.n,
                "cap": cfg.dims.cap,
                "gamma": cfg.gamma,
                "epsilon": cfg.epsilon,
                "sigma": cfg.sigma,
                "p_start": cfg.p_start,
                "p_stop": cfg.p_stop,
                "p_points": cfg.p_points,
                "trials": cfg.trials,
                "seed": cfg.seed,
                "point_cap": cfg.point_cap,
                "channel_file": channel_file.as_ref().map(|p| p.display().to_string()),
            },
            "n_streams": result.n_streams,
            "received_directions": result.m,
            "slope": result.slope,
            "wall_time_ms": started.elapsed().as_millis() as u64,
        });
        fs::write(path, serde_json::to_string_pretty(&manifest).expect("static json"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kg(args: KgArgs) -> Result<ExitCode> {
    let kv = Kv::load(args.config.as_deref())?;
    let samples: usize = config::pick(args.samples, &kv, "samples", 100)?;
    let m: usize = config::pick(args.kg_m, &kv, "kg-m", 2)?;
    let epsilon: f64 = config::pick(args.epsilon, &kv, "epsilon", 0.1)?;
    let n_range: i64 = config::pick(args.n_range, &kv, "n-range", 50)?;
    let cap: u64 = config::pick(args.cap, &kv, "cap", 100_000_000)?;
    let seed: u64 = config::pick(args.seed, &kv, "seed", 1)?;
    let gain_dist = match config::pick_opt(args.gain_dist.clone(), &kv, "gain-dist")? {
        Some(s) => GainDistribution::parse(&s)?,
        None => GainDistribution::Uniform { lo: 0.5, hi: 2.0 },
    };
    gain_dist.validate()?;

    let mut vectors: Vec<(String, Vec<f64>)> = Vec::new();
    let inject = config::pick_opt(args.inject.clone(), &kv, "inject")?;
    if let Some(text) = inject {
        let v: Vec<f64> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("--inject: {e}")))
            })
            .collect::<Result<_>>()?;
        vectors.push(("inject".into(), v));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let v: Vec<f64> = (0..m).map(|_| gain_dist.sample(&mut rng)).collect();
        vectors.push((format!("{i}"), v));
    }

    let mut csv = String::from("sample,v,min_normalized,zero_hit,err\n");
    let mut mins = Vec::new();
    let mut zero_hits = 0usize;
    for (label, v) in &vectors {
        let joined = v
            .iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(";");
        match kg_scan(v, epsilon, n_range, cap) {
            Ok(res) => {
                if res.zero_hit {
                    zero_hits += 1;
                }
                mins.push(res.min_normalized);
                csv.push_str(&format!(
                    "{label},{joined},{},{},\n",
                    res.min_normalized, res.zero_hit
                ));
            }
            Err(e) => {
                csv.push_str(&format!(
                    "{label},{joined},,,{}\n",
                    e.to_string().replace([',', '\n'], ";")
                ));
            }
        }
    }
    match &args.out {
        Some(path) => fs::write(path, &csv)?,
        None => print!("{csv}"),
    }

    if !mins.is_empty() {
        mins.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite minima"));
        let quantile = |q: f64| mins[((mins.len() - 1) as f64 * q).round() as usize];
        eprintln!(
            "scans {} zero_hits {} q10 {} q50 {} q90 {}",
            mins.len(),
            zero_hits,
            quantile(0.1),
            quantile(0.5),
            quantile(0.9)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_standard_form(args: StandardFormArgs) -> Result<ExitCode> {
    let h = ChannelRealization::parse_text(&fs::read_to_string(&args.channel_file)?)?;
    let sf = standard_form_3user(&h)?;
    println!("G0 {:.16e}", sf.g0);
    println!("G1 {:.16e}", sf.g1);
    println!("G2 {:.16e}", sf.g2);
    println!("G3 {:.16e}", sf.g3);
    Ok(ExitCode::SUCCESS)
}
