//! Command-line front end. Every subcommand is deterministic given its
//! config and seed; exit codes are 0 on success, 1 for usage or config
//! problems, 2 when the pilot estimate fails.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bounds::{adversarial_signal, bpdn_upper_bound, minimax_lower_bound, Matrix};
use crate::error::{Error, Result};
use crate::estimator::{estimate_norm, minimize_variance, variance_ext, NormEstimate};
use crate::inference::{
    estimate_sparsity, sparsity_ci, test_power, test_sparsity, tuning_radii, SparsityEstimate,
};
use crate::io;
use crate::noise::NoiseModel;
use crate::rng::CounterRng;
use crate::simlab::{run_clt, run_relative_error, ExperimentConfig};
use crate::sparsity::Signal;
use crate::stable::{MeasurementBatch, Mode};

#[derive(Parser)]
#[command(name = "numsparse", version, about = "Sparsity and norm estimation from stable-law sketches")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Master RNG seed; overrides any seed in a config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for CSV/JSON artifacts.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker thread cap for Monte Carlo runs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Measurement mode override.
    #[arg(long, global = true)]
    mode: Option<Mode>,
}

impl clap::ValueEnum for Mode {
    fn value_variants<'a>() -> &'a [Self] {
        &[Mode::Explicit, Mode::Induced]
    }
    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Mode::Explicit => "explicit",
            Mode::Induced => "induced",
        }))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Estimate s_q and both norms from two measurement batches.
    Estimate {
        /// CSV batch for the index q (JSON sidecar alongside).
        measurements_q: PathBuf,
        /// CSV batch for q = 1.
        measurements_1: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha_prime: f64,
        #[arg(long)]
        eta0: Option<f64>,
        #[arg(long, default_value_t = 0.3)]
        epsilon2: f64,
        /// Reference sparsity; adds the hypothesis test to the output.
        #[arg(long)]
        kappa: Option<f64>,
    },
    /// Relative-error Monte Carlo sweep over a measurement grid.
    Simulate {
        /// JSON experiment config.
        config: PathBuf,
    },
    /// Normality check of the standardized sparsity statistic.
    Clt {
        config: PathBuf,
        /// Reference sparsities to test each replicate against.
        #[arg(long, value_delimiter = ',')]
        kappa: Vec<f64>,
    },
    /// Tabulate the extended variance and report its minimizer.
    Variance {
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
        #[arg(long, default_value = "gaussian")]
        noise: String,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        c_min: f64,
        #[arg(long, default_value_t = 5.0)]
        c_max: f64,
        #[arg(long, default_value_t = 0.01)]
        c_step: f64,
    },
    /// Closed-form recovery and estimation bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: f64,
        /// Include the recovery upper bound for this sparsity level.
        #[arg(long)]
        s2: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        noise_term: f64,
        #[arg(long, default_value_t = 1.0)]
        c2: f64,
        #[arg(long, default_value_t = 1.0)]
        c3: f64,
    },
    /// Search the null space of A for a maximally non-sparse signal.
    Adversarial {
        /// Matrix CSV; omitted means a random gaussian matrix of size n x p.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        /// Base signal CSV; omitted means the zero signal.
        #[arg(long)]
        signal: Option<PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Hypothesis test H0: s_q >= kappa from two measurement batches.
    Test {
        measurements_q: PathBuf,
        measurements_1: PathBuf,
        #[arg(long)]
        kappa: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 0.3)]
        epsilon2: f64,
        #[arg(long)]
        eta0: Option<f64>,
        /// True sparsity values at which to report asymptotic power.
        #[arg(long, value_delimiter = ',')]
        power_at: Vec<f64>,
    },
    /// Constraint-ball radii for l1 (and optionally l2) regularizers.
    Tune {
        measurements_1: PathBuf,
        #[arg(long)]
        measurements_2: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        alpha_prime: f64,
        #[arg(long)]
        eta0: Option<f64>,
        #[arg(long, default_value_t = 0.3)]
        epsilon2: f64,
    },
}

/// Parses argv and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with success status
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(threads) = cli.global.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(Error::PilotFailure(v)) => {
            eprintln!("error: pilot estimate {v} is not positive; collect more measurements");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load_pair(
    path_q: &PathBuf,
    path_1: &PathBuf,
    epsilon2: f64,
    eta0: Option<f64>,
) -> Result<(NormEstimate, NormEstimate, MeasurementBatch, MeasurementBatch)> {
    let bq = io::read_batch(path_q)?;
    let b1 = io::read_batch(path_1)?;
    if b1.q != 1.0 {
        return Err(Error::WrongQ {
            expected: 1.0,
            got: b1.q,
        });
    }
    if (bq.q - 1.0).abs() < 0.05 {
        return Err(Error::QTooCloseToOne(bq.q));
    }
    let eps_q = if bq.q == 2.0 { epsilon2 } else { 0.0 };
    let eq = estimate_norm(&bq, bq.noise, eps_q, eta0)?;
    let e1 = estimate_norm(&b1, b1.noise, 0.0, eta0)?;
    Ok((eq, e1, bq, b1))
}

fn sparsity_report(
    est: &SparsityEstimate,
    alpha: f64,
    alpha_prime: f64,
    kappa: Option<f64>,
) -> Result<serde_json::Value> {
    let ci = sparsity_ci(est, alpha, alpha_prime)?;
    let mut out = json!({
        "s_hat": est.s_hat,
        "vartheta_hat": est.vartheta_hat,
        "ci": [ci.lower, ci.upper],
        "alpha": alpha,
        "alpha_prime": alpha_prime,
        "nu_hat_q": est.parts.0.nu_hat,
        "nu_hat_1": est.parts.1.nu_hat,
        "omega_hat_q": est.parts.0.omega_hat,
        "omega_hat_1": est.parts.1.omega_hat,
        "tuning_q": est.parts.0,
        "tuning_1": est.parts.1,
    });
    if let Some(kappa) = kappa {
        let t = test_sparsity(est, kappa, alpha.max(1e-12))?;
        out["test"] = json!({"kappa": t.kappa, "u_hat": t.u_hat, "reject": t.reject});
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Estimate {
            measurements_q,
            measurements_1,
            alpha,
            alpha_prime,
            eta0,
            epsilon2,
            kappa,
        } => {
            let (eq, e1, _, _) = load_pair(measurements_q, measurements_1, *epsilon2, *eta0)?;
            let est = estimate_sparsity(&eq, &e1)?;
            let report = sparsity_report(&est, *alpha, *alpha_prime, *kappa)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
        Command::Simulate { config } => {
            let mut cfg: ExperimentConfig =
                serde_json::from_str(&std::fs::read_to_string(config)?)?;
            if let Some(seed) = g.seed {
                cfg.seed = seed;
            }
            if let Some(mode) = g.mode {
                cfg.mode = mode;
            }
            let res = run_relative_error(&cfg)?;
            std::fs::create_dir_all(&g.out)?;
            let csv_path = g.out.join("relative_error.csv");
            std::fs::write(&csv_path, res.to_csv())?;
            let summary = json!({"seed": cfg.seed, "rows": res.rows});
            io::write_json(&g.out.join("relative_error.json"), &summary)?;
            println!("{}", csv_path.display());
            Ok(())
        }
        Command::Clt { config, kappa } => {
            let mut cfg: ExperimentConfig =
                serde_json::from_str(&std::fs::read_to_string(config)?)?;
            if let Some(seed) = g.seed {
                cfg.seed = seed;
            }
            if let Some(mode) = g.mode {
                cfg.mode = mode;
            }
            let res = run_clt(&cfg, kappa)?;
            std::fs::create_dir_all(&g.out)?;
            let csv_path = g.out.join("clt.csv");
            std::fs::write(&csv_path, res.to_csv())?;
            let summary = json!({
                "seed": cfg.seed,
                "mean": res.mean,
                "variance": res.variance,
                "ks": res.ks_statistic,
                "coverage": res.coverage,
                "failures": res.failures,
                "rejections": res.rejections,
            });
            io::write_json(&g.out.join("clt.json"), &summary)?;
            println!("{}", csv_path.display());
            Ok(())
        }
        Command::Variance {
            q,
            rho,
            noise,
            epsilon,
            c_min,
            c_max,
            c_step,
        } => {
            let noise: NoiseModel = noise.parse()?;
            let eps = epsilon.unwrap_or(if *q == 2.0 { 0.3 } else { 0.0 });
            if !(*q > 0.0 && *q <= 2.0) {
                return Err(Error::InvalidQ(*q));
            }
            let mut csv = String::from("c,v\n");
            let mut c = *c_min;
            while c <= *c_max + 1e-12 {
                let v = variance_ext(c, *rho, *q, noise)?;
                csv.push_str(&format!("{c},{v}\n"));
                c += c_step;
            }
            std::fs::create_dir_all(&g.out)?;
            std::fs::write(g.out.join("variance.csv"), csv)?;
            let m = minimize_variance(*rho, *q, noise, eps)?;
            let summary = json!({
                "q": q, "rho": rho, "noise": noise.to_string(), "epsilon": eps,
                "c_star": m.c_star, "v_min": m.v_min, "near_tie": m.near_tie,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(())
        }
        Command::Bounds {
            n,
            p,
            q,
            s2,
            noise_term,
            c2,
            c3,
        } => {
            let (value, clamped) = minimax_lower_bound(*n, *p, *q)?;
            let mut out = json!({
                "minimax_lower_bound": value,
                "clamped": clamped,
                "n": n, "p": p, "q": q,
            });
            if let Some(s2) = s2 {
                out["bpdn_upper_bound"] =
                    json!(bpdn_upper_bound(*s2, *n, *p, *noise_term, *c2, *c3)?);
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(())
        }
        Command::Adversarial {
            matrix,
            n,
            p,
            signal,
            q,
            trials,
        } => {
            let seed = g.seed.unwrap_or(0);
            let mut rng = CounterRng::new(seed);
            let a = match matrix {
                Some(path) => io::read_matrix_csv(path)?,
                None => {
                    let (n, p) = match (n, p) {
                        (Some(n), Some(p)) => (*n, *p),
                        _ => {
                            return Err(Error::InvalidConfig {
                                field: "matrix".into(),
                                reason: "provide --matrix or both --n and --p".into(),
                            })
                        }
                    };
                    Matrix::new(n, p, (0..n * p).map(|_| rng.normal()).collect())
                }
            };
            let x0 = match signal {
                Some(path) => io::read_signal_csv(path)?,
                None => Signal::new(vec![0.0; a.p]),
            };
            let r = adversarial_signal(&a, &x0, *q, *trials, &mut rng)?;
            let out = json!({
                "s_q": r.s_q,
                "bound": r.bound,
                "success": r.success,
                "residual": r.residual,
                "seed": seed,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            std::fs::create_dir_all(&g.out)?;
            io::write_signal_csv(&g.out.join("x_tilde.csv"), &r.x_tilde)?;
            Ok(())
        }
        Command::Test {
            measurements_q,
            measurements_1,
            kappa,
            alpha,
            epsilon2,
            eta0,
            power_at,
        } => {
            let (eq, e1, _, _) = load_pair(measurements_q, measurements_1, *epsilon2, *eta0)?;
            let est = estimate_sparsity(&eq, &e1)?;
            let t = test_sparsity(&est, *kappa, *alpha)?;
            let power: Vec<serde_json::Value> = power_at
                .iter()
                .map(|&s| {
                    json!({
                        "s_true": s,
                        "power": test_power(s, *kappa, *alpha, est.vartheta_hat, est.n_total()),
                    })
                })
                .collect();
            let out = json!({
                "s_hat": est.s_hat,
                "vartheta_hat": est.vartheta_hat,
                "test": {"kappa": t.kappa, "u_hat": t.u_hat, "reject": t.reject},
                "alpha": alpha,
                "power": power,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(())
        }
        Command::Tune {
            measurements_1,
            measurements_2,
            alpha_prime,
            eta0,
            epsilon2,
        } => {
            let b1 = io::read_batch(measurements_1)?;
            let e1 = estimate_norm(&b1, b1.noise, 0.0, *eta0)?;
            let e2 = match measurements_2 {
                Some(path) => {
                    let b2 = io::read_batch(path)?;
                    Some(estimate_norm(&b2, b2.noise, *epsilon2, *eta0)?)
                }
                None => None,
            };
            let (r_hat, varrho) = tuning_radii(&e1, e2.as_ref(), *alpha_prime)?;
            let out = json!({
                "r_hat": r_hat,
                "varrho_hat": varrho,
                "l2_radius": varrho.map(f64::sqrt),
                "alpha_prime": alpha_prime,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(())
        }
    }
}
