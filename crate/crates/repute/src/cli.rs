//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 usage error, 2 data error or failed sweep
//! cells, 3 non-convergence when `--strict` is set.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use repute_core::{sample_subset, IrErrorNorm, Method, MethodConfig, RatingDataset, RatingScale, SpamKind, SpamSpec};

use crate::correlate::{binned_table, correlate, correlation_table};
use crate::error::{ReputeError, Result};
use crate::files::{self, Delimiter, Table, TripleFileFormat};
use crate::plan::load_plan;
use crate::sweep::{run_sweep, SweepSettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_UNCONVERGED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "repute", version, about = "Rank users of a rating network by reputation and test rankings against injected spammers")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct DataArgs {
    /// Ratings file: `user object rating` per line.
    dataset: Option<PathBuf>,
    /// Key-value plan file supplying defaults for any flag.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Rating scale, `lo:hi` for integers or a comma list of values.
    #[arg(long, default_value = "1:5", value_parser = parse_scale)]
    scale: RatingScale,
    /// Field separator: `whitespace`, `tab`, `comma` or a single character.
    #[arg(long, default_value = "whitespace")]
    delimiter: Delimiter,
}

#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    /// RR redistribution exponent.
    #[arg(long)]
    theta: Option<f64>,
    /// IR exponent.
    #[arg(long)]
    beta: Option<f64>,
    /// IR regularizer.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Lower bound on the reward standard deviation in GR/IGR.
    #[arg(long)]
    sigma_floor: Option<f64>,
    /// Convergence threshold.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    /// IR error normalization: `degree-scaled` or `mean`.
    #[arg(long, value_parser = parse_ir_error)]
    ir_error: Option<IrErrorNorm>,
    /// Exit with status 3 if any iterative method fails to converge.
    #[arg(long)]
    strict: bool,
}

impl ConfigArgs {
    fn config(&self) -> MethodConfig {
        let d = MethodConfig::default();
        MethodConfig {
            delta_threshold: self.delta.unwrap_or(d.delta_threshold),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
            ir_beta: self.beta.unwrap_or(d.ir_beta),
            ir_epsilon: self.epsilon.unwrap_or(d.ir_epsilon),
            ir_error: self.ir_error.unwrap_or(d.ir_error),
            rr_theta: self.theta.unwrap_or(d.rr_theta),
            sigma_floor: self.sigma_floor.unwrap_or(d.sigma_floor),
        }
    }
}

#[derive(Clone, Debug)]
struct MethodList(Vec<Method>);

#[derive(Clone, Debug)]
struct Ratios(Vec<f64>);

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute reputations with one method.
    Rank {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        method: Method,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add spammers; writes the dataset, `<out>.labels` and `<out>.meta`.
    Inject {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        attack: SpamKind,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Labels path, defaulting to `<out>.labels`.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Recall and AUC of methods against a labels file.
    Eval {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value = "all", value_parser = parse_methods)]
        method: MethodList,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeated injections over a list of spammer ratios.
    Sweep {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "all", value_parser = parse_methods)]
        method: MethodList,
        #[arg(long)]
        attack: SpamKind,
        /// Comma-separated spammer ratios.
        #[arg(long, value_parser = parse_ratios)]
        p: Ratios,
        #[arg(long, default_value_t = 100)]
        realizations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        config: ConfigArgs,
        /// Also report AUC per user degree subgroup.
        #[arg(long)]
        subgroups: bool,
        /// Run cells one after another instead of in parallel.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Correlations of reputations with rating error, degree and object popularity.
    Correlate {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "all", value_parser = parse_methods)]
        method: MethodList,
        #[command(flatten)]
        config: ConfigArgs,
        /// Histogram bins for the diversity index.
        #[arg(long, default_value_t = 100)]
        bins: usize,
        /// Write binned mean reputations per indicator here.
        #[arg(long)]
        binned: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        bin_width: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Size, sparsity and mean degrees of a dataset.
    Stats {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Random subset of users with a minimum degree.
    Sample {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        users: usize,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_scale(s: &str) -> std::result::Result<RatingScale, String> {
    let scale = if let Some((lo, hi)) = s.split_once(':') {
        let lo = lo.trim().parse::<i32>().map_err(|e| e.to_string())?;
        let hi = hi.trim().parse::<i32>().map_err(|e| e.to_string())?;
        RatingScale::integer(lo, hi)
    } else {
        let values = s
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        RatingScale::new(values)
    };
    scale.map_err(|e| e.to_string())
}

fn parse_ir_error(s: &str) -> std::result::Result<IrErrorNorm, String> {
    match s {
        "degree-scaled" => Ok(IrErrorNorm::DegreeScaled),
        "mean" => Ok(IrErrorNorm::Mean),
        _ => Err("expected `degree-scaled` or `mean`".into()),
    }
}

fn parse_methods(s: &str) -> std::result::Result<MethodList, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(MethodList(Method::ALL.to_vec()));
    }
    let mut methods = Vec::new();
    for part in s.split(',') {
        let m: Method = part.parse().map_err(|e| format!("{part:?}: {e}"))?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    Ok(MethodList(methods))
}

fn parse_ratios(s: &str) -> std::result::Result<Ratios, String> {
    let ratios = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if let Some(p) = ratios.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
        return Err(format!("p = {p} must lie strictly between 0 and 1"));
    }
    Ok(Ratios(ratios))
}

impl DataArgs {
    fn load(&self) -> Result<RatingDataset> {
        let path = self
            .dataset
            .as_ref()
            .ok_or_else(|| ReputeError::Usage("no dataset given (positional argument or `dataset` in the plan)".into()))?;
        let format = TripleFileFormat { delimiter: self.delimiter, ..Default::default() };
        files::load_triples(path, format, self.scale.clone())
    }
}

fn emit(table: &Table, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => files::write_table(path, table),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.to_writer(&mut lock)?;
            lock.flush().map_err(|e| ReputeError::io("<stdout>", e))
        }
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Finds `--plan` among the subcommand's arguments and splices the plan's
/// flags in right after the subcommand name, so later explicit flags win.
fn expand_plan(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(sub) = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')).map(|i| i + 1) else {
        return Ok(args);
    };
    let mut plan_path = None;
    let mut rest = Vec::new();
    let mut iter = args[sub + 1..].iter();
    while let Some(a) = iter.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            rest.push(a.clone());
            rest.extend(iter.by_ref().cloned());
            break;
        } else if s == "--plan" {
            plan_path = Some(PathBuf::from(iter.next().ok_or_else(|| ReputeError::Usage("--plan needs a path".into()))?));
        } else if let Some(p) = s.strip_prefix("--plan=") {
            plan_path = Some(PathBuf::from(p));
        } else {
            rest.push(a.clone());
        }
    }
    let Some(plan_path) = plan_path else {
        return Ok(args);
    };
    let plan = load_plan(&plan_path)?;
    // A dataset given on the command line takes precedence over the plan's.
    let dataset = plan.dataset.as_ref().filter(|_| !positional_present(&rest));
    let mut out: Vec<OsString> = args[..=sub].to_vec();
    out.extend(plan.to_args().into_iter().map(OsString::from));
    out.extend(rest);
    if let Some(dataset) = dataset {
        out.push(OsString::from(dataset));
    }
    Ok(out)
}

/// Whether `args` contain a bare argument that is not the value of a
/// preceding `--flag value` pair.
fn positional_present(args: &[OsString]) -> bool {
    let switches = ["--subgroups", "--sequential", "--strict"];
    let mut expect_value = false;
    for a in args {
        let s = a.to_string_lossy();
        if expect_value {
            expect_value = false;
            continue;
        }
        if s.starts_with("--") {
            expect_value = !s.contains('=') && !switches.contains(&s.as_ref());
        } else {
            return true;
        }
    }
    false
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_plan(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Rank { data, method, config, out } => {
            let dataset = data.load()?;
            let rep = method.rank(&dataset, &config.config())?;
            let mut table = Table::new(["user", "reputation"]);
            table.comments = vec![
                format!("method={method}"),
                format!("iterations={}", rep.iterations),
                format!("converged={}", rep.converged),
                format!("final_change={}", rep.final_change.map_or_else(|| "none".into(), |c| c.to_string())),
            ];
            for (id, r) in rep.with_ids(&dataset) {
                table.push([id.to_string(), r.to_string()]);
            }
            emit(&table, out.as_deref())?;
            Ok(if config.strict && !rep.converged { EXIT_UNCONVERGED } else { EXIT_OK })
        }
        Command::Inject { data, attack, p, seed, out, labels } => {
            let dataset = data.load()?;
            let experiment = repute_core::inject(&dataset, SpamSpec::new(attack, p, seed)?)?;
            files::write_dataset(&out, &experiment.attacked)?;
            let labels = labels.unwrap_or_else(|| with_suffix(&out, ".labels"));
            files::write_labels(&labels, experiment.spammer_ids())?;
            files::write_metadata(with_suffix(&out, ".meta"), &experiment)?;
            Ok(EXIT_OK)
        }
        Command::Eval { data, labels, method, config, out } => {
            let dataset = data.load()?;
            let ids = files::read_labels(&labels)?;
            let mask = files::labels_mask(&dataset, &ids)?;
            let cfg = config.config();
            let mut table = Table::new(["method", "d", "L", "recall", "auc", "iterations", "converged"]);
            let mut unconverged = false;
            for m in method.0 {
                let rep = m.rank(&dataset, &cfg)?;
                let eval = repute_core::metrics::evaluate(rep.values(), &mask)?;
                unconverged |= !rep.converged;
                table.push([
                    m.name().to_string(),
                    eval.spammers.to_string(),
                    eval.list_len.to_string(),
                    eval.recall.to_string(),
                    eval.auc.to_string(),
                    rep.iterations.to_string(),
                    rep.converged.to_string(),
                ]);
            }
            emit(&table, out.as_deref())?;
            Ok(if config.strict && unconverged { EXIT_UNCONVERGED } else { EXIT_OK })
        }
        Command::Sweep { data, method, attack, p, realizations, seed, config, subgroups, sequential, out } => {
            let dataset = data.load()?;
            let settings = SweepSettings {
                methods: method.0,
                attack,
                ratios: p.0,
                realizations,
                seed,
                config: config.config(),
                subgroups,
            };
            let report = run_sweep(&dataset, &settings, !sequential)?;
            emit(&report.table(), out.as_deref())?;
            let failures = report.failures();
            if failures > 0 {
                eprintln!("warning: {failures} sweep cell(s) failed");
                return Ok(EXIT_DATA);
            }
            Ok(if config.strict && report.unconverged() > 0 { EXIT_UNCONVERGED } else { EXIT_OK })
        }
        Command::Correlate { data, method, config, bins, binned, bin_width, out } => {
            if bins < 2 {
                return Err(ReputeError::Usage("--bins must be at least 2".into()));
            }
            if !(bin_width > 0.0 && bin_width <= 1.0) {
                return Err(ReputeError::Usage("--bin-width must lie in (0, 1]".into()));
            }
            let dataset = data.load()?;
            let cfg = config.config();
            cfg.validate()?;
            let outcomes = correlate(&dataset, &method.0, &cfg, bins, binned.as_ref().map(|_| bin_width));
            emit(&correlation_table(&outcomes), out.as_deref())?;
            if let Some(path) = binned {
                files::write_table(path, &binned_table(&outcomes))?;
            }
            if outcomes.iter().any(|o| o.is_err()) {
                return Ok(EXIT_DATA);
            }
            let unconverged = outcomes.iter().flatten().any(|r| !r.converged);
            Ok(if config.strict && unconverged { EXIT_UNCONVERGED } else { EXIT_OK })
        }
        Command::Stats { data } => {
            let d = data.load()?;
            let mut table = Table::new(["users", "objects", "ratings", "sparsity", "mean_user_degree", "mean_object_degree"]);
            table.push([
                d.user_count().to_string(),
                d.object_count().to_string(),
                d.rating_count().to_string(),
                d.sparsity().to_string(),
                d.mean_user_degree().to_string(),
                d.mean_object_degree().to_string(),
            ]);
            emit(&table, None)?;
            Ok(EXIT_OK)
        }
        Command::Sample { data, users, min_degree, seed, out } => {
            let d = data.load()?;
            let subset = sample_subset(&d, users, min_degree, seed)?;
            files::write_dataset(&out, &subset)?;
            Ok(EXIT_OK)
        }
    }
}
