use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hurstlens::estimators::{Estimator, Method, ScaleSet};
use hurstlens::io::{emit_prices, emit_records_csv, load_csv, CsvSchema, HurstRecord, IoError};
use hurstlens::pipeline::{derive_series, run_prices, stats_table, OutputFormat, RunConfig, SeriesKind};
use hurstlens::series::slice_window;
use hurstlens::stats::describe;
use hurstlens::synth::{gen_fgn, gen_random_walk_prices, FgnSpec};

#[derive(Parser)]
#[command(name = "hurstlens", version, about = "Time-varying Hurst exponents of daily price series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Descriptive statistics of the returns or volatility series.
    Stats(StatsArgs),
    /// Hurst exponent of a single window.
    Hurst(HurstArgs),
    /// Sliding-window Hurst series.
    Roll(RollArgs),
    /// Write synthetic fixtures.
    #[command(subcommand)]
    Synth(SynthCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Returns,
    Volatility,
}

impl From<SeriesArg> for SeriesKind {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::Returns => SeriesKind::Returns,
            SeriesArg::Volatility => SeriesKind::Volatility,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dfa,
    Rs,
    RsSingle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dfa => Method::Dfa,
            MethodArg::Rs => Method::RsMultiscale,
            MethodArg::RsSingle => Method::RsSingle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "returns")]
    series: SeriesArg,
    #[arg(long, default_value = "date")]
    date_col: String,
    #[arg(long, default_value = "close")]
    close_col: String,
    #[arg(long, default_value = "high")]
    high_col: String,
    #[arg(long, default_value = "low")]
    low_col: String,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
}

impl InputArgs {
    fn schema(&self) -> CsvSchema {
        CsvSchema {
            date_column: self.date_col.clone(),
            close_column: self.close_col.clone(),
            high_column: self.high_col.clone(),
            low_column: self.low_col.clone(),
            delimiter: self.delimiter,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Destination file, or `-` for stdout.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct EstimatorArgs {
    #[arg(long, value_enum, default_value = "dfa")]
    method: MethodArg,
    #[arg(long, default_value = "4,8,16,32,64,128")]
    scales: String,
    #[arg(long, default_value_t = 1)]
    poly_order: usize,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HurstArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    estimator: EstimatorArgs,
    /// Index of the window's first observation.
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Window length; defaults to the rest of the series.
    #[arg(long)]
    window: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RollArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    estimator: EstimatorArgs,
    #[arg(long, default_value_t = 500)]
    window: usize,
    #[arg(long, default_value_t = 1)]
    step: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum SynthCommand {
    /// Fractional Gaussian noise as `index,value` rows.
    Fgn {
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 0.7)]
        hurst: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Random-walk OHLC prices in the default input schema.
    Walk {
        #[arg(long, default_value_t = 1435)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        drift: f64,
        #[arg(long, default_value_t = 0.03)]
        vol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        output: String,
    },
}

fn parse_estimator(args: &EstimatorArgs) -> Result<(Method, ScaleSet), IoError> {
    let scales: ScaleSet = args.scales.parse()?;
    if !(1..=hurstlens::estimators::MAX_POLY_ORDER).contains(&args.poly_order) {
        return Err(IoError::Config(format!("poly order {} outside 1..=3", args.poly_order)));
    }
    Ok((args.method.into(), scales))
}

fn write_output(dest: &str, content: &str) -> Result<(), IoError> {
    if dest == "-" {
        std::io::stdout().write_all(content.as_bytes())?;
    } else {
        std::fs::write(dest, content)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), IoError> {
    match cli.command {
        Command::Stats(args) => {
            let prices = load_csv(&args.input.input, &args.input.schema())?;
            let kind: SeriesKind = args.input.series.into();
            let series = derive_series(&prices, kind)?;
            let stats = describe(series.values())?;
            let out = match args.output.format.into() {
                OutputFormat::Csv => stats_table(&kind.to_string(), &stats),
                OutputFormat::Json => {
                    let v = json!({ "series": kind, "data_quality": prices.quality(), "stats": stats });
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
            };
            write_output(&args.output.output, &out)
        }
        Command::Hurst(args) => {
            let (method, scales) = parse_estimator(&args.estimator)?;
            let config = RunConfig {
                method,
                scales,
                poly_order: args.estimator.poly_order,
                ..RunConfig::default()
            };
            let prices = load_csv(&args.input.input, &args.input.schema())?;
            let series = derive_series(&prices, args.input.series.into())?;
            let length = match args.window {
                Some(w) => w,
                None => series.len().saturating_sub(args.start),
            };
            let window = slice_window(series.as_ref(), args.start, length)?;
            let estimator: Estimator = config.estimator();
            let estimate = estimator.estimate(window.values)?;
            let out = match args.output.format.into() {
                OutputFormat::Csv => emit_records_csv(&[HurstRecord::new(window.anchor, Ok(&estimate))]),
                OutputFormat::Json => {
                    let v = json!({ "anchor_date": window.anchor, "length": length, "estimate": estimate });
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
            };
            write_output(&args.output.output, &out)
        }
        Command::Roll(args) => {
            let (method, scales) = parse_estimator(&args.estimator)?;
            let config = RunConfig {
                input: args.input.input.clone(),
                schema: args.input.schema(),
                series: args.input.series.into(),
                method,
                window: args.window,
                step: args.step,
                scales,
                poly_order: args.estimator.poly_order,
                format: args.output.format.into(),
            };
            let prices = load_csv(&config.input, &config.schema)?;
            let report = run_prices(&prices, &config)?;
            let out = report.render(config.format)?;
            if config.format == OutputFormat::Csv {
                let mut summary = stats_table(&config.series.to_string(), &report.series_stats);
                match &report.hurst_stats {
                    Some(s) => summary.push_str(&stats_table(&format!("hurst {}", config.method), s)),
                    None => summary.push_str("hurst statistics unavailable\n"),
                }
                eprint!("{summary}");
            }
            write_output(&args.output.output, &out)
        }
        Command::Synth(SynthCommand::Fgn { n, hurst, sigma, seed, output }) => {
            let values = gen_fgn(&FgnSpec::new(n, hurst, sigma, seed))?;
            let mut out = String::from("index,value\n");
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{i},{v}\n"));
            }
            write_output(&output, &out)
        }
        Command::Synth(SynthCommand::Walk { n, drift, vol, seed, output }) => {
            let prices = gen_random_walk_prices(n, drift, vol, seed)?;
            write_output(&output, &emit_prices(&prices))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::FAILURE
        }
    }
}
