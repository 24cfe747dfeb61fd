use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cyclift::codes;
use cyclift::decode::{Algorithm, ChannelModel, DecoderConfig};
use cyclift::graph::{enumerate_cycles, girth, ParityCheckMatrix, TannerGraph};
use cyclift::ies::IesMode;
use cyclift::lifting::{code_rate, gf2_rank, lift, PermutationIndexMatrix};
use cyclift::sim::{csv_header, design_pipeline, estimate_floor, log_grid, monte_carlo, StopRule};
use cyclift::trapping::{
    critical_number_search, harvest_trapping_sets, load_catalog, SearchScope, DEFAULT_PATTERN_CAP,
};

#[derive(Parser)]
#[command(
    name = "cyclift",
    version,
    about = "Cyclic liftings of LDPC codes that remove dominant trapping sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the girth of a code.
    Girth { alist: PathBuf },
    /// Count (or list) the simple cycles up to a length.
    Cycles {
        alist: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Print every cycle as its edge ids.
        #[arg(long)]
        list: bool,
    },
    /// Print GF(2) rank and rate.
    Rank { alist: PathBuf },
    /// Lift a code with a permutation-index file; writes the lifted alist.
    Lift {
        alist: PathBuf,
        d_file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Design a lifting that eliminates the catalog's trapping sets.
    Design {
        alist: PathBuf,
        catalog: PathBuf,
        /// Lifting degree or inclusive range, e.g. 2 or 2..5.
        #[arg(long = "N", value_name = "N")]
        degrees: String,
        /// Stop at the first set that cannot be handled (exit code 3).
        #[arg(long)]
        strict: bool,
        /// Output prefix: writes PREFIX.d, PREFIX.alist and PREFIX.report.txt.
        #[arg(long, default_value = "design")]
        out: PathBuf,
    },
    /// Exhaustive critical-number search.
    Critnum {
        alist: PathBuf,
        #[arg(long, default_value = "gb")]
        decoder: String,
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        /// Write a trapping-set catalog harvested from the failures.
        #[arg(long)]
        harvest: Option<PathBuf>,
    },
    /// Monte Carlo FER/BER at one channel parameter; prints CSV.
    Simulate {
        alist: PathBuf,
        #[arg(long, default_value = "gb")]
        decoder: String,
        /// bsc:EPS or awgn:EBN0_DB
        #[arg(long)]
        channel: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// ERRS,FRAMES
        #[arg(long, default_value = "100,10000000")]
        stop: String,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
    },
    /// Predicted BSC error floor N_J eps^J over a log grid; prints CSV.
    EstimateFloor {
        alist: PathBuf,
        #[arg(long, default_value = "gb")]
        decoder: String,
        /// LO,HI,POINTS
        #[arg(long)]
        eps_grid: String,
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
    },
    /// Print a built-in code as alist: tanner155, regular504, ts53, ts42, ts44.
    Builtin { name: String },
}

enum CliError {
    Usage(String),
    Input(String),
    Infeasible(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Infeasible(m) => m,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<ParityCheckMatrix, CliError> {
    ParityCheckMatrix::parse_alist(&read(path)?)
        .map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn code_name(path: &Path) -> String {
    path.file_stem()
        .map_or("code".into(), |s| s.to_string_lossy().into_owned())
}

fn decoder_config(name: &str, max_iter: usize) -> Result<DecoderConfig, CliError> {
    let algorithm: Algorithm = name.parse().map_err(usage)?;
    let config = DecoderConfig::new(algorithm).with_max_iterations(max_iter);
    config.validate().map_err(usage)?;
    Ok(config)
}

fn parse_degrees(s: &str) -> Result<(usize, usize), CliError> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("invalid lifting degree {t:?}")))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

fn parse_list<const K: usize>(s: &str, what: &str) -> Result<[String; K], CliError> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    parts.try_into().map_err(|_| {
        usage(format!(
            "{what} expects {K} comma-separated values, got {s:?}"
        ))
    })
}

fn parse_channel(s: &str, rate: f64) -> Result<ChannelModel, CliError> {
    let (kind, value) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("channel {s:?} is not bsc:EPS or awgn:EBN0")))?;
    let x: f64 = value
        .parse()
        .map_err(|_| usage(format!("invalid channel parameter {value:?}")))?;
    match kind {
        "bsc" => ChannelModel::bsc(x).map_err(usage),
        "awgn" => ChannelModel::biawgn_ebn0_db(x, rate).map_err(usage),
        other => Err(usage(format!("unknown channel {other:?}"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Girth { alist } => {
            let h = load_code(&alist)?;
            match girth(&TannerGraph::new(&h)) {
                Some(g) => println!("{g}"),
                None => println!("inf"),
            }
        }
        Command::Cycles {
            alist,
            max_len,
            list,
        } => {
            let h = load_code(&alist)?;
            let g = TannerGraph::new(&h);
            let cycles = enumerate_cycles(&g, max_len, None, None).map_err(usage)?;
            let mut by_len = std::collections::BTreeMap::new();
            for c in &cycles {
                *by_len.entry(c.len()).or_insert(0usize) += 1;
            }
            for (len, count) in by_len {
                println!("length {len}: {count}");
            }
            println!("total {}", cycles.len());
            if list {
                for c in &cycles {
                    let ids: Vec<String> = c.edges().iter().map(usize::to_string).collect();
                    println!("{}", ids.join(" "));
                }
            }
        }
        Command::Rank { alist } => {
            let h = load_code(&alist)?;
            let r = gf2_rank(&h);
            let rate = code_rate(&h);
            println!(
                "n {} m {} rank {} rate {} ({:.4})",
                h.n(),
                h.m(),
                r,
                rate,
                *rate.numer() as f64 / *rate.denom() as f64
            );
        }
        Command::Lift {
            alist,
            d_file,
            output,
        } => {
            let h = load_code(&alist)?;
            let d = PermutationIndexMatrix::parse(&read(&d_file)?)
                .map_err(|e| input(format!("{}: {e}", d_file.display())))?;
            let lifted = lift(&h, &d).map_err(input)?.matrix();
            match output {
                Some(path) => write(&path, &lifted.to_alist())?,
                None => print!("{}", lifted.to_alist()),
            }
        }
        Command::Design {
            alist,
            catalog,
            degrees,
            strict,
            out,
        } => {
            let h = load_code(&alist)?;
            let g = TannerGraph::new(&h);
            let cat = load_catalog(&read(&catalog)?, &g, None)
                .map_err(|e| input(format!("{}: {e}", catalog.display())))?;
            let (lo, hi) = parse_degrees(&degrees)?;
            if lo < 2 {
                return Err(usage("lifting degree must be at least 2"));
            }
            let mode = if strict {
                IesMode::Strict
            } else {
                IesMode::Continue
            };
            let res = design_pipeline(&h, &cat, lo..=hi, mode).map_err(usage)?;
            let with_ext = |ext: &str| {
                let mut s = out.clone().into_os_string();
                s.push(ext);
                PathBuf::from(s)
            };
            let report = res.report_text(&g);
            write(&with_ext(".d"), &res.design.indices.to_text())?;
            write(&with_ext(".alist"), &res.lifted.to_alist())?;
            write(&with_ext(".report.txt"), &report)?;
            print!("{report}");
            if strict && !res.all_eliminated() {
                return Err(CliError::Infeasible(format!(
                    "no degree in {lo}..={hi} eliminates every catalog set"
                )));
            }
        }
        Command::Critnum {
            alist,
            decoder,
            max_weight,
            max_iter,
            harvest,
        } => {
            let h = load_code(&alist)?;
            let config = decoder_config(&decoder, max_iter)?;
            let res = critical_number_search(
                &h,
                &config,
                max_weight,
                &SearchScope::AllVariables,
                DEFAULT_PATTERN_CAP,
            )
            .map_err(usage)?;
            match res.critical_number {
                Some(j) => println!("J {j} N_J {}", res.count()),
                None => println!("no failure up to weight {max_weight}"),
            }
            if let Some(path) = harvest {
                if !config.algorithm.is_hard_decision() {
                    return Err(usage("harvesting needs a hard-decision decoder"));
                }
                let cat = harvest_trapping_sets(&res.failures, &h, &config, None).map_err(usage)?;
                write(&path, &cat.to_text())?;
            }
        }
        Command::Simulate {
            alist,
            decoder,
            channel,
            seed,
            stop,
            max_iter,
        } => {
            let h = load_code(&alist)?;
            let config = decoder_config(&decoder, max_iter)?;
            let rate = code_rate(&h);
            let ch = parse_channel(&channel, *rate.numer() as f64 / *rate.denom() as f64)?;
            let [errs, frames] = parse_list::<2>(&stop, "--stop")?;
            let stop = StopRule::new(
                errs.parse()
                    .map_err(|_| usage(format!("invalid error count {errs:?}")))?,
                frames
                    .parse()
                    .map_err(|_| usage(format!("invalid frame count {frames:?}")))?,
            )
            .map_err(usage)?;
            let res = monte_carlo(&h, &config, &ch, stop, seed).map_err(usage)?;
            println!("{}", csv_header());
            println!(
                "{}",
                res.csv_row(
                    &code_name(&alist),
                    h.n(),
                    h.m(),
                    config.algorithm.short_name()
                )
            );
        }
        Command::EstimateFloor {
            alist,
            decoder,
            eps_grid,
            max_weight,
        } => {
            let h = load_code(&alist)?;
            let config = decoder_config(&decoder, 50)?;
            let [lo, hi, points] = parse_list::<3>(&eps_grid, "--eps-grid")?;
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| usage(format!("invalid number {s:?}")))
            };
            let (lo, hi) = (num(&lo)?, num(&hi)?);
            let points: usize = points
                .parse()
                .map_err(|_| usage(format!("invalid point count {points:?}")))?;
            if !(lo > 0.0 && hi >= lo && hi < 0.5) {
                return Err(usage("eps grid needs 0 < lo <= hi < 0.5"));
            }
            let floor = estimate_floor(&h, &config, max_weight).map_err(usage)?;
            println!("eps,predicted_fer,J,N_J");
            for (eps, fer) in floor.predicted_curve(&log_grid(lo, hi, points)) {
                println!("{eps:e},{fer:e},{},{}", floor.critical_number, floor.count);
            }
        }
        Command::Builtin { name } => {
            let h = match name.as_str() {
                "tanner155" => codes::tanner_155_64(),
                "regular504" => codes::regular_504_252(),
                "ts53" => codes::trapping_subgraph_5_3(),
                "ts42" => codes::trapping_subgraph_4_2(),
                "ts44" => codes::trapping_subgraph_4_4(),
                other => return Err(usage(format!("unknown built-in code {other:?}"))),
            };
            print!("{}", h.to_alist());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
