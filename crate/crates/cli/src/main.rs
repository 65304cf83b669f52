//! `infokit`: information measures, channel capacity, coding and spectra from
//! the command line.
//!
//! Scalar results print as `key=value` lines; tables go out as CSV. Exit
//! status is 0 on success, 1 for bad arguments, 2 for invalid input and 3 when
//! an iterative solver fails to converge.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod sigfig;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use infokit_core::channel::{
    capacity_curve, dmc_capacity, gaussian_capacity, CapacityOptions, GaussianChannelSpec,
};
use infokit_core::discrete::{
    coin_entropy_curve, entropy, equivalent_equiprobable_count, information_budget, surprisal,
};
use infokit_core::estimation::{
    default_bins, estimate_report, sample_variance, simulate_additive_gaussian_sharded, ALGORITHM,
};
use infokit_core::formats::{
    parse_joint, parse_pmf, parse_transition, read_samples_csv, read_signal_csv, read_spectrum_csv,
    write_samples_csv,
};
use infokit_core::source_coding::{block_code_rate, SourceSpec};
use infokit_core::spectral::{fourier_analyze, power_spectrum, spectral_mutual_information};
use infokit_core::Error;

use sigfig::{round6, sig6};

#[derive(Parser, Debug)]
#[command(name = "infokit", version, about = "Information theory toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy and per-symbol surprisal of a pmf file.
    Entropy { pmf: PathBuf },
    /// Entropies and mutual information of a joint pmf file.
    Joint { joint: PathBuf },
    /// Capacity of the additive Gaussian channel.
    Capacity {
        #[arg(long)]
        signal_power: f64,
        #[arg(long)]
        noise_power: f64,
        /// Bandwidth in Hz; reports bits/s instead of bits per use.
        #[arg(long)]
        bandwidth: Option<f64>,
    },
    /// Capacity of a discrete memoryless channel given as a transition matrix.
    DmcCapacity {
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
    },
    /// Optimal prefix code for a pmf, optionally over blocks of symbols.
    Huffman {
        pmf: PathBuf,
        #[arg(long, default_value_t = 1)]
        block: usize,
        /// Write the code table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw paired samples from the additive Gaussian channel.
    Simulate {
        #[arg(long)]
        signal_power: f64,
        #[arg(long)]
        noise_power: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Output CSV; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plug-in entropy and mutual information estimates from paired samples.
    Estimate {
        samples: PathBuf,
        #[arg(long)]
        bins: Option<usize>,
    },
    /// Power spectrum of a sampled signal.
    Spectrum {
        signal: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mutual information rate of signal and noise spectra.
    SpectralMi {
        spectrum: PathBuf,
        #[arg(long)]
        bandwidth: Option<f64>,
    },
    /// Data behind the coin-entropy and capacity-vs-power figures.
    Figure {
        which: Figure,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        noise_power: f64,
        #[arg(long, default_value_t = 100.0)]
        max_signal: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Figure {
    CoinEntropy,
    CapacityVsPower,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn open(path: &Path) -> Result<fs::File, Error> {
    fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes `text` to `out`, or returns it for stdout.
fn emit(out: &Option<PathBuf>, text: String) -> Result<String, Error> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn run(cmd: Command) -> Result<String, Error> {
    let mut o = String::new();
    match cmd {
        Command::Entropy { pmf } => {
            let p = parse_pmf(&read(&pmf)?)?;
            let h = entropy(&p);
            writeln!(o, "H={}", sig6(h.0)).unwrap();
            writeln!(
                o,
                "equiprobable_count={}",
                sig6(equivalent_equiprobable_count(h)?)
            )
            .unwrap();
            for (s, pr) in p.iter() {
                if pr > 0.0 {
                    writeln!(o, "surprisal[{s}]={}", sig6(surprisal(pr)?.0)).unwrap();
                }
            }
        }
        Command::Joint { joint } => {
            let b = information_budget(&parse_joint(&read(&joint)?)?);
            for (k, v) in [
                ("H_x", b.h_x.0),
                ("H_y", b.h_y.0),
                ("H_xy", b.h_xy.0),
                ("H_x_given_y", b.h_x_given_y.0),
                ("H_y_given_x", b.h_y_given_x.0),
                ("I", b.mi.0),
                ("identity_web_residual", b.identity_web_residual()),
            ] {
                writeln!(o, "{k}={}", sig6(v)).unwrap();
            }
        }
        Command::Capacity {
            signal_power,
            noise_power,
            bandwidth,
        } => {
            let spec = GaussianChannelSpec::new(signal_power, noise_power, bandwidth)?;
            writeln!(o, "snr={}", sig6(spec.snr())).unwrap();
            writeln!(o, "C={}", sig6(gaussian_capacity(&spec).0)).unwrap();
            let unit = if bandwidth.is_some() {
                "bits/s"
            } else {
                "bits/use"
            };
            writeln!(o, "unit={unit}").unwrap();
        }
        Command::DmcCapacity {
            matrix,
            tol,
            max_iters,
        } => {
            let t = parse_transition(&read(&matrix)?)?;
            let r = dmc_capacity(&t, CapacityOptions { tol, max_iters })?;
            writeln!(o, "C={}", sig6(r.capacity.0)).unwrap();
            writeln!(o, "iterations={}", r.iterations).unwrap();
            writeln!(o, "gap={}", sig6(r.gap)).unwrap();
            for (s, p) in r.optimal_input.iter() {
                writeln!(o, "p[{s}]={}", sig6(p)).unwrap();
            }
        }
        Command::Huffman { pmf, block, out } => {
            let p = parse_pmf(&read(&pmf)?)?;
            let spec = SourceSpec::new(p, block)?;
            let block_pmf = spec.block_pmf()?;
            let r = block_code_rate(&spec)?;
            let mut table = String::from("symbol,codeword,length,probability\n");
            for (sym, word) in r.code.entries() {
                let prob = block_pmf.prob_of(sym).unwrap_or(0.0);
                let name = sym.join(" ");
                writeln!(
                    table,
                    "{},{word},{},{}",
                    csv_field(&name),
                    word.len(),
                    sig6(prob)
                )
                .unwrap();
                if out.is_some() {
                    continue;
                }
                writeln!(o, "code[{name}]={word}").unwrap();
            }
            writeln!(o, "H={}", sig6(r.entropy.0)).unwrap();
            writeln!(o, "L={}", sig6(r.rate)).unwrap();
            writeln!(o, "redundancy={}", sig6(r.rate - r.entropy.0)).unwrap();
            writeln!(o, "kraft={}", sig6(r.code.kraft_sum())).unwrap();
            emit(&out, table)?;
        }
        Command::Simulate {
            signal_power,
            noise_power,
            n,
            seed,
            workers,
            out,
        } => {
            let spec = GaussianChannelSpec::new(signal_power, noise_power, None)?;
            let samples = simulate_additive_gaussian_sharded(&spec, n, seed, workers)?;
            let mut buf = Vec::new();
            write_samples_csv(&mut buf, &samples)?;
            let text = String::from_utf8(buf).expect("csv output is utf-8");
            if out.is_some() {
                emit(&out, text)?;
                writeln!(o, "n={n}").unwrap();
                writeln!(o, "seed={seed}").unwrap();
                writeln!(o, "algorithm={ALGORITHM}").unwrap();
            } else {
                o = text;
            }
        }
        Command::Estimate { samples, bins } => {
            let s = read_samples_csv(open(&samples)?)?;
            let bins = bins.unwrap_or_else(|| default_bins(s.len()));
            let noise: Vec<f64> = s.y.iter().zip(&s.x).map(|(y, x)| y - x).collect();
            let noise_var = sample_variance(&noise);
            if !(noise_var > 0.0) {
                return Err(Error::Validation(
                    "y - x has zero variance; no Gaussian reference".into(),
                ));
            }
            let analytic = 0.5 * (1.0 + sample_variance(&s.x) / noise_var).log2();
            let mut r = estimate_report(&s.x, &s.y, bins, analytic)?;
            for v in [
                &mut r.h_x,
                &mut r.h_y,
                &mut r.h_xy,
                &mut r.mi,
                &mut r.analytic_mi,
                &mut r.gap,
            ] {
                *v = round6(*v);
            }
            o = serde_json::to_string_pretty(&r).map_err(|e| Error::Io(e.to_string()))?;
            o.push('\n');
        }
        Command::Spectrum { signal, out } => {
            let sig = read_signal_csv(open(&signal)?)?;
            let mut table = String::from("f,S,phase\n");
            for line in power_spectrum(&fourier_analyze(&sig)) {
                writeln!(
                    table,
                    "{},{},{}",
                    sig6(line.frequency),
                    sig6(line.power),
                    sig6(line.phase)
                )
                .unwrap();
            }
            o = emit(&out, table)?;
        }
        Command::SpectralMi {
            spectrum,
            bandwidth,
        } => {
            let sp = read_spectrum_csv(open(&spectrum)?, bandwidth)?;
            writeln!(o, "I={}", sig6(spectral_mutual_information(&sp).0)).unwrap();
            writeln!(o, "bandwidth={}", sig6(sp.bandwidth())).unwrap();
            writeln!(o, "unit=bits/s").unwrap();
        }
        Command::Figure {
            which,
            points,
            noise_power,
            max_signal,
            out,
        } => {
            let (header, rows) = match which {
                Figure::CoinEntropy => ("p,H", coin_entropy_curve(points)?),
                Figure::CapacityVsPower => {
                    ("S,C", capacity_curve(noise_power, max_signal, points)?)
                }
            };
            let mut table = format!("{header}\n");
            for (x, y) in rows {
                writeln!(table, "{},{}", sig6(x), sig6(y.0)).unwrap();
            }
            o = emit(&out, table)?;
        }
    }
    Ok(o)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotConverged { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
