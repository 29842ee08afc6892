//! Command-line front end: design, validation, spectrum analysis, distance
//! profiles, encoding, decoding, simulation and raw sequence dumps.
//!
//! Data goes to stdout (or `--out`), diagnostics to stderr; the process
//! exits 0 exactly when no error occurred. Identical invocations produce
//! byte-identical outputs.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::code::{self, PrcLdpcCode};
use crate::codec::{DecoderGraph, DecoderVariant, LfsrEncoder, DEFAULT_NMS_FACTOR};
use crate::design::{self, SearchSpec};
use crate::gf2poly::{BinaryPolynomial, MersenneFactorTable};
use crate::pnseq::{self, PnNavigator, MATERIALIZE_CAP};
use crate::ruler;
use crate::simulator::{self, SimPlan};
use crate::spectrum::{self, ProfileMethod, SpectrumMethod};
use crate::{Error, Result};

/// Environment variable naming the default factor-table file.
pub const FACTOR_TABLE_ENV: &str = "PRCLDPC_FACTOR_TABLE";

#[derive(Parser)]
#[command(
    name = "prcldpc",
    version,
    about = "Rate-compatible LDPC codes from primitive polynomials with Golomb-ruler supports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for parity-check polynomials over Golomb rulers.
    Design(DesignArgs),
    /// Check the design gates of one polynomial.
    Validate(ValidateArgs),
    /// Weight spectrum, landmarks and analytic bounds of a code.
    Analyze(AnalyzeArgs),
    /// Minimum-distance profile n(d) of a polynomial family.
    Profile(ProfileArgs),
    /// Systematically encode an information word.
    Encode(EncodeArgs),
    /// Decode a channel LLR vector.
    Decode(DecodeArgs),
    /// Monte Carlo error-rate evaluation over BPSK + AWGN.
    Simulate(SimulateArgs),
    /// Dump a window of the pseudo-noise sequence.
    PnDump(PnDumpArgs),
}

#[derive(Args)]
struct TableOpt {
    /// Factor-table file overriding the bundled data (or set
    /// PRCLDPC_FACTOR_TABLE).
    #[arg(long, global = true)]
    factor_table: Option<PathBuf>,
}

impl TableOpt {
    fn load(&self) -> Result<TableHandle> {
        let path = self
            .factor_table
            .clone()
            .or_else(|| std::env::var_os(FACTOR_TABLE_ENV).map(PathBuf::from));
        Ok(match path {
            Some(p) => TableHandle::Owned(MersenneFactorTable::from_path(&p)?),
            None => TableHandle::Bundled(MersenneFactorTable::bundled()),
        })
    }
}

enum TableHandle {
    Bundled(&'static MersenneFactorTable),
    Owned(MersenneFactorTable),
}

impl TableHandle {
    fn get(&self) -> &MersenneFactorTable {
        match self {
            TableHandle::Bundled(t) => t,
            TableHandle::Owned(t) => t,
        }
    }
}

#[derive(Args)]
struct OutOpt {
    /// Write data here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Additionally emit a gnuplot script next to --out.
    #[arg(long)]
    gnuplot: bool,
}

impl OutOpt {
    fn write(&self, data: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, data)?,
            None => print!("{data}"),
        }
        Ok(())
    }

    fn write_gnuplot(&self, body: impl Fn(&str) -> String) -> Result<()> {
        if !self.gnuplot {
            return Ok(());
        }
        let Some(out) = &self.out else {
            return Err(Error::Parse("--gnuplot needs --out to reference".into()));
        };
        let csv = out
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_else(|| "data.csv".into());
        let gp = out.with_extension("gp");
        std::fs::write(gp, body(&csv))?;
        Ok(())
    }
}

#[derive(Args)]
struct CodeOpt {
    /// Code descriptor file (h=..., n=..., z=..., shorten=..., puncture=...).
    #[arg(long, conflicts_with = "desc")]
    code: Option<PathBuf>,
    /// Inline descriptor, fields separated by semicolons or whitespace.
    #[arg(long)]
    desc: Option<String>,
}

impl CodeOpt {
    fn load(&self) -> Result<PrcLdpcCode> {
        match (&self.code, &self.desc) {
            (Some(path), None) => code::load_descriptor(path),
            (None, Some(text)) => code::parse_descriptor(text),
            _ => Err(Error::Parse("provide exactly one of --code or --desc".into())),
        }
    }
}

#[derive(Args)]
struct DesignArgs {
    /// Target degree.
    #[arg(long)]
    k: usize,
    /// Target weight (odd).
    #[arg(long)]
    wh: usize,
    /// Fixed-subset size of the outer enumeration.
    #[arg(long, default_value_t = 0)]
    wf: usize,
    /// Ruler file; the bundled optimal rulers are used when omitted.
    #[arg(long)]
    rulers: Option<PathBuf>,
    /// Stop at the first polynomial found.
    #[arg(long)]
    first: bool,
    /// Keep candidates whose separation profile fails the quality screen.
    #[arg(long)]
    allow_poor_quality: bool,
    /// Maximum number of results.
    #[arg(long, default_value_t = 16)]
    max_results: usize,
    #[command(flatten)]
    table: TableOpt,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct ValidateArgs {
    /// Polynomial: exponent list "0,1,5,11,13" or hex "0x2823".
    #[arg(long)]
    h: String,
    #[command(flatten)]
    table: TableOpt,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    code: CodeOpt,
    /// Landmark scan radius (defaults to 4k).
    #[arg(long)]
    radius: Option<usize>,
    /// Force the exact oracle (errors above the materialization cap).
    #[arg(long, conflicts_with = "estimate")]
    exact: bool,
    /// Force the landmark/sparse-state estimate.
    #[arg(long)]
    estimate: bool,
    /// Track counts up to this weight (defaults to w_h + 4).
    #[arg(long)]
    wcap: Option<usize>,
    /// Emit the family census (core_start,L,Z_l,Z_r,w) instead of the
    /// spectrum CSV; exact path only.
    #[arg(long)]
    families: bool,
    #[command(flatten)]
    table: TableOpt,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    code: CodeOpt,
    /// Largest distance to profile.
    #[arg(long)]
    dmax: usize,
    /// Landmark scan radius for the estimate path (defaults to 4k).
    #[arg(long)]
    radius: Option<usize>,
    /// Force the estimate path even below the materialization cap.
    #[arg(long)]
    estimate: bool,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeOpt,
    /// Information bits as a 0/1 string.
    #[arg(long, conflicts_with = "info_file")]
    info: Option<String>,
    /// File holding the information bits as a 0/1 string.
    #[arg(long)]
    info_file: Option<PathBuf>,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeOpt,
    /// LLRs as comma-separated decimal values (positive = bit 0).
    #[arg(long, conflicts_with = "llr_bin", allow_hyphen_values = true)]
    llr: Option<String>,
    /// File of 32-bit native-endian floats, one LLR per codeword position.
    #[arg(long)]
    llr_bin: Option<PathBuf>,
    /// Decoder: spa | ms | nms | nms:FACTOR.
    #[arg(long, default_value = "spa")]
    decoder: String,
    /// Iteration cap.
    #[arg(long, default_value_t = 100)]
    iters: usize,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    code: CodeOpt,
    /// Grid: "a:step:b" or a comma-separated dB list.
    #[arg(long)]
    ebn0: String,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Trial cap per point.
    #[arg(long, default_value_t = 10_000_000)]
    max_trials: u64,
    /// Error events ending a point.
    #[arg(long, default_value_t = 100)]
    min_errors: u64,
    /// Decoder: spa | ms | nms | nms:FACTOR.
    #[arg(long, default_value = "spa")]
    decoder: String,
    /// Iteration cap.
    #[arg(long, default_value_t = 100)]
    iters: usize,
    /// Worker threads (does not affect results).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Transmit the all-zero codeword instead of random data.
    #[arg(long)]
    all_zero: bool,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct PnDumpArgs {
    /// Polynomial: exponent list or hex.
    #[arg(long)]
    h: String,
    /// Absolute start position (requires degree within the
    /// materialization cap).
    #[arg(long, conflicts_with = "landmark")]
    start: Option<usize>,
    /// Named landmark to anchor at: t1 | t2.
    #[arg(long)]
    landmark: Option<String>,
    /// Positions before the anchor to include (landmark mode).
    #[arg(long, default_value_t = 0)]
    back: usize,
    /// Window length.
    #[arg(long)]
    len: usize,
    #[command(flatten)]
    out: OutOpt,
}

/// Parses and runs the process arguments; returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Design(args) => run_design(args),
        Command::Validate(args) => run_validate(args),
        Command::Analyze(args) => run_analyze(args),
        Command::Profile(args) => run_profile(args),
        Command::Encode(args) => run_encode(args),
        Command::Decode(args) => run_decode(args),
        Command::Simulate(args) => run_simulate(args),
        Command::PnDump(args) => run_pn_dump(args),
    }
}

fn quality_line(q: &crate::ruler::QualityReport) -> String {
    format!(
        "external_dominance={} ext_over_internal=({},{}) external_sum={} internal_dominance={} good_practice={}",
        q.external_dominance,
        q.external_over_internal_first,
        q.external_over_internal_last,
        q.external_sum,
        q.internal_dominance
            .map(|i| i.to_string())
            .unwrap_or_else(|| "-".into()),
        q.good_practice()
    )
}

fn run_design(args: DesignArgs) -> Result<()> {
    let table = args.table.load()?;
    let rulers = match &args.rulers {
        Some(path) => ruler::load_ruler_file(path)?,
        None => design::builtin_rulers().to_vec(),
    };
    let spec = SearchSpec {
        k: args.k,
        w_h: args.wh,
        w_f: args.wf,
        rulers,
        quality_required: !args.allow_poor_quality,
        max_results: args.max_results,
        stop_at_first: args.first,
    };
    let outcome = design::search(&spec, table.get())?;
    let mut text = String::new();
    for h in &outcome.hits {
        let report = design::validate_candidate(h, table.get())?;
        text.push_str(&format!(
            "{h}\n  degree={} weight={} primitive={} golomb={} density_ok={}\n  {}\n",
            report.degree,
            report.weight,
            report.primitive,
            report.golomb,
            report.density_ok,
            quality_line(&report.quality)
        ));
    }
    eprintln!(
        "tested {} candidates for primitivity, {} hit(s)",
        outcome.primitivity_tests,
        outcome.hits.len()
    );
    args.out.write(&text)
}

fn run_validate(args: ValidateArgs) -> Result<()> {
    let table = args.table.load()?;
    let h = BinaryPolynomial::parse(&args.h)?;
    let report = design::validate_candidate(&h, table.get())?;
    println!("h={h}");
    println!(
        "degree={} weight={} primitive={} golomb={} density_ok={}",
        report.degree, report.weight, report.primitive, report.golomb, report.density_ok
    );
    println!("{}", quality_line(&report.quality));
    println!("all_gates={}", report.all_gates(true));
    Ok(())
}

fn run_analyze(args: AnalyzeArgs) -> Result<()> {
    let code = args.code.load()?;
    let k = code.k();
    let radius = args.radius.unwrap_or_else(|| spectrum::default_scan_radius(k));
    let w_cap = args.wcap.unwrap_or_else(|| spectrum::default_weight_cap(code.w_h()));
    let use_exact = if args.exact {
        true
    } else if args.estimate {
        false
    } else {
        k <= MATERIALIZE_CAP
    };
    let spec = if use_exact {
        spectrum::exact_spectrum_capped(&code, w_cap)?
    } else {
        spectrum::estimate_spectrum_capped(&code, radius, w_cap)?
    };

    let mut report = String::new();
    report.push_str(&format!(
        "code: n={} k={} r={} z={} rate={:.4} w_h={}\n",
        code.n(),
        code.k_eff(),
        code.r(),
        code.z(),
        code.rate(),
        code.w_h()
    ));
    match spec.method {
        SpectrumMethod::Exact => report.push_str(&format!("d={} A(d)={}\n", spec.d, spec.a_d)),
        SpectrumMethod::Estimate { coverage } => report.push_str(&format!(
            "d_est={} A_est(d)={} (estimate, coverage {:.3e})\n",
            spec.d, spec.a_d, coverage
        )),
    }
    match pnseq::locate_h_star(code.h()) {
        Ok(marks) => {
            report.push_str(&format!(
                "landmarks: Z0={} Z1={} spacing=({},{})\n",
                marks.z0,
                marks.z1,
                marks
                    .left_spacing
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| "-".into()),
                marks
                    .right_spacing
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| "-".into()),
            ));
            if let Some((z0, z1)) = pnseq::zero_zones_closed_form(code.profile()) {
                report.push_str(&format!("closed-form zones: Z0={z0} Z1={z1}\n"));
            }
        }
        Err(e) => report.push_str(&format!("landmarks: unavailable ({e})\n")),
    }
    let quality = ruler::design_quality(code.profile());
    report.push_str(&format!("quality: {}\n", quality_line(&quality)));
    let bounds = spectrum::lemma_bounds(&code);
    report.push_str(&format!(
        "bounds: s_max={} r_min={} n(2)={} d_is_one={}\n",
        bounds.s_max, bounds.r_min, bounds.n_two, bounds.d_is_one
    ));
    for reason in &bounds.d_upper_wh {
        report.push_str(&format!("bounds: d <= w_h by {reason:?}\n"));
    }
    for b in &bounds.wh_lower_counts {
        report.push_str(&format!("bounds: A(w_h) >= {} by {:?}\n", b.count, b.rule));
    }

    let csv = if args.families {
        let mut csv = String::from("core_start,L,Z_l,Z_r,w\n");
        for f in spectrum::family_census(&code, w_cap)? {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                f.core_start, f.core_len, f.z_left, f.z_right, f.weight
            ));
        }
        csv
    } else {
        format!(
            "n,d,A(d),method\n{},{},{},{}\n",
            spec.n,
            spec.d,
            spec.a_d,
            spec.method.tag()
        )
    };
    eprint!("{report}");
    args.out.write(&csv)?;
    args.out.write_gnuplot(|csv| {
        format!(
            "set datafile separator ','\nset logscale y\nplot '{csv}' using 1:3 with points title 'A(d)'\n"
        )
    })
}

fn run_profile(args: ProfileArgs) -> Result<()> {
    let code = args.code.load()?;
    let h = code.h().clone();
    let k = code.k();
    let method = if args.estimate || k > MATERIALIZE_CAP {
        ProfileMethod::Estimate {
            scan_radius: args.radius.unwrap_or_else(|| spectrum::default_scan_radius(k)),
        }
    } else {
        ProfileMethod::Exact
    };
    let profile = spectrum::distance_profile(&h, args.dmax, method)?;
    let tag = match method {
        ProfileMethod::Exact => "exact",
        ProfileMethod::Estimate { .. } => "estimate",
    };
    let mut csv = String::from("d,n,method\n");
    for e in &profile.entries {
        csv.push_str(&format!("{},{},{}\n", e.d, e.n, tag));
    }
    args.out.write(&csv)?;
    args.out.write_gnuplot(|csv| {
        format!("set datafile separator ','\nplot '{csv}' using 1:2 with steps title 'n(d)'\n")
    })
}

fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            other => Err(Error::Parse(format!("expected 0/1, found {other:?}"))),
        })
        .collect()
}

fn run_encode(args: EncodeArgs) -> Result<()> {
    let code = args.code.load()?;
    let text = match (&args.info, &args.info_file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        _ => return Err(Error::Parse("provide exactly one of --info or --info-file".into())),
    };
    let info = parse_bits(&text)?;
    let mut enc = LfsrEncoder::new(128)?;
    let cw = enc.encode_code(&code, &info)?;
    let line: String = cw.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    args.out.write(&format!("{line}\n"))
}

fn parse_decoder(text: &str) -> Result<DecoderVariant> {
    match text {
        "spa" => Ok(DecoderVariant::SumProduct),
        "ms" => Ok(DecoderVariant::MinSum),
        "nms" => Ok(DecoderVariant::NormalizedMinSum(DEFAULT_NMS_FACTOR)),
        other => {
            if let Some(f) = other.strip_prefix("nms:") {
                let factor: f64 = f
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad normalization factor {f:?}")))?;
                Ok(DecoderVariant::NormalizedMinSum(factor))
            } else {
                Err(Error::Parse(format!("unknown decoder {other:?}")))
            }
        }
    }
}

fn run_decode(args: DecodeArgs) -> Result<()> {
    let code = args.code.load()?;
    let llr: Vec<f64> = match (&args.llr, &args.llr_bin) {
        (Some(text), None) => text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad LLR value {t:?}")))
            })
            .collect::<Result<_>>()?,
        (None, Some(path)) => {
            let bytes = std::fs::read(path)?;
            if bytes.len() % 4 != 0 {
                return Err(Error::Parse("binary LLR file length not a multiple of 4".into()));
            }
            bytes
                .chunks_exact(4)
                .map(|c| f32::from_ne_bytes([c[0], c[1], c[2], c[3]]) as f64)
                .collect()
        }
        _ => return Err(Error::Parse("provide exactly one of --llr or --llr-bin".into())),
    };
    let variant = parse_decoder(&args.decoder)?;
    let graph = DecoderGraph::for_code(&code);
    let out = graph.decode(&llr, variant, args.iters)?;
    eprintln!(
        "iterations={} converged={}",
        out.iterations, out.converged
    );
    let line: String = out.word.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    args.out.write(&format!("{line}\n"))
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |t: &str| Error::Parse(format!("bad Eb/N0 value {t:?}"));
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse("grid form is start:step:end".into()));
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad(parts[0]))?;
        let step: f64 = parts[1].trim().parse().map_err(|_| bad(parts[1]))?;
        let end: f64 = parts[2].trim().parse().map_err(|_| bad(parts[2]))?;
        if step <= 0.0 {
            return Err(Error::Parse("grid step must be positive".into()));
        }
        let mut out = Vec::new();
        let mut x = start;
        while x <= end + 1e-9 {
            out.push((x * 1e6).round() / 1e6);
            x += step;
        }
        Ok(out)
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad(t)))
            .collect()
    }
}

fn run_simulate(args: SimulateArgs) -> Result<()> {
    let code = args.code.load()?;
    let plan = SimPlan {
        code,
        ebn0_db: parse_grid(&args.ebn0)?,
        max_trials: args.max_trials,
        min_errors: args.min_errors,
        seed: args.seed,
        variant: parse_decoder(&args.decoder)?,
        max_iterations: args.iters,
        workers: args.workers,
        all_zero_shortcut: args.all_zero,
    };
    let result = simulator::run(&plan)?;
    eprint!("{}", result.metadata());
    args.out.write(&result.to_csv())?;
    args.out.write_gnuplot(|csv| {
        format!("set datafile separator ','\nset logscale y\nset xlabel 'Eb/N0 [dB]'\nset ylabel 'CER'\nplot '{csv}' using 1:5 with linespoints title 'CER'\n")
    })
}

fn run_pn_dump(args: PnDumpArgs) -> Result<()> {
    let h = BinaryPolynomial::parse(&args.h)?;
    let k = h.degree().ok_or(Error::InvalidPolynomial("zero polynomial"))?;
    let line = match (&args.start, &args.landmark) {
        (Some(start), None) => {
            let p = pnseq::generate_full(&h)?;
            p.window_string(*start, args.len)
        }
        (None, Some(name)) => {
            let nav = match name.as_str() {
                "t1" => PnNavigator::at_t1(&h)?,
                "t2" => {
                    let hstar = h.reciprocal();
                    let mut seed = 0u128;
                    for e in hstar.support() {
                        if e < k {
                            seed |= 1 << e;
                        }
                    }
                    PnNavigator::from_state(&h, seed)?
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown landmark {other:?} (expected t1 or t2)"
                    )))
                }
            };
            if args.len < args.back + k {
                return Err(Error::Parse(
                    "--len must cover --back plus the register width".into(),
                ));
            }
            let (bits, _) = nav.stretch(args.back, args.len - args.back - k);
            bits.into_iter()
                .map(|b| if b == 1 { '1' } else { '0' })
                .collect()
        }
        _ => {
            return Err(Error::Parse(
                "provide exactly one of --start or --landmark".into(),
            ))
        }
    };
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}
