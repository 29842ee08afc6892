//! Monte Carlo error-rate evaluation over BPSK + AWGN.
//!
//! Reproducibility is the design constraint: every trial draws from its own
//! counter-based substream keyed by (master seed, point index, trial
//! index), trials are processed in fixed-size chunks, and chunk results are
//! merged in chunk order, so the outcome is bit-identical for any worker
//! count. Stopping decisions happen at block boundaries only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::code::PrcLdpcCode;
use crate::codec::{DecodeOutcome, DecoderGraph, DecoderVariant, EncoderConfig, LfsrEncoder};
use crate::{Error, Result};

/// Trials per accumulation chunk; chunk boundaries are part of the
/// deterministic contract, so this is a constant rather than a knob.
const CHUNK: u64 = 256;

/// Chunks per stopping-rule round.
const CHUNKS_PER_ROUND: u64 = 16;

/// A simulation campaign over an Eb/N0 grid.
#[derive(Debug, Clone)]
pub struct SimPlan {
    /// Code under test.
    pub code: PrcLdpcCode,
    /// Eb/N0 grid in dB, strictly ascending.
    pub ebn0_db: Vec<f64>,
    /// Trial cap per point.
    pub max_trials: u64,
    /// Stop a point once this many codeword-error events are seen.
    pub min_errors: u64,
    /// Master seed; equal seeds give bit-identical results.
    pub seed: u64,
    /// Decoder flavor.
    pub variant: DecoderVariant,
    /// Decoder iteration cap.
    pub max_iterations: usize,
    /// Worker threads (any value yields the same results).
    pub workers: usize,
    /// Send the all-zero codeword instead of random data. Off unless
    /// explicitly requested: real transmissions are simulated.
    pub all_zero_shortcut: bool,
}

impl SimPlan {
    /// A plan with the default stopping rule (100 error events or 10^7
    /// codewords per point, whichever first), the sum-product decoder at
    /// 100 iterations, and a single worker.
    pub fn new(code: PrcLdpcCode, ebn0_db: Vec<f64>, seed: u64) -> Self {
        Self {
            code,
            ebn0_db,
            max_trials: 10_000_000,
            min_errors: 100,
            seed,
            variant: DecoderVariant::SumProduct,
            max_iterations: 100,
            workers: 1,
            all_zero_shortcut: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.ebn0_db.is_empty() {
            return Err(Error::InvalidPlan("empty Eb/N0 grid"));
        }
        if !self.ebn0_db.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidPlan("Eb/N0 grid must be ascending"));
        }
        if !self.ebn0_db.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidPlan("Eb/N0 grid must be finite"));
        }
        if self.min_errors == 0 {
            return Err(Error::InvalidPlan("min_errors must be at least 1"));
        }
        if self.max_trials == 0 {
            return Err(Error::InvalidPlan("max_trials must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::InvalidPlan("workers must be at least 1"));
        }
        Ok(())
    }
}

/// Accumulated statistics of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    /// Eb/N0 of the point, dB.
    pub ebn0_db: f64,
    /// Codewords simulated.
    pub trials: u64,
    /// Decoded blocks differing from the transmitted codeword.
    pub cw_errors: u64,
    /// Total differing bits across all blocks.
    pub bit_errors: u64,
    /// Decoder iterations summed over trials.
    pub total_iterations: u64,
    /// Trials whose final hard decision satisfied all checks.
    pub converged: u64,
}

impl PointResult {
    /// Codeword error rate.
    pub fn cer(&self) -> f64 {
        self.cw_errors as f64 / self.trials as f64
    }

    /// Bit error rate over blocks of `n` bits.
    pub fn ber(&self, n: usize) -> f64 {
        self.bit_errors as f64 / (self.trials as f64 * n as f64)
    }

    /// 95% binomial confidence half-width on the codeword error rate.
    pub fn cer_ci95(&self) -> f64 {
        let p = self.cer();
        1.96 * (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Mean decoder iterations.
    pub fn avg_iterations(&self) -> f64 {
        self.total_iterations as f64 / self.trials as f64
    }
}

/// Full campaign result with the plan echo needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Per-point statistics, in grid order.
    pub points: Vec<PointResult>,
    /// Master seed used.
    pub seed: u64,
    /// Decoder tag.
    pub decoder: String,
    /// Iteration cap used.
    pub max_iterations: usize,
    /// Block length simulated.
    pub n: usize,
    /// Information length simulated.
    pub k_eff: usize,
}

impl SimResult {
    /// Run metadata as a key-value text block.
    pub fn metadata(&self) -> String {
        format!(
            "seed={}\ndecoder={}\nmax_iterations={}\nn={}\nk={}\nrate={:.6}\n",
            self.seed,
            self.decoder,
            self.max_iterations,
            self.n,
            self.k_eff,
            self.k_eff as f64 / self.n as f64
        )
    }

    /// CSV rows: `ebn0_db,trials,cw_errors,bit_errors,cer,cer_ci95,avg_iters`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("ebn0_db,trials,cw_errors,bit_errors,cer,cer_ci95,avg_iters\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{:.6e},{:.6e},{:.3}\n",
                p.ebn0_db,
                p.trials,
                p.cw_errors,
                p.bit_errors,
                p.cer(),
                p.cer_ci95(),
                p.avg_iterations()
            ));
        }
        out
    }
}

#[derive(Default, Clone, Copy)]
struct ChunkStats {
    trials: u64,
    cw_errors: u64,
    bit_errors: u64,
    total_iterations: u64,
    converged: u64,
}

impl ChunkStats {
    fn merge(&mut self, other: &ChunkStats) {
        self.trials += other.trials;
        self.cw_errors += other.cw_errors;
        self.bit_errors += other.bit_errors;
        self.total_iterations += other.total_iterations;
        self.converged += other.converged;
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic per-trial substream: the key mixes the master seed, grid
/// point index and trial counter.
fn trial_rng(seed: u64, point: usize, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let a = splitmix(seed ^ 0xa5a5_a5a5_0000_0000);
    let b = splitmix(a ^ point as u64);
    let c = splitmix(b ^ trial);
    let d = splitmix(c ^ 0x5151_dead_beef_5151);
    key[..8].copy_from_slice(&a.to_le_bytes());
    key[8..16].copy_from_slice(&b.to_le_bytes());
    key[16..24].copy_from_slice(&c.to_le_bytes());
    key[24..32].copy_from_slice(&d.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

struct TrialContext<'a> {
    code: &'a PrcLdpcCode,
    cfg: EncoderConfig,
    graph: &'a DecoderGraph,
    variant: DecoderVariant,
    max_iterations: usize,
    sigma: f64,
    all_zero: bool,
    seed: u64,
    point: usize,
}

fn run_chunk(ctx: &TrialContext<'_>, first_trial: u64, count: u64) -> ChunkStats {
    let mut stats = ChunkStats::default();
    let mut encoder = LfsrEncoder::new(128).expect("register size is valid");
    let n = ctx.code.n();
    let k_eff = ctx.code.k_eff();
    let two_over_sigma_sq = 2.0 / (ctx.sigma * ctx.sigma);
    let mut llr = vec![0.0f64; n];
    for t in first_trial..first_trial + count {
        let mut rng = trial_rng(ctx.seed, ctx.point, t);
        let cw: Vec<u8> = if ctx.all_zero {
            vec![0u8; n]
        } else {
            let mut info = vec![0u8; k_eff];
            for b in info.iter_mut() {
                *b = u8::from(rng.random::<bool>());
            }
            if ctx.code.z() == 0 {
                encoder
                    .encode(&ctx.cfg, &info)
                    .expect("plan dimensions are consistent")
            } else {
                encoder
                    .encode_code(ctx.code, &info)
                    .expect("plan dimensions are consistent")
            }
        };
        for (i, &b) in cw.iter().enumerate() {
            let x = if b == 0 { 1.0 } else { -1.0 };
            let noise: f64 = rng.sample(StandardNormal);
            let y = x + ctx.sigma * noise;
            llr[i] = two_over_sigma_sq * y;
        }
        let DecodeOutcome {
            word,
            iterations,
            converged,
        } = ctx
            .graph
            .decode(&llr, ctx.variant, ctx.max_iterations)
            .expect("length matches the graph");
        let bit_errs = word
            .iter()
            .zip(&cw)
            .filter(|(a, b)| a != b)
            .count() as u64;
        stats.trials += 1;
        stats.bit_errors += bit_errs;
        stats.cw_errors += u64::from(bit_errs > 0);
        stats.total_iterations += iterations as u64;
        stats.converged += u64::from(converged);
    }
    stats
}

/// Runs the campaign. Equal seeds produce bit-identical results for any
/// worker count.
pub fn run(plan: &SimPlan) -> Result<SimResult> {
    plan.validate()?;
    let rate = plan.code.k_eff() as f64 / plan.code.n() as f64;
    let graph = DecoderGraph::for_code(&plan.code);
    let cfg = EncoderConfig::for_code(&plan.code);
    let mut points = Vec::with_capacity(plan.ebn0_db.len());
    for (point, &ebn0_db) in plan.ebn0_db.iter().enumerate() {
        let ebn0 = 10f64.powf(ebn0_db / 10.0);
        let sigma = (1.0 / (2.0 * rate * ebn0)).sqrt();
        let ctx = TrialContext {
            code: &plan.code,
            cfg: cfg.clone(),
            graph: &graph,
            variant: plan.variant,
            max_iterations: plan.max_iterations,
            sigma,
            all_zero: plan.all_zero_shortcut,
            seed: plan.seed,
            point,
        };
        let mut acc = ChunkStats::default();
        let mut next_trial = 0u64;
        while acc.cw_errors < plan.min_errors && acc.trials < plan.max_trials {
            let remaining = plan.max_trials - acc.trials;
            let round = (CHUNK * CHUNKS_PER_ROUND).min(remaining);
            let chunks: Vec<(u64, u64)> = (0..round.div_ceil(CHUNK))
                .map(|c| {
                    let start = next_trial + c * CHUNK;
                    let len = CHUNK.min(next_trial + round - start);
                    (start, len)
                })
                .collect();
            let mut results: Vec<Option<ChunkStats>> = vec![None; chunks.len()];
            if plan.workers <= 1 || chunks.len() == 1 {
                for (slot, &(start, len)) in results.iter_mut().zip(&chunks) {
                    *slot = Some(run_chunk(&ctx, start, len));
                }
            } else {
                std::thread::scope(|scope| {
                    let chunk_list = &chunks;
                    let ctx_ref = &ctx;
                    let mut handles = Vec::new();
                    for w in 0..plan.workers.min(chunk_list.len()) {
                        handles.push(scope.spawn(move || {
                            let mut mine = Vec::new();
                            let mut idx = w;
                            while idx < chunk_list.len() {
                                let (start, len) = chunk_list[idx];
                                mine.push((idx, run_chunk(ctx_ref, start, len)));
                                idx += plan.workers;
                            }
                            mine
                        }));
                    }
                    for handle in handles {
                        for (idx, stats) in handle.join().expect("worker panicked") {
                            results[idx] = Some(stats);
                        }
                    }
                });
            }
            // merge in chunk order: identical result for any worker count
            for stats in results.into_iter().flatten() {
                acc.merge(&stats);
            }
            next_trial += round;
        }
        points.push(PointResult {
            ebn0_db,
            trials: acc.trials,
            cw_errors: acc.cw_errors,
            bit_errors: acc.bit_errors,
            total_iterations: acc.total_iterations,
            converged: acc.converged,
        });
    }
    Ok(SimResult {
        points,
        seed: plan.seed,
        decoder: plan.variant.tag(),
        max_iterations: plan.max_iterations,
        n: plan.code.n(),
        k_eff: plan.code.k_eff(),
    })
}

/// Horizontal gap between two curves at one codeword error rate.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    /// CER level the gap was measured at.
    pub cer: f64,
    /// Eb/N0 (dB) where curve A crosses the level.
    pub ebn0_a: f64,
    /// Eb/N0 (dB) where curve B crosses the level.
    pub ebn0_b: f64,
    /// `ebn0_b - ebn0_a` in dB.
    pub gap_db: f64,
}

/// Eb/N0 at which the curve crosses `level`, interpolating log10(CER)
/// linearly between grid points.
fn crossing(points: &[PointResult], level: f64) -> Option<f64> {
    let log_level = level.log10();
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.cw_errors == 0 || b.cw_errors == 0 {
            continue;
        }
        let (la, lb) = (a.cer().log10(), b.cer().log10());
        if (la - log_level) * (lb - log_level) <= 0.0 && la != lb {
            let t = (log_level - la) / (lb - la);
            return Some(a.ebn0_db + t * (b.ebn0_db - a.ebn0_db));
        }
    }
    None
}

/// Measures the horizontal dB gap between two result curves at each
/// requested CER level.
pub fn compare(a: &SimResult, b: &SimResult, levels: &[f64]) -> Result<Vec<GapReport>> {
    let mut out = Vec::with_capacity(levels.len());
    for &level in levels {
        let ea = crossing(&a.points, level).ok_or(Error::NoOverlap)?;
        let eb = crossing(&b.points, level).ok_or(Error::NoOverlap)?;
        out.push(GapReport {
            cer: level,
            ebn0_a: ea,
            ebn0_b: eb,
            gap_db: eb - ea,
        });
    }
    Ok(out)
}
