//! Systematic LFSR encoding and iterative belief-propagation decoding.
//!
//! One physical shift register encodes every code of the family: the tap
//! switches are just the coefficients of the selected parity-check
//! polynomial, and the output length is the only other knob. The first `k`
//! emitted bits are the information word; the register then keeps running
//! for `r` more ticks, each output bit satisfying one band row of the
//! parity-check matrix, so encoding costs O(n) like generating an LFSR
//! stream.

use crate::code::{ParityCheckMatrix, PrcLdpcCode};
use crate::gf2poly::{mersenne, BinaryPolynomial};
use crate::{Error, Result};

/// Message magnitudes are clipped to this bound in the decoders.
pub const LLR_CLIP: f64 = 25.0;

/// Switch configuration of the encoder: which polynomial drives the taps
/// and how many bits to emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderConfig {
    h: BinaryPolynomial,
    taps: u128,
    k: usize,
    n: usize,
}

impl EncoderConfig {
    /// Configures taps for `h` and an output length `n` in
    /// `[k + 1, 2^k - 1]`.
    pub fn new(h: &BinaryPolynomial, n: usize) -> Result<Self> {
        let k = h.degree().ok_or(Error::InvalidPolynomial("zero polynomial"))?;
        if k == 0 || !h.coeff(0) {
            return Err(Error::InvalidPolynomial(
                "parity-check polynomial needs h(0) = 1 and degree >= 1",
            ));
        }
        if n < k + 1 || n as u128 > mersenne(k as u32) {
            return Err(Error::LengthOutOfRange {
                n,
                min: k + 1,
                max: mersenne(k as u32),
            });
        }
        let mut taps = 0u128;
        for e in h.support() {
            if e < k {
                taps |= 1 << e;
            }
        }
        Ok(Self {
            h: h.clone(),
            taps,
            k,
            n,
        })
    }

    /// Configuration matching the parent (unshortened) block of `code`.
    pub fn for_code(code: &PrcLdpcCode) -> Self {
        Self::new(code.h(), code.parent_n()).expect("code invariants imply a valid config")
    }

    /// The configured polynomial.
    pub fn h(&self) -> &BinaryPolynomial {
        &self.h
    }

    /// Output length.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// A reusable encoder register of fixed physical size; any polynomial of
/// degree at most `k_max` runs on it by reconfiguring the tap switches.
#[derive(Debug, Clone)]
pub struct LfsrEncoder {
    register: u128,
    k_max: usize,
}

impl LfsrEncoder {
    /// Builds a register of `k_max` cells (at most 128).
    pub fn new(k_max: usize) -> Result<Self> {
        if k_max == 0 || k_max > 128 {
            return Err(Error::DegreeTooLarge(k_max));
        }
        Ok(Self {
            register: 0,
            k_max,
        })
    }

    /// Encodes systematically: the output starts with `info` and continues
    /// with `n - k` register-generated parity bits.
    pub fn encode(&mut self, cfg: &EncoderConfig, info: &[u8]) -> Result<Vec<u8>> {
        if cfg.k > self.k_max {
            return Err(Error::DegreeTooLarge(cfg.k));
        }
        if info.len() != cfg.k {
            return Err(Error::LengthMismatch {
                expected: cfg.k,
                got: info.len(),
            });
        }
        let mut out = Vec::with_capacity(cfg.n);
        self.register = 0;
        for (i, &b) in info.iter().enumerate() {
            out.push(b & 1);
            self.register |= ((b & 1) as u128) << i;
        }
        for _ in cfg.k..cfg.n {
            let bit = (self.register & cfg.taps).count_ones() as u128 & 1;
            out.push(bit as u8);
            self.register = (self.register >> 1) | (bit << (cfg.k - 1));
        }
        Ok(out)
    }

    /// Encodes for a possibly shortened code: the shortened information
    /// positions are pinned to zero, the parent block is generated, and the
    /// shortened columns are stripped from the output.
    pub fn encode_code(&mut self, code: &PrcLdpcCode, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != code.k_eff() {
            return Err(Error::LengthMismatch {
                expected: code.k_eff(),
                got: info.len(),
            });
        }
        let cfg = EncoderConfig::for_code(code);
        let shortened = code.shortened_columns();
        let mut full_info = vec![0u8; code.k()];
        let mut src = info.iter();
        for (pos, slot) in full_info.iter_mut().enumerate() {
            if shortened.binary_search(&pos).is_err() {
                *slot = *src.next().expect("k_eff free positions");
            }
        }
        let parent = self.encode(&cfg, &full_info)?;
        Ok(parent
            .into_iter()
            .enumerate()
            .filter_map(|(pos, b)| shortened.binary_search(&pos).is_err().then_some(b))
            .collect())
    }
}

/// Belief-propagation flavor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecoderVariant {
    /// Log-domain sum-product (tanh rule).
    SumProduct,
    /// Min-sum approximation.
    MinSum,
    /// Min-sum scaled by a normalization factor (0.75 unless configured).
    NormalizedMinSum(f64),
}

impl DecoderVariant {
    /// Tag used in run metadata.
    pub fn tag(&self) -> String {
        match self {
            DecoderVariant::SumProduct => "sum-product".into(),
            DecoderVariant::MinSum => "min-sum".into(),
            DecoderVariant::NormalizedMinSum(f) => format!("normalized-min-sum({f})"),
        }
    }
}

/// Default normalization factor for the scaled min-sum variant.
pub const DEFAULT_NMS_FACTOR: f64 = 0.75;

/// Decoding outcome: hard decision plus convergence bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// Hard-decision word (positive LLR decodes to 0).
    pub word: Vec<u8>,
    /// Iterations actually run.
    pub iterations: usize,
    /// Whether the hard decision satisfied every check before the cap.
    pub converged: bool,
}

/// Tanner-graph adjacency with flat per-edge message storage.
#[derive(Debug, Clone)]
pub struct DecoderGraph {
    n: usize,
    /// Edge target variable, grouped by check.
    edge_var: Vec<u32>,
    /// Edge range of each check in `edge_var`.
    check_bounds: Vec<(u32, u32)>,
    /// Edge ids touching each variable.
    var_edges: Vec<Vec<u32>>,
}

impl DecoderGraph {
    /// Builds the graph of a materialized parity-check matrix.
    pub fn new(matrix: &ParityCheckMatrix) -> Self {
        let n = matrix.num_cols();
        let mut edge_var = Vec::new();
        let mut check_bounds = Vec::with_capacity(matrix.num_rows());
        let mut var_edges = vec![Vec::new(); n];
        for c in 0..matrix.num_rows() {
            let lo = edge_var.len() as u32;
            for &v in matrix.row(c) {
                var_edges[v].push(edge_var.len() as u32);
                edge_var.push(v as u32);
            }
            check_bounds.push((lo, edge_var.len() as u32));
        }
        Self {
            n,
            edge_var,
            check_bounds,
            var_edges,
        }
    }

    /// Graph for `code`'s current matrix.
    pub fn for_code(code: &PrcLdpcCode) -> Self {
        Self::new(&code.matrix())
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of checks.
    pub fn num_checks(&self) -> usize {
        self.check_bounds.len()
    }

    fn hard_decision(&self, llr: &[f64], check_to_var: &[f64], out: &mut [u8]) {
        for v in 0..self.n {
            let total: f64 = llr[v] + self.var_edges[v].iter().map(|&e| check_to_var[e as usize]).sum::<f64>();
            out[v] = u8::from(total < 0.0);
        }
    }

    fn syndrome_ok(&self, word: &[u8]) -> bool {
        self.check_bounds.iter().all(|&(lo, hi)| {
            self.edge_var[lo as usize..hi as usize]
                .iter()
                .fold(0u8, |acc, &v| acc ^ word[v as usize])
                == 0
        })
    }

    /// Runs message passing until the hard decision satisfies every check
    /// or `max_iterations` is reached. Positive LLRs vote for bit 0.
    ///
    /// Non-convergence is not an error: the hard decision at the cap is
    /// returned with `converged = false`.
    pub fn decode(
        &self,
        llr: &[f64],
        variant: DecoderVariant,
        max_iterations: usize,
    ) -> Result<DecodeOutcome> {
        if llr.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: llr.len(),
            });
        }
        let edges = self.edge_var.len();
        let mut check_to_var = vec![0.0f64; edges];
        let mut var_to_check = vec![0.0f64; edges];
        let mut word = vec![0u8; self.n];

        // iteration 0: channel values only
        self.hard_decision(llr, &check_to_var, &mut word);
        if self.syndrome_ok(&word) {
            return Ok(DecodeOutcome {
                word,
                iterations: 0,
                converged: true,
            });
        }

        let clip = |x: f64| x.clamp(-LLR_CLIP, LLR_CLIP);
        for iter in 1..=max_iterations {
            // variable-to-check: total belief minus the edge's own message
            for (ch, edges) in llr.iter().zip(&self.var_edges) {
                let total: f64 =
                    ch + edges.iter().map(|&e| check_to_var[e as usize]).sum::<f64>();
                for &e in edges {
                    var_to_check[e as usize] = clip(total - check_to_var[e as usize]);
                }
            }
            // check-to-var: extrinsic combination over the other edges
            for &(lo, hi) in &self.check_bounds {
                let (lo, hi) = (lo as usize, hi as usize);
                match variant {
                    DecoderVariant::SumProduct => {
                        // prefix/suffix products of tanh(m/2)
                        let deg = hi - lo;
                        let mut prefix = [1.0f64; 32];
                        let mut t = [0.0f64; 32];
                        debug_assert!(deg < 32);
                        let mut acc = 1.0;
                        for (i, e) in (lo..hi).enumerate() {
                            prefix[i] = acc;
                            t[i] = (var_to_check[e] / 2.0).tanh();
                            acc *= t[i];
                        }
                        let mut suffix = 1.0;
                        for (i, e) in (lo..hi).enumerate().rev() {
                            let prod = prefix[i] * suffix;
                            // atanh saturates; clamp the argument first
                            let arg = prod.clamp(-0.999_999_999_999, 0.999_999_999_999);
                            check_to_var[e] = clip(2.0 * arg.atanh());
                            suffix *= t[i];
                        }
                    }
                    DecoderVariant::MinSum | DecoderVariant::NormalizedMinSum(_) => {
                        let factor = match variant {
                            DecoderVariant::NormalizedMinSum(f) => f,
                            _ => 1.0,
                        };
                        let mut sign = 1.0f64;
                        let (mut min1, mut min2) = (f64::INFINITY, f64::INFINITY);
                        let mut argmin = lo;
                        for (off, &m) in var_to_check[lo..hi].iter().enumerate() {
                            if m < 0.0 {
                                sign = -sign;
                            }
                            let a = m.abs();
                            if a < min1 {
                                min2 = min1;
                                min1 = a;
                                argmin = lo + off;
                            } else if a < min2 {
                                min2 = a;
                            }
                        }
                        for e in lo..hi {
                            let m = var_to_check[e];
                            let local_sign = sign * if m < 0.0 { -1.0 } else { 1.0 };
                            let mag = if e == argmin { min2 } else { min1 };
                            check_to_var[e] = clip(factor * local_sign * mag);
                        }
                    }
                }
            }
            self.hard_decision(llr, &check_to_var, &mut word);
            if self.syndrome_ok(&word) {
                return Ok(DecodeOutcome {
                    word,
                    iterations: iter,
                    converged: true,
                });
            }
        }
        Ok(DecodeOutcome {
            word,
            iterations: max_iterations,
            converged: false,
        })
    }
}

/// Binary-operation count per decoded codeword of the log-domain
/// sum-product decoder on 8-bit values:
/// `n * i_avg * (8 (8 wc + 12 R - 11) + wc)` with `wc = (1 - R) w_h`.
pub fn complexity_estimate(n: usize, rate: f64, w_h: usize, i_avg: f64) -> f64 {
    let wc = (1.0 - rate) * w_h as f64;
    let f = 8.0 * (8.0 * wc + 12.0 * rate - 11.0) + wc;
    n as f64 * i_avg * f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::ShortenSide;
    use crate::pnseq;

    fn poly(exps: &[usize]) -> BinaryPolynomial {
        BinaryPolynomial::from_exponents(exps).unwrap()
    }

    #[test]
    fn encode_reference_sequence() {
        let mut enc = LfsrEncoder::new(16).unwrap();
        let cfg = EncoderConfig::new(&poly(&[0, 2, 3]), 7).unwrap();
        let cw = enc.encode(&cfg, &[1, 1, 1]).unwrap();
        assert_eq!(cw, vec![1, 1, 1, 0, 1, 0, 0]);
        // linearity: all-zero input stays all-zero
        assert_eq!(enc.encode(&cfg, &[0, 0, 0]).unwrap(), vec![0; 7]);
    }

    #[test]
    fn encode_is_systematic_with_zero_syndrome() {
        let h = poly(&[0, 1, 5, 11, 13]);
        let code = PrcLdpcCode::build(&h, 26).unwrap();
        let mut enc = LfsrEncoder::new(128).unwrap();
        let cfg = EncoderConfig::for_code(&code);
        let mut state = 0x2cafu64;
        for _ in 0..200 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let info: Vec<u8> = (0..13).map(|i| (state >> i & 1) as u8).collect();
            let cw = enc.encode(&cfg, &info).unwrap();
            assert_eq!(&cw[..13], &info[..]);
            assert!(code.syndrome(&cw).unwrap().iter().all(|&b| b == 0));
        }
    }

    #[test]
    fn encode_matches_unique_sequence_window() {
        let h = poly(&[0, 2, 8, 12, 15]);
        let p = pnseq::generate_full(&h).unwrap();
        let code = PrcLdpcCode::build(&h, 40).unwrap();
        let cfg = EncoderConfig::for_code(&code);
        let mut enc = LfsrEncoder::new(128).unwrap();
        let mut state = 1u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(99);
            let info: Vec<u8> = (0..15).map(|i| (state >> i & 1) as u8).collect();
            if info.iter().all(|&b| b == 0) {
                continue;
            }
            let cw = enc.encode(&cfg, &info).unwrap();
            let start = p.find_window(&info).expect("every nonzero tuple occurs");
            assert_eq!(cw, p.window(start, 40));
        }
    }

    #[test]
    fn shortened_encoding_strips_pinned_columns() {
        let h = poly(&[0, 1, 5, 11, 13]);
        let code = PrcLdpcCode::build(&h, 26)
            .unwrap()
            .shorten(3, ShortenSide::Head)
            .unwrap();
        let mut enc = LfsrEncoder::new(128).unwrap();
        let info: Vec<u8> = vec![1, 0, 1, 1, 0, 0, 1, 0, 1, 0];
        let cw = enc.encode_code(&code, &info).unwrap();
        assert_eq!(cw.len(), 23);
        assert!(code.syndrome(&cw).unwrap().iter().all(|&b| b == 0));
        assert_eq!(&cw[..10], &info[..]);
    }

    #[test]
    fn encoder_rejects_bad_dimensions() {
        let mut enc = LfsrEncoder::new(8).unwrap();
        let cfg = EncoderConfig::new(&poly(&[0, 1, 5, 11, 13]), 26).unwrap();
        assert!(matches!(
            enc.encode(&cfg, &[0; 13]),
            Err(Error::DegreeTooLarge(13))
        ));
        let mut enc = LfsrEncoder::new(16).unwrap();
        assert!(matches!(
            enc.encode(&cfg, &[0; 12]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(EncoderConfig::new(&poly(&[0, 2, 3]), 8).is_err());
        assert!(EncoderConfig::new(&poly(&[1, 3]), 6).is_err());
    }

    fn llr_for(word: &[u8], mag: f64) -> Vec<f64> {
        word.iter()
            .map(|&b| if b == 0 { mag } else { -mag })
            .collect()
    }

    #[test]
    fn decode_noiseless_is_a_fixed_point() {
        let h = poly(&[0, 2, 3]);
        let code = PrcLdpcCode::build(&h, 7).unwrap();
        let graph = DecoderGraph::for_code(&code);
        let cw = vec![1, 1, 1, 0, 1, 0, 0];
        for variant in [
            DecoderVariant::SumProduct,
            DecoderVariant::MinSum,
            DecoderVariant::NormalizedMinSum(DEFAULT_NMS_FACTOR),
        ] {
            let out = graph.decode(&llr_for(&cw, 20.0), variant, 100).unwrap();
            assert!(out.converged);
            assert_eq!(out.iterations, 0);
            assert_eq!(out.word, cw);
        }
    }

    #[test]
    fn decode_corrects_any_single_flip_on_distance4_code() {
        // the (7,3) parent has d = 4: one flip is always inside half the
        // minimum distance
        let h = poly(&[0, 2, 3]);
        let code = PrcLdpcCode::build(&h, 7).unwrap();
        let graph = DecoderGraph::for_code(&code);
        let p = pnseq::generate_full(&h).unwrap();
        let mut words: Vec<Vec<u8>> = (0..7).map(|s| p.window(s, 7)).collect();
        words.push(vec![0; 7]);
        for cw in words {
            for flip in 0..7 {
                let mut llr = llr_for(&cw, 8.0);
                llr[flip] = -llr[flip];
                let out = graph.decode(&llr, DecoderVariant::SumProduct, 100).unwrap();
                assert!(out.converged, "flip {flip} of {cw:?}");
                assert_eq!(out.word, cw, "flip {flip}");
            }
        }
    }

    #[test]
    fn decode_total_erasure_does_not_converge() {
        let h = poly(&[0, 2, 3]);
        let code = PrcLdpcCode::build(&h, 7).unwrap();
        let graph = DecoderGraph::for_code(&code);
        let out = graph
            .decode(&[0.0; 7], DecoderVariant::SumProduct, 50)
            .unwrap();
        // all-zero LLRs carry no information; the all-zero hard decision is
        // technically a codeword, accept either outcome but require the cap
        // not to be exceeded
        assert!(out.iterations <= 50);
    }

    #[test]
    fn minsum_and_sumproduct_agree_at_high_magnitude() {
        let h = poly(&[0, 1, 5, 11, 13]);
        let code = PrcLdpcCode::build(&h, 26).unwrap();
        let graph = DecoderGraph::for_code(&code);
        let mut enc = LfsrEncoder::new(128).unwrap();
        let cfg = EncoderConfig::for_code(&code);
        let mut state = 77u64;
        for _ in 0..300 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(12345);
            let info: Vec<u8> = (0..13).map(|i| (state >> i & 1) as u8).collect();
            let cw = enc.encode(&cfg, &info).unwrap();
            let llr = llr_for(&cw, 25.0);
            let a = graph.decode(&llr, DecoderVariant::SumProduct, 20).unwrap();
            let b = graph.decode(&llr, DecoderVariant::MinSum, 20).unwrap();
            assert_eq!(a.word, b.word);
        }
    }

    #[test]
    fn complexity_reference_values() {
        // wc = 2.5, f = 8 (20 + 6 - 11) + 2.5 = 122.5
        let lam = complexity_estimate(100, 0.5, 5, 10.0);
        assert!((lam - 122_500.0).abs() < 1e-9);
        // doubling n doubles the count
        assert!((complexity_estimate(200, 0.5, 5, 10.0) - 2.0 * lam).abs() < 1e-9);
        // wc = 3.5, f = 8 (28 + 6 - 11) + 3.5 = 187.5
        let f = complexity_estimate(1, 0.5, 7, 1.0);
        assert!((f - 187.5).abs() < 1e-9);
    }

    #[test]
    fn decode_rejects_bad_length() {
        let h = poly(&[0, 2, 3]);
        let code = PrcLdpcCode::build(&h, 7).unwrap();
        let graph = DecoderGraph::for_code(&code);
        assert!(matches!(
            graph.decode(&[0.0; 6], DecoderVariant::SumProduct, 10),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
