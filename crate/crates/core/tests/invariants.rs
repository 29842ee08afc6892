//! Cross-module invariants: independent oracles agreeing with each other,
//! monotonicity under puncturing, analytic bounds against exhaustive
//! enumeration, and the encoder's linear-time behavior.

use prcldpc::code::PrcLdpcCode;
use prcldpc::codec::{DecoderGraph, DecoderVariant, EncoderConfig, LfsrEncoder};
use prcldpc::gf2poly::{BinaryPolynomial, MersenneFactorTable};
use prcldpc::pnseq;
use prcldpc::ruler;
use prcldpc::spectrum::{self, ExactOracle};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(exps: &[usize]) -> BinaryPolynomial {
    BinaryPolynomial::from_exponents(exps).unwrap()
}

/// Every primitive weight-5 Golomb polynomial with k in 10..=12.
fn small_reference_family() -> Vec<BinaryPolynomial> {
    let table = MersenneFactorTable::bundled();
    let mut out = Vec::new();
    for k in 10..=12usize {
        for a in 1..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    let marks = [0, a, b, c, k];
                    if !ruler::is_golomb(&marks) {
                        continue;
                    }
                    let h = poly(&marks);
                    if h.is_primitive(table).unwrap() {
                        out.push(h);
                    }
                }
            }
        }
    }
    out
}

/// The window sweep and brute-force encoding of all 2^k information words
/// are independent oracles; their minimum distances must agree.
#[test]
fn window_sweep_agrees_with_information_word_enumeration() {
    for (h, n) in [
        (poly(&[0, 3, 10]), 20usize),
        (poly(&[0, 3, 10]), 25),
        (poly(&[0, 2, 11]), 24),
        (poly(&[0, 1, 5, 11, 13]), 21),
        (poly(&[0, 1, 5, 11, 13]), 26),
    ] {
        let k = h.degree().unwrap();
        let code = PrcLdpcCode::build(&h, n).unwrap();
        let sweep = spectrum::exact_spectrum_capped(&code, n).unwrap();

        let cfg = EncoderConfig::new(&h, n).unwrap();
        let mut enc = LfsrEncoder::new(128).unwrap();
        let mut min_w = usize::MAX;
        let mut count_at_min = 0u64;
        for word in 1u64..1 << k {
            let info: Vec<u8> = (0..k).map(|i| (word >> i & 1) as u8).collect();
            let cw = enc.encode(&cfg, &info).unwrap();
            let w = cw.iter().filter(|&&b| b == 1).count();
            match w.cmp(&min_w) {
                std::cmp::Ordering::Less => {
                    min_w = w;
                    count_at_min = 1;
                }
                std::cmp::Ordering::Equal => count_at_min += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        assert_eq!((sweep.d, sweep.a_d), (min_w, count_at_min), "at n = {n}");
    }
}

/// Puncturing removes one trailing symbol: the minimum distance never
/// drops by more than one, and it is non-decreasing in n.
#[test]
fn puncturing_monotonicity_on_oracle_data() {
    let h = poly(&[0, 1, 5, 11, 13]);
    let oracle = ExactOracle::new(&h).unwrap();
    let mut prev_d: Option<usize> = None;
    for n in 15..=45usize {
        let code = PrcLdpcCode::build(&h, n).unwrap();
        let d = oracle.spectrum(&code, 0).d;
        if let Some(p) = prev_d {
            assert!(d >= p, "d decreased from {p} to {d} at n = {n}");
            assert!(p >= d.saturating_sub(1), "drop bigger than 1 at n = {n}");
            assert_eq!(
                spectrum::puncture_distance_floor(d, 1),
                d - 1.min(d),
                "floor helper"
            );
        }
        prev_d = Some(d);
    }
}

/// Every truncated codeword of a punctured code is a codeword of the
/// punctured code (enumerated for the degree-13 family).
#[test]
fn puncture_then_enumerate_equals_enumerate_then_truncate() {
    let h = poly(&[0, 1, 5, 11, 13]);
    let p = pnseq::generate_full(&h).unwrap();
    let parent = PrcLdpcCode::build(&h, 24).unwrap();
    let child = parent.puncture(3).unwrap();
    for start in 0..p.len() {
        let w24 = p.window(start, 24);
        let w21 = p.window(start, 21);
        assert_eq!(&w24[..21], &w21[..]);
        assert!(child.syndrome(&w21).unwrap().iter().all(|&b| b == 0));
    }
}

/// Quality-compliant codes short enough to sit inside the zero zones
/// around h* have minimum distance at most the row weight.
#[test]
fn zero_zone_window_corollary_against_oracle() {
    let mut applied = 0usize;
    for h in small_reference_family() {
        let profile = ruler::profile(&h).unwrap();
        if !ruler::design_quality(&profile).good_practice() {
            continue;
        }
        let k = profile.degree;
        let n_max = 2 * profile.s_max + k - 1;
        for n in [k + profile.s_max, n_max] {
            let code = PrcLdpcCode::build(&h, n).unwrap();
            let s = spectrum::exact_spectrum(&code).unwrap();
            assert!(s.d <= 5, "d = {} at n = {n} for {h:?}", s.d);
            applied += 1;
        }
    }
    assert!(applied > 0);
}

/// The single-survivor growth rule: a family at its last block length has
/// exactly one codeword `c`, directly bordered by ones in the sequence;
/// the codes one and two symbols longer then contain `[c,1]`, `[1,c]` and
/// `[1,c,1]`, giving at least two codewords of the next weight.
#[test]
fn single_survivor_growth_produces_bordered_codewords() {
    let h = poly(&[0, 1, 5, 11, 13]);
    let p = pnseq::generate_full(&h).unwrap();
    let oracle = ExactOracle::new(&h).unwrap();
    let mut checked = 0usize;
    for n in 19..=34usize {
        let code = PrcLdpcCode::build(&h, n).unwrap();
        let s = oracle.spectrum(&code, 10);
        let families = spectrum::family_census(&code, s.d).unwrap();
        for f in families.iter().filter(|f| {
            f.weight == s.d && f.count == 1 && n == f.core_len + f.z_left + f.z_right
        }) {
            // the survivor uses every flanking zero
            let start = (f.core_start + p.len() - f.z_left) % p.len();
            let c = p.window(start, n);
            assert_eq!(c.iter().filter(|&&b| b == 1).count(), s.d);
            let (right, left, both) = spectrum::single_survivor_successors(&c);
            let next = PrcLdpcCode::build(&h, n + 1).unwrap();
            assert!(next.syndrome(&right).unwrap().iter().all(|&b| b == 0));
            assert!(next.syndrome(&left).unwrap().iter().all(|&b| b == 0));
            let next2 = PrcLdpcCode::build(&h, n + 2).unwrap();
            assert!(next2.syndrome(&both).unwrap().iter().all(|&b| b == 0));
            // two distinct codewords of weight d + 1 exist one length up
            let s_next = oracle.spectrum(&next, s.d + 1);
            assert!(s_next.count(s.d + 1) >= 2, "A(d+1) at n = {}", n + 1);
            checked += 1;
        }
    }
    assert!(checked > 0, "no single-survivor family encountered");
}

/// Full parity rank whenever r >= s_max, across the reference family.
#[test]
fn parity_checks_are_full_rank_above_rmin() {
    for h in small_reference_family().into_iter().take(12) {
        let profile = ruler::profile(&h).unwrap();
        let k = profile.degree;
        for n in [k + profile.s_max, 2 * k, 3 * k] {
            let code = PrcLdpcCode::build(&h, n).unwrap();
            assert_eq!(code.matrix().rank(), code.r(), "n = {n} for {h:?}");
        }
    }
}

/// Register states of a primitive polynomial cycle through all 2^k - 1
/// nonzero values.
#[test]
fn register_visits_every_nonzero_state() {
    for h in [poly(&[0, 2, 3]), poly(&[0, 1, 4]), poly(&[0, 3, 10])] {
        let k = h.degree().unwrap();
        let mut nav = pnseq::PnNavigator::from_state(&h, 1).unwrap();
        let mut seen = vec![false; 1 << k];
        for _ in 0..(1usize << k) - 1 {
            let s = nav.state() as usize;
            assert!(!seen[s], "state revisited before full period");
            seen[s] = true;
            nav.step_forward();
        }
        assert!(seen[1..].iter().all(|&b| b), "period fell short for {h:?}");
    }
}

/// Estimated distance never undershoots the oracle on the degree-15
/// family.
#[test]
fn estimate_is_an_upper_bound_on_distance_quality() {
    let h = poly(&[0, 2, 8, 12, 15]);
    let oracle = ExactOracle::new(&h).unwrap();
    let radius = spectrum::default_scan_radius(15);
    for n in (16..=40).step_by(3) {
        let code = PrcLdpcCode::build(&h, n).unwrap();
        let exact = oracle.spectrum(&code, 0);
        let est = spectrum::estimate_spectrum_capped(&code, radius, 0).unwrap();
        assert!(est.d >= exact.d, "undershoot at n = {n}");
    }
}

/// When an external separation dominates the sum of all others, the run of
/// `k - 1` zeros abuts the reversed-polynomial tuple: dominant first
/// separation puts it on the right, dominant last separation on the left.
#[test]
fn external_dominance_makes_t1_abut_the_reversed_polynomial() {
    let table = MersenneFactorTable::bundled();
    let mut found = 0usize;
    for k in 5..=16usize {
        // dominant first separation ([0, k-1, k]) ends the generator with
        // the reversed tuple, so the zero run lands on its right; dominant
        // last separation mirrors it
        for (marks, right_side) in [(vec![0usize, k - 1, k], true), (vec![0, 1, k], false)] {
            if !ruler::is_golomb(&marks) {
                continue;
            }
            let h = poly(&marks);
            if !h.is_primitive(table).unwrap() {
                continue;
            }
            let profile = ruler::profile(&h).unwrap();
            let q = ruler::design_quality(&profile);
            assert!(q.external_dominance, "{marks:?}");
            let lm = pnseq::locate_h_star(&h).unwrap();
            if right_side {
                assert!(lm.z1 >= k - 1, "{marks:?}: z1 = {}", lm.z1);
            } else {
                assert!(lm.z0 >= k - 1, "{marks:?}: z0 = {}", lm.z0);
            }
            found += 1;
        }
    }
    assert!(found >= 3, "only {found} dominant polynomials found");
}

/// Min-sum and sum-product agree on the hard decision at very high SNR.
#[test]
fn minsum_matches_sumproduct_at_saturation() {
    let h = poly(&[0, 1, 5, 11, 13]);
    let code = PrcLdpcCode::build(&h, 26).unwrap();
    let graph = DecoderGraph::for_code(&code);
    let cfg = EncoderConfig::for_code(&code);
    let mut enc = LfsrEncoder::new(128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let info: Vec<u8> = (0..13).map(|_| u8::from(rng.random::<bool>())).collect();
        let cw = enc.encode(&cfg, &info).unwrap();
        let llr: Vec<f64> = cw.iter().map(|&b| if b == 0 { 21.0 } else { -21.0 }).collect();
        let a = graph.decode(&llr, DecoderVariant::SumProduct, 30).unwrap();
        let b = graph.decode(&llr, DecoderVariant::MinSum, 30).unwrap();
        assert_eq!(a.word, b.word);
    }
}

/// Encoder wall time grows linearly in the block length: the fitted
/// log-log slope across three decades stays within [0.9, 1.1].
#[test]
fn encoder_time_is_linear_in_block_length() {
    // degree-21 family reaches n = 2^20 comfortably
    let h = poly(&[0, 2, 21]);
    assert!(h
        .is_primitive(MersenneFactorTable::bundled())
        .unwrap());
    let mut enc = LfsrEncoder::new(128).unwrap();
    let info = vec![1u8; 21];
    let lengths = [1usize << 15, 1 << 18, 1 << 20];
    let mut samples = Vec::new();
    for &n in &lengths {
        let cfg = EncoderConfig::new(&h, n).unwrap();
        // warm up, then take the best of nine runs to shed scheduler noise
        let _ = enc.encode(&cfg, &info).unwrap();
        let mut best = f64::INFINITY;
        for _ in 0..9 {
            let t = std::time::Instant::now();
            let cw = enc.encode(&cfg, &info).unwrap();
            let dt = t.elapsed().as_secs_f64();
            assert_eq!(cw.len(), n);
            best = best.min(dt);
        }
        samples.push(((n as f64).ln(), best.ln()));
    }
    // least-squares slope
    let m = samples.len() as f64;
    let sx: f64 = samples.iter().map(|s| s.0).sum();
    let sy: f64 = samples.iter().map(|s| s.1).sum();
    let sxx: f64 = samples.iter().map(|s| s.0 * s.0).sum();
    let sxy: f64 = samples.iter().map(|s| s.0 * s.1).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    assert!(
        (0.9..=1.1).contains(&slope),
        "fitted exponent {slope:.3} outside [0.9, 1.1]"
    );
}

/// Analytic weight-w_h lower bounds stay below the exhaustive count on
/// every qualifying rate-1/2 code of the reference family.
#[test]
fn analytic_counts_are_lower_bounds() {
    for h in small_reference_family() {
        let k = h.degree().unwrap();
        let code = PrcLdpcCode::build(&h, 2 * k).unwrap();
        let bounds = spectrum::lemma_bounds(&code);
        if bounds.wh_lower_counts.is_empty() {
            continue;
        }
        let s = spectrum::exact_spectrum_capped(&code, 5).unwrap();
        for b in &bounds.wh_lower_counts {
            assert!(b.count <= s.count(5), "rule {:?} on {h:?}", b.rule);
        }
    }
}
