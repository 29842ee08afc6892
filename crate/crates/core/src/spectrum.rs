//! Weight spectra, codeword families and minimum-distance machinery.
//!
//! The exact oracle enumerates all `N = 2^k - 1` cyclic windows of the
//! pseudo-noise sequence with O(1) incremental weight updates; it is the
//! ground truth every other distance operation is checked against. The
//! estimator works without materialization at any degree: it scans the
//! thin landmark regions of the sequence (the zero zones flanking `h*` and
//! the weight-2 family cores) plus every window whose end states are
//! sparse, and by construction it can only overestimate the minimum
//! distance.

use std::collections::{BTreeMap, HashMap};

use crate::code::PrcLdpcCode;
use crate::gf2poly::{mersenne, BinaryPolynomial};
use crate::pnseq::{self, PnNavigator, PnSequence, MATERIALIZE_CAP};
use crate::ruler::{self, QualityReport};
use crate::{Error, Result};

/// How a spectrum was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumMethod {
    /// Full window enumeration.
    Exact,
    /// Landmark-region and sparse-state scan; `coverage` is the
    /// approximate fraction of the `N` window start positions examined
    /// (overlapping scans may count a window more than once).
    Estimate { coverage: f64 },
}

impl SpectrumMethod {
    /// Short tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            SpectrumMethod::Exact => "exact",
            SpectrumMethod::Estimate { .. } => "estimate",
        }
    }
}

/// Weight distribution of a code (possibly partial, up to a weight cap).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpectrum {
    /// Block length.
    pub n: usize,
    /// Minimum distance (smallest positive weight with a positive count).
    pub d: usize,
    /// Number of codewords of the minimum weight.
    pub a_d: u64,
    /// `A(w)` for `w = 0` and all observed `w <= w_cap`.
    pub counts: BTreeMap<usize, u64>,
    /// Largest weight tracked in `counts`.
    pub w_cap: usize,
    /// Provenance.
    pub method: SpectrumMethod,
}

impl WeightSpectrum {
    /// `A(w)`, zero when within the cap and absent.
    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }
}

/// Default weight cap for spectra: all tabulated behavior of these codes
/// lives at or just above the row weight.
pub fn default_weight_cap(w_h: usize) -> usize {
    w_h + 4
}

/// Exact window-sweep oracle over a materialized sequence, reusable across
/// block lengths of one polynomial family.
pub struct ExactOracle {
    h: BinaryPolynomial,
    p: PnSequence,
}

impl ExactOracle {
    /// Materializes the sequence of `h` (degree capped at
    /// [`MATERIALIZE_CAP`]).
    pub fn new(h: &BinaryPolynomial) -> Result<Self> {
        let p = pnseq::generate_full(h)?;
        Ok(Self { h: h.clone(), p })
    }

    /// The underlying sequence.
    pub fn sequence(&self) -> &PnSequence {
        &self.p
    }

    /// Exact spectrum of `code`, counting weights up to `w_cap`.
    ///
    /// Every window of the parent length that vanishes on the shortened
    /// columns contributes one codeword; the zero codeword is counted
    /// separately.
    pub fn spectrum(&self, code: &PrcLdpcCode, w_cap: usize) -> WeightSpectrum {
        assert_eq!(code.h(), &self.h, "oracle built for a different polynomial");
        let np = self.p.len();
        let pn = code.parent_n();
        let shortened = code.shortened_columns();

        let mut weight: usize = (0..pn).map(|i| self.p.bit(i) as usize).sum();
        let mut min_w = usize::MAX;
        let mut min_count = 0u64;
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        counts.insert(0, 1);
        for start in 0..np {
            let valid = shortened
                .iter()
                .all(|&off| self.p.bit_cyclic(start + off) == 0);
            if valid {
                match weight.cmp(&min_w) {
                    std::cmp::Ordering::Less => {
                        min_w = weight;
                        min_count = 1;
                    }
                    std::cmp::Ordering::Equal => min_count += 1,
                    std::cmp::Ordering::Greater => {}
                }
                if weight <= w_cap {
                    *counts.entry(weight).or_insert(0) += 1;
                }
            }
            weight -= self.p.bit(start) as usize;
            weight += self.p.bit_cyclic(start + pn) as usize;
        }
        WeightSpectrum {
            n: code.n(),
            d: min_w,
            a_d: min_count,
            counts,
            w_cap,
            method: SpectrumMethod::Exact,
        }
    }
}

/// Exact spectrum with the default weight cap. Degree is limited by the
/// materialization cap.
pub fn exact_spectrum(code: &PrcLdpcCode) -> Result<WeightSpectrum> {
    exact_spectrum_capped(code, default_weight_cap(code.w_h()))
}

/// Exact spectrum with an explicit weight cap.
pub fn exact_spectrum_capped(code: &PrcLdpcCode, w_cap: usize) -> Result<WeightSpectrum> {
    if code.k() > MATERIALIZE_CAP {
        return Err(Error::TooLarge("exact spectrum needs a materialized sequence"));
    }
    Ok(ExactOracle::new(code.h())?.spectrum(code, w_cap))
}

/// A family of codewords: the shift-equivalence class cut from one
/// 1-bordered core of the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRecord {
    /// Absolute position of the core's first one.
    pub core_start: usize,
    /// Core length `L` (first through last one, inclusive).
    pub core_len: usize,
    /// Width of the maximal all-zero run left of the core.
    pub z_left: usize,
    /// Width of the maximal all-zero run right of the core.
    pub z_right: usize,
    /// Core weight.
    pub weight: usize,
    /// Number of weight-`weight` codewords of this family at the census
    /// block length.
    pub count: u64,
}

impl FamilyRecord {
    /// Number of codewords this family contributes at block length `n`,
    /// the trapezoid profile: the family lives for
    /// `n` in `[L, L + z_left + z_right]`.
    pub fn count_at(&self, n: usize) -> u64 {
        family_count_at(self.core_len, self.z_left, self.z_right, n)
    }
}

/// Trapezoid family-size profile for a core of length `l` flanked by zero
/// runs `z_left`, `z_right`.
pub fn family_count_at(l: usize, z_left: usize, z_right: usize, n: usize) -> u64 {
    let (zl, zr) = if z_left >= z_right {
        (z_left, z_right)
    } else {
        (z_right, z_left)
    };
    if n < l {
        0
    } else if n <= l + zr {
        (n - l + 1) as u64
    } else if n <= l + zl {
        (1 + zr) as u64
    } else if n <= l + zl + zr {
        (1 + zr + zl + l - n) as u64
    } else {
        0
    }
}

/// Partitions the low-weight codewords of `code` (weight at most `w_cap`)
/// into families. Exact path: requires materialization and an unshortened
/// code.
pub fn family_census(code: &PrcLdpcCode, w_cap: usize) -> Result<Vec<FamilyRecord>> {
    if code.z() != 0 {
        return Err(Error::InvalidPlan("family census runs on unshortened codes"));
    }
    if code.k() > MATERIALIZE_CAP {
        return Err(Error::TooLarge("family census needs a materialized sequence"));
    }
    let oracle = ExactOracle::new(code.h())?;
    let p = oracle.sequence();
    let np = p.len();
    let n = code.n();

    let mut weight: usize = (0..n).map(|i| p.bit(i) as usize).sum();
    // (core_start, core_len) -> count
    let mut groups: HashMap<(usize, usize), u64> = HashMap::new();
    for start in 0..np {
        if weight >= 1 && weight <= w_cap {
            let first = (0..n)
                .find(|&i| p.bit_cyclic(start + i) == 1)
                .expect("positive weight");
            let last = (0..n)
                .rfind(|&i| p.bit_cyclic(start + i) == 1)
                .expect("positive weight");
            let core_start = (start + first) % np;
            *groups.entry((core_start, last - first + 1)).or_insert(0) += 1;
        }
        weight -= p.bit(start) as usize;
        weight += p.bit_cyclic(start + n) as usize;
    }

    let mut out: Vec<FamilyRecord> = groups
        .into_iter()
        .map(|((core_start, core_len), count)| {
            let z_left = (1..np)
                .take_while(|&j| p.bit_cyclic(core_start + np - j) == 0)
                .count();
            let core_end = core_start + core_len - 1;
            let z_right = (1..np)
                .take_while(|&j| p.bit_cyclic(core_end + j) == 0)
                .count();
            let w = (0..core_len)
                .map(|i| p.bit_cyclic(core_start + i) as usize)
                .sum();
            FamilyRecord {
                core_start,
                core_len,
                z_left,
                z_right,
                weight: w,
                count,
            }
        })
        .collect();
    out.sort_by_key(|f| (f.weight, f.core_start));
    Ok(out)
}

/// One analytic lower bound on `A(w_h)` at rate 1/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhCountBound {
    /// Which separation condition produced the bound.
    pub rule: CountRule,
    /// Guaranteed number of weight-`w_h` codewords.
    pub count: u64,
}

/// Separation conditions yielding weight-`w_h` codewords at rate 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountRule {
    /// `s[0] > internal sum`: at least `s[0] - internal` codewords.
    ExternalFirst,
    /// `s[w-2] > internal sum`.
    ExternalLast,
    /// `s[0] + s[w-2] > internal sum`.
    ExternalSum,
    /// `s[i] > sum of the others`, for the given internal index.
    Internal(usize),
}

/// Why the minimum distance is bounded by the row weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperReason {
    /// An external separation dominates all others, so the all-zero
    /// landmark abuts the reversed-polynomial landmark; any window of
    /// length at most `2k` covers a weight-`w_h` codeword (rates >= 1/2).
    ExternalDominance,
    /// The window is short enough (`n <= 2 s_max + k - 1`) to fit inside
    /// the zero zones around `h*`.
    ZeroZoneWindow,
}

/// Collected analytic statements about one code.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Largest separation.
    pub s_max: usize,
    /// Minimum parity count avoiding zero columns; `d = 1` iff `r < r_min`.
    pub r_min: usize,
    /// Smallest block length with distance 2, `k + s_max`.
    pub n_two: usize,
    /// Whether this code's `r` is below `r_min` (distance exactly 1).
    pub d_is_one: bool,
    /// Reasons, if any, why `d <= w_h` for this code.
    pub d_upper_wh: Vec<UpperReason>,
    /// Lower bounds on `A(w_h)`; populated only at rate exactly 1/2 on an
    /// unshortened code.
    pub wh_lower_counts: Vec<WhCountBound>,
    /// Quality flags the bounds were derived from.
    pub quality: QualityReport,
}

/// Evaluates every applicable analytic statement for `code`.
pub fn lemma_bounds(code: &PrcLdpcCode) -> BoundReport {
    let prof = code.profile();
    let quality = ruler::design_quality(prof);
    let s = &prof.separations;
    let k = prof.degree;
    let internal = prof.internal_sum();
    let total: usize = k;

    let mut d_upper_wh = Vec::new();
    if quality.external_dominance && code.n() <= 2 * k {
        d_upper_wh.push(UpperReason::ExternalDominance);
    }
    if quality.good_practice() && code.n() < 2 * prof.s_max + k {
        d_upper_wh.push(UpperReason::ZeroZoneWindow);
    }

    let mut wh_lower_counts = Vec::new();
    if code.z() == 0 && code.n() == 2 * k {
        if prof.weight >= 3 {
            if prof.s_first() > internal {
                wh_lower_counts.push(WhCountBound {
                    rule: CountRule::ExternalFirst,
                    count: (prof.s_first() - internal) as u64,
                });
            }
            if prof.s_last() > internal {
                wh_lower_counts.push(WhCountBound {
                    rule: CountRule::ExternalLast,
                    count: (prof.s_last() - internal) as u64,
                });
            }
            if prof.s_first() + prof.s_last() > internal {
                wh_lower_counts.push(WhCountBound {
                    rule: CountRule::ExternalSum,
                    count: (prof.s_first() + prof.s_last() - internal) as u64,
                });
            }
        }
        let internal_range = 1..s.len().saturating_sub(1);
        for (i, &si) in s.iter().enumerate() {
            if internal_range.contains(&i) && si > total - si {
                wh_lower_counts.push(WhCountBound {
                    rule: CountRule::Internal(i),
                    count: (si - (total - si)) as u64,
                });
            }
        }
    }

    BoundReport {
        s_max: prof.s_max,
        r_min: prof.s_max,
        n_two: k + prof.s_max,
        d_is_one: code.r() < prof.s_max,
        d_upper_wh,
        wh_lower_counts,
        quality,
    }
}

/// Distance floor after removing `punctures` trailing symbols: each
/// puncture lowers the minimum distance by at most one.
pub fn puncture_distance_floor(d: usize, punctures: usize) -> usize {
    d.saturating_sub(punctures)
}

/// The codewords guaranteed once a family is down to a single survivor `c`
/// of weight `d` at length `n`: `[c,1]` and `[1,c]` at `n + 1` (weight
/// `d + 1`), and `[1,c,1]` at `n + 2` (weight `d + 2`).
pub fn single_survivor_successors(c: &[u8]) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
    let mut right = c.to_vec();
    right.push(1);
    let mut left = vec![1];
    left.extend_from_slice(c);
    let mut both = vec![1];
    both.extend_from_slice(c);
    both.push(1);
    (right, left, both)
}

/// Default landmark scan radius: proportional to the degree, comfortably
/// covering the zero zones (at most `2k`) plus a margin of comb structure.
pub fn default_scan_radius(k: usize) -> usize {
    4 * k
}

/// Weight bound for the sparse-state sweep in the estimator: every window
/// whose first (or last) `k`-bit register state has at most this many ones
/// is enumerated, which makes the estimate exact for codeword weights up to
/// `2 * SPARSE_STATE_CAP + 1` whenever the two end states do not overlap
/// (`n >= 2k`).
pub const SPARSE_STATE_CAP: usize = 5;

/// Estimated spectrum from the sparse portions of the sequence.
///
/// Two complementary scans feed the estimate, deduplicated by window
/// content:
///
/// - landmark regions, `scan_radius` positions around the `h*` tuple with
///   its zero zones and around the two weight-2 family cores (ones
///   separated by the prefix/suffix separation sums);
/// - a sparse-state sweep over every window whose leading or trailing
///   `k`-bit register state has weight at most [`SPARSE_STATE_CAP`], the
///   combinatorial neighborhoods where low-weight codewords must place
///   most of their ones.
///
/// The reported distance can only be an overestimate of the code's true
/// minimum distance: windows outside the scans are never seen. For
/// `n >= 2k` the sweep makes weights up to `2 * SPARSE_STATE_CAP + 1`
/// exact.
pub fn estimate_spectrum(code: &PrcLdpcCode, scan_radius: usize) -> Result<WeightSpectrum> {
    estimate_spectrum_capped(code, scan_radius, default_weight_cap(code.w_h()))
}

/// [`estimate_spectrum`] with an explicit weight cap.
pub fn estimate_spectrum_capped(
    code: &PrcLdpcCode,
    scan_radius: usize,
    w_cap: usize,
) -> Result<WeightSpectrum> {
    let h = code.h();
    let prof = code.profile();
    let k = prof.degree;
    let pn = code.parent_n();
    let shortened = code.shortened_columns();

    let hstar = h.reciprocal();
    let mut hstar_seed = 0u128;
    for e in hstar.support() {
        if e < k {
            hstar_seed |= 1 << e;
        }
    }
    let family_seed = |sep: usize| -> u128 {
        let mut s = 1u128;
        if sep < k {
            s |= 1 << sep;
        }
        s
    };
    let seeds = [
        hstar_seed,
        family_seed(prof.prefix_through_max()),
        family_seed(prof.suffix_from_max()),
    ];

    let mut collector = WindowCollector::new(w_cap, shortened);

    // landmark regions: windows intersecting [seed - R, seed + k + R] need
    // bits out to n - 1 beyond both ends
    let back = scan_radius + pn - 1;
    let fwd = scan_radius + pn;
    for seed in seeds {
        let nav = PnNavigator::from_state(h, seed)?;
        let (bits, _) = nav.stretch(back, fwd);
        if bits.len() < pn {
            continue;
        }
        let words = pn.div_ceil(64);
        for start in 0..=bits.len() - pn {
            let mut packed = vec![0u64; words];
            for (i, &b) in bits[start..start + pn].iter().enumerate() {
                if b == 1 {
                    packed[i / 64] |= 1 << (i % 64);
                }
            }
            collector.offer(&packed);
        }
    }

    sparse_state_sweep(code, SPARSE_STATE_CAP, &mut collector)?;

    let (min_w, min_count, counts, examined) = collector.finish();
    let coverage = (examined as f64 / mersenne(k as u32) as f64).min(1.0);
    Ok(WeightSpectrum {
        n: code.n(),
        d: min_w,
        a_d: min_count,
        counts,
        w_cap,
        method: SpectrumMethod::Estimate { coverage },
    })
}

/// Accumulates candidate windows (packed bits) under a weight cap, keeping
/// memory proportional to the number of low-weight windows only. Windows at
/// or below the cap and windows at the running minimum are deduplicated by
/// content; everything else just updates the running minimum.
struct WindowCollector<'a> {
    w_cap: usize,
    shortened: &'a [usize],
    low: HashMap<Vec<u64>, usize>,
    min_w: usize,
    min_set: std::collections::HashSet<Vec<u64>>,
    examined: u64,
}

impl<'a> WindowCollector<'a> {
    fn new(w_cap: usize, shortened: &'a [usize]) -> Self {
        Self {
            w_cap,
            shortened,
            low: HashMap::new(),
            min_w: usize::MAX,
            min_set: std::collections::HashSet::new(),
            examined: 0,
        }
    }

    fn offer(&mut self, packed: &[u64]) {
        for &off in self.shortened {
            if packed[off / 64] >> (off % 64) & 1 == 1 {
                return;
            }
        }
        let weight: usize = packed.iter().map(|w| w.count_ones() as usize).sum();
        if weight == 0 {
            return;
        }
        self.examined += 1;
        if weight <= self.w_cap {
            self.low.insert(packed.to_vec(), weight);
            if weight < self.min_w {
                self.min_w = weight;
            }
            return;
        }
        match weight.cmp(&self.min_w) {
            std::cmp::Ordering::Less => {
                self.min_w = weight;
                self.min_set.clear();
                self.min_set.insert(packed.to_vec());
            }
            std::cmp::Ordering::Equal => {
                self.min_set.insert(packed.to_vec());
            }
            std::cmp::Ordering::Greater => {}
        }
    }

    fn finish(self) -> (usize, u64, BTreeMap<usize, u64>, u64) {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        counts.insert(0, 1);
        for &w in self.low.values() {
            *counts.entry(w).or_insert(0) += 1;
        }
        let (min_w, min_count) = if self.min_w == usize::MAX {
            (usize::MAX, 0)
        } else if self.min_w <= self.w_cap {
            (self.min_w, counts.get(&self.min_w).copied().unwrap_or(0))
        } else {
            (self.min_w, self.min_set.len() as u64)
        };
        (min_w, min_count, counts, self.examined)
    }
}

/// Feeds every parent window whose leading or trailing register state has
/// weight at most `cap` to the collector. Windows are reconstructed by
/// linearity from precomputed unit-state responses, so the sweep costs
/// O(C(k, cap)) vector operations per direction.
fn sparse_state_sweep(
    code: &PrcLdpcCode,
    cap: usize,
    collector: &mut WindowCollector<'_>,
) -> Result<()> {
    let h = code.h();
    let k = code.k();
    let pn = code.parent_n();
    let ext = pn - k;
    let words = pn.div_ceil(64);

    // unit responses: the full parent window induced by register state e_i
    // at the window start (forward) or at the window end (backward)
    let mut fwd_units: Vec<Vec<u64>> = Vec::with_capacity(k);
    let mut bwd_units: Vec<Vec<u64>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut nav = PnNavigator::from_state(h, 1u128 << i)?;
        let mut w = vec![0u64; words];
        w[i / 64] |= 1 << (i % 64);
        for t in 0..ext {
            if nav.step_forward() == 1 {
                let pos = k + t;
                w[pos / 64] |= 1 << (pos % 64);
            }
        }
        fwd_units.push(w);

        let mut nav = PnNavigator::from_state(h, 1u128 << i)?;
        let mut w = vec![0u64; words];
        let pos = ext + i;
        w[pos / 64] |= 1 << (pos % 64);
        for t in 0..ext {
            if nav.step_backward() == 1 {
                let pos = ext - 1 - t;
                w[pos / 64] |= 1 << (pos % 64);
            }
        }
        bwd_units.push(w);
    }

    // depth-first over the states of weight <= cap; XOR is self-inverse, so
    // one scratch buffer with undo on unwind avoids any allocation
    fn rec(
        units: &[Vec<u64>],
        start: usize,
        depth_left: usize,
        acc: &mut [u64],
        collector: &mut WindowCollector<'_>,
    ) {
        for i in start..units.len() {
            for (a, b) in acc.iter_mut().zip(&units[i]) {
                *a ^= b;
            }
            collector.offer(acc);
            if depth_left > 1 {
                rec(units, i + 1, depth_left - 1, acc, collector);
            }
            for (a, b) in acc.iter_mut().zip(&units[i]) {
                *a ^= b;
            }
        }
    }
    let mut scratch = vec![0u64; words];
    rec(&fwd_units, 0, cap, &mut scratch, collector);
    scratch.fill(0);
    rec(&bwd_units, 0, cap, &mut scratch, collector);
    Ok(())
}

/// Which spectrum engine a distance profile uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileMethod {
    /// Exact oracle (degree capped by materialization).
    Exact,
    /// Landmark-scan estimate with the given radius.
    Estimate { scan_radius: usize },
}

/// One step of a minimum-distance profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileEntry {
    /// Distance reached.
    pub d: usize,
    /// Smallest block length attaining it.
    pub n: usize,
    /// Parity count at that length.
    pub r: usize,
}

/// Minimum-distance profile `d -> n(d)` of the family of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    /// Entries in ascending distance order; distances skipped by a jump in
    /// the (estimated) minimum distance carry no entry.
    pub entries: Vec<ProfileEntry>,
    /// Engine used.
    pub method: ProfileMethod,
}

impl DistanceProfile {
    /// `n(d)` if the profile reached distance `d` exactly.
    pub fn n_of(&self, d: usize) -> Option<usize> {
        self.entries.iter().find(|e| e.d == d).map(|e| e.n)
    }
}

/// Scans block lengths upward from `k + 1`, recording the first length at
/// which each minimum distance up to `d_max` appears.
pub fn distance_profile(
    h: &BinaryPolynomial,
    d_max: usize,
    method: ProfileMethod,
) -> Result<DistanceProfile> {
    let prof = ruler::profile(h)?;
    let k = prof.degree;
    let nmax = mersenne(k as u32);
    let oracle = match method {
        ProfileMethod::Exact => Some(ExactOracle::new(h)?),
        ProfileMethod::Estimate { .. } => None,
    };
    let mut entries: Vec<ProfileEntry> = Vec::new();
    let mut best = 0usize;
    let mut n = k + 1;
    while best < d_max && (n as u128) <= nmax {
        let code = PrcLdpcCode::build(h, n)?;
        let d = match method {
            ProfileMethod::Exact => oracle
                .as_ref()
                .expect("oracle present on exact path")
                .spectrum(&code, 0)
                .d,
            ProfileMethod::Estimate { scan_radius } => {
                estimate_spectrum_capped(&code, scan_radius, 0)?.d
            }
        };
        if d > best {
            for missed in best + 1..d {
                let _ = missed; // distances jumped over get no entry
            }
            if d <= d_max {
                entries.push(ProfileEntry { d, n, r: n - k });
            }
            best = d;
        }
        n += 1;
    }
    Ok(DistanceProfile { entries, method })
}
