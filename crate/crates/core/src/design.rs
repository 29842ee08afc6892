//! Search for parity-check polynomials that are simultaneously primitive,
//! sparse, Golomb-ruler-supported and quality-compliant.
//!
//! The search walks a candidate Golomb ruler: fix a subset of `w_f` marks
//! that passes the separation-dominance screen, complete it with every
//! `w_h - w_f` subset of the remaining marks, and primitivity-test each
//! completed polynomial. Subsets of a Golomb ruler are Golomb rulers, so
//! candidates drawn from a proper ruler never need a cycle check; arbitrary
//! mark sets are accepted as ruler sources anyway and the Golomb gate is
//! then enforced per candidate.

use std::sync::OnceLock;

use crate::gf2poly::{BinaryPolynomial, MersenneFactorTable};
use crate::ruler::{self, QualityReport};
use crate::{Error, Result};

/// Parameters of a polynomial search.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    /// Target degree (must be a mark of a source ruler).
    pub k: usize,
    /// Target weight, odd.
    pub w_h: usize,
    /// Size of the fixed subset enumerated in the outer loop.
    pub w_f: usize,
    /// Candidate rulers to draw marks from.
    pub rulers: Vec<Vec<usize>>,
    /// Reject candidates whose separation profile fails the
    /// design-quality conditions.
    pub quality_required: bool,
    /// Stop after this many hits.
    pub max_results: usize,
    /// Stop at the first hit.
    pub stop_at_first: bool,
}

impl SearchSpec {
    fn validate(&self) -> Result<()> {
        if self.w_h.is_multiple_of(2) {
            return Err(Error::EmptySearchSpace("target weight must be odd"));
        }
        if self.w_f >= self.w_h {
            return Err(Error::EmptySearchSpace(
                "fixed subset must be smaller than the target weight",
            ));
        }
        if !ruler::density_feasible(self.w_h, self.k) {
            return Err(Error::EmptySearchSpace(
                "C(w_h, 2) > k: no Golomb support exists at this weight",
            ));
        }
        if self.max_results == 0 {
            return Err(Error::EmptySearchSpace("max_results is zero"));
        }
        Ok(())
    }
}

/// Removes all marks larger than `k`; `k` itself must be a mark.
pub fn truncate_ruler(ruler: &[usize], k: usize) -> Result<Vec<usize>> {
    if !ruler.contains(&k) {
        return Err(Error::MarkMissing { k });
    }
    Ok(ruler.iter().copied().filter(|&m| m <= k).collect())
}

/// Per-gate validation of a candidate parity-check polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// Degree and weight of the candidate.
    pub degree: usize,
    /// Weight of the candidate.
    pub weight: usize,
    /// Order of `x` modulo the polynomial reaches `2^k - 1`.
    pub primitive: bool,
    /// Support is a Golomb ruler.
    pub golomb: bool,
    /// `C(w_h, 2) <= k` holds.
    pub density_ok: bool,
    /// Separation-dominance flags.
    pub quality: QualityReport,
}

impl ValidationReport {
    /// True when the candidate passes every gate; the quality gate is
    /// included only when `require_quality` is set.
    pub fn all_gates(&self, require_quality: bool) -> bool {
        self.primitive
            && self.golomb
            && self.density_ok
            && (!require_quality || self.quality.good_practice())
    }
}

/// Evaluates every gate of the candidate independently.
pub fn validate_candidate(
    h: &BinaryPolynomial,
    table: &MersenneFactorTable,
) -> Result<ValidationReport> {
    let profile = ruler::profile(h)?;
    Ok(ValidationReport {
        degree: profile.degree,
        weight: profile.weight,
        primitive: h.is_primitive(table)?,
        golomb: ruler::is_golomb(&profile.support),
        density_ok: ruler::density_feasible(profile.weight, profile.degree),
        quality: ruler::design_quality(&profile),
    })
}

/// True when some separation-dominance condition fires on the sorted marks,
/// the screen applied to partial subsets before completion.
fn dominance_fires(marks: &[usize]) -> bool {
    if marks.len() < 3 {
        return false;
    }
    let seps: Vec<usize> = marks.windows(2).map(|w| w[1] - w[0]).collect();
    let total: usize = seps.iter().sum();
    let internal: usize = if seps.len() < 3 {
        0
    } else {
        seps[1..seps.len() - 1].iter().sum()
    };
    let s0 = seps[0];
    let sl = *seps.last().expect("nonempty");
    if s0 > total - s0 || sl > total - sl {
        return true;
    }
    if seps.len() >= 3 && (s0 > internal || sl > internal || s0 + sl > internal) {
        return true;
    }
    (1..seps.len().saturating_sub(1)).any(|i| seps[i] > total - seps[i])
}

/// Outcome of a search, with the exploration counters needed to check the
/// enumeration bound.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Polynomials passing every gate, in enumeration order.
    pub hits: Vec<BinaryPolynomial>,
    /// Candidates submitted to the primitivity test.
    pub primitivity_tests: u64,
}

/// Runs the subset search over the spec's rulers; returns the hits in
/// deterministic (colexicographic) enumeration order.
pub fn search(spec: &SearchSpec, table: &MersenneFactorTable) -> Result<SearchOutcome> {
    spec.validate()?;
    let mut outcome = SearchOutcome {
        hits: Vec::new(),
        primitivity_tests: 0,
    };
    let mut usable = false;
    for ruler_marks in &spec.rulers {
        if !ruler_marks.contains(&spec.k) {
            continue;
        }
        let truncated = truncate_ruler(ruler_marks, spec.k)?;
        if truncated.len() < spec.w_h {
            continue;
        }
        usable = true;
        if search_one_ruler(spec, table, &truncated, &mut outcome)? {
            return Ok(outcome);
        }
    }
    if !usable {
        return Err(Error::EmptySearchSpace(
            "no source ruler contains the target degree with enough marks",
        ));
    }
    Ok(outcome)
}

/// Returns `Ok(true)` when the search should stop globally.
fn search_one_ruler(
    spec: &SearchSpec,
    table: &MersenneFactorTable,
    marks: &[usize],
    outcome: &mut SearchOutcome,
) -> Result<bool> {
    let l = marks.len();
    let mut fixed = Vec::new();
    colex_subsets(l, spec.w_f, &mut fixed);
    let mut rest = Vec::new();
    for f_idx in &fixed {
        let s_f: Vec<usize> = f_idx.iter().map(|&i| marks[i]).collect();
        if dominance_fires(&s_f) {
            continue;
        }
        let complement: Vec<usize> = (0..l).filter(|i| !f_idx.contains(i)).collect();
        rest.clear();
        colex_subsets(complement.len(), spec.w_h - spec.w_f, &mut rest);
        for r_idx in &rest {
            let mut support: Vec<usize> = s_f.clone();
            support.extend(r_idx.iter().map(|&i| marks[complement[i]]));
            support.sort_unstable();
            // parity-check polynomials of cyclic codes need both endpoints
            if support[0] != 0 || *support.last().expect("nonempty") != spec.k {
                continue;
            }
            let h = BinaryPolynomial::from_exponents(&support)?;
            let report = validate_candidate(&h, table)?;
            if !report.golomb || (spec.quality_required && !report.quality.good_practice()) {
                continue;
            }
            outcome.primitivity_tests += 1;
            if !report.primitive {
                continue;
            }
            if !outcome.hits.contains(&h) {
                outcome.hits.push(h);
            }
            if spec.stop_at_first || outcome.hits.len() >= spec.max_results {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// All `m`-subsets of `0..l` in colexicographic order (ascending largest
/// element, ties broken by the same rule on the rest).
fn colex_subsets(l: usize, m: usize, out: &mut Vec<Vec<usize>>) {
    out.clear();
    if m == 0 {
        out.push(Vec::new());
        return;
    }
    if m > l {
        return;
    }
    // elements are chosen largest-first; each level scans ascending so the
    // emitted order is colex
    fn rec(bound: usize, m: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(acc.iter().rev().copied().collect());
            return;
        }
        for t in m - 1..bound {
            acc.push(t);
            rec(t, m - 1, acc, out);
            acc.pop();
        }
    }
    let mut acc = Vec::with_capacity(m);
    rec(l, m, &mut acc, out);
}

static BUILTIN_RULERS: OnceLock<Vec<Vec<usize>>> = OnceLock::new();

/// Known optimal Golomb rulers (orders 2 through 20) shipped with the
/// crate.
pub fn builtin_rulers() -> &'static [Vec<usize>] {
    BUILTIN_RULERS.get_or_init(|| {
        ruler::parse_ruler_file(include_str!("../data/optimal_rulers.txt"))
            .expect("bundled ruler table is valid")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncate_basics() {
        assert_eq!(truncate_ruler(&[0, 1, 4, 9, 11], 9).unwrap(), vec![0, 1, 4, 9]);
        assert_eq!(
            truncate_ruler(&[0, 1, 4, 9, 11], 11).unwrap(),
            vec![0, 1, 4, 9, 11]
        );
        assert!(matches!(
            truncate_ruler(&[0, 1, 4, 9, 11], 10),
            Err(Error::MarkMissing { k: 10 })
        ));
    }

    #[test]
    fn truncation_preserves_golomb() {
        for marks in builtin_rulers() {
            assert!(ruler::is_golomb(marks));
            for &k in marks.iter().skip(1) {
                let t = truncate_ruler(marks, k).unwrap();
                assert!(ruler::is_golomb(&t));
            }
        }
    }

    #[test]
    fn validation_reference_cases() {
        let t = MersenneFactorTable::bundled();
        let r = validate_candidate(
            &BinaryPolynomial::from_exponents(&[0, 1, 3, 4, 5]).unwrap(),
            t,
        )
        .unwrap();
        assert!(!r.golomb);

        let r = validate_candidate(
            &BinaryPolynomial::from_exponents(&[0, 1, 5, 11, 13]).unwrap(),
            t,
        )
        .unwrap();
        assert!(r.all_gates(true));

        let r = validate_candidate(
            &BinaryPolynomial::from_exponents(&[0, 2, 8, 12, 15]).unwrap(),
            t,
        )
        .unwrap();
        assert!(r.all_gates(true));
    }

    #[test]
    fn colex_order_is_deterministic() {
        let mut out = Vec::new();
        colex_subsets(4, 2, &mut out);
        assert_eq!(
            out,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3],
            ]
        );
        colex_subsets(3, 0, &mut out);
        assert_eq!(out, vec![Vec::<usize>::new()]);
        colex_subsets(2, 3, &mut out);
        assert!(out.is_empty());
    }

    #[test]
    fn search_finds_reference_degree_13_polynomial() {
        let spec = SearchSpec {
            k: 13,
            w_h: 5,
            w_f: 2,
            rulers: vec![vec![0, 1, 5, 11, 13]],
            quality_required: true,
            max_results: 100,
            stop_at_first: false,
        };
        let outcome = search(&spec, MersenneFactorTable::bundled()).unwrap();
        let target = BinaryPolynomial::from_exponents(&[0, 1, 5, 11, 13]).unwrap();
        assert!(outcome.hits.contains(&target));
    }

    #[test]
    fn search_is_exhaustive_over_full_range() {
        // brute force over all weight-5 polynomials with h0 = hk = 1
        let t = MersenneFactorTable::bundled();
        for k in [10usize, 11] {
            let mut brute = Vec::new();
            for a in 1..k {
                for b in a + 1..k {
                    for c in b + 1..k {
                        let h = BinaryPolynomial::from_exponents(&[0, a, b, c, k]).unwrap();
                        let r = validate_candidate(&h, t).unwrap();
                        if r.all_gates(false) {
                            brute.push(h);
                        }
                    }
                }
            }
            let spec = SearchSpec {
                k,
                w_h: 5,
                w_f: 0,
                rulers: vec![(0..=k).collect()],
                quality_required: false,
                max_results: usize::MAX,
                stop_at_first: false,
            };
            let outcome = search(&spec, t).unwrap();
            let mut found = outcome.hits.clone();
            let mut brute_sorted = brute.clone();
            found.sort_by_key(|h| h.support());
            brute_sorted.sort_by_key(|h| h.support());
            assert_eq!(found, brute_sorted, "k = {k}");
            // enumeration bound: at most C(l, w_f) C(l - w_f, w_h - w_f)
            let l = k + 1;
            let bound = binom(l, 0) * binom(l, 5);
            assert!(outcome.primitivity_tests <= bound, "k = {k}");
        }
    }

    #[test]
    fn search_rejections() {
        let t = MersenneFactorTable::bundled();
        let empty = SearchSpec {
            k: 5,
            w_h: 5,
            w_f: 2,
            rulers: vec![vec![0, 1, 3, 5]],
            quality_required: false,
            max_results: 10,
            stop_at_first: false,
        };
        assert!(matches!(
            search(&empty, t),
            Err(Error::EmptySearchSpace(_))
        ));

        let no_ruler = SearchSpec {
            k: 13,
            w_h: 5,
            w_f: 2,
            rulers: vec![vec![0, 1, 4, 9, 11]],
            quality_required: false,
            max_results: 10,
            stop_at_first: false,
        };
        assert!(matches!(
            search(&no_ruler, t),
            Err(Error::EmptySearchSpace(_))
        ));
    }

    #[test]
    fn stop_at_first_returns_single_hit() {
        let spec = SearchSpec {
            k: 13,
            w_h: 5,
            w_f: 0,
            rulers: vec![(0..=13).collect()],
            quality_required: false,
            max_results: usize::MAX,
            stop_at_first: true,
        };
        let outcome = search(&spec, MersenneFactorTable::bundled()).unwrap();
        assert_eq!(outcome.hits.len(), 1);
    }

    fn binom(n: usize, k: usize) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) as u64 / (i + 1) as u64;
        }
        acc
    }

    #[test]
    fn every_hit_passes_all_gates() {
        let t = MersenneFactorTable::bundled();
        let spec = SearchSpec {
            k: 11,
            w_h: 5,
            w_f: 2,
            rulers: vec![(0..=11).collect()],
            quality_required: true,
            max_results: usize::MAX,
            stop_at_first: false,
        };
        let outcome = search(&spec, t).unwrap();
        assert!(!outcome.hits.is_empty());
        for h in &outcome.hits {
            assert!(validate_candidate(h, t).unwrap().all_gates(true));
        }
    }
}
