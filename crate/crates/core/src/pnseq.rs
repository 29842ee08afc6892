//! The pseudo-noise sequence behind a family of punctured simplex codes.
//!
//! For a primitive `h` of degree `k`, every nonzero codeword of the parent
//! cyclic simplex code is a cyclic shift of one maximum-period sequence `p`
//! of length `N = 2^k - 1`, and the nonzero codewords of the punctured code
//! of length `n` are exactly the `N` cyclic windows of size `n` over `p`.
//! The canonical origin used here places the generator polynomial
//! coefficients first: `p = [g, 0^(k-1)]` with `g = (x^N + 1) / h*(x)`, so
//! the unique run of `k - 1` zeros occupies positions `N-k+1 .. N-1`.
//!
//! Two landmark tuples organize all low-weight structure: `T1`, the `k`-tuple
//! made of a single one followed by `k - 1` zeros, and `T2`, the
//! `(k+1)`-tuple equal to the reciprocal polynomial `h*`. [`locate_h_star`]
//! walks the sequence around `T2` without materializing it, which keeps
//! landmark analysis O(k) even for degrees far beyond the materialization
//! cap.

use crate::gf2poly::{mersenne, BinaryPolynomial, MersenneFactorTable};
use crate::ruler::{self, RulerProfile};
use crate::{Error, Result};

/// Largest degree for which the full sequence may be materialized
/// (`2^26` bits packs into 8 MiB).
pub const MATERIALIZE_CAP: usize = 26;

/// Largest degree accepted by [`verify_property_1`].
pub const PROPERTY1_CAP: usize = 20;

/// A materialized pseudo-noise sequence, bit-packed.
#[derive(Clone)]
pub struct PnSequence {
    bits: Vec<u64>,
    len: usize,
}

impl PnSequence {
    fn with_len(len: usize) -> Self {
        Self {
            bits: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Sequence length `N = 2^k - 1`.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True only for the degenerate empty sequence.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at absolute position `i` (no wrapping).
    pub fn bit(&self, i: usize) -> u8 {
        (self.bits[i / 64] >> (i % 64) & 1) as u8
    }

    /// Bit at position `i mod N`.
    pub fn bit_cyclic(&self, i: usize) -> u8 {
        self.bit(i % self.len)
    }

    fn set_bit(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    /// Number of ones in the whole sequence (`2^(k-1)` for a maximum-period
    /// sequence).
    pub fn weight(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// The cyclic window of `len` bits starting at `start`, as 0/1 bytes.
    pub fn window(&self, start: usize, len: usize) -> Vec<u8> {
        (0..len).map(|i| self.bit_cyclic(start + i)).collect()
    }

    /// Renders a cyclic window as a 0/1 string.
    pub fn window_string(&self, start: usize, len: usize) -> String {
        self.window(start, len)
            .into_iter()
            .map(|b| if b == 1 { '1' } else { '0' })
            .collect()
    }

    /// Absolute position of the first cyclic occurrence of `pattern`, if any.
    pub fn find_window(&self, pattern: &[u8]) -> Option<usize> {
        (0..self.len).find(|&start| {
            pattern
                .iter()
                .enumerate()
                .all(|(i, &b)| self.bit_cyclic(start + i) == b)
        })
    }
}

/// Generates the full sequence for a primitive `h` of degree `k` at most
/// [`MATERIALIZE_CAP`]: the coefficients of `g = (x^N + 1) / h*` followed by
/// `k - 1` zeros.
pub fn generate_full(h: &BinaryPolynomial) -> Result<PnSequence> {
    let profile = ruler::profile(h)?;
    let k = profile.degree;
    if k > MATERIALIZE_CAP {
        return Err(Error::TooLarge("degree beyond sequence materialization cap"));
    }
    if !h.is_primitive(MersenneFactorTable::bundled())? {
        return Err(Error::NotPrimitive);
    }
    let n = mersenne(k as u32) as usize;
    let (g, r) = BinaryPolynomial::binomial(n).divmod(&h.reciprocal())?;
    debug_assert!(r.is_zero(), "h* divides x^N + 1 for primitive h");
    let mut p = PnSequence::with_len(n);
    for e in g.support() {
        p.set_bit(e);
    }
    Ok(p)
}

/// A bidirectional cursor over the pseudo-noise sequence of `h`.
///
/// The register holds `k` consecutive bits of `p`; any nonzero `k`-tuple
/// determines the position uniquely, so seeding by substring is enough to
/// walk arbitrarily far in either direction without materializing `p`. The
/// forward step appends `t[j+k] = XOR h_i t[j+i] (i < k)`; the backward step
/// prepends `t[j-1] = XOR h_i t[j-1+i] (i >= 1)`. Both require
/// `h(0) = h_k = 1`.
#[derive(Clone)]
pub struct PnNavigator {
    /// Mask of `h` coefficients `0..k` (excluding `x^k`) against the state.
    forward_mask: u128,
    /// Mask of `h` coefficients `1..=k`, shifted down one position.
    backward_mask: u128,
    state: u128,
    k: u32,
    offset: i128,
    anchor: Option<u128>,
}

impl PnNavigator {
    /// Seeds a navigator from `k` consecutive bits of the sequence, least
    /// index in bit 0 of `state`.
    pub fn from_state(h: &BinaryPolynomial, state: u128) -> Result<Self> {
        let k = h.degree().ok_or(Error::InvalidPolynomial("zero polynomial"))? as u32;
        if k == 0 || !h.coeff(0) {
            return Err(Error::InvalidPolynomial(
                "parity-check polynomial needs h(0) = 1 and degree >= 1",
            ));
        }
        let state_mask = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
        if state & state_mask == 0 {
            return Err(Error::InvalidPolynomial("state must be nonzero"));
        }
        let mut forward_mask = 0u128;
        let mut backward_mask = 0u128;
        for e in h.support() {
            if e < k as usize {
                forward_mask |= 1 << e;
            }
            if e >= 1 {
                backward_mask |= 1 << (e - 1);
            }
        }
        Ok(Self {
            forward_mask,
            backward_mask,
            state: state & state_mask,
            k,
            offset: 0,
            anchor: None,
        })
    }

    /// Seeds from 0/1 bytes, `bits[0]` being the lowest position.
    pub fn from_state_bits(h: &BinaryPolynomial, bits: &[u8]) -> Result<Self> {
        let k = h.degree().unwrap_or(0);
        if bits.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: bits.len(),
            });
        }
        let mut state = 0u128;
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::InvalidPolynomial("state bits must be 0 or 1"));
            }
            state |= (b as u128) << i;
        }
        Self::from_state(h, state)
    }

    /// Navigator anchored at `T1`: the window `[1, 0^(k-1)]` at absolute
    /// position `N - k`.
    pub fn at_t1(h: &BinaryPolynomial) -> Result<Self> {
        let mut nav = Self::from_state(h, 1)?;
        let k = nav.k;
        nav.anchor = Some(mersenne(k) - k as u128);
        Ok(nav)
    }

    /// Degree of the underlying polynomial.
    pub fn degree(&self) -> usize {
        self.k as usize
    }

    /// Current register content, lowest position in bit 0.
    pub fn state(&self) -> u128 {
        self.state
    }

    /// Bit `i` of the register, `0 <= i < k`.
    pub fn state_bit(&self, i: usize) -> u8 {
        (self.state >> i & 1) as u8
    }

    /// Signed number of steps taken since seeding (forward positive).
    pub fn offset(&self) -> i128 {
        self.offset
    }

    /// Absolute position of the window start, modulo `N`, when the seed
    /// point was anchored.
    pub fn position(&self) -> Option<u128> {
        let n = mersenne(self.k) as i128;
        self.anchor
            .map(|a| ((a as i128 + self.offset).rem_euclid(n)) as u128)
    }

    /// Advances one position and returns the bit that entered the window.
    pub fn step_forward(&mut self) -> u8 {
        let bit = (self.state & self.forward_mask).count_ones() as u128 & 1;
        self.state = (self.state >> 1) | (bit << (self.k - 1));
        self.offset += 1;
        bit as u8
    }

    /// Retreats one position and returns the bit that entered the window.
    pub fn step_backward(&mut self) -> u8 {
        let bit = (self.state & self.backward_mask).count_ones() as u128 & 1;
        let mask = if self.k == 128 {
            u128::MAX
        } else {
            (1u128 << self.k) - 1
        };
        self.state = ((self.state << 1) | bit) & mask;
        self.offset -= 1;
        bit as u8
    }

    /// Collects the contiguous stretch of `p` from `back` positions before
    /// the current window start to `fwd` positions past the window end, so
    /// `back + k + fwd` bits in total.
    ///
    /// Returns the bits and the index of the original window start within
    /// them. The navigator is left where it started.
    pub fn stretch(&self, back: usize, fwd: usize) -> (Vec<u8>, usize) {
        let k = self.k as usize;
        let mut left = Vec::with_capacity(back + k + fwd);
        let mut nav = self.clone();
        for _ in 0..back {
            left.push(nav.step_backward());
        }
        left.reverse();
        let mut out = left;
        for i in 0..k {
            out.push(self.state_bit(i));
        }
        let mut nav = self.clone();
        for _ in 0..fwd {
            out.push(nav.step_forward());
        }
        (out, back)
    }
}

/// Landmark record around the `T2 = h*` tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Landmarks {
    /// Absolute index of the first bit of `h*` in `p`, when the sequence was
    /// small enough to materialize and search.
    pub t2_position: Option<usize>,
    /// Width of the all-zero run immediately left of `h*`.
    pub z0: usize,
    /// Width of the all-zero run immediately right of `h*`.
    pub z1: usize,
    /// Distance between the first two ones beyond the left zone, if found
    /// within the walk bound.
    pub left_spacing: Option<usize>,
    /// Distance between the first two ones beyond the right zone.
    pub right_spacing: Option<usize>,
}

/// Closed-form zero-zone widths `(z0, z1)` flanking `h*`.
///
/// The zone sizes are `2 * sum(s[0..=i*]) - k - 1` on the left and
/// `2 * sum(s[i*..]) - k - 1` on the right, which sum to `2 (s_max - 1)`.
/// The formulas describe the sequence only when both widths are
/// non-negative (on top of the design-quality conditions); outside that
/// range the all-zero flanks are genuinely narrower than the formulas
/// suggest and `None` is returned.
pub fn zero_zones_closed_form(profile: &RulerProfile) -> Option<(usize, usize)> {
    let k = profile.degree as i64;
    let left = 2 * profile.prefix_through_max() as i64 - k - 1;
    let right = 2 * profile.suffix_from_max() as i64 - k - 1;
    if left >= 0 && right >= 0 {
        Some((left as usize, right as usize))
    } else {
        None
    }
}

/// Walk bound used by [`locate_h_star`]; zero zones never exceed
/// `2(s_max - 1) <= 2k` under the theorem hypotheses.
fn walk_bound(k: usize) -> usize {
    4 * k + 4
}

/// Locates `T2 = h*` in `p` by seeding a navigator with the first `k` bits
/// of `h*`, then measures the flanking zero runs and the gap between the
/// first two ones beyond each run. Works for arbitrary degree; no
/// materialization.
///
/// `h` must be primitive with a Golomb-ruler support; the measured zero
/// zones match [`zero_zones_closed_form`] whenever the design-quality
/// conditions hold and the formulas are non-negative.
pub fn locate_h_star(h: &BinaryPolynomial) -> Result<Landmarks> {
    let profile = ruler::profile(h)?;
    if !h.is_primitive(MersenneFactorTable::bundled())? {
        return Err(Error::NotPrimitive);
    }
    let k = profile.degree;
    let hstar = h.reciprocal();
    let mut seed = 0u128;
    for e in hstar.support() {
        if e < k {
            seed |= 1 << e;
        }
    }
    let nav = PnNavigator::from_state(h, seed)?;
    // with the window on the k-bit prefix of h*, the first forward step
    // returns p[m + k], which must close the (k+1)-tuple
    let mut right = nav.clone();
    if right.step_forward() != 1 {
        return Err(Error::NotFound("reversed polynomial tuple does not close"));
    }
    let bound = walk_bound(k);
    let (z1, right_spacing) = measure_zone(|| right.step_forward(), bound)?;

    // left side: step backward from the start of h*
    let mut left = nav.clone();
    let (z0, left_spacing) = measure_zone(|| left.step_backward(), bound)?;

    Ok(Landmarks {
        t2_position: None,
        z0,
        z1,
        left_spacing,
        right_spacing,
    })
}

/// Variant of [`locate_h_star`] that also reports the absolute position of
/// `h*`, which requires a materialized sequence.
pub fn locate_h_star_in(h: &BinaryPolynomial, p: &PnSequence) -> Result<Landmarks> {
    let mut marks = locate_h_star(h)?;
    let pattern: Vec<u8> = {
        let hstar = h.reciprocal();
        let k = h.degree().expect("nonzero");
        (0..=k).map(|i| u8::from(hstar.coeff(i))).collect()
    };
    marks.t2_position = p.find_window(&pattern);
    Ok(marks)
}

/// Counts zeros until the first one, then the gap to the following one.
fn measure_zone(mut step: impl FnMut() -> u8, bound: usize) -> Result<(usize, Option<usize>)> {
    let mut zeros = 0usize;
    loop {
        if step() == 1 {
            break;
        }
        zeros += 1;
        if zeros > bound {
            return Err(Error::NotFound("zero zone exceeds walk bound"));
        }
    }
    let mut gap = 1usize;
    let spacing = loop {
        if step() == 1 {
            break Some(gap);
        }
        gap += 1;
        if gap > bound {
            break None;
        }
    };
    Ok((zeros, spacing))
}

/// Exhaustively checks that every nonzero `k`-tuple occurs exactly once
/// among the `N` cyclic windows of `p` (the defining property of a
/// maximum-period sequence). Degree is capped at [`PROPERTY1_CAP`].
pub fn verify_property_1(h: &BinaryPolynomial) -> Result<bool> {
    let k = h
        .degree()
        .ok_or(Error::InvalidPolynomial("zero polynomial"))?;
    if k > PROPERTY1_CAP {
        return Err(Error::TooLarge("degree beyond exhaustive census cap"));
    }
    let p = generate_full(h)?;
    let n = p.len();
    let mut seen = vec![0u64; (1usize << k).div_ceil(64)];
    let mask = (1u64 << k) - 1;
    let mut state: u64 = 0;
    for i in 0..k {
        state |= (p.bit(i) as u64) << i;
    }
    for start in 0..n {
        if state == 0 {
            return Ok(false);
        }
        let idx = state as usize;
        if seen[idx / 64] >> (idx % 64) & 1 == 1 {
            return Ok(false);
        }
        seen[idx / 64] |= 1 << (idx % 64);
        state = (state >> 1) | ((p.bit_cyclic(start + k) as u64) << (k - 1));
        state &= mask;
    }
    Ok(true)
}
