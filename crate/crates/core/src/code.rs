//! Code objects: banded parity-check matrix, puncturing and shortening.
//!
//! A code is described by its parity-check polynomial `h` (degree `k`), a
//! parent block length covering `r = parent_n - k` band rows, and an
//! optional set of shortened information columns. Puncturing drops trailing
//! row/column pairs; shortening drops information columns while keeping `r`
//! fixed. The matrix itself is stored implicitly as the band offsets and is
//! materialized only where a dense or adjacency view is needed (rank tests,
//! decoding).

use std::fmt;

use crate::gf2poly::{mersenne, BinaryPolynomial};
use crate::ruler::{self, RulerProfile};
use crate::{Error, Result};

/// Which information columns a shortening operation removes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShortenSide {
    /// The first `z` information columns (the default).
    Head,
    /// The last `z` information columns, i.e. `k-z .. k`.
    Tail,
    /// Explicit information-column offsets, each in `0..k`.
    Split(Vec<usize>),
}

impl fmt::Display for ShortenSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShortenSide::Head => write!(f, "head"),
            ShortenSide::Tail => write!(f, "tail"),
            ShortenSide::Split(offsets) => {
                write!(f, "split:")?;
                for (i, o) in offsets.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{o}")?;
                }
                Ok(())
            }
        }
    }
}

/// A rate-compatible code drawn from the family of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrcLdpcCode {
    h: BinaryPolynomial,
    profile: RulerProfile,
    /// Block length before shortening; the matrix has `parent_n - k` rows.
    parent_n: usize,
    /// Sorted parent information-column indices removed by shortening.
    shortened: Vec<usize>,
}

impl PrcLdpcCode {
    /// Builds the length-`n` member of the family of `h`.
    ///
    /// `h` must satisfy the row-column constraint and
    /// `k + 1 <= n <= 2^k - 1`.
    pub fn build(h: &BinaryPolynomial, n: usize) -> Result<Self> {
        let profile = ruler::profile(h)?;
        if !ruler::is_golomb(&profile.support) {
            return Err(Error::RccViolation);
        }
        let k = profile.degree;
        let nmax = mersenne(k as u32);
        if n < k + 1 || n as u128 > nmax {
            return Err(Error::LengthOutOfRange {
                n,
                min: k + 1,
                max: nmax,
            });
        }
        Ok(Self {
            h: h.clone(),
            profile,
            parent_n: n,
            shortened: Vec::new(),
        })
    }

    /// Builds the code object without the row-column-constraint gate, so
    /// the band matrix of a non-Golomb support can still be inspected
    /// (cycle searches, cross-checks). Length bounds are still enforced.
    pub fn build_unchecked(h: &BinaryPolynomial, n: usize) -> Result<Self> {
        let profile = ruler::profile(h)?;
        let k = profile.degree;
        let nmax = mersenne(k as u32);
        if n < k + 1 || n as u128 > nmax {
            return Err(Error::LengthOutOfRange {
                n,
                min: k + 1,
                max: nmax,
            });
        }
        Ok(Self {
            h: h.clone(),
            profile,
            parent_n: n,
            shortened: Vec::new(),
        })
    }

    /// The parity-check polynomial.
    pub fn h(&self) -> &BinaryPolynomial {
        &self.h
    }

    /// Support/separation profile of `h`.
    pub fn profile(&self) -> &RulerProfile {
        &self.profile
    }

    /// Degree of `h` (the parent information length).
    pub fn k(&self) -> usize {
        self.profile.degree
    }

    /// Block length (after shortening).
    pub fn n(&self) -> usize {
        self.parent_n - self.shortened.len()
    }

    /// Block length of the unshortened parent.
    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    /// Number of parity rows.
    pub fn r(&self) -> usize {
        self.parent_n - self.k()
    }

    /// Information length `k - z`.
    pub fn k_eff(&self) -> usize {
        self.k() - self.shortened.len()
    }

    /// Number of shortened information symbols.
    pub fn z(&self) -> usize {
        self.shortened.len()
    }

    /// Shortened parent-column indices, ascending.
    pub fn shortened_columns(&self) -> &[usize] {
        &self.shortened
    }

    /// Code rate `k_eff / n`.
    pub fn rate(&self) -> f64 {
        self.k_eff() as f64 / self.n() as f64
    }

    /// Row weight of the band.
    pub fn w_h(&self) -> usize {
        self.profile.weight
    }

    /// Average column weight `r * w_h / n` of the unshortened band matrix.
    pub fn avg_column_weight(&self) -> f64 {
        debug_assert!(self.shortened.is_empty(), "defined on unshortened codes");
        self.r() as f64 * self.w_h() as f64 / self.n() as f64
    }

    /// Removes the last `count` row/column pairs, raising the rate. At least
    /// one parity row must remain.
    pub fn puncture(&self, count: usize) -> Result<Self> {
        if self.r() <= count {
            return Err(Error::RateOverflow(count));
        }
        let mut out = self.clone();
        out.parent_n -= count;
        Ok(out)
    }

    /// Removes `z` further information columns on the chosen side. The total
    /// shortening depth must stay below `k`.
    pub fn shorten(&self, z: usize, side: ShortenSide) -> Result<Self> {
        let k = self.k();
        if self.shortened.len() + z >= k {
            return Err(Error::ShortenTooDeep {
                z: self.shortened.len() + z,
                k,
            });
        }
        let new_cols: Vec<usize> = match side {
            ShortenSide::Head => {
                let mut picked = Vec::with_capacity(z);
                let mut c = 0;
                while picked.len() < z {
                    if !self.shortened.contains(&c) {
                        picked.push(c);
                    }
                    c += 1;
                }
                picked
            }
            ShortenSide::Tail => {
                let mut picked = Vec::with_capacity(z);
                let mut c = k;
                while picked.len() < z {
                    c -= 1;
                    if !self.shortened.contains(&c) {
                        picked.push(c);
                    }
                }
                picked
            }
            ShortenSide::Split(offsets) => {
                if offsets.len() != z {
                    return Err(Error::LengthMismatch {
                        expected: z,
                        got: offsets.len(),
                    });
                }
                for &o in &offsets {
                    if o >= k {
                        return Err(Error::InvalidPolynomial(
                            "shortened offsets must address information columns",
                        ));
                    }
                    if self.shortened.contains(&o) {
                        return Err(Error::InvalidPolynomial("offset already shortened"));
                    }
                }
                let mut sorted = offsets.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidPolynomial("duplicate shortened offset"));
                }
                sorted
            }
        };
        let mut out = self.clone();
        out.shortened.extend(new_cols);
        out.shortened.sort_unstable();
        Ok(out)
    }

    /// Support of band row `i` in parent-column coordinates.
    pub fn parent_row_support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.profile
            .support
            .iter()
            .map(move |&e| i + e)
            .filter(move |&c| c < self.parent_n)
    }

    /// Maps a parent column index to the surviving column index, if the
    /// column was not shortened.
    fn surviving_index(&self, parent_col: usize) -> Option<usize> {
        match self.shortened.binary_search(&parent_col) {
            Ok(_) => None,
            Err(before) => Some(parent_col - before),
        }
    }

    /// Materializes the sparse parity-check matrix.
    pub fn matrix(&self) -> ParityCheckMatrix {
        let r = self.r();
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            let row: Vec<usize> = self
                .parent_row_support(i)
                .filter_map(|c| self.surviving_index(c))
                .collect();
            rows.push(row);
        }
        ParityCheckMatrix { rows, cols: self.n() }
    }

    /// Syndrome of `word` against the band rows; all-zero iff `word` is a
    /// codeword.
    pub fn syndrome(&self, word: &[u8]) -> Result<Vec<u8>> {
        if word.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        let m = self.matrix();
        Ok(m.syndrome(word))
    }

    /// Renders the key-value descriptor for this code.
    pub fn descriptor(&self) -> String {
        let mut out = format!("h={}\nn={}\nz={}\n", self.h, self.parent_n, self.z());
        if !self.shortened.is_empty() {
            out.push_str(&format!(
                "shorten=split:{}\n",
                self.shortened
                    .iter()
                    .map(|o| o.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            ));
        }
        out
    }
}

/// Sparse row-major view of the parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    rows: Vec<Vec<usize>>,
    cols: usize,
}

impl ParityCheckMatrix {
    /// Number of rows.
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    /// Column weights.
    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.cols];
        for row in &self.rows {
            for &c in row {
                w[c] += 1;
            }
        }
        w
    }

    /// Syndrome of a 0/1 word.
    pub fn syndrome(&self, word: &[u8]) -> Vec<u8> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &c| acc ^ (word[c] & 1)))
            .collect()
    }

    /// True iff four ones form a rectangle (two rows sharing two columns):
    /// a length-4 cycle in the Tanner graph.
    pub fn has_length4_cycle(&self) -> bool {
        for (i, a) in self.rows.iter().enumerate() {
            for b in &self.rows[i + 1..] {
                let mut shared = 0;
                let (mut x, mut y) = (0, 0);
                while x < a.len() && y < b.len() {
                    match a[x].cmp(&b[y]) {
                        std::cmp::Ordering::Less => x += 1,
                        std::cmp::Ordering::Greater => y += 1,
                        std::cmp::Ordering::Equal => {
                            shared += 1;
                            if shared == 2 {
                                return true;
                            }
                            x += 1;
                            y += 1;
                        }
                    }
                }
            }
        }
        false
    }

    /// GF(2) rank by Gaussian elimination over packed rows.
    pub fn rank(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut packed: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|row| {
                let mut v = vec![0u64; words];
                for &c in row {
                    v[c / 64] |= 1 << (c % 64);
                }
                v
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, b) = (col / 64, col % 64);
            let Some(pivot) = (rank..packed.len()).find(|&i| packed[i][w] >> b & 1 == 1) else {
                continue;
            };
            packed.swap(rank, pivot);
            let pivot_row = packed[rank].clone();
            for (i, row) in packed.iter_mut().enumerate() {
                if i != rank && row[w] >> b & 1 == 1 {
                    for (d, s) in row.iter_mut().zip(&pivot_row) {
                        *d ^= s;
                    }
                }
            }
            rank += 1;
            if rank == packed.len() {
                break;
            }
        }
        rank
    }
}

/// Parses the key-value code descriptor format:
///
/// ```text
/// h=0,2,21,29,60,72,75
/// n=150
/// z=11
/// shorten=head
/// puncture=11
/// ```
///
/// `z`, `shorten` (head | tail | split:a+b+...) and `puncture` are optional.
/// Keys may also be separated by whitespace or semicolons on one line.
pub fn parse_descriptor(text: &str) -> Result<PrcLdpcCode> {
    let mut h: Option<BinaryPolynomial> = None;
    let mut n: Option<usize> = None;
    let mut z: usize = 0;
    let mut side = ShortenSide::Head;
    let mut punctures: usize = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for field in line.split(|c: char| c == ';' || c.is_whitespace()) {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key=value, got {field:?}", lineno + 1))
            })?;
            match key.trim() {
                "h" => h = Some(BinaryPolynomial::parse(value)?),
                "n" => {
                    n = Some(value.trim().parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad block length", lineno + 1))
                    })?)
                }
                "z" => {
                    z = value.trim().parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad shortening depth", lineno + 1))
                    })?
                }
                "shorten" => side = parse_side(value.trim(), lineno + 1)?,
                "puncture" => {
                    punctures = value.trim().parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad puncture count", lineno + 1))
                    })?
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
    }
    let h = h.ok_or_else(|| Error::Parse("descriptor is missing h=".into()))?;
    let n = n.ok_or_else(|| Error::Parse("descriptor is missing n=".into()))?;
    let mut code = PrcLdpcCode::build(&h, n)?;
    if z > 0 {
        code = code.shorten(z, side)?;
    }
    if punctures > 0 {
        code = code.puncture(punctures)?;
    }
    Ok(code)
}

fn parse_side(text: &str, lineno: usize) -> Result<ShortenSide> {
    match text {
        "head" => Ok(ShortenSide::Head),
        "tail" => Ok(ShortenSide::Tail),
        other => {
            if let Some(list) = other.strip_prefix("split:") {
                let mut offsets = Vec::new();
                for tok in list.split('+') {
                    offsets.push(tok.parse().map_err(|_| {
                        Error::Parse(format!("line {lineno}: bad split offset {tok:?}"))
                    })?);
                }
                Ok(ShortenSide::Split(offsets))
            } else {
                Err(Error::Parse(format!(
                    "line {lineno}: unknown shortening side {other:?}"
                )))
            }
        }
    }
}

/// Loads a descriptor from a file.
pub fn load_descriptor(path: &std::path::Path) -> Result<PrcLdpcCode> {
    parse_descriptor(&std::fs::read_to_string(path)?)
}
