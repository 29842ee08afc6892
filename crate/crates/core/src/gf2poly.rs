//! Exact arithmetic on polynomials over GF(2) and primitivity testing.
//!
//! Coefficients are packed into machine words, bit `i` of the storage being
//! the coefficient of `x^i`, so addition is a word-wise XOR and shifting by
//! the degree is cheap. Parity-check polynomials are capped at degree
//! [`MAX_DEGREE`]; intermediate values (products, the binomial `x^N + 1` used
//! when expanding a pseudo-noise sequence) may be arbitrarily large.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Largest degree accepted for a parity-check polynomial.
pub const MAX_DEGREE: usize = 128;

/// A polynomial over GF(2), stored least-significant coefficient first.
///
/// The word vector is kept canonical: no trailing zero words, and the empty
/// vector is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

impl BinaryPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self { words: vec![2] }
    }

    /// Builds a polynomial from the exponents of its nonzero coefficients.
    ///
    /// Exponents may appear in any order but must be distinct; the degree is
    /// capped at [`MAX_DEGREE`].
    pub fn from_exponents(exponents: &[usize]) -> Result<Self> {
        if let Some(&max) = exponents.iter().max() {
            if max > MAX_DEGREE {
                return Err(Error::DegreeTooLarge(max));
            }
        }
        Self::from_exponents_unbounded(exponents)
    }

    /// Same as [`from_exponents`](Self::from_exponents) without the degree
    /// cap. Used internally for binomials `x^N + 1` with huge `N`.
    pub(crate) fn from_exponents_unbounded(exponents: &[usize]) -> Result<Self> {
        let mut p = Self::zero();
        for &e in exponents {
            if p.coeff(e) {
                return Err(Error::InvalidPolynomial("duplicate exponent"));
            }
            p.set_coeff(e);
        }
        Ok(p)
    }

    /// The binomial `x^n + 1`.
    pub(crate) fn binomial(n: usize) -> Self {
        let mut p = Self::one();
        p.set_coeff(n);
        p
    }

    /// Parses either a comma-separated exponent list (`"0,1,5,11,13"`) or a
    /// big-endian hexadecimal bitmask prefixed with `0x`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            return Self::from_hex(hex);
        }
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut exponents = Vec::new();
        for part in text.split(',') {
            let e: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {part:?}")))?;
            exponents.push(e);
        }
        if let Some(&max) = exponents.iter().max() {
            if max > MAX_DEGREE {
                return Err(Error::DegreeTooLarge(max));
            }
        }
        Self::from_exponents_unbounded(&exponents)
            .map_err(|_| Error::Parse("duplicate exponent".into()))
    }

    fn from_hex(hex: &str) -> Result<Self> {
        if hex.is_empty() {
            return Err(Error::Parse("empty hex literal".into()));
        }
        let mut words = Vec::new();
        let bytes: Vec<u8> = hex.bytes().rev().collect();
        for (i, chunk) in bytes.chunks(16).enumerate() {
            let mut w = 0u64;
            for (j, &b) in chunk.iter().enumerate() {
                let d = (b as char)
                    .to_digit(16)
                    .ok_or_else(|| Error::Parse(format!("bad hex digit {:?}", b as char)))?;
                w |= (d as u64) << (4 * j);
            }
            if words.len() <= i {
                words.push(0);
            }
            words[i] = w;
        }
        let mut p = Self { words };
        p.normalize();
        match p.degree() {
            Some(d) if d > MAX_DEGREE => Err(Error::DegreeTooLarge(d)),
            _ => Ok(p),
        }
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree of the highest set coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    fn set_coeff(&mut self, i: usize) {
        let idx = i / 64;
        if self.words.len() <= idx {
            self.words.resize(idx + 1, 0);
        }
        self.words[idx] |= 1 << (i % 64);
    }

    /// Ascending exponents of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Coefficient-wise XOR.
    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    /// Carry-less product.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut words = vec![0u64; self.words.len() + rhs.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            let mut a = a;
            while a != 0 {
                let b = a.trailing_zeros() as usize;
                xor_shifted(&mut words, &rhs.words, i * 64 + b);
                a &= a - 1;
            }
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient * den + remainder` and `deg(remainder) < deg(den)`.
    pub fn divmod(&self, den: &Self) -> Result<(Self, Self)> {
        let dd = den.degree().ok_or(Error::ZeroModulus)?;
        let mut rem = self.clone();
        let nd = match rem.degree() {
            Some(nd) if nd >= dd => nd,
            _ => return Ok((Self::zero(), rem)),
        };
        let mut quot = vec![0u64; (nd - dd) / 64 + 1];
        for i in (dd..=nd).rev() {
            if rem.coeff(i) {
                let shift = i - dd;
                quot[shift / 64] |= 1 << (shift % 64);
                xor_shifted(&mut rem.words, &den.words, shift);
            }
        }
        rem.normalize();
        let mut q = Self { words: quot };
        q.normalize();
        Ok((q, rem))
    }

    /// Remainder of `self` modulo `m`.
    pub fn rem(&self, m: &Self) -> Result<Self> {
        Ok(self.divmod(m)?.1)
    }

    /// `(self * rhs) mod m`.
    pub fn mul_mod(&self, rhs: &Self, m: &Self) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        self.mul(rhs).rem(m)
    }

    /// `self^exp mod m` by square-and-multiply.
    pub fn pow_mod(&self, exp: u128, m: &Self) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        if exp == 0 {
            return Self::one().rem(m);
        }
        let base = self.rem(m)?;
        let mut acc = base.clone();
        let top = 127 - exp.leading_zeros();
        for bit in (0..top).rev() {
            acc = acc.mul_mod(&acc, m)?;
            if exp >> bit & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// Greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// The reciprocal polynomial `x^k h(1/x)`: the coefficient sequence
    /// reversed over `0..=k`. The zero polynomial is its own reciprocal.
    pub fn reciprocal(&self) -> Self {
        let Some(k) = self.degree() else {
            return Self::zero();
        };
        let mut p = Self::zero();
        for e in self.support() {
            p.set_coeff(k - e);
        }
        p
    }

    /// Rabin irreducibility test over GF(2).
    ///
    /// `h` of degree `k >= 1` is irreducible iff `x^(2^k) = x (mod h)` and
    /// `gcd(x^(2^(k/q)) - x, h) = 1` for every prime `q` dividing `k`.
    pub fn is_irreducible(&self) -> bool {
        let Some(k) = self.degree() else {
            return false;
        };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let x = Self::x();
        for q in distinct_prime_factors(k) {
            let mut frob = x.clone();
            for _ in 0..k / q {
                frob = frob.mul_mod(&frob, self).expect("nonzero modulus");
            }
            let g = frob.add(&x).gcd(self);
            if g != Self::one() {
                return false;
            }
        }
        let mut frob = x.clone();
        for _ in 0..k {
            frob = frob.mul_mod(&frob, self).expect("nonzero modulus");
        }
        frob == x.rem(self).expect("nonzero modulus")
    }

    /// Exhaustive trial-division irreducibility check, tractable for small
    /// degrees. Used to cross-check the Rabin test.
    #[cfg(test)]
    fn is_irreducible_by_trial_division(&self) -> bool {
        let Some(k) = self.degree() else {
            return false;
        };
        if k == 0 {
            return false;
        }
        for mask in 2u64..1u64 << (k / 2 + 1) {
            let div = Self { words: vec![mask] };
            if div.degree() == Some(0) {
                continue;
            }
            if self.rem(&div).expect("nonzero divisor").is_zero() {
                return false;
            }
        }
        true
    }

    /// Primitivity test: `h` of degree `k` is primitive iff it is
    /// irreducible and the multiplicative order of `x` modulo `h` equals
    /// `2^k - 1`, checked as `x^((2^k-1)/p) != 1` for every prime factor `p`.
    pub fn is_primitive(&self, table: &MersenneFactorTable) -> Result<bool> {
        let Some(k) = self.degree() else {
            return Ok(false);
        };
        if k == 0 || k > MAX_DEGREE {
            return Ok(false);
        }
        let factors = table
            .factors_of(k as u32)
            .ok_or(Error::MissingFactorization(k as u32))?;
        if !self.coeff(0) || !self.is_irreducible() {
            return Ok(false);
        }
        let n = mersenne(k as u32);
        let x = Self::x();
        let one = Self::one();
        let mut seen = None;
        for &p in factors {
            if seen == Some(p) {
                continue;
            }
            seen = Some(p);
            if x.pow_mod(n / p, self)? == one {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Renders the polynomial in conventional algebraic notation, mostly for
    /// diagnostics (`1 + x^2 + x^3`).
    pub fn to_algebraic(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.support()
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `dst ^= src << shift`, extending `dst` as needed.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let (off, bs) = (shift / 64, shift % 64);
    let needed = src.len() + off + 1;
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[off + i] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[off + i] ^= w << bs;
            dst[off + i + 1] ^= w >> (64 - bs);
        }
    }
}

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `2^k - 1` as a `u128`; `k` must be at most 128.
pub fn mersenne(k: u32) -> u128 {
    if k == 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

impl fmt::Display for BinaryPolynomial {
    /// Emits the comma-separated exponent list, the canonical text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        let mut first = true;
        for e in support {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        if first {
            write!(f, "-")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({})", self.to_algebraic())
    }
}

impl std::str::FromStr for BinaryPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Complete prime factorizations of `2^k - 1` for `k` up to [`MAX_DEGREE`].
///
/// The bundled data comes from the public Cunningham tables. Every load
/// re-multiplies the listed primes and rejects the table if any product
/// disagrees with `2^k - 1`, so a corrupted file cannot silently pass.
pub struct MersenneFactorTable {
    factors: BTreeMap<u32, Vec<u128>>,
}

static BUNDLED: OnceLock<MersenneFactorTable> = OnceLock::new();

impl MersenneFactorTable {
    /// The table shipped with the crate, covering `k` in `1..=128`.
    pub fn bundled() -> &'static Self {
        BUNDLED.get_or_init(|| {
            Self::parse(include_str!("../data/mersenne_factors.txt"))
                .expect("bundled factor table is valid")
        })
    }

    /// Parses the `k: p1 p2 ...` line format, with repeated primes listed
    /// with multiplicity, and validates every line by multiplication.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k_str, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: missing ':'", lineno + 1)))?;
            let k: u32 = k_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad degree", lineno + 1)))?;
            if k == 0 || k as usize > MAX_DEGREE {
                return Err(Error::Parse(format!("line {}: degree out of range", lineno + 1)));
            }
            let mut primes = Vec::new();
            let mut product: u128 = 1;
            for tok in rest.split_whitespace() {
                let p: u128 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad prime", lineno + 1)))?;
                product = product
                    .checked_mul(p)
                    .ok_or_else(|| Error::Parse(format!("line {}: product overflow", lineno + 1)))?;
                primes.push(p);
            }
            if product != mersenne(k) {
                return Err(Error::Parse(format!(
                    "line {}: factors of 2^{k} - 1 do not multiply back",
                    lineno + 1
                )));
            }
            factors.insert(k, primes);
        }
        Ok(Self { factors })
    }

    /// Loads and validates a table from a file.
    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Prime factors of `2^k - 1` with multiplicity, if the table has them.
    pub fn factors_of(&self, k: u32) -> Option<&[u128]> {
        self.factors.get(&k).map(|v| v.as_slice())
    }

    /// Degrees covered by the table.
    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(exps: &[usize]) -> BinaryPolynomial {
        BinaryPolynomial::from_exponents(exps).unwrap()
    }

    #[test]
    fn add_is_self_inverse() {
        let p = poly(&[0, 1]);
        assert!(p.add(&p).is_zero());
    }

    #[test]
    fn add_direct_xor() {
        // (1 + x^2) + (x + x^2) = 1 + x
        assert_eq!(poly(&[0, 2]).add(&poly(&[1, 2])), poly(&[0, 1]));
        // identity
        let p = poly(&[0, 3, 7]);
        assert_eq!(p.add(&BinaryPolynomial::zero()), p);
    }

    #[test]
    fn mul_mod_basics() {
        let m = poly(&[0, 1, 2]);
        // x * x = x^2 = 1 + x (mod 1 + x + x^2)
        let x = BinaryPolynomial::x();
        assert_eq!(x.mul_mod(&x, &m).unwrap(), poly(&[0, 1]));
        // identities
        let a = poly(&[0, 1]);
        assert_eq!(a.mul_mod(&BinaryPolynomial::one(), &m).unwrap(), a.rem(&m).unwrap());
        assert!(BinaryPolynomial::zero().mul_mod(&a, &m).unwrap().is_zero());
        assert_eq!(
            a.mul_mod(&a, &BinaryPolynomial::zero()),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn divmod_generator_of_short_simplex_code() {
        // (x^7 + 1) / (1 + x + x^3) = 1 + x + x^2 + x^4 exactly.
        let num = BinaryPolynomial::binomial(7);
        let den = poly(&[0, 1, 3]);
        let (q, r) = num.divmod(&den).unwrap();
        assert_eq!(q, poly(&[0, 1, 2, 4]));
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_edges() {
        let p = poly(&[0, 2, 5]);
        let (q, r) = p.divmod(&BinaryPolynomial::one()).unwrap();
        assert_eq!(q, p);
        assert!(r.is_zero());

        let (q, r) = poly(&[0, 1]).divmod(&poly(&[0, 2])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, poly(&[0, 1]));

        assert_eq!(
            p.divmod(&BinaryPolynomial::zero()),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(poly(&[0, 1, 5, 11, 13]).reciprocal(), poly(&[0, 2, 8, 12, 13]));
        assert_eq!(poly(&[0, 2, 3]).reciprocal(), poly(&[0, 1, 3]));
        // palindromes are fixed points
        let pal = poly(&[0, 2, 4]);
        assert_eq!(pal.reciprocal(), pal);
        // involution on polynomials with nonzero constant term
        let p = poly(&[0, 3, 10]);
        assert_eq!(p.reciprocal().reciprocal(), p);
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(poly(&[0, 1, 2]).is_irreducible());
        assert!(!poly(&[0, 2]).is_irreducible()); // (1 + x)^2
        assert!(poly(&[0, 2, 3]).is_irreducible());
        assert!(!BinaryPolynomial::one().is_irreducible());
        assert!(!BinaryPolynomial::zero().is_irreducible());
    }

    #[test]
    fn rabin_agrees_with_trial_division_exhaustively() {
        // every polynomial of degree <= 10
        for mask in 2u64..1 << 11 {
            let p = BinaryPolynomial { words: vec![mask] };
            assert_eq!(
                p.is_irreducible(),
                p.is_irreducible_by_trial_division(),
                "disagreement on {p:?}"
            );
        }
    }

    #[test]
    fn rabin_agrees_with_trial_division_sampled_to_degree_16() {
        // deterministic stride through degrees 11..=16
        for k in 11..=16usize {
            let lo = 1u64 << k;
            for i in 0..200u64 {
                let mask = lo | (i.wrapping_mul(0x9e37_79b9_7f4a_7c15) & (lo - 1)) | 1;
                let p = BinaryPolynomial { words: vec![mask] };
                assert_eq!(p.is_irreducible(), p.is_irreducible_by_trial_division());
            }
        }
    }

    #[test]
    fn primitivity_reference_polynomials() {
        let t = MersenneFactorTable::bundled();
        assert!(poly(&[0, 2, 3]).is_primitive(t).unwrap());
        assert!(poly(&[0, 1, 5, 11, 13]).is_primitive(t).unwrap());
        // primitive despite its support not being a Golomb ruler
        assert!(poly(&[0, 1, 3, 4, 5]).is_primitive(t).unwrap());
        // x^4 + x^3 + x^2 + x + 1 is irreducible but has order 5, not 15
        let p = poly(&[0, 1, 2, 3, 4]);
        assert!(p.is_irreducible());
        assert!(!p.is_primitive(t).unwrap());
        // reducible
        assert!(!poly(&[0, 2]).is_primitive(t).unwrap());
    }

    #[test]
    fn primitive_implies_odd_weight_for_degree_at_least_two() {
        let t = MersenneFactorTable::bundled();
        for k in 2..=12usize {
            for mask in 0u64..1 << (k - 1) {
                let m = (1 << k) | (mask << 1) | 1;
                let p = BinaryPolynomial { words: vec![m] };
                if p.is_primitive(t).unwrap() {
                    assert_eq!(p.weight() % 2, 1, "even-weight primitive {p:?}");
                }
            }
        }
    }

    #[test]
    fn missing_factorization_is_reported() {
        let table = MersenneFactorTable::parse("3: 7\n").unwrap();
        let p = poly(&[0, 2, 3]);
        assert!(p.is_primitive(&table).unwrap());
        let q = poly(&[0, 1, 4]);
        assert_eq!(
            q.is_primitive(&table),
            Err(Error::MissingFactorization(4))
        );
    }

    #[test]
    fn factor_table_rejects_bad_products() {
        assert!(MersenneFactorTable::parse("4: 3 5\n").is_ok());
        assert!(MersenneFactorTable::parse("4: 15\n").is_ok()); // product right, primality not checked here
        assert!(MersenneFactorTable::parse("4: 3 7\n").is_err());
    }

    #[test]
    fn bundled_table_covers_every_degree() {
        let t = MersenneFactorTable::bundled();
        for k in 1..=MAX_DEGREE as u32 {
            assert!(t.factors_of(k).is_some(), "missing k = {k}");
        }
    }

    #[test]
    fn text_roundtrip_and_hex() {
        let p = BinaryPolynomial::parse("0,1,5,11,13").unwrap();
        assert_eq!(p.to_string(), "0,1,5,11,13");
        // 1 + x + x^5 + x^11 + x^13 = 0b10100000100011 = 0x2823
        assert_eq!(BinaryPolynomial::parse("0x2823").unwrap(), p);
        assert!(BinaryPolynomial::parse("0,1,1").is_err());
        assert!(BinaryPolynomial::parse("0,200").is_err());
        assert!(BinaryPolynomial::parse("").is_err());
    }

    #[test]
    fn divmod_recomposes_exactly() {
        // randomized-ish sweep with a fixed stride
        for i in 1..400u64 {
            let a = BinaryPolynomial {
                words: vec![i.wrapping_mul(0x9e37_79b9_7f4a_7c15), i],
            };
            let b = BinaryPolynomial {
                words: vec![i.wrapping_mul(0xbf58_476d_1ce4_e5b9) | 1],
            };
            let (q, r) = a.divmod(&b).unwrap();
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.degree() < b.degree() || r.is_zero());
        }
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        let m = poly(&[0, 2, 3]);
        let x = BinaryPolynomial::x();
        let mut acc = BinaryPolynomial::one();
        for e in 0..40u128 {
            assert_eq!(x.pow_mod(e, &m).unwrap(), acc);
            acc = acc.mul_mod(&x, &m).unwrap();
        }
    }
}
