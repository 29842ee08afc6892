//! C ABI over the prcldpc library.
//!
//! Objects cross the boundary as opaque handles allocated here and released
//! with the matching `_free` function; every fallible call returns a
//! [`PrcStatus`] and writes results through out-pointers. The generated
//! header lives in `include/prcldpc.h`.

use std::ffi::{c_char, CStr};
use std::ptr;

use prcldpc::code::{self, PrcLdpcCode};
use prcldpc::codec::{DecoderGraph, DecoderVariant, LfsrEncoder};
use prcldpc::spectrum;
use prcldpc::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrcStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The descriptor or polynomial text did not parse.
    ParseError = 2,
    /// The code parameters are invalid (ruler, length or rate constraints).
    InvalidCode = 3,
    /// An output buffer is smaller than the required length.
    BufferTooSmall = 4,
    /// An input length does not match the code dimensions.
    LengthMismatch = 5,
    /// The operation exceeds a materialization cap.
    TooLarge = 6,
    /// Internal failure; should not happen.
    Internal = 7,
}

fn status_of(err: &Error) -> PrcStatus {
    match err {
        Error::Parse(_) | Error::Io(_) => PrcStatus::ParseError,
        Error::LengthMismatch { .. } => PrcStatus::LengthMismatch,
        Error::TooLarge(_) => PrcStatus::TooLarge,
        Error::RccViolation
        | Error::LengthOutOfRange { .. }
        | Error::RateOverflow(_)
        | Error::ShortenTooDeep { .. }
        | Error::InvalidPolynomial(_)
        | Error::DegreeTooLarge(_)
        | Error::NotPrimitive
        | Error::MissingFactorization(_) => PrcStatus::InvalidCode,
        _ => PrcStatus::Internal,
    }
}

/// An opaque code handle: the parsed code plus its decoder graph.
pub struct PrcCode {
    code: PrcLdpcCode,
    graph: DecoderGraph,
}

/// Parses a key-value code descriptor (`h=...`, `n=...`, optional `z=`,
/// `shorten=`, `puncture=`) and allocates a handle into `out`.
///
/// # Safety
/// `descriptor` must be a valid NUL-terminated C string and `out` a valid
/// pointer; the handle must be released with [`prc_code_free`].
#[no_mangle]
pub unsafe extern "C" fn prc_code_parse(
    descriptor: *const c_char,
    out: *mut *mut PrcCode,
) -> PrcStatus {
    if descriptor.is_null() || out.is_null() {
        return PrcStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { CStr::from_ptr(descriptor) }.to_str() {
        Ok(t) => t,
        Err(_) => return PrcStatus::ParseError,
    };
    match code::parse_descriptor(text) {
        Ok(code) => {
            let graph = DecoderGraph::for_code(&code);
            unsafe { *out = Box::into_raw(Box::new(PrcCode { code, graph })) };
            PrcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a handle returned by [`prc_code_parse`]. Null is a no-op.
///
/// # Safety
/// `code` must be a handle from [`prc_code_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prc_code_free(code: *mut PrcCode) {
    if !code.is_null() {
        drop(unsafe { Box::from_raw(code) });
    }
}

/// Reports block length, information length and parity count.
///
/// # Safety
/// `code` must be a live handle; out-pointers may be null to skip a field.
#[no_mangle]
pub unsafe extern "C" fn prc_code_dimensions(
    code: *const PrcCode,
    n: *mut u32,
    k: *mut u32,
    r: *mut u32,
) -> PrcStatus {
    let Some(handle) = (unsafe { code.as_ref() }) else {
        return PrcStatus::NullArgument;
    };
    unsafe {
        if !n.is_null() {
            *n = handle.code.n() as u32;
        }
        if !k.is_null() {
            *k = handle.code.k_eff() as u32;
        }
        if !r.is_null() {
            *r = handle.code.r() as u32;
        }
    }
    PrcStatus::Ok
}

/// Systematically encodes `info` (one bit per byte, length `k`) into
/// `out` (length `n`).
///
/// # Safety
/// `info` must point to `info_len` readable bytes and `out` to `out_len`
/// writable bytes.
#[no_mangle]
pub unsafe extern "C" fn prc_encode(
    code: *const PrcCode,
    info: *const u8,
    info_len: usize,
    out: *mut u8,
    out_len: usize,
) -> PrcStatus {
    let Some(handle) = (unsafe { code.as_ref() }) else {
        return PrcStatus::NullArgument;
    };
    if info.is_null() || out.is_null() {
        return PrcStatus::NullArgument;
    }
    if out_len < handle.code.n() {
        return PrcStatus::BufferTooSmall;
    }
    let info = unsafe { std::slice::from_raw_parts(info, info_len) };
    let mut encoder = LfsrEncoder::new(128).expect("register size is valid");
    match encoder.encode_code(&handle.code, info) {
        Ok(cw) => {
            unsafe { ptr::copy_nonoverlapping(cw.as_ptr(), out, cw.len()) };
            PrcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Decodes a channel LLR vector (positive values vote for bit 0) with the
/// log-domain sum-product algorithm.
///
/// Writes the hard decision into `out` (length `n`); `converged` receives
/// 0/1 and `iterations` the number of iterations used (both optional).
///
/// # Safety
/// `llr` must point to `llr_len` readable floats and `out` to `out_len`
/// writable bytes.
#[no_mangle]
pub unsafe extern "C" fn prc_decode(
    code: *const PrcCode,
    llr: *const f32,
    llr_len: usize,
    max_iterations: u32,
    out: *mut u8,
    out_len: usize,
    converged: *mut i32,
    iterations: *mut u32,
) -> PrcStatus {
    let Some(handle) = (unsafe { code.as_ref() }) else {
        return PrcStatus::NullArgument;
    };
    if llr.is_null() || out.is_null() {
        return PrcStatus::NullArgument;
    }
    if out_len < handle.code.n() {
        return PrcStatus::BufferTooSmall;
    }
    let llr = unsafe { std::slice::from_raw_parts(llr, llr_len) };
    let llr64: Vec<f64> = llr.iter().map(|&x| x as f64).collect();
    match handle
        .graph
        .decode(&llr64, DecoderVariant::SumProduct, max_iterations as usize)
    {
        Ok(res) => {
            unsafe {
                ptr::copy_nonoverlapping(res.word.as_ptr(), out, res.word.len());
                if !converged.is_null() {
                    *converged = i32::from(res.converged);
                }
                if !iterations.is_null() {
                    *iterations = res.iterations as u32;
                }
            }
            PrcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Checks whether `word` (one bit per byte, length `n`) is a codeword.
///
/// # Safety
/// `word` must point to `word_len` readable bytes.
#[no_mangle]
pub unsafe extern "C" fn prc_syndrome_is_zero(
    code: *const PrcCode,
    word: *const u8,
    word_len: usize,
    is_zero: *mut i32,
) -> PrcStatus {
    let Some(handle) = (unsafe { code.as_ref() }) else {
        return PrcStatus::NullArgument;
    };
    if word.is_null() || is_zero.is_null() {
        return PrcStatus::NullArgument;
    }
    let word = unsafe { std::slice::from_raw_parts(word, word_len) };
    match handle.code.syndrome(word) {
        Ok(s) => {
            unsafe { *is_zero = i32::from(s.iter().all(|&b| b == 0)) };
            PrcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Estimates the minimum distance by scanning the sparse portions of the
/// underlying sequence. `scan_radius = 0` selects the default (four times
/// the polynomial degree). The estimate never undershoots the true
/// distance; it can only miss codewords outside the scanned regions.
///
/// # Safety
/// `code` must be a live handle; out-pointers may be null to skip a field.
#[no_mangle]
pub unsafe extern "C" fn prc_min_distance_estimate(
    code: *const PrcCode,
    scan_radius: u32,
    d: *mut u32,
    count: *mut u64,
) -> PrcStatus {
    let Some(handle) = (unsafe { code.as_ref() }) else {
        return PrcStatus::NullArgument;
    };
    let radius = if scan_radius == 0 {
        spectrum::default_scan_radius(handle.code.k())
    } else {
        scan_radius as usize
    };
    match spectrum::estimate_spectrum(&handle.code, radius) {
        Ok(s) => {
            unsafe {
                if !d.is_null() {
                    *d = s.d as u32;
                }
                if !count.is_null() {
                    *count = s.a_d;
                }
            }
            PrcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn prc_status_message(status: PrcStatus) -> *const c_char {
    let text: &'static str = match status {
        PrcStatus::Ok => "ok\0",
        PrcStatus::NullArgument => "null argument\0",
        PrcStatus::ParseError => "parse error\0",
        PrcStatus::InvalidCode => "invalid code parameters\0",
        PrcStatus::BufferTooSmall => "output buffer too small\0",
        PrcStatus::LengthMismatch => "input length mismatch\0",
        PrcStatus::TooLarge => "instance exceeds materialization cap\0",
        PrcStatus::Internal => "internal error\0",
    };
    text.as_ptr() as *const c_char
}
