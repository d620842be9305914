//! C ABI for the eclipse query library.
//!
//! All objects cross the boundary as opaque handles; every function
//! returns an [`EclipseStatus`] code and writes results through out
//! pointers. Handles must be released with the matching `_free` function.

use eclipse::datagen::{generate, DistributionKind, GenSpec};
use eclipse::io::read_points;
use eclipse::query::{build_index, query_bundle, IndexParams};
use eclipse::{Algorithm, Dataset, Error, RatioBox};
use libc::{c_char, size_t};
use std::ffi::CStr;
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by every API function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EclipseStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    IoError = 4,
    ParseError = 5,
    IndexTooLarge = 6,
    InternalError = 7,
}

/// Opaque dataset handle.
pub struct EclipseDataset(Dataset);

/// Opaque per-attribute ratio box handle.
pub struct EclipseRatioBox(RatioBox);

/// Opaque prebuilt index handle.
pub struct EclipseIndex(eclipse::io::IndexBundle);

fn status_of(e: &Error) -> EclipseStatus {
    match e {
        Error::DimensionMismatch { .. } => EclipseStatus::DimensionMismatch,
        Error::Io(_) => EclipseStatus::IoError,
        Error::Parse { .. } => EclipseStatus::ParseError,
        Error::IndexTooLarge { .. } => EclipseStatus::IndexTooLarge,
        _ => EclipseStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> EclipseStatus) -> EclipseStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(EclipseStatus::InternalError)
}

fn parse_algorithm(code: u32) -> Option<Algorithm> {
    match code {
        0 => Some(Algorithm::Base),
        1 => Some(Algorithm::Transform),
        2 => Some(Algorithm::Quad),
        3 => Some(Algorithm::Cutting),
        _ => None,
    }
}

fn parse_kind(code: u32) -> Option<DistributionKind> {
    match code {
        0 => Some(DistributionKind::Correlated),
        1 => Some(DistributionKind::Independent),
        2 => Some(DistributionKind::Anticorrelated),
        _ => None,
    }
}

/// Loads a dataset from a CSV file (header `id,x1,...,xd`).
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eclipse_dataset_read_csv(
    path: *const c_char,
    out: *mut *mut EclipseDataset,
) -> EclipseStatus {
    if path.is_null() || out.is_null() {
        return EclipseStatus::NullPointer;
    }
    guarded(|| {
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return EclipseStatus::InvalidArgument;
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(_) => return EclipseStatus::IoError,
        };
        match read_points(BufReader::new(file)) {
            Ok(ds) => {
                *out = Box::into_raw(Box::new(EclipseDataset(ds)));
                EclipseStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Generates a synthetic dataset (kind: 0 = CORR, 1 = INDE, 2 = ANTI).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eclipse_dataset_generate(
    n: size_t,
    d: size_t,
    kind: u32,
    seed: u64,
    out: *mut *mut EclipseDataset,
) -> EclipseStatus {
    if out.is_null() {
        return EclipseStatus::NullPointer;
    }
    guarded(|| {
        let Some(kind) = parse_kind(kind) else {
            return EclipseStatus::InvalidArgument;
        };
        match generate(&GenSpec { n, d, kind, seed }) {
            Ok(ds) => {
                *out = Box::into_raw(Box::new(EclipseDataset(ds)));
                EclipseStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Number of points in a dataset.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eclipse_dataset_len(
    ds: *const EclipseDataset,
    out: *mut size_t,
) -> EclipseStatus {
    if ds.is_null() || out.is_null() {
        return EclipseStatus::NullPointer;
    }
    *out = (*ds).0.len();
    EclipseStatus::Ok
}

/// Dimensionality of a dataset.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eclipse_dataset_dim(
    ds: *const EclipseDataset,
    out: *mut size_t,
) -> EclipseStatus {
    if ds.is_null() || out.is_null() {
        return EclipseStatus::NullPointer;
    }
    *out = (*ds).0.dim();
    EclipseStatus::Ok
}

/// Releases a dataset handle.
///
/// # Safety
/// `ds` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eclipse_dataset_free(ds: *mut EclipseDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Builds a ratio box from `len` [low, high] pairs (one per attribute
/// except the last; the implied point dimension is len + 1).
///
/// # Safety
/// `lows` and `highs` must point to `len` readable doubles; `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eclipse_ratio_box_new(
    lows: *const f64,
    highs: *const f64,
    len: size_t,
    out: *mut *mut EclipseRatioBox,
) -> EclipseStatus {
    if lows.is_null() || highs.is_null() || out.is_null() {
        return EclipseStatus::NullPointer;
    }
    guarded(|| {
        let lows = std::slice::from_raw_parts(lows, len);
        let highs = std::slice::from_raw_parts(highs, len);
        let intervals: Vec<(f64, f64)> = lows.iter().copied().zip(highs.iter().copied()).collect();
        match RatioBox::new(intervals) {
            Ok(bx) => {
                *out = Box::into_raw(Box::new(EclipseRatioBox(bx)));
                EclipseStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a ratio box handle.
///
/// # Safety
/// `bx` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eclipse_ratio_box_free(bx: *mut EclipseRatioBox) {
    if !bx.is_null() {
        drop(Box::from_raw(bx));
    }
}

fn write_ids(ids: Vec<u64>, out_ids: *mut *mut u64, out_len: *mut size_t) -> EclipseStatus {
    let mut boxed = ids.into_boxed_slice();
    unsafe {
        *out_len = boxed.len();
        *out_ids = if boxed.is_empty() {
            ptr::null_mut()
        } else {
            boxed.as_mut_ptr()
        };
    }
    std::mem::forget(boxed);
    EclipseStatus::Ok
}

/// Runs an eclipse query (algo: 0 = base, 1 = tran, 2 = quad,
/// 3 = cutting). On success `*out_ids` holds `*out_len` ascending ids;
/// release with [`eclipse_ids_free`].
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eclipse_query_run(
    ds: *const EclipseDataset,
    bx: *const EclipseRatioBox,
    algo: u32,
    out_ids: *mut *mut u64,
    out_len: *mut size_t,
) -> EclipseStatus {
    if ds.is_null() || bx.is_null() || out_ids.is_null() || out_len.is_null() {
        return EclipseStatus::NullPointer;
    }
    guarded(|| {
        let Some(algo) = parse_algorithm(algo) else {
            return EclipseStatus::InvalidArgument;
        };
        match eclipse::eclipse_query(&(*ds).0, &(*bx).0, algo) {
            Ok(ids) => write_ids(ids, out_ids, out_len),
            Err(e) => status_of(&e),
        }
    })
}

/// Builds a reusable index (algo: 2 = quad, 3 = cutting). `capacity` and
/// `t` of 0 select defaults.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eclipse_index_build(
    ds: *const EclipseDataset,
    algo: u32,
    capacity: size_t,
    t: size_t,
    seed: u64,
    out: *mut *mut EclipseIndex,
) -> EclipseStatus {
    if ds.is_null() || out.is_null() {
        return EclipseStatus::NullPointer;
    }
    guarded(|| {
        let Some(algo) = parse_algorithm(algo) else {
            return EclipseStatus::InvalidArgument;
        };
        match build_index(&(*ds).0, algo, IndexParams { capacity, t, seed }) {
            Ok(bundle) => {
                *out = Box::into_raw(Box::new(EclipseIndex(bundle)));
                EclipseStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Queries a prebuilt index; result contract matches
/// [`eclipse_query_run`].
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eclipse_index_query(
    idx: *const EclipseIndex,
    bx: *const EclipseRatioBox,
    out_ids: *mut *mut u64,
    out_len: *mut size_t,
) -> EclipseStatus {
    if idx.is_null() || bx.is_null() || out_ids.is_null() || out_len.is_null() {
        return EclipseStatus::NullPointer;
    }
    guarded(|| match query_bundle(&(*idx).0, &(*bx).0) {
        Ok(ids) => write_ids(ids, out_ids, out_len),
        Err(e) => status_of(&e),
    })
}

/// Releases an index handle.
///
/// # Safety
/// `idx` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eclipse_index_free(idx: *mut EclipseIndex) {
    if !idx.is_null() {
        drop(Box::from_raw(idx));
    }
}

/// Releases an id buffer returned by a query.
///
/// # Safety
/// `ids`/`len` must be exactly the pair a query produced.
#[no_mangle]
pub unsafe extern "C" fn eclipse_ids_free(ids: *mut u64, len: size_t) {
    if !ids.is_null() {
        drop(Box::from_raw(std::slice::from_raw_parts_mut(ids, len)));
    }
}
