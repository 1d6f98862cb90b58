//! C ABI over `partrank`.
//!
//! Objects cross the boundary as opaque handles (`PrPartition`,
//! `PrGeneratingSet`) that the caller releases with the matching `_free`
//! function. Every fallible call returns a `PrStatus`; on anything other than
//! `PR_STATUS_OK` a human-readable message is available from `pr_last_error` on the
//! same thread. Strings are copied into caller buffers: each such call writes
//! the required size (including the terminating NUL) to `needed` and returns
//! `PR_STATUS_BUFFER_TOO_SMALL` when `cap` is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use partrank::certify::certify_lower_bound;
use partrank::classify::classify;
use partrank::closure::verify_generation;
use partrank::generators::full_generating_set_seeded;
use partrank::rank::rank_total;
use partrank::{Error, Partition, Transformation};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotInT = 5,
    SpecialCase = 6,
    OverCap = 7,
    IndexOutOfRange = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

/// Which monoid `pr_partition_order` counts.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrMonoid {
    T = 0,
    Sigma = 1,
    S = 2,
}

/// Rank of `T(X,P)` split into its three summands.
#[repr(C)]
#[derive(Clone, Copy, Default, Debug)]
pub struct PrRankBreakdown {
    pub rank_units: usize,
    pub relrank_t_over_sigma: usize,
    pub relrank_sigma_over_s: usize,
    pub total: usize,
    /// Non-zero for the four small partitions whose rank is a fixed value.
    pub special_case: u8,
}

/// Outcome of a closure run.
#[repr(C)]
#[derive(Clone, Copy, Default, Debug)]
pub struct PrGenerationReport {
    pub generates: u8,
    pub closure_order: u64,
    pub multiplications: u64,
    pub depth: usize,
}

/// Outcome of the lower-bound certificate check.
#[repr(C)]
#[derive(Clone, Copy, Default, Debug)]
pub struct PrCertificateSummary {
    pub passed: u8,
    pub obligations: usize,
    pub missing: usize,
    pub parity_dimension: usize,
    pub parity_rank: usize,
}

/// Opaque partition handle.
pub struct PrPartition {
    inner: Partition,
}

/// Opaque handle to a list of transformations on one partition.
pub struct PrGeneratingSet {
    partition: Partition,
    elements: Vec<Transformation>,
    tags: Vec<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> PrStatus {
    match err {
        Error::Parse { .. } => PrStatus::Parse,
        Error::NotInT { .. } => PrStatus::NotInT,
        Error::SpecialCase { .. } => PrStatus::SpecialCase,
        Error::OverCap { .. } => PrStatus::OverCap,
        _ => PrStatus::InvalidArgument,
    }
}

fn fail(status: PrStatus, msg: impl Into<String>) -> PrStatus {
    set_error(msg);
    status
}

fn from_core(err: Error) -> PrStatus {
    fail(status_of(&err), err.to_string())
}

/// Runs `body` with panics turned into `PR_STATUS_INTERNAL`.
fn guard(body: impl FnOnce() -> PrStatus) -> PrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(PrStatus::Internal, "internal panic"),
    }
}

/// Copies `text` plus a NUL into `buf` without touching the last error.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes; `needed` must be null or valid.
unsafe fn copy_str(text: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> bool {
    let size = text.len() + 1;
    if !needed.is_null() {
        *needed = size;
    }
    if buf.is_null() || cap < size {
        return false;
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    true
}

/// # Safety
/// As for `copy_str`.
unsafe fn write_str(text: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> PrStatus {
    if copy_str(text, buf, cap, needed) {
        PrStatus::Ok
    } else {
        fail(PrStatus::BufferTooSmall, format!("buffer needs {} bytes, got {cap}", text.len() + 1))
    }
}

macro_rules! deref {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(v) => v,
            None => return fail(PrStatus::NullPointer, concat!(stringify!($p), " is null")),
        }
    };
}

macro_rules! out {
    ($p:expr) => {
        match unsafe { $p.as_mut() } {
            Some(v) => v,
            None => return fail(PrStatus::NullPointer, concat!(stringify!($p), " is null")),
        }
    };
}

/// Copies the message of the last failed call on this thread into `buf`.
/// A short buffer yields `PR_STATUS_BUFFER_TOO_SMALL` but keeps the message.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes; `needed` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn pr_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> PrStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    if copy_str(&msg, buf, cap, needed) {
        PrStatus::Ok
    } else {
        PrStatus::BufferTooSmall
    }
}

/// Parses a partition such as `"3+2+1"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_partition_parse(spec: *const c_char, out: *mut *mut PrPartition) -> PrStatus {
    guard(|| {
        let out = out!(out);
        *out = ptr::null_mut();
        if spec.is_null() {
            return fail(PrStatus::NullPointer, "spec is null");
        }
        let Ok(text) = CStr::from_ptr(spec).to_str() else {
            return fail(PrStatus::InvalidUtf8, "spec is not valid UTF-8");
        };
        match Partition::parse(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PrPartition { inner }));
                PrStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Releases a partition. Null is ignored.
///
/// # Safety
/// `p` must be null or come from `pr_partition_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pr_partition_free(p: *mut PrPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pr_partition_degree(p: *const PrPartition) -> usize {
    p.as_ref().map_or(0, |p| p.inner.degree())
}

/// Canonical text of the partition (parts in descending order).
///
/// # Safety
/// `p` must be a live handle; `buf`/`needed` as for `pr_last_error`.
#[no_mangle]
pub unsafe extern "C" fn pr_partition_to_string(
    p: *const PrPartition,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PrStatus {
    let p = deref!(p);
    write_str(&p.inner.to_string(), buf, cap, needed)
}

/// Rank of `T(X,P)` with its breakdown.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_partition_rank(p: *const PrPartition, out: *mut PrRankBreakdown) -> PrStatus {
    guard(|| {
        let p = deref!(p);
        let out = out!(out);
        let b = rank_total(&p.inner);
        *out = PrRankBreakdown {
            rank_units: b.rank_units,
            relrank_t_over_sigma: b.relrank_t_over_sigma,
            relrank_sigma_over_s: b.relrank_sigma_over_s,
            total: b.total,
            special_case: u8::from(b.special_case.is_some()),
        };
        PrStatus::Ok
    })
}

/// Exact order of `T`, `Sigma` or `S` as a decimal string.
///
/// # Safety
/// `p` must be a live handle; `buf`/`needed` as for `pr_last_error`.
#[no_mangle]
pub unsafe extern "C" fn pr_partition_order(
    p: *const PrPartition,
    which: PrMonoid,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PrStatus {
    guard(|| {
        let p = deref!(p);
        let order = match which {
            PrMonoid::T => p.inner.order_t(),
            PrMonoid::Sigma => p.inner.order_sigma(),
            PrMonoid::S => p.inner.order_s(),
        };
        write_str(&order.to_string(), buf, cap, needed)
    })
}

/// Builds the minimum-size generating set for `p`. `seed` only affects the
/// choice of element inside each class where the construction is free.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_genset_new(p: *const PrPartition, seed: u64, out: *mut *mut PrGeneratingSet) -> PrStatus {
    guard(|| {
        let p = deref!(p);
        let out = out!(out);
        *out = ptr::null_mut();
        match full_generating_set_seeded(&p.inner, seed) {
            Ok(set) => {
                let tags = set.provenance.iter().map(|prov| prov.label.tag()).collect();
                *out = Box::into_raw(Box::new(PrGeneratingSet {
                    partition: set.partition,
                    elements: set.elements,
                    tags,
                }));
                PrStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Wraps `count` transformations given as a row-major `count x degree`
/// array of 0-based images. Each element must preserve the partition.
///
/// # Safety
/// `p` must be a live handle; `images` must be valid for
/// `count * degree` reads; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_genset_from_images(
    p: *const PrPartition,
    images: *const usize,
    count: usize,
    out: *mut *mut PrGeneratingSet,
) -> PrStatus {
    guard(|| {
        let p = deref!(p);
        let out = out!(out);
        *out = ptr::null_mut();
        let degree = p.inner.degree();
        let Some(total) = count.checked_mul(degree) else {
            return fail(PrStatus::InvalidArgument, "count * degree overflows");
        };
        if images.is_null() && total > 0 {
            return fail(PrStatus::NullPointer, "images is null");
        }
        let flat = if total == 0 { &[][..] } else { std::slice::from_raw_parts(images, total) };
        let mut elements = Vec::with_capacity(count);
        let mut tags = Vec::with_capacity(count);
        for (index, row) in flat.chunks(degree.max(1)).take(count).enumerate() {
            let t = match Transformation::new(row.to_vec()) {
                Ok(t) => t,
                Err(e) => return from_core(e),
            };
            match classify(&p.inner, &t) {
                Ok(label) => tags.push(label.tag()),
                Err(_) => return from_core(Error::NotInT { index }),
            }
            elements.push(t);
        }
        *out = Box::into_raw(Box::new(PrGeneratingSet { partition: p.inner.clone(), elements, tags }));
        PrStatus::Ok
    })
}

/// Releases a generating set. Null is ignored.
///
/// # Safety
/// `s` must be null or come from a `pr_genset_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pr_genset_free(s: *mut PrGeneratingSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pr_genset_len(s: *const PrGeneratingSet) -> usize {
    s.as_ref().map_or(0, |s| s.elements.len())
}

/// Copies the images of element `index` into `buf`, which must hold the
/// degree of the partition.
///
/// # Safety
/// `s` must be a live handle; `buf` must be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn pr_genset_element(
    s: *const PrGeneratingSet,
    index: usize,
    buf: *mut usize,
    cap: usize,
) -> PrStatus {
    guard(|| {
        let s = deref!(s);
        let Some(t) = s.elements.get(index) else {
            return fail(PrStatus::IndexOutOfRange, format!("index {index} >= {}", s.elements.len()));
        };
        let images = t.images();
        if buf.is_null() || cap < images.len() {
            return fail(PrStatus::BufferTooSmall, format!("buffer needs {} entries", images.len()));
        }
        ptr::copy_nonoverlapping(images.as_ptr(), buf, images.len());
        PrStatus::Ok
    })
}

/// Class tag of element `index` (`unit`, `A(1,2)`, `B(1)`, ...).
///
/// # Safety
/// `s` must be a live handle; `buf`/`needed` as for `pr_last_error`.
#[no_mangle]
pub unsafe extern "C" fn pr_genset_tag(
    s: *const PrGeneratingSet,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PrStatus {
    let s = deref!(s);
    match s.tags.get(index) {
        Some(tag) => write_str(tag, buf, cap, needed),
        None => fail(PrStatus::IndexOutOfRange, format!("index {index} >= {}", s.tags.len())),
    }
}

/// Computes the closure of the set and compares it with `|T(X,P)|`.
/// `cap == 0` means no cap; otherwise `PR_STATUS_OVER_CAP` is returned when the
/// closure grows past `cap` elements.
///
/// # Safety
/// `s` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_verify_generation(
    s: *const PrGeneratingSet,
    cap: u64,
    out: *mut PrGenerationReport,
) -> PrStatus {
    guard(|| {
        let s = deref!(s);
        let out = out!(out);
        let cap = (cap != 0).then_some(cap);
        match verify_generation(&s.partition, &s.elements, cap) {
            Ok(report) => {
                *out = PrGenerationReport {
                    generates: u8::from(report.generates()),
                    closure_order: report.closure_order,
                    multiplications: report.stats.multiplications,
                    depth: report.stats.depth,
                };
                PrStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Checks the necessary conditions every generating set must meet and
/// reports how many of them the set discharges.
///
/// # Safety
/// `s` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pr_certify_lower_bound(s: *const PrGeneratingSet, out: *mut PrCertificateSummary) -> PrStatus {
    guard(|| {
        let s = deref!(s);
        let out = out!(out);
        match certify_lower_bound(&s.partition, &s.elements) {
            Ok(cert) => {
                *out = PrCertificateSummary {
                    passed: u8::from(cert.passed()),
                    obligations: cert.obligations.len(),
                    missing: cert.missing().count(),
                    parity_dimension: cert.parity_dimension,
                    parity_rank: cert.parity_rank,
                };
                PrStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}
