//! C interface to the `hopfion` crate.
//!
//! Every function returns a [`HopfionStatus`]; on failure the message is
//! kept per thread and read with [`hopfion_last_error`]. Handles are opaque
//! and must be released with their `_free` function.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hopfion::hopf::{hopf_forward, hopf_inverse, HopfPoint, WaveVector};
use hopfion::solutions::{EnergySign, FieldKind, SolutionFamily, SolutionId};
use hopfion::special::macdonald_k;
use hopfion::verify::{run_suites, Suite, SuiteOptions, VerificationReport};
use hopfion::{Error, SpacetimePoint, C64};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfionStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    UnknownName = 4,
    Convergence = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// A parameterised solution.
pub struct HopfionSolution {
    id: SolutionId,
}

/// Result of a verification run.
pub struct HopfionReport {
    report: VerificationReport,
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> HopfionStatus {
    match e {
        Error::Domain(_) | Error::DegenerateFiber(_) => HopfionStatus::Domain,
        Error::UnknownName { .. } => HopfionStatus::UnknownName,
        Error::Convergence { .. } => HopfionStatus::Convergence,
        Error::Contract(_) => HopfionStatus::Internal,
        Error::InvalidParameter(_) | Error::NotCoprime { .. } => HopfionStatus::InvalidArgument,
    }
}

struct Fail(HopfionStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HopfionStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HopfionStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            HopfionStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(HopfionStatus::NullPointer, format!("{what} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(HopfionStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out_slice<'a>(p: *mut f64, len: usize, need: usize, what: &str) -> Result<&'a mut [f64], Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    if len < need {
        return Err(Fail(HopfionStatus::BufferTooSmall, format!("{what} holds {len} values, {need} needed")));
    }
    Ok(std::slice::from_raw_parts_mut(p, need))
}

/// Copies the calling thread's last error message, NUL-terminated and
/// truncated to `len` bytes. Returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hopfion_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Creates a solution. `energy_sign` is `+1` or `-1`. For `knot-pq`, `p`
/// and `q` are the knot indices; for `dirac-base`, `p` is the free spinor
/// index and a nonzero `q` selects the dotted parameter.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hopfion_solution_new(
    family: *const c_char,
    a: f64,
    m: f64,
    p: u32,
    q: u32,
    energy_sign: i32,
    out: *mut *mut HopfionSolution,
) -> HopfionStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let family: SolutionFamily = c_str(family, "family")?.parse()?;
        let energy_sign = match energy_sign {
            1 => EnergySign::Positive,
            -1 => EnergySign::Negative,
            s => return Err(Fail(HopfionStatus::InvalidArgument, format!("energy sign must be +1 or -1, got {s}"))),
        };
        let mut id = SolutionId { a, m, energy_sign, ..SolutionId::new(family) };
        match family {
            SolutionFamily::KnotPq => {
                id.p = p;
                id.q = q;
            }
            SolutionFamily::DiracBase => {
                id.base_index = u8::try_from(p).unwrap_or(u8::MAX);
                id.base_dotted = q != 0;
            }
            _ => {}
        }
        id.validate()?;
        *out = Box::into_raw(Box::new(HopfionSolution { id }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`hopfion_solution_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hopfion_solution_free(h: *mut HopfionSolution) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of complex components: 2 (Weyl), 3 (Maxwell) or 4 (Dirac).
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hopfion_solution_components(h: *const HopfionSolution, out: *mut usize) -> HopfionStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("solution"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = match h.id.kind() {
            FieldKind::Weyl => 2,
            FieldKind::Maxwell => 3,
            FieldKind::Dirac => 4,
        };
        Ok(())
    })
}

/// Writes the field at `(t, x, y, z)` as interleaved real and imaginary parts.
///
/// # Safety
/// `h` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hopfion_solution_evaluate(
    h: *const HopfionSolution,
    t: f64,
    x: f64,
    y: f64,
    z: f64,
    out: *mut f64,
    len: usize,
) -> HopfionStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("solution"))?;
        let c = h.id.evaluate(&SpacetimePoint::new(t, x, y, z))?.components();
        let dst = out_slice(out, len, 2 * c.len(), "out")?;
        for (i, v) in c.iter().enumerate() {
            dst[2 * i] = v.re;
            dst[2 * i + 1] = v.im;
        }
        Ok(())
    })
}

/// Writes the real current four-vector (energy density and Poynting vector
/// for Maxwell fields) into `out[0..4]`.
///
/// # Safety
/// `h` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hopfion_solution_current(
    h: *const HopfionSolution,
    t: f64,
    x: f64,
    y: f64,
    z: f64,
    out: *mut f64,
    len: usize,
) -> HopfionStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("solution"))?;
        let j = h.id.current(&SpacetimePoint::new(t, x, y, z))?.re();
        out_slice(out, len, 4, "out")?.copy_from_slice(&j);
        Ok(())
    })
}

/// `K_n(z)` for complex `z` with `Re z > 0`.
///
/// # Safety
/// `re`, `im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hopfion_macdonald_k(n: i32, z_re: f64, z_im: f64, re: *mut f64, im: *mut f64) -> HopfionStatus {
    guard(|| {
        let (re, im) = (re.as_mut().ok_or_else(|| null("re"))?, im.as_mut().ok_or_else(|| null("im"))?);
        let k = macdonald_k(n, C64::new(z_re, z_im))?;
        *re = k.re;
        *im = k.im;
        Ok(())
    })
}

/// Forward Hopf map `ξ[4] → k[3]`.
///
/// # Safety
/// `xi` must point to 4 doubles and `k` to 3.
#[no_mangle]
pub unsafe extern "C" fn hopfion_hopf_forward(xi: *const f64, k: *mut f64) -> HopfionStatus {
    guard(|| {
        if xi.is_null() {
            return Err(null("xi"));
        }
        let x = std::slice::from_raw_parts(xi, 4);
        let w = hopf_forward(&HopfPoint::new(x[0], x[1], x[2], x[3]));
        out_slice(k, 3, 3, "k")?.copy_from_slice(&w.as_array());
        Ok(())
    })
}

/// Inverse chart `(k[3], φ) → ξ[4]`; fails with `Domain` on the fiber `k + kz = 0`.
///
/// # Safety
/// `k` must point to 3 doubles and `xi` to 4.
#[no_mangle]
pub unsafe extern "C" fn hopfion_hopf_inverse(k: *const f64, phi: f64, xi: *mut f64) -> HopfionStatus {
    guard(|| {
        if k.is_null() {
            return Err(null("k"));
        }
        let v = std::slice::from_raw_parts(k, 3);
        let p = hopf_inverse(&WaveVector::new(v[0], v[1], v[2]), phi)?;
        out_slice(xi, 4, 4, "xi")?.copy_from_slice(&p.xi);
        Ok(())
    })
}

/// Runs verification suites (comma-separated names or `all`).
///
/// # Safety
/// `suites` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hopfion_verify(
    suites: *const c_char,
    seed: u64,
    points: usize,
    tol: f64,
    out: *mut *mut HopfionReport,
) -> HopfionStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let list = Suite::parse_list(c_str(suites, "suites")?)?;
        if points == 0 || !(tol > 0.0) {
            return Err(Fail(HopfionStatus::InvalidArgument, "points and tol must be positive".into()));
        }
        let opts = SuiteOptions { seed, points, tol, ..SuiteOptions::default() };
        let report = run_suites(&list, &opts)?;
        let json = report.to_json();
        *out = Box::into_raw(Box::new(HopfionReport { report, json }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`hopfion_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hopfion_report_free(h: *mut HopfionReport) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Counts records and failed records.
///
/// # Safety
/// `h` must be a live handle; `total` and `failed` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hopfion_report_counts(
    h: *const HopfionReport,
    total: *mut usize,
    failed: *mut usize,
) -> HopfionStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("report"))?;
        *total.as_mut().ok_or_else(|| null("total"))? = h.report.records.len();
        *failed.as_mut().ok_or_else(|| null("failed"))? = h.report.failures().count();
        Ok(())
    })
}

/// Copies the JSON report, NUL-terminated. `needed` receives the buffer
/// size required including the terminator; pass a null `buf` to query it.
///
/// # Safety
/// `h` must be a live handle; `buf` null or `len` writable bytes; `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn hopfion_report_json(
    h: *const HopfionReport,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> HopfionStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("report"))?;
        let need = h.json.len() + 1;
        *needed.as_mut().ok_or_else(|| null("needed"))? = need;
        if buf.is_null() {
            return Ok(());
        }
        if len < need {
            return Err(Fail(HopfionStatus::BufferTooSmall, format!("buffer holds {len} bytes, {need} needed")));
        }
        ptr::copy_nonoverlapping(h.json.as_ptr(), buf.cast::<u8>(), h.json.len());
        *buf.add(h.json.len()) = 0;
        Ok(())
    })
}
