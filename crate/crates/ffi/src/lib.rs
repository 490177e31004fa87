//! C ABI over the `statesum` library.
//!
//! Objects cross the boundary as opaque handles created by `ss_*` constructors
//! and released by the matching `*_free`. Every fallible call returns an
//! [`SsStatus`]; on failure [`ss_last_error`] describes the problem. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`ss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use statesum::algebra::{group_from_spec, FiniteGroup};
use statesum::catdata::SphericalData;
use statesum::cocycle::{check_cocycle, FourCochain};
use statesum::complex::{boundary_5simplex, ComplexError, orient, orient_pinned, parse_triangulation, OrientedTriangulation};
use statesum::engine::{
    invariant, invariant_group_fast, oracle_invariant, EngineError, EngineOptions, DEFAULT_ORACLE_BUDGET,
};
use statesum::homcount::{count_homs, presentation, HomError, DEFAULT_HOM_BUDGET};
use statesum::pachner::{apply_move_oriented, random_walk};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Budget = 5,
    Panic = 6,
}

/// Evaluation engine for [`ss_invariant`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsEngine {
    Fast = 0,
    Generic = 1,
    Oracle = 2,
}

/// A closed, oriented triangulated 4-manifold.
pub struct SsTriangulation(OrientedTriangulation);

/// A finite group given by its multiplication table.
pub struct SsGroup(FiniteGroup);

/// A 4-cochain with Z/N exponents on a group.
pub struct SsCocycle(FourCochain);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(SsStatus, String);

impl Fail {
    fn domain(e: impl std::fmt::Display) -> Self {
        Fail(SsStatus::Domain, e.to_string())
    }

    fn parse(e: impl std::fmt::Display) -> Self {
        Fail(SsStatus::Parse, e.to_string())
    }
}

impl From<EngineError> for Fail {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Budget { .. } => Fail(SsStatus::Budget, e.to_string()),
            e => Fail::domain(e),
        }
    }
}

impl From<HomError> for Fail {
    fn from(e: HomError) -> Self {
        match e {
            HomError::Budget(_) => Fail(SsStatus::Budget, e.to_string()),
            e => Fail::domain(e),
        }
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            SsStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(SsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(SsStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SsStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SsStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).map_err(Fail::domain)?.into_raw();
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SsStatus::NullPointer, "output pointer is null".into()));
    }
    *out = value;
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the triangulation text format. The orientation follows the file's
/// `orient` pin, or facet 0 positive when there is none.
///
/// # Safety
/// `text_in` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_triangulation_parse(text_in: *const c_char, out: *mut *mut SsTriangulation) -> SsStatus {
    guard(|| {
        let file = parse_triangulation(text(text_in, "text")?).map_err(|e| match e {
            ComplexError::Parse { .. } | ComplexError::AtLine { .. } => Fail::parse(e),
            e => Fail::domain(e),
        })?;
        let o = match file.pin {
            Some((r, s)) => orient_pinned(&file.complex, r, s),
            None => orient(&file.complex, 0),
        }
        .map_err(Fail::domain)?;
        put(out, SsTriangulation(o))
    })
}

/// The boundary of the 5-simplex, a 6-vertex 4-sphere.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_triangulation_sphere(out: *mut *mut SsTriangulation) -> SsStatus {
    guard(|| put(out, SsTriangulation(boundary_5simplex())))
}

/// # Safety
/// `t` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ss_triangulation_free(t: *mut SsTriangulation) {
    release(t)
}

/// Vertex and facet counts.
///
/// # Safety
/// `t` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_triangulation_counts(
    t: *const SsTriangulation,
    vertices: *mut usize,
    facets: *mut usize,
) -> SsStatus {
    guard(|| {
        let t = &borrow(t, "triangulation")?.0;
        put_value(vertices, t.base().vertex_count())?;
        put_value(facets, t.base().facets().len())
    })
}

/// The triangulation in the text format, with an orientation pin on facet 0.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_triangulation_to_text(t: *const SsTriangulation, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let t = &borrow(t, "triangulation")?.0;
        put_string(out, t.base().to_text(Some((0, t.epsilon()[0]))))
    })
}

/// Applies up to `steps` seeded random Pachner moves, never exceeding
/// `max_vertices`. The result is a new handle carrying the induced orientation.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_triangulation_random_walk(
    t: *const SsTriangulation,
    steps: usize,
    seed: u64,
    max_vertices: usize,
    out: *mut *mut SsTriangulation,
) -> SsStatus {
    guard(|| {
        let start = &borrow(t, "triangulation")?.0;
        let report = random_walk(start.base(), steps, seed, max_vertices).map_err(Fail::domain)?;
        let mut cur = start.clone();
        for site in &report.applied {
            cur = apply_move_oriented(&cur, site).map_err(Fail::domain)?;
        }
        put(out, SsTriangulation(cur))
    })
}

/// Builds a group from a spec such as `cyclic:3`, `sym:3` or
/// `prod:cyclic:2,cyclic:2`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_group_from_spec(spec: *const c_char, out: *mut *mut SsGroup) -> SsStatus {
    guard(|| {
        let g = group_from_spec(text(spec, "spec")?).map_err(Fail::parse)?;
        put(out, SsGroup(g))
    })
}

/// Parses a group table (`group <n>` followed by n rows).
///
/// # Safety
/// `table` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_group_parse_table(table: *const c_char, out: *mut *mut SsGroup) -> SsStatus {
    guard(|| {
        let g = FiniteGroup::parse_table(text(table, "table")?).map_err(Fail::parse)?;
        put(out, SsGroup(g))
    })
}

/// # Safety
/// `g` must be a live handle; `order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_group_order(g: *const SsGroup, order: *mut usize) -> SsStatus {
    guard(|| put_value(order, borrow(g, "group")?.0.order()))
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ss_group_free(g: *mut SsGroup) {
    release(g)
}

/// The zero cochain with exponents in Z/`modulus`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cocycle_trivial(g: *const SsGroup, modulus: u32, out: *mut *mut SsCocycle) -> SsStatus {
    guard(|| {
        let g = &borrow(g, "group")?.0;
        let pi = FourCochain::trivial(g.order(), modulus).map_err(Fail::domain)?;
        put(out, SsCocycle(pi))
    })
}

/// Parses the cocycle text format for the given group. The cochain is not
/// checked here; see [`ss_cocycle_check`].
///
/// # Safety
/// `g` must be a live handle; `text_in` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cocycle_parse(
    text_in: *const c_char,
    g: *const SsGroup,
    out: *mut *mut SsCocycle,
) -> SsStatus {
    guard(|| {
        let g = &borrow(g, "group")?.0;
        let pi = FourCochain::parse(text(text_in, "text")?, g.order()).map_err(Fail::parse)?;
        put(out, SsCocycle(pi))
    })
}

/// Writes whether the cochain satisfies the cocycle condition. When it does
/// not, the first violating quintuple is available from [`ss_last_error`].
///
/// # Safety
/// Handles must be live; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cocycle_check(g: *const SsGroup, pi: *const SsCocycle, holds: *mut bool) -> SsStatus {
    guard(|| {
        let check = check_cocycle(&borrow(g, "group")?.0, &borrow(pi, "cocycle")?.0).map_err(Fail::domain)?;
        if let Some(v) = check.first_violation {
            set_error(&format!("violation {} {} {} {} {}", v[0], v[1], v[2], v[3], v[4]));
        }
        put_value(holds, check.holds)
    })
}

/// # Safety
/// `pi` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ss_cocycle_free(pi: *mut SsCocycle) {
    release(pi)
}

/// Evaluates the invariant of `t` for the group with cocycle `pi` and writes
/// it as a cyclotomic literal. `workers` of 0 means 1. `budget` bounds the
/// oracle's colouring count; 0 selects the default.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_invariant(
    t: *const SsTriangulation,
    g: *const SsGroup,
    pi: *const SsCocycle,
    engine: SsEngine,
    workers: usize,
    budget: u64,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let (t, g, pi) = (&borrow(t, "triangulation")?.0, &borrow(g, "group")?.0, &borrow(pi, "cocycle")?.0);
        let opts = EngineOptions { workers: workers.max(1) };
        let value = match engine {
            SsEngine::Fast => invariant_group_fast(t, g, pi, &opts)?,
            SsEngine::Generic => {
                if let Some(v) = check_cocycle(g, pi).map_err(Fail::domain)?.first_violation {
                    return Err(EngineError::NotCocycle(v).into());
                }
                invariant(t, &SphericalData::from_group_cocycle(g, pi).map_err(Fail::domain)?, &opts)?
            }
            SsEngine::Oracle => {
                let budget = if budget == 0 { DEFAULT_ORACLE_BUDGET } else { budget as u128 };
                oracle_invariant(t, g, pi, budget)?.value
            }
        };
        put_string(out, value.to_string())
    })
}

/// Counts homomorphisms from the fundamental group of `t` to `g`. `budget`
/// bounds the search nodes; 0 selects the default.
///
/// # Safety
/// Handles must be live; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_count_homs(
    t: *const SsTriangulation,
    g: *const SsGroup,
    budget: u64,
    count: *mut u64,
) -> SsStatus {
    guard(|| {
        let (t, g) = (&borrow(t, "triangulation")?.0, &borrow(g, "group")?.0);
        let p = presentation(t.base())?;
        let budget = if budget == 0 { DEFAULT_HOM_BUDGET } else { budget };
        put_value(count, count_homs(&p, g, budget)?)
    })
}
