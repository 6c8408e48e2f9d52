//! C ABI over the gain graph library.
//!
//! Graphs are opaque handles created from the JSON graph format and freed
//! explicitly. Every fallible call returns a [`QgStatus`] and writes its
//! result through out-pointers; a thread-local message with details of the
//! last failure is available via [`qg_last_error_message`]. Strings returned
//! by this library must be released with [`qg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qgain::engine::{lower_bound, structural_rank, LowerBoundCase, RankResult};
use qgain::gaingraph::{from_json_str, to_pretty_json, GainGraph};
use qgain::qmatrix::QMatrixF64;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = CString::new(message.into()).unwrap_or_else(|_| {
        CString::new("error message contained an interior NUL").unwrap()
    });
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgStatus {
    /// Success.
    QgOk = 0,
    /// A required pointer argument was NULL.
    QgNullArgument = 1,
    /// Input text was not valid UTF-8.
    QgInvalidUtf8 = 2,
    /// The graph JSON failed to parse or validate.
    QgParseError = 3,
    /// The operation does not apply to this graph.
    QgUnsupported = 4,
}

/// Which lower-bound case applies to a graph.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgBoundCase {
    QgBoundHasPendant = 0,
    QgBoundLeafFreeCycleDisjoint = 1,
    QgBoundLeafFreeSharedCycles = 2,
}

/// Counting statistics of a graph.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct QgStats {
    pub vertices: u64,
    pub edges: u64,
    pub components: u64,
    pub cyclomatic: u64,
    pub pendants: u64,
}

/// Opaque gain graph handle.
pub struct QgGraph {
    inner: GainGraph,
}

/// Parse a graph from the JSON format. On success writes a fresh handle to
/// `out`; release it with [`qg_graph_free`].
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer; both must stay valid for the duration of the
/// call.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_parse_json(
    json: *const c_char,
    out: *mut *mut QgGraph,
) -> QgStatus {
    if json.is_null() || out.is_null() {
        set_last_error("qg_graph_parse_json: NULL argument");
        return QgStatus::QgNullArgument;
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        set_last_error("qg_graph_parse_json: input is not UTF-8");
        return QgStatus::QgInvalidUtf8;
    };
    match from_json_str(text) {
        Ok(graph) => {
            *out = Box::into_raw(Box::new(QgGraph { inner: graph }));
            QgStatus::QgOk
        }
        Err(e) => {
            set_last_error(e.to_string());
            *out = ptr::null_mut();
            QgStatus::QgParseError
        }
    }
}

/// Release a graph handle. NULL is accepted and ignored.
///
/// # Safety
/// `graph` must be NULL or a pointer returned by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_free(graph: *mut QgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Counting statistics.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_stats(
    graph: *const QgGraph,
    out: *mut QgStats,
) -> QgStatus {
    if graph.is_null() || out.is_null() {
        set_last_error("qg_graph_stats: NULL argument");
        return QgStatus::QgNullArgument;
    }
    let stats = (*graph).inner.stats();
    *out = QgStats {
        vertices: stats.n as u64,
        edges: stats.m as u64,
        components: stats.omega as u64,
        cyclomatic: stats.c as u64,
        pendants: stats.p as u64,
    };
    QgStatus::QgOk
}

/// Exact row left rank of the adjacency matrix.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_rank(graph: *const QgGraph, out: *mut u64) -> QgStatus {
    if graph.is_null() || out.is_null() {
        set_last_error("qg_graph_rank: NULL argument");
        return QgStatus::QgNullArgument;
    }
    *out = (*graph).inner.rank() as u64;
    QgStatus::QgOk
}

/// Rank through the complex representation: half the complex rank of the
/// representation matrix. Always equals [`qg_graph_rank`]; exposed so
/// callers can cross-check.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_adjoint_rank(
    graph: *const QgGraph,
    out: *mut u64,
) -> QgStatus {
    if graph.is_null() || out.is_null() {
        set_last_error("qg_graph_adjoint_rank: NULL argument");
        return QgStatus::QgNullArgument;
    }
    let rank2 = (*graph).inner.adjacency_matrix().complex_adjoint().rank();
    *out = (rank2 / 2) as u64;
    QgStatus::QgOk
}

/// Float-mode rank with tolerance pivoting.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_rank_float(
    graph: *const QgGraph,
    pivot_tol: f64,
    out: *mut u64,
) -> QgStatus {
    if graph.is_null() || out.is_null() {
        set_last_error("qg_graph_rank_float: NULL argument");
        return QgStatus::QgNullArgument;
    }
    if !(pivot_tol > 0.0) {
        set_last_error("qg_graph_rank_float: tolerance must be positive");
        return QgStatus::QgUnsupported;
    }
    let m = QMatrixF64::from(&(*graph).inner.adjacency_matrix());
    *out = m.row_left_rank(pivot_tol) as u64;
    QgStatus::QgOk
}

/// Structural rank: `lo == hi` when exact, otherwise a sound interval
/// containing the true rank.
///
/// # Safety
/// `graph` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_structural_rank(
    graph: *const QgGraph,
    lo: *mut u64,
    hi: *mut u64,
) -> QgStatus {
    if graph.is_null() || lo.is_null() || hi.is_null() {
        set_last_error("qg_graph_structural_rank: NULL argument");
        return QgStatus::QgNullArgument;
    }
    let result: RankResult = structural_rank(&(*graph).inner);
    *lo = result.lo() as u64;
    *hi = result.hi() as u64;
    QgStatus::QgOk
}

/// Lower-bound classification. Fails with `QgUnsupported` when some
/// component is a single vertex.
///
/// # Safety
/// `graph` must be a live handle; `case_out` and `bound_out` writable.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_lower_bound(
    graph: *const QgGraph,
    case_out: *mut QgBoundCase,
    bound_out: *mut i64,
) -> QgStatus {
    if graph.is_null() || case_out.is_null() || bound_out.is_null() {
        set_last_error("qg_graph_lower_bound: NULL argument");
        return QgStatus::QgNullArgument;
    }
    match lower_bound(&(*graph).inner) {
        Ok(bound) => {
            *case_out = match bound.case {
                LowerBoundCase::HasPendant => QgBoundCase::QgBoundHasPendant,
                LowerBoundCase::LeafFreeCycleDisjoint => {
                    QgBoundCase::QgBoundLeafFreeCycleDisjoint
                }
                LowerBoundCase::LeafFreeSharedCycles => {
                    QgBoundCase::QgBoundLeafFreeSharedCycles
                }
            };
            *bound_out = bound.bound;
            QgStatus::QgOk
        }
        Err(e) => {
            set_last_error(e.to_string());
            QgStatus::QgUnsupported
        }
    }
}

/// Serialize a graph back to the JSON format. Returns a fresh string to be
/// released with [`qg_string_free`], or NULL on error.
///
/// # Safety
/// `graph` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_to_json(graph: *const QgGraph) -> *mut c_char {
    if graph.is_null() {
        set_last_error("qg_graph_to_json: NULL argument");
        return ptr::null_mut();
    }
    let json = to_pretty_json(&(*graph).inner);
    match CString::new(json) {
        Ok(text) => text.into_raw(),
        Err(_) => {
            set_last_error("qg_graph_to_json: serialization contained NUL");
            ptr::null_mut()
        }
    }
}

/// Message describing the most recent failure on this thread, or NULL when
/// none. Release with [`qg_string_free`].
#[no_mangle]
pub extern "C" fn qg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(text) => text.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library. NULL is accepted and ignored.
///
/// # Safety
/// `s` must be NULL or a string pointer returned by this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
