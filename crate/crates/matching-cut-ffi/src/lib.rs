//! C ABI over the matching-cut library: opaque handles, status codes, and a
//! cbindgen-generated header (include/matching_cut.h).
//!
//! Conventions: every function returns an [`McStatus`]; results travel
//! through out-parameters. Handles are created and destroyed by this library
//! only (`mc_graph_free`, `mc_verdict_free`). On any non-OK status a
//! human-readable message is stored per thread and can be read with
//! [`mc_last_error`].

use matching_cut::{
    dispatch_with_config, parse_graph, verify_matching_cut, write_graph, Cut, EngineError,
    ExactConfig, Graph, SolverError, Verdict,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status code returned by every FFI entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument value was out of range (for example a side index).
    InvalidArgument = 2,
    /// Input text was not valid UTF-8.
    InvalidUtf8 = 3,
    /// Input text did not parse; see mc_last_error for line and column.
    ParseError = 4,
    /// The edge list did not describe a simple graph.
    InvalidGraph = 5,
    /// The claimed cut was not a partition of the vertex set.
    InvalidCut = 6,
    /// The solver rejected the instance or failed internally.
    SolverError = 7,
    /// A configured resource cap (oracle size or node budget) was exceeded.
    CapExceeded = 8,
    /// The provided buffer was too small; the required size was written.
    BufferTooSmall = 9,
    /// An internal invariant failed.
    InternalError = 10,
}

/// Opaque graph handle.
pub struct McGraph(Graph);

/// Opaque verdict handle; owns the witness cut when the answer is yes.
pub struct McVerdict {
    verdict: Verdict,
    method: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn fail(status: McStatus, err: impl std::fmt::Display) -> McStatus {
    set_last_error(err.to_string());
    status
}

fn guarded(f: impl FnOnce() -> McStatus) -> McStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(McStatus::InternalError, "caught a panic at the FFI boundary"),
    }
}

fn solver_status(err: &SolverError) -> McStatus {
    match err {
        SolverError::ResourceCapExceeded(_)
        | SolverError::Engine(EngineError::OracleCapExceeded { .. }) => McStatus::CapExceeded,
        _ => McStatus::SolverError,
    }
}

/// Returns the message of the most recent failure on this thread, or null if
/// none occurred yet. The pointer stays valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |msg| msg.as_ptr())
    })
}

/// Builds a graph on `vertex_count` vertices from `edge_count` endpoint
/// pairs laid out as `[u0, v0, u1, v1, ...]`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable `size_t` values (it may
/// be null when `edge_count` is 0); `out` must be a valid writable pointer.
/// On MC_STATUS_OK the handle written to `out` must be released with
/// `mc_graph_free`.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_new(
    vertex_count: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut McGraph,
) -> McStatus {
    guarded(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        let flat = if edge_count == 0 {
            &[]
        } else {
            unsafe { std::slice::from_raw_parts(edges, 2 * edge_count) }
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        match Graph::new(vertex_count, &pairs) {
            Ok(g) => {
                unsafe { *out = Box::into_raw(Box::new(McGraph(g))) };
                McStatus::Ok
            }
            Err(e) => fail(McStatus::InvalidGraph, e),
        }
    })
}

/// Parses the edge-list text format (`p mc <n> <m>` header, `e <u> <v>`
/// lines).
///
/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be writable. On
/// MC_STATUS_OK the handle must be released with `mc_graph_free`.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_parse(text: *const c_char, out: *mut *mut McGraph) -> McStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        let Ok(text) = unsafe { CStr::from_ptr(text) }.to_str() else {
            return fail(McStatus::InvalidUtf8, "graph text is not valid UTF-8");
        };
        match parse_graph(text) {
            Ok(g) => {
                unsafe { *out = Box::into_raw(Box::new(McGraph(g))) };
                McStatus::Ok
            }
            Err(e) => fail(McStatus::ParseError, e),
        }
    })
}

/// # Safety
/// `g` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_vertex_count(g: *const McGraph, out: *mut usize) -> McStatus {
    guarded(|| {
        if g.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        unsafe { *out = (*g).0.vertex_count() };
        McStatus::Ok
    })
}

/// # Safety
/// `g` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_edge_count(g: *const McGraph, out: *mut usize) -> McStatus {
    guarded(|| {
        if g.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        unsafe { *out = (*g).0.edge_count() };
        McStatus::Ok
    })
}

/// Serializes the graph into `buf` (nul-terminated). `*written` receives the
/// required size in bytes including the nul; when `cap` is too small the
/// status is MC_STATUS_BUFFER_TOO_SMALL and the buffer is untouched.
///
/// # Safety
/// `g` must be a live handle; `buf` must point to `cap` writable bytes (it
/// may be null when `cap` is 0); `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_write(
    g: *const McGraph,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> McStatus {
    guarded(|| {
        if g.is_null() || written.is_null() || (buf.is_null() && cap > 0) {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        let text = write_graph(unsafe { &(*g).0 });
        let needed = text.len() + 1;
        unsafe { *written = needed };
        if cap < needed {
            return fail(McStatus::BufferTooSmall, format!("need {} bytes", needed));
        }
        unsafe {
            ptr::copy_nonoverlapping(text.as_ptr(), buf.cast(), text.len());
            *buf.add(text.len()) = 0;
        }
        McStatus::Ok
    })
}

/// Releases a graph handle. Passing null is a no-op.
///
/// # Safety
/// `g` must be null or a handle obtained from this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_free(g: *mut McGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

fn decide_impl(g: &Graph, config: ExactConfig, out: *mut *mut McVerdict) -> McStatus {
    match dispatch_with_config(g, config) {
        Ok(verdict) => {
            let method = CString::new(verdict.method().as_str()).expect("method names are ASCII");
            unsafe { *out = Box::into_raw(Box::new(McVerdict { verdict, method })) };
            McStatus::Ok
        }
        Err(e) => fail(solver_status(&e), e),
    }
}

/// Decides whether the graph has a matching cut, with default resource
/// limits.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable. On MC_STATUS_OK the
/// verdict must be released with `mc_verdict_free`.
#[no_mangle]
pub unsafe extern "C" fn mc_decide(g: *const McGraph, out: *mut *mut McVerdict) -> McStatus {
    guarded(|| {
        if g.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        decide_impl(unsafe { &(*g).0 }, ExactConfig::default(), out)
    })
}

/// Like `mc_decide` with explicit limits for the exact fallback: graphs with
/// at most `oracle_cap` vertices go to the brute-force oracle, larger ones
/// to a branching search allowed `node_budget` nodes.
///
/// # Safety
/// Same contract as `mc_decide`.
#[no_mangle]
pub unsafe extern "C" fn mc_decide_with_caps(
    g: *const McGraph,
    oracle_cap: usize,
    node_budget: u64,
    out: *mut *mut McVerdict,
) -> McStatus {
    guarded(|| {
        if g.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        let config = ExactConfig { oracle_cap, node_budget };
        decide_impl(unsafe { &(*g).0 }, config, out)
    })
}

/// # Safety
/// `v` must be a live verdict handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_verdict_has_cut(v: *const McVerdict, out: *mut bool) -> McStatus {
    guarded(|| {
        if v.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        unsafe { *out = (*v).verdict.has_matching_cut() };
        McStatus::Ok
    })
}

/// Writes a pointer to the nul-terminated name of the procedure that settled
/// the verdict. The pointer stays valid until the verdict is freed.
///
/// # Safety
/// `v` must be a live verdict handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_verdict_method(
    v: *const McVerdict,
    out: *mut *const c_char,
) -> McStatus {
    guarded(|| {
        if v.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        unsafe { *out = (*v).method.as_ptr() };
        McStatus::Ok
    })
}

fn witness_side(verdict: &Verdict, side: u32) -> Result<&[usize], McStatus> {
    match (verdict.witness(), side) {
        (None, 0 | 1) => Ok(&[]),
        (Some(cut), 0) => Ok(cut.side_x()),
        (Some(cut), 1) => Ok(cut.side_y()),
        _ => Err(McStatus::InvalidArgument),
    }
}

/// Number of vertices on one side of the witness cut (side 0 = X, 1 = Y);
/// 0 when the verdict is no.
///
/// # Safety
/// `v` must be a live verdict handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_verdict_side_count(
    v: *const McVerdict,
    side: u32,
    out: *mut usize,
) -> McStatus {
    guarded(|| {
        if v.is_null() || out.is_null() {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        match witness_side(unsafe { &(*v).verdict }, side) {
            Ok(vertices) => {
                unsafe { *out = vertices.len() };
                McStatus::Ok
            }
            Err(status) => fail(status, "side must be 0 or 1"),
        }
    })
}

/// Copies one side of the witness cut into `buf` in ascending order.
/// `*written` receives the side length; when `cap` is too small nothing is
/// copied and the status is MC_STATUS_BUFFER_TOO_SMALL.
///
/// # Safety
/// `v` must be a live verdict handle; `buf` must point to `cap` writable
/// `size_t` values (it may be null when `cap` is 0); `written` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mc_verdict_copy_side(
    v: *const McVerdict,
    side: u32,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> McStatus {
    guarded(|| {
        if v.is_null() || written.is_null() || (buf.is_null() && cap > 0) {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        let vertices = match witness_side(unsafe { &(*v).verdict }, side) {
            Ok(vertices) => vertices,
            Err(status) => return fail(status, "side must be 0 or 1"),
        };
        unsafe { *written = vertices.len() };
        if cap < vertices.len() {
            return fail(McStatus::BufferTooSmall, format!("need {} slots", vertices.len()));
        }
        unsafe { ptr::copy_nonoverlapping(vertices.as_ptr(), buf, vertices.len()) };
        McStatus::Ok
    })
}

/// Releases a verdict handle. Passing null is a no-op.
///
/// # Safety
/// `v` must be null or a handle obtained from this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn mc_verdict_free(v: *mut McVerdict) {
    if !v.is_null() {
        drop(unsafe { Box::from_raw(v) });
    }
}

/// Checks a claimed cut: `out` receives true exactly when (X, Y) is a
/// matching cut of the graph. X and Y must partition the vertex set, else
/// MC_STATUS_INVALID_CUT.
///
/// # Safety
/// `g` must be a live handle; `x`/`y` must point to `x_len`/`y_len` readable
/// `size_t` values (null allowed for empty sides); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_verify_cut(
    g: *const McGraph,
    x: *const usize,
    x_len: usize,
    y: *const usize,
    y_len: usize,
    out: *mut bool,
) -> McStatus {
    guarded(|| {
        if g.is_null() || out.is_null() || (x.is_null() && x_len > 0) || (y.is_null() && y_len > 0)
        {
            return fail(McStatus::NullArgument, "null pointer argument");
        }
        let side = |ptr: *const usize, len: usize| {
            if len == 0 {
                Vec::new()
            } else {
                unsafe { std::slice::from_raw_parts(ptr, len) }.to_vec()
            }
        };
        let cut = Cut::new(side(x, x_len), side(y, y_len));
        match verify_matching_cut(unsafe { &(*g).0 }, &cut) {
            Ok(valid) => {
                unsafe { *out = valid };
                McStatus::Ok
            }
            Err(e) => fail(McStatus::InvalidCut, e),
        }
    })
}
