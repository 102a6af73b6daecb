//! C ABI over `gpnn-core`.
//!
//! Graphs live behind the opaque `GpnnGraph` handle. Every fallible call
//! returns a `GpnnStatus`; on failure `gpnn_last_error` describes the most
//! recent error on the calling thread. Enum-valued arguments are passed as
//! `uint32_t` and validated.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gpnn_core::coloring::InteractionVariant;
use gpnn_core::gpnn::{gpnn_compare as core_gpnn_compare, GpnnConfig};
use gpnn_core::io::parse_edge_list;
use gpnn_core::iso::{are_isomorphic, interaction_isomorphic, partition_isomorphic};
use gpnn_core::partition::{partition, SchemeId};
use gpnn_core::wl::{fwl2_compare, wl1_compare_plain, Verdict};
use gpnn_core::Graph;

/// Opaque graph handle.
pub struct GpnnGraph(Graph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpnnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpnnScheme {
    Trivial = 0,
    Degree = 1,
    Core = 2,
    CoreDegree = 3,
    CoreOnion = 4,
    Triangle = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpnnVariant {
    Star = 0,
    Diamond = 1,
    Dagger = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpnnTest {
    Wl1 = 0,
    Fwl2 = 1,
    Gpnn = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("interior nul removed"));
}

type Failure = (GpnnStatus, String);

fn fail(status: GpnnStatus, message: impl Into<String>) -> Failure {
    (status, message.into())
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GpnnStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            GpnnStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GpnnStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(p: *const GpnnGraph, what: &str) -> Result<&'a Graph, Failure> {
    p.as_ref()
        .map(|g| &g.0)
        .ok_or_else(|| fail(GpnnStatus::NullPointer, format!("{what} is null")))
}

fn scheme(raw: u32) -> Result<SchemeId, Failure> {
    SchemeId::ALL
        .get(raw as usize)
        .copied()
        .ok_or_else(|| fail(GpnnStatus::InvalidArgument, format!("unknown scheme {raw}")))
}

fn variant(raw: u32) -> Result<InteractionVariant, Failure> {
    InteractionVariant::ALL
        .get(raw as usize)
        .copied()
        .ok_or_else(|| fail(GpnnStatus::InvalidArgument, format!("unknown variant {raw}")))
}

fn core_err(status: GpnnStatus) -> impl Fn(gpnn_core::Error) -> Failure {
    move |e| fail(status, e.to_string())
}

fn store_graph(g: Graph, out: *mut *mut GpnnGraph) {
    unsafe { *out = Box::into_raw(Box::new(GpnnGraph(g))) };
}

/// Builds a graph from `m` edges stored as `2 * m` consecutive endpoints.
/// `edges` may be null when `m` is 0. Free the result with
/// `gpnn_graph_free`.
#[no_mangle]
pub unsafe extern "C" fn gpnn_graph_new(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut GpnnGraph,
) -> GpnnStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(GpnnStatus::NullPointer, "out is null"));
        }
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(fail(GpnnStatus::NullPointer, "edges is null"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::from_edge_list(n, &pairs).map_err(core_err(GpnnStatus::InvalidArgument))?;
        store_graph(g, out);
        Ok(())
    })
}

/// Parses a nul-terminated edge-list text (`n m` header, then `u v` lines).
#[no_mangle]
pub unsafe extern "C" fn gpnn_graph_parse(text: *const c_char, out: *mut *mut GpnnGraph) -> GpnnStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(fail(GpnnStatus::NullPointer, "text or out is null"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(GpnnStatus::ParseError, "text is not UTF-8"))?;
        let g = parse_edge_list(s).map_err(core_err(GpnnStatus::ParseError))?;
        store_graph(g, out);
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gpnn_graph_free(graph: *mut GpnnGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn gpnn_graph_vertex_count(graph: *const GpnnGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn gpnn_graph_edge_count(graph: *const GpnnGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Writes each vertex's partition index as `(major[v], minor[v])`. Both
/// buffers need room for `len >= vertex count` entries.
#[no_mangle]
pub unsafe extern "C" fn gpnn_partition(
    graph: *const GpnnGraph,
    scheme_id: u32,
    major: *mut u32,
    minor: *mut u32,
    len: usize,
) -> GpnnStatus {
    guard(|| {
        let g = graph_ref(graph, "graph")?;
        let s = scheme(scheme_id)?;
        if major.is_null() || minor.is_null() {
            return Err(fail(GpnnStatus::NullPointer, "output buffer is null"));
        }
        let n = g.vertex_count();
        if len < n {
            return Err(fail(
                GpnnStatus::BufferTooSmall,
                format!("need {n} entries, got {len}"),
            ));
        }
        let labels = partition(g, s).labels;
        let (maj, min) = (
            std::slice::from_raw_parts_mut(major, n),
            std::slice::from_raw_parts_mut(minor, n),
        );
        for (v, l) in labels.into_iter().enumerate() {
            maj[v] = l.0;
            min[v] = l.1;
        }
        Ok(())
    })
}

/// Distinguishability test. `scheme_id`, `variant_id` and `hops` are used
/// only by `GPNN_TEST_GPNN`. Sets `*distinguished` to 1 or 0 and
/// `*iteration` to the deciding iteration.
#[no_mangle]
pub unsafe extern "C" fn gpnn_compare(
    g: *const GpnnGraph,
    h: *const GpnnGraph,
    test: u32,
    scheme_id: u32,
    variant_id: u32,
    hops: usize,
    distinguished: *mut i32,
    iteration: *mut usize,
) -> GpnnStatus {
    guard(|| {
        let (g, h) = (graph_ref(g, "g")?, graph_ref(h, "h")?);
        if distinguished.is_null() || iteration.is_null() {
            return Err(fail(GpnnStatus::NullPointer, "output pointer is null"));
        }
        let verdict: Verdict = match test {
            0 => wl1_compare_plain(g, h),
            1 => fwl2_compare(g, h, None).map_err(core_err(GpnnStatus::InvalidArgument))?,
            2 => {
                let config = GpnnConfig::new(scheme(scheme_id)?, variant(variant_id)?).with_hops(hops);
                core_gpnn_compare(g, h, config).map_err(core_err(GpnnStatus::InvalidArgument))?
            }
            other => return Err(fail(GpnnStatus::InvalidArgument, format!("unknown test {other}"))),
        };
        *distinguished = verdict.is_distinguished() as i32;
        *iteration = verdict.iteration;
        Ok(())
    })
}

/// Graph, partition and interaction isomorphism under `scheme_id`; each
/// output is set to 1 or 0.
#[no_mangle]
pub unsafe extern "C" fn gpnn_isomorphism(
    g: *const GpnnGraph,
    h: *const GpnnGraph,
    scheme_id: u32,
    gi: *mut i32,
    pi: *mut i32,
    ii: *mut i32,
) -> GpnnStatus {
    guard(|| {
        let (g, h) = (graph_ref(g, "g")?, graph_ref(h, "h")?);
        let s = scheme(scheme_id)?;
        if gi.is_null() || pi.is_null() || ii.is_null() {
            return Err(fail(GpnnStatus::NullPointer, "output pointer is null"));
        }
        *gi = are_isomorphic(g, h).0 as i32;
        *pi = partition_isomorphic(g, h, s) as i32;
        *ii = interaction_isomorphic(g, h, s) as i32;
        Ok(())
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn gpnn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn gpnn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
