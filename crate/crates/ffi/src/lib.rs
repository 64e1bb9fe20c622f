//! C interface to the weightnet library.
//!
//! Networks are opaque handles released with `wn_network_free`. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! released with `wn_string_free`. Every fallible call returns a `WnStatus`;
//! the message of the last failure on the calling thread is available from
//! `wn_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weightnet::analysis::{binomial_pch, CandidateOrder, NetworkChoice};
use weightnet::aspif::{parse, write};
use weightnet::network::{decompose_sparse, oe_sorter, render_diagram, Annotations, Network};
use weightnet::propagate::{propagate_decomposition, WeightMatrix};
use weightnet::rewrite::{rewrite_objective, RewriteConfig, Sparseness};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WnStatus {
    WnOk = 0,
    WnNullPointer = 1,
    WnInvalidUtf8 = 2,
    WnParseError = 3,
    WnInvalidArgument = 4,
    WnRewriteError = 5,
    WnInternalError = 6,
}

/// Opaque comparator network.
pub struct WnNetwork {
    inner: Network,
}

/// Rewrite settings. `depth_limit < 0` keeps the full sorter and
/// `sparseness == 0` means one block over the whole network.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WnRewriteConfig {
    pub depth_limit: i64,
    pub sparseness: u64,
    pub propagate: bool,
    pub sort_inputs: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WnNetworkChoice {
    WnNetworkNone = 0,
    WnNetworkFull = 1,
    /// Full sorter limited to the given depth.
    WnNetworkDepth = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: WnStatus, msg: impl Into<String>) -> WnStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> WnStatus) -> WnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(WnStatus::WnInternalError, "internal panic"),
    }
}

fn into_c_string(text: String, out: *mut *mut c_char) -> WnStatus {
    match CString::new(text) {
        Ok(s) => {
            // SAFETY: caller checked `out` for null
            unsafe { *out = s.into_raw() };
            WnStatus::WnOk
        }
        Err(_) => fail(WnStatus::WnInternalError, "output contains a NUL byte"),
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Odd-even merge sorter on `n` wires.
#[no_mangle]
pub extern "C" fn wn_oe_sorter(n: usize) -> *mut WnNetwork {
    catch_unwind(|| Box::into_raw(Box::new(WnNetwork { inner: oe_sorter(n) }))).unwrap_or_else(|_| {
        set_error("internal panic");
        ptr::null_mut()
    })
}

/// Copy of `network` without comparators above `depth`, or NULL if
/// `network` is NULL.
///
/// # Safety
/// `network` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wn_network_limit_depth(network: *const WnNetwork, depth: usize) -> *mut WnNetwork {
    match network.as_ref() {
        Some(n) => Box::into_raw(Box::new(WnNetwork {
            inner: n.inner.limit_depth(depth),
        })),
        None => {
            set_error("network is NULL");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `network` must be NULL or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn wn_network_free(network: *mut WnNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// # Safety
/// `network` must be NULL or a live handle. NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn wn_network_width(network: *const WnNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.inner.width())
}

/// # Safety
/// `network` must be NULL or a live handle. NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn wn_network_depth(network: *const WnNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.inner.depth())
}

/// Number of comparators.
///
/// # Safety
/// `network` must be NULL or a live handle. NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn wn_network_size(network: *const WnNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.inner.size())
}

/// Run `input` (length `len`, equal to the width) through the network and
/// write the output column to `output`.
///
/// # Safety
/// `input` and `output` must point to `len` readable/writable values.
#[no_mangle]
pub unsafe extern "C" fn wn_network_apply(
    network: *const WnNetwork,
    input: *const i64,
    len: usize,
    output: *mut i64,
) -> WnStatus {
    guard(|| {
        let Some(net) = network.as_ref() else {
            return fail(WnStatus::WnNullPointer, "network is NULL");
        };
        if (input.is_null() || output.is_null()) && len > 0 {
            return fail(WnStatus::WnNullPointer, "input or output is NULL");
        }
        let values = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(input, len)
        };
        match net.inner.output(values) {
            Ok(result) => {
                if len > 0 {
                    std::slice::from_raw_parts_mut(output, len).copy_from_slice(&result);
                }
                WnStatus::WnOk
            }
            Err(e) => fail(WnStatus::WnInvalidArgument, e.to_string()),
        }
    })
}

/// Knuth diagram of the network as text.
///
/// # Safety
/// `out` must be writable; on success it receives a string to release with
/// `wn_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wn_network_render(network: *const WnNetwork, out: *mut *mut c_char) -> WnStatus {
    guard(|| {
        let Some(net) = network.as_ref() else {
            return fail(WnStatus::WnNullPointer, "network is NULL");
        };
        if out.is_null() {
            return fail(WnStatus::WnNullPointer, "out is NULL");
        }
        match render_diagram(&net.inner, &Annotations::new()) {
            Ok(text) => into_c_string(text, out),
            Err(e) => fail(WnStatus::WnInternalError, e.to_string()),
        }
    })
}

/// Place `weights` (one per wire) on the inputs and propagate them with the
/// sparse decomposition of block size `sparseness` (0 for one block). The
/// result is written level by level, wires ascending, to `out`, which must
/// hold `width * (depth + 1)` values.
///
/// # Safety
/// `weights` must point to `len` values and `out` to `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn wn_propagate_sparse(
    network: *const WnNetwork,
    weights: *const u64,
    len: usize,
    sparseness: u64,
    out: *mut u64,
    out_len: usize,
) -> WnStatus {
    guard(|| {
        let Some(net) = network.as_ref() else {
            return fail(WnStatus::WnNullPointer, "network is NULL");
        };
        let net = &net.inner;
        let (width, depth) = (net.width(), net.depth());
        if len != width {
            return fail(
                WnStatus::WnInvalidArgument,
                format!("expected {width} weights, got {len}"),
            );
        }
        let cells = width * (depth + 1);
        if out_len != cells {
            return fail(
                WnStatus::WnInvalidArgument,
                format!("output needs {cells} slots, got {out_len}"),
            );
        }
        if (weights.is_null() && len > 0) || (out.is_null() && cells > 0) {
            return fail(WnStatus::WnNullPointer, "weights or out is NULL");
        }
        let input = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(weights, len)
        };
        let mut matrix = WeightMatrix::from_input_weights(input, depth);
        if depth > 0 {
            let k = if sparseness == 0 { depth } else { sparseness as usize };
            matrix = match propagate_decomposition(&matrix, &decompose_sparse(net, k)) {
                Ok(m) => m,
                Err(e) => return fail(WnStatus::WnInvalidArgument, e.to_string()),
            };
        }
        if cells > 0 {
            let dst = std::slice::from_raw_parts_mut(out, cells);
            for (level, column) in matrix.columns().enumerate() {
                dst[level * width..(level + 1) * width].copy_from_slice(column);
            }
        }
        WnStatus::WnOk
    })
}

/// Full depth, sparseness 1, propagation on, statement order.
#[no_mangle]
pub extern "C" fn wn_rewrite_config_default() -> WnRewriteConfig {
    WnRewriteConfig {
        depth_limit: -1,
        sparseness: 1,
        propagate: true,
        sort_inputs: false,
    }
}

/// Rewrite the minimize statements of the aspif program `input`.
///
/// # Safety
/// `input` must be a NUL-terminated string, `config` NULL (defaults) or
/// valid, and `out` writable; on success `*out` receives the rewritten
/// program, to be released with `wn_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wn_rewrite_aspif(
    input: *const c_char,
    config: *const WnRewriteConfig,
    out: *mut *mut c_char,
) -> WnStatus {
    guard(|| {
        if input.is_null() || out.is_null() {
            return fail(WnStatus::WnNullPointer, "input or out is NULL");
        }
        let Ok(text) = CStr::from_ptr(input).to_str() else {
            return fail(WnStatus::WnInvalidUtf8, "input is not valid UTF-8");
        };
        let c = config.as_ref().copied().unwrap_or_else(|| wn_rewrite_config_default());
        let config = RewriteConfig {
            depth_limit: usize::try_from(c.depth_limit).ok(),
            sparseness: if c.sparseness == 0 {
                Sparseness::Infinite
            } else {
                Sparseness::Finite(c.sparseness as usize)
            },
            propagate: c.propagate,
            sort_inputs: c.sort_inputs,
            ..RewriteConfig::default()
        };
        let doc = match parse(text) {
            Ok(d) => d,
            Err(e) => return fail(WnStatus::WnParseError, e.to_string()),
        };
        match rewrite_objective(&doc, &config) {
            Ok((rewritten, _)) => into_c_string(write(&rewritten), out),
            Err(e) => fail(WnStatus::WnRewriteError, e.to_string()),
        }
    })
}

/// Simulate the propagator call history of the binomial program with `n`
/// atoms and bound `k`. `depth` is only read for `WnNetworkDepth`.
///
/// # Safety
/// `calls` and `complete` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wn_pch_binomial(
    n: usize,
    k: usize,
    network: WnNetworkChoice,
    depth: usize,
    calls: *mut usize,
    complete: *mut bool,
) -> WnStatus {
    guard(|| {
        if calls.is_null() || complete.is_null() {
            return fail(WnStatus::WnNullPointer, "calls or complete is NULL");
        }
        let choice = match network {
            WnNetworkChoice::WnNetworkNone => NetworkChoice::None,
            WnNetworkChoice::WnNetworkFull => NetworkChoice::Full,
            WnNetworkChoice::WnNetworkDepth => NetworkChoice::Depth(depth),
        };
        match binomial_pch(n, k, choice, CandidateOrder::Lexicographic) {
            Ok((trace, _, _)) => {
                *calls = trace.len();
                *complete = trace.complete;
                WnStatus::WnOk
            }
            Err(e) => fail(WnStatus::WnInvalidArgument, e.to_string()),
        }
    })
}
