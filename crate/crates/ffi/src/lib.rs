//! C ABI for the macroatlas engine.
//!
//! Parameters and the diagram graph are exposed as opaque handles created
//! and destroyed by this library. Every fallible function returns a
//! [`MaStatus`]; on failure [`ma_last_error_message`] describes the problem.
//! Strings returned by the library must be released with [`ma_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use macroatlas::demand::islm_solve;
use macroatlas::equilibrium::{long_run_ge, short_run_ge};
use macroatlas::graph::BigPicture;
use macroatlas::{EconState, Error, Params};

/// Result codes. 2, 3 and 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaStatus {
    Ok = 0,
    NullPointer = 1,
    Validation = 2,
    Convergence = 3,
    Io = 4,
    UnknownField = 5,
    UnknownNode = 6,
    BufferTooSmall = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

/// Opaque parameter set.
pub struct MaParams(Params);

/// Opaque handle to the diagram graph.
pub struct MaGraph(&'static BigPicture);

/// Equilibrium state. Rates `nominal_rate` and `real_rate` are in percent
/// points; `unemployment` and `inflation` are fractions.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MaEconState {
    pub output: f64,
    pub consumption: f64,
    pub investment: f64,
    pub saving: f64,
    pub price: f64,
    pub nominal_rate: f64,
    pub real_rate: f64,
    pub wage: f64,
    pub employment: f64,
    pub unemployment: f64,
    pub inflation: f64,
    pub full_employment_output: f64,
    pub leisure: f64,
}

impl From<EconState> for MaEconState {
    fn from(s: EconState) -> Self {
        MaEconState {
            output: s.output,
            consumption: s.consumption,
            investment: s.investment,
            saving: s.saving,
            price: s.price,
            nominal_rate: s.nominal_rate,
            real_rate: s.real_rate,
            wage: s.wage,
            employment: s.employment,
            unemployment: s.unemployment,
            inflation: s.inflation,
            full_employment_output: s.full_employment_output,
            leisure: s.leisure,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(err: &Error) -> MaStatus {
    match err {
        Error::UnknownField(_) => MaStatus::UnknownField,
        Error::UnknownNode(_) => MaStatus::UnknownNode,
        Error::Io(_) => MaStatus::Io,
        e if e.is_convergence() => MaStatus::Convergence,
        _ => MaStatus::Validation,
    }
}

fn fail(status: MaStatus, msg: impl Into<String>) -> MaStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting engine errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (MaStatus, String)>) -> MaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MaStatus::Ok
        }
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(MaStatus::Panic, "internal panic"),
    }
}

fn engine(err: Error) -> (MaStatus, String) {
    (status_of(&err), err.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (MaStatus, String)> {
    if p.is_null() {
        return Err((MaStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (MaStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), (MaStatus, String)> {
    if p.is_null() {
        Err((MaStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ma_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Default parameters. Release with `ma_params_free`.
#[no_mangle]
pub extern "C" fn ma_params_new() -> *mut MaParams {
    Box::into_raw(Box::new(MaParams(Params::default())))
}

#[no_mangle]
pub unsafe extern "C" fn ma_params_free(params: *mut MaParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Parses parameters from JSON with symbol keys (`"alpha"`, `"Ms"`, ...).
/// Missing keys take default values; unknown keys are an error.
#[no_mangle]
pub unsafe extern "C" fn ma_params_from_json(
    json: *const c_char,
    out: *mut *mut MaParams,
) -> MaStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = str_arg(json, "json")?;
        let params = Params::from_json_str(text).map_err(engine)?;
        *out = Box::into_raw(Box::new(MaParams(params)));
        Ok(())
    })
}

/// Serializes parameters to JSON. Release the string with `ma_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ma_params_to_json(
    params: *const MaParams,
    out: *mut *mut c_char,
) -> MaStatus {
    guard(|| {
        non_null(params, "params")?;
        non_null(out, "out")?;
        let text = serde_json::to_string(&(*params).0).map_err(|e| engine(e.into()))?;
        *out = CString::new(text)
            .map_err(|e| (MaStatus::Validation, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ma_params_set(
    params: *mut MaParams,
    field: *const c_char,
    value: f64,
) -> MaStatus {
    guard(|| {
        non_null(params, "params")?;
        let field = str_arg(field, "field")?;
        (*params).0.set(field, value).map_err(engine)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ma_params_get(
    params: *const MaParams,
    field: *const c_char,
    out: *mut f64,
) -> MaStatus {
    guard(|| {
        non_null(params, "params")?;
        non_null(out, "out")?;
        let field = str_arg(field, "field")?;
        *out = (*params)
            .0
            .get(field)
            .ok_or_else(|| engine(Error::UnknownField(field.to_string())))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ma_params_validate(params: *const MaParams) -> MaStatus {
    guard(|| {
        non_null(params, "params")?;
        (*params).0.validate().map_err(engine)
    })
}

/// AD meets short-run supply at the expected price level.
#[no_mangle]
pub unsafe extern "C" fn ma_solve_short_run(
    params: *const MaParams,
    out: *mut MaEconState,
) -> MaStatus {
    guard(|| {
        non_null(params, "params")?;
        non_null(out, "out")?;
        *out = short_run_ge(&(*params).0).map_err(engine)?.into();
        Ok(())
    })
}

/// Long-run equilibrium at full-employment output.
#[no_mangle]
pub unsafe extern "C" fn ma_solve_long_run(
    params: *const MaParams,
    out: *mut MaEconState,
) -> MaStatus {
    guard(|| {
        non_null(params, "params")?;
        non_null(out, "out")?;
        *out = long_run_ge(&(*params).0).map_err(engine)?.into();
        Ok(())
    })
}

/// IS-LM output and nominal rate (percent points) at price level `price`.
#[no_mangle]
pub unsafe extern "C" fn ma_islm_solve(
    params: *const MaParams,
    price: f64,
    output: *mut f64,
    nominal_rate: *mut f64,
) -> MaStatus {
    guard(|| {
        non_null(params, "params")?;
        non_null(output, "output")?;
        non_null(nominal_rate, "nominal_rate")?;
        let sol = islm_solve(price, &(*params).0).map_err(engine)?;
        *output = sol.output;
        *nominal_rate = sol.nominal_rate;
        Ok(())
    })
}

/// The canonical 27-diagram graph. Release with `ma_graph_free`.
#[no_mangle]
pub extern "C" fn ma_graph_new() -> *mut MaGraph {
    Box::into_raw(Box::new(MaGraph(BigPicture::canonical())))
}

#[no_mangle]
pub unsafe extern "C" fn ma_graph_free(graph: *mut MaGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ma_graph_node_count(graph: *const MaGraph) -> usize {
    if graph.is_null() {
        return 0;
    }
    (*graph).0.nodes.len()
}

/// Copies `ids` into `out`. `*len` always receives the full count; when it
/// exceeds `capacity` nothing is copied and `BufferTooSmall` is returned.
unsafe fn copy_ids(
    ids: &[u32],
    out: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> Result<(), (MaStatus, String)> {
    non_null(len, "len")?;
    *len = ids.len();
    if ids.len() > capacity {
        return Err((
            MaStatus::BufferTooSmall,
            format!("{} ids do not fit in a buffer of {capacity}", ids.len()),
        ));
    }
    if !ids.is_empty() {
        non_null(out, "out")?;
        ptr::copy_nonoverlapping(ids.as_ptr(), out, ids.len());
    }
    Ok(())
}

/// Diagrams derived, directly or not, from `node`, in increasing id order.
#[no_mangle]
pub unsafe extern "C" fn ma_graph_descendants(
    graph: *const MaGraph,
    node: u32,
    out: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> MaStatus {
    guard(|| {
        non_null(graph, "graph")?;
        let ids: Vec<u32> = (*graph)
            .0
            .descendants(node)
            .map_err(engine)?
            .into_iter()
            .collect();
        copy_ids(&ids, out, capacity, len)
    })
}

/// Diagrams to redraw after shocking `field`, in dependency order.
#[no_mangle]
pub unsafe extern "C" fn ma_graph_propagate(
    graph: *const MaGraph,
    field: *const c_char,
    out: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> MaStatus {
    guard(|| {
        non_null(graph, "graph")?;
        let field = str_arg(field, "field")?;
        let plan = (*graph).0.propagate(&[field]).map_err(engine)?;
        copy_ids(&plan.dirty, out, capacity, len)
    })
}

/// Graphviz text of the graph. Release with `ma_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ma_graph_export_dot(
    graph: *const MaGraph,
    out: *mut *mut c_char,
) -> MaStatus {
    guard(|| {
        non_null(graph, "graph")?;
        non_null(out, "out")?;
        let dot = (*graph).0.to_dot();
        *out = CString::new(dot)
            .map_err(|e| (MaStatus::Validation, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ma_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
