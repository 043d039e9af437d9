//! C ABI over `eostrata`.
//!
//! A spec is parsed once into an opaque `EostrataSpec` handle; every query
//! returns an `EostrataStatus` and writes a heap string that the caller frees
//! with `eostrata_string_free`. On failure `eostrata_last_error` describes the
//! most recent error on the calling thread.

use eostrata::error::Error;
use eostrata::loopgrp::Experiment;
use eostrata::report::{render, Command, Format, LoopOptions};
use eostrata::specfile::{parse_spec, Loaded};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EostrataStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Computation = 4,
    Unsupported = 5,
    /// The output was produced but records at least one hard failure.
    HardFailure = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EostrataCommand {
    Describe = 0,
    Bgmu = 1,
    EoPoset = 2,
    EoToNewton = 3,
    HnCheck = 4,
    VerifyLoop = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EostrataFormat {
    Json = 0,
    Dot = 1,
    Text = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EostrataExperiment {
    K1 = 0,
    Iwahori = 1,
    Constructed = 2,
    HnReduction = 3,
}

/// Options for `eostrata_verify_loop`. Zero `prec` picks the default truncation;
/// a null `m_schedule` picks the default field-degree schedule.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct EostrataLoopOptions {
    pub experiment: EostrataExperiment,
    pub q: u32,
    pub prec: usize,
    pub samples: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub m_schedule: *const u32,
    pub m_schedule_len: usize,
}

/// Opaque handle to a parsed and loaded group spec.
pub struct EostrataSpec {
    inner: Loaded,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let mut bytes = msg.into().into_bytes();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> EostrataStatus {
    match e {
        Error::Parse { .. } => EostrataStatus::Parse,
        _ => EostrataStatus::Computation,
    }
}

fn fail(status: EostrataStatus, msg: impl Into<String>) -> EostrataStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `Panic` and recording the message.
fn guarded<F: FnOnce() -> EostrataStatus>(f: F) -> EostrataStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(EostrataStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, EostrataStatus> {
    if p.is_null() {
        return Err(fail(EostrataStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(EostrataStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, body: String) -> EostrataStatus {
    match CString::new(body) {
        Ok(c) => {
            *out = c.into_raw();
            EostrataStatus::Ok
        }
        Err(_) => fail(EostrataStatus::Computation, "output contains a NUL byte"),
    }
}

fn command_of(c: EostrataCommand) -> Command {
    match c {
        EostrataCommand::Describe => Command::Describe,
        EostrataCommand::Bgmu => Command::Bgmu,
        EostrataCommand::EoPoset => Command::EoPoset,
        EostrataCommand::EoToNewton => Command::EoToNewton,
        EostrataCommand::HnCheck => Command::HnCheck,
        EostrataCommand::VerifyLoop => Command::VerifyLoop,
    }
}

fn format_of(f: EostrataFormat) -> Format {
    match f {
        EostrataFormat::Json => Format::Json,
        EostrataFormat::Dot => Format::Dot,
        EostrataFormat::Text => Format::Text,
    }
}

fn experiment_of(e: EostrataExperiment) -> Experiment {
    match e {
        EostrataExperiment::K1 => Experiment::K1,
        EostrataExperiment::Iwahori => Experiment::Iwahori,
        EostrataExperiment::Constructed => Experiment::Constructed,
        EostrataExperiment::HnReduction => Experiment::HnReduction,
    }
}

unsafe fn run(
    spec: *const EostrataSpec,
    cmd: Command,
    format: Format,
    opts: &LoopOptions,
    out: *mut *mut c_char,
) -> EostrataStatus {
    if spec.is_null() || out.is_null() {
        return fail(EostrataStatus::NullArgument, "null spec or output pointer");
    }
    *out = ptr::null_mut();
    if !cmd.supports(format) {
        return fail(
            EostrataStatus::Unsupported,
            format!("{} has no {format:?} output", cmd.name()),
        );
    }
    match render(cmd, &(*spec).inner, format, opts) {
        Ok(r) => {
            let status = write_string(out, r.body);
            if status == EostrataStatus::Ok && r.hard_failures > 0 {
                fail(
                    EostrataStatus::HardFailure,
                    format!("{} hard failures", r.hard_failures),
                )
            } else {
                status
            }
        }
        Err(e) => fail(status_of(&e), e.to_string()),
    }
}

/// Parses a spec in the `key=value` format. On success `*out` owns a handle
/// that must be released with `eostrata_spec_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eostrata_spec_parse(
    text: *const c_char,
    out: *mut *mut EostrataSpec,
) -> EostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EostrataStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_spec(text).and_then(|s| s.load()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EostrataSpec { inner }));
                EostrataStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `spec` must come from `eostrata_spec_parse` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn eostrata_spec_free(spec: *mut EostrataSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Renders one report. `verify_loop` runs with default options here.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eostrata_render(
    spec: *const EostrataSpec,
    command: EostrataCommand,
    format: EostrataFormat,
    out: *mut *mut c_char,
) -> EostrataStatus {
    guarded(|| {
        run(
            spec,
            command_of(command),
            format_of(format),
            &LoopOptions::default(),
            out,
        )
    })
}

#[no_mangle]
pub extern "C" fn eostrata_loop_options_default() -> EostrataLoopOptions {
    let d = LoopOptions::default();
    EostrataLoopOptions {
        experiment: EostrataExperiment::K1,
        q: d.q,
        prec: 0,
        samples: d.samples,
        seed: d.seed,
        exhaustive: d.exhaustive,
        m_schedule: ptr::null(),
        m_schedule_len: 0,
    }
}

/// Runs a loop-group experiment and writes its JSON report.
/// Returns `HardFailure` (with the report written) when any sample failed.
///
/// # Safety
/// `spec` must be a live handle, `options` and `out` valid pointers, and
/// `options->m_schedule` either null or valid for `m_schedule_len` reads.
#[no_mangle]
pub unsafe extern "C" fn eostrata_verify_loop(
    spec: *const EostrataSpec,
    options: *const EostrataLoopOptions,
    out: *mut *mut c_char,
) -> EostrataStatus {
    guarded(|| {
        if options.is_null() {
            return fail(EostrataStatus::NullArgument, "null options");
        }
        let o = &*options;
        let m_schedule = if o.m_schedule.is_null() {
            None
        } else {
            Some(std::slice::from_raw_parts(o.m_schedule, o.m_schedule_len).to_vec())
        };
        let opts = LoopOptions {
            experiment: experiment_of(o.experiment),
            q: o.q,
            m_schedule,
            prec: (o.prec > 0).then_some(o.prec),
            samples: o.samples,
            seed: o.seed,
            exhaustive: o.exhaustive,
        };
        run(spec, Command::VerifyLoop, Format::Json, &opts, out)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn eostrata_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn eostrata_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn eostrata_status_message(status: EostrataStatus) -> *const c_char {
    let s: &'static CStr = match status {
        EostrataStatus::Ok => c"ok",
        EostrataStatus::NullArgument => c"null argument",
        EostrataStatus::InvalidUtf8 => c"invalid UTF-8",
        EostrataStatus::Parse => c"spec parse error",
        EostrataStatus::Computation => c"computation error",
        EostrataStatus::Unsupported => c"unsupported format for this command",
        EostrataStatus::HardFailure => c"hard failure recorded",
        EostrataStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn eostrata_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
