//! C ABI for the `sms-core` optimizers, benchmarks and rank-sum test.
//!
//! Objects cross the boundary as opaque handles created by `sms_*_new`-style
//! constructors and released with the matching `*_free` function. Every
//! fallible call returns an [`SmsStatus`]; on failure a description is
//! available from [`sms_last_error_message`] on the same thread.
//!
//! ```c
//! SmsObjective *obj = NULL;
//! SmsRunResult *res = NULL;
//! double best;
//! if (sms_objective_from_benchmark("f1", 30, 0, &obj) == SMS_STATUS_OK &&
//!     sms_run_sms(obj, 50, 1000, 7, &res) == SMS_STATUS_OK) {
//!     sms_result_best_value(res, &best);
//! }
//! sms_result_free(res);
//! sms_objective_free(obj);
//! ```

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;
use std::sync::Arc;

use sms_core::baselines::{run_de, run_pso, DeParams, PsoParams};
use sms_core::benchmarks::{BenchmarkId, BenchmarkInstance};
use sms_core::sms::{run_sms, SmsParams};
use sms_core::stats::wilcoxon_rank_sum;
use sms_core::{Bounds, Error, Objective, ObjectiveSpec, RandomStream, RunResult, UniformSource};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ConfigError = 3,
    DimensionError = 4,
    RuntimeError = 5,
    Panic = 6,
}

/// Objective function supplied by the caller. Receives `n` coordinates and
/// the `user_data` pointer given at construction.
pub type SmsObjectiveFn = Option<unsafe extern "C" fn(x: *const f64, n: usize, user_data: *mut c_void) -> f64>;

/// Opaque objective handle.
pub struct SmsObjective {
    spec: ObjectiveSpec,
    noise: RandomStream,
}

/// Opaque run result handle.
pub struct SmsRunResult {
    result: RunResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(e: &Error) -> SmsStatus {
    match e {
        Error::Config(_) | Error::UnknownBenchmark(_) | Error::Parse { .. } => SmsStatus::ConfigError,
        Error::Dimension { .. } => SmsStatus::DimensionError,
        _ => SmsStatus::RuntimeError,
    }
}

fn fail(status: SmsStatus, message: impl Into<String>) -> SmsStatus {
    set_error(message);
    status
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), SmsStatus>) -> SmsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SmsStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(SmsStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

fn lift<T>(r: sms_core::Result<T>) -> Result<T, SmsStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, SmsStatus> {
    p.as_ref().ok_or_else(|| fail(SmsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, SmsStatus> {
    p.as_mut().ok_or_else(|| fail(SmsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn input<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], SmsStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(SmsStatus::NullPointer, format!("{what} is null")));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a>(p: *mut f64, len: usize, expected: usize, what: &str) -> Result<&'a mut [f64], SmsStatus> {
    if len != expected {
        return Err(fail(
            SmsStatus::DimensionError,
            format!("{what} has length {len}, expected {expected}"),
        ));
    }
    if expected == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(fail(SmsStatus::NullPointer, format!("{what} is null")));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), SmsStatus> {
    let slot = deref_mut(out, "output handle")?;
    *slot = Box::into_raw(Box::new(value));
    Ok(())
}

struct Callback {
    f: unsafe extern "C" fn(*const f64, usize, *mut c_void) -> f64,
    user_data: *mut c_void,
}

// The caller guarantees the callback and its user data may be used from the
// thread that drives the optimizer; runs never evaluate concurrently.
unsafe impl Send for Callback {}
unsafe impl Sync for Callback {}

impl Objective for Callback {
    fn value(&self, x: &[f64], _rng: &mut dyn UniformSource) -> f64 {
        unsafe { (self.f)(x.as_ptr(), x.len(), self.user_data) }
    }
}

/// Creates an objective for benchmark `id` (`"f1"` .. `"f24"`).
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sms_objective_from_benchmark(
    id: *const c_char,
    n: usize,
    instance_seed: u64,
    out: *mut *mut SmsObjective,
) -> SmsStatus {
    guard(|| {
        if id.is_null() {
            return Err(fail(SmsStatus::NullPointer, "id is null"));
        }
        let text = CStr::from_ptr(id)
            .to_str()
            .map_err(|_| fail(SmsStatus::InvalidArgument, "id is not UTF-8"))?;
        let id: BenchmarkId = lift(text.parse())?;
        let inst = lift(BenchmarkInstance::generate(id, n, instance_seed))?;
        store(out, SmsObjective { spec: inst.to_spec(), noise: RandomStream::new(instance_seed) })
    })
}

/// Wraps a caller-supplied function over the box `[low, high]^n`.
///
/// # Safety
/// `low` and `high` must point to `n` doubles; `f` must stay callable with
/// `user_data` for the lifetime of the handle.
#[no_mangle]
pub unsafe extern "C" fn sms_objective_from_callback(
    f: SmsObjectiveFn,
    user_data: *mut c_void,
    n: usize,
    low: *const f64,
    high: *const f64,
    out: *mut *mut SmsObjective,
) -> SmsStatus {
    guard(|| {
        let f = f.ok_or_else(|| fail(SmsStatus::NullPointer, "callback is null"))?;
        if n == 0 {
            return Err(fail(SmsStatus::InvalidArgument, "dimension must be at least 1"));
        }
        let low = input(low, n, "low")?.to_vec();
        let high = input(high, n, "high")?.to_vec();
        let bounds = lift(Bounds::new(low, high))?;
        let spec = ObjectiveSpec::new("callback", bounds, Arc::new(Callback { f, user_data }));
        store(out, SmsObjective { spec, noise: RandomStream::new(0) })
    })
}

/// Releases an objective. Null is ignored.
///
/// # Safety
/// `obj` must come from an `sms_objective_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sms_objective_free(obj: *mut SmsObjective) {
    if !obj.is_null() {
        drop(Box::from_raw(obj));
    }
}

/// # Safety
/// `obj` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_objective_dim(obj: *const SmsObjective, out: *mut usize) -> SmsStatus {
    guard(|| {
        let n = deref(obj, "objective")?.spec.dim();
        *deref_mut(out, "out")? = n;
        Ok(())
    })
}

/// Copies the box into `low` and `high`, each of length `len == dim`.
///
/// # Safety
/// `low` and `high` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sms_objective_bounds(
    obj: *const SmsObjective,
    low: *mut f64,
    high: *mut f64,
    len: usize,
) -> SmsStatus {
    guard(|| {
        let bounds = deref(obj, "objective")?.spec.bounds();
        output(low, len, bounds.dim(), "low")?.copy_from_slice(bounds.low());
        output(high, len, bounds.dim(), "high")?.copy_from_slice(bounds.high());
        Ok(())
    })
}

/// Evaluates the objective once and counts the evaluation.
///
/// # Safety
/// `x` must point to `len` doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sms_objective_evaluate(
    obj: *mut SmsObjective,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> SmsStatus {
    guard(|| {
        let obj = deref_mut(obj, "objective")?;
        let x = input(x, len, "x")?;
        let v = lift(obj.spec.evaluate(x, &mut obj.noise))?;
        *deref_mut(out, "out")? = v;
        Ok(())
    })
}

/// Evaluations performed through this handle, including optimizer runs.
///
/// # Safety
/// `obj` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_objective_eval_count(obj: *const SmsObjective, out: *mut u64) -> SmsStatus {
    guard(|| {
        let c = deref(obj, "objective")?.spec.eval_count();
        *deref_mut(out, "out")? = c;
        Ok(())
    })
}

unsafe fn run_with(
    obj: *mut SmsObjective,
    out: *mut *mut SmsRunResult,
    run: impl FnOnce(&mut ObjectiveSpec) -> sms_core::Result<RunResult>,
) -> SmsStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(SmsStatus::NullPointer, "output handle is null"));
        }
        let obj = deref_mut(obj, "objective")?;
        let result = lift(run(&mut obj.spec))?;
        store(out, SmsRunResult { result })
    })
}

/// Runs SMS with the default state schedule.
///
/// # Safety
/// `obj` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_run_sms(
    obj: *mut SmsObjective,
    population: usize,
    generations: usize,
    seed: u64,
    out: *mut *mut SmsRunResult,
) -> SmsStatus {
    let params = SmsParams { population, generations, ..SmsParams::default() };
    run_with(obj, out, |spec| run_sms(spec, &params, seed))
}

/// Runs global-best PSO (c1 = c2 = 2, inertia 0.9 to 0.2).
///
/// # Safety
/// `obj` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_run_pso(
    obj: *mut SmsObjective,
    population: usize,
    generations: usize,
    seed: u64,
    out: *mut *mut SmsRunResult,
) -> SmsStatus {
    let params = PsoParams { population, generations, ..PsoParams::default() };
    run_with(obj, out, |spec| run_pso(spec, &params, seed))
}

/// Runs DE/rand/1/bin with crossover rate `cr` and scale `f`.
///
/// # Safety
/// `obj` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_run_de(
    obj: *mut SmsObjective,
    population: usize,
    generations: usize,
    cr: f64,
    f: f64,
    seed: u64,
    out: *mut *mut SmsRunResult,
) -> SmsStatus {
    let params = DeParams { population, generations, cr, f, ..DeParams::default() };
    run_with(obj, out, |spec| run_de(spec, &params, seed))
}

/// Releases a run result. Null is ignored.
///
/// # Safety
/// `res` must come from an `sms_run_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sms_result_free(res: *mut SmsRunResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// # Safety
/// `res` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_result_best_value(res: *const SmsRunResult, out: *mut f64) -> SmsStatus {
    guard(|| {
        let v = deref(res, "result")?.result.best.value;
        *deref_mut(out, "out")? = v;
        Ok(())
    })
}

/// Copies the best position; `len` must equal the objective dimension.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sms_result_best_position(res: *const SmsRunResult, out: *mut f64, len: usize) -> SmsStatus {
    guard(|| {
        let best = &deref(res, "result")?.result.best.position;
        output(out, len, best.len(), "out")?.copy_from_slice(best);
        Ok(())
    })
}

/// # Safety
/// `res` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_result_trace_len(res: *const SmsRunResult, out: *mut usize) -> SmsStatus {
    guard(|| {
        let n = deref(res, "result")?.result.trace.len();
        *deref_mut(out, "out")? = n;
        Ok(())
    })
}

/// Copies the best-so-far trace; `len` must equal the trace length.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sms_result_trace(res: *const SmsRunResult, out: *mut f64, len: usize) -> SmsStatus {
    guard(|| {
        let trace = &deref(res, "result")?.result.trace;
        output(out, len, trace.len(), "out")?.copy_from_slice(trace);
        Ok(())
    })
}

/// # Safety
/// `res` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sms_result_evaluations(res: *const SmsRunResult, out: *mut u64) -> SmsStatus {
    guard(|| {
        let n = deref(res, "result")?.result.evaluations;
        *deref_mut(out, "out")? = n;
        Ok(())
    })
}

/// Two-sided Wilcoxon rank-sum test. `exact` receives 1 when the exact
/// distribution was used and 0 for the normal approximation; it may be null.
///
/// # Safety
/// `a` and `b` must point to `na` and `nb` doubles; outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn sms_wilcoxon_rank_sum(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    rank_sum: *mut f64,
    p_two_sided: *mut f64,
    exact: *mut i32,
) -> SmsStatus {
    guard(|| {
        let a = input(a, na, "a")?;
        let b = input(b, nb, "b")?;
        let w = lift(wilcoxon_rank_sum(a, b))?;
        *deref_mut(rank_sum, "rank_sum")? = w.rank_sum;
        *deref_mut(p_two_sided, "p_two_sided")? = w.p_two_sided;
        if let Some(e) = exact.as_mut() {
            *e = i32::from(w.method == sms_core::stats::Method::Exact);
        }
        Ok(())
    })
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sms_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
