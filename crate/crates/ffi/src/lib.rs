//! C interface to the planner.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns an
//! [`MppStatus`]; on failure a description is available from
//! [`mpp_last_error_message`] on the same thread until the next failing call.
//! Strings returned by the library are released with [`mpp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use mpp_core::ilp::ObjectiveKind;
use mpp_core::instance::{generate_grid_instance, parse_instance, serialize_instance, Instance};
use mpp_core::plan::{parse_plan, serialize_plan, Plan};
use mpp_core::planner::{solve_with_split, PlannerOptions};
use mpp_core::validate::validate;
use mpp_core::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MppStatus {
    Ok = 0,
    /// A null pointer, non-UTF-8 string or out-of-range argument.
    InvalidArgument = 1,
    /// Malformed or inconsistent instance or plan.
    InvalidInput = 2,
    Infeasible = 3,
    Timeout = 4,
    ExternalSolver = 5,
    /// Unexpected failure, including a caught panic.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MppObjective {
    Makespan = 0,
    MaxDistance = 1,
    TotalTime = 2,
    TotalDistance = 3,
}

impl From<MppObjective> for ObjectiveKind {
    fn from(o: MppObjective) -> Self {
        match o {
            MppObjective::Makespan => ObjectiveKind::Makespan,
            MppObjective::MaxDistance => ObjectiveKind::MaxDistance,
            MppObjective::TotalTime => ObjectiveKind::TotalTime,
            MppObjective::TotalDistance => ObjectiveKind::TotalDistance,
        }
    }
}

/// Opaque problem instance.
pub struct MppInstance(Instance);

/// Opaque plan.
pub struct MppPlan(Plan);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> MppStatus {
    match e {
        Error::Infeasible(_) => MppStatus::Infeasible,
        Error::Timeout(_) => MppStatus::Timeout,
        Error::ExternalSolver(_) | Error::Integrity(_) => MppStatus::ExternalSolver,
        Error::Model(_) | Error::FlowStructure(_) | Error::Io(_) => MppStatus::Internal,
        Error::Config(_) => MppStatus::InvalidArgument,
        _ => MppStatus::InvalidInput,
    }
}

struct Fail(MppStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(MppStatus::InvalidArgument, msg.to_string())
}

/// Runs `f`, recording failures and panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MppStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MppStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside the library");
            MppStatus::Internal
        }
    }
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(invalid("null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid("string is not UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| invalid(&format!("null {what}")))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| invalid(&format!("null {what} output")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mpp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mpp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mpp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance from its text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mpp_instance_parse(text: *const c_char, out: *mut *mut MppInstance) -> MppStatus {
    guard(|| {
        let out = out_ref(out, "instance")?;
        let inst = parse_instance(c_str(text)?)?;
        *out = Box::into_raw(Box::new(MppInstance(inst)));
        Ok(())
    })
}

/// Random instance on a `rows x cols` grid with `obstacle_percent` of the
/// cells removed.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mpp_instance_generate_grid(
    rows: usize,
    cols: usize,
    obstacle_percent: f64,
    robots: usize,
    seed: u64,
    out: *mut *mut MppInstance,
) -> MppStatus {
    guard(|| {
        let out = out_ref(out, "instance")?;
        if !(0.0..100.0).contains(&obstacle_percent) {
            return Err(invalid("obstacle percentage outside [0, 100)"));
        }
        let inst = generate_grid_instance(rows, cols, obstacle_percent / 100.0, robots, seed)?;
        *out = Box::into_raw(Box::new(MppInstance(inst)));
        Ok(())
    })
}

/// Text form of an instance; release with [`mpp_string_free`]. Null on a
/// null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mpp_instance_to_text(inst: *const MppInstance) -> *mut c_char {
    inst.as_ref().map_or(ptr::null_mut(), |i| to_c_string(serialize_instance(&i.0)))
}

/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mpp_instance_robot_count(inst: *const MppInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.robot_count())
}

/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mpp_instance_vertex_count(inst: *const MppInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.graph().vertex_count())
}

/// # Safety
/// `inst` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mpp_instance_free(inst: *mut MppInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Solves `inst` for `objective` with the embedded solver. `split` is the
/// number of time stages (1 for an exact solve); `time_limit_seconds <= 0`
/// means no limit. On success `*out_plan` receives a new plan and
/// `*out_value` (if not null) the achieved objective value.
///
/// # Safety
/// `inst` must be a live handle, `out_plan` writable, `out_value` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mpp_solve(
    inst: *const MppInstance,
    objective: MppObjective,
    split: usize,
    time_limit_seconds: f64,
    out_plan: *mut *mut MppPlan,
    out_value: *mut usize,
) -> MppStatus {
    guard(|| {
        let inst = deref(inst, "instance")?;
        let out_plan = out_ref(out_plan, "plan")?;
        if split == 0 {
            return Err(invalid("split must be at least 1"));
        }
        let opts = PlannerOptions {
            time_limit: (time_limit_seconds > 0.0 && time_limit_seconds.is_finite())
                .then(|| Duration::from_secs_f64(time_limit_seconds)),
            ..PlannerOptions::default()
        };
        let (plan, report) = solve_with_split(&inst.0, split, objective.into(), &opts)?;
        if let Some(v) = out_value.as_mut() {
            *v = report.achieved;
        }
        *out_plan = Box::into_raw(Box::new(MppPlan(plan)));
        Ok(())
    })
}

/// Parses a plan from its text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mpp_plan_parse(text: *const c_char, out: *mut *mut MppPlan) -> MppStatus {
    guard(|| {
        let out = out_ref(out, "plan")?;
        let plan = parse_plan(c_str(text)?)?;
        *out = Box::into_raw(Box::new(MppPlan(plan)));
        Ok(())
    })
}

/// Text form of a plan; release with [`mpp_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mpp_plan_to_text(plan: *const MppPlan) -> *mut c_char {
    plan.as_ref().map_or(ptr::null_mut(), |p| to_c_string(serialize_plan(&p.0)))
}

/// Number of steps `T`; a plan has `T + 1` configurations.
///
/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mpp_plan_horizon(plan: *const MppPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.horizon())
}

/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mpp_plan_robot_count(plan: *const MppPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.robot_count())
}

/// Vertex of `robot` at step `t`.
///
/// # Safety
/// `plan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mpp_plan_position(plan: *const MppPlan, robot: usize, t: usize, out: *mut usize) -> MppStatus {
    guard(|| {
        let plan = deref(plan, "plan")?;
        let out = out_ref(out, "position")?;
        if robot >= plan.0.robot_count() || t > plan.0.horizon() {
            return Err(invalid("robot or time step out of range"));
        }
        *out = plan.0.position(robot, t);
        Ok(())
    })
}

/// # Safety
/// `plan` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mpp_plan_free(plan: *mut MppPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Counts the violations of `plan` on `inst` into `*out_count`; zero means
/// the plan is valid. The first violation, if any, becomes the last error
/// message.
///
/// # Safety
/// Both handles must be live and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn mpp_validate(
    inst: *const MppInstance,
    plan: *const MppPlan,
    out_count: *mut usize,
) -> MppStatus {
    guard(|| {
        let inst = deref(inst, "instance")?;
        let plan = deref(plan, "plan")?;
        let out_count = out_ref(out_count, "count")?;
        let violations = validate(&plan.0, &inst.0);
        if let Some(v) = violations.first() {
            set_error(v.to_string());
        }
        *out_count = violations.len();
        Ok(())
    })
}
