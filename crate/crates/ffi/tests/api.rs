use std::ffi::{CStr, CString};
use std::ptr;

use mpp_ffi::*;

const K2_MOVE: &str = "mpp 1\nvertices 2\nedges 1\n0 1\nrobots 1\n0 1\n";
const K2_SWAP: &str = "mpp 1\nvertices 2\nedges 1\n0 1\nrobots 2\n0 1\n1 0\n";

fn last_error() -> String {
    let p = mpp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(text: &str) -> *mut MppInstance {
    let c = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { mpp_instance_parse(c.as_ptr(), &mut inst) }, MppStatus::Ok);
    inst
}

#[test]
fn solve_validate_and_inspect() {
    let inst = parse(K2_MOVE);
    unsafe {
        assert_eq!(mpp_instance_robot_count(inst), 1);
        assert_eq!(mpp_instance_vertex_count(inst), 2);
        let mut plan = ptr::null_mut();
        let mut value = 99;
        assert_eq!(mpp_solve(inst, MppObjective::Makespan, 1, 0.0, &mut plan, &mut value), MppStatus::Ok);
        assert_eq!(value, 1);
        assert_eq!(mpp_plan_horizon(plan), 1);
        assert_eq!(mpp_plan_robot_count(plan), 1);
        let mut v = 9;
        assert_eq!(mpp_plan_position(plan, 0, 1, &mut v), MppStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(mpp_plan_position(plan, 0, 2, &mut v), MppStatus::InvalidArgument);
        let mut count = 9;
        assert_eq!(mpp_validate(inst, plan, &mut count), MppStatus::Ok);
        assert_eq!(count, 0);
        let text = mpp_plan_to_text(plan);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "plan 1 1\n0 1\n");
        mpp_string_free(text);
        mpp_plan_free(plan);
        mpp_instance_free(inst);
    }
}

#[test]
fn infeasible_swap_reports_status() {
    let inst = parse(K2_SWAP);
    let mut plan = ptr::null_mut();
    let status = unsafe { mpp_solve(inst, MppObjective::Makespan, 1, 0.0, &mut plan, ptr::null_mut()) };
    assert_eq!(status, MppStatus::Infeasible);
    assert!(plan.is_null());
    assert!(last_error().contains("infeasible"));
    unsafe { mpp_instance_free(inst) };
}

#[test]
fn colliding_plan_is_counted() {
    let inst = parse(K2_SWAP);
    let text = CString::new("plan 2 1\n0 1\n1 0\n").unwrap();
    let mut plan = ptr::null_mut();
    unsafe {
        assert_eq!(mpp_plan_parse(text.as_ptr(), &mut plan), MppStatus::Ok);
        let mut count = 0;
        assert_eq!(mpp_validate(inst, plan, &mut count), MppStatus::Ok);
        assert_eq!(count, 1);
        assert!(last_error().contains("head-on"));
        mpp_plan_free(plan);
        mpp_instance_free(inst);
    }
}

#[test]
fn bad_arguments() {
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(mpp_instance_parse(ptr::null(), &mut inst), MppStatus::InvalidArgument);
        let bad = CString::new("mpp 2\n").unwrap();
        assert_eq!(mpp_instance_parse(bad.as_ptr(), &mut inst), MppStatus::InvalidInput);
        assert!(last_error().contains("line 1"));
        assert_eq!(mpp_instance_parse(bad.as_ptr(), ptr::null_mut()), MppStatus::InvalidArgument);
        let mut plan = ptr::null_mut();
        assert_eq!(mpp_solve(ptr::null(), MppObjective::Makespan, 1, 0.0, &mut plan, ptr::null_mut()), MppStatus::InvalidArgument);
        assert_eq!(mpp_instance_generate_grid(3, 3, 150.0, 2, 0, &mut inst), MppStatus::InvalidArgument);
        assert_eq!(mpp_instance_robot_count(ptr::null()), 0);
        assert!(mpp_plan_to_text(ptr::null()).is_null());
        mpp_instance_free(ptr::null_mut());
        mpp_plan_free(ptr::null_mut());
        mpp_string_free(ptr::null_mut());
    }
}

#[test]
fn generated_instance_round_trips_and_splits() {
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(mpp_instance_generate_grid(4, 4, 0.0, 4, 7, &mut inst), MppStatus::Ok);
        let text = mpp_instance_to_text(inst);
        let again = parse(CStr::from_ptr(text).to_str().unwrap());
        mpp_string_free(text);
        let mut plan = ptr::null_mut();
        let mut value = 0;
        assert_eq!(mpp_solve(again, MppObjective::TotalDistance, 2, 0.0, &mut plan, &mut value), MppStatus::Ok);
        let mut count = 1;
        assert_eq!(mpp_validate(inst, plan, &mut count), MppStatus::Ok);
        assert_eq!(count, 0);
        assert!(value > 0);
        mpp_plan_free(plan);
        mpp_instance_free(again);
        mpp_instance_free(inst);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(mpp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
