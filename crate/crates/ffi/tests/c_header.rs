//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "mpp.h"

int main(void) {
    const char *text = "mpp 1\nvertices 3\nedges 3\n0 1\n1 2\n0 2\nrobots 3\n0 1\n1 2\n2 0\n";
    MppInstance *inst = NULL;
    if (mpp_instance_parse(text, &inst) != MPP_STATUS_OK) return 10;
    MppPlan *plan = NULL;
    size_t value = 0;
    if (mpp_solve(inst, MPP_OBJECTIVE_MAKESPAN, 1, 0.0, &plan, &value) != MPP_STATUS_OK) return 11;
    size_t violations = 1;
    if (mpp_validate(inst, plan, &violations) != MPP_STATUS_OK || violations != 0) return 12;
    MppStatus bad = mpp_instance_parse(NULL, &inst);
    if (bad != MPP_STATUS_INVALID_ARGUMENT || mpp_last_error_message() == NULL) return 13;
    printf("makespan %zu\n", value);
    mpp_plan_free(plan);
    mpp_instance_free(inst);
    return 0;
}
"#;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// `target/<profile>` holding this test binary.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(manifest().join("include/mpp.h")).unwrap();
    for name in [
        "mpp_instance_parse",
        "mpp_instance_generate_grid",
        "mpp_solve",
        "mpp_validate",
        "mpp_plan_position",
        "mpp_last_error_message",
        "MPP_STATUS_INTERNAL = 6",
        "typedef struct MppPlan MppPlan;",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = profile_dir().join("libmpp_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest().join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "makespan 1\n");
}
