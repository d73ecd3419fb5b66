use std::path::PathBuf;
use std::process::Command;

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/graphalex.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "ga_diagram_parse",
        "ga_diagram_free",
        "ga_gl11",
        "ga_alexander",
        "ga_compare",
        "ga_relations",
        "ga_last_error_message",
        "ga_string_free",
        "ga_version",
        "GA_STATUS_CHECK_FAILED = 7",
        "typedef struct GaDiagram GaDiagram",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a small C client against the static library.
#[test]
fn c_client() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; header compile check not run");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libgraphalex_ffi.a");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("client.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "graphalex.h"
int main(void) {
    const char *theta = "morse v1\nedge a 1 1\nedge b 1 1\nedge c 2 1\ncut c up\nslice 0 split c a b\nslice 0 merge a b c\n";
    GaDiagram *d = NULL;
    if (ga_diagram_parse(theta, &d) != GA_STATUS_OK) return 10;
    char *out = NULL;
    if (ga_compare(d, &out) != GA_STATUS_OK) return 11;
    int ok = strstr(out, "\"equal\":true") != NULL;
    ga_string_free(out);
    ga_diagram_free(d);
    if (ga_diagram_parse("nonsense", &d) != GA_STATUS_PARSE) return 12;
    if (strlen(ga_last_error_message()) == 0) return 13;
    puts(ga_version());
    return ok ? 0 : 14;
}
"#,
    )
    .unwrap();
    let bin = tmp.join("client");
    let mut cmd = Command::new(cc);
    cmd.arg("-std=c99").arg("-Wall").arg("-Werror").arg("-I").arg(header().parent().unwrap()).arg(&src);
    if lib.exists() {
        cmd.arg(&lib).args(["-lpthread", "-ldl", "-lm"]).arg("-o").arg(&bin);
    } else {
        eprintln!("{} not built; checking the header only", lib.display());
        cmd.arg("-fsyntax-only");
    }
    let st = cmd.status().unwrap();
    assert!(st.success(), "C compile failed");
    if lib.exists() {
        let st = Command::new(&bin).status().unwrap();
        assert_eq!(st.code(), Some(0));
    }
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc);
        }
    }
    Err(())
}
