use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_roundcone"))
}

fn code(args: &[&str]) -> i32 {
    let out = bin().args(args).output().unwrap();
    out.status.code().unwrap()
}

#[test]
fn success() {
    let out = bin().args(["orthant", "--n", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.7853981633974483"), "{text}");
}

#[test]
fn help_is_not_an_error() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["classify", "--help"]), 0);
}

#[test]
fn bad_input() {
    let bad: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["aperture", "--phi", "0.3"],
        &["aperture", "--phi", "4", "--psi", "1"],
        &[
            "classify",
            "--axis",
            "1,0,x",
            "--subspace",
            "coords:0",
            "--phi",
            "0.1",
        ],
        &[
            "classify",
            "--axis",
            "1,0,1",
            "--subspace",
            "coords:5",
            "--phi",
            "0.1",
        ],
        &["classify", "--axis", "1,0,1", "--subspace", "coords:0,1"],
        &["classify", "--input", "/nonexistent/instance.json"],
        &[
            "classify",
            "--axis",
            "1,0,1",
            "--subspace",
            "coords:0,1",
            "--phi",
            "0.1",
            "--offset",
            "1,0,0",
        ],
        &["orthant", "--n", "1"],
        &["l2-demo", "--alpha", "1.5"],
        &[
            "witness",
            "--kind",
            "border",
            "--axis",
            "1,0,1",
            "--subspace",
            "coords:0,1",
        ],
        &[
            "verify",
            "--axis",
            "1,0,1",
            "--subspace",
            "coords:0,1",
            "--phi",
            "0.1",
            "--samples",
            "0",
        ],
    ];
    for args in bad {
        assert_eq!(code(args), 1, "{args:?}");
    }
}

#[test]
fn regime_violations() {
    let cases: &[&[&str]] = &[
        &["aperture", "--phi", "1.0", "--psi", "0.5"],
        &[
            "witness",
            "--kind",
            "antipodal",
            "--axis",
            "1,0,1",
            "--subspace",
            "coords:0,1",
            "--phi",
            "0.5",
        ],
        &[
            "witness",
            "--kind",
            "equality",
            "--axis",
            "1,0,1",
            "--subspace",
            "coords:0",
            "--phi",
            "0.5",
        ],
        &[
            "cbs-check",
            "--check",
            "implication",
            "--u",
            "1,0,0",
            "--axis",
            "1,0,1",
            "--subspace",
            "coords:0,1",
            "--phi",
            "1.0",
        ],
        &["l2-demo", "--alpha", "0.6", "--grid", "100", "--t", "0.8"],
    ];
    for args in cases {
        assert_eq!(code(args), 2, "{args:?}");
    }
}

#[test]
fn violations_exit_with_three() {
    // A boundary band wide enough to swallow phi > psi predicts a half-space
    // where the true projection is the whole plane.
    let base = [
        "verify",
        "--axis",
        "1,0,1",
        "--subspace",
        "coords:0,1",
        "--phi",
        "0.9",
        "--samples",
        "2000",
    ];
    assert_eq!(code(&base), 0);
    let mut wide = base.to_vec();
    wide.extend(["--angle-tol", "0.2"]);
    assert_eq!(code(&wide), 3);
    let mut negative = base.to_vec();
    negative.extend(["--tol", "-1"]);
    assert_eq!(code(&negative), 1);
}
