use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

const MINIMAL: &str = r#"
[ring]
p = 2
vars = ["x", "y"]

[complex.K]
koszul = ["x", "y"]
"#;

struct Run {
    stdout: String,
    code: i32,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", self.stdout))
    }

    fn error(&self) -> Value {
        self.json()["error"].clone()
    }
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{name}.toml"));
    std::fs::write(&path, text).unwrap();
    path
}

fn frobchi(file: &PathBuf, args: &[&str]) -> Run {
    let (cmd, rest) = args.split_first().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_frobchi"))
        .arg(cmd)
        .arg(file)
        .args(rest)
        .output()
        .unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        code: out.status.code().unwrap(),
    }
}

#[test]
fn minimal_file_parses() {
    let f = write("minimal", MINIMAL);
    let r = frobchi(&f, &["validate"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["complexes"]["K"]["ranks"], json!([1, 2, 1]));
    assert_eq!(v["schema"], json!(1));
}

#[test]
fn chi_of_koszul_over_polynomial_ring() {
    let f = write("chi", MINIMAL);
    let r = frobchi(&f, &["chi", "--X", "K", "--Y", "R"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "{\"chi\":1,\"schema\":1}\n");
}

#[test]
fn dutta_auto_order() {
    let f = write("dutta", MINIMAL);
    let r = frobchi(&f, &["dutta", "--X", "K", "--Y", "R", "--u", "auto", "--emax", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"dutta": "1/1", "u": 0, "components": ["1/1"], "schema": 1}));
}

#[test]
fn numerical_vanishing_of_koszul() {
    let f = write("numvan", MINIMAL);
    let r = frobchi(&f, &["numvan", "--X", "K"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"pass": true, "lhs": 4, "rhs": 4, "schema": 1}));

    let r = frobchi(&f, &["numvan", "--X", "K", "--e", "3"]);
    let v = r.json();
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
    assert_eq!(v["lhs"], json!(64));
    assert!(v.get("witness").is_none());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let f = write("repeat", MINIMAL);
    for args in [
        &["vdim", "--X", "K"][..],
        &["decompose", "--X", "K", "--emax", "3"][..],
        &["homology", "--X", "K", "--format", "table"][..],
    ] {
        let a = frobchi(&f, args);
        let b = frobchi(&f, args);
        assert_eq!(a.code, 0, "{}", a.stdout);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn undefined_reference_is_named() {
    let f = write(
        "undefined",
        &format!("{MINIMAL}\n[complex.T]\ntensor = [\"K\", \"Z\"]\n"),
    );
    let r = frobchi(&f, &["validate"]);
    assert_eq!(r.code, 2);
    let e = r.error();
    assert_eq!(e["code"], json!("undefined_name"));
    assert!(e["message"].as_str().unwrap().contains("\"Z\""));
    assert_eq!(e["line"], json!(10));
    assert_eq!(e["column"], json!(16));

    let r = frobchi(&write("undefined-flag", MINIMAL), &["chi", "--X", "Z"]);
    assert_eq!(r.code, 2);
    assert!(r.error()["message"].as_str().unwrap().contains("\"Z\""));
}

#[test]
fn inhomogeneous_entry_is_located() {
    let text = "[ring]\np = 3\nvars = [\"x\", \"y\", \"u\"]\n\n[complex.D]\nlo = 0\nshifts = [[0], [2]]\ndifferentials = [[[\"x*y - u\"]]]\n";
    let r = frobchi(&write("inhomogeneous", text), &["validate"]);
    assert_eq!(r.code, 2);
    let e = r.error();
    assert_eq!(e["code"], json!("inhomogeneous"));
    assert_eq!((e["line"].clone(), e["column"].clone()), (json!(8), json!(20)));
    let msg = e["message"].as_str().unwrap();
    assert!(msg.contains("\"D\"") && msg.contains("(0, 0)") && msg.contains("d_1"), "{msg}");
}

#[test]
fn nonzero_composite_names_the_complex() {
    let text = "[ring]\np = 2\nvars = [\"x\", \"y\"]\n\n[complex.C]\nlo = 0\nshifts = [[0], [1], [2]]\ndifferentials = [[[\"x\"]], [[\"y\"]]]\n";
    let r = frobchi(&write("composite", text), &["validate"]);
    assert_eq!(r.code, 2);
    let e = r.error();
    assert_eq!(e["code"], json!("not_a_complex"));
    assert!(e["message"].as_str().unwrap().contains("\"C\""));
    assert_eq!(e["line"], json!(5));
}

#[test]
fn unknown_variable_points_into_the_string() {
    let text = format!("{MINIMAL}\n[module.M]\nquotient = [\"x + q\"]\n");
    let r = frobchi(&write("unknown-var", &text), &["validate"]);
    assert_eq!(r.code, 2);
    let e = r.error();
    assert_eq!(e["code"], json!("parse"));
    assert_eq!((e["line"].clone(), e["column"].clone()), (json!(10), json!(18)));
}

#[test]
fn syntax_errors_carry_positions() {
    let r = frobchi(&write("syntax", "[ring]\np = 2\nvars = [\"x\"\n"), &["validate"]);
    assert_eq!(r.code, 2);
    let e = r.error();
    assert_eq!(e["code"], json!("syntax"));
    assert!(e["line"].is_u64());
}

#[test]
fn names_must_be_unique_and_acyclic() {
    let dup = format!("{MINIMAL}\n[module.K]\nquotient = [\"x\"]\n");
    assert_eq!(frobchi(&write("dup", &dup), &["validate"]).error()["code"], json!("duplicate_name"));

    let reserved = format!("{MINIMAL}\n[complex.R]\nkoszul = [\"x\"]\n");
    assert_eq!(frobchi(&write("reserved", &reserved), &["validate"]).error()["code"], json!("duplicate_name"));

    let cyclic = format!("{MINIMAL}\n[complex.A]\nshift = [\"B\", 1]\n\n[complex.B]\ntensor = [\"K\", \"A\"]\n");
    assert_eq!(frobchi(&write("cyclic", &cyclic), &["validate"]).error()["code"], json!("cyclic_definition"));
}

#[test]
fn builtin_constructors() {
    let text = format!(
        "{MINIMAL}\n[complex.S]\nshift = [\"K\", 1]\n\n[complex.F]\nfrobenius = [\"K\", 2]\n\n[complex.KK]\ntensor = [\"K\", \"K\"]\n"
    );
    let f = write("builtins", &text);
    let v = frobchi(&f, &["validate"]).json();
    assert_eq!(v["complexes"]["S"]["lo"], json!(1));
    assert_eq!(v["complexes"]["KK"]["ranks"], json!([1, 4, 6, 4, 1]));
    assert_eq!(frobchi(&f, &["chi", "--X", "S"]).json()["chi"], json!(-1));
    assert_eq!(frobchi(&f, &["chi", "--X", "F"]).json()["chi"], json!(16));
}

#[test]
fn incompatible_pairs_exit_with_3() {
    let text = format!("{MINIMAL}\n[complex.H]\nkoszul = [\"x\"]\n");
    let r = frobchi(&write("incompatible", &text), &["chi", "--X", "H"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.error()["class"], json!("incompatible"));
}

#[test]
fn modules_and_complexes_as_second_argument() {
    let text = format!("{MINIMAL}\n[module.L]\nquotient = [\"x + y\"]\n\n[complex.H]\nkoszul = [\"x\"]\n");
    let f = write("second", &text);
    // K ⊗ R/(x+y) has H_0 = H_1 = k.
    assert_eq!(frobchi(&f, &["chi", "--X", "K", "--Y", "L"]).json()["chi"], json!(0));
    // K(x) against K(y) is K(x, y).
    let text = format!("{text}\n[complex.V]\nkoszul = [\"y\"]\n");
    let f = write("second-complex", &text);
    assert_eq!(frobchi(&f, &["chi", "--X", "H", "--Y", "V"]).json()["chi"], json!(1));
}

#[test]
fn explicit_order_and_options_section() {
    let text = format!("{MINIMAL}\n[options]\nemax = 3\nu = 1\n");
    let f = write("options", &text);
    let v = frobchi(&f, &["decompose", "--X", "K"]).json();
    assert_eq!(v["u"], json!(1));
    assert_eq!(v["components"], json!(["1/1", "0/1"]));
    assert_eq!(v["values"], json!([1, 4, 16, 64]));
    let v = frobchi(&f, &["decompose", "--X", "K", "--u", "0"]).json();
    assert_eq!(v["u"], json!(0));
}

#[test]
fn user_probes_must_be_compatible() {
    let text = format!("{MINIMAL}\n[module.L]\nquotient = [\"x\"]\n\n[complex.H]\nkoszul = [\"x\"]\n");
    let f = write("probes", &text);
    let v = frobchi(&f, &["fixed-point", "--X", "K", "--probes", "R,L", "--e", "2"]).json();
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["verdicts"][1]["probe"], json!("L"));
    let r = frobchi(&f, &["fixed-point", "--X", "H", "--probes", "R"]);
    assert_eq!(r.code, 3);
}

#[test]
fn table_format_shows_the_series() {
    let f = write("table", MINIMAL);
    let r = frobchi(&f, &["dutta", "--X", "K", "--emax", "2", "--format", "table"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert!(lines.iter().any(|l| l.split_whitespace().eq(["c_e", "1", "4", "16"])), "{}", r.stdout);
    assert!(lines.iter().any(|l| l.split_whitespace().eq(["a_i", "1/1"])), "{}", r.stdout);
}

#[test]
fn missing_file_is_an_input_error() {
    let r = frobchi(&PathBuf::from("/nonexistent/problem.toml"), &["validate"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.error()["code"], json!("io"));
}

#[test]
fn exponent_overflow_exits_with_4() {
    let text = format!("{MINIMAL}\n[complex.F]\nfrobenius = [\"K\", 40]\n");
    let r = frobchi(&write("overflow", &text), &["validate"]);
    assert_eq!(r.code, 4);
    assert_eq!(r.error()["code"], json!("exponent_overflow"));
}

#[test]
fn bundled_problems_validate() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let r = frobchi(&path, &["validate"]);
            assert_eq!(r.code, 0, "{}: {}", path.display(), r.stdout);
            seen += 1;
        }
    }
    assert!(seen >= 2);

    let quadric = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems/quadric.toml");
    // The hand-written grid and the builtin constructor agree.
    let a = frobchi(&quadric, &["chi-series", "--X", "K", "--emax", "2"]).json();
    let b = frobchi(&quadric, &["chi-series", "--X", "D", "--emax", "2"]).json();
    assert_eq!(a, b);
    assert_eq!(a["values"], json!([2, 54, 1458]));
}
