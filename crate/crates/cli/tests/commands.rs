use std::process::{Command, Output};

fn quiverlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = quiverlab(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    quiverlab(args).status.code().unwrap()
}

const FAN: &str = r#"{"n":3,"arrows":[[2,1],[3,1]]}"#;

#[test]
fn mutate_fan_at_its_sink() {
    let out = stdout(&["mutate", "--quiver", FAN, "--at", "1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!({"n": 3, "arrows": [[1, 2], [1, 3]]}));
    assert_eq!(stdout(&["mutate", "--quiver", FAN, "--at", "1,1"]).trim(), FAN);
}

#[test]
fn mutate_matrix_input_stays_a_matrix() {
    let out = stdout(&["mutate", "--quiver", "[[0,1],[-1,0]]", "--at", "1"]);
    assert_eq!(out.trim(), "[[0,-1],[1,0]]");
}

#[test]
fn named_quivers_match_json() {
    let named = stdout(&["mutate", "--type", "A3", "--orientation", "fan", "--at", "2"]);
    assert_eq!(named, stdout(&["mutate", "--quiver", FAN, "--at", "2"]));
    let listed = stdout(&["mutate", "--type", "a3", "--orientation", "2>1,3->1", "--at", "2"]);
    assert_eq!(listed, named);
    let linear = stdout(&["mutate", "--type", "A3", "--at", "1"]);
    assert_eq!(linear, stdout(&["mutate", "--type", "A3", "--orientation", "linear", "--at", "1"]));
}

#[test]
fn seed_walk_chain() {
    let out = stdout(&["seed-walk", "--quiver", FAN, "--at", "1", "--at", "2", "--at", "3"]);
    assert_eq!(
        out,
        "(x2*x3 + 1)/x1\n(x2*x3 + x1 + 1)/(x1*x2)\n(x2*x3 + x1 + 1)/(x1*x3)\n"
    );
    let flat = stdout(&["seed-walk", "--quiver", FAN, "--at", "1", "--flat"]);
    assert_eq!(flat.lines().next(), Some("x1^-1*x2*x3 + x1^-1"));
}

#[test]
fn exchange_graph_counts() {
    assert_eq!(
        stdout(&["exchange-graph", "--type", "A3"]),
        "seeds: 14\nvariables: 9\nedges: 21\n"
    );
    let a4 = stdout(&["exchange-graph", "--type", "A4", "--orientation", "fan"]);
    assert!(a4.starts_with("seeds: 42\nvariables: 14\n"));
    let dot = stdout(&["exchange-graph", "--type", "A2", "--dot", "-"]);
    assert!(dot.starts_with("seeds: 5\n"));
    assert_eq!(dot.matches(" -- ").count(), 5);
    assert_eq!(code(&["exchange-graph", "--type", "kronecker", "--max-depth", "6"]), 1);
}

#[test]
fn characters() {
    assert_eq!(stdout(&["char", "--quiver", FAN, "--module", "S[1]"]), "(x2*x3 + 1)/x1\n");
    assert_eq!(stdout(&["char", "--quiver", FAN, "--module", "P[2][1]"]), "x2\n");
    assert_eq!(
        stdout(&["char", "--type", "kronecker", "--module", "I[1]"]),
        "(x1^4 + 2*x1^2 + x2^2 + 1)/(x1*x2^2)\n"
    );
    let table: serde_json::Value =
        serde_json::from_str(&stdout(&["char", "--type", "A2", "--table"])).unwrap();
    assert_eq!(table["M[1,2]"], "(x1 + x2 + 1)/(x1*x2)");
    assert_eq!(code(&["char", "--type", "kronecker", "--module", "M[1,2]"]), 1);
    assert_eq!(code(&["char", "--type", "A2", "--module", "Q[1]"]), 1);
}

#[test]
fn silting_listing_and_exchange() {
    let pairs = stdout(&["silting", "--type", "A3"]);
    assert_eq!(pairs.lines().count(), 14);
    assert!(pairs.lines().any(|l| l == "T=[M[1,1],M[3,3]];P=[2]"));
    assert_eq!(stdout(&["silting", "--type", "A3", "--tilting"]).lines().count(), 5);
    let out = stdout(&[
        "silting",
        "--type",
        "A3",
        "--complete",
        "T=[M[1,1],M[3,3]];P=[2]",
        "--remove",
        "P[2][1]",
    ]);
    assert_eq!(out, "M[1,3]\nT=[M[1,1],M[1,3],M[3,3]];P=[]\n");
    let graph: serde_json::Value =
        serde_json::from_str(&stdout(&["silting", "--type", "A3", "--graph"])).unwrap();
    assert_eq!(graph["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(code(&["silting", "--type", "kronecker"]), 1);
}

#[test]
fn chambers_and_membership() {
    let out = stdout(&["chambers", "--type", "A2", "--theta", "-1,-1", "--theta", "1,0", "--theta", "1/2,-1"]);
    assert_eq!(
        out,
        "chambers: 5\n-1,-1: chamber T=[];P=[1,2]\n1,0: wall M[2,2]\n1/2,-1: chamber T=[M[1,1]];P=[2]\n"
    );
    assert_eq!(stdout(&["chambers", "--type", "A3"]), "chambers: 14\n");
    assert_eq!(code(&["chambers", "--type", "A2", "--theta", "1,x"]), 2);
    assert_eq!(code(&["chambers", "--type", "A2", "--theta", "1,2,3"]), 1);
}

#[test]
fn stability_pictures() {
    let svg = stdout(&["stability-svg", "--type", "A2"]);
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let path = std::env::temp_dir().join(format!("quiverlab-stab-{}.svg", std::process::id()));
    let quiet = stdout(&["stability-svg", "--type", "A3", "-o", path.to_str().unwrap()]);
    assert!(quiet.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("g-vector"));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&["stability-svg", "--type", "A4"]), 1);
}

#[test]
fn green_sequences() {
    assert_eq!(stdout(&["mgs", "--type", "A2", "--orientation", "1>2"]), "1 2 1\n2 1\n");
    assert_eq!(stdout(&["mgs", "--quiver", r#"{"n":2,"arrows":[[2,1]]}"#]), "1 2\n2 1 2\n");
    let traced = stdout(&["mgs", "--type", "A2", "--orientation", "1>2", "--trace"]);
    assert!(traced.contains(" 0  1\n-1  0\n-- --\n 1  0\n 0  1\n"));
    let out = quiverlab(&["mgs", "--type", "kronecker", "--max-depth", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1 2\n");
}

#[test]
fn barcodes() {
    assert_eq!(stdout(&["barcode", "3,4,2"]), "M[2,2] + M[1,2] + 2*M[1,3]\n");
    assert_eq!(stdout(&["barcode", "0,0"]), "0\n");
    let with_svg = stdout(&["barcode", "3,4,2", "--svg", "-"]);
    assert_eq!(with_svg.matches("class=\"bar\"").count(), 4);
    assert_eq!(code(&["barcode", "3,-1,2"]), 1);
    assert_eq!(code(&["barcode", "3,x"]), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["mutate", "--quiver", FAN]), 2);
    assert_eq!(code(&["mutate", "--quiver", FAN, "--at", "1", "--bogus"]), 2);
    assert_eq!(code(&["mutate", "--quiver", FAN, "--type", "A3", "--at", "1"]), 2);
    assert_eq!(code(&["mutate", "--type", "B3", "--at", "1"]), 2);
    assert_eq!(code(&["mutate", "--type", "kronecker", "--orientation", "fan", "--at", "1"]), 2);
    assert_eq!(code(&["mutate", "--type", "A3", "--orientation", "sideways", "--at", "1"]), 2);
    assert_eq!(code(&["mutate", "--quiver", FAN, "--at", "4"]), 1);
    assert_eq!(code(&["mutate", "--quiver", r#"{"n":2,"arrows":[[1,1]]}"#, "--at", "1"]), 1);
    assert_eq!(code(&["mutate", "--quiver", "{oops", "--at", "1"]), 1);
    assert_eq!(code(&["serve", "--host", "not-an-ip"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &["exchange-graph", "--type", "A3", "--orientation", "fan", "--dot", "-"],
        &["silting", "--type", "A4", "--json"],
        &["stability-svg", "--type", "A3"],
        &["mgs", "--type", "A3", "--trace"],
    ];
    for args in runs {
        let first = quiverlab(args);
        assert!(first.status.success());
        assert_eq!(first.stdout, quiverlab(args).stdout, "{args:?}");
    }
}

#[test]
fn quiver_from_file() {
    let path = std::env::temp_dir().join(format!("quiverlab-q-{}.json", std::process::id()));
    std::fs::write(&path, FAN).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(
        stdout(&["mutate", "--quiver", &arg, "--at", "1"]),
        stdout(&["mutate", "--quiver", FAN, "--at", "1"])
    );
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&["mutate", "--quiver", &arg, "--at", "1"]), 1);
}
