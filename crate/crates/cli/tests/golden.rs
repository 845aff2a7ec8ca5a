use std::fs;
use std::path::PathBuf;

use hyperdec::run_cli_with_input;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("hyperdec").chain(args.iter().copied());
    let code = run_cli_with_input(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

#[test]
fn golden_outputs() {
    let cases = fs::read_to_string(dir().join("cases.txt")).unwrap();
    let mut failures = Vec::new();
    for line in cases.lines().filter(|l| !l.trim().is_empty()) {
        let (name, args) = line.split_once('\t').unwrap();
        let args: Vec<&str> = args.split('|').collect();
        let (code, out, err) = run(&args, "");
        assert_eq!(code, 0, "{name}: {err}");
        let want = fs::read_to_string(dir().join("golden").join(format!("{name}.txt")))
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        if out != want {
            failures.push(format!("{name}:\n--- want\n{want}--- got\n{out}"));
        }
        // byte-identical on a second run
        assert_eq!(run(&args, "").1, out, "{name} is not deterministic");
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn reference_examples() {
    let (code, out, _) = run(&["eval", "nines(H)", "--lightstone"], "");
    assert_eq!(code, 0);
    assert!(out.contains(".999\u{2026};\u{2026}9\u{302}"));
    assert!(out.contains("compare to 1: Less"));
    assert_eq!(run(&["st", "nines(H)"], "").1, "1\n");
    let out = run(&["newton", "log(x)", "--x0", "1/2", "--steps", "8", "--display", "6"], "").1;
    assert!(out.ends_with("final display: 0.999999\n"), "{out}");
    assert_eq!(run(&["eval", "nines(4)"], "").1, "9999/10000\ncompare to 1: Less\n");
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["st", "H"], "");
    assert_eq!(code, 1);
    assert!(err.contains("infinite"));
    assert_eq!(run(&["floor", "1"], "").0, 2);
    assert_eq!(run(&["eval", "1 +"], "").0, 2);
    let (code, _, err) = run(&["eval", "x + 1"], "");
    assert_eq!(code, 2);
    assert!(err.contains("unknown identifier `x`"));
    assert_eq!(run(&["eval", "floor(H/3)"], "").0, 1);
    assert_eq!(run(&["eval", "exp(1)"], "").0, 1);
    assert_eq!(run(&["--mode", "float", "eval", "exp(1)"], "").0, 0);
    assert_eq!(run(&["--prec", "3", "eval", "1"], "").0, 2);
    assert_eq!(run(&["microscope", "--center", "1", "--scale=-eps", "--point", "1"], "").0, 1);
    assert_eq!(run(&["--help"], "").0, 0);
}

#[test]
fn json_envelope() {
    let (code, out, _) = run(&["--json", "eval", "nines(H)"], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["value"], "1 - eps");
    assert_eq!(v["lightstone"], ".999\u{2026};\u{2026}9\u{302}");
    assert_eq!(v["flags"]["truncated"], false);
    let (code, out, _) = run(&["--json", "--mode", "float", "eval", "exp(eps)"], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["flags"]["truncated"], true);
    let (code, out, _) = run(&["--json", "st", "H"], "");
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "NotFinite");
}

#[test]
fn repl_session() {
    let script = "1 - eps\n# comment\nst(nines(H))\n:mode float\nsqrt(4)\nbogus\n:terms 1\n:quit\n1\n";
    let (code, out, err) = run(&["repl"], script);
    assert_eq!(code, 0);
    assert_eq!(out, "1 - eps\n1\n2\n");
    assert!(err.contains("unknown identifier `bogus`"));
    assert!(err.contains("at least 2 retained terms"));
}
