//! The recorded command corpus and the in-process replay harness, shared by
//! the golden test and the acceptance gate.

use std::io::Write as _;

use semiord_cli::run;

pub struct Case {
    pub args: &'static [&'static str],
    pub exit: i32,
    pub stdout: &'static str,
    pub stderr: &'static str,
}

pub fn invoke(args: &[String]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let full: Vec<String> = std::iter::once("semiord".to_string())
        .chain(args.iter().cloned())
        .collect();
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("stdout is UTF-8"),
        String::from_utf8(err).expect("stderr is UTF-8"),
    )
}

pub fn check(label: String, args: &[String], case: &Case) {
    let (code, stdout, stderr) = invoke(args);
    assert_eq!(code, case.exit, "{label}: exit code\nstderr: {stderr}");
    assert_eq!(stdout, case.stdout, "{label}: stdout bytes");
    assert_eq!(stderr, case.stderr, "{label}: stderr bytes");
    // Identical inputs must reproduce identical bytes.
    let (again_code, again_out, again_err) = invoke(args);
    assert_eq!((again_code, &again_out, &again_err), (code, &stdout, &stderr), "{label}: rerun");
}

pub const CASES: &[Case] = &[
    Case {
        args: &["cmp", "rational", "1/3", "1/2"],
        exit: 0,
        stdout: "{\"outcome\":\"Less\"}\n",
        stderr: "",
    },
    Case {
        args: &["cmp", "rational", "1/2", "1/3"],
        exit: 0,
        stdout: "{\"outcome\":\"Greater\"}\n",
        stderr: "",
    },
    Case {
        args: &["cmp", "rational", "2/4", "1/2"],
        exit: 0,
        stdout: "{\"outcome\":\"Equal\"}\n",
        stderr: "",
    },
    Case {
        args: &["cmp", "dual:rational", "1/3", "1/2"],
        exit: 0,
        stdout: "{\"outcome\":\"Greater\"}\n",
        stderr: "",
    },
    Case {
        args: &["cmp", "lexz2", "(0,5)", "(1,-100)"],
        exit: 0,
        stdout: "{\"outcome\":\"Less\"}\n",
        stderr: "",
    },
    Case {
        args: &["cmp", "heisenberg", "(1,2,3)", "(1,2,2)"],
        exit: 0,
        stdout: "{\"outcome\":\"Greater\"}\n",
        stderr: "",
    },
    Case {
        args: &["--budget-level", "8", "cmp", "rational", "1", "1"],
        exit: 0,
        stdout: "{\"outcome\":\"Equal\"}\n",
        stderr: "",
    },
    Case {
        args: &["sign", "rational", "-5/8"],
        exit: 0,
        stdout: "{\"sign\":\"Negative\"}\n",
        stderr: "",
    },
    Case {
        args: &["sign", "naturals", "3"],
        exit: 0,
        stdout: "{\"sign\":\"Positive\"}\n",
        stderr: "",
    },
    Case {
        args: &["sign", "dyadic", "0"],
        exit: 0,
        stdout: "{\"sign\":\"Identity\"}\n",
        stderr: "",
    },
    Case {
        args: &["embed", "rational", "--base", "1", "--level", "4", "1/3"],
        exit: 0,
        stdout: "{\"mantissa\":\"5\",\"level\":4}\n",
        stderr: "",
    },
    Case {
        args: &["embed", "rational", "--base", "1", "--level", "10", "1/3"],
        exit: 0,
        stdout: "{\"mantissa\":\"341\",\"level\":10}\n",
        stderr: "",
    },
    Case {
        args: &["embed", "rational", "--base", "1/2", "--level", "3", "2"],
        exit: 0,
        stdout: "{\"mantissa\":\"32\",\"level\":3}\n",
        stderr: "",
    },
    Case {
        args: &["embed", "quadratic(0,1,2)", "--base", "a", "--level", "10", "b"],
        exit: 0,
        stdout: "{\"mantissa\":\"1448\",\"level\":10}\n",
        stderr: "",
    },
    Case {
        args: &["embed", "rational", "--base", "-1", "--level", "4", "-7/3"],
        exit: 0,
        stdout: "{\"mantissa\":\"37\",\"level\":4}\n",
        stderr: "",
    },
    Case {
        args: &["embed", "dyadic", "--base", "1", "--level", "6", "5/16"],
        exit: 0,
        stdout: "{\"mantissa\":\"20\",\"level\":6}\n",
        stderr: "",
    },
    Case {
        args: &["anomalous", "lexz2", "(1,1)", "(1,0)", "--depth", "64"],
        exit: 0,
        stdout: "{\"verdict\":\"AnomalousUpTo\",\"depth\":64}\n",
        stderr: "",
    },
    Case {
        args: &["anomalous", "rational", "1/2", "1/3"],
        exit: 0,
        stdout: "{\"verdict\":\"NotAnomalous\",\"witness\":2}\n",
        stderr: "",
    },
    Case {
        args: &["anomalous", "rational", "-1/3", "-1/2"],
        exit: 0,
        stdout: "{\"verdict\":\"NotAnomalous\",\"witness\":2}\n",
        stderr: "",
    },
    Case {
        args: &["anomalous", "naturals", "3", "2", "--depth", "8"],
        exit: 0,
        stdout: "{\"verdict\":\"NotAnomalous\",\"witness\":2}\n",
        stderr: "",
    },
    Case {
        args: &["floor", "rational", "7/3", "2/3"],
        exit: 0,
        stdout: "{\"floor\":\"3\"}\n",
        stderr: "",
    },
    Case {
        args: &["floor", "naturals", "7", "2"],
        exit: 0,
        stdout: "{\"floor\":\"3\"}\n",
        stderr: "",
    },
    Case {
        args: &["floor", "lexz2", "(3,4)", "(1,0)"],
        exit: 0,
        stdout: "{\"floor\":\"3\"}\n",
        stderr: "",
    },
    Case {
        args: &["positivize", "rational", "-5/2", "--step", "1"],
        exit: 0,
        stdout: "{\"count\":\"3\"}\n",
        stderr: "",
    },
    Case {
        args: &["positivize", "rational", "1/2", "--step", "1"],
        exit: 0,
        stdout: "{\"count\":\"0\"}\n",
        stderr: "",
    },
    Case {
        args: &["validate", "rational", "--count", "10"],
        exit: 0,
        stdout: "{\"backend\":\"rational\",\"elements\":10,\"pairs\":45,\"triples\":1000,\"violations\":0,\"passed\":true}\n",
        stderr: "",
    },
    Case {
        args: &["validate", "heisenberg", "--count", "12"],
        exit: 0,
        stdout: "{\"backend\":\"heisenberg\",\"elements\":12,\"pairs\":66,\"triples\":1728,\"violations\":0,\"passed\":true}\n",
        stderr: "",
    },
    Case {
        args: &["validate", "dual:lexz2", "--count", "8"],
        exit: 0,
        stdout: "{\"backend\":\"dual:lexz2\",\"elements\":8,\"pairs\":28,\"triples\":512,\"violations\":0,\"passed\":true}\n",
        stderr: "",
    },
    Case {
        args: &["validate", "naturals", "--count", "10", "--seed", "7"],
        exit: 0,
        stdout: "{\"backend\":\"naturals\",\"elements\":10,\"pairs\":45,\"triples\":1000,\"violations\":0,\"passed\":true}\n",
        stderr: "",
    },
    Case {
        args: &[
            "coprod-cmp",
            "--member", "rational:1",
            "--member", "rational:1",
            "--x", "0=1/2",
            "--y", "0=1/2",
            "--y", "1=1/3",
        ],
        exit: 0,
        stdout: "{\"verdict\":\"Precedes\",\"witness\":3}\n",
        stderr: "",
    },
    Case {
        args: &[
            "coprod-cmp",
            "--member", "rational:1",
            "--member", "rational:2",
            "--x", "0=1",
            "--y", "1=2",
        ],
        exit: 0,
        stdout: "{\"verdict\":\"IncomparableUpTo\",\"level\":64}\n",
        stderr: "",
    },
    Case {
        args: &["coprod-cmp", "--member", "rational:1", "--x", "0=2/3", "--y", "0=1/3"],
        exit: 0,
        stdout: "{\"verdict\":\"Succeeds\",\"witness\":3}\n",
        stderr: "",
    },
    Case {
        args: &["lambda", "--source", "rational:1", "--target", "rational:1", "--image", "3"],
        exit: 0,
        stdout: "{\"mantissa\":\"786431\",\"level\":18,\"ulps\":\"2\"}\n",
        stderr: "",
    },
    Case {
        args: &[
            "lambda",
            "--source", "rational:2",
            "--target", "rational:2",
            "--image", "5",
            "--level", "16",
        ],
        exit: 0,
        stdout: "{\"mantissa\":\"655359\",\"level\":18,\"ulps\":\"2\"}\n",
        stderr: "",
    },
    Case {
        args: &[
            "lambda",
            "--source", "naturals:1",
            "--target", "rational:1",
            "--image", "1/3",
            "--level", "10",
        ],
        exit: 0,
        stdout: "{\"mantissa\":\"1365\",\"level\":12,\"ulps\":\"1\"}\n",
        stderr: "",
    },
    Case {
        args: &["mul", "rational", "--base", "1", "2/3", "3/5", "--level", "16"],
        exit: 0,
        stdout: "{\"mantissa\":\"104857\",\"level\":18,\"ulps\":\"1\"}\n",
        stderr: "",
    },
    Case {
        args: &["mul", "rational", "--base", "1", "-1/2", "1/2", "--level", "16"],
        exit: 0,
        stdout: "{\"mantissa\":\"-65537\",\"level\":18,\"ulps\":\"2\"}\n",
        stderr: "",
    },
    Case {
        args: &["inv", "rational", "--base", "1", "4", "--level", "16"],
        exit: 0,
        stdout: "{\"mantissa\":\"65535\",\"level\":18,\"ulps\":\"2\"}\n",
        stderr: "",
    },
    Case {
        args: &["inv", "rational", "--base", "1", "2/3", "--level", "16"],
        exit: 0,
        stdout: "{\"mantissa\":\"393215\",\"level\":18,\"ulps\":\"2\"}\n",
        stderr: "",
    },
    Case {
        args: &["sup", "rational", "--base", "1", "1/3", "--level", "10"],
        exit: 0,
        stdout: "{\"element\":\"341/1024\"}\n",
        stderr: "",
    },
    Case {
        args: &["sup", "rational", "--base", "1", "-1/3", "--level", "10"],
        exit: 0,
        stdout: "{\"element\":\"-341/1024\"}\n",
        stderr: "",
    },
    Case {
        args: &["sup", "rational", "--base", "1", "3/4", "--level", "10"],
        exit: 0,
        stdout: "{\"element\":\"3/4\"}\n",
        stderr: "",
    },
    Case {
        args: &["sup", "quadratic(0,1,2)", "--base", "a", "b", "--level", "10"],
        exit: 0,
        stdout: "{\"element\":\"181/128\"}\n",
        stderr: "",
    },
    Case {
        args: &["laws", "rational", "--base", "1", "--count", "8", "--level", "20"],
        exit: 0,
        stdout: "{\"level\":20,\"samples\":8,\"checks\":27,\"violations\":0,\"passed\":true}\n",
        stderr: "",
    },
    Case {
        args: &["--format", "text", "embed", "rational", "--base", "1", "--level", "4", "1/3"],
        exit: 0,
        stdout: "mantissa: 5\nlevel: 4\n",
        stderr: "",
    },
    Case {
        args: &["--format", "text", "cmp", "rational", "1/3", "1/2"],
        exit: 0,
        stdout: "Less\n",
        stderr: "",
    },
    // Documented error exits: 2 malformed input, 3 budget, 4 precondition.
    Case {
        args: &["cmp", "rational", "1/x", "1/2"],
        exit: 2,
        stdout: "",
        stderr: "error: parse error at line 1, column 3: expected a denominator\n",
    },
    Case {
        args: &["cmp", "nosuch", "1", "2"],
        exit: 2,
        stdout: "",
        stderr: "error: invalid backend descriptor: unknown backend 'nosuch'\n",
    },
    Case {
        args: &["coprod-cmp", "--member", "rational:1", "--x", "x=1/2", "--y", "0=1"],
        exit: 2,
        stdout: "",
        stderr: "error: bad member index 'x' in 'x=1/2'\n",
    },
    Case {
        args: &["floor", "lexz2", "(1,0)", "(0,1)"],
        exit: 3,
        stdout: "",
        stderr: "error: budget exhausted: gallop doubling exceeded 128 steps\n",
    },
    Case {
        args: &["--budget-gallop", "1", "floor", "rational", "1000000", "1"],
        exit: 3,
        stdout: "",
        stderr: "error: budget exhausted: gallop doubling exceeded 1 steps\n",
    },
    Case {
        args: &["anomalous", "rational", "1/3", "1/2"],
        exit: 4,
        stdout: "",
        stderr: "error: precondition violated: anomalous-pair scan needs x > y\n",
    },
    Case {
        args: &["inv", "rational", "--base", "1", "0", "--level", "8"],
        exit: 4,
        stdout: "",
        stderr: "error: cannot separate enclosure from zero within 64 refinement levels\n",
    },
    Case {
        args: &["embed", "lexz2", "--base", "(1,0)", "--level", "4", "(0,1)"],
        exit: 4,
        stdout: "",
        stderr: "error: precondition violated: rank measurements require a backend with no anomalous pairs\n",
    },
    Case {
        args: &["lambda", "--source", "rational:1", "--target", "rational:1", "--image", "0"],
        exit: 4,
        stdout: "",
        stderr: "error: precondition violated: the basepoint image must not be the identity\n",
    },
    Case {
        args: &["sup", "rational", "--base", "1", "1/3", "--level", "4", "--unit", "-1"],
        exit: 4,
        stdout: "",
        stderr: "error: precondition violated: supremum approximation needs a dyadic backend with a positive basepoint\n",
    },
];

pub const WORKSPACE_DOC: &str = r#"
[backends.q]
kind = "rational"

[backends.root2]
kind = "quadratic"
p = "0"
q = "1"
d = 2

[points.unit]
backend = "q"
base = "1"

[points.double]
backend = "q"
base = "2"

[families.pair]
members = ["unit", "unit"]
"#;

pub const WORKSPACE_CASES: &[Case] = &[
    Case {
        args: &["cmp", "q", "1/3", "1/2"],
        exit: 0,
        stdout: "{\"outcome\":\"Less\"}\n",
        stderr: "",
    },
    Case {
        args: &["embed", "root2", "--base", "a", "--level", "4", "b"],
        exit: 0,
        stdout: "{\"mantissa\":\"22\",\"level\":4}\n",
        stderr: "",
    },
    Case {
        args: &["lambda", "--source", "double", "--target", "double", "--image", "5"],
        exit: 0,
        stdout: "{\"mantissa\":\"655359\",\"level\":18,\"ulps\":\"2\"}\n",
        stderr: "",
    },
    Case {
        args: &["coprod-cmp", "--family", "pair", "--x", "0=1/2", "--y", "0=1/3", "--y", "1=1/4"],
        exit: 0,
        stdout: "{\"verdict\":\"Precedes\",\"witness\":5}\n",
        stderr: "",
    },
    Case {
        args: &["coprod-cmp", "--family", "nope", "--x", "0=1", "--y", "0=2"],
        exit: 2,
        stdout: "",
        stderr: "error: unknown workspace family 'nope'\n",
    },
];

/// Replays the plain corpus; panics on any byte or exit-code mismatch and
/// returns the exit codes exercised.
pub fn run_main_corpus() -> Vec<i32> {
    assert!(CASES.len() >= 30, "corpus must stay at thirty-plus cases");
    let mut codes = Vec::new();
    for (i, case) in CASES.iter().enumerate() {
        let args: Vec<String> = case.args.iter().map(|s| s.to_string()).collect();
        check(format!("case {i} {:?}", case.args), &args, case);
        codes.push(case.exit);
    }
    codes
}

/// Replays the workspace-backed corpus against a fresh copy of the document.
pub fn run_workspace_corpus() -> Vec<i32> {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(WORKSPACE_DOC.as_bytes()).expect("write doc");
    let path = file.path().to_str().expect("UTF-8 path").to_string();
    let mut codes = Vec::new();
    for (i, case) in WORKSPACE_CASES.iter().enumerate() {
        let mut args = vec!["--workspace".to_string(), path.clone()];
        args.extend(case.args.iter().map(|s| s.to_string()));
        check(format!("workspace case {i} {:?}", case.args), &args, case);
        codes.push(case.exit);
    }
    codes
}
