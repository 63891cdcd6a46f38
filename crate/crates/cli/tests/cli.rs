use std::process::Command as Process;

use kummerlab_cli::{execute, parse, run, CliError, Format, Verb};
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_kummerlab"))
        .args(args)
        .env_remove("KUMMERLAB_THREADS")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut argv = args.to_vec();
    argv.extend(["--format", "json"]);
    serde_json::from_str(&run(argv).unwrap()).unwrap()
}

#[test]
fn parses_betti_with_default_format() {
    let cmd = parse(["betti", "--n", "2"]).unwrap();
    assert_eq!(cmd.format, Format::Table);
    assert_eq!(cmd.max_n, 64);
    match cmd.verb {
        Verb::Betti(args) => assert_eq!((args.n, args.invariant), (2, false)),
        other => panic!("unexpected verb {other:?}"),
    }
}

#[test]
fn parses_mukai_pair() {
    let cmd = parse([
        "mukai", "pair", "--x", "1,0,0,0,0,0,0,-2", "--y", "1,0,0,0,0,0,0,-2",
    ])
    .unwrap();
    assert_eq!(execute(&cmd).unwrap().render(Format::Table), "4");
}

#[test]
fn rejects_bad_input() {
    assert!(parse(["betti", "--n", "-1"]).is_err());
    assert!(parse(["betti", "--n", "2", "--frobnicate"]).is_err());
    assert!(parse(["mukai", "dual", "--x", "1,2,3"]).is_err());
    assert!(parse(["mukai", "dual", "--x", "1,0,0,0,0,0,0,-2", "--n", "3"]).is_err());
    assert!(parse(["clifford", "gamma"]).is_err());
    assert!(parse(["betti", "--n", "2", "--format", "xml"]).is_err());
}

#[test]
fn documented_outputs() {
    assert_eq!(run(["betti", "--n", "1"]).unwrap(), "1 0 22 0 1");
    assert_eq!(run(["betti", "--n", "1", "--invariant"]).unwrap(), "1 0 7 0 1");
    assert_eq!(run(["betti", "--n", "2"]).unwrap(), "1 0 7 8 108 8 7 0 1");
    assert_eq!(
        run(["betti", "--n", "1", "--format", "csv"]).unwrap(),
        "degree,dimension\n0,1\n2,22\n4,1"
    );
    assert_eq!(run(["clifford", "gamma", "--n", "2"]).unwrap(), "3 3 3 3");
    assert_eq!(run(["clifford", "snf", "--n", "2"]).unwrap(), "1 1 1 1 3 3 3 3");
}

#[test]
fn lsc_json_schema() {
    let doc = json(&["lsc", "--n", "3"]);
    assert_eq!(doc["verb"], "lsc");
    assert_eq!(doc["params"]["n"], 3);
    let r = &doc["result"];
    assert_eq!(r["n"], 3);
    assert_eq!(r["j"], 2);
    assert_eq!(r["bound"], 4);
    assert_eq!(r["proven_degrees_max"], 3);
    assert_eq!(r["min_noninvariant_degree"], 4);
    assert_eq!(r["full_lsc"], false);
    assert!(r.get("middle_noninvariant_dim").is_none());

    let r = &json(&["lsc", "--n", "4"])["result"];
    assert_eq!(r["full_lsc"], true);
    assert_eq!(r["middle_noninvariant_dim"], "624");
}

#[test]
fn betti_and_hodge_json_use_string_dimensions() {
    let doc = json(&["betti", "--n", "2"]);
    let rows = doc["result"]["betti"].as_array().unwrap();
    assert_eq!(rows[4], serde_json::json!([4, "108"]));
    let doc = json(&["hodge", "--n", "2"]);
    let rows = doc["result"]["hodge"].as_array().unwrap();
    assert!(rows.contains(&serde_json::json!([2, 2, "96"])));
    assert!(rows.contains(&serde_json::json!([1, 2, "4"])));
}

#[test]
fn decompose_json_lists_every_partition() {
    let doc = json(&["decompose", "--n", "3"]);
    let summands = doc["result"]["summands"].as_array().unwrap();
    assert_eq!(summands.len(), 5);
    let full = summands.iter().find(|s| s["parts"] == serde_json::json!([4])).unwrap();
    assert_eq!(full["d"], 4);
    assert_eq!(full["copies"], "256");
    assert_eq!(full["offset"], 6);
}

#[test]
fn json_dimensions_match_the_table() {
    let table = run(["betti", "--n", "12"]).unwrap();
    let doc = json(&["betti", "--n", "12"]);
    let from_json: Vec<&str> = doc["result"]["betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[1].as_str().unwrap())
        .collect();
    assert_eq!(from_json.join(" "), table);
}

#[test]
fn every_verb_round_trips_through_json() {
    let cases: &[&[&str]] = &[
        &["betti", "--n", "3"],
        &["hodge", "--n", "3", "--invariant"],
        &["decompose", "--n", "4"],
        &["gamma-profile", "--n", "4"],
        &["lsc", "--n", "5"],
        &["hilbert", "--n", "3"],
        &["moduli", "--n", "2"],
        &["mukai", "pair", "--x", "1,0,0,0,0,0,0,-3", "--y", "0,1,0,0,0,0,0,5"],
        &["mukai", "dual", "--n", "3"],
        &["mukai", "classify", "--x", "0,1,0,0,0,0,0,2"],
        &["mukai", "dim", "--n", "3"],
        &["clifford", "snf", "--n", "4"],
        &["clifford", "gamma", "--v", "1,0,0,0,0,0,0,-3"],
        &["clifford", "check"],
    ];
    for args in cases {
        let mut argv = args.to_vec();
        argv.extend(["--format", "json"]);
        let text = run(argv).unwrap();
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), text, "{args:?}");
        for key in ["verb", "params", "result"] {
            assert!(value.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn domain_errors_are_reported() {
    assert!(matches!(run(["lsc", "--n", "0"]), Err(CliError::Domain(_))));
    assert!(matches!(run(["gamma-profile", "--n", "0"]), Err(CliError::Domain(_))));
    assert!(matches!(
        run(["clifford", "gamma", "--v", "1,0,0,0,0,0,0,0"]),
        Err(CliError::Domain(_))
    ));
    assert!(matches!(run(["betti", "--n", "5", "--max-n", "4"]), Err(CliError::Usage(_))));
    assert!(run(["betti", "--n", "5", "--max-n", "5"]).is_ok());
}

#[test]
fn exit_codes() {
    let (code, out, _) = bin(&["betti", "--n", "1"]);
    assert_eq!((code, out.as_str()), (0, "1 0 22 0 1\n"));

    let (code, _, err) = bin(&["betti", "--n", "-1"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1, "{err}");

    let (code, _, err) = bin(&["lsc", "--n", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("n >= 1"), "{err}");

    let (code, _, _) = bin(&["betti", "--n", "100"]);
    assert_eq!(code, 2);

    let (code, _, _) = bin(&["nonsense"]);
    assert_eq!(code, 2);

    let (code, _, _) = bin(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["decompose", "--n", "12", "--format", "json"];
    let (_, reference, _) = bin(&args);
    for threads in ["1", "3", "8"] {
        let mut argv = args.to_vec();
        argv.extend(["--threads", threads]);
        let (code, out, _) = bin(&argv);
        assert_eq!(code, 0);
        assert_eq!(out, reference, "threads = {threads}");
    }
    let out = Process::new(env!("CARGO_BIN_EXE_kummerlab"))
        .args(["betti", "--n", "9"])
        .env("KUMMERLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), bin(&["betti", "--n", "9"]).1);
}
