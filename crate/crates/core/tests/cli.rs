use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn moufang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moufang"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> (i32, Value) {
    let out = moufang(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

fn as_f64s(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "bool",
        Value::Number(n) if n.is_f64() => "float",
        Value::Number(_) => "int",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// Same keys, same value kinds and same array lengths, recursively.
fn same_shape(a: &Value, b: &Value, path: &str) {
    // An exact zero prints as a float either way, but integers and floats
    // must never trade places.
    assert_eq!(kind(a), kind(b), "{path}");
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let kx: Vec<_> = x.keys().collect();
            let ky: Vec<_> = y.keys().collect();
            assert_eq!(kx, ky, "{path}");
            for k in x.keys() {
                same_shape(&x[k], &y[k], &format!("{path}.{k}"));
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            assert_eq!(x.len(), y.len(), "{path}");
            for (i, (p, q)) in x.iter().zip(y).enumerate() {
                same_shape(p, q, &format!("{path}[{i}]"));
            }
        }
        _ => {}
    }
}

#[test]
fn verify_matches_the_golden_schema() {
    let golden: Value = serde_json::from_str(
        &std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR"))
                .join("tests/fixtures/v1/verify_octonion_seed42_n10.json"),
        )
        .unwrap(),
    )
    .unwrap();
    let (code, fresh) = json_out(&[
        "verify",
        "--loop",
        "octonion",
        "--samples",
        "10",
        "--seed",
        "42",
    ]);
    assert_eq!(code, 0);
    same_shape(&golden, &fresh, "$");
    for key in [
        "tool",
        "loop_spec",
        "seed",
        "samples",
        "conventions",
        "integrability_h_term_corrected",
    ] {
        assert_eq!(golden[key], fresh[key], "{key}");
    }
    let names: Vec<_> = fresh["families"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        names,
        [
            "GLE",
            "CONSTRAINT",
            "MC",
            "LRY",
            "LEMMA",
            "GLE2",
            "INTEGRABILITY",
            "MOUFANG"
        ]
    );
    for f in fresh["families"].as_array().unwrap() {
        let single = ["CONSTRAINT", "MC", "LRY", "LEMMA"].contains(&f["name"].as_str().unwrap());
        assert_eq!(f["argmax_h"].is_null(), single);
        assert_eq!(f.get("argmax_k").is_some(), f["name"] == "MOUFANG");
        assert!(f["max"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn exit_codes_follow_the_outcome() {
    let pass = moufang(&["verify", "--loop", "quaternion", "--samples", "5"]);
    assert_eq!(pass.status.code(), Some(0));

    let fail = moufang(&[
        "verify",
        "--loop",
        "broken:eps=0.01",
        "--families",
        "gle",
        "--samples",
        "20",
    ]);
    assert_eq!(fail.status.code(), Some(1));

    for bad in [
        &["verify", "--loop", "sedenion"][..],
        &["verify", "--loop", "broken:eps=abc"],
        &["verify", "--loop", "octonion", "--families", "NOPE"],
        &["verify", "--loop", "octonion", "--radius", "0.9"],
        &["tensors", "--loop", "quaternion", "--point", "0.9,0.9,0.9"],
        &["tensors", "--loop", "quaternion", "--point", "0,0"],
        &["table", "--algebra", "sedenion"],
        &["frobnicate"],
    ] {
        let out = moufang(bad);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(!out.stderr.is_empty());
    }

    let degenerate = moufang(&["calibrate", "--loops", "abelian:n=3"]);
    assert_eq!(degenerate.status.code(), Some(1));
}

#[test]
fn abelian_residuals_vanish_to_rounding() {
    let (code, r) = json_out(&["verify", "--loop", "abelian:n=3", "--families", "all"]);
    assert_eq!(code, 0);
    assert_eq!(r["pass"], true);
    for f in r["families"].as_array().unwrap() {
        assert!(f["max"].as_f64().unwrap() <= 1e-14, "{}", f["name"]);
    }
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let args = [
        "verify",
        "--loop",
        "broken:eps=0.02",
        "--samples",
        "8",
        "--seed",
        "7",
    ];
    let (_, json) = json_out(&args);
    let csv_out = moufang(&[&args[..], &["--format", "csv"]].concat());
    let mut rdr = csv::Reader::from_reader(&csv_out.stdout[..]);
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["record", "family", "field", "index", "value"]
    );
    let mut checked = 0;
    for row in rdr.records() {
        let row = row.unwrap();
        if &row[0] != "family" {
            continue;
        }
        let fam = json["families"]
            .as_array()
            .unwrap()
            .iter()
            .find(|f| f["name"] == row[1])
            .unwrap();
        let field = &fam[&row[2]];
        let expected = if row[3].is_empty() {
            field.clone()
        } else {
            field[row[3].parse::<usize>().unwrap()].clone()
        };
        match expected {
            Value::Number(n) => {
                let got: f64 = row[4].parse().unwrap();
                assert_eq!(got.to_bits(), n.as_f64().unwrap().to_bits(), "{row:?}");
                checked += 1;
            }
            Value::Bool(b) => assert_eq!(row[4].parse::<bool>().unwrap(), b),
            other => panic!("unexpected {other:?}"),
        }
    }
    assert!(checked > 20);
}

#[test]
fn quaternion_tensors_at_the_identity() {
    let (code, t) = json_out(&["tensors", "--loop", "quaternion", "--point", "0,0,0"]);
    assert_eq!(code, 0);
    for s in 0..3 {
        for j in 0..3 {
            let id = if s == j { 1.0 } else { 0.0 };
            assert_eq!(t["u"][s][j].as_f64().unwrap(), id);
            assert_eq!(t["v"][s][j].as_f64().unwrap(), id);
            assert_eq!(t["w"][s][j].as_f64().unwrap(), -2.0 * id);
            for k in 0..3 {
                let eps = match (s, j, k) {
                    (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                    (0, 2, 1) | (1, 0, 2) | (2, 1, 0) => -1.0,
                    _ => 0.0,
                };
                assert!((t["c"][s][j][k].as_f64().unwrap() + 2.0 * eps).abs() <= 1e-10);
            }
        }
    }
    assert_eq!(t["bracket_sign"], 1);
}

#[test]
fn abelian_tensors_have_no_secondary_part() {
    let (code, t) = json_out(&["tensors", "--loop", "abelian:n=2", "--point", "0.3,0.1"]);
    assert_eq!(code, 0);
    assert_eq!(as_f64s(&t["point"]), [0.3, 0.1]);
    for key in ["c", "u_jk", "v_jk", "w_jk", "y_jk", "lr_jk", "rl_jk"] {
        let flat: Vec<f64> = t[key]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|m| m.as_array().unwrap().iter().flat_map(as_f64s))
            .collect();
        assert!(flat.iter().all(|&x| x == 0.0), "{key}");
    }
}

#[test]
fn negative_point_coordinates_parse() {
    let (code, t) = json_out(&["tensors", "--loop", "affine", "--point", "-0.25,0.5"]);
    assert_eq!(code, 0);
    assert_eq!(as_f64s(&t["point"]), [-0.25, 0.5]);
}

#[test]
fn calibration_report_names_the_unique_ledger() {
    let (code, r) = json_out(&["calibrate", "--loops", "affine,quaternion", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["unique"], true);
    assert_eq!(r["ledger"]["bracket_sign"], 1);
    assert_eq!(r["ledger"]["lemma_sign"], -1);
    let rows = r["table"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows.iter().filter(|row| row["pass"] == true).count(), 1);
    for row in rows {
        assert_eq!(row["loops"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn octonion_table_is_a_signed_latin_square() {
    let (code, t) = json_out(&["table"]);
    assert_eq!(code, 0);
    assert_eq!(t["algebra"], "octonion");
    assert_eq!(t["dim"], 8);
    for i in 0..8 {
        let mut row: Vec<u64> = (0..8).map(|j| t["index"][i][j].as_u64().unwrap()).collect();
        row.sort();
        assert_eq!(row, (0..8).collect::<Vec<_>>());
        // Imaginary units square to -1 and anticommute.
        for j in 1..8 {
            let sij = t["sign"][i][j].as_i64().unwrap();
            let sji = t["sign"][j][i].as_i64().unwrap();
            if i == 0 {
                assert_eq!(sij, 1);
            } else if i == j {
                assert_eq!(sij, -1);
            } else {
                assert_eq!(sij, -sji);
            }
        }
    }
    // e1 e2 = e3
    assert_eq!(
        (t["sign"][1][2].as_i64(), t["index"][1][2].as_u64()),
        (Some(1), Some(3))
    );
}

#[test]
fn identical_flags_produce_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = moufang(&[
            "verify",
            "--loop",
            "broken:eps=0.01",
            "--samples",
            "15",
            "--seed",
            "3",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(1));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
