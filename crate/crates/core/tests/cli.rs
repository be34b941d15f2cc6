//! The installed binary: documented invocations, exit codes and the error
//! stream.

use std::process::Command;

use serde_json::Value;

fn lcscoh(args: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lcscoh")).args(args.split_whitespace()).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn h2_with_all_routes() {
    let (code, out, err) = lcscoh("cohomology --p 2 --nu 1 --eta 2 --coeff 2 --degree 2 --method all");
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let row = &v["results"][0];
    assert_eq!(row["invariant_factors"], serde_json::json!([2, 2, 2]));
    assert!(row["agreement"].as_array().unwrap().iter().all(|a| a["agree"] == true));
    let (_, tsv, _) = lcscoh("cohomology --p 2 --nu 1 --eta 2 --coeff 2 --degree 2 --method all --output tsv");
    assert_eq!(tsv, "2\t1\t2\t[2]\t2\t[2,2,2]\tall-agree\n");
}

#[test]
fn h1_default_method() {
    let (code, out, _) = lcscoh("cohomology --p 3 --nu 1 --eta 1 --coeff 9 --degree 1");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"][0]["invariant_factors"], serde_json::json!([3]));
    assert_eq!(v["job"]["method"], "all");
}

#[test]
fn brute_force_extensions() {
    let (code, out, _) = lcscoh("extensions --p 2 --nu 1 --eta 1 --coeff 2 --enumerate --method brute");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let row = &v["results"][0];
    assert_eq!(row["class_count"], 4);
    let reps = row["classes"].as_array().unwrap();
    assert_eq!(reps.len(), 4);
    // The first class met is the split extension.
    let all_zero = |t: &Value| {
        t.as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|e| e["coords"].as_array().unwrap().iter().all(|c| c == 0))
    };
    assert!(all_zero(&reps[0]["representative"]["xi1"]));
    assert!(all_zero(&reps[0]["representative"]["xi2"]));
}

#[test]
fn exit_codes_and_structured_errors() {
    let (code, out, err) = lcscoh("cohomology --p 6 --nu 1 --eta 1 --coeff 2");
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "domain");

    let (code, _, err) = lcscoh("cohomology --p 2 --nu 1 --eta 1 --coeff 2 --bogus");
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "usage");

    let (code, _, err) = lcscoh("extensions --p 2 --nu 1 --eta 2 --coeff 4 --method brute");
    assert_eq!(code, 2);
    assert!(err.contains("out_of_scope"));
}

#[test]
fn verify_suite_is_reproducible() {
    let a = lcscoh("verify --p 2 --nu 2 --eta 3 --coeff 2,4 --seed 5");
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a, lcscoh("verify --p 2 --nu 2 --eta 3 --coeff 2,4 --seed 5"));
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert!(v["results"][0]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}
