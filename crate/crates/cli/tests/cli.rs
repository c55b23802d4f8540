use std::process::{Command, Output};

use serde_json::Value;

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qzeta(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// `(numerator, denominator)` of a rational string.
fn rational(v: &Value) -> (i128, i128) {
    let s = v.as_str().expect("rationals are strings");
    match s.split_once('/') {
        Some((n, d)) => (n.parse().unwrap(), d.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

fn integers(v: &Value) -> Vec<i128> {
    v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let (n, d) = rational(c);
            assert_eq!(d, 1);
            n
        })
        .collect()
}

fn sigma(k: u32, n: i128) -> i128 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
}

/// Coefficients of `1/(q)_inf^k` through `q^len-1`.
fn inverse_euler(k: usize, len: usize) -> Vec<i128> {
    let mut v = vec![0i128; len];
    v[0] = 1;
    for _ in 0..k {
        for n in 1..len {
            for i in n..len {
                v[i] += v[i - n];
            }
        }
    }
    v
}

#[test]
fn star_qmzv_obeys_the_cyclic_formula() {
    let get = |a: &str| {
        let v = json(&["compute", "qmzv", "--model", "star", "--a", a, "--order", "10"]);
        assert_eq!(v["offset"], "1");
        integers(&v)
    };
    let (z21, z3, z2) = (get("2,1"), get("3"), get("2"));
    assert_eq!(z21.len(), 10);
    for i in 0..z21.len() {
        assert_eq!(z21[i], 2 * z3[i] - z2[i], "q^{}", i + 1);
    }
}

#[test]
fn pentagon_matches_its_closed_form() {
    let v = json(&["compute", "graph-series", "--graph", "cycle:5", "--order", "10"]);
    assert_eq!(v["offset"], "0");
    // q^{-1} sum sigma(n) q^n / (q)_inf^2
    let p = inverse_euler(2, 11);
    let want: Vec<i128> = (0..11).map(|m| (0..=m).map(|i| sigma(1, i as i128 + 1) * p[m - i]).sum()).collect();
    assert_eq!(integers(&v), want);
}

#[test]
fn supercharacter_head() {
    let v = json(&["compute", "char", "sch-u", "--m", "3", "--order", "8"]);
    assert_eq!(v["series"]["offset"], "1/6");
    assert_eq!(integers(&v["series"])[..6], [1, 8, 44, 152, 487, 1352]);
    assert!(v["recognition"].is_null());
    let r = json(&["compute", "char", "sch-u", "--m", "3", "--order", "20", "--recognize"]);
    assert_eq!(r["recognition"]["found"], true);
}

#[test]
fn constant_term_of_wp_squared() {
    let v = json(&["compute", "ct", "--factors", "wp,wp", "--order", "8"]);
    let c: Vec<(i128, i128)> = v["coeffs"].as_array().unwrap().iter().map(rational).collect();
    assert_eq!(c[0], (1, 144));
    for (n, &(num, den)) in c.iter().enumerate().skip(1) {
        // 5 G4_hat has q^n coefficient (5/3) sigma_3(n)
        assert_eq!(3 * num, 5 * sigma(3, n as i128) * den, "q^{n}");
    }
}

#[test]
fn verify_reports_and_exit_code() {
    let out = qzeta(&["verify", "characters", "--order", "12"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    for c in v["checks"].as_array().unwrap() {
        assert!(!c["reference"].as_str().unwrap().is_empty(), "{c}");
    }
}

#[test]
fn probes_never_fail() {
    let v = json(&["probe", "zeta-g-even", "--rank", "2", "--k", "2", "--order", "20"]);
    assert_eq!(v["found"], true);
    let v = json(&["probe", "symmetrized", "--rank", "2", "--kvals", "2,2"]);
    assert_eq!(v["found"], false);
    assert!(v["error"].as_str().unwrap().contains("positive root"));
}

#[test]
fn errors_carry_positions() {
    let out = qzeta(&["compute", "graph-series", "--graph", "cycle:5+foo"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 8"), "{err}");
    assert!(!qzeta(&["compute", "qmzv", "--a", "2", "--order", "0"]).status.success());
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["census", "--nmax", "5", "--order", "10"],
        vec!["compute", "lie-qzeta", "--rank", "2", "--k", "2", "--s", "1", "--order", "15"],
    ] {
        let run = |t: &str| {
            let mut a = args.clone();
            a.extend(["--threads", t]);
            qzeta(&a).stdout
        };
        assert_eq!(run("1"), run("4"), "{args:?}");
    }
}

#[test]
fn plain_tables() {
    let out = qzeta(&["compute", "graph-series", "--graph", "path:2", "--order", "3", "--format", "plain"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["exp", "coefficient"]);
    assert_eq!(lines.len(), 6);
    assert!(lines[5].trim() == "O(q^4)");
}
