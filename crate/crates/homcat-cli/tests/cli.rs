use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn homcat(args: &[&str]) -> Output {
    homcat_env(args, &[])
}

fn homcat_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_homcat"));
    cmd.current_dir(fixtures()).args(args).env_remove("HOMCAT_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = homcat(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn first_line(args: &[&str]) -> String {
    ok(args).lines().next().unwrap_or_default().to_string()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn snf_divisors_match_gcd_and_determinant() {
    let m = [[2i64, 4], [6, 8]];
    let d1 = m.iter().flatten().fold(0, |g, &x| gcd(g, x));
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
    assert_eq!(ok(&["abelian", "snf", "mat.json"]), format!("{d1},{}\n", det / d1));
}

#[test]
fn abelian_homology_and_yoneda() {
    // coker of ×2 on Z has two elements
    let classes = (0..2).count();
    assert_eq!(ok(&["abelian", "homology", "complex.json", "--degree", "0"]), "H_0 ≅ Z/2\n");
    assert_eq!(
        ok(&["abelian", "yoneda", "complex.json", "--functor", "tensor:4", "--degree", "0"]),
        format!("round-trip OK, {classes} classes\n")
    );
    let all = ok(&["abelian", "homology", "complex.json", "--interchange"]);
    assert_eq!(all.matches("verified").count(), 2);
}

#[test]
fn abelian_derived_ext_uct_les() {
    // Tor_1(Z/4, Z/6) and Ext^1(Z/4, Z/6) are Z/gcd(4,6)
    let g = gcd(4, 6);
    assert_eq!(ok(&["abelian", "derived", "z4.json", "--functor", "tensor:6", "--degree", "1"]), format!("L_1 ≅ Z/{g}\n"));
    assert_eq!(ok(&["abelian", "ext", "z4.json", "Z/6", "--degree", "1"]), format!("Ext^1 ≅ Z/{g}\n"));
    let uct = ok(&["abelian", "uct", "complex.json", "Z/4", "--degree", "0"]);
    assert!(uct.contains("restriction iso: true"));
    let les = ok(&["abelian", "les", "cone.json", "--functor", "tensor:2"]);
    assert!(les.ends_with("exact: true\n"));
}

#[test]
fn group_examples() {
    // S_3 modulo the 3-cycles
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let even = perms.iter().filter(|p| (0..3).map(|i| (i + 1..3).filter(|&j| p[i] > p[j]).count()).sum::<usize>() % 2 == 0).count();
    assert_eq!(ok(&["group", "ab", "s3.json"]), format!("Z/{}\n", perms.len() / even));
    assert_eq!(ok(&["group", "homology", "v4.json", "--degree", "2"]), "Z/2\n");
    assert_eq!(ok(&["group", "homology", "v4.json", "--degree", "1", "--coeff", "Z/2"]), "Z/2 ⊕ Z/2\n");
    assert_eq!(first_line(&["group", "center", "q8.json"]), "order 2");
    assert_eq!(first_line(&["group", "commutator", "s3.json"]), format!("order {even}, index 2"));
    assert_eq!(ok(&["group", "cohomology", "v4.json", "--degree", "0", "--coeff", "Z/2"]), "Z/2 ⊕ Z/2\n");
    assert_eq!(ok(&["group", "cohomology", "v4.json", "--degree", "2", "--coeff", "Z/2", "--classical"]), "Z/2 ⊕ Z/2 ⊕ Z/2\n");
}

#[test]
fn stallings_report_for_quaternion_extension() {
    let out = ok(&["group", "stallings", "q8ext.json"]);
    assert!(out.starts_with("L_0 ≅ Z/2\ngamma: zero\nf_*: iso\n"), "{out}");
    assert!(out.ends_with("exactness: pass\n"));
}

#[test]
fn extension_verbs() {
    assert_eq!(ok(&["ext", "central", "q8ext.json"]), "central: true\n");
    assert_eq!(ok(&["ext", "central2", "v4_double.json"]), "central: true\n");
    assert_eq!(first_line(&["ext", "check", "z4_over_z2_maps.json"]), "valid: |A| = 2, |E| = 4, |X| = 2");
    assert_eq!(first_line(&["ext", "congruent", "z4_over_z2.json", "z4_over_z2_maps.json"]), "congruent: yes (1 step)");
    assert_eq!(ok(&["ext", "congruent", "z4_over_z2.json", "v4_over_z2.json"]), "congruent: no\n");
    // |H^2(V4; Z/2)| = 2^3
    assert_eq!(first_line(&["ext", "enumerate", "--base", "v4.json", "--kernel", "z2.json"]), format!("{} congruence classes", 1 << 3));
    let list = ok(&["ext", "enumerate", "--base", "z2.json", "--kernel", "z2.json", "--list"]);
    assert_eq!(list.lines().count(), 3);
    assert!(list.contains("abelian, ab(E) ≅ Z/4") && list.contains("ab(E) ≅ Z/2 ⊕ Z/2"));
}

#[test]
fn acyclicity_and_pairing_for_a5() {
    let out = ok(&["ext", "acyclicity", "a5.json", "--k", "2", "--n", "1"]);
    assert_eq!(out, "L_0 ≅ 0\nL_1 ≅ Z/2\nin T_0, not in T_1\n");
    let out = ok(&["ext", "uct", "a5.json", "--degree", "1", "--coeff", "Z/2"]);
    assert!(out.ends_with("bijective: true\n"), "{out}");
}

#[test]
fn uce_certificate_and_negative_controls() {
    let out = ok(&["ext", "uce-verify", "sl25_a5.json", "--probes", "probes/"]);
    assert_eq!(out.matches(": pass").count(), 5);
    assert!(out.contains("probe library version 1"));
    assert!(out.ends_with("certificate valid\n"));

    let o = homcat(&["ext", "uce-verify", "a5_trivial_cover.json", "--probes", "probes/v1.json"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).ends_with("certificate invalid: clause 4\n"));

    let o = homcat(&["ext", "uce-verify", "z4_over_z2.json"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).starts_with("clause 1 base perfect: FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(homcat(&["group", "ab", "missing.json"]).status.code(), Some(2));
    assert_eq!(homcat(&["abelian", "snf", "v4.json"]).status.code(), Some(2));
    let o = homcat(&["abelian", "ext", "z4.json", "Z/x", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    // S_3 is not 0-acyclic for k = 2
    assert_eq!(homcat(&["ext", "uct", "s3.json", "--degree", "1", "--coeff", "Z/2"]).status.code(), Some(3));
    let o = homcat(&["group", "homology", "a5.json", "--degree", "2", "--max-tuples", "100"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource budget exceeded"));
    let o = homcat(&["--config", "config.json", "group", "homology", "a5.json", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn parse_errors_report_position() {
    let dir = std::env::temp_dir().join(format!("homcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"matrix\": [[1, 2],\n [3, }").unwrap();
    let o = homcat(&["abelian", "snf", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json:2:"), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let args = ["--report", "group", "homology", "s3.json", "--degree", "3"];
    let a = homcat_env(&args, &[("HOMCAT_THREADS", "1")]);
    let b = homcat_env(&args, &[("HOMCAT_THREADS", "4")]);
    let c = homcat(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"]["value"], "Z/6");
    assert_eq!(v["inputs"][0]["path"], "s3.json");
}
