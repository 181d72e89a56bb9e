use std::path::PathBuf;
use std::process::Command;

use dp1::catalog;
use dp1::cli::run;

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dp1-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn dp1(args: &[&str]) -> dp1::cli::Outcome {
    run(std::iter::once("dp1").chain(args.iter().copied()))
}

#[test]
fn count_diagonal_surface() {
    let f = scratch("f7.sextic", &catalog::diagonal_f7_sextic().to_text());
    let f = f.to_str().unwrap();
    for method in ["tables", "buckets", "naive"] {
        let out = dp1(&["count", "--sextic", f, "--ext", "3", "--method", method, "--threads", "2"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "count=120737\n");
    }
    let out = dp1(&["count", "--sextic", f]);
    assert_eq!(out.stdout, "count=29\n");
}

#[test]
fn buckets_refused_outside_their_shape() {
    let f = scratch("f3.sextic", &catalog::order7_sextic().to_text());
    let out = dp1(&["count", "--sextic", f.to_str().unwrap(), "--method", "buckets"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("bucket method"));
}

#[test]
fn weyl_group_order() {
    let out = dp1(&["e8", "order"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "order=696729600\n"));
    let out = dp1(&["e8", "roots"]);
    assert_eq!(out.stdout, "roots=240\n");
    let out = dp1(&["e8", "gram"]);
    assert!(out.stdout.ends_with("det=1 even=true\n"));
}

#[test]
fn smoothness_exit_codes() {
    let cusp = scratch("cusp.sextic", "sextic ring=Fp p=7\n0,0,0,2 1\n0,0,3,0 1\n6,0,0,0 6\n");
    let out = dp1(&["smooth", "--sextic", cusp.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
    assert_eq!(out.stdout, "singular fiber=[0:1]\n");
    let f = scratch("smooth.sextic", &catalog::order6_sextic().to_text());
    let out = dp1(&["smooth", "--sextic", f.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "smooth\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dp1(&["count"]).code, 2);
    assert_eq!(dp1(&["no-such-command"]).code, 2);
    assert_eq!(dp1(&["count", "--sextic", "/nonexistent/file"]).code, 2);
    let bad = scratch("bad.sextic", "sextic ring=Fp p=7\n0,0,0,2 two\n");
    let out = dp1(&["count", "--sextic", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    assert_eq!(dp1(&["criterion", "--perm", "0,1,2"]).code, 2);
    assert_eq!(dp1(&["--help"]).code, 0);
}

#[test]
fn integer_input_needs_a_prime() {
    let f = scratch("family.sextic", &catalog::family_target().sextic().to_text());
    let f = f.to_str().unwrap();
    assert_eq!(dp1(&["count", "--sextic", f]).code, 2);
    assert_eq!(dp1(&["count", "--sextic", f, "--prime", "9"]).code, 2);
    let out = dp1(&["count", "--sextic", f, "--prime", "3"]);
    assert_eq!(out.stdout, "count=16\n");
}

#[test]
fn assemble_and_verify() {
    let files: Vec<PathBuf> = [
        ("a.sextic", catalog::order7_sextic()),
        ("b.sextic", catalog::order6_sextic()),
        ("c.sextic", catalog::diagonal_f7_sextic()),
    ]
    .iter()
    .map(|(n, f)| scratch(n, &f.to_text()))
    .collect();
    let mut args = vec!["assemble"];
    for f in &files {
        args.extend(["--sextic", f.to_str().unwrap()]);
    }
    let out = dp1(&args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, catalog::family_target().sextic().to_text());
    let lift = scratch("lift.sextic", &out.stdout);
    let out = dp1(&["verify-congruence", "--sextic", lift.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "congruent mod 105\n"));
    let off = scratch("off.sextic", &catalog::order6_sextic().to_text().replace("ring=Fp p=5", "ring=Z"));
    assert_eq!(dp1(&["verify-congruence", "--sextic", off.to_str().unwrap()]).code, 1);
}

#[test]
fn criterion_on_permutations() {
    let out = dp1(&["criterion", "--perm", "1,2,3,4,5,6,0,7", "--perm", "1,2,0,4,3,5,6,7", "--with-trace-minus4"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = dp1(&["criterion", "--with-minus-identity"]);
    assert_eq!(out.code, 1);
}

#[test]
fn profile_files_feed_the_criterion() {
    let mut args = vec!["criterion".to_string()];
    for (name, f, exps) in [
        ("p3", catalog::order7_sextic(), "1,7"),
        ("p5", catalog::order6_sextic(), "1,2,3,6"),
        ("p7", catalog::diagonal_f7_sextic(), "1,3"),
    ] {
        let sextic = scratch(&format!("{name}.sextic"), &f.to_text());
        let out = dp1(&["profile", "--sextic", sextic.to_str().unwrap(), "--exps", exps]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let path = scratch(&format!("{name}.profile"), &out.stdout);
        args.extend(["--profile".to_string(), path.to_str().unwrap().to_string()]);
    }
    let out = run(std::iter::once("dp1".to_string()).chain(args));
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn out_flag_writes_file() {
    let f = scratch("out.sextic", &catalog::diagonal_f7_sextic().to_text());
    let dest = f.with_extension("txt");
    let out = dp1(&["count", "--sextic", f.to_str().unwrap(), "--out", dest.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(dest).unwrap(), "count=29\n");
}

#[test]
fn split_surface_small_prime_reports_failure() {
    let out = dp1(&["split-surface", "--p", "11"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("F_11"), "{}", out.stderr);
    let out = dp1(&["split-surface", "--p", "19"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("count=533\n"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_dp1");
    let ok = Command::new(bin).args(["e8", "order"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "order=696729600\n");
    let bad = Command::new(bin).arg("count").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
