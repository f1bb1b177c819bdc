use std::process::Command;

fn hardyz(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hardyz"))
        .args(args)
        .env_remove("HARDYZ_CACHE_DIR")
        .output()
        .expect("spawn hardyz");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn gram_lists_points() {
    let (code, out, _) = hardyz(&["gram", "--from", "-1", "--to", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "x,t,residual");
    assert_eq!(lines.len(), 5);
    let t0: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((t0 - 17.845599540410861).abs() < 1e-10);
}

#[test]
fn sum_header_and_row() {
    let (code, out, _) = hardyz(&["sum", "--parity", "even", "--N", "100"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "N,parity,S,E,norm_new,norm_old,method,wall_s");
    let row: Vec<_> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "100");
    assert_eq!(row[1], "even");
    assert_eq!(row[6], "rs_corrected");
    let s: f64 = row[2].parse().unwrap();
    let e: f64 = row[3].parse().unwrap();
    assert!((s - 200.0 - e).abs() < 1e-9);
}

#[test]
fn tsv_output() {
    let (code, out, _) = hardyz(&["--out", "tsv", "cosine", "--N", "100"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "N\tT\tE\tnorm\twall_s");
}

#[test]
fn reference_method_at_first_zero() {
    let (code, out, _) = hardyz(&["--method", "reference", "z", "14.134725141734694"]);
    assert_eq!(code, 0);
    let z: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!(z.abs() < 1e-8);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hardyz(&["sum", "--parity", "bogus", "--N", "100"]).0, 2);
    assert_eq!(hardyz(&["frobnicate"]).0, 2);
    assert_eq!(hardyz(&["--method", "nope", "z", "100"]).0, 2);
    assert_eq!(hardyz(&["scan", "--grid", "x,y"]).0, 2);
    // below the main-sum floor
    let (code, _, err) = hardyz(&["z", "14.1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn failed_check_exits_1() {
    let (code, _, err) = hardyz(&["sum", "--parity", "odd", "--N", "10", "--check"]);
    assert_eq!(code, 1);
    assert!(err.contains("check failed"));
    assert_eq!(hardyz(&["sum", "--parity", "odd", "--N", "20", "--check"]).0, 0);
}

#[test]
fn scan_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--cache-dir", dir.path().to_str().unwrap(), "scan", "--grid", "128,256,...,1024"];
    let (code, first, _) = hardyz(&args);
    assert_eq!(code, 0);
    assert_eq!(first.lines().count(), 9);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 1);
    let (_, second, _) = hardyz(&args);
    let strip = |s: &str| s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&first), strip(&second));
}

#[test]
fn parse_grid_forms() {
    assert_eq!(hardyz::cli::parse_grid("10,20,30").unwrap(), vec![10, 20, 30]);
    assert_eq!(hardyz::cli::parse_grid("128,256,...,2048").unwrap(), vec![128, 256, 512, 1024, 2048]);
    assert!(hardyz::cli::parse_grid("").is_err());
}
