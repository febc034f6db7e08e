use std::path::Path;
use std::process::{Command, Output};

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz"))
        .args(args)
        .env_remove("RIESZ_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gamma_scalar_row_is_log_sqrt_pi() {
    let o = riesz(&["gamma", "--beta", "1", "--m", "1", "--a", "0.5", "--kappa", "0", "--sign", "plus"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta,m,a,kappa,sign,log_gamma"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let v: f64 = row[5].parse().unwrap();
    assert!((v - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-15);
    assert!(lines.next().is_none());
}

#[test]
fn gamma_grid_has_both_signs() {
    let o = riesz(&["gamma", "--beta", "2", "--m", "2", "--a-grid", "3:4:3", "--kappa", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 3 * 2);
}

#[test]
fn char_fn_at_origin_is_one() {
    for beta in ["1", "2", "4"] {
        let o = riesz(&["cf", "--beta", beta, "--m", "2", "--a", "4.5", "--kappa", "1,0", "--variant", "II", "--t", "zero"]);
        assert_eq!(o.status.code(), Some(0));
        let line = stdout(&o).lines().nth(1).unwrap().to_string();
        let f: Vec<f64> = line.split(',').skip(1).map(|t| t.parse().unwrap()).collect();
        assert_eq!(f, vec![1.0, 0.0]);
    }
}

#[test]
fn sample_then_density_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (beta, fmt) in [("1", "csv"), ("2", "json"), ("4", "csv")] {
        let path = dir.path().join(format!("draws{beta}"));
        let p = path.to_str().unwrap();
        let dist = ["--beta", beta, "--m", "2", "--a", "4", "--kappa", "2,1", "--sigma", "diag:2,0.5"];
        let mut args = vec!["sample", "--n", "50", "--seed", "3", "--format", fmt, "--out", p];
        args.extend(dist);
        assert_eq!(riesz(&args).status.code(), Some(0));
        let mut args = vec!["density", "--input", p];
        args.extend(dist);
        let o = riesz(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
        assert_eq!(rows.len(), 50);
        for r in rows {
            let ld: f64 = r.split(',').nth(1).unwrap().parse().unwrap();
            assert!(ld.is_finite());
        }
    }
}

#[test]
fn eigdensity_routes_agree_on_isotropic_scale() {
    let base = ["eigdensity", "--beta", "2", "--m", "2", "--a", "3", "--kappa", "1,0", "--sigma", "scalar:1.5", "--lambda", "2,0.7"];
    let value = |route: &str| -> f64 {
        let mut args = base.to_vec();
        args.extend(["--route", route]);
        let o = riesz(&args);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o).lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap()
    };
    let closed = value("closed");
    assert!((closed - value("series")).abs() < 1e-8);
    assert!((closed - value("haar")).abs() < 1e-8);
}

#[test]
fn exit_codes() {
    assert_eq!(riesz(&["--help"]).status.code(), Some(0));
    assert_eq!(riesz(&["--version"]).status.code(), Some(0));
    assert_eq!(riesz(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(riesz(&["gamma", "--beta", "1", "--m", "1", "--a", "1", "--bogus"]).status.code(), Some(1));
    // kappa must be non-increasing
    assert_eq!(riesz(&["gamma", "--beta", "1", "--m", "2", "--a", "3", "--kappa", "0,1"]).status.code(), Some(1));
    assert_eq!(riesz(&["gamma", "--beta", "3", "--m", "2", "--a", "3"]).status.code(), Some(1));
    // shape below the domain bound
    let o = riesz(&["gamma", "--beta", "1", "--m", "2", "--a", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("must exceed"));
    assert!(o.stdout.is_empty());
    let o = riesz(&["sample", "--beta", "1", "--m", "2", "--a", "0.4", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    // octonion matrices are not supported
    assert_ne!(riesz(&["sample", "--beta", "8", "--m", "2", "--a", "9", "--n", "2"]).status.code(), Some(0));
}

#[test]
fn verify_filters_and_passes() {
    let o = riesz(&["verify", "--suite", "quick", "--check", "gamma_identity", "--check", "jack_normalization", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|v| v["pass"] == true && v.get("runtime_s").is_none()));
    assert_eq!(riesz(&["verify", "--check", "no_such_check"]).status.code(), Some(1));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["sample", "--beta", "1", "--m", "1", "--a", "2", "--n", "4"];
        args.extend(extra);
        Command::new(env!("CARGO_BIN_EXE_riesz"))
            .args(&args)
            .env("RIESZ_OUT_DIR", dir.path())
            .output()
            .unwrap()
    };
    let o = run(&[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let default = dir.path().join("sample.csv");
    assert!(Path::new(&default).exists());
    assert_eq!(std::fs::read_to_string(&default).unwrap().lines().count(), 5);
    assert_eq!(run(&["--out", "named.csv"]).status.code(), Some(0));
    assert!(dir.path().join("named.csv").exists());
}
