use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weberbox"))
        .args(args)
        .current_dir(dir)
        .env("WEBERBOX_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn spectrum_table() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["spectrum", "--l-min", "0", "--l-max", "5", "--l-step", "0.05", "--n-max", "5"];
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert!(text.starts_with("l,n,parity,energy,ratio_to_ground\n"));
    assert!(!text.contains('\r'));
    let r = rows(&text);
    assert_eq!(r.len(), 606);
    assert_eq!(&r[0][..3], ["0", "0", "even"]);
    assert!((num(&r[0][3]) - 0.5).abs() < 1e-9);
    assert_eq!(r[1][2], "odd");
    assert_eq!(r.last().unwrap()[0], "5");

    // same flags, same bytes, whatever the thread count
    let again = Command::new(env!("CARGO_BIN_EXE_weberbox"))
        .args(args)
        .args(["-o", "-"])
        .env("WEBERBOX_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn box_ratio_at_twenty() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["spectrum", "--l-min", "20", "--l-max", "20", "--l-step", "1", "--n-max", "1", "-o", "-"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert!((num(&r[1][4]) / 4.0 - 1.0).abs() < 0.05);
}

#[test]
fn wavefunction_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["wavefunction", "--l", "0", "--n", "0", "--z-max", "6", "--h", "0.01", "-o", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("z,psi\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 1201);
    let peak = num(&r[600][1]);
    for row in &r {
        let z = num(&row[0]);
        assert!((num(&row[1]) / peak - (-z * z / 4.0).exp()).abs() < 1e-8, "z = {z}");
    }

    let out = run(dir.path(), &["wavefunction", "--l", "6", "--n", "1", "--max-norm", "-o", "-"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    let psi: Vec<f64> = r.iter().map(|x| num(&x[1])).collect();
    assert!((psi.iter().fold(0.0_f64, |m, v| m.max(v.abs())) - 1.0).abs() < 1e-12);
    let mid = r.iter().position(|x| x[0] == "0").unwrap();
    assert_eq!(psi[mid], 0.0);
    let crossings = psi.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    assert_eq!(crossings, 0, "only the exact zero at z = 0");
    assert!(psi[mid - 1] < 0.0 && psi[mid + 1] > 0.0);

    // anchor width: nodes sit on the walls
    let out = run(dir.path(), &["wavefunction", "--l", "1.28", "--n", "2", "-o", "-"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    let nodes: Vec<f64> = r
        .windows(2)
        .filter(|w| num(&w[0][1]) * num(&w[1][1]) < 0.0)
        .map(|w| num(&w[0][0]))
        .collect();
    assert_eq!(nodes.len(), 2);
    for z in nodes {
        assert!((z.abs() - 1.28).abs() < 0.02, "{z}");
    }
}

#[test]
fn wavefunction_json_mirror() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["wavefunction", "--l", "1", "--n", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("wavefunction.json")).unwrap()).unwrap();
    assert_eq!(v["meta"]["state"]["parity"], "odd");
    assert_eq!(v["meta"]["state"]["normalization"], "l2");
    assert!(v["rows"].as_array().unwrap().len() > 100);
    assert!(v["rows"][0]["z"].is_number() && v["rows"][0]["psi"].is_number());
}

#[test]
fn asymptotic_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["asymptotics", "--r-list", "0,1", "--omega-min", "100", "--omega-max", "200", "--omega-step", "100", "-o", "-"],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("omega,r,normalized_ratio\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 4);
    assert!((num(&r[0][2]) - 1.0).abs() < 1e-10);
    assert!((num(&r[3][2]) - 1.0).abs() < 0.05);

    let out = run(
        dir.path(),
        &["asymptotics", "--r-list", "0.5,1", "--omega-min", "50", "--omega-max", "300", "--omega-step", "50", "--sandwich", "-o", "-"],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("omega,r,normalized_ratio,head,tail,lower,upper\n"));
    for row in rows(&text) {
        let (t, lo, hi) = (num(&row[2]), num(&row[5]), num(&row[6]));
        assert!(lo <= t && t <= hi);
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["asymptotics", "--r-list", "0,1", "--sandwich"],
        &["asymptotics", "--omega-step", "0"],
        &["spectrum", "--l-step", "abc"],
        &["spectrum", "--l-min", "3", "--l-max", "1"],
        &["wavefunction", "--l", "1", "--z-max", "5.003", "--h", "0.01"],
        &["hydrogen", "--L", "1", "--xi", "4", "--rho-max", "10"],
        &["hydrogen", "--xi", "1.3"],
        &["verify", "--quick", "--tolerance", "x"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = Command::new(env!("CARGO_BIN_EXE_weberbox"))
        .args(["spectrum", "--l-max", "0", "-o", "-"])
        .env("WEBERBOX_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hydrogen_modes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["hydrogen", "--L", "0", "--xi", "1.3", "--rho-min", "100", "--rho-max", "100", "-o", "-"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("rho,series_value,predicted,ratio,"));
    let r = rows(&text);
    assert!((num(&r[0][4]) - 1.0).abs() < 0.01);

    let out = run(dir.path(), &["hydrogen", "--piecewise", "--k", "1", "--R", "0", "--levels", "3", "-o", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 3);
    for (i, row) in r.iter().enumerate() {
        let exact = -0.25 / ((i + 1) * (i + 1)) as f64;
        assert!((num(&row[2]) / exact - 1.0).abs() < 1e-4);
        assert!((num(&row[3]) - 2.0 * (i + 1) as f64).abs() < 1e-4);
        assert_eq!(row[6], "true");
    }
}

#[test]
fn verify_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "--quick"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(lines.len(), 11);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    let all = report["passed"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if all { 0 } else { 1 }));
    assert_eq!(report["criteria"].as_array().unwrap().len(), 11);
    let cmp = fs::read_to_string(dir.path().join("verify_comparison.csv")).unwrap();
    assert!(cmp.starts_with("l,n,method_a,method_b,value_a,value_b,abs_diff\n"));
    for row in rows(&cmp) {
        assert!(num(&row[6]) < 1e-6);
    }
}
