use std::path::Path;
use std::process::{Command, Output};

fn weno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weno")).args(args).output().expect("failed to start weno")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn run_shu_osher_writes_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("so.csv");
    let o = weno(&["run", "--problem", "shu-osher", "--scheme", "zn", "--nx", "300", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,rho,u,p"));
    assert_eq!(lines.count(), 300);
    let meta: serde_json::Value = serde_json::from_str(&read(&dir.path().join("so.csv.meta.json"))).unwrap();
    assert_eq!(meta["status"], "completed");
    assert_eq!(meta["diagnostics"]["t"], 1.8);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let outs: Vec<_> = (0..2).map(|k| dir.path().join(format!("rm{k}.bin"))).collect();
    for p in &outs {
        let o = weno(&[
            "run", "--problem", "riemann2d-2", "--nx", "40", "--ny", "40", "--tend", "0.05", "--format", "grid-bin",
            "--out", p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&outs[0]).unwrap(), std::fs::read(&outs[1]).unwrap());
    assert!(dir.path().join("rm0.bin.json").exists());
}

#[test]
fn two_d_text_output_declares_its_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rt.vtk");
    let o = weno(&["run", "--problem", "rt", "--nx", "12", "--ny", "48", "--tend", "0.01", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = read(&out);
    assert!(text.contains("DIMENSIONS 12 48 1"));
    assert!(text.contains("POINT_DATA 576"));
}

#[test]
fn characteristic_flag_reaches_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ffs.vtk");
    let o = weno(&[
        "run", "--problem", "ffs", "--nx", "60", "--ny", "20", "--tend", "0.05", "--characteristic", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let meta: serde_json::Value = serde_json::from_str(&read(&dir.path().join("ffs.vtk.meta.json"))).unwrap();
    assert_eq!(meta["characteristic"], true);
    assert_eq!(weno(&["run", "--problem", "shu-osher", "--characteristic"]).status.code(), Some(2));
}

#[test]
fn amplitude_run_carries_the_rescaled_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.csv");
    let o = weno(&[
        "run", "--problem", "advect1", "--scheme", "d", "--q", "2", "--amplitude", "100", "--tend", "0.1", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = read(&out);
    assert_eq!(text.lines().next(), Some("x,u,u_times_amplitude"));
    let meta: serde_json::Value = serde_json::from_str(&read(&dir.path().join("a.csv.meta.json"))).unwrap();
    assert_eq!(meta["amplitude"], 100.0);
    assert_eq!(meta["scheme"]["q_power"], 2);
}

#[test]
fn snapshots_are_written_between_start_and_end() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let o = weno(&["run", "--problem", "advect2", "--nx", "50", "--tend", "0.5", "--snapshots", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    for name in ["b-0001.csv", "b-0002.csv", "b.csv"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("c.csv");
    std::fs::write(&cfg, format!("# test\nproblem = advect3\nnx = 80\ntend = 0.2\nout = {}\n", out.display())).unwrap();
    let o = weno(&["run", "--config", cfg.to_str().unwrap(), "--nx", "64"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read(&out).lines().count(), 65);

    std::fs::write(&cfg, "problem = advect3\nbogus = 1\n").unwrap();
    assert_eq!(weno(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn blow_up_exits_with_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("blast.csv");
    let o = weno(&["run", "--problem", "blast", "--scheme", "zn", "--nx", "400", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-physical state"));
    let meta: serde_json::Value = serde_json::from_str(&read(&dir.path().join("blast.csv.meta.json"))).unwrap();
    assert_eq!(meta["status"], "blow-up");
    assert!(meta["report"]["step"].as_u64().unwrap() > 0);
}

#[test]
fn unknown_ids_are_usage_errors() {
    assert_eq!(weno(&["run", "--problem", "nope"]).status.code(), Some(2));
    assert_eq!(weno(&["run", "--problem", "advect1", "--scheme", "weno9"]).status.code(), Some(2));
    assert_eq!(weno(&["run", "--problem", "advect1", "--cfl", "1.5"]).status.code(), Some(2));
    assert_eq!(weno(&["converge", "-k", "2", "--schemes", ""]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let o = weno(&["run", "--problem", "advect2", "--nx", "20", "--tend", "0.01", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn converge_table_has_the_published_shape() {
    let o = weno(&["converge", "-k", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "dx,WENO-Z_error,WENO-Z_order,WENO-ZA_error,WENO-ZA_order,WENO-ZN_error,WENO-ZN_order");
    assert!(lines[1].ends_with(",---"));

    let o = weno(&["converge", "-k", "2", "--schemes", "z,zn"]);
    let text = stdout(&o);
    let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((last[4] - 5.0).abs() < 0.01, "{last:?}");
    assert!((last[2] - 4.0).abs() < 0.01, "{last:?}");
}

#[test]
fn table2_and_tau_coefficients() {
    let o = weno(&["table2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);

    let o = weno(&["tau-coeffs"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("tau8,1,9,9,1"), "{text}");
}

#[test]
fn similarity_reports_each_scheme() {
    let o = weno(&["similarity", "--schemes", "zn,js", "--nx", "100", "--tend", "0.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("zn,"));
}
