use std::fs;
use std::process::{Command, Output};

fn nearfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearfield"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn delta_prints_one_line_per_method() {
    let o = nearfield(&[
        "delta",
        "--N",
        "128",
        "--r1",
        "5",
        "--r2",
        "10",
        "--method",
        "closed_form,ula,oracle_fresnel",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let values: Vec<f64> = out
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    assert!(out.starts_with("closed_form\t"));
    for v in &values {
        assert!((v - values[0]).abs() < 1e-12);
        assert!((0.0..0.1).contains(v));
    }
}

#[test]
fn delta_accepts_pi_expressions() {
    let a = nearfield(&[
        "delta", "--M", "2", "--N", "3", "--r1", "4", "--r2", "6", "--theta1", "pi/3",
    ]);
    let b = nearfield(&[
        "delta",
        "--M",
        "2",
        "--N",
        "3",
        "--r1",
        "4",
        "--r2",
        "6",
        "--theta1",
        "1.0471975511965976",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn validation_errors_exit_1() {
    for args in [
        &["delta", "--N", "8", "--r1", "-5", "--r2", "10"][..],
        &[
            "delta", "--N", "8", "--r1", "5", "--r2", "10", "--method", "bogus",
        ],
        &[
            "delta", "--M", "1", "--N", "8", "--r1", "5", "--r2", "10", "--method", "ula",
        ],
        &[
            "delta", "--N", "8", "--r1", "5", "--r2", "10", "--lambda", "0",
        ],
        &["delta", "--r1", "5"],
        &["sweep", "--preset", "fig9"],
        &["sweep", "--preset", "fig2", "--spec", "x.txt"],
        &["sweep"],
        &["frobnicate"],
        &[],
    ] {
        let o = nearfield(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(nearfield(&["--help"]).status.code(), Some(0));
    assert_eq!(nearfield(&["sweep", "--help"]).status.code(), Some(0));
}

#[test]
fn io_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.spec");
    let o = nearfield(&["sweep", "--spec", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    // A regular file where a directory is expected.
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let out = blocker.join("fig2.csv");
    let o = nearfield(&["sweep", "--preset", "fig2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_preset_writes_csv_and_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out/fig2.csv");
    let o = nearfield(&["sweep", "--preset", "fig2", "--out", csv.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "axis,closed_form,closed_form_ula,oracle_fresnel,oracle_exact,warnings"
    );
    assert_eq!(lines.count(), 100);
    assert!(!text.contains('\r'));
    let script = fs::read_to_string(csv.with_extension("py")).unwrap();
    assert!(script.contains("\"fig2.csv\""));
}

#[test]
fn sweep_is_byte_identical_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, threads) in [(&a, "1"), (&b, "4")] {
        let o = nearfield(&[
            "sweep",
            "--preset",
            "fig3",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn off_broadside_preset_drops_ula_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig4.csv");
    let o = nearfield(&[
        "sweep",
        "--preset",
        "fig4",
        "--theta",
        "pi/3",
        "--phi",
        "1.2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let header = fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert!(!header.contains("closed_form_ula"));
    assert!(header.starts_with("axis,closed_form@offset=20,"));
}

#[test]
fn sweep_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("n.spec");
    let out = dir.path().join("n.csv");
    fs::write(
        &spec,
        format!(
            "# Delta vs N\nname = vanishing\naxis = N\nvalues = 32, 64, 128, 256, 512\n\
             r1 = 5\nr2 = 10\nmethods = closed_form, ula\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = nearfield(&["sweep", "--spec", spec.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 5);
    let first: f64 = rows[0][1].parse().unwrap();
    let last: f64 = rows[4][1].parse().unwrap();
    assert!(last < first && last < 0.1);
    let ula: f64 = rows[4][2].parse().unwrap();
    assert!((ula - last).abs() < 1e-12);

    fs::write(&spec, "axis = N\nvalues = 1\nbogus = 3\n").unwrap();
    let o = nearfield(&["sweep", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn check_reports_regime() {
    let o = nearfield(&["check", "--N", "128", "--r1", "5", "--r2", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("classification             near_orthogonal"));
    assert!(out.contains("angle_bound                n/a"));
    assert!(out.contains("distance_threshold_m       518.7397789607467"));
}

#[test]
fn bench_prints_table() {
    let o = nearfield(&["bench", "--sizes", "4,8", "--reps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "size,closed_form_us,oracle_us,speedup");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("4,") && lines[2].starts_with("8,"));
}
