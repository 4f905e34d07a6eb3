use std::fs;
use std::process::{Command, Output};

fn golden(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_golden"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify() {
    let o = golden(&["classify", "17"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "17 A rank=1 vertical_even ag=true variety_v(b=1,k=1)\n"
    );
    let o = golden(&["classify", "27"]);
    assert_eq!(
        stdout(&o),
        "27 B rank=2 neither ag=false variety_s(b=13,k=0)\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(golden(&["classify", "4"]).status.code(), Some(2));
    assert_eq!(golden(&["classify", "x"]).status.code(), Some(2));
    assert_eq!(golden(&["run", "--rows", "1"]).status.code(), Some(2));
    assert_eq!(
        golden(&["hydra", "--shape", "tree:3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        golden(&["hydra", "--strategy", "hecatonchire:0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(golden(&["nope"]).status.code(), Some(2));
}

#[test]
fn verify_and_corruption() {
    let o = golden(&["verify", "--max", "1023"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all claims confirmed"));
    let o = golden(&["verify", "--max", "255", "--inject-corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED 3 = 15 [R1]"));
}

#[test]
fn budget_aborts_exit_3() {
    assert_eq!(
        golden(&["run", "--rows", "6", "--budget", "10"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        golden(&["conjecture", "--seed-row", "6", "--budget", "10"])
            .status
            .code(),
        Some(3)
    );
    let o = golden(&[
        "hydra",
        "--shape",
        "parents:0,1,2,2",
        "--regrowth",
        "step",
        "--budget",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn chain_and_cuts() {
    let o = golden(&["chain", "15", "--cuts"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 22);
    assert_eq!(lines[0], "15 \u{2261} 81 Rule 3");
    assert_eq!(lines[20], "41 \u{2261} 27 Rule 5");
    assert_eq!(lines[21], "cuts: 1025 809 425 377 593 233 137 161 41");
}

#[test]
fn run_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_owned();
    let o = golden(&[
        "run",
        "--rows",
        "4",
        "--out",
        &p("rows.csv"),
        "--snapshots",
        &p("snap.csv"),
        "--stride",
        "100",
        "--trace",
        &p("trace.csv"),
    ]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(
        fs::read_to_string(p("rows.csv")).unwrap(),
        "row,completion_tick,expense\n2,6,9\n3,11,14\n4,271,518\n"
    );
    let snap = fs::read_to_string(p("snap.csv")).unwrap();
    assert!(snap.starts_with("tick,cell,state\n0,1,G\n0,3,B\n"));
    let ticks: Vec<&str> = snap
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    for t in ["0", "100", "200", "271"] {
        assert!(ticks.contains(&t), "no snapshot at {t}");
    }
    let trace = fs::read_to_string(p("trace.csv")).unwrap();
    assert_eq!(trace.lines().count(), 272);
    assert!(trace.starts_with("tick,cell,colored\n1,1,5:R1\n"));
}

#[test]
fn repeated_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let f = dir.path().join(format!("rates{i}.csv"));
        let o = golden(&[
            "rates",
            "--rows",
            "8",
            "--max",
            "4097",
            "--out",
            f.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        outputs.push((stdout(&o), fs::read(&f).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(String::from_utf8_lossy(&outputs[0].1).starts_with("class,sample_count,mean_rate\nB,"));
}

#[test]
fn series_flags_quoted_limit() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("series.csv");
    let o = golden(&["series", "30", "--out", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("discrepancy: quoted limit 6.5"));
    let csv = fs::read_to_string(&f).unwrap();
    assert!(csv.starts_with("n,partial_sum\n1,2.750000000000\n"));
    assert_eq!(csv.lines().count(), 31);
}

#[test]
fn quiver_dot() {
    let o = golden(&["quiver", "--max", "31"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph quiver {"));
    assert!(dot.contains("\"17\" [color=teal, penwidth=2];"));
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn hydra_trace() {
    let o = golden(&[
        "hydra",
        "--shape",
        "parents:0,1,1",
        "--strategy",
        "short-first",
        "--regrowth",
        "fixed:2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("step,head_id,was_short,regrowth_n,node_count\n1,"));
    assert!(text.trim_end().ends_with("cuts"));
}

#[test]
fn conjecture_rows() {
    let o = golden(&["conjecture", "--seed-row", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=5 holds ticks=335\n");
}

#[test]
fn fit_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fit.csv");
    let o = golden(&[
        "run",
        "--rows",
        "8",
        "--fit-from",
        "2",
        "--fit",
        f.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("fit rows 2..8 slope="));
    let csv = fs::read_to_string(&f).unwrap();
    assert!(csv.starts_with("row,log_expense,fit_residual\n2,"));
    assert_eq!(csv.lines().count(), 8);
}
