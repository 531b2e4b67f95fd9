use std::path::Path;
use std::process::{Command, Output};

use nsga_bench::timing::{mean_sd, RESULTS_HEADER, SUMMARY_HEADER};

fn nsga_bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsga-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_on_healthy_build_exits_zero() {
    let out = nsga_bench(&["validate", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["bench", "--colour", "red"],
        &["validate", "--seed", "minus-one"],
        &["optimize", "--ranker", "jensen"],
        &[],
    ] {
        assert_eq!(nsga_bench(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(nsga_bench(&["--help"]).status.code(), Some(0));
}

#[test]
fn optimize_with_missing_dataset_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "files.cfg",
        "problem = genesel-files\nexpression = /no/such/expr.csv\nlabels = /no/such/labels.csv\n",
    );
    let out = nsga_bench(&["optimize", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expr.csv"));
}

#[test]
fn bench_needs_writable_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.cfg", "sizes = 8\nreplicates = 1\n");
    assert_eq!(
        nsga_bench(&["bench", "--config", &cfg]).status.code(),
        Some(2)
    );
    let bad = dir.path().join("missing/dir/out.csv");
    let out = nsga_bench(&["bench", "--config", &cfg, "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_rows_summary_and_monotone_means() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "scaling.cfg",
        "rankers = fast_nds, sweep, position_sum\nsizes = 250, 500, 1000, 2000\n\
         objectives = 3\nreplicates = 10\nseed = 3\n",
    );
    let out_path = dir.path().join("scaling.csv");
    let out = nsga_bench(&[
        "bench",
        "--config",
        &cfg,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let results = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = results.lines();
    assert_eq!(lines.next(), Some(RESULTS_HEADER));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 3 * 4 * 10);

    let summary = std::fs::read_to_string(dir.path().join("scaling_summary.csv")).unwrap();
    let mut lines = summary.lines();
    assert_eq!(lines.next(), Some(SUMMARY_HEADER));
    let cells: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(cells.len(), 12);

    for cell in &cells {
        let detail: Vec<&Vec<String>> = rows
            .iter()
            .filter(|r| r[0] == cell[0] && r[1] == cell[1])
            .collect();
        assert_eq!(detail.len(), 10);
        for (col, mean_col) in [(6usize, 3usize), (5, 5)] {
            let vals = detail.iter().map(|r| r[col].parse::<f64>().unwrap());
            let (mean, sd) = mean_sd(vals);
            let reported: f64 = cell[mean_col].parse().unwrap();
            assert!((mean - reported).abs() <= 4.0 * f64::EPSILON * mean.abs());
            let reported_sd: f64 = cell[mean_col + 1].parse().unwrap();
            assert!((sd - reported_sd).abs() <= 1e-9 * sd.abs().max(1e-12));
        }
        for r in &detail {
            let (wall, rank): (f64, f64) = (r[5].parse().unwrap(), r[6].parse().unwrap());
            assert!(rank >= 0.0 && rank <= wall);
        }
    }

    // Mean ranking time grows with N for every ranker.
    for ranker in ["fast_nds", "sweep", "position_sum"] {
        let means: Vec<f64> = cells
            .iter()
            .filter(|c| c[0] == ranker)
            .map(|c| c[3].parse().unwrap())
            .collect();
        assert!(means.windows(2).all(|w| w[1] > w[0]), "{ranker}: {means:?}");
    }
}

#[test]
fn optimize_writes_front_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "lotz.cfg",
        "problem = lotz\ngenome_length = 12\npopulation = 40\ngenerations = 60\nseed = 9\n",
    );
    let out = nsga_bench(&["optimize", "--config", &cfg, "--ranker", "sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,genome,f1,f2"));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        assert_eq!(cols[1].len(), 12);
        assert!(cols[1].chars().all(|c| c == '0' || c == '1'));
        let lo = cols[1].chars().take_while(|&c| c == '1').count();
        assert_eq!(cols[2].parse::<f64>().unwrap(), -(lo as f64));
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("wall time"));
}

#[test]
fn optimize_on_files_with_prefilter() {
    let dir = tempfile::tempdir().unwrap();
    let mut expr = String::from("gene_id");
    for s in 0..12 {
        expr.push_str(&format!(",s{s}"));
    }
    expr.push('\n');
    for g in 0..30 {
        expr.push_str(&format!("g{g}"));
        for s in 0..12 {
            let class_shift = if s % 2 == 0 && g < 3 { 5.0 } else { 0.0 };
            expr.push_str(&format!(",{}", class_shift + ((g * 7 + s * 3) % 5) as f64));
        }
        expr.push('\n');
    }
    let mut labels = String::from("sample_id,class,split\n");
    for s in 0..12 {
        let class = if s % 2 == 0 { "A" } else { "B" };
        let split = if s < 8 { "train" } else { "test" };
        labels.push_str(&format!("s{s},{class},{split}\n"));
    }
    let e = write(dir.path(), "e.csv", &expr);
    let l = write(dir.path(), "l.csv", &labels);
    let cfg = write(
        dir.path(),
        "f.cfg",
        &format!(
            "problem = genesel-files\nexpression = {e}\nlabels = {l}\nprefilter = 10\n\
             population = 20\ngenerations = 10\n"
        ),
    );
    let front = dir.path().join("front.csv");
    let out = nsga_bench(&[
        "optimize",
        "--config",
        &cfg,
        "--out",
        front.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(front).unwrap();
    assert!(text.starts_with("id,genome,f1,f2,f3\n"));
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(1).unwrap().len() == 10));
}
