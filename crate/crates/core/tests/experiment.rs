use std::path::Path;
use std::process::Command;

use moead_ps::experiment::{
    parse_config, read_rows, run_experiment, AnytimeRow, PooledRow, SummaryRow, ANYTIME_FILE,
    OUT_ENV, POOLED_FILE, REPORT_FILE, SUMMARY_FILE, SWEEP_FILE,
};

const BIN: &str = env!("CARGO_BIN_EXE_moead-ps");

fn first_line(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

fn small_args(out: &Path) -> Vec<String> {
    [
        "--problem", "uf4,dtlz2", "--strategy", "full,ps,ri", "--ps", "0.2", "--reps", "2",
        "--budget", "1200", "--seed", "3", "--no-timing", "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([out.display().to_string()])
    .collect()
}

#[test]
fn csv_tables_have_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let plan = parse_config(std::iter::once("moead-ps".to_string()).chain(small_args(dir.path()))).unwrap();
    let files = run_experiment(&plan).unwrap();

    assert_eq!(
        first_line(&files.summary),
        "problem,strategy,ps,rep,evaluations,hv,igd_scaled,igd_raw,ndom,wall_seconds"
    );
    assert_eq!(
        first_line(&files.anytime),
        "problem,strategy,ps,rep,generation,evaluations,hv,igd_scaled,igd_raw,ndom"
    );
    let summary: Vec<SummaryRow> = read_rows(&files.summary).unwrap();
    assert_eq!(summary.len(), 2 * 3 * 2);
    for row in &summary {
        assert!(row.evaluations <= 1200);
        assert!((0.0..=1.0).contains(&row.ndom));
        assert!(row.hv >= 0.0 && row.igd_raw >= 0.0);
        assert_eq!(row.wall_seconds, 0.0);
        assert_eq!(row.ps.is_some(), row.strategy != "ri");
    }
    let full = summary.iter().find(|r| r.strategy == "full").unwrap();
    assert_eq!(full.ps, Some(1.0));

    let anytime: Vec<AnytimeRow> = read_rows(&files.anytime).unwrap();
    let initial = anytime.iter().filter(|r| r.generation == 0).count();
    assert_eq!(initial, summary.len());
    let pooled: Vec<PooledRow> = read_rows(&files.pooled).unwrap();
    assert_eq!(pooled.len(), summary.len());
    assert!(pooled.iter().all(|p| (0.0..=1.0).contains(&p.hv_pooled)));
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let status = Command::new(BIN).args(small_args(dir.path())).output().unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    }
    for file in [SUMMARY_FILE, ANYTIME_FILE, POOLED_FILE] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert!(x == y, "{file} differs between reruns");
    }
}

#[test]
fn binary_reports_usage_errors() {
    for bad in [&["--ps", "2"][..], &["--problem", "zdt9"], &["--strategy", "moead"], &["--nope"]] {
        let out = Command::new(BIN).args(bad).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from-env");
    let out = Command::new(BIN)
        .args(["--problem", "dtlz1", "--strategy", "full", "--reps", "1", "--budget", "400", "--final-only"])
        .env(OUT_ENV, &target)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Vec<AnytimeRow> = read_rows(&target.join(ANYTIME_FILE)).unwrap();
    assert_eq!(rows.len(), 2);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        "problem = [\"uf6\", \"dtlz6\"]\nstrategy = \"ps\"\nps = [0.1, 0.4]\nreps = 4\nbudget = 900\ndelta-t = 10\n",
    )
    .unwrap();
    let plan = parse_config(["moead-ps", "--config", config.to_str().unwrap(), "--reps", "2"]).unwrap();
    assert_eq!(plan.reps, 2);
    assert_eq!(plan.budget, 900);
    assert_eq!(plan.delta_t, 10);
    assert_eq!(plan.run_count(), 2 * 2 * 2);

    std::fs::write(&config, "colour = \"blue\"\n").unwrap();
    assert!(parse_config(["moead-ps", "--config", config.to_str().unwrap()]).is_err());
}

#[test]
fn report_mode_reads_summary() {
    let dir = tempfile::tempdir().unwrap();
    let run = Command::new(BIN)
        .args([
            "--problem", "uf6", "--strategy", "ps", "--ps", "0.1,0.5,1.0", "--reps", "3", "--budget",
            "800", "--no-timing", "--final-only", "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(run.status.success());
    let out = Command::new(BIN).arg("--report").arg(dir.path().join(SUMMARY_FILE)).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ln-igd slope"), "{text}");
    assert!(dir.path().join(REPORT_FILE).exists());
    assert!(dir.path().join(SWEEP_FILE).exists());
    let header = first_line(&dir.path().join(REPORT_FILE));
    assert_eq!(header, "indicator,scope,group_a,group_b,median_a,median_b,p_raw,p_adjusted,better");
}
