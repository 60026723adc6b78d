use std::path::Path;
use std::process::{Command, Output};

fn obloch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obloch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn exit_codes() {
    let ok = obloch(&[
        "steady-state",
        "--t1",
        "1.5",
        "--t2",
        "0.5",
        "--omega",
        "1",
        "--r3tilde",
        "1",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"rho11_eq\": 0.7857142857142857"));

    let bad = obloch(&["validate", "--t1", "1", "--t2", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("2T1 >= T2 violated"));

    assert_eq!(obloch(&["simulate", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(obloch(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(obloch(&["steady-state", "--omega", "abc"]).status.code(), Some(2));

    let domain = obloch(&["steady-state", "--r3tilde", "1.5"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(!domain.stderr.is_empty());
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    std::fs::write(&file, b"x").unwrap();
    let o = obloch(&["simulate", "--samples", "5", "--out", file.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write"));
}

#[test]
fn simulate_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = obloch(&[
        "simulate",
        "--omega",
        "2",
        "--r3tilde",
        "0.5",
        "--t-max",
        "5",
        "--samples",
        "501",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&dir.path().join("simulate.csv"));
    assert_eq!(header, ["t", "R1", "R2", "R3", "rho11", "rho22", "chi", "zeta"]);
    assert_eq!(rows.len(), 501);
    assert_eq!(rows[0][..4], [0.0, 0.0, 0.0, 1.0]);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("simulate.json")).unwrap()).unwrap();
    assert_eq!(meta["params"]["omega"], 2.0);
    assert!(meta["version"].is_string());
    assert!(meta["equilibrium"]["density"]["rho11"].is_number());
}

#[test]
fn csv_values_round_trip() {
    use optical_bloch::sweep::{time_series, Backend, GridAxis, SeriesColumn};
    use optical_bloch::{BlochVector, SystemParams};
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let args = [
        "simulate",
        "--t1",
        "2.5",
        "--t2",
        "0.7",
        "--omega",
        "1.3",
        "--r3tilde",
        "0.8",
        "--initial",
        "0.3,-0.2,0.5",
    ];
    let o = obloch(&[&args[..], &["--t-max", "3", "--samples", "301", "--out", out]].concat());
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = read_csv(&dir.path().join("simulate.csv"));
    let p = SystemParams::on_resonance(2.5, 0.7, 1.3, 0.8).unwrap();
    let axis = GridAxis::linear(0.0, 3.0, 301).unwrap();
    let s = time_series(
        &p,
        &BlochVector::new(0.3, -0.2, 0.5),
        &axis,
        &SeriesColumn::ALL,
        Backend::Analytic,
    )
    .unwrap();
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0].to_bits(), s.times[i].to_bits());
        for (k, col) in s.values.iter().enumerate() {
            assert_eq!(row[k + 1].to_bits(), col[i].to_bits());
        }
    }
}

#[test]
fn backends_agree_on_presets() {
    for name in ["fig1a", "fig5b", "fig2b", "fig6", "fig4a"] {
        let dir = tempfile::tempdir().unwrap();
        let out_a = dir.path().join("a");
        let out_n = dir.path().join("n");
        let common = ["figure", "--name", name, "--grid", "40x24", "--samples", "201"];
        for (out, backend) in [(&out_a, "analytic"), (&out_n, "numeric")] {
            let o = obloch(&[&common[..], &["--backend", backend, "--out", out.to_str().unwrap()]].concat());
            assert_eq!(
                o.status.code(),
                Some(0),
                "{name} {backend}: {}",
                String::from_utf8_lossy(&o.stderr)
            );
        }
        let csv = format!("{name}.csv");
        let (ha, ra) = read_csv(&out_a.join(&csv));
        let (hn, rn) = read_csv(&out_n.join(&csv));
        assert_eq!(ha, hn);
        let worst = ra
            .iter()
            .zip(&rn)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "{name}: {worst:e}");
    }
}

#[test]
fn figure_outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<_> = [("1", "r1"), ("4", "r4"), ("4", "r4b")]
        .iter()
        .map(|(workers, sub)| {
            let out = dir.path().join(sub);
            let o = obloch(&[
                "figure",
                "--name",
                "fig2a",
                "--grid",
                "120x90",
                "--workers",
                workers,
                "--out",
                out.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0));
            (
                std::fs::read(out.join("fig2a.pgm")).unwrap(),
                std::fs::read(out.join("fig2a.csv")).unwrap(),
            )
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    assert!(runs[0].0.starts_with(b"P5\n120 90\n255\n"));
}

#[test]
fn default_figure_is_200_by_200() {
    let dir = tempfile::tempdir().unwrap();
    let o = obloch(&["figure", "--name", "fig1a", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let img = std::fs::read(dir.path().join("fig1a.pgm")).unwrap();
    let header = b"P5\n200 200\n255\n";
    assert!(img.starts_with(header));
    assert_eq!(img.len(), header.len() + 200 * 200);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig1a.json")).unwrap()).unwrap();
    assert_eq!(meta["grid"]["y"]["max"], 6.0);
    assert_eq!(meta["grid"]["x"]["max"], 4.0);
    assert_eq!(meta["params"]["r3_tilde"], 0.0);
    assert_eq!(meta["quantization"]["levels"], 20);
}
