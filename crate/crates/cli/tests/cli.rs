//! End-to-end runs of the `mft` binary and file-format round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mft_cli::bench::{doubling_ratios, read_csv};
use mft_cli::format::{corner_area, PolygonFile, ReportFile};
use mft_cli::svg;
use mft_core::geom::{side_of, Side};
use mft_core::{DirectedLine, Point};
use tempfile::TempDir;

const Q4: &str = r#"{"vertices": [[0, 0], [2, 5], [6, 4], [5, 0]]}"#;

fn mft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mft"))
        .args(args)
        .env_remove("MFT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn solve_report(input: &Path, algo: &str) -> ReportFile {
    let o = mft(&["solve", s(input), "--algo", algo]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    ReportFile::parse(&stdout(&o)).unwrap()
}

#[test]
fn quadrilateral_report() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "q4.json", Q4);
    let r = solve_report(&input, "linear");
    assert_eq!(r.mft.edges, [1, 2, 4]);
    assert!((r.mft.area - 55.0).abs() <= 1e-9 * 55.0);
    assert!((corner_area(&r.mft.corners) - r.mft.area).abs() <= 1e-9 * 55.0);
}

#[test]
fn counterclockwise_input_keeps_its_numbering() {
    let dir = TempDir::new().unwrap();
    // Q4 listed the other way round: its edge k is the edge between input vertices k and k + 1.
    let input = write(&dir, "q4.txt", "0 0\n5 0\n6 4\n2 5\n");
    let r = solve_report(&input, "linear");
    assert!(r.reversed);
    assert_eq!(r.mft.edges, [1, 3, 4]);
    assert!((r.mft.area - 55.0).abs() <= 1e-9 * 55.0);
}

#[test]
fn square_is_rejected() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "square.txt", "0 0\n0 1\n1 1\n1 0\n");
    let o = mft(&["solve", s(&input)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parallel"));
}

#[test]
fn square_can_be_perturbed() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "square.txt", "0 0\n0 1\n1 1\n1 0\n");
    let o = mft(&["solve", s(&input), "--perturb"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn algorithms_report_identical_triangles() {
    let dir = TempDir::new().unwrap();
    let q4 = write(&dir, "q4.json", Q4);
    let gen = dir.path().join("g.json");
    assert!(mft(&["generate", "--n", "40", "--seed", "5", "--out", s(&gen)]).status.success());
    for input in [&q4, &gen] {
        let want = serde_json::to_string(&solve_report(input, "brute").mft).unwrap();
        for algo in ["linear", "logn", "quadratic"] {
            assert_eq!(serde_json::to_string(&solve_report(input, algo).mft).unwrap(), want, "{algo}");
        }
    }
}

#[test]
fn solving_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("g.json");
    assert!(mft(&["generate", "--n", "200", "--seed", "3", "--out", s(&input)]).status.success());
    let run = || {
        let o = mft(&["solve", s(&input), "--emit-candidates"]);
        let mut r = ReportFile::parse(&stdout(&o)).unwrap();
        r.wall_ns = 0;
        r
    };
    let first = run();
    assert!(!first.candidates.is_empty());
    assert_eq!(first, run());
}

#[test]
fn polygon_files_round_trip() {
    let p: mft_core::Polygon = mft_core::polygon::generate_random(500, 11).unwrap();
    let mut file = PolygonFile::from_points(p.vertices());
    file.seed = Some(11);
    file.name = Some("sample".into());
    let back = PolygonFile::parse(&file.to_json()).unwrap();
    assert_eq!(back, file);
    for (a, b) in back.vertices.iter().zip(&file.vertices) {
        assert_eq!(a[0].to_bits(), b[0].to_bits());
        assert_eq!(a[1].to_bits(), b[1].to_bits());
    }
}

#[test]
fn plain_text_polygons() {
    let f = PolygonFile::parse("# q4\n0 0\n2, 5\n\n6 4\n5 0\n").unwrap();
    assert_eq!(f.vertices, vec![[0.0, 0.0], [2.0, 5.0], [6.0, 4.0], [5.0, 0.0]]);
    assert!(PolygonFile::parse("1 2 3\n").is_err());
    assert!(PolygonFile::parse("1 x\n").is_err());
}

#[test]
fn report_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("g.json");
    assert!(mft(&["generate", "--n", "100", "--seed", "8", "--out", s(&input)]).status.success());
    let out = dir.path().join("r.json");
    let o = mft(&["solve", s(&input), "--emit-candidates", "--out", s(&out)]);
    assert!(o.status.success());
    let r = ReportFile::read(&out).unwrap();
    let back = ReportFile::parse(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.mft.area.to_bits(), r.mft.area.to_bits());
}

#[test]
fn svg_triangle_contains_polygon() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("g.json");
    assert!(mft(&["generate", "--n", "30", "--seed", "2", "--out", s(&input)]).status.success());
    let out = dir.path().join("p.svg");
    assert!(mft(&["solve", s(&input), "--svg", s(&out)]).status.success());
    let paths = svg::paths(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(paths.len(), 2);
    let poly: Vec<_> = paths.iter().filter(|(c, _)| c == "polygon").collect();
    let tri: Vec<_> = paths.iter().filter(|(c, _)| c == "triangle").collect();
    assert_eq!((poly.len(), tri.len()), (1, 1));
    let (poly, tri) = (&poly[0].1, &tri[0].1);
    assert_eq!(tri.len(), 3);
    let pt = |q: &[f64; 2]| Point::new(q[0], q[1]);
    let diam = 1e-9 * poly.iter().map(|q| pt(q).norm()).fold(1.0, f64::max);
    // The triangle is clockwise like the solver's polygon: everything lies on the right.
    for k in 0..3 {
        let line = DirectedLine::through(pt(&tri[k]), pt(&tri[(k + 1) % 3])).unwrap();
        for q in poly {
            assert_ne!(side_of(&line, pt(q), diam), Side::Left, "{q:?} outside side {k}");
        }
    }

    let rendered = dir.path().join("r.svg");
    assert!(mft(&["render", s(&input), "--out", s(&rendered)]).status.success());
    assert_eq!(std::fs::read_to_string(&rendered).unwrap(), std::fs::read_to_string(&out).unwrap());
}

#[test]
fn random_verification() {
    let o = mft(&["verify", "--random", "16", "42", "100"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("100/100 OK"));
}

#[test]
fn single_instance_verification() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "q4.json", Q4);
    let o = mft(&["verify", s(&input)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/1 OK"));
}

#[test]
fn corrupted_report_is_caught() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "q4.json", Q4);
    let good = dir.path().join("good.json");
    assert!(mft(&["solve", s(&input), "--out", s(&good)]).status.success());
    assert!(mft(&["verify", s(&input), "--report", s(&good)]).status.success());

    let mut r = ReportFile::read(&good).unwrap();
    r.mft.area = 54.0;
    let bad = write(&dir, "bad.json", &r.to_json());
    let o = mft(&["verify", s(&input), "--report", s(&bad)]);
    assert_eq!(o.status.code(), Some(3));

    let mut r = ReportFile::read(&good).unwrap();
    r.mft.edges = [1, 3, 4];
    let bad = write(&dir, "bad2.json", &r.to_json());
    assert_eq!(mft(&["verify", s(&input), "--report", s(&bad)]).status.code(), Some(3));
}

#[test]
fn generated_files() {
    let dir = TempDir::new().unwrap();
    let tri = dir.path().join("t.json");
    assert!(mft(&["generate", "--n", "3", "--seed", "1", "--out", s(&tri)]).status.success());
    let t = PolygonFile::read(&tri).unwrap();
    assert_eq!(t.polygon().unwrap().n(), 3);

    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert!(mft(&["generate", "--n", "1000", "--seed", "9", "--out", s(&a)]).status.success());
    assert!(mft(&["generate", "--n", "1000", "--seed", "9", "--out", s(&b)]).status.success());
    let p = PolygonFile::read(&a).unwrap().polygon().unwrap();
    assert_eq!(p.n(), 1000);
    assert!(!p.was_reversed());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let o = Command::new(env!("CARGO_BIN_EXE_mft"))
        .args(["generate", "--n", "1000"])
        .env("MFT_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(o.stdout, std::fs::read(&a).unwrap());

    assert_eq!(mft(&["generate", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn size_caps_exit_four() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("g.json");
    assert!(mft(&["generate", "--n", "300", "--seed", "1", "--out", s(&input)]).status.success());
    assert_eq!(mft(&["solve", s(&input), "--algo", "brute"]).status.code(), Some(4));
}

#[test]
fn small_benchmark() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("b.csv");
    let o = mft(&[
        "bench", "--sizes", "2^8..2^10", "--seeds", "2", "--algos", "linear,brute", "--repeats", "1", "--csv", s(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("size,algo,seed,wall_ns,iterations,pointer_advances\n"));
    let rows = read_csv(text.as_bytes()).unwrap();
    // Brute force only fits the smallest size.
    assert_eq!(rows.len(), 3 * 2 + 2);
    for r in rows.iter().filter(|r| r.algo == "linear") {
        assert!(r.iterations <= 2 * r.size, "{r:?}");
    }
    assert_eq!(doubling_ratios(&rows, "linear").len(), 2);
    assert!(stdout(&o).contains("ratio linear 1024"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("brute skipped at size 512"));

    let bad = mft(&["bench", "--sizes", "1024,512"]);
    assert_eq!(bad.status.code(), Some(2));
}
