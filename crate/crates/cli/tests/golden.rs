//! Byte-for-byte comparison of command output against `tests/golden`.
//! Set `HF_BLESS=1` to rewrite the expected files.

use std::path::PathBuf;
use std::process::{Command, Output};

const M: &str = "ring: x,y; ideal: x, y";
const X2_XY_Y3: &str = "ring: x,y; ideal: x^2, x*y, y^3";
const XY_YZ_ZX: &str = "ring: x,y,z; ideal: x*y, y*z, z*x";
const X2_Y2: &str = "ring: x,y; ideal: x^2, y^2";
const X3_XY_Y4: &str = "ring: x,y; ideal: x^3, x*y, y^4";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbertforge"))
        .args(args)
        .env_remove("HF_ENUM_CAP")
        .env("RUST_LOG", "off")
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("HF_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&expected),
        "{name} differs from its golden file"
    );
}

#[test]
fn hilbert_quotient() {
    golden(
        "hilbert_quotient.json",
        &["hilbert", "--ideal", "ring: x,y; ideal: x^2, x*y", "--json"],
    );
}

#[test]
fn hilbert_ideal() {
    golden(
        "hilbert_ideal.json",
        &[
            "hilbert",
            "--ideal",
            "ring: x,y; ideal: x^2, x*y",
            "--of-ideal",
            "--json",
        ],
    );
}

#[test]
fn hilbert_table() {
    golden(
        "hilbert_quotient.txt",
        &["hilbert", "--ideal", "ring: x,y; ideal: x^2, x*y"],
    );
}

#[test]
fn coeffs() {
    golden(
        "coeffs_i2.json",
        &["coeffs", "--ideal", "ring: x,y; ideal: x^2, x*y", "--i", "2", "--json"],
    );
}

#[test]
fn hvector() {
    golden(
        "hvector.json",
        &["hvector", "--ideal", "ring: x,y; ideal: x^2, x*y", "--json"],
    );
}

#[test]
fn strand_example() {
    golden(
        "strand.json",
        &[
            "strand", "--n", "2", "--m", "2", "--p", "1,1", "--a", "2", "--b", "1", "--k", "3", "--j", "2", "--json",
        ],
    );
}

#[test]
fn strand_table_value() {
    let out = run(&[
        "strand", "--n", "2", "--m", "2", "--p", "1,1", "--a", "2", "--b", "1", "--k", "3", "--j", "2",
    ]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("18\n"));
}

#[test]
fn scan_power_example() {
    golden(
        "scan_m_i1_j2.json",
        &[
            "scan-power",
            "--ideal",
            M,
            "--i",
            "1",
            "--j",
            "2",
            "--kmax",
            "8",
            "--json",
        ],
    );
}

#[test]
fn scan_power_csv() {
    golden(
        "scan_m_i1_j2.csv",
        &[
            "scan-power",
            "--ideal",
            M,
            "--i",
            "1",
            "--j",
            "2",
            "--kmax",
            "8",
            "--format",
            "csv",
        ],
    );
}

#[test]
fn scan_power_corpus() {
    for (name, ideal) in [
        ("m", M),
        ("x2_xy_y3", X2_XY_Y3),
        ("xy_yz_zx", XY_YZ_ZX),
        ("x2_y2", X2_Y2),
        ("x3_xy_y4", X3_XY_Y4),
    ] {
        golden(
            &format!("scan_corpus_{name}.json"),
            &[
                "scan-power",
                "--ideal",
                ideal,
                "--i",
                "1",
                "--j",
                "2",
                "--kmax",
                "12",
                "--json",
            ],
        );
    }
}

#[test]
fn betti_tables() {
    golden("betti_m_k2.json", &["betti", "--ideal", M, "--k", "2", "--json"]);
    golden(
        "betti_xy_yz_zx_k2.json",
        &["betti", "--ideal", XY_YZ_ZX, "--k", "2", "--json"],
    );
    golden(
        "betti_x2_xy_y3_k3.csv",
        &["betti", "--ideal", X2_XY_Y3, "--k", "3", "--format", "csv"],
    );
}

#[test]
fn scan_betti() {
    golden(
        "scan_betti_x2_xy_y3_l1.json",
        &[
            "scan-betti",
            "--ideal",
            X2_XY_Y3,
            "--l",
            "1",
            "--i",
            "1",
            "--kmax",
            "8",
            "--json",
        ],
    );
}

#[test]
fn fiber_dim() {
    golden("fiber_xy_yz_zx.json", &["fiber-dim", "--ideal", XY_YZ_ZX, "--json"]);
}
