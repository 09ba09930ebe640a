//! `reproduce` output must match the checked-in golden files byte for byte.
//!
//! Set `K3M_BLESS=1` to rewrite the golden files from the current library.

use std::path::PathBuf;
use std::process::Command;

const TABLES: [&str; 6] = ["s2-cones", "s2-walls", "aut-n3", "period-image-m4", "period-image-m8", "period-image-m12"];
const FORMATS: [(&str, &str); 3] = [("csv", "csv"), ("text", "txt"), ("json", "json")];

fn reproduce(table: &str, format: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_k3m"))
        .args(["reproduce", table, "--format", format])
        .output()
        .expect("run k3m");
    assert!(
        out.status.success(),
        "reproduce {table} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("UTF-8 output")
}

fn golden_path(table: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("golden")
        .join(format!("{table}.{ext}"))
}

#[test]
fn reproduce_matches_golden_files() {
    let bless = std::env::var_os("K3M_BLESS").is_some();
    let mut mismatches = Vec::new();
    for table in TABLES {
        for (format, ext) in FORMATS {
            let got = reproduce(table, format);
            let path = golden_path(table, ext);
            if bless {
                std::fs::write(&path, &got).expect("write golden file");
                continue;
            }
            let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            if got != want {
                mismatches.push(format!("{table}.{ext}"));
            }
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn reproduce_is_deterministic() {
    for table in TABLES {
        assert_eq!(reproduce(table, "json"), reproduce(table, "json"));
    }
}

#[test]
fn golden_text_matches_library_rendering() {
    for table in TABLES {
        let id: k3m::report::TableId = table.parse().unwrap();
        let t = k3m::report::build(id).unwrap();
        let want = std::fs::read_to_string(golden_path(table, "txt")).unwrap();
        assert_eq!(t.to_string(), want, "{table}");
    }
}
