//! One line per acceptance criterion; the test fails if any criterion fails.
//!
//! `cargo test --test acceptance -- --nocapture` shows the lines as they run.
//! Set `LOWDEFECT_FAST=1` for the reduced sample sizes.

use lowdefect::suites::{self, SUITES};

#[test]
fn acceptance() {
    let fast = std::env::var("LOWDEFECT_FAST").is_ok_and(|v| v == "1");
    let mut failed = Vec::new();
    for (id, _) in SUITES {
        let line = match suites::run(id, fast) {
            Ok(o) => {
                if !o.passed {
                    failed.push(id);
                }
                o.line()
            }
            Err(e) => {
                failed.push(id);
                format!("{id}: FAIL (error: {e})")
            }
        };
        println!("{line}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
