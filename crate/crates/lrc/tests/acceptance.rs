//! Acceptance run: one line per criterion, then a determinism line comparing
//! single-threaded and eight-threaded reports byte for byte.

use std::time::Instant;

use lrc::criteria::{run_criterion, TITLES};
use lrc::parallel::RayonExec;

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() {
    let serial = RayonExec::new(1).expect("single-thread pool");
    let wide = RayonExec::new(8).expect("eight-thread pool");

    let mut failed = Vec::new();
    let mut serial_text = Vec::new();
    for (i, title) in TITLES.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let report = run_criterion(id, &serial);
        let secs = start.elapsed().as_secs_f64();
        let ok = report.passed();
        println!("criterion {id:>2}: {} {title} ({secs:.1}s)", status(ok));
        for c in report.failures() {
            println!("    failed check {}: {}", c.name, c.detail);
        }
        if !ok {
            failed.push(id);
        }
        serial_text.push(report.render_text());
    }

    let start = Instant::now();
    let mut diverged = Vec::new();
    for (i, want) in serial_text.iter().enumerate() {
        let got = run_criterion(i + 1, &wide).render_text();
        if &got != want {
            diverged.push(i + 1);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = diverged.is_empty();
    println!(
        "criterion 12: {} determinism at 1 and 8 threads ({secs:.1}s)",
        status(ok)
    );
    if !ok {
        println!("    reports differ for criteria {diverged:?}");
        failed.push(12);
    }

    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
