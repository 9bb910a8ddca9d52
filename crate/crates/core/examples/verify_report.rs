//! Runs the full check suite for one Dynkin type and rank.
//!
//! `cargo run --release --example verify_report -- D 4`

use clusterq::qchar::DynkinType;
use clusterq::verify::{verify, Status};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: DynkinType = args.first().map_or("D", String::as_str).parse().expect("type A or D");
    let n: u32 = args.get(1).map_or(Ok(4), |s| s.parse()).expect("rank");
    let report = verify(kind, n, 0);
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        println!("{tag:4} {:<45} {}", c.name, c.details);
    }
    println!("{} passed, {} failed, {} skipped", report.summary.pass, report.summary.fail, report.summary.skipped);
}
