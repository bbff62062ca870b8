//! Acceptance criteria 1 to 11 at their stated time budgets. Prints one
//! line per criterion and exits non-zero if any criterion fails.

use homaloid_cli::verify::{run_criterion, VerifyConfig, CRITERIA};

fn main() {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    println!("\nrunning {} acceptance criteria", CRITERIA.len());
    for c in CRITERIA {
        let o = run_criterion(c.id, &cfg);
        let ok = o.passed() && o.within_budget();
        println!(
            "acceptance {:>2} {:<28} {}  {:.3?} (budget {:?})",
            c.id,
            c.title,
            if ok { "pass" } else { "FAIL" },
            o.elapsed,
            c.budget
        );
        for check in o.checks.iter().filter(|k| !k.pass) {
            println!(
                "    {}: {} (expected {}, observed {})",
                check.id, check.description, check.expected, check.observed
            );
        }
        if !o.within_budget() {
            println!("    over budget");
        }
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass\n", CRITERIA.len());
    } else {
        println!("acceptance: failed criteria {failed:?}\n");
        std::process::exit(1);
    }
}
