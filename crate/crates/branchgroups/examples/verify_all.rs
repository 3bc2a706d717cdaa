//! Run the full verification suite and print one line per check.

use branchgroups::verify::suite_all;

fn main() -> branchgroups::Result<()> {
    let seed = 42;
    let mut failed = false;
    for report in suite_all(seed)? {
        println!(
            "{:<20} {:?}  params = {}",
            report.check, report.verdict, report.params
        );
        failed |= !report.passed();
    }
    if failed {
        std::process::exit(1);
    }
    Ok(())
}
