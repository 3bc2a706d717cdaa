//! Construct the standard families and print their basic parameters.

use branchgroups::words::{AccompanyingVector, Family, FamilyKind};

fn main() -> branchgroups::Result<()> {
    for (p, alpha) in [(3u32, vec![1i64, 2]), (5, vec![1, 2, 3, 4]), (5, vec![1, 2, 2, 1])] {
        let vector = AccompanyingVector::new(p, &alpha)?;
        println!(
            "p = {}, alpha = {:?}: periodic = {}, symmetric = {}",
            p,
            vector.alpha(),
            vector.is_periodic(),
            vector.is_symmetric()
        );
        let egs = Family::new(FamilyKind::Egs, vector);
        for (gen, aut) in egs.generators() {
            println!("  generator {:?}: root activity {}", gen, aut.activity());
        }
    }
    Ok(())
}
