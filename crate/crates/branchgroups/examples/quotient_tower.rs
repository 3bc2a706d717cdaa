//! Walk the tower of finite level quotients: orders, derived indices,
//! and level stabilizer indices.

use branchgroups::quotient::Quotient;
use branchgroups::words::{AccompanyingVector, Family, FamilyKind};

fn main() -> branchgroups::Result<()> {
    for kind in [FamilyKind::Ggs, FamilyKind::Egs] {
        let family = Family::new(kind, AccompanyingVector::new(3, &[1, 2])?);
        println!("{} family, p = 3, alpha = (1, 2)", family.kind());
        for level in 1..=4usize {
            let q = Quotient::new(&family, level)?;
            let derived = q.derived_subgroup();
            println!(
                "  level {}: |Q| = {}, |Q : Q'| = {}, |Q : Stab(1)-image| = {}",
                level,
                q.order(),
                q.order() / derived.order(),
                q.order() / q.stab_image(1)?.order()
            );
        }
    }
    Ok(())
}
