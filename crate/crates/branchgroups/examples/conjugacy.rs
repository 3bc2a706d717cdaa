//! The conjugator C = af with f = (C, ..., C): it fixes a and carries
//! b to c, exhibiting the GGS group and the subgroup ⟨a, c⟩ as
//! conjugate inside Aut T.

use branchgroups::words::{AccompanyingVector, Family, FamilyKind};

fn main() -> branchgroups::Result<()> {
    for (p, alpha) in [(3u32, vec![1i64, 2]), (5, vec![1, 2, 3, 4])] {
        let family = Family::new(FamilyKind::Egs, AccompanyingVector::new(p, &alpha)?);
        let conj = family.conjugator()?;
        let a = family.generator_a();
        let b = family.generator_b();
        let c = family.generator_c()?;
        let depth = if p == 3 { 5 } else { 4 };
        println!(
            "p = {}: a^C = a to depth {}: {}; b^C = c: {}",
            p,
            depth,
            a.conjugate(&conj).portrait_eq(&a, depth)?,
            b.conjugate(&conj).portrait_eq(&c, depth)?,
        );
    }
    Ok(())
}
