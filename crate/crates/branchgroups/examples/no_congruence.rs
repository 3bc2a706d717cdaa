//! The finite-level witness against the congruence property of EGS
//! groups: t_n agrees with c on the first n levels, yet every t_n sits
//! in b's coset of the derived subgroup — so no Stab(n) fits inside
//! [Γ,Γ].

use branchgroups::kernel::t_element;
use branchgroups::quotient::{level_rep, Quotient};
use branchgroups::words::{AccompanyingVector, Family, FamilyKind};

fn main() -> branchgroups::Result<()> {
    let family = Family::new(FamilyKind::Egs, AccompanyingVector::new(3, &[1, 2])?);
    let c = family.generator_c()?;
    let b = family.generator_b();
    let ba = b.conjugate(&family.generator_a());
    for n in 1..=4usize {
        let m = n + 1;
        let t = t_element(&family, n)?;
        let approx = c.invert().compose(&t);
        let q = Quotient::new(&family, m)?;
        let derived = q.derived_subgroup();
        let in_b_coset = derived.contains(
            &level_rep(&t, m)?.compose(&level_rep(&b, m)?.inverse()),
        )?;
        println!(
            "n = {}: c^-1 t_n in Stab({}): {}; outside Stab({}): {}; t_n in b[Γ,Γ]-image at level {}: {}",
            n,
            n,
            approx.is_level_trivial(n)?,
            n + 1,
            !approx.is_level_trivial(n + 1)?,
            m,
            in_b_coset
        );
        if n == 2 {
            println!("  t_2 equals b^a as portraits: {}", t.portrait_eq(&ba, 5)?);
        }
    }
    Ok(())
}
