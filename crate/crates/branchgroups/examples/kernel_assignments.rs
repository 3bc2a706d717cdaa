//! Index assignments and canonical kernel elements: the summation
//! condition, extensions, path assignments, and the coset witness.

use branchgroups::kernel::{
    kernel_coset_witness, path_assignment, theta, IndexAssignment,
};
use branchgroups::tree::Vertex;
use branchgroups::words::{AccompanyingVector, Family, FamilyKind};

fn main() -> branchgroups::Result<()> {
    let family = Family::new(FamilyKind::Egs, AccompanyingVector::new(3, &[1, 2])?);

    let asg = IndexAssignment::random(3, 2, 42);
    println!("random valid assignment, depth 2: {:?}", asg.indices);
    println!("summation condition: {}", asg.check_summation(false));

    let ext = asg.extend_random(7);
    println!(
        "extension restricts back: {}",
        theta(&ext.leaf_vector())? == asg.leaf_vector()
    );

    let path = path_assignment(&Vertex::new(vec![2, 1], 3)?, 3);
    println!("path assignment through 21: {:?}", path.indices);

    let g = asg.canonical_element(&family)?;
    println!(
        "canonical element is level-2 trivial: {}",
        g.is_level_trivial(2)?
    );

    // The canonical element lies in its own CH_2-coset of H_2.
    match kernel_coset_witness(&family, 2, 4, &g)? {
        Some(w) => println!("coset witness exponents: {:?}", w.exponents),
        None => println!("no coset witness found"),
    }
    Ok(())
}
