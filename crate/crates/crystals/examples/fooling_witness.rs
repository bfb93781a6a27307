//! The constructive fooling pipeline: a crystal-derived witness makes the
//! relaxation accept an uncolourable instance, certified two independent
//! ways.
//!
//! Run with: cargo run --example fooling_witness

use crystals::{
    aip_level_k, brute_homomorphism, certify_fooling, verify_free_edge, CrystalWitness, Digraph,
};

fn main() -> crystals::Result<()> {
    let colours = 3;
    let level = 3;
    let instance = Digraph::clique(4)?; // not 3-colourable
    let template = Digraph::clique(colours)?;

    // route one: solve the relaxation directly
    let verdict = aip_level_k(&instance, &template, level)?;
    println!(
        "direct solve: level {level} on K4 over K{colours} answers {}",
        if verdict.yes { "YES" } else { "NO" }
    );
    assert!(verdict.yes);

    // route two: build the witness explicitly from a crystal
    let witness = CrystalWitness::build(&instance, colours, level)?;
    println!(
        "crystal witness assigns a sum-one tensor to each of the {} vertex tuples",
        witness.images().len()
    );

    // each instance edge induces 2^level blocks that merge from a single
    // sum-one distribution over the template's edges
    let candidate = witness.edge_candidate((1, 2))?;
    let q = verify_free_edge(&candidate, &template)?.expect("edge certifies");
    println!("distribution behind edge (1,2), indexed by the edges of K3:");
    for (edge, value) in template.edges().iter().zip(q.entries()) {
        if *value != 0 {
            println!("  weight {value:>2} on {edge:?}");
        }
    }

    assert!(certify_fooling(&instance, colours, level)?);
    println!("all witness conditions certified");

    // and yet no actual colouring exists
    assert!(brute_homomorphism(&instance, &Digraph::clique(3)?)?.is_none());
    println!("brute force confirms K4 has no 3-colouring: the relaxation is fooled");
    Ok(())
}
