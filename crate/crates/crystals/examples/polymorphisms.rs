//! Alternating operations and polymorphisms of the two-element clique.
//!
//! Run with: cargo run --example polymorphisms

use crystals::{is_alternating, is_polymorphism, Digraph, FunctionTable};

fn main() -> crystals::Result<()> {
    let k2 = Digraph::clique(2)?;

    // the alternating-sum parity function is the reason the base level of
    // the relaxation decides 2-colourability exactly
    for arity in [3, 5, 7] {
        let parity = FunctionTable::parity(arity)?;
        let alternating = is_alternating(&parity)?;
        let polymorphism = is_polymorphism(&parity, &k2)?;
        println!("parity, arity {arity}: alternating = {alternating}, polymorphism of K2 = {polymorphism}");
        assert!(alternating && polymorphism);
    }

    // constants are alternating too, but collapse edges onto loops
    let constant = FunctionTable::constant(2, 3, 1)?;
    println!(
        "constant, arity 3: alternating = {}, polymorphism of K2 = {}",
        is_alternating(&constant)?,
        is_polymorphism(&constant, &k2)?
    );
    assert!(is_alternating(&constant)?);
    assert!(!is_polymorphism(&constant, &k2)?);

    // projections onto one coordinate are polymorphisms but not alternating
    let first = FunctionTable::new(2, 3, vec![1, 1, 1, 1, 2, 2, 2, 2])?;
    println!(
        "first coordinate, arity 3: alternating = {}, polymorphism of K2 = {}",
        is_alternating(&first)?,
        is_polymorphism(&first, &k2)?
    );
    Ok(())
}
