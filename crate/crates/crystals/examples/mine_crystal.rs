//! Mining a four-dimensional crystal: a cubical tensor all of whose
//! oriented two-dimensional projections equal one fixed matrix.
//!
//! Run with: cargo run --example mine_crystal

use crystals::tensor::increasing_tuples;
use crystals::{fooling_matrix, mine_crystal, verify_crystal, IntTensor};

fn main() -> crystals::Result<()> {
    // the balanced zero-diagonal matrix with total one on three colours
    let m = fooling_matrix(3)?;
    println!("picture matrix M:");
    print_matrix(&m)?;

    let crystal = mine_crystal(&m, 4)?;
    println!("mined a crystal of shape {:?}", crystal.shape().sizes());
    assert!(verify_crystal(&crystal, &m)?);

    for axes in increasing_tuples(4, 2) {
        assert_eq!(crystal.project(&axes)?, m);
        println!("projection onto modes {axes:?} equals M");
    }
    println!("crystal total = {} (equals the total of M)", crystal.total()?);

    // crystals exist for any balanced matrix, in any dimension
    let id = IntTensor::matrix(vec![vec![1, 0], vec![0, 1]])?;
    let id_crystal = mine_crystal(&id, 6)?;
    assert!(verify_crystal(&id_crystal, &id)?);
    println!("6-dimensional identity crystal verified");

    // but not for unbalanced ones
    let unbalanced = IntTensor::matrix(vec![vec![1, 1], vec![0, 0]])?;
    match mine_crystal(&unbalanced, 3) {
        Err(e) => println!("unbalanced matrix rejected: {e}"),
        Ok(_) => unreachable!("row sums (2,0) never match column sums (1,1)"),
    }
    Ok(())
}

fn print_matrix(m: &IntTensor) -> crystals::Result<()> {
    let n = m.shape().size(0);
    for r in 1..=n {
        let row: Vec<i64> = (1..=n).map(|c| m.entry(&[r, c]).unwrap()).collect();
        println!("  {row:?}");
    }
    Ok(())
}
