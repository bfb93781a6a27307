//! Rebuilding a tensor from prescribed projections.
//!
//! Run with: cargo run --example realize_album

use std::collections::BTreeMap;

use crystals::{Album, IntTensor, Shape};

fn main() -> crystals::Result<()> {
    // ask for a 2x2 integer matrix with row sums (3,7) and column sums (4,6)
    let mut pictures = BTreeMap::new();
    pictures.insert(vec![1], IntTensor::vector(vec![3, 7])?);
    pictures.insert(vec![2], IntTensor::vector(vec![4, 6])?);
    let album = Album::new(1, Shape::new(vec![2, 2])?, pictures)?;

    let (matrix, trace) = album.realize_traced()?;
    println!("realized matrix: {:?}", matrix.entries());
    println!("row sums:        {:?}", matrix.project(&[1])?.entries());
    println!("column sums:     {:?}", matrix.project(&[2])?.entries());

    // the construction record is replayable on its own
    let replayed = trace.replay()?;
    assert_eq!(replayed, matrix);
    println!("trace has {} steps and replays to the same tensor", trace.steps().len());

    // higher-dimensional pictures work the same way; here we photograph a
    // random-ish 3-mode tensor and rebuild something with equal projections
    let source = IntTensor::new(
        Shape::new(vec![2, 3, 2])?,
        vec![4, -1, 0, 2, 2, -3, 1, 1, 0, -2, 5, 0],
    )?;
    let album = Album::from_tensor(&source, 2)?;
    let rebuilt = album.realize()?;
    for (axes, picture) in album.pictures() {
        assert_eq!(&rebuilt.project(axes)?, picture);
    }
    println!("all {} two-dimensional pictures reproduced exactly", album.pictures().len());

    // incompatible pictures are rejected with the first violating overlap
    let mut bad = BTreeMap::new();
    bad.insert(vec![1], IntTensor::vector(vec![1, 0])?);
    bad.insert(vec![2], IntTensor::vector(vec![5, 5])?);
    let bad_album = Album::new(1, Shape::new(vec![2, 2])?, bad)?;
    match bad_album.realize() {
        Err(e) => println!("incompatible album rejected: {e}"),
        Ok(_) => unreachable!("totals 1 and 10 cannot agree"),
    }
    Ok(())
}
