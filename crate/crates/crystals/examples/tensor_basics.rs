//! Shapes, contraction, unit tensors, and projections.
//!
//! Run with: cargo run --example tensor_basics

use crystals::{IntTensor, Shape};

fn main() -> crystals::Result<()> {
    // contraction generalises the familiar products
    let u = IntTensor::vector(vec![1, 2, 3])?;
    let v = IntTensor::vector(vec![1, 1, 1])?;
    println!("inner product  (1,2,3).(1,1,1)   = {:?}", u.contract(&v, 1)?.entries());

    let a = IntTensor::matrix(vec![vec![1, 0, 2], vec![0, 1, 0]])?;
    let b = IntTensor::matrix(vec![vec![1, 0], vec![0, 1], vec![1, 0]])?;
    println!("matrix product A*B               = {:?}", a.contract(&b, 1)?.entries());

    let c = IntTensor::scalar(2);
    println!("scalar multiple 2*(1,-1)         = {:?}", c.contract(&u, 0)?.entries());
    println!("outer product  (1,2,3)x(1,1,1)   = {:?}", u.contract(&v, 0)?.entries());

    // a projection computes fiber sums onto the selected modes
    let m = IntTensor::matrix(vec![vec![0, 0, 1], vec![1, 0, -1], vec![0, 0, 0]])?;
    println!("row sums of M                    = {:?}", m.project(&[1])?.entries());
    println!("column sums of M                 = {:?}", m.project(&[2])?.entries());
    println!("total of M                       = {:?}", m.project(&[])?.entries());
    println!("transpose of M                   = {:?}", m.project(&[2, 1])?.entries());

    // the operator form is an ordinary tensor; contracting it against M
    // gives the same answer as the direct fiber summation
    let pi = IntTensor::projection(m.shape(), &[1])?;
    assert_eq!(pi.contract(&m, 2)?, m.project(&[1])?);
    println!("operator tensor for row sums has shape {:?}", pi.shape().sizes());

    // selector tuples may repeat modes: this embeds a vector on a diagonal
    let w = IntTensor::vector(vec![5, -7])?;
    let pi_diag = IntTensor::projection(&Shape::new(vec![2])?, &[1, 1])?;
    let diag = pi_diag.contract(&w, 1)?;
    println!("diagonal embedding of (5,-7)     = {:?}", diag.entries());
    Ok(())
}
