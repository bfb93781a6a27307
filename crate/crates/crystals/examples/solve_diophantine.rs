//! Exact integer linear algebra: Hermite normal form and Diophantine
//! feasibility with witnesses and kernel bases.
//!
//! Run with: cargo run --example solve_diophantine

use num_bigint::BigInt;

use crystals::{hermite_normal_form, solve_diophantine, BigMatrix};

fn main() -> crystals::Result<()> {
    let a = BigMatrix::from_rows(vec![vec![6, 10, 15], vec![10, 15, 6]])?;
    let (h, u) = hermite_normal_form(&a);
    println!("A * U = H with |det U| = 1;");
    println!("H rows: {:?}", fmt(&h));
    assert_eq!(a.mul(&u)?, h);

    // feasible: b is in the integer column span
    let b: Vec<BigInt> = [1, 1].map(BigInt::from).to_vec();
    let result = solve_diophantine(&a, &b)?;
    let x = result.witness.clone().expect("gcd of the columns divides b");
    println!("witness for A x = (1,1):  {x:?}");
    assert_eq!(a.mul_vec(&x)?, b);
    println!("kernel rank: {}", result.kernel_basis.len());
    for v in &result.kernel_basis {
        assert!(a.mul_vec(v)?.iter().all(|c| c == &BigInt::from(0)));
    }

    // infeasible: a parity obstruction
    let even = BigMatrix::from_rows(vec![vec![2, 4], vec![6, 2]])?;
    let odd_rhs: Vec<BigInt> = [3, 5].map(BigInt::from).to_vec();
    let result = solve_diophantine(&even, &odd_rhs)?;
    println!("even system with odd right-hand side feasible: {}", result.is_feasible());
    assert!(!result.is_feasible());
    Ok(())
}

fn fmt(m: &BigMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}
