//! The level-`k` affine integer programming relaxation for digraph
//! homomorphism.
//!
//! For digraphs `G`, `H` and a level `k >= 1`, the system has one variable
//! per pair of a vertex subset `S` of `G` with `1 <= |S| <= k` and a
//! function `f: S -> V(H)`, and one variable per pair of an edge `g` of `G`
//! and a function on its endpoint set. The constraints are:
//!
//! 1. the variables of each subset sum to one;
//! 2. subset variables marginalise consistently: for nonempty `R` strictly
//!    inside `S`, the variable of `(R, f)` equals the sum over all
//!    extensions of `f` to `S`;
//! 3. edge variables marginalise onto subset variables of the endpoint
//!    sets the same way;
//! 4. edge variables whose image pair is not an edge of `H` vanish.
//!
//! The answer is YES when the system admits an integer solution. Family 4
//! is applied at build time by dropping the forbidden columns, which leaves
//! the feasible set unchanged. For `k = 1` only singleton subsets exist, so
//! family 2 is empty and family 3 ranges over singletons.
//!
//! Variable order is deterministic: subsets in size-then-lexicographic
//! order with functions ordered lexicographically by image tuple, then edge
//! variables in input edge order.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diophantine::{solve_diophantine, BigMatrix};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::tensor::increasing_tuples;

/// One column of the constraint system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarDescriptor {
    /// `lambda_S(f)` for a vertex subset `S` (sorted) and images aligned
    /// with the sorted vertices.
    Subset { vertices: Vec<usize>, images: Vec<usize> },
    /// `lambda_g(f)` for the edge with the given input index; `images` are
    /// the images of the edge's two endpoints in order. For a loop both
    /// components coincide.
    Edge { edge: usize, images: (usize, usize) },
}

/// The assembled constraint system of one relaxation instance.
#[derive(Debug, Clone)]
pub struct AipSystem {
    variables: Vec<VarDescriptor>,
    matrix: BigMatrix,
    rhs: Vec<BigInt>,
}

impl AipSystem {
    pub fn variables(&self) -> &[VarDescriptor] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn row_count(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &BigMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[BigInt] {
        &self.rhs
    }

    /// Direct substitution of an assignment into every constraint row.
    pub fn verify_witness(&self, witness: &[BigInt]) -> bool {
        if witness.len() != self.variable_count() {
            return false;
        }
        match self.matrix.mul_vec(witness) {
            Ok(lhs) => lhs == self.rhs,
            Err(_) => false,
        }
    }
}

/// The verdict of one relaxation run. When the answer is YES the witness
/// assigns an integer to every catalogued variable (in catalogue order) and
/// has been re-verified against every constraint.
#[derive(Debug, Clone)]
pub struct AipVerdict {
    pub yes: bool,
    pub system: AipSystem,
    pub witness: Option<Vec<BigInt>>,
}

/// Exact number of variables the system for `(g, h, k)` will have, without
/// building it.
pub fn variable_count(g: &Digraph, h: &Digraph, k: usize) -> u128 {
    let q = g.vertex_count() as u128;
    let n = h.vertex_count() as u128;
    let mut total = 0u128;
    let mut binom = 1u128; // C(q, s) built incrementally
    for s in 1..=k.min(g.vertex_count()) {
        binom = binom * (q - s as u128 + 1) / s as u128;
        total += binom * n.pow(s as u32);
    }
    let h_loops = h.edges().iter().filter(|&&(a, b)| a == b).count() as u128;
    let h_edges = h.edges().len() as u128 - h_loops;
    for &(u, v) in g.edges() {
        total += if u == v { h_loops } else { h_edges };
    }
    total
}

/// All image tuples of length `len` over `1..=n`, lexicographic.
fn image_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(n.pow(len as u32));
    let mut current = vec![1usize; len];
    loop {
        out.push(current.clone());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < n {
                current[pos] += 1;
                break;
            }
            current[pos] = 1;
        }
    }
}

fn image_rank(images: &[usize], n: usize) -> usize {
    images.iter().fold(0, |acc, &img| acc * n + (img - 1))
}

/// Builds the constraint system for the `k`-th level on instance `g` over
/// template `h`.
pub fn build_system(g: &Digraph, h: &Digraph, k: usize) -> Result<AipSystem> {
    if k < 1 {
        return Err(Error::Argument("hierarchy level must be at least 1".into()));
    }
    let n = h.vertex_count();

    // catalogue subsets in size-then-lexicographic order
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for s in 1..=k.min(g.vertex_count()) {
        subsets.extend(increasing_tuples(g.vertex_count(), s));
    }
    let subset_id: HashMap<Vec<usize>, usize> =
        subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

    let mut variables = Vec::new();
    let mut subset_base = Vec::with_capacity(subsets.len());
    for vertices in &subsets {
        subset_base.push(variables.len());
        for images in image_tuples(n, vertices.len()) {
            variables.push(VarDescriptor::Subset { vertices: vertices.clone(), images });
        }
    }

    // edge variables, with forbidden image pairs dropped (family 4)
    let mut edge_cols: Vec<Vec<((usize, usize), usize)>> = Vec::with_capacity(g.edges().len());
    for (e, &(gu, gv)) in g.edges().iter().enumerate() {
        let mut cols = Vec::new();
        let pairs: Vec<(usize, usize)> = if gu == gv {
            (1..=n).map(|a| (a, a)).collect()
        } else {
            let mut all = Vec::with_capacity(n * n);
            for a in 1..=n {
                for b in 1..=n {
                    all.push((a, b));
                }
            }
            all
        };
        for images in pairs {
            if h.has_edge(images.0, images.1) {
                cols.push((images, variables.len()));
                variables.push(VarDescriptor::Edge { edge: e, images });
            }
        }
        edge_cols.push(cols);
    }

    let col_of_subset = |vertices: &[usize], images: &[usize]| -> usize {
        subset_base[subset_id[vertices]] + image_rank(images, n)
    };

    let width = variables.len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();

    // family 1: each subset's variables sum to one
    for (sid, vertices) in subsets.iter().enumerate() {
        let mut row = vec![0i64; width];
        let block = n.pow(vertices.len() as u32);
        for offset in 0..block {
            row[subset_base[sid] + offset] = 1;
        }
        rows.push(row);
        rhs.push(BigInt::from(1));
    }

    // family 2: marginalisation from S onto each nonempty proper subset R
    for vertices in &subsets {
        let s = vertices.len();
        if s < 2 {
            continue;
        }
        for mask in 1..(1u32 << s) - 1 {
            let positions: Vec<usize> =
                (0..s).filter(|&t| mask & (1 << t) != 0).collect();
            let restricted: Vec<usize> = positions.iter().map(|&t| vertices[t]).collect();
            let block = n.pow(positions.len() as u32);
            let mut family: Vec<Vec<i64>> = vec![vec![0i64; width]; block];
            for (rank, images) in image_tuples(n, positions.len()).into_iter().enumerate() {
                family[rank][col_of_subset(&restricted, &images)] = 1;
                debug_assert_eq!(rank, image_rank(&images, n));
            }
            for images in image_tuples(n, s) {
                let sub: Vec<usize> = positions.iter().map(|&t| images[t]).collect();
                family[image_rank(&sub, n)][col_of_subset(vertices, &images)] -= 1;
            }
            for row in family {
                rows.push(row);
                rhs.push(BigInt::zero());
            }
        }
    }

    // family 3: edge variables marginalise onto subsets of the endpoint set
    for (e, &(gu, gv)) in g.edges().iter().enumerate() {
        let mut domain = vec![gu, gv];
        domain.dedup();
        if gu > gv {
            domain = vec![gv, gu];
        }
        let image_at = |images: (usize, usize), vertex: usize| -> usize {
            if vertex == gu {
                images.0
            } else {
                images.1
            }
        };
        let d = domain.len();
        for mask in 1..(1u32 << d) {
            let positions: Vec<usize> = (0..d).filter(|&t| mask & (1 << t) != 0).collect();
            if positions.len() > k {
                continue;
            }
            let restricted: Vec<usize> = positions.iter().map(|&t| domain[t]).collect();
            let block = n.pow(positions.len() as u32);
            let mut family: Vec<Vec<i64>> = vec![vec![0i64; width]; block];
            for (rank, images) in image_tuples(n, positions.len()).into_iter().enumerate() {
                family[rank][col_of_subset(&restricted, &images)] = 1;
            }
            for &(images, col) in &edge_cols[e] {
                let sub: Vec<usize> =
                    restricted.iter().map(|&vertex| image_at(images, vertex)).collect();
                family[image_rank(&sub, n)][col] -= 1;
            }
            for row in family {
                rows.push(row);
                rhs.push(BigInt::zero());
            }
        }
    }

    let matrix = BigMatrix::from_rows(rows)?;
    Ok(AipSystem { variables, matrix, rhs })
}

/// Decides the `k`-th level of the relaxation: YES exactly when the
/// constraint system is feasible over the integers. Witnesses are
/// re-verified by direct substitution before being returned.
pub fn aip_level_k(g: &Digraph, h: &Digraph, k: usize) -> Result<AipVerdict> {
    let system = build_system(g, h, k)?;
    let solved = solve_diophantine(system.matrix(), system.rhs())?;
    match solved.witness {
        Some(witness) => {
            if !system.verify_witness(&witness) {
                return Err(Error::Structure(
                    "solver returned an assignment that fails substitution".into(),
                ));
            }
            Ok(AipVerdict { yes: true, system, witness: Some(witness) })
        }
        None => Ok(AipVerdict { yes: false, system, witness: None }),
    }
}
