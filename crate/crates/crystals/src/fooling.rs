//! Constructive certification that the affine hierarchy accepts
//! uncolourable instances.
//!
//! The pipeline: mine a crystal for the fooling matrix (a balanced integer
//! matrix with zero diagonal and total one, which exists for at least three
//! colours), project it onto every `k`-tuple of instance vertices to get an
//! assignment of sum-one tensors, and certify that this assignment is a
//! homomorphism into the free hypergraph of the sum-one-vector minion
//! generated by the tensor power of the clique template:
//!
//! - every assigned tensor has total one;
//! - for each instance edge, the `2^k` tensors assigned to its index
//!   projections arise by coordinate-merging a single sum-one distribution
//!   over the template's edges (decided exactly as an integer-linear
//!   feasibility problem);
//! - the assignment commutes with index projections.
//!
//! Together with a direct run of the relaxation, this gives two independent
//! routes to the same acceptance verdict.
//!
//! The module also hosts the arity-`L` function-table checks
//! characterising the power of the base level: alternating operations and
//! polymorphisms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::album::mine_crystal;
use crate::diophantine::{solve_diophantine, BigMatrix};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::tensor::{project_tuple, IntTensor, Shape};

/// An integer vector whose entries sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineVector {
    entries: Vec<i64>,
}

impl AffineVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let total = entries
            .iter()
            .try_fold(0i64, |acc, &v| acc.checked_add(v).ok_or(Error::Overflow))?;
        if total != 1 {
            return Err(Error::Argument(format!(
                "entries must sum to one, got total {total}"
            )));
        }
        Ok(AffineVector { entries })
    }

    /// Flattens a tensor with total one into an affine vector (row-major).
    pub fn from_tensor(tensor: &IntTensor) -> Result<Self> {
        AffineVector::new(tensor.entries().to_vec())
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coordinate merge along a map `pi`: entry `j` of the result is the
    /// sum of the entries mapped onto `j`. Sums to one by construction.
    pub fn merge(&self, pi: &MinionMap) -> Result<AffineVector> {
        if self.len() != pi.source() {
            return Err(Error::Shape(format!(
                "vector of length {} cannot be merged along a map on {} coordinates",
                self.len(),
                pi.source()
            )));
        }
        let mut entries = vec![0i64; pi.target()];
        for (&v, &img) in self.entries.iter().zip(pi.images()) {
            let cell = &mut entries[img - 1];
            *cell = cell.checked_add(v).ok_or(Error::Overflow)?;
        }
        Ok(AffineVector { entries })
    }
}

/// A total map `[source] -> [target]`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinionMap {
    target: usize,
    images: Vec<usize>,
}

impl MinionMap {
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self> {
        if images.iter().any(|&img| img == 0 || img > target) {
            return Err(Error::Argument(format!(
                "images must lie in 1..={target}"
            )));
        }
        Ok(MinionMap { target, images })
    }

    pub fn identity(size: usize) -> Self {
        MinionMap { target: size, images: (1..=size).collect() }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `then` after `self`.
    pub fn compose(&self, then: &MinionMap) -> Result<MinionMap> {
        if self.target != then.source() {
            return Err(Error::Shape(format!(
                "cannot compose maps with target {} and source {}",
                self.target,
                then.source()
            )));
        }
        let images = self.images.iter().map(|&m| then.images[m - 1]).collect();
        MinionMap::new(then.target, images)
    }
}

/// The `k`-th tensor power of a single edge: the hyperedge of the powered
/// digraph, listing for every selector tuple in `[2]^k` (lexicographic) the
/// projected vertex tuple.
pub fn edge_tensor_power(edge: (usize, usize), k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let pair = [edge.0, edge.1];
    Shape::cubical(2, k)
        .expect("k >= 0")
        .each_index()
        .map(|selector| {
            let image = selector.iter().map(|&s| pair[s - 1]).collect();
            (selector, image)
        })
        .collect()
}

/// The balanced fooling matrix on `n >= 3` colours: zero diagonal, total
/// one, and equal row- and column-sum vectors. No such matrix exists on
/// two colours.
pub fn fooling_matrix(n: usize) -> Result<IntTensor> {
    if n < 3 {
        return Err(Error::Argument(format!(
            "no balanced zero-diagonal matrix with total one exists on {n} colours"
        )));
    }
    let mut m = IntTensor::zeros(Shape::cubical(n, 2)?);
    let core = [(1usize, 3usize, 1i64), (2, 1, 1), (2, 3, -1)];
    let mut entries = m.entries().to_vec();
    for (r, c, v) in core {
        entries[(r - 1) * n + (c - 1)] = v;
    }
    m = IntTensor::new(m.shape().clone(), entries)?;
    Ok(m)
}

/// A candidate hyperedge of the free hypergraph, given as its `2^k` blocks:
/// one sum-one vector over `V(H)^k` per selector tuple in `[2]^k`.
#[derive(Debug, Clone)]
pub struct BlockEdgeCandidate {
    level: usize,
    blocks: BTreeMap<Vec<usize>, AffineVector>,
}

impl BlockEdgeCandidate {
    pub fn new(level: usize, blocks: BTreeMap<Vec<usize>, AffineVector>) -> Result<Self> {
        let selectors: Vec<Vec<usize>> =
            Shape::cubical(2, level)?.each_index().collect();
        if blocks.len() != selectors.len() {
            return Err(Error::Structure(format!(
                "candidate needs {} blocks, got {}",
                selectors.len(),
                blocks.len()
            )));
        }
        for selector in &selectors {
            if !blocks.contains_key(selector) {
                return Err(Error::Structure(format!(
                    "candidate is missing the block at {selector:?}"
                )));
            }
        }
        Ok(BlockEdgeCandidate { level, blocks })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn blocks(&self) -> &BTreeMap<Vec<usize>, AffineVector> {
        &self.blocks
    }
}

/// The coordinate-merging map sending an edge of `h` to the rank of its
/// projection onto `selector` among the tuples of `V(h)^k`.
fn edge_projection_map(h: &Digraph, selector: &[usize], k: usize) -> Result<MinionMap> {
    let n = h.vertex_count();
    let tuple_shape = Shape::cubical(n, k)?;
    let images = h
        .edges()
        .iter()
        .map(|&(u, v)| {
            let projected: Vec<usize> =
                selector.iter().map(|&s| if s == 1 { u } else { v }).collect();
            tuple_shape.offset(&projected) + 1
        })
        .collect();
    MinionMap::new(tuple_shape.cell_count(), images)
}

/// Decides whether the candidate is a hyperedge of the free hypergraph of
/// the sum-one minion generated by the `k`-th tensor power of `h`: searches
/// for a sum-one integer distribution over the edges of `h` whose
/// coordinate merges reproduce every block. The defining conditions are
/// linear, so the search is an exact integer feasibility problem. The
/// recovered distribution is re-verified by substitution before being
/// returned; `None` means no distribution exists.
pub fn verify_free_edge(
    cand: &BlockEdgeCandidate,
    h: &Digraph,
) -> Result<Option<AffineVector>> {
    let k = cand.level();
    let n = h.vertex_count();
    let tuple_count = Shape::cubical(n, k)?.cell_count();
    let edge_count = h.edges().len();

    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for (selector, block) in cand.blocks() {
        if block.len() != tuple_count {
            return Err(Error::Shape(format!(
                "block at {selector:?} has length {}, expected {tuple_count}",
                block.len()
            )));
        }
        let pi = edge_projection_map(h, selector, k)?;
        let mut family = vec![vec![0i64; edge_count]; tuple_count];
        for (e, &img) in pi.images().iter().enumerate() {
            family[img - 1][e] = 1;
        }
        for (row, &value) in family.into_iter().zip(block.entries()) {
            rows.push(row);
            rhs.push(BigInt::from(value));
        }
    }
    rows.push(vec![1i64; edge_count]);
    rhs.push(BigInt::from(1));

    let matrix = BigMatrix::from_rows(rows)?;
    let solved = solve_diophantine(&matrix, &rhs)?;
    let Some(witness) = solved.witness else {
        return Ok(None);
    };
    let entries = witness
        .iter()
        .map(|v| v.to_i64().ok_or(Error::Overflow))
        .collect::<Result<Vec<i64>>>()?;
    let distribution = AffineVector::new(entries)?;
    for (selector, block) in cand.blocks() {
        let pi = edge_projection_map(h, selector, k)?;
        if &distribution.merge(&pi)? != block {
            return Err(Error::Structure(format!(
                "recovered distribution fails substitution at {selector:?}"
            )));
        }
    }
    Ok(Some(distribution))
}

/// The crystal-derived assignment of sum-one tensors to `k`-tuples of
/// instance vertices: each tuple receives the projection of one mined
/// crystal onto it.
#[derive(Debug, Clone)]
pub struct CrystalWitness {
    colours: usize,
    level: usize,
    crystal: IntTensor,
    images: BTreeMap<Vec<usize>, IntTensor>,
}

impl CrystalWitness {
    /// Mines a crystal for [`fooling_matrix`]`(colours)` in as many
    /// dimensions as `g` has vertices and projects it onto every `k`-tuple.
    /// Requires a loopless instance on at least two vertices, at least
    /// three colours, and level at least two.
    pub fn build(g: &Digraph, colours: usize, level: usize) -> Result<Self> {
        if !g.is_loopless() {
            return Err(Error::Argument("instance digraph must be loopless".into()));
        }
        if g.vertex_count() < 2 {
            return Err(Error::Argument("instance needs at least two vertices".into()));
        }
        if level < 2 {
            return Err(Error::Argument("witness construction needs level at least 2".into()));
        }
        let matrix = fooling_matrix(colours)?;
        let crystal = mine_crystal(&matrix, g.vertex_count())?;
        let mut images = BTreeMap::new();
        for tuple in Shape::cubical(g.vertex_count(), level)?.each_index() {
            let image = crystal.project(&tuple)?;
            images.insert(tuple, image);
        }
        Ok(CrystalWitness { colours, level, crystal, images })
    }

    pub fn colours(&self) -> usize {
        self.colours
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn crystal(&self) -> &IntTensor {
        &self.crystal
    }

    pub fn images(&self) -> &BTreeMap<Vec<usize>, IntTensor> {
        &self.images
    }

    pub fn image(&self, tuple: &[usize]) -> Option<&IntTensor> {
        self.images.get(tuple)
    }

    /// The block candidate induced by one instance edge: for each selector
    /// in `[2]^k`, the image of the projected endpoint tuple.
    pub fn edge_candidate(&self, edge: (usize, usize)) -> Result<BlockEdgeCandidate> {
        let mut blocks = BTreeMap::new();
        for (selector, tuple) in edge_tensor_power(edge, self.level) {
            let image = self.images.get(&tuple).ok_or_else(|| {
                Error::Argument(format!("edge {edge:?} is not over the instance vertices"))
            })?;
            blocks.insert(selector, AffineVector::from_tensor(image)?);
        }
        BlockEdgeCandidate::new(self.level, blocks)
    }
}

/// Certifies the witness conditions for instance `g` against the clique on
/// `colours` vertices at the given level:
///
/// (a) every assigned tensor sums to one;
/// (b) every instance edge induces a hyperedge of the free hypergraph,
///     decided by [`verify_free_edge`];
/// (c) the assignment commutes with index projections.
pub fn certify_fooling(g: &Digraph, colours: usize, level: usize) -> Result<bool> {
    let witness = CrystalWitness::build(g, colours, level)?;
    let template = Digraph::clique(colours)?;

    for image in witness.images().values() {
        if image.total()? != 1 {
            return Ok(false);
        }
    }

    for &edge in g.edges() {
        let cand = witness.edge_candidate(edge)?;
        if verify_free_edge(&cand, &template)?.is_none() {
            return Ok(false);
        }
    }

    let selectors: Vec<Vec<usize>> = Shape::cubical(level, level)?.each_index().collect();
    for (tuple, image) in witness.images() {
        for selector in &selectors {
            let projected_tuple = project_tuple(tuple, selector)?;
            let direct = witness.image(&projected_tuple).expect("tuple over vertices");
            if &image.project(selector)? != direct {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A complete table for a function `[domain]^arity -> [domain]`, stored
/// row-major with the first argument slowest. Values are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    domain: usize,
    arity: usize,
    values: Vec<usize>,
}

impl FunctionTable {
    pub fn new(domain: usize, arity: usize, values: Vec<usize>) -> Result<Self> {
        let size = domain.checked_pow(arity as u32).ok_or(Error::Overflow)?;
        if values.len() != size {
            return Err(Error::Structure(format!(
                "table needs {size} rows, got {}",
                values.len()
            )));
        }
        if values.contains(&0) {
            return Err(Error::Structure("table values are 1-based".into()));
        }
        Ok(FunctionTable { domain, arity, values })
    }

    /// The alternating-sum parity function on two values: position-wise
    /// signs `+,-,+,-,...`, reduced mod 2.
    pub fn parity(arity: usize) -> Result<Self> {
        let shape = Shape::cubical(2, arity)?;
        let values = shape
            .each_index()
            .map(|args| {
                let sum: i64 = args
                    .iter()
                    .enumerate()
                    .map(|(pos, &a)| {
                        let bit = (a - 1) as i64;
                        if pos % 2 == 0 {
                            bit
                        } else {
                            -bit
                        }
                    })
                    .sum();
                (sum.rem_euclid(2) as usize) + 1
            })
            .collect();
        FunctionTable::new(2, arity, values)
    }

    pub fn constant(domain: usize, arity: usize, value: usize) -> Result<Self> {
        let size = domain.checked_pow(arity as u32).ok_or(Error::Overflow)?;
        FunctionTable::new(domain, arity, vec![value; size])
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0usize, |acc, &a| acc * self.domain + (a - 1));
        self.values[idx]
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (pos, &chosen) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(pos);
        for mut tail in permutations(&rest) {
            tail.insert(0, chosen);
            out.push(tail);
        }
    }
    out
}

/// Checks that an odd-arity function is alternating: invariant under every
/// parity-preserving permutation of its arguments, and unchanged when a
/// trailing repeated pair is replaced by another repeated pair.
pub fn is_alternating(f: &FunctionTable) -> Result<bool> {
    let arity = f.arity();
    if arity < 3 || arity.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "alternation is defined for odd arity at least 3, got {arity}"
        )));
    }
    let odd_positions: Vec<usize> = (1..=arity).step_by(2).collect();
    let even_positions: Vec<usize> = (2..=arity).step_by(2).collect();
    let shape = Shape::cubical(f.domain(), arity)?;
    for odd_perm in permutations(&odd_positions) {
        for even_perm in permutations(&even_positions) {
            // interleave back into a full parity-preserving permutation
            let mut selector = vec![0usize; arity];
            for (slot, &value) in odd_positions.iter().zip(&odd_perm) {
                selector[slot - 1] = value;
            }
            for (slot, &value) in even_positions.iter().zip(&even_perm) {
                selector[slot - 1] = value;
            }
            for args in shape.each_index() {
                let permuted = project_tuple(&args, &selector)?;
                if f.eval(&args) != f.eval(&permuted) {
                    return Ok(false);
                }
            }
        }
    }
    let head_shape = Shape::cubical(f.domain(), arity - 2)?;
    for head in head_shape.each_index() {
        let mut reference = head.clone();
        reference.extend([1, 1]);
        let expected = f.eval(&reference);
        for b in 2..=f.domain() {
            let mut args = head.clone();
            args.extend([b, b]);
            if f.eval(&args) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that a function table is a polymorphism of `h`: applied
/// coordinate-wise to any tuple of edges, it must produce an edge.
pub fn is_polymorphism(f: &FunctionTable, h: &Digraph) -> Result<bool> {
    if f.domain() != h.vertex_count() {
        return Err(Error::Argument(format!(
            "table domain {} does not match {} vertices",
            f.domain(),
            h.vertex_count()
        )));
    }
    let arity = f.arity();
    let edge_count = h.edges().len();
    if edge_count == 0 {
        return Ok(true);
    }
    // odometer over all arity-tuples of edges
    let selector_shape = Shape::cubical(edge_count, arity)?;
    for choice in selector_shape.each_index() {
        let mut heads = Vec::with_capacity(arity);
        let mut tails = Vec::with_capacity(arity);
        for &c in &choice {
            let (u, v) = h.edges()[c - 1];
            heads.push(u);
            tails.push(v);
        }
        if !h.has_edge(f.eval(&heads), f.eval(&tails)) {
            return Ok(false);
        }
    }
    Ok(true)
}
