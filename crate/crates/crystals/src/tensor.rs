//! Dense integer tensors with exact (checked) arithmetic.
//!
//! A tensor is a dense array of `i64` entries over an ordered list of mode
//! sizes. The empty mode list is allowed and denotes a scalar. Index tuples
//! are 1-based throughout the public API; entries are stored row-major with
//! the first mode slowest.
//!
//! The two workhorse operations are `contract`, which sums over a run of
//! shared modes (generalising inner, outer, and matrix products), and
//! `project`, which computes fiber sums onto the modes selected by an index
//! tuple. The operator form of a projection is available as a materialised
//! tensor via [`IntTensor::projection`]; `project` computes its contraction
//! action directly without materialising it.
//!
//! All arithmetic is checked: any overflow of `i64` is reported as an error
//! rather than wrapping.

use crate::error::{Error, Result};

/// An ordered list of mode sizes. May be empty (the scalar shape).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    sizes: Vec<usize>,
}

impl Shape {
    /// Creates a shape from mode sizes. Every size must be at least 1.
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::Shape(format!("mode sizes must be positive, got {sizes:?}")));
        }
        Ok(Shape { sizes })
    }

    /// The scalar shape (zero modes).
    pub fn scalar() -> Self {
        Shape { sizes: Vec::new() }
    }

    /// The cubical shape with `q` modes all of size `n`.
    pub fn cubical(n: usize, q: usize) -> Result<Self> {
        Shape::new(vec![n; q])
    }

    /// The all-one shape with `q` modes of size 1.
    pub fn ones(q: usize) -> Self {
        Shape { sizes: vec![1; q] }
    }

    pub fn rank(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, mode: usize) -> usize {
        self.sizes[mode]
    }

    /// Number of cells (product of sizes; 1 for the scalar shape).
    pub fn cell_count(&self) -> usize {
        self.sizes.iter().product()
    }

    /// The shape selected by an index tuple over mode positions: mode `t` of
    /// the result has the size of mode `i_t`. Positions are 1-based, may
    /// repeat, and need not be sorted.
    pub fn select(&self, positions: &[usize]) -> Result<Shape> {
        let q = self.rank();
        let mut sizes = Vec::with_capacity(positions.len());
        for &p in positions {
            if p == 0 || p > q {
                return Err(Error::Bounds {
                    index: positions.to_vec(),
                    shape: vec![q; positions.len()],
                });
            }
            sizes.push(self.sizes[p - 1]);
        }
        Ok(Shape { sizes })
    }

    /// Concatenation of two shapes.
    pub fn concat(&self, other: &Shape) -> Shape {
        let mut sizes = self.sizes.clone();
        sizes.extend_from_slice(&other.sizes);
        Shape { sizes }
    }

    /// Validates a 1-based index tuple against this shape.
    pub fn check_index(&self, index: &[usize]) -> Result<()> {
        if index.len() != self.rank()
            || index.iter().zip(&self.sizes).any(|(&b, &n)| b == 0 || b > n)
        {
            return Err(Error::Bounds {
                index: index.to_vec(),
                shape: self.sizes.clone(),
            });
        }
        Ok(())
    }

    /// Row-major offset of a valid index tuple (first mode slowest).
    pub fn offset(&self, index: &[usize]) -> usize {
        let mut off = 0;
        for (&b, &n) in index.iter().zip(&self.sizes) {
            off = off * n + (b - 1);
        }
        off
    }

    /// Iterates over all 1-based index tuples of this shape in row-major
    /// order. The scalar shape yields the empty tuple exactly once.
    pub fn each_index(&self) -> IndexIter<'_> {
        IndexIter {
            sizes: &self.sizes,
            next: Some(vec![1; self.sizes.len()]),
        }
    }
}

/// Odometer over the index tuples of a shape.
pub struct IndexIter<'a> {
    sizes: &'a [usize],
    next: Option<Vec<usize>>,
}

impl Iterator for IndexIter<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = self.sizes.len();
        loop {
            if pos == 0 {
                // exhausted
                break;
            }
            pos -= 1;
            if succ[pos] < self.sizes[pos] {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 1;
        }
        Some(current)
    }
}

/// Projection of a tuple onto positions: `(b_{i_1}, ..., b_{i_p})`.
/// Positions are 1-based and must lie within the length of `b`; the empty
/// position tuple yields the empty tuple.
pub fn project_tuple(b: &[usize], positions: &[usize]) -> Result<Vec<usize>> {
    let q = b.len();
    positions
        .iter()
        .map(|&p| {
            if p == 0 || p > q {
                Err(Error::Bounds {
                    index: positions.to_vec(),
                    shape: vec![q; positions.len()],
                })
            } else {
                Ok(b[p - 1])
            }
        })
        .collect()
}

/// The identity tuple `(1, 2, ..., q)`.
pub fn identity_tuple(q: usize) -> Vec<usize> {
    (1..=q).collect()
}

/// Whether a tuple is strictly increasing.
pub fn is_increasing(t: &[usize]) -> bool {
    t.windows(2).all(|w| w[0] < w[1])
}

/// All strictly increasing `p`-tuples over `[q]`, in lexicographic order.
/// For `p = 0` this is the single empty tuple; for `p > q` it is empty.
pub fn increasing_tuples(q: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > q {
        return out;
    }
    let mut current: Vec<usize> = (1..=p).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination
        let mut t = p;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if current[t] < q - (p - 1 - t) {
                current[t] += 1;
                for u in t + 1..p {
                    current[u] = current[u - 1] + 1;
                }
                break;
            }
        }
    }
}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// A dense integer tensor. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntTensor {
    shape: Shape,
    entries: Vec<i64>,
}

impl IntTensor {
    /// Creates a tensor from a shape and row-major entries.
    pub fn new(shape: Shape, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != shape.cell_count() {
            return Err(Error::Shape(format!(
                "shape {:?} holds {} cells but {} entries were given",
                shape.sizes(),
                shape.cell_count(),
                entries.len()
            )));
        }
        Ok(IntTensor { shape, entries })
    }

    /// The all-zero tensor of a shape.
    pub fn zeros(shape: Shape) -> Self {
        let entries = vec![0; shape.cell_count()];
        IntTensor { shape, entries }
    }

    /// A zero-mode tensor holding a single value.
    pub fn scalar(value: i64) -> Self {
        IntTensor { shape: Shape::scalar(), entries: vec![value] }
    }

    /// A one-mode tensor.
    pub fn vector(entries: Vec<i64>) -> Result<Self> {
        let shape = Shape::new(vec![entries.len()])?;
        IntTensor::new(shape, entries)
    }

    /// A two-mode tensor from rows.
    pub fn matrix(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("matrix rows have unequal lengths".into()));
        }
        let shape = Shape::new(vec![r, c])?;
        IntTensor::new(shape, rows.into_iter().flatten().collect())
    }

    /// The standard unit tensor: all zeros except a single 1 at `at`.
    pub fn unit(shape: Shape, at: &[usize]) -> Result<Self> {
        shape.check_index(at)?;
        let mut t = IntTensor::zeros(shape);
        let off = t.shape.offset(at);
        t.entries[off] = 1;
        Ok(t)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// The entry at a 1-based index tuple. For the scalar shape, the empty
    /// tuple addresses the unique entry.
    pub fn entry(&self, index: &[usize]) -> Result<i64> {
        self.shape.check_index(index)?;
        Ok(self.entries[self.shape.offset(index)])
    }

    /// Sum of all entries (exact).
    pub fn total(&self) -> Result<i64> {
        self.entries.iter().try_fold(0i64, |acc, &v| checked_add(acc, v))
    }

    /// Entrywise sum of two tensors of equal shape.
    pub fn add(&self, other: &IntTensor) -> Result<IntTensor> {
        self.zip_with(other, checked_add)
    }

    /// Entrywise difference of two tensors of equal shape.
    pub fn sub(&self, other: &IntTensor) -> Result<IntTensor> {
        self.zip_with(other, |a, b| b.checked_neg().ok_or(Error::Overflow).and_then(|nb| checked_add(a, nb)))
    }

    fn zip_with(&self, other: &IntTensor, f: impl Fn(i64, i64) -> Result<i64>) -> Result<IntTensor> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!(
                "entrywise operation on shapes {:?} and {:?}",
                self.shape.sizes(),
                other.shape.sizes()
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntTensor { shape: self.shape.clone(), entries })
    }

    /// Contraction over `l` shared modes: the last `l` modes of `self` are
    /// summed against the first `l` modes of `other`. The result keeps
    /// `self`'s leading modes followed by `other`'s trailing modes. `l = 0`
    /// is the outer product.
    pub fn contract(&self, other: &IntTensor, l: usize) -> Result<IntTensor> {
        let (k, m) = (self.rank(), other.rank());
        if l > k || l > m {
            return Err(Error::Shape(format!(
                "cannot contract {l} modes of tensors with ranks {k} and {m}"
            )));
        }
        let shared_left = &self.shape.sizes()[k - l..];
        let shared_right = &other.shape.sizes()[..l];
        if shared_left != shared_right {
            return Err(Error::Shape(format!(
                "shared mode sizes {shared_left:?} and {shared_right:?} differ"
            )));
        }
        let lead = Shape::new(self.shape.sizes()[..k - l].to_vec())?;
        let trail = Shape::new(other.shape.sizes()[l..].to_vec())?;
        let out_shape = lead.concat(&trail);

        let rows = lead.cell_count();
        let inner = shared_left.iter().product::<usize>();
        let cols = trail.cell_count();
        let mut entries = vec![0i64; rows * cols];
        for i in 0..rows {
            for z in 0..inner {
                let a = self.entries[i * inner + z];
                if a == 0 {
                    continue;
                }
                for j in 0..cols {
                    let b = other.entries[z * cols + j];
                    if b == 0 {
                        continue;
                    }
                    let cell = &mut entries[i * cols + j];
                    *cell = checked_add(*cell, checked_mul(a, b)?)?;
                }
            }
        }
        Ok(IntTensor { shape: out_shape, entries })
    }

    /// Full contraction: sums over all modes of whichever operand has lower
    /// rank. Chains of this operation associate to the left:
    /// `a.star(&b)?.star(&c)?`.
    pub fn star(&self, other: &IntTensor) -> Result<IntTensor> {
        self.contract(other, self.rank().min(other.rank()))
    }

    /// The projection operator for shape `n` and positions `i`: a tensor of
    /// shape `(n_i, n)` whose entry at `(a, b)` is 1 exactly when the
    /// projection of `b` onto `i` equals `a`. For the empty position tuple
    /// this is the all-one tensor of shape `n`.
    pub fn projection(n: &Shape, positions: &[usize]) -> Result<IntTensor> {
        let selected = n.select(positions)?;
        let block = n.cell_count();
        let mut entries = vec![0i64; selected.cell_count() * block];
        for b in n.each_index() {
            let a = project_tuple(&b, positions).expect("validated positions");
            entries[selected.offset(&a) * block + n.offset(&b)] = 1;
        }
        let shape = selected.concat(n);
        Ok(IntTensor { shape, entries })
    }

    /// Fiber sums onto the modes selected by `positions`: the entry of the
    /// result at `a` is the sum of all entries of `self` at indices `b` with
    /// `b` projecting onto `a`. Equals the contraction of
    /// [`IntTensor::projection`] against `self` without materialising the
    /// operator. Positions may repeat and need not be sorted; the empty
    /// tuple yields the scalar total.
    pub fn project(&self, positions: &[usize]) -> Result<IntTensor> {
        let out_shape = self.shape.select(positions)?;
        let mut entries = vec![0i64; out_shape.cell_count()];
        for (b, &v) in self.shape.each_index().zip(&self.entries) {
            if v == 0 {
                continue;
            }
            let a = project_tuple(&b, positions).expect("validated positions");
            let cell = &mut entries[out_shape.offset(&a)];
            *cell = checked_add(*cell, v)?;
        }
        Ok(IntTensor { shape: out_shape, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_matrix() -> IntTensor {
        IntTensor::matrix(vec![vec![1, 2], vec![3, 4]]).unwrap()
    }

    fn balanced_matrix() -> IntTensor {
        IntTensor::matrix(vec![vec![0, 0, 1], vec![1, 0, -1], vec![0, 0, 0]]).unwrap()
    }

    #[test]
    fn entry_reads_row_major() {
        let t = sample_matrix();
        assert_eq!(t.entry(&[2, 1]).unwrap(), 3);
        assert_eq!(t.entry(&[1, 2]).unwrap(), 2);
    }

    #[test]
    fn entry_of_scalar_is_unique_cell() {
        let t = IntTensor::scalar(7);
        assert_eq!(t.entry(&[]).unwrap(), 7);
    }

    #[test]
    fn entry_of_unit_tensor() {
        let t = IntTensor::unit(Shape::new(vec![3]).unwrap(), &[2]).unwrap();
        assert_eq!(t.entry(&[2]).unwrap(), 1);
        assert_eq!(t.entries(), &[0, 1, 0]);
    }

    #[test]
    fn entry_out_of_range_is_bounds_error() {
        let t = sample_matrix();
        assert!(matches!(t.entry(&[3, 1]), Err(Error::Bounds { .. })));
        assert!(matches!(t.entry(&[1]), Err(Error::Bounds { .. })));
    }

    #[test]
    fn unit_tensor_scalar_case_is_one() {
        let t = IntTensor::unit(Shape::scalar(), &[]).unwrap();
        assert_eq!(t, IntTensor::scalar(1));
    }

    #[test]
    fn unit_tensor_matrix_case() {
        let t = IntTensor::unit(Shape::new(vec![2, 2]).unwrap(), &[1, 2]).unwrap();
        assert_eq!(t.entries(), &[0, 1, 0, 0]);
    }

    #[test]
    fn unit_tensor_invalid_index() {
        assert!(matches!(
            IntTensor::unit(Shape::new(vec![2]).unwrap(), &[3]),
            Err(Error::Bounds { .. })
        ));
    }

    #[test]
    fn contract_inner_product() {
        let u = IntTensor::vector(vec![1, 2, 3]).unwrap();
        let v = IntTensor::vector(vec![1, 1, 1]).unwrap();
        let r = u.contract(&v, 1).unwrap();
        assert_eq!(r, IntTensor::scalar(6));
    }

    #[test]
    fn contract_matrix_product() {
        let a = IntTensor::matrix(vec![vec![1, 0, 2], vec![0, 1, 0]]).unwrap();
        let b = IntTensor::matrix(vec![vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let r = a.contract(&b, 1).unwrap();
        assert_eq!(r, IntTensor::matrix(vec![vec![3, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn contract_scalar_multiplication() {
        let c = IntTensor::scalar(2);
        let v = IntTensor::vector(vec![1, -1]).unwrap();
        let r = c.contract(&v, 0).unwrap();
        assert_eq!(r, IntTensor::vector(vec![2, -2]).unwrap());
    }

    #[test]
    fn contract_shared_mode_mismatch() {
        let u = IntTensor::vector(vec![1, 2]).unwrap();
        let v = IntTensor::vector(vec![1, 1, 1]).unwrap();
        assert!(matches!(u.contract(&v, 1), Err(Error::Shape(_))));
    }

    #[test]
    fn contract_overflow_is_error() {
        let u = IntTensor::vector(vec![i64::MAX, i64::MAX]).unwrap();
        let v = IntTensor::vector(vec![2, 2]).unwrap();
        assert!(matches!(u.contract(&v, 1), Err(Error::Overflow)));
    }

    #[test]
    fn projection_empty_tuple_is_all_one() {
        let n = Shape::new(vec![2, 2]).unwrap();
        let pi = IntTensor::projection(&n, &[]).unwrap();
        assert_eq!(pi.shape(), &n);
        assert!(pi.entries().iter().all(|&v| v == 1));
    }

    #[test]
    fn projection_transposes() {
        let m = balanced_matrix();
        let pi = IntTensor::projection(m.shape(), &[2, 1]).unwrap();
        let mt = pi.contract(&m, 2).unwrap();
        assert_eq!(mt, IntTensor::matrix(vec![vec![0, 1, 0], vec![0, 0, 0], vec![1, -1, 0]]).unwrap());
    }

    #[test]
    fn projection_with_repeated_positions() {
        let n = Shape::new(vec![2]).unwrap();
        let pi = IntTensor::projection(&n, &[1, 1]).unwrap();
        assert_eq!(pi.shape().sizes(), &[2, 2, 2]);
        for a1 in 1..=2usize {
            for a2 in 1..=2usize {
                for b in 1..=2usize {
                    let expect = i64::from((b, b) == (a1, a2));
                    assert_eq!(pi.entry(&[a1, a2, b]).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn projection_position_out_of_range() {
        let n = Shape::new(vec![2, 2]).unwrap();
        assert!(matches!(IntTensor::projection(&n, &[3]), Err(Error::Bounds { .. })));
    }

    #[test]
    fn project_empty_tuple_totals() {
        let t = sample_matrix();
        assert_eq!(t.project(&[]).unwrap(), IntTensor::scalar(10));
    }

    #[test]
    fn project_row_and_column_sums() {
        let m = balanced_matrix();
        assert_eq!(m.project(&[1]).unwrap(), IntTensor::vector(vec![1, 0, 0]).unwrap());
        assert_eq!(m.project(&[2]).unwrap(), IntTensor::vector(vec![1, 0, 0]).unwrap());
    }

    #[test]
    fn project_matches_materialised_operator() {
        let t = IntTensor::new(
            Shape::new(vec![2, 3, 2]).unwrap(),
            (0..12).map(|v| v * v - 5).collect(),
        )
        .unwrap();
        for positions in [vec![], vec![2], vec![3, 1], vec![2, 2], vec![1, 2, 3]] {
            let direct = t.project(&positions).unwrap();
            let pi = IntTensor::projection(t.shape(), &positions).unwrap();
            let via_operator = pi.contract(&t, t.rank()).unwrap();
            assert_eq!(direct, via_operator, "positions {positions:?}");
        }
    }

    #[test]
    fn project_tuple_examples() {
        assert_eq!(project_tuple(&[5, 7, 9], &[3, 1]).unwrap(), vec![9, 5]);
        assert_eq!(project_tuple(&[5, 7], &[]).unwrap(), Vec::<usize>::new());
        assert_eq!(project_tuple(&[4], &[1, 1, 1]).unwrap(), vec![4, 4, 4]);
        assert!(matches!(project_tuple(&[4], &[2]), Err(Error::Bounds { .. })));
    }

    #[test]
    fn identity_projection_is_identity() {
        let t = IntTensor::new(Shape::new(vec![2, 2]).unwrap(), vec![4, -1, 0, 9]).unwrap();
        assert_eq!(t.project(&identity_tuple(2)).unwrap(), t);
    }

    #[test]
    fn star_chains_left_associatively() {
        // unit(a) * pi * unit(b) picks out a single operator entry
        let n = Shape::new(vec![2, 3]).unwrap();
        let pi = IntTensor::projection(&n, &[2]).unwrap();
        for b in n.each_index() {
            let eb = IntTensor::unit(n.clone(), &b).unwrap();
            for a in 1..=3usize {
                let ea = IntTensor::unit(Shape::new(vec![3]).unwrap(), &[a]).unwrap();
                let got = ea.star(&pi).unwrap().star(&eb).unwrap();
                assert_eq!(got, IntTensor::scalar(i64::from(b[1] == a)));
            }
        }
    }

    #[test]
    fn increasing_tuples_enumeration() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert!(increasing_tuples(2, 3).is_empty());
        assert_eq!(increasing_tuples(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn each_index_is_row_major() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        let all: Vec<_> = shape.each_index().collect();
        assert_eq!(all, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        let scalar: Vec<_> = Shape::scalar().each_index().collect();
        assert_eq!(scalar, vec![Vec::<usize>::new()]);
    }
}
