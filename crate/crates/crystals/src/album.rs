//! Albums of picture tensors and reconstruction from prescribed projections.
//!
//! A `(p, n)`-album assigns to every strictly increasing `p`-tuple `i` over
//! the mode positions of a shape `n` a picture tensor of shape `n_i`,
//! claiming to be the `i`-projection of a single tensor of shape `n`. An
//! album is *realistic* when every pair of pictures agrees on every shared
//! sub-projection; it is *realisable* when a single tensor actually projects
//! onto all its pictures. The two notions coincide, and [`Album::realize`]
//! implements the constructive direction: it rebuilds a witness tensor by a
//! nested recursion that slices the last mode into a lower-dimensional
//! "hat" album and a shrunken "tilde" album, gluing the partial results.
//!
//! The same machinery yields *crystals*: cubical tensors all of whose
//! oriented two-dimensional projections equal one fixed matrix `M`. A
//! crystal exists whenever the row-sum vector of `M` equals its column-sum
//! vector; [`mine_crystal`] builds one by realizing the all-`M` album.

use std::collections::BTreeMap;

use crate::error::{Error, RealismViolation, Result};
use crate::tensor::{identity_tuple, increasing_tuples, IntTensor, Shape};

/// A family of picture tensors indexed by increasing tuples of mode
/// positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Album {
    p: usize,
    shape: Shape,
    pictures: BTreeMap<Vec<usize>, IntTensor>,
}

impl Album {
    /// Creates an album, validating that the picture index set is exactly
    /// the increasing `p`-tuples over the mode positions of `shape` and
    /// that each picture has the selected shape. The map is empty when
    /// `p` exceeds the number of modes.
    pub fn new(p: usize, shape: Shape, pictures: BTreeMap<Vec<usize>, IntTensor>) -> Result<Self> {
        if p == 0 {
            return Err(Error::Argument("picture dimension p must be at least 1".into()));
        }
        let q = shape.rank();
        let expected = increasing_tuples(q, p);
        if pictures.len() != expected.len() {
            return Err(Error::Structure(format!(
                "album over {q} modes with p={p} needs {} pictures, got {}",
                expected.len(),
                pictures.len()
            )));
        }
        for index in &expected {
            let picture = pictures.get(index).ok_or_else(|| {
                Error::Structure(format!("album is missing the picture at {index:?}"))
            })?;
            let want = shape.select(index)?;
            if picture.shape() != &want {
                return Err(Error::Structure(format!(
                    "picture at {index:?} has shape {:?}, expected {:?}",
                    picture.shape().sizes(),
                    want.sizes()
                )));
            }
        }
        Ok(Album { p, shape, pictures })
    }

    /// The album of all `p`-dimensional projections of a tensor. The result
    /// is always realistic.
    pub fn from_tensor(tensor: &IntTensor, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Argument("picture dimension p must be at least 1".into()));
        }
        let q = tensor.rank();
        let mut pictures = BTreeMap::new();
        for index in increasing_tuples(q, p) {
            let picture = tensor.project(&index)?;
            pictures.insert(index, picture);
        }
        Ok(Album { p, shape: tensor.shape().clone(), pictures })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// The shape of the tensor the album claims to depict.
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn pictures(&self) -> &BTreeMap<Vec<usize>, IntTensor> {
        &self.pictures
    }

    pub fn picture(&self, index: &[usize]) -> Option<&IntTensor> {
        self.pictures.get(index)
    }

    /// The increasing index tuples this album is defined on.
    pub fn index_tuples(&self) -> Vec<Vec<usize>> {
        increasing_tuples(self.shape.rank(), self.p)
    }

    /// Checks the pairwise compatibility condition: for all increasing
    /// `i, j` and all increasing `(p-1)`-tuples `r, s` with `i_r = j_s`,
    /// the `r`-projection of the picture at `i` must equal the
    /// `s`-projection of the picture at `j`. For `p = 1` the condition
    /// degenerates to all pictures having the same total.
    ///
    /// Returns the first violating quadruple in lexicographic order.
    pub fn check_realistic(&self) -> Result<()> {
        let indices = self.index_tuples();
        let subs = increasing_tuples(self.p, self.p - 1);
        for i in &indices {
            for j in &indices {
                for r in &subs {
                    let i_r = crate::tensor::project_tuple(i, r)?;
                    for s in &subs {
                        let j_s = crate::tensor::project_tuple(j, s)?;
                        if i_r != j_s {
                            continue;
                        }
                        let left = self.pictures[i].project(r)?;
                        let right = self.pictures[j].project(s)?;
                        if left != right {
                            return Err(Error::Realism(RealismViolation {
                                i: i.clone(),
                                j: j.clone(),
                                r: r.clone(),
                                s: s.clone(),
                            }));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_realistic(&self) -> bool {
        self.check_realistic().is_ok()
    }

    /// Rotates the album by a permutation of the mode positions: the result
    /// is an album over the permuted shape whose pictures are the original
    /// pictures re-indexed and rotated accordingly. Realistic albums stay
    /// realistic, and a tensor realizing the rotated album, un-permuted,
    /// realizes the original.
    pub fn rotate(&self, perm: &[usize]) -> Result<Album> {
        let q = self.shape.rank();
        check_permutation(perm, q)?;
        let rotated_shape = self.shape.select(perm)?;
        let mut pictures = BTreeMap::new();
        for index in increasing_tuples(q, self.p) {
            // image of the new index under the permutation, then sorted back
            // to an increasing source tuple together with the sort that got
            // there
            let image: Vec<usize> = index.iter().map(|&t| perm[t - 1]).collect();
            let mut order: Vec<usize> = (0..self.p).collect();
            order.sort_by_key(|&t| image[t]);
            let source: Vec<usize> = order.iter().map(|&t| image[t]).collect();
            let mut unsort = vec![0usize; self.p];
            for (rank, &t) in order.iter().enumerate() {
                unsort[t] = rank + 1;
            }
            let picture = self.pictures[&source].project(&unsort)?;
            pictures.insert(index, picture);
        }
        Album::new(self.p, rotated_shape, pictures)
    }

    /// Realizes the album: returns a tensor whose `i`-projection equals the
    /// picture at `i` for every index tuple. Fails with a realism error
    /// carrying the first violating quadruple if the album is not
    /// realistic. When `p` exceeds the number of modes the album is empty
    /// and the all-zero tensor is returned.
    pub fn realize(&self) -> Result<IntTensor> {
        Ok(self.realize_traced()?.0)
    }

    /// As [`Album::realize`], also returning the recorded construction.
    pub fn realize_traced(&self) -> Result<(IntTensor, RealizationTrace)> {
        self.check_realistic()?;
        let mut steps = Vec::new();
        let tensor = realize_inner(self, &mut steps)?;
        Ok((tensor, RealizationTrace { steps }))
    }

    /// Base case for albums over the all-one shape: all pictures are single
    /// cells and realism forces them equal; the realizing tensor holds that
    /// value in its unique cell.
    pub fn realize_unit_shape(&self) -> Result<IntTensor> {
        if self.shape.sizes().iter().any(|&s| s != 1) {
            return Err(Error::Shape(format!(
                "unit-shape realization requires all mode sizes 1, got {:?}",
                self.shape.sizes()
            )));
        }
        self.check_realistic()?;
        let mut steps = Vec::new();
        realize_inner(self, &mut steps)
    }

    /// Base case for one-dimensional pictures (`p = 1`): rebuilds a tensor
    /// with prescribed fiber sums along every mode by peeling the last
    /// entry of the last mode and recursing on the reduced album.
    pub fn realize_vectors(&self) -> Result<IntTensor> {
        if self.p != 1 {
            return Err(Error::Argument(format!(
                "vector realization requires p = 1, got p = {}",
                self.p
            )));
        }
        self.check_realistic()?;
        let mut steps = Vec::new();
        realize_inner(self, &mut steps)
    }
}

fn check_permutation(perm: &[usize], q: usize) -> Result<()> {
    let mut seen = vec![false; q];
    let ok = perm.len() == q
        && perm.iter().all(|&v| {
            if v == 0 || v > q || seen[v - 1] {
                false
            } else {
                seen[v - 1] = true;
                true
            }
        });
    if !ok {
        return Err(Error::Argument(format!(
            "{perm:?} is not a permutation of 1..={q}"
        )));
    }
    Ok(())
}

fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (pos, &v) in perm.iter().enumerate() {
        inv[v - 1] = pos + 1;
    }
    inv
}

/// One node of the recorded realization. Steps are stored in recursion
/// order, so a trace can be replayed into the output tensor without the
/// original album.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceStep {
    /// Empty album: the all-zero tensor of the given shape.
    Empty { shape: Vec<usize> },
    /// All-one shape base case: a single cell holding `value`.
    Unit { rank: usize, value: i64 },
    /// Single-mode base case: the picture itself.
    Vector { entries: Vec<i64> },
    /// Vector-album peel: the child realizes the album with the last mode
    /// shrunk by one; `value` goes to the all-maximal cell and the rest of
    /// the final slice is zero.
    PeelEntry { shape: Vec<usize>, value: i64 },
    /// The child realizes the album rotated by `perm`; the result is
    /// un-rotated afterwards.
    Rotate { shape: Vec<usize>, perm: Vec<usize> },
    /// Two children follow: a hat tensor over the first `q - 1` modes that
    /// becomes the final slice of the last mode, and a tilde tensor over
    /// the shape with the last mode shrunk by one that fills the rest.
    Split { shape: Vec<usize> },
}

/// A replayable record of a realization run.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RealizationTrace {
    steps: Vec<TraceStep>,
}

impl RealizationTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    /// Rebuilds the realized tensor from the recorded steps alone.
    pub fn replay(&self) -> Result<IntTensor> {
        let mut pos = 0;
        let tensor = replay_node(&self.steps, &mut pos)?;
        if pos != self.steps.len() {
            return Err(Error::Structure(format!(
                "trace has {} unused trailing steps",
                self.steps.len() - pos
            )));
        }
        Ok(tensor)
    }
}

fn replay_node(steps: &[TraceStep], pos: &mut usize) -> Result<IntTensor> {
    let step = steps
        .get(*pos)
        .ok_or_else(|| Error::Structure("trace ended mid-construction".into()))?
        .clone();
    *pos += 1;
    match step {
        TraceStep::Empty { shape } => Ok(IntTensor::zeros(Shape::new(shape)?)),
        TraceStep::Unit { rank, value } => {
            IntTensor::new(Shape::ones(rank), vec![value])
        }
        TraceStep::Vector { entries } => IntTensor::vector(entries),
        TraceStep::PeelEntry { shape, value } => {
            let shape = Shape::new(shape)?;
            let child = replay_node(steps, pos)?;
            glue_peel(&shape, value, &child)
        }
        TraceStep::Rotate { shape: _, perm } => {
            let child = replay_node(steps, pos)?;
            child.project(&inverse_permutation(&perm))
        }
        TraceStep::Split { shape } => {
            let shape = Shape::new(shape)?;
            let hat = replay_node(steps, pos)?;
            let tilde = replay_node(steps, pos)?;
            glue_split(&shape, &hat, &tilde)
        }
    }
}

/// Fixes the last mode of a tensor at 1-based position `at`, dropping it.
fn slice_last(tensor: &IntTensor, at: usize) -> Result<IntTensor> {
    let q = tensor.rank();
    if q == 0 {
        return Err(Error::Shape("cannot slice a scalar".into()));
    }
    let last = tensor.shape().size(q - 1);
    let lead = Shape::new(tensor.shape().sizes()[..q - 1].to_vec())?;
    let entries = (0..lead.cell_count())
        .map(|i| tensor.entries()[i * last + (at - 1)])
        .collect();
    IntTensor::new(lead, entries)
}

/// Restricts the last mode of a tensor to its first `new_size` positions.
fn truncate_last(tensor: &IntTensor, new_size: usize) -> Result<IntTensor> {
    let q = tensor.rank();
    let last = tensor.shape().size(q - 1);
    let mut sizes = tensor.shape().sizes().to_vec();
    sizes[q - 1] = new_size;
    let shape = Shape::new(sizes)?;
    let lead: usize = tensor.shape().sizes()[..q - 1].iter().product();
    let mut entries = Vec::with_capacity(shape.cell_count());
    for i in 0..lead {
        entries.extend_from_slice(&tensor.entries()[i * last..i * last + new_size]);
    }
    IntTensor::new(shape, entries)
}

/// Glue for the vector-album peel: `value` at the all-maximal index, zero
/// elsewhere on the final slice of the last mode, `child` on the rest.
fn glue_peel(shape: &Shape, value: i64, child: &IntTensor) -> Result<IntTensor> {
    let q = shape.rank();
    let last = shape.size(q - 1);
    let lead: usize = shape.sizes()[..q - 1].iter().product();
    let mut entries = vec![0i64; shape.cell_count()];
    for i in 0..lead {
        entries[i * last..i * last + last - 1]
            .copy_from_slice(&child.entries()[i * (last - 1)..(i + 1) * (last - 1)]);
    }
    entries[shape.cell_count() - 1] = value;
    IntTensor::new(shape.clone(), entries)
}

/// Glue for the split: `hat` becomes the final slice of the last mode and
/// `tilde` fills the remaining positions.
fn glue_split(shape: &Shape, hat: &IntTensor, tilde: &IntTensor) -> Result<IntTensor> {
    let q = shape.rank();
    let last = shape.size(q - 1);
    let lead: usize = shape.sizes()[..q - 1].iter().product();
    let mut entries = vec![0i64; shape.cell_count()];
    for i in 0..lead {
        entries[i * last..i * last + last - 1]
            .copy_from_slice(&tilde.entries()[i * (last - 1)..(i + 1) * (last - 1)]);
        entries[i * last + last - 1] = hat.entries()[i];
    }
    IntTensor::new(shape.clone(), entries)
}

/// The recursion assumes its input album is realistic; the public entry
/// points check that once up front.
fn realize_inner(album: &Album, steps: &mut Vec<TraceStep>) -> Result<IntTensor> {
    let q = album.shape.rank();
    let p = album.p;

    if p > q {
        steps.push(TraceStep::Empty { shape: album.shape.sizes().to_vec() });
        return Ok(IntTensor::zeros(album.shape.clone()));
    }

    if p == 1 && q == 1 {
        let picture = &album.pictures[&vec![1]];
        steps.push(TraceStep::Vector { entries: picture.entries().to_vec() });
        return Ok(picture.clone());
    }

    if album.shape.sizes().iter().all(|&s| s == 1) {
        let first = album.pictures.values().next().expect("p <= q so the album is non-empty");
        let value = first.entries()[0];
        steps.push(TraceStep::Unit { rank: q, value });
        return IntTensor::new(Shape::ones(q), vec![value]);
    }

    // Rotate so the last mode has size at least 2: swap it with the
    // highest-positioned mode of size >= 2.
    if album.shape.size(q - 1) == 1 {
        let target = album
            .shape
            .sizes()
            .iter()
            .rposition(|&s| s >= 2)
            .expect("shape is not all-one here");
        let mut perm = identity_tuple(q);
        perm.swap(target, q - 1);
        steps.push(TraceStep::Rotate {
            shape: album.shape.sizes().to_vec(),
            perm: perm.clone(),
        });
        let rotated = album.rotate(&perm)?;
        let child = realize_inner(&rotated, steps)?;
        return child.project(&inverse_permutation(&perm));
    }

    let last = album.shape.size(q - 1);

    if p == 1 {
        // Peel the last entry of the last picture.
        let last_picture = &album.pictures[&vec![q]];
        let value = last_picture.entries()[last - 1];
        steps.push(TraceStep::PeelEntry {
            shape: album.shape.sizes().to_vec(),
            value,
        });

        let mut sizes = album.shape.sizes().to_vec();
        sizes[q - 1] -= 1;
        let reduced_shape = Shape::new(sizes)?;
        let mut pictures = BTreeMap::new();
        for i in 1..=q {
            let picture = &album.pictures[&vec![i]];
            let reduced = if i == q {
                truncate_last(picture, last - 1)?
            } else {
                let n_i = picture.shape().size(0);
                let correction = IntTensor::unit(picture.shape().clone(), &[n_i])?
                    .contract(&IntTensor::scalar(value), 0)?;
                picture.sub(&correction)?
            };
            pictures.insert(vec![i], reduced);
        }
        let reduced = Album::new(1, reduced_shape, pictures)?;
        let child = realize_inner(&reduced, steps)?;
        return glue_peel(&album.shape, value, &child);
    }

    // p >= 2 and the last mode has size >= 2: split into the hat album of
    // final slices (one fewer picture dimension, one fewer mode) and the
    // tilde album over the shrunken shape.
    steps.push(TraceStep::Split { shape: album.shape.sizes().to_vec() });

    let hat_shape = Shape::new(album.shape.sizes()[..q - 1].to_vec())?;
    let mut hat_pictures = BTreeMap::new();
    for i in increasing_tuples(q - 1, p - 1) {
        let mut with_q = i.clone();
        with_q.push(q);
        let sliced = slice_last(&album.pictures[&with_q], last)?;
        hat_pictures.insert(i, sliced);
    }
    let hat_album = Album::new(p - 1, hat_shape, hat_pictures)?;
    let hat = realize_inner(&hat_album, steps)?;

    let mut tilde_sizes = album.shape.sizes().to_vec();
    tilde_sizes[q - 1] -= 1;
    let tilde_shape = Shape::new(tilde_sizes)?;
    let mut tilde_pictures = BTreeMap::new();
    for i in increasing_tuples(q, p) {
        let picture = &album.pictures[&i];
        let reduced = if *i.last().expect("p >= 1") == q {
            truncate_last(picture, last - 1)?
        } else {
            picture.sub(&hat.project(&i)?)?
        };
        tilde_pictures.insert(i, reduced);
    }
    let tilde_album = Album::new(p, tilde_shape, tilde_pictures)?;
    let tilde = realize_inner(&tilde_album, steps)?;

    glue_split(&album.shape, &hat, &tilde)
}

/// Builds a cubical tensor of dimension `q` all of whose oriented
/// two-dimensional projections equal the square matrix `m`. Requires the
/// row-sum vector of `m` to equal its column-sum vector.
pub fn mine_crystal(m: &IntTensor, q: usize) -> Result<IntTensor> {
    if m.rank() != 2 || m.shape().size(0) != m.shape().size(1) {
        return Err(Error::Shape(format!(
            "crystal mining needs a square matrix, got shape {:?}",
            m.shape().sizes()
        )));
    }
    if q < 2 {
        return Err(Error::Argument(format!("crystal dimension must be at least 2, got {q}")));
    }
    let row_sums = m.project(&[1])?;
    let col_sums = m.project(&[2])?;
    if row_sums != col_sums {
        return Err(Error::Balance(format!(
            "row sums {:?} differ from column sums {:?}",
            row_sums.entries(),
            col_sums.entries()
        )));
    }
    let n = m.shape().size(0);
    let shape = Shape::cubical(n, q)?;
    let mut pictures = BTreeMap::new();
    for index in increasing_tuples(q, 2) {
        pictures.insert(index, m.clone());
    }
    Album::new(2, shape, pictures)?.realize()
}

/// Whether `c` is a crystal for `m`: cubical, with every oriented
/// two-dimensional projection equal to `m`.
pub fn verify_crystal(c: &IntTensor, m: &IntTensor) -> Result<bool> {
    let q = c.rank();
    if q == 0 || c.shape().sizes().iter().any(|&s| s != c.shape().size(0)) {
        return Err(Error::Shape(format!(
            "crystal candidate must be cubical with at least one mode, got {:?}",
            c.shape().sizes()
        )));
    }
    let n = c.shape().size(0);
    if m.shape().sizes() != [n, n] {
        return Err(Error::Shape(format!(
            "matrix shape {:?} does not match cubical mode size {n}",
            m.shape().sizes()
        )));
    }
    for index in increasing_tuples(q, 2) {
        if &c.project(&index)? != m {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn balanced_matrix() -> IntTensor {
        IntTensor::matrix(vec![vec![0, 0, 1], vec![1, 0, -1], vec![0, 0, 0]]).unwrap()
    }

    fn all_m_album(m: &IntTensor, q: usize) -> Album {
        let n = m.shape().size(0);
        let shape = Shape::cubical(n, q).unwrap();
        let pictures = increasing_tuples(q, 2)
            .into_iter()
            .map(|i| (i, m.clone()))
            .collect();
        Album::new(2, shape, pictures).unwrap()
    }

    fn seeded_tensor(shape: Shape, seed: i64) -> IntTensor {
        // deterministic small-entry filler for tests
        let entries = (0..shape.cell_count() as i64)
            .map(|k| ((k * 7 + seed * 13) % 9) - 4)
            .collect();
        IntTensor::new(shape, entries).unwrap()
    }

    #[test]
    fn all_m_album_is_realistic() {
        assert!(all_m_album(&balanced_matrix(), 4).is_realistic());
    }

    #[test]
    fn unequal_totals_violate_realism() {
        let shape = Shape::new(vec![1, 1]).unwrap();
        let mut pictures = BTreeMap::new();
        pictures.insert(vec![1], IntTensor::vector(vec![1]).unwrap());
        pictures.insert(vec![2], IntTensor::vector(vec![2]).unwrap());
        let album = Album::new(1, shape, pictures).unwrap();
        match album.check_realistic() {
            Err(Error::Realism(v)) => {
                assert_eq!((v.i, v.j), (vec![1], vec![2]));
                assert!(v.r.is_empty() && v.s.is_empty());
            }
            other => panic!("expected realism violation, got {other:?}"),
        }
    }

    #[test]
    fn projections_of_one_tensor_are_realistic() {
        let t = seeded_tensor(Shape::new(vec![2, 3, 2]).unwrap(), 3);
        assert!(Album::from_tensor(&t, 2).unwrap().is_realistic());
    }

    #[test]
    fn from_tensor_row_and_column_sums() {
        let t = IntTensor::matrix(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let album = Album::from_tensor(&t, 1).unwrap();
        assert_eq!(album.picture(&[1]).unwrap(), &IntTensor::vector(vec![3, 7]).unwrap());
        assert_eq!(album.picture(&[2]).unwrap(), &IntTensor::vector(vec![4, 6]).unwrap());
    }

    #[test]
    fn from_scalar_tensor_is_empty_album() {
        let album = Album::from_tensor(&IntTensor::scalar(5), 1).unwrap();
        assert!(album.pictures().is_empty());
        assert_eq!(album.realize().unwrap(), IntTensor::scalar(0));
    }

    #[test]
    fn rotate_by_identity_is_noop() {
        let album = all_m_album(&balanced_matrix(), 3);
        assert_eq!(album.rotate(&[1, 2, 3]).unwrap(), album);
    }

    #[test]
    fn rotate_swaps_vector_pictures() {
        let shape = Shape::new(vec![2, 3]).unwrap();
        let mut pictures = BTreeMap::new();
        pictures.insert(vec![1], IntTensor::vector(vec![1, 0]).unwrap());
        pictures.insert(vec![2], IntTensor::vector(vec![0, 1, 0]).unwrap());
        let album = Album::new(1, shape, pictures).unwrap();
        let rotated = album.rotate(&[2, 1]).unwrap();
        assert_eq!(rotated.shape().sizes(), &[3, 2]);
        assert_eq!(rotated.picture(&[1]).unwrap(), &IntTensor::vector(vec![0, 1, 0]).unwrap());
        assert_eq!(rotated.picture(&[2]).unwrap(), &IntTensor::vector(vec![1, 0]).unwrap());
    }

    #[test]
    fn rotate_preserves_realism() {
        let t = seeded_tensor(Shape::new(vec![2, 3, 4]).unwrap(), 11);
        let album = Album::from_tensor(&t, 2).unwrap();
        for perm in [[2, 1, 3], [1, 3, 2], [3, 2, 1]] {
            assert!(album.rotate(&perm).unwrap().is_realistic(), "perm {perm:?}");
        }
    }

    #[test]
    fn rotate_rejects_non_permutation() {
        let album = all_m_album(&balanced_matrix(), 3);
        assert!(matches!(album.rotate(&[1, 1, 2]), Err(Error::Argument(_))));
    }

    #[test]
    fn unit_shape_base_case() {
        let shape = Shape::ones(3);
        let pictures = increasing_tuples(3, 2)
            .into_iter()
            .map(|i| (i, IntTensor::new(Shape::ones(2), vec![5]).unwrap()))
            .collect();
        let album = Album::new(2, shape, pictures).unwrap();
        let c = album.realize_unit_shape().unwrap();
        assert_eq!(c, IntTensor::new(Shape::ones(3), vec![5]).unwrap());
    }

    #[test]
    fn unit_shape_single_mode() {
        let mut pictures = BTreeMap::new();
        pictures.insert(vec![1], IntTensor::vector(vec![-2]).unwrap());
        let album = Album::new(1, Shape::ones(1), pictures).unwrap();
        assert_eq!(album.realize_unit_shape().unwrap(), IntTensor::vector(vec![-2]).unwrap());
    }

    #[test]
    fn unit_shape_rejects_differing_entries() {
        let shape = Shape::ones(3);
        let mut value = 0;
        let pictures = increasing_tuples(3, 2)
            .into_iter()
            .map(|i| {
                value += 1;
                (i, IntTensor::new(Shape::ones(2), vec![value]).unwrap())
            })
            .collect();
        let album = Album::new(2, shape, pictures).unwrap();
        assert!(matches!(album.realize_unit_shape(), Err(Error::Realism(_))));
    }

    #[test]
    fn realize_vectors_matches_prescribed_sums() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        let mut pictures = BTreeMap::new();
        pictures.insert(vec![1], IntTensor::vector(vec![3, 7]).unwrap());
        pictures.insert(vec![2], IntTensor::vector(vec![4, 6]).unwrap());
        let album = Album::new(1, shape, pictures).unwrap();
        let c = album.realize_vectors().unwrap();
        assert_eq!(c.project(&[1]).unwrap(), IntTensor::vector(vec![3, 7]).unwrap());
        assert_eq!(c.project(&[2]).unwrap(), IntTensor::vector(vec![4, 6]).unwrap());
    }

    #[test]
    fn realize_vectors_single_mode_is_identity() {
        let mut pictures = BTreeMap::new();
        pictures.insert(vec![1], IntTensor::vector(vec![1, 2, 3]).unwrap());
        let album = Album::new(1, Shape::new(vec![3]).unwrap(), pictures).unwrap();
        assert_eq!(album.realize_vectors().unwrap(), IntTensor::vector(vec![1, 2, 3]).unwrap());
    }

    #[test]
    fn realize_vectors_all_one_base() {
        let q = 4;
        let pictures = (1..=q)
            .map(|i| (vec![i], IntTensor::vector(vec![1]).unwrap()))
            .collect();
        let album = Album::new(1, Shape::ones(q), pictures).unwrap();
        let c = album.realize_vectors().unwrap();
        assert_eq!(c, IntTensor::new(Shape::ones(q), vec![1]).unwrap());
    }

    #[test]
    fn realize_reproduces_projections_of_source() {
        for (sizes, p, seed) in [
            (vec![2, 3, 2], 2, 1),
            (vec![3, 2, 4], 1, 2),
            (vec![2, 2, 2, 3], 3, 3),
            (vec![4, 1, 2], 2, 4),
            (vec![1, 1, 3], 2, 5),
        ] {
            let t = seeded_tensor(Shape::new(sizes.clone()).unwrap(), seed);
            let album = Album::from_tensor(&t, p).unwrap();
            let c = album.realize().unwrap();
            for (index, picture) in album.pictures() {
                assert_eq!(&c.project(index).unwrap(), picture, "sizes {sizes:?} p {p} index {index:?}");
            }
        }
    }

    #[test]
    fn realize_empty_album_is_zero() {
        let shape = Shape::new(vec![2, 3]).unwrap();
        let album = Album::new(3, shape.clone(), BTreeMap::new()).unwrap();
        assert_eq!(album.realize().unwrap(), IntTensor::zeros(shape));
    }

    #[test]
    fn realize_rejects_unrealistic_album() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        let mut pictures = BTreeMap::new();
        pictures.insert(vec![1], IntTensor::vector(vec![1, 0]).unwrap());
        pictures.insert(vec![2], IntTensor::vector(vec![5, 5]).unwrap());
        let album = Album::new(1, shape, pictures).unwrap();
        assert!(matches!(album.realize(), Err(Error::Realism(_))));
    }

    #[test]
    fn trace_replays_to_same_tensor() {
        let t = seeded_tensor(Shape::new(vec![2, 1, 3, 2]).unwrap(), 9);
        let album = Album::from_tensor(&t, 2).unwrap();
        let (c, trace) = album.realize_traced().unwrap();
        assert_eq!(trace.replay().unwrap(), c);
        // determinism: same album, same trace
        let (c2, trace2) = album.realize_traced().unwrap();
        assert_eq!(c, c2);
        assert_eq!(trace, trace2);
    }

    #[test]
    fn mine_four_dimensional_crystal() {
        let m = balanced_matrix();
        let c = mine_crystal(&m, 4).unwrap();
        assert_eq!(c.shape(), &Shape::cubical(3, 4).unwrap());
        assert!(verify_crystal(&c, &m).unwrap());
        for index in increasing_tuples(4, 2) {
            assert_eq!(c.project(&index).unwrap(), m);
        }
    }

    #[test]
    fn mine_identity_crystal() {
        let id = IntTensor::matrix(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let c = mine_crystal(&id, 3).unwrap();
        assert!(verify_crystal(&c, &id).unwrap());
    }

    #[test]
    fn mine_rejects_unbalanced_matrix() {
        let m = IntTensor::matrix(vec![vec![1, 1], vec![0, 0]]).unwrap();
        assert!(matches!(mine_crystal(&m, 3), Err(Error::Balance(_))));
    }

    #[test]
    fn crystal_total_equals_matrix_total() {
        let m = balanced_matrix();
        let c = mine_crystal(&m, 5).unwrap();
        assert_eq!(c.total().unwrap(), m.total().unwrap());
    }

    #[test]
    fn verify_crystal_rejects_mismatched_projections() {
        let t = seeded_tensor(Shape::cubical(3, 3).unwrap(), 17);
        let m = t.project(&[1, 2]).unwrap();
        assert!(!verify_crystal(&t, &m).unwrap());
    }

    #[test]
    fn verify_crystal_two_dimensional() {
        let m = balanced_matrix();
        assert!(verify_crystal(&m, &m).unwrap());
        let other = IntTensor::matrix(vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(!verify_crystal(&other, &m).unwrap());
    }

    #[test]
    fn rotation_invariance_of_realization() {
        let t = seeded_tensor(Shape::new(vec![2, 3, 2]).unwrap(), 21);
        let album = Album::from_tensor(&t, 2).unwrap();
        let perm = vec![1usize, 3, 2]; // a transposition
        let rotated = album.rotate(&perm).unwrap();
        let c_rot = rotated.realize().unwrap();
        let c = c_rot.project(&perm).unwrap(); // transpositions are involutions
        for (index, picture) in album.pictures() {
            assert_eq!(&c.project(index).unwrap(), picture);
        }
    }
}
