//! Deterministic test-corpus generation.
//!
//! Everything here is a pure function of the seed: the digraph enumeration
//! is exhaustive with canonical-form deduplication, and the random objects
//! are drawn from a seeded stream cipher, so two runs with the same seed
//! produce byte-identical output.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::album::Album;
use crate::digraph::Digraph;
use crate::error::Result;
use crate::json::{write_json_atomic, AlbumJson, DigraphJson, TensorJson};
use crate::tensor::{IntTensor, Shape};

/// All ordered vertex pairs `(u, v)` with `u != v`, lexicographic.
fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in permutations(n - 1) {
        for slot in 0..=tail.len() {
            let mut perm = tail.clone();
            perm.insert(slot, n);
            out.push(perm);
        }
    }
    out
}

/// All loopless digraphs on exactly `n` vertices up to isomorphism, each
/// represented by the lexicographically least edge bitmask in its
/// isomorphism class.
fn nonisomorphic_on(n: usize) -> Vec<Digraph> {
    let pairs = ordered_pairs(n);
    let perms = permutations(n);
    let mut canonical = std::collections::BTreeSet::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let mut least = mask;
        for perm in &perms {
            let mut relabeled = 0u32;
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    let image = (perm[u - 1], perm[v - 1]);
                    let pos = pairs.iter().position(|&p| p == image).expect("pair");
                    relabeled |= 1 << pos;
                }
            }
            least = least.min(relabeled);
        }
        canonical.insert(least);
    }
    canonical
        .into_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &p)| p)
                .collect();
            Digraph::new(n, edges).expect("valid by construction")
        })
        .collect()
}

/// All loopless digraphs with at most `max_vertices` vertices up to
/// isomorphism, smaller vertex counts first.
pub fn nonisomorphic_loopless_digraphs(max_vertices: usize) -> Vec<Digraph> {
    (1..=max_vertices).flat_map(nonisomorphic_on).collect()
}

/// A dense tensor with entries drawn uniformly from `[-bound, bound]`.
pub fn random_tensor(rng: &mut impl Rng, shape: Shape, bound: i64) -> IntTensor {
    let entries = (0..shape.cell_count())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    IntTensor::new(shape, entries).expect("length matches by construction")
}

/// A realistic album: the projections of a random tensor with the given
/// picture dimension. Draws `p` in `1..=3`, the mode count in `2..=5`, and
/// mode sizes in `1..=4` unless overridden.
pub fn random_projection_album(rng: &mut impl Rng) -> Album {
    let p = rng.gen_range(1..=3);
    let q = rng.gen_range(2..=5);
    let sizes: Vec<usize> = (0..q).map(|_| rng.gen_range(1..=4)).collect();
    let tensor = random_tensor(rng, Shape::new(sizes).expect("positive"), 3);
    Album::from_tensor(&tensor, p).expect("p >= 1")
}

/// A random square matrix whose row-sum vector equals its column-sum
/// vector: the trailing row is derived from the rest.
pub fn random_balanced_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> IntTensor {
    let mut rows = vec![vec![0i64; n]; n];
    for row in rows.iter_mut().take(n - 1) {
        for cell in row.iter_mut() {
            *cell = rng.gen_range(-bound..=bound);
        }
    }
    rows[n - 1][n - 1] = rng.gen_range(-bound..=bound);
    #[allow(clippy::needless_range_loop)] // indexes three different rows at once
    for i in 0..n - 1 {
        let row_part: i64 = rows[i][..n - 1].iter().sum();
        let col_part: i64 = (0..n - 1).map(|j| rows[j][i]).sum();
        rows[n - 1][i] = rows[i][n - 1] + row_part - col_part;
    }
    IntTensor::matrix(rows).expect("square by construction")
}

/// Counts of what [`write_corpus`] generated.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub digraphs: usize,
    pub cycles: usize,
    pub cliques: usize,
    pub albums: usize,
    pub matrices: usize,
    pub files: Vec<String>,
}

/// Writes the full corpus under `dir`: the non-isomorphic loopless
/// digraphs up to 4 vertices, cycles on 3..=7 and cliques on 2..=5
/// vertices, 20 seeded realistic albums, and 20 seeded balanced matrices.
/// A manifest with the seed and the sorted file list goes alongside.
pub fn write_corpus(dir: &Path, seed: u64) -> Result<CorpusSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut files: Vec<String> = Vec::new();

    let digraph_dir = dir.join("digraphs");
    std::fs::create_dir_all(&digraph_dir)?;
    let digraphs = nonisomorphic_loopless_digraphs(4);
    for (idx, g) in digraphs.iter().enumerate() {
        let name = format!("digraphs/size{}_{idx:03}.json", g.vertex_count());
        write_json_atomic(&dir.join(&name), &DigraphJson::from_digraph(g))?;
        files.push(name);
    }

    let named_dir = dir.join("named");
    std::fs::create_dir_all(&named_dir)?;
    let mut cycles = 0;
    for n in 3..=7 {
        let name = format!("named/c{n}.json");
        write_json_atomic(&dir.join(&name), &DigraphJson::from_digraph(&Digraph::cycle(n)?))?;
        files.push(name);
        cycles += 1;
    }
    let mut cliques = 0;
    for n in 2..=5 {
        let name = format!("named/k{n}.json");
        write_json_atomic(&dir.join(&name), &DigraphJson::from_digraph(&Digraph::clique(n)?))?;
        files.push(name);
        cliques += 1;
    }

    let album_dir = dir.join("albums");
    std::fs::create_dir_all(&album_dir)?;
    let album_count = 20;
    for idx in 0..album_count {
        let album = random_projection_album(&mut rng);
        let name = format!("albums/album_{idx:02}.json");
        write_json_atomic(&dir.join(&name), &AlbumJson::from_album(&album))?;
        files.push(name);
    }

    let matrix_dir = dir.join("matrices");
    std::fs::create_dir_all(&matrix_dir)?;
    let matrix_count = 20;
    for idx in 0..matrix_count {
        let n = rng.gen_range(2..=4);
        let matrix = random_balanced_matrix(&mut rng, n, 3);
        let name = format!("matrices/balanced_{idx:02}.json");
        write_json_atomic(&dir.join(&name), &TensorJson::from_tensor(&matrix))?;
        files.push(name);
    }

    files.sort();
    let summary = CorpusSummary {
        seed,
        digraphs: digraphs.len(),
        cycles,
        cliques,
        albums: album_count,
        matrices: matrix_count,
        files,
    };
    write_json_atomic(&dir.join("manifest.json"), &summary)?;
    Ok(summary)
}
