//! JSON formats for tensors, albums, digraphs, and witnesses.
//!
//! All formats are value-exact: reading back a written file reproduces the
//! original object bit for bit. Index tuples and vertices are 1-based, as
//! everywhere in the public API.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::aip::VarDescriptor;
use crate::album::Album;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::tensor::{is_increasing, IntTensor, Shape};

/// `{"modes":[n1,...,nq],"entries":[...]}` with entries row-major; an empty
/// mode list denotes a scalar with one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub modes: Vec<usize>,
    pub entries: Vec<i64>,
}

impl TensorJson {
    pub fn from_tensor(tensor: &IntTensor) -> Self {
        TensorJson {
            modes: tensor.shape().sizes().to_vec(),
            entries: tensor.entries().to_vec(),
        }
    }

    pub fn into_tensor(self) -> Result<IntTensor> {
        IntTensor::new(Shape::new(self.modes)?, self.entries)
    }

    /// Matrices share the tensor format with modes `[rows, cols]`. Entries
    /// beyond machine width are reported as overflow.
    pub fn from_big_matrix(matrix: &crate::diophantine::BigMatrix) -> Result<Self> {
        let entries = (0..matrix.rows())
            .flat_map(|r| (0..matrix.cols()).map(move |c| (r, c)))
            .map(|(r, c)| matrix.get(r, c).to_i64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(TensorJson { modes: vec![matrix.rows(), matrix.cols()], entries })
    }

    pub fn into_big_matrix(self) -> Result<crate::diophantine::BigMatrix> {
        if self.modes.len() != 2 {
            return Err(Error::Shape(format!(
                "a matrix needs exactly two modes, got {:?}",
                self.modes
            )));
        }
        crate::diophantine::BigMatrix::new(
            self.modes[0],
            self.modes[1],
            self.entries.into_iter().map(num_bigint::BigInt::from).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PictureJson {
    pub axes: Vec<usize>,
    pub tensor: TensorJson,
}

/// `{"p":2,"modes":[3,3,3,3],"pictures":[{"axes":[1,2],"tensor":{...}},...]}`
/// with axes strictly increasing and 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlbumJson {
    pub p: usize,
    pub modes: Vec<usize>,
    pub pictures: Vec<PictureJson>,
}

impl AlbumJson {
    pub fn from_album(album: &Album) -> Self {
        AlbumJson {
            p: album.p(),
            modes: album.shape().sizes().to_vec(),
            pictures: album
                .pictures()
                .iter()
                .map(|(axes, tensor)| PictureJson {
                    axes: axes.clone(),
                    tensor: TensorJson::from_tensor(tensor),
                })
                .collect(),
        }
    }

    pub fn into_album(self) -> Result<Album> {
        let shape = Shape::new(self.modes)?;
        let mut pictures = BTreeMap::new();
        for picture in self.pictures {
            if !is_increasing(&picture.axes) {
                return Err(Error::Structure(format!(
                    "picture axes {:?} are not strictly increasing",
                    picture.axes
                )));
            }
            let tensor = picture.tensor.into_tensor()?;
            if pictures.insert(picture.axes.clone(), tensor).is_some() {
                return Err(Error::Structure(format!(
                    "duplicate picture at axes {:?}",
                    picture.axes
                )));
            }
        }
        Album::new(self.p, shape, pictures)
    }
}

/// `{"vertices":4,"edges":[[1,2],[2,1],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DigraphJson {
    pub fn from_digraph(g: &Digraph) -> Self {
        DigraphJson { vertices: g.vertex_count(), edges: g.edges().to_vec() }
    }

    pub fn into_digraph(self) -> Result<Digraph> {
        Digraph::new(self.vertices, self.edges)
    }
}

/// One variable of a relaxation witness with its assigned value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessVarJson {
    Subset { vertices: Vec<usize>, images: Vec<usize>, value: i64 },
    Edge { edge: usize, images: (usize, usize), value: i64 },
}

/// A full integer assignment for a relaxation system, in catalogue order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub vars: Vec<WitnessVarJson>,
}

impl WitnessJson {
    pub fn from_assignment(
        variables: &[VarDescriptor],
        values: &[num_bigint::BigInt],
    ) -> Result<Self> {
        let vars = variables
            .iter()
            .zip(values)
            .map(|(descriptor, value)| {
                let value = value.to_i64().ok_or(Error::Overflow)?;
                Ok(match descriptor {
                    VarDescriptor::Subset { vertices, images } => WitnessVarJson::Subset {
                        vertices: vertices.clone(),
                        images: images.clone(),
                        value,
                    },
                    VarDescriptor::Edge { edge, images } => WitnessVarJson::Edge {
                        edge: *edge,
                        images: *images,
                        value,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WitnessJson { vars })
    }
}

/// Reads and parses a JSON file.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Serialises to pretty JSON and writes atomically (temp file + rename in
/// the target directory).
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    write_atomic(path, text.as_bytes())
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp.{}", std::process::id()));
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
