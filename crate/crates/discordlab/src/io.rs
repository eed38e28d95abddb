//! JSON file formats for states, channels, and POVMs. Matrices are stored
//! row-major with each entry a two-element [re, im] array.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::measure::Povm;
use crate::qmat::ComplexMatrix;
use crate::states::DensityOperator;

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix: MatrixJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChannelFile {
    pub input_dim: usize,
    pub kraus: Vec<MatrixJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PovmFile {
    pub dim: usize,
    pub elements: Vec<MatrixJson>,
}

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<ComplexMatrix> {
    let r = rows.len();
    if r == 0 {
        return Err(Error::DimMismatch("matrix has no rows".into()));
    }
    let c = rows[0].len();
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::DimMismatch("matrix rows have unequal lengths".into()));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|&[re, im]| C64::new(re, im))
        .collect();
    ComplexMatrix::new(r, c, data)
}

pub fn state_to_file(rho: &DensityOperator) -> StateFile {
    StateFile {
        dims: rho.dims().to_vec(),
        matrix: matrix_to_json(rho.mat()),
    }
}

pub fn state_from_file(file: &StateFile) -> Result<DensityOperator> {
    let mat = matrix_from_json(&file.matrix)?;
    if !mat.is_square() {
        return Err(Error::State(format!(
            "state matrix must be square, got {}x{}",
            mat.rows(),
            mat.cols()
        )));
    }
    DensityOperator::new(file.dims.clone(), mat)
}

pub fn povm_to_file(povm: &Povm) -> PovmFile {
    PovmFile {
        dim: povm.dim(),
        elements: povm.elements().iter().map(matrix_to_json).collect(),
    }
}

pub fn povm_from_file(file: &PovmFile) -> Result<Povm> {
    let elements = file
        .elements
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    Povm::new(file.dim, elements)
}

pub fn channel_to_file(ch: &KrausChannel) -> ChannelFile {
    ChannelFile {
        input_dim: ch.input_dim(),
        kraus: ch.kraus().iter().map(matrix_to_json).collect(),
    }
}

pub fn channel_from_file(file: &ChannelFile) -> Result<KrausChannel> {
    let kraus = file
        .kraus
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    let ch = KrausChannel::new(kraus)?;
    if ch.input_dim() != file.input_dim {
        return Err(Error::Channel(format!(
            "declared input_dim {} does not match Kraus shape {}",
            file.input_dim,
            ch.input_dim()
        )));
    }
    Ok(ch)
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_state(path: &Path) -> Result<DensityOperator> {
    let text = read_to_string(path)?;
    state_from_file(&parse_json(path, &text)?)
}

pub fn read_channel(path: &Path) -> Result<KrausChannel> {
    let text = read_to_string(path)?;
    channel_from_file(&parse_json(path, &text)?)
}

pub fn read_povm(path: &Path) -> Result<Povm> {
    let text = read_to_string(path)?;
    povm_from_file(&parse_json(path, &text)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Write {
        path: path.display().to_string(),
        source,
    })
}
