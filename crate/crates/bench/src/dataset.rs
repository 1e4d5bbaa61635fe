//! Loading SNAP edge lists (plain or gzip) and cached exact BC values.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use bcsample::{brandes_bc, parse_edge_list, BcVector, Graph, Vertex};
use flate2::read::MultiGzDecoder;
use serde::Deserialize;

use crate::error::{AppError, AppResult};

/// Reads an edge list, decompressing it when the file starts with the gzip
/// magic bytes.
pub fn load_graph(path: &Path) -> AppResult<Graph> {
    let ctx = || format!("reading dataset {}", path.display());
    let file = File::open(path).map_err(|e| AppError::from(e).context(ctx()))?;
    let mut reader = BufReader::new(file);
    let gz = reader.fill_buf().map_err(|e| AppError::from(e).context(ctx()))?.starts_with(&[0x1f, 0x8b]);
    let parsed = if gz {
        parse_edge_list(BufReader::new(MultiGzDecoder::new(reader)))
    } else {
        parse_edge_list(reader)
    };
    parsed.map_err(|e| AppError::from(e).context(ctx()))
}

/// Dataset name used in reports: the file name without `.gz` and `.txt`.
pub fn dataset_name(path: &Path) -> String {
    let mut name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    for ext in [".gz", ".txt"] {
        if let Some(stripped) = name.strip_suffix(ext) {
            name = stripped.to_owned();
        }
    }
    name
}

/// Looks for `<stem>.txt`, `<stem>.txt.gz`, `<stem>` or `<stem>.gz` in `dir`.
pub fn find_dataset(dir: &Path, stem: &str) -> Option<PathBuf> {
    [format!("{stem}.txt"), format!("{stem}.txt.gz"), stem.to_owned(), format!("{stem}.gz")]
        .into_iter()
        .map(|f| dir.join(f))
        .find(|p| p.is_file())
}

#[derive(Deserialize)]
struct ExactRow {
    vertex_id: u64,
    bc: f64,
}

/// Reads a `vertex_id,bc` CSV written by `bcbench exact` for the same graph.
pub fn read_exact_csv<R: Read>(g: &Graph, reader: R) -> AppResult<BcVector> {
    let mut bc = vec![f64::NAN; g.n()];
    for row in csv::Reader::from_reader(reader).deserialize() {
        let row: ExactRow = row?;
        let v = g
            .index_of(row.vertex_id)
            .ok_or_else(|| AppError::data(format!("vertex {} is not in the graph", row.vertex_id)))?;
        bc[v] = row.bc;
    }
    if let Some(v) = bc.iter().position(|x| x.is_nan()) {
        return Err(AppError::data(format!("no exact value for vertex {}", g.original_id(v))));
    }
    Ok(BcVector { bc })
}

/// Exact BC from a cached CSV when given, otherwise computed.
pub fn exact_bc(g: &Graph, cache: Option<&Path>) -> AppResult<BcVector> {
    match cache {
        Some(path) => {
            let file = File::open(path).map_err(|e| AppError::from(e).context(format!("reading {}", path.display())))?;
            read_exact_csv(g, file).map_err(|e| e.context(format!("reading {}", path.display())))
        }
        None => Ok(brandes_bc(g)),
    }
}

/// Resolves an original vertex ID, defaulting to the vertex of highest exact
/// BC. Targets with zero exact BC are refused: the factor difference is
/// undefined for them.
pub fn resolve_target(g: &Graph, exact: &BcVector, target: Option<u64>) -> AppResult<Vertex> {
    let v = match target {
        Some(id) => g.index_of(id).ok_or_else(|| AppError::data(format!("target {id} is not in the graph")))?,
        None => exact.argmax().ok_or_else(|| AppError::data("graph has no vertices"))?,
    };
    if exact.bc[v] <= 0.0 {
        return Err(AppError::data(format!(
            "target {} has zero exact BC, so the factor difference is undefined",
            g.original_id(v)
        )));
    }
    Ok(v)
}
