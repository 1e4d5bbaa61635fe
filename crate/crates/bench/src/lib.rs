//! Experiment harness for the `bcsample` estimators: exact BC on SNAP edge
//! lists, c-sweeps against the exact value, per-sample cost comparison,
//! numerical checks of the stick-breaking model, and replayable run
//! manifests. The `bcbench` binary is a thin command-line layer over these
//! modules.

pub mod cost;
pub mod dataset;
pub mod error;
pub mod manifest;
pub mod model_check;
pub mod stats;
pub mod sweep;

pub use error::{AppError, AppResult, ErrorKind};

/// `Method` as the lowercase words `vertex` / `pair` in JSON and CSV.
pub(crate) mod method_text {
    use bcsample::Method;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Method, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(m)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Method, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
