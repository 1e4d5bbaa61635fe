use std::fmt;

/// Process exit status of `bcbench`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad flags or parameter values.
    Usage,
    /// Unreadable or malformed input, unknown target, zero exact BC, or a
    /// manifest that no longer reproduces.
    Data,
    /// At least one model-check row failed.
    ModelCheck,
}

impl ErrorKind {
    pub fn exit_code(self) -> u8 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Data => 2,
            ErrorKind::ModelCheck => 3,
        }
    }
}

#[derive(Debug)]
pub struct AppError {
    pub kind: ErrorKind,
    pub error: anyhow::Error,
}

impl AppError {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Self { kind: ErrorKind::Usage, error: anyhow::anyhow!("{msg}") }
    }

    pub fn data(msg: impl fmt::Display) -> Self {
        Self { kind: ErrorKind::Data, error: anyhow::anyhow!("{msg}") }
    }

    pub fn model_check(msg: impl fmt::Display) -> Self {
        Self { kind: ErrorKind::ModelCheck, error: anyhow::anyhow!("{msg}") }
    }

    pub fn exit_code(&self) -> u8 {
        self.kind.exit_code()
    }

    /// Adds context while keeping the kind.
    pub fn context(self, ctx: impl fmt::Display + Send + Sync + 'static) -> Self {
        Self { kind: self.kind, error: self.error.context(ctx) }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<bcsample::Error> for AppError {
    fn from(e: bcsample::Error) -> Self {
        let kind = match e {
            bcsample::Error::InvalidParameter(_) => ErrorKind::Usage,
            _ => ErrorKind::Data,
        };
        Self { kind, error: e.into() }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        Self { kind: ErrorKind::Data, error: e.into() }
    }
}

impl From<csv::Error> for AppError {
    fn from(e: csv::Error) -> Self {
        Self { kind: ErrorKind::Data, error: e.into() }
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        Self { kind: ErrorKind::Data, error: e.into() }
    }
}

pub type AppResult<T> = Result<T, AppError>;
