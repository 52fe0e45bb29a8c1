use std::fmt;

/// Where a non-physical state was detected.
#[derive(Clone, Debug, PartialEq)]
pub struct NonphysicalState {
    pub rho: f64,
    pub pressure: f64,
    /// Interior grid index `(i, j)`; `j = 0` in one dimension.
    pub index: Option<(usize, usize)>,
    pub step: Option<usize>,
    pub time: Option<f64>,
}

impl NonphysicalState {
    pub fn new(rho: f64, pressure: f64) -> Self {
        Self {
            rho,
            pressure,
            index: None,
            step: None,
            time: None,
        }
    }
}

impl fmt::Display for NonphysicalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "non-physical state (rho = {:e}, p = {:e})", self.rho, self.pressure)?;
        if let Some((i, j)) = self.index {
            write!(f, " at node ({i}, {j})")?;
        }
        if let Some(step) = self.step {
            write!(f, " during step {step}")?;
        }
        if let Some(t) = self.time {
            write!(f, " (t = {t})")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    NonphysicalState(NonphysicalState),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn nonphysical(rho: f64, pressure: f64) -> Self {
        Error::NonphysicalState(NonphysicalState::new(rho, pressure))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
