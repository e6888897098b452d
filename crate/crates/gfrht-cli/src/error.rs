use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),

    #[error("bad image: {0}")]
    BadImage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Core(#[from] gfrht::Error),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl HarnessError {
    /// Process exit code: 2 for configuration problems, 3 for numerical
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::BadImage(_) | HarnessError::Io(_) => 2,
            HarnessError::Core(e) => match e {
                gfrht::Error::BadSpec(_)
                | gfrht::Error::Io(_)
                | gfrht::Error::Parse { .. }
                | gfrht::Error::KTooLarge { .. } => 2,
                _ => 3,
            },
            HarnessError::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
