use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A rotation-matrix entry (or derived quantity) that a formula divides by
    /// is too close to zero.
    #[error("singular parameter: {entry} = {value:e} is below the genericity guard")]
    Singular { entry: &'static str, value: f64 },

    /// Two quantities that must agree by construction did not.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err($crate::Error::Precondition(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
