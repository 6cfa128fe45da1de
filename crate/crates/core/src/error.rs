use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("map is not surjective (cokernel {0})")]
    NotSurjective(String),
    #[error("action class is not transitive")]
    NotTransitive,
    #[error("resource bound exceeded: {what} is {requested}, limit {limit}")]
    ResourceBound {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bound(what: &'static str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::ResourceBound {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
