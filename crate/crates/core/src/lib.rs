pub mod code;
pub mod counting;
pub mod error;
pub mod expsum;
pub mod gf;
pub mod identities;
pub mod quadform;

pub use error::{Error, Result};

/// Serializes a big integer as a decimal string.
pub(crate) fn serde_decimal<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
