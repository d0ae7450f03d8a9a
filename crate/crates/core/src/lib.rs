pub mod bounds;
pub mod cache;
pub mod canon;
pub mod error;
pub mod expansion;
pub mod extremal;
pub mod oracle;
pub mod report;
pub mod word;

pub use error::{Error, Result};
