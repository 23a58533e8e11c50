pub mod arrangement;
pub mod bundled;
pub mod error;
pub mod global;
pub mod local;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalars;
pub mod scene;
pub mod verify;

pub use error::{Error, Result};
