//! Model files, the built-in catalog, verification runs and the `thg`
//! command line on top of `thg-core`.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod schema;
pub mod verify;

pub use catalog::{builtin_catalog, sphere_template, Catalog};
pub use error::ThgError;
pub use schema::{load_document, serialize, Document};
