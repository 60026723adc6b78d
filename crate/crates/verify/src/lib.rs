//! Holds the workspace acceptance suite (`tests/acceptance.rs`), which runs
//! against both the library and the command-line front end:
//!
//! ```text
//! cargo test -p verify --test acceptance
//! ```
