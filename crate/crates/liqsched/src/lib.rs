//! Command-line and file-format companion for [`liqsched_core`].
//!
//! The core crate owns all the numerics; this crate adds everything that
//! needs an operating system: the params JSON and sweep-spec formats, CSV
//! and SVG emitters, named experiment presets, and the `liqsched` binary
//! gluing them together.  See each module's docs for the formats and the
//! README for the CLI surface.

pub mod cli;
pub mod error;
pub mod io;
pub mod presets;
pub mod svg;
pub mod sweep;

pub use error::{Error, Result};
