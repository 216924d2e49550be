//! Output selection over a recorded iterate trace.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::vector::Vector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputMode {
    /// Draw an iterate uniformly at random from the trace.
    UniformRandom,
    /// Return the last iterate.
    Last,
}

pub fn select_output<'a>(
    trace: &'a [Vector],
    mode: OutputMode,
    rng: &mut RngStream,
) -> Result<&'a Vector> {
    if trace.is_empty() {
        return Err(Error::invalid("select_output needs a non-empty trace"));
    }
    Ok(match mode {
        OutputMode::UniformRandom => &trace[rng.index(trace.len())],
        OutputMode::Last => trace.last().unwrap(),
    })
}
