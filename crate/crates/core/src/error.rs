// Copyright 2026 The superpose Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller-supplied argument is out of range or inconsistent.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An overlap with the reference state is too small to be treated as nonzero.
    #[error("zero overlap: |<chi|psi>| = {magnitude:e} for {what}")]
    ZeroOverlap { what: String, magnitude: f64 },

    /// An input has (numerically) vanishing trace or norm.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A constructed value violates one of its structural invariants.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Short machine-readable tag, used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Argument(_) => "argument",
            Error::ZeroOverlap { .. } => "zero_overlap",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::Invariant(_) => "invariant",
        }
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
