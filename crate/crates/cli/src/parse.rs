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
//! Value parsers for command-line arguments.

use superpose_core::{QubitParams, C64};

fn numbers(s: &str, sep: char) -> Result<Vec<f64>, String> {
    s.split(sep)
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{}' is not a number", p.trim()))
        })
        .collect()
}

/// `theta,phi[,gamma]` in radians.
pub fn qubit(s: &str) -> Result<QubitParams, String> {
    let v = numbers(s, ',')?;
    let (theta, phi, gamma) = match v.as_slice() {
        [t, p] => (*t, *p, 0.0),
        [t, p, g] => (*t, *p, *g),
        _ => return Err(format!("expected theta,phi[,gamma], got '{s}'")),
    };
    QubitParams::new(theta, phi, gamma).map_err(|e| e.to_string())
}

/// `re[,im]`.
pub fn complex(s: &str) -> Result<C64, String> {
    match numbers(s, ',')?.as_slice() {
        [re] => Ok(C64::new(*re, 0.0)),
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err(format!("expected re[,im], got '{s}'")),
    }
}

/// One weight as `re` or `re:im`.
pub fn weight(s: &str) -> Result<C64, String> {
    match numbers(s, ':')?.as_slice() {
        [re] => Ok(C64::new(*re, 0.0)),
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err(format!("expected re or re:im, got '{s}'")),
    }
}
