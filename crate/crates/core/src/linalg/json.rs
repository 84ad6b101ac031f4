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
//! JSON encodings: `{"dims":[..],"amps":[[re,im],..]}` for states and
//! `{"dims":[..],"rows":[[[re,im],..],..]}` for density matrices.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DensityMatrix, Matrix, StateVector, C64};

#[derive(Serialize, Deserialize)]
struct StateJson {
    dims: Vec<usize>,
    amps: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct DensityJson {
    dims: Vec<usize>,
    rows: Vec<Vec<[f64; 2]>>,
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StateJson {
            dims: self.dims().to_vec(),
            amps: self.amps().iter().map(pair).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = StateJson::deserialize(d)?;
        let amps = raw.amps.iter().map(|&[r, i]| C64::new(r, i)).collect();
        StateVector::new(raw.dims, amps).map_err(D::Error::custom)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m = self.entries();
        DensityJson {
            dims: self.dims().to_vec(),
            rows: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| pair(&m[(i, j)])).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = DensityJson::deserialize(d)?;
        let n = raw.rows.len();
        if raw.rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("density matrix rows must form a square matrix"));
        }
        let m = Matrix::from_fn(n, n, |i, j| {
            let [r, im] = raw.rows[i][j];
            C64::new(r, im)
        });
        DensityMatrix::new(raw.dims, m).map_err(D::Error::custom)
    }
}
