//! Binary state snapshots.
//!
//! Layout: `u64` little-endian header length, the JSON header, then one
//! block of little-endian `f64` per component (η first), row-major.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{ModelParams, State};
use crate::spectral::{Field, Grid};

pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotHeader {
    pub schema_version: u32,
    pub grid: Grid,
    pub params: ModelParams,
    pub time: f64,
    pub components: usize,
}

pub fn encode_snapshot(state: &State, params: &ModelParams) -> Result<Vec<u8>> {
    let header = SnapshotHeader {
        schema_version: SNAPSHOT_VERSION,
        grid: *state.grid(),
        params: *params,
        time: state.t,
        components: 1 + state.v.len(),
    };
    let json = serde_json::to_vec(&header).map_err(|e| Error::Format {
        path: Default::default(),
        reason: e.to_string(),
    })?;
    let mut out = Vec::with_capacity(8 + json.len() + 8 * header.components * header.grid.len());
    out.extend_from_slice(&(json.len() as u64).to_le_bytes());
    out.extend_from_slice(&json);
    for f in state.components() {
        for v in f.values() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

pub fn decode_snapshot(bytes: &[u8], path: &Path) -> Result<(SnapshotHeader, State)> {
    let bad = |reason: String| Error::Format {
        path: path.to_path_buf(),
        reason,
    };
    if bytes.len() < 8 {
        return Err(bad("truncated header length".into()));
    }
    let hlen = u64::from_le_bytes(bytes[..8].try_into().expect("eight bytes")) as usize;
    let body = bytes.get(8..8 + hlen).ok_or_else(|| bad("truncated header".into()))?;
    let header: SnapshotHeader = serde_json::from_slice(body).map_err(|e| bad(e.to_string()))?;
    if header.schema_version != SNAPSHOT_VERSION {
        return Err(bad(format!("unsupported snapshot version {}", header.schema_version)));
    }
    let n = header.grid.len();
    let payload = &bytes[8 + hlen..];
    if payload.len() != 8 * n * header.components || header.components == 0 {
        return Err(bad(format!(
            "payload has {} bytes, expected {}",
            payload.len(),
            8 * n * header.components
        )));
    }
    let mut fields = payload
        .chunks_exact(8 * n)
        .map(|block| {
            let values = block
                .chunks_exact(8)
                .map(|b| f64::from_le_bytes(b.try_into().expect("eight bytes")))
                .collect();
            Field::from_values(header.grid, values)
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = fields.remove(0);
    let mut state = if fields.is_empty() { State::scalar(eta) } else { State::new(eta, fields)? };
    state.t = header.time;
    Ok((header, state))
}

pub fn write_snapshot(path: &Path, state: &State, params: &ModelParams) -> Result<()> {
    let bytes = encode_snapshot(state, params)?;
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&bytes).map_err(|e| Error::io(path, e))
}

pub fn read_snapshot(path: &Path) -> Result<(SnapshotHeader, State)> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    decode_snapshot(&bytes, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{DataSpec, InitialData, ModelKind};

    #[test]
    fn round_trip_is_bitwise() {
        let g = Grid::new(2, 16, 7.0).unwrap();
        let p = ModelParams::new(ModelKind::WB2D, 0.3, 0.2, 2.3, 0.5).unwrap();
        let data = InitialData::new(
            DataSpec::RandomBand { lambda_min: 0.0, lambda_max: 3.0, seed: 4, amp: 0.7 },
            DataSpec::PotentialGradient { seed: 5, lambda_min: 0.0, lambda_max: 3.0, amp: 0.2 },
        );
        let mut st = data.state(ModelKind::WB2D, &g).unwrap();
        st.t = 1.0 / 3.0;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.bin");
        write_snapshot(&path, &st, &p).unwrap();
        let (h, back) = read_snapshot(&path).unwrap();
        assert_eq!(h.params, p);
        assert_eq!(back.t, st.t);
        for (a, b) in back.components().zip(st.components()) {
            let same = a.values().iter().zip(b.values()).all(|(x, y)| x.to_bits() == y.to_bits());
            assert!(same);
        }
        let again = encode_snapshot(&back, &p).unwrap();
        assert_eq!(again, std::fs::read(&path).unwrap());
    }

    #[test]
    fn truncated_payload_is_rejected() {
        let g = Grid::new(1, 16, 7.0).unwrap();
        let p = ModelParams::new(ModelKind::Whitham1D, 0.3, 0.2, 1.7, 0.5).unwrap();
        let mut bytes = encode_snapshot(&State::zeros(ModelKind::Whitham1D, g), &p).unwrap();
        bytes.pop();
        assert!(decode_snapshot(&bytes, Path::new("x")).is_err());
    }
}
