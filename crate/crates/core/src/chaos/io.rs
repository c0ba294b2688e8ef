//! Tensor file format: a JSON header `{d, n, layout: "row-major"}` with
//! either an inline flat `entries` array or a `data` field naming a
//! sidecar binary of little-endian 64-bit floats (resolved relative to the
//! JSON file).

use std::path::Path;

use crate::error::{Error, Result};

use super::CoefficientTensor;

#[derive(Debug, serde::Serialize, serde::Deserialize)]
struct TensorHeader {
    d: usize,
    n: usize,
    layout: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    data: Option<String>,
}

/// Load a tensor from its JSON header (inline or sidecar payload).
pub fn load_tensor(path: &Path) -> Result<CoefficientTensor> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let header: TensorHeader = serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("malformed tensor header {}: {e}", path.display())))?;
    if header.layout != "row-major" {
        return Err(Error::Input(format!(
            "unsupported layout {:?}; only row-major is defined",
            header.layout
        )));
    }
    let entries = match (header.entries, header.data) {
        (Some(entries), None) => entries,
        (None, Some(rel)) => {
            let sidecar = path.parent().unwrap_or(Path::new(".")).join(rel);
            let bytes = std::fs::read(&sidecar)
                .map_err(|e| Error::Input(format!("cannot read sidecar {}: {e}", sidecar.display())))?;
            if bytes.len() % 8 != 0 {
                return Err(Error::Input(format!(
                    "sidecar {} length {} is not a multiple of 8",
                    sidecar.display(),
                    bytes.len()
                )));
            }
            bytes
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                .collect()
        }
        (Some(_), Some(_)) => {
            return Err(Error::Input("tensor header has both inline entries and a sidecar".into()))
        }
        (None, None) => {
            return Err(Error::Input("tensor header has neither entries nor a sidecar".into()))
        }
    };
    CoefficientTensor::new(header.d, header.n, entries)
}

/// Save a tensor; `sidecar = true` writes `<path stem>.bin` next to the
/// header instead of inlining the entries.
pub fn save_tensor(path: &Path, tensor: &CoefficientTensor, sidecar: bool) -> Result<()> {
    let header = if sidecar {
        let bin_name = path
            .file_stem()
            .map(|s| format!("{}.bin", s.to_string_lossy()))
            .unwrap_or_else(|| "tensor.bin".into());
        let bin_path = path.parent().unwrap_or(Path::new(".")).join(&bin_name);
        let mut bytes = Vec::with_capacity(tensor.entries().len() * 8);
        for &v in tensor.entries() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        std::fs::write(&bin_path, bytes)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", bin_path.display())))?;
        TensorHeader {
            d: tensor.d(),
            n: tensor.n(),
            layout: "row-major".into(),
            entries: None,
            data: Some(bin_name),
        }
    } else {
        TensorHeader {
            d: tensor.d(),
            n: tensor.n(),
            layout: "row-major".into(),
            entries: Some(tensor.entries().to_vec()),
            data: None,
        }
    };
    let text = serde_json::to_string_pretty(&header)
        .map_err(|e| Error::Input(format!("serialize tensor: {e}")))?;
    std::fs::write(path, text)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_round_trip() {
        let dir = std::env::temp_dir().join("heavytail-io-inline");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("a.json");
        let t = CoefficientTensor::new(2, 2, vec![1.0, 2.5, -3.0, 0.25]).unwrap();
        save_tensor(&path, &t, false).unwrap();
        let back = load_tensor(&path).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn sidecar_round_trip() {
        let dir = std::env::temp_dir().join("heavytail-io-sidecar");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("b.json");
        let t = CoefficientTensor::new(3, 2, (0..8).map(|i| i as f64 * 0.5).collect()).unwrap();
        save_tensor(&path, &t, true).unwrap();
        let back = load_tensor(&path).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn rejects_malformed_headers() {
        let dir = std::env::temp_dir().join("heavytail-io-bad");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"d": 2, "n": 2, "layout": "column-major", "entries": [1,2,3,4]}"#)
            .unwrap();
        assert!(load_tensor(&path).is_err());
        std::fs::write(&path, r#"{"d": 2, "n": 2, "layout": "row-major", "entries": [1,2,3]}"#)
            .unwrap();
        assert!(load_tensor(&path).is_err());
    }
}
