//! JSON channel descriptions.
//!
//! ```json
//! {"kind": "pauli", "c": [0.5, 0.5, 1.0]}
//! {"kind": "fano", "lambda": [[1,0,0],[0,1,0],[0,0,1]], "l": [0,0,0]}
//! {"kind": "kraus", "kraus_re": [[[1,0],[0,1]]], "kraus_im": [[[0,0],[0,0]]]}
//! {"kind": "depolarizing", "x": 0.25}
//! ```

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Channel, FanoForm, KrausChannel, PauliChannel};
use crate::linalg::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Pauli,
    Fano,
    Kraus,
    Identity,
    PhaseFlip,
    Depolarizing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<[[f64; 3]; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus_re: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus_im: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
}

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed channel JSON: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Channel(#[from] crate::error::Error),
}

impl ChannelSpec {
    pub fn from_json_str(s: &str) -> Result<Self, SchemaError> {
        serde_json::from_str(s).map_err(|e| SchemaError::Parse(e.to_string()))
    }

    fn present(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.c.is_some() {
            v.push("c");
        }
        if self.lambda.is_some() {
            v.push("lambda");
        }
        if self.l.is_some() {
            v.push("l");
        }
        if self.kraus_re.is_some() {
            v.push("kraus_re");
        }
        if self.kraus_im.is_some() {
            v.push("kraus_im");
        }
        if self.x.is_some() {
            v.push("x");
        }
        v
    }

    fn check_fields(&self, required: &[&str], optional: &[&str]) -> Result<(), SchemaError> {
        let present = self.present();
        for field in &present {
            if !required.contains(field) && !optional.contains(field) {
                return Err(SchemaError::Schema(format!("field `{field}` not allowed for kind {:?}", self.kind)));
            }
        }
        for field in required {
            if !present.contains(field) {
                return Err(SchemaError::Schema(format!("kind {:?} requires field `{field}`", self.kind)));
            }
        }
        Ok(())
    }

    pub fn to_channel(&self) -> Result<Channel, SchemaError> {
        match self.kind {
            ChannelKind::Pauli => {
                self.check_fields(&["c"], &[])?;
                Ok(PauliChannel::from_c(self.c.unwrap())?.into())
            }
            ChannelKind::Identity => {
                self.check_fields(&[], &[])?;
                Ok(PauliChannel::identity().into())
            }
            ChannelKind::PhaseFlip => {
                self.check_fields(&["x"], &[])?;
                Ok(PauliChannel::phase_flip(self.x.unwrap())?.into())
            }
            ChannelKind::Depolarizing => {
                self.check_fields(&["x"], &[])?;
                Ok(PauliChannel::depolarizing(self.x.unwrap())?.into())
            }
            ChannelKind::Fano => {
                self.check_fields(&["lambda"], &["l"])?;
                let rows = self.lambda.unwrap();
                let lambda = Matrix3::from_fn(|i, j| rows[i][j]);
                let l = Vector3::from(self.l.unwrap_or([0.0; 3]));
                Ok(FanoForm::new_cptp(lambda, l)?.into())
            }
            ChannelKind::Kraus => {
                self.check_fields(&["kraus_re"], &["kraus_im"])?;
                let re = self.kraus_re.as_ref().unwrap();
                let im = self.kraus_im.as_ref();
                if re.is_empty() {
                    return Err(SchemaError::Schema("`kraus_re` is empty".into()));
                }
                if let Some(im) = im {
                    if im.len() != re.len() {
                        return Err(SchemaError::Schema(format!(
                            "`kraus_im` has {} operators, `kraus_re` has {}",
                            im.len(),
                            re.len()
                        )));
                    }
                }
                let mut ops = Vec::with_capacity(re.len());
                for (k, op_re) in re.iter().enumerate() {
                    let n = op_re.len();
                    let op_im = im.map(|im| &im[k]);
                    let shape_ok = n > 0
                        && op_re.iter().all(|row| row.len() == n)
                        && op_im.is_none_or(|m| m.len() == n && m.iter().all(|row| row.len() == n));
                    if !shape_ok {
                        return Err(SchemaError::Schema(format!("Kraus operator {k} is not a square matrix")));
                    }
                    ops.push(CMatrix::from_fn(n, n, |i, j| {
                        Complex64::new(op_re[i][j], op_im.map_or(0.0, |m| m[i][j]))
                    }));
                }
                Ok(KrausChannel::new(ops)?.into())
            }
        }
    }
}

/// Parses and validates a channel description.
pub fn channel_from_json(s: &str) -> Result<Channel, SchemaError> {
    ChannelSpec::from_json_str(s)?.to_channel()
}
