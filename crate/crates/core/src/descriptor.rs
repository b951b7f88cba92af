//! The JSON record describing a constructed or verified code.

use serde::{Deserialize, Serialize};

use crate::analysis::{certify, CodeCertificate};
use crate::error::{Error, Result};
use crate::families::{LinearCode, Provenance};
use crate::galois::FieldCtx;

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> String {
    format!("agcodes {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u64,
    pub e: u32,
    /// Encoding `Σ c_i p^i` of the monic modulus.
    pub modulus: u64,
}

impl FieldInfo {
    pub fn of(f: &FieldCtx) -> Self {
        FieldInfo {
            p: f.characteristic() as u64,
            e: f.degree(),
            modulus: f.modulus_encoding(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub schema: u32,
    pub tool: String,
    pub field: FieldInfo,
    pub family: Option<String>,
    pub params: Option<serde_json::Value>,
    pub designed_distance: Option<u64>,
    pub dual_designed_distance: Option<u64>,
    /// Work budget the distances were computed with.
    pub budget: u64,
    #[serde(flatten)]
    pub certificate: CodeCertificate,
    /// Path of the matrix file, as given when it was written.
    pub matrix: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl CodeDescriptor {
    /// Certifies `code` and wraps the result.
    pub fn describe(code: &LinearCode, budget: u64, matrix: Option<String>) -> Result<Self> {
        let certificate = certify(code, budget)?;
        let family = code.provenance.as_ref().map(|p| &p.family);
        Ok(CodeDescriptor {
            schema: SCHEMA_VERSION,
            tool: tool_version(),
            field: FieldInfo::of(code.ctx()),
            family: family.map(|f| f.id().to_string()),
            params: family.map(|f| f.params_json()),
            designed_distance: code.designed_distance,
            dual_designed_distance: code.dual_designed_distance,
            budget,
            certificate,
            matrix,
            provenance: code.provenance.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: CodeDescriptor = serde_json::from_str(text)?;
        if d.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported descriptor schema {}", d.schema)));
        }
        Ok(d)
    }

    /// The catalog key: family, field and parameters.
    pub fn catalog_key(&self) -> String {
        serde_json::json!([self.family, self.field, self.params]).to_string()
    }
}
