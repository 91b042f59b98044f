//! JSON documents, CSV writers and truth-table files.

use std::fs;
use std::path::Path;

use lowwalsh_core::boolfun::{AnfTable, TruthTable};
use lowwalsh_core::kloosterman::KloostermanScan;
use lowwalsh_core::report::VerificationReport;
use lowwalsh_core::walsh::SpectrumDistribution;
use lowwalsh_core::{FieldCtx, FieldElem};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Lowercase `0x`-prefixed hex.
pub fn hex(x: FieldElem) -> String {
    format!("{:#x}", x.bits())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub m: u32,
    pub n: u32,
    pub poly: String,
    pub generator: String,
    pub lambda0: String,
    pub subfield_order: u64,
    pub unit_circle_order: u64,
    pub dual_basis: Vec<String>,
}

impl FieldJson {
    pub fn new(ctx: &FieldCtx) -> Self {
        FieldJson {
            m: ctx.m(),
            n: ctx.n(),
            poly: format!("{:#x}", ctx.reduction_poly()),
            generator: hex(ctx.generator()),
            lambda0: hex(ctx.lambda0()),
            subfield_order: ctx.subfield_elements().len() as u64,
            unit_circle_order: ctx.unit_circle().len() as u64,
            dual_basis: ctx.dual_basis().iter().map(|&b| hex(b)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueCount {
    pub value: i64,
    pub count: u64,
}

/// `{"n", "distribution", "nonlinearity", "classification"}`, values ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub n: u32,
    pub distribution: Vec<ValueCount>,
    pub nonlinearity: u64,
    pub classification: String,
}

impl DistributionJson {
    pub fn new(d: &SpectrumDistribution, m: u32) -> Self {
        DistributionJson {
            n: d.n(),
            distribution: d
                .entries()
                .iter()
                .map(|&(value, count)| ValueCount { value, count })
                .collect(),
            nonlinearity: d.nonlinearity(),
            classification: d.classify(m).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub construction: String,
    pub m: u32,
    pub mu: String,
    pub lambda: String,
    pub kloosterman: i64,
    #[serde(flatten)]
    pub distribution: DistributionJson,
    pub weight: u64,
    pub balanced: bool,
    pub degree: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub lambda: String,
    pub k: i64,
}

/// `{"m", "values": [{"lambda", "k"}], "value_set"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanJson {
    pub m: u32,
    pub values: Vec<ScanEntry>,
    pub value_set: Vec<i64>,
}

impl From<&KloostermanScan> for ScanJson {
    fn from(s: &KloostermanScan) -> Self {
        ScanJson {
            m: s.m,
            values: s
                .entries
                .iter()
                .map(|&(l, k)| ScanEntry { lambda: hex(l), k })
                .collect(),
            value_set: s.value_set.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub gate: String,
    pub detail: String,
}

/// `{"theorem", "m", "mu", "checks": [{"name", "pass", "detail"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub theorem: String,
    pub m: u32,
    pub mu: Option<String>,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            theorem: r.theorem.clone(),
            m: r.m,
            mu: r.mu.map(hex),
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    pass: c.pass,
                    gate: c.gate.as_str().to_string(),
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnfJson {
    pub n: u32,
    pub degree: i32,
    /// Monomial masks of the nonzero coefficients, ascending.
    pub monomials: Vec<String>,
}

impl From<&AnfTable> for AnfJson {
    fn from(a: &AnfTable) -> Self {
        AnfJson {
            n: a.n(),
            degree: a.degree(),
            monomials: a.monomials().iter().map(|u| format!("{u:#x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTableJson {
    pub n: u32,
    pub weight: u64,
    /// Bit `x` of this number is `f(x)`.
    pub hex: String,
}

impl From<&TruthTable> for TruthTableJson {
    fn from(t: &TruthTable) -> Self {
        TruthTableJson {
            n: t.n(),
            weight: t.weight(),
            hex: format!("0x{}", t.to_hex()),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// CSV with a header row.
pub fn to_csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

pub fn write_truth_table(path: &Path, t: &TruthTable) -> Result<(), CliError> {
    fs::write(path, t.to_le_bytes())?;
    Ok(())
}

pub fn read_truth_table(path: &Path, n: u32) -> Result<TruthTable, CliError> {
    let bytes = fs::read(path)?;
    Ok(TruthTable::from_le_bytes(n, &bytes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lowwalsh_core::create_ctx;

    #[test]
    fn distribution_json_shape() {
        let d = SpectrumDistribution::from_pairs(8, &[(16, 64), (-16, 92), (0, 80), (48, 4), (32, 16)]);
        let j = serde_json::to_value(DistributionJson::new(&d, 4)).unwrap();
        assert_eq!(j["n"], 8);
        assert_eq!(j["distribution"][0]["value"], -16);
        assert_eq!(j["distribution"][0]["count"], 92);
        assert_eq!(j["nonlinearity"], 128 - 24);
        assert_eq!(j["classification"], "five-valued{-16,0,16,32,48}");
    }

    #[test]
    fn csv_has_header() {
        let out = to_csv([ValueCount { value: -1, count: 2 }]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "value,count\n-1,2\n");
    }

    #[test]
    fn truth_table_file_round_trip() {
        let ctx = create_ctx(3, None).unwrap();
        let t = lowwalsh_core::constructions::build_f(&ctx, FieldElem::ONE, None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.bin");
        write_truth_table(&p, &t).unwrap();
        assert_eq!(fs::read(&p).unwrap().len(), 8);
        assert_eq!(read_truth_table(&p, 6).unwrap(), t);
        let j = TruthTableJson::from(&t);
        assert!(j.hex.starts_with("0x"));
    }
}
