//! Recomputes the two reference spectrum tables and compares them with the
//! published columns.

use lowwalsh_core::constructions::{build_f, build_g};
use lowwalsh_core::kloosterman::find_mu;
use lowwalsh_core::poly;
use lowwalsh_core::walsh::{wht_fast_capped, SpectrumDistribution};
use lowwalsh_core::{FieldCtx, FieldElem};
use serde::Serialize;

use crate::args::TableKind;
use crate::error::CliError;
use crate::formats::{hex, ValueCount};

// Published columns, used only to decide the exit status.
const REMARK_F: [(u32, [(i64, u64); 5]); 3] = [
    (4, [(0, 80), (-16, 92), (16, 64), (32, 16), (48, 4)]),
    (5, [(0, 310), (-32, 386), (32, 258), (64, 50), (96, 20)]),
    (6, [(0, 1344), (-64, 1548), (64, 856), (128, 288), (192, 60)]),
];

const REMARK_G: [(u32, [(i64, u64); 5]); 3] = [
    (3, [(-16, 4), (-8, 12), (0, 24), (8, 20), (16, 4)]),
    (5, [(-64, 64), (-32, 236), (0, 396), (32, 260), (64, 68)]),
    (7, [(-256, 1016), (-128, 4072), (0, 6072), (128, 4216), (256, 1008)]),
];

#[derive(Debug, Clone, Serialize)]
pub struct Column {
    pub m: u32,
    pub mu: String,
    pub poly: String,
    pub matches: bool,
    pub rows: Vec<ValueCount>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRun {
    pub table: &'static str,
    pub matches: bool,
    pub columns: Vec<Column>,
}

impl TableRun {
    pub fn to_text(&self) -> String {
        let title = match self.table {
            "remark-f" => "Walsh spectrum and frequency of f_{lambda,1}",
            _ => "Walsh spectrum and frequency of g_{lambda,mu}, k_m(mu) = -1",
        };
        let mut out = format!("{title}\n");
        let cells: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("m={} mu={}", c.m, c.mu))
            .collect();
        out += &format!("| {} |\n", cells.iter().map(|c| format!("{c:<22}")).collect::<Vec<_>>().join(" | "));
        let head = vec![format!("{:>8} | {:>11}", "W(a)", "frequency"); self.columns.len()];
        out += &format!("| {} |\n", head.join(" | "));
        let depth = self.columns.iter().map(|c| c.rows.len()).max().unwrap_or(0);
        for i in 0..depth {
            let row: Vec<String> = self
                .columns
                .iter()
                .map(|c| match c.rows.get(i) {
                    Some(r) => format!("{:>8} | {:>11}", r.value, r.count),
                    None => format!("{:>8} | {:>11}", "", ""),
                })
                .collect();
            out += &format!("| {} |\n", row.join(" | "));
        }
        let verdict: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("m={}: {}", c.m, if c.matches { "match" } else { "MISMATCH" }))
            .collect();
        out += &format!("{}\n", verdict.join(", "));
        out
    }

    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.columns
            .iter()
            .flat_map(|c| {
                c.rows.iter().map(move |r| CsvRow {
                    m: c.m,
                    mu: c.mu.clone(),
                    value: r.value,
                    count: r.count,
                    matches: c.matches,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub m: u32,
    pub mu: String,
    pub value: i64,
    pub count: u64,
    pub matches: bool,
}

// Rows in the published order, then any value the layout lacks.
fn layout(d: &SpectrumDistribution, order: &[i64]) -> Vec<ValueCount> {
    let mut rows: Vec<ValueCount> = order
        .iter()
        .map(|&value| ValueCount {
            value,
            count: d.count_of(value),
        })
        .collect();
    rows.extend(
        d.entries()
            .iter()
            .filter(|(v, _)| !order.contains(v))
            .map(|&(value, count)| ValueCount { value, count }),
    );
    rows
}

fn poly_for(poly: Option<u64>, n: u32) -> Option<u64> {
    poly.filter(|&p| poly::degree(p) == Some(n))
}

pub fn run_table(which: TableKind, poly: Option<u64>, max_n: u32) -> Result<TableRun, CliError> {
    let (name, reference) = match which {
        TableKind::RemarkF => ("remark-f", &REMARK_F),
        TableKind::RemarkG => ("remark-g", &REMARK_G),
    };
    if let Some(p) = poly {
        if !reference.iter().any(|(m, _)| poly::degree(p) == Some(2 * m)) {
            return Err(CliError::Usage(format!(
                "--poly {p:#x} has no column of matching degree in {name}"
            )));
        }
    }
    let mut columns = Vec::new();
    for (m, col) in reference {
        let ctx = FieldCtx::new(*m, poly_for(poly, 2 * m), max_n)?;
        let order: Vec<i64> = col.iter().map(|&(v, _)| v).collect();
        let expected = SpectrumDistribution::from_pairs(2 * m, col);
        let candidates = match which {
            TableKind::RemarkF => vec![FieldElem::ONE],
            TableKind::RemarkG => find_mu(&ctx, -1),
        };
        let mut first = None;
        let mut hit = None;
        for mu in candidates {
            let t = match which {
                TableKind::RemarkF => build_f(&ctx, mu, None)?,
                TableKind::RemarkG => build_g(&ctx, mu, None)?,
            };
            let d = wht_fast_capped(&t, max_n)?.distribution();
            if d == expected {
                hit = Some((mu, d));
                break;
            }
            first.get_or_insert((mu, d));
        }
        let matches = hit.is_some();
        let (mu, d) = hit.or(first).expect("at least one mu with k = -1");
        columns.push(Column {
            m: *m,
            mu: hex(mu),
            poly: format!("{:#x}", ctx.reduction_poly()),
            matches,
            rows: layout(&d, &order),
        });
    }
    Ok(TableRun {
        table: name,
        matches: columns.iter().all(|c| c.matches),
        columns,
    })
}
