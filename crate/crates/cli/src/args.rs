use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lowwalsh_core::gf2n::{DEFAULT_MAX_N, HARD_MAX_N};
use lowwalsh_core::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "lowwalsh", version, about = "Walsh spectra of the f and g constructions over GF(2^2m)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest field degree n any command may build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N,
          value_parser = clap::value_parser!(u32).range(1..=HARD_MAX_N as i64))]
    pub max_n: u32,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    /// Raw bit-packed little-endian truth table (export only).
    Bin,
    /// Truth table as one hex number (export only).
    Hex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    RemarkF,
    RemarkG,
}

/// How `--mu` picks elements of GF(2^m)^* inside GF(2^2m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuSelector {
    /// Field coordinates, `0x..`.
    Hex(u32),
    /// `idx:K`, the K-th power of the subfield generator.
    Index(u64),
    All,
    /// `k=T`, every μ with `k_m(μ) = T`.
    Kloosterman(i64),
}

pub fn parse_hex_u64(s: &str) -> Result<u64, String> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .ok_or_else(|| format!("expected 0x-prefixed hex, got {s:?}"))?;
    u64::from_str_radix(digits, 16).map_err(|e| format!("{s:?}: {e}"))
}

pub fn parse_hex_u32(s: &str) -> Result<u32, String> {
    let v = parse_hex_u64(s)?;
    u32::try_from(v).map_err(|_| format!("{s:?} does not fit in 32 bits"))
}

pub fn parse_mu(s: &str) -> Result<MuSelector, String> {
    if s == "all" {
        return Ok(MuSelector::All);
    }
    if let Some(t) = s.strip_prefix("k=") {
        return t.parse().map(MuSelector::Kloosterman).map_err(|e| format!("{s:?}: {e}"));
    }
    if let Some(k) = s.strip_prefix("idx:") {
        return k.parse().map(MuSelector::Index).map_err(|e| format!("{s:?}: {e}"));
    }
    parse_hex_u32(s)
        .map(MuSelector::Hex)
        .map_err(|_| format!("mu must be 0x.., idx:K, all or k=T, got {s:?}"))
}

/// `A..B` (inclusive) or `A..=B`.
pub fn parse_m_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {s:?}"));
    }
    Ok(a..=b)
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Half degree; the field is GF(2^2m).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// Reduction polynomial of GF(2^2m) as 0x.., overriding the default.
    #[arg(long, value_parser = parse_hex_u64)]
    pub poly: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum)]
    pub construction: ConstructionArg,
    /// 0x.., idx:K, all or k=T.
    #[arg(long, value_parser = parse_mu, default_value = "0x1")]
    pub mu: MuSelector,
    /// λ with λ + λ^(2^m) = 1, as 0x.. (default: the smallest).
    #[arg(long, value_parser = parse_hex_u32)]
    pub lambda: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters: polynomial, generator, λ, subgroup sizes.
    Field(FieldArgs),
    /// Walsh spectrum report of f or g, one per selected μ.
    Spectrum(FunctionArgs),
    /// Recompute the reference spectrum tables.
    Table {
        #[arg(long, value_enum)]
        which: TableKind,
        /// Reduction polynomial for the column whose n matches its degree.
        #[arg(long, value_parser = parse_hex_u64)]
        poly: Option<u64>,
    },
    /// Run verification suites; exit 1 on any hard failure.
    Verify {
        #[arg(long, value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
        suite: Suite,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "m_range")]
        m: Option<u32>,
        #[arg(long, value_parser = parse_m_range)]
        m_range: Option<RangeInclusive<u32>>,
    },
    /// Kloosterman sums over GF(2^m).
    Kloosterman {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Reduction polynomial of GF(2^m) for --scan and --a.
        #[arg(long, value_parser = parse_hex_u64)]
        poly: Option<u64>,
        /// k_m(λ) for every λ.
        #[arg(long, group = "mode")]
        scan: bool,
        /// List μ in the subfield of GF(2^2m) with k_m(μ) = T (usable as --mu).
        #[arg(long, group = "mode", allow_hyphen_values = true)]
        target: Option<i64>,
        /// k_m(a) for one element of GF(2^m).
        #[arg(long, group = "mode", value_parser = parse_hex_u32)]
        a: Option<u32>,
    },
    /// Algebraic normal form of f or g.
    Anf(FunctionArgs),
    /// Truth table of f or g as bin, hex or json.
    Export(FunctionArgs),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(parse_mu("all"), Ok(MuSelector::All));
        assert_eq!(parse_mu("k=-1"), Ok(MuSelector::Kloosterman(-1)));
        assert_eq!(parse_mu("idx:3"), Ok(MuSelector::Index(3)));
        assert_eq!(parse_mu("0x1f"), Ok(MuSelector::Hex(0x1f)));
        assert!(parse_mu("31").is_err());
        assert_eq!(parse_m_range("2..8"), Ok(2..=8));
        assert_eq!(parse_m_range("3..=3"), Ok(3..=3));
        assert!(parse_m_range("5..2").is_err());
        assert!(parse_hex_u32("0x1ffffffff").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
