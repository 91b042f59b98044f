use std::fmt::Write as _;

use lowwalsh_core::boolfun::{algebraic_degree, anf};
use lowwalsh_core::constructions::{build, check_mu, find_lambda, Construction};
use lowwalsh_core::kloosterman::{find_mu, kloosterman_sum, scan_fast};
use lowwalsh_core::verify::run_suite;
use lowwalsh_core::walsh::wht_fast_capped;
use lowwalsh_core::{BinaryField, FieldCtx, FieldElem};
use serde::Serialize;

use crate::args::{Cli, Command, ConstructionArg, FieldArgs, Format, FunctionArgs, MuSelector};
use crate::error::CliError;
use crate::formats::{
    hex, to_csv, to_json, AnfJson, DistributionJson, FieldJson, ReportJson, ScanJson, SpectrumJson, TruthTableJson,
};
use crate::tables::run_table;

/// Bytes to emit and whether every hard check passed.
#[derive(Debug)]
pub struct Output {
    pub body: Vec<u8>,
    pub passed: bool,
}

impl Output {
    fn ok(body: Vec<u8>) -> Self {
        Output { body, passed: true }
    }
}

fn format_or(cfg: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = cfg.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("--format {f:?} is not available here").to_lowercase()))
    }
}

// Size checks happen before any field is built.
fn check_m(m: u32, max_n: u32) -> Result<(), CliError> {
    if 2 * m > max_n {
        return Err(CliError::Capability(format!("n = {} exceeds --max-n {max_n}", 2 * m)));
    }
    Ok(())
}

fn make_ctx(f: &FieldArgs, max_n: u32) -> Result<FieldCtx, CliError> {
    check_m(f.m, max_n)?;
    Ok(FieldCtx::new(f.m, f.poly, max_n)?)
}

fn construction(c: ConstructionArg) -> Construction {
    match c {
        ConstructionArg::F => Construction::F,
        ConstructionArg::G => Construction::G,
    }
}

fn select(ctx: &FieldCtx, sel: &MuSelector) -> Result<Vec<FieldElem>, CliError> {
    let mus = match *sel {
        MuSelector::Hex(v) => {
            let mu = FieldElem::new(v);
            if !ctx.contains(mu) {
                return Err(CliError::Usage(format!("mu {v:#x} is not in GF(2^{})", ctx.n())));
            }
            check_mu(ctx, mu)?;
            vec![mu]
        }
        MuSelector::Index(k) => vec![ctx.subfield_power(k)],
        MuSelector::All => ctx.subfield_elements()[1..].to_vec(),
        MuSelector::Kloosterman(t) => find_mu(ctx, t),
    };
    if mus.is_empty() {
        return Err(CliError::Core(lowwalsh_core::Error::NoSuchMu {
            m: ctx.m(),
            target: match sel {
                MuSelector::Kloosterman(t) => *t,
                _ => 0,
            },
        }));
    }
    Ok(mus)
}

fn single(ctx: &FieldCtx, sel: &MuSelector) -> Result<FieldElem, CliError> {
    match select(ctx, sel)?.as_slice() {
        [mu] => Ok(*mu),
        _ => Err(CliError::Usage("this command takes a single mu".into())),
    }
}

fn lambda_of(ctx: &FieldCtx, l: Option<u32>) -> Result<Option<FieldElem>, CliError> {
    match l.map(FieldElem::new) {
        Some(l) if !ctx.contains(l) => Err(CliError::Usage(format!("lambda {l} is not in GF(2^{})", ctx.n()))),
        other => Ok(other),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let max_n = cli.max_n;
    match &cli.command {
        Command::Field(f) => field(f, cli.format, max_n),
        Command::Spectrum(a) => spectrum(a, cli.format, max_n),
        Command::Table { which, poly } => {
            let fmt = format_or(cli.format, Format::Text, &[Format::Text, Format::Csv, Format::Json])?;
            let t = run_table(*which, *poly, max_n)?;
            let body = match fmt {
                Format::Json => to_json(&t)?,
                Format::Csv => to_csv(t.csv_rows())?,
                _ => t.to_text().into_bytes(),
            };
            Ok(Output {
                body,
                passed: t.matches,
            })
        }
        Command::Verify { suite, m, m_range } => {
            let fmt = format_or(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            let range = match (m, m_range) {
                (Some(m), None) => *m..=*m,
                (None, Some(r)) => r.clone(),
                _ => return Err(CliError::Usage("give --m or --m-range".into())),
            };
            check_m(*range.end(), max_n)?;
            let reports = run_suite(*suite, range, max_n)?;
            let passed = reports.iter().all(|r| r.passed());
            let body = match fmt {
                Format::Json => to_json(&reports.iter().map(ReportJson::from).collect::<Vec<_>>())?,
                _ => {
                    let mut s = String::new();
                    for r in &reports {
                        let mu = r.mu.map(|mu| format!(" mu={mu}")).unwrap_or_default();
                        let _ = writeln!(s, "{} m={}{mu}: {}", r.theorem, r.m, if r.passed() { "PASS" } else { "FAIL" });
                        for c in &r.checks {
                            let mark = if c.pass { "ok" } else { "FAIL" };
                            let _ = writeln!(s, "  [{}] {} {}: {}", c.gate.as_str(), mark, c.name, c.detail);
                        }
                    }
                    let failed = reports.iter().filter(|r| !r.passed()).count();
                    let _ = writeln!(s, "{} reports, {failed} failed", reports.len());
                    s.into_bytes()
                }
            };
            Ok(Output { body, passed })
        }
        Command::Kloosterman { m, poly, scan, target, a } => {
            kloosterman(*m, *poly, *scan, *target, *a, cli.format, max_n)
        }
        Command::Anf(a) => {
            let fmt = format_or(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            let ctx = make_ctx(&a.field, max_n)?;
            let mu = single(&ctx, &a.mu)?;
            let t = build(&ctx, construction(a.construction), mu, lambda_of(&ctx, a.lambda)?)?;
            let form = anf(&t);
            let body = match fmt {
                Format::Json => to_json(&AnfJson::from(&form))?,
                _ => {
                    let mut s = format!("n={} degree={}\n", form.n(), form.degree());
                    for u in form.monomials() {
                        let _ = writeln!(s, "{u:#x}");
                    }
                    s.into_bytes()
                }
            };
            Ok(Output::ok(body))
        }
        Command::Export(a) => {
            let fmt = format_or(cli.format, Format::Hex, &[Format::Bin, Format::Hex, Format::Json])?;
            if fmt == Format::Bin && cli.out.is_none() {
                return Err(CliError::Usage("--format bin needs --out".into()));
            }
            let ctx = make_ctx(&a.field, max_n)?;
            let mu = single(&ctx, &a.mu)?;
            let t = build(&ctx, construction(a.construction), mu, lambda_of(&ctx, a.lambda)?)?;
            let body = match fmt {
                Format::Bin => t.to_le_bytes(),
                Format::Json => to_json(&TruthTableJson::from(&t))?,
                _ => format!("0x{}\n", t.to_hex()).into_bytes(),
            };
            Ok(Output::ok(body))
        }
    }
}

fn field(f: &FieldArgs, format: Option<Format>, max_n: u32) -> Result<Output, CliError> {
    let fmt = format_or(format, Format::Text, &[Format::Text, Format::Json])?;
    let ctx = make_ctx(f, max_n)?;
    let j = FieldJson::new(&ctx);
    let body = match fmt {
        Format::Json => to_json(&j)?,
        _ => format!(
            "GF(2^{}) over GF(2^{})\npoly {}\ngenerator {}\nlambda0 {}\nsubfield order {}\nunit circle order {}\n",
            j.n, j.m, j.poly, j.generator, j.lambda0, j.subfield_order, j.unit_circle_order
        )
        .into_bytes(),
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct SpectrumCsvRow {
    mu: String,
    value: i64,
    count: u64,
}

fn spectrum(a: &FunctionArgs, format: Option<Format>, max_n: u32) -> Result<Output, CliError> {
    let fmt = format_or(format, Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
    let ctx = make_ctx(&a.field, max_n)?;
    let which = construction(a.construction);
    let lambda = lambda_of(&ctx, a.lambda)?;
    let mus = select(&ctx, &a.mu)?;
    let m = ctx.m();
    let sub = ctx.subfield();
    let mut reports = Vec::with_capacity(mus.len());
    for mu in mus {
        let t = build(&ctx, which, mu, lambda)?;
        let d = wht_fast_capped(&t, max_n)?.distribution();
        reports.push(SpectrumJson {
            construction: which.name().to_string(),
            m,
            mu: hex(mu),
            lambda: hex(lambda.unwrap_or_else(|| find_lambda(&ctx))),
            kloosterman: kloosterman_sum(&sub, mu, FieldElem::ONE),
            distribution: DistributionJson::new(&d, m),
            weight: t.weight(),
            balanced: t.is_balanced(),
            degree: algebraic_degree(&t),
        });
    }
    let body = match fmt {
        Format::Json if reports.len() == 1 => to_json(&reports[0])?,
        Format::Json => to_json(&reports)?,
        Format::Csv if reports.len() == 1 => to_csv(reports[0].distribution.distribution.iter())?,
        Format::Csv => to_csv(reports.iter().flat_map(|r| {
            r.distribution.distribution.iter().map(|vc| SpectrumCsvRow {
                mu: r.mu.clone(),
                value: vc.value,
                count: vc.count,
            })
        }))?,
        _ => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{} m={} mu={} lambda={} k_m(mu)={}",
                    r.construction, r.m, r.mu, r.lambda, r.kloosterman
                );
                let _ = writeln!(s, "{:>12} {:>12}", "value", "count");
                for vc in &r.distribution.distribution {
                    let _ = writeln!(s, "{:>12} {:>12}", vc.value, vc.count);
                }
                let _ = writeln!(
                    s,
                    "nonlinearity {}, {}, weight {}, balanced {}, degree {}",
                    r.distribution.nonlinearity, r.distribution.classification, r.weight, r.balanced, r.degree
                );
            }
            s.into_bytes()
        }
    };
    Ok(Output::ok(body))
}

fn kloosterman(
    m: u32,
    poly: Option<u64>,
    scan: bool,
    target: Option<i64>,
    a: Option<u32>,
    format: Option<Format>,
    max_n: u32,
) -> Result<Output, CliError> {
    if m > max_n {
        return Err(CliError::Capability(format!("m = {m} exceeds --max-n {max_n}")));
    }
    if let Some(t) = target {
        let fmt = format_or(format, Format::Text, &[Format::Text, Format::Json])?;
        check_m(m, max_n)?;
        let ctx = FieldCtx::new(m, None, max_n)?;
        let mus: Vec<String> = find_mu(&ctx, t).into_iter().map(hex).collect();
        #[derive(Serialize)]
        struct TargetJson {
            m: u32,
            target: i64,
            mu: Vec<String>,
        }
        let body = match fmt {
            Format::Json => to_json(&TargetJson { m, target: t, mu: mus })?,
            _ => mus.iter().map(|s| format!("{s}\n")).collect::<String>().into_bytes(),
        };
        return Ok(Output::ok(body));
    }
    let field = BinaryField::with_poly(m, poly, max_n)?;
    if let Some(a) = a {
        let fmt = format_or(format, Format::Text, &[Format::Text, Format::Json])?;
        let a = FieldElem::new(a);
        if !field.contains(a) {
            return Err(CliError::Usage(format!("a = {a} is not in GF(2^{m})")));
        }
        let k = kloosterman_sum(&field, a, FieldElem::ONE);
        let body = match fmt {
            Format::Json => to_json(&serde_json::json!({ "m": m, "a": hex(a), "k": k }))?,
            _ => format!("{k}\n").into_bytes(),
        };
        return Ok(Output::ok(body));
    }
    if !scan {
        return Err(CliError::Usage("give one of --scan, --target or --a".into()));
    }
    let fmt = format_or(format, Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
    let s = ScanJson::from(&scan_fast(&field)?);
    let body = match fmt {
        Format::Json => to_json(&s)?,
        Format::Csv => to_csv(s.values.iter())?,
        _ => {
            let mut out = String::new();
            for e in &s.values {
                let _ = writeln!(out, "{} {}", e.lambda, e.k);
            }
            let set: Vec<String> = s.value_set.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "value set {{{}}}", set.join(","));
            out.into_bytes()
        }
    };
    Ok(Output::ok(body))
}
