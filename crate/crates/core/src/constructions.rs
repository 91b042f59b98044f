//! The functions
//!
//! ```text
//! f(x) = Tr(λ x^(2^m+1)) + Tr(x) Tr(μ x^(2^m−1))
//! g(x) = (1 + Tr(x)) Tr(λ x^(2^m+1)) + Tr(x) Tr(μ x^(2^m−1))
//! ```
//!
//! on GF(2^2m), with `λ + λ̄ = 1` and `μ ∈ GF(2^m)^*`, their predicted Walsh
//! values, and theorem-level verification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::parity;
use crate::boolfun::{algebraic_degree, TruthTable};
use crate::error::{Error, Result};
use crate::gf2n::{FieldCtx, FieldElem};
use crate::kloosterman::{find_mu, kloosterman_sum};
use crate::par;
use crate::report::VerificationReport;
use crate::walsh::{walsh_at_field_point, wht_fast_capped, SpectrumDistribution, WalshSpectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    F,
    G,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::F => "f",
            Construction::G => "g",
        }
    }
}

/// Smallest solution of `λ + λ̄ = 1`.
pub fn find_lambda(ctx: &FieldCtx) -> FieldElem {
    ctx.lambda0()
}

pub fn check_mu(ctx: &FieldCtx, mu: FieldElem) -> Result<()> {
    if !ctx.contains(mu) || !ctx.in_subfield(mu) {
        return Err(Error::NotInSubfield);
    }
    if mu.is_zero() {
        return Err(Error::ZeroMu);
    }
    Ok(())
}

fn resolve_lambda(ctx: &FieldCtx, lambda: Option<FieldElem>) -> Result<FieldElem> {
    let l = lambda.unwrap_or_else(|| ctx.lambda0());
    if !ctx.contains(l) || ctx.tr_rel(l) != FieldElem::ONE {
        return Err(Error::InvalidLambda);
    }
    Ok(l)
}

// Exponents k are split into this many contiguous runs of g^k.
const WALK_BLOCKS: u64 = 1 << 10;

/// Truth table from `bit(x, x^(2^m+1), x^(2^m−1))` over `x = g^k`, costing
/// three multiplications per element. Entry 0 stays 0.
fn walk_table<F>(ctx: &FieldCtx, bit: F) -> Result<TruthTable>
where
    F: Fn(u32, u32, u32) -> bool + Sync + Send,
{
    let n = ctx.n();
    let total = (1u64 << n) - 1;
    let g = ctx.generator();
    let step_p = ctx.pow(g, ctx.q() + 1);
    let step_q = ctx.pow(g, ctx.q() - 1);
    let blocks = total.min(WALK_BLOCKS);
    let walk = |b: u64, set: &mut dyn FnMut(usize)| {
        let (start, end) = (b * total / blocks, (b + 1) * total / blocks);
        let mut x = ctx.pow(g, start);
        let mut p = ctx.pow(step_p, start);
        let mut q = ctx.pow(step_q, start);
        for _ in start..end {
            if bit(x.bits(), p.bits(), q.bits()) {
                set(x.index());
            }
            x = ctx.mul(x, g);
            p = ctx.mul(p, step_p);
            q = ctx.mul(q, step_q);
        }
    };
    let words_len = ((1usize << n) / 64).max(1);

    #[cfg(feature = "parallel")]
    let words: Vec<u64> = {
        use core::sync::atomic::{AtomicU64, Ordering};
        let shared: Vec<AtomicU64> = (0..words_len).map(|_| AtomicU64::new(0)).collect();
        par::map_range(0..blocks as usize, |b| {
            walk(b as u64, &mut |i| {
                shared[i >> 6].fetch_or(1 << (i & 63), Ordering::Relaxed);
            })
        });
        shared.into_iter().map(AtomicU64::into_inner).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let words: Vec<u64> = {
        let mut w = alloc::vec![0u64; words_len];
        for b in 0..blocks {
            walk(b, &mut |i| w[i >> 6] |= 1 << (i & 63));
        }
        w
    };
    TruthTable::from_words(n, words)
}

/// Truth table of `f` or `g`; `λ` defaults to [`find_lambda`].
pub fn build(
    ctx: &FieldCtx,
    which: Construction,
    mu: FieldElem,
    lambda: Option<FieldElem>,
) -> Result<TruthTable> {
    check_mu(ctx, mu)?;
    let lambda = resolve_lambda(ctx, lambda)?;
    let lm = ctx.functional_mask(lambda);
    let mm = ctx.functional_mask(mu);
    let tm = ctx.trace_mask();
    match which {
        Construction::F => walk_table(ctx, move |x, p, q| {
            parity(p & lm) ^ (parity(x & tm) & parity(q & mm))
        }),
        Construction::G => walk_table(ctx, move |x, p, q| {
            if parity(x & tm) {
                parity(q & mm)
            } else {
                parity(p & lm)
            }
        }),
    }
}

pub fn build_f(ctx: &FieldCtx, mu: FieldElem, lambda: Option<FieldElem>) -> Result<TruthTable> {
    build(ctx, Construction::F, mu, lambda)
}

pub fn build_g(ctx: &FieldCtx, mu: FieldElem, lambda: Option<FieldElem>) -> Result<TruthTable> {
    build(ctx, Construction::G, mu, lambda)
}

/// Unit-circle roots of a quadratic; either none or two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircleRoots {
    pub roots: Option<[FieldElem; 2]>,
}

impl CircleRoots {
    pub fn exists(&self) -> bool {
        self.roots.is_some()
    }

    pub fn as_slice(&self) -> &[FieldElem] {
        match &self.roots {
            Some(r) => r,
            None => &[],
        }
    }
}

fn sorted_pair(a: FieldElem, b: FieldElem) -> [FieldElem; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

// w + 1/w = c on the unit circle, c in GF(2^m)^*. With w = ct this is
// t² + t = 1/c², always solvable in GF(2^2m).
fn unit_roots_of(ctx: &FieldCtx, c: FieldElem, inv: &dyn Fn(FieldElem) -> FieldElem) -> CircleRoots {
    let ic = inv(c);
    let [t1, t2] = ctx
        .solve_artin_schreier(ctx.mul(ic, ic))
        .expect("subfield elements have absolute trace 0");
    let (w1, w2) = (ctx.mul(c, t1), ctx.mul(c, t2));
    CircleRoots {
        roots: ctx.on_unit_circle(w1).then(|| sorted_pair(w1, w2)),
    }
}

// a z² + z + ā = 0, i.e. 1 + az + ā/z = 0, via a = a0 a1 and w = a1 z.
fn circle_roots_with(ctx: &FieldCtx, a: FieldElem, inv: &dyn Fn(FieldElem) -> FieldElem) -> CircleRoots {
    let a0 = ctx.sqrt_elem(ctx.mul(a, ctx.conjugate(a)));
    let a1 = ctx.mul(a, inv(a0));
    let back = ctx.conjugate(a1);
    let w = unit_roots_of(ctx, inv(a0), inv);
    CircleRoots {
        roots: w.roots.map(|[w1, w2]| sorted_pair(ctx.mul(w1, back), ctx.mul(w2, back))),
    }
}

/// Roots on the unit circle of `X + X^(−1) = 1/a` for `a ∈ GF(2^m)^*`.
pub fn solve_lemma31(ctx: &FieldCtx, a: FieldElem) -> Result<CircleRoots> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !ctx.in_subfield(a) {
        return Err(Error::NotInSubfield);
    }
    let inv = |x| ctx.inv(x).expect("nonzero");
    Ok(unit_roots_of(ctx, inv(a), &inv))
}

/// Roots on the unit circle of `a z² + z + ā = 0`. They exist exactly when
/// `Tr_1^m(a ā) = 1`.
pub fn solve_circle_equation(ctx: &FieldCtx, a: FieldElem) -> Result<CircleRoots> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(circle_roots_with(ctx, a, &|x| ctx.inv(x).expect("nonzero")))
}

/// Which transcription of the coefficient sums to use.
///
/// For `f`, `AsPrinted` evaluates `A, B` at `μ` itself and `W_f(0)` by its
/// explicit formula; `Corrected` uses `√μ` and routes `a = 0` through the
/// case formula. For `g`, `AsPrinted` evaluates `C` at `μ²` and `Corrected`
/// at `μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientReading {
    AsPrinted,
    Corrected,
}

impl CoefficientReading {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientReading::AsPrinted => "as-printed",
            CoefficientReading::Corrected => "corrected",
        }
    }
}

/// Case of the Walsh value formulas, from `Tr_1^n(a) ≟ m (mod 2)` and
/// `Tr_1^m(a ā)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WalshCase {
    Origin,
    One,
    TraceMatchNormZero,
    TraceMissNormZero,
    TraceMatchNormOne,
    TraceMissNormOne,
}

impl WalshCase {
    pub fn label(self) -> &'static str {
        match self {
            WalshCase::Origin => "a=0",
            WalshCase::One => "a=1",
            WalshCase::TraceMatchNormZero => "tr(a)=m,tr(aa')=0",
            WalshCase::TraceMissNormZero => "tr(a)!=m,tr(aa')=0",
            WalshCase::TraceMatchNormOne => "tr(a)=m,tr(aa')=1",
            WalshCase::TraceMissNormOne => "tr(a)!=m,tr(aa')=1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub value: i64,
    pub case: WalshCase,
}

/// Evaluates the case formulas for one `μ`, optionally with a shared inverse
/// table.
pub struct Predictor<'a> {
    ctx: &'a FieldCtx,
    mu: FieldElem,
    k: i64,
    inv_table: Option<&'a [FieldElem]>,
}

impl<'a> Predictor<'a> {
    pub fn new(ctx: &'a FieldCtx, mu: FieldElem, inv_table: Option<&'a [FieldElem]>) -> Result<Self> {
        check_mu(ctx, mu)?;
        let k = kloosterman_sum(&ctx.subfield(), mu, FieldElem::ONE);
        Ok(Predictor {
            ctx,
            mu,
            k,
            inv_table,
        })
    }

    /// `k_m(μ)`.
    pub fn kloosterman(&self) -> i64 {
        self.k
    }

    fn inv(&self, x: FieldElem) -> FieldElem {
        match self.inv_table {
            Some(t) => t[x.index()],
            None => self.ctx.inv(x).expect("nonzero"),
        }
    }

    fn chi(&self, x: FieldElem) -> i64 {
        if self.ctx.tr_abs(x) {
            -1
        } else {
            1
        }
    }

    fn case_of(&self, a: FieldElem) -> WalshCase {
        let ctx = self.ctx;
        let matches = ctx.tr_abs(a) == (ctx.m() % 2 == 1);
        let norm = ctx.tr_sub_unchecked(ctx.mul(a, ctx.conjugate(a)));
        match (matches, norm) {
            (true, false) => WalshCase::TraceMatchNormZero,
            (false, false) => WalshCase::TraceMissNormZero,
            (true, true) => WalshCase::TraceMatchNormOne,
            (false, true) => WalshCase::TraceMissNormOne,
        }
    }

    // χ_n(ν θ1) + χ_n(ν θ2) over the unit-circle roots of 1 + bz + b̄/z = 0.
    fn root_sum(&self, nu: FieldElem, b: FieldElem) -> i64 {
        let roots = circle_roots_with(self.ctx, b, &|x| self.inv(x));
        let [r1, r2] = roots.roots.expect("the case guarantees two roots");
        self.chi(self.ctx.mul(nu, r1)) + self.chi(self.ctx.mul(nu, r2))
    }

    fn f_nu(&self, reading: CoefficientReading) -> FieldElem {
        match reading {
            CoefficientReading::AsPrinted => self.mu,
            CoefficientReading::Corrected => self.ctx.sqrt_elem(self.mu),
        }
    }

    /// Four-case formula for `W_f(a)`, applied at every `a` including 0.
    pub fn wf_by_cases(&self, a: FieldElem, reading: CoefficientReading) -> Prediction {
        let half = 1i64 << (self.ctx.m() - 1);
        let nu = self.f_nu(reading);
        let case = self.case_of(a);
        let value = match case {
            WalshCase::TraceMatchNormZero => -2 * half,
            WalshCase::TraceMissNormZero => -half * self.root_sum(nu, a + FieldElem::ONE),
            WalshCase::TraceMatchNormOne => {
                half * (self.root_sum(nu, a) - self.root_sum(nu, a + FieldElem::ONE) + 2)
            }
            WalshCase::TraceMissNormOne => half * self.root_sum(nu, a),
            WalshCase::Origin | WalshCase::One => unreachable!(),
        };
        Prediction { value, case }
    }

    /// Separately derived `W_f(0)`: `−2^m` for even `m`, and
    /// `2^m (−1)^Tr_1^m(ν(ρ + 1/ρ))` for odd `m`, `ρ` a root of `1 + z + 1/z`.
    pub fn wf_origin_explicit(&self, reading: CoefficientReading) -> i64 {
        let ctx = self.ctx;
        let q = 1i64 << ctx.m();
        if ctx.m().is_multiple_of(2) {
            return -q;
        }
        let roots = circle_roots_with(ctx, FieldElem::ONE, &|x| self.inv(x));
        let rho = roots.roots.expect("m odd gives two roots")[0];
        let s = ctx.mul(self.f_nu(reading), rho + ctx.conjugate(rho));
        if ctx.tr_sub_unchecked(s) {
            -q
        } else {
            q
        }
    }

    pub fn wf(&self, a: FieldElem, reading: CoefficientReading) -> Prediction {
        if a.is_zero() && reading == CoefficientReading::AsPrinted {
            return Prediction {
                value: self.wf_origin_explicit(reading),
                case: WalshCase::Origin,
            };
        }
        let p = self.wf_by_cases(a, reading);
        if a.is_zero() {
            Prediction {
                case: WalshCase::Origin,
                ..p
            }
        } else {
            p
        }
    }

    pub fn wg(&self, a: FieldElem, reading: CoefficientReading) -> Prediction {
        let ctx = self.ctx;
        let half = 1i64 << (ctx.m() - 1);
        let odd = ctx.m() % 2 == 1;
        let k = self.k;
        if a.is_zero() {
            let value = if odd { -half * (1 + k) } else { -half * (3 + k) };
            return Prediction {
                value,
                case: WalshCase::Origin,
            };
        }
        if a == FieldElem::ONE {
            let value = if odd { half * (1 + k) } else { half * (k - 1) };
            return Prediction {
                value,
                case: WalshCase::One,
            };
        }
        let nu = match reading {
            CoefficientReading::AsPrinted => ctx.mul(self.mu, self.mu),
            CoefficientReading::Corrected => self.mu,
        };
        let a1 = a + FieldElem::ONE;
        let c = self.chi(ctx.mul(nu, ctx.mul(ctx.conjugate(a), self.inv(a))))
            - self.chi(ctx.mul(nu, ctx.mul(ctx.conjugate(a1), self.inv(a1))));
        let case = self.case_of(a);
        let value = match case {
            WalshCase::TraceMatchNormZero => half * (c - 2),
            WalshCase::TraceMatchNormOne => half * (c + 2),
            _ => half * c,
        };
        Prediction { value, case }
    }
}

/// `W_f(a)` from the case formulas with the corrected reading.
pub fn predicted_wf(ctx: &FieldCtx, mu: FieldElem, a: FieldElem) -> Result<Prediction> {
    Ok(Predictor::new(ctx, mu, None)?.wf(a, CoefficientReading::Corrected))
}

/// `W_g(a)` from the case formulas with the corrected reading.
pub fn predicted_wg(ctx: &FieldCtx, mu: FieldElem, a: FieldElem) -> Result<Prediction> {
    Ok(Predictor::new(ctx, mu, None)?.wg(a, CoefficientReading::Corrected))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseRow {
    pub a: FieldElem,
    pub case: WalshCase,
    pub predicted: i64,
    pub actual: i64,
}

/// Predicted against transformed Walsh values at every field point.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub construction: Construction,
    pub reading: CoefficientReading,
    pub rows: Vec<CaseRow>,
}

impl CaseReport {
    pub fn matched(&self) -> usize {
        self.rows.iter().filter(|r| r.predicted == r.actual).count()
    }

    pub fn all_match(&self) -> bool {
        self.matched() == self.rows.len()
    }

    /// `(case, matched, total)` per case, in case order.
    pub fn by_case(&self) -> Vec<(WalshCase, usize, usize)> {
        let mut out: Vec<(WalshCase, usize, usize)> = Vec::new();
        for r in &self.rows {
            let hit = usize::from(r.predicted == r.actual);
            match out.iter_mut().find(|e| e.0 == r.case) {
                Some(e) => {
                    e.1 += hit;
                    e.2 += 1;
                }
                None => out.push((r.case, hit, 1)),
            }
        }
        out.sort_unstable();
        out
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CaseRow> {
        self.rows.iter().filter(|r| r.predicted != r.actual)
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .by_case()
            .iter()
            .map(|(c, hit, total)| format!("{}: {hit}/{total}", c.label()))
            .collect();
        format!(
            "{} reading matched {}/{} ({})",
            self.reading.name(),
            self.matched(),
            self.rows.len(),
            parts.join("; ")
        )
    }
}

pub fn case_report(
    predictor: &Predictor<'_>,
    construction: Construction,
    spectrum: &WalshSpectrum,
    reading: CoefficientReading,
) -> CaseReport {
    let ctx = predictor.ctx;
    let rows = par::map_range(0..1usize << ctx.n(), |i| {
        let a = FieldElem::new(i as u32);
        let p = match construction {
            Construction::F => predictor.wf(a, reading),
            Construction::G => predictor.wg(a, reading),
        };
        CaseRow {
            a,
            case: p.case,
            predicted: p.value,
            actual: i64::from(walsh_at_field_point(ctx, spectrum, a)),
        }
    });
    CaseReport {
        construction,
        reading,
        rows,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

/// The linear relations among the value counts `N_i` (count of `i · 2^m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRelations {
    pub m: u32,
    pub relations: Vec<Relation>,
}

impl CountRelations {
    pub fn holds(&self) -> bool {
        self.relations.iter().all(|r| r.lhs == r.rhs)
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{}: {} vs {}", r.name, r.lhs, r.rhs))
            .collect();
        parts.join("; ")
    }
}

fn counts_on(dist: &SpectrumDistribution, m: u32, multiples: &[i64]) -> Result<Vec<i64>> {
    if dist.n() != 2 * m {
        return Err(Error::DimensionMismatch {
            left: dist.n(),
            right: 2 * m,
        });
    }
    let q = 1i64 << m;
    if let Some(&(v, _)) = dist.entries().iter().find(|(v, _)| !multiples.iter().any(|i| i * q == *v)) {
        return Err(Error::UnexpectedValue(v));
    }
    Ok(multiples.iter().map(|i| dist.count_of(i * q) as i64).collect())
}

/// Relations for the value set `{−2^m, 0, 2^m, 2^(m+1), 3·2^m}`.
pub fn count_relations_f(dist: &SpectrumDistribution, m: u32) -> Result<CountRelations> {
    let c = counts_on(dist, m, &[-1, 0, 1, 2, 3])?;
    let (nm1, n0, n1, n2, n3) = (c[0], c[1], c[2], c[3], c[4]);
    let big = 1i64 << (2 * m - 1);
    let small = 1i64 << (m - 1);
    Ok(CountRelations {
        m,
        relations: alloc::vec![
            Relation { name: "N0 = 3N2 + 8N3", lhs: n0, rhs: 3 * n2 + 8 * n3 },
            Relation { name: "N1 = 2^(n-1) + 2^(m-1) - 3N2 - 6N3", lhs: n1, rhs: big + small - 3 * n2 - 6 * n3 },
            Relation { name: "N-1 = 2^(n-1) - 2^(m-1) - N2 - 3N3", lhs: nm1, rhs: big - small - n2 - 3 * n3 },
        ],
    })
}

/// Relations for the value set `{0, ±2^m, ±2^(m+1)}`.
pub fn count_relations_g(dist: &SpectrumDistribution, m: u32) -> Result<CountRelations> {
    let c = counts_on(dist, m, &[-2, -1, 0, 1, 2])?;
    let (nm2, nm1, n0, n1, n2) = (c[0], c[1], c[2], c[3], c[4]);
    let big = 1i64 << (2 * m - 1);
    let small = 1i64 << (m - 1);
    Ok(CountRelations {
        m,
        relations: alloc::vec![
            Relation { name: "N0 = 3N2 + 3N-2", lhs: n0, rhs: 3 * n2 + 3 * nm2 },
            Relation { name: "N1 = 2^(n-1) + 2^(m-1) - 3N2 - N-2", lhs: n1, rhs: big + small - 3 * n2 - nm2 },
            Relation { name: "N-1 = 2^(n-1) - 2^(m-1) - N2 - 3N-2", lhs: nm1, rhs: big - small - n2 - 3 * nm2 },
        ],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// Spectrum of `f` in `{0, ±2^m, 2^(m+1), 3·2^m}`, `nl ≥ 2^(n−1) − 3·2^(m−1)`.
    Thm32,
    /// For `k_m(μ) = −1`: spectrum of `g` in `{0, ±2^m, ±2^(m+1)}`,
    /// `nl = 2^(n−1) − 2^m`, balanced for odd `m`.
    Thm34,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Thm32 => "thm32",
            Theorem::Thm34 => "thm34",
        }
    }

    pub fn construction(self) -> Construction {
        match self {
            Theorem::Thm32 => Construction::F,
            Theorem::Thm34 => Construction::G,
        }
    }

    /// Allowed spectrum values at `m`, ascending.
    pub fn value_set(self, m: u32) -> Vec<i64> {
        let q = 1i64 << m;
        match self {
            Theorem::Thm32 => alloc::vec![-q, 0, q, 2 * q, 3 * q],
            Theorem::Thm34 => alloc::vec![-2 * q, -q, 0, q, 2 * q],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuPolicy {
    All,
    KEqMinus1,
    Given(Vec<FieldElem>),
}

/// The `μ` values a policy selects, ascending for the built-in policies.
pub fn select_mus(ctx: &FieldCtx, policy: &MuPolicy) -> Result<Vec<FieldElem>> {
    match policy {
        MuPolicy::All => Ok(ctx.subfield_elements()[1..].to_vec()),
        MuPolicy::KEqMinus1 => Ok(find_mu(ctx, -1)),
        MuPolicy::Given(mus) => {
            for &mu in mus {
                check_mu(ctx, mu)?;
            }
            Ok(mus.clone())
        }
    }
}

// Above this degree the per-point case formulas are skipped.
const CASE_REPORT_MAX_N: u32 = 22;

/// Everything computed for one `μ`: table, spectrum and verdicts.
pub struct MuRun {
    pub table: TruthTable,
    pub spectrum: WalshSpectrum,
    pub distribution: SpectrumDistribution,
    pub report: VerificationReport,
    pub cases: Vec<CaseReport>,
}

/// Builds, transforms and checks one `μ` against a theorem.
pub fn run_mu(
    ctx: &FieldCtx,
    which: Theorem,
    mu: FieldElem,
    lambda: Option<FieldElem>,
    inv_table: Option<&[FieldElem]>,
) -> Result<MuRun> {
    let m = ctx.m();
    let construction = which.construction();
    let table = build(ctx, construction, mu, lambda)?;
    let spectrum = wht_fast_capped(&table, ctx.max_n())?;
    let dist = spectrum.distribution();
    let predictor = Predictor::new(ctx, mu, inv_table)?;
    let k = predictor.kloosterman();
    let mut report = VerificationReport::new(which.name(), m, Some(mu));
    let nl = dist.nonlinearity();
    let half_n = 1u64 << (2 * m - 1);
    let in_set = dist.is_subset_of(&which.value_set(m));

    // Thm 3.4 only speaks about μ with k_m(μ) = −1.
    let hypothesis = which == Theorem::Thm32 || k == -1;
    let theorem_gate = |report: &mut VerificationReport, name: &str, pass: bool, detail: String| {
        if hypothesis {
            report.hard(name, pass, detail);
        } else {
            report.info(name, pass, format!("{detail} (k_m(mu) = {k}, hypothesis not met)"));
        }
    };

    report.info("kloosterman", true, format!("k_m(mu) = {k}"));
    theorem_gate(
        &mut report,
        "value_set",
        in_set,
        format!("values {:?} within {:?}", dist.values(), which.value_set(m)),
    );
    match which {
        Theorem::Thm32 => {
            let bound = half_n - 3 * (1u64 << (m - 1));
            theorem_gate(&mut report, "nonlinearity", nl >= bound, format!("nl = {nl}, bound {bound}"));
        }
        Theorem::Thm34 => {
            let target = half_n - (1u64 << m);
            theorem_gate(&mut report, "nonlinearity", nl == target, format!("nl = {nl}, expected {target}"));
            let balanced = table.is_balanced();
            theorem_gate(
                &mut report,
                "balanced",
                balanced == (m % 2 == 1),
                format!("weight {} (balanced = {balanced}, m odd = {})", table.weight(), m % 2 == 1),
            );
        }
    }
    report.hard(
        "parseval",
        spectrum.parseval_holds() && spectrum.first_moment_holds(table.get(0)),
        format!("sum W^2 = 4^{}, sum W = 2^{}", 2 * m, 2 * m),
    );
    let relations = match which {
        Theorem::Thm32 => count_relations_f(&dist, m),
        Theorem::Thm34 => count_relations_g(&dist, m),
    };
    match relations {
        Ok(r) => theorem_gate(&mut report, "count_relations", r.holds(), r.summary()),
        Err(e) => theorem_gate(&mut report, "count_relations", false, format!("{e}")),
    }
    let n0 = dist.count_of(0);
    let gate_small = m >= 3 && hypothesis;
    report.push(
        "n0_positive",
        if gate_small { crate::report::Gate::Hard } else { crate::report::Gate::Info },
        n0 > 0,
        format!("N0 = {n0}"),
    );
    let deg = algebraic_degree(&table);
    report.push(
        "degree",
        if m >= 3 { crate::report::Gate::Hard } else { crate::report::Gate::Info },
        deg == m as i32 + 1,
        format!("deg = {deg}, expected {}", m + 1),
    );

    let mut cases = Vec::new();
    if ctx.n() <= CASE_REPORT_MAX_N {
        for reading in [CoefficientReading::Corrected, CoefficientReading::AsPrinted] {
            let cr = case_report(&predictor, construction, &spectrum, reading);
            report.info(&format!("case_formula_{}", reading.name()), cr.all_match(), cr.summary());
            cases.push(cr);
        }
        if construction == Construction::F {
            let actual = i64::from(spectrum.at_mask(0));
            for reading in [CoefficientReading::Corrected, CoefficientReading::AsPrinted] {
                let explicit = predictor.wf_origin_explicit(reading);
                let by_cases = predictor.wf_by_cases(FieldElem::ZERO, reading).value;
                report.info(
                    &format!("wf0_{}", reading.name()),
                    explicit == actual && by_cases == actual,
                    format!("W_f(0) = {actual}; explicit formula {explicit}, case formula {by_cases}"),
                );
            }
        }
    } else {
        report.info("case_formula", true, format!("skipped above n = {CASE_REPORT_MAX_N}"));
    }

    Ok(MuRun {
        table,
        spectrum,
        distribution: dist,
        report,
        cases,
    })
}

/// One report per selected `μ`, in selection order.
pub fn verify_theorem(ctx: &FieldCtx, which: Theorem, policy: &MuPolicy) -> Result<Vec<VerificationReport>> {
    let mus = select_mus(ctx, policy)?;
    let inv = (ctx.n() <= CASE_REPORT_MAX_N).then(|| ctx.inverse_table());
    let runs = par::map_slice(&mus, |&mu| run_mu(ctx, which, mu, None, inv.as_deref()).map(|r| r.report));
    runs.into_iter().collect()
}
