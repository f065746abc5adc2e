//! Predicted main terms for each asymptotic formula, residuals of the exact
//! sums against them, and empirical order-of-magnitude scans.
//!
//! Implied constants in the error terms are calibrated artifact constants
//! (see [`Thresholds`]), not claims carried over from the analysis: a report
//! is a diagnostic, and a failing verdict means the calibration was exceeded,
//! nothing more.

use crate::arith::ArithTables;
use crate::constants::{ConstantsBundle, EULER_GAMMA, LN_TWO_PI};
use crate::error::{Error, Result};
use crate::moments;
use crate::singular::SeriesTable;
use crate::sum::KahanSum;
use std::io::Write;

/// Fixed ε used in the N^{3/2} y^{1/2+ε} normalizer term and the x^{1/2+ε}
/// error of the weighted singular-series sum.
pub const EPSILON_EXPONENT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Cor1a,
    Cor1b,
    Lemma4,
    Lemma5,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Thm1 => "Thm1",
            TheoremId::Thm2 => "Thm2",
            TheoremId::Thm3 => "Thm3",
            TheoremId::Thm4 => "Thm4",
            TheoremId::Thm5 => "Thm5",
            TheoremId::Thm6 => "Thm6",
            TheoremId::Cor1a => "Cor1a",
            TheoremId::Cor1b => "Cor1b",
            TheoremId::Lemma4 => "Lemma4",
            TheoremId::Lemma5 => "Lemma5",
        }
    }

    pub fn parse(s: &str) -> Result<TheoremId> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "thm1" => Ok(TheoremId::Thm1),
            "2" | "thm2" => Ok(TheoremId::Thm2),
            "3" | "thm3" => Ok(TheoremId::Thm3),
            "4" | "thm4" => Ok(TheoremId::Thm4),
            "5" | "thm5" => Ok(TheoremId::Thm5),
            "6" | "thm6" => Ok(TheoremId::Thm6),
            "cor1a" => Ok(TheoremId::Cor1a),
            "cor1b" => Ok(TheoremId::Cor1b),
            "lemma4" => Ok(TheoremId::Lemma4),
            "lemma5" => Ok(TheoremId::Lemma5),
            other => Err(Error::domain(format!("unknown theorem id '{other}'"))),
        }
    }

    pub const ALL: [TheoremId; 10] = [
        TheoremId::Thm1,
        TheoremId::Thm2,
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::Thm5,
        TheoremId::Thm6,
        TheoremId::Cor1a,
        TheoremId::Cor1b,
        TheoremId::Lemma4,
        TheoremId::Lemma5,
    ];
}

/// Calibrated verdict thresholds on the normalized residual, one per
/// statement. The two-sided corollary check passes iff
/// T₀·y²/N ∈ [1/threshold, threshold].
#[derive(Debug, Clone, Copy)]
pub struct Thresholds {
    pub thm1: f64,
    pub thm2: f64,
    pub thm3: f64,
    pub thm4: f64,
    pub thm5: f64,
    pub thm6: f64,
    pub cor1a: f64,
    pub cor1b: f64,
    pub lemma4: f64,
    pub lemma5: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            thm1: 10.0,
            thm2: 50.0,
            thm3: 50.0,
            thm4: 50.0,
            thm5: 50.0,
            thm6: 50.0,
            cor1a: 50.0,
            cor1b: 10.0,
            lemma4: 50.0,
            lemma5: 50.0,
        }
    }
}

impl Thresholds {
    pub fn get(&self, id: TheoremId) -> f64 {
        match id {
            TheoremId::Thm1 => self.thm1,
            TheoremId::Thm2 => self.thm2,
            TheoremId::Thm3 => self.thm3,
            TheoremId::Thm4 => self.thm4,
            TheoremId::Thm5 => self.thm5,
            TheoremId::Thm6 => self.thm6,
            TheoremId::Cor1a => self.cor1a,
            TheoremId::Cor1b => self.cor1b,
            TheoremId::Lemma4 => self.lemma4,
            TheoremId::Lemma5 => self.lemma5,
        }
    }

    pub fn set(&mut self, id: TheoremId, value: f64) {
        match id {
            TheoremId::Thm1 => self.thm1 = value,
            TheoremId::Thm2 => self.thm2 = value,
            TheoremId::Thm3 => self.thm3 = value,
            TheoremId::Thm4 => self.thm4 = value,
            TheoremId::Thm5 => self.thm5 = value,
            TheoremId::Thm6 => self.thm6 = value,
            TheoremId::Cor1a => self.cor1a = value,
            TheoremId::Cor1b => self.cor1b = value,
            TheoremId::Lemma4 => self.lemma4 = value,
            TheoremId::Lemma5 => self.lemma5 = value,
        }
    }
}

/// One verified (statement, N, y) triple.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub n: u64,
    pub y: f64,
    pub delta: Option<f64>,
    pub lhs: f64,
    pub main_terms: Vec<(&'static str, f64)>,
    /// lhs − Σ main_terms, exactly as stored.
    pub residual: f64,
    /// The statement's error order evaluated at (N, y); always positive.
    pub normalizer: f64,
    /// residual/normalizer, except for the two-sided corollary check where
    /// it is max(r, 1/r) of the ratio r = T₀·y²/N.
    pub normalized_residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl TheoremReport {
    /// Compensated total of the predicted main terms.
    pub fn main_total(&self) -> f64 {
        KahanSum::sum_iter(self.main_terms.iter().map(|&(_, v)| v))
    }
}

fn check_range(id: TheoremId, n: u64, y: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::domain("N must be at least 1"));
    }
    let nf = n as f64;
    match id {
        TheoremId::Thm1 | TheoremId::Thm2 | TheoremId::Thm6 | TheoremId::Cor1a
        | TheoremId::Cor1b => {
            if !(y >= 1.0 && y * y <= nf) {
                return Err(Error::domain(format!(
                    "y must satisfy 1 <= y <= sqrt(N) for {}; got N = {n}, y = {y}",
                    id.as_str()
                )));
            }
        }
        TheoremId::Thm3 | TheoremId::Thm5 => {
            if !(y >= 1.0 && y <= nf) {
                return Err(Error::domain(format!(
                    "y must satisfy 1 <= y <= N for {}; got N = {n}, y = {y}",
                    id.as_str()
                )));
            }
        }
        TheoremId::Thm4 | TheoremId::Lemma4 | TheoremId::Lemma5 => {}
    }
    Ok(())
}

/// Distinct prime factors of `d` by trial division (d is a caller-supplied
/// modulus, small in practice).
fn distinct_primes(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= d {
        if d % p == 0 {
            out.push(p);
            while d % p == 0 {
                d /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Main terms of the weighted coprime-restricted sum Σ_{k≤x}(x−k)𝔊_d(k):
/// x² − ½·(d,2)φ(d)/d·x·(log x + γ − 1 + log 2π + Σ_{p|2d} log p/(p−1)).
pub fn lemma5_main_terms(x: f64, d: u64) -> Vec<(&'static str, f64)> {
    let primes = distinct_primes(d);
    let gcd2 = if d % 2 == 0 { 2.0 } else { 1.0 };
    let phi_over_d: f64 = primes.iter().map(|&p| 1.0 - 1.0 / p as f64).product();
    let mut log_sum = std::f64::consts::LN_2;
    for &p in &primes {
        if p > 2 {
            log_sum += (p as f64).ln() / (p as f64 - 1.0);
        }
    }
    vec![
        ("x^2", x * x),
        (
            "-(d,2)phi(d)/d * x(log x + gamma - 1 + log 2pi + sum_{p|2d} log p/(p-1))/2",
            -0.5 * gcd2 * phi_over_d * x * (x.ln() + EULER_GAMMA - 1.0 + LN_TWO_PI + log_sum),
        ),
    ]
}

/// Predicted main terms for one statement at (N, y), composed from the
/// bundle's constants. Range preconditions are enforced here.
pub fn predict(
    id: TheoremId,
    n: u64,
    y: f64,
    c: &ConstantsBundle,
    t: &ArithTables,
) -> Result<Vec<(&'static str, f64)>> {
    check_range(id, n, y)?;
    let nf = n as f64;
    let cube = nf * nf * nf / 3.0;
    let sq = nf * nf;
    match id {
        TheoremId::Thm1 => {
            let tail = moments::tail_t(y, t, c)?;
            Ok(vec![("T(y) N^3/3", tail * cube)])
        }
        TheoremId::Thm2 => {
            let tail = moments::tail_t(y, t, c)?;
            let l = (nf / (y * y)).ln();
            Ok(vec![
                ("T(y) N^3/3", tail * cube),
                ("-N^2 log^2(N/y^2)/4", -0.25 * sq * l * l),
                ("c N^2 log(N/y^2)", c.c_thm2 * sq * l),
            ])
        }
        TheoremId::Thm3 => Ok(vec![
            ("-N log(N/y)/2", -0.5 * nf * (nf / y).ln()),
            ("(1 - log 2pi + L1) N/2", 0.5 * (1.0 - LN_TWO_PI + c.l1) * nf),
        ]),
        TheoremId::Thm4 => {
            let coef = 0.75 - EULER_GAMMA - 0.5 * LN_TWO_PI - 0.5 * c.l2_all_primes();
            Ok(vec![
                ("prodCubed N^3/3", c.prod_cubed * cube),
                ("-N^2 log^2 N/4", -0.25 * sq * nf.ln() * nf.ln()),
                ("(3/4 - gamma - log 2pi/2 - L2'/2) N^2 log N", coef * sq * nf.ln()),
            ])
        }
        TheoremId::Thm5 => {
            let partial = moments::g_partial(y, 0.0, 3.0, t)?;
            let ly = y.ln();
            Ok(vec![
                ("G(y;0,3) N^3/3", partial * cube),
                ("-N^2 log N log y/2", -0.5 * sq * nf.ln() * ly),
                ("N^2 log^2 y/4", 0.25 * sq * ly * ly),
                ("-(gamma + L1) N^2 log N/2", -0.5 * (EULER_GAMMA + c.l1) * sq * nf.ln()),
                ("-(c1 + L3) N^2 log y/2", -0.5 * (c.c1 + c.l3) * sq * ly),
            ])
        }
        TheoremId::Thm6 => {
            let partial = moments::g_partial(y, 0.0, 3.0, t)?;
            let b = y.ln() + EULER_GAMMA + c.l1;
            Ok(vec![
                ("G(y;0,3) N^3/3", partial * cube),
                ("-(log y + gamma + L1)^2 N^2/2", -0.5 * b * b * sq),
            ])
        }
        TheoremId::Cor1a => Ok(vec![("N/y^2", nf / (y * y))]),
        TheoremId::Cor1b => {
            let tail = moments::tail_t(y, t, c)?;
            Ok(vec![("T(y) N", tail * nf)])
        }
        TheoremId::Lemma4 => {
            let x = nf;
            Ok(vec![
                ("x^2/2", 0.5 * x * x),
                ("-x log x/2", -0.5 * x * x.ln()),
                ("(1 - gamma - log 2pi) x/2", 0.5 * (1.0 - EULER_GAMMA - LN_TWO_PI) * x),
            ])
        }
        TheoremId::Lemma5 => Ok(lemma5_main_terms(nf, 1)),
    }
}

/// The statement's error order evaluated at (N, y, δ); the denominator of
/// the normalized residual.
fn normalizer(
    id: TheoremId,
    n: u64,
    y: f64,
    delta: f64,
    c: &ConstantsBundle,
    t: &ArithTables,
) -> Result<f64> {
    let nf = n as f64;
    let sq = nf * nf;
    Ok(match id {
        TheoremId::Thm1 => {
            let tail = moments::tail_t(y, t, c)?;
            tail * nf * nf * nf / 3.0 * (y * y / nf).powf(delta)
        }
        TheoremId::Thm2 => sq + sq * (2.0 * nf).ln() / y.sqrt(),
        TheoremId::Thm3 => nf / y.sqrt() + y,
        TheoremId::Thm4 => sq,
        TheoremId::Thm5 => {
            sq + nf.powf(1.5) * y.powf(0.5 + EPSILON_EXPONENT) + sq * (2.0 * nf).ln() / y.sqrt()
        }
        TheoremId::Thm6 => sq * y.ln() / y.sqrt() + nf * y * y,
        TheoremId::Cor1a => nf / (y * y),
        TheoremId::Cor1b => {
            let tail = moments::tail_t(y, t, c)?;
            tail * nf * (y * y / nf).powf(delta / 4.0)
        }
        TheoremId::Lemma4 => nf.powf(0.5 + EPSILON_EXPONENT),
        TheoremId::Lemma5 => nf.sqrt(),
    })
}

/// The exact left-hand side for one statement, from the moments module.
fn lhs_value(
    id: TheoremId,
    n: u64,
    table: &SeriesTable,
    c: &ConstantsBundle,
    t: &ArithTables,
) -> Result<f64> {
    Ok(match id {
        TheoremId::Thm1 | TheoremId::Thm2 => moments::weighted_tail_moment(2, table)?.value,
        TheoremId::Thm3 => moments::weighted_tail_average(table).value,
        TheoremId::Thm4 => moments::s1(table).value,
        TheoremId::Thm5 => moments::s2(table).value,
        TheoremId::Thm6 => moments::s3(table).value,
        TheoremId::Cor1a | TheoremId::Cor1b => moments::weighted_tail_moment(0, table)?.value,
        TheoremId::Lemma4 => moments::lemma4_sum(n as f64, table)?.value,
        TheoremId::Lemma5 => moments::lemma5_sum(n as f64, 1, t, c)?.value,
    })
}

/// Runs one statement at one (N, y), building the series table it needs.
pub fn report_for(
    id: TheoremId,
    n: u64,
    y: f64,
    delta: Option<f64>,
    thresholds: &Thresholds,
    c: &ConstantsBundle,
    t: &ArithTables,
    threads: usize,
) -> Result<TheoremReport> {
    check_range(id, n, y)?;
    let dlt = delta.unwrap_or(0.5);
    if !(dlt > 0.0 && dlt < 1.0) {
        return Err(Error::domain("delta must satisfy 0 < delta < 1"));
    }
    let main_terms = predict(id, n, y, c, t)?;
    let table = SeriesTable::build_with_threads(n, y, t, c, threads)?;
    let lhs = lhs_value(id, n, &table, c, t)?;
    let main_total = KahanSum::sum_iter(main_terms.iter().map(|&(_, v)| v));
    let residual = lhs - main_total;
    let norm = normalizer(id, n, y, dlt, c, t)?;
    let normalized_residual = if id == TheoremId::Cor1a {
        // two-sided ≍ check: max(r, 1/r) of the ratio against N/y^2
        let r = lhs / norm;
        r.max(1.0 / r)
    } else {
        residual / norm
    };
    let threshold = thresholds.get(id);
    Ok(TheoremReport {
        theorem: id,
        n,
        y,
        delta: delta.or(Some(dlt)).filter(|_| uses_delta(id)),
        lhs,
        main_terms,
        residual,
        normalizer: norm,
        normalized_residual,
        threshold,
        pass: normalized_residual.abs() <= threshold,
    })
}

fn uses_delta(id: TheoremId) -> bool {
    matches!(id, TheoremId::Thm1 | TheoremId::Cor1b)
}

/// Runs one statement over a grid of (N, y) pairs. Domain errors are
/// propagated per entry without aborting the sweep; the report list is in
/// grid order.
pub fn run_verification(
    id: TheoremId,
    grid: &[(u64, f64)],
    delta: Option<f64>,
    thresholds: &Thresholds,
    c: &ConstantsBundle,
    t: &ArithTables,
    threads: usize,
) -> Vec<Result<TheoremReport>> {
    grid.iter()
        .map(|&(n, y)| report_for(id, n, y, delta, thresholds, c, t, threads))
        .collect()
}

/// Rule for choosing the truncation level from N in a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YRule {
    Const(f64),
    SqrtN,
    /// y = N^theta.
    PowN(f64),
}

impl YRule {
    pub fn eval(&self, n: u64) -> f64 {
        match *self {
            YRule::Const(y) => y,
            YRule::SqrtN => (n as f64).sqrt(),
            YRule::PowN(theta) => (n as f64).powf(theta),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanPoint {
    pub n: u64,
    pub y: f64,
    pub residual: f64,
    pub normalizer: f64,
}

/// Result of a residual order scan: least-squares slope of log|residual|
/// against log N, next to the exponent implied by the statement's error
/// order under the same y-rule.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub theorem: TheoremId,
    pub points: Vec<ScanPoint>,
    /// Grid points whose residual was numerically zero, excluded from the fit.
    pub excluded: Vec<u64>,
    pub fitted_exponent: f64,
    pub theoretical_exponent: f64,
}

fn fit_log_slope(points: &[(f64, f64)]) -> Result<(f64, Vec<f64>)> {
    let mut excluded = Vec::new();
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, r)| {
            if r == 0.0 {
                excluded.push(x);
                false
            } else {
                true
            }
        })
        .copied()
        .collect();
    if usable.len() < 2 {
        return Err(Error::domain(
            "residual order scan needs at least 2 nonzero residuals to fit a slope",
        ));
    }
    let n = usable.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, r) in &usable {
        let lx = x.ln();
        let ly = r.abs().ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let det = n * sxx - sx * sx;
    if det <= 0.0 {
        return Err(Error::domain("degenerate scan grid: all N equal"));
    }
    Ok(((n * sxy - sx * sy) / det, excluded))
}

/// Scans a statement's residual over a geometric list of N with y chosen by
/// `y_rule`, and fits the growth exponent.
pub fn residual_order_scan(
    id: TheoremId,
    ns: &[u64],
    y_rule: YRule,
    delta: Option<f64>,
    c: &ConstantsBundle,
    t: &ArithTables,
    threads: usize,
) -> Result<ScanResult> {
    if ns.len() < 4 {
        return Err(Error::domain("residual order scan requires at least 4 grid points"));
    }
    let thresholds = Thresholds::default();
    let mut points = Vec::with_capacity(ns.len());
    for &n in ns {
        let y = y_rule.eval(n);
        let report = report_for(id, n, y, delta, &thresholds, c, t, threads)?;
        points.push(ScanPoint { n, y, residual: report.residual, normalizer: report.normalizer });
    }
    let fit_input: Vec<(f64, f64)> = points.iter().map(|p| (p.n as f64, p.residual)).collect();
    let (fitted, excluded_x) = fit_log_slope(&fit_input)?;
    let excluded: Vec<u64> = excluded_x.iter().map(|&x| x as u64).collect();
    let first = points.first().expect("nonempty");
    let last = points.last().expect("nonempty");
    let theoretical = if last.n == first.n {
        return Err(Error::domain("degenerate scan grid: all N equal"));
    } else {
        (last.normalizer / first.normalizer).ln() / (last.n as f64 / first.n as f64).ln()
    };
    Ok(ScanResult {
        theorem: id,
        points,
        excluded,
        fitted_exponent: fitted,
        theoretical_exponent: theoretical,
    })
}

fn fmt_pass(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// JSON array of reports, 17 significant digits, fixed field order.
pub fn write_reports_json<W: Write>(
    reports: &[TheoremReport],
    w: &mut W,
) -> std::io::Result<()> {
    let mut out = String::from("[");
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"theorem\":\"{}\",\"N\":{},\"y\":{:.16e},",
            r.theorem.as_str(),
            r.n,
            r.y
        ));
        if let Some(d) = r.delta {
            out.push_str(&format!("\"delta\":{d:.16e},"));
        }
        out.push_str(&format!("\"lhs\":{:.16e},\"mainTerms\":[", r.lhs));
        for (j, (label, value)) in r.main_terms.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("{{\"label\":\"{label}\",\"value\":{value:.16e}}}"));
        }
        out.push_str(&format!(
            "],\"residual\":{:.16e},\"normalizer\":{:.16e},\"normalizedResidual\":{:.16e},\"verdict\":\"{}\"}}",
            r.residual,
            r.normalizer,
            r.normalized_residual,
            fmt_pass(r.pass)
        ));
    }
    out.push_str("]\n");
    w.write_all(out.as_bytes())
}

/// CSV `theorem,N,y,lhs,main,residual,normalized,verdict`.
pub fn write_reports_csv<W: Write>(reports: &[TheoremReport], w: &mut W) -> std::io::Result<()> {
    writeln!(w, "theorem,N,y,lhs,main,residual,normalized,verdict")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.theorem.as_str(),
            r.n,
            r.y,
            r.lhs,
            r.main_total(),
            r.residual,
            r.normalized_residual,
            fmt_pass(r.pass)
        )?;
    }
    Ok(())
}

/// JSON object for a scan result.
pub fn write_scan_json<W: Write>(scan: &ScanResult, w: &mut W) -> std::io::Result<()> {
    let mut out = format!(
        "{{\"theorem\":\"{}\",\"fittedExponent\":{:.16e},\"theoreticalExponent\":{:.16e},\"excluded\":[",
        scan.theorem.as_str(),
        scan.fitted_exponent,
        scan.theoretical_exponent
    );
    for (i, n) in scan.excluded.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&n.to_string());
    }
    out.push_str("],\"points\":[");
    for (i, p) in scan.points.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"N\":{},\"y\":{:.16e},\"residual\":{:.16e},\"normalizer\":{:.16e}}}",
            p.n, p.y, p.residual, p.normalizer
        ));
    }
    out.push_str("]}\n");
    w.write_all(out.as_bytes())
}
