//! The finite weighted sums read off the series tables: tail moments T_m,
//! the signed tail average, the decomposition pieces S₁/S₂/S₃, the partial
//! sums of Lemmas 1–5, the tail constant 𝒯(y), and the prime-pair
//! demonstrator ψ₂(N,k).
//!
//! Every sum accumulates in ascending index order with Neumaier
//! compensation; the result carries an a-posteriori summation-error bound
//! and the number of nonzero-weight terms visited. The sawtooth identities
//! of Lemma 1 are checked in double-double arithmetic, where "exact" means
//! ~1e-20 at desk magnitudes.

use crate::arith::{gcd, ArithTables};
use crate::constants::ConstantsBundle;
use crate::error::{Error, Result};
use crate::singular::{gd_series, SeriesTable};
use crate::sum::{two_sum, Dd, KahanSum};
use std::io::Write;

/// Which sum a [`MomentResult`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    T0,
    T1,
    T2,
    TailAvg,
    S1,
    S2,
    S3,
    Lemma4,
    Lemma5,
    Hildebrand,
    Gpartial,
    Psi2,
}

impl MomentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MomentKind::T0 => "T0",
            MomentKind::T1 => "T1",
            MomentKind::T2 => "T2",
            MomentKind::TailAvg => "TailAvg",
            MomentKind::S1 => "S1",
            MomentKind::S2 => "S2",
            MomentKind::S3 => "S3",
            MomentKind::Lemma4 => "Lemma4",
            MomentKind::Lemma5 => "Lemma5",
            MomentKind::Hildebrand => "Hildebrand",
            MomentKind::Gpartial => "Gpartial",
            MomentKind::Psi2 => "Psi2",
        }
    }

    pub fn parse(s: &str) -> Result<MomentKind> {
        match s.to_ascii_lowercase().as_str() {
            "t0" => Ok(MomentKind::T0),
            "t1" => Ok(MomentKind::T1),
            "t2" => Ok(MomentKind::T2),
            "tailavg" => Ok(MomentKind::TailAvg),
            "s1" => Ok(MomentKind::S1),
            "s2" => Ok(MomentKind::S2),
            "s3" => Ok(MomentKind::S3),
            "lemma4" => Ok(MomentKind::Lemma4),
            "lemma5" => Ok(MomentKind::Lemma5),
            "hildebrand" => Ok(MomentKind::Hildebrand),
            "gpartial" => Ok(MomentKind::Gpartial),
            "psi2" => Ok(MomentKind::Psi2),
            other => Err(Error::domain(format!("unknown moment kind '{other}'"))),
        }
    }
}

/// Parameters a moment was computed with; only the applicable ones are set.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MomentParams {
    pub n: Option<u64>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub m: Option<u32>,
    pub d: Option<u64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub k: Option<u64>,
}

/// A computed sum with its parameters, compensated-summation error bound,
/// and visited-term count.
#[derive(Debug, Clone, Copy)]
pub struct MomentResult {
    pub kind: MomentKind,
    pub params: MomentParams,
    pub value: f64,
    pub sum_error_bound: f64,
    pub term_count: u64,
}

impl MomentResult {
    fn from_kahan(kind: MomentKind, params: MomentParams, sum: &KahanSum) -> MomentResult {
        MomentResult {
            kind,
            params,
            value: sum.value(),
            sum_error_bound: sum.error_bound(),
            term_count: sum.count(),
        }
    }

    /// True when the summation-error bound exceeds 1e-10·|value|; desk-scale
    /// runs are expected to stay unflagged.
    pub fn flagged(&self) -> bool {
        self.sum_error_bound > 1e-10 * self.value.abs()
    }
}

/// Weighted tail moment T_m = Σ_{k≤N} (N−k)^m · tail(k)², m ∈ {0, 1, 2}.
pub fn weighted_tail_moment(m: u32, table: &SeriesTable) -> Result<MomentResult> {
    if m > 2 {
        return Err(Error::domain("tail moment exponent m must be 0, 1 or 2"));
    }
    let n = table.n();
    let nf = n as f64;
    let mut sum = KahanSum::new();
    let tail = table.tail_slice();
    for k in 1..=n as usize {
        let w = match m {
            0 => 1.0,
            1 => nf - k as f64,
            _ => {
                let d = nf - k as f64;
                d * d
            }
        };
        if w != 0.0 {
            let t = tail[k];
            sum.add(w * t * t);
        }
    }
    let kind = match m {
        0 => MomentKind::T0,
        1 => MomentKind::T1,
        _ => MomentKind::T2,
    };
    let params = MomentParams {
        n: Some(n),
        y: Some(table.y()),
        m: Some(m),
        ..MomentParams::default()
    };
    Ok(MomentResult::from_kahan(kind, params, &sum))
}

/// Signed tail average Σ_{k≤N} (N−k) · tail(k).
pub fn weighted_tail_average(table: &SeriesTable) -> MomentResult {
    let n = table.n();
    let nf = n as f64;
    let mut sum = KahanSum::new();
    let tail = table.tail_slice();
    for k in 1..=n as usize {
        let w = nf - k as f64;
        if w != 0.0 {
            sum.add(w * tail[k]);
        }
    }
    let params = MomentParams {
        n: Some(n),
        y: Some(table.y()),
        ..MomentParams::default()
    };
    MomentResult::from_kahan(MomentKind::TailAvg, params, &sum)
}

fn weighted_square_sum(
    kind: MomentKind,
    table: &SeriesTable,
    f: impl Fn(usize) -> f64,
) -> MomentResult {
    let n = table.n();
    let nf = n as f64;
    let mut sum = KahanSum::new();
    for k in 1..=n as usize {
        let d = nf - k as f64;
        let w = d * d;
        if w != 0.0 {
            sum.add(w * f(k));
        }
    }
    let params = MomentParams {
        n: Some(n),
        y: Some(table.y()),
        ..MomentParams::default()
    };
    MomentResult::from_kahan(kind, params, &sum)
}

/// S₁ = Σ (N−k)² 𝔖(k)².
pub fn s1(table: &SeriesTable) -> MomentResult {
    let s = table.s_slice();
    weighted_square_sum(MomentKind::S1, table, |k| s[k] * s[k])
}

/// S₂ = Σ (N−k)² 𝔖(k) 𝔖_y(k).
pub fn s2(table: &SeriesTable) -> MomentResult {
    let s = table.s_slice();
    let sy = table.sy_slice();
    weighted_square_sum(MomentKind::S2, table, |k| s[k] * sy[k])
}

/// S₃ = Σ (N−k)² 𝔖_y(k)².
pub fn s3(table: &SeriesTable) -> MomentResult {
    let sy = table.sy_slice();
    weighted_square_sum(MomentKind::S3, table, |k| sy[k] * sy[k])
}

/// Direct double-double evaluation of Σ_{1≤k≤x}(x−k) and Σ_{1≤k≤x}(x−k)²;
/// terms are formed error-free via `two_sum`.
pub fn lemma1_direct(x: f64) -> (Dd, Dd) {
    let mut linear = Dd::ZERO;
    let mut quadratic = Dd::ZERO;
    if x >= 1.0 {
        for k in 1..=x.floor() as u64 {
            let (hi, lo) = two_sum(x, -(k as f64));
            let term = Dd { hi, lo };
            linear = linear.add(term);
            quadratic = quadratic.add(term.mul(term));
        }
    }
    (linear, quadratic)
}

/// Closed sawtooth forms of the same two sums, in double-double:
/// ½((x−½)² − s(x)²) and ⅓(x−½)³ − ∫_{1/2}^x s(u)² du, with the integral in
/// piecewise closed form (each full period contributes 1/12).
pub fn lemma1_closed(x: f64) -> (Dd, Dd) {
    let (hi, lo) = two_sum(x, -0.5);
    let xm = Dd { hi, lo };
    let fl = x.floor();
    let s = (x - fl) - 0.5; // exact: both subtractions are in-grid
    let s_sq = Dd::sqr_f64(s);
    let linear = xm.mul(xm).sub(s_sq).mul_f64(0.5);

    let third = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
    let cube_term = xm.mul(xm).mul(xm).mul(third);
    let integral = if x < 1.0 {
        // single partial cell starting at 1/2: (x−½)³/3
        xm.mul(xm).mul(xm).mul(third)
    } else {
        // 1/24 up to u = 1, then full periods, then the partial cell
        let full_periods = Dd::from_f64(fl - 1.0).div(Dd::from_f64(12.0));
        let s_cube = s_sq.mul_f64(s);
        let cell = s_cube.add_f64(0.125).mul(third);
        Dd::from_f64(1.0)
            .div(Dd::from_f64(24.0))
            .add(full_periods)
            .add(cell)
    };
    let quadratic = cube_term.sub(integral);
    (linear, quadratic)
}

/// Σ_{1≤k≤x}(x−k) and Σ_{1≤k≤x}(x−k)², each computed directly and verified
/// against its closed sawtooth form to 1e-12 absolute before returning.
pub fn lemma1_sums(x: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0) {
        return Err(Error::domain("lemma1_sums requires x >= 0"));
    }
    let (lin_d, quad_d) = lemma1_direct(x);
    let (lin_c, quad_c) = lemma1_closed(x);
    let dl = lin_d.sub(lin_c).abs().to_f64();
    let dq = quad_d.sub(quad_c).abs().to_f64();
    assert!(
        dl <= 1e-12 && dq <= 1e-12,
        "sawtooth closed forms disagree with direct summation at x = {x}: {dl:.3e}, {dq:.3e}"
    );
    Ok((lin_d.to_f64(), quad_d.to_f64()))
}

fn float_pow(base: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        base
    } else if e == 2.0 {
        base * base
    } else if e == 3.0 {
        base * base * base
    } else {
        base.powf(e)
    }
}

fn g_partial_result(x: f64, a: f64, b: f64, t: &ArithTables) -> Result<MomentResult> {
    let params = MomentParams {
        x: Some(x),
        a: Some(a),
        b: Some(b),
        ..MomentParams::default()
    };
    let mut sum = KahanSum::new();
    if x >= 1.0 {
        let r_max = x.floor() as u64;
        if r_max > t.limit() {
            return Err(Error::OutOfRange { value: r_max, limit: t.limit() });
        }
        for r in 1..=r_max {
            if !t.is_squarefree(r) {
                continue;
            }
            sum.add(float_pow(r as f64, a) / float_pow(t.phi(r) as f64, b));
        }
    }
    Ok(MomentResult::from_kahan(MomentKind::Gpartial, params, &sum))
}

/// G(x;a,b) = Σ_{r≤x} μ(r)² rᵃ/φ(r)ᵇ, exact partial sum over squarefree r.
pub fn g_partial(x: f64, a: f64, b: f64, t: &ArithTables) -> Result<f64> {
    Ok(g_partial_result(x, a, b, t)?.value)
}

/// 𝒯(y) = Σ_{q>y} μ(q)²/φ(q)³, via the Euler factorization of the full sum:
/// ∏_p(1 + 1/(p−1)³) minus the partial sum G(y;0,3).
pub fn tail_t(y: f64, t: &ArithTables, c: &ConstantsBundle) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::domain("tail_t requires y >= 0"));
    }
    Ok(c.prod_cubed - g_partial(y, 0.0, 3.0, t)?)
}

/// Σ_{k≤x}(x−k) 𝔖(k) from the table's 𝔖 column.
pub fn lemma4_sum(x: f64, table: &SeriesTable) -> Result<MomentResult> {
    if !(x >= 0.0) {
        return Err(Error::domain("lemma4_sum requires x >= 0"));
    }
    let k_max = x.floor() as u64;
    if k_max > table.n() {
        return Err(Error::OutOfRange { value: k_max, limit: table.n() });
    }
    let s = table.s_slice();
    let mut sum = KahanSum::new();
    for k in 1..=k_max as usize {
        let w = x - k as f64;
        if w != 0.0 {
            sum.add(w * s[k]);
        }
    }
    let params = MomentParams { x: Some(x), ..MomentParams::default() };
    Ok(MomentResult::from_kahan(MomentKind::Lemma4, params, &sum))
}

/// Σ_{k≤x}(x−k) 𝔊_d(k), with C(d) taken from the bundle's cutoff.
pub fn lemma5_sum(x: f64, d: u64, t: &ArithTables, c: &ConstantsBundle) -> Result<MomentResult> {
    if !(x >= 0.0) {
        return Err(Error::domain("lemma5_sum requires x >= 0"));
    }
    let k_max = x.floor() as u64;
    if k_max > t.limit() {
        return Err(Error::OutOfRange { value: k_max, limit: t.limit() });
    }
    let c_d = c.c_d(d)?;
    let mut sum = KahanSum::new();
    for k in 1..=k_max {
        let w = x - k as f64;
        if w != 0.0 {
            sum.add(w * gd_series(d, k, t, c_d)?);
        }
    }
    let params = MomentParams { x: Some(x), d: Some(d), ..MomentParams::default() };
    Ok(MomentResult::from_kahan(MomentKind::Lemma5, params, &sum))
}

fn hildebrand_result(x: f64, d: u64, t: &ArithTables) -> Result<MomentResult> {
    if d < 1 {
        return Err(Error::domain("hildebrand_sum requires d >= 1"));
    }
    let params = MomentParams { x: Some(x), d: Some(d), ..MomentParams::default() };
    let mut sum = KahanSum::new();
    if x >= 1.0 {
        let q_max = x.floor() as u64;
        if q_max > t.limit() {
            return Err(Error::OutOfRange { value: q_max, limit: t.limit() });
        }
        for q in 1..=q_max {
            if t.is_squarefree(q) && gcd(q, d) == 1 {
                sum.add(1.0 / t.phi(q) as f64);
            }
        }
    }
    Ok(MomentResult::from_kahan(MomentKind::Hildebrand, params, &sum))
}

/// Σ_{q≤x, (q,d)=1} μ²(q)/φ(q), the partial sum of Hildebrand's lemma.
pub fn hildebrand_sum(x: f64, d: u64, t: &ArithTables) -> Result<f64> {
    Ok(hildebrand_result(x, d, t)?.value)
}

fn psi2_result(n: u64, k: u64, t: &ArithTables) -> Result<MomentResult> {
    if n < 1 || k < 1 {
        return Err(Error::domain("psi2 requires N >= 1 and k >= 1"));
    }
    if n > t.limit() {
        return Err(Error::OutOfRange { value: n, limit: t.limit() });
    }
    let params = MomentParams { n: Some(n), k: Some(k), ..MomentParams::default() };
    let mut sum = KahanSum::new();
    if k < n {
        for m in 1..=(n - k) {
            let v1 = t.von_mangoldt(m);
            if v1 == 0.0 {
                continue;
            }
            let v2 = t.von_mangoldt(m + k);
            if v2 != 0.0 {
                sum.add(v1 * v2);
            }
        }
    }
    Ok(MomentResult::from_kahan(MomentKind::Psi2, params, &sum))
}

/// ψ₂(N,k) = Σ_{n≤N−k} Λ(n)Λ(n+k), with Λ read off the spf table.
pub fn psi2(n: u64, k: u64, t: &ArithTables) -> Result<f64> {
    Ok(psi2_result(n, k, t)?.value)
}

/// Computes one moment by kind; table-backed kinds require `table`.
pub fn compute(
    kind: MomentKind,
    params: &MomentParams,
    t: &ArithTables,
    c: &ConstantsBundle,
    table: Option<&SeriesTable>,
) -> Result<MomentResult> {
    let need_table = || {
        table.ok_or_else(|| {
            Error::domain(format!("moment kind {} requires a series table (N, y)", kind.as_str()))
        })
    };
    match kind {
        MomentKind::T0 => weighted_tail_moment(0, need_table()?),
        MomentKind::T1 => weighted_tail_moment(1, need_table()?),
        MomentKind::T2 => weighted_tail_moment(2, need_table()?),
        MomentKind::TailAvg => Ok(weighted_tail_average(need_table()?)),
        MomentKind::S1 => Ok(s1(need_table()?)),
        MomentKind::S2 => Ok(s2(need_table()?)),
        MomentKind::S3 => Ok(s3(need_table()?)),
        MomentKind::Lemma4 => {
            let table = need_table()?;
            let x = params.x.unwrap_or(table.n() as f64);
            lemma4_sum(x, table)
        }
        MomentKind::Lemma5 => {
            let x = params
                .x
                .or(params.n.map(|n| n as f64))
                .ok_or_else(|| Error::domain("Lemma5 requires x"))?;
            lemma5_sum(x, params.d.unwrap_or(1), t, c)
        }
        MomentKind::Hildebrand => {
            let x = params
                .x
                .or(params.n.map(|n| n as f64))
                .ok_or_else(|| Error::domain("Hildebrand requires x"))?;
            hildebrand_result(x, params.d.unwrap_or(1), t)
        }
        MomentKind::Gpartial => {
            let x = params
                .x
                .or(params.n.map(|n| n as f64))
                .ok_or_else(|| Error::domain("Gpartial requires x"))?;
            g_partial_result(x, params.a.unwrap_or(0.0), params.b.unwrap_or(0.0), t)
        }
        MomentKind::Psi2 => {
            let n = params.n.ok_or_else(|| Error::domain("Psi2 requires N"))?;
            let k = params.k.ok_or_else(|| Error::domain("Psi2 requires k"))?;
            psi2_result(n, k, t)
        }
    }
}

fn push_json_params(out: &mut String, p: &MomentParams) {
    let mut first = true;
    let mut field = |name: &str, text: String, out: &mut String| {
        if !first {
            out.push(',');
        }
        first = false;
        out.push('"');
        out.push_str(name);
        out.push_str("\":");
        out.push_str(&text);
    };
    out.push('{');
    if let Some(n) = p.n {
        field("N", n.to_string(), out);
    }
    if let Some(x) = p.x {
        field("x", format!("{x:.16e}"), out);
    }
    if let Some(y) = p.y {
        field("y", format!("{y:.16e}"), out);
    }
    if let Some(m) = p.m {
        field("m", m.to_string(), out);
    }
    if let Some(d) = p.d {
        field("d", d.to_string(), out);
    }
    if let Some(a) = p.a {
        field("a", format!("{a:.16e}"), out);
    }
    if let Some(b) = p.b {
        field("b", format!("{b:.16e}"), out);
    }
    if let Some(k) = p.k {
        field("k", k.to_string(), out);
    }
    out.push('}');
}

/// JSON array of moment results, 17 significant digits, fixed field order.
pub fn write_json<W: Write>(results: &[MomentResult], w: &mut W) -> std::io::Result<()> {
    let mut out = String::from("[");
    for (i, r) in results.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("{{\"kind\":\"{}\",\"params\":", r.kind.as_str()));
        push_json_params(&mut out, &r.params);
        out.push_str(&format!(
            ",\"value\":{:.16e},\"sumErrorBound\":{:.16e},\"termCount\":{}}}",
            r.value, r.sum_error_bound, r.term_count
        ));
    }
    out.push_str("]\n");
    w.write_all(out.as_bytes())
}

/// CSV grid `N,y,kind,value`; `N` falls back to ⌊x⌋ for the x-parameterized
/// sums and `y` is left empty when not applicable.
pub fn write_csv_grid<W: Write>(results: &[MomentResult], w: &mut W) -> std::io::Result<()> {
    writeln!(w, "N,y,kind,value")?;
    for r in results {
        let n_col = match (r.params.n, r.params.x) {
            (Some(n), _) => n.to_string(),
            (None, Some(x)) => format!("{}", x.floor() as u64),
            (None, None) => String::new(),
        };
        let y_col = r.params.y.map(|y| format!("{y:.16e}")).unwrap_or_default();
        writeln!(w, "{},{},{},{:.16e}", n_col, y_col, r.kind.as_str(), r.value)?;
    }
    Ok(())
}
