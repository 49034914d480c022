use std::fmt::Write as _;
use std::path::Path;

use hilbertforge::asymptotics::scan_power_series;
use hilbertforge::bigraded::strand_rank;
use hilbertforge::hilbert_poly::flattened_coefficient;
use hilbertforge::json::{betti_csv_rows, scan_csv_rows, BettiJson, HVectorJson, PolynomialJson, ScanJson, SeriesJson};
use hilbertforge::koszul::{
    betti_table_dense, betti_table_of, euler_check, scan_betti_tables, tor_bound_context, tor_scan,
};
use hilbertforge::monomial::monomial_count;
use hilbertforge::poly::{format_rational, rat_big};
use hilbertforge::*;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, Context, Format, IdealArgs, ScanArgs};

const ORACLE_DEGREES: u32 = 10;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Cap(String),
    /// Report is still printed.
    Unstable {
        output: String,
        message: String,
    },
    Check {
        output: Option<String>,
        message: String,
    },
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Cap(_) => 2,
            Failure::Unstable { .. } => 3,
            Failure::Check { .. } => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) => m,
            Failure::Unstable { message, .. } | Failure::Check { message, .. } => message,
        }
    }

    pub fn output(&self) -> Option<&str> {
        match self {
            Failure::Unstable { output, .. } => Some(output),
            Failure::Check { output, .. } => output.as_deref(),
            _ => None,
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure::Check {
            output: None,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Out = std::result::Result<String, Failure>;

fn read_ideal(args: &IdealArgs) -> std::result::Result<IdealSpec, Failure> {
    let text = match (&args.ideal, &args.input) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read_file(p)?,
        (None, None) => return Err(Failure::Input("need --ideal or --input".into())),
    };
    Ok(parse_ideal(&text)?)
}

fn read_file(p: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn to_csv<const N: usize>(header: [&str; N], rows: &[[String; N]]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn list(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn module_series(spec: &IdealSpec, of_ideal: bool) -> HilbertSeries {
    if of_ideal {
        hilbert_series_ideal(&spec.ideal)
    } else {
        hilbert_series_quotient(&spec.ideal)
    }
}

/// Compares series coefficients with monomial counts up to degree 10.
fn series_oracle(
    ideal: &MonomialIdeal,
    hs: &HilbertSeries,
    of_ideal: bool,
    limits: &Limits,
    label: &str,
) -> std::result::Result<(), Failure> {
    for t in 0..=ORACLE_DEGREES {
        let inside = count_ideal_monomials(ideal, t, limits)?;
        let expected = if of_ideal {
            BigInt::from(inside)
        } else {
            BigInt::from(monomial_count(ideal.ambient_n(), t)) - BigInt::from(inside)
        };
        let got = hs.coefficient(t as i64);
        if got != expected {
            return Err(Failure::check(format!(
                "oracle mismatch for {label} in degree {t}: series gives {got}, enumeration gives {expected}"
            )));
        }
    }
    Ok(())
}

pub fn run(cmd: &Command, ctx: &Context) -> Out {
    match cmd {
        Command::Hilbert { ideal, of_ideal } => hilbert(ctx, ideal, *of_ideal),
        Command::Coeffs { ideal, of_ideal, i } => coeffs(ctx, ideal, *of_ideal, *i),
        Command::Hvector { ideal, of_ideal } => hvector(ctx, ideal, *of_ideal),
        Command::Strand { n, m, p, a, b, k, j, i } => strand(ctx, *n, *m, p, *a, *b, *k, *j, *i),
        Command::ScanPower { ideal, scan } => scan_power(ctx, ideal, scan),
        Command::Betti { ideal, k, modular } => betti(ctx, ideal, *k, *modular),
        Command::ScanBetti {
            ideal,
            l,
            scan,
            modular,
        } => scan_betti_cmd(ctx, ideal, *l, scan, *modular),
        Command::FiberDim { ideal } => fiber_dim(ctx, ideal),
        Command::Verify { ideal, .. } => verify(ctx, ideal),
    }
}

fn hilbert(ctx: &Context, args: &IdealArgs, of_ideal: bool) -> Out {
    let spec = read_ideal(args)?;
    let hs = module_series(&spec, of_ideal);
    if ctx.oracle {
        series_oracle(&spec.ideal, &hs, of_ideal, &ctx.limits(), "the series")?;
    }
    Ok(match ctx.format {
        Format::Json => to_json(&SeriesJson::from(&hs)),
        Format::Csv => {
            let rows: Vec<[String; 2]> = hs
                .numerator()
                .iter()
                .enumerate()
                .map(|(idx, c)| [(hs.shift() + idx as i64).to_string(), c.to_string()])
                .collect();
            to_csv(["degree", "numerator"], &rows)
        }
        Format::Table => {
            let h = hs.h_vector();
            let mut s = String::new();
            writeln!(s, "module     {}", if of_ideal { "I" } else { "S/I" }).unwrap();
            writeln!(s, "n          {}", hs.ambient_n()).unwrap();
            writeln!(s, "shift      {}", hs.shift()).unwrap();
            writeln!(s, "numerator  {}", list(hs.numerator())).unwrap();
            writeln!(s, "dim        {}", hs.dimension()).unwrap();
            writeln!(s, "h-vector   {} (offset {})", list(&h.entries), h.offset).unwrap();
            writeln!(s, "e_0        {}", hs.multiplicity()).unwrap();
            s
        }
    })
}

fn coeffs(ctx: &Context, args: &IdealArgs, of_ideal: bool, i: u32) -> Out {
    let spec = read_ideal(args)?;
    let hs = module_series(&spec, of_ideal);
    let p = hilbert_polynomial(&hs, i);
    if ctx.oracle {
        series_oracle(&spec.ideal, &hs, of_ideal, &ctx.limits(), "the series")?;
        let extracted = extract_coefficients(&p);
        for (j, e) in p.coeffs_e.iter().enumerate() {
            if extracted[j] != *e {
                return Err(Failure::check(format!("difference route disagrees at j = {j}")));
            }
            if *e != rat_big(flattened_coefficient(&hs, j as u32)) {
                return Err(Failure::check(format!("h-vector route disagrees at j = {j}")));
            }
        }
    }
    Ok(match ctx.format {
        Format::Json => to_json(&PolynomialJson::from(&p)),
        Format::Csv => {
            let rows: Vec<[String; 2]> = p
                .coeffs_e
                .iter()
                .enumerate()
                .map(|(j, e)| [j.to_string(), format_rational(e)])
                .collect();
            to_csv(["j", "e"], &rows)
        }
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "d = {}, i = {}", p.dim_d, p.order_i).unwrap();
            writeln!(s, "P(k) = {}", p.to_qpoly()).unwrap();
            for (j, e) in p.coeffs_e.iter().enumerate() {
                writeln!(s, "e^{i}_{j} = {}", format_rational(e)).unwrap();
            }
            s
        }
    })
}

fn hvector(ctx: &Context, args: &IdealArgs, of_ideal: bool) -> Out {
    let spec = read_ideal(args)?;
    let hs = module_series(&spec, of_ideal);
    if ctx.oracle {
        series_oracle(&spec.ideal, &hs, of_ideal, &ctx.limits(), "the series")?;
    }
    let h = hs.h_vector();
    Ok(match ctx.format {
        Format::Json => to_json(&HVectorJson::from(&h)),
        Format::Csv => {
            let rows: Vec<[String; 2]> = h
                .entries
                .iter()
                .enumerate()
                .map(|(idx, c)| [(h.offset + idx as i64).to_string(), c.to_string()])
                .collect();
            to_csv(["degree", "h"], &rows)
        }
        Format::Table => {
            let e: Vec<BigInt> = (0..h.entries.len() as u32).map(|j| e_from_h(&h, j)).collect();
            format!(
                "offset {}\nh      {}\ne      {}\n",
                h.offset,
                list(&h.entries),
                list(&e)
            )
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn strand(ctx: &Context, n: usize, m: Option<usize>, p: &[u32], a: i64, b: i64, k: i64, j: u32, i: Option<u32>) -> Out {
    if let Some(m) = m {
        if m != p.len() {
            return Err(Failure::Input(format!(
                "--m {m} does not match {} weights in --p",
                p.len()
            )));
        }
    }
    let alg = BigradedAlgebra::new(n, p.to_vec())?;
    let shift = BigradedShift::new(a, b);
    ctx.limits().check(strand_rank(&alg, shift, k))?;
    let value = match i {
        Some(i) => strand_coefficient(&alg, shift, k, i, j),
        None => composition_sum(&alg, shift, k, j),
    };
    let bounds = strand_coefficient_bounds(&alg, shift, k, j).ok();
    if ctx.oracle {
        let i = i.unwrap_or_else(|| (j as i64 - n as i64 + 1).max(0) as u32);
        let hs = strand_hilbert_series(&alg, shift, k);
        let e = extract_coefficients(&hilbert_polynomial(&hs, i));
        let from_series = e.get(j as usize).cloned().unwrap_or_default();
        if from_series != rat_big(value.clone()) {
            return Err(Failure::check(format!(
                "composition sum {value} disagrees with the series route {}",
                format_rational(&from_series)
            )));
        }
    }
    let decomposition = strand_decomposition(&alg, shift, k);
    Ok(match ctx.format {
        Format::Json => {
            let (lower, upper) = match &bounds {
                Some((lo, hi)) => (json!(lo.to_string()), json!(hi.to_string())),
                None => (Value::Null, Value::Null),
            };
            to_json(&json!({
                "n": n, "p": p, "a": a, "b": b, "k": k, "i": i, "j": j,
                "value": value.to_string(),
                "lower": lower, "upper": upper,
                "decomposition": decomposition,
            }))
        }
        Format::Csv => {
            let (lo, hi) = bounds.map(|(l, h)| (l.to_string(), h.to_string())).unwrap_or_default();
            to_csv(
                ["k", "j", "value", "lower", "upper"],
                &[[k.to_string(), j.to_string(), value.to_string(), lo, hi]],
            )
        }
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "{value}").unwrap();
            if let Some((lo, hi)) = bounds {
                writeln!(s, "bounds     [{lo}, {hi}]").unwrap();
            }
            let summands: Vec<String> = decomposition
                .shifts
                .iter()
                .map(|(c, mult)| format!("S(-{c})^{mult}"))
                .collect();
            writeln!(
                s,
                "summands   {}",
                if summands.is_empty() {
                    "0".into()
                } else {
                    summands.join(" + ")
                }
            )
            .unwrap();
            s
        }
    })
}

fn scan_report(ctx: &Context, title: &str, scan: &ScanResult, fit: &FitOutcome) -> String {
    match ctx.format {
        Format::Json => to_json(&ScanJson::new(scan, fit)),
        Format::Csv => to_csv(["k", "e", "dim"], &scan_csv_rows(scan)),
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "{title}").unwrap();
            writeln!(s, "{:>4}  {:>16}  {:>4}", "k", "e", "dim").unwrap();
            for [k, e, d] in scan_csv_rows(scan) {
                writeln!(s, "{k:>4}  {e:>16}  {d:>4}").unwrap();
            }
            if let Some(t) = &scan.truncated {
                writeln!(s, "scan truncated: {t}").unwrap();
            }
            match fit {
                FitOutcome::Stable(f) => {
                    writeln!(
                        s,
                        "fit: {} (degree {}, from k = {}, {} confirming points)",
                        f.poly,
                        f.degree(),
                        f.stable_from,
                        f.confirmations
                    )
                    .unwrap();
                    for v in &f.verdicts {
                        let verdict = if v.pass { "pass" } else { "FAIL" };
                        writeln!(
                            s,
                            "  {:<10} bound {:>3}  degree {:>3}  {verdict}",
                            v.bound, v.value, v.deg
                        )
                        .unwrap();
                    }
                }
                FitOutcome::Unstable { window } => {
                    writeln!(s, "fit: unstable (window {window})").unwrap();
                }
            }
            s
        }
    }
}

/// A scan cut short by the cap cannot be fitted; report the cap.
fn ensure_fittable(scan: &ScanResult, window: usize) -> std::result::Result<(), Failure> {
    match &scan.truncated {
        Some(reason) if scan.values.len() < window + 2 => Err(Failure::Cap(format!(
            "scan stopped after {} values: {reason}",
            scan.values.len()
        ))),
        _ => Ok(()),
    }
}

fn finish_scan(output: String, fit: &FitOutcome, require_stable: bool) -> Out {
    if let Some(f) = fit.stable() {
        if let Some(v) = f.verdicts.iter().find(|v| !v.pass) {
            return Err(Failure::Check {
                output: Some(output),
                message: format!("degree bound {} violated: degree {} > {}", v.bound, v.deg, v.value),
            });
        }
    } else if require_stable {
        return Err(Failure::Unstable {
            output,
            message: "no stable polynomial fit".into(),
        });
    }
    Ok(output)
}

fn scan_power(ctx: &Context, args: &IdealArgs, scan: &ScanArgs) -> Out {
    let spec = read_ideal(args)?;
    let ideal = &spec.ideal;
    let limits = ctx.limits();
    let k_max = ctx.settings.k_max;
    if k_max < 3 {
        return Err(Failure::Input("--kmax must be at least 3".into()));
    }
    let series = scan_power_series(ideal, k_max, &limits)?;
    if ctx.oracle {
        for (idx, hs) in series.series.iter().enumerate() {
            let k = idx as u32 + 1;
            let power = ideal.power(k, &limits)?;
            series_oracle(&power, hs, true, &limits, &format!("I^{k}"))?;
        }
    }
    let result = series.coefficients(scan.i, scan.j);
    let ldim = detect_stabilization(&result, ctx.settings.window)
        .filter(|s| s.determined)
        .map(|s| s.value);
    ensure_fittable(&result, ctx.settings.window)?;
    let bounds = BoundContext::for_powers(ideal, scan.i, scan.j, ldim);
    let fit = fit_with_bounds(&result, ctx.settings.window, &bounds)?;
    let title = format!("e^{}_{}(I^k), window {}", scan.i, scan.j, ctx.settings.window);
    finish_scan(scan_report(ctx, &title, &result, &fit), &fit, scan.require_stable)
}

fn betti(ctx: &Context, args: &IdealArgs, k: u32, modular: bool) -> Out {
    let spec = read_ideal(args)?;
    let limits = ctx.limits();
    let opts = KoszulOptions {
        engine: ctx.engine(modular),
        extra_degrees: 0,
    };
    if k == 0 {
        return Err(Failure::Input("--k must be at least 1".into()));
    }
    let power = spec.ideal.power(k, &limits)?;
    let table = betti_table_of(&power, k, &opts, &limits)?;
    if ctx.oracle {
        let dense = betti_table_dense(&power, k, &opts, &limits)?;
        if dense != table {
            return Err(Failure::check("multidegree and dense Koszul routes disagree"));
        }
        let bad = euler_check(&spec.ideal, k, &table, &limits)?;
        if !bad.is_empty() {
            return Err(Failure::check(format!("Euler characteristic fails in degrees {bad:?}")));
        }
    }
    Ok(match ctx.format {
        Format::Json => to_json(&BettiJson::from(&table)),
        Format::Csv => to_csv(["l", "t", "beta"], &betti_csv_rows(&table)),
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "Betti numbers of I^{k}").unwrap();
            writeln!(s, "{:>3}  {:>4}  {:>8}", "l", "t", "beta").unwrap();
            for [l, t, b] in betti_csv_rows(&table) {
                writeln!(s, "{l:>3}  {t:>4}  {b:>8}").unwrap();
            }
            s
        }
    })
}

fn scan_betti_cmd(ctx: &Context, args: &IdealArgs, l: usize, scan: &ScanArgs, modular: bool) -> Out {
    let spec = read_ideal(args)?;
    let limits = ctx.limits();
    let opts = KoszulOptions {
        engine: ctx.engine(modular),
        extra_degrees: 0,
    };
    let (tables, truncated) = scan_betti_tables(&spec.ideal, ctx.settings.k_max, &opts, &limits)?;
    if ctx.oracle {
        for t in &tables {
            let bad = euler_check(&spec.ideal, t.k, t, &limits)?;
            if !bad.is_empty() {
                return Err(Failure::check(format!(
                    "Euler characteristic fails for k = {} in degrees {bad:?}",
                    t.k
                )));
            }
        }
    }
    let result = tor_scan(&tables, truncated, l, scan.i, scan.j);
    ensure_fittable(&result, ctx.settings.window)?;
    let fit = fit_with_bounds(
        &result,
        ctx.settings.window,
        &tor_bound_context(&spec.ideal, scan.i, scan.j),
    )?;
    let title = format!(
        "e^{}_{}(Tor_{l}(K, I^k)), window {}",
        scan.i, scan.j, ctx.settings.window
    );
    finish_scan(scan_report(ctx, &title, &result, &fit), &fit, scan.require_stable)
}

fn fiber_dim(ctx: &Context, args: &IdealArgs) -> Out {
    let spec = read_ideal(args)?;
    let d = fiber_dimension(&spec.ideal)?;
    Ok(match ctx.format {
        Format::Json => to_json(&json!({ "fiber_dim": d })),
        Format::Csv => to_csv(["fiber_dim"], &[[d.to_string()]]),
        Format::Table => format!("{d}\n"),
    })
}

struct CheckLine {
    name: String,
    pass: bool,
    detail: String,
}

fn verify(ctx: &Context, args: &IdealArgs) -> Out {
    let spec = read_ideal(args)?;
    let ideal = &spec.ideal;
    let limits = ctx.limits();
    let window = ctx.settings.window.max(1);
    let k_max = ctx.settings.k_max.max(window as u32 + 2);
    let mut checks = Vec::new();
    let mut record = |name: String, outcome: std::result::Result<String, String>| {
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(CheckLine { name, pass, detail });
    };

    let oracle = (1..=4u32).try_for_each(|k| {
        let power = ideal.power(k, &limits)?;
        series_oracle(&power, &hilbert_series_ideal(&power), true, &limits, &format!("I^{k}"))
    });
    record(
        "series vs enumeration".into(),
        oracle
            .map(|_| "k <= 4, t <= 10".into())
            .map_err(|f| f.message().to_string()),
    );

    let series = scan_power_series(ideal, k_max, &limits)?;
    for i in 0..=1u32 {
        for j in 0..=3u32 {
            let result = series.coefficients(i, j);
            let ldim = detect_stabilization(&result, window)
                .filter(|s| s.determined)
                .map(|s| s.value);
            let fit = fit_with_bounds(&result, window, &BoundContext::for_powers(ideal, i, j, ldim))?;
            let outcome = match fit.stable() {
                None => Err("unstable".to_string()),
                Some(f) if !f.all_pass() => Err(format!("verdicts {:?}", f.verdicts)),
                Some(f) => Ok(format!("degree {} from k = {}", f.degree(), f.stable_from)),
            };
            record(format!("e^{i}_{j}(I^k) bounds"), outcome);
        }
    }

    for k in 1..=3u32 {
        let opts = KoszulOptions::default();
        let outcome = (|| -> std::result::Result<String, Failure> {
            let table = betti_table(ideal, k, &opts, &limits)?;
            let bad = euler_check(ideal, k, &table, &limits)?;
            if !bad.is_empty() {
                return Err(Failure::check(format!("degrees {bad:?}")));
            }
            let power = ideal.power(k, &limits)?;
            if betti_table_dense(&power, k, &opts, &limits)? != table {
                return Err(Failure::check("dense route disagrees"));
            }
            Ok(format!("{} nonzero entries", table.entries.len()))
        })();
        record(
            format!("Betti table of I^{k}"),
            outcome.map_err(|f| f.message().to_string()),
        );
    }

    let failed = checks.iter().filter(|c| !c.pass).count();
    let output = match ctx.format {
        Format::Json => {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                .collect();
            to_json(&json!({ "checks": rows, "failed": failed }))
        }
        Format::Csv => {
            let rows: Vec<[String; 3]> = checks
                .iter()
                .map(|c| [c.name.clone(), c.pass.to_string(), c.detail.clone()])
                .collect();
            to_csv(["check", "pass", "detail"], &rows)
        }
        Format::Table => {
            let mut s = String::new();
            for c in &checks {
                writeln!(s, "{}  {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
            }
            s
        }
    };
    if failed > 0 {
        Err(Failure::Check {
            output: Some(output),
            message: format!("{failed} checks failed"),
        })
    } else {
        Ok(output)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let s = to_csv(["a", "b"], &[["1".to_string(), "x, y".to_string()]]);
        assert_eq!(s, "a,b\n1,\"x, y\"\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(Error::EnumerationCap { requested: 5, cap: 1 }).code(), 2);
        assert_eq!(Failure::from(Error::ZeroIdeal).code(), 1);
        assert_eq!(Failure::check("x").code(), 4);
    }
}
