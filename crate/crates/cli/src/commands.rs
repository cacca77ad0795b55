use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use syzkit::enumerative::{delta_series, enumerate_admissible, Conditions};
use syzkit::lattice::{classify, Fan2D, LatticeVec};
use syzkit::mirror::{
    inverse_mirror_map, mirror_map, verify_identity_with, IdentityReport, KahlerPoint,
    MirrorCoefficients,
};
use syzkit::par::*;
use syzkit::periods::{hk_period_check, period_report, CycleSpec, QuadratureParams};
use syzkit::MultiPoly;

use crate::args::{Format, Global};
use crate::output::{fmt_f64, Report, Table};

/// Bad flags or unparsable input; exit code 1.
#[derive(Debug)]
pub struct Usage(pub String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

pub type Outcome = Result<Report, Usage>;

/// Enum variant name of an error, for the "reason" field.
fn reason<E: std::fmt::Debug>(e: &E) -> String {
    format!("{e:?}")
        .chars()
        .take_while(|c| c.is_alphanumeric())
        .collect()
}

fn failure<E: std::fmt::Debug + std::fmt::Display>(
    command: &'static str,
    inputs: Value,
    err: E,
) -> Report {
    Report {
        command,
        inputs,
        results: json!({ "error": err.to_string(), "reason": reason(&err) }),
        pass: Some(false),
        table: {
            let mut t = Table::new(&["error", "reason"]);
            t.push(vec![err.to_string(), reason(&err)]);
            t
        },
        notes: Vec::new(),
    }
}

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, Usage> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("not a number: {x:?}")))
        })
        .collect()
}

pub fn parse_rays(s: &str) -> Result<Vec<LatticeVec>, Usage> {
    s.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            let parts: Vec<&str> = r.split(',').map(str::trim).collect();
            match parts.as_slice() {
                [x, y] => {
                    let x: i64 = x.parse().map_err(|_| usage(format!("bad ray {r:?}")))?;
                    let y: i64 = y.parse().map_err(|_| usage(format!("bad ray {r:?}")))?;
                    Ok(LatticeVec::new(x, y))
                }
                _ => Err(usage(format!("ray {r:?} is not of the form x,y"))),
            }
        })
        .collect()
}

fn complex_json(z: Complex64) -> Value {
    if z.im == 0.0 {
        json!(z.re)
    } else {
        json!([z.re, z.im])
    }
}

fn complex_list(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

fn complex_str(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_f64(z.re)
    } else {
        format!("{}{:+}i", fmt_f64(z.re), fmt_f64(z.im))
    }
}

fn grid(g: &Global) -> QuadratureParams {
    QuadratureParams {
        n_t: g.n_t,
        n_theta: g.n_theta,
        tolerance: g.tolerance,
    }
}

fn random_q(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (1..m).map(|_| rng.gen_range(0.1..0.9)).collect()
}

pub fn classify_cmd(rays: Option<String>, input: Option<std::path::PathBuf>) -> Outcome {
    let (fan, inputs) = match (rays, input) {
        (Some(r), _) => {
            let rays = parse_rays(&r)?;
            if rays.is_empty() {
                return Err(usage("no rays given"));
            }
            (Fan2D::from_rays(rays)?, json!({ "rays": r }))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)?;
            let fan: Fan2D = serde_json::from_str(&text)?;
            (fan, json!({ "input": path.display().to_string() }))
        }
        (None, None) => return Err(usage("pass --rays or --input")),
    };
    let c = match classify(&fan) {
        Ok(c) => c,
        Err(e) => return Ok(failure("classify", inputs, e)),
    };
    let mut table = Table::new(&["field", "value"]);
    table.push(vec!["m".into(), c.m.to_string()]);
    table.push(vec!["nu".into(), c.nu.to_string()]);
    table.push(vec![
        "transform".into(),
        serde_json::to_string(&c.transform)?,
    ]);
    Ok(Report {
        command: "classify",
        inputs,
        results: json!({
            "m": c.m,
            "nu": c.nu,
            "transform": c.transform,
            "fan": fan,
        }),
        pass: Some(true),
        table,
        notes: Vec::new(),
    })
}

pub fn invariants_cmd(m: usize, l: usize, max_degree: Option<i64>) -> Outcome {
    if m == 0 || l == 0 || l > m {
        return Err(usage(format!("need 1 <= l <= m, got m={m} l={l}")));
    }
    let keep = |deg: i64| max_degree.is_none_or(|d| deg <= d);
    let seqs: Vec<_> = enumerate_admissible(m, l)?
        .into_iter()
        .filter(|s| keep(s.s.iter().map(|&x| i64::from(x)).sum()))
        .collect();
    let full = delta_series(m, l)?;
    let mut delta = MultiPoly::zero(m - 1);
    for (e, c) in full.terms() {
        if keep(e.degree()) {
            delta.add_term(e.clone(), c);
        }
    }
    let mut results = json!({
        "m": m,
        "center": l,
        "sequences": seqs.iter().map(|s| s.s.clone()).collect::<Vec<_>>(),
        "count": seqs.len(),
        "delta": delta.to_string(),
        "delta_terms": delta,
    });
    let mut notes = vec![format!("delta_{l} = {delta}")];
    if l == m {
        let note = format!("delta_{m} is 0 by convention; the center-{m} class is the zero class");
        results["note"] = json!(note);
        notes.push(note);
    }
    let mut table = Table::new(&["s", "degree"]);
    for s in &seqs {
        let text = s.s.iter().map(i32::to_string).collect::<Vec<_>>().join(" ");
        table.push(vec![
            format!("({text})"),
            s.s.iter().sum::<i32>().to_string(),
        ]);
    }
    Ok(Report {
        command: "invariants",
        inputs: json!({ "m": m, "l": l, "max_degree": max_degree }),
        results,
        pass: None,
        table,
        notes,
    })
}

fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "m": r.m,
        "holds": r.holds(),
        "terms": r.terms,
        "mismatch": r.mismatch.as_ref().map(|mm| json!({
            "power": mm.power,
            "exponent": mm.exponent,
            "from_invariants": mm.from_invariants.to_string(),
            "from_product": mm.from_product.to_string(),
        })),
    })
}

fn run_verify(m_max: usize, rules: Conditions) -> Result<Vec<(IdentityReport, f64)>, Usage> {
    (1..=m_max)
        .map(|m| {
            let start = Instant::now();
            let r = verify_identity_with(m, rules)?;
            Ok((r, start.elapsed().as_secs_f64()))
        })
        .collect()
}

pub fn verify_cmd(m_max: usize, mutate: &str, format: Format) -> Outcome {
    if m_max == 0 {
        return Err(usage("--m-max must be at least 1"));
    }
    let rules = Conditions::from_str(mutate)?;
    let rows = run_verify(m_max, rules)?;
    let pass = rows.iter().all(|(r, _)| r.holds());
    let mut header = vec!["m", "holds", "terms", "first_mismatch"];
    if format == Format::Pretty {
        header.push("time");
    }
    let mut table = Table::new(&header);
    for (r, secs) in &rows {
        let mut row = vec![
            r.m.to_string(),
            r.holds().to_string(),
            r.terms.to_string(),
            r.mismatch
                .as_ref()
                .map_or(String::new(), |mm| mm.to_string()),
        ];
        if format == Format::Pretty {
            row.push(format!("{:.3} ms", secs * 1e3));
        }
        table.push(row);
    }
    Ok(Report {
        command: "verify",
        inputs: json!({ "m_max": m_max, "mutate": rules.to_string() }),
        results: json!({
            "mutation": rules.to_string(),
            "rows": rows.iter().map(|(r, _)| identity_json(r)).collect::<Vec<_>>(),
        }),
        pass: Some(pass),
        table,
        notes: Vec::new(),
    })
}

fn resolve_q(m: usize, q: Option<&str>, seed: u64) -> Result<Vec<f64>, Usage> {
    let q = match q {
        Some(s) => parse_list(s)?,
        None => random_q(&mut ChaCha8Rng::seed_from_u64(seed), m),
    };
    if q.len() + 1 != m {
        return Err(usage(format!(
            "--q needs m-1 = {} values, got {}",
            m.saturating_sub(1),
            q.len()
        )));
    }
    Ok(q)
}

pub fn periods_cmd(g: &Global, m: usize, q: Option<String>, l: Option<usize>) -> Outcome {
    if m < 2 {
        return Err(usage("periods need m >= 2"));
    }
    let params = grid(g);
    params.validate()?;
    let q = resolve_q(m, q.as_deref(), g.seed)?;
    let ls: Vec<usize> = match l {
        Some(l) if l == 0 || l >= m => return Err(usage(format!("need 1 <= l <= m-1, got {l}"))),
        Some(l) => vec![l],
        None => (1..m).collect(),
    };
    let inputs = json!({ "m": m, "q": q, "l": l, "grid": params, "seed": g.seed });

    let mut reports = Vec::new();
    for &l in &ls {
        let spec = match CycleSpec::new(&q, l) {
            Ok(s) => s,
            Err(e) => return Ok(failure("periods", inputs, e)),
        };
        match period_report(&spec, params) {
            Ok(r) => reports.push(r),
            Err(e) => return Ok(failure("periods", inputs, e)),
        }
    }
    let hk = if l.is_none() {
        match hk_period_check(&KahlerPoint::real(&q)?, params) {
            Ok(h) => Some(h),
            Err(e) => return Ok(failure("periods", inputs, e)),
        }
    } else {
        None
    };

    let mut table = Table::new(&["l", "period", "closed_form", "error", "pass"]);
    let mut rows = Vec::new();
    let mut pass = true;
    for r in &reports {
        let diff = (r.period[0] - r.closed_form[0]).hypot(r.period[1] - r.closed_form[1]);
        let ok = diff < params.tolerance;
        pass &= ok;
        table.push(vec![
            r.l.to_string(),
            fmt_f64(r.period[0]),
            fmt_f64(r.closed_form[0]),
            format!("{:.3e}", r.error),
            ok.to_string(),
        ]);
        let mut v = serde_json::to_value(r)?;
        v["pass"] = json!(ok);
        rows.push(v);
    }
    let mut notes = Vec::new();
    if let Some(h) = &hk {
        pass &= h.pass;
        notes.push(format!(
            "hyper-Kähler periods: max deviation {:.3e}",
            h.max_deviation
        ));
    }
    Ok(Report {
        command: "periods",
        inputs,
        results: json!({ "q": q, "periods": rows, "hk": hk }),
        pass: Some(pass),
        table,
        notes,
    })
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `q` as reals when the imaginary parts are round-off.
fn clean_q(q: &[Complex64]) -> Vec<Complex64> {
    q.iter()
        .map(|z| {
            if z.im.abs() <= 1e-12 * z.norm() {
                Complex64::new(z.re, 0.0)
            } else {
                *z
            }
        })
        .collect()
}

pub struct MirrorArgs {
    pub m: usize,
    pub q: Option<String>,
    pub coefficients: Option<String>,
    pub invert: bool,
    pub sweep: Option<String>,
}

pub fn mirror_map_cmd(g: &Global, a: MirrorArgs) -> Outcome {
    let m = a.m;
    if m == 0 {
        return Err(usage("m must be at least 1"));
    }
    if let Some(sweep) = &a.sweep {
        return sweep_cmd(m, a.q.as_deref(), sweep);
    }
    if a.invert {
        let c = parse_list(a.coefficients.as_deref().expect("clap requires --C"))?;
        if c.len() != m + 1 {
            return Err(usage(format!(
                "--C needs m+1 = {} values, got {}",
                m + 1,
                c.len()
            )));
        }
        let inputs = json!({ "m": m, "C": c, "invert": true });
        let coeffs = MirrorCoefficients::from_real(&c);
        let q = match inverse_mirror_map(&coeffs) {
            Ok(q) => q,
            Err(e) => return Ok(failure("mirror-map", inputs, e)),
        };
        let back = mirror_map(&q);
        let err = max_diff(&back.c, &coeffs.c);
        let q = clean_q(q.values());
        let mut table = Table::new(&["j", "q_j"]);
        for (j, z) in q.iter().enumerate() {
            table.push(vec![(j + 1).to_string(), complex_str(*z)]);
        }
        return Ok(Report {
            command: "mirror-map",
            inputs,
            results: json!({ "C": c, "q": complex_list(&q), "roundtrip_error": err }),
            pass: Some(err < g.tolerance),
            table,
            notes: Vec::new(),
        });
    }
    if a.coefficients.is_some() {
        return Err(usage("--C is only used with --invert"));
    }
    let q = resolve_q(
        m,
        Some(
            a.q.as_deref()
                .ok_or_else(|| usage("pass --q, --C --invert or --sweep"))?,
        ),
        0,
    )?;
    let inputs = json!({ "m": m, "q": q });
    let point = match KahlerPoint::real(&q) {
        Ok(p) => p,
        Err(e) => return Ok(failure("mirror-map", inputs, e)),
    };
    let c = mirror_map(&point);
    let (back, err) = match inverse_mirror_map(&c) {
        Ok(b) => {
            let rel = b
                .values()
                .iter()
                .zip(&q)
                .map(|(x, &y)| (x - Complex64::new(y, 0.0)).norm() / y)
                .fold(0.0, f64::max);
            (complex_list(&clean_q(b.values())), rel)
        }
        Err(e) => (json!(e.to_string()), f64::INFINITY),
    };
    let mut table = Table::new(&["i", "C_i"]);
    for (i, z) in c.c.iter().enumerate() {
        table.push(vec![i.to_string(), complex_str(*z)]);
    }
    Ok(Report {
        command: "mirror-map",
        inputs,
        results: json!({
            "q": q,
            "C": complex_list(&c.c),
            "roundtrip": { "q": back, "relative_error": err },
        }),
        pass: Some(err < 1e-10),
        table,
        notes: vec![format!("roundtrip relative error {err:.3e}")],
    })
}

fn sweep_cmd(m: usize, base: Option<&str>, sweep: &str) -> Outcome {
    let bad = || usage(format!("sweep must look like q1=0.1:0.9:9, got {sweep:?}"));
    let (name, range) = sweep.split_once('=').ok_or_else(bad)?;
    let j: usize = name
        .trim()
        .strip_prefix('q')
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    if j == 0 || j >= m {
        return Err(usage(format!("q{j} does not exist for m={m}")));
    }
    let parts: Vec<&str> = range.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let mut q = match base {
        Some(s) => resolve_q(m, Some(s), 0)?,
        None => vec![0.5; m - 1],
    };
    let values: Vec<f64> = (0..n)
        .map(|k| {
            if n == 1 {
                a
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            }
        })
        .collect();
    let inputs = json!({ "m": m, "q": q, "sweep": sweep });
    let points: Vec<Vec<f64>> = values
        .iter()
        .map(|&x| {
            q[j - 1] = x;
            q.clone()
        })
        .collect();
    let coeffs: Vec<Result<Vec<f64>, String>> = points
        .par_iter()
        .map(|p| {
            KahlerPoint::real(p)
                .map(|k| mirror_map(&k).c.iter().map(|z| z.re).collect())
                .map_err(|e| e.to_string())
        })
        .collect();
    let mut header = vec![format!("q{j}")];
    header.extend((0..=m).map(|i| format!("C{i}")));
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    let mut rows = Vec::new();
    for (x, c) in values.iter().zip(coeffs) {
        let c = match c {
            Ok(c) => c,
            Err(e) => return Ok(failure("mirror-map", inputs, e)),
        };
        let mut row = vec![fmt_f64(*x)];
        row.extend(c.iter().map(|v| fmt_f64(*v)));
        table.push(row);
        rows.push(json!({ "value": x, "C": c }));
    }
    Ok(Report {
        command: "mirror-map",
        inputs,
        results: json!({ "parameter": format!("q{j}"), "rows": rows }),
        pass: None,
        table,
        notes: Vec::new(),
    })
}

pub fn check_all_cmd(g: &Global, m_max: usize) -> Outcome {
    if m_max == 0 {
        return Err(usage("--m-max must be at least 1"));
    }
    let params = grid(g);
    params.validate()?;
    let mut table = Table::new(&["stage", "m", "value", "pass"]);
    let mut pass = true;

    let verify = run_verify(m_max, Conditions::ALL)?;
    for (r, _) in &verify {
        pass &= r.holds();
        table.push(vec![
            "verify".into(),
            r.m.to_string(),
            format!("{} terms", r.terms),
            r.holds().to_string(),
        ]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut period_rows = Vec::new();
    let mut map_rows = Vec::new();
    for m in 2..=m_max {
        let q = random_q(&mut rng, m);
        let point = KahlerPoint::real(&q)?;

        let mut worst = 0.0f64;
        for l in 1..m {
            let spec = CycleSpec::new(&q, l)?;
            match period_report(&spec, params) {
                Ok(r) => worst = worst.max((r.period[0] - r.closed_form[0]).hypot(r.period[1])),
                Err(_) => worst = f64::INFINITY,
            }
        }
        let hk = hk_period_check(&point, params)
            .map(|h| h.max_deviation)
            .unwrap_or(f64::INFINITY);
        let ok = worst < params.tolerance && hk <= params.tolerance;
        pass &= ok;
        table.push(vec![
            "periods".into(),
            m.to_string(),
            format!("{worst:.3e} / hk {hk:.3e}"),
            ok.to_string(),
        ]);
        period_rows
            .push(json!({ "m": m, "q": q, "max_error": worst, "hk_deviation": hk, "pass": ok }));

        let c = mirror_map(&point);
        let rel = inverse_mirror_map(&c)
            .map(|b| {
                b.values()
                    .iter()
                    .zip(&q)
                    .map(|(x, &y)| (x - Complex64::new(y, 0.0)).norm() / y)
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::INFINITY);
        let ok = rel < 1e-10;
        pass &= ok;
        table.push(vec![
            "mirror-map".into(),
            m.to_string(),
            format!("{rel:.3e}"),
            ok.to_string(),
        ]);
        map_rows.push(json!({ "m": m, "q": q, "roundtrip_error": rel, "pass": ok }));
    }

    Ok(Report {
        command: "check-all",
        inputs: json!({ "m_max": m_max, "seed": g.seed, "grid": params }),
        results: json!({
            "verify": verify.iter().map(|(r, _)| identity_json(r)).collect::<Vec<_>>(),
            "periods": period_rows,
            "mirror_map": map_rows,
        }),
        pass: Some(pass),
        table,
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_parsing() {
        let r = parse_rays("0,1; 1,1;2,1").unwrap();
        assert_eq!(
            r,
            vec![
                LatticeVec::new(0, 1),
                LatticeVec::new(1, 1),
                LatticeVec::new(2, 1)
            ]
        );
        assert!(parse_rays("0,1;1").is_err());
        assert!(parse_rays("a,b").is_err());
        assert!(parse_rays("").unwrap().is_empty());
    }

    #[test]
    fn reasons_are_variant_names() {
        assert_eq!(
            reason(&syzkit::lattice::FanError::NotCalabiYau),
            "NotCalabiYau"
        );
    }
}
