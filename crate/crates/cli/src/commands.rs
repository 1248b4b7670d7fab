use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use eqku_core::chars::Character;
use eqku_core::charts::{isomorphism_sweep, smoothness_evidence};
use eqku_core::cohomology::{
    cohomology_Pn, cohomology_hypersurface, GradedCharMultiset, HypersurfaceSpec, WeightedProjSpace,
};
use eqku_core::pushforward::divisor_table;
use eqku_core::sod::{
    render_trace, run_main_theorem_trace_with, CertificateRecord, ExtOracle, ExtProfile,
    RewriteEngine, SodTerm, StandardOracle,
};
use serde_json::json;

use crate::config::{Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit status 2.
    Usage(String),
    /// A computation or check failed; exit status 1.
    Failed(String),
}

pub struct Report {
    pub output: String,
    pub ok: bool,
}

impl Report {
    fn ok(output: String) -> Self {
        Self { output, ok: true }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn json_line(out: &mut String, v: serde_json::Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn write_file(cfg: &RunConfig, path: &Path, contents: &str) -> Result<(), CliError> {
    let path = cfg.resolve_output(path);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| failed(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(&path, contents).map_err(|e| failed(format!("{}: {e}", path.display())))
}

pub fn table(cfg: &RunConfig, emit: Option<&Path>) -> Result<Report, CliError> {
    let t = divisor_table().map_err(failed)?;
    let mut records = String::new();
    for r in t.records() {
        let mut v = serde_json::to_value(r).map_err(failed)?;
        v["record"] = json!("divisor");
        json_line(&mut records, v);
    }
    if let Some(path) = emit {
        write_file(cfg, path, &records)?;
    }
    Ok(Report::ok(match cfg.format {
        Format::Text => t.render_text(),
        Format::Json => records,
    }))
}

fn parse_space(space: &str) -> Result<usize, CliError> {
    space
        .strip_prefix(['p', 'P'])
        .and_then(|n| n.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .ok_or_else(|| CliError::Usage(format!("--space expects pN with N ≥ 1, got {space:?}")))
}

fn graded_json(h: &GradedCharMultiset) -> serde_json::Value {
    let degrees: Vec<_> = h
        .iter()
        .map(|(d, v)| {
            json!({
                "degree": d,
                "dim": v.total_dim(),
                "multiplicities": v.multiplicities(),
            })
        })
        .collect();
    json!(degrees)
}

pub fn cohomology(
    cfg: &RunConfig,
    space: &str,
    weights: &[u32],
    degree: i64,
    hypersurface: Option<&str>,
    order: u32,
) -> Result<Report, CliError> {
    let n = parse_space(space)?;
    if weights.len() != n + 1 {
        return Err(CliError::Usage(format!(
            "P{n} needs {} weights, got {}",
            n + 1,
            weights.len()
        )));
    }
    let usage = |e: &dyn std::fmt::Display| CliError::Usage(e.to_string());
    let p = WeightedProjSpace::from_values(weights, order).map_err(|e| usage(&e))?;
    let (h, hyper) = match hypersurface {
        None => (cohomology_Pn(&p, degree), serde_json::Value::Null),
        Some(spec) => {
            let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
            let [e, j] = parts.as_slice() else {
                return Err(CliError::Usage(format!(
                    "--hypersurface expects e,j, got {spec:?}"
                )));
            };
            let e: u32 = e
                .parse()
                .map_err(|_| CliError::Usage(format!("bad form degree {e:?}")))?;
            let j: u32 = j
                .parse()
                .map_err(|_| CliError::Usage(format!("bad character {j:?}")))?;
            let ch = Character::new(j, order).map_err(|e| usage(&e))?;
            let hs = HypersurfaceSpec::new(p.clone(), e, ch).map_err(|e| usage(&e))?;
            let h = cohomology_hypersurface(&hs, degree).map_err(failed)?;
            (h, json!({ "form_degree": e, "form_char": j }))
        }
    };
    let output = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            if h.is_zero() {
                s.push_str("0 in all degrees\n");
            }
            for (d, v) in h.iter() {
                let _ = writeln!(s, "H^{d} = {v}");
            }
            s
        }
        Format::Json => {
            let mut s = String::new();
            json_line(
                &mut s,
                json!({
                    "record": "cohomology",
                    "space": format!("P{n}"),
                    "weights": weights,
                    "order": order,
                    "degree": degree,
                    "hypersurface": hyper,
                    "cohomology": graded_json(&h),
                }),
            );
            s
        }
    };
    Ok(Report::ok(output))
}

/// `Y:a,b,c` or `M:i,j`.
pub fn parse_term(s: &str) -> Result<SodTerm, CliError> {
    let bad = || CliError::Usage(format!("expected Y:a,b,c or M:i,j, got {s:?}"));
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    let nums: Vec<i64> = rest
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match (kind.trim(), nums.as_slice()) {
        ("Y" | "y", [a, b, c]) => Ok(SodTerm::y(*a, *b, *c)),
        ("M" | "m", [i, j]) if (0..3).contains(j) => Ok(SodTerm::m(*i, *j as u32)),
        _ => Err(bad()),
    }
}

pub fn ext(cfg: &RunConfig, from: &str, to: &str) -> Result<Report, CliError> {
    let (a, b) = (parse_term(from)?, parse_term(to)?);
    let oracle = StandardOracle::new().map_err(failed)?;
    let profile = oracle.ext(&a, &b);
    let output = match cfg.format {
        Format::Text => format!("Ext^•({a}, {b}) : {profile}\n"),
        Format::Json => {
            let mut s = String::new();
            json_line(
                &mut s,
                json!({
                    "record": "ext",
                    "from": a.to_string(),
                    "to": b.to_string(),
                    "profile": profile,
                    "vanishes": profile.is_zero(),
                }),
            );
            s
        }
    };
    Ok(Report::ok(output))
}

/// Misreports `Ext(O_Y, O_Y(1,-1,-1))`; used to exercise the failure path.
struct FaultyOracle(StandardOracle);

impl ExtOracle for FaultyOracle {
    fn ext(&self, from: &SodTerm, to: &SodTerm) -> ExtProfile {
        if *from == SodTerm::y(0, 0, 0) && *to == SodTerm::y(1, -1, -1) {
            return ExtProfile::Known(BTreeMap::from([(0, 1)]));
        }
        self.0.ext(from, to)
    }
}

pub fn trace(cfg: &RunConfig, emit: Option<&Path>, inject_fault: bool) -> Result<Report, CliError> {
    let standard = StandardOracle::new().map_err(failed)?;
    let oracle: Box<dyn ExtOracle> = if inject_fault {
        Box::new(FaultyOracle(standard))
    } else {
        Box::new(standard)
    };
    let chain = run_main_theorem_trace_with(oracle).map_err(failed)?;

    // Independent validation: replay every certificate against a fresh engine.
    let engine = RewriteEngine::standard().map_err(failed)?;
    let mut invalid = Vec::new();
    for (n, cert) in chain.iter().enumerate() {
        if let Err(e) = engine.replay(cert) {
            invalid.push(format!("step {}: {e}", n + 1));
        }
    }

    let mut records = String::new();
    for (n, cert) in chain.iter().enumerate() {
        let mut v = serde_json::to_value(CertificateRecord::new(n + 1, cert)).map_err(failed)?;
        v["record"] = json!("certificate");
        json_line(&mut records, v);
    }
    if let Some(path) = emit {
        write_file(cfg, path, &records)?;
    }

    let valid = invalid.is_empty();
    let output = match cfg.format {
        Format::Text => {
            let mut s = render_trace(&chain);
            for line in &invalid {
                let _ = writeln!(s, "INVALID {line}");
            }
            let _ = writeln!(
                s,
                "{} of {} certificates valid",
                chain.len() - invalid.len(),
                chain.len()
            );
            s
        }
        Format::Json => {
            let mut s = records;
            json_line(
                &mut s,
                json!({
                    "record": "trace_summary",
                    "steps": chain.len(),
                    "valid": valid,
                    "invalid": invalid,
                }),
            );
            s
        }
    };
    Ok(Report { output, ok: valid })
}

pub fn charts(cfg: &RunConfig, check_iso: bool, smoothness: bool) -> Result<Report, CliError> {
    if !check_iso && !smoothness {
        return Err(CliError::Usage(
            "charts needs --check-iso and/or --smoothness".into(),
        ));
    }
    let mut out = String::new();
    let mut ok = true;
    for w in [&cfg.cubics].iter().flat_map(|c| c.warnings()) {
        eprintln!("eqku: warning: {w}");
    }
    if check_iso {
        let sweep = isomorphism_sweep(&cfg.cubics).map_err(failed)?;
        for ((i, j, k), (a, b, l), holds) in &sweep {
            ok &= *holds;
            match cfg.format {
                Format::Text => {
                    let _ = writeln!(
                        out,
                        "U(x{i},y{j},y{k}) ≅ W(x{a},x{b},y{l}): {}",
                        if *holds { "identical" } else { "MISMATCH" }
                    );
                }
                Format::Json => json_line(
                    &mut out,
                    json!({
                        "record": "chart_isomorphism",
                        "chart": [i, j, k],
                        "w_chart": [a, b, l],
                        "holds": holds,
                    }),
                ),
            }
        }
    }
    if smoothness {
        for &p in &cfg.primes {
            let r = smoothness_evidence(&cfg.cubics, p).map_err(failed)?;
            ok &= r.is_empty();
            match cfg.format {
                Format::Text => {
                    let _ = writeln!(
                        out,
                        "p = {p}: {} charts × {} points, {}",
                        r.charts_checked,
                        r.points_per_chart,
                        if r.is_empty() {
                            "no singular points".to_string()
                        } else {
                            format!("singular points on {} charts", r.singular.len())
                        }
                    );
                    for s in &r.singular {
                        let (i, j, k) = s.chart;
                        let _ = writeln!(
                            out,
                            "  U(x{i},y{j},y{k}) ({}): {} points, e.g. {:?}",
                            s.coordinates.join(", "),
                            s.singular_points,
                            s.sample.first().cloned().unwrap_or_default()
                        );
                    }
                    let _ = writeln!(out, "  note: {}", r.note);
                }
                Format::Json => {
                    let mut v = serde_json::to_value(&r).map_err(failed)?;
                    v["record"] = json!("smoothness");
                    json_line(&mut out, v);
                }
            }
        }
    }
    Ok(Report { output: out, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_parsing() {
        assert_eq!(parse_term("Y:1,-2,-1").unwrap(), SodTerm::y(1, -2, -1));
        assert_eq!(parse_term("M:2,1").unwrap(), SodTerm::m(2, 1));
        for bad in ["Y:1,2", "M:0,3", "Q:1", "Y", "M:a,b"] {
            assert!(parse_term(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn space_parsing() {
        assert_eq!(parse_space("p2").unwrap(), 2);
        assert_eq!(parse_space("P5").unwrap(), 5);
        assert!(parse_space("p0").is_err());
        assert!(parse_space("q2").is_err());
    }
}
