use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{power_table, ModPPoly, Poly};

use super::equations::{quotient_chart_equation, CubicPair};
use super::{all_charts, ChartError, GROUP_ORDER};

/// Points kept per chart as examples of the singular locus.
const SAMPLE_LIMIT: usize = 8;

pub const EVIDENCE_NOTE: &str = "finite-field evidence only: no F_p-singular point on these \
charts does not prove smoothness over C";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularChart {
    pub chart: (usize, usize, usize),
    pub coordinates: Vec<String>,
    pub singular_points: u64,
    pub sample: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub p: u64,
    pub charts_checked: usize,
    pub points_per_chart: u64,
    /// Charts with at least one singular point.
    pub singular: Vec<SingularChart>,
    pub note: String,
}

impl SmoothnessReport {
    pub fn is_empty(&self) -> bool {
        self.singular.is_empty()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

struct Scan {
    f: ModPPoly,
    partials: Vec<ModPPoly>,
    max_exp: u32,
}

impl Scan {
    fn new(eq: &Poly, p: u64) -> Option<Self> {
        let f = eq.mod_p(p)?;
        let partials = (0..eq.vars().len())
            .map(|v| eq.derivative(v).mod_p(p))
            .collect::<Option<Vec<_>>>()?;
        let max_exp = f.max_exponent();
        Some(Self {
            f,
            partials,
            max_exp,
        })
    }

    fn singular_at(&self, point: &[u64], p: u64) -> bool {
        let pows = power_table(point, self.max_exp, p);
        self.f.eval_with(&pows) == 0 && self.partials.iter().all(|d| d.eval_with(&pows) == 0)
    }
}

/// Searches every quotient chart for `F_p`-points where the equation and all
/// its partial derivatives vanish.
pub fn smoothness_evidence(cubics: &CubicPair, p: u64) -> Result<SmoothnessReport, ChartError> {
    if !is_prime(p) || p.is_multiple_of(u64::from(GROUP_ORDER)) || p > 1 << 20 {
        return Err(ChartError::BadPrime { p });
    }
    let charts = all_charts();
    let mut scans = Vec::with_capacity(charts.len());
    for c in &charts {
        let eq = quotient_chart_equation(cubics, c)?.equation;
        let scan = Scan::new(&eq, p).ok_or(ChartError::BadPrime { p })?;
        scans.push((c.index, eq.vars().to_vec(), scan));
    }
    let n = scans.first().map_or(0, |(_, v, _)| v.len()) as u32;
    let total = p.pow(n);

    let singular: Vec<SingularChart> = scans
        .par_iter()
        .filter_map(|(index, vars, scan)| {
            let (count, mut sample) = (0..total)
                .into_par_iter()
                .filter_map(|idx| {
                    let mut point = Vec::with_capacity(vars.len());
                    let mut rest = idx;
                    for _ in 0..vars.len() {
                        point.push(rest % p);
                        rest /= p;
                    }
                    scan.singular_at(&point, p).then_some(point)
                })
                .fold(
                    || (0u64, Vec::new()),
                    |(n, mut s), pt| {
                        if s.len() < SAMPLE_LIMIT {
                            s.push(pt);
                        }
                        (n + 1, s)
                    },
                )
                .reduce(
                    || (0, Vec::new()),
                    |(a, mut s), (b, t)| {
                        s.extend(t);
                        (a + b, s)
                    },
                );
            sample.sort();
            sample.truncate(SAMPLE_LIMIT);
            (count > 0).then(|| SingularChart {
                chart: *index,
                coordinates: vars.clone(),
                singular_points: count,
                sample,
            })
        })
        .collect();

    Ok(SmoothnessReport {
        p,
        charts_checked: charts.len(),
        points_per_chart: total,
        singular,
        note: EVIDENCE_NOTE.to_string(),
    })
}

/// Vanishing order along `t = 0` of `d(t^n)/dt`, or `None` for `n = 0`.
pub fn ramification_order(n: u32) -> Option<u32> {
    let vars = ["t"];
    let d = Poly::var(&vars, "t").expect("t").pow(n).derivative(0);
    d.terms().map(|(e, _)| e[0]).min()
}
