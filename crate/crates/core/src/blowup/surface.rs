//! Point blow-ups on surfaces and the invariant lambda_x.

use super::blow_up_chart;
use crate::algebra::{gcd, Elem, Poly};
use crate::error::{Error, Result};
use crate::geometry::{assemble_cform, clean_at_point, ord_at_point, ChartConfig, LogForm};
use crate::geometry::loci::split_rational_roots;

/// One point blow-up in the computation of lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub depth: usize,
    /// Chart coordinates chosen so far (0 or 1 at each level).
    pub path: Vec<usize>,
    /// The blown-up point in the coordinates of the chart it lives on.
    pub point: Vec<Elem>,
    /// Number of boundary divisors through the point.
    pub r: usize,
    /// sum of sw over the divisors through the point minus sw of the exceptional divisor.
    pub e: i64,
    pub mu: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaResult {
    pub lambda: i64,
    pub trace: Vec<TraceStep>,
}

/// Local invariants of a surface at a closed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePoint {
    pub point: Vec<Elem>,
    pub r: usize,
    pub lambda: i64,
    /// (divisor, ord^D) for wild divisors through the point.
    pub ord_log: Vec<(usize, u32)>,
    /// (divisor, ord^empty) for wild divisors through the point.
    pub ord_plain: Vec<(usize, u32)>,
    pub s: i64,
    pub t: i64,
    pub trace: Vec<TraceStep>,
}

fn require_surface(cfg: &ChartConfig) -> Result<()> {
    if cfg.dim() != 2 {
        return Err(Error::invalid("surface invariants need a chart of dimension 2"));
    }
    Ok(())
}

/// Move x to the origin, with the whole boundary as log set.
pub fn localize(cfg: &ChartConfig, x: &[Elem]) -> Result<ChartConfig> {
    require_surface(cfg)?;
    if x.len() != 2 {
        return Err(Error::invalid("a surface point has two coordinates"));
    }
    let mut datum = cfg.datum.clone();
    for (j, &c) in x.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if cfg.boundary.contains(&j) {
            return Err(Error::unsupported(
                "translated-boundary",
                format!("the point is off t{} = 0 but that divisor carries poles", j + 1),
            ));
        }
        datum = datum
            .try_map(|s| s.translate(j, c))
            .ok_or_else(|| Error::invalid("translation through a pole"))?;
    }
    let boundary = cfg.boundary.clone();
    ChartConfig::new(datum, &boundary, &boundary, &[])
}

/// Rational points of V(gens) on t_i = 0 (in t-coordinates of the other variable).
/// Errors when part of the locus is not defined over the base field.
pub fn rational_zeros_on(gens: &[Poly], i: usize) -> Result<Vec<Elem>> {
    let restricted: Vec<Poly> = gens.iter().map(|g| g.to_u_ring().set_zero(i)).collect();
    let nz: Vec<&Poly> = restricted.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nz.first() else {
        return Err(Error::diag("not-clean", format!("the form vanishes on t{} = 0", i + 1)));
    };
    let g = nz.iter().skip(1).fold(first.monic(), |acc, x| gcd(&acc, x));
    if g.is_constant() {
        return Ok(vec![]);
    }
    let f = g.field().clone();
    let j = 1 - i;
    let mut out = Vec::new();
    for h in split_rational_roots(&g) {
        if h.degree_in(j) != Some(1) || h.len() > 2 {
            return Err(Error::diag(
                "base-field-extension",
                format!("the form vanishes at points of t{} = 0 not defined over the base field", i + 1),
            ));
        }
        let root = f.neg(h.constant_term());
        out.push(f.pow(root, f.p() as u64));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// lambda at a point of a surface chart.
pub fn surface_lambda(cfg: &ChartConfig, x: &[Elem], step_cap: usize) -> Result<LambdaResult> {
    let local = localize(cfg, x)?;
    let mut trace = Vec::new();
    lambda_origin(&local, x.to_vec(), 0, &mut vec![], step_cap, &mut trace)?;
    Ok(LambdaResult {
        lambda: trace.iter().map(|s| s.mu).sum(),
        trace,
    })
}

fn lambda_origin(
    cfg: &ChartConfig,
    label: Vec<Elem>,
    depth: usize,
    path: &mut Vec<usize>,
    cap: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<()> {
    let Some(form) = assemble_cform(cfg)? else { return Ok(()) };
    if clean_at_point(&form, &[0, 0])? {
        return Ok(());
    }
    if depth >= cap {
        return Err(Error::diag("step-cap", format!("lambda did not settle after {cap} point blow-ups")));
    }
    let r = cfg.boundary.len();
    let sw_here: i64 = cfg.invariants.iter().map(|v| v.sw).sum();
    let mut charts = Vec::new();
    for chart in [0usize, 1] {
        charts.push(blow_up_chart(cfg, &[0, 1], chart)?);
    }
    let sw_exc = charts[0].config.inv(0).sw;
    if charts[1].config.inv(1).sw != sw_exc {
        return Err(Error::diag("consistency", "the two charts disagree on the exceptional divisor"));
    }
    let e = sw_here - sw_exc;
    let mu = if r == 2 { e * e } else { e * (e - 1) };
    trace.push(TraceStep {
        depth,
        path: path.clone(),
        point: label,
        r,
        e,
        mu,
    });
    for (chart, c) in charts.iter().enumerate() {
        let Some(form) = &c.form else { continue };
        let mut candidates = vec![0];
        if chart == 0 && form.wild.contains(&0) {
            candidates.extend(rational_zeros_on(&form.numerators, 0)?.into_iter().filter(|&v| v != 0));
        }
        for v in candidates {
            let x = if chart == 0 { vec![0, v] } else { vec![0, 0] };
            if clean_at_point(form, &x)? {
                continue;
            }
            let next = if v == 0 { c.config.clone() } else { localize(&c.config, &x)? };
            path.push(chart);
            lambda_origin(&next, x, depth + 1, path, cap, trace)?;
            path.pop();
        }
    }
    Ok(())
}

fn through(form: &LogForm, x: &[Elem]) -> Vec<usize> {
    form.wild.iter().copied().filter(|&i| x[i] == 0).collect()
}

/// s_x, t_x and lambda_x at a point of a surface chart.
pub fn surface_point(cfg: &ChartConfig, x: &[Elem], step_cap: usize) -> Result<SurfacePoint> {
    require_surface(cfg)?;
    let d_cfg = cfg.with_log_set(&cfg.boundary)?;
    let e_cfg = cfg.with_log_set(&[])?;
    let d_form = assemble_cform(&d_cfg)?;
    let e_form = assemble_cform(&e_cfg)?;
    let r = cfg.boundary.iter().filter(|&&i| x[i] == 0).count();
    let lam = surface_lambda(cfg, x, step_cap)?;
    let mut ord_log = Vec::new();
    let mut ord_plain = Vec::new();
    if let (Some(df), Some(ef)) = (&d_form, &e_form) {
        for i in through(df, x) {
            ord_log.push((i, ord_at_point(df, x, i)?));
            ord_plain.push((i, ord_at_point(ef, x, i)?));
        }
    }
    let delta = i64::from(r == 2);
    let mut s = -lam.lambda;
    let mut t = -lam.lambda + delta;
    for (&(i, od), &(_, oe)) in ord_log.iter().zip(&ord_plain) {
        let v = cfg.inv(i);
        s += v.sw * od as i64;
        t += v.sw * oe as i64;
        if v.kind == crate::conductors::DivisorType::II {
            t += -delta + od as i64;
        }
    }
    Ok(SurfacePoint {
        point: x.to_vec(),
        r,
        lambda: lam.lambda,
        ord_log,
        ord_plain,
        s,
        t,
        trace: lam.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, RationalSection};
    use crate::conductors::DivisorType;
    use crate::witt::WittVector;

    fn lambda_example(n: u32) -> ChartConfig {
        let f = Field::prime(3).unwrap();
        let n1 = if n % 3 == 1 { 2 } else { 1 };
        let num = Poly::var(&f, 2, 1).add(&Poly::var(&f, 2, 0).pow(n as u64));
        let a = WittVector::new(&f, 2, vec![RationalSection::new(num, vec![n1, 3])]);
        ChartConfig::new(a, &[0, 1], &[0, 1], &[]).unwrap()
    }

    #[test]
    fn lambda_trace_lengths() {
        for n in 1..=3u32 {
            let cfg = lambda_example(n);
            assert_eq!(cfg.inv(0).kind, DivisorType::I);
            assert_eq!(cfg.inv(1).kind, DivisorType::II);
            assert_eq!(cfg.inv(1).sw, 3);
            let pt = surface_point(&cfg, &[0, 0], 16).unwrap();
            assert_eq!(pt.ord_log.iter().find(|x| x.0 == 1).unwrap().1, n);
            assert_eq!(pt.trace.len() as u32, n, "n = {n}: {:?}", pt.trace);
            assert!(pt.trace.iter().all(|s| s.mu == 1));
            assert_eq!(pt.lambda, n as i64);
        }
    }
}
