//! CC^log, the support of the pull-back tau^{-1}, the pull-back tau^! CC^log,
//! the singular support, the tame decomposition and the surface formula.

use std::fmt;

use super::{same_support, Cycle, Span};
use crate::algebra::{gcd, var_names, Poly, RationalSection};
use crate::blowup::{surface_point, SurfacePoint};
use crate::conductors::DivisorType;
use crate::error::{Error, Result};
use crate::geometry::loci::subsets;
use crate::geometry::{assemble_cform, compute_loci, Base, ChartConfig, DegeneracyLoci, LogForm};
use crate::blowup::surface::rational_zeros_on;
use crate::witt::WittVector;

/// Components of CC^log in T*X(log D').
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogComponent {
    ZeroSection,
    /// The line spanned by the characteristic form over D_i.
    L(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCycle {
    pub nvars: usize,
    pub terms: Vec<(LogComponent, i64)>,
}

impl LogCycle {
    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (i, (c, k)) in self.terms.iter().enumerate() {
            let label = match c {
                LogComponent::ZeroSection => "T*_X X(log D')".to_string(),
                LogComponent::L(j) => format!("L_{}", names[*j]),
            };
            if i > 0 {
                out.push_str(if *k < 0 { " - " } else { " + " });
            } else if *k < 0 {
                out.push('-');
            }
            if k.abs() != 1 {
                out.push_str(&k.abs().to_string());
            }
            out.push_str(&format!("[{label}]"));
        }
        out
    }
}

impl fmt::Display for LogCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars)))
    }
}

fn sign(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// CC^log = (-1)^d ([T*_X X(log D')] + sum_{I_W} sw''_i [L_i]).
pub fn cc_log(cfg: &ChartConfig) -> LogCycle {
    let s = sign(cfg.dim());
    let mut terms = vec![(LogComponent::ZeroSection, s)];
    for i in cfg.wild() {
        terms.push((LogComponent::L(i), s * cfg.inv(i).sw_dprime));
    }
    LogCycle {
        nvars: cfg.dim(),
        terms,
    }
}

/// The form written in the dt basis after clearing t_k (k in I' - I''),
/// restricted to D_{I''}.
pub fn omega(cfg: &ChartConfig, form: &LogForm, subset: &[usize]) -> Vec<Poly> {
    let d = cfg.dim();
    let f = cfg.field();
    let rest: Vec<usize> = cfg.log_set.iter().copied().filter(|k| !subset.contains(k)).collect();
    let prod = |skip: Option<usize>| {
        rest.iter()
            .filter(|&&k| Some(k) != skip)
            .fold(Poly::one(f, d), |acc, &k| acc.mul(&Poly::var(f, d, k)))
    };
    (0..d)
        .map(|k| {
            if subset.contains(&k) {
                return Poly::zero(f, d);
            }
            let m = if cfg.in_log_set(k) { prod(Some(k)) } else { prod(None) };
            form.numerators[k].mul(&m).set_zeros(subset.iter().copied())
        })
        .collect()
}

/// Restrict a covector to the coordinates of a base, divide by the content and
/// make the lex-leading coefficient of the last nonzero slot 1.
pub fn normalize_on(w: &[Poly], base: &Base) -> Vec<Poly> {
    let mut w: Vec<Poly> = w.iter().map(|x| x.set_zeros(base.coords.iter().copied())).collect();
    let nz: Vec<&Poly> = w.iter().filter(|x| !x.is_zero()).collect();
    if let Some(first) = nz.first() {
        let g = nz.iter().skip(1).fold(first.monic(), |acc, x| gcd(&acc, x));
        if !g.is_constant() {
            w = w.iter().map(|x| if x.is_zero() { x.clone() } else { x.div_exact(&g).unwrap() }).collect();
        }
        let last = w.iter().rposition(|x| !x.is_zero()).unwrap();
        let (_, c) = w[last].lex_lead().unwrap();
        let inv = w[last].field().inv(c);
        w = w.iter().map(|x| x.scale_by(inv)).collect();
    }
    w
}

/// Span of dt_{I''} and omega over a base inside D_{I''}.
fn residue_span(cfg: &ChartConfig, w: &[Poly], base: Base, subset: &[usize]) -> Span {
    let w = normalize_on(w, &base);
    Span::spanned(cfg.field(), base, subset, vec![w])
}

/// The support of tau^{-1}(SS^log) with its dimension check.
#[derive(Debug, Clone)]
pub struct Support {
    pub components: Vec<Span>,
    /// Every component has dimension d.
    pub pure_dimension: bool,
}

fn push_unique(v: &mut Vec<Span>, s: Span) {
    if !v.iter().any(|x| x.same_as(&s)) {
        v.push(s);
    }
}

/// Support of tau^{-1}: conormals of the strata D_{I''}, the spans over B, and the spans over E.
pub fn tau_inverse_support(cfg: &ChartConfig, form: &LogForm, loci: &DegeneracyLoci) -> Support {
    let d = cfg.dim();
    let f = cfg.field();
    let mut comps = Vec::new();
    for s in subsets(&cfg.log_set) {
        comps.push(Span::conormal(f, Base::stratum(d, &s)));
    }
    for e in &loci.entries {
        let w = omega(cfg, form, &e.subset);
        for c in &e.components {
            push_unique(&mut comps, residue_span(cfg, &w, c.base.clone(), &e.subset));
        }
        if e.e {
            push_unique(&mut comps, residue_span(cfg, &w, Base::stratum(d, &e.subset), &e.subset));
        }
    }
    let pure_dimension = comps.iter().all(|s| s.dim() == d);
    Support {
        components: comps,
        pure_dimension,
    }
}

/// tau^! CC^log; needs E empty.
pub fn tau_shriek_cc(cfg: &ChartConfig, form: &LogForm, loci: &DegeneracyLoci) -> Result<Cycle> {
    if !loci.e_empty() {
        return Err(Error::diag("resolve-first", "E ≠ ∅: resolve first"));
    }
    let d = cfg.dim();
    let f = cfg.field();
    let wild = cfg.wild();
    let sw = |i: usize| cfg.inv(i).sw_dprime;
    let mut cyc = Cycle::new(d);
    for s in subsets(&cfg.log_set) {
        let c = 1 + s.iter().filter(|i| wild.contains(i)).map(|&i| sw(i)).sum::<i64>();
        cyc.add(Span::conormal(f, Base::stratum(d, &s)), c);
    }
    for e in &loci.entries {
        let w = omega(cfg, form, &e.subset);
        for c in &e.components {
            let inside: i64 = e.subset.iter().filter(|i| wild.contains(i)).map(|&i| sw(i)).sum();
            let outside: i64 = c.outside_wild.iter().map(|&i| sw(i)).sum();
            let coeff = inside * c.multiplicity as i64 + outside;
            cyc.add(residue_span(cfg, &w, c.base.clone(), &e.subset), coeff);
        }
    }
    Ok(cyc.scaled(sign(d)))
}

/// Singular support with the range in which the formula is proved.
#[derive(Debug, Clone)]
pub struct SingularSupport {
    pub components: Vec<Span>,
    pub validity: &'static str,
}

pub const VALID_FULL: &str = "full";
pub const VALID_OUTSIDE_CODIM3: &str = "valid outside codimension >= 3";

/// SS = support of tau^! CC^log, cross-checked against the support of tau^{-1}.
pub fn singular_support(cfg: &ChartConfig, form: &LogForm, loci: &DegeneracyLoci) -> Result<SingularSupport> {
    let cc = tau_shriek_cc(cfg, form, loci)?;
    let support = cc.support();
    let inverse = tau_inverse_support(cfg, form, loci);
    if !same_support(&support, &inverse.components) {
        return Err(Error::diag(
            "consistency",
            "the support of tau^! CC^log differs from the support of tau^{-1}",
        ));
    }
    let validity = if support.iter().all(|s| s.base.codim() <= 2) {
        VALID_FULL
    } else {
        VALID_OUTSIDE_CODIM3
    };
    Ok(SingularSupport {
        components: support,
        validity,
    })
}

/// The chart D_{I''} with the listed tame coordinates dropped, boundary I_W and
/// log set I' meet I_W. Returns the chart and the old index of each new coordinate.
pub fn restrict_to_stratum(cfg: &ChartConfig, subset: &[usize]) -> Result<(ChartConfig, Vec<usize>)> {
    let d = cfg.dim();
    let keep: Vec<usize> = (0..d).filter(|k| !subset.contains(k)).collect();
    let map: Vec<Option<usize>> = (0..d).map(|k| keep.iter().position(|&x| x == k)).collect();
    let nd = keep.len();
    if nd == 0 {
        return Err(Error::unsupported("zero-dimensional-stratum", "the stratum is a point"));
    }
    let comps = cfg
        .datum
        .components()
        .iter()
        .map(|c| c.restrict_all(subset).map(|r| r.remap(nd, &map)))
        .collect::<Option<Vec<RationalSection>>>()
        .ok_or_else(|| Error::diag("consistency", "the datum has a pole along a tame divisor"))?;
    let datum = WittVector::new(cfg.field(), nd, comps);
    let wild = cfg.wild();
    let boundary: Vec<usize> = wild.iter().filter_map(|&k| map[k]).collect();
    let log_set: Vec<usize> = wild.iter().filter(|&&k| cfg.in_log_set(k)).filter_map(|&k| map[k]).collect();
    Ok((ChartConfig::new(datum, &boundary, &log_set, &[])?, keep))
}

fn embed(f: &crate::algebra::Field, span: &Span, keep: &[usize], subset: &[usize], d: usize) -> Span {
    let map: Vec<Option<usize>> = keep.iter().map(|&k| Some(k)).collect();
    let mut coords: Vec<usize> = span.base.coords.iter().map(|&k| keep[k]).collect();
    coords.extend_from_slice(subset);
    let base = match &span.base.hyper {
        Some(h) => Base::with_hyper(d, &coords, h.remap(d, &map)),
        None => Base::stratum(d, &coords),
    };
    let gens = span
        .gens
        .iter()
        .map(|g| {
            let mut v = vec![Poly::zero(f, d); d];
            for (k, x) in g.iter().enumerate() {
                v[keep[k]] = x.remap(d, &map);
            }
            v
        })
        .collect();
    Span::spanned(f, base, subset, gens)
}

/// sum over I'' in I_T of (-1)^{|I''|} i_{I''!} tau^! CC^log of the restriction to D_{I''}.
pub fn tame_decomposition(cfg: &ChartConfig) -> Result<Cycle> {
    cfg.check_tame_in_log_set()?;
    let d = cfg.dim();
    let f = cfg.field().clone();
    let mut total = Cycle::new(d);
    for s in subsets(&cfg.tame()) {
        let (sub, keep) = restrict_to_stratum(cfg, &s)?;
        let nd = sub.dim();
        let local = match assemble_cform(&sub)? {
            Some(form) => {
                let loci = compute_loci(&sub, &form)?;
                tau_shriek_cc(&sub, &form, &loci)?
            }
            None => {
                let mut c = Cycle::new(nd);
                for t in subsets(&sub.log_set) {
                    c.add(Span::conormal(&f, Base::stratum(nd, &t)), 1);
                }
                c.scaled(sign(nd))
            }
        };
        let sgn = if s.len() % 2 == 0 { 1 } else { -1 };
        for (span, c) in &local.terms {
            total.add(embed(&f, span, &keep, &s, d), sgn * c);
        }
    }
    Ok(total)
}

/// CC of a surface chart, with the point data used.
#[derive(Debug, Clone)]
pub struct SurfaceCycle {
    pub cycle: Cycle,
    pub points: Vec<SurfacePoint>,
}

/// [T*X] + sum_{i in I} dt_i [L_i^empty] + sum_x t_x [T*_x X] on a surface chart.
pub fn surface_cc(cfg: &ChartConfig, step_cap: usize) -> Result<SurfaceCycle> {
    if cfg.dim() != 2 {
        return Err(Error::invalid("the surface formula needs a chart of dimension 2"));
    }
    let f = cfg.field().clone();
    let plain = cfg.with_log_set(&[])?;
    let logd = cfg.with_log_set(&cfg.boundary)?;
    let plain_form = assemble_cform(&plain)?;
    let log_form = assemble_cform(&logd)?;
    let mut cyc = Cycle::new(2);
    cyc.add(Span::zero_section(2), 1);
    for &i in &cfg.boundary {
        let v = cfg.inv(i);
        let base = Base::stratum(2, &[i]);
        if v.kind == DivisorType::Tame {
            cyc.add(Span::conormal(&f, base), v.dt);
            continue;
        }
        let form = plain_form.as_ref().expect("a wild divisor gives a form");
        let w = omega(&plain, form, &[]);
        cyc.add(residue_span(&plain, &w, base, &[]), v.dt);
    }
    let mut points: Vec<Vec<u32>> = Vec::new();
    if cfg.boundary.len() == 2 {
        points.push(vec![0, 0]);
    }
    for form in [&plain_form, &log_form].into_iter().flatten() {
        for &i in &form.wild {
            for c in rational_zeros_on(&form.numerators, i)? {
                let mut x = vec![0u32; 2];
                x[1 - i] = c;
                if !points.contains(&x) {
                    points.push(x);
                }
            }
        }
    }
    points.sort();
    let mut data = Vec::new();
    for x in points {
        let pt = surface_point(cfg, &x, step_cap)?;
        if pt.t != 0 {
            let base = point_base(&f, &x);
            cyc.add(Span::conormal(&f, base), pt.t);
        }
        data.push(pt);
    }
    Ok(SurfaceCycle { cycle: cyc, points: data })
}

/// The closed point x, which lies on at least one coordinate axis.
fn point_base(f: &crate::algebra::Field, x: &[u32]) -> Base {
    match (x[0], x[1]) {
        (0, 0) => Base::stratum(2, &[0, 1]),
        (0, c) => Base::with_hyper(2, &[0], Poly::var(f, 2, 1).sub(&Poly::constant(f, 2, c))),
        (c, _) => Base::with_hyper(2, &[1], Poly::var(f, 2, 0).sub(&Poly::constant(f, 2, c))),
    }
}
