//! Blow-ups of coordinate strata, the consistency checks that accompany them,
//! the resolution of E, and the point blow-ups that compute lambda on surfaces.

pub mod surface;

pub use surface::{localize, surface_lambda, surface_point, LambdaResult, SurfacePoint, TraceStep};

use crate::conductors::DivisorType;
use crate::error::{Error, Result};
use crate::geometry::{assemble_cform, compute_loci, is_clean, ChartConfig, Cleanliness, LogForm};
use crate::par::maybe_par_map;

/// Default bound on the number of nested blow-ups along one branch.
pub const DEFAULT_STEP_CAP: usize = 32;

/// Rows of the chart substitution: t_k -> t_chart t_k for k in center - {chart}.
pub fn monomial_map(d: usize, center: &[usize], chart: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = (0..d)
        .map(|j| {
            let mut row = vec![0u32; d];
            row[j] = 1;
            row
        })
        .collect();
    for &k in center {
        if k != chart {
            m[k][chart] += 1;
        }
    }
    m
}

/// One chart of a blow-up.
#[derive(Debug, Clone)]
pub struct BlowupChart {
    pub center: Vec<usize>,
    /// The coordinate whose hyperplane is the exceptional divisor in this chart.
    pub chart: usize,
    pub config: ChartConfig,
    pub form: Option<LogForm>,
}

fn assertion(msg: String) -> Error {
    Error::diag("blowup-assertion", msg)
}

/// Chart `chart` of the blow-up along V(t_center). The exceptional divisor joins
/// the boundary and the log set; every other coordinate keeps its role.
pub fn blow_up_chart(cfg: &ChartConfig, center: &[usize], chart: usize) -> Result<BlowupChart> {
    let d = cfg.dim();
    if center.len() < 2 || !center.contains(&chart) {
        return Err(Error::invalid("a blow-up center needs two coordinates and the chart must be one of them"));
    }
    let m = monomial_map(d, center, chart);
    let datum = cfg.datum.map(|c| c.substitute_monomial(&m));
    let mut boundary = cfg.boundary.clone();
    let mut log_set = cfg.log_set.clone();
    for set in [&mut boundary, &mut log_set] {
        if !set.contains(&chart) {
            set.push(chart);
        }
    }
    let tame: Vec<usize> = cfg.declared_tame.iter().copied().filter(|&k| k != chart).collect();
    let config = ChartConfig::new(datum, &boundary, &log_set, &tame)?;
    let form = assemble_cform(&config)?;
    Ok(BlowupChart {
        center: center.to_vec(),
        chart,
        config,
        form,
    })
}

/// Pull a log form back along one chart (center inside the log set).
pub fn pull_back_form(form: &LogForm, center: &[usize], chart: usize) -> Vec<crate::algebra::Poly> {
    let m = monomial_map(form.nvars(), center, chart);
    let pulled: Vec<_> = form.numerators.iter().map(|n| n.substitute_monomial(&m)).collect();
    let mut out = pulled.clone();
    for &k in center {
        if k != chart {
            out[chart] = out[chart].add(&pulled[k]);
        }
    }
    out
}

/// The checks every blow-up along a stratum of the log boundary must pass:
/// twist and wild locus pull back, the form pulls back, cleanliness survives,
/// and the new residue is the sum of the old ones.
pub fn check_blowup(old: &ChartConfig, old_form: Option<&LogForm>, new: &BlowupChart) -> Result<()> {
    let (center, chart) = (&new.center, new.chart);
    let cfg = &new.config;
    let r_old = old.twist();
    let r_new = cfg.twist();
    let want: u32 = center.iter().map(|&k| r_old[k]).sum();
    if r_new[chart] != want {
        return Err(assertion(format!(
            "exceptional twist is {} but the pulled-back twist is {want}",
            r_new[chart]
        )));
    }
    for k in 0..old.dim() {
        if k != chart && r_new[k] != r_old[k] {
            return Err(assertion(format!("twist along t{} changed under the blow-up", k + 1)));
        }
    }
    let old_wild = old.wild();
    let mut want_wild: Vec<usize> = old_wild.iter().copied().filter(|&k| k != chart).collect();
    if center.iter().any(|k| old_wild.contains(k)) {
        want_wild.push(chart);
    }
    want_wild.sort_unstable();
    if cfg.wild() != want_wild {
        return Err(assertion("the wild locus does not pull back to the wild locus".into()));
    }
    let (Some(of), Some(nf)) = (old_form, new.form.as_ref()) else {
        return Ok(());
    };
    let pulled: Vec<_> = pull_back_form(of, center, chart)
        .into_iter()
        .map(|n| n.mod_product_of(&nf.wild))
        .collect();
    if pulled != nf.numerators {
        return Err(assertion("the characteristic form does not pull back".into()));
    }
    if !is_clean(nf).is_clean() {
        return Err(assertion("cleanliness is lost after the blow-up".into()));
    }
    if nf.wild.contains(&chart) {
        let m = monomial_map(old.dim(), center, chart);
        let mut sum = crate::algebra::Poly::zero(cfg.field(), cfg.dim());
        for &k in center.iter().filter(|k| old_wild.contains(k)) {
            sum = sum.add(&of.numerators[k].set_zero(k).substitute_monomial(&m));
        }
        if sum.set_zero(chart) != nf.numerators[chart].set_zero(chart) {
            return Err(assertion("the exceptional residue is not the sum of the old residues".into()));
        }
    }
    Ok(())
}

/// Blow up V(t_center), center inside the log set, with the checks on every chart.
pub fn blow_up(cfg: &ChartConfig, center: &[usize]) -> Result<Vec<BlowupChart>> {
    if let Some(k) = center.iter().find(|k| !cfg.in_log_set(**k)) {
        return Err(Error::invalid(format!("center coordinate t{} is not in the log set", k + 1)));
    }
    let old_form = assemble_cform(cfg)?;
    if let Some(f) = &old_form {
        if let Cleanliness::NotClean { divisor, .. } = is_clean(f) {
            return Err(Error::diag(
                "not-clean",
                format!("the ramification is not clean along t{}", divisor + 1),
            ));
        }
    }
    maybe_par_map(center, |&i| {
        let c = blow_up_chart(cfg, center, i)?;
        check_blowup(cfg, old_form.as_ref(), &c)?;
        Ok(c)
    })
    .into_iter()
    .collect()
}

/// Which E-stratum to blow up when several are maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    First,
    Last,
}

/// A node of the resolution tree. Leaves have E empty.
#[derive(Debug, Clone)]
pub struct ResolutionNode {
    /// The chart, with log set I_I + I_T.
    pub config: ChartConfig,
    pub form: Option<LogForm>,
    pub center: Option<Vec<usize>>,
    /// (chart coordinate, subtree).
    pub children: Vec<(usize, ResolutionNode)>,
}

impl ResolutionNode {
    pub fn leaves(&self) -> Vec<&ResolutionNode> {
        if self.children.is_empty() {
            return vec![self];
        }
        self.children.iter().flat_map(|(_, c)| c.leaves()).collect()
    }

    pub fn blowups(&self) -> usize {
        usize::from(self.center.is_some()) + self.children.iter().map(|(_, c)| c.blowups()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        self.children.iter().map(|(_, c)| 1 + c.depth()).max().unwrap_or(0)
    }
}

/// Blow up maximal E-strata until E is empty on every chart.
pub fn resolve_e(cfg: &ChartConfig, step_cap: usize, tie: TieBreak) -> Result<ResolutionNode> {
    resolve_node(cfg, 0, step_cap, tie)
}

fn resolve_node(cfg: &ChartConfig, depth: usize, cap: usize, tie: TieBreak) -> Result<ResolutionNode> {
    let cfg = cfg.with_log_set(&cfg.auto_log_set())?;
    let form = assemble_cform(&cfg)?;
    let leaf = |cfg: ChartConfig, form: Option<LogForm>| ResolutionNode {
        config: cfg,
        form,
        center: None,
        children: vec![],
    };
    let Some(f) = &form else { return Ok(leaf(cfg, form)) };
    let loci = compute_loci(&cfg, f)?;
    let e: Vec<&[usize]> = loci.e_subsets();
    if e.is_empty() {
        return Ok(leaf(cfg, form));
    }
    let top = e.iter().map(|s| s.len()).max().unwrap();
    let mut maximal: Vec<&[usize]> = e.into_iter().filter(|s| s.len() == top).collect();
    maximal.sort();
    let center = match tie {
        TieBreak::First => maximal[0].to_vec(),
        TieBreak::Last => maximal[maximal.len() - 1].to_vec(),
    };
    if center.len() < 2 {
        return Err(Error::diag(
            "consistency",
            format!("E contains the divisor t{} for the resolution log set", center[0] + 1),
        ));
    }
    if depth >= cap {
        return Err(Error::diag(
            "step-cap",
            format!("E is still nonempty after {cap} nested blow-ups"),
        ));
    }
    let charts = blow_up(&cfg, &center)?;
    for c in &charts {
        if c.config.inv(c.chart).kind != DivisorType::II {
            return Err(assertion(format!(
                "the exceptional divisor of an E-stratum should be of type II (chart t{})",
                c.chart + 1
            )));
        }
        for k in cfg.boundary.iter().copied().filter(|&k| k != c.chart) {
            let (was, is) = (cfg.inv(k).kind, c.config.inv(k).kind);
            if was != DivisorType::II && was != is {
                return Err(assertion(format!("the type of t{} changed under the blow-up", k + 1)));
            }
        }
    }
    let children = maybe_par_map(&charts, |c| resolve_node(&c.config, depth + 1, cap, tie))
        .into_iter()
        .zip(&charts)
        .map(|(r, c)| r.map(|n| (c.chart, n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResolutionNode {
        config: cfg,
        form,
        center: Some(center),
        children,
    })
}
