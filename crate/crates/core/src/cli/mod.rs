//! Problem files, the analyze / resolve / cc / ss / surface pipeline and its reports.

pub mod expr;
pub mod report;
pub mod spec;

pub use report::Report;
pub use spec::{parse_spec, parse_spec_with_cap, LogSetSpec, Mode, ProblemSpec, DEFAULT_WITT_CAP};

use crate::algebra::var_names;
use crate::blowup::{resolve_e, ResolutionNode, TieBreak, DEFAULT_STEP_CAP};
use crate::cycles::formulas::{VALID_FULL, VALID_OUTSIDE_CODIM3};
use crate::cycles::{cc_log, singular_support, surface_cc, tau_inverse_support, tau_shriek_cc, Cycle, LogCycle, Span, Support};
use crate::cycles::formulas::SingularSupport;
use crate::error::{Error, Result};
use crate::geometry::loci::subsets;
use crate::geometry::{assemble_cform, compute_loci, is_clean, Base, ChartConfig, Cleanliness, DegeneracyLoci, LogForm};
use crate::par::maybe_par_map;
use report::{chart_report, cycle_report, node_report, point_report, support_report, ChartReport, FieldReport, NodeReport, SurfaceReport, TreeReport};

/// Knobs shared by all modes.
#[derive(Debug, Clone)]
pub struct Options {
    pub witt_cap: usize,
    pub step_cap: usize,
    /// Overrides the log set of the problem file.
    pub log_set: Option<LogSetSpec>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            witt_cap: DEFAULT_WITT_CAP,
            step_cap: DEFAULT_STEP_CAP,
            log_set: None,
        }
    }
}

/// Certify the datum and fix the log set.
pub fn build_chart(spec: &ProblemSpec, opts: &Options) -> Result<ChartConfig> {
    if spec.witt_length() > opts.witt_cap {
        return Err(Error::invalid(format!(
            "Witt length {} exceeds the cap {}",
            spec.witt_length(),
            opts.witt_cap
        )));
    }
    let datum = spec.datum()?;
    let cfg = ChartConfig::new(datum, &spec.boundary0(), &[], &spec.tame0())?;
    match opts.log_set.as_ref().unwrap_or(&spec.log_set) {
        LogSetSpec::Auto => cfg.with_log_set(&cfg.auto_log_set()),
        LogSetSpec::Explicit(v) => {
            if let Some(x) = v.iter().find(|&&x| x == 0 || x > cfg.dim()) {
                return Err(Error::invalid(format!("log set index {x} is outside 1..{}", cfg.dim())));
            }
            cfg.with_log_set(&v.iter().map(|x| x - 1).collect::<Vec<_>>())
        }
    }
}

/// Everything the analysis of one chart produces.
pub struct Analysis {
    pub form: Option<LogForm>,
    pub clean: Option<Cleanliness>,
    pub loci: Option<DegeneracyLoci>,
    pub notes: Vec<String>,
}

pub fn analyze(cfg: &ChartConfig) -> Result<Analysis> {
    let form = assemble_cform(cfg)?;
    let mut notes = Vec::new();
    let clean = form.as_ref().map(is_clean);
    let mut loci = None;
    match (&form, &clean) {
        (None, _) => notes.push("no wild divisor: the sheaf is tamely ramified".into()),
        (Some(f), Some(Cleanliness::Clean)) => {
            if cfg.check_tame_in_log_set().is_ok() {
                loci = Some(compute_loci(cfg, f)?);
            } else {
                notes.push("loci skipped: a tame divisor is outside the log set".into());
            }
        }
        _ => notes.push("loci skipped: the ramification is not clean".into()),
    }
    Ok(Analysis {
        form,
        clean,
        loci,
        notes,
    })
}

fn report_of(cfg: &ChartConfig, a: &Analysis) -> ChartReport {
    chart_report(cfg, a.form.as_ref(), a.clean.as_ref(), a.loci.as_ref(), a.notes.clone())
}

/// Cycles of a chart: CC^log, tau^! CC^log and the support of tau^{-1}.
pub struct Cycles {
    pub log: LogCycle,
    pub cc: Cycle,
    pub ss: SingularSupport,
    pub inverse: Support,
}

fn tame_cycle(cfg: &ChartConfig) -> Cycle {
    let d = cfg.dim();
    let mut c = Cycle::new(d);
    for s in subsets(&cfg.log_set) {
        c.add(Span::conormal(cfg.field(), Base::stratum(d, &s)), 1);
    }
    c.scaled(if d.is_multiple_of(2) { 1 } else { -1 })
}

pub fn cycles(cfg: &ChartConfig, a: &Analysis) -> Result<Cycles> {
    cfg.check_tame_in_log_set()?;
    let log = cc_log(cfg);
    let Some(form) = &a.form else {
        let cc = tame_cycle(cfg);
        let comps = cc.support();
        let validity = if comps.iter().all(|s| s.base.codim() <= 2) { VALID_FULL } else { VALID_OUTSIDE_CODIM3 };
        return Ok(Cycles {
            log,
            inverse: Support {
                components: comps.clone(),
                pure_dimension: true,
            },
            ss: SingularSupport {
                components: comps,
                validity,
            },
            cc,
        });
    };
    if let Some(Cleanliness::NotClean { divisor, .. }) = &a.clean {
        return Err(Error::diag(
            "not-clean",
            format!("the ramification is not clean along t{}", divisor + 1),
        ));
    }
    let loci = match &a.loci {
        Some(l) => l.clone(),
        None => compute_loci(cfg, form)?,
    };
    let cc = tau_shriek_cc(cfg, form, &loci)?;
    let ss = singular_support(cfg, form, &loci)?;
    let inverse = tau_inverse_support(cfg, form, &loci);
    Ok(Cycles { log, cc, ss, inverse })
}

fn tree_report(node: &ResolutionNode, path: Vec<String>) -> Result<NodeReport> {
    let a = analyze(&node.config)?;
    let names = var_names(node.config.dim());
    let children = node
        .children
        .iter()
        .map(|(c, n)| {
            let mut p = path.clone();
            p.push(names[*c].clone());
            tree_report(n, p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(node_report(node, path, report_of(&node.config, &a), children))
}

/// Run one mode on a problem.
pub fn run_pipeline(spec: &ProblemSpec, mode: Mode, opts: &Options) -> Result<Report> {
    let cfg = build_chart(spec, opts)?;
    let f = cfg.field().clone();
    let mut report = Report {
        mode: mode.name().to_string(),
        field: FieldReport {
            p: f.p(),
            degree: f.degree(),
            modulus: f.modulus().to_vec(),
        },
        dim: cfg.dim(),
        analysis: None,
        resolution: None,
        cycles: None,
        support: None,
        surface: None,
    };
    match mode {
        Mode::Analyze => {
            let a = analyze(&cfg)?;
            report.analysis = Some(report_of(&cfg, &a));
        }
        Mode::Resolve => {
            let tree = resolve_e(&cfg, opts.step_cap, TieBreak::First)?;
            report.resolution = Some(TreeReport {
                blowups: tree.blowups(),
                depth: tree.depth(),
                leaves: tree.leaves().len(),
                root: tree_report(&tree, vec![])?,
            });
        }
        Mode::Cc | Mode::Ss => {
            let a = analyze(&cfg)?;
            let c = cycles(&cfg, &a)?;
            report.analysis = Some(report_of(&cfg, &a));
            if mode == Mode::Cc {
                report.cycles = Some(cycle_report(&c.log, &c.cc, c.ss.validity));
            } else {
                report.support = Some(support_report(&c.ss, &c.inverse, cfg.dim()));
            }
        }
        Mode::Surface => {
            let s = surface_cc(&cfg, opts.step_cap)?;
            let names = var_names(2);
            report.surface = Some(SurfaceReport {
                points: s.points.iter().map(|p| point_report(p, |x| f.fmt_elem(x))).collect(),
                cycle: s.cycle.to_string_with(&names),
                terms: report::terms_report(&s.cycle),
            });
        }
    }
    Ok(report)
}

/// Run several modes; the reports come back in the requested order.
pub fn run_modes(spec: &ProblemSpec, modes: &[Mode], opts: &Options) -> Result<Vec<Report>> {
    maybe_par_map(modes, |&m| run_pipeline(spec, m, opts)).into_iter().collect()
}
