//! Report documents. Every field is an exact integer or a polynomial string, and
//! every list has a fixed order, so equal inputs give byte-identical output.

use serde::Serialize;

use crate::algebra::var_names;
use crate::blowup::{ResolutionNode, SurfacePoint};
use crate::conductors::DivisorInvariants;
use crate::cycles::{Cycle, LogCycle, SingularSupport, Span, Support};
use crate::geometry::{ChartConfig, Cleanliness, DegeneracyLoci, LogForm};

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FieldReport {
    pub p: u32,
    pub degree: u32,
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DivisorReport {
    pub divisor: String,
    pub sw: i64,
    pub dt: i64,
    #[serde(rename = "type")]
    pub kind: String,
    pub sw_dprime: i64,
    pub rsw: Option<String>,
    pub cform: Option<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ComponentReport {
    pub base: String,
    pub length: u32,
    pub outside_wild: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LocusReport {
    pub subset: Vec<String>,
    pub e: bool,
    pub generators: Vec<String>,
    pub components: Vec<ComponentReport>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ChartReport {
    pub datum: Vec<String>,
    pub boundary: Vec<String>,
    pub log_set: Vec<String>,
    pub divisors: Vec<DivisorReport>,
    pub cform: Option<String>,
    pub clean: Option<bool>,
    pub not_clean_along: Option<String>,
    pub witness: Vec<String>,
    pub loci: Option<Vec<LocusReport>>,
    pub e_empty: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct NodeReport {
    /// Chart coordinates chosen from the root, e.g. ["t1", "t2"].
    pub path: Vec<String>,
    pub center: Option<Vec<String>>,
    pub chart: ChartReport,
    pub children: Vec<NodeReport>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TreeReport {
    pub blowups: usize,
    pub depth: usize,
    pub leaves: usize,
    pub root: NodeReport,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TermReport {
    pub component: String,
    pub coefficient: i64,
    pub base: String,
    pub codim: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CycleReport {
    pub cc_log: String,
    pub cycle: String,
    pub terms: Vec<TermReport>,
    pub validity: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SupportReport {
    pub components: Vec<String>,
    pub validity: String,
    pub pure_dimension: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TraceReport {
    pub depth: usize,
    pub path: Vec<usize>,
    pub point: Vec<String>,
    pub r: usize,
    pub e: i64,
    pub mu: i64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PointReport {
    pub point: Vec<String>,
    pub r: usize,
    pub lambda: i64,
    pub s: i64,
    pub t: i64,
    pub ord_log: Vec<(String, u32)>,
    pub ord_plain: Vec<(String, u32)>,
    pub trace: Vec<TraceReport>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SurfaceReport {
    pub points: Vec<PointReport>,
    pub cycle: String,
    pub terms: Vec<TermReport>,
}

/// One pipeline run.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Report {
    pub mode: String,
    pub field: FieldReport,
    pub dim: usize,
    pub analysis: Option<ChartReport>,
    pub resolution: Option<TreeReport>,
    pub cycles: Option<CycleReport>,
    pub support: Option<SupportReport>,
    pub surface: Option<SurfaceReport>,
}

fn name(names: &[String], i: usize) -> String {
    names[i].clone()
}

fn divisor_report(v: &DivisorInvariants, names: &[String]) -> DivisorReport {
    DivisorReport {
        divisor: name(names, v.divisor),
        sw: v.sw,
        dt: v.dt,
        kind: v.kind.label().to_string(),
        sw_dprime: v.sw_dprime,
        rsw: v.rsw.as_ref().map(|g| g.to_string_with(names)),
        cform: v.cform.as_ref().map(|g| g.to_string_with(names)),
    }
}

/// Chart summary; `loci` is absent when its preconditions fail (see notes).
pub fn chart_report(
    cfg: &ChartConfig,
    form: Option<&LogForm>,
    clean: Option<&Cleanliness>,
    loci: Option<&DegeneracyLoci>,
    notes: Vec<String>,
) -> ChartReport {
    let names = var_names(cfg.dim());
    let (not_clean_along, witness) = match clean {
        Some(Cleanliness::NotClean { divisor, witness }) => (
            Some(name(&names, *divisor)),
            witness.iter().map(|w| w.to_string_with(&names)).collect(),
        ),
        _ => (None, vec![]),
    };
    ChartReport {
        datum: cfg.datum.components().iter().map(|c| c.to_string_with(&names)).collect(),
        boundary: cfg.boundary.iter().map(|&i| name(&names, i)).collect(),
        log_set: cfg.log_set.iter().map(|&i| name(&names, i)).collect(),
        divisors: cfg.invariants.iter().map(|v| divisor_report(v, &names)).collect(),
        cform: form.map(|f| f.to_string_with(&names)),
        clean: clean.map(|c| c.is_clean()),
        not_clean_along,
        witness,
        loci: loci.map(|l| {
            l.entries
                .iter()
                .map(|e| LocusReport {
                    subset: e.subset.iter().map(|&i| name(&names, i)).collect(),
                    e: e.e,
                    generators: e.generators.iter().map(|g| g.to_string_with(&names)).collect(),
                    components: e
                        .components
                        .iter()
                        .map(|c| ComponentReport {
                            base: c.base.to_string_with(&names),
                            length: c.multiplicity,
                            outside_wild: c.outside_wild.iter().map(|&i| name(&names, i)).collect(),
                        })
                        .collect(),
                })
                .collect()
        }),
        e_empty: loci.map(|l| l.e_empty()),
        notes,
    }
}

pub fn node_report(node: &ResolutionNode, path: Vec<String>, chart: ChartReport, children: Vec<NodeReport>) -> NodeReport {
    let names = var_names(node.config.dim());
    NodeReport {
        path,
        center: node.center.as_ref().map(|c| c.iter().map(|&i| name(&names, i)).collect()),
        chart,
        children,
    }
}

pub fn terms_report(c: &Cycle) -> Vec<TermReport> {
    let names = var_names(c.nvars);
    let mut v: Vec<TermReport> = c
        .terms
        .iter()
        .map(|(s, k)| TermReport {
            component: s.to_string_with(&names),
            coefficient: *k,
            base: s.base.to_string_with(&names),
            codim: s.base.codim(),
        })
        .collect();
    v.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.component.cmp(&b.component)));
    v
}

pub fn cycle_report(log: &LogCycle, c: &Cycle, validity: &str) -> CycleReport {
    let names = var_names(c.nvars);
    CycleReport {
        cc_log: log.to_string_with(&names),
        cycle: c.to_string_with(&names),
        terms: terms_report(c),
        validity: validity.to_string(),
    }
}

fn span_strings(spans: &[Span], nvars: usize) -> Vec<String> {
    let names = var_names(nvars);
    let mut v: Vec<(usize, String)> = spans.iter().map(|s| (s.base.codim(), s.to_string_with(&names))).collect();
    v.sort();
    v.into_iter().map(|x| x.1).collect()
}

pub fn support_report(ss: &SingularSupport, inverse: &Support, nvars: usize) -> SupportReport {
    SupportReport {
        components: span_strings(&ss.components, nvars),
        validity: ss.validity.to_string(),
        pure_dimension: inverse.pure_dimension,
    }
}

pub fn point_report(pt: &SurfacePoint, fmt_elem: impl Fn(u32) -> String) -> PointReport {
    let names = var_names(2);
    PointReport {
        point: pt.point.iter().map(|&x| fmt_elem(x)).collect(),
        r: pt.r,
        lambda: pt.lambda,
        s: pt.s,
        t: pt.t,
        ord_log: pt.ord_log.iter().map(|&(i, o)| (name(&names, i), o)).collect(),
        ord_plain: pt.ord_plain.iter().map(|&(i, o)| (name(&names, i), o)).collect(),
        trace: pt
            .trace
            .iter()
            .map(|s| TraceReport {
                depth: s.depth,
                path: s.path.clone(),
                point: s.point.iter().map(|&x| fmt_elem(x)).collect(),
                r: s.r,
                e: s.e,
                mu: s.mu,
            })
            .collect(),
    }
}

fn push_chart(out: &mut String, c: &ChartReport, indent: &str) {
    out.push_str(&format!("{indent}datum: ({})\n", c.datum.join(", ")));
    out.push_str(&format!("{indent}boundary: {{{}}}  log set: {{{}}}\n", c.boundary.join(", "), c.log_set.join(", ")));
    for d in &c.divisors {
        out.push_str(&format!(
            "{indent}  {}: sw = {}, dt = {}, type {}, sw'' = {}\n",
            d.divisor, d.sw, d.dt, d.kind, d.sw_dprime
        ));
        if let Some(r) = &d.rsw {
            out.push_str(&format!("{indent}    rsw = {r}\n"));
        }
        if let Some(r) = &d.cform {
            out.push_str(&format!("{indent}    char = {r}\n"));
        }
    }
    if let Some(f) = &c.cform {
        out.push_str(&format!("{indent}char^D' = {f}\n"));
    }
    match (c.clean, &c.not_clean_along) {
        (Some(true), _) => out.push_str(&format!("{indent}clean: yes\n")),
        (Some(false), Some(d)) => out.push_str(&format!("{indent}clean: no (along {d}; restricted numerators {})\n", c.witness.join(", "))),
        _ => {}
    }
    if let Some(loci) = &c.loci {
        for l in loci {
            let comps: Vec<String> = l.components.iter().map(|x| format!("{} (length {})", x.base, x.length)).collect();
            out.push_str(&format!(
                "{indent}B_{{{}}}: {}{}\n",
                l.subset.join(", "),
                if comps.is_empty() { "empty".to_string() } else { comps.join(", ") },
                if l.e { "  E = D" } else { "" }
            ));
        }
    }
    if let Some(e) = c.e_empty {
        out.push_str(&format!("{indent}E empty: {}\n", if e { "yes" } else { "no" }));
    }
    for n in &c.notes {
        out.push_str(&format!("{indent}note: {n}\n"));
    }
}

fn push_node(out: &mut String, n: &NodeReport, depth: usize) {
    let indent = "  ".repeat(depth);
    let path = if n.path.is_empty() { "root".to_string() } else { n.path.join(" > ") };
    out.push_str(&format!("{indent}chart {path}\n"));
    push_chart(out, &n.chart, &format!("{indent}  "));
    if let Some(c) = &n.center {
        out.push_str(&format!("{indent}  blow up V({})\n", c.join(", ")));
    }
    for ch in &n.children {
        push_node(out, ch, depth + 1);
    }
}

impl Report {
    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("mode: {}\n", self.mode));
        out.push_str(&format!("field: p = {}, degree {}\n", self.field.p, self.field.degree));
        out.push_str(&format!("dimension: {}\n", self.dim));
        if let Some(a) = &self.analysis {
            out.push_str("analysis:\n");
            push_chart(&mut out, a, "  ");
        }
        if let Some(t) = &self.resolution {
            out.push_str(&format!("resolution: {} blow-ups, depth {}, {} charts\n", t.blowups, t.depth, t.leaves));
            push_node(&mut out, &t.root, 1);
        }
        if let Some(c) = &self.cycles {
            out.push_str(&format!("CC^log = {}\n", c.cc_log));
            out.push_str(&format!("CC = {}\n", c.cycle));
            out.push_str(&format!("validity: {}\n", c.validity));
        }
        if let Some(s) = &self.support {
            out.push_str("SS =\n");
            for c in &s.components {
                out.push_str(&format!("  {c}\n"));
            }
            out.push_str(&format!("validity: {}\n", s.validity));
        }
        if let Some(s) = &self.surface {
            for p in &s.points {
                out.push_str(&format!(
                    "point ({}): r = {}, lambda = {}, s = {}, t = {}\n",
                    p.point.join(", "),
                    p.r,
                    p.lambda,
                    p.s,
                    p.t
                ));
                for st in &p.trace {
                    out.push_str(&format!("  blow-up at depth {}: e = {}, mu = {}\n", st.depth, st.e, st.mu));
                }
            }
            out.push_str(&format!("CC = {}\n", s.cycle));
        }
        out
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
