//! Conic cycles in T*X: spans of covectors over closed subsets, their identity
//! test, and the cycle formulas built from the degeneracy loci.

pub mod formulas;

pub use formulas::{
    cc_log, normalize_on, omega, restrict_to_stratum, singular_support, surface_cc, tame_decomposition, tau_inverse_support,
    tau_shriek_cc, LogComponent, LogCycle, SingularSupport, Support, SurfaceCycle,
};

use std::fmt;

use crate::algebra::{var_names, Poly, RationalSection};
use crate::conductors::render_form;
use crate::geometry::Base;

/// The closure of the span of covectors `gens` (in the dt basis) over the generic point of `base`.
#[derive(Clone, Debug)]
pub struct Span {
    pub base: Base,
    pub gens: Vec<Vec<Poly>>,
}

fn dt(field: &crate::algebra::Field, d: usize, k: usize) -> Vec<Poly> {
    (0..d)
        .map(|j| if j == k { Poly::one(field, d) } else { Poly::zero(field, d) })
        .collect()
}

impl Span {
    /// The zero section T*_X X.
    pub fn zero_section(d: usize) -> Span {
        Span {
            base: Base::whole(d),
            gens: vec![],
        }
    }

    /// The conormal bundle of the base.
    pub fn conormal(field: &crate::algebra::Field, base: Base) -> Span {
        let d = base.nvars;
        let mut gens: Vec<Vec<Poly>> = base.coords.iter().map(|&k| dt(field, d, k)).collect();
        if let Some(h) = &base.hyper {
            gens.push((0..d).map(|j| h.derivative(j)).collect());
        }
        Span { base, gens }
    }

    /// Span of dt_k (k in `dts`) and the extra covectors.
    pub fn spanned(field: &crate::algebra::Field, base: Base, dts: &[usize], extra: Vec<Vec<Poly>>) -> Span {
        let d = base.nvars;
        let mut gens: Vec<Vec<Poly>> = dts.iter().map(|&k| dt(field, d, k)).collect();
        gens.extend(extra);
        Span { base, gens }
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars
    }

    /// Rank of the generators over the function field of the base.
    pub fn rank(&self) -> usize {
        rank(&self.base, &self.gens)
    }

    /// Dimension of the cone: dim base + generic fiber rank.
    pub fn dim(&self) -> usize {
        self.base.dim() + self.rank()
    }

    pub fn same_as(&self, other: &Span) -> bool {
        if self.base != other.base {
            return false;
        }
        let (ra, rb) = (self.rank(), other.rank());
        if ra != rb {
            return false;
        }
        let mut all = self.gens.clone();
        all.extend(other.gens.iter().cloned());
        rank(&self.base, &all) == ra
    }

    pub fn is_conormal(&self) -> bool {
        let f = match self.gens.iter().flatten().next() {
            Some(p) => p.field().clone(),
            None => return self.base.codim() == 0,
        };
        self.same_as(&Span::conormal(&f, self.base.clone()))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_conormal() {
            return match self.base.codim() {
                0 => "T*_X X".into(),
                _ => {
                    let b = self.base.to_string_with(names);
                    format!("T*_{{{}}}X", b)
                }
            };
        }
        let basis: Vec<String> = names.iter().map(|n| format!("d{n}")).collect();
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|g| {
                let cs: Vec<RationalSection> = g.iter().cloned().map(RationalSection::from_poly).collect();
                render_form(&cs, &basis, "")
            })
            .collect();
        format!("<{} / {}>", gens.join(", "), self.base.to_string_with(names))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars())))
    }
}

/// Normal form of a function on the base (modulo its coordinates and hypersurface).
struct Quotient {
    coords: Vec<usize>,
    modulus: Option<Poly>,
    radicial: bool,
}

impl Quotient {
    fn new(base: &Base, radicial: bool) -> Quotient {
        let modulus = base.hyper.as_ref().map(|h| if radicial { h.pth_root().to_u_ring() } else { h.clone() });
        Quotient {
            coords: base.coords.clone(),
            modulus,
            radicial,
        }
    }

    fn reduce(&self, f: &Poly) -> Poly {
        let f = if self.radicial { f.to_u_ring() } else { f.clone() };
        let f = f.set_zeros(self.coords.iter().copied());
        match &self.modulus {
            Some(h) => f.rem(h),
            None => f,
        }
    }
}

/// Generic rank by fraction-free elimination over k[base].
fn rank(base: &Base, gens: &[Vec<Poly>]) -> usize {
    let radicial = gens.iter().flatten().any(|p| p.scale() == 1);
    let q = Quotient::new(base, radicial);
    let mut pivots: Vec<(usize, Vec<Poly>)> = Vec::new();
    for g in gens {
        let mut row: Vec<Poly> = g.iter().map(|x| q.reduce(x)).collect();
        for (c, prow) in &pivots {
            if row[*c].is_zero() {
                continue;
            }
            let a = prow[*c].clone();
            let b = row[*c].clone();
            row = row
                .iter()
                .zip(prow)
                .map(|(x, y)| q.reduce(&x.mul(&a).sub(&y.mul(&b))))
                .collect();
        }
        if let Some(c) = row.iter().position(|x| !x.is_zero()) {
            pivots.push((c, row));
        }
    }
    pivots.len()
}

/// A Z-linear combination of spans with duplicates merged.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub nvars: usize,
    pub terms: Vec<(Span, i64)>,
}

impl Cycle {
    pub fn new(nvars: usize) -> Cycle {
        Cycle { nvars, terms: vec![] }
    }

    pub fn add(&mut self, span: Span, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|(s, _)| s.same_as(&span)) {
            t.1 += coeff;
        } else {
            self.terms.push((span, coeff));
        }
        self.terms.retain(|(_, c)| *c != 0);
    }

    pub fn add_cycle(&mut self, other: &Cycle, factor: i64) {
        for (s, c) in &other.terms {
            self.add(s.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: i64) -> Cycle {
        let mut out = Cycle::new(self.nvars);
        out.add_cycle(self, factor);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Equality of cycles (component identity up to span equality).
    pub fn same_as(&self, other: &Cycle) -> bool {
        let mut diff = self.clone();
        diff.add_cycle(other, -1);
        diff.is_zero()
    }

    pub fn coefficient_of(&self, span: &Span) -> i64 {
        self.terms.iter().find(|(s, _)| s.same_as(span)).map_or(0, |t| t.1)
    }

    pub fn support(&self) -> Vec<Span> {
        self.terms.iter().map(|(s, _)| s.clone()).collect()
    }

    /// Terms ordered by base dimension (largest first), then by their text.
    pub fn sorted_terms(&self, names: &[String]) -> Vec<(String, i64, usize)> {
        let mut v: Vec<(String, i64, usize)> = self
            .terms
            .iter()
            .map(|(s, c)| (s.to_string_with(names), *c, s.base.codim()))
            .collect();
        v.sort_by(|a, b| a.2.cmp(&b.2).then_with(|| a.0.cmp(&b.0)));
        v
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (s, c, _)) in self.sorted_terms(names).into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}", c.abs()));
            }
            out.push_str(&format!("[{s}]"));
        }
        out
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars)))
    }
}

/// Set equality of two supports.
pub fn same_support(a: &[Span], b: &[Span]) -> bool {
    a.iter().all(|x| b.iter().any(|y| x.same_as(y))) && b.iter().all(|y| a.iter().any(|x| x.same_as(y)))
}
