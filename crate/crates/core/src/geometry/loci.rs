//! The degeneracy loci B_{I''} and E_{I''} of the residues xi_i.

use std::fmt;

use super::form::{is_clean, xi_residue, Cleanliness, LogForm};
use super::ChartConfig;
use crate::algebra::{gcd, gcd_and_refine, valuation, var_names, Poly};
use crate::error::{Error, Result};
use crate::par::maybe_par_map;

/// An integral-or-square-free closed subset V(t_coords, hyper) of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    pub nvars: usize,
    pub coords: Vec<usize>,
    /// A monic polynomial free of the coordinate variables.
    pub hyper: Option<Poly>,
}

impl Base {
    pub fn whole(nvars: usize) -> Base {
        Base {
            nvars,
            coords: vec![],
            hyper: None,
        }
    }

    pub fn stratum(nvars: usize, coords: &[usize]) -> Base {
        let mut coords = coords.to_vec();
        coords.sort_unstable();
        coords.dedup();
        Base {
            nvars,
            coords,
            hyper: None,
        }
    }

    /// V(coords, h); a hypersurface that is a single coordinate joins the coordinates.
    pub fn with_hyper(nvars: usize, coords: &[usize], h: Poly) -> Base {
        let h = h.set_zeros(coords.iter().copied()).monic();
        if h.len() == 1 {
            let (e, _) = h.lex_lead().unwrap();
            if e.iter().sum::<u32>() == 1 {
                let m = e.iter().position(|&x| x == 1).unwrap();
                let mut c = coords.to_vec();
                c.push(m);
                return Base::stratum(nvars, &c);
            }
        }
        let mut base = Base::stratum(nvars, coords);
        base.hyper = Some(h);
        base
    }

    pub fn codim(&self) -> usize {
        self.coords.len() + usize::from(self.hyper.is_some())
    }

    pub fn dim(&self) -> usize {
        self.nvars - self.codim()
    }

    pub fn contains_divisor(&self, i: usize) -> bool {
        self.coords.contains(&i)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.codim() == 0 {
            return "X".into();
        }
        let mut parts: Vec<String> = self.coords.iter().map(|&k| names[k].clone()).collect();
        if let Some(h) = &self.hyper {
            parts.push(h.to_string_with(names));
        }
        format!("V({})", parts.join(", "))
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars)))
    }
}

/// One irreducible-up-to-square-free component of B_{I''}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BComponent {
    pub base: Base,
    /// The length l_p: the minimal order of the residues along the component.
    pub multiplicity: u32,
    /// Wild divisors outside the log set that contain the component.
    pub outside_wild: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusEntry {
    pub subset: Vec<usize>,
    /// E_{I''} is all of D_{I''}.
    pub e: bool,
    /// Restricted residues xi_i|_{D_{I''}}, i in I'' and wild.
    pub generators: Vec<Poly>,
    pub components: Vec<BComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyLoci {
    pub entries: Vec<LocusEntry>,
}

impl DegeneracyLoci {
    pub fn e_empty(&self) -> bool {
        self.entries.iter().all(|e| !e.e)
    }

    /// Subsets I'' with E_{I''} nonempty.
    pub fn e_subsets(&self) -> Vec<&[usize]> {
        self.entries.iter().filter(|e| e.e).map(|e| e.subset.as_slice()).collect()
    }
}

/// All subsets of `set`, by size and then lexicographically.
pub fn subsets(set: &[usize]) -> Vec<Vec<usize>> {
    let n = set.len();
    let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (0..n).filter(|b| mask >> b & 1 == 1).map(|b| set[b]).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Split off linear factors u_j - c with c in F_q (with repetition) from a polynomial in one variable.
pub fn split_rational_roots(h: &Poly) -> Vec<Poly> {
    let radicial = h.scale() == 1;
    let mut rest = if radicial { h.to_u_ring() } else { h.clone() };
    let used: Vec<usize> = (0..rest.nvars()).filter(|&j| rest.uses_var(j)).collect();
    if used.len() != 1 || rest.degree_in(used[0]) == Some(1) {
        return vec![h.clone()];
    }
    let j = used[0];
    let f = rest.field().clone();
    let mut out = Vec::new();
    let mut x = vec![0; rest.nvars()];
    for c in f.elements() {
        x[j] = c;
        while !rest.is_constant() && rest.eval(&x) == 0 {
            let lin = Poly::var(&f, rest.nvars(), j).sub(&Poly::constant(&f, rest.nvars(), c));
            rest = rest.div_exact(&lin).expect("root gives a linear factor");
            out.push(lin);
        }
    }
    if !rest.is_constant() {
        out.push(rest.monic());
    }
    if radicial {
        out.into_iter().map(Poly::from_u_ring).collect()
    } else {
        out
    }
}

/// The image in X of a (possibly radicial) hypersurface of Z^{1/p}.
fn reduced_image(h: &Poly) -> Poly {
    if h.scale() == 1 {
        h.frobenius().monic()
    } else {
        h.monic()
    }
}

fn entry_for(cfg: &ChartConfig, form: &LogForm, subset: &[usize]) -> Result<LocusEntry> {
    let d = cfg.dim();
    let wild = cfg.wild();
    let outside_wild: Vec<usize> = wild.iter().copied().filter(|i| !cfg.in_log_set(*i)).collect();
    let wild_in: Vec<usize> = subset.iter().copied().filter(|i| wild.contains(i)).collect();
    if wild_in.is_empty() {
        let components = outside_wild
            .iter()
            .map(|&i| {
                let mut c = subset.to_vec();
                c.push(i);
                BComponent {
                    base: Base::stratum(d, &c),
                    multiplicity: 1,
                    outside_wild: vec![i],
                }
            })
            .collect();
        return Ok(LocusEntry {
            subset: subset.to_vec(),
            e: false,
            generators: vec![],
            components,
        });
    }
    let mut generators = Vec::new();
    for &i in &wild_in {
        generators.push(xi_residue(form, i)?.set_zeros(subset.iter().copied()));
    }
    let nonzero: Vec<Poly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(LocusEntry {
            subset: subset.to_vec(),
            e: true,
            generators,
            components: vec![],
        });
    }
    let mut g = nonzero.iter().skip(1).fold(nonzero[0].monic(), |acc, x| gcd(&acc, x));
    for &k in cfg.log_set.iter().filter(|k| !subset.contains(k)) {
        let t = Poly::var(cfg.field(), d, k);
        while let Some(q) = g.div_exact(&t) {
            g = q;
        }
    }
    let mut components = Vec::new();
    if !g.is_constant() {
        let refined = gcd_and_refine(&[g])?;
        let mut factors: Vec<Poly> = Vec::new();
        for h in &refined.factors {
            factors.extend(split_rational_roots(h));
        }
        for h in factors {
            let ell = nonzero.iter().map(|x| valuation(x, &h)).min().unwrap();
            let base = Base::with_hyper(d, subset, reduced_image(&h));
            let ow = outside_wild.iter().copied().filter(|&i| base.contains_divisor(i)).collect();
            components.push(BComponent {
                base,
                multiplicity: ell,
                outside_wild: ow,
            });
        }
    }
    components.sort_by_key(|c| (c.base.coords.clone(), c.base.to_string()));
    Ok(LocusEntry {
        subset: subset.to_vec(),
        e: false,
        generators,
        components,
    })
}

/// B_{I''} and E_{I''} for every I'' in the log set. Needs a clean form and I_T in I'.
pub fn compute_loci(cfg: &ChartConfig, form: &LogForm) -> Result<DegeneracyLoci> {
    cfg.check_tame_in_log_set()?;
    if let Cleanliness::NotClean { divisor, .. } = is_clean(form) {
        return Err(Error::diag(
            "not-clean",
            format!("the ramification is not clean along t{}", divisor + 1),
        ));
    }
    let subs = subsets(&cfg.log_set);
    let entries = maybe_par_map(&subs, |s| entry_for(cfg, form, s))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    for e in &entries {
        if e.subset.len() == 1 && cfg.inv(e.subset[0]).kind == crate::conductors::DivisorType::II && !e.e {
            return Err(Error::diag(
                "consistency",
                format!("type II divisor t{} in the log set must have E = D", e.subset[0] + 1),
            ));
        }
    }
    Ok(DegeneracyLoci { entries })
}
