//! The global characteristic form on Z^{1/p}, its cleanliness, residues and
//! pointwise orders.

use std::fmt;

use super::ChartConfig;
use crate::algebra::{unit_ideal_test, var_names, Elem, Field, Poly, RationalSection};
use crate::conductors::{minus_fd, render_form};
use crate::error::{Error, Result};

/// char^{D'}(F) = (sum_k N_k e_k) / t^R, with e_k = dlog t_k for k in the log set
/// and dt_k otherwise. Numerators are reduced modulo the product of u_i, i in I_W.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogForm {
    pub log_set: Vec<usize>,
    pub twist: Vec<u32>,
    pub wild: Vec<usize>,
    pub numerators: Vec<Poly>,
}

impl LogForm {
    pub fn nvars(&self) -> usize {
        self.numerators.len()
    }

    pub fn field(&self) -> &Field {
        self.numerators[0].field()
    }

    pub fn basis_names(&self, names: &[String]) -> Vec<String> {
        (0..self.nvars())
            .map(|k| {
                if self.log_set.contains(&k) {
                    format!("dlog {}", names[k])
                } else {
                    format!("d{}", names[k])
                }
            })
            .collect()
    }

    /// The monomial t^R as text, parenthesized when it has several factors.
    pub fn denominator(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .twist
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(k, &r)| if r == 1 { names[k].clone() } else { format!("{}^{r}", names[k]) })
            .collect();
        match parts.len() {
            0 => String::new(),
            1 => parts[0].clone(),
            _ => format!("({})", parts.join("*")),
        }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let coeffs: Vec<RationalSection> = self.numerators.iter().cloned().map(RationalSection::from_poly).collect();
        render_form(&coeffs, &self.basis_names(names), &self.denominator(names))
    }
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars())))
    }
}

fn unit(d: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0i64; d];
    e[j] = 1;
    e
}

/// Build char^{D'} for the chart's log set; None when no divisor is wild.
pub fn assemble_cform(cfg: &ChartConfig) -> Result<Option<LogForm>> {
    let wild = cfg.wild();
    if wild.is_empty() {
        return Ok(None);
    }
    let d = cfg.dim();
    let f = cfg.field().clone();
    let r = cfg.twist();
    let tr: Vec<i64> = r.iter().map(|&x| x as i64).collect();
    let c = minus_fd(&cfg.datum);
    let mut nums = Vec::with_capacity(d);
    for (k, ck) in c.into_iter().enumerate() {
        let mut ck = ck;
        if cfg.in_log_set(k) {
            ck = ck.mul_laurent(&unit(d, k));
        }
        let ck = ck.mul_laurent(&tr);
        let poly = ck.as_poly().cloned().ok_or_else(|| {
            Error::diag(
                "filtration",
                format!("the coefficient at slot t{} keeps a pole after the twist", k + 1),
            )
        })?;
        nums.push(poly);
    }
    if f.p() == 2 {
        for &i in &wild {
            if cfg.in_log_set(i) || r[i] != 2 {
                continue;
            }
            let mut e = vec![0i64; d];
            for &k in &cfg.boundary {
                e[k] = if k == i { tr[k] } else { 2 * tr[k] };
            }
            let lead = cfg.datum.a(0).mul_laurent(&e);
            let poly = lead.as_poly().cloned().ok_or_else(|| {
                Error::diag("filtration", format!("a_0 has a pole beyond the twist near t{}", i + 1))
            })?;
            nums[i] = nums[i].add(&poly.pth_root());
        }
    }
    let numerators = nums.into_iter().map(|n| n.mod_product_of(&wild)).collect();
    Ok(Some(LogForm {
        log_set: cfg.log_set.clone(),
        twist: r,
        wild,
        numerators,
    }))
}

/// Result of the cleanliness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cleanliness {
    Clean,
    /// The form has a common zero on this divisor; the restricted numerators are the witness.
    NotClean { divisor: usize, witness: Vec<Poly> },
}

impl Cleanliness {
    pub fn is_clean(&self) -> bool {
        matches!(self, Cleanliness::Clean)
    }
}

/// The form is clean iff its numerators generate the unit ideal on every wild D_i.
pub fn is_clean(form: &LogForm) -> Cleanliness {
    for &i in &form.wild {
        if !unit_ideal_test(&form.numerators, &[i]) {
            return Cleanliness::NotClean {
                divisor: i,
                witness: form.numerators.iter().map(|n| n.set_zero(i)).collect(),
            };
        }
    }
    Cleanliness::Clean
}

/// xi_i = residue of the dlog t_i coefficient on D_i^{1/p}, for wild i in the log set.
pub fn xi_residue(form: &LogForm, i: usize) -> Result<Poly> {
    if !form.log_set.contains(&i) || !form.wild.contains(&i) {
        return Err(Error::invalid(format!("t{} is not a wild member of the log set", i + 1)));
    }
    Ok(form.numerators[i].set_zero(i))
}

/// ord of the form at a rational point x of a wild divisor D_i (orders counted in t).
pub fn ord_at_point(form: &LogForm, x: &[Elem], i: usize) -> Result<u32> {
    if !form.wild.contains(&i) {
        return Err(Error::invalid(format!("t{} is not a wild divisor", i + 1)));
    }
    if x.len() != form.nvars() {
        return Err(Error::invalid("point has the wrong number of coordinates"));
    }
    if x[i] != 0 {
        return Err(Error::invalid(format!("the point does not lie on t{} = 0", i + 1)));
    }
    let f = form.field().clone();
    let mut best: Option<u32> = None;
    for n in &form.numerators {
        let mut u = n.to_u_ring().set_zero(i);
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0 {
                u = u.translate(j, f.pth_root(xj));
            }
        }
        if let Some(k) = u.low_degree_raw() {
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    best.map(|b| b / f.p()).ok_or_else(|| {
        Error::diag("not-clean", format!("the form vanishes identically on t{} = 0", i + 1))
    })
}

/// Clean at x iff the form does not vanish at x on any wild divisor through x.
pub fn clean_at_point(form: &LogForm, x: &[Elem]) -> Result<bool> {
    for &i in &form.wild {
        if x[i] == 0 && ord_at_point(form, x, i)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
