//! The graded maps phi (log) and phi' (non-log) at the generic point of one
//! boundary divisor, and the certified Swan conductor / total dimension.

use crate::algebra::{var_names, RationalSection};
use crate::error::{Error, Result};
use crate::witt::{Level, WittVector};

/// Reduction attempts before giving up on a representative.
pub const REDUCTION_CAP: usize = 64;

/// Which basis vector sits at the divisor's own slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// dlog t_j at the divisor slot.
    Log,
    /// dt_j at the divisor slot.
    NonLog,
}

/// A graded 1-form germ along D_j: sum of coeffs[k] * (dlog t_j or dt_k), divided by t_j^twist.
/// Coefficients live on D_j (or its radicial cover), i.e. t_j has been set to 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Germ {
    pub divisor: usize,
    pub flavor: Flavor,
    pub twist: i64,
    pub coeffs: Vec<RationalSection>,
}

impl Germ {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let basis: Vec<String> = (0..self.coeffs.len())
            .map(|k| {
                if k == self.divisor && self.flavor == Flavor::Log {
                    format!("dlog {}", names[k])
                } else {
                    format!("d{}", names[k])
                }
            })
            .collect();
        let den = match self.twist {
            0 => String::new(),
            1 => names[self.divisor].clone(),
            n => format!("{}^{n}", names[self.divisor]),
        };
        render_form(&self.coeffs, &basis, &den)
    }
}

impl std::fmt::Display for Germ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.coeffs.len())))
    }
}

/// Render sum c_k * basis_k, optionally over a monomial label.
pub fn render_form(coeffs: &[RationalSection], basis: &[String], den: &str) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if c.num().len() == 1 => (true, rest.to_string()),
            _ => (false, s),
        };
        let multi = c.num().len() > 1 || body.contains('/');
        let text = if body == "1" {
            b.clone()
        } else if multi {
            format!("({body})*{b}")
        } else {
            format!("{body}*{b}")
        };
        parts.push((neg, text));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, t)) in parts.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(t);
    }
    if den.is_empty() {
        out
    } else if parts.len() > 1 || out.starts_with('-') {
        format!("({out})/{den}")
    } else {
        format!("{out}/{den}")
    }
}

/// -F^{s-1} d a = -sum_i a_i^{p^i - 1} d a_i, coefficients in the dt basis.
pub fn minus_fd(a: &WittVector) -> Vec<RationalSection> {
    let f = a.field().clone();
    let d = a.nvars();
    let p = f.p() as u64;
    let mut out = vec![RationalSection::zero(&f, d); d];
    for i in 0..a.len() {
        let ai = a.a(i);
        if ai.is_zero() {
            continue;
        }
        let w = ai.pow(p.pow(i as u32) - 1);
        for (k, dk) in ai.differential().into_iter().enumerate() {
            out[k] = out[k].sub(&w.mul(&dk));
        }
    }
    out
}

fn twisted_restriction(coeffs: Vec<RationalSection>, j: usize, n: i64, what: &str) -> Result<Vec<RationalSection>> {
    let d = coeffs.len();
    let mut e = vec![0i64; d];
    e[j] = n;
    coeffs
        .into_iter()
        .map(|c| {
            c.mul_laurent(&e).restrict(j).ok_or_else(|| {
                Error::diag(
                    "filtration",
                    format!("{what}: the form has a pole beyond the twist along t{}", j + 1),
                )
            })
        })
        .collect()
}

/// phi^{(n)}(a) along D_j, for a in fil_n.
pub fn phi_log(a: &WittVector, n: i64, j: usize) -> Result<Germ> {
    if !a.fil_member(j, Level::Log(n)) {
        return Err(Error::diag(
            "filtration",
            format!("datum is not in fil_{n} along t{}", j + 1),
        ));
    }
    let mut c = minus_fd(a);
    let tj = RationalSection::laurent(a.field(), &unit(a.nvars(), j), 1);
    c[j] = c[j].mul(&tj);
    Ok(Germ {
        divisor: j,
        flavor: Flavor::Log,
        twist: n,
        coeffs: twisted_restriction(c, j, n, "phi_log")?,
    })
}

/// phi'^{(m)}(a) along D_j, for a in fil'_m, including the (m, p) = (2, 2) correction.
pub fn phi_nonlog(a: &WittVector, m: i64, j: usize) -> Result<Germ> {
    if !a.fil_member(j, Level::NonLog(m)) {
        return Err(Error::diag(
            "filtration",
            format!("datum is not in fil'_{m} along t{}", j + 1),
        ));
    }
    let mut coeffs = twisted_restriction(minus_fd(a), j, m, "phi_nonlog")?;
    if m == 2 && a.field().p() == 2 && !a.is_empty() {
        let mut e = vec![0i64; a.nvars()];
        e[j] = 2;
        let lead = a.a(0).mul_laurent(&e).restrict(j).ok_or_else(|| {
            Error::diag("filtration", "a_0 has a pole of order > 2")
        })?;
        coeffs[j] = coeffs[j].add(&lead.pth_root());
    }
    Ok(Germ {
        divisor: j,
        flavor: Flavor::NonLog,
        twist: m,
        coeffs,
    })
}

fn unit(d: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0i64; d];
    e[j] = 1;
    e
}

/// Divisor type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorType {
    Tame,
    I,
    II,
}

impl DivisorType {
    pub fn label(self) -> &'static str {
        match self {
            DivisorType::Tame => "tame",
            DivisorType::I => "I",
            DivisorType::II => "II",
        }
    }
}

/// Certified invariants of one divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorInvariants {
    pub divisor: usize,
    pub sw: i64,
    pub dt: i64,
    pub kind: DivisorType,
    /// sw if the divisor is in the log set, dt otherwise.
    pub sw_dprime: i64,
    pub rsw: Option<Germ>,
    pub cform: Option<Germ>,
}

/// The leading terms of a_i along t_j that are p-th powers of Laurent monomials,
/// returned as the roots b with F(b) equal to the term.
fn pth_power_leading_terms(a: &WittVector, i: usize, j: usize) -> Vec<RationalSection> {
    let ai = a.a(i);
    let Some(ord) = ai.ord(j) else { return vec![] };
    let f = ai.field();
    let p = f.p() as i64;
    let mut out = Vec::new();
    for (e, &c) in ai.num().terms() {
        let expo: Vec<i64> = e
            .iter()
            .zip(ai.den())
            .map(|(&x, &y)| x as i64 - y as i64)
            .collect();
        if expo[j] != ord || ai.scale() != 0 {
            continue;
        }
        if expo.iter().all(|x| x.rem_euclid(p) == 0) {
            let root: Vec<i64> = expo.iter().map(|x| x / p).collect();
            out.push(RationalSection::laurent(f, &root, f.pth_root(c)));
        }
    }
    out
}

/// a - (F - 1)(b) with b concentrated in component a_i.
pub fn subtract_artin_schreier(a: &WittVector, i: usize, b: RationalSection) -> WittVector {
    let bw = WittVector::single(a.field(), a.nvars(), a.len(), i, b);
    a.sub(&bw.artin_schreier()).expect("same length")
}

/// One log-reduction step along D_j at level n: remove a p-th-power leading monomial
/// of weighted order -n. None if no such monomial exists.
pub fn reduce_log_step(a: &WittVector, n: i64, j: usize) -> Option<WittVector> {
    for i in 0..a.len() {
        if a.weighted_ord(i, j) != Some(-n) {
            continue;
        }
        if let Some(b) = pth_power_leading_terms(a, i, j).into_iter().next() {
            return Some(subtract_artin_schreier(a, i, b));
        }
    }
    None
}

/// One step towards fil'_n along D_j: remove an offending top-component monomial.
/// Err when an offending monomial is not a p-th power.
pub fn reduce_nonlog_step(a: &WittVector, n: i64, j: usize) -> Result<Option<WittVector>> {
    let p = a.field().p() as i64;
    let sp = (crate::witt::ord_p(n, p) as usize).min(a.len());
    for i in sp..a.len() {
        if a.weighted_ord(i, j).is_none_or(|o| o >= -(n - 1)) {
            continue;
        }
        return match pth_power_leading_terms(a, i, j).into_iter().next() {
            Some(b) => Ok(Some(subtract_artin_schreier(a, i, b))),
            None => Err(unreduced(j)),
        };
    }
    Ok(None)
}

fn unreduced(j: usize) -> Error {
    Error::diag(
        "unreduced-representative",
        format!(
            "the datum is not in a certifiable form along t{}; rewrite it modulo (F-1)W",
            j + 1
        ),
    )
}

/// Certify sw along D_j, reducing the representative when phi vanishes.
/// Returns the (possibly rewritten) datum and sw.
pub fn certify_sw(a: &WittVector, j: usize) -> Result<(WittVector, i64)> {
    let mut a = a.clone();
    for _ in 0..REDUCTION_CAP {
        let n = a.ord(j).map_or(0, |o| (-o).max(0));
        if n == 0 {
            return Ok((a, 0));
        }
        if !phi_log(&a, n, j)?.is_zero() {
            return Ok((a, n));
        }
        match reduce_log_step(&a, n, j) {
            Some(next) => a = next,
            None => return Err(unreduced(j)),
        }
    }
    Err(unreduced(j))
}

/// Decide dt along D_j given a certified sw = n >= 1; rewrites the datum into fil'_n for type II.
pub fn certify_dt(a: &WittVector, n: i64, j: usize) -> Result<(WittVector, i64)> {
    if !phi_nonlog(a, n + 1, j)?.is_zero() {
        return Ok((a.clone(), n + 1));
    }
    let mut a = a.clone();
    for _ in 0..REDUCTION_CAP {
        match reduce_nonlog_step(&a, n, j)? {
            Some(next) => a = next,
            None => {
                if n < 2 || phi_nonlog(&a, n, j)?.is_zero() {
                    return Err(unreduced(j));
                }
                return Ok((a, n));
            }
        }
    }
    Err(unreduced(j))
}

/// Certified invariants of a single divisor (local computation).
pub fn compute_invariants(a: &WittVector, j: usize, in_log_set: bool) -> Result<(WittVector, DivisorInvariants)> {
    let (a, sw) = certify_sw(a, j)?;
    if sw == 0 {
        return Ok((
            a,
            DivisorInvariants {
                divisor: j,
                sw: 0,
                dt: 1,
                kind: DivisorType::Tame,
                sw_dprime: if in_log_set { 0 } else { 1 },
                rsw: None,
                cform: None,
            },
        ));
    }
    let (a, dt) = certify_dt(&a, sw, j)?;
    let rsw = phi_log(&a, sw, j)?;
    let cform = phi_nonlog(&a, dt, j)?;
    if rsw.is_zero() || cform.is_zero() {
        return Err(unreduced(j));
    }
    let kind = if dt == sw + 1 { DivisorType::I } else { DivisorType::II };
    Ok((
        a,
        DivisorInvariants {
            divisor: j,
            sw,
            dt,
            kind,
            sw_dprime: if in_log_set { sw } else { dt },
            rsw: Some(rsw),
            cform: Some(cform),
        },
    ))
}
