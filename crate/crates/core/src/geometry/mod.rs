//! Charts with coordinate boundary, the global characteristic form, cleanliness
//! and the degeneracy loci B and E.

pub mod form;
pub mod loci;

pub use form::{assemble_cform, clean_at_point, is_clean, ord_at_point, xi_residue, Cleanliness, LogForm};
pub use loci::{compute_loci, BComponent, Base, DegeneracyLoci, LocusEntry};

use crate::algebra::Field;
use crate::conductors::{certify_all, DivisorInvariants, DivisorType};
use crate::error::{Error, Result};
use crate::witt::WittVector;

/// A chart A^d with boundary D = union of V(t_i), i in `boundary`, a log set
/// D' (a subset of the boundary) and a certified datum.
#[derive(Debug, Clone)]
pub struct ChartConfig {
    pub datum: WittVector,
    pub boundary: Vec<usize>,
    pub log_set: Vec<usize>,
    pub declared_tame: Vec<usize>,
    /// Parallel to `boundary`.
    pub invariants: Vec<DivisorInvariants>,
}

fn sorted_unique(xs: &[usize], what: &str, d: usize) -> Result<Vec<usize>> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != xs.len() {
        return Err(Error::invalid(format!("{what} lists a coordinate twice")));
    }
    if let Some(&k) = v.iter().find(|&&k| k >= d) {
        return Err(Error::invalid(format!("{what} names t{} but the chart has dimension {d}", k + 1)));
    }
    Ok(v)
}

impl ChartConfig {
    /// Certify the datum along every boundary divisor.
    pub fn new(datum: WittVector, boundary: &[usize], log_set: &[usize], declared_tame: &[usize]) -> Result<ChartConfig> {
        let d = datum.nvars();
        if d == 0 {
            return Err(Error::invalid("the chart needs at least one coordinate"));
        }
        if datum.is_empty() {
            return Err(Error::invalid("the Witt vector needs at least one component"));
        }
        let boundary = sorted_unique(boundary, "boundary", d)?;
        let log_set = sorted_unique(log_set, "log set", d)?;
        let declared_tame = sorted_unique(declared_tame, "tame list", d)?;
        for (what, set) in [("log set", &log_set), ("tame list", &declared_tame)] {
            if let Some(k) = set.iter().find(|k| !boundary.contains(k)) {
                return Err(Error::invalid(format!("{what} member t{} is not a boundary divisor", k + 1)));
            }
        }
        let (datum, invariants) = certify_all(&datum, &boundary, &log_set)?;
        let cfg = ChartConfig {
            datum,
            boundary,
            log_set,
            declared_tame,
            invariants,
        };
        if let Some(k) = cfg.declared_tame.iter().find(|&&k| cfg.inv(k).sw > 0) {
            return Err(Error::diag(
                "declared-tame-is-wild",
                format!("t{} was declared tame but has Swan conductor {}", k + 1, cfg.inv(*k).sw),
            ));
        }
        Ok(cfg)
    }

    pub fn field(&self) -> &Field {
        self.datum.field()
    }
    pub fn dim(&self) -> usize {
        self.datum.nvars()
    }
    pub fn p(&self) -> u32 {
        self.field().p()
    }

    /// Invariants of a boundary divisor.
    pub fn inv(&self, i: usize) -> &DivisorInvariants {
        let k = self
            .boundary
            .iter()
            .position(|&b| b == i)
            .unwrap_or_else(|| panic!("t{} is not a boundary divisor", i + 1));
        &self.invariants[k]
    }

    pub fn in_log_set(&self, i: usize) -> bool {
        self.log_set.contains(&i)
    }

    fn of_kind(&self, keep: impl Fn(DivisorType) -> bool) -> Vec<usize> {
        self.invariants.iter().filter(|v| keep(v.kind)).map(|v| v.divisor).collect()
    }

    /// I_T.
    pub fn tame(&self) -> Vec<usize> {
        self.of_kind(|k| k == DivisorType::Tame)
    }
    /// I_W.
    pub fn wild(&self) -> Vec<usize> {
        self.of_kind(|k| k != DivisorType::Tame)
    }
    /// I_I.
    pub fn type_i(&self) -> Vec<usize> {
        self.of_kind(|k| k == DivisorType::I)
    }
    /// I_II.
    pub fn type_ii(&self) -> Vec<usize> {
        self.of_kind(|k| k == DivisorType::II)
    }

    /// I_I union I_T, the log set used by the resolution.
    pub fn auto_log_set(&self) -> Vec<usize> {
        self.of_kind(|k| k != DivisorType::II)
    }

    /// Same datum and invariants with another log set.
    pub fn with_log_set(&self, log_set: &[usize]) -> Result<ChartConfig> {
        let log_set = sorted_unique(log_set, "log set", self.dim())?;
        if let Some(k) = log_set.iter().find(|k| !self.boundary.contains(k)) {
            return Err(Error::invalid(format!("log set member t{} is not a boundary divisor", k + 1)));
        }
        let mut out = self.clone();
        for v in &mut out.invariants {
            v.sw_dprime = if log_set.contains(&v.divisor) { v.sw } else { v.dt };
        }
        out.log_set = log_set;
        Ok(out)
    }

    /// The twist R = sum sw''_k D_k as an exponent vector over all coordinates.
    pub fn twist(&self) -> Vec<u32> {
        let mut r = vec![0u32; self.dim()];
        for v in &self.invariants {
            r[v.divisor] = v.sw_dprime as u32;
        }
        r
    }

    /// Tame divisors must lie in the log set for the loci and cycle formulas.
    pub fn check_tame_in_log_set(&self) -> Result<()> {
        if let Some(k) = self.tame().into_iter().find(|k| !self.in_log_set(*k)) {
            return Err(Error::diag(
                "tame-outside-log-set",
                format!("tame divisor t{} must belong to the log set", k + 1),
            ));
        }
        Ok(())
    }
}
