//! Witt vectors of rational sections.
//!
//! Components are listed as (a_{s-1}, ..., a_0); this is the usual order
//! (x_0, ..., x_{s-1}) with x_j = a_{s-1-j}, so a_i carries weight p^i.

use std::collections::HashMap;
use std::fmt;

use super::universal::{polynomials, ModPoly, Op};
use crate::algebra::{var_names, Field, RationalSection};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct WittVector {
    field: Field,
    nvars: usize,
    comps: Vec<RationalSection>,
}

/// How the Verschiebung treats the length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VMode {
    /// W_s -> W_{s+1}, nothing dropped.
    Extend,
    /// W_s -> W_s, the last listed component a_0 falls off.
    Fixed,
}

/// A filtration level along one divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// fil_n (log flavor).
    Log(i64),
    /// fil'_m (non-log flavor), m >= 1.
    NonLog(i64),
}

impl WittVector {
    /// Build from components in listing order (a_{s-1}, ..., a_0).
    pub fn new(field: &Field, nvars: usize, comps: Vec<RationalSection>) -> WittVector {
        for c in &comps {
            assert_eq!(c.nvars(), nvars, "component dimension mismatch");
        }
        WittVector {
            field: field.clone(),
            nvars,
            comps,
        }
    }

    pub fn zero(field: &Field, nvars: usize, s: usize) -> WittVector {
        WittVector::new(field, nvars, vec![RationalSection::zero(field, nvars); s])
    }

    /// The vector with a_i = x and all other components zero.
    pub fn single(field: &Field, nvars: usize, s: usize, i: usize, x: RationalSection) -> WittVector {
        let mut w = WittVector::zero(field, nvars, s);
        w.comps[s - 1 - i] = x;
        w
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Components in listing order (a_{s-1}, ..., a_0).
    pub fn components(&self) -> &[RationalSection] {
        &self.comps
    }

    /// a_i in the descending convention.
    pub fn a(&self, i: usize) -> &RationalSection {
        &self.comps[self.len() - 1 - i]
    }

    pub fn set_a(&mut self, i: usize, x: RationalSection) {
        let s = self.len();
        self.comps[s - 1 - i] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn apply(&self, other: &WittVector, op: Op) -> Result<WittVector> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "Witt length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        let s = self.len();
        if s == 0 {
            return Ok(self.clone());
        }
        let polys = polynomials(self.field.p() as u64, op, s);
        let vals: Vec<&RationalSection> = self.comps.iter().chain(other.comps.iter()).collect();
        let mut powers: HashMap<(usize, u32), RationalSection> = HashMap::new();
        let comps = polys.iter().map(|t| self.eval(t, &vals, &mut powers)).collect();
        Ok(WittVector::new(&self.field, self.nvars, comps))
    }

    fn eval(
        &self,
        t: &ModPoly,
        vals: &[&RationalSection],
        powers: &mut HashMap<(usize, u32), RationalSection>,
    ) -> RationalSection {
        let mut acc = RationalSection::zero(&self.field, self.nvars);
        'terms: for (e, c) in t {
            let mut term = RationalSection::constant(&self.field, self.nvars, *c);
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if vals[v].is_zero() {
                    continue 'terms;
                }
                let pw = powers
                    .entry((v, k))
                    .or_insert_with(|| vals[v].pow(k as u64))
                    .clone();
                term = term.mul(&pw);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.apply(other, Op::Add)
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.apply(other, Op::Sub)
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        self.apply(other, Op::Mul)
    }

    pub fn neg(&self) -> WittVector {
        WittVector::zero(&self.field, self.nvars, self.len())
            .sub(self)
            .expect("same length")
    }

    /// Componentwise p-th power.
    pub fn frobenius(&self) -> WittVector {
        WittVector::new(
            &self.field,
            self.nvars,
            self.comps.iter().map(|c| c.frobenius()).collect(),
        )
    }

    /// (F - 1)(b) = F(b) - b.
    pub fn artin_schreier(&self) -> WittVector {
        self.frobenius().sub(self).expect("same length")
    }

    pub fn verschiebung(&self, mode: VMode) -> WittVector {
        let mut comps = vec![RationalSection::zero(&self.field, self.nvars)];
        comps.extend(self.comps.iter().cloned());
        if mode == VMode::Fixed {
            comps.pop();
        }
        WittVector::new(&self.field, self.nvars, comps)
    }

    /// Apply a map to every component.
    pub fn map(&self, f: impl Fn(&RationalSection) -> RationalSection) -> WittVector {
        WittVector::new(&self.field, self.nvars, self.comps.iter().map(f).collect())
    }

    /// Fallible componentwise map.
    pub fn try_map(&self, f: impl Fn(&RationalSection) -> Option<RationalSection>) -> Option<WittVector> {
        let comps = self.comps.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(WittVector::new(&self.field, self.nvars, comps))
    }

    /// min_i p^i ord(a_i) along t_divisor; None for the zero vector.
    pub fn ord(&self, divisor: usize) -> Option<i64> {
        let p = self.field.p() as i64;
        (0..self.len())
            .filter_map(|i| self.a(i).ord(divisor).map(|o| p.pow(i as u32) * o))
            .min()
    }

    /// Weighted order of one component, p^i ord(a_i); None when a_i = 0.
    pub fn weighted_ord(&self, i: usize, divisor: usize) -> Option<i64> {
        let p = self.field.p() as i64;
        self.a(i).ord(divisor).map(|o| p.pow(i as u32) * o)
    }

    /// Membership in fil_n or fil'_m along one divisor.
    pub fn fil_member(&self, divisor: usize, level: Level) -> bool {
        match level {
            Level::Log(n) => self.ord(divisor).is_none_or(|o| o >= -n),
            Level::NonLog(m) => {
                assert!(m >= 1, "fil' is indexed by m >= 1");
                let sp = (ord_p(m, self.field.p() as i64) as usize).min(self.len());
                (0..self.len()).all(|i| {
                    let bound = if i >= sp { -(m - 1) } else { -m };
                    self.weighted_ord(i, divisor).is_none_or(|o| o >= bound)
                })
            }
        }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

/// The p-adic valuation of a nonzero integer.
pub fn ord_p(mut m: i64, p: i64) -> u32 {
    assert!(m != 0);
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    k
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars)))
    }
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self)
    }
}
