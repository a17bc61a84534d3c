//! Sparse multivariate polynomials over F_q with an optional radicial scale.
//!
//! A polynomial with `scale == 1` stores raw exponents `e` meaning t^{e/p}, i.e. it
//! is an ordinary polynomial in u = t^{1/p}. Every algorithm below works on raw
//! exponents; mixing scales promotes the scale-0 operand (e -> p e).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::{Elem, Field};

pub type Exp = Vec<u32>;

#[derive(Clone)]
pub struct Poly {
    field: Field,
    nvars: usize,
    scale: u8,
    terms: BTreeMap<Exp, Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        if self.scale == other.scale {
            return self.terms == other.terms;
        }
        let (a, b) = (self.promoted(), other.promoted());
        a.terms == b.terms
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn zero(field: &Field, nvars: usize) -> Poly {
        Poly {
            field: field.clone(),
            nvars,
            scale: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: Elem) -> Poly {
        let mut p = Poly::zero(field, nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: &Field, nvars: usize) -> Poly {
        Poly::constant(field, nvars, 1)
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(field, e, 1)
    }

    pub fn monomial(field: &Field, exp: Exp, c: Elem) -> Poly {
        let mut p = Poly::zero(field, exp.len());
        if c != 0 {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Build from raw terms at a given scale; zero coefficients are dropped and
    /// repeated exponents are summed.
    pub fn from_terms(field: &Field, nvars: usize, scale: u8, terms: impl IntoIterator<Item = (Exp, Elem)>) -> Poly {
        let mut p = Poly::zero(field, nvars);
        p.scale = scale;
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p.normalized()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn scale(&self) -> u8 {
        self.scale
    }
    pub fn terms(&self) -> &BTreeMap<Exp, Elem> {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Elem {
        self.terms.get(&vec![0; self.nvars]).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, e: Exp, c: Elem) {
        if c == 0 {
            return;
        }
        let f = self.field.clone();
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = f.add(*v, c);
                if *v == 0 {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Scale-1 copy (raw exponents multiplied by p when the input is scale 0).
    pub fn promoted(&self) -> Poly {
        if self.scale == 1 {
            return self.clone();
        }
        let p = self.field.p();
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            scale: 1,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|&x| x * p).collect(), c))
                .collect(),
        }
    }

    /// Demote scale-1 values whose exponents are all divisible by p.
    pub fn normalized(mut self) -> Poly {
        if self.scale == 1 {
            let p = self.field.p();
            if self.terms.keys().all(|e| e.iter().all(|&x| x % p == 0)) {
                self.terms = std::mem::take(&mut self.terms)
                    .into_iter()
                    .map(|(e, c)| (e.iter().map(|&x| x / p).collect(), c))
                    .collect();
                self.scale = 0;
            }
        }
        if self.terms.is_empty() {
            self.scale = 0;
        }
        self
    }

    /// Reinterpret raw exponents at scale 1 without changing them (t-polynomial read in u).
    pub fn as_raw_scale1(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            scale: 1,
            terms: self.terms.clone(),
        }
    }

    /// Bring two operands to a common scale.
    pub fn aligned(a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert_eq!(a.nvars, b.nvars, "dimension mismatch");
        if a.scale == b.scale {
            (a.clone(), b.clone())
        } else {
            (a.promoted(), b.promoted())
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.scale != other.scale {
            let (a, b) = Poly::aligned(self, other);
            return a.add(&b);
        }
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out.normalized()
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.scale != other.scale {
            let (a, b) = Poly::aligned(self, other);
            return a.mul(&b);
        }
        let f = &self.field;
        let mut out = Poly::zero(f, self.nvars);
        out.scale = self.scale;
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, f.mul(c1, c2));
            }
        }
        out.normalized()
    }

    pub fn scale_by(&self, c: Elem) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field, self.nvars);
        }
        let f = &self.field;
        Poly {
            field: f.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self.terms.iter().map(|(e, &v)| (e.clone(), f.mul(v, c))).collect(),
        }
    }

    /// Multiply by the raw monomial u^m (or t^m at scale 0).
    pub fn mul_raw_monomial(&self, m: &[u32]) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c))
                .collect(),
        }
    }

    /// Multiply by the honest monomial t^m (integer exponents).
    pub fn mul_t_monomial(&self, m: &[u32]) -> Poly {
        if self.scale == 0 {
            self.mul_raw_monomial(m)
        } else {
            let p = self.field.p();
            let raw: Vec<u32> = m.iter().map(|x| x * p).collect();
            self.mul_raw_monomial(&raw)
        }
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field, self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Frobenius: f -> f^p, computed termwise.
    pub fn frobenius(&self) -> Poly {
        let f = &self.field;
        let p = f.p();
        Poly {
            field: f.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|x| x * p).collect(), f.pow(c, p as u64)))
                .collect(),
        }
        .normalized()
    }

    /// The unique p-th root. Scale-0 input gives a scale-1 result unless every
    /// exponent is divisible by p. Scale-1 input must have exponents divisible by p.
    pub fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p();
        if self.scale == 1 {
            assert!(
                self.terms.keys().all(|e| e.iter().all(|x| x % p == 0)),
                "p-th root beyond one radicial level"
            );
            let terms = self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|x| x / p).collect(), f.pth_root(c)));
            return Poly::from_terms(f, self.nvars, 1, terms);
        }
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), f.pth_root(c)));
        Poly::from_terms(f, self.nvars, 1, terms)
    }

    /// Substitute 0 for the given variable.
    pub fn set_zero(&self, i: usize) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == 0)
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
        .normalized()
    }

    pub fn set_zeros(&self, vars: impl IntoIterator<Item = usize>) -> Poly {
        let vars: Vec<usize> = vars.into_iter().collect();
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().all(|&i| e[i] == 0))
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
        .normalized()
    }

    /// Drop every term whose raw exponent is positive in all listed variables
    /// (reduction modulo the product of those variables).
    pub fn mod_product_of(&self, vars: &[usize]) -> Poly {
        if vars.is_empty() {
            return Poly::zero(&self.field, self.nvars);
        }
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !vars.iter().all(|&i| e[i] > 0))
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
        .normalized()
    }

    /// Minimal raw exponent of variable i over all terms (None for zero).
    pub fn raw_valuation(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Divide by u_i^k (raw); panics if not divisible.
    pub fn div_raw_var_power(&self, i: usize, k: u32) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            scale: self.scale,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| {
                    let mut e = e.clone();
                    assert!(e[i] >= k, "monomial division not exact");
                    e[i] -= k;
                    (e, c)
                })
                .collect(),
        }
        .normalized()
    }

    /// Partial derivative with respect to raw variable i (d/du_i at scale 1).
    pub fn raw_derivative(&self, i: usize) -> Poly {
        let f = &self.field;
        let mut out = Poly::zero(f, self.nvars);
        out.scale = self.scale;
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let k = f.from_int(e[i] as i64);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, f.mul(c, k));
        }
        out
    }

    /// d/dt_i of a scale-0 polynomial.
    pub fn derivative(&self, i: usize) -> Poly {
        assert_eq!(self.scale, 0, "derivative of a radicial section");
        self.raw_derivative(i).normalized()
    }

    pub fn total_degree_raw(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total raw degree over the terms.
    pub fn low_degree_raw(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Substitute raw variable i -> u_i + c (t_i + c at scale 0).
    pub fn translate(&self, i: usize, c: Elem) -> Poly {
        if c == 0 || self.is_zero() {
            return self.clone();
        }
        if self.scale == 1 {
            return self.to_u_ring().translate(i, c).from_u_ring();
        }
        let f = &self.field;
        let mut out = Poly::zero(f, self.nvars);
        let mut rows: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
        for (e, &coef) in &self.terms {
            let k = e[i];
            let row = rows.entry(k).or_insert_with(|| binomial_row(f, k, c)).clone();
            for (j, &b) in row.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let mut ee = e.clone();
                ee[i] = j as u32;
                out.add_term(ee, f.mul(coef, b));
            }
        }
        out
    }

    /// Raw exponents read as an ordinary polynomial in u (scale dropped after promotion).
    pub fn to_u_ring(&self) -> Poly {
        let mut p = self.promoted();
        p.scale = 0;
        p
    }

    /// Inverse of `to_u_ring`.
    pub fn from_u_ring(mut self) -> Poly {
        if self.terms.is_empty() {
            return self;
        }
        self.scale = 1;
        self.normalized()
    }

    /// Apply a monomial substitution on raw exponents: u_j -> prod_k u_k^{m[j][k]}.
    pub fn substitute_monomial(&self, m: &[Vec<u32>]) -> Poly {
        let f = &self.field;
        let mut out = Poly::zero(f, self.nvars);
        out.scale = self.scale;
        for (e, &c) in &self.terms {
            let mut ne = vec![0u32; self.nvars];
            for (j, &ej) in e.iter().enumerate() {
                for (k, slot) in ne.iter_mut().enumerate() {
                    *slot += ej * m[j][k];
                }
            }
            out.add_term(ne, c);
        }
        out.normalized()
    }

    /// Move variable j to `map[j]` in a ring with `nvars` variables. Variables
    /// mapped to None must not occur.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Poly {
        let mut out = Poly::zero(&self.field, nvars);
        out.scale = self.scale;
        for (e, &c) in &self.terms {
            let mut ne = vec![0u32; nvars];
            for (j, &k) in e.iter().enumerate() {
                match map[j] {
                    Some(t) => ne[t] += k,
                    None => assert_eq!(k, 0, "remap drops a variable that occurs"),
                }
            }
            out.add_term(ne, c);
        }
        out.normalized()
    }

    /// Evaluate at a point (raw variables).
    pub fn eval(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = 0;
        for (e, &c) in &self.terms {
            let mut v = c;
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    v = f.mul(v, f.pow(x[j], k as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Leading term in lexicographic order (t1 most significant).
    pub fn lex_lead(&self) -> Option<(&Exp, Elem)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }

    /// Scale so that the lex-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.lex_lead() {
            None => self.clone(),
            Some((_, c)) => self.scale_by(self.field.inv(c)),
        }
    }

    /// Exact division; None if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.scale == 1 || d.scale == 1 {
            return self.to_u_ring().div_exact(&d.to_u_ring()).map(Poly::from_u_ring);
        }
        let f = &self.field;
        let (de, dc) = d.lex_lead().map(|(e, c)| (e.clone(), c)).unwrap();
        let dinv = f.inv(dc);
        let mut r = self.clone();
        let mut q = Poly::zero(f, self.nvars);
        while let Some((re, rc)) = r.lex_lead().map(|(e, c)| (e.clone(), c)) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let me: Exp = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let mc = f.mul(rc, dinv);
            q.add_term(me.clone(), mc);
            for (e, &c) in &d.terms {
                let ee: Exp = e.iter().zip(&me).map(|(a, b)| a + b).collect();
                r.add_term(ee, f.neg(f.mul(c, mc)));
            }
        }
        Some(q)
    }

    /// Remainder modulo a single polynomial (canonical normal form, lex order).
    pub fn rem(&self, d: &Poly) -> Poly {
        if d.is_zero() {
            return self.clone();
        }
        if self.scale == 1 || d.scale == 1 {
            return self.to_u_ring().rem(&d.to_u_ring()).from_u_ring();
        }
        let f = &self.field;
        let (de, dc) = d.lex_lead().map(|(e, c)| (e.clone(), c)).unwrap();
        let dinv = f.inv(dc);
        let mut r = self.clone();
        let mut out = Poly::zero(f, r.nvars);
        while let Some((re, rc)) = r.lex_lead().map(|(e, c)| (e.clone(), c)) {
            if re.iter().zip(&de).all(|(a, b)| a >= b) {
                let me: Exp = re.iter().zip(&de).map(|(a, b)| a - b).collect();
                let mc = f.mul(rc, dinv);
                for (e, &c) in &d.terms {
                    let ee: Exp = e.iter().zip(&me).map(|(a, b)| a + b).collect();
                    r.add_term(ee, f.neg(f.mul(c, mc)));
                }
            } else {
                r.terms.remove(&re);
                out.add_term(re, rc);
            }
        }
        out
    }

    /// Coefficients of self viewed as a polynomial in variable `v`; index = degree.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![
            Poly {
                field: self.field.clone(),
                nvars: self.nvars,
                scale: self.scale,
                terms: BTreeMap::new()
            };
            deg + 1
        ];
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            out[k].terms.insert(e2, c);
        }
        out
    }

    /// Inverse of `coeffs_in`.
    pub fn from_coeffs_in(field: &Field, nvars: usize, scale: u8, v: usize, cs: &[Poly]) -> Poly {
        let mut out = Poly::zero(field, nvars);
        out.scale = scale;
        for (k, c) in cs.iter().enumerate() {
            let c = if c.scale != scale && !c.is_zero() {
                assert_eq!(scale, 1);
                c.promoted()
            } else {
                c.clone()
            };
            for (e, &x) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                out.add_term(e2, x);
            }
        }
        out
    }

    pub fn with_scale_raw(mut self, scale: u8) -> Poly {
        self.scale = scale;
        self
    }

    /// Render with variables named `t1..td`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = &self.field;
        let p = f.p();
        let mut parts: Vec<(bool, String)> = Vec::new();
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_cmp(b, a));
        for e in keys {
            let c = self.terms[e];
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = &names[i];
                let s = if self.scale == 0 {
                    if k == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{k}")
                    }
                } else if k % p == 0 {
                    if k / p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{}", k / p)
                    }
                } else {
                    format!("{name}^({k}/{p})")
                };
                mono.push(s);
            }
            let (neg, cabs) = if f.degree() == 1 && c > p / 2 && p > 2 {
                (true, p - c)
            } else {
                (false, c)
            };
            let cs = f.fmt_elem(cabs);
            let body = if mono.is_empty() {
                cs
            } else if cabs == 1 {
                mono.join("*")
            } else {
                format!("{cs}*{}", mono.join("*"))
            };
            parts.push((neg, body));
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// Coefficients of (x + c)^k, index j = coefficient of x^j.
fn binomial_row(f: &Field, k: u32, c: Elem) -> Vec<Elem> {
    let mut row = vec![1u32];
    for _ in 0..k {
        let mut next = vec![0u32; row.len() + 1];
        for (j, &b) in row.iter().enumerate() {
            next[j + 1] = f.add(next[j + 1], b);
            next[j] = f.add(next[j], f.mul(b, c));
        }
        row = next;
    }
    row
}

/// Graded lexicographic comparison.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn var_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("t{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.scale, self)
    }
}
