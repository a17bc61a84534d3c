//! Polynomials divided by a monomial in the coordinates.

use std::fmt;

use super::field::{Elem, Field};
use super::poly::{var_names, Poly};

/// `num / prod t_i^{den_i}` in canonical form: t_i never divides `num` while `den_i > 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalSection {
    num: Poly,
    den: Vec<u32>,
}

impl RationalSection {
    pub fn new(num: Poly, den: Vec<u32>) -> RationalSection {
        assert_eq!(num.nvars(), den.len());
        RationalSection { num, den }.canonical()
    }

    pub fn from_poly(num: Poly) -> RationalSection {
        let n = num.nvars();
        RationalSection::new(num, vec![0; n])
    }

    pub fn zero(field: &Field, nvars: usize) -> RationalSection {
        RationalSection::from_poly(Poly::zero(field, nvars))
    }

    pub fn one(field: &Field, nvars: usize) -> RationalSection {
        RationalSection::from_poly(Poly::one(field, nvars))
    }

    pub fn constant(field: &Field, nvars: usize, c: Elem) -> RationalSection {
        RationalSection::from_poly(Poly::constant(field, nvars, c))
    }

    /// The Laurent monomial c * t^e.
    pub fn laurent(field: &Field, e: &[i64], c: Elem) -> RationalSection {
        let num: Vec<u32> = e.iter().map(|&x| x.max(0) as u32).collect();
        let den: Vec<u32> = e.iter().map(|&x| (-x).max(0) as u32).collect();
        RationalSection::new(Poly::monomial(field, num, c), den)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &[u32] {
        &self.den
    }
    pub fn nvars(&self) -> usize {
        self.den.len()
    }
    pub fn field(&self) -> &Field {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn scale(&self) -> u8 {
        self.num.scale()
    }

    fn canonical(mut self) -> RationalSection {
        if self.num.is_zero() {
            self.den.iter_mut().for_each(|x| *x = 0);
            self.num = Poly::zero(self.num.field(), self.den.len());
            return self;
        }
        let step = if self.num.scale() == 1 { self.num.field().p() } else { 1 };
        for i in 0..self.den.len() {
            if self.den[i] == 0 {
                continue;
            }
            let v = self.num.raw_valuation(i).unwrap_or(0) / step;
            let k = v.min(self.den[i]);
            if k > 0 {
                self.num = self.num.div_raw_var_power(i, k * step);
                self.den[i] -= k;
            }
        }
        self
    }

    fn lifted(&self, den: &[u32]) -> Poly {
        let extra: Vec<u32> = den.iter().zip(&self.den).map(|(a, b)| a - b).collect();
        self.num.mul_t_monomial(&extra)
    }

    pub fn add(&self, other: &RationalSection) -> RationalSection {
        let den: Vec<u32> = self.den.iter().zip(&other.den).map(|(a, b)| *a.max(b)).collect();
        let num = self.lifted(&den).add(&other.lifted(&den));
        RationalSection::new(num, den)
    }

    pub fn neg(&self) -> RationalSection {
        RationalSection {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalSection) -> RationalSection {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalSection) -> RationalSection {
        let den: Vec<u32> = self.den.iter().zip(&other.den).map(|(a, b)| a + b).collect();
        RationalSection::new(self.num.mul(&other.num), den)
    }

    pub fn scale_by(&self, c: Elem) -> RationalSection {
        RationalSection::new(self.num.scale_by(c), self.den.clone())
    }

    pub fn pow(&self, k: u64) -> RationalSection {
        if k == 0 {
            return RationalSection::one(self.field(), self.nvars());
        }
        let den: Vec<u32> = self.den.iter().map(|&x| x * k as u32).collect();
        RationalSection::new(self.num.pow(k), den)
    }

    /// Multiply by t^e for an integer exponent vector (negative entries divide).
    pub fn mul_laurent(&self, e: &[i64]) -> RationalSection {
        let f = self.field().clone();
        self.mul(&RationalSection::laurent(&f, e, 1))
    }

    /// Order of vanishing along t_i (negative for a pole); None for zero.
    /// For radicial sections the value is floored to an integer.
    pub fn ord(&self, i: usize) -> Option<i64> {
        let v = self.num.raw_valuation(i)? as i64;
        let v = if self.num.scale() == 1 { v.div_euclid(self.field().p() as i64) } else { v };
        Some(v - self.den[i] as i64)
    }

    /// Restriction to t_i = 0; requires no pole along t_i.
    pub fn restrict(&self, i: usize) -> Option<RationalSection> {
        if self.den[i] > 0 {
            return None;
        }
        Some(RationalSection::new(self.num.set_zero(i), self.den.clone()))
    }

    /// Exterior derivative in the dt basis. Only for scale-0 sections.
    pub fn differential(&self) -> Vec<RationalSection> {
        let n = self.nvars();
        let f = self.field().clone();
        (0..n)
            .map(|i| {
                // d(N/t^e) along dt_i: (t_i dN/dt_i - e_i N) / (t^e t_i)
                let ti = Poly::var(&f, n, i);
                let top = ti
                    .mul(&self.num.derivative(i))
                    .sub(&self.num.scale_by(f.from_int(self.den[i] as i64)));
                let mut den = self.den.clone();
                den[i] += 1;
                RationalSection::new(top, den)
            })
            .collect()
    }

    /// Frobenius (p-th power).
    pub fn frobenius(&self) -> RationalSection {
        let p = self.field().p();
        RationalSection::new(self.num.frobenius(), self.den.iter().map(|x| x * p).collect())
    }

    /// The p-th root, with numerator on the radicial cover:
    /// (N/t^e)^{1/p} = (N t^{(p-1)e})^{1/p} / t^e.
    pub fn pth_root(&self) -> RationalSection {
        let p = self.field().p();
        let extra: Vec<u32> = self.den.iter().map(|x| x * (p - 1)).collect();
        let num = self.num.mul_t_monomial(&extra).pth_root();
        RationalSection::new(num, self.den.clone())
    }

    /// Polynomial value if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.iter().all(|&x| x == 0) {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Apply a monomial substitution t_j -> prod_k t_k^{m[j][k]} to numerator and denominator.
    pub fn substitute_monomial(&self, m: &[Vec<u32>]) -> RationalSection {
        let n = self.nvars();
        let mut den = vec![0u32; n];
        for (j, &ej) in self.den.iter().enumerate() {
            for (k, slot) in den.iter_mut().enumerate() {
                *slot += ej * m[j][k];
            }
        }
        RationalSection::new(self.num.substitute_monomial(m), den)
    }

    /// Substitute t_i -> t_i + c; requires t_i absent from the denominator.
    pub fn translate(&self, i: usize, c: Elem) -> Option<RationalSection> {
        if self.den[i] > 0 && c != 0 {
            return None;
        }
        Some(RationalSection::new(self.num.translate(i, c), self.den.clone()))
    }

    /// Variable renaming as in `Poly::remap`; dropped variables must not occur.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> RationalSection {
        let mut den = vec![0u32; nvars];
        for (j, &k) in self.den.iter().enumerate() {
            match map[j] {
                Some(t) => den[t] += k,
                None => assert_eq!(k, 0, "remap drops a denominator variable"),
            }
        }
        RationalSection::new(self.num.remap(nvars, map), den)
    }

    /// Substitute t_i = 0 for every listed variable; None if one of them is in the denominator.
    pub fn restrict_all(&self, vars: &[usize]) -> Option<RationalSection> {
        if vars.iter().any(|&i| self.den[i] > 0) {
            return None;
        }
        Some(RationalSection::new(self.num.set_zeros(vars.iter().copied()), self.den.clone()))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let num = self.num.to_string_with(names);
        let mut dens = Vec::new();
        for (i, &k) in self.den.iter().enumerate() {
            match k {
                0 => {}
                1 => dens.push(names[i].clone()),
                _ => dens.push(format!("{}^{k}", names[i])),
            }
        }
        if dens.is_empty() {
            return num;
        }
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        if dens.len() == 1 {
            format!("{num}/{}", dens[0])
        } else {
            format!("{num}/({})", dens.join("*"))
        }
    }
}

impl fmt::Display for RationalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&var_names(self.nvars())))
    }
}

impl fmt::Debug for RationalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
