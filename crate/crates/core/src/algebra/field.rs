//! Finite fields F_q, q = p^k, presented by an explicit monic irreducible modulus.
//!
//! Elements are encoded as integers in `0..q` whose base-p digits are the
//! coefficients of the residue polynomial (lowest degree first), so the prime
//! subfield is `0..p` with its natural arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element of F_q in digit encoding.
pub type Elem = u32;

const MAX_ORDER: u64 = 1 << 20;

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to a finite field. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        Field::extension(p, &[0, 1])
    }

    /// F_p[x]/(modulus) where `modulus` lists coefficients from degree 0 up and is monic.
    pub fn extension(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::invalid(format!("p must be prime, got {p}")));
        }
        let mut modulus: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        let k = modulus.len().saturating_sub(1) as u32;
        if k == 0 {
            return Err(Error::invalid("field modulus must have positive degree"));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::invalid("field modulus must be monic"));
        }
        let q = (p as u64).pow(k);
        if q > MAX_ORDER {
            return Err(Error::invalid(format!("field of order {q} exceeds the supported size")));
        }
        let q = q as u32;
        let mul = |a: u32, b: u32| poly_mulmod(a, b, p, &modulus);
        let mut exp = Vec::new();
        let mut found = false;
        if q == 2 {
            exp = vec![1];
            found = true;
        } else {
            for g in 2..q.min(2 + 512) {
                exp.clear();
                let mut x = 1u32;
                let mut ok = true;
                for i in 0..(q - 1) {
                    if i > 0 && x == 1 {
                        ok = false;
                        break;
                    }
                    if x == 0 {
                        ok = false;
                        break;
                    }
                    exp.push(x);
                    x = mul(x, g);
                }
                if ok && x == 1 {
                    found = true;
                    break;
                }
            }
        }
        if !found {
            return Err(Error::invalid("field modulus is not irreducible"));
        }
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Ok(Field(Arc::new(Inner {
            p,
            k,
            q,
            modulus,
            exp,
            log,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.k
    }
    pub fn order(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            return (p - a % p) % p;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.q - 1;
        let e = (self.0.log[a as usize] + self.0.log[b as usize]) % n;
        self.0.exp[e as usize]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        self.0.exp[((n - l) % n) as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }

    /// The unique p-th root (inverse Frobenius).
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    /// Render an element: an integer for prime fields, a polynomial in `a` otherwise.
    pub fn fmt_elem(&self, x: Elem) -> String {
        let p = self.0.p;
        if self.0.k == 1 {
            return x.to_string();
        }
        let mut digits = Vec::new();
        let mut y = x;
        while y > 0 {
            digits.push(y % p);
            y /= p;
        }
        if digits.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        format!("({})", parts.join(" + "))
    }

    /// The generator `a` of the extension (the class of x); for prime fields this is 0.
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            0
        } else {
            self.0.p
        }
    }

    /// Element from its digit vector (lowest degree first); digits past the degree are ignored.
    pub fn from_digits(&self, digits: &[i64]) -> Elem {
        let p = self.0.p as i64;
        let mut out = 0u32;
        let mut place = 1u32;
        for (i, &d) in digits.iter().enumerate() {
            if i as u32 >= self.0.k {
                break;
            }
            out += (d.rem_euclid(p) as u32) * place;
            place *= self.0.p;
        }
        out
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.same(other)
    }
}
impl Eq for Field {}

fn poly_mulmod(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let digits = |mut x: u32| {
        let mut v = vec![0u32; k];
        for d in v.iter_mut() {
            *d = x % p;
            x /= p;
        }
        v
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate().take(k) {
            let sub = c * m as u64 % p as u64;
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + p as u64 - sub) % p as u64;
        }
    }
    let mut out = 0u32;
    let mut place = 1u32;
    for &d in prod.iter().take(k) {
        out += d as u32 * place;
        place *= p;
    }
    out
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
        }
    }
}
