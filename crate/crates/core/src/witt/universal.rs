//! Universal Witt polynomials. Computed once over Z from the ghost components,
//! reduced mod p, and cached per (p, operation, length).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which ring operation the polynomials realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    Sub,
    Mul,
}

/// Polynomial over Z in 2s variables: X_j at position j, Y_j at position s + j.
type IntPoly = BTreeMap<Vec<u32>, BigInt>;

/// Polynomial with coefficients in F_p (values in 0..p).
pub type ModPoly = Vec<(Vec<u32>, u32)>;

fn add_into(acc: &mut IntPoly, e: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(e.clone()).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&e);
    }
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, e, ca * cb);
        }
    }
    out
}

fn pow(a: &IntPoly, mut k: u64, nvars: usize) -> IntPoly {
    let mut acc = IntPoly::new();
    acc.insert(vec![0; nvars], BigInt::one());
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

fn scaled(a: &IntPoly, c: &BigInt) -> IntPoly {
    a.iter().map(|(e, x)| (e.clone(), x * c)).collect()
}

/// Ghost component w_n = sum_{i<=n} p^i V_i^{p^{n-i}} for the variable block at `offset`.
fn ghost(p: u64, n: usize, offset: usize, nvars: usize) -> IntPoly {
    let mut out = IntPoly::new();
    let mut pi = BigInt::one();
    for i in 0..=n {
        let mut e = vec![0u32; nvars];
        e[offset + i] = p.pow((n - i) as u32) as u32;
        add_into(&mut out, e, pi.clone());
        pi *= p;
    }
    out
}

/// Integer universal polynomials T_0..T_{s-1} for the operation.
fn compute(p: u64, op: Op, s: usize) -> Vec<IntPoly> {
    let nvars = 2 * s;
    let mut ts: Vec<IntPoly> = Vec::with_capacity(s);
    for n in 0..s {
        let gx = ghost(p, n, 0, nvars);
        let gy = ghost(p, n, s, nvars);
        let mut g = match op {
            Op::Add => {
                let mut g = gx;
                for (e, c) in gy {
                    add_into(&mut g, e, c);
                }
                g
            }
            Op::Sub => {
                let mut g = gx;
                for (e, c) in gy {
                    add_into(&mut g, e, -c);
                }
                g
            }
            Op::Mul => mul(&gx, &gy),
        };
        let mut pi = BigInt::one();
        for (i, ti) in ts.iter().enumerate() {
            let term = scaled(&pow(ti, p.pow((n - i) as u32), nvars), &pi);
            for (e, c) in term {
                add_into(&mut g, e, -c);
            }
            pi *= p;
        }
        let pn = BigInt::from(p).pow(n as u32);
        let t: IntPoly = g
            .into_iter()
            .map(|(e, c)| {
                assert!((&c % &pn).is_zero(), "ghost recursion left a non-integral coefficient");
                (e, c / &pn)
            })
            .collect();
        ts.push(t);
    }
    ts
}

fn reduce(ts: &[IntPoly], p: u64) -> Vec<ModPoly> {
    let pb = BigInt::from(p);
    ts.iter()
        .map(|t| {
            t.iter()
                .filter_map(|(e, c)| {
                    let mut r = c % &pb;
                    if r.is_negative() {
                        r += &pb;
                    }
                    let r = r.to_u32().unwrap();
                    (r != 0).then(|| (e.clone(), r))
                })
                .collect()
        })
        .collect()
}

type Cache = RwLock<HashMap<(u64, Op, usize), Arc<Vec<ModPoly>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The universal polynomials mod p for `op` on W_s, from the shared cache.
pub fn polynomials(p: u64, op: Op, s: usize) -> Arc<Vec<ModPoly>> {
    if let Some(v) = cache().read().unwrap().get(&(p, op, s)) {
        return v.clone();
    }
    let v = Arc::new(reduce(&compute(p, op, s), p));
    cache().write().unwrap().entry((p, op, s)).or_insert(v).clone()
}
