//! Multivariate gcd (recursive content / primitive part over a univariate
//! subresultant remainder sequence) and coprime square-free refinement.

use super::poly::Poly;
use crate::error::{Error, Result};

/// Monic gcd of two polynomials. gcd(0, 0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.scale() == 1 || b.scale() == 1 {
        return gcd(&a.to_u_ring(), &b.to_u_ring()).from_u_ring().monic();
    }
    gcd_plain(a, b)
}

fn gcd_plain(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.field(), a.nvars());
    }
    // main variable: first one used by either operand
    let v = (0..a.nvars()).find(|&i| a.uses_var(i) || b.uses_var(i)).unwrap();
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let cont_a = content(&ca);
    let cont_b = content(&cb);
    let g_cont = gcd_plain(&cont_a, &cont_b);
    let pa: Vec<Poly> = ca.iter().map(|c| c.div_exact(&cont_a).unwrap()).collect();
    let pb: Vec<Poly> = cb.iter().map(|c| c.div_exact(&cont_b).unwrap()).collect();
    let g = subresultant_gcd(pa, pb);
    let g_pp = primitive_part(&g);
    let out = Poly::from_coeffs_in(a.field(), a.nvars(), 0, v, &g_pp);
    out.mul(&g_cont).monic()
}

fn content(cs: &[Poly]) -> Poly {
    let mut g = Poly::zero(cs[0].field(), cs[0].nvars());
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = gcd_plain(&g, c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_part(cs: &[Poly]) -> Vec<Poly> {
    let c = content(cs);
    if c.is_zero() {
        return cs.to_vec();
    }
    cs.iter().map(|x| x.div_exact(&c).unwrap()).collect()
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn deg(v: &[Poly]) -> Option<usize> {
    let v_len = v.iter().rposition(|c| !c.is_zero())?;
    Some(v_len)
}

/// Pseudo-remainder of a by b in R[x].
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = deg(b).unwrap();
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let Some(da) = deg(&r) else { return r };
    if da < db {
        return r;
    }
    let mut e = da - db + 1;
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        r = trim(next);
        e -= 1;
    }
    let factor = lb.pow(e as u64);
    trim(r.iter().map(|c| c.mul(&factor)).collect())
}

/// gcd of primitive a, b in R[x] up to an R-multiple (subresultant PRS).
fn subresultant_gcd(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut a, mut b) = (trim(a), trim(b));
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let f = a[0].field().clone();
    let n = a[0].nvars();
    let mut g = Poly::one(&f, n);
    let mut h = Poly::one(&f, n);
    loop {
        let (Some(da), Some(db)) = (deg(&a), deg(&b)) else {
            return if deg(&b).is_none() { a } else { b };
        };
        let delta = (da - db) as u64;
        let r = prem(&a, &b);
        match deg(&r) {
            None => return b,
            Some(0) => return vec![Poly::one(&f, n)],
            Some(_) => {}
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.iter().map(|c| c.div_exact(&divisor).expect("subresultant division")).collect();
        g = a[deg(&a).unwrap()].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h update")
        };
    }
}

/// Pairwise-coprime square-free factors of the inputs with exact exponents.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub factors: Vec<Poly>,
    /// `exponents[k][j]` = v_{factors[j]}(inputs[k]); zero inputs get u32::MAX.
    pub exponents: Vec<Vec<u32>>,
}

/// Coprime square-free refinement of a family of polynomials.
pub fn gcd_and_refine(fs: &[Poly]) -> Result<Refinement> {
    if fs.is_empty() {
        return Err(Error::invalid("gcd_and_refine needs at least one input"));
    }
    let radicial = fs.iter().any(|f| f.scale() == 1);
    let inputs: Vec<Poly> = fs
        .iter()
        .map(|f| if radicial { f.to_u_ring() } else { f.clone() })
        .collect();
    let mut pool: Vec<Poly> = inputs
        .iter()
        .filter(|f| !f.is_zero() && !f.is_constant())
        .map(|f| f.monic())
        .collect();
    loop {
        let mut changed = false;
        // square-free splitting
        'outer: for idx in 0..pool.len() {
            let a = pool[idx].clone();
            let mut all_zero = true;
            for v in 0..a.nvars() {
                let da = a.raw_derivative(v);
                if da.is_zero() {
                    continue;
                }
                all_zero = false;
                let g = gcd_plain(&a, &da);
                if !g.is_constant() {
                    let rest = a.div_exact(&g).unwrap();
                    pool.remove(idx);
                    pool.push(g);
                    if !rest.is_constant() {
                        pool.push(rest.monic());
                    }
                    changed = true;
                    break 'outer;
                }
            }
            if all_zero {
                // a p-th power in the polynomial ring
                let root = a.pth_root();
                debug_assert_eq!(root.scale(), 0);
                pool.remove(idx);
                pool.push(root.monic());
                changed = true;
                break 'outer;
            }
        }
        if !changed {
            // coprime splitting
            'pairs: for i in 0..pool.len() {
                for j in (i + 1)..pool.len() {
                    let g = gcd_plain(&pool[i], &pool[j]);
                    if g.is_constant() {
                        continue;
                    }
                    let (a, b) = (pool[i].clone(), pool[j].clone());
                    pool.remove(j);
                    pool.remove(i);
                    for x in [a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap(), g] {
                        if !x.is_constant() {
                            pool.push(x.monic());
                        }
                    }
                    changed = true;
                    break 'pairs;
                }
            }
        }
        if !changed {
            break;
        }
    }
    pool.sort_by(|a, b| a.terms().iter().rev().cmp(b.terms().iter().rev()));
    pool.dedup();
    let exponents = inputs
        .iter()
        .map(|f| pool.iter().map(|h| valuation(f, h)).collect())
        .collect();
    let factors = pool
        .into_iter()
        .map(|h| if radicial { h.from_u_ring() } else { h })
        .collect();
    Ok(Refinement { factors, exponents })
}

/// Multiplicity of h in f by trial division (u32::MAX for f = 0).
pub fn valuation(f: &Poly, h: &Poly) -> u32 {
    if f.is_zero() {
        return u32::MAX;
    }
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(h) {
        cur = q;
        k += 1;
    }
    k
}
