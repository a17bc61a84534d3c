//! Buchberger's algorithm in graded reverse lexicographic order, used only to
//! decide whether an ideal is the unit ideal.

use std::cmp::Ordering;

use super::poly::{Exp, Poly};

/// Graded reverse lexicographic comparison.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn lead(f: &Poly) -> Option<(Exp, u32)> {
    f.terms()
        .iter()
        .max_by(|a, b| grevlex_cmp(a.0, b.0))
        .map(|(e, &c)| (e.clone(), c))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exp(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of f by the basis g (grevlex).
fn reduce(f: &Poly, g: &[(Poly, Exp, u32)]) -> Poly {
    let field = f.field().clone();
    let mut r = f.clone();
    let mut out = Poly::zero(&field, f.nvars());
    while let Some((le, lc)) = lead(&r) {
        let hit = g.iter().find(|(_, ge, _)| divides(ge, &le));
        match hit {
            Some((gp, ge, gc)) => {
                let m = sub_exp(&le, ge);
                let c = field.div(lc, *gc);
                r = r.sub(&gp.mul_raw_monomial(&m).scale_by(c));
            }
            None => {
                let t = Poly::monomial(&field, le, lc);
                r = r.sub(&t);
                out = out.add(&t);
            }
        }
    }
    out
}

fn entry(f: Poly) -> (Poly, Exp, u32) {
    let (e, c) = lead(&f).unwrap();
    (f, e, c)
}

/// Decide whether the generators, restricted to the listed vanishing coordinates,
/// generate the unit ideal over the algebraic closure. Radicial generators are
/// linearized through u_j = t_j^{1/p}.
pub fn unit_ideal_test(gens: &[Poly], vanishing: &[usize]) -> bool {
    let radicial = gens.iter().any(|g| g.scale() == 1);
    let mut basis: Vec<(Poly, Exp, u32)> = Vec::new();
    for g in gens {
        let g = if radicial { g.to_u_ring() } else { g.clone() };
        let g = g.set_zeros(vanishing.iter().copied());
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return true;
        }
        let r = reduce(&g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return true;
        }
        basis.push(entry(r));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fi, ei, ci) = &basis[i];
        let (fj, ej, cj) = &basis[j];
        // Buchberger's first criterion: coprime leading monomials
        if ei.iter().zip(ej.iter()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(ei, ej);
        let field = fi.field().clone();
        let s = fi
            .mul_raw_monomial(&sub_exp(&l, ei))
            .scale_by(field.inv(*ci))
            .sub(&fj.mul_raw_monomial(&sub_exp(&l, ej)).scale_by(field.inv(*cj)));
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return true;
        }
        let k = basis.len();
        basis.push(entry(r));
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    false
}
