//! Shared helpers for the integration tests: expression shorthands and seeded
//! generators of random charts.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wildram::algebra::{Field, Poly, RationalSection};
use wildram::cli::expr::parse_expr;
use wildram::geometry::{assemble_cform, compute_loci, is_clean, ChartConfig};
use wildram::witt::WittVector;

pub fn field(p: u32) -> Field {
    Field::prime(p).unwrap()
}

/// A rational section from the problem-file expression grammar.
pub fn sec(f: &Field, d: usize, text: &str) -> RationalSection {
    parse_expr(text, f, d, 1, 1).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn poly(f: &Field, d: usize, text: &str) -> Poly {
    sec(f, d, text).as_poly().expect("no denominator").clone()
}

/// A Witt vector listed as (a_{s-1}, ..., a_0).
pub fn witt(f: &Field, d: usize, comps: &[&str]) -> WittVector {
    WittVector::new(f, d, comps.iter().map(|c| sec(f, d, c)).collect())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random Laurent polynomial with poles only along `poles`.
pub fn random_section(g: &mut ChaCha8Rng, f: &Field, d: usize, poles: &[usize], max_pole: i64, terms: usize) -> RationalSection {
    let mut acc = RationalSection::zero(f, d);
    for _ in 0..terms {
        let e: Vec<i64> = (0..d)
            .map(|k| {
                if poles.contains(&k) {
                    g.gen_range(-max_pole..=2)
                } else {
                    g.gen_range(0..=2)
                }
            })
            .collect();
        let c = g.gen_range(1..f.order());
        acc = acc.add(&RationalSection::laurent(f, &e, c));
    }
    acc
}

/// A random Witt vector of length s with poles along `poles`.
pub fn random_datum(g: &mut ChaCha8Rng, f: &Field, d: usize, s: usize, poles: &[usize], max_pole: i64) -> WittVector {
    let comps = (0..s)
        .map(|_| {
            let terms = g.gen_range(1..=3);
            random_section(g, f, d, poles, max_pole, terms)
        })
        .collect();
    WittVector::new(f, d, comps)
}

/// A random polynomial Witt vector.
pub fn random_integral(g: &mut ChaCha8Rng, f: &Field, d: usize, s: usize) -> WittVector {
    random_datum(g, f, d, s, &[], 0)
}

/// True when the chart satisfies the hypotheses of the explicit cycle formula:
/// tame divisors in the log set, clean form, E empty.
pub fn formula_applies(cfg: &ChartConfig) -> bool {
    if cfg.check_tame_in_log_set().is_err() {
        return false;
    }
    match assemble_cform(cfg) {
        Ok(Some(form)) => {
            is_clean(&form).is_clean() && compute_loci(cfg, &form).map(|l| l.e_empty()).unwrap_or(false)
        }
        Ok(None) => true,
        Err(_) => false,
    }
}

/// All subsets of the boundary that contain every tame divisor.
pub fn admissible_log_sets(cfg: &ChartConfig) -> Vec<Vec<usize>> {
    let tame = cfg.tame();
    let b = &cfg.boundary;
    (0..1u32 << b.len())
        .map(|mask| (0..b.len()).filter(|k| mask >> k & 1 == 1).map(|k| b[k]).collect::<Vec<_>>())
        .filter(|s| tame.iter().all(|t| s.contains(t)))
        .collect()
}

/// Random surface charts (d = 2) with a wild divisor, in a fixed order.
pub fn surface_candidates(seed: u64) -> impl Iterator<Item = ChartConfig> {
    let mut g = rng(seed);
    std::iter::from_fn(move || {
        let p = *[2u32, 3, 5].choose(&mut g).unwrap();
        let f = field(p);
        let s = if p == 5 { 1 } else { g.gen_range(1..=2) };
        let boundary: Vec<usize> = match g.gen_range(0..3) {
            0 => vec![0],
            1 => vec![1],
            _ => vec![0, 1],
        };
        let a = random_datum(&mut g, &f, 2, s, &boundary, 4);
        Some(ChartConfig::new(a, &boundary, &boundary, &[]).ok())
    })
    .flatten()
    .filter(|cfg| !cfg.wild().is_empty())
}

/// Random charts of dimension 2 or 3 with at least one tame and one wild divisor.
pub fn tame_candidates(seed: u64) -> impl Iterator<Item = ChartConfig> {
    let mut g = rng(seed);
    std::iter::from_fn(move || {
        let p = *[2u32, 3, 5].choose(&mut g).unwrap();
        let f = field(p);
        let d = g.gen_range(2..=3);
        let s = if p == 5 { 1 } else { g.gen_range(1..=2) };
        let mut coords: Vec<usize> = (0..d).collect();
        coords.shuffle(&mut g);
        let tame: Vec<usize> = vec![coords[0]];
        let mut wild = vec![coords[1]];
        if d == 3 && g.gen_bool(0.5) {
            wild.push(coords[2]);
        }
        let a = random_datum(&mut g, &f, d, s, &wild, 3);
        let mut boundary: Vec<usize> = tame.iter().chain(&wild).copied().collect();
        boundary.sort_unstable();
        Some(ChartConfig::new(a, &boundary, &boundary, &tame).ok())
    })
    .flatten()
    .filter(|cfg| !cfg.wild().is_empty() && !cfg.tame().is_empty())
}

/// Problem file for the main example: (t2/t1^n, t3/t1^(p*n)) on A^3 along t1.
pub fn examain_spec(p: u32, n: u32) -> String {
    format!(
        "[field]\np = {p}\n\n[chart]\ndim = 3\nboundary = 1\nlog_set = auto\n\n[datum]\nlength = 2\na1 = t2/t1^{n}\na0 = t3/t1^({p}*{n})\n"
    )
}

/// Problem file for the pushforward example: (t1/t2, t2/t1, t3/(t1^p t2^(p^2))) along t1 t2.
pub fn exapushdim_spec(p: u32) -> String {
    format!(
        "[field]\np = {p}\n\n[chart]\ndim = 3\nboundary = 1, 2\nlog_set = auto\n\n[datum]\nlength = 3\na2 = t1/t2\na1 = t2/t1\na0 = t3/(t1^{p}*t2^{pp})\n",
        pp = p * p
    )
}

/// A tame-only problem: a polynomial datum with the whole boundary tame.
pub fn tame_spec(p: u32, d: usize, boundary: &[usize]) -> String {
    let b: Vec<String> = boundary.iter().map(|x| x.to_string()).collect();
    format!(
        "[field]\np = {p}\n\n[chart]\ndim = {d}\nboundary = {b}\nlog_set = {b}\ntame = {b}\n\n[datum]\nlength = 1\na0 = t1 + 1\n",
        b = b.join(", ")
    )
}

/// The surface datum (t2 + t1^n)/(t1^n1 t2^3) over F_3 whose form has the shape
/// (alpha dlog t1 + beta t2 dlog t2)/(t1^n1 t2^3) with alpha of order n on t2 = 0.
pub fn lambda_example(n: u32) -> ChartConfig {
    let f = field(3);
    let n1 = if n % 3 == 1 { 2 } else { 1 };
    let a = witt(&f, 2, &[&format!("(t2 + t1^{n})/(t1^{n1}*t2^3)")]);
    ChartConfig::new(a, &[0, 1], &[0, 1], &[]).unwrap()
}
