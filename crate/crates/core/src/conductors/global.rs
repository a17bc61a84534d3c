//! Certification of every boundary divisor on one shared representative.

use super::local::{certify_dt, certify_sw, compute_invariants, DivisorInvariants};
use crate::error::{Error, Result};
use crate::par::maybe_par_map;
use crate::witt::WittVector;

/// Full passes over the boundary before the representative must have settled.
pub const SWEEP_CAP: usize = 16;

/// The datum may only have poles along boundary coordinates.
pub fn check_poles(a: &WittVector, boundary: &[usize]) -> Result<()> {
    for c in a.components() {
        for (k, &e) in c.den().iter().enumerate() {
            if e > 0 && !boundary.contains(&k) {
                return Err(Error::invalid(format!(
                    "the datum has a pole along t{} which is not a boundary coordinate",
                    k + 1
                )));
            }
        }
    }
    Ok(())
}

/// Rewrite the datum until it is certified along every boundary divisor, then
/// compute the invariants of all divisors on that representative.
/// Invariants come back in boundary order.
pub fn certify_all(
    a: &WittVector,
    boundary: &[usize],
    log_set: &[usize],
) -> Result<(WittVector, Vec<DivisorInvariants>)> {
    check_poles(a, boundary)?;
    if let Some(&k) = log_set.iter().find(|k| !boundary.contains(k)) {
        return Err(Error::invalid(format!("log set member t{} is not a boundary divisor", k + 1)));
    }
    let mut a = a.clone();
    let mut settled = false;
    for _ in 0..SWEEP_CAP {
        let mut changed = false;
        for &j in boundary {
            let (b, sw) = certify_sw(&a, j)?;
            let b = if sw > 0 { certify_dt(&b, sw, j)?.0 } else { b };
            if b != a {
                a = b;
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(Error::diag(
            "unreduced-representative",
            "rewriting along one divisor keeps disturbing another; no common representative found",
        ));
    }
    let results = maybe_par_map(boundary, |&j| compute_invariants(&a, j, log_set.contains(&j)));
    let mut invs = Vec::with_capacity(boundary.len());
    for r in results {
        let (b, inv) = r?;
        if b != a {
            return Err(Error::diag(
                "unreduced-representative",
                format!("the settled datum was rewritten again along t{}", inv.divisor + 1),
            ));
        }
        invs.push(inv);
    }
    Ok((a, invs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Poly, RationalSection};

    #[test]
    fn two_divisors_share_a_representative() {
        // 1/(t1^3 t2^3) is (F-1)(1/(t1 t2)) plus a lower pole
        let f = Field::prime(3).unwrap();
        let t3 = Poly::var(&f, 3, 2);
        let a = WittVector::new(
            &f,
            3,
            vec![RationalSection::laurent(&f, &[-3, -3, 0], 1).add(&RationalSection::new(t3, vec![1, 2, 0]))],
        );
        let (b, invs) = certify_all(&a, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(invs[0].sw, 1);
        assert_eq!(invs[1].sw, 2);
        assert_ne!(a, b);
    }

    #[test]
    fn pole_off_the_boundary_is_rejected() {
        let f = Field::prime(3).unwrap();
        let a = WittVector::new(&f, 2, vec![RationalSection::laurent(&f, &[0, -1], 1)]);
        assert!(certify_all(&a, &[0], &[0]).is_err());
    }
}
