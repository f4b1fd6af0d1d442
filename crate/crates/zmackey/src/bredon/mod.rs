//! Representation-sphere complexes `S^{λ_d}` and the homology of their
//! box and dual combinations.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::burnside::{generator_r_proj, generator_r_t, EqMap, GSet};
use crate::exactalg::{divides, divisors, gcd, lcm, Int};
use crate::mackey::{quotient, ZModule};
use crate::resolutions::{e2_page, euler_rank, E2Page, FreeComplex, PageMode};
use crate::Error;

/// `0 → F_{Θ_d} →1−Rt F_{Θ_d} →Rp F_pt → 0` in degrees 2, 1, 0.
pub fn sphere_complex(n: u64, d: u64) -> Result<FreeComplex, Error> {
    if !divides(d, n) {
        return Err(Error::Invalid(format!("{} does not divide {}", d, n)));
    }
    let th = GSet::orbit(n, d);
    let rp = EqMap::from_bz(&generator_r_proj(n, d, 1)?);
    let rt = EqMap::from_bz(&generator_r_t(n, d, 1)?);
    let one_minus = EqMap::identity(&th).add(&rt.scale(&Int::from(-1i64)));
    FreeComplex::new(n, 0, vec![GSet::pt(n), th.clone(), th], vec![rp, one_minus])
}

/// Duals of the first `dual_prefix` spheres boxed with the remaining ones.
pub fn rep_complex(n: u64, ds: &[u64], dual_prefix: usize) -> Result<FreeComplex, Error> {
    if dual_prefix > ds.len() {
        return Err(Error::Invalid(format!("cannot dualize {} of {} spheres", dual_prefix, ds.len())));
    }
    let mut c = FreeComplex::single(&GSet::pt(n), 0);
    for (i, &d) in ds.iter().enumerate() {
        let s = sphere_complex(n, d)?;
        c = c.tensor(&if i < dual_prefix { s.dual() } else { s })?;
    }
    Ok(c)
}

/// Graded homology of [`rep_complex`], computed directly.
pub fn rep_homology(n: u64, ds: &[u64], dual_prefix: usize) -> Result<Vec<(i64, ZModule)>, Error> {
    rep_complex(n, ds, dual_prefix)?.homology()
}

/// Künneth page for `S^{λ_a} ⊠ S^{λ_b}`.
pub fn kunneth_spheres(n: u64, a: u64, b: u64) -> Result<E2Page, Error> {
    e2_page(&sphere_complex(n, a)?.to_mackey()?, &sphere_complex(n, b)?.to_mackey()?, PageMode::Kunneth)
}

/// Universal coefficient page for `Hom(S^{λ_a}, S^{λ_b})`.
pub fn uct_spheres(n: u64, a: u64, b: u64) -> Result<E2Page, Error> {
    e2_page(&sphere_complex(n, a)?.to_mackey()?, &sphere_complex(n, b)?.to_mackey()?, PageMode::Uct)
}

/// Künneth page for `Hom(S^{λ_a}, Z) ⊠ S^{λ_b}`.
pub fn kunneth_dual_spheres(n: u64, a: u64, b: u64) -> Result<E2Page, Error> {
    e2_page(&sphere_complex(n, a)?.dual().to_mackey()?, &sphere_complex(n, b)?.to_mackey()?, PageMode::Kunneth)
}

/// Rank Euler characteristics of the Künneth page and of the direct homology agree at every spot.
pub fn euler_check(n: u64, a: u64, b: u64, dual: bool) -> Result<bool, Error> {
    let (page, h) = if dual {
        (kunneth_dual_spheres(n, a, b)?, rep_homology(n, &[a, b], 1)?)
    } else {
        (kunneth_spheres(n, a, b)?, rep_homology(n, &[a, b], 0)?)
    };
    Ok(euler_matches(&page, &h, n))
}

pub fn euler_matches(page: &E2Page, h: &[(i64, ZModule)], n: u64) -> bool {
    divisors(n).into_iter().all(|c| page.euler_rank(c) == euler_rank(h, c))
}

fn torsion_order(m: &ZModule, c: u64) -> Int {
    m.value(c).torsion.iter().fold(Int::ONE, |a, x| &a * x)
}

/// Spotwise, the torsion of the Künneth page exceeds that of the abutment by
/// exactly `|Z/I_{(a,b)}|²`, the source and image of the one possible `d_3`.
pub fn d3_discrepancy(n: u64, a: u64, b: u64) -> Result<bool, Error> {
    d3_discrepancy_with(&kunneth_spheres(n, a, b)?, &rep_homology(n, &[a, b], 0)?, n, a, b)
}

pub fn d3_discrepancy_with(page: &E2Page, h: &[(i64, ZModule)], n: u64, a: u64, b: u64) -> Result<bool, Error> {
    let q = quotient(n, gcd(a, b))?;
    for c in divisors(n) {
        let e2 = page.entries.values().fold(Int::ONE, |acc, m| &acc * &torsion_order(m, c));
        let ab = h.iter().fold(Int::ONE, |acc, (_, m)| &acc * &torsion_order(m, c));
        let k = torsion_order(&q, c);
        if e2 != &(&ab * &k) * &k {
            return Ok(false);
        }
        let r1: usize = page.entries.values().map(|m| m.value(c).free_rank).sum();
        let r2: usize = h.iter().map(|(_, m)| m.value(c).free_rank).sum();
        if r1 != r2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The expected answer `(Z, 0, Z/I_{[a,b]}, 0, Z/I_{(a,b)})` in degrees 4..0.
pub fn expected_pair_quotients(a: u64, b: u64) -> [(i64, u64); 2] {
    [(2, lcm(a, b)), (0, gcd(a, b))]
}

#[cfg(test)]
mod tests;
