//! Restriction and induction along `C_m ⊆ C_n` and along `C_n → C_m`.

use alloc::format;
use alloc::vec::Vec;

use crate::boxhom::{box_product, free_map, free_presentation};
use crate::burnside::{EqMap, GSet};
use crate::exactalg::{divides, divisors, ell_part, prime_edges};
use crate::mackey::{compare_modules, map_cokernel, quotient, Diagram, ZModule};
use crate::resolutions::{standard_resolution, tor_all};
use crate::Error;

fn check(m: u64, n: u64) -> Result<(), Error> {
    if !divides(m, n) {
        return Err(Error::Invalid(format!("{} does not divide {}", m, n)));
    }
    Ok(())
}

/// `Res M` along `C_m ⊆ C_n`: the value at `Θ_d` is `M(C_n ×_{C_m} Θ_d) = M(Θ_{nd/m})`.
pub fn restrict_incl(mm: &ZModule, m: u64) -> Result<ZModule, Error> {
    let n = mm.n;
    check(m, n)?;
    let k = n / m;
    let mut dg = Diagram::default();
    for d in divisors(m) {
        dg.values.insert(d, mm.value(k * d).clone());
        dg.act.insert(d, mm.act_matrix(k * d).pow(k % (k * d)));
    }
    for (a, b, _) in prime_edges(m) {
        dg.res.insert((a, b), mm.res_matrix(k * a, k * b).clone());
        dg.tr.insert((a, b), mm.tr_matrix(k * a, k * b).clone());
    }
    ZModule::new(m, dg)
}

/// `C_n ×_{C_m} S` for a `C_m`-set.
pub fn induce_set(s: &GSet, n: u64) -> Result<GSet, Error> {
    check(s.n, n)?;
    GSet::new(n, s.orbits.iter().map(|d| d * (n / s.n)).collect())
}

/// `C_n ×_{C_m} f`: point `k` of an orbit goes to point `k·n/m` of its induced orbit.
pub fn induce_eqmap(f: &EqMap, n: u64) -> Result<EqMap, Error> {
    let k = (n / f.src.n) as usize;
    let (src, dst) = (induce_set(&f.src, n)?, induce_set(&f.dst, n)?);
    let new = dst.offsets();
    let base = f
        .base
        .iter()
        .map(|col| {
            col.iter()
                .map(|(p, c)| {
                    let (o, r) = f.dst.locate(*p);
                    (new[o] + r * k, c.clone())
                })
                .collect()
        })
        .collect();
    EqMap::from_base(&src, &dst, base)
}

/// `Ind N` along `C_m ⊆ C_n`, through a free presentation: `Ind F_S = F_{C_n ×_{C_m} S}`.
pub fn induce_incl(nm: &ZModule, n: u64) -> Result<ZModule, Error> {
    check(nm.n, n)?;
    let p = free_presentation(nm)?;
    Ok(map_cokernel(&free_map(&induce_eqmap(&p.d, n)?)?)?.0)
}

/// A `C_m`-set (or map) viewed over `C_n` through `C_n → C_m`.
pub fn pullback_eqmap(f: &EqMap, n: u64) -> Result<EqMap, Error> {
    check(f.src.n, n)?;
    let (src, dst) = (GSet::new(n, f.src.orbits.clone())?, GSet::new(n, f.dst.orbits.clone())?);
    EqMap::from_base(&src, &dst, f.base.clone())
}

/// `Res X` along `C_n → C_m`, through a free presentation: `Res F_{C_m/H} = F_{C_n/f^{-1}H}`.
pub fn restrict_surj(x: &ZModule, n: u64) -> Result<ZModule, Error> {
    check(x.n, n)?;
    let p = free_presentation(x)?;
    Ok(map_cokernel(&free_map(&pullback_eqmap(&p.d, n)?)?)?.0)
}

/// `Ind M` along `C_n → C_m`: the values of `M` at the spots `Θ_d`, `d | m`.
pub fn induce_proj(mm: &ZModule, m: u64) -> Result<ZModule, Error> {
    check(m, mm.n)?;
    let mut dg = Diagram::default();
    for d in divisors(m) {
        dg.values.insert(d, mm.value(d).clone());
        dg.act.insert(d, mm.act_matrix(d).clone());
    }
    for (a, b, _) in prime_edges(m) {
        dg.res.insert((a, b), mm.res_matrix(a, b).clone());
        dg.tr.insert((a, b), mm.tr_matrix(a, b).clone());
    }
    ZModule::new(m, dg)
}

/// `Res Tor^{C_{n(ℓ)}}(Z/I_{ℓ^e}, Z/I_{ℓ^f}) ≅ Tor^{C_n}(Z/I_{ℓ^e}, Z/I_{ℓ^f})` in degrees `0..=3`.
pub fn tor_change_check(n: u64, l: u64, e: u32, f: u32) -> Result<bool, Error> {
    let (a, b) = (l.pow(e), l.pow(f));
    check(a, n)?;
    check(b, n)?;
    let m = ell_part(n, l);
    let small = tor_all(&standard_resolution(m, a)?, &quotient(m, b)?, 3)?;
    let big = tor_all(&standard_resolution(n, a)?, &quotient(n, b)?, 3)?;
    for (s, t) in small.iter().zip(&big) {
        if !compare_modules(&restrict_surj(s, n)?, t)?.is_proven() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Res (M ⊠ N) ≅ Res M ⊠ Res N` along `C_n → C_m`.
pub fn monoidality_check(x: &ZModule, y: &ZModule, n: u64) -> Result<bool, Error> {
    let lhs = restrict_surj(&box_product(x, y)?, n)?;
    let rhs = box_product(&restrict_surj(x, n)?, &restrict_surj(y, n)?)?;
    Ok(compare_modules(&lhs, &rhs)?.is_proven())
}

/// Pairs of spots `(d, nd/m)` matched by the inclusion.
pub fn incl_spots(n: u64, m: u64) -> Vec<(u64, u64)> {
    divisors(m).into_iter().map(|d| (d, d * (n / m))).collect()
}

#[cfg(test)]
mod tests;
