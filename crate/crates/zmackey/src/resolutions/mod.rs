//! Chain complexes of free and general modules, free resolutions, Tor and
//! Ext modules, duality, and `E_2` pages.
//!
//! Complexes are homological: `d: C_k → C_{k-1}`. Cochain data (Hom into a
//! module, duals) is placed in nonpositive degrees.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::boxhom::{cover_kernel, free_map, free_map_between, greedy_cover, induced_exp, yoneda_map, Exponential};
use crate::burnside::{generator_i_proj, generator_r_proj, generator_r_t, EqMap, GSet, SparseCol};
use crate::exactalg::{divides, divisors, FgAbGroup, Int, Subquotient};
use crate::mackey::{compare_modules, direct_sum, free_module, identify_quotient, map_homology, quotient, zero_module, ActPowers, Comparison, MackeyMap, ZModule};
use crate::Error;

/// A bounded complex of free modules `F_{A_k}`, with `maps[k]: A_{lo+k+1} → A_{lo+k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    pub n: u64,
    pub lo: i64,
    pub sets: Vec<GSet>,
    pub maps: Vec<EqMap>,
}

/// A bounded complex of modules, with `diffs[k]: C_{lo+k+1} → C_{lo+k}`.
#[derive(Clone, Debug)]
pub struct MackeyComplex {
    pub n: u64,
    pub lo: i64,
    pub terms: Vec<ZModule>,
    pub diffs: Vec<MackeyMap>,
}

impl MackeyComplex {
    pub fn new(n: u64, lo: i64, terms: Vec<ZModule>, diffs: Vec<MackeyMap>) -> Result<MackeyComplex, Error> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::Invalid(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source != terms[k + 1] || d.target != terms[k] {
                return Err(Error::Invalid(format!("differential out of degree {} has the wrong ends", lo + k as i64 + 1)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].compose(&diffs[k]).is_zero() {
                return Err(Error::Axiom(format!("d∘d is not zero out of degree {}", lo + k as i64 + 1)));
            }
        }
        Ok(MackeyComplex { n, lo, terms, diffs })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, i: i64) -> Option<&ZModule> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.terms[(i - self.lo) as usize])
        }
    }

    /// `H_i`, zero outside the support.
    pub fn homology(&self, i: i64) -> Result<ZModule, Error> {
        let Some(c) = self.term(i) else { return zero_module(self.n) };
        let k = (i - self.lo) as usize;
        let f = if i < self.hi() { self.diffs[k].clone() } else { MackeyMap::zero(&zero_module(self.n)?, c) };
        let g = if i > self.lo { self.diffs[k - 1].clone() } else { MackeyMap::zero(c, &zero_module(self.n)?) };
        map_homology(&f, &g)
    }
}

/// All homology modules `(degree, H)` over the support.
pub fn complex_homology(c: &MackeyComplex) -> Result<Vec<(i64, ZModule)>, Error> {
    (c.lo..=c.hi()).map(|i| Ok((i, c.homology(i)?))).collect()
}

fn shifted(col: &SparseCol, by: usize) -> SparseCol {
    col.iter().map(|(p, v)| (p + by, v.clone())).collect()
}

/// Map between disjoint unions from pieces `(source part, target part, map)`.
fn union_map(src: &[GSet], dst: &[GSet], n: u64, pieces: &[(usize, usize, EqMap)]) -> Result<EqMap, Error> {
    let union = |parts: &[GSet]| parts.iter().fold(GSet::empty(n), |a, b| a.union(b));
    let (s, t) = (union(src), union(dst));
    let mut orbit_off = vec![0usize];
    for p in src {
        orbit_off.push(orbit_off.last().unwrap() + p.orbits.len());
    }
    let mut point_off = vec![0usize];
    for p in dst {
        point_off.push(point_off.last().unwrap() + p.size());
    }
    let mut base: Vec<SparseCol> = vec![Vec::new(); s.orbits.len()];
    for (si, ti, f) in pieces {
        for (k, col) in f.base.iter().enumerate() {
            base[orbit_off[*si] + k].extend(shifted(col, point_off[*ti]));
        }
    }
    EqMap::from_base(&s, &t, base)
}

impl FreeComplex {
    pub fn new(n: u64, lo: i64, sets: Vec<GSet>, maps: Vec<EqMap>) -> Result<FreeComplex, Error> {
        if sets.is_empty() || maps.len() + 1 != sets.len() {
            return Err(Error::Invalid(format!("{} sets need {} maps", sets.len(), sets.len().saturating_sub(1))));
        }
        for (k, f) in maps.iter().enumerate() {
            if f.src != sets[k + 1] || f.dst != sets[k] {
                return Err(Error::Invalid(format!("map out of degree {} has the wrong ends", lo + k as i64 + 1)));
            }
        }
        for k in 1..maps.len() {
            if !maps[k - 1].compose(&maps[k]).to_matrix().is_zero() {
                return Err(Error::Axiom(format!("d∘d is not zero out of degree {}", lo + k as i64 + 1)));
            }
        }
        Ok(FreeComplex { n, lo, sets, maps })
    }

    /// A single free module in degree `deg`.
    pub fn single(s: &GSet, deg: i64) -> FreeComplex {
        FreeComplex { n: s.n, lo: deg, sets: vec![s.clone()], maps: Vec::new() }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.sets.len() as i64 - 1
    }

    pub fn set(&self, i: i64) -> Option<&GSet> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.sets[(i - self.lo) as usize])
        }
    }

    /// The map out of degree `i` (to `i - 1`).
    pub fn map_from(&self, i: i64) -> Option<&EqMap> {
        if i <= self.lo || i > self.hi() {
            None
        } else {
            Some(&self.maps[(i - self.lo - 1) as usize])
        }
    }

    pub fn shift(&self, k: i64) -> FreeComplex {
        FreeComplex { lo: self.lo + k, ..self.clone() }
    }

    pub fn to_mackey(&self) -> Result<MackeyComplex, Error> {
        let terms: Vec<ZModule> = self.sets.iter().map(free_module).collect::<Result<_, _>>()?;
        let diffs = self.maps.iter().enumerate().map(|(k, f)| free_map_between(&terms[k + 1], &terms[k], f)).collect::<Result<_, _>>()?;
        Ok(MackeyComplex { n: self.n, lo: self.lo, terms, diffs })
    }

    pub fn homology(&self) -> Result<Vec<(i64, ZModule)>, Error> {
        complex_homology(&self.to_mackey()?)
    }

    /// `Hom(C, Z)`: `F_A` is self-dual and `Hom(F_f, Z)` is `F_{f^T}`; degree `i` goes to `-i`.
    pub fn dual(&self) -> FreeComplex {
        let sets: Vec<GSet> = self.sets.iter().rev().cloned().collect();
        let maps: Vec<EqMap> = self.maps.iter().rev().map(|f| f.dual()).collect();
        FreeComplex { n: self.n, lo: -self.hi(), sets, maps }
    }

    /// The tensor (box) product: `F_A ⊠ F_B = F_{A×B}` with the Koszul sign on the right factor.
    pub fn tensor(&self, o: &FreeComplex) -> Result<FreeComplex, Error> {
        if self.n != o.n {
            return Err(Error::Invalid(format!("complexes over C_{} and C_{}", self.n, o.n)));
        }
        let n = self.n;
        let (lo, hi) = (self.lo + o.lo, self.hi() + o.hi());
        // parts of total degree k: (i, j, product)
        let parts = |k: i64| -> Vec<(i64, i64, crate::burnside::Product)> {
            (self.lo..=self.hi())
                .filter_map(|i| {
                    let j = k - i;
                    o.set(j).map(|b| (i, j, self.set(i).unwrap().product(b)))
                })
                .collect()
        };
        let all: Vec<_> = (lo..=hi).map(parts).collect();
        let sets: Vec<GSet> = all.iter().map(|ps| ps.iter().fold(GSet::empty(n), |a, p| a.union(&p.2.set))).collect();
        let mut maps = Vec::new();
        for k in lo + 1..=hi {
            let src = &all[(k - lo) as usize];
            let dst = &all[(k - 1 - lo) as usize];
            let find = |i: i64, j: i64| dst.iter().position(|p| p.0 == i && p.1 == j);
            let mut pieces = Vec::new();
            for (si, (i, j, ps)) in src.iter().enumerate() {
                if let (Some(f), Some(ti)) = (self.map_from(*i), find(i - 1, *j)) {
                    let id = EqMap::identity(o.set(*j).unwrap());
                    pieces.push((si, ti, f.product(&id, ps, &dst[ti].2)));
                }
                if let (Some(g), Some(ti)) = (o.map_from(*j), find(*i, j - 1)) {
                    let id = EqMap::identity(self.set(*i).unwrap());
                    let mut m = id.product(g, ps, &dst[ti].2);
                    if i.rem_euclid(2) == 1 {
                        m = m.scale(&Int::from(-1i64));
                    }
                    pieces.push((si, ti, m));
                }
            }
            let sp: Vec<GSet> = src.iter().map(|p| p.2.set.clone()).collect();
            let dp: Vec<GSet> = dst.iter().map(|p| p.2.set.clone()).collect();
            maps.push(union_map(&sp, &dp, n, &pieces)?);
        }
        FreeComplex::new(n, lo, sets, maps)
    }

    /// `C ⊠ N`: the terms `N^{A_k}` (via `F_A ⊠ N ≅ N^{DA}`) with maps `N(d^T × id)`.
    pub fn box_module(&self, nm: &ZModule) -> Result<MackeyComplex, Error> {
        let mut pw = ActPowers::new();
        let exps = self.exps(nm, &mut pw)?;
        let mut diffs = Vec::new();
        for (k, f) in self.maps.iter().enumerate() {
            diffs.push(exp_map(nm, &f.dual(), &exps[k + 1], &exps[k], &mut pw)?);
        }
        Ok(MackeyComplex { n: self.n, lo: self.lo, terms: exps.into_iter().map(|e| e.1).collect(), diffs })
    }

    /// `Hom(C, N)`: the terms `N^{A_k}` in degree `-k` with maps `N(d × id)`.
    pub fn hom_module(&self, nm: &ZModule) -> Result<MackeyComplex, Error> {
        let mut pw = ActPowers::new();
        let exps = self.exps(nm, &mut pw)?;
        let mut diffs = Vec::new();
        for (k, f) in self.maps.iter().enumerate().rev() {
            diffs.push(exp_map(nm, f, &exps[k], &exps[k + 1], &mut pw)?);
        }
        let terms = exps.into_iter().rev().map(|e| e.1).collect();
        Ok(MackeyComplex { n: self.n, lo: -self.hi(), terms, diffs })
    }

    fn exps(&self, nm: &ZModule, pw: &mut ActPowers) -> Result<Vec<ExpModule>, Error> {
        self.sets
            .iter()
            .map(|a| {
                let e = Exponential::new(nm, a, pw)?;
                let (m, sq) = e.module()?;
                Ok((e, m, sq))
            })
            .collect()
    }
}

type ExpModule = (Exponential, ZModule, BTreeMap<u64, Subquotient>);

/// `N(f × id): N^T → N^S` for `f: S → T`, as a map of normal-form modules.
fn exp_map(nm: &ZModule, f: &EqMap, t: &ExpModule, s: &ExpModule, pw: &mut ActPowers) -> Result<MackeyMap, Error> {
    let mut comps = BTreeMap::new();
    for c in divisors(nm.n) {
        let amb = induced_exp(nm, f, &s.0, &t.0, c, pw);
        comps.insert(c, s.2[&c].coords_matrix(&amb.mul(&t.2[&c].gens)));
    }
    MackeyMap::new_unchecked(t.1.clone(), s.1.clone(), comps)
}

/// A free resolution `F_{A_•} → M` in degrees `0..`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: ZModule,
    pub complex: FreeComplex,
    pub aug: MackeyMap,
    /// The last kernel was zero, so the resolution is complete.
    pub complete: bool,
}

impl Resolution {
    pub fn length(&self) -> i64 {
        self.complex.hi()
    }
}

fn bz(f: crate::burnside::BzMor) -> EqMap {
    EqMap::from_bz(&f)
}

/// `0 → F_pt →Ip F_{Θ_a} →1−Rt F_{Θ_a} →Rp F_pt → Z/I_a → 0`.
pub fn standard_resolution(n: u64, a: u64) -> Result<Resolution, Error> {
    if !divides(a, n) {
        return Err(Error::Invalid(format!("{} does not divide {}", a, n)));
    }
    let (pt, th) = (GSet::pt(n), GSet::orbit(n, a));
    let rp = bz(generator_r_proj(n, a, 1)?);
    let rt = bz(generator_r_t(n, a, 1)?);
    let ip = bz(generator_i_proj(n, a, 1)?);
    let one_minus = EqMap::identity(&th).add(&rt.scale(&Int::from(-1i64)));
    let complex = FreeComplex::new(n, 0, vec![pt.clone(), th.clone(), th, pt.clone()], vec![rp, one_minus, ip])?;
    let q = quotient(n, a)?;
    let gen = if q.value(1).dim() == 0 { Vec::new() } else { vec![Int::ONE] };
    let aug = yoneda_map(&q, &pt, &[gen])?;
    Ok(Resolution { module: q, complex, aug, complete: true })
}

/// Resolves `M` through degree `up_to` by greedy covers of kernels, stopping early at a zero kernel.
pub fn free_resolution(m: &ZModule, up_to: usize) -> Result<Resolution, Error> {
    let n = m.n;
    let cov = greedy_cover(m);
    let aug = yoneda_map(m, &cov.set, &cov.elems)?;
    let mut sets = vec![cov.set.clone()];
    let mut maps: Vec<EqMap> = Vec::new();
    let mut cur = aug.clone();
    let mut complete = false;
    while sets.len() <= up_to {
        let top = sets.last().unwrap().clone();
        let (d, _) = cover_kernel(&cur, &top)?;
        if d.src.orbits.is_empty() {
            complete = true;
            break;
        }
        cur = free_map(&d)?;
        sets.push(d.src.clone());
        maps.push(d);
    }
    if !complete && sets.len() > up_to {
        let (k, _) = crate::mackey::map_kernel(&cur)?;
        complete = k.is_zero();
    }
    Ok(Resolution { module: m.clone(), complex: FreeComplex::new(n, 0, sets, maps)?, aug, complete })
}

/// `Tor_i(M, N)` for `i = 0..=max` from one resolution of `M`.
pub fn tor_all(res: &Resolution, nm: &ZModule, max: usize) -> Result<Vec<ZModule>, Error> {
    need(res, max)?;
    let c = res.complex.box_module(nm)?;
    (0..=max as i64).map(|i| c.homology(i)).collect()
}

/// `Ext^i(M, N)` for `i = 0..=max` from one resolution of `M`.
pub fn ext_all(res: &Resolution, nm: &ZModule, max: usize) -> Result<Vec<ZModule>, Error> {
    need(res, max)?;
    let c = res.complex.hom_module(nm)?;
    (0..=max as i64).map(|i| c.homology(-i)).collect()
}

fn need(res: &Resolution, max: usize) -> Result<(), Error> {
    if !res.complete && res.length() < max as i64 + 1 {
        return Err(Error::Invalid(format!("resolution of length {} is too short for degree {}", res.length(), max)));
    }
    Ok(())
}

pub fn tor(m: &ZModule, nm: &ZModule, i: usize) -> Result<ZModule, Error> {
    Ok(tor_all(&free_resolution(m, i + 1)?, nm, i)?.pop().unwrap())
}

pub fn ext(m: &ZModule, nm: &ZModule, i: usize) -> Result<ZModule, Error> {
    Ok(ext_all(&free_resolution(m, i + 1)?, nm, i)?.pop().unwrap())
}

/// `Hom(C, Z)` for a complex of frees.
pub fn dual_complex(c: &FreeComplex) -> FreeComplex {
    c.dual()
}

/// Checks `Hom(J, Z) ≅ Σ^{-3} J` for the standard resolution `J` of `Z/I_a`
/// via the chain map `-1, -Rt, 1, 1` (top degree first).
pub fn self_duality_check(n: u64, a: u64) -> Result<bool, Error> {
    let j = standard_resolution(n, a)?.complex;
    let dj = dual_complex(&j);
    if dj.lo != -3 || dj.sets != j.sets {
        return Ok(false);
    }
    let pt = GSet::pt(n);
    let rt = EqMap::from_bz(&generator_r_t(n, a, 1)?);
    let phi = [
        EqMap::identity(&pt).scale(&Int::from(-1i64)),
        rt.scale(&Int::from(-1i64)),
        EqMap::identity(&GSet::orbit(n, a)),
        EqMap::identity(&pt),
    ];
    let s = j.shift(-3);
    Ok((1..4).all(|k| s.maps[k - 1].compose(&phi[k]).to_matrix() == phi[k - 1].compose(&dj.maps[k - 1]).to_matrix()))
}

/// Compares `Tor_i(Z/I_a, M)` with `Ext^{3-i}(Z/I_a, M)` for `i = 0..=3`.
pub fn ext_tor_duality(a: u64, m: &ZModule) -> Result<Vec<Comparison>, Error> {
    let res = standard_resolution(m.n, a)?;
    let t = tor_all(&res, m, 3)?;
    let e = ext_all(&res, m, 3)?;
    (0..4).map(|i| compare_modules(&t[i], &e[3 - i])).collect()
}

/// True when every degree has an explicit isomorphism.
pub fn ext_tor_duality_check(a: u64, m: &ZModule) -> Result<bool, Error> {
    Ok(ext_tor_duality(a, m)?.iter().all(|c| c.is_proven()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageMode {
    /// Homological: `E^2_{p,q} = ⊕ Tor_p(H_{q1} C, H_{q2} D)` over `q1 + q2 = q`.
    Kunneth,
    /// Cohomological: `E_2^{p,q} = ⊕ Ext^{-p}(H_{q1} C, H_{q2} D)` over `q2 - q1 = q`.
    Uct,
}

#[derive(Clone, Debug)]
pub struct E2Page {
    pub mode: PageMode,
    /// Nonzero entries only.
    pub entries: BTreeMap<(i64, i64), ZModule>,
}

impl E2Page {
    pub fn entry(&self, p: i64, q: i64) -> Option<&ZModule> {
        self.entries.get(&(p, q))
    }

    /// `Σ (-1)^{p+q} rank E(Θ_c)` over the page.
    pub fn euler_rank(&self, c: u64) -> i64 {
        self.entries.iter().map(|(&(p, q), m)| sign(p + q) * m.value(c).free_rank as i64).sum()
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `Σ (-1)^i rank H_i(Θ_c)`.
pub fn euler_rank(hs: &[(i64, ZModule)], c: u64) -> i64 {
    hs.iter().map(|(i, m)| sign(*i) * m.value(c).free_rank as i64).sum()
}

/// The `E_2` page from the homology of two complexes; columns `p = 0..=3` (any
/// nonzero entry beyond is reported as an error since resolutions have length at most 3).
pub fn e2_page(c: &MackeyComplex, d: &MackeyComplex, mode: PageMode) -> Result<E2Page, Error> {
    let hc: Vec<(i64, ZModule)> = complex_homology(c)?.into_iter().filter(|h| !h.1.is_zero()).collect();
    let hd: Vec<(i64, ZModule)> = complex_homology(d)?.into_iter().filter(|h| !h.1.is_zero()).collect();
    let mut raw: BTreeMap<(i64, i64), Vec<ZModule>> = BTreeMap::new();
    for (q1, x) in &hc {
        let res = match identify_quotient(x) {
            Some(a) => standard_resolution(x.n, a)?,
            None => free_resolution(x, 5)?,
        };
        for (q2, y) in &hd {
            let vals = match mode {
                PageMode::Kunneth => tor_all(&res, y, 4)?,
                PageMode::Uct => ext_all(&res, y, 4)?,
            };
            for (p, v) in vals.into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if p > 3 {
                    return Err(Error::Axiom(format!("nonzero entry in column {}", p)));
                }
                let key = match mode {
                    PageMode::Kunneth => (p as i64, q1 + q2),
                    PageMode::Uct => (-(p as i64), q2 - q1),
                };
                raw.entry(key).or_default().push(v);
            }
        }
    }
    let mut entries = BTreeMap::new();
    for (k, vs) in raw {
        let m = if vs.len() == 1 { vs.into_iter().next().unwrap() } else { direct_sum(&vs)?.0 };
        entries.insert(k, m);
    }
    Ok(E2Page { mode, entries })
}

/// Spotwise orders of a module (`None` for infinite values).
pub fn finite_orders(m: &ZModule) -> BTreeMap<u64, Option<Int>> {
    m.values().iter().map(|(&c, g): (&u64, &FgAbGroup)| (c, if g.free_rank == 0 { Some(g.torsion.iter().fold(Int::ONE, |a, b| &a * b)) } else { None })).collect()
}

#[cfg(test)]
mod tests;
