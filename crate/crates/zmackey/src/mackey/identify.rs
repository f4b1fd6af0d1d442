use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::named::fixed_point_parts;
use super::{form_z, map_cokernel, map_kernel, MackeyMap, ZModule};
use crate::exactalg::{divides, divisors, gcd, hom_group, prime_edges, primes_of, valuation, AbHom, FgAbGroup, HomGroup, Int, IntMatrix, Lattice, Subquotient};
use crate::Error;

/// `Some(a)` when `M(Θ_1) ≅ ℤ/a`, `M(Θ_a) = 0` and every restriction is onto.
pub fn identify_quotient(m: &ZModule) -> Option<u64> {
    let a = m.value(1).cyclic_order()?;
    let a = a.to_u64()?;
    if a == 0 || !divides(a, m.n) || !m.value(a).is_zero() {
        return None;
    }
    for (x, y, _) in prime_edges(m.n) {
        if !m.res(x, y).is_surjective() {
            return None;
        }
    }
    Some(a)
}

/// `Some((e, d))` when `M ≅ Z(e; d)`; per prime an empty interval is reported as exponent 0 in both.
pub fn identify_form_of_z(m: &ZModule) -> Option<(u64, u64)> {
    let n = m.n;
    if m.values().values().any(|v| *v != FgAbGroup::free(1)) {
        return None;
    }
    for d in divisors(n) {
        if !m.act_matrix(d).get(0, 0).is_one() {
            return None;
        }
    }
    // signs making restriction multipliers nonnegative
    let mut sign: BTreeMap<u64, i64> = BTreeMap::new();
    sign.insert(1, 1);
    for d in divisors(n).into_iter().skip(1) {
        let p = primes_of(d)[0];
        let r = m.res_matrix(d / p, d).get(0, 0);
        let s = if r.is_negative() { -1 } else { 1 };
        sign.insert(d, s * sign[&(d / p)]);
    }
    let mult = |a: u64, b: u64, x: &Int| -> Int { x * &Int::from(sign[&a] * sign[&b]) };
    let mut e = 1u64;
    let mut dd = 1u64;
    for p in primes_of(n) {
        let top = valuation(p, n);
        let mut ups = Vec::new();
        for v in 0..top {
            let j = p.pow(v);
            let r = mult(j, j * p, m.res_matrix(j, j * p).get(0, 0));
            if r == Int::from(p) {
                ups.push(v);
            } else if !r.is_one() {
                return None;
            }
        }
        if let (Some(&lo), Some(&hi)) = (ups.first(), ups.last()) {
            if ups.len() as u32 != hi - lo + 1 {
                return None;
            }
            e *= p.pow(hi + 1);
            dd *= p.pow(lo);
        }
    }
    let f = form_z(n, e, dd).ok()?;
    for (a, b, _) in prime_edges(n) {
        if mult(a, b, m.res_matrix(a, b).get(0, 0)) != *f.res_matrix(a, b).get(0, 0)
            || mult(a, b, m.tr_matrix(a, b).get(0, 0)) != *f.tr_matrix(a, b).get(0, 0)
        {
            return None;
        }
    }
    Some((e, dd))
}

fn units(k: &Int) -> Vec<Int> {
    if k.is_zero() {
        return vec![Int::ONE, Int::from(-1)];
    }
    let k64 = k.to_u64().expect("cyclic order fits in u64");
    (1..k64.max(2)).filter(|&u| gcd(u, k64) == 1).map(Int::from).collect()
}

/// An isomorphism between cyclic-valued modules, found by searching unit multipliers.
pub fn find_cyclic_iso(m: &ZModule, n: &ZModule) -> Result<Option<MackeyMap>, Error> {
    if !m.is_cyclic_valued() || !n.is_cyclic_valued() {
        return Err(Error::Invalid(String::from("unit search needs cyclic values")));
    }
    if m.n != n.n {
        return Err(Error::Invalid(format!("modules over C_{} and C_{}", m.n, n.n)));
    }
    let divs = divisors(m.n);
    let mut order = BTreeMap::new();
    for &d in &divs {
        if m.value(d) != n.value(d) {
            return Ok(None);
        }
        if m.value(d).dim() == 1 {
            let k = m.value(d).order(0);
            let diff = (m.act_matrix(d).get(0, 0) - n.act_matrix(d).get(0, 0)).rem_euclid(&k);
            if !diff.is_zero() {
                return Ok(None);
            }
            order.insert(d, k);
        }
    }
    let live: Vec<u64> = order.keys().copied().collect();
    let mut constraints: Vec<(u64, u64)> = Vec::new();
    for (a, b, _) in prime_edges(m.n) {
        if order.contains_key(&a) && order.contains_key(&b) {
            constraints.push((a, b));
        }
    }
    let ok = |u: &BTreeMap<u64, Int>, a: u64, b: u64| -> bool {
        let (ua, ub) = (&u[&a], &u[&b]);
        let (kb, ka) = (&order[&b], &order[&a]);
        let r = (ub * m.res_matrix(a, b).get(0, 0) - n.res_matrix(a, b).get(0, 0) * ua).rem_euclid(kb);
        let t = (ua * m.tr_matrix(a, b).get(0, 0) - n.tr_matrix(a, b).get(0, 0) * ub).rem_euclid(ka);
        r.is_zero() && t.is_zero()
    };
    let mut u: BTreeMap<u64, Int> = BTreeMap::new();
    let cands: Vec<Vec<Int>> = live.iter().map(|d| units(&order[d])).collect();
    fn go(
        i: usize,
        live: &[u64],
        cands: &[Vec<Int>],
        cons: &[(u64, u64)],
        u: &mut BTreeMap<u64, Int>,
        ok: &dyn Fn(&BTreeMap<u64, Int>, u64, u64) -> bool,
    ) -> bool {
        if i == live.len() {
            return true;
        }
        let d = live[i];
        for c in &cands[i] {
            u.insert(d, c.clone());
            let fine = cons.iter().filter(|&&(a, b)| (a == d || b == d) && u.contains_key(&a) && u.contains_key(&b)).all(|&(a, b)| ok(u, a, b));
            if fine && go(i + 1, live, cands, cons, u, ok) {
                return true;
            }
            u.remove(&d);
        }
        false
    }
    if !go(0, &live, &cands, &constraints, &mut u, &ok) {
        return Ok(None);
    }
    let comps = divs
        .iter()
        .map(|&d| {
            let k = m.value(d).dim();
            let mat = if k == 1 { IntMatrix::scalar(1, &u[&d]) } else { IntMatrix::zeros(0, 0) };
            (d, mat)
        })
        .collect();
    Ok(Some(MackeyMap::new(m.clone(), n.clone(), comps)?))
}

pub fn is_isomorphic_cyclic_valued(m: &ZModule, n: &ZModule) -> Result<bool, Error> {
    Ok(find_cyclic_iso(m, n)?.is_some())
}

/// Catalogue name of a module, or `None`.
pub fn catalogue_label(m: &ZModule) -> Option<String> {
    if m.is_zero() {
        return Some(String::from("0"));
    }
    if let Some((e, d)) = identify_form_of_z(m) {
        return Some(match (e, d) {
            (1, 1) => String::from("Z"),
            (e, 1) => format!("I_{}", e),
            (e, d) => format!("Z({};{})", e, d),
        });
    }
    if let Some(a) = identify_quotient(m) {
        return Some(format!("Z/I_{}", a));
    }
    if m.is_cyclic_valued() {
        for b in divisors(m.n) {
            for a in divisors(b) {
                if a == 1 || a == b {
                    continue;
                }
                let c = super::ia_mod_ib(m.n, a, b).ok()?;
                if find_cyclic_iso(m, &c).ok().flatten().is_some() {
                    return Some(format!("I_{}/I_{}", a, b));
                }
            }
        }
    }
    None
}

/// Catalogue label, falling back to the invariant factors per spot.
pub fn label(m: &ZModule) -> String {
    match catalogue_label(m) {
        Some(s) => s,
        None => {
            let parts: Vec<String> = m.values().iter().map(|(d, v)| format!("{}: {}", d, v)).collect();
            format!("unidentified [{}]", parts.join(", "))
        }
    }
}

/// `Ann_a(M)` and `Ann_b(M)` for coprime `a, b` with `ab·M = 0`.
pub fn annihilator_decompose(m: &ZModule, a: u64, b: u64) -> Result<(ZModule, ZModule), Error> {
    if gcd(a, b) != 1 {
        return Err(Error::Invalid(format!("{} and {} are not coprime", a, b)));
    }
    let ab = MackeyMap::identity(m).scale(&Int::from(a * b));
    if !ab.is_zero() {
        return Err(Error::Invalid(format!("{} does not annihilate the module", a * b)));
    }
    let ka = map_kernel(&MackeyMap::identity(m).scale(&Int::from(a)))?.0;
    let kb = map_kernel(&MackeyMap::identity(m).scale(&Int::from(b)))?.0;
    Ok((ka, kb))
}

fn killed_by_power_of(g: &FgAbGroup, n: u64) -> bool {
    g.free_rank == 0
        && g.torsion.iter().all(|t| {
            let t = t.to_u64().expect("small torsion");
            primes_of(t).iter().all(|p| n % p == 0)
        })
}

/// The unit `M → FP(M(Θ_n))` has kernel and cokernel killed by a power of `n`.
pub fn rationalization_check(m: &ZModule) -> Result<bool, Error> {
    let n = m.n;
    let (fp, sqs) = fixed_point_parts(n, m.value(n), m.act_matrix(n))?;
    let comps = divisors(n).into_iter().map(|d| (d, sqs[&d].coords_matrix(m.res_matrix(d, n)))).collect();
    let unit = MackeyMap::new(m.clone(), fp, comps)?;
    let k = map_kernel(&unit)?.0;
    let c = map_cokernel(&unit)?.0;
    Ok(k.values().values().chain(c.values().values()).all(|g| killed_by_power_of(g, n)))
}

/// The group of Mackey maps `M → N`, with a decoder to maps.
pub struct MackeyHomGroup {
    pub source: ZModule,
    pub target: ZModule,
    spots: Vec<(u64, HomGroup, usize)>,
    sq: Subquotient,
}

impl MackeyHomGroup {
    pub fn group(&self) -> &FgAbGroup {
        &self.sq.group
    }

    pub fn decode(&self, c: &[Int]) -> MackeyMap {
        let x = self.sq.lift(c);
        let comps = self
            .spots
            .iter()
            .map(|(d, hg, off)| {
                let k = hg.group().dim();
                (*d, hg.decode(&x[*off..*off + k]).matrix)
            })
            .collect();
        MackeyMap::new_unchecked(self.source.clone(), self.target.clone(), comps).expect("decoded map has the right shape")
    }

    pub fn encode(&self, f: &MackeyMap) -> Vec<Int> {
        let mut x = Vec::new();
        for (d, hg, _) in &self.spots {
            x.extend(hg.encode(&f.component(*d)));
        }
        self.sq.class_of(&x).expect("map satisfies the naturality constraints")
    }
}

pub fn mackey_hom_group(m: &ZModule, n: &ZModule) -> Result<MackeyHomGroup, Error> {
    if m.n != n.n {
        return Err(Error::Invalid(format!("modules over C_{} and C_{}", m.n, n.n)));
    }
    let divs = divisors(m.n);
    let mut spots = Vec::new();
    let mut src_orders = Vec::new();
    let mut index = BTreeMap::new();
    for &d in &divs {
        let hg = hom_group(m.value(d), n.value(d));
        index.insert(d, spots.len());
        let off = src_orders.len();
        src_orders.extend(hg.group().orders());
        spots.push((d, hg, off));
    }
    // constraint groups: act at each spot, res and tr on each edge
    enum Con {
        Act(u64),
        Res(u64, u64),
        Tr(u64, u64),
    }
    let mut cons: Vec<(Con, HomGroup, usize)> = Vec::new();
    let mut tgt_orders: Vec<Int> = Vec::new();
    let mut push = |c: Con, hg: HomGroup, cons: &mut Vec<(Con, HomGroup, usize)>| {
        let off = tgt_orders.len();
        tgt_orders.extend(hg.group().orders());
        cons.push((c, hg, off));
    };
    for &d in &divs {
        push(Con::Act(d), hom_group(m.value(d), n.value(d)), &mut cons);
    }
    for (a, b, _) in prime_edges(m.n) {
        push(Con::Res(a, b), hom_group(m.value(a), n.value(b)), &mut cons);
        push(Con::Tr(a, b), hom_group(m.value(b), n.value(a)), &mut cons);
    }
    let total_tgt = tgt_orders.len();
    let mut cmat = IntMatrix::zeros(total_tgt, src_orders.len());
    for (d, hg, off) in &spots {
        for g in 0..hg.group().dim() {
            let mut e = vec![Int::ZERO; hg.group().dim()];
            e[g] = Int::ONE;
            let h = hg.decode(&e);
            let col = off + g;
            for (c, chg, coff) in &cons {
                let val: Option<AbHom> = match *c {
                    Con::Act(x) if x == *d => Some(h.compose(&m.act(x)).sub(&n.act(x).compose(&h))),
                    Con::Res(a, b) if a == *d => Some(n.res(a, b).compose(&h).scale_neg()),
                    Con::Res(a, b) if b == *d => Some(h.compose(&m.res(a, b))),
                    Con::Tr(a, b) if a == *d => Some(h.compose(&m.tr(a, b))),
                    Con::Tr(a, b) if b == *d => Some(n.tr(a, b).compose(&h).scale_neg()),
                    _ => None,
                };
                if let Some(v) = val {
                    for (i, x) in chg.encode(&v).into_iter().enumerate() {
                        let cur = cmat.get(coff + i, col).clone();
                        cmat.set(coff + i, col, cur + x);
                    }
                }
            }
        }
    }
    let tors: Vec<(usize, Int)> = tgt_orders.iter().enumerate().filter(|(_, o)| !o.is_zero()).map(|(i, o)| (i, o.clone())).collect();
    let lat = Lattice::preimage(&cmat, &tors);
    let sq = Subquotient::new(lat, &IntMatrix::diagonal(&src_orders));
    let _ = index;
    Ok(MackeyHomGroup { source: m.clone(), target: n.clone(), spots, sq })
}

trait NegHom {
    fn scale_neg(&self) -> AbHom;
}

impl NegHom for AbHom {
    fn scale_neg(&self) -> AbHom {
        AbHom::zero(&self.source, &self.target).sub(self)
    }
}

/// Outcome of comparing two modules.
#[derive(Clone, Debug)]
pub enum Comparison {
    /// An explicit isomorphism.
    Proven(MackeyMap),
    /// Every computed invariant agrees but no isomorphism was found.
    Weak,
    Different(String),
}

impl Comparison {
    pub fn is_proven(&self) -> bool {
        matches!(self, Comparison::Proven(_))
    }

    pub fn is_different(&self) -> bool {
        matches!(self, Comparison::Different(_))
    }
}

fn edge_invariants(m: &ZModule) -> Vec<FgAbGroup> {
    let mut out = Vec::new();
    for (a, b, _) in prime_edges(m.n) {
        out.push(m.res(a, b).cokernel().group);
        out.push(m.res(a, b).kernel().group);
        out.push(m.tr(a, b).cokernel().group);
        out.push(m.tr(a, b).kernel().group);
    }
    out
}

/// Search for an isomorphism, falling back to invariants.
pub fn compare_modules(m: &ZModule, n: &ZModule) -> Result<Comparison, Error> {
    if m.n != n.n {
        return Err(Error::Invalid(format!("modules over C_{} and C_{}", m.n, n.n)));
    }
    for d in m.divisors() {
        if m.value(d) != n.value(d) {
            return Ok(Comparison::Different(format!("values at Θ_{} differ: {} vs {}", d, m.value(d), n.value(d))));
        }
    }
    if m.is_cyclic_valued() {
        return Ok(match find_cyclic_iso(m, n)? {
            Some(f) => Comparison::Proven(f),
            None => Comparison::Different(String::from("no unit multipliers commute with the structure maps")),
        });
    }
    if edge_invariants(m) != edge_invariants(n) {
        return Ok(Comparison::Different(String::from("kernels or cokernels of structure maps differ")));
    }
    if let Some(f) = crate::boxhom::free_cover_iso(m, n)? {
        return Ok(Comparison::Proven(f));
    }
    let hg = mackey_hom_group(m, n)?;
    let k = hg.group().dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut tries: Vec<Vec<Int>> = Vec::new();
    for i in 0..k {
        let mut e = vec![Int::ZERO; k];
        e[i] = Int::ONE;
        tries.push(e);
    }
    for _ in 0..400 {
        tries.push((0..k).map(|_| Int::from((rng.next_u32() % 5) as i64 - 2)).collect());
    }
    for c in &tries {
        let f = hg.decode(c);
        if f.is_iso() {
            return Ok(Comparison::Proven(f));
        }
    }
    let em = mackey_hom_group(m, m)?.group().clone();
    let en = mackey_hom_group(n, n)?.group().clone();
    if em != en {
        return Ok(Comparison::Different(format!("endomorphism groups differ: {} vs {}", em, en)));
    }
    let back = mackey_hom_group(n, m)?.group().clone();
    if back != *hg.group() {
        return Ok(Comparison::Different(String::from("Hom(M,N) and Hom(N,M) differ")));
    }
    Ok(Comparison::Weak)
}
