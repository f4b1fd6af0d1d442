//! Families of subgroups of `C_n`, their ideals in `Z`, annihilators and
//! generated submodules.
//!
//! A family is stored by subgroup orders; the subgroup of order `k` is the
//! stabilizer of the orbit `Θ_{n/k}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::boxhom::{box_product, yoneda_map};
use crate::burnside::GSet;
use crate::exactalg::{divides, divisors, gcd, lcm, Int, IntMatrix, Lattice, Subquotient};
use crate::mackey::{assemble, cyclic_module, map_cokernel, map_image, MackeyMap, ZModule};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Family {
    pub n: u64,
    pub members: BTreeSet<u64>,
}

impl Family {
    pub fn new(n: u64, members: impl IntoIterator<Item = u64>) -> Result<Family, Error> {
        let members: BTreeSet<u64> = members.into_iter().collect();
        for &k in &members {
            if !divides(k, n) {
                return Err(Error::Invalid(format!("{} does not divide {}", k, n)));
            }
            if let Some(&s) = divisors(k).iter().find(|s| !members.contains(s)) {
                return Err(Error::Invalid(format!("family contains {} but not its subgroup {}", k, s)));
            }
        }
        Ok(Family { n, members })
    }

    /// `F_d`: subgroups whose order divides `n/d`.
    pub fn of_divisor(n: u64, d: u64) -> Result<Family, Error> {
        if !divides(d, n) {
            return Err(Error::Invalid(format!("{} does not divide {}", d, n)));
        }
        Family::new(n, divisors(n / d))
    }

    pub fn all(n: u64) -> Family {
        Family { n, members: divisors(n).into_iter().collect() }
    }

    pub fn empty(n: u64) -> Family {
        Family { n, members: BTreeSet::new() }
    }

    /// Every family here has the form `F_d`; `None` for the empty family.
    pub fn divisor(&self) -> Option<u64> {
        self.members.iter().map(|k| self.n / k).reduce(gcd)
    }

    /// Spots `Θ_j` whose stabilizer lies in the family.
    pub fn spots(&self) -> Vec<u64> {
        self.members.iter().map(|k| self.n / k).collect()
    }

    pub fn contains_spot(&self, j: u64) -> bool {
        self.members.contains(&(self.n / j))
    }

    pub fn union(&self, o: &Family) -> Family {
        Family { n: self.n, members: self.members.union(&o.members).copied().collect() }
    }

    pub fn intersection(&self, o: &Family) -> Family {
        Family { n: self.n, members: self.members.intersection(&o.members).copied().collect() }
    }

    /// Order of `(Z/F)(Θ_j)`: the gcd of `[J : J ∩ K]` over `K ∈ F` (0 for the empty family).
    pub fn order_at(&self, j: u64) -> u64 {
        let jj = self.n / j;
        self.members.iter().fold(0, |acc, &k| gcd(acc, jj / gcd(jj, k)))
    }
}

/// The ideal of `Z` generated at `Θ_j` by `gen(j)`, zero where `gen(j) = 0`.
pub fn ideal_from_generators(n: u64, gen: impl Fn(u64) -> u64 + Clone) -> Result<ZModule, Error> {
    let (g1, g2) = (gen.clone(), gen.clone());
    cyclic_module(
        n,
        move |d| if gen(d) == 0 { Int::ONE } else { Int::ZERO },
        move |x, y, _| Int::from(g1(x) / g1(y)),
        move |x, y, l| Int::from(l * g2(y) / g2(x)),
        |_| Int::ONE,
    )
}

pub fn family_ideal(f: &Family) -> Result<ZModule, Error> {
    let f2 = f.clone();
    ideal_from_generators(f.n, move |j| f2.order_at(j))
}

pub fn family_quotient(f: &Family) -> Result<ZModule, Error> {
    let f2 = f.clone();
    cyclic_module(f.n, move |j| Int::from(f2.order_at(j)), |_, _, _| Int::ONE, |_, _, l| Int::from(l), |_| Int::ONE)
}

/// `I_F` as the image of the Yoneda map `⊕_{K ∈ F} F_{G/K} → Z` hitting `1`.
pub fn family_ideal_by_closure(f: &Family) -> Result<ZModule, Error> {
    let z = crate::mackey::constant_z(f.n)?;
    let spots = f.spots();
    if spots.is_empty() {
        return crate::mackey::zero_module(f.n);
    }
    let y = yoneda_map(&z, &GSet::new(f.n, spots.clone())?, &vec![vec![Int::ONE]; spots.len()])?;
    Ok(map_image(&y)?.0)
}

/// The union and intersection of two families, after checking
/// `I_{F1 ∪ F2} = I_{F1} + I_{F2}` and `I_{F1 ∩ F2} ⊆ I_{F1} ∩ I_{F2}` spotwise.
pub fn family_algebra(a: &Family, b: &Family) -> Result<(Family, Family), Error> {
    if a.n != b.n {
        return Err(Error::Invalid(format!("families over C_{} and C_{}", a.n, b.n)));
    }
    let (u, i) = (a.union(b), a.intersection(b));
    for j in divisors(a.n) {
        let (x, y) = (a.order_at(j), b.order_at(j));
        if u.order_at(j) != gcd(x, y) {
            return Err(Error::Axiom(format!("I of the union is not the sum at Θ_{}", j)));
        }
        let meet = if x == 0 || y == 0 { 0 } else { lcm(x, y) };
        let w = i.order_at(j);
        if !(meet == 0 && w == 0 || meet != 0 && divides(meet, w)) {
            return Err(Error::Axiom(format!("I of the intersection is not inside the meet at Θ_{}", j)));
        }
    }
    Ok((u, i))
}

/// Spotwise generators of `I_a ∩ I_b` and of the product ideal `I_a · I_b`
/// (closed under transfers from products at larger spots).
pub fn ideal_meet_and_product(n: u64, a: u64, b: u64) -> Vec<(u64, u64, u64)> {
    let k = |x: u64, j: u64| x / gcd(x, j);
    divisors(n)
        .into_iter()
        .map(|j| {
            let meet = lcm(k(a, j), k(b, j));
            let prod = divisors(n).into_iter().filter(|m| m % j == 0).fold(0, |acc, m| gcd(acc, (m / j) * k(a, m) * k(b, m)));
            (j, meet, prod)
        })
        .collect()
}

/// `Ann_F M`: elements whose restrictions to every family spot vanish.
pub fn ann_family(f: &Family, m: &ZModule) -> Result<(ZModule, MackeyMap), Error> {
    let mut sqs = BTreeMap::new();
    for j in divisors(m.n) {
        let v = m.value(j);
        let mut mat = IntMatrix::zeros(0, v.dim());
        let mut tors = Vec::new();
        for t in f.spots().into_iter().filter(|t| t % j == 0) {
            let off = mat.rows();
            for (r, o) in m.value(t).torsion.iter().enumerate() {
                tors.push((off + r, o.clone()));
            }
            mat = mat.vstack(m.res_matrix(j, t));
        }
        let lat = if mat.rows() == 0 { Lattice::full(v.dim()) } else { Lattice::preimage(&mat, &tors) };
        sqs.insert(j, Subquotient::new(lat, &v.relations()));
    }
    sub_with_inclusion(m, &sqs)
}

fn sub_with_inclusion(m: &ZModule, sqs: &BTreeMap<u64, Subquotient>) -> Result<(ZModule, MackeyMap), Error> {
    let sub = assemble(m.n, sqs, &m.diagram())?;
    let comps = sqs.iter().map(|(&d, sq)| (d, sq.gens.clone())).collect();
    let inc = MackeyMap::new(sub.clone(), m.clone(), comps)?;
    Ok((sub, inc))
}

/// `M{F}`: the submodule generated by the values at family spots.
pub fn generated_part(f: &Family, m: &ZModule) -> Result<(ZModule, MackeyMap), Error> {
    let mut orbits = Vec::new();
    let mut elems = Vec::new();
    for t in f.spots() {
        let k = m.value(t).dim();
        for g in 0..k {
            let mut e = vec![Int::ZERO; k];
            e[g] = Int::ONE;
            orbits.push(t);
            elems.push(e);
        }
    }
    if orbits.is_empty() {
        let z = crate::mackey::zero_module(m.n)?;
        let inc = MackeyMap::zero(&z, m);
        return Ok((z, inc));
    }
    map_image(&yoneda_map(m, &GSet::new(m.n, orbits)?, &elems)?)
}

/// `M / M{F}`.
pub fn generated_quotient(f: &Family, m: &ZModule) -> Result<ZModule, Error> {
    Ok(map_cokernel(&generated_part(f, m)?.1)?.0)
}

/// True when `M` vanishes at every family spot; then `I_F ⊠ M = 0` is checked too.
pub fn null_check(f: &Family, m: &ZModule) -> Result<bool, Error> {
    let null = f.spots().iter().all(|&t| m.value(t).is_zero());
    if null && !box_product(&family_ideal(f)?, m)?.is_zero() {
        return Err(Error::Axiom(String::from("I_F ⊠ M is nonzero for an F-null module")));
    }
    Ok(null)
}

#[cfg(test)]
mod tests;
