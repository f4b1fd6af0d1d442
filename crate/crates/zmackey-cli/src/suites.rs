//! Acceptance suites, one per criterion, shared by `verify` and the test target.

use std::time::{Duration, Instant};

use anyhow::{ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zmackey::boxhom::box_oracle_iso;
use zmackey::bredon::{d3_discrepancy_with, euler_matches, kunneth_dual_spheres, kunneth_spheres, rep_homology};
use zmackey::burnside::GSet;
use zmackey::exactalg::{determinant_divisors, divides, divisors, gcd, lcm, prime_edges, smith_normal_form, FgAbGroup, Int, IntMatrix};
use zmackey::families::{family_ideal, family_quotient, Family};
use zmackey::groupchange::{monoidality_check, tor_change_check};
use zmackey::mackey::{
    colon_kernel, compare_modules, constant_z, form_z, free_module, ia_mod_ib, ideal, identify_form_of_z, identify_quotient, quotient, quotient_rel,
    NamedModule, ZModule,
};
use zmackey::resolutions::{ext_all, free_resolution, self_duality_check, standard_resolution, tor_all};

pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Check = fn() -> Result<String>;

pub const SUITES: [(&str, Check); 11] = [
    ("c45-family", c45_family),
    ("quotient-tables", quotient_tables),
    ("exactness", exactness),
    ("box-oracle", box_oracle),
    ("tor-ideals", tor_ideals),
    ("dimension", dimension),
    ("self-duality", self_duality),
    ("spheres", spheres),
    ("change-of-groups", change_of_groups),
    ("torsion-orders", torsion_orders),
    ("properties", properties),
];

pub fn names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

pub fn run_one(id: usize) -> Outcome {
    let (name, f) = SUITES[id];
    let t = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(e) => (false, format!("{:#}", e)),
    };
    Outcome { id: id + 1, name, passed, detail, elapsed: t.elapsed() }
}

/// `all`, a suite name, or a criterion number.
pub fn select(name: &str) -> Option<Vec<usize>> {
    if name == "all" {
        return Some((0..SUITES.len()).collect());
    }
    if let Ok(k) = name.parse::<usize>() {
        return (1..=SUITES.len()).contains(&k).then(|| vec![k - 1]);
    }
    SUITES.iter().position(|s| s.0 == name).map(|i| vec![i])
}

pub fn format_outcome(o: &Outcome) -> String {
    format!("{} {:>2} {} ({:.2?}): {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.name, o.elapsed, o.detail)
}

fn proven(a: &ZModule, b: &ZModule) -> Result<bool> {
    Ok(compare_modules(a, b)?.is_proven())
}

fn is_quotient(m: &ZModule, a: u64) -> bool {
    if a == 1 {
        m.is_zero()
    } else {
        identify_quotient(m) == Some(a)
    }
}

fn scalar(m: &IntMatrix) -> Option<i64> {
    (m.rows() == 1 && m.cols() == 1).then(|| m.get(0, 0).to_i64()).flatten()
}

fn c45_family() -> Result<String> {
    // the three diagrams as drawn: generators of I_F inside Z, then orders of Z/I_F
    let n = 45;
    let gens = [(1, 15), (5, 3), (3, 5), (15, 1), (9, 5), (45, 1)];
    let f = Family::new(n, [1, 3])?;
    let z = constant_z(n)?;
    let i = family_ideal(&f)?;
    let q = family_quotient(&f)?;
    for (d, g) in gens {
        ensure!(z.value(d) == &FgAbGroup::free(1), "Z at Θ_{}", d);
        ensure!(i.value(d) == &FgAbGroup::free(1), "I_F at Θ_{}", d);
        ensure!(f.order_at(d) == g, "generator of I_F at Θ_{} is {}·1, not {}·1", d, f.order_at(d), g);
        let want = if g == 1 { FgAbGroup::zero() } else { FgAbGroup::cyclic(&Int::from(g)) };
        ensure!(q.value(d) == &want, "Z/I_F at Θ_{} is {}, not {}", d, q.value(d), want);
    }
    let g = |d: u64| gens.iter().find(|x| x.0 == d).unwrap().1 as i64;
    let mut edges = 0;
    for (d, e, l) in prime_edges(n) {
        let l = l as i64;
        ensure!(scalar(z.res_matrix(d, e)) == Some(1) && scalar(z.tr_matrix(d, e)) == Some(l), "Z on Θ_{} -> Θ_{}", d, e);
        // I_F carries the multipliers of Z
        let (r, t) = (scalar(i.res_matrix(d, e)).unwrap_or(0), scalar(i.tr_matrix(d, e)).unwrap_or(0));
        ensure!(r * g(e) == g(d) && t * g(d) == l * g(e), "I_F on Θ_{} -> Θ_{}", d, e);
        // Z/I_F: restrictions 1 ↦ 1 and transfers ℓ, read modulo the target
        let (od, oe) = (g(d), g(e));
        if oe > 1 {
            ensure!((scalar(q.res_matrix(d, e)).unwrap() - 1).rem_euclid(oe) == 0, "Z/I_F restriction Θ_{} -> Θ_{}", d, e);
        }
        if od > 1 && oe > 1 {
            ensure!((scalar(q.tr_matrix(d, e)).unwrap() - l).rem_euclid(od) == 0, "Z/I_F transfer Θ_{} -> Θ_{}", e, d);
        }
        edges += 1;
    }
    ensure!(q == quotient(n, 15)?, "Z/I_F differs from Z/I_15");
    Ok(format!("6 spots, {} edges, 3 diagrams", edges))
}

fn quotient_tables() -> Result<String> {
    let mut count = 0;
    for n in [12, 45, 60] {
        let z = constant_z(n)?;
        for a in divisors(n) {
            let res = standard_resolution(n, a)?;
            for b in divisors(n) {
                let g = gcd(a, b);
                let qb = quotient(n, b)?;
                let t = tor_all(&res, &qb, 5)?;
                let e = ext_all(&res, &qb, 5)?;
                for i in 0..=5 {
                    let want = if i == 0 || i == 3 { g } else { 1 };
                    ensure!(is_quotient(&t[i], want), "Tor_{}(Z/I_{}, Z/I_{}) over C_{}", i, a, b, n);
                    ensure!(is_quotient(&e[i], want), "Ext^{}(Z/I_{}, Z/I_{}) over C_{}", i, a, b, n);
                    count += 2;
                }
            }
            let e = ext_all(&res, &z, 5)?;
            for i in 0..=5 {
                ensure!(is_quotient(&e[i], if i == 3 { a } else { 1 }), "Ext^{}(Z/I_{}, Z) over C_{}", i, a, n);
                count += 1;
            }
        }
    }
    Ok(format!("{} modules identified", count))
}

fn exactness() -> Result<String> {
    let mut count = 0;
    for n in 1..=120u64 {
        for a in divisors(n) {
            let h = standard_resolution(n, a)?.complex.homology()?;
            for (i, m) in &h {
                if (1..=3).contains(i) {
                    ensure!(m.is_zero(), "H_{} of the resolution of Z/I_{} over C_{}", i, a, n);
                }
            }
            count += 1;
        }
    }
    Ok(format!("{} resolutions", count))
}

pub fn corpus(n: u64) -> Result<Vec<ZModule>> {
    let mut out = vec![constant_z(n)?];
    for a in divisors(n) {
        out.push(ideal(n, a)?);
        out.push(quotient(n, a)?);
        out.push(free_module(&GSet::orbit(n, a))?);
    }
    if n % 2 == 0 {
        out.push(NamedModule::FpSign.build(n)?);
    }
    Ok(out)
}

fn box_oracle() -> Result<String> {
    let mut count = 0;
    for n in [2, 4, 6, 12] {
        let c = corpus(n)?;
        for (i, m) in c.iter().enumerate() {
            for (j, nm) in c.iter().enumerate() {
                let f = box_oracle_iso(m, nm)?;
                ensure!(f.is_iso(), "comparison map is not invertible for pair ({}, {}) over C_{}", i, j, n);
                count += 1;
            }
        }
    }
    Ok(format!("{} pairs", count))
}

fn tor_ideals() -> Result<String> {
    let mut count = 0;
    for n in [12, 30] {
        for a in divisors(n) {
            let ra = free_resolution(&ideal(n, a)?, 5)?;
            let sa = standard_resolution(n, a)?;
            for b in divisors(n) {
                let g = gcd(a, b);
                let ib = ideal(n, b)?;
                let t = tor_all(&ra, &ib, 4)?;
                ensure!(proven(&t[0], &ideal(n, lcm(a, b))?)?, "Tor_0(I_{}, I_{}) over C_{}", a, b, n);
                ensure!(is_quotient(&t[1], g), "Tor_1(I_{}, I_{}) over C_{}", a, b, n);
                ensure!(t[2..].iter().all(|x| x.is_zero()), "Tor_{{≥2}}(I_{}, I_{}) over C_{}", a, b, n);
                let t = tor_all(&sa, &ib, 4)?;
                ensure!(proven(&t[0], &ia_mod_ib(n, g, a)?)?, "Tor_0(Z/I_{}, I_{}) over C_{}", a, b, n);
                ensure!(is_quotient(&t[2], g), "Tor_2(Z/I_{}, I_{}) over C_{}", a, b, n);
                ensure!(t[1].is_zero() && t[3].is_zero() && t[4].is_zero(), "Tor_{{1,3,4}}(Z/I_{}, I_{}) over C_{}", a, b, n);
                count += 2;
            }
        }
    }
    Ok(format!("{} tables", count))
}

fn dimension() -> Result<String> {
    let n = 12;
    let c = corpus(n)?;
    let mut count = 0;
    for (i, m) in c.iter().enumerate() {
        let r = free_resolution(m, 7)?;
        for (j, nm) in c.iter().enumerate() {
            let t = tor_all(&r, nm, 6)?;
            let e = ext_all(&r, nm, 6)?;
            for k in 4..=6 {
                ensure!(t[k].is_zero() && e[k].is_zero(), "degree {} for pair ({}, {})", k, i, j);
                count += 2;
            }
        }
    }
    Ok(format!("{} vanishing groups over {} pairs", count, c.len() * c.len()))
}

fn self_duality() -> Result<String> {
    let ds = divisors(60);
    for &a in &ds {
        ensure!(self_duality_check(60, a)?, "dual of the resolution of Z/I_{}", a);
    }
    Ok(format!("{} resolutions", ds.len()))
}

fn spheres() -> Result<String> {
    let mut count = 0;
    for n in [12, 30] {
        let z = constant_z(n)?;
        for a in divisors(n) {
            for b in divisors(n) {
                let h = rep_homology(n, &[a, b], 0)?;
                let at = |i: i64| h.iter().find(|x| x.0 == i).map(|x| &x.1);
                ensure!(h.iter().all(|x| (0..=4).contains(&x.0)), "degrees of S^{} ⊠ S^{}", a, b);
                ensure!(proven(at(4).unwrap(), &z)?, "H_4 of S^{} ⊠ S^{} over C_{}", a, b, n);
                ensure!(at(3).map_or(true, |m| m.is_zero()) && at(1).map_or(true, |m| m.is_zero()), "odd degrees of S^{} ⊠ S^{}", a, b);
                ensure!(at(2).map_or(false, |m| is_quotient(m, lcm(a, b))), "H_2 of S^{} ⊠ S^{} over C_{}", a, b, n);
                ensure!(at(0).map_or(false, |m| is_quotient(m, gcd(a, b))), "H_0 of S^{} ⊠ S^{} over C_{}", a, b, n);
                let hd = rep_homology(n, &[a, b], 1)?;
                let h0 = &hd.iter().find(|x| x.0 == 0).unwrap().1;
                ensure!(identify_form_of_z(h0).is_some() && proven(h0, &form_z(n, a, gcd(a, b))?)?, "H_0 of Hom(S^{}, Z) ⊠ S^{} over C_{}", a, b, n);
                let (page, dpage) = (kunneth_spheres(n, a, b)?, kunneth_dual_spheres(n, a, b)?);
                ensure!(euler_matches(&page, &h, n) && euler_matches(&dpage, &hd, n), "Euler characteristics for ({}, {})", a, b);
                ensure!(d3_discrepancy_with(&page, &h, n, a, b)?, "page minus abutment for ({}, {})", a, b);
                count += 1;
            }
        }
    }
    Ok(format!("{} sphere pairs", count))
}

fn change_of_groups() -> Result<String> {
    let mut count = 0;
    for e in 0..=2 {
        for f in 0..=2 {
            ensure!(tor_change_check(12, 2, e, f)?, "Tor over C_12 at ℓ = 2, ({}, {})", e, f);
            count += 1;
        }
    }
    for e in 0..=1 {
        for f in 0..=1 {
            ensure!(tor_change_check(12, 3, e, f)?, "Tor over C_12 at ℓ = 3, ({}, {})", e, f);
            count += 1;
        }
    }
    for m in [2, 3] {
        for a in divisors(m) {
            for b in divisors(m) {
                ensure!(monoidality_check(&quotient(m, a)?, &quotient(m, b)?, 6)?, "pullback C_6 → C_{} on (Z/I_{}, Z/I_{})", m, a, b);
                count += 1;
            }
        }
    }
    Ok(format!("{} checks", count))
}

fn cyclic_order(m: &ZModule, d: u64) -> Option<u64> {
    m.value(d).cyclic_order().and_then(|k| k.to_u64())
}

fn torsion_orders() -> Result<String> {
    let n = 12;
    let ds = divisors(n);
    let mut count = 0;
    for &b in &ds {
        for &c in &ds {
            for x in 1..=b {
                if !divides(b, c * x) {
                    continue;
                }
                let (qr, ck) = (quotient_rel(n, b, x, c)?, colon_kernel(n, b, x, c)?);
                for &d in &ds {
                    let want = gcd(b / gcd(b, d), x);
                    ensure!(cyclic_order(&qr, d) == Some(want), "Z/(I_{}, {}) at Θ_{} for c = {}", b, x, d, c);
                    let want = gcd(b * c, c * x * d) / gcd(b * c, b * d);
                    ensure!(cyclic_order(&ck, d) == Some(want), "(I_{} : {})/I_{} at Θ_{}", b, x, c, d);
                    count += 2;
                }
            }
        }
    }
    let mut tables = 0;
    for (b, c) in [(2, 4), (2, 12), (3, 12), (1, 6)] {
        let m = ia_mod_ib(n, b, c)?;
        let r = free_resolution(&m, 6)?;
        for &d in &ds {
            let (g, h) = (gcd(b, d), gcd(c, d));
            let y = c * g / (b * h);
            let qd = quotient(n, d)?;
            let t = tor_all(&r, &qd, 5)?;
            let e = ext_all(&standard_resolution(n, d)?, &m, 3)?;
            let want = [ia_mod_ib(n, g, h)?, quotient_rel(n, g, y, h)?, colon_kernel(n, g, y, h)?];
            for (i, w) in [(0, &want[0]), (2, &want[1]), (3, &want[2])] {
                ensure!(proven(&t[i], w)?, "Tor_{}(I_{}/I_{}, Z/I_{})", i, b, c, d);
                ensure!(proven(&e[3 - i], w)?, "Ext^{}(Z/I_{}, I_{}/I_{})", 3 - i, d, b, c);
            }
            ensure!(t[1].is_zero() && t[4].is_zero() && t[5].is_zero() && e[2].is_zero(), "vanishing Tor(I_{}/I_{}, Z/I_{})", b, c, d);
            let e = ext_all(&r, &qd, 5)?;
            let want = [quotient_rel(n, h, h / g, n)?, colon_kernel(n, h, c / b, g)?, quotient_rel(n, h, c / b, n)?];
            for (i, w) in [(0, &want[0]), (2, &want[1]), (3, &want[2])] {
                ensure!(proven(&e[i], w)?, "Ext^{}(I_{}/I_{}, Z/I_{})", i, b, c, d);
            }
            ensure!(e[1].is_zero() && e[4].is_zero() && e[5].is_zero(), "vanishing Ext(I_{}/I_{}, Z/I_{})", b, c, d);
            tables += 1;
        }
    }
    Ok(format!("{} orders, {} Tor/Ext tables", count, tables))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
    let data = (0..r * c).map(|_| Int::from(rng.gen_range(-50i64..=50))).collect();
    IntMatrix::from_vec(r, c, data)
}

fn mutation_targets() -> Result<Vec<ZModule>> {
    Ok(vec![
        constant_z(4)?,
        constant_z(45)?,
        ideal(12, 4)?,
        quotient(12, 6)?,
        quotient(45, 15)?,
        form_z(12, 4, 2)?,
        free_module(&GSet::orbit(6, 3))?,
        NamedModule::FpSign.build(4)?,
        ia_mod_ib(12, 2, 12)?,
        free_module(&GSet::new(4, vec![2, 4])?)?,
    ])
}

fn properties() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..500 {
        let a = random_matrix(&mut rng);
        let s = smith_normal_form(&a);
        ensure!(s.u.mul(&a).mul(&s.v) == s.s, "u·a·v ≠ s for matrix {}", k);
        ensure!(s.u.determinant().is_unit() && s.v.determinant().is_unit(), "non-unimodular transform for matrix {}", k);
        ensure!(s.diagonal() == determinant_divisors(&a), "invariant factors of matrix {} disagree with determinant divisors", k);
    }
    let targets = mutation_targets()?;
    let mut rejected = 0;
    for k in 0..20 {
        let m = &targets[k % targets.len()];
        let mut d = m.diagram();
        let mut slots: Vec<(u8, (u64, u64))> = Vec::new();
        slots.extend(d.res.iter().filter(|x| !x.1.entries().is_empty()).map(|x| (0, *x.0)));
        slots.extend(d.tr.iter().filter(|x| !x.1.entries().is_empty()).map(|x| (1, *x.0)));
        slots.extend(d.act.iter().filter(|x| !x.1.entries().is_empty()).map(|x| (2, (*x.0, 0))));
        let (kind, key) = slots[rng.gen_range(0..slots.len())];
        let mat = match kind {
            0 => d.res.get_mut(&key).unwrap(),
            1 => d.tr.get_mut(&key).unwrap(),
            _ => d.act.get_mut(&key.0).unwrap(),
        };
        let (i, j) = (rng.gen_range(0..mat.rows()), rng.gen_range(0..mat.cols()));
        *mat.get_mut(i, j) = mat.get(i, j) + &Int::ONE;
        match ZModule::new(m.n, d) {
            Err(zmackey::Error::Axiom(_)) => rejected += 1,
            Err(e) => anyhow::bail!("mutation {} rejected for the wrong reason: {}", k, e),
            Ok(_) => anyhow::bail!("mutation {} of a module over C_{} was accepted", k, m.n),
        }
    }
    let ds = divisors(360);
    let mut identities = 0;
    for &x in &ds {
        for &y in &ds {
            ensure!(gcd(x, y) * lcm(x, y) == x * y, "(x,y)[x,y] = xy at {}, {}", x, y);
            for &z in &ds {
                ensure!(gcd(lcm(x, y), lcm(x, z)) == lcm(x, gcd(y, z)), "([x,y],[x,z]) = [x,(y,z)] at {}, {}, {}", x, y, z);
                ensure!(lcm(gcd(x, y), gcd(x, z)) == gcd(x, lcm(y, z)), "[(x,y),(x,z)] = (x,[y,z]) at {}, {}, {}", x, y, z);
                identities += 2;
                if divides(y, z) {
                    ensure!(gcd(x / gcd(x, y), z / y) == gcd(x, z) / gcd(x, y), "(a/(a,d), e/d) = (a,e)/(a,d) at {}, {}, {}", x, y, z);
                    identities += 1;
                }
            }
        }
        for &d in &divisors(x) {
            for &e in &divisors(x) {
                ensure!(gcd(x / d, x / e) == x / lcm(d, e), "(x/d, x/e) = x/[d,e] at {}, {}, {}", x, d, e);
                identities += 1;
            }
        }
    }
    Ok(format!("500 Smith forms, {} of 20 mutations rejected, {} identities", rejected, identities))
}
