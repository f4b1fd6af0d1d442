//! Free modules `F_S = BZ(-, S)`, maps between them, Yoneda maps and covers.
//!
//! An element of `F_S(Θ_c)` is an equivariant map `Θ_c → S`, recorded by the
//! image of `e_0`: a column of `ℤ⟨S⟩` fixed by `t^c`. Its coordinates are the
//! entries `0..(c, s_k)` on each orbit `k`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::burnside::{EqMap, GSet, SparseCol};
use crate::exactalg::{divisors, gcd, lcm, Int, IntMatrix, Subquotient};
use crate::mackey::{free_module_unchecked, MackeyMap, ZModule};
use crate::Error;

fn coord_offsets(s: &GSet, c: u64) -> Vec<usize> {
    let mut o = vec![0];
    let mut acc = 0;
    for &k in &s.orbits {
        acc += gcd(c, k) as usize;
        o.push(acc);
    }
    o
}

/// The column of `ℤ⟨S⟩` for coordinates of an element of `F_S(Θ_c)`.
pub fn free_coords_to_column(s: &GSet, c: u64, x: &[Int]) -> SparseCol {
    let co = coord_offsets(s, c);
    let po = s.offsets();
    let mut out = Vec::new();
    for (k, &size) in s.orbits.iter().enumerate() {
        let g = gcd(c, size) as usize;
        for r in 0..size as usize {
            let v = &x[co[k] + r % g];
            if !v.is_zero() {
                out.push((po[k] + r, v.clone()));
            }
        }
    }
    out
}

/// Coordinates in `F_S(Θ_c)` of a `t^c`-fixed column.
pub fn column_to_free_coords(s: &GSet, c: u64, col: &[(usize, Int)]) -> Vec<Int> {
    let co = coord_offsets(s, c);
    let mut out = vec![Int::ZERO; co[s.orbits.len()]];
    for (p, v) in col {
        let (k, r) = s.locate(*p);
        let g = gcd(c, s.orbits[k]) as usize;
        if r < g {
            out[co[k] + r] = v.clone();
        }
    }
    out
}

/// `F_f: F_S → F_T`, postcomposition with `f: S → T`, between given free modules.
pub fn free_map_between(fs: &ZModule, ft: &ZModule, f: &EqMap) -> Result<MackeyMap, Error> {
    let mut comps = BTreeMap::new();
    for c in divisors(f.src.n) {
        let k = fs.value(c).dim();
        let mut m = IntMatrix::zeros(ft.value(c).dim(), k);
        for j in 0..k {
            let mut e = vec![Int::ZERO; k];
            e[j] = Int::ONE;
            let col = f.apply(&free_coords_to_column(&f.src, c, &e));
            for (i, v) in column_to_free_coords(&f.dst, c, &col).into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        comps.insert(c, m);
    }
    MackeyMap::new_unchecked(fs.clone(), ft.clone(), comps)
}

pub fn free_map(f: &EqMap) -> Result<MackeyMap, Error> {
    free_map_between(&free_module_unchecked(&f.src)?, &free_module_unchecked(&f.dst)?, f)
}

/// Images `M(E_i)(x)` in `M(Θ_c)` of `x ∈ M(Θ_a)`, for `i < (a, c)`.
pub fn yoneda_columns(m: &ZModule, c: u64, a: u64, x: &[Int]) -> Vec<Vec<Int>> {
    let top = lcm(a, c);
    let mut y = m.res_matrix(a, top).mul_vec(x);
    let tr = m.tr_matrix(c, top);
    let act = m.act_matrix(top);
    let mut out = Vec::new();
    for _ in 0..gcd(a, c) {
        let mut z = tr.mul_vec(&y);
        m.value(c).reduce_vec(&mut z);
        out.push(z);
        y = act.mul_vec(&y);
        m.value(top).reduce_vec(&mut y);
    }
    out
}

fn yoneda_matrix(m: &ZModule, c: u64, a: &GSet, elems: &[Vec<Int>]) -> IntMatrix {
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for (j, &aj) in a.orbits.iter().enumerate() {
        cols.extend(yoneda_columns(m, c, aj, &elems[j]));
    }
    columns(m.value(c).dim(), &cols)
}

fn columns(rows: usize, cols: &[Vec<Int>]) -> IntMatrix {
    let mut out = IntMatrix::zeros(rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            out.set(i, j, x.clone());
        }
    }
    out
}

/// The map `F_A → M` sending the generator of orbit `j` to `elems[j] ∈ M(Θ_{a_j})`.
pub fn yoneda_map(m: &ZModule, a: &GSet, elems: &[Vec<Int>]) -> Result<MackeyMap, Error> {
    if elems.len() != a.orbits.len() {
        return Err(Error::Invalid(alloc::format!("need one element per orbit")));
    }
    let fa = free_module_unchecked(a)?;
    let comps = divisors(m.n).into_iter().map(|c| (c, yoneda_matrix(m, c, a, elems))).collect();
    MackeyMap::new_unchecked(fa, m.clone(), comps)
}

/// Generators `x_j ∈ M(Θ_{a_j})` whose Yoneda map is onto.
#[derive(Clone, Debug)]
pub struct Cover {
    pub set: GSet,
    pub elems: Vec<Vec<Int>>,
}

fn size_key(qs: &BTreeMap<u64, Subquotient>) -> (usize, Int) {
    let mut free = 0;
    let mut tors = Int::ONE;
    for q in qs.values() {
        free += q.group.free_rank;
        for t in &q.group.torsion {
            tors = &tors * t;
        }
    }
    (free, tors)
}

/// Greedy cover: repeatedly add the generator leaving the smallest quotient.
pub fn greedy_cover(m: &ZModule) -> Cover {
    let divs = divisors(m.n);
    let mut set = GSet::empty(m.n);
    let mut elems: Vec<Vec<Int>> = Vec::new();
    let mut span: BTreeMap<u64, Vec<Vec<Int>>> = divs.iter().map(|&d| (d, Vec::new())).collect();
    let quot = |span: &BTreeMap<u64, Vec<Vec<Int>>>| -> BTreeMap<u64, Subquotient> {
        divs.iter()
            .map(|&d| {
                let v = m.value(d);
                let g = columns(v.dim(), &span[&d]).hstack(&v.relations());
                (d, Subquotient::new(crate::exactalg::Lattice::full(v.dim()), &g))
            })
            .collect()
    };
    let mut qs = quot(&span);
    loop {
        if qs.values().all(|q| q.group.is_zero()) {
            break;
        }
        let mut best: Option<((usize, Int, u64), u64, Vec<Int>, BTreeMap<u64, Vec<Vec<Int>>>, BTreeMap<u64, Subquotient>)> = None;
        for &a in &divs {
            let q = &qs[&a];
            for g in 0..q.group.dim() {
                let x = q.gens.column(g);
                let mut trial = span.clone();
                for &c in &divs {
                    trial.get_mut(&c).unwrap().extend(yoneda_columns(m, c, a, &x));
                }
                let tq = quot(&trial);
                let (f, t) = size_key(&tq);
                let key = (f, t, a);
                if best.as_ref().map_or(true, |b| key < b.0) {
                    best = Some((key, a, x, trial, tq));
                }
            }
        }
        let (_, a, x, trial, tq) = best.expect("a nonzero quotient has a generator");
        set.orbits.push(a);
        elems.push(x);
        span = trial;
        qs = tq;
    }
    Cover { set, elems }
}

/// An isomorphism through free bases, when greedy covers of both modules are
/// isomorphisms from free modules on the same orbits.
pub fn free_cover_iso(m: &ZModule, n: &ZModule) -> Result<Option<MackeyMap>, Error> {
    let basis = |x: &ZModule| -> Result<Option<(GSet, MackeyMap)>, Error> {
        let c = greedy_cover(x);
        let y = yoneda_map(x, &c.set, &c.elems)?;
        Ok(if y.is_iso() { Some((c.set, y)) } else { None })
    };
    let Some((so, ym)) = basis(m)? else { return Ok(None) };
    let Some((to, yn)) = basis(n)? else { return Ok(None) };
    let mut used = vec![false; to.orbits.len()];
    let toff = to.offsets();
    let mut base = Vec::new();
    for &a in &so.orbits {
        let Some(j) = (0..to.orbits.len()).find(|&j| !used[j] && to.orbits[j] == a) else { return Ok(None) };
        used[j] = true;
        base.push(vec![(toff[j], Int::ONE)]);
    }
    if used.iter().any(|u| !u) {
        return Ok(None);
    }
    let perm = free_map_between(&ym.source, &yn.source, &EqMap::from_base(&so, &to, base)?)?;
    let inv = ym.inverse().expect("checked iso");
    let f = yn.compose(&perm).compose(&inv);
    f.validate()?;
    Ok(Some(f))
}

/// `F_{f1} → F_{f0} → M → 0`, with `d: f1 → f0`.
#[derive(Clone, Debug)]
pub struct FreePresentation {
    pub module: ZModule,
    pub f0: GSet,
    pub f1: GSet,
    pub gens: Vec<Vec<Int>>,
    pub aug: MackeyMap,
    pub d: EqMap,
}

/// Covers the kernel of `p: F_A → X` and returns the map `B → A` of sets.
pub fn cover_kernel(p: &MackeyMap, a: &GSet) -> Result<(EqMap, MackeyMap), Error> {
    let (k, inc) = crate::mackey::map_kernel(p)?;
    let cov = greedy_cover(&k);
    let mut base = Vec::new();
    for (j, &b) in cov.set.orbits.iter().enumerate() {
        let y = inc.matrix(b).mul_vec(&cov.elems[j]);
        base.push(free_coords_to_column(a, b, &y));
    }
    let d = EqMap::from_base(&cov.set, a, base)?;
    Ok((d, inc))
}

pub fn free_presentation(m: &ZModule) -> Result<FreePresentation, Error> {
    let cov = greedy_cover(m);
    let aug = yoneda_map(m, &cov.set, &cov.elems)?;
    let (d, _) = cover_kernel(&aug, &cov.set)?;
    Ok(FreePresentation { module: m.clone(), f0: cov.set, f1: d.src.clone(), gens: cov.elems, aug, d })
}
