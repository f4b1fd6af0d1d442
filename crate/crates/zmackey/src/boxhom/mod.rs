//! Box product and internal hom through free presentations and the
//! exponentials `N^A = N(A × -)`, plus a coend oracle for the box product.

mod free;
mod oracle;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::burnside::{generator_i_proj, generator_r_proj, generator_r_t, EqMap, GSet, Product};
use crate::exactalg::{divisors, prime_edges, Int, IntMatrix, Lattice, Subquotient};
use crate::mackey::{assemble, compare_modules, constant_z, mackey_hom_group, ActPowers, Comparison, Diagram, MackeyHomGroup, MackeyMap, ZModule};
use crate::Error;

pub use free::*;
pub use oracle::*;

/// `N^A` in diagonal coordinates: at `Θ_c` the values of `N` on the orbits of `A × Θ_c`.
#[derive(Clone, Debug)]
pub struct Exponential {
    pub set: GSet,
    pub prods: BTreeMap<u64, Product>,
    pub orders: BTreeMap<u64, Vec<Int>>,
    /// Structure maps on the diagonal coordinates.
    pub amb: Diagram,
}

fn bz_eq(f: crate::burnside::BzMor) -> EqMap {
    EqMap::from_bz(&f)
}

impl Exponential {
    pub fn new(nm: &ZModule, a: &GSet, pw: &mut ActPowers) -> Result<Exponential, Error> {
        let n = nm.n;
        if a.n != n {
            return Err(Error::Invalid(alloc::format!("set over C_{} for a module over C_{}", a.n, n)));
        }
        let mut prods = BTreeMap::new();
        let mut orders = BTreeMap::new();
        for c in divisors(n) {
            let p = a.product(&GSet::orbit(n, c));
            orders.insert(c, nm.orders_at(&p.set));
            prods.insert(c, p);
        }
        let ida = EqMap::identity(a);
        let mut amb = Diagram::default();
        for c in divisors(n) {
            let rt = bz_eq(generator_r_t(n, c, 1)?);
            amb.act.insert(c, nm.apply_eqmap(&ida.product(&rt, &prods[&c], &prods[&c]), pw));
        }
        for (c, e, _) in prime_edges(n) {
            let rp = bz_eq(generator_r_proj(n, e, c)?);
            let ip = bz_eq(generator_i_proj(n, e, c)?);
            amb.res.insert((c, e), nm.apply_eqmap(&ida.product(&rp, &prods[&e], &prods[&c]), pw));
            amb.tr.insert((c, e), nm.apply_eqmap(&ida.product(&ip, &prods[&c], &prods[&e]), pw));
        }
        Ok(Exponential { set: a.clone(), prods, orders, amb })
    }

    /// Normal-form subquotients of the diagonal coordinates.
    pub fn normal_forms(&self) -> BTreeMap<u64, Subquotient> {
        self.orders.iter().map(|(&c, o)| (c, Subquotient::new(Lattice::full(o.len()), &IntMatrix::diagonal(o)))).collect()
    }

    pub fn module(&self) -> Result<(ZModule, BTreeMap<u64, Subquotient>), Error> {
        let sqs = self.normal_forms();
        let m = assemble(self.set.n, &sqs, &self.amb)?;
        Ok((m, sqs))
    }
}

/// `N(f × id): N(T × Θ_c) → N(S × Θ_c)` for `f: S → T`, in diagonal coordinates.
pub fn induced_exp(nm: &ZModule, f: &EqMap, es: &Exponential, et: &Exponential, c: u64, pw: &mut ActPowers) -> IntMatrix {
    let id = EqMap::identity(&GSet::orbit(nm.n, c));
    nm.apply_eqmap(&f.product(&id, &es.prods[&c], &et.prods[&c]), pw)
}

/// `M^A` as a module.
pub fn exponential(m: &ZModule, a: &GSet) -> Result<ZModule, Error> {
    Ok(Exponential::new(m, a, &mut ActPowers::new())?.module()?.0)
}

/// `M ⊠ N` together with the data used to build it.
#[derive(Clone, Debug)]
pub struct BoxData {
    pub module: ZModule,
    pub presentation: FreePresentation,
    pub exp0: Exponential,
    pub sqs: BTreeMap<u64, Subquotient>,
}

/// `coker(N^{A_1} → N^{A_0})` for a presentation `F_{A_1} → F_{A_0} → M`.
pub fn box_with(p: &FreePresentation, nm: &ZModule) -> Result<BoxData, Error> {
    let mut pw = ActPowers::new();
    let e0 = Exponential::new(nm, &p.f0, &mut pw)?;
    let e1 = Exponential::new(nm, &p.f1, &mut pw)?;
    let dual = p.d.dual();
    let mut sqs = BTreeMap::new();
    for c in divisors(nm.n) {
        let f = induced_exp(nm, &dual, &e0, &e1, c, &mut pw);
        let o = &e0.orders[&c];
        let rels = f.hstack(&IntMatrix::diagonal(o));
        sqs.insert(c, Subquotient::new(Lattice::full(o.len()), &rels));
    }
    let module = assemble(nm.n, &sqs, &e0.amb)?;
    Ok(BoxData { module, presentation: p.clone(), exp0: e0, sqs })
}

pub fn box_product(m: &ZModule, nm: &ZModule) -> Result<ZModule, Error> {
    if m.n != nm.n {
        return Err(Error::Invalid(alloc::format!("modules over C_{} and C_{}", m.n, nm.n)));
    }
    Ok(box_with(&free_presentation(m)?, nm)?.module)
}

/// `Hom(M,N)` as a Mackey functor: at `Θ_c` the maps `M^{Θ_c} → N`.
pub fn internal_hom(m: &ZModule, nm: &ZModule) -> Result<ZModule, Error> {
    let n = m.n;
    if nm.n != n {
        return Err(Error::Invalid(alloc::format!("modules over C_{} and C_{}", n, nm.n)));
    }
    let mut pw = ActPowers::new();
    let mut exps: BTreeMap<u64, (Exponential, ZModule, BTreeMap<u64, Subquotient>)> = BTreeMap::new();
    let mut homs: BTreeMap<u64, MackeyHomGroup> = BTreeMap::new();
    for c in divisors(n) {
        let e = Exponential::new(m, &GSet::orbit(n, c), &mut pw)?;
        let (em, sq) = e.module()?;
        homs.insert(c, mackey_hom_group(&em, nm)?);
        exps.insert(c, (e, em, sq));
    }
    // φ: M^{X} → M^{Y} in normal-form coordinates, from f: Y → X in BZ
    let between = |x: u64, y: u64, f: &EqMap, pw: &mut ActPowers| -> Result<MackeyMap, Error> {
        let (ex, mx, sx) = &exps[&x];
        let (ey, my, sy) = &exps[&y];
        let mut comps = BTreeMap::new();
        for z in divisors(n) {
            let amb = induced_exp(m, f, ey, ex, z, pw);
            comps.insert(z, sy[&z].coords_matrix(&amb.mul(&sx[&z].gens)));
        }
        MackeyMap::new_unchecked(mx.clone(), my.clone(), comps)
    };
    // precomposition Hom(M^Y, N) → Hom(M^X, N) along φ: M^X → M^Y
    let pre = |hy: &MackeyHomGroup, hx: &MackeyHomGroup, phi: &MackeyMap| -> IntMatrix {
        let k = hy.group().dim();
        let mut out = IntMatrix::zeros(hx.group().dim(), k);
        for j in 0..k {
            let mut e = alloc::vec![Int::ZERO; k];
            e[j] = Int::ONE;
            let g = hy.decode(&e);
            for (i, v) in hx.encode(&g.compose(phi)).into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    };
    let mut d = Diagram::default();
    for c in divisors(n) {
        d.values.insert(c, homs[&c].group().clone());
        let it = bz_eq(generator_r_t(n, c, c - 1)?);
        let chi = between(c, c, &it, &mut pw)?;
        d.act.insert(c, pre(&homs[&c], &homs[&c], &chi));
    }
    for (c, e, _) in prime_edges(n) {
        // res: Hom(M^{Θ_c}, N) → Hom(M^{Θ_e}, N) along M(Ip × id): M^{Θ_e} → M^{Θ_c}
        let ip = bz_eq(generator_i_proj(n, e, c)?);
        let phi = between(e, c, &ip, &mut pw)?;
        d.res.insert((c, e), pre(&homs[&c], &homs[&e], &phi));
        let rp = bz_eq(generator_r_proj(n, e, c)?);
        let psi = between(c, e, &rp, &mut pw)?;
        d.tr.insert((c, e), pre(&homs[&e], &homs[&c], &psi));
    }
    ZModule::new_unchecked(n, d)
}

/// `Hom(F_A, M) ≅ Hom(F_A, Z) ⊠ M` for one instance.
pub fn hom_box_swap_check(a: &GSet, m: &ZModule) -> Result<Comparison, Error> {
    let fa = crate::mackey::free_module(a)?;
    let lhs = internal_hom(&fa, m)?;
    let dual = internal_hom(&fa, &constant_z(m.n)?)?;
    let rhs = box_product(&dual, m)?;
    compare_modules(&lhs, &rhs)
}
