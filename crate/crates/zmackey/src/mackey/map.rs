use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{Diagram, ZModule};
use crate::exactalg::{homology_raw, prime_edges, AbHom, FgAbGroup, Int, IntMatrix, Lattice, Subquotient};
use crate::Error;

/// A morphism of Mackey functors, one matrix per spot.
#[derive(Clone, Debug)]
pub struct MackeyMap {
    pub source: ZModule,
    pub target: ZModule,
    comps: BTreeMap<u64, IntMatrix>,
}

impl MackeyMap {
    /// Checks well-definedness and naturality on every edge.
    pub fn new(source: ZModule, target: ZModule, comps: BTreeMap<u64, IntMatrix>) -> Result<MackeyMap, Error> {
        let f = MackeyMap::new_unchecked(source, target, comps)?;
        f.validate()?;
        Ok(f)
    }

    pub fn new_unchecked(source: ZModule, target: ZModule, mut comps: BTreeMap<u64, IntMatrix>) -> Result<MackeyMap, Error> {
        if source.n != target.n {
            return Err(Error::Invalid(format!("modules over C_{} and C_{}", source.n, target.n)));
        }
        for d in source.divisors() {
            let m = comps.get_mut(&d).ok_or_else(|| Error::Invalid(format!("missing component at Θ_{}", d)))?;
            if m.rows() != target.value(d).dim() || m.cols() != source.value(d).dim() {
                return Err(Error::Invalid(format!("component at Θ_{} has the wrong shape", d)));
            }
            target.value(d).reduce_rows(m);
        }
        Ok(MackeyMap { source, target, comps })
    }

    pub fn validate(&self) -> Result<(), Error> {
        for d in self.source.divisors() {
            AbHom::new(self.source.value(d).clone(), self.target.value(d).clone(), self.comps[&d].clone())
                .map_err(|e| Error::Axiom(format!("component at Θ_{}: {}", d, e)))?;
            if !self.component(d).compose(&self.source.act(d)).same_map(&self.target.act(d).compose(&self.component(d))) {
                return Err(Error::Axiom(format!("map does not commute with act at Θ_{}", d)));
            }
        }
        for (a, b, _) in prime_edges(self.source.n) {
            let (fa, fb) = (self.component(a), self.component(b));
            if !fb.compose(&self.source.res(a, b)).same_map(&self.target.res(a, b).compose(&fa)) {
                return Err(Error::Axiom(format!("map does not commute with res {}->{}", a, b)));
            }
            if !fa.compose(&self.source.tr(a, b)).same_map(&self.target.tr(a, b).compose(&fb)) {
                return Err(Error::Axiom(format!("map does not commute with tr {}->{}", b, a)));
            }
        }
        Ok(())
    }

    pub fn matrix(&self, d: u64) -> &IntMatrix {
        &self.comps[&d]
    }

    pub fn component(&self, d: u64) -> AbHom {
        AbHom { source: self.source.value(d).clone(), target: self.target.value(d).clone(), matrix: self.comps[&d].clone() }
    }

    pub fn identity(m: &ZModule) -> MackeyMap {
        let comps = m.divisors().into_iter().map(|d| (d, IntMatrix::identity(m.value(d).dim()))).collect();
        MackeyMap { source: m.clone(), target: m.clone(), comps }
    }

    pub fn zero(s: &ZModule, t: &ZModule) -> MackeyMap {
        let comps = s.divisors().into_iter().map(|d| (d, IntMatrix::zeros(t.value(d).dim(), s.value(d).dim()))).collect();
        MackeyMap { source: s.clone(), target: t.clone(), comps }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &MackeyMap) -> MackeyMap {
        let comps = self.comps.keys().map(|&d| (d, self.component(d).compose(&first.component(d)).matrix)).collect();
        MackeyMap { source: first.source.clone(), target: self.target.clone(), comps }
    }

    fn zip(&self, o: &MackeyMap, f: impl Fn(&AbHom, &AbHom) -> AbHom) -> MackeyMap {
        let comps = self.comps.keys().map(|&d| (d, f(&self.component(d), &o.component(d)).matrix)).collect();
        MackeyMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, o: &MackeyMap) -> MackeyMap {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &MackeyMap) -> MackeyMap {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Int) -> MackeyMap {
        let comps = self
            .comps
            .iter()
            .map(|(&d, m)| {
                let mut x = m.scale(c);
                self.target.value(d).reduce_rows(&mut x);
                (d, x)
            })
            .collect();
        MackeyMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.keys().all(|&d| self.component(d).is_zero())
    }

    pub fn same_map(&self, o: &MackeyMap) -> bool {
        self.sub(o).is_zero()
    }

    /// Spotwise bijective.
    pub fn is_iso(&self) -> bool {
        self.comps.keys().all(|&d| self.component(d).is_iso())
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<MackeyMap> {
        let mut comps = BTreeMap::new();
        for &d in self.comps.keys() {
            let h = self.component(d);
            if !h.is_iso() {
                return None;
            }
            let k = h.target.dim();
            let mut inv = IntMatrix::zeros(h.source.dim(), k);
            for j in 0..k {
                let mut e = alloc::vec![Int::ZERO; k];
                e[j] = Int::ONE;
                for (i, v) in h.preimage_of(&e)?.into_iter().enumerate() {
                    inv.set(i, j, v);
                }
            }
            comps.insert(d, inv);
        }
        MackeyMap::new_unchecked(self.target.clone(), self.source.clone(), comps).ok()
    }
}

/// Module structure on per-spot subquotients of ambient groups, with structure
/// maps induced from ambient matrices (only `res`, `tr`, `act` of `amb` are used).
pub(crate) fn assemble(n: u64, sqs: &BTreeMap<u64, Subquotient>, amb: &Diagram) -> Result<ZModule, Error> {
    let mut d = Diagram::default();
    for (&x, sq) in sqs {
        d.values.insert(x, sq.group.clone());
        d.act.insert(x, sqs[&x].coords_matrix(&amb.act[&x].mul(&sq.gens)));
    }
    for (a, b, _) in prime_edges(n) {
        d.res.insert((a, b), sqs[&b].coords_matrix(&amb.res[&(a, b)].mul(&sqs[&a].gens)));
        d.tr.insert((a, b), sqs[&a].coords_matrix(&amb.tr[&(a, b)].mul(&sqs[&b].gens)));
    }
    ZModule::new_unchecked(n, d)
}

pub fn map_kernel(f: &MackeyMap) -> Result<(ZModule, MackeyMap), Error> {
    let sqs: BTreeMap<u64, Subquotient> = f.source.divisors().into_iter().map(|d| (d, f.component(d).kernel())).collect();
    let k = assemble(f.source.n, &sqs, &f.source.diagram())?;
    let comps = sqs.iter().map(|(&d, sq)| (d, sq.gens.clone())).collect();
    let inc = MackeyMap::new_unchecked(k.clone(), f.source.clone(), comps)?;
    Ok((k, inc))
}

pub fn map_cokernel(f: &MackeyMap) -> Result<(ZModule, MackeyMap), Error> {
    let sqs: BTreeMap<u64, Subquotient> = f.target.divisors().into_iter().map(|d| (d, f.component(d).cokernel())).collect();
    let c = assemble(f.target.n, &sqs, &f.target.diagram())?;
    let comps = sqs.iter().map(|(&d, sq)| (d, sq.coords_matrix(&IntMatrix::identity(sq.ambient())))).collect();
    let proj = MackeyMap::new_unchecked(f.target.clone(), c.clone(), comps)?;
    Ok((c, proj))
}

/// Image of `f` with its inclusion into the target.
pub fn map_image(f: &MackeyMap) -> Result<(ZModule, MackeyMap), Error> {
    let mut sqs = BTreeMap::new();
    for d in f.target.divisors() {
        let t = f.target.value(d);
        let rels = t.relations();
        let lat = Lattice::span(&f.matrix(d).hstack(&rels));
        sqs.insert(d, Subquotient::new(lat, &rels));
    }
    let im = assemble(f.target.n, &sqs, &f.target.diagram())?;
    let comps = sqs.iter().map(|(&d, sq)| (d, sq.gens.clone())).collect();
    let inc = MackeyMap::new_unchecked(im.clone(), f.target.clone(), comps)?;
    Ok((im, inc))
}

/// `ker g / im f` for `f: A → B`, `g: B → C` with `g ∘ f = 0`.
pub fn map_homology(f: &MackeyMap, g: &MackeyMap) -> Result<ZModule, Error> {
    if !g.compose(f).is_zero() {
        return Err(Error::Invalid(format!("composite of maps is not zero")));
    }
    let b = &f.target;
    let sqs: BTreeMap<u64, Subquotient> =
        b.divisors().into_iter().map(|d| (d, homology_raw(f.matrix(d), g.matrix(d), b.value(d), g.target.value(d)))).collect();
    assemble(b.n, &sqs, &b.diagram())
}

/// `⊕ modules` with inclusions and projections.
pub fn direct_sum(ms: &[ZModule]) -> Result<(ZModule, Vec<MackeyMap>, Vec<MackeyMap>), Error> {
    let n = ms.first().map(|m| m.n).ok_or_else(|| Error::Invalid(format!("empty direct sum")))?;
    if ms.iter().any(|m| m.n != n) {
        return Err(Error::Invalid(format!("direct sum of modules over different groups")));
    }
    let mut amb = Diagram::default();
    let mut sqs = BTreeMap::new();
    let divs = ms[0].divisors();
    for &d in &divs {
        let orders: Vec<Int> = ms.iter().flat_map(|m| m.value(d).orders()).collect();
        let k = orders.len();
        sqs.insert(d, Subquotient::new(Lattice::full(k), &IntMatrix::diagonal(&orders)));
        amb.act.insert(d, block_diag(ms.iter().map(|m| m.act_matrix(d))));
    }
    for (a, b, _) in prime_edges(n) {
        amb.res.insert((a, b), block_diag(ms.iter().map(|m| m.res_matrix(a, b))));
        amb.tr.insert((a, b), block_diag(ms.iter().map(|m| m.tr_matrix(a, b))));
    }
    let sum = assemble(n, &sqs, &amb)?;
    let mut incs = Vec::new();
    let mut projs = Vec::new();
    let mut off: BTreeMap<u64, usize> = divs.iter().map(|&d| (d, 0)).collect();
    for m in ms {
        let mut ic = BTreeMap::new();
        let mut pc = BTreeMap::new();
        for &d in &divs {
            let k = m.value(d).dim();
            let total = sqs[&d].ambient();
            let o = off[&d];
            let mut e = IntMatrix::zeros(total, k);
            for i in 0..k {
                e.set(o + i, i, Int::ONE);
            }
            ic.insert(d, sqs[&d].coords_matrix(&e));
            let p = sqs[&d].gens.submatrix(o, o + k, 0, sqs[&d].group.dim());
            pc.insert(d, p);
            off.insert(d, o + k);
        }
        incs.push(MackeyMap::new_unchecked(m.clone(), sum.clone(), ic)?);
        projs.push(MackeyMap::new_unchecked(sum.clone(), m.clone(), pc)?);
    }
    Ok((sum, incs, projs))
}

fn block_diag<'a>(it: impl Iterator<Item = &'a IntMatrix>) -> IntMatrix {
    let mut out = IntMatrix::zeros(0, 0);
    for m in it {
        out = out.block_diag(m);
    }
    out
}

/// Per-spot groups, for quick comparisons.
pub fn value_table(m: &ZModule) -> BTreeMap<u64, FgAbGroup> {
    m.values().clone()
}
