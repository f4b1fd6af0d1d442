//! Cohomological Mackey functors over `C_n`, stored as Lewis diagrams.
//!
//! Structure maps live on prime edges `(d, dℓ)` of the divisor lattice:
//! `res: M(Θ_d) → M(Θ_dℓ)`, `tr: M(Θ_dℓ) → M(Θ_d)`, plus the action `t^*`
//! on each `M(Θ_d)`. Both maps of an edge are keyed by `(d, dℓ)`.

mod identify;
mod map;
mod named;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::burnside::{BzMor, EqMap, GSet};
use crate::exactalg::{divides, divisors, gcd, lcm, normalize_diagonal, prime_edges, primes_of, AbHom, FgAbGroup, Int, IntMatrix};
use crate::Error;

pub use identify::*;
pub use map::*;
pub use named::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZModule {
    pub n: u64,
    values: BTreeMap<u64, FgAbGroup>,
    res: BTreeMap<(u64, u64), IntMatrix>,
    tr: BTreeMap<(u64, u64), IntMatrix>,
    act: BTreeMap<u64, IntMatrix>,
    // composites along chains, keyed (d, e) with d | e
    res_path: BTreeMap<(u64, u64), IntMatrix>,
    tr_path: BTreeMap<(u64, u64), IntMatrix>,
}

/// Raw structure data: values, and matrices on prime edges and spots.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub values: BTreeMap<u64, FgAbGroup>,
    pub res: BTreeMap<(u64, u64), IntMatrix>,
    pub tr: BTreeMap<(u64, u64), IntMatrix>,
    pub act: BTreeMap<u64, IntMatrix>,
}

impl ZModule {
    /// Validates a diagram and builds the module.
    pub fn new(n: u64, d: Diagram) -> Result<ZModule, Error> {
        let m = ZModule::build(n, d)?;
        m.validate()?;
        Ok(m)
    }

    /// Shape checks only; relations are not checked.
    pub fn new_unchecked(n: u64, d: Diagram) -> Result<ZModule, Error> {
        ZModule::build(n, d)
    }

    fn build(n: u64, d: Diagram) -> Result<ZModule, Error> {
        if n == 0 {
            return Err(Error::Invalid(String::from("group order must be positive")));
        }
        let Diagram { values, mut res, mut tr, mut act } = d;
        let divs = divisors(n);
        for x in &divs {
            if !values.contains_key(x) {
                return Err(Error::Invalid(format!("missing value at Θ_{}", x)));
            }
        }
        if values.len() != divs.len() {
            return Err(Error::Invalid(String::from("values given at non-divisors")));
        }
        let shape = |m: &IntMatrix, r: &FgAbGroup, c: &FgAbGroup, what: &str| -> Result<(), Error> {
            if m.rows() != r.dim() || m.cols() != c.dim() {
                return Err(Error::Invalid(format!("{}: matrix is {}x{}, expected {}x{}", what, m.rows(), m.cols(), r.dim(), c.dim())));
            }
            Ok(())
        };
        let edges = prime_edges(n);
        for &(a, b, _) in &edges {
            let (va, vb) = (&values[&a], &values[&b]);
            let r = res.get_mut(&(a, b)).ok_or_else(|| Error::Invalid(format!("missing res {}->{}", a, b)))?;
            shape(r, vb, va, &format!("res {}->{}", a, b))?;
            vb.reduce_rows(r);
            let t = tr.get_mut(&(a, b)).ok_or_else(|| Error::Invalid(format!("missing tr {}->{}", b, a)))?;
            shape(t, va, vb, &format!("tr {}->{}", b, a))?;
            va.reduce_rows(t);
        }
        if res.len() != edges.len() || tr.len() != edges.len() {
            return Err(Error::Invalid(String::from("structure maps given on non-edges")));
        }
        for x in &divs {
            let v = &values[x];
            let a = act.get_mut(x).ok_or_else(|| Error::Invalid(format!("missing act at Θ_{}", x)))?;
            shape(a, v, v, &format!("act {}", x))?;
            v.reduce_rows(a);
        }
        let mut m = ZModule { n, values, res, tr, act, res_path: BTreeMap::new(), tr_path: BTreeMap::new() };
        m.fill_paths();
        Ok(m)
    }

    fn fill_paths(&mut self) {
        let divs = divisors(self.n);
        for &d in &divs {
            let dim = self.values[&d].dim();
            self.res_path.insert((d, d), IntMatrix::identity(dim));
            self.tr_path.insert((d, d), IntMatrix::identity(dim));
        }
        // by increasing quotient e/d, extend a chain through the smallest prime
        let mut pairs: Vec<(u64, u64)> = Vec::new();
        for &d in &divs {
            for &e in &divs {
                if e != d && e % d == 0 {
                    pairs.push((d, e));
                }
            }
        }
        pairs.sort_by_key(|&(d, e)| e / d);
        for (d, e) in pairs {
            let p = primes_of(e / d)[0];
            let mid = e / p;
            let r = self.res[&(mid, e)].mul(&self.res_path[&(d, mid)]);
            let t = self.tr_path[&(d, mid)].mul(&self.tr[&(mid, e)]);
            let mut r = r;
            let mut t = t;
            self.values[&e].reduce_rows(&mut r);
            self.values[&d].reduce_rows(&mut t);
            self.res_path.insert((d, e), r);
            self.tr_path.insert((d, e), t);
        }
    }

    pub fn divisors(&self) -> Vec<u64> {
        self.values.keys().copied().collect()
    }

    pub fn value(&self, d: u64) -> &FgAbGroup {
        &self.values[&d]
    }

    pub fn values(&self) -> &BTreeMap<u64, FgAbGroup> {
        &self.values
    }

    /// Restriction `M(Θ_d) → M(Θ_e)` for `d | e`.
    pub fn res_matrix(&self, d: u64, e: u64) -> &IntMatrix {
        &self.res_path[&(d, e)]
    }

    /// Transfer `M(Θ_e) → M(Θ_d)` for `d | e`.
    pub fn tr_matrix(&self, d: u64, e: u64) -> &IntMatrix {
        &self.tr_path[&(d, e)]
    }

    pub fn act_matrix(&self, d: u64) -> &IntMatrix {
        &self.act[&d]
    }

    pub fn res(&self, d: u64, e: u64) -> AbHom {
        AbHom { source: self.values[&d].clone(), target: self.values[&e].clone(), matrix: self.res_path[&(d, e)].clone() }
    }

    pub fn tr(&self, d: u64, e: u64) -> AbHom {
        AbHom { source: self.values[&e].clone(), target: self.values[&d].clone(), matrix: self.tr_path[&(d, e)].clone() }
    }

    pub fn act(&self, d: u64) -> AbHom {
        AbHom { source: self.values[&d].clone(), target: self.values[&d].clone(), matrix: self.act[&d].clone() }
    }

    pub fn diagram(&self) -> Diagram {
        Diagram { values: self.values.clone(), res: self.res.clone(), tr: self.tr.clone(), act: self.act.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(FgAbGroup::is_zero)
    }

    pub fn is_cyclic_valued(&self) -> bool {
        self.values.values().all(FgAbGroup::is_cyclic)
    }

    /// Checks every relation and reports the first failure.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.n;
        let ax = |s: String| Err(Error::Axiom(s));
        for (&(a, b), m) in &self.res {
            AbHom::new(self.values[&a].clone(), self.values[&b].clone(), m.clone())
                .map_err(|e| Error::Axiom(format!("res {}->{} ill-defined: {}", a, b, e)))?;
        }
        for (&(a, b), m) in &self.tr {
            AbHom::new(self.values[&b].clone(), self.values[&a].clone(), m.clone())
                .map_err(|e| Error::Axiom(format!("tr {}->{} ill-defined: {}", b, a, e)))?;
        }
        for (&d, m) in &self.act {
            let v = &self.values[&d];
            AbHom::new(v.clone(), v.clone(), m.clone()).map_err(|e| Error::Axiom(format!("act at Θ_{} ill-defined: {}", d, e)))?;
            let p = AbHom { source: v.clone(), target: v.clone(), matrix: m.pow(d) };
            if !p.same_map(&AbHom::identity(v)) {
                return ax(format!("act^{} is not the identity at Θ_{}", d, d));
            }
        }
        for (a, b, l) in prime_edges(n) {
            let res = self.res(a, b);
            let tr = self.tr(a, b);
            if !self.act(b).compose(&res).same_map(&res.compose(&self.act(a))) {
                return ax(format!("act does not commute with res {}->{}", a, b));
            }
            if !tr.compose(&self.act(b)).same_map(&self.act(a).compose(&tr)) {
                return ax(format!("act does not commute with tr {}->{}", b, a));
            }
            if !tr.compose(&res).same_map(&AbHom::scalar(&self.values[&a], &Int::from(l))) {
                return ax(format!("tr∘res is not multiplication by {} on Θ_{} (edge {}->{})", l, a, a, b));
            }
            let mut norm = AbHom::zero(&self.values[&b], &self.values[&b]);
            let step = self.act(b).matrix.pow(a);
            let mut pw = IntMatrix::identity(self.values[&b].dim());
            for _ in 0..l {
                norm = norm.add(&AbHom { source: self.values[&b].clone(), target: self.values[&b].clone(), matrix: pw.clone() });
                pw = pw.mul(&step);
            }
            if !res.compose(&tr).same_map(&norm) {
                return ax(format!("res∘tr is not the norm on Θ_{} (edge {}->{})", b, a, b));
            }
        }
        let ps = primes_of(n);
        for d in divisors(n) {
            for (i, &p) in ps.iter().enumerate() {
                for &q in &ps[i + 1..] {
                    let top = d * p * q;
                    if n % top != 0 {
                        continue;
                    }
                    let r1 = self.res(d * p, top).compose(&self.res(d, d * p));
                    let r2 = self.res(d * q, top).compose(&self.res(d, d * q));
                    if !r1.same_map(&r2) {
                        return ax(format!("restriction square at Θ_{}..Θ_{} does not commute", d, top));
                    }
                    let t1 = self.tr(d, d * p).compose(&self.tr(d * p, top));
                    let t2 = self.tr(d, d * q).compose(&self.tr(d * q, top));
                    if !t1.same_map(&t2) {
                        return ax(format!("transfer square at Θ_{}..Θ_{} does not commute", d, top));
                    }
                    for (x, y) in [(p, q), (q, p)] {
                        let lhs = self.res(d, d * y).compose(&self.tr(d, d * x));
                        let rhs = self.tr(d * y, top).compose(&self.res(d * x, top));
                        if !lhs.same_map(&rhs) {
                            return ax(format!("double coset square res_{}->{}∘tr_{}->{} fails", d, d * y, d * x, d));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `M(φ): M(Θ_b) → M(Θ_a)` for span coefficients of `φ: Θ_a → Θ_b`.
    pub fn bz_action(&self, a: u64, b: u64, coeffs: &[Int], pw: &mut ActPowers) -> IntMatrix {
        let m = lcm(a, b);
        let (va, vb) = (self.values[&a].dim(), self.values[&b].dim());
        let mut out = IntMatrix::zeros(va, vb);
        if va == 0 || vb == 0 {
            return out;
        }
        let r = &self.res_path[&(b, m)];
        let t = &self.tr_path[&(a, m)];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ai = pw.get(self, m, i as u64);
            let term = t.mul(&ai.mul(r));
            out = out.add(&term.scale(c));
        }
        self.values[&a].reduce_rows(&mut out);
        out
    }

    /// Evaluation at a G-set, in diagonal coordinates (orbit by orbit).
    pub fn orders_at(&self, s: &GSet) -> Vec<Int> {
        s.orbits.iter().flat_map(|d| self.values[d].orders()).collect()
    }

    /// `M(φ): M(T) → M(S)` for `φ: S → T`, in diagonal coordinates.
    pub fn apply_eqmap(&self, phi: &EqMap, pw: &mut ActPowers) -> IntMatrix {
        let so: Vec<usize> = prefix(phi.src.orbits.iter().map(|d| self.values[d].dim()));
        let to: Vec<usize> = prefix(phi.dst.orbits.iter().map(|d| self.values[d].dim()));
        let rows = so.last().copied().unwrap_or(0);
        let cols = to.last().copied().unwrap_or(0);
        let mut out = IntMatrix::zeros(rows, cols);
        let toff = phi.dst.offsets();
        for (k, col) in phi.base.iter().enumerate() {
            let mut targets: Vec<usize> = Vec::new();
            for (q, _) in col {
                let l = match toff.binary_search(q) {
                    Ok(mut i) => {
                        while i + 1 < toff.len() && toff[i + 1] == *q {
                            i += 1;
                        }
                        i
                    }
                    Err(i) => i - 1,
                };
                if !targets.contains(&l) {
                    targets.push(l);
                }
            }
            for l in targets {
                let coeffs = phi.block_coeffs(k, l);
                let blk = self.bz_action(phi.src.orbits[k], phi.dst.orbits[l], &coeffs, pw);
                out.paste(so[k], to[l], &blk);
            }
        }
        out
    }
}

fn prefix(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v = vec![0];
    let mut acc = 0;
    for x in it {
        acc += x;
        v.push(acc);
    }
    v
}

/// Cache of powers of the action matrices of one module.
#[derive(Default)]
pub struct ActPowers {
    cache: BTreeMap<(u64, u64), IntMatrix>,
}

impl ActPowers {
    pub fn new() -> ActPowers {
        ActPowers::default()
    }

    pub fn get(&mut self, m: &ZModule, d: u64, i: u64) -> IntMatrix {
        let i = i % d;
        if let Some(x) = self.cache.get(&(d, i)) {
            return x.clone();
        }
        let x = if i == 0 {
            IntMatrix::identity(m.values[&d].dim())
        } else {
            let prev = self.get(m, d, i - 1);
            let mut x = m.act[&d].mul(&prev);
            m.values[&d].reduce_rows(&mut x);
            x
        };
        self.cache.insert((d, i), x.clone());
        x
    }
}

/// `M(φ)` as a hom `M(Θ_b) → M(Θ_a)`.
pub fn act_morphism(m: &ZModule, phi: &BzMor) -> Result<AbHom, Error> {
    if phi.n != m.n {
        return Err(Error::Invalid(format!("morphism over C_{} applied to a module over C_{}", phi.n, m.n)));
    }
    let mat = m.bz_action(phi.a, phi.b, &phi.coeffs(), &mut ActPowers::new());
    Ok(AbHom { source: m.values[&phi.b].clone(), target: m.values[&phi.a].clone(), matrix: mat })
}

/// `M(S)` in normal form.
pub fn evaluate(m: &ZModule, s: &GSet) -> Result<FgAbGroup, Error> {
    if s.n != m.n {
        return Err(Error::Invalid(format!("set over C_{} for a module over C_{}", s.n, m.n)));
    }
    Ok(normalize_diagonal(&m.orders_at(s)).0)
}

/// Gcd-of-divisors sanity helper used by constructors.
pub(crate) fn check_divides(n: u64, xs: &[u64]) -> Result<(), Error> {
    for &x in xs {
        if x == 0 || !divides(x, n) {
            return Err(Error::Invalid(format!("{} does not divide {}", x, n)));
        }
    }
    Ok(())
}

pub(crate) fn g(a: u64, b: u64) -> u64 {
    gcd(a, b)
}

#[cfg(test)]
mod tests;
