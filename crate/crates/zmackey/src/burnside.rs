//! The linearized Burnside category of `C_n` on orbits `Θ_d = C_n/C_{n/d}`.
//!
//! The point basis of `Θ_d` is `e_j = t^j·C_{n/d}` for `j < d`, so `t` acts
//! as the cyclic shift `e_j ↦ e_{j+1}`. A morphism `Θ_a → Θ_b` is the `b × a`
//! matrix of an equivariant map `ℤ⟨Θ_a⟩ → ℤ⟨Θ_b⟩`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactalg::{divides, gcd, lcm, Int, IntMatrix};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbit {
    pub n: u64,
    pub d: u64,
}

impl Orbit {
    pub fn new(n: u64, d: u64) -> Result<Orbit, Error> {
        if d == 0 || !divides(d, n) {
            return Err(Error::Invalid(format!("orbit size {} does not divide {}", d, n)));
        }
        Ok(Orbit { n, d })
    }
}

/// Finite `C_n`-set as a list of orbit sizes; points are numbered orbit by orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GSet {
    pub n: u64,
    pub orbits: Vec<u64>,
}

impl GSet {
    pub fn new(n: u64, orbits: Vec<u64>) -> Result<GSet, Error> {
        for &d in &orbits {
            Orbit::new(n, d)?;
        }
        Ok(GSet { n, orbits })
    }

    pub fn empty(n: u64) -> GSet {
        GSet { n, orbits: Vec::new() }
    }

    pub fn pt(n: u64) -> GSet {
        GSet { n, orbits: vec![1] }
    }

    pub fn orbit(n: u64, d: u64) -> GSet {
        assert!(divides(d, n), "orbit size must divide n");
        GSet { n, orbits: vec![d] }
    }

    pub fn size(&self) -> usize {
        self.orbits.iter().sum::<u64>() as usize
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.orbits.len());
        let mut acc = 0usize;
        for &d in &self.orbits {
            out.push(acc);
            acc += d as usize;
        }
        out
    }

    /// `(orbit index, position)` of a point.
    pub fn locate(&self, p: usize) -> (usize, usize) {
        let mut acc = 0usize;
        for (k, &d) in self.orbits.iter().enumerate() {
            if p < acc + d as usize {
                return (k, p - acc);
            }
            acc += d as usize;
        }
        panic!("point {} outside a set of size {}", p, acc);
    }

    pub fn union(&self, o: &GSet) -> GSet {
        let mut orbits = self.orbits.clone();
        orbits.extend(&o.orbits);
        GSet { n: self.n, orbits }
    }

    pub fn product(&self, o: &GSet) -> Product {
        Product::new(self, o)
    }
}

/// Point-level data for a set: offsets and the shift action.
#[derive(Clone, Debug)]
pub struct Points {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    orbit_of: Vec<u32>,
}

impl Points {
    pub fn new(s: &GSet) -> Points {
        let offsets = s.offsets();
        let sizes: Vec<usize> = s.orbits.iter().map(|&d| d as usize).collect();
        let mut orbit_of = Vec::with_capacity(s.size());
        for (k, &d) in sizes.iter().enumerate() {
            orbit_of.extend(core::iter::repeat(k as u32).take(d));
        }
        Points { offsets, sizes, orbit_of }
    }

    #[inline]
    pub fn locate(&self, p: usize) -> (usize, usize) {
        let k = self.orbit_of[p] as usize;
        (k, p - self.offsets[k])
    }

    /// `t^i · p`.
    #[inline]
    pub fn shift(&self, p: usize, i: usize) -> usize {
        let (k, pos) = self.locate(p);
        self.offsets[k] + (pos + i) % self.sizes[k]
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }
}

/// Orbit decomposition of a product `L × R` with diagonal action.
///
/// For orbits `Θ_a × Θ_c` the copies are indexed by `i < (a,c)`, and point
/// `t^j` of copy `i` is `(t^j, t^{j+i})`.
#[derive(Clone, Debug)]
pub struct Product {
    pub left: GSet,
    pub right: GSet,
    pub set: GSet,
    /// For each point of `set`, its pair `(left point, right point)`.
    pub to_pair: Vec<(usize, usize)>,
    /// Indexed by `l * |right| + r`.
    pub from_pair: Vec<usize>,
}

impl Product {
    pub fn new(l: &GSet, r: &GSet) -> Product {
        let (lo, ro) = (l.offsets(), r.offsets());
        let rsize = r.size();
        let mut orbits = Vec::new();
        let mut to_pair = Vec::new();
        let mut from_pair = vec![usize::MAX; l.size() * rsize];
        for (k, &a) in l.orbits.iter().enumerate() {
            for (m, &c) in r.orbits.iter().enumerate() {
                let g = gcd(a, c);
                let big = lcm(a, c);
                for i in 0..g {
                    orbits.push(big);
                    for j in 0..big {
                        let u = lo[k] + (j % a) as usize;
                        let v = ro[m] + ((j + i) % c) as usize;
                        from_pair[u * rsize + v] = to_pair.len();
                        to_pair.push((u, v));
                    }
                }
            }
        }
        Product { left: l.clone(), right: r.clone(), set: GSet { n: l.n, orbits }, to_pair, from_pair }
    }

    #[inline]
    pub fn point(&self, l: usize, r: usize) -> usize {
        self.from_pair[l * self.right.size() + r]
    }
}

/// The span-basis index data of `BZ(Θ_a, Θ_b)` for `i < (a,b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasisElement {
    pub a: u64,
    pub b: u64,
    pub i: u64,
    pub mor: BzMor,
}

/// Morphism `Θ_a → Θ_b` of the linearized Burnside category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BzMor {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub matrix: IntMatrix,
}

impl BzMor {
    pub fn new(n: u64, a: u64, b: u64, matrix: IntMatrix) -> Result<BzMor, Error> {
        Orbit::new(n, a)?;
        Orbit::new(n, b)?;
        if matrix.rows() != b as usize || matrix.cols() != a as usize {
            return Err(Error::Invalid(format!("expected a {}x{} matrix", b, a)));
        }
        for r in 0..b as usize {
            for c in 0..a as usize {
                let shifted = matrix.get((r + 1) % b as usize, (c + 1) % a as usize);
                if shifted != matrix.get(r, c) {
                    return Err(Error::Invalid(format!("matrix is not equivariant at ({}, {})", r, c)));
                }
            }
        }
        Ok(BzMor { n, a, b, matrix })
    }

    /// Builds from the image of `e_0`; that column must be fixed by `t^a`.
    pub fn from_column0(n: u64, a: u64, b: u64, col: &[Int]) -> Result<BzMor, Error> {
        if col.len() != b as usize {
            return Err(Error::Invalid(format!("column has length {}, expected {}", col.len(), b)));
        }
        let g = gcd(a, b) as usize;
        for (r, x) in col.iter().enumerate() {
            if x != &col[r % g] {
                return Err(Error::Invalid(format!("column not invariant under t^{}", a)));
            }
        }
        let mut m = IntMatrix::zeros(b as usize, a as usize);
        for j in 0..a as usize {
            for r in 0..b as usize {
                m.set((r + j) % b as usize, j, col[r].clone());
            }
        }
        BzMor::new(n, a, b, m)
    }

    /// Span-basis coefficients `c_i`, `i < (a,b)`.
    pub fn coeffs(&self) -> Vec<Int> {
        (0..gcd(self.a, self.b) as usize).map(|i| self.matrix.get(i, 0).clone()).collect()
    }

    pub fn from_coeffs(n: u64, a: u64, b: u64, c: &[Int]) -> Result<BzMor, Error> {
        let g = gcd(a, b) as usize;
        if c.len() != g {
            return Err(Error::Invalid(format!("expected {} coefficients", g)));
        }
        let col: Vec<Int> = (0..b as usize).map(|r| c[r % g].clone()).collect();
        BzMor::from_column0(n, a, b, &col)
    }

    pub fn identity(n: u64, d: u64) -> BzMor {
        BzMor { n, a: d, b: d, matrix: IntMatrix::identity(d as usize) }
    }

    /// `g ∘ f` with `g = self`.
    pub fn compose(&self, f: &BzMor) -> Result<BzMor, Error> {
        if f.b != self.a || f.n != self.n {
            return Err(Error::Invalid(format!("cannot compose Θ_{}→Θ_{} after Θ_{}→Θ_{}", self.a, self.b, f.a, f.b)));
        }
        Ok(BzMor { n: self.n, a: f.a, b: self.b, matrix: self.matrix.mul(&f.matrix) })
    }

    pub fn dual(&self) -> BzMor {
        BzMor { n: self.n, a: self.b, b: self.a, matrix: self.matrix.transpose() }
    }

    pub fn add(&self, o: &BzMor) -> BzMor {
        assert!(self.a == o.a && self.b == o.b, "sum of morphisms with different ends");
        BzMor { n: self.n, a: self.a, b: self.b, matrix: self.matrix.add(&o.matrix) }
    }

    pub fn sub(&self, o: &BzMor) -> BzMor {
        assert!(self.a == o.a && self.b == o.b, "difference of morphisms with different ends");
        BzMor { n: self.n, a: self.a, b: self.b, matrix: self.matrix.sub(&o.matrix) }
    }

    pub fn scale(&self, c: &Int) -> BzMor {
        BzMor { n: self.n, a: self.a, b: self.b, matrix: self.matrix.scale(c) }
    }
}

fn check_div(n: u64, a: u64, b: u64) -> Result<(), Error> {
    Orbit::new(n, a)?;
    Orbit::new(n, b)?;
    if !divides(b, a) {
        return Err(Error::Invalid(format!("projection needs {} | {}", b, a)));
    }
    Ok(())
}

/// `R p` for the projection `p: Θ_a → Θ_b` (`b | a`): `e_j ↦ e_{j mod b}`.
pub fn generator_r_proj(n: u64, a: u64, b: u64) -> Result<BzMor, Error> {
    check_div(n, a, b)?;
    let mut m = IntMatrix::zeros(b as usize, a as usize);
    for j in 0..a as usize {
        m.set(j % b as usize, j, Int::ONE);
    }
    Ok(BzMor { n, a, b, matrix: m })
}

/// `I p = D(R p)`: `Θ_b → Θ_a`, summing over the fiber.
pub fn generator_i_proj(n: u64, a: u64, b: u64) -> Result<BzMor, Error> {
    Ok(generator_r_proj(n, a, b)?.dual())
}

/// `R t^i` on `Θ_d`: `e_j ↦ e_{j+i}`.
pub fn generator_r_t(n: u64, d: u64, i: u64) -> Result<BzMor, Error> {
    Orbit::new(n, d)?;
    let mut m = IntMatrix::zeros(d as usize, d as usize);
    for j in 0..d {
        m.set(((j + i) % d) as usize, j as usize, Int::ONE);
    }
    Ok(BzMor { n, a: d, b: d, matrix: m })
}

/// `I t^i = D(R t^i)`.
pub fn generator_i_t(n: u64, d: u64, i: u64) -> Result<BzMor, Error> {
    Ok(generator_r_t(n, d, i)?.dual())
}

/// Basis `E_i = Rp_{m→b} ∘ Rt^i ∘ Ip_{m→a}` of `BZ(Θ_a, Θ_b)`, `m = [a,b]`.
pub fn hom_basis(n: u64, a: u64, b: u64) -> Result<Vec<SpanBasisElement>, Error> {
    Orbit::new(n, a)?;
    Orbit::new(n, b)?;
    let g = gcd(a, b);
    let mut out = Vec::with_capacity(g as usize);
    for i in 0..g {
        let mut c = vec![Int::ZERO; g as usize];
        c[i as usize] = Int::ONE;
        out.push(SpanBasisElement { a, b, i, mor: BzMor::from_coeffs(n, a, b, &c)? });
    }
    Ok(out)
}

/// The `(a,c)` embeddings `Θ_{[a,c]} → Θ_a × Θ_c`, as lists of point pairs.
pub fn orbit_product_decompose(n: u64, a: u64, c: u64) -> Result<Vec<Vec<(usize, usize)>>, Error> {
    Orbit::new(n, a)?;
    Orbit::new(n, c)?;
    let p = Product::new(&GSet::orbit(n, a), &GSet::orbit(n, c));
    let m = lcm(a, c) as usize;
    Ok(p.to_pair.chunks(m).map(|ch| ch.to_vec()).collect())
}

/// Sparse column: `(point, coefficient)` pairs.
pub type SparseCol = Vec<(usize, Int)>;

fn push_into(acc: &mut BTreeMap<usize, Int>, p: usize, c: Int) {
    let e = acc.entry(p).or_insert(Int::ZERO);
    *e += &c;
}

fn collect(acc: BTreeMap<usize, Int>) -> SparseCol {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Equivariant map `ℤ⟨S⟩ → ℤ⟨T⟩`, stored by the images of orbit base points.
#[derive(Clone, Debug)]
pub struct EqMap {
    pub src: GSet,
    pub dst: GSet,
    pub base: Vec<SparseCol>,
    dst_pts: Points,
    src_pts: Points,
}

impl PartialEq for EqMap {
    fn eq(&self, o: &EqMap) -> bool {
        self.src == o.src && self.dst == o.dst && self.base == o.base
    }
}

impl EqMap {
    pub fn from_base(src: &GSet, dst: &GSet, base: Vec<SparseCol>) -> Result<EqMap, Error> {
        if base.len() != src.orbits.len() {
            return Err(Error::Invalid(format!("need {} base columns", src.orbits.len())));
        }
        let dst_pts = Points::new(dst);
        // the base column of an orbit of size d must be fixed by t^d
        for (k, col) in base.iter().enumerate() {
            let d = src.orbits[k] as usize;
            let mut a: BTreeMap<usize, Int> = BTreeMap::new();
            let mut b: BTreeMap<usize, Int> = BTreeMap::new();
            for (p, c) in col {
                if *p >= dst.size() {
                    return Err(Error::Invalid(format!("point {} out of range", p)));
                }
                push_into(&mut a, *p, c.clone());
                push_into(&mut b, dst_pts.shift(*p, d), c.clone());
            }
            if collect(a) != collect(b) {
                return Err(Error::Invalid(format!("base column {} is not fixed by its stabilizer", k)));
            }
        }
        let base = base
            .into_iter()
            .map(|col| {
                let mut a = BTreeMap::new();
                for (p, c) in col {
                    push_into(&mut a, p, c);
                }
                collect(a)
            })
            .collect();
        Ok(EqMap { src: src.clone(), dst: dst.clone(), base, dst_pts, src_pts: Points::new(src) })
    }

    pub fn from_matrix(src: &GSet, dst: &GSet, m: &IntMatrix) -> Result<EqMap, Error> {
        if m.rows() != dst.size() || m.cols() != src.size() {
            return Err(Error::Invalid(format!("expected a {}x{} matrix", dst.size(), src.size())));
        }
        let base: Vec<SparseCol> = src
            .offsets()
            .iter()
            .map(|&o| (0..dst.size()).filter(|&r| !m.get(r, o).is_zero()).map(|r| (r, m.get(r, o).clone())).collect())
            .collect();
        let f = EqMap::from_base(src, dst, base)?;
        if &f.to_matrix() != m {
            return Err(Error::Invalid(format!("matrix is not equivariant")));
        }
        Ok(f)
    }

    pub fn from_bz(f: &BzMor) -> EqMap {
        EqMap::from_matrix(&GSet::orbit(f.n, f.a), &GSet::orbit(f.n, f.b), &f.matrix).expect("BzMor is equivariant")
    }

    pub fn identity(s: &GSet) -> EqMap {
        let base = s.offsets().into_iter().map(|o| vec![(o, Int::ONE)]).collect();
        EqMap::from_base(s, s, base).unwrap()
    }

    pub fn zero(src: &GSet, dst: &GSet) -> EqMap {
        EqMap::from_base(src, dst, vec![Vec::new(); src.orbits.len()]).unwrap()
    }

    /// Image of an arbitrary point.
    pub fn column(&self, p: usize) -> SparseCol {
        let (k, pos) = self.src_pts.locate(p);
        self.base[k].iter().map(|(q, c)| (self.dst_pts.shift(*q, pos), c.clone())).collect()
    }

    pub fn apply(&self, v: &[(usize, Int)]) -> SparseCol {
        let mut acc = BTreeMap::new();
        for (p, c) in v {
            for (q, d) in self.column(*p) {
                push_into(&mut acc, q, c * &d);
            }
        }
        collect(acc)
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dst.size(), self.src.size());
        for p in 0..self.src.size() {
            for (q, c) in self.column(p) {
                m.set(q, p, c);
            }
        }
        m
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &EqMap) -> EqMap {
        assert_eq!(first.dst, self.src, "composition of maps with mismatched sets");
        let base = first.base.iter().map(|col| self.apply(col)).collect();
        EqMap::from_base(&first.src, &self.dst, base).unwrap()
    }

    pub fn add(&self, o: &EqMap) -> EqMap {
        assert!(self.src == o.src && self.dst == o.dst, "sum of maps with different ends");
        let base = self
            .base
            .iter()
            .zip(&o.base)
            .map(|(x, y)| {
                let mut acc = BTreeMap::new();
                for (p, c) in x.iter().chain(y) {
                    push_into(&mut acc, *p, c.clone());
                }
                collect(acc)
            })
            .collect();
        EqMap::from_base(&self.src, &self.dst, base).unwrap()
    }

    pub fn scale(&self, s: &Int) -> EqMap {
        let base = self.base.iter().map(|col| col.iter().map(|(p, c)| (*p, c * s)).filter(|(_, c)| !c.is_zero()).collect()).collect();
        EqMap::from_base(&self.src, &self.dst, base).unwrap()
    }

    pub fn dual(&self) -> EqMap {
        EqMap::from_matrix(&self.dst, &self.src, &self.to_matrix().transpose()).unwrap()
    }

    /// Span coefficients of the block from source orbit `k` to target orbit `l`.
    pub fn block_coeffs(&self, k: usize, l: usize) -> Vec<Int> {
        let a = self.src.orbits[k];
        let b = self.dst.orbits[l];
        let g = gcd(a, b) as usize;
        let off = self.dst_pts.offset(l);
        let mut c = vec![Int::ZERO; g];
        for (q, x) in &self.base[k] {
            if *q >= off && *q < off + g {
                c[*q - off] = x.clone();
            }
        }
        c
    }

    /// Block from source orbit `k` to target orbit `l` as a Burnside morphism.
    pub fn block(&self, k: usize, l: usize) -> BzMor {
        BzMor::from_coeffs(self.src.n, self.src.orbits[k], self.dst.orbits[l], &self.block_coeffs(k, l)).unwrap()
    }

    /// Block-assembled map from morphisms between single orbits; `blocks[l][k]: S_k → T_l`.
    pub fn from_blocks(src: &GSet, dst: &GSet, blocks: &[Vec<Option<BzMor>>]) -> Result<EqMap, Error> {
        let doff = dst.offsets();
        let mut base = vec![Vec::new(); src.orbits.len()];
        for (l, row) in blocks.iter().enumerate() {
            for (k, f) in row.iter().enumerate() {
                if let Some(f) = f {
                    if f.a != src.orbits[k] || f.b != dst.orbits[l] {
                        return Err(Error::Invalid(format!("block ({}, {}) has the wrong orbits", l, k)));
                    }
                    for r in 0..f.b as usize {
                        let x = f.matrix.get(r, 0);
                        if !x.is_zero() {
                            base[k].push((doff[l] + r, x.clone()));
                        }
                    }
                }
            }
        }
        EqMap::from_base(src, dst, base)
    }

    /// `self × g` transported to the orbit decompositions `ps` (of src × g.src) and `pt` (of dst × g.dst).
    pub fn product(&self, g: &EqMap, ps: &Product, pt: &Product) -> EqMap {
        assert!(ps.left == self.src && ps.right == g.src && pt.left == self.dst && pt.right == g.dst, "product sets mismatch");
        let base = ps
            .set
            .offsets()
            .iter()
            .map(|&o| {
                let (u, v) = ps.to_pair[o];
                let cu = self.column(u);
                let cv = g.column(v);
                let mut acc = BTreeMap::new();
                for (p, c) in &cu {
                    for (q, d) in &cv {
                        push_into(&mut acc, pt.point(*p, *q), c * d);
                    }
                }
                collect(acc)
            })
            .collect();
        EqMap::from_base(&ps.set, &pt.set, base).unwrap()
    }

    /// Disjoint union `self ⊔ o`.
    pub fn direct_sum(&self, o: &EqMap) -> EqMap {
        let src = self.src.union(&o.src);
        let dst = self.dst.union(&o.dst);
        let shift = self.dst.size();
        let mut base = self.base.clone();
        base.extend(o.base.iter().map(|col| col.iter().map(|(p, c)| (p + shift, c.clone())).collect()));
        EqMap::from_base(&src, &dst, base).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{divisors, Lattice};

    /// Lattice of all equivariant b×a matrices, by brute-force linear algebra.
    fn commuting_solutions(a: u64, b: u64) -> Lattice {
        let (a, b) = (a as usize, b as usize);
        let nvar = a * b;
        let mut rows = Vec::new();
        for r in 0..b {
            for c in 0..a {
                let mut row = vec![Int::ZERO; nvar];
                row[r * a + c] += &Int::ONE;
                row[((r + 1) % b) * a + (c + 1) % a] -= &Int::ONE;
                rows.push(row);
            }
        }
        Lattice::kernel(&IntMatrix::from_rows(&rows))
    }

    #[test]
    fn basis_ranks_and_span() {
        for n in [6u64, 12, 30, 60] {
            for a in divisors(n) {
                for b in divisors(n) {
                    let basis = hom_basis(n, a, b).unwrap();
                    assert_eq!(basis.len() as u64, gcd(a, b));
                    let lat = commuting_solutions(a, b);
                    assert_eq!(lat.rank(), basis.len());
                    // each solution-lattice generator is an integer combination of basis elements
                    for j in 0..lat.rank() {
                        let v = lat.basis.column(j);
                        let m = IntMatrix::from_vec(b as usize, a as usize, v);
                        let f = BzMor::new(n, a, b, m.clone()).unwrap();
                        let mut acc = IntMatrix::zeros(b as usize, a as usize);
                        for (e, c) in basis.iter().zip(f.coeffs()) {
                            acc = acc.add(&e.mor.matrix.scale(&c));
                        }
                        assert_eq!(acc, m);
                    }
                }
            }
        }
        assert_eq!(hom_basis(6, 2, 3).unwrap().len(), 1);
        assert_eq!(hom_basis(12, 6, 4).unwrap().len(), 2);
        assert_eq!(hom_basis(1, 1, 1).unwrap()[0].mor, BzMor::identity(1, 1));
    }

    #[test]
    fn basis_factors_through_lcm() {
        let n = 12;
        for a in divisors(n) {
            for b in divisors(n) {
                let m = lcm(a, b);
                for e in hom_basis(n, a, b).unwrap() {
                    let f = generator_r_proj(n, m, b)
                        .unwrap()
                        .compose(&generator_r_t(n, m, e.i).unwrap())
                        .unwrap()
                        .compose(&generator_i_proj(n, m, a).unwrap())
                        .unwrap();
                    assert_eq!(f, e.mor);
                }
            }
        }
    }

    #[test]
    fn generator_identities() {
        assert_eq!(generator_r_t(6, 6, 6).unwrap(), BzMor::identity(6, 6));
        for d in [1u64, 2, 3, 6] {
            for i in 0..d {
                assert_eq!(generator_r_t(6, d, i).unwrap(), generator_i_t(6, d, (d - i) % d).unwrap());
            }
        }
        let rp = generator_r_proj(12, 4, 1).unwrap();
        for i in 0..4 {
            assert_eq!(rp.compose(&generator_r_t(12, 4, i).unwrap()).unwrap(), rp);
        }
        let ip = generator_i_proj(12, 4, 2).unwrap();
        assert_eq!(generator_r_t(12, 4, 1).unwrap().compose(&generator_i_proj(12, 4, 1).unwrap()).unwrap(), generator_i_proj(12, 4, 1).unwrap());
        assert_eq!(generator_r_t(12, 4, 2).unwrap().compose(&ip).unwrap(), ip);
        assert_eq!(rp.dual(), generator_i_proj(12, 4, 1).unwrap());
        assert!(generator_r_proj(12, 4, 3).is_err());
    }

    #[test]
    fn product_decompositions() {
        assert_eq!(orbit_product_decompose(6, 2, 3).unwrap().len(), 1);
        assert_eq!(orbit_product_decompose(6, 6, 6).unwrap().len(), 6);
        let p = orbit_product_decompose(12, 4, 6).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|c| c.len() == 12));
        // bijection and equivariance by enumeration
        for (a, c) in [(4u64, 6u64), (6, 6), (2, 3), (12, 4)] {
            let pr = Product::new(&GSet::orbit(12, a), &GSet::orbit(12, c));
            let mut seen = vec![false; (a * c) as usize];
            for (idx, &(u, v)) in pr.to_pair.iter().enumerate() {
                assert!(!seen[u * c as usize + v]);
                seen[u * c as usize + v] = true;
                assert_eq!(pr.point(u, v), idx);
            }
            assert!(seen.iter().all(|&s| s));
            let pts = Points::new(&pr.set);
            for (idx, &(u, v)) in pr.to_pair.iter().enumerate() {
                let (u2, v2) = pr.to_pair[pts.shift(idx, 1)];
                assert_eq!((u2, v2), ((u + 1) % a as usize, (v + 1) % c as usize));
            }
        }
    }

    #[test]
    fn eqmap_roundtrip() {
        let s = GSet::new(12, vec![4, 1, 6]).unwrap();
        let t = GSet::new(12, vec![2, 12]).unwrap();
        let f = EqMap::from_base(
            &s,
            &t,
            vec![vec![(0, Int::from(3)), (1, Int::from(-1))], vec![(0, Int::ONE), (1, Int::ONE)], vec![(2, Int::ONE), (8, Int::ONE), (3, Int::from(2)), (9, Int::from(2))]],
        )
        .unwrap();
        let m = f.to_matrix();
        assert_eq!(EqMap::from_matrix(&s, &t, &m).unwrap(), f);
        assert_eq!(f.dual().dual(), f);
        assert!(EqMap::from_base(&s, &t, vec![vec![], vec![(0, Int::ONE)], vec![]]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn composition_laws(a in 0usize..6, b in 0usize..6, c in 0usize..6, d in 0usize..6, seed in proptest::collection::vec(-3i64..4, 40)) {
            let ds = divisors(12);
            let (a, b, c, d) = (ds[a], ds[b], ds[c], ds[d]);
            let mk = |x: u64, y: u64, off: usize| {
                let g = gcd(x, y) as usize;
                let cs: Vec<Int> = (0..g).map(|i| Int::from(seed[off + i])).collect();
                BzMor::from_coeffs(12, x, y, &cs).unwrap()
            };
            let f = mk(a, b, 0);
            let f2 = mk(a, b, 12);
            let g = mk(b, c, 24);
            let h = mk(c, d, 28);
            let hg_f = h.compose(&g).unwrap().compose(&f).unwrap();
            let h_gf = h.compose(&g.compose(&f).unwrap()).unwrap();
            proptest::prop_assert_eq!(&hg_f, &h_gf);
            proptest::prop_assert_eq!(g.compose(&f.add(&f2)).unwrap(), g.compose(&f).unwrap().add(&g.compose(&f2).unwrap()));
            proptest::prop_assert_eq!(g.compose(&f).unwrap().dual(), f.dual().compose(&g.dual()).unwrap());
            proptest::prop_assert_eq!(f.dual().dual(), f);
        }
    }
}
