use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::snf::{reduce, Track};
use super::{Int, IntMatrix};
use crate::Error;

/// Finitely generated abelian group in normal form: `⊕ ℤ/torsion[i] ⊕ ℤ^free_rank`.
///
/// Coordinates list the torsion generators first, then the free ones.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    pub torsion: Vec<Int>,
    pub free_rank: usize,
}

impl FgAbGroup {
    pub fn zero() -> FgAbGroup {
        FgAbGroup::default()
    }

    pub fn free(k: usize) -> FgAbGroup {
        FgAbGroup { torsion: Vec::new(), free_rank: k }
    }

    /// `ℤ/k`, with `k = 0` meaning `ℤ` and `k = 1` the zero group.
    pub fn cyclic(k: &Int) -> FgAbGroup {
        let k = k.abs();
        if k.is_zero() {
            FgAbGroup::free(1)
        } else if k.is_one() {
            FgAbGroup::zero()
        } else {
            FgAbGroup { torsion: vec![k], free_rank: 0 }
        }
    }

    pub fn dim(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of the i-th generator, `0` for free generators.
    pub fn order(&self, i: usize) -> Int {
        self.torsion.get(i).cloned().unwrap_or(Int::ZERO)
    }

    pub fn orders(&self) -> Vec<Int> {
        (0..self.dim()).map(|i| self.order(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.dim() <= 1
    }

    /// Cardinality, or `None` when infinite.
    pub fn cardinality(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::ONE, |a, b| &a * b))
    }

    /// Generator order for a cyclic group: `1` for zero, `0` for `ℤ`.
    pub fn cyclic_order(&self) -> Option<Int> {
        match (self.torsion.len(), self.free_rank) {
            (0, 0) => Some(Int::ONE),
            (0, 1) => Some(Int::ZERO),
            (1, 0) => Some(self.torsion[0].clone()),
            _ => None,
        }
    }

    pub fn torsion_rows(&self) -> Vec<(usize, Int)> {
        self.torsion.iter().cloned().enumerate().collect()
    }

    /// Columns generating the relation lattice inside ℤ^dim.
    pub fn relations(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.dim(), self.torsion.len());
        for (i, t) in self.torsion.iter().enumerate() {
            r.set(i, i, t.clone());
        }
        r
    }

    pub fn reduce_vec(&self, v: &mut [Int]) {
        for (i, t) in self.torsion.iter().enumerate() {
            v[i] = v[i].rem_euclid(t);
        }
    }

    /// Reduces each torsion row of a matrix whose rows are coordinates in `self`.
    pub fn reduce_rows(&self, m: &mut IntMatrix) {
        for (i, t) in self.torsion.iter().enumerate() {
            for j in 0..m.cols() {
                let v = m.get(i, j).rem_euclid(t);
                m.set(i, j, v);
            }
        }
    }

    pub fn direct_sum(&self, o: &FgAbGroup) -> (FgAbGroup, IntMatrix) {
        let mut orders = self.orders();
        orders.extend(o.orders());
        normalize_diagonal(&orders)
    }
}

/// Normal form of `⊕ ℤ/orders[i]` (order 0 = ℤ) with the coordinate change
/// from the diagonal coordinates to the normal form.
pub fn normalize_diagonal(orders: &[Int]) -> (FgAbGroup, IntMatrix) {
    let k = orders.len();
    let sq = Subquotient::new(Lattice::full(k), &IntMatrix::diagonal(orders));
    let c = sq.coords_matrix(&IntMatrix::identity(k));
    (sq.group, c)
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{}", t)).collect();
        if self.free_rank == 1 {
            parts.push(String::from("Z"));
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Homomorphism given by its matrix on normal-form generators.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    /// Checks shape and well-definedness, and reduces torsion rows.
    pub fn new(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Result<AbHom, Error> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Invalid(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for (j, o) in source.torsion.iter().enumerate() {
            for i in 0..target.dim() {
                let v = matrix.get(i, j) * o;
                if !v.rem_euclid(&target.order(i)).is_zero() {
                    return Err(Error::Invalid(format!(
                        "not well defined: generator {} of order {} maps outside the kernel of its order",
                        j, o
                    )));
                }
            }
        }
        target.reduce_rows(&mut matrix);
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(g: &FgAbGroup) -> AbHom {
        AbHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.dim()) }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> AbHom {
        AbHom { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.dim(), source.dim()) }
    }

    pub fn scalar(g: &FgAbGroup, c: &Int) -> AbHom {
        let mut m = IntMatrix::scalar(g.dim(), c);
        g.reduce_rows(&mut m);
        AbHom { source: g.clone(), target: g.clone(), matrix: m }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> AbHom {
        let mut m = self.matrix.mul(&first.matrix);
        self.target.reduce_rows(&mut m);
        AbHom { source: first.source.clone(), target: self.target.clone(), matrix: m }
    }

    pub fn add(&self, o: &AbHom) -> AbHom {
        let mut m = self.matrix.add(&o.matrix);
        self.target.reduce_rows(&mut m);
        AbHom { source: self.source.clone(), target: self.target.clone(), matrix: m }
    }

    pub fn sub(&self, o: &AbHom) -> AbHom {
        let mut m = self.matrix.sub(&o.matrix);
        self.target.reduce_rows(&mut m);
        AbHom { source: self.source.clone(), target: self.target.clone(), matrix: m }
    }

    pub fn is_zero(&self) -> bool {
        let mut m = self.matrix.clone();
        self.target.reduce_rows(&mut m);
        m.is_zero()
    }

    pub fn same_map(&self, o: &AbHom) -> bool {
        self.sub(o).is_zero()
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        let mut y = self.matrix.mul_vec(x);
        self.target.reduce_vec(&mut y);
        y
    }

    pub fn kernel(&self) -> Subquotient {
        let lat = Lattice::preimage(&self.matrix, &self.target.torsion_rows());
        Subquotient::new(lat, &self.source.relations())
    }

    pub fn cokernel(&self) -> Subquotient {
        let rels = self.matrix.hstack(&self.target.relations());
        Subquotient::new(Lattice::full(self.target.dim()), &rels)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `self(x) = y`, if one exists.
    pub fn preimage_of(&self, y: &[Int]) -> Option<Vec<Int>> {
        let g = self.matrix.hstack(&self.target.relations());
        let x = solve(&g, y)?;
        let mut x = x[..self.source.dim()].to_vec();
        self.source.reduce_vec(&mut x);
        Some(x)
    }
}

/// Solves `a · x = b` over ℤ.
pub fn solve(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let red = reduce(a, Track { u: true, u_inv: false, v: true, v_inv: false });
    let u = red.u.unwrap();
    let v = red.v.unwrap();
    let w = u.mul_vec(b);
    let mut z = vec![Int::ZERO; a.cols()];
    for (i, wi) in w.iter().enumerate() {
        if i < red.rank {
            if !red.diag[i].divides(wi) {
                return None;
            }
            z[i] = wi.div_exact(&red.diag[i]);
        } else if !wi.is_zero() {
            return None;
        }
    }
    Some(v.mul_vec(&z))
}

/// Coordinates on a sublattice, `x ↦ post · diag(1/div) · pre · x`.
#[derive(Clone, Debug)]
pub enum Coords {
    Linear(IntMatrix),
    Scaled { pre: IntMatrix, div: Vec<Int>, post: IntMatrix },
}

impl Coords {
    pub fn out_dim(&self) -> usize {
        match self {
            Coords::Linear(m) => m.rows(),
            Coords::Scaled { post, .. } => post.rows(),
        }
    }

    /// Applies the coordinate map; `None` if a division is inexact.
    pub fn try_apply(&self, x: &[Int]) -> Option<Vec<Int>> {
        match self {
            Coords::Linear(m) => Some(m.mul_vec(x)),
            Coords::Scaled { pre, div, post } => {
                let mut w = pre.mul_vec(x);
                for (wi, d) in w.iter_mut().zip(div) {
                    if !d.divides(wi) {
                        return None;
                    }
                    *wi = wi.div_exact(d);
                }
                Some(post.mul_vec(&w))
            }
        }
    }

    pub fn apply_matrix(&self, x: &IntMatrix) -> IntMatrix {
        match self {
            Coords::Linear(m) => m.mul(x),
            Coords::Scaled { pre, div, post } => {
                let mut w = pre.mul(x);
                for (i, d) in div.iter().enumerate() {
                    if d.is_one() {
                        continue;
                    }
                    for j in 0..w.cols() {
                        let q = w.get(i, j).div_exact(d);
                        w.set(i, j, q);
                    }
                }
                post.mul(&w)
            }
        }
    }

    fn then(self, m: &IntMatrix) -> Coords {
        match self {
            Coords::Linear(c) => Coords::Linear(m.mul(&c)),
            Coords::Scaled { pre, div, post } => Coords::Scaled { pre, div, post: m.mul(&post) },
        }
    }
}

/// A sublattice `L ⊆ ℤ^k` with a basis and a coordinate map `L → ℤ^rank`.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub basis: IntMatrix,
    pub coords: Coords,
}

impl Lattice {
    pub fn full(k: usize) -> Lattice {
        Lattice { basis: IntMatrix::identity(k), coords: Coords::Linear(IntMatrix::identity(k)) }
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// `ker(f)` for `f: ℤ^k → ℤ^q`.
    pub fn kernel(f: &IntMatrix) -> Lattice {
        let red = reduce(f, Track::COLS);
        let v = red.v.unwrap();
        let vi = red.v_inv.unwrap();
        let idx: Vec<usize> = (red.rank..f.cols()).collect();
        Lattice { basis: v.select_cols(&idx), coords: Coords::Linear(vi.select_rows(&idx)) }
    }

    /// `{x : f x ≡ 0}` where `tors` lists the target rows taken modulo an order.
    pub fn preimage(f: &IntMatrix, tors: &[(usize, Int)]) -> Lattice {
        if tors.is_empty() {
            return Lattice::kernel(f);
        }
        let k = f.cols();
        let m = tors.len();
        let mut r = IntMatrix::zeros(f.rows(), m);
        for (j, (row, o)) in tors.iter().enumerate() {
            r.set(*row, j, -o);
        }
        let ext = Lattice::kernel(&f.hstack(&r));
        let basis = ext.basis.submatrix(0, k, 0, ext.rank());
        let rows: Vec<usize> = tors.iter().map(|(i, _)| *i).collect();
        let pre = IntMatrix::identity(k).vstack(&f.select_rows(&rows));
        let mut div = vec![Int::ONE; k];
        div.extend(tors.iter().map(|(_, o)| o.clone()));
        let post = match ext.coords {
            Coords::Linear(p) => p,
            Coords::Scaled { .. } => unreachable!(),
        };
        Lattice { basis, coords: Coords::Scaled { pre, div, post } }
    }

    /// The sublattice spanned by the columns of `g`.
    pub fn span(g: &IntMatrix) -> Lattice {
        let k = g.rows();
        if g.cols() == 0 {
            return Lattice { basis: IntMatrix::zeros(k, 0), coords: Coords::Linear(IntMatrix::zeros(0, k)) };
        }
        let red = reduce(g, Track::ROWS);
        let u = red.u.unwrap();
        let ui = red.u_inv.unwrap();
        let idx: Vec<usize> = (0..red.rank).collect();
        let div: Vec<Int> = red.diag[..red.rank].to_vec();
        let basis = ui.select_cols(&idx).mul(&IntMatrix::diagonal(&div));
        let pre = u.select_rows(&idx);
        Lattice { basis, coords: Coords::Scaled { pre, div, post: IntMatrix::identity(red.rank) } }
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        match self.coords.try_apply(x) {
            Some(z) => self.basis.mul_vec(&z) == x,
            None => false,
        }
    }
}

/// `L / N` for lattices `N ⊆ L ⊆ ℤ^k`, in normal form with ambient representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbGroup,
    /// Ambient representatives of the normal-form generators (k × dim).
    pub gens: IntMatrix,
    pub lattice: Lattice,
    coords: Coords,
}

impl Subquotient {
    /// `rels` are ambient columns spanning N; they must lie in `lattice`.
    pub fn new(lattice: Lattice, rels: &IntMatrix) -> Subquotient {
        let r = lattice.rank();
        let z = if rels.cols() == 0 { IntMatrix::zeros(r, 0) } else { lattice.coords.apply_matrix(rels) };
        let red = reduce(&z, Track::ROWS);
        let u2 = red.u.unwrap();
        let u2i = red.u_inv.unwrap();
        let mut tors_idx = Vec::new();
        let mut torsion = Vec::new();
        let mut free_idx = Vec::new();
        for i in 0..r {
            let d = red.diag.get(i).cloned().unwrap_or(Int::ZERO);
            if i < red.rank {
                if !d.is_one() {
                    tors_idx.push(i);
                    torsion.push(d);
                }
            } else {
                free_idx.push(i);
            }
        }
        let free_rank = free_idx.len();
        tors_idx.extend(free_idx);
        let gens = lattice.basis.mul(&u2i.select_cols(&tors_idx));
        let coords = lattice.coords.clone().then(&u2.select_rows(&tors_idx));
        Subquotient { group: FgAbGroup { torsion, free_rank }, gens, lattice, coords }
    }

    pub fn ambient(&self) -> usize {
        self.lattice.ambient()
    }

    /// Normal-form coordinates of an ambient element of L (reduced).
    pub fn class_of(&self, x: &[Int]) -> Option<Vec<Int>> {
        if !self.lattice.contains(x) {
            return None;
        }
        let mut c = self.coords.try_apply(x)?;
        self.group.reduce_vec(&mut c);
        Some(c)
    }

    /// Coordinates of many ambient columns; columns must lie in L.
    pub fn coords_matrix(&self, x: &IntMatrix) -> IntMatrix {
        let mut c = self.coords.apply_matrix(x);
        self.group.reduce_rows(&mut c);
        c
    }

    /// Representative with the stored generator lift.
    pub fn lift(&self, c: &[Int]) -> Vec<Int> {
        self.gens.mul_vec(c)
    }

    /// Inclusion-type hom from the normal form into an ambient group, given ambient torsion.
    pub fn inclusion_into(&self, ambient: &FgAbGroup) -> AbHom {
        let mut m = self.gens.clone();
        ambient.reduce_rows(&mut m);
        AbHom { source: self.group.clone(), target: ambient.clone(), matrix: m }
    }
}

pub fn cokernel_group(a: &IntMatrix) -> Subquotient {
    Subquotient::new(Lattice::full(a.rows()), a)
}

/// `ker(f)` and its inclusion into `f.source`.
pub fn kernel_with_inclusion(f: &AbHom) -> (FgAbGroup, AbHom) {
    let k = f.kernel();
    let inc = k.inclusion_into(&f.source);
    (k.group, inc)
}

/// `ker(g) / im(f)` for composable `f: A → B`, `g: B → C` with `g ∘ f = 0`.
pub fn homology_subquotient(f: &AbHom, g: &AbHom) -> Result<Subquotient, Error> {
    if f.target != g.source {
        return Err(Error::Invalid(String::from("homs do not compose")));
    }
    if !g.compose(f).is_zero() {
        return Err(Error::Invalid(String::from("composite is not zero")));
    }
    Ok(homology_raw(&f.matrix, &g.matrix, &f.target, &g.target))
}

/// Homology at `b` of ambient matrices; no composite check.
pub fn homology_raw(f: &IntMatrix, g: &IntMatrix, b: &FgAbGroup, c: &FgAbGroup) -> Subquotient {
    let lat = Lattice::preimage(g, &c.torsion_rows());
    let rels = f.hstack(&b.relations());
    Subquotient::new(lat, &rels)
}

/// `Hom(a, b)` with a decoder from its normal-form coordinates to homs.
pub struct HomGroup {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub sq: Subquotient,
}

impl HomGroup {
    pub fn group(&self) -> &FgAbGroup {
        &self.sq.group
    }

    pub fn decode(&self, c: &[Int]) -> AbHom {
        let flat = self.sq.lift(c);
        let (r, k) = (self.target.dim(), self.source.dim());
        AbHom::new(self.source.clone(), self.target.clone(), IntMatrix::from_vec(r, k, flat)).expect("decoded hom is well defined")
    }

    pub fn encode(&self, h: &AbHom) -> Vec<Int> {
        self.sq.class_of(h.matrix.entries()).expect("hom lies in the solution lattice")
    }
}

pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> HomGroup {
    let (ka, kb) = (a.dim(), b.dim());
    let nvar = ka * kb;
    let mut rows = Vec::new();
    let mut tors = Vec::new();
    for (j, o) in a.torsion.iter().enumerate() {
        for i in 0..kb {
            let mut row = vec![Int::ZERO; nvar];
            row[i * ka + j] = o.clone();
            let bo = b.order(i);
            if !bo.is_zero() {
                tors.push((rows.len(), bo));
            }
            rows.push(row);
        }
    }
    let c = if rows.is_empty() { IntMatrix::zeros(0, nvar) } else { IntMatrix::from_rows(&rows) };
    let lat = Lattice::preimage(&c, &tors);
    let mut rels = IntMatrix::zeros(nvar, b.torsion.len() * ka);
    for (i, o) in b.torsion.iter().enumerate() {
        for j in 0..ka {
            rels.set(i * ka + j, i * ka + j, o.clone());
        }
    }
    HomGroup { source: a.clone(), target: b.clone(), sq: Subquotient::new(lat, &rels) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> Int {
        Int::from(k)
    }

    #[test]
    fn cokernels() {
        let g = cokernel_group(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).group;
        assert_eq!(g.torsion, vec![z(2), z(4)]);
        assert_eq!(cokernel_group(&IntMatrix::zeros(1, 0)).group, FgAbGroup::free(1));
        assert_eq!(cokernel_group(&IntMatrix::from_rows(&[vec![7]])).group, FgAbGroup::cyclic(&z(7)));
    }

    #[test]
    fn kernels() {
        let z4 = FgAbGroup::cyclic(&z(4));
        let f = AbHom::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let (k, inc) = kernel_with_inclusion(&f);
        assert_eq!(k, FgAbGroup::cyclic(&z(2)));
        assert_eq!(inc.matrix, IntMatrix::from_rows(&[vec![2]]));
        let zz = FgAbGroup::free(1);
        let f0 = AbHom::zero(&zz, &zz);
        assert_eq!(kernel_with_inclusion(&f0).0, zz);
        let f5 = AbHom::scalar(&zz, &z(5));
        assert!(kernel_with_inclusion(&f5).0.is_zero());
        let bad = AbHom::new(FgAbGroup::cyclic(&z(4)), FgAbGroup::free(1), IntMatrix::from_rows(&[vec![1]]));
        assert!(bad.is_err());
    }

    #[test]
    fn homology_examples() {
        let zz = FgAbGroup::free(1);
        let h = homology_subquotient(&AbHom::scalar(&zz, &z(2)), &AbHom::zero(&zz, &zz)).unwrap();
        assert_eq!(h.group, FgAbGroup::cyclic(&z(2)));
        let f = AbHom::new(zz.clone(), FgAbGroup::free(2), IntMatrix::from_rows(&[vec![1], vec![1]])).unwrap();
        let g = AbHom::new(FgAbGroup::free(2), zz.clone(), IntMatrix::from_rows(&[vec![1, -1]])).unwrap();
        let h = homology_subquotient(&f, &g).unwrap();
        assert!(h.group.is_zero());
        let g2 = AbHom::zero(&FgAbGroup::free(2), &zz);
        let h2 = homology_subquotient(&f, &g2).unwrap();
        assert_eq!(h2.group, FgAbGroup::free(1));
        // round trip on generators
        for j in 0..h2.group.dim() {
            let rep = h2.gens.column(j);
            let mut e = vec![Int::ZERO; h2.group.dim()];
            e[j] = Int::ONE;
            assert_eq!(h2.class_of(&rep).unwrap(), e);
        }
        assert!(homology_subquotient(&f, &AbHom::new(FgAbGroup::free(2), zz, IntMatrix::from_rows(&[vec![1, 0]])).unwrap()).is_err());
    }

    #[test]
    fn hom_groups() {
        for a in 1..=30i64 {
            for b in 1..=30i64 {
                let h = hom_group(&FgAbGroup::cyclic(&z(a)), &FgAbGroup::cyclic(&z(b)));
                assert_eq!(h.group().cardinality(), Some(z(a).gcd(&z(b))));
            }
        }
        let target = FgAbGroup { torsion: vec![z(4)], free_rank: 1 };
        let h = hom_group(&FgAbGroup::cyclic(&z(6)), &target);
        assert_eq!(h.group(), &FgAbGroup::cyclic(&z(2)));
        let g = h.decode(&[z(1)]);
        assert_eq!(g.matrix, IntMatrix::from_rows(&[vec![2], vec![0]]));
        assert_eq!(h.encode(&g), vec![z(1)]);
        assert_eq!(hom_group(&FgAbGroup::free(1), &FgAbGroup::cyclic(&z(9))).group(), &FgAbGroup::cyclic(&z(9)));
    }

    #[test]
    fn nonsaturated_preimage() {
        // x ↦ x in Z/2: kernel 2Z
        let lat = Lattice::preimage(&IntMatrix::from_rows(&[vec![1]]), &[(0, z(2))]);
        assert!(lat.contains(&[z(4)]));
        assert!(!lat.contains(&[z(3)]));
    }
}
