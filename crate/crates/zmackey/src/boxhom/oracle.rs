//! The box product as a coend over single orbits.
//!
//! At `Θ_c` this is `⊕_{c | m} M(Θ_m) ⊗ N(Θ_m)` modulo the Weyl relation
//! `[m; t^c a ⊗ t^c b] = [m; a ⊗ b]` and Frobenius reciprocity along prime
//! edges `m' → m` with `c | m'`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{box_with, free_coords_to_column, free_presentation, BoxData};
use crate::burnside::{generator_i_proj, EqMap, GSet};
use crate::exactalg::{divisors, lcm, prime_edges, Int, IntMatrix, Lattice, Subquotient};
use crate::mackey::{assemble, ActPowers, Diagram, MackeyMap, ZModule};
use crate::Error;

/// Summand layout of the ambient group at one spot.
#[derive(Clone, Debug)]
struct Layout {
    /// `(m, offset)` for each `m` with `c | m`.
    parts: Vec<(u64, usize)>,
    orders: Vec<Int>,
}

impl Layout {
    fn offset(&self, m: u64) -> usize {
        self.parts.iter().find(|p| p.0 == m).expect("summand present").1
    }
}

fn tensor_orders(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.gcd(y));
        }
    }
    out
}

/// The oracle module with the data needed for comparison maps.
#[derive(Clone, Debug)]
pub struct CoendData {
    pub module: ZModule,
    pub sqs: BTreeMap<u64, Subquotient>,
    pub rels: BTreeMap<u64, IntMatrix>,
    layouts: BTreeMap<u64, Layout>,
}

pub fn box_coend_data(m: &ZModule, nm: &ZModule) -> Result<CoendData, Error> {
    let n = m.n;
    if nm.n != n {
        return Err(Error::Invalid(alloc::format!("modules over C_{} and C_{}", n, nm.n)));
    }
    let divs = divisors(n);
    let dims = |x: u64| (m.value(x).dim(), nm.value(x).dim());
    let mut layouts = BTreeMap::new();
    for &c in &divs {
        let mut parts = Vec::new();
        let mut orders = Vec::new();
        for &x in &divs {
            if x % c == 0 {
                parts.push((x, orders.len()));
                orders.extend(tensor_orders(&m.value(x).orders(), &nm.value(x).orders()));
            }
        }
        layouts.insert(c, Layout { parts, orders });
    }
    let mut pw_m = ActPowers::new();
    let mut pw_n = ActPowers::new();
    let mut sqs = BTreeMap::new();
    let mut all_rels = BTreeMap::new();
    for &c in &divs {
        let lay = &layouts[&c];
        let k = lay.orders.len();
        let mut rels = IntMatrix::diagonal(&lay.orders);
        for &(x, off) in &lay.parts {
            let (a, b) = dims(x);
            let w = pw_m.get(m, x, c).kronecker(&pw_n.get(nm, x, c)).sub(&IntMatrix::identity(a * b));
            let mut blk = IntMatrix::zeros(k, a * b);
            blk.paste(off, 0, &w);
            rels = rels.hstack(&blk);
        }
        for (x, y, _) in prime_edges(n) {
            if x % c != 0 {
                continue;
            }
            let (ox, oy) = (lay.offset(x), lay.offset(y));
            let ((ma, na), (mb, nb)) = (dims(x), dims(y));
            // [y; res a ⊗ b] − [x; a ⊗ tr b], a ∈ M(x), b ∈ N(y)
            let mut blk = IntMatrix::zeros(k, ma * nb);
            blk.paste(oy, 0, &m.res_matrix(x, y).kronecker(&IntMatrix::identity(nb)));
            blk.paste(ox, 0, &IntMatrix::identity(ma).kronecker(nm.tr_matrix(x, y)).neg());
            rels = rels.hstack(&blk);
            // [y; a ⊗ res b] − [x; tr a ⊗ b], a ∈ M(y), b ∈ N(x)
            let mut blk = IntMatrix::zeros(k, mb * na);
            blk.paste(oy, 0, &IntMatrix::identity(mb).kronecker(nm.res_matrix(x, y)));
            blk.paste(ox, 0, &m.tr_matrix(x, y).kronecker(&IntMatrix::identity(na)).neg());
            rels = rels.hstack(&blk);
        }
        sqs.insert(c, Subquotient::new(Lattice::full(k), &rels));
        all_rels.insert(c, rels);
    }
    let mut amb = Diagram::default();
    for &c in &divs {
        let lay = &layouts[&c];
        let k = lay.orders.len();
        let mut a = IntMatrix::zeros(k, k);
        for &(x, off) in &lay.parts {
            a.paste(off, off, &m.act_matrix(x).kronecker(nm.act_matrix(x)));
        }
        amb.act.insert(c, a);
    }
    for (c, e, l) in prime_edges(n) {
        let (lc, le) = (&layouts[&c], &layouts[&e]);
        let mut t = IntMatrix::zeros(lc.orders.len(), le.orders.len());
        for &(x, off) in &le.parts {
            let (a, b) = dims(x);
            t.paste(lc.offset(x), off, &IntMatrix::identity(a * b));
        }
        amb.tr.insert((c, e), t);
        let mut r = IntMatrix::zeros(le.orders.len(), lc.orders.len());
        for &(x, off) in &lc.parts {
            if x % e == 0 {
                let (a, b) = dims(x);
                let mut s = IntMatrix::zeros(a * b, a * b);
                for j in 0..l {
                    s = s.add(&pw_m.get(m, x, c * j).kronecker(&pw_n.get(nm, x, c * j)));
                }
                r.paste(le.offset(x), off, &s);
            } else {
                let y = lcm(x, e);
                r.paste(le.offset(y), off, &m.res_matrix(x, y).kronecker(nm.res_matrix(x, y)));
            }
        }
        amb.res.insert((c, e), r);
    }
    let module = assemble(n, &sqs, &amb)?;
    Ok(CoendData { module, sqs, rels: all_rels, layouts })
}

pub fn box_coend_oracle(m: &ZModule, nm: &ZModule) -> Result<ZModule, Error> {
    Ok(box_coend_data(m, nm)?.module)
}

/// The map from the coend to the presentation-built box product sending
/// `[m; a ⊗ b]` to the transfer of `N(ψ)(b)`, where `ψ(α, x) = z(e_x)_α · e_x`
/// for a lift `z ∈ F_{A_0}(Θ_m)` of `a`.
pub fn coend_comparison(co: &CoendData, bx: &BoxData, m: &ZModule, nm: &ZModule) -> Result<MackeyMap, Error> {
    let n = m.n;
    let p = &bx.presentation;
    let a0 = &p.f0;
    let a0_off = a0.offsets();
    let mut pw = ActPowers::new();
    // images in N(A_0 × Θ_x) of the generator pairs of M(Θ_x) ⊗ N(Θ_x)
    let mut local: BTreeMap<u64, IntMatrix> = BTreeMap::new();
    for x in divisors(n) {
        let (ka, kb) = (m.value(x).dim(), nm.value(x).dim());
        let prod = &bx.exp0.prods[&x];
        let width: usize = nm.orders_at(&prod.set).len();
        let mut out = IntMatrix::zeros(width, ka * kb);
        for i in 0..ka {
            let mut e = alloc::vec![Int::ZERO; ka];
            e[i] = Int::ONE;
            let z = p.aug.component(x).preimage_of(&e).ok_or_else(|| Error::Invalid(alloc::format!("presentation is not onto at Θ_{}", x)))?;
            let col = free_coords_to_column(a0, x, &z);
            let mut dense = alloc::vec![Int::ZERO; a0.size()];
            for (q, v) in col {
                dense[q] = v;
            }
            let base: Vec<_> = prod
                .set
                .offsets()
                .iter()
                .map(|&o| {
                    let (alpha, pt) = prod.to_pair[o];
                    let (k, r) = a0.locate(alpha);
                    let s = a0.orbits[k] as usize;
                    let back = a0_off[k] + (r + s - pt % s) % s;
                    let v = dense[back].clone();
                    if v.is_zero() {
                        Vec::new()
                    } else {
                        alloc::vec![(pt, v)]
                    }
                })
                .collect();
            let psi = EqMap::from_base(&prod.set, &GSet::orbit(n, x), base)?;
            let np = nm.apply_eqmap(&psi, &mut pw);
            for j in 0..kb {
                let col = np.column(j);
                for (r, v) in col.into_iter().enumerate() {
                    out.set(r, i * kb + j, v);
                }
            }
        }
        local.insert(x, out);
    }
    let mut comps = BTreeMap::new();
    let ida = EqMap::identity(a0);
    for c in divisors(n) {
        let lay = &co.layouts[&c];
        let sq = &bx.sqs[&c];
        let mut phi = IntMatrix::zeros(sq.group.dim(), lay.orders.len());
        for &(x, off) in &lay.parts {
            let ip = EqMap::from_bz(&generator_i_proj(n, x, c)?);
            let f = ida.product(&ip, &bx.exp0.prods[&c], &bx.exp0.prods[&x]);
            let trm = nm.apply_eqmap(&f, &mut pw);
            let v = trm.mul(&local[&x]);
            phi.paste(0, off, &sq.coords_matrix(&v));
        }
        let killed = {
            let mut r = phi.mul(&co.rels[&c]);
            sq.group.reduce_rows(&mut r);
            r.is_zero()
        };
        if !killed {
            return Err(Error::Axiom(alloc::format!("comparison map does not respect the coend relations at Θ_{}", c)));
        }
        let mut comp = phi.mul(&co.sqs[&c].gens);
        sq.group.reduce_rows(&mut comp);
        comps.insert(c, comp);
    }
    MackeyMap::new(co.module.clone(), bx.module.clone(), comps)
}

/// Builds both constructions and the comparison map between them.
pub fn box_oracle_iso(m: &ZModule, nm: &ZModule) -> Result<MackeyMap, Error> {
    let co = box_coend_data(m, nm)?;
    let bx = box_with(&free_presentation(m)?, nm)?;
    coend_comparison(&co, &bx, m, nm)
}
