use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{check_divides, g, map_cokernel, map_kernel, Diagram, MackeyMap, ZModule};
use crate::burnside::GSet;
use crate::exactalg::{divides, divisors, gcd, prime_edges, valuation, AbHom, FgAbGroup, Int, IntMatrix, Subquotient};
use crate::Error;

/// Modules with a generator at each spot, given by orders and multipliers.
pub(crate) fn cyclic_module(
    n: u64,
    order: impl Fn(u64) -> Int,
    res: impl Fn(u64, u64, u64) -> Int,
    tr: impl Fn(u64, u64, u64) -> Int,
    act: impl Fn(u64) -> Int,
) -> Result<ZModule, Error> {
    let mut dg = Diagram::default();
    for d in divisors(n) {
        let v = FgAbGroup::cyclic(&order(d));
        let a = if v.dim() == 1 { IntMatrix::scalar(1, &act(d)) } else { IntMatrix::zeros(0, 0) };
        dg.act.insert(d, a);
        dg.values.insert(d, v);
    }
    for (a, b, l) in prime_edges(n) {
        let (da, db) = (dg.values[&a].dim(), dg.values[&b].dim());
        let mut r = IntMatrix::zeros(db, da);
        let mut t = IntMatrix::zeros(da, db);
        if da == 1 && db == 1 {
            r.set(0, 0, res(a, b, l));
            t.set(0, 0, tr(a, b, l));
        }
        dg.res.insert((a, b), r);
        dg.tr.insert((a, b), t);
    }
    ZModule::new(n, dg)
}

fn i(x: u64) -> Int {
    Int::from(x)
}

pub fn zero_module(n: u64) -> Result<ZModule, Error> {
    cyclic_module(n, |_| Int::ONE, |_, _, _| Int::ZERO, |_, _, _| Int::ZERO, |_| Int::ONE)
}

/// The constant module `Z`: restriction 1, transfer ℓ.
pub fn constant_z(n: u64) -> Result<ZModule, Error> {
    cyclic_module(n, |_| Int::ZERO, |_, _, _| Int::ONE, |_, _, l| i(l), |_| Int::ONE)
}

/// Constant `Z/k`.
pub fn constant_mod(n: u64, k: u64) -> Result<ZModule, Error> {
    cyclic_module(n, |_| i(k), |_, _, _| Int::ONE, |_, _, l| i(l), |_| Int::ONE)
}

/// The ideal `I_a ⊆ Z`, generated at `Θ_d` by `a/(a,d)`.
pub fn ideal(n: u64, a: u64) -> Result<ZModule, Error> {
    check_divides(n, &[a])?;
    let k = move |d: u64| a / g(a, d);
    cyclic_module(n, |_| Int::ZERO, move |x, y, _| i(k(x) / k(y)), move |x, y, l| i(l * k(y) / k(x)), |_| Int::ONE)
}

/// `Z / I_a`.
pub fn quotient(n: u64, a: u64) -> Result<ZModule, Error> {
    check_divides(n, &[a])?;
    cyclic_module(n, move |d| i(a / g(a, d)), |_, _, _| Int::ONE, |_, _, l| i(l), |_| Int::ONE)
}

/// `I_a / I_b` for `a | b | n`.
pub fn ia_mod_ib(n: u64, a: u64, b: u64) -> Result<ZModule, Error> {
    check_divides(n, &[a, b])?;
    if !divides(a, b) {
        return Err(Error::Invalid(format!("I_{}/I_{} needs {} | {}", a, b, a, b)));
    }
    let k = move |d: u64| a / g(a, d);
    cyclic_module(
        n,
        move |d| i((b / g(b, d)) / k(d)),
        move |x, y, _| i(k(x) / k(y)),
        move |x, y, l| i(l * k(y) / k(x)),
        |_| Int::ONE,
    )
}

/// `Z(e; d)` for `d | e | n`: on the edge `(j, jℓ)` the restriction is ℓ
/// when `v_ℓ(d) ≤ v_ℓ(j) < v_ℓ(e)`, otherwise the transfer is ℓ.
pub fn form_z(n: u64, e: u64, d: u64) -> Result<ZModule, Error> {
    check_divides(n, &[e, d])?;
    if !divides(d, e) {
        return Err(Error::Invalid(format!("Z({};{}) needs {} | {}", e, d, d, e)));
    }
    let up = move |j: u64, l: u64| {
        let v = valuation(l, j);
        valuation(l, d) <= v && v < valuation(l, e)
    };
    cyclic_module(
        n,
        |_| Int::ZERO,
        move |j, _, l| if up(j, l) { i(l) } else { Int::ONE },
        move |j, _, l| if up(j, l) { Int::ONE } else { i(l) },
        |_| Int::ONE,
    )
}

/// `×x: Z/I_c → Z/I_b`.
pub fn multiplication_map(n: u64, b: u64, x: u64, c: u64) -> Result<MackeyMap, Error> {
    check_divides(n, &[b, c])?;
    if x == 0 || !divides(b, c * x) {
        return Err(Error::Invalid(format!("×{}: Z/I_{} → Z/I_{} needs {} | {}·{}", x, c, b, b, c, x)));
    }
    let s = quotient(n, c)?;
    let t = quotient(n, b)?;
    let mut comps = BTreeMap::new();
    for d in divisors(n) {
        let mut m = IntMatrix::zeros(t.value(d).dim(), s.value(d).dim());
        if m.rows() == 1 && m.cols() == 1 {
            m.set(0, 0, i(x));
        }
        comps.insert(d, m);
    }
    MackeyMap::new(s, t, comps)
}

pub fn quotient_rel(n: u64, b: u64, x: u64, c: u64) -> Result<ZModule, Error> {
    Ok(map_cokernel(&multiplication_map(n, b, x, c)?)?.0)
}

pub fn colon_kernel(n: u64, b: u64, x: u64, c: u64) -> Result<ZModule, Error> {
    Ok(map_kernel(&multiplication_map(n, b, x, c)?)?.0)
}

/// The free module `BZ(-, S)`.
///
/// At `Θ_c` the coordinates of orbit `k` (size `s`) are the entries
/// `0..(c,s)` of the image of `e_0`, which is periodic mod `(c,s)`.
pub fn free_module(s: &GSet) -> Result<ZModule, Error> {
    let m = free_module_unchecked(s)?;
    m.validate()?;
    Ok(m)
}

pub(crate) fn free_module_unchecked(s: &GSet) -> Result<ZModule, Error> {
    let n = s.n;
    let dimv = |c: u64| -> Vec<usize> { s.orbits.iter().map(|&o| gcd(c, o) as usize).collect() };
    let off = |v: &[usize]| -> Vec<usize> {
        let mut o = Vec::with_capacity(v.len() + 1);
        let mut acc = 0;
        o.push(0);
        for x in v {
            acc += x;
            o.push(acc);
        }
        o
    };
    let mut dg = Diagram::default();
    for c in divisors(n) {
        let v = dimv(c);
        let o = off(&v);
        let total = o[v.len()];
        dg.values.insert(c, FgAbGroup::free(total));
        let mut a = IntMatrix::zeros(total, total);
        for (k, &gk) in v.iter().enumerate() {
            for r in 0..gk {
                a.set(o[k] + r, o[k] + (r + gk - 1) % gk, Int::ONE);
            }
        }
        dg.act.insert(c, a);
    }
    for (c, e, l) in prime_edges(n) {
        let (v, w) = (dimv(c), dimv(e));
        let (ov, ow) = (off(&v), off(&w));
        let mut r = IntMatrix::zeros(ow[w.len()], ov[v.len()]);
        let mut t = IntMatrix::zeros(ov[v.len()], ow[w.len()]);
        for k in 0..v.len() {
            for x in 0..w[k] {
                r.set(ow[k] + x, ov[k] + x % v[k], Int::ONE);
            }
            for x in 0..v[k] {
                for j in 0..l as usize {
                    let src = (x as i64 - (j as i64) * (c as i64)).rem_euclid(w[k] as i64) as usize;
                    let cur = t.get(ov[k] + x, ow[k] + src).clone();
                    t.set(ov[k] + x, ow[k] + src, cur + Int::ONE);
                }
            }
        }
        dg.res.insert((c, e), r);
        dg.tr.insert((c, e), t);
    }
    ZModule::new_unchecked(n, dg)
}

/// Fixed points of an automorphism `t` of `w` (`t^n = 1`): inclusion as
/// restriction, the norm as transfer.
pub fn fixed_point_module(n: u64, w: &FgAbGroup, t: &IntMatrix) -> Result<ZModule, Error> {
    Ok(fixed_point_parts(n, w, t)?.0)
}

/// The fixed-point module with each value as a subquotient of `w`.
pub(crate) fn fixed_point_parts(n: u64, w: &FgAbGroup, t: &IntMatrix) -> Result<(ZModule, BTreeMap<u64, Subquotient>), Error> {
    let th = AbHom::new(w.clone(), w.clone(), t.clone())?;
    let id = AbHom::identity(w);
    let mut sqs: BTreeMap<u64, Subquotient> = BTreeMap::new();
    let mut amb = Diagram::default();
    let pow = |k: u64| AbHom { source: w.clone(), target: w.clone(), matrix: th.matrix.pow(k) };
    if !pow(n).same_map(&id) {
        return Err(Error::Invalid(format!("automorphism has order not dividing {}", n)));
    }
    for d in divisors(n) {
        sqs.insert(d, pow(d).sub(&id).kernel());
        amb.act.insert(d, th.matrix.clone());
    }
    for (a, b, l) in prime_edges(n) {
        amb.res.insert((a, b), IntMatrix::identity(w.dim()));
        let mut norm = AbHom::zero(w, w);
        for k in 0..l {
            norm = norm.add(&pow(a * k));
        }
        amb.tr.insert((a, b), norm.matrix);
    }
    let m = super::map::assemble(n, &sqs, &amb)?;
    m.validate()?;
    Ok((m, sqs))
}

/// Named modules accepted by the front ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedModule {
    Z,
    Zero,
    Ideal(u64),
    Quotient(u64),
    FormZ(u64, u64),
    IaModIb(u64, u64),
    QuotientRel(u64, u64, u64),
    ColonKernel(u64, u64, u64),
    Free(Vec<u64>),
    ZMod(u64),
    /// Fixed points of the sign action on `Z`, for even `n`.
    FpSign,
}

impl NamedModule {
    pub fn build(&self, n: u64) -> Result<ZModule, Error> {
        match self {
            NamedModule::Z => constant_z(n),
            NamedModule::Zero => zero_module(n),
            NamedModule::Ideal(a) => ideal(n, *a),
            NamedModule::Quotient(a) => quotient(n, *a),
            NamedModule::FormZ(e, d) => form_z(n, *e, *d),
            NamedModule::IaModIb(a, b) => ia_mod_ib(n, *a, *b),
            NamedModule::QuotientRel(b, x, c) => quotient_rel(n, *b, *x, *c),
            NamedModule::ColonKernel(b, x, c) => colon_kernel(n, *b, *x, *c),
            NamedModule::Free(os) => free_module(&GSet::new(n, os.clone())?),
            NamedModule::ZMod(k) => constant_mod(n, *k),
            NamedModule::FpSign => {
                if n % 2 != 0 {
                    return Err(Error::Invalid(String::from("the sign action needs n even")));
                }
                fixed_point_module(n, &FgAbGroup::free(1), &IntMatrix::scalar(1, &Int::from(-1)))
            }
        }
    }

    /// Parses `z`, `ideal:6`, `formz:6,2`, `free:1,3`, ...
    pub fn parse(s: &str) -> Result<NamedModule, Error> {
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let nums = || -> Result<Vec<u64>, Error> {
            let t = tail.ok_or_else(|| Error::Invalid(format!("`{}` needs arguments", head)))?;
            t.split(',').map(|x| x.trim().parse::<u64>().map_err(|_| Error::Invalid(format!("bad number `{}` in `{}`", x, s)))).collect()
        };
        let want = |k: usize| -> Result<Vec<u64>, Error> {
            let v = nums()?;
            if v.len() != k {
                return Err(Error::Invalid(format!("`{}` takes {} arguments", head, k)));
            }
            Ok(v)
        };
        let no_args = |m: NamedModule| if tail.is_some() { Err(Error::Invalid(format!("`{}` takes no arguments", head))) } else { Ok(m) };
        match head.to_ascii_lowercase().as_str() {
            "z" => no_args(NamedModule::Z),
            "zero" | "0" => no_args(NamedModule::Zero),
            "fpsign" => no_args(NamedModule::FpSign),
            "ideal" => Ok(NamedModule::Ideal(want(1)?[0])),
            "quotient" => Ok(NamedModule::Quotient(want(1)?[0])),
            "zmod" => Ok(NamedModule::ZMod(want(1)?[0])),
            "formz" => {
                let v = want(2)?;
                Ok(NamedModule::FormZ(v[0], v[1]))
            }
            "iamodib" => {
                let v = want(2)?;
                Ok(NamedModule::IaModIb(v[0], v[1]))
            }
            "quotientrel" => {
                let v = want(3)?;
                Ok(NamedModule::QuotientRel(v[0], v[1], v[2]))
            }
            "colonkernel" => {
                let v = want(3)?;
                Ok(NamedModule::ColonKernel(v[0], v[1], v[2]))
            }
            "free" => Ok(NamedModule::Free(nums()?)),
            _ => Err(Error::Invalid(format!("unknown module `{}`", s))),
        }
    }
}
