use super::*;
use crate::exactalg::FgAbGroup;
use crate::boxhom::internal_hom;
use crate::mackey::{compare_modules, constant_z, free_module, ideal, identify_quotient, quotient, value_table, NamedModule};

fn proven(a: &ZModule, b: &ZModule) -> bool {
    compare_modules(a, b).unwrap().is_proven()
}

fn all_families(n: u64) -> Vec<Family> {
    // divisor-closed sets are unions of principal down-sets
    let divs = divisors(n);
    let mut out: BTreeSet<Family> = BTreeSet::new();
    out.insert(Family::empty(n));
    for mask in 1u32..(1 << divs.len()) {
        let gens: Vec<u64> = (0..divs.len()).filter(|i| mask >> i & 1 == 1).map(|i| divs[i]).collect();
        let mem: BTreeSet<u64> = gens.iter().flat_map(|&g| divisors(g)).collect();
        out.insert(Family::new(n, mem).unwrap());
        if out.len() > 200 {
            break;
        }
    }
    out.into_iter().collect()
}

#[test]
fn c45_family() {
    let f = Family::new(45, [1, 3]).unwrap();
    let i = family_ideal(&f).unwrap();
    let gens = [(1, 15), (5, 3), (3, 5), (15, 1), (9, 5), (45, 1)];
    for (j, g) in gens {
        assert_eq!(f.order_at(j), g);
        assert_eq!(i.value(j), &FgAbGroup::free(1));
    }
    // multipliers read on the ambient Z agree with Z itself
    let z = constant_z(45).unwrap();
    for (a, b, _) in crate::exactalg::prime_edges(45) {
        let (ga, gb) = (Int::from(f.order_at(a)), Int::from(f.order_at(b)));
        assert_eq!(&(i.res_matrix(a, b).get(0, 0) * &gb), &(z.res_matrix(a, b).get(0, 0) * &ga));
        assert_eq!(&(i.tr_matrix(a, b).get(0, 0) * &ga), &(z.tr_matrix(a, b).get(0, 0) * &gb));
    }
    let q = family_quotient(&f).unwrap();
    assert_eq!(q, quotient(45, 15).unwrap());
    assert_eq!(f.divisor(), Some(15));
    assert!(proven(&i, &ideal(45, 15).unwrap()));
    assert!(proven(&family_ideal_by_closure(&f).unwrap(), &i));
}

#[test]
fn trivial_families() {
    let f = Family::all(12);
    assert!(proven(&family_ideal(&f).unwrap(), &constant_z(12).unwrap()));
    assert!(family_quotient(&f).unwrap().is_zero());
    assert!(Family::new(12, [2]).is_err());
    assert!(Family::new(12, [5]).is_err());
}

#[test]
fn order_formula_and_recognition() {
    for n in [45, 60] {
        for f in all_families(n) {
            let q = family_quotient(&f).unwrap();
            let closure = family_ideal_by_closure(&f).unwrap();
            let oracle = crate::mackey::map_cokernel(&MackeyMap::new(closure.clone(), constant_z(n).unwrap(), inclusion_comps(&f)).unwrap()).unwrap().0;
            assert_eq!(value_table(&q), value_table(&oracle));
            match f.divisor() {
                Some(d) => {
                    assert_eq!(identify_quotient(&q), Some(d));
                    assert!(proven(&family_ideal(&f).unwrap(), &ideal(n, d).unwrap()));
                }
                None => assert!(family_ideal(&f).unwrap().is_zero()),
            }
        }
    }
}

fn inclusion_comps(f: &Family) -> BTreeMap<u64, IntMatrix> {
    // the closure image has the same generators as the formula, in the same order
    divisors(f.n)
        .into_iter()
        .map(|j| {
            let g = f.order_at(j);
            (j, if g == 0 { IntMatrix::zeros(1, 0) } else { IntMatrix::scalar(1, &Int::from(g)) })
        })
        .collect()
}

#[test]
fn algebra_of_families() {
    let (f4, f6) = (Family::of_divisor(12, 4).unwrap(), Family::of_divisor(12, 6).unwrap());
    let (u, i) = family_algebra(&f4, &f6).unwrap();
    assert_eq!(u.divisor(), Some(2));
    assert_eq!(i, Family::of_divisor(12, 12).unwrap());
    assert_eq!(family_algebra(&f4, &f4).unwrap(), (f4.clone(), f4));
    for f in all_families(12) {
        for g in all_families(12) {
            family_algebra(&f, &g).unwrap();
        }
    }
    for a in divisors(60) {
        for b in divisors(60) {
            let want = lcm(a, b);
            for (j, meet, prod) in ideal_meet_and_product(60, a, b) {
                let k = want / gcd(want, j);
                assert_eq!((meet, prod), (k, k), "a={} b={} spot {}", a, b, j);
            }
        }
    }
}

#[test]
fn annihilators() {
    let n = 12;
    let z = constant_z(n).unwrap();
    for a in [2, 3, 4, 12] {
        let f = Family::of_divisor(n, a).unwrap();
        assert!(ann_family(&f, &z).unwrap().0.is_zero());
        for b in divisors(n) {
            let q = quotient(n, b).unwrap();
            let (ann, inc) = ann_family(&f, &q).unwrap();
            inc.validate().unwrap();
            assert_eq!(identify_quotient(&ann), Some(gcd(a, b)));
            assert!(proven(&ann, &internal_hom(&family_quotient(&f).unwrap(), &q).unwrap()));
        }
        let q = quotient(n, a).unwrap();
        assert_eq!(ann_family(&f, &q).unwrap().0, q);
    }
}

#[test]
fn generated_parts() {
    let n = 12;
    let z = constant_z(n).unwrap();
    for a in divisors(n) {
        let f = Family::of_divisor(n, a).unwrap();
        let (g, _) = generated_part(&f, &z).unwrap();
        assert!(proven(&g, &ideal(n, a).unwrap()));
        for b in divisors(n) {
            let m = ideal(n, b).unwrap();
            let lhs = generated_quotient(&f, &m).unwrap();
            let rhs = box_product(&family_quotient(&f).unwrap(), &m).unwrap();
            assert!(proven(&lhs, &rhs), "a={} b={}", a, b);
        }
    }
    let m = NamedModule::FormZ(6, 2).build(n).unwrap();
    assert_eq!(generated_part(&Family::all(n), &m).unwrap().0, m);
}

#[test]
fn null_modules() {
    let n = 12;
    for a in divisors(n) {
        let f = Family::of_divisor(n, a).unwrap();
        let q = quotient(n, a).unwrap();
        assert!(null_check(&f, &q).unwrap());
        assert_eq!(null_check(&f, &constant_z(n).unwrap()).unwrap(), false);
        for t in f.spots() {
            let fr = free_module(&GSet::orbit(n, t)).unwrap();
            assert!(box_product(&fr, &q).unwrap().is_zero());
        }
    }
}
