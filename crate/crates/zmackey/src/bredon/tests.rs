use super::*;
use crate::mackey::{compare_modules, constant_z, form_z, identify_form_of_z, identify_quotient, ideal, ia_mod_ib};

fn proven(a: &ZModule, b: &ZModule) -> bool {
    compare_modules(a, b).unwrap().is_proven()
}

fn at(h: &[(i64, ZModule)], i: i64) -> Option<&ZModule> {
    h.iter().find(|x| x.0 == i).map(|x| &x.1)
}

#[test]
fn sphere_homology() {
    for (n, d) in [(12, 4), (12, 1), (5, 5), (30, 6)] {
        let h = sphere_complex(n, d).unwrap().homology().unwrap();
        assert!(proven(at(&h, 2).unwrap(), &constant_z(n).unwrap()));
        assert!(at(&h, 1).unwrap().is_zero());
        assert_eq!(identify_quotient(at(&h, 0).unwrap()), Some(d));
        let single = rep_homology(n, &[d], 0).unwrap();
        for (i, m) in &h {
            assert_eq!(at(&single, *i).unwrap(), m);
        }
    }
}

#[test]
fn pairs_of_spheres() {
    let n = 12;
    for a in divisors(n) {
        for b in divisors(n) {
            let h = rep_homology(n, &[a, b], 0).unwrap();
            assert!(proven(at(&h, 4).unwrap(), &constant_z(n).unwrap()));
            for (i, want) in expected_pair_quotients(a, b) {
                assert_eq!(identify_quotient(at(&h, i).unwrap()), Some(want));
            }
            assert!(at(&h, 3).unwrap().is_zero() && at(&h, 1).unwrap().is_zero());
            let hd = rep_homology(n, &[a, b], 1).unwrap();
            let h0 = at(&hd, 0).unwrap();
            assert!(identify_form_of_z(h0).is_some());
            assert!(proven(h0, &form_z(n, a, gcd(a, b)).unwrap()));
            let m = at(&hd, -2).unwrap();
            assert!(proven(m, &ia_mod_ib(n, gcd(a, b), b).unwrap()) || gcd(a, b) == b && m.is_zero());
            assert!(euler_check(n, a, b, false).unwrap());
            assert!(euler_check(n, a, b, true).unwrap());
            assert!(d3_discrepancy(n, a, b).unwrap());
        }
        let h = rep_homology(n, &[a], 1).unwrap();
        for (i, m) in &h {
            if *i == -2 {
                assert!(proven(m, &ideal(n, a).unwrap()));
            } else {
                assert!(m.is_zero());
            }
        }
    }
}

#[test]
fn page_shapes() {
    let n = 12;
    let (a, b) = (4, 6);
    let p = kunneth_dual_spheres(n, a, b).unwrap();
    assert!(p.entries.keys().all(|&(p, _)| p >= 0 && p <= 3));
    let u = uct_spheres(n, a, b).unwrap();
    assert!(u.entries.keys().all(|&(p, _)| p <= 0 && p >= -3));
    assert!(!u.entries.is_empty());
}
