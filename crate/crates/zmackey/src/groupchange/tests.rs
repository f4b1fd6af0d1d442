use super::*;
use alloc::vec;
use crate::families::{family_quotient, Family};
use crate::mackey::{constant_z, free_module, ideal, identify_quotient};

fn proven(a: &ZModule, b: &ZModule) -> bool {
    compare_modules(a, b).unwrap().is_proven()
}

#[test]
fn restriction_to_subgroups() {
    let n = 12;
    for m in divisors(n) {
        assert_eq!(restrict_incl(&constant_z(n).unwrap(), m).unwrap(), constant_z(m).unwrap());
        for a in divisors(n) {
            let t = GSet::orbit(n, a);
            // T as a C_m-set: orbits of size m/(n/a, m), a·(n/a, m)/m of them
            let g = crate::exactalg::gcd(n / a, m);
            let s = GSet::new(m, vec![m / g; (a * g / m) as usize]).unwrap();
            let r = restrict_incl(&free_module(&t).unwrap(), m).unwrap();
            assert!(proven(&r, &free_module(&s).unwrap()), "F({}) to C_{}", a, m);
        }
    }
    let q = quotient(12, 4).unwrap();
    assert_eq!(restrict_incl(&q, 12).unwrap(), q);
    assert!(restrict_incl(&q, 5).is_err());
}

#[test]
fn induction_from_subgroups() {
    let n = 12;
    for m in divisors(n) {
        let ind = induce_incl(&constant_z(m).unwrap(), n).unwrap();
        assert!(proven(&ind, &free_module(&GSet::orbit(n, n / m)).unwrap()));
        for a in divisors(m) {
            let f = free_module(&GSet::orbit(m, a)).unwrap();
            let ind = induce_incl(&f, n).unwrap();
            assert_eq!(ind.value(n).free_rank as u64, f.value(m).free_rank as u64 * (n / m));
        }
    }
    let q = quotient(6, 3).unwrap();
    assert!(proven(&induce_incl(&q, 6).unwrap(), &q));
}

#[test]
fn surjections() {
    let n = 12;
    for m in divisors(n) {
        let z = restrict_surj(&constant_z(m).unwrap(), n).unwrap();
        assert!(proven(&z, &constant_z(n).unwrap()));
        assert!(proven(&induce_proj(&constant_z(n).unwrap(), m).unwrap(), &constant_z(m).unwrap()));
        for a in divisors(m) {
            let x = quotient(m, a).unwrap();
            let r = restrict_surj(&x, n).unwrap();
            assert!(proven(&induce_proj(&r, m).unwrap(), &x));
            let f = Family::of_divisor(m, a).unwrap();
            let pulled = Family::new(n, divisors(n).into_iter().filter(|&k| divides(k / crate::exactalg::gcd(k, n / m), m / a))).unwrap();
            assert!(proven(&restrict_surj(&family_quotient(&f).unwrap(), n).unwrap(), &family_quotient(&pulled).unwrap()));
        }
    }
    for (l, e) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let d = l.pow(e);
        let m = crate::exactalg::ell_part(n, l);
        assert!(proven(&restrict_surj(&quotient(m, d).unwrap(), n).unwrap(), &quotient(n, d).unwrap()));
    }
    for a in divisors(n) {
        let p = induce_proj(&quotient(n, a).unwrap(), 4).unwrap();
        for d in divisors(4) {
            assert_eq!(p.value(d), quotient(n, a).unwrap().value(d));
        }
        if divides(a, 4) {
            assert_eq!(identify_quotient(&p), Some(a));
        }
    }
    let i = ideal(12, 6).unwrap();
    assert!(induce_proj(&i, 6).unwrap().validate().is_ok());
}

#[test]
fn change_of_groups_for_tor() {
    for (l, e, f) in [(2, 0, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2), (3, 1, 1)] {
        assert!(tor_change_check(12, l, e, f).unwrap(), "ℓ={} e={} f={}", l, e, f);
    }
    for m in [2, 3] {
        for a in divisors(m) {
            for b in divisors(m) {
                assert!(monoidality_check(&quotient(m, a).unwrap(), &quotient(m, b).unwrap(), 6).unwrap());
            }
        }
    }
}
