use proptest::prelude::*;
use zmackey::boxhom::{box_coend_oracle, box_product, internal_hom};
use zmackey::bredon::rep_homology;
use zmackey::burnside::GSet;
use zmackey::exactalg::{divisors, gcd, lcm};
use zmackey::families::{family_quotient, Family};
use zmackey::groupchange::{induce_incl, restrict_incl};
use zmackey::mackey::{compare_modules, constant_z, free_module, ideal, identify_quotient, quotient, value_table};
use zmackey::resolutions::{ext, tor};

fn proven(a: &zmackey::mackey::ZModule, b: &zmackey::mackey::ZModule) -> bool {
    compare_modules(a, b).unwrap().is_proven()
}

#[test]
fn named_modules_through_every_layer() {
    let n = 12;
    let q4 = quotient(n, 4).unwrap();
    let i6 = ideal(n, 6).unwrap();
    assert!(proven(&box_product(&ideal(n, 4).unwrap(), &i6).unwrap(), &ideal(n, 12).unwrap()));
    assert_eq!(identify_quotient(&tor(&q4, &quotient(n, 6).unwrap(), 3).unwrap()), Some(2));
    assert_eq!(identify_quotient(&ext(&q4, &constant_z(n).unwrap(), 3).unwrap()), Some(4));
    assert!(proven(&internal_hom(&constant_z(n).unwrap(), &i6).unwrap(), &i6));
    let f = Family::of_divisor(n, 4).unwrap();
    assert_eq!(value_table(&family_quotient(&f).unwrap()), value_table(&quotient(n, f.divisor().unwrap()).unwrap()));
    let h = rep_homology(n, &[3], 0).unwrap();
    assert_eq!(identify_quotient(&h.iter().find(|x| x.0 == 0).unwrap().1), Some(3));
}

#[test]
fn restriction_of_induction_on_free_modules() {
    // over C_4 ⊂ C_12, inducing F_{Θ_2} gives F_{Θ_6}
    let f = free_module(&GSet::orbit(4, 2)).unwrap();
    let ind = induce_incl(&f, 12).unwrap();
    assert!(proven(&ind, &free_module(&GSet::orbit(12, 6)).unwrap()));
    let back = restrict_incl(&ind, 4).unwrap();
    assert_eq!(value_table(&back).len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn quotient_boxes_agree_with_oracle(ai in 0usize..6, bi in 0usize..6) {
        let ds = divisors(12);
        let (a, b) = (ds[ai], ds[bi]);
        let (qa, qb) = (quotient(12, a).unwrap(), quotient(12, b).unwrap());
        let bx = box_product(&qa, &qb).unwrap();
        prop_assert_eq!(value_table(&bx), value_table(&box_coend_oracle(&qa, &qb).unwrap()));
        prop_assert_eq!(identify_quotient(&bx).unwrap_or(1), gcd(a, b));
        prop_assert!(proven(&box_product(&ideal(12, a).unwrap(), &ideal(12, b).unwrap()).unwrap(), &ideal(12, lcm(a, b)).unwrap()));
    }
}
