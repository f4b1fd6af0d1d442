use super::*;
use crate::burnside::{generator_i_proj, generator_r_proj, hom_basis, BzMor};
use proptest::prelude::*;

fn z(x: i64) -> Int {
    Int::from(x)
}

fn cyc(k: i64) -> FgAbGroup {
    FgAbGroup::cyclic(&z(k))
}

#[test]
fn c45_values() {
    let q = quotient(45, 15).unwrap();
    let want = [(1, 15), (5, 3), (3, 5), (15, 1), (9, 5), (45, 1)];
    for (d, k) in want {
        assert_eq!(q.value(d), &cyc(k));
    }
    let zz = constant_z(45).unwrap();
    assert_eq!(zz.tr_matrix(1, 5).get(0, 0), &z(5));
    assert_eq!(zz.tr_matrix(1, 3).get(0, 0), &z(3));
    assert_eq!(zz.res_matrix(1, 45).get(0, 0), &z(1));
    let id = ideal(45, 15).unwrap();
    assert_eq!(id.res_matrix(1, 5).get(0, 0), &z(5));
    assert_eq!(id.tr_matrix(1, 5).get(0, 0), &z(1));
    assert_eq!(id.tr_matrix(5, 15).get(0, 0), &z(1));
    assert_eq!(id.tr_matrix(15, 45).get(0, 0), &z(3));
    let s = evaluate(&q, &GSet::new(45, vec![3, 9]).unwrap()).unwrap();
    assert_eq!(s, FgAbGroup { torsion: vec![z(5), z(5)], free_rank: 0 });
    assert!(evaluate(&q, &GSet::empty(45)).unwrap().is_zero());
}

#[test]
fn validation_reports_relations() {
    let mut d = constant_z(4).unwrap().diagram();
    d.tr.insert((1, 2), IntMatrix::scalar(1, &z(1)));
    match ZModule::new(4, d) {
        Err(Error::Axiom(s)) => assert!(s.contains("tr∘res"), "{}", s),
        other => panic!("expected a relation failure, got {:?}", other.map(|_| ())),
    }
    let mut d = constant_z(4).unwrap().diagram();
    d.values.remove(&2);
    assert!(matches!(ZModule::new(4, d), Err(Error::Invalid(_))));
    assert!(quotient(12, 5).is_err());
    assert!(form_z(12, 2, 4).is_err());
}

#[test]
fn named_modules_validate() {
    for n in [1u64, 2, 4, 6, 12, 30, 45, 60] {
        for a in divisors(n) {
            ideal(n, a).unwrap();
            quotient(n, a).unwrap();
            constant_mod(n, a).unwrap();
            for b in divisors(n) {
                if b % a == 0 {
                    ia_mod_ib(n, a, b).unwrap().validate().unwrap();
                    form_z(n, b, a).unwrap();
                }
            }
        }
        free_module(&GSet::new(n, divisors(n)).unwrap()).unwrap();
    }
    assert!(quotient(12, 1).unwrap().is_zero());
}

#[test]
fn quotient_properties() {
    for n in 1..=120u64 {
        for a in divisors(n) {
            let q = quotient(n, a).unwrap();
            assert_eq!(identify_quotient(&q), Some(a));
            for (x, y, _) in prime_edges(n) {
                assert!(q.res(x, y).is_surjective());
                assert!(q.tr(x, y).is_injective());
            }
            for d in divisors(n) {
                let e = gcd(d, a);
                assert!(q.res(e, d).is_iso() && q.tr(e, d).is_iso());
            }
        }
    }
    assert_eq!(identify_quotient(&zero_module(6).unwrap()), Some(1));
    assert_eq!(identify_quotient(&constant_mod(4, 2).unwrap()), None);
}

#[test]
fn free_and_fixed_points() {
    for l in [2u64, 3, 5] {
        let n = l * l;
        let f = free_module(&GSet::orbit(n, l)).unwrap();
        assert_eq!(f.value(n).free_rank, l as usize);
        assert_eq!(f.value(l).free_rank, l as usize);
        assert_eq!(f.value(1).free_rank, 1);
        let mut perm = IntMatrix::zeros(l as usize, l as usize);
        for j in 0..l as usize {
            perm.set((j + 1) % l as usize, j, Int::ONE);
        }
        let fp = fixed_point_module(n, &FgAbGroup::free(l as usize), &perm).unwrap();
        assert!(compare_modules(&fp, &f).unwrap().is_proven());
    }
    let triv = fixed_point_module(6, &FgAbGroup::free(1), &IntMatrix::identity(1)).unwrap();
    assert_eq!(identify_form_of_z(&triv), Some((1, 1)));
    let sign = NamedModule::FpSign.build(2).unwrap();
    assert!(sign.value(1).is_zero());
    assert_eq!(sign.value(2), &FgAbGroup::free(1));
    assert_eq!(sign.act_matrix(2).get(0, 0), &z(-1));
    assert!(fixed_point_module(3, &FgAbGroup::free(1), &IntMatrix::scalar(1, &z(-1))).is_err());
}

#[test]
fn morphism_action() {
    let n = 12;
    let zz = constant_z(n).unwrap();
    let idm = act_morphism(&zz, &BzMor::identity(n, 4)).unwrap();
    assert!(idm.same_map(&AbHom::identity(zz.value(4))));
    // Ip_{12→4} ∘ Rp_{12→4}... composite on the larger orbit value is the index
    let r = generator_r_proj(n, 12, 4).unwrap();
    let i = generator_i_proj(n, 12, 4).unwrap();
    let comp = act_morphism(&zz, &r.compose(&i).unwrap()).unwrap();
    assert_eq!(comp.matrix.get(0, 0), &z(3));
    let to_pt = generator_i_proj(n, 6, 1).unwrap();
    let m = act_morphism(&zz, &to_pt).unwrap();
    assert_eq!(m.matrix.get(0, 0), &z(6));
}

fn random_mor(n: u64, a: u64, b: u64, seed: &[i64]) -> BzMor {
    let k = hom_basis(n, a, b).unwrap().len();
    let c: Vec<Int> = (0..k).map(|i| z(seed[i % seed.len()])).collect();
    BzMor::from_coeffs(n, a, b, &c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn act_is_contravariant(ai in 0usize..6, bi in 0usize..6, ci in 0usize..6, s in proptest::collection::vec(-3i64..4, 6)) {
        let n = 12u64;
        let ds = divisors(n);
        let (a, b, c) = (ds[ai], ds[bi], ds[ci]);
        let f = random_mor(n, a, b, &s);
        let g = random_mor(n, b, c, &s[1..]);
        for m in [free_module(&GSet::new(n, vec![2, 3]).unwrap()).unwrap(), quotient(n, 6).unwrap(), ideal(n, 4).unwrap()] {
            let lhs = act_morphism(&m, &g.compose(&f).unwrap()).unwrap();
            let rhs = act_morphism(&m, &f).unwrap().compose(&act_morphism(&m, &g).unwrap());
            prop_assert!(lhs.same_map(&rhs));
        }
    }
}

#[test]
fn kernels_and_cokernels() {
    let n = 12;
    let zz = constant_z(n).unwrap();
    for a in [2u64, 3, 4] {
        let times = MackeyMap::identity(&zz).scale(&Int::from(a));
        let (c, _) = map_cokernel(&times).unwrap();
        c.validate().unwrap();
        assert!(is_isomorphic_cyclic_valued(&c, &constant_mod(n, a).unwrap()).unwrap());
        let q = quotient(n, a).unwrap();
        let comps = divisors(n).into_iter().map(|d| (d, IntMatrix::identity(1).select_rows(&(0..q.value(d).dim()).collect::<Vec<_>>()))).collect();
        let proj = MackeyMap::new(zz.clone(), q, comps).unwrap();
        let (k, inc) = map_kernel(&proj).unwrap();
        k.validate().unwrap();
        inc.validate().unwrap();
        assert_eq!(identify_form_of_z(&k), Some((a, 1)));
        let (im, _) = map_image(&proj).unwrap();
        assert_eq!(identify_quotient(&im), Some(a));
    }
    for (b, c) in [(2u64, 4u64), (2, 12), (3, 12), (4, 12)] {
        let f = multiplication_map(n, b, 1, c).unwrap();
        let (k, _) = map_kernel(&f).unwrap();
        assert!(is_isomorphic_cyclic_valued(&k, &ia_mod_ib(n, b, c).unwrap()).unwrap());
    }
}

#[test]
fn forms_of_z() {
    let n = 60;
    for e in divisors(n) {
        assert_eq!(identify_form_of_z(&ideal(n, e).unwrap()), Some((e, 1)));
    }
    assert_eq!(identify_form_of_z(&constant_z(n).unwrap()), Some((1, 1)));
    for b in divisors(n) {
        for c in divisors(n) {
            let l = lcm(b, c);
            let x = identify_form_of_z(&form_z(n, l, b).unwrap()).unwrap();
            let y = identify_form_of_z(&form_z(n, c, gcd(b, c)).unwrap()).unwrap();
            assert_eq!(x, y);
        }
    }
    assert_eq!(identify_form_of_z(&quotient(n, 2).unwrap()), None);
}

#[test]
fn cyclic_isomorphism_search() {
    assert!(!is_isomorphic_cyclic_valued(&quotient(2, 2).unwrap(), &constant_mod(2, 2).unwrap()).unwrap());
    assert!(is_isomorphic_cyclic_valued(&quotient(12, 6).unwrap(), &quotient(12, 6).unwrap()).unwrap());
    assert!(is_isomorphic_cyclic_valued(&free_module(&GSet::orbit(4, 2)).unwrap(), &constant_z(4).unwrap()).is_err());
    assert_eq!(label(&ideal(12, 4).unwrap()), "I_4");
    assert_eq!(label(&quotient(12, 4).unwrap()), "Z/I_4");
    assert_eq!(label(&ia_mod_ib(12, 2, 12).unwrap()), "I_2/I_12");
    assert_eq!(label(&constant_z(12).unwrap()), "Z");
    assert!(label(&constant_mod(4, 2).unwrap()).starts_with("unidentified"));
}

#[test]
fn annihilators_and_rationalization() {
    let (a, b) = annihilator_decompose(&quotient(12, 12).unwrap(), 4, 3).unwrap();
    assert_eq!(identify_quotient(&a), Some(4));
    assert_eq!(identify_quotient(&b), Some(3));
    let (a, b) = annihilator_decompose(&quotient(45, 15).unwrap(), 1, 15).unwrap();
    assert!(a.is_zero());
    assert_eq!(identify_quotient(&b), Some(15));
    let (p3, _) = annihilator_decompose(&quotient(45, 15).unwrap(), 3, 5).unwrap();
    assert_eq!(identify_quotient(&p3), Some(3));
    assert!(annihilator_decompose(&quotient(12, 6).unwrap(), 2, 2).is_err());
    assert!(annihilator_decompose(&quotient(12, 6).unwrap(), 2, 1).is_err());
    assert!(rationalization_check(&constant_z(12).unwrap()).unwrap());
    assert!(rationalization_check(&quotient(12, 6).unwrap()).unwrap());
    assert!(rationalization_check(&NamedModule::FpSign.build(2).unwrap()).unwrap());
    assert!(rationalization_check(&ideal(30, 6).unwrap()).unwrap());
}

#[test]
fn standard_short_exact_sequence() {
    let n = 60;
    for a in divisors(n) {
        for b in divisors(n) {
            let (g, l) = (gcd(a, b), lcm(a, b));
            let qa = quotient(n, a).unwrap();
            let qb = quotient(n, b).unwrap();
            let (sum, incs, projs) = direct_sum(&[qa, qb]).unwrap();
            sum.validate().unwrap();
            let f = incs[0].compose(&multiplication_map(n, a, a / g, g).unwrap()).add(&incs[1].compose(&multiplication_map(n, b, b / g, g).unwrap()));
            let h = multiplication_map(n, l, l / a, a).unwrap().compose(&projs[0]).sub(&multiplication_map(n, l, l / b, b).unwrap().compose(&projs[1]));
            f.validate().unwrap();
            h.validate().unwrap();
            assert!(map_kernel(&f).unwrap().0.is_zero());
            assert!(map_cokernel(&h).unwrap().0.is_zero());
            assert!(map_homology(&f, &h).unwrap().is_zero());
        }
    }
}

#[test]
fn mackey_hom_groups() {
    let n = 12;
    let hg = mackey_hom_group(&constant_z(n).unwrap(), &quotient(n, 6).unwrap()).unwrap();
    assert_eq!(hg.group(), &cyc(6));
    let f = hg.decode(&[z(1)]);
    f.validate().unwrap();
    assert_eq!(hg.encode(&f), vec![z(1)]);
    let e = mackey_hom_group(&free_module(&GSet::orbit(n, 4)).unwrap(), &ideal(n, 6).unwrap()).unwrap();
    assert_eq!(e.group(), ideal(n, 6).unwrap().value(4));
    let back = mackey_hom_group(&quotient(n, 6).unwrap(), &constant_z(n).unwrap()).unwrap();
    assert!(back.group().is_zero());
}
