use super::*;
use crate::algebra::examples::quaternions;
use crate::azumaya::{canonical_end_s, enumerate_s_structures};
use crate::scalars::Field;
use crate::tencat::Category;

fn quaternion_s() -> SStructure {
    let ss = enumerate_s_structures(&quaternions()).unwrap();
    ss.into_iter().find(|s| s.degree().to_string() == "2").unwrap()
}

fn basic(a: &Algebra) -> Vec<Component> {
    vec![
        Component::left_regular(a).unwrap(),
        Component::right_regular(a).unwrap(),
        Component::bimodule(a).unwrap(),
        Component::vector(a, 2),
    ]
}

#[test]
fn a_nm_dimensions() {
    let h = quaternions();
    assert_eq!(a_nm(&h, 0, 0).unwrap().dim(), 1);
    assert_eq!(a_nm(&h, 1, 1).unwrap().dim(), 16);
    assert_eq!(a_nm(&h, 1, 0).unwrap().dim(), 4);
    assert!(matches!(a_nm(&h, 6, 5), Err(Error::Bound { .. })));
}

#[test]
fn twisted_symmetry_is_linear_involutive_and_trivial_on_e() {
    let s = quaternion_s();
    let objs = basic(s.algebra());
    for m in &objs {
        for n in &objs {
            let t = tau_tilde(&s, m, n).unwrap();
            let (mn, nm) = (m.tensor(n).unwrap(), n.tensor(m).unwrap());
            assert!(mn.is_morphism_to(&nm, &t), "{:?} ⊗ {:?}", m.bidegree(), n.bidegree());
            let back = tau_tilde(&s, n, m).unwrap();
            assert!(back.compose(&t).is_identity());
        }
    }
    let e = Component::bimodule(s.algebra()).unwrap();
    assert!(tau_tilde(&s, &e, &e).unwrap().is_identity());
    let one = Component::vector(s.algebra(), 1);
    assert!(tau_tilde(&s, &one, &objs[0]).unwrap().is_identity());
}

#[test]
fn hexagons_on_all_triples() {
    let s = quaternion_s();
    let objs: Vec<Component> = basic(s.algebra()).into_iter().take(3).collect();
    let k = s.algebra().field().clone();
    for m in &objs {
        for n in &objs {
            for p in &objs {
                let np = n.tensor(p).unwrap();
                let lhs = tau_tilde(&s, m, &np).unwrap();
                let ip = LinMap::identity(p.dim(), &k);
                let in_ = LinMap::identity(n.dim(), &k);
                let rhs = in_.kron(&tau_tilde(&s, m, p).unwrap()).compose(&tau_tilde(&s, m, n).unwrap().kron(&ip));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn biset_pi_matches_structure_and_operators() {
    let s = quaternion_s();
    let a = s.algebra();
    let x = Biset::new(2, 0);
    let swap = BisetAut { plus: vec![1, 0], minus: vec![] };
    assert_eq!(biset_pi(&s, x, &swap).unwrap(), *s.pi());
    assert_eq!(biset_pi(&s, x, &BisetAut::identity(x)).unwrap(), *a.tensor(a).unwrap().unit());
    for (x, auts) in [(Biset::new(3, 0), 6), (Biset::new(1, 2), 2), (Biset::new(0, 3), 6)] {
        let r = check_biset_pi(&s, x, 64, 7).unwrap();
        assert_eq!(r.automorphisms, auts);
    }
    // the operator form of π on a module agrees with the element
    let c = Component::right_regular(a).unwrap().tensor(&Component::right_regular(a).unwrap()).unwrap();
    let c = c.tensor(&Component::right_regular(a).unwrap()).unwrap();
    let x = Biset::new(0, 3);
    let k = a.field().clone();
    for g in x.automorphisms() {
        let elem = biset_pi(&s, x, &g).unwrap();
        let word = coxeter_word(&g.minus);
        for v in 0..c.dim() {
            let e = SVec::unit(v, &k);
            assert_eq!(c.act_elem(&elem, &e), c.apply_pi_word(&s, 0, &word, &e));
        }
    }
}

#[test]
fn bigraded_objects_tensor_and_symmetry() {
    let s = quaternion_s();
    let a = s.algebra();
    let mixed = BigradedObject::from_parts(vec![Component::vector(a, 1), Component::left_regular(a).unwrap()]).unwrap();
    let e = BigradedObject::homogeneous(Component::bimodule(a).unwrap());
    let (prod, t) = dtilde_tensor(&s, &mixed, &e).unwrap();
    assert_eq!(prod.dim(), 5 * 4);
    assert_eq!(prod.parts().keys().copied().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
    let back = BigradedObject::symmetry(&s, &e, &mixed).unwrap();
    assert!(back.compose(&t).is_identity());
    let one = BigradedObject::homogeneous(Component::vector(a, 1));
    let (p1, t1) = dtilde_tensor(&s, &one, &mixed).unwrap();
    assert_eq!(p1.dim(), mixed.dim());
    assert!(t1.is_identity());
}

#[test]
fn box_product_agrees_with_tensor() {
    let s = quaternion_s();
    let objs: Vec<Component> = basic(s.algebra()).into_iter().take(3).collect();
    for m in &objs {
        for n in &objs {
            if m.factors() + n.factors() > 3 {
                assert!(matches!(box_tensor(&s, m, n), Err(Error::Bound { .. })));
                continue;
            }
            let r = check_box_tensor(&s, m, n, 3).unwrap();
            assert_eq!(r.invariant_dim, r.tensor_dim);
        }
    }
    let y = &objs[0];
    let b = box_tensor(&s, y, y).unwrap();
    assert_eq!((b.gammas.len(), b.invariants.len()), (2, 16));
    let one = Component::vector(s.algebra(), 1);
    assert_eq!(box_tensor(&s, y, &one).unwrap().gammas.len(), 1);
}

#[test]
fn zigzag_and_end_x_for_quaternions_and_matrices() {
    let s = quaternion_s();
    let z = zigzag_check(&s).unwrap();
    assert_eq!(z.udim.to_string(), "2");
    let r = end_x_iso(&s).unwrap();
    assert_eq!(r.sign, 1);
    x_power_iso(s.algebra()).unwrap();
    let neg = s.negated();
    assert_eq!(end_x_iso(&neg).unwrap().udim.to_string(), "-2");

    let k = Field::rationals();
    let m2 = canonical_end_s(&Category::vec(&k).trivial(2)).unwrap();
    assert_eq!(zigzag_check(&m2).unwrap().udim.to_string(), "2");
    assert_eq!(end_x_iso(&m2).unwrap().sign, 1);
}

#[test]
fn homs_in_d() {
    let s = quaternion_s();
    let a = s.algebra();
    let x = x_object(a, 1).unwrap();
    let one = x_object(a, 0).unwrap();
    assert_eq!(d_hom(&x, &x).len(), 4);
    assert_eq!(d_hom(&one, &one).len(), 1);
    assert!(d_hom(&one, &x).is_empty());
    let e = DObject::new(&Component::bimodule(a).unwrap()).unwrap();
    assert_eq!((e.degree(), e.dim()), (0, 1));
    let xy = x.tensor(&x_object(a, -1).unwrap()).unwrap();
    assert_eq!(xy.dim(), 4);
    let cases = uni_char_check(&s, 11).unwrap();
    assert_eq!(cases.len(), 4);
    assert!(cases.iter().all(|c| c.hom_d == c.hom_c));
}

#[test]
fn split_case_for_k2() {
    let k = Field::rationals();
    let r = split_case_check(&Category::vec(&k).trivial(2), 5).unwrap();
    assert_eq!((r.v1_sign, r.v_minus_sign, r.v1_end_dim), (1, 1, 1));
    assert_eq!(r.theta.len(), 9);
}

#[test]
fn mod_m_ladders() {
    let k = Field::rationals();
    // A = k, V = 1: every level but ℓ = 0 vanishes by degree
    let s1 = canonical_end_s(&Category::vec(&k).trivial(1)).unwrap();
    let a1 = s1.algebra().clone();
    let v = Component::new(&a1, 1, 0, 1, vec![vec![LinMap::identity(1, &k)]]).unwrap();
    let cat = ModMCategory::new(&s1, 1, v, 3).unwrap();
    let one = x_object(&a1, 0).unwrap();
    let h = cat.hom(&one, &one).unwrap();
    assert_eq!((h.total, h.at(0)), (1, 1));
    // trivializing the unit itself never stabilizes
    let unit = ModMCategory::new(&s1, 0, Component::vector(&a1, 1), 3).unwrap();
    assert!(matches!(unit.hom(&one, &one), Err(Error::Bound { .. })));

    // ℍ ⊗ ℍ ≅ End(ℍ) through conjugation
    let s = quaternion_s();
    let conj = LinMap::from_fn(4, 4, |i| SVec::single(i, if i == 0 { k.one() } else { -k.one() }));
    let cat = ModMCategory::from_anti_involution(&s, 1, &conj, 2).unwrap();
    cat.check_invertible().unwrap();
    let one = x_object(s.algebra(), 0).unwrap();
    let end1 = cat.hom(&one, &one).unwrap();
    assert_eq!((end1.total, end1.at(1), end1.at(-1)), (1, 0, 0));
    let vm = DObject::new(cat.v_minus()).unwrap();
    let h = cat.hom(&one, &vm).unwrap();
    assert_eq!((h.total, h.at(1)), (1, 1));
    assert!(cat.end_closes(&x_object(s.algebra(), 1).unwrap()).unwrap());
}
