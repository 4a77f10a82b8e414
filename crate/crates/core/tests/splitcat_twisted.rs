use salg_core::linalg::LinMap;
use salg_core::splitcat::*;
use salg_core::symplectic::{sqrt_minus_one_involution, t_involution, twisted_group_algebra_std, twisted_s_structure};

fn q3() -> salg_core::azumaya::SStructure {
    twisted_s_structure(&twisted_group_algebra_std(3, 2).unwrap()).unwrap()
}

#[test]
fn q3_symmetry_and_hexagon() {
    let s = q3();
    let a = s.algebra();
    let y = Component::left_regular(a).unwrap();
    let x = Component::right_regular(a).unwrap();
    let e = Component::bimodule(a).unwrap();
    assert!(tau_tilde(&s, &e, &e).unwrap().is_identity());
    for (m, n) in [(&y, &x), (&x, &y), (&y, &y), (&x, &e)] {
        let t = tau_tilde(&s, m, n).unwrap();
        assert!(m.tensor(n).unwrap().is_morphism_to(&n.tensor(m).unwrap(), &t));
    }
    let k = a.field().clone();
    let (m, n, p) = (&y, &x, &y);
    let lhs = tau_tilde(&s, m, &n.tensor(p).unwrap()).unwrap();
    let rhs = LinMap::identity(n.dim(), &k)
        .kron(&tau_tilde(&s, m, p).unwrap())
        .compose(&tau_tilde(&s, m, n).unwrap().kron(&LinMap::identity(p.dim(), &k)));
    assert_eq!(lhs, rhs);
}

#[test]
fn q3_zigzag_end_x_and_box() {
    let s = q3();
    assert_eq!(zigzag_check(&s).unwrap().udim.to_string(), "3");
    let r = end_x_iso(&s).unwrap();
    assert_eq!((r.udeg.to_string(), r.udim.to_string(), r.sign), ("3".into(), "3".into(), 1));
    let y = Component::left_regular(s.algebra()).unwrap();
    let x = Component::right_regular(s.algebra()).unwrap();
    let c = check_box_tensor(&s, &y, &x, 1).unwrap();
    assert_eq!((c.summands, c.invariant_dim), (1, 81));
    let c = check_box_tensor(&s, &y, &y, 1).unwrap();
    assert_eq!((c.summands, c.invariant_dim), (2, 81));
    assert!(uni_char_check(&s, 2).unwrap().iter().all(|c| c.hom_d == c.hom_c));
}

#[test]
fn q5_mod_2_through_sqrt_minus_one() {
    let ta = twisted_group_algebra_std(5, 2).unwrap();
    let s = twisted_s_structure(&ta).unwrap();
    let sigma = sqrt_minus_one_involution(&ta, &s).unwrap();
    let cat = ModMCategory::from_anti_involution(&s, 1, &sigma, 2).unwrap();
    cat.check_invertible().unwrap();
    let one = x_object(s.algebra(), 0).unwrap();
    assert_eq!(cat.hom(&one, &one).unwrap().total, 1);
    let vm = DObject::new(cat.v_minus()).unwrap();
    let h = cat.hom(&one, &vm).unwrap();
    assert_eq!((h.total, h.at(1)), (1, 1));
}

#[test]
fn q3_mod_4_through_t() {
    let ta = twisted_group_algebra_std(3, 2).unwrap();
    let s = twisted_s_structure(&ta).unwrap();
    let t = t_involution(&ta, &s).unwrap();
    assert_eq!((t.u, t.v), ([1, 1], [1, 2]));
    let cat = ModMCategory::from_anti_involution(&s, 2, &t.sigma, 2).unwrap();
    assert_eq!(cat.m(), 4);
    let one = x_object(s.algebra(), 0).unwrap();
    assert_eq!(cat.hom(&one, &one).unwrap().total, 1);
    let vm = DObject::new(cat.v_minus()).unwrap();
    let h = cat.hom(&one, &vm).unwrap();
    assert_eq!((h.total, h.at(1)), (1, 1));
}
