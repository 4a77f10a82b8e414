//! Verification suites. Each suite turns one instance into one report entry.

use crate::instance::Instance;
use crate::report::Report;
use salg_core::algebra::{action_iso_check, noether_skolem_descent, separability_section, ActionIso};
use salg_core::azumaya::{
    anti_involution_split, azumaya_check, check_coxeter_relations, derived_identities, enumerate_s_structures, eta,
    eta_tilde_square_class, pi_at, SStructure,
};
use salg_core::error::{Error, Result};
use salg_core::linalg::{LinMap, SVec};
use salg_core::scalars::FieldElem;
use salg_core::splitcat::{
    check_box_tensor, d_hom, end_x_iso, split_case_check, tau_tilde, uni_char_check, x_object, zigzag_check, Component,
    ModMCategory,
};
use salg_core::symplectic::{
    char_identity_checks, oscillator_sign, schrodinger_module, sqrt_minus_one, sqrt_minus_one_involution,
    t_involution, weil_lift, TwistedGroupAlgebra,
};
use salg_core::tencat::{Category, CategorySpec};
use serde_json::{json, Value};

pub const SUITES: [&str; 19] = [
    "s-structure",
    "braid",
    "dim-deg",
    "azumaya",
    "enumerate",
    "separable",
    "eta",
    "anti-involution",
    "oscillator",
    "weil",
    "noether-skolem",
    "zigzag",
    "endx",
    "hexagon",
    "boxiso",
    "dhom",
    "splitcase",
    "modm",
    "all",
];

/// Ladder cap for `ℤ/m` homs.
pub const MODM_CAP: usize = 2;

pub fn is_suite(name: &str) -> bool {
    SUITES.contains(&name)
}

/// Whether `suite` is defined on `inst`; `all` ignores the instance.
pub fn applies(suite: &str, inst: &Instance) -> bool {
    let twisted_d2 = matches!(inst, Instance::Twisted { d: 2, .. });
    let twisted = matches!(inst, Instance::Twisted { .. });
    let named = |n: &str| matches!(inst, Instance::Named { name, .. } if name == n);
    match suite {
        "eta" => inst.is_example(),
        "anti-involution" | "modm" => named("quaternion") || named("m2") || twisted_d2,
        "oscillator" => twisted,
        "weil" | "noether-skolem" => twisted_d2,
        "splitcase" => named("m2"),
        "all" => true,
        s => is_suite(s) && !inst.is_example(),
    }
}

/// The check id: suite and instance label.
pub fn check_id(suite: &str, inst: &Instance) -> String {
    format!("{suite}/{}", inst.label())
}

/// Runs one suite on one instance. Construction errors become failing entries with a witness.
pub fn run(suite: &str, inst: &Instance, seed: u64) -> Report {
    let mut r = Report::new(suite, check_id(suite, inst), inst.params());
    if suite_uses_seed(suite) {
        r.params.insert("seed".into(), seed.to_string());
    }
    if let Err(e) = dispatch(suite, inst, seed, &mut r) {
        r.fail(e.to_string());
    }
    r
}

fn suite_uses_seed(suite: &str) -> bool {
    matches!(suite, "hexagon" | "boxiso" | "dhom" | "splitcase" | "anti-involution")
}

fn dispatch(suite: &str, inst: &Instance, seed: u64, r: &mut Report) -> Result<()> {
    match suite {
        "s-structure" => s_structure(inst, r),
        "braid" => braid(inst, r),
        "dim-deg" => dim_deg(inst, r),
        "azumaya" => azumaya(inst, r),
        "enumerate" => enumerate(inst, r),
        "separable" => separable(inst, r),
        "eta" => eta_suite(inst, r),
        "anti-involution" => anti_involution(inst, seed, r),
        "oscillator" => oscillator(inst, r),
        "weil" => weil(inst, r),
        "noether-skolem" => noether_skolem(inst, r),
        "zigzag" => zigzag(inst, r),
        "endx" => endx(inst, r),
        "hexagon" => hexagon(inst, seed, r),
        "boxiso" => boxiso(inst, seed, r),
        "dhom" => dhom(inst, seed, r),
        "splitcase" => splitcase(seed, r),
        "modm" => modm(inst, r),
        _ => Err(Error::Invalid(format!("{suite} is not a single-instance suite"))),
    }
}

fn elem(x: &FieldElem) -> Value {
    Value::String(x.to_string())
}

fn s_structure(inst: &Instance, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let a = s.algebra();
    r.set("dim", a.dim()).set("degree", elem(s.degree())).set("coverage", format!("{:?}", s.coverage()).to_lowercase());
    r.set("field", a.field().name());
    Ok(())
}

fn braid(inst: &Instance, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let d = derived_identities(&s);
    r.set("pi_squared_is_one", d.pi_squared_is_one).set("tau_fixes_pi", d.tau_fixes_pi);
    r.require(d.pi_squared_is_one, || "π² ≠ 1".into());
    r.require(d.tau_fixes_pi, || "τ(π) ≠ π".into());
    let power = s.algebra().power(3)?;
    let pis: Vec<SVec> = (0..2).map(|i| pi_at(&s, &power, 3, i)).collect();
    let braid = check_coxeter_relations(&power, &pis);
    r.set("braid_relation", braid.is_ok());
    if let Err(e) = braid {
        r.fail(e.to_string());
    }
    Ok(())
}

fn dim_deg(inst: &Instance, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let udim = s.algebra().carrier().categorical_dimension();
    let udeg = s.degree();
    r.set("udim", elem(&udim)).set("udeg", elem(udeg));
    r.require(udim == udeg * udeg, || format!("udim {udim} ≠ udeg² = {}", udeg * udeg));
    Ok(())
}

fn azumaya(inst: &Instance, r: &mut Report) -> Result<()> {
    let a = inst.algebra()?;
    let s = enumerate_s_structures(&a).ok().map(crate::instance::pick_positive).transpose()?;
    let rep = azumaya_check(&a, s.as_ref())?;
    r.set("dim", rep.dim).set("rank", rep.rank).set("bijective", rep.bijective);
    if let Some(p) = rep.phi_invertible() {
        r.set("phi_invertible", p);
        r.require(p, || format!("ρ_π has rank {}", rep.phi_rank.unwrap_or(0)));
    }
    if let Some(p) = rep.phi_agrees_with_action {
        r.set("phi_agrees_with_action", p);
        r.require(p, || "ρ_π differs from the action map".into());
    }
    r.require(rep.bijective, || format!("A ⊗ A^op → End(A) has rank {} of {}", rep.rank, rep.dim * rep.dim));
    Ok(())
}

fn enumerate(inst: &Instance, r: &mut Report) -> Result<()> {
    let ss = enumerate_s_structures(&inst.algebra()?)?;
    let mut degrees: Vec<String> = ss.iter().map(|s| s.degree().to_string()).collect();
    degrees.sort();
    r.set("count", ss.len()).set("degrees", degrees);
    let pair = ss.len() == 2 && ss[0].negated().same_as(&ss[1]);
    r.require(pair, || format!("expected a ± pair, found {} structures", ss.len()));
    Ok(())
}

fn separable(inst: &Instance, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let a = s.algebra();
    let inv = s.degree().inv().ok_or_else(|| Error::Invalid("udeg = 0 has no separability section".into()))?;
    separability_section(a, &a.unit().scale(&inv), s.pi())?;
    r.set("u", format!("{inv}·1"));
    Ok(())
}

fn eta_suite(inst: &Instance, r: &mut Report) -> Result<()> {
    let a = inst.algebra()?;
    let e = eta(&a)?;
    r.set("grade", e.grade_label.clone()).set("line_sign", e.line_sign).set("c", elem(&e.c));
    r.set("c_is_square", e.c_is_square).set("trivial", e.is_trivial());
    if let Some(class) = eta_tilde_square_class(&e) {
        r.set("square_class", class.to_string());
    }
    let Instance::Example { name, .. } = inst else { unreachable!("eta runs on examples") };
    let ok = match name.as_str() {
        "split" => e.is_trivial(),
        "clifford-super" => e.grade != 0 && e.line_sign == -1,
        "klein" => a.category().decode(e.grade) == [1, 1] && e.line_sign == 1,
        "clifford-rational" => {
            e.grade == 0 && !e.c_is_square && eta_tilde_square_class(&e).is_some_and(|c| c < 0.into())
        }
        _ => false,
    };
    r.require(ok, || format!("unexpected η: grade {}, sign {}, c = {}", e.grade_label, e.line_sign, e.c));
    Ok(())
}

fn anti_involution(inst: &Instance, seed: u64, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let k = s.algebra().field().clone();
    let (structure, sigma) = match inst {
        Instance::Named { name, .. } if name == "quaternion" => {
            r.set("sigma", "conjugation");
            (s.clone(), LinMap::from_fn(4, 4, |i| SVec::single(i, if i == 0 { k.one() } else { -k.one() })))
        }
        Instance::Named { .. } => {
            r.set("sigma", "transpose");
            (s.clone(), LinMap::from_fn(4, 4, |ij| SVec::unit((ij % 2) * 2 + ij / 2, &k)))
        }
        _ => {
            let t = inst.twisted_algebra()?.expect("twisted");
            match sqrt_minus_one(t.space().field()) {
                Some(i) => {
                    r.set("sigma", format!("[x] -> [{i}x]"));
                    (s.clone(), sqrt_minus_one_involution(&t, &s)?)
                }
                None => {
                    let ti = t_involution(&t, &s)?;
                    r.set("sigma", "T on A⊗A").set("u", ti.u.to_vec()).set("v", ti.v.to_vec());
                    r.set("form_negated", true);
                    (ti.structure, ti.sigma)
                }
            }
        }
    };
    let sp = anti_involution_split(&structure, &sigma, seed)?;
    r.set("split_dim", structure.algebra().dim()).set("involutive", sp.involutive).set("bijective", sp.bijective);
    r.set("eps_sign", sp.eps_sign.map(Value::from).unwrap_or(Value::Null));
    r.set("pi_coverage", format!("{:?}", sp.pi_coverage).to_lowercase());
    r.require(sp.is_s_split(), || format!("not S-split: {sp:?}"));
    Ok(())
}

fn twisted(inst: &Instance) -> Result<TwistedGroupAlgebra> {
    inst.twisted_algebra()?.ok_or_else(|| Error::Invalid("a twisted group algebra is required".into()))
}

fn oscillator(inst: &Instance, r: &mut Report) -> Result<()> {
    let t = twisted(inst)?;
    let s = salg_core::symplectic::twisted_s_structure(&t)?;
    let w = schrodinger_module(&t)?;
    let a = t.algebra();
    let e = &w.idempotent;
    let idem = a.mul(e, e) == *e;
    let iso = action_iso_check(&w.module) == ActionIso::Iso;
    r.set("idempotent", idem).set("dim_w", w.dim()).set("action_iso", iso);
    r.require(idem, || "e² ≠ e".into());
    r.require(w.dim() == t.t_half(), || format!("dim W = {} ≠ q^(d/2) = {}", w.dim(), t.t_half()));
    r.require(iso, || "A → End(W) is not an isomorphism".into());
    r.set("sign", oscillator_sign(&s, &w.module)?);
    Ok(())
}

fn weil(inst: &Instance, r: &mut Report) -> Result<()> {
    let t = twisted(inst)?;
    let w = schrodinger_module(&t)?;
    let lift = weil_lift(&t, &w)?;
    let ci = char_identity_checks(&lift, t.field())?;
    r.set("group_order", lift.group.order()).set("genuine", ci.genuine);
    r.set("chi", ci.rows.iter().map(|row| row.chi.clone()).collect::<Vec<_>>());
    r.set("fixed_points", ci.rows.iter().map(|row| row.fixed_points).collect::<Vec<_>>());
    r.require(ci.products_hold(), || {
        let bad = ci.rows.iter().find(|row| !row.product_ok).expect("a failing row");
        format!("χ(g)χ(g⁻¹) ≠ |Fix g| at element {}", bad.element)
    });
    match ci.fourth_powers_hold() {
        Some(ok) => {
            r.set("fourth_powers", ok);
            r.require(ok, || "χ(g)⁴ ≠ |Fix g|²".into());
        }
        None => {
            r.set("fourth_powers", Value::Null);
        }
    }
    Ok(())
}

/// A nontrivial one-dimensional representation with values in the roots of unity of `k`.
fn nontrivial_character(cat: &Category) -> Result<salg_core::tencat::Obj> {
    let g = cat.group().expect("Rep category");
    let k = cat.field();
    let n = k.conductor().unwrap_or(2) as usize;
    let z = k.root_of_unity(n as u64).ok_or_else(|| Error::MissingScalar("a root of unity".into()))?;
    let gens = g.generators().len();
    for code in 1..n.pow(gens as u32) {
        let mats = (0..gens).map(|i| LinMap::identity(1, k).scale(&z.pow(((code / n.pow(i as u32)) % n) as u64))).collect();
        if let Ok(o) = cat.rep_from_matrices(mats) {
            return Ok(o);
        }
    }
    Err(Error::Undetermined("no nontrivial character over the scalar field".into()))
}

fn noether_skolem(inst: &Instance, r: &mut Report) -> Result<()> {
    let t = twisted(inst)?;
    let k = t.field().clone();
    let w = schrodinger_module(&t)?;
    let lift = weil_lift(&t, &w)?;
    let wrep = lift.representation(&k)?;
    let cat = Category::new(CategorySpec::Rep(lift.group.clone()), k.clone())?;
    let omega = nontrivial_character(&cat)?;
    let v = omega.tensor(&wrep)?;
    let n = w.dim();
    let d = noether_skolem_descent(&v, &wrep, &LinMap::identity(n * n, &k))?;
    let expected: Vec<FieldElem> =
        (0..lift.group.order()).map(|e| omega.element_action(e).expect("rep").entry(0, 0).cloned().expect("nonzero")).collect();
    r.set("omega_on_generators", (0..lift.group.generators().len()).map(|i| elem(&expected[lift.group.generator_index(i)])).collect::<Vec<_>>());
    r.set("recovered_equals_omega", d.character == expected);
    r.require(d.character == expected, || "recovered character differs from ω".into());
    Ok(())
}

fn zigzag(inst: &Instance, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let z = zigzag_check(&s)?;
    r.set("udim_x", elem(&z.udim)).set("udeg", elem(&z.udeg));
    Ok(())
}

fn endx(inst: &Instance, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let e = end_x_iso(&s)?;
    r.set("udeg", elem(&e.udeg)).set("udim_x", elem(&e.udim)).set("sign", e.sign);
    Ok(())
}

/// `Y` in `(1, 0)`, `X` in `(0, 1)` and `E` in `(1, 1)`.
fn basic_components(s: &SStructure) -> Result<Vec<(&'static str, Component)>> {
    let a = s.algebra();
    Ok(vec![("Y", Component::left_regular(a)?), ("X", Component::right_regular(a)?), ("E", Component::bimodule(a)?)])
}

fn hexagon(inst: &Instance, seed: u64, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let k = s.algebra().field().clone();
    let objs = basic_components(&s)?;
    let mut pairs = 0;
    for (mn, m) in &objs {
        for (nn, n) in &objs {
            if m.factors() + n.factors() > 3 {
                continue;
            }
            let t = tau_tilde(&s, m, n)?;
            let ok = m.tensor(n)?.is_morphism_to(&n.tensor(m)?, &t);
            r.require(ok, || format!("τ̃({mn}, {nn}) is not A_x-linear"));
            let back = tau_tilde(&s, n, m)?;
            r.require(back.compose(&t).is_identity(), || format!("τ̃({nn}, {mn}) τ̃({mn}, {nn}) ≠ id"));
            pairs += 1;
        }
    }
    let e = &objs[2].1;
    r.require(tau_tilde(&s, e, e)?.is_identity(), || "τ̃ is not trivial on E ⊗ E".into());
    // designated triples: every triple of Y and X, plus one seeded triple with a single E
    let mut triples: Vec<[usize; 3]> = (0..8).map(|c| [c >> 2 & 1, c >> 1 & 1, c & 1]).collect();
    let slot = (seed % 3) as usize;
    let mut bits = seed / 3;
    let mut extra = [2usize; 3];
    for (i, e) in extra.iter_mut().enumerate() {
        if i != slot {
            *e = (bits % 2) as usize;
            bits /= 2;
        }
    }
    triples.push(extra);
    for t in &triples {
        let (m, n, p) = (&objs[t[0]].1, &objs[t[1]].1, &objs[t[2]].1);
        let lhs = tau_tilde(&s, m, &n.tensor(p)?)?;
        let rhs = LinMap::identity(n.dim(), &k)
            .kron(&tau_tilde(&s, m, p)?)
            .compose(&tau_tilde(&s, m, n)?.kron(&LinMap::identity(p.dim(), &k)));
        let name = |i: usize| objs[i].0;
        r.require(lhs == rhs, || format!("hexagon fails on ({}, {}, {})", name(t[0]), name(t[1]), name(t[2])));
    }
    let label = |t: &[usize; 3]| t.iter().map(|&i| objs[i].0).collect::<String>();
    r.set("pairs", pairs).set("triples", triples.iter().map(label).collect::<Vec<_>>());
    Ok(())
}

fn boxiso(inst: &Instance, seed: u64, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let objs = basic_components(&s)?;
    let mut checked = Vec::new();
    for (mn, m) in &objs {
        for (nn, n) in &objs {
            if m.factors() + n.factors() > 3 {
                continue;
            }
            let c = check_box_tensor(&s, m, n, seed)?;
            r.require(c.invariant_dim == c.tensor_dim, || format!("({mn}, {nn}): invariants {} vs {}", c.invariant_dim, c.tensor_dim));
            checked.push(json!({"pair": format!("{mn}{nn}"), "summands": c.summands, "dim": c.tensor_dim}));
        }
    }
    r.set("pairs", checked);
    Ok(())
}

fn dhom(inst: &Instance, seed: u64, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let a = s.algebra();
    let x = x_object(a, 1)?;
    let y = x_object(a, -1)?;
    let one = x_object(a, 0)?;
    let vanish = d_hom(&one, &x).is_empty() && d_hom(&x, &one).is_empty() && d_hom(&y, &x).is_empty();
    r.require(vanish, || "Hom between different degrees is nonzero".into());
    let end_x = d_hom(&x, &x).len();
    r.require(end_x == a.dim(), || format!("dim End(X) = {end_x} ≠ dim A = {}", a.dim()));
    let cases = uni_char_check(&s, seed)?;
    for c in &cases {
        r.require(c.hom_d == c.hom_c, || format!("r = {}, s = {}: Hom_D {} ≠ {}", c.r, c.s, c.hom_d, c.hom_c));
    }
    r.set("end_x", end_x);
    r.set("cases", cases.iter().map(|c| json!({"r": c.r, "s": c.s, "dim_m": c.dim_m, "dim_n": c.dim_n, "hom": c.hom_d})).collect::<Vec<_>>());
    Ok(())
}

fn splitcase(seed: u64, r: &mut Report) -> Result<()> {
    let k = salg_core::scalars::Field::rationals();
    let rep = split_case_check(&Category::vec(&k).trivial(2), seed)?;
    r.set("v1_sign", rep.v1_sign).set("v_minus_sign", rep.v_minus_sign).set("v1_end_dim", rep.v1_end_dim);
    r.require(rep.v1_sign == 1, || format!("V₁ has sign {}", rep.v1_sign));
    r.set(
        "theta",
        rep.theta
            .iter()
            .map(|t| json!({"degrees": [t.degree_m, t.degree_n], "dims": [t.dim_m, t.dim_n], "hom_d": t.hom_d, "hom_graded": t.hom_graded}))
            .collect::<Vec<_>>(),
    );
    Ok(())
}

fn modm(inst: &Instance, r: &mut Report) -> Result<()> {
    let s = inst.structure()?;
    let a = s.algebra();
    let k = a.field().clone();
    let cat = match inst {
        Instance::Named { name, .. } if name == "quaternion" => {
            let conj = LinMap::from_fn(4, 4, |i| SVec::single(i, if i == 0 { k.one() } else { -k.one() }));
            ModMCategory::from_anti_involution(&s, 1, &conj, MODM_CAP)?
        }
        Instance::Named { .. } => {
            let v = Component::new(a, 1, 0, 2, vec![(0..4).map(|ij| LinMap::from_fn(2, 2, |c| if c == ij % 2 { SVec::unit(ij / 2, &k) } else { SVec::new() })).collect()])?;
            ModMCategory::new(&s, 1, v, MODM_CAP)?
        }
        _ => {
            let t = twisted(inst)?;
            match sqrt_minus_one(t.space().field()) {
                Some(_) => ModMCategory::from_anti_involution(&s, 1, &sqrt_minus_one_involution(&t, &s)?, MODM_CAP)?,
                None => ModMCategory::from_anti_involution(&s, 2, &t_involution(&t, &s)?.sigma, MODM_CAP)?,
            }
        }
    };
    let one = x_object(a, 0)?;
    let vm = salg_core::splitcat::DObject::new(cat.v_minus())?;
    let end1 = cat.hom(&one, &one)?;
    let to_v = cat.hom(&one, &vm)?;
    r.set("m", cat.m()).set("cap", MODM_CAP).set("end_1", end1.total).set("hom_1_v", to_v.total);
    r.set("hom_1_v_levels", to_v.levels.iter().map(|(l, d)| json!([l, d])).collect::<Vec<_>>());
    r.require(end1.total == 1, || format!("dim End(1) = {}", end1.total));
    r.require(to_v.total == 1 && to_v.at(1) == 1, || format!("Hom(1, V) levels {:?}", to_v.levels));
    Ok(())
}

/// The standard matrix run by `all`: every suite on the instances it is stated for.
pub fn full_plan() -> Vec<(&'static str, Instance)> {
    let q = Instance::named("quaternion");
    let m2 = Instance::named("m2");
    let t = Instance::twisted;
    let mut plan = Vec::new();
    let mut add = |suite: &'static str, insts: Vec<Instance>| plan.extend(insts.into_iter().map(|i| (suite, i)));
    add("s-structure", vec![q.clone(), m2.clone(), t(3, 2), t(5, 2), t(7, 2)]);
    add("braid", vec![q.clone(), t(3, 2)]);
    add("dim-deg", vec![q.clone(), t(3, 2), t(5, 2)]);
    add("azumaya", vec![q.clone(), t(3, 2)]);
    add("enumerate", vec![m2.clone(), q.clone(), t(3, 2)]);
    add("separable", vec![q.clone(), m2.clone(), t(3, 2), t(5, 2), t(7, 2)]);
    add("eta", crate::instance::EXAMPLES.iter().map(|e| Instance::example(e)).collect());
    add("anti-involution", vec![q.clone(), t(5, 2), t(3, 2)]);
    add("oscillator", vec![t(3, 2), t(5, 2)]);
    add("weil", vec![t(3, 2)]);
    add("noether-skolem", vec![t(3, 2)]);
    for s in ["zigzag", "endx", "hexagon", "boxiso", "dhom"] {
        add(s, vec![q.clone(), t(3, 2)]);
    }
    add("splitcase", vec![m2.clone()]);
    add("modm", vec![q, m2, t(5, 2), t(3, 2)]);
    plan
}

/// Runs a plan on the current rayon pool and returns the entries sorted by check id.
pub fn run_plan(plan: &[(&str, Instance)], seed: u64, timing: bool) -> Vec<Report> {
    use rayon::prelude::*;
    let mut out: Vec<Report> = plan
        .par_iter()
        .map(|(suite, inst)| {
            let start = std::time::Instant::now();
            let mut r = run(suite, inst, seed);
            if timing {
                r.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            r
        })
        .collect();
    out.sort_by(|a, b| a.check.cmp(&b.check));
    out
}
