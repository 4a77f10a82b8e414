use super::TwistedGroupAlgebra;
use crate::algebra::{action_iso_check, ActionIso, Module};
use crate::azumaya::SStructure;
use crate::error::{invalid, verification, Error, Result};
use crate::linalg::{kernel_of_rows, Acc, LinMap, SVec};
use crate::scalars::{nth_root, FieldElem};
use crate::tencat::{sl2_group, Category, CategorySpec, FiniteGroup, Obj};
use rayon::prelude::*;

/// The module `W = A·e` for the Lagrangian idempotent `e`.
#[derive(Debug, Clone)]
pub struct WeilData {
    pub lagrangian: Vec<usize>,
    pub idempotent: SVec,
    /// `w_c = [c]·e` for `c` in the complementary Lagrangian, as elements of `A`.
    pub basis: Vec<SVec>,
    pub complement: Vec<usize>,
    pub module: Module,
}

impl WeilData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v ∈ A·e` in the basis `w_c`.
    pub fn coordinates(&self, v: &SVec) -> Result<SVec> {
        let mut out = Vec::new();
        for (i, (&c, w)) in self.complement.iter().zip(&self.basis).enumerate() {
            if let Some(x) = v.get(c) {
                let lead = w.get(c).expect("w_c is supported at c");
                out.push((i, x * &lead.inv().expect("nonzero")));
            }
        }
        let out = SVec::from_pairs(out);
        let mut acc = Acc::default();
        for (i, x) in out.iter() {
            acc.add_scaled(x, &self.basis[*i]);
        }
        if acc.finish() != *v {
            return Err(verification("Schrödinger module", "coordinates", "vector does not lie in A·e"));
        }
        Ok(out)
    }
}

pub fn schrodinger_module(a: &TwistedGroupAlgebra) -> Result<WeilData> {
    let alg = a.algebra();
    let sp = a.space();
    let k = a.field().clone();
    let lagrangian = sp.lagrangian();
    let scale = k.from_int(lagrangian.len() as i64).inv().expect("nonzero");
    let e = SVec::from_pairs(lagrangian.iter().map(|&b| (b, scale.clone())));
    if alg.mul(&e, &e) != e {
        return Err(verification("Schrödinger module", "e", "e² ≠ e"));
    }
    let rank = alg.right_mul(&e).rank();
    if rank != a.t_half() {
        return Err(verification("Schrödinger module", "dim W", format!("A·e has dimension {rank}, expected {}", a.t_half())));
    }
    let complement = sp.co_lagrangian();
    let basis: Vec<SVec> = complement.iter().map(|&c| alg.mul(&alg.basis(c), &e)).collect();
    let mut data = WeilData {
        lagrangian,
        idempotent: e,
        basis,
        complement,
        module: Module::regular(alg),
    };
    let m = data.dim();
    let action = (0..alg.dim())
        .into_par_iter()
        .map(|x| {
            let cols = data.basis.iter().map(|w| data.coordinates(&alg.mul(&alg.basis(x), w))).collect::<Result<Vec<_>>>()?;
            Ok(LinMap { rows: m, cols })
        })
        .collect::<Result<Vec<_>>>()?;
    data.module = Module::new(alg.clone(), Category::vec(&k).trivial(m), action)?;
    match action_iso_check(&data.module) {
        ActionIso::Iso => Ok(data),
        other => Err(verification("Schrödinger module", "A → End(W)", format!("{other:?}"))),
    }
}

/// `s` such that the canonical structure of `End(W)` pulls back to `s·(π, ε)` along the action.
pub fn oscillator_sign(s: &SStructure, w: &Module) -> Result<i8> {
    let a = s.algebra();
    let n = a.dim();
    let m = w.dim();
    let cat = a.category();
    let k = a.field().clone();
    let wg = |i: usize| w.carrier().grade(i);
    let signed = |sg: i8, x: FieldElem| if sg < 0 { -x } else { x };
    let supertrace = |f: &LinMap| {
        (0..m).fold(k.zero(), |acc, i| match f.cols[i].get(i) {
            Some(c) => acc + &signed(cat.beta(wg(i), wg(i)), c.clone()),
            None => acc,
        })
    };
    let traces: Vec<FieldElem> = (0..n).map(|x| supertrace(&w.action()[x])).collect();
    let eps_sign = [1i8, -1].into_iter().find(|&sg| (0..n).all(|x| traces[x] == signed(sg, s.eps_of(&a.basis(x)))));
    let Some(sg) = eps_sign else {
        return Err(verification("oscillator sign", "ε", "trace on W is not ±ε"));
    };
    let ok = (0..m * m).into_par_iter().all(|ij| {
        let (i, j) = (ij / m, ij % m);
        let mut acc = Acc::default();
        for (pq, c) in s.pi().iter() {
            let (p, q) = (pq / n, pq % n);
            let fi = &w.action()[p].cols[i];
            let gj = &w.action()[q].cols[j];
            let coef = signed(cat.beta(a.grade(q), wg(i)), c.clone());
            for (r, x) in fi.iter() {
                for (t, y) in gj.iter() {
                    acc.add(r * m + t, &(&coef * &(x * y)));
                }
            }
        }
        acc.finish() == SVec::single(j * m + i, signed(sg * cat.beta(wg(i), wg(j)), k.one()))
    });
    if !ok {
        return Err(verification("oscillator sign", "π", "π does not act on W ⊗ W as the signed symmetry"));
    }
    Ok(sg)
}

/// Solves `R·M_i = N_i·R` for square `R`.
fn intertwiners(pairs: &[(LinMap, LinMap)], m: usize, k: &crate::scalars::Field) -> Vec<LinMap> {
    let mut rows = Vec::new();
    for (mm, nn) in pairs {
        for r in 0..m {
            for c in 0..m {
                let mut row: Vec<(usize, FieldElem)> = mm.cols[c].iter().map(|(kk, v)| (r * m + kk, v.clone())).collect();
                for kk in 0..m {
                    if let Some(v) = nn.cols[kk].get(r) {
                        row.push((kk * m + c, -v));
                    }
                }
                rows.push(SVec::from_pairs(row));
            }
        }
    }
    kernel_of_rows(m * m, rows, k)
        .into_iter()
        .map(|v| LinMap::from_fn(m, m, |c| SVec::from_pairs(v.iter().filter(|(i, _)| i % m == c).map(|(i, x)| (i / m, x.clone())))))
        .collect()
}

/// Lifted matrices for `SL₂(F_q)` acting on `W`.
#[derive(Debug, Clone)]
pub struct WeilLift {
    pub group: FiniteGroup,
    pub generators: Vec<LinMap>,
    /// `ρ(g)` for every element, built from generator words.
    pub elements: Vec<LinMap>,
    /// Whether the words define a genuine representation.
    pub genuine: bool,
}

impl WeilLift {
    pub fn representation(&self, k: &crate::scalars::Field) -> Result<Obj> {
        if !self.genuine {
            return invalid("the lift is projective only");
        }
        Category::new(CategorySpec::Rep(self.group.clone()), k.clone())?.rep_from_matrices(self.generators.clone())
    }
}

/// Bound on scalar combinations tried while normalizing.
const MAX_NORMALIZATIONS: usize = 4096;

fn words(group: &FiniteGroup, gens: &[LinMap], m: usize, k: &crate::scalars::Field) -> Vec<LinMap> {
    (0..group.order())
        .map(|a| group.word(a).iter().fold(LinMap::identity(m, k), |acc, &g| gens[g].compose(&acc)))
        .collect()
}

fn is_genuine(group: &FiniteGroup, gens: &[LinMap], elems: &[LinMap]) -> bool {
    (0..group.order()).all(|a| (0..gens.len()).all(|gi| gens[gi].compose(&elems[a]) == elems[group.mul(group.generator_index(gi), a)]))
}

/// Solves for each generator of `SL₂(F_q)` the intertwiner `ρ(g) act([x]) = act([gx]) ρ(g)`, then fixes scalars.
/// Generators stabilizing the Lagrangian take the geometric lift `[c]e ↦ [gc]e`; the others are
/// searched among root-of-unity multiples of an order-normalized solution.
pub fn weil_lift(a: &TwistedGroupAlgebra, w: &WeilData) -> Result<WeilLift> {
    let sp = a.space();
    if sp.dim() != 2 {
        return invalid("the lift is computed for d = 2");
    }
    let k = a.field().clone();
    let alg = a.algebra();
    let group = sl2_group(sp.field())?;
    let m = w.dim();
    let act = w.module.action();
    let mut raw = Vec::new();
    let mut pinned = Vec::new();
    for (gi, g) in group.generators().iter().enumerate() {
        let pairs: Vec<(LinMap, LinMap)> = (0..alg.dim()).map(|x| (act[x].clone(), act[g[x] as usize].clone())).collect();
        let sol = intertwiners(&pairs, m, &k);
        if sol.len() != 1 {
            return Err(Error::SolutionDim { context: format!("lift of generator {gi}"), found: sol.len(), expected: 1 });
        }
        let stabilizes = w.lagrangian.iter().all(|&b| w.lagrangian.contains(&(g[b] as usize)));
        if stabilizes {
            let geo = LinMap {
                rows: m,
                cols: w.complement.iter().map(|&c| w.coordinates(&alg.mul(&alg.basis(g[c] as usize), &w.idempotent))).collect::<Result<_>>()?,
            };
            if intertwiners(&pairs, m, &k).len() != 1 || !proportional(&geo, &sol[0]) {
                return Err(verification("Weil lift", format!("generator {gi}"), "geometric lift does not intertwine"));
            }
            raw.push(geo);
            pinned.push(true);
        } else {
            raw.push(sol[0].clone());
            pinned.push(false);
        }
    }
    // candidate scalars per generator
    let roots = k.roots_of_unity();
    let mut candidates: Vec<Vec<FieldElem>> = Vec::new();
    let mut normalizable = true;
    for (gi, r) in raw.iter().enumerate() {
        if pinned[gi] {
            candidates.push(vec![k.one()]);
            continue;
        }
        let order = group.element_order(group.generator_index(gi));
        let pow = (1..order).fold(r.clone(), |acc, _| acc.compose(r));
        let lam = pow.entry(0, 0).cloned().unwrap_or_else(|| k.zero());
        if lam.is_zero() || pow != LinMap::identity(m, &k).scale(&lam) {
            return Err(verification("Weil lift", format!("generator {gi}"), "ρ(g)^ord is not scalar"));
        }
        match nth_root(&lam.inv().expect("nonzero"), order as u32)? {
            Some(c0) => candidates.push(roots.iter().filter(|z| z.pow(order as u64).is_one()).map(|z| &c0 * z).collect()),
            None => {
                normalizable = false;
                candidates.push(vec![k.one()]);
            }
        }
    }
    let combos: usize = candidates.iter().map(|c| c.len()).product();
    if normalizable && combos <= MAX_NORMALIZATIONS {
        for idx in 0..combos {
            let mut rem = idx;
            let gens: Vec<LinMap> = raw
                .iter()
                .zip(&candidates)
                .map(|(r, cs)| {
                    let c = &cs[rem % cs.len()];
                    rem /= cs.len();
                    r.scale(c)
                })
                .collect();
            let elems = words(&group, &gens, m, &k);
            if is_genuine(&group, &gens, &elems) {
                return Ok(WeilLift { group, generators: gens, elements: elems, genuine: true });
            }
        }
    }
    let elems = words(&group, &raw, m, &k);
    Ok(WeilLift { group, generators: raw, elements: elems, genuine: false })
}

fn proportional(x: &LinMap, y: &LinMap) -> bool {
    let Some((c, (i, xi))) = x.cols.iter().enumerate().find_map(|(c, v)| v.leading().map(|e| (c, e.clone()))) else {
        return y.is_zero();
    };
    match y.cols[c].get(i) {
        Some(yi) => *x == y.scale(&(xi * &yi.inv().expect("nonzero"))),
        None => false,
    }
}

/// One row of the character checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRow {
    pub element: usize,
    pub fixed_points: usize,
    pub chi: String,
    /// `χ(g)·tr(ρ(g)⁻¹) = |Fix g|`.
    pub product_ok: bool,
    /// `χ(g)⁴ = |Fix g|²`, when the lift is genuine.
    pub fourth_power_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharIdentity {
    pub rows: Vec<CharRow>,
    pub genuine: bool,
}

impl CharIdentity {
    pub fn products_hold(&self) -> bool {
        self.rows.iter().all(|r| r.product_ok)
    }
    pub fn fourth_powers_hold(&self) -> Option<bool> {
        self.genuine.then(|| self.rows.iter().all(|r| r.fourth_power_ok == Some(true)))
    }
}

/// `|Fix g| = q^{dim Fix g}` compared with `χ_W(g) χ_W(g⁻¹)`, and `χ_W(g)⁴` with `χ_A(g)²`.
pub fn char_identity_checks(lift: &WeilLift, k: &crate::scalars::Field) -> Result<CharIdentity> {
    let rows = (0..lift.group.order())
        .map(|g| {
            let r = &lift.elements[g];
            let chi = r.trace(k);
            let inv = r.inverse(k).ok_or_else(|| verification("character check", format!("element {g}"), "ρ(g) is singular"))?;
            let fix = lift.group.fixed_points(g);
            let fixe = k.from_int(fix as i64);
            let product_ok = &chi * &inv.trace(k) == fixe;
            let fourth_power_ok = lift.genuine.then(|| chi.pow(4) == &fixe * &fixe);
            Ok(CharRow { element: g, fixed_points: fix, chi: chi.to_string(), product_ok, fourth_power_ok })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharIdentity { rows, genuine: lift.genuine })
}
