//! Left modules, bimodules, separability sections and Noether–Skolem descent.

use super::{describe_vec, Algebra};
use crate::error::{invalid, verification, Error, Result};
use crate::linalg::{kernel_of_rows, Acc, LinMap, SVec};
use crate::scalars::FieldElem;
use crate::tencat::Obj;
use rayon::prelude::*;

/// A left module: `action[i]` is the matrix of basis vector `i` acting on the carrier.
#[derive(Debug, Clone)]
pub struct Module {
    algebra: Algebra,
    carrier: Obj,
    action: Vec<LinMap>,
}

impl Module {
    pub fn new(algebra: Algebra, carrier: Obj, action: Vec<LinMap>) -> Result<Module> {
        if action.len() != algebra.dim() || action.iter().any(|m| m.rows != carrier.dim() || m.ncols() != carrier.dim()) {
            return invalid("one square action matrix per algebra basis vector is required");
        }
        if carrier.category() != algebra.category() {
            return Err(Error::Mismatch("module and algebra live in different categories".into()));
        }
        let m = Module { algebra, carrier, action };
        m.validate()?;
        Ok(m)
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &Algebra) -> Module {
        let action = (0..a.dim()).map(|i| a.left_mul(&a.basis(i))).collect();
        Module { algebra: a.clone(), carrier: a.carrier().clone(), action }
    }

    /// The tautological module `V` of `End(V)`.
    pub fn tautological(end: &Algebra, v: &Obj) -> Result<Module> {
        let n = v.dim();
        if !end.is_matrix_algebra() || end.dim() != n * n {
            return invalid("tautological module needs End(V) built by end_algebra");
        }
        let k = v.field().clone();
        let action = (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                LinMap::from_fn(n, n, |c| if c == j { SVec::unit(i, &k) } else { SVec::new() })
            })
            .collect();
        Module::new(end.clone(), v.clone(), action)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
    pub fn action(&self) -> &[LinMap] {
        &self.action
    }

    pub fn action_of(&self, a: &SVec) -> LinMap {
        let mut out = LinMap::zero(self.dim(), self.dim());
        for (i, c) in a.iter() {
            out = out.add(&self.action[*i].scale(c));
        }
        out
    }

    pub fn act(&self, a: &SVec, m: &SVec) -> SVec {
        let mut acc = Acc::default();
        for (i, c) in a.iter() {
            acc.add_scaled(c, &self.action[*i].apply(m));
        }
        acc.finish()
    }

    /// Transports the action along an invertible change of basis `p` of the carrier.
    pub fn rebased(&self, p: &LinMap) -> Result<Module> {
        let k = self.carrier.field();
        let pinv = p.inverse(k).ok_or_else(|| Error::Invalid("rebasing matrix is singular".into()))?;
        let action = self.action.iter().map(|a| p.compose(a).compose(&pinv)).collect();
        Ok(Module { algebra: self.algebra.clone(), carrier: self.carrier.clone(), action })
    }

    fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let n = a.dim();
        let cat = a.category();
        if !self.action_of(a.unit()).is_identity() {
            return Err(verification("module unit", "1", "unit does not act as the identity"));
        }
        for (i, m) in self.action.iter().enumerate() {
            for (j, c) in m.cols.iter().enumerate() {
                let want = cat.grade_add(a.grade(i), self.carrier.grade(j));
                if c.iter().any(|(r, _)| self.carrier.grade(*r) != want) {
                    return Err(verification("module morphism", format!("basis {i}"), "action does not respect degrees"));
                }
            }
        }
        let bad = (0..n * n).into_par_iter().find_first(|&ij| {
            let (i, j) = (ij / n, ij % n);
            self.action_of(&a.mul_basis(i, j)) != self.action[i].compose(&self.action[j])
        });
        if let Some(ij) = bad {
            return Err(verification("module associativity", format!("basis ({},{})", ij / n, ij % n), "(ab)m ≠ a(bm)"));
        }
        if let (Some(ga), Some(gm)) = (a.carrier().action(), self.carrier.action()) {
            for (gi, (ga, gm)) in ga.iter().zip(gm).enumerate() {
                for i in 0..n {
                    if gm.compose(&self.action[i]) != self.action_of(&ga.cols[i]).compose(gm) {
                        return Err(verification("module morphism", format!("generator {gi}, basis {i}"), "not equivariant"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Outcome of comparing `A → End(M)` with an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionIso {
    Iso,
    NotInjective { rank: usize, dim_algebra: usize, dim_end: usize },
    NotSurjective { rank: usize, dim_algebra: usize, dim_end: usize },
}

/// Builds `A → End(M)` as a matrix (matrix unit `(r,c)` at `r·m + c`) and reports its rank.
pub fn action_iso_check(m: &Module) -> ActionIso {
    let d = m.dim();
    let map = action_matrix(m);
    let rank = map.rank();
    let (dim_algebra, dim_end) = (m.algebra.dim(), d * d);
    if rank < dim_algebra {
        ActionIso::NotInjective { rank, dim_algebra, dim_end }
    } else if rank < dim_end {
        ActionIso::NotSurjective { rank, dim_algebra, dim_end }
    } else {
        ActionIso::Iso
    }
}

/// The linear map `A → End(M)`.
pub fn action_matrix(m: &Module) -> LinMap {
    let d = m.dim();
    LinMap::from_fn(d * d, m.algebra.dim(), |i| {
        SVec::from_pairs(m.action[i].cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, x)| (r * d + c, x.clone()))))
    })
}

/// An `(A, B)`-bimodule; `right[j]` is the matrix of `m ↦ m·b_j`.
#[derive(Debug, Clone)]
pub struct Bimodule {
    left: Module,
    right_algebra: Algebra,
    right: Vec<LinMap>,
}

impl Bimodule {
    pub fn new(left: Module, right_algebra: Algebra, right: Vec<LinMap>) -> Result<Bimodule> {
        let d = left.dim();
        if right.len() != right_algebra.dim() || right.iter().any(|m| m.rows != d || m.ncols() != d) {
            return invalid("one square right action matrix per basis vector is required");
        }
        let b = &right_algebra;
        let combo = |v: &SVec| {
            let mut out = LinMap::zero(d, d);
            for (i, c) in v.iter() {
                out = out.add(&right[*i].scale(c));
            }
            out
        };
        if !combo(b.unit()).is_identity() {
            return Err(verification("right module", "1", "unit does not act as the identity"));
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                if combo(&b.mul_basis(i, j)) != right[j].compose(&right[i]) {
                    return Err(verification("right module", format!("basis ({i},{j})"), "m(bb') ≠ (mb)b'"));
                }
            }
        }
        for (i, l) in left.action.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                if l.compose(r) != r.compose(l) {
                    return Err(verification("bimodule", format!("left {i}, right {j}"), "actions do not commute"));
                }
            }
        }
        Ok(Bimodule { left, right_algebra, right })
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &Algebra) -> Bimodule {
        let right = (0..a.dim()).map(|i| a.right_mul(&a.basis(i))).collect();
        Bimodule { left: Module::regular(a), right_algebra: a.clone(), right }
    }

    pub fn left(&self) -> &Module {
        &self.left
    }
    pub fn right_algebra(&self) -> &Algebra {
        &self.right_algebra
    }
    pub fn right(&self) -> &[LinMap] {
        &self.right
    }
}

/// The multiplication `μ: A ⊗ A → A` applied to a vector of `A ⊗ A`.
pub fn multiply_out(a: &Algebra, v: &SVec) -> SVec {
    let n = a.dim();
    let mut acc = Acc::default();
    for (ij, c) in v.iter() {
        acc.add_scaled(c, &a.mul_basis(ij / n, ij % n));
    }
    acc.finish()
}

/// `σ(x) = (x ⊗ u)π`, verified to be an `A`-bimodule map with `μσ = id`.
pub fn separability_section(a: &Algebra, u: &SVec, pi: &SVec) -> Result<LinMap> {
    let n = a.dim();
    if n == 0 {
        return invalid("the zero algebra has no separability section");
    }
    let aa = a.tensor(a)?;
    let one = a.unit().clone();
    let sigma = LinMap::from_fn(n * n, n, |x| aa.mul(&super::kron_vec(&a.basis(x), u, n), pi));
    for x in 0..n {
        let back = multiply_out(a, &sigma.cols[x]);
        if back != a.basis(x) {
            return Err(verification("separability μσ = id", format!("basis {x}"), describe_vec(a, &back)));
        }
    }
    let bad = (0..n * n).into_par_iter().find_first(|&ij| {
        let (i, x) = (ij / n, ij % n);
        let ai = super::kron_vec(&a.basis(i), &one, n);
        let bi = super::kron_vec(&one, &a.basis(i), n);
        let left = sigma.apply(&a.mul_basis(i, x)) != aa.mul(&ai, &sigma.cols[x]);
        let right = sigma.apply(&a.mul_basis(x, i)) != aa.mul(&sigma.cols[x], &bi);
        left || right
    });
    if let Some(ij) = bad {
        return Err(verification("separability bimodule map", format!("basis pair ({},{})", ij / n, ij % n), "σ(ax) ≠ (a⊗1)σ(x) or σ(xb) ≠ σ(x)(1⊗b)"));
    }
    Ok(sigma)
}

/// Output of [`noether_skolem_descent`]: a character `λ` with `V ≅ λ ⊗ W` via `iso`.
#[derive(Debug, Clone)]
pub struct Descent {
    /// `λ(g)` for every group element, in enumeration order.
    pub character: Vec<FieldElem>,
    /// `ψ: V → W` with `ρ_V(g) = λ(g)·ψ⁻¹ρ_W(g)ψ`.
    pub iso: LinMap,
}

/// Given an equivariant algebra isomorphism `φ: End(V) → End(W)`, solves `φ(α)ψ = ψα` and
/// recovers the one-dimensional character relating the two representations.
pub fn noether_skolem_descent(v: &Obj, w: &Obj, phi: &LinMap) -> Result<Descent> {
    let (n, m) = (v.dim(), w.dim());
    let k = v.field().clone();
    let group = v.category().group().ok_or_else(|| Error::Invalid("descent needs representations of a group".into()))?.clone();
    if v.category() != w.category() {
        return Err(Error::Mismatch("V and W live in different categories".into()));
    }
    if phi.rows != m * m || phi.ncols() != n * n {
        return invalid("φ must map End(V) to End(W)");
    }
    // unknown ψ[s][c] at index s·n + c
    let mut rows = Vec::new();
    for ij in 0..n * n {
        let (i, j) = (ij / n, ij % n);
        let f = &phi.cols[ij];
        for r in 0..m {
            for c in 0..n {
                let mut row = Vec::new();
                for (rs, x) in f.iter() {
                    if rs / m == r {
                        row.push(((rs % m) * n + c, x.clone()));
                    }
                }
                if c == j {
                    row.push((r * n + i, -k.one()));
                }
                rows.push(SVec::from_pairs(row));
            }
        }
    }
    let sol = kernel_of_rows(m * n, rows, &k);
    if sol.len() != 1 {
        return Err(Error::SolutionDim { context: "Noether–Skolem intertwiner".into(), found: sol.len(), expected: 1 });
    }
    let psi = LinMap::from_fn(m, n, |c| SVec::from_pairs(sol[0].iter().filter(|(i, _)| i % n == c).map(|(i, x)| (i / n, x.clone()))));
    let psi_inv = psi.inverse(&k).ok_or_else(|| verification("Noether–Skolem", "ψ", "solution is not invertible"))?;
    let mut character = Vec::with_capacity(group.order());
    for e in 0..group.order() {
        let rv = v.element_action(e).expect("rep action");
        let rw = w.element_action(e).expect("rep action");
        let rw_inv = rw.inverse(&k).expect("invertible");
        let x = psi_inv.compose(&rw_inv).compose(&psi).compose(&rv);
        let lam = x.entry(0, 0).cloned().unwrap_or_else(|| k.zero());
        if x != LinMap::identity(n, &k).scale(&lam) || lam.is_zero() {
            return Err(verification("Noether–Skolem", format!("group element {e}"), "ψ⁻¹σ(g)⁻¹ψρ(g) is not a nonzero scalar"));
        }
        character.push(lam);
    }
    for e in 0..group.order() {
        for gi in 0..group.generators().len() {
            let g = group.generator_index(gi);
            if character[group.mul(g, e)] != &character[g] * &character[e] {
                return Err(verification("Noether–Skolem", format!("elements ({g},{e})"), "λ is not multiplicative"));
            }
        }
    }
    Ok(Descent { character, iso: psi })
}
