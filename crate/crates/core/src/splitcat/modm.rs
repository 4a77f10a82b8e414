//! The `ℤ/m`-graded quotient obtained by trivializing `V_m` for an S-iso `A^{⊗m} ≅ End(V)`.

use super::graded::{d_hom, DObject};
use super::{tau_tilde_apply, Component};
use crate::algebra::kron_vec;
use crate::azumaya::SStructure;
use crate::error::{invalid, verification, Error, Result};
use crate::linalg::{Echelon, LinMap, SVec};

/// `V_{−m}` in bidegree `(m, 0)`, its dual `V_m`, and the ladder cap.
#[derive(Debug, Clone)]
pub struct ModMCategory {
    s: SStructure,
    m: usize,
    v_minus: Component,
    v_plus: Component,
    cap: usize,
}

/// `Hom(P, Q) = ⊕_ℓ Hom_D(P, V_m^{⊗ℓ} ⊗ Q)` over `|ℓ| ≤ cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMHom {
    /// `(ℓ, dimension)` for every level in the window.
    pub levels: Vec<(i64, usize)>,
    pub total: usize,
}

impl ModMHom {
    pub fn at(&self, l: i64) -> usize {
        self.levels.iter().find(|(x, _)| *x == l).map_or(0, |(_, d)| *d)
    }
}

impl ModMCategory {
    /// `v` is `V` with `A^{⊗m}` acting, as a component in bidegree `(m, 0)`; for `m = 0` it must be `1`.
    pub fn new(s: &SStructure, m: usize, v: Component, cap: usize) -> Result<ModMCategory> {
        if v.bidegree() != (m, 0) {
            return invalid(format!("V must sit in bidegree ({m}, 0)"));
        }
        if m == 0 && v.dim() != 1 {
            return invalid("for m = 0 the object V must be the unit");
        }
        let cat = ModMCategory { s: s.clone(), m, v_plus: v.dual(), v_minus: v, cap };
        cat.check_invertible()?;
        if m > 0 {
            // V ⊗ V is invertible, so τ̃ on it is a scalar read off one vector
            let k = s.algebra().field().clone();
            let e = SVec::unit(0, &k);
            if tau_tilde_apply(s, &cat.v_minus, &cat.v_minus, &e)? != e {
                return Err(verification("sign of V_{-m}", format!("m = {m}"), "τ̃ on V ⊗ V is not the identity"));
            }
        }
        Ok(cat)
    }

    /// `V = B = A^{⊗r}` with `A^{⊗2r}` acting by `x ↦ b x σ(c)`, for an anti-involution `σ` of `B`.
    pub fn from_anti_involution(s: &SStructure, r: usize, sigma: &LinMap, cap: usize) -> Result<ModMCategory> {
        let a = s.algebra();
        if r == 0 {
            return invalid("r must be positive");
        }
        let b = a.power(r)?;
        let n = a.dim();
        let k = a.field().clone();
        if sigma.rows != b.dim() || sigma.ncols() != b.dim() {
            return invalid("σ must be an endomorphism of A^{⊗r}");
        }
        let embed = |slot: usize, i: usize| -> SVec {
            (0..r).fold(SVec::unit(0, &k), |acc, f| kron_vec(&acc, &if f == slot { SVec::unit(i, &k) } else { a.unit().clone() }, n))
        };
        let mut acts = Vec::with_capacity(2 * r);
        for f in 0..r {
            acts.push((0..n).map(|i| b.left_mul(&embed(f, i))).collect());
        }
        for f in 0..r {
            acts.push((0..n).map(|i| b.right_mul(&sigma.apply(&embed(f, i)))).collect());
        }
        let v = Component::new(a, 2 * r, 0, b.dim(), acts)?;
        ModMCategory::new(s, 2 * r, v, cap)
    }

    pub fn structure(&self) -> &SStructure {
        &self.s
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn v_minus(&self) -> &Component {
        &self.v_minus
    }
    pub fn v_plus(&self) -> &Component {
        &self.v_plus
    }

    /// `V_m ⊗ V_{−m} ≅ 1` in `D`.
    pub fn check_invertible(&self) -> Result<()> {
        let one = DObject::new(&self.v_plus.tensor(&self.v_minus)?)?;
        if one.dim() != 1 || one.degree() != 0 {
            return Err(verification("V_m invertible", format!("m = {}", self.m), format!("V_m ⊗ V_(-m) has normal dimension {}", one.dim())));
        }
        Ok(())
    }

    fn shifted(&self, q: &DObject, l: i64) -> Result<DObject> {
        let step = if l >= 0 { &self.v_plus } else { &self.v_minus };
        let mut c = q.component().clone();
        for _ in 0..l.unsigned_abs() {
            c = step.tensor(&c)?;
        }
        DObject::new(&c)
    }

    /// Sums the ladder; levels whose degree cannot match contribute zero without computation.
    pub fn hom(&self, p: &DObject, q: &DObject) -> Result<ModMHom> {
        let cap = self.cap as i64;
        let mut levels = Vec::new();
        for l in -cap..=cap {
            let d = if q.degree() + l * self.m as i64 != p.degree() { 0 } else { d_hom(p, &self.shifted(q, l)?).len() };
            levels.push((l, d));
        }
        let edge = levels.first().map_or(0, |x| x.1) + levels.last().map_or(0, |x| x.1);
        if edge > 0 {
            return Err(Error::Bound { what: "ladder level carrying a nonzero Hom".into(), size: self.cap, bound: self.cap.saturating_sub(1) });
        }
        let total = levels.iter().map(|x| x.1).sum();
        Ok(ModMHom { levels, total })
    }

    /// The degree-0 piece of `End(P)` is closed under composition.
    pub fn end_closes(&self, p: &DObject) -> Result<bool> {
        let basis = d_hom(p, p);
        let d = p.dim();
        let mut span = Echelon::new(d * d);
        for b in &basis {
            span.insert(&b.flatten());
        }
        Ok(basis.iter().all(|f| basis.iter().all(|g| span.contains(&f.compose(g).flatten()))))
    }
}
