//! The `ℤ`-graded category `D`: objects in normal bidegree, homs, the splitting object `X` and the split case.

use super::{a_nm, tau_tilde, Component};
use crate::algebra::{kron_vec, Module};
use crate::azumaya::{canonical_end_s, SStructure};
use crate::error::{verification, Error, Result};
use crate::linalg::{Echelon, LinMap, SVec};
use crate::scalars::FieldElem;
use crate::tencat::Obj;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An object of `D`, stored at bidegree `(0, n)` or `(n, 0)`.
#[derive(Debug, Clone)]
pub struct DObject {
    comp: Component,
}

impl DObject {
    /// Moves `c` to normal form through the Morita equivalences `D̃_{n+1,m+1} ≃ D̃_{n,m}`.
    pub fn new(c: &Component) -> Result<DObject> {
        Ok(DObject { comp: c.normalized()? })
    }
    /// Degree in `D`; `D̃_{n,m}` sits in degree `m − n`.
    pub fn degree(&self) -> i64 {
        self.comp.degree()
    }
    pub fn component(&self) -> &Component {
        &self.comp
    }
    pub fn dim(&self) -> usize {
        self.comp.dim()
    }
    pub fn tensor(&self, o: &DObject) -> Result<DObject> {
        DObject::new(&self.comp.tensor(&o.comp)?)
    }
}

/// Basis of `Hom_D(P, Q)`: zero across degrees, intertwiners over `A_n` otherwise.
pub fn d_hom(p: &DObject, q: &DObject) -> Vec<LinMap> {
    if p.degree() != q.degree() {
        return Vec::new();
    }
    p.comp.hom(&q.comp)
}

/// A morphism of `D` between objects of equal degree.
#[derive(Debug, Clone)]
pub struct DMor {
    source: DObject,
    target: DObject,
    map: LinMap,
}

impl DMor {
    pub fn new(source: DObject, target: DObject, map: LinMap) -> Result<DMor> {
        if let Some(w) = source.comp.morphism_witness(&target.comp, &map) {
            return Err(verification("morphism of D", w, "map does not intertwine"));
        }
        Ok(DMor { source, target, map })
    }
    pub fn source(&self) -> &DObject {
        &self.source
    }
    pub fn target(&self) -> &DObject {
        &self.target
    }
    pub fn map(&self) -> &LinMap {
        &self.map
    }
    /// `self ∘ first`.
    pub fn compose(&self, first: &DMor) -> Result<DMor> {
        if first.target.comp.bidegree() != self.source.comp.bidegree() || first.target.dim() != self.source.dim() {
            return Err(Error::Mismatch("composition of morphisms with mismatched ends".into()));
        }
        Ok(DMor { source: first.source.clone(), target: self.target.clone(), map: self.map.compose(&first.map) })
    }
}

/// `X_n`, the regular `A_n`-module in degree `n`.
pub fn x_object(a: &crate::algebra::Algebra, n: i64) -> Result<DObject> {
    DObject::new(&Component::regular_graded(a, n)?)
}

/// `X_2` built from the multiplication of `A_{0,2}` agrees with `X ⊗ X` under the identity map.
pub fn x_power_iso(a: &crate::algebra::Algebra) -> Result<()> {
    let a02 = a_nm(a, 0, 2)?;
    let n = a.dim();
    let k = a.field().clone();
    let embed = |f: usize, i: usize| -> SVec {
        let (l, r) = if f == 0 { (SVec::unit(i, &k), a.unit().clone()) } else { (a.unit().clone(), SVec::unit(i, &k)) };
        kron_vec(&l, &r, n)
    };
    let acts = (0..2).map(|f| (0..n).map(|i| a02.left_mul(&embed(f, i))).collect()).collect();
    let x2 = Component::new(a, 0, 2, n * n, acts)?;
    let xx = Component::right_regular(a)?.tensor(&Component::right_regular(a)?)?;
    if let Some(w) = x2.morphism_witness(&xx, &LinMap::identity(n * n, &k)) {
        return Err(verification("X_2 ≅ X ⊗ X", w, "identity is not A_{0,2}-linear"));
    }
    Ok(())
}

/// `α: E → X ⊗ Y`, `x ↦ (1 ⊗ x)π`, and `β: Y ⊗ X → E`, `x ⊗ y ↦ xy`, checked to be maps in `D̃`.
pub fn alpha_beta(s: &SStructure) -> Result<(LinMap, LinMap)> {
    let a = s.algebra();
    let n = a.dim();
    let pair = s.pair();
    let (e, x, y) = (Component::bimodule(a)?, Component::right_regular(a)?, Component::left_regular(a)?);
    let alpha = LinMap::from_fn(n * n, n, |i| pair.mul(&kron_vec(a.unit(), &a.basis(i), n), s.pi()));
    let beta = LinMap::from_fn(n, n * n, |ij| a.mul_basis(ij / n, ij % n));
    if let Some(w) = e.morphism_witness(&x.tensor(&y)?, &alpha) {
        return Err(verification("α", w, "not a map in D̃"));
    }
    if let Some(w) = y.tensor(&x)?.morphism_witness(&e, &beta) {
        return Err(verification("β", w, "not a map in D̃"));
    }
    for ij in 0..n * n {
        let t = pair.mul(&pair.basis(ij), s.pi());
        if s.id_eps(&t) != beta.cols[ij] {
            return Err(verification("β = μ", format!("basis {ij}"), "(id ⊗ ε)((x ⊗ y)π) ≠ xy"));
        }
    }
    Ok((alpha, beta))
}

fn first_difference(lhs: &LinMap, rhs: &LinMap) -> Option<String> {
    (0..lhs.ncols()).find(|&c| lhs.cols[c] != rhs.cols[c]).map(|c| format!("basis {c}: {:?} vs {:?}", lhs.cols[c], rhs.cols[c]))
}

/// Rigidity data of `X` with dual `Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct XZigzag {
    /// `β ∘ τ̃_{X,Y} ∘ α` as a scalar on `E ≅ 1`.
    pub udim: FieldElem,
    pub udeg: FieldElem,
}

/// Both zigzag identities at the level of `D̃`, then `udim(X)`.
pub fn zigzag_check(s: &SStructure) -> Result<XZigzag> {
    let a = s.algebra();
    let n = a.dim();
    let k = a.field().clone();
    let id = LinMap::identity(n, &k);
    let (alpha, beta) = alpha_beta(s)?;
    let (e, x, y) = (Component::bimodule(a)?, Component::right_regular(a)?, Component::left_regular(a)?);

    let first = id.kron(&beta).compose(&alpha.kron(&id));
    if let Some(w) = first_difference(&first, &tau_tilde(s, &e, &x)?) {
        return Err(verification("zigzag (id ⊗ β)(α ⊗ id)", w, "differs from τ̃ on E ⊗ X"));
    }
    let second = beta.kron(&id).compose(&id.kron(&alpha));
    if let Some(w) = first_difference(&second, &tau_tilde(s, &y, &e)?) {
        return Err(verification("zigzag (β ⊗ id)(id ⊗ α)", w, "differs from τ̃ on Y ⊗ E"));
    }
    let loop_map = beta.compose(&tau_tilde(s, &x, &y)?).compose(&alpha);
    let udim = loop_map.entry(0, 0).cloned().unwrap_or_else(|| k.zero());
    if loop_map != LinMap::identity(n, &k).scale(&udim) {
        return Err(verification("udim(X)", "E", "β τ̃ α is not a scalar on E"));
    }
    Ok(XZigzag { udim, udeg: s.degree().clone() })
}

/// Outcome of the comparison `i: A → End(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndXReport {
    pub udeg: FieldElem,
    pub udim: FieldElem,
    /// `udim(X) = sign · udeg(A)`.
    pub sign: i8,
}

/// `j = ρ_π: A ⊗ E → X ⊗ Y`, the unit triangle and the multiplication square.
pub fn end_x_iso(s: &SStructure) -> Result<EndXReport> {
    let a = s.algebra();
    let n = a.dim();
    let k = a.field().clone();
    let pair = s.pair();
    let id = LinMap::identity(n, &k);
    let (e, x, y) = (Component::bimodule(a)?, Component::right_regular(a)?, Component::left_regular(a)?);
    let a0 = Component::vector(a, n);
    let ae = a0.tensor(&e)?;
    let j = LinMap::from_fn(n * n, n * n, |ij| pair.mul(&pair.basis(ij), s.pi()));
    if let Some(w) = ae.morphism_witness(&x.tensor(&y)?, &j) {
        return Err(verification("j = ρ_π", w, "not a map in D̃"));
    }
    if !j.compose(&j).is_identity() {
        return Err(verification("j = ρ_π", "A ⊗ E", "j is not invertible with inverse j"));
    }
    let (alpha, beta) = alpha_beta(s)?;
    let unit_in = LinMap::from_fn(n * n, n, |i| kron_vec(a.unit(), &a.basis(i), n));
    if let Some(w) = first_difference(&j.compose(&unit_in), &alpha) {
        return Err(verification("unit triangle", w, "j ∘ (1 ⊗ id) ≠ α"));
    }

    let mu = LinMap::from_fn(n, n * n, |ij| a.mul_basis(ij / n, ij % n));
    let top = j
        .kron(&id)
        .compose(&mu.kron(&id).kron(&id))
        .compose(&id.kron(&tau_tilde(s, &e, &a0)?).kron(&id));
    let bottom = id.kron(&tau_tilde(s, &e, &y)?).compose(&id.kron(&beta).kron(&id)).compose(&j.kron(&j));
    if let Some(w) = first_difference(&top, &bottom) {
        return Err(verification("multiplication square", w, "φ ≠ ψ"));
    }

    let z = zigzag_check(s)?;
    let sign = if z.udim == z.udeg {
        1
    } else if z.udim == -z.udeg.clone() {
        -1
    } else {
        return Err(verification("udim(X) = ±udeg(A)", "X", format!("udim {} vs udeg {}", z.udim, z.udeg)));
    };
    Ok(EndXReport { udeg: z.udeg, udim: z.udim, sign })
}

/// One instance of `Hom_D(Φ(M) ⊗ X^r, Φ(N) ⊗ X^s)` against `Hom_C(M ⊗ A^{⊗r}, N)·[r = s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniCharCase {
    pub r: usize,
    pub s: usize,
    pub dim_m: usize,
    pub dim_n: usize,
    pub hom_d: usize,
    pub hom_c: usize,
}

/// All `r, s ∈ {0, 1}` with seeded dimensions of `M` and `N`.
pub fn uni_char_check(st: &SStructure, seed: u64) -> Result<Vec<UniCharCase>> {
    let a = st.algebra();
    let na = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Component::right_regular(a)?;
    let mut out = Vec::new();
    for r in 0..2usize {
        for s in 0..2usize {
            let (dim_m, dim_n) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
            let with_x = |d: usize, e: usize| -> Result<DObject> {
                let mut c = Component::vector(a, d);
                for _ in 0..e {
                    c = c.tensor(&x)?;
                }
                DObject::new(&c)
            };
            let (p, q) = (with_x(dim_m, r)?, with_x(dim_n, s)?);
            let homs = d_hom(&p, &q);
            for (i, h) in homs.iter().enumerate() {
                if let Some(w) = p.component().morphism_witness(q.component(), h) {
                    return Err(verification("Hom_D basis", format!("r={r}, s={s}, element {i}"), w));
                }
            }
            let hom_c = if r == s { dim_m * na.pow(r as u32) * dim_n } else { 0 };
            if homs.len() != hom_c {
                return Err(verification(
                    "Hom_D(Φ(M)⊗X^r, Φ(N)⊗X^s)",
                    format!("r={r}, s={s}, dim M={dim_m}, dim N={dim_n}"),
                    format!("found {} but Hom_C(M ⊗ A^r, N)·[r=s] = {hom_c}", homs.len()),
                ));
            }
            out.push(UniCharCase { r, s, dim_m, dim_n, hom_d: homs.len(), hom_c });
        }
    }
    Ok(out)
}

/// Full faithfulness of `Θ` at one pair of degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCase {
    pub degree_m: i64,
    pub degree_n: i64,
    pub dim_m: usize,
    pub dim_n: usize,
    pub hom_d: usize,
    pub hom_graded: usize,
}

/// The split case `A = End(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCaseReport {
    pub v1_sign: i8,
    pub v_minus_sign: i8,
    pub v1_end_dim: usize,
    pub theta: Vec<ThetaCase>,
}

fn swap_sign(s: &SStructure, c: &Component) -> Result<i8> {
    let t = tau_tilde(s, c, c)?;
    let k = s.algebra().field().clone();
    let id = LinMap::identity(c.dim() * c.dim(), &k);
    if t == id {
        Ok(1)
    } else if t == id.scale(&-k.one()) {
        Ok(-1)
    } else {
        Err(verification("sign", format!("bidegree {:?}", c.bidegree()), "τ̃ on the square is not ±id"))
    }
}

/// `V₁ = V*` in degree 1 is invertible of sign `+1`, and `Θ` is fully faithful in degrees −1, 0, 1.
pub fn split_case_check(v: &Obj, seed: u64) -> Result<SplitCaseReport> {
    let s = canonical_end_s(v)?;
    let a = s.algebra();
    let nv = v.dim();
    let k = a.field().clone();
    let taut = Module::tautological(a, v)?;
    let v_minus = Component::new(a, 1, 0, nv, vec![taut.action().to_vec()])?;
    let v1 = v_minus.dual();

    // V₁ ⊗ V₋₁ = E through f ⊗ w ↦ |w⟩⟨f|
    let prod = v1.tensor(&v_minus)?;
    let e = Component::bimodule(a)?;
    let to_e = LinMap::from_fn(nv * nv, nv * nv, |fw| SVec::unit((fw % nv) * nv + fw / nv, &k));
    if let Some(w) = prod.morphism_witness(&e, &to_e) {
        return Err(verification("V₁ ⊗ V₋₁ = E", w, "not A_{1,1}-linear"));
    }
    let unit = DObject::new(&e)?;
    if unit.dim() != 1 || unit.degree() != 0 {
        return Err(verification("E ≅ 1", "E", format!("normal form has dimension {}", unit.dim())));
    }
    let v_minus_sign = swap_sign(&s, &v_minus)?;
    let v1_sign = swap_sign(&s, &v1)?;
    let v1_obj = DObject::new(&v1)?;
    let v1_end_dim = d_hom(&v1_obj, &v1_obj).len();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta_obj = |deg: i64, d: usize| -> Result<DObject> {
        let mut c = Component::vector(a, d);
        let l = if deg >= 0 { &v1 } else { &v_minus };
        for _ in 0..deg.unsigned_abs() {
            c = l.tensor(&c)?;
        }
        DObject::new(&c)
    };
    let mut theta = Vec::new();
    for dm in -1..=1i64 {
        for dn in -1..=1i64 {
            let (dim_m, dim_n) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
            let (p, q) = (theta_obj(dm, dim_m)?, theta_obj(dn, dim_n)?);
            let homs = d_hom(&p, &q);
            let hom_graded = if dm == dn { dim_m * dim_n } else { 0 };
            if homs.len() != hom_graded {
                return Err(verification(
                    "Θ fully faithful",
                    format!("degrees ({dm}, {dn})"),
                    format!("Hom_D has dimension {}, Hom in graded C has {hom_graded}", homs.len()),
                ));
            }
            if dm == dn {
                // Θ(f) = id_{L^{⊗n}} ⊗ f spans the hom space
                let lsize = nv.pow(dm.unsigned_abs() as u32);
                let il = LinMap::identity(lsize, &k);
                let mut ech = Echelon::new(p.dim() * q.dim());
                for rc in 0..dim_m * dim_n {
                    let f = LinMap::from_fn(dim_n, dim_m, |c| if c == rc % dim_m { SVec::unit(rc / dim_m, &k) } else { SVec::new() });
                    let tf = il.kron(&f);
                    if let Some(w) = p.component().morphism_witness(q.component(), &tf) {
                        return Err(verification("Θ on morphisms", format!("degree {dm}"), w));
                    }
                    ech.insert(&tf.flatten());
                }
                if ech.rank() != hom_graded {
                    return Err(verification("Θ faithful", format!("degree {dm}"), "images of a basis are dependent"));
                }
            }
            theta.push(ThetaCase { degree_m: dm, degree_n: dn, dim_m, dim_n, hom_d: homs.len(), hom_graded });
        }
    }
    Ok(SplitCaseReport { v1_sign, v_minus_sign, v1_end_dim, theta })
}
