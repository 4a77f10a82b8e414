//! Finite symplectic spaces, their twisted group algebras and anti-involutions.

pub mod weil;

use crate::algebra::Algebra;
use crate::azumaya::{verify_s_structure, SStructure};
use crate::error::{invalid, verification, Error, Result};
use crate::linalg::{LinMap, SVec};
use crate::scalars::{cyclotomic, Field, FieldElem, FiniteField};
use crate::tencat::{Category, Perm};
use rayon::prelude::*;

pub use weil::{char_identity_checks, oscillator_sign, schrodinger_module, weil_lift, CharIdentity, WeilData, WeilLift};

/// Default bound on `q^d`.
pub const DEFAULT_POINT_BOUND: usize = 10_000;

/// `F_q` from its order.
pub fn finite_field_of_order(q: usize) -> Result<FiniteField> {
    let p = (2..=q).find(|p| q % p == 0).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return invalid(format!("{q} is not a prime power"));
    }
    FiniteField::new(p as u64, e)
}

/// `F_q^d` with coordinates `(e_1, f_1, e_2, f_2, ...)` and `⟨e_i, f_i⟩ = 1`.
/// Vectors are indexed in mixed radix `q`, first coordinate most significant.
#[derive(Debug, Clone)]
pub struct SymplecticSpace {
    field: FiniteField,
    d: usize,
    points: Vec<Vec<u32>>,
}

pub fn standard_symplectic(q: usize, d: usize) -> Result<SymplecticSpace> {
    standard_symplectic_bounded(q, d, DEFAULT_POINT_BOUND)
}

pub fn standard_symplectic_bounded(q: usize, d: usize, bound: usize) -> Result<SymplecticSpace> {
    if q % 2 == 0 {
        return invalid(format!("q = {q}: even characteristic is excluded"));
    }
    if d == 0 || d % 2 == 1 {
        return invalid(format!("symplectic dimension must be even and positive, got {d}"));
    }
    let size = q.checked_pow(d as u32).unwrap_or(usize::MAX);
    if size > bound {
        return Err(Error::Bound { what: "q^d".into(), size, bound });
    }
    let field = finite_field_of_order(q)?;
    let points = (0..size)
        .map(|mut i| {
            let mut c = vec![0u32; d];
            for slot in c.iter_mut().rev() {
                *slot = (i % q) as u32;
                i /= q;
            }
            c
        })
        .collect();
    Ok(SymplecticSpace { field, d, points })
}

impl SymplecticSpace {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn q(&self) -> usize {
        self.field.q()
    }
    pub fn dim(&self) -> usize {
        self.d
    }
    pub fn size(&self) -> usize {
        self.points.len()
    }
    pub fn coords(&self, x: usize) -> &[u32] {
        &self.points[x]
    }
    pub fn index(&self, c: &[u32]) -> usize {
        c.iter().fold(0, |acc, &x| acc * self.q() + x as usize)
    }
    pub fn add(&self, x: usize, y: usize) -> usize {
        let f = &self.field;
        let c: Vec<u32> = self.points[x].iter().zip(&self.points[y]).map(|(a, b)| f.add(*a, *b)).collect();
        self.index(&c)
    }
    pub fn neg(&self, x: usize) -> usize {
        let c: Vec<u32> = self.points[x].iter().map(|a| self.field.neg(*a)).collect();
        self.index(&c)
    }
    pub fn scale(&self, s: u32, x: usize) -> usize {
        let c: Vec<u32> = self.points[x].iter().map(|a| self.field.mul(s, *a)).collect();
        self.index(&c)
    }

    /// `⟨x, y⟩ = Σ_i x_{e_i} y_{f_i} − x_{f_i} y_{e_i}`.
    pub fn pair(&self, x: usize, y: usize) -> u32 {
        let f = &self.field;
        let (a, b) = (&self.points[x], &self.points[y]);
        (0..self.d / 2).fold(0, |acc, i| {
            let t = f.sub(f.mul(a[2 * i], b[2 * i + 1]), f.mul(a[2 * i + 1], b[2 * i]));
            f.add(acc, t)
        })
    }

    /// The Gram matrix on the coordinate basis.
    pub fn gram(&self) -> Vec<Vec<u32>> {
        let unit = |i: usize| {
            let mut c = vec![0u32; self.d];
            c[i] = 1;
            self.index(&c)
        };
        (0..self.d).map(|i| (0..self.d).map(|j| self.pair(unit(i), unit(j))).collect()).collect()
    }

    /// Basis vectors `e_1, f_1, ...` as point indices.
    pub fn basis_points(&self) -> Vec<usize> {
        (0..self.d)
            .map(|i| {
                let mut c = vec![0u32; self.d];
                c[i] = 1;
                self.index(&c)
            })
            .collect()
    }

    /// The Lagrangian spanned by `e_1, ..., e_{d/2}`.
    pub fn lagrangian(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.points[x].iter().skip(1).step_by(2).all(|&c| c == 0)).collect()
    }

    /// The complement spanned by `f_1, ..., f_{d/2}`.
    pub fn co_lagrangian(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.points[x].iter().step_by(2).all(|&c| c == 0)).collect()
    }

    /// The transvection `x ↦ x + ⟨x, v⟩ v` as a permutation of points.
    pub fn transvection(&self, v: usize) -> Perm {
        (0..self.size())
            .map(|x| {
                let s = self.pair(x, v);
                self.add(x, self.scale(s, v)) as u32
            })
            .collect()
    }

    /// Transvections along `e_i`, `f_i` and `e_i + e_j`; they generate `Sp(V)`.
    pub fn sp_generators(&self) -> Vec<Perm> {
        let b = self.basis_points();
        let mut vs: Vec<usize> = b.clone();
        for i in 0..self.d / 2 {
            for j in i + 1..self.d / 2 {
                vs.push(self.add(b[2 * i], b[2 * j]));
            }
        }
        vs.into_iter().map(|v| self.transvection(v)).collect()
    }

    pub fn label(&self, x: usize) -> String {
        let c: Vec<String> = self.points[x].iter().map(|&a| self.field.label(a)).collect();
        format!("({})", c.join(","))
    }

    /// Antisymmetry, invertibility and `⟨x,x⟩ = 0` on every point.
    pub fn check_form(&self) -> Result<()> {
        let g = self.gram();
        let f = &self.field;
        for i in 0..self.d {
            for j in 0..self.d {
                if g[i][j] != f.neg(g[j][i]) {
                    return Err(verification("symplectic form", format!("({i},{j})"), "Gram matrix is not antisymmetric"));
                }
            }
        }
        for i in 0..self.d / 2 {
            if g[2 * i][2 * i + 1] != 1 {
                return Err(verification("symplectic form", format!("pair {i}"), "⟨e_i, f_i⟩ ≠ 1"));
            }
        }
        if let Some(x) = (0..self.size()).find(|&x| self.pair(x, x) != 0) {
            return Err(verification("symplectic form", self.label(x), "⟨x,x⟩ ≠ 0"));
        }
        Ok(())
    }
}

/// The additive character `a ↦ ζ_p^{s·Tr(a)}` of `F_q`.
#[derive(Debug, Clone)]
pub struct Psi {
    field: FiniteField,
    power: u32,
    values: Vec<FieldElem>,
}

impl Psi {
    pub fn at(&self, a: u32) -> &FieldElem {
        &self.values[a as usize]
    }
    pub fn power(&self) -> u32 {
        self.power
    }
    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }
}

/// `ψ(a) = ζ_p^{Tr(a)}`.
pub fn psi(f: &FiniteField, k: &Field) -> Result<Psi> {
    psi_power(f, k, 1)
}

/// `ψ^s(a) = ζ_p^{s·Tr(a)}` for `s ∈ F_p^×`.
pub fn psi_power(f: &FiniteField, k: &Field, s: u32) -> Result<Psi> {
    let p = f.p();
    if s as u64 % p == 0 {
        return invalid("the character power must be nonzero mod p");
    }
    let z = k.root_of_unity(p).ok_or_else(|| Error::MissingScalar(format!("a primitive {p}-th root of unity in {}", k.name())))?;
    let values: Vec<FieldElem> = f.elements().map(|a| z.pow((f.trace(a) as u64 * s as u64) % p)).collect();
    if values.iter().all(|v| v.is_one()) {
        return Err(verification("additive character", "ψ", "ψ is trivial"));
    }
    for a in f.elements() {
        for b in f.elements() {
            if values[f.add(a, b) as usize] != &values[a as usize] * &values[b as usize] {
                return Err(verification("additive character", format!("({a},{b})"), "ψ is not additive"));
            }
        }
    }
    Ok(Psi { field: f.clone(), power: s, values })
}

/// `k[V]` with `[x][y] = ψ(⟨x,y⟩)[x+y]`.
#[derive(Debug, Clone)]
pub struct TwistedGroupAlgebra {
    space: SymplecticSpace,
    psi: Psi,
    algebra: Algebra,
    t: usize,
    t_half: usize,
}

impl TwistedGroupAlgebra {
    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }
    pub fn psi(&self) -> &Psi {
        &self.psi
    }
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }
    /// `t = q^d`.
    pub fn t(&self) -> usize {
        self.t
    }
    /// `t^{1/2} = q^{d/2}`.
    pub fn t_half(&self) -> usize {
        self.t_half
    }
}

/// The twisted group algebra over `ℚ(ζ_p)` with `ψ = ζ_p^{Tr}`.
pub fn twisted_group_algebra_std(q: usize, d: usize) -> Result<TwistedGroupAlgebra> {
    let v = standard_symplectic(q, d)?;
    let k = cyclotomic(v.field().p());
    let psi = psi(v.field(), &k)?;
    twisted_group_algebra(&v, &psi, &k)
}

pub fn twisted_group_algebra(v: &SymplecticSpace, psi: &Psi, k: &Field) -> Result<TwistedGroupAlgebra> {
    if psi.field != v.field {
        return Err(Error::Mismatch("ψ is a character of a different field".into()));
    }
    v.check_form()?;
    let n = v.size();
    let table: Vec<SVec> = (0..n * n)
        .into_par_iter()
        .map(|xy| {
            let (x, y) = (xy / n, xy % n);
            SVec::single(v.add(x, y), psi.at(v.pair(x, y)).clone())
        })
        .collect();
    let carrier = Category::vec(k).trivial(n);
    let name = format!("A(F_{}^{})", v.q(), v.dim());
    let gens = v.basis_points().into_iter().map(|b| SVec::unit(b, k)).collect();
    let algebra = Algebra::from_table(name, carrier, table, SVec::unit(0, k))?
        .with_labels((0..n).map(|x| v.label(x)).collect())?
        .with_gens(gens)
        .with_group_action(v.sp_generators())?;
    let t = n;
    let t_half = v.q().pow(v.dim() as u32 / 2);
    Ok(TwistedGroupAlgebra { space: v.clone(), psi: psi.clone(), algebra, t, t_half })
}

/// `ε(Σ c_x [x]) = t^{1/2} c_0` and `π = t^{−1/2} Σ_u [u] ⊗ [−u]`.
pub fn twisted_s_structure(a: &TwistedGroupAlgebra) -> Result<SStructure> {
    let k = a.field();
    let n = a.space.size();
    let th = k.from_int(a.t_half as i64);
    let inv = th.inv().expect("nonzero");
    let pi = SVec::from_pairs((0..n).map(|u| (u * n + a.space.neg(u), inv.clone())));
    let eps = SVec::single(0, th);
    verify_s_structure(&a.algebra, pi, eps)
}

/// `[x] ↦ [s x]` as a linear map.
fn point_map(a: &TwistedGroupAlgebra, f: impl Fn(usize) -> usize + Sync + Send) -> LinMap {
    let k = a.field().clone();
    LinMap::from_fn(a.space.size(), a.space.size(), |x| SVec::unit(f(x), &k))
}

/// The smaller square root of `−1` in `F_q` (by packed index).
pub fn sqrt_minus_one(f: &FiniteField) -> Option<u32> {
    let m1 = f.neg(1);
    f.elements().find(|&b| f.mul(b, b) == m1)
}

/// `σ([x]) = [ix]` for `i² = −1`; verified to reverse products and preserve `ε`.
pub fn sqrt_minus_one_involution(a: &TwistedGroupAlgebra, s: &SStructure) -> Result<LinMap> {
    let f = a.space.field();
    let i = sqrt_minus_one(f).ok_or_else(|| Error::Invalid(format!("−1 is not a square in F_{}", f.q())))?;
    let sigma = point_map(a, |x| a.space.scale(i, x));
    check_admissible(&a.algebra, s, &sigma)?;
    Ok(sigma)
}

fn check_admissible(alg: &Algebra, s: &SStructure, sigma: &LinMap) -> Result<()> {
    if !alg.is_anti_homomorphism(sigma) {
        return Err(verification("anti-involution", "σ", "σ does not reverse products"));
    }
    for x in 0..alg.dim() {
        if s.eps_of(&sigma.cols[x]) != s.eps_of(&alg.basis(x)) {
            return Err(verification("admissibility", format!("basis {x}"), "ε ∘ σ ≠ ε"));
        }
    }
    Ok(())
}

/// The lexicographically first `(u, v) ∈ F_q² × F_q²` with `u·u = −1`, `u·v = 0`, `v·v = −1`.
pub fn find_uv(f: &FiniteField) -> Option<([u32; 2], [u32; 2])> {
    let m1 = f.neg(1);
    let dot = |a: [u32; 2], b: [u32; 2]| f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1]));
    let pairs: Vec<[u32; 2]> = f.elements().flat_map(|a| f.elements().map(move |b| [a, b])).collect();
    for &u in &pairs {
        if dot(u, u) != m1 {
            continue;
        }
        if let Some(&v) = pairs.iter().find(|&&v| dot(u, v) == 0 && dot(v, v) == m1) {
            return Some((u, v));
        }
    }
    None
}

/// `σ([x, y]) = [T(x, y)]` on `A ⊗ A` with `T(x, y) = (u_1 x + v_1 y, u_2 x + v_2 y)`.
#[derive(Debug, Clone)]
pub struct TInvolution {
    pub u: [u32; 2],
    pub v: [u32; 2],
    pub pair: Algebra,
    pub sigma: LinMap,
    pub structure: SStructure,
}

pub fn t_involution(a: &TwistedGroupAlgebra, s: &SStructure) -> Result<TInvolution> {
    let sp = &a.space;
    let f = sp.field();
    let (u, v) = find_uv(f).ok_or_else(|| Error::Undetermined(format!("no (u, v) over F_{}", f.q())))?;
    let n = sp.size();
    let t = |xy: usize| -> usize {
        let (x, y) = (xy / n, xy % n);
        let a1 = sp.add(sp.scale(u[0], x), sp.scale(v[0], y));
        let a2 = sp.add(sp.scale(u[1], x), sp.scale(v[1], y));
        a1 * n + a2
    };
    let images: Vec<usize> = (0..n * n).map(t).collect();
    let mut seen = vec![false; n * n];
    for &i in &images {
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(verification("T", "image", "T is not invertible"));
    }
    let form = |xy: usize, zw: usize| f.add(sp.pair(xy / n, zw / n), sp.pair(xy % n, zw % n));
    let bad = (0..n * n).into_par_iter().find_any(|&p| (0..n * n).any(|r| form(images[p], images[r]) != f.neg(form(p, r))));
    if let Some(p) = bad {
        return Err(verification("T negates the form", format!("point {p}"), "⟨T p, T r⟩ ≠ −⟨p, r⟩"));
    }
    let pair = a.algebra.tensor(&a.algebra)?;
    let k = a.field().clone();
    let sigma = LinMap::from_fn(n * n, n * n, |xy| SVec::unit(images[xy], &k));
    let structure = crate::azumaya::product_structure(s, s)?;
    check_admissible(&pair, &structure, &sigma)?;
    Ok(TInvolution { u, v, pair, sigma, structure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spaces_and_characters() {
        let v = standard_symplectic(3, 2).unwrap();
        assert_eq!(v.size(), 9);
        assert_eq!(v.gram(), vec![vec![0, 1], vec![2, 0]]);
        assert!(standard_symplectic(2, 2).is_err());
        assert!(standard_symplectic(3, 3).is_err());
        assert!(matches!(standard_symplectic(11, 4), Err(Error::Bound { .. })));
        let k = cyclotomic(3);
        let p = psi(v.field(), &k).unwrap();
        assert_eq!(p.at(1), &k.gen());
        let total = p.values().iter().fold(k.zero(), |acc, x| acc + x);
        assert!(total.is_zero());
        let f9 = FiniteField::new(3, 2).unwrap();
        let p9 = psi(&f9, &k).unwrap();
        for a in f9.elements() {
            assert_eq!(p9.at(a).is_one(), f9.trace(a) == 0);
        }
        assert!(psi(v.field(), &Field::rationals()).is_err());
    }

    #[test]
    fn twisted_products_and_structure() {
        let a = twisted_group_algebra_std(3, 2).unwrap();
        let alg = a.algebra();
        let k = a.field().clone();
        let (e, f) = (3, 1);
        let z = k.gen();
        assert_eq!(alg.mul_basis(e, f), SVec::single(4, z.clone()));
        assert_eq!(alg.mul_basis(f, e), SVec::single(4, z.inv().unwrap()));
        let sp = a.space();
        for x in 0..9 {
            assert_eq!(alg.mul_basis(x, sp.neg(x)), SVec::unit(0, &k));
        }
        let s = twisted_s_structure(&a).unwrap();
        assert_eq!(s.degree().to_string(), "3");
        assert!(crate::azumaya::derived_identities(&s).all());
        assert!(sqrt_minus_one_involution(&a, &s).is_err());
    }

    #[test]
    fn uv_and_involutions() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(find_uv(&f3), Some(([1, 1], [1, 2])));
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(sqrt_minus_one(&f5), Some(2));
        let a5 = twisted_group_algebra_std(5, 2).unwrap();
        let s5 = twisted_s_structure(&a5).unwrap();
        let sigma = sqrt_minus_one_involution(&a5, &s5).unwrap();
        let x = a5.space().index(&[1, 0]);
        assert_eq!(sigma.cols[x], SVec::unit(a5.space().index(&[2, 0]), a5.field()));
        assert!(!sigma.compose(&sigma).is_identity());
    }
}
