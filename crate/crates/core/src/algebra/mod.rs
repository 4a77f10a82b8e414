//! Finite-dimensional algebras in a category instance, given by sparse structure constants.

pub mod examples;
pub mod json;
pub mod module;

use crate::error::{invalid, verification, Error, Result};
use crate::linalg::{kernel_of_rows, Acc, LinMap, SVec};
use crate::scalars::Field;
use crate::tencat::{Category, CategorySpec, Obj, Perm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::sync::Arc;

pub use module::{action_iso_check, noether_skolem_descent, separability_section, ActionIso, Bimodule, Descent, Module};

/// Triple count above which associativity is checked on a seeded sample.
pub const FULL_ASSOC_LIMIT: usize = 200_000;
const ASSOC_SAMPLES: usize = 20_000;

#[derive(Debug, Clone)]
enum Rule {
    /// `table[i * n + j]` is the product of basis vectors `i` and `j`.
    Table(Arc<Vec<SVec>>),
    /// Factors in order; basis index is mixed radix with the first factor most significant.
    Tensor(Vec<Algebra>),
    Opposite(Algebra),
    /// Matrix units `e_ij` at index `i * n + j`.
    Matrix(usize),
}

#[derive(Debug)]
struct AlgebraData {
    name: String,
    carrier: Obj,
    rule: Rule,
    unit: SVec,
    gens: Vec<SVec>,
    labels: Option<Vec<String>>,
    group_action: Option<Vec<Perm>>,
}

/// An associative unital algebra whose underlying object is `carrier`.
#[derive(Debug, Clone)]
pub struct Algebra(Arc<AlgebraData>);

impl Algebra {
    /// Builds an algebra from its full table and validates it.
    pub fn from_table(name: impl Into<String>, carrier: Obj, table: Vec<SVec>, unit: SVec) -> Result<Algebra> {
        let n = carrier.dim();
        if table.len() != n * n {
            return invalid(format!("structure table has {} entries, expected {}", table.len(), n * n));
        }
        if table.iter().chain(std::iter::once(&unit)).any(|v| v.max_index().is_some_and(|m| m >= n)) {
            return invalid("structure constant index out of range");
        }
        let k = carrier.field().clone();
        let a = Self::raw(name.into(), carrier, Rule::Table(Arc::new(table)), unit, None, &k);
        a.validate()?;
        Ok(a)
    }

    fn raw(name: String, carrier: Obj, rule: Rule, unit: SVec, gens: Option<Vec<SVec>>, k: &Field) -> Algebra {
        let n = carrier.dim();
        let gens = gens.unwrap_or_else(|| (0..n).map(|i| SVec::unit(i, k)).collect());
        Algebra(Arc::new(AlgebraData { name, carrier, rule, unit, gens, labels: None, group_action: None }))
    }

    fn edit(&self, f: impl FnOnce(&mut AlgebraData)) -> Algebra {
        let d = &self.0;
        let mut data = AlgebraData {
            name: d.name.clone(),
            carrier: d.carrier.clone(),
            rule: d.rule.clone(),
            unit: d.unit.clone(),
            gens: d.gens.clone(),
            labels: d.labels.clone(),
            group_action: d.group_action.clone(),
        };
        f(&mut data);
        Algebra(Arc::new(data))
    }

    pub fn with_name(&self, name: impl Into<String>) -> Algebra {
        let name = name.into();
        self.edit(|d| d.name = name)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Algebra> {
        if labels.len() != self.dim() {
            return invalid("one label per basis vector is required");
        }
        Ok(self.edit(|d| d.labels = Some(labels)))
    }

    /// Attaches a permutation action on the basis; each permutation must be an automorphism.
    pub fn with_group_action(&self, perms: Vec<Perm>) -> Result<Algebra> {
        let n = self.dim();
        if perms.iter().any(|p| p.len() != n) {
            return invalid("group action permutations must act on the basis");
        }
        for (gi, p) in perms.iter().enumerate() {
            let g = |v: &SVec| v.map_indices(|i| p[i] as usize);
            if g(self.unit()) != *self.unit() {
                return Err(verification("group action", format!("generator {gi}"), "unit not fixed"));
            }
            for i in 0..n {
                for j in 0..n {
                    let lhs = g(&self.mul_basis(i, j));
                    let rhs = self.mul_basis(p[i] as usize, p[j] as usize);
                    if lhs != rhs {
                        return Err(verification("group action", format!("generator {gi}, basis ({i},{j})"), "not multiplicative"));
                    }
                }
            }
        }
        Ok(self.edit(|d| d.group_action = Some(perms)))
    }

    /// Declares a generating set used by generator-reduced checks.
    pub fn with_gens(&self, gens: Vec<SVec>) -> Algebra {
        self.edit(|d| d.gens = gens)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }
    pub fn carrier(&self) -> &Obj {
        &self.0.carrier
    }
    pub fn category(&self) -> &Category {
        self.0.carrier.category()
    }
    pub fn field(&self) -> &Field {
        self.0.carrier.field()
    }
    pub fn dim(&self) -> usize {
        self.0.carrier.dim()
    }
    pub fn grade(&self, i: usize) -> usize {
        self.0.carrier.grade(i)
    }
    pub fn unit(&self) -> &SVec {
        &self.0.unit
    }
    pub fn gens(&self) -> &[SVec] {
        &self.0.gens
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }
    pub fn group_action(&self) -> Option<&[Perm]> {
        self.0.group_action.as_deref()
    }
    pub fn basis(&self, i: usize) -> SVec {
        SVec::unit(i, self.field())
    }

    /// Factors when this algebra was built by [`Algebra::tensor`].
    pub fn tensor_factors(&self) -> Option<&[Algebra]> {
        match &self.0.rule {
            Rule::Tensor(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_matrix_algebra(&self) -> bool {
        matches!(self.0.rule, Rule::Matrix(_))
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SVec {
        let k = self.field();
        match &self.0.rule {
            Rule::Table(t) => t[i * self.dim() + j].clone(),
            Rule::Matrix(n) => {
                let (a, b) = (i / n, i % n);
                let (c, d) = (j / n, j % n);
                if b == c {
                    SVec::unit(a * n + d, k)
                } else {
                    SVec::new()
                }
            }
            Rule::Opposite(inner) => {
                let s = self.category().beta(self.grade(i), self.grade(j));
                let p = inner.mul_basis(j, i);
                if s < 0 {
                    p.neg()
                } else {
                    p
                }
            }
            Rule::Tensor(factors) => {
                let a = decode(i, factors);
                let b = decode(j, factors);
                let cat = self.category();
                let mut sign = 1i8;
                if !matches!(cat.spec(), CategorySpec::Vec | CategorySpec::Rep(_)) {
                    for kk in 0..factors.len() {
                        for l in kk + 1..factors.len() {
                            sign *= cat.beta(factors[l].grade(a[l]), factors[kk].grade(b[kk]));
                        }
                    }
                }
                let mut out = vec![(0usize, if sign < 0 { -k.one() } else { k.one() })];
                for (f, alg) in factors.iter().enumerate() {
                    let p = alg.mul_basis(a[f], b[f]);
                    if p.is_zero() {
                        return SVec::new();
                    }
                    let d = alg.dim();
                    let mut next = Vec::with_capacity(out.len() * p.nnz());
                    for (idx, c) in &out {
                        for (pi, pc) in p.iter() {
                            next.push((idx * d + pi, c * pc));
                        }
                    }
                    out = next;
                }
                SVec::from_pairs(out)
            }
        }
    }

    pub fn mul(&self, x: &SVec, y: &SVec) -> SVec {
        let mut acc = Acc::default();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = self.mul_basis(*i, *j);
                if !p.is_zero() {
                    acc.add_scaled(&(a * b), &p);
                }
            }
        }
        acc.finish()
    }

    /// Left multiplication `x ↦ a·x`.
    pub fn left_mul(&self, a: &SVec) -> LinMap {
        LinMap::from_fn(self.dim(), self.dim(), |j| self.mul(a, &SVec::unit(j, self.field())))
    }

    /// Right multiplication `x ↦ x·a`.
    pub fn right_mul(&self, a: &SVec) -> LinMap {
        LinMap::from_fn(self.dim(), self.dim(), |j| self.mul(&SVec::unit(j, self.field()), a))
    }

    /// Whether `a` is an invariant element: supported in degree zero and fixed by the group.
    pub fn is_invariant(&self, a: &SVec) -> bool {
        if a.iter().any(|(i, _)| self.grade(*i) != 0) {
            return false;
        }
        if let Some(act) = self.carrier().action() {
            if act.iter().any(|g| g.apply(a) != *a) {
                return false;
            }
        }
        if let Some(perms) = self.group_action() {
            if perms.iter().any(|p| a.map_indices(|i| p[i] as usize) != *a) {
                return false;
            }
        }
        true
    }

    /// The morphisms `λ_a` and `ρ_a` for an invariant element `a`.
    pub fn lambda_rho(&self, a: &SVec) -> Result<(LinMap, LinMap)> {
        if !self.is_invariant(a) {
            return invalid("λ/ρ need an invariant element");
        }
        Ok((self.left_mul(a), self.right_mul(a)))
    }

    /// Materialized structure constants.
    pub fn table(&self) -> Vec<SVec> {
        let n = self.dim();
        (0..n * n).into_par_iter().map(|ij| self.mul_basis(ij / n, ij % n)).collect()
    }

    pub fn opposite(&self) -> Algebra {
        if let Rule::Opposite(inner) = &self.0.rule {
            return inner.clone();
        }
        let k = self.field().clone();
        let mut a = Self::raw(
            format!("{}^op", self.name()),
            self.carrier().clone(),
            Rule::Opposite(self.clone()),
            self.unit().clone(),
            Some(self.gens().to_vec()),
            &k,
        );
        if let Some(p) = self.group_action() {
            a = a.edit(|d| d.group_action = Some(p.to_vec()));
        }
        a
    }

    /// `self ⊗ other`, with the Koszul sign from moving factors of the right past the left.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        Algebra::tensor_all(&[self.clone(), other.clone()])
    }

    pub fn tensor_all(factors: &[Algebra]) -> Result<Algebra> {
        let first = factors.first().ok_or_else(|| Error::Invalid("empty tensor product".into()))?;
        let cat = first.category().clone();
        if factors.iter().any(|f| *f.category() != cat) {
            return Err(Error::Mismatch("tensor factors live in different categories".into()));
        }
        let mut flat = Vec::new();
        for f in factors {
            match &f.0.rule {
                Rule::Tensor(inner) => flat.extend(inner.iter().cloned()),
                _ => flat.push(f.clone()),
            }
        }
        if flat.len() == 1 {
            return Ok(flat[0].clone());
        }
        let mut carrier = flat[0].carrier().clone();
        for f in &flat[1..] {
            carrier = carrier.tensor(f.carrier())?;
        }
        let k = cat.field().clone();
        let unit = flat.iter().skip(1).fold(flat[0].unit().clone(), |u, f| kron_vec(&u, f.unit(), f.dim()));
        let total = carrier.dim();
        let mut gens = Vec::new();
        for (fi, f) in flat.iter().enumerate() {
            for g in f.gens() {
                let mut v = SVec::unit(0, &k);
                for (fj, h) in flat.iter().enumerate() {
                    v = kron_vec(&v, if fi == fj { g } else { h.unit() }, h.dim());
                }
                gens.push(v);
            }
        }
        debug_assert!(gens.iter().all(|g| g.max_index().map_or(true, |m| m < total)));
        let name = flat.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join("⊗");
        let mut a = Self::raw(name, carrier, Rule::Tensor(flat.clone()), unit, Some(gens), &k);
        if flat.iter().all(|f| f.group_action().is_some()) {
            let ng = flat[0].group_action().map_or(0, |p| p.len());
            if flat.iter().all(|f| f.group_action().map_or(0, |p| p.len()) == ng) {
                let perms = (0..ng)
                    .map(|g| {
                        (0..total)
                            .map(|i| {
                                let c = decode(i, &flat);
                                encode(&c.iter().zip(&flat).map(|(&x, f)| f.group_action().unwrap()[g][x] as usize).collect::<Vec<_>>(), &flat)
                                    as u32
                            })
                            .collect()
                    })
                    .collect();
                a = a.edit(|d| d.group_action = Some(perms));
            }
        }
        Ok(a)
    }

    /// `A^{⊗n}`; the unit algebra when `n = 0`.
    pub fn power(&self, n: usize) -> Result<Algebra> {
        if n == 0 {
            return Ok(unit_algebra(self.category()));
        }
        Algebra::tensor_all(&vec![self.clone(); n])
    }

    /// Index of the basis tensor `(i_1, ..., i_r)` for a tensor product algebra.
    pub fn tensor_index(&self, parts: &[usize]) -> usize {
        match &self.0.rule {
            Rule::Tensor(f) => encode(parts, f),
            _ => parts[0],
        }
    }

    pub fn tensor_parts(&self, i: usize) -> Vec<usize> {
        match &self.0.rule {
            Rule::Tensor(f) => decode(i, f),
            _ => vec![i],
        }
    }

    /// Checks the morphism, unit and associativity axioms.
    pub fn validate(&self) -> Result<()> {
        self.check_morphism()?;
        self.check_unit()?;
        self.check_associativity(0)
    }

    /// The product respects grading, and commutes with the group action in `Rep`.
    pub fn check_morphism(&self) -> Result<()> {
        let n = self.dim();
        let cat = self.category();
        if !self.is_invariant(self.unit()) {
            return Err(verification("algebra morphism", "unit", "unit is not invariant"));
        }
        for i in 0..n {
            for j in 0..n {
                let g = cat.grade_add(self.grade(i), self.grade(j));
                if let Some((kk, _)) = self.mul_basis(i, j).iter().find(|(kk, _)| self.grade(*kk) != g) {
                    return Err(verification("algebra morphism", format!("basis ({i},{j})"), format!("term {kk} has the wrong degree")));
                }
            }
        }
        if let Some(act) = self.carrier().action() {
            for (gi, g) in act.iter().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        let lhs = g.apply(&self.mul_basis(i, j));
                        let rhs = self.mul(&g.cols[i], &g.cols[j]);
                        if lhs != rhs {
                            return Err(verification("algebra morphism", format!("generator {gi}, basis ({i},{j})"), "not equivariant"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        let u = self.unit();
        for i in 0..self.dim() {
            let e = self.basis(i);
            if self.mul(u, &e) != e || self.mul(&e, u) != e {
                return Err(verification("unit law", format!("basis {i}"), "1·x or x·1 differs from x"));
            }
        }
        Ok(())
    }

    /// Associativity on all basis triples, or on a seeded sample when there are too many.
    pub fn check_associativity(&self, seed: u64) -> Result<()> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = if n.pow(3) <= FULL_ASSOC_LIMIT {
            (0..n.pow(3)).map(|t| (t / (n * n), (t / n) % n, t % n)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..ASSOC_SAMPLES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        };
        let bad = triples.par_iter().find_first(|&&(a, b, c)| {
            let ab = self.mul_basis(a, b);
            let bc = self.mul_basis(b, c);
            self.mul(&ab, &self.basis(c)) != self.mul(&self.basis(a), &bc)
        });
        match bad {
            Some((a, b, c)) => Err(verification("associativity", format!("basis ({a},{b},{c})"), "(ab)c ≠ a(bc)")),
            None => Ok(()),
        }
    }

    /// The centre `{z : zg = gz for all generators g}`, ignoring Koszul signs.
    pub fn center(&self) -> Vec<SVec> {
        let n = self.dim();
        let k = self.field();
        let mut rows = Vec::new();
        for g in self.gens() {
            let comm = self.left_mul(g).sub(&self.right_mul(g));
            rows.extend(comm.transpose().cols);
        }
        kernel_of_rows(n, rows, k)
    }

    /// Whether `f`, given on basis vectors, is an algebra homomorphism `self → target`.
    pub fn is_homomorphism_to(&self, target: &Algebra, f: &LinMap) -> bool {
        let n = self.dim();
        if f.apply(self.unit()) != *target.unit() {
            return false;
        }
        (0..n * n).into_par_iter().all(|ij| {
            let (i, j) = (ij / n, ij % n);
            f.apply(&self.mul_basis(i, j)) == target.mul(&f.cols[i], &f.cols[j])
        })
    }

    /// Whether `f` is an algebra anti-homomorphism `self → self` with the super sign.
    pub fn is_anti_homomorphism(&self, f: &LinMap) -> bool {
        let n = self.dim();
        let op = self.opposite();
        if f.apply(self.unit()) != *self.unit() {
            return false;
        }
        (0..n * n).into_par_iter().all(|ij| {
            let (i, j) = (ij / n, ij % n);
            f.apply(&self.mul_basis(i, j)) == op.mul(&f.cols[i], &f.cols[j])
        })
    }
}

fn decode(mut i: usize, factors: &[Algebra]) -> Vec<usize> {
    let mut out = vec![0; factors.len()];
    for (f, a) in factors.iter().enumerate().rev() {
        out[f] = i % a.dim();
        i /= a.dim();
    }
    out
}

fn encode(parts: &[usize], factors: &[Algebra]) -> usize {
    parts.iter().zip(factors).fold(0, |acc, (&p, a)| acc * a.dim() + p)
}

/// Kronecker product of sparse vectors, `v` indexing the slower coordinate.
pub fn kron_vec(v: &SVec, w: &SVec, wdim: usize) -> SVec {
    let mut out = Vec::with_capacity(v.nnz() * w.nnz());
    for (i, a) in v.iter() {
        for (j, b) in w.iter() {
            out.push((i * wdim + j, a * b));
        }
    }
    SVec::from_pairs(out)
}

/// The unit algebra `1`.
pub fn unit_algebra(cat: &Category) -> Algebra {
    let k = cat.field().clone();
    let carrier = cat.unit();
    Algebra::raw("1".into(), carrier, Rule::Table(Arc::new(vec![SVec::unit(0, &k)])), SVec::unit(0, &k), None, &k)
}

/// The internal endomorphism algebra `End(V) = V ⊗ V*` with matrix units `e_ij` at `i·n + j`.
pub fn end_algebra(v: &Obj) -> Result<Algebra> {
    let n = v.dim();
    let cat = v.category();
    let k = v.field().clone();
    let grades: Vec<usize> = (0..n * n).map(|ij| cat.grade_add(v.grade(ij / n), cat.grade_neg(v.grade(ij % n)))).collect();
    let carrier = match v.action() {
        Some(act) => {
            let mats = act
                .iter()
                .map(|g| {
                    let gi = g.inverse(&k).expect("group action is invertible");
                    conjugation_action(g, &gi)
                })
                .collect();
            cat.rep_from_matrices(mats)?
        }
        None => cat.graded(grades),
    };
    let unit = SVec::from_pairs((0..n).map(|i| (i * n + i, k.one())));
    let gens = (0..n * n).map(|i| SVec::unit(i, &k)).collect();
    Ok(Algebra::raw(format!("End({n})"), carrier, Rule::Matrix(n), unit, Some(gens), &k))
}

/// The map `X ↦ g X g⁻¹` on matrix units.
pub fn conjugation_action(g: &LinMap, ginv: &LinMap) -> LinMap {
    let n = g.rows;
    let rows_of_inv = ginv.transpose();
    LinMap::from_fn(n * n, n * n, |ij| {
        let (i, j) = (ij / n, ij % n);
        let mut out = Vec::new();
        for (r, a) in g.cols[i].iter() {
            for (c, b) in rows_of_inv.cols[j].iter() {
                out.push((r * n + c, a * b));
            }
        }
        SVec::from_pairs(out)
    })
}

/// The symmetry `τ(a ⊗ b) = β(|a|,|b|) b ⊗ a` on `A ⊗ B`, as a map into `B ⊗ A`.
pub fn swap_map(a: &Algebra, b: &Algebra) -> LinMap {
    let (na, nb) = (a.dim(), b.dim());
    let cat = a.category();
    let k = a.field().clone();
    LinMap::from_fn(nb * na, na * nb, |ij| {
        let (i, j) = (ij / nb, ij % nb);
        let s = cat.beta(a.grade(i), b.grade(j));
        let c = if s < 0 { -k.one() } else { k.one() };
        SVec::single(j * na + i, c)
    })
}

/// Applies the symmetry of `A ⊗ A` to a vector.
pub fn swap_vec(a: &Algebra, v: &SVec) -> SVec {
    let n = a.dim();
    let cat = a.category();
    SVec::from_pairs(v.iter().map(|(ij, c)| {
        let (i, j) = (ij / n, ij % n);
        let c = if cat.beta(a.grade(i), a.grade(j)) < 0 { -c } else { c.clone() };
        (j * n + i, c)
    }))
}

pub fn describe_vec(a: &Algebra, v: &SVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| match a.labels() {
            Some(l) if *i < l.len() => format!("({c})·{}", l[*i]),
            _ => format!("({c})·e{i}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::examples::{clifford_line, matrix_algebra, quaternions};
    use super::*;
    use crate::scalars::Field;

    #[test]
    fn opposite_is_an_involution_and_conjugation_identifies_h_with_hop() {
        let h = quaternions();
        let op = h.opposite();
        assert!(op.opposite().table() == h.table());
        let k = h.field().clone();
        let conj = LinMap::from_fn(4, 4, |i| if i == 0 { SVec::unit(0, &k) } else { SVec::single(i, -k.one()) });
        assert!(h.is_homomorphism_to(&op, &conj));
        assert!(!h.is_homomorphism_to(&h, &conj));
    }

    #[test]
    fn quaternion_left_multiplication_by_i() {
        let h = quaternions();
        let (l, r) = h.lambda_rho(&h.basis(1)).unwrap();
        let k = h.field();
        assert_eq!(l.apply(&h.basis(0)), h.basis(1));
        assert_eq!(l.apply(&h.basis(1)), SVec::single(0, -k.one()));
        assert_eq!(l.compose(&r), r.compose(&l));
    }

    #[test]
    fn m2_tensor_m2_is_central_simple() {
        let m2 = matrix_algebra(&Field::rationals(), 2);
        let m4 = m2.tensor(&m2).unwrap();
        assert_eq!(m4.dim(), 16);
        m4.check_associativity(0).unwrap();
        assert_eq!(m4.center().len(), 1);
        let k = Field::rationals();
        let unit_alg = unit_algebra(&Category::vec(&k));
        assert_eq!(unit_alg.tensor(&m2).unwrap().table(), m2.table());
    }

    #[test]
    fn super_end_has_even_and_odd_halves() {
        let k = Field::rationals();
        let cat = Category::super_vec(&k);
        let e = end_algebra(&cat.super_dims(1, 1)).unwrap();
        let odd = (0..4).filter(|&i| e.grade(i) == 1).count();
        assert_eq!((4 - odd, odd), (2, 2));
        e.validate().unwrap();
    }

    #[test]
    fn graded_tensor_of_clifford_lines_anticommutes() {
        let k = Field::rationals();
        let c = clifford_line(&Category::super_vec(&k));
        let c2 = c.tensor(&c).unwrap();
        c2.check_associativity(0).unwrap();
        // x1 = x⊗1 at index 2, x2 = 1⊗x at index 1
        let xy = c2.mul_basis(2, 1);
        let yx = c2.mul_basis(1, 2);
        assert_eq!(xy, yx.neg());
    }
}
