//! S-structures: verification, derived identities, permutation elements and self-duality.

pub mod check;
pub mod eta;

use crate::algebra::{describe_vec, end_algebra, kron_vec, swap_vec, Algebra};
use crate::error::{invalid, verification, Result};
use crate::linalg::{Acc, SVec};
use crate::scalars::FieldElem;
use crate::tencat::Obj;
use rayon::prelude::*;

pub use check::{anti_involution_split, azumaya_check, enumerate_s_structures, AntiSplit, AzumayaReport};
pub use eta::{eta, eta_tilde_square_class, EtaResult};

/// Work bound (basis elements × terms) under which identities are checked on every basis vector.
pub const FULL_CHECK_LIMIT: usize = 1_000_000;

/// How much of an identity was checked directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    /// Every basis element.
    Full,
    /// Algebra generators only, after establishing that both sides are algebra maps.
    Generators,
    /// A seeded sample of basis elements.
    Sampled,
}

/// A verified S-structure `(π, ε)` on an algebra.
#[derive(Debug, Clone)]
pub struct SStructure {
    algebra: Algebra,
    pair: Algebra,
    pi: SVec,
    eps: SVec,
    degree: FieldElem,
    coverage: Coverage,
}

impl SStructure {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    /// The algebra `A ⊗ A` in which `π` lives.
    pub fn pair(&self) -> &Algebra {
        &self.pair
    }
    pub fn pi(&self) -> &SVec {
        &self.pi
    }
    pub fn eps(&self) -> &SVec {
        &self.eps
    }
    /// `udeg(A) = ε(1)`.
    pub fn degree(&self) -> &FieldElem {
        &self.degree
    }
    pub fn coverage(&self) -> Coverage {
        self.coverage
    }

    pub fn eps_of(&self, x: &SVec) -> FieldElem {
        x.dot(&self.eps).unwrap_or_else(|| self.algebra.field().zero())
    }

    /// `(−π, −ε)`.
    pub fn negated(&self) -> SStructure {
        SStructure {
            algebra: self.algebra.clone(),
            pair: self.pair.clone(),
            pi: self.pi.neg(),
            eps: self.eps.neg(),
            degree: -&self.degree,
            coverage: self.coverage,
        }
    }

    /// Whether both structures coincide.
    pub fn same_as(&self, o: &SStructure) -> bool {
        self.pi == o.pi && self.eps == o.eps
    }

    /// `(id ⊗ ε)` applied to a vector of `A ⊗ A`.
    pub fn id_eps(&self, v: &SVec) -> SVec {
        let n = self.algebra.dim();
        let mut acc = Acc::default();
        for (ij, c) in v.iter() {
            if let Some(e) = self.eps.get(ij % n) {
                acc.add(ij / n, &(c * e));
            }
        }
        acc.finish()
    }

    /// `(ε ⊗ id)` applied to a vector of `A ⊗ A`.
    pub fn eps_id(&self, v: &SVec) -> SVec {
        let n = self.algebra.dim();
        let mut acc = Acc::default();
        for (ij, c) in v.iter() {
            if let Some(e) = self.eps.get(ij / n) {
                acc.add(ij % n, &(c * e));
            }
        }
        acc.finish()
    }
}

/// Checks `τ = λ_π ρ_π` and `μ = (id ⊗ ε) ρ_π`, plus invariance of `π` and `ε`.
pub fn verify_s_structure(a: &Algebra, pi: SVec, eps: SVec) -> Result<SStructure> {
    let n = a.dim();
    if n == 0 {
        return invalid("the zero algebra carries no S-structure");
    }
    let k = a.field().clone();
    let pair = a.tensor(a)?;
    check_functional(a, &eps)?;
    if !pair.is_invariant(&pi) {
        return Err(verification("S-structure", "π", "π is not an invariant element of A⊗A"));
    }
    let degree = eps.dot(a.unit()).unwrap_or_else(|| k.zero());
    let s = SStructure { algebra: a.clone(), pair: pair.clone(), pi, eps, degree, coverage: Coverage::Full };

    // μ = (id ⊗ ε) ρ_π; the right side is left A-linear in the first slot, so x = 1 suffices
    // once the work is large.
    let mu_full = n * n * s.pi.nnz() <= FULL_CHECK_LIMIT;
    let firsts: Vec<SVec> = if mu_full { (0..n).map(|i| a.basis(i)).collect() } else { vec![a.unit().clone()] };
    let bad = (0..firsts.len() * n).into_par_iter().find_map_first(|t| {
        let (x, y) = (&firsts[t / n], a.basis(t % n));
        let lhs = a.mul(x, &y);
        let rhs = s.id_eps(&pair.mul(&tensor_vec(a, x, &y), &s.pi));
        (lhs != rhs).then(|| (t, describe_vec(a, &lhs), describe_vec(a, &rhs)))
    });
    if let Some((t, l, r)) = bad {
        return Err(verification("μ = (id⊗ε)ρ_π", format!("x⊗y with y = e{}", t % n), format!("μ = {l}, (id⊗ε)ρ_π = {r}")));
    }

    // τ = λ_π ρ_π
    let tau_full = n * n * s.pi.nnz() * s.pi.nnz() <= FULL_CHECK_LIMIT;
    let coverage = if tau_full {
        let bad = (0..n * n).into_par_iter().find_first(|&ij| {
            let x = pair.basis(ij);
            pair.mul(&pair.mul(&s.pi, &x), &s.pi) != swap_vec(a, &x)
        });
        if let Some(ij) = bad {
            return Err(verification("τ = λ_π ρ_π", format!("basis e{}⊗e{}", ij / n, ij % n), "π·x·π ≠ τ(x)"));
        }
        Coverage::Full
    } else {
        // both sides are algebra automorphisms once π² = 1
        if pair.mul(&s.pi, &s.pi) != *pair.unit() {
            return Err(verification("τ = λ_π ρ_π", "π²", "π² ≠ 1, so conjugation by π is not an automorphism"));
        }
        for (gi, g) in pair.gens().iter().enumerate() {
            if pair.mul(&pair.mul(&s.pi, g), &s.pi) != swap_vec(a, g) {
                return Err(verification("τ = λ_π ρ_π", format!("generator {gi}"), "π·g·π ≠ τ(g)"));
            }
        }
        Coverage::Generators
    };
    Ok(SStructure { coverage, ..s })
}

/// `ε` is a morphism `A → 1`: supported in degree zero and group invariant.
fn check_functional(a: &Algebra, eps: &SVec) -> Result<()> {
    if eps.max_index().is_some_and(|m| m >= a.dim()) {
        return invalid("ε has an index outside the algebra");
    }
    if eps.iter().any(|(i, _)| a.grade(*i) != 0) {
        return Err(verification("S-structure", "ε", "ε is nonzero off degree zero"));
    }
    if let Some(act) = a.carrier().action() {
        for g in act {
            let moved = SVec::from_pairs((0..a.dim()).filter_map(|j| g.cols[j].dot(eps).map(|c| (j, c))));
            if moved != *eps {
                return Err(verification("S-structure", "ε", "ε is not invariant"));
            }
        }
    }
    if let Some(perms) = a.group_action() {
        for p in perms {
            if eps.map_indices(|i| p[i] as usize) != *eps {
                return Err(verification("S-structure", "ε", "ε is not invariant under the basis action"));
            }
        }
    }
    Ok(())
}

/// `x ⊗ y` in `A ⊗ A`.
pub fn tensor_vec(a: &Algebra, x: &SVec, y: &SVec) -> SVec {
    kron_vec(x, y, a.dim())
}

/// The canonical structure on `End(V)`: `ε` the categorical trace, `π` the symmetry of `V ⊗ V`.
pub fn canonical_end_s(v: &Obj) -> Result<SStructure> {
    let a = end_algebra(v)?;
    canonical_s_on(&a, v)
}

/// The canonical structure on an algebra built by [`end_algebra`] from `v`.
pub fn canonical_s_on(a: &Algebra, v: &Obj) -> Result<SStructure> {
    let n = v.dim();
    let cat = v.category();
    let k = v.field().clone();
    let sign = |g: usize| if cat.beta(g, g) < 0 { -k.one() } else { k.one() };
    let eps = SVec::from_pairs((0..n).map(|i| (i * n + i, sign(v.grade(i)))));
    let nn = n * n;
    let pi = SVec::from_pairs((0..nn).map(|ij| {
        let (i, j) = (ij / n, ij % n);
        ((i * n + j) * nn + (j * n + i), sign(v.grade(j)))
    }));
    verify_s_structure(a, pi, eps)
}

/// The structure `(π_A ⊗ π_B, ε_A ⊗ ε_B)` on `A ⊗ B`, reindexed to `(A⊗B) ⊗ (A⊗B)`.
pub fn product_structure(s: &SStructure, t: &SStructure) -> Result<SStructure> {
    let (a, b) = (s.algebra(), t.algebra());
    let ab = a.tensor(b)?;
    if ab.tensor_factors().map(|f| f.len()) != Some(2) && (a.tensor_factors().is_none() && b.tensor_factors().is_none()) {
        return invalid("product structure expects a two-factor tensor");
    }
    let (na, nb) = (a.dim(), b.dim());
    let nab = na * nb;
    let cat = a.category();
    let mut pairs = Vec::new();
    for (pq, c) in s.pi().iter() {
        let (p, q) = (pq / na, pq % na);
        for (rs, d) in t.pi().iter() {
            let (r, u) = (rs / nb, rs % nb);
            // a_p ⊗ a_q ⊗ b_r ⊗ b_u  ↦  (a_p ⊗ b_r) ⊗ (a_q ⊗ b_u)
            let sgn = cat.beta(a.grade(q), b.grade(r));
            let x = c * d;
            let x = if sgn < 0 { -x } else { x };
            pairs.push(((p * nb + r) * nab + (q * nb + u), x));
        }
    }
    let mut eps = Vec::new();
    for (i, x) in s.eps().iter() {
        for (j, y) in t.eps().iter() {
            eps.push((i * nb + j, x * y));
        }
    }
    verify_s_structure(&ab, SVec::from_pairs(pairs), SVec::from_pairs(eps))
}

/// Report of the identities that follow from the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedIdentities {
    pub pi_squared_is_one: bool,
    pub tau_fixes_pi: bool,
    pub dim_is_degree_squared: bool,
}

impl DerivedIdentities {
    pub fn all(&self) -> bool {
        self.pi_squared_is_one && self.tau_fixes_pi && self.dim_is_degree_squared
    }
}

/// `π² = 1`, `τ(π) = π` and `udim(A) = udeg(A)²`.
pub fn derived_identities(s: &SStructure) -> DerivedIdentities {
    let a = s.algebra();
    let udim = a.carrier().categorical_dimension();
    DerivedIdentities {
        pi_squared_is_one: s.pair.mul(&s.pi, &s.pi) == *s.pair.unit(),
        tau_fixes_pi: swap_vec(a, &s.pi) == s.pi,
        dim_is_degree_squared: udim == &s.degree * &s.degree,
    }
}

/// Adjacent transpositions `[i_1, ..., i_k]` with `σ = s_{i_1} ⋯ s_{i_k}`; `σ(i) = perm[i]`.
pub fn coxeter_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut found = Vec::new();
    'outer: loop {
        for i in 0..p.len().saturating_sub(1) {
            if p[i] > p[i + 1] {
                // σ = (σ ∘ s_i) ∘ s_i
                p.swap(i, i + 1);
                found.push(i);
                continue 'outer;
            }
        }
        break;
    }
    found.reverse();
    found
}

/// `π_i ∈ A^{⊗n}`: the structure element on factors `i, i+1`.
pub fn pi_at(s: &SStructure, power: &Algebra, n: usize, i: usize) -> SVec {
    let d = s.algebra().dim();
    let unit = s.algebra().unit();
    let mut acc = Acc::default();
    for (pq, c) in s.pi().iter() {
        let mut v = SVec::unit(0, s.algebra().field());
        for f in 0..n {
            let piece = if f == i {
                SVec::unit(pq / d, s.algebra().field())
            } else if f == i + 1 {
                SVec::unit(pq % d, s.algebra().field())
            } else {
                unit.clone()
            };
            v = kron_vec(&v, &piece, d);
        }
        acc.add_scaled(c, &v);
    }
    debug_assert_eq!(power.dim(), d.pow(n as u32));
    acc.finish()
}

/// `π(σ) ∈ Γ(A^{⊗n})` for a permutation of `n` factors, after verifying the Coxeter relations.
pub fn pi_of_permutation(s: &SStructure, n: usize, perm: &[usize]) -> Result<SVec> {
    if n < 2 || perm.len() != n {
        return invalid("π(σ) needs n ≥ 2 and a permutation of n factors");
    }
    let power = s.algebra().power(n)?;
    let pis: Vec<SVec> = (0..n - 1).map(|i| pi_at(s, &power, n, i)).collect();
    check_coxeter_relations(&power, &pis)?;
    Ok(word_product(&power, &pis, &coxeter_word(perm)))
}

/// `π_i² = 1`, `(π_i π_{i+1})³ = 1` and `π_i π_j = π_j π_i` for `|i − j| > 1`.
pub fn check_coxeter_relations(power: &Algebra, pis: &[SVec]) -> Result<()> {
    let one = power.unit();
    for (i, p) in pis.iter().enumerate() {
        if power.mul(p, p) != *one {
            return Err(verification("Coxeter relations", format!("π_{}", i + 1), "π_i² ≠ 1"));
        }
    }
    for i in 0..pis.len().saturating_sub(1) {
        let x = power.mul(&pis[i], &pis[i + 1]);
        let x3 = power.mul(&power.mul(&x, &x), &x);
        if x3 != *one {
            return Err(verification("braid relation", format!("π_{}π_{}", i + 1, i + 2), "(π_i π_{i+1})³ ≠ 1"));
        }
    }
    for i in 0..pis.len() {
        for j in i + 2..pis.len() {
            if power.mul(&pis[i], &pis[j]) != power.mul(&pis[j], &pis[i]) {
                return Err(verification("Coxeter relations", format!("π_{}, π_{}", i + 1, j + 1), "distant generators do not commute"));
            }
        }
    }
    Ok(())
}

pub fn word_product(power: &Algebra, pis: &[SVec], word: &[usize]) -> SVec {
    word.iter().fold(power.unit().clone(), |acc, &i| power.mul(&acc, &pis[i]))
}

/// `σ_*` on a basis tensor of `A^{⊗n}`: factor `i` moves to slot `σ(i)`, with the Koszul sign.
pub fn permute_factors(a: &Algebra, power: &Algebra, perm: &[usize], x: usize) -> SVec {
    let parts = power.tensor_parts(x);
    let parts = if perm.len() == 1 { vec![x] } else { parts };
    let cat = a.category();
    let mut sign = 1i8;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign *= cat.beta(a.grade(parts[i]), a.grade(parts[j]));
            }
        }
    }
    let mut out = vec![0; perm.len()];
    for (i, &p) in parts.iter().enumerate() {
        out[perm[i]] = p;
    }
    let k = a.field();
    SVec::single(power.tensor_index(&out), if sign < 0 { -k.one() } else { k.one() })
}

/// Report of the self-duality given by coevaluation `π` and evaluation `εμ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagReport {
    pub first: bool,
    pub second: bool,
    pub coevaluation_symmetric: bool,
    pub evaluation_symmetric: bool,
    pub recovered_dimension: String,
}

impl ZigzagReport {
    pub fn all(&self) -> bool {
        self.first && self.second && self.coevaluation_symmetric && self.evaluation_symmetric
    }
}

pub fn self_duality_zigzag(s: &SStructure) -> ZigzagReport {
    let a = s.algebra();
    let n = a.dim();
    let k = a.field().clone();
    let cat = a.category();
    let ev = |x: &SVec, y: &SVec| s.eps_of(&a.mul(x, y));
    // (ev ⊗ id)(x ⊗ π) and (id ⊗ ev)(π ⊗ x)
    let first = (0..n).into_par_iter().all(|x| {
        let mut acc = Acc::default();
        for (pq, c) in s.pi().iter() {
            let e = ev(&a.basis(x), &a.basis(pq / n));
            acc.add(pq % n, &(c * &e));
        }
        acc.finish() == a.basis(x)
    });
    let second = (0..n).into_par_iter().all(|x| {
        let mut acc = Acc::default();
        for (pq, c) in s.pi().iter() {
            let e = ev(&a.basis(pq % n), &a.basis(x));
            acc.add(pq / n, &(c * &e));
        }
        acc.finish() == a.basis(x)
    });
    let evaluation_symmetric = (0..n * n).into_par_iter().all(|ij| {
        let (i, j) = (ij / n, ij % n);
        let lhs = ev(&a.basis(i), &a.basis(j));
        let rhs = ev(&a.basis(j), &a.basis(i));
        lhs == if cat.beta(a.grade(i), a.grade(j)) < 0 { -rhs } else { rhs }
    });
    let mut dim = k.zero();
    for (pq, c) in swap_vec(a, s.pi()).iter() {
        dim += &(c * &ev(&a.basis(pq / n), &a.basis(pq % n)));
    }
    ZigzagReport {
        first,
        second,
        coevaluation_symmetric: swap_vec(a, s.pi()) == *s.pi(),
        evaluation_symmetric,
        recovered_dimension: dim.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::{matrix_algebra, quaternions};
    use crate::scalars::{ratio, Field};
    use crate::tencat::Category;

    pub(crate) fn quaternion_structure() -> SStructure {
        let h = quaternions();
        let k = h.field().clone();
        let half = k.from_rat(ratio(1, 2));
        let pi = SVec::from_pairs([(0, half.clone()), (5, -&half), (10, -&half), (15, -&half)]);
        let eps = SVec::single(0, k.from_int(2));
        verify_s_structure(&h, pi, eps).unwrap()
    }

    #[test]
    fn quaternion_structure_and_normalization() {
        let s = quaternion_structure();
        assert_eq!(s.degree().to_string(), "2");
        assert!(derived_identities(&s).all());
        assert!(derived_identities(&s.negated()).all());
        let bad = verify_s_structure(s.algebra(), s.pi().clone(), SVec::single(0, s.algebra().field().one()));
        assert!(bad.is_err());
        let z = self_duality_zigzag(&s);
        assert!(z.all());
        assert_eq!(z.recovered_dimension, "4");
    }

    #[test]
    fn canonical_structures() {
        let k = Field::rationals();
        let s = canonical_end_s(&Category::vec(&k).trivial(2)).unwrap();
        assert_eq!(s.degree().to_string(), "2");
        let m2 = matrix_algebra(&k, 2);
        assert_eq!(s.algebra().table(), m2.table());
        let odd = canonical_end_s(&Category::super_vec(&k).super_dims(0, 1)).unwrap();
        assert_eq!(odd.degree().to_string(), "-1");
        let sup = canonical_end_s(&Category::super_vec(&k).super_dims(1, 1)).unwrap();
        assert!(derived_identities(&sup).all());
        let one = canonical_end_s(&Category::vec(&k).trivial(1)).unwrap();
        assert_eq!(one.pi(), &SVec::unit(0, &k));
    }

    #[test]
    fn permutation_elements() {
        let s = quaternion_structure();
        let a = s.algebra();
        let power = a.power(3).unwrap();
        let pis: Vec<SVec> = (0..2).map(|i| pi_at(&s, &power, 3, i)).collect();
        check_coxeter_relations(&power, &pis).unwrap();
        assert_eq!(word_product(&power, &pis, &[0, 1, 0]), word_product(&power, &pis, &[1, 0, 1]));
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let x = pi_of_permutation(&s, 3, &p).unwrap();
            let inv: Vec<usize> = (0..3).map(|i| p.iter().position(|&v| v == i).unwrap()).collect();
            let y = pi_of_permutation(&s, 3, &inv).unwrap();
            assert_eq!(power.mul(&x, &y), *power.unit());
            for b in [0, 5, 17, 63] {
                let conj = power.mul(&power.mul(&x, &power.basis(b)), &y);
                assert_eq!(conj, permute_factors(a, &power, &p, b));
            }
        }
    }
}
