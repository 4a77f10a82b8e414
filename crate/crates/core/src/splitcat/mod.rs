//! Finite instances of the bigraded category `D̃` of modules over `A_{n,m} = A^{⊗n} ⊗ (A^op)^{⊗m}`,
//! its twisted symmetry, and the `ℤ`-graded quotient `D` in which `A` splits.
//!
//! Everything here works over `Vec`. A component in bidegree `(n, m)` stores, for each of its
//! `n + m` tensor factors, the matrices by which the basis of `A` (or `A^op`) acts.

pub mod boxprod;
pub mod graded;
pub mod modm;

use crate::algebra::{kron_vec, unit_algebra, Algebra};
use crate::azumaya::{check_coxeter_relations, coxeter_word, permute_factors, pi_at, verify_s_structure, word_product, SStructure};
use crate::error::{invalid, verification, Error, Result};
use crate::linalg::{kernel_of_rows, kernel_with_free, Acc, LinMap, SVec};
use crate::tencat::CategorySpec;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

pub use boxprod::{box_tensor, check_box_tensor, BoxCheck, BoxTensor};
pub use graded::{
    alpha_beta, d_hom, end_x_iso, split_case_check, uni_char_check, x_object, x_power_iso, zigzag_check, DMor, DObject, EndXReport,
    SplitCaseReport, UniCharCase, XZigzag,
};
pub use modm::{ModMCategory, ModMHom};

/// Largest `dim(A)^{n+m}` accepted by [`a_nm`].
pub const A_NM_BOUND: usize = 1 << 20;
/// Largest component dimension built by the tensor product.
pub const COMPONENT_BOUND: usize = 1 << 14;

pub(crate) fn require_vec(a: &Algebra) -> Result<()> {
    if *a.category().spec() != CategorySpec::Vec {
        return Err(Error::Mismatch(format!("{} does not live in Vec", a.name())));
    }
    Ok(())
}

/// `A_{n,m} = A^{⊗n} ⊗ (A^op)^{⊗m}`.
pub fn a_nm(a: &Algebra, n: usize, m: usize) -> Result<Algebra> {
    require_vec(a)?;
    let size = (a.dim() as u128).pow((n + m) as u32);
    if size > A_NM_BOUND as u128 {
        return Err(Error::Bound { what: format!("dim A_{{{n},{m}}}"), size: size.min(usize::MAX as u128) as usize, bound: A_NM_BOUND });
    }
    if n + m == 0 {
        return Ok(unit_algebra(a.category()));
    }
    let mut factors = vec![a.clone(); n];
    factors.extend(std::iter::repeat(a.opposite()).take(m));
    Algebra::tensor_all(&factors)
}

#[derive(Debug)]
struct ComponentData {
    base: Algebra,
    plus: usize,
    minus: usize,
    dim: usize,
    acts: Vec<Vec<LinMap>>,
}

/// A module over `A_{n,m}`: `n` commuting left actions of `A` followed by `m` of `A^op`.
///
/// For a minus factor, `factor(f)[i]` is the matrix of the `A^op` basis vector `i`, i.e. a right action of `A`.
#[derive(Debug, Clone)]
pub struct Component(Arc<ComponentData>);

impl Component {
    /// Builds a component and checks it against the generators of `A`.
    pub fn new(base: &Algebra, plus: usize, minus: usize, dim: usize, acts: Vec<Vec<LinMap>>) -> Result<Component> {
        require_vec(base)?;
        if acts.len() != plus + minus {
            return invalid("one action list per tensor factor is required");
        }
        let n = base.dim();
        if acts.iter().any(|f| f.len() != n || f.iter().any(|m| m.rows != dim || m.ncols() != dim)) {
            return invalid("each factor needs dim(A) square action matrices");
        }
        let c = Component::raw(base, plus, minus, dim, acts);
        c.validate()?;
        Ok(c)
    }

    fn raw(base: &Algebra, plus: usize, minus: usize, dim: usize, acts: Vec<Vec<LinMap>>) -> Component {
        Component(Arc::new(ComponentData { base: base.clone(), plus, minus, dim, acts }))
    }

    fn validate(&self) -> Result<()> {
        let a = self.base();
        let n = a.dim();
        let f_count = self.factors();
        for f in 0..f_count {
            let op = f >= self.plus();
            if !self.matrix(f, a.unit()).is_identity() {
                return Err(verification("component", format!("factor {f}"), "the unit does not act as the identity"));
            }
            for (gi, g) in a.gens().iter().enumerate() {
                let mg = self.matrix(f, g);
                let bad = (0..n).into_par_iter().find_first(|&j| {
                    let bj = a.basis(j);
                    let prod = if op { a.mul(&bj, g) } else { a.mul(g, &bj) };
                    mg.compose(&self.0.acts[f][j]) != self.matrix(f, &prod)
                });
                if let Some(j) = bad {
                    return Err(verification("component", format!("factor {f}, generator {gi}, basis {j}"), "action is not multiplicative"));
                }
            }
        }
        for f in 0..f_count {
            for h in f + 1..f_count {
                for g in a.gens() {
                    for g2 in a.gens() {
                        let (x, y) = (self.matrix(f, g), self.matrix(h, g2));
                        if x.compose(&y) != y.compose(&x) {
                            return Err(verification("component", format!("factors {f} and {h}"), "actions do not commute"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// An object of `C` placed in bidegree `(0, 0)`.
    pub fn vector(base: &Algebra, dim: usize) -> Component {
        Component::raw(base, 0, 0, dim, Vec::new())
    }

    /// `A` acting on itself on the left, in bidegree `(1, 0)`.
    pub fn left_regular(a: &Algebra) -> Result<Component> {
        Component::new(a, 1, 0, a.dim(), vec![(0..a.dim()).map(|i| a.left_mul(&a.basis(i))).collect()])
    }

    /// `A^op` acting on `A` by right multiplication, in bidegree `(0, 1)`.
    pub fn right_regular(a: &Algebra) -> Result<Component> {
        Component::new(a, 0, 1, a.dim(), vec![(0..a.dim()).map(|i| a.right_mul(&a.basis(i))).collect()])
    }

    /// `E`: the bimodule `A` in bidegree `(1, 1)`.
    pub fn bimodule(a: &Algebra) -> Result<Component> {
        let n = a.dim();
        let left = (0..n).map(|i| a.left_mul(&a.basis(i))).collect();
        let right = (0..n).map(|i| a.right_mul(&a.basis(i))).collect();
        Component::new(a, 1, 1, n, vec![left, right])
    }

    /// The regular module of `A_n`: `A_{0,n}` for `n ≥ 0` and `A_{−n,0}` for `n ≤ 0`.
    pub fn regular_graded(a: &Algebra, n: i64) -> Result<Component> {
        let r = n.unsigned_abs() as usize;
        let one = if n >= 0 { Component::right_regular(a)? } else { Component::left_regular(a)? };
        let mut out = Component::vector(a, 1);
        for _ in 0..r {
            out = out.tensor(&one)?;
        }
        Ok(out)
    }

    pub fn base(&self) -> &Algebra {
        &self.0.base
    }
    pub fn plus(&self) -> usize {
        self.0.plus
    }
    pub fn minus(&self) -> usize {
        self.0.minus
    }
    pub fn bidegree(&self) -> (usize, usize) {
        (self.0.plus, self.0.minus)
    }
    /// `m − n` for bidegree `(n, m)`.
    pub fn degree(&self) -> i64 {
        self.0.minus as i64 - self.0.plus as i64
    }
    pub fn dim(&self) -> usize {
        self.0.dim
    }
    pub fn factors(&self) -> usize {
        self.0.plus + self.0.minus
    }
    pub fn factor(&self, f: usize) -> &[LinMap] {
        &self.0.acts[f]
    }

    /// Matrix of `x ∈ A` acting through factor `f`.
    pub fn matrix(&self, f: usize, x: &SVec) -> LinMap {
        let d = self.dim();
        let acts = &self.0.acts[f];
        LinMap::from_fn(d, d, |c| {
            let mut acc = Acc::default();
            for (i, s) in x.iter() {
                acc.add_scaled(s, &acts[*i].cols[c]);
            }
            acc.finish()
        })
    }

    /// `x ∈ A` acting through factor `f` on `v`.
    pub fn act_on(&self, f: usize, x: &SVec, v: &SVec) -> SVec {
        let mut acc = Acc::default();
        for (i, s) in x.iter() {
            acc.add_scaled(s, &self.0.acts[f][*i].apply(v));
        }
        acc.finish()
    }

    /// An element of `A_{n,m}`, indexed in mixed radix with factor 0 most significant.
    pub fn act_elem(&self, x: &SVec, v: &SVec) -> SVec {
        let n = self.base().dim();
        let fc = self.factors();
        let mut acc = Acc::default();
        for (idx, s) in x.iter() {
            let mut w = v.clone();
            let mut rest = *idx;
            for f in (0..fc).rev() {
                w = self.0.acts[f][rest % n].apply(&w);
                rest /= n;
            }
            acc.add_scaled(s, &w);
        }
        acc.finish()
    }

    /// `M ⊗ N` with factors ordered `M⁺, N⁺, M⁻, N⁻`.
    pub fn tensor(&self, o: &Component) -> Result<Component> {
        if self.base().dim() != o.base().dim() || self.base().name() != o.base().name() {
            return Err(Error::Mismatch("components over different algebras".into()));
        }
        let (dm, dn) = (self.dim(), o.dim());
        if dm * dn > COMPONENT_BOUND {
            return Err(Error::Bound { what: "component dimension".into(), size: dm * dn, bound: COMPONENT_BOUND });
        }
        let k = self.base().field().clone();
        let (im, inn) = (LinMap::identity(dm, &k), LinMap::identity(dn, &k));
        let left = |f: usize| -> Vec<LinMap> { self.factor(f).par_iter().map(|m| m.kron(&inn)).collect() };
        let right = |f: usize| -> Vec<LinMap> { o.factor(f).par_iter().map(|m| im.kron(m)).collect() };
        let mut acts = Vec::with_capacity(self.factors() + o.factors());
        acts.extend((0..self.plus()).map(left));
        acts.extend((0..o.plus()).map(right));
        acts.extend((self.plus()..self.factors()).map(left));
        acts.extend((o.plus()..o.factors()).map(right));
        Ok(Component::raw(self.base(), self.plus() + o.plus(), self.minus() + o.minus(), dm * dn, acts))
    }

    pub fn direct_sum(&self, o: &Component) -> Result<Component> {
        if self.bidegree() != o.bidegree() {
            return Err(Error::Mismatch("direct sum of components in different bidegrees".into()));
        }
        let (d1, d2) = (self.dim(), o.dim());
        let acts = (0..self.factors())
            .map(|f| {
                self.factor(f)
                    .iter()
                    .zip(o.factor(f))
                    .map(|(x, y)| {
                        let mut cols = x.cols.clone();
                        cols.extend(y.cols.iter().map(|c| c.map_indices(|i| i + d1)));
                        LinMap { rows: d1 + d2, cols }
                    })
                    .collect()
            })
            .collect();
        Ok(Component::raw(self.base(), self.plus(), self.minus(), d1 + d2, acts))
    }

    /// `M*` in bidegree `(m, n)`: the old minus factors act first, all by transposes.
    pub fn dual(&self) -> Component {
        let order: Vec<usize> = (self.plus()..self.factors()).chain(0..self.plus()).collect();
        let acts = order.iter().map(|&f| self.factor(f).iter().map(|m| m.transpose()).collect()).collect();
        Component::raw(self.base(), self.minus(), self.plus(), self.dim(), acts)
    }

    /// First `(factor, generator)` at which `map` fails to intertwine, if any.
    pub fn morphism_witness(&self, t: &Component, map: &LinMap) -> Option<String> {
        if self.bidegree() != t.bidegree() {
            return Some(format!("bidegrees {:?} and {:?} differ", self.bidegree(), t.bidegree()));
        }
        if map.ncols() != self.dim() || map.rows != t.dim() {
            return Some("map has the wrong shape".into());
        }
        for f in 0..self.factors() {
            for (gi, g) in self.base().gens().iter().enumerate() {
                let lhs = map.compose(&self.matrix(f, g));
                let rhs = t.matrix(f, g).compose(map);
                if let Some(c) = (0..self.dim()).find(|&c| lhs.cols[c] != rhs.cols[c]) {
                    return Some(format!("factor {f}, generator {gi}, basis vector {c}"));
                }
            }
        }
        None
    }

    pub fn is_morphism_to(&self, t: &Component, map: &LinMap) -> bool {
        self.morphism_witness(t, map).is_none()
    }

    /// Basis of `Hom_{A_{n,m}}(self, t)`; empty when the bidegrees differ.
    pub fn hom(&self, t: &Component) -> Vec<LinMap> {
        if self.bidegree() != t.bidegree() {
            return Vec::new();
        }
        let (ds, dt) = (self.dim(), t.dim());
        let k = self.base().field().clone();
        let mut rows: Vec<SVec> = Vec::new();
        for f in 0..self.factors() {
            for g in self.base().gens() {
                let s = self.matrix(f, g);
                let tt = t.matrix(f, g).transpose();
                let block: Vec<SVec> = (0..dt * ds)
                    .into_par_iter()
                    .map(|rc| {
                        let (r, c) = (rc / ds, rc % ds);
                        let mut pairs: Vec<_> = s.cols[c].iter().map(|(kk, x)| (r * ds + kk, x.clone())).collect();
                        pairs.extend(tt.cols[r].iter().map(|(kk, x)| (kk * ds + c, -x.clone())));
                        SVec::from_pairs(pairs)
                    })
                    .filter(|v| !v.is_zero())
                    .collect();
                rows.extend(block);
            }
        }
        kernel_of_rows(ds * dt, rows, &k)
            .into_iter()
            .map(|v| {
                let mut cols: Vec<Vec<_>> = vec![Vec::new(); ds];
                for (rc, x) in v.iter() {
                    cols[rc % ds].push((rc / ds, x.clone()));
                }
                LinMap { rows: dt, cols: cols.into_iter().map(SVec::from_pairs).collect() }
            })
            .collect()
    }

    /// Morita step `D̃_{n+1,m+1} → D̃_{n,m}`: the vectors on which the last plus and last minus factor agree.
    pub fn reduce_once(&self) -> Result<Component> {
        if self.plus() == 0 || self.minus() == 0 {
            return invalid("Morita reduction needs a plus and a minus factor");
        }
        let (fp, fm) = (self.plus() - 1, self.factors() - 1);
        let k = self.base().field().clone();
        let d = self.dim();
        let mut rows = Vec::new();
        for g in self.base().gens() {
            rows.extend(self.matrix(fp, g).sub(&self.matrix(fm, g)).transpose().cols.into_iter().filter(|r| !r.is_zero()));
        }
        let (basis, free) = kernel_with_free(d, rows, &k);
        let na = self.base().dim();
        if basis.len() * na != d {
            return Err(verification(
                "Morita reduction",
                format!("bidegree {:?}", self.bidegree()),
                format!("invariant part has dimension {} but dim M / dim A = {}/{}", basis.len(), d, na),
            ));
        }
        let pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let w = basis.len();
        let acts = (0..self.factors())
            .filter(|&f| f != fp && f != fm)
            .map(|f| {
                self.factor(f)
                    .par_iter()
                    .map(|m| LinMap {
                        rows: w,
                        cols: basis
                            .iter()
                            .map(|b| SVec::from_pairs(m.apply(b).iter().filter_map(|(i, x)| pos.get(i).map(|&p| (p, x.clone())))))
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        Ok(Component::raw(self.base(), self.plus() - 1, self.minus() - 1, w, acts))
    }

    /// The representative in bidegree `(0, n)` or `(n, 0)`.
    pub fn normalized(&self) -> Result<Component> {
        let mut c = self.clone();
        while c.plus() > 0 && c.minus() > 0 {
            c = c.reduce_once()?;
        }
        Ok(c)
    }

    /// `Σ π_{pq} act_f(p) act_{f+1}(q)` applied to `v`.
    fn pi_pair(&self, s: &SStructure, f: usize, v: &SVec) -> SVec {
        let n = self.base().dim();
        let mut acc = Acc::default();
        for (pq, c) in s.pi().iter() {
            let w = self.0.acts[f + 1][pq % n].apply(v);
            acc.add_scaled(c, &self.0.acts[f][pq / n].apply(&w));
        }
        acc.finish()
    }

    /// The action of `π_{i_1} ⋯ π_{i_k}` on the factors starting at `start`.
    pub fn apply_pi_word(&self, s: &SStructure, start: usize, word: &[usize], v: &SVec) -> SVec {
        word.iter().rev().fold(v.clone(), |w, &i| self.pi_pair(s, start + i, &w))
    }
}

/// `p ↦ p + n` on the first block of `m`, `m + j ↦ j` on the second.
pub fn block_swap(m: usize, n: usize) -> Vec<usize> {
    (0..m + n).map(|p| if p < m { p + n } else { p - m }).collect()
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn compose_perm(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

/// The twisted symmetry `τ̃: M ⊗ N → N ⊗ M`.
///
/// On the plus factors this is `λ` of `π(σ)^{-1}` and on the minus factors `ρ_{π(σ′)}`, where `σ, σ′`
/// are the block transpositions along which the plain swap moves the factors.
pub fn tau_tilde(s: &SStructure, m: &Component, n: &Component) -> Result<LinMap> {
    let t = TwistedSwap::new(s, m, n)?;
    let k = m.base().field().clone();
    Ok(LinMap::from_fn(t.dm * t.dn, t.dm * t.dn, |col| t.apply(&SVec::unit(col, &k))))
}

/// `τ̃_{M,N}(v)` for a single vector of `M ⊗ N`.
pub fn tau_tilde_apply(s: &SStructure, m: &Component, n: &Component, v: &SVec) -> Result<SVec> {
    Ok(TwistedSwap::new(s, m, n)?.apply(v))
}

struct TwistedSwap<'a> {
    s: &'a SStructure,
    target: Component,
    dm: usize,
    dn: usize,
    wp: Vec<usize>,
    wm: Vec<usize>,
}

impl<'a> TwistedSwap<'a> {
    fn new(s: &'a SStructure, m: &Component, n: &Component) -> Result<TwistedSwap<'a>> {
        if s.algebra().dim() != m.base().dim() {
            return Err(Error::Mismatch("S-structure and components disagree".into()));
        }
        Ok(TwistedSwap {
            s,
            target: n.tensor(m)?,
            dm: m.dim(),
            dn: n.dim(),
            wp: coxeter_word(&invert_perm(&block_swap(m.plus(), n.plus()))),
            wm: coxeter_word(&invert_perm(&block_swap(m.minus(), n.minus()))),
        })
    }

    fn apply(&self, v: &SVec) -> SVec {
        let (dm, dn) = (self.dm, self.dn);
        let swapped = v.map_indices(|c| (c % dn) * dm + c / dn);
        let w = self.target.apply_pi_word(self.s, 0, &self.wp, &swapped);
        self.target.apply_pi_word(self.s, self.target.plus(), &self.wm, &w)
    }
}

/// A finite set with a `±` decomposition, up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Biset {
    pub plus: usize,
    pub minus: usize,
}

/// An automorphism of a standard biset: a permutation of each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisetAut {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl BisetAut {
    pub fn identity(x: Biset) -> BisetAut {
        BisetAut { plus: (0..x.plus).collect(), minus: (0..x.minus).collect() }
    }
    /// `self ∘ o`.
    pub fn compose(&self, o: &BisetAut) -> BisetAut {
        BisetAut { plus: compose_perm(&self.plus, &o.plus), minus: compose_perm(&self.minus, &o.minus) }
    }
    pub fn inverse(&self) -> BisetAut {
        BisetAut { plus: invert_perm(&self.plus), minus: invert_perm(&self.minus) }
    }
    /// As a permutation of all `n + m` factors of `A_x`.
    pub fn as_perm(&self) -> Vec<usize> {
        let n = self.plus.len();
        self.plus.iter().copied().chain(self.minus.iter().map(|&p| p + n)).collect()
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

impl Biset {
    pub fn new(plus: usize, minus: usize) -> Biset {
        Biset { plus, minus }
    }
    pub fn size(&self) -> usize {
        self.plus + self.minus
    }
    pub fn automorphisms(&self) -> Vec<BisetAut> {
        let mp = permutations(self.minus);
        permutations(self.plus)
            .into_iter()
            .flat_map(|p| mp.iter().map(move |m| BisetAut { plus: p.clone(), minus: m.clone() }))
            .collect()
    }
}

fn pi_on_power(s: &SStructure, perm: &[usize]) -> Result<SVec> {
    let n = perm.len();
    let a = s.algebra();
    if n < 2 {
        return Ok(a.power(n)?.unit().clone());
    }
    let power = a.power(n)?;
    let pis: Vec<SVec> = (0..n - 1).map(|i| pi_at(s, &power, n, i)).collect();
    check_coxeter_relations(&power, &pis)?;
    Ok(word_product(&power, &pis, &coxeter_word(perm)))
}

/// `π(σ) ∈ Γ(A_x)^×`; on the minus part the homomorphism takes values in `(A^op)^{⊗m}`.
pub fn biset_pi(s: &SStructure, x: Biset, sigma: &BisetAut) -> Result<SVec> {
    let a = s.algebra();
    require_vec(a)?;
    if sigma.plus.len() != x.plus || sigma.minus.len() != x.minus {
        return invalid("automorphism does not match the biset");
    }
    a_nm(a, x.plus, x.minus)?;
    let plus = pi_on_power(s, &sigma.plus)?;
    let op = verify_s_structure(&a.opposite(), s.pi().clone(), s.eps().clone())?;
    let minus = pi_on_power(&op, &sigma.minus)?;
    Ok(kron_vec(&plus, &minus, a.dim().pow(x.minus as u32)))
}

/// Outcome of the homomorphism and conjugation checks for `π` on a biset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisetPiCheck {
    pub pairs_checked: usize,
    pub automorphisms: usize,
}

/// `π(σσ′) = π(σ)π(σ′)` and `σ_*(π(σ′)) = π(σσ′σ^{-1})` on all pairs, or `samples` seeded pairs.
pub fn check_biset_pi(s: &SStructure, x: Biset, samples: usize, seed: u64) -> Result<BisetPiCheck> {
    let a = s.algebra();
    let ax = a_nm(a, x.plus, x.minus)?;
    let auts = x.automorphisms();
    let pis: Vec<SVec> = auts.iter().map(|g| biset_pi(s, x, g)).collect::<Result<_>>()?;
    let index = |g: &BisetAut| auts.iter().position(|h| h == g).expect("closed under composition");
    if pis[index(&BisetAut::identity(x))] != *ax.unit() {
        return Err(verification("biset π", "identity", "π(id) ≠ 1"));
    }
    let mut pairs: Vec<(usize, usize)> = (0..auts.len()).flat_map(|i| (0..auts.len()).map(move |j| (i, j))).collect();
    if pairs.len() > samples {
        pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        pairs.truncate(samples);
    }
    for &(i, j) in &pairs {
        let (g, h) = (&auts[i], &auts[j]);
        let gh = index(&g.compose(h));
        if ax.mul(&pis[i], &pis[j]) != pis[gh] {
            return Err(verification("biset π", format!("pair ({i},{j})"), "π is not multiplicative"));
        }
        let conj = index(&g.compose(h).compose(&g.inverse()));
        let perm = g.as_perm();
        let mut acc = Acc::default();
        for (t, c) in pis[j].iter() {
            acc.add_scaled(c, &permute_factors(a, &ax, &perm, *t));
        }
        if acc.finish() != pis[conj] {
            return Err(verification("biset π", format!("pair ({i},{j})"), "σ_*(π(σ′)) ≠ π(σσ′σ⁻¹)"));
        }
    }
    Ok(BisetPiCheck { pairs_checked: pairs.len(), automorphisms: auts.len() })
}

/// An object of `D̃`: finitely many homogeneous components.
#[derive(Debug, Clone)]
pub struct BigradedObject {
    parts: BTreeMap<(usize, usize), Component>,
}

/// Placement of the summand `M_p ⊗ N_q` inside `(M ⊗ N)_{p+q}`.
type Layout = BTreeMap<(usize, usize), Vec<(((usize, usize), (usize, usize)), usize)>>;

impl BigradedObject {
    pub fn homogeneous(c: Component) -> BigradedObject {
        BigradedObject { parts: BTreeMap::from([(c.bidegree(), c)]) }
    }

    pub fn from_parts(parts: Vec<Component>) -> Result<BigradedObject> {
        let mut out: BTreeMap<(usize, usize), Component> = BTreeMap::new();
        for c in parts {
            let key = c.bidegree();
            let merged = match out.remove(&key) {
                Some(prev) => prev.direct_sum(&c)?,
                None => c,
            };
            out.insert(key, merged);
        }
        Ok(BigradedObject { parts: out })
    }

    pub fn parts(&self) -> &BTreeMap<(usize, usize), Component> {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts.values().map(|c| c.dim()).sum()
    }

    /// Offset of each bidegree in the total carrier, in key order.
    pub fn offsets(&self) -> BTreeMap<(usize, usize), usize> {
        let mut off = 0;
        self.parts
            .iter()
            .map(|(k, c)| {
                let o = off;
                off += c.dim();
                (*k, o)
            })
            .collect()
    }

    fn layout(&self, o: &BigradedObject) -> Layout {
        let mut out: Layout = BTreeMap::new();
        let mut used: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (p, c) in &self.parts {
            for (q, d) in &o.parts {
                let key = (p.0 + q.0, p.1 + q.1);
                let off = used.entry(key).or_insert(0);
                out.entry(key).or_default().push(((*p, *q), *off));
                *off += c.dim() * d.dim();
            }
        }
        out
    }

    /// Componentwise tensor product; summands of equal bidegree are stacked in key order.
    pub fn tensor(&self, o: &BigradedObject) -> Result<BigradedObject> {
        let mut parts = BTreeMap::new();
        for (key, list) in self.layout(o) {
            let mut acc: Option<Component> = None;
            for ((p, q), _) in list {
                let t = self.parts[&p].tensor(&o.parts[&q])?;
                acc = Some(match acc {
                    Some(prev) => prev.direct_sum(&t)?,
                    None => t,
                });
            }
            parts.insert(key, acc.expect("nonempty layout entry"));
        }
        Ok(BigradedObject { parts })
    }

    /// `τ̃_{M,N}` assembled blockwise on the total carriers.
    pub fn symmetry(s: &SStructure, m: &BigradedObject, n: &BigradedObject) -> Result<LinMap> {
        let (mn, nm) = (m.tensor(n)?, n.tensor(m)?);
        let (lay_mn, lay_nm) = (m.layout(n), n.layout(m));
        let (off_mn, off_nm) = (mn.offsets(), nm.offsets());
        let total = mn.dim();
        let mut cols = vec![SVec::new(); total];
        for (key, list) in &lay_mn {
            for ((p, q), off) in list {
                let block = tau_tilde(s, &m.parts[p], &n.parts[q])?;
                let target_off = lay_nm[key].iter().find(|(pq, _)| *pq == (*q, *p)).map(|(_, o)| *o).expect("swapped summand");
                let (src, dst) = (off_mn[key] + off, off_nm[key] + target_off);
                for (c, v) in block.cols.into_iter().enumerate() {
                    cols[src + c] = v.map_indices(|i| i + dst);
                }
            }
        }
        Ok(LinMap { rows: total, cols })
    }
}

/// `τ̃_{M,N}` for objects of `D̃`, with the tensor product it acts on.
pub fn dtilde_tensor(s: &SStructure, m: &BigradedObject, n: &BigradedObject) -> Result<(BigradedObject, LinMap)> {
    Ok((m.tensor(n)?, BigradedObject::symmetry(s, m, n)?))
}

#[cfg(test)]
mod tests;
