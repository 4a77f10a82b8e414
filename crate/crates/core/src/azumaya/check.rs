use super::{verify_s_structure, Coverage, SStructure, FULL_CHECK_LIMIT};
use crate::algebra::Algebra;
use crate::error::{invalid, verification, Error, Result};
use crate::linalg::{kernel_of_rows, Acc, LinMap, SVec};
use crate::scalars::{sqrt, FieldElem};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Outcome of the Azumaya test on `A ⊗ A^op → End(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AzumayaReport {
    pub dim: usize,
    pub rank: usize,
    pub bijective: bool,
    /// `ρ_π` read through the self-duality `εμ`; present when an S-structure was supplied.
    pub phi_rank: Option<usize>,
    pub phi_agrees_with_action: Option<bool>,
}

impl AzumayaReport {
    pub fn phi_invertible(&self) -> Option<bool> {
        self.phi_rank.map(|r| r == self.dim * self.dim)
    }
}

fn sign_elem(s: i8, c: FieldElem) -> FieldElem {
    if s < 0 {
        -c
    } else {
        c
    }
}

/// Column `(i, j)` is `x ↦ β(|b_j|,|x|) b_i x b_j`, written in the matrix units of `End(A)`.
fn action_column(a: &Algebra, i: usize, j: usize) -> SVec {
    let n = a.dim();
    let cat = a.category();
    let mut pairs = Vec::new();
    for x in 0..n {
        let s = cat.beta(a.grade(j), a.grade(x));
        let y = a.mul(&a.mul_basis(i, x), &a.basis(j));
        for (r, c) in y.iter() {
            pairs.push((r * n + x, sign_elem(s, c.clone())));
        }
    }
    SVec::from_pairs(pairs)
}

pub fn azumaya_check(a: &Algebra, s: Option<&SStructure>) -> Result<AzumayaReport> {
    let n = a.dim();
    if n == 0 {
        return invalid("the zero algebra is not Azumaya");
    }
    let act = LinMap::from_fn(n * n, n * n, |ij| action_column(a, ij / n, ij % n));
    let rank = act.rank();
    let (phi_rank, phi_agrees_with_action) = match s {
        None => (None, None),
        Some(s) => {
            if s.algebra().table() != a.table() {
                return invalid("the S-structure belongs to a different algebra");
            }
            let phi = LinMap::from_fn(n * n, n * n, |ab| {
                let w = s.pair().mul(&s.pair().basis(ab), s.pi());
                // z ↦ Σ w_pq ε(e_q z) e_p
                let mut pairs = Vec::new();
                for z in 0..n {
                    let mut acc = Acc::default();
                    for (pq, c) in w.iter() {
                        let e = s.eps_of(&a.mul_basis(pq % n, z));
                        if !e.is_zero() {
                            acc.add(pq / n, &(c * &e));
                        }
                    }
                    pairs.extend(acc.finish().iter().map(|(p, c)| (p * n + z, c.clone())));
                }
                SVec::from_pairs(pairs)
            });
            (Some(phi.rank()), Some(phi == act))
        }
    };
    Ok(AzumayaReport { dim: n, rank, bijective: rank == n * n, phi_rank, phi_agrees_with_action })
}

/// All S-structures on `A`: the pair `±(π, ε)` when `π` is determined up to scale.
pub fn enumerate_s_structures(a: &Algebra) -> Result<Vec<SStructure>> {
    let n = a.dim();
    if n == 0 {
        return invalid("the zero algebra carries no S-structure");
    }
    let k = a.field().clone();
    let pair = a.tensor(a)?;
    let nn = n * n;
    let free: Vec<usize> = (0..nn).filter(|&i| pair.grade(i) == 0).collect();
    let pos = |i: usize| free.binary_search(&i).ok();
    // unknown w on the degree-zero part of A ⊗ A; each equation is a row over `free`
    let mut rows: Vec<SVec> = Vec::new();
    let restrict = |v: &SVec| -> Option<SVec> {
        let mut out = Vec::new();
        for (i, c) in v.iter() {
            out.push((pos(*i)?, c.clone()));
        }
        Some(SVec::from_pairs(out))
    };
    for g in pair.gens() {
        let tg = super::swap_vec(a, g);
        // w·g − τ(g)·w, column by column
        let cols: Vec<SVec> = free.iter().map(|&f| pair.mul(&pair.basis(f), g).sub(&pair.mul(&tg, &pair.basis(f)))).collect();
        rows.extend(transpose_rows(&cols, nn));
    }
    if let Some(act) = pair.carrier().action() {
        for m in act {
            let cols: Vec<SVec> = free.iter().map(|&f| m.cols[f].sub(&pair.basis(f))).collect();
            rows.extend(transpose_rows(&cols, nn));
        }
    }
    if let Some(perms) = pair.group_action() {
        for p in perms {
            for &f in &free {
                let t = p[f] as usize;
                if t != f {
                    let r = SVec::from_pairs([(f, k.one()), (t, -k.one())]);
                    rows.push(restrict(&r).ok_or_else(|| Error::Invalid("basis action leaves degree zero".into()))?);
                }
            }
        }
    }
    let sol = kernel_of_rows(free.len(), rows, &k);
    if sol.len() != 1 {
        return Err(Error::SolutionDim { context: format!("S-structure elements on {}", a.name()), found: sol.len(), expected: 1 });
    }
    let w0 = sol[0].map_indices(|i| free[i]);
    let sq = pair.mul(&w0, &w0);
    let (u0, uc) = pair.unit().leading().cloned().expect("nonzero unit");
    let d = sq.get(u0).cloned().unwrap_or_else(|| k.zero()) * uc.inv().expect("nonzero");
    if d.is_zero() || sq != pair.unit().scale(&d) {
        return Err(verification("S-structure", "w²", "w² is not a nonzero scalar"));
    }
    let target = d.inv().expect("nonzero");
    let c = sqrt(&target)?.ok_or_else(|| Error::MissingScalar(format!("a square root of {target} (π = c·w with c² = {target})")))?;
    let pi = w0.scale(&c);
    let eps = solve_eps(a, &pair, &pi)?;
    let s = verify_s_structure(a, pi, eps)?;
    let t = s.negated();
    Ok(vec![s, t])
}

fn transpose_rows(cols: &[SVec], nrows: usize) -> Vec<SVec> {
    let mut rows: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter() {
            rows[*i].push((j, x.clone()));
        }
    }
    rows.into_iter().filter(|r| !r.is_empty()).map(SVec::from_pairs).collect()
}

/// The unique `ε` with `(id ⊗ ε)((1 ⊗ y)π) = y` for all `y`.
fn solve_eps(a: &Algebra, pair: &Algebra, pi: &SVec) -> Result<SVec> {
    let n = a.dim();
    let k = a.field().clone();
    let mut cols: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); n];
    for y in 0..n {
        let v = pair.mul(&super::tensor_vec(a, a.unit(), &a.basis(y)), pi);
        for (pq, c) in v.iter() {
            cols[pq % n].push((y * n + pq / n, c.clone()));
        }
    }
    let m = LinMap { rows: n * n, cols: cols.into_iter().map(SVec::from_pairs).collect() };
    let b = SVec::from_pairs((0..n).map(|y| (y * n + y, k.one())));
    m.solve(&b, &k).ok_or_else(|| verification("S-structure", "ε", "no functional satisfies μ = (id⊗ε)ρ_π"))
}

/// Outcome of transporting an S-structure along `A ⊗ A → End(A)`, `a ⊗ b ↦ (x ↦ ± a x σ(b))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiSplit {
    pub anti_homomorphism: bool,
    pub involutive: bool,
    pub homomorphism: bool,
    pub bijective: bool,
    /// `s` with `ε_End ∘ Φ = s·ε`, if any.
    pub eps_sign: Option<i8>,
    /// Whether `(Φ⊗Φ)(π)` acts on `A ⊗ A` as `s` times the symmetry.
    pub pi_transported: bool,
    pub pi_coverage: Coverage,
}

impl AntiSplit {
    pub fn is_s_split(&self) -> bool {
        self.anti_homomorphism && self.homomorphism && self.bijective && self.eps_sign.is_some() && self.pi_transported
    }
}

/// Number of sampled `v ⊗ w` in the transported-`π` check when the full check is too large.
pub const PI_SAMPLES: usize = 96;

pub fn anti_involution_split(s: &SStructure, sigma: &LinMap, seed: u64) -> Result<AntiSplit> {
    let a = s.algebra();
    let n = a.dim();
    let cat = a.category();
    if sigma.rows != n || sigma.ncols() != n {
        return invalid("σ must be an endomorphism of A");
    }
    let anti_homomorphism = a.is_anti_homomorphism(sigma);
    let involutive = sigma.compose(sigma).is_identity();
    let b = a.tensor(a)?;
    // Φ(e_i ⊗ e_j) as a map on A
    let phi_of = |ij: usize| -> LinMap {
        let (i, j) = (ij / n, ij % n);
        let sj = &sigma.cols[j];
        LinMap::from_fn(n, n, |x| {
            let y = a.mul(&a.mul_basis(i, x), sj);
            if cat.beta(a.grade(j), a.grade(x)) < 0 {
                y.neg()
            } else {
                y
            }
        })
    };
    let phis: Vec<LinMap> = (0..n * n).into_par_iter().map(phi_of).collect();
    let phi_vec = |v: &SVec| -> LinMap {
        v.iter().fold(LinMap::zero(n, n), |m, (i, c)| m.add(&phis[*i].scale(c)))
    };
    let homomorphism = b.gens().par_iter().all(|g| {
        let pg = phi_vec(g);
        (0..n * n).all(|y| phi_vec(&b.mul(g, &b.basis(y))) == pg.compose(&phis[y]))
    }) && phi_vec(b.unit()).is_identity();
    let flat = LinMap::from_fn(n * n, n * n, |ij| {
        SVec::from_pairs(phis[ij].cols.iter().enumerate().flat_map(|(x, c)| c.iter().map(move |(r, v)| (r * n + x, v.clone()))))
    });
    let bijective = flat.rank() == n * n;

    // ε_End is the supertrace
    let k = a.field().clone();
    let tr = |m: &LinMap| -> FieldElem {
        let mut t = k.zero();
        for i in 0..n {
            if let Some(c) = m.cols[i].get(i) {
                let c = if cat.beta(a.grade(i), a.grade(i)) < 0 { -c } else { c.clone() };
                t += &c;
            }
        }
        t
    };
    let eps_b = |ij: usize| s.eps_of(&a.basis(ij / n)) * s.eps_of(&a.basis(ij % n));
    let eps_sign = [1i8, -1].into_iter().find(|&sg| {
        (0..n * n).into_par_iter().all(|ij| tr(&phis[ij]) == sign_elem(sg, eps_b(ij)))
    });

    // π_B = (π)_{13}(π)_{24} on A ⊗ A ⊗ A ⊗ A, regrouped into B ⊗ B
    let mut pi_b: Vec<(usize, usize, FieldElem)> = Vec::new();
    for (pq, c) in s.pi().iter() {
        let (p, q) = (pq / n, pq % n);
        for (rs, d) in s.pi().iter() {
            let (r, u) = (rs / n, rs % n);
            let sg = cat.beta(a.grade(q), a.grade(r));
            pi_b.push((p * n + r, q * n + u, sign_elem(sg, c * d)));
        }
    }
    let pi_sign = eps_sign.unwrap_or(1);
    let check_pair = |vw: usize| -> bool {
        let (v, w) = (vw / n, vw % n);
        let mut acc = Acc::default();
        for (x, y, c) in &pi_b {
            let sg = cat.beta(b.grade(*y), a.grade(v));
            let fv = &phis[*x].cols[v];
            let gw = &phis[*y].cols[w];
            if fv.is_zero() || gw.is_zero() {
                continue;
            }
            let coef = sign_elem(sg, c.clone());
            for (i, ci) in fv.iter() {
                for (j, cj) in gw.iter() {
                    acc.add(i * n + j, &(&coef * &(ci * cj)));
                }
            }
        }
        let expect = sign_elem(pi_sign * cat.beta(a.grade(v), a.grade(w)), k.one());
        acc.finish() == SVec::single(w * n + v, expect)
    };
    let full = n * n * pi_b.len() <= FULL_CHECK_LIMIT;
    let samples: Vec<usize> = if full {
        (0..n * n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = sample(&mut rng, n * n, PI_SAMPLES.min(n * n)).into_vec();
        v.sort_unstable();
        v
    };
    let pi_transported = eps_sign.is_some() && samples.par_iter().all(|&vw| check_pair(vw));
    Ok(AntiSplit {
        anti_homomorphism,
        involutive,
        homomorphism,
        bijective,
        eps_sign,
        pi_transported,
        pi_coverage: if full { Coverage::Full } else { Coverage::Sampled },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::{matrix_algebra, quaternions, split_product};
    use crate::scalars::Field;

    #[test]
    fn quaternions_are_azumaya_and_split_by_conjugation() {
        let h = quaternions();
        let ss = enumerate_s_structures(&h).unwrap();
        assert_eq!(ss.len(), 2);
        let degs: Vec<String> = ss.iter().map(|s| s.degree().to_string()).collect();
        assert!(degs.contains(&"2".to_string()) && degs.contains(&"-2".to_string()));
        let r = azumaya_check(&h, Some(&ss[0])).unwrap();
        assert!(r.bijective);
        assert_eq!(r.phi_invertible(), Some(true));
        assert_eq!(r.phi_agrees_with_action, Some(true));
        let k = h.field().clone();
        let conj = LinMap::from_fn(4, 4, |i| SVec::single(i, if i == 0 { k.one() } else { -k.one() }));
        for s in &ss {
            let sp = anti_involution_split(s, &conj, 0).unwrap();
            assert!(sp.is_s_split(), "{sp:?}");
            assert!(sp.involutive);
        }
        let id = LinMap::identity(4, &k);
        assert!(!anti_involution_split(&ss[0], &id, 0).unwrap().anti_homomorphism);
    }

    #[test]
    fn split_product_is_not_azumaya() {
        let k = Field::rationals();
        let r = azumaya_check(&split_product(&k), None).unwrap();
        assert!(!r.bijective);
        assert_eq!(r.rank, 2);
        assert!(enumerate_s_structures(&split_product(&k)).is_err());
        let m2 = enumerate_s_structures(&matrix_algebra(&k, 2)).unwrap();
        assert_eq!(m2.len(), 2);
    }
}
