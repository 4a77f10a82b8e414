//! The biset tensor product `⊠`, used as a cross-check of `⊗` on small bidegrees.

use super::{a_nm, biset_pi, Biset, BisetAut, Component};
use crate::azumaya::{permute_factors, SStructure};
use crate::error::{verification, Error, Result};
use crate::linalg::{Acc, Echelon, LinMap, SVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Largest `n + m` for which `⊠` is built.
pub const BOX_BOUND: usize = 3;

/// `Q = ⊕_γ γ*(M ⊗ N)` with its `Aut(x)`-action, the invariants and their projection to `M ⊗ N`.
#[derive(Debug, Clone)]
pub struct BoxTensor {
    pub x: Biset,
    /// Summands of `Q` in order; `γ` is a bijection `x → y ⊔ z` written in standard position.
    pub gammas: Vec<BisetAut>,
    pub q: Component,
    pub tensor: Component,
    /// `T_σ` for `σ` in `gammas` order.
    pub aut_action: Vec<LinMap>,
    pub invariants: Vec<SVec>,
    /// Invariant basis coordinates to `M ⊗ N`, through the order-preserving summand.
    pub projection: LinMap,
}

impl BoxTensor {
    fn summand_dim(&self) -> usize {
        self.tensor.dim()
    }
    fn identity_slot(&self) -> usize {
        self.gammas.iter().position(|g| *g == BisetAut::identity(self.x)).expect("identity automorphism")
    }
}

/// Builds `M ⊠ N` for components with `n + m ≤ 3` in total.
pub fn box_tensor(s: &SStructure, m: &Component, n: &Component) -> Result<BoxTensor> {
    let x = Biset::new(m.plus() + n.plus(), m.minus() + n.minus());
    if x.size() > BOX_BOUND {
        return Err(Error::Bound { what: "biset size for ⊠".into(), size: x.size(), bound: BOX_BOUND });
    }
    let a = s.algebra();
    let ax = a_nm(a, x.plus, x.minus)?;
    let mn = m.tensor(n)?;
    let d = mn.dim();
    let gammas = x.automorphisms();
    let g_count = gammas.len();
    let k = a.field().clone();
    let slot = |g: &BisetAut| gammas.iter().position(|h| h == g).expect("automorphism listed");

    // factor p of A_x acts on summand γ as factor γ(p) of M ⊗ N
    let acts: Vec<Vec<LinMap>> = (0..x.size())
        .map(|p| {
            (0..a.dim())
                .map(|i| {
                    let mut cols = Vec::with_capacity(g_count * d);
                    for (gi, g) in gammas.iter().enumerate() {
                        let target = g.as_perm()[p];
                        cols.extend(mn.factor(target)[i].cols.iter().map(|c| c.map_indices(|r| r + gi * d)));
                    }
                    LinMap { rows: g_count * d, cols }
                })
                .collect()
        })
        .collect();
    let q = Component::new(a, x.plus, x.minus, g_count * d, acts)?;

    // (σq)_γ = γ_*(π(σ)^{-1}) q_{γσ}
    let pis_inv: Vec<SVec> = gammas.iter().map(|g| biset_pi(s, x, &g.inverse())).collect::<Result<_>>()?;
    let aut_action: Vec<LinMap> = gammas
        .par_iter()
        .map(|sigma| {
            let pinv = &pis_inv[slot(sigma)];
            let mut cols = vec![SVec::new(); g_count * d];
            for (gi, g) in gammas.iter().enumerate() {
                let mut pushed = Acc::default();
                for (t, c) in pinv.iter() {
                    pushed.add_scaled(c, &permute_factors(a, &ax, &g.as_perm(), *t));
                }
                let pushed = pushed.finish();
                let src = slot(&g.compose(sigma));
                for j in 0..d {
                    let v = mn.act_elem(&pushed, &SVec::unit(j, &k));
                    cols[src * d + j] = v.map_indices(|r| r + gi * d);
                }
            }
            LinMap { rows: g_count * d, cols }
        })
        .collect();

    let scale = k.from_int(g_count as i64).inv().expect("nonzero group order");
    let projector = aut_action.iter().fold(LinMap::zero(g_count * d, g_count * d), |acc, t| acc.add(t)).scale(&scale);
    let mut ech = Echelon::new(g_count * d);
    let invariants: Vec<SVec> = projector.cols.iter().filter(|c| ech.insert(c)).cloned().collect();
    let id_slot = gammas.iter().position(|g| *g == BisetAut::identity(x)).expect("identity automorphism");
    let projection = LinMap {
        rows: d,
        cols: invariants
            .iter()
            .map(|v| SVec::from_pairs(v.iter().filter(|(i, _)| i / d == id_slot).map(|(i, c)| (i % d, c.clone()))))
            .collect(),
    };
    Ok(BoxTensor { x, gammas, q, tensor: mn, aut_action, invariants, projection })
}

/// Summary of the `⊠` checks for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCheck {
    pub x: Biset,
    pub summands: usize,
    pub invariant_dim: usize,
    pub tensor_dim: usize,
}

/// Verifies that `Aut(x)` acts by module automorphisms, that projection is an iso onto `M ⊗ N`,
/// and that it is natural for a seeded endomorphism of `M`.
pub fn check_box_tensor(s: &SStructure, m: &Component, n: &Component, seed: u64) -> Result<BoxCheck> {
    let b = box_tensor(s, m, n)?;
    let at = |what: &str| format!("{what} for x = [{}, {}]", b.x.plus, b.x.minus);
    for (i, t) in b.aut_action.iter().enumerate() {
        if let Some(w) = b.q.morphism_witness(&b.q, t) {
            return Err(verification("⊠ automorphisms", at(&format!("σ #{i}")), w));
        }
    }
    for (i, g) in b.gammas.iter().enumerate() {
        for (j, h) in b.gammas.iter().enumerate() {
            let gh = b.gammas.iter().position(|x| *x == g.compose(h)).expect("closed");
            if b.aut_action[i].compose(&b.aut_action[j]) != b.aut_action[gh] {
                return Err(verification("⊠ automorphisms", at(&format!("σ #{i}, σ′ #{j}")), "not an action of Aut(x)"));
            }
        }
    }
    let d = b.summand_dim();
    if b.invariants.len() != d || b.projection.rank() != d {
        return Err(verification(
            "⊠ ≅ ⊗",
            at("projection"),
            format!("invariants have dimension {}, projection rank {}, dim M⊗N = {d}", b.invariants.len(), b.projection.rank()),
        ));
    }
    // the invariants form a submodule and projection intertwines
    let mut inv_span = Echelon::new(b.q.dim());
    for v in &b.invariants {
        inv_span.insert(v);
    }
    for f in 0..b.q.factors() {
        for g in s.algebra().gens() {
            for (j, v) in b.invariants.iter().enumerate() {
                let av = b.q.act_on(f, g, v);
                if !inv_span.contains(&av) {
                    return Err(verification("⊠ ≅ ⊗", at(&format!("invariant {j}, factor {f}")), "invariants are not a submodule"));
                }
                let lhs = restrict(&av, b.identity_slot(), d);
                let rhs = b.tensor.act_on(f, g, &b.projection.cols[j]);
                if lhs != rhs {
                    return Err(verification("⊠ ≅ ⊗", at(&format!("invariant {j}, factor {f}")), "projection is not linear"));
                }
            }
        }
    }
    // naturality in M for a seeded endomorphism f
    let homs = m.hom(m);
    let k = s.algebra().field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = homs.iter().fold(LinMap::zero(m.dim(), m.dim()), |acc, h| acc.add(&h.scale(&k.from_int(rng.gen_range(-3..=3)))));
    let fi = f.kron(&LinMap::identity(n.dim(), &k));
    let boxed = |v: &SVec| -> SVec {
        let mut acc = Acc::default();
        for (i, c) in v.iter() {
            let (slot, j) = (i / d, i % d);
            acc.add_scaled(c, &fi.cols[j].map_indices(|r| r + slot * d));
        }
        acc.finish()
    };
    for (j, v) in b.invariants.iter().enumerate() {
        let w = boxed(v);
        if !inv_span.contains(&w) {
            return Err(verification("⊠ naturality", at(&format!("invariant {j}")), "f ⊠ id does not preserve invariants"));
        }
        if restrict(&w, b.identity_slot(), d) != fi.apply(&b.projection.cols[j]) {
            return Err(verification("⊠ naturality", at(&format!("invariant {j}")), "square does not commute"));
        }
    }
    Ok(BoxCheck { x: b.x, summands: b.gammas.len(), invariant_dim: b.invariants.len(), tensor_dim: d })
}

fn restrict(v: &SVec, slot: usize, d: usize) -> SVec {
    SVec::from_pairs(v.iter().filter(|(i, _)| i / d == slot).map(|(i, c)| (i % d, c.clone())))
}
