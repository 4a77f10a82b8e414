//! Independent arithmetic for monomial algebras: every basis product is `ζ^e` times a basis
//! element (or zero), with `ζ` a primitive `N`-th root of unity for a prime `N`.

#![allow(dead_code)]

use num_rational::Ratio;
use salg_core::linalg::SVec;
use salg_core::scalars::FieldElem;
use std::collections::BTreeMap;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

/// `Σ c_e ζ^e`; zero exactly when all `c_e` agree, since `N` is prime.
#[derive(Clone, Debug)]
pub struct Cyc(pub Vec<Q>);

impl Cyc {
    pub fn zero(n: usize) -> Cyc {
        Cyc(vec![q(0, 1); n])
    }
    pub fn mono(n: usize, e: usize, c: Q) -> Cyc {
        let mut v = Cyc::zero(n);
        v.0[e % n] = c;
        v
    }
    pub fn add_assign(&mut self, o: &Cyc) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }
    pub fn mul(&self, o: &Cyc) -> Cyc {
        let n = self.0.len();
        let mut out = Cyc::zero(n);
        for (i, a) in self.0.iter().enumerate() {
            if *a == q(0, 1) {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out.0[(i + j) % n] += a * b;
            }
        }
        out
    }
    pub fn scale(&self, c: Q) -> Cyc {
        Cyc(self.0.iter().map(|a| a * c).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| *a == self.0[0])
    }
    pub fn same(&self, o: &Cyc) -> bool {
        let mut d = self.clone();
        d.add_assign(&o.scale(q(-1, 1)));
        d.is_zero()
    }
    /// The rational value, when `self` lies in `ℚ`.
    pub fn rational(&self) -> Option<Q> {
        let n = self.0.len();
        let tail = self.0[1];
        (n == 1 || self.0[1..].iter().all(|a| *a == tail)).then(|| self.0[0] - if n == 1 { q(0, 1) } else { tail })
    }
}

/// A library scalar, read in the power basis of `ℚ(ζ_N)` (or as a rational when `N = 2`).
pub fn from_field(c: &FieldElem, n: usize) -> Cyc {
    let mut v = Cyc::zero(n);
    for (e, s) in c.to_strings().iter().enumerate() {
        v.0[e] = parse(s);
    }
    v
}

pub fn parse(s: &str) -> Q {
    match s.split_once('/') {
        Some((a, b)) => q(a.parse().unwrap(), b.parse().unwrap()),
        None => q(s.parse().unwrap(), 1),
    }
}

/// Basis products `b_i b_j = ζ^e b_k`.
pub struct Mono {
    pub dim: usize,
    pub order: usize,
    pub table: Vec<Option<(usize, usize)>>,
}

impl Mono {
    pub fn quaternions() -> Mono {
        // 1, i, j, k; sign −1 is ζ_2
        let t: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        Mono { dim: 4, order: 2, table: t.iter().flatten().map(|&p| Some(p)).collect() }
    }

    /// `e_ij` at `2i + j`.
    pub fn m2() -> Mono {
        let table = (0..16)
            .map(|ab| {
                let (a, b) = (ab / 4, ab % 4);
                ((a % 2) == (b / 2)).then_some((0, (a / 2) * 2 + b % 2))
            })
            .collect();
        Mono { dim: 4, order: 2, table }
    }

    /// `[x][y] = ζ_p^{⟨x,y⟩}[x+y]` on `F_p²` with `⟨x,y⟩ = x₁y₂ − x₂y₁`; point `(a, b)` at `a·p + b`.
    pub fn twisted(p: usize) -> Mono {
        let n = p * p;
        let table = (0..n * n)
            .map(|xy| {
                let (x, y) = (xy / n, xy % n);
                Some((form(p, x, y), add(p, x, y)))
            })
            .collect();
        Mono { dim: n, order: p, table }
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        self.table[i * self.dim + j]
    }
}

pub fn form(p: usize, x: usize, y: usize) -> usize {
    let (x1, x2, y1, y2) = (x / p, x % p, y / p, y % p);
    (x1 * y2 + p * p - x2 * y1 % p) % p
}

pub fn add(p: usize, x: usize, y: usize) -> usize {
    ((x / p + y / p) % p) * p + (x % p + y % p) % p
}

pub fn scale(p: usize, s: usize, x: usize) -> usize {
    ((s * (x / p)) % p) * p + (s * (x % p)) % p
}

pub fn neg(p: usize, x: usize) -> usize {
    ((p - x / p) % p) * p + (p - x % p) % p
}

/// An element of `A^{⊗r}`.
#[derive(Clone, Debug, Default)]
pub struct Elem(pub BTreeMap<Vec<usize>, Cyc>);

impl Elem {
    pub fn basis(t: Vec<usize>, n: usize) -> Elem {
        Elem(BTreeMap::from([(t, Cyc::mono(n, 0, q(1, 1)))]))
    }
    pub fn add_term(&mut self, t: Vec<usize>, c: Cyc) {
        match self.0.get_mut(&t) {
            Some(x) => x.add_assign(&c),
            None => {
                self.0.insert(t, c);
            }
        }
    }
    pub fn add(&self, o: &Elem) -> Elem {
        let mut out = self.clone();
        for (t, c) in &o.0 {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
    pub fn scale(&self, c: Q) -> Elem {
        Elem(self.0.iter().map(|(t, x)| (t.clone(), x.scale(c))).collect())
    }
    pub fn mul(&self, o: &Elem, a: &Mono) -> Elem {
        let mut out = Elem::default();
        for (s, x) in &self.0 {
            for (t, y) in &o.0 {
                let mut e = 0;
                let mut r = Vec::with_capacity(s.len());
                let mut zero = false;
                for (&i, &j) in s.iter().zip(t) {
                    match a.basis_mul(i, j) {
                        Some((f, k)) => {
                            e += f;
                            r.push(k);
                        }
                        None => zero = true,
                    }
                }
                if !zero {
                    out.add_term(r, x.mul(y).mul(&Cyc::mono(a.order, e, q(1, 1))));
                }
            }
        }
        out
    }
    pub fn same(&self, o: &Elem) -> bool {
        let keys: std::collections::BTreeSet<&Vec<usize>> = self.0.keys().chain(o.0.keys()).collect();
        let n = self.0.values().chain(o.0.values()).next().map_or(1, |c| c.0.len());
        keys.into_iter().all(|k| {
            let z = Cyc::zero(n);
            self.0.get(k).unwrap_or(&z).same(o.0.get(k).unwrap_or(&z))
        })
    }
    /// Applies a map on tensor tuples.
    pub fn relabel(&self, f: impl Fn(&[usize]) -> Vec<usize>) -> Elem {
        let mut out = Elem::default();
        for (t, c) in &self.0 {
            out.add_term(f(t), c.clone());
        }
        out
    }
}

/// `(π, ε)` in oracle form, with `ε` given on basis elements.
pub struct Structure {
    pub pi: Elem,
    pub eps: Vec<Q>,
}

impl Structure {
    pub fn quaternions() -> Structure {
        let h = q(1, 2);
        let mut pi = Elem::default();
        for (b, s) in [(0, 0), (1, 1), (2, 1), (3, 1)] {
            pi.add_term(vec![b, b], Cyc::mono(2, s, h));
        }
        Structure { pi, eps: vec![q(2, 1), q(0, 1), q(0, 1), q(0, 1)] }
    }

    pub fn m2() -> Structure {
        let mut pi = Elem::default();
        for i in 0..2 {
            for j in 0..2 {
                pi.add_term(vec![i * 2 + j, j * 2 + i], Cyc::mono(2, 0, q(1, 1)));
            }
        }
        Structure { pi, eps: vec![q(1, 1), q(0, 1), q(0, 1), q(1, 1)] }
    }

    /// `π = q^{−1} Σ_u [u] ⊗ [−u]` and `ε([x]) = q·δ_{x,0}` for `d = 2`.
    pub fn twisted(p: usize) -> Structure {
        let mut pi = Elem::default();
        for u in 0..p * p {
            pi.add_term(vec![u, neg(p, u)], Cyc::mono(p, 0, q(1, p as i64)));
        }
        let mut eps = vec![q(0, 1); p * p];
        eps[0] = q(p as i64, 1);
        Structure { pi, eps }
    }

    pub fn degree(&self) -> Q {
        self.eps[0]
    }

    /// `(id ⊗ ε)` on an element of `A ⊗ A`.
    pub fn id_eps(&self, v: &Elem) -> Elem {
        let mut out = Elem::default();
        for (t, c) in &v.0 {
            if self.eps[t[1]] != q(0, 1) {
                out.add_term(vec![t[0]], c.scale(self.eps[t[1]]));
            }
        }
        out
    }
}

/// `π(x⊗y)π = y⊗x` and `(id⊗ε)((x⊗y)π) = xy` on every basis pair.
pub fn s_axioms(a: &Mono, s: &Structure) -> Result<(), String> {
    for x in 0..a.dim {
        for y in 0..a.dim {
            let xy = Elem::basis(vec![x, y], a.order);
            let lhs = s.pi.mul(&xy, a).mul(&s.pi, a);
            if !lhs.same(&Elem::basis(vec![y, x], a.order)) {
                return Err(format!("τ ≠ λ_π ρ_π at ({x},{y})"));
            }
            let m = s.id_eps(&xy.mul(&s.pi, a));
            let prod = Elem::basis(vec![x], a.order).mul(&Elem::basis(vec![y], a.order), a);
            if !m.same(&prod) {
                return Err(format!("μ ≠ (id⊗ε)ρ_π at ({x},{y})"));
            }
        }
    }
    Ok(())
}

pub fn one(r: usize, a: &Mono) -> Elem {
    Elem::basis(vec![0; r], a.order)
}

/// `π_i` in `A^{⊗r}`; the unit basis element is index 0 in every oracle algebra except `M₂`.
pub fn pi_at(s: &Structure, r: usize, i: usize, unit: &Elem) -> Elem {
    let mut out = Elem::default();
    for (t, c) in &s.pi.0 {
        for (u, d) in &unit.0 {
            let mut tuple = vec![0; r];
            let mut k = 0;
            for (f, slot) in tuple.iter_mut().enumerate() {
                if f == i {
                    *slot = t[0];
                } else if f == i + 1 {
                    *slot = t[1];
                } else {
                    *slot = u[k];
                    k += 1;
                }
            }
            out.add_term(tuple, c.mul(d));
        }
    }
    out
}

/// The unit of `A^{⊗(r−2)}` from the unit of `A`.
pub fn unit_power(unit: &Elem, r: usize, a: &Mono) -> Elem {
    let mut out = Elem(BTreeMap::from([(vec![], Cyc::mono(a.order, 0, q(1, 1)))]));
    for _ in 0..r {
        let mut next = Elem::default();
        for (t, c) in &out.0 {
            for (u, d) in &unit.0 {
                let mut tt = t.clone();
                tt.extend(u);
                next.add_term(tt, c.mul(d));
            }
        }
        out = next;
    }
    out
}

/// Converts a library vector over `A^{⊗r}` (row-major tensor index) into oracle form.
pub fn from_svec(v: &SVec, n: usize, r: usize, order: usize, relabel: &dyn Fn(usize) -> usize) -> Elem {
    let mut out = Elem::default();
    for (idx, c) in v.iter() {
        let mut t = vec![0; r];
        let mut rest = *idx;
        for f in (0..r).rev() {
            t[f] = relabel(rest % n);
            rest /= n;
        }
        out.add_term(t, from_field(c, order));
    }
    out
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
                let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
