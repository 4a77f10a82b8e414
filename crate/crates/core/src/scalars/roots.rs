//! Exact n-th roots in number fields and quadratic extensions.

use super::finite::{fp_poly, is_prime};
use super::numfield::{new_internal, reduce_mod_p, Field, FieldElem};
use super::poly::{self, Rat};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const MAX_COMBOS: usize = 1 << 14;
const MAX_BITS: u64 = 1 << 13;

/// An `s` with `s^n = a`, `None` if none exists in the field.
pub fn nth_root(a: &FieldElem, n: u32) -> Result<Option<FieldElem>> {
    let k = a.field();
    if n == 0 {
        return Err(Error::Invalid("root index must be positive".into()));
    }
    if n == 1 || a.is_zero() || a.is_one() {
        return Ok(Some(a.clone()));
    }
    if let Some(r) = a.as_rational() {
        if let Some(s) = rational_root(r, n) {
            return Ok(Some(k.from_rat(s)));
        }
        if k.degree() == 1 {
            return Ok(None);
        }
    }
    padic_root(a, n)
}

pub fn sqrt(a: &FieldElem) -> Result<Option<FieldElem>> {
    nth_root(a, 2)
}

pub fn is_square(a: &FieldElem) -> Result<bool> {
    Ok(sqrt(a)?.is_some())
}

fn int_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return int_root(&-x, n).map(|r| -r);
    }
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

pub fn rational_root(r: &Rat, n: u32) -> Option<Rat> {
    Some(Rat::new(int_root(r.numer(), n)?, int_root(r.denom(), n)?))
}

fn modp(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

fn inv_modm(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn rat_modm(r: &Rat, m: &BigInt) -> BigInt {
    modp(&(r.numer() * inv_modm(&modp(r.denom(), m), m)), m)
}

fn eval_modm(c: &[Rat], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, v| modp(&(acc * x + rat_modm(v, m)), m))
}

fn eval_int_modm(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, v| modp(&(acc * x + v), m))
}

/// Rational `a/b` with `a ≡ b*x mod m`, `|a|, |b| ≤ sqrt(m/2)`.
fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), modp(x, m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rat::new(r1, t1))
}

struct SplitPrime {
    p: u64,
    roots: Vec<u64>,
    /// n-th roots of `a(r_i)` modulo p.
    nth: Vec<Vec<u64>>,
}

enum PrimeOutcome {
    Obstruction,
    Split(SplitPrime),
}

fn examine_prime(k: &Field, a: &FieldElem, n: u32, p: u64) -> Option<PrimeOutcome> {
    let d = k.degree();
    if (n as u64) % p == 0 {
        return None;
    }
    let mut f = reduce_mod_p(k.modulus(), p)?;
    fp_poly::trim(&mut f);
    if f.len() != d + 1 || !fp_poly::is_squarefree(&f, p) {
        return None;
    }
    let ac = reduce_mod_p(a.coeffs(), p)?;
    let roots = fp_poly::roots(&f, p);
    if roots.len() != d {
        return None;
    }
    let mut nth = Vec::with_capacity(d);
    for &r in &roots {
        let v = fp_poly::eval(&ac, r, p);
        if v == 0 {
            return None;
        }
        let rs = fp_poly::nth_roots(v, n as u64, p);
        if rs.is_empty() {
            return Some(PrimeOutcome::Obstruction);
        }
        nth.push(rs);
    }
    Some(PrimeOutcome::Split(SplitPrime { p, roots, nth }))
}

fn padic_root(a: &FieldElem, n: u32) -> Result<Option<FieldElem>> {
    let k = a.field();
    let d = k.degree();
    let mut chosen: Option<SplitPrime> = None;
    let mut split_seen = 0;
    let mut p = 2u64;
    while p < 200_000 && split_seen < 12 {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        match examine_prime(k, a, n, p) {
            None => {}
            Some(PrimeOutcome::Obstruction) => return Ok(None),
            Some(PrimeOutcome::Split(sp)) => {
                split_seen += 1;
                let combos = sp.nth.iter().map(|v| v.len()).product::<usize>();
                let better = chosen
                    .as_ref()
                    .map_or(true, |c| combos < c.nth.iter().map(|v| v.len()).product::<usize>());
                if better {
                    chosen = Some(sp);
                }
            }
        }
    }
    let sp = chosen.ok_or_else(|| Error::Undetermined(format!("no split prime found for {}", k.name())))?;
    let combos: usize = sp.nth.iter().map(|v| v.len()).product();
    if combos > MAX_COMBOS {
        return Err(Error::Undetermined(format!("{combos} root combinations")));
    }
    let pb = BigInt::from(sp.p);
    let int_f: Vec<Rat> = k.modulus().to_vec();
    let df = poly::derivative(&int_f);
    let mut bits = 64u64;
    while bits <= MAX_BITS {
        let mut kexp = 1u32;
        while num_traits::pow(pb.clone(), kexp as usize).bits() < bits {
            kexp += 1;
        }
        let m = num_traits::pow(pb.clone(), kexp as usize);
        let roots: Vec<BigInt> = sp.roots.iter().map(|&r| hensel(&int_f, &df, BigInt::from(r), &m)).collect();
        let targets: Vec<BigInt> = roots.iter().map(|r| eval_modm(a.coeffs(), r, &m)).collect();
        let lifted: Vec<Vec<BigInt>> = sp
            .nth
            .iter()
            .zip(&targets)
            .map(|(ys, t)| ys.iter().map(|&y| hensel_nth(t, n, BigInt::from(y), &m)).collect())
            .collect();
        let basis = lagrange_basis(&roots, &m);
        let mut idx = vec![0usize; d];
        loop {
            let mut s = vec![BigInt::zero(); d];
            for i in 0..d {
                let y = &lifted[i][idx[i]];
                for (j, b) in basis[i].iter().enumerate() {
                    s[j] = modp(&(&s[j] + y * b), &m);
                }
            }
            if let Some(c) = s.iter().map(|v| rational_reconstruct(v, &m)).collect::<Option<Vec<Rat>>>() {
                let cand = k.from_coeffs(&c);
                if cand.pow(n as u64) == *a {
                    return Ok(Some(cand));
                }
            }
            let mut t = 0;
            loop {
                if t == d {
                    break;
                }
                idx[t] += 1;
                if idx[t] < lifted[t].len() {
                    break;
                }
                idx[t] = 0;
                t += 1;
            }
            if t == d {
                break;
            }
        }
        bits *= 2;
    }
    Err(Error::Undetermined(format!("no {n}-th root found up to {MAX_BITS}-bit precision")))
}

fn hensel(f: &[Rat], df: &[Rat], mut r: BigInt, m: &BigInt) -> BigInt {
    for _ in 0..64 {
        let fv = eval_modm(f, &r, m);
        if fv.is_zero() {
            break;
        }
        let dv = eval_modm(df, &r, m);
        r = modp(&(&r - fv * inv_modm(&dv, m)), m);
    }
    r
}

fn hensel_nth(t: &BigInt, n: u32, mut y: BigInt, m: &BigInt) -> BigInt {
    let nb = BigInt::from(n);
    for _ in 0..64 {
        let yn1 = y.modpow(&BigInt::from(n - 1), m);
        let fv = modp(&(&yn1 * &y - t), m);
        if fv.is_zero() {
            break;
        }
        let dv = modp(&(&nb * yn1), m);
        y = modp(&(&y - fv * inv_modm(&dv, m)), m);
    }
    y
}

/// Coefficients of the Lagrange basis polynomials for the given nodes mod m.
fn lagrange_basis(nodes: &[BigInt], m: &BigInt) -> Vec<Vec<BigInt>> {
    let d = nodes.len();
    (0..d)
        .map(|i| {
            let mut num = vec![BigInt::one()];
            let mut den = BigInt::one();
            for (j, r) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![BigInt::zero(); num.len() + 1];
                for (t, c) in num.iter().enumerate() {
                    next[t + 1] = modp(&(&next[t + 1] + c), m);
                    next[t] = modp(&(&next[t] - c * r), m);
                }
                num = next;
                den = modp(&(den * (&nodes[i] - r)), m);
            }
            let di = inv_modm(&den, m);
            let out: Vec<BigInt> = num.iter().map(|c| modp(&(c * &di), m)).collect();
            debug_assert_eq!(eval_int_modm(&out, &nodes[i], m), BigInt::one() % m);
            out
        })
        .collect()
}

/// A field embedding determined by the image of the power-basis generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Field,
    pub target: Field,
    pub image_of_gen: FieldElem,
}

impl Embedding {
    pub fn identity(k: &Field) -> Self {
        Embedding { source: k.clone(), target: k.clone(), image_of_gen: k.gen() }
    }

    pub fn apply(&self, a: &FieldElem) -> FieldElem {
        let mut acc = self.target.zero();
        for c in a.coeffs().iter().rev() {
            acc = &(&acc * &self.image_of_gen) + &self.target.from_rat(c.clone());
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct SqrtExtension {
    pub field: Field,
    pub sqrt: FieldElem,
    pub embedding: Embedding,
}

impl SqrtExtension {
    pub fn is_trivial(&self) -> bool {
        self.field == self.embedding.source
    }
}

/// A field containing `k` and a square root of `a`; `k` itself when `a` is already a square.
pub fn adjoin_sqrt(a: &FieldElem) -> Result<SqrtExtension> {
    if a.is_zero() {
        return Err(Error::Invalid("cannot adjoin the square root of zero".into()));
    }
    let k = a.field().clone();
    if let Some(s) = sqrt(a)? {
        return Ok(SqrtExtension { embedding: Embedding::identity(&k), field: k, sqrt: s });
    }
    let n = k.degree();
    // elements of L = K[y]/(y^2 - a) as (u0, u1) meaning u0 + u1*y
    let lmul = |u: &(FieldElem, FieldElem), v: &(FieldElem, FieldElem)| {
        (&u.0 * &v.0 + &(&u.1 * &v.1) * a, &u.0 * &v.1 + &u.1 * &v.0)
    };
    let flat = |u: &(FieldElem, FieldElem)| -> Vec<Rat> { u.0.coeffs().iter().chain(u.1.coeffs()).cloned().collect() };
    for c in 0i64.. {
        let z = (k.gen().scale_rat(&Rat::from_integer(c.into())), k.one());
        let mut pows = vec![(k.one(), k.zero())];
        for _ in 0..2 * n {
            let next = lmul(pows.last().unwrap(), &z);
            pows.push(next);
        }
        let cols: Vec<Vec<Rat>> = pows.iter().map(flat).collect();
        // z has degree 2n over Q iff the first 2n powers are independent
        let Some(inv) = invert_dense(&cols[..2 * n]) else { continue };
        let last = mat_vec(&inv, &cols[2 * n]);
        let mut modulus: Vec<Rat> = last.iter().map(|x| -x).collect();
        modulus.push(Rat::one());
        let name = format!("{}(sqrt({}))", k.name(), a);
        let mut target = new_internal(modulus, name.clone(), None, None);
        let to_new = |u: &(FieldElem, FieldElem), t: &Field| t.from_coeffs(&mat_vec(&inv, &flat(u)));
        let gen_img = to_new(&(k.gen(), k.zero()), &target);
        let s_img = to_new(&(k.zero(), k.one()), &target);
        if let Some(cond) = k.conductor() {
            if let Some(z0) = k.root_of_unity(cond) {
                let emb = Embedding { source: k.clone(), target: target.clone(), image_of_gen: gen_img.clone() };
                let zc = emb.apply(&z0).coeffs().to_vec();
                target = new_internal(target.modulus().to_vec(), name, Some(cond), Some(zc));
            }
        }
        let image_of_gen = target.from_coeffs(gen_img.coeffs());
        let sqrt = target.from_coeffs(s_img.coeffs());
        let embedding = Embedding { source: k.clone(), target: target.clone(), image_of_gen };
        debug_assert!(&sqrt * &sqrt == embedding.apply(a));
        return Ok(SqrtExtension { field: target, sqrt, embedding });
    }
    unreachable!()
}

/// Inverse of a square matrix given by columns, `None` if singular.
pub(crate) fn invert_dense(cols: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = cols.len();
    // work on rows of the augmented matrix [M | I]
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(piv, col);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        let prow = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
    }
    // return as rows of the inverse (so mat_vec applies it)
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub(crate) fn mat_vec(rows: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    rows.iter()
        .map(|r| r.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn rational_square_class(r: &Rat) -> BigInt {
    assert!(!r.is_zero(), "zero has no square class");
    let mut n = (r.numer() * r.denom()).abs();
    let mut out = BigInt::one();
    let mut f = BigInt::from(2u32);
    while &f * &f <= n {
        let mut e = 0;
        while (&n % &f).is_zero() {
            n /= &f;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &f;
        }
        f += 1u32;
    }
    out *= n;
    if r.is_negative() {
        -out
    } else {
        out
    }
}
