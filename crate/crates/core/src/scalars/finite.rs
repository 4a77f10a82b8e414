//! Finite fields F_q = F_p[y]/(g) with table-driven arithmetic on packed indices.

use crate::error::{invalid, Error, Result};
use std::sync::Arc;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Polynomials over F_p, low degree first, no trailing zeros.
pub mod fp_poly {
    use super::{inv_mod, pow_mod};

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn from_rats(c: &[u64]) -> Vec<u64> {
        let mut v = c.to_vec();
        trim(&mut v);
        v
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p) % p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let li = inv_mod(b[db], p);
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = r[dr] * li % p;
            for i in 0..=db {
                r[dr - db + i] = (r[dr - db + i] + p - c * b[i] % p) % p;
            }
            q[dr - db] = c;
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&l) = x.last() {
            let li = inv_mod(l, p);
            for c in x.iter_mut() {
                *c = *c * li % p;
            }
        }
        x
    }

    /// `base^(p^k)` reduced modulo `m`.
    pub fn frobenius_power(base: &[u64], k: u32, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = rem(base, m, p);
        for _ in 0..k {
            r = pow_poly(&r, p, m, p);
        }
        r
    }

    pub fn pow_poly(b: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut base = rem(b, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        result
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect();
        trim(&mut out);
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial (distinct-degree factorization).
    pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = f.to_vec();
        trim(&mut f);
        let li = inv_mod(*f.last().unwrap(), p);
        for c in f.iter_mut() {
            *c = *c * li % p;
        }
        let mut out = Vec::new();
        let x = vec![0u64, 1];
        let mut h = rem(&x, &f, p);
        let mut i = 1;
        while f.len() > 1 {
            if 2 * i > f.len() - 1 {
                out.push(f.len() - 1);
                break;
            }
            h = pow_poly(&h, p, &f, p);
            let g = gcd(&f, &sub(&h, &x, p), p);
            let dg = g.len() - 1;
            for _ in 0..dg / i {
                out.push(i);
            }
            if dg > 0 {
                f = divrem(&f, &g, p).0;
                h = rem(&h, &f, p);
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_squarefree(f: &[u64], p: u64) -> bool {
        let d = derivative(f, p);
        !d.is_empty() && gcd(f, &d, p).len() == 1
    }

    pub fn roots(f: &[u64], p: u64) -> Vec<u64> {
        (0..p).filter(|&x| eval(f, x, p) == 0).collect()
    }

    pub fn nth_roots(a: u64, n: u64, p: u64) -> Vec<u64> {
        (1..p).filter(|&x| pow_mod(x, n, p) == a % p).collect()
    }
}

#[derive(Debug)]
pub struct FiniteFieldData {
    pub p: u64,
    pub e: u32,
    pub q: usize,
    pub modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
    pub generator: u32,
}

/// A finite field of odd characteristic; elements are indices `Σ c_i p^i` in `0..q`.
#[derive(Debug, Clone)]
pub struct FiniteField(Arc<FiniteFieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.p == o.0.p && self.0.modulus == o.0.modulus)
    }
}

const MAX_Q: usize = 1 << 12;

impl FiniteField {
    /// F_{p^e} with the first monic irreducible modulus in packed-index order.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if p == 2 {
            return invalid("characteristic 2 is excluded");
        }
        if e == 0 {
            return invalid("extension degree must be positive");
        }
        let q = (p as usize).checked_pow(e).filter(|&q| q <= MAX_Q).ok_or(Error::Bound {
            what: "q".into(),
            size: usize::MAX,
            bound: MAX_Q,
        })?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|idx| {
                    let mut m = digits(idx, p, e as usize);
                    m.push(1);
                    m
                })
                .find(|m| fp_poly::factor_degrees(m, p) == vec![e as usize] && fp_poly::is_squarefree(m, p))
                .expect("irreducible polynomial exists")
        };
        Self::with_modulus(p, modulus)
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return invalid(format!("characteristic {p} must be an odd prime"));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fp_poly::trim(&mut modulus);
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return invalid("modulus must be monic of positive degree");
        }
        let e = (modulus.len() - 1) as u32;
        if fp_poly::factor_degrees(&modulus, p) != vec![e as usize] || !fp_poly::is_squarefree(&modulus, p) {
            return invalid("modulus is not irreducible");
        }
        let q = (p as usize).pow(e);
        if q > MAX_Q {
            return Err(Error::Bound { what: "q".into(), size: q, bound: MAX_Q });
        }
        let el = |i: usize| digits(i, p, e as usize);
        let pack = |v: &[u64]| -> u32 { v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32 };
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            let va = el(a);
            for b in 0..q {
                let vb = el(b);
                let s: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&s);
                let mut m = fp_poly::rem(&fp_poly::mul(&va, &vb, p), &modulus, p);
                m.resize(e as usize, 0);
                mul[a * q + b] = pack(&m);
            }
        }
        let neg: Vec<u32> = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u32).collect();
        let inv: Vec<u32> = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u32 })
            .collect();
        let mut data = FiniteFieldData {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace: Vec::new(),
            generator: 0,
        };
        data.trace = (0..q as u32).map(|a| trace_of(&data, a)).collect();
        data.generator = (1..q as u32)
            .find(|&g| order_of(&data, g) == q - 1)
            .ok_or_else(|| Error::Invalid("multiplicative group is not cyclic".into()))?;
        Ok(FiniteField(Arc::new(data)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> usize {
        self.0.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn generator(&self) -> u32 {
        self.0.generator
    }
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[a as usize * self.0.q + b as usize]
    }
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[a as usize * self.0.q + b as usize]
    }
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }
    /// Multiplicative inverse; `inv(0) = 0`.
    pub fn inv(&self, a: u32) -> u32 {
        self.0.inv[a as usize]
    }
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }
    /// Frobenius trace to the prime field, returned as an integer in `0..p`.
    pub fn trace(&self, a: u32) -> u32 {
        self.0.trace[a as usize]
    }
    pub fn order(&self, a: u32) -> usize {
        order_of(&self.0, a)
    }
    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || (0..self.0.q as u32).any(|b| self.mul(b, b) == a)
    }
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        (0..self.0.q as u32).find(|&b| self.mul(b, b) == a)
    }
    pub fn coords(&self, a: u32) -> Vec<u64> {
        digits(a as usize, self.0.p, self.0.e as usize)
    }
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q as u32
    }
    pub fn label(&self, a: u32) -> String {
        if self.0.e == 1 {
            return a.to_string();
        }
        let c = self.coords(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match i {
                0 => x.to_string(),
                1 => format!("{x}y"),
                _ => format!("{x}y^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn digits(mut idx: usize, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx as u64 % p);
        idx /= p as usize;
    }
    out
}

fn order_of(d: &FiniteFieldData, a: u32) -> usize {
    if a == 0 {
        return 0;
    }
    let mut x = a;
    let mut n = 1;
    while x != 1 {
        x = d.mul[x as usize * d.q + a as usize];
        n += 1;
    }
    n
}

fn trace_of(d: &FiniteFieldData, a: u32) -> u32 {
    let mut acc = 0u32;
    let mut x = a;
    for _ in 0..d.e {
        acc = d.add[acc as usize * d.q + x as usize];
        let mut y = 1u32;
        for _ in 0..d.p {
            y = d.mul[y as usize * d.q + x as usize];
        }
        x = y;
    }
    acc
}

/// `a + a^p + ... + a^(p^(e-1))`, an element of the prime field.
pub fn ff_trace(k: &FiniteField, a: u32) -> u32 {
    k.trace(a)
}
