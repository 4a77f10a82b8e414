//! Dense univariate polynomials over the rationals, coefficients stored low degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-2/5"` and similar.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rat> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    let mut out: Vec<Rat> = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    add(a, &scale(b, &-Rat::one()))
}

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r: Vec<Rat> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            if !bc.is_zero() {
                r[dr - db + i] -= &c * bc;
            }
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic(a: &[Rat]) -> Vec<Rat> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = a[d].recip();
            scale(a, &inv)
        }
    }
}

pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g` monic gcd.
pub fn half_xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rat::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    let d = degree(&r0).expect("gcd of zero polynomials");
    let inv = r0[d].recip();
    (scale(&r0, &inv), scale(&s0, &inv))
}

pub fn derivative(a: &[Rat]) -> Vec<Rat> {
    let mut out: Vec<Rat> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat(i as i64))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(a: &[Rat], x: &Rat) -> Rat {
    a.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Rational roots of a nonzero polynomial via the rational root theorem.
pub fn rational_roots(a: &[Rat]) -> Vec<Rat> {
    let mut p = a.to_vec();
    trim(&mut p);
    if p.is_empty() {
        return Vec::new();
    }
    let den = p.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let mut lo = 0;
    while ints[lo].is_zero() {
        lo += 1;
        if !roots.contains(&Rat::zero()) {
            roots.push(Rat::zero());
        }
    }
    let c0 = ints[lo].abs();
    let cn = ints.last().unwrap().abs();
    let (Some(c0s), Some(cns)) = (small(&c0), small(&cn)) else {
        return roots;
    };
    for num in divisors(c0s) {
        for den in divisors(cns) {
            for sign in [1i64, -1] {
                let r = ratio(sign * num as i64, den as i64);
                if eval(&p, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

fn small(n: &BigInt) -> Option<u64> {
    let v: u64 = n.try_into().ok()?;
    (v <= 1 << 40).then_some(v)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Cyclotomic polynomial Φ_n.
pub fn cyclotomic_poly(n: u64) -> Vec<Rat> {
    let mut p = vec![Rat::zero(); n as usize + 1];
    p[0] = -Rat::one();
    p[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            p = divrem(&p, &cyclotomic_poly(d)).0;
        }
    }
    p
}
