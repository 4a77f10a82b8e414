use super::finite::fp_poly;
use super::poly::{self, fmt_rat, rat, Rat};
use crate::error::{invalid, Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

#[derive(Debug)]
pub struct NumberField {
    modulus: Vec<Rat>,
    degree: usize,
    name: String,
    conductor: Option<u64>,
    /// A primitive `conductor`-th root of unity, as coefficients.
    zeta: Option<Vec<Rat>>,
    /// `x^(degree + k) mod modulus` for `k < degree - 1`.
    reduce: Vec<Vec<Rat>>,
}

/// Shared handle to a number field ℚ[x]/(f).
#[derive(Debug, Clone)]
pub struct Field(Arc<NumberField>);

impl PartialEq for Field {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.modulus == o.0.modulus
    }
}
impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        cyclotomic(1)
    }

    /// ℚ[x]/(f) for a monic modulus whose irreducibility can be certified.
    pub fn from_modulus(modulus: Vec<Rat>) -> Result<Field> {
        let mut m = modulus;
        poly::trim(&mut m);
        if m.len() < 2 || !m.last().unwrap().is_one() {
            return invalid("modulus must be monic of positive degree");
        }
        certify_irreducible(&m)?;
        Ok(Self::build(m, None, None, None))
    }

    fn build(modulus: Vec<Rat>, name: Option<String>, conductor: Option<u64>, zeta: Option<Vec<Rat>>) -> Field {
        let degree = modulus.len() - 1;
        let name = name.unwrap_or_else(|| format!("Q[x]/({})", poly_string(&modulus, "x")));
        let mut reduce = Vec::new();
        if degree > 1 {
            // x^degree = -(lower part)
            let mut cur: Vec<Rat> = modulus[..degree].iter().map(|c| -c).collect();
            reduce.push(cur.clone());
            for _ in 1..degree - 1 {
                let top = cur[degree - 1].clone();
                let mut next = vec![Rat::zero(); degree];
                for i in 1..degree {
                    next[i] = cur[i - 1].clone();
                }
                if !top.is_zero() {
                    for i in 0..degree {
                        next[i] -= &top * &modulus[i];
                    }
                }
                reduce.push(next.clone());
                cur = next;
            }
        }
        Field(Arc::new(NumberField { modulus, degree, name, conductor, zeta, reduce }))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }
    pub fn modulus(&self) -> &[Rat] {
        &self.0.modulus
    }
    pub fn name(&self) -> &str {
        &self.0.name
    }
    pub fn conductor(&self) -> Option<u64> {
        self.0.conductor
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { k: self.clone(), c: vec![Rat::zero(); self.0.degree] }
    }
    pub fn one(&self) -> FieldElem {
        self.from_rat(Rat::one())
    }
    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_rat(rat(n))
    }
    pub fn from_rat(&self, r: Rat) -> FieldElem {
        let mut c = vec![Rat::zero(); self.0.degree];
        c[0] = r;
        FieldElem { k: self.clone(), c }
    }
    /// Element from power-basis coefficients (reduced if longer than the degree).
    pub fn from_coeffs(&self, coeffs: &[Rat]) -> FieldElem {
        let (_, r) = poly::divrem(coeffs, &self.0.modulus);
        let mut c = r;
        c.resize(self.0.degree, Rat::zero());
        FieldElem { k: self.clone(), c }
    }
    /// The generator `x` of the power basis.
    pub fn gen(&self) -> FieldElem {
        self.from_coeffs(&[Rat::zero(), Rat::one()])
    }

    /// A primitive n-th root of unity if the field is known to contain one.
    pub fn root_of_unity(&self, n: u64) -> Option<FieldElem> {
        if n == 1 {
            return Some(self.one());
        }
        if n == 2 {
            return Some(-self.one());
        }
        let big = self.0.conductor?;
        let z = self.from_coeffs(self.0.zeta.as_ref()?);
        if big % n == 0 {
            return Some(z.pow(big / n));
        }
        if big % 2 == 1 && (2 * big) % n == 0 {
            return Some((-z).pow(2 * big / n));
        }
        None
    }

    /// All roots of unity known to lie in the field.
    pub fn roots_of_unity(&self) -> Vec<FieldElem> {
        let big = match self.0.conductor {
            Some(n) if n % 2 == 1 => 2 * n,
            Some(n) => n,
            None => 2,
        };
        let z = self.root_of_unity(big).expect("root of unity of the conductor");
        let mut out = Vec::new();
        let mut x = self.one();
        for _ in 0..big {
            out.push(x.clone());
            x = &x * &z;
        }
        out
    }

    pub fn parse_elem(&self, coeffs: &[String]) -> Result<FieldElem> {
        let rs: Option<Vec<Rat>> = coeffs.iter().map(|s| poly::parse_rat(s)).collect();
        let rs = rs.ok_or_else(|| Error::Parse(format!("bad rational in {coeffs:?}")))?;
        if rs.len() > self.degree() {
            return Err(Error::Parse(format!(
                "element has {} coefficients, field degree is {}",
                rs.len(),
                self.degree()
            )));
        }
        Ok(self.from_coeffs(&rs))
    }
}

/// ℚ(ζ_N) = ℚ[x]/(Φ_N) with ζ = x.
pub fn cyclotomic(n: u64) -> Field {
    assert!(n >= 1, "conductor must be positive");
    let m = poly::cyclotomic_poly(n);
    let name = if n == 1 { "Q".to_string() } else { format!("Q(zeta_{n})") };
    let zeta = vec![Rat::zero(), Rat::one()];
    let zeta = poly::divrem(&zeta, &m).1;
    Field::build(m, Some(name), Some(n), Some(zeta))
}

/// An element of a number field in the power basis.
#[derive(Clone, Debug)]
pub struct FieldElem {
    k: Field,
    c: Vec<Rat>,
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl Eq for FieldElem {}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.k
    }
    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }
    pub fn as_rational(&self) -> Option<&Rat> {
        self.c[1..].iter().all(|x| x.is_zero()).then_some(&self.c[0])
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut r = self.k.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(self.k.from_rat(r.recip()));
        }
        let (g, s) = poly::half_xgcd(&self.c, &self.k.0.modulus);
        debug_assert!(g.len() == 1);
        Some(self.k.from_coeffs(&s))
    }

    pub fn scale_rat(&self, r: &Rat) -> FieldElem {
        FieldElem { k: self.k.clone(), c: self.c.iter().map(|x| x * r).collect() }
    }

    /// Multiplication matrix over ℚ: column j holds `self * x^j`.
    pub fn mult_matrix(&self) -> Vec<Vec<Rat>> {
        let n = self.k.degree();
        let mut basis = self.k.one();
        let x = self.k.gen();
        let mut cols = Vec::with_capacity(n);
        for _ in 0..n {
            cols.push((self * &basis).c);
            basis = &basis * &x;
        }
        cols
    }

    pub fn norm(&self) -> Rat {
        let m = self.mult_matrix();
        rat_det(m)
    }

    fn mul_impl(&self, o: &FieldElem) -> FieldElem {
        let n = self.k.0.degree;
        if n == 1 {
            return FieldElem { k: self.k.clone(), c: vec![&self.c[0] * &o.c[0]] };
        }
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        let mut any = false;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                    any = true;
                }
            }
        }
        if !any {
            return self.k.zero();
        }
        for k in n..2 * n - 1 {
            if prod[k].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut prod[k]);
            for (t, r) in self.k.0.reduce[k - n].iter().enumerate() {
                if !r.is_zero() {
                    prod[t] += &top * r;
                }
            }
        }
        prod.truncate(n);
        FieldElem { k: self.k.clone(), c: prod }
    }

    pub fn to_strings(&self) -> Vec<String> {
        let mut c: Vec<String> = self.c.iter().map(fmt_rat).collect();
        while c.len() > 1 && c.last().is_some_and(|s| s == "0") {
            c.pop();
        }
        c
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rat(r));
        }
        write!(f, "{}", poly_string(&self.c, "z"))
    }
}

fn poly_string(c: &[Rat], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, x) in c.iter().enumerate().rev() {
        if x.is_zero() {
            continue;
        }
        let coef = fmt_rat(x);
        let t = match i {
            0 => coef,
            _ => {
                let v = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if x.is_one() {
                    v
                } else if *x == -Rat::one() {
                    format!("-{v}")
                } else {
                    format!("{coef}*{v}")
                }
            }
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                let f: fn(&FieldElem, &FieldElem) -> FieldElem = $body;
                f(self, o)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, |a, b| FieldElem { k: a.k.clone(), c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() });
binop!(Sub, sub, |a, b| FieldElem { k: a.k.clone(), c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() });
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        for (x, y) in self.c.iter_mut().zip(&o.c) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}
impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        for (x, y) in self.c.iter_mut().zip(&o.c) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}
impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { k: self.k.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}
impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

pub(crate) fn rat_det(mut cols: Vec<Vec<Rat>>) -> Rat {
    let n = cols.len();
    let mut det = Rat::one();
    for i in 0..n {
        let Some(p) = (i..n).find(|&j| !cols[j][i].is_zero()) else {
            return Rat::zero();
        };
        if p != i {
            cols.swap(p, i);
            det = -det;
        }
        let piv = cols[i][i].clone();
        det *= &piv;
        for j in i + 1..n {
            if cols[j][i].is_zero() {
                continue;
            }
            let f = &cols[j][i] / &piv;
            for r in i..n {
                let v = &f * &cols[i][r];
                cols[j][r] -= v;
            }
        }
    }
    det
}

/// Integer-coefficient image of a rational polynomial modulo p, if p divides no denominator.
pub(crate) fn reduce_mod_p(c: &[Rat], p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(c.len());
    for x in c {
        let d = x.denom() % &pb;
        if d.is_zero() {
            return None;
        }
        let n = (x.numer() % &pb + &pb) % &pb;
        let d = (d + &pb) % &pb;
        let dv = d.to_u64()?;
        let nv = n.to_u64()?;
        out.push(nv * super::finite::inv_mod(dv, p) % p);
    }
    Some(out)
}

/// Certifies irreducibility over ℚ by intersecting mod-p factor-degree patterns.
fn certify_irreducible(m: &[Rat]) -> Result<()> {
    let n = m.len() - 1;
    if n == 1 {
        return Ok(());
    }
    if poly::gcd(m, &poly::derivative(m)).len() > 1 {
        return invalid("modulus is not squarefree");
    }
    if !poly::rational_roots(m).is_empty() {
        return invalid("modulus has a rational root");
    }
    // possible[d]: a rational factor of degree d is consistent with all patterns so far
    let mut possible = vec![true; n + 1];
    let mut p = 3u64;
    let mut tried = 0;
    while tried < 200 {
        p += 2;
        if !super::finite::is_prime(p) {
            continue;
        }
        let Some(f) = reduce_mod_p(m, p) else { continue };
        let mut f = f;
        fp_poly::trim(&mut f);
        if f.len() != n + 1 || !fp_poly::is_squarefree(&f, p) {
            continue;
        }
        tried += 1;
        let degs = fp_poly::factor_degrees(&f, p);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degs {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for d in 0..=n {
            possible[d] &= sums[d];
        }
        if (1..n).all(|d| !possible[d]) {
            return Ok(());
        }
    }
    Err(Error::Undetermined("could not certify irreducibility of the modulus".into()))
}

pub(crate) fn new_internal(modulus: Vec<Rat>, name: String, conductor: Option<u64>, zeta: Option<Vec<Rat>>) -> Field {
    Field::build(modulus, Some(name), conductor, zeta)
}
