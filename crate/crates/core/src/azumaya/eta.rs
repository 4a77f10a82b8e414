use super::swap_vec;
use crate::algebra::Algebra;
use crate::error::{invalid, Error, Result};
use crate::linalg::{kernel_of_rows, SVec};
use crate::scalars::{is_square, rational_square_class, FieldElem};
use num_bigint::BigInt;

/// The line `L` by which the symmetry of `A ⊗ A` is inner, and the scalar `c` with `w τ(w) = c`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaResult {
    pub grade: usize,
    pub grade_label: String,
    /// The symmetry of `L ⊗ L`.
    pub line_sign: i8,
    pub w: SVec,
    pub c: FieldElem,
    pub c_is_square: bool,
}

impl EtaResult {
    pub fn is_trivial(&self) -> bool {
        self.grade == 0 && self.c_is_square
    }
}

/// Solves `β(|b|, g) b w = w τ(b)` for `w ∈ A ⊗ A` of degree `−g`, over every degree `g`.
pub fn eta(a: &Algebra) -> Result<EtaResult> {
    let cat = a.category().clone();
    if cat.group().is_some() {
        return invalid("η is computed for graded kinds only");
    }
    let k = a.field().clone();
    let n = a.dim();
    if n == 0 {
        return invalid("the zero algebra has no η");
    }
    let pair = a.tensor(a)?;
    let nn = n * n;
    let mut found: Vec<(usize, SVec)> = Vec::new();
    for g in 0..cat.grade_count() {
        let dg = cat.grade_neg(g);
        let free: Vec<usize> = (0..nn).filter(|&i| pair.grade(i) == dg).collect();
        if free.is_empty() {
            continue;
        }
        let mut rows: Vec<SVec> = Vec::new();
        for b in pair.gens() {
            let bg = b.leading().map_or(0, |(i, _)| pair.grade(*i));
            let sg = cat.beta(bg, g);
            let tb = swap_vec(a, b);
            let mut acc: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); nn];
            for (col, &f) in free.iter().enumerate() {
                let e = pair.basis(f);
                let lhs = pair.mul(b, &e);
                let lhs = if sg < 0 { lhs.neg() } else { lhs };
                for (r, c) in lhs.sub(&pair.mul(&e, &tb)).iter() {
                    acc[*r].push((col, c.clone()));
                }
            }
            rows.extend(acc.into_iter().filter(|r| !r.is_empty()).map(SVec::from_pairs));
        }
        let sol = kernel_of_rows(free.len(), rows, &k);
        match sol.len() {
            0 => {}
            1 => found.push((g, sol[0].map_indices(|i| free[i]))),
            m => {
                let context = format!("η of {} in degree {}", a.name(), cat.describe_grade(g));
                return Err(Error::SolutionDim { context, found: m, expected: 1 });
            }
        }
    }
    if found.len() != 1 {
        return Err(Error::SolutionDim { context: format!("degrees carrying η of {}", a.name()), found: found.len(), expected: 1 });
    }
    let (grade, w) = found.pop().expect("one solution");
    let prod = pair.mul(&w, &swap_vec(a, &w));
    let (u0, uc) = pair.unit().leading().cloned().expect("nonzero unit");
    let c = prod.get(u0).cloned().unwrap_or_else(|| k.zero()) * uc.inv().expect("nonzero");
    if c.is_zero() || prod != pair.unit().scale(&c) {
        return Err(Error::Undetermined(format!("w τ(w) is not a nonzero scalar for {}", a.name())));
    }
    Ok(EtaResult {
        grade,
        grade_label: cat.describe_grade(grade),
        line_sign: cat.beta(grade, grade),
        c_is_square: is_square(&c)?,
        w,
        c,
    })
}

/// The squarefree integer representing `c` up to squares, for rational `c`.
pub fn eta_tilde_square_class(r: &EtaResult) -> Option<BigInt> {
    r.c.as_rational().map(rational_square_class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::{clifford_line, klein_clifford, matrix_algebra};
    use crate::scalars::Field;
    use crate::tencat::Category;

    #[test]
    fn lines_of_small_examples() {
        let k = Field::rationals();
        let split = eta(&matrix_algebra(&k, 2)).unwrap();
        assert!(split.is_trivial());
        let cl = clifford_line(&Category::super_vec(&k));
        let e = eta(&cl).unwrap();
        assert_eq!((e.grade, e.line_sign), (1, -1));
        let cl2 = cl.tensor(&cl).unwrap();
        let e2 = eta(&cl2).unwrap();
        assert_eq!(e2.grade, 0);
        let class = eta_tilde_square_class(&e2).unwrap();
        assert!(class < BigInt::from(0));
        assert!(!e2.c_is_square);
        let kl = klein_clifford(&k);
        let e3 = eta(&kl).unwrap();
        assert_eq!(kl.category().decode(e3.grade), vec![1, 1]);
        assert_eq!(e3.line_sign, 1);
    }
}
