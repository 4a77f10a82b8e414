//! Small named algebras used throughout the checks.

use super::{end_algebra, Algebra};
use crate::linalg::SVec;
use crate::scalars::Field;
use crate::tencat::{Category, CategorySpec};

fn signed(i: usize, s: i64, k: &Field) -> SVec {
    SVec::single(i, k.from_int(s))
}

/// Hamilton's quaternions over ℚ with basis `1, i, j, k`.
pub fn quaternions() -> Algebra {
    let k = Field::rationals();
    // [a][b] = sign · basis, for a, b in {1, i, j, k}
    const T: [[(usize, i64); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    let table = T.iter().flat_map(|row| row.iter().map(|&(b, s)| signed(b, s, &k))).collect();
    Algebra::from_table("H", Category::vec(&k).trivial(4), table, SVec::unit(0, &k))
        .expect("quaternion table is valid")
        .with_labels(["1", "i", "j", "k"].map(String::from).to_vec())
        .expect("four labels")
}

/// `M_n(k) = End(kⁿ)` in `Vec`.
pub fn matrix_algebra(k: &Field, n: usize) -> Algebra {
    end_algebra(&Category::vec(k).trivial(n)).expect("matrix algebra").with_name(format!("M{n}"))
}

/// `k[x]/(x² = 1)` with `x` odd in super vector spaces (or in the category's degree 1).
pub fn clifford_line(cat: &Category) -> Algebra {
    clifford_line_in(cat, 1)
}

/// `k[x]/(x² = 1)` with `x` placed in degree `g`, where `2g = 0`.
pub fn clifford_line_in(cat: &Category, g: usize) -> Algebra {
    let k = cat.field().clone();
    let table = vec![SVec::unit(0, &k), SVec::unit(1, &k), SVec::unit(1, &k), SVec::unit(0, &k)];
    Algebra::from_table(format!("Cl[{}]", cat.describe_grade(g)), cat.graded(vec![0, g]), table, SVec::unit(0, &k))
        .expect("clifford line is valid")
        .with_labels(vec!["1".into(), "x".into()])
        .expect("two labels")
}

/// `(ℤ/2)²`-graded vector spaces with the super sign rule for total degree.
pub fn klein_category(k: &Field) -> Category {
    Category::new(CategorySpec::Graded { orders: vec![2, 2], bichar: vec![vec![-1, -1], vec![-1, -1]] }, k.clone())
        .expect("valid grading")
}

/// `k[x,y]/(x² = y² = 1)` with `x` in degree `(1,0)` and `y` in degree `(0,1)`; `xy = −yx`.
pub fn klein_clifford(k: &Field) -> Algebra {
    let cat = klein_category(k);
    let x = clifford_line_in(&cat, cat.encode(&[1, 0]));
    let y = clifford_line_in(&cat, cat.encode(&[0, 1]));
    x.tensor(&y).expect("same category").with_name("Cl(x,y)")
}

/// The commutative algebra `k × k` with idempotent basis.
pub fn split_product(k: &Field) -> Algebra {
    let table = vec![SVec::unit(0, k), SVec::new(), SVec::new(), SVec::unit(1, k)];
    let unit = SVec::from_pairs([(0, k.one()), (1, k.one())]);
    Algebra::from_table("QxQ", Category::vec(k).trivial(2), table, unit).expect("k×k is valid")
}

/// The zero algebra.
pub fn zero_algebra(k: &Field) -> Algebra {
    Algebra::from_table("0", Category::vec(k).trivial(0), Vec::new(), SVec::new()).expect("zero algebra")
}
