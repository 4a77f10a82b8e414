//! Concrete symmetric tensor categories: vector spaces, bicharacter-graded spaces and
//! representations of finite permutation groups. Associators are strict.

pub mod group;

use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, LinMap, SVec};
use crate::scalars::{Field, FieldElem};
pub use group::{sl2_group, sl2_matrix, FiniteGroup, Perm, DEFAULT_GROUP_BOUND};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum CategorySpec {
    Vec,
    /// Graded by `Π ℤ/orders[i]`; `β(a,b) = Π bichar[i][j]^(a_i b_j)` with entries ±1.
    Graded { orders: Vec<u32>, bichar: Vec<Vec<i8>> },
    Rep(FiniteGroup),
}

impl CategorySpec {
    pub fn super_vec() -> Self {
        CategorySpec::Graded { orders: vec![2], bichar: vec![vec![-1]] }
    }

    fn validate(&self) -> Result<()> {
        if let CategorySpec::Graded { orders, bichar } = self {
            let r = orders.len();
            if orders.iter().any(|&n| n == 0) {
                return Err(Error::Invalid("grading orders must be positive".into()));
            }
            if bichar.len() != r || bichar.iter().any(|row| row.len() != r) {
                return Err(Error::Invalid("bicharacter must be an r×r sign matrix".into()));
            }
            for i in 0..r {
                for j in 0..r {
                    let b = bichar[i][j];
                    if b != 1 && b != -1 {
                        return Err(Error::Invalid("bicharacter entries must be ±1".into()));
                    }
                    if b != bichar[j][i] {
                        return Err(Error::Invalid("bicharacter must be symmetric".into()));
                    }
                    if b == -1 && (orders[i] % 2 == 1 || orders[j] % 2 == 1) {
                        return Err(Error::Invalid("a sign −1 needs even orders on both factors".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
struct CategoryData {
    spec: CategorySpec,
    field: Field,
}

/// A category instance over a fixed number field.
#[derive(Debug, Clone)]
pub struct Category(Arc<CategoryData>);

impl PartialEq for Category {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.spec == o.0.spec && self.0.field == o.0.field)
    }
}

impl Category {
    pub fn new(spec: CategorySpec, field: Field) -> Result<Self> {
        spec.validate()?;
        Ok(Category(Arc::new(CategoryData { spec, field })))
    }
    pub fn vec(field: &Field) -> Self {
        Self::new(CategorySpec::Vec, field.clone()).expect("valid")
    }
    pub fn super_vec(field: &Field) -> Self {
        Self::new(CategorySpec::super_vec(), field.clone()).expect("valid")
    }

    pub fn spec(&self) -> &CategorySpec {
        &self.0.spec
    }
    pub fn field(&self) -> &Field {
        &self.0.field
    }

    fn orders(&self) -> &[u32] {
        match &self.0.spec {
            CategorySpec::Graded { orders, .. } => orders,
            _ => &[],
        }
    }

    /// Number of grading degrees (one for ungraded kinds).
    pub fn grade_count(&self) -> usize {
        self.orders().iter().map(|&n| n as usize).product()
    }

    /// Components of a packed degree; the first component is most significant.
    pub fn decode(&self, g: usize) -> Vec<u32> {
        let o = self.orders();
        let mut out = vec![0; o.len()];
        let mut g = g;
        for i in (0..o.len()).rev() {
            out[i] = (g % o[i] as usize) as u32;
            g /= o[i] as usize;
        }
        out
    }

    pub fn encode(&self, c: &[u32]) -> usize {
        self.orders().iter().zip(c).fold(0, |acc, (&n, &x)| acc * n as usize + (x % n) as usize)
    }

    pub fn grade_add(&self, a: usize, b: usize) -> usize {
        if self.orders().is_empty() {
            return 0;
        }
        let (x, y) = (self.decode(a), self.decode(b));
        self.encode(&x.iter().zip(&y).map(|(u, v)| u + v).collect::<Vec<_>>())
    }

    pub fn grade_neg(&self, a: usize) -> usize {
        let o = self.orders();
        let x = self.decode(a);
        self.encode(&x.iter().zip(o).map(|(u, n)| (n - u) % n).collect::<Vec<_>>())
    }

    /// The sign bicharacter β(a, b).
    pub fn beta(&self, a: usize, b: usize) -> i8 {
        let CategorySpec::Graded { bichar, .. } = &self.0.spec else {
            return 1;
        };
        let (x, y) = (self.decode(a), self.decode(b));
        let mut s = 1i8;
        for (i, row) in bichar.iter().enumerate() {
            for (j, &bij) in row.iter().enumerate() {
                if bij == -1 && (x[i] * y[j]) % 2 == 1 {
                    s = -s;
                }
            }
        }
        s
    }

    pub fn beta_elem(&self, a: usize, b: usize) -> FieldElem {
        self.field().from_int(self.beta(a, b) as i64)
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.0.spec {
            CategorySpec::Rep(g) => Some(g),
            _ => None,
        }
    }

    pub fn unit(&self) -> Obj {
        self.line(0)
    }

    /// The invertible line in degree `g` (trivial representation for `Rep`).
    pub fn line(&self, g: usize) -> Obj {
        self.graded(vec![g])
    }

    /// Object with one basis vector per listed degree.
    pub fn graded(&self, grades: Vec<usize>) -> Obj {
        let n = grades.len();
        let action = self.group().map(|g| vec![LinMap::identity(n, self.field()); g.generators().len()]);
        Obj { cat: self.clone(), grades, action }
    }

    pub fn trivial(&self, n: usize) -> Obj {
        self.graded(vec![0; n])
    }

    /// Super vector space k^{p|q}.
    pub fn super_dims(&self, even: usize, odd: usize) -> Obj {
        let mut g = vec![0; even];
        g.extend(std::iter::repeat(1).take(odd));
        self.graded(g)
    }

    /// Permutation representation: generator `i` acts by `perms[i]` on the basis.
    pub fn permutation_rep(&self, perms: &[Perm]) -> Result<Obj> {
        let g = self.group().ok_or_else(|| Error::Mismatch("permutation rep outside a Rep category".into()))?;
        if perms.len() != g.generators().len() {
            return Err(Error::Invalid("one permutation per group generator is required".into()));
        }
        let n = perms.first().map_or(0, |p| p.len());
        let k = self.field();
        let action = perms
            .iter()
            .map(|p| LinMap { rows: n, cols: p.iter().map(|&j| SVec::unit(j as usize, k)).collect() })
            .collect();
        let obj = Obj { cat: self.clone(), grades: vec![0; n], action: Some(action) };
        obj.check_relations()?;
        Ok(obj)
    }

    /// Representation from explicit generator matrices.
    pub fn rep_from_matrices(&self, mats: Vec<LinMap>) -> Result<Obj> {
        let g = self.group().ok_or_else(|| Error::Mismatch("matrix rep outside a Rep category".into()))?;
        if mats.len() != g.generators().len() {
            return Err(Error::Invalid("one matrix per group generator is required".into()));
        }
        let n = mats.first().map_or(0, |m| m.rows);
        let obj = Obj { cat: self.clone(), grades: vec![0; n], action: Some(mats) };
        obj.check_relations()?;
        Ok(obj)
    }

    /// One invertible line per grading degree.
    pub fn pic(&self) -> Result<Vec<Obj>> {
        if self.group().is_some() {
            return Err(Error::Invalid("Pic enumeration is only available for graded kinds".into()));
        }
        Ok((0..self.grade_count()).map(|g| self.line(g)).collect())
    }

    pub fn describe_grade(&self, g: usize) -> String {
        let c = self.decode(g);
        match c.len() {
            0 => "0".into(),
            1 => c[0].to_string(),
            _ => format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        }
    }
}

/// An object: one graded line per basis vector, plus generator actions in `Rep`.
#[derive(Debug, Clone)]
pub struct Obj {
    cat: Category,
    grades: Vec<usize>,
    action: Option<Vec<LinMap>>,
}

impl PartialEq for Obj {
    fn eq(&self, o: &Self) -> bool {
        self.cat == o.cat && self.grades == o.grades && self.action == o.action
    }
}

impl Obj {
    pub fn category(&self) -> &Category {
        &self.cat
    }
    pub fn field(&self) -> &Field {
        self.cat.field()
    }
    pub fn dim(&self) -> usize {
        self.grades.len()
    }
    pub fn grades(&self) -> &[usize] {
        &self.grades
    }
    pub fn grade(&self, i: usize) -> usize {
        self.grades[i]
    }
    pub fn action(&self) -> Option<&[LinMap]> {
        self.action.as_deref()
    }

    /// Action of the group element with index `e`, composed along its generator word.
    pub fn element_action(&self, e: usize) -> Option<LinMap> {
        let (g, act) = (self.cat.group()?, self.action.as_ref()?);
        let k = self.field();
        Some(g.word(e).iter().fold(LinMap::identity(self.dim(), k), |acc, &gi| act[gi].compose(&acc)))
    }

    fn same_category(&self, o: &Obj) -> Result<()> {
        if self.cat != o.cat {
            return Err(Error::Mismatch("objects live in different categories".into()));
        }
        Ok(())
    }

    /// Relations of the enumerated group hold on every element word and every element has
    /// invertible image; checked by comparing the action along BFS words against products.
    fn check_relations(&self) -> Result<()> {
        let (Some(g), Some(act)) = (self.cat.group(), &self.action) else {
            return Ok(());
        };
        let k = self.field();
        if act.iter().any(|m| m.rows != self.dim() || m.ncols() != self.dim() || m.inverse(k).is_none()) {
            return Err(Error::Invalid("generator action must be invertible of the object's size".into()));
        }
        let rho = |e: usize| {
            g.word(e).iter().fold(LinMap::identity(self.dim(), k), |acc, &gi| act[gi].compose(&acc))
        };
        let images: Vec<LinMap> = (0..g.order()).map(rho).collect();
        for e in 0..g.order() {
            for gi in 0..g.generators().len() {
                let prod = g.mul(g.generator_index(gi), e);
                if act[gi].compose(&images[e]) != images[prod] {
                    return Err(Error::Invalid(format!("action violates a group relation at element {e}")));
                }
            }
        }
        Ok(())
    }

    pub fn tensor(&self, o: &Obj) -> Result<Obj> {
        self.same_category(o)?;
        let mut grades = Vec::with_capacity(self.dim() * o.dim());
        for &a in &self.grades {
            for &b in &o.grades {
                grades.push(self.cat.grade_add(a, b));
            }
        }
        let action = match (&self.action, &o.action) {
            (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(a, b)| a.kron(b)).collect()),
            _ => None,
        };
        Ok(Obj { cat: self.cat.clone(), grades, action })
    }

    pub fn tensor_power(&self, n: usize) -> Obj {
        (0..n).fold(self.cat.unit(), |acc, _| acc.tensor(self).expect("same category"))
    }

    pub fn direct_sum(&self, o: &Obj) -> Result<Obj> {
        self.same_category(o)?;
        let mut grades = self.grades.clone();
        grades.extend(&o.grades);
        let n = self.dim();
        let action = match (&self.action, &o.action) {
            (Some(x), Some(y)) => Some(
                x.iter()
                    .zip(y)
                    .map(|(a, b)| {
                        let mut cols = a.cols.clone();
                        cols.extend(b.cols.iter().map(|c| c.map_indices(|i| i + n)));
                        LinMap { rows: n + o.dim(), cols }
                    })
                    .collect(),
            ),
            _ => None,
        };
        Ok(Obj { cat: self.cat.clone(), grades, action })
    }

    pub fn dual(&self) -> Obj {
        let k = self.field();
        let grades = self.grades.iter().map(|&g| self.cat.grade_neg(g)).collect();
        let action = self
            .action
            .as_ref()
            .map(|a| a.iter().map(|m| m.inverse(k).expect("invertible action").transpose()).collect());
        Obj { cat: self.cat.clone(), grades, action }
    }

    /// Copy of the object with the same category data but a new grade list and no action.
    pub fn regraded(&self, grades: Vec<usize>) -> Obj {
        self.cat.graded(grades)
    }

    /// Evaluation `X* ⊗ X → 1`.
    pub fn evaluation(&self) -> LinMap {
        let n = self.dim();
        let k = self.field();
        LinMap::from_fn(1, n * n, |c| if c / n == c % n { SVec::unit(0, k) } else { SVec::new() })
    }

    /// Coevaluation `1 → X ⊗ X*`.
    pub fn coevaluation(&self) -> LinMap {
        let n = self.dim();
        let k = self.field();
        LinMap { rows: n * n, cols: vec![SVec::from_pairs((0..n).map(|i| (i * n + i, k.one())))] }
    }

    /// `ev ∘ τ ∘ coev` as a scalar.
    pub fn categorical_dimension(&self) -> FieldElem {
        let d = self.dual();
        let tau = symmetry(self, &d).expect("same category");
        let m = self.evaluation().compose(&tau.map).compose(&self.coevaluation());
        m.entry(0, 0).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// The sign by which the symmetry acts on `L ⊗ L`.
    pub fn invertible_sign(&self) -> Result<i8> {
        if self.dim() != 1 {
            return Err(Error::Invalid(format!("object of dimension {} is not invertible", self.dim())));
        }
        let t = symmetry(self, self)?;
        let c = t.map.entry(0, 0).cloned().expect("nonzero symmetry");
        Ok(if c.is_one() { 1 } else { -1 })
    }

    /// Whether a matrix `X → Y` is a morphism (degree-preserving, and intertwining in `Rep`).
    pub fn is_morphism_to(&self, y: &Obj, m: &LinMap) -> bool {
        for (j, c) in m.cols.iter().enumerate() {
            if c.iter().any(|(i, _)| y.grades[*i] != self.grades[j]) {
                return false;
            }
        }
        match (&self.action, &y.action) {
            (Some(ax), Some(ay)) => ax.iter().zip(ay).all(|(gx, gy)| gy.compose(m) == m.compose(gx)),
            _ => true,
        }
    }
}

/// A morphism between objects of the same category.
#[derive(Debug, Clone, PartialEq)]
pub struct Mor {
    pub source: Obj,
    pub target: Obj,
    pub map: LinMap,
}

impl Mor {
    pub fn new(source: Obj, target: Obj, map: LinMap) -> Result<Self> {
        if map.rows != target.dim() || map.ncols() != source.dim() {
            return Err(Error::Invalid("matrix shape does not match the objects".into()));
        }
        if !source.is_morphism_to(&target, &map) {
            return Err(Error::Invalid("matrix is not a morphism in the category".into()));
        }
        Ok(Mor { source, target, map })
    }

    pub fn compose(&self, first: &Mor) -> Mor {
        Mor { source: first.source.clone(), target: self.target.clone(), map: self.map.compose(&first.map) }
    }

    pub fn tensor(&self, o: &Mor) -> Result<Mor> {
        Ok(Mor {
            source: self.source.tensor(&o.source)?,
            target: self.target.tensor(&o.target)?,
            map: self.map.kron(&o.map),
        })
    }

    pub fn identity(x: &Obj) -> Mor {
        Mor { source: x.clone(), target: x.clone(), map: LinMap::identity(x.dim(), x.field()) }
    }
}

/// The symmetry `τ_{X,Y}: X ⊗ Y → Y ⊗ X`.
pub fn symmetry(x: &Obj, y: &Obj) -> Result<Mor> {
    x.same_category(y)?;
    let (n, m) = (x.dim(), y.dim());
    let cat = x.category();
    let map = LinMap::from_fn(m * n, n * m, |c| {
        let (i, j) = (c / m, c % m);
        SVec::single(j * n + i, cat.beta_elem(x.grade(i), y.grade(j)))
    });
    Ok(Mor { source: x.tensor(y)?, target: y.tensor(x)?, map })
}

/// Basis of `Hom(X, Y)`; a matrix `M` is encoded with entry `(i, j)` at index `i * dim X + j`.
pub fn hom_space(x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
    x.same_category(y)?;
    let k = x.field();
    let (n, m) = (x.dim(), y.dim());
    let allowed: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| y.grade(i) == x.grade(j)).collect();
    let to_map = |v: &SVec| {
        let mut cols = vec![Vec::new(); n];
        for (u, c) in v.iter() {
            let (i, j) = allowed[*u];
            cols[j].push((i, c.clone()));
        }
        LinMap { rows: m, cols: cols.into_iter().map(SVec::from_pairs).collect() }
    };
    let basis = match (x.action(), y.action()) {
        (Some(ax), Some(ay)) => {
            // unknown u ↦ matrix unit E_{ij}; constraint gy E - E gx = 0 for each generator
            let mut rows = Vec::new();
            for (gx, gy) in ax.iter().zip(ay) {
                let images: Vec<LinMap> = (0..allowed.len())
                    .map(|u| {
                        let e = to_map(&SVec::unit(u, k));
                        gy.compose(&e).sub(&e.compose(gx))
                    })
                    .collect();
                for r in 0..m {
                    for c in 0..n {
                        rows.push(SVec::from_pairs(
                            images.iter().enumerate().filter_map(|(u, im)| im.entry(r, c).map(|v| (u, v.clone()))),
                        ));
                    }
                }
            }
            kernel_of_rows(allowed.len(), rows.into_iter().filter(|r| !r.is_zero()), k)
        }
        _ => (0..allowed.len()).map(|u| SVec::unit(u, k)).collect(),
    };
    Ok(basis.iter().map(|v| Mor { source: x.clone(), target: y.clone(), map: to_map(v) }).collect())
}

/// `τ_{X,Y⊗Z} = (id_Y ⊗ τ_{X,Z}) ∘ (τ_{X,Y} ⊗ id_Z)`.
pub fn hexagon_holds(x: &Obj, y: &Obj, z: &Obj) -> Result<bool> {
    let lhs = symmetry(x, &y.tensor(z)?)?;
    let a = symmetry(x, y)?.tensor(&Mor::identity(z))?;
    let b = Mor::identity(y).tensor(&symmetry(x, z)?)?;
    Ok(lhs.map == b.map.compose(&a.map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::cyclotomic;

    fn klein(k: &Field) -> Category {
        Category::new(CategorySpec::Graded { orders: vec![2, 2], bichar: vec![vec![-1, -1], vec![-1, -1]] }, k.clone())
            .unwrap()
    }

    #[test]
    fn signs_and_dimensions() {
        let k = cyclotomic(1);
        let s = Category::super_vec(&k);
        let odd = s.line(1);
        assert_eq!(odd.invertible_sign().unwrap(), -1);
        assert_eq!(s.super_dims(1, 1).categorical_dimension(), k.zero());
        assert_eq!(s.super_dims(0, 2).categorical_dimension(), k.from_int(-2));
        assert_eq!(s.super_dims(1, 1).tensor(&s.super_dims(1, 1)).unwrap().grades().iter().filter(|&&g| g == 1).count(), 2);
        let kl = klein(&k);
        let (a, b) = (kl.line(kl.encode(&[1, 0])), kl.line(kl.encode(&[0, 1])));
        assert_eq!(symmetry(&a, &b).unwrap().map.entry(0, 0).unwrap(), &k.from_int(-1));
        assert_eq!(kl.line(kl.encode(&[1, 1])).invertible_sign().unwrap(), 1);
        assert_eq!(Category::vec(&k).trivial(5).categorical_dimension(), k.from_int(5));
    }

    #[test]
    fn homs_and_hexagon() {
        let k = cyclotomic(1);
        let v = Category::vec(&k);
        assert_eq!(hom_space(&v.trivial(2), &v.trivial(3)).unwrap().len(), 6);
        let s = Category::super_vec(&k);
        assert!(hom_space(&s.line(0), &s.line(1)).unwrap().is_empty());
        let x = s.super_dims(1, 1);
        let y = s.super_dims(0, 2);
        assert!(hexagon_holds(&x, &y, &x).unwrap());
        let t = symmetry(&x, &y).unwrap();
        let back = symmetry(&y, &x).unwrap();
        assert!(back.map.compose(&t.map).is_identity());
    }

    #[test]
    fn invariants_of_sl2_permutation_module() {
        let k = cyclotomic(3);
        let f3 = crate::scalars::FiniteField::new(3, 1).unwrap();
        let g = sl2_group(&f3).unwrap();
        let cat = Category::new(CategorySpec::Rep(g.clone()), k.clone()).unwrap();
        let kv = cat.permutation_rep(g.generators()).unwrap();
        let homs = hom_space(&cat.unit(), &kv).unwrap();
        // orbit count of SL₂(F₃) on F₃²
        let mut seen = vec![false; 9];
        let mut orbits = 0;
        for v in 0..9 {
            if !seen[v] {
                orbits += 1;
                for e in g.elements() {
                    seen[e[v] as usize] = true;
                }
            }
        }
        assert_eq!(homs.len(), orbits);
        let burnside: usize = (0..g.order()).map(|e| g.fixed_points(e)).sum::<usize>() / g.order();
        assert_eq!(homs.len(), burnside);
        for h in &homs {
            assert!(cat.unit().is_morphism_to(&kv, &h.map));
        }
    }
}
