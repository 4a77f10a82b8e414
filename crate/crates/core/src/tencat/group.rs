//! Finite permutation groups enumerated by closure.

use crate::error::{Error, Result};
use crate::scalars::FiniteField;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

pub const DEFAULT_GROUP_BOUND: usize = 10_000;

pub type Perm = Vec<u32>;

#[derive(Debug)]
struct GroupData {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// BFS tree: element = gens[parent.1] * elements[parent.0]
    parent: Vec<Option<(usize, usize)>>,
    inverse: Vec<usize>,
}

/// A finite group of permutations of `0..degree`, composed as maps: `(gh)(i) = g(h(i))`.
#[derive(Debug, Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.degree == o.0.degree && self.0.gens == o.0.gens)
    }
}

pub fn compose(g: &[u32], h: &[u32]) -> Perm {
    h.iter().map(|&i| g[i as usize]).collect()
}

pub fn invert(g: &[u32]) -> Perm {
    let mut out = vec![0; g.len()];
    for (i, &j) in g.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::from_permutations(0, Vec::new(), 1).expect("trivial group")
    }

    pub fn from_permutations(degree: usize, gens: Vec<Perm>, bound: usize) -> Result<Self> {
        for g in &gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| (i as usize) >= degree || std::mem::replace(&mut seen[i as usize], true)) {
                return Err(Error::Invalid(format!("generator {g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Perm = (0..degree as u32).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let h = compose(g, &elements[e]);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() == bound {
                    return Err(Error::Bound { what: "group order".into(), size: bound + 1, bound });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
                parent.push(Some((e, gi)));
            }
        }
        let inverse = elements.iter().map(|g| index[&invert(g)]).collect();
        Ok(FiniteGroup(Arc::new(GroupData { degree, gens, elements, index, parent, inverse })))
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }
    pub fn degree(&self) -> usize {
        self.0.degree
    }
    pub fn generators(&self) -> &[Perm] {
        &self.0.gens
    }
    pub fn element(&self, i: usize) -> &Perm {
        &self.0.elements[i]
    }
    pub fn elements(&self) -> &[Perm] {
        &self.0.elements
    }
    pub fn index_of(&self, g: &[u32]) -> Option<usize> {
        self.0.index.get(g).copied()
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.index[&compose(&self.0.elements[a], &self.0.elements[b])]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }
    pub fn generator_index(&self, gi: usize) -> usize {
        self.0.index[&self.0.gens[gi]]
    }

    /// Generator indices `[g_1, ..., g_r]` with element `= g_r ⋯ g_1`.
    pub fn word(&self, mut a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.0.parent[a] {
            w.push(g);
            a = p;
        }
        w.reverse();
        w
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(a, x);
            n += 1;
        }
        n
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let ci = classes.len();
            let mut cls = Vec::new();
            for g in 0..n {
                let c = self.mul(self.mul(g, a), self.inv(g));
                if class_of[c] == usize::MAX {
                    class_of[c] = ci;
                    cls.push(c);
                }
            }
            cls.sort_unstable();
            classes.push(cls);
        }
        classes
    }

    pub fn fixed_points(&self, a: usize) -> usize {
        self.0.elements[a].iter().enumerate().filter(|(i, &j)| *i as u32 == j).count()
    }
}

/// SL₂(F_q) acting on F_q² by permutations of packed vectors `x*q + y`.
pub fn sl2_group(k: &FiniteField) -> Result<FiniteGroup> {
    let q = k.q();
    let act = |m: [[u32; 2]; 2]| -> Perm {
        (0..q * q)
            .map(|v| {
                let (x, y) = ((v / q) as u32, (v % q) as u32);
                let nx = k.add(k.mul(m[0][0], x), k.mul(m[0][1], y));
                let ny = k.add(k.mul(m[1][0], x), k.mul(m[1][1], y));
                (nx as usize * q + ny as usize) as u32
            })
            .collect()
    };
    let one = k.from_int(1);
    let gens = vec![act([[one, one], [0, one]]), act([[0, k.neg(one)], [one, 0]])];
    FiniteGroup::from_permutations(q * q, gens, DEFAULT_GROUP_BOUND)
}

/// The matrix `[[a, b], [c, d]]` of an element of [`sl2_group`].
pub fn sl2_matrix(g: &[u32], q: usize) -> [[u32; 2]; 2] {
    let e1 = g[q] as usize;
    let e2 = g[1] as usize;
    [[(e1 / q) as u32, (e2 / q) as u32], [(e1 % q) as u32, (e2 % q) as u32]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_s3() {
        let g = FiniteGroup::from_permutations(3, vec![vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.conjugacy_classes().len(), 3);
        for a in 0..6 {
            let mut x = 0;
            for &gi in &g.word(a) {
                x = g.mul(g.generator_index(gi), x);
            }
            assert_eq!(x, a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn sl2_orders() {
        let g3 = sl2_group(&FiniteField::new(3, 1).unwrap()).unwrap();
        assert_eq!(g3.order(), 24);
        assert_eq!(g3.conjugacy_classes().len(), 7);
        let g5 = sl2_group(&FiniteField::new(5, 1).unwrap()).unwrap();
        assert_eq!(g5.order(), 120);
        let t = sl2_matrix(&g3.generators()[0], 3);
        assert_eq!(t, [[1, 1], [0, 1]]);
    }

    #[test]
    fn bound_is_enforced() {
        let r = FiniteGroup::from_permutations(4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 10);
        assert!(matches!(r, Err(Error::Bound { .. })));
    }
}
