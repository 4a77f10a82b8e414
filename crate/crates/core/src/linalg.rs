//! Sparse exact linear algebra over a number field.

use crate::scalars::{Field, FieldElem};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// A sparse vector: strictly increasing indices with nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SVec(Vec<(usize, FieldElem)>);

impl SVec {
    pub fn new() -> Self {
        SVec(Vec::new())
    }

    pub fn unit(i: usize, k: &Field) -> Self {
        SVec(vec![(i, k.one())])
    }

    pub fn single(i: usize, c: FieldElem) -> Self {
        if c.is_zero() {
            SVec::new()
        } else {
            SVec(vec![(i, c)])
        }
    }

    /// Builds from arbitrary pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, FieldElem)>) -> Self {
        let mut acc = Acc::default();
        for (i, c) in pairs {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn from_dense(v: &[FieldElem]) -> Self {
        SVec(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect())
    }

    pub fn to_dense(&self, n: usize, k: &Field) -> Vec<FieldElem> {
        let mut out = vec![k.zero(); n];
        for (i, c) in &self.0 {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn nnz(&self) -> usize {
        self.0.len()
    }
    pub fn iter(&self) -> impl Iterator<Item = &(usize, FieldElem)> {
        self.0.iter()
    }
    pub fn entries(&self) -> &[(usize, FieldElem)] {
        &self.0
    }
    pub fn leading(&self) -> Option<&(usize, FieldElem)> {
        self.0.first()
    }
    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|e| e.0)
    }

    pub fn get(&self, i: usize) -> Option<&FieldElem> {
        self.0.binary_search_by_key(&i, |e| e.0).ok().map(|p| &self.0[p].1)
    }

    pub fn scale(&self, c: &FieldElem) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn neg(&self) -> SVec {
        SVec(self.0.iter().map(|(i, x)| (*i, -x)).collect())
    }

    /// `self + c * o`, merging sorted supports.
    pub fn axpy(&self, c: &FieldElem, o: &SVec) -> SVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), o.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec(out)
    }

    pub fn add(&self, o: &SVec) -> SVec {
        match o.0.first() {
            None => self.clone(),
            Some((_, x)) => self.axpy(&x.field().one(), o),
        }
    }

    pub fn sub(&self, o: &SVec) -> SVec {
        match o.0.first() {
            None => self.clone(),
            Some((_, x)) => self.axpy(&-x.field().one(), o),
        }
    }

    pub fn dot(&self, o: &SVec) -> Option<FieldElem> {
        let mut acc: Option<FieldElem> = None;
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() && b < o.0.len() {
            let (i, x) = &self.0[a];
            let (j, y) = &o.0[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                let t = x * y;
                acc = Some(match acc {
                    None => t,
                    Some(s) => s + t,
                });
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Reindexes entries; `f` must be injective on the support.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SVec {
        let mut v: Vec<(usize, FieldElem)> = self.0.iter().map(|(i, c)| (f(*i), c.clone())).collect();
        v.sort_by_key(|e| e.0);
        SVec(v)
    }
}

/// Accumulator for sparse sums.
#[derive(Default)]
pub struct Acc(HashMap<usize, FieldElem>);

impl Acc {
    pub fn add(&mut self, i: usize, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&i) {
            Some(x) => *x += c,
            None => {
                self.0.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &FieldElem, v: &SVec) {
        if c.is_one() {
            for (i, x) in v.iter() {
                self.add(*i, x);
            }
        } else {
            for (i, x) in v.iter() {
                self.add(*i, &(c * x));
            }
        }
    }

    pub fn finish(self) -> SVec {
        let mut v: Vec<(usize, FieldElem)> = self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|e| e.0);
        SVec(v)
    }
}

/// A linear map given by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub rows: usize,
    pub cols: Vec<SVec>,
}

impl LinMap {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        LinMap { rows, cols: vec![SVec::new(); ncols] }
    }

    pub fn identity(n: usize, k: &Field) -> Self {
        LinMap { rows: n, cols: (0..n).map(|i| SVec::unit(i, k)).collect() }
    }

    pub fn from_fn(rows: usize, ncols: usize, f: impl Fn(usize) -> SVec + Sync + Send) -> Self {
        LinMap { rows, cols: (0..ncols).into_par_iter().map(f).collect() }
    }

    /// Builds from dense rows.
    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let cols = (0..nc)
            .map(|j| SVec::from_dense(&rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
            .collect();
        LinMap { rows: nr, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&FieldElem> {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = Acc::default();
        for (j, c) in v.iter() {
            acc.add_scaled(c, &self.cols[*j]);
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert_eq!(other.rows, self.ncols(), "composition shape mismatch");
        LinMap { rows: self.rows, cols: other.cols.par_iter().map(|c| self.apply(c)).collect() }
    }

    pub fn transpose(&self) -> LinMap {
        let mut rows: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                rows[*i].push((j, x.clone()));
            }
        }
        LinMap { rows: self.ncols(), cols: rows.into_iter().map(SVec).collect() }
    }

    pub fn scale(&self, c: &FieldElem) -> LinMap {
        LinMap { rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn add(&self, o: &LinMap) -> LinMap {
        LinMap { rows: self.rows, cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &LinMap) -> LinMap {
        LinMap { rows: self.rows, cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Entries as one vector, `(i, j)` at `i * ncols + j`.
    pub fn flatten(&self) -> SVec {
        let nc = self.ncols();
        SVec::from_pairs(self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (i * nc + j, x.clone()))))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.ncols()
            && self.cols.iter().enumerate().all(|(j, c)| c.nnz() == 1 && c.0[0].0 == j && c.0[0].1.is_one())
    }

    pub fn trace(&self, k: &Field) -> FieldElem {
        let mut t = k.zero();
        for (j, c) in self.cols.iter().enumerate() {
            if let Some(x) = c.get(j) {
                t += x;
            }
        }
        t
    }

    /// Kronecker product; index of `(i, j)` is `i * other.dim + j`.
    pub fn kron(&self, other: &LinMap) -> LinMap {
        let (r2, c2) = (other.rows, other.ncols());
        let cols = (0..self.ncols() * c2)
            .into_par_iter()
            .map(|col| {
                let (a, b) = (col / c2, col % c2);
                let mut out = Vec::new();
                for (i, x) in self.cols[a].iter() {
                    for (j, y) in other.cols[b].iter() {
                        out.push((i * r2 + j, x * y));
                    }
                }
                SVec(out)
            })
            .collect();
        LinMap { rows: self.rows * r2, cols }
    }

    /// Rank, eliminating independently on blocks of columns with disjoint row supports.
    pub fn rank(&self) -> usize {
        self.column_blocks()
            .par_iter()
            .map(|blk| {
                let mut e = Echelon::new(self.rows);
                blk.iter().filter(|&&c| e.insert(&self.cols[c])).count()
            })
            .sum()
    }

    /// Groups columns into classes connected through shared rows.
    fn column_blocks(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.rows).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in &self.cols {
            if let Some(&(first, _)) = c.leading() {
                for (i, _) in c.iter().skip(1) {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, *i));
                    parent[a] = b;
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (j, c) in self.cols.iter().enumerate() {
            if let Some(&(first, _)) = c.leading() {
                blocks.entry(find(&mut parent, first)).or_default().push(j);
            }
        }
        blocks.into_values().collect()
    }

    /// Basis of the kernel.
    pub fn kernel(&self, k: &Field) -> Vec<SVec> {
        kernel_of_rows(self.ncols(), self.transpose().cols, k)
    }

    /// Some `x` with `self(x) = b`.
    pub fn solve(&self, b: &SVec, k: &Field) -> Option<SVec> {
        let n = self.ncols();
        let t = self.transpose();
        let mut e = Echelon::new(n + 1);
        for (i, r) in t.cols.iter().enumerate() {
            let mut row = r.clone();
            if let Some(x) = b.get(i) {
                row.0.push((n, -x));
            }
            e.insert(&row);
        }
        // rows of b outside the transpose's range
        if let Some(mx) = b.max_index() {
            for i in t.cols.len()..=mx {
                if let Some(x) = b.get(i) {
                    e.insert(&SVec(vec![(n, -x)]));
                }
            }
        }
        if e.pivots.contains_key(&n) {
            return None;
        }
        let mut vals: BTreeMap<usize, FieldElem> = BTreeMap::new();
        vals.insert(n, k.one());
        e.back_substitute(&mut vals);
        vals.remove(&n);
        Some(SVec::from_pairs(vals))
    }

    /// Inverse by Gauss–Jordan elimination on `[Mᵀ-rows | I]`.
    pub fn inverse(&self, k: &Field) -> Option<LinMap> {
        let n = self.rows;
        if n != self.ncols() {
            return None;
        }
        let t = self.transpose();
        let mut e = Echelon::new(2 * n);
        for (i, r) in t.cols.iter().enumerate() {
            let mut row = r.clone();
            row.0.push((n + i, k.one()));
            e.insert(&row);
        }
        if (0..n).any(|p| !e.pivots.contains_key(&p)) {
            return None;
        }
        let mut reduced: BTreeMap<usize, SVec> = BTreeMap::new();
        for (&p, row) in e.pivots.iter().rev() {
            let mut acc = Acc::default();
            for (j, x) in row.iter().skip(1) {
                if *j < n {
                    acc.add_scaled(&-x.clone(), &reduced[j]);
                } else {
                    acc.add(*j, x);
                }
            }
            reduced.insert(p, acc.finish());
        }
        let mut cols: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); n];
        for (p, aug) in reduced {
            for (j, x) in aug.0 {
                cols[j - n].push((p, x));
            }
        }
        Some(LinMap { rows: n, cols: cols.into_iter().map(SVec).collect() })
    }
}

/// Incremental row echelon form; each stored row has leading coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    pivots: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut work: BTreeMap<usize, FieldElem> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let Some((&i, _)) = work.range(cursor..).find(|(i, _)| self.pivots.contains_key(i)) else {
                break;
            };
            let c = work.remove(&i).unwrap();
            for (j, x) in self.pivots[&i].iter().skip(1) {
                let t = &c * x;
                match work.get_mut(j) {
                    Some(y) => {
                        *y -= &t;
                        if y.is_zero() {
                            work.remove(j);
                        }
                    }
                    None => {
                        work.insert(*j, -t);
                    }
                }
            }
            cursor = i + 1;
        }
        SVec(work.into_iter().collect())
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let mut r = r.scale(&inv);
        r.0[0].1 = lead.field().one();
        self.pivots.insert(p, r);
        true
    }

    /// Fills in pivot variables from the given values of the others (missing values are zero).
    fn back_substitute(&self, vals: &mut BTreeMap<usize, FieldElem>) {
        for (&p, row) in self.pivots.iter().rev() {
            let mut acc: Option<FieldElem> = None;
            for (j, x) in row.iter().skip(1) {
                if let Some(v) = vals.get(j) {
                    let t = x * v;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => s + t,
                    });
                }
            }
            if let Some(s) = acc {
                if !s.is_zero() {
                    vals.insert(p, -s);
                }
            }
        }
    }

    pub fn nullspace(&self) -> Vec<SVec> {
        let free: Vec<usize> = (0..self.n).filter(|i| !self.pivots.contains_key(i)).collect();
        let Some(k) = self.pivots.values().next().and_then(|r| r.leading()).map(|e| e.1.field().clone()) else {
            return Vec::new();
        };
        free.par_iter()
            .map(|&f| {
                let mut vals = BTreeMap::new();
                vals.insert(f, k.one());
                self.back_substitute(&mut vals);
                SVec::from_pairs(vals)
            })
            .collect()
    }
}

/// Kernel of a map in which every column is zero; needed when no pivot row fixes the field.
pub fn full_space(n: usize, k: &Field) -> Vec<SVec> {
    (0..n).map(|i| SVec::unit(i, k)).collect()
}

/// Kernel of a stacked system of constraints on an `n`-dimensional unknown.
pub fn kernel_of_rows(n: usize, rows: impl IntoIterator<Item = SVec>, k: &Field) -> Vec<SVec> {
    let mut e = Echelon::new(n);
    for r in rows {
        e.insert(&r);
        if e.rank() == n {
            return Vec::new();
        }
    }
    if e.rank() == 0 {
        return full_space(n, k);
    }
    e.nullspace()
}

/// Kernel basis with its free columns: basis vector `i` is one at `free[i]` and zero at the other free columns.
pub fn kernel_with_free(n: usize, rows: impl IntoIterator<Item = SVec>, k: &Field) -> (Vec<SVec>, Vec<usize>) {
    let mut e = Echelon::new(n);
    for r in rows {
        e.insert(&r);
    }
    if e.rank() == 0 {
        return (full_space(n, k), (0..n).collect());
    }
    let free = (0..n).filter(|i| !e.pivots.contains_key(i)).collect();
    (e.nullspace(), free)
}
