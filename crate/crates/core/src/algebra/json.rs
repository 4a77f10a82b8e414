//! JSON form of algebras: field, category, dimension, unit and sparse structure constants.

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::SVec;
use crate::scalars::{cyclotomic, fmt_rat, parse_rat, Field, FieldElem};
use crate::tencat::{Category, CategorySpec, FiniteGroup, DEFAULT_GROUP_BOUND};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Cyclotomic {
        #[serde(rename = "N")]
        n: u64,
    },
    NumberField {
        modulus: Vec<String>,
    },
    Finite {
        p: u64,
        e: u32,
    },
}

impl FieldSpec {
    pub fn of(k: &Field) -> FieldSpec {
        if let Some(n) = k.conductor() {
            if cyclotomic(n) == *k {
                return FieldSpec::Cyclotomic { n };
            }
        }
        FieldSpec::NumberField { modulus: k.modulus().iter().map(fmt_rat).collect() }
    }

    /// The scalar field; finite fields are coefficient fields of symplectic spaces only.
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Cyclotomic { n } if *n >= 1 => Ok(cyclotomic(*n)),
            FieldSpec::Cyclotomic { .. } => Err(Error::Parse("cyclotomic order must be positive".into())),
            FieldSpec::NumberField { modulus } => {
                let m = modulus
                    .iter()
                    .map(|s| parse_rat(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                Field::from_modulus(m)
            }
            FieldSpec::Finite { .. } => Err(Error::Invalid("algebras are defined over number fields, not finite fields".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CategoryFile {
    Vec,
    Super,
    Graded { orders: Vec<u32>, bichar: Vec<Vec<i8>> },
    Rep { generators: Vec<Vec<u32>> },
}

impl CategoryFile {
    pub fn of(c: &Category) -> CategoryFile {
        match c.spec() {
            CategorySpec::Vec => CategoryFile::Vec,
            s @ CategorySpec::Graded { orders, bichar } => {
                if *s == CategorySpec::super_vec() {
                    CategoryFile::Super
                } else {
                    CategoryFile::Graded { orders: orders.clone(), bichar: bichar.clone() }
                }
            }
            CategorySpec::Rep(g) => CategoryFile::Rep { generators: g.generators().to_vec() },
        }
    }

    pub fn to_category(&self, k: &Field) -> Result<Category> {
        let spec = match self {
            CategoryFile::Vec => CategorySpec::Vec,
            CategoryFile::Super => CategorySpec::super_vec(),
            CategoryFile::Graded { orders, bichar } => CategorySpec::Graded { orders: orders.clone(), bichar: bichar.clone() },
            CategoryFile::Rep { generators } => {
                let degree = generators.first().map_or(0, |g| g.len());
                CategorySpec::Rep(FiniteGroup::from_permutations(degree, generators.clone(), DEFAULT_GROUP_BOUND)?)
            }
        };
        Category::new(spec, k.clone())
    }
}

/// A scalar: a rational string, or a coefficient array in the field's power basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Rat(String),
    Poly(Vec<String>),
}

impl Coef {
    pub fn of(c: &FieldElem) -> Coef {
        match c.as_rational() {
            Some(r) => Coef::Rat(fmt_rat(r)),
            None => Coef::Poly(c.to_strings()),
        }
    }

    pub fn to_elem(&self, k: &Field) -> Result<FieldElem> {
        match self {
            Coef::Rat(s) => parse_rat(s).map(|r| k.from_rat(r)).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))),
            Coef::Poly(v) => k.parse_elem(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub category: CategoryFile,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<usize>>,
    pub unit: Vec<(usize, Coef)>,
    pub mult: Vec<(usize, usize, usize, Coef)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_action: Option<Vec<Vec<u32>>>,
}

impl AlgebraFile {
    pub fn of(a: &Algebra) -> AlgebraFile {
        let n = a.dim();
        let grades: Vec<usize> = (0..n).map(|i| a.grade(i)).collect();
        let mut mult = Vec::new();
        for (ij, v) in a.table().into_iter().enumerate() {
            for (kk, c) in v.iter() {
                mult.push((ij / n, ij % n, *kk, Coef::of(c)));
            }
        }
        AlgebraFile {
            field: FieldSpec::of(a.field()),
            category: CategoryFile::of(a.category()),
            dim: n,
            grades: grades.iter().any(|&g| g != 0).then_some(grades),
            unit: a.unit().iter().map(|(i, c)| (*i, Coef::of(c))).collect(),
            mult,
            labels: a.labels().map(|l| l.to_vec()),
            group_action: a.group_action().map(|g| g.to_vec()),
        }
    }

    pub fn build(&self) -> Result<Algebra> {
        let k = self.field.to_field()?;
        let cat = self.category.to_category(&k)?;
        let n = self.dim;
        let carrier = match (&self.category, &self.group_action) {
            (CategoryFile::Rep { .. }, Some(perms)) => cat.permutation_rep(perms)?,
            (CategoryFile::Rep { .. }, None) => return Err(Error::Parse("rep algebras need a group_action".into())),
            _ => {
                let grades = self.grades.clone().unwrap_or_else(|| vec![0; n]);
                if grades.len() != n || grades.iter().any(|&g| g >= cat.grade_count()) {
                    return Err(Error::Parse("grades must list one valid degree per basis vector".into()));
                }
                cat.graded(grades)
            }
        };
        if carrier.dim() != n {
            return Err(Error::Parse("group_action size differs from dim".into()));
        }
        let mut table: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); n * n];
        for (i, j, kk, c) in &self.mult {
            if *i >= n || *j >= n || *kk >= n {
                return Err(Error::Parse(format!("mult entry ({i},{j},{kk}) out of range")));
            }
            table[i * n + j].push((*kk, c.to_elem(&k)?));
        }
        let table = table.into_iter().map(SVec::from_pairs).collect();
        let unit = SVec::from_pairs(self.unit.iter().map(|(i, c)| Ok((*i, c.to_elem(&k)?))).collect::<Result<Vec<_>>>()?);
        let mut a = Algebra::from_table("A", carrier, table, unit)?;
        if let Some(l) = &self.labels {
            a = a.with_labels(l.clone())?;
        }
        if let Some(g) = &self.group_action {
            a = a.with_group_action(g.clone())?;
        }
        Ok(a)
    }
}

pub fn to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::of(a)).expect("serializable")
}

/// Parses an algebra; errors carry serde's line and column.
pub fn from_json(s: &str) -> Result<Algebra> {
    let f: AlgebraFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    f.build()
}

#[cfg(test)]
mod tests {
    use super::super::examples::{klein_clifford, quaternions};
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        for a in [quaternions(), klein_clifford(&cyclotomic(4))] {
            let s = to_json(&a);
            let b = from_json(&s).unwrap();
            assert_eq!(to_json(&b), s);
            assert_eq!(b.table(), a.table());
        }
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(from_json("{\"dim\": 3,"), Err(Error::Parse(_))));
        let bad = to_json(&quaternions()).replace("\"dim\": 4", "\"dim\": 5");
        assert!(from_json(&bad).is_err());
    }
}
