//! Instances a suite can run on: named algebras, twisted group algebras, η examples and input files.

use salg_core::algebra::examples::{clifford_line, klein_clifford, matrix_algebra, quaternions, split_product};
use salg_core::algebra::json::FieldSpec;
use salg_core::algebra::Algebra;
use salg_core::azumaya::{canonical_end_s, enumerate_s_structures, SStructure};
use salg_core::error::{Error, Result};
use salg_core::scalars::{cyclotomic, rat, Field};
use salg_core::symplectic::{psi_power, standard_symplectic, twisted_group_algebra, twisted_s_structure, TwistedGroupAlgebra};
use salg_core::tencat::Category;
use std::collections::BTreeMap;

pub const NAMED: [&str; 3] = ["quaternion", "m2", "qxq"];
pub const EXAMPLES: [&str; 4] = ["split", "clifford-super", "klein", "clifford-rational"];

#[derive(Debug, Clone)]
pub enum Instance {
    Named { name: String, field: Option<FieldSpec> },
    Twisted { q: usize, d: usize, psi_power: u32 },
    Example { name: String, field: Option<FieldSpec> },
    Input { path: String, algebra: Algebra },
}

impl Instance {
    pub fn named(name: &str) -> Instance {
        Instance::Named { name: name.into(), field: None }
    }
    pub fn twisted(q: usize, d: usize) -> Instance {
        Instance::Twisted { q, d, psi_power: 1 }
    }
    pub fn example(name: &str) -> Instance {
        Instance::Example { name: name.into(), field: None }
    }

    /// Stable label used inside check ids.
    pub fn label(&self) -> String {
        match self {
            Instance::Named { name, field } => with_field(name, field),
            Instance::Twisted { q, d, psi_power } => format!("twisted q={q} d={d} psi^{psi_power}"),
            Instance::Example { name, field } => with_field(&format!("example {name}"), field),
            Instance::Input { path, .. } => format!("input {path}"),
        }
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        match self {
            Instance::Named { name, field } | Instance::Example { name, field } => {
                let key = if matches!(self, Instance::Named { .. }) { "alg" } else { "example" };
                p.insert(key.into(), name.clone());
                if let Some(f) = field {
                    p.insert("field".into(), field_json(f));
                }
            }
            Instance::Twisted { q, d, psi_power } => {
                p.insert("q".into(), q.to_string());
                p.insert("d".into(), d.to_string());
                p.insert("psi_power".into(), psi_power.to_string());
            }
            Instance::Input { path, .. } => {
                p.insert("input".into(), path.clone());
            }
        }
        p
    }

    fn field(&self) -> Result<Field> {
        match self {
            Instance::Named { field: Some(f), .. } | Instance::Example { field: Some(f), .. } => f.to_field(),
            _ => Ok(Field::rationals()),
        }
    }

    pub fn twisted_algebra(&self) -> Result<Option<TwistedGroupAlgebra>> {
        let Instance::Twisted { q, d, psi_power: s } = self else { return Ok(None) };
        let v = standard_symplectic(*q, *d)?;
        let k = cyclotomic(v.field().p());
        let psi = psi_power(v.field(), &k, *s)?;
        Ok(Some(twisted_group_algebra(&v, &psi, &k)?))
    }

    pub fn algebra(&self) -> Result<Algebra> {
        match self {
            Instance::Named { name, .. } => {
                let k = self.field()?;
                match name.as_str() {
                    "quaternion" if k == Field::rationals() => Ok(quaternions()),
                    "quaternion" => Err(Error::Invalid("the quaternion instance is defined over Q only".into())),
                    "m2" => Ok(matrix_algebra(&k, 2)),
                    "qxq" => Ok(split_product(&k)),
                    _ => Err(Error::Invalid(format!("unknown algebra {name:?}"))),
                }
            }
            Instance::Twisted { .. } => Ok(self.twisted_algebra()?.expect("twisted").algebra().clone()),
            Instance::Example { name, .. } => {
                let k = self.field()?;
                let sup = Category::super_vec(&k);
                match name.as_str() {
                    "split" => Ok(matrix_algebra(&k, 2)),
                    "clifford-super" => Ok(clifford_line(&sup)),
                    "klein" => Ok(klein_clifford(&k)),
                    "clifford-rational" => {
                        let cl = clifford_line(&sup);
                        cl.tensor(&cl)
                    }
                    _ => Err(Error::Invalid(format!("unknown example {name:?}"))),
                }
            }
            Instance::Input { algebra, .. } => Ok(algebra.clone()),
        }
    }

    /// The standard S-structure: the formulas for twisted algebras, trace and swap for `M₂`,
    /// and otherwise the enumerated one of positive rational degree.
    pub fn structure(&self) -> Result<SStructure> {
        if let Some(t) = self.twisted_algebra()? {
            return twisted_s_structure(&t);
        }
        if let Instance::Named { name, .. } = self {
            if name == "m2" {
                return canonical_end_s(&Category::vec(&self.field()?).trivial(2));
            }
        }
        let ss = enumerate_s_structures(&self.algebra()?)?;
        pick_positive(ss)
    }

    pub fn is_example(&self) -> bool {
        matches!(self, Instance::Example { .. })
    }
}

/// The structure whose degree is a positive rational, else the first one.
pub fn pick_positive(ss: Vec<SStructure>) -> Result<SStructure> {
    let pos = ss.iter().position(|s| s.degree().as_rational().is_some_and(|r| *r > rat(0)));
    let i = pos.unwrap_or(0);
    ss.into_iter().nth(i).ok_or_else(|| Error::Invalid("no S-structure".into()))
}

fn with_field(name: &str, field: &Option<FieldSpec>) -> String {
    match field {
        Some(f) => format!("{name} over {}", field_json(f)),
        None => name.into(),
    }
}

fn field_json(f: &FieldSpec) -> String {
    serde_json::to_string(f).expect("serializable")
}
