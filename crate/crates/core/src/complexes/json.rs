use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BasedComplex, Generator, GradedFreeModule, SparseMatrix};
use crate::error::{Error, Result};
use crate::ring::{Field, MultiDegree, Polynomial, Ring};

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    grading: String,
    variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    #[serde(default)]
    killed: Vec<String>,
    modules: Vec<ModuleJson>,
    maps: Vec<MapJson>,
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    gens: Vec<GenJson>,
}

#[derive(Serialize, Deserialize)]
struct GenJson {
    label: String,
    deg: MultiDegree,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    entries: Vec<(usize, usize, String)>,
}

impl BasedComplex {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = ComplexJson {
            grading: self.grading.to_string(),
            variables: self.ring.names().to_vec(),
            field: Some(self.ring.field().to_string()),
            killed: self
                .killed
                .iter()
                .map(|&v| self.ring.name(v).to_string())
                .collect(),
            modules: self
                .modules
                .iter()
                .map(|m| ModuleJson {
                    gens: m
                        .generators()
                        .iter()
                        .map(|g| GenJson {
                            label: g.label.clone(),
                            deg: g.degree.clone(),
                        })
                        .collect(),
                })
                .collect(),
            maps: self
                .maps
                .iter()
                .map(|a| MapJson {
                    entries: a.entries().map(|(r, c, p)| (r, c, p.to_string())).collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("complexes serialize")
    }

    /// Parses the JSON form. `field` overrides the document's field; with
    /// neither, the default prime field is used. Matrix shapes come from the
    /// module ranks.
    pub fn from_json(value: &serde_json::Value, field: Option<Field>) -> Result<BasedComplex> {
        let doc: ComplexJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let field = match (field, &doc.field) {
            (Some(f), _) => f,
            (None, Some(s)) => s.parse()?,
            (None, None) => Field::default(),
        };
        let ring = Ring::new(doc.variables, field)?;
        let grading = doc.grading.parse()?;
        let killed = doc
            .killed
            .iter()
            .map(|name| ring.var_index(name))
            .collect::<Result<BTreeSet<usize>>>()?;
        let modules = doc
            .modules
            .into_iter()
            .map(|m| {
                GradedFreeModule::new(
                    m.gens
                        .into_iter()
                        .map(|g| Generator::new(g.label, g.deg))
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        if doc.maps.len() + 1 != modules.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} modules need {} maps, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                doc.maps.len()
            )));
        }
        let mut maps = Vec::with_capacity(doc.maps.len());
        for (idx, m) in doc.maps.into_iter().enumerate() {
            let (rows, cols) = (modules[idx].rank(), modules[idx + 1].rank());
            let entries = m
                .entries
                .into_iter()
                .map(|(r, c, text)| Ok((r, c, Polynomial::parse(&ring, &text)?)))
                .collect::<Result<Vec<_>>>()?;
            maps.push(SparseMatrix::from_entries(rows, cols, entries)?);
        }
        BasedComplex::with_killed(ring, grading, killed, modules, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::koszul;
    use super::super::BasedComplex;
    use crate::error::Error;
    use crate::ring::{Field, Ring};

    #[test]
    fn round_trip_is_identical() {
        let r = Ring::new(["x", "y", "z"], Field::prime(101).unwrap()).unwrap();
        let k = koszul(&r, &["x", "y", "z"]);
        let v = k.to_json();
        let back = BasedComplex::from_json(&v, None).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.to_json().to_string(), v.to_string());
    }

    #[test]
    fn shape_errors_are_reported() {
        let doc = serde_json::json!({
            "grading": "total",
            "variables": ["x"],
            "modules": [{"gens": [{"label": "a", "deg": [0]}]}, {"gens": [{"label": "b", "deg": [1]}]}],
            "maps": [{"entries": [[1, 0, "x"]]}]
        });
        assert!(matches!(
            BasedComplex::from_json(&doc, None),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
