//! Scene files: labeled generators, labeled curve components and optional
//! group assertions, as JSON with complex numbers written `[re, im]`.

use crate::classifier::Assertions;
use crate::curves::Parametrization;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::poly::{BinaryForm, HomPoly};
use crate::projective::ProjTransform;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

pub type Complex = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(default)]
    pub group: Vec<GeneratorEntry>,
    #[serde(default)]
    pub curve: Vec<ComponentEntry>,
    #[serde(default, skip_serializing_if = "AssertionsEntry::is_empty")]
    pub assertions: AssertionsEntry,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub label: String,
    pub matrix: [[Complex; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub label: String,
    pub terms: Vec<TermEntry>,
    /// Three binary forms `Σ c sⁱ tʲ` of one common degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<[Vec<BinaryTermEntry>; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub exp: [u32; 3],
    pub coeff: Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryTermEntry {
    pub exp: [u32; 2],
    pub coeff: Complex,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionsEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinite: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub virtually_cyclic: Option<bool>,
}

impl AssertionsEntry {
    fn is_empty(&self) -> bool {
        self.infinite.is_none() && self.virtually_cyclic.is_none()
    }
}

pub fn c64(z: Complex) -> C64 {
    C64::new(z[0], z[1])
}

pub fn complex(z: C64) -> Complex {
    [z.re, z.im]
}

#[derive(Clone, Debug)]
pub struct Component {
    pub label: String,
    pub polynomial: HomPoly,
    pub parametrization: Option<Parametrization>,
}

/// A validated scene: every matrix invertible, every polynomial nonzero and
/// homogeneous, labels unique within the group and within the curve.
#[derive(Clone, Debug)]
pub struct Scene {
    pub file: SceneFile,
    pub generators: Vec<(String, ProjTransform)>,
    pub components: Vec<Component>,
    pub assertions: Assertions,
}

fn check_unique<'a>(what: &str, labels: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::InvalidInput(format!("duplicate {what} label {l:?}")));
        }
    }
    Ok(())
}

fn polynomial(label: &str, terms: &[TermEntry]) -> Result<HomPoly> {
    let first = terms.first().ok_or_else(|| Error::InvalidInput(format!("component {label:?} has no terms")))?;
    let degree = first.exp.iter().sum();
    HomPoly::new(degree, terms.iter().map(|t| (t.exp, c64(t.coeff))))
        .map_err(|e| Error::InvalidInput(format!("component {label:?}: {e}")))
}

fn binary_form(label: &str, terms: &[BinaryTermEntry]) -> Result<BinaryForm> {
    let degree = terms.first().map(|t| t.exp[0] + t.exp[1]).unwrap_or(0) as usize;
    let mut coeffs = vec![C64::new(0.0, 0.0); degree + 1];
    for t in terms {
        if (t.exp[0] + t.exp[1]) as usize != degree {
            return Err(Error::InvalidInput(format!("component {label:?}: parametrization terms of mixed degree")));
        }
        coeffs[t.exp[0] as usize] += c64(t.coeff);
    }
    Ok(BinaryForm::new(coeffs))
}

impl Scene {
    pub fn from_file(file: SceneFile) -> Result<Scene> {
        check_unique("generator", file.group.iter().map(|g| g.label.as_str()))?;
        check_unique("component", file.curve.iter().map(|c| c.label.as_str()))?;
        let generators = file
            .group
            .iter()
            .map(|g| {
                let m = g.matrix.map(|row| row.map(c64));
                ProjTransform::new(m)
                    .map(|t| (g.label.clone(), t))
                    .map_err(|e| Error::InvalidInput(format!("generator {:?}: {e}", g.label)))
            })
            .collect::<Result<_>>()?;
        let components = file
            .curve
            .iter()
            .map(|c| {
                let parametrization = match &c.parametrization {
                    None => None,
                    Some(p) => {
                        let forms = [
                            binary_form(&c.label, &p[0])?,
                            binary_form(&c.label, &p[1])?,
                            binary_form(&c.label, &p[2])?,
                        ];
                        Some(
                            Parametrization::new(forms)
                                .map_err(|e| Error::InvalidInput(format!("component {:?}: {e}", c.label)))?,
                        )
                    }
                };
                Ok(Component { label: c.label.clone(), polynomial: polynomial(&c.label, &c.terms)?, parametrization })
            })
            .collect::<Result<_>>()?;
        let assertions =
            Assertions { infinite: file.assertions.infinite, virtually_cyclic: file.assertions.virtually_cyclic };
        Ok(Scene { file, generators, components, assertions })
    }

    pub fn parse(text: &str) -> Result<Scene> {
        let file: SceneFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("scene is not valid: {e}")))?;
        Scene::from_file(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("scene serializes")
    }

    pub fn generator(&self, label: &str) -> Option<&ProjTransform> {
        self.generators.iter().find(|g| g.0 == label).map(|g| &g.1)
    }

    pub fn component(&self, label: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.label == label)
    }
}

/// Scene entry for a polynomial, terms in the polynomial's own order.
pub fn component_entry(label: &str, f: &HomPoly) -> ComponentEntry {
    ComponentEntry {
        label: label.into(),
        terms: f.terms().map(|(exp, c)| TermEntry { exp, coeff: complex(c) }).collect(),
        parametrization: None,
    }
}

pub fn generator_entry(label: &str, m: &crate::linalg::Mat3) -> GeneratorEntry {
    GeneratorEntry { label: label.into(), matrix: m.map(|row| row.map(complex)) }
}
