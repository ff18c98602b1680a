//! JSON interchange: algebras, root tables, subspaces, and certificates.
//! Rationals are serialized as "p/q" strings; output is canonical, so a
//! load/re-serialize round trip is byte-identical.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{format_scalar, parse_scalar, Scalar};
use crate::genpair::{GeneratorCertificate, RecipeTag, Verdict};
use crate::models::AnyFamily;
use crate::rootsys::RootTable;
use crate::superalgebra::{Parity, Subspace, SuperAlgebra, SuperVector, Weight};

fn vec_out(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn vec_in(v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

#[derive(Serialize, Deserialize)]
pub struct AlgebraDto {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub labels: Vec<String>,
    pub cartan: Vec<usize>,
    pub weights: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<Vec<Option<u8>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<AnyFamily>,
    /// Nonzero structure constants as (i, j, k, c) with [b_i, b_j] = sum c b_k.
    pub structure: Vec<(usize, usize, usize, String)>,
}

pub fn algebra_to_dto(l: &SuperAlgebra) -> AlgebraDto {
    let mut structure = Vec::new();
    for i in 0..l.dim {
        for j in 0..l.dim {
            for (k, c) in &l.structure[i][j] {
                structure.push((i, j, *k, format_scalar(c)));
            }
        }
    }
    AlgebraDto {
        name: l.name.clone(),
        dim: l.dim,
        parity: l.parity.iter().map(|p| p.flag()).collect(),
        labels: l.labels.clone(),
        cartan: l.cartan.clone(),
        weights: l.weights.iter().map(|w| vec_out(&w.0)).collect(),
        degree: l.degree.clone(),
        component: l.component.clone(),
        family: l.family,
        structure,
    }
}

pub fn algebra_from_dto(dto: &AlgebraDto) -> Result<SuperAlgebra> {
    let dim = dto.dim;
    let check = |len: usize, what: &str| {
        if len == dim {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("{what} has length {len}, expected {dim}")))
        }
    };
    check(dto.parity.len(), "parity")?;
    check(dto.labels.len(), "labels")?;
    check(dto.weights.len(), "weights")?;
    if let Some(d) = &dto.degree {
        check(d.len(), "degree")?;
    }
    if let Some(c) = &dto.component {
        check(c.len(), "component")?;
    }
    let rank = dto.cartan.len();
    let mut weights = Vec::with_capacity(dim);
    for w in &dto.weights {
        if w.len() != rank {
            return Err(Error::InvalidInput("weight tuple length != rank".into()));
        }
        weights.push(Weight(vec_in(w)?));
    }
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for (i, j, k, c) in &dto.structure {
        if *i >= dim || *j >= dim || *k >= dim {
            return Err(Error::InvalidInput("structure index out of range".into()));
        }
        let c = parse_scalar(c)?;
        if c.is_zero() {
            return Err(Error::InvalidInput("zero structure constant stored".into()));
        }
        structure[*i][*j].push((*k, c));
    }
    for row in structure.iter_mut().flatten() {
        row.sort_by_key(|(k, _)| *k);
    }
    Ok(SuperAlgebra {
        name: dto.name.clone(),
        dim,
        parity: dto.parity.iter().map(|&f| Parity::from_flag(f)).collect::<Result<Vec<_>>>()?,
        labels: dto.labels.clone(),
        cartan: dto.cartan.clone(),
        weights,
        degree: dto.degree.clone(),
        component: dto.component.clone(),
        structure,
        family: dto.family,
    })
}

pub fn algebra_to_json(l: &SuperAlgebra) -> String {
    serde_json::to_string_pretty(&algebra_to_dto(l)).expect("serializable")
}

pub fn algebra_from_json(s: &str) -> Result<SuperAlgebra> {
    let dto: AlgebraDto =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    algebra_from_dto(&dto)
}

#[derive(Serialize, Deserialize)]
pub struct RootSpaceDto {
    pub weight: Vec<String>,
    pub indices: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct RootTableDto {
    pub rank: usize,
    pub spaces: Vec<RootSpaceDto>,
    pub even_roots: Vec<Vec<String>>,
    pub odd_weights: Vec<Vec<String>>,
    pub degree_weights: BTreeMap<String, Vec<Vec<String>>>,
    pub component_weights: BTreeMap<String, Vec<Vec<String>>>,
    pub simple: Vec<Vec<String>>,
}

pub fn root_table_to_json(t: &RootTable) -> String {
    let ws = |v: &[Weight]| v.iter().map(|w| vec_out(&w.0)).collect::<Vec<_>>();
    let dto = RootTableDto {
        rank: t.rank,
        spaces: t
            .spaces
            .iter()
            .map(|(w, idx)| RootSpaceDto { weight: vec_out(&w.0), indices: idx.clone() })
            .collect(),
        even_roots: ws(&t.even_roots),
        odd_weights: ws(&t.odd_weights),
        degree_weights: t.degree_weights.iter().map(|(k, v)| (k.to_string(), ws(v))).collect(),
        component_weights: t
            .component_weights
            .iter()
            .map(|(k, v)| (k.to_string(), ws(v)))
            .collect(),
        simple: ws(&t.simple),
    };
    serde_json::to_string_pretty(&dto).expect("serializable")
}

#[derive(Serialize, Deserialize)]
pub struct SubspaceDto {
    pub ambient: usize,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

pub fn subspace_to_json(s: &Subspace) -> String {
    let dto = SubspaceDto {
        ambient: s.ambient(),
        dim: s.dim(),
        basis: s.rows().iter().map(|r| vec_out(r)).collect(),
    };
    serde_json::to_string_pretty(&dto).expect("serializable")
}

#[derive(Serialize, Deserialize)]
pub struct SeparatorValueDto {
    pub weight: Vec<String>,
    pub value: String,
}

#[derive(Serialize, Deserialize)]
pub struct CertificateDto {
    pub family: String,
    pub dim: usize,
    pub recipe: Option<RecipeTag>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub chosen_weights: Vec<Vec<String>>,
    pub separator_values: Vec<SeparatorValueDto>,
    pub trace: Vec<usize>,
    pub closure_dim: usize,
    pub verdict: Verdict,
}

pub fn certificate_to_dto(c: &GeneratorCertificate) -> CertificateDto {
    CertificateDto {
        family: c.family.clone(),
        dim: c.dim,
        recipe: c.recipe,
        x: vec_out(&c.x),
        y: vec_out(&c.y),
        chosen_weights: c.chosen_weights.iter().map(|w| vec_out(&w.0)).collect(),
        separator_values: c
            .separator_values
            .iter()
            .map(|(w, v)| SeparatorValueDto { weight: vec_out(&w.0), value: format_scalar(v) })
            .collect(),
        trace: c.trace.clone(),
        closure_dim: c.closure_dim,
        verdict: c.verdict,
    }
}

pub fn certificate_to_json(c: &GeneratorCertificate) -> String {
    serde_json::to_string_pretty(&certificate_to_dto(c)).expect("serializable")
}

#[derive(Serialize, Deserialize)]
pub struct GeneratorsDto {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

pub fn generators_from_json(s: &str) -> Result<(SuperVector, SuperVector)> {
    let dto: GeneratorsDto =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    Ok((vec_in(&dto.x)?, vec_in(&dto.y)?))
}
