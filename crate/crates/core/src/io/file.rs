use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::spec::{build, AlgebraSpec, Built, Family};
use crate::algebra::{Algebra, Element};
use crate::cellular::{CellDatum, CellPoset};
use crate::diagrams::{ColouredDiagram, PartitionAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::split::IdempotentFamily;

pub const FORMAT_VERSION: u32 = 1;

/// Sparse element: `(basis index, coefficient)` with exact coefficient strings.
pub type Terms = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub a: usize,
    pub b: usize,
    pub terms: Terms,
}

/// A cellular datum on disk. `order` lists pairs `(lower, higher)`; the
/// basis is `c[λ](s,t)` in cell, `s`, `t` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumJson {
    pub field: Field,
    pub cells: Vec<String>,
    pub order: Vec<(String, String)>,
    pub t_sets: Vec<Vec<String>>,
    pub unit: Terms,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<usize>>,
    pub products: Vec<ProductJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<IdempotentsJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentsJson {
    pub labels: Vec<String>,
    pub elements: Vec<Terms>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub field: Field,
    pub n: usize,
    pub m: usize,
    pub delta: Vec<String>,
    pub diagrams: Vec<String>,
    pub unit: Terms,
    pub star: Vec<usize>,
    pub products: Vec<ProductJson>,
    pub idempotents: IdempotentsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AlgebraBody {
    Cellular(DatumJson),
    Partition(PartitionJson),
}

/// Versioned algebra file with a SHA-256 hash of its content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub spec: AlgebraSpec,
    pub content_hash: String,
    pub body: AlgebraBody,
}

fn terms(e: &Element) -> Terms {
    e.terms().iter().map(|(i, c)| (*i, c.to_string())).collect()
}

fn element(field: Field, t: &Terms, dim: usize) -> Result<Element> {
    let mut out = Vec::with_capacity(t.len());
    for (i, c) in t {
        if *i >= dim {
            return Err(Error::input(format!("basis index {i} out of range (dimension {dim})")));
        }
        out.push((*i, field.parse_scalar(c)?));
    }
    Ok(Element::from_terms(out))
}

fn products(alg: &Algebra) -> Vec<ProductJson> {
    let mut out = Vec::new();
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let p = alg.basis_product(a, b);
            if !p.is_empty() {
                out.push(ProductJson { a, b, terms: p.iter().map(|(k, c)| (*k as usize, c.to_string())).collect() });
            }
        }
    }
    out
}

fn algebra_from(field: Field, dim: usize, unit: &Terms, table: &[ProductJson]) -> Result<Algebra> {
    let mut map: HashMap<(usize, usize), Element> = HashMap::with_capacity(table.len());
    for p in table {
        if p.a >= dim || p.b >= dim {
            return Err(Error::input(format!("product ({}, {}) out of range", p.a, p.b)));
        }
        if map.insert((p.a, p.b), element(field, &p.terms, dim)?).is_some() {
            return Err(Error::input(format!("product ({}, {}) given twice", p.a, p.b)));
        }
    }
    let unit = element(field, unit, dim)?;
    Ok(Algebra::from_products(field, dim, unit, |a, b| map.remove(&(a, b)).unwrap_or_else(Element::zero)))
}

fn family_json(f: &IdempotentFamily) -> IdempotentsJson {
    IdempotentsJson { labels: f.labels.clone(), elements: f.elements.iter().map(terms).collect() }
}

fn family_from(field: Field, j: &IdempotentsJson, dim: usize) -> Result<IdempotentFamily> {
    if j.labels.len() != j.elements.len() {
        return Err(Error::input("idempotent labels and elements differ in number"));
    }
    let es = j.elements.iter().map(|t| element(field, t, dim)).collect::<Result<_>>()?;
    Ok(IdempotentFamily::new(j.labels.clone(), es))
}

impl DatumJson {
    pub fn from_datum(d: &CellDatum, idempotents: Option<&IdempotentFamily>) -> Self {
        let p = d.poset();
        let transpose: Vec<usize> = (0..d.dim())
            .map(|i| {
                let b = d.triple(i);
                d.index(b.cell, b.t, b.s)
            })
            .collect();
        DatumJson {
            field: d.field(),
            cells: p.labels().to_vec(),
            order: p.covering_pairs().into_iter().map(|(a, b)| (p.label(a).into(), p.label(b).into())).collect(),
            t_sets: d.t_sets().to_vec(),
            unit: terms(d.unit()),
            star: (d.star_table() != transpose.as_slice()).then(|| d.star_table().to_vec()),
            products: products(d.algebra()),
            idempotents: idempotents.map(family_json),
        }
    }

    pub fn to_datum(&self) -> Result<(CellDatum, Option<IdempotentFamily>)> {
        let covers: Vec<(&str, &str)> = self.order.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let poset = CellPoset::new(self.cells.clone(), &covers)?;
        if self.t_sets.len() != self.cells.len() {
            return Err(Error::input("one index set is needed per cell"));
        }
        let dim = self.t_sets.iter().map(|t| t.len() * t.len()).sum();
        let algebra = algebra_from(self.field, dim, &self.unit, &self.products)?;
        let datum = CellDatum::new(poset, self.t_sets.clone(), algebra, self.star.clone())?;
        let fam = self.idempotents.as_ref().map(|j| family_from(self.field, j, dim)).transpose()?;
        Ok((datum, fam))
    }
}

impl PartitionJson {
    pub fn from_algebra(p: &PartitionAlgebra) -> Self {
        PartitionJson {
            field: p.algebra.field(),
            n: p.n,
            m: p.m,
            delta: p.deltas.iter().map(|d| d.to_string()).collect(),
            diagrams: p.diagrams.iter().map(|d| d.to_string()).collect(),
            unit: terms(p.algebra.unit()),
            star: p.star.clone(),
            products: products(&p.algebra),
            idempotents: family_json(&p.idempotents),
        }
    }

    pub fn to_algebra(&self) -> Result<PartitionAlgebra> {
        let field = self.field;
        let diagrams = self
            .diagrams
            .iter()
            .map(|s| {
                let d = ColouredDiagram::parse(s, self.m)?;
                if d.n() != self.n {
                    return Err(Error::input(format!("diagram {s} does not have {} nodes per row", self.n)));
                }
                Ok(d)
            })
            .collect::<Result<Vec<_>>>()?;
        let dim = diagrams.len();
        let index: HashMap<ColouredDiagram, usize> = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        if index.len() != dim {
            return Err(Error::input("repeated diagram"));
        }
        if self.star.len() != dim || self.star.iter().any(|&s| s >= dim) {
            return Err(Error::input("the involution must be a map on the basis"));
        }
        let deltas = self.delta.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()?;
        if deltas.len() != self.m {
            return Err(Error::input("one loop parameter is needed per colour"));
        }
        let idempotents = family_from(field, &self.idempotents, dim)?;
        let idempotent_colourings = idempotents
            .elements
            .iter()
            .map(|e| match e.terms() {
                [(k, _)] => Ok(diagrams[*k].top()),
                _ => Err(Error::input("each idempotent must be a single identity diagram")),
            })
            .collect::<Result<_>>()?;
        Ok(PartitionAlgebra {
            n: self.n,
            m: self.m,
            deltas,
            algebra: algebra_from(field, dim, &self.unit, &self.products)?,
            diagrams,
            index,
            star: self.star.clone(),
            idempotents,
            idempotent_colourings,
        })
    }
}

impl AlgebraBody {
    pub fn from_built(b: &Built) -> Self {
        match b {
            Built::Cellular { datum, idempotents } => AlgebraBody::Cellular(DatumJson::from_datum(datum, idempotents.as_ref())),
            Built::Partition(p) => AlgebraBody::Partition(PartitionJson::from_algebra(p)),
        }
    }

    pub fn to_built(&self) -> Result<Built> {
        match self {
            AlgebraBody::Cellular(d) => {
                let (datum, idempotents) = d.to_datum()?;
                Ok(Built::Cellular { datum, idempotents })
            }
            AlgebraBody::Partition(p) => Ok(Built::Partition(p.to_algebra()?)),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            AlgebraBody::Cellular(d) => d.field,
            AlgebraBody::Partition(p) => p.field,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn content_hash(spec: &AlgebraSpec, body: &AlgebraBody) -> Result<String> {
    let payload = serde_json::to_vec(&(FORMAT_VERSION, spec, body))?;
    Ok(sha256_hex(&payload))
}

impl AlgebraFile {
    pub fn new(spec: AlgebraSpec, body: AlgebraBody) -> Result<Self> {
        let content_hash = content_hash(&spec, &body)?;
        Ok(AlgebraFile { format_version: FORMAT_VERSION, spec, content_hash, body })
    }

    /// Builds the algebra described by `spec`.
    pub fn build(spec: &AlgebraSpec) -> Result<Self> {
        let built = build(spec)?;
        AlgebraFile::new(spec.clone(), AlgebraBody::from_built(&built))
    }

    /// Wraps a user-supplied datum (`custom-json`); the datum is checked to load.
    pub fn from_custom(datum: DatumJson) -> Result<Self> {
        datum.to_datum()?;
        let spec = AlgebraSpec { family: Family::CustomJson, n: 0, m: 1, delta: Vec::new(), field: datum.field };
        AlgebraFile::new(spec, AlgebraBody::Cellular(datum))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: AlgebraFile = serde_json::from_str(text)?;
        if f.format_version != FORMAT_VERSION {
            return Err(Error::input(format!(
                "format version {} is not supported (expected {FORMAT_VERSION})",
                f.format_version
            )));
        }
        if content_hash(&f.spec, &f.body)? != f.content_hash {
            return Err(Error::input("content hash does not match the file contents"));
        }
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(&self) -> Result<Built> {
        self.body.to_built()
    }
}

/// Builds through a content-addressed cache keyed on the spec and the crate
/// version; a hit returns the stored bytes unchanged.
pub fn build_cached(spec: &AlgebraSpec, cache_dir: Option<&Path>) -> Result<String> {
    let Some(dir) = cache_dir else {
        return AlgebraFile::build(spec)?.to_json();
    };
    let key = sha256_hex(&serde_json::to_vec(&(spec, env!("CARGO_PKG_VERSION")))?);
    let path = dir.join(format!("{key}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if AlgebraFile::from_json(&text).is_ok_and(|f| &f.spec == spec) {
            return Ok(text);
        }
    }
    let text = AlgebraFile::build(spec)?.to_json()?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, &text)?;
    Ok(text)
}
