//! Problem files: the JSON input format, schema version 1.
//!
//! Element values are strings in the field-literal grammar (`"2*r^2 - 1/3"`)
//! for number fields and integers (as strings) for prime fields.

use std::collections::BTreeMap;

use invgrass::modalg::MatrixAlgebra;
use invgrass::twosided::{EmbeddingOrbit, TwoSidedStructure};
use invgrass::wedgeinv::BlockShape;
use invgrass::{Embedding, Field, FieldTower, Matrix, Polynomial, PrimeField, Subspace};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

/// Name under which the base field is referenced.
pub const BASE: &str = "K";

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub field: FieldSpec,
    #[serde(default)]
    pub extensions: BTreeMap<String, FieldSpec>,
    /// Generator matrices of `A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Vec<Vec<Vec<String>>>>,
    /// Images of the generators of `K` under `φ`; requires `two_sided`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    pub two_sided: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeSpec>,
    #[serde(default)]
    pub subspaces: BTreeMap<String, SubspaceSpec>,
    #[serde(default)]
    pub embeddings: BTreeMap<String, EmbeddingSpec>,
    /// Orbit name to member embedding names.
    #[serde(default)]
    pub orbits: BTreeMap<String, Vec<String>>,
    /// Named coprime factorizations of the minimal polynomial of `φ(g)`, in `x`.
    #[serde(default)]
    pub certificates: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime {
        prime: u64,
    },
    Tower {
        levels: Vec<(String, String)>,
        #[serde(default)]
        base_marker: usize,
    },
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    pub l: usize,
    pub m: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub images: Vec<String>,
}

/// Arguments shared by the command line and problem-file tasks.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct TaskArgs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subspace: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// `grid`, `sampled` or `enumerate`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embeddings: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<Vec<usize>>,
}

/// One entry of `tasks`: a command, its arguments and optional expectations.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embeddings: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiset: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<Vec<usize>>,
    /// Expected values for top-level keys of the result.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Value>,
}

impl Task {
    pub fn args(&self) -> TaskArgs {
        TaskArgs {
            subspace: self.subspace.clone(),
            m: self.m,
            route: self.route.clone(),
            rounds: self.rounds,
            embeddings: self.embeddings.clone(),
            multiset: self.multiset.clone(),
            certificates: self.certificates.clone(),
            rank: self.rank.clone(),
        }
    }
}

pub fn parse_problem(src: &str) -> Result<ProblemFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(src);
    let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Malformed(format!("schema violation at `{path}`: {}", e.inner()))
    })?;
    if file.schema != SCHEMA {
        return Err(CliError::Malformed(format!("schema {} is not supported (expected {SCHEMA})", file.schema)));
    }
    Ok(file)
}

/// A problem over a number-field tower.
pub struct TowerProblem {
    pub k: FieldTower,
    pub algebra: MatrixAlgebra<FieldTower>,
    pub two_sided: Option<TwoSidedStructure>,
    pub shape: Option<BlockShape>,
    pub subspaces: BTreeMap<String, Subspace<FieldTower>>,
    pub embeddings: BTreeMap<String, Embedding>,
    pub orbits: Vec<(String, EmbeddingOrbit)>,
    pub certificates: BTreeMap<String, Vec<Polynomial<FieldTower>>>,
}

/// A problem over a prime field.
pub struct PrimeProblem {
    pub f: PrimeField,
    pub algebra: MatrixAlgebra<PrimeField>,
    pub shape: Option<BlockShape>,
    pub subspaces: BTreeMap<String, Subspace<PrimeField>>,
}

pub enum Loaded {
    Tower(Box<TowerProblem>),
    Prime(PrimeProblem),
}

fn at(path: &str) -> impl Fn(invgrass::Error) -> CliError + '_ {
    move |e| CliError::from_lib(e).context(path)
}

fn tower(spec: &FieldSpec, path: &str) -> Result<FieldTower, CliError> {
    match spec {
        FieldSpec::Tower { levels, base_marker } => {
            let refs: Vec<(&str, &str)> = levels.iter().map(|(s, p)| (s.as_str(), p.as_str())).collect();
            FieldTower::new(&refs, *base_marker).map_err(at(path))
        }
        FieldSpec::Prime { .. } => Err(CliError::Malformed(format!("{path}: extensions of prime fields are not supported"))),
    }
}

fn tower_matrix(f: &FieldTower, rows: &[Vec<String>], path: &str) -> Result<Matrix<FieldTower>, CliError> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, s)| f.parse(s).map_err(at(&format!("{path}[{i}][{j}]")))).collect())
        .collect::<Result<Vec<_>, _>>()?;
    matrix_from(f.clone(), parsed, path)
}

fn prime_matrix(f: PrimeField, rows: &[Vec<String>], path: &str) -> Result<Matrix<PrimeField>, CliError> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| {
                    s.trim()
                        .parse::<i64>()
                        .map(|v| f.elem(v))
                        .map_err(|_| CliError::Malformed(format!("{path}[{i}][{j}]: `{s}` is not an integer")))
                })
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    matrix_from(f, parsed, path)
}

fn matrix_from<F: Field>(f: F, rows: Vec<Vec<F::Elem>>, path: &str) -> Result<Matrix<F>, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Malformed(format!("{path}: rows have different lengths")));
    }
    Matrix::from_rows_with_cols(f, rows, cols).map_err(at(path))
}

fn shape_of(spec: Option<ShapeSpec>, n: usize) -> Result<Option<BlockShape>, CliError> {
    let Some(s) = spec else { return Ok(None) };
    let shape = BlockShape { l: s.l, m: s.m };
    if shape.n() != n {
        return Err(CliError::Malformed(format!("shape: l·m = {} but the algebra acts on dimension {n}", shape.n())));
    }
    Ok(Some(shape))
}

impl ProblemFile {
    pub fn load(&self) -> Result<Loaded, CliError> {
        match &self.field {
            FieldSpec::Prime { prime } => self.load_prime(*prime).map(Loaded::Prime),
            FieldSpec::Tower { .. } => self.load_tower().map(|t| Loaded::Tower(Box::new(t))),
        }
    }

    fn generator_source(&self) -> Result<(&Vec<Vec<Vec<String>>>, &'static str), CliError> {
        match (&self.algebra, &self.phi, self.two_sided) {
            (Some(a), None, false) => Ok((a, "algebra")),
            (None, Some(p), true) => Ok((p, "phi")),
            (_, Some(_), false) => Err(CliError::Malformed("`phi` requires `two_sided: true`".into())),
            (_, None, true) => Err(CliError::Malformed("`two_sided: true` requires `phi`".into())),
            (Some(_), Some(_), _) => Err(CliError::Malformed("give either `algebra` or `phi`, not both".into())),
            (None, None, false) => Err(CliError::Malformed("missing `algebra`".into())),
        }
    }

    fn load_prime(&self, p: u64) -> Result<PrimeProblem, CliError> {
        let f = PrimeField::new(p).map_err(at("field.prime"))?;
        let (gens, key) = self.generator_source()?;
        if self.two_sided {
            return Err(CliError::Malformed("two-sided structures need a number field".into()));
        }
        let mats = gens
            .iter()
            .enumerate()
            .map(|(i, g)| prime_matrix(f, g, &format!("{key}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let algebra = MatrixAlgebra::new(f, mats).map_err(at(key))?;
        let mut subspaces = BTreeMap::new();
        for (name, s) in &self.subspaces {
            let path = format!("subspaces.{name}");
            if s.field.as_deref().is_some_and(|x| x != BASE) {
                return Err(CliError::Malformed(format!("{path}.field: prime-field problems have no extensions")));
            }
            let m = prime_matrix(f, &s.basis, &format!("{path}.basis"))?;
            subspaces.insert(name.clone(), basis_subspace(m, algebra.n(), &path)?);
        }
        if !self.embeddings.is_empty() || !self.orbits.is_empty() || !self.certificates.is_empty() || !self.extensions.is_empty() {
            return Err(CliError::Malformed("embeddings, orbits, certificates and extensions need a number field".into()));
        }
        Ok(PrimeProblem { f, shape: shape_of(self.shape, algebra.n())?, algebra, subspaces })
    }

    fn load_tower(&self) -> Result<TowerProblem, CliError> {
        let k = tower(&self.field, "field")?;
        let mut fields = BTreeMap::from([(BASE.to_string(), k.clone())]);
        for (name, spec) in &self.extensions {
            let path = format!("extensions.{name}");
            if name == BASE {
                return Err(CliError::Malformed(format!("{path}: `{BASE}` names the base field")));
            }
            let f = tower(spec, &path)?;
            if !k.is_prefix_of(&f) {
                return Err(CliError::Malformed(format!("{path}: the base field must be a prefix of every extension")));
            }
            fields.insert(name.clone(), f);
        }
        let field_named = |name: &Option<String>, path: &str| -> Result<FieldTower, CliError> {
            let key = name.as_deref().unwrap_or(BASE);
            fields.get(key).cloned().ok_or_else(|| CliError::Malformed(format!("{path}: unknown field `{key}`")))
        };

        let (gens, key) = self.generator_source()?;
        let mats = gens
            .iter()
            .enumerate()
            .map(|(i, g)| tower_matrix(&k, g, &format!("{key}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let (algebra, two_sided) = if self.two_sided {
            let mut v = TwoSidedStructure::new(k.clone(), mats).map_err(at("phi"))?;
            let report = v.validate();
            if !report.ok {
                return Err(CliError::Validation(format!("phi: {}", report.failures.join("; "))));
            }
            (v.algebra().map_err(at("phi"))?, Some(v))
        } else {
            (MatrixAlgebra::new(k.clone(), mats).map_err(at("algebra"))?, None)
        };

        let mut subspaces = BTreeMap::new();
        for (name, s) in &self.subspaces {
            let path = format!("subspaces.{name}");
            let f = field_named(&s.field, &format!("{path}.field"))?;
            let m = tower_matrix(&f, &s.basis, &format!("{path}.basis"))?;
            subspaces.insert(name.clone(), basis_subspace(m, algebra.n(), &path)?);
        }

        let mut embeddings = BTreeMap::new();
        for (name, e) in &self.embeddings {
            let path = format!("embeddings.{name}");
            let target = field_named(&e.target, &format!("{path}.target"))?;
            let images: Vec<&str> = e.images.iter().map(String::as_str).collect();
            let emb = Embedding::parse(k.clone(), target, &images).map_err(at(&path))?;
            let report = emb.validate();
            if !report.ok {
                return Err(CliError::Validation(format!("{path}: {}", report.failures.join("; "))));
            }
            embeddings.insert(name.clone(), emb);
        }

        let mut orbits = Vec::new();
        for (name, members) in &self.orbits {
            let path = format!("orbits.{name}");
            let embs = members
                .iter()
                .map(|m| embeddings.get(m).cloned().ok_or_else(|| CliError::Malformed(format!("{path}: unknown embedding `{m}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let orbit = EmbeddingOrbit::new(embs).map_err(|e| CliError::Validation(format!("{path}: {e}")))?;
            orbits.push((name.clone(), orbit));
        }

        let mut certificates = BTreeMap::new();
        for (name, polys) in &self.certificates {
            let parsed = polys
                .iter()
                .enumerate()
                .map(|(i, p)| k.parse_polynomial(p, "x").map_err(at(&format!("certificates.{name}[{i}]"))))
                .collect::<Result<Vec<_>, _>>()?;
            certificates.insert(name.clone(), parsed);
        }

        Ok(TowerProblem {
            shape: shape_of(self.shape, algebra.n())?,
            k,
            algebra,
            two_sided,
            subspaces,
            embeddings,
            orbits,
            certificates,
        })
    }
}

fn basis_subspace<F: Field>(m: Matrix<F>, n: usize, path: &str) -> Result<Subspace<F>, CliError> {
    if m.cols() != n {
        return Err(CliError::Malformed(format!("{path}.basis: vectors have length {} but n = {n}", m.cols())));
    }
    let rows = m.rows();
    let s = Subspace::row_space(&m);
    if s.dim() != rows {
        return Err(CliError::Malformed(format!("{path}.basis: {rows} vectors span only dimension {}", s.dim())));
    }
    Ok(s)
}
