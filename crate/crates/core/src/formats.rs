//! TOML files for modules, complexes and bimodules.
//!
//! Every file names its algebra with `algebra = "<path>"`, resolved relative
//! to the file, or `algebra = "corpus:D3R^1,2,2,2"` for a built-in.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraError, AlgebraPresentation, DEFAULT_MAX_LEN};
use crate::bimodule::{bimodule_cosyzygy, bimodule_syzygy, regular_bimodule, Bimodule, BimoduleError};
use crate::complex::{BoundedComplex, ComplexError};
use crate::corpus::{self, CorpusError};
use crate::linalg::{Field, Matrix};
use crate::module::{ModuleError, ModuleMap, Representation};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

fn read(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|e| FileError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, FileError> {
    toml::from_str(text).map_err(|e| FileError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn load_presentation(path: &Path) -> Result<AlgebraPresentation, FileError> {
    Ok(AlgebraPresentation::parse(&read(path)?)?)
}

/// Resolves an algebra reference as used in module files.
pub fn load_algebra(reference: &str, base: &Path, field: Field) -> Result<Arc<Algebra>, FileError> {
    if let Some(name) = reference.strip_prefix("corpus:") {
        let (family, params) = corpus::parse_name(name)?;
        return Ok(corpus::build(family, &params, field)?);
    }
    let pres = load_presentation(&base.join(reference))?;
    Ok(Algebra::build(&pres, field, DEFAULT_MAX_LEN)?)
}

fn fill(f: Field, rows: usize, cols: usize, entries: &[Vec<i64>], what: &str) -> Result<Matrix, ModuleError> {
    let bad = || ModuleError::Shape {
        arrow: what.to_string(),
        expected: (rows, cols),
        found: (entries.len(), entries.first().map_or(0, Vec::len)),
    };
    // an empty list stands for any matrix with no rows or no columns
    if entries.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(f, rows, cols));
    }
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(bad());
    }
    let mut m = Matrix::zeros(f, rows, cols);
    for (r, row) in entries.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            m.set(r, c, f.reduce(x));
        }
    }
    Ok(m)
}

fn entries(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&x| x as i64).collect()).collect()
}

/// Either `string = "delta*beta"` or `dims` with per-arrow matrices.
/// Arrows missing from `maps` act by zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub string: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    /// Row-major matrices by arrow name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        parse(Path::new("<module>"), text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("module file serializes")
    }

    /// Explicit form of `m`, with zero matrices omitted.
    pub fn from_module(algebra: &str, m: &Representation) -> Self {
        let maps = m
            .algebra()
            .arrows()
            .iter()
            .zip(m.arrow_matrices())
            .filter(|(_, x)| !x.is_zero())
            .map(|(a, x)| (a.name.clone(), entries(x)))
            .collect();
        ModuleFile {
            algebra: algebra.to_string(),
            string: None,
            dims: Some(m.dims().to_vec()),
            maps,
        }
    }

    pub fn build(&self, alg: &Arc<Algebra>) -> Result<Representation, ModuleError> {
        match (&self.string, &self.dims) {
            (Some(w), None) if self.maps.is_empty() => Representation::string_module(alg, w),
            (None, Some(dims)) => {
                if dims.len() != alg.num_vertices() {
                    return Err(ModuleError::DimensionVector {
                        expected: alg.num_vertices(),
                        found: dims.len(),
                    });
                }
                let f = alg.field();
                let mut mats: Vec<Matrix> = alg
                    .arrows()
                    .iter()
                    .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
                    .collect();
                for (name, rows) in &self.maps {
                    let a = alg.arrow_index(name).ok_or_else(|| ModuleError::BadWord {
                        word: name.clone(),
                        reason: "unknown arrow".into(),
                    })?;
                    let arr = &alg.arrows()[a];
                    mats[a] = fill(f, dims[arr.target], dims[arr.source], rows, name)?;
                }
                Representation::new(alg, dims.clone(), mats)
            }
            _ => Err(ModuleError::BadWord {
                word: self.string.clone().unwrap_or_default(),
                reason: "give either `string` or `dims` with `maps`".into(),
            }),
        }
    }
}

/// A loaded module together with its algebra reference.
#[derive(Clone, Debug)]
pub struct LoadedModule {
    pub reference: String,
    pub file: ModuleFile,
    pub module: Representation,
}

pub fn load_module(path: &Path, field: Field) -> Result<LoadedModule, FileError> {
    let file: ModuleFile = parse(path, &read(path)?)?;
    let alg = load_algebra(&file.algebra, &base_dir(path), field)?;
    let module = file.build(&alg)?;
    Ok(LoadedModule {
        reference: file.algebra.clone(),
        file,
        module,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDecl {
    pub degree: i64,
    /// Path of a module file, relative to the complex file.
    pub module: String,
}

/// `d^degree: C^degree → C^{degree+1}` as one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDecl {
    pub degree: i64,
    pub components: Vec<Vec<Vec<i64>>>,
}

/// Terms in consecutive degrees; differentials not listed are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub term: Vec<TermDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DifferentialDecl>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        parse(Path::new("<complex>"), text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("complex file serializes")
    }
}

pub fn load_complex(path: &Path, field: Field) -> Result<BoundedComplex, FileError> {
    let file: ComplexFile = parse(path, &read(path)?)?;
    let fmt = |message: String| FileError::Format {
        path: path.to_path_buf(),
        message,
    };
    let mut decls = file.term.clone();
    decls.sort_by_key(|t| t.degree);
    let Some(low) = decls.first().map(|t| t.degree) else {
        return Err(fmt("a complex needs at least one term".into()));
    };
    if decls.iter().enumerate().any(|(k, t)| t.degree != low + k as i64) {
        return Err(fmt("term degrees must be distinct and consecutive".into()));
    }
    let base = base_dir(path);
    let terms: Vec<Representation> = decls
        .iter()
        .map(|t| load_module(&base.join(&t.module), field).map(|l| l.module))
        .collect::<Result<_, _>>()?;
    let alg = Arc::clone(terms[0].algebra());
    let f = alg.field();
    let mut diffs: Vec<ModuleMap> = terms.windows(2).map(|w| ModuleMap::zero(&w[0], &w[1])).collect();
    for d in &file.differential {
        let k = d.degree - low;
        if k < 0 || k as usize >= diffs.len() {
            return Err(fmt(format!("differential at degree {} has no target term", d.degree)));
        }
        let k = k as usize;
        if d.components.len() != alg.num_vertices() {
            return Err(fmt(format!("differential at degree {} needs one matrix per vertex", d.degree)));
        }
        let comps = (0..alg.num_vertices())
            .map(|v| {
                fill(
                    f,
                    terms[k + 1].dims()[v],
                    terms[k].dims()[v],
                    &d.components[v],
                    &format!("d^{} at vertex {v}", d.degree),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        diffs[k] = ModuleMap { components: comps };
    }
    Ok(BoundedComplex::new(&alg, low, terms, diffs)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Regular,
    Syzygy,
    Cosyzygy,
}

/// A module over `left ⊗ right^op`, given explicitly or by a construction
/// over `left = right`. `certify` asks for one-sided projectivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub certify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    /// Arrow names of the enveloping quiver, `alpha|v` or `v|beta`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

impl BimoduleFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        parse(Path::new("<bimodule>"), text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("bimodule file serializes")
    }
}

#[derive(Clone, Debug)]
pub struct LoadedBimodule {
    pub file: BimoduleFile,
    pub bimodule: Bimodule,
}

pub fn load_bimodule(path: &Path, field: Field) -> Result<LoadedBimodule, FileError> {
    let file: BimoduleFile = parse(path, &read(path)?)?;
    let base = base_dir(path);
    let left = load_algebra(&file.left, &base, field)?;
    let bimodule = match file.construction {
        Some(c) => {
            if file.left != file.right || file.dims.is_some() || !file.maps.is_empty() {
                return Err(FileError::Format {
                    path: path.to_path_buf(),
                    message: "a construction needs left = right and no explicit data".into(),
                });
            }
            match c {
                Construction::Regular => regular_bimodule(&left),
                Construction::Syzygy => bimodule_syzygy(&left)?,
                Construction::Cosyzygy => bimodule_cosyzygy(&left)?,
            }
        }
        None => {
            let right = load_algebra(&file.right, &base, field)?;
            let env = Algebra::tensor(&left, &right.opposite())?;
            let mf = ModuleFile {
                algebra: String::new(),
                string: None,
                dims: file.dims.clone(),
                maps: file.maps.clone(),
            };
            Bimodule::new(mf.build(&env)?)?
        }
    };
    Ok(LoadedBimodule { file, bimodule })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("quiverdef-formats-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        d
    }

    #[test]
    fn module_file_round_trip() {
        let text = "algebra = \"corpus:D3B2^2,2,2\"\ndims = [1, 1, 1]\n\n[maps]\ndelta = [[1]]\ngamma = [[1]]\n";
        let f = ModuleFile::parse(text).unwrap();
        assert_eq!(f.to_toml(), text);
        assert_eq!(ModuleFile::parse(&f.to_toml()).unwrap(), f);
        let s = ModuleFile::parse("algebra = \"a.toml\"\nstring = \"delta*beta\"\n").unwrap();
        assert_eq!(ModuleFile::parse(&s.to_toml()).unwrap(), s);
    }

    #[test]
    fn module_from_corpus_reference() {
        let d = tmp("mod");
        std::fs::write(d.join("s.toml"), "algebra = \"corpus:D3R^1,2,2,2\"\nstring = \"delta*beta\"\n").unwrap();
        let m = load_module(&d.join("s.toml"), Field::gf2()).unwrap();
        assert_eq!(m.module.dims(), &[1, 1, 1]);
        let back = ModuleFile::from_module(&m.reference, &m.module);
        let alg = load_algebra(&back.algebra, &d, Field::gf2()).unwrap();
        assert_eq!(back.build(&alg).unwrap(), m.module);
    }

    #[test]
    fn malformed_module_rejected() {
        let alg = corpus::build(corpus::Family::D3R, &corpus::Params(vec![1, 2, 2, 2]), Field::gf2()).unwrap();
        let both = ModuleFile::parse("algebra = \"x\"\nstring = \"beta\"\ndims = [1, 1, 0]\n").unwrap();
        assert!(both.build(&alg).is_err());
        let shape = ModuleFile::parse("algebra = \"x\"\ndims = [1, 1, 0]\n[maps]\nbeta = [[1, 1]]\n").unwrap();
        assert!(matches!(shape.build(&alg), Err(ModuleError::Shape { .. })));
        // beta then delta is fine, but rho*beta = 0 is violated
        let rel = ModuleFile::parse("algebra = \"x\"\ndims = [1, 1, 0]\n[maps]\nbeta = [[1]]\nrho = [[1]]\n").unwrap();
        assert!(matches!(rel.build(&alg), Err(ModuleError::RelationViolated { .. })));
        assert!(ModuleFile::parse("algebra = \"x\"\nbogus = 1\n").is_err());
    }

    #[test]
    fn complex_file_loads_and_validates() {
        let d = tmp("cx");
        std::fs::write(d.join("p.toml"), "algebra = \"corpus:D3R^1,2,2,2\"\nstring = \"beta\"\n").unwrap();
        std::fs::write(d.join("s.toml"), "algebra = \"corpus:D3R^1,2,2,2\"\nstring = \"@1\"\n").unwrap();
        // socle inclusion S1 → 0/1
        let good = "[[term]]\ndegree = -1\nmodule = \"s.toml\"\n\n[[term]]\ndegree = 0\nmodule = \"p.toml\"\n\n\
                    [[differential]]\ndegree = -1\ncomponents = [[], [[1]], []]\n";
        std::fs::write(d.join("c.toml"), good).unwrap();
        let c = load_complex(&d.join("c.toml"), Field::gf2()).unwrap();
        assert_eq!(c.low(), -1);
        assert_eq!(c.cohomology_at(-1).dim(), 0);
        assert_eq!(c.cohomology_at(0).dims(), &[1, 0, 0]);
        let parsed = ComplexFile::parse(good).unwrap();
        assert_eq!(ComplexFile::parse(&parsed.to_toml()).unwrap(), parsed);
        // 0/1 → S1 through the socle is not a module map
        let bad = "[[term]]\ndegree = 0\nmodule = \"p.toml\"\n\n[[term]]\ndegree = 1\nmodule = \"s.toml\"\n\n\
                   [[differential]]\ndegree = 0\ncomponents = [[], [[1]], []]\n";
        std::fs::write(d.join("bad.toml"), bad).unwrap();
        assert!(load_complex(&d.join("bad.toml"), Field::gf2()).is_err());
    }

    #[test]
    fn bimodule_file_constructions() {
        let d = tmp("bi");
        std::fs::write(
            d.join("x.toml"),
            "left = \"corpus:D3R^1,2,2,2\"\nright = \"corpus:D3R^1,2,2,2\"\ncertify = true\nconstruction = \"regular\"\n",
        )
        .unwrap();
        let b = load_bimodule(&d.join("x.toml"), Field::gf2()).unwrap();
        assert_eq!(b.bimodule.dim(), 15);
        assert!(b.file.certify);
        assert_eq!(BimoduleFile::parse(&b.file.to_toml()).unwrap(), b.file);
    }
}
