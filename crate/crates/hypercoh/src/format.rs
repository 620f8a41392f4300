//! The TOML input document.
//!
//! ```toml
//! [poset]
//! elements = ["a", "b", "c", "d"]
//! covers = [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]]
//!
//! [sheaf.constant]
//! dims = [1]
//! ```
//!
//! Matrices are lists of rows; every entry is an exact rational written as a
//! string `"p/q"` (plain integers are accepted too). An empty list stands for the
//! zero matrix of whatever shape the surrounding dimensions dictate.

use std::fmt;

use hypercoh_core::homalg::CochainComplex;
use hypercoh_core::site::{PosetSite, Sheaf};
use hypercoh_core::{Field, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// One exact scalar, kept in its textual form until a field is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(pub String);

impl Scalar {
    pub fn new(s: impl Into<String>) -> Self {
        Scalar(s.into())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Int(v) => Scalar(v.to_string()),
            Raw::Text(s) => Scalar(s),
        })
    }
}

/// Row lists.
pub type MatrixSpec = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub poset: PosetSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sheaf: Option<SheafSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operad: Option<OperadSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub filtration: Vec<FiltrationSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
}

/// A bounded cochain complex: `dims[n]` and `differentials[n] : C^n → C^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differentials: Vec<MatrixSpec>,
}

/// Exactly one of `constant`, `skyscraper` or `values` (with `restrictions`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skyscraper: Option<SkyscraperSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<ValueSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restrictions: Vec<RestrictionSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkyscraperSpec {
    pub at: String,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differentials: Vec<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueSpec {
    pub element: String,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differentials: Vec<MatrixSpec>,
}

/// The restriction `value(from) → value(to)` along a cover, one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionSpec {
    pub from: String,
    pub to: String,
    pub maps: Vec<MatrixSpec>,
}

/// A multiplication `F ⊗ F → F`, given by the same matrices at every element or
/// per element. Columns follow the lexicographic basis of the tensor product in
/// each total degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub at: Vec<ProductAt>,
    /// Degree-0 coordinates of a unit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductAt {
    pub element: String,
    pub maps: Vec<MatrixSpec>,
}

/// A built-in operad, or the suboperad of `End_carrier` generated by maps
/// `carrier^{⊗ arity} → carrier` of the given degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperadSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorSpec>,
}

fn default_cap() -> usize {
    4
}

/// `blocks[i]` is the matrix from degree `i` of the tensor power to degree
/// `i + degree` of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub arity: usize,
    #[serde(default)]
    pub degree: usize,
    pub blocks: Vec<MatrixSpec>,
}

/// An algebra structure on the constant value of the sheaf, built from `[product]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    /// `commutative` or `associative`.
    pub kind: String,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

/// A filtration of the value at `element` by subcomplexes: either a weight per
/// basis vector in each degree (`v ∈ F^w`), or generators of the steps `F^k`, `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationSpec {
    pub element: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<StepGenerators>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepGenerators {
    pub level: i64,
    pub degree: usize,
    pub vectors: Vec<Vec<Scalar>>,
}

/// A monotone map file for direct images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub target: PosetSpec,
    /// Source element name to target element name.
    pub map: std::collections::BTreeMap<String, String>,
}

fn parse_toml<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    toml::from_str(text).map_err(|e| {
        let at = e.span().map(|s| line_col(text, s.start)).map(|(l, c)| format!("line {l}, column {c}: ")).unwrap_or_default();
        CliError::Parse(format!("{at}{}", e.message()))
    })
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        parse_toml(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents serialize")
    }

    /// A document describing `site` with an explicit sheaf.
    pub fn from_sheaf(f: &Sheaf<Rational>) -> Self {
        let site = f.site();
        let name = |x: usize| site.name(x).to_string();
        let values = (0..site.len()).map(|x| {
            let c = complex_spec(f.value(x));
            ValueSpec { element: name(x), dims: c.dims, differentials: c.differentials }
        });
        let restrictions = site.covers().iter().map(|&(a, b)| RestrictionSpec {
            from: name(a),
            to: name(b),
            maps: f.restriction(a, b).iter().map(matrix_spec).collect(),
        });
        Document {
            poset: poset_spec(site),
            sheaf: Some(SheafSpec { values: values.collect(), restrictions: restrictions.collect(), ..SheafSpec::default() }),
            product: None,
            operad: None,
            algebra: None,
            filtration: Vec::new(),
        }
    }

    /// A document with the constant sheaf on `site` with value `a`.
    pub fn constant(site: &PosetSite, a: &CochainComplex<Rational>) -> Self {
        Document {
            poset: poset_spec(site),
            sheaf: Some(SheafSpec { constant: Some(complex_spec(a)), ..SheafSpec::default() }),
            product: None,
            operad: None,
            algebra: None,
            filtration: Vec::new(),
        }
    }
}

impl MapDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        parse_toml(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("map documents serialize")
    }
}

pub fn poset_spec(site: &PosetSite) -> PosetSpec {
    PosetSpec {
        elements: site.names().to_vec(),
        covers: site.covers().iter().map(|&(a, b)| [site.name(a).to_string(), site.name(b).to_string()]).collect(),
    }
}

pub fn complex_spec<F: Field>(c: &CochainComplex<F>) -> ComplexSpec {
    let top = c.top_degree();
    let mut differentials: Vec<MatrixSpec> = (0..top).map(|n| matrix_spec(&c.diff(n))).collect();
    while differentials.last().is_some_and(|m| m.is_empty()) {
        differentials.pop();
    }
    ComplexSpec { dims: c.dims().to_vec(), differentials }
}

/// Dense row lists, or `[]` for a zero matrix.
pub fn matrix_spec<F: Field>(m: &hypercoh_core::homalg::Matrix<F>) -> MatrixSpec {
    if m.is_zero() {
        return Vec::new();
    }
    m.to_rows().iter().map(|r| r.iter().map(|v| Scalar(v.to_string())).collect()).collect()
}
