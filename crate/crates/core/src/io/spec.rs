use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cellular::CellDatum;
use crate::diagrams::{
    build_bubble, build_matrix_algebra, build_multicolour_partition, build_quiver_example, build_tl,
    partition_algebra_dim, Bubble, PartitionAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::{Field, Rational, Scalar};
use crate::split::IdempotentFamily;

/// Largest `P_{n,m}` the builder will enumerate.
pub const MAX_PARTITION_DIM: u128 = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Matrix,
    Quiver,
    Tl,
    Bubble,
    Pnm,
    CustomJson,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Matrix, Family::Quiver, Family::Tl, Family::Bubble, Family::Pnm, Family::CustomJson];

    pub fn name(self) -> &'static str {
        match self {
            Family::Matrix => "matrix",
            Family::Quiver => "quiver",
            Family::Tl => "tl",
            Family::Bubble => "bubble",
            Family::Pnm => "pnm",
            Family::CustomJson => "custom-json",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::input(format!("unknown family {s:?}")))
    }
}

/// What to build: a family, its sizes, loop parameters and ground field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    #[serde(default)]
    pub n: usize,
    #[serde(default = "one")]
    pub m: usize,
    #[serde(default)]
    pub delta: Vec<String>,
    #[serde(default = "rational")]
    pub field: Field,
}

fn one() -> usize {
    1
}

fn rational() -> Field {
    Field::Rational
}

impl AlgebraSpec {
    pub fn new(family: Family, n: usize, m: usize, delta: &[&str], field: Field) -> Self {
        AlgebraSpec { family, n, m, delta: delta.iter().map(|s| s.to_string()).collect(), field }
    }

    /// Loop parameters as field elements (fractions reduce mod `p`).
    pub fn deltas(&self) -> Result<Vec<Scalar>> {
        self.delta
            .iter()
            .map(|s| {
                let r: Rational = s.parse().map_err(|e| Error::input(format!("bad parameter {s:?}: {e}")))?;
                self.field.from_rational(&r)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let expect_deltas = |k: usize| {
            if self.delta.len() != k {
                return Err(Error::input(format!(
                    "family {} needs {k} loop parameter(s), got {}",
                    self.family,
                    self.delta.len()
                )));
            }
            Ok(())
        };
        match self.family {
            Family::Matrix => {
                if self.n == 0 {
                    return Err(Error::input("matrix size must be at least 1"));
                }
                expect_deltas(0)?;
            }
            Family::Quiver | Family::CustomJson => expect_deltas(0)?,
            Family::Tl => expect_deltas(1)?,
            Family::Bubble | Family::Pnm => {
                if self.m == 0 {
                    return Err(Error::input("at least one colour is required"));
                }
                expect_deltas(self.m)?;
                if self.family == Family::Pnm && partition_algebra_dim(self.n, self.m) > MAX_PARTITION_DIM {
                    return Err(Error::Resource(format!(
                        "P_{{{},{}}} has more than {MAX_PARTITION_DIM} diagrams",
                        self.n, self.m
                    )));
                }
            }
        }
        self.deltas()?;
        Ok(())
    }
}

/// A built algebra: a cellular datum (with its idempotents, if any) or a
/// multi-colour partition algebra.
#[derive(Clone, Debug)]
pub enum Built {
    Cellular { datum: CellDatum, idempotents: Option<IdempotentFamily> },
    Partition(PartitionAlgebra),
}

impl Built {
    pub fn dim(&self) -> usize {
        match self {
            Built::Cellular { datum, .. } => datum.dim(),
            Built::Partition(p) => p.dim(),
        }
    }
}

/// Builds every family except `custom-json`, which is read from a file.
pub fn build(spec: &AlgebraSpec) -> Result<Built> {
    spec.validate()?;
    let field = spec.field;
    let deltas = spec.deltas()?;
    Ok(match spec.family {
        Family::Matrix => {
            let (datum, fam) = build_matrix_algebra(spec.n, field)?;
            Built::Cellular { datum, idempotents: Some(fam) }
        }
        Family::Quiver => {
            let (datum, fam) = build_quiver_example(field)?;
            Built::Cellular { datum, idempotents: Some(fam) }
        }
        Family::Tl => Built::Cellular { datum: build_tl(spec.n, &deltas[0])?.datum, idempotents: None },
        Family::Bubble => {
            let b = build_bubble(spec.n, spec.m, field, &deltas)?;
            Built::Cellular { datum: b.datum, idempotents: Some(b.idempotents) }
        }
        Family::Pnm => Built::Partition(build_multicolour_partition(spec.n, spec.m, field, &deltas)?),
        Family::CustomJson => return Err(Error::input("custom-json algebras are loaded from a datum file")),
    })
}

/// The bubble algebra described by a `bubble` spec, with its diagrams.
pub fn build_bubble_from(spec: &AlgebraSpec) -> Result<Bubble> {
    if spec.family != Family::Bubble {
        return Err(Error::input("not a bubble spec"));
    }
    spec.validate()?;
    build_bubble(spec.n, spec.m, spec.field, &spec.deltas()?)
}
