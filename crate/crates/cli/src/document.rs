//! The JSON instance format.
//!
//! Schema (version field `v` is always 1):
//!
//! ```json
//! {"v":1,"kind":"cross","n":30,"sets":{"A":[...],"B":[...],"X":[...],"Y":[...]},
//!  "factorization":[15,2],"metadata":{"title":"..."}}
//! {"v":1,"kind":"tiling","n":15,"sets":{"A":[...],"X":[...]}}
//! {"v":1,"kind":"mult","l":30,
//!  "omega_plus":[["0","1/30"],...],"omega_minus":[...],
//!  "a_plus":["0","1/3",...],"a_minus":[...]}
//! {"v":1,"kind":"torus","tile":{"breakpoints":["0","1/2"],"values":[1,0]},
//!  "atoms":[{"point":"0","weight":1},{"point":"0 + 1*th1","weight":1}]}
//! ```
//!
//! Rationals are exact `"p/q"` strings (plain `"p"` for integers); torus
//! points follow the `q + c*th<k>` grammar. Emission is normalized (sorted
//! sets, reduced rationals, fixed field order), so parse-then-emit is the
//! identity on documents this tool wrote.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crosstile_core::cross::CrossTilingInstance;
use crosstile_core::realline::{IntervalUnion, MultTilingInstance, PeriodicTranslateSet};
use crosstile_core::torus::{
    parse_rational, parse_torus_point, StepFunction, TorusPoint, WeightedPeriodicPointSet,
};
use crosstile_core::zn::CyclicSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceDocument {
    Cross(CrossDoc),
    Tiling(TilingDoc),
    Mult(MultDoc),
    Torus(TorusDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossDoc {
    pub v: u32,
    pub n: usize,
    pub sets: CrossSets,
    /// Optional product-coordinate hint `[m, n]` for rendering.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossSets {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDoc {
    pub v: u32,
    pub n: usize,
    pub sets: TilingSets,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingSets {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultDoc {
    pub v: u32,
    pub l: usize,
    pub omega_plus: Vec<[String; 2]>,
    pub omega_minus: Vec<[String; 2]>,
    pub a_plus: Vec<String>,
    pub a_minus: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusDoc {
    pub v: u32,
    pub tile: TorusTile,
    pub atoms: Vec<TorusAtom>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusTile {
    pub breakpoints: Vec<String>,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusAtom {
    pub point: String,
    pub weight: i64,
}

impl InstanceDocument {
    pub fn kind_name(&self) -> &'static str {
        match self {
            InstanceDocument::Cross(_) => "cross",
            InstanceDocument::Tiling(_) => "tiling",
            InstanceDocument::Mult(_) => "mult",
            InstanceDocument::Torus(_) => "torus",
        }
    }

    /// Parses and validates a document; errors carry the parse location.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: InstanceDocument = serde_json::from_str(text).map_err(|e| {
            anyhow!(
                "malformed document at line {}, column {}: {e}",
                e.line(),
                e.column()
            )
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<()> {
        let v = match self {
            InstanceDocument::Cross(d) => d.v,
            InstanceDocument::Tiling(d) => d.v,
            InstanceDocument::Mult(d) => d.v,
            InstanceDocument::Torus(d) => d.v,
        };
        if v != 1 {
            bail!("unsupported schema version {v}; this tool reads v = 1");
        }
        match self {
            InstanceDocument::Cross(d) => {
                d.to_instance()?;
            }
            InstanceDocument::Tiling(d) => {
                d.to_sets()?;
            }
            InstanceDocument::Mult(d) => {
                d.to_instance()?;
            }
            InstanceDocument::Torus(d) => {
                d.to_parts()?;
            }
        }
        Ok(())
    }

    /// Compact single-line form (used for streams).
    pub fn emit_compact(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    /// Pretty form (used for single-document output).
    pub fn emit_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

fn members_to_set(n: usize, members: &[usize], name: &str) -> Result<CyclicSet> {
    CyclicSet::from_members(n, members.iter().copied())
        .with_context(|| format!("set {name} is not a valid subset of Z_{n}"))
}

impl CrossDoc {
    pub fn to_instance(&self) -> Result<CrossTilingInstance> {
        if let Some([m, k]) = self.factorization {
            if m.checked_mul(k) != Some(self.n) {
                bail!(
                    "factorization [{m}, {k}] does not multiply to n = {}",
                    self.n
                );
            }
        }
        Ok(CrossTilingInstance::new(
            members_to_set(self.n, &self.sets.a, "A")?,
            members_to_set(self.n, &self.sets.b, "B")?,
            members_to_set(self.n, &self.sets.x, "X")?,
            members_to_set(self.n, &self.sets.y, "Y")?,
        )?)
    }

    pub fn from_instance(
        inst: &CrossTilingInstance,
        factorization: Option<[usize; 2]>,
        metadata: BTreeMap<String, String>,
    ) -> Self {
        CrossDoc {
            v: 1,
            n: inst.modulus(),
            sets: CrossSets {
                a: inst.a().members(),
                b: inst.b().members(),
                x: inst.x().members(),
                y: inst.y().members(),
            },
            factorization,
            metadata,
        }
    }
}

impl TilingDoc {
    pub fn to_sets(&self) -> Result<(CyclicSet, CyclicSet)> {
        if let Some([m, k]) = self.factorization {
            if m.checked_mul(k) != Some(self.n) {
                bail!(
                    "factorization [{m}, {k}] does not multiply to n = {}",
                    self.n
                );
            }
        }
        Ok((
            members_to_set(self.n, &self.sets.a, "A")?,
            members_to_set(self.n, &self.sets.x, "X")?,
        ))
    }
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|e| anyhow!("{e}"))
}

impl MultDoc {
    pub fn to_instance(&self) -> Result<MultTilingInstance> {
        let one = BigRational::from_integer(BigInt::from(1));
        let union = |items: &[[String; 2]], name: &str| -> Result<IntervalUnion> {
            let intervals = items
                .iter()
                .map(|[lo, hi]| Ok((rational(lo)?, rational(hi)?)))
                .collect::<Result<Vec<_>>>()
                .with_context(|| format!("in {name}"))?;
            IntervalUnion::new(one.clone(), intervals)
                .with_context(|| format!("{name} is not a valid interval union in [0, 1)"))
        };
        let translates = |items: &[String], name: &str| -> Result<PeriodicTranslateSet> {
            let offsets = items
                .iter()
                .map(|s| rational(s))
                .collect::<Result<Vec<_>>>()
                .with_context(|| format!("in {name}"))?;
            PeriodicTranslateSet::new(one.clone(), offsets)
                .with_context(|| format!("{name} is not a valid offset list"))
        };
        Ok(MultTilingInstance::new(
            self.l,
            union(&self.omega_plus, "omega_plus")?,
            union(&self.omega_minus, "omega_minus")?,
            translates(&self.a_plus, "a_plus")?,
            translates(&self.a_minus, "a_minus")?,
        )?)
    }

    pub fn from_instance(inst: &MultTilingInstance, metadata: BTreeMap<String, String>) -> Self {
        let union = |u: &IntervalUnion| -> Vec<[String; 2]> {
            u.intervals()
                .iter()
                .map(|(lo, hi)| [lo.to_string(), hi.to_string()])
                .collect()
        };
        let translates = |a: &PeriodicTranslateSet| -> Vec<String> {
            a.offsets().iter().map(|o| o.to_string()).collect()
        };
        MultDoc {
            v: 1,
            l: inst.l(),
            omega_plus: union(inst.omega_plus()),
            omega_minus: union(inst.omega_minus()),
            a_plus: translates(inst.a_plus()),
            a_minus: translates(inst.a_minus()),
            metadata,
        }
    }
}

impl TorusDoc {
    pub fn to_parts(&self) -> Result<(StepFunction, WeightedPeriodicPointSet)> {
        if self.tile.breakpoints.len() != self.tile.values.len() {
            bail!(
                "tile has {} breakpoints but {} values",
                self.tile.breakpoints.len(),
                self.tile.values.len()
            );
        }
        let one = BigRational::from_integer(BigInt::from(1));
        let segments = self
            .tile
            .breakpoints
            .iter()
            .zip(&self.tile.values)
            .map(|(bp, &v)| Ok((rational(bp)?, v)))
            .collect::<Result<Vec<_>>>()?;
        let tile = StepFunction::from_segments(one.clone(), segments)
            .context("tile is not a valid step function on [0, 1)")?;
        let atoms = self
            .atoms
            .iter()
            .map(|atom| {
                let point = parse_torus_point(&atom.point, one.clone())
                    .map_err(|e| anyhow!("atom {:?}: {e}", atom.point))?;
                Ok((point, atom.weight))
            })
            .collect::<Result<Vec<(TorusPoint, i64)>>>()?;
        let tau = WeightedPeriodicPointSet::new(one, atoms)
            .context("atoms do not form a valid weighted point set")?;
        Ok((tile, tau))
    }
}
