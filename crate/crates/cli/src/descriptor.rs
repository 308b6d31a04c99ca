//! Model and sweep descriptors (JSON). Rationals are strings like `"3"` or
//! `"-1/2"`; floats are rejected everywhere.

use std::path::Path;

use anyhow::{bail, Context, Result};
use kmu_core::scalar::parse_rational;
use kmu_core::submanifold::{mixed_with_k, DistributionKind, ZChoice};
use kmu_core::Scalar;
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDescriptor {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    #[serde(default)]
    pub deformation_a: Option<String>,
    #[serde(default)]
    pub submanifolds: Option<Vec<SubmanifoldBlock>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmanifoldBlock {
    pub kind: String,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub z_choices: Option<Vec<String>>,
    #[serde(default)]
    pub c: Option<String>,
    #[serde(default)]
    pub d: Option<String>,
}

/// A descriptor with every rational parsed and every block resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub n: usize,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub deformation_a: Option<Scalar>,
    pub submanifolds: Vec<DistributionKind<Scalar>>,
}

fn rational(field: &str, text: &str) -> Result<Scalar> {
    parse_rational(text).with_context(|| format!("field `{field}`"))
}

impl SubmanifoldBlock {
    pub fn resolve(&self, n: usize) -> Result<DistributionKind<Scalar>> {
        let unexpected = |field: &str| format!("`{field}` is not used by kind `{}`", self.kind);
        match self.kind.as_str() {
            "x" | "y" | "mixed" if self.c.is_some() || self.d.is_some() => bail!(unexpected("c/d")),
            "x" | "y" | "diag" if self.k.is_some() || self.z_choices.is_some() => bail!(unexpected("k/z_choices")),
            _ => {}
        }
        Ok(match self.kind.as_str() {
            "x" => DistributionKind::XAll,
            "y" => DistributionKind::YAll,
            "mixed" => {
                let z_choices = match (&self.k, &self.z_choices) {
                    (Some(k), None) => mixed_with_k(n, *k)?,
                    (None, Some(zs)) => parse_z_choices(zs)?,
                    (Some(k), Some(zs)) => {
                        let zs = parse_z_choices(zs)?;
                        let implied = 1 + zs.iter().filter(|z| **z == ZChoice::X).count();
                        if implied != *k {
                            bail!("k = {k} disagrees with z_choices (which give k = {implied})");
                        }
                        zs
                    }
                    (None, None) => bail!("mixed kind needs `k` or `z_choices`"),
                };
                DistributionKind::Mixed { z_choices }
            }
            "diag" => {
                let c = self.c.as_deref().context("diag kind needs `c`")?;
                let d = self.d.as_deref().context("diag kind needs `d`")?;
                DistributionKind::Diagonal { c: rational("c", c)?, d: rational("d", d)? }
            }
            other => bail!("unknown submanifold kind `{other}` (expected x, y, mixed or diag)"),
        })
    }
}

pub fn parse_z_choices(items: &[String]) -> Result<Vec<ZChoice>> {
    items
        .iter()
        .map(|s| match s.as_str() {
            "x" | "X" => Ok(ZChoice::X),
            "y" | "Y" => Ok(ZChoice::Y),
            other => bail!("z-choice must be x or y, got `{other}`"),
        })
        .collect()
}

impl ModelDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed model descriptor")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn resolve(&self) -> Result<Model> {
        let submanifolds = self
            .submanifolds
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, b)| b.resolve(self.n).with_context(|| format!("submanifolds[{i}]")))
            .collect::<Result<_>>()?;
        Ok(Model {
            n: self.n,
            alpha: rational("alpha", &self.alpha)?,
            beta: rational("beta", &self.beta)?,
            deformation_a: self.deformation_a.as_deref().map(|a| rational("deformation_a", a)).transpose()?,
            submanifolds,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            Self::One(v) => vec![v.clone()],
            Self::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub alpha: String,
    pub beta: String,
}

/// Sweep grid: every `n` crossed with the explicit `points` plus the
/// cartesian product of `alpha × beta`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDescriptor {
    pub n: OneOrMany<usize>,
    #[serde(default)]
    pub alpha: Vec<String>,
    #[serde(default)]
    pub beta: Vec<String>,
    #[serde(default)]
    pub points: Vec<GridPoint>,
}

impl SweepDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed sweep descriptor")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text)
    }

    /// All `(n, α, β)` points, parsed; fails on an empty grid.
    pub fn points(&self) -> Result<Vec<(usize, Scalar, Scalar)>> {
        let mut pairs = Vec::new();
        for a in &self.alpha {
            for b in &self.beta {
                pairs.push((rational("alpha", a)?, rational("beta", b)?));
            }
        }
        for p in &self.points {
            pairs.push((rational("alpha", &p.alpha)?, rational("beta", &p.beta)?));
        }
        let ns = self.n.to_vec();
        let out: Vec<_> = ns
            .iter()
            .flat_map(|&n| pairs.iter().map(move |(a, b)| (n, a.clone(), b.clone())))
            .collect();
        if out.is_empty() {
            bail!("empty sweep grid");
        }
        Ok(out)
    }
}
