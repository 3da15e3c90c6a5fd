//! Space names such as `grassmann+:3:7` and chain-complex files.

use anyhow::{anyhow, bail, Context, Result};
use g2topo::cells::{
    grassmann_complex, oriented_grassmann_complex, product_complex, rp_complex, so3_complex, so4_complex,
    sphere_complex, stiefel_complex,
};
use g2topo::{ChainComplex, IntegerMatrix};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const SPACE_SYNTAX: &str =
    "sphere:n, rp:n, grassmann:k:n, grassmann+:k:n, stiefel:k:n, so3, so4, product:<a>x<b>";

fn number(s: &str, name: &str) -> Result<usize> {
    s.parse().with_context(|| format!("`{s}` is not a dimension in `{name}`"))
}

/// Cell model for a space name. Products split at the first `x`.
pub fn parse_space(name: &str) -> Result<ChainComplex> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("product:") {
        let (a, b) = rest
            .split_once('x')
            .ok_or_else(|| anyhow!("`{name}`: expected product:<a>x<b>"))?;
        return Ok(product_complex(&parse_space(a)?, &parse_space(b)?));
    }
    let parts: Vec<&str> = name.split(':').collect();
    let complex = match parts.as_slice() {
        ["so3"] => so3_complex(),
        ["so4"] => so4_complex(),
        ["sphere", n] => sphere_complex(number(n, name)?)?,
        ["rp", n] => rp_complex(number(n, name)?)?,
        ["grassmann", k, n] => grassmann_complex(number(k, name)?, number(n, name)?)?,
        ["grassmann+", k, n] => oriented_grassmann_complex(number(k, name)?, number(n, name)?)?,
        ["stiefel", k, n] => stiefel_complex(number(k, name)?, number(n, name)?)?,
        _ => bail!("unknown space `{name}`; expected one of {SPACE_SYNTAX}"),
    };
    Ok(complex)
}

/// `{"ranks": [...], "boundaries": [[row-major entries]...], "labels": [...]}`.
/// `boundaries[i]` is the map out of degree `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<i64>>,
    #[serde(default)]
    pub labels: Vec<Vec<String>>,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<ChainComplex> {
        if self.boundaries.len() + 1 != self.ranks.len().max(1) {
            bail!("{} ranks need {} boundary maps", self.ranks.len(), self.ranks.len().saturating_sub(1));
        }
        let maps = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, entries)| {
                let (rows, cols) = (self.ranks[i], self.ranks[i + 1]);
                let entries = entries.iter().map(|&x| BigInt::from(x)).collect();
                IntegerMatrix::from_entries(rows, cols, entries).with_context(|| format!("boundary of degree {}", i + 1))
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = if self.labels.is_empty() {
            self.ranks
                .iter()
                .enumerate()
                .map(|(n, &r)| (0..r).map(|i| format!("c{n}.{i}")).collect())
                .collect()
        } else {
            self.labels.clone()
        };
        Ok(ChainComplex::new(self.ranks.clone(), maps, labels)?)
    }
}
