use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The multiset of face sizes around a vertex, written `(a^p, b^q, ...)`.
///
/// Entries are `(face size, multiplicity)` with strictly increasing sizes.
/// The cyclic order of the faces is not part of this type; see
/// [`crate::VertexLink`] for that.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceSequence {
    entries: Vec<(usize, usize)>,
}

impl FaceSequence {
    /// Builds the normalized sequence from a list of face sizes.
    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut counts = BTreeMap::new();
        for s in sizes {
            *counts.entry(s).or_insert(0) += 1;
        }
        FaceSequence {
            entries: counts.into_iter().collect(),
        }
    }

    pub fn new(entries: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (size, mult) in entries {
            if size < 3 || mult == 0 {
                return Err(Error::BadFaceSequence {
                    text: format!("{size}^{mult}"),
                    reason: "face sizes must be >= 3 and multiplicities >= 1".into(),
                });
            }
            *counts.entry(size).or_insert(0) += mult;
        }
        if counts.is_empty() {
            return Err(Error::BadFaceSequence {
                text: String::new(),
                reason: "empty face sequence".into(),
            });
        }
        Ok(FaceSequence {
            entries: counts.into_iter().collect(),
        })
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// Total multiplicity, i.e. the vertex degree.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|&(_, p)| p).sum()
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.entries
            .iter()
            .find(|&&(s, _)| s == size)
            .map_or(0, |&(_, p)| p)
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(s, _)| s)
    }

    /// All face sizes, repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<usize> {
        self.entries
            .iter()
            .flat_map(|&(s, p)| std::iter::repeat_n(s, p))
            .collect()
    }

    /// The per-vertex curvature `1 - d/2 + Σ p/a` as a reduced fraction
    /// `(numerator, denominator)` with positive denominator.
    pub fn curvature(&self) -> (i64, i64) {
        let denom = self
            .entries
            .iter()
            .fold(2i64, |acc, &(a, _)| acc.lcm(&(a as i64)));
        let d = self.degree() as i64;
        let mut num = denom - d * denom / 2;
        for &(a, p) in &self.entries {
            num += p as i64 * denom / a as i64;
        }
        let g = num.gcd(&denom);
        (num / g, denom / g)
    }
}

impl fmt::Display for FaceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &(s, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if p == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{p}")?;
            }
        }
        write!(f, ")")
    }
}

impl FromStr for FaceSequence {
    type Err = Error;

    /// Accepts `3^5,4`, `(3^5, 4)` and `3.3.3.3.3.4`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::BadFaceSequence {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .trim()
            .trim_start_matches(['(', '{', '['])
            .trim_end_matches([')', '}', ']']);
        let mut entries = Vec::new();
        for part in inner.split([',', '.']) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (size, mult) = match part.split_once('^') {
                Some((s, p)) => (s.trim(), p.trim()),
                None => (part, "1"),
            };
            let size: usize = size
                .parse()
                .map_err(|_| bad("face size is not an integer"))?;
            let mult: usize = mult
                .parse()
                .map_err(|_| bad("exponent is not an integer"))?;
            entries.push((size, mult));
        }
        FaceSequence::new(entries).map_err(|e| match e {
            Error::BadFaceSequence { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

/// Outcome of solving the Euler relation for the number of vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "vertices")]
pub enum VertexCount {
    Exact(usize),
    /// Flat type (zero curvature) on `χ = 0`: every vertex count balances.
    Indeterminate,
    Impossible,
}

/// Solves `χ = N·(1 - d/2 + Σ p_i/a_i)` for the vertex count `N` of a
/// semi-equivelar map of the given type.
pub fn sem_vertex_count(ty: &FaceSequence, chi: i64) -> VertexCount {
    let (num, den) = ty.curvature();
    if num == 0 {
        return if chi == 0 {
            VertexCount::Indeterminate
        } else {
            VertexCount::Impossible
        };
    }
    let top = chi * den;
    if top % num != 0 {
        return VertexCount::Impossible;
    }
    let n = top / num;
    if n > 0 {
        VertexCount::Exact(n as usize)
    } else {
        VertexCount::Impossible
    }
}
