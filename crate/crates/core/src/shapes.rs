//! Pattern descriptors for sunflowers and generalised stars.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("sunflower kernel size {t} must be below the uniformity {r}")]
    KernelTooLarge { r: usize, t: usize },
    #[error("a sunflower needs at least one petal")]
    NoPetals,
    #[error("a star needs uniformity at least 2")]
    StarTooSmall,
    #[error("star degrees must all be positive")]
    ZeroDegree,
}

/// `Sf_r(t,k)`: k edges of size r sharing a t-set kernel, petals disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SunflowerShape {
    pub r: usize,
    pub t: usize,
    pub k: usize,
}

impl SunflowerShape {
    pub fn new(r: usize, t: usize, k: usize) -> Result<Self, ShapeError> {
        if t >= r {
            return Err(ShapeError::KernelTooLarge { r, t });
        }
        if k == 0 {
            return Err(ShapeError::NoPetals);
        }
        Ok(SunflowerShape { r, t, k })
    }

    pub fn vertex_count(&self) -> usize {
        self.t + self.k * (self.r - self.t)
    }
}

impl fmt::Display for SunflowerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sf{}({},{})", self.r, self.t, self.k)
    }
}

/// `St_r(d_1,...,d_{r-1})`. The pattern is labelled layer by layer: the apex
/// is vertex 0, then the `d_1` second-layer vertices, and so on; vertex `j`
/// of layer `i` hangs below vertex `j / d_i` of layer `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarShape {
    pub degrees: Vec<usize>,
}

impl StarShape {
    pub fn new(degrees: Vec<usize>) -> Result<Self, ShapeError> {
        if degrees.is_empty() {
            return Err(ShapeError::StarTooSmall);
        }
        if degrees.contains(&0) {
            return Err(ShapeError::ZeroDegree);
        }
        Ok(StarShape { degrees })
    }

    pub fn r(&self) -> usize {
        self.degrees.len() + 1
    }

    /// Sizes of layers 0..r-1 (layer 0 is the apex).
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1];
        for &d in &self.degrees {
            sizes.push(sizes.last().unwrap() * d);
        }
        sizes
    }

    /// First pattern vertex of each layer, plus the total as a final entry.
    pub fn layer_offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for s in self.layer_sizes() {
            off.push(off.last().unwrap() + s);
        }
        off
    }

    pub fn vertex_count(&self) -> usize {
        self.layer_sizes().iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().product()
    }

    /// The star one level down: `St_{r-1}(d_2,...)`, or `None` for r = 2.
    pub fn tail(&self) -> Option<StarShape> {
        (self.degrees.len() > 1).then(|| StarShape {
            degrees: self.degrees[1..].to_vec(),
        })
    }
}

impl fmt::Display for StarShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        write!(f, "St{}({})", self.r(), ds.join(","))
    }
}

/// Either kind of pattern descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Sunflower(SunflowerShape),
    Star(StarShape),
}

impl From<SunflowerShape> for Shape {
    fn from(s: SunflowerShape) -> Self {
        Shape::Sunflower(s)
    }
}

impl From<StarShape> for Shape {
    fn from(s: StarShape) -> Self {
        Shape::Star(s)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Sunflower(s) => s.fmt(f),
            Shape::Star(s) => s.fmt(f),
        }
    }
}
