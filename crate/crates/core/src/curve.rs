use serde::{Deserialize, Serialize};

/// A named point drawn on top of a curve, typically an equilibrium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub name: String,
    pub x: f64,
    pub y: f64,
}

impl Marker {
    pub fn new(name: impl Into<String>, x: f64, y: f64) -> Self {
        Self {
            name: name.into(),
            x,
            y,
        }
    }
}

/// A sampled schedule with axis labels taken from the symbol registry.
///
/// Points are strictly increasing in `x`. A vertical curve (LRAS, LRPC, a
/// fixed money supply) instead has a single `x` and strictly increasing `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Curve {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub markers: Vec<Marker>,
}

impl Curve {
    /// Builds a curve from unordered samples: non-finite points are dropped,
    /// the rest sorted by `x`, and repeated `x` values collapsed to the first.
    pub fn new(
        name: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        mut points: Vec<(f64, f64)>,
    ) -> Self {
        points.retain(|(x, y)| x.is_finite() && y.is_finite());
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|later, earlier| later.0 <= earlier.0);
        Self {
            name: name.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            points,
            markers: Vec::new(),
        }
    }

    pub fn vertical(
        name: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        x: f64,
        y_range: (f64, f64),
    ) -> Self {
        Self {
            name: name.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            points: vec![(x, y_range.0), (x, y_range.1)],
            markers: Vec::new(),
        }
    }

    pub fn with_marker(mut self, marker: Marker) -> Self {
        self.markers.push(marker);
        self
    }

    pub fn is_vertical(&self) -> bool {
        self.points.len() >= 2 && self.points.iter().all(|p| p.0 == self.points[0].0)
    }

    /// Checks the ordering invariant.
    pub fn is_well_formed(&self) -> bool {
        if self.is_vertical() {
            self.points.windows(2).all(|w| w[0].1 < w[1].1)
        } else {
            self.points.windows(2).all(|w| w[0].0 < w[1].0)
        }
    }

    /// Linear interpolation of `y` at `x`, `None` outside the sampled range.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let idx = self.points.partition_point(|p| p.0 < x);
        match (
            idx.checked_sub(1).map(|i| self.points[i]),
            self.points.get(idx),
        ) {
            (_, Some(&(x1, y1))) if x1 == x => Some(y1),
            (Some((x0, y0)), Some(&(x1, y1))) => Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0)),
            _ => None,
        }
    }

    pub fn x_range(&self) -> Option<(f64, f64)> {
        let first = self.points.first()?;
        Some(
            self.points
                .iter()
                .fold((first.0, first.0), |(lo, hi), p| (lo.min(p.0), hi.max(p.0))),
        )
    }

    pub fn y_range(&self) -> Option<(f64, f64)> {
        let first = self.points.first()?;
        Some(
            self.points
                .iter()
                .fold((first.1, first.1), |(lo, hi), p| (lo.min(p.1), hi.max(p.1))),
        )
    }
}

/// `n` evenly spaced values covering `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}
