//! Mellin-Barnes kernels, their integral representations, the spectral test
//! function and its transform.

pub mod contour;
pub mod intrep;
pub mod mellin;
pub mod quad;
pub mod spectral;
pub mod transform;

use num_complex::Complex64;
use serde::Serialize;

pub use contour::{Contour, ContourSpec};
pub use mellin::{MbPlan, MbValue, Sign};
pub use spectral::{SpectralParam, TestFunctionSpec};

/// Outcome of a numerical identity check at a list of points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub points: Vec<String>,
    pub lhs: Vec<[f64; 2]>,
    pub rhs: Vec<[f64; 2]>,
    pub deviations: Vec<f64>,
    /// Deviations are relative to |rhs| when set.
    pub relative: bool,
    pub contour: Option<ContourSpec>,
    pub tolerance: f64,
    pub achieved: f64,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(identity: &str, tolerance: f64, relative: bool) -> Self {
        CheckReport {
            identity: identity.to_string(),
            points: Vec::new(),
            lhs: Vec::new(),
            rhs: Vec::new(),
            deviations: Vec::new(),
            relative,
            contour: None,
            tolerance,
            achieved: 0.0,
            pass: true,
        }
    }

    pub fn push(&mut self, point: String, lhs: Complex64, rhs: Complex64) {
        let mut dev = (lhs - rhs).norm();
        if self.relative {
            dev /= rhs.norm().max(f64::MIN_POSITIVE);
        }
        if !dev.is_finite() {
            dev = f64::INFINITY;
        }
        self.points.push(point);
        self.lhs.push([lhs.re, lhs.im]);
        self.rhs.push([rhs.re, rhs.im]);
        self.deviations.push(dev);
        self.achieved = self.achieved.max(dev);
        self.pass = self.achieved <= self.tolerance;
    }

    pub fn merge(&mut self, other: CheckReport) {
        for (((p, l), r), d) in other.points.into_iter().zip(other.lhs).zip(other.rhs).zip(other.deviations) {
            self.points.push(p);
            self.lhs.push(l);
            self.rhs.push(r);
            self.deviations.push(d);
            self.achieved = self.achieved.max(d);
        }
        self.pass = self.achieved <= self.tolerance;
    }
}
