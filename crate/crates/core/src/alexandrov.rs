//! Comparison angles in the model planes of constant curvature and the
//! quadruple angle-sum condition.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::proximity::euclidean;

const SLACK: f64 = 1e-12;

/// Angle at the vertex opposite `c` of a model triangle with sides `a`, `b`, `c`.
pub fn model_angle(a: f64, b: f64, c: f64, kappa: f64) -> Result<f64> {
    if [a, b, c, kappa].iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("triangle data".into()));
    }
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::DegenerateTriangle("a side at the angle has zero length".into()));
    }
    if c > a + b + SLACK || a > b + c + SLACK || b > a + c + SLACK {
        return Err(Error::DegenerateTriangle(format!(
            "sides {a}, {b}, {c} violate the triangle inequality"
        )));
    }
    let cos = if kappa == 0.0 {
        (a * a + b * b - c * c) / (2.0 * a * b)
    } else if kappa > 0.0 {
        let k = kappa.sqrt();
        if (a + b + c) * k >= TAU {
            return Err(Error::DegenerateTriangle(format!(
                "perimeter {} has no model triangle for curvature {kappa}",
                a + b + c
            )));
        }
        let (a, b, c) = (a * k, b * k, c * k);
        (c.cos() - a.cos() * b.cos()) / (a.sin() * b.sin())
    } else {
        let k = (-kappa).sqrt();
        let (a, b, c) = (a * k, b * k, c * k);
        (a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh())
    };
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// `∠_κ a b c`: the model angle at `b`.
pub fn comparison_angle(a: [f64; 2], b: [f64; 2], c: [f64; 2], kappa: f64) -> Result<f64> {
    model_angle(euclidean(b, a), euclidean(b, c), euclidean(a, c), kappa)
}

fn euclidean_angle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let u = [a[0] - b[0], a[1] - b[1]];
    let v = [c[0] - b[0], c[1] - b[1]];
    (u[0] * v[1] - u[1] * v[0]).abs().atan2(u[0] * v[0] + u[1] * v[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlexandrovQuadruple {
    /// `a₀` first; the angles are taken at `a₀`.
    pub points: [[f64; 2]; 4],
    pub kappa: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadrupleReport {
    pub kappa: f64,
    /// `∠_κ a₁a₀a₂`, `∠_κ a₁a₀a₃`, `∠_κ a₂a₀a₃`.
    pub angles: [f64; 3],
    pub angle_sum: f64,
    pub within_two_pi: bool,
    /// Plain Euclidean angles at `a₀`, for comparison.
    pub euclidean_sum: f64,
    /// For `κ > 0`: every triangle `a₀aᵢaⱼ` has perimeter below `π/√κ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perimeter_condition: Option<bool>,
}

pub fn alexandrov_quadruple_check(q: &AlexandrovQuadruple) -> Result<QuadrupleReport> {
    let p = q.points;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return Err(Error::DegenerateTriangle(format!("points {i} and {j} coincide")));
            }
        }
    }
    let pairs = [(1, 2), (1, 3), (2, 3)];
    let mut angles = [0.0; 3];
    let mut euclidean_sum = 0.0;
    let mut max_perimeter: f64 = 0.0;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        angles[k] = comparison_angle(p[i], p[0], p[j], q.kappa)?;
        euclidean_sum += euclidean_angle(p[i], p[0], p[j]);
        max_perimeter = max_perimeter.max(euclidean(p[0], p[i]) + euclidean(p[0], p[j]) + euclidean(p[i], p[j]));
    }
    let angle_sum: f64 = angles.iter().sum();
    Ok(QuadrupleReport {
        kappa: q.kappa,
        angles,
        angle_sum,
        within_two_pi: angle_sum <= TAU + 1e-9,
        euclidean_sum,
        perimeter_condition: (q.kappa > 0.0).then(|| max_perimeter < PI / q.kappa.sqrt()),
    })
}

/// Centre and three points equally spaced on the unit circle.
pub fn unit_circle_quadruple(kappa: f64) -> AlexandrovQuadruple {
    let on_circle = |k: f64| {
        let t = k * TAU / 3.0;
        [t.cos(), t.sin()]
    };
    AlexandrovQuadruple {
        points: [[0.0, 0.0], on_circle(0.0), on_circle(1.0), on_circle(2.0)],
        kappa,
    }
}
