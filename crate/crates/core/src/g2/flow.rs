//! Projected gradient flow of `Φ(L) = φ₀(u, v, w)` over oriented 3-planes,
//! in floating point. A plane is an orthonormal frame, re-orthonormalized
//! after every step.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::forms::phi0;
use super::planes::Plane;
use super::G2Error;

pub type Frame = [[f64; 7]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowDirection {
    Ascend,
    Descend,
}

impl FlowDirection {
    fn sign(self) -> f64 {
        match self {
            FlowDirection::Ascend => 1.0,
            FlowDirection::Descend => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowSettings {
    pub step: f64,
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for FlowSettings {
    fn default() -> Self {
        FlowSettings {
            step: 1e-2,
            tol: 1e-9,
            max_iterations: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowOutcome {
    pub frame: Frame,
    pub phi: f64,
    pub iterations: usize,
    /// `Φ` after every accepted step, starting value first.
    pub trajectory: Vec<f64>,
}

impl FlowOutcome {
    /// Whether the trajectory never moves against the flow direction.
    pub fn is_monotone(&self, direction: FlowDirection) -> bool {
        let s = direction.sign();
        self.trajectory.windows(2).all(|w| s * (w[1] - w[0]) >= 0.0)
    }
}

/// `φ₀` as a dense antisymmetric table.
struct DenseForm([[[f64; 7]; 7]; 7]);

impl DenseForm {
    fn new() -> Self {
        let mut t = [[[0.0; 7]; 7]; 7];
        for (idx, c) in phi0().terms() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let (a, b, d) = (idx[0] - 1, idx[1] - 1, idx[2] - 1);
            for (p, q, r, s) in [(a, b, d, 1.0), (b, d, a, 1.0), (d, a, b, 1.0), (b, a, d, -1.0), (a, d, b, -1.0), (d, b, a, -1.0)] {
                t[p][q][r] = s * c;
            }
        }
        DenseForm(t)
    }

    fn eval(&self, u: &[f64; 7], v: &[f64; 7], w: &[f64; 7]) -> f64 {
        let mut s = 0.0;
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    s += self.0[i][j][k] * u[i] * v[j] * w[k];
                }
            }
        }
        s
    }

    /// The vector `x ↦ φ(x, v, w)`.
    fn partial(&self, v: &[f64; 7], w: &[f64; 7]) -> [f64; 7] {
        core::array::from_fn(|i| {
            let mut s = 0.0;
            for j in 0..7 {
                for k in 0..7 {
                    s += self.0[i][j][k] * v[j] * w[k];
                }
            }
            s
        })
    }
}

fn dot(a: &[f64; 7], b: &[f64; 7]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram–Schmidt, keeping orientation.
pub fn orthonormalize(frame: &Frame) -> Option<Frame> {
    let mut out = *frame;
    for i in 0..3 {
        for j in 0..i {
            let c = dot(&out[i], &out[j]);
            for k in 0..7 {
                out[i][k] -= c * out[j][k];
            }
        }
        let n = libm::sqrt(dot(&out[i], &out[i]));
        if n < 1e-12 {
            return None;
        }
        for x in out[i].iter_mut() {
            *x /= n;
        }
    }
    Some(out)
}

/// `Φ` of the plane spanned by a frame.
pub fn phi_of_frame(frame: &Frame) -> Option<f64> {
    let f = orthonormalize(frame)?;
    Some(DenseForm::new().eval(&f[0], &f[1], &f[2]))
}

fn gradient(form: &DenseForm, f: &Frame) -> Frame {
    let mut g = [
        form.partial(&f[1], &f[2]),
        form.partial(&f[2], &f[0]),
        form.partial(&f[0], &f[1]),
    ];
    // only motion normal to the plane changes it
    for gi in g.iter_mut() {
        for b in f {
            let c = dot(gi, b);
            for k in 0..7 {
                gi[k] -= c * b[k];
            }
        }
    }
    g
}

/// Follows the projected gradient of `Φ` until `±Φ ≥ 1 - tol`. Steps that
/// would move `Φ` against the direction are halved until they do not.
pub fn flow_to_critical(start: &Plane, direction: FlowDirection, settings: FlowSettings) -> Result<FlowOutcome, G2Error> {
    if start.dimension() != 3 {
        return Err(G2Error::UnsupportedDimension(start.dimension()));
    }
    let b = start.basis();
    let frame: Frame = [b[0].to_f64(), b[1].to_f64(), b[2].to_f64()];
    flow_from_frame(&frame, direction, settings)
}

pub fn flow_from_frame(frame: &Frame, direction: FlowDirection, settings: FlowSettings) -> Result<FlowOutcome, G2Error> {
    let form = DenseForm::new();
    let s = direction.sign();
    let mut f = orthonormalize(frame).ok_or(G2Error::RankDeficient { expected: 3, found: 2 })?;
    let mut phi = form.eval(&f[0], &f[1], &f[2]);
    let mut trajectory = alloc::vec![phi];
    let mut iterations = 0;
    while s * phi < 1.0 - settings.tol {
        if iterations == settings.max_iterations {
            return Err(G2Error::NoConvergence { iterations, phi });
        }
        iterations += 1;
        let g = gradient(&form, &f);
        let mut step = settings.step;
        loop {
            let mut trial = f;
            for (row, gi) in trial.iter_mut().zip(&g) {
                for k in 0..7 {
                    row[k] += s * step * gi[k];
                }
            }
            if let Some(next) = orthonormalize(&trial) {
                let value = form.eval(&next[0], &next[1], &next[2]);
                if s * (value - phi) >= 0.0 {
                    f = next;
                    phi = value;
                    break;
                }
            }
            step /= 2.0;
            if step < 1e-16 {
                // no improving step: a critical point short of the target
                return Err(G2Error::NoConvergence { iterations, phi });
            }
        }
        trajectory.push(phi);
    }
    Ok(FlowOutcome {
        frame: f,
        phi,
        iterations,
        trajectory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn associative_start_is_fixed() {
        let out = flow_to_critical(&Plane::coordinate(&[1, 2, 3]).unwrap(), FlowDirection::Ascend, FlowSettings::default()).unwrap();
        assert_eq!(out.iterations, 0);
        assert_eq!(out.phi, 1.0);
    }

    #[test]
    fn harvey_lawson_start_both_ways() {
        let hl = Plane::coordinate(&[1, 2, 4]).unwrap();
        let up = flow_to_critical(&hl, FlowDirection::Ascend, FlowSettings::default()).unwrap();
        assert!(up.phi >= 1.0 - 1e-9 && up.phi <= 1.0 + 1e-12);
        assert!(up.is_monotone(FlowDirection::Ascend));
        let down = flow_to_critical(&hl, FlowDirection::Descend, FlowSettings::default()).unwrap();
        assert!(down.phi <= -1.0 + 1e-9);
        assert!(down.is_monotone(FlowDirection::Descend));
    }

    #[test]
    fn iteration_budget_is_reported() {
        let hl = Plane::coordinate(&[1, 2, 4]).unwrap();
        let settings = FlowSettings {
            max_iterations: 3,
            ..FlowSettings::default()
        };
        assert!(matches!(
            flow_to_critical(&hl, FlowDirection::Ascend, settings),
            Err(G2Error::NoConvergence { iterations: 3, .. })
        ));
    }
}
