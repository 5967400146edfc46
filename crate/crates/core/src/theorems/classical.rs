//! Classical boosts along x, in velocity form and in energy-momentum form.

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KinematicsError {
    #[error("speed {v} is not below the speed of light {c}")]
    SpeedDomain { v: f64, c: f64 },
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
}

const FRAME_RTOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FRAME_RTOL * a.abs().max(b.abs())
}

/// Kinematic data of the particle that carries the moving frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameState {
    pub velocity: f64,
    pub energy: f64,
    pub momentum: f64,
    pub mass: f64,
    pub c: f64,
}

impl FrameState {
    /// `E = gamma m c^2`, `p = gamma m v`.
    pub fn from_mass_velocity(mass: f64, velocity: f64, c: f64) -> Result<Self, KinematicsError> {
        check_speed(velocity, c)?;
        let beta = velocity / c;
        let gamma = 1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt();
        FrameState {
            velocity,
            energy: gamma * mass * c * c,
            momentum: gamma * mass * velocity,
            mass,
            c,
        }
        .validated()
    }

    pub fn new(velocity: f64, energy: f64, momentum: f64, mass: f64, c: f64) -> Result<Self, KinematicsError> {
        FrameState { velocity, energy, momentum, mass, c }.validated()
    }

    pub fn validated(self) -> Result<Self, KinematicsError> {
        let FrameState { velocity: v, energy: e, momentum: p, mass: m, c } = self;
        let bad = |why: &str| Err(KinematicsError::InvalidFrame(why.into()));
        if ![v, e, p, m, c].iter().all(|x| x.is_finite()) {
            return bad("non-finite component");
        }
        if c <= 0.0 || m <= 0.0 {
            return bad("mass and c must be positive");
        }
        if check_speed(v, c).is_err() {
            return bad("|v| >= c");
        }
        if e <= 0.0 {
            return bad("energy must be positive");
        }
        let mc2 = m * c * c;
        let pc = p * c;
        if !close(e * e, pc * pc + mc2 * mc2) {
            return bad("E^2 != p^2 c^2 + m^2 c^4");
        }
        if !close(v, p * c * c / e) {
            return bad("v != p c^2 / E");
        }
        Ok(self)
    }
}

fn check_speed(v: f64, c: f64) -> Result<(), KinematicsError> {
    if v.is_finite() && c.is_finite() && v.abs() < c {
        Ok(())
    } else {
        Err(KinematicsError::SpeedDomain { v, c })
    }
}

/// `(t', x')` for a frame moving with velocity `v` along x.
pub fn lorentz_classical(t: f64, x: f64, v: f64, c: f64) -> Result<(f64, f64), KinematicsError> {
    check_speed(v, c)?;
    let beta = v / c;
    let gamma = 1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt();
    Ok((gamma * (t - v * x / (c * c)), gamma * (x - v * t)))
}

/// Same boost written through the frame particle's energy and momentum:
/// `x' = (E x - c^2 p t) / m c^2`, `t' = (E t - p x) / m c^2`.
pub fn lorentz_momentum_form(t: f64, x: f64, frame: &FrameState) -> Result<(f64, f64), KinematicsError> {
    let f = frame.validated()?;
    let mc2 = f.mass * f.c * f.c;
    let t_prime = (f.energy * t - f.momentum * x) / mc2;
    let x_prime = (f.energy * x - f.c * f.c * f.momentum * t) / mc2;
    Ok((t_prime, x_prime))
}

/// `c^2 t^2 - x^2`, factored to keep precision near the light cone.
pub fn interval(t: f64, x: f64, c: f64) -> f64 {
    (c * t - x) * (c * t + x)
}
