//! Scalar functions of the height coordinate `x3` with three derivatives.
//!
//! Warping functions and diagonal metric coefficients are all profiles. A
//! profile reports its value and first three derivatives as a [`Jet`].

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};

/// `[f, f', f'', f''']` at a point.
pub type Jet = [f64; 4];

pub trait Profile: Debug + Send + Sync {
    fn jet(&self, x: f64) -> Jet;

    fn value(&self, x: f64) -> f64 {
        self.jet(x)[0]
    }

    fn derivative(&self, x: f64) -> f64 {
        self.jet(x)[1]
    }
}

pub type SharedProfile = Arc<dyn Profile>;

/// `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl Profile for Constant {
    fn jet(&self, _x: f64) -> Jet {
        [self.0, 0.0, 0.0, 0.0]
    }
}

/// `scale · exp(rate · x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    pub scale: f64,
    pub rate: f64,
}

impl Profile for Exponential {
    fn jet(&self, x: f64) -> Jet {
        let v = self.scale * (self.rate * x).exp();
        let r = self.rate;
        [v, r * v, r * r * v, r * r * r * v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperbolicKind {
    Sinh,
    Cosh,
}

/// `scale · sinh(offset + slope·x)` or the `cosh` analogue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperbolic {
    pub kind: HyperbolicKind,
    pub scale: f64,
    pub offset: f64,
    pub slope: f64,
}

impl Hyperbolic {
    /// `sinh(r)` in the radial tube coordinate.
    pub fn sinh() -> Self {
        Hyperbolic {
            kind: HyperbolicKind::Sinh,
            scale: 1.0,
            offset: 0.0,
            slope: 1.0,
        }
    }

    pub fn cosh() -> Self {
        Hyperbolic {
            kind: HyperbolicKind::Cosh,
            ..Self::sinh()
        }
    }

    /// `scale · sinh(center - x)`.
    pub fn sinh_reflected(center: f64, scale: f64) -> Self {
        Hyperbolic {
            kind: HyperbolicKind::Sinh,
            scale,
            offset: center,
            slope: -1.0,
        }
    }

    /// `scale · cosh(center - x)`.
    pub fn cosh_reflected(center: f64, scale: f64) -> Self {
        Hyperbolic {
            kind: HyperbolicKind::Cosh,
            ..Self::sinh_reflected(center, scale)
        }
    }
}

impl Profile for Hyperbolic {
    fn jet(&self, x: f64) -> Jet {
        let z = self.offset + self.slope * x;
        let (s, c) = (z.sinh(), z.cosh());
        let (f0, f1) = match self.kind {
            HyperbolicKind::Sinh => (s, c),
            HyperbolicKind::Cosh => (c, s),
        };
        let k = self.slope;
        let a = self.scale;
        [a * f0, a * k * f1, a * k * k * f0, a * k * k * k * f1]
    }
}

/// `factor · inner(x / lambda + shift)`; the jet picks up powers of `1/lambda`.
#[derive(Debug, Clone)]
pub struct Reparametrized {
    pub inner: SharedProfile,
    pub lambda: f64,
    pub shift: f64,
    pub factor: f64,
}

impl Profile for Reparametrized {
    fn jet(&self, y: f64) -> Jet {
        let j = self.inner.jet(y / self.lambda + self.shift);
        let k = 1.0 / self.lambda;
        let f = self.factor;
        [f * j[0], f * k * j[1], f * k * k * j[2], f * k * k * k * j[3]]
    }
}

/// Product of two profiles (Leibniz rule through third order).
#[derive(Debug, Clone)]
pub struct Product(pub SharedProfile, pub SharedProfile);

impl Profile for Product {
    fn jet(&self, x: f64) -> Jet {
        let a = self.0.jet(x);
        let b = self.1.jet(x);
        [
            a[0] * b[0],
            a[1] * b[0] + a[0] * b[1],
            a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
            a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
        ]
    }
}

/// Natural cubic spline through uniformly spaced samples.
///
/// The third derivative is piecewise constant and the spline is linear
/// outside the sample range.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x0: f64,
    dx: f64,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x0: f64, dx: f64, y: Vec<f64>) -> Result<Self> {
        let n = y.len();
        if n < 4 {
            return Err(Error::Domain(format!("spline needs at least 4 samples, got {n}")));
        }
        if !(dx > 0.0) || y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(
                "spline samples must be finite with positive spacing".into(),
            ));
        }
        // Tridiagonal system for interior second derivatives (natural ends).
        let mut m = vec![0.0; n];
        let k = n - 2;
        let mut diag = vec![4.0; k];
        let mut rhs: Vec<f64> = (1..n - 1)
            .map(|i| 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (dx * dx))
            .collect();
        for i in 1..k {
            let w = 1.0 / diag[i - 1];
            diag[i] -= w;
            rhs[i] -= w * rhs[i - 1];
        }
        m[k] = rhs[k - 1] / diag[k - 1];
        for i in (0..k - 1).rev() {
            m[i + 1] = (rhs[i] - m[i + 2]) / diag[i];
        }
        Ok(CubicSpline { x0, dx, y, m })
    }

    pub fn knots(&self) -> (f64, f64, &[f64]) {
        (self.x0, self.dx, &self.y)
    }
}

impl Profile for CubicSpline {
    fn jet(&self, x: f64) -> Jet {
        let n = self.y.len();
        let h = self.dx;
        let xn = self.x0 + h * (n - 1) as f64;
        let slope = |i: usize| (self.y[i + 1] - self.y[i]) / h - h * (2.0 * self.m[i] + self.m[i + 1]) / 6.0;
        if x < self.x0 {
            let d = slope(0);
            return [self.y[0] + d * (x - self.x0), d, 0.0, 0.0];
        }
        if x > xn {
            let d = (self.y[n - 1] - self.y[n - 2]) / h + h * (self.m[n - 2] + 2.0 * self.m[n - 1]) / 6.0;
            return [self.y[n - 1] + d * (x - xn), d, 0.0, 0.0];
        }
        let i = (((x - self.x0) / h).floor() as usize).min(n - 2);
        let t = x - (self.x0 + h * i as f64);
        let (mi, mj) = (self.m[i], self.m[i + 1]);
        let d3 = (mj - mi) / h;
        let d1 = slope(i);
        [
            self.y[i] + d1 * t + mi * t * t / 2.0 + d3 * t * t * t / 6.0,
            d1 + mi * t + d3 * t * t / 2.0,
            mi + d3 * t,
            d3,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(p: &dyn Profile, x: f64) {
        let h = 1e-5;
        let j = p.jet(x);
        for k in 0..3 {
            let fd = (p.jet(x + h)[k] - p.jet(x - h)[k]) / (2.0 * h);
            assert!(
                (fd - j[k + 1]).abs() <= 1e-6 * (1.0 + j[k + 1].abs()),
                "order {} at {x}: fd {fd} vs {}",
                k + 1,
                j[k + 1]
            );
        }
    }

    #[test]
    fn closed_form_jets_match_finite_differences() {
        fd_check(&Exponential { scale: 2.0, rate: -1.3 }, 0.4);
        fd_check(&Hyperbolic::sinh_reflected(3.0, 0.5), 1.2);
        fd_check(&Hyperbolic::cosh_reflected(3.0, 0.5), 1.2);
        let prod = Product(
            Arc::new(Exponential { scale: 1.0, rate: -1.0 }),
            Arc::new(Hyperbolic::cosh()),
        );
        fd_check(&prod, 0.7);
        let re = Reparametrized {
            inner: Arc::new(Hyperbolic::sinh()),
            lambda: 4.0,
            shift: 1.5,
            factor: 0.25,
        };
        fd_check(&re, -2.0);
    }

    #[test]
    fn spline_reproduces_cubic_interior_and_knots() {
        let f = |x: f64| (0.3 * x).exp();
        let ys: Vec<f64> = (0..41).map(|i| f(i as f64 * 0.05)).collect();
        let s = CubicSpline::new(0.0, 0.05, ys.clone()).unwrap();
        for (i, y) in ys.iter().enumerate() {
            assert!((s.value(i as f64 * 0.05) - y).abs() < 1e-14);
        }
        let x = 1.0123;
        assert!((s.value(x) - f(x)).abs() < 1e-8);
        assert!((s.derivative(x) - 0.3 * f(x)).abs() < 1e-6);
        fd_check(&s, 0.731);
    }

    #[test]
    fn spline_rejects_short_input() {
        assert!(CubicSpline::new(0.0, 1.0, vec![1.0, 2.0, 3.0]).is_err());
        assert!(CubicSpline::new(0.0, 0.0, vec![1.0; 5]).is_err());
    }
}
