//! Homogeneous-coordinate arithmetic on the real projective plane with the
//! hyperplane `z = 0` removed.
//!
//! Every point `(x:y:z)` with `z != 0` has the canonical representative
//! `(x/z : y/z : 1)`. Under the operations
//!
//! ```text
//! (x:y:z) ⊕ (x':y':z') = (xz' + x'z : yz' + y'z : zz')
//! a ⊙ (x:y:z)          = (ax : ay : z)
//! ```
//!
//! the space is a real vector space with zero `(0:0:1)` and additive inverse
//! `(-x:-y:z)`. It splits as the direct sum of the axis subspaces
//! `H10 = {(x:0:z)}` and `H01 = {(0:y:z)}`.
//!
//! Constructors keep the raw representative they are given (exporters need
//! it); every arithmetic operation returns the canonical representative.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Points with `|z|` below this are treated as lying on the excluded hyperplane.
pub const Z_FLOOR: f64 = 1e-12;

/// Default absolute tolerance on canonical coordinates for [`ProjectivePoint::equiv`].
pub const DEFAULT_TOL: f64 = 1e-12;

fn check_triple(x: f64, y: f64, z: f64) -> Result<()> {
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(Error::NonFinite { x, y, z });
    }
    if z.abs() < Z_FLOOR {
        return Err(Error::OnHyperplane { x, y, z });
    }
    Ok(())
}

/// A point `(x:y:z)` of the plane minus the hyperplane `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    x: f64,
    y: f64,
    z: f64,
}

impl ProjectivePoint {
    /// The additive identity `(0:0:1)`.
    pub const ZERO: ProjectivePoint = ProjectivePoint {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        check_triple(x, y, z)?;
        Ok(Self { x, y, z })
    }

    /// Builds `(u : v : 1)` from canonical coordinates.
    ///
    /// # Panics
    ///
    /// Panics if either coordinate is not finite.
    pub fn from_canonical(u: f64, v: f64) -> Self {
        assert!(
            u.is_finite() && v.is_finite(),
            "canonical coordinates must be finite"
        );
        Self { x: u, y: v, z: 1.0 }
    }

    /// Divides through by a third coordinate that is already known to be
    /// nonzero. Used internally for operation results.
    fn from_homogeneous(x: f64, y: f64, z: f64) -> Self {
        debug_assert!(z != 0.0);
        Self {
            x: x / z,
            y: y / z,
            z: 1.0,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn triple(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Canonical abscissa `x/z`.
    pub fn u(&self) -> f64 {
        self.x / self.z
    }

    /// Canonical ordinate `y/z`.
    pub fn v(&self) -> f64 {
        self.y / self.z
    }

    pub fn canonicalize(&self) -> Self {
        Self::from_homogeneous(self.x, self.y, self.z)
    }

    pub fn is_canonical(&self) -> bool {
        self.z == 1.0
    }

    /// Multiplies the representative by `lambda`; the projective point is unchanged.
    pub fn rescale(&self, lambda: f64) -> Result<Self> {
        Self::new(lambda * self.x, lambda * self.y, lambda * self.z)
    }

    /// True when both points have the same canonical coordinates within `tol`.
    pub fn equiv(&self, other: &Self, tol: f64) -> bool {
        (self.u() - other.u()).abs() <= tol && (self.v() - other.v()).abs() <= tol
    }

    pub fn oplus(&self, other: &Self) -> Self {
        let (x, y, z) = (self.x, self.y, self.z);
        let (xp, yp, zp) = (other.x, other.y, other.z);
        Self::from_homogeneous(x * zp + xp * z, y * zp + yp * z, z * zp)
    }

    pub fn odot(&self, a: f64) -> Self {
        Self::from_homogeneous(a * self.x, a * self.y, self.z)
    }

    pub fn neg(&self) -> Self {
        Self::from_homogeneous(-self.x, -self.y, self.z)
    }

    /// `p ⊖ q = p ⊕ (-q)`.
    pub fn ominus(&self, other: &Self) -> Self {
        let (x, y, z) = (self.x, self.y, self.z);
        let (xp, yp, zp) = (other.x, other.y, other.z);
        Self::from_homogeneous(x * zp - xp * z, y * zp - yp * z, z * zp)
    }

    /// Componentwise product `(x1x2 : y1y2 : z1z2)`.
    pub fn hadamard(&self, other: &Self) -> Self {
        Self::from_homogeneous(self.x * other.x, self.y * other.y, self.z * other.z)
    }

    /// Splits `(x:y:z)` into `(x:0:z) ⊕ (0:y:z)`, both canonical.
    pub fn decompose(&self) -> (AxisPoint10, AxisPoint01) {
        let c = self.canonicalize();
        (AxisPoint10 { x: c.x, z: 1.0 }, AxisPoint01 { y: c.y, z: 1.0 })
    }

    /// Recombines axis components; inverse of [`decompose`](Self::decompose).
    pub fn compose(h: &AxisPoint10, v: &AxisPoint01) -> Self {
        h.to_point().oplus(&v.to_point())
    }

    /// `sqrt(x^2 + y^2) / |z|`.
    pub fn norm_p(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt() / self.z.abs()
    }

    /// Euclidean distance between canonical coordinate pairs.
    pub fn dist_p(&self, other: &Self) -> f64 {
        euclid(self.u() - other.u(), self.v() - other.v())
    }

    /// Horizontal `d_P` distance plus `theta` times the vertical one.
    pub fn dist_theta(&self, other: &Self, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(dist_theta_unchecked(self, other, theta))
    }

    /// Round metric on the projective plane: the chordal distance between
    /// the closer pair of unit-sphere representatives.
    pub fn dist_round(&self, other: &Self) -> f64 {
        dist_round(self.triple(), other.triple())
    }
}

pub(crate) fn euclid(du: f64, dv: f64) -> f64 {
    (du * du + dv * dv).sqrt()
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTheta(theta))
    }
}

pub(crate) fn dist_theta_unchecked(p: &ProjectivePoint, q: &ProjectivePoint, theta: f64) -> f64 {
    (p.u() - q.u()).abs() + theta * (p.v() - q.v()).abs()
}

/// Round metric on raw triples. Both triples must be nonzero.
pub fn dist_round(p: [f64; 3], q: [f64; 3]) -> f64 {
    let np = dot(p, p).sqrt();
    let nq = dot(q, q).sqrt();
    let a = p.map(|c| c / np);
    let mut b = q.map(|c| c / nq);
    if dot(a, b) < 0.0 {
        b = b.map(|c| -c);
    }
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    dot(d, d).sqrt()
}

fn dot(p: [f64; 3], q: [f64; 3]) -> f64 {
    p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
}

/// `p ⟂ q` iff their dot product vanishes, relative to `|p||q|` and `tol`.
pub fn is_orthogonal(p: [f64; 3], q: [f64; 3], tol: f64) -> bool {
    let scale = dot(p, p).sqrt() * dot(q, q).sqrt();
    dot(p, q).abs() <= tol * scale
}

/// The hyperplane normal `e3`.
pub const E3: [f64; 3] = [0.0, 0.0, 1.0];

/// A point `(x:0:z)` of the horizontal axis subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisPoint10 {
    x: f64,
    z: f64,
}

impl AxisPoint10 {
    pub fn new(x: f64, z: f64) -> Result<Self> {
        check_triple(x, 0.0, z)?;
        Ok(Self { x, z })
    }

    /// `(u : 0 : 1)`.
    pub fn from_canonical(u: f64) -> Self {
        assert!(u.is_finite(), "canonical coordinate must be finite");
        Self { x: u, z: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn u(&self) -> f64 {
        self.x / self.z
    }

    pub fn canonicalize(&self) -> Self {
        Self {
            x: self.x / self.z,
            z: 1.0,
        }
    }

    pub fn to_point(&self) -> ProjectivePoint {
        ProjectivePoint {
            x: self.x,
            y: 0.0,
            z: self.z,
        }
    }

    /// Total order `x1 z2 <= x2 z1` after making both `z` positive.
    pub fn compare(&self, other: &Self) -> Ordering {
        compare_signed(self.x, self.z, other.x, other.z)
    }
}

/// A point `(0:y:z)` of the vertical axis subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisPoint01 {
    y: f64,
    z: f64,
}

impl AxisPoint01 {
    pub fn new(y: f64, z: f64) -> Result<Self> {
        check_triple(0.0, y, z)?;
        Ok(Self { y, z })
    }

    /// `(0 : v : 1)`.
    pub fn from_canonical(v: f64) -> Self {
        assert!(v.is_finite(), "canonical coordinate must be finite");
        Self { y: v, z: 1.0 }
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn v(&self) -> f64 {
        self.y / self.z
    }

    pub fn canonicalize(&self) -> Self {
        Self {
            y: self.y / self.z,
            z: 1.0,
        }
    }

    pub fn to_point(&self) -> ProjectivePoint {
        ProjectivePoint {
            x: 0.0,
            y: self.y,
            z: self.z,
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        compare_signed(self.y, self.z, other.y, other.z)
    }
}

fn compare_signed(a1: f64, z1: f64, a2: f64, z2: f64) -> Ordering {
    let (a1, z1) = if z1 < 0.0 { (-a1, -z1) } else { (a1, z1) };
    let (a2, z2) = if z2 < 0.0 { (-a2, -z2) } else { (a2, z2) };
    // Operands are finite by construction; partial_cmp keeps -0 == +0.
    (a1 * z2).partial_cmp(&(a2 * z1)).expect("finite coordinates")
}

pub fn compare_h10(p: &AxisPoint10, q: &AxisPoint10) -> Ordering {
    p.compare(q)
}

pub fn compare_h01(p: &AxisPoint01, q: &AxisPoint01) -> Ordering {
    p.compare(q)
}
