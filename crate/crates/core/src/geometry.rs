//! Analytic closed boundary curves and their Nyström discretisation.
//!
//! Every shipped shape is parametrised counterclockwise over `t ∈ [0, 2π)`
//! with closed-form first and second derivatives. The discretisation uses
//! the `2n` equispaced nodes `t_j = jπ/n`.

use crate::error::{Error, Result};
use crate::kernels::Point2;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Shape library entry with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    Circle {
        #[serde(default)]
        center: Point2,
        radius: f64,
    },
    Ellipse {
        #[serde(default)]
        center: Point2,
        a: f64,
        b: f64,
    },
    /// `scale · (cos t + 0.65 cos 2t − 0.65, 1.5 sin t)`
    Kite {
        #[serde(default)]
        center: Point2,
        scale: f64,
    },
    /// `scale · sqrt(cos²t + 0.25 sin²t) · (cos t, sin t)`
    Peanut {
        #[serde(default)]
        center: Point2,
        scale: f64,
    },
}

impl Shape {
    pub fn center(&self) -> Point2 {
        match *self {
            Shape::Circle { center, .. }
            | Shape::Ellipse { center, .. }
            | Shape::Kite { center, .. }
            | Shape::Peanut { center, .. } => center,
        }
    }

    fn with_center(&self, c: Point2) -> Shape {
        let mut s = self.clone();
        match &mut s {
            Shape::Circle { center, .. }
            | Shape::Ellipse { center, .. }
            | Shape::Kite { center, .. }
            | Shape::Peanut { center, .. } => *center = c,
        }
        s
    }
}

/// A validated closed curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Shape", into = "Shape")]
pub struct Curve {
    shape: Shape,
}

impl TryFrom<Shape> for Curve {
    type Error = Error;

    fn try_from(shape: Shape) -> Result<Self> {
        make_shape(shape)
    }
}

impl From<Curve> for Shape {
    fn from(c: Curve) -> Shape {
        c.shape
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite and > 0, got {v}")))
    }
}

/// Validates the shape parameters and builds the curve.
pub fn make_shape(shape: Shape) -> Result<Curve> {
    if !shape.center().is_finite() {
        return Err(Error::invalid("center", "must be finite"));
    }
    match shape {
        Shape::Circle { radius, .. } => positive("radius", radius)?,
        Shape::Ellipse { a, b, .. } => {
            positive("a", a)?;
            positive("b", b)?;
        }
        Shape::Kite { scale, .. } | Shape::Peanut { scale, .. } => positive("scale", scale)?,
    }
    Ok(Curve { shape })
}

impl Curve {
    pub fn circle(center: Point2, radius: f64) -> Result<Curve> {
        make_shape(Shape::Circle { center, radius })
    }

    pub fn ellipse(center: Point2, a: f64, b: f64) -> Result<Curve> {
        make_shape(Shape::Ellipse { center, a, b })
    }

    pub fn kite(center: Point2, scale: f64) -> Result<Curve> {
        make_shape(Shape::Kite { center, scale })
    }

    pub fn peanut(center: Point2, scale: f64) -> Result<Curve> {
        make_shape(Shape::Peanut { center, scale })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn center(&self) -> Point2 {
        self.shape.center()
    }

    /// Characteristic size used for clearances and radius limits.
    pub fn scale(&self) -> f64 {
        match self.shape {
            Shape::Circle { radius, .. } => radius,
            Shape::Ellipse { a, b, .. } => a.max(b),
            Shape::Kite { scale, .. } | Shape::Peanut { scale, .. } => scale,
        }
    }

    /// Scale plus the distance of the center from the origin; radii measured
    /// from the origin are compared against multiples of this.
    pub fn reach(&self) -> f64 {
        self.scale() + self.center().norm()
    }

    pub fn describe(&self) -> String {
        let c = self.center();
        match self.shape {
            Shape::Circle { radius, .. } => format!("circle(R={radius}, center={c})"),
            Shape::Ellipse { a, b, .. } => format!("ellipse(a={a}, b={b}, center={c})"),
            Shape::Kite { scale, .. } => format!("kite(scale={scale}, center={c})"),
            Shape::Peanut { scale, .. } => format!("peanut(scale={scale}, center={c})"),
        }
    }

    /// x(t), x'(t), x''(t).
    pub fn eval(&self, t: f64) -> (Point2, Point2, Point2) {
        let (s, c) = t.sin_cos();
        let (p, d1, d2) = match self.shape {
            Shape::Circle { radius, .. } => (
                Point2::new(radius * c, radius * s),
                Point2::new(-radius * s, radius * c),
                Point2::new(-radius * c, -radius * s),
            ),
            Shape::Ellipse { a, b, .. } => (
                Point2::new(a * c, b * s),
                Point2::new(-a * s, b * c),
                Point2::new(-a * c, -b * s),
            ),
            Shape::Kite { scale, .. } => {
                let (s2, c2) = (2.0 * t).sin_cos();
                (
                    Point2::new(c + 0.65 * c2 - 0.65, 1.5 * s) * scale,
                    Point2::new(-s - 1.3 * s2, 1.5 * c) * scale,
                    Point2::new(-c - 2.6 * c2, -1.5 * s) * scale,
                )
            }
            Shape::Peanut { scale, .. } => {
                let (s2, c2) = (2.0 * t).sin_cos();
                // rho² = g = 0.625 + 0.375 cos 2t
                let g = 0.625 + 0.375 * c2;
                let g1 = -0.75 * s2;
                let g2 = -1.5 * c2;
                let rho = g.sqrt();
                let rho1 = g1 / (2.0 * rho);
                let rho2 = g2 / (2.0 * rho) - g1 * g1 / (4.0 * rho * g);
                let radial = Point2::new(c, s);
                let tangential = Point2::new(-s, c);
                (
                    radial * (scale * rho),
                    (radial * rho1 + tangential * rho) * scale,
                    (radial * (rho2 - rho) + tangential * (2.0 * rho1)) * scale,
                )
            }
        };
        (p + self.center(), d1, d2)
    }

    pub fn point(&self, t: f64) -> Point2 {
        self.eval(t).0
    }
}

/// The same shape rigidly shifted by `h`.
pub fn translate(curve: &Curve, h: Point2) -> Curve {
    Curve {
        shape: curve.shape.with_center(curve.center() + h),
    }
}

/// Per-node geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub t: f64,
    pub point: Point2,
    pub tangent: Point2,
    pub second: Point2,
    pub speed: f64,
    /// Outward unit normal.
    pub normal: Point2,
    pub curvature: f64,
}

/// Quadrature nodes `t_j = jπ/n`, `j = 0..2n`, on a curve.
#[derive(Clone, Debug)]
pub struct DiscreteBoundary {
    curve: Curve,
    n: usize,
    nodes: Vec<Node>,
}

pub const MIN_HALF_NODES: usize = 8;

/// Places `2n` equispaced parameter nodes on the curve.
pub fn discretize(curve: &Curve, n: usize) -> Result<DiscreteBoundary> {
    if n < MIN_HALF_NODES {
        return Err(Error::invalid("n", format!("must be >= {MIN_HALF_NODES}, got {n}")));
    }
    let count = 2 * n;
    let h = PI / n as f64;
    let mut nodes: Vec<Node> = (0..count)
        .map(|j| {
            let t = j as f64 * h;
            let (point, tangent, second) = curve.eval(t);
            let speed = tangent.norm();
            Node {
                t,
                point,
                tangent,
                second,
                speed,
                normal: tangent.rot_cw() * (1.0 / speed),
                curvature: tangent.cross(second) / (speed * speed * speed),
            }
        })
        .collect();
    let area: f64 = 0.5 * h * nodes.iter().map(|n| n.point.cross(n.tangent)).sum::<f64>();
    if area < 0.0 {
        // clockwise parametrisation: flip to keep normals outward
        for node in &mut nodes {
            node.normal = -node.normal;
            node.curvature = -node.curvature;
        }
    }
    Ok(DiscreteBoundary {
        curve: curve.clone(),
        n,
        nodes,
    })
}

/// Minimum distance of interior probe points from Γ, in multiples of the
/// shape scale. Closer points see the near-singular quadrature error of the
/// layer integrals.
pub const INTERIOR_CLEARANCE: f64 = 0.3;

impl DiscreteBoundary {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Half the node count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn points(&self) -> impl Iterator<Item = Point2> + '_ {
        self.nodes.iter().map(|n| n.point)
    }

    /// Trapezoid step in the parameter, `π/n`.
    pub fn step(&self) -> f64 {
        PI / self.n as f64
    }

    /// Arclength quadrature weight of node `j`.
    #[inline]
    pub fn weight(&self, j: usize) -> f64 {
        self.step() * self.nodes[j].speed
    }

    pub fn perimeter(&self) -> f64 {
        self.step() * self.nodes.iter().map(|n| n.speed).sum::<f64>()
    }

    /// Signed area from `½∮ x × x' dt`; positive for counterclockwise curves.
    pub fn signed_area(&self) -> f64 {
        0.5 * self.step() * self.nodes.iter().map(|n| n.point.cross(n.tangent)).sum::<f64>()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2 {
        // ∫∫ x dA = ½∮ x (x × x') dt / ... via Green: ∫∫ x1 dA = ½∮ x1² dx2
        let h = self.step();
        let mut mx = 0.0;
        let mut my = 0.0;
        for n in &self.nodes {
            mx += 0.5 * n.point.x1 * n.point.x1 * n.tangent.x2;
            my -= 0.5 * n.point.x2 * n.point.x2 * n.tangent.x1;
        }
        let area = self.signed_area();
        Point2::new(mx * h / area, my * h / area)
    }

    /// Winding number of the node polygon about `p`.
    pub fn winding_number(&self, p: Point2) -> i32 {
        let mut total = 0.0;
        let m = self.nodes.len();
        for j in 0..m {
            let a = self.nodes[j].point - p;
            let b = self.nodes[(j + 1) % m].point - p;
            total += a.cross(b).atan2(a.dot(b));
        }
        (total / (2.0 * PI)).round() as i32
    }

    /// Distance from `p` to the nearest node.
    pub fn node_distance(&self, p: Point2) -> f64 {
        self.nodes
            .iter()
            .map(|n| n.point.distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from `p` to the curve, refined from the nearest node by a few
    /// Newton steps on the parameter.
    pub fn distance(&self, p: Point2) -> f64 {
        let (j, _) = self
            .nodes
            .iter()
            .enumerate()
            .map(|(j, n)| (j, n.point.distance(p)))
            .fold((0, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
        let mut t = self.nodes[j].t;
        let mut best = self.nodes[j].point.distance(p);
        for _ in 0..8 {
            let (x, d1, d2) = self.curve.eval(t);
            let diff = x - p;
            let f = diff.dot(d1);
            let df = d1.dot(d1) + diff.dot(d2);
            if df <= 0.0 {
                break;
            }
            let step = (f / df).clamp(-self.step(), self.step());
            t -= step;
            best = best.min(self.curve.point(t).distance(p));
            if step.abs() < 1e-14 {
                break;
            }
        }
        best
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.winding_number(p) != 0
    }

    /// Largest distance from the centroid to a node.
    pub fn extent(&self) -> f64 {
        let c = self.centroid();
        self.nodes.iter().map(|n| n.point.distance(c)).fold(0.0, f64::max)
    }

    /// Deterministic interior probe points, each at least
    /// `INTERIOR_CLEARANCE · scale` from the boundary.
    pub fn interior_samples(&self, count: usize) -> Vec<Point2> {
        let c = self.centroid();
        let min_clearance = INTERIOR_CLEARANCE * self.curve.scale();
        let mut out = Vec::with_capacity(count);
        if self.contains(c) && self.distance(c) >= min_clearance {
            out.push(c);
        }
        'outer: for &s in &[0.5, 0.3, 0.65, 0.15, 0.4, 0.1, 0.75] {
            for k in 0..count.max(1) {
                if out.len() >= count {
                    break 'outer;
                }
                let t = 2.0 * PI * (k as f64 + 0.37 * s) / count.max(1) as f64;
                let p = c + (self.curve.point(t) - c) * s;
                if self.contains(p) && self.distance(p) >= min_clearance {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Deterministic exterior probe points at 1.5–2.5 extents from the centroid.
    pub fn exterior_samples(&self, count: usize) -> Vec<Point2> {
        let c = self.centroid();
        let extent = self.extent();
        (0..count)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / count as f64 + 0.3;
                let rho = extent * (1.5 + 0.5 * (k % 3) as f64);
                c + Point2::polar(rho, phi)
            })
            .collect()
    }
}
