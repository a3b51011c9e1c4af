//! Metric-space backends and the two product metrics on `X × [0,1]`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Result};

/// Absolute slack allowed when validating the triangle inequality of a table.
const TRIANGLE_SLACK: f64 = 1e-12;

/// A point of a ground space.
///
/// Point clouds address points by id; `ℝ^m` and the real line use coordinates
/// (a single coordinate on the real line).
#[derive(Clone, Debug)]
pub enum Point {
    Id(usize),
    Coords(Vec<f64>),
}

impl Point {
    pub fn real(x: f64) -> Self {
        Point::Coords(vec![x])
    }

    pub fn coords(c: impl Into<Vec<f64>>) -> Self {
        Point::Coords(c.into())
    }

    /// The coordinate of a real-line point.
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Point::Coords(c) if c.len() == 1 => Some(c[0]),
            _ => None,
        }
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Point {}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Point::Id(a), Point::Id(b)) => a.cmp(b),
            (Point::Id(_), Point::Coords(_)) => Ordering::Less,
            (Point::Coords(_), Point::Id(_)) => Ordering::Greater,
            (Point::Coords(a), Point::Coords(b)) => {
                for (x, y) in a.iter().zip(b) {
                    match x.total_cmp(y) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Id(i) => write!(f, "#{i}"),
            Point::Coords(c) if c.len() == 1 => write!(f, "{}", c[0]),
            Point::Coords(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A finite metric space given by a full distance table.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    n: usize,
    table: Vec<f64>,
    validated: bool,
}

impl PointCloud {
    /// Builds a cloud from a square table, checking the metric axioms in O(n³).
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        let cloud = Self::from_rows(table, true)?;
        cloud.validate()?;
        Ok(cloud)
    }

    /// Builds a cloud without the triangle-inequality pass.
    ///
    /// Shape, finiteness and symmetry are still checked; the instance is marked
    /// as not validated.
    pub fn new_unvalidated(table: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(table, false)
    }

    fn from_rows(table: Vec<Vec<f64>>, validated: bool) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(domain("point cloud must contain at least one point"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(domain(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(domain(format!("entry ({i},{j}) = {d} is not a finite nonnegative distance")));
                }
                if table[j][i] != d {
                    return Err(domain(format!("table is not symmetric at ({i},{j})")));
                }
            }
            flat.extend_from_slice(row);
        }
        Ok(Self { n, table: flat, validated })
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let dij = self.get(i, j);
                if (i == j) != (dij == 0.0) {
                    return Err(domain(format!("entry ({i},{j}) = {dij} violates positivity or zero diagonal")));
                }
                for k in 0..n {
                    if dij > self.get(i, k) + self.get(k, j) + TRIANGLE_SLACK {
                        return Err(domain(format!("triangle inequality fails for ({i},{k},{j})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.table[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.table.chunks(self.n).map(<[f64]>::to_vec).collect()
    }
}

/// A metric-space backend.
#[derive(Clone, Debug, PartialEq)]
pub enum GroundSpace {
    PointCloud(PointCloud),
    EuclideanRm { dim: usize },
    RealLine,
}

impl GroundSpace {
    pub fn euclidean(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(domain("Euclidean dimension must be at least 1"));
        }
        Ok(GroundSpace::EuclideanRm { dim })
    }

    /// Checks that `p` is a point of this space.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (GroundSpace::PointCloud(c), Point::Id(i)) if *i < c.len() => Ok(()),
            (GroundSpace::PointCloud(c), Point::Id(i)) => {
                Err(domain(format!("unknown point id {i} (cloud has {} points)", c.len())))
            }
            (GroundSpace::EuclideanRm { dim }, Point::Coords(x)) if x.len() == *dim => finite_coords(x),
            (GroundSpace::RealLine, Point::Coords(x)) if x.len() == 1 => finite_coords(x),
            _ => Err(domain(format!("point {p} does not belong to {}", self.name()))),
        }
    }

    /// Distance between two points, validating both.
    pub fn dist(&self, p: &Point, q: &Point) -> Result<f64> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.dist_unchecked(p, q))
    }

    /// Distance between two points already known to belong to the space.
    pub(crate) fn dist_unchecked(&self, p: &Point, q: &Point) -> f64 {
        match (self, p, q) {
            (GroundSpace::PointCloud(c), Point::Id(i), Point::Id(j)) => c.get(*i, *j),
            (_, Point::Coords(a), Point::Coords(b)) if a.len() == 1 => (a[0] - b[0]).abs(),
            (_, Point::Coords(a), Point::Coords(b)) => {
                a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
            }
            _ => unreachable!("points were validated against the space"),
        }
    }

    pub fn is_real_line(&self) -> bool {
        matches!(self, GroundSpace::RealLine)
    }

    /// Whether the whole space is compact (only finite clouds are).
    pub fn is_compact(&self) -> bool {
        matches!(self, GroundSpace::PointCloud(_))
    }

    pub fn name(&self) -> String {
        match self {
            GroundSpace::PointCloud(c) => format!("point cloud of {} points", c.len()),
            GroundSpace::EuclideanRm { dim } => format!("R^{dim}"),
            GroundSpace::RealLine => "real line".to_string(),
        }
    }
}

fn finite_coords(x: &[f64]) -> Result<()> {
    if x.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(domain("coordinates must be finite"))
    }
}

/// A point of `X × [0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedPoint {
    pub x: Point,
    pub t: f64,
}

impl LiftedPoint {
    pub fn new(x: Point, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(domain(format!("level {t} is outside [0,1]")));
        }
        Ok(Self { x, t })
    }
}

impl fmt::Display for LiftedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.t)
    }
}

/// Which product metric to use on `X × [0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductMetric {
    /// `d(x,y) + |s − t|`
    Sum,
    /// `max(d(x,y), |s − t|)`
    Max,
}

impl ProductMetric {
    /// Combines a ground distance with a level gap.
    #[inline]
    pub fn combine(self, d: f64, gap: f64) -> f64 {
        match self {
            ProductMetric::Sum => d + gap,
            ProductMetric::Max => d.max(gap),
        }
    }
}

/// Product distance between two lifted points of `space`.
pub fn product_dist(space: &GroundSpace, variant: ProductMetric, a: &LiftedPoint, b: &LiftedPoint) -> Result<f64> {
    let d = space.dist(&a.x, &b.x)?;
    Ok(variant.combine(d, (a.t - b.t).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(x: f64, t: f64) -> LiftedPoint {
        LiftedPoint::new(Point::real(x), t).unwrap()
    }

    #[test]
    fn euclidean_one_dim() {
        let s = GroundSpace::euclidean(1).unwrap();
        assert_eq!(s.dist(&Point::coords([0.0]), &Point::coords([3.0])).unwrap(), 3.0);
    }

    #[test]
    fn identity_is_zero() {
        let s = GroundSpace::euclidean(2).unwrap();
        let p = Point::coords([0.3, -1.7]);
        assert_eq!(s.dist(&p, &p).unwrap(), 0.0);
        assert_eq!(GroundSpace::RealLine.dist(&Point::real(2.0), &Point::real(2.0)).unwrap(), 0.0);
    }

    #[test]
    fn cloud_table_lookup() {
        let c = PointCloud::new(vec![vec![0.0, 2.5], vec![2.5, 0.0]]).unwrap();
        let s = GroundSpace::PointCloud(c);
        assert_eq!(s.dist(&Point::Id(0), &Point::Id(1)).unwrap(), 2.5);
    }

    #[test]
    fn cloud_rejects_bad_tables() {
        assert!(PointCloud::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(PointCloud::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).is_err());
        let broken = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        assert!(PointCloud::new(broken.clone()).is_err());
        let c = PointCloud::new_unvalidated(broken).unwrap();
        assert!(!c.is_validated());
    }

    #[test]
    fn unknown_id_is_domain_error() {
        let s = GroundSpace::PointCloud(PointCloud::new(vec![vec![0.0]]).unwrap());
        assert!(s.dist(&Point::Id(0), &Point::Id(3)).is_err());
        assert!(GroundSpace::RealLine.dist(&Point::Id(0), &Point::real(1.0)).is_err());
    }

    #[test]
    fn product_formulas() {
        let s = GroundSpace::RealLine;
        let (a, b) = (lp(0.0, 0.2), lp(3.0, 0.5));
        assert!((product_dist(&s, ProductMetric::Sum, &a, &b).unwrap() - 3.3).abs() < 1e-9);
        assert_eq!(product_dist(&s, ProductMetric::Max, &a, &b).unwrap(), 3.0);
        assert_eq!(product_dist(&s, ProductMetric::Sum, &a, &a).unwrap(), 0.0);
        assert_eq!(product_dist(&s, ProductMetric::Max, &a, &a).unwrap(), 0.0);
    }

    #[test]
    fn lifted_level_range() {
        assert!(LiftedPoint::new(Point::real(0.0), 1.5).is_err());
        assert!(LiftedPoint::new(Point::real(0.0), -0.1).is_err());
    }

    #[test]
    fn point_order_is_total() {
        let mut v = vec![Point::real(2.0), Point::real(-1.0), Point::real(2.0)];
        v.sort();
        v.dedup();
        assert_eq!(v, vec![Point::real(-1.0), Point::real(2.0)]);
    }
}
