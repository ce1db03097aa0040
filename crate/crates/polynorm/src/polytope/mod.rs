//! Exact rational polytopes: vertex filtering of point sets, affine
//! dimension, Minkowski sums, dilation, support and width functions, polar
//! duals and facet enumeration.
//!
//! All decisions are made in exact rational arithmetic. Vertex filtering
//! runs an exact linear-programming separation test per point; conversion
//! between vertex and half-space descriptions uses the double description
//! method in both directions.

mod dd;
mod lp;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg;
use crate::RationalVector;

/// Ambient dimension bound for the double-description conversions, which
/// are exponential in the worst case. Calls on higher-dimensional input
/// are rejected rather than left to run away.
pub const DEFAULT_MAX_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("points have inconsistent dimensions")]
    RaggedPoints,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is not full-dimensional in its ambient space")]
    NotFullDimensional,
    #[error("origin is not strictly interior")]
    OriginNotInterior,
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("ambient dimension {dim} exceeds the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
}

/// A closed half-space {x : normal · x <= offset} with a primitive integer
/// normal. The canonical representative of a half-space is unique: the
/// positive scaling making the normal integral with content one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vec<BigInt>,
    pub offset: BigRational,
}

impl HalfSpace {
    /// Canonicalize a rational inequality `normal · x <= offset`.
    /// The normal must be nonzero.
    pub fn new(normal: &[BigRational], offset: &BigRational) -> Self {
        let prim = linalg::primitive_integer(normal);
        // The positive scale factor relating `normal` to `prim`.
        let i = normal.iter().position(|x| !x.is_zero()).expect("zero normal");
        let scale = BigRational::from_integer(prim[i].clone()) / &normal[i];
        HalfSpace {
            normal: prim,
            offset: offset * scale,
        }
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        let mut acc = BigRational::zero();
        for (n, xi) in self.normal.iter().zip(x) {
            acc += BigRational::from_integer(n.clone()) * xi;
        }
        acc <= self.offset
    }

    pub fn is_tight(&self, x: &[BigRational]) -> bool {
        let mut acc = BigRational::zero();
        for (n, xi) in self.normal.iter().zip(x) {
            acc += BigRational::from_integer(n.clone()) * xi;
        }
        acc == self.offset
    }

    pub fn to_json(&self) -> Value {
        json!({
            "normal": self.normal.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "offset": self.offset.to_string(),
        })
    }
}

/// A bounded convex polytope in exact rational V-representation, with an
/// optional irredundant H-representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim_ambient: usize,
    vertices: Vec<RationalVector>,
    facets: Option<Vec<HalfSpace>>,
}

impl Polytope {
    fn from_sorted_vertices(dim_ambient: usize, vertices: Vec<RationalVector>) -> Self {
        Polytope {
            dim_ambient,
            vertices,
            facets: None,
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn facets(&self) -> Option<&[HalfSpace]> {
        self.facets.as_deref()
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("dim".into(), json!(self.dim_ambient));
        obj.insert(
            "vertices".into(),
            json!(self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        );
        if let Some(facets) = &self.facets {
            obj.insert(
                "facets".into(),
                json!(facets.iter().map(|h| h.to_json()).collect::<Vec<_>>()),
            );
        }
        Value::Object(obj)
    }
}

fn check_uniform(points: &[RationalVector]) -> Result<usize, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::EmptyPointSet)?;
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(PolytopeError::RaggedPoints);
    }
    Ok(d)
}

/// Minimal vertex set of the convex hull of a point set, by exact LP
/// separation tests (Clarkson's output-sensitive ordering: each separation
/// either discards a non-vertex or confirms a new hull vertex).
pub fn hull_vertices(points: &[RationalVector]) -> Result<Polytope, PolytopeError> {
    let d = check_uniform(points)?;
    let mut pts: Vec<RationalVector> = points.to_vec();
    pts.sort();
    pts.dedup();

    // The lexicographically least point is always a vertex.
    let mut confirmed: Vec<usize> = vec![0];
    for i in 0..pts.len() {
        if confirmed.contains(&i) {
            continue;
        }
        loop {
            let hull_pts: Vec<&[BigRational]> = confirmed
                .iter()
                .map(|&j| pts[j].as_slice())
                .collect();
            match lp::convex_membership(&hull_pts, &pts[i]) {
                lp::Membership::Inside => break,
                lp::Membership::Separated { functional, .. } => {
                    // The separating direction exposes at least one point
                    // beyond the current hull; the lexicographically least
                    // maximizer is a vertex of the full hull.
                    let mut best: Option<(BigRational, usize)> = None;
                    for (j, p) in pts.iter().enumerate() {
                        let v = linalg::dot(&functional, p);
                        let better = match &best {
                            None => true,
                            Some((bv, bj)) => v > *bv || (v == *bv && pts[j] < pts[*bj]),
                        };
                        if better {
                            best = Some((v, j));
                        }
                    }
                    let (_, j) = best.unwrap();
                    debug_assert!(!confirmed.contains(&j));
                    confirmed.push(j);
                    if j == i {
                        break;
                    }
                }
            }
        }
    }
    confirmed.sort();
    let vertices: Vec<RationalVector> = confirmed.into_iter().map(|j| pts[j].clone()).collect();
    Ok(Polytope::from_sorted_vertices(d, vertices))
}

/// Rank over Q of {v - v0}.
pub fn affine_dim(p: &Polytope) -> usize {
    let v0 = &p.vertices[0];
    let rows: Vec<Vec<BigRational>> = p.vertices[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank(&rows)
}

/// Minkowski sum: hull of the pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, PolytopeError> {
    if p.dim_ambient != q.dim_ambient {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.dim_ambient,
            got: q.dim_ambient,
        });
    }
    let sums: Vec<RationalVector> = p
        .vertices
        .iter()
        .flat_map(|a| {
            q.vertices
                .iter()
                .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
        })
        .collect();
    hull_vertices(&sums)
}

/// Scale every vertex by a positive rational.
pub fn dilate(p: &Polytope, lambda: &BigRational) -> Result<Polytope, PolytopeError> {
    if !lambda.is_positive() {
        return Err(PolytopeError::NonPositiveDilation);
    }
    let vertices: Vec<RationalVector> = p
        .vertices
        .iter()
        .map(|v| v.iter().map(|x| x * lambda).collect())
        .collect();
    let facets = p.facets.as_ref().map(|fs| {
        fs.iter()
            .map(|h| HalfSpace {
                normal: h.normal.clone(),
                offset: &h.offset * lambda,
            })
            .collect()
    });
    Ok(Polytope {
        dim_ambient: p.dim_ambient,
        vertices,
        facets,
    })
}

/// max over the polytope of phi(x); attained at a vertex.
pub fn support_function(p: &Polytope, phi: &[BigRational]) -> Result<BigRational, PolytopeError> {
    if phi.len() != p.dim_ambient {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.dim_ambient,
            got: phi.len(),
        });
    }
    Ok(p.vertices
        .iter()
        .map(|v| linalg::dot(phi, v))
        .max()
        .expect("polytope has vertices"))
}

/// Width of the polytope in direction phi: h(P, phi) + h(P, -phi).
pub fn width_function(p: &Polytope, phi: &[BigRational]) -> Result<BigRational, PolytopeError> {
    let neg: Vec<BigRational> = phi.iter().map(|x| -x.clone()).collect();
    Ok(support_function(p, phi)? + support_function(p, &neg)?)
}

/// Irredundant H-representation of a full-dimensional polytope, by double
/// description on the homogenized valid-inequality cone.
pub fn facets_from_vertices(p: &Polytope) -> Result<Vec<HalfSpace>, PolytopeError> {
    facets_from_vertices_capped(p, DEFAULT_MAX_DIM)
}

pub fn facets_from_vertices_capped(
    p: &Polytope,
    max_dim: usize,
) -> Result<Vec<HalfSpace>, PolytopeError> {
    let d = p.dim_ambient;
    if d > max_dim {
        return Err(PolytopeError::DimensionCapExceeded { dim: d, cap: max_dim });
    }
    if affine_dim(p) != d {
        return Err(PolytopeError::NotFullDimensional);
    }
    // Valid inequalities a·x <= b as a cone over y = (b, a):
    // one row (1, -v) per vertex.
    let rows: Vec<Vec<BigRational>> = p
        .vertices
        .iter()
        .map(|v| {
            let mut row = vec![BigRational::one()];
            row.extend(v.iter().map(|x| -x.clone()));
            row
        })
        .collect();
    let rays = dd::extreme_rays(&rows, d + 1).ok_or(PolytopeError::NotFullDimensional)?;
    let mut facets: Vec<HalfSpace> = rays
        .into_iter()
        .filter(|ray| ray[1..].iter().any(|x| !x.is_zero()))
        .map(|ray| {
            let normal: Vec<BigRational> = ray[1..]
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect();
            HalfSpace::new(&normal, &BigRational::from_integer(ray[0].clone()))
        })
        .collect();
    facets.sort();
    Ok(facets)
}

/// Vertex enumeration of a bounded full-dimensional H-polytope, by double
/// description on the homogenization cone.
pub fn vertices_from_facets(
    halfspaces: &[HalfSpace],
    dim: usize,
    max_dim: usize,
) -> Result<Polytope, PolytopeError> {
    if dim > max_dim {
        return Err(PolytopeError::DimensionCapExceeded { dim, cap: max_dim });
    }
    let mut rows: Vec<Vec<BigRational>> = halfspaces
        .iter()
        .map(|h| {
            let mut row = vec![h.offset.clone()];
            row.extend(
                h.normal
                    .iter()
                    .map(|n| BigRational::from_integer(-n.clone())),
            );
            row
        })
        .collect();
    let mut t_row = vec![BigRational::zero(); dim + 1];
    t_row[0] = BigRational::one();
    rows.push(t_row);
    let rays = dd::extreme_rays(&rows, dim + 1).ok_or(PolytopeError::Unbounded)?;
    let mut vertices = Vec::new();
    for ray in rays {
        if ray[0].is_zero() {
            return Err(PolytopeError::Unbounded);
        }
        let t = BigRational::from_integer(ray[0].clone());
        vertices.push(
            ray[1..]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()) / &t)
                .collect::<RationalVector>(),
        );
    }
    vertices.sort();
    Ok(Polytope::from_sorted_vertices(dim, vertices))
}

/// Attach the H-representation computed from the vertices.
pub fn with_facets(p: Polytope, max_dim: usize) -> Result<Polytope, PolytopeError> {
    let facets = facets_from_vertices_capped(&p, max_dim)?;
    Ok(Polytope {
        facets: Some(facets),
        ..p
    })
}

/// Polar dual {phi : phi(x) <= 1 for all x in P} of a full-dimensional
/// polytope with the origin strictly inside. The dual's H-representation is
/// one half-space per vertex of P; its vertices are read off the facets of
/// P. The result carries both representations.
pub fn polar_dual(p: &Polytope) -> Result<Polytope, PolytopeError> {
    polar_dual_capped(p, DEFAULT_MAX_DIM)
}

pub fn polar_dual_capped(p: &Polytope, max_dim: usize) -> Result<Polytope, PolytopeError> {
    if p.dim_ambient == 0 {
        // The point in R^0 is self-dual.
        return Ok(Polytope {
            dim_ambient: 0,
            vertices: vec![Vec::new()],
            facets: Some(Vec::new()),
        });
    }
    let facets = match &p.facets {
        Some(f) => f.clone(),
        None => facets_from_vertices_capped(p, max_dim)?,
    };
    if facets.iter().any(|h| !h.offset.is_positive()) {
        return Err(PolytopeError::OriginNotInterior);
    }
    let d = p.dim_ambient;
    let mut vertices: Vec<RationalVector> = facets
        .iter()
        .map(|h| {
            h.normal
                .iter()
                .map(|n| BigRational::from_integer(n.clone()) / &h.offset)
                .collect()
        })
        .collect();
    vertices.sort();
    let one = BigRational::one();
    let mut dual_facets: Vec<HalfSpace> = p
        .vertices
        .iter()
        .map(|v| HalfSpace::new(v, &one))
        .collect();
    dual_facets.sort();
    dual_facets.dedup();
    Ok(Polytope {
        dim_ambient: d,
        vertices,
        facets: Some(dual_facets),
    })
}

/// Membership test against the H-representation, computing it on the fly
/// when absent (which requires the polytope to be full-dimensional).
pub fn contains(p: &Polytope, x: &[BigRational]) -> Result<bool, PolytopeError> {
    if x.len() != p.dim_ambient {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.dim_ambient,
            got: x.len(),
        });
    }
    let computed;
    let facets = match &p.facets {
        Some(f) => f.as_slice(),
        None => {
            computed = facets_from_vertices(p)?;
            computed.as_slice()
        }
    };
    Ok(facets.iter().all(|h| h.contains(x)))
}

/// Exact rational parsed from "p/q" or "p".
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

/// Convenience: integer points to rational vectors.
pub fn points_i64(points: &[&[i64]]) -> Vec<RationalVector> {
    points
        .iter()
        .map(|p| {
            p.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}
