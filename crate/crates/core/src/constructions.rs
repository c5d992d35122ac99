//! Exact generators for the optimal one-triangle families.
//!
//! Four families cover every optimal configuration: the regular simplex
//! (equilateral), the rectangle with the square as a special case, the
//! isosceles tetrahedron obtained by lifting a square's diagonal pair, and
//! the tetrahedron whose opposite edge pairs are congruent (scalene faces).
//! All constructors emit exact rational coordinates; the scalene family uses
//! a box-corner placement so that rational parameters give rational points.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{Point, PointConfig};
use crate::rat::{rat, ratio, Rat};

#[derive(Debug, Error, PartialEq)]
pub enum ConstructionError {
    #[error("simplex dimension must be at least 1, got {0}")]
    BadSimplexDim(usize),
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: String },
    #[error("parameter h must be non-negative, got {0}")]
    NegativeHeight(String),
    #[error("parameters p, q, r must be pairwise distinct (faces degenerate to isosceles)")]
    NonDistinct,
    #[error("family {family} expects {expected} parameters, got {got}")]
    BadArity {
        family: Family,
        expected: usize,
        got: usize,
    },
    #[error("simplex dimension must be a positive integer, got {0}")]
    NonIntegerDim(String),
}

/// The four construction families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Simplex,
    Rectangle,
    IsoTet,
    OppEdgeTet,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Rectangle => "rectangle",
            Family::IsoTet => "iso-tet",
            Family::OppEdgeTet => "opp-edge-tet",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "simplex" => Some(Family::Simplex),
            "rectangle" => Some(Family::Rectangle),
            "iso-tet" => Some(Family::IsoTet),
            "opp-edge-tet" => Some(Family::OppEdgeTet),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn require_positive(name: &'static str, value: &Rat) -> Result<(), ConstructionError> {
    if *value <= Rat::zero() {
        return Err(ConstructionError::NonPositive {
            name,
            value: crate::rat::format_rat(value),
        });
    }
    Ok(())
}

/// The `d+1` standard basis vectors of `R^{d+1}`: a regular `d`-simplex with
/// all pairwise squared distances 2 (ambient dimension `d+1`, affine
/// dimension `d`).
pub fn regular_simplex(d: usize) -> Result<PointConfig, ConstructionError> {
    if d < 1 {
        return Err(ConstructionError::BadSimplexDim(d));
    }
    let points = (0..=d)
        .map(|i| {
            let mut coords = vec![Rat::zero(); d + 1];
            coords[i] = rat(1);
            Point::new(coords).expect("nonempty coordinates")
        })
        .collect();
    Ok(PointConfig::new(points).expect("basis vectors are distinct"))
}

/// Rectangle vertices `(0,0), (a,0), (0,b), (a,b)`; every triple is the
/// right triangle with squared sides `(a^2, b^2, a^2 + b^2)`.
pub fn rectangle(a: &Rat, b: &Rat) -> Result<PointConfig, ConstructionError> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    let zero = Rat::zero;
    let points = vec![
        Point::new(vec![zero(), zero()]).unwrap(),
        Point::new(vec![a.clone(), zero()]).unwrap(),
        Point::new(vec![zero(), b.clone()]).unwrap(),
        Point::new(vec![a.clone(), b.clone()]).unwrap(),
    ];
    Ok(PointConfig::new(points).expect("rectangle vertices are distinct"))
}

/// Isosceles-face tetrahedron: a horizontal segment of length `d2` crossed
/// by a parallel-plane segment of the same length lifted by `h`. The two
/// segment edges have squared length `d2^2` and the four cross edges share
/// `d1^2 = d2^2/2 + h^2`, so the family is exactly the repeated-side range
/// `d1^2 >= d2^2/2`, with equality at the planar square (`h = 0`). Over the
/// rationals `d1 = d2` would need `h^2 = d2^2/2`, which has no solution, so
/// the family never collapses to the equilateral class.
pub fn isosceles_tetrahedron(d2: &Rat, h: &Rat) -> Result<PointConfig, ConstructionError> {
    require_positive("d2", d2)?;
    if *h < Rat::zero() {
        return Err(ConstructionError::NegativeHeight(crate::rat::format_rat(h)));
    }
    let half = d2 * ratio(1, 2);
    let zero = Rat::zero;
    let points = vec![
        Point::new(vec![half.clone(), zero(), zero()]).unwrap(),
        Point::new(vec![-half.clone(), zero(), zero()]).unwrap(),
        Point::new(vec![zero(), half.clone(), h.clone()]).unwrap(),
        Point::new(vec![zero(), -half, h.clone()]).unwrap(),
    ];
    Ok(PointConfig::new(points).expect("vertices are distinct"))
}

/// Tetrahedron with congruent opposite edges, realized on the corners
/// `(0,0,0), (p,q,0), (p,0,r), (0,q,r)` of a box. Opposite edge pairs have
/// squared lengths `p^2+q^2`, `p^2+r^2`, `q^2+r^2`, so every face is the
/// same acute scalene triangle.
pub fn opposite_edge_tetrahedron(
    p: &Rat,
    q: &Rat,
    r: &Rat,
) -> Result<PointConfig, ConstructionError> {
    require_positive("p", p)?;
    require_positive("q", q)?;
    require_positive("r", r)?;
    if p == q || q == r || p == r {
        return Err(ConstructionError::NonDistinct);
    }
    let zero = Rat::zero;
    let points = vec![
        Point::new(vec![zero(), zero(), zero()]).unwrap(),
        Point::new(vec![p.clone(), q.clone(), zero()]).unwrap(),
        Point::new(vec![p.clone(), zero(), r.clone()]).unwrap(),
        Point::new(vec![zero(), q.clone(), r.clone()]).unwrap(),
    ];
    Ok(PointConfig::new(points).expect("vertices are distinct"))
}

/// Dispatch by family over a flat parameter list; the entry point used by
/// the command-line `construct` subcommand.
pub fn construct(family: Family, params: &[Rat]) -> Result<PointConfig, ConstructionError> {
    let expect_arity = |expected: usize| -> Result<(), ConstructionError> {
        if params.len() != expected {
            return Err(ConstructionError::BadArity {
                family,
                expected,
                got: params.len(),
            });
        }
        Ok(())
    };
    match family {
        Family::Simplex => {
            expect_arity(1)?;
            let p = &params[0];
            if !p.is_integer() || *p <= Rat::zero() {
                return Err(ConstructionError::NonIntegerDim(crate::rat::format_rat(p)));
            }
            let d = num_traits::ToPrimitive::to_usize(p.numer())
                .ok_or_else(|| ConstructionError::NonIntegerDim(crate::rat::format_rat(p)))?;
            regular_simplex(d)
        }
        Family::Rectangle => {
            expect_arity(2)?;
            rectangle(&params[0], &params[1])
        }
        Family::IsoTet => {
            expect_arity(2)?;
            isosceles_tetrahedron(&params[0], &params[1])
        }
        Family::OppEdgeTet => {
            expect_arity(3)?;
            opposite_edge_tetrahedron(&params[0], &params[1], &params[2])
        }
    }
}
