//! Principal Newton polygons attached to a monic lift phi at a prime p:
//! lower convex hulls of valuation points, sides with exact rational slopes,
//! residual polynomials over the factor field, the phi-index lattice count,
//! admissibility of general developments, and per-factor regularity.

use crate::fqpoly::{Fq, FpPoly, FqPoly};
use crate::intarith::{ExactRational, Valuation};
use crate::zpoly::{phi_expansion, IntPoly, PhiDevelopment};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use std::fmt;

/// A point `(i, u)` with finite ordinate; abscissae index development
/// coefficients, ordinates are valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub i: u64,
    pub u: u64,
}

impl LatticePoint {
    pub fn new(i: u64, u: u64) -> LatticePoint {
        LatticePoint { i, u }
    }
}

/// A negative rational slope `-h/e` stored as the reduced pair `(h, e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    pub h: u64,
    pub e: u64,
}

impl Slope {
    pub fn as_rational(&self) -> ExactRational {
        -ExactRational::new(BigInt::from(self.h), BigInt::from(self.e))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "-{}", self.h)
        } else {
            write!(f, "-{}/{}", self.h, self.e)
        }
    }
}

/// One side of a principal polygon: endpoints, reduced slope, and the
/// derived length, height, ramification and degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Side {
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub slope: Slope,
}

impl Side {
    fn from_endpoints(start: LatticePoint, end: LatticePoint) -> Side {
        debug_assert!(end.i > start.i && start.u > end.u);
        let h = start.u - end.u;
        let e = end.i - start.i;
        let g = h.gcd(&e);
        Side { start, end, slope: Slope { h: h / g, e: e / g } }
    }

    /// Horizontal length `l(S)`.
    pub fn length(&self) -> u64 {
        self.end.i - self.start.i
    }

    /// Vertical drop of the side.
    pub fn height(&self) -> u64 {
        self.start.u - self.end.u
    }

    /// Degree `d(S) = l(S) / e`: the number of segments joining consecutive
    /// lattice points on the side.
    pub fn degree(&self) -> u64 {
        self.length() / self.slope.e
    }

    /// The ordinate of the side's line at abscissa `i`, as an exact pair
    /// `(numerator, e)`; `None` outside the span.
    fn line_height_times_e(&self, i: u64) -> Option<u64> {
        if i < self.start.i || i > self.end.i {
            return None;
        }
        Some(self.start.u * self.slope.e - (i - self.start.i) * self.slope.h)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}) -> ({},{}) slope {}",
            self.start.i, self.start.u, self.end.i, self.end.u, self.slope
        )
    }
}

/// The principal part (strictly negative slopes) of the lower convex hull
/// of a point set, with the flat-or-rising remainder kept for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    points: Vec<LatticePoint>,
    hull: Vec<LatticePoint>,
    vertices: Vec<LatticePoint>,
    sides: Vec<Side>,
    tail: Vec<(LatticePoint, LatticePoint)>,
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (oi, ou) = (o.i as i128, o.u as i128);
    let (ai, au) = (a.i as i128, a.u as i128);
    let (bi, bu) = (b.i as i128, b.u as i128);
    (ai - oi) * (bu - ou) - (au - ou) * (bi - oi)
}

/// Lower convex hull of the given points, restricted to sides of strictly
/// negative slope; vertices are in increasing abscissa.
pub fn principal_polygon(points: &[LatticePoint]) -> NewtonPolygon {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort_by_key(|p| (p.i, p.u));
    pts.dedup_by_key(|p| p.i); // keep the lowest ordinate per abscissa

    let mut hull: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }

    let mut sides = Vec::new();
    let mut tail = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.u < a.u {
            sides.push(Side::from_endpoints(a, b));
        } else {
            tail.push((a, b));
        }
    }
    let vertices = if sides.is_empty() {
        Vec::new()
    } else {
        let mut v = vec![sides[0].start];
        v.extend(sides.iter().map(|s| s.end));
        v
    };
    NewtonPolygon { points: pts, hull, vertices, sides, tail }
}

impl NewtonPolygon {
    /// Input points (lowest ordinate per abscissa), sorted.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Vertices of the principal part, in increasing abscissa (empty when
    /// there is no side of negative slope).
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// All vertices of the lower convex hull, including the flat-or-rising
    /// part and degenerate single-point hulls.
    pub fn hull_vertices(&self) -> &[LatticePoint] {
        &self.hull
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// Flat or rising hull segments past the principal part.
    pub fn tail(&self) -> &[(LatticePoint, LatticePoint)] {
        &self.tail
    }

    /// Horizontal length of the principal part measured from abscissa zero;
    /// for a development of a monic polynomial this equals the multiplicity
    /// of the factor in the reduction. A development whose low coefficients
    /// vanish starts with an implicit infinitely steep drop, which counts
    /// toward the length.
    pub fn length(&self) -> u64 {
        self.vertices
            .last()
            .map(|v| v.i)
            .unwrap_or_else(|| self.hull.first().map(|p| p.i).unwrap_or(0))
    }

    pub fn is_one_sided(&self) -> bool {
        self.sides.len() == 1
    }

    /// Exact height of the polygon above abscissa `i` as `(numerator,
    /// denominator)`; `None` outside the principal span.
    pub fn height_at(&self, i: u64) -> Option<(u64, u64)> {
        for s in &self.sides {
            if let Some(num) = s.line_height_times_e(i) {
                return Some((num, s.slope.e));
            }
        }
        None
    }

    /// Renders the points and principal sides on a fixed-width grid:
    /// vertices `*`, other input points `x`, integer lattice crossings of
    /// the sides `.`.
    pub fn render_ascii(&self) -> String {
        let imax = self.points.iter().map(|p| p.i).max().unwrap_or(0);
        let umax = self.points.iter().map(|p| p.u).max().unwrap_or(0);
        if imax > 120 || umax > 64 {
            return format!(
                "(polygon too large to draw: {} columns, {} rows)",
                imax + 1,
                umax + 1
            );
        }
        let cols = (imax + 1) as usize;
        let rows = (umax + 1) as usize;
        let mut grid = vec![vec![b' '; cols]; rows];
        for s in &self.sides {
            for i in s.start.i..=s.end.i {
                let num = s.line_height_times_e(i).unwrap();
                if num % s.slope.e == 0 {
                    grid[(num / s.slope.e) as usize][i as usize] = b'.';
                }
            }
        }
        for p in &self.points {
            grid[p.u as usize][p.i as usize] = b'x';
        }
        for v in &self.vertices {
            grid[v.u as usize][v.i as usize] = b'*';
        }
        let mut out = String::new();
        for u in (0..rows).rev() {
            let mut row = format!("{u:>3} |");
            for &cell in &grid[u] {
                row.push(' ');
                row.push(cell as char);
            }
            out.push_str(row.trim_end());
            out.push('\n');
        }
        out.push_str("    +");
        out.push_str(&"-".repeat(2 * cols));
        out.push('\n');
        out.push_str("     ");
        for i in 0..cols {
            out.push_str(&format!("{:>2}", i % 10));
        }
        out.push('\n');
        out
    }
}

/// Valuation points of a development's coefficient list (zero coefficients
/// are omitted).
pub fn development_points(coefficients: &[IntPoly], p: u64) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for (i, a) in coefficients.iter().enumerate() {
        if let Valuation::Finite(u) = a.min_valuation(p)? {
            out.push(LatticePoint::new(i as u64, u));
        }
    }
    Ok(out)
}

/// The principal polygon of the phi-adic development of `f` at `p`.
/// The reduction of `phi` must be irreducible; when it does not divide the
/// reduction of `f` the principal part is empty.
pub fn phi_newton_polygon(f: &IntPoly, phi: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    let phibar = phi.reduce(p)?;
    if !phibar.is_irreducible() {
        return Err(Error::InvalidArgument(format!(
            "{phibar} is not irreducible mod {p}"
        )));
    }
    let dev = phi_expansion(f, phi, p)?;
    Ok(principal_polygon(&development_points(&dev.coefficients, p)?))
}

/// A residual polynomial: the side it belongs to and its coefficients over
/// the field cut out by the reduction of phi.
#[derive(Debug, Clone)]
pub struct ResidualPolynomial {
    pub side: Side,
    pub poly: FqPoly,
}

impl ResidualPolynomial {
    pub fn is_separable(&self) -> bool {
        self.poly.is_separable()
    }
}

/// The residual coefficient of one development coefficient: `a / p^u`
/// reduced mod p and then mod the reduction of phi. Returns a field element
/// of the context built on the reduction of phi.
pub(crate) fn residual_coefficient(ctx: &Fq, a: &IntPoly, u: u64, p: u64) -> Result<FpPoly> {
    let scaled = a.div_pow_exact(p, u)?;
    ctx.reduce(&scaled.reduce(p)?)
}

/// The residual polynomial of a side of the development given by `phi` and
/// `coefficients` at `p`: coefficient `j` is the residual coefficient at
/// abscissa `start + j*e` when the point lies on the side's line, else zero.
pub fn residual_polynomial(
    phi: &IntPoly,
    coefficients: &[IntPoly],
    p: u64,
    side: &Side,
) -> Result<ResidualPolynomial> {
    let phibar = phi.reduce(p)?;
    let ctx = Fq::new(phibar)?;
    let d = side.degree();
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let i = side.start.i + j * side.slope.e;
        let expected_u = side.start.u - j * side.slope.h;
        let a = coefficients
            .get(i as usize)
            .cloned()
            .unwrap_or_else(IntPoly::zero);
        let on_line = match a.min_valuation(p)? {
            Valuation::Finite(u) => u == expected_u,
            Valuation::Infinity => false,
        };
        if on_line {
            coeffs.push(residual_coefficient(&ctx, &a, expected_u, p)?);
        } else {
            coeffs.push(ctx.zero());
        }
    }
    let poly = FqPoly::from_base(&ctx, coeffs)?;
    Ok(ResidualPolynomial { side: *side, poly })
}

/// All residual polynomials of a polygon's sides, in side order.
pub fn residual_polynomials(
    phi: &IntPoly,
    coefficients: &[IntPoly],
    p: u64,
    polygon: &NewtonPolygon,
) -> Result<Vec<ResidualPolynomial>> {
    polygon
        .sides()
        .iter()
        .map(|s| residual_polynomial(phi, coefficients, p, s))
        .collect()
}

/// The index contribution of one polygon: `deg(phi)` times the number of
/// lattice points with positive coordinates lying on or below the principal
/// part. Errors when the development has a vanishing constant coefficient
/// (the count would be unbounded).
pub fn phi_index(polygon: &NewtonPolygon, deg_phi: u64) -> Result<u64> {
    if polygon.sides.is_empty() {
        return Ok(0);
    }
    if polygon.sides[0].start.i > 0 {
        return Err(Error::UnsupportedShape(
            "development starts with a zero coefficient".into(),
        ));
    }
    let mut count: u64 = 0;
    for s in &polygon.sides {
        for i in (s.start.i + 1)..=s.end.i {
            let drop = (i - s.start.i) * s.slope.h;
            let ceil = drop.div_ceil(s.slope.e);
            count += s.start.u - ceil;
        }
    }
    Ok(count * deg_phi)
}

/// Whether a general development (arbitrary coefficient degrees) is
/// admissible: every hull vertex abscissa must carry a residual coefficient
/// not divisible by the reduction of phi. Admissible developments determine
/// the same principal polygon and residual polynomials as the adic one.
pub fn is_admissible(phi: &IntPoly, coefficients: &[IntPoly], p: u64) -> Result<bool> {
    let phibar = phi.reduce(p)?;
    let ctx = Fq::new(phibar)?;
    let polygon = principal_polygon(&development_points(coefficients, p)?);
    for v in polygon.hull_vertices() {
        let a = &coefficients[v.i as usize];
        let c = residual_coefficient(&ctx, a, v.u, p)?;
        if c.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Polygon and residual analysis for one irreducible factor of the
/// reduction of `f`.
#[derive(Debug, Clone)]
pub struct FactorRegularity {
    pub factor: FpPoly,
    pub multiplicity: u32,
    pub lift: IntPoly,
    pub development: PhiDevelopment,
    pub polygon: NewtonPolygon,
    pub residuals: Vec<ResidualPolynomial>,
}

impl FactorRegularity {
    pub fn is_regular(&self) -> bool {
        self.residuals.iter().all(|r| r.is_separable())
    }
}

/// Per-factor regularity of `f` at `p`: `f` is regular when every residual
/// polynomial of every side of every factor's polygon is separable.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub regular: bool,
    pub factors: Vec<FactorRegularity>,
}

/// Runs the polygon and residual analysis for every irreducible factor of
/// the reduction of `f` at `p`, using symmetric-range lifts.
pub fn is_p_regular(f: &IntPoly, p: u64) -> Result<RegularityReport> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let fbar = f.reduce(p)?;
    let mut factors = Vec::new();
    let mut regular = true;
    for (g, mult) in fbar.factor()? {
        let lift = IntPoly::lift_symmetric(&g);
        let development = phi_expansion(f, &lift, p)?;
        let polygon = principal_polygon(&development_points(&development.coefficients, p)?);
        let residuals = residual_polynomials(&lift, &development.coefficients, p, &polygon)?;
        let entry = FactorRegularity {
            factor: g,
            multiplicity: mult,
            lift,
            development,
            polygon,
            residuals,
        };
        regular &= entry.is_regular();
        factors.push(entry);
    }
    Ok(RegularityReport { regular, factors })
}
