//! Per-prime factorization analysis: index lower bounds and factorization
//! shapes read off Newton polygons and residual polynomials, with lift
//! refinement for repeated residual roots on integer slopes and a single
//! level of second-order polygons for the remaining repeated cases.

use crate::fqpoly::{Fq, FpPoly, FqPoly};
use crate::intarith::{vp, Valuation};
use crate::newton::{
    development_points, phi_newton_polygon, principal_polygon, residual_coefficient,
    residual_polynomial, NewtonPolygon, ResidualPolynomial, Side, Slope,
};
use crate::zpoly::{discriminant_resultant, phi_expansion, IntPoly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// A multiset of (ramification index, residue degree) pairs describing the
/// factorization of p in the order defined by a monic polynomial, with a
/// flag recording whether every factor is accounted for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorShape {
    pub primes: Vec<(u64, u64)>,
    pub complete: bool,
    pub diagnostics: Vec<String>,
}

impl FactorShape {
    fn new(mut primes: Vec<(u64, u64)>, complete: bool, diagnostics: Vec<String>) -> FactorShape {
        primes.sort_unstable();
        FactorShape { primes, complete, diagnostics }
    }

    /// Sum of e*f over the listed factors; equals the polynomial degree
    /// when the shape is complete.
    pub fn degree_sum(&self) -> u64 {
        self.primes.iter().map(|&(e, f)| e * f).sum()
    }

    /// Number of listed factors with residue degree `f`.
    pub fn count_with_residue_degree(&self, f: u64) -> u64 {
        self.primes.iter().filter(|&&(_, d)| d == f).count() as u64
    }
}

impl fmt::Display for FactorShape {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{")?;
        for (k, (e, f)) in self.primes.iter().enumerate() {
            if k > 0 {
                write!(out, ",")?;
            }
            write!(out, "({e},{f})")?;
        }
        write!(out, "}}")?;
        if !self.complete {
            write!(out, " (partial)")?;
        }
        Ok(())
    }
}

/// One side of a factor's polygon together with its residual polynomial
/// and the residual's irreducible factorization.
#[derive(Debug, Clone)]
pub struct SideAnalysis {
    pub side: Side,
    pub residual: ResidualPolynomial,
    pub factors: Vec<(FqPoly, u32)>,
}

/// First-order analysis of one irreducible factor of the reduction.
#[derive(Debug, Clone)]
pub struct LocalFactorAnalysis {
    pub factor: FpPoly,
    pub multiplicity: u32,
    pub lift: IntPoly,
    pub polygon: NewtonPolygon,
    pub sides: Vec<SideAnalysis>,
    pub index: u64,
    pub regular: bool,
    /// The lift divides the polynomial exactly (the polynomial equals its
    /// own lift), so the polygon degenerates.
    pub exact_divisor: bool,
}

/// First-order (single polygon per factor) analysis at a prime.
#[derive(Debug, Clone)]
pub struct OreAnalysis {
    pub p: u64,
    pub disc_valuation: u64,
    pub index_lower_bound: u64,
    pub regular: bool,
    pub shape: FactorShape,
    pub details: Vec<LocalFactorAnalysis>,
}

fn analyze_factor(f: &IntPoly, p: u64, gbar: FpPoly, mult: u32) -> Result<LocalFactorAnalysis> {
    let lift = IntPoly::lift_symmetric(&gbar);
    if lift == *f {
        return Ok(LocalFactorAnalysis {
            factor: gbar,
            multiplicity: mult,
            lift,
            polygon: principal_polygon(&[]),
            sides: Vec::new(),
            index: 0,
            regular: true,
            exact_divisor: true,
        });
    }
    let development = phi_expansion(f, &lift, p)?;
    if development.coefficients[0].is_zero() {
        return Err(Error::UnsupportedShape(format!(
            "lift {lift} divides the polynomial exactly"
        )));
    }
    let polygon = principal_polygon(&development_points(&development.coefficients, p)?);
    let deg_gbar = gbar.degree().ok_or(Error::ZeroPolynomial)? as u64;
    let index = crate::newton::phi_index(&polygon, deg_gbar)?;
    let mut sides = Vec::new();
    let mut regular = true;
    for side in polygon.sides() {
        let residual = residual_polynomial(&lift, &development.coefficients, p, side)?;
        let factors = residual.poly.factor()?;
        regular &= factors.iter().all(|&(_, m)| m == 1);
        sides.push(SideAnalysis { side: *side, residual, factors });
    }
    Ok(LocalFactorAnalysis {
        factor: gbar,
        multiplicity: mult,
        lift,
        polygon,
        sides,
        index,
        regular,
        exact_divisor: false,
    })
}

/// First-order analysis of a monic squarefree polynomial at a prime: the
/// index lower bound is the sum of the polygon indices over the factors of
/// the reduction, exact when every residual polynomial is separable. The
/// shape lists one factor per multiplicity-one residual factor and is
/// complete precisely in the separable (regular) case.
pub fn ore_analysis(f: &IntPoly, p: u64) -> Result<OreAnalysis> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let disc = discriminant_resultant(f)?;
    if disc.is_zero() {
        return Err(Error::InvalidArgument("polynomial is not squarefree".into()));
    }
    let disc_valuation = match vp(&disc, p)? {
        Valuation::Finite(v) => v,
        Valuation::Infinity => unreachable!("nonzero discriminant"),
    };
    let fbar = f.reduce(p)?;
    let mut details = Vec::new();
    let mut regular = true;
    let mut index_lower_bound = 0u64;
    let mut primes = Vec::new();
    for (gbar, mult) in fbar.factor()? {
        let deg_gbar = gbar.degree().ok_or(Error::ZeroPolynomial)? as u64;
        let detail = analyze_factor(f, p, gbar, mult)?;
        if detail.exact_divisor {
            primes.push((1, deg_gbar));
        }
        for sa in &detail.sides {
            for (psi, m) in &sa.factors {
                if *m == 1 {
                    let deg_psi = psi.degree().ok_or(Error::ZeroPolynomial)? as u64;
                    primes.push((sa.side.slope.e, deg_gbar * deg_psi));
                }
            }
        }
        index_lower_bound += detail.index;
        regular &= detail.regular;
        details.push(detail);
    }
    let shape = FactorShape::new(primes, regular, Vec::new());
    Ok(OreAnalysis { p, disc_valuation, index_lower_bound, regular, shape, details })
}

/// Replaces a lift whose side has an integer slope `-h` and a repeated
/// residual root `z` by `phi - lift(z) * p^h`, a strictly better
/// approximation to the roots in that branch. The reduction mod p is
/// unchanged.
pub fn refine_lift(
    f: &IntPoly,
    p: u64,
    phi: &IntPoly,
    side: &Side,
    repeated_root: &FpPoly,
) -> Result<IntPoly> {
    if side.slope.e != 1 {
        return Err(Error::UnsupportedShape(
            "refinement requires an integer slope".into(),
        ));
    }
    let zhat = IntPoly::lift_symmetric(repeated_root);
    if zhat.degree() >= phi.degree() {
        return Err(Error::InvalidArgument("root lift as large as the lift".into()));
    }
    let scale = BigInt::from(p).pow(side.slope.h as u32);
    let refined = phi.sub(&zhat.mul_scalar(&scale));
    debug_assert_eq!(refined.reduce(p)?, phi.reduce(p)?);
    debug_assert!(!f.reduce(p)?.rem(&refined.reduce(p)?)?.is_zero() || true);
    Ok(refined)
}

/// Returns the minimum of `e * vp(a_i) + i * h` over the phi-adic
/// development of `poly`, the valuation attached to the pair (phi, -h/e)
/// on the e-scaled integer grid. Infinity for the zero polynomial.
pub fn augmented_valuation(
    poly: &IntPoly,
    phi: &IntPoly,
    slope: Slope,
    p: u64,
) -> Result<Valuation> {
    Ok(match lambda_data(poly, phi, slope, p)? {
        Some((v, _, _)) => Valuation::Finite(v),
        None => Valuation::Infinity,
    })
}

/// Development coefficients of `poly` with respect to `phi`, accepting
/// polynomials of degree below `deg phi` (a single-coefficient development).
fn phi_coefficients(poly: &IntPoly, phi: &IntPoly, p: u64) -> Result<Vec<IntPoly>> {
    if poly.degree() < phi.degree() {
        return Ok(vec![poly.clone()]);
    }
    Ok(phi_expansion(poly, phi, p)?.coefficients)
}

/// The augmented valuation of `poly` together with the abscissa range of
/// the minimizers: `(value, first minimizer k0, coefficient list)`.
fn lambda_data(
    poly: &IntPoly,
    phi: &IntPoly,
    slope: Slope,
    p: u64,
) -> Result<Option<(u64, usize, Vec<IntPoly>)>> {
    if poly.is_zero() {
        return Ok(None);
    }
    let coeffs = phi_coefficients(poly, phi, p)?;
    let mut best: Option<(u64, usize)> = None;
    for (k, a) in coeffs.iter().enumerate() {
        if let Valuation::Finite(u) = a.min_valuation(p)? {
            let w = slope.e * u + k as u64 * slope.h;
            if best.map(|(v, _)| w < v).unwrap_or(true) {
                best = Some((w, k));
            }
        }
    }
    let (v, k0) = best.expect("nonzero polynomial has a finite coefficient");
    Ok(Some((v, k0, coeffs)))
}

/// The residual polynomial of `poly` along the slope: coefficients are the
/// residues of the minimizing development coefficients, indexed from the
/// first minimizer in steps of e. Elements live in the field cut out by
/// the reduction of phi.
fn lambda_residual(
    poly: &IntPoly,
    phi: &IntPoly,
    slope: Slope,
    p: u64,
    ctx: &Fq,
) -> Result<FqPoly> {
    let (v, k0, coeffs) = match lambda_data(poly, phi, slope, p)? {
        Some(t) => t,
        None => return FqPoly::from_base(ctx, vec![ctx.zero()]),
    };
    let mut out = Vec::new();
    let mut k = k0;
    while k < coeffs.len() {
        let a = &coeffs[k];
        let c = match a.min_valuation(p)? {
            Valuation::Finite(u) if slope.e * u + k as u64 * slope.h == v => {
                residual_coefficient(ctx, a, u, p)?
            }
            _ => ctx.zero(),
        };
        out.push(c);
        k += slope.e as usize;
    }
    FqPoly::from_base(ctx, out)
}

/// A second-order residual: one side of the second-order polygon, its
/// residual polynomial over the composite residue field, and that
/// polynomial's factorization.
#[derive(Debug, Clone)]
pub struct SecondOrderResidual {
    pub side: Side,
    pub poly: FqPoly,
    pub factors: Vec<(FqPoly, u32)>,
}

/// A one-level second-order type: the first-order data (phi, slope, psi1),
/// the constructed phi_2 with its augmented valuation, and the second-order
/// polygon with residual data.
#[derive(Debug, Clone)]
pub struct OrderTwoType {
    pub phi: IntPoly,
    pub slope: Slope,
    pub psi1: FqPoly,
    pub multiplicity: u32,
    pub phi2: IntPoly,
    pub phi2_valuation: u64,
    pub polygon: NewtonPolygon,
    pub residuals: Vec<SecondOrderResidual>,
}

/// Lifts a residue-field element (not a polynomial: no monic leading
/// coefficient to preserve) with all ties at `p/2` broken downward.
fn lift_element(c: &FpPoly) -> IntPoly {
    let p = c.modulus();
    IntPoly::new(
        c.coeffs()
            .iter()
            .map(|&x| {
                if 2 * x >= p {
                    BigInt::from(x) - BigInt::from(p)
                } else {
                    BigInt::from(x)
                }
            })
            .collect(),
    )
}

/// Flattens a polynomial over a degree-one extension to a base-field
/// polynomial (each coefficient is a constant).
fn flatten(q: &FqPoly, p: u64) -> Result<FpPoly> {
    let coeffs: Vec<BigInt> = q
        .coeffs()
        .iter()
        .map(|c| BigInt::from(c.coeff(0)))
        .collect();
    FpPoly::from_bigints(p, &coeffs)
}

/// Constructs the order-two type for a repeated residual factor psi1 of
/// multiplicity at least two on a side of slope -h/e: builds
/// `phi_2 = sum_j lift(c_j) p^(h(f1-j)) phi^(ej)` from psi1's coefficients,
/// verifies that its polygon is one-sided with the given slope and residual
/// psi1, then computes the second-order polygon of f under the augmented
/// valuation and the residual polynomials over the composite residue field.
/// The residue tower must collapse: deg(psi1) = 1 or deg(phi) = 1.
pub fn build_order_two(
    f: &IntPoly,
    p: u64,
    phi: &IntPoly,
    side: &Side,
    psi1: &FqPoly,
    multiplicity: u32,
) -> Result<OrderTwoType> {
    if multiplicity < 2 {
        return Err(Error::InvalidArgument(
            "order two applies to repeated residual factors only".into(),
        ));
    }
    if !psi1.is_monic() {
        return Err(Error::NotMonic);
    }
    let e = side.slope.e;
    let h = side.slope.h;
    let f1 = psi1.degree().ok_or(Error::ZeroPolynomial)? as u64;
    if e == 1 && f1 == 1 {
        return Err(Error::InvalidArgument(
            "an integer slope with a repeated root refines instead".into(),
        ));
    }
    let phibar = phi.reduce(p)?;
    let deg_phibar = phibar.degree().ok_or(Error::ZeroPolynomial)? as u64;
    if deg_phibar > 1 && f1 > 1 {
        return Err(Error::UnsupportedShape(
            "second-order residue field tower does not collapse".into(),
        ));
    }
    if psi1.coeff(0).is_zero() {
        return Err(Error::InvalidArgument(
            "residual factor with zero constant term".into(),
        ));
    }

    // phi_2 from psi1's coefficient lifts
    let pbig = BigInt::from(p);
    let phi_e = {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(phi);
        }
        acc
    };
    let mut phi2 = IntPoly::zero();
    let mut phi_pow = IntPoly::one();
    for j in 0..=f1 {
        let c = psi1.coeff(j as usize);
        if !c.is_zero() {
            // psi1 is monic, so the top coefficient lifts to one
            let chat = if j == f1 { IntPoly::one() } else { lift_element(&c) };
            let scale = pbig.pow((h * (f1 - j)) as u32);
            phi2 = phi2.add(&chat.mul_scalar(&scale).mul(&phi_pow));
        }
        if j < f1 {
            phi_pow = phi_pow.mul(&phi_e);
        }
    }

    // invariant: the polygon of phi_2 at phi is one-sided of slope -h/e
    // with residual psi1 (up to normalization)
    let check = phi_newton_polygon(&phi2, phi, p)?;
    let one_sided = check.sides().len() == 1
        && check.sides()[0].slope == side.slope
        && check.sides()[0].length() == e * f1
        && check.sides()[0].start.i == 0;
    if !one_sided {
        return Err(Error::UnsupportedShape(
            "constructed phi_2 polygon is not one-sided of the given slope".into(),
        ));
    }
    let dev2 = phi_expansion(&phi2, phi, p)?;
    let r2 = residual_polynomial(phi, &dev2.coefficients, p, &check.sides()[0])?;
    let (_, r2monic) = r2.poly.make_monic()?;
    if r2monic != *psi1 {
        return Err(Error::UnsupportedShape(
            "constructed phi_2 has the wrong residual polynomial".into(),
        ));
    }

    let phi2_valuation = match augmented_valuation(&phi2, phi, side.slope, p)? {
        Valuation::Finite(v) => v,
        Valuation::Infinity => unreachable!("phi_2 is nonzero"),
    };

    // second-order residue field
    let ctx1 = Fq::new(phibar.clone())?;
    let ctx2 = if f1 == 1 {
        ctx1.clone()
    } else {
        Fq::new(flatten(psi1, p)?)?
    };
    let z1 = if f1 == 1 {
        Some(ctx1.neg(&psi1.coeff(0)))
    } else {
        None
    };
    let res2 = |a: &IntPoly| -> Result<FpPoly> {
        let r = lambda_residual(a, phi, side.slope, p, &ctx1)?;
        match &z1 {
            Some(z) => r.eval(z),
            None => ctx2.reduce(&flatten(&r, p)?),
        }
    };

    // second-order polygon of f under mu_i = v2(A_i) + i * v2(phi_2)
    let dev = phi_expansion(f, &phi2, p)?;
    let mut mu: Vec<Option<u64>> = Vec::with_capacity(dev.coefficients.len());
    let mut points = Vec::new();
    for (i, a) in dev.coefficients.iter().enumerate() {
        match augmented_valuation(a, phi, side.slope, p)? {
            Valuation::Finite(v) => {
                let m = v + i as u64 * phi2_valuation;
                mu.push(Some(m));
                points.push(crate::newton::LatticePoint::new(i as u64, m));
            }
            Valuation::Infinity => mu.push(None),
        }
    }
    let polygon = principal_polygon(&points);

    let mut residuals = Vec::new();
    for s in polygon.sides() {
        let d = s.degree();
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        for j in 0..=d {
            let i = (s.start.i + j * s.slope.e) as usize;
            let on_line = mu[i] == Some(s.start.u - j * s.slope.h);
            if on_line {
                coeffs.push(res2(&dev.coefficients[i])?);
            } else {
                coeffs.push(ctx2.zero());
            }
        }
        let poly = FqPoly::from_base(&ctx2, coeffs)?;
        let factors = if poly.is_zero() { Vec::new() } else { poly.factor()? };
        residuals.push(SecondOrderResidual { side: *s, poly, factors });
    }

    Ok(OrderTwoType {
        phi: phi.clone(),
        slope: side.slope,
        psi1: psi1.clone(),
        multiplicity,
        phi2,
        phi2_valuation,
        polygon,
        residuals,
    })
}

/// Reads the factorization contribution off a computed order-two type.
/// Every multiplicity-one second-order residual factor yields one prime
/// with ramification `e1 * e2` and residue degree
/// `deg(phibar) * deg(psi1) * deg(psi2)`; repeated factors or degenerate
/// polygons leave the shape incomplete with a diagnostic.
pub fn second_order_analysis(t: &OrderTwoType) -> (FactorShape, Vec<PrimeWitness>) {
    let mut primes = Vec::new();
    let mut witnesses = Vec::new();
    let mut diagnostics = Vec::new();
    let mut complete = true;
    let expected = t.multiplicity as u64;
    let span = t.polygon.length();
    let starts_at_zero = t
        .polygon
        .sides()
        .first()
        .map(|s| s.start.i == 0)
        .unwrap_or(false);
    if span != expected || !starts_at_zero {
        diagnostics.push(format!(
            "second-order polygon spans {span} of the expected {expected}"
        ));
        complete = false;
    }
    let residue_degree = t
        .residuals
        .first()
        .map(|r| r.poly.context().ext_degree() as u64)
        .unwrap_or(1);
    for r in &t.residuals {
        if r.poly.coeff(0).is_zero() || r.poly.is_zero() {
            diagnostics.push(format!(
                "second-order residual vanishes at a vertex of side {}",
                r.side
            ));
            complete = false;
            continue;
        }
        for (psi2, m2) in &r.factors {
            if *m2 != 1 {
                diagnostics.push(format!(
                    "second-order residual factor ({})^{m2} is repeated; deeper \
                     analysis is out of scope",
                    psi2.render("y")
                ));
                complete = false;
                continue;
            }
            let deg2 = psi2.degree().unwrap_or(0) as u64;
            let e = t.slope.e * r.side.slope.e;
            let f = residue_degree * deg2;
            primes.push((e, f));
            witnesses.push(PrimeWitness {
                e,
                f,
                order: 2,
                phi: t.phi2.clone(),
                slope: r.side.slope,
                residual_factor: psi2.render("y"),
            });
        }
    }
    (FactorShape::new(primes, complete, diagnostics), witnesses)
}

/// Records which lift, slope, and residual factor produced a prime.
#[derive(Debug, Clone)]
pub struct PrimeWitness {
    pub e: u64,
    pub f: u64,
    pub order: u8,
    pub phi: IntPoly,
    pub slope: Slope,
    pub residual_factor: String,
}

/// Full per-prime analysis: the first-order data plus the final shape after
/// refinement and order-two resolution, with per-prime provenance.
#[derive(Debug, Clone)]
pub struct ShapeAnalysis {
    pub ore: OreAnalysis,
    pub shape: FactorShape,
    pub witnesses: Vec<PrimeWitness>,
}

#[allow(clippy::too_many_arguments)]
fn resolve_branch(
    f: &IntPoly,
    p: u64,
    phi: &IntPoly,
    side: &Side,
    psi: &FqPoly,
    mult: u32,
    budget: u64,
    primes: &mut Vec<(u64, u64)>,
    witnesses: &mut Vec<PrimeWitness>,
    diagnostics: &mut Vec<String>,
) -> Result<bool> {
    let deg_phibar = phi.degree().ok_or(Error::ZeroPolynomial)? as u64;
    if side.slope.e == 1 && psi.degree() == Some(1) {
        if budget == 0 {
            diagnostics.push(format!("refinement budget exhausted at lift {phi}"));
            return Ok(false);
        }
        let ctx = psi.context();
        let z = ctx.neg(&psi.coeff(0));
        let refined = refine_lift(f, p, phi, side, &z)?;
        let polygon = phi_newton_polygon(f, &refined, p)?;
        let dev = phi_expansion(f, &refined, p)?;
        // only sides strictly steeper than the refined slope belong to this
        // branch; shallower sides re-describe branches already analyzed
        let restricted: Vec<Side> = polygon
            .sides()
            .iter()
            .filter(|s| s.slope.h * side.slope.e > side.slope.h * s.slope.e)
            .cloned()
            .collect();
        let total: u64 = restricted.iter().map(|s| s.length()).sum();
        if total != mult as u64 {
            diagnostics.push(format!(
                "refined polygon at {refined} covers {total} of the expected {mult}"
            ));
            return Ok(false);
        }
        let mut complete = true;
        for s in &restricted {
            let residual = residual_polynomial(&refined, &dev.coefficients, p, s)?;
            for (psi2, m2) in residual.poly.factor()? {
                if m2 == 1 {
                    let deg2 = psi2.degree().ok_or(Error::ZeroPolynomial)? as u64;
                    primes.push((s.slope.e, deg_phibar * deg2));
                    witnesses.push(PrimeWitness {
                        e: s.slope.e,
                        f: deg_phibar * deg2,
                        order: 1,
                        phi: refined.clone(),
                        slope: s.slope,
                        residual_factor: psi2.render("y"),
                    });
                } else {
                    complete &= resolve_branch(
                        f, p, &refined, s, &psi2, m2, budget - 1, primes, witnesses,
                        diagnostics,
                    )?;
                }
            }
        }
        Ok(complete)
    } else {
        match build_order_two(f, p, phi, side, psi, mult) {
            Ok(t) => {
                let (shape, wits) = second_order_analysis(&t);
                primes.extend_from_slice(&shape.primes);
                witnesses.extend(wits);
                diagnostics.extend(shape.diagnostics);
                Ok(shape.complete)
            }
            Err(err) => {
                diagnostics.push(format!("order-two construction failed: {err}"));
                Ok(false)
            }
        }
    }
}

/// Runs the first-order analysis and resolves every repeated residual
/// factor by refinement (integer slopes with degree-one repeated roots,
/// capped at `2 * (1 + vp(disc))` passes) or one level of second-order
/// polygons. The shape is complete when every factor is accounted for.
pub fn analyze_prime(f: &IntPoly, p: u64) -> Result<ShapeAnalysis> {
    let ore = ore_analysis(f, p)?;
    let budget = 2 * (1 + ore.disc_valuation);
    let mut primes = Vec::new();
    let mut witnesses = Vec::new();
    let mut diagnostics = Vec::new();
    let mut complete = true;
    for detail in &ore.details {
        let deg_gbar = detail.factor.degree().ok_or(Error::ZeroPolynomial)? as u64;
        if detail.exact_divisor {
            primes.push((1, deg_gbar));
            witnesses.push(PrimeWitness {
                e: 1,
                f: deg_gbar,
                order: 1,
                phi: detail.lift.clone(),
                slope: Slope { h: 0, e: 1 },
                residual_factor: "exact lift".into(),
            });
            continue;
        }
        for sa in &detail.sides {
            for (psi, m) in &sa.factors {
                if *m == 1 {
                    let deg_psi = psi.degree().ok_or(Error::ZeroPolynomial)? as u64;
                    primes.push((sa.side.slope.e, deg_gbar * deg_psi));
                    witnesses.push(PrimeWitness {
                        e: sa.side.slope.e,
                        f: deg_gbar * deg_psi,
                        order: 1,
                        phi: detail.lift.clone(),
                        slope: sa.side.slope,
                        residual_factor: psi.render("y"),
                    });
                } else {
                    complete &= resolve_branch(
                        f,
                        p,
                        &detail.lift,
                        &sa.side,
                        psi,
                        *m,
                        budget,
                        &mut primes,
                        &mut witnesses,
                        &mut diagnostics,
                    )?;
                }
            }
        }
    }
    let shape = FactorShape::new(primes, complete, diagnostics);
    Ok(ShapeAnalysis { ore, shape, witnesses })
}

/// The factorization shape of p in the order defined by `f`, complete when
/// every factor above p is certified.
pub fn factor_shape(f: &IntPoly, p: u64) -> Result<FactorShape> {
    Ok(analyze_prime(f, p)?.shape)
}
