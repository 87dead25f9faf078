//! Verdict layer: candidate primes, common-index-divisor witnesses, a
//! monogenity certificate for prime-power trinomials, and congruence-family
//! certifiers, all cross-checked against the polygon engine.
//!
//! The central obstruction used here: if the number of primes above `p`
//! with residue degree `m` exceeds the number of monic irreducible
//! polynomials of degree `m` over `F_p`, then `p` divides the index of
//! every generator of the field, so no power integral basis exists.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::fqpoly::FpPoly;
use crate::intarith::{
    count_irreducibles, is_prime, vp, ExactRational, Valuation,
};
use crate::ore::{analyze_prime, FactorShape, ShapeAnalysis};
use crate::zpoly::{
    dedekind_p_maximal, discriminant_resultant, irreducibility_certificate,
    trinomial_discriminant, IntPoly, IrreducibilityCertificate, Trinomial,
};
use crate::{Error, Result};

/// Trial-division bound used when factoring discriminants and the
/// side-condition quantity of the generator certificate. Primes beyond the
/// bound are reported as an unfactored cofactor, never silently ignored.
const FACTOR_BOUND: u64 = 1_000_000;

// ---------------------------------------------------------------------------
// residue census and common-index-divisor test
// ---------------------------------------------------------------------------

/// Counts of primes above `p` grouped by residue degree, extracted from a
/// factorization shape. `count(m)` is the number of primes with residue
/// degree exactly `m`; when the underlying shape is complete the counts
/// describe all primes above `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCensus {
    by_degree: BTreeMap<u64, u64>,
    complete: bool,
}

impl ResidueCensus {
    pub fn from_shape(shape: &FactorShape) -> ResidueCensus {
        let mut by_degree = BTreeMap::new();
        for &(_, f) in &shape.primes {
            *by_degree.entry(f).or_insert(0) += 1;
        }
        ResidueCensus { by_degree, complete: shape.complete }
    }

    /// Number of primes with residue degree `m`.
    pub fn count(&self, m: u64) -> u64 {
        self.by_degree.get(&m).copied().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `(residue degree, count)` pairs in increasing degree order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.by_degree.iter().map(|(&m, &c)| (m, c))
    }
}

impl fmt::Display for ResidueCensus {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.by_degree.is_empty() {
            write!(out, "empty")?;
        }
        for (k, (m, c)) in self.by_degree.iter().enumerate() {
            if k > 0 {
                write!(out, ", ")?;
            }
            write!(out, "P_{m}={c}")?;
        }
        if !self.complete {
            write!(out, " (incomplete)")?;
        }
        Ok(())
    }
}

/// A proof that `p` divides the index of every generator: the number of
/// primes above `p` with residue degree `m` exceeds the number of monic
/// irreducible polynomials of degree `m` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexDivisorWitness {
    pub p: u64,
    /// The residue degree `m` at which the pigeonhole argument fires.
    pub residue_degree: u64,
    /// Number of primes above `p` with that residue degree.
    pub primes_above: u64,
    /// Number of monic irreducible polynomials of that degree over `F_p`.
    pub available: BigInt,
}

impl fmt::Display for IndexDivisorWitness {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "p={}: P_{}={} > N_{}({})={}",
            self.p, self.residue_degree, self.primes_above, self.p, self.residue_degree,
            self.available
        )
    }
}

/// Outcome of the common-index-divisor test at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorOutcome {
    /// The census proves `p` divides the field index.
    Witness(IndexDivisorWitness),
    /// Complete census, no residue degree is over-populated. The test is a
    /// sufficient criterion, so this means "no witness", not a proof that
    /// `p` does not divide the field index.
    NoWitness,
    /// The factorization shape could not be completed; no conclusion.
    Incomplete,
}

impl fmt::Display for DivisorOutcome {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorOutcome::Witness(w) => write!(out, "witness {w}"),
            DivisorOutcome::NoWitness => write!(out, "no witness"),
            DivisorOutcome::Incomplete => write!(out, "incomplete shape"),
        }
    }
}

/// Everything computed at one prime: the engine analysis, the census it
/// induces, and the divisor-test outcome.
#[derive(Debug, Clone)]
pub struct PrimeReport {
    pub p: u64,
    pub analysis: ShapeAnalysis,
    pub census: ResidueCensus,
    pub outcome: DivisorOutcome,
}

/// Runs the factorization engine at `p` and searches the resulting census
/// for the smallest residue degree `m` with more primes above `p` than
/// there are monic irreducible polynomials of degree `m` over `F_p`.
pub fn common_index_divisor_test(f: &IntPoly, p: u64) -> Result<PrimeReport> {
    let analysis = analyze_prime(f, p)?;
    let census = ResidueCensus::from_shape(&analysis.shape);
    let outcome = if !census.is_complete() {
        DivisorOutcome::Incomplete
    } else {
        let degree = f.degree().ok_or(Error::ZeroPolynomial)? as u64;
        let mut found = DivisorOutcome::NoWitness;
        for m in 1..=degree {
            let primes_above = census.count(m);
            if primes_above == 0 {
                continue;
            }
            let available = count_irreducibles(p, m as u32)?;
            if BigInt::from(primes_above) > available {
                found = DivisorOutcome::Witness(IndexDivisorWitness {
                    p,
                    residue_degree: m,
                    primes_above,
                    available,
                });
                break;
            }
        }
        found
    };
    Ok(PrimeReport { p, analysis, census, outcome })
}

/// Primes that could divide the field index: `p < n` (no larger prime can
/// divide the index of a degree-`n` field) with `p^2` dividing the
/// discriminant (a first-power prime cannot divide any generator index).
pub fn candidate_primes(t: &Trinomial) -> Result<Vec<u64>> {
    let disc = trinomial_discriminant(t);
    if disc.is_zero() {
        return Err(Error::InvalidTrinomial(
            "zero discriminant: the polynomial has repeated roots".into(),
        ));
    }
    let mut out = Vec::new();
    for p in crate::intarith::primes_below(t.n() as u64) {
        let sq = BigInt::from(p) * BigInt::from(p);
        if disc.mod_floor(&sq).is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// counting irreducible factors of x^s + t over F_p
// ---------------------------------------------------------------------------

/// Distinct irreducible factors of `x^s + t` over `F_p`, counted per
/// degree.
pub fn factor_degree_counts(p: u64, s: u32, t: &BigInt) -> Result<BTreeMap<u64, u64>> {
    if s == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut coeffs = vec![BigInt::zero(); s as usize + 1];
    coeffs[0] = t.clone();
    coeffs[s as usize] = BigInt::one();
    let poly = FpPoly::from_bigints(p, &coeffs)?;
    let mut counts = BTreeMap::new();
    for (g, _) in poly.factor()? {
        if let Some(d) = g.degree() {
            if d > 0 {
                *counts.entry(d as u64).or_insert(0) += 1;
            }
        }
    }
    Ok(counts)
}

/// Number of distinct irreducible factors of degree `m` of `x^s + t` over
/// `F_p`.
pub fn irreducible_factor_count(p: u64, s: u32, t: &BigInt, m: u32) -> Result<u64> {
    Ok(factor_degree_counts(p, s, t)?
        .get(&(m as u64))
        .copied()
        .unwrap_or(0))
}

// ---------------------------------------------------------------------------
// maximality scan
// ---------------------------------------------------------------------------

/// Result of testing maximality of the equation order at every prime whose
/// square divides the discriminant, as far as the discriminant could be
/// factored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalityScan {
    /// `(q, maximal at q)` for every prime `q` found with `q^2 | disc`.
    pub tested: Vec<(u64, bool)>,
    /// Whether the discriminant factorization is complete; when false the
    /// cofactor below may still hide squared primes.
    pub complete: bool,
    /// Unfactored part of the discriminant (`1` when complete).
    pub cofactor: BigInt,
    /// Whether every tested prime passed.
    pub all_maximal: bool,
}

/// Factors `disc` by trial division below [`FACTOR_BOUND`] and runs the
/// maximality criterion for `f` at every prime appearing at least twice.
/// A leftover cofactor that is a perfect power of a testable prime is
/// resolved; anything else is reported as incomplete.
pub fn maximality_scan(f: &IntPoly, disc: &BigInt) -> Result<MaximalityScan> {
    if disc.is_zero() {
        return Err(Error::InvalidArgument(
            "zero discriminant: not squarefree".into(),
        ));
    }
    let (factors, mut rest) = crate::intarith::trial_factor(disc, FACTOR_BOUND);
    let mut squared: Vec<u64> =
        factors.iter().filter(|&&(_, m)| m >= 2).map(|&(q, _)| q).collect();
    let mut complete = rest.is_one();
    if !complete {
        // try to recognise the cofactor as q^k for a prime q
        let bits = rest.bits();
        for k in (2..=bits.max(2)).rev() {
            let root = rest.nth_root(k as u32);
            if root.pow(k as u32) == rest {
                if let Ok(q) = u64::try_from(&root) {
                    if is_prime(q) {
                        squared.push(q);
                        rest = BigInt::one();
                        complete = true;
                    }
                }
                break;
            }
        }
    }
    squared.sort_unstable();
    squared.dedup();
    let mut tested = Vec::new();
    let mut all_maximal = true;
    for q in squared {
        let ok = dedekind_p_maximal(f, q)?;
        all_maximal &= ok;
        tested.push((q, ok));
    }
    Ok(MaximalityScan { tested, complete, cofactor: rest, all_maximal })
}

// ---------------------------------------------------------------------------
// generator certificate for x^(p^r) + p^v a x + p^u b
// ---------------------------------------------------------------------------

/// Parameters of the monogenic prime-power family
/// `F = x^(p^r) + p^v a x + p^u b` with `p` prime, `p` dividing neither
/// `a` nor `b`, `v >= u >= 2` and `gcd(u, p) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoParams {
    pub p: u64,
    pub r: u32,
    /// Exponent of `p` in the linear coefficient.
    pub v: u64,
    /// Exponent of `p` in the constant coefficient.
    pub u: u64,
    /// Unit part of the linear coefficient.
    pub a: BigInt,
    /// Unit part of the constant coefficient.
    pub b: BigInt,
}

impl MonoParams {
    pub fn new(p: u64, r: u32, v: u64, u: u64, a: BigInt, b: BigInt) -> Result<MonoParams> {
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        if r == 0 {
            return Err(Error::InvalidArgument("exponent r must be positive".into()));
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if vp(&a, p)? != Valuation::Finite(0) || vp(&b, p)? != Valuation::Finite(0) {
            return Err(Error::InvalidArgument(format!("{p} must not divide the unit parts")));
        }
        if !(v >= u && u >= 2) {
            return Err(Error::InvalidArgument(format!(
                "exponents must satisfy v >= u >= 2, got v={v}, u={u}"
            )));
        }
        if u.is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!("u={u} must be coprime to p={p}")));
        }
        Ok(MonoParams { p, r, v, u, a, b })
    }

    /// Matches a trinomial against the family pattern: the degree must be a
    /// prime power `p^r` and the valuation profile of the coefficients must
    /// satisfy the constraints above.
    pub fn from_trinomial(t: &Trinomial) -> Result<MonoParams> {
        let (p, r) = prime_power(t.n() as u64).ok_or_else(|| {
            Error::UnsupportedShape(format!("degree {} is not a prime power", t.n()))
        })?;
        let v = match vp(t.a(), p)? {
            Valuation::Finite(v) => v,
            Valuation::Infinity => {
                return Err(Error::UnsupportedShape("linear coefficient is zero".into()))
            }
        };
        let u = vp(t.b(), p)?.finite().expect("nonzero constant term");
        let a = t.a() / BigInt::from(p).pow(exp32(v)?);
        let b = t.b() / BigInt::from(p).pow(exp32(u)?);
        MonoParams::new(p, r, v, u, a, b)
    }

    /// The trinomial `x^(p^r) + p^v a x + p^u b`.
    pub fn trinomial(&self) -> Result<Trinomial> {
        let n = u32::try_from(self.p.pow(self.r)).map_err(|_| {
            Error::InvalidArgument("degree p^r exceeds the supported range".into())
        })?;
        let pa = BigInt::from(self.p).pow(exp32(self.v)?) * &self.a;
        let pb = BigInt::from(self.p).pow(exp32(self.u)?) * &self.b;
        Trinomial::new(n, pa, pb)
    }

    /// The unique `(x, y)` with `x*u - y*p^r = 1` and `0 <= y < u`; the
    /// generator is `theta^x / p^y`.
    pub fn generator_exponents(&self) -> (u64, u64) {
        let m = (self.p as i128).pow(self.r);
        let (mut r0, mut r1) = (m, (self.u % m as u64) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "u is invertible modulo p^r");
        let x = t0.rem_euclid(m) as u64;
        let y = ((x as u128 * self.u as u128) - 1) / m as u128;
        debug_assert!((y as u64) < self.u);
        (x, y as u64)
    }
}

fn exp32(e: u64) -> Result<u32> {
    u32::try_from(e).map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))
}

/// `(p, r)` with `n = p^r`, `p` prime and `r >= 1`, when `n` is a prime
/// power.
fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    let mut m = n;
    let mut r = 0;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

/// How far the side condition of the generator certificate was verified:
/// the quantity `(1-p^r)^(p^r-1) (p^v a)^(p^r) + (p^r)^(p^r) (p^v b)^(p^r-1)`
/// must not be divisible by `q^2` for any prime `q != p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideCondition {
    /// The quantity factored completely; no disallowed square divides it.
    Verified,
    /// All primes below the bound are clean; the remaining cofactor could
    /// not be factored and is reported untested.
    VerifiedUpTo { bound: u64, cofactor: BigInt },
}

/// A verified power-integral-basis certificate: `eta = theta^x / p^y`
/// generates the maximal order, witnessed by an Eisenstein minimal
/// polynomial and a maximality scan of its discriminant.
#[derive(Debug, Clone)]
pub struct MonoCertificate {
    pub params: MonoParams,
    pub x: u64,
    pub y: u64,
    /// Minimal polynomial of `eta`, monic of degree `p^r` and p-Eisenstein.
    pub minimal_polynomial: IntPoly,
    pub side_condition: SideCondition,
    /// Valuation of the trinomial discriminant at `p`.
    pub disc_valuation_f: u64,
    /// Valuation of the minimal-polynomial discriminant at `p`; strictly
    /// smaller than `disc_valuation_f` whenever `y > 0`.
    pub disc_valuation_eta: u64,
    /// Maximality of the order generated by `eta` at every squared prime
    /// of its discriminant.
    pub maximality: MaximalityScan,
}

impl MonoCertificate {
    /// Human-readable generator, e.g. `theta^3/4`.
    pub fn generator(&self) -> String {
        if self.y == 0 {
            format!("theta^{}", self.x)
        } else {
            let denom = BigInt::from(self.params.p).pow(exp32(self.y).expect("small exponent"));
            format!("theta^{}/{}", self.x, denom)
        }
    }
}

/// The side-condition quantity; any prime `q != p` with `q^2` dividing it
/// breaks the certificate.
fn side_condition_quantity(params: &MonoParams) -> Result<BigInt> {
    let p = BigInt::from(params.p);
    let pr = p.pow(params.r);
    let n = exp32(u64::try_from(&pr).map_err(|_| {
        Error::InvalidArgument("degree p^r exceeds the supported range".into())
    })?)?;
    let pva = p.pow(exp32(params.v)?) * &params.a;
    let pub_ = p.pow(exp32(params.u)?) * &params.b;
    let term1 = (BigInt::one() - &pr).pow(n - 1) * pva.pow(n);
    let term2 = pr.pow(n) * pub_.pow(n - 1);
    Ok(term1 + term2)
}

fn check_side_condition(params: &MonoParams) -> Result<SideCondition> {
    let q = side_condition_quantity(params)?;
    if q.is_zero() {
        return Err(Error::InvalidArgument("side-condition quantity vanishes".into()));
    }
    let (factors, rest) = crate::intarith::trial_factor(&q, FACTOR_BOUND);
    for &(prime, mult) in &factors {
        if prime != params.p && mult >= 2 {
            return Err(Error::InvalidArgument(format!(
                "side condition fails: {prime}^{mult} divides the invariant quantity"
            )));
        }
    }
    if rest.is_one() {
        return Ok(SideCondition::Verified);
    }
    // a square cofactor is certainly divisible by some q^2 with q != p
    let root = rest.sqrt();
    if &root * &root == rest {
        return Err(Error::InvalidArgument(
            "side condition fails: the unfactored cofactor is a perfect square".into(),
        ));
    }
    Ok(SideCondition::VerifiedUpTo { bound: FACTOR_BOUND, cofactor: rest })
}

/// Minimal polynomial of `eta = theta^x / p^y` over the rationals, where
/// `theta` is a root of `f`: interpolates
/// `z -> Res_t(f(t), t^x - p^y z) / (-p^y)^deg(f)` at integer nodes. Fails
/// if the result is not monic of full degree with integer coefficients.
fn eta_minimal_polynomial(f: &IntPoly, p: u64, x: u64, y: u64) -> Result<IntPoly> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if x == 0 || x as usize >= n {
        return Err(Error::InvalidArgument(format!("exponent x={x} out of range")));
    }
    let scale = BigInt::from(p).pow(exp32(y)?);
    let denom = scale.pow(n as u32);
    let mut values: Vec<ExactRational> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut coeffs = vec![BigInt::zero(); x as usize + 1];
        coeffs[0] = -&scale * BigInt::from(j as u64);
        coeffs[x as usize] += BigInt::one();
        let res = f.resultant(&IntPoly::new(coeffs));
        let signed = if n % 2 == 1 { -res } else { res };
        values.push(ExactRational::new(signed, denom.clone()));
    }
    // Newton divided differences on the nodes 0, 1, ..., n
    let mut table = values;
    for k in 1..=n {
        for j in (k..=n).rev() {
            let step = ExactRational::from(BigInt::from(k as u64));
            table[j] = (&table[j] - &table[j - 1]) / step;
        }
    }
    let mut acc: Vec<ExactRational> = vec![ExactRational::zero(); n + 1];
    let mut basis: Vec<ExactRational> = vec![ExactRational::one()];
    for (j, coeff) in table.iter().enumerate() {
        for (i, c) in basis.iter().enumerate() {
            acc[i] += coeff * c;
        }
        if j < n {
            let mut next = vec![ExactRational::zero(); basis.len() + 1];
            let node = ExactRational::from(BigInt::from(j as u64));
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &node;
            }
            basis = next;
        }
    }
    let mut ints = Vec::with_capacity(acc.len());
    for c in &acc {
        if !c.denom().is_one() {
            return Err(Error::InvalidArgument(format!(
                "theta^{x}/{p}^{y} is not an algebraic integer"
            )));
        }
        ints.push(c.numer().clone());
    }
    let g = IntPoly::new(ints);
    if g.degree() != Some(n) || !g.is_monic() {
        return Err(Error::InvalidArgument(
            "minimal-polynomial interpolation lost the leading term".into(),
        ));
    }
    Ok(g)
}

/// Whether `g` is p-Eisenstein: monic, every lower coefficient divisible
/// by `p`, constant term divisible exactly once.
fn is_eisenstein(g: &IntPoly, p: u64) -> Result<bool> {
    let n = match g.degree() {
        Some(n) if n >= 1 && g.is_monic() => n,
        _ => return Ok(false),
    };
    for i in 0..n {
        match vp(&g.coeff(i), p)? {
            Valuation::Finite(0) => return Ok(false),
            Valuation::Finite(v) if i == 0 && v != 1 => return Ok(false),
            Valuation::Infinity if i == 0 => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Certifies that `eta = theta^x / p^y` generates a power integral basis
/// for the field defined by `x^(p^r) + p^v a x + p^u b`: solves for the
/// exponents, checks the side condition, computes the minimal polynomial
/// of `eta` by resultant elimination, verifies it is p-Eisenstein, and
/// confirms maximality of `Z[eta]` at every squared prime of its
/// discriminant that could be found.
pub fn certify_mono(params: &MonoParams) -> Result<MonoCertificate> {
    let side_condition = check_side_condition(params)?;
    let (x, y) = params.generator_exponents();
    let t = params.trinomial()?;
    let f = t.to_poly();
    let g = eta_minimal_polynomial(&f, params.p, x, y)?;
    if !is_eisenstein(&g, params.p)? {
        return Err(Error::InvalidArgument(format!(
            "minimal polynomial of theta^{x}/{p}^{y} is not {p}-Eisenstein",
            p = params.p
        )));
    }
    let disc_f = trinomial_discriminant(&t);
    let disc_g = discriminant_resultant(&g)?;
    if disc_g.is_zero() {
        return Err(Error::InvalidArgument("generator minimal polynomial not separable".into()));
    }
    let disc_valuation_f = vp(&disc_f, params.p)?.finite().ok_or_else(|| {
        Error::InvalidTrinomial("zero discriminant: repeated roots".into())
    })?;
    let disc_valuation_eta =
        vp(&disc_g, params.p)?.finite().expect("nonzero discriminant");
    if y > 0 && disc_valuation_eta >= disc_valuation_f {
        return Err(Error::InvalidArgument(
            "denominator did not reduce the discriminant valuation".into(),
        ));
    }
    let maximality = maximality_scan(&g, &disc_g)?;
    if !maximality.all_maximal {
        let q = maximality.tested.iter().find(|&&(_, ok)| !ok).map(|&(q, _)| q);
        return Err(Error::InvalidArgument(format!(
            "order generated by theta^{x}/{p}^{y} is not maximal at {q:?}",
            p = params.p
        )));
    }
    Ok(MonoCertificate {
        params: params.clone(),
        x,
        y,
        minimal_polynomial: g,
        side_condition,
        disc_valuation_f,
        disc_valuation_eta,
        maximality,
    })
}

// ---------------------------------------------------------------------------
// congruence-family tables
// ---------------------------------------------------------------------------

/// The built-in condition tables. Each table applies to a degree pattern
/// and lists congruence/valuation clauses implying that some prime divides
/// the field index. Identifiers (see [`FamilyTable::id`]) are the tokens
/// accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTable {
    /// Degree `p^r` for an odd prime `p`: deep congruences on `a` and
    /// `b^(p-1)` modulo `p^(p+1)` with `r >= p`.
    OddPrimePowerDegree,
    /// Degree `3^r`, `r >= 3`: the specialisation of the previous table to
    /// `p = 3` (conditions modulo 81).
    PowerOfThreeDegree,
    /// An odd prime `p` divides both the degree and the linear
    /// coefficient; clauses compare valuation depths against counts of
    /// irreducible factors of `x^s + b`.
    DegreeDivisible,
    /// An odd prime `p` divides both `degree - 1` and the constant
    /// coefficient; mirror of the previous table via `x^u + a`.
    ShiftedDegreeDivisible,
    /// Degree `2^k * 3^r`: residue-pair table modulo powers of 3.
    MixedDegree,
    /// Degree `2^s * 3^k + 1`: residue-pair table modulo powers of 3.
    ShiftedMixedDegree,
    /// Degree 5: residue-pair table modulo powers of 2.
    QuinticDegree,
    /// Degree 6: three clauses at 2 (one with a valuation identity) and
    /// one at 3.
    SexticDegree,
}

impl FamilyTable {
    /// Stable command-line identifier of the table.
    pub fn id(self) -> &'static str {
        match self {
            FamilyTable::OddPrimePowerDegree => "dp^r",
            FamilyTable::PowerOfThreeDegree => "3^r",
            FamilyTable::DegreeDivisible => "dn1",
            FamilyTable::ShiftedDegreeDivisible => "dn2",
            FamilyTable::MixedDegree => "corn11",
            FamilyTable::ShiftedMixedDegree => "corn12",
            FamilyTable::QuinticDegree => "d51",
            FamilyTable::SexticDegree => "d61",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyTable> {
        FamilyTable::all().into_iter().find(|t| t.id() == s)
    }

    pub fn all() -> [FamilyTable; 8] {
        [
            FamilyTable::OddPrimePowerDegree,
            FamilyTable::PowerOfThreeDegree,
            FamilyTable::DegreeDivisible,
            FamilyTable::ShiftedDegreeDivisible,
            FamilyTable::MixedDegree,
            FamilyTable::ShiftedMixedDegree,
            FamilyTable::QuinticDegree,
            FamilyTable::SexticDegree,
        ]
    }

    /// Tables whose degree pattern matches `n`.
    pub fn applicable(n: u32) -> Vec<FamilyTable> {
        FamilyTable::all()
            .into_iter()
            .filter(|t| t.matches_degree(n))
            .collect()
    }

    fn matches_degree(self, n: u32) -> bool {
        let n64 = n as u64;
        match self {
            FamilyTable::OddPrimePowerDegree => {
                matches!(prime_power(n64), Some((p, _)) if p != 2)
            }
            FamilyTable::PowerOfThreeDegree => matches!(prime_power(n64), Some((3, _))),
            FamilyTable::DegreeDivisible => !odd_prime_divisors(n64).is_empty(),
            FamilyTable::ShiftedDegreeDivisible => {
                n >= 2 && !odd_prime_divisors(n64 - 1).is_empty()
            }
            FamilyTable::MixedDegree => {
                matches!(two_three_split(n64), Some((k, r)) if k >= 1 && r >= 1)
            }
            FamilyTable::ShiftedMixedDegree => {
                n >= 2 && matches!(two_three_split(n64 - 1), Some((_, k)) if k >= 1)
            }
            FamilyTable::QuinticDegree => n == 5,
            FamilyTable::SexticDegree => n == 6,
        }
    }
}

impl fmt::Display for FamilyTable {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.id())
    }
}

/// A fired clause: which table, which clause (1-based, in table order),
/// the prime it concerns, and a rendering of the matched condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseMatch {
    pub table: FamilyTable,
    pub clause: u32,
    pub p: u64,
    pub description: String,
}

impl fmt::Display for ClauseMatch {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}({}) at p={}: {}", self.table, self.clause, self.p, self.description)
    }
}

/// A clause evaluation together with the engine cross-check at the
/// clause's prime. `engine_confirms` is `Some(true)` when the engine found
/// a common-index-divisor witness, `Some(false)` when its complete census
/// has none (a disagreement, recorded in `notes`), and `None` when the
/// engine could not complete the shape or failed.
#[derive(Debug, Clone)]
pub struct FamilyCertificate {
    pub table: FamilyTable,
    pub clause: Option<ClauseMatch>,
    pub engine: Option<PrimeReport>,
    pub engine_confirms: Option<bool>,
    pub notes: Vec<String>,
}

fn residue(x: &BigInt, m: u64) -> u64 {
    u64::try_from(&x.mod_floor(&BigInt::from(m))).expect("residue fits in u64")
}

fn odd_prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    while m.is_multiple_of(2) {
        m /= 2;
    }
    let mut q = 3;
    while q * q <= m {
        if m.is_multiple_of(q) {
            out.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// `n = 2^k * 3^r` exactly, returning `(k, r)`.
fn two_three_split(n: u64) -> Option<(u32, u32)> {
    if n == 0 {
        return None;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(2) {
        m /= 2;
        k += 1;
    }
    let mut r = 0;
    while m.is_multiple_of(3) {
        m /= 3;
        r += 1;
    }
    (m == 1).then_some((k, r))
}

/// Requirement on one exponent of a degree pattern.
#[derive(Debug, Clone, Copy)]
enum ExpReq {
    Any,
    Exact(u32),
    AtLeast(u32),
    OneOf(&'static [u32]),
}

impl ExpReq {
    fn accepts(self, v: u32) -> bool {
        match self {
            ExpReq::Any => true,
            ExpReq::Exact(e) => v == e,
            ExpReq::AtLeast(e) => v >= e,
            ExpReq::OneOf(set) => set.contains(&v),
        }
    }
}

/// One residue-pair clause: `(a, b)` must fall, modulo `modulus`, into the
/// union of the listed residue-set products, gated on the two exponents of
/// the degree pattern.
struct PairClause {
    first: ExpReq,
    second: ExpReq,
    modulus: u64,
    parts: &'static [(&'static [u64], &'static [u64])],
}

fn match_pair_clauses(
    clauses: &[PairClause],
    e1: u32,
    e2: u32,
    a: &BigInt,
    b: &BigInt,
) -> Option<(u32, String)> {
    for (idx, clause) in clauses.iter().enumerate() {
        if !clause.first.accepts(e1) || !clause.second.accepts(e2) {
            continue;
        }
        let ra = residue(a, clause.modulus);
        let rb = residue(b, clause.modulus);
        if clause.parts.iter().any(|(av, bv)| av.contains(&ra) && bv.contains(&rb)) {
            return Some((
                idx as u32 + 1,
                format!("(a,b) = ({ra},{rb}) mod {}", clause.modulus),
            ));
        }
    }
    None
}

/// Degree `2^k * 3^r` table (all clauses at p = 3); first = k, second = r.
const MIXED_CLAUSES: &[PairClause] = &[
    PairClause { first: ExpReq::Any, second: ExpReq::Exact(3), modulus: 243, parts: &[(&[0], &[242])] },
    PairClause {
        first: ExpReq::OneOf(&[1, 2]),
        second: ExpReq::AtLeast(4),
        modulus: 243,
        parts: &[(&[81, 162], &[80, 161, 242]), (&[0], &[80, 161])],
    },
    PairClause { first: ExpReq::Any, second: ExpReq::Exact(1), modulus: 27, parts: &[(&[0], &[26])] },
    PairClause {
        first: ExpReq::Any,
        second: ExpReq::AtLeast(2),
        modulus: 27,
        parts: &[(&[9, 18], &[26]), (&[0], &[8, 17])],
    },
    PairClause {
        first: ExpReq::Any,
        second: ExpReq::AtLeast(3),
        modulus: 81,
        parts: &[(&[0], &[26, 53]), (&[27, 54], &[26, 53, 80])],
    },
    PairClause { first: ExpReq::Any, second: ExpReq::Exact(2), modulus: 81, parts: &[(&[0], &[80])] },
    PairClause { first: ExpReq::Exact(1), second: ExpReq::Exact(3), modulus: 243, parts: &[(&[0], &[1])] },
    PairClause {
        first: ExpReq::Exact(1),
        second: ExpReq::AtLeast(4),
        modulus: 243,
        parts: &[(&[81, 162], &[1, 82, 163]), (&[0], &[82, 163])],
    },
    PairClause { first: ExpReq::Exact(2), second: ExpReq::Exact(1), modulus: 27, parts: &[(&[0], &[1])] },
    PairClause {
        first: ExpReq::Exact(2),
        second: ExpReq::AtLeast(2),
        modulus: 27,
        parts: &[(&[9, 18], &[1, 10, 19]), (&[0], &[10, 19])],
    },
    PairClause {
        first: ExpReq::AtLeast(3),
        second: ExpReq::AtLeast(2),
        modulus: 27,
        parts: &[(&[9, 18], &[8, 17])],
    },
];

/// Degree `2^s * 3^k + 1` table (all clauses at p = 3); first = s,
/// second = k, both exponents taken from `degree - 1`.
const MIXED_SHIFT_CLAUSES: &[PairClause] = &[
    PairClause {
        first: ExpReq::Exact(0),
        second: ExpReq::AtLeast(3),
        modulus: 81,
        parts: &[(&[1, 80], &[27, 54]), (&[26, 28, 53, 55], &[0])],
    },
    PairClause {
        first: ExpReq::Exact(0),
        second: ExpReq::AtLeast(4),
        modulus: 243,
        parts: &[(&[1, 242], &[81, 162]), (&[80, 82, 161, 163], &[0])],
    },
    PairClause { first: ExpReq::Exact(0), second: ExpReq::Exact(2), modulus: 81, parts: &[(&[1, 80], &[0])] },
    PairClause { first: ExpReq::Exact(0), second: ExpReq::Exact(3), modulus: 243, parts: &[(&[1, 242], &[0])] },
    PairClause {
        first: ExpReq::AtLeast(1),
        second: ExpReq::AtLeast(2),
        modulus: 27,
        parts: &[(&[26], &[9, 18]), (&[8, 17], &[0])],
    },
    PairClause {
        first: ExpReq::AtLeast(1),
        second: ExpReq::AtLeast(3),
        modulus: 81,
        parts: &[(&[80], &[27, 54]), (&[26, 53], &[0, 27, 54])],
    },
    PairClause { first: ExpReq::AtLeast(1), second: ExpReq::Exact(1), modulus: 27, parts: &[(&[26], &[0])] },
    PairClause { first: ExpReq::AtLeast(1), second: ExpReq::Exact(2), modulus: 81, parts: &[(&[80], &[0])] },
    PairClause { first: ExpReq::Exact(2), second: ExpReq::Exact(3), modulus: 243, parts: &[(&[242], &[0])] },
    PairClause {
        first: ExpReq::Exact(2),
        second: ExpReq::AtLeast(4),
        modulus: 243,
        parts: &[(&[80, 161, 242], &[81, 162]), (&[80, 161], &[0])],
    },
    PairClause {
        first: ExpReq::AtLeast(3),
        second: ExpReq::AtLeast(2),
        modulus: 27,
        parts: &[(&[8, 17, 26], &[9, 18]), (&[8, 17], &[0])],
    },
    PairClause { first: ExpReq::Exact(1), second: ExpReq::Exact(3), modulus: 243, parts: &[(&[1], &[0])] },
    PairClause {
        first: ExpReq::Exact(1),
        second: ExpReq::AtLeast(4),
        modulus: 243,
        parts: &[(&[1, 82, 163], &[81, 162]), (&[82, 163], &[0])],
    },
    PairClause { first: ExpReq::Exact(2), second: ExpReq::Exact(1), modulus: 27, parts: &[(&[1], &[0])] },
    PairClause {
        first: ExpReq::Exact(2),
        second: ExpReq::AtLeast(2),
        modulus: 27,
        parts: &[(&[1, 10, 19], &[9, 18]), (&[10, 19], &[0])],
    },
];

/// Degree-5 table (all clauses at p = 2); the exponents are unused.
const QUINTIC_CLAUSES: &[PairClause] = &[
    PairClause { first: ExpReq::Any, second: ExpReq::Any, modulus: 4, parts: &[(&[1], &[2])] },
    PairClause { first: ExpReq::Any, second: ExpReq::Any, modulus: 16, parts: &[(&[7], &[8]), (&[15], &[0])] },
    PairClause { first: ExpReq::Any, second: ExpReq::Any, modulus: 32, parts: &[(&[19], &[4]), (&[3], &[20])] },
    PairClause {
        first: ExpReq::Any,
        second: ExpReq::Any,
        modulus: 64,
        parts: &[(&[3], &[4]), (&[35], &[36]), (&[19], &[20]), (&[51], &[52])],
    },
    PairClause { first: ExpReq::Any, second: ExpReq::Any, modulus: 32, parts: &[(&[3], &[12]), (&[19], &[28])] },
    PairClause {
        first: ExpReq::Any,
        second: ExpReq::Any,
        modulus: 64,
        parts: &[(&[3], &[60]), (&[19], &[44]), (&[35], &[28]), (&[51], &[12])],
    },
    PairClause { first: ExpReq::Any, second: ExpReq::Any, modulus: 8, parts: &[(&[4], &[0])] },
];

fn match_odd_prime_power(t: &Trinomial) -> Result<Option<ClauseMatch>> {
    let (p, r) = match prime_power(t.n() as u64) {
        Some((p, r)) if p != 2 => (p, r),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "degree {} is not an odd prime power",
                t.n()
            )))
        }
    };
    if (r as u64) < p {
        return Ok(None);
    }
    let modulus = BigInt::from(p).pow(exp32(p + 1)?);
    if !t.a().mod_floor(&modulus).is_zero() {
        return Ok(None);
    }
    let bb = t.b().mod_floor(&modulus);
    if bb.modpow(&BigInt::from(p - 1), &modulus) != BigInt::one() {
        return Ok(None);
    }
    Ok(Some(ClauseMatch {
        table: FamilyTable::OddPrimePowerDegree,
        clause: 1,
        p,
        description: format!("r={r} >= p={p}, a = 0 mod {modulus}, b^{} = 1 mod {modulus}", p - 1),
    }))
}

fn match_power_of_three(t: &Trinomial) -> Result<Option<ClauseMatch>> {
    let r = match prime_power(t.n() as u64) {
        Some((3, r)) => r,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "degree {} is not a power of three",
                t.n()
            )))
        }
    };
    if r < 3 {
        return Ok(None);
    }
    let ra = residue(t.a(), 81);
    let rb = residue(t.b(), 81);
    if ra == 0 && (rb == 1 || rb == 80) {
        return Ok(Some(ClauseMatch {
            table: FamilyTable::PowerOfThreeDegree,
            clause: 1,
            p: 3,
            description: format!("r={r} >= 3 and (a,b) = (0,{rb}) mod 81"),
        }));
    }
    Ok(None)
}

/// Shared clause logic of the two divisibility tables. With `w` the
/// valuation of the divisible coefficient, `w'` the valuation of
/// `other^(p-1) - 1`, `e+1` the depth bound from the degree, and the
/// factor counts of `x^len + other`, the clauses compare `min`-depths
/// against factor counts. `shift_form` selects the inequality shape
/// (`p < depth*count` vs `p < depth*count + 1`).
#[allow(clippy::too_many_arguments)]
fn depth_clauses(
    table: FamilyTable,
    p: u64,
    w: Valuation,
    w_other: Valuation,
    e: u64,
    counts: &BTreeMap<u64, u64>,
    shift_form: bool,
    names: (&str, &str),
) -> Result<Option<ClauseMatch>> {
    let bound = Valuation::Finite(e + 1);
    let delta = w.min(w_other);
    let omega = delta.min(bound).finite().expect("min with finite is finite");
    let count1 = counts.get(&1).copied().unwrap_or(0);
    let fires = |depth: u64, count: u64| -> bool {
        let lhs = depth as u128 * count as u128;
        if shift_form {
            lhs + 1 > p as u128
        } else {
            lhs > p as u128
        }
    };
    // clause 1: strict overshoot at some residue degree m >= 2
    if delta != bound {
        for (&m, &cnt) in counts.iter().filter(|&(&m, _)| m >= 2) {
            let lhs = BigInt::from(omega) * BigInt::from(cnt);
            if lhs > count_irreducibles(p, exp32(m)?)? {
                return Ok(Some(ClauseMatch {
                    table,
                    clause: 1,
                    p,
                    description: format!(
                        "depth {omega} over {cnt} degree-{m} factors exceeds N_{p}({m})"
                    ),
                }));
            }
        }
    }
    // clause 2: the divisible coefficient has the strictly smallest depth
    if let Valuation::Finite(wf) = w {
        if fires(wf, count1) && w < w_other.min(bound) {
            return Ok(Some(ClauseMatch {
                table,
                clause: 2,
                p,
                description: format!("{} = {wf} < min({}, {})", names.0, names.1, e + 1),
            }));
        }
    }
    // clause 3: the unit-congruence depth is strictly smallest
    if let Valuation::Finite(wo) = w_other {
        if fires(wo, count1) && w_other < w.min(bound) {
            return Ok(Some(ClauseMatch {
                table,
                clause: 3,
                p,
                description: format!("{} = {wo} < min({}, {})", names.1, names.0, e + 1),
            }));
        }
    }
    // clause 4: the degree depth is strictly smallest
    if fires(e + 1, count1) && bound < delta {
        return Ok(Some(ClauseMatch {
            table,
            clause: 4,
            p,
            description: format!("{} = {} < min({}, {})", "depth bound", e + 1, names.0, names.1),
        }));
    }
    Ok(None)
}

fn match_degree_divisible(t: &Trinomial) -> Result<Option<ClauseMatch>> {
    let n = t.n() as u64;
    let primes = odd_prime_divisors(n);
    if primes.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "degree {n} has no odd prime divisor"
        )));
    }
    for p in primes {
        let mu = vp(t.a(), p)?;
        if mu == Valuation::Finite(0) {
            continue;
        }
        if vp(t.b(), p)? != Valuation::Finite(0) {
            continue;
        }
        let r = vp(&BigInt::from(n), p)?.finite().expect("p divides n");
        let s = n / p.pow(exp32(r)?);
        let nu = vp(&(t.b().pow(exp32(p - 1)?) - BigInt::one()), p)?;
        let counts = factor_degree_counts(p, exp32(s)?, t.b())?;
        if let Some(m) = depth_clauses(
            FamilyTable::DegreeDivisible,
            p,
            mu,
            nu,
            r,
            &counts,
            false,
            ("vp(a)", "vp(b^(p-1)-1)"),
        )? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn match_shifted_degree_divisible(t: &Trinomial) -> Result<Option<ClauseMatch>> {
    let n = t.n() as u64;
    let primes = odd_prime_divisors(n - 1);
    if primes.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "degree {n} minus one has no odd prime divisor"
        )));
    }
    for p in primes {
        let sigma = vp(t.b(), p)?;
        if sigma == Valuation::Finite(0) {
            continue;
        }
        if vp(t.a(), p)? != Valuation::Finite(0) {
            continue;
        }
        let k = vp(&BigInt::from(n - 1), p)?.finite().expect("p divides n-1");
        let u = (n - 1) / p.pow(exp32(k)?);
        let rho = vp(&(t.a().pow(exp32(p - 1)?) - BigInt::one()), p)?;
        let counts = factor_degree_counts(p, exp32(u)?, t.a())?;
        if let Some(m) = depth_clauses(
            FamilyTable::ShiftedDegreeDivisible,
            p,
            sigma,
            rho,
            k,
            &counts,
            true,
            ("vp(b)", "vp(a^(p-1)-1)"),
        )? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn match_sextic(t: &Trinomial) -> Result<Option<ClauseMatch>> {
    if t.n() != 6 {
        return Err(Error::InvalidArgument(format!("degree {} is not 6", t.n())));
    }
    let (a8, b8) = (residue(t.a(), 8), residue(t.b(), 8));
    if a8 == 0 && b8 == 7 {
        return Ok(Some(ClauseMatch {
            table: FamilyTable::SexticDegree,
            clause: 1,
            p: 2,
            description: "(a,b) = (0,7) mod 8".into(),
        }));
    }
    if residue(t.a(), 4) == 2 && residue(t.b(), 4) == 1 {
        let lhs = vp(&(BigInt::one() + t.a() + t.b()), 2)?;
        let half = vp(&(t.a() + BigInt::from(6)), 2)?;
        if lhs == half.plus(half) {
            return Ok(Some(ClauseMatch {
                table: FamilyTable::SexticDegree,
                clause: 2,
                p: 2,
                description: format!(
                    "(a,b) = (2,1) mod 4 and v2(1+a+b) = {lhs} doubles v2(a+6) = {half}"
                ),
            }));
        }
    }
    if a8 == 0 && b8 == 3 {
        return Ok(Some(ClauseMatch {
            table: FamilyTable::SexticDegree,
            clause: 3,
            p: 2,
            description: "(a,b) = (0,3) mod 8".into(),
        }));
    }
    if residue(t.a(), 9) == 0 && residue(t.b(), 9) == 8 {
        return Ok(Some(ClauseMatch {
            table: FamilyTable::SexticDegree,
            clause: 4,
            p: 3,
            description: "(a,b) = (0,8) mod 9".into(),
        }));
    }
    Ok(None)
}

/// Evaluates the clauses of one table against a trinomial; no engine run.
/// Returns the first fired clause in table order, or an error when the
/// degree does not match the table's pattern.
pub fn match_clauses(t: &Trinomial, table: FamilyTable) -> Result<Option<ClauseMatch>> {
    match table {
        FamilyTable::OddPrimePowerDegree => match_odd_prime_power(t),
        FamilyTable::PowerOfThreeDegree => match_power_of_three(t),
        FamilyTable::DegreeDivisible => match_degree_divisible(t),
        FamilyTable::ShiftedDegreeDivisible => match_shifted_degree_divisible(t),
        FamilyTable::MixedDegree => {
            let (k, r) = match two_three_split(t.n() as u64) {
                Some((k, r)) if k >= 1 && r >= 1 => (k, r),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "degree {} is not of the form 2^k * 3^r with k, r >= 1",
                        t.n()
                    )))
                }
            };
            Ok(match_pair_clauses(MIXED_CLAUSES, k, r, t.a(), t.b()).map(|(clause, description)| {
                ClauseMatch { table, clause, p: 3, description }
            }))
        }
        FamilyTable::ShiftedMixedDegree => {
            let (s, k) = match two_three_split(t.n() as u64 - 1) {
                Some((s, k)) if k >= 1 => (s, k),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "degree {} minus one is not of the form 2^s * 3^k with k >= 1",
                        t.n()
                    )))
                }
            };
            Ok(
                match_pair_clauses(MIXED_SHIFT_CLAUSES, s, k, t.a(), t.b()).map(
                    |(clause, description)| ClauseMatch { table, clause, p: 3, description },
                ),
            )
        }
        FamilyTable::QuinticDegree => {
            if t.n() != 5 {
                return Err(Error::InvalidArgument(format!("degree {} is not 5", t.n())));
            }
            Ok(match_pair_clauses(QUINTIC_CLAUSES, 0, 0, t.a(), t.b()).map(
                |(clause, description)| ClauseMatch { table, clause, p: 2, description },
            ))
        }
        FamilyTable::SexticDegree => match_sextic(t),
    }
}

/// First fired clause of every table whose degree pattern applies, in the
/// fixed table order.
pub fn fired_clauses(t: &Trinomial) -> Vec<ClauseMatch> {
    FamilyTable::applicable(t.n())
        .into_iter()
        .filter_map(|table| match_clauses(t, table).ok().flatten())
        .collect()
}

/// Evaluates one table against a trinomial and cross-checks any fired
/// clause with the factorization engine at the clause's prime. A clause
/// that fires while the engine's complete census shows no witness is a
/// disagreement: it is recorded in `notes` and `engine_confirms` is
/// `Some(false)`, never suppressed.
pub fn certify_family(t: &Trinomial, table: FamilyTable) -> Result<FamilyCertificate> {
    let clause = match_clauses(t, table)?;
    let mut notes = Vec::new();
    let (engine, engine_confirms) = match &clause {
        None => {
            notes.push("no clause fired".into());
            (None, None)
        }
        Some(m) => match common_index_divisor_test(&t.to_poly(), m.p) {
            Ok(report) => {
                let confirms = match &report.outcome {
                    DivisorOutcome::Witness(w) => {
                        notes.push(format!("engine confirms: {w}"));
                        Some(true)
                    }
                    DivisorOutcome::NoWitness => {
                        notes.push(format!(
                            "disagreement: clause {}({}) fired but the engine census \
                             {} at p={} has no witness (shape {})",
                            m.table, m.clause, report.census, m.p, report.analysis.shape
                        ));
                        Some(false)
                    }
                    DivisorOutcome::Incomplete => {
                        notes.push(format!(
                            "clause fired but the engine shape at p={} is incomplete: {}",
                            m.p, report.analysis.shape
                        ));
                        None
                    }
                };
                (Some(report), confirms)
            }
            Err(err) => {
                notes.push(format!("engine analysis failed at p={}: {err}", m.p));
                (None, None)
            }
        },
    };
    Ok(FamilyCertificate { table, clause, engine, engine_confirms, notes })
}

// ---------------------------------------------------------------------------
// top-level analysis
// ---------------------------------------------------------------------------

/// Final status of a trinomial analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    /// A power integral basis generator was constructed and certified.
    MonogenicWithGenerator,
    /// Some prime divides the index of every generator.
    NotMonogenic,
    /// The equation order is already maximal, so the defining root itself
    /// generates the ring of integers.
    ThetaGenerates,
    /// No decision: every implemented criterion was inconclusive.
    Inconclusive,
}

impl VerdictStatus {
    /// Whether a definite verdict was reached.
    pub fn is_decided(self) -> bool {
        self != VerdictStatus::Inconclusive
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictStatus::MonogenicWithGenerator => "monogenic-with-generator",
            VerdictStatus::NotMonogenic => "not-monogenic",
            VerdictStatus::ThetaGenerates => "zk-equals-ztheta",
            VerdictStatus::Inconclusive => "inconclusive",
        };
        write!(out, "{s}")
    }
}

/// Complete record of one analysis: status, witnesses, per-prime engine
/// reports, fired family clauses and a human-readable transcript. Two runs
/// on the same input produce identical transcripts.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub trinomial: Trinomial,
    pub status: VerdictStatus,
    pub discriminant: BigInt,
    pub irreducibility: IrreducibilityCertificate,
    pub candidate_primes: Vec<u64>,
    pub prime_reports: Vec<PrimeReport>,
    pub witnesses: Vec<IndexDivisorWitness>,
    pub clauses: Vec<ClauseMatch>,
    pub generator: Option<MonoCertificate>,
    pub maximality: Option<MaximalityScan>,
    pub flags: Vec<String>,
    pub transcript: Vec<String>,
}

/// One-line rendering of an irreducibility certificate.
pub fn describe_certificate(cert: &IrreducibilityCertificate) -> String {
    match cert {
        IrreducibilityCertificate::RationalRoot { root } => {
            format!("reducible: rational root {root}")
        }
        IrreducibilityCertificate::Eisenstein { p } => format!("Eisenstein at {p}"),
        IrreducibilityCertificate::IrreducibleMod { p } => {
            format!("irreducible modulo {p}")
        }
        IrreducibilityCertificate::OneSidedPolygon { p, height } => {
            format!("one-sided polygon at {p} with height {height}")
        }
        IrreducibilityCertificate::Unknown { root_scan_complete } => format!(
            "unverified (rational-root scan complete: {root_scan_complete})"
        ),
    }
}

/// Decides what can be decided about the field defined by a trinomial:
///
/// 1. rejects non-squarefree or detectably reducible input;
/// 2. certifies irreducibility when possible (otherwise flags it);
/// 3. runs the common-index-divisor test at every prime `p < n` with
///    `p^2` dividing the discriminant — any witness settles
///    non-monogenity;
/// 4. otherwise scans maximality at every squared discriminant prime —
///    if all pass (and the discriminant factored completely), the root
///    itself generates the ring of integers;
/// 5. otherwise attempts the prime-power generator certificate;
/// 6. otherwise reports inconclusive, with the full transcript.
pub fn analyze(t: &Trinomial) -> Result<Verdict> {
    let f = t.to_poly();
    let discriminant = trinomial_discriminant(t);
    let mut transcript = vec![
        format!("trinomial: {t}"),
        format!("discriminant: {discriminant}"),
    ];
    if discriminant.is_zero() {
        return Err(Error::InvalidTrinomial(
            "zero discriminant: the polynomial has repeated roots".into(),
        ));
    }
    let irreducibility = irreducibility_certificate(t)?;
    if let IrreducibilityCertificate::RationalRoot { root } = &irreducibility {
        return Err(Error::InvalidTrinomial(format!(
            "reducible: x - ({root}) divides the trinomial"
        )));
    }
    transcript.push(format!("irreducibility: {}", describe_certificate(&irreducibility)));
    let mut flags = Vec::new();
    if !irreducibility.proves_irreducible() {
        flags.push("irreducibility unverified".to_string());
    }

    let candidate_primes = candidate_primes(t)?;
    transcript.push(format!(
        "candidate primes (p < {}, p^2 | disc): {candidate_primes:?}",
        t.n()
    ));
    let mut prime_reports = Vec::new();
    let mut witnesses = Vec::new();
    for &p in &candidate_primes {
        let report = match common_index_divisor_test(&f, p) {
            Ok(report) => report,
            Err(Error::UnsupportedShape(msg))
                if msg.contains("divides the polynomial exactly") =>
            {
                return Err(Error::InvalidTrinomial(format!("reducible: {msg}")));
            }
            Err(err) => return Err(err),
        };
        transcript.push(format!(
            "p={p}: shape {}, census {}, {}",
            report.analysis.shape, report.census, report.outcome
        ));
        for diag in &report.analysis.shape.diagnostics {
            transcript.push(format!("p={p}: note: {diag}"));
        }
        if let DivisorOutcome::Witness(w) = &report.outcome {
            witnesses.push(w.clone());
        }
        prime_reports.push(report);
    }

    let clauses = fired_clauses(t);
    if clauses.is_empty() {
        transcript.push("family clauses: none fired".to_string());
    } else {
        for c in &clauses {
            transcript.push(format!("family clause fired: {c}"));
        }
    }

    let mut generator = None;
    let mut maximality = None;
    let status = if !witnesses.is_empty() {
        for w in &witnesses {
            transcript.push(format!("common index divisor: {w}"));
        }
        VerdictStatus::NotMonogenic
    } else {
        let scan = maximality_scan(&f, &discriminant)?;
        transcript.push(format!(
            "maximality at squared discriminant primes {:?}: {}",
            scan.tested.iter().map(|&(q, _)| q).collect::<Vec<_>>(),
            if scan.all_maximal { "all maximal" } else { "not all maximal" }
        ));
        if !scan.complete {
            transcript.push(format!(
                "discriminant cofactor {} left unfactored below {FACTOR_BOUND}",
                scan.cofactor
            ));
        }
        let decided = if scan.complete && scan.all_maximal {
            if irreducibility.proves_irreducible() {
                Some(VerdictStatus::ThetaGenerates)
            } else {
                flags.push(
                    "equation order maximal everywhere but irreducibility unverified".to_string(),
                );
                None
            }
        } else {
            if !scan.complete && scan.all_maximal {
                flags.push(format!(
                    "maximal at every prime found below {FACTOR_BOUND}; cofactor {} unfactored",
                    scan.cofactor
                ));
            }
            None
        };
        maximality = Some(scan);
        match decided {
            Some(status) => status,
            None => match MonoParams::from_trinomial(t) {
                Ok(params) => match certify_mono(&params) {
                    Ok(cert) => {
                        transcript.push(format!(
                            "generator certified: eta = {} with minimal polynomial {}",
                            cert.generator(),
                            cert.minimal_polynomial
                        ));
                        generator = Some(cert);
                        VerdictStatus::MonogenicWithGenerator
                    }
                    Err(err) => {
                        transcript.push(format!("generator certificate failed: {err}"));
                        VerdictStatus::Inconclusive
                    }
                },
                Err(err) => {
                    transcript.push(format!("generator pattern does not apply: {err}"));
                    VerdictStatus::Inconclusive
                }
            },
        }
    };
    transcript.push(format!("status: {status}"));
    Ok(Verdict {
        trinomial: t.clone(),
        status,
        discriminant,
        irreducibility,
        candidate_primes,
        prime_reports,
        witnesses,
        clauses,
        generator,
        maximality,
        flags,
        transcript,
    })
}
