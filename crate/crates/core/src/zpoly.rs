//! Integer polynomials and trinomials: exact discriminants (closed form and
//! resultant route), phi-adic developments, lift selection for factors of
//! the reduction, irreducibility certificates, and the classical
//! p-maximality criterion.

use crate::fqpoly::FpPoly;
use crate::intarith::{is_prime, trial_factor, vp, Valuation};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A dense integer polynomial, constant term first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> IntPoly {
        let mut c = coeffs;
        while c.last().map(|x| x.is_zero()) == Some(true) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::from_i64(&[1])
    }

    pub fn x() -> IntPoly {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: BigInt) -> IntPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    /// Lifts a polynomial over `F_p` with coefficients in `0..p`.
    pub fn lift_canonical(f: &FpPoly) -> IntPoly {
        IntPoly::new(f.coeffs().iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Lifts a polynomial over `F_p` with coefficients in `[-p/2, p/2)`.
    pub fn lift_symmetric(f: &FpPoly) -> IntPoly {
        IntPoly::new(f.lift_symmetric())
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().map(|x| x.is_one()) == Some(true)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.c.len().max(other.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.c.len().max(other.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn mul_scalar(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    /// Euclidean division by a monic divisor; quotient and remainder are
    /// integral and unique.
    pub fn divmod_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let dd = divisor.c.len() - 1;
        if self.c.len() < divisor.c.len() {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.c.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].clone();
            for (j, b) in divisor.c.iter().enumerate() {
                let t = &q * b;
                rem[i - dd + j] -= t;
            }
            quo[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quo), IntPoly::new(rem)))
    }

    pub fn derivative(&self) -> IntPoly {
        if self.c.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, x)| x * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for x in self.c.iter().rev() {
            acc = acc * t + x;
        }
        acc
    }

    /// Reduction modulo a prime.
    pub fn reduce(&self, p: u64) -> Result<FpPoly> {
        FpPoly::from_bigints(p, &self.c)
    }

    /// Minimum p-adic valuation over all coefficients (`Infinity` for the
    /// zero polynomial).
    pub fn min_valuation(&self, p: u64) -> Result<Valuation> {
        let mut best = Valuation::Infinity;
        for x in &self.c {
            let v = vp(x, p)?;
            if v < best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Exact division of every coefficient by `p^k`.
    pub fn div_pow_exact(&self, p: u64, k: u64) -> Result<IntPoly> {
        let scale = BigInt::from(p).pow(u32::try_from(k).expect("exponent fits"));
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            let (q, r) = x.div_rem(&scale);
            if !r.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "coefficient {x} not divisible by {p}^{k}"
                )));
            }
            c.push(q);
        }
        Ok(IntPoly::new(c))
    }

    /// Resultant of two integer polynomials, computed by the subresultant
    /// pseudo-remainder sequence (exact, fraction-free).
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (da, db) = match (self.degree(), other.degree()) {
            (None, _) | (_, None) => return BigInt::zero(),
            (Some(da), Some(db)) => (da, db),
        };
        if da == 0 && db == 0 {
            return BigInt::one();
        }
        if da == 0 {
            return self.leading_coeff().pow(db as u32);
        }
        if db == 0 {
            return other.leading_coeff().pow(da as u32);
        }
        let mut sign = BigInt::one();
        let (mut a, mut b) = if da >= db {
            (self.clone(), other.clone())
        } else {
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
            (other.clone(), self.clone())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let la = a.degree().unwrap();
            let lb = b.degree().unwrap();
            if la % 2 == 1 && lb % 2 == 1 {
                sign = -sign;
            }
            let delta = (la - lb) as u32;
            let r = pseudo_rem(&a, &b);
            a = b;
            if r.is_zero() {
                // a common factor of positive degree forces resultant zero
                return if a.degree().unwrap() > 0 {
                    BigInt::zero()
                } else {
                    unreachable!("remainder zero against a constant")
                };
            }
            let scale = &g * h.pow(delta);
            b = IntPoly::new(r.c.iter().map(|x| x / &scale).collect());
            g = a.leading_coeff();
            h = exact_power_quotient(&g, &h, delta);
            if b.degree() == Some(0) {
                let la = a.degree().unwrap() as u32;
                let res = exact_power_quotient(&b.coeff(0), &h, la);
                return sign * res;
            }
        }
    }
}

/// `num^delta / den^(delta - 1)`, exact in the subresultant sequence; the
/// delta = 0 case degenerates to `den` itself.
fn exact_power_quotient(num: &BigInt, den: &BigInt, delta: u32) -> BigInt {
    if delta == 0 {
        return den.clone();
    }
    let (q, r) = num.pow(delta).div_rem(&den.pow(delta - 1));
    debug_assert!(r.is_zero(), "subresultant division is exact");
    q
}

/// Pseudo-remainder: the remainder of `lc(b)^(deg a - deg b + 1) * a` by `b`.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    let lc = b.leading_coeff();
    let mut rem = a.c.clone();
    let mut scale_applied = 0u32;
    for i in (db..=da).rev() {
        // keep lower coefficients scaled consistently
        for x in rem.iter_mut().take(i) {
            *x *= &lc;
        }
        scale_applied += 1;
        let q = rem[i].clone();
        rem[i] = BigInt::zero();
        for (j, bc) in b.c.iter().enumerate().take(db) {
            rem[i - db + j] -= &q * bc;
        }
    }
    let total = (da - db + 1) as u32;
    debug_assert!(scale_applied <= total);
    let fix = lc.pow(total - scale_applied);
    IntPoly::new(rem.into_iter().take(db).map(|x| x * &fix).collect())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, x) in self.c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if first {
                if x.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if x.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag.is_one() {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{mag}x")?;
                    }
                }
                _ => {
                    if mag.is_one() {
                        write!(f, "x^{i}")?;
                    } else {
                        write!(f, "{mag}x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The trinomial `x^n + a*x + b` with `n >= 2` and `b != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trinomial {
    n: u32,
    a: BigInt,
    b: BigInt,
}

impl Trinomial {
    pub fn new(n: u32, a: BigInt, b: BigInt) -> Result<Trinomial> {
        if n < 2 {
            return Err(Error::InvalidTrinomial(format!("degree {n} below 2")));
        }
        if b.is_zero() {
            return Err(Error::InvalidTrinomial(
                "constant term zero makes x a factor".into(),
            ));
        }
        Ok(Trinomial { n, a, b })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn to_poly(&self) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.n as usize + 1];
        c[0] = self.b.clone();
        c[1] += &self.a;
        c[self.n as usize] += BigInt::one();
        IntPoly::new(c)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        t.pow(self.n) + &self.a * t + &self.b
    }

    /// Whether `vq(a) < n - 1 or vq(b) < n` holds at `q`; when it fails the
    /// trinomial is a q-power rescaling of a smaller one.
    pub fn is_reduced_at(&self, q: u64) -> Result<bool> {
        let va = vp(&self.a, q)?;
        let vb = vp(&self.b, q)?;
        Ok(va < Valuation::Finite(self.n as u64 - 1) || vb < Valuation::Finite(self.n as u64))
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Closed-form discriminant of `x^n + ax + b`:
/// `(-1)^(n(n-1)/2) * (n^n b^(n-1) + (1-n)^(n-1) a^n)`.
pub fn trinomial_discriminant(t: &Trinomial) -> BigInt {
    let n = t.n;
    let nn = BigInt::from(n).pow(n);
    let term1 = nn * t.b.pow(n - 1);
    let term2 = (BigInt::one() - BigInt::from(n)).pow(n - 1) * t.a.pow(n);
    let body = term1 + term2;
    if (n as u64 * (n as u64 - 1) / 2) % 2 == 1 {
        -body
    } else {
        body
    }
}

/// Discriminant via the resultant of `f` and its derivative; returns zero
/// exactly when `f` is not squarefree.
pub fn discriminant_resultant(f: &IntPoly) -> Result<BigInt> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::InvalidArgument("degree must be positive".into())),
        Some(n) => n,
    };
    let res = f.resultant(&f.derivative());
    let lc = f.leading_coeff();
    let (q, r) = res.div_rem(&lc);
    debug_assert!(r.is_zero(), "leading coefficient divides the resultant");
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

/// The phi-adic development of `f`: coefficients `a_0..a_k` of degree below
/// `deg phi` with `f = sum a_i * phi^i`, plus the minimum coefficient
/// valuation of each `a_i` at `p`.
#[derive(Debug, Clone)]
pub struct PhiDevelopment {
    pub phi: IntPoly,
    pub coefficients: Vec<IntPoly>,
    pub p: u64,
    pub valuations: Vec<Valuation>,
}

impl PhiDevelopment {
    /// Rebuilds `sum a_i * phi^i` (used to check exactness).
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::zero();
        for a in self.coefficients.iter().rev() {
            acc = acc.mul(&self.phi).add(a);
        }
        acc
    }
}

/// Computes the phi-adic development of `f` by repeated division by the
/// monic `phi`, with per-coefficient valuations at `p`.
pub fn phi_expansion(f: &IntPoly, phi: &IntPoly, p: u64) -> Result<PhiDevelopment> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if !phi.is_monic() {
        return Err(Error::NotMonic);
    }
    let dphi = phi.degree().ok_or(Error::ZeroPolynomial)?;
    let df = f.degree().ok_or(Error::ZeroPolynomial)?;
    if dphi < 1 || dphi > df {
        return Err(Error::InvalidArgument(format!(
            "divisor degree {dphi} outside 1..={df}"
        )));
    }
    let mut coefficients = Vec::new();
    if dphi == 1 && phi.coeff(0).is_zero() {
        // phi = x: the development is the coefficient list itself
        coefficients = f.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
    } else {
        let mut rest = f.clone();
        while !rest.is_zero() {
            let (q, r) = rest.divmod_monic(phi)?;
            coefficients.push(r);
            rest = q;
        }
    }
    let valuations = coefficients
        .iter()
        .map(|a| a.min_valuation(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiDevelopment { phi: phi.clone(), coefficients, p, valuations })
}

/// A monic lift `phi` of an irreducible factor of the reduction, with the
/// division data `f = phi*U + p*T`, `deg T < deg phi`, `T != 0 mod p`, and
/// the factor not dividing `U mod p`.
#[derive(Debug, Clone)]
pub struct LiftedFactor {
    pub phi: IntPoly,
    pub u: IntPoly,
    pub t: IntPoly,
    pub p: u64,
}

/// Selects a monic lift of `g` (an irreducible factor of `f mod p` of
/// multiplicity one) so the division data satisfies the invariants above.
/// Starts from the symmetric-range lift; when the naive remainder has
/// valuation at least 2 the lift is shifted once by `-p`.
pub fn select_lift(f: &IntPoly, g: &FpPoly, p: u64) -> Result<LiftedFactor> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if g.modulus() != p {
        return Err(Error::FieldMismatch);
    }
    if !g.is_monic() || g.degree().unwrap_or(0) < 1 {
        return Err(Error::NotMonic);
    }
    let fbar = f.reduce(p)?;
    if !fbar.rem(g)?.is_zero() {
        return Err(Error::NotAFactor(format!("{g} mod {p}")));
    }
    let naive = IntPoly::lift_symmetric(g);
    let (_, r0) = f.divmod_monic(&naive)?;
    let phi = if r0.min_valuation(p)? >= Valuation::Finite(2) {
        naive.sub(&IntPoly::constant(BigInt::from(p)))
    } else {
        naive
    };
    let (u, r) = f.divmod_monic(&phi)?;
    let t = r.div_pow_exact(p, 1).map_err(|_| {
        Error::UnsupportedShape("remainder of the lift is not divisible by p".into())
    })?;
    let tbar = t.reduce(p)?;
    let ubar = u.reduce(p)?;
    if tbar.is_zero() || ubar.rem(g)?.is_zero() {
        // the remainder vanished mod p or g divides U mod p: the factor
        // was not multiplicity one
        return Err(Error::UnsupportedShape(
            "lift selection requires a multiplicity-one factor".into(),
        ));
    }
    Ok(LiftedFactor { phi, u, t, p })
}

/// Irreducibility evidence for a trinomial over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// A rational root was found: the trinomial is reducible.
    RationalRoot { root: BigInt },
    /// `p` divides both lower coefficients and `p^2` does not divide the
    /// constant term.
    Eisenstein { p: u64 },
    /// The reduction mod `p` is irreducible of full degree.
    IrreducibleMod { p: u64 },
    /// The x-polygon at `p` is one side from `(0, height)` to `(n, 0)` with
    /// `gcd(height, n) = 1`, so the polynomial is irreducible over the
    /// p-adics.
    OneSidedPolygon { p: u64, height: u64 },
    /// No certificate found; `root_scan_complete` records whether the
    /// rational-root search covered every candidate.
    Unknown { root_scan_complete: bool },
}

impl IrreducibilityCertificate {
    /// Whether this certificate proves irreducibility over the rationals.
    pub fn proves_irreducible(&self) -> bool {
        matches!(
            self,
            IrreducibilityCertificate::Eisenstein { .. }
                | IrreducibilityCertificate::IrreducibleMod { .. }
                | IrreducibilityCertificate::OneSidedPolygon { .. }
        )
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, IrreducibilityCertificate::RationalRoot { .. })
    }
}

/// Upper bound for integer root magnitudes of `x^n + ax + b`: any root
/// satisfies `|r|^(n-1) <= |a| + |b|`.
fn root_bound(t: &Trinomial) -> BigInt {
    let sum = t.a.abs() + t.b.abs();
    if t.n == 2 {
        sum
    } else {
        sum.nth_root(t.n - 1)
    }
}

const ROOT_SCAN_LIMIT: u64 = 2_000_000;

/// Scans for integer roots (rational roots of a monic polynomial are
/// integers dividing the constant term). Returns a root if found, plus a
/// flag recording whether the scan was exhaustive.
fn rational_root_scan(t: &Trinomial) -> (Option<BigInt>, bool) {
    if t.n == 2 {
        // roots of x^2 + ax + b from the discriminant
        let disc = t.a.pow(2) - BigInt::from(4) * &t.b;
        if disc.is_negative() {
            return (None, true);
        }
        let s = disc.sqrt();
        if &s * &s == disc {
            let num = -&t.a + s;
            if num.is_even() {
                return (Some(num / 2), true);
            }
        }
        return (None, true);
    }
    let bound = root_bound(t);
    match u64::try_from(&bound) {
        Ok(bd) if bd <= ROOT_SCAN_LIMIT => {
            for mag in 1..=bd {
                for r in [BigInt::from(mag), -BigInt::from(mag)] {
                    if (&t.b % &r).is_zero() && t.eval(&r).is_zero() {
                        return (Some(r), true);
                    }
                }
            }
            (None, true)
        }
        _ => {
            // bound too large for a direct scan: try divisors of b found by
            // partial factorization
            let (factors, rest) = trial_factor(&t.b, 100_000);
            if !rest.is_one() {
                return (None, false);
            }
            let mut divs = vec![BigInt::one()];
            for (p, m) in factors {
                let mut next = Vec::new();
                for d in &divs {
                    let mut pk = BigInt::one();
                    for _ in 0..=m {
                        next.push(d * &pk);
                        pk *= BigInt::from(p);
                    }
                }
                next.sort();
                next.dedup();
                divs = next;
                if divs.len() > 200_000 {
                    return (None, false);
                }
            }
            for d in divs {
                if d > bound {
                    continue;
                }
                for r in [d.clone(), -d] {
                    if t.eval(&r).is_zero() {
                        return (Some(r), true);
                    }
                }
            }
            (None, true)
        }
    }
}

const IRREDUCIBLE_MOD_P_DEGREE_CAP: u32 = 64;

/// Attempts to certify irreducibility of the trinomial over the rationals.
/// The returned certificate is sound: any of the non-`Unknown`,
/// non-`RationalRoot` variants proves irreducibility.
pub fn irreducibility_certificate(t: &Trinomial) -> Result<IrreducibilityCertificate> {
    let (root, complete) = rational_root_scan(t);
    if let Some(root) = root {
        return Ok(IrreducibilityCertificate::RationalRoot { root });
    }

    // Eisenstein at primes dividing the constant term exactly once in the
    // relevant sense: p | a, p | b, p^2 does not divide b.
    let (b_factors, _) = trial_factor(&t.b, 1_000_000);
    for &(p, mult) in &b_factors {
        if mult == 1 && (&t.a % BigInt::from(p)).is_zero() {
            return Ok(IrreducibilityCertificate::Eisenstein { p });
        }
    }

    // One-sided x-polygon with coprime height and length.
    for &(p, height) in &b_factors {
        let height = height as u64;
        let n = t.n as u64;
        if height.gcd(&n) != 1 {
            continue;
        }
        let above = if t.a.is_zero() {
            true
        } else {
            let va = vp(&t.a, p)?.finite().unwrap();
            n * va >= height * (n - 1)
        };
        if above {
            return Ok(IrreducibilityCertificate::OneSidedPolygon { p, height });
        }
    }

    // Full-degree irreducible reduction at a small prime.
    if t.n <= IRREDUCIBLE_MOD_P_DEGREE_CAP {
        for p in [2u64, 3, 5, 7, 11, 13] {
            if t.to_poly().reduce(p)?.is_irreducible() {
                return Ok(IrreducibilityCertificate::IrreducibleMod { p });
            }
        }
    }

    Ok(IrreducibilityCertificate::Unknown { root_scan_complete: complete })
}

/// Classical p-maximality criterion for a monic `f`: with
/// `f mod p = prod g_i^(e_i)`, sets `g* = prod g_i`, `h* = f/g*` mod p, and
/// `T = (lift(g*)*lift(h*) - f)/p`; the order generated by a root of `f` is
/// maximal at `p` exactly when `gcd(T, g*, h*) = 1` mod p.
pub fn dedekind_p_maximal(f: &IntPoly, p: u64) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let fbar = f.reduce(p)?;
    let factors = fbar.factor()?;
    let mut radical = FpPoly::one(p);
    for (g, _) in &factors {
        radical = radical.mul(g)?;
    }
    let (hbar, rem) = fbar.divmod(&radical)?;
    debug_assert!(rem.is_zero());
    let product = IntPoly::lift_canonical(&radical).mul(&IntPoly::lift_canonical(&hbar));
    let t = product.sub(f).div_pow_exact(p, 1)?;
    let tbar = t.reduce(p)?;
    let d = tbar.gcd(&radical)?.gcd(&hbar)?;
    Ok(d.is_one())
}
