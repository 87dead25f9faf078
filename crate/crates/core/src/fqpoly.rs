//! Dense polynomial arithmetic over prime fields `F_p` and their finite
//! extensions `F_q = F_p[a]/(g(a))`, with deterministic factorization into
//! monic irreducibles (squarefree split, distinct-degree split, and
//! equal-degree split seeded from a fixed constant so results are
//! reproducible run to run).

use crate::intarith::is_prime;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::fmt;

/// Fixed seed for the equal-degree splitting step; factorization output is a
/// deterministic function of the input polynomial.
const SPLIT_SEED: u64 = 0x7472_696e_6f67_656e;

/// A polynomial over `F_p`, stored densely with coefficients in `0..p`
/// from the constant term upward; trailing zeros are trimmed, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    /// Total order: by modulus, then degree, then coefficients from the
    /// constant term upward. Used to report factor lists in a canonical
    /// order.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.c.len(), &self.c).cmp(&(other.p, other.c.len(), &other.c))
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

impl FpPoly {
    /// Builds a polynomial from signed coefficients (constant term first),
    /// reduced modulo the prime `p`.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<FpPoly> {
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        let mut c: Vec<u64> = coeffs
            .iter()
            .map(|&x| (x as i128).rem_euclid(p as i128) as u64)
            .collect();
        trim(&mut c);
        Ok(FpPoly { p, c })
    }

    /// Builds a polynomial from arbitrary-precision coefficients (constant
    /// term first), reduced modulo the prime `p`.
    pub fn from_bigints(p: u64, coeffs: &[BigInt]) -> Result<FpPoly> {
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        let pb = BigInt::from(p);
        let mut c: Vec<u64> = coeffs
            .iter()
            .map(|x| u64::try_from(&x.mod_floor(&pb)).expect("residue fits in u64"))
            .collect();
        trim(&mut c);
        Ok(FpPoly { p, c })
    }

    fn from_reduced(p: u64, mut c: Vec<u64>) -> FpPoly {
        trim(&mut c);
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::constant(p, 1)
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> FpPoly {
        FpPoly::from_reduced(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> FpPoly {
        FpPoly::from_reduced(p, vec![c % p])
    }

    /// `c * x^k`.
    pub fn monomial(p: u64, k: usize, c: u64) -> FpPoly {
        let mut v = vec![0; k + 1];
        v[k] = c % p;
        FpPoly::from_reduced(p, v)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn leading_coeff(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn check_field(&self, other: &FpPoly) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_field(other)?;
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push((self.coeff(i) + other.coeff(i)) % self.p);
        }
        Ok(FpPoly::from_reduced(self.p, c))
    }

    pub fn sub(&self, other: &FpPoly) -> Result<FpPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FpPoly {
        let c = self.c.iter().map(|&x| (self.p - x) % self.p).collect();
        FpPoly::from_reduced(self.p, c)
    }

    pub fn mul(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FpPoly::zero(self.p));
        }
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                let t = (a as u128 * b as u128 + c[i + j] as u128) % self.p as u128;
                c[i + j] = t as u64;
            }
        }
        Ok(FpPoly::from_reduced(self.p, c))
    }

    pub fn mul_const(&self, k: u64) -> FpPoly {
        let k = k % self.p;
        let c = self
            .c
            .iter()
            .map(|&x| ((x as u128 * k as u128) % self.p as u128) as u64)
            .collect();
        FpPoly::from_reduced(self.p, c)
    }

    fn inv_mod_p(&self, x: u64) -> u64 {
        // Fermat inverse; p is prime and x nonzero mod p.
        debug_assert!(!x.is_multiple_of(self.p));
        let mut acc = 1u64;
        let mut base = x % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * base as u128) % self.p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % self.p as u128) as u64;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = divisor.c.len() - 1;
        if self.c.len() < divisor.c.len() {
            return Ok((FpPoly::zero(self.p), self.clone()));
        }
        let lc_inv = self.inv_mod_p(divisor.leading_coeff());
        let mut rem = self.c.clone();
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = ((rem[i] as u128 * lc_inv as u128) % self.p as u128) as u64;
            quo[i - dd] = q;
            for (j, &b) in divisor.c.iter().enumerate() {
                let sub = (q as u128 * b as u128) % self.p as u128;
                let idx = i - dd + j;
                rem[idx] = ((rem[idx] as u128 + self.p as u128 - sub) % self.p as u128) as u64;
            }
        }
        rem.truncate(dd);
        Ok((
            FpPoly::from_reduced(self.p, quo),
            FpPoly::from_reduced(self.p, rem),
        ))
    }

    pub fn rem(&self, divisor: &FpPoly) -> Result<FpPoly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Scales by the inverse of the leading coefficient; returns the unit
    /// and the monic polynomial. The zero polynomial is returned unchanged
    /// with unit `1`.
    pub fn make_monic(&self) -> (u64, FpPoly) {
        let lc = self.leading_coeff();
        if lc == 0 || lc == 1 {
            return (1, self.clone());
        }
        (lc, self.mul_const(self.inv_mod_p(lc)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic().1)
    }

    /// Extended Euclid: returns `(g, s, t)` with `g` monic (or zero) and
    /// `s * self + t * other = g`.
    pub fn ext_gcd(&self, other: &FpPoly) -> Result<(FpPoly, FpPoly, FpPoly)> {
        self.check_field(other)?;
        let p = self.p;
        let (mut a, mut b) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !b.is_zero() {
            let (q, r) = a.divmod(&b)?;
            let s2 = s0.sub(&q.mul(&s1)?)?;
            let t2 = t0.sub(&q.mul(&t1)?)?;
            a = b;
            b = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let (unit, g) = a.make_monic();
        if unit != 1 {
            let inv = self.inv_mod_p(unit);
            s0 = s0.mul_const(inv);
            t0 = t0.mul_const(inv);
        }
        Ok((g, s0, t0))
    }

    pub fn derivative(&self) -> FpPoly {
        if self.c.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let c = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, &x)| ((x as u128 * (i as u128 + 1)) % self.p as u128) as u64)
            .collect();
        FpPoly::from_reduced(self.p, c)
    }

    pub fn eval(&self, t: u64) -> u64 {
        let t = (t % self.p) as u128;
        let mut acc = 0u128;
        for &x in self.c.iter().rev() {
            acc = (acc * t + x as u128) % self.p as u128;
        }
        acc as u64
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, e: &BigInt, modulus: &FpPoly) -> Result<FpPoly> {
        self.check_field(modulus)?;
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("modulus must be nonconstant".into()));
        }
        let mut acc = FpPoly::one(self.p);
        let mut base = self.rem(modulus)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            if i + 1 < bits {
                base = base.mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// A nonzero polynomial is separable when it shares no factor with its
    /// derivative.
    pub fn is_separable(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).map(|g| g.is_one()).unwrap_or(false)
    }

    /// Monic irreducible factors of the monic normalization, with
    /// multiplicities, in canonical order.
    pub fn factor(&self) -> Result<Vec<(FpPoly, u32)>> {
        let ctx = Fq::prime_field(self.p)?;
        let lifted = FqPoly::from_base(
            &ctx,
            self.c
                .iter()
                .map(|&x| FpPoly::constant(self.p, x))
                .collect(),
        )?;
        let factors = lifted.factor()?;
        factors
            .into_iter()
            .map(|(f, m)| {
                let c = f.c.iter().map(|e| e.coeff(0)).collect::<Vec<_>>();
                Ok((FpPoly::from_reduced(self.p, c), m))
            })
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => match self.factor() {
                Ok(fs) => fs.len() == 1 && fs[0].1 == 1 && fs[0].0.degree() == Some(d),
                Err(_) => false,
            },
        }
    }

    /// Roots in `F_p`, in increasing order (without multiplicity).
    pub fn roots(&self) -> Result<Vec<u64>> {
        let mut out: Vec<u64> = self
            .factor()?
            .into_iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| (self.p - f.coeff(0)) % self.p)
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Integer coefficients lifted to the least-absolute-value range, with
    /// the tie at `p/2` broken downward — except for the leading
    /// coefficient, which lifts upward so monic polynomials stay monic.
    pub fn lift_symmetric(&self) -> Vec<BigInt> {
        let last = self.c.len().saturating_sub(1);
        self.c
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let shift = if i == last { 2 * x > self.p } else { 2 * x >= self.p };
                if shift {
                    BigInt::from(x) - BigInt::from(self.p)
                } else {
                    BigInt::from(x)
                }
            })
            .collect()
    }

    /// Renders with the given variable name, highest-degree term first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &x) in self.c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let term = match (i, x) {
                (0, _) => format!("{x}"),
                (1, 1) => var.to_string(),
                (1, _) => format!("{x}{var}"),
                (_, 1) => format!("{var}^{i}"),
                (_, _) => format!("{x}{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// A finite field `F_q = F_p[a]/(g)` for a monic irreducible `g`; when
/// `g = a` this is `F_p` itself. Elements are reduced `FpPoly` values of
/// degree below `deg g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    g: FpPoly,
}

impl Fq {
    /// Field extension defined by a monic irreducible polynomial.
    pub fn new(g: FpPoly) -> Result<Fq> {
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = g.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::InvalidArgument("modulus must be nonconstant".into()));
        }
        if d > 1 && !g.is_irreducible() {
            return Err(Error::InvalidArgument(format!(
                "modulus {g} is reducible"
            )));
        }
        Ok(Fq { p: g.modulus(), g })
    }

    /// The prime field `F_p`, presented with modulus `a`.
    pub fn prime_field(p: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        Ok(Fq { p, g: FpPoly::x(p) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus_poly(&self) -> &FpPoly {
        &self.g
    }

    /// Extension degree `m`, so `q = p^m`.
    pub fn ext_degree(&self) -> usize {
        self.g.degree().unwrap()
    }

    /// Field size `q = p^m`.
    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.ext_degree() as u32)
    }

    pub fn zero(&self) -> FpPoly {
        FpPoly::zero(self.p)
    }

    pub fn one(&self) -> FpPoly {
        FpPoly::one(self.p)
    }

    /// The class of `a` (the generator of the extension).
    pub fn gen(&self) -> FpPoly {
        FpPoly::x(self.p).rem(&self.g).unwrap()
    }

    pub fn from_u64(&self, c: u64) -> FpPoly {
        FpPoly::constant(self.p, c)
    }

    pub fn reduce(&self, a: &FpPoly) -> Result<FpPoly> {
        a.rem(&self.g)
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
        a.add(b)
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
        a.sub(b)
    }

    pub fn neg(&self, a: &FpPoly) -> FpPoly {
        a.neg()
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
        a.mul(b)?.rem(&self.g)
    }

    pub fn inv(&self, a: &FpPoly) -> Result<FpPoly> {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let (g, s, _) = a.ext_gcd(&self.g)?;
        if !g.is_one() {
            return Err(Error::InvalidArgument(
                "element is not invertible".into(),
            ));
        }
        s.rem(&self.g)
    }

    pub fn pow(&self, a: &FpPoly, e: &BigInt) -> Result<FpPoly> {
        if e.is_zero() {
            return Ok(self.one());
        }
        a.pow_mod(e, &self.g)
    }

    /// The unique p-th root of an element: `a^(q/p)`.
    pub fn pth_root(&self, a: &FpPoly) -> Result<FpPoly> {
        let e = BigInt::from(self.p).pow(self.ext_degree() as u32 - 1);
        self.pow(a, &e)
    }
}

/// A polynomial in `y` with coefficients in an `Fq` context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqPoly {
    ctx: Fq,
    c: Vec<FpPoly>,
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.c.len(), &self.c).cmp(&(other.c.len(), &other.c))
    }
}

impl FqPoly {
    /// Builds a polynomial from coefficients (constant term first); each is
    /// reduced into the field.
    pub fn from_base(ctx: &Fq, coeffs: Vec<FpPoly>) -> Result<FqPoly> {
        let mut c = Vec::with_capacity(coeffs.len());
        for x in coeffs {
            if x.modulus() != ctx.p {
                return Err(Error::FieldMismatch);
            }
            c.push(ctx.reduce(&x)?);
        }
        while c.last().map(|x| x.is_zero()) == Some(true) {
            c.pop();
        }
        Ok(FqPoly { ctx: ctx.clone(), c })
    }

    /// Builds a polynomial over `F_p` (as the trivial extension) from
    /// unsigned residues.
    pub fn from_residues(ctx: &Fq, coeffs: &[u64]) -> Result<FqPoly> {
        FqPoly::from_base(
            ctx,
            coeffs.iter().map(|&x| ctx.from_u64(x)).collect(),
        )
    }

    pub fn zero(ctx: &Fq) -> FqPoly {
        FqPoly { ctx: ctx.clone(), c: Vec::new() }
    }

    pub fn one(ctx: &Fq) -> FqPoly {
        FqPoly { ctx: ctx.clone(), c: vec![ctx.one()] }
    }

    /// The monomial `y`.
    pub fn y(ctx: &Fq) -> FqPoly {
        FqPoly { ctx: ctx.clone(), c: vec![ctx.zero(), ctx.one()] }
    }

    pub fn constant(ctx: &Fq, a: FpPoly) -> Result<FqPoly> {
        FqPoly::from_base(ctx, vec![a])
    }

    pub fn context(&self) -> &Fq {
        &self.ctx
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FpPoly {
        self.c.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn coeffs(&self) -> &[FpPoly] {
        &self.c
    }

    pub fn leading_coeff(&self) -> FpPoly {
        self.c.last().cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().map(|x| x.is_one()) == Some(true)
    }

    fn check_ctx(&self, other: &FqPoly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn normalized(ctx: &Fq, mut c: Vec<FpPoly>) -> FqPoly {
        while c.last().map(|x| x.is_zero()) == Some(true) {
            c.pop();
        }
        FqPoly { ctx: ctx.clone(), c }
    }

    pub fn add(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check_ctx(other)?;
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(FqPoly::normalized(&self.ctx, c))
    }

    pub fn sub(&self, other: &FqPoly) -> Result<FqPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FqPoly {
        let c = self.c.iter().map(|x| x.neg()).collect();
        FqPoly::normalized(&self.ctx, c)
    }

    pub fn mul(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FqPoly::zero(&self.ctx));
        }
        let mut c = vec![self.ctx.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                let t = self.ctx.mul(a, b)?;
                c[i + j] = c[i + j].add(&t)?;
            }
        }
        Ok(FqPoly::normalized(&self.ctx, c))
    }

    pub fn mul_elem(&self, k: &FpPoly) -> Result<FqPoly> {
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(self.ctx.mul(x, k)?);
        }
        Ok(FqPoly::normalized(&self.ctx, c))
    }

    /// Euclidean division by a polynomial with invertible leading
    /// coefficient.
    pub fn divmod(&self, divisor: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        self.check_ctx(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = divisor.c.len() - 1;
        if self.c.len() < divisor.c.len() {
            return Ok((FqPoly::zero(&self.ctx), self.clone()));
        }
        let lc_inv = self.ctx.inv(&divisor.leading_coeff())?;
        let mut rem = self.c.clone();
        let mut quo = vec![self.ctx.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = self.ctx.mul(&rem[i], &lc_inv)?;
            for (j, b) in divisor.c.iter().enumerate() {
                let t = self.ctx.mul(&q, b)?;
                rem[i - dd + j] = rem[i - dd + j].sub(&t)?;
            }
            quo[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((
            FqPoly::normalized(&self.ctx, quo),
            FqPoly::normalized(&self.ctx, rem),
        ))
    }

    pub fn rem(&self, divisor: &FqPoly) -> Result<FqPoly> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn div_exact(&self, divisor: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotAFactor(format!("{divisor}")))
        }
    }

    /// Returns the leading unit and the monic normalization.
    pub fn make_monic(&self) -> Result<(FpPoly, FqPoly)> {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return Ok((self.ctx.one(), self.clone()));
        }
        let inv = self.ctx.inv(&lc)?;
        Ok((lc, self.mul_elem(&inv)?))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check_ctx(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic()?.1)
    }

    pub fn derivative(&self) -> FqPoly {
        if self.c.len() <= 1 {
            return FqPoly::zero(&self.ctx);
        }
        let p = self.ctx.p;
        let c = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, x)| x.mul_const(((i as u128 + 1) % p as u128) as u64))
            .collect();
        FqPoly::normalized(&self.ctx, c)
    }

    pub fn pow_mod(&self, e: &BigInt, modulus: &FqPoly) -> Result<FqPoly> {
        self.check_ctx(modulus)?;
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("modulus must be nonconstant".into()));
        }
        let mut acc = FqPoly::one(&self.ctx);
        let mut base = self.rem(modulus)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            if i + 1 < bits {
                base = base.mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn is_separable(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).map(|g| g.is_one()).unwrap_or(false)
    }

    pub fn eval(&self, t: &FpPoly) -> Result<FpPoly> {
        let mut acc = self.ctx.zero();
        for x in self.c.iter().rev() {
            acc = self.ctx.mul(&acc, t)?.add(x)?;
        }
        Ok(acc)
    }

    /// Coefficient-wise p-th root of a polynomial of the form `g(y^p)`.
    fn pth_root_poly(&self) -> Result<FqPoly> {
        let p = self.ctx.p as usize;
        let mut c = Vec::with_capacity(self.c.len() / p + 1);
        for (i, x) in self.c.iter().enumerate() {
            if i % p == 0 {
                c.push(self.ctx.pth_root(x)?);
            } else if !x.is_zero() {
                return Err(Error::InvalidArgument(
                    "polynomial is not a p-th power composition".into(),
                ));
            }
        }
        Ok(FqPoly::normalized(&self.ctx, c))
    }

    /// Splits a monic polynomial into pairwise-coprime monic squarefree
    /// parts with their multiplicities.
    fn squarefree_parts(&self) -> Result<Vec<(FqPoly, u32)>> {
        let mut out = Vec::new();
        let mut stack = vec![(self.clone(), 1u32)];
        while let Some((f, scale)) = stack.pop() {
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            let fd = f.derivative();
            if fd.is_zero() {
                stack.push((f.pth_root_poly()?, scale * self.ctx.p as u32));
                continue;
            }
            let mut c = f.gcd(&fd)?;
            let mut w = f.div_exact(&c)?;
            let mut i = 1u32;
            while w.degree().unwrap_or(0) > 0 {
                let y = w.gcd(&c)?;
                let z = w.div_exact(&y)?;
                if z.degree().unwrap_or(0) > 0 {
                    out.push((z, i * scale));
                }
                c = c.div_exact(&y)?;
                w = y;
                i += 1;
            }
            if c.degree().unwrap_or(0) > 0 {
                stack.push((c.pth_root_poly()?, scale * self.ctx.p as u32));
            }
        }
        Ok(out)
    }

    /// Distinct-degree split of a monic squarefree polynomial: returns
    /// `(product of all irreducible factors of degree d, d)` pairs.
    fn distinct_degree_parts(&self) -> Result<Vec<(FqPoly, usize)>> {
        let q = self.ctx.order();
        let mut out = Vec::new();
        let mut f = self.clone();
        let y = FqPoly::y(&self.ctx);
        let mut h = y.rem(&f)?;
        let mut d = 0usize;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&q, &f)?;
            let g = f.gcd(&h.sub(&y.rem(&f)?)?)?;
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), d));
                f = f.div_exact(&g)?;
                h = h.rem(&f)?;
            }
        }
        if f.degree().unwrap_or(0) > 0 {
            let d = f.degree().unwrap();
            out.push((f, d));
        }
        Ok(out)
    }

    /// Equal-degree split of a monic squarefree product of irreducibles all
    /// of degree `d`.
    fn equal_degree_split(&self, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FqPoly>> {
        let deg = self.degree().unwrap_or(0);
        if deg == d {
            return Ok(vec![self.clone()]);
        }
        let p = self.ctx.p;
        let m = self.ctx.ext_degree();
        loop {
            let rc: Vec<FpPoly> = (0..deg)
                .map(|_| {
                    let coeffs: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
                    FpPoly::from_reduced(p, coeffs)
                })
                .collect();
            let r = FqPoly::normalized(&self.ctx, rc);
            if r.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut t = self.gcd(&r)?;
            if t.degree().unwrap_or(0) == 0 || t.degree() == self.degree() {
                let s = if p == 2 {
                    // Trace map over F_2: r + r^2 + r^4 + ... has degree
                    // d * m worth of summands.
                    let mut acc = r.rem(self)?;
                    let mut cur = r.rem(self)?;
                    for _ in 1..(d * m) {
                        cur = cur.mul(&cur.clone())?.rem(self)?;
                        acc = acc.add(&cur)?;
                    }
                    acc
                } else {
                    let e = (self.ctx.order().pow(d as u32) - BigInt::one()) / BigInt::from(2);
                    let s = r.pow_mod(&e, self)?;
                    s.sub(&FqPoly::one(&self.ctx))?
                };
                t = self.gcd(&s)?;
            }
            let td = t.degree().unwrap_or(0);
            if td == 0 || td == deg {
                continue;
            }
            let rest = self.div_exact(&t)?;
            let mut out = t.equal_degree_split(d, rng)?;
            out.extend(rest.equal_degree_split(d, rng)?);
            return Ok(out);
        }
    }

    /// Monic irreducible factors of the monic normalization, with
    /// multiplicities, sorted by degree and then coefficients.
    pub fn factor(&self) -> Result<Vec<(FqPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (_, monic) = self.make_monic()?;
        if monic.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out = Vec::new();
        for (part, mult) in monic.squarefree_parts()? {
            for (prod, d) in part.distinct_degree_parts()? {
                for irr in prod.equal_degree_split(d, &mut rng)? {
                    out.push((irr, mult));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => match self.factor() {
                Ok(fs) => fs.len() == 1 && fs[0].1 == 1 && fs[0].0.degree() == Some(d),
                Err(_) => false,
            },
        }
    }

    /// Roots in the coefficient field, in canonical order, each paired with
    /// its multiplicity.
    pub fn roots(&self) -> Result<Vec<(FpPoly, u32)>> {
        let mut out: Vec<(FpPoly, u32)> = self
            .factor()?
            .into_iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, m)| (f.coeff(0).neg(), m))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Renders with `y` as the variable and `a` for the extension
    /// generator, highest-degree term first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, x) in self.c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let coeff = x.render("a");
            let needs_parens = i > 0
                && x.coeffs().iter().filter(|&&c| c != 0).count() > 1;
            let coeff = if needs_parens { format!("({coeff})") } else { coeff };
            let term = match i {
                0 => coeff,
                _ => {
                    let power = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if x.is_one() {
                        power
                    } else {
                        format!("{coeff}{power}")
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("y"))
    }
}

/// Number of distinct monic irreducible degree-`m` factors of `x^s + t`
/// over `F_p`.
pub fn count_binomial_factors(p: u64, m: u32, s: u64, t: &BigInt) -> Result<u64> {
    if s == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut coeffs = vec![BigInt::zero(); s as usize + 1];
    coeffs[0] = t.clone();
    coeffs[s as usize] = BigInt::one();
    let f = FpPoly::from_bigints(p, &coeffs)?;
    Ok(f.factor()?
        .iter()
        .filter(|(g, _)| g.degree() == Some(m as usize))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c).unwrap()
    }

    #[test]
    fn constructors_reduce_and_trim() {
        let f = fp(5, &[7, -3, 10, 0, 0]);
        assert_eq!(f.coeffs(), &[2, 2]);
        assert_eq!(f.degree(), Some(1));
        assert!(FpPoly::new(6, &[1]).is_err());
        assert!(fp(5, &[0]).is_zero());
        assert_eq!(FpPoly::zero(3).degree(), None);
    }

    #[test]
    fn divmod_reconstructs() {
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for p in [2u64, 3, 5, 31] {
            for _ in 0..100 {
                let a: Vec<i64> = (0..8).map(|_| (next() % p) as i64).collect();
                let b: Vec<i64> = (0..4).map(|_| (next() % p) as i64).collect();
                let a = fp(p, &a);
                let b = fp(p, &b);
                if b.is_zero() {
                    assert!(a.divmod(&b).is_err());
                    continue;
                }
                let (q, r) = a.divmod(&b).unwrap();
                assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
                assert!(r.degree().map(|d| d < b.degree().unwrap()).unwrap_or(true));
            }
        }
    }

    #[test]
    fn gcd_divides_common_multiples() {
        let p = 7;
        let f = fp(p, &[1, 0, 1]);
        let g = fp(p, &[2, 1]);
        let h = fp(p, &[3, 0, 0, 1]);
        let fg = f.mul(&g).unwrap();
        let fh = f.mul(&h).unwrap();
        let d = fg.gcd(&fh).unwrap();
        assert!(d.is_monic());
        assert!(fg.divmod(&d).unwrap().1.is_zero());
        assert!(fh.divmod(&d).unwrap().1.is_zero());
        // f is monic irreducible over F_7 (no roots of x^2 + 1 since -1 is
        // a non-residue mod 7), so the gcd is exactly f.
        assert_eq!(d, f);
    }

    #[test]
    fn ext_gcd_bezout() {
        let p = 5;
        let a = fp(p, &[1, 2, 3]);
        let b = fp(p, &[4, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        let lhs = s.mul(&a).unwrap().add(&t.mul(&b).unwrap()).unwrap();
        assert_eq!(lhs, g);
    }

    #[test]
    fn factor_eighth_roots_of_unity_mod_3() {
        // x^8 - 1 over F_3 splits as two linear and three quadratic
        // irreducible factors.
        let f = fp(3, &[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let factors = f.factor().unwrap();
        let rendered: Vec<(String, u32)> = factors
            .iter()
            .map(|(g, m)| (g.render("x"), *m))
            .collect();
        assert_eq!(
            rendered,
            vec![
                ("x + 1".to_string(), 1),
                ("x + 2".to_string(), 1),
                ("x^2 + 1".to_string(), 1),
                ("x^2 + x + 2".to_string(), 1),
                ("x^2 + 2x + 2".to_string(), 1),
            ]
        );
    }

    #[test]
    fn factor_pth_power_compositions() {
        // x^4 + 1 = (x + 1)^4 over F_2.
        let f = fp(2, &[1, 0, 0, 0, 1]);
        assert_eq!(f.factor().unwrap(), vec![(fp(2, &[1, 1]), 4)]);
        // x^5 over F_2.
        let f = fp(2, &[0, 0, 0, 0, 0, 1]);
        assert_eq!(f.factor().unwrap(), vec![(fp(2, &[0, 1]), 5)]);
        // x^2 + 1 = (x + 1)^2 over F_2.
        let f = fp(2, &[1, 0, 1]);
        assert_eq!(f.factor().unwrap(), vec![(fp(2, &[1, 1]), 2)]);
    }

    #[test]
    fn factor_reconstructs_random_inputs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for p in [2u64, 3, 5, 7, 31] {
            for _ in 0..60 {
                let deg = (next() % 8) as usize + 1;
                let mut coeffs: Vec<i64> = (0..=deg).map(|_| (next() % p) as i64).collect();
                if coeffs[deg] == 0 {
                    coeffs[deg] = 1;
                }
                let f = fp(p, &coeffs);
                let factors = f.factor().unwrap();
                let mut prod = FpPoly::constant(p, f.leading_coeff());
                let mut total = 0usize;
                for (g, m) in &factors {
                    assert!(g.is_monic());
                    assert!(g.is_irreducible(), "reducible factor {g} of {f} mod {p}");
                    for _ in 0..*m {
                        prod = prod.mul(g).unwrap();
                    }
                    total += g.degree().unwrap() * *m as usize;
                }
                assert_eq!(prod, f, "reconstruction of {f} mod {p}");
                assert_eq!(total, deg);
                let sorted: Vec<_> = {
                    let mut v = factors.clone();
                    v.sort();
                    v
                };
                assert_eq!(factors, sorted);
            }
        }
    }

    #[test]
    fn separability_and_roots() {
        assert!(!fp(2, &[0, 0, 0, 0, 0, 1]).is_separable()); // x^5
        assert!(!fp(2, &[1, 0, 0, 0, 1]).is_separable()); // (x+1)^4
        assert!(fp(3, &[2, 1, 1]).is_separable());
        assert!(fp(2, &[1, 1, 1]).is_separable());
        assert!(!FpPoly::zero(5).is_separable());

        // x^3 + 3x^2 + 2x = x(x+1)(x+2) over F_5 has roots 0, 3, 4.
        let f = fp(5, &[0, 2, 3, 1]);
        assert_eq!(f.roots().unwrap(), vec![0, 3, 4]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(fp(3, &[2, 1, 1]).is_irreducible()); // x^2 + x + 2
        assert!(fp(3, &[1, 0, 1]).is_irreducible()); // x^2 + 1
        assert!(!fp(3, &[2, 0, 1]).is_irreducible()); // x^2 + 2 = (x+1)(x+2)
        assert!(fp(3, &[1, 1]).is_irreducible()); // linear is irreducible
        assert!(!fp(3, &[2]).is_irreducible()); // constants are not
    }

    #[test]
    fn binomial_factor_counts() {
        use num_bigint::BigInt;
        // x + 161 mod 3 has one linear factor.
        assert_eq!(count_binomial_factors(3, 1, 1, &BigInt::from(161)).unwrap(), 1);
        // x^2 + 26 = (x+1)(x+2) mod 3.
        assert_eq!(count_binomial_factors(3, 1, 2, &BigInt::from(26)).unwrap(), 2);
        assert_eq!(count_binomial_factors(3, 2, 2, &BigInt::from(26)).unwrap(), 0);
        // x^2 + 1 is irreducible mod 3.
        assert_eq!(count_binomial_factors(3, 2, 2, &BigInt::from(1)).unwrap(), 1);
    }

    #[test]
    fn quartic_field_arithmetic() {
        // F_4 = F_2[a]/(a^2 + a + 1).
        let ctx = Fq::new(fp(2, &[1, 1, 1])).unwrap();
        assert_eq!(ctx.order(), BigInt::from(4));
        let alpha = ctx.gen();
        // a^2 = a + 1
        let sq = ctx.mul(&alpha, &alpha).unwrap();
        assert_eq!(sq, fp(2, &[1, 1]));
        // a * (a + 1) = 1
        let prod = ctx.mul(&alpha, &fp(2, &[1, 1])).unwrap();
        assert!(prod.is_one());
        assert_eq!(ctx.inv(&alpha).unwrap(), fp(2, &[1, 1]));
    }

    #[test]
    fn inverses_in_small_extensions() {
        // every nonzero element of F_8 and F_9 has a working inverse
        let f8 = Fq::new(fp(2, &[1, 1, 0, 1])).unwrap(); // a^3 + a + 1
        let f9 = Fq::new(fp(3, &[1, 0, 1])).unwrap(); // a^2 + 1
        for ctx in [f8, f9] {
            let p = ctx.p();
            let m = ctx.ext_degree();
            let total = (p as usize).pow(m as u32);
            for code in 1..total {
                let mut coeffs = Vec::new();
                let mut rest = code;
                for _ in 0..m {
                    coeffs.push((rest % p as usize) as i64);
                    rest /= p as usize;
                }
                let a = fp(p, &coeffs);
                let inv = ctx.inv(&a).unwrap();
                assert!(ctx.mul(&a, &inv).unwrap().is_one());
            }
        }
    }

    #[test]
    fn factor_over_quartic_field() {
        let ctx = Fq::new(fp(2, &[1, 1, 1])).unwrap();
        let alpha = ctx.gen();
        let one_plus_alpha = fp(2, &[1, 1]);

        // (1 + a) + a*y has the single root a (monic form y + a).
        let f = FqPoly::from_base(&ctx, vec![one_plus_alpha.clone(), alpha.clone()]).unwrap();
        let factors = f.factor().unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 1);
        assert_eq!(factors[0].0.render("y"), "y + a");
        assert_eq!(f.roots().unwrap(), vec![(alpha.clone(), 1)]);

        // y^2 + y + a is irreducible over F_4 (its trace to F_2 is 1).
        let g = FqPoly::from_base(&ctx, vec![alpha.clone(), ctx.one(), ctx.one()]).unwrap();
        assert!(g.is_irreducible());

        // y^2 + y + 1 = (y + a)(y + a + 1) over F_4.
        let h = FqPoly::from_residues(&ctx, &[1, 1, 1]).unwrap();
        let hf = h.factor().unwrap();
        assert_eq!(hf.len(), 2);
        assert_eq!(hf[0].0.render("y"), "y + a");
        assert_eq!(hf[1].0.render("y"), "y + a + 1");

        // reconstruction over the extension
        let prod = hf[0].0.mul(&hf[1].0).unwrap();
        assert_eq!(prod, h);
    }

    #[test]
    fn fq_poly_factor_reconstructs_random_inputs() {
        let ctx = Fq::new(fp(2, &[1, 1, 1])).unwrap();
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let deg = (next() % 6) as usize + 1;
            let mut coeffs: Vec<FpPoly> = (0..=deg)
                .map(|_| fp(2, &[(next() % 2) as i64, (next() % 2) as i64]))
                .collect();
            if coeffs[deg].is_zero() {
                coeffs[deg] = ctx.one();
            }
            let f = FqPoly::from_base(&ctx, coeffs).unwrap();
            let factors = f.factor().unwrap();
            let mut prod = FqPoly::constant(&ctx, f.leading_coeff()).unwrap();
            for (g, m) in &factors {
                assert!(g.is_monic());
                for _ in 0..*m {
                    prod = prod.mul(g).unwrap();
                }
            }
            assert_eq!(prod, f);
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(fp(5, &[1, 2, 1]).render("y"), "y^2 + 2y + 1");
        assert_eq!(fp(2, &[1, 1, 1]).render("y"), "y^2 + y + 1");
        assert_eq!(FpPoly::zero(3).render("x"), "0");
        assert_eq!(fp(7, &[0, 3]).render("x"), "3x");
        let ctx = Fq::new(fp(2, &[1, 1, 1])).unwrap();
        let f = FqPoly::from_base(&ctx, vec![fp(2, &[1, 1]), ctx.gen()]).unwrap();
        assert_eq!(f.render("y"), "ay + a + 1");
    }
}
