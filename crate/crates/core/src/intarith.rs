//! Exact integer arithmetic helpers: p-adic valuations, residue units,
//! binomial valuations, the Moebius function and counts of monic
//! irreducible polynomials over prime fields.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers (reduced, positive denominator).
pub type ExactRational = num_rational::Ratio<BigInt>;

/// A p-adic valuation: either a finite non-negative integer or the
/// valuation of zero. `Finite(a) < Infinity` for every `a`, and finite
/// values order as integers, so the derived ordering is the usual one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinity,
}

impl Valuation {
    /// Returns the finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// Valuation of a product.
    pub fn plus(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::CompositeModulus(p))
    }
}

/// The p-adic valuation of `t`, with `vp(0) = Infinity`.
pub fn vp(t: &BigInt, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if t.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let p_big = BigInt::from(p);
    let mut v = 0u64;
    let mut t = t.abs();
    loop {
        let (q, r) = t.div_rem(&p_big);
        if !r.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        v += 1;
        t = q;
    }
}

/// The residue unit of a nonzero `t`: `(t / p^{vp(t)}) mod p`, in `1..p`.
pub fn residue_unit(t: &BigInt, p: u64) -> Result<u64> {
    require_prime(p)?;
    if t.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let p_big = BigInt::from(p);
    let mut t = t.clone();
    loop {
        let (q, r) = t.div_rem(&p_big);
        if !r.is_zero() {
            let m = t.mod_floor(&p_big);
            // mod_floor of a nonzero non-multiple is in 1..p
            return Ok(u64::try_from(&m).expect("residue fits in u64"));
        }
        t = q;
    }
}

/// Valuation of the binomial coefficient `C(p^r, j)` for `0 <= j <= p^r`:
/// zero at the endpoints and `r - vp(j)` in between.
pub fn vp_binomial(p: u64, r: u32, j: &BigInt) -> Result<Valuation> {
    require_prime(p)?;
    if j.is_negative() {
        return Err(Error::InvalidArgument(format!("j = {j} out of range")));
    }
    let pr = BigInt::from(p).pow(r);
    if j > &pr {
        return Err(Error::InvalidArgument(format!("j = {j} exceeds p^r")));
    }
    if j.is_zero() || j == &pr {
        return Ok(Valuation::Finite(0));
    }
    match vp(j, p)? {
        Valuation::Finite(v) => Ok(Valuation::Finite(r as u64 - v)),
        Valuation::Infinity => unreachable!("nonzero j"),
    }
}

/// Moebius function for `n >= 1`.
pub fn moebius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut n = n;
    let mut factors = 0u32;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(0);
            }
            factors += 1;
        }
        d += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors.is_multiple_of(2) { 1 } else { -1 })
}

/// Divisors of `n >= 1` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Number of monic irreducible polynomials of degree `m` over `F_p`:
/// `N_p(m) = (1/m) * sum_{d | m} mu(d) p^{m/d}`.
pub fn count_irreducibles(p: u64, m: u32) -> Result<BigInt> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut total = BigInt::zero();
    for d in divisors(m as u64) {
        let mu = moebius(d)?;
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(p).pow((m as u64 / d) as u32);
        if mu > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let (q, r) = total.div_rem(&BigInt::from(m));
    debug_assert!(r.is_zero(), "irreducible count divides exactly");
    Ok(q)
}

/// Primes below `bound`, in increasing order (simple sieve).
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound <= 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

/// Partial factorization by trial division with primes `< bound`, followed
/// by a primality check on the leftover. Returns the prime factorization
/// found and the unfactored remainder (`1` when complete).
pub fn trial_factor(t: &BigInt, bound: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut rest = t.abs();
    let mut out = Vec::new();
    if rest.is_zero() || rest.is_one() {
        return (out, rest);
    }
    for p in primes_below(bound) {
        let p_big = BigInt::from(p);
        if (&p_big * &p_big) > rest {
            break;
        }
        let mut mult = 0u32;
        loop {
            let (q, r) = rest.div_rem(&p_big);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((p, mult));
        }
    }
    if rest > BigInt::one() {
        if let Ok(small) = u64::try_from(&rest) {
            if is_prime(small) {
                out.push((small, 1));
                rest = BigInt::one();
            }
        }
    }
    (out, rest)
}
