use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponents below this conductor are reduced in a dense scratch buffer.
const DENSE_LIMIT: u32 = 1 << 13;

/// Φ_N stored as x^phi + Σ low, so that x^phi ≡ -Σ low.
pub(crate) struct Cyclo {
    pub phi: u32,
    pub low: Vec<(u32, BigInt)>,
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Cyclo>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Cyclo>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u32) -> u32 {
    let mut phi = n as u64;
    for p in prime_factors(n as u64) {
        phi = phi / p * (p - 1);
    }
    phi as u32
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn mobius(n: u32) -> i32 {
    let mut m = n as u64;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Dense coefficients of Φ_r for squarefree r, via Π_{d|r} (x^d - 1)^μ(r/d).
fn squarefree_cyclotomic(r: u32) -> Vec<BigInt> {
    let divisors: Vec<u32> = (1..=r).filter(|d| r % d == 0).collect();
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(r / d) == 1 {
            let d = d as usize;
            let mut q = vec![BigInt::zero(); p.len() + d];
            for (i, c) in p.iter().enumerate() {
                q[i + d] += c;
                q[i] -= c;
            }
            p = q;
        }
    }
    for &d in &divisors {
        if mobius(r / d) == -1 {
            let d = d as usize;
            let qlen = p.len() - d;
            let mut q = vec![BigInt::zero(); qlen];
            for i in 0..qlen {
                let prev = if i >= d { q[i - d].clone() } else { BigInt::zero() };
                q[i] = prev - &p[i];
            }
            p = q;
        }
    }
    p
}

pub(crate) fn cyclo(n: u32) -> Arc<Cyclo> {
    if let Some(c) = cache().lock().unwrap().get(&n) {
        return c.clone();
    }
    let primes = prime_factors(n as u64);
    let rad: u32 = primes.iter().product::<u64>() as u32;
    let base = squarefree_cyclotomic(rad.max(1));
    let stretch = n / rad.max(1);
    let phi = euler_phi(n);
    let low = base
        .iter()
        .enumerate()
        .take(base.len() - 1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32 * stretch, c.clone()))
        .collect();
    let c = Arc::new(Cyclo { phi, low });
    cache().lock().unwrap().insert(n, c.clone());
    c
}

enum Accum {
    Dense(Vec<BigInt>),
    Sparse(BTreeMap<u32, BigInt>),
}

impl Accum {
    fn new(size: u32) -> Self {
        if size <= DENSE_LIMIT {
            Accum::Dense(vec![BigInt::zero(); size as usize])
        } else {
            Accum::Sparse(BTreeMap::new())
        }
    }

    fn add(&mut self, e: u32, c: BigInt) {
        match self {
            Accum::Dense(v) => v[e as usize] += c,
            Accum::Sparse(m) => {
                let slot = m.entry(e).or_insert_with(BigInt::zero);
                *slot += c;
                if slot.is_zero() {
                    m.remove(&e);
                }
            }
        }
    }

    fn reduce(self, n: u32) -> Vec<(u32, BigInt)> {
        let cy = cyclo(n);
        let phi = cy.phi;
        match self {
            Accum::Dense(mut v) => {
                for i in (phi as usize..v.len()).rev() {
                    if v[i].is_zero() {
                        continue;
                    }
                    let c = std::mem::take(&mut v[i]);
                    let shift = i - phi as usize;
                    for (j, a) in &cy.low {
                        v[shift + *j as usize] -= &c * a;
                    }
                }
                v.truncate(phi as usize);
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i as u32, c))
                    .collect()
            }
            Accum::Sparse(mut m) => {
                while let Some((&top, _)) = m.iter().next_back() {
                    if top < phi {
                        break;
                    }
                    let c = m.remove(&top).unwrap();
                    let shift = top - phi;
                    for (j, a) in &cy.low {
                        let e = shift + j;
                        let slot = m.entry(e).or_insert_with(BigInt::zero);
                        *slot -= &c * a;
                        if slot.is_zero() {
                            m.remove(&e);
                        }
                    }
                }
                m.into_iter().collect()
            }
        }
    }
}

/// An element Σ (c_e / den) ζ_N^e of ℚ(ζ_N) in the power basis modulo Φ_N.
#[derive(Clone)]
pub struct CycElement {
    n: u32,
    terms: Vec<(u32, BigInt)>,
    den: BigInt,
}

impl CycElement {
    fn from_parts(n: u32, terms: Vec<(u32, BigInt)>, den: BigInt) -> Self {
        let mut out = CycElement { n, terms, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        self.terms.retain(|(_, c)| !c.is_zero());
        if self.terms.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for (_, c) in self.terms.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for (_, c) in &self.terms {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for (_, c) in self.terms.iter_mut() {
                *c /= &g;
            }
        }
    }

    fn from_raw(n: u32, raw: impl IntoIterator<Item = (u64, BigInt)>, den: BigInt) -> Self {
        let phi = cyclo(n).phi as u64;
        let mut acc = Accum::new(n);
        let mut needs = false;
        for (e, c) in raw {
            let e = e % n as u64;
            needs |= e >= phi;
            acc.add(e as u32, c);
        }
        let terms = if needs {
            acc.reduce(n)
        } else {
            match acc {
                Accum::Dense(v) => v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i as u32, c))
                    .collect(),
                Accum::Sparse(m) => m.into_iter().collect(),
            }
        };
        Self::from_parts(n, terms, den)
    }

    /// Builds Σ q_e ζ_N^e from an exponent→rational list; exponents are taken mod N.
    pub fn new(n: u32, coeffs: &[(i64, BigRational)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        let mut den = BigInt::one();
        for (_, q) in coeffs {
            den = den.lcm(q.denom());
        }
        let raw = coeffs.iter().map(|(e, q)| {
            let e = e.rem_euclid(n as i64) as u64;
            (e, q.numer() * (&den / q.denom()))
        });
        Ok(Self::from_raw(n, raw.collect::<Vec<_>>(), den))
    }

    /// Integer-coefficient shorthand for `new`.
    pub fn from_ints(n: u32, coeffs: &[(i64, i64)]) -> Result<Self> {
        let q: Vec<(i64, BigRational)> = coeffs
            .iter()
            .map(|&(e, c)| (e, BigRational::from_integer(c.into())))
            .collect();
        Self::new(n, &q)
    }

    pub fn zero() -> Self {
        CycElement { n: 1, terms: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_parts(1, vec![(0, q.numer().clone())], q.denom().clone())
    }

    /// ζ_N^e for any integer e.
    pub fn zeta_pow(n: u32, e: i64) -> Self {
        assert!(n > 0, "conductor must be positive");
        let e = e.rem_euclid(n as i64) as u64;
        Self::from_raw(n, [(e, BigInt::one())], BigInt::one())
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn i() -> Self {
        Self::zeta(4)
    }

    pub fn omega8() -> Self {
        Self::zeta(8)
    }

    pub fn omega3() -> Self {
        Self::zeta(3)
    }

    /// ζ₈ + ζ₈⁷
    pub fn sqrt2() -> Self {
        Self::zeta_pow(8, 1) + Self::zeta_pow(8, 7)
    }

    /// 1 + 2(ζ₅ + ζ₅⁴)
    pub fn sqrt5() -> Self {
        Self::from_ints(5, &[(0, 1), (1, 2), (4, 2)]).unwrap()
    }

    /// cos(2π/N) = (ζ_N + ζ_N^{-1}) / 2
    pub fn cos_2pi_over(n: u32) -> Self {
        (Self::zeta_pow(n, 1) + Self::zeta_pow(n, -1)).scale(&BigRational::new(1.into(), 2.into()))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        cyclo(self.n).phi
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn common_denominator(&self) -> &BigInt {
        &self.den
    }

    /// Rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, c)] => Some(BigRational::new(c.clone(), self.den.clone())),
            _ => None,
        }
    }

    /// Nonzero power-basis coefficients, sorted by exponent.
    pub fn coeffs(&self) -> Vec<(u32, BigRational)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    /// Rewrites the element over ℚ(ζ_M); requires N | M.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m == self.n {
            return Ok(self.clone());
        }
        if m == 0 || m % self.n != 0 {
            return Err(Error::ConductorMismatch { have: self.n, want: m });
        }
        let s = (m / self.n) as u64;
        let raw = self.terms.iter().map(|(e, c)| (*e as u64 * s, c.clone()));
        Ok(Self::from_raw(m, raw.collect::<Vec<_>>(), self.den.clone()))
    }

    fn lift_unchecked(&self, m: u32) -> Self {
        self.lift(m).expect("conductor divides target")
    }

    fn common(a: &Self, b: &Self) -> (u32, Self, Self) {
        let m = lcm(a.n, b.n);
        (m, a.lift_unchecked(m), b.lift_unchecked(m))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, c * q.numer())).collect();
        Self::from_parts(self.n, terms, &self.den * q.denom())
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg_impl() } else { other.clone() };
        }
        let (m, a, b) = if self.n == other.n {
            (self.n, self.clone(), other.clone())
        } else {
            Self::common(self, other)
        };
        let den = a.den.lcm(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let mut merged: Vec<(u32, BigInt)> = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let take_a = j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
            let take_b = i >= a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
            if take_a {
                merged.push((a.terms[i].0, &a.terms[i].1 * &fa));
                i += 1;
            } else if take_b {
                let c = &b.terms[j].1 * &fb;
                merged.push((b.terms[j].0, if negate { -c } else { c }));
                j += 1;
            } else {
                let cb = &b.terms[j].1 * &fb;
                let c = &a.terms[i].1 * &fa + if negate { -cb } else { cb };
                merged.push((a.terms[i].0, c));
                i += 1;
                j += 1;
            }
        }
        Self::from_parts(m, merged, den)
    }

    fn neg_impl(&self) -> Self {
        CycElement {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            den: self.den.clone(),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(q) = other.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.scale(&q);
        }
        let (m, a, b) = if self.n == other.n {
            (self.n, self.clone(), other.clone())
        } else {
            Self::common(self, other)
        };
        let top = a.terms.last().unwrap().0 + b.terms.last().unwrap().0;
        let mut acc = Accum::new(top + 1);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                acc.add(ea + eb, ca * cb);
            }
        }
        Self::from_parts(m, acc.reduce(m), &a.den * &b.den)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            let q = BigRational::new(self.den.clone(), c.clone());
            let z = Self::zeta_pow(self.n, -(*e as i64));
            return Ok(z.scale(&q));
        }
        Ok(self.inv_euclid())
    }

    fn inv_euclid(&self) -> Self {
        type P = Vec<BigRational>;
        fn trim(p: &mut P) {
            while p.last().is_some_and(|c| c.is_zero()) {
                p.pop();
            }
        }
        fn divrem(a: &P, b: &P) -> (P, P) {
            let mut r = a.clone();
            let db = b.len() - 1;
            let lead = b[db].clone();
            if r.len() < b.len() {
                return (vec![], r);
            }
            let mut q = vec![BigRational::zero(); r.len() - db];
            for i in (db..r.len()).rev() {
                if r[i].is_zero() {
                    continue;
                }
                let f = &r[i] / &lead;
                for (j, bj) in b.iter().enumerate() {
                    let t = &f * bj;
                    r[i - db + j] -= t;
                }
                q[i - db] = f;
            }
            trim(&mut r);
            trim(&mut q);
            (q, r)
        }
        fn sub_mul(a: &P, q: &P, t: &P) -> P {
            let mut out = a.clone();
            let len = q.len() + t.len();
            if out.len() < len {
                out.resize(len, BigRational::zero());
            }
            for (i, qi) in q.iter().enumerate() {
                for (j, tj) in t.iter().enumerate() {
                    out[i + j] -= qi * tj;
                }
            }
            trim(&mut out);
            out
        }
        let cy = cyclo(self.n);
        let phi = cy.phi as usize;
        let mut modulus: P = vec![BigRational::zero(); phi + 1];
        modulus[phi] = BigRational::one();
        for (j, a) in &cy.low {
            modulus[*j as usize] = BigRational::from_integer(a.clone());
        }
        let mut a: P = vec![BigRational::zero(); phi];
        for (e, c) in &self.terms {
            a[*e as usize] = BigRational::new(c.clone(), self.den.clone());
        }
        trim(&mut a);
        let (mut r0, mut r1) = (modulus, a);
        let (mut t0, mut t1): (P, P) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let t2 = sub_mul(&t0, &q, &t1);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let c = r0[0].clone();
        let coeffs: Vec<(i64, BigRational)> =
            t0.into_iter().enumerate().map(|(i, x)| (i as i64, x / &c)).collect();
        Self::new(self.n, &coeffs).expect("nonzero conductor")
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// σ_k : ζ_N ↦ ζ_N^k at the element's own conductor; k must be a unit mod N.
    pub(crate) fn galois_raw(&self, k: u64) -> Self {
        let n = self.n as u64;
        let k = k % n;
        if n <= 2 || k == 1 {
            return self.clone();
        }
        let raw = self.terms.iter().map(|(e, c)| ((*e as u64 * k) % n, c.clone()));
        Self::from_raw(self.n, raw.collect::<Vec<_>>(), self.den.clone())
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois_raw(self.n as u64 - 1)
    }

    /// Smallest conductor dividing N over which the element is still expressible.
    pub fn reduced_conductor(&self) -> u32 {
        self.simplify().n
    }

    fn try_lower(&self, p: u32) -> Option<Self> {
        let n = self.n;
        let m = n / p;
        if m % p == 0 {
            // Φ_n(x) = Φ_m(x^p): elements of ℚ(ζ_m) use only exponents divisible by p.
            if self.terms.iter().any(|(e, _)| e % p != 0) {
                return None;
            }
            let terms = self.terms.iter().map(|(e, c)| (e / p, c.clone())).collect();
            return Some(Self::from_parts(m, terms, self.den.clone()));
        }
        if euler_phi(n) > 1024 {
            return None;
        }
        // ℚ(ζ_m) is the fixed field of {k ≡ 1 mod m}.
        let (n64, m64) = (n as u64, m as u64);
        let mut k = 1 + m64;
        while k <= n64 {
            if k.gcd(&n64) == 1 && self.galois_raw(k) != *self {
                return None;
            }
            k += m64;
        }
        let phi_m = euler_phi(m);
        let s = n / m;
        let basis: Vec<Self> = (0..phi_m).map(|e| Self::zeta_pow(n, (e * s) as i64)).collect();
        solve_in_span(self, &basis).map(|c| {
            let coeffs: Vec<(i64, BigRational)> =
                c.into_iter().enumerate().map(|(i, q)| (i as i64, q)).collect();
            Self::new(m, &coeffs).unwrap()
        })
    }

    /// Rewrites the element over the smallest conductor that contains it.
    pub fn simplify(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return Self::from_rational(q);
        }
        let mut cur = self.clone();
        'outer: loop {
            for p in prime_factors(cur.n as u64) {
                if let Some(x) = cur.try_lower(p as u32) {
                    cur = x;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Vector of rational coordinates in the power basis of ℚ(ζ_N), length φ(N).
    pub fn to_rational_vec(&self) -> Vec<BigRational> {
        let phi = cyclo(self.n).phi as usize;
        let mut v = vec![BigRational::zero(); phi];
        for (e, c) in &self.terms {
            v[*e as usize] = BigRational::new(c.clone(), self.den.clone());
        }
        v
    }
}

/// Solves x = Σ c_i b_i over ℚ with the b_i's coordinates; None if x is outside the span.
fn solve_in_span(x: &CycElement, basis: &[CycElement]) -> Option<Vec<BigRational>> {
    let n = basis.iter().fold(x.n, |acc, b| lcm(acc, b.n));
    let cols: Vec<Vec<BigRational>> = basis.iter().map(|b| b.lift_unchecked(n).to_rational_vec()).collect();
    let rhs = x.lift_unchecked(n).to_rational_vec();
    crate::exactmat::rational::solve_columns(&cols, &rhs)
}

impl PartialEq for CycElement {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.terms == other.terms && self.den == other.den;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (_, a, b) = Self::common(self, other);
        a.terms == b.terms && a.den == b.den
    }
}

impl Eq for CycElement {}

impl Default for CycElement {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycElement> for &CycElement {
            type Output = CycElement;
            fn $m(self, rhs: &CycElement) -> CycElement {
                let f: fn(&CycElement, &CycElement) -> CycElement = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycElement> for CycElement {
            type Output = CycElement;
            fn $m(self, rhs: CycElement) -> CycElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycElement> for CycElement {
            type Output = CycElement;
            fn $m(self, rhs: &CycElement) -> CycElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycElement> for &CycElement {
            type Output = CycElement;
            fn $m(self, rhs: CycElement) -> CycElement {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &CycElement {
    type Output = CycElement;
    fn neg(self) -> CycElement {
        self.neg_impl()
    }
}

impl Neg for CycElement {
    type Output = CycElement;
    fn neg(self) -> CycElement {
        self.neg_impl()
    }
}

impl fmt::Display for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, q) in self.coeffs() {
            let s = q.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match e {
                0 => write!(f, "{body}")?,
                _ if body == "1" => write!(f, "z{}^{}", self.n, e)?,
                _ => write!(f, "{body}*z{}^{}", self.n, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let show = |n| {
            let c = cyclo(n);
            let mut v: Vec<(u32, i64)> = c.low.iter().map(|(e, a)| (*e, i64::try_from(a).unwrap())).collect();
            v.push((c.phi, 1));
            v
        };
        assert_eq!(show(8), vec![(0, 1), (4, 1)]);
        assert_eq!(show(3), vec![(0, 1), (1, 1), (2, 1)]);
        assert_eq!(show(24), vec![(0, 1), (4, -1), (8, 1)]);
        assert_eq!(show(1), vec![(0, -1), (1, 1)]);
        assert_eq!(show(40).last(), Some(&(16, 1)));
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclo(105).low.iter().any(|(_, a)| *a == BigInt::from(-2)));
    }

    #[test]
    fn basic_relations() {
        let z3 = CycElement::zeta(3);
        assert_eq!(&z3 + &z3.pow(2), CycElement::from_int(-1));
        assert_eq!(CycElement::omega8().pow(2), CycElement::i());
        let s2 = CycElement::sqrt2();
        assert_eq!(&s2 * &s2, CycElement::from_int(2));
        let s5 = CycElement::sqrt5();
        assert_eq!(&s5 * &s5, CycElement::from_int(5));
        let inv = s5.inv().unwrap();
        assert_eq!(&inv * &s5, CycElement::one());
        assert_eq!(inv, s5.scale(&BigRational::new(1.into(), 5.into())));
    }

    #[test]
    fn conj_and_lift() {
        assert_eq!(CycElement::zeta(8).conj(), CycElement::zeta_pow(8, 7));
        assert_eq!(CycElement::i().conj(), -CycElement::i());
        assert_eq!(CycElement::sqrt5().conj(), CycElement::sqrt5());
        let i24 = CycElement::i().lift(24).unwrap();
        assert_eq!(i24, CycElement::zeta_pow(24, 6));
        assert_eq!(i24.simplify().conductor(), 4);
        assert_eq!(CycElement::sqrt2().lift(40).unwrap().reduced_conductor(), 8);
    }

    #[test]
    fn general_inverse() {
        let a = CycElement::from_ints(24, &[(0, 1), (1, 3), (5, -2), (7, 1)]).unwrap();
        assert_eq!(&a * &a.inv().unwrap(), CycElement::one());
        let b = CycElement::from_ints(5, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(&b * &b.inv().unwrap(), CycElement::one());
    }

    #[test]
    fn sparse_path_large_conductor() {
        let n = 1 << 20;
        let z = CycElement::zeta(n);
        assert_eq!(z.pow(1 << 19), CycElement::from_int(-1));
        assert_eq!(z.pow(1 << 18), CycElement::i());
        assert_eq!(&z * &z.inv().unwrap(), CycElement::one());
    }
}
