//! Finite fields GF(p^e) with q = p^e <= 2^16.
//!
//! An element is stored as a `u16` code: the residue polynomial
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` maps to `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.
//! The code is canonical, so equality of scalars is equality of codes.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// An element of a finite field in canonical form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Scalar(pub u16);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn code(self) -> u16 {
        self.0
    }
}

/// Description of a finite field: characteristic, degree and (for e > 1)
/// the monic irreducible modulus, lowest coefficient first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, e: 1, modulus: None }
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let e = modulus.len().saturating_sub(1) as u32;
        FieldSpec { p, e, modulus: Some(modulus) }
    }

    /// GF(p^e) with the first monic irreducible polynomial of degree e
    /// in enumeration order (constant term varies fastest).
    pub fn with_default_modulus(p: u32, e: u32) -> Result<Self> {
        if e == 1 {
            return Ok(Self::prime(p));
        }
        check_prime(p)?;
        let q = (p as u64).pow(e);
        if q > MAX_FIELD_SIZE as u64 {
            return Err(Error::InvalidField(format!("field size {p}^{e} exceeds 2^16")));
        }
        let count = (p as u64).pow(e);
        for idx in 0..count {
            let mut poly = digits(idx, p, e as usize);
            poly.push(1);
            if is_irreducible(&poly, p) {
                return Ok(Self::with_modulus(p, poly));
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {e} over GF({p})")))
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.e)
    }

    pub fn validate(&self) -> Result<()> {
        check_prime(self.p)?;
        if self.e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (self.p as u64).checked_pow(self.e).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE as u64 {
            return Err(Error::InvalidField(format!("field size {}^{} exceeds 2^16", self.p, self.e)));
        }
        match (&self.modulus, self.e) {
            (None, 1) => Ok(()),
            (Some(m), 1) if m.len() == 2 && m[1] == 1 && m[0] < self.p => Ok(()),
            (None, _) => Err(Error::InvalidField(format!(
                "extension degree {} requires a modulus polynomial",
                self.e
            ))),
            (Some(m), e) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {}, expected {e}",
                        m.len().saturating_sub(1)
                    )));
                }
                if m.iter().any(|&c| c >= self.p) {
                    return Err(Error::InvalidField("modulus coefficients must lie in [0,p)".into()));
                }
                if m[e as usize] != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                if !is_irreducible(m, self.p) {
                    return Err(Error::InvalidField(format!(
                        "modulus {} is reducible over GF({})",
                        format_poly(m, "x"),
                        self.p
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            let m = self.modulus.as_deref().unwrap_or(&[]);
            write!(f, "GF({}^{}) mod {}", self.p, self.e, format_poly(m, "x"))
        }
    }
}

fn check_prime(p: u32) -> Result<()> {
    if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

/// Formats a coefficient list (lowest degree first) as a polynomial.
pub fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        terms.push(match (c, deg) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn trim(p: &mut Vec<u32>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Remainder of `a` modulo monic `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let lead = *r.last().unwrap();
        if lead == 0 {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Irreducibility by trial division by every monic polynomial of degree
/// 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    trim(&mut f);
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = digits(idx, p, d);
            divisor.push(1);
            let r = poly_rem(&f, &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

struct FieldData {
    spec: FieldSpec,
    p: u32,
    q: u32,
    /// exp[i] = g^i for a primitive element g, i in 0..q-1 (extension fields only).
    exp: Vec<u16>,
    /// log[a] for a != 0 (extension fields only).
    log: Vec<u16>,
    /// Full addition table for small extension fields.
    add: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field with precomputed arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        spec.validate()?;
        let p = spec.p;
        let q = spec.size();
        let e = spec.e as usize;
        let mut data = FieldData {
            spec: spec.clone(),
            p,
            q,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
        };
        if e == 1 {
            data.neg = (0..q).map(|a| ((p - a) % p) as u16).collect();
            data.inv = vec![0; q as usize];
            for a in 1..q {
                data.inv[a as usize] = pow_mod(a as u64, (p - 2) as u64, p as u64) as u16;
            }
            return Ok(Field(Arc::new(data)));
        }

        let modulus = spec.modulus.clone().expect("validated extension field has modulus");
        let encode = |c: &[u32]| -> u16 {
            let mut v = 0u32;
            for &d in c.iter().rev() {
                v = v * p + d;
            }
            v as u16
        };
        let decode = |mut v: u32| -> Vec<u32> {
            let mut c = vec![0u32; e];
            for slot in c.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            c
        };
        let slow_mul = |a: u32, b: u32| -> u16 {
            let (ca, cb) = (decode(a), decode(b));
            let mut prod = vec![0u32; 2 * e - 1];
            for (i, &x) in ca.iter().enumerate() {
                for (j, &y) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(e, 0);
            encode(&r)
        };

        // primitive element: order exactly q-1
        let order = q - 1;
        let prime_factors: Vec<u32> = {
            let mut n = order;
            let mut fs = Vec::new();
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    fs.push(d);
                    while n % d == 0 {
                        n /= d;
                    }
                }
                d += 1;
            }
            if n > 1 {
                fs.push(n);
            }
            fs
        };
        let slow_pow = |a: u32, mut k: u32| -> u32 {
            let mut result = 1u32;
            let mut base = a;
            while k > 0 {
                if k & 1 == 1 {
                    result = slow_mul(result, base) as u32;
                }
                base = slow_mul(base, base) as u32;
                k >>= 1;
            }
            result
        };
        let generator = (2..q)
            .find(|&g| prime_factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .unwrap_or(1);

        let mut exp = vec![0u16; order as usize];
        let mut log = vec![0u16; q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i as usize] = cur as u16;
            log[cur as usize] = i as u16;
            cur = slow_mul(cur, generator) as u32;
        }
        data.exp = exp;
        data.log = log;

        let add_digits = |a: u32, b: u32| -> u16 {
            let (ca, cb) = (decode(a), decode(b));
            let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
            encode(&s)
        };
        if q <= 256 {
            let mut add = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = add_digits(a, b);
                }
            }
            data.add = add;
        }
        data.neg = (0..q)
            .map(|a| {
                let c: Vec<u32> = decode(a).iter().map(|&d| (p - d) % p).collect();
                encode(&c)
            })
            .collect();
        data.inv = vec![0; q as usize];
        for a in 1..q {
            let l = data.log[a as usize] as u32;
            data.inv[a as usize] = data.exp[((order - l) % order) as usize];
        }
        Ok(Field(Arc::new(data)))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn size(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.spec.e == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.0.q).map(|c| Scalar(c as u16))
    }

    /// Element from its canonical code; codes >= q are rejected.
    pub fn element(&self, code: u32) -> Result<Scalar> {
        if code >= self.0.q {
            return Err(Error::InvalidField(format!("{code} is not an element of {}", self.0.spec)));
        }
        Ok(Scalar(code as u16))
    }

    /// Image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, v: i64) -> Scalar {
        let p = self.0.p as i64;
        Scalar(v.rem_euclid(p) as u16)
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let d = &*self.0;
        if d.spec.e == 1 {
            let s = a.0 as u32 + b.0 as u32;
            Scalar(if s >= d.p { s - d.p } else { s } as u16)
        } else if !d.add.is_empty() {
            Scalar(d.add[a.0 as usize * d.q as usize + b.0 as usize])
        } else {
            let (mut x, mut y) = (a.0 as u32, b.0 as u32);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..d.spec.e {
                out += ((x % d.p + y % d.p) % d.p) * place;
                x /= d.p;
                y /= d.p;
                place *= d.p;
            }
            Scalar(out as u16)
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        Scalar(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        let d = &*self.0;
        if d.spec.e == 1 {
            Scalar(((a.0 as u32 * b.0 as u32) % d.p) as u16)
        } else if a.0 == 0 || b.0 == 0 {
            Scalar::ZERO
        } else {
            let order = d.q as usize - 1;
            let s = d.log[a.0 as usize] as usize + d.log[b.0 as usize] as usize;
            Scalar(d.exp[if s >= order { s - order } else { s }])
        }
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.inv[a.0 as usize]))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Scalar, mut k: u64) -> Scalar {
        let mut result = Scalar::ONE;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `dst[k] += c * src[k]` for all k.
    #[inline]
    pub fn axpy(&self, dst: &mut [Scalar], c: Scalar, src: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        let d = &*self.0;
        if d.spec.e == 1 {
            let p = d.p as u64;
            let c = c.0 as u64;
            for (x, &y) in dst.iter_mut().zip(src) {
                if y.0 != 0 {
                    x.0 = ((x.0 as u64 + c * y.0 as u64) % p) as u16;
                }
            }
        } else {
            for (x, &y) in dst.iter_mut().zip(src) {
                if y.0 != 0 {
                    *x = self.add(*x, self.mul(c, y));
                }
            }
        }
    }

    /// Multiply a slice in place by `c`.
    #[inline]
    pub fn scale(&self, v: &mut [Scalar], c: Scalar) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Text form: prime fields print the residue; extension fields print the
    /// residue polynomial in `a` (e.g. `a+1`).
    pub fn format(&self, a: Scalar) -> String {
        if self.is_prime_field() {
            return a.0.to_string();
        }
        let p = self.0.p;
        let mut v = a.0 as u32;
        let mut c = Vec::new();
        for _ in 0..self.0.spec.e {
            c.push(v % p);
            v /= p;
        }
        format_poly(&c, "a").replace(" + ", "+").replace('*', "")
    }

    /// Parses either a canonical code (`5`), a possibly negative integer in
    /// a prime field (`-1`), or a polynomial in `a` such as `a+1`, `2a^2+1`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidField(format!("cannot parse scalar '{s}' in {}", self.0.spec));
        if let Ok(v) = s.parse::<i64>() {
            if self.is_prime_field() {
                return Ok(self.from_int(v));
            }
            if v < 0 {
                return Ok(self.from_int(v));
            }
            return self.element(v as u32);
        }
        if self.is_prime_field() {
            return Err(bad());
        }
        let p = self.0.p;
        let e = self.0.spec.e as usize;
        let mut coeffs = vec![0u32; e];
        let normalized = s.replace(' ', "").replace('-', "+-");
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (sign, term) = match term.strip_prefix('-') {
                Some(rest) => (p - 1, rest),
                None => (1, term),
            };
            let (coef, deg) = if let Some(idx) = term.find('a') {
                let c = term[..idx].trim_end_matches('*');
                let c: u32 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
                let rest = &term[idx + 1..];
                let d: usize = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                (c, d)
            } else {
                (term.parse::<u32>().map_err(|_| bad())?, 0)
            };
            if deg >= e {
                return Err(bad());
            }
            coeffs[deg] = (coeffs[deg] + (coef % p) * sign) % p;
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * p + c;
        }
        Ok(Scalar(v as u16))
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(FieldSpec::with_modulus(2, vec![1, 1, 1])).unwrap()
    }

    #[test]
    fn gf3_examples() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.add(Scalar(2), Scalar(2)), Scalar(1));
        assert_eq!(f.inv(Scalar(2)).unwrap(), Scalar(2));
    }

    #[test]
    fn gf4_x_squared() {
        let f = gf4();
        // x has code 2, x+1 has code 3
        assert_eq!(f.mul(Scalar(2), Scalar(2)), Scalar(3));
        assert_eq!(f.format(Scalar(3)), "a+1");
        assert_eq!(f.parse("a+1").unwrap(), Scalar(3));
    }

    #[test]
    fn inverse_of_zero() {
        let f = Field::prime(5).unwrap();
        let err = f.inv(Scalar::ZERO).unwrap_err();
        assert_eq!(err.to_string(), "division by zero");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Field::prime(4).is_err());
        assert!(Field::new(FieldSpec::with_modulus(2, vec![1, 0, 1])).is_err());
        assert!(Field::new(FieldSpec { p: 2, e: 2, modulus: None }).is_err());
        assert!(FieldSpec::with_default_modulus(2, 17).is_err());
    }

    #[test]
    fn default_modulus_is_irreducible() {
        let s = FieldSpec::with_default_modulus(3, 2).unwrap();
        assert_eq!(s.modulus.as_deref(), Some(&[1, 0, 1][..]));
        let s = FieldSpec::with_default_modulus(2, 4).unwrap();
        assert!(is_irreducible(s.modulus.as_ref().unwrap(), 2));
    }

    #[test]
    fn large_field_without_add_table() {
        let spec = FieldSpec::with_default_modulus(3, 6).unwrap();
        let f = Field::new(spec).unwrap();
        assert_eq!(f.size(), 729);
        for a in [1u16, 7, 100, 728] {
            let a = Scalar(a);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Scalar::ONE);
            assert_eq!(f.add(a, f.neg(a)), Scalar::ZERO);
        }
    }
}
