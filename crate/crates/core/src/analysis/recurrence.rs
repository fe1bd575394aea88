//! Exact linear recurrences (Berlekamp–Massey over the rationals) and
//! isolation of the dominant real root by Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a_n = sum_{k=1}^{d} coefficients[k-1] * a_{n-k}`, valid on the whole
/// input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceFit {
    pub order: usize,
    pub coefficients: Vec<BigRational>,
    /// Number of terms the recurrence was checked against.
    pub verified_terms: usize,
    /// `x^d - c_1 x^{d-1} - ... - c_d`, lowest degree first.
    pub characteristic: Vec<BigRational>,
    /// Interval `(lo, hi]` of width below `10^-6` containing the largest
    /// real root of the characteristic polynomial.
    pub dominant_root: Option<(BigRational, BigRational)>,
}

impl RecurrenceFit {
    /// E.g. `x^2 = 3x - 1`.
    pub fn describe(&self) -> String {
        let d = self.order;
        if d == 0 {
            return "a_n = 0".into();
        }
        let mut rhs = String::new();
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = d - k - 1;
            let mag = c.abs();
            let var = match power {
                0 => String::new(),
                1 => "x".into(),
                p => format!("x^{p}"),
            };
            let coef = if mag.is_one() && !var.is_empty() { String::new() } else { mag.to_string() };
            let term = format!("{coef}{var}");
            if rhs.is_empty() {
                rhs = if c.is_negative() { format!("-{term}") } else { term };
            } else {
                rhs.push_str(if c.is_negative() { " - " } else { " + " });
                rhs.push_str(&term);
            }
        }
        if rhs.is_empty() {
            rhs = "0".into();
        }
        let lhs = if d == 1 { "x".to_string() } else { format!("x^{d}") };
        format!("{lhs} = {rhs}")
    }

    /// Whether the dominant root is certainly greater than one.
    pub fn dominant_root_exceeds_one(&self) -> bool {
        self.dominant_root.as_ref().is_some_and(|(lo, _)| *lo >= BigRational::one())
    }

    /// Whether the closed bracket contains `(3 + sqrt 5) / 2`.
    pub fn bracket_contains_golden_square(&self) -> bool {
        let Some((lo, hi)) = &self.dominant_root else { return false };
        // r = (3 + sqrt5)/2: lo < r iff sqrt5 > 2lo - 3; r <= hi iff sqrt5 <= 2hi - 3
        let five = BigRational::from_integer(BigInt::from(5));
        let three = BigRational::from_integer(BigInt::from(3));
        let two = BigRational::from_integer(BigInt::from(2));
        let a = &two * lo - &three;
        let b = &two * hi - &three;
        let above_lo = a.is_negative() || &a * &a < five;
        let below_hi = !b.is_negative() && &b * &b >= five;
        above_lo && below_hi
    }
}

fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Minimal-order recurrence of the sequence, if one of order at most
/// `len / 2 - 1` exists. Needs at least six terms.
pub fn fit_recurrence(seq: &[BigInt]) -> Option<RecurrenceFit> {
    let n = seq.len();
    if n < 6 {
        return None;
    }
    let s: Vec<BigRational> = seq.iter().map(rat).collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for k in 0..n {
        let mut d = s[k].clone();
        for i in 1..=l {
            d += &c[i] * &s[k - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &coef * bi;
        }
        if 2 * l <= k {
            b = std::mem::replace(&mut c, next);
            l = k + 1 - l;
            bd = d;
            m = 1;
        } else {
            c = next;
            m += 1;
        }
    }
    if l > n / 2 - 1 {
        return None;
    }
    c.resize(l + 1, BigRational::zero());
    let coefficients: Vec<BigRational> = c[1..].iter().map(|x| -x).collect();
    for k in l..n {
        let mut pred = BigRational::zero();
        for (i, ci) in coefficients.iter().enumerate() {
            pred += ci * &s[k - 1 - i];
        }
        if pred != s[k] {
            return None;
        }
    }
    let mut characteristic: Vec<BigRational> = coefficients.iter().rev().map(|x| -x).collect();
    characteristic.push(BigRational::one());
    let dominant_root = largest_real_root(&characteristic);
    Some(RecurrenceFit { order: l, coefficients, verified_terms: n, characteristic, dominant_root })
}

// polynomials are coefficient vectors, lowest degree first

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect()
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let q = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &q * bi;
        }
        trim(&mut r);
    }
    r
}

fn div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![BigRational::one()];
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        trim(&mut r);
    }
    q
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![p.to_vec(), derivative(p)];
    trim(chain.last_mut().unwrap());
    while !chain.last().unwrap().is_empty() {
        let k = chain.len();
        let r: Vec<BigRational> = rem(&chain[k - 2], &chain[k - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain.retain(|q| !q.is_empty());
    chain
}

fn variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain.iter().map(|q| eval(q, x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Bracket of width below `10^-6` around the largest real root.
fn largest_real_root(p: &[BigRational]) -> Option<(BigRational, BigRational)> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.len() < 2 {
        return None;
    }
    let g = gcd(&p, &derivative(&p));
    let sq = if g.len() > 1 { div_exact(&p, &g) } else { p.clone() };
    let chain = sturm_chain(&sq);
    let lead = sq.last().unwrap().abs();
    let bound = BigRational::one() + sq[..sq.len() - 1].iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let mut lo = -bound.clone() - BigRational::one();
    let mut hi = bound;
    let count = |a: &BigRational, b: &BigRational| variations(&chain, a) - variations(&chain, b);
    if count(&lo, &hi) == 0 {
        return None;
    }
    let tol = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo >= tol {
        let width = &hi - &lo;
        let mut mid = (&lo + &hi) / &two;
        let mut k = 3u32;
        while eval(&sq, &mid).is_zero() {
            mid = (&lo + &hi) / &two + &width / BigRational::from_integer(BigInt::from(1u64 << k.min(60)));
            k += 1;
        }
        if count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}

/// Decimal rendering with a fixed number of fractional digits (truncated).
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (a.numer() * &scale) / a.denom();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let frac = format!("{:0>width$}", frac.to_string(), width = digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_square_growth() {
        let fit = fit_recurrence(&ints(&[2, 2, 4, 10, 26, 68, 178])).unwrap();
        assert_eq!(fit.order, 2);
        assert_eq!(fit.describe(), "x^2 = 3x - 1");
        let (lo, hi) = fit.dominant_root.clone().unwrap();
        assert!(&hi - &lo < BigRational::new(BigInt::one(), BigInt::from(1_000_000)));
        assert!(fit.bracket_contains_golden_square());
        assert!(to_decimal(&lo, 5).starts_with("2.61803"));
    }

    #[test]
    fn constant_and_doubling() {
        let c = fit_recurrence(&ints(&[3, 3, 3, 3, 3, 3])).unwrap();
        assert_eq!(c.order, 1);
        assert_eq!(c.describe(), "x = 1");
        let (lo, hi) = c.dominant_root.unwrap();
        assert!(lo < BigRational::one() && BigRational::one() <= hi);
        let d = fit_recurrence(&ints(&[1, 2, 4, 8, 16, 32])).unwrap();
        assert_eq!(d.describe(), "x = 2");
        assert!(d.dominant_root_exceeds_one());
    }

    #[test]
    fn too_short_or_too_complex() {
        assert!(fit_recurrence(&ints(&[1, 2, 3])).is_none());
        // no recurrence of order <= 2 fits these six terms
        assert!(fit_recurrence(&ints(&[1, 0, 0, 5, 0, 1])).is_none());
    }

    #[test]
    fn repeated_roots() {
        // a_n = n: characteristic (x - 1)^2
        let fit = fit_recurrence(&ints(&[0, 1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(fit.order, 2);
        let (lo, hi) = fit.dominant_root.unwrap();
        assert!(lo < BigRational::one() && BigRational::one() <= hi);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&BigRational::new(BigInt::from(-7), BigInt::from(4)), 3), "-1.750");
    }
}
