//! Truncated q-expansions with exact rational coefficients.
//!
//! Exponents are stored as integers in units of `1/denom`, so `θ₂(q)`
//! (quarter-integer exponents) and the cubic `c(q)` (third-integer
//! exponents) live in the same ring as ordinary power series. Storage is a
//! dense numerator array over one common denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::rational::fmt_rational;

fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// A series `Σ c_e q^e`, exact for every exponent `e < order`.
#[derive(Clone, Debug)]
pub struct QExpansion {
    denom: u32,
    nums: Vec<Integer>,
    den: Integer,
}

impl QExpansion {
    /// The zero series with exponents in `(1/denom)ℤ`, exact below `order`.
    pub fn zero(denom: u32, order: &Rational) -> Self {
        assert!(denom > 0, "exponent denominator must be positive");
        let len = scaled_len(denom, order);
        QExpansion {
            denom,
            nums: vec![Integer::new(); len],
            den: Integer::from(1),
        }
    }

    pub fn one(order: &Rational) -> Self {
        Self::constant(Rational::from(1), order)
    }

    pub fn constant(c: Rational, order: &Rational) -> Self {
        let mut s = Self::zero(1, order);
        if !s.nums.is_empty() {
            let (n, d) = c.into_numer_denom();
            s.nums[0] = n;
            s.den = d;
        }
        s
    }

    /// Build from `(scaled exponent, coefficient)` pairs; exponents at or
    /// beyond the truncation are dropped, repeated exponents accumulate.
    pub fn from_terms<I>(denom: u32, order: &Rational, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut acc = vec![Rational::new(); scaled_len(denom, order)];
        for (e, c) in terms {
            if e < acc.len() {
                acc[e] += c;
            }
        }
        Self::from_rationals(denom, acc)
    }

    /// Build from integer coefficients at scaled exponents.
    pub fn from_integer_terms<I>(denom: u32, order: &Rational, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Integer)>,
    {
        let mut s = Self::zero(denom, order);
        for (e, c) in terms {
            if e < s.nums.len() {
                s.nums[e] += c;
            }
        }
        s
    }

    fn from_rationals(denom: u32, coeffs: Vec<Rational>) -> Self {
        let mut den = Integer::from(1);
        for c in &coeffs {
            if *c.denom() != 1 {
                den.lcm_mut(c.denom());
            }
        }
        let nums = coeffs
            .into_iter()
            .map(|c| {
                let (n, d) = c.into_numer_denom();
                n * Integer::from(&den / &d)
            })
            .collect();
        let mut s = QExpansion { denom, nums, den };
        s.reduce_den();
        s
    }

    /// Exponent denominator: every exponent is a multiple of `1/denom`.
    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Number of stored slots, i.e. `order · denom`.
    pub fn scaled_len(&self) -> usize {
        self.nums.len()
    }

    /// Truncation bound: the series is exact for exponents `< order`.
    pub fn order(&self) -> Rational {
        Rational::from((self.nums.len() as u64, self.denom))
    }

    /// Coefficient of `q^n`; zero if `n` is off the exponent grid.
    pub fn coeff(&self, n: &Rational) -> Result<Rational> {
        if *n < 0 || *n >= self.order() {
            return Err(Error::Truncation {
                exponent: fmt_rational(n),
                order: fmt_rational(&self.order()),
            });
        }
        let scaled = Rational::from(n * self.denom);
        if *scaled.denom() != 1 {
            return Ok(Rational::new());
        }
        let idx = scaled.numer().to_usize().expect("index fits in usize");
        Ok(self.coeff_scaled(idx))
    }

    /// Coefficient at scaled exponent `idx` (exponent `idx / denom`).
    pub fn coeff_scaled(&self, idx: usize) -> Rational {
        Rational::from((self.nums[idx].clone(), self.den.clone()))
    }

    /// Nonzero terms as `(exponent, coefficient)`, increasing exponent.
    pub fn terms(&self) -> Vec<(Rational, Rational)> {
        self.nums
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| {
                (
                    Rational::from((i as u64, self.denom)),
                    Rational::from((c.clone(), self.den.clone())),
                )
            })
            .collect()
    }

    /// First nonzero term, if any below the truncation.
    pub fn leading_term(&self) -> Option<(Rational, Rational)> {
        self.nums.iter().position(|c| *c != 0).map(|i| {
            (
                Rational::from((i as u64, self.denom)),
                self.coeff_scaled(i),
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(|c| *c == 0)
    }

    /// Same series over the finer grid `1/denom`, `denom` a multiple of the
    /// current one.
    pub fn refine(&self, denom: u32) -> QExpansion {
        assert!(denom.is_multiple_of(self.denom), "refinement must be a multiple");
        if denom == self.denom {
            return self.clone();
        }
        let f = (denom / self.denom) as usize;
        let mut nums = vec![Integer::new(); self.nums.len() * f];
        for (i, c) in self.nums.iter().enumerate() {
            if *c != 0 {
                nums[i * f] = c.clone();
            }
        }
        QExpansion {
            denom,
            nums,
            den: self.den.clone(),
        }
    }

    /// Coarsen the exponent grid as far as the nonzero exponents allow.
    /// The order can only shrink, by less than one new grid step.
    pub fn normalized(&self) -> QExpansion {
        let mut g = self.denom;
        for (i, c) in self.nums.iter().enumerate() {
            if g == 1 {
                break;
            }
            if *c != 0 {
                g = gcd_u32(g, (i % g as usize) as u32);
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let len = self.nums.len() / g as usize;
        let nums = (0..len).map(|j| self.nums[j * g as usize].clone()).collect();
        QExpansion {
            denom: self.denom / g,
            nums,
            den: self.den.clone(),
        }
    }

    /// Drop everything at or beyond `order`.
    pub fn truncated(&self, order: &Rational) -> QExpansion {
        let len = scaled_len(self.denom, order).min(self.nums.len());
        let mut s = QExpansion {
            denom: self.denom,
            nums: self.nums[..len].to_vec(),
            den: self.den.clone(),
        };
        s.reduce_den();
        s
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> QExpansion {
        let mut s = QExpansion {
            denom: self.denom,
            nums: self.nums.iter().map(|n| Integer::from(n * c.numer())).collect(),
            den: Integer::from(&self.den * c.denom()),
        };
        s.reduce_den();
        s
    }

    /// Coefficientwise sum, exact below the smaller order.
    pub fn add(&self, other: &QExpansion) -> QExpansion {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &QExpansion) -> QExpansion {
        self.combine(other, true)
    }

    fn combine(&self, other: &QExpansion, subtract: bool) -> QExpansion {
        let d = lcm_u32(self.denom, other.denom);
        let a = self.refine(d);
        let b = other.refine(d);
        let len = a.nums.len().min(b.nums.len());
        let den = Integer::from(a.den.lcm_ref(&b.den));
        let fa = Integer::from(&den / &a.den);
        let fb = Integer::from(&den / &b.den);
        let nums = (0..len)
            .map(|i| {
                let x = Integer::from(&a.nums[i] * &fa);
                let y = Integer::from(&b.nums[i] * &fb);
                if subtract {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        let mut s = QExpansion { denom: d, nums, den };
        s.reduce_den();
        s
    }

    /// Truncated Cauchy product; zero coefficients on either side are
    /// skipped, which keeps theta products cheap.
    pub fn mul(&self, other: &QExpansion) -> QExpansion {
        let d = lcm_u32(self.denom, other.denom);
        let a = self.refine(d);
        let b = other.refine(d);
        let len = a.nums.len().min(b.nums.len());
        let an = nonzero(&a.nums, len);
        let bn = nonzero(&b.nums, len);
        let mut out = vec![Integer::new(); len];
        for &(i, x) in &an {
            for &(j, y) in &bn {
                let k = i + j;
                if k >= len {
                    break;
                }
                out[k] += x * y;
            }
        }
        let mut s = QExpansion {
            denom: d,
            nums: out,
            den: Integer::from(&a.den * &b.den),
        };
        s.reduce_den();
        s
    }

    /// `self^k` by binary exponentiation, `k >= 1`.
    pub fn pow(&self, k: u32) -> QExpansion {
        assert!(k >= 1, "power must be positive");
        let mut base = self.clone();
        let mut acc: Option<QExpansion> = None;
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.expect("k >= 1")
    }

    /// Substitute `q -> q^k`.
    pub fn scale_arg(&self, k: u32) -> QExpansion {
        assert!(k >= 1, "argument scale must be positive");
        if k == 1 {
            return self.clone();
        }
        let k = k as usize;
        let mut nums = vec![Integer::new(); self.nums.len() * k];
        for (i, c) in self.nums.iter().enumerate() {
            if *c != 0 {
                nums[i * k] = c.clone();
            }
        }
        QExpansion {
            denom: self.denom,
            nums,
            den: self.den.clone(),
        }
    }

    /// Equality of the two series below the smaller of the two orders.
    pub fn agrees_with(&self, other: &QExpansion) -> bool {
        let diff = self.sub(other);
        diff.is_zero()
    }

    fn reduce_den(&mut self) {
        if self.den == 1 {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.nums {
            if *n != 0 {
                g.gcd_mut(n);
                if g == 1 {
                    return;
                }
            }
        }
        if self.nums.iter().all(|n| *n == 0) {
            self.den = Integer::from(1);
            return;
        }
        for n in &mut self.nums {
            n.div_exact_mut(&g);
        }
        self.den.div_exact_mut(&g);
    }
}

fn scaled_len(denom: u32, order: &Rational) -> usize {
    if *order <= 0 {
        return 0;
    }
    let scaled = Rational::from(order * denom);
    let ceil = scaled.ceil().into_numer_denom().0;
    ceil.to_usize().expect("order fits in usize")
}

fn nonzero(nums: &[Integer], len: usize) -> Vec<(usize, &Integer)> {
    nums.iter()
        .take(len)
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .collect()
}

/// Equality up to the common truncation order, after aligning grids.
impl PartialEq for QExpansion {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

impl Add for &QExpansion {
    type Output = QExpansion;
    fn add(self, rhs: &QExpansion) -> QExpansion {
        QExpansion::add(self, rhs)
    }
}

impl Sub for &QExpansion {
    type Output = QExpansion;
    fn sub(self, rhs: &QExpansion) -> QExpansion {
        QExpansion::sub(self, rhs)
    }
}

impl Mul for &QExpansion {
    type Output = QExpansion;
    fn mul(self, rhs: &QExpansion) -> QExpansion {
        QExpansion::mul(self, rhs)
    }
}

impl Neg for &QExpansion {
    type Output = QExpansion;
    fn neg(self) -> QExpansion {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c < 0;
            let mag = Rational::from(c.abs_ref());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == 1;
            if e == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
                continue;
            }
            if !unit {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else if *e.denom() == 1 {
                write!(f, "q^{}", e.numer())?;
            } else {
                write!(f, "q^({})", fmt_rational(&e))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", fmt_rational(&self.order()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn ord(n: i64) -> Rational {
        rat(n, 1)
    }

    fn theta3(order: i64) -> QExpansion {
        let terms = (-50i64..=50).map(|n| ((n * n) as usize, Rational::from(1)));
        QExpansion::from_terms(1, &ord(order), terms)
    }

    fn theta4(order: i64) -> QExpansion {
        let terms = (-50i64..=50).map(|n| ((n * n) as usize, Rational::from(if n % 2 == 0 { 1 } else { -1 })));
        QExpansion::from_terms(1, &ord(order), terms)
    }

    fn ints(s: &QExpansion, upto: usize) -> Vec<i64> {
        (0..upto).map(|i| s.coeff_scaled(i).to_f64() as i64).collect()
    }

    #[test]
    fn sum_cancels_odd_squares() {
        let s = &theta3(40) + &theta4(40);
        assert_eq!(ints(&s, 17), vec![2, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4]);
        let z = QExpansion::zero(1, &ord(40));
        assert_eq!(&theta3(40) + &z, theta3(40));
    }

    #[test]
    fn square_counts_two_square_representations() {
        // r2(n) by brute force over |x|,|y| <= 8
        let mut r2 = vec![0i64; 40];
        for x in -8i64..=8 {
            for y in -8i64..=8 {
                let n = (x * x + y * y) as usize;
                if n < 40 {
                    r2[n] += 1;
                }
            }
        }
        let sq = theta3(40).pow(2);
        assert_eq!(ints(&sq, 40), r2);
        assert_eq!(ints(&sq, 6), vec![1, 4, 4, 0, 4, 8]);
        assert_eq!(theta3(40).mul(&QExpansion::one(&ord(40))), theta3(40));
    }

    #[test]
    fn binomial_cube() {
        let one_minus_q = QExpansion::from_terms(1, &ord(10), [(0, rat(1, 1)), (1, rat(-1, 1))]);
        let c = one_minus_q.pow(3);
        assert_eq!(ints(&c, 6), vec![1, -3, 3, -1, 0, 0]);
        assert_eq!(one_minus_q.pow(1), one_minus_q);
    }

    #[test]
    fn coeff_lookup_and_truncation_error() {
        let s = theta4(10);
        assert_eq!(s.coeff(&rat(0, 1)).unwrap(), 1);
        assert_eq!(s.coeff(&rat(1, 2)).unwrap(), 0);
        assert!(matches!(s.coeff(&rat(10, 1)), Err(Error::Truncation { .. })));
    }

    #[test]
    fn mixed_denominators_align() {
        // q^{1/4} + q^{1/3}, squared
        let a = QExpansion::from_terms(4, &ord(2), [(1, rat(1, 1))]);
        let b = QExpansion::from_terms(3, &ord(2), [(1, rat(1, 2))]);
        let s = &a + &b;
        assert_eq!(s.denom(), 12);
        let sq = s.pow(2);
        assert_eq!(sq.coeff(&rat(1, 2)).unwrap(), 1);
        assert_eq!(sq.coeff(&rat(7, 12)).unwrap(), 1);
        assert_eq!(sq.coeff(&rat(2, 3)).unwrap(), rat(1, 4));
    }

    #[test]
    fn normalization_coarsens_grid() {
        let s = QExpansion::from_terms(4, &ord(10), [(4, rat(2, 1)), (36, rat(2, 1))]);
        let n = s.normalized();
        assert_eq!(n.denom(), 1);
        assert_eq!(n.order(), 10);
        assert_eq!(n.coeff(&rat(9, 1)).unwrap(), 2);
    }

    #[test]
    fn scale_arg_examples() {
        let t4 = theta4(10).scale_arg(8);
        assert_eq!(t4.order(), 80);
        assert_eq!(t4.coeff(&rat(8, 1)).unwrap(), -2);
        assert_eq!(t4.coeff(&rat(32, 1)).unwrap(), 2);
        assert_eq!(theta4(10).scale_arg(1), theta4(10));
    }

    #[test]
    fn display_is_readable() {
        let s = QExpansion::from_terms(1, &ord(5), [(0, rat(1, 1)), (1, rat(-2, 1)), (4, rat(2, 1))]);
        assert_eq!(s.to_string(), "1 - 2q + 2q^4 + O(q^5)");
        let h = QExpansion::from_terms(4, &ord(1), [(1, rat(2, 1))]);
        assert_eq!(h.to_string(), "2q^(1/4) + O(q^1)");
    }

    fn small_series() -> impl Strategy<Value = QExpansion> {
        (
            prop::sample::select(vec![1u32, 2, 3, 4]),
            prop::collection::vec((-6i64..=6, 1i64..=4), 1..24),
        )
            .prop_map(|(d, cs)| {
                let order = Rational::from((64, d));
                let terms = cs
                    .into_iter()
                    .enumerate()
                    .map(|(i, (n, m))| (i * 2 % 60, rat(n, m)));
                QExpansion::from_terms(d, &order, terms)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn scale_arg_is_multiplicative(a in small_series(), b in small_series(), k in 1u32..5) {
            let lhs = (&a * &b).scale_arg(k);
            let rhs = &a.scale_arg(k) * &b.scale_arg(k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_order_is_min(a in small_series(), b in small_series()) {
            let p = &a * &b;
            let min = if a.order() < b.order() { a.order() } else { b.order() };
            prop_assert_eq!(p.order(), min);
        }
    }
}
