//! Extended-precision reference values for Bessel functions of the first kind.
//!
//! Everything here is evaluated straight from the ascending power series at
//! 640 bits (about 190 decimal digits), so that the cancellation of the series
//! at `x = 200` (terms near `1e85`) still leaves well over 50 correct digits.
//! Nothing in this crate shares code with the fast kernels it is used to check:
//! no recurrences, no normalisation sums, no closed forms for half-integer
//! orders. Derivatives are taken term by term.
//!
//! Orders are passed as `twice_nu` (an integer) so that half-integer orders are
//! exact.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

const PREC: usize = 640;
const RM: RoundingMode = RoundingMode::ToEven;

/// Arbitrary-precision series evaluator.
pub struct Oracle {
    cc: Consts,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    fn int(v: i64) -> BigFloat {
        BigFloat::from_i64(v, PREC)
    }

    fn exact(x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    /// `Gamma(nu + 1)` for `nu = twice_nu / 2`.
    fn gamma_nu_plus_one(&mut self, twice_nu: u32) -> BigFloat {
        // Start from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi) and climb.
        let (mut g, mut arg_twice) = if twice_nu.is_multiple_of(2) {
            (Self::int(1), 2i64)
        } else {
            let pi = self.cc.pi(PREC, RM);
            (pi.sqrt(PREC, RM), 1i64)
        };
        let target = twice_nu as i64 + 2;
        while arg_twice < target {
            // Gamma(a + 1) = a Gamma(a), a = arg_twice / 2
            let a = Self::int(arg_twice).div(&Self::int(2), PREC, RM);
            g = g.mul(&a, PREC, RM);
            arg_twice += 2;
        }
        g
    }

    /// `2^{-nu}`.
    fn two_pow_neg_nu(&mut self, twice_nu: u32) -> BigFloat {
        let whole = Self::int(2).powi((twice_nu / 2) as usize, PREC, RM);
        let mut v = Self::int(1).div(&whole, PREC, RM);
        if twice_nu % 2 == 1 {
            let s2 = Self::int(2).sqrt(PREC, RM);
            v = v.div(&s2, PREC, RM);
        }
        v
    }

    /// Sum `sum_k (-1)^k w_k (x^2/4)^k / (k! (nu+1)_k)` where `w_k` is supplied
    /// by `weight` (1 for the plain series, `l + 2k` for the derivative).
    fn reduced_series(&mut self, twice_nu: u32, x: f64, weight: impl Fn(i64) -> i64) -> BigFloat {
        let xb = Self::exact(x);
        let q = xb.mul(&xb, PREC, RM).div(&Self::int(4), PREC, RM);
        let mut term = Self::int(1); // (x^2/4)^k / (k! (nu+1)_k), unsigned
        let mut sum = BigFloat::from_i64(weight(0), PREC);
        let mut max_exp = sum.exponent().unwrap_or(0);
        let mut k: i64 = 0;
        loop {
            k += 1;
            // (nu + k) = (twice_nu + 2k) / 2
            let denom = Self::int(k)
                .mul(&Self::int(twice_nu as i64 + 2 * k), PREC, RM)
                .div(&Self::int(2), PREC, RM);
            term = term.mul(&q, PREC, RM).div(&denom, PREC, RM);
            let mut t = term.mul(&Self::int(weight(k)), PREC, RM);
            if k % 2 == 1 {
                t.inv_sign();
            }
            if let Some(e) = t.exponent() {
                max_exp = max_exp.max(e);
            }
            sum = sum.add(&t, PREC, RM);
            let small = match t.exponent() {
                Some(e) => (e as i64) < max_exp as i64 - PREC as i64 - 16,
                None => true,
            };
            if small && (k as f64) > x {
                break;
            }
        }
        sum
    }

    /// `J_nu(x)` to roughly 190 digits before cancellation, at least 100 after.
    pub fn bessel_j(&mut self, twice_nu: u32, x: f64) -> BigFloat {
        assert!(x > 0.0);
        let series = self.reduced_series(twice_nu, x, |_| 1);
        // (x/2)^nu / Gamma(nu + 1)
        let half_x = Self::exact(x).div(&Self::int(2), PREC, RM);
        let mut pref = half_x.powi((twice_nu / 2) as usize, PREC, RM);
        if twice_nu % 2 == 1 {
            pref = pref.mul(&half_x.sqrt(PREC, RM), PREC, RM);
        }
        let g = self.gamma_nu_plus_one(twice_nu);
        pref.div(&g, PREC, RM).mul(&series, PREC, RM)
    }

    pub fn bessel_j_f64(&mut self, twice_nu: u32, x: f64) -> f64 {
        let v = self.bessel_j(twice_nu, x);
        self.to_f64(&v)
    }

    /// `Xi_l^{(d)}(r) = r^{(2-d)/2} J_{l + d/2 - 1}(r) = 2^{-nu} r^l sum_k ...`.
    pub fn xi(&mut self, l: u32, d: u32, r: f64) -> BigFloat {
        let twice_nu = 2 * l + d - 2;
        let series = self.reduced_series(twice_nu, r, |_| 1);
        let rl = Self::exact(r).powi(l as usize, PREC, RM);
        let g = self.gamma_nu_plus_one(twice_nu);
        self.two_pow_neg_nu(twice_nu)
            .mul(&rl, PREC, RM)
            .div(&g, PREC, RM)
            .mul(&series, PREC, RM)
    }

    /// `d/dr Xi_l^{(d)}(r)`, differentiating the series term by term.
    pub fn xi_prime(&mut self, l: u32, d: u32, r: f64) -> BigFloat {
        let twice_nu = 2 * l + d - 2;
        let li = l as i64;
        let series = self.reduced_series(twice_nu, r, move |k| li + 2 * k);
        // 2^{-nu} r^{l-1} / Gamma(nu+1) * sum (l+2k) c_k r^{2k}
        let rb = Self::exact(r);
        let rl1 = if l == 0 {
            Self::int(1).div(&rb, PREC, RM)
        } else {
            rb.powi((l - 1) as usize, PREC, RM)
        };
        let g = self.gamma_nu_plus_one(twice_nu);
        self.two_pow_neg_nu(twice_nu)
            .mul(&rl1, PREC, RM)
            .div(&g, PREC, RM)
            .mul(&series, PREC, RM)
    }

    /// Nearest `f64` to `v`.
    pub fn to_f64(&mut self, v: &BigFloat) -> f64 {
        if v.is_zero() {
            return 0.0;
        }
        let s = v
            .format(Radix::Dec, RM, &mut self.cc)
            .expect("decimal formatting");
        s.parse::<f64>()
            .unwrap_or_else(|_| panic!("unparseable oracle value {s}"))
    }

    /// Locate the sign change of `f` in `[lo, hi]` down to adjacent doubles.
    /// Returns whichever endpoint of the final pair is closer to the root by
    /// linear interpolation of the extended-precision values.
    pub fn bisect(
        &mut self,
        mut f: impl FnMut(&mut Self, f64) -> BigFloat,
        mut lo: f64,
        mut hi: f64,
    ) -> f64 {
        let mut flo = f(self, lo);
        let fhi = f(self, hi);
        assert!(
            flo.is_negative() != fhi.is_negative(),
            "oracle bisection needs a sign change on [{lo}, {hi}]"
        );
        let mut fhi = fhi;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = f(self, mid);
            if fm.is_zero() {
                return mid;
            }
            if fm.is_negative() == flo.is_negative() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
                fhi = fm;
            }
        }
        let a = self.to_f64(&flo).abs();
        let b = self.to_f64(&fhi).abs();
        if a <= b {
            lo
        } else {
            hi
        }
    }

    /// `m`-th positive zero of `J_nu`, found by bisection on the series,
    /// with a sign scan of step `0.05` starting at `start` to count zeros.
    pub fn bessel_zero(&mut self, twice_nu: u32, m: usize, start: f64) -> f64 {
        self.nth_sign_change(m, start, move |o, x| o.bessel_j(twice_nu, x))
    }

    /// `m`-th positive zero of `d/dr Xi_l^{(d)}`, scanning from `start`.
    pub fn xi_prime_zero(&mut self, l: u32, d: u32, m: usize, start: f64) -> f64 {
        self.nth_sign_change(m, start, move |o, r| o.xi_prime(l, d, r))
    }

    fn nth_sign_change(
        &mut self,
        m: usize,
        start: f64,
        mut f: impl FnMut(&mut Self, f64) -> BigFloat + Copy,
    ) -> f64 {
        const STEP: f64 = 0.05;
        let mut a = start;
        let mut fa = f(self, a);
        let mut seen = 0;
        loop {
            let b = a + STEP;
            let fb = f(self, b);
            if fa.is_negative() != fb.is_negative() {
                seen += 1;
                if seen == m {
                    return self.bisect(f, a, b);
                }
            }
            a = b;
            fa = fb;
            assert!(a < 400.0, "oracle scan ran away");
        }
    }
}
