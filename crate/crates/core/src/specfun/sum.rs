use num_complex::Complex64;

const EPS: f64 = f64::EPSILON;

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `(sin 2πt, cos 2πt)` with the argument reduced to `[-1/2, 1/2]` turns first.
///
/// Multiples of a quarter turn come out exact.
pub(crate) fn sin_cos_turns(t: f64) -> (f64, f64) {
    let r = t - t.round();
    let q = 4.0 * r;
    if q == q.round() {
        return match q as i64 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            -1 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
    }
    (std::f64::consts::TAU * r).sin_cos()
}

/// Upper bound on `sum_{k=1}^{K} k^{-q}` for `q >= 1`.
pub(crate) fn partial_power_sum_bound(q: f64, k: usize) -> f64 {
    let log_bound = 1.0 + (k as f64).ln();
    if q > 1.0 {
        log_bound.min(1.0 + 1.0 / (q - 1.0))
    } else {
        log_bound
    }
}

/// `sum_{k>K} k^{-p} <= K^{1-p}/(p-1)` (integral test), `p > 1`.
pub(crate) fn power_tail_bound(p: f64, k: usize) -> f64 {
    (k as f64).powf(1.0 - p) / (p - 1.0)
}

/// Rounding allowance for `sum_{k<=K} trig(2πkx)/k^p` evaluated with
/// [`sin_cos_turns`] and compensated summation.
pub(crate) fn trig_rounding_allowance(p: f64, k: usize, x: f64) -> f64 {
    // k*x loses up to |kx|·ε/2 turns; each term then carries a few more ulps.
    let argument = std::f64::consts::PI * x.abs() * partial_power_sum_bound(p - 1.0, k);
    EPS * (argument + 6.0 * partial_power_sum_bound(p, k))
}

/// Euler–Maclaurin estimate of `sum_{m>=0} (base+m)^{-s}`, `s > 1`.
///
/// Returns `(estimate, bound)`; the remainder of this expansion for a
/// completely monotone summand is bounded by the first omitted term.
pub(crate) fn hurwitz_tail(s: f64, base: f64) -> (f64, f64) {
    // B_2/2!, B_4/4!, B_6/6!, B_8/8!
    const COEFFS: [f64; 4] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
    let mut est = base.powf(1.0 - s) / (s - 1.0) + 0.5 * base.powf(-s);
    // rising factorial (s)_{2p-1} and base^{-s-2p+1}
    let mut rising = s;
    let mut power = base.powf(-s - 1.0);
    let mut next = 0.0;
    for (p, c) in COEFFS.iter().enumerate() {
        let term = c * rising * power;
        if p == COEFFS.len() - 1 {
            next = term.abs();
        } else {
            est += term;
        }
        let a = s + (2 * p + 1) as f64;
        rising *= a * (a + 1.0);
        power /= base * base;
    }
    (est, next)
}

/// Asymptotic value of `sum_{m>=0} z^m (base+m)^{-s}` for `z != 1`,
/// `|z| <= 1`, via `1/(1 - z e^t) = 1/(1-z) + sum_{j>=1} Li_{-j}(z) t^j/j!`.
///
/// Returns `None` when `z` is too close to 1 for the expansion to be useful
/// at this `base`. The second component is the magnitude of the first
/// omitted term.
pub(crate) fn twisted_tail(z: Complex64, s: f64, base: f64) -> Option<(Complex64, f64)> {
    const MAX_J: usize = 10;
    let one_minus = Complex64::new(1.0, 0.0) - z;
    let gap = one_minus.norm();
    if gap == 0.0 || gap * base < 2.0 * (s + MAX_J as f64) {
        return None;
    }
    let inv = one_minus.inv();
    // Eulerian numbers <j, m>, row by row.
    let mut eulerian: Vec<f64> = vec![1.0];
    let mut inv_pow = inv; // (1-z)^{-(j+1)}
    let mut binom = 1.0; // C(s+j-1, j)
    let mut base_pow = base.powf(-s);
    let mut est = inv * base_pow; // j = 0 uses 1/(1-z)
    let mut next = 0.0;
    for j in 1..=MAX_J + 1 {
        let mut row = vec![0.0; j];
        for (m, slot) in row.iter_mut().enumerate() {
            let keep = if m < eulerian.len() { (m + 1) as f64 * eulerian[m] } else { 0.0 };
            let carry = if m >= 1 && m - 1 < eulerian.len() {
                (j - m) as f64 * eulerian[m - 1]
            } else {
                0.0
            };
            *slot = keep + carry;
        }
        eulerian = row;
        inv_pow *= inv;
        binom *= (s + j as f64 - 1.0) / j as f64;
        base_pow /= base;
        let poly = eulerian
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let li = z * poly * inv_pow;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = li * (sign * binom * base_pow);
        if j == MAX_J + 1 {
            next = term.norm();
        } else {
            est += term;
        }
    }
    Some((est, next))
}

/// `sum_{k=1}^{K} e^{2πikx} k^{-p}` plus an asymptotic estimate of the
/// omitted tail when one is available.
///
/// Works for any real `p` when the tail correction applies; otherwise the
/// plain partial sum is returned.
pub(crate) fn polylog_on_circle(x: f64, p: f64, k_max: usize) -> Complex64 {
    let mut acc = ComplexSum::default();
    let integer_order = p == p.round() && p.abs() < 64.0;
    for k in 1..=k_max {
        let (sin, cos) = sin_cos_turns(k as f64 * x);
        let w = if integer_order {
            (k as f64).powi(-(p as i32))
        } else {
            (k as f64).powf(-p)
        };
        acc.add(Complex64::new(cos * w, sin * w));
    }
    let base = k_max as f64 + 1.0;
    let (sin, cos) = sin_cos_turns(x);
    let z = Complex64::new(cos, sin);
    let tail = if sin == 0.0 && cos == 1.0 {
        (p > 1.0).then(|| Complex64::new(hurwitz_tail(p, base).0, 0.0))
    } else {
        twisted_tail(z, p, base).map(|(t, _)| {
            let (s_k, c_k) = sin_cos_turns(base * x);
            Complex64::new(c_k, s_k) * t
        })
    };
    acc.value() + tail.unwrap_or_default()
}
