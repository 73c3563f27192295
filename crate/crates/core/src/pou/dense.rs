use serde::{Deserialize, Serialize};

/// A countable dense subset of the line, enumerated deterministically by
/// denominator: `{p/q + shift : q ≤ max_denominator}`.
///
/// Anchors are drawn from here. Candidates are only ever visited in a
/// fixed order, so schemes built from the same set are reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DenseSet {
    Rationals { max_denominator: u64 },
    /// `ℚ + shift`; with an irrational shift this is a dense set of irrationals.
    ShiftedRationals { shift: f64, max_denominator: u64 },
}

impl Default for DenseSet {
    fn default() -> Self {
        DenseSet::Rationals {
            max_denominator: 4096,
        }
    }
}

impl DenseSet {
    pub fn max_denominator(&self) -> u64 {
        match *self {
            DenseSet::Rationals { max_denominator }
            | DenseSet::ShiftedRationals {
                max_denominator, ..
            } => max_denominator,
        }
    }

    fn shift(&self) -> f64 {
        match *self {
            DenseSet::Rationals { .. } => 0.0,
            DenseSet::ShiftedRationals { shift, .. } => shift,
        }
    }

    fn candidate(&self, p: f64, q: u64) -> f64 {
        let shift = self.shift();
        if shift == 0.0 {
            p / q as f64
        } else {
            p / q as f64 + shift
        }
    }

    /// The accepted candidate closest to `target` within `radius`; ties go to
    /// the smaller denominator.
    pub fn nearest(&self, target: f64, radius: f64, accept: impl Fn(f64) -> bool) -> Option<f64> {
        let base = target - self.shift();
        let mut best: Option<(f64, f64)> = None;
        for q in 1..=self.max_denominator() {
            let scaled = base * q as f64;
            for p in [scaled.floor(), scaled.ceil()] {
                let v = self.candidate(p, q);
                let d = (v - target).abs();
                if d <= radius && accept(v) && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((v, d));
                }
            }
            if matches!(best, Some((_, d)) if d == 0.0) {
                break;
            }
        }
        best.map(|(v, _)| v)
    }

    /// The smallest accepted candidate in `[lo, hi)`.
    pub fn leftmost(&self, lo: f64, hi: f64, accept: impl Fn(f64) -> bool) -> Option<f64> {
        match self.leftmost_farey(lo, hi, &accept) {
            Walk::Found(v) => v,
            Walk::GaveUp => self.leftmost_scan(lo, hi, &accept),
        }
    }

    /// Tries the three candidates nearest `lo` per denominator, which is exact
    /// when `accept` holds for every candidate from about `lo` upward.
    fn leftmost_scan(&self, lo: f64, hi: f64, accept: &impl Fn(f64) -> bool) -> Option<f64> {
        let base = lo - self.shift();
        let mut best: Option<f64> = None;
        for q in 1..=self.max_denominator() {
            let first = (base * q as f64).ceil();
            // One step back absorbs rounding in `base * q`.
            for p in [first - 1.0, first, first + 1.0] {
                let v = self.candidate(p, q);
                if v >= lo && v < hi && accept(v) && best.is_none_or(|b| v < b) {
                    best = Some(v);
                }
            }
        }
        best
    }

    /// Walks the Farey sequence of order `max_denominator` upward from just
    /// below `lo`. Float candidates are nondecreasing along the walk, so the
    /// first accepted one is the leftmost.
    fn leftmost_farey(&self, lo: f64, hi: f64, accept: &impl Fn(f64) -> bool) -> Walk {
        const LIMIT: f64 = 65536.0;
        let shift = self.shift();
        if !(lo.abs() < LIMIT && hi.abs() < LIMIT && shift.abs() < LIMIT) {
            return Walk::GaveUp;
        }
        let qmax = self.max_denominator() as i128;
        let base = lo - shift;
        // Start 2^-30 below `base`, on the dyadic grid 2^-40.
        let m = (base * TWO_40).floor() as i128 - (1 << 10);
        let (mut p, mut q) = ceil_fraction(m, 1 << 40, qmax);
        let (mut a, mut b) = left_neighbor(p, q, qmax);
        loop {
            let v = self.candidate(p as f64, q as u64);
            if v >= hi {
                return Walk::Found(None);
            }
            if v >= lo && accept(v) {
                return Walk::Found(Some(v));
            }
            let k = (qmax + b) / q;
            (a, b, p, q) = (p, q, k * p - a, k * q - b);
        }
    }
}

enum Walk {
    Found(Option<f64>),
    GaveUp,
}

const TWO_40: f64 = (1u64 << 40) as f64;

/// The smallest `p/q ≥ m/d` with `1 ≤ q ≤ qmax`, in lowest terms.
///
/// Stern–Brocot descent between `⌊m/d⌋` and `⌊m/d⌋ + 1`, taking runs of
/// same-direction steps at once.
fn ceil_fraction(m: i128, d: i128, qmax: i128) -> (i128, i128) {
    let f = m.div_euclid(d);
    if f * d == m {
        return (f, 1);
    }
    // a/b < m/d < c/e with c·b − a·e = 1.
    let (mut a, mut b, mut c, mut e) = (f, 1i128, f + 1, 1i128);
    loop {
        if b + e > qmax {
            return (c, e);
        }
        let below = m * b - a * d;
        let above = c * d - m * e;
        // Raise the lower end: (a + k·c)/(b + k·e) stays below m/d while k·above < below.
        let k = ((below - 1) / above).min((qmax - b) / e);
        if below % above == 0 && below / above <= (qmax - b) / e {
            let k = below / above;
            return (a + k * c, b + k * e);
        }
        a += k * c;
        b += k * e;
        if b + e > qmax {
            return (c, e);
        }
        let below = m * b - a * d;
        let j = ((above - 1) / below).min((qmax - e) / b);
        if above % below == 0 && above / below <= (qmax - e) / b {
            let j = above / below;
            return (c + j * a, e + j * b);
        }
        c += j * a;
        e += j * b;
        if k == 0 && j == 0 {
            return (c, e);
        }
    }
}

/// The predecessor of `p/q` in the Farey sequence of order `qmax`.
fn left_neighbor(p: i128, q: i128, qmax: i128) -> (i128, i128) {
    // b ≡ p⁻¹ (mod q), as large as possible with b ≤ qmax; then a = (p·b − 1)/q.
    let inv = if q == 1 { 0 } else { mod_inverse(p.rem_euclid(q), q) };
    let b = inv + ((qmax - inv) / q) * q;
    let b = if b == 0 { q } else { b };
    ((p * b - 1).div_euclid(q), b)
}

fn mod_inverse(x: i128, m: i128) -> i128 {
    let (mut r0, mut r1, mut s0, mut s1) = (m, x, 0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(m)
}
