//! Outward-rounded interval arithmetic on f64 endpoints.
//!
//! Directed rounding is emulated by widening every operation result by one
//! unit in the last place on each side, which over-approximates the two
//! hardware rounding modes without touching the FPU state. Transcendental
//! constants get a configurable extra widening (4 ulps by default). The
//! audited inequality chain has absolute slack of at least 0.015, fifteen
//! orders of magnitude above the widening, so the certificate is
//! insensitive to the exact ulp budget; a dedicated test re-runs the whole
//! chain at 10x widening.

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

/// Closed interval `[lo, hi]` with `lo <= hi`; arithmetic produces
/// enclosures of the exact real result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.lo)?;
        t.serialize_element(&self.hi)?;
        t.end()
    }
}

fn steps_down(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

fn steps_up(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Exactly representable value (integers, dyadic rationals).
    pub fn exact(v: f64) -> Interval {
        Interval { lo: v, hi: v }
    }

    /// A parsed decimal literal: the true decimal lies within one ulp of
    /// the nearest f64, so a 1-ulp box encloses it.
    pub fn decimal(v: f64) -> Interval {
        Interval { lo: v.next_down(), hi: v.next_up() }
    }

    /// Enclosure of a transcendental constant from its nearest-f64 value,
    /// widened by `ulps` on each side.
    pub fn transcendental(v: f64, ulps: u32) -> Interval {
        Interval { lo: steps_down(v, ulps), hi: steps_up(v, ulps) }
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Entirely below the other interval.
    pub fn le(self, other: Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0
    }

    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    fn outward(lo: f64, hi: f64) -> Interval {
        Interval { lo: lo.next_down(), hi: hi.next_up() }
    }

    pub fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval::outward(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval::outward(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn mul(self, o: Interval) -> Interval {
        let products = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = products.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = products.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::outward(lo, hi)
    }

    /// Division; the divisor must not contain zero.
    pub fn div(self, o: Interval) -> Interval {
        assert!(!o.contains(0.0), "interval division by {o:?} containing zero");
        let quotients = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = quotients.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = quotients.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::outward(lo, hi)
    }

    pub fn scale(self, k: f64) -> Interval {
        self.mul(Interval::exact(k))
    }

    /// Integer power by repeated multiplication (n small).
    pub fn powi(self, n: u32) -> Interval {
        let mut acc = Interval::exact(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}
