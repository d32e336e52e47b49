use serde::{Deserialize, Serialize};

/// Trapezoid `a ≤ b ≤ c ≤ d`: zero outside `[a, d]`, one on `[b, c]`,
/// linear on the flanks. `a == b` or `c == d` gives a shoulder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Trapezoid {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl From<[f64; 4]> for Trapezoid {
    fn from([a, b, c, d]: [f64; 4]) -> Self {
        Self { a, b, c, d }
    }
}

impl From<Trapezoid> for [f64; 4] {
    fn from(t: Trapezoid) -> Self {
        [t.a, t.b, t.c, t.d]
    }
}

impl Trapezoid {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn is_ordered(&self) -> bool {
        self.a <= self.b && self.b <= self.c && self.c <= self.d
    }

    pub fn degree(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            0.0
        } else if x >= self.b && x <= self.c {
            1.0
        } else if x < self.b {
            (x - self.a) / (self.b - self.a)
        } else {
            (self.d - x) / (self.d - self.c)
        }
    }
}

/// A labelled fuzzy set; on disk `["Label", [a, b, c, d]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "(String, Trapezoid)", into = "(String, Trapezoid)")]
pub struct MembershipFn {
    pub label: String,
    pub shape: Trapezoid,
}

impl From<(String, Trapezoid)> for MembershipFn {
    fn from((label, shape): (String, Trapezoid)) -> Self {
        Self { label, shape }
    }
}

impl From<MembershipFn> for (String, Trapezoid) {
    fn from(m: MembershipFn) -> Self {
        (m.label, m.shape)
    }
}

impl MembershipFn {
    pub fn new(label: impl Into<String>, shape: Trapezoid) -> Self {
        Self { label: label.into(), shape }
    }

    pub fn degree(&self, x: f64) -> f64 {
        self.shape.degree(x)
    }
}
