use serde::{Deserialize, Serialize};

/// A real interval whose ends may each be open or closed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityWindow {
    pub lower: f64,
    pub upper: f64,
    pub lower_open: bool,
    pub upper_open: bool,
}

impl FeasibilityWindow {
    pub fn open(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            lower_open: true,
            upper_open: true,
        }
    }

    /// `(lower, upper]`
    pub fn open_closed(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            lower_open: true,
            upper_open: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.lower < self.upper
            || (self.lower == self.upper && !self.lower_open && !self.upper_open))
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lower_open { x > self.lower } else { x >= self.lower };
        let below = if self.upper_open { x < self.upper } else { x <= self.upper };
        above && below
    }

    /// Largest window contained in both; on equal ends the open one wins.
    pub fn intersect(&self, other: &Self) -> Self {
        let (lower, lower_open) = tighter(
            (self.lower, self.lower_open),
            (other.lower, other.lower_open),
            |a, b| a > b,
        );
        let (upper, upper_open) = tighter(
            (self.upper, self.upper_open),
            (other.upper, other.upper_open),
            |a, b| a < b,
        );
        Self {
            lower,
            upper,
            lower_open,
            upper_open,
        }
    }

    /// Midpoint of the interior, or the single point of a closed degenerate window.
    pub fn witness(&self) -> Option<f64> {
        if self.is_empty() {
            None
        } else {
            Some(0.5 * (self.lower + self.upper))
        }
    }

    pub fn width(&self) -> f64 {
        (self.upper - self.lower).max(0.0)
    }
}

fn tighter(a: (f64, bool), b: (f64, bool), stricter: impl Fn(f64, f64) -> bool) -> (f64, bool) {
    if stricter(a.0, b.0) {
        a
    } else if stricter(b.0, a.0) {
        b
    } else {
        (a.0, a.1 || b.1)
    }
}
