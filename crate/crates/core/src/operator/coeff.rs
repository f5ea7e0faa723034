//! Coefficient functions `ℤ → ℝ` for operators acting diagonally on basis
//! vectors.
//!
//! Built-in shapes (constant, step, indicator, table) know their supremum and
//! infimum exactly; derived shapes (shifted, reciprocal, product) carry as much
//! of that information as can be propagated without enumerating `ℤ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Closed index interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Support {
    pub lo: i64,
    pub hi: i64,
}

impl Support {
    pub const EMPTY: Support = Support { lo: 1, hi: 0 };

    pub fn new(lo: i64, hi: i64) -> Self {
        Support { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, j: i64) -> bool {
        self.lo <= j && j <= self.hi
    }

    pub fn shifted(&self, by: i64) -> Self {
        if self.is_empty() {
            *self
        } else {
            Support::new(self.lo + by, self.hi + by)
        }
    }

    pub fn intersect(&self, other: &Support) -> Self {
        let s = Support::new(self.lo.max(other.lo), self.hi.min(other.hi));
        if s.is_empty() {
            Support::EMPTY
        } else {
            s
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

type CoeffFn = dyn Fn(i64) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum Coeff {
    Const(f64),
    /// `below` for `j < split`, `above` for `j >= split`.
    Step { split: i64, below: f64, above: f64 },
    /// `value` on `[lo, hi]`, zero elsewhere.
    Indicator { lo: i64, hi: i64, value: f64 },
    /// Explicit values, `default` elsewhere.
    Table { values: Arc<BTreeMap<i64, f64>>, default: f64 },
    /// `j ↦ inner(j - by)`.
    Shifted { inner: Arc<Coeff>, by: i64 },
    /// `j ↦ 1 / inner(j)`.
    Reciprocal(Arc<Coeff>),
    /// `j ↦ outer(j + shift) · inner(j)`.
    Product { outer: Arc<Coeff>, shift: i64, inner: Arc<Coeff> },
    /// `j ↦ a(j) + sign · b(j)`.
    Sum { a: Arc<Coeff>, b: Arc<Coeff>, sign: f64 },
    Func(Arc<CoeffFn>),
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Const(c) => write!(f, "Const({c})"),
            Coeff::Step { split, below, above } => {
                write!(f, "Step({below} for j<{split}, {above} otherwise)")
            }
            Coeff::Indicator { lo, hi, value } => write!(f, "Indicator({value} on [{lo},{hi}])"),
            Coeff::Table { values, default } => {
                write!(f, "Table({} entries, default {default})", values.len())
            }
            Coeff::Shifted { inner, by } => write!(f, "Shifted({inner:?}, {by})"),
            Coeff::Reciprocal(inner) => write!(f, "Reciprocal({inner:?})"),
            Coeff::Product { outer, shift, inner } => {
                write!(f, "Product({outer:?} @+{shift}, {inner:?})")
            }
            Coeff::Sum { a, b, sign } => write!(f, "Sum({a:?}, {sign} * {b:?})"),
            Coeff::Func(_) => write!(f, "Func(..)"),
        }
    }
}

impl Coeff {
    pub fn func(f: impl Fn(i64) -> f64 + Send + Sync + 'static) -> Self {
        Coeff::Func(Arc::new(f))
    }

    pub fn table(values: BTreeMap<i64, f64>, default: f64) -> Self {
        Coeff::Table { values: Arc::new(values), default }
    }

    pub fn eval(&self, j: i64) -> f64 {
        match self {
            Coeff::Const(c) => *c,
            Coeff::Step { split, below, above } => {
                if j < *split {
                    *below
                } else {
                    *above
                }
            }
            Coeff::Indicator { lo, hi, value } => {
                if *lo <= j && j <= *hi {
                    *value
                } else {
                    0.0
                }
            }
            Coeff::Table { values, default } => values.get(&j).copied().unwrap_or(*default),
            Coeff::Shifted { inner, by } => inner.eval(j - by),
            Coeff::Reciprocal(inner) => 1.0 / inner.eval(j),
            Coeff::Product { outer, shift, inner } => {
                let b = inner.eval(j);
                if b == 0.0 {
                    0.0
                } else {
                    outer.eval(j + shift) * b
                }
            }
            Coeff::Sum { a, b, sign } => a.eval(j) + sign * b.eval(j),
            Coeff::Func(f) => f(j),
        }
    }

    /// Smallest interval outside which the coefficient is known to vanish;
    /// `None` when no finite bound is known.
    pub fn support(&self) -> Option<Support> {
        match self {
            Coeff::Const(c) => (*c == 0.0).then_some(Support::EMPTY),
            Coeff::Step { below, above, .. } => {
                (*below == 0.0 && *above == 0.0).then_some(Support::EMPTY)
            }
            Coeff::Indicator { lo, hi, value } => {
                if *value == 0.0 || lo > hi {
                    Some(Support::EMPTY)
                } else {
                    Some(Support::new(*lo, *hi))
                }
            }
            Coeff::Table { values, default } => {
                if *default != 0.0 {
                    return None;
                }
                let mut nz = values.iter().filter(|(_, v)| **v != 0.0).map(|(k, _)| *k);
                match nz.next() {
                    None => Some(Support::EMPTY),
                    Some(first) => {
                        let last = nz.next_back().unwrap_or(first);
                        Some(Support::new(first, last))
                    }
                }
            }
            Coeff::Shifted { inner, by } => inner.support().map(|s| s.shifted(*by)),
            Coeff::Reciprocal(_) | Coeff::Func(_) => None,
            Coeff::Product { outer, shift, inner } => {
                match (inner.support(), outer.support().map(|s| s.shifted(-*shift))) {
                    (Some(a), Some(b)) => Some(a.intersect(&b)),
                    (Some(a), None) | (None, Some(a)) => Some(a),
                    (None, None) => None,
                }
            }
            Coeff::Sum { a, b, .. } => match (a.support(), b.support()) {
                (Some(x), Some(y)) if x.is_empty() => Some(y),
                (Some(x), Some(y)) if y.is_empty() => Some(x),
                (Some(x), Some(y)) => Some(Support::new(x.lo.min(y.lo), x.hi.max(y.hi))),
                _ => None,
            },
        }
    }

    /// Exact `sup_j |c(j)|` when it can be determined without enumeration.
    pub fn sup_abs(&self) -> Option<f64> {
        match self {
            Coeff::Const(c) => Some(c.abs()),
            Coeff::Step { below, above, .. } => Some(below.abs().max(above.abs())),
            Coeff::Indicator { lo, hi, value } => Some(if lo > hi { 0.0 } else { value.abs() }),
            Coeff::Table { values, default } => Some(
                values.values().fold(default.abs(), |acc, v| acc.max(v.abs())),
            ),
            Coeff::Shifted { inner, .. } => inner.sup_abs(),
            Coeff::Reciprocal(inner) => inner.inf_abs().map(|m| 1.0 / m),
            Coeff::Product { outer, inner, .. } => match (outer.as_ref(), inner.as_ref()) {
                (Coeff::Const(a), b) => b.sup_abs().map(|s| s * a.abs()),
                (a, Coeff::Const(b)) => a.sup_abs().map(|s| s * b.abs()),
                _ => None,
            },
            Coeff::Sum { .. } | Coeff::Func(_) => None,
        }
    }

    /// Exact `inf_j |c(j)|` when it can be determined without enumeration.
    pub fn inf_abs(&self) -> Option<f64> {
        match self {
            Coeff::Const(c) => Some(c.abs()),
            Coeff::Step { below, above, .. } => Some(below.abs().min(above.abs())),
            Coeff::Indicator { .. } => Some(0.0),
            Coeff::Table { values, default } => Some(
                values.values().fold(default.abs(), |acc, v| acc.min(v.abs())),
            ),
            Coeff::Shifted { inner, .. } => inner.inf_abs(),
            Coeff::Reciprocal(inner) => inner.sup_abs().map(|m| 1.0 / m),
            Coeff::Product { outer, inner, .. } => match (outer.as_ref(), inner.as_ref()) {
                (Coeff::Const(a), b) => b.inf_abs().map(|s| s * a.abs()),
                (a, Coeff::Const(b)) => a.inf_abs().map(|s| s * b.abs()),
                _ => None,
            },
            Coeff::Sum { .. } | Coeff::Func(_) => None,
        }
    }

    /// `j ↦ self(j - by)`, folded into closed shapes when possible.
    pub fn shifted(&self, by: i64) -> Coeff {
        if by == 0 {
            return self.clone();
        }
        match self {
            Coeff::Const(c) => Coeff::Const(*c),
            Coeff::Step { split, below, above } => Coeff::Step {
                split: split + by,
                below: *below,
                above: *above,
            },
            Coeff::Indicator { lo, hi, value } => Coeff::Indicator {
                lo: lo + by,
                hi: hi + by,
                value: *value,
            },
            Coeff::Shifted { inner, by: b0 } => inner.shifted(b0 + by),
            other => Coeff::Shifted { inner: Arc::new(other.clone()), by },
        }
    }

    pub fn reciprocal(&self) -> Coeff {
        match self {
            Coeff::Const(c) => Coeff::Const(1.0 / c),
            Coeff::Step { split, below, above } => Coeff::Step {
                split: *split,
                below: 1.0 / below,
                above: 1.0 / above,
            },
            Coeff::Reciprocal(inner) => inner.as_ref().clone(),
            other => Coeff::Reciprocal(Arc::new(other.clone())),
        }
    }

    /// `j ↦ outer(j + shift) · inner(j)`.
    pub fn product(outer: &Coeff, shift: i64, inner: &Coeff) -> Coeff {
        match (outer, inner) {
            (Coeff::Const(a), Coeff::Const(b)) => Coeff::Const(a * b),
            (Coeff::Const(a), _) if *a == 1.0 => inner.clone(),
            (_, Coeff::Const(b)) if *b == 1.0 => outer.shifted(-shift),
            (Coeff::Const(a), _) if *a == 0.0 => Coeff::Const(0.0),
            (_, Coeff::Const(b)) if *b == 0.0 => Coeff::Const(0.0),
            _ => Coeff::Product {
                outer: Arc::new(outer.clone()),
                shift,
                inner: Arc::new(inner.clone()),
            },
        }
    }

    pub fn sum(a: &Coeff, b: &Coeff, sign: f64) -> Coeff {
        match (a, b) {
            (Coeff::Const(x), Coeff::Const(y)) => Coeff::Const(x + sign * y),
            _ => Coeff::Sum {
                a: Arc::new(a.clone()),
                b: Arc::new(b.clone()),
                sign,
            },
        }
    }

    pub fn scaled(&self, factor: f64) -> Coeff {
        match self {
            Coeff::Const(c) => Coeff::Const(c * factor),
            Coeff::Step { split, below, above } => Coeff::Step {
                split: *split,
                below: below * factor,
                above: above * factor,
            },
            Coeff::Indicator { lo, hi, value } => Coeff::Indicator {
                lo: *lo,
                hi: *hi,
                value: value * factor,
            },
            other => Coeff::product(&Coeff::Const(factor), 0, other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_and_shift_fold() {
        let c = Coeff::Step { split: 0, below: 2.0, above: 0.5 };
        assert_eq!(c.eval(-1), 2.0);
        assert_eq!(c.eval(0), 0.5);
        let s = c.shifted(3);
        assert_eq!(s.eval(2), 2.0);
        assert_eq!(s.eval(3), 0.5);
        assert!(matches!(s, Coeff::Step { split: 3, .. }));
    }

    #[test]
    fn product_support_is_intersection() {
        let p = Coeff::Indicator { lo: -2, hi: 2, value: 1.0 };
        let q = Coeff::Indicator { lo: 0, hi: 10, value: 3.0 };
        // outer evaluated at j + 1
        let r = Coeff::product(&q, 1, &p);
        assert_eq!(r.support(), Some(Support::new(-1, 2)));
        assert_eq!(r.eval(-1), 3.0);
        assert_eq!(r.eval(-2), 0.0);
    }

    #[test]
    fn reciprocal_bounds() {
        let c = Coeff::Step { split: 0, below: 4.0, above: 0.25 };
        let r = c.reciprocal();
        assert_eq!(r.sup_abs(), Some(4.0));
        assert_eq!(r.inf_abs(), Some(0.25));
        let t = Coeff::Reciprocal(Arc::new(Coeff::func(|j| (j.abs() + 1) as f64)));
        assert_eq!(t.eval(3), 0.25);
        assert_eq!(t.sup_abs(), None);
    }

    #[test]
    fn table_support_skips_zeros() {
        let mut m = BTreeMap::new();
        m.insert(-4, 0.0);
        m.insert(-1, 2.0);
        m.insert(5, 1.0);
        let t = Coeff::table(m, 0.0);
        assert_eq!(t.support(), Some(Support::new(-1, 5)));
        assert_eq!(t.sup_abs(), Some(2.0));
    }
}
