//! The threshold recursion `f(1) = L`,
//! `f(l) = 1 + f(l-1)^16 (l-1)^2 max_{1<=i<l} f(i) f(l-i)`, and the
//! threshold modes used by the classifier.
//!
//! Values explode doubly exponentially (`f(3, 2)` already has ~300 bits,
//! `f(8, 2)` ~300 million), so a [`PaperTable`] keeps exact values only up
//! to [`MAX_EXACT_BITS`] and otherwise tracks certified bounds on the bit
//! length. Comparisons against machine-size counts are exact either way.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Exact values are materialized while their bit length stays below this.
pub const MAX_EXACT_BITS: u128 = 1 << 20;

fn validate(ell: usize, l: f64) -> Result<()> {
    if ell < 1 {
        return Err(invalid("threshold length must be >= 1"));
    }
    if !(l.is_finite() && l >= 1.0) {
        return Err(invalid(format!("L = {l} must be a finite real >= 1")));
    }
    Ok(())
}

/// `ceil(L)` as the integer seed of the recursion.
fn seed(l: f64) -> BigUint {
    BigUint::from(l.ceil() as u64)
}

fn step(ell: usize, prev: &[BigUint]) -> BigUint {
    // prev[i] = f(i + 1)
    let last = &prev[ell - 2];
    let sq = |x: &BigUint| x * x;
    let p16 = sq(&sq(&sq(&sq(last))));
    let best = (1..ell)
        .map(|i| &prev[i - 1] * &prev[ell - i - 1])
        .max()
        .expect("ell >= 2");
    let c = BigUint::from(((ell - 1) * (ell - 1)) as u64);
    p16 * c * best + BigUint::one()
}

/// Exact `f(ell, L)` with `f(1) = ceil(L)`. Cost grows like `16^ell` in the
/// bit length; intended for small `ell`.
pub fn f_value(ell: usize, l: f64) -> Result<BigUint> {
    validate(ell, l)?;
    let mut vals = vec![seed(l)];
    for e in 2..=ell {
        let next = step(e, &vals);
        vals.push(next);
    }
    Ok(vals.pop().unwrap())
}

/// One entry of a [`PaperTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FValue {
    exact: Option<BigUint>,
    /// Inclusive bounds on the bit length.
    bits: (u128, u128),
}

impl FValue {
    fn exact(v: BigUint) -> Self {
        let b = u128::from(v.bits());
        FValue {
            exact: Some(v),
            bits: (b, b),
        }
    }

    pub fn value(&self) -> Option<&BigUint> {
        self.exact.as_ref()
    }

    pub fn bit_bounds(&self) -> (u128, u128) {
        self.bits
    }

    /// `Some(v)` when the value fits in a `u64`, `None` when it is certainly
    /// at least `2^64`.
    pub fn as_u64(&self) -> Option<u64> {
        match &self.exact {
            Some(v) => v.to_u64(),
            None => {
                debug_assert!(self.bits.0 > 64);
                None
            }
        }
    }

    /// Exact comparison when decidable from the stored data.
    pub fn compare(&self, other: &FValue) -> Option<Ordering> {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return Some(a.cmp(b));
        }
        if self.bits.1 < other.bits.0 {
            Some(Ordering::Less)
        } else if other.bits.1 < self.bits.0 {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

fn bits_of(x: u64) -> u128 {
    u128::from(64 - x.leading_zeros())
}

/// `f(1..=max_len, L)` with exact values below [`MAX_EXACT_BITS`].
#[derive(Clone, Debug, PartialEq)]
pub struct PaperTable {
    l: f64,
    values: Vec<FValue>,
}

impl PaperTable {
    pub fn new(l: f64, max_len: usize) -> Result<Self> {
        validate(max_len.max(1), l)?;
        let mut values = vec![FValue::exact(seed(l))];
        let mut exact: Vec<BigUint> = vec![seed(l)];
        for ell in 2..=max_len {
            let prev = &values[ell - 2];
            let (plo, phi) = prev.bits;
            let p16 = (16 * (plo.max(1) - 1) + 1, 16u128.saturating_mul(phi));
            let cb = bits_of(((ell - 1) * (ell - 1)) as u64);
            let (mut mlo, mut mhi) = (0u128, 0u128);
            for i in 1..ell {
                let (a, b) = (&values[i - 1], &values[ell - i - 1]);
                mlo = mlo.max(a.bits.0 + b.bits.0 - 1);
                mhi = mhi.max(a.bits.1.saturating_add(b.bits.1));
            }
            let lo = p16.0 + cb + mlo - 2;
            let hi = p16.1.saturating_add(cb).saturating_add(mhi).saturating_add(1);
            let next = if exact.len() == ell - 1 && hi <= MAX_EXACT_BITS {
                let v = step(ell, &exact);
                exact.push(v.clone());
                FValue::exact(v)
            } else {
                FValue {
                    exact: None,
                    bits: (lo, hi),
                }
            };
            values.push(next);
        }
        Ok(PaperTable { l, values })
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn max_len(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, ell: usize) -> Option<&FValue> {
        ell.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// `f(ell) < f(ell+1)` for every consecutive pair, decided exactly or by
    /// disjoint bit-length bounds. `None` if some pair is undecidable.
    pub fn is_strictly_increasing(&self) -> Option<bool> {
        for w in self.values.windows(2) {
            match w[0].compare(&w[1])? {
                Ordering::Less => {}
                _ => return Some(false),
            }
        }
        Some(true)
    }
}

/// Threshold mode for the classifier.
#[derive(Clone, Debug, PartialEq)]
pub enum Thresholds {
    Paper(PaperTable),
    /// The same cap at every length; `None` is unbounded.
    Constant(Option<u64>),
    /// `values[ell - 1] = f(ell)`.
    Custom(Vec<BigUint>),
}

/// A threshold clipped to machine range: `None` means at least `2^64`,
/// which no count can reach.
pub type Cap = Option<u64>;

impl Thresholds {
    pub fn paper(l: f64, max_len: usize) -> Result<Self> {
        Ok(Thresholds::Paper(PaperTable::new(l, max_len)?))
    }

    /// Clipped `f(ell)`.
    pub fn cap(&self, ell: usize) -> Result<Cap> {
        let missing = || Error::Precondition(format!("no threshold for length {ell}"));
        match self {
            Thresholds::Paper(t) => Ok(t.get(ell).ok_or_else(missing)?.as_u64()),
            Thresholds::Constant(c) => Ok(*c),
            Thresholds::Custom(v) => {
                let x = ell.checked_sub(1).and_then(|i| v.get(i)).ok_or_else(missing)?;
                Ok(x.to_u64())
            }
        }
    }

    /// Largest length with a defined threshold (`usize::MAX` for constants).
    pub fn max_len(&self) -> usize {
        match self {
            Thresholds::Paper(t) => t.max_len(),
            Thresholds::Constant(_) => usize::MAX,
            Thresholds::Custom(v) => v.len(),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Thresholds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Thresholds::Paper(t) => write!(f, "paper(L={})", t.l),
            Thresholds::Constant(Some(n)) => write!(f, "const:{n}"),
            Thresholds::Constant(None) => write!(f, "const:inf"),
            Thresholds::Custom(v) => {
                let xs: Vec<_> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "custom:{}", xs.join(","))
            }
        }
    }
}

/// `count <= f`.
pub fn within(cap: Cap, count: u64) -> bool {
    cap.is_none_or(|c| count <= c)
}

/// `count >= f / 2`.
pub fn at_least_half(cap: Cap, count: u64) -> bool {
    cap.is_some_and(|c| 2 * u128::from(count) >= u128::from(c))
}

/// Parses `paper`, `const:N`, `const:inf` or `custom:a,b,c`. Paper mode
/// needs `L` and the longest length that will be queried.
pub fn parse_thresholds(spec: &str, l: f64, max_len: usize) -> Result<Thresholds> {
    let spec = spec.trim();
    if spec == "paper" {
        return Thresholds::paper(l, max_len);
    }
    if let Some(n) = spec.strip_prefix("const:") {
        if n == "inf" {
            return Ok(Thresholds::Constant(None));
        }
        return n
            .parse()
            .map(|n| Thresholds::Constant(Some(n)))
            .map_err(|_| invalid(format!("bad constant threshold {n:?}")));
    }
    if let Some(xs) = spec.strip_prefix("custom:") {
        let vals = xs
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigUint>()
                    .map_err(|_| invalid(format!("bad threshold value {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if vals.iter().any(Zero::is_zero) {
            return Err(invalid("custom thresholds must be >= 1"));
        }
        return Ok(Thresholds::Custom(vals));
    }
    Err(invalid(format!("unknown threshold mode {spec:?}")))
}
