use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// An eventually periodic set of natural numbers: membership below `start`
/// is listed, from `start` on it repeats `pattern`.
///
/// Normal form: the pattern has minimal period and the prefix is as short
/// as possible, so equality of values is equality of sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "HeightSetRepr", into = "HeightSetRepr")]
pub struct HeightSet {
    prefix: Vec<bool>,
    pattern: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum HeightSetRepr {
    Finite(Vec<u64>),
    /// The heights that are missing.
    Cofinite(Vec<u64>),
    /// Members below `start`, then `n` is a member iff `n % period` is in
    /// `residues`.
    Periodic {
        start: u64,
        below: Vec<u64>,
        period: u64,
        residues: Vec<u64>,
    },
}

const MAX_SPAN: u64 = 4096;

impl TryFrom<HeightSetRepr> for HeightSet {
    type Error = String;
    fn try_from(r: HeightSetRepr) -> Result<Self, String> {
        let check = |v: &[u64]| match v.iter().max() {
            Some(&m) if m >= MAX_SPAN => Err(format!("height {m} exceeds {MAX_SPAN}")),
            _ => Ok(()),
        };
        Ok(match r {
            HeightSetRepr::Finite(v) => {
                check(&v)?;
                HeightSet::from_finite(v)
            }
            HeightSetRepr::Cofinite(v) => {
                check(&v)?;
                HeightSet::from_finite(v).complement()
            }
            HeightSetRepr::Periodic { start, below, period, residues } => {
                check(&below)?;
                if period == 0 || period > MAX_SPAN || start > MAX_SPAN {
                    return Err("periodic height set needs 0 < period, start <= 4096".into());
                }
                if below.iter().any(|&b| b >= start) {
                    return Err("listed heights must lie below start".into());
                }
                let prefix = (0..start).map(|n| below.contains(&n)).collect();
                let pattern = (start..start + period).map(|n| residues.contains(&(n % period))).collect();
                HeightSet::normalize(prefix, pattern)
            }
        })
    }
}

impl From<HeightSet> for HeightSetRepr {
    fn from(h: HeightSet) -> Self {
        if h.pattern == [false] {
            HeightSetRepr::Finite(h.members_below(h.start()))
        } else if h.pattern == [true] {
            HeightSetRepr::Cofinite(h.complement().members_below(h.start()))
        } else {
            let (start, period) = (h.start(), h.period());
            HeightSetRepr::Periodic {
                start,
                below: h.members_below(start),
                period,
                residues: (start..start + period)
                    .filter(|&n| h.contains(n))
                    .map(|n| n % period)
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect(),
            }
        }
    }
}

impl HeightSet {
    fn normalize(mut prefix: Vec<bool>, mut pattern: Vec<bool>) -> Self {
        assert!(!pattern.is_empty());
        let n = pattern.len();
        if let Some(q) = (1..=n).find(|&q| n % q == 0 && (q..n).all(|i| pattern[i] == pattern[i - q])) {
            pattern.truncate(q);
        }
        while let Some(&last) = prefix.last() {
            if last != *pattern.last().unwrap() {
                break;
            }
            prefix.pop();
            pattern.rotate_right(1);
        }
        HeightSet { prefix, pattern }
    }

    pub fn empty() -> Self {
        HeightSet { prefix: vec![], pattern: vec![false] }
    }

    pub fn all() -> Self {
        HeightSet { prefix: vec![], pattern: vec![true] }
    }

    pub fn from_finite(v: impl IntoIterator<Item = u64>) -> Self {
        let v: Vec<u64> = v.into_iter().collect();
        let len = v.iter().max().map_or(0, |m| m + 1);
        let prefix = (0..len).map(|n| v.contains(&n)).collect();
        HeightSet::normalize(prefix, vec![false])
    }

    /// `{n, n+1, ...}`.
    pub fn tail(n: u64) -> Self {
        HeightSet::normalize(vec![false; n as usize], vec![true])
    }

    /// `{n, ..., m-1}`.
    pub fn interval(n: u64, m: u64) -> Self {
        HeightSet::from_finite(n..m)
    }

    /// Multiples of `period` shifted by `offset`, from `offset` on.
    pub fn progression(offset: u64, period: u64) -> Self {
        let mut pattern = vec![false; period as usize];
        pattern[0] = true;
        HeightSet::normalize(vec![false; offset as usize], pattern)
    }

    pub fn start(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.pattern.len() as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        let s = self.start();
        if n < s {
            self.prefix[n as usize]
        } else {
            self.pattern[((n - s) % self.period()) as usize]
        }
    }

    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&n| self.contains(n)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.pattern == [false]
    }

    pub fn is_cofinite(&self) -> bool {
        self.pattern == [true]
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.is_finite()
    }

    pub fn is_all(&self) -> bool {
        self.prefix.is_empty() && self.is_cofinite()
    }

    pub fn least(&self) -> Option<u64> {
        (0..self.start() + self.period()).find(|&n| self.contains(n))
    }

    /// If the set is `{n, n+1, ...}`, returns `n`.
    pub fn as_tail(&self) -> Option<u64> {
        if !self.is_cofinite() {
            return None;
        }
        let s = self.start();
        (0..s).all(|n| !self.contains(n)).then_some(s)
    }

    /// If the set is `{n, ..., m-1}` with `n < m`, returns `(n, m)`.
    pub fn as_interval(&self) -> Option<(u64, u64)> {
        if !self.is_finite() || self.is_empty() {
            return None;
        }
        let n = self.least()?;
        let m = self.start();
        (n..m).all(|k| self.contains(k)).then_some((n, m))
    }

    fn zip(&self, o: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let start = self.start().max(o.start());
        let period = self.period().lcm(&o.period());
        let prefix = (0..start).map(|n| f(self.contains(n), o.contains(n))).collect();
        let pattern = (start..start + period).map(|n| f(self.contains(n), o.contains(n))).collect();
        HeightSet::normalize(prefix, pattern)
    }

    pub fn union(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a || b)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        HeightSet {
            prefix: self.prefix.iter().map(|b| !b).collect(),
            pattern: self.pattern.iter().map(|b| !b).collect(),
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.intersect(&o.complement())
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.minus(o).is_empty()
    }

    /// A random set with prefix length below 8 and period at most 3.
    pub fn random<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let s = rng.gen_range(0..8);
        let p = rng.gen_range(1..=3);
        let prefix = (0..s).map(|_| rng.gen_bool(0.5)).collect();
        let pattern = (0..p).map(|_| rng.gen_bool(0.4)).collect();
        HeightSet::normalize(prefix, pattern)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_is_unique() {
        let evens = HeightSet::progression(0, 2);
        let also = HeightSet::normalize(vec![true, false, true], vec![false, true, false, true]);
        assert_eq!(evens, also);
        assert_eq!(HeightSet::tail(0), HeightSet::all());
        assert_eq!(HeightSet::from_finite([]), HeightSet::empty());
        assert_eq!(HeightSet::tail(3).as_tail(), Some(3));
        assert_eq!(HeightSet::interval(2, 5).as_interval(), Some((2, 5)));
    }

    #[test]
    fn json_forms() {
        let evens = HeightSet::progression(0, 2);
        let j = serde_json::to_string(&evens).unwrap();
        assert_eq!(j, r#"{"periodic":{"start":0,"below":[],"period":2,"residues":[0]}}"#);
        let back: HeightSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, evens);
        let t: HeightSet = serde_json::from_str(r#"{"cofinite":[0,1]}"#).unwrap();
        assert_eq!(t, HeightSet::tail(2));
    }

    #[test]
    fn boolean_ops_pointwise() {
        let a = HeightSet::progression(1, 3);
        let b = HeightSet::from_finite([0, 4, 5]).union(&HeightSet::tail(9));
        for n in 0..40 {
            assert_eq!(a.union(&b).contains(n), a.contains(n) || b.contains(n));
            assert_eq!(a.intersect(&b).contains(n), a.contains(n) && b.contains(n));
            assert_eq!(a.complement().contains(n), !a.contains(n));
        }
    }
}
