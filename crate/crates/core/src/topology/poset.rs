use crate::error::{Error, Result};
use rand::Rng;

/// Hard limit on points, from the bitmask representation.
pub const MAX_POINTS: usize = 64;

/// A finite poset viewed as a finite spectral space. `a <= b` means that
/// `b` lies in the closure of `a`; closures are up-sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `up[i]` is the set of `j` with `i <= j`.
    up: Vec<u64>,
}

pub type Mask = u64;

impl FinitePoset {
    /// Builds the reflexive-transitive closure of the pairs and rejects
    /// cycles.
    pub fn new(labels: Vec<String>, le: &[(String, String)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(Error::resource(format!("{n} points exceed {MAX_POINTS}")));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::input(format!("duplicate point {l:?}")));
            }
        }
        let idx = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::input(format!("unknown point {s:?}")))
        };
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (a, b) in le {
            let (a, b) = (idx(a)?, idx(b)?);
            up[a] |= 1 << b;
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut m = up[i];
                for j in bits(up[i]) {
                    m |= up[j];
                }
                if m != up[i] {
                    up[i] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            for j in bits(up[i]) {
                if j != i && up[j] & (1 << i) != 0 {
                    return Err(Error::input(format!(
                        "order is not antisymmetric: {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(FinitePoset { labels, up })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::input(format!("unknown point {label:?}")))
    }

    pub fn full(&self) -> Mask {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i] & (1 << j) != 0
    }

    /// All strict relations `a < b` as label pairs.
    pub fn relations(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits(self.up[i]) {
                if i != j {
                    out.push((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        out
    }

    pub fn up_of(&self, i: usize) -> Mask {
        self.up[i]
    }

    pub fn down_of(&self, i: usize) -> Mask {
        (0..self.len()).filter(|&j| self.le(j, i)).fold(0, |m, j| m | 1 << j)
    }

    pub fn closure(&self, s: Mask) -> Mask {
        bits(s).fold(0, |m, i| m | self.up[i])
    }

    pub fn is_up_set(&self, s: Mask) -> bool {
        self.closure(s) == s
    }

    /// The least witness `(U, V)` with `s = U \ V`, both up-sets.
    pub fn weakly_visible_witness(&self, s: Mask) -> Option<(Mask, Mask)> {
        let u = self.closure(s);
        let v = self.closure(u & !s);
        (u & !v == s).then_some((u, v))
    }

    pub fn dual(&self) -> FinitePoset {
        let up = (0..self.len()).map(|i| self.down_of(i)).collect();
        FinitePoset { labels: self.labels.clone(), up }
    }

    /// A dual-weakly-isolated point of `Y^c` for an up-set `Y`: the least
    /// label `P` outside `Y` with `up(P) \ Y` inside `down(P)`.
    pub fn hochster_weak_witness(&self, y: Mask) -> Option<(usize, Mask)> {
        let yc = self.full() & !y;
        self.sorted_indices()
            .into_iter()
            .filter(|&p| yc & (1 << p) != 0)
            .find(|&p| self.up[p] & yc & !self.down_of(p) == 0)
            .map(|p| (p, self.up[p]))
    }

    /// A point `x` of the dual-closed set `s` with `up(x) ∩ s = {x}`.
    pub fn isolated_in(&self, s: Mask) -> Option<(usize, Mask)> {
        self.sorted_indices()
            .into_iter()
            .filter(|&p| s & (1 << p) != 0)
            .find(|&p| self.up[p] & s == 1 << p)
            .map(|p| (p, self.up[p]))
    }

    fn sorted_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        v
    }

    /// All up-sets, by brute force over subsets.
    pub fn up_sets(&self) -> Vec<Mask> {
        (0..=self.full()).filter(|&m| self.is_up_set(m)).collect()
    }

    /// A random poset on `n` points labelled `p0..`: a random DAG in index
    /// order, closed up.
    pub fn random<G: Rng + ?Sized>(rng: &mut G, n: usize, density: f64) -> Self {
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut le = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    le.push((labels[i].clone(), labels[j].clone()));
                }
            }
        }
        FinitePoset::new(labels, &le).expect("index order is acyclic")
    }
}

pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m & (1u64 << i) != 0)
}
