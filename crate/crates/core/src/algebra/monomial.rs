use std::cmp::Ordering;
use std::fmt;

/// A variable of the ring C[z_1..z_n, zb_1..zb_n, w]. Indices are 1-based,
/// matching the printed names `z1`, `zb1`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z(usize),
    Zb(usize),
    W,
}

impl Var {
    /// Position of the variable inside an exponent vector for dimension `n`,
    /// or `None` if the index is out of range.
    pub fn slot(self, n: usize) -> Option<usize> {
        match self {
            Var::Z(i) if (1..=n).contains(&i) => Some(i - 1),
            Var::Zb(i) if (1..=n).contains(&i) => Some(n + i - 1),
            Var::W => Some(2 * n),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{i}"),
            Var::Zb(i) => write!(f, "zb{i}"),
            Var::W => write!(f, "w"),
        }
    }
}

/// Exponent vector `z^a zb^b w^j`, stored as `[a_1..a_n, b_1..b_n, j]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; 2 * n + 1].into_boxed_slice(),
        }
    }

    pub fn from_parts(z: &[u32], zb: &[u32], w: u32) -> Self {
        assert_eq!(z.len(), zb.len(), "z and zb blocks must have equal length");
        let mut exps = Vec::with_capacity(2 * z.len() + 1);
        exps.extend_from_slice(z);
        exps.extend_from_slice(zb);
        exps.push(w);
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub(crate) fn from_exps(exps: Vec<u32>) -> Self {
        debug_assert!(exps.len() % 2 == 1);
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn n(&self) -> usize {
        (self.exps.len() - 1) / 2
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn z(&self) -> &[u32] {
        &self.exps[..self.n()]
    }

    pub fn zb(&self) -> &[u32] {
        let n = self.n();
        &self.exps[n..2 * n]
    }

    pub fn w(&self) -> u32 {
        self.exps[2 * self.n()]
    }

    /// Exponent of `v`; zero for variables outside the ambient dimension.
    pub fn exp(&self, v: Var) -> u32 {
        v.slot(self.n()).map_or(0, |s| self.exps[s])
    }

    pub fn with_exp(&self, v: Var, e: u32) -> Monomial {
        let mut exps = self.exps.to_vec();
        exps[v.slot(self.n()).expect("variable out of range")] = e;
        Monomial::from_exps(exps)
    }

    /// Total degree; `w` counts once.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Degree with `w` given weight two.
    pub fn weighted_degree(&self) -> u32 {
        self.total_degree() + self.w()
    }

    pub fn holomorphic_degree(&self) -> u32 {
        self.z().iter().sum()
    }

    pub fn antiholomorphic_degree(&self) -> u32 {
        self.zb().iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial::from_exps(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    /// Graded by total degree, then the z block, then the zb block, then w;
    /// within a block a larger leading exponent sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.z().cmp(self.z()))
            .then_with(|| other.zb().cmp(self.zb()))
            .then_with(|| other.w().cmp(&self.w()))
            .then_with(|| self.exps.len().cmp(&other.exps.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Factors appear as `z1, zb1, z2, zb2, ..., w`; the unit monomial is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut factors = Vec::new();
        for i in 1..=n {
            for v in [Var::Z(i), Var::Zb(i)] {
                push_factor(&mut factors, v, self.exp(v));
            }
        }
        push_factor(&mut factors, Var::W, self.w());
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn push_factor(out: &mut Vec<String>, v: Var, e: u32) {
    match e {
        0 => {}
        1 => out.push(v.to_string()),
        _ => out.push(format!("{v}^{e}")),
    }
}

/// All exponent vectors of length `len` summing to `d`, in lexicographically
/// decreasing order.
pub fn compositions(len: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(len - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(len, d, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All w-free monomials of total degree `d` in `z, zb` for dimension `n`.
pub fn zzbar_monomials(n: usize, d: u32) -> Vec<Monomial> {
    compositions(2 * n, d)
        .into_iter()
        .map(|mut e| {
            e.push(0);
            Monomial::from_exps(e)
        })
        .collect()
}

/// Number of monomials of degree `d` in `k` variables, C(d+k-1, k-1).
pub fn monomial_count(k: usize, d: u32) -> u64 {
    let (mut num, mut den) = (1u64, 1u64);
    for i in 1..k as u64 {
        num *= d as u64 + i;
        den *= i;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
