use std::cmp::Ordering;
use std::fmt;

/// Largest supported number of complex generators.
pub const MAX_GENERATORS: usize = 16;

/// Wedge monomial `φ^{i₁…i_p} ∧ φ̄^{j₁…j_q}` in canonical order (φ's ascending, then φ̄'s ascending).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub holo: u16,
    pub anti: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { holo: 0, anti: 0 };

    pub fn new(holo: u16, anti: u16) -> Self {
        Monomial { holo, anti }
    }

    /// From zero-based index lists; duplicates are rejected.
    pub fn from_indices(holo: &[usize], anti: &[usize]) -> Option<Self> {
        let mut h = 0u16;
        for &i in holo {
            if i >= MAX_GENERATORS || h & (1 << i) != 0 {
                return None;
            }
            h |= 1 << i;
        }
        let mut a = 0u16;
        for &i in anti {
            if i >= MAX_GENERATORS || a & (1 << i) != 0 {
                return None;
            }
            a |= 1 << i;
        }
        Some(Monomial { holo: h, anti: a })
    }

    pub fn holo_gen(k: usize) -> Self {
        Monomial { holo: 1 << k, anti: 0 }
    }

    pub fn anti_gen(k: usize) -> Self {
        Monomial { holo: 0, anti: 1 << k }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.holo.count_ones() as usize, self.anti.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        (self.holo.count_ones() + self.anti.count_ones()) as usize
    }

    /// Holomorphic bits in the low half, antiholomorphic bits in the high half.
    pub fn combined(&self) -> u32 {
        self.holo as u32 | (self.anti as u32) << 16
    }

    pub fn from_combined(c: u32) -> Self {
        Monomial { holo: c as u16, anti: (c >> 16) as u16 }
    }

    pub fn holo_indices(&self) -> Vec<usize> {
        bits(self.holo as u32)
    }

    pub fn anti_indices(&self) -> Vec<usize> {
        bits(self.anti as u32)
    }

    /// `self ∧ other = sign · union`, or `None` when a generator repeats.
    pub fn wedge(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let a = self.combined();
        let b = other.combined();
        if a & b != 0 {
            return None;
        }
        Some((inversions(a, b) % 2 == 1, Monomial::from_combined(a | b)))
    }

    /// Complex conjugate monomial and whether the reordering flips the sign.
    pub fn conjugate(&self) -> (bool, Monomial) {
        let (p, q) = self.bidegree();
        ((p * q) % 2 == 1, Monomial { holo: self.anti, anti: self.holo })
    }

    /// Ordered list of generator slots as combined bit positions.
    pub fn slots(&self) -> Vec<u32> {
        bits(self.combined()).into_iter().map(|b| b as u32).collect()
    }

    pub fn top(n: usize) -> Self {
        let m = ((1u32 << n) - 1) as u16;
        Monomial { holo: m, anti: m }
    }

    /// Complementary monomial within `n` generators.
    pub fn complement(&self, n: usize) -> Self {
        let t = Self::top(n);
        Monomial { holo: t.holo & !self.holo, anti: t.anti & !self.anti }
    }
}

/// Number of pairs `(x ∈ a, y ∈ b)` with `x > y`.
fn inversions(a: u32, b: u32) -> u32 {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        count += (a >> (y + 1)).count_ones();
    }
    count
}

fn bits(mut m: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Lexicographic comparison of equal-size index sets given as bitmasks.
fn lex(x: u16, y: u16) -> Ordering {
    if x == y {
        return Ordering::Equal;
    }
    let d = x ^ y;
    let low = d & d.wrapping_neg();
    if x & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        let (p, q) = self.bidegree();
        let (r, s) = o.bidegree();
        (p + q)
            .cmp(&(r + s))
            .then(r.cmp(&p))
            .then_with(|| lex(self.holo, o.holo))
            .then_with(|| lex(self.anti, o.anti))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let h: Vec<String> = self.holo_indices().iter().map(|i| (i + 1).to_string()).collect();
        let a: Vec<String> = self.anti_indices().iter().map(|i| format!("{}\u{0304}", i + 1)).collect();
        let sep = if h.iter().chain(&a).any(|s| s.chars().count() > 2) { "," } else { "" };
        let mut parts = h;
        parts.extend(a);
        write!(f, "φ^{{{}}}", parts.join(sep))
    }
}

/// All index subsets of size `k` from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<u16> {
    fn rec(start: usize, n: usize, k: usize, acc: u16, out: &mut Vec<u16>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Canonical monomial list of bidegree `(p,q)`.
pub fn canonical_monomials(n: usize, p: usize, q: usize) -> Vec<Monomial> {
    let hs = combinations(n, p);
    let as_ = combinations(n, q);
    let mut out = Vec::with_capacity(hs.len() * as_.len());
    for &h in &hs {
        for &a in &as_ {
            out.push(Monomial::new(h, a));
        }
    }
    out
}
