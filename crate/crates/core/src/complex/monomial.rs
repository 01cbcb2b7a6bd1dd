use std::fmt;

/// A monomial `U_0^{a_0} … U_{n-1}^{a_{n-1}}`, one exponent byte per variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UMonomial(u128);

const LANES: usize = 16;

impl UMonomial {
    pub const ONE: UMonomial = UMonomial(0);

    pub fn var(i: usize) -> Self {
        assert!(i < LANES);
        UMonomial(1u128 << (8 * i))
    }

    /// Product of the variables whose bit is set.
    pub fn from_mask(mask: u32) -> Self {
        let mut m = 0u128;
        for i in 0..LANES {
            if mask >> i & 1 == 1 {
                m |= 1u128 << (8 * i);
            }
        }
        UMonomial(m)
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        assert!(e.len() <= LANES);
        let mut m = 0u128;
        for (i, &a) in e.iter().enumerate() {
            assert!(a < 256, "exponent overflow");
            m |= (a as u128) << (8 * i);
        }
        UMonomial(m)
    }

    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> u32 {
        (0..LANES).map(|i| self.exponent(i)).sum()
    }

    pub fn weighted_degree(self, w: &[u32]) -> u32 {
        w.iter().enumerate().map(|(i, &m)| m * self.exponent(i)).sum()
    }

    /// Whether any variable in `mask` divides the monomial.
    pub fn touches(self, mask: u32) -> bool {
        (0..LANES).any(|i| mask >> i & 1 == 1 && self.exponent(i) > 0)
    }

    pub fn mul(self, other: UMonomial) -> UMonomial {
        debug_assert!((0..LANES).all(|i| self.exponent(i) + other.exponent(i) < 256));
        UMonomial(self.0 + other.0)
    }

    /// Renames variable `i` to `map[i]`.
    pub fn relabel(self, map: &[usize]) -> UMonomial {
        let mut e = [0u32; LANES];
        for (i, &j) in map.iter().enumerate() {
            e[j] += self.exponent(i);
        }
        UMonomial::from_exponents(&e)
    }

    pub fn raw(self) -> u128 {
        self.0
    }
}

impl fmt::Debug for UMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in 0..LANES {
            let a = self.exponent(i);
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "U{i}")?;
            } else {
                write!(f, "U{i}^{a}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over GF(2): a sorted set of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly(Vec<UMonomial>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }
    pub fn one() -> Self {
        Poly(vec![UMonomial::ONE])
    }
    pub fn mono(m: UMonomial) -> Self {
        Poly(vec![m])
    }
    /// Sum of the given monomials, reduced mod 2.
    pub fn from_terms(mut v: Vec<UMonomial>) -> Self {
        v.sort_unstable();
        let mut out: Vec<UMonomial> = Vec::with_capacity(v.len());
        for m in v {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        Poly(out)
    }
    pub fn terms(&self) -> &[UMonomial] {
        &self.0
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly(out)
    }

    pub fn add_assign(&mut self, other: &Poly) {
        *self = self.add(other);
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut v = Vec::with_capacity(self.0.len() * other.0.len());
        for &a in &self.0 {
            for &b in &other.0 {
                v.push(a.mul(b));
            }
        }
        Poly::from_terms(v)
    }

    pub fn mul_mono(&self, m: UMonomial) -> Poly {
        Poly(self.0.iter().map(|&a| a.mul(m)).collect())
    }

    /// Drops every monomial divisible by a variable in `mask`.
    pub fn kill(&self, mask: u32) -> Poly {
        Poly(self.0.iter().copied().filter(|m| !m.touches(mask)).collect())
    }

    pub fn relabel(&self, map: &[usize]) -> Poly {
        Poly::from_terms(self.0.iter().map(|m| m.relabel(map)).collect())
    }

    /// Identifies every variable with a single `U`; returns the exponents with
    /// odd multiplicity.
    pub fn collapse(&self) -> Vec<u32> {
        let mut degs: Vec<u32> = self.0.iter().map(|m| m.degree()).collect();
        degs.sort_unstable();
        let mut out: Vec<u32> = Vec::new();
        for d in degs {
            if out.last() == Some(&d) {
                out.pop();
            } else {
                out.push(d);
            }
        }
        out
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}
