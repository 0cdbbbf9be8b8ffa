use std::fmt;

/// The four variables the toolkit works with, in their fixed print order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    S,
    X,
    Y,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::T, Var::S, Var::X, Var::Y];

    pub fn index(self) -> usize {
        match self {
            Var::T => 0,
            Var::S => 1,
            Var::X => 2,
            Var::Y => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::S => "s",
            Var::X => "x",
            Var::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "t" => Some(Var::T),
            "s" => Some(Var::S),
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const LANE_BITS: u32 = 16;
const LANE_MASK: u64 = 0xffff;
/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = LANE_MASK as u32;

/// A monomial t^a s^b x^c y^d with non-negative exponents, packed into one
/// word. Comparing the packed words is lexicographic order with t > s > x > y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    fn shift(v: usize) -> u32 {
        (3 - v as u32) * LANE_BITS
    }

    pub fn new(exps: [u32; 4]) -> Mono {
        let mut w = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent {e} overflows monomial lane");
            w |= (e as u64) << Self::shift(i);
        }
        Mono(w)
    }

    pub fn var(v: Var, e: u32) -> Mono {
        let mut exps = [0; 4];
        exps[v.index()] = e;
        Mono::new(exps)
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> Self::shift(v.index())) & LANE_MASK) as u32
    }

    pub fn exps(self) -> [u32; 4] {
        [
            self.exp(Var::T),
            self.exp(Var::S),
            self.exp(Var::X),
            self.exp(Var::Y),
        ]
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn total_degree(self) -> u32 {
        self.exps().iter().sum()
    }

    pub fn mul(self, other: Mono) -> Mono {
        let (a, b) = (self.exps(), other.exps());
        Mono::new([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }

    pub fn divides(self, other: Mono) -> bool {
        let (a, b) = (self.exps(), other.exps());
        a.iter().zip(b.iter()).all(|(x, y)| x <= y)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div_into(self, other: Mono) -> Option<Mono> {
        if !self.divides(other) {
            return None;
        }
        let (a, b) = (self.exps(), other.exps());
        Some(Mono::new([b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]]))
    }

    pub fn with_exp(self, v: Var, e: u32) -> Mono {
        let mut exps = self.exps();
        exps[v.index()] = e;
        Mono::new(exps)
    }

    /// Componentwise minimum.
    pub fn gcd(self, other: Mono) -> Mono {
        let (a, b) = (self.exps(), other.exps());
        Mono::new([
            a[0].min(b[0]),
            a[1].min(b[1]),
            a[2].min(b[2]),
            a[3].min(b[3]),
        ])
    }

    /// Graded order key: total degree first, then lexicographic.
    pub fn graded_key(self) -> (u32, u64) {
        (self.total_degree(), self.0)
    }
}

/// Laurent monomial exponent vector (t, s, x, y); used for substitutions
/// such as `t := 1/s` and for denominators that pick up pure monomials.
pub type Exps = [i32; 4];

pub fn exps_of(m: Mono) -> Exps {
    let e = m.exps();
    [e[0] as i32, e[1] as i32, e[2] as i32, e[3] as i32]
}

pub fn exps_is_zero(e: &Exps) -> bool {
    e.iter().all(|&x| x == 0)
}

pub fn exps_add(a: &Exps, b: &Exps) -> Exps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn exps_scale(a: &Exps, k: i32) -> Exps {
    [a[0] * k, a[1] * k, a[2] * k, a[3] * k]
}

pub fn exps_var(v: Var) -> Exps {
    let mut e = [0; 4];
    e[v.index()] = 1;
    e
}

/// Splits a Laurent exponent vector into (positive part, negative part) as
/// ordinary monomials.
pub fn exps_split(e: &Exps) -> (Mono, Mono) {
    let mut pos = [0u32; 4];
    let mut neg = [0u32; 4];
    for i in 0..4 {
        if e[i] >= 0 {
            pos[i] = e[i] as u32;
        } else {
            neg[i] = (-e[i]) as u32;
        }
    }
    (Mono::new(pos), Mono::new(neg))
}

pub fn fmt_mono(m: Mono, f: &mut impl fmt::Write) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trips() {
        let m = Mono::new([1, 2, 300, 4]);
        assert_eq!(m.exps(), [1, 2, 300, 4]);
        assert_eq!(m.total_degree(), 307);
        assert_eq!(m.exp(Var::X), 300);
    }

    #[test]
    fn lex_order_puts_t_first() {
        assert!(Mono::var(Var::T, 1) > Mono::var(Var::S, 9));
        assert!(Mono::var(Var::S, 1) > Mono::var(Var::X, 60000));
        assert!(Mono::var(Var::X, 2) > Mono::var(Var::X, 1));
    }

    #[test]
    fn division() {
        let a = Mono::new([0, 1, 2, 0]);
        let b = Mono::new([1, 1, 5, 0]);
        assert_eq!(a.div_into(b), Some(Mono::new([1, 0, 3, 0])));
        assert_eq!(b.div_into(a), None);
    }
}
