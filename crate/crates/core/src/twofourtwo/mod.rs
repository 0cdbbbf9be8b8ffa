//! 2-4-2 polygons: building-block generating functions, their partial
//! fractions in the row-length variable, and the Hadamard recurrence.

pub mod blocks;
pub mod coefficients;
pub mod recurrence;

use crate::algebra::{Mono, RatFunc, Var};

/// `m / (1 - m)` for a monomial with coprime exponents.
pub fn bracket(m: Mono) -> RatFunc {
    RatFunc::geometric(m).sub(&RatFunc::one())
}

fn mono(t: u32, s: u32, x: u32) -> Mono {
    Mono::new([t, s, x, 0])
}

/// The frill generating functions `(A, B, C)`, as functions of `s`, `t`, `x`.
pub fn frills() -> (RatFunc, RatFunc, RatFunc) {
    let bx = bracket(mono(0, 0, 1));
    let bsx = bracket(mono(0, 1, 1));
    let btx = bracket(mono(1, 0, 1));
    let one = RatFunc::one();
    let two = RatFunc::integer(2);
    let a = RatFunc::sum(
        [
            one.clone(),
            bx.clone(),
            two.mul(&bsx),
            two.mul(&btx),
            bsx.mul(&btx),
            bsx.pow(2),
            bsx.mul(&bx),
            btx.pow(2),
            btx.mul(&bx),
        ]
        .iter(),
    );
    let b = RatFunc::sum([one.clone(), btx, bx.clone()].iter());
    let c = RatFunc::sum([one, bsx, bx].iter());
    (a, b, c)
}

/// Building-block generating functions with the common `y^4` stripped.
#[derive(Clone, Debug)]
pub struct BuildingBlockGF {
    /// Blocks in one orientation; `t` marks the top row, `s` the bottom row.
    pub t_hat: RatFunc,
    /// All blocks: `2 (t_hat(t,s) + t_hat(s,t))`.
    pub t: RatFunc,
}

/// Assembles the five-term building-block sum and its reflections.
pub fn t_hat() -> BuildingBlockGF {
    let (a, b, c) = frills();
    let stx = bracket(mono(1, 1, 1));
    let stx2 = bracket(mono(1, 1, 2));
    let tx = bracket(mono(1, 0, 1));
    let sx = bracket(mono(0, 1, 1));
    let x = bracket(mono(0, 0, 1));
    let tx2 = tx.pow(2);
    let tx3 = tx.pow(3);
    let ab = a.mul(&b);
    let cb = c.mul(&b);
    let terms = [
        ab.mul(&stx).mul(&tx2),
        ab.mul(&stx).mul(&stx2).mul(&tx2),
        ab.mul(&stx).mul(&tx3),
        cb.mul(&sx).mul(&tx3),
        cb.mul(&sx).mul(&x).mul(&tx3),
    ];
    let t_hat = RatFunc::sum(terms.iter());
    let t = t_hat.add(&t_hat.swap(Var::S, Var::T)).scale(&2.into());
    BuildingBlockGF { t_hat, t }
}
