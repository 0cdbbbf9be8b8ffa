//! Column-by-column transfer matrix for self-avoiding polygons in a strip.
//!
//! The state on lattice line `x` records which horizontal lines `y = 0..=H`
//! carry a bond entering from the left, with the non-crossing pairing of
//! those bond ends encoded as parentheses (1 opens, 2 closes, bottom to top).
//! A flag records whether the bottom line has been used, so each polygon is
//! counted once with its lowest bond on `y = 0`, and the first line processed
//! is its leftmost one.

use std::collections::HashMap;
use std::time::Instant;

use super::{Budget, EnumError};
use crate::polygon::RowProfile;

const ROW_BITS: u32 = 3;

#[derive(Clone, Copy, Debug)]
enum Target {
    State(u64),
    Closed,
}

#[derive(Clone, Copy, Debug)]
struct Transition {
    target: Target,
    vertical: u32,
    half_horizontal: u32,
}

pub(crate) struct Strip {
    lines: usize,
    /// Vertical-bond caps per row, bottom row first, for the profile filter.
    caps: Option<Vec<u32>>,
    memo: HashMap<u64, Vec<Transition>>,
}

struct Decoded {
    codes: Vec<u8>,
    touched_bottom: bool,
    counts: Vec<u32>,
}

impl Strip {
    pub fn new(rows: usize, profile: Option<&RowProfile>) -> Strip {
        let caps = profile.map(|p| p.0.iter().rev().copied().collect());
        Strip {
            lines: rows + 1,
            caps,
            memo: HashMap::new(),
        }
    }

    fn flag_bit(&self) -> u32 {
        2 * self.lines as u32
    }

    fn encode(&self, codes: &[u8], touched_bottom: bool, counts: &[u32]) -> u64 {
        let mut key = 0u64;
        for (y, &c) in codes.iter().enumerate() {
            key |= (c as u64) << (2 * y);
        }
        if touched_bottom {
            key |= 1 << self.flag_bit();
        }
        for (r, &c) in counts.iter().enumerate() {
            key |= (c as u64) << (self.flag_bit() + 1 + ROW_BITS * r as u32);
        }
        key
    }

    fn decode(&self, key: u64) -> Decoded {
        let codes = (0..self.lines).map(|y| ((key >> (2 * y)) & 3) as u8).collect();
        let touched_bottom = key >> self.flag_bit() & 1 == 1;
        let rows = self.caps.as_ref().map_or(0, Vec::len);
        let counts = (0..rows)
            .map(|r| ((key >> (self.flag_bit() + 1 + ROW_BITS * r as u32)) & 7) as u32)
            .collect();
        Decoded { codes, touched_bottom, counts }
    }

    pub fn empty_state(&self) -> u64 {
        let rows = self.caps.as_ref().map_or(0, Vec::len);
        self.encode(&vec![0; self.lines], false, &vec![0; rows])
    }

    fn transitions(&mut self, key: u64) -> &[Transition] {
        if !self.memo.contains_key(&key) {
            let list = self.build(key);
            self.memo.insert(key, list);
        }
        &self.memo[&key]
    }

    fn build(&self, key: u64) -> Vec<Transition> {
        let s = self.decode(key);
        let lines = self.lines;
        let mut partner = vec![usize::MAX; lines];
        let mut stack = Vec::new();
        for (y, &c) in s.codes.iter().enumerate() {
            match c {
                1 => stack.push(y),
                2 => {
                    let lo = stack.pop().expect("balanced state");
                    partner[lo] = y;
                    partner[y] = lo;
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        let mut ups = vec![false; lines];
        self.choose(&s, &partner, 0, false, &mut ups, &mut out);
        out
    }

    /// Chooses the vertical bond above line `y` given whether one arrives
    /// from below, then recurses upward.
    fn choose(
        &self,
        s: &Decoded,
        partner: &[usize],
        y: usize,
        down: bool,
        ups: &mut Vec<bool>,
        out: &mut Vec<Transition>,
    ) {
        if y == self.lines {
            if let Some(t) = self.close_line(s, partner, ups) {
                out.push(t);
            }
            return;
        }
        let incoming = (s.codes[y] != 0) as u32 + down as u32;
        let top = y + 1 == self.lines;
        for up in [false, true] {
            if up && top {
                continue;
            }
            if incoming + up as u32 > 2 {
                continue;
            }
            if up {
                if let Some(caps) = &self.caps {
                    if s.counts[y] + 1 > caps[y] {
                        continue;
                    }
                }
            }
            ups[y] = up;
            self.choose(s, partner, y + 1, up, ups, out);
            ups[y] = false;
        }
    }

    fn close_line(&self, s: &Decoded, partner: &[usize], ups: &[bool]) -> Option<Transition> {
        let lines = self.lines;
        let down = |y: usize| y > 0 && ups[y - 1];
        let incoming = |y: usize| s.codes[y] != 0;
        let outgoing: Vec<bool> = (0..lines)
            .map(|y| (incoming(y) as u32 + down(y) as u32 + ups[y] as u32) == 1)
            .collect();
        let active = |y: usize| incoming(y) || down(y) || ups[y];
        if !(0..lines).any(active) {
            return None;
        }

        let mut parent: Vec<usize> = (0..lines).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        };
        for y in 0..lines {
            if ups[y] {
                union(y, y + 1);
            }
            if partner[y] != usize::MAX {
                union(y, partner[y]);
            }
        }
        let mut ends: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut roots: Vec<usize> = Vec::new();
        for y in (0..lines).filter(|&y| active(y)) {
            let r = find(&mut parent, y);
            if !roots.contains(&r) {
                roots.push(r);
            }
            if outgoing[y] {
                ends.entry(r).or_default().push(y);
            }
        }
        let closed = roots.iter().filter(|r| !ends.contains_key(r)).count();
        let vertical = ups.iter().filter(|&&u| u).count() as u32;
        let mut counts = s.counts.clone();
        for (r, c) in counts.iter_mut().enumerate() {
            *c += ups[r] as u32;
        }
        if closed > 0 {
            let complete = closed == 1
                && roots.len() == 1
                && s.touched_bottom
                && self.caps.as_ref().is_none_or(|caps| *caps == counts);
            return complete.then_some(Transition {
                target: Target::Closed,
                vertical,
                half_horizontal: 0,
            });
        }
        let mut codes = vec![0u8; lines];
        for pair in ends.values() {
            debug_assert_eq!(pair.len(), 2);
            codes[pair[0].min(pair[1])] = 1;
            codes[pair[0].max(pair[1])] = 2;
        }
        let n_out = outgoing.iter().filter(|&&o| o).count() as u32;
        Some(Transition {
            target: Target::State(self.encode(&codes, s.touched_bottom || outgoing[0], &counts)),
            vertical,
            half_horizontal: n_out / 2,
        })
    }
}

/// Counts indexed `[vertical bonds][hhp]`.
pub(crate) struct Weights {
    pub v_dim: usize,
    pub m_dim: usize,
}

impl Weights {
    fn zero(&self) -> Vec<u128> {
        vec![0; self.v_dim * self.m_dim]
    }
}

/// Runs the transfer matrix; returns `totals[v][m]` for closed polygons.
pub(crate) fn run(
    strip: &mut Strip,
    dims: &Weights,
    budget: &Budget,
) -> Result<Vec<u128>, EnumError> {
    let mut totals = dims.zero();
    let mut start = dims.zero();
    start[0] = 1;
    let mut current: HashMap<u64, Vec<u128>> = HashMap::from([(strip.empty_state(), start)]);
    let mut overflow = false;
    let check_budget = |states: usize| -> Result<(), EnumError> {
        if states > budget.max_states {
            return Err(EnumError::Budget(format!("{states} transfer states exceed the cap")));
        }
        if budget.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(EnumError::Budget("time budget exhausted".into()));
        }
        Ok(())
    };
    while !current.is_empty() {
        let mut next: HashMap<u64, Vec<u128>> = HashMap::new();
        let mut keys: Vec<u64> = current.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let w = &current[&key];
            let transitions = strip.transitions(key).to_vec();
            for t in transitions {
                let (dv, dm) = (t.vertical as usize, t.half_horizontal as usize);
                if dv >= dims.v_dim || dm >= dims.m_dim {
                    continue;
                }
                let target = match t.target {
                    Target::Closed => &mut totals,
                    Target::State(k) => next.entry(k).or_insert_with(|| dims.zero()),
                };
                for v in 0..dims.v_dim - dv {
                    let src = &w[v * dims.m_dim..(v + 1) * dims.m_dim - dm];
                    let dst_row = (v + dv) * dims.m_dim + dm;
                    for (i, &c) in src.iter().enumerate() {
                        if c != 0 {
                            let (sum, o) = target[dst_row + i].overflowing_add(c);
                            target[dst_row + i] = sum;
                            overflow |= o;
                        }
                    }
                }
            }
        }
        if overflow {
            return Err(EnumError::Overflow);
        }
        next.retain(|_, w| w.iter().any(|&c| c != 0));
        check_budget(next.len())?;
        current = next;
    }
    Ok(totals)
}
