//! Integer coordinates of cube states. Every coordinate is anchored so the
//! solved cube maps to 0.

use serde::{Deserialize, Serialize};

use crate::cube::{CubieState, N_CORNERS, N_EDGES};

use super::CoordError;

pub const N_TWIST: usize = 2187; // 3^7
pub const N_FLIP: usize = 2048; // 2^11
pub const N_SLICE: usize = 495; // C(12, 4)
pub const N_CORNER_PERM: usize = 40320; // 8!
pub const N_UD_EDGE_PERM: usize = 40320; // 8!
pub const N_SLICE_PERM: usize = 24; // 4!

/// First slice edge (FR); edges `FR FL BL BR` are 8..12.
const SLICE_EDGE_START: u8 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase1Coord {
    pub twist: u16,
    pub flip: u16,
    pub slice: u16,
}

impl Phase1Coord {
    pub const GOAL: Phase1Coord = Phase1Coord {
        twist: 0,
        flip: 0,
        slice: 0,
    };

    pub fn in_g1(&self) -> bool {
        *self == Self::GOAL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase2Coord {
    pub corner_perm: u16,
    pub ud_edge_perm: u16,
    pub slice_perm: u8,
}

impl Phase2Coord {
    pub const GOAL: Phase2Coord = Phase2Coord {
        corner_perm: 0,
        ud_edge_perm: 0,
        slice_perm: 0,
    };
}

pub fn encode_phase1(state: &CubieState) -> Phase1Coord {
    Phase1Coord {
        twist: twist(state),
        flip: flip(state),
        slice: slice(state),
    }
}

pub fn encode_phase2(state: &CubieState) -> Result<Phase2Coord, CoordError> {
    if !encode_phase1(state).in_g1() {
        return Err(CoordError::NotInSubgroup);
    }
    let mut ud = [0u8; 8];
    ud.copy_from_slice(&state.ep[..8]);
    let mut sl = [0u8; 4];
    for (d, &s) in sl.iter_mut().zip(&state.ep[8..]) {
        *d = s - SLICE_EDGE_START;
    }
    Ok(Phase2Coord {
        corner_perm: lehmer_rank(&state.cp) as u16,
        ud_edge_perm: lehmer_rank(&ud) as u16,
        slice_perm: lehmer_rank(&sl) as u8,
    })
}

pub fn twist(c: &CubieState) -> u16 {
    c.co[..N_CORNERS - 1].iter().fold(0u16, |acc, &o| acc * 3 + o as u16)
}

pub fn flip(c: &CubieState) -> u16 {
    c.eo[..N_EDGES - 1].iter().fold(0u16, |acc, &o| acc * 2 + o as u16)
}

/// Which four positions hold slice edges, as a combination index.
pub fn slice(c: &CubieState) -> u16 {
    let mut a = 0u32;
    let mut x = 0u32;
    for j in (0..N_EDGES).rev() {
        if c.ep[j] >= SLICE_EDGE_START {
            a += binomial(11 - j as u32, x + 1);
            x += 1;
        }
    }
    a as u16
}

pub fn set_twist(c: &mut CubieState, mut t: u16) {
    let mut sum = 0u16;
    for i in (0..N_CORNERS - 1).rev() {
        c.co[i] = (t % 3) as u8;
        sum += t % 3;
        t /= 3;
    }
    c.co[N_CORNERS - 1] = ((3 - sum % 3) % 3) as u8;
}

pub fn set_flip(c: &mut CubieState, mut f: u16) {
    let mut sum = 0u16;
    for i in (0..N_EDGES - 1).rev() {
        c.eo[i] = (f % 2) as u8;
        sum += f % 2;
        f /= 2;
    }
    c.eo[N_EDGES - 1] = (sum % 2) as u8;
}

/// Places slice edges (in order) on the positions named by `idx` and fills
/// the remaining positions with the other edges in order.
pub fn set_slice(c: &mut CubieState, idx: u16) {
    let mut a = idx as u32;
    let mut x: i32 = 3;
    let mut next_slice = SLICE_EDGE_START;
    let mut next_other = 0u8;
    for j in 0..N_EDGES {
        if x >= 0 && a >= binomial(11 - j as u32, x as u32 + 1) {
            a -= binomial(11 - j as u32, x as u32 + 1);
            c.ep[j] = next_slice;
            next_slice += 1;
            x -= 1;
        } else {
            c.ep[j] = next_other;
            next_other += 1;
        }
    }
}

pub fn set_corner_perm(c: &mut CubieState, idx: u16) {
    lehmer_unrank(idx as u32, &mut c.cp);
}

/// Sets the eight U/D-layer edges; slice edges stay home.
pub fn set_ud_edge_perm(c: &mut CubieState, idx: u16) {
    let mut ud = [0u8; 8];
    lehmer_unrank(idx as u32, &mut ud);
    c.ep[..8].copy_from_slice(&ud);
    for (i, e) in c.ep[8..].iter_mut().enumerate() {
        *e = SLICE_EDGE_START + i as u8;
    }
}

/// Sets the four slice edges within the slice; U/D edges stay home.
pub fn set_slice_perm(c: &mut CubieState, idx: u8) {
    let mut sl = [0u8; 4];
    lehmer_unrank(idx as u32, &mut sl);
    for (i, e) in c.ep[..8].iter_mut().enumerate() {
        *e = i as u8;
    }
    for (d, s) in c.ep[8..].iter_mut().zip(sl) {
        *d = s + SLICE_EDGE_START;
    }
}

const fn binomial(n: u32, k: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut r = 1u32;
    let mut i = 0;
    while i < k {
        r = r * (n - i) / (i + 1);
        i += 1;
    }
    r
}

/// Lexicographic rank of a permutation of `0..p.len()`.
pub fn lehmer_rank(p: &[u8]) -> u32 {
    let n = p.len();
    let mut rank = 0u32;
    for i in 0..n {
        let smaller_after = p[i + 1..].iter().filter(|&&x| x < p[i]).count() as u32;
        rank = rank * (n - i) as u32 + smaller_after;
    }
    rank
}

pub fn lehmer_unrank(mut rank: u32, out: &mut [u8]) {
    let n = out.len();
    let mut digits = vec![0u32; n];
    for i in (0..n).rev() {
        let base = (n - i) as u32;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    for i in 0..n {
        out[i] = pool.remove(digits[i] as usize);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{parse_moves, Move};

    fn state(moves: &str) -> CubieState {
        CubieState::from_moves(&parse_moves(moves).unwrap())
    }

    #[test]
    fn solved_is_origin() {
        assert_eq!(encode_phase1(&CubieState::SOLVED), Phase1Coord::GOAL);
        assert_eq!(encode_phase2(&CubieState::SOLVED).unwrap(), Phase2Coord::GOAL);
    }

    #[test]
    fn g1_states_have_zero_phase1() {
        let c = state("U1 R2 D3 F2 U2 L2 B2 D1");
        assert!(encode_phase1(&c).in_g1());
    }

    #[test]
    fn twist_is_base3_positional() {
        let mut c = CubieState::SOLVED;
        c.co[0] = 1;
        c.co[1] = 2;
        let p = encode_phase1(&c);
        // base-3 digits 1,2,0,0,0,0,0
        assert_eq!(p.twist, 3u16.pow(6) + 2 * 3u16.pow(5));
        assert_eq!(p.flip, 0);
    }

    #[test]
    fn phase2_after_u1() {
        let p = encode_phase2(&state("U1")).unwrap();
        // U1 cycles URF<-UBR etc: cp = [3,0,1,2,4,5,6,7]
        assert_eq!(p.corner_perm as u32, lehmer_rank(&[3, 0, 1, 2, 4, 5, 6, 7]));
        assert_eq!(p.ud_edge_perm as u32, lehmer_rank(&[3, 0, 1, 2, 4, 5, 6, 7]));
        assert_ne!(p.corner_perm, 0);
        assert_ne!(p.ud_edge_perm, 0);
        assert_eq!(p.slice_perm, 0);
    }

    #[test]
    fn phase2_rejects_states_outside_g1() {
        assert_eq!(encode_phase2(&state("R1")), Err(CoordError::NotInSubgroup));
    }

    #[test]
    fn lehmer_matches_brute_force_enumeration() {
        // lexicographic enumeration of permutations of 0..5
        fn perms(n: u8) -> Vec<Vec<u8>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            let all: Vec<u8> = (0..n).collect();
            fn rec(prefix: &mut Vec<u8>, rest: &[u8], out: &mut Vec<Vec<u8>>) {
                if rest.is_empty() {
                    out.push(prefix.clone());
                }
                for i in 0..rest.len() {
                    prefix.push(rest[i]);
                    let mut r = rest.to_vec();
                    r.remove(i);
                    rec(prefix, &r, out);
                    prefix.pop();
                }
            }
            rec(&mut Vec::new(), &all, &mut out);
            out
        }
        for (rank, p) in perms(5).iter().enumerate() {
            assert_eq!(lehmer_rank(p), rank as u32);
            let mut q = [0u8; 5];
            lehmer_unrank(rank as u32, &mut q);
            assert_eq!(&q[..], &p[..]);
        }
    }

    #[test]
    fn setters_invert_encoders() {
        for t in 0..N_TWIST as u16 {
            let mut c = CubieState::SOLVED;
            set_twist(&mut c, t);
            assert_eq!(twist(&c), t);
        }
        for f in 0..N_FLIP as u16 {
            let mut c = CubieState::SOLVED;
            set_flip(&mut c, f);
            assert_eq!(flip(&c), f);
        }
        for s in 0..N_SLICE as u16 {
            let mut c = CubieState::SOLVED;
            set_slice(&mut c, s);
            assert_eq!(slice(&c), s);
        }
        for p in 0..N_SLICE_PERM as u8 {
            let mut c = CubieState::SOLVED;
            set_slice_perm(&mut c, p);
            assert_eq!(encode_phase2(&c).unwrap().slice_perm, p);
        }
        for p in (0..N_CORNER_PERM as u16).step_by(97) {
            let mut c = CubieState::SOLVED;
            set_corner_perm(&mut c, p);
            set_ud_edge_perm(&mut c, p);
            let e = encode_phase2(&c).unwrap();
            assert_eq!((e.corner_perm, e.ud_edge_perm), (p, p));
        }
    }

    #[test]
    fn phase1_components_are_injective_on_their_factor() {
        // distinct twist values come from distinct orientation vectors
        let mut seen = std::collections::HashSet::new();
        for t in 0..N_TWIST as u16 {
            let mut c = CubieState::SOLVED;
            set_twist(&mut c, t);
            assert!(seen.insert(c.co));
        }
        // every move from solved except U/D turns leaves G1 for some coordinate
        for m in Move::ALL {
            let p = encode_phase1(&CubieState::SOLVED.apply_move(m));
            assert_eq!(p.in_g1(), m.preserves_g1(), "{m}");
        }
    }
}
