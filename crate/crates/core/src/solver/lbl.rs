//! Layer-by-layer baseline: cross, then the four first-two-layer corner/edge
//! pairs, then a two-look last layer built from a fixed macro library.
//!
//! Cross and pair insertion are short optimal searches over face turns (the
//! pieces already placed must be restored), in the way a human solver plans
//! one pair at a time. The last layer never searches face turns: it only
//! chains the macros below, each optionally preceded by a U turn.
//!
//! | stage                    | macros                                  |
//! |--------------------------|-----------------------------------------|
//! | edge orientation         | `F R U R' U' F'`, `F U R U' R' F'`      |
//! | corner orientation       | Sune, Antisune                          |
//! | corner permutation       | A-perm                                  |
//! | edge permutation         | Ua-perm, Ub-perm                        |

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;
use std::time::Instant;

use crate::coord::canonical_successor;
use crate::cube::{parse_moves, CubieState, Face, Move, MoveSequence, MOVE_CUBES};

use super::{Backend, SolveResult, SolverError};

/// Corner piece/slot and edge piece/slot at which pair `k` is home.
const PAIR_CORNERS: [usize; 4] = [4, 5, 6, 7]; // DFR DLF DBL DRB
const PAIR_EDGES: [usize; 4] = [8, 9, 10, 11]; // FR FL BL BR
const CROSS_EDGES: [usize; 4] = [4, 5, 6, 7]; // DR DF DL DB

const MAX_STAGE_DEPTH: usize = 14;

struct Macro {
    name: &'static str,
    moves: &'static str,
}

const EO_MACROS: [Macro; 2] = [
    Macro {
        name: "EO line",
        moves: "F1 R1 U1 R3 U3 F3",
    },
    Macro {
        name: "EO angle",
        moves: "F1 U1 R1 U3 R3 F3",
    },
];
const CO_MACROS: [Macro; 2] = [
    Macro {
        name: "Sune",
        moves: "R1 U1 R3 U1 R1 U2 R3",
    },
    Macro {
        name: "Antisune",
        moves: "R1 U2 R3 U3 R1 U3 R3",
    },
];
const CP_MACROS: [Macro; 1] = [Macro {
    name: "A-perm",
    moves: "R3 F1 R3 B2 R1 F3 R3 B2 R2",
}];
const EP_MACROS: [Macro; 2] = [
    Macro {
        name: "Ua-perm",
        moves: "R1 U3 R1 U1 R1 U1 R1 U3 R3 U3 R2",
    },
    Macro {
        name: "Ub-perm",
        moves: "R2 U1 R1 U1 R3 U3 R3 U3 R3 U1 R3",
    },
];

/// Where a piece at `slot*3 + ori` (corners) or `slot*2 + ori` (edges) ends
/// up after each move.
struct PieceMoves {
    corner: [[u8; 24]; 18],
    edge: [[u8; 24]; 18],
}

struct LblTables {
    moves: PieceMoves,
    /// Exact distance to a solved cross, indexed by the four cross edges.
    cross: Vec<u8>,
    /// Exact distance to a solved pair, per pair, indexed `corner * 24 + edge`.
    pair: [Vec<u8>; 4],
}

fn piece_moves() -> PieceMoves {
    let mut corner = [[0u8; 24]; 18];
    let mut edge = [[0u8; 24]; 18];
    for (m, mc) in MOVE_CUBES.iter().enumerate() {
        for i in 0..8 {
            let j = mc.cp[i] as usize;
            for o in 0..3 {
                corner[m][j * 3 + o] = (i * 3 + (o + mc.co[i] as usize) % 3) as u8;
            }
        }
        for i in 0..12 {
            let j = mc.ep[i] as usize;
            for o in 0..2 {
                edge[m][j * 2 + o] = (i * 2 + (o + mc.eo[i] as usize) % 2) as u8;
            }
        }
    }
    PieceMoves { corner, edge }
}

fn cross_index(e: &[u8; 4]) -> usize {
    e.iter().fold(0usize, |acc, &v| acc * 24 + v as usize)
}

fn bfs<S: Copy>(size: usize, start: S, index: impl Fn(&S) -> usize, step: impl Fn(&S, usize) -> S) -> Vec<u8> {
    let mut dist = vec![u8::MAX; size];
    dist[index(&start)] = 0;
    let mut q = VecDeque::from([start]);
    while let Some(s) = q.pop_front() {
        let d = dist[index(&s)];
        for m in 0..18 {
            let n = step(&s, m);
            let ni = index(&n);
            if dist[ni] == u8::MAX {
                dist[ni] = d + 1;
                q.push_back(n);
            }
        }
    }
    dist
}

fn tables() -> &'static LblTables {
    static T: OnceLock<LblTables> = OnceLock::new();
    T.get_or_init(|| {
        let moves = piece_moves();
        let solved_cross: [u8; 4] = CROSS_EDGES.map(|e| (e * 2) as u8);
        let cross = bfs(24usize.pow(4), solved_cross, cross_index, |s, m| {
            s.map(|v| moves.edge[m][v as usize])
        });
        let pair = std::array::from_fn(|k| {
            let start = ((PAIR_CORNERS[k] * 3) as u8, (PAIR_EDGES[k] * 2) as u8);
            bfs(
                576,
                start,
                |&(c, e)| c as usize * 24 + e as usize,
                |&(c, e), m| (moves.corner[m][c as usize], moves.edge[m][e as usize]),
            )
        });
        LblTables { moves, cross, pair }
    })
}

/// Tracked pieces for the first two layers.
#[derive(Clone, Copy)]
struct F2lState {
    cross: [u8; 4],
    corners: [u8; 4],
    edges: [u8; 4],
}

impl F2lState {
    fn from_cube(c: &CubieState) -> Self {
        let corner_at = |p: usize| {
            let slot = c.cp.iter().position(|&x| x as usize == p).unwrap();
            (slot * 3 + c.co[slot] as usize) as u8
        };
        let edge_at = |p: usize| {
            let slot = c.ep.iter().position(|&x| x as usize == p).unwrap();
            (slot * 2 + c.eo[slot] as usize) as u8
        };
        F2lState {
            cross: CROSS_EDGES.map(edge_at),
            corners: PAIR_CORNERS.map(corner_at),
            edges: PAIR_EDGES.map(edge_at),
        }
    }

    fn apply(&self, pm: &PieceMoves, m: usize) -> Self {
        F2lState {
            cross: self.cross.map(|v| pm.edge[m][v as usize]),
            corners: self.corners.map(|v| pm.corner[m][v as usize]),
            edges: self.edges.map(|v| pm.edge[m][v as usize]),
        }
    }

    fn pair_index(&self, k: usize) -> usize {
        self.corners[k] as usize * 24 + self.edges[k] as usize
    }
}

struct StageSearch<'a> {
    t: &'a LblTables,
    /// Pairs whose distance enters the bound (solved ones plus the target).
    pairs: Vec<usize>,
    with_cross: bool,
    path: Vec<usize>,
    nodes: u64,
}

impl StageSearch<'_> {
    fn bound(&self, s: &F2lState) -> usize {
        let mut h = 0u8;
        if self.with_cross {
            h = self.t.cross[cross_index(&s.cross)];
        }
        for &k in &self.pairs {
            h = h.max(self.t.pair[k][s.pair_index(k)]);
        }
        h as usize
    }

    fn dfs(&mut self, s: &F2lState, togo: usize, prev: Option<Face>) -> bool {
        let h = self.bound(s);
        if h == 0 {
            return true;
        }
        if h > togo {
            return false;
        }
        for m in 0..18 {
            let mv = Move::from_index(m);
            if !canonical_successor(prev, mv.face()) {
                continue;
            }
            self.nodes += 1;
            let n = s.apply(&self.t.moves, m);
            self.path.push(m);
            if self.dfs(&n, togo - 1, Some(mv.face())) {
                return true;
            }
            self.path.pop();
        }
        false
    }

    /// Shortest face-turn sequence reaching the stage goal.
    fn solve(&mut self, s: &F2lState) -> Option<Vec<Move>> {
        for depth in 0..=MAX_STAGE_DEPTH {
            self.path.clear();
            if self.dfs(s, depth, None) {
                return Some(self.path.iter().map(|&m| Move::from_index(m)).collect());
            }
        }
        None
    }
}

fn f2l_solved(c: &CubieState) -> bool {
    (4..8).all(|i| c.cp[i] as usize == i && c.co[i] == 0) && (4..12).all(|i| c.ep[i] as usize == i && c.eo[i] == 0)
}

fn u_turn(k: u8) -> Option<Move> {
    (k > 0).then(|| Move::new(Face::U, k).expect("1..=3"))
}

fn solved_up_to_auf(c: &CubieState) -> Option<Option<Move>> {
    (0..4u8).find_map(|k| {
        let m = u_turn(k);
        let after = m.map_or(*c, |m| c.apply_move(m));
        after.is_solved().then_some(m)
    })
}

/// Breadth-first search over "optional U turn, then one macro" steps until
/// `goal` holds. Returns the concatenated moves.
fn macro_stage(
    start: &CubieState,
    library: &[Macro],
    max_steps: usize,
    goal: impl Fn(&CubieState) -> bool,
) -> Option<Vec<Move>> {
    if goal(start) {
        return Some(Vec::new());
    }
    let algs: Vec<MoveSequence> = library
        .iter()
        .map(|m| parse_moves(m.moves).unwrap_or_else(|_| panic!("macro {}", m.name)))
        .collect();
    let mut frontier: Vec<(CubieState, Vec<Move>)> = vec![(*start, Vec::new())];
    let mut seen: HashSet<CubieState> = HashSet::from([*start]);
    for _ in 0..max_steps {
        let mut next = Vec::new();
        for (state, path) in &frontier {
            for k in 0..4u8 {
                let pre = u_turn(k);
                let base = pre.map_or(*state, |m| state.apply_move(m));
                for alg in &algs {
                    let s = base.apply_sequence(alg);
                    if !seen.insert(s) {
                        continue;
                    }
                    let mut p = path.clone();
                    p.extend(pre);
                    p.extend_from_slice(alg.moves());
                    if goal(&s) {
                        return Some(p);
                    }
                    next.push((s, p));
                }
            }
        }
        frontier = next;
    }
    None
}

/// Merges adjacent turns of the same face (`U1 U2` -> `U3`, `U2 U2` -> nothing).
fn simplify(moves: Vec<Move>) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::with_capacity(moves.len());
    for m in moves {
        match out.last() {
            Some(last) if last.face() == m.face() => {
                let t = (last.turns() + m.turns()) % 4;
                out.pop();
                if t != 0 {
                    out.push(Move::new(m.face(), t).expect("1..=3"));
                }
            }
            _ => out.push(m),
        }
    }
    out
}

pub(crate) fn solve(state: &CubieState) -> Result<SolveResult, SolverError> {
    state.validate().map_err(SolverError::Unsolvable)?;
    let started = Instant::now();
    let t = tables();
    let mut cube = *state;
    let mut moves: Vec<Move> = Vec::new();
    let mut nodes = 0u64;
    let stuck = |stage: &'static str| SolverError::StageFailed(stage);

    let apply = |cube: &mut CubieState, seq: &[Move], moves: &mut Vec<Move>| {
        for &m in seq {
            *cube = cube.apply_move(m);
        }
        moves.extend_from_slice(seq);
    };

    // cross
    let mut search = StageSearch {
        t,
        pairs: Vec::new(),
        with_cross: true,
        path: Vec::new(),
        nodes: 0,
    };
    let seq = search.solve(&F2lState::from_cube(&cube)).ok_or(stuck("cross"))?;
    nodes += search.nodes;
    apply(&mut cube, &seq, &mut moves);

    // first two layers, easiest remaining pair first
    let mut done: Vec<usize> = Vec::new();
    while done.len() < 4 {
        let s = F2lState::from_cube(&cube);
        let mut best: Option<(usize, Vec<Move>)> = None;
        for k in (0..4).filter(|k| !done.contains(k)) {
            let mut pairs = done.clone();
            pairs.push(k);
            let mut search = StageSearch {
                t,
                pairs,
                with_cross: true,
                path: Vec::new(),
                nodes: 0,
            };
            let seq = search.solve(&s).ok_or(stuck("first two layers"))?;
            nodes += search.nodes;
            if best.as_ref().is_none_or(|(_, b)| seq.len() < b.len()) {
                best = Some((k, seq));
            }
        }
        let (k, seq) = best.expect("at least one pair remains");
        apply(&mut cube, &seq, &mut moves);
        done.push(k);
        // inserting one pair may have solved others for free
        let s = F2lState::from_cube(&cube);
        for j in 0..4 {
            if !done.contains(&j) && t.pair[j][s.pair_index(j)] == 0 {
                done.push(j);
            }
        }
    }
    debug_assert!(f2l_solved(&cube));

    let edges_oriented = |c: &CubieState| f2l_solved(c) && c.eo.iter().all(|&o| o == 0);
    let seq = macro_stage(&cube, &EO_MACROS, 3, edges_oriented).ok_or(stuck("edge orientation"))?;
    apply(&mut cube, &seq, &mut moves);

    let oriented = |c: &CubieState| edges_oriented(c) && c.co.iter().all(|&o| o == 0);
    let seq = macro_stage(&cube, &CO_MACROS, 3, oriented).ok_or(stuck("corner orientation"))?;
    apply(&mut cube, &seq, &mut moves);

    let corners_placed = |c: &CubieState| {
        oriented(c)
            && (0..4u8).any(|k| {
                let a = u_turn(k).map_or(*c, |m| c.apply_move(m));
                a.cp == CubieState::SOLVED.cp
            })
    };
    let seq = macro_stage(&cube, &CP_MACROS, 3, corners_placed).ok_or(stuck("corner permutation"))?;
    apply(&mut cube, &seq, &mut moves);

    let solved_mod_auf = |c: &CubieState| solved_up_to_auf(c).is_some();
    let seq = macro_stage(&cube, &EP_MACROS, 3, solved_mod_auf).ok_or(stuck("edge permutation"))?;
    apply(&mut cube, &seq, &mut moves);

    let auf = solved_up_to_auf(&cube).ok_or(stuck("final turn"))?;
    apply(&mut cube, &Vec::from_iter(auf), &mut moves);
    debug_assert!(cube.is_solved());

    let moves = simplify(moves);
    let n = moves.len();
    Ok(SolveResult::new(
        MoveSequence::from_moves(moves),
        n,
        0,
        nodes,
        started,
        Backend::LayerByLayer,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn macros_preserve_first_two_layers() {
        for lib in [&EO_MACROS[..], &CO_MACROS[..], &CP_MACROS[..], &EP_MACROS[..]] {
            for m in lib {
                let c = CubieState::from_moves(&parse_moves(m.moves).unwrap());
                assert!(f2l_solved(&c), "{} breaks the first two layers", m.name);
            }
        }
    }

    #[test]
    fn simplify_merges_same_face() {
        let s = parse_moves("U1 U2 R1 R3 F2 F2 D1").unwrap().into_moves();
        assert_eq!(MoveSequence::from_moves(simplify(s)).to_string(), "U3 D1");
    }

    #[test]
    fn pair_tables_are_zero_only_at_home() {
        let t = tables();
        for k in 0..4 {
            let zeros = t.pair[k].iter().filter(|&&d| d == 0).count();
            assert_eq!(zeros, 1);
            assert!(t.pair[k].iter().all(|&d| d != u8::MAX));
        }
        assert_eq!(t.cross[cross_index(&CROSS_EDGES.map(|e| (e * 2) as u8))], 0);
    }
}
