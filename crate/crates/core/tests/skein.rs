//! The state-sum bracket against a recursive skein evaluator written from
//! scratch: crossings are resolved one at a time by
//! `<K> = A <K_A> + A^-1 <K_B>`, and a crossingless diagram is `d^loops`,
//! with loops found by union-find over edges.

mod common;

use knotoid::diagram::{Dart, Diagram, Kind};
use knotoid::invariants;
use knotoid::laurent::loop_value;
use knotoid::Laurent1;
use knotoid::Var;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

struct Skein {
    edges: usize,
    /// Edge pairs joined before any crossing is resolved.
    joins: Vec<(usize, usize)>,
    /// Per crossing: edge at each slot and the over slot parity.
    crossings: Vec<([usize; 4], usize)>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

impl Skein {
    fn new(d: &Diagram) -> Skein {
        let main: Vec<Dart> = d.darts().filter(|&x| d.strand(x).is_main()).collect();
        let mut id = std::collections::BTreeMap::new();
        for &x in &main {
            let key = x.min(d.partner(x));
            let n = id.len();
            id.entry(key).or_insert(n);
        }
        let edge = |x: Dart| id[&x.min(d.partner(x))];
        let mut joins = Vec::new();
        let mut crossings = Vec::new();
        for v in 0..d.len() {
            let slots: Vec<usize> = (0..d.degree(v)).filter(|&s| d.strand(Dart::new(v, s)).is_main()).collect();
            match d.kind(v) {
                Kind::Crossing { over } => {
                    crossings.push(([0, 1, 2, 3].map(|s| edge(Dart::new(v, s))), over));
                }
                Kind::Flat | Kind::Joint => joins.push((edge(Dart::new(v, slots[0])), edge(Dart::new(v, slots[1])))),
                Kind::End(_) => {}
            }
        }
        Skein { edges: id.len(), joins, crossings }
    }

    fn bracket(&self) -> Laurent1 {
        let mut chosen = Vec::new();
        self.resolve(&mut chosen)
    }

    fn resolve(&self, chosen: &mut Vec<(usize, usize)>) -> Laurent1 {
        let i = chosen.len() / 2;
        if i == self.crossings.len() {
            return self.loops(chosen);
        }
        let (e, o) = self.crossings[i];
        let mut total = Laurent1::zero(Var::A);
        // The over strand swept counterclockwise marks the A-regions
        // between slots o, o+1 and o+2, o+3; the A-smoothing merges them.
        for (a_smoothing, weight) in [(true, 1), (false, -1)] {
            let pairs = if a_smoothing {
                [((o + 1) % 4, (o + 2) % 4), ((o + 3) % 4, o)]
            } else {
                [(o, (o + 1) % 4), ((o + 2) % 4, (o + 3) % 4)]
            };
            for (x, y) in pairs {
                chosen.push((e[x], e[y]));
            }
            let sub = self.resolve(chosen);
            chosen.truncate(2 * i);
            total = &total + &(&Laurent1::monomial(Var::A, 1, weight) * &sub);
        }
        total
    }

    fn loops(&self, extra: &[(usize, usize)]) -> Laurent1 {
        let mut p: Vec<usize> = (0..self.edges).collect();
        for &(a, b) in self.joins.iter().chain(extra) {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            p[ra] = rb;
        }
        // The open arc, or one closed loop, is not counted.
        let comps = (0..self.edges).filter(|&x| find(&mut p, x) == x).count();
        loop_value().pow(comps as u32 - 1)
    }
}

fn oracle(d: &Diagram) -> Laurent1 {
    Skein::new(d).bracket()
}

#[test]
fn oracle_kinks() {
    let pos = Diagram::from_gauss("O1+ U1+").unwrap();
    assert_eq!(pos.writhe(), 1);
    assert_eq!(oracle(&pos), Laurent1::monomial(Var::A, -1, 3));
    let neg = Diagram::from_gauss("O1- U1-").unwrap();
    assert_eq!(oracle(&neg), Laurent1::monomial(Var::A, -1, -3));
}

#[test]
fn fixtures_match_oracle() {
    for (name, d) in common::all() {
        assert_eq!(invariants::bracket(&d).unwrap(), oracle(&d), "{name}");
    }
}

#[test]
fn all_small_diagrams_match_oracle() {
    for n in 0..=3 {
        for code in Diagram::all_gauss_codes(n) {
            let d = Diagram::from_gauss_tokens(&code).unwrap();
            assert_eq!(invariants::bracket(&d).unwrap(), oracle(&d), "{code:?}");
        }
    }
}

#[test]
fn random_small_shortcut_maps_match_oracle() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20);
    let codes: Vec<_> = (1..=3).flat_map(Diagram::all_gauss_codes).collect();
    for _ in 0..100 {
        let code = codes.choose(&mut rng).unwrap();
        let d = Diagram::from_gauss_tokens(code).unwrap();
        let paths = d.shortcut_paths(d.edge_count(), 8);
        let s = d.with_shortcut(&paths[rng.gen_range(0..paths.len())]).unwrap();
        assert_eq!(invariants::bracket(&s).unwrap(), oracle(&s), "{code:?}");
    }
}

#[test]
fn closures_match_oracle() {
    for (name, d) in common::all() {
        for mode in [knotoid::ops::ClosureMode::Over, knotoid::ops::ClosureMode::Under] {
            let c = knotoid::ops::closure(&d, mode).unwrap();
            assert_eq!(invariants::bracket(&c).unwrap(), oracle(&c), "{name} {mode:?}");
        }
    }
}
