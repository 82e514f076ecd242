//! Surface pieces and the linear functionals on them.
//!
//! An edge `e(x,y)` is an ordered pair of letters; it is *dummy* when `y`
//! cyclically follows `x`. Pieces come in three kinds:
//!
//! - rectangles `r(x,y)` on an unordered pair of inverse letters in the same
//!   infinite factor,
//! - triangles `t(e1,e2,e3)` on three cyclically compatible non-dummy edges,
//! - group teeth `gt(x,y,n,z)`: the position-`n` slice of a group polygon
//!   based at `z`, all letters in one finite factor.
//!
//! Two edges glue when one is the partner of the other:
//! `partner(e(x,y)) = e(prev(y), next(x))`, an involution that fixes exactly
//! the dummy edges.

use num_rational::BigRational;
use num_traits::Zero;

use crate::chain::{Chain, LetterId};
use crate::Rational;

fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(num.into(), den.into())
}

/// Ordered pair of letters; the interface along which pieces glue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: LetterId,
    pub to: LetterId,
}

impl Edge {
    pub fn new(from: LetterId, to: LetterId) -> Self {
        Edge { from, to }
    }

    /// Dummy edges connect cyclically consecutive letters and are never glued.
    pub fn is_dummy(&self, chain: &Chain) -> bool {
        chain.next(self.from) == self.to
    }
}

/// The gluing mate of an edge: `e(x,y) -> e(prev(y), next(x))`.
pub fn partner(chain: &Chain, e: Edge) -> Edge {
    Edge::new(chain.prev(e.to), chain.next(e.from))
}

/// Rectangle on two inverse letters of an infinite factor; `r(x,y) = r(y,x)`,
/// stored with `x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rectangle {
    pub x: LetterId,
    pub y: LetterId,
}

impl Rectangle {
    pub fn new(a: LetterId, b: LetterId) -> Self {
        Rectangle {
            x: a.min(b),
            y: a.max(b),
        }
    }
}

/// Triangle on three compatible edges, stored as the lexicographically least
/// rotation of the cyclic triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub edges: [Edge; 3],
}

impl Triangle {
    /// Builds the triangle determined by the outgoing letters of its three
    /// edges: `(e(prev(y3),y1), e(prev(y1),y2), e(prev(y2),y3))`, canonical.
    pub fn from_outgoing(chain: &Chain, y: [LetterId; 3]) -> Self {
        let edges = [
            Edge::new(chain.prev(y[2]), y[0]),
            Edge::new(chain.prev(y[0]), y[1]),
            Edge::new(chain.prev(y[1]), y[2]),
        ];
        Self::canonical(edges)
    }

    fn canonical(edges: [Edge; 3]) -> Self {
        let rot = |k: usize| [edges[k], edges[(k + 1) % 3], edges[(k + 2) % 3]];
        let best = (0..3).map(rot).min().unwrap();
        Triangle { edges: best }
    }

    /// True when the stored triple already is the least rotation.
    fn is_canonical(&self) -> bool {
        Self::canonical(self.edges) == *self
    }
}

/// Group tooth `gt(x,y,n,z)` in a finite factor: labeled sides `x` (first)
/// and `y` (second), position `n`, base letter `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupTooth {
    pub first: LetterId,
    pub second: LetterId,
    pub position: u32,
    pub base: LetterId,
}

impl GroupTooth {
    pub fn edge(&self) -> Edge {
        Edge::new(self.first, self.second)
    }

    pub fn factor(&self, chain: &Chain) -> usize {
        chain.letter(self.base).factor
    }
}

/// Index `(x, n, z)` for the group-tooth matching constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupEdgeIndex {
    pub letter: LetterId,
    pub position: u32,
    pub base: LetterId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Piece {
    Rectangle(Rectangle),
    Triangle(Triangle),
    Tooth(GroupTooth),
}

impl Piece {
    /// Euler-characteristic contribution: 0 on rectangles, -1/2 on triangles,
    /// and on a tooth in a factor of order o: 1/o if its edge is dummy,
    /// 1/o - 1/2 otherwise.
    pub fn chi(&self, chain: &Chain) -> Rational {
        match self {
            Piece::Rectangle(_) => Rational::zero(),
            Piece::Triangle(_) => ratio(-1, 2),
            Piece::Tooth(t) => {
                let o = chain.group().order(t.factor(chain)) as i64;
                if t.edge().is_dummy(chain) {
                    ratio(1, o)
                } else {
                    ratio(1, o) + ratio(-1, 2)
                }
            }
        }
    }

    /// Boundary-degree contribution for word `i`: 0 on triangles, 1 on a
    /// rectangle carrying the first letter of word `i` on either side, 1 on a
    /// tooth whose first labeled side is that letter.
    pub fn degree(&self, chain: &Chain, word: usize) -> u8 {
        let w0 = chain.first_letter(word);
        match self {
            Piece::Triangle(_) => 0,
            Piece::Rectangle(r) => u8::from(r.x == w0 || r.y == w0),
            Piece::Tooth(t) => u8::from(t.first == w0),
        }
    }

    /// The multiset of edges the piece exposes for gluing. A tooth with a
    /// dummy edge exposes nothing.
    pub fn boundary_edges(&self, chain: &Chain) -> Vec<Edge> {
        match self {
            Piece::Rectangle(r) => vec![Edge::new(r.x, r.y), Edge::new(r.y, r.x)],
            Piece::Triangle(t) => t.edges.to_vec(),
            Piece::Tooth(t) => {
                let e = t.edge();
                if e.is_dummy(chain) {
                    vec![]
                } else {
                    vec![e]
                }
            }
        }
    }

    /// Signed group-tooth matching entries:
    /// `gt(x,y,n,z) -> +(y, (n+1) mod o, z) - (x, n, z)`; empty on rectangles
    /// and triangles.
    pub fn group_boundary(&self, chain: &Chain) -> Vec<(GroupEdgeIndex, i8)> {
        match self {
            Piece::Tooth(t) => {
                let o = chain.group().order(t.factor(chain));
                vec![
                    (
                        GroupEdgeIndex {
                            letter: t.second,
                            position: (t.position + 1) % o,
                            base: t.base,
                        },
                        1,
                    ),
                    (
                        GroupEdgeIndex {
                            letter: t.first,
                            position: t.position,
                            base: t.base,
                        },
                        -1,
                    ),
                ]
            }
            _ => vec![],
        }
    }
}

/// All non-dummy edges in sorted order.
pub fn enumerate_edges(chain: &Chain) -> Vec<Edge> {
    let mut edges = Vec::new();
    for x in chain.letters() {
        for y in chain.letters() {
            let e = Edge::new(x, y);
            if !e.is_dummy(chain) {
                edges.push(e);
            }
        }
    }
    edges.sort();
    edges
}

/// The partner orbits `{e, partner(e)}` with `e < partner(e)`, sorted.
pub fn enumerate_orbits(chain: &Chain) -> Vec<(Edge, Edge)> {
    let mut orbits = Vec::new();
    for e in enumerate_edges(chain) {
        let p = partner(chain, e);
        debug_assert!(!p.is_dummy(chain));
        debug_assert_ne!(p, e, "a self-paired edge would be dummy");
        if e < p {
            orbits.push((e, p));
        }
    }
    orbits
}

/// All rectangles: unordered inverse pairs within infinite factors.
pub fn enumerate_rectangles(chain: &Chain) -> Vec<Rectangle> {
    let mut rects = Vec::new();
    for x in chain.letters() {
        for y in chain.letters().skip(x + 1) {
            if chain.are_inverse(x, y) {
                rects.push(Rectangle::new(x, y));
            }
        }
    }
    rects.sort();
    rects
}

/// All triangles: cyclic classes of ordered triples of pairwise-distinct
/// letters, realized through their outgoing-letter form.
pub fn enumerate_triangles(chain: &Chain) -> Vec<Triangle> {
    let mut tris = Vec::new();
    for y1 in chain.letters() {
        for y2 in chain.letters() {
            if y2 == y1 {
                continue;
            }
            for y3 in chain.letters() {
                if y3 == y1 || y3 == y2 {
                    continue;
                }
                if is_emitting_rotation([y1, y2, y3]) {
                    tris.push(Triangle::from_outgoing(chain, [y1, y2, y3]));
                }
            }
        }
    }
    tris.sort();
    tris
}

/// Keeps one representative per cyclic class of outgoing triples.
fn is_emitting_rotation(y: [LetterId; 3]) -> bool {
    let rots = [[y[0], y[1], y[2]], [y[1], y[2], y[0]], [y[2], y[0], y[1]]];
    y == *rots.iter().min().unwrap()
}

/// All group teeth, ordered by (factor, base, position, first, second).
pub fn enumerate_teeth(chain: &Chain) -> Vec<GroupTooth> {
    let group = chain.group();
    let mut teeth = Vec::new();
    for (j, factor) in group.factors().iter().enumerate() {
        if !factor.is_finite() {
            continue;
        }
        let o = factor.order;
        let letters: Vec<LetterId> = chain
            .letters()
            .filter(|&l| chain.letter(l).factor == j)
            .collect();
        for &z in &letters {
            for n in 0..o {
                let firsts: &[LetterId] = if n == 0 { std::slice::from_ref(&z) } else { &letters };
                for &x in firsts {
                    let seconds: &[LetterId] =
                        if n == o - 1 { std::slice::from_ref(&z) } else { &letters };
                    for &y in seconds {
                        teeth.push(GroupTooth {
                            first: x,
                            second: y,
                            position: n,
                            base: z,
                        });
                    }
                }
            }
        }
    }
    teeth
}

/// Every piece in the fixed column order: rectangles, triangles, teeth.
pub fn enumerate_pieces(chain: &Chain) -> Vec<Piece> {
    let mut pieces: Vec<Piece> = Vec::new();
    pieces.extend(enumerate_rectangles(chain).into_iter().map(Piece::Rectangle));
    pieces.extend(enumerate_triangles(chain).into_iter().map(Piece::Triangle));
    pieces.extend(enumerate_teeth(chain).into_iter().map(Piece::Tooth));
    pieces
}

/// Renders a piece using letter tokens, for diagnostics and exports.
pub fn piece_label(chain: &Chain, piece: &Piece) -> String {
    match piece {
        Piece::Rectangle(r) => format!(
            "r({},{})",
            chain.letter_token(r.x),
            chain.letter_token(r.y)
        ),
        Piece::Triangle(t) => {
            let e: Vec<String> = t
                .edges
                .iter()
                .map(|e| {
                    format!(
                        "e({},{})",
                        chain.letter_token(e.from),
                        chain.letter_token(e.to)
                    )
                })
                .collect();
            format!("t({})", e.join(","))
        }
        Piece::Tooth(t) => format!(
            "gt({},{},{},{})",
            chain.letter_token(t.first),
            chain.letter_token(t.second),
            t.position,
            chain.letter_token(t.base)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::GroupSpec;
    use std::collections::BTreeSet;

    fn chain(group: &str, words: &[&str]) -> Chain {
        Chain::parse(&GroupSpec::parse(group).unwrap(), words).unwrap()
    }

    #[test]
    fn partner_matches_labels() {
        // Chain abAABB+ab: the rectangle r(a(1,0), A(0,2)) has short edges
        // whose gluing mates sit on the adjacent polygons.
        let c = chain("a0b0", &["abAABB", "ab"]);
        let a10 = c.letter_at(1, 0);
        let a02 = c.letter_at(0, 2);
        let b01 = c.letter_at(0, 1);
        let b11 = c.letter_at(1, 1);
        let a03 = c.letter_at(0, 3);
        assert_eq!(
            partner(&c, Edge::new(a10, a02)),
            Edge::new(b01, b11)
        );
        assert_eq!(
            partner(&c, Edge::new(a02, a10)),
            Edge::new(b11, a03)
        );
    }

    #[test]
    fn partner_is_involution() {
        let c = chain("a0b0", &["abAB"]);
        for x in c.letters() {
            for y in c.letters() {
                let e = Edge::new(x, y);
                assert_eq!(partner(&c, partner(&c, e)), e);
                assert_eq!(partner(&c, e).is_dummy(&c), e.is_dummy(&c));
            }
        }
    }

    #[test]
    fn edge_counts_abab() {
        let c = chain("a0b0", &["abAB"]);
        let edges = enumerate_edges(&c);
        assert_eq!(edges.len(), 12); // 16 ordered pairs minus 4 dummies
        assert_eq!(enumerate_orbits(&c).len(), 6);
    }

    #[test]
    fn edge_counts_annulus() {
        let c = chain("a0b0", &["a", "A"]);
        let edges = enumerate_edges(&c);
        let a = c.letter_at(0, 0);
        let inv = c.letter_at(1, 0);
        assert_eq!(edges, vec![Edge::new(a, inv), Edge::new(inv, a)]);
        assert_eq!(enumerate_orbits(&c).len(), 1);
    }

    #[test]
    fn rectangles_abab() {
        let c = chain("a0b0", &["abAB"]);
        let rects = enumerate_rectangles(&c);
        let expected = vec![
            Rectangle::new(c.letter_at(0, 0), c.letter_at(0, 2)),
            Rectangle::new(c.letter_at(0, 1), c.letter_at(0, 3)),
        ];
        assert_eq!(rects, expected);
    }

    #[test]
    fn rectangles_positive_finite_letters_excluded() {
        // a b a a B in a3b0: all a-letters positive, only the b-pair remains.
        let c = chain("a3b0", &["abAB"]);
        let rects = enumerate_rectangles(&c);
        assert_eq!(
            rects,
            vec![Rectangle::new(c.letter_at(0, 1), c.letter_at(0, 4))]
        );
    }

    #[test]
    fn rectangle_across_words() {
        let c = chain("a0b0", &["abAABB", "ab"]);
        let r = Rectangle::new(c.letter_at(1, 0), c.letter_at(0, 2));
        assert!(enumerate_rectangles(&c).contains(&r));
    }

    /// Brute-force oracle: try all |Γ|³ ordered letter triples as outgoing
    /// letters, keep compatible dummy-free triangles, dedupe cyclic classes.
    fn triangles_brute_force(c: &Chain) -> BTreeSet<Triangle> {
        let mut found = BTreeSet::new();
        for y1 in c.letters() {
            for y2 in c.letters() {
                for y3 in c.letters() {
                    let t = Triangle::from_outgoing(c, [y1, y2, y3]);
                    if t.edges.iter().all(|e| !e.is_dummy(c)) {
                        found.insert(t);
                    }
                }
            }
        }
        found
    }

    #[test]
    fn triangles_match_brute_force() {
        for (g, words) in [
            ("a0b0", vec!["abAB"]),
            ("a0b0", vec!["abAABB", "ab"]),
            ("a3b2", vec!["ab"]),
            ("a0b0", vec!["a", "A"]),
        ] {
            let c = chain(g, &words);
            let enumerated: BTreeSet<Triangle> =
                enumerate_triangles(&c).into_iter().collect();
            assert_eq!(enumerated, triangles_brute_force(&c), "chain {c}");
        }
    }

    #[test]
    fn triangle_counts() {
        let c = chain("a0b0", &["abAB"]);
        assert_eq!(enumerate_triangles(&c).len(), 8); // 24 distinct triples / 3
        let c2 = chain("a0b0", &["a", "A"]);
        assert_eq!(enumerate_triangles(&c2).len(), 0);
    }

    #[test]
    fn triangle_edge_with_equal_endpoints_is_legal() {
        let c = chain("a0b0", &["abAABB", "ab"]);
        let a03 = c.letter_at(0, 3);
        let found = enumerate_triangles(&c)
            .iter()
            .any(|t| t.edges.contains(&Edge::new(a03, a03)));
        assert!(found);
    }

    #[test]
    fn teeth_count_formula() {
        // aabaaB in a5b0 has 4 a-letters: 2*16 + 3*64 = 224 teeth.
        let c = chain("a5b0", &["aabaaB"]);
        assert_eq!(c.factor_count(0), 4);
        let teeth = enumerate_teeth(&c);
        assert_eq!(teeth.len(), 224);
        // Brute force over all 4-tuples with the position constraints.
        let letters: Vec<LetterId> = c
            .letters()
            .filter(|&l| c.letter(l).factor == 0)
            .collect();
        let mut count = 0;
        for &z in &letters {
            for n in 0..5u32 {
                for &x in &letters {
                    if n == 0 && x != z {
                        continue;
                    }
                    for &y in &letters {
                        if n == 4 && y != z {
                            continue;
                        }
                        count += 1;
                        assert!(teeth.contains(&GroupTooth {
                            first: x,
                            second: y,
                            position: n,
                            base: z
                        }));
                    }
                }
            }
        }
        assert_eq!(count, teeth.len());
    }

    #[test]
    fn tooth_position_constraints() {
        let c = chain("a5b0", &["aabaaB"]);
        let a00 = c.letter_at(0, 0);
        let a03 = c.letter_at(0, 3);
        let a01 = c.letter_at(0, 1);
        // n=0 demands first == base.
        let invalid = GroupTooth {
            first: a00,
            second: a03,
            position: 0,
            base: a01,
        };
        assert!(!enumerate_teeth(&c).contains(&invalid));
    }

    #[test]
    fn chi_values() {
        let c = chain("a0b0", &["abAB"]);
        let r = Piece::Rectangle(Rectangle::new(c.letter_at(0, 0), c.letter_at(0, 2)));
        assert_eq!(r.chi(&c), Rational::zero());

        let c5 = chain("a5b0", &["aabaaB"]);
        let a00 = c5.letter_at(0, 0);
        let a01 = c5.letter_at(0, 1);
        // Dummy edge: a(0,1) follows a(0,0).
        let dummy_tooth = Piece::Tooth(GroupTooth {
            first: a00,
            second: a01,
            position: 1,
            base: a01,
        });
        assert_eq!(dummy_tooth.chi(&c5), ratio(1, 5));
        // Non-dummy: next(a(0,1)) is b(0,2).
        let real_tooth = Piece::Tooth(GroupTooth {
            first: a01,
            second: a00,
            position: 0,
            base: a01,
        });
        assert_eq!(real_tooth.chi(&c5), ratio(-3, 10));
    }

    #[test]
    fn degree_values() {
        let c5 = chain("a5b0", &["aabaaB"]);
        let tooth = Piece::Tooth(GroupTooth {
            first: c5.letter_at(0, 0),
            second: c5.letter_at(0, 3),
            position: 1,
            base: c5.letter_at(0, 1),
        });
        assert_eq!(tooth.degree(&c5, 0), 1);

        let c = chain("a0b0", &["abAB"]);
        let r = Piece::Rectangle(Rectangle::new(c.letter_at(0, 0), c.letter_at(0, 2)));
        assert_eq!(r.degree(&c, 0), 1);
        for t in enumerate_triangles(&c) {
            assert_eq!(Piece::Triangle(t).degree(&c, 0), 0);
        }
    }

    #[test]
    fn boundary_edges_cases() {
        let c = chain("a0b0", &["abAABB", "ab"]);
        let a10 = c.letter_at(1, 0);
        let a02 = c.letter_at(0, 2);
        let r = Piece::Rectangle(Rectangle::new(a10, a02));
        let mut bd = r.boundary_edges(&c);
        bd.sort();
        let mut expected = vec![Edge::new(a10, a02), Edge::new(a02, a10)];
        expected.sort();
        assert_eq!(bd, expected);

        let c5 = chain("a5b0", &["aabaaB"]);
        let dummy_tooth = Piece::Tooth(GroupTooth {
            first: c5.letter_at(0, 0),
            second: c5.letter_at(0, 1),
            position: 1,
            base: c5.letter_at(0, 1),
        });
        assert!(dummy_tooth.boundary_edges(&c5).is_empty());
        let real_tooth = Piece::Tooth(GroupTooth {
            first: c5.letter_at(0, 1),
            second: c5.letter_at(0, 0),
            position: 0,
            base: c5.letter_at(0, 1),
        });
        assert_eq!(
            real_tooth.boundary_edges(&c5),
            vec![Edge::new(c5.letter_at(0, 1), c5.letter_at(0, 0))]
        );
    }

    #[test]
    fn group_boundary_formula() {
        let c5 = chain("a5b0", &["aabaaB"]);
        let a01 = c5.letter_at(0, 1);
        let a00 = c5.letter_at(0, 0);
        let tooth = Piece::Tooth(GroupTooth {
            first: a01,
            second: a00,
            position: 0,
            base: a01,
        });
        assert_eq!(
            tooth.group_boundary(&c5),
            vec![
                (
                    GroupEdgeIndex {
                        letter: a00,
                        position: 1,
                        base: a01
                    },
                    1
                ),
                (
                    GroupEdgeIndex {
                        letter: a01,
                        position: 0,
                        base: a01
                    },
                    -1
                ),
            ]
        );
        // Wraparound at the last position.
        let a04 = c5.letter_at(0, 4);
        let last = Piece::Tooth(GroupTooth {
            first: a04,
            second: a01,
            position: 4,
            base: a01,
        });
        assert_eq!(last.group_boundary(&c5)[0].0.position, 0);
    }

    #[test]
    fn figure_polygon_teeth_cancel() {
        // The five teeth cutting the pentagon: their group boundaries
        // telescope to zero.
        let c5 = chain("a5b0", &["aabaaB"]);
        let at = |p: usize| c5.letter_at(0, p);
        let teeth = [
            GroupTooth { first: at(1), second: at(0), position: 0, base: at(1) },
            GroupTooth { first: at(0), second: at(3), position: 1, base: at(1) },
            GroupTooth { first: at(3), second: at(1), position: 2, base: at(1) },
            GroupTooth { first: at(1), second: at(4), position: 3, base: at(1) },
            GroupTooth { first: at(4), second: at(1), position: 4, base: at(1) },
        ];
        let mut sums: std::collections::BTreeMap<GroupEdgeIndex, i64> =
            std::collections::BTreeMap::new();
        for t in teeth {
            for (g, s) in Piece::Tooth(t).group_boundary(&c5) {
                *sums.entry(g).or_default() += s as i64;
            }
            // All teeth are valid enumerated pieces.
            assert!(enumerate_teeth(&c5).contains(&t));
        }
        assert!(sums.values().all(|&v| v == 0));
    }

    #[test]
    fn piece_count_bounds() {
        for (g, words) in [("a3b2", vec!["ab"]), ("a0b0", vec!["abAB"]), ("a5b0", vec!["aabaaB"])] {
            let c = chain(g, &words);
            let n = c.len();
            let order_sum: usize = c
                .group()
                .factors()
                .iter()
                .map(|f| f.order as usize)
                .sum();
            let pieces = enumerate_pieces(&c);
            assert!(pieces.len() <= n * n * n * (1 + order_sum) + n * n);
            assert!(enumerate_edges(&c).len() <= n * n);
        }
    }
}
