//! Assembling the admissible polyhedron as an equality-form LP.
//!
//! One column per piece, all variables implicitly nonnegative. Three row
//! families:
//!
//! 1. edge matching — per partner orbit `{e, partner(e)}`, the pieces must
//!    expose `e` exactly as often as `partner(e)`;
//! 2. group gluing — the signed tooth-matching sums vanish on every touched
//!    `(letter, position, base)` index, so teeth close up into polygons;
//! 3. degree — each word's first letter is covered exactly once.
//!
//! The objective is `-chi/2` per column; its minimum over the polyhedron is
//! the stable commutator length.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::chain::Chain;
use crate::pieces::{self, Edge, GroupEdgeIndex, Piece};
use crate::Rational;

/// What a row constrains; kept for diagnostics and the textual dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowKind {
    /// Multiplicity of the first edge minus multiplicity of its partner.
    EdgeOrbit(Edge, Edge),
    GroupEdge(GroupEdgeIndex),
    Degree(usize),
}

/// Sparse exact-rational equality-form LP: minimize `costs . v` subject to
/// `A v = rhs`, `v >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_rows: usize,
    /// Column-major sparse matrix; entries sorted by row index.
    pub cols: Vec<Vec<(usize, Rational)>>,
    pub costs: Vec<Rational>,
    pub rhs: Vec<Rational>,
    pub row_kinds: Vec<RowKind>,
    /// Variable index -> piece.
    pub pieces: Vec<Piece>,
}

impl LinearProgram {
    /// Enumerates all pieces of the chain and assembles the LP.
    pub fn build(chain: &Chain) -> LinearProgram {
        let pieces = pieces::enumerate_pieces(chain);
        let orbits = pieces::enumerate_orbits(chain);
        Self::build_from(chain, pieces, &orbits)
    }

    /// Assembles the LP from an explicit piece list and partner orbits.
    pub fn build_from(
        chain: &Chain,
        piece_list: Vec<Piece>,
        orbits: &[(Edge, Edge)],
    ) -> LinearProgram {
        // Edge -> (row, sign): +1 for the orbit representative, -1 for its
        // partner.
        let mut edge_rows: BTreeMap<Edge, (usize, i8)> = BTreeMap::new();
        let mut row_kinds: Vec<RowKind> = Vec::new();
        for &(e, p) in orbits {
            let row = row_kinds.len();
            edge_rows.insert(e, (row, 1));
            edge_rows.insert(p, (row, -1));
            row_kinds.push(RowKind::EdgeOrbit(e, p));
        }

        // Group-edge rows are instantiated lazily: only indices some tooth
        // actually touches.
        let mut group_rows: BTreeMap<GroupEdgeIndex, usize> = BTreeMap::new();
        for piece in &piece_list {
            for (g, _) in piece.group_boundary(chain) {
                let next = row_kinds.len() + group_rows.len();
                group_rows.entry(g).or_insert(next);
            }
        }
        // Re-index in sorted order for determinism.
        let base = row_kinds.len();
        for (i, (g, row)) in group_rows.iter_mut().enumerate() {
            *row = base + i;
            row_kinds.push(RowKind::GroupEdge(*g));
        }

        let degree_base = row_kinds.len();
        for w in 0..chain.num_words() {
            row_kinds.push(RowKind::Degree(w));
        }

        let num_rows = row_kinds.len();
        let mut rhs = vec![Rational::zero(); num_rows];
        for r in rhs.iter_mut().skip(degree_base) {
            *r = Rational::from_integer(1.into());
        }

        let minus_half = Rational::new((-1).into(), 2.into());
        let mut cols = Vec::with_capacity(piece_list.len());
        let mut costs = Vec::with_capacity(piece_list.len());
        for piece in &piece_list {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for e in piece.boundary_edges(chain) {
                let (row, sign) = edge_rows[&e];
                *acc.entry(row).or_insert_with(Rational::zero) +=
                    Rational::from_integer(sign.into());
            }
            for (g, sign) in piece.group_boundary(chain) {
                *acc.entry(group_rows[&g]).or_insert_with(Rational::zero) +=
                    Rational::from_integer(sign.into());
            }
            for w in 0..chain.num_words() {
                let d = piece.degree(chain, w);
                if d != 0 {
                    *acc.entry(degree_base + w).or_insert_with(Rational::zero) +=
                        Rational::from_integer(d.into());
                }
            }
            let col: Vec<(usize, Rational)> =
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            cols.push(col);
            costs.push(piece.chi(chain) * &minus_half);
        }

        LinearProgram {
            num_rows,
            cols,
            costs,
            rhs,
            row_kinds,
            pieces: piece_list,
        }
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    /// (rows, columns, nonzeros).
    pub fn dims(&self) -> (usize, usize, usize) {
        let nnz = self.cols.iter().map(Vec::len).sum();
        (self.num_rows, self.cols.len(), nnz)
    }

    /// Objective value of a sparse point.
    pub fn objective_of(&self, point: &BTreeMap<usize, Rational>) -> Rational {
        let mut total = Rational::zero();
        for (&j, v) in point {
            total += &self.costs[j] * v;
        }
        total
    }

    /// Human-readable equality-form dump for debugging against external
    /// solvers: one line per row, `cost:` line per column block.
    pub fn dump(&self, chain: &Chain) -> String {
        let mut out = String::new();
        let (m, n, nnz) = self.dims();
        let _ = writeln!(out, "minimize c.v  subject to  A v = b, v >= 0");
        let _ = writeln!(out, "rows {m}  cols {n}  nnz {nnz}");
        for (j, piece) in self.pieces.iter().enumerate() {
            let _ = writeln!(
                out,
                "var v{j} = {}   cost {}",
                pieces::piece_label(chain, piece),
                self.costs[j]
            );
        }
        // Row-major view of the sparse columns.
        let mut rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); m];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, a) in col {
                rows[*r].push((j, a));
            }
        }
        for (r, entries) in rows.iter().enumerate() {
            let kind = match &self.row_kinds[r] {
                RowKind::EdgeOrbit(e, p) => format!(
                    "edge e({},{}) vs e({},{})",
                    chain.letter_token(e.from),
                    chain.letter_token(e.to),
                    chain.letter_token(p.from),
                    chain.letter_token(p.to)
                ),
                RowKind::GroupEdge(g) => format!(
                    "group ({},{},{})",
                    chain.letter_token(g.letter),
                    g.position,
                    chain.letter_token(g.base)
                ),
                RowKind::Degree(w) => format!("degree word {w}"),
            };
            let terms: Vec<String> = entries
                .iter()
                .map(|(j, a)| format!("{a}*v{j}"))
                .collect();
            let _ = writeln!(
                out,
                "row {r} [{kind}]: {} = {}",
                terms.join(" + "),
                self.rhs[r]
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::GroupSpec;
    use num_traits::One;

    fn chain(group: &str, words: &[&str]) -> Chain {
        Chain::parse(&GroupSpec::parse(group).unwrap(), words).unwrap()
    }

    #[test]
    fn dims_abab_free() {
        let c = chain("a0b0", &["abAB"]);
        let lp = LinearProgram::build(&c);
        let (rows, cols, nnz) = lp.dims();
        assert_eq!(rows, 7); // 6 edge orbits + 1 degree row
        assert_eq!(cols, 10); // 2 rectangles + 8 triangles
        assert!(nnz > 0);
    }

    #[test]
    fn annulus_lp() {
        let c = chain("a0b0", &["a", "A"]);
        let lp = LinearProgram::build(&c);
        let (rows, cols, _) = lp.dims();
        assert_eq!(cols, 1);
        assert_eq!(rows, 3); // 1 edge orbit + 2 degree rows
                             // The single rectangle satisfies everything at v = 1.
        let col = &lp.cols[0];
        // Edge orbit entry cancels (+1 for e, -1 for partner appearing in the
        // same rectangle): both edges of the rectangle lie in one orbit here.
        for (r, a) in col {
            match lp.row_kinds[*r] {
                RowKind::Degree(_) => assert!(a.is_one()),
                _ => unreachable!("only degree rows remain"),
            }
        }
        assert!(lp.costs[0].is_zero());
    }

    #[test]
    fn empty_chain_dims() {
        let c = chain("a3b2", &["aaa"]);
        assert!(c.is_empty());
        let lp = LinearProgram::build(&c);
        assert_eq!(lp.dims(), (0, 0, 0));
    }

    #[test]
    fn dims_within_theorem_bounds() {
        for (g, words) in [
            ("a3b2", vec!["ab"]),
            ("a3b2", vec!["aabab"]),
            ("a0b0", vec!["abAABB", "ab"]),
            ("a5b0", vec!["abAB"]),
        ] {
            let c = chain(g, &words);
            let n = c.len();
            let order_sum: usize = c
                .group()
                .factors()
                .iter()
                .map(|f| f.order as usize)
                .sum();
            let (rows, cols, _) = LinearProgram::build(&c).dims();
            assert!(cols <= n * n * n * (1 + order_sum) + n * n);
            assert!(rows <= n * n * (1 + order_sum) + c.num_words());
        }
    }

    /// Every matrix column must equal the concatenation of the piece's
    /// boundary / group-boundary / degree evaluations.
    #[test]
    fn columns_match_piece_functionals() {
        for (g, words) in [("a3b2", vec!["ab"]), ("a0b0", vec!["abAB"]), ("a4b0", vec!["abAB"])] {
            let c = chain(g, &words);
            let lp = LinearProgram::build(&c);
            for (j, piece) in lp.pieces.iter().enumerate() {
                let mut expected: BTreeMap<usize, Rational> = BTreeMap::new();
                for (r, kind) in lp.row_kinds.iter().enumerate() {
                    let val: i64 = match kind {
                        RowKind::EdgeOrbit(e, p) => {
                            let bd = piece.boundary_edges(&c);
                            (bd.iter().filter(|x| *x == e).count() as i64)
                                - (bd.iter().filter(|x| *x == p).count() as i64)
                        }
                        RowKind::GroupEdge(g) => piece
                            .group_boundary(&c)
                            .iter()
                            .filter(|(gi, _)| gi == g)
                            .map(|(_, s)| *s as i64)
                            .sum(),
                        RowKind::Degree(w) => piece.degree(&c, *w) as i64,
                    };
                    if val != 0 {
                        expected.insert(r, Rational::from_integer(val.into()));
                    }
                }
                let got: BTreeMap<usize, Rational> = lp.cols[j].iter().cloned().collect();
                assert_eq!(got, expected, "column {j} of {c}");
            }
        }
    }

    #[test]
    fn costs_in_expected_set() {
        let c = chain("a3b2", &["ab"]);
        let lp = LinearProgram::build(&c);
        let quarter = Rational::new(1.into(), 4.into());
        for (j, piece) in lp.pieces.iter().enumerate() {
            let cost = &lp.costs[j];
            match piece {
                Piece::Rectangle(_) => assert!(cost.is_zero()),
                Piece::Triangle(_) => assert_eq!(cost, &quarter),
                Piece::Tooth(t) => {
                    let o = c.group().order(t.factor(&c)) as i64;
                    let half_inv = Rational::new(1.into(), (2 * o).into());
                    if t.edge().is_dummy(&c) {
                        assert_eq!(cost, &(-half_inv));
                    } else {
                        assert_eq!(cost, &(quarter.clone() - half_inv));
                    }
                }
            }
        }
    }

    #[test]
    fn dump_mentions_all_rows() {
        let c = chain("a0b0", &["abAB"]);
        let lp = LinearProgram::build(&c);
        let dump = lp.dump(&c);
        assert!(dump.contains("rows 7  cols 10"));
        assert!(dump.contains("degree word 0"));
    }
}
