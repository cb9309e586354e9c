//! Classification of integral hexatangle fillings up to symmetry.
//!
//! The hexatangle is the octahedral tangle template built in
//! [`crate::diagrams`]: six twist slots arranged like the vertices of an
//! octahedron, or equivalently like the edges of a tetrahedron.  A *filling*
//! `(α, β, γ, δ, ε, η)` assigns an integer number of half-twists to each slot,
//! and the filled template closes up to a knot or link.  This module decides,
//! for any filling, whether that closure is the trivial knot, and produces an
//! explicit witness when it is.
//!
//! # Symmetry
//!
//! Place the six slot values on the edges of a tetrahedron with vertices
//! `{0, 1, 2, 3}`:
//!
//! ```text
//! α = {0,1}   β = {0,2}   γ = {0,3}
//! δ = {1,2}   ε = {2,3}   η = {1,3}
//! ```
//!
//! Opposite slots of the octahedron (`{α,ε}`, `{β,η}`, `{γ,δ}`) sit on
//! complementary tetrahedron edges.  Every permutation of the four vertices is
//! realised by a rotation of the octahedral template, so pushing a filling
//! forward along a vertex permutation preserves the closure; negating all six
//! values mirrors it.  Together these give the group of 48 symmetries returned
//! by [`symmetry_group`], and triviality is decided up to this action.
//!
//! # Classification
//!
//! [`classify`] first counts link components on the actual diagram; more than
//! one component yields [`ClassificationResult::NotAKnot`].  For knots it
//! matches all 48 symmetric images of the filling against the 132 parametric
//! families of trivial fillings listed in [`table_rows`], arranged in three
//! tables distinguished by their fixed entries (tables 1 and 2 force `η = 0`,
//! table 3 forces `δ = -1, η = 1`).  A match yields
//! [`ClassificationResult::Trivial`] with the row, the symmetry used, and the
//! matching image as a checkable witness; no match means the knot is
//! nontrivial.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::diagrams::hex_component_count;
use crate::exact::Int;

/// An integral filling of the six hexatangle slots, in the order
/// `(α, β, γ, δ, ε, η)`.
///
/// The `Ord` instance is lexicographic on the six values; it is used to pick
/// canonical orbit representatives (see [`orbit_canonical`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HexFilling(pub [Int; 6]);

impl HexFilling {
    /// Wraps six slot values given in the order `(α, β, γ, δ, ε, η)`.
    pub fn new(values: [Int; 6]) -> Self {
        HexFilling(values)
    }

    /// The six slot values in the order `(α, β, γ, δ, ε, η)`.
    pub fn values(&self) -> [Int; 6] {
        self.0
    }
}

impl fmt::Display for HexFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, h] = self.0;
        write!(f, "({a}, {b}, {c}, {d}, {e}, {h})")
    }
}

impl fmt::Debug for HexFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses six comma-separated integers, with optional surrounding
/// parentheses or brackets: `"1,-1,2,0,0,3"` or `"(1, -1, 2, 0, 0, 3)"`.
impl FromStr for HexFilling {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(format!("expected 6 slot values, got {}", parts.len()));
        }
        let mut values = [0 as Int; 6];
        for (slot, part) in values.iter_mut().zip(&parts) {
            *slot = part
                .parse::<Int>()
                .map_err(|e| format!("bad slot value {part:?}: {e}"))?;
        }
        Ok(HexFilling(values))
    }
}

/// Tetrahedron edge carrying each slot: slot `i` lies on edge
/// `EDGE_VERTICES[i]` (vertices listed in increasing order).
const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)];

/// Index of the slot sitting on tetrahedron edge `{u, v}`.
fn edge_index(u: usize, v: usize) -> usize {
    let edge = if u < v { (u, v) } else { (v, u) };
    EDGE_VERTICES
        .iter()
        .position(|&e| e == edge)
        .expect("every vertex pair is a tetrahedron edge")
}

/// One symmetry of the hexatangle: a permutation of the four tetrahedron
/// vertices (realised by a rotation of the octahedral template), optionally
/// followed by the mirror, which negates every slot value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HexSymmetry {
    /// Images of the tetrahedron vertices: vertex `v` maps to `vertex_map[v]`.
    pub vertex_map: [usize; 4],
    /// Whether to negate all six slot values (take the mirror image).
    pub mirror: bool,
}

impl HexSymmetry {
    /// The identity symmetry.
    pub fn identity() -> Self {
        HexSymmetry {
            vertex_map: [0, 1, 2, 3],
            mirror: false,
        }
    }

    /// The induced permutation of the six slots: slot `i` maps to
    /// `slot_map()[i]`.
    pub fn slot_map(&self) -> [usize; 6] {
        let mut map = [0; 6];
        for (i, &(u, v)) in EDGE_VERTICES.iter().enumerate() {
            map[i] = edge_index(self.vertex_map[u], self.vertex_map[v]);
        }
        map
    }

    /// Pushes a filling forward along this symmetry.
    pub fn apply(&self, filling: &HexFilling) -> HexFilling {
        let slot_map = self.slot_map();
        let mut out = [0; 6];
        for (i, &value) in filling.0.iter().enumerate() {
            out[slot_map[i]] = if self.mirror { -value } else { value };
        }
        HexFilling(out)
    }

    /// Composition: `a.compose(&b)` applies `b` first, then `a`.
    pub fn compose(&self, other: &HexSymmetry) -> HexSymmetry {
        let mut vertex_map = [0; 4];
        for (slot, v) in vertex_map.iter_mut().zip(other.vertex_map) {
            *slot = self.vertex_map[v];
        }
        HexSymmetry {
            vertex_map,
            mirror: self.mirror != other.mirror,
        }
    }

    /// The inverse symmetry.
    pub fn inverse(&self) -> HexSymmetry {
        let mut vertex_map = [0; 4];
        for (v, &image) in self.vertex_map.iter().enumerate() {
            vertex_map[image] = v;
        }
        HexSymmetry {
            vertex_map,
            mirror: self.mirror,
        }
    }
}

impl fmt::Display for HexSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.vertex_map;
        write!(
            f,
            "vertices [{a}, {b}, {c}, {d}]{}",
            if self.mirror { ", mirror" } else { "" }
        )
    }
}

impl fmt::Debug for HexSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The full symmetry group of the hexatangle: all 24 vertex permutations in
/// lexicographic order, each without and with the mirror, 48 elements total.
/// The identity comes first, so classification witnesses prefer it.
pub fn symmetry_group() -> &'static [HexSymmetry] {
    static GROUP: OnceLock<Vec<HexSymmetry>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let mut group = Vec::with_capacity(48);
        for a in 0..4 {
            for b in (0..4).filter(|&b| b != a) {
                for c in (0..4).filter(|&c| c != a && c != b) {
                    let d = 6 - a - b - c;
                    for mirror in [false, true] {
                        group.push(HexSymmetry {
                            vertex_map: [a, b, c, d],
                            mirror,
                        });
                    }
                }
            }
        }
        group
    })
}

/// The lexicographically smallest of the 48 symmetric images of a filling.
/// Fillings in the same orbit share their canonical form, so this serves as a
/// deterministic orbit representative.
pub fn orbit_canonical(filling: &HexFilling) -> HexFilling {
    symmetry_group()
        .iter()
        .map(|sym| sym.apply(filling))
        .min()
        .expect("symmetry group is nonempty")
}

/// One entry of a classification-table row: the constraint a single slot value
/// must satisfy.
// Externally tagged serialisation (serde's default): internal tagging buffers
// the payload through a representation that cannot round-trip i128 values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    /// The slot must hold exactly this value.
    Const {
        /// The required value.
        value: Int,
    },
    /// The slot may hold `1` or `-1`.
    PlusMinusOne,
    /// The slot may hold any integer (a free parameter of the family).
    Free,
    /// The slot must hold `k - x` for one of the listed offsets `k`, where `x`
    /// is the value of the slot at index `source` — always a [`Pattern::Free`]
    /// column of the same row.
    OffsetNeg {
        /// Slot index (into the filling) whose value is subtracted.
        source: usize,
        /// Admissible offsets `k`; the entry may be `k - x` for any of them.
        offsets: Vec<Int>,
    },
}

impl Pattern {
    /// Does `value` satisfy this constraint within the given filling?
    fn admits(&self, filling: &HexFilling, value: Int) -> bool {
        match self {
            Pattern::Const { value: c } => value == *c,
            Pattern::PlusMinusOne => value == 1 || value == -1,
            Pattern::Free => true,
            Pattern::OffsetNeg { source, offsets } => {
                offsets.iter().any(|&k| value == k - filling.0[*source])
            }
        }
    }
}

/// One parametric family of trivial fillings: a single row of the
/// classification tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// Which table the row belongs to: 1, 2 or 3.
    pub table: u8,
    /// Line number within its table, starting at 1.
    pub line: u8,
    /// Constraints on the six slot values, in the order `(α, β, γ, δ, ε, η)`.
    pub pattern: [Pattern; 6],
}

/// Does the filling satisfy every entry of the row?
pub fn matches_row(filling: &HexFilling, row: &TableRow) -> bool {
    row.pattern
        .iter()
        .zip(filling.0)
        .all(|(pattern, value)| pattern.admits(filling, value))
}

/// Entry of a raw table row, written in the table's own column order.
#[derive(Clone, Copy)]
enum Raw {
    /// Constant value.
    N(Int),
    /// `±1`.
    Pm,
    /// Arbitrary integer.
    Any,
    /// `k - x` where `x` is the table column with the given index.
    Off(usize, Int),
    /// `±1 - x` where `x` is the table column with the given index.
    OffPm(usize),
}

/// Converts a raw row from table column order into slot order, using the map
/// `cols[j] = slot index of table column j`.
fn convert_row(table: u8, line: u8, raw: &[Raw; 6], cols: &[usize; 6]) -> TableRow {
    let mut pattern: [Pattern; 6] = std::array::from_fn(|_| Pattern::Free);
    for (j, entry) in raw.iter().enumerate() {
        pattern[cols[j]] = match *entry {
            Raw::N(value) => Pattern::Const { value },
            Raw::Pm => Pattern::PlusMinusOne,
            Raw::Any => Pattern::Free,
            Raw::Off(src, k) => Pattern::OffsetNeg {
                source: cols[src],
                offsets: vec![k],
            },
            Raw::OffPm(src) => Pattern::OffsetNeg {
                source: cols[src],
                offsets: vec![1, -1],
            },
        };
    }
    TableRow {
        table,
        line,
        pattern,
    }
}

fn build_tables() -> Vec<TableRow> {
    use Raw::{Any, Off, OffPm, N, Pm};

    // Column orders of the three tables, as maps from table column index to
    // slot index in (α, β, γ, δ, ε, η) = (0, 1, 2, 3, 4, 5).
    const T1_COLS: [usize; 6] = [5, 1, 0, 3, 4, 2]; // columns (η, β, α, δ, ε, γ)
    const T2_COLS: [usize; 6] = [5, 0, 1, 2, 3, 4]; // columns (η, α, β, γ, δ, ε)
    const T3_COLS: [usize; 6] = [3, 5, 0, 1, 2, 4]; // columns (δ, η, α, β, γ, ε)

    // Table 1, columns (η, β, α, δ, ε, γ).  Offsets reference column 5 = γ or
    // column 3 = δ.
    let t1: [[Raw; 6]; 28] = [
        [N(0), Pm, Pm, N(0), N(0), Pm],
        [N(0), N(0), Pm, N(0), Pm, Pm],
        [N(0), N(1), Pm, N(0), N(-3), N(-2)],
        [N(0), N(1), Pm, N(0), N(-2), N(-3)],
        [N(0), N(1), Pm, N(0), N(-1), Any],
        [N(0), N(1), Pm, N(0), Any, N(-1)],
        [N(0), N(-2), Pm, N(0), N(1), N(-3)],
        [N(0), N(-3), Pm, N(0), N(1), N(-2)],
        [N(0), Any, Pm, N(0), N(1), N(-1)],
        [N(0), N(-1), Pm, N(0), N(1), Any],
        [N(0), N(0), N(1), N(1), N(-1), N(-2)],
        [N(0), N(0), N(1), N(1), N(-2), N(-1)],
        [N(0), N(0), N(1), N(-1), OffPm(5), Any],
        [N(0), N(0), N(-1), N(1), OffPm(5), Any],
        [N(0), N(0), N(-1), N(-1), N(1), N(2)],
        [N(0), N(0), N(-1), N(-1), N(2), N(1)],
        [N(0), N(0), N(1), N(-1), N(1), N(-2)],
        [N(0), N(0), N(1), N(-2), N(1), N(-1)],
        [N(0), N(0), N(1), OffPm(5), N(-1), Any],
        [N(0), N(0), N(-1), OffPm(5), N(1), Any],
        [N(0), N(0), N(-1), N(1), N(-1), N(2)],
        [N(0), N(0), N(-1), N(2), N(-1), N(1)],
        [N(0), N(0), N(1), N(-2), N(-1), N(1)],
        [N(0), N(0), N(1), N(-1), N(-2), N(1)],
        [N(0), N(0), N(1), Any, OffPm(3), N(-1)],
        [N(0), N(0), N(-1), Any, OffPm(3), N(1)],
        [N(0), N(0), N(-1), N(2), N(1), N(-1)],
        [N(0), N(0), N(-1), N(1), N(2), N(-1)],
    ];

    // Table 2, columns (η, α, β, γ, δ, ε).  Offsets reference column 3 = γ or
    // column 5 = ε.
    let t2: [[Raw; 6]; 64] = [
        [N(0), N(1), N(-1), Any, N(-1), OffPm(3)],
        [N(0), N(1), N(-1), N(-2), N(-2), N(-3)],
        [N(0), N(1), N(-1), N(-3), N(-2), N(-2)],
        [N(0), N(1), N(-1), N(-1), N(-3), N(-2)],
        [N(0), N(1), N(-1), N(-2), N(-3), N(-1)],
        [N(0), N(1), N(-1), N(-1), N(-4), N(-1)],
        [N(0), N(1), N(-1), Any, N(-2), N(-1)],
        [N(0), N(1), N(-1), N(-1), N(-2), Any],
        [N(0), N(1), N(-1), N(1), N(1), N(2)],
        [N(0), N(1), N(-1), N(2), N(1), N(1)],
        [N(0), N(1), N(-1), N(1), N(2), N(1)],
        [N(0), N(1), Any, Any, N(-1), OffPm(3)],
        [N(0), N(1), N(-3), N(1), N(-2), Any],
        [N(0), N(1), N(-3), Any, N(-2), N(1)],
        [N(0), N(1), N(-3), N(3), N(-2), N(2)],
        [N(0), N(1), N(-3), N(2), N(-2), N(3)],
        [N(0), N(1), N(-2), N(2), N(-3), N(1)],
        [N(0), N(1), N(-2), N(1), N(-3), N(2)],
        [N(0), N(1), N(-1), N(1), N(2), N(1)],
        [N(0), N(1), N(-1), N(2), N(1), N(1)],
        [N(0), N(1), N(-2), Any, Off(3, -3), N(1)],
        [N(0), N(1), N(-3), Any, N(-2), N(1)],
        [N(0), N(1), Any, N(-1), N(-2), N(1)],
        [N(0), N(1), Any, N(-2), N(-1), N(1)],
        [N(0), N(1), N(-3), N(-2), Any, N(1)],
        [N(0), N(1), N(-2), Any, Off(3, -1), N(1)],
        [N(0), N(1), N(-3), N(-3), N(-4), N(1)],
        [N(0), N(1), N(-3), N(-4), N(-3), N(1)],
        [N(0), N(1), N(-4), N(-2), N(-3), N(1)],
        [N(0), N(1), N(-4), N(-3), N(-2), N(1)],
        [N(0), N(1), N(-5), N(-2), N(-2), N(1)],
        [N(0), N(1), Any, N(1), N(-2), N(-1)],
        [N(0), N(1), N(-1), Any, N(-2), N(-1)],
        [N(0), N(1), N(1), N(3), N(2), N(-1)],
        [N(0), N(1), N(2), N(2), N(1), N(-1)],
        [N(0), N(1), N(1), N(4), N(1), N(-1)],
        [N(0), N(1), Any, N(2), N(-1), N(-1)],
        [N(0), N(1), N(1), N(2), Any, N(-1)],
        [N(0), N(1), N(-1), N(-1), N(-4), N(-1)],
        [N(0), N(1), N(-2), N(-1), N(-2), N(-1)],
        [N(0), N(1), N(-1), N(-2), N(-3), N(-1)],
        [N(0), N(1), N(-1), N(1), N(2), N(1)],
        [N(0), N(1), N(-1), N(1), N(1), N(2)],
        [N(0), N(1), N(-2), N(1), Off(5, -3), Any],
        [N(0), N(1), N(-3), N(1), N(-2), Any],
        [N(0), N(1), Any, N(1), N(-2), N(-1)],
        [N(0), N(1), Any, N(1), N(-1), N(-2)],
        [N(0), N(1), N(-3), N(1), Any, N(-2)],
        [N(0), N(1), N(-2), N(1), Off(5, -1), Any],
        [N(0), N(1), N(-3), N(1), N(-4), N(-3)],
        [N(0), N(1), N(-3), N(1), N(-3), N(-4)],
        [N(0), N(1), N(-4), N(1), N(-3), N(-2)],
        [N(0), N(1), N(-4), N(1), N(-2), N(-3)],
        [N(0), N(1), N(-5), N(1), N(-2), N(-2)],
        [N(0), N(1), Any, N(-1), N(-2), N(1)],
        [N(0), N(1), N(-1), N(-1), N(-2), Any],
        [N(0), N(1), N(1), N(-1), N(2), N(3)],
        [N(0), N(1), N(2), N(-1), N(1), N(2)],
        [N(0), N(1), N(1), N(-1), N(1), N(4)],
        [N(0), N(1), Any, N(-1), N(-1), N(2)],
        [N(0), N(1), N(1), N(-1), Any, N(2)],
        [N(0), N(1), N(-1), N(-1), N(-4), N(-1)],
        [N(0), N(1), N(-2), N(-1), N(-2), N(-1)],
        [N(0), N(1), N(-1), N(-1), N(-3), N(-2)],
    ];

    // Table 3, columns (δ, η, α, β, γ, ε).  Offsets reference column 2 = α.
    let t3: [[Raw; 6]; 40] = [
        [N(-1), N(1), N(1), Any, N(-2), N(2)],
        [N(-1), N(1), N(1), N(-1), N(-4), N(2)],
        [N(-1), N(1), N(1), N(2), N(-1), N(2)],
        [N(-1), N(1), N(1), N(-2), N(-3), N(2)],
        [N(-1), N(1), N(-1), N(2), Any, N(-2)],
        [N(-1), N(1), N(-1), N(4), N(1), N(-2)],
        [N(-1), N(1), N(-1), N(1), N(-2), N(-2)],
        [N(-1), N(1), N(-1), N(3), N(2), N(-2)],
        [N(-1), N(1), N(2), N(2), N(-1), N(1)],
        [N(-1), N(1), N(2), N(-1), N(-2), N(1)],
        [N(-1), N(1), N(2), N(1), N(-2), N(1)],
        [N(-1), N(1), N(-2), N(1), N(-2), N(-1)],
        [N(-1), N(1), N(-2), N(2), N(1), N(-1)],
        [N(-1), N(1), N(-2), N(2), N(-1), N(-1)],
        [N(-1), N(1), Any, Off(2, 1), N(-2), N(1)],
        [N(-1), N(1), N(2), N(3), N(-2), N(3)],
        [N(-1), N(1), N(2), N(5), N(-2), N(2)],
        [N(-1), N(1), N(3), N(4), N(-2), N(2)],
        [N(-1), N(1), N(1), N(3), N(-2), N(4)],
        [N(-1), N(1), N(1), N(4), N(-2), N(3)],
        [N(-1), N(1), N(-1), N(2), N(-2), Any],
        [N(-1), N(1), N(1), Any, N(-2), N(2)],
        [N(-1), N(1), Any, N(3), N(-2), N(2)],
        [N(-1), N(1), Any, Off(2, 3), N(-2), N(1)],
        [N(-1), N(1), N(-1), N(1), N(-2), N(-2)],
        [N(-1), N(1), N(-2), N(1), N(-2), N(-1)],
        [N(-1), N(1), N(1), N(2), N(-2), N(3)],
        [N(-1), N(1), N(1), N(2), N(-2), N(4)],
        [N(-1), N(1), N(1), N(2), N(-2), Any],
        [N(-1), N(1), Any, N(2), Off(2, -1), N(-1)],
        [N(-1), N(1), N(-2), N(2), N(-3), N(-3)],
        [N(-1), N(1), N(-2), N(2), N(-5), N(-2)],
        [N(-1), N(1), N(-3), N(2), N(-4), N(-2)],
        [N(-1), N(1), N(-1), N(2), N(-3), N(-4)],
        [N(-1), N(1), N(-1), N(2), N(-4), N(-3)],
        // Line 36: with (β, γ, ε) = (2, -3, -2) the closure is the trivial
        // knot for every α — the two-bridge numerator collapses to 1
        // identically.  (β = 1 here would give a two-component link for
        // every α, so it cannot be part of a trivial-knot family.)
        [N(-1), N(1), Any, N(2), N(-3), N(-2)],
        [N(-1), N(1), N(-1), N(2), Any, N(-2)],
        [N(-1), N(1), Any, N(2), Off(2, -3), N(-1)],
        [N(-1), N(1), N(1), N(2), N(-1), N(2)],
        [N(-1), N(1), N(2), N(2), N(-1), N(1)],
    ];

    let mut rows = Vec::with_capacity(132);
    for (i, raw) in t1.iter().enumerate() {
        rows.push(convert_row(1, (i + 1) as u8, raw, &T1_COLS));
    }
    for (i, raw) in t2.iter().enumerate() {
        rows.push(convert_row(2, (i + 1) as u8, raw, &T2_COLS));
    }
    for (i, raw) in t3.iter().enumerate() {
        rows.push(convert_row(3, (i + 1) as u8, raw, &T3_COLS));
    }
    rows
}

/// The 132 classification-table rows: 28 in table 1, 64 in table 2, 40 in
/// table 3.  A filling closes up to the trivial knot exactly when one of its
/// 48 symmetric images matches one of these rows.  A few families appear on
/// more than one line; the duplicates are kept so that line numbers are
/// stable identifiers for witnesses.
pub fn table_rows() -> &'static [TableRow] {
    static ROWS: OnceLock<Vec<TableRow>> = OnceLock::new();
    ROWS.get_or_init(build_tables).as_slice()
}

/// Schema identifier for [`tables_to_json`] exports.
pub const TABLES_SCHEMA: &str = "hexatangle-tables/1";

#[derive(Serialize, Deserialize)]
struct TablesExport {
    schema: String,
    rows: Vec<TableRow>,
}

/// Serialises the classification tables as versioned, pretty-printed JSON:
/// an object with a `schema` field ([`TABLES_SCHEMA`]) and a `rows` array of
/// [`TableRow`] values in slot order.
pub fn tables_to_json() -> String {
    let export = TablesExport {
        schema: TABLES_SCHEMA.to_string(),
        rows: table_rows().to_vec(),
    };
    serde_json::to_string_pretty(&export).expect("classification tables serialise")
}

/// All fillings matched by `row` when every free parameter ranges over
/// `-bound..=bound`.  Entries tied to a free column by [`Pattern::OffsetNeg`]
/// are expanded for each admissible offset, so instances may have such entries
/// outside `[-bound, bound]`.
pub fn row_instances(row: &TableRow, bound: Int) -> Vec<HexFilling> {
    // First fix every non-offset entry, then resolve offsets from their
    // (already fixed) source columns.
    let mut instances = Vec::new();
    let mut values = [0 as Int; 6];
    expand_plain(row, bound, 0, &mut values, &mut instances);
    instances
}

fn expand_plain(
    row: &TableRow,
    bound: Int,
    slot: usize,
    values: &mut [Int; 6],
    out: &mut Vec<HexFilling>,
) {
    if slot == 6 {
        expand_offsets(row, 0, values, out);
        return;
    }
    match &row.pattern[slot] {
        Pattern::Const { value } => {
            values[slot] = *value;
            expand_plain(row, bound, slot + 1, values, out);
        }
        Pattern::PlusMinusOne => {
            for v in [1, -1] {
                values[slot] = v;
                expand_plain(row, bound, slot + 1, values, out);
            }
        }
        Pattern::Free => {
            for v in -bound..=bound {
                values[slot] = v;
                expand_plain(row, bound, slot + 1, values, out);
            }
        }
        // Resolved in the second pass, once the source value is fixed.
        Pattern::OffsetNeg { .. } => expand_plain(row, bound, slot + 1, values, out),
    }
}

fn expand_offsets(row: &TableRow, slot: usize, values: &mut [Int; 6], out: &mut Vec<HexFilling>) {
    if slot == 6 {
        out.push(HexFilling(*values));
        return;
    }
    if let Pattern::OffsetNeg { source, offsets } = &row.pattern[slot] {
        for &k in offsets {
            values[slot] = k - values[*source];
            expand_offsets(row, slot + 1, values, out);
        }
    } else {
        expand_offsets(row, slot + 1, values, out);
    }
}

/// Identification of a filling as a trivial knot: which table row one of its
/// symmetric images matches, and the symmetry realising the match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialWitness {
    /// Table containing the matched row (1, 2 or 3).
    pub table: u8,
    /// Line of the matched row within its table, starting at 1.
    pub line: u8,
    /// Symmetry `σ` with `σ(filling) = image`.
    pub symmetry: HexSymmetry,
    /// The symmetric image that matches the table row.
    pub image: HexFilling,
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassificationResult {
    /// The filled template closes up to a link with more than one component,
    /// so it is not a knot at all.
    NotAKnot {
        /// Number of link components.
        components: usize,
    },
    /// The filling closes up to the trivial knot, with a checkable witness.
    Trivial(TrivialWitness),
    /// The filling closes up to a nontrivial knot.
    Nontrivial,
}

/// Decides whether a filling of the hexatangle closes up to the trivial knot.
///
/// Multi-component closures are reported as
/// [`ClassificationResult::NotAKnot`].  Otherwise all 48 symmetric images are
/// matched against the classification tables; the first match (in symmetry
/// group order, then table order) is returned as a witness, and fillings with
/// no matching image are [`ClassificationResult::Nontrivial`].
pub fn classify(filling: &HexFilling) -> ClassificationResult {
    let components = hex_component_count(&filling.0);
    if components != 1 {
        return ClassificationResult::NotAKnot { components };
    }
    for sym in symmetry_group() {
        let image = sym.apply(filling);
        // Cheap dispatch on the constant entries every table shares: tables 1
        // and 2 force η = 0, table 3 forces (δ, η) = (-1, 1).  Skipping rows
        // this way never changes the outcome, because those constants would
        // fail the full match anyway (a unit test pins them down).
        let scan_t12 = image.0[5] == 0;
        let scan_t3 = image.0[3] == -1 && image.0[5] == 1;
        if !scan_t12 && !scan_t3 {
            continue;
        }
        for row in table_rows() {
            let relevant = if row.table == 3 { scan_t3 } else { scan_t12 };
            if relevant && matches_row(&image, row) {
                return ClassificationResult::Trivial(TrivialWitness {
                    table: row.table,
                    line: row.line,
                    symmetry: *sym,
                    image,
                });
            }
        }
    }
    ClassificationResult::Nontrivial
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{hex_bracket, hex_determinant, hex_jones};

    /// Slot indices of the three opposite pairs of the octahedron.
    const OPPOSITE: [usize; 6] = [4, 5, 3, 2, 0, 1];

    #[test]
    fn edge_assignment_is_consistent() {
        // Opposite slots sit on complementary (disjoint) tetrahedron edges;
        // all other slot pairs share exactly one vertex.
        for i in 0..6 {
            let (u1, v1) = EDGE_VERTICES[i];
            for j in 0..6 {
                if i == j {
                    continue;
                }
                let (u2, v2) = EDGE_VERTICES[j];
                let shared = [u1, v1]
                    .iter()
                    .filter(|&&u| u == u2 || u == v2)
                    .count();
                if OPPOSITE[i] == j {
                    assert_eq!(shared, 0, "slots {i},{j} should be opposite");
                } else {
                    assert_eq!(shared, 1, "slots {i},{j} should be adjacent");
                }
            }
        }
    }

    #[test]
    fn edge_assignment_matches_template_wiring() {
        // Slots joined by a template arc must sit on adjacent tetrahedron
        // edges, tying this module's edge labels to the diagram template.
        use crate::diagrams::{SLOT_VALUE_INDEX, TEMPLATE_ARCS};
        for &((slot_a, _), (slot_b, _)) in TEMPLATE_ARCS.iter() {
            let ea = EDGE_VERTICES[SLOT_VALUE_INDEX[slot_a]];
            let eb = EDGE_VERTICES[SLOT_VALUE_INDEX[slot_b]];
            let shared = [ea.0, ea.1]
                .iter()
                .filter(|&&u| u == eb.0 || u == eb.1)
                .count();
            assert_eq!(shared, 1, "template arc joins non-adjacent slots");
        }
    }

    #[test]
    fn symmetry_group_is_a_group_of_order_48() {
        let group = symmetry_group();
        assert_eq!(group.len(), 48);
        assert_eq!(group[0], HexSymmetry::identity());

        // Elements are distinct.
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                assert_ne!(a, b);
            }
        }
        // Closure and inverses.
        for a in group {
            assert!(group.contains(&a.inverse()));
            assert_eq!(a.compose(&a.inverse()), HexSymmetry::identity());
            for b in group {
                assert!(group.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn compose_agrees_with_apply() {
        let f = HexFilling([1, -2, 3, 0, 5, -7]);
        let group = symmetry_group();
        for a in group {
            for b in group {
                assert_eq!(a.compose(b).apply(&f), a.apply(&b.apply(&f)));
            }
            assert_eq!(a.inverse().apply(&a.apply(&f)), f);
        }
    }

    #[test]
    fn slot_action_preserves_opposite_pairs() {
        for sym in symmetry_group() {
            let map = sym.slot_map();
            for i in 0..6 {
                assert_eq!(map[OPPOSITE[i]], OPPOSITE[map[i]]);
            }
        }
    }

    #[test]
    fn symmetries_preserve_the_closure() {
        // Vertex permutations are rotations of the template, so they preserve
        // the bracket polynomial exactly; the mirror inverts the variable.
        // This pins the edge assignment against the actual diagrams.
        let samples = [
            [1, 0, 0, 0, 0, 0],
            [1, 1, 1, 0, 0, 0],
            [2, -1, 3, 0, 1, 0],
            [1, -1, -2, 1, 2, 1],
            [2, 2, 5, 7, 2, 2],
            [1, 2, 3, -1, -2, -3],
            [-2, 1, 4, 1, -3, 2],
        ];
        for values in samples {
            let f = HexFilling(values);
            let bracket = hex_bracket(&f.0);
            let mirrored = bracket.invert_variable();
            let components = hex_component_count(&f.0);
            for sym in symmetry_group() {
                let image = sym.apply(&f);
                assert_eq!(hex_component_count(&image.0), components, "{f} vs {image}");
                let expected = if sym.mirror { &mirrored } else { &bracket };
                assert_eq!(&hex_bracket(&image.0), expected, "{sym} on {f}");
            }
        }
    }

    #[test]
    fn orbit_canonical_is_invariant() {
        let f = HexFilling([1, -1, -2, 1, 2, 1]);
        let canonical = orbit_canonical(&f);
        assert!(canonical <= f);
        for sym in symmetry_group() {
            assert_eq!(orbit_canonical(&sym.apply(&f)), canonical);
        }
    }

    #[test]
    fn filling_parse_and_display_round_trip() {
        let f = HexFilling([1, -1, 2, 0, 0, 3]);
        assert_eq!(f.to_string(), "(1, -1, 2, 0, 0, 3)");
        assert_eq!("1,-1,2,0,0,3".parse::<HexFilling>().unwrap(), f);
        assert_eq!("(1, -1, 2, 0, 0, 3)".parse::<HexFilling>().unwrap(), f);
        assert_eq!("[1, -1, 2, 0, 0, 3]".parse::<HexFilling>().unwrap(), f);
        assert!("1,2,3".parse::<HexFilling>().is_err());
        assert!("1,2,3,x,5,6".parse::<HexFilling>().is_err());
    }

    #[test]
    fn tables_have_the_expected_shape() {
        let rows = table_rows();
        assert_eq!(rows.len(), 132);
        for (count, table) in [(28usize, 1u8), (64, 2), (40, 3)] {
            let in_table: Vec<&TableRow> = rows.iter().filter(|r| r.table == table).collect();
            assert_eq!(in_table.len(), count);
            for (i, row) in in_table.iter().enumerate() {
                assert_eq!(row.line as usize, i + 1);
            }
        }
        for row in rows {
            // The constants the classify() dispatch relies on.
            if row.table == 3 {
                assert_eq!(row.pattern[3], Pattern::Const { value: -1 });
                assert_eq!(row.pattern[5], Pattern::Const { value: 1 });
            } else {
                assert_eq!(row.pattern[5], Pattern::Const { value: 0 });
            }
            // Offset entries always reference a free column of the same row.
            for pattern in &row.pattern {
                if let Pattern::OffsetNeg { source, offsets } = pattern {
                    assert_eq!(row.pattern[*source], Pattern::Free);
                    assert!(!offsets.is_empty());
                }
            }
        }
    }

    #[test]
    fn tables_export_round_trips() {
        let json = tables_to_json();
        let parsed: TablesExport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.schema, TABLES_SCHEMA);
        assert_eq!(parsed.rows, table_rows());
    }

    #[test]
    fn pattern_matching_spot_checks() {
        let rows = table_rows();
        let row = |table: u8, line: u8| {
            rows.iter()
                .find(|r| r.table == table && r.line == line)
                .unwrap()
        };

        // Table 1 line 1: (α, β, γ) = ±1, (δ, ε, η) = 0.
        assert!(matches_row(&HexFilling([1, 1, 1, 0, 0, 0]), row(1, 1)));
        assert!(matches_row(&HexFilling([-1, 1, -1, 0, 0, 0]), row(1, 1)));
        assert!(!matches_row(&HexFilling([1, 1, 2, 0, 0, 0]), row(1, 1)));
        assert!(!matches_row(&HexFilling([1, 1, 1, 1, 0, 0]), row(1, 1)));

        // Table 1 line 13: α = 1, δ = -1, ε = ±1 - γ, γ free, β = η = 0.
        assert!(matches_row(&HexFilling([1, 0, 5, -1, -4, 0]), row(1, 13)));
        assert!(matches_row(&HexFilling([1, 0, 5, -1, -6, 0]), row(1, 13)));
        assert!(!matches_row(&HexFilling([1, 0, 5, -1, 4, 0]), row(1, 13)));

        // Table 2 line 12: α = 1, δ = -1, ε = ±1 - γ with β and γ both free.
        assert!(matches_row(&HexFilling([1, 7, 4, -1, -3, 0]), row(2, 12)));
        assert!(matches_row(&HexFilling([1, -9, 4, -1, -5, 0]), row(2, 12)));
        assert!(!matches_row(&HexFilling([1, 7, 4, -1, 3, 0]), row(2, 12)));

        // Table 3 line 15: β = 1 - α with α free, γ = -2, ε = 1.
        assert!(matches_row(&HexFilling([6, -5, -2, -1, 1, 1]), row(3, 15)));
        assert!(!matches_row(&HexFilling([6, -7, -2, -1, 1, 1]), row(3, 15)));
        assert!(!matches_row(&HexFilling([6, 5, -2, -1, 1, 1]), row(3, 15)));
    }

    #[test]
    fn row_instance_counts() {
        let rows = table_rows();
        let row = |table: u8, line: u8| {
            rows.iter()
                .find(|r| r.table == table && r.line == line)
                .unwrap()
        };

        // Three ±1 entries: 8 instances regardless of the bound.
        assert_eq!(row_instances(row(1, 1), 6).len(), 8);
        // One free parameter over [-2, 2] and one ±1 offset: 10 instances.
        assert_eq!(row_instances(row(1, 13), 2).len(), 10);
        // Two free parameters and one ±1 offset: 5 * 5 * 2 = 50 instances.
        assert_eq!(row_instances(row(2, 12), 2).len(), 50);

        for table_row in rows {
            for instance in row_instances(table_row, 2) {
                assert!(matches_row(&instance, table_row));
            }
        }
        assert!(row_instances(row(1, 13), 2).contains(&HexFilling([1, 0, 2, -1, -1, 0])));
    }

    #[test]
    fn classify_spot_checks() {
        // The all-(±1,0) filling matches table 1 line 1 under the identity.
        match classify(&HexFilling([1, 1, 1, 0, 0, 0])) {
            ClassificationResult::Trivial(witness) => {
                assert_eq!(witness.table, 1);
                assert_eq!(witness.line, 1);
                assert_eq!(witness.symmetry, HexSymmetry::identity());
                assert_eq!(witness.image, HexFilling([1, 1, 1, 0, 0, 0]));
            }
            other => panic!("expected trivial, got {other:?}"),
        }

        // The zero filling closes up to four unknotted circles.
        assert_eq!(
            classify(&HexFilling([0; 6])),
            ClassificationResult::NotAKnot { components: 4 }
        );

        // All slots heavily twisted: a two-component link.
        assert_eq!(
            classify(&HexFilling([2, 2, 5, 7, 2, 2])),
            ClassificationResult::NotAKnot { components: 2 }
        );

        // This filling closes up to a knot of determinant 13, so it cannot be
        // trivial — and the tables agree.
        let f = HexFilling([1, -1, -2, 1, 2, 1]);
        assert_eq!(hex_determinant(&f.0), 13);
        assert_eq!(classify(&f), ClassificationResult::Nontrivial);
    }

    #[test]
    fn classify_finds_witnesses_through_symmetries() {
        // Push a table instance through every symmetry; classification must
        // recover triviality (generally through a different witness).
        let base = HexFilling([1, 2, -1, -1, 2, 1]); // table 3 line 3 instance
        assert!(matches!(
            classify(&base),
            ClassificationResult::Trivial(_)
        ));
        for sym in symmetry_group() {
            let image = sym.apply(&base);
            match classify(&image) {
                ClassificationResult::Trivial(witness) => {
                    // The witness is checkable: its symmetry really maps the
                    // input onto the matched image, and that image matches.
                    assert_eq!(witness.symmetry.apply(&image), witness.image);
                    let row = table_rows()
                        .iter()
                        .find(|r| r.table == witness.table && r.line == witness.line)
                        .unwrap();
                    assert!(matches_row(&witness.image, row));
                }
                other => panic!("image {image} of {base}: expected trivial, got {other:?}"),
            }
        }
    }

    #[test]
    fn small_table_instances_close_up_to_trivial_knots() {
        // Every table row instance (free parameters in [-1, 1]) must close up
        // to a knot with one component, trivial Jones polynomial and
        // determinant 1, and classify as trivial.  The acceptance suite runs
        // the same check over the full parameter range [-6, 6].
        for row in table_rows() {
            for instance in row_instances(row, 1) {
                assert_eq!(
                    hex_component_count(&instance.0),
                    1,
                    "table {} line {} instance {instance}",
                    row.table,
                    row.line
                );
                assert_eq!(
                    hex_determinant(&instance.0),
                    1,
                    "table {} line {} instance {instance}",
                    row.table,
                    row.line
                );
                assert!(
                    hex_jones(&instance.0).unwrap().is_one(),
                    "table {} line {} instance {instance}",
                    row.table,
                    row.line
                );
                assert!(matches!(
                    classify(&instance),
                    ClassificationResult::Trivial(_)
                ));
            }
        }
    }
}
