//! L-shaped tiles for 2-generator circulant digraphs.
//!
//! A 2-generator circulant digraph is `Cay(Z^2 / Z^2 M, {e1, e2})` for a
//! 2x2 matrix `M = [[l, -y], [-x, h]]`; the matrix encodes an L-shaped tile
//! of width `l`, height `h`, with an `x` by `y` notch removed from the
//! top-right corner, which tessellates the plane under the translations
//! `(l, -y)` and `(-x, h)`.
//!
//! Diameters are always computed from the distance diagram (the minimum
//! number of unit steps reaching each residue class), never from a closed
//! formula: the diagram is unconditionally correct, while a tessellating
//! tile need not be a minimum-distance diagram.

use num_bigint::BigInt;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix, SmithDecomposition};
use crate::mixedgraph::CayleyMixedGraph;

/// An L-shaped tile with outer box `l x h` and an `x by y` notch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LTile {
    pub l: u64,
    pub h: u64,
    pub x: u64,
    pub y: u64,
}

impl LTile {
    /// Requires `x < l` and `y < h`; the area `l*h - x*y` is then positive.
    pub fn new(l: u64, h: u64, x: u64, y: u64) -> Result<Self> {
        if x >= l || y >= h {
            return Err(Error::NotAnLTile(format!(
                "need x < l and y < h, got l={l} h={h} x={x} y={y}"
            )));
        }
        Ok(LTile { l, h, x, y })
    }

    pub fn area(&self) -> u64 {
        self.l * self.h - self.x * self.y
    }

    /// True iff `(i, j)` is a cell of the tile.
    fn contains_cell(&self, i: i64, j: i64) -> bool {
        let (l, h, x, y) = (self.l as i64, self.h as i64, self.x as i64, self.y as i64);
        (0..l).contains(&i) && (0..h).contains(&j) && !(i >= l - x && j >= h - y)
    }
}

/// The lattice matrix `[[l, -y], [-x, h]]` of a tile.
pub fn tile_to_matrix(t: &LTile) -> IntMatrix {
    IntMatrix::from_i64(&[&[t.l as i64, -(t.y as i64)], &[-(t.x as i64), t.h as i64]])
}

/// Reads a tile off a 2x2 matrix with sign pattern `[[+, -], [-, +]]`.
///
/// Row negations and the row swap preserve the row lattice, so those
/// normalizations are tried before giving up.
pub fn tile_from_matrix(m: &IntMatrix) -> Result<LTile> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::NotAnLTile(format!(
            "expected a 2x2 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let entry = |i: usize, j: usize| -> Result<i64> {
        i64::try_from(m.at(i, j)).map_err(|_| Error::NotAnLTile("entry exceeds i64".into()))
    };
    let rows = [[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]];
    for order in [[0usize, 1], [1, 0]] {
        for signs in [[1i64, 1], [1, -1], [-1, 1], [-1, -1]] {
            let top = [rows[order[0]][0] * signs[0], rows[order[0]][1] * signs[0]];
            let bot = [rows[order[1]][0] * signs[1], rows[order[1]][1] * signs[1]];
            let (l, y, x, h) = (top[0], -top[1], -bot[0], bot[1]);
            if l > 0 && h > 0 && x >= 0 && y >= 0 && x < l && y < h {
                return LTile::new(l as u64, h as u64, x as u64, y as u64);
            }
        }
    }
    Err(Error::NotAnLTile(format!(
        "no row normalization of {m:?} has the [[+,-],[-,+]] tile pattern"
    )))
}

/// Patch-painting tessellation check: translates of the tile by the two
/// lattice vectors must cover a central region exactly once.
pub fn tile_tessellates(t: &LTile) -> bool {
    let (l, h, x, y) = (t.l as i64, t.h as i64, t.x as i64, t.y as i64);
    let extent = 3 * (l + h); // margin of a few tile diameters
    let area = t.area() as i64;
    // Coefficient ranges large enough that any translate touching the check
    // region is painted: solve [a b] * M = T for |T| <= extent + max dim.
    let reach = extent + l.max(h);
    let ra = (reach * (h + x)) / area + 2;
    let rb = (reach * (y + l)) / area + 2;
    let mut paint: HashMap<(i64, i64), u32> = HashMap::new();
    for a in -ra..=ra {
        for b in -rb..=rb {
            let (ti, tj) = (a * l - b * x, -a * y + b * h);
            if ti.abs() > reach || tj.abs() > reach {
                continue;
            }
            for i in 0..l {
                for j in 0..h {
                    if !t.contains_cell(i, j) {
                        continue;
                    }
                    let cell = (ti + i, tj + j);
                    if cell.0.abs() <= extent && cell.1.abs() <= extent {
                        *paint.entry(cell).or_insert(0) += 1;
                    }
                }
            }
        }
    }
    for ci in -extent..=extent {
        for cj in -extent..=extent {
            if paint.get(&(ci, cj)).copied().unwrap_or(0) != 1 {
                return false;
            }
        }
    }
    true
}

/// Distance-diagram diameter of the tile's circulant digraph: the maximum
/// over residue classes of the least `a + b` with `a, b >= 0` and
/// `a e1 + b e2` in the class.
pub fn tile_diameter(t: &LTile) -> Result<u32> {
    let dec = smith_normal_form(&tile_to_matrix(t))?;
    diameter_by_sweep(&dec, t.area())
}

fn diameter_by_sweep(dec: &SmithDecomposition, classes: u64) -> Result<u32> {
    let mut seen = std::collections::HashSet::new();
    let cap = 2 * classes as i64 + 2;
    for total in 0..=cap {
        for a in 0..=total {
            let b = total - a;
            let v = vec![BigInt::from(a), BigInt::from(b)];
            let canon = dec.canonicalize(&v)?;
            seen.insert(canon);
        }
        if seen.len() as u64 == classes {
            return Ok(total as u32);
        }
    }
    Err(Error::InvalidParameter(
        "distance sweep failed to cover every class".into(),
    ))
}

/// The tile's circulant digraph `Cay(Z^2/Z^2 M, {e1, e2})`, with redundant
/// (zero-image) generators dropped.
pub fn tile_digraph(t: &LTile) -> Result<CayleyMixedGraph> {
    CayleyMixedGraph::from_lattice(&tile_to_matrix(t), &[vec![1, 0], vec![0, 1]])
}

/// The symmetric double tile: two copies of an L glued along the diagonal,
/// with involution `(c, c)`. Outer square of side `l`, inner notch of side
/// `l - 2c`; area `l^2 - (l-2c)^2` and mixed diameter `l + c - 2`.
#[derive(Clone, Debug)]
pub struct DoubleTile {
    pub side: u64,
    pub c: u64,
    pub tile: LTile,
    pub involution: (u64, u64),
    pub area: u64,
    pub diameter: u32,
}

/// Builds the double tile for `0 < c <= l/2`.
pub fn double_tile(l: u64, c: u64) -> Result<DoubleTile> {
    if c == 0 || 2 * c > l {
        return Err(Error::InvalidParameter(format!(
            "need 0 < c <= l/2, got l={l} c={c}"
        )));
    }
    let inner = l - 2 * c;
    let tile = LTile::new(l, l, inner, inner)?;
    Ok(DoubleTile {
        side: l,
        c,
        tile,
        involution: (c, c),
        area: l * l - inner * inner,
        diameter: u32::try_from(l + c - 2).expect("tile dimensions fit u32"),
    })
}

impl DoubleTile {
    /// The mixed Cayley graph on the tile's lattice with generators
    /// `e1, e2` and the involution `(c, c)`.
    pub fn mixed_graph(&self) -> Result<CayleyMixedGraph> {
        CayleyMixedGraph::from_lattice(
            &tile_to_matrix(&self.tile),
            &[vec![1, 0], vec![0, 1], vec![self.c as i64, self.c as i64]],
        )
    }
}

/// The case bounds from the two-generator reduction with one involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseBounds {
    /// Two equal L's: `floor(2 (k+1)^2 / 3)`.
    pub n_case_i: u64,
    /// Single symmetric double tile: `floor((k+2)^2 / 2)`.
    pub n_case_ii: u64,
    /// Order bound for a 2-generator circulant digraph of diameter `k`:
    /// `floor((k+2)^2 / 3)`.
    pub two_gen_bound: u64,
    /// Case (ii) beats case (i) only in the small-diameter regime `k <= 4`.
    pub case_ii_exceeds_case_i: bool,
}

/// Evaluates the case bounds at mixed diameter `k >= 1`.
pub fn case_bounds(k: u32) -> Result<CaseBounds> {
    if k == 0 {
        return Err(Error::InvalidParameter("case bounds need k >= 1".into()));
    }
    let k = u64::from(k);
    let n_case_i = 2 * (k + 1) * (k + 1) / 3;
    let n_case_ii = (k + 2) * (k + 2) / 2;
    let two_gen_bound = (k + 2) * (k + 2) / 3;
    Ok(CaseBounds {
        n_case_i,
        n_case_ii,
        two_gen_bound,
        case_ii_exceeds_case_i: n_case_ii > n_case_i,
    })
}
